//! Finite simplicial complexes on generator indices and their reduced homology.

use crate::chain::{Chain, Face};
use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::monomial::{subset_label, Subset};
use crate::vcomplex::{BasedComplex, Label};

/// A complex given by its facets. It always contains the empty face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    facets: Vec<Subset>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedHomology {
    pub dim: usize,
    pub reps: Vec<Chain>,
}

impl SimplicialComplex {
    /// Keeps only inclusion-maximal generators, in their given order.
    pub fn new(generators: &[Subset]) -> Self {
        let mut facets: Vec<Subset> = Vec::new();
        for (i, &g) in generators.iter().enumerate() {
            let dominated = generators.iter().enumerate().any(|(j, &h)| {
                g & !h == 0 && (g != h || j < i)
            });
            if !dominated {
                facets.push(g);
            }
        }
        if facets.is_empty() {
            facets.push(0);
        }
        SimplicialComplex { facets }
    }

    pub fn facets(&self) -> &[Subset] {
        &self.facets
    }

    pub fn vertex_set(&self) -> Subset {
        self.facets.iter().fold(0, |a, f| a | f)
    }

    pub fn contains(&self, f: Face) -> bool {
        self.facets.iter().any(|&s| f.is_subset_of(s))
    }

    /// Largest face cardinality.
    pub fn max_size(&self) -> usize {
        self.facets.iter().map(|f| f.count_ones() as usize).max().unwrap_or(0)
    }

    /// Faces with `k` vertices, in face order.
    pub fn faces_of_size(&self, k: usize) -> Vec<Face> {
        let mut out: Vec<Face> = self
            .facets
            .iter()
            .flat_map(|&s| Face::subsets_of_size(s, k))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Boundary matrix from faces with `k` vertices to faces with `k - 1`.
    pub fn boundary_matrix(&self, field: FieldSpec, k: usize) -> Matrix {
        boundary_matrix(field, &self.faces_of_size(k - 1), &self.faces_of_size(k))
    }

    /// The augmented chain complex; level `k` holds faces with `k` vertices.
    pub fn chain_complex(&self, field: FieldSpec) -> BasedComplex {
        let top = self.max_size();
        let faces: Vec<Vec<Face>> = (0..=top).map(|k| self.faces_of_size(k)).collect();
        let levels = faces
            .iter()
            .map(|fs| fs.iter().map(|f| Label::Chain(Chain::face(field, *f))).collect())
            .collect();
        let maps = (1..=top).map(|k| boundary_matrix(field, &faces[k - 1], &faces[k])).collect();
        BasedComplex::new(field, levels, maps).expect("boundary dimensions are consistent")
    }

    /// Reduced homology in simplicial degree `i >= -1`, with cycle
    /// representatives as chains.
    pub fn reduced_homology(&self, field: FieldSpec, i: isize) -> Result<ReducedHomology> {
        let k = i + 1;
        if k < 0 || k as usize > self.max_size() {
            return Ok(ReducedHomology { dim: 0, reps: Vec::new() });
        }
        let k = k as usize;
        let cc = self.chain_complex(field);
        let h = cc.homology(k)?;
        let faces = self.faces_of_size(k);
        let reps = h.reps.iter().map(|v| Chain::from_coords(field, k, &faces, v)).collect();
        Ok(ReducedHomology { dim: h.dim, reps })
    }

    /// Reduced Betti numbers, indexed by face cardinality (simplicial degree + 1).
    pub fn reduced_betti(&self, field: FieldSpec) -> Vec<usize> {
        self.chain_complex(field).homology_dims().expect("boundary squares to zero")
    }

    /// Whether `c` is a cycle supported on this complex.
    pub fn is_cycle(&self, c: &Chain) -> bool {
        c.terms().all(|(f, _)| self.contains(*f))
            && (c.size() == 0 || c.boundary().map(|b| b.is_zero()).unwrap_or(false))
    }

    /// Writes `c` as `sum lambda_k reps[k] + boundary`, returning the lambdas,
    /// or `None` if `c` is not in the span of the reps modulo boundaries.
    pub fn express_in_basis(
        &self,
        field: FieldSpec,
        c: &Chain,
        reps: &[Chain],
    ) -> Option<Vec<Scalar>> {
        let k = c.size();
        let faces = self.faces_of_size(k);
        let target = c.coords(&faces)?;
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for r in reps {
            cols.push(r.coords(&faces)?);
        }
        let b = self.boundary_matrix(field, k + 1);
        cols.extend(b.columns());
        let m = Matrix::from_columns(field, faces.len(), &cols);
        let x = crate::matrix::solve(&m, &target).ok()??;
        Some(x[..reps.len()].to_vec())
    }
}

impl std::fmt::Display for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let fs: Vec<String> = self.facets.iter().map(|s| subset_label(*s)).collect();
        write!(f, "<{}>", fs.join(", "))
    }
}

/// Boundary matrix with rows indexed by `lower` and columns by `upper`.
pub fn boundary_matrix(field: FieldSpec, lower: &[Face], upper: &[Face]) -> Matrix {
    let index: std::collections::HashMap<Face, usize> =
        lower.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let mut m = Matrix::zeros(field, lower.len(), upper.len());
    for (j, f) in upper.iter().enumerate() {
        for (g, sign) in f.boundary_terms() {
            if let Some(&i) = index.get(&g) {
                m.set(i, j, field.from_i64(sign));
            }
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    fn fs(v: &[&[usize]]) -> Vec<Subset> {
        v.iter().map(|s| Face::from_vertices(s).0).collect()
    }

    #[test]
    fn hollow_triangle() {
        let c = SimplicialComplex::new(&fs(&[&[1, 2], &[1, 3], &[2, 3]]));
        let h = c.reduced_homology(q(), 1).unwrap();
        assert_eq!(h.dim, 1);
        assert_eq!(h.reps[0].to_string(), "12-13+23");
        assert_eq!(c.reduced_betti(q()), vec![0, 0, 1]);
    }

    #[test]
    fn full_simplex_is_acyclic() {
        let c = SimplicialComplex::new(&fs(&[&[1, 2, 3, 4]]));
        assert!(c.reduced_betti(q()).iter().all(|&b| b == 0));
    }

    #[test]
    fn point_complex_of_atom() {
        let c = SimplicialComplex::new(&[0]);
        assert_eq!(c.reduced_betti(q()), vec![1]);
        assert_eq!(c.reduced_homology(q(), -1).unwrap().reps[0].to_string(), "∅");
    }

    #[test]
    fn canonical_reps() {
        let c = SimplicialComplex::new(&fs(&[&[1, 2], &[3]]));
        assert_eq!(c.reduced_homology(q(), 0).unwrap().reps[0].to_string(), "-1+3");
        let c = SimplicialComplex::new(&fs(&[&[1, 2, 3], &[3, 4], &[3, 5], &[4, 5]]));
        assert_eq!(c.reduced_homology(q(), 1).unwrap().reps[0].to_string(), "34-35+45");
    }
}
