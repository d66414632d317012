//! Based complexes of vector spaces, homology with representatives and the
//! exact closure.

use std::fmt;

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::{kernel_vectors, rank, Matrix, Span};

/// Basis label: a chain in the simplex, or an opaque name.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Chain(Chain),
    Name(String),
}

impl Label {
    pub fn as_chain(&self) -> Option<&Chain> {
        match self {
            Label::Chain(c) => Some(c),
            Label::Name(_) => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Chain(c) => write!(f, "{c}"),
            Label::Name(n) => write!(f, "{n}"),
        }
    }
}

/// Levels `0..=top` with maps `d_i: C_i -> C_{i-1}` for `i >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasedComplex {
    field: FieldSpec,
    levels: Vec<Vec<Label>>,
    // maps[i - 1] is d_i
    maps: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub dim: usize,
    /// Cycle representatives in the coordinates of the level.
    pub reps: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddedGenerator {
    pub level: usize,
    pub index: usize,
    /// Image of the new generator in the level below.
    pub image: Vec<Scalar>,
}

#[derive(Clone, Debug)]
pub struct ExactClosure {
    pub complex: BasedComplex,
    pub added: Vec<AddedGenerator>,
}

impl BasedComplex {
    /// `maps[i]` is the matrix of `d_{i+1}`.
    pub fn new(field: FieldSpec, levels: Vec<Vec<Label>>, maps: Vec<Matrix>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Precondition("a complex needs at least one level".into()));
        }
        if maps.len() + 1 != levels.len() {
            return Err(Error::Dimension(format!(
                "{} levels need {} maps, got {}",
                levels.len(),
                levels.len() - 1,
                maps.len()
            )));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.rows() != levels[k].len() || m.cols() != levels[k + 1].len() {
                return Err(Error::Dimension(format!(
                    "d_{} is {}x{} between levels of size {} and {}",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    levels[k + 1].len(),
                    levels[k].len()
                )));
            }
        }
        Ok(BasedComplex { field, levels, maps })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn dim(&self, i: usize) -> usize {
        self.levels.get(i).map_or(0, |l| l.len())
    }

    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn labels(&self, i: usize) -> &[Label] {
        self.levels.get(i).map_or(&[], |l| l.as_slice())
    }

    /// Matrix of `d_i`; zero outside the stored range.
    pub fn d(&self, i: usize) -> Matrix {
        if i >= 1 && i <= self.maps.len() {
            self.maps[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.dim(i - 1) };
            Matrix::zeros(self.field, rows, self.dim(i))
        }
    }

    pub fn is_complex(&self) -> bool {
        (2..=self.top()).all(|i| {
            self.d(i - 1)
                .mul(&self.d(i))
                .map(|p| p.is_zero())
                .unwrap_or(false)
        })
    }

    fn require_complex(&self) -> Result<()> {
        if self.is_complex() {
            Ok(())
        } else {
            Err(Error::Precondition("maps do not compose to zero".into()))
        }
    }

    /// Homology at level `i`, with representatives completing an image basis
    /// to a kernel basis in echelon order.
    pub fn homology(&self, i: usize) -> Result<Homology> {
        self.require_complex()?;
        Ok(self.homology_unchecked(i))
    }

    fn homology_unchecked(&self, i: usize) -> Homology {
        let mut span = Span::new(self.field, self.dim(i));
        for col in self.d(i + 1).columns() {
            span.insert(&col);
        }
        let mut reps = Vec::new();
        for v in kernel_vectors(&self.d(i)) {
            if span.insert(&v) {
                reps.push(v);
            }
        }
        Homology { dim: reps.len(), reps }
    }

    pub fn homology_dims(&self) -> Result<Vec<usize>> {
        self.require_complex()?;
        Ok((0..=self.top()).map(|i| self.homology_unchecked(i).dim).collect())
    }

    pub fn is_exact(&self) -> bool {
        self.is_complex()
            && (0..=self.top()).all(|i| rank(&self.d(i)) + rank(&self.d(i + 1)) == self.dim(i))
    }

    /// Keeps the listed basis elements of every level.
    pub fn restrict(&self, keep: &[Vec<usize>]) -> BasedComplex {
        let levels: Vec<Vec<Label>> = (0..=self.top())
            .map(|i| {
                keep.get(i)
                    .map(|ks| ks.iter().map(|&k| self.levels[i][k].clone()).collect())
                    .unwrap_or_default()
            })
            .collect();
        let empty = Vec::new();
        let maps = (1..=self.top())
            .map(|i| {
                self.d(i).select(keep.get(i - 1).unwrap_or(&empty), keep.get(i).unwrap_or(&empty))
            })
            .collect();
        BasedComplex { field: self.field, levels, maps }
    }

    /// Adds one generator per homology class, mapping onto the canonical
    /// representatives, until the complex is exact.
    pub fn exact_closure(&self) -> Result<ExactClosure> {
        self.require_complex()?;
        let mut levels = self.levels.clone();
        let mut maps = self.maps.clone();
        let mut added = Vec::new();
        let mut i = 0;
        while i < levels.len() {
            let current =
                BasedComplex { field: self.field, levels: levels.clone(), maps: maps.clone() };
            let h = current.homology_unchecked(i);
            if h.dim > 0 {
                if i + 1 == levels.len() {
                    levels.push(Vec::new());
                    maps.push(Matrix::zeros(self.field, levels[i].len(), 0));
                }
                let old = &maps[i];
                let mut cols = old.columns();
                for rep in &h.reps {
                    added.push(AddedGenerator {
                        level: i + 1,
                        index: levels[i + 1].len(),
                        image: rep.clone(),
                    });
                    let name = describe_image(&levels[i], rep);
                    levels[i + 1].push(Label::Name(name));
                    cols.push(rep.clone());
                }
                let new_map = Matrix::from_columns(self.field, levels[i].len(), &cols);
                maps[i] = new_map;
                if i + 2 < levels.len() {
                    let next = &maps[i + 1];
                    let mut grown = Matrix::zeros(self.field, levels[i + 1].len(), next.cols());
                    for r in 0..next.rows() {
                        for (c, v) in next.row_entries(r) {
                            grown.set(r, c, v);
                        }
                    }
                    maps[i + 1] = grown;
                }
            }
            i += 1;
        }
        Ok(ExactClosure {
            complex: BasedComplex { field: self.field, levels, maps },
            added,
        })
    }
}

fn describe_image(labels: &[Label], image: &[Scalar]) -> String {
    let chains: Option<Vec<&Chain>> = labels.iter().map(|l| l.as_chain()).collect();
    if let Some(chains) = chains {
        if let Some(first) = chains.first() {
            let mut c = Chain::zero(first.field(), first.size());
            let ok = chains.iter().zip(image).all(|(ch, s)| c.add_scaled(ch, s).is_ok());
            if ok {
                return format!("lift({c})");
            }
        }
    }
    let v: Vec<String> = image.iter().map(|s| s.to_string()).collect();
    format!("lift[{}]", v.join(","))
}

/// Decides whether `v` is an exact closure of `u`: `u` sits inside `v` as a
/// based subcomplex, `v` is exact, and the kernels agree level by level.
pub fn is_exact_closure_of(v: &BasedComplex, u: &BasedComplex) -> Result<bool> {
    let mut positions: Vec<Vec<usize>> = Vec::new();
    for i in 0..=u.top() {
        let mut pos = Vec::new();
        for l in u.labels(i) {
            match v.labels(i).iter().position(|x| x == l) {
                Some(p) => pos.push(p),
                None => {
                    return Err(Error::Precondition(format!(
                        "label {l} at level {i} is missing from the larger complex"
                    )))
                }
            }
        }
        positions.push(pos);
    }
    if !v.is_complex() || !u.is_complex() {
        return Ok(false);
    }
    // u must be closed under d in v and carry the restricted maps
    for i in 1..=u.top() {
        let dv = v.d(i);
        let du = u.d(i);
        for (cu, &cv) in positions[i].iter().enumerate() {
            for (r, val) in dv.column(cv).iter().enumerate() {
                let expected = positions[i - 1]
                    .iter()
                    .position(|&p| p == r)
                    .map(|ru| du.get(ru, cu))
                    .unwrap_or_else(|| v.field().zero());
                if *val != expected {
                    return Ok(false);
                }
            }
        }
    }
    if !v.is_exact() {
        return Ok(false);
    }
    for i in 0..=v.top() {
        let ku = u.dim(i) - rank(&u.d(i));
        let kv = v.dim(i) - rank(&v.d(i));
        if ku != kv {
            return Ok(false);
        }
    }
    Ok(true)
}
