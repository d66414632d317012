use crate::chain::{Chain, Face};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::lattice::LcmLattice;
use crate::matrix::{kernel_vectors, solve, Matrix, Span};
use crate::simplicial::boundary_matrix;
use crate::vcomplex::{BasedComplex, Label};

use super::{MgElement, MultigradedComplex, TaylorBasis, TaylorBasisElement};

#[derive(Clone, Debug)]
pub struct AtomicOutput {
    pub basis: TaylorBasis,
    pub resolution: MultigradedComplex,
}

struct Built {
    chain: Chain,
    m: usize,
    // boundary in global coordinates of the level below
    bd: Vec<(usize, Scalar)>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Policy {
    Canonical,
    CoverCycles,
}

/// Builds the resolution one lattice element at a time: the complex spanned
/// by the basis below `m` is closed to an exact complex and each new cycle
/// is lifted to a chain on the simplex of `A_m`.
pub fn atomic_lattice_resolution(lat: &LcmLattice, field: FieldSpec) -> Result<AtomicOutput> {
    run(lat, field, Policy::Canonical)?
        .ok_or_else(|| Error::Internal("canonical construction cannot stall".into()))
}

/// Same construction, but every new cycle must be a combination of basis
/// elements sitting at elements covered by `m`. Returns `None` when that is
/// impossible at some step; success certifies lattice-linearity.
pub fn lattice_linear_resolution(lat: &LcmLattice, field: FieldSpec) -> Result<Option<AtomicOutput>> {
    run(lat, field, Policy::CoverCycles)
}

fn run(lat: &LcmLattice, field: FieldSpec, policy: Policy) -> Result<Option<AtomicOutput>> {
    let ideal = lat.ideal();
    let mut built: Vec<Built> = vec![Built {
        chain: Chain::face(field, Face::EMPTY),
        m: lat.bottom(),
        bd: Vec::new(),
    }];
    let mut levels: Vec<Vec<usize>> = vec![vec![0], Vec::new()];
    for i in 0..ideal.r() {
        built.push(Built {
            chain: Chain::face(field, Face(1 << i)),
            m: lat.atom(i),
            bd: vec![(0, field.one())],
        });
        levels[1].push(built.len() - 1);
    }
    for m in 0..lat.len() {
        if lat.rank_of(m) < 2 {
            continue;
        }
        let am = lat.element(m).label;
        // the subcomplex below m, in local coordinates
        let keep: Vec<Vec<usize>> = levels
            .iter()
            .map(|l| (0..l.len()).filter(|&k| lat.lt(built[l[k]].m, m)).collect())
            .collect();
        let u = local_complex(field, &built, &levels, &keep)?;
        let new_cycles: Vec<(usize, Vec<Scalar>)> = match policy {
            Policy::Canonical => u
                .exact_closure()?
                .added
                .into_iter()
                .map(|g| (g.level - 1, g.image))
                .collect(),
            Policy::CoverCycles => {
                let covered = &lat.element(m).lower;
                let allowed: Vec<Vec<bool>> = keep
                    .iter()
                    .zip(&levels)
                    .map(|(ks, l)| ks.iter().map(|&k| covered.contains(&built[l[k]].m)).collect())
                    .collect();
                match cover_cycles(&u, &allowed) {
                    Some(c) => c,
                    None => return Ok(None),
                }
            }
        };
        for (i, image) in new_cycles {
            // z = sum of image coefficients times the level-i chains
            let mut z = Chain::zero(field, i);
            let mut bd = Vec::new();
            for (k, s) in image.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let global = keep[i][k];
                z.add_scaled(&built[levels[i][global]].chain, s)?;
                bd.push((global, s.clone()));
            }
            let lower = Face::subsets_of_size(am, i);
            let upper = Face::subsets_of_size(am, i + 1);
            let target = z
                .coords(&lower)
                .ok_or_else(|| Error::Internal("cycle leaves the simplex of A_m".into()))?;
            let x = solve(&boundary_matrix(field, &lower, &upper), &target)?
                .ok_or_else(|| Error::Internal("cycle has no lift in the simplex of A_m".into()))?;
            let g = Chain::from_coords(field, i + 1, &upper, &x);
            if levels.len() <= i + 1 {
                levels.push(Vec::new());
            }
            built.push(Built { chain: g, m, bd });
            levels[i + 1].push(built.len() - 1);
        }
    }
    Ok(Some(assemble(lat, field, &built, &levels)))
}

fn local_complex(
    field: FieldSpec,
    built: &[Built],
    levels: &[Vec<usize>],
    keep: &[Vec<usize>],
) -> Result<BasedComplex> {
    let labels: Vec<Vec<Label>> = keep
        .iter()
        .zip(levels)
        .map(|(ks, l)| ks.iter().map(|&k| Label::Chain(built[l[k]].chain.clone())).collect())
        .collect();
    let mut maps = Vec::new();
    for i in 1..keep.len() {
        let mut d = Matrix::zeros(field, keep[i - 1].len(), keep[i].len());
        for (c, &k) in keep[i].iter().enumerate() {
            for (row_global, s) in &built[levels[i][k]].bd {
                let r = keep[i - 1]
                    .iter()
                    .position(|x| x == row_global)
                    .ok_or_else(|| Error::Internal("boundary leaves the subcomplex".into()))?;
                d.set(r, c, s.clone());
            }
        }
        maps.push(d);
    }
    BasedComplex::new(field, labels, maps)
}

/// Homology representatives drawn from cycles supported on `allowed`
/// positions; `None` if those cycles do not reach every class.
fn cover_cycles(u: &BasedComplex, allowed: &[Vec<bool>]) -> Option<Vec<(usize, Vec<Scalar>)>> {
    let field = u.field();
    let mut out = Vec::new();
    for i in 0..=u.top() {
        let h = u.homology(i).ok()?;
        if h.dim == 0 {
            continue;
        }
        let cols: Vec<usize> = (0..u.dim(i)).filter(|&k| allowed[i][k]).collect();
        let rows: Vec<usize> = (0..u.dim(i.saturating_sub(1))).collect();
        let sub = if i == 0 {
            Matrix::zeros(field, 0, cols.len())
        } else {
            u.d(i).select(&rows, &cols)
        };
        let mut span = Span::new(field, u.dim(i));
        for c in u.d(i + 1).columns() {
            span.insert(&c);
        }
        let mut found = 0;
        for v in kernel_vectors(&sub) {
            let mut full = vec![field.zero(); u.dim(i)];
            for (k, &c) in cols.iter().enumerate() {
                full[c] = v[k].clone();
            }
            if span.insert(&full) {
                out.push((i, full));
                found += 1;
            }
        }
        if found != h.dim {
            return None;
        }
    }
    Some(out)
}

fn assemble(lat: &LcmLattice, field: FieldSpec, built: &[Built], levels: &[Vec<usize>]) -> AtomicOutput {
    let ideal = lat.ideal();
    let mut mg_levels = Vec::new();
    let mut elements = Vec::new();
    for l in levels {
        let mut lvl = Vec::new();
        for &b in l {
            let e = &built[b];
            lvl.push(MgElement {
                label: Label::Chain(e.chain.clone()),
                mdeg: lat.element(e.m).mdeg.clone(),
            });
            elements.push(TaylorBasisElement { m: lat.element(e.m).label, chain: e.chain.clone() });
        }
        mg_levels.push(lvl);
    }
    let frames = (1..levels.len())
        .map(|i| {
            let mut d = Matrix::zeros(field, levels[i - 1].len(), levels[i].len());
            for (c, &b) in levels[i].iter().enumerate() {
                for (r, s) in &built[b].bd {
                    d.set(*r, c, s.clone());
                }
            }
            d
        })
        .collect();
    AtomicOutput {
        basis: TaylorBasis { elements },
        resolution: MultigradedComplex::from_parts(ideal.clone(), field, mg_levels, frames),
    }
}
