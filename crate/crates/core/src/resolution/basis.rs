use crate::chain::{Chain, Face};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::lattice::LcmLattice;
use crate::matrix::{solve, Matrix, Span};
use crate::monomial::{subset_label, MonomialIdeal};
use crate::simplicial::boundary_matrix;
use crate::vcomplex::Label;

use super::{verify_with_lattice, MgElement, MultigradedComplex, TaylorBasis, TaylorBasisElement};

/// Builds the resolution whose basis is the given Taylor basis. Level `i`
/// holds the chains with `i` vertices, in list order; each boundary must be
/// a combination of basis chains of strictly smaller multidegree and, for
/// each `m`, the boundaries of `Γ_m` must give a basis of the reduced
/// homology of `Δ_m`.
pub fn resolution_from_taylor_basis(
    ideal: &MonomialIdeal,
    field: FieldSpec,
    b: &TaylorBasis,
) -> Result<MultigradedComplex> {
    let lat = LcmLattice::build(ideal);
    let bad = |m: u64, why: String| Error::Verification(format!("Γ_{}: {why}", subset_label(m)));
    let mut ids = Vec::new();
    for e in &b.elements {
        let id = lat
            .id_of_label(e.m)
            .ok_or_else(|| bad(e.m, "not a label of the lcm-lattice".into()))?;
        if e.chain.is_zero() {
            return Err(bad(e.m, "zero chain".into()));
        }
        if id != lat.bottom() && !e.chain.is_taylor_chain_at(&lat, id)? {
            return Err(bad(e.m, format!("{} is not a Taylor chain there", e.chain)));
        }
        if id == lat.bottom() && e.chain.size() != 0 {
            return Err(bad(e.m, "the bottom only carries the empty face".into()));
        }
        ids.push(id);
    }
    let top = b.elements.iter().map(|e| e.chain.size()).max().unwrap_or(0);
    let mut levels: Vec<Vec<usize>> = vec![Vec::new(); top + 1];
    for (k, e) in b.elements.iter().enumerate() {
        levels[e.chain.size()].push(k);
    }
    if levels[0].len() != 1 {
        return Err(Error::Verification("exactly one basis element must sit at the bottom".into()));
    }
    let mut frames = Vec::new();
    for i in 1..=top {
        let mut d = Matrix::zeros(field, levels[i - 1].len(), levels[i].len());
        for (c, &k) in levels[i].iter().enumerate() {
            let e = &b.elements[k];
            let rows: Vec<usize> = (0..levels[i - 1].len())
                .filter(|&r| lat.lt(ids[levels[i - 1][r]], ids[k]))
                .collect();
            let bd = e.chain.boundary()?;
            let coeffs = express(field, &bd, rows.iter().map(|&r| &b.elements[levels[i - 1][r]].chain))
                .ok_or_else(|| {
                    bad(e.m, format!("boundary of {} is not spanned by lower basis chains", e.chain))
                })?;
            for (t, &r) in rows.iter().enumerate() {
                d.set(r, c, coeffs[t].clone());
            }
        }
        frames.push(d);
    }
    // homology condition at each multidegree
    for m in 0..lat.len() {
        if m == lat.bottom() {
            continue;
        }
        let delta = lat.simplicial_complex_at(m)?;
        let betti = delta.reduced_betti(field);
        for i in 1..=top.max(betti.len()) {
            let members: Vec<&Chain> = levels
                .get(i)
                .map(|l| l.iter().filter(|&&k| ids[k] == m).map(|&k| &b.elements[k].chain).collect())
                .unwrap_or_default();
            let want = betti.get(i - 1).copied().unwrap_or(0);
            if members.len() != want {
                return Err(bad(
                    lat.element(m).label,
                    format!("{} chains with {i} vertices, homology needs {want}", members.len()),
                ));
            }
            if want == 0 {
                continue;
            }
            let faces = delta.faces_of_size(i - 1);
            let mut span = Span::new(field, faces.len());
            for col in delta.boundary_matrix(field, i).columns() {
                span.insert(&col);
            }
            for g in members {
                let v = g.boundary()?.coords(&faces).ok_or_else(|| {
                    bad(lat.element(m).label, format!("boundary of {g} leaves Δ_m"))
                })?;
                if !span.insert(&v) {
                    return Err(bad(
                        lat.element(m).label,
                        format!("boundary classes are dependent at {g}"),
                    ));
                }
            }
        }
    }
    let mg_levels = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|&k| MgElement {
                    label: Label::Chain(b.elements[k].chain.clone()),
                    mdeg: lat.element(ids[k]).mdeg.clone(),
                })
                .collect()
        })
        .collect();
    let f = MultigradedComplex::new(ideal.clone(), field, mg_levels, frames)?;
    let report = verify_with_lattice(&f, &lat);
    if let Some(fl) = report.failure {
        return Err(Error::Verification(fl.to_string()));
    }
    if !report.minimal {
        return Err(Error::Verification("resulting resolution is not minimal".into()));
    }
    Ok(f)
}

/// Coefficients writing `target` in the given chains, if possible.
fn express<'a>(
    field: FieldSpec,
    target: &Chain,
    chains: impl Iterator<Item = &'a Chain>,
) -> Option<Vec<crate::field::Scalar>> {
    let chains: Vec<&Chain> = chains.collect();
    let mut faces: Vec<Face> = target.terms().map(|(f, _)| *f).collect();
    for c in &chains {
        faces.extend(c.terms().map(|(f, _)| *f));
    }
    faces.sort();
    faces.dedup();
    let cols: Vec<Vec<_>> = chains.iter().map(|c| c.coords(&faces).expect("faces collected")).collect();
    let m = Matrix::from_columns(field, faces.len(), &cols);
    solve(&m, &target.coords(&faces)?).ok()?
}

/// Reads a Taylor basis off a minimal resolution: the chains of each level
/// are lifts of the cycles given by the columns of the frame, taken inside
/// the simplex on the label of the column's multidegree.
pub fn taylor_basis_from_resolution(f: &MultigradedComplex) -> Result<TaylorBasis> {
    let ideal = f.ideal();
    let field = f.field();
    let lat = LcmLattice::build(ideal);
    if f.level(0).len() != 1 || !f.level(0)[0].mdeg.is_one() {
        return Err(Error::Precondition("F_0 must be S in multidegree 1".into()));
    }
    let mut chains: Vec<Vec<Chain>> = vec![vec![Chain::face(field, Face::EMPTY)]];
    let mut elements = vec![TaylorBasisElement { m: 0, chain: chains[0][0].clone() }];
    for i in 1..=f.length() {
        let d = f.frame(i);
        let mut lvl = Vec::new();
        for (p, e) in f.level(i).iter().enumerate() {
            let id = lat.id_of_mdeg(&e.mdeg).ok_or_else(|| {
                Error::Precondition(format!("multidegree {} is not in the lcm-lattice", ideal.format(&e.mdeg)))
            })?;
            let am = lat.element(id).label;
            let mut z = Chain::zero(field, i - 1);
            for (r, s) in d.column(p).iter().enumerate() {
                if !s.is_zero() {
                    z.add_scaled(&chains[i - 1][r], s)?;
                }
            }
            if z.is_zero() {
                return Err(Error::Precondition(format!("column {p} of d_{i} is zero")));
            }
            let lower = Face::subsets_of_size(am, i - 1);
            let upper = Face::subsets_of_size(am, i);
            let target = z.coords(&lower).ok_or_else(|| {
                Error::Precondition(format!("column {p} of d_{i} leaves the simplex of its multidegree"))
            })?;
            let x = solve(&boundary_matrix(field, &lower, &upper), &target)?.ok_or_else(|| {
                Error::Precondition(format!("column {p} of d_{i} is not a boundary in its simplex"))
            })?;
            let g = Chain::from_coords(field, i, &upper, &x);
            elements.push(TaylorBasisElement { m: am, chain: g.clone() });
            lvl.push(g);
        }
        chains.push(lvl);
    }
    Ok(TaylorBasis { elements })
}
