use std::collections::HashMap;

use crate::chain::{Chain, Face};
use crate::error::{Error, Result};
use crate::lattice::{BettiPoset, LcmLattice};
use crate::matrix::{inverse, Matrix};
use crate::monomial::{subset_label, Monomial, MonomialIdeal};
use crate::vcomplex::Label;

use super::{verify_resolution, MgElement, MultigradedComplex, TAYLOR_LIMIT};

/// Labels `A_m` of the Scarf multidegrees (realized by exactly one subset of
/// generators), in face order. Includes the empty face.
pub fn scarf_complex(ideal: &MonomialIdeal) -> Result<Vec<Face>> {
    if ideal.r() > TAYLOR_LIMIT {
        return Err(Error::Precondition(format!("Scarf complex needs r <= {TAYLOR_LIMIT}")));
    }
    let mut count: HashMap<Monomial, (usize, u64)> = HashMap::new();
    for s in 0..(1u64 << ideal.r()) {
        let m = ideal.mdeg_of_subset(s)?;
        let e = count.entry(m).or_insert((0, s));
        e.0 += 1;
    }
    let mut out: Vec<Face> = count.values().filter(|(c, _)| *c == 1).map(|(_, s)| Face(*s)).collect();
    out.sort();
    Ok(out)
}

/// Conjugates the frames by the per-level matrices `U_i`:
/// `d_i` becomes `U_{i-1}^{-1} d_i U_i` and chain labels are recombined.
pub fn change_of_basis(f: &MultigradedComplex, us: &[Matrix]) -> Result<MultigradedComplex> {
    if us.len() != f.levels().len() {
        return Err(Error::Precondition(format!(
            "condition (iii): expected {} matrices, got {}",
            f.levels().len(),
            us.len()
        )));
    }
    let mut invs = Vec::new();
    for (i, u) in us.iter().enumerate() {
        let n = f.level(i).len();
        if u.rows() != n || u.cols() != n {
            return Err(Error::Precondition(format!(
                "condition (iii): U_{i} is {}x{}, level has rank {n}",
                u.rows(),
                u.cols()
            )));
        }
        let inv = inverse(u)
            .ok_or_else(|| Error::Precondition(format!("condition (i): U_{i} is not invertible")))?;
        for k in 0..n {
            for (j, _) in u.row_entries(k) {
                if !f.level(i)[k].mdeg.divides(&f.level(i)[j].mdeg)? {
                    return Err(Error::Precondition(format!(
                        "condition (ii): U_{i} entry ({k}, {j}) breaks the divisibility pattern"
                    )));
                }
            }
        }
        invs.push(inv);
    }
    let mut frames = Vec::new();
    for i in 1..=f.length() {
        frames.push(invs[i - 1].mul(&f.frame(i))?.mul(&us[i])?);
    }
    let mut levels = Vec::new();
    for (i, l) in f.levels().iter().enumerate() {
        let mut lvl = Vec::new();
        for j in 0..l.len() {
            let label = match l.first().and_then(|e| e.label.as_chain()) {
                Some(c0) => {
                    let mut c = Chain::zero(c0.field(), c0.size());
                    let mut ok = true;
                    for (k, e) in l.iter().enumerate() {
                        let s = us[i].get(k, j);
                        match e.label.as_chain() {
                            Some(ch) if !s.is_zero() => c.add_scaled(ch, &s)?,
                            Some(_) => {}
                            None => ok = false,
                        }
                    }
                    if ok {
                        Label::Chain(c)
                    } else {
                        l[j].label.clone()
                    }
                }
                None => l[j].label.clone(),
            };
            lvl.push(MgElement { label, mdeg: l[j].mdeg.clone() });
        }
        levels.push(lvl);
    }
    MultigradedComplex::new(f.ideal().clone(), f.field(), levels, frames)
}

/// Pairs Betti-poset elements of two lattices with equal labels; fails
/// unless every element of each side has a partner.
pub fn betti_poset_isomorphism(
    lat_m: &LcmLattice,
    bp_m: &BettiPoset,
    lat_n: &LcmLattice,
    bp_n: &BettiPoset,
) -> Result<Vec<(Monomial, Monomial)>> {
    if bp_m.members.len() != bp_n.members.len() {
        return Err(Error::Precondition("Betti posets have different sizes".into()));
    }
    let mut out = Vec::new();
    for &m in &bp_m.members {
        let a = lat_m.element(m).label;
        let n = lat_n
            .id_of_label(a)
            .filter(|n| bp_n.contains(*n))
            .ok_or_else(|| Error::Precondition(format!("no partner for label {}", subset_label(a))))?;
        out.push((lat_m.element(m).mdeg.clone(), lat_n.element(n).mdeg.clone()));
    }
    Ok(out)
}

/// Moves a resolution of `S/M` to `R/N` along an order isomorphism of Betti
/// posets that preserves labels; the frame is unchanged.
pub fn transport_via_betti_poset(
    f: &MultigradedComplex,
    iso: &[(Monomial, Monomial)],
    n: &MonomialIdeal,
) -> Result<MultigradedComplex> {
    let m_ideal = f.ideal();
    for (a, fa) in iso {
        if m_ideal.support_of(a) != n.support_of(fa) {
            return Err(Error::Precondition(format!(
                "label mismatch: {} and {}",
                m_ideal.format(a),
                n.format(fa)
            )));
        }
        for (b, fb) in iso {
            if a.divides(b)? != fa.divides(fb)? {
                return Err(Error::Precondition(format!(
                    "map is not an order isomorphism at {} and {}",
                    m_ideal.format(a),
                    m_ideal.format(b)
                )));
            }
        }
    }
    let map: HashMap<&Monomial, &Monomial> = iso.iter().map(|(a, b)| (a, b)).collect();
    let mut levels = Vec::new();
    for l in f.levels() {
        let mut lvl = Vec::new();
        for e in l {
            let to = map.get(&e.mdeg).ok_or_else(|| {
                Error::Precondition(format!("multidegree {} not in the map", m_ideal.format(&e.mdeg)))
            })?;
            lvl.push(MgElement { label: e.label.clone(), mdeg: (*to).clone() });
        }
        levels.push(lvl);
    }
    let g = MultigradedComplex::new(n.clone(), f.field(), levels, f.frames().to_vec())?;
    if let Some(fl) = verify_resolution(&g).failure {
        return Err(Error::Verification(fl.to_string()));
    }
    Ok(g)
}

/// Upper bound on the projective dimension: the rank of the lattice.
pub fn projdim_bound(lat: &LcmLattice) -> usize {
    lat.lattice_rank()
}
