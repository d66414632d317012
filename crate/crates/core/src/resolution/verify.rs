use std::fmt;

use crate::lattice::LcmLattice;
use crate::matrix::rank;
use crate::monomial::Monomial;

use super::MultigradedComplex;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    /// A nonzero entry whose row multidegree does not divide the column's.
    Homogeneity,
    /// A basis multidegree outside the lcm-lattice.
    LatticeDegree,
    /// Consecutive maps do not compose to zero.
    Complex,
    /// `d_1` does not present the generators.
    Generators,
    /// A multidegree-restricted frame is not exact.
    Exactness,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: Check,
    pub degree: Option<usize>,
    pub mdeg: Option<String>,
    pub detail: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.check)?;
        if let Some(d) = self.degree {
            write!(f, " at homological degree {d}")?;
        }
        if let Some(m) = &self.mdeg {
            write!(f, " at multidegree {m}")?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub failure: Option<Failure>,
    pub minimal: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// True when no nonzero frame entry joins two basis elements of equal multidegree.
pub fn is_minimal(f: &MultigradedComplex) -> bool {
    (1..=f.length()).all(|i| {
        let d = f.frame(i);
        (0..d.rows()).all(|q| {
            d.row_entries(q)
                .iter()
                .all(|(p, _)| f.level(i)[*p].mdeg != f.level(i - 1)[q].mdeg)
        })
    })
}

pub fn verify_resolution(f: &MultigradedComplex) -> VerifyReport {
    let lat = LcmLattice::build(f.ideal());
    verify_with_lattice(f, &lat)
}

/// Checks homogeneity, `d² = 0`, the first map, and exactness of every
/// restriction to multidegrees below a lattice element.
pub fn verify_with_lattice(f: &MultigradedComplex, lat: &LcmLattice) -> VerifyReport {
    let failure = first_failure(f, lat);
    VerifyReport { failure, minimal: is_minimal(f) }
}

fn first_failure(f: &MultigradedComplex, lat: &LcmLattice) -> Option<Failure> {
    let ideal = f.ideal();
    let fmt = |m: &Monomial| ideal.format(m);
    for i in 1..=f.length() {
        let d = f.frame(i);
        for q in 0..d.rows() {
            for (p, _) in d.row_entries(q) {
                let col = &f.level(i)[p].mdeg;
                let row = &f.level(i - 1)[q].mdeg;
                if !row.divides(col).unwrap_or(false) {
                    return Some(Failure {
                        check: Check::Homogeneity,
                        degree: Some(i),
                        mdeg: Some(fmt(col)),
                        detail: format!("entry ({q}, {p}) maps onto multidegree {}", fmt(row)),
                    });
                }
            }
        }
    }
    for (i, l) in f.levels().iter().enumerate() {
        for e in l {
            if lat.id_of_mdeg(&e.mdeg).is_none() {
                return Some(Failure {
                    check: Check::LatticeDegree,
                    degree: Some(i),
                    mdeg: Some(fmt(&e.mdeg)),
                    detail: "basis multidegree is not an lcm of generators".into(),
                });
            }
        }
    }
    for i in 2..=f.length() {
        let prod = f.frame(i - 1).mul(&f.frame(i)).expect("adjacent frames");
        if !prod.is_zero() {
            let col = (0..prod.cols()).find(|&c| prod.column(c).iter().any(|s| !s.is_zero())).unwrap_or(0);
            return Some(Failure {
                check: Check::Complex,
                degree: Some(i),
                mdeg: Some(fmt(&f.level(i)[col].mdeg)),
                detail: format!("d_{} d_{i} = {prod}", i - 1),
            });
        }
    }
    if let Some(fl) = check_generators(f) {
        return Some(fl);
    }
    for e in lat.elements() {
        if e.id == lat.bottom() {
            continue;
        }
        let c = f.restricted_frame(&e.mdeg);
        for i in 0..=c.top() {
            let lhs = rank(&c.d(i)) + rank(&c.d(i + 1));
            if lhs != c.dim(i) {
                return Some(Failure {
                    check: Check::Exactness,
                    degree: Some(i),
                    mdeg: Some(fmt(&e.mdeg)),
                    detail: format!(
                        "restricted frame has homology of dimension {}",
                        c.dim(i) - lhs.min(c.dim(i))
                    ),
                });
            }
        }
    }
    None
}

fn check_generators(f: &MultigradedComplex) -> Option<Failure> {
    let ideal = f.ideal();
    let fail = |detail: String| {
        Some(Failure { check: Check::Generators, degree: Some(1), mdeg: None, detail })
    };
    if f.level(0).len() != 1 || !f.level(0)[0].mdeg.is_one() {
        return fail("F_0 must be S in multidegree 1".into());
    }
    let mut degs: Vec<_> = f.level(1).iter().map(|e| e.mdeg.clone()).collect();
    let mut gens: Vec<_> = ideal.gens().to_vec();
    degs.sort();
    gens.sort();
    if degs != gens {
        return fail("F_1 multidegrees differ from the generators".into());
    }
    let d = f.frame(1);
    for p in 0..d.cols() {
        if d.get(0, p).is_zero() {
            return fail(format!("generator column {p} is zero"));
        }
    }
    None
}
