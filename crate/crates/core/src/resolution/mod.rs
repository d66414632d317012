//! Multigraded free complexes stored as a scalar frame plus basis multidegrees.

mod approx;
mod atomic;
mod basis;
mod cancel;
mod taylor;
mod transform;
mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;

pub use approx::maximal_approximation;
pub use atomic::{atomic_lattice_resolution, lattice_linear_resolution, AtomicOutput};
pub use basis::{resolution_from_taylor_basis, taylor_basis_from_resolution};
pub use cancel::{consecutive_cancellation, minimize_resolution};
pub use taylor::{taylor_resolution, TAYLOR_LIMIT};
pub use transform::{
    betti_poset_isomorphism, change_of_basis, projdim_bound, scarf_complex, transport_via_betti_poset,
};
pub use verify::{is_minimal, verify_resolution, verify_with_lattice, Check, Failure, VerifyReport};

use crate::chain::Chain;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::lattice::{BettiPoset, LcmLattice};
use crate::matrix::Matrix;
use crate::monomial::{subset_label, Monomial, MonomialIdeal, Subset};
use crate::vcomplex::{BasedComplex, Label};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MgElement {
    pub label: Label,
    pub mdeg: Monomial,
}

/// Levels `0..=top`; `frames[i - 1]` is the scalar matrix of `d_i`. The
/// polynomial entry at `(row e', col e)` is the scalar times
/// `mdeg(e) / mdeg(e')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultigradedComplex {
    ideal: MonomialIdeal,
    field: FieldSpec,
    levels: Vec<Vec<MgElement>>,
    frames: Vec<Matrix>,
}

impl MultigradedComplex {
    pub fn new(
        ideal: MonomialIdeal,
        field: FieldSpec,
        levels: Vec<Vec<MgElement>>,
        frames: Vec<Matrix>,
    ) -> Result<Self> {
        if levels.is_empty() || frames.len() + 1 != levels.len() {
            return Err(Error::Dimension(format!(
                "{} levels with {} frames",
                levels.len(),
                frames.len()
            )));
        }
        for (k, m) in frames.iter().enumerate() {
            if m.rows() != levels[k].len() || m.cols() != levels[k + 1].len() {
                return Err(Error::Dimension(format!(
                    "frame {} is {}x{}, levels have {} and {} elements",
                    k + 1,
                    m.rows(),
                    m.cols(),
                    levels[k].len(),
                    levels[k + 1].len()
                )));
            }
            if m.field() != field {
                return Err(Error::Precondition("frame over a different field".into()));
            }
        }
        for l in &levels {
            for e in l {
                if e.mdeg.n() != ideal.n() {
                    return Err(Error::Dimension("basis multidegree in the wrong ring".into()));
                }
            }
        }
        let mut c = MultigradedComplex { ideal, field, levels, frames };
        c.trim();
        Ok(c)
    }

    // drop empty trailing levels
    fn trim(&mut self) {
        while self.levels.len() > 1 && self.levels.last().is_some_and(|l| l.is_empty()) {
            self.levels.pop();
            self.frames.pop();
        }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn levels(&self) -> &[Vec<MgElement>] {
        &self.levels
    }

    pub fn level(&self, i: usize) -> &[MgElement] {
        self.levels.get(i).map_or(&[], |l| l.as_slice())
    }

    pub fn frames(&self) -> &[Matrix] {
        &self.frames
    }

    /// Frame of `d_i`, zero outside the stored range.
    pub fn frame(&self, i: usize) -> Matrix {
        if i >= 1 && i <= self.frames.len() {
            self.frames[i - 1].clone()
        } else {
            let rows = if i == 0 { 0 } else { self.level(i - 1).len() };
            Matrix::zeros(self.field, rows, self.level(i).len())
        }
    }

    /// Highest homological degree with a basis element.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// The polynomial entry as (scalar, monomial), or `None` when the row
    /// multidegree does not divide the column multidegree.
    pub fn entry(&self, i: usize, row: usize, col: usize) -> Option<(Scalar, Monomial)> {
        let s = self.frame(i).get(row, col);
        let q = self.level(i)[col].mdeg.quotient(&self.level(i - 1)[row].mdeg)?;
        Some((s, q))
    }

    pub fn is_complex(&self) -> bool {
        (2..=self.length()).all(|i| {
            self.frame(i - 1)
                .mul(&self.frame(i))
                .map(|p| p.is_zero())
                .unwrap_or(false)
        })
    }

    /// The frame as a based complex with the same labels.
    pub fn frame_complex(&self) -> BasedComplex {
        let levels = self.levels.iter().map(|l| l.iter().map(|e| e.label.clone()).collect()).collect();
        BasedComplex::new(self.field, levels, self.frames.clone()).expect("dimensions checked")
    }

    /// Basis positions per level whose multidegree satisfies `keep`.
    pub fn positions_where(&self, keep: impl Fn(&Monomial) -> bool) -> Vec<Vec<usize>> {
        self.levels
            .iter()
            .map(|l| (0..l.len()).filter(|&k| keep(&l[k].mdeg)).collect())
            .collect()
    }

    /// Restriction of the frame to basis elements with multidegree dividing `m`.
    pub fn restricted_frame(&self, m: &Monomial) -> BasedComplex {
        let keep = self.positions_where(|d| d.divides(m).unwrap_or(false));
        self.frame_complex().restrict(&keep)
    }

    pub fn betti_table(&self) -> BettiTable {
        let mut t = BettiTable::default();
        for (i, l) in self.levels.iter().enumerate() {
            for e in l {
                *t.entries.entry((i, e.mdeg.clone())).or_insert(0) += 1;
            }
        }
        t
    }

    /// Labels grouped by multidegree support, when every label is a chain.
    pub fn taylor_basis(&self) -> Option<TaylorBasis> {
        let mut elements = Vec::new();
        for l in &self.levels {
            for e in l {
                let chain = e.label.as_chain()?.clone();
                elements.push(TaylorBasisElement { m: self.ideal.support_of(&e.mdeg), chain });
            }
        }
        Some(TaylorBasis { elements })
    }

    /// Polynomial matrix of `d_i` in bracketed rows, e.g. `[-z -z; y 0; 0 x]`.
    pub fn format_matrix(&self, i: usize) -> String {
        let f = self.frame(i);
        let mut out = String::from("[");
        for r in 0..f.rows() {
            if r > 0 {
                out.push_str("; ");
            }
            for c in 0..f.cols() {
                if c > 0 {
                    out.push(' ');
                }
                let s = f.get(r, c);
                if s.is_zero() {
                    out.push('0');
                    continue;
                }
                let mono = self.level(i)[c]
                    .mdeg
                    .quotient(&self.level(i - 1)[r].mdeg)
                    .map(|q| self.ideal.format(&q));
                match mono {
                    None => {
                        let _ = write!(out, "{s}*?");
                    }
                    Some(m) if m == "1" => {
                        let _ = write!(out, "{s}");
                    }
                    Some(m) if s.is_one() => out.push_str(&m),
                    Some(m) if (-&s).is_one() => {
                        let _ = write!(out, "-{m}");
                    }
                    Some(m) => {
                        let _ = write!(out, "{s}*{m}");
                    }
                }
            }
        }
        out.push(']');
        out
    }

    /// Human-readable dump: basis per level and the polynomial matrices.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, l) in self.levels.iter().enumerate() {
            let _ = writeln!(out, "F_{i} (rank {}):", l.len());
            for e in l {
                let _ = writeln!(out, "  {}  [{}]", self.ideal.format(&e.mdeg), e.label);
            }
            if i >= 1 {
                let _ = writeln!(out, "  d_{i} = {}", self.format_matrix(i));
            }
        }
        out
    }

    pub(crate) fn from_parts(
        ideal: MonomialIdeal,
        field: FieldSpec,
        levels: Vec<Vec<MgElement>>,
        frames: Vec<Matrix>,
    ) -> Self {
        MultigradedComplex::new(ideal, field, levels, frames).expect("consistent dimensions")
    }
}

/// Graded Betti numbers `b_{i,m}`; zero entries are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    /// `b_{i,m} = dim H̃_{i-2}(Δ_m)`, with `b_{0,1} = 1`.
    pub fn from_homology(lat: &LcmLattice, bp: &BettiPoset) -> BettiTable {
        let mut t = BettiTable::default();
        t.entries.insert((0, lat.ideal().one()), 1);
        for &m in &bp.members {
            if m == lat.bottom() {
                continue;
            }
            for (k, &b) in bp.homology[m].iter().enumerate() {
                if b > 0 {
                    t.entries.insert((k + 1, lat.element(m).mdeg.clone()), b);
                }
            }
        }
        t
    }

    pub fn get(&self, i: usize, m: &Monomial) -> usize {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    pub fn totals(&self) -> Vec<usize> {
        let top = self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0);
        let mut t = vec![0; top + 1];
        for ((i, _), b) in &self.entries {
            t[*i] += b;
        }
        t
    }

    pub fn render(&self, ideal: &MonomialIdeal) -> String {
        let mut out = String::new();
        let totals = self.totals();
        let _ = writeln!(
            out,
            "totals: {}",
            totals.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" ")
        );
        for ((i, m), b) in &self.entries {
            let _ = writeln!(
                out,
                "  b_{i},{} = {b}    A = {}",
                ideal.format(m),
                subset_label(ideal.support_of(m))
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TaylorBasisElement {
    /// Label `A_m` of the multidegree.
    pub m: Subset,
    pub chain: Chain,
}

/// An ordered Taylor basis; `Γ_m` is read off by grouping on `m`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TaylorBasis {
    pub elements: Vec<TaylorBasisElement>,
}

impl TaylorBasis {
    pub fn gamma(&self, m: Subset) -> Vec<&Chain> {
        self.elements.iter().filter(|e| e.m == m).map(|e| &e.chain).collect()
    }

    pub fn multidegrees(&self) -> Vec<Subset> {
        let mut v: Vec<Subset> = self.elements.iter().map(|e| e.m).collect();
        v.sort_by_key(|s| (s.count_ones(), *s));
        v.dedup();
        v
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in self.multidegrees() {
            let cs: Vec<String> = self.gamma(m).iter().map(|c| c.to_string()).collect();
            let _ = writeln!(out, "Γ_{} = {{{}}}", subset_label(m), cs.join(", "));
        }
        out
    }
}
