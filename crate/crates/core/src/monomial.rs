//! Monomials as exponent vectors and minimally generated monomial ideals.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Generator subsets are bitsets: bit `i` stands for generator `i + 1`.
pub type Subset = u64;

pub const MAX_GENERATORS: usize = 63;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn n(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.n() != other.n() {
            return Err(Error::Dimension(format!(
                "monomials in {} and {} variables",
                self.n(),
                other.n()
            )));
        }
        Ok(())
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        })
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b))
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn quotient(&self, other: &Monomial) -> Option<Monomial> {
        if self.n() != other.n() {
            return None;
        }
        let mut exps = Vec::with_capacity(self.n());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_sub(*b)?);
        }
        Some(Monomial { exps })
    }

    /// Renders with the given variable names, e.g. `a^2*b`; `1` for the unit.
    pub fn format(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, e)| {
                let name = names.get(i).cloned().unwrap_or_else(|| format!("x{}", i + 1));
                if *e == 1 {
                    name
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&[]))
    }
}

/// Iterates the members of a subset as 0-based indices in increasing order.
pub fn subset_members(s: Subset) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| s >> i & 1 == 1)
}

pub fn subset_from_indices(indices: &[usize]) -> Subset {
    indices.iter().fold(0, |acc, i| acc | 1 << i)
}

/// Sorted 1-based vertex list, the form used in labels like `123`.
pub fn subset_label(s: Subset) -> String {
    if s == 0 {
        return "∅".to_string();
    }
    let v: Vec<usize> = subset_members(s).map(|i| i + 1).collect();
    if v.iter().all(|&x| x < 10) {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialIdeal {
    names: Vec<String>,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds an ideal from a minimal generating set, rejecting anything else.
    pub fn new(names: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::Precondition("an ideal needs at least one generator".into()));
        }
        if gens.len() > MAX_GENERATORS {
            return Err(Error::Precondition(format!(
                "at most {MAX_GENERATORS} generators are supported, got {}",
                gens.len()
            )));
        }
        for g in &gens {
            if g.n() != names.len() {
                return Err(Error::Dimension(format!(
                    "generator has {} exponents but {} variables are declared",
                    g.n(),
                    names.len()
                )));
            }
        }
        for (i, a) in gens.iter().enumerate() {
            for (j, b) in gens.iter().enumerate() {
                if i == j {
                    continue;
                }
                if a == b {
                    return Err(Error::Precondition(format!(
                        "duplicate generator {}",
                        a.format(&names)
                    )));
                }
                if a.divides(b)? {
                    return Err(Error::Precondition(format!(
                        "generator {} divides {}; generating set is not minimal",
                        a.format(&names),
                        b.format(&names)
                    )));
                }
            }
        }
        Ok(MonomialIdeal { names, gens })
    }

    /// Drops duplicates and non-minimal generators, keeping first occurrences.
    pub fn minimized(names: Vec<String>, gens: Vec<Monomial>) -> Result<Self> {
        let mut kept: Vec<Monomial> = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.n() != names.len() {
                return Err(Error::Dimension("generator length mismatch".into()));
            }
            let redundant = gens.iter().enumerate().any(|(j, h)| {
                j != i && h.divides(g).unwrap_or(false) && (h != g || j < i)
            });
            if !redundant {
                kept.push(g.clone());
            }
        }
        MonomialIdeal::new(names, kept)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn r(&self) -> usize {
        self.gens.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn full_set(&self) -> Subset {
        if self.r() == 64 {
            u64::MAX
        } else {
            (1u64 << self.r()) - 1
        }
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.n())
    }

    /// lcm of the generators indexed by `a`; the unit for the empty set.
    pub fn mdeg_of_subset(&self, a: Subset) -> Result<Monomial> {
        if a & !self.full_set() != 0 {
            return Err(Error::Precondition(format!(
                "subset {} has indices beyond r = {}",
                subset_label(a),
                self.r()
            )));
        }
        let mut m = self.one();
        for i in subset_members(a) {
            m = m.lcm(&self.gens[i])?;
        }
        Ok(m)
    }

    /// The set of generators dividing `m`.
    pub fn support_of(&self, m: &Monomial) -> Subset {
        self.gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.divides(m).unwrap_or(false))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn format(&self, m: &Monomial) -> String {
        m.format(&self.names)
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|m| self.format(m)).collect();
        write!(f, "({})", g.join(", "))
    }
}
