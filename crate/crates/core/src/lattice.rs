//! The lcm-lattice of a monomial ideal with its generator-support labels.

use std::collections::{BTreeSet, HashMap};

use crate::chain::Face;
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::{subset_label, subset_members, Monomial, MonomialIdeal, Subset};
use crate::simplicial::SimplicialComplex;

/// Subset enumeration is used up to this many generators; above it the
/// lattice is grown by joins from the atoms.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeElement {
    pub id: usize,
    pub mdeg: Monomial,
    pub label: Subset,
    pub rank: usize,
    /// Elements covered by this one.
    pub lower: Vec<usize>,
    /// Elements covering this one.
    pub upper: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LcmLattice {
    ideal: MonomialIdeal,
    elements: Vec<LatticeElement>,
    by_label: HashMap<Subset, usize>,
}

impl LcmLattice {
    pub fn build(ideal: &MonomialIdeal) -> LcmLattice {
        let mut mdegs: BTreeSet<Monomial> = BTreeSet::new();
        if ideal.r() <= ENUMERATION_LIMIT {
            let count = 1usize << ideal.r();
            let mut table: Vec<Monomial> = Vec::with_capacity(count);
            table.push(ideal.one());
            for s in 1..count {
                let low = s.trailing_zeros() as usize;
                let m = table[s & (s - 1)].lcm(&ideal.gens()[low]).expect("same ring");
                table.push(m);
            }
            mdegs.extend(table);
        } else {
            let mut frontier: Vec<Monomial> = vec![ideal.one()];
            mdegs.insert(ideal.one());
            while let Some(m) = frontier.pop() {
                for g in ideal.gens() {
                    let j = m.lcm(g).expect("same ring");
                    if mdegs.insert(j.clone()) {
                        frontier.push(j);
                    }
                }
            }
        }
        let mut ms: Vec<Monomial> = mdegs.into_iter().collect();
        ms.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        let mut elements: Vec<LatticeElement> = ms
            .into_iter()
            .enumerate()
            .map(|(id, mdeg)| LatticeElement {
                id,
                label: ideal.support_of(&mdeg),
                mdeg,
                rank: 0,
                lower: Vec::new(),
                upper: Vec::new(),
            })
            .collect();
        let by_label = elements.iter().map(|e| (e.label, e.id)).collect();
        let labels: Vec<Subset> = elements.iter().map(|e| e.label).collect();
        for b in 0..elements.len() {
            let below: Vec<usize> = (0..b)
                .filter(|&a| labels[a] != labels[b] && labels[a] & !labels[b] == 0)
                .collect();
            let lower: Vec<usize> = below
                .iter()
                .copied()
                .filter(|&a| {
                    !below
                        .iter()
                        .any(|&c| c != a && labels[a] & !labels[c] == 0 && labels[a] != labels[c])
                })
                .collect();
            let rank = lower.iter().map(|&a| elements[a].rank + 1).max().unwrap_or(0);
            for &a in &lower {
                elements[a].upper.push(b);
            }
            elements[b].lower = lower;
            elements[b].rank = rank;
        }
        LcmLattice { ideal: ideal.clone(), elements, by_label }
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[LatticeElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &LatticeElement {
        &self.elements[id]
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn is_atom(&self, id: usize) -> bool {
        self.elements[id].label.count_ones() == 1
    }

    /// Id of the atom for generator `i` (0-based).
    pub fn atom(&self, i: usize) -> usize {
        self.by_label[&(1u64 << i)]
    }

    pub fn id_of_label(&self, a: Subset) -> Option<usize> {
        self.by_label.get(&a).copied()
    }

    pub fn id_of_mdeg(&self, m: &Monomial) -> Option<usize> {
        let id = self.id_of_label(self.ideal.support_of(m))?;
        (self.elements[id].mdeg == *m).then_some(id)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.elements[a].label & !self.elements[b].label == 0
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    /// Smallest label containing `a`.
    pub fn closure(&self, a: Subset) -> Result<Subset> {
        Ok(self.ideal.support_of(&self.ideal.mdeg_of_subset(a)?))
    }

    pub fn element_of_subset(&self, a: Subset) -> Result<usize> {
        let c = self.closure(a)?;
        self.id_of_label(c)
            .ok_or_else(|| Error::Internal(format!("closure {} is not a lattice label", subset_label(c))))
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.by_label[&(self.elements[a].label & self.elements[b].label)]
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.element_of_subset(self.elements[a].label | self.elements[b].label)
            .expect("joins of labels are closed")
    }

    pub fn rank_of(&self, id: usize) -> usize {
        self.elements[id].rank
    }

    pub fn lattice_rank(&self) -> usize {
        self.elements[self.top()].rank
    }

    fn not_bottom(&self, m: usize) -> Result<()> {
        if m == self.bottom() {
            Err(Error::Precondition("operation undefined at the bottom element".into()))
        } else if m >= self.len() {
            Err(Error::Precondition(format!("no lattice element {m}")))
        } else {
            Ok(())
        }
    }

    /// The complex generated by the labels of the covered elements; `{∅}` at atoms.
    pub fn simplicial_complex_at(&self, m: usize) -> Result<SimplicialComplex> {
        self.not_bottom(m)?;
        let facets: Vec<Subset> = self.elements[m].lower.iter().map(|&b| self.elements[b].label).collect();
        Ok(SimplicialComplex::new(&facets))
    }

    /// Subsets of `A_m` whose closure is exactly `A_m`.
    pub fn q_faces(&self, m: usize) -> Result<Vec<Face>> {
        self.not_bottom(m)?;
        let a = self.elements[m].label;
        let members: Vec<usize> = subset_members(a).collect();
        let mut out = Vec::new();
        for bits in 0u64..(1u64 << members.len()) {
            let s = subset_members(bits).fold(0u64, |acc, k| acc | 1 << members[k]);
            if self.closure(s)? == a {
                out.push(Face(s));
            }
        }
        out.sort();
        Ok(out)
    }

    pub fn is_scarf_multidegree(&self, m: usize) -> Result<bool> {
        Ok(self.q_faces(m)?.len() == 1)
    }

    /// Reduced Betti numbers of `Δ_m` indexed by face cardinality; the
    /// bottom gets an empty list.
    pub fn reduced_betti_at(&self, m: usize, field: FieldSpec) -> Vec<usize> {
        if m == self.bottom() {
            return Vec::new();
        }
        self.simplicial_complex_at(m).expect("not bottom").reduced_betti(field)
    }

    pub fn betti_poset(&self, field: FieldSpec) -> BettiPoset {
        BettiPoset::compute(self, field, 1)
    }
}

/// The bottom element together with every element whose complex has
/// nonvanishing reduced homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiPoset {
    pub members: Vec<usize>,
    /// Reduced Betti numbers of each lattice element, by face cardinality.
    pub homology: Vec<Vec<usize>>,
}

impl BettiPoset {
    /// Computes per-element homology, splitting the work over `jobs` threads.
    pub fn compute(lat: &LcmLattice, field: FieldSpec, jobs: usize) -> BettiPoset {
        let n = lat.len();
        let jobs = jobs.max(1).min(n.max(1));
        let mut homology: Vec<Vec<usize>> = vec![Vec::new(); n];
        if jobs == 1 {
            for (m, h) in homology.iter_mut().enumerate() {
                *h = lat.reduced_betti_at(m, field);
            }
        } else {
            let chunk = n.div_ceil(jobs);
            std::thread::scope(|s| {
                for (c, slot) in homology.chunks_mut(chunk).enumerate() {
                    s.spawn(move || {
                        for (k, h) in slot.iter_mut().enumerate() {
                            *h = lat.reduced_betti_at(c * chunk + k, field);
                        }
                    });
                }
            });
        }
        let members = (0..n)
            .filter(|&m| m == lat.bottom() || homology[m].iter().any(|&b| b > 0))
            .collect();
        BettiPoset { members, homology }
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members.binary_search(&m).is_ok()
    }

    /// `dim H̃_i(Δ_m)` for simplicial degree `i >= -1`.
    pub fn reduced(&self, m: usize, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.homology[m].get((i + 1) as usize).copied().unwrap_or(0)
    }
}
