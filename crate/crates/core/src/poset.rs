//! The poset construction `D(L_M)`/`F(L_M)` and the RLM construction
//! `R(L_M)`/`G(L_M)`, both assembled from Mayer-Vietoris connecting maps.

use std::collections::HashMap;

use crate::chain::{Chain, Face};
use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::lattice::LcmLattice;
use crate::matrix::{kernel_vectors, solve, Matrix, Span};
use crate::monomial::{subset_label, Subset};
use crate::resolution::{taylor_basis_from_resolution, verify_with_lattice, MgElement, MultigradedComplex, VerifyReport};
use crate::simplicial::SimplicialComplex;
use crate::vcomplex::Label;

/// Fixed cycle representatives of `H̃(Δ_m)` for every non-bottom `m`,
/// stored by lattice id and chain size (simplicial degree plus one).
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    field: FieldSpec,
    reps: Vec<Vec<Vec<Chain>>>,
}

impl HomologyBasis {
    /// Representatives computed by the echelon homology routine.
    pub fn canonical(lat: &LcmLattice, field: FieldSpec) -> Result<Self> {
        let mut reps = vec![Vec::new(); lat.len()];
        for (m, slot) in reps.iter_mut().enumerate() {
            if m == lat.bottom() {
                continue;
            }
            let delta = lat.simplicial_complex_at(m)?;
            for size in 0..=delta.max_size() {
                slot.push(delta.reduced_homology(field, size as isize - 1)?.reps);
            }
        }
        Ok(HomologyBasis { field, reps })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// Representatives at `m` with `size` vertices per face.
    pub fn reps(&self, m: usize, size: usize) -> &[Chain] {
        self.reps[m].get(size).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn dim(&self, m: usize, size: usize) -> usize {
        self.reps(m, size).len()
    }

    /// Whether `m` carries any homology, i.e. lies in the Betti poset.
    pub fn is_betti(&self, m: usize) -> bool {
        self.reps[m].iter().any(|r| !r.is_empty())
    }

    /// Replaces the basis at the element labelled `a` in the degree of the
    /// given chains, after checking that their classes form a basis.
    pub fn set(&mut self, lat: &LcmLattice, a: Subset, chains: Vec<Chain>) -> Result<()> {
        let m = lat
            .id_of_label(a)
            .ok_or_else(|| Error::Precondition(format!("{} is not a label of the lattice", subset_label(a))))?;
        if m == lat.bottom() {
            return Err(Error::Precondition("the bottom element has no homology basis".into()));
        }
        let Some(size) = chains.first().map(|c| c.size()) else {
            return Err(Error::Precondition("empty basis".into()));
        };
        let delta = lat.simplicial_complex_at(m)?;
        let want = self.dim(m, size);
        if chains.len() != want {
            return Err(Error::Precondition(format!(
                "H̃_{}(Δ_{}) has dimension {want}, got {} chains",
                size as isize - 1,
                subset_label(a),
                chains.len()
            )));
        }
        check_basis(self.field, &delta, &chains)
            .map_err(|e| Error::Precondition(format!("at {}: {e}", subset_label(a))))?;
        self.reps[m][size] = chains;
        Ok(())
    }

    /// The basis `[∂e]` read off a Taylor basis of a resolution, together
    /// with the preimages `∂e` it induces. Elements of each multidegree keep
    /// the order they have in `f`.
    pub fn from_resolution(lat: &LcmLattice, f: &MultigradedComplex) -> Result<(Self, Vec<Preimage>)> {
        let field = f.field();
        let chains: Vec<Vec<Chain>> = if f.levels().iter().flatten().all(|e| e.label.as_chain().is_some()) {
            f.levels()
                .iter()
                .map(|l| l.iter().map(|e| e.label.as_chain().cloned().expect("checked")).collect())
                .collect()
        } else {
            let tb = taylor_basis_from_resolution(f)?;
            let mut it = tb.elements.into_iter();
            f.levels().iter().map(|l| l.iter().map(|_| it.next().expect("one per element").chain).collect()).collect()
        };
        let mut reps: Vec<Vec<Vec<Chain>>> = vec![Vec::new(); lat.len()];
        let mut preimages = Vec::new();
        for (h, level) in f.levels().iter().enumerate().skip(1) {
            for (p, e) in level.iter().enumerate() {
                let m = lat.id_of_mdeg(&e.mdeg).ok_or_else(|| {
                    Error::Precondition(format!("multidegree {} is not in the lattice", f.ideal().format(&e.mdeg)))
                })?;
                let z = chains[h][p].boundary()?;
                let slot = &mut reps[m];
                if slot.len() < h {
                    slot.resize(h, Vec::new());
                }
                if h >= 2 {
                    preimages.push(Preimage { m: lat.element(m).label, index: slot[h - 1].len(), chain: z.clone() });
                }
                slot[h - 1].push(z);
            }
        }
        let hb = HomologyBasis { field, reps };
        for m in 0..lat.len() {
            if m == lat.bottom() {
                continue;
            }
            let delta = lat.simplicial_complex_at(m)?;
            let betti = delta.reduced_betti(field);
            for size in 0..betti.len().max(hb.reps[m].len()) {
                let want = betti.get(size).copied().unwrap_or(0);
                if hb.dim(m, size) != want {
                    return Err(Error::Precondition(format!(
                        "resolution has {} generators for H̃_{}(Δ_{}), expected {want}",
                        hb.dim(m, size),
                        size as isize - 1,
                        subset_label(lat.element(m).label)
                    )));
                }
                if want > 0 {
                    check_basis(field, &delta, hb.reps(m, size))?;
                }
            }
        }
        Ok((hb, preimages))
    }
}

fn check_basis(field: FieldSpec, delta: &SimplicialComplex, chains: &[Chain]) -> Result<()> {
    let size = chains[0].size();
    let faces = delta.faces_of_size(size);
    let mut span = Span::new(field, faces.len());
    if size + 1 <= delta.max_size() {
        for c in delta.boundary_matrix(field, size + 1).columns() {
            span.insert(&c);
        }
    }
    for c in chains {
        if c.size() != size || !delta.is_cycle(c) {
            return Err(Error::Precondition(format!("{c} is not a cycle of {delta}")));
        }
        let v = c.coords(&faces).expect("cycle lies in the complex");
        if !span.insert(&v) {
            return Err(Error::Precondition(format!("class of {c} depends on the others")));
        }
    }
    Ok(())
}

/// A chosen cycle in `Δ_m^{(i)}` for the `index`-th basis class of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Preimage {
    pub m: Subset,
    pub index: usize,
    pub chain: Chain,
}

#[derive(Clone, Debug, Default)]
pub enum PreimageChoice {
    #[default]
    Canonical,
    /// Listed preimages override the canonical ones.
    Explicit(Vec<Preimage>),
}

/// Basis element `(m, index)` of `D_i` or `R_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionElement {
    pub m: usize,
    pub index: usize,
    pub rep: Chain,
}

#[derive(Clone, Debug)]
pub struct ConstructionOutput {
    pub levels: Vec<Vec<ConstructionElement>>,
    /// Scalar maps: `matrices[i - 1]` is `φ_i` or `ψ_i`.
    pub matrices: Vec<Matrix>,
    pub complex: MultigradedComplex,
    pub is_complex: bool,
    pub report: VerifyReport,
}

impl ConstructionOutput {
    /// Position of the element with label `a` and rep index `k` in level `i`.
    pub fn position(&self, lat: &LcmLattice, i: usize, a: Subset, k: usize) -> Option<usize> {
        let m = lat.id_of_label(a)?;
        self.levels.get(i)?.iter().position(|e| e.m == m && e.index == k)
    }

    pub fn is_resolution(&self) -> bool {
        self.report.passed()
    }
}

/// A direction in which a column of `ψ_i` moves when its preimage is
/// shifted by a cycle in the kernel of `σ_m^{(i-2)}`.
#[derive(Clone, Debug)]
pub struct Direction {
    pub level: usize,
    pub column: usize,
    pub cycle: Chain,
    pub vector: Vec<Scalar>,
}

/// The canonical RLM construction with every independent preimage direction.
#[derive(Clone, Debug)]
pub struct Perturbations {
    pub base: ConstructionOutput,
    pub directions: Vec<Direction>,
}

impl Perturbations {
    /// The construction with preimages shifted by `t` along the given directions.
    pub fn matrices_at(&self, shifts: &[(usize, Scalar)]) -> Vec<Matrix> {
        let mut mats = self.base.matrices.clone();
        for (d, t) in shifts {
            let dir = &self.directions[*d];
            let mat = &mut mats[dir.level - 1];
            for (r, v) in dir.vector.iter().enumerate() {
                if !v.is_zero() {
                    let cur = mat.get(r, dir.column);
                    mat.set(r, dir.column, &cur + &(v * t));
                }
            }
        }
        mats
    }

    pub fn complex_at(&self, lat: &LcmLattice, shifts: &[(usize, Scalar)]) -> Result<MultigradedComplex> {
        homogenize(lat, self.base.complex.field(), &self.base.levels, self.matrices_at(shifts))
    }
}

/// Labels of the maximal elements of `ℬ(m)`, the non-bottom Betti-poset
/// elements below `m`.
pub fn reduced_subcomplex(lat: &LcmLattice, hb: &HomologyBasis, m: usize) -> Result<Vec<Subset>> {
    rank_two(lat, m)?;
    Ok(labels(lat, &maximal_below(lat, hb, m, None)))
}

/// Labels of the maximal elements of `ℬ_i(m)`: those below `m` with
/// `H̃_{i-1} ≠ 0`. Requires `H̃_i(Δ_m) ≠ 0`.
pub fn reduced_subcomplex_i(lat: &LcmLattice, hb: &HomologyBasis, m: usize, i: isize) -> Result<Vec<Subset>> {
    rank_two(lat, m)?;
    if i < 0 || hb.dim(m, (i + 1) as usize) == 0 {
        return Err(Error::Precondition(format!(
            "H̃_{i}(Δ_{}) vanishes",
            subset_label(lat.element(m).label)
        )));
    }
    Ok(labels(lat, &maximal_below(lat, hb, m, Some(i as usize))))
}

fn rank_two(lat: &LcmLattice, m: usize) -> Result<()> {
    if lat.rank_of(m) < 2 {
        return Err(Error::Precondition(format!(
            "{} has rank below 2",
            subset_label(lat.element(m).label)
        )));
    }
    Ok(())
}

fn labels(lat: &LcmLattice, ids: &[usize]) -> Vec<Subset> {
    let mut out: Vec<Subset> = ids.iter().map(|&g| lat.element(g).label).collect();
    out.sort_by_key(|a| Face(*a));
    out
}

// Maximal elements among non-bottom Betti elements below m; with
// `Some(i)` only those with homology in simplicial degree i - 1 count.
fn maximal_below(lat: &LcmLattice, hb: &HomologyBasis, m: usize, i: Option<usize>) -> Vec<usize> {
    let set: Vec<usize> = (0..lat.len())
        .filter(|&g| g != lat.bottom() && lat.lt(g, m))
        .filter(|&g| match i {
            None => hb.is_betti(g),
            Some(i) => hb.dim(g, i) > 0,
        })
        .collect();
    set.iter().copied().filter(|&g| !set.iter().any(|&h| lat.lt(g, h))).collect()
}

fn complex_of(lat: &LcmLattice, ids: &[usize]) -> SimplicialComplex {
    let facets: Vec<Subset> = ids.iter().map(|&g| lat.element(g).label).collect();
    SimplicialComplex::new(&facets)
}

/// The class of a cycle of `Δ_m` in the fixed basis of `m`.
pub fn sigma_map(lat: &LcmLattice, hb: &HomologyBasis, m: usize, cycle: &Chain) -> Result<Vec<Scalar>> {
    let delta = lat.simplicial_complex_at(m)?;
    if !delta.is_cycle(cycle) {
        return Err(Error::Precondition(format!("{cycle} is not a cycle of Δ_{}", subset_label(lat.element(m).label))));
    }
    let reps = hb.reps(m, cycle.size());
    delta
        .express_in_basis(hb.field(), cycle, reps)
        .ok_or_else(|| Error::Internal("homology basis does not span".into()))
}

/// A cycle of `Δ_m^{(i)}` whose class in `Δ_m` is `Σ class_k rep_k`,
/// chosen by an echelon solve with free variables set to zero.
pub fn sigma_preimage(
    lat: &LcmLattice,
    hb: &HomologyBasis,
    m: usize,
    i: isize,
    class: &[Scalar],
) -> Result<Chain> {
    reduced_subcomplex_i(lat, hb, m, i)?;
    let sub = complex_of(lat, &maximal_below(lat, hb, m, Some(i as usize)));
    let size = (i + 1) as usize;
    let reps = hb.reps(m, size);
    if class.len() != reps.len() {
        return Err(Error::Dimension(format!("class has {} coordinates, basis has {}", class.len(), reps.len())));
    }
    let mut target = Chain::zero(hb.field(), size);
    for (r, s) in reps.iter().zip(class) {
        target.add_scaled(r, s)?;
    }
    let delta = lat.simplicial_complex_at(m)?;
    preimage_in(hb.field(), &sub, &delta, &target)
}

// Solves [Z_sub | B_delta] x = target and returns Z_sub x_Z.
fn preimage_in(field: FieldSpec, sub: &SimplicialComplex, delta: &SimplicialComplex, target: &Chain) -> Result<Chain> {
    let size = target.size();
    let faces = delta.faces_of_size(size);
    let cycles = cycle_basis(field, sub, size);
    let mut cols: Vec<Vec<Scalar>> = cycles
        .iter()
        .map(|c| c.coords(&faces).ok_or_else(|| Error::Internal("subcomplex leaves Δ_m".into())))
        .collect::<Result<_>>()?;
    if size < delta.max_size() {
        cols.extend(delta.boundary_matrix(field, size + 1).columns());
    }
    let b = target
        .coords(&faces)
        .ok_or_else(|| Error::Precondition(format!("{target} is not a chain of {delta}")))?;
    let x = solve(&Matrix::from_columns(field, faces.len(), &cols), &b)?
        .ok_or_else(|| Error::Internal(format!("{target} has no preimage in {sub}")))?;
    let mut out = Chain::zero(field, size);
    for (c, s) in cycles.iter().zip(&x) {
        if !s.is_zero() {
            out.add_scaled(c, s)?;
        }
    }
    Ok(out)
}

// Canonical basis of the cycles with `size` vertices per face.
fn cycle_basis(field: FieldSpec, k: &SimplicialComplex, size: usize) -> Vec<Chain> {
    let faces = k.faces_of_size(size);
    if size == 0 {
        return faces.iter().map(|f| Chain::face(field, *f)).collect();
    }
    kernel_vectors(&k.boundary_matrix(field, size))
        .into_iter()
        .map(|v| Chain::from_coords(field, size, &faces, &v))
        .collect()
}

/// Connecting map of the Mayer-Vietoris sequence of `Δ₁ ∪ Δ₂`: splits `f`
/// as `c₁ - c₂` with `c₁` the terms on `Δ₁` and returns `∂c₁`, a cycle of
/// `Δ₁ ∩ Δ₂`.
pub fn mv_connecting(d1: &SimplicialComplex, d2: &SimplicialComplex, f: &Chain) -> Result<Chain> {
    if f.size() == 0 {
        return Err(Error::Precondition("connecting map needs chains of positive size".into()));
    }
    let mut c1 = Chain::zero(f.field(), f.size());
    for (face, s) in f.terms() {
        if d1.contains(*face) {
            c1.add_term(*face, s)?;
        } else if !d2.contains(*face) {
            return Err(Error::Precondition(format!("face {face} lies in neither complex")));
        }
    }
    c1.boundary()
}

struct Engine<'a> {
    lat: &'a LcmLattice,
    hb: &'a HomologyBasis,
    field: FieldSpec,
    deltas: Vec<Option<SimplicialComplex>>,
    layout: Vec<Vec<(usize, usize)>>,
    rows: HashMap<(usize, usize, usize), usize>,
}

impl<'a> Engine<'a> {
    fn new(lat: &'a LcmLattice, hb: &'a HomologyBasis) -> Result<Self> {
        let mut deltas = Vec::with_capacity(lat.len());
        for m in 0..lat.len() {
            deltas.push(if m == lat.bottom() { None } else { Some(lat.simplicial_complex_at(m)?) });
        }
        let top = (0..lat.len()).map(|m| hb.reps[m].len()).max().unwrap_or(0);
        let mut layout = vec![vec![(lat.bottom(), 0)]];
        layout.push((0..lat.ideal().r()).map(|j| (lat.atom(j), 0)).collect());
        for h in 2..=top {
            let mut lvl = Vec::new();
            for m in 0..lat.len() {
                if m != lat.bottom() && !lat.is_atom(m) {
                    lvl.extend((0..hb.dim(m, h - 1)).map(|k| (m, k)));
                }
            }
            if lvl.is_empty() {
                break;
            }
            layout.push(lvl);
        }
        let mut rows = HashMap::new();
        for (h, l) in layout.iter().enumerate() {
            for (p, &(m, k)) in l.iter().enumerate() {
                rows.insert((h, m, k), p);
            }
        }
        Ok(Engine { lat, hb, field: hb.field(), deltas, layout, rows })
    }

    fn delta(&self, m: usize) -> &SimplicialComplex {
        self.deltas[m].as_ref().expect("not bottom")
    }

    fn rep(&self, h: usize, m: usize, k: usize) -> Chain {
        if h == 0 {
            Chain::face(self.field, Face::EMPTY)
        } else {
            self.hb.reps(m, h - 1)[k].clone()
        }
    }

    // Column of the map out of level h for a cycle g on the union of the
    // targets' labels.
    fn column(&self, h: usize, g: &Chain, targets: &[usize]) -> Result<Vec<Scalar>> {
        let mut col = vec![self.field.zero(); self.layout[h - 1].len()];
        let labels: Vec<Subset> = targets.iter().map(|&t| self.lat.element(t).label).collect();
        for (face, _) in g.terms() {
            if !labels.iter().any(|&a| face.is_subset_of(a)) {
                return Err(Error::Internal(format!("face {face} of {g} is outside the subcomplex")));
            }
        }
        for (t, &gamma) in targets.iter().enumerate() {
            let reps = self.hb.reps(gamma, h - 2);
            if reps.is_empty() {
                continue;
            }
            let d1 = SimplicialComplex::new(&[labels[t]]);
            let others: Vec<Subset> = labels.iter().enumerate().filter(|(s, _)| *s != t).map(|(_, a)| *a).collect();
            let d2 = SimplicialComplex::new(&others);
            let z = mv_connecting(&d1, &d2, g)?;
            let lambda = self.delta(gamma).express_in_basis(self.field, &z, reps).ok_or_else(|| {
                Error::Internal(format!(
                    "connecting image {z} is not a class of Δ_{}",
                    subset_label(self.lat.element(gamma).label)
                ))
            })?;
            for (k, s) in lambda.into_iter().enumerate() {
                col[self.rows[&(h - 1, gamma, k)]] = s;
            }
        }
        Ok(col)
    }

    fn build(&self, mut column: impl FnMut(usize, usize, usize) -> Result<Vec<Scalar>>) -> Result<Vec<Matrix>> {
        let mut mats = Vec::new();
        for h in 1..self.layout.len() {
            let mut cols = Vec::new();
            for &(m, k) in &self.layout[h] {
                // an atom's class is a multiple of [∅], the class of the bottom
                cols.push(if h == 1 { vec![self.rep(h, m, k).coefficient(Face::EMPTY)] } else { column(h, m, k)? });
            }
            mats.push(Matrix::from_columns(self.field, self.layout[h - 1].len(), &cols));
        }
        Ok(mats)
    }

    fn elements(&self) -> Vec<Vec<ConstructionElement>> {
        self.layout
            .iter()
            .enumerate()
            .map(|(h, l)| l.iter().map(|&(m, index)| ConstructionElement { m, index, rep: self.rep(h, m, index) }).collect())
            .collect()
    }

    fn output(&self, matrices: Vec<Matrix>) -> Result<ConstructionOutput> {
        let levels = self.elements();
        let complex = homogenize(self.lat, self.field, &levels, matrices.clone())?;
        let report = verify_with_lattice(&complex, self.lat);
        Ok(ConstructionOutput { is_complex: complex.is_complex(), levels, matrices, complex, report })
    }

    fn rlm_preimage(&self, h: usize, m: usize, k: usize, explicit: &HashMap<(usize, usize, usize), Chain>) -> Result<Chain> {
        let rep = self.rep(h, m, k);
        let sub = complex_of(self.lat, &maximal_below(self.lat, self.hb, m, Some(h - 2)));
        match explicit.get(&(m, h - 1, k)) {
            Some(g) => {
                let name = subset_label(self.lat.element(m).label);
                if !sub.is_cycle(g) {
                    return Err(Error::Precondition(format!("preimage {g} is not a cycle of Δ_{name}^({}) = {sub}", h - 2)));
                }
                let mut diff = g.clone();
                diff.add_scaled(&rep, &self.field.from_i64(-1))?;
                if self.delta(m).express_in_basis(self.field, &diff, &[]).is_none() {
                    return Err(Error::Precondition(format!("preimage {g} does not map to [{rep}] in Δ_{name}")));
                }
                Ok(g.clone())
            }
            None => preimage_in(self.field, &sub, self.delta(m), &rep),
        }
    }
}

fn homogenize(
    lat: &LcmLattice,
    field: FieldSpec,
    levels: &[Vec<ConstructionElement>],
    matrices: Vec<Matrix>,
) -> Result<MultigradedComplex> {
    let mg: Vec<Vec<MgElement>> = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|e| MgElement { label: Label::Name(format!("[{}]", e.rep)), mdeg: lat.element(e.m).mdeg.clone() })
                .collect()
        })
        .collect();
    MultigradedComplex::new(lat.ideal().clone(), field, mg, matrices)
}

/// `D(L_M)` and its homogenization `F(L_M)`.
pub fn poset_construction(lat: &LcmLattice, hb: &HomologyBasis) -> Result<ConstructionOutput> {
    let eng = Engine::new(lat, hb)?;
    let mats = eng.build(|h, m, k| {
        let betas = maximal_below(lat, hb, m, None);
        let sub = complex_of(lat, &betas);
        let f = preimage_in(eng.field, &sub, eng.delta(m), &eng.rep(h, m, k))?;
        eng.column(h, &f, &betas)
    })?;
    eng.output(mats)
}

/// `R(L_M)` and its homogenization `G(L_M)`.
pub fn rlm_construction(lat: &LcmLattice, hb: &HomologyBasis, choice: &PreimageChoice) -> Result<ConstructionOutput> {
    let eng = Engine::new(lat, hb)?;
    let explicit = explicit_map(lat, hb, choice)?;
    let mats = eng.build(|h, m, k| {
        let g = eng.rlm_preimage(h, m, k, &explicit)?;
        eng.column(h, &g, &maximal_below(lat, hb, m, Some(h - 2)))
    })?;
    eng.output(mats)
}

fn explicit_map(
    lat: &LcmLattice,
    hb: &HomologyBasis,
    choice: &PreimageChoice,
) -> Result<HashMap<(usize, usize, usize), Chain>> {
    let mut out = HashMap::new();
    if let PreimageChoice::Explicit(list) = choice {
        for p in list {
            let m = lat
                .id_of_label(p.m)
                .ok_or_else(|| Error::Precondition(format!("{} is not a label of the lattice", subset_label(p.m))))?;
            if p.index >= hb.dim(m, p.chain.size()) || lat.rank_of(m) < 2 {
                return Err(Error::Precondition(format!(
                    "no basis class {} of Δ_{} in that degree",
                    p.index,
                    subset_label(p.m)
                )));
            }
            out.insert((m, p.chain.size(), p.index), p.chain.clone());
        }
    }
    Ok(out)
}

/// The canonical RLM construction plus, for every column, the columns
/// obtained from a basis of `ker σ_m^{(i-2)}`. Since each column is linear
/// in its preimage, every other choice of preimages is the base plus a
/// combination of these directions.
pub fn rlm_perturbations(lat: &LcmLattice, hb: &HomologyBasis) -> Result<Perturbations> {
    let base = rlm_construction(lat, hb, &PreimageChoice::Canonical)?;
    let eng = Engine::new(lat, hb)?;
    let field = eng.field;
    let mut directions = Vec::new();
    for h in 2..eng.layout.len() {
        let mut seen: HashMap<usize, Vec<Chain>> = HashMap::new();
        for (c, &(m, _)) in eng.layout[h].iter().enumerate() {
            let targets = maximal_below(lat, hb, m, Some(h - 2));
            let zs = seen.entry(m).or_insert_with(|| {
                kernel_cycles(field, &complex_of(lat, &targets), eng.delta(m), h - 1)
            });
            for z in zs.iter() {
                let vector = eng.column(h, z, &targets)?;
                if vector.iter().any(|s| !s.is_zero()) {
                    directions.push(Direction { level: h, column: c, cycle: z.clone(), vector });
                }
            }
        }
    }
    Ok(Perturbations { base, directions })
}

// Cycles of `sub` that bound in `delta`, independent modulo boundaries of `sub`.
fn kernel_cycles(field: FieldSpec, sub: &SimplicialComplex, delta: &SimplicialComplex, size: usize) -> Vec<Chain> {
    let faces = delta.faces_of_size(size);
    let cycles = cycle_basis(field, sub, size);
    if cycles.is_empty() {
        return Vec::new();
    }
    let mut cols: Vec<Vec<Scalar>> = cycles.iter().map(|c| c.coords(&faces).expect("sub lies in delta")).collect();
    let nz = cols.len();
    if size < delta.max_size() {
        let minus = field.from_i64(-1);
        for c in delta.boundary_matrix(field, size + 1).columns() {
            cols.push(c.iter().map(|s| s * &minus).collect());
        }
    }
    let mut span = Span::new(field, faces.len());
    if size < sub.max_size() {
        let sub_faces = sub.faces_of_size(size);
        for c in sub.boundary_matrix(field, size + 1).columns() {
            span.insert(&Chain::from_coords(field, size, &sub_faces, &c).coords(&faces).expect("sub lies in delta"));
        }
    }
    let mut out = Vec::new();
    for x in kernel_vectors(&Matrix::from_columns(field, faces.len(), &cols)) {
        let mut z = Chain::zero(field, size);
        for (c, s) in cycles.iter().zip(&x[..nz]) {
            if !s.is_zero() {
                z.add_scaled(c, s).expect("same size");
            }
        }
        if span.insert(&z.coords(&faces).expect("sub lies in delta")) {
            out.push(z);
        }
    }
    out
}
