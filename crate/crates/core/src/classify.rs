//! Membership tests for the ideal classes defined through the lcm-lattice.
//! Classes quantified over all resolutions get a third verdict, `unknown`,
//! whenever neither a certificate nor an obstruction is found.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::field::{FieldSpec, Scalar};
use crate::lattice::{BettiPoset, LcmLattice};
use crate::matrix::{solve, Matrix};
use crate::monomial::subset_label;
use crate::poset::{poset_construction, rlm_perturbations, HomologyBasis, Perturbations};
use crate::resolution::{lattice_linear_resolution, verify_with_lattice};

/// Most direction pairs tried when hunting for a failing `G(L_M)`.
pub const PAIR_LIMIT: usize = 400;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdealClass {
    Scarf,
    NearlyScarf,
    Rigid,
    #[serde(rename = "hm")]
    HomologicallyMonotonic,
    #[serde(rename = "nearly-hm")]
    NearlyHm,
    BettiLinear,
    LatticeLinear,
    HomologyLinear,
    StronglyHomologyLinear,
}

impl IdealClass {
    pub const ALL: [IdealClass; 9] = [
        IdealClass::Scarf,
        IdealClass::NearlyScarf,
        IdealClass::Rigid,
        IdealClass::HomologicallyMonotonic,
        IdealClass::NearlyHm,
        IdealClass::BettiLinear,
        IdealClass::LatticeLinear,
        IdealClass::HomologyLinear,
        IdealClass::StronglyHomologyLinear,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdealClass::Scarf => "scarf",
            IdealClass::NearlyScarf => "nearly-scarf",
            IdealClass::Rigid => "rigid",
            IdealClass::HomologicallyMonotonic => "hm",
            IdealClass::NearlyHm => "nearly-hm",
            IdealClass::BettiLinear => "betti-linear",
            IdealClass::LatticeLinear => "lattice-linear",
            IdealClass::HomologyLinear => "homology-linear",
            IdealClass::StronglyHomologyLinear => "strongly-homology-linear",
        }
    }
}

/// Inclusions `A ⊂ B` between the classes.
pub const INCLUSIONS: [(IdealClass, IdealClass); 10] = [
    (IdealClass::Scarf, IdealClass::Rigid),
    (IdealClass::Rigid, IdealClass::HomologicallyMonotonic),
    (IdealClass::HomologicallyMonotonic, IdealClass::BettiLinear),
    (IdealClass::BettiLinear, IdealClass::HomologyLinear),
    (IdealClass::Scarf, IdealClass::NearlyScarf),
    (IdealClass::NearlyScarf, IdealClass::NearlyHm),
    (IdealClass::HomologicallyMonotonic, IdealClass::NearlyHm),
    (IdealClass::NearlyHm, IdealClass::StronglyHomologyLinear),
    (IdealClass::StronglyHomologyLinear, IdealClass::HomologyLinear),
    (IdealClass::Scarf, IdealClass::LatticeLinear),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub class: IdealClass,
    pub verdict: Verdict,
    pub witness: String,
}

impl ClassVerdict {
    fn new(class: IdealClass, verdict: Verdict, witness: impl Into<String>) -> Self {
        ClassVerdict { class, verdict, witness: witness.into() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationReport {
    pub entries: Vec<ClassVerdict>,
}

impl ClassificationReport {
    pub fn get(&self, class: IdealClass) -> Verdict {
        self.entries.iter().find(|e| e.class == class).map(|e| e.verdict).unwrap_or(Verdict::Unknown)
    }

    /// Inclusions contradicted by the verdicts: `A` is yes while `B` is no.
    pub fn violations(&self) -> Vec<(IdealClass, IdealClass)> {
        INCLUSIONS
            .iter()
            .copied()
            .filter(|(a, b)| self.get(*a) == Verdict::Yes && self.get(*b) == Verdict::No)
            .collect()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{:<26} {:<8} {}\n", e.class.name(), e.verdict.to_string(), e.witness));
        }
        out
    }
}

/// Lattice data shared by the individual tests.
pub struct Context<'a> {
    pub lat: &'a LcmLattice,
    pub field: FieldSpec,
    pub bp: BettiPoset,
    pub hb: HomologyBasis,
}

impl<'a> Context<'a> {
    pub fn new(lat: &'a LcmLattice, field: FieldSpec) -> Result<Self> {
        Self::with_jobs(lat, field, 1)
    }

    pub fn with_jobs(lat: &'a LcmLattice, field: FieldSpec, jobs: usize) -> Result<Self> {
        let bp = BettiPoset::compute(lat, field, jobs);
        let hb = HomologyBasis::canonical(lat, field)?;
        Ok(Context { lat, field, bp, hb })
    }

    fn name(&self, m: usize) -> String {
        subset_label(self.lat.element(m).label)
    }

    // Non-bottom elements with their nonvanishing simplicial degrees.
    fn homology_degrees(&self) -> Vec<(usize, Vec<isize>)> {
        (0..self.lat.len())
            .filter(|&m| m != self.lat.bottom())
            .map(|m| {
                let degs = self.bp.homology[m]
                    .iter()
                    .enumerate()
                    .filter(|(_, b)| **b > 0)
                    .map(|(k, _)| k as isize - 1)
                    .collect();
                (m, degs)
            })
            .collect()
    }
}

pub fn is_scarf(ctx: &Context) -> Result<ClassVerdict> {
    for &m in &ctx.bp.members {
        if m != ctx.lat.bottom() && !ctx.lat.is_scarf_multidegree(m)? {
            let q = ctx.lat.q_faces(m)?.len();
            return Ok(ClassVerdict::new(
                IdealClass::Scarf,
                Verdict::No,
                format!("Betti multidegree {} is realized by {q} faces", ctx.name(m)),
            ));
        }
    }
    Ok(ClassVerdict::new(IdealClass::Scarf, Verdict::Yes, "every Betti multidegree is Scarf"))
}

pub fn is_nearly_scarf(ctx: &Context) -> Result<ClassVerdict> {
    for &m in &ctx.bp.members {
        if m != ctx.lat.bottom() && m != ctx.lat.top() && !ctx.lat.is_scarf_multidegree(m)? {
            return Ok(ClassVerdict::new(
                IdealClass::NearlyScarf,
                Verdict::No,
                format!("{} is neither Scarf nor the top", ctx.name(m)),
            ));
        }
    }
    Ok(ClassVerdict::new(IdealClass::NearlyScarf, Verdict::Yes, "Betti multidegrees below the top are Scarf"))
}

// A pair m̃ < m with H̃_i(m̃) ≠ 0, H̃_j(m) ≠ 0 and i ≥ j.
fn hm_violation(ctx: &Context) -> Option<(usize, usize, isize, isize)> {
    let hd = ctx.homology_degrees();
    for (a, da) in &hd {
        for (b, db) in &hd {
            if !ctx.lat.lt(*a, *b) {
                continue;
            }
            for &i in da {
                for &j in db {
                    if i >= j {
                        return Some((*a, *b, i, j));
                    }
                }
            }
        }
    }
    None
}

pub fn is_homologically_monotonic(ctx: &Context) -> ClassVerdict {
    match hm_violation(ctx) {
        Some((a, b, i, j)) => ClassVerdict::new(
            IdealClass::HomologicallyMonotonic,
            Verdict::No,
            format!("H̃_{i}(Δ_{}) and H̃_{j}(Δ_{}) with {} < {}", ctx.name(a), ctx.name(b), ctx.name(a), ctx.name(b)),
        ),
        None => ClassVerdict::new(IdealClass::HomologicallyMonotonic, Verdict::Yes, "homology degrees increase along chains"),
    }
}

/// The equivalent form: distinct elements with homology in a common degree
/// are incomparable.
pub fn hm_by_incomparability(ctx: &Context) -> bool {
    let hd = ctx.homology_degrees();
    hd.iter().all(|(a, da)| {
        hd.iter().all(|(b, db)| {
            a == b || !da.iter().any(|i| db.contains(i)) || !(ctx.lat.lt(*a, *b) || ctx.lat.lt(*b, *a))
        })
    })
}

pub fn is_rigid(ctx: &Context) -> ClassVerdict {
    let hm = is_homologically_monotonic(ctx);
    if hm.verdict != Verdict::Yes {
        return ClassVerdict::new(IdealClass::Rigid, Verdict::No, format!("not homologically monotonic: {}", hm.witness));
    }
    for &m in &ctx.bp.members {
        let total: usize = ctx.bp.homology[m].iter().sum();
        if m != ctx.lat.bottom() && total != 1 {
            return ClassVerdict::new(
                IdealClass::Rigid,
                Verdict::No,
                format!("H̃(Δ_{}) has dimension {total}", ctx.name(m)),
            );
        }
    }
    ClassVerdict::new(IdealClass::Rigid, Verdict::Yes, "homologically monotonic with one-dimensional homology")
}

pub fn is_nearly_hm(ctx: &Context) -> ClassVerdict {
    let hd = ctx.homology_degrees();
    for (a, da) in &hd {
        for (b, db) in &hd {
            if !ctx.lat.lt(*a, *b) {
                continue;
            }
            for &i in da.iter().filter(|i| db.contains(i)) {
                if let Some((c, _)) = hd.iter().find(|(c, dc)| ctx.lat.lt(*b, *c) && dc.contains(&(i + 1))) {
                    return ClassVerdict::new(
                        IdealClass::NearlyHm,
                        Verdict::No,
                        format!(
                            "H̃_{i} at {} < {} and H̃_{} at {}",
                            ctx.name(*a),
                            ctx.name(*b),
                            i + 1,
                            ctx.name(*c)
                        ),
                    );
                }
            }
        }
    }
    ClassVerdict::new(IdealClass::NearlyHm, Verdict::Yes, "no repeated degree continues upward")
}

pub fn is_betti_linear(ctx: &Context) -> Result<ClassVerdict> {
    let out = poset_construction(ctx.lat, &ctx.hb)?;
    Ok(match (&out.report.failure, out.report.minimal) {
        (None, true) => ClassVerdict::new(IdealClass::BettiLinear, Verdict::Yes, "F(L_M) is a minimal free resolution"),
        (None, false) => ClassVerdict::new(IdealClass::BettiLinear, Verdict::No, "F(L_M) is not minimal"),
        (Some(f), _) => ClassVerdict::new(IdealClass::BettiLinear, Verdict::No, format!("F(L_M) fails: {f}")),
    })
}

pub fn is_lattice_linear(ctx: &Context) -> Result<ClassVerdict> {
    Ok(match lattice_linear_resolution(ctx.lat, ctx.field)? {
        Some(out) if verify_with_lattice(&out.resolution, ctx.lat).passed() => ClassVerdict::new(
            IdealClass::LatticeLinear,
            Verdict::Yes,
            "resolution built from cycles over covered elements",
        ),
        _ => ClassVerdict::new(IdealClass::LatticeLinear, Verdict::Unknown, "greedy cover-cycle construction stalled"),
    })
}

// d∘d of the perturbed construction as a polynomial in the direction
// parameters; only equations without bilinear terms are kept.
fn linear_obstruction(p: &Perturbations) -> Result<LinearPart> {
    let field = p.base.complex.field();
    let nd = p.directions.len();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs = Vec::new();
    let mut constant_witness = None;
    let mats = &p.base.matrices;
    for i in 2..=mats.len() {
        let lower = &mats[i - 2];
        let upper = &mats[i - 1];
        let c0 = lower.mul(upper)?;
        let dirs_up: Vec<usize> = (0..nd).filter(|&d| p.directions[d].level == i).collect();
        let dirs_low: Vec<usize> = (0..nd).filter(|&d| p.directions[d].level == i - 1).collect();
        for r in 0..lower.rows() {
            for c in 0..upper.cols() {
                let mut coeffs = vec![field.zero(); nd];
                let mut bilinear = false;
                for &v in dirs_up.iter().filter(|&&v| p.directions[v].column == c) {
                    let pv = &p.directions[v].vector;
                    let s = (0..lower.cols()).fold(field.zero(), |acc, q| &acc + &(&lower.get(r, q) * &pv[q]));
                    coeffs[v] = s;
                    for &u in &dirs_low {
                        let pu = &p.directions[u];
                        if !pu.vector[r].is_zero() && !pv[pu.column].is_zero() {
                            bilinear = true;
                        }
                    }
                }
                for &u in &dirs_low {
                    let pu = &p.directions[u];
                    let s = &pu.vector[r] * &upper.get(pu.column, c);
                    coeffs[u] = &coeffs[u] + &s;
                }
                if bilinear {
                    continue;
                }
                let k = c0.get(r, c);
                if coeffs.iter().all(|s| s.is_zero()) {
                    if !k.is_zero() && constant_witness.is_none() {
                        constant_witness = Some((i, r, c));
                    }
                    continue;
                }
                rows.push(coeffs);
                rhs.push(-&k);
            }
        }
    }
    let solution = if constant_witness.is_some() {
        None
    } else if rows.is_empty() {
        Some(vec![field.zero(); nd])
    } else {
        solve(&Matrix::from_rows(field, rows, nd), &rhs)?
    };
    Ok(LinearPart { constant_witness, solution })
}

struct LinearPart {
    constant_witness: Option<(usize, usize, usize)>,
    // None when the linear equations are inconsistent
    solution: Option<Vec<Scalar>>,
}

fn verifies(ctx: &Context, p: &Perturbations, shifts: &[(usize, Scalar)]) -> Result<bool> {
    let g = p.complex_at(ctx.lat, shifts)?;
    let r = verify_with_lattice(&g, ctx.lat);
    Ok(r.passed() && r.minimal)
}

pub fn is_homology_linear(ctx: &Context) -> Result<ClassVerdict> {
    let p = rlm_perturbations(ctx.lat, &ctx.hb)?;
    let bl = is_betti_linear(ctx)?;
    homology_linear_from(ctx, &p, &bl)
}

fn homology_linear_from(ctx: &Context, p: &Perturbations, bl: &ClassVerdict) -> Result<ClassVerdict> {
    let class = IdealClass::HomologyLinear;
    if p.base.report.passed() && p.base.report.minimal {
        return Ok(ClassVerdict::new(class, Verdict::Yes, "canonical G(L_M) is a minimal free resolution"));
    }
    if bl.verdict == Verdict::Yes {
        return Ok(ClassVerdict::new(class, Verdict::Yes, "Betti-linear"));
    }
    let lin = linear_obstruction(p)?;
    if let Some((i, r, c)) = lin.constant_witness {
        return Ok(ClassVerdict::new(
            class,
            Verdict::No,
            format!("entry ({r}, {c}) of ψ_{}∘ψ_{i} is a nonzero constant for every choice", i - 1),
        ));
    }
    match lin.solution {
        None => {
            return Ok(ClassVerdict::new(
                class,
                Verdict::No,
                "the linear part of ψ∘ψ = 0 has no solution over the preimage choices",
            ))
        }
        Some(t) => {
            let shifts: Vec<(usize, Scalar)> =
                t.into_iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
            if !shifts.is_empty() && verifies(ctx, p, &shifts)? {
                return Ok(ClassVerdict::new(class, Verdict::Yes, "a perturbed G(L_M) is a minimal free resolution"));
            }
        }
    }
    let one = ctx.field.one();
    for d in 0..p.directions.len() {
        if verifies(ctx, p, &[(d, one.clone())])? {
            return Ok(ClassVerdict::new(
                class,
                Verdict::Yes,
                format!("G(L_M) with preimage shifted by {} is a minimal free resolution", p.directions[d].cycle),
            ));
        }
    }
    Ok(ClassVerdict::new(class, Verdict::Unknown, "no certificate or obstruction found"))
}

pub fn is_strongly_homology_linear(ctx: &Context) -> Result<ClassVerdict> {
    let p = rlm_perturbations(ctx.lat, &ctx.hb)?;
    let bl = is_betti_linear(ctx)?;
    let hl = homology_linear_from(ctx, &p, &bl)?;
    strongly_from(ctx, &p, &hl)
}

fn strongly_from(ctx: &Context, p: &Perturbations, hl: &ClassVerdict) -> Result<ClassVerdict> {
    let class = IdealClass::StronglyHomologyLinear;
    if is_nearly_hm(ctx).verdict == Verdict::Yes {
        return Ok(ClassVerdict::new(class, Verdict::Yes, "nearly homologically monotonic"));
    }
    if hl.verdict == Verdict::No {
        return Ok(ClassVerdict::new(class, Verdict::No, format!("not homology-linear: {}", hl.witness)));
    }
    if !(p.base.report.passed() && p.base.report.minimal) {
        return Ok(ClassVerdict::new(class, Verdict::No, "canonical G(L_M) is not a minimal free resolution"));
    }
    if let Some(w) = rebasing_certificate(ctx, p)? {
        return Ok(ClassVerdict::new(class, Verdict::Yes, w));
    }
    let one = ctx.field.one();
    for (d, dir) in p.directions.iter().enumerate() {
        if !verifies(ctx, p, &[(d, one.clone())])? {
            return Ok(ClassVerdict::new(
                class,
                Verdict::No,
                format!(
                    "shifting the preimage at {} by {} breaks G(L_M)",
                    ctx.name(p.base.levels[dir.level][dir.column].m),
                    dir.cycle
                ),
            ));
        }
    }
    let mut tried = 0;
    for a in 0..p.directions.len() {
        for b in a + 1..p.directions.len() {
            if tried == PAIR_LIMIT {
                break;
            }
            tried += 1;
            if !verifies(ctx, p, &[(a, one.clone()), (b, one.clone())])? {
                return Ok(ClassVerdict::new(class, Verdict::No, "a pair of preimage shifts breaks G(L_M)"));
            }
        }
    }
    Ok(ClassVerdict::new(class, Verdict::Unknown, "no certificate or obstruction found"))
}

// Every direction is the canonical map applied to a vector supported below
// its column, and the perturbed columns are never hit from above: then each
// choice is a triangular change of basis of the canonical resolution.
fn rebasing_certificate(ctx: &Context, p: &Perturbations) -> Result<Option<String>> {
    let mats = &p.base.matrices;
    for dir in &p.directions {
        let psi = &mats[dir.level - 1];
        let m = p.base.levels[dir.level][dir.column].m;
        let below: Vec<usize> = (0..psi.cols())
            .filter(|&k| ctx.lat.lt(p.base.levels[dir.level][k].m, m))
            .collect();
        let rows: Vec<usize> = (0..psi.rows()).collect();
        if solve(&psi.select(&rows, &below), &dir.vector)?.is_none() {
            return Ok(None);
        }
        if let Some(up) = mats.get(dir.level) {
            if up.row_entries(dir.column).iter().any(|(_, s)| !s.is_zero()) {
                return Ok(None);
            }
            let hit = p
                .directions
                .iter()
                .any(|d| d.level == dir.level + 1 && !d.vector[dir.column].is_zero());
            if hit {
                return Ok(None);
            }
        }
    }
    Ok(Some(format!(
        "all {} preimage directions are triangular changes of basis of the canonical G(L_M)",
        p.directions.len()
    )))
}

/// Every verdict, in the order of [`IdealClass::ALL`].
pub fn classify(ctx: &Context) -> Result<ClassificationReport> {
    let p = rlm_perturbations(ctx.lat, &ctx.hb)?;
    let bl = is_betti_linear(ctx)?;
    let hl = homology_linear_from(ctx, &p, &bl)?;
    let shl = strongly_from(ctx, &p, &hl)?;
    Ok(ClassificationReport {
        entries: vec![
            is_scarf(ctx)?,
            is_nearly_scarf(ctx)?,
            is_rigid(ctx),
            is_homologically_monotonic(ctx),
            is_nearly_hm(ctx),
            bl,
            is_lattice_linear(ctx)?,
            hl,
            shl,
        ],
    })
}
