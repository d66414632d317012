use crate::chain::{Chain, Face};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::monomial::MonomialIdeal;
use crate::simplicial::boundary_matrix;
use crate::vcomplex::Label;

use super::{MgElement, MultigradedComplex};

/// Largest generator count accepted by the Taylor resolution.
pub const TAYLOR_LIMIT: usize = 20;

/// The Taylor resolution: every face of the simplex on the generators.
pub fn taylor_resolution(ideal: &MonomialIdeal, field: FieldSpec) -> Result<MultigradedComplex> {
    let r = ideal.r();
    if r > TAYLOR_LIMIT {
        return Err(Error::Precondition(format!(
            "Taylor resolution needs r <= {TAYLOR_LIMIT}, got {r}"
        )));
    }
    let full = ideal.full_set();
    let faces: Vec<Vec<Face>> = (0..=r).map(|k| Face::subsets_of_size(full, k)).collect();
    let levels = faces
        .iter()
        .map(|fs| {
            fs.iter()
                .map(|f| MgElement {
                    label: Label::Chain(Chain::face(field, *f)),
                    mdeg: ideal.mdeg_of_subset(f.0).expect("subset of generators"),
                })
                .collect()
        })
        .collect();
    let frames = (1..=r).map(|k| boundary_matrix(field, &faces[k - 1], &faces[k])).collect();
    MultigradedComplex::new(ideal.clone(), field, levels, frames)
}
