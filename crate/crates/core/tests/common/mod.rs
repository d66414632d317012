#![allow(dead_code)]

use monres::io::parse_ideal;
use monres::{FieldSpec, MonomialIdeal};

pub const Q: FieldSpec = FieldSpec::RATIONALS;

pub fn ideal(text: &str) -> MonomialIdeal {
    parse_ideal(text).unwrap()
}

pub fn tbmany() -> MonomialIdeal {
    ideal("vars x y z; gens x*y x*z y*z")
}

pub fn cbasis() -> MonomialIdeal {
    ideal("vars a b c d; gens a^2*b a*c a*d b*c*d")
}

pub fn strict1() -> MonomialIdeal {
    ideal("vars a b c; gens a^2 a*b b*c c^2")
}

pub fn hexagon() -> MonomialIdeal {
    ideal("vars x1 x2 x3 x4 x5 x6; gens x1*x2 x2*x3 x3*x4 x4*x5 x5*x6 x1*x6")
}

pub fn not_betti() -> MonomialIdeal {
    ideal("vars a b c d; gens a*b a*c b*c*d")
}

pub fn rlm() -> MonomialIdeal {
    ideal("vars a b c; gens a*b a*c b^2*c")
}

pub fn stable() -> MonomialIdeal {
    ideal("vars x y z; gens x^2 x*y x*z y^3 y^2*z y*z^2 z^3")
}

// The following ideals realize lattices that are only drawn as pictures:
// each variable is a meet-irreducible element and a generator avoids the
// variables of the meet-irreducibles above it.

pub fn strict2() -> MonomialIdeal {
    ideal("vars x1 x2 x3 x4 x5 x6 x7; gens x3*x4*x5*x6 x2*x4*x5*x6 x1*x6 x1*x2*x3*x5*x7 x1*x2*x3*x4*x7")
}

pub fn approx() -> MonomialIdeal {
    ideal("vars x1 x2 x3 x4 x5 x6 x7; gens x1*x4*x5*x6*x7 x1*x3*x6 x1*x2*x5 x1*x2*x3*x4 x2*x3*x4*x5*x6")
}

pub fn approx2() -> MonomialIdeal {
    ideal(
        "vars x1 x2 x3 x4 x5 x6 x7 x8 x9; gens x1*x2*x3*x6*x9 x1*x2*x3*x5*x8 x1*x2*x3*x4*x7 \
         x2*x3*x4*x5*x6*x8*x9 x1*x3*x4*x5*x6*x7*x9 x1*x2*x4*x5*x6*x7*x8",
    )
}

pub fn big2() -> MonomialIdeal {
    ideal(
        "vars x1 x2 x3 x4 x5 x6 x7 x8; gens x3*x5*x6*x7 x2*x5*x6*x7 x1*x7 x1*x2*x3*x4*x6 \
         x1*x2*x3*x4*x5 x1*x2*x3*x4*x8",
    )
}

pub fn shl() -> MonomialIdeal {
    ideal(
        "vars x1 x2 x3 x4 x5 x6 x7 x8; gens x2*x3*x5*x6*x7 x1*x3*x5*x6*x7 x1*x2*x4*x5*x6*x7 \
         x1*x2*x3*x4*x7*x8 x1*x2*x3*x4*x6*x8 x1*x2*x3*x4*x5*x8",
    )
}

pub fn nearly_scarf() -> MonomialIdeal {
    ideal("vars x1 x2 x3 x4 x5; gens x2*x3*x4 x1*x3*x4 x1*x2*x4 x1*x2*x3*x5")
}

/// The four ideals with published Betti tables, with their totals.
pub fn golden() -> Vec<(&'static str, MonomialIdeal, Vec<usize>)> {
    vec![
        ("tbmany", tbmany(), vec![1, 3, 2]),
        ("cbasis", cbasis(), vec![1, 4, 4, 1]),
        ("strict1", strict1(), vec![1, 4, 4, 1]),
        ("hexagon", hexagon(), vec![1, 6, 9, 6, 2]),
    ]
}

/// Sorted non-bottom, non-atom, non-top lattice labels as strings.
pub fn middle_labels(i: &MonomialIdeal) -> Vec<String> {
    let lat = monres::LcmLattice::build(i);
    let mut v: Vec<String> = lat
        .elements()
        .iter()
        .filter(|e| e.label.count_ones() >= 2 && e.id != lat.top())
        .map(|e| monres::monomial::subset_label(e.label))
        .collect();
    v.sort_by_key(|s| (s.len(), s.clone()));
    v
}

/// Random ideal with at most `r` generators in `n` variables, exponents <= `d`.
pub fn random_ideal(seed: u64, r: usize, n: usize, d: u32) -> MonomialIdeal {
    monres::random::random_ideal(seed, r, n, d)
}
