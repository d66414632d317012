//! Reproducible random monomial ideals for corpora and property tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomial::{Monomial, MonomialIdeal};

/// Draws `r` monomials in `n` variables with exponents in `0..=maxdeg`,
/// then keeps a minimal generating set. Retries until the unit ideal is
/// avoided, so the result always has at least one generator.
///
/// Panics if `n` or `maxdeg` is zero.
pub fn random_ideal(seed: u64, r: usize, n: usize, maxdeg: u32) -> MonomialIdeal {
    assert!(n > 0 && maxdeg > 0, "need at least one variable and positive degree");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    loop {
        let gens: Vec<Monomial> = (0..r.max(1))
            .map(|_| Monomial::new((0..n).map(|_| rng.gen_range(0..=maxdeg)).collect()))
            .filter(|m| !m.is_one())
            .collect();
        if gens.is_empty() {
            continue;
        }
        if let Ok(i) = MonomialIdeal::minimized(names.clone(), gens) {
            return i;
        }
    }
}
