use super::MultigradedComplex;

/// Zeroes the coefficient of `e_j` in `∂e` whenever some basis element `e_l`
/// of the same homological degree as `e_j` has
/// `mdeg(e_j) < mdeg(e_l) < mdeg(e)`, i.e. whenever `e_j` does not sit at a
/// maximal multidegree among those available below `e`. Labels are kept.
/// The result may fail to be a complex.
pub fn maximal_approximation(f: &MultigradedComplex) -> MultigradedComplex {
    let strictly = |a: &crate::monomial::Monomial, b: &crate::monomial::Monomial| {
        a != b && a.divides(b).unwrap_or(false)
    };
    let mut frames = f.frames().to_vec();
    for i in 1..=f.length() {
        let below = f.level(i - 1);
        let d = &mut frames[i - 1];
        for q in 0..d.rows() {
            for (p, _) in d.row_entries(q) {
                let top = &f.level(i)[p].mdeg;
                let mj = &below[q].mdeg;
                let dominated = below.iter().any(|el| strictly(mj, &el.mdeg) && strictly(&el.mdeg, top));
                if dominated {
                    d.set(q, p, f.field().zero());
                }
            }
        }
    }
    MultigradedComplex::from_parts(f.ideal().clone(), f.field(), f.levels().to_vec(), frames)
}
