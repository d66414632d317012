use crate::error::{Error, Result};
use crate::vcomplex::Label;

use super::{verify_resolution, MultigradedComplex, TaylorBasis};

/// Removes the split summand at the unit entry `(q, p)` of `d_i`. The
/// remaining block becomes `A1 - a^{-1} β α`, row `p` of `d_{i+1}` and
/// column `q` of `d_{i-1}` are dropped, and the level-`i` chain labels become
/// `f_j - a^{-1} a_j f_p`.
pub fn consecutive_cancellation(
    c: &MultigradedComplex,
    i: usize,
    q: usize,
    p: usize,
) -> Result<MultigradedComplex> {
    if i == 0 || i > c.length() {
        return Err(Error::Precondition(format!("no map d_{i}")));
    }
    let d = c.frame(i);
    if q >= d.rows() || p >= d.cols() {
        return Err(Error::Precondition(format!("entry ({q}, {p}) outside d_{i}")));
    }
    let a = d.get(q, p);
    if a.is_zero() {
        return Err(Error::Precondition(format!("entry ({q}, {p}) of d_{i} is zero")));
    }
    if c.level(i)[p].mdeg != c.level(i - 1)[q].mdeg {
        return Err(Error::Precondition(format!(
            "entry ({q}, {p}) of d_{i} is not a unit: multidegrees differ"
        )));
    }
    let field = c.field;
    let a_inv = a.inv();
    let rows: Vec<usize> = (0..d.rows()).filter(|&k| k != q).collect();
    let cols: Vec<usize> = (0..d.cols()).filter(|&k| k != p).collect();
    let alpha = d.row(q);
    let beta = d.column(p);
    let mut block = d.select(&rows, &cols);
    for (nr, &r) in rows.iter().enumerate() {
        if beta[r].is_zero() {
            continue;
        }
        let br = &beta[r] * &a_inv;
        for (nc, &col) in cols.iter().enumerate() {
            if alpha[col].is_zero() {
                continue;
            }
            let cur = block.get(nr, nc);
            block.set(nr, nc, &cur - &(&br * &alpha[col]));
        }
    }

    let mut levels = c.levels.clone();
    let mut frames = c.frames.clone();
    // level-i labels absorb the cancelled element
    let fp = levels[i][p].label.clone();
    for (j, e) in levels[i].iter_mut().enumerate() {
        if j == p || alpha[j].is_zero() {
            continue;
        }
        if let (Label::Chain(fj), Label::Chain(fpc)) = (&mut e.label, &fp) {
            let s = -(&(&a_inv * &alpha[j]));
            fj.add_scaled(fpc, &s)?;
        }
    }
    levels[i].remove(p);
    levels[i - 1].remove(q);
    frames[i - 1] = block;
    if i < frames.len() {
        let next = &frames[i];
        let keep_rows: Vec<usize> = (0..next.rows()).filter(|&k| k != p).collect();
        let all_cols: Vec<usize> = (0..next.cols()).collect();
        frames[i] = next.select(&keep_rows, &all_cols);
    }
    if i >= 2 {
        let prev = &frames[i - 2];
        let all_rows: Vec<usize> = (0..prev.rows()).collect();
        let keep_cols: Vec<usize> = (0..prev.cols()).filter(|&k| k != q).collect();
        frames[i - 2] = prev.select(&all_rows, &keep_cols);
    }
    MultigradedComplex::new(c.ideal.clone(), field, levels, frames)
}

fn first_unit(c: &MultigradedComplex) -> Option<(usize, usize, usize)> {
    for i in 1..=c.length() {
        let d = c.frame(i);
        for q in 0..d.rows() {
            for (p, _) in d.row_entries(q) {
                if c.level(i)[p].mdeg == c.level(i - 1)[q].mdeg {
                    return Some((i, q, p));
                }
            }
        }
    }
    None
}

/// Cancels unit entries, lowest degree first and row-major within a map,
/// until none remain. Returns the minimal resolution and its Taylor basis
/// (present when the input carries chain labels).
pub fn minimize_resolution(c: &MultigradedComplex) -> Result<(MultigradedComplex, Option<TaylorBasis>)> {
    let report = verify_resolution(c);
    if let Some(f) = report.failure {
        return Err(Error::Precondition(format!("input is not a free resolution: {f}")));
    }
    Ok(minimize_unchecked(c))
}

pub(crate) fn minimize_unchecked(c: &MultigradedComplex) -> (MultigradedComplex, Option<TaylorBasis>) {
    let mut cur = c.clone();
    while let Some((i, q, p)) = first_unit(&cur) {
        cur = consecutive_cancellation(&cur, i, q, p).expect("unit entry");
    }
    let tb = cur.taylor_basis();
    (cur, tb)
}
