use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = D` with unimodular `U`, `V`.
#[derive(Debug, Clone, PartialEq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// The diagonal of `D` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols()))
            .map(|i| self.d[(i, i)].clone())
            .collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&d, t, |_, _| true) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            clear_pivot_cross(&mut d, &mut u, &mut v, t);
            // The pivot must divide every remaining entry; otherwise fold the
            // offending row into the pivot row and reduce again.
            let p = d[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    d.add_row_multiple(t, i, &BigInt::one());
                    u.add_row_multiple(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d, u, v }
}

/// Zero out row `t` and column `t` beyond the pivot, moving smaller
/// remainders into the pivot position as they appear.
fn clear_pivot_cross(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) {
    let (rows, cols) = (d.rows(), d.cols());
    loop {
        let p = d[(t, t)].clone();
        for i in t + 1..rows {
            let q = d[(i, t)].div_floor(&p);
            if !q.is_zero() {
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
            }
        }
        for j in t + 1..cols {
            let q = d[(t, j)].div_floor(&p);
            if !q.is_zero() {
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
            }
        }
        let cross = min_abs_entry(d, t, |i, j| (i == t) != (j == t));
        match cross {
            None => return,
            Some((i, j)) => {
                if i != t {
                    d.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    d.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
            }
        }
    }
}

/// Position of a nonzero entry of least absolute value in the lower-right
/// block starting at `(t, t)`, restricted by `keep`.
fn min_abs_entry(
    d: &IntMatrix,
    t: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() || !keep(i, j) {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}
