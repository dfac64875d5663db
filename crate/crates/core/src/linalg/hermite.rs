use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{extended_gcd, IntMatrix};

/// Row-style Hermite normal form `H = U·A` with `U` unimodular.
///
/// `H` is in echelon form: each pivot is positive, pivots move strictly to the
/// right going down, entries above a pivot lie in `[0, pivot)`, and zero rows
/// sit at the bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteDecomposition {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of each pivot, one per nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl HermiteDecomposition {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn hermite_form(a: &IntMatrix) -> HermiteDecomposition {
    let rows = a.rows();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut prow = 0;

    for col in 0..a.cols() {
        if prow == rows {
            break;
        }
        for r in prow + 1..rows {
            if h[(r, col)].is_zero() {
                continue;
            }
            let x = h[(prow, col)].clone();
            let y = h[(r, col)].clone();
            let (g, s, t) = extended_gcd(&x, &y);
            let (xg, yg) = (&x / &g, &y / &g);
            let m = [&s, &t, &(-yg), &xg];
            h.combine_rows(prow, r, m);
            u.combine_rows(prow, r, m);
        }
        if h[(prow, col)].is_zero() {
            continue;
        }
        if h[(prow, col)].is_negative() {
            h.negate_row(prow);
            u.negate_row(prow);
        }
        let pivot = h[(prow, col)].clone();
        for r in 0..prow {
            let q = -h[(r, col)].div_floor(&pivot);
            h.add_row_multiple(r, prow, &q);
            u.add_row_multiple(r, prow, &q);
        }
        pivots.push(col);
        prow += 1;
    }

    HermiteDecomposition { h, u, pivots }
}

/// True if `h` satisfies the echelon conditions documented on
/// [`HermiteDecomposition`].
pub fn is_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(j) => {
                if seen_zero_row || last_pivot.is_some_and(|p| j <= p) {
                    return false;
                }
                let p = &h[(i, j)];
                if !p.is_positive() {
                    return false;
                }
                for r in 0..i {
                    let e = &h[(r, j)];
                    if e.is_negative() || e >= p {
                        return false;
                    }
                }
                last_pivot = Some(j);
            }
        }
    }
    true
}
