use num_traits::{One, Zero};

use super::{hermite_form, smith_form, IntMatrix};
use crate::error::Error;

/// Basis of the saturated kernel lattice `{x ∈ Zⁿ : A·x = 0}`, one basis
/// vector per column.
///
/// The basis is canonical: its transpose is in row Hermite normal form, so two
/// matrices with the same integer kernel get identical output.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    // U·Aᵀ = H; the rows of U below the rank span the kernel and, being rows
    // of a unimodular matrix, form a saturated basis.
    let hf = hermite_form(&a.transpose());
    let rank = hf.rank();
    let k = n - rank;
    let mut raw = IntMatrix::zeros(k, n);
    for (r, src) in (rank..n).enumerate() {
        for j in 0..n {
            raw[(r, j)] = hf.u[(src, j)].clone();
        }
    }
    hermite_form(&raw).h.transpose()
}

/// True iff `A: Zⁿ → Z^rows` is onto, i.e. every Smith invariant factor is 1
/// and there are `rows` of them.
pub fn is_surjective(a: &IntMatrix) -> bool {
    let s = smith_form(a);
    let diag = s.diagonal();
    diag.len() == a.rows() && diag.iter().all(One::is_one)
}

/// Integral left inverse `S` of a basis matrix `B` (`S·B = I`).
///
/// Fails with [`Error::NoSection`] when the columns of `B` do not span a
/// direct summand (equivalently, some Smith invariant of `B` is not 1).
pub fn section(b: &IntMatrix) -> Result<IntMatrix, Error> {
    let (n, k) = (b.rows(), b.cols());
    let s = smith_form(b);
    if s.diagonal().len() != k || !s.diagonal().iter().all(One::is_one) {
        return Err(Error::NoSection);
    }
    // U·B·V = [I; 0]  ⇒  (V·[I 0]·U)·B = I
    let mut proj = IntMatrix::zeros(k, n);
    for i in 0..k {
        proj[(i, i)] = One::one();
    }
    let out = s.v.mul(&proj).mul(&s.u);
    debug_assert!(out.mul(b).is_identity());
    Ok(out)
}

/// True iff the columns of `b` generate a saturated sublattice, i.e. the Smith
/// form of `b` is `[I; 0]`.
pub fn is_saturated_basis(b: &IntMatrix) -> bool {
    let s = smith_form(b);
    let diag = s.diagonal();
    diag.len() == b.cols() && diag.iter().all(One::is_one)
}

/// True iff the column spans of `a` and `b` are the same lattice.
pub fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let ha = hermite_form(&a.transpose());
    let hb = hermite_form(&b.transpose());
    let nonzero = |h: &IntMatrix| {
        (0..h.rows())
            .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
            .map(|i| h.row(i).to_vec())
            .collect::<Vec<_>>()
    };
    nonzero(&ha.h) == nonzero(&hb.h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_vec;
    use proptest::prelude::*;

    fn l_ex1() -> IntMatrix {
        IntMatrix::from_rows(&[[-2, -3, 2, 0], [-2, -3, 0, 3]])
    }

    #[test]
    fn ex1_kernel_matches_published_generators() {
        let b = kernel_basis(&l_ex1());
        assert!(l_ex1().mul(&b).is_zero());
        let published = IntMatrix::from_columns(4, &[int_vec(&[3, 0, 3, 2]), int_vec(&[0, 2, 3, 2])]);
        assert!(same_lattice(&b, &published));
        // the published pair is itself in Hermite form, so it is the canonical basis
        assert_eq!(b, published);
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let b = kernel_basis(&IntMatrix::identity(3));
        assert_eq!(b.cols(), 0);
        assert_eq!(b.rows(), 3);
    }

    #[test]
    fn ex2_kernel() {
        let l = IntMatrix::from_rows(&[[-1, -2, 2, 0], [-1, -2, 0, 3]]);
        let b = kernel_basis(&l);
        let expected = IntMatrix::from_columns(4, &[int_vec(&[-2, 1, 0, 0]), int_vec(&[6, 0, 3, 2])]);
        assert!(same_lattice(&b, &expected));
        assert!(is_saturated_basis(&b));
    }

    #[test]
    fn surjectivity_examples() {
        assert!(is_surjective(&l_ex1()));
        assert!(!is_surjective(&IntMatrix::from_rows(&[[2, 0], [0, 2]])));
        assert!(!is_surjective(&IntMatrix::from_rows(&[[-2, 2, 0], [-2, 0, 3]])));
    }

    #[test]
    fn section_of_identity() {
        assert!(section(&IntMatrix::identity(3)).unwrap().is_identity());
    }

    #[test]
    fn section_ex4_basis() {
        let b = IntMatrix::from_columns(4, &[int_vec(&[6, 0, 3, 2]), int_vec(&[-1, 1, 0, 0])]);
        let s = section(&b).unwrap();
        assert!(s.mul(&b).is_identity());
        // the hand-computed answer is one valid section among many
        let hand = IntMatrix::from_rows(&[[0, 0, 1, -1], [0, 1, 0, 0]]);
        assert!(hand.mul(&b).is_identity());
    }

    #[test]
    fn section_rejects_non_summand() {
        let b = IntMatrix::from_columns(2, &[int_vec(&[2, 0])]);
        assert!(matches!(section(&b), Err(Error::NoSection)));
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_saturated(
            rows in 1usize..4,
            cols in 2usize..6,
            seed in proptest::collection::vec(-6i64..7, 24),
        ) {
            let entries = seed[..rows * cols].iter().map(|&x| x.into()).collect();
            let a = IntMatrix::from_entries(rows, cols, entries);
            let b = kernel_basis(&a);
            prop_assert!(a.mul(&b).is_zero());
            prop_assert!(is_saturated_basis(&b));
            let s = section(&b).unwrap();
            prop_assert!(s.mul(&b).is_identity());
        }
    }
}
