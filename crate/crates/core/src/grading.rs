//! The complexity-one torus grading of a trinomial hypersurface.
//!
//! `L` is the `2×n` matrix with rows `(-l₀ | l₁ | 0)` and `(-l₀ | 0 | l₂)`.
//! Its kernel `N` is the lattice of one-parameter subgroups of the acting
//! torus. We identify the character lattice `M = Hom(N, Z)` with `Z^{n-2}`
//! through the dual of the canonical kernel basis `B`, so `deg(T_k)` is simply
//! row `k` of `B`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{is_saturated_basis, kernel_basis, same_lattice, section, smith_form, IntMatrix};
use crate::trinomial::Trinomial;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingData {
    /// `2×n`
    pub l: IntMatrix,
    /// `n×(n-2)`, columns form a basis of `N`.
    pub basis: IntMatrix,
    /// `(n-2)×n` with `S·B = I`.
    pub section: IntMatrix,
    /// `deg(T_k)`, one per variable.
    pub degrees: Vec<Vec<BigInt>>,
    /// Common degree of the three block monomials, i.e. the degree of `f`.
    pub mu: Vec<BigInt>,
}

pub fn build_l(t: &Trinomial) -> IntMatrix {
    let n = t.n();
    let [n0, n1, _] = t.block_sizes();
    let mut l = IntMatrix::zeros(2, n);
    for (k, &e) in t.exponents().iter().enumerate() {
        let e = BigInt::from(e);
        if k < n0 {
            l[(0, k)] = -e.clone();
            l[(1, k)] = -e;
        } else if k < n0 + n1 {
            l[(0, k)] = e;
        } else {
            l[(1, k)] = e;
        }
    }
    l
}

/// Grading data with the canonical (Hermite-normalized) kernel basis.
pub fn grading_data(t: &Trinomial) -> Result<GradingData, Error> {
    t.require_factorial()?;
    let l = build_l(t);
    let basis = kernel_basis(&l);
    assemble(t, l, basis)
}

/// Grading data for a caller-chosen basis of the kernel lattice, e.g. a basis
/// printed in a reference computation.
pub fn grading_data_with_basis(t: &Trinomial, basis: &IntMatrix) -> Result<GradingData, Error> {
    t.require_factorial()?;
    let l = build_l(t);
    if basis.rows() != t.n() || basis.cols() + 2 != t.n() {
        return Err(Error::DimensionMismatch {
            expected: t.n() - 2,
            got: basis.cols(),
        });
    }
    if !l.mul(basis).is_zero() || !same_lattice(basis, &kernel_basis(&l)) {
        return Err(Error::BasisMismatch);
    }
    assemble(t, l, basis.clone())
}

fn assemble(t: &Trinomial, l: IntMatrix, basis: IntMatrix) -> Result<GradingData, Error> {
    let section = section(&basis)?;
    let degrees = basis.row_vecs();
    let mut g = GradingData {
        l,
        basis,
        section,
        degrees,
        mu: Vec::new(),
    };
    g.mu = degree_of(&t.block_monomial(0), &g);
    Ok(g)
}

impl GradingData {
    /// Rank of `M`, i.e. `n - 2`.
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn nvars(&self) -> usize {
        self.basis.rows()
    }

    /// Same grading with a different section; fails unless `S·B = I`.
    pub fn with_section(&self, s: IntMatrix) -> Result<GradingData, Error> {
        if s.rows() != self.rank() || s.cols() != self.nvars() || !s.mul(&self.basis).is_identity() {
            return Err(Error::InvalidSection);
        }
        Ok(GradingData {
            section: s,
            ..self.clone()
        })
    }

    /// `S + C·L` for a `(n-2)×2` integer matrix `C`; again a section since
    /// `L·B = 0`.
    pub fn shifted_section(&self, c: &IntMatrix) -> IntMatrix {
        let cl = c.mul(&self.l);
        IntMatrix::from_entries(
            self.section.rows(),
            self.section.cols(),
            self.section
                .entries()
                .iter()
                .zip(cl.entries())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Checks every structural invariant against the instance.
    pub fn verify(&self, t: &Trinomial) -> bool {
        let block_degrees: Vec<_> = (0..3).map(|i| degree_of(&t.block_monomial(i), self)).collect();
        self.l.mul(&self.basis).is_zero()
            && self.section.mul(&self.basis).is_identity()
            && is_saturated_basis(&self.basis)
            && block_degrees.iter().all(|d| *d == self.mu)
            && degree_map_is_surjective(self)
    }
}

/// `Σ a_k · deg(T_k)`
pub fn degree_of(a: &[u64], g: &GradingData) -> Vec<BigInt> {
    assert_eq!(a.len(), g.nvars(), "exponent vector length must be n");
    let mut out = vec![BigInt::zero(); g.rank()];
    for (&ak, dk) in a.iter().zip(&g.degrees) {
        if ak == 0 {
            continue;
        }
        let ak = BigInt::from(ak);
        for (o, d) in out.iter_mut().zip(dk) {
            *o += &ak * d;
        }
    }
    out
}

pub(crate) fn degree_of_u32(a: &[u32], g: &GradingData) -> Vec<BigInt> {
    let a: Vec<u64> = a.iter().map(|&x| u64::from(x)).collect();
    degree_of(&a, g)
}

/// Weight table of the diagonal torus action: entry `[k][i]` is the exponent
/// of torus coordinate `t_i` acting on `T_k`.
pub fn torus_weights(g: &GradingData) -> Vec<Vec<BigInt>> {
    g.degrees.clone()
}

/// The degree map `e_k ↦ deg(T_k)` is onto `Z^{n-2}` (the grading is
/// effective).
pub fn degree_map_is_surjective(g: &GradingData) -> bool {
    let s = smith_form(&g.basis.transpose());
    let d = s.diagonal();
    d.len() == g.rank() && d.iter().all(One::is_one)
}
