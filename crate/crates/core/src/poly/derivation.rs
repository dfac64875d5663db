use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, SparsePoly};
use crate::error::Error;
use crate::grading::{degree_of_u32, GradingData};
use crate::linalg::Rational;
use crate::trinomial::{Trinomial, Validity, Variable};

/// A derivation of the polynomial ring, given by the images of the variables
/// and extended to all polynomials by the Leibniz rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    images: Vec<SparsePoly>,
    /// M-degree, when known.
    pub degree: Option<Vec<BigInt>>,
}

impl Derivation {
    pub fn new(images: Vec<SparsePoly>) -> Self {
        let n = images.len();
        assert!(
            images.iter().all(|p| p.nvars() == n),
            "images must live in the same ring"
        );
        Self { images, degree: None }
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![SparsePoly::zero(n); n])
    }

    /// `δ(T_k) = w_k·T_k`
    pub fn euler(weights: &[Rational]) -> Self {
        let n = weights.len();
        Self::new((0..n).map(|k| SparsePoly::variable(n, k).scale(&weights[k])).collect())
    }

    pub fn nvars(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, k: usize) -> &SparsePoly {
        &self.images[k]
    }

    pub fn images(&self) -> &[SparsePoly] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(SparsePoly::is_zero)
    }

    /// Variables with a nonzero image.
    pub fn support(&self) -> Vec<usize> {
        (0..self.images.len()).filter(|&k| !self.images[k].is_zero()).collect()
    }

    /// `δ(p) = Σ_k ∂p/∂T_k · δ(T_k)`
    pub fn apply(&self, p: &SparsePoly) -> SparsePoly {
        assert_eq!(p.nvars(), self.nvars());
        let mut out = SparsePoly::zero(p.nvars());
        for (k, img) in self.images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let dp = p.partial_derivative(k);
            if !dp.is_zero() {
                out = &out + &(&dp * img);
            }
        }
        out
    }

    /// True iff `self = c·other` for some nonzero rational `c`.
    pub fn is_proportional_to(&self, other: &Derivation) -> bool {
        if self.nvars() != other.nvars() || self.is_zero() || other.is_zero() {
            return false;
        }
        let Some(k) = self.support().first().copied() else {
            return false;
        };
        let Some((m, c)) = self.images[k].leading_term() else {
            return false;
        };
        let oc = other.images[k].coefficient(m);
        if oc.is_zero() {
            return false;
        }
        let ratio = oc / c;
        self.images
            .iter()
            .zip(&other.images)
            .all(|(a, b)| &a.scale(&ratio) == b)
    }
}

/// The locally nilpotent derivation attached to a unit exponent.
///
/// With `u` the unit variable (exponent 1) in block `i`, the partner block is
/// `p = i + 1 mod 3` and its first variable `T_{p1}` is the partner variable:
///
/// * `δ(u) = ∂(T_p^{l_p}) / ∂T_{p1}`
/// * `δ(T_{p1}) = -T_i^{l_i} / u` (the other variables of block `i`)
/// * every other variable is sent to 0.
///
/// Then `δ(f) = 0` and `δ` is locally nilpotent on the polynomial ring.
pub fn lemma_derivation(t: &Trinomial, unit: Variable) -> Result<Derivation, Error> {
    if let Validity::HasLinearTerm(i) = t.validate() {
        return Err(Error::HasLinearTerm(i));
    }
    let exponent = t.exponent(unit).ok_or(Error::NoSuchVariable {
        block: unit.block,
        position: unit.position,
    })?;
    if exponent != 1 {
        return Err(Error::NotUnitExponent {
            block: unit.block,
            position: unit.position,
            exponent,
        });
    }
    let n = t.n();
    let partner = Variable::new((unit.block + 1) % 3, 0);
    let (ku, kp) = (t.global_index(unit), t.global_index(partner));

    let partner_power = SparsePoly::monomial(n, Monomial::from_u64(&t.block_monomial(partner.block)), Rational::one());
    let mut rest = t.block_monomial(unit.block);
    rest[ku] -= 1;
    let cofactor = SparsePoly::monomial(n, Monomial::from_u64(&rest), -Rational::one());

    let mut images = vec![SparsePoly::zero(n); n];
    images[ku] = partner_power.partial_derivative(kp);
    images[kp] = cofactor;
    Ok(Derivation::new(images))
}

/// Result of iterating a derivation on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    /// Per generator, the least `m ≥ 1` with `δ^m(T_k) = 0`.
    Nilpotent(Vec<usize>),
    /// Some generator survived `bound` applications; inconclusive.
    NotWithinBound { generator: usize, bound: usize },
}

impl Nilpotency {
    pub fn is_nilpotent(&self) -> bool {
        matches!(self, Nilpotency::Nilpotent(_))
    }
}

/// Checks local nilpotency on the generators `T_k`, which suffices for a
/// derivation of the polynomial ring.
pub fn is_locally_nilpotent(d: &Derivation, max_iterations: usize) -> Nilpotency {
    let n = d.nvars();
    let mut chains = Vec::with_capacity(n);
    for k in 0..n {
        let mut cur = SparsePoly::variable(n, k);
        let mut length = None;
        for m in 1..=max_iterations {
            cur = d.apply(&cur);
            if cur.is_zero() {
                length = Some(m);
                break;
            }
        }
        match length {
            Some(m) => chains.push(m),
            None => {
                return Nilpotency::NotWithinBound {
                    generator: k,
                    bound: max_iterations,
                }
            }
        }
    }
    Nilpotency::Nilpotent(chains)
}

/// Default iteration bound for nilpotency checks on an instance.
pub fn default_nilpotency_bound(t: &Trinomial) -> usize {
    2 + t.max_exponent() as usize
}

/// True iff `f` divides `δ(f)`, i.e. `δ` preserves the ideal `(f)`.
pub fn annihilates_modulo_f(d: &Derivation, f: &SparsePoly) -> bool {
    quotient_modulo_f(d, f).is_some()
}

/// The quotient `q` with `δ(f) = q·f`, if `f` divides `δ(f)`.
pub fn quotient_modulo_f(d: &Derivation, f: &SparsePoly) -> Option<SparsePoly> {
    let (q, r) = d.apply(f).div_rem(f);
    r.is_zero().then_some(q)
}

/// M-degree of a homogeneous polynomial; `None` for zero or inhomogeneous input.
pub fn poly_degree(p: &SparsePoly, g: &GradingData) -> Option<Vec<BigInt>> {
    let mut degs = p.terms().map(|(m, _)| degree_of_u32(m.exponents(), g));
    let first = degs.next()?;
    degs.all(|d| d == first).then_some(first)
}

/// The degree `e` with `deg δ(T_k) = deg T_k + e` for every nonzero image,
/// if all images are homogeneous and agree.
pub fn homogeneous_degree(d: &Derivation, g: &GradingData) -> Option<Vec<BigInt>> {
    let mut e: Option<Vec<BigInt>> = None;
    for k in d.support() {
        let dk = poly_degree(d.image(k), g)?;
        let ek: Vec<BigInt> = dk.iter().zip(&g.degrees[k]).map(|(a, b)| a - b).collect();
        match &e {
            None => e = Some(ek),
            Some(prev) if *prev != ek => return None,
            Some(_) => {}
        }
    }
    e
}
