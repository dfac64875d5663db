//! Sparse multivariate polynomials with exact rational coefficients.

mod derivation;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

pub use derivation::{
    annihilates_modulo_f, default_nilpotency_bound, homogeneous_degree, is_locally_nilpotent, lemma_derivation,
    poly_degree, quotient_modulo_f, Derivation, Nilpotency,
};

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographically with earlier variables dominating.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn new(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn from_u64(exps: &[u64]) -> Self {
        Self(
            exps.iter()
                .map(|&e| u32::try_from(e).expect("exponent fits in u32"))
                .collect(),
        )
    }

    pub fn variable(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn variable(nvars: usize, k: usize) -> Self {
        Self::monomial(nvars, Monomial::variable(nvars, k), Rational::one())
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(m, c);
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order (leading term first).
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.leading_term().map(|(m, _)| m.total_degree())
    }

    /// Adds `c·m`, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Self {
        let mut out = Self::zero(self.nvars);
        if c.is_zero() {
            return out;
        }
        for (mm, x) in &self.terms {
            out.terms.insert(mm.mul(m), x * c);
        }
        out
    }

    /// ∂/∂T_k
    pub fn partial_derivative(&self, k: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut d = m.clone();
            d.0[k] -= 1;
            out.add_term(d, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Division by a single divisor: returns `(q, r)` with `self = q·g + r`
    /// and no term of `r` divisible by the leading monomial of `g`.
    pub fn div_rem(&self, g: &SparsePoly) -> (SparsePoly, SparsePoly) {
        let (lm, lc) = g.leading_term().expect("division by the zero polynomial");
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut q = Self::zero(self.nvars);
        let mut r = Self::zero(self.nvars);
        let mut p = self.clone();
        while let Some((m, c)) = p.leading_term() {
            let (m, c) = (m.clone(), c.clone());
            match m.div(&lm) {
                Some(quot) => {
                    let factor = c / &lc;
                    p = &p - &g.mul_monomial(&quot, &factor);
                    q.add_term(quot, factor);
                }
                None => {
                    p.terms.remove(&m);
                    r.add_term(m, c);
                }
            }
        }
        (q, r)
    }

    /// Substitutes rational values for all variables.
    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical text form: `c * T01^a * T02 + ...`, leading term first.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.terms()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (k, &e) in m.0.iter().enumerate() {
                    match e {
                        0 => {}
                        1 => s.push_str(&format!(" * {}", names[k])),
                        _ => s.push_str(&format!(" * {}^{}", names[k], e)),
                    }
                }
                s
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Clears denominators and removes the content so the leading coefficient
    /// is a positive integer and the coefficients are coprime integers.
    pub fn primitive(&self) -> Self {
        use num_integer::Integer;
        let Some((_, lc)) = self.leading_term() else {
            return self.clone();
        };
        let den = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let nums: Vec<BigInt> = self.terms.values().map(|c| (c * &den).to_integer()).collect();
        let g = nums.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        let sign = if lc.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let factor = Rational::new(den * sign, g);
        self.scale(&factor)
    }
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|k| format!("x{k}")).collect();
        write!(f, "{}", self.render(&names))
    }
}

impl Add for &SparsePoly {
    type Output = SparsePoly;

    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;

    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;

    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;

    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = SparsePoly::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.mul(b), x * y);
            }
        }
        out
    }
}
