//! Exact feasibility of small linear systems by Fourier–Motzkin elimination.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::rational::rref;
use super::{Rational, RationalVector};

/// Linear constraints over `Q^vars`: equalities `a·x = b` and inequalities
/// `a·x ≥ b`.
#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    vars: usize,
    equalities: Vec<(Vec<Rational>, Rational)>,
    inequalities: Vec<(Vec<Rational>, Rational)>,
}

type Constraint = (Vec<Rational>, Rational);

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        Self {
            vars,
            ..Self::default()
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn equal(&mut self, a: Vec<Rational>, b: Rational) -> &mut Self {
        assert_eq!(a.len(), self.vars);
        self.equalities.push((a, b));
        self
    }

    pub fn at_least(&mut self, a: Vec<Rational>, b: Rational) -> &mut Self {
        assert_eq!(a.len(), self.vars);
        self.inequalities.push((a, b));
        self
    }

    /// Adds `x_i ≥ 0` for every variable.
    pub fn nonnegative(&mut self) -> &mut Self {
        for i in 0..self.vars {
            let mut a = vec![Rational::zero(); self.vars];
            a[i] = Rational::one();
            self.inequalities.push((a, Rational::zero()));
        }
        self
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }

    /// Returns some exact solution, or `None` when the system is infeasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        let n = self.vars;

        // Eliminate equalities first: pivot variables become affine in the
        // free ones.
        let mut aug: Vec<Vec<Rational>> = self
            .equalities
            .iter()
            .map(|(a, b)| {
                let mut row = a.clone();
                row.push(b.clone());
                row
            })
            .collect();
        let pivots = rref(&mut aug, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();

        // x_p = rhs_r - Σ_f aug[r][f]·x_f
        let mut ineqs: Vec<Constraint> = Vec::with_capacity(self.inequalities.len());
        for (a, b) in &self.inequalities {
            let mut coeffs: Vec<Rational> = free.iter().map(|&f| a[f].clone()).collect();
            let mut rhs = b.clone();
            for (r, &p) in pivots.iter().enumerate() {
                if a[p].is_zero() {
                    continue;
                }
                for (slot, &f) in free.iter().enumerate() {
                    coeffs[slot] -= &a[p] * &aug[r][f];
                }
                rhs -= &a[p] * &aug[r][n];
            }
            ineqs.push((coeffs, rhs));
        }

        let y = fourier_motzkin(ineqs, free.len())?;

        let mut x = vec![Rational::zero(); n];
        for (slot, &f) in free.iter().enumerate() {
            x[f] = y[slot].clone();
        }
        for (r, &p) in pivots.iter().enumerate() {
            let mut v = aug[r][n].clone();
            for (slot, &f) in free.iter().enumerate() {
                v -= &aug[r][f] * &y[slot];
            }
            x[p] = v;
        }
        debug_assert!(self.is_satisfied_by(&x));
        Some(x)
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let dot = |a: &[Rational]| a.iter().zip(x).fold(Rational::zero(), |s, (p, q)| s + p * q);
        self.equalities.iter().all(|(a, b)| &dot(a) == b) && self.inequalities.iter().all(|(a, b)| &dot(a) >= b)
    }
}

/// Scales a constraint so its first nonzero coefficient has absolute value 1,
/// making duplicates comparable.
fn normalize((c, d): Constraint) -> Constraint {
    match c.iter().find(|x| !x.is_zero()) {
        None => (c, d),
        Some(lead) => {
            let s = lead.abs().recip();
            (c.iter().map(|x| x * &s).collect(), d * s)
        }
    }
}

fn fourier_motzkin(initial: Vec<Constraint>, vars: usize) -> Option<Vec<Rational>> {
    let mut stages: Vec<Vec<Constraint>> = Vec::with_capacity(vars + 1);
    let mut current = initial;
    for j in 0..vars {
        let mut seen = BTreeSet::new();
        current.retain(|c| seen.insert(c.clone()));
        stages.push(current.clone());

        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for c in current {
            if c.0[j].is_positive() {
                pos.push(c);
            } else if c.0[j].is_negative() {
                neg.push(c);
            } else {
                keep.push(c);
            }
        }
        for (pc, pd) in &pos {
            for (nc, nd) in &neg {
                let (wp, wn) = (-&nc[j], pc[j].clone());
                let coeffs = pc.iter().zip(nc).map(|(a, b)| a * &wp + b * &wn).collect();
                let rhs = pd * &wp + nd * &wn;
                keep.push(normalize((coeffs, rhs)));
            }
        }
        current = keep;
    }
    // all variables gone: remaining constraints read 0 ≥ d
    if current.iter().any(|(_, d)| d.is_positive()) {
        return None;
    }

    let mut y = vec![Rational::zero(); vars];
    for j in (0..vars).rev() {
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        for (c, d) in &stages[j] {
            if c[j].is_zero() {
                continue;
            }
            let rest = (j + 1..vars).fold(Rational::zero(), |s, k| s + &c[k] * &y[k]);
            let bound = (d - rest) / &c[j];
            if c[j].is_positive() {
                if lo.as_ref().is_none_or(|l| &bound > l) {
                    lo = Some(bound);
                }
            } else if hi.as_ref().is_none_or(|h| &bound < h) {
                hi = Some(bound);
            }
        }
        y[j] = match (lo, hi) {
            (Some(l), _) => l,
            (None, Some(h)) if h.is_negative() => h,
            _ => Rational::zero(),
        };
    }
    Some(y)
}

fn cone_system(generators: &[RationalVector], m: &RationalVector) -> LinearSystem {
    let r = generators.len();
    let mut sys = LinearSystem::new(r);
    for (i, target) in m.0.iter().enumerate() {
        let row = generators.iter().map(|g| g.0[i].clone()).collect();
        sys.equal(row, target.clone());
    }
    sys.nonnegative();
    sys
}

/// True iff `m` is a nonnegative rational combination of `generators`.
pub fn cone_membership(generators: &[RationalVector], m: &RationalVector) -> bool {
    cone_witness(generators, m).is_some()
}

/// Nonnegative coefficients `λ` with `Σ λ_j·g_j = m`, if any exist.
pub fn cone_witness(generators: &[RationalVector], m: &RationalVector) -> Option<Vec<Rational>> {
    assert!(generators.iter().all(|g| g.dim() == m.dim()), "dimension mismatch");
    if m.0.iter().all(Zero::is_zero) {
        return Some(vec![Rational::zero(); generators.len()]);
    }
    cone_system(generators, m).solve()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> RationalVector {
        RationalVector::from_ints(xs)
    }

    fn ex4_degrees() -> Vec<RationalVector> {
        vec![v(&[6, -1]), v(&[0, 1]), v(&[3, 0]), v(&[2, 0])]
    }

    fn combine(gens: &[RationalVector], lambda: &[Rational]) -> RationalVector {
        let mut acc = RationalVector::zeros(gens[0].dim());
        for (g, l) in gens.iter().zip(lambda) {
            acc = acc.add(&g.scaled(l));
        }
        acc
    }

    #[test]
    fn origin_is_always_inside() {
        assert!(cone_membership(&ex4_degrees(), &v(&[0, 0])));
        assert!(cone_membership(&[], &v(&[0, 0])));
    }

    #[test]
    fn ex4_membership_with_witness() {
        let gens = ex4_degrees();
        let m = v(&[6, 0]);
        let w = cone_witness(&gens, &m).expect("(6,0) is in the weight cone");
        assert!(w.iter().all(|x| !x.is_negative()));
        assert_eq!(combine(&gens, &w), m);
        // the hand witness also works
        let hand: Vec<Rational> = [1, 1, 0, 0].iter().map(|&x| Rational::from_integer(x.into())).collect();
        assert_eq!(combine(&gens, &hand), m);
    }

    #[test]
    fn ex4_negative_axis_is_outside() {
        assert!(!cone_membership(&ex4_degrees(), &v(&[-1, 0])));
        assert!(!cone_membership(&ex4_degrees(), &v(&[0, -1])));
        // (1, -1) needs the (6,-1) generator scaled by 1/6 plus more negative y
        assert!(!cone_membership(&ex4_degrees(), &v(&[1, -1])));
        assert!(cone_membership(&ex4_degrees(), &v(&[6, -1])));
    }

    #[test]
    fn infeasible_equalities_are_detected() {
        let mut sys = LinearSystem::new(2);
        let q = |x: i64| Rational::from_integer(x.into());
        sys.equal(vec![q(1), q(1)], q(1)).equal(vec![q(2), q(2)], q(3));
        assert!(!sys.is_feasible());
    }

    #[test]
    fn bounded_box_solution() {
        let q = |x: i64| Rational::from_integer(x.into());
        let mut sys = LinearSystem::new(2);
        sys.nonnegative()
            .at_least(vec![q(-1), q(0)], q(-3))
            .at_least(vec![q(0), q(-1)], q(-2))
            .at_least(vec![q(1), q(1)], q(4));
        let x = sys.solve().unwrap();
        assert!(sys.is_satisfied_by(&x));
        sys.at_least(vec![q(1), q(1)], q(6));
        assert!(!sys.is_feasible());
    }
}
