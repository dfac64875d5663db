//! Brute-force verifiers that do not go through the polyhedral divisor:
//! graded-piece dimensions by monomial enumeration, and a bounded search for
//! homogeneous derivations preserving `(f)`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exec::Strategy;
use crate::grading::{degree_of, GradingData};
use crate::linalg::{rational_nullspace, IntMatrix, LinearSystem, Rational};
use crate::poly::{is_locally_nilpotent, Derivation, Monomial, Nilpotency, SparsePoly};
use crate::polyhedral::{graded_dim_ah, PolyhedralDivisor};
use crate::trinomial::Trinomial;

/// Test grid `{Σ c_k·deg(T_k) : 0 ≤ c_k ≤ c_max}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub c_max: u64,
}

impl GridSpec {
    pub fn new(c_max: u64) -> Self {
        Self { c_max }
    }

    /// Distinct grid points in lexicographic order.
    pub fn points(&self, g: &GradingData) -> Vec<Vec<BigInt>> {
        let n = g.nvars();
        let mut out = BTreeSet::new();
        let mut c = vec![0u64; n];
        loop {
            out.insert(degree_of(&c, g));
            let mut k = 0;
            while k < n && c[k] == self.c_max {
                c[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            c[k] += 1;
        }
        out.into_iter().collect()
    }
}

/// A strictly positive vector of `N`: weight `lcm(s₀,s₁,s₂)/sᵢ` on block `i`,
/// where `sᵢ` is the exponent sum of block `i`.
fn positive_kernel_weights(g: &GradingData) -> Vec<BigInt> {
    let n = g.nvars();
    let mut blocks = vec![0usize; n];
    let mut sums = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
    for (k, slot) in blocks.iter_mut().enumerate() {
        let (top, bottom) = (&g.l[(0, k)], &g.l[(1, k)]);
        let (block, e) = if top.is_negative() {
            (0, -top)
        } else if top.is_positive() {
            (1, top.clone())
        } else {
            (2, bottom.clone())
        };
        *slot = block;
        sums[block] += e;
    }
    let lcm = sums.iter().fold(BigInt::one(), |a, s| a.lcm(s));
    let w: Vec<BigInt> = blocks.iter().map(|&b| &lcm / &sums[b]).collect();
    debug_assert!(g.l.mul_vec(&w).iter().all(Zero::is_zero));
    w
}

/// Enumeration plan: two free variables are enumerated in a box cut out by a
/// positive weight; the remaining `n-2` are solved exactly.
struct FiberPlan {
    free: Vec<usize>,
    /// adj(D_P) and det(D_P), where the columns of D_P are the pivot degrees.
    adjugate: IntMatrix,
    det: BigInt,
    weights: Vec<BigInt>,
    /// `⟨m, dual⟩ = Σ a_k w_k` for every monomial `a` of degree `m`.
    dual: Vec<BigInt>,
}

impl FiberPlan {
    fn new(g: &GradingData) -> Self {
        let n = g.nvars();
        let r = g.rank();
        // greedily choose r independent degree vectors as pivots
        let mut pivots = Vec::with_capacity(r);
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        for k in 0..n {
            let mut trial = rows.clone();
            trial.push(g.degrees[k].iter().cloned().map(Rational::from_integer).collect());
            if crate::linalg::rational_rank(&trial, r) == trial.len() {
                rows = trial;
                pivots.push(k);
            }
            if pivots.len() == r {
                break;
            }
        }
        assert_eq!(pivots.len(), r, "degrees must span M_Q");
        let free: Vec<usize> = (0..n).filter(|k| !pivots.contains(k)).collect();
        let dp = IntMatrix::from_columns(r, &pivots.iter().map(|&k| g.degrees[k].clone()).collect::<Vec<_>>());
        let (adjugate, det) = adjugate(&dp);
        let weights = positive_kernel_weights(g);
        let dual = g.section.mul_vec(&weights);
        Self {
            free,
            adjugate,
            det,
            weights,
            dual,
        }
    }

    /// Solves for the pivot exponents given the free ones; counts 1 if the
    /// solution is a nonnegative integer vector.
    fn leaf(&self, residual: &[BigInt]) -> u64 {
        let sol = self.adjugate.mul_vec(residual);
        for x in &sol {
            if !x.is_multiple_of(&self.det) {
                return 0;
            }
            let v = x / &self.det;
            if v.is_negative() {
                return 0;
            }
        }
        1
    }
}

/// `(adj A, det A)` for a square integer matrix, with `A·adj A = det A·I`.
fn adjugate(a: &IntMatrix) -> (IntMatrix, BigInt) {
    let n = a.rows();
    let det = a.determinant();
    let mut adj = IntMatrix::zeros(n, n);
    if n == 1 {
        adj[(0, 0)] = BigInt::one();
        return (adj, det);
    }
    for i in 0..n {
        for j in 0..n {
            let minor_entries: Vec<BigInt> = (0..n)
                .filter(|&r| r != j)
                .flat_map(|r| (0..n).filter(move |&c| c != i).map(move |c| (r, c)))
                .map(|(r, c)| a[(r, c)].clone())
                .collect();
            let minor = IntMatrix::from_entries(n - 1, n - 1, minor_entries).determinant();
            adj[(i, j)] = if (i + j) % 2 == 0 { minor } else { -minor };
        }
    }
    debug_assert!(
        a.mul(&adj) == {
            let mut d = IntMatrix::identity(n);
            for k in 0..n {
                d[(k, k)] = det.clone();
            }
            d
        }
    );
    (adj, det)
}

/// Number of monomials `T^a` (`a ∈ Z≥0ⁿ`) of degree exactly `m`.
pub fn count_monomials(g: &GradingData, m: &[BigInt], strategy: Strategy) -> u64 {
    assert_eq!(m.len(), g.rank(), "degree has the wrong rank");
    let plan = FiberPlan::new(g);
    count_with_plan(g, &plan, m, strategy)
}

fn count_with_plan(g: &GradingData, plan: &FiberPlan, m: &[BigInt], strategy: Strategy) -> u64 {
    let total: BigInt = m.iter().zip(&plan.dual).map(|(a, b)| a * b).sum();
    if total.is_negative() {
        return 0;
    }
    let (f0, f1) = (plan.free[0], plan.free[1]);
    let (w0, w1) = (&plan.weights[f0], &plan.weights[f1]);
    let max0 = (&total / w0).to_u64().expect("enumeration bound fits in u64");
    strategy.sum_range(max0 + 1, |a0| {
        let a0b = BigInt::from(a0);
        let rest = &total - &a0b * w0;
        let max1 = (&rest / w1).to_u64().expect("enumeration bound fits in u64");
        let mut residual: Vec<BigInt> = m.iter().zip(&g.degrees[f0]).map(|(x, d)| x - &a0b * d).collect();
        let mut count = 0;
        for _ in 0..=max1 {
            count += plan.leaf(&residual);
            for (r, d) in residual.iter_mut().zip(&g.degrees[f1]) {
                *r -= d;
            }
        }
        count
    })
}

/// `dim A_m = #monomials(m) − #monomials(m − μ)`: multiplication by `f` embeds
/// the degree `m − μ` part of the polynomial ring into the degree `m` part.
pub fn graded_dim_oracle(g: &GradingData, m: &[BigInt], strategy: Strategy) -> u64 {
    let plan = FiberPlan::new(g);
    let shifted: Vec<BigInt> = m.iter().zip(&g.mu).map(|(a, b)| a - b).collect();
    let all = count_with_plan(g, &plan, m, strategy);
    let multiples = count_with_plan(g, &plan, &shifted, strategy);
    assert!(all >= multiples, "multiplication by f must be injective");
    all - multiples
}

/// Every fiber of the degree map on `Z≥0ⁿ` is finite iff no nonzero `a ≥ 0`
/// has degree 0.
pub fn fibers_are_finite(g: &GradingData) -> bool {
    let n = g.nvars();
    let mut sys = LinearSystem::new(n);
    sys.nonnegative();
    sys.equal(vec![Rational::one(); n], Rational::one());
    for i in 0..g.rank() {
        let row = (0..n)
            .map(|k| Rational::from_integer(g.degrees[k][i].clone()))
            .collect();
        sys.equal(row, Rational::zero());
    }
    !sys.is_feasible()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridComparison {
    pub m: Vec<BigInt>,
    pub ah: BigInt,
    pub oracle: u64,
}

impl GridComparison {
    pub fn matches(&self) -> bool {
        self.ah == BigInt::from(self.oracle)
    }
}

/// Compares the divisor formula and the monomial count at every grid point.
pub fn hilbert_cross_check(
    g: &GradingData,
    d: &PolyhedralDivisor,
    grid: GridSpec,
    strategy: Strategy,
) -> Result<Vec<GridComparison>, Error> {
    let plan = FiberPlan::new(g);
    let points = grid.points(g);
    let rows = strategy.map(&points, |m| {
        let ah = graded_dim_ah(d, m)?;
        let shifted: Vec<BigInt> = m.iter().zip(&g.mu).map(|(a, b)| a - b).collect();
        let oracle = count_with_plan(g, &plan, m, Strategy::Sequential)
            - count_with_plan(g, &plan, &shifted, Strategy::Sequential);
        Ok(GridComparison {
            m: m.clone(),
            ah,
            oracle,
        })
    });
    rows.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndCandidate {
    pub derivation: Derivation,
    /// `δ(f) = q·f`
    pub quotient: SparsePoly,
    pub nilpotency: Nilpotency,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceReport {
    /// Homogeneous degree `e` of the slice.
    pub degree: Vec<BigInt>,
    pub unknowns: usize,
    /// Dimension of the solution space; one candidate per basis vector.
    pub candidates: Vec<LndCandidate>,
}

/// Output of [`bounded_lnd_search`]. A consistency check, not a proof: only
/// basis vectors of each slice are tested for nilpotency, and a nilpotent
/// combination of non-nilpotent basis vectors would go unnoticed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LndSearchReport {
    pub degree_bound: u32,
    pub nilpotency_bound: usize,
    pub slices: Vec<SliceReport>,
}

impl LndSearchReport {
    pub fn candidates(&self) -> impl Iterator<Item = &LndCandidate> {
        self.slices.iter().flat_map(|s| s.candidates.iter())
    }

    pub fn nilpotent_candidates(&self) -> impl Iterator<Item = &LndCandidate> {
        self.candidates().filter(|c| c.nilpotency.is_nilpotent())
    }
}

/// All exponent vectors in `n` variables of total degree at most `bound`.
fn monomials_up_to(n: usize, bound: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == cur.len() {
            out.push(Monomial::new(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, bound, &mut cur, &mut out);
    out
}

/// Searches homogeneous derivations whose images have total degree at most
/// `degree_bound` and which preserve `(f)`, slice by slice, and flags each
/// basis element of each slice with the nilpotency checker.
pub fn bounded_lnd_search(
    t: &Trinomial,
    g: &GradingData,
    degree_bound: u32,
    nilpotency_bound: usize,
    strategy: Strategy,
) -> Result<LndSearchReport, Error> {
    t.require_factorial()?;
    let n = t.n();
    let f = t.build_f();
    let partials: Vec<SparsePoly> = (0..n).map(|k| f.partial_derivative(k)).collect();

    let monomials = monomials_up_to(n, degree_bound);
    let mut by_degree: BTreeMap<Vec<BigInt>, Vec<Monomial>> = BTreeMap::new();
    for mono in &monomials {
        let a: Vec<u64> = mono.exponents().iter().map(|&e| u64::from(e)).collect();
        by_degree.entry(degree_of(&a, g)).or_default().push(mono.clone());
    }
    let mut slice_degrees = BTreeSet::new();
    for d in by_degree.keys() {
        for dk in &g.degrees {
            slice_degrees.insert(d.iter().zip(dk).map(|(a, b)| a - b).collect::<Vec<BigInt>>());
        }
    }
    let slice_degrees: Vec<Vec<BigInt>> = slice_degrees.into_iter().collect();

    let slices = strategy.map(&slice_degrees, |e| {
        search_slice(e, g, &f, &partials, &by_degree, degree_bound, nilpotency_bound)
    });
    Ok(LndSearchReport {
        degree_bound,
        nilpotency_bound,
        slices: slices.into_iter().flatten().collect(),
    })
}

enum Unknown {
    Image(usize, Monomial),
    Quotient(Monomial),
}

fn search_slice(
    e: &[BigInt],
    g: &GradingData,
    f: &SparsePoly,
    partials: &[SparsePoly],
    by_degree: &BTreeMap<Vec<BigInt>, Vec<Monomial>>,
    degree_bound: u32,
    nilpotency_bound: usize,
) -> Option<SliceReport> {
    let n = g.nvars();
    let mut unknowns = Vec::new();
    for k in 0..n {
        let target: Vec<BigInt> = g.degrees[k].iter().zip(e).map(|(a, b)| a + b).collect();
        for mono in by_degree.get(&target).into_iter().flatten() {
            unknowns.push(Unknown::Image(k, mono.clone()));
        }
    }
    if unknowns.is_empty() {
        return None;
    }
    if degree_bound >= 1 {
        for mono in by_degree.get(e).into_iter().flatten() {
            if mono.total_degree() < u64::from(degree_bound) {
                unknowns.push(Unknown::Quotient(mono.clone()));
            }
        }
    }

    // column j of the system: contribution of unknown j to δ(f) − q·f
    let columns: Vec<SparsePoly> = unknowns
        .iter()
        .map(|u| match u {
            Unknown::Image(k, mono) => partials[*k].mul_monomial(mono, &Rational::one()),
            Unknown::Quotient(mono) => f.mul_monomial(mono, &-Rational::one()),
        })
        .collect();
    let mut row_index: BTreeMap<Monomial, usize> = BTreeMap::new();
    for c in &columns {
        for (mono, _) in c.terms() {
            let next = row_index.len();
            row_index.entry(mono.clone()).or_insert(next);
        }
    }
    let mut rows = vec![vec![Rational::zero(); unknowns.len()]; row_index.len()];
    for (j, c) in columns.iter().enumerate() {
        for (mono, coeff) in c.terms() {
            rows[row_index[mono]][j] = coeff.clone();
        }
    }

    let basis = rational_nullspace(&rows, unknowns.len());
    let candidates = basis
        .into_iter()
        .filter_map(|v| {
            let v = primitive_vector(v);
            let mut images = vec![SparsePoly::zero(n); n];
            let mut quotient = SparsePoly::zero(n);
            for (u, c) in unknowns.iter().zip(&v) {
                match u {
                    Unknown::Image(k, mono) => images[*k].add_term(mono.clone(), c.clone()),
                    Unknown::Quotient(mono) => quotient.add_term(mono.clone(), c.clone()),
                }
            }
            let mut derivation = Derivation::new(images);
            if derivation.is_zero() {
                return None;
            }
            derivation.degree = Some(e.to_vec());
            let nilpotency = is_locally_nilpotent(&derivation, nilpotency_bound);
            Some(LndCandidate {
                derivation,
                quotient,
                nilpotency,
            })
        })
        .collect();
    Some(SliceReport {
        degree: e.to_vec(),
        unknowns: unknowns.len(),
        candidates,
    })
}

/// Scales a rational vector to coprime integers with a positive first
/// nonzero entry.
fn primitive_vector(v: Vec<Rational>) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let nums: Vec<BigInt> = v.iter().map(|x| (x * &den).to_integer()).collect();
    let g = nums.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = nums.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| {
        if x.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    });
    nums.into_iter()
        .map(|x| Rational::from_integer(x * &sign / &g))
        .collect()
}
