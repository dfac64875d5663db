//! Proper polyhedral divisor on `P¹` describing a factorial trinomial
//! hypersurface as a complexity-one T-variety.
//!
//! The coefficients live in `N_Q = Q^{n-2}` (coordinates of the canonical
//! kernel basis) and share the tail cone `σ = Q≥0ⁿ ∩ N_Q = {y : B·y ≥ 0}`.
//! With the section `S` and `v₀ = (-1,-1)`, `v₁ = (1,0)`, `v₂ = (0,1)`:
//!
//! ```text
//! D = Δ₁·{0} + Δ₂·{1} + Δ₀·{∞},   Δᵢ = S(Q≥0ⁿ ∩ L⁻¹(vᵢ))
//! ```
//!
//! and the vertices of `Δᵢ` are exactly `S(e_k) / l_k` for the variables `k`
//! of block `i`. Degree `m ∈ σ∨ ∩ M` then has graded piece of dimension
//! `h⁰(P¹, ⌊D(m)⌋) = max(0, 1 + Σ ⌊h_Z(m)⌋)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::grading::GradingData;
use crate::linalg::{cone_membership, rational_rank, LinearSystem, Rational, RationalVector};
use crate::trinomial::{Trinomial, Variable};

/// Rays of the fan of `P²` hit by the blocks: `L(e_k) = l_k · v_{block(k)}`.
pub const BASE_RAYS: [[i64; 2]; 3] = [[-1, -1], [1, 0], [0, 1]];

/// The pointed cone `σ = {y : ⟨deg(T_k), y⟩ ≥ 0 for all k}`. Its dual `σ∨` is
/// the weight cone spanned by the degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaCone {
    normals: Vec<Vec<BigInt>>,
    dim: usize,
}

impl SigmaCone {
    pub fn new(normals: Vec<Vec<BigInt>>, dim: usize) -> Result<Self, Error> {
        if let Some(bad) = normals.iter().find(|r| r.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: bad.len(),
            });
        }
        let cone = Self { normals, dim };
        if !cone.is_pointed() {
            return Err(Error::NotPointed);
        }
        Ok(cone)
    }

    pub fn normals(&self) -> &[Vec<BigInt>] {
        &self.normals
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `{y : B·y ≥ 0, -B·y ≥ 0} = {0}` iff the normals span the space.
    pub fn is_pointed(&self) -> bool {
        let rows: Vec<Vec<Rational>> = self
            .normals
            .iter()
            .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
            .collect();
        rational_rank(&rows, self.dim) == self.dim
    }

    pub fn contains(&self, y: &RationalVector) -> bool {
        self.normals.iter().all(|n| !y.dot_int(n).is_negative())
    }

    /// Membership of a degree in `σ∨`, tested as membership in the cone
    /// spanned by the normals.
    pub fn dual_contains(&self, m: &[BigInt]) -> bool {
        let gens: Vec<RationalVector> = self.normals.iter().map(|r| RationalVector::from_ints(r)).collect();
        cone_membership(&gens, &RationalVector::from_ints(m))
    }

    fn require_dual(&self, m: &[BigInt]) -> Result<(), Error> {
        if m.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: m.len(),
            });
        }
        if self.dual_contains(m) {
            Ok(())
        } else {
            Err(Error::OutsideDualCone(format_int_vec(m)))
        }
    }
}

pub fn sigma_cone(g: &GradingData) -> Result<SigmaCone, Error> {
    SigmaCone::new(g.degrees.clone(), g.rank())
}

/// Marked points of the base curve `P¹`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkedPoint {
    Zero,
    One,
    Infinity,
}

impl MarkedPoint {
    pub const ALL: [MarkedPoint; 3] = [MarkedPoint::Zero, MarkedPoint::One, MarkedPoint::Infinity];

    /// The block whose polyhedron sits at this point.
    pub fn block(self) -> usize {
        match self {
            MarkedPoint::Zero => 1,
            MarkedPoint::One => 2,
            MarkedPoint::Infinity => 0,
        }
    }

    pub fn for_block(block: usize) -> Self {
        match block {
            0 => MarkedPoint::Infinity,
            1 => MarkedPoint::Zero,
            2 => MarkedPoint::One,
            _ => panic!("block index must be 0, 1 or 2"),
        }
    }
}

impl fmt::Display for MarkedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MarkedPoint::Zero => "0",
            MarkedPoint::One => "1",
            MarkedPoint::Infinity => "inf",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: RationalVector,
    /// Variable `T_{ij}` the vertex comes from.
    pub variable: Variable,
    pub exponent: u64,
}

impl Vertex {
    pub fn is_integral(&self) -> bool {
        self.point.is_integral()
    }
}

/// `σ`-polyhedron given by its vertices; the tail is shared via the divisor.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SigmaPolyhedron {
    pub vertices: Vec<Vertex>,
}

impl SigmaPolyhedron {
    /// `h_Δ(m) = min_v ⟨m, v⟩` for `m ∈ σ∨`. Does not check membership; see
    /// [`support_value`].
    pub fn support_unchecked(&self, m: &[BigInt]) -> Rational {
        self.vertices
            .iter()
            .map(|v| v.point.dot_int(m))
            .min()
            .expect("a sigma-polyhedron has at least one vertex")
    }

    /// No vertex lies in the convex hull of the others plus the tail.
    pub fn vertices_irredundant(&self, tail: &SigmaCone) -> bool {
        (0..self.vertices.len()).all(|i| {
            let others: Vec<&RationalVector> = self
                .vertices
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, v)| &v.point)
                .collect();
            // λ ≥ 0, Σλ = 1, ⟨n, v - Σ λ_j w_j⟩ ≥ 0 for all normals n
            let mut sys = LinearSystem::new(others.len());
            sys.nonnegative();
            sys.equal(vec![Rational::one(); others.len()], Rational::one());
            for n in tail.normals() {
                let coeffs = others.iter().map(|w| -w.dot_int(n)).collect();
                sys.at_least(coeffs, -self.vertices[i].point.dot_int(n));
            }
            !sys.is_feasible()
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralDivisor {
    pub tail: SigmaCone,
    /// Coefficients at `0`, `1`, `∞`, in that order.
    pub coefficients: [SigmaPolyhedron; 3],
}

/// `D(m)` as the coefficients at `0`, `1`, `∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorValue(pub [Rational; 3]);

impl DivisorValue {
    pub fn total_degree(&self) -> Rational {
        self.0.iter().sum()
    }

    /// `Σ ⌊h_Z(m)⌋`, floors toward −∞.
    pub fn floor_degree(&self) -> BigInt {
        self.0.iter().map(|h| h.floor().to_integer()).sum()
    }

    pub fn at(&self, p: MarkedPoint) -> &Rational {
        &self.0[p as usize]
    }
}

impl PolyhedralDivisor {
    pub fn at(&self, p: MarkedPoint) -> &SigmaPolyhedron {
        &self.coefficients[p as usize]
    }

    pub fn dim(&self) -> usize {
        self.tail.dim()
    }

    /// Copy with every vertex at `p` translated by `offset`.
    pub fn shifted(&self, p: MarkedPoint, offset: &RationalVector) -> Self {
        let mut out = self.clone();
        for v in &mut out.coefficients[p as usize].vertices {
            v.point = v.point.add(offset);
        }
        out
    }

    pub fn all_vertices(&self) -> impl Iterator<Item = (MarkedPoint, &Vertex)> {
        MarkedPoint::ALL
            .into_iter()
            .flat_map(move |p| self.at(p).vertices.iter().map(move |v| (p, v)))
    }

    fn evaluate_unchecked(&self, m: &[BigInt]) -> DivisorValue {
        DivisorValue(MarkedPoint::ALL.map(|p| self.at(p).support_unchecked(m)))
    }
}

pub fn build_divisor(t: &Trinomial, g: &GradingData) -> Result<PolyhedralDivisor, Error> {
    t.require_factorial()?;
    let tail = sigma_cone(g)?;
    let mut coefficients: [SigmaPolyhedron; 3] = Default::default();
    for (k, var) in t.variables().into_iter().enumerate() {
        let exponent = t.exponent(var).expect("variable belongs to the instance");
        let l_col = g.l.column(k);
        let ray = BASE_RAYS[var.block];
        debug_assert!(l_col
            .iter()
            .zip(ray)
            .all(|(a, r)| *a == BigInt::from(r) * BigInt::from(exponent)));
        let denom = BigInt::from(exponent);
        let point = RationalVector(
            g.section
                .column(k)
                .into_iter()
                .map(|s| Rational::new(s, denom.clone()))
                .collect(),
        );
        let slot = &mut coefficients[MarkedPoint::for_block(var.block) as usize].vertices;
        if !slot.iter().any(|v| v.point == point) {
            slot.push(Vertex {
                point,
                variable: var,
                exponent,
            });
        }
    }
    Ok(PolyhedralDivisor { tail, coefficients })
}

pub fn support_value(d: &PolyhedralDivisor, p: MarkedPoint, m: &[BigInt]) -> Result<Rational, Error> {
    d.tail.require_dual(m)?;
    Ok(d.at(p).support_unchecked(m))
}

pub fn evaluate_divisor(d: &PolyhedralDivisor, m: &[BigInt]) -> Result<DivisorValue, Error> {
    d.tail.require_dual(m)?;
    Ok(d.evaluate_unchecked(m))
}

/// `dim A_m = h⁰(P¹, O(⌊D(m)⌋)) = max(0, 1 + Σ ⌊h_Z(m)⌋)`.
pub fn graded_dim_ah(d: &PolyhedralDivisor, m: &[BigInt]) -> Result<BigInt, Error> {
    let floor = evaluate_divisor(d, m)?.floor_degree();
    Ok((floor + BigInt::one()).max(BigInt::zero()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessCheck {
    pub m: Vec<BigInt>,
    pub total_degree: Rational,
    pub strict: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropernessReport {
    /// `deg D(deg T_k) ≥ 0` per generator, then `deg D(Σ deg T_k) > 0`.
    pub checks: Vec<PropernessCheck>,
}

impl PropernessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn violations(&self) -> impl Iterator<Item = &PropernessCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Properness on a curve: `D(m)` semiample (degree ≥ 0) on `σ∨` and big
/// (degree > 0) on its relative interior.
///
/// The total degree is superadditive and positively homogeneous, so it is
/// enough to check `≥ 0` on the generators `deg(T_k)` and `> 0` at their sum,
/// which lies in the relative interior.
pub fn check_properness(d: &PolyhedralDivisor) -> PropernessReport {
    let mut checks = Vec::new();
    let mut interior = vec![BigInt::zero(); d.dim()];
    for n in d.tail.normals() {
        let total = d.evaluate_unchecked(n).total_degree();
        checks.push(PropernessCheck {
            m: n.clone(),
            passed: !total.is_negative(),
            total_degree: total,
            strict: false,
        });
        for (acc, x) in interior.iter_mut().zip(n) {
            *acc += x;
        }
    }
    let total = d.evaluate_unchecked(&interior).total_degree();
    checks.push(PropernessCheck {
        m: interior,
        passed: total.is_positive(),
        total_degree: total,
        strict: true,
    });
    PropernessReport { checks }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexIntegrality {
    pub point: MarkedPoint,
    pub variable: Variable,
    pub vertex: RationalVector,
    pub integral: bool,
    pub exponent_is_one: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralityReport {
    pub vertices: Vec<VertexIntegrality>,
    /// Per marked point (0, 1, ∞): does the coefficient have an integral vertex?
    pub any_integral: [bool; 3],
}

impl IntegralityReport {
    pub fn integral_count(&self) -> usize {
        self.vertices.iter().filter(|v| v.integral).count()
    }

    /// Integral vertex ⟺ generating exponent 1, for every vertex.
    pub fn matches_unit_exponents(&self) -> bool {
        self.vertices.iter().all(|v| v.integral == v.exponent_is_one)
    }
}

pub fn vertex_integrality(d: &PolyhedralDivisor) -> IntegralityReport {
    let vertices: Vec<VertexIntegrality> = d
        .all_vertices()
        .map(|(point, v)| VertexIntegrality {
            point,
            variable: v.variable,
            vertex: v.point.clone(),
            integral: v.is_integral(),
            exponent_is_one: v.exponent == 1,
        })
        .collect();
    let any_integral = MarkedPoint::ALL.map(|p| vertices.iter().any(|v| v.point == p && v.integral));
    IntegralityReport { vertices, any_integral }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// No coefficient has an integral vertex, so no admissible vertex choice
    /// exists and there is no homogeneous LND of horizontal type.
    Obstructed,
    /// Marked points whose coefficient has an integral vertex.
    NotObstructed(Vec<MarkedPoint>),
}

/// A horizontal homogeneous LND needs one vertex per marked point with all
/// but two of them integral. Points other than `0, 1, ∞` carry `σ` itself
/// (integral vertex `0`), so the choice fails exactly when none of the three
/// coefficients has an integral vertex.
pub fn horizontal_obstruction(d: &PolyhedralDivisor) -> Obstruction {
    let report = vertex_integrality(d);
    let points: Vec<MarkedPoint> = MarkedPoint::ALL
        .into_iter()
        .zip(report.any_integral)
        .filter_map(|(p, ok)| ok.then_some(p))
        .collect();
    if points.is_empty() {
        Obstruction::Obstructed
    } else {
        Obstruction::NotObstructed(points)
    }
}

fn format_int_vec(m: &[BigInt]) -> String {
    let parts: Vec<String> = m.iter().map(BigInt::to_string).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;
    use crate::grading::{grading_data, grading_data_with_basis};
    use crate::linalg::{int_vec, IntMatrix};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rv(xs: &[(i64, i64)]) -> RationalVector {
        RationalVector(xs.iter().map(|&(n, d)| q(n, d)).collect())
    }

    fn ex4_pinned() -> (Trinomial, GradingData) {
        let t = ex4();
        let b = IntMatrix::from_columns(4, &[int_vec(&[6, 0, 3, 2]), int_vec(&[-1, 1, 0, 0])]);
        let g = grading_data_with_basis(&t, &b)
            .unwrap()
            .with_section(IntMatrix::from_rows(&[[0, 0, 1, -1], [0, 1, 0, 0]]))
            .unwrap();
        (t, g)
    }

    fn ex1_pinned() -> (Trinomial, GradingData) {
        let t = ex1();
        let b = IntMatrix::from_columns(4, &[int_vec(&[3, 0, 3, 2]), int_vec(&[0, 2, 3, 2])]);
        (t.clone(), grading_data_with_basis(&t, &b).unwrap())
    }

    #[test]
    fn sigma_cone_examples() {
        let (_, g) = ex4_pinned();
        let c = sigma_cone(&g).unwrap();
        assert_eq!(
            c.normals(),
            &[int_vec(&[6, -1]), int_vec(&[0, 1]), int_vec(&[3, 0]), int_vec(&[2, 0])]
        );
        // {y₁ ≥ 0, 0 ≤ y₂ ≤ 6y₁}
        assert!(c.contains(&rv(&[(1, 1), (6, 1)])));
        assert!(!c.contains(&rv(&[(1, 1), (7, 1)])));
        assert!(!c.contains(&rv(&[(1, 1), (-1, 1)])));
        assert!(c.contains(&RationalVector::zeros(2)));

        let (_, g1) = ex1_pinned();
        let c1 = sigma_cone(&g1).unwrap();
        assert!(c1.contains(&rv(&[(1, 1), (0, 1)])) && c1.contains(&rv(&[(0, 1), (1, 1)])));
        assert!(!c1.contains(&rv(&[(-1, 1), (1, 1)])));
    }

    #[test]
    fn not_pointed_is_rejected() {
        assert_eq!(SigmaCone::new(vec![int_vec(&[1, 0])], 2), Err(Error::NotPointed));
    }

    #[test]
    fn ex4_divisor_vertices() {
        let (t, g) = ex4_pinned();
        let d = build_divisor(&t, &g).unwrap();
        let pts = |p: MarkedPoint| d.at(p).vertices.iter().map(|v| v.point.clone()).collect::<Vec<_>>();
        assert_eq!(
            pts(MarkedPoint::Infinity),
            vec![rv(&[(0, 1), (0, 1)]), rv(&[(0, 1), (1, 1)])]
        );
        assert_eq!(pts(MarkedPoint::Zero), vec![rv(&[(1, 2), (0, 1)])]);
        assert_eq!(pts(MarkedPoint::One), vec![rv(&[(-1, 3), (0, 1)])]);
    }

    #[test]
    fn ex1_divisor_has_no_integral_vertex() {
        let (t, g) = ex1_pinned();
        let d = build_divisor(&t, &g).unwrap();
        let report = vertex_integrality(&d);
        assert_eq!(report.vertices.len(), 4);
        assert_eq!(report.integral_count(), 0);
        assert!(report.matches_unit_exponents());
        assert_eq!(horizontal_obstruction(&d), Obstruction::Obstructed);
    }

    #[test]
    fn vertices_respect_base_rays() {
        for t in [ex1(), ex2(), ex3(), ex4()] {
            let g = grading_data(&t).unwrap();
            let d = build_divisor(&t, &g).unwrap();
            for (p, v) in d.all_vertices() {
                let k = t.global_index(v.variable);
                let col = g.l.column(k);
                let ray = BASE_RAYS[p.block()];
                for (a, r) in col.iter().zip(ray) {
                    assert_eq!(*a, BigInt::from(r) * BigInt::from(v.exponent));
                }
                assert_eq!(t.exponent(v.variable).unwrap(), v.exponent);
            }
            for p in MarkedPoint::ALL {
                assert!(d.at(p).vertices_irredundant(&d.tail));
            }
        }
        let sum: Vec<i64> = (0..2).map(|c| BASE_RAYS.iter().map(|r| r[c]).sum()).collect();
        assert_eq!(sum, vec![0, 0]);
    }

    #[test]
    fn ex4_support_values() {
        let (t, g) = ex4_pinned();
        let d = build_divisor(&t, &g).unwrap();
        let mu = int_vec(&[6, 0]);
        assert_eq!(support_value(&d, MarkedPoint::Infinity, &mu).unwrap(), q(0, 1));
        assert_eq!(support_value(&d, MarkedPoint::Zero, &mu).unwrap(), q(3, 1));
        assert_eq!(support_value(&d, MarkedPoint::One, &mu).unwrap(), q(-2, 1));
        let m = int_vec(&[0, 1]);
        for p in MarkedPoint::ALL {
            assert_eq!(support_value(&d, p, &m).unwrap(), q(0, 1));
        }
        assert_eq!(
            support_value(&d, MarkedPoint::Zero, &int_vec(&[0, 0])).unwrap(),
            q(0, 1)
        );
        assert!(matches!(
            support_value(&d, MarkedPoint::Zero, &int_vec(&[-1, 0])),
            Err(Error::OutsideDualCone(_))
        ));
    }

    #[test]
    fn ex4_evaluation_and_dimension() {
        let (t, g) = ex4_pinned();
        let d = build_divisor(&t, &g).unwrap();
        let zero = evaluate_divisor(&d, &int_vec(&[0, 0])).unwrap();
        assert_eq!(zero.0, [q(0, 1), q(0, 1), q(0, 1)]);
        let v = evaluate_divisor(&d, &int_vec(&[6, 0])).unwrap();
        assert_eq!(v.0, [q(3, 1), q(-2, 1), q(0, 1)]);
        assert_eq!(graded_dim_ah(&d, &int_vec(&[0, 0])).unwrap(), BigInt::from(1));
        assert_eq!(graded_dim_ah(&d, &int_vec(&[6, 0])).unwrap(), BigInt::from(2));
        assert_eq!(graded_dim_ah(&d, &int_vec(&[0, 1])).unwrap(), BigInt::from(1));
    }

    #[test]
    fn negative_floors_go_down() {
        let v = DivisorValue([q(-2, 3), q(1, 2), q(0, 1)]);
        assert_eq!(v.floor_degree(), BigInt::from(-1));
    }

    #[test]
    fn properness() {
        let (t, g) = ex4_pinned();
        let d = build_divisor(&t, &g).unwrap();
        let report = check_properness(&d);
        assert!(report.passed());
        assert_eq!(d.evaluate_unchecked(&int_vec(&[6, 0])).total_degree(), q(1, 1));

        let (t1, g1) = ex1_pinned();
        assert!(check_properness(&build_divisor(&t1, &g1).unwrap()).passed());

        let broken = d.shifted(MarkedPoint::Zero, &rv(&[(-1, 1), (0, 1)]));
        let report = check_properness(&broken);
        assert!(!report.passed());
        assert!(report.violations().count() > 0);
    }

    #[test]
    fn integrality_examples() {
        let (t, g) = ex4_pinned();
        let d = build_divisor(&t, &g).unwrap();
        let r = vertex_integrality(&d);
        assert_eq!(r.any_integral, [false, false, true]);
        assert!(r.matches_unit_exponents());
        assert_eq!(
            horizontal_obstruction(&d),
            Obstruction::NotObstructed(vec![MarkedPoint::Infinity])
        );

        let t3 = ex3();
        let d3 = build_divisor(&t3, &grading_data(&t3).unwrap()).unwrap();
        let r3 = vertex_integrality(&d3);
        assert_eq!(r3.vertices.len(), 5);
        assert_eq!(r3.integral_count(), 0);
        assert_eq!(horizontal_obstruction(&d3), Obstruction::Obstructed);
    }

    #[test]
    fn support_function_is_superadditive_on_grid() {
        let t = ex3();
        let g = grading_data(&t).unwrap();
        let d = build_divisor(&t, &g).unwrap();
        let gens = &g.degrees;
        for a in gens {
            for b in gens {
                let s: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                for p in MarkedPoint::ALL {
                    let h = |m: &[BigInt]| support_value(&d, p, m).unwrap();
                    assert!(h(&s) >= h(a) + h(b));
                    let tripled: Vec<BigInt> = a.iter().map(|x| x * 3).collect();
                    assert_eq!(h(&tripled), h(a) * q(3, 1));
                }
            }
        }
    }
}
