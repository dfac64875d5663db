//! Trinomials `T₀^{l₀} + T₁^{l₁} + T₂^{l₂}` and the top-level verdicts on the
//! hypersurfaces they define: factoriality, rigidity and cylinders.
//!
//! Variables are named `T_{ij}` with block `i ∈ {0,1,2}` and position
//! `j = 1..nᵢ`; they are flattened to a global index in block order, so
//! `T₀₁, …, T₀ₙ₀, T₁₁, …, T₂ₙ₂` are indices `0..n`. The same convention is
//! used by every other module.

use std::fmt;

use num_integer::Integer;
use num_traits::One;

use crate::linalg::Rational;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::grading::grading_data;
use crate::poly::{Monomial, SparsePoly};
use crate::polyhedral::{build_divisor, horizontal_obstruction, vertex_integrality, Obstruction};

/// One variable `T_{ij}`; `position` is zero-based (`j - 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Variable {
    pub block: usize,
    pub position: usize,
}

impl Variable {
    pub fn new(block: usize, position: usize) -> Self {
        Self { block, position }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}{}", self.block, self.position + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Trinomial {
    blocks: [Vec<u64>; 3],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrinomialWire {
    l0: Vec<u64>,
    l1: Vec<u64>,
    l2: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Validity {
    Ok,
    HasLinearTerm(usize),
}

impl Trinomial {
    pub fn new(l0: Vec<u64>, l1: Vec<u64>, l2: Vec<u64>) -> Result<Self, Error> {
        let blocks = [l0, l1, l2];
        for (i, b) in blocks.iter().enumerate() {
            if b.is_empty() {
                return Err(Error::EmptyBlock(i));
            }
            if let Some(position) = b.iter().position(|&e| e == 0) {
                return Err(Error::ZeroExponent { block: i, position });
            }
        }
        Ok(Self { blocks })
    }

    /// Parses the canonical JSON form `{"l0":[...],"l1":[...],"l2":[...]}`.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let w: TrinomialWire = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        Self::new(w.l0, w.l1, w.l2)
    }

    pub fn to_json(&self) -> String {
        let w = TrinomialWire {
            l0: self.blocks[0].clone(),
            l1: self.blocks[1].clone(),
            l2: self.blocks[2].clone(),
        };
        serde_json::to_string(&w).expect("plain integer arrays always serialize")
    }

    pub fn block(&self, i: usize) -> &[u64] {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Vec<u64>; 3] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> [usize; 3] {
        [self.blocks[0].len(), self.blocks[1].len(), self.blocks[2].len()]
    }

    /// Total number of variables.
    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Exponents in global variable order.
    pub fn exponents(&self) -> Vec<u64> {
        self.blocks.iter().flatten().copied().collect()
    }

    pub fn exponent(&self, v: Variable) -> Option<u64> {
        self.blocks.get(v.block)?.get(v.position).copied()
    }

    pub fn variables(&self) -> Vec<Variable> {
        (0..3)
            .flat_map(|i| (0..self.blocks[i].len()).map(move |j| Variable::new(i, j)))
            .collect()
    }

    pub fn variable(&self, k: usize) -> Variable {
        self.variables()[k]
    }

    pub fn global_index(&self, v: Variable) -> usize {
        self.blocks[..v.block].iter().map(Vec::len).sum::<usize>() + v.position
    }

    /// Exponent vector of the monomial `T_i^{l_i}` in global coordinates.
    pub fn block_monomial(&self, i: usize) -> Vec<u64> {
        let mut a = vec![0; self.n()];
        let start = self.global_index(Variable::new(i, 0));
        a[start..start + self.blocks[i].len()].copy_from_slice(&self.blocks[i]);
        a
    }

    pub fn block_sums(&self) -> [u64; 3] {
        [0, 1, 2].map(|i| self.blocks[i].iter().sum())
    }

    pub fn min_exponent(&self) -> u64 {
        self.blocks
            .iter()
            .flatten()
            .copied()
            .min()
            .expect("blocks are nonempty")
    }

    pub fn max_exponent(&self) -> u64 {
        self.blocks
            .iter()
            .flatten()
            .copied()
            .max()
            .expect("blocks are nonempty")
    }

    /// Variables whose exponent equals 1, in global order.
    pub fn unit_variables(&self) -> Vec<Variable> {
        self.variables()
            .into_iter()
            .filter(|&v| self.exponent(v) == Some(1))
            .collect()
    }

    /// A block is a linear term iff it is a single variable with exponent 1.
    pub fn validate(&self) -> Validity {
        match (0..3).find(|&i| self.blocks[i] == [1]) {
            Some(i) => Validity::HasLinearTerm(i),
            None => Validity::Ok,
        }
    }

    pub fn block_gcds(&self) -> [u64; 3] {
        [0, 1, 2].map(|i| self.blocks[i].iter().fold(0, |g, &e| g.gcd(&e)))
    }

    pub fn is_factorial(&self) -> Result<bool, Error> {
        if let Validity::HasLinearTerm(i) = self.validate() {
            return Err(Error::HasLinearTerm(i));
        }
        let [d0, d1, d2] = self.block_gcds();
        Ok(d0.gcd(&d1) == 1 && d0.gcd(&d2) == 1 && d1.gcd(&d2) == 1)
    }

    /// Fails unless the instance has no linear term and is factorial.
    pub fn require_factorial(&self) -> Result<(), Error> {
        if self.is_factorial()? {
            Ok(())
        } else {
            Err(Error::NotFactorial {
                gcds: self.block_gcds(),
            })
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let [a, b, c] = self.block_sums();
        a == b && b == c
    }

    pub fn is_rigid(&self) -> RigidityCertificate {
        RigidityCertificate::for_trinomial(self)
    }

    pub fn cylinder_verdict(&self) -> CylinderVerdict {
        if let Validity::HasLinearTerm(i) = self.validate() {
            return CylinderVerdict::NotApplicable(ScopeReason::LinearTerm(i));
        }
        if !self.is_homogeneous() {
            return CylinderVerdict::NotApplicable(ScopeReason::NonHomogeneous);
        }
        if !self.is_factorial().unwrap_or(false) {
            return CylinderVerdict::NotApplicable(ScopeReason::NonFactorial);
        }
        if self.min_exponent() >= 2 {
            CylinderVerdict::NoCylinder
        } else {
            CylinderVerdict::HasCylinder
        }
    }

    /// The polynomial `f` itself, with unit coefficients.
    pub fn build_f(&self) -> SparsePoly {
        let n = self.n();
        let mut f = SparsePoly::zero(n);
        for i in 0..3 {
            f.add_term(Monomial::from_u64(&self.block_monomial(i)), Rational::one());
        }
        f
    }

    /// Human-readable variable names in global order.
    pub fn variable_names(&self) -> Vec<String> {
        self.variables().iter().map(Variable::to_string).collect()
    }
}

impl fmt::Display for Trinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// Why an instance falls outside a theorem's hypotheses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScopeReason {
    LinearTerm(usize),
    NonFactorial,
    NonHomogeneous,
}

impl fmt::Display for ScopeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScopeReason::LinearTerm(i) => write!(f, "linear-term({i})"),
            ScopeReason::NonFactorial => write!(f, "non-factorial"),
            ScopeReason::NonHomogeneous => write!(f, "non-homogeneous"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RigidityVerdict {
    Rigid,
    NotRigid,
    OutOfTheoremScope(ScopeReason),
}

impl RigidityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            RigidityVerdict::Rigid => "Rigid",
            RigidityVerdict::NotRigid => "NotRigid",
            RigidityVerdict::OutOfTheoremScope(_) => "OutOfTheoremScope",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderVerdict {
    NoCylinder,
    HasCylinder,
    NotApplicable(ScopeReason),
}

impl CylinderVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            CylinderVerdict::NoCylinder => "NoCylinder",
            CylinderVerdict::HasCylinder => "HasCylinder",
            CylinderVerdict::NotApplicable(_) => "NotApplicable",
        }
    }
}

/// Outcome of the rigidity decision together with the evidence behind it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityCertificate {
    pub verdict: RigidityVerdict,
    pub reasons: Vec<String>,
    /// For `NotRigid`: the unit-exponent variable whose derivation witnesses
    /// non-rigidity (feed it to [`crate::poly::lemma_derivation`]).
    pub witness: Option<Variable>,
    /// Integral vertex count and total vertex count of the polyhedral
    /// coefficients, when the divisor could be built.
    pub integral_vertices: Option<(usize, usize)>,
}

const VERTICAL_REASON: &str =
    "no nonzero homogeneous LND of vertical type exists on a trinomial hypersurface (cited, not mechanized)";
const REDUCTION_REASON: &str =
    "a graded domain with a nonzero LND has a nonzero homogeneous one, so homogeneous LNDs suffice";

impl RigidityCertificate {
    fn for_trinomial(t: &Trinomial) -> Self {
        let out_of_scope = |reason: ScopeReason, text: String| Self {
            verdict: RigidityVerdict::OutOfTheoremScope(reason),
            reasons: vec![text],
            witness: None,
            integral_vertices: None,
        };
        if let Validity::HasLinearTerm(i) = t.validate() {
            return out_of_scope(
                ScopeReason::LinearTerm(i),
                format!("block {i} is a linear term; the hypersurface is an affine space"),
            );
        }
        if !t.is_factorial().unwrap_or(false) {
            return out_of_scope(
                ScopeReason::NonFactorial,
                format!("block gcds {:?} are not pairwise coprime", t.block_gcds()),
            );
        }

        let mut reasons = Vec::new();
        let integral_vertices = grading_data(t).and_then(|g| build_divisor(t, &g)).ok().map(|d| {
            let report = vertex_integrality(&d);
            let obstruction = horizontal_obstruction(&d);
            reasons.push(match &obstruction {
                Obstruction::Obstructed => {
                    "horizontal obstruction: no coefficient at 0, 1, inf has an integral vertex".to_string()
                }
                Obstruction::NotObstructed(points) => format!(
                    "horizontal obstruction fails: integral vertices at {}",
                    points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
                ),
            });
            (report.integral_count(), report.vertices.len())
        });

        if t.min_exponent() >= 2 {
            reasons.insert(0, REDUCTION_REASON.to_string());
            reasons.insert(1, VERTICAL_REASON.to_string());
            Self {
                verdict: RigidityVerdict::Rigid,
                reasons,
                witness: None,
                integral_vertices,
            }
        } else {
            let witness = t.unit_variables()[0];
            reasons.insert(
                0,
                format!("exponent of {witness} is 1; the unit-exponent derivation is a nonzero LND preserving (f)"),
            );
            Self {
                verdict: RigidityVerdict::NotRigid,
                reasons,
                witness: Some(witness),
                integral_vertices,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn rejects_malformed() {
        assert_eq!(Trinomial::new(vec![], vec![2], vec![3]), Err(Error::EmptyBlock(0)));
        assert_eq!(
            Trinomial::new(vec![2], vec![2, 0], vec![3]),
            Err(Error::ZeroExponent { block: 1, position: 1 })
        );
    }

    #[test]
    fn validity() {
        assert_eq!(ex1().validate(), Validity::Ok);
        assert_eq!(tri(&[1], &[2], &[3]).validate(), Validity::HasLinearTerm(0));
        assert_eq!(ex4().validate(), Validity::Ok);
        assert_eq!(tri(&[2], &[3], &[1]).validate(), Validity::HasLinearTerm(2));
    }

    #[test]
    fn gcds() {
        assert_eq!(ex1().block_gcds(), [1, 2, 3]);
        assert_eq!(ex3().block_gcds(), [1, 1, 5]);
        assert_eq!(tri(&[2], &[2], &[3]).block_gcds(), [2, 2, 3]);
    }

    #[test]
    fn factoriality() {
        assert_eq!(ex1().is_factorial(), Ok(true));
        assert_eq!(tri(&[2], &[2], &[3]).is_factorial(), Ok(false));
        assert_eq!(ex3().is_factorial(), Ok(true));
        assert_eq!(tri(&[1], &[2], &[3]).is_factorial(), Err(Error::HasLinearTerm(0)));
    }

    #[test]
    fn rigidity_verdicts() {
        let c = ex1().is_rigid();
        assert_eq!(c.verdict, RigidityVerdict::Rigid);
        assert_eq!(c.integral_vertices, Some((0, 4)));

        let c = ex2().is_rigid();
        assert_eq!(c.verdict, RigidityVerdict::NotRigid);
        assert_eq!(c.witness, Some(Variable::new(0, 0)));

        assert_eq!(
            tri(&[2], &[2], &[3]).is_rigid().verdict,
            RigidityVerdict::OutOfTheoremScope(ScopeReason::NonFactorial)
        );
        assert_eq!(
            tri(&[1], &[2], &[3]).is_rigid().verdict,
            RigidityVerdict::OutOfTheoremScope(ScopeReason::LinearTerm(0))
        );
    }

    #[test]
    fn homogeneity() {
        assert!(ex3().is_homogeneous());
        assert!(!ex1().is_homogeneous());
        assert!(tri(&[2], &[2], &[2]).is_homogeneous());
    }

    #[test]
    fn cylinders() {
        assert_eq!(ex3().cylinder_verdict(), CylinderVerdict::NoCylinder);
        assert_eq!(
            ex1().cylinder_verdict(),
            CylinderVerdict::NotApplicable(ScopeReason::NonHomogeneous)
        );
        assert_eq!(
            tri(&[1, 4], &[2, 3], &[5]).cylinder_verdict(),
            CylinderVerdict::HasCylinder
        );
        assert_eq!(
            tri(&[2], &[2], &[2]).cylinder_verdict(),
            CylinderVerdict::NotApplicable(ScopeReason::NonFactorial)
        );
    }

    #[test]
    fn builds_f() {
        let names = ex1().variable_names();
        assert_eq!(
            ex1().build_f().render(&names),
            "1 * T01^2 * T02^3 + 1 * T21^3 + 1 * T11^2"
        );
        let lin = tri(&[1], &[1], &[1]);
        assert_eq!(
            lin.build_f().render(&lin.variable_names()),
            "1 * T01 + 1 * T11 + 1 * T21"
        );
        assert_eq!(
            ex4().build_f().render(&ex4().variable_names()),
            "1 * T21^3 + 1 * T01 * T02 + 1 * T11^2"
        );
    }

    #[test]
    fn json_roundtrip() {
        let t = Trinomial::from_json(r#"{"l0":[1,2],"l1":[2],"l2":[3]}"#).unwrap();
        assert_eq!(t, ex2());
        assert_eq!(Trinomial::from_json(&t.to_json()).unwrap(), t);
        assert!(matches!(
            Trinomial::from_json(r#"{"l0":[1],"l1":[2]}"#),
            Err(Error::Json(_))
        ));
        assert!(matches!(
            Trinomial::from_json(r#"{"l0":[-1],"l1":[2],"l2":[3]}"#),
            Err(Error::Json(_))
        ));
    }

    #[test]
    fn indexing() {
        let t = ex1();
        assert_eq!(t.n(), 4);
        assert_eq!(t.global_index(Variable::new(2, 0)), 3);
        assert_eq!(t.variable(2), Variable::new(1, 0));
        assert_eq!(t.block_monomial(0), vec![2, 3, 0, 0]);
    }
}
