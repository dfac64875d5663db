use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Map, Value};
use thiserror::Error;
use trinomial_core::grading::GradingData;
use trinomial_core::linalg::{IntMatrix, Rational};
use trinomial_core::oracle::{graded_dim_oracle, hilbert_cross_check, GridSpec, LndSearchReport};
use trinomial_core::poly::{homogeneous_degree, is_locally_nilpotent, lemma_derivation, Derivation, Nilpotency};
use trinomial_core::polyhedral::{
    check_properness, evaluate_divisor, horizontal_obstruction, vertex_integrality, MarkedPoint, Obstruction,
    PolyhedralDivisor,
};
use trinomial_core::trinomial::{CylinderVerdict, RigidityVerdict, Validity};
use trinomial_core::{Error, Strategy, Trinomial};

use crate::parse::ParseError;

/// Exit codes: 2 malformed input, 3 outside a theorem's hypotheses,
/// 4 internal inconsistency.
#[derive(Debug, Error)]
pub enum Failure {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("out of scope: {0}")]
    Scope(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Invalid(_) => 2,
            Failure::Scope(_) => 3,
            Failure::Internal(_) => 4,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            e if e.is_scope() => Failure::Scope(e.to_string()),
            Error::EmptyBlock(_)
            | Error::ZeroExponent { .. }
            | Error::Json(_)
            | Error::DimensionMismatch { .. }
            | Error::NoSuchVariable { .. }
            | Error::NotUnitExponent { .. } => Failure::Invalid(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

pub fn int(b: &BigInt) -> Value {
    b.to_i64().map_or_else(|| Value::String(b.to_string()), Value::from)
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

/// `"p/q"` in lowest terms with `q > 0`.
pub fn rat(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

fn rats(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rat).collect())
}

fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_vecs().iter().map(|r| ints(r)).collect())
}

fn per_point<F: Fn(MarkedPoint) -> Value>(f: F) -> Value {
    let mut map = Map::new();
    for p in MarkedPoint::ALL {
        map.insert(p.to_string(), f(p));
    }
    Value::Object(map)
}

pub fn check(t: &Trinomial) -> Value {
    json!({
        "factorial": t.is_factorial().ok(),
        "homogeneous": t.is_homogeneous(),
        "rigid": t.is_rigid().verdict.label(),
        "cylinder": t.cylinder_verdict().label(),
    })
}

fn rigidity(t: &Trinomial) -> Value {
    let cert = t.is_rigid();
    let scope = match cert.verdict {
        RigidityVerdict::OutOfTheoremScope(r) => Some(r.to_string()),
        _ => None,
    };
    json!({
        "verdict": cert.verdict.label(),
        "scope": scope,
        "reasons": cert.reasons,
        "witness": cert.witness.map(|v| v.to_string()),
        "integral_vertices": cert.integral_vertices.map(|(a, b)| json!({"integral": a, "total": b})),
    })
}

fn cylinder(t: &Trinomial) -> Value {
    let v = t.cylinder_verdict();
    let scope = match v {
        CylinderVerdict::NotApplicable(r) => Some(r.to_string()),
        _ => None,
    };
    json!({"verdict": v.label(), "scope": scope})
}

pub fn grading(g: &GradingData) -> Value {
    json!({
        "L": matrix(&g.l),
        "B": matrix(&g.basis),
        "S": matrix(&g.section),
        "degrees": Value::Array(g.degrees.iter().map(|d| ints(d)).collect()),
        "mu": ints(&g.mu),
    })
}

pub fn divisor(d: &PolyhedralDivisor) -> Value {
    let integrality = vertex_integrality(d);
    let coefficients: Vec<Value> = MarkedPoint::ALL
        .iter()
        .map(|&p| {
            let vertices: Vec<Value> = d
                .at(p)
                .vertices
                .iter()
                .map(|v| {
                    json!({
                        "variable": v.variable.to_string(),
                        "exponent": v.exponent,
                        "vertex": rats(&v.point.0),
                        "integral": v.is_integral(),
                    })
                })
                .collect();
            json!({"point": p.to_string(), "block": p.block(), "vertices": vertices})
        })
        .collect();
    let properness = check_properness(d);
    let checks: Vec<Value> = properness
        .checks
        .iter()
        .map(|c| json!({"m": ints(&c.m), "degree": rat(&c.total_degree), "strict": c.strict, "passed": c.passed}))
        .collect();
    let obstruction = match horizontal_obstruction(d) {
        Obstruction::Obstructed => json!({"status": "Obstructed", "points": []}),
        Obstruction::NotObstructed(ps) => json!({
            "status": "NotObstructed",
            "points": ps.iter().map(ToString::to_string).collect::<Vec<_>>(),
        }),
    };
    json!({
        "tail_generators": Value::Array(d.tail.normals().iter().map(|n| ints(n)).collect()),
        "coefficients": coefficients,
        "integrality": {
            "any_integral": per_point(|p| Value::Bool(integrality.any_integral[p as usize])),
            "integral_count": integrality.integral_count(),
            "matches_unit_exponents": integrality.matches_unit_exponents(),
        },
        "properness": {"passed": properness.passed(), "checks": checks},
        "obstruction": obstruction,
    })
}

/// Evaluation at one degree; the flag is false on an AH/oracle mismatch.
pub fn eval_m(g: &GradingData, d: &PolyhedralDivisor, m: &[BigInt], strategy: Strategy) -> (Value, bool) {
    let oracle = graded_dim_oracle(g, m, strategy);
    let inside = d.tail.dual_contains(m);
    let (h, degree, floor, ah) = if inside {
        let value = evaluate_divisor(d, m).expect("membership checked");
        let floor = value.floor_degree();
        let ah = (&floor + BigInt::from(1)).max(BigInt::zero());
        (
            per_point(|p| rat(value.at(p))),
            rat(&value.total_degree()),
            int(&floor),
            ah,
        )
    } else {
        (Value::Null, Value::Null, Value::Null, BigInt::zero())
    };
    let matches = ah == BigInt::from(oracle);
    let v = json!({
        "m": ints(m),
        "in_weight_cone": inside,
        "h": h,
        "degree": degree,
        "floor_degree": floor,
        "dims": {"ah": int(&ah), "oracle": oracle, "match": matches},
    });
    (v, matches)
}

fn nilpotency(n: &Nilpotency) -> Value {
    match n {
        Nilpotency::Nilpotent(chains) => json!({"nilpotent": true, "chains": chains}),
        Nilpotency::NotWithinBound { generator, bound } => {
            json!({"nilpotent": false, "inconclusive_at": generator, "bound": bound})
        }
    }
}

fn images(d: &Derivation, names: &[String]) -> Value {
    let mut map = Map::new();
    for (k, name) in names.iter().enumerate() {
        if !d.image(k).is_zero() {
            map.insert(name.clone(), Value::String(d.image(k).render(names)));
        }
    }
    Value::Object(map)
}

/// One entry per unit-exponent variable; the flag is false if a verification
/// failed.
pub fn derivations(t: &Trinomial, g: &GradingData, bound: usize) -> Result<(Value, bool), Failure> {
    t.require_factorial()?;
    let names = t.variable_names();
    let f = t.build_f();
    let mut ok = true;
    let mut out = Vec::new();
    for u in t.unit_variables() {
        let d = lemma_derivation(t, u)?;
        let partner_block = (u.block + 1) % 3;
        let expected = t.block(partner_block)[0] as usize + 1;
        let annihilates = d.apply(&f).is_zero();
        let nil = is_locally_nilpotent(&d, bound);
        let unit_chain = match &nil {
            Nilpotency::Nilpotent(chains) => Some(chains[t.global_index(u)]),
            Nilpotency::NotWithinBound { .. } => None,
        };
        let degree = homogeneous_degree(&d, g);
        ok &= annihilates && unit_chain == Some(expected) && degree.is_some();
        out.push(json!({
            "unit": u.to_string(),
            "partner": trinomial_core::Variable::new(partner_block, 0).to_string(),
            "images": images(&d, &names),
            "annihilates_f": annihilates,
            "nilpotency": nilpotency(&nil),
            "unit_chain_length": unit_chain,
            "expected_chain_length": expected,
            "homogeneous_degree": degree.as_deref().map(ints),
        }));
    }
    Ok((Value::Array(out), ok))
}

pub fn search(report: &LndSearchReport, names: &[String]) -> Value {
    let slices: Vec<Value> = report
        .slices
        .iter()
        .filter(|s| !s.candidates.is_empty())
        .map(|s| {
            let candidates: Vec<Value> = s
                .candidates
                .iter()
                .map(|c| {
                    json!({
                        "images": images(&c.derivation, names),
                        "quotient": c.quotient.render(names),
                        "nilpotency": nilpotency(&c.nilpotency),
                    })
                })
                .collect();
            json!({"degree": ints(&s.degree), "unknowns": s.unknowns, "candidates": candidates})
        })
        .collect();
    json!({
        "degree_bound": report.degree_bound,
        "nilpotency_bound": report.nilpotency_bound,
        "scope": "consistency check: only basis elements of each homogeneous slice are tested",
        "candidate_count": report.candidates().count(),
        "nilpotent_count": report.nilpotent_candidates().count(),
        "slices": slices,
    })
}

pub struct ReportOptions {
    pub nilpotency_bound: Option<usize>,
    pub evaluation_grid: u64,
    pub cross_check_grid: u64,
    pub strategy: Strategy,
}

/// Everything at once. Sections that need factoriality are `null` when it
/// fails; the flag is false on any internal mismatch.
pub fn full_report(t: &Trinomial, opts: &ReportOptions) -> Result<(Value, bool), Failure> {
    let validity = match t.validate() {
        Validity::Ok => "ok".to_string(),
        Validity::HasLinearTerm(i) => format!("linear-term({i})"),
    };
    let instance: Value = serde_json::from_str(&t.to_json()).expect("instance JSON round-trips");
    let mut out = json!({
        "instance": instance,
        "validity": validity,
        "gcds": t.block_gcds(),
        "factorial": t.is_factorial().ok(),
        "homogeneous": t.is_homogeneous(),
        "rigidity": rigidity(t),
        "cylinder": cylinder(t),
        "grading": null,
        "divisor": null,
        "derivations": null,
        "evaluations": null,
        "cross_check": null,
    });
    if !t.is_factorial().unwrap_or(false) {
        return Ok((out, true));
    }
    let g = trinomial_core::grading::grading_data(t)?;
    let d = trinomial_core::polyhedral::build_divisor(t, &g)?;
    let bound = opts
        .nilpotency_bound
        .unwrap_or_else(|| trinomial_core::poly::default_nilpotency_bound(t));
    let (derivs, derivs_ok) = derivations(t, &g, bound)?;
    let mut ok = derivs_ok && check_properness(&d).passed();

    let points = GridSpec::new(opts.evaluation_grid).points(&g);
    let evaluations: Vec<Value> = points
        .iter()
        .map(|m| {
            let (v, matches) = eval_m(&g, &d, m, opts.strategy);
            ok &= matches;
            v
        })
        .collect();
    let rows = hilbert_cross_check(&g, &d, GridSpec::new(opts.cross_check_grid), opts.strategy)?;
    let mismatches: Vec<Value> = rows.iter().filter(|r| !r.matches()).map(|r| ints(&r.m)).collect();
    ok &= mismatches.is_empty();

    out["grading"] = grading(&g);
    out["divisor"] = divisor(&d);
    out["derivations"] = derivs;
    out["evaluations"] = Value::Array(evaluations);
    out["cross_check"] = json!({
        "grid_c_max": opts.cross_check_grid,
        "points": rows.len(),
        "mismatches": mismatches,
    });
    Ok((out, ok))
}

/// Indented `key: value` rendering for `--format text`.
pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(v, 0, &mut out);
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Object(_) | Value::Array(_))
}

fn inline(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Array(xs) if xs.iter().all(|x| is_scalar(x) || matches!(x, Value::Array(_))) => {
            let parts: Option<Vec<String>> = xs.iter().map(inline).collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Array(_) | Value::Object(_) => None,
        other => Some(other.to_string()),
    }
}

fn write_text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_text(x, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other).unwrap_or_default())),
    }
}
