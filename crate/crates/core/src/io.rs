//! JSON artifacts. Every file carries a "kind" tag; complex matrices are
//! nested row-major arrays of [re, im] pairs. Floats are rounded to nine
//! significant digits on output so identical inputs give identical bytes.

use num_complex::Complex64;
use serde_json::{json, Map, Value};

use crate::channel::{ClassicalChannel, QuantumChannel};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::independence::BoundsReport;
use crate::matrix::ComplexMatrix;
use crate::space::OperatorSpace;
use crate::theta::{ThetaResult, Witness};

/// x rounded to nine significant digits; −0 becomes 0.
pub fn sig9(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{x:.8e}").parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn number(x: f64) -> Value {
    json!(sig9(x))
}

pub fn complex_to_json(z: Complex64) -> Value {
    json!([sig9(z.re), sig9(z.im)])
}

pub fn matrix_to_json(m: &ComplexMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| Value::Array(m.row(i).iter().map(|&z| complex_to_json(z)).collect())).collect())
}

pub fn vector_to_json(v: &[Complex64]) -> Value {
    Value::Array(v.iter().map(|&z| complex_to_json(z)).collect())
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn as_f64(v: &Value) -> Result<f64> {
    v.as_f64().ok_or_else(|| invalid(format!("expected a number, found {v}")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64().map(|u| u as usize).ok_or_else(|| invalid(format!("{what} must be a non-negative integer")))
}

/// Accepts [re, im] pairs and bare real numbers.
pub fn complex_from_json(v: &Value) -> Result<Complex64> {
    match v {
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(as_f64(&pair[0])?, as_f64(&pair[1])?)),
        Value::Number(_) => Ok(Complex64::new(as_f64(v)?, 0.0)),
        _ => Err(invalid(format!("expected [re, im], found {v}"))),
    }
}

pub fn vector_from_json(v: &Value) -> Result<Vec<Complex64>> {
    v.as_array().ok_or_else(|| invalid("expected a vector"))?.iter().map(complex_from_json).collect()
}

pub fn matrix_from_json(v: &Value) -> Result<ComplexMatrix> {
    let rows = v.as_array().ok_or_else(|| invalid("expected a matrix"))?;
    if rows.is_empty() {
        return Err(invalid("empty matrix"));
    }
    let parsed: Vec<Vec<Complex64>> = rows.iter().map(vector_from_json).collect::<Result<_>>()?;
    let cols = parsed[0].len();
    if cols == 0 || parsed.iter().any(|r| r.len() != cols) {
        return Err(invalid("ragged or empty matrix rows"));
    }
    ComplexMatrix::from_vec(parsed.len(), cols, parsed.into_iter().flatten().collect())
}

fn field<'a>(obj: &'a Value, key: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| invalid(format!("missing field \"{key}\"")))
}

fn matrices(v: &Value) -> Result<Vec<ComplexMatrix>> {
    v.as_array().ok_or_else(|| invalid("expected a list of matrices"))?.iter().map(matrix_from_json).collect()
}

/// Any file the CLI reads or writes.
#[derive(Debug, Clone)]
pub enum Artifact {
    Graph(Graph),
    Space(OperatorSpace),
    Channel(QuantumChannel),
    ClassicalChannel(ClassicalChannel),
    IndependentSet(Vec<Vec<Complex64>>),
    Matrix(ComplexMatrix),
}

impl Artifact {
    pub fn kind(&self) -> &'static str {
        match self {
            Artifact::Graph(_) => "graph",
            Artifact::Space(_) => "operator_space",
            Artifact::Channel(_) => "channel",
            Artifact::ClassicalChannel(_) => "classical_channel",
            Artifact::IndependentSet(_) => "independent_set",
            Artifact::Matrix(_) => "matrix",
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_json(&serde_json::from_str(text)?)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = field(v, "kind")?.as_str().ok_or_else(|| invalid("\"kind\" must be a string"))?;
        match kind {
            "graph" => {
                let n = as_usize(field(v, "n")?, "n")?;
                let edges = field(v, "edges")?
                    .as_array()
                    .ok_or_else(|| invalid("\"edges\" must be a list"))?
                    .iter()
                    .map(|e| match e.as_array().map(|p| p.as_slice()) {
                        Some([a, b]) => Ok((as_usize(a, "vertex")?, as_usize(b, "vertex")?)),
                        _ => Err(invalid(format!("edge must be a pair, found {e}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Artifact::Graph(Graph::from_edges(n, &edges)?))
            }
            "operator_space" => {
                let d = as_usize(field(v, "dim")?, "dim")?;
                let basis = matrices(field(v, "basis")?)?;
                if let Some(m) = basis.iter().find(|m| m.shape() != (d, d)) {
                    return Err(Error::DimensionMismatch(format!("basis element {:?} in dimension {d}", m.shape())));
                }
                Ok(Artifact::Space(OperatorSpace::from_basis(d, &basis)?))
            }
            "channel" => {
                let kraus = matrices(field(v, "kraus")?)?;
                let (din, dout) = (as_usize(field(v, "dim_in")?, "dim_in")?, as_usize(field(v, "dim_out")?, "dim_out")?);
                if let Some(k) = kraus.iter().find(|k| k.shape() != (dout, din)) {
                    return Err(Error::DimensionMismatch(format!("Kraus operator {:?}, expected ({dout}, {din})", k.shape())));
                }
                Ok(Artifact::Channel(QuantumChannel::new(kraus)?))
            }
            "classical_channel" => {
                let probs = field(v, "probs")?
                    .as_array()
                    .ok_or_else(|| invalid("\"probs\" must be a list of rows"))?
                    .iter()
                    .map(|row| {
                        row.as_array().ok_or_else(|| invalid("probability row must be a list"))?.iter().map(as_f64).collect()
                    })
                    .collect::<Result<Vec<Vec<f64>>>>()?;
                let ch = ClassicalChannel::new(probs)?;
                for (key, want) in [("n_in", ch.n_in()), ("n_out", ch.n_out())] {
                    if let Some(given) = v.get(key) {
                        if as_usize(given, key)? != want {
                            return Err(Error::DimensionMismatch(format!("{key} = {given} but probs give {want}")));
                        }
                    }
                }
                Ok(Artifact::ClassicalChannel(ch))
            }
            "independent_set" => {
                let vectors = field(v, "vectors")?
                    .as_array()
                    .ok_or_else(|| invalid("\"vectors\" must be a list"))?
                    .iter()
                    .map(vector_from_json)
                    .collect::<Result<_>>()?;
                Ok(Artifact::IndependentSet(vectors))
            }
            "matrix" => Ok(Artifact::Matrix(matrix_from_json(field(v, "matrix")?)?)),
            other => Err(invalid(format!("unknown kind \"{other}\""))),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Artifact::Graph(g) => json!({"kind": "graph", "n": g.n(), "edges": g.edges()}),
            Artifact::Space(s) => json!({
                "kind": "operator_space",
                "dim": s.ambient_dim(),
                "basis": s.basis().iter().map(matrix_to_json).collect::<Vec<_>>(),
            }),
            Artifact::Channel(c) => json!({
                "kind": "channel",
                "dim_in": c.dim_in(),
                "dim_out": c.dim_out(),
                "kraus": c.kraus().iter().map(matrix_to_json).collect::<Vec<_>>(),
            }),
            Artifact::ClassicalChannel(c) => json!({
                "kind": "classical_channel",
                "n_in": c.n_in(),
                "n_out": c.n_out(),
                "probs": c.probs().iter().map(|r| r.iter().map(|&p| sig9(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            }),
            Artifact::IndependentSet(vs) => independent_set_to_json(vs),
            Artifact::Matrix(m) => json!({"kind": "matrix", "matrix": matrix_to_json(m)}),
        }
    }

    /// The confusability space: graphs and classical channels are lifted,
    /// quantum channels give span{Eⱼ†Eₖ}.
    pub fn to_space(&self) -> Result<OperatorSpace> {
        match self {
            Artifact::Graph(g) => Ok(g.to_operator_space()),
            Artifact::Space(s) => Ok(s.clone()),
            Artifact::Channel(c) => Ok(c.confusability()),
            Artifact::ClassicalChannel(c) => Ok(c.confusability_graph().to_operator_space()),
            other => Err(invalid(format!("a {} does not define an operator space", other.kind()))),
        }
    }

    /// The classical graph, when the artifact is one or lifts from one.
    pub fn to_graph(&self) -> Result<Graph> {
        match self {
            Artifact::Graph(g) => Ok(g.clone()),
            Artifact::ClassicalChannel(c) => Ok(c.confusability_graph()),
            Artifact::Space(s) => Graph::from_operator_space(s)
                .ok_or_else(|| invalid("operator space is not spanned by a classical graph pattern")),
            other => Err(invalid(format!("expected a graph, found {}", other.kind()))),
        }
    }
}

pub fn independent_set_to_json(vs: &[Vec<Complex64>]) -> Value {
    json!({"kind": "independent_set", "vectors": vs.iter().map(|v| vector_to_json(v)).collect::<Vec<_>>()})
}

pub fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::Dual { y } => json!({"type": "dual", "y": matrix_to_json(y)}),
        Witness::Primal { rho, t_prime } => {
            json!({"type": "primal", "rho": matrix_to_json(rho), "t_prime": matrix_to_json(t_prime)})
        }
        Witness::Classical { y } => json!({"type": "classical", "y": matrix_to_json(y)}),
    }
}

fn opt_number(x: Option<f64>) -> Value {
    x.map(number).unwrap_or(Value::Null)
}

/// `witness` controls whether certificate matrices are embedded.
pub fn theta_result_to_json(r: &ThetaResult, witness: bool) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!("theta_result"));
    obj.insert("value".into(), number(r.value));
    obj.insert("primal".into(), opt_number(r.primal));
    obj.insert("dual".into(), opt_number(r.dual));
    obj.insert("gap".into(), opt_number(r.gap));
    obj.insert(
        "solver_stats".into(),
        json!({
            "primal_iterations": r.stats.primal_iterations,
            "dual_iterations": r.stats.dual_iterations,
            "primal_vars": r.stats.primal_vars,
            "dual_vars": r.stats.dual_vars,
            "real": r.stats.real,
        }),
    );
    if witness {
        let mut w = Map::new();
        if let Some(d) = &r.dual_witness {
            w.insert("dual".into(), witness_to_json(d));
        }
        if let Some(p) = &r.primal_witness {
            w.insert("primal".into(), witness_to_json(p));
        }
        obj.insert("witness".into(), Value::Object(w));
    }
    Value::Object(obj)
}

pub fn bounds_report_to_json(b: &BoundsReport) -> Value {
    json!({
        "kind": "bounds_report",
        "alpha_lower": b.alpha_lower,
        "witness": independent_set_to_json(&b.witness),
        "alpha_exact": b.alpha_exact,
        "theta_tilde_upper": number(b.theta_tilde_upper),
        "pair_dim_upper": b.pair_dim_upper,
        "alpha_hat_upper": b.alpha_hat_upper,
        "ambient_upper": b.ambient_upper,
        "alpha_upper": b.alpha_upper,
        "alpha_tilde_upper": b.alpha_tilde_upper,
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    #[allow(clippy::approx_constant)]
    fn sig9_rounds() {
        assert_eq!(sig9(std::f64::consts::PI), 3.14159265);
        assert_eq!(sig9(-0.0).to_bits(), 0.0f64.to_bits());
        assert_eq!(sig9(1e-20), 1e-20);
        assert_eq!(sig9(2.0), 2.0);
    }

    #[test]
    fn identity_encoding() {
        let v = matrix_to_json(&ComplexMatrix::identity(2));
        assert_eq!(v, json!([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]));
        assert_eq!(matrix_from_json(&v).unwrap(), ComplexMatrix::identity(2));
    }

    #[test]
    fn artifacts_roundtrip() {
        let g = Graph::cycle(5);
        let back = Artifact::parse(&render(&Artifact::Graph(g.clone()).to_json())).unwrap();
        assert_eq!(back.to_graph().unwrap(), g);

        let s = g.to_operator_space();
        let back = Artifact::parse(&render(&Artifact::Space(s.clone()).to_json())).unwrap().to_space().unwrap();
        assert!(back.equals(&s).unwrap());

        let ch = QuantumChannel::dephasing(2);
        let back = Artifact::parse(&render(&Artifact::Channel(ch.clone()).to_json())).unwrap();
        assert!(back.to_space().unwrap().equals(&ch.confusability()).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(Artifact::parse("{"), Err(Error::Json(_))));
        assert!(Artifact::parse(r#"{"kind":"banana"}"#).is_err());
        assert!(Artifact::parse(r#"{"kind":"graph","n":3,"edges":[[0,3]]}"#).is_err());
        let not_tp = r#"{"kind":"channel","dim_in":1,"dim_out":1,"kraus":[[[[0.5,0]]]]}"#;
        assert!(matches!(Artifact::parse(not_tp), Err(Error::NotTracePreserving { .. })));
    }
}
