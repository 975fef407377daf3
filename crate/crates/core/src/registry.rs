//! Invariants behind one object-safe interface, looked up by name.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value as Json};
use thiserror::Error;

use crate::conway::{
    evaluate, evaluate_with, ConwayPolyAlgebra, EvalError, EvalOptions, FiniteAlgebraTable, HomflyAlgebra,
    JonesAlgebra, ThreeVarAlgebra,
};
use crate::conway::check_axioms;
use crate::diagram::LinkDiagram;
use crate::kauffman;
use crate::poly::LaurentPoly;
use crate::supersig::{self, Scalar, SupersigValue, Q};

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error("unknown invariant `{0}`")]
    Unknown(String),
    #[error("invariant `{invariant}` needs {param}")]
    MissingParam { invariant: &'static str, param: &'static str },
    #[error("finite algebra fails the axioms:\n{0}")]
    Axioms(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Inputs beyond the diagram. Unused fields are ignored.
#[derive(Debug, Clone, Default)]
pub struct Params {
    pub u: Option<Q>,
    pub v: Option<Q>,
    pub w: Option<Q>,
    /// Switches the supersignature to floating point with this tolerance.
    pub epsilon: Option<f64>,
    pub cache: bool,
    pub table: Option<FiniteAlgebraTable>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Poly(LaurentPoly),
    Int(i64),
    Supersig(SupersigValue<Q>),
    SupersigFloat(SupersigValue<f64>),
    /// One-based element of a finite algebra.
    Element(usize),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Poly(p) => write!(f, "{}", p),
            Value::Int(k) => write!(f, "{}", k),
            Value::Supersig(s) => write!(f, "{}", s),
            Value::SupersigFloat(s) => write!(f, "{}", s),
            Value::Element(e) => write!(f, "{}", e),
        }
    }
}

fn sig_json<T: Scalar>(s: &SupersigValue<T>) -> Json {
    let axis = match s.r.axis {
        supersig::Axis::Real => "real",
        supersig::Axis::Imaginary => "imaginary",
    };
    json!({
        "r": s.r.value.to_string(),
        "axis": axis,
        "z": s.z.map_or(Json::from("inf"), Json::from),
    })
}

impl Value {
    pub fn to_json(&self) -> Json {
        match self {
            Value::Poly(p) => json!({ "type": "poly", "text": p.to_string(), "poly": p.to_json() }),
            Value::Int(k) => json!({ "type": "int", "value": k }),
            Value::Supersig(s) => json!({ "type": "supersig", "value": sig_json(s) }),
            Value::SupersigFloat(s) => json!({ "type": "supersig", "value": sig_json(s) }),
            Value::Element(e) => json!({ "type": "element", "value": e }),
        }
    }
}

pub trait Invariant: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn compute(&self, d: &LinkDiagram, p: &Params) -> Result<Value, InvariantError>;
}

/// An invariant given by a plain function.
struct FnInvariant {
    name: &'static str,
    summary: &'static str,
    f: fn(&LinkDiagram, &Params) -> Result<Value, InvariantError>,
}

impl Invariant for FnInvariant {
    fn name(&self) -> &'static str {
        self.name
    }
    fn summary(&self) -> &'static str {
        self.summary
    }
    fn compute(&self, d: &LinkDiagram, p: &Params) -> Result<Value, InvariantError> {
        (self.f)(d, p)
    }
}

fn opts(p: &Params) -> EvalOptions {
    if p.cache {
        EvalOptions::cached()
    } else {
        EvalOptions::default()
    }
}

fn supersig(d: &LinkDiagram, p: &Params) -> Result<Value, InvariantError> {
    let missing = |param| InvariantError::MissingParam { invariant: "supersig", param };
    let u = p.u.as_ref().ok_or_else(|| missing("--u"))?;
    let v = p.v.as_ref().ok_or_else(|| missing("--v"))?;
    Ok(match p.epsilon {
        Some(eps) => Value::SupersigFloat(supersig::supersignature_f64(d, u.to_f64(), v.to_f64(), eps)?),
        None => Value::Supersig(supersig::supersignature(d, u, v)?),
    })
}

fn jones_supersig(d: &LinkDiagram, p: &Params) -> Result<Value, InvariantError> {
    let w = p.w.as_ref().ok_or(InvariantError::MissingParam { invariant: "jones-supersig", param: "--w" })?;
    Ok(Value::Supersig(supersig::jones_supersignature(d, w)?))
}

fn finite_algebra(d: &LinkDiagram, p: &Params) -> Result<Value, InvariantError> {
    let t = p.table.as_ref().ok_or(InvariantError::MissingParam { invariant: "finite-algebra", param: "--table" })?;
    let r = check_axioms(t);
    if !r.ok() {
        return Err(InvariantError::Axioms(r.to_string()));
    }
    Ok(Value::Element(evaluate(d, t)? as usize + 1))
}

macro_rules! poly {
    ($e:expr) => {
        Ok(Value::Poly($e))
    };
}

const BUILTIN: &[FnInvariant] = &[
    FnInvariant { name: "homfly", summary: "Jones-Conway polynomial P(x, y)", f: |d, p| poly!(evaluate_with(d, &HomflyAlgebra::new(), opts(p))?) },
    FnInvariant { name: "conway", summary: "Conway polynomial", f: |d, p| poly!(evaluate_with(d, &ConwayPolyAlgebra::new(), opts(p))?) },
    FnInvariant { name: "jones", summary: "Jones polynomial V(t)", f: |d, p| poly!(evaluate_with(d, &JonesAlgebra::new(), opts(p))?) },
    FnInvariant { name: "jones-kauffman", summary: "Jones polynomial through the Kauffman F", f: |d, _| poly!(kauffman::jones_from_kauffman(d)) },
    FnInvariant { name: "three-var", summary: "three-variable Conway-type polynomial", f: |d, p| poly!(evaluate_with(d, &ThreeVarAlgebra::new(), opts(p))?) },
    FnInvariant { name: "q", summary: "unoriented polynomial Q(x) = F(1, x)", f: |d, _| poly!(kauffman::q_polynomial(d)) },
    FnInvariant { name: "kauffman-l", summary: "Kauffman L(a, z), regular isotopy", f: |d, _| poly!(kauffman::kauffman_l(d)) },
    FnInvariant { name: "kauffman-f", summary: "Kauffman F(a, z) = a^-tw L", f: |d, _| poly!(kauffman::kauffman_f(d)) },
    FnInvariant { name: "jck", summary: "three-variable J(a, t, z), regular isotopy", f: |d, _| poly!(kauffman::jck(d)) },
    FnInvariant { name: "jck-tilde", summary: "J~ = a^-tw J", f: |d, _| poly!(kauffman::jck_tilde(d)) },
    FnInvariant { name: "homfly-regular", summary: "HOMFLY for regular isotopy R(a, z)", f: |d, _| poly!(kauffman::homfly_regular(d)) },
    FnInvariant { name: "homfly-g", summary: "G = a^-tw R", f: |d, _| poly!(kauffman::homfly_g(d)) },
    FnInvariant { name: "supersig", summary: "supersignature at (--u, --v)", f: supersig },
    FnInvariant { name: "jones-supersig", summary: "supersignature of the Jones parametrization at --w", f: jones_supersig },
    FnInvariant { name: "lk", summary: "total linking number", f: |d, _| Ok(Value::Int(d.total_linking())) },
    FnInvariant { name: "components", summary: "number of components", f: |d, _| Ok(Value::Int(d.component_count() as i64)) },
    FnInvariant { name: "writhe", summary: "writhe of the diagram", f: |d, _| Ok(Value::Int(d.writhe())) },
    FnInvariant { name: "crossings", summary: "number of crossings", f: |d, _| Ok(Value::Int(d.crossing_count() as i64)) },
    FnInvariant { name: "finite-algebra", summary: "value in a finite Conway algebra (--table)", f: finite_algebra },
];

const ALIASES: &[(&str, &str)] = &[("kauffman", "kauffman-f"), ("jones-conway", "homfly"), ("signature", "supersig")];

pub struct Registry {
    map: BTreeMap<&'static str, Box<dyn Invariant>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { map: BTreeMap::new() }
    }

    /// Every built-in invariant.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        for f in BUILTIN {
            r.register(Box::new(FnInvariant { name: f.name, summary: f.summary, f: f.f }));
        }
        r
    }

    /// Adds or replaces by name.
    pub fn register(&mut self, inv: Box<dyn Invariant>) {
        self.map.insert(inv.name(), inv);
    }

    pub fn get(&self, name: &str) -> Result<&dyn Invariant, InvariantError> {
        let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, t)| t);
        self.map.get(name).map(|b| b.as_ref()).ok_or_else(|| InvariantError::Unknown(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.map.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Invariant> {
        self.map.values().map(|b| b.as_ref())
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}
