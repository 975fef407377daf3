//! Sparse multivariate Laurent polynomials with integer coefficients.
//!
//! Each variable carries an exponent grid: exponents are stored as integers in
//! units of `1/den`, so `t^{1/2}` on a grid of denominator 2 is stored as `t^1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;
use thiserror::Error;

pub type Exps = SmallVec<[i32; 3]>;
pub type Rational = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: [{0}] vs [{1}]")]
    VarMismatch(String, String),
    #[error("exponent {exp} of `{var}` is not a multiple of 1/{den}")]
    OffGrid { var: String, exp: Rational, den: u32 },
    #[error("image of `{0}` is not invertible but the polynomial has a negative or fractional power of it")]
    NonInvertible(String),
    #[error("evaluation at zero of `{0}` which occurs with a negative exponent")]
    EvalAtZero(String),
    #[error("reduced degree of the zero polynomial")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("division is not exact")]
    NotDivisible,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VarSpec {
    pub name: String,
    pub den: u32,
}

impl VarSpec {
    pub fn new(name: &str, den: u32) -> Self {
        assert!(den >= 1, "grid denominator must be positive");
        VarSpec { name: name.to_string(), den }
    }
}

/// Shared variable list; cloning a polynomial never copies it.
pub type Vars = Arc<[VarSpec]>;

pub fn vars(specs: &[(&str, u32)]) -> Vars {
    specs.iter().map(|&(n, d)| VarSpec::new(n, d)).collect::<Vec<_>>().into()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exps, BigInt>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({})", self)
    }
}

fn var_list(v: &[VarSpec]) -> String {
    v.iter()
        .map(|s| if s.den == 1 { s.name.clone() } else { format!("{}/{}", s.name, s.den) })
        .collect::<Vec<_>>()
        .join(",")
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        LaurentPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &Vars, c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, c, &vec![0; vars.len()])
    }

    /// `c · Π var^(units/den)` with exponents given in grid units.
    pub fn monomial(vars: &Vars, c: impl Into<BigInt>, units: &[i32]) -> Self {
        assert_eq!(units.len(), vars.len());
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(units.iter().copied().collect(), c);
        }
        LaurentPoly { vars: vars.clone(), terms }
    }

    /// The variable `name` to the first power (one grid step times `den`).
    pub fn var(vars: &Vars, name: &str) -> Self {
        let i = vars.iter().position(|v| v.name == name).expect("unknown variable");
        let mut e = vec![0; vars.len()];
        e[i] = vars[i].den as i32;
        Self::monomial(vars, 1, &e)
    }

    /// Monomial with rational exponents, checked against each grid.
    pub fn monomial_rational(vars: &Vars, c: impl Into<BigInt>, exps: &[Rational]) -> Result<Self, PolyError> {
        let units = to_units(vars, exps)?;
        Ok(Self::monomial(vars, c, &units))
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exps, BigInt)>) -> Self {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len());
            p.add_term(e, c);
        }
        p
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical storage order, exponents in grid units.
    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, units: &[i32]) -> BigInt {
        let key: Exps = units.iter().copied().collect();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(var_list(&self.vars), var_list(&other.vars)))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exps = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by `coeff · Π var^exps` (exponents are rationals checked against the grids).
    pub fn mul_monomial(&self, coeff: impl Into<BigInt>, exps: &[Rational]) -> Result<Self, PolyError> {
        let units = to_units(&self.vars, exps)?;
        Ok(self.shift_units(&coeff.into(), &units))
    }

    /// Same as [`mul_monomial`](Self::mul_monomial) with exponents already in grid units.
    pub fn shift_units(&self, coeff: &BigInt, units: &[i32]) -> Self {
        assert_eq!(units.len(), self.vars.len());
        if coeff.is_zero() {
            return Self::zero(&self.vars);
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(units).map(|(a, b)| a + b).collect(), c * coeff))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars.iter().position(|v| v.name == name).ok_or_else(|| PolyError::UnknownVar(name.into()))
    }

    /// Highest minus lowest exponent of `var`, as a rational.
    pub fn reduced_degree(&self, var: &str) -> Result<Rational, PolyError> {
        let i = self.var_index(var)?;
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        let lo = self.terms.keys().map(|e| e[i]).min().unwrap();
        let hi = self.terms.keys().map(|e| e[i]).max().unwrap();
        Ok(Rational::new((hi - lo) as i64, self.vars[i].den as i64))
    }

    /// Lowest and highest exponent of `var` in grid units.
    pub fn degree_span_units(&self, i: usize) -> Option<(i32, i32)> {
        let lo = self.terms.keys().map(|e| e[i]).min()?;
        let hi = self.terms.keys().map(|e| e[i]).max()?;
        Some((lo, hi))
    }

    /// Moves the polynomial onto a different variable list (by name); every
    /// current variable must exist in `target` and every exponent must fit the
    /// target grid.
    pub fn lift(&self, target: &Vars) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|t| t.name == v.name).ok_or_else(|| PolyError::UnknownVar(v.name.clone())))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne: Exps = SmallVec::from_elem(0, target.len());
            for (k, &j) in map.iter().enumerate() {
                let num = e[k] as i64 * target[j].den as i64;
                let den = self.vars[k].den as i64;
                if num % den != 0 {
                    return Err(PolyError::OffGrid {
                        var: self.vars[k].name.clone(),
                        exp: Rational::new(e[k] as i64, den),
                        den: target[j].den,
                    });
                }
                ne[j] = (num / den) as i32;
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitutes each variable by a polynomial over a common target variable
    /// list. Unassigned variables are carried over by name. Negative powers of
    /// a non-monomial image are handled by clearing denominators and dividing
    /// exactly; if the division is not exact the image counts as non-invertible.
    pub fn substitute(&self, assignment: &[(&str, LaurentPoly)], target: &Vars) -> Result<Self, PolyError> {
        for (_, img) in assignment {
            if img.vars != *target {
                return Err(PolyError::VarMismatch(var_list(&img.vars), var_list(target)));
            }
        }
        let mut images: Vec<LaurentPoly> = Vec::with_capacity(self.vars.len());
        for v in self.vars.iter() {
            match assignment.iter().find(|(n, _)| *n == v.name) {
                Some((_, img)) => images.push(img.clone()),
                None => {
                    let j = target.iter().position(|t| t.name == v.name).ok_or_else(|| PolyError::UnknownVar(v.name.clone()))?;
                    let mut e = vec![0; target.len()];
                    e[j] = target[j].den as i32;
                    images.push(LaurentPoly::monomial(target, 1, &e));
                }
            }
        }

        // Per variable: how far below zero the exponents go (in whole powers),
        // used to clear denominators of non-monomial images.
        let mut clear = vec![0i32; self.vars.len()];
        for (k, img) in images.iter().enumerate() {
            let den = self.vars[k].den as i32;
            let unit = img.as_unit_monomial();
            let Some((lo, _)) = self.degree_span_units(k) else { continue };
            let fractional = self.terms.keys().any(|e| e[k] % den != 0);
            if unit.is_none() {
                if fractional {
                    return Err(PolyError::NonInvertible(self.vars[k].name.clone()));
                }
                if lo < 0 {
                    clear[k] = -lo / den;
                }
            } else if fractional {
                let (c, _) = unit.unwrap();
                if !c.is_one() {
                    return Err(PolyError::NonInvertible(self.vars[k].name.clone()));
                }
            }
        }

        let mut num = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (k, img) in images.iter().enumerate() {
                let den = self.vars[k].den as i32;
                let factor = if let Some((uc, ue)) = img.as_unit_monomial() {
                    // (uc · m)^(e/den): the unit coefficient only takes integer powers
                    let mut units: Vec<i32> = Vec::with_capacity(target.len());
                    for (j, &x) in ue.iter().enumerate() {
                        let prod = x as i64 * e[k] as i64;
                        if prod % den as i64 != 0 {
                            return Err(PolyError::OffGrid {
                                var: target[j].name.clone(),
                                exp: Rational::new(prod, den as i64 * target[j].den as i64),
                                den: target[j].den,
                            });
                        }
                        units.push((prod / den as i64) as i32);
                    }
                    let sign = if uc.is_negative() && (e[k] / den) % 2 != 0 { -1 } else { 1 };
                    Self::monomial(target, sign, &units)
                } else {
                    let p = e[k] / den + clear[k];
                    debug_assert!(p >= 0);
                    img.pow(p as u32)
                };
                term = &term * &factor;
            }
            num = &num + &term;
        }
        let mut denom = Self::one(target);
        for (k, img) in images.iter().enumerate() {
            if clear[k] > 0 {
                denom = &denom * &img.pow(clear[k] as u32);
            }
        }
        if denom.is_one() {
            return Ok(num);
        }
        num.div_exact(&denom).map_err(|_| {
            let k = clear.iter().position(|&c| c > 0).unwrap();
            PolyError::NonInvertible(self.vars[k].name.clone())
        })
    }

    /// `Some((c, units))` when the polynomial is a single term with coefficient ±1.
    pub fn as_unit_monomial(&self) -> Option<(BigInt, Exps)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.abs().is_one() {
            Some((c.clone(), e.clone()))
        } else {
            None
        }
    }

    /// Exact division by a nonzero polynomial; errors if there is a remainder.
    pub fn div_exact(&self, d: &Self) -> Result<Self, PolyError> {
        self.check_vars(d)?;
        if d.is_zero() {
            return Err(PolyError::NotDivisible);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        // lex order on grid exponents; leading term = greatest key
        let (dl, dc) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let n = self.vars.len();
        let spans_p: Vec<(i32, i32)> = (0..n).map(|i| self.degree_span_units(i).unwrap()).collect();
        let spans_d: Vec<(i32, i32)> = (0..n).map(|i| d.degree_span_units(i).unwrap()).collect();
        let mut rem = self.clone();
        let mut q = Self::zero(&self.vars);
        while let Some((re, rc)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(PolyError::NotDivisible);
            }
            let qe: Exps = re.iter().zip(dl.iter()).map(|(a, b)| a - b).collect();
            // any quotient term must lie within the degree box implied by the spans
            for i in 0..n {
                if qe[i] < spans_p[i].0 - spans_d[i].0 || qe[i] > spans_p[i].1 - spans_d[i].1 {
                    return Err(PolyError::NotDivisible);
                }
            }
            rem = &rem - &d.shift_units(&qc, &qe);
            q.add_term(qe, qc);
        }
        Ok(q)
    }

    /// Evaluates at a complex point (principal branch for fractional powers).
    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64, PolyError> {
        assert_eq!(point.len(), self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            if point[i] == Complex64::new(0.0, 0.0) && self.terms.keys().any(|e| e[i] < 0) {
                return Err(PolyError::EvalAtZero(v.name.clone()));
            }
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for (i, v) in self.vars.iter().enumerate() {
                if e[i] == 0 {
                    continue;
                }
                if e[i] % v.den as i32 == 0 {
                    t *= point[i].powi(e[i] / v.den as i32);
                } else {
                    t *= point[i].powf(e[i] as f64 / v.den as f64);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation at rational points (integer exponents only).
    pub fn eval_rational(&self, point: &[Ratio<BigInt>]) -> Result<Ratio<BigInt>, PolyError> {
        assert_eq!(point.len(), self.vars.len());
        let mut acc = Ratio::<BigInt>::zero();
        for (e, c) in &self.terms {
            let mut t = Ratio::from_integer(c.clone());
            for (i, v) in self.vars.iter().enumerate() {
                if e[i] % v.den as i32 != 0 {
                    return Err(PolyError::OffGrid { var: v.name.clone(), exp: Rational::new(e[i] as i64, v.den as i64), den: 1 });
                }
                let k = e[i] / v.den as i32;
                if k < 0 && point[i].is_zero() {
                    return Err(PolyError::EvalAtZero(v.name.clone()));
                }
                t *= num_traits::pow::Pow::pow(&point[i], k);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Terms sorted for display: descending total degree, then descending lex.
    pub fn display_terms(&self) -> Vec<(Vec<Rational>, BigInt)> {
        let mut v: Vec<(Vec<Rational>, BigInt)> = self
            .terms
            .iter()
            .map(|(e, c)| {
                (e.iter().zip(self.vars.iter()).map(|(&x, s)| Rational::new(x as i64, s.den as i64)).collect(), c.clone())
            })
            .collect();
        v.sort_by(|(a, _), (b, _)| {
            let da: Rational = a.iter().copied().sum();
            let db: Rational = b.iter().copied().sum();
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        v
    }

    /// Parses the text grammar (see [`parse_poly`]).
    pub fn parse(text: &str, vars: &Vars) -> Result<Self, PolyError> {
        parse_poly(text, vars)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let coeff = match c.to_i64() {
                    Some(k) => serde_json::Value::from(k),
                    None => serde_json::Value::from(c.to_string()),
                };
                serde_json::json!([e.to_vec(), coeff])
            })
            .collect();
        serde_json::json!({ "vars": self.vars.to_vec(), "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, PolyError> {
        let bad = |m: &str| PolyError::Parse { pos: 0, msg: m.to_string() };
        let specs: Vec<VarSpec> =
            serde_json::from_value(v.get("vars").cloned().ok_or_else(|| bad("missing vars"))?).map_err(|e| bad(&e.to_string()))?;
        let vs: Vars = specs.into();
        let mut p = Self::zero(&vs);
        for t in v.get("terms").and_then(|t| t.as_array()).ok_or_else(|| bad("missing terms"))? {
            let e: Vec<i32> = serde_json::from_value(t.get(0).cloned().ok_or_else(|| bad("term"))?).map_err(|e| bad(&e.to_string()))?;
            if e.len() != vs.len() {
                return Err(bad("exponent vector length"));
            }
            let c = match t.get(1) {
                Some(serde_json::Value::Number(n)) => BigInt::from(n.as_i64().ok_or_else(|| bad("coefficient"))?),
                Some(serde_json::Value::String(s)) => s.parse().map_err(|_| bad("coefficient"))?,
                _ => return Err(bad("coefficient")),
            };
            p.add_term(e.into_iter().collect(), c);
        }
        Ok(p)
    }
}

fn to_units(vars: &Vars, exps: &[Rational]) -> Result<Vec<i32>, PolyError> {
    assert_eq!(exps.len(), vars.len());
    exps.iter()
        .zip(vars.iter())
        .map(|(e, v)| {
            let u = *e * Rational::from_integer(v.den as i64);
            if u.is_integer() {
                Ok(u.to_integer() as i32)
            } else {
                Err(PolyError::OffGrid { var: v.name.clone(), exp: *e, den: v.den })
            }
        })
        .collect()
}

fn fmt_exp(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.display_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(x, _)| !x.is_zero())
                .map(|(x, v)| if x.is_one() { v.name.clone() } else { format!("{}^{}", v.name, fmt_exp(x)) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "{}", mono.join(" "))?;
            } else if (-&c).is_one() {
                write!(f, "-{}", mono.join(" "))?;
            } else {
                write!(f, "{} * {}", c, mono.join(" "))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<'a> $tr<&'a LaurentPoly> for &'a LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &'a LaurentPoly) -> LaurentPoly {
                self.$try(rhs).expect("polynomial variable lists differ")
            }
        }
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$try(&rhs).expect("polynomial variable lists differ")
            }
        }
    };
}
forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Parses expressions such as `x^-1 - y - y^2 x^-1`, `2 * t^1/2`, or
/// `z(a^-3 + a^-5 + t a^-4)`. Juxtaposition and `*` both multiply; variables
/// take rational exponents (`t^1/2`, `t^{-1/4}`, `t^(3/4)`); parenthesised
/// groups take nonnegative integer exponents.
pub fn parse_poly(text: &str, vars: &Vars) -> Result<LaurentPoly, PolyError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, vars };
    let out = p.expr()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    vars: &'a Vars,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    // tolerate the canonical "a + -b" form
                    if self.peek() == Some(b'-') {
                        self.pos += 1;
                        acc = &acc - &self.term()?;
                    } else {
                        acc = &acc + &self.term()?;
                    }
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<LaurentPoly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        -self.factor()?
                    } else {
                        self.factor()?
                    };
                    acc = &acc * &f;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().map_err(|_| self.err("bad integer"))
    }

    fn signed_small(&mut self) -> Result<i64, PolyError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            if self.peek() == Some(b'+') {
                self.pos += 1;
            }
            false
        };
        let v = self.integer()?.to_i64().ok_or_else(|| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<Rational, PolyError> {
        let close = match self.peek() {
            Some(b'{') => Some(b'}'),
            Some(b'(') => Some(b')'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        let num = self.signed_small()?;
        let mut den = 1;
        if self.s.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            den = self.integer()?.to_i64().filter(|d| *d > 0).ok_or_else(|| self.err("bad exponent denominator"))?;
        }
        if let Some(c) = close {
            if self.peek() != Some(c) {
                return Err(self.err("unclosed exponent"));
            }
            self.pos += 1;
        }
        Ok(Rational::new(num, den))
    }

    fn factor(&mut self) -> Result<LaurentPoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.exponent()?;
                    if !e.is_integer() || e.is_negative() {
                        return Err(self.err("group exponent must be a nonnegative integer"));
                    }
                    return Ok(inner.pow(e.to_integer() as u32));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(LaurentPoly::constant(self.vars, n))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                // variable names are single letters so that "xy" reads as x·y
                self.pos += 1;
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                let i = self.vars.iter().position(|v| v.name == name).ok_or_else(|| PolyError::Parse {
                    pos: start,
                    msg: format!("unknown variable `{}`", name),
                })?;
                let mut e = Rational::one();
                if self.s.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    e = self.exponent()?;
                }
                let mut exps = vec![Rational::zero(); self.vars.len()];
                exps[i] = e;
                LaurentPoly::monomial_rational(self.vars, 1, &exps).map_err(|_| PolyError::Parse {
                    pos: start,
                    msg: format!("exponent {} of `{}` is off its grid", e, name),
                })
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

impl FromStr for VarSpec {
    type Err = PolyError;
    fn from_str(s: &str) -> Result<Self, PolyError> {
        match s.split_once('/') {
            None => Ok(VarSpec::new(s, 1)),
            Some((n, d)) => {
                let den: u32 = d.parse().map_err(|_| PolyError::Parse { pos: n.len() + 1, msg: "bad grid".into() })?;
                if den == 0 {
                    return Err(PolyError::Parse { pos: n.len() + 1, msg: "zero grid".into() });
                }
                Ok(VarSpec::new(n, den))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        vars(&[("x", 1), ("y", 1)])
    }

    fn p(s: &str) -> LaurentPoly {
        parse_poly(s, &xy()).unwrap()
    }

    #[test]
    fn add_and_mul_basics() {
        assert!((p("x") + p("-x")).is_zero());
        assert_eq!(p("x+y") + p("x+y"), p("2x + 2y"));
        assert_eq!(p("x^-1 - y") + p("y"), p("x^-1"));
        assert_eq!(p("x+y") * p("1"), p("x+y"));
        assert_eq!(p("x+y") * p("x+y"), p("x^2 + 2 x y + y^2"));
        assert!((p("x") * p("x^-1")).is_one());
    }

    #[test]
    fn monomial_shift_and_grids() {
        let s = p("x+y").mul_monomial(1, &[Rational::from_integer(-1), Rational::zero()]).unwrap();
        assert_eq!(s, p("1 + x^-1 y"));
        let t = vars(&[("t", 2)]);
        let half = LaurentPoly::one(&t).mul_monomial(1, &[Rational::new(1, 2)]).unwrap();
        assert_eq!(half.to_string(), "t^1/2");
        let e = LaurentPoly::one(&t).mul_monomial(1, &[Rational::new(1, 3)]);
        assert!(matches!(e, Err(PolyError::OffGrid { .. })));
    }

    #[test]
    fn mismatched_vars_are_rejected() {
        let a = LaurentPoly::one(&xy());
        let b = LaurentPoly::one(&vars(&[("z", 1)]));
        assert!(matches!(a.try_add(&b), Err(PolyError::VarMismatch(..))));
    }

    #[test]
    fn substitution_conway_split_link() {
        let z = vars(&[("z", 1)]);
        let inv = parse_poly("z^-1", &z).unwrap();
        let out = p("x+y").substitute(&[("x", inv.clone()), ("y", -inv)], &z).unwrap();
        assert!(out.is_zero());
        let same = p("x").substitute(&[], &xy()).unwrap();
        assert_eq!(same, p("x"));
    }

    #[test]
    fn substitution_with_binomial_image_needs_exact_division() {
        let az = vars(&[("a", 1), ("z", 1)]);
        let t = vars(&[("t", 4)]);
        let zimg = parse_poly("-(t^-1/4 + t^1/4)", &t).unwrap();
        let aimg = parse_poly("t^3/4", &t).unwrap();
        // (z^2 + z) / z = z + 1 is a polynomial in z, so it substitutes fine
        let q = parse_poly("z + 1", &az).unwrap();
        let got = q.substitute(&[("a", aimg.clone()), ("z", zimg.clone())], &t).unwrap();
        assert_eq!(got, parse_poly("1 - t^-1/4 - t^1/4", &t).unwrap());
        // a/z has no Laurent image
        let r = parse_poly("a z^-1", &az).unwrap();
        assert!(matches!(r.substitute(&[("a", aimg), ("z", zimg)], &t), Err(PolyError::NonInvertible(_))));
    }

    #[test]
    fn complex_evaluation() {
        let c = |re: f64| Complex64::new(re, 0.0);
        assert!((p("x+y").eval_complex(&[c(1.0), c(1.0)]).unwrap() - c(2.0)).norm() < 1e-12);
        assert!((p("x y^-1").eval_complex(&[c(2.0), c(4.0)]).unwrap() - c(0.5)).norm() < 1e-12);
        assert!(matches!(p("x^-1").eval_complex(&[c(0.0), c(1.0)]), Err(PolyError::EvalAtZero(_))));
    }

    #[test]
    fn reduced_degree_examples() {
        let t = vars(&[("t", 1)]);
        assert_eq!(parse_poly("t^2 + t^-1", &t).unwrap().reduced_degree("t").unwrap(), Rational::from_integer(3));
        assert_eq!(parse_poly("7", &t).unwrap().reduced_degree("t").unwrap(), Rational::zero());
        assert_eq!(LaurentPoly::zero(&t).reduced_degree("t"), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn text_and_json_round_trip() {
        let q = p("x^-1 - y - y^2 x^-1 + 12345678901234567890123 x^3 y^-2");
        assert_eq!(parse_poly(&q.to_string(), &xy()).unwrap(), q);
        assert_eq!(LaurentPoly::from_json(&q.to_json()).unwrap(), q);
    }

    #[test]
    fn exact_division() {
        let d = p("x + y - 1");
        let q = p("x^-2 y + 3 - y^4");
        assert_eq!((&d * &q).div_exact(&d).unwrap(), q);
        assert_eq!(p("x + 1").div_exact(&p("x - 1")), Err(PolyError::NotDivisible));
    }

    #[test]
    fn parse_errors_carry_positions() {
        match parse_poly("x + * y", &xy()) {
            Err(PolyError::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{:?}", other),
        }
    }
}
