//! Built-in Conway algebras.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use super::{evaluate_with, ConwayAlgebra, EvalError, EvalOptions};
use crate::diagram::LinkDiagram;
use crate::poly::{vars, LaurentPoly, Vars};

/// ℤ[x^±, y^±] with x·w(L+) + y·w(L-) = w(L0) and a_n = (x+y)^(n-1).
#[derive(Debug, Clone)]
pub struct HomflyAlgebra {
    vars: Vars,
    x_inv: LaurentPoly,
    y_inv: LaurentPoly,
    x: LaurentPoly,
    y: LaurentPoly,
}

impl HomflyAlgebra {
    pub fn new() -> Self {
        let v = vars(&[("x", 1), ("y", 1)]);
        HomflyAlgebra {
            x_inv: LaurentPoly::monomial(&v, 1, &[-1, 0]),
            y_inv: LaurentPoly::monomial(&v, 1, &[0, -1]),
            x: LaurentPoly::var(&v, "x"),
            y: LaurentPoly::var(&v, "y"),
            vars: v,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }
}

impl Default for HomflyAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl ConwayAlgebra for HomflyAlgebra {
    type Elem = LaurentPoly;

    fn constant(&self, n: usize) -> Result<LaurentPoly, EvalError> {
        Ok((&self.x + &self.y).pow(n as u32 - 1))
    }

    fn bar(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(&(b - &(&self.y * a)) * &self.x_inv)
    }

    fn star(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(&(b - &(&self.x * a)) * &self.y_inv)
    }
}

/// ℤ[z] with w(L+) = w(L-) + z·w(L0); T_1 = 1 and split links vanish.
#[derive(Debug, Clone)]
pub struct ConwayPolyAlgebra {
    z: LaurentPoly,
}

impl ConwayPolyAlgebra {
    pub fn new() -> Self {
        let v = vars(&[("z", 1)]);
        ConwayPolyAlgebra { z: LaurentPoly::var(&v, "z") }
    }
}

impl Default for ConwayPolyAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl ConwayAlgebra for ConwayPolyAlgebra {
    type Elem = LaurentPoly;

    fn constant(&self, n: usize) -> Result<LaurentPoly, EvalError> {
        Ok(LaurentPoly::constant(self.z.vars(), if n == 1 { 1 } else { 0 }))
    }

    fn bar(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(a + &(&self.z * b))
    }

    fn star(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(a - &(&self.z * b))
    }
}

/// ℤ[t^±1/2] with −t·V(L+) + t⁻¹·V(L-) = (t^1/2 − t^-1/2)·V(L0).
#[derive(Debug, Clone)]
pub struct JonesAlgebra {
    vars: Vars,
    delta: LaurentPoly,
}

impl JonesAlgebra {
    pub fn new() -> Self {
        let v = vars(&[("t", 2)]);
        let delta = &LaurentPoly::monomial(&v, 1, &[1]) - &LaurentPoly::monomial(&v, 1, &[-1]);
        JonesAlgebra { vars: v, delta }
    }
}

impl Default for JonesAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl ConwayAlgebra for JonesAlgebra {
    type Elem = LaurentPoly;

    fn constant(&self, n: usize) -> Result<LaurentPoly, EvalError> {
        let base = -(&LaurentPoly::monomial(&self.vars, 1, &[1]) + &LaurentPoly::monomial(&self.vars, 1, &[-1]));
        Ok(base.pow(n as u32 - 1))
    }

    // V+ = t⁻²·V- − t⁻¹·δ·V0
    fn bar(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        let one = BigInt::from(1);
        Ok(&a.shift_units(&one, &[-4]) - &(&self.delta * b).shift_units(&one, &[-2]))
    }

    // V- = t²·V+ + t·δ·V0
    fn star(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        let one = BigInt::from(1);
        Ok(&a.shift_units(&one, &[4]) + &(&self.delta * b).shift_units(&one, &[2]))
    }
}

/// ℤ[x^±, y^±, z] with x·w(L+) + y·w(L-) = w(L0) − z and
/// a_1 = 1, a_(n+1) = (x+y)·a_n + z.
#[derive(Debug, Clone)]
pub struct ThreeVarAlgebra {
    x: LaurentPoly,
    y: LaurentPoly,
    z: LaurentPoly,
    x_inv: LaurentPoly,
    y_inv: LaurentPoly,
}

impl ThreeVarAlgebra {
    pub fn new() -> Self {
        let v = vars(&[("x", 1), ("y", 1), ("z", 1)]);
        ThreeVarAlgebra {
            x: LaurentPoly::var(&v, "x"),
            y: LaurentPoly::var(&v, "y"),
            z: LaurentPoly::var(&v, "z"),
            x_inv: LaurentPoly::monomial(&v, 1, &[-1, 0, 0]),
            y_inv: LaurentPoly::monomial(&v, 1, &[0, -1, 0]),
        }
    }
}

impl Default for ThreeVarAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl ConwayAlgebra for ThreeVarAlgebra {
    type Elem = LaurentPoly;

    fn constant(&self, n: usize) -> Result<LaurentPoly, EvalError> {
        let s = &self.x + &self.y;
        let mut a = LaurentPoly::one(self.x.vars());
        for _ in 1..n {
            a = &(&s * &a) + &self.z;
        }
        Ok(a)
    }

    fn bar(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(&(&(b - &self.z) - &(&self.y * a)) * &self.x_inv)
    }

    fn star(&self, a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(&(&(b - &self.z) - &(&self.x * a)) * &self.y_inv)
    }
}

/// (component count, global linking number).
#[derive(Debug, Clone, Copy, Default)]
pub struct LinkingAlgebra;

impl ConwayAlgebra for LinkingAlgebra {
    type Elem = (usize, i64);

    fn constant(&self, n: usize) -> Result<(usize, i64), EvalError> {
        Ok((n, 0))
    }

    fn bar(&self, a: &(usize, i64), b: &(usize, i64)) -> Result<(usize, i64), EvalError> {
        Ok(if a.0 > b.0 { (a.0, a.1 + 1) } else { *a })
    }

    fn star(&self, a: &(usize, i64), b: &(usize, i64)) -> Result<(usize, i64), EvalError> {
        Ok(if a.0 > b.0 { (a.0, a.1 - 1) } else { *a })
    }
}

/// Free terms over the constants: evaluating a tree in this algebra records
/// the expression the tree realizes, e.g. `a1|(a2|a1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Const(usize),
    Bar(Arc<Term>, Arc<Term>),
    Star(Arc<Term>, Arc<Term>),
}

impl Term {
    /// Re-evaluates the expression in another algebra.
    pub fn eval<A: ConwayAlgebra>(&self, alg: &A) -> Result<A::Elem, EvalError> {
        match self {
            Term::Const(n) => alg.constant(*n),
            Term::Bar(a, b) => alg.bar(&a.eval(alg)?, &b.eval(alg)?),
            Term::Star(a, b) => alg.star(&a.eval(alg)?, &b.eval(alg)?),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let paren = |t: &Term, f: &mut fmt::Formatter<'_>| match t {
            Term::Const(_) => write!(f, "{}", t),
            _ => write!(f, "({})", t),
        };
        match self {
            Term::Const(n) => write!(f, "a{}", n),
            Term::Bar(a, b) => {
                paren(a, f)?;
                write!(f, "|")?;
                paren(b, f)
            }
            Term::Star(a, b) => {
                paren(a, f)?;
                write!(f, "*")?;
                paren(b, f)
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct TermAlgebra;

impl ConwayAlgebra for TermAlgebra {
    type Elem = Term;

    fn constant(&self, n: usize) -> Result<Term, EvalError> {
        Ok(Term::Const(n))
    }

    fn bar(&self, a: &Term, b: &Term) -> Result<Term, EvalError> {
        Ok(Term::Bar(Arc::new(a.clone()), Arc::new(b.clone())))
    }

    fn star(&self, a: &Term, b: &Term) -> Result<Term, EvalError> {
        Ok(Term::Star(Arc::new(a.clone()), Arc::new(b.clone())))
    }
}

fn infallible<T>(r: Result<T, EvalError>) -> T {
    r.expect("total algebra cannot fail")
}

pub fn homfly(d: &LinkDiagram) -> LaurentPoly {
    homfly_with(d, EvalOptions::default())
}

pub fn homfly_with(d: &LinkDiagram, opts: EvalOptions) -> LaurentPoly {
    infallible(evaluate_with(d, &HomflyAlgebra::new(), opts))
}

pub fn conway_poly(d: &LinkDiagram) -> LaurentPoly {
    infallible(evaluate_with(d, &ConwayPolyAlgebra::new(), EvalOptions::default()))
}

pub fn jones(d: &LinkDiagram) -> LaurentPoly {
    infallible(evaluate_with(d, &JonesAlgebra::new(), EvalOptions::default()))
}

pub fn three_var_invariant(d: &LinkDiagram) -> LaurentPoly {
    infallible(evaluate_with(d, &ThreeVarAlgebra::new(), EvalOptions::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conway::evaluate;
    use crate::diagram::parse_braid;
    use crate::poly::parse_poly;

    fn closure(s: &str) -> LinkDiagram {
        parse_braid(s).unwrap().closure()
    }

    #[test]
    fn homfly_small_cases() {
        let a = HomflyAlgebra::new();
        let v = a.vars().clone();
        assert!(homfly(&LinkDiagram::unknot()).is_one());
        assert_eq!(homfly(&LinkDiagram::unlink(3)), parse_poly("(x+y)^2", &v).unwrap());
        // x·P(Hopf) + y·P(T2) = P(T1)
        assert_eq!(homfly(&closure("s1^2")), parse_poly("x^-1 - y - y^2 x^-1", &v).unwrap());
    }

    #[test]
    fn conway_and_jones_small_cases() {
        let z = vars(&[("z", 1)]);
        assert_eq!(conway_poly(&closure("s1^3")), parse_poly("z^2 + 1", &z).unwrap());
        assert_eq!(conway_poly(&closure("s1 s2^-1 s1 s2^-1")), parse_poly("1 - z^2", &z).unwrap());
        assert!(conway_poly(&LinkDiagram::unlink(2)).is_zero());
        assert!(jones(&LinkDiagram::unknot()).is_one());
        let t = vars(&[("t", 2)]);
        // with −t·V(L+) + t⁻¹·V(L-) = (t^1/2 − t^-1/2)·V(L0) the positive trefoil lands on negative powers
        assert_eq!(jones(&closure("s1^3")), parse_poly("t^-1 + t^-3 - t^-4", &t).unwrap());
    }

    #[test]
    fn linking_algebra_counts() {
        assert_eq!(evaluate(&closure("s1^2"), &LinkingAlgebra).unwrap(), (2, 1));
        assert_eq!(evaluate(&closure("s1^-2 s2^3 s1^-2 s2"), &LinkingAlgebra).unwrap(), (3, 0));
    }

    #[test]
    fn trefoil_term() {
        let t = evaluate(&closure("s1^3"), &TermAlgebra).unwrap();
        assert_eq!(t.to_string(), "a1|(a2|a1)");
        let l = evaluate(&closure("s1^-3"), &TermAlgebra).unwrap();
        let four = crate::conway::FiniteAlgebraTable::four_element();
        let mirror_term = crate::conway::Term::Star(
            Arc::new(Term::Const(1)),
            Arc::new(Term::Star(Arc::new(Term::Const(2)), Arc::new(Term::Const(1)))),
        );
        assert_eq!(l.eval(&four).unwrap(), mirror_term.eval(&four).unwrap());
    }

    #[test]
    fn three_var_constants() {
        let a = ThreeVarAlgebra::new();
        let v = a.x.vars().clone();
        assert_eq!(a.constant(2).unwrap(), parse_poly("x + y + z", &v).unwrap());
        // C1: a_n | a_(n+1) = a_n
        for n in 1..5 {
            assert_eq!(a.bar(&a.constant(n).unwrap(), &a.constant(n + 1).unwrap()).unwrap(), a.constant(n).unwrap());
        }
    }
}
