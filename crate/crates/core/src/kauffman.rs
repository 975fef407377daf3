//! Kauffman algebras and regular-isotopy invariants.
//!
//! A Kauffman algebra has an oriented carrier `A` and an unoriented carrier
//! `A'`, constants `a(i,j)`/`a'(i,j)` for the `i`-component descending diagram
//! of writhe `j`, ternary operations `*` and `*'`, and the forgetful map
//! `phi: A -> A'`. The evaluator resolves the first bad crossing `p` into the
//! switched diagram, the oriented smoothing and the unoriented smoothing:
//! `w(L) = w(L switched) * (w(L0), w(Loo))`. Once a diagram has lost its
//! orientation (after any `oo`-smoothing) it is re-oriented arbitrarily and
//! evaluated with `*'`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conway::{EvalError, EvalOptions, ResolvingTree, TreeNode};
use crate::diagram::{LinkDiagram, TrivialForm};
use crate::poly::{vars, LaurentPoly, PolyError, Vars};

pub trait KauffmanAlgebra: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;
    type Elem2: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn constant(&self, i: usize, j: i64) -> Result<Self::Elem, EvalError>;
    fn constant2(&self, i: usize, j: i64) -> Result<Self::Elem2, EvalError>;
    /// `b * (c, d)`: value of `L` from `L` switched, `L0`, `Loo`.
    fn star(&self, b: &Self::Elem, c: &Self::Elem, d: &Self::Elem2) -> Result<Self::Elem, EvalError>;
    fn star2(&self, b: &Self::Elem2, c: &Self::Elem2, d: &Self::Elem2) -> Result<Self::Elem2, EvalError>;
    fn phi(&self, a: &Self::Elem) -> Result<Self::Elem2, EvalError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KauffmanOptions {
    /// Share values of diagrams with equal canonical keys.
    pub cache: bool,
    /// Evaluate the three children concurrently near the root.
    pub parallel: bool,
    /// Re-orient unoriented diagrams randomly (and move their base points)
    /// instead of keeping the orientation the smoothing produced.
    pub reorient_seed: Option<u64>,
    /// Minimize bad crossings by moving base points before each resolution.
    pub rebase: bool,
}

impl Default for KauffmanOptions {
    fn default() -> Self {
        KauffmanOptions { cache: false, parallel: true, reorient_seed: None, rebase: true }
    }
}

impl KauffmanOptions {
    pub fn cached() -> Self {
        KauffmanOptions { cache: true, ..Default::default() }
    }

    /// Cache on for larger inputs, where shared subdiagrams pay off.
    pub fn auto(d: &LinkDiagram) -> Self {
        KauffmanOptions { cache: d.crossing_count() >= 8, ..Default::default() }
    }
}

const PAR_DEPTH: usize = 4;

fn mix(seed: u64, a: u64) -> u64 {
    let mut z = seed ^ a.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

struct Evaluator<'a, A: KauffmanAlgebra> {
    alg: &'a A,
    opts: KauffmanOptions,
    oriented: Mutex<HashMap<Vec<i32>, A::Elem>>,
    unoriented: Mutex<HashMap<Vec<i32>, A::Elem2>>,
}

fn join3<R1: Send, R2: Send, R3: Send>(
    par: bool,
    a: impl FnOnce() -> R1 + Send,
    b: impl FnOnce() -> R2 + Send,
    c: impl FnOnce() -> R3 + Send,
) -> (R1, R2, R3) {
    if par {
        let (x, (y, z)) = rayon::join(a, || rayon::join(b, c));
        (x, y, z)
    } else {
        (a(), b(), c())
    }
}

impl<'a, A: KauffmanAlgebra> Evaluator<'a, A> {
    fn new(alg: &'a A, opts: KauffmanOptions) -> Self {
        Evaluator { alg, opts, oriented: Mutex::new(HashMap::new()), unoriented: Mutex::new(HashMap::new()) }
    }

    fn orient(&self, d: LinkDiagram, seed: u64) -> LinkDiagram {
        let Some(s) = self.opts.reorient_seed else { return d };
        let mut rng = ChaCha8Rng::seed_from_u64(mix(s, seed));
        let mut d = d;
        for i in 0..d.component_count() {
            if rng.gen_bool(0.5) {
                d = d.reverse_component(i).expect("component index in range");
            }
        }
        d.rebase_seeded(rng.gen())
    }

    fn prepare(&self, d: &LinkDiagram) -> LinkDiagram {
        if self.opts.rebase {
            d.min_bad_rebased()
        } else {
            d.clone()
        }
    }

    fn oriented(&self, d: &LinkDiagram, depth: usize, seed: u64) -> Result<A::Elem, EvalError> {
        let key = if self.opts.cache { Some(d.canonical_key()) } else { None };
        if let Some(k) = &key {
            if let Some(v) = self.oriented.lock().unwrap().get(k) {
                return Ok(v.clone());
            }
        }
        let d = &self.prepare(d);
        let v = match d.first_bad() {
            None => {
                let t = d.trivial_form();
                self.alg.constant(t.components, t.writhe)?
            }
            Some(p) => {
                let par = self.opts.parallel && depth < PAR_DEPTH;
                let (b, c, e) = join3(
                    par,
                    || self.oriented(&d.switch_crossing(p).unwrap(), depth + 1, mix(seed, 1)),
                    || self.oriented(&d.smooth_oriented(p).unwrap(), depth + 1, mix(seed, 2)),
                    || {
                        let inf = self.orient(d.smooth_unoriented(p).unwrap(), mix(seed, 3));
                        self.unoriented(&inf, depth + 1, mix(seed, 4))
                    },
                );
                self.alg.star(&b?, &c?, &e?)?
            }
        };
        if let Some(k) = key {
            self.oriented.lock().unwrap().entry(k).or_insert_with(|| v.clone());
        }
        Ok(v)
    }

    fn unoriented(&self, d: &LinkDiagram, depth: usize, seed: u64) -> Result<A::Elem2, EvalError> {
        let key = if self.opts.cache { Some(d.canonical_key()) } else { None };
        if let Some(k) = &key {
            if let Some(v) = self.unoriented.lock().unwrap().get(k) {
                return Ok(v.clone());
            }
        }
        let d = &self.prepare(d);
        let v = match d.first_bad() {
            None => {
                let t = d.trivial_form();
                self.alg.constant2(t.components, t.writhe)?
            }
            Some(p) => {
                let par = self.opts.parallel && depth < PAR_DEPTH;
                let (b, c, e) = join3(
                    par,
                    || self.unoriented(&d.switch_crossing(p).unwrap(), depth + 1, mix(seed, 1)),
                    || {
                        let sm = self.orient(d.smooth_oriented(p).unwrap(), mix(seed, 2));
                        self.unoriented(&sm, depth + 1, mix(seed, 5))
                    },
                    || {
                        let inf = self.orient(d.smooth_unoriented(p).unwrap(), mix(seed, 3));
                        self.unoriented(&inf, depth + 1, mix(seed, 4))
                    },
                );
                self.alg.star2(&b?, &c?, &e?)?
            }
        };
        if let Some(k) = key {
            self.unoriented.lock().unwrap().entry(k).or_insert_with(|| v.clone());
        }
        Ok(v)
    }
}

/// Value of an oriented diagram.
pub fn evaluate_regular<A: KauffmanAlgebra>(d: &LinkDiagram, alg: &A) -> Result<A::Elem, EvalError> {
    evaluate_regular_with(d, alg, KauffmanOptions::auto(d))
}

pub fn evaluate_regular_with<A: KauffmanAlgebra>(
    d: &LinkDiagram,
    alg: &A,
    opts: KauffmanOptions,
) -> Result<A::Elem, EvalError> {
    let ev = Evaluator::new(alg, opts);
    if opts.parallel {
        crate::conway::pool().install(|| ev.oriented(d, 0, 0))
    } else {
        ev.oriented(d, 0, 0)
    }
}

/// Value of `d` with its orientation forgotten.
pub fn evaluate_unoriented_with<A: KauffmanAlgebra>(
    d: &LinkDiagram,
    alg: &A,
    opts: KauffmanOptions,
) -> Result<A::Elem2, EvalError> {
    let ev = Evaluator::new(alg, opts);
    let d = ev.orient(d.clone(), 0);
    if opts.parallel {
        crate::conway::pool().install(|| ev.unoriented(&d, 0, 0))
    } else {
        ev.unoriented(&d, 0, 0)
    }
}

#[derive(Debug)]
pub enum TernaryNode {
    Leaf { form: TrivialForm, oriented: bool },
    Branch { crossing: usize, sign: i8, oriented: bool, switch: Box<TernaryNode>, smooth: Box<TernaryNode>, infinity: Box<TernaryNode> },
}

/// Explicit ternary tree; meant for inspection of small diagrams.
#[derive(Debug)]
pub struct TernaryResolvingTree {
    pub root: TernaryNode,
}

impl TernaryResolvingTree {
    pub fn build(d: &LinkDiagram) -> Self {
        fn go(d: &LinkDiagram, oriented: bool) -> TernaryNode {
            match d.first_bad() {
                None => TernaryNode::Leaf { form: d.trivial_form(), oriented },
                Some(p) => TernaryNode::Branch {
                    crossing: p,
                    sign: d.sign(p),
                    oriented,
                    switch: Box::new(go(&d.switch_crossing(p).unwrap(), oriented)),
                    smooth: Box::new(go(&d.smooth_oriented(p).unwrap(), oriented)),
                    infinity: Box::new(go(&d.smooth_unoriented(p).unwrap(), false)),
                },
            }
        }
        TernaryResolvingTree { root: go(d, true) }
    }

    /// (nodes, leaves, height)
    pub fn stats(&self) -> (usize, usize, usize) {
        fn walk(n: &TernaryNode) -> (usize, usize, usize) {
            match n {
                TernaryNode::Leaf { .. } => (1, 1, 0),
                TernaryNode::Branch { switch, smooth, infinity, .. } => {
                    let (a, b, c) = (walk(switch), walk(smooth), walk(infinity));
                    (1 + a.0 + b.0 + c.0, a.1 + b.1 + c.1, 1 + a.2.max(b.2).max(c.2))
                }
            }
        }
        walk(&self.root)
    }

    pub fn evaluate<A: KauffmanAlgebra>(&self, alg: &A) -> Result<A::Elem, EvalError> {
        fn un<A: KauffmanAlgebra>(n: &TernaryNode, alg: &A) -> Result<A::Elem2, EvalError> {
            match n {
                TernaryNode::Leaf { form, .. } => alg.constant2(form.components, form.writhe),
                TernaryNode::Branch { switch, smooth, infinity, .. } => {
                    alg.star2(&un(switch, alg)?, &un(smooth, alg)?, &un(infinity, alg)?)
                }
            }
        }
        fn or<A: KauffmanAlgebra>(n: &TernaryNode, alg: &A) -> Result<A::Elem, EvalError> {
            match n {
                TernaryNode::Leaf { form, .. } => alg.constant(form.components, form.writhe),
                TernaryNode::Branch { switch, smooth, infinity, .. } => {
                    alg.star(&or(switch, alg)?, &or(smooth, alg)?, &un(infinity, alg)?)
                }
            }
        }
        or(&self.root, alg)
    }
}

fn mono(v: &Vars, c: i64, e: &[i32]) -> LaurentPoly {
    LaurentPoly::monomial(v, c, e)
}

/// Kauffman's L: `L(L+) + L(L-) = z·(L(L0) + L(Loo))`, a curl contributes `a`,
/// `a(i,j) = a^j·mu^(i-1)` with `mu = (a + a^-1)/z − 1`. Both carriers are
/// ℤ[a^±, z^±] and `phi` is the identity.
#[derive(Debug, Clone)]
pub struct KauffmanLAlgebra {
    vars: Vars,
    z: LaurentPoly,
    mu: LaurentPoly,
}

impl KauffmanLAlgebra {
    pub fn new() -> Self {
        let v = vars(&[("a", 1), ("z", 1)]);
        let mu = &(&mono(&v, 1, &[1, -1]) + &mono(&v, 1, &[-1, -1])) - &LaurentPoly::one(&v);
        KauffmanLAlgebra { z: mono(&v, 1, &[0, 1]), mu, vars: v }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }
}

impl Default for KauffmanLAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl KauffmanAlgebra for KauffmanLAlgebra {
    type Elem = LaurentPoly;
    type Elem2 = LaurentPoly;

    fn constant(&self, i: usize, j: i64) -> Result<LaurentPoly, EvalError> {
        Ok(self.mu.pow(i as u32 - 1).shift_units(&BigInt::from(1), &[j as i32, 0]))
    }

    fn constant2(&self, i: usize, j: i64) -> Result<LaurentPoly, EvalError> {
        self.constant(i, j)
    }

    fn star(&self, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(&(&self.z * &(c + d)) - b)
    }

    fn star2(&self, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        self.star(b, c, d)
    }

    fn phi(&self, a: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(a.clone())
    }
}

/// The Jones–Conway–Kauffman algebra over ℤ[a^±, t^±, z]:
/// `b * (c, d) + b = t·c + z·d`, `b *' (c, d) + b = t·c + t·d`, `phi(z) = t`.
#[derive(Debug, Clone)]
pub struct JckAlgebra {
    vars: Vars,
    t: LaurentPoly,
    z: LaurentPoly,
    /// `(a + a^-1)/t`
    s: LaurentPoly,
    /// `s − 1`
    s1: LaurentPoly,
    z_over_t: LaurentPoly,
    /// Use `t·c + z·d` for `*'` as well (not a Kauffman algebra; K6 fails).
    broken_star2: bool,
}

impl JckAlgebra {
    pub fn new() -> Self {
        let v = vars(&[("a", 1), ("t", 1), ("z", 1)]);
        let s = &mono(&v, 1, &[1, -1, 0]) + &mono(&v, 1, &[-1, -1, 0]);
        JckAlgebra {
            t: mono(&v, 1, &[0, 1, 0]),
            z: mono(&v, 1, &[0, 0, 1]),
            s1: &s - &LaurentPoly::one(&v),
            s,
            z_over_t: mono(&v, 1, &[0, -1, 1]),
            broken_star2: false,
            vars: v,
        }
    }

    pub fn with_broken_star2() -> Self {
        JckAlgebra { broken_star2: true, ..Self::new() }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }
}

impl Default for JckAlgebra {
    fn default() -> Self {
        Self::new()
    }
}

impl KauffmanAlgebra for JckAlgebra {
    type Elem = LaurentPoly;
    type Elem2 = LaurentPoly;

    fn constant(&self, i: usize, j: i64) -> Result<LaurentPoly, EvalError> {
        let one = LaurentPoly::one(&self.vars);
        let k = i as u32 - 1;
        let v = &(&self.s.pow(k) * &(&one - &self.z_over_t)) + &(&self.z_over_t * &self.s1.pow(k));
        Ok(v.shift_units(&BigInt::from(1), &[j as i32, 0, 0]))
    }

    fn constant2(&self, i: usize, j: i64) -> Result<LaurentPoly, EvalError> {
        Ok(self.s1.pow(i as u32 - 1).shift_units(&BigInt::from(1), &[j as i32, 0, 0]))
    }

    fn star(&self, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        Ok(&(&(&self.t * c) + &(&self.z * d)) - b)
    }

    fn star2(&self, b: &LaurentPoly, c: &LaurentPoly, d: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        let w = if self.broken_star2 { &self.z } else { &self.t };
        Ok(&(&(&self.t * c) + &(w * d)) - b)
    }

    fn phi(&self, a: &LaurentPoly) -> Result<LaurentPoly, EvalError> {
        a.substitute(&[("z", self.t.clone())], &self.vars).map_err(|e| EvalError::Other(e.to_string()))
    }
}

fn infallible<T>(r: Result<T, EvalError>) -> T {
    r.expect("total algebra cannot fail")
}

fn untwist(p: &LaurentPoly, writhe: i64) -> LaurentPoly {
    let mut e = vec![0; p.vars().len()];
    e[0] = -writhe as i32;
    p.shift_units(&BigInt::from(1), &e)
}

/// Regular-isotopy Kauffman polynomial L(a, z).
pub fn kauffman_l(d: &LinkDiagram) -> LaurentPoly {
    infallible(evaluate_regular(d, &KauffmanLAlgebra::new()))
}

/// F(a, z) = a^(−tw)·L(a, z), an isotopy invariant of oriented links.
pub fn kauffman_f(d: &LinkDiagram) -> LaurentPoly {
    untwist(&kauffman_l(d), d.writhe())
}

/// Q(x) = F(1, x).
pub fn q_polynomial(d: &LinkDiagram) -> LaurentPoly {
    f_to_q(&kauffman_f(d))
}

pub fn f_to_q(f: &LaurentPoly) -> LaurentPoly {
    let xv = vars(&[("x", 1)]);
    f.substitute(&[("a", LaurentPoly::one(&xv)), ("z", LaurentPoly::var(&xv, "x"))], &xv)
        .expect("monomial substitution")
}

/// J(a, t, z), regular-isotopy JCK polynomial.
pub fn jck(d: &LinkDiagram) -> LaurentPoly {
    infallible(evaluate_regular(d, &JckAlgebra::new()))
}

/// J̃ = a^(−tw)·J.
pub fn jck_tilde(d: &LinkDiagram) -> LaurentPoly {
    untwist(&jck(d), d.writhe())
}

/// R(a, z): `R(L+) − R(L-) = z·R(L0)`, `R(T(n,j)) = a^j·((a − a^-1)/z)^(n−1)`.
pub fn homfly_regular(d: &LinkDiagram) -> LaurentPoly {
    let v = vars(&[("a", 1), ("z", 1)]);
    let z = mono(&v, 1, &[0, 1]);
    let delta = &mono(&v, 1, &[1, -1]) - &mono(&v, 1, &[-1, -1]);
    let tree = ResolvingTree::build(d, EvalOptions { cache: d.crossing_count() >= 8, parallel: false, rebase: true });
    let mut memo: HashMap<*const TreeNode, LaurentPoly> = HashMap::new();
    fn go(
        n: &Arc<TreeNode>,
        z: &LaurentPoly,
        delta: &LaurentPoly,
        memo: &mut HashMap<*const TreeNode, LaurentPoly>,
    ) -> LaurentPoly {
        if let Some(v) = memo.get(&Arc::as_ptr(n)) {
            return v.clone();
        }
        let v = match &**n {
            TreeNode::Leaf(t) => delta.pow(t.components as u32 - 1).shift_units(&BigInt::from(1), &[t.writhe as i32, 0]),
            TreeNode::Branch { sign, switch, smooth, .. } => {
                let a = go(switch, z, delta, memo);
                let b = &go(smooth, z, delta, memo) * z;
                if *sign > 0 {
                    &a + &b
                } else {
                    &a - &b
                }
            }
        };
        memo.insert(Arc::as_ptr(n), v.clone());
        v
    }
    go(&tree.root, &z, &delta, &mut memo)
}

/// G(a, z) = a^(−tw)·R(a, z).
pub fn homfly_g(d: &LinkDiagram) -> LaurentPoly {
    untwist(&homfly_regular(d), d.writhe())
}

/// V(t) = F(t^3/4, −(t^-1/4 + t^1/4)), on the quarter grid of t.
pub fn jones_from_kauffman(d: &LinkDiagram) -> LaurentPoly {
    f_to_jones(&kauffman_f(d)).expect("exact substitution")
}

pub fn f_to_jones(f: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    let tv = vars(&[("t", 4)]);
    let a = mono(&tv, 1, &[3]);
    let z = -(&mono(&tv, 1, &[-1]) + &mono(&tv, 1, &[1]));
    f.substitute(&[("a", a), ("z", z)], &tv)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KAxiom {
    K1,
    K2,
    K3,
    K4,
    K5,
    K6,
}

impl fmt::Display for KAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Debug, Clone)]
pub struct KViolation {
    pub axiom: KAxiom,
    pub witness: String,
}

#[derive(Debug, Clone, Default)]
pub struct KauffmanReport {
    pub violations: Vec<KViolation>,
    pub checks: usize,
}

impl KauffmanReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn failed(&self, ax: KAxiom) -> bool {
        self.violations.iter().any(|v| v.axiom == ax)
    }
}

impl fmt::Display for KauffmanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return write!(f, "K1-K6 hold ({} checks)", self.checks);
        }
        for v in &self.violations {
            writeln!(f, "{} fails at {}", v.axiom, v.witness)?;
        }
        Ok(())
    }
}

fn eq<T: PartialEq>(x: Result<T, EvalError>, y: Result<T, EvalError>) -> bool {
    matches!((x, y), (Ok(a), Ok(b)) if a == b)
}

/// Checks K1/K3 on constants `a(i,j)` with `i ≤ 4`, `|j| ≤ 3`, and K2, K4, K5,
/// K6 on up to `budget` tuples drawn from the samples. At most one witness per
/// axiom is kept.
pub fn check_kauffman_axioms<A: KauffmanAlgebra>(
    alg: &A,
    samples: &[A::Elem],
    samples2: &[A::Elem2],
    budget: usize,
    seed: u64,
) -> KauffmanReport {
    let mut rep = KauffmanReport::default();
    let fail = |rep: &mut KauffmanReport, axiom: KAxiom, witness: String| {
        if !rep.failed(axiom) {
            rep.violations.push(KViolation { axiom, witness });
        }
    };
    for i in 1..=4usize {
        for j in -3..=3i64 {
            rep.checks += 2;
            let (Ok(a), Ok(a2)) = (alg.constant(i, j), alg.constant2(i, j)) else {
                fail(&mut rep, KAxiom::K1, format!("a({i},{j}) undefined"));
                continue;
            };
            if !eq(alg.phi(&a), Ok(a2)) {
                fail(&mut rep, KAxiom::K1, format!("i={i}, j={j}"));
            }
            let lhs = (|| alg.star(&alg.constant(i, j - 1)?, &alg.constant(i + 1, j)?, &alg.constant2(i, j)?))();
            if !eq(lhs, alg.constant(i, j + 1)) {
                fail(&mut rep, KAxiom::K3, format!("i={i}, j={j}"));
            }
        }
    }
    if samples.is_empty() || samples2.is_empty() {
        return rep;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng| samples.choose(rng).unwrap().clone();
    let pick2 = |rng: &mut ChaCha8Rng| samples2.choose(rng).unwrap().clone();
    for n in 0..budget {
        let (a, b, d, e) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let (c, f, g, h, i) = (pick2(&mut rng), pick2(&mut rng), pick2(&mut rng), pick2(&mut rng), pick2(&mut rng));
        rep.checks += 4;
        // K2
        let l = (|| alg.phi(&alg.star(&a, &b, &c)?))();
        let r = (|| alg.star2(&alg.phi(&a)?, &alg.phi(&b)?, &c))();
        if !eq(l, r) {
            fail(&mut rep, KAxiom::K2, format!("sample #{n}: a={a:?}, b={b:?}, c={c:?}"));
        }
        // K5
        if !eq((|| alg.star(&alg.star(&a, &b, &c)?, &b, &c))(), Ok(a.clone())) {
            fail(&mut rep, KAxiom::K5, format!("sample #{n}: a={a:?}, b={b:?}, c={c:?}"));
        }
        // K6
        if !eq(alg.star2(&f, &g, &h), alg.star2(&f, &h, &g)) {
            fail(&mut rep, KAxiom::K6, format!("sample #{n}: a={f:?}, b={g:?}, c={h:?}"));
        }
        // K4
        let l = (|| alg.star(&alg.star(&a, &b, &c)?, &alg.star(&d, &e, &f)?, &alg.star2(&g, &h, &i)?))();
        let r = (|| alg.star(&alg.star(&a, &d, &g)?, &alg.star(&b, &e, &h)?, &alg.star2(&c, &f, &i)?))();
        if !eq(l, r) {
            fail(&mut rep, KAxiom::K4, format!("sample #{n}"));
        }
    }
    rep
}

/// Random sparse polynomials over `v` with small coefficients, for axiom checks.
pub fn random_polys(v: &Vars, count: usize, seed: u64, skip: &[&str]) -> Vec<LaurentPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let terms = rng.gen_range(1..=4);
            let mut p = LaurentPoly::zero(v);
            for _ in 0..terms {
                let e: Vec<i32> = v
                    .iter()
                    .map(|s| if skip.contains(&s.name.as_str()) { 0 } else { rng.gen_range(-2..=2) * s.den as i32 })
                    .collect();
                p = &p + &mono(v, rng.gen_range(-3..=3), &e);
            }
            p
        })
        .collect()
}
