//! Conway algebras and the resolving-tree evaluator.
//!
//! A Conway algebra supplies constants `a_n` (the value of the n-component
//! trivial link) and two operations: `w(L+) = w(L-) | w(L0)` and
//! `w(L-) = w(L+) * w(L0)`. Walking the diagram from its base points, the first
//! crossing met from below is switched and smoothed; leaves are descending
//! diagrams and get the constant for their component count.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::diagram::{LinkDiagram, TrivialForm};

pub mod algebras;
pub mod finite;
pub mod simplex;

pub use algebras::{
    conway_poly, homfly, homfly_with, jones, three_var_invariant, ConwayPolyAlgebra, HomflyAlgebra, JonesAlgebra, LinkingAlgebra,
    Term, TermAlgebra, ThreeVarAlgebra,
};
pub use finite::{check_axioms, AxiomReport, FiniteAlgebraTable};
pub use simplex::{weighted_simplex, WeightedSimplex};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("operation {op} is undefined on ({left}, {right})")]
    Undefined { op: &'static str, left: String, right: String },
    #[error("constant a_{0} is undefined")]
    UndefinedConstant(usize),
    #[error("numerically ambiguous value {value:e} (tolerance {eps:e})")]
    Ambiguous { value: f64, eps: f64 },
    /// Two resolving trees of the same diagram gave different values.
    #[error("value depends on the resolving tree ({0} vs {1})")]
    TreeDependent(String, String),
    #[error("{0}")]
    Other(String),
}

/// Constants and the two operations. Implementations must be pure so that
/// subtrees can be evaluated on different threads.
pub trait ConwayAlgebra: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn constant(&self, n: usize) -> Result<Self::Elem, EvalError>;
    /// `w(L-) | w(L0)`, the value of `L+`.
    fn bar(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, EvalError>;
    /// `w(L+) * w(L0)`, the value of `L-`.
    fn star(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, EvalError>;
}

#[derive(Debug)]
pub enum TreeNode {
    Leaf(TrivialForm),
    Branch { crossing: usize, sign: i8, switch: Arc<TreeNode>, smooth: Arc<TreeNode> },
}

#[derive(Debug, Clone)]
pub struct ResolvingTree {
    pub root: Arc<TreeNode>,
    /// Whether identical subdiagrams were shared while building.
    pub shared: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TreeStats {
    pub nodes: usize,
    pub leaves: usize,
    pub height: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    /// Share subtrees of diagrams with equal canonical keys.
    pub cache: bool,
    /// Evaluate sibling subtrees concurrently.
    pub parallel: bool,
    /// Before resolving a node, move base points and reorder components so
    /// that it has as few bad crossings as possible. Off gives the plain
    /// walk-from-the-given-base-points procedure.
    pub rebase: bool,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { cache: false, parallel: true, rebase: true }
    }
}

impl EvalOptions {
    pub fn cached() -> Self {
        EvalOptions { cache: true, parallel: true, rebase: true }
    }

    /// Walks from the diagram's own base points; no caching, no threads.
    pub fn literal() -> Self {
        EvalOptions { cache: false, parallel: false, rebase: false }
    }

    pub fn sequential() -> Self {
        EvalOptions { cache: false, parallel: false, rebase: true }
    }
}

/// Thread pool sized by `CONWAYKIT_THREADS` (default: rayon's choice).
pub fn pool() -> &'static rayon::ThreadPool {
    static POOL: OnceLock<rayon::ThreadPool> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(n) = std::env::var("CONWAYKIT_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
            b = b.num_threads(n.max(1));
        }
        b.build().expect("thread pool")
    })
}

const PAR_DEPTH: usize = 6;

impl ResolvingTree {
    pub fn build(d: &LinkDiagram, opts: EvalOptions) -> Self {
        if opts.cache {
            let cache = Mutex::new(HashMap::new());
            ResolvingTree { root: build_cached(d, &cache, opts.rebase), shared: true }
        } else {
            ResolvingTree { root: build_plain(d, opts.rebase), shared: false }
        }
    }

    pub fn stats(&self) -> TreeStats {
        fn walk(n: &TreeNode) -> TreeStats {
            match n {
                TreeNode::Leaf(_) => TreeStats { nodes: 1, leaves: 1, height: 0 },
                TreeNode::Branch { switch, smooth, .. } => {
                    let a = walk(switch);
                    let b = walk(smooth);
                    TreeStats { nodes: 1 + a.nodes + b.nodes, leaves: a.leaves + b.leaves, height: 1 + a.height.max(b.height) }
                }
            }
        }
        walk(&self.root)
    }

    pub fn evaluate<A: ConwayAlgebra>(&self, alg: &A, opts: EvalOptions) -> Result<A::Elem, EvalError> {
        if self.shared {
            let mut memo = HashMap::new();
            eval_memo(&self.root, alg, &mut memo)
        } else if opts.parallel {
            pool().install(|| eval_par(&self.root, alg, 0))
        } else {
            eval_par(&self.root, alg, PAR_DEPTH)
        }
    }
}

fn prepare(d: &LinkDiagram, rebase: bool) -> std::borrow::Cow<'_, LinkDiagram> {
    if rebase {
        std::borrow::Cow::Owned(d.min_bad_rebased())
    } else {
        std::borrow::Cow::Borrowed(d)
    }
}

fn build_plain(d: &LinkDiagram, rebase: bool) -> Arc<TreeNode> {
    let d = prepare(d, rebase);
    match d.first_bad() {
        None => Arc::new(TreeNode::Leaf(d.trivial_form())),
        Some(p) => {
            let switch = build_plain(&d.switch_crossing(p).unwrap(), rebase);
            let smooth = build_plain(&d.smooth_oriented(p).unwrap(), rebase);
            Arc::new(TreeNode::Branch { crossing: p, sign: d.sign(p), switch, smooth })
        }
    }
}

fn build_cached(d: &LinkDiagram, cache: &Mutex<HashMap<Vec<i32>, Arc<TreeNode>>>, rebase: bool) -> Arc<TreeNode> {
    let key = d.canonical_key();
    if let Some(n) = cache.lock().unwrap().get(&key) {
        return n.clone();
    }
    let d = prepare(d, rebase);
    let node = match d.first_bad() {
        None => Arc::new(TreeNode::Leaf(d.trivial_form())),
        Some(p) => {
            let switch = build_cached(&d.switch_crossing(p).unwrap(), cache, rebase);
            let smooth = build_cached(&d.smooth_oriented(p).unwrap(), cache, rebase);
            Arc::new(TreeNode::Branch { crossing: p, sign: d.sign(p), switch, smooth })
        }
    };
    cache.lock().unwrap().entry(key).or_insert(node).clone()
}

fn combine<A: ConwayAlgebra>(alg: &A, sign: i8, sw: &A::Elem, sm: &A::Elem) -> Result<A::Elem, EvalError> {
    if sign > 0 {
        alg.bar(sw, sm)
    } else {
        alg.star(sw, sm)
    }
}

fn eval_par<A: ConwayAlgebra>(n: &TreeNode, alg: &A, depth: usize) -> Result<A::Elem, EvalError> {
    match n {
        TreeNode::Leaf(t) => alg.constant(t.components),
        TreeNode::Branch { sign, switch, smooth, .. } => {
            let (a, b) = if depth < PAR_DEPTH {
                rayon::join(|| eval_par(switch, alg, depth + 1), || eval_par(smooth, alg, depth + 1))
            } else {
                (eval_par(switch, alg, depth), eval_par(smooth, alg, depth))
            };
            combine(alg, *sign, &a?, &b?)
        }
    }
}

fn eval_memo<A: ConwayAlgebra>(
    n: &Arc<TreeNode>,
    alg: &A,
    memo: &mut HashMap<*const TreeNode, A::Elem>,
) -> Result<A::Elem, EvalError> {
    let key = Arc::as_ptr(n);
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let v = match &**n {
        TreeNode::Leaf(t) => alg.constant(t.components)?,
        TreeNode::Branch { sign, switch, smooth, .. } => {
            let a = eval_memo(switch, alg, memo)?;
            let b = eval_memo(smooth, alg, memo)?;
            combine(alg, *sign, &a, &b)?
        }
    };
    memo.insert(key, v.clone());
    Ok(v)
}

/// Builds the resolving tree of `d` and evaluates it in `alg`.
pub fn evaluate<A: ConwayAlgebra>(d: &LinkDiagram, alg: &A) -> Result<A::Elem, EvalError> {
    evaluate_with(d, alg, EvalOptions::default())
}

pub fn evaluate_with<A: ConwayAlgebra>(d: &LinkDiagram, alg: &A, opts: EvalOptions) -> Result<A::Elem, EvalError> {
    ResolvingTree::build(d, opts).evaluate(alg, opts)
}

/// True iff `tau` fixes the constants `a_1..a_n` listed, is an involution on
/// the samples, and swaps `|` with `*` on all sample pairs.
pub fn mirror_involution_check<A: ConwayAlgebra>(
    alg: &A,
    tau: impl Fn(&A::Elem) -> A::Elem,
    samples: &[A::Elem],
    constants: usize,
) -> bool {
    for n in 1..=constants {
        match alg.constant(n) {
            Ok(c) if tau(&c) == c => {}
            _ => return false,
        }
    }
    for a in samples {
        if tau(&tau(a)) != *a {
            return false;
        }
        for b in samples {
            let (Ok(ab), Ok(asb)) = (alg.bar(a, b), alg.star(a, b)) else { continue };
            let (ta, tb) = (tau(a), tau(b));
            match (alg.star(&ta, &tb), alg.bar(&ta, &tb)) {
                (Ok(x), Ok(y)) if tau(&ab) == x && tau(&asb) == y => {}
                _ => return false,
            }
        }
    }
    true
}
