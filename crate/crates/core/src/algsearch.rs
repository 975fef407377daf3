//! Enumeration of finite Conway algebras up to isomorphism.
//!
//! `|` is searched as one permutation per column (`a ↦ a|b`); `∗` is then the
//! column-wise inverse, which is what C6 and C7 force, so both hold by
//! construction. Only C3 is searched: with C6 and C7 it gives C4, and C4
//! gives C5. An operation pair counts when some infinite constant sequence
//! `a₁ = 1, a₂ = 2, …` with `aₖ | aₖ₊₁ = aₖ = aₖ ∗ aₖ₊₁` exists.

use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use crate::conway::simplex::next_permutation;
use crate::conway::{check_axioms, evaluate, EvalError, FiniteAlgebraTable};
use crate::diagram::LinkDiagram;

pub const MAX_SIZE: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CensusError {
    #[error("census size must be between 2 and {MAX_SIZE}, got {0}")]
    SizeOutOfRange(usize),
    #[error("table fails the axioms:\n{0}")]
    Axioms(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusResult {
    pub size: usize,
    pub count: usize,
    pub representatives: Vec<FiniteAlgebraTable>,
}

/// Operation tables only, zero-based: `bar[a][b] = a|b`.
type Ops = (Vec<Vec<u8>>, Vec<Vec<u8>>);

fn inverse_columns(bar: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let n = bar.len();
    let mut star = vec![vec![0u8; n]; n];
    for b in 0..n {
        for a in 0..n {
            star[bar[a][b] as usize][b] = a as u8;
        }
    }
    star
}

/// Successors of `x` in the constant graph: `b` with `x|b = x = x∗b`.
fn successors(bar: &[Vec<u8>], star: &[Vec<u8>], x: usize) -> Vec<usize> {
    (0..bar.len()).filter(|&b| bar[x][b] as usize == x && star[x][b] as usize == x).collect()
}

/// The lexicographically least infinite constant sequence starting 1, 2,
/// as (prefix, period), or `None` if there is no infinite one.
pub fn least_constant_sequence(bar: &[Vec<u8>], star: &[Vec<u8>]) -> Option<(Vec<u8>, Vec<u8>)> {
    let n = bar.len();
    // nodes from which an infinite walk exists: iterate removal of dead ends
    let mut alive = vec![true; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if alive[x] && !successors(bar, star, x).iter().any(|&y| alive[y]) {
                alive[x] = false;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if !successors(bar, star, 0).contains(&1) || !alive[1] {
        return None;
    }
    let mut seq = vec![0usize, 1];
    loop {
        let last = *seq.last().unwrap();
        let next = successors(bar, star, last).into_iter().find(|&y| alive[y]).unwrap();
        // greedy choice is a function of the current element, so the walk is a lasso
        if let Some(pos) = seq[1..].iter().position(|&x| x == next) {
            let pos = pos + 1;
            let seq: Vec<u8> = seq.iter().map(|&x| x as u8).collect();
            return Some((seq[..pos].to_vec(), seq[pos..].to_vec()));
        }
        seq.push(next);
    }
}

fn with_constants(ops: &Ops) -> Option<FiniteAlgebraTable> {
    let (prefix, period) = least_constant_sequence(&ops.0, &ops.1)?;
    Some(FiniteAlgebraTable::new(ops.0.clone(), ops.1.clone(), prefix, period))
}

fn relabel_ops(ops: &Ops, p: &[u8]) -> Ops {
    let n = ops.0.len();
    let mut bar = vec![vec![0u8; n]; n];
    let mut star = vec![vec![0u8; n]; n];
    for a in 0..n {
        for b in 0..n {
            bar[p[a] as usize][p[b] as usize] = p[ops.0[a][b] as usize];
            star[p[a] as usize][p[b] as usize] = p[ops.1[a][b] as usize];
        }
    }
    (bar, star)
}

/// Relabelings fixing elements 1 and 2 (zero-based 0 and 1).
fn fixing_bijections(n: usize) -> Vec<Vec<u8>> {
    let mut rest: Vec<usize> = (2..n).collect();
    let mut out = Vec::new();
    loop {
        let mut p = vec![0u8, 1];
        p.extend(rest.iter().map(|&r| r as u8));
        out.push(p);
        if !next_permutation(&mut rest) {
            return out;
        }
    }
}

fn canonical_ops(ops: &Ops, perms: &[Vec<u8>]) -> Ops {
    perms.iter().map(|p| relabel_ops(ops, p)).min().unwrap()
}

/// Lexicographically least relabeling over all bijections fixing 1 and 2,
/// constants included.
pub fn canonical_form(t: &FiniteAlgebraTable) -> FiniteAlgebraTable {
    fixing_bijections(t.n).iter().map(|p| t.relabel(p)).min().unwrap()
}

/// C3 instances `(a|b)|(c|d) = (a|c)|(b|d)` decidable from the assigned
/// columns; `false` on the first violation.
fn c3_consistent(cols: &[Option<Vec<u8>>]) -> bool {
    let n = cols.len();
    let get = |a: usize, b: usize| cols[b].as_ref().map(|c| c[a] as usize);
    for b in 0..n {
        if cols[b].is_none() {
            continue;
        }
        for c in 0..n {
            if cols[c].is_none() {
                continue;
            }
            for d in 0..n {
                let Some(bd) = get(b, d) else { continue };
                let Some(cd) = get(c, d) else { continue };
                if cols[bd].is_none() || cols[cd].is_none() {
                    continue;
                }
                for a in 0..n {
                    let l = get(get(a, b).unwrap(), cd).unwrap();
                    let r = get(get(a, c).unwrap(), bd).unwrap();
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = Vec::new();
    loop {
        out.push(p.iter().map(|&x| x as u8).collect());
        if !next_permutation(&mut p) {
            return out;
        }
    }
}

fn extend(cols: &mut Vec<Option<Vec<u8>>>, k: usize, perms: &[Vec<u8>], out: &mut Vec<Vec<Vec<u8>>>) {
    if k == cols.len() {
        out.push(cols.iter().map(|c| c.clone().unwrap()).collect());
        return;
    }
    for p in perms {
        cols[k] = Some(p.clone());
        if c3_consistent(cols) {
            extend(cols, k + 1, perms, out);
        }
    }
    cols[k] = None;
}

/// Every operation pair satisfying C3–C7, searched column by column with
/// the first column's choices run in parallel.
fn search(n: usize) -> Vec<Ops> {
    let perms = all_permutations(n);
    perms
        .par_iter()
        .flat_map_iter(|first| {
            let mut cols = vec![None; n];
            cols[0] = Some(first.clone());
            let mut out = Vec::new();
            if c3_consistent(&cols) {
                extend(&mut cols, 1, &perms, &mut out);
            }
            out.into_iter().map(|c| columns_to_ops(&c))
        })
        .collect()
}

fn columns_to_ops(cols: &[Vec<u8>]) -> Ops {
    let n = cols.len();
    let bar: Vec<Vec<u8>> = (0..n).map(|a| (0..n).map(|b| cols[b][a]).collect()).collect();
    let star = inverse_columns(&bar);
    (bar, star)
}

/// Which operation pairs count as an algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Some infinite constant sequence starting 1, 2 exists (the default).
    SequenceExists,
    /// Only `1|2 = 1 = 1∗2` is required.
    FirstPair,
    /// The sequence 1, 2, 2, 2, … works.
    SecondRepeats,
    /// No condition on constants.
    OperationsOnly,
}

impl Convention {
    pub const ALL: [Convention; 4] =
        [Convention::SequenceExists, Convention::FirstPair, Convention::SecondRepeats, Convention::OperationsOnly];

    fn admits(self, ops: &Ops) -> bool {
        let (b, s) = ops;
        match self {
            Convention::SequenceExists => least_constant_sequence(b, s).is_some(),
            Convention::FirstPair => b[0][1] == 0 && s[0][1] == 0,
            Convention::SecondRepeats => b[0][1] == 0 && s[0][1] == 0 && b[1][1] == 1 && s[1][1] == 1,
            Convention::OperationsOnly => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Convention::SequenceExists => "sequence-exists",
            Convention::FirstPair => "first-pair",
            Convention::SecondRepeats => "second-repeats",
            Convention::OperationsOnly => "operations-only",
        }
    }
}

fn finish(n: usize, found: impl IntoIterator<Item = Ops>) -> CensusResult {
    let perms = fixing_bijections(n);
    let canon: BTreeSet<Ops> = found.into_iter().map(|o| canonical_ops(&o, &perms)).collect();
    let representatives: Vec<FiniteAlgebraTable> = canon
        .iter()
        .map(|o| {
            with_constants(o).unwrap_or_else(|| FiniteAlgebraTable::new(o.0.clone(), o.1.clone(), vec![0], vec![1]))
        })
        .collect();
    CensusResult { size: n, count: representatives.len(), representatives }
}

/// Conway algebras on `{1..n}` up to isomorphism fixing 1 and 2.
pub fn enumerate_algebras(n: usize) -> Result<CensusResult, CensusError> {
    enumerate_with(n, Convention::SequenceExists)
}

/// The census under a given counting convention. Representatives carry the
/// least valid constant sequence, or `1 ; 2` when none exists.
pub fn enumerate_with(n: usize, convention: Convention) -> Result<CensusResult, CensusError> {
    if !(2..=MAX_SIZE).contains(&n) {
        return Err(CensusError::SizeOutOfRange(n));
    }
    Ok(finish(n, search(n).into_iter().filter(|o| convention.admits(o))))
}

/// Brute-force census: every pair of operation tables, filtered by the full
/// axiom check over every constant sequence short enough to matter.
/// `n^(2n²)` candidates, so only for `n ≤ 3`.
pub fn brute_force_census(n: usize) -> Result<CensusResult, CensusError> {
    if !(2..=3).contains(&n) {
        return Err(CensusError::SizeOutOfRange(n));
    }
    let cells = n * n;
    let total = (n as u64).pow(cells as u32);
    let decode = |mut code: u64| -> Vec<Vec<u8>> {
        let mut t = vec![vec![0u8; n]; n];
        for cell in 0..cells {
            t[cell / n][cell % n] = (code % n as u64) as u8;
            code /= n as u64;
        }
        t
    };
    let sequences = lasso_sequences(n);
    let found: Vec<Ops> = (0..total)
        .into_par_iter()
        .flat_map_iter(|bc| {
            let bar = decode(bc);
            let mut out = Vec::new();
            let pow: Vec<u64> = (0..cells).map(|i| (n as u64).pow(i as u32)).collect();
            let digit = |code: u64, a: usize, b: usize| ((code / pow[a * n + b]) % n as u64) as usize;
            for sc in 0..total {
                // cheap screen: C6 must hold for anything that survives the full check
                let c6 = (0..n).all(|a| (0..n).all(|c| digit(sc, bar[a][c] as usize, c) == a));
                if !c6 {
                    continue;
                }
                let star = decode(sc);
                let ok = sequences.iter().any(|(pre, per)| {
                    check_axioms(&FiniteAlgebraTable::new(bar.clone(), star.clone(), pre.clone(), per.clone())).ok()
                });
                if ok {
                    out.push((bar.clone(), star.clone()));
                }
            }
            out
        })
        .collect();
    Ok(finish(n, found))
}

/// Eventually periodic sequences starting 1, 2 whose lasso has at most
/// `n + 1` distinct positions; any infinite sequence over `n` elements can be
/// shortened to one of these while keeping C1/C2.
fn lasso_sequences(n: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u8>> = vec![vec![0, 1]];
    while let Some(seq) = stack.pop() {
        // after the last entry the sequence jumps back to position `pos`
        for pos in 1..seq.len() {
            out.push((seq[..pos].to_vec(), seq[pos..].to_vec()));
        }
        if seq.len() < n + 1 {
            for x in 0..n as u8 {
                let mut s = seq.clone();
                s.push(x);
                stack.push(s);
            }
        }
    }
    out
}

/// Values of `t` on each diagram.
pub fn invariant_battery(t: &FiniteAlgebraTable, diagrams: &[(&str, &LinkDiagram)]) -> Result<Vec<(String, u8)>, CensusError> {
    let r = check_axioms(t);
    if !r.ok() {
        return Err(CensusError::Axioms(r.to_string()));
    }
    diagrams.iter().map(|(name, d)| Ok((name.to_string(), evaluate(*d, t)? + 1))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_two() {
        let r = enumerate_algebras(2).unwrap();
        assert_eq!(r.count, 2);
        for t in &r.representatives {
            assert!(check_axioms(t).ok());
        }
    }

    #[test]
    fn conventions_at_size_three() {
        let counts: Vec<usize> = Convention::ALL.iter().map(|&c| enumerate_with(3, c).unwrap().count).collect();
        assert_eq!(counts, vec![9, 10, 6, 24]);
    }

    #[test]
    fn brute_force_agrees_at_size_two() {
        assert_eq!(brute_force_census(2).unwrap(), enumerate_algebras(2).unwrap());
    }

    #[test]
    fn out_of_range() {
        assert_eq!(enumerate_algebras(1), Err(CensusError::SizeOutOfRange(1)));
        assert_eq!(enumerate_algebras(6), Err(CensusError::SizeOutOfRange(6)));
    }

    #[test]
    fn canonical_form_is_stable_under_relabeling() {
        let t = FiniteAlgebraTable::four_element();
        let c = canonical_form(&t);
        assert_eq!(canonical_form(&c), c);
        assert_eq!(canonical_form(&t.relabel(&[0, 1, 3, 2])), c);
        assert_ne!(canonical_form(&FiniteAlgebraTable::components_table(4)), c);
    }

    #[test]
    fn least_sequence_of_shipped_tables() {
        let t = FiniteAlgebraTable::four_element();
        let (pre, per) = least_constant_sequence(&t.bar, &t.star).unwrap();
        let u = FiniteAlgebraTable::new(t.bar.clone(), t.star.clone(), pre, per);
        assert_eq!((u.constant_index(1), u.constant_index(2)), (0, 1));
        assert!(check_axioms(&u).ok());
    }
}

