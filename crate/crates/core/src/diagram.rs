//! Oriented link diagrams stored as signed Gauss codes.
//!
//! A component is the cyclic list of crossing passes met while walking it from
//! its base point; an empty list is a crossing-free circle. Edge identifiers are
//! derived: numbering components in order, edge `k` of a component is the one
//! entering its `k`-th pass (so the base point sits on the component's
//! smallest edge and components are ordered by their smallest edge).

use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub mod braid;

pub use braid::{parse_braid, BraidOp, BraidWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unknown crossing {0}")]
    UnknownCrossing(usize),
    #[error("component index {0} out of range")]
    BadComponent(usize),
    #[error("a sublink must keep at least one component")]
    EmptySublink,
    #[error("braid syntax error at byte {pos}: {msg}")]
    BraidSyntax { pos: usize, msg: String },
    #[error("diagram syntax error on line {line}: {msg}")]
    DiagramSyntax { line: usize, msg: String },
    #[error("cannot destabilize: {0}")]
    IllegalDestabilization(String),
    #[error("generator s{gen} does not exist on {strands} strands")]
    BadGenerator { gen: usize, strands: usize },
    #[error("invalid diagram: {0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Over,
    Under,
}

impl Level {
    pub fn flip(self) -> Level {
        match self {
            Level::Over => Level::Under,
            Level::Under => Level::Over,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Pass {
    pub crossing: usize,
    pub level: Level,
}

/// Crossing viewed through its four incident edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub id: usize,
    pub sign: i8,
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
}

/// Component count and writhe of a descending diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrivialForm {
    pub components: usize,
    pub writhe: i64,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    comps: Vec<Vec<Pass>>,
    signs: Vec<i8>,
}

impl fmt::Debug for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinkDiagram {{ ")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                write!(f, " | ")?;
            }
            for p in c {
                let l = if p.level == Level::Over { 'o' } else { 'u' };
                let s = if self.signs[p.crossing] > 0 { '+' } else { '-' };
                write!(f, "{}{}{} ", l, p.crossing, s)?;
            }
        }
        write!(f, "}}")
    }
}

/// Where the two passes of a crossing sit: (component, position) for over and under.
#[derive(Debug, Clone, Copy)]
struct Loc {
    over: (usize, usize),
    under: (usize, usize),
}

impl LinkDiagram {
    /// Builds from Gauss sequences and per-crossing signs, validating structure.
    pub fn from_gauss(comps: Vec<Vec<Pass>>, signs: Vec<i8>) -> Result<Self, DiagramError> {
        let d = LinkDiagram { comps, signs };
        d.validate()?;
        Ok(d)
    }

    pub fn unlink(n: usize) -> Self {
        LinkDiagram { comps: vec![Vec::new(); n], signs: Vec::new() }
    }

    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.comps
    }

    pub fn component_count(&self) -> usize {
        self.comps.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.signs.len()
    }

    pub fn sign(&self, c: usize) -> i8 {
        self.signs[c]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.comps.iter().map(|c| c.len().max(1)).sum()
    }

    /// First edge id of each component.
    fn edge_offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.comps.len());
        let mut acc = 0;
        for c in &self.comps {
            off.push(acc);
            acc += c.len().max(1);
        }
        off
    }

    fn locations(&self) -> Vec<Loc> {
        let mut over = vec![None; self.signs.len()];
        let mut under = vec![None; self.signs.len()];
        for (k, c) in self.comps.iter().enumerate() {
            for (j, p) in c.iter().enumerate() {
                match p.level {
                    Level::Over => over[p.crossing] = Some((k, j)),
                    Level::Under => under[p.crossing] = Some((k, j)),
                }
            }
        }
        over.into_iter().zip(under).map(|(o, u)| Loc { over: o.unwrap(), under: u.unwrap() }).collect()
    }

    /// Component holding each pass of crossing `c` as (over, under).
    pub fn crossing_components(&self, c: usize) -> (usize, usize) {
        let l = self.locations()[c];
        (l.over.0, l.under.0)
    }

    pub fn crossing(&self, c: usize) -> Result<Crossing, DiagramError> {
        if c >= self.signs.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let off = self.edge_offsets();
        let l = self.locations()[c];
        let edge_in = |(k, j): (usize, usize)| off[k] + j;
        let edge_out = |(k, j): (usize, usize)| off[k] + (j + 1) % self.comps[k].len();
        Ok(Crossing {
            id: c,
            sign: self.signs[c],
            under_in: edge_in(l.under),
            under_out: edge_out(l.under),
            over_in: edge_in(l.over),
            over_out: edge_out(l.over),
        })
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        (0..self.signs.len()).map(|c| self.crossing(c).unwrap()).collect()
    }

    /// Checks that every crossing has exactly one over and one under pass,
    /// signs are ±1, and crossing ids are compact.
    pub fn validate(&self) -> Result<(), DiagramError> {
        let n = self.signs.len();
        let mut seen = vec![[0u8; 2]; n];
        for c in &self.comps {
            for p in c {
                if p.crossing >= n {
                    return Err(DiagramError::Invalid(format!("pass refers to missing crossing {}", p.crossing)));
                }
                seen[p.crossing][(p.level == Level::Under) as usize] += 1;
            }
        }
        for (c, s) in seen.iter().enumerate() {
            if s != &[1, 1] {
                return Err(DiagramError::Invalid(format!("crossing {} has passes {:?} (over, under)", c, s)));
            }
            if self.signs[c] != 1 && self.signs[c] != -1 {
                return Err(DiagramError::Invalid(format!("crossing {} has sign {}", c, self.signs[c])));
            }
        }
        if self.comps.is_empty() {
            return Err(DiagramError::Invalid("no components".into()));
        }
        Ok(())
    }

    /// Linking number between components `i` and `j` (half the signed count of
    /// crossings between them).
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        let locs = self.locations();
        let mut s = 0;
        for (c, l) in locs.iter().enumerate() {
            let (a, b) = (l.over.0, l.under.0);
            if (a == i && b == j) || (a == j && b == i) {
                s += self.signs[c] as i64;
            }
        }
        s / 2
    }

    /// Global linking number: half the signed count of all mixed crossings.
    pub fn total_linking(&self) -> i64 {
        let locs = self.locations();
        let s: i64 = locs.iter().enumerate().filter(|(_, l)| l.over.0 != l.under.0).map(|(c, _)| self.signs[c] as i64).sum();
        s / 2
    }

    pub fn is_self_crossing(&self, c: usize) -> bool {
        let l = self.locations()[c];
        l.over.0 == l.under.0
    }

    /// Crossings that are first met on their under pass, in traversal order,
    /// plus whether the diagram is descending (no such crossing).
    pub fn traversal_report(&self) -> (Vec<usize>, bool) {
        let mut met = vec![false; self.signs.len()];
        let mut bad = Vec::new();
        for c in &self.comps {
            for p in c {
                if !met[p.crossing] {
                    met[p.crossing] = true;
                    if p.level == Level::Under {
                        bad.push(p.crossing);
                    }
                }
            }
        }
        let desc = bad.is_empty();
        (bad, desc)
    }

    /// First bad crossing, if any.
    pub fn first_bad(&self) -> Option<usize> {
        let mut met = vec![false; self.signs.len()];
        for c in &self.comps {
            for p in c {
                if !met[p.crossing] {
                    met[p.crossing] = true;
                    if p.level == Level::Under {
                        return Some(p.crossing);
                    }
                }
            }
        }
        None
    }

    /// Rebased copy whose bad-crossing count is as small as any choice of base
    /// points and component order allows. Self-crossings only depend on the
    /// start of their component and mixed crossings only on the order, so the
    /// two are minimized separately (orders by brute force up to 7 components,
    /// greedily beyond).
    pub fn min_bad_rebased(&self) -> Self {
        let n = self.comps.len();
        let locs = self.locations();
        let mut diff: Vec<Vec<i32>> = self.comps.iter().map(|c| vec![0; c.len() + 1]).collect();
        let mut w = vec![vec![0u32; n]; n];
        for l in &locs {
            let (k, o) = l.over;
            let (kk, u) = l.under;
            if k == kk {
                // bad exactly for starts in the cyclic range o+1 ..= u
                let m = self.comps[k].len();
                let (a, b) = ((o + 1) % m, u);
                let d = &mut diff[k];
                if a <= b {
                    d[a] += 1;
                    d[b + 1] -= 1;
                } else {
                    d[a] += 1;
                    d[m] -= 1;
                    d[0] += 1;
                    d[b + 1] -= 1;
                }
            } else {
                // bad when the under component comes first
                w[kk][k] += 1;
            }
        }
        let starts: Vec<usize> = diff
            .iter()
            .map(|d| {
                let (mut best, mut arg, mut run) = (i32::MAX, 0, 0);
                for (s, x) in d[..d.len() - 1].iter().enumerate() {
                    run += x;
                    if run < best {
                        best = run;
                        arg = s;
                    }
                }
                arg
            })
            .collect();
        let live: Vec<usize> = (0..n).filter(|&k| !self.comps[k].is_empty()).collect();
        let cost = |ord: &[usize]| -> u32 {
            let mut c = 0;
            for (x, &i) in ord.iter().enumerate() {
                for &j in &ord[x + 1..] {
                    c += w[i][j];
                }
            }
            c
        };
        let mut order = live.clone();
        if live.len() > 1 && live.len() <= 7 {
            let mut perm = live.clone();
            let mut best = cost(&perm);
            while crate::conway::simplex::next_permutation(&mut perm) {
                let c = cost(&perm);
                if c < best {
                    best = c;
                    order = perm.clone();
                }
            }
        } else if live.len() > 7 {
            let mut ord: Vec<usize> = Vec::new();
            for &k in &live {
                let pos = (0..=ord.len())
                    .min_by_key(|&p| {
                        let mut t = ord.clone();
                        t.insert(p, k);
                        cost(&t)
                    })
                    .unwrap();
                ord.insert(pos, k);
            }
            order = ord;
        }
        order.extend((0..n).filter(|&k| self.comps[k].is_empty()));
        self.rebase(&order, &starts)
    }

    pub fn trivial_form(&self) -> TrivialForm {
        TrivialForm { components: self.comps.len(), writhe: self.writhe() }
    }

    pub fn switch_crossing(&self, c: usize) -> Result<Self, DiagramError> {
        if c >= self.signs.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let mut d = self.clone();
        d.signs[c] = -d.signs[c];
        for comp in &mut d.comps {
            for p in comp.iter_mut() {
                if p.crossing == c {
                    p.level = p.level.flip();
                }
            }
        }
        Ok(d)
    }

    /// Deletes crossing `c` from `comps`/`signs`, renumbering the rest.
    fn drop_crossing(mut comps: Vec<Vec<Pass>>, mut signs: Vec<i8>, c: usize) -> Self {
        for comp in &mut comps {
            comp.retain(|p| p.crossing != c);
            for p in comp.iter_mut() {
                if p.crossing > c {
                    p.crossing -= 1;
                }
            }
        }
        signs.remove(c);
        LinkDiagram { comps, signs }
    }

    /// Smoothing that respects orientation.
    pub fn smooth_oriented(&self, c: usize) -> Result<Self, DiagramError> {
        if c >= self.signs.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let l = self.locations()[c];
        let mut comps = self.comps.clone();
        let (ka, ia) = l.over;
        let (kb, ib) = l.under;
        if ka == kb {
            let (i, j) = if ia < ib { (ia, ib) } else { (ib, ia) };
            let s = std::mem::take(&mut comps[ka]);
            let mut outer: Vec<Pass> = s[..i].to_vec();
            outer.extend_from_slice(&s[j + 1..]);
            let inner: Vec<Pass> = s[i + 1..j].to_vec();
            comps[ka] = outer;
            comps.insert(ka + 1, inner);
        } else {
            let x = &self.comps[ka];
            let y = &self.comps[kb];
            let mut merged: Vec<Pass> = x[..=ia].to_vec();
            merged.extend_from_slice(&y[ib + 1..]);
            merged.extend_from_slice(&y[..ib]);
            merged.extend_from_slice(&x[ia + 1..]);
            let (lo, hi) = (ka.min(kb), ka.max(kb));
            comps[lo] = merged;
            comps.remove(hi);
        }
        Ok(Self::drop_crossing(comps, self.signs.clone(), c))
    }

    /// Smoothing against orientation. One side of the resulting walk has to be
    /// reversed; the side with fewer passes is chosen (ties: the side holding the
    /// smaller edge id is reversed).
    pub fn smooth_unoriented(&self, c: usize) -> Result<Self, DiagramError> {
        if c >= self.signs.len() {
            return Err(DiagramError::UnknownCrossing(c));
        }
        let l = self.locations()[c];
        let off = self.edge_offsets();
        let (ka, ia) = l.over;
        let (kb, ib) = l.under;
        let mut comps = self.comps.clone();
        let mut signs = self.signs.clone();
        // two arcs, each running from an out-edge of c to an in-edge of c, with
        // the smallest edge id each contains
        let (alpha, beta, a_min, b_min, slot, remove) = if ka == kb {
            let s = &self.comps[ka];
            let (i, j) = if ia < ib { (ia, ib) } else { (ib, ia) };
            let mut alpha: Vec<Pass> = s[j + 1..].to_vec();
            alpha.extend_from_slice(&s[..i]);
            let beta: Vec<Pass> = s[i + 1..j].to_vec();
            // alpha runs over edges j+1.., 0..=i, so it always holds the component's first edge
            let a_min = off[ka];
            let b_min = off[ka] + i + 1;
            (alpha, beta, a_min, b_min, ka, None)
        } else {
            let x = &self.comps[ka];
            let y = &self.comps[kb];
            let mut alpha: Vec<Pass> = x[ia + 1..].to_vec();
            alpha.extend_from_slice(&x[..ia]);
            let mut beta: Vec<Pass> = y[ib + 1..].to_vec();
            beta.extend_from_slice(&y[..ib]);
            let a_min = off[ka];
            let b_min = off[kb];
            let (lo, hi) = (ka.min(kb), ka.max(kb));
            (alpha, beta, a_min, b_min, lo, Some(hi))
        };
        let reverse_alpha = alpha.len() < beta.len() || (alpha.len() == beta.len() && a_min < b_min);
        let (keep, mut rev) = if reverse_alpha { (beta, alpha) } else { (alpha, beta) };
        // crossings with exactly one pass in the reversed arc change sign
        let mut count = vec![0u8; signs.len()];
        for p in &rev {
            count[p.crossing] += 1;
        }
        for (x, &k) in count.iter().enumerate() {
            if k == 1 && x != c {
                signs[x] = -signs[x];
            }
        }
        rev.reverse();
        let mut walk = keep;
        walk.extend(rev);
        comps[slot] = walk;
        if let Some(hi) = remove {
            comps.remove(hi);
        }
        Ok(Self::drop_crossing(comps, signs, c))
    }

    pub fn mirror(&self) -> Self {
        LinkDiagram {
            comps: self
                .comps
                .iter()
                .map(|c| c.iter().map(|p| Pass { crossing: p.crossing, level: p.level.flip() }).collect())
                .collect(),
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }

    /// Reverses every component; signs are unchanged. Base points stay on the
    /// first pass so the result is again in canonical position.
    pub fn reverse_all(&self) -> Self {
        let comps = self.comps.iter().map(|c| reverse_walk(c)).collect();
        LinkDiagram { comps, signs: self.signs.clone() }
    }

    pub fn reverse_component(&self, i: usize) -> Result<Self, DiagramError> {
        if i >= self.comps.len() {
            return Err(DiagramError::BadComponent(i));
        }
        let locs = self.locations();
        let mut signs = self.signs.clone();
        for (c, l) in locs.iter().enumerate() {
            if (l.over.0 == i) != (l.under.0 == i) {
                signs[c] = -signs[c];
            }
        }
        let mut comps = self.comps.clone();
        comps[i] = reverse_walk(&comps[i]);
        Ok(LinkDiagram { comps, signs })
    }

    pub fn disjoint_sum(&self, other: &Self) -> Self {
        let shift = self.signs.len();
        let mut comps = self.comps.clone();
        comps.extend(other.comps.iter().map(|c| shift_walk(c, shift)));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        LinkDiagram { comps, signs }
    }

    /// Splices the first component of each diagram at its base point.
    pub fn connected_sum(&self, other: &Self) -> Self {
        let shift = self.signs.len();
        let mut comps = Vec::with_capacity(self.comps.len() + other.comps.len() - 1);
        let mut first = self.comps[0].clone();
        first.extend(shift_walk(&other.comps[0], shift));
        comps.push(first);
        comps.extend(self.comps[1..].iter().cloned());
        comps.extend(other.comps[1..].iter().map(|c| shift_walk(c, shift)));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        LinkDiagram { comps, signs }
    }

    /// Keeps the listed components (in the given order); crossings touching a
    /// removed component disappear.
    pub fn sublink(&self, keep: &[usize]) -> Result<Self, DiagramError> {
        if keep.is_empty() {
            return Err(DiagramError::EmptySublink);
        }
        if let Some(&bad) = keep.iter().find(|&&k| k >= self.comps.len()) {
            return Err(DiagramError::BadComponent(bad));
        }
        let locs = self.locations();
        let kept = |k: usize| keep.contains(&k);
        let mut new_id = vec![usize::MAX; self.signs.len()];
        let mut signs = Vec::new();
        for (c, l) in locs.iter().enumerate() {
            if kept(l.over.0) && kept(l.under.0) {
                new_id[c] = signs.len();
                signs.push(self.signs[c]);
            }
        }
        let comps = keep
            .iter()
            .map(|&k| {
                self.comps[k]
                    .iter()
                    .filter(|p| new_id[p.crossing] != usize::MAX)
                    .map(|p| Pass { crossing: new_id[p.crossing], level: p.level })
                    .collect()
            })
            .collect();
        Ok(LinkDiagram { comps, signs })
    }

    /// Reorders components and moves base points: component `order[k]` becomes
    /// the `k`-th component, walked from position `starts[order[k]]`.
    pub fn rebase(&self, order: &[usize], starts: &[usize]) -> Self {
        assert_eq!(order.len(), self.comps.len());
        let comps = order
            .iter()
            .map(|&k| {
                let c = &self.comps[k];
                if c.is_empty() {
                    Vec::new()
                } else {
                    let s = starts[k] % c.len();
                    c[s..].iter().chain(c[..s].iter()).copied().collect()
                }
            })
            .collect();
        LinkDiagram { comps, signs: self.signs.clone() }
    }

    /// Random component order and base points drawn from `seed`.
    pub fn rebase_seeded(&self, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<usize> = (0..self.comps.len()).collect();
        order.shuffle(&mut rng);
        let starts: Vec<usize> = self.comps.iter().map(|c| rng.gen_range(0..c.len().max(1))).collect();
        self.rebase(&order, &starts)
    }

    /// Canonical key: equal for diagrams that differ only by crossing labels,
    /// base points and component order.
    pub fn canonical_key(&self) -> Vec<i32> {
        let n = self.signs.len();
        let locs = self.locations();
        let mut piece_of = vec![usize::MAX; self.comps.len()];
        let mut pieces: Vec<Vec<usize>> = Vec::new();
        for k in 0..self.comps.len() {
            if piece_of[k] != usize::MAX || self.comps[k].is_empty() {
                continue;
            }
            let id = pieces.len();
            let mut stack = vec![k];
            piece_of[k] = id;
            let mut members = Vec::new();
            while let Some(a) = stack.pop() {
                members.push(a);
                for p in &self.comps[a] {
                    let l = locs[p.crossing];
                    for b in [l.over.0, l.under.0] {
                        if piece_of[b] == usize::MAX {
                            piece_of[b] = id;
                            stack.push(b);
                        }
                    }
                }
            }
            pieces.push(members);
        }
        let mut codes: Vec<Vec<i32>> = Vec::with_capacity(pieces.len());
        let mut label = vec![u32::MAX; n];
        let mut visited = vec![false; self.comps.len()];
        for members in &pieces {
            let mut best: Option<Vec<i32>> = None;
            for &k in members {
                for s in 0..self.comps[k].len() {
                    let code = self.piece_code(k, s, &locs, &mut label, &mut visited, best.as_deref());
                    if let Some(code) = code {
                        if best.as_ref().map_or(true, |b| code < *b) {
                            best = Some(code);
                        }
                    }
                }
            }
            codes.push(best.unwrap());
        }
        codes.sort();
        let circles = self.comps.iter().filter(|c| c.is_empty()).count();
        let mut key = vec![circles as i32];
        for c in codes {
            key.push(-2);
            key.extend(c);
        }
        key
    }

    /// Gauss code of one connected piece starting at (k, s); subsequent
    /// components are entered at the first pass of the lowest-labelled crossing
    /// they share with what has been walked. Returns None as soon as the code
    /// exceeds `bound`.
    fn piece_code(
        &self,
        k: usize,
        s: usize,
        locs: &[Loc],
        label: &mut [u32],
        visited: &mut [bool],
        bound: Option<&[i32]>,
    ) -> Option<Vec<i32>> {
        label.iter_mut().for_each(|l| *l = u32::MAX);
        visited.iter_mut().for_each(|v| *v = false);
        let mut next = 0u32;
        let mut code: Vec<i32> = Vec::new();
        let mut order: Vec<u32> = Vec::new(); // crossing ids by label
        let mut cur = Some((k, s));
        let mut result_ok = true;
        while let Some((comp, start)) = cur {
            visited[comp] = true;
            if !code.is_empty() {
                code.push(-1);
            }
            let c = &self.comps[comp];
            for t in 0..c.len() {
                let p = c[(start + t) % c.len()];
                if label[p.crossing] == u32::MAX {
                    label[p.crossing] = next;
                    order.push(p.crossing as u32);
                    next += 1;
                }
                let lv = if p.level == Level::Over { 0 } else { 1 };
                let sg = if self.signs[p.crossing] > 0 { 0 } else { 1 };
                code.push((label[p.crossing] as i32) * 4 + lv * 2 + sg);
                if let Some(b) = bound {
                    let m = code.len();
                    if m <= b.len() {
                        match code[..m].cmp(&b[..m]) {
                            std::cmp::Ordering::Greater => {
                                result_ok = false;
                                break;
                            }
                            std::cmp::Ordering::Less => {}
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                }
            }
            if !result_ok {
                return None;
            }
            cur = None;
            'find: for &x in &order {
                let l = locs[x as usize];
                for (kk, jj) in [l.over, l.under] {
                    if !visited[kk] {
                        cur = Some((kk, jj));
                        break 'find;
                    }
                }
            }
        }
        Some(code)
    }

    /// Text form: one `X ui uo oi oo ±` line per crossing, `O e` per free circle.
    /// Edge ids are 1-based.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for x in self.crossings() {
            out.push_str(&format!(
                "X {} {} {} {} {}\n",
                x.under_in + 1,
                x.under_out + 1,
                x.over_in + 1,
                x.over_out + 1,
                if x.sign > 0 { '+' } else { '-' }
            ));
        }
        let off = self.edge_offsets();
        for (k, c) in self.comps.iter().enumerate() {
            if c.is_empty() {
                out.push_str(&format!("O {}\n", off[k] + 1));
            }
        }
        out
    }

    /// Parses the text form. Components are ordered by their smallest edge id
    /// and walked from it.
    pub fn parse_text(text: &str) -> Result<Self, DiagramError> {
        use std::collections::BTreeMap;
        let mut xs: Vec<([i64; 4], i8, usize)> = Vec::new();
        let mut circles: Vec<i64> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| DiagramError::DiagramSyntax { line: ln + 1, msg: msg.to_string() };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks[0] {
                "X" => {
                    if toks.len() != 6 {
                        return Err(err("expected `X ui uo oi oo sign`"));
                    }
                    let mut e = [0i64; 4];
                    for i in 0..4 {
                        e[i] = toks[i + 1].parse().map_err(|_| err(&format!("bad edge `{}`", toks[i + 1])))?;
                    }
                    let s = match toks[5] {
                        "+" => 1,
                        "-" => -1,
                        t => return Err(err(&format!("bad sign `{}`", t))),
                    };
                    xs.push((e, s, ln + 1));
                }
                "O" => {
                    if toks.len() != 2 {
                        return Err(err("expected `O edge`"));
                    }
                    circles.push(toks[1].parse().map_err(|_| err("bad edge"))?);
                }
                t => return Err(err(&format!("unknown record `{}`", t))),
            }
        }
        // pass entered by each edge, and edge leaving each pass
        let mut enters: BTreeMap<i64, (usize, Level)> = BTreeMap::new();
        let mut leaves: BTreeMap<i64, (usize, Level)> = BTreeMap::new();
        for (c, (e, _, ln)) in xs.iter().enumerate() {
            let err = |msg: String| DiagramError::DiagramSyntax { line: *ln, msg };
            for (edge, lv) in [(e[0], Level::Under), (e[2], Level::Over)] {
                if enters.insert(edge, (c, lv)).is_some() {
                    return Err(err(format!("edge {} enters two crossings", edge)));
                }
            }
            for (edge, lv) in [(e[1], Level::Under), (e[3], Level::Over)] {
                if leaves.insert(edge, (c, lv)).is_some() {
                    return Err(err(format!("edge {} leaves two crossings", edge)));
                }
            }
        }
        for e in enters.keys() {
            if !leaves.contains_key(e) {
                return Err(DiagramError::Invalid(format!("edge {} enters a crossing but never leaves one", e)));
            }
        }
        for e in leaves.keys() {
            if !enters.contains_key(e) {
                return Err(DiagramError::Invalid(format!("edge {} leaves a crossing but never enters one", e)));
            }
        }
        for c in &circles {
            if enters.contains_key(c) {
                return Err(DiagramError::Invalid(format!("circle edge {} also used by a crossing", c)));
            }
        }
        let out_edge = |c: usize, lv: Level| -> i64 {
            let e = xs[c].0;
            if lv == Level::Under {
                e[1]
            } else {
                e[3]
            }
        };
        // walks keyed by their smallest edge id
        let mut walks: Vec<(i64, Vec<Pass>)> = Vec::new();
        let mut used: std::collections::BTreeSet<i64> = std::collections::BTreeSet::new();
        for (&e0, _) in enters.iter() {
            if used.contains(&e0) {
                continue;
            }
            let mut walk = Vec::new();
            let mut e = e0;
            loop {
                used.insert(e);
                let (c, lv) = enters[&e];
                walk.push(Pass { crossing: c, level: lv });
                e = out_edge(c, lv);
                if e == e0 {
                    break;
                }
            }
            walks.push((e0, walk));
        }
        for &c in &circles {
            walks.push((c, Vec::new()));
        }
        walks.sort_by_key(|w| w.0);
        let comps = walks.into_iter().map(|w| w.1).collect();
        Self::from_gauss(comps, xs.iter().map(|x| x.1).collect())
    }

    /// Braid-closure helper shared with [`braid`].
    pub(crate) fn from_parts(comps: Vec<Vec<Pass>>, signs: Vec<i8>) -> Self {
        LinkDiagram { comps, signs }
    }
}

fn reverse_walk(c: &[Pass]) -> Vec<Pass> {
    if c.is_empty() {
        return Vec::new();
    }
    let mut r: Vec<Pass> = c.iter().rev().copied().collect();
    // keep the same base point: walking backwards from it meets the last pass first
    r.rotate_right(1);
    r
}

fn shift_walk(c: &[Pass], by: usize) -> Vec<Pass> {
    c.iter().map(|p| Pass { crossing: p.crossing + by, level: p.level }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn closure(s: &str) -> LinkDiagram {
        parse_braid(s).unwrap().closure()
    }

    #[test]
    fn basic_closures() {
        let t = closure("s1^3");
        assert_eq!((t.component_count(), t.crossing_count(), t.writhe()), (1, 3, 3));
        let h = closure("s1^2");
        assert_eq!(h.component_count(), 2);
        assert_eq!(h.linking_number(0, 1), 1);
        let u = parse_braid("").unwrap().with_strands(1).closure();
        assert_eq!((u.component_count(), u.crossing_count()), (1, 0));
    }

    #[test]
    fn switch_and_smoothings() {
        let h = closure("s1^2");
        let s = h.switch_crossing(0).unwrap();
        assert_eq!((s.component_count(), s.writhe()), (2, 0));
        assert_eq!(s.switch_crossing(0).unwrap(), h);
        assert_eq!(h.smooth_oriented(0).unwrap().component_count(), 1);
        assert_eq!(h.smooth_unoriented(0).unwrap().component_count(), 1);
        let t = closure("s1^3");
        let o = t.smooth_oriented(1).unwrap();
        assert_eq!((o.component_count(), o.linking_number(0, 1)), (2, 1));
        // a self-crossing keeps the component count under the unoriented smoothing
        assert_eq!(t.smooth_unoriented(0).unwrap().component_count(), 1);
        assert!(matches!(t.switch_crossing(7), Err(DiagramError::UnknownCrossing(7))));
    }

    #[test]
    fn trefoil_has_one_bad_crossing() {
        let (bad, desc) = closure("s1^3").traversal_report();
        assert_eq!(bad.len(), 1);
        assert!(!desc);
        assert_eq!(LinkDiagram::unlink(3).traversal_report(), (vec![], true));
    }

    #[test]
    fn mirror_and_reversal() {
        let t = closure("s1^2 s2^-1 s1");
        assert_eq!(t.mirror().mirror(), t);
        assert_eq!(t.mirror().writhe(), -t.writhe());
        let h = closure("s1^2");
        assert_eq!(h.reverse_component(0).unwrap().linking_number(0, 1), -1);
        assert_eq!(h.reverse_component(1).unwrap().linking_number(0, 1), -1);
        assert_eq!(h.reverse_all().writhe(), 2);
    }

    #[test]
    fn sums_and_sublinks() {
        let u = LinkDiagram::unknot();
        assert_eq!(u.disjoint_sum(&u).component_count(), 2);
        let t = closure("s1^3");
        let c = t.connected_sum(&t);
        assert_eq!((c.component_count(), c.crossing_count()), (1, 6));
        let h = closure("s1^2");
        assert_eq!(h.sublink(&[0, 1]).unwrap(), h);
        let one = h.sublink(&[1]).unwrap();
        assert_eq!((one.component_count(), one.crossing_count()), (1, 0));
        assert_eq!(h.sublink(&[]), Err(DiagramError::EmptySublink));
    }

    #[test]
    fn text_round_trip() {
        for s in ["s1^3", "s1 s2^-1 s1 s2^-1", "s1^2", "s1^-2 s2^3 s1^-2 s2"] {
            let d = closure(s);
            let back = LinkDiagram::parse_text(&d.to_text()).unwrap();
            assert_eq!(back.canonical_key(), d.canonical_key());
            assert_eq!(back.writhe(), d.writhe());
        }
        let bad = LinkDiagram::parse_text("X 1 2 3 4 +\nX 2 1 4 9 -");
        assert!(bad.is_err());
    }

    #[test]
    fn canonical_key_ignores_labels_and_base_points() {
        let d = closure("s1^-2 s2^3 s1^-2 s2");
        for seed in 0..20 {
            assert_eq!(d.rebase_seeded(seed).canonical_key(), d.canonical_key());
        }
        assert_ne!(d.mirror().canonical_key(), d.canonical_key());
    }
}
