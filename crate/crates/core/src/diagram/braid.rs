//! Braid words, their closures, and closure-preserving perturbations.

use std::fmt;

use rand::Rng;

use super::{DiagramError, Level, LinkDiagram, Pass};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: usize,
    /// Unit letters `(i, ±1)` standing for σᵢ^±1, with 1 ≤ i < strands.
    pub letters: Vec<(usize, i8)>,
}

/// Moves that keep the isotopy class of the closure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BraidOp {
    /// w ↦ σᵢ^ε · w · σᵢ^-ε
    Conjugate { gen: usize, sign: i8 },
    /// w ∈ Bₙ ↦ w·σₙ^ε ∈ Bₙ₊₁
    Stabilize { sign: i8 },
    /// Inverse of `Stabilize`.
    Destabilize,
    /// Inserts σᵢ^ε σᵢ^-ε before position `at`.
    InsertPair { at: usize, gen: usize, sign: i8 },
    /// Cancels adjacent inverse letters until none remain.
    FreeReduce,
    /// σᵢσⱼ ↦ σⱼσᵢ at `at` when |i − j| ≥ 2 (no-op otherwise).
    FarCommute { at: usize },
    /// σᵢσᵢ₊₁σᵢ ↔ σᵢ₊₁σᵢσᵢ₊₁ (same signs) at `at` (no-op when no triple matches).
    BraidRelation { at: usize },
    /// Moves the first letter to the end (a conjugation).
    Rotate,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i8)>) -> Self {
        assert!(strands >= 1);
        assert!(letters.iter().all(|&(i, s)| i >= 1 && i < strands && (s == 1 || s == -1)));
        BraidWord { strands, letters }
    }

    /// Widens to `n` strands (never narrows below what the letters need).
    pub fn with_strands(mut self, n: usize) -> Self {
        self.strands = self.strands.max(n);
        self
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&(_, s)| s as i64).sum()
    }

    pub fn inverse(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|&(i, s)| (i, -s)).collect() }
    }

    pub fn mirror(&self) -> Self {
        BraidWord { strands: self.strands, letters: self.letters.iter().map(|&(i, s)| (i, -s)).collect() }
    }

    /// Closure of the braid. A positive letter carries the strand moving from
    /// position i to i+1 over the other one and has sign +1.
    pub fn closure(&self) -> LinkDiagram {
        let n = self.strands;
        let mut perm: Vec<usize> = (0..n).collect();
        for &(i, _) in &self.letters {
            for p in perm.iter_mut() {
                if *p == i - 1 {
                    *p = i;
                } else if *p == i {
                    *p = i - 1;
                }
            }
        }
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut walk = Vec::new();
            let mut pos = start;
            loop {
                seen[pos] = true;
                for (t, &(i, s)) in self.letters.iter().enumerate() {
                    if pos == i - 1 {
                        walk.push(Pass { crossing: t, level: if s > 0 { Level::Over } else { Level::Under } });
                        pos = i;
                    } else if pos == i {
                        walk.push(Pass { crossing: t, level: if s > 0 { Level::Under } else { Level::Over } });
                        pos = i - 1;
                    }
                }
                if pos == start {
                    break;
                }
            }
            comps.push(walk);
        }
        LinkDiagram::from_parts(comps, self.letters.iter().map(|&(_, s)| s).collect())
    }

    pub fn apply(&self, op: BraidOp) -> Result<Self, DiagramError> {
        let mut w = self.clone();
        match op {
            BraidOp::Conjugate { gen, sign } => {
                check_gen(gen, w.strands)?;
                w.letters.insert(0, (gen, sign));
                w.letters.push((gen, -sign));
            }
            BraidOp::Stabilize { sign } => {
                w.letters.push((w.strands, sign));
                w.strands += 1;
            }
            BraidOp::Destabilize => {
                let top = w.strands - 1;
                let uses = w.letters.iter().filter(|l| l.0 == top).count();
                match w.letters.last() {
                    Some(&(g, _)) if g == top && uses == 1 && top >= 1 => {
                        w.letters.pop();
                        w.strands -= 1;
                    }
                    _ => {
                        return Err(DiagramError::IllegalDestabilization(format!(
                            "`{}` does not end with the only occurrence of s{}",
                            self, top
                        )))
                    }
                }
            }
            BraidOp::InsertPair { at, gen, sign } => {
                check_gen(gen, w.strands)?;
                let at = at.min(w.letters.len());
                w.letters.insert(at, (gen, -sign));
                w.letters.insert(at, (gen, sign));
            }
            BraidOp::FreeReduce => {
                let mut out: Vec<(usize, i8)> = Vec::with_capacity(w.letters.len());
                for l in w.letters {
                    match out.last() {
                        Some(&(g, s)) if g == l.0 && s == -l.1 => {
                            out.pop();
                        }
                        _ => out.push(l),
                    }
                }
                w.letters = out;
            }
            BraidOp::FarCommute { at } => {
                if at + 1 < w.letters.len() && w.letters[at].0.abs_diff(w.letters[at + 1].0) >= 2 {
                    w.letters.swap(at, at + 1);
                }
            }
            BraidOp::BraidRelation { at } => {
                if at + 2 < w.letters.len() {
                    let (a, b, c) = (w.letters[at], w.letters[at + 1], w.letters[at + 2]);
                    if a == c && a.1 == b.1 && a.0.abs_diff(b.0) == 1 {
                        w.letters[at] = b;
                        w.letters[at + 1] = a;
                        w.letters[at + 2] = b;
                    }
                }
            }
            BraidOp::Rotate => {
                if !w.letters.is_empty() {
                    w.letters.rotate_left(1);
                }
            }
        }
        Ok(w)
    }

    pub fn perturb(&self, ops: &[BraidOp]) -> Result<Self, DiagramError> {
        ops.iter().try_fold(self.clone(), |w, &op| w.apply(op))
    }

    /// Draws a random legal move. `allow_stabilize` switches the writhe-changing
    /// moves on and off.
    pub fn random_op<R: Rng>(&self, rng: &mut R, allow_stabilize: bool) -> BraidOp {
        let sign = |rng: &mut R| if rng.gen_bool(0.5) { 1 } else { -1 };
        let kinds = if allow_stabilize { 8 } else { 6 };
        loop {
            let gen = rng.gen_range(1..self.strands.max(2));
            let at = rng.gen_range(0..=self.letters.len());
            let op = match rng.gen_range(0..kinds) {
                0 => BraidOp::Conjugate { gen, sign: sign(rng) },
                1 => BraidOp::InsertPair { at, gen, sign: sign(rng) },
                2 => BraidOp::FreeReduce,
                3 => BraidOp::FarCommute { at },
                4 => BraidOp::BraidRelation { at },
                5 => BraidOp::Rotate,
                6 => BraidOp::Stabilize { sign: sign(rng) },
                _ => BraidOp::Destabilize,
            };
            if self.apply(op).is_err() {
                continue;
            }
            return op;
        }
    }

    pub fn random<R: Rng>(rng: &mut R, strands: usize, len: usize) -> Self {
        let letters =
            (0..len).map(|_| (rng.gen_range(1..strands), if rng.gen_bool(0.5) { 1 } else { -1 })).collect();
        BraidWord { strands, letters }
    }
}

fn check_gen(gen: usize, strands: usize) -> Result<(), DiagramError> {
    if gen == 0 || gen >= strands {
        Err(DiagramError::BadGenerator { gen, strands })
    } else {
        Ok(())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut k = 0;
        while k < self.letters.len() {
            let (g, _) = self.letters[k];
            let s = self.letters[k].1;
            let mut run = 1;
            while k + run < self.letters.len() && self.letters[k + run] == (g, s) {
                run += 1;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let e = run as i64 * s as i64;
            if e == 1 {
                write!(f, "s{}", g)?;
            } else {
                write!(f, "s{}^{}", g, e)?;
            }
            k += run;
        }
        Ok(())
    }
}

/// Parses `s<i>(^<±k>)?` tokens separated by whitespace. The strand count is
/// one more than the largest generator index.
pub fn parse_braid(text: &str) -> Result<BraidWord, DiagramError> {
    let mut letters = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0;
    let err = |pos: usize, msg: &str| DiagramError::BraidSyntax { pos, msg: msg.to_string() };
    let number = |pos: &mut usize| -> Option<i64> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        text[start..*pos].parse().ok()
    };
    while pos < bytes.len() {
        if bytes[pos].is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        let tok = pos;
        if bytes[pos] != b's' && bytes[pos] != b'S' {
            return Err(err(pos, "expected `s<index>`"));
        }
        pos += 1;
        let gen_at = pos;
        let gen = number(&mut pos).ok_or_else(|| err(gen_at, "expected generator index"))?;
        if gen == 0 {
            return Err(err(gen_at, "generator index 0 is not allowed"));
        }
        let mut exp = 1i64;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let neg = match bytes.get(pos) {
                Some(b'-') => {
                    pos += 1;
                    true
                }
                Some(b'+') => {
                    pos += 1;
                    false
                }
                _ => false,
            };
            let at = pos;
            exp = number(&mut pos).ok_or_else(|| err(at, "expected exponent"))?;
            if neg {
                exp = -exp;
            }
        }
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            return Err(err(pos, "letters must be separated by whitespace"));
        }
        if exp == 0 {
            return Err(err(tok, "zero exponent"));
        }
        let s = if exp > 0 { 1 } else { -1 };
        for _ in 0..exp.abs() {
            letters.push((gen as usize, s));
        }
    }
    let strands = letters.iter().map(|l| l.0).max().unwrap_or(0) + 1;
    Ok(BraidWord { strands, letters })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let b = parse_braid("s1^3").unwrap();
        assert_eq!((b.strands, b.letters.len()), (2, 3));
        let e = parse_braid("s1^2 s2^2 s3^-2 s1^-1 s2 s3^-1").unwrap();
        assert_eq!((e.strands, e.letters.len(), e.exponent_sum()), (4, 9, 1));
        assert_eq!(e.to_string(), "s1^2 s2^2 s3^-2 s1^-1 s2 s3^-1");
        let f = parse_braid("s1 s2^-1 s1 s2^-1").unwrap();
        assert_eq!(f.strands, 3);
        assert_eq!(f.closure().component_count(), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_braid("s0"), Err(DiagramError::BraidSyntax { pos: 1, .. })));
        assert!(matches!(parse_braid("s1 x2"), Err(DiagramError::BraidSyntax { pos: 3, .. })));
        assert!(parse_braid("s1^").is_err());
    }

    #[test]
    fn perturbations() {
        let b = parse_braid("s1^3").unwrap();
        let s = b.apply(BraidOp::Stabilize { sign: 1 }).unwrap();
        assert_eq!(s.to_string(), "s1^3 s2");
        assert_eq!(s.strands, 3);
        assert_eq!(s.apply(BraidOp::Destabilize).unwrap(), b);
        assert!(b.apply(BraidOp::Destabilize).is_err());
        let p = s.apply(BraidOp::InsertPair { at: 1, gen: 2, sign: 1 }).unwrap();
        assert_eq!(p.exponent_sum(), 4);
        assert_eq!(p.apply(BraidOp::FreeReduce).unwrap().letters, s.letters);
        assert!(b.apply(BraidOp::InsertPair { at: 0, gen: 2, sign: 1 }).is_err());
    }
}
