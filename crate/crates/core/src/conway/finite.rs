//! Finite Conway algebras given by operation tables.

use std::fmt;

use thiserror::Error;

use super::simplex::next_permutation;
use super::{ConwayAlgebra, EvalError};

/// Tables over `{1..n}`, stored zero-based: `bar[a][b] = a|b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAlgebraTable {
    pub n: usize,
    pub bar: Vec<Vec<u8>>,
    pub star: Vec<Vec<u8>>,
    /// Constants before the repeating part (zero-based elements).
    pub prefix: Vec<u8>,
    /// Repeating part of the constant sequence.
    pub period: Vec<u8>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("table syntax error on line {line}: {msg}")]
    Syntax { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// One-based witness: the index `n` for C1/C2, else the tuple (a, b[, c, d]).
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
    /// Axioms that held when checked directly.
    pub holding: Vec<Axiom>,
    /// Implications between axioms that the holding set already triggers.
    pub implied: Vec<(Vec<Axiom>, Axiom)>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::C5, Axiom::C6, Axiom::C7] {
            match self.violations.iter().find(|v| v.axiom == a) {
                None => writeln!(f, "{}: holds (checked exhaustively)", a)?,
                Some(v) => writeln!(f, "{}: FAILS at {:?}", a, v.witness)?,
            }
        }
        for (pre, post) in &self.implied {
            let names: Vec<String> = pre.iter().map(|a| a.to_string()).collect();
            writeln!(f, "{} => {} (implied)", names.join(" & "), post)?;
        }
        Ok(())
    }
}

/// The dependencies between axioms; used to report which checks were redundant.
const IMPLICATIONS: &[(&[Axiom], Axiom)] = &[
    (&[Axiom::C1, Axiom::C6], Axiom::C2),
    (&[Axiom::C2, Axiom::C7], Axiom::C1),
    (&[Axiom::C6, Axiom::C4], Axiom::C7),
    (&[Axiom::C7, Axiom::C4], Axiom::C6),
    (&[Axiom::C6, Axiom::C4], Axiom::C5),
    (&[Axiom::C7, Axiom::C4], Axiom::C3),
    (&[Axiom::C5, Axiom::C6, Axiom::C7], Axiom::C4),
    (&[Axiom::C3, Axiom::C6, Axiom::C7], Axiom::C4),
];

impl FiniteAlgebraTable {
    pub fn new(bar: Vec<Vec<u8>>, star: Vec<Vec<u8>>, prefix: Vec<u8>, period: Vec<u8>) -> Self {
        let n = bar.len();
        assert!(n >= 2 && star.len() == n && !period.is_empty());
        FiniteAlgebraTable { n, bar, star, prefix, period }
    }

    /// i|j = i*j = i, a_k = k up to `n`, then constantly `n`.
    pub fn components_table(n: usize) -> Self {
        let t: Vec<Vec<u8>> = (0..n).map(|i| vec![i as u8; n]).collect();
        Self::new(t.clone(), t, (0..n as u8 - 1).collect(), vec![n as u8 - 1])
    }

    /// Three elements, `*` equal to `|`, a_k ≡ k (mod 3) with 0 written as 3.
    /// Separates the trefoil from the unknot.
    pub fn three_element() -> Self {
        Self::parse("3\n2 1 3\n1 3 2\n3 2 1\n2 1 3\n1 3 2\n3 2 1\n1 2 3\n").unwrap()
    }

    /// Four elements with constants 1, 2, 4 repeating. Separates the two
    /// trefoils.
    pub fn four_element() -> Self {
        Self::parse(
            "4\n2 1 4 3\n3 4 1 2\n1 2 3 4\n4 3 2 1\n3 1 2 4\n1 3 4 2\n2 4 3 1\n4 2 1 3\n1 2 4\n",
        )
        .unwrap()
    }

    pub fn constant_index(&self, k: usize) -> u8 {
        assert!(k >= 1);
        if k <= self.prefix.len() {
            self.prefix[k - 1]
        } else {
            self.period[(k - 1 - self.prefix.len()) % self.period.len()]
        }
    }

    /// Text form: `n`, n rows of `|`, n rows of `*`, then the constants. The
    /// constant line is the repeating period, optionally preceded by a
    /// non-repeating prefix and `;` (e.g. `1 2 ; 3`).
    pub fn parse(text: &str) -> Result<Self, TableError> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let err = |line: usize, msg: &str| TableError::Syntax { line, msg: msg.to_string() };
        let (l0, first) = *lines.first().ok_or_else(|| err(1, "empty input"))?;
        let n: usize = first.parse().map_err(|_| err(l0, "expected the size"))?;
        if !(2..=255).contains(&n) {
            return Err(err(l0, "size must be between 2 and 255"));
        }
        if lines.len() != 2 * n + 2 {
            return Err(err(lines.last().unwrap().0, &format!("expected {} non-empty lines", 2 * n + 2)));
        }
        let elems = |(ln, s): (usize, &str)| -> Result<Vec<u8>, TableError> {
            s.split_whitespace()
                .map(|t| match t.parse::<usize>() {
                    Ok(v) if (1..=n).contains(&v) => Ok((v - 1) as u8),
                    _ => Err(err(ln, &format!("`{}` is not an element of 1..{}", t, n))),
                })
                .collect()
        };
        let mut rows = Vec::with_capacity(2 * n);
        for &(ln, s) in &lines[1..=2 * n] {
            let r = elems((ln, s))?;
            if r.len() != n {
                return Err(err(ln, &format!("expected {} entries", n)));
            }
            rows.push(r);
        }
        let star = rows.split_off(n);
        let (lc, cs) = lines[2 * n + 1];
        let (prefix, period) = match cs.split_once(';') {
            Some((p, q)) => (elems((lc, p))?, elems((lc, q))?),
            None => (Vec::new(), elems((lc, cs))?),
        };
        if period.is_empty() {
            return Err(err(lc, "empty constant period"));
        }
        let t = FiniteAlgebraTable { n, bar: rows, star, prefix, period };
        if t.constant_index(1) != 0 || t.constant_index(2) != 1 {
            return Err(err(lc, "constants must start with 1 2"));
        }
        Ok(t)
    }

    pub fn to_text(&self) -> String {
        let row = |r: &[u8]| r.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ");
        let mut s = format!("{}\n", self.n);
        for r in self.bar.iter().chain(self.star.iter()) {
            s.push_str(&row(r));
            s.push('\n');
        }
        if !self.prefix.is_empty() {
            s.push_str(&row(&self.prefix));
            s.push_str(" ; ");
        }
        s.push_str(&row(&self.period));
        s.push('\n');
        s
    }

    /// Relabels elements by `p` (zero-based), i.e. the isomorphic table with
    /// `p(a)|p(b) = p(a|b)`.
    pub fn relabel(&self, p: &[u8]) -> Self {
        let n = self.n;
        let mut bar = vec![vec![0u8; n]; n];
        let mut star = vec![vec![0u8; n]; n];
        for a in 0..n {
            for b in 0..n {
                bar[p[a] as usize][p[b] as usize] = p[self.bar[a][b] as usize];
                star[p[a] as usize][p[b] as usize] = p[self.star[a][b] as usize];
            }
        }
        FiniteAlgebraTable {
            n,
            bar,
            star,
            prefix: self.prefix.iter().map(|&c| p[c as usize]).collect(),
            period: self.period.iter().map(|&c| p[c as usize]).collect(),
        }
    }

    /// Bijections fixing 1 and 2 under which `tau(a|b) = tau(a)*tau(b)`,
    /// `tau(a*b) = tau(a)|tau(b)`, tau is an involution and fixes every
    /// constant. Returns (number of candidates tried, the ones that work).
    pub fn mirror_involutions(&self) -> (usize, Vec<Vec<u8>>) {
        let n = self.n;
        let mut rest: Vec<usize> = (2..n).collect();
        let mut tried = 0;
        let mut found = Vec::new();
        loop {
            tried += 1;
            let mut tau: Vec<u8> = vec![0, 1];
            tau.extend(rest.iter().map(|&r| r as u8));
            let t = |a: u8| tau[a as usize];
            let consts_fixed = self.prefix.iter().chain(self.period.iter()).all(|&c| t(c) == c);
            let invol = (0..n as u8).all(|a| t(t(a)) == a);
            let inter = (0..n).all(|a| {
                (0..n).all(|b| {
                    let (ta, tb) = (t(a as u8) as usize, t(b as u8) as usize);
                    t(self.bar[a][b]) == self.star[ta][tb] && t(self.star[a][b]) == self.bar[ta][tb]
                })
            });
            if consts_fixed && invol && inter {
                found.push(tau);
            }
            if !next_permutation(&mut rest) {
                break;
            }
        }
        (tried, found)
    }

    /// Length of the constant sequence that covers every consecutive pair.
    fn constant_horizon(&self) -> usize {
        self.prefix.len() + self.period.len() + 1
    }
}

impl ConwayAlgebra for FiniteAlgebraTable {
    type Elem = u8;

    fn constant(&self, n: usize) -> Result<u8, EvalError> {
        Ok(self.constant_index(n))
    }

    fn bar(&self, a: &u8, b: &u8) -> Result<u8, EvalError> {
        Ok(self.bar[*a as usize][*b as usize])
    }

    fn star(&self, a: &u8, b: &u8) -> Result<u8, EvalError> {
        Ok(self.star[*a as usize][*b as usize])
    }
}

/// Exhaustive check of C1–C7.
pub fn check_axioms(t: &FiniteAlgebraTable) -> AxiomReport {
    let n = t.n;
    let (b, s) = (&t.bar, &t.star);
    let mut violations: Vec<Violation> = Vec::new();
    let mut push = |axiom: Axiom, witness: Vec<usize>| {
        if !violations.iter().any(|v| v.axiom == axiom) {
            violations.push(Violation { axiom, witness });
        }
    };
    for k in 1..=t.constant_horizon() {
        let (x, y) = (t.constant_index(k) as usize, t.constant_index(k + 1) as usize);
        if b[x][y] as usize != x {
            push(Axiom::C1, vec![k]);
        }
        if s[x][y] as usize != x {
            push(Axiom::C2, vec![k]);
        }
    }
    for a in 0..n {
        for c in 0..n {
            if s[b[a][c] as usize][c] as usize != a {
                push(Axiom::C6, vec![a + 1, c + 1]);
            }
            if b[s[a][c] as usize][c] as usize != a {
                push(Axiom::C7, vec![a + 1, c + 1]);
            }
        }
    }
    for a in 0..n {
        for bb in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let w = vec![a + 1, bb + 1, c + 1, d + 1];
                    let l3 = b[b[a][bb] as usize][b[c][d] as usize];
                    let r3 = b[b[a][c] as usize][b[bb][d] as usize];
                    if l3 != r3 {
                        push(Axiom::C3, w.clone());
                    }
                    let l4 = s[b[a][bb] as usize][b[c][d] as usize];
                    let r4 = b[s[a][c] as usize][s[bb][d] as usize];
                    if l4 != r4 {
                        push(Axiom::C4, w.clone());
                    }
                    let l5 = s[s[a][bb] as usize][s[c][d] as usize];
                    let r5 = s[s[a][c] as usize][s[bb][d] as usize];
                    if l5 != r5 {
                        push(Axiom::C5, w);
                    }
                }
            }
        }
    }
    violations.sort_by_key(|v| v.axiom);
    let all = [Axiom::C1, Axiom::C2, Axiom::C3, Axiom::C4, Axiom::C5, Axiom::C6, Axiom::C7];
    let holding: Vec<Axiom> = all.iter().copied().filter(|a| !violations.iter().any(|v| v.axiom == *a)).collect();
    let implied = IMPLICATIONS
        .iter()
        .filter(|(pre, _)| pre.iter().all(|a| holding.contains(a)))
        .map(|(pre, post)| (pre.to_vec(), *post))
        .collect();
    AxiomReport { violations, holding, implied }
}
