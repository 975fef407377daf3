//! Embedded knot and link data, plus pretzel diagrams.

use std::sync::OnceLock;

use serde::Deserialize;
use thiserror::Error;

use crate::conway::{homfly, HomflyAlgebra};
use crate::diagram::{parse_braid, BraidWord, DiagramError, Level, LinkDiagram, Pass};
use crate::kauffman::{jck_tilde, JckAlgebra};
use crate::supersig::{supersignature, table_parameters};
use crate::poly::{parse_poly, LaurentPoly, PolyError};

const ASSET: &str = include_str!("../assets/catalog.toml");

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog syntax: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("entry `{name}`: {source}")]
    Diagram { name: String, source: DiagramError },
    #[error("entry `{name}`, field {field}: {source}")]
    Poly { name: String, field: &'static str, source: PolyError },
    #[error("entry `{name}`: fix `{from}` does not occur in the printed text")]
    StaleFix { name: String, from: String },
    #[error("entry `{name}`: {msg}")]
    Invalid { name: String, msg: String },
    #[error("no entry named `{0}`")]
    Unknown(String),
}

#[derive(Debug, Deserialize)]
struct RawCatalog {
    entry: Vec<RawEntry>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum RawSig {
    Int(i64),
    Text(String),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    name: String,
    group: String,
    braid: Option<String>,
    braid_printed: Option<String>,
    diagram: Option<String>,
    strands: Option<usize>,
    jck_tilde: Option<String>,
    jck_tilde_printed: Option<String>,
    #[serde(default)]
    fixes: Vec<(String, String)>,
    #[serde(default)]
    jck_tilde_mirrored: bool,
    signatures: Option<Vec<RawSig>>,
    homfly: Option<String>,
    #[serde(default)]
    same_homfly_as: Vec<String>,
    provenance: String,
}

/// `None` is ∞.
pub type Signature = Option<i64>;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub group: String,
    pub braid: Option<BraidWord>,
    /// Braid as originally printed, when it had to be corrected.
    pub braid_printed: Option<String>,
    pub diagram: LinkDiagram,
    /// J̃ text as printed, before fixes.
    pub jck_tilde_printed: Option<String>,
    pub fixes: Vec<(String, String)>,
    /// Printed J̃ belongs to the mirror image; the expectation has `a ↦ a⁻¹` applied.
    pub jck_tilde_mirrored: bool,
    /// What `jck_tilde` must return on `diagram`.
    pub jck_tilde: Option<LaurentPoly>,
    /// σ at (½,½), (2,2), (1.6,0.1), (0.1,1.6).
    pub signatures: Option<[Signature; 4]>,
    pub homfly: Option<LaurentPoly>,
    pub same_homfly_as: Vec<String>,
    pub provenance: String,
}

impl CatalogEntry {
    /// The printed J̃ text after collapsing doubled signs and applying fixes.
    pub fn fixed_text(&self) -> Option<String> {
        let p = self.jck_tilde_printed.as_ref()?;
        let mut s = normalize(p);
        for (from, to) in &self.fixes {
            s = s.replacen(from, to, 1);
        }
        Some(s)
    }

    pub fn describe(&self) -> String {
        let mut out = format!("name: {}\ngroup: {}\n", self.name, self.group);
        match &self.braid {
            Some(b) => out += &format!("braid: {} ({} strands)\n", b, b.strands),
            None => out += "diagram:\n",
        }
        if let Some(b) = &self.braid_printed {
            out += &format!("braid as printed: {}\n", b);
        }
        out += &format!("components: {}, crossings: {}\n", self.diagram.component_count(), self.diagram.crossing_count());
        if let Some(j) = &self.jck_tilde {
            out += &format!("jck-tilde: {}\n", j);
        }
        for (a, b) in &self.fixes {
            out += &format!("  fix: `{}` -> `{}`\n", a, b);
        }
        if self.jck_tilde_mirrored {
            out += "  printed jck-tilde is for the mirror image (a -> 1/a applied)\n";
        }
        if let Some(s) = &self.signatures {
            let s: Vec<String> = s.iter().map(|v| v.map_or("inf".to_string(), |x| x.to_string())).collect();
            out += &format!("signatures: {}\n", s.join(", "));
        }
        if let Some(h) = &self.homfly {
            out += &format!("homfly: {}\n", h);
        }
        if !self.same_homfly_as.is_empty() {
            out += &format!("same homfly as: {}\n", self.same_homfly_as.join(", "));
        }
        out += &format!("provenance: {}\n", self.provenance);
        out
    }
}

/// Collapses whitespace and the `+ +` / `- -` doubling left by line breaks.
pub fn normalize(text: &str) -> String {
    let mut s = text.split_whitespace().collect::<Vec<_>>().join(" ");
    loop {
        let next = s.replace("+ +", "+").replace("++", "+").replace("- -", "-").replace("--", "-");
        if next == s {
            return s;
        }
        s = next;
    }
}

fn mirror_a(p: &LaurentPoly) -> LaurentPoly {
    let vars = p.vars().clone();
    let a_inv = LaurentPoly::from_terms(&vars, p.terms().map(|(e, c)| {
        let mut e = e.clone();
        e[0] = -e[0];
        (e, c.clone())
    }));
    a_inv
}

fn build(raw: RawEntry) -> Result<CatalogEntry, CatalogError> {
    let name = raw.name.clone();
    let dia_err = |source| CatalogError::Diagram { name: name.clone(), source };
    let (braid, diagram) = match (&raw.braid, &raw.diagram) {
        (Some(b), None) => {
            let mut w = parse_braid(b).map_err(dia_err)?;
            if let Some(n) = raw.strands {
                w = w.with_strands(n);
            }
            let d = w.closure();
            (Some(w), d)
        }
        (None, Some(t)) => (None, LinkDiagram::parse_text(t).map_err(dia_err)?),
        _ => return Err(CatalogError::Invalid { name, msg: "exactly one of braid/diagram".into() }),
    };
    diagram.validate().map_err(dia_err)?;

    let jv = JckAlgebra::new().vars().clone();
    let hv = HomflyAlgebra::new().vars().clone();
    let poly = |field, text: &str, vars| {
        parse_poly(text, vars).map_err(|source| CatalogError::Poly { name: name.clone(), field, source })
    };

    let mut entry = CatalogEntry {
        name: raw.name.clone(),
        group: raw.group,
        braid,
        braid_printed: raw.braid_printed,
        diagram,
        jck_tilde_printed: raw.jck_tilde_printed,
        fixes: raw.fixes,
        jck_tilde_mirrored: raw.jck_tilde_mirrored,
        jck_tilde: None,
        signatures: None,
        homfly: None,
        same_homfly_as: raw.same_homfly_as,
        provenance: raw.provenance,
    };
    if let Some(p) = &entry.jck_tilde_printed {
        let norm = normalize(p);
        if let Some((from, _)) = entry.fixes.iter().find(|(f, _)| !norm.contains(f.as_str())) {
            return Err(CatalogError::StaleFix { name, from: from.clone() });
        }
    }
    let text = match (&raw.jck_tilde, entry.fixed_text()) {
        (Some(_), Some(_)) => {
            return Err(CatalogError::Invalid { name, msg: "both jck_tilde and jck_tilde_printed".into() })
        }
        (Some(t), None) => Some(t.clone()),
        (None, t) => t,
    };
    if let Some(t) = text {
        let p = poly("jck_tilde", &t, &jv)?;
        entry.jck_tilde = Some(if entry.jck_tilde_mirrored { mirror_a(&p) } else { p });
    }
    if let Some(h) = &raw.homfly {
        entry.homfly = Some(poly("homfly", h, &hv)?);
    }
    if let Some(sigs) = raw.signatures {
        let vals = sigs
            .into_iter()
            .map(|s| match s {
                RawSig::Int(v) => Ok(Some(v)),
                RawSig::Text(t) if t == "inf" => Ok(None),
                RawSig::Text(t) => Err(CatalogError::Invalid { name: name.clone(), msg: format!("signature `{t}`") }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arr: [Signature; 4] = vals
            .try_into()
            .map_err(|_| CatalogError::Invalid { name: name.clone(), msg: "need four signatures".into() })?;
        entry.signatures = Some(arr);
    }
    Ok(entry)
}

/// Parses the embedded catalog.
pub fn load_catalog() -> Result<Vec<CatalogEntry>, CatalogError> {
    let raw: RawCatalog = toml::from_str(ASSET)?;
    let entries = raw.entry.into_iter().map(build).collect::<Result<Vec<_>, _>>()?;
    for e in &entries {
        for other in &e.same_homfly_as {
            if !entries.iter().any(|x| &x.name == other) {
                return Err(CatalogError::Unknown(other.clone()));
            }
        }
    }
    Ok(entries)
}

/// The embedded catalog, parsed once. Panics if the embedded data is broken
/// (a unit test guards that).
pub fn catalog() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(|| load_catalog().expect("embedded catalog"))
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    catalog().iter().find(|e| e.name == name).ok_or_else(|| CatalogError::Unknown(name.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Mismatch,
    /// The computation itself failed (undefined operation and the like).
    Error,
}

/// One recomputed expectation.
#[derive(Debug, Clone)]
pub struct Check {
    pub entry: String,
    pub invariant: String,
    pub expected: String,
    pub actual: String,
    pub outcome: Outcome,
}

impl Check {
    fn new(e: &CatalogEntry, invariant: impl Into<String>, expected: String, actual: Result<String, String>) -> Self {
        let (actual, outcome) = match actual {
            Ok(a) if a == expected => (a, Outcome::Pass),
            Ok(a) => (a, Outcome::Mismatch),
            Err(msg) => (msg, Outcome::Error),
        };
        Check { entry: e.name.clone(), invariant: invariant.into(), expected, actual, outcome }
    }
}

/// Recomputes every expectation stored on `e`.
pub fn verify_entry(e: &CatalogEntry) -> Vec<Check> {
    let mut out = Vec::new();
    if let Some(j) = &e.jck_tilde {
        let got = jck_tilde(&e.diagram);
        out.push(Check::new(e, "jck-tilde", j.to_string(), Ok(got.to_string())));
    }
    if let Some(sigs) = &e.signatures {
        for ((u, v), want) in table_parameters().iter().zip(sigs) {
            let fmt = |z: &Signature| z.map_or("inf".to_string(), |z| z.to_string());
            let got = supersignature(&e.diagram, u, v).map(|s| fmt(&s.z)).map_err(|err| err.to_string());
            out.push(Check::new(e, format!("supersig({}, {})", u, v), fmt(want), got));
        }
    }
    let h = homfly(&e.diagram);
    if let Some(want) = &e.homfly {
        out.push(Check::new(e, "homfly", want.to_string(), Ok(h.to_string())));
    }
    for other in &e.same_homfly_as {
        let want = match entry(other) {
            Ok(o) => Ok(homfly(&o.diagram).to_string()),
            Err(err) => Err(err.to_string()),
        };
        match want {
            Ok(w) => out.push(Check::new(e, format!("homfly = homfly({other})"), w, Ok(h.to_string()))),
            Err(msg) => out.push(Check::new(e, format!("homfly = homfly({other})"), String::new(), Err(msg))),
        }
    }
    out
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PretzelError {
    #[error("pretzel needs at least one strip")]
    Empty,
    #[error("strip {0} has zero twists")]
    ZeroTwist(usize),
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Pretzel link with vertical strips of `p[i]` half twists, left to right.
///
/// Strips are joined by arcs above and below; the outer arcs close strip n
/// back to strip 1. Positive `p` puts the strand from top-left to
/// bottom-right of each crossing on top; `pretzel(&[1, 1, 1])` is the right
/// trefoil. Each component is oriented so that the first upper arc it meets,
/// scanning from the outer arc leftwards, runs right to left.
pub fn pretzel(p: &[i64]) -> Result<LinkDiagram, PretzelError> {
    let n = p.len();
    if n == 0 {
        return Err(PretzelError::Empty);
    }
    if let Some(i) = p.iter().position(|&x| x == 0) {
        return Err(PretzelError::ZeroTwist(i));
    }
    let offset: Vec<usize> = p.iter().scan(0usize, |acc, &x| {
        let o = *acc;
        *acc += x.unsigned_abs() as usize;
        Some(o)
    }).collect();
    let total = p.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>();
    // per crossing: direction of the over and under strands, once seen
    let mut over_dir = vec![(0i8, 0i8); total];
    let mut under_dir = vec![(0i8, 0i8); total];
    // upper arc k joins strip k-1's top right to strip k's top left (k = 0 is the outer arc)
    let mut arc_used = vec![false; n];
    let mut comps = Vec::new();

    let order = std::iter::once(0).chain((1..n).rev());
    for start_arc in order {
        if arc_used[start_arc] {
            continue;
        }
        // walking the arc right to left drops into strip (start_arc + n - 1) % n at top right,
        // except the outer arc, which enters strip 0 at top left
        let (mut strip, mut side) = if start_arc == 0 { (0, Side::Left) } else { (start_arc - 1, Side::Right) };
        let first = (strip, side);
        let mut walk = Vec::new();
        arc_used[start_arc] = true;
        loop {
            // down through the strip
            let twists = p[strip].unsigned_abs() as usize;
            for k in 0..twists {
                let c = offset[strip] + k;
                let tl_br = side == Side::Left;
                let dir = if tl_br { (1, -1) } else { (-1, -1) };
                let over = tl_br == (p[strip] > 0);
                walk.push(Pass { crossing: c, level: if over { Level::Over } else { Level::Under } });
                if over { over_dir[c] = dir } else { under_dir[c] = dir }
                side = if tl_br { Side::Right } else { Side::Left };
            }
            // along a lower arc, then up a strip
            let (s2, side2) = match side {
                Side::Right => ((strip + 1) % n, Side::Left),
                Side::Left => ((strip + n - 1) % n, Side::Right),
            };
            strip = s2;
            side = side2;
            let twists = p[strip].unsigned_abs() as usize;
            for k in (0..twists).rev() {
                let c = offset[strip] + k;
                let tl_br = side == Side::Right;
                let dir = if tl_br { (-1, 1) } else { (1, 1) };
                let over = tl_br == (p[strip] > 0);
                walk.push(Pass { crossing: c, level: if over { Level::Over } else { Level::Under } });
                if over { over_dir[c] = dir } else { under_dir[c] = dir }
                side = if tl_br { Side::Left } else { Side::Right };
            }
            // along an upper arc
            let (s2, side2, arc) = match side {
                Side::Right => ((strip + 1) % n, Side::Left, (strip + 1) % n),
                Side::Left => ((strip + n - 1) % n, Side::Right, strip),
            };
            arc_used[arc] = true;
            strip = s2;
            side = side2;
            if (strip, side) == first {
                break;
            }
        }
        comps.push(walk);
    }
    let signs = (0..total)
        .map(|c| {
            let (o, u) = (over_dir[c], under_dir[c]);
            let cross = o.0 as i32 * u.1 as i32 - o.1 as i32 * u.0 as i32;
            if cross > 0 { 1 } else { -1 }
        })
        .collect();
    Ok(LinkDiagram::from_gauss(comps, signs).expect("pretzel construction is a valid diagram"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_and_covers_the_table() {
        let c = load_catalog().unwrap();
        assert!(c.len() >= 15);
        assert_eq!(c.iter().filter(|e| e.group == "table").count(), 11);
        let e = entry("10_125").unwrap();
        assert_eq!(e.braid.as_ref().unwrap().to_string(), "s1^-3 s2^-1 s1^5 s2^-1");
        assert_eq!(e.signatures, Some([Some(-2), Some(0), Some(-2), Some(-2)]));
        assert_eq!(entry("8_8").unwrap().signatures, Some([Some(0); 4]));
    }

    #[test]
    fn normalizes_line_breaks() {
        assert_eq!(normalize("a +  + b - \n - c"), "a + b - c");
    }

    #[test]
    fn pretzel_small_cases() {
        let t = homfly(&parse_braid("s1^3").unwrap().closure());
        assert_eq!(homfly(&pretzel(&[1, 1, 1]).unwrap()), t);
        // one strip closed on itself is a twisted unknot; N(1 + 1/2) is the other trefoil
        assert!(homfly(&pretzel(&[3]).unwrap()).is_one());
        assert_eq!(homfly(&pretzel(&[1, 2]).unwrap()), homfly(&parse_braid("s1^-3").unwrap().closure()));
        assert_eq!(homfly(&pretzel(&[-1, -1, -1]).unwrap()), homfly(&parse_braid("s1^-3").unwrap().closure()));
        assert_eq!(pretzel(&[2, 3]).unwrap().crossing_count(), 5);
        assert_eq!(pretzel(&[]).unwrap_err(), PretzelError::Empty);
        assert_eq!(pretzel(&[1, 0]).unwrap_err(), PretzelError::ZeroTwist(1));
    }

    #[test]
    fn pretzel_mutants_share_homfly() {
        let a = homfly(&pretzel(&[-2, 3, 7]).unwrap());
        assert_eq!(homfly(&pretzel(&[3, -2, 7]).unwrap()), a);
        assert_eq!(homfly(&pretzel(&[7, 3, -2]).unwrap()), a);
        assert_ne!(homfly(&pretzel(&[2, 3, 7]).unwrap()), a);
    }

    #[test]
    fn pretzel_components() {
        assert_eq!(pretzel(&[3, 5, 3, -5, -3, -3]).unwrap().component_count(), 2);
        assert_eq!(pretzel(&[-2, 3, 7]).unwrap().component_count(), 1);
        assert_eq!(pretzel(&[2, 2]).unwrap().component_count(), 2);
        assert_eq!(pretzel(&[2, 2, 2]).unwrap().component_count(), 3);
    }

    #[test]
    fn verify_small_entries() {
        for name in ["right_trefoil", "hopf", "figure_eight", "lk_pair_b"] {
            let checks = verify_entry(entry(name).unwrap());
            assert!(!checks.is_empty());
            for c in checks {
                assert_eq!(c.outcome, Outcome::Pass, "{c:?}");
            }
        }
    }
}
