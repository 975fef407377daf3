//! Checks shared by the acceptance runner and the property tests. Each
//! returns a description of the first failure.
#![allow(dead_code)]

use conwaykit::conway::{evaluate, homfly, jones, three_var_invariant, HomflyAlgebra};
use conwaykit::diagram::{BraidWord, LinkDiagram};
use conwaykit::kauffman::{
    homfly_regular, jck_tilde, jones_from_kauffman, kauffman_f, kauffman_l, q_polynomial, KauffmanLAlgebra,
};
use conwaykit::poly::{vars, LaurentPoly, Rational, Vars};
use rand::Rng;

pub type Check = Result<(), String>;

pub fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn mono(v: &Vars, c: i64, units: &[i32]) -> LaurentPoly {
    LaurentPoly::monomial(v, c, units)
}

fn hv() -> Vars {
    HomflyAlgebra::new().vars().clone()
}

fn kv() -> Vars {
    KauffmanLAlgebra::new().vars().clone()
}

/// `p` with `name ↦ name⁻¹`.
pub fn invert_var(p: &LaurentPoly, name: &str) -> LaurentPoly {
    let v = p.vars().clone();
    let i = v.iter().position(|s| s.name == name).expect("variable");
    let terms = p.terms().map(|(e, c)| {
        let mut e = e.clone();
        e[i] = -e[i];
        (e, c.clone())
    });
    LaurentPoly::from_terms(&v, terms)
}

pub fn swap_xy(p: &LaurentPoly) -> LaurentPoly {
    let v = p.vars().clone();
    let x = LaurentPoly::var(&v, "x");
    let y = LaurentPoly::var(&v, "y");
    p.substitute(&[("x", y), ("y", x)], &v).unwrap()
}

/// (L₊, L₋, L∘, L∞) at crossing `p` of `d`.
pub fn skein_quad(d: &LinkDiagram, p: usize) -> (LinkDiagram, LinkDiagram, LinkDiagram, LinkDiagram) {
    let sw = d.switch_crossing(p).unwrap();
    let (plus, minus) = if d.sign(p) > 0 { (d.clone(), sw) } else { (sw, d.clone()) };
    (plus, minus, d.smooth_oriented(p).unwrap(), d.smooth_unoriented(p).unwrap())
}

/// x·P(L₊) + y·P(L₋) = P(L∘) at every crossing.
pub fn homfly_skein(d: &LinkDiagram) -> Check {
    let v = hv();
    let (x, y) = (LaurentPoly::var(&v, "x"), LaurentPoly::var(&v, "y"));
    for p in 0..d.crossing_count() {
        let (lp, lm, l0, _) = skein_quad(d, p);
        let lhs = &(&x * &homfly(&lp)) + &(&y * &homfly(&lm));
        ensure(lhs == homfly(&l0), || format!("HOMFLY skein fails at crossing {p} of\n{}", d.to_text()))?;
    }
    Ok(())
}

/// L(L₊) + L(L₋) = z·(L(L∘) + L(L∞)) at every crossing.
pub fn kauffman_skein(d: &LinkDiagram) -> Check {
    let z = LaurentPoly::var(&kv(), "z");
    for p in 0..d.crossing_count() {
        let (lp, lm, l0, linf) = skein_quad(d, p);
        let lhs = &kauffman_l(&lp) + &kauffman_l(&lm);
        let rhs = &z * &(&kauffman_l(&l0) + &kauffman_l(&linf));
        ensure(lhs == rhs, || format!("Kauffman skein fails at crossing {p} of\n{}", d.to_text()))?;
    }
    Ok(())
}

/// Random braid with `1..=max_len` letters on 2–4 strands.
pub fn random_braid<R: Rng>(rng: &mut R, max_len: usize) -> BraidWord {
    let strands = rng.gen_range(2..=4);
    let len = rng.gen_range(1..=max_len);
    BraidWord::random(rng, strands, len)
}

/// A random legal move that keeps the word at most `cap` letters long.
fn step<R: Rng>(rng: &mut R, w: &BraidWord, allow_stabilize: bool, cap: usize) -> BraidWord {
    loop {
        let op = w.random_op(rng, allow_stabilize);
        let next = w.apply(op).unwrap();
        if next.letters.len() <= cap {
            return next;
        }
    }
}

fn ambient(d: &LinkDiagram) -> [LaurentPoly; 5] {
    [homfly(d), jones(d), kauffman_f(d), q_polynomial(d), jck_tilde(d)]
}

const AMBIENT_NAMES: [&str; 5] = ["homfly", "jones", "kauffman-f", "q", "jck-tilde"];

/// Ambient-isotopy invariants are constant along a chain of Markov moves.
pub fn markov_chain<R: Rng>(rng: &mut R, start: &BraidWord, steps: usize) -> Check {
    let want = ambient(&start.closure());
    let mut w = start.clone();
    for k in 0..steps {
        w = step(rng, &w, true, 12);
        let got = ambient(&w.closure());
        for i in 0..5 {
            ensure(got[i] == want[i], || {
                format!("{} changes after {} moves: {} -> {}", AMBIENT_NAMES[i], k + 1, start, w)
            })?;
        }
    }
    Ok(())
}

/// L and R are constant along writhe-preserving chains, and a stabilization
/// σₙ^ε multiplies both by a^ε.
pub fn regular_chain<R: Rng>(rng: &mut R, start: &BraidWord, steps: usize) -> Check {
    let d0 = start.closure();
    let (l0, r0) = (kauffman_l(&d0), homfly_regular(&d0));
    let mut w = start.clone();
    for k in 0..steps {
        w = step(rng, &w, false, 12);
        let d = w.closure();
        ensure(d.writhe() == d0.writhe(), || format!("writhe changed at step {k}"))?;
        ensure(kauffman_l(&d) == l0, || format!("L changes after {} moves: {} -> {}", k + 1, start, w))?;
        ensure(homfly_regular(&d) == r0, || format!("R changes after {} moves: {} -> {}", k + 1, start, w))?;
    }
    for eps in [1i8, -1] {
        let mut letters = start.letters.clone();
        letters.push((start.strands, eps));
        let d = BraidWord::new(start.strands + 1, letters).closure();
        let f = mono(&kv(), 1, &[eps as i32, 0]);
        ensure(kauffman_l(&d) == &f * &l0, || format!("L of {start} stabilized by {eps} is not a^{eps} L"))?;
        let r = homfly_regular(&d);
        let fr = mono(r.vars(), 1, &[eps as i32, 0]);
        ensure(r == &fr * &r0, || format!("R of {start} stabilized by {eps} is not a^{eps} R"))?;
    }
    Ok(())
}

/// P(mirror)(x, y) = P(y, x); F(mirror)(a, z) = F(a⁻¹, z); J̃(mirror) = J̃ with a ↦ a⁻¹.
pub fn mirror_laws(d: &LinkDiagram) -> Check {
    let m = d.mirror();
    ensure(homfly(&m) == swap_xy(&homfly(d)), || format!("HOMFLY mirror law fails on\n{}", d.to_text()))?;
    ensure(kauffman_f(&m) == invert_var(&kauffman_f(d), "a"), || format!("F mirror law fails on\n{}", d.to_text()))?;
    ensure(jck_tilde(&m) == invert_var(&jck_tilde(d), "a"), || format!("J~ mirror law fails on\n{}", d.to_text()))
}

/// P(L₁⊔L₂) = (x+y)P₁P₂, P(L₁#L₂) = P₁P₂, F(L₁#L₂) = F₁F₂, F(L₁⊔L₂) = μF₁F₂.
pub fn sum_laws(a: &LinkDiagram, b: &LinkDiagram) -> Check {
    let v = hv();
    let s = &LaurentPoly::var(&v, "x") + &LaurentPoly::var(&v, "y");
    let (pa, pb) = (homfly(a), homfly(b));
    ensure(homfly(&a.disjoint_sum(b)) == &(&s * &pa) * &pb, || "HOMFLY disjoint-sum law".into())?;
    ensure(homfly(&a.connected_sum(b)) == &pa * &pb, || "HOMFLY connected-sum law".into())?;
    let k = kv();
    let mu = &(&mono(&k, 1, &[1, -1]) + &mono(&k, 1, &[-1, -1])) - &LaurentPoly::one(&k);
    let (fa, fb) = (kauffman_f(a), kauffman_f(b));
    ensure(kauffman_f(&a.connected_sum(b)) == &fa * &fb, || "F connected-sum law".into())?;
    ensure(kauffman_f(&a.disjoint_sum(b)) == &(&mu * &fa) * &fb, || "F disjoint-sum law".into())
}

/// Every monomial of P has total degree ≡ n + 1 (mod 2); (x + y − 1) divides P − 1.
pub fn parity_and_divisibility(d: &LinkDiagram) -> Check {
    let p = homfly(d);
    let want = (d.component_count() as i32 + 1) % 2;
    for (e, _) in p.terms() {
        ensure((e[0] + e[1]).rem_euclid(2) == want, || format!("monomial {:?} has the wrong parity in {}", e, p))?;
    }
    let v = p.vars().clone();
    let lin = &(&LaurentPoly::var(&v, "x") + &LaurentPoly::var(&v, "y")) - &LaurentPoly::one(&v);
    let q = (&p - &LaurentPoly::one(&v)).div_exact(&lin).map_err(|e| format!("x+y-1 does not divide P-1: {e}"))?;
    ensure(&q * &lin == &p - &LaurentPoly::one(&v), || "division check".into())
}

/// w(x, y, z) = P + z·(P − 1)/(x + y − 1) for the three-variable invariant.
pub fn redundancy(d: &LinkDiagram) -> Check {
    let w = three_var_invariant(d);
    let v = w.vars().clone();
    let p = homfly(d).lift(&v).map_err(|e| e.to_string())?;
    let one = LaurentPoly::one(&v);
    let lin = &(&LaurentPoly::var(&v, "x") + &LaurentPoly::var(&v, "y")) - &one;
    let q = (&p - &one).div_exact(&lin).map_err(|e| e.to_string())?;
    ensure(w == &p + &(&LaurentPoly::var(&v, "z") * &q), || format!("three-variable redundancy fails on\n{}", d.to_text()))
}

fn tq() -> Vars {
    vars(&[("t", 4)])
}

fn t_pow(num: i64, den: i64) -> LaurentPoly {
    LaurentPoly::monomial_rational(&tq(), 1, &[Rational::new(num, den)]).unwrap()
}

fn quarter(p: &LaurentPoly) -> LaurentPoly {
    p.lift(&tq()).unwrap()
}

/// Ṽ = t^(3tw/4)·V, a regular-isotopy invariant.
fn v_tilde(d: &LinkDiagram) -> LaurentPoly {
    &t_pow(3 * d.writhe(), 4) * &quarter(&jones(d))
}

/// V from the skein tree equals V from F; Ṽ(L₊) = −t^¼Ṽ(L∘) − t^−¼Ṽ(L∞) at every crossing.
pub fn jones_kauffman(d: &LinkDiagram) -> Check {
    ensure(quarter(&jones(d)) == jones_from_kauffman(d), || format!("V differs from F(t^3/4, ..) on\n{}", d.to_text()))?;
    for p in 0..d.crossing_count() {
        let (lp, _, _, _) = skein_quad(d, p);
        let (l0, linf) = (lp.smooth_oriented(p).unwrap(), lp.smooth_unoriented(p).unwrap());
        let rhs = &(&(-&t_pow(1, 4)) * &v_tilde(&l0)) - &(&t_pow(-1, 4) * &v_tilde(&linf));
        ensure(v_tilde(&lp) == rhs, || format!("V~ recursion fails at crossing {p} of\n{}", d.to_text()))?;
    }
    Ok(())
}

/// On a 2-component link with λ = lk: reversing one component multiplies F by
/// a^(4λ) and V by t^(3λ); at every mixed crossing
/// √t·V(L₊) − V(L₋)/√t = (√t − 1/√t)·t^(−3(λ₊ − ½))·V(L∞), λ₊ = lk of L₊.
pub fn reversing(d: &LinkDiagram) -> Check {
    ensure(d.component_count() == 2, || "needs a 2-component link".into())?;
    let lam = d.linking_number(0, 1);
    let f = kauffman_f(d);
    let v = quarter(&jones(d));
    for i in 0..2 {
        let r = d.reverse_component(i).unwrap();
        let fa = mono(f.vars(), 1, &[4 * lam as i32, 0]);
        ensure(kauffman_f(&r) == &fa * &f, || format!("F reversing formula fails (component {i})"))?;
        ensure(quarter(&jones(&r)) == &t_pow(3 * lam, 1) * &v, || format!("V reversing formula fails (component {i})"))?;
    }
    let delta = &t_pow(1, 2) - &t_pow(-1, 2);
    for p in (0..d.crossing_count()).filter(|&p| !d.is_self_crossing(p)) {
        let (lp, lm, _, linf) = skein_quad(d, p);
        let lam_plus = lp.linking_number(0, 1);
        let lhs = &(&t_pow(1, 2) * &quarter(&jones(&lp))) - &(&t_pow(-1, 2) * &quarter(&jones(&lm)));
        let rhs = &(&delta * &t_pow(-3 * (2 * lam_plus - 1), 2)) * &quarter(&jones(&linf));
        ensure(lhs == rhs, || format!("L-infinity formula fails at crossing {p} of\n{}", d.to_text()))?;
    }
    Ok(())
}

/// r-deg of V in t.
pub fn jones_span(d: &LinkDiagram) -> Rational {
    jones(d).reduced_degree("t").unwrap()
}

/// The finite-algebra value, one-based.
pub fn finite_value(t: &conwaykit::conway::FiniteAlgebraTable, d: &LinkDiagram) -> usize {
    evaluate(d, t).unwrap() as usize + 1
}

/// Braid words on 2–4 strands with `1..=max_len` letters.
pub fn braid(max_len: usize) -> impl proptest::strategy::Strategy<Value = BraidWord> {
    use proptest::prelude::*;
    (2usize..=4).prop_flat_map(move |n| {
        prop::collection::vec((1..n, any::<bool>()), 1..=max_len)
            .prop_map(move |l| BraidWord::new(n, l.into_iter().map(|(i, s)| (i, if s { 1 } else { -1 })).collect()))
    })
}
