//! Canonical rational form.
//!
//! A value is `num / Π factor^k` where `num` is a Laurent polynomial over
//! *atoms* (coordinates, `sin u`, `cos u`, `log u`, `u^(1/q)`) whose monomials
//! may also carry one `exp(u)` factor, and each denominator factor is a
//! primitive polynomial with at least two terms. Products of exponentials are
//! folded into a single `exp` of the summed argument. Monomials are kept
//! reduced modulo `sin²u + cos²u = 1` by the rewrite rules in [`trig_reduce`].
//!
//! Structural equality of two forms is the engine's symbolic equality. It is
//! exact on the rational part; common factors between numerator and
//! denominator are cancelled by trial division, which can miss cancellations
//! that only hold modulo the trigonometric identity.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::coords::Coord;
use super::expr::{Expr, Func, Node, Rational};
use super::SymError;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Atom {
    Var(Coord),
    Sin(Box<Rf>),
    Cos(Box<Rf>),
    Log(Box<Rf>),
    /// `base^(1/q)`; its exponent in a monomial is kept in `1..q`.
    Root(Box<Rf>, u32),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Mono {
    /// Sorted by atom, no zero exponents.
    powers: Vec<(Atom, i64)>,
    /// Argument of the exponential factor, never zero.
    exp: Option<Box<Rf>>,
}

pub(crate) type Poly = BTreeMap<Mono, Rational>;

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Rf {
    num: Poly,
    den: BTreeMap<Poly, u32>,
}

const DIVISION_STEP_LIMIT: usize = 4000;
const CONTENT_PASSES: usize = 8;

fn q_int(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(k))
}

// ---------------------------------------------------------------------------
// monomials

impl Mono {
    fn atom(atom: Atom, e: i64) -> Self {
        Mono { powers: vec![(atom, e)], exp: None }
    }

    fn exponential(arg: Rf) -> Self {
        if arg.is_zero() {
            Mono::default()
        } else {
            Mono { powers: Vec::new(), exp: Some(Box::new(arg)) }
        }
    }

    fn is_unit(&self) -> bool {
        self.powers.is_empty() && self.exp.is_none()
    }

    fn power_of(&self, atom: &Atom) -> i64 {
        self.powers
            .binary_search_by(|(a, _)| a.cmp(atom))
            .map(|k| self.powers[k].1)
            .unwrap_or(0)
    }

    fn set_power(&mut self, atom: Atom, e: i64) {
        match self.powers.binary_search_by(|(a, _)| a.cmp(&atom)) {
            Ok(k) if e == 0 => {
                self.powers.remove(k);
            }
            Ok(k) => self.powers[k].1 = e,
            Err(_) if e == 0 => {}
            Err(k) => self.powers.insert(k, (atom, e)),
        }
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut powers = Vec::with_capacity(self.powers.len() + other.powers.len());
        let (mut i, mut j) = (0, 0);
        while i < self.powers.len() || j < other.powers.len() {
            let ord = match (self.powers.get(i), other.powers.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    powers.push(self.powers[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    powers.push(other.powers[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.powers[i].1 + other.powers[j].1;
                    if e != 0 {
                        powers.push((self.powers[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        let exp = match (&self.exp, &other.exp) {
            (None, None) => None,
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (Some(a), Some(b)) => {
                let s = a.add(b).sealed();
                (!s.is_zero()).then(|| Box::new(s))
            }
        };
        Mono { powers, exp }
    }

    fn inv(&self) -> Mono {
        Mono {
            powers: self.powers.iter().map(|(a, e)| (a.clone(), -e)).collect(),
            exp: self.exp.as_ref().map(|a| Box::new(a.neg())),
        }
    }

    /// Lexicographic order on exponent vectors, then the weight of the
    /// exponential part. Both parts respect multiplication.
    fn lex_cmp(&self, other: &Mono) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.powers.get(i), other.powers.get(j)) {
                (None, None) => break,
                (Some((_, e)), None) => return e.cmp(&0),
                (None, Some((_, f))) => return 0.cmp(f),
                (Some((a, e)), Some((b, f))) => match a.cmp(b) {
                    Ordering::Less => return e.cmp(&0),
                    Ordering::Greater => return 0.cmp(f),
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
        let w = |m: &Mono| m.exp.as_deref().map_or(0.0, weight);
        w(self).total_cmp(&w(other)).then_with(|| self.exp.cmp(&other.exp))
    }

    fn roots_in_range(&self) -> bool {
        self.powers.iter().all(|(a, e)| match a {
            Atom::Root(_, q) => *e > 0 && *e < *q as i64,
            _ => true,
        })
    }
}

// ---------------------------------------------------------------------------
// polynomials

fn poly_add_term(p: &mut Poly, m: Mono, c: Rational) {
    if c.is_zero() {
        return;
    }
    match p.entry(m) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

fn poly_constant(c: Rational) -> Poly {
    let mut p = Poly::new();
    poly_add_term(&mut p, Mono::default(), c);
    p
}

fn poly_add(a: &Poly, b: &Poly) -> Poly {
    let mut out = a.clone();
    for (m, c) in b {
        poly_add_term(&mut out, m.clone(), c.clone());
    }
    out
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            poly_add_term(&mut out, ma.mul(mb), ca * cb);
        }
    }
    out
}

fn poly_scale(a: &Poly, m: &Mono, c: &Rational) -> Poly {
    let mut out = Poly::new();
    for (ma, ca) in a {
        poly_add_term(&mut out, ma.mul(m), ca * c);
    }
    out
}

fn poly_pow(a: &Poly, k: u32) -> Poly {
    let mut out = poly_constant(Rational::one());
    for _ in 0..k {
        out = trig_reduce(poly_mul(&out, a));
    }
    out
}

/// Rewrites monomials modulo `sin²u + cos²u = 1`:
///
/// * `cos^c u` with `c ≥ 2` becomes `cos^(c-2) u (1 - sin²u)`;
/// * `cos^c u · sin^s u` with `c < 0`, `s ≥ 2` becomes
///   `cos^c u sin^(s-2) u - cos^(c+2) u sin^(s-2) u`.
///
/// Both rules strictly move towards monomials where neither applies, so the
/// rewriting terminates.
pub(crate) fn trig_reduce(p: Poly) -> Poly {
    let needs = |m: &Mono| m.powers.iter().any(|(a, c)| matches!(a, Atom::Cos(_)) && (*c >= 2 || (*c < 0 && sin_partner(m, a) >= 2)));
    if !p.keys().any(needs) {
        return p;
    }
    let mut out = Poly::new();
    let mut work: Vec<(Mono, Rational)> = p.into_iter().collect();
    while let Some((m, c)) = work.pop() {
        let hit = m.powers.iter().find_map(|(a, e)| match a {
            Atom::Cos(u) if *e >= 2 || (*e < 0 && sin_partner(&m, a) >= 2) => Some(((**u).clone(), *e)),
            _ => None,
        });
        let Some((u, ce)) = hit else {
            poly_add_term(&mut out, m, c);
            continue;
        };
        let sin = Atom::Sin(Box::new(u.clone()));
        let cos = Atom::Cos(Box::new(u));
        let se = m.power_of(&sin);
        let (first, second) = if ce >= 2 {
            ((ce - 2, se), (ce - 2, se + 2))
        } else {
            ((ce, se - 2), (ce + 2, se - 2))
        };
        for ((cn, sn), sign) in [(first, 1), (second, -1)] {
            let mut mm = m.clone();
            mm.set_power(cos.clone(), cn);
            mm.set_power(sin.clone(), sn);
            let cc = if sign > 0 { c.clone() } else { -c.clone() };
            work.push((mm, cc));
        }
    }
    out
}

fn sin_partner(m: &Mono, cos: &Atom) -> i64 {
    match cos {
        Atom::Cos(u) => m.power_of(&Atom::Sin(u.clone())),
        _ => 0,
    }
}

/// Splits `p = coef · content · prim` where `prim` has leading coefficient 1
/// (under the lexicographic monomial order), no monomial content, and its
/// lightest exponential weight is zero.
fn split_content(p: &Poly) -> (Rational, Mono, Poly) {
    let mut coef = Rational::one();
    let mut content = Mono::default();
    let mut prim = p.clone();
    for _ in 0..CONTENT_PASSES {
        let (_, lead_c) = leading(&prim).expect("non-zero polynomial");
        let lead_c = lead_c.clone();
        let mut mins: BTreeMap<Atom, i64> = BTreeMap::new();
        let mut first = true;
        for m in prim.keys() {
            if first {
                for (a, e) in &m.powers {
                    mins.insert(a.clone(), *e);
                }
                first = false;
            } else {
                for (a, v) in mins.iter_mut() {
                    *v = (*v).min(m.power_of(a));
                }
                for (a, e) in &m.powers {
                    mins.entry(a.clone()).and_modify(|v| *v = (*v).min(*e)).or_insert((*e).min(0));
                }
            }
        }
        let lightest = prim.keys().min_by(|a, b| {
            let w = |m: &Mono| m.exp.as_deref().map_or(0.0, weight);
            w(a).total_cmp(&w(b)).then_with(|| a.exp.cmp(&b.exp))
        });
        let step = Mono {
            powers: mins.into_iter().filter(|(_, e)| *e != 0).collect(),
            exp: lightest.and_then(|m| m.exp.clone()),
        };
        if step.is_unit() && lead_c.is_one() {
            break;
        }
        let inv = step.inv();
        let scale = lead_c.recip();
        prim = trig_reduce(poly_scale(&prim, &inv, &scale));
        content = content.mul(&step);
        coef *= lead_c;
    }
    (coef, content, prim)
}

/// Pulls factors `sin²u - 1 = -cos²u` out of a primitive polynomial into the
/// monomial content, so that inverting `cos²u` (already rewritten as
/// `1 - sin²u`) yields the monomial `cos^-2 u`.
fn extract_cos_squares(mut coef: Rational, mut content: Mono, mut prim: Poly) -> (Rational, Mono, Poly) {
    let mut args: Vec<Rf> = Vec::new();
    for m in prim.keys() {
        for (a, _) in &m.powers {
            if let Atom::Sin(u) = a {
                if !args.contains(u) {
                    args.push((**u).clone());
                }
            }
        }
    }
    for u in args {
        let sin = Atom::Sin(Box::new(u.clone()));
        let mut f = poly_constant(-Rational::one());
        poly_add_term(&mut f, Mono::atom(sin, 2), Rational::one());
        while prim.len() > 1 {
            let Some(q) = div_exact(&prim, &f) else { break };
            let (c2, m2, p2) = split_content(&trig_reduce(q));
            coef = -coef * c2;
            content = content.mul(&m2).mul(&Mono::atom(Atom::Cos(Box::new(u.clone())), 2));
            prim = p2;
        }
    }
    (coef, content, prim)
}

fn leading(p: &Poly) -> Option<(&Mono, &Rational)> {
    p.iter().max_by(|a, b| a.0.lex_cmp(b.0))
}

/// Exact division `f / g` in the Laurent polynomial ring over the atoms and
/// exponentials; `None` when `g` does not divide `f` (or the search gives up).
///
/// Degrees in each atom and the weights of exponentials are additive under
/// multiplication, so every quotient term lies in a box computed up front.
fn div_exact(f: &Poly, g: &Poly) -> Option<Poly> {
    if f.is_empty() {
        return Some(Poly::new());
    }
    let (gm, gc) = leading(g)?;
    let (gm, gc) = (gm.clone(), gc.clone());
    let (fb, gb) = (degree_box(f), degree_box(g));
    let mut bounds: BTreeMap<&Atom, (i64, i64)> = BTreeMap::new();
    for a in fb.degrees.keys().chain(gb.degrees.keys()) {
        let (flo, fhi) = fb.degrees.get(a).copied().unwrap_or((0, 0));
        let (glo, ghi) = gb.degrees.get(a).copied().unwrap_or((0, 0));
        let (lo, hi) = (flo - glo, fhi - ghi);
        if lo > hi {
            return None;
        }
        bounds.insert(a, (lo, hi));
    }
    let eps = 1e-9 * (1.0 + fb.weights.0.abs().max(fb.weights.1.abs()));
    let (wlo, whi) = (fb.weights.0 - gb.weights.0 - eps, fb.weights.1 - gb.weights.1 + eps);
    let in_box = |t: &Mono| {
        let w = t.exp.as_deref().map_or(0.0, weight);
        (wlo..=whi).contains(&w)
            && t.powers.iter().all(|(a, e)| bounds.get(a).is_some_and(|(lo, hi)| lo <= e && e <= hi))
            && bounds.iter().all(|(a, (lo, hi))| (*lo..=*hi).contains(&t.power_of(a)))
    };
    let mut r = f.clone();
    let mut quotient = Poly::new();
    for _ in 0..DIVISION_STEP_LIMIT {
        let Some((rm, rc)) = leading(&r) else {
            return Some(quotient);
        };
        let t = rm.mul(&gm.inv());
        if !in_box(&t) {
            return None;
        }
        let tc = rc / &gc;
        r = poly_add(&r, &poly_scale(g, &t, &-tc.clone()));
        poly_add_term(&mut quotient, t, tc);
        if r.len() > 4 * (f.len() + g.len()) + 64 {
            return None;
        }
    }
    None
}

struct DegreeBox<'a> {
    /// Per-atom (min, max) exponent, missing atoms counting as 0.
    degrees: BTreeMap<&'a Atom, (i64, i64)>,
    /// (min, max) weight of the exponential parts.
    weights: (f64, f64),
}

fn degree_box(p: &Poly) -> DegreeBox<'_> {
    let mut degrees: BTreeMap<&Atom, (i64, i64)> = BTreeMap::new();
    for m in p.keys() {
        for (a, _) in &m.powers {
            degrees.entry(a).or_insert((i64::MAX, i64::MIN));
        }
    }
    let mut weights = (f64::INFINITY, f64::NEG_INFINITY);
    for m in p.keys() {
        for (a, (lo, hi)) in degrees.iter_mut() {
            let e = m.power_of(a);
            *lo = (*lo).min(e);
            *hi = (*hi).max(e);
        }
        let w = m.exp.as_deref().map_or(0.0, weight);
        weights = (weights.0.min(w), weights.1.max(w));
    }
    DegreeBox { degrees, weights }
}

/// Value of a form at a fixed generic point. It orders exponentials
/// compatibly with multiplication: `exp(u)exp(w)` weighs `weight(u) + weight(w)`.
fn weight(r: &Rf) -> f64 {
    thread_local! {
        static CACHE: std::cell::RefCell<HashMap<Rf, f64>> = std::cell::RefCell::new(HashMap::new());
    }
    if let Some(w) = CACHE.with(|c| c.borrow().get(r).copied()) {
        return w;
    }
    let w = generic_value(r);
    let w = if w.is_finite() { w } else { 0.0 };
    CACHE.with(|c| {
        let mut c = c.borrow_mut();
        if c.len() > 1 << 16 {
            c.clear();
        }
        c.insert(r.clone(), w);
    });
    w
}

fn generic_value(r: &Rf) -> f64 {
    let poly = |p: &Poly| -> f64 { p.iter().map(|(m, c)| c.to_f64().unwrap_or(0.0) * mono_value(m)).sum() };
    let mut v = poly(&r.num);
    for (f, k) in &r.den {
        v /= poly(f).powi(*k as i32);
    }
    v
}

fn mono_value(m: &Mono) -> f64 {
    let mut v = m.exp.as_deref().map_or(1.0, |u| generic_value(u).exp());
    for (a, e) in &m.powers {
        let base = match a {
            Atom::Var(c) => 0.5 + 0.5 * (0.618_033_988_7 * (c.0 as f64 + 1.0)).fract(),
            Atom::Sin(u) => generic_value(u).sin(),
            Atom::Cos(u) => generic_value(u).cos(),
            Atom::Log(u) => generic_value(u).abs().ln(),
            Atom::Root(u, q) => {
                let b = generic_value(u);
                b.signum() * b.abs().powf(1.0 / *q as f64)
            }
        };
        v *= base.powi(*e as i32);
    }
    v
}

// ---------------------------------------------------------------------------
// rational forms

impl Rf {
    pub(crate) fn zero() -> Self {
        Rf::default()
    }

    /// Same value with the denominator multiplied out into one polynomial,
    /// which is the shape a printed form parses back to. Used wherever a form
    /// is embedded in an atom or printed.
    pub(crate) fn sealed(self) -> Rf {
        if self.den.len() <= 1 && self.den.values().all(|k| *k == 1) {
            return self;
        }
        let mut d = poly_constant(Rational::one());
        for (f, k) in &self.den {
            d = trig_reduce(poly_mul(&d, &poly_pow(f, *k)));
        }
        Rf { num: self.num, den: BTreeMap::from([(d, 1)]) }
    }

    pub(crate) fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub(crate) fn constant(q: Rational) -> Self {
        Rf { num: poly_constant(q), den: BTreeMap::new() }
    }

    pub(crate) fn var(c: Coord) -> Self {
        Self::from_mono(Mono::atom(Atom::Var(c), 1), Rational::one())
    }

    fn from_mono(m: Mono, c: Rational) -> Self {
        let mut num = Poly::new();
        poly_add_term(&mut num, m, c);
        Rf { num, den: BTreeMap::new() }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub(crate) fn as_constant(&self) -> Option<Rational> {
        if self.num.is_empty() {
            return Some(Rational::zero());
        }
        if !self.den.is_empty() || self.num.len() != 1 {
            return None;
        }
        let (m, c) = self.num.iter().next()?;
        m.is_unit().then(|| c.clone())
    }

    /// Sign of the leading numerator coefficient.
    fn is_negative(&self) -> bool {
        leading(&self.num).is_some_and(|(_, c)| c.is_negative())
    }

    pub(crate) fn neg(&self) -> Rf {
        Rf {
            num: self.num.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            den: self.den.clone(),
        }
    }

    pub(crate) fn add(&self, other: &Rf) -> Rf {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return finish(poly_add(&self.num, &other.num), self.den.clone());
        }
        let mut lcm = self.den.clone();
        for (f, k) in &other.den {
            let e = lcm.entry(f.clone()).or_insert(0);
            *e = (*e).max(*k);
        }
        let lift = |r: &Rf| {
            let mut num = r.num.clone();
            for (f, k) in &lcm {
                let have = r.den.get(f).copied().unwrap_or(0);
                if *k > have {
                    num = trig_reduce(poly_mul(&num, &poly_pow(f, k - have)));
                }
            }
            num
        };
        let num = poly_add(&lift(self), &lift(other));
        finish(num, lcm)
    }

    pub(crate) fn sub(&self, other: &Rf) -> Rf {
        self.add(&other.neg())
    }

    pub(crate) fn mul(&self, other: &Rf) -> Rf {
        if self.is_zero() || other.is_zero() {
            return Rf::zero();
        }
        let settled = settle(poly_mul(&self.num, &other.num));
        let mut den = settled.den;
        for d in [&self.den, &other.den] {
            for (f, k) in d {
                *den.entry(f.clone()).or_insert(0) += k;
            }
        }
        finish(settled.num, den)
    }

    pub(crate) fn inv(&self) -> Result<Rf, SymError> {
        if self.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let (coef, content, prim) = split_content(&self.num);
        let (coef, content, prim) = extract_cos_squares(coef, content, prim);
        let mut num = poly_constant(Rational::one());
        for (f, k) in &self.den {
            num = trig_reduce(poly_mul(&num, &poly_pow(f, *k)));
        }
        let num = poly_scale(&num, &content.inv(), &coef.recip());
        let mut den = BTreeMap::new();
        if prim.len() == 1 {
            // prim is the unit monomial; nothing left in the denominator
            debug_assert!(prim.keys().next().is_some_and(Mono::is_unit));
        } else {
            den.insert(prim, 1);
        }
        let r = settle(num);
        let mut den_all = r.den;
        for (f, k) in den {
            *den_all.entry(f).or_insert(0) += k;
        }
        Ok(finish(r.num, den_all))
    }

    pub(crate) fn powi(&self, k: i64) -> Result<Rf, SymError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut out = Rf::one();
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(out)
    }

    pub(crate) fn pow_rational(&self, r: &Rational) -> Result<Rf, SymError> {
        if r.is_integer() {
            let k = r.to_integer().to_i64().ok_or(SymError::ExponentTooLarge)?;
            return self.powi(k);
        }
        if self.is_zero() {
            return if r.is_positive() { Ok(Rf::zero()) } else { Err(SymError::DivisionByZero) };
        }
        let p = r.numer().to_i64().ok_or(SymError::ExponentTooLarge)?;
        let q = r.denom().to_u32().ok_or(SymError::ExponentTooLarge)?;
        if let Some(c) = self.as_constant() {
            if let Some(root) = exact_root(&c, q) {
                return Rf::constant(root).powi(p);
            }
        }
        // pure exponentials: exp(u)^r = exp(r u)
        if self.den.is_empty() && self.num.len() == 1 {
            let (m, c) = self.num.iter().next().expect("one term");
            if c.is_one() && m.powers.is_empty() {
                if let Some(arg) = &m.exp {
                    return Ok(Rf::exp_of(&arg.mul(&Rf::constant(r.clone()))));
                }
            }
        }
        let (whole, rest) = (p.div_euclid(q as i64), p.rem_euclid(q as i64));
        let mut out = self.powi(whole)?;
        if rest != 0 {
            let atom = Atom::Root(Box::new(self.clone().sealed()), q);
            out = out.mul(&Rf::from_mono(Mono::atom(atom, rest), Rational::one()));
        }
        Ok(out)
    }

    pub(crate) fn exp_of(arg: &Rf) -> Rf {
        Rf::from_mono(Mono::exponential(arg.clone().sealed()), Rational::one())
    }

    pub(crate) fn sin_of(arg: &Rf) -> Rf {
        if arg.is_zero() {
            Rf::zero()
        } else if arg.is_negative() {
            Rf::sin_of(&arg.neg()).neg()
        } else {
            Rf::from_mono(Mono::atom(Atom::Sin(Box::new(arg.clone().sealed())), 1), Rational::one())
        }
    }

    pub(crate) fn cos_of(arg: &Rf) -> Rf {
        if arg.is_zero() {
            Rf::one()
        } else if arg.is_negative() {
            Rf::cos_of(&arg.neg())
        } else {
            Rf::from_mono(Mono::atom(Atom::Cos(Box::new(arg.clone().sealed())), 1), Rational::one())
        }
    }

    pub(crate) fn tan_of(arg: &Rf) -> Rf {
        if arg.is_zero() {
            return Rf::zero();
        }
        let u = (if arg.is_negative() { arg.neg() } else { arg.clone() }).sealed();
        let mut m = Mono::atom(Atom::Sin(Box::new(u.clone())), 1);
        m.set_power(Atom::Cos(Box::new(u)), -1);
        let t = Rf::from_mono(m, Rational::one());
        if arg.is_negative() {
            t.neg()
        } else {
            t
        }
    }

    pub(crate) fn log_of(arg: &Rf) -> Result<Rf, SymError> {
        if arg.is_zero() {
            return Err(SymError::LogOfZero);
        }
        if arg.as_constant().is_some_and(|c| c.is_one()) {
            return Ok(Rf::zero());
        }
        if arg.den.is_empty() && arg.num.len() == 1 {
            let (m, c) = arg.num.iter().next().expect("one term");
            if c.is_one() && m.powers.is_empty() {
                if let Some(u) = &m.exp {
                    return Ok((**u).clone());
                }
            }
        }
        Ok(Rf::from_mono(Mono::atom(Atom::Log(Box::new(arg.clone().sealed())), 1), Rational::one()))
    }

    // -----------------------------------------------------------------------
    // conversions

    pub(crate) fn from_expr(e: &Expr) -> Result<Rf, SymError> {
        Ok(match e.node() {
            Node::Const(q) => Rf::constant(q.clone()),
            Node::Coord(c) => Rf::var(*c),
            Node::Sum(terms) => {
                let mut acc = Rf::zero();
                for t in terms {
                    acc = acc.add(&Rf::from_expr(t)?);
                }
                acc
            }
            Node::Product(factors) => {
                let mut acc = Rf::one();
                for f in factors {
                    acc = acc.mul(&Rf::from_expr(f)?);
                    if acc.is_zero() {
                        break;
                    }
                }
                acc
            }
            Node::Pow(b, r) => Rf::from_expr(b)?.pow_rational(r)?,
            Node::Neg(a) => Rf::from_expr(a)?.neg(),
            Node::Func(f, a) => {
                let a = Rf::from_expr(a)?;
                match f {
                    Func::Sin => Rf::sin_of(&a),
                    Func::Cos => Rf::cos_of(&a),
                    Func::Tan => Rf::tan_of(&a),
                    Func::Exp => Rf::exp_of(&a),
                    Func::Log => Rf::log_of(&a)?,
                    Func::Sqrt => a.pow_rational(&Rational::new(1.into(), 2.into()))?,
                }
            }
        })
    }

    pub(crate) fn to_expr(&self) -> Expr {
        let num = poly_to_expr(&self.num);
        if self.den.is_empty() {
            return num;
        }
        let sealed = self.clone().sealed();
        let mut factors = vec![num];
        for (f, k) in &sealed.den {
            factors.push(Expr::powi(poly_to_expr(f), -(*k as i64)));
        }
        Expr::product(factors)
    }
}

fn exact_root(c: &Rational, q: u32) -> Option<Rational> {
    if c.is_negative() && q.is_multiple_of(2) {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.nth_root(q);
        (r.pow(q) == *n).then_some(r)
    };
    Some(Rational::new(root(c.numer())?, root(c.denom())?))
}

/// Brings root exponents back into `1..q` and applies [`trig_reduce`].
fn settle(p: Poly) -> Rf {
    if p.keys().all(Mono::roots_in_range) {
        return Rf { num: trig_reduce(p), den: BTreeMap::new() };
    }
    let mut acc = Rf::zero();
    for (m, c) in p {
        if m.roots_in_range() {
            let mut num = Poly::new();
            poly_add_term(&mut num, m, c);
            acc = acc.add(&Rf { num: trig_reduce(num), den: BTreeMap::new() });
            continue;
        }
        let mut mono = Mono { powers: Vec::new(), exp: m.exp.clone() };
        let mut extra = Rf::one();
        for (a, e) in &m.powers {
            match a {
                Atom::Root(base, q) if !(*e > 0 && *e < *q as i64) => {
                    let q = *q as i64;
                    let whole = e.div_euclid(q);
                    let rest = e.rem_euclid(q);
                    mono.set_power(a.clone(), rest);
                    // base is non-zero, it appeared under a root we could invert
                    extra = extra.mul(&base.powi(whole).unwrap_or_else(|_| Rf::zero()));
                }
                _ => mono.set_power(a.clone(), *e),
            }
        }
        acc = acc.add(&Rf::from_mono(mono, c).mul(&extra));
    }
    acc
}

/// Cancels denominator factors that divide the numerator.
fn finish(mut num: Poly, mut den: BTreeMap<Poly, u32>) -> Rf {
    if num.is_empty() {
        return Rf::zero();
    }
    for (f, k) in den.iter_mut() {
        while *k > 0 {
            match div_exact(&num, f) {
                Some(q) => {
                    num = trig_reduce(q);
                    *k -= 1;
                }
                None => break,
            }
        }
    }
    den.retain(|_, k| *k > 0);
    Rf { num, den }
}

fn poly_to_expr(p: &Poly) -> Expr {
    let terms = p.iter().map(|(m, c)| term_to_expr(m, c)).collect();
    Expr::sum(terms)
}

fn term_to_expr(m: &Mono, c: &Rational) -> Expr {
    let mut factors = Vec::new();
    let mag = c.abs();
    if !mag.is_one() || m.is_unit() {
        factors.push(Expr::constant(mag));
    }
    for (a, e) in &m.powers {
        let (base, exponent) = match a {
            Atom::Var(v) => (Expr::coord(*v), q_int(*e)),
            Atom::Sin(u) => (Expr::sin(u.to_expr()), q_int(*e)),
            Atom::Cos(u) => (Expr::cos(u.to_expr()), q_int(*e)),
            Atom::Log(u) => (Expr::log(u.to_expr()), q_int(*e)),
            Atom::Root(u, q) => (u.to_expr(), Rational::new((*e).into(), (*q as i64).into())),
        };
        factors.push(Expr::pow(base, exponent));
    }
    if let Some(arg) = &m.exp {
        factors.push(Expr::exp(arg.to_expr()));
    }
    let t = Expr::product(factors);
    if c.is_negative() {
        -t
    } else {
        t
    }
}
