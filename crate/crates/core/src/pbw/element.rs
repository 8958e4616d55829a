use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use super::word::FreeExpr;
use super::Generator;
use crate::scalars::Scalar;

/// `Y^y F^f K^k Z^z X^x E^e`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PbwMono {
    pub y: u32,
    pub f: u32,
    pub k: i32,
    pub z: u32,
    pub x: u32,
    pub e: u32,
}

impl PbwMono {
    pub fn one() -> PbwMono {
        PbwMono::default()
    }

    pub fn is_one(&self) -> bool {
        *self == PbwMono::default()
    }

    pub fn generator(g: Generator) -> PbwMono {
        let mut m = PbwMono::one();
        m.push_front(g);
        m
    }

    /// Weight shift in powers of q.
    pub fn degree(&self) -> i64 {
        2 * self.e as i64 + self.x as i64 - self.y as i64 - 2 * self.f as i64
    }

    /// The leftmost generator and the rest.
    fn split_first(&self) -> Option<(Generator, PbwMono)> {
        let mut rest = *self;
        let g = if self.y > 0 {
            rest.y -= 1;
            Generator::Y
        } else if self.f > 0 {
            rest.f -= 1;
            Generator::F
        } else if self.k > 0 {
            rest.k -= 1;
            Generator::K
        } else if self.k < 0 {
            rest.k += 1;
            Generator::Kinv
        } else if self.z > 0 {
            rest.z -= 1;
            Generator::Z
        } else if self.x > 0 {
            rest.x -= 1;
            Generator::X
        } else if self.e > 0 {
            rest.e -= 1;
            Generator::E
        } else {
            return None;
        };
        Some((g, rest))
    }

    /// Left-multiplies by `g`, valid when `g` is not after the first letter.
    fn push_front(&mut self, g: Generator) {
        match g {
            Generator::Y => self.y += 1,
            Generator::F => self.f += 1,
            Generator::K => self.k += 1,
            Generator::Kinv => self.k -= 1,
            Generator::Z => self.z += 1,
            Generator::X => self.x += 1,
            Generator::E => self.e += 1,
        }
    }

    /// The monomial spelled as a word, left to right.
    pub fn word(&self) -> Vec<Generator> {
        let mut w = Vec::new();
        let mut m = *self;
        while let Some((g, rest)) = m.split_first() {
            w.push(g);
            m = rest;
        }
        w
    }
}

impl fmt::Display for PbwMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        let mut push = |name: &str, e: i64| match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        };
        push("Y", self.y as i64);
        push("F", self.f as i64);
        push("K", self.k as i64);
        push("Z", self.z as i64);
        push("X", self.x as i64);
        push("E", self.e as i64);
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A linear combination of normal monomials.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct PbwElement {
    terms: BTreeMap<PbwMono, Scalar>,
}

impl PbwElement {
    pub fn zero() -> PbwElement {
        PbwElement::default()
    }

    pub fn one() -> PbwElement {
        PbwElement::monomial(PbwMono::one(), Scalar::one())
    }

    pub fn scalar(c: Scalar) -> PbwElement {
        PbwElement::monomial(PbwMono::one(), c)
    }

    pub fn monomial(m: PbwMono, c: Scalar) -> PbwElement {
        let mut p = PbwElement::zero();
        p.add_term(m, &c);
        p
    }

    pub fn generator(g: Generator) -> PbwElement {
        PbwElement::monomial(PbwMono::generator(g), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMono, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &PbwMono) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, m: PbwMono, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                *x += c;
                if x.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &PbwElement, c: &Scalar) {
        for (m, x) in &other.terms {
            self.add_term(*m, &(x * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> PbwElement {
        let mut out = PbwElement::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn add(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &PbwElement) -> PbwElement {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::from_int(-1));
        out
    }

    pub fn mul(&self, other: &PbwElement) -> PbwElement {
        multiply(self, other)
    }

    /// `g * self` in normal form.
    pub fn left_mul_gen(&self, g: Generator) -> PbwElement {
        let mut out = PbwElement::zero();
        for (m, c) in &self.terms {
            out.add_scaled(&gen_times_mono(g, m), c);
        }
        out
    }

    /// `c * w * self` for a word `w`.
    fn left_mul_word(&self, word: &[Generator]) -> PbwElement {
        word.iter()
            .rev()
            .fold(self.clone(), |acc, &g| acc.left_mul_gen(g))
    }

    /// The element as a sum of words, one per monomial.
    pub fn to_free(&self) -> FreeExpr {
        let mut out = FreeExpr::zero();
        for (m, c) in &self.terms {
            out.add_word(m.word(), c);
        }
        out
    }
}

impl fmt::Display for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                write!(f, " + ")?;
            }
            match (c.is_one(), m.is_one()) {
                (true, _) => write!(f, "{m}")?,
                (false, true) => write!(f, "({c})")?,
                (false, false) => write!(f, "({c})*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for PbwElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PbwElement({self})")
    }
}

type Rule = Vec<(Scalar, Vec<Generator>)>;

/// Rewrites `g h` (with `g` after `h` in the normal order) as a sum of words.
fn swap_rule(g: Generator, h: Generator) -> Rule {
    use Generator::*;
    let q = Scalar::q_pow;
    let one = Scalar::one;
    match (g, h) {
        (F, Y) => vec![(one(), vec![Y, F])],
        (K, Y) => vec![(q(-1), vec![Y, K])],
        (K, F) => vec![(q(-2), vec![F, K])],
        (Kinv, Y) => vec![(q(1), vec![Y, Kinv])],
        (Kinv, F) => vec![(q(2), vec![F, Kinv])],
        (Z, h) => vec![(one(), vec![h, Z])],
        (X, Y) => vec![(q(1), vec![Y, X]), (Scalar::from_int(-1), vec![Z])],
        (X, F) => vec![(one(), vec![F, X]), (Scalar::from_int(-1), vec![Y, Kinv])],
        (X, K) => vec![(q(-1), vec![K, X])],
        (X, Kinv) => vec![(q(1), vec![Kinv, X])],
        (X, Z) => vec![(one(), vec![Z, X])],
        (E, Y) => vec![(one(), vec![X]), (q(-1), vec![Y, E])],
        (E, F) => {
            let c = (q(1) - q(-1)).inv().expect("q is not a root of unity");
            vec![(one(), vec![F, E]), (c.clone(), vec![K]), (-c, vec![Kinv])]
        }
        (E, K) => vec![(q(-2), vec![K, E])],
        (E, Kinv) => vec![(q(2), vec![Kinv, E])],
        (E, Z) => vec![(one(), vec![Z, E])],
        (E, X) => vec![(q(1), vec![X, E])],
        _ => unreachable!("no rule for {g}{h}"),
    }
}

type Cache = Mutex<HashMap<(Generator, PbwMono), Arc<PbwElement>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `g * m` in normal form (memoized).
fn gen_times_mono(g: Generator, m: &PbwMono) -> Arc<PbwElement> {
    if let Some(hit) = cache().lock().expect("cache lock").get(&(g, *m)) {
        return hit.clone();
    }
    let result = Arc::new(compute_gen_times_mono(g, m));
    cache()
        .lock()
        .expect("cache lock")
        .insert((g, *m), result.clone());
    result
}

fn compute_gen_times_mono(g: Generator, m: &PbwMono) -> PbwElement {
    let Some((h, rest)) = m.split_first() else {
        return PbwElement::generator(g);
    };
    if g.rank() <= h.rank() {
        let mut out = *m;
        out.push_front(g);
        return PbwElement::monomial(out, Scalar::one());
    }
    let rest = PbwElement::monomial(rest, Scalar::one());
    let mut out = PbwElement::zero();
    for (c, word) in swap_rule(g, h) {
        out.add_scaled(&rest.left_mul_word(&word), &c);
    }
    out
}

/// Product of two normal forms.
pub fn multiply(a: &PbwElement, b: &PbwElement) -> PbwElement {
    let mut out = PbwElement::zero();
    for (m, c) in &a.terms {
        out.add_scaled(&b.left_mul_word(&m.word()), c);
    }
    out
}

/// Rewrites a sum of words to PBW normal form.
pub fn normal_form(expr: &FreeExpr) -> PbwElement {
    let mut out = PbwElement::zero();
    for (word, c) in expr.terms() {
        out.add_scaled(&PbwElement::one().left_mul_word(word), c);
    }
    out
}
