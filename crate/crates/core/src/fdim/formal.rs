//! The action on `theta (x) F^s v_i` with `theta` a formal path in the quiver.
//!
//! A vector is a combination of `p(theta) (x) F^s v_r`, where `p` is a path
//! out of the starting vertex reduced modulo the relations: down-then-up
//! equals up-then-down away from vertex 0, and up-then-down at vertex 0 is
//! zero. Every path is thus `d` steps down followed by `u` steps up, or zero.
//! Identities verified here hold in every `G(rep)`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::pbw::{FreeExpr, Generator};
use crate::scalars::{qint, Scalar};
use crate::wmod::defining_relations;

/// `down` steps down, then `up` steps up, tensored with `F^s v_r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Key {
    down: usize,
    up: usize,
    s: usize,
}

#[derive(Clone, Copy)]
struct Formal {
    start: usize,
}

type Vector = BTreeMap<Key, Scalar>;

fn add(v: &mut Vector, k: Key, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let e = v.entry(k).or_insert_with(Scalar::zero);
    *e += &c;
    if e.is_zero() {
        v.remove(&k);
    }
}

impl Formal {
    fn vertex(&self, k: &Key) -> usize {
        self.start - k.down + k.up
    }

    /// The path followed by one step up.
    fn up(&self, k: Key) -> Option<Key> {
        Some(Key { up: k.up + 1, ..k })
    }

    /// The path followed by one step down, moved to the front; zero if it
    /// would pass below vertex 0.
    fn down(&self, k: Key) -> Option<Key> {
        (k.down < self.start).then_some(Key {
            down: k.down + 1,
            ..k
        })
    }

    fn apply_gen(&self, g: Generator, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (&k, c) in v {
            let i = self.vertex(&k);
            let (si, ii) = (k.s as i64, i as i64);
            let mut put = |key: Option<Key>, s: usize, x: Scalar| {
                if let Some(key) = key {
                    add(&mut out, Key { s, ..key }, c * &x);
                }
            };
            let over = |x: Scalar| x / qint(ii + 1);
            match g {
                Generator::E if k.s >= 1 => put(Some(k), k.s - 1, qint(si) * qint(ii + 1 - si)),
                Generator::F if k.s < i => put(Some(k), k.s + 1, Scalar::one()),
                Generator::K => put(Some(k), k.s, Scalar::q_pow(ii - 2 * si)),
                Generator::Kinv => put(Some(k), k.s, Scalar::q_pow(2 * si - ii)),
                Generator::X => {
                    put(self.up(k), k.s, over(Scalar::q_pow(si) * qint(ii + 1 - si)));
                    if k.s >= 1 {
                        put(
                            self.down(k),
                            k.s - 1,
                            -over(Scalar::q_pow(si - ii) * qint(si)),
                        );
                    }
                }
                Generator::Y => {
                    if k.s < i {
                        put(self.down(k), k.s, over(Scalar::q()));
                    }
                    put(self.up(k), k.s + 1, over(Scalar::one()));
                }
                _ => {}
            }
        }
        out
    }

    fn apply(&self, u: &FreeExpr, v: &Vector) -> Vector {
        let mut out = Vector::new();
        for (word, c) in u.terms() {
            let mut cur = v.clone();
            for &g in word.iter().rev() {
                cur = self.apply_gen(g, &cur);
            }
            for (k, x) in cur {
                add(&mut out, k, x * c);
            }
        }
        out
    }
}

/// One relation checked on `theta (x) F^s v_i`.
#[derive(Clone, Debug, Serialize)]
pub struct FormalCheck {
    pub i: usize,
    pub s: usize,
    pub relation: String,
    pub passed: bool,
}

/// Checks every defining relation, with `Z` acting by zero, on
/// `theta (x) F^s v_i` for a formal `theta` at vertex `i`, for all
/// `i <= max_i` and `s <= i`.
pub fn appendix_formal_suite(max_i: usize) -> Vec<FormalCheck> {
    let rels = defining_relations();
    let mut out = Vec::new();
    for i in 0..=max_i {
        let f = Formal { start: i };
        for s in 0..=i {
            let v = Vector::from([(Key { down: 0, up: 0, s }, Scalar::one())]);
            for r in &rels {
                out.push(FormalCheck {
                    i,
                    s,
                    relation: r.name.clone(),
                    passed: f.apply(&r.lhs, &v) == f.apply(&r.rhs, &v),
                });
            }
        }
    }
    out
}
