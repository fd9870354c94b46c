//! Verification of relation instances.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::cache::CharacterSource;
use super::relations::{highest_monomial_balance, Balance, RelationInstance};
use crate::error::Result;
use crate::monomial::LMonomial;
use crate::qchar::QCharacter;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VerifyMethod {
    /// Both sides expanded and compared as Laurent polynomials.
    Expanded,
    /// Dominant coefficients compared exactly (this decides equality of
    /// products of module characters) and the full identity evaluated at
    /// random points modulo a prime.
    Dominant,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Largest number of monomial products for which a side is expanded.
    pub expand_limit: u64,
    /// Random evaluation points used by [`VerifyMethod::Dominant`].
    pub evaluation_rounds: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { expand_limit: 2_000_000, evaluation_rounds: 3, seed: 0x5eed }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub instance: RelationInstance,
    pub balance: Balance,
    pub method: VerifyMethod,
    /// `chi(L) chi(R) = chi(T) chi(B) + prod chi(S_i)`.
    pub equal: bool,
    /// Result of the random evaluations, when performed.
    pub evaluation: Option<bool>,
    /// Dominant terms of `chi(L) chi(R)`, highest first.
    pub lhs_dominant: Vec<(LMonomial, i64)>,
    /// Dominant terms of `chi(T) chi(B)`.
    pub top_bottom_dominant: Vec<(LMonomial, i64)>,
    /// Dominant terms of the source product.
    pub source_dominant: Vec<(LMonomial, i64)>,
    /// The source product has a single dominant monomial, of multiplicity one.
    /// `None` for relations written as a single product.
    pub sources_special: Option<bool>,
    pub seconds: f64,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.equal && self.balance.ok
    }
}

fn sorted(x: &QCharacter) -> Vec<(LMonomial, i64)> {
    x.sorted_terms()
}

fn pair_count(xs: &[&QCharacter]) -> u64 {
    xs.iter().fold(1u64, |a, x| a.saturating_mul(x.len().max(1) as u64))
}

/// Dominant terms of a product, expanding all but the largest factor.
pub fn dominant_part_of(factors: &[&QCharacter]) -> QCharacter {
    if factors.iter().any(|x| x.is_zero()) {
        return QCharacter::zero();
    }
    let mut v: Vec<&QCharacter> = factors.to_vec();
    v.sort_by_key(|x| x.len());
    let Some(last) = v.pop() else { return QCharacter::one() };
    let rest = QCharacter::product(v);
    rest.dominant_part_of_product(last)
}

const P: u64 = (1 << 61) - 1;

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

/// Random values for the variables `Y_{i,s}` in `Z/P`, with inverses.
struct Point {
    rng: StdRng,
    vals: FxHashMap<(u8, i64), (u64, u64)>,
}

impl Point {
    fn new(seed: u64) -> Self {
        Point { rng: StdRng::seed_from_u64(seed), vals: FxHashMap::default() }
    }

    fn eval_monomial(&mut self, m: &LMonomial) -> u64 {
        let mut acc = 1;
        for f in m.factors() {
            let rng = &mut self.rng;
            let (v, vi) = *self.vals.entry((f.node, f.spectral as i64)).or_insert_with(|| {
                let v = rng.gen_range(2..P);
                (v, powmod(v, P - 2))
            });
            let base = if f.exp > 0 { v } else { vi };
            acc = mulmod(acc, powmod(base, f.exp.unsigned_abs() as u64));
        }
        acc
    }

    fn eval(&mut self, x: &QCharacter) -> u64 {
        let mut terms: Vec<(&LMonomial, &i64)> = x.iter().collect();
        terms.sort_by(|a, b| a.0.term_cmp(b.0));
        let mut acc = 0u64;
        for (m, &c) in terms {
            let cm = (c.rem_euclid(P as i64)) as u64;
            acc = (acc + mulmod(cm, self.eval_monomial(m))) % P;
        }
        acc
    }
}

fn evaluate_identity(l: &[&QCharacter], t: &[&QCharacter], s: &[&QCharacter], rounds: usize, seed: u64) -> bool {
    (0..rounds).all(|k| {
        let mut pt = Point::new(seed.wrapping_add(k as u64));
        let prod = |pt: &mut Point, xs: &[&QCharacter]| xs.iter().fold(1, |a, x| mulmod(a, pt.eval(x)));
        let lhs = prod(&mut pt, l);
        let rhs = (prod(&mut pt, t) + prod(&mut pt, s)) % P;
        lhs == rhs
    })
}

/// Checks one relation instance against the characters supplied by `src`.
pub fn verify_relation(r: &RelationInstance, src: &dyn CharacterSource, opts: &VerifyOptions) -> Result<VerifyReport> {
    let start = std::time::Instant::now();
    let balance = highest_monomial_balance(r);
    let get = |l| src.character(l);
    let (left, right, top, bottom) = (get(&r.left)?, get(&r.right)?, get(&r.top)?, get(&r.bottom)?);
    let sources: Vec<Arc<QCharacter>> = r.sources.iter().map(get).collect::<Result<_>>()?;
    let lr = [&*left, &*right];
    let tb = [&*top, &*bottom];
    let ss: Vec<&QCharacter> = sources.iter().map(|x| &**x).collect();

    let expand = [pair_count(&lr), pair_count(&tb), pair_count(&ss)].iter().all(|&n| n <= opts.expand_limit);
    let (method, equal, evaluation, lhs_dom, tb_dom, s_dom) = if expand {
        let lhs = QCharacter::product(lr);
        let tbp = QCharacter::product(tb);
        let sp = if ss.iter().any(|x| x.is_zero()) { QCharacter::zero() } else { QCharacter::product(ss.iter().copied()) };
        let equal = lhs == tbp.add(&sp);
        let dom = |x: &QCharacter| x.filter(|m| m.is_dominant());
        (VerifyMethod::Expanded, equal, None, dom(&lhs), dom(&tbp), dom(&sp))
    } else {
        let lhs_dom = dominant_part_of(&lr);
        let tb_dom = dominant_part_of(&tb);
        let s_dom = dominant_part_of(&ss);
        let dominant_equal = lhs_dom == tb_dom.add(&s_dom);
        let ev = evaluate_identity(&lr, &tb, &ss, opts.evaluation_rounds, opts.seed);
        (VerifyMethod::Dominant, dominant_equal && ev, Some(ev), lhs_dom, tb_dom, s_dom)
    };
    let source_dominant = sorted(&s_dom);
    let sources_special =
        (!r.is_product_form()).then(|| source_dominant.len() == 1 && source_dominant[0].1 == 1);
    Ok(VerifyReport {
        instance: r.clone(),
        balance,
        method,
        equal,
        evaluation,
        lhs_dominant: sorted(&lhs_dom),
        top_bottom_dominant: sorted(&tb_dom),
        source_dominant,
        sources_special,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Dominant ledger as a map, for comparisons.
pub fn ledger_map(v: &[(LMonomial, i64)]) -> BTreeMap<String, i64> {
    v.iter().map(|(m, c)| (m.to_string(), *c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tsystem::cache::FmSource;
    use crate::tsystem::relations::relation_instance;

    #[test]
    fn i2_smallest() {
        let src = FmSource::default();
        let r = relation_instance("I.2".parse().unwrap(), &[1, 1], 0, false).unwrap();
        let rep = verify_relation(&r, &src, &VerifyOptions::default()).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.method, VerifyMethod::Expanded);
        assert_eq!(rep.sources_special, Some(true));
        let top = src.character(&r.top).unwrap();
        assert_eq!(top.dimension(), 14 * 6 - 14);
    }

    #[test]
    fn both_methods_agree() {
        let src = FmSource::default();
        let r = relation_instance("I.1".parse().unwrap(), &[1, 1], 0, false).unwrap();
        let full = verify_relation(&r, &src, &VerifyOptions::default()).unwrap();
        let dom = verify_relation(&r, &src, &VerifyOptions { expand_limit: 0, ..Default::default() }).unwrap();
        assert!(full.passed() && dom.passed());
        assert_eq!(dom.method, VerifyMethod::Dominant);
        assert_eq!(full.lhs_dominant, dom.lhs_dominant);
        assert_eq!(full.source_dominant, dom.source_dominant);
    }

    #[test]
    fn corrupted_instance_fails() {
        let src = FmSource::default();
        let mut r = relation_instance("I.2".parse().unwrap(), &[1, 1], 0, false).unwrap();
        r.bottom = r.bottom.with_shift(r.bottom.shift + 1);
        r.top = r.top.with_shift(r.top.shift + 1);
        for lim in [0, u64::MAX] {
            let rep = verify_relation(&r, &src, &VerifyOptions { expand_limit: lim, ..Default::default() }).unwrap();
            assert!(!rep.equal);
        }
    }
}
