//! The character ring: sparse Laurent polynomials in the `Y_{i,s}` with integer
//! coefficients.

pub mod bounds;
pub mod sl2;
pub mod stream;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::LMonomial;

/// A sparse `Z`-linear combination of monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QCharacter {
    terms: FxHashMap<LMonomial, i64>,
}

fn checked_add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("multiplicity overflow")
}

fn checked_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("multiplicity overflow")
}

/// Monomial wrapped with the term order, for heaps and sorting.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Ordered(LMonomial);

impl PartialOrd for Ordered {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Ordered {
    fn cmp(&self, o: &Self) -> Ordering {
        self.0.term_cmp(&o.0)
    }
}

impl QCharacter {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_monomial(LMonomial::one())
    }

    pub fn from_monomial(m: LMonomial) -> Self {
        let mut terms = FxHashMap::default();
        terms.insert(m, 1);
        QCharacter { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (LMonomial, i64)>>(it: I) -> Self {
        let mut x = Self::zero();
        for (m, c) in it {
            x.add_term(m, c);
        }
        x
    }

    pub fn with_capacity(n: usize) -> Self {
        QCharacter { terms: FxHashMap::with_capacity_and_hasher(n, Default::default()) }
    }

    /// Adds `c * m`, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: LMonomial, c: i64) {
        if c == 0 {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let v = checked_add(*e.get(), c);
                if v == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, m: &LMonomial) -> i64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LMonomial, &i64)> {
        self.terms.iter()
    }

    /// Sum of multiplicities (the dimension, for a module character).
    pub fn dimension(&self) -> i64 {
        self.terms.values().fold(0, |a, &b| checked_add(a, b))
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &o.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero();
        }
        QCharacter { terms: self.terms.iter().map(|(m, &c)| (m.clone(), checked_mul(c, k))).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut out = Self::with_capacity(a.len().saturating_mul(b.len()).min(1 << 20));
        for (mb, &cb) in &b.terms {
            for (ma, &ca) in &a.terms {
                out.add_term(ma.mul(mb), checked_mul(ca, cb));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &LMonomial) -> Self {
        QCharacter { terms: self.terms.iter().map(|(x, &c)| (x.mul(m), c)).collect() }
    }

    /// Product of a list; the empty product is 1.
    pub fn product<'a, I: IntoIterator<Item = &'a QCharacter>>(it: I) -> Self {
        let mut v: Vec<&QCharacter> = it.into_iter().collect();
        if v.is_empty() {
            return Self::one();
        }
        v.sort_by_key(|x| x.len());
        let mut acc = v[0].clone();
        for x in &v[1..] {
            acc = acc.mul(x);
        }
        acc
    }

    /// Largest monomial in the term order.
    pub fn highest(&self) -> Option<&LMonomial> {
        self.terms.keys().max_by(|a, b| a.term_cmp(b))
    }

    /// Smallest monomial in the term order.
    pub fn lowest(&self) -> Option<&LMonomial> {
        self.terms.keys().min_by(|a, b| a.term_cmp(b))
    }

    /// Terms sorted by decreasing term order.
    pub fn sorted_terms(&self) -> Vec<(LMonomial, i64)> {
        let mut v: Vec<(LMonomial, i64)> = self.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        v.sort_by(|a, b| b.0.term_cmp(&a.0));
        v
    }

    /// Dominant terms, sorted by decreasing term order.
    pub fn dominant_monomials(&self) -> Vec<(LMonomial, i64)> {
        let mut v: Vec<(LMonomial, i64)> =
            self.terms.iter().filter(|(m, _)| m.is_dominant()).map(|(m, &c)| (m.clone(), c)).collect();
        v.sort_by(|a, b| b.0.term_cmp(&a.0));
        v
    }

    pub fn antidominant_monomials(&self) -> Vec<(LMonomial, i64)> {
        let mut v: Vec<(LMonomial, i64)> =
            self.terms.iter().filter(|(m, _)| m.is_antidominant()).map(|(m, &c)| (m.clone(), c)).collect();
        v.sort_by(|a, b| b.0.term_cmp(&a.0));
        v
    }

    fn check_positive(&self) -> Result<()> {
        match self.terms.iter().find(|(_, &c)| c <= 0) {
            Some((m, _)) => Err(Error::SignedCharacter(m.to_string())),
            None => Ok(()),
        }
    }

    /// Exactly one dominant monomial.
    pub fn is_special(&self) -> Result<bool> {
        self.check_positive()?;
        Ok(self.terms.keys().filter(|m| m.is_dominant()).count() == 1)
    }

    /// Exactly one anti-dominant monomial.
    pub fn is_antispecial(&self) -> Result<bool> {
        self.check_positive()?;
        Ok(self.terms.keys().filter(|m| m.is_antidominant()).count() == 1)
    }

    /// `Y_{i,s} -> Y_{i,s+b}` on every term.
    pub fn tau_shift(&self, b: i64) -> Self {
        if b == 0 {
            return self.clone();
        }
        QCharacter { terms: self.terms.iter().map(|(m, &c)| (m.tau_shift(b), c)).collect() }
    }

    /// The involution `Y_{i,s} -> Y_{i,8-s}^{-1}` on every term.
    pub fn iota(&self) -> Self {
        QCharacter { terms: self.terms.iter().map(|(m, &c)| (m.iota_dual(), c)).collect() }
    }

    /// Keeps the terms satisfying `keep`.
    pub fn filter<F: Fn(&LMonomial) -> bool>(&self, keep: F) -> Self {
        QCharacter { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, &c)| (m.clone(), c)).collect() }
    }

    /// Exact division by leading-term elimination in the term order.
    /// `max_terms` bounds the size of the quotient.
    pub fn exact_divide(&self, den: &Self, max_terms: usize) -> Result<Self> {
        let (Some(dlead), Some(dlow)) = (den.highest().cloned(), den.lowest().cloned()) else {
            return Err(Error::NotDivisible("division by zero".into()));
        };
        let dcoef = den.get(&dlead);
        let Some(nlow) = self.lowest().cloned() else {
            return Ok(Self::zero());
        };
        // Every quotient term lies above lowest(num) / lowest(den).
        let floor = nlow.div(&dlow);
        let qbox = bounds::ExponentBox::of_character(self)
            .quotient(&bounds::ExponentBox::of_character(den))
            .ok_or_else(|| Error::NotDivisible("exponent ranges are incompatible".into()))?;
        let den_terms: Vec<(LMonomial, i64)> = den.terms.iter().map(|(m, &c)| (m.clone(), c)).collect();
        let mut rem = self.terms.clone();
        let mut heap: BinaryHeap<Ordered> = rem.keys().cloned().map(Ordered).collect();
        let mut quot = Self::zero();
        while let Some(Ordered(top)) = heap.pop() {
            let Some(&c) = rem.get(&top) else { continue };
            if c % dcoef != 0 {
                return Err(Error::NotDivisible(format!("coefficient {c} at {top} not divisible by {dcoef}")));
            }
            let t = top.div(&dlead);
            if t.term_cmp(&floor) == Ordering::Less || !qbox.contains(&t) {
                return Err(Error::NotDivisible(format!("remainder term {top} outside the quotient bounds")));
            }
            let k = c / dcoef;
            quot.add_term(t.clone(), k);
            if quot.len() > max_terms {
                return Err(Error::TermCap(quot.len(), max_terms));
            }
            for (dm, dc) in &den_terms {
                let m = t.mul(dm);
                let v = checked_add(rem.get(&m).copied().unwrap_or(0), -checked_mul(k, *dc));
                if v == 0 {
                    rem.remove(&m);
                } else if rem.insert(m.clone(), v).is_none() {
                    heap.push(Ordered(m));
                }
            }
            // Heap entries never need re-pushing for keys that stay present.
            debug_assert!(!rem.contains_key(&top));
        }
        Ok(quot)
    }

    /// The dominant terms of `self * o`, computed without expanding the
    /// product: the negative factors of a partner must be cancelled by the
    /// positive factors of the other monomial, so partners are looked up by
    /// their negative part.
    pub fn dominant_part_of_product(&self, o: &Self) -> Self {
        let (small, big) = if self.len() <= o.len() { (self, o) } else { (o, self) };
        let mut index: FxHashMap<LMonomial, Vec<(&LMonomial, i64)>> = FxHashMap::default();
        for (m, &c) in &big.terms {
            index.entry(m.negative_part()).or_default().push((m, c));
        }
        let mut out = Self::zero();
        let mut cands: Vec<LMonomial> = Vec::new();
        for (a, &ca) in &small.terms {
            cands.clear();
            cands.push(LMonomial::one());
            for f in a.factors().iter().filter(|f| f.exp > 0) {
                let n = cands.len();
                for e in 1..=f.exp {
                    let y = LMonomial::y(f.node, f.spectral as i64).pow(-(e as i32));
                    for j in 0..n {
                        let x = cands[j].mul(&y);
                        cands.push(x);
                    }
                }
            }
            for neg in &cands {
                let Some(list) = index.get(neg) else { continue };
                for (b, cb) in list {
                    let m = a.mul(b);
                    if m.is_dominant() {
                        out.add_term(m, checked_mul(ca, *cb));
                    }
                }
            }
        }
        out
    }

    /// Human-readable form `m1 + 2 m2 + ...`, highest first.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if i == 0 {
                if c < 0 {
                    s.push('-');
                }
            } else {
                s.push_str(&format!(" {sign} "));
            }
            if a != 1 {
                s.push_str(&format!("{a} "));
            }
            s.push_str(&m.to_string());
        }
        s
    }
}

impl fmt::Display for QCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl Serialize for QCharacter {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.sorted_terms().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for QCharacter {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(LMonomial, i64)> = Vec::deserialize(de)?;
        Ok(QCharacter::from_terms(raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn chi_1_0() -> QCharacter {
        let terms = ["1_0", "1_2^-1 2_1", "2_3^-1 3_2", "2_5 3_6^-1", "1_6 2_7^-1", "1_8^-1"];
        QCharacter::from_terms(terms.iter().map(|t| (t.parse().unwrap(), 1)))
    }

    #[test]
    fn ring_basics() {
        let x = chi_1_0();
        assert_eq!(x.mul(&QCharacter::one()), x);
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.mul(&x).dimension(), 36);
        assert_eq!(x.dominant_monomials(), vec![("1_0".parse().unwrap(), 1)]);
        assert!(QCharacter::zero().dominant_monomials().is_empty());
        assert!(x.is_special().unwrap());
        assert!(x.is_antispecial().unwrap());
        assert!(QCharacter::one().is_special().unwrap());
        assert!(x.neg().is_special().is_err());
        assert_eq!(x.highest().unwrap().to_string(), "1_0");
        assert_eq!(x.lowest().unwrap().to_string(), "1_8^-1");
    }

    #[test]
    fn division() {
        let x = chi_1_0();
        let y = x.tau_shift(3);
        let p = x.mul(&y);
        assert_eq!(p.exact_divide(&y, 1 << 20).unwrap(), x);
        assert!(matches!(QCharacter::one().exact_divide(&x, 1 << 20), Err(Error::NotDivisible(_))));
        assert!(p.add(&QCharacter::one()).exact_divide(&x, 1 << 20).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = chi_1_0().scale(2).sub(&QCharacter::one());
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(serde_json::from_str::<QCharacter>(&js).unwrap(), x);
        assert_eq!(serde_json::to_string(&x).unwrap(), js);
    }

    #[test]
    fn iota_is_involution() {
        let x = chi_1_0();
        assert_eq!(x.iota().iota(), x);
        assert_eq!(x.iota().highest().unwrap().to_string(), "1_0");
    }

    fn arb_char() -> impl Strategy<Value = QCharacter> {
        let mono = prop::collection::vec((1i64..=3, -4i64..=4, -2i64..=2), 0..4)
            .prop_map(|v| LMonomial::from_triples(v).unwrap());
        prop::collection::vec((mono, -3i64..=3), 1..6).prop_map(QCharacter::from_terms)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn divide_round_trip(x in arb_char(), y in arb_char()) {
            prop_assume!(!y.is_zero());
            let p = x.mul(&y);
            prop_assert_eq!(p.exact_divide(&y, 1 << 16).unwrap(), x.clone());
        }

        #[test]
        fn highest_is_multiplicative(x in arb_char(), y in arb_char()) {
            prop_assume!(!x.is_zero() && !y.is_zero());
            let p = x.mul(&y);
            prop_assert_eq!(p.highest().cloned(), Some(x.highest().unwrap().mul(y.highest().unwrap())));
        }

        #[test]
        fn dominant_part_matches_expansion(x in arb_char(), y in arb_char()) {
            let full = x.mul(&y).filter(|m| m.is_dominant());
            prop_assert_eq!(x.dominant_part_of_product(&y), full);
        }

        #[test]
        fn ring_laws(x in arb_char(), y in arb_char(), z in arb_char()) {
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.add(&y).sub(&y), x.clone());
        }
    }
}
