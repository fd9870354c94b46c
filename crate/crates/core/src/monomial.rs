//! Laurent monomials in the variables `Y_{i,s}` (shorthand `i_s`, spectral
//! parameter `aq^s`) and the root monomials `A_{i,s}`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::cartan::{r, Weight};
use crate::error::{Error, Result};
use crate::qchar::sl2::Sl2Monomial;

/// One factor `Y_{node, spectral}^exp`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub node: u8,
    pub spectral: i32,
    pub exp: i16,
}

const INLINE: usize = 16;
type Factors = SmallVec<[Factor; INLINE]>;

fn sp(s: i64) -> i32 {
    i32::try_from(s).expect("spectral parameter out of range")
}

fn ex(e: i64) -> i16 {
    i16::try_from(e).expect("exponent out of range")
}

/// Storage order of the variables: larger spectral parameter first, then smaller node.
#[inline]
fn key(f: &Factor) -> (std::cmp::Reverse<i32>, u8) {
    (std::cmp::Reverse(f.spectral), f.node)
}

fn sort_factors(factors: &mut Factors) {
    factors.sort_unstable_by_key(key);
}

/// A Laurent monomial with no zero exponents. Factors are stored by decreasing
/// spectral parameter (ties by increasing node), so the term order is a
/// lexicographic comparison of the stored factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LMonomial {
    factors: Factors,
}

impl std::hash::Hash for LMonomial {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        h.write_usize(self.factors.len());
        for f in &self.factors {
            h.write_u64(((f.node as u64) << 48) | ((f.spectral as u32 as u64) << 16) | (f.exp as u16 as u64));
        }
    }
}

/// Exponents of a monomial in the basis `A_{i,s}`, keyed by `(i, s)`.
pub type ADecomposition = BTreeMap<(u8, i64), i64>;

fn check_node(i: i64) -> Result<u8> {
    if (1..=3).contains(&i) {
        Ok(i as u8)
    } else {
        Err(Error::InvalidNode(i))
    }
}

fn merge_into<E: Extend<Factor>>(a: &[Factor], b: &[Factor], sign: i16, out: &mut E) {
    let push = |out: &mut E, f: Factor| out.extend(std::iter::once(f));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        let (fa, fb) = (a[i], b[j]);
        match key(&fa).cmp(&key(&fb)) {
            Ordering::Less => {
                push(out, fa);
                i += 1;
            }
            Ordering::Greater => {
                push(out, Factor { exp: sign * fb.exp, ..fb });
                j += 1;
            }
            Ordering::Equal => {
                let e = fa.exp + sign * fb.exp;
                if e != 0 {
                    push(out, Factor { exp: e, ..fa });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a[i..].iter().copied());
    out.extend(b[j..].iter().map(|f| Factor { exp: sign * f.exp, ..*f }));
}

impl LMonomial {
    pub fn one() -> Self {
        LMonomial::default()
    }

    /// `Y_{i,s}`. Panics on a node outside `1..=3`; see [`y_monomial`] for the checked form.
    pub fn y(i: u8, s: i64) -> Self {
        assert!((1..=3).contains(&i), "invalid node {i}");
        let mut factors = Factors::new();
        factors.push(Factor { node: i, spectral: sp(s), exp: 1 });
        LMonomial { factors }
    }

    /// `A_{i,s}`. Panics on a node outside `1..=3`; see [`a_monomial`] for the checked form.
    pub fn a(i: u8, s: i64) -> Self {
        let pairs: &[(u8, i64, i32)] = match i {
            1 => &[(1, s - 1, 1), (1, s + 1, 1), (2, s, -1)],
            2 => &[(1, s, -1), (2, s - 1, 1), (2, s + 1, 1), (3, s, -1)],
            3 => &[(2, s - 1, -1), (2, s + 1, -1), (3, s - 2, 1), (3, s + 2, 1)],
            _ => panic!("invalid node {i}"),
        };
        let mut factors: Factors =
            pairs.iter().map(|&(node, spectral, exp)| Factor { node, spectral: sp(spectral), exp: exp as i16 }).collect();
        sort_factors(&mut factors);
        LMonomial { factors }
    }

    /// Builds a monomial from arbitrary `(node, spectral, exp)` triples, merging repeats.
    pub fn from_triples<I: IntoIterator<Item = (i64, i64, i64)>>(it: I) -> Result<Self> {
        let mut map: BTreeMap<(u8, i64), i64> = BTreeMap::new();
        for (i, s, e) in it {
            let i = check_node(i)?;
            *map.entry((i, s)).or_default() += e;
        }
        let mut factors = Factors::new();
        for ((node, spectral), exp) in map {
            if exp != 0 {
                let exp = i16::try_from(exp).map_err(|_| Error::Parse(format!("exponent {exp} out of range")))?;
                let spectral = i32::try_from(spectral)
                    .map_err(|_| Error::Parse(format!("spectral parameter {spectral} out of range")))?;
                factors.push(Factor { node, spectral, exp });
            }
        }
        sort_factors(&mut factors);
        Ok(LMonomial { factors })
    }

    /// Product over the `Y`-string `Y_{i,s} Y_{i,s+step} ... ` of length `len`.
    pub fn string(i: u8, s: i64, step: i64, len: i64) -> Self {
        let mut m = LMonomial::one();
        for k in 0..len.max(0) {
            m = m.mul(&LMonomial::y(i, s + step * k));
        }
        m
    }

    /// Factors in storage order (decreasing spectral parameter).
    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `Y_{i,s}`.
    pub fn exponent(&self, i: u8, s: i64) -> i32 {
        let Ok(s) = i32::try_from(s) else { return 0 };
        let target = Factor { node: i, spectral: s, exp: 0 };
        match self.factors.binary_search_by(|f| key(f).cmp(&key(&target))) {
            Ok(k) => self.factors[k].exp as i32,
            Err(_) => 0,
        }
    }

    fn merge(&self, other: &Self, sign: i16) -> Self {
        let (a, b) = (&self.factors, &other.factors);
        if a.len() + b.len() <= INLINE {
            let mut out = Factors::new();
            merge_into(a, b, sign, &mut out);
            return LMonomial { factors: out };
        }
        let mut buf: SmallVec<[Factor; 64]> = SmallVec::new();
        merge_into(a, b, sign, &mut buf);
        LMonomial { factors: Factors::from_slice(&buf) }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.merge(other, 1)
    }

    /// `self * other^{-1}`.
    pub fn div(&self, other: &Self) -> Self {
        self.merge(other, -1)
    }

    pub fn inv(&self) -> Self {
        LMonomial {
            factors: self.factors.iter().map(|f| Factor { exp: -f.exp, ..*f }).collect(),
        }
    }

    pub fn pow(&self, n: i32) -> Self {
        if n == 0 {
            return LMonomial::one();
        }
        LMonomial {
            factors: self.factors.iter().map(|f| Factor { exp: ex(f.exp as i64 * n as i64), ..*f }).collect(),
        }
    }

    /// The factors with negative exponent.
    pub fn negative_part(&self) -> Self {
        LMonomial { factors: self.factors.iter().filter(|f| f.exp < 0).copied().collect() }
    }

    pub fn is_dominant(&self) -> bool {
        self.factors.iter().all(|f| f.exp > 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.factors.iter().all(|f| f.exp < 0)
    }

    /// All exponents at node `j` are nonnegative.
    pub fn is_j_dominant(&self, j: u8) -> bool {
        self.factors.iter().filter(|f| f.node == j).all(|f| f.exp > 0)
    }

    pub fn is_j_antidominant(&self, j: u8) -> bool {
        self.factors.iter().filter(|f| f.node == j).all(|f| f.exp < 0)
    }

    /// Every variable at the largest spectral parameter occurring carries a negative exponent.
    pub fn is_right_negative(&self) -> Result<bool> {
        let top = self.max_spectral().ok_or(Error::IdentityMonomial)?;
        Ok(self.factors.iter().filter(|f| f.spectral as i64 == top).all(|f| f.exp < 0))
    }

    pub fn max_spectral(&self) -> Option<i64> {
        self.factors.first().map(|f| f.spectral as i64)
    }

    pub fn min_spectral(&self) -> Option<i64> {
        self.factors.last().map(|f| f.spectral as i64)
    }

    /// `sum u_{i,s} omega_i`.
    pub fn weight(&self) -> Weight {
        let mut w = [0i64; 3];
        for f in &self.factors {
            w[f.node as usize - 1] += f.exp as i64;
        }
        Weight(w)
    }

    /// Writes the monomial as `prod A_{i,s}^{v_{i,s}}`, peeling from the largest
    /// spectral parameter downwards.
    pub fn decompose_in_a_basis(&self) -> Result<ADecomposition> {
        let mut out = ADecomposition::new();
        let Some(floor) = self.min_spectral() else {
            return Ok(out);
        };
        let mut rest = self.clone();
        while let Some(t) = rest.max_spectral() {
            if t <= floor {
                return Err(Error::NotInLattice(self.to_string()));
            }
            let top: Vec<Factor> = rest.factors.iter().filter(|f| f.spectral as i64 == t).copied().collect();
            for f in top {
                let s = t - r(f.node);
                *out.entry((f.node, s)).or_default() += f.exp as i64;
                rest = rest.div(&LMonomial::a(f.node, s).pow(f.exp as i32));
            }
        }
        out.retain(|_, v| *v != 0);
        Ok(out)
    }

    /// `prod A_{i,s}^{v}` for the given exponents.
    pub fn from_a_exponents(v: &ADecomposition) -> Self {
        v.iter().fold(LMonomial::one(), |acc, (&(i, s), &e)| acc.mul(&LMonomial::a(i, s).pow(e as i32)))
    }

    /// `self <= other` in the Nakajima-Frenkel-Mukhin order: `other / self` is a
    /// product of `A_{i,s}` with nonnegative exponents.
    pub fn leq(&self, other: &Self) -> bool {
        match other.div(self).decompose_in_a_basis() {
            Ok(v) => v.values().all(|&e| e >= 0),
            Err(_) => false,
        }
    }

    /// `Y_{i,s} -> Y_{i,s+b}`.
    pub fn tau_shift(&self, b: i64) -> Self {
        LMonomial {
            factors: self.factors.iter().map(|f| Factor { spectral: sp(f.spectral as i64 + b), ..*f }).collect(),
        }
    }

    /// `Y_{i,s}^u -> Y_{i,8-s}^{-u}`.
    pub fn iota_dual(&self) -> Self {
        let mut factors: Factors = self
            .factors
            .iter()
            .map(|f| Factor { spectral: 8 - f.spectral, exp: -f.exp, ..*f })
            .collect();
        sort_factors(&mut factors);
        LMonomial { factors }
    }

    /// `Y_{i,s}^u -> Y_{i,-s}^u`: highest monomial of the barred families.
    pub fn bar(&self) -> Self {
        let mut factors: Factors = self.factors.iter().map(|f| Factor { spectral: -f.spectral, ..*f }).collect();
        sort_factors(&mut factors);
        LMonomial { factors }
    }

    /// Restriction `beta_j` to the node-`j` variables.
    pub fn beta(&self, j: u8) -> Sl2Monomial {
        Sl2Monomial::from_pairs(self.factors.iter().filter(|f| f.node == j).map(|f| (f.spectral as i64, f.exp as i32)))
    }

    /// Term order: a monomial order (compatible with multiplication) in which every
    /// `A_{i,s}` exceeds 1. Compare `self / other` at its variable with the largest
    /// spectral parameter (ties broken by the smaller node).
    pub fn term_cmp(&self, other: &Self) -> Ordering {
        for (fa, fb) in self.factors.iter().zip(&other.factors) {
            if fa == fb {
                continue;
            }
            return match key(fa).cmp(&key(fb)) {
                Ordering::Less => fa.exp.cmp(&0),
                Ordering::Greater => 0.cmp(&fb.exp),
                Ordering::Equal => fa.exp.cmp(&fb.exp),
            };
        }
        let (a, b) = (self.factors.len(), other.factors.len());
        match a.cmp(&b) {
            Ordering::Less => 0.cmp(&other.factors[a].exp),
            Ordering::Greater => self.factors[b].exp.cmp(&0),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Factors sorted by `(node, spectral)`, the display order.
    fn by_node(&self) -> Factors {
        let mut f = self.factors.clone();
        f.sort_unstable_by_key(|f| (f.node, f.spectral));
        f
    }

    /// `(node, spectral, exp)` triples sorted by `(node, spectral)`.
    pub fn triples(&self) -> Vec<(u8, i64, i32)> {
        self.by_node().iter().map(|f| (f.node, f.spectral as i64, f.exp as i32)).collect()
    }
}

/// Checked `Y_{i,s}`.
pub fn y_monomial(i: i64, s: i64) -> Result<LMonomial> {
    Ok(LMonomial::y(check_node(i)?, s))
}

/// Checked `A_{i,s}`.
pub fn a_monomial(i: i64, s: i64) -> Result<LMonomial> {
    Ok(LMonomial::a(check_node(i)?, s))
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, x) in self.by_node().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}_{}", x.node, x.spectral)?;
            if x.exp != 1 {
                write!(f, "^{}", x.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for LMonomial {
    type Err = Error;

    /// Parses `3_0 2_5^-1`, also accepting `*` or `·` as separators and braces
    /// around the spectral parameter or exponent.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().map(|c| if c == '*' || c == '·' { ' ' } else { c }).collect();
        let mut triples = Vec::new();
        for tok in cleaned.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let tok = tok.replace(['{', '}'], "");
            let bad = || Error::Parse(format!("bad factor `{tok}`"));
            let (base, exp) = match tok.split_once('^') {
                Some((b, e)) => (b.to_string(), e.parse::<i64>().map_err(|_| bad())?),
                None => (tok.clone(), 1),
            };
            let (i, sp) = base.split_once('_').ok_or_else(bad)?;
            let i = i.parse::<i64>().map_err(|_| bad())?;
            let sp = sp.parse::<i64>().map_err(|_| bad())?;
            triples.push((i, sp, exp));
        }
        LMonomial::from_triples(triples)
    }
}

impl Serialize for LMonomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        self.triples().serialize(ser)
    }
}

impl<'de> Deserialize<'de> for LMonomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<(i64, i64, i64)> = Vec::deserialize(de)?;
        LMonomial::from_triples(raw).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> LMonomial {
        s.parse().unwrap()
    }

    #[test]
    fn a_monomials_match_definition() {
        assert_eq!(LMonomial::a(1, 0), m("1_-1 1_1 2_0^-1"));
        assert_eq!(LMonomial::a(2, 0), m("2_-1 2_1 1_0^-1 3_0^-1"));
        assert_eq!(LMonomial::a(3, 0), m("3_-2 3_2 2_-1^-1 2_1^-1"));
        assert!(a_monomial(4, 0).is_err());
        assert!(y_monomial(0, 0).is_err());
    }

    #[test]
    fn weights_of_a_are_simple_roots() {
        for i in 1..=3 {
            assert_eq!(LMonomial::a(i, 5).weight(), Weight::simple_root(i));
        }
        assert_eq!(LMonomial::a(2, 0).inv().weight(), Weight::new(1, -2, 1));
    }

    #[test]
    fn display_and_parse() {
        let x = m("3_0 2_5^-1");
        assert_eq!(x.to_string(), "2_5^-1 3_0");
        assert_eq!(LMonomial::one().to_string(), "1");
        assert_eq!(m("1"), LMonomial::one());
        assert_eq!(m("1_{2}^{-1} 2_1 1_2"), m("2_1"));
        assert!("x_1".parse::<LMonomial>().is_err());
        assert!("4_1".parse::<LMonomial>().is_err());
    }

    #[test]
    fn json_form() {
        let x = m("3_0 2_5^-1");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, "[[2,5,-1],[3,0,1]]");
        assert_eq!(serde_json::from_str::<LMonomial>(&js).unwrap(), x);
    }

    #[test]
    fn right_negative() {
        assert!(m("1_0 1_2^-1").is_right_negative().unwrap());
        assert!(!m("1_0 2_2 1_2^-1").is_right_negative().unwrap());
        assert!(LMonomial::one().is_right_negative().is_err());
    }

    #[test]
    fn decompose_examples() {
        let x = m("1_2^-1 2_1").div(&m("1_0"));
        let v = x.decompose_in_a_basis().unwrap();
        assert_eq!(v, ADecomposition::from([((1, 1), -1)]));
        assert!(m("1_0").decompose_in_a_basis().is_err());
        assert!(LMonomial::one().decompose_in_a_basis().unwrap().is_empty());
        assert!(m("1_2^-1 2_1").leq(&m("1_0")));
        assert!(!m("1_0").leq(&m("1_2^-1 2_1")));
    }

    #[test]
    fn iota_and_shift() {
        assert_eq!(m("1_0").iota_dual(), m("1_8^-1"));
        assert_eq!(m("3_1 2_4^-1").tau_shift(3), m("3_4 2_7^-1"));
        assert_eq!(m("3_1 2_4^-1").bar(), m("3_-1 2_-4^-1"));
    }

    #[test]
    fn term_order_puts_a_above_one() {
        for i in 1..=3 {
            for s in -3..3 {
                assert_eq!(LMonomial::a(i, s).term_cmp(&LMonomial::one()), Ordering::Greater);
            }
        }
    }

    fn arb_monomial() -> impl Strategy<Value = LMonomial> {
        prop::collection::vec((1i64..=3, -6i64..=6, -3i64..=3), 0..6)
            .prop_map(|v| LMonomial::from_triples(v).unwrap())
    }

    fn arb_a_exponents() -> impl Strategy<Value = ADecomposition> {
        prop::collection::btree_map((1u8..=3, -6i64..=6), -3i64..=3, 0..6)
            .prop_map(|mut v| {
                v.retain(|_, e| *e != 0);
                v
            })
    }

    proptest! {
        #[test]
        fn group_laws(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert!(a.mul(&a.inv()).is_one());
            prop_assert_eq!(a.mul(&b).weight(), a.weight() + b.weight());
            prop_assert_eq!(a.iota_dual().iota_dual(), a.clone());
            prop_assert_eq!(a.to_string().parse::<LMonomial>().unwrap(), a.clone());
        }

        #[test]
        fn term_order_is_monomial_order(a in arb_monomial(), b in arb_monomial(), c in arb_monomial()) {
            prop_assert_eq!(a.term_cmp(&b), a.mul(&c).term_cmp(&b.mul(&c)));
            prop_assert_eq!(a.term_cmp(&b), b.term_cmp(&a).reverse());
            prop_assert_eq!(a.term_cmp(&b) == Ordering::Equal, a == b);
        }

        #[test]
        fn a_decomposition_round_trip(v in arb_a_exponents()) {
            let x = LMonomial::from_a_exponents(&v);
            prop_assert_eq!(x.decompose_in_a_basis().unwrap(), v);
        }
    }
}
