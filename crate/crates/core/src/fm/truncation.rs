//! Truncated q-characters certified by a finite set of monomials.

use std::collections::{BTreeMap, BTreeSet};

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::cartan::r;
use crate::monomial::{ADecomposition, LMonomial};
use crate::qchar::sl2::{self, Sl2Monomial};
use crate::qchar::QCharacter;

/// A subset of `I x Z`: all pairs with spectral parameter at most `upper`
/// (when set) together with the finitely many pairs in `extra`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexSet {
    pub upper: Option<i64>,
    pub extra: BTreeSet<(u8, i64)>,
}

impl IndexSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `I x {s <= bound}`.
    pub fn at_most(bound: i64) -> Self {
        IndexSet { upper: Some(bound), extra: BTreeSet::new() }
    }

    pub fn finite<I: IntoIterator<Item = (u8, i64)>>(it: I) -> Self {
        IndexSet { upper: None, extra: it.into_iter().collect() }
    }

    pub fn contains(&self, i: u8, s: i64) -> bool {
        self.extra.contains(&(i, s)) || self.upper.is_some_and(|b| s <= b)
    }

    /// `x` lies in `Q_U^-`: a product of `A_{i,s}^{-1}` with `(i,s)` in the set.
    pub fn contains_lowering(&self, v: &ADecomposition) -> bool {
        v.iter().all(|(&(i, s), &e)| e < 0 && self.contains(i, s))
    }
}

/// Data `(m_+, U, M)` for the truncation theorem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationCertificate {
    pub m_plus: LMonomial,
    pub u: IndexSet,
    pub m: Vec<LMonomial>,
}

/// Outcome of checking conditions (i)-(iv).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateReport {
    pub conditions: [bool; 4],
    pub failures: Vec<String>,
}

impl CertificateReport {
    pub fn ok(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }

    /// 1-based indices of the failed conditions.
    pub fn failed(&self) -> Vec<usize> {
        (0..4).filter(|&k| !self.conditions[k]).map(|k| k + 1).collect()
    }
}

pub fn verify_truncation_certificate(c: &TruncationCertificate) -> bool {
    check_truncation_certificate(c).ok()
}

/// Checks the four conditions, recording a message for each violation.
pub fn check_truncation_certificate(c: &TruncationCertificate) -> CertificateReport {
    let mut rep = CertificateReport { conditions: [true; 4], failures: Vec::new() };
    let fail = |rep: &mut CertificateReport, k: usize, msg: String| {
        rep.conditions[k] = false;
        rep.failures.push(format!("({}) {}", ["i", "ii", "iii", "iv"][k], msg));
    };
    let set: FxHashSet<&LMonomial> = c.m.iter().collect();
    if set.len() != c.m.len() {
        fail(&mut rep, 0, "M contains repeated monomials".into());
    }

    // (i)
    let mut lowering: Vec<Option<ADecomposition>> = Vec::with_capacity(c.m.len());
    for m in &c.m {
        match m.div(&c.m_plus).decompose_in_a_basis() {
            Ok(v) if c.u.contains_lowering(&v) => lowering.push(Some(v)),
            _ => {
                fail(&mut rep, 0, format!("{m} is not in m_+ Q_U^-"));
                lowering.push(None);
            }
        }
    }

    // (ii)
    let dominant: Vec<&LMonomial> = c.m.iter().filter(|m| m.is_dominant()).collect();
    if dominant != vec![&c.m_plus] {
        let list: Vec<String> = dominant.iter().map(|m| m.to_string()).collect();
        fail(&mut rep, 1, format!("dominant monomials in M are [{}], expected [{}]", list.join(", "), c.m_plus));
    }

    // (iii)
    for m in &c.m {
        for m2 in &c.m {
            let Ok(v) = m2.div(m).decompose_in_a_basis() else { continue };
            if v.len() != 2 {
                continue;
            }
            let neg: Vec<_> = v.iter().filter(|(_, &e)| e == -1).map(|(k, _)| *k).collect();
            let pos: Vec<_> = v.iter().filter(|(_, &e)| e == 1).map(|(k, _)| *k).collect();
            if let ([(i, a)], [_]) = (neg.as_slice(), pos.as_slice()) {
                if c.u.contains(*i, *a) && !set.contains(&m.mul(&LMonomial::a(*i, *a).inv())) {
                    fail(&mut rep, 2, format!("{m} A_{{{i},{a}}}^-1 is not in M but {m2} is"));
                }
            }
        }
    }

    // (iv): group M into classes m Q_{{i} x Z} by the non-i part of the lowering.
    if lowering.iter().all(Option::is_some) {
        for i in 1..=3u8 {
            let mut classes: BTreeMap<Vec<((u8, i64), i64)>, Vec<usize>> = BTreeMap::new();
            for (idx, v) in lowering.iter().enumerate() {
                let key: Vec<_> = v.as_ref().unwrap().iter().filter(|((j, _), _)| *j != i).map(|(k, e)| (*k, *e)).collect();
                classes.entry(key).or_default().push(idx);
            }
            for members in classes.values() {
                let mut target: FxHashMap<Sl2Monomial, i64> = FxHashMap::default();
                for &idx in members {
                    *target.entry(c.m[idx].beta(i)).or_default() += 1;
                }
                let mut matches = 0;
                for &idx in members {
                    let cand = &c.m[idx];
                    if !cand.is_j_dominant(i) {
                        continue;
                    }
                    if truncated_sl2(cand, i, &c.u) == target {
                        matches += 1;
                    }
                }
                if matches != 1 {
                    let rep_m = &c.m[members[0]];
                    fail(
                        &mut rep,
                        3,
                        format!("node {i}, class of {rep_m}: {matches} {i}-dominant monomials reproduce the class"),
                    );
                }
            }
        }
    } else {
        fail(&mut rep, 3, "not checked because (i) fails".into());
    }
    rep
}

/// The `sl2` character of `beta_i(top)`, keeping the terms whose lowering
/// uses only `A_{i,b}` with `(i,b)` in `u`.
fn truncated_sl2(top: &LMonomial, i: u8, u: &IndexSet) -> FxHashMap<Sl2Monomial, i64> {
    let beta = top.beta(i);
    let step = r(i);
    let mut out = FxHashMap::default();
    for (low, c) in sl2::character_lowerings(&beta, step).expect("i-dominant") {
        if low.keys().all(|&b| u.contains(i, b)) {
            let x = low.iter().fold(beta.clone(), |acc, (&b, &e)| acc.mul(&Sl2Monomial::a(b, step).pow(-e)));
            *out.entry(x).or_default() += c;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// `trunc_{m_+ Q_U^-}`: the terms of `chi` of the form `m_+` times a product of
/// `A_{i,s}^{-1}` with `(i,s)` in `u`.
pub fn truncate(chi: &QCharacter, m_plus: &LMonomial, u: &IndexSet) -> QCharacter {
    chi.filter(|m| match m.div(m_plus).decompose_in_a_basis() {
        Ok(v) => u.contains_lowering(&v),
        Err(_) => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_certificate() {
        let c = TruncationCertificate { m_plus: "1_0".parse().unwrap(), u: IndexSet::empty(), m: vec!["1_0".parse().unwrap()] };
        assert!(verify_truncation_certificate(&c));
    }

    #[test]
    fn fundamental_as_certificate() {
        let m_plus: LMonomial = "1_0".parse().unwrap();
        let chi = crate::fm::fm_qcharacter(&m_plus).unwrap();
        let u = IndexSet::at_most(100);
        let m: Vec<LMonomial> = chi.sorted_terms().into_iter().map(|(m, _)| m).collect();
        let c = TruncationCertificate { m_plus, u, m };
        assert!(verify_truncation_certificate(&c));
        let mut broken = c.clone();
        broken.m.remove(2);
        let rep = check_truncation_certificate(&broken);
        assert!(!rep.ok());
        assert!(rep.failed().contains(&4));
    }

    #[test]
    fn bad_membership_fails_condition_one() {
        let c = TruncationCertificate {
            m_plus: "1_0".parse().unwrap(),
            u: IndexSet::at_most(0),
            m: vec!["1_0".parse().unwrap(), "1_2^-1 2_1".parse().unwrap()],
        };
        let rep = check_truncation_certificate(&c);
        assert_eq!(rep.conditions[0], false);
    }
}
