//! Frenkel-Mukhin algorithm and truncated q-characters.

pub mod table1;
pub mod truncation;

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::cartan::r;
use crate::error::{Error, Result};
use crate::monomial::LMonomial;
use crate::qchar::{sl2, QCharacter};

pub use table1::{table1_certificate, tkl0_certificate, Table1Row};
pub use truncation::{
    check_truncation_certificate, truncate, verify_truncation_certificate, CertificateReport, IndexSet,
    TruncationCertificate,
};

/// Resource caps for [`fm_qcharacter_with`].
#[derive(Clone, Copy, Debug)]
pub struct FmLimits {
    pub max_terms: usize,
    pub max_depth: usize,
}

impl Default for FmLimits {
    fn default() -> Self {
        FmLimits { max_terms: 2_000_000, max_depth: 512 }
    }
}

struct Slot {
    colour: [i64; 3],
}

/// FM algorithm with default limits.
pub fn fm_qcharacter(m_plus: &LMonomial) -> Result<QCharacter> {
    fm_qcharacter_with(m_plus, FmLimits::default())
}

/// Runs the FM algorithm from the dominant monomial `m_plus`.
///
/// Monomials are processed by increasing A-depth. Each carries, per node `j`,
/// the multiplicity already explained by `j`-strings of its ancestors (its
/// colour). The multiplicity of a monomial is the largest colour; the
/// uncoloured part at node `j` seeds a fresh `sl2` character, which must then
/// be `j`-dominant.
pub fn fm_qcharacter_with(m_plus: &LMonomial, limits: FmLimits) -> Result<QCharacter> {
    if !m_plus.is_dominant() {
        return Err(Error::NonDominantMonomial(m_plus.to_string()));
    }
    let mut slots: FxHashMap<LMonomial, Slot> = FxHashMap::default();
    let mut buckets: Vec<Vec<LMonomial>> = vec![vec![m_plus.clone()]];
    slots.insert(m_plus.clone(), Slot { colour: [0; 3] });
    let mut out = QCharacter::zero();
    let mut lower_cache: BTreeMap<(u8, crate::qchar::sl2::Sl2Monomial), Vec<(LMonomial, usize, i64)>> =
        BTreeMap::new();
    let mut depth = 0;
    while depth < buckets.len() {
        if depth > limits.max_depth {
            return Err(Error::DepthCap(depth, limits.max_depth));
        }
        let bucket = std::mem::take(&mut buckets[depth]);
        for m in bucket {
            let colour = slots[&m].colour;
            let mult = if depth == 0 { 1 } else { *colour.iter().max().unwrap() };
            out.add_term(m.clone(), mult);
            if out.len() > limits.max_terms {
                return Err(Error::TermCap(out.len(), limits.max_terms));
            }
            for j in 1..=3u8 {
                let excess = mult - colour[j as usize - 1];
                if excess <= 0 {
                    continue;
                }
                if !m.is_j_dominant(j) {
                    return Err(Error::FmInconsistent(m.to_string(), j));
                }
                let beta = m.beta(j);
                let key = (j, beta.clone());
                if !lower_cache.contains_key(&key) {
                    let mut v = Vec::new();
                    for (low, c) in sl2::character_lowerings(&beta, r(j))? {
                        if low.is_empty() {
                            continue;
                        }
                        let steps: i32 = low.values().sum();
                        let factor = low
                            .iter()
                            .fold(LMonomial::one(), |acc, (&b, &e)| acc.mul(&LMonomial::a(j, b).pow(-e)));
                        v.push((factor, steps as usize, c));
                    }
                    lower_cache.insert(key.clone(), v);
                }
                for (factor, steps, c) in &lower_cache[&key] {
                    let child = m.mul(factor);
                    let d = depth + steps;
                    let slot = slots.entry(child.clone()).or_insert_with(|| {
                        if buckets.len() <= d {
                            buckets.resize(d + 1, Vec::new());
                        }
                        buckets[d].push(child);
                        Slot { colour: [0; 3] }
                    });
                    slot.colour[j as usize - 1] += excess * c;
                }
            }
        }
        depth += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIXTURE_2: &str = "2_0 + 1_1 2_2^-1 3_1 + 1_3^-1 3_1 + 1_1 2_4 3_5^-1 + 1_3^-1 2_2 2_4 3_5^-1 + 1_1 1_5 2_6^-1 \
        + 1_3^-1 1_5 2_2 2_6^-1 + 1_5 2_4^-1 2_6^-1 3_3 + 1_1 1_7^-1 + 1_3^-1 1_7^-1 2_2 + 1_7^-1 2_4^-1 3_3 \
        + 1_5 3_7^-1 + 1_7^-1 2_6 3_7^-1 + 2_8^-1";
    const FIXTURE_3: &str = "3_0 + 2_1 2_3 3_4^-1 + 1_4 2_1 2_5^-1 + 1_2 1_4 2_3^-1 2_5^-1 3_2 + 1_6^-1 2_1 \
        + 1_2 1_6^-1 2_3^-1 3_2 + 1_4^-1 1_6^-1 3_2 + 1_2 1_4 3_6^-1 + 1_2 1_6^-1 2_5 3_6^-1 \
        + 1_4^-1 1_6^-1 2_3 2_5 3_6^-1 + 1_2 2_7^-1 + 1_4^-1 2_3 2_7^-1 + 2_5^-1 2_7^-1 3_4 + 3_8^-1";

    fn parse_sum(s: &str) -> QCharacter {
        QCharacter::from_terms(s.split(" + ").map(|t| (t.parse::<LMonomial>().unwrap(), 1)))
    }

    #[test]
    fn fundamental_fixtures() {
        let c1 = parse_sum("1_0 + 1_2^-1 2_1 + 2_3^-1 3_2 + 2_5 3_6^-1 + 1_6 2_7^-1 + 1_8^-1");
        assert_eq!(fm_qcharacter(&"1_0".parse().unwrap()).unwrap(), c1);
        let c2 = parse_sum(FIXTURE_2);
        assert_eq!(fm_qcharacter(&"2_0".parse().unwrap()).unwrap(), c2);
        let c3 = parse_sum(FIXTURE_3);
        assert_eq!(fm_qcharacter(&"3_0".parse().unwrap()).unwrap(), c3);
    }

    #[test]
    fn identity_and_rejection() {
        assert_eq!(fm_qcharacter(&LMonomial::one()).unwrap(), QCharacter::one());
        assert!(fm_qcharacter(&"1_0^-1".parse().unwrap()).is_err());
        let cap = FmLimits { max_terms: 3, max_depth: 512 };
        assert!(matches!(fm_qcharacter_with(&"2_0".parse().unwrap(), cap), Err(Error::TermCap(..))));
    }

    #[test]
    fn terms_lie_below_highest() {
        let m: LMonomial = "3_0 1_6".parse().unwrap();
        let c = fm_qcharacter(&m).unwrap();
        assert_eq!(c.dimension(), 70);
        assert_eq!(c.get(&m), 1);
        for (x, _) in c.iter() {
            assert!(x.leq(&m));
        }
    }
}
