//! q-characters obtained from the fundamental ones through the relations:
//! each label is the top module of one relation (or the left side of a
//! product relation), solved for by exact division.

use std::collections::HashSet;
use std::sync::{Arc, Mutex};

use super::cache::{CharacterCache, CharacterSource};
use super::label::{canonical_label, highest_monomial, Family, ModuleLabel};
use super::relations::{relation_instance, RelationId, RelationInstance, System};
use crate::error::{Error, Result};
use crate::fm::{fm_qcharacter_with, FmLimits};
use crate::monomial::LMonomial;
use crate::qchar::stream::divide_sum_of_products;
use crate::qchar::QCharacter;

/// How a canonical label at shift zero is obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RecursionStep {
    /// A fundamental module with the given highest monomial, from the FM algorithm.
    Fundamental(LMonomial),
    /// The top module (or product-form left side) of a relation instance.
    Relation(RelationInstance),
    /// `chi = iota(chi(other))`, where the highest monomial of `other` is the bar
    /// of this one.
    Involution(ModuleLabel),
}

/// The relation whose top module (left side, for product relations) is `label`,
/// for an unbarred label at any shift.
pub fn relation_for(label: &ModuleLabel) -> Option<(RelationId, Vec<i64>)> {
    use Family::*;
    let id = |system, number| RelationId { system, number };
    let p = label.params.as_slice();
    match (label.family, p) {
        (T, &[k, 0, 0]) if k >= 2 => Some((id(System::Usual, 1), vec![k])),
        (T, &[0, k, 0]) if k >= 2 => Some((id(System::Usual, 2), vec![k])),
        (T, &[0, 0, k]) if k >= 2 => Some((id(System::Usual, 3), vec![k])),
        (T, &[k, l, 0]) if k >= 1 && l >= 1 => Some((id(System::I, 1), vec![k, l])),
        (T, &[k, 0, m]) if k >= 1 && m >= 1 => Some((id(System::I, 2), vec![k, m])),
        (T, &[0, l, r]) if l >= 1 && (1..=2).contains(&r) => Some((id(System::I, 5), vec![l, r])),
        (S, &[k, l]) if k >= 1 && l >= 1 => Some((id(System::I, 3), vec![k, l])),
        (Ttilde, &[k, 0, m]) if k >= 1 && m >= 1 => Some((id(System::I, 4), vec![k, m])),
        (Ttilde, &[k, l, 0]) if k >= 1 && l >= 1 => Some((id(System::III, 1), vec![k, l])),
        (R, &[0, l, m]) if (2 * m..=2 * m + 2).contains(&l) => Some((id(System::I, 9), vec![m, l - 2 * m])),
        (R, &[k, l, m]) if k >= 1 && m >= 1 && l == 2 * m => Some((id(System::I, 6), vec![k, m])),
        (R, &[k, l, m]) if k >= 1 && m >= 0 && l == 2 * m + 1 => Some((id(System::I, 7), vec![k, m])),
        (R, &[k, l, m]) if k >= 1 && m >= 1 && l == 2 * m + 2 => Some((id(System::I, 8), vec![k, m])),
        (U, &[r, l]) if r <= 1 && l >= 1 => Some((id(System::III, 2), vec![r, l])),
        (U, &[p, l]) if p >= 2 && l >= 1 => Some((id(System::III, 3), vec![p, l])),
        (V, &[k, l]) if k >= 1 && l >= 1 => Some((id(System::III, 4), vec![k, l])),
        (O, &[k, l]) if k >= 1 && l >= 1 => Some((id(System::III, 5), vec![k, l])),
        (P, &[k, l]) if k >= 1 && l >= 1 => Some((id(System::III, 6), vec![k, l])),
        _ => None,
    }
}

/// Unbarred labels (at the matching shift) whose highest monomial is `m`.
pub fn labels_with_highest(m: &LMonomial) -> Vec<ModuleLabel> {
    let (Some(lo), false) = (m.min_spectral(), m.is_one()) else { return Vec::new() };
    if !m.is_dominant() {
        return Vec::new();
    }
    let degree: i64 = m.factors().iter().map(|f| f.exp as i64).sum();
    let mut out = Vec::new();
    for fam in [Family::T, Family::Ttilde, Family::S, Family::R, Family::U, Family::V, Family::P, Family::O] {
        let n = fam.arity();
        let base = (degree + 1) as usize;
        for code in 0..base.pow(n as u32) {
            let params: Vec<i64> = (0..n).map(|j| ((code / base.pow(j as u32)) % base) as i64).collect();
            let l0 = ModuleLabel::mk(fam, &params, 0);
            let Ok(h0) = highest_monomial(&l0) else { continue };
            let Some(lo0) = h0.min_spectral() else { continue };
            if h0.len() != m.len() {
                continue;
            }
            let l = l0.with_shift(lo - lo0);
            if h0.tau_shift(lo - lo0) == *m {
                out.push(l);
            }
        }
    }
    out
}

fn instance_step(label: &ModuleLabel) -> Option<RecursionStep> {
    let (id, params) = relation_for(label)?;
    let r = relation_instance(id, &params, label.shift, false).ok()?;
    let target = if r.is_product_form() { &r.left } else { &r.top };
    (canonical_label(target) == canonical_label(label)).then_some(RecursionStep::Relation(r))
}

/// The step computing a label, if the relations cover it.
pub fn recursion_step(label: &ModuleLabel) -> Result<RecursionStep> {
    let c = canonical_label(label);
    if matches!(c.family, Family::Zero | Family::One) {
        return Err(Error::InvalidLabel(format!("{label} is a constant")));
    }
    if c.family.is_barred() {
        return Ok(RecursionStep::Involution(c.bar()));
    }
    let hm = highest_monomial(&c)?;
    if hm.len() == 1 {
        return Ok(RecursionStep::Fundamental(hm));
    }
    let direct = std::iter::once(c.clone()).chain(labels_with_highest(&hm));
    for l in direct {
        if let Some(step) = instance_step(&l) {
            return Ok(step);
        }
    }
    for l in labels_with_highest(&hm.bar()) {
        if relation_for(&l).is_some() {
            return Ok(RecursionStep::Involution(l));
        }
    }
    Err(Error::InvalidLabel(format!("no relation computes {label}")))
}

/// Default bound on the monomial products of one division step.
pub const DEFAULT_MAX_WORK: u64 = 400_000_000;

impl Default for RecursionSource {
    fn default() -> Self {
        Self::new(CharacterCache::default(), FmLimits::default())
    }
}

/// Characters computed through [`recursion_step`], memoised at shift zero.
#[derive(Debug)]
pub struct RecursionSource {
    pub cache: CharacterCache,
    /// Bound on the size of every quotient and of the fundamental characters.
    pub limits: FmLimits,
    /// Bound on the monomial products formed by one division.
    pub max_work: u64,
    active: Mutex<HashSet<ModuleLabel>>,
}

impl RecursionSource {
    pub fn new(cache: CharacterCache, limits: FmLimits) -> Self {
        RecursionSource { cache, limits, max_work: DEFAULT_MAX_WORK, active: Mutex::default() }
    }

    fn solve(&self, label: &ModuleLabel) -> Result<QCharacter> {
        match recursion_step(label)? {
            RecursionStep::Fundamental(m) => fm_qcharacter_with(&m, self.limits),
            RecursionStep::Involution(other) => Ok(self.character(&other)?.iota()),
            RecursionStep::Relation(r) => {
                let get = |l: &ModuleLabel| self.character(l);
                let one = QCharacter::one();
                if r.is_product_form() {
                    let (a, b) = (get(&r.top)?, get(&r.bottom)?);
                    return divide_sum_of_products(&[(1, vec![&*a, &*b])], &one, self.limits.max_terms, self.max_work);
                }
                let (l, rr, b) = (get(&r.left)?, get(&r.right)?, get(&r.bottom)?);
                let sources: Vec<Arc<QCharacter>> = r.sources.iter().map(get).collect::<Result<_>>()?;
                let num = [(1, vec![&*l, &*rr]), (-1, sources.iter().map(|x| &**x).collect())];
                divide_sum_of_products(&num, &b, self.limits.max_terms, self.max_work)
            }
        }
    }
}

impl CharacterSource for RecursionSource {
    fn compute_base(&self, label: &ModuleLabel) -> Result<QCharacter> {
        if !self.active.lock().unwrap().insert(label.clone()) {
            return Err(Error::InvalidLabel(format!("recursion for {label} does not terminate")));
        }
        let out = self.solve(label);
        self.active.lock().unwrap().remove(label);
        out
    }

    fn cache(&self) -> &CharacterCache {
        &self.cache
    }
}

/// q-character of a label through the relations, with a fresh in-memory cache.
pub fn compute_by_recursion(label: &ModuleLabel) -> Result<QCharacter> {
    let src = RecursionSource::default();
    Ok((*src.character(label)?).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fm::fm_qcharacter;

    fn lab(f: Family, p: &[i64]) -> ModuleLabel {
        ModuleLabel::new(f, p, 0).unwrap()
    }

    #[test]
    fn constants_and_fundamentals() {
        let src = RecursionSource::default();
        assert_eq!(*src.character(&ModuleLabel::t(0, 0, 0, 0)).unwrap(), QCharacter::one());
        for i in 1..=3u8 {
            let m = LMonomial::y(i, 0);
            let l = &labels_with_highest(&m)[0];
            assert_eq!(*src.character(l).unwrap(), fm_qcharacter(&m).unwrap());
        }
    }

    #[test]
    fn t101_through_i2() {
        let l = ModuleLabel::t(1, 0, 1, 0);
        assert!(matches!(recursion_step(&l).unwrap(), RecursionStep::Relation(r) if r.id.to_string() == "I.2"));
        let x = compute_by_recursion(&l).unwrap();
        assert_eq!(x, fm_qcharacter(&"3_0 1_6".parse().unwrap()).unwrap());
        assert_eq!(x.dimension(), 70);
    }

    #[test]
    fn small_labels_agree_with_fm() {
        let src = RecursionSource::default();
        for l in [
            lab(Family::T, &[2, 0, 0]),
            lab(Family::T, &[0, 2, 0]),
            lab(Family::T, &[0, 0, 2]),
            lab(Family::S, &[1, 1]),
            lab(Family::U, &[1, 1]),
            lab(Family::P, &[0, 1]),
            lab(Family::Tbar, &[1, 0, 1]),
        ] {
            let fm = if l.family.is_barred() {
                fm_qcharacter(&highest_monomial(&l.bar()).unwrap()).unwrap().iota()
            } else {
                fm_qcharacter(&highest_monomial(&l).unwrap()).unwrap()
            };
            assert_eq!(*src.character(&l).unwrap(), fm, "{l}");
        }
    }

    #[test]
    fn identification_by_highest_monomial() {
        let m = highest_monomial(&lab(Family::P, &[0, 2])).unwrap();
        let ls = labels_with_highest(&m);
        assert!(ls.contains(&lab(Family::P, &[0, 2])));
        assert!(ls.iter().all(|l| highest_monomial(l).unwrap() == m));
        assert!(labels_with_highest(&"1_0 1_2^-1".parse().unwrap()).is_empty());
    }
}
