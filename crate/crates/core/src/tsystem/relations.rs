//! Instances of the usual T-system and of systems I-IV.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::label::{canonical_label, highest_monomial, Family, ModuleLabel};
use crate::error::{Error, Result};
use crate::monomial::LMonomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum System {
    Usual,
    I,
    II,
    III,
    IV,
}

impl System {
    pub fn relation_count(self) -> u8 {
        match self {
            System::Usual => 3,
            System::I | System::II => 9,
            System::III | System::IV => 6,
        }
    }

    pub fn relations(self) -> Vec<RelationId> {
        (1..=self.relation_count()).map(|n| RelationId { system: self, number: n }).collect()
    }

    /// The system whose bar-image this one is.
    pub fn mirror(self) -> System {
        match self {
            System::I => System::II,
            System::II => System::I,
            System::III => System::IV,
            System::IV => System::III,
            System::Usual => System::Usual,
        }
    }

    fn is_dual(self) -> bool {
        matches!(self, System::II | System::IV)
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            System::Usual => "usual",
            System::I => "I",
            System::II => "II",
            System::III => "III",
            System::IV => "IV",
        };
        f.write_str(s)
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "usual" | "t" | "kr" => Ok(System::Usual),
            "i" | "1" => Ok(System::I),
            "ii" | "2" => Ok(System::II),
            "iii" | "3" => Ok(System::III),
            "iv" | "4" => Ok(System::IV),
            _ => Err(Error::Unknown(format!("system {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RelationId {
    pub system: System,
    pub number: u8,
}

impl RelationId {
    pub fn new(system: System, number: u8) -> Result<Self> {
        if number == 0 || number > system.relation_count() {
            return Err(Error::Unknown(format!("relation {system}.{number}")));
        }
        Ok(RelationId { system, number })
    }

    /// Parameter names and the smallest admissible value of each.
    pub fn parameters(self) -> &'static [(&'static str, i64)] {
        match (self.system, self.number) {
            (System::Usual, _) => &[("k", 1)],
            (System::I | System::II, 2 | 4) => &[("k", 1), ("m", 1)],
            (System::I | System::II, 5) => &[("l", 1), ("r", 1)],
            (System::I | System::II, 7) => &[("k", 1), ("l", 0)],
            (System::I | System::II, 9) => &[("l", 0), ("i", 0)],
            (System::III | System::IV, 2) => &[("r", 0), ("l", 1)],
            (System::III | System::IV, 3) => &[("p", 2), ("l", 1)],
            _ => &[("k", 1), ("l", 1)],
        }
    }

    /// Upper bounds forced by the relation itself (`r` in `{1,2}`, etc.).
    fn fixed_upper(self, idx: usize) -> Option<i64> {
        match (self.system, self.number, idx) {
            (System::I | System::II, 5, 1) => Some(2),
            (System::I | System::II, 9, 1) => Some(2),
            (System::III | System::IV, 2, 0) => Some(1),
            _ => None,
        }
    }

    /// All admissible parameter tuples with every entry at most `max`.
    pub fn grid(self, max: i64) -> Vec<Vec<i64>> {
        let ps = self.parameters();
        let mut out = vec![vec![]];
        for (idx, (_, lo)) in ps.iter().enumerate() {
            let hi = self.fixed_upper(idx).map_or(max, |u| u.min(max));
            let mut next = Vec::new();
            for prefix in &out {
                for v in *lo..=hi {
                    let mut p = prefix.clone();
                    p.push(v);
                    next.push(p);
                }
            }
            out = next;
        }
        out
    }

    fn check(self, params: &[i64]) -> Result<()> {
        let ps = self.parameters();
        if params.len() != ps.len() {
            return Err(Error::OutOfRange(
                self.to_string(),
                format!("expected {} parameters, got {}", ps.len(), params.len()),
            ));
        }
        for (idx, ((name, lo), &v)) in ps.iter().zip(params).enumerate() {
            let hi = self.fixed_upper(idx).unwrap_or(i64::MAX);
            if v < *lo || v > hi {
                return Err(Error::OutOfRange(self.to_string(), format!("{name} = {v}")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.system {
            System::Usual => write!(f, "usual-{}", self.number),
            s => write!(f, "{s}.{}", self.number),
        }
    }
}

impl FromStr for RelationId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (sys, num) = t
            .split_once(['.', '-'])
            .ok_or_else(|| Error::Unknown(format!("relation {t:?}")))?;
        let n: u8 = num.parse().map_err(|_| Error::Unknown(format!("relation {t:?}")))?;
        RelationId::new(sys.parse()?, n)
    }
}

/// `[L][R] = [T][B] + prod [S_i]`. Relations stating `[X] = [A][B]` are stored
/// as `L = X`, `R = One`, `T = A`, `B = B` with the single source `Zero`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub id: RelationId,
    pub params: Vec<i64>,
    pub shift: i64,
    pub left: ModuleLabel,
    pub right: ModuleLabel,
    pub top: ModuleLabel,
    pub bottom: ModuleLabel,
    pub sources: Vec<ModuleLabel>,
}

impl RelationInstance {
    pub fn is_product_form(&self) -> bool {
        self.sources.iter().any(|s| canonical_label(s).family == Family::Zero)
    }

    /// Every label occurring in the instance.
    pub fn labels(&self) -> Vec<&ModuleLabel> {
        let mut v = vec![&self.left, &self.right, &self.top, &self.bottom];
        v.extend(self.sources.iter());
        v
    }

    /// The same instance with every label barred and left and right exchanged.
    pub fn bar(&self) -> RelationInstance {
        RelationInstance {
            id: RelationId { system: self.id.system.mirror(), number: self.id.number },
            params: self.params.clone(),
            shift: self.shift,
            left: self.right.bar(),
            right: self.left.bar(),
            top: self.top.bar(),
            bottom: self.bottom.bar(),
            sources: self.sources.iter().map(ModuleLabel::bar).collect(),
        }
    }
}

impl fmt::Display for RelationInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        let srcs: Vec<String> = self.sources.iter().map(|s| format!("[{s}]")).collect();
        write!(
            f,
            "{} ({}; s={}): [{}][{}] = [{}][{}] + {}",
            self.id,
            ps.join(","),
            self.shift,
            self.left,
            self.right,
            self.top,
            self.bottom,
            srcs.join("")
        )
    }
}

fn sigma(k: i64) -> i64 {
    k.rem_euclid(2)
}

fn fl(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn t(k: i64, l: i64, m: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::T, &[k, l, m], s)
}
fn tt(k: i64, l: i64, m: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::Ttilde, &[k, l, m], s)
}
fn sl(k: i64, l: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::S, &[k, l], s)
}
fn rl(k: i64, l: i64, m: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::R, &[k, l, m], s)
}
fn ul(k: i64, l: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::U, &[k, l], s)
}
fn vl(k: i64, l: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::V, &[k, l], s)
}
fn pl(k: i64, l: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::P, &[k, l], s)
}
fn ol(k: i64, l: i64, s: i64) -> ModuleLabel {
    ModuleLabel::mk(Family::O, &[k, l], s)
}

type Parts = (ModuleLabel, ModuleLabel, ModuleLabel, ModuleLabel, Vec<ModuleLabel>);

fn product_form(x: ModuleLabel, a: ModuleLabel, b: ModuleLabel) -> Parts {
    (x, ModuleLabel::one(), a, b, vec![ModuleLabel::zero()])
}

/// Instantiates a relation. With `strict_paper` the relations known to be
/// misprinted are produced exactly as printed; otherwise the corrected forms
/// (which satisfy highest-monomial balance and the exact identity) are used.
pub fn relation_instance(id: RelationId, params: &[i64], s: i64, strict_paper: bool) -> Result<RelationInstance> {
    id.check(params)?;
    let base = RelationId { system: if id.system.is_dual() { id.system.mirror() } else { id.system }, number: id.number };
    let (left, right, top, bottom, sources) = build(base, params, s, strict_paper);
    let inst = RelationInstance { id: base, params: params.to_vec(), shift: s, left, right, top, bottom, sources };
    Ok(if id.system.is_dual() { inst.bar() } else { inst })
}

fn build(id: RelationId, p: &[i64], s: i64, strict: bool) -> Parts {
    match (id.system, id.number) {
        (System::Usual, n) => {
            let k = p[0];
            match (n, strict) {
                (1, true) => (t(k - 1, 0, 0, s), t(k - 1, 0, 0, s + 4), t(k, 0, 0, s), t(k - 2, 0, 0, s + 4), vec![t(0, 2 * k - 2, 0, s + 1)]),
                (1, false) => (t(k - 1, 0, 0, s), t(k - 1, 0, 0, s + 4), t(k, 0, 0, s), t(k - 2, 0, 0, s + 4), vec![t(0, 2 * k - 2, 0, s)]),
                (2, true) => (
                    t(0, k - 1, 0, s),
                    t(0, k - 1, 0, s + 2),
                    t(0, k, 0, s),
                    t(0, k - 2, 0, s + 2),
                    vec![t(k - 1, 0, 0, s + 1), t(0, 0, fl(k, 2), s + 1), t(0, 0, fl(k - 1, 2), s + 3)],
                ),
                (2, false) => (
                    t(0, k - 1, 0, s),
                    t(0, k - 1, 0, s + 2),
                    t(0, k, 0, s),
                    t(0, k - 2, 0, s + 2),
                    vec![t(0, 0, k - 1, s), t(fl(k, 2), 0, 0, s + 2), t(fl(k - 1, 2), 0, 0, s + 4)],
                ),
                (_, true) => (t(k - 1, 0, 0, s), t(k - 1, 0, 0, s + 2), t(k, 0, 0, s), t(k - 2, 0, 0, s + 2), vec![t(0, k - 1, 0, s + 1)]),
                (_, false) => (t(0, 0, k - 1, s), t(0, 0, k - 1, s + 2), t(0, 0, k, s), t(0, 0, k - 2, s + 2), vec![t(0, k - 1, 0, s + 2)]),
            }
        }
        (System::I, 1) => {
            let (k, l) = (p[0], p[1]);
            (
                t(k, l - 1, 0, s),
                t(k - 1, l, 0, s + 4),
                t(k, l, 0, s),
                t(k - 1, l - 1, 0, s + 4),
                vec![rl(2 * k - 1, l, fl(l, 2), s + 1), t(fl(l - 1, 2), 0, 0, s + 4 * k + 4)],
            )
        }
        (System::I, 2) => {
            let (k, m) = (p[0], p[1]);
            (t(k, 0, m - 1, s), t(k - 1, 0, m, s + 4), t(k, 0, m, s), t(k - 1, 0, m - 1, s + 4), vec![sl(2 * k - 1, m - 1, s + 1)])
        }
        (System::I, 3) => {
            let (k, l) = (p[0], p[1]);
            (
                sl(k, l - 1, s),
                sl(k - 1, l, s + 2),
                sl(k, l, s),
                sl(k - 1, l - 1, s + 2),
                vec![
                    tt(k, 0, fl(l, 2), s + 1),
                    t(fl(k, 2), 0, l, s + 2 * sigma(k) + 1),
                    t(fl(l - 1, 2), 0, 0, s + 2 * k + 7),
                    t(fl(k - 1, 2), 0, 0, s + 2 * sigma(k + 1) + 1),
                ],
            )
        }
        (System::I, 4) => {
            let (k, m) = (p[0], p[1]);
            (tt(k, 0, m - 1, s), tt(k - 1, 0, m, s + 2), tt(k, 0, m, s), tt(k - 1, 0, m - 1, s + 2), vec![sl(k - 1, 2 * m - 1, s + 1)])
        }
        (System::I, 5) => {
            let (l, r) = (p[0], p[1]);
            (
                t(0, l, r - 1, s),
                t(0, l - 1, r, s + 2),
                t(0, l, r, s),
                t(0, l - 1, r - 1, s + 2),
                vec![
                    t(0, 0, l - 1, if strict { s - 1 } else { s }),
                    t(fl(l, 2), r - 1, 0, s + 2 * sigma(l) + 2),
                    t(fl(l + 1, 2), 0, 0, s + 2 * sigma(l + 1) + 2),
                ],
            )
        }
        (System::I, 6) => {
            let (k, l) = (p[0], p[1]);
            (
                rl(k, 2 * l, l - 1, s),
                rl(k - 1, 2 * l, l, s + 2),
                rl(k, 2 * l, l, s),
                rl(k - 1, 2 * l, l - 1, s + 2),
                vec![
                    t(0, 0, k + 2 * l, s - 1),
                    t(fl(k - 1, 2), 0, 2 * l, s + 2 * sigma(k + 1) + 1),
                    t(fl(k, 2), 2 * l - 1, 0, s + 2 * sigma(k) + 1),
                ],
            )
        }
        (System::I, 7) => {
            let (k, l) = (p[0], p[1]);
            (
                rl(k, 2 * l, l, s),
                rl(k - 1, 2 * l + 1, l, s + 2),
                rl(k, 2 * l + 1, l, s),
                rl(k - 1, 2 * l, l, s + 2),
                vec![
                    tt(k - 1, 0, l, s + 1),
                    t(fl(k + 1, 2) + l, 0, 0, s + 2 * sigma(k + 1) + 1),
                    t(fl(k, 2), 2 * l, 0, s + 2 * sigma(k) + 1),
                ],
            )
        }
        (System::I, 8) => {
            let (k, l) = (p[0], p[1]);
            let left_m = if strict { l - 1 } else { l };
            (
                rl(k, 2 * l + 1, left_m, s),
                rl(k - 1, 2 * l + 2, l, s + 2),
                rl(k, 2 * l + 2, l, s),
                rl(k - 1, 2 * l + 1, l, s + 2),
                vec![
                    tt(k - 1, 0, l, s + 1),
                    t(fl(k + 1, 2) + l, 0, 0, s + 2 * sigma(k + 1) + 1),
                    t(fl(k, 2), 2 * l + 1, 0, s + 2 * sigma(k) + 1),
                ],
            )
        }
        (System::I, _) => {
            let (l, i) = (p[0], p[1]);
            let (a, b) = if strict { (s - 2, s + 2) } else { (s - 1, s + 3) };
            product_form(rl(0, 2 * l + i, l, s), t(0, 0, 2 * l + i, a), t(l, 0, 0, b))
        }
        (System::III, 1) => {
            let (k, l) = (p[0], p[1]);
            (
                tt(k, l - 1, 0, s),
                tt(k - 1, l, 0, s + 2),
                tt(k, l, 0, s),
                tt(k - 1, l - 1, 0, s + 2),
                vec![tt(l - 1, 0, 0, s + 2 * k + 2), ul(k - 1, l, s + 1)],
            )
        }
        (System::III, 2) => {
            let (r, l) = (p[0], p[1]);
            product_form(ul(r, l, s), tt(0, r, fl(l, 2), s - 1), t(fl(l + 1, 2), 0, 0, s + 2 * r + 1))
        }
        (System::III, 3) => {
            let (pp, l) = (p[0], p[1]);
            let src = if l % 2 == 0 {
                vec![
                    tt(pp, l - 1, 0, s + 1),
                    t(fl(pp, 2) + l / 2, 0, 0, s + 2 * sigma(pp) + 1),
                    vl(fl(pp - 1, 2), l / 2, s + 2 * sigma(pp + 1) + 1),
                ]
            } else {
                vec![
                    tt(pp, l - 1, 0, s + 1),
                    t(fl(pp + 1, 2) + (l - 1) / 2, 0, 0, s + 2 * sigma(pp + 1) + 1),
                    pl(fl(pp - 2, 2), (l - 1) / 2, s + 2 * sigma(pp) + 1),
                ]
            };
            (ul(pp, l - 1, s), ul(pp - 1, l, s + 2), ul(pp, l, s), ul(pp - 1, l - 1, s + 2), src)
        }
        (System::III, 4) => {
            let (k, l) = (p[0], p[1]);
            (vl(k, l - 1, s), vl(k - 1, l, s + 4), vl(k, l, s), vl(k - 1, l - 1, s + 4), vec![ol(2 * (k - 1), 2 * (l - 1), s + 1)])
        }
        (System::III, 5) => {
            let (k, l) = (p[0], p[1]);
            let w = if strict { 1 } else { 2 };
            (
                ol(k, l - 1, s),
                ol(k - 1, l, s + 2),
                ol(k, l, s),
                ol(k - 1, l - 1, s + 2),
                vec![
                    pl(fl(k, 2), fl(l, 2), s + w * sigma(k) + 1),
                    vl(fl(k + 1, 2), fl(l + 1, 2), s + w * sigma(k + 1) + 1),
                    tt(k - 1, 0, 0, s + 1),
                    tt(l - 1, 0, 0, s + 2 * k + 7),
                ],
            )
        }
        (System::III, _) => {
            let (k, l) = (p[0], p[1]);
            let d = if strict { 2 } else { 4 };
            (pl(k, l - 1, s), pl(k - 1, l, s + d), pl(k, l, s), pl(k - 1, l - 1, s + d), vec![ol(2 * k - 1, 2 * l - 1, s + 1)])
        }
        _ => unreachable!("dual systems are built from their mirror"),
    }
}

/// Highest monomial of a label, with `None` for the zero class.
fn hm(l: &ModuleLabel) -> Option<LMonomial> {
    highest_monomial(l).ok()
}

/// Outcome of the highest-monomial balance check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Balance {
    pub ok: bool,
    pub lhs: Option<LMonomial>,
    pub rhs: Option<LMonomial>,
}

/// `highest(L) highest(R) = highest(T) highest(B)`; when `T B` vanishes the
/// source product takes its place.
pub fn highest_monomial_balance(r: &RelationInstance) -> Balance {
    let prod = |ls: &[&ModuleLabel]| -> Option<LMonomial> {
        ls.iter().try_fold(LMonomial::one(), |acc, l| hm(l).map(|m| acc.mul(&m)))
    };
    let lhs = prod(&[&r.left, &r.right]);
    let rhs = prod(&[&r.top, &r.bottom]).or_else(|| prod(&r.sources.iter().collect::<Vec<_>>()));
    Balance { ok: lhs.is_some() && lhs == rhs, lhs, rhs }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i2_example() {
        let r = relation_instance("I.2".parse().unwrap(), &[1, 1], 0, false).unwrap();
        assert_eq!(r.left, t(1, 0, 0, 0));
        assert_eq!(r.right, t(0, 0, 1, 4));
        assert_eq!(r.top, t(1, 0, 1, 0));
        assert_eq!(r.bottom, t(0, 0, 0, 4));
        assert_eq!(r.sources, vec![sl(1, 0, 1)]);
    }

    #[test]
    fn iii4_example() {
        let r = relation_instance("III.4".parse().unwrap(), &[1, 1], 0, false).unwrap();
        assert_eq!(r.sources, vec![ol(0, 0, 1)]);
    }

    #[test]
    fn printed_i9_is_unbalanced() {
        let id: RelationId = "I.9".parse().unwrap();
        let printed = relation_instance(id, &[1, 0], 0, true).unwrap();
        assert!(!highest_monomial_balance(&printed).ok);
        let fixed = relation_instance(id, &[1, 0], 0, false).unwrap();
        assert!(highest_monomial_balance(&fixed).ok);
    }

    #[test]
    fn balance_holds_everywhere() {
        for sys in [System::Usual, System::I, System::II, System::III, System::IV] {
            for id in sys.relations() {
                for p in id.grid(4) {
                    for s in [-1, 0, 3] {
                        let r = relation_instance(id, &p, s, false).unwrap();
                        let b = highest_monomial_balance(&r);
                        assert!(b.ok, "{r}: {:?} vs {:?}", b.lhs, b.rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn dual_is_bar_with_sides_swapped() {
        let r = relation_instance("II.2".parse().unwrap(), &[1, 1], 0, false).unwrap();
        assert_eq!(r.left, t(0, 0, 1, 4).bar());
        assert_eq!(r.right, t(1, 0, 0, 0).bar());
        assert_eq!(r.id.to_string(), "II.2");
    }

    #[test]
    fn out_of_range() {
        assert!(relation_instance("III.3".parse().unwrap(), &[1, 1], 0, false).is_err());
        assert!(relation_instance("I.5".parse().unwrap(), &[1, 3], 0, false).is_err());
    }
}
