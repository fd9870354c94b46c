//! Coordinate bounds on exponents. For `N = Q D` the Newton polytopes satisfy
//! `NP(N) = NP(Q) + NP(D)`, so each exponent of a quotient term lies in
//! `[min_v N - min_v D, max_v N - max_v D]`.

use rustc_hash::FxHashMap;

use super::QCharacter;
use crate::monomial::LMonomial;

type Var = (u8, i32);

/// Per-variable exponent ranges; variables not listed have range `[0, 0]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExponentBox {
    ranges: FxHashMap<Var, (i64, i64)>,
}

impl ExponentBox {
    pub fn of_character(x: &QCharacter) -> Self {
        let mut ranges: FxHashMap<Var, (i64, i64, usize)> = FxHashMap::default();
        for (m, _) in x.iter() {
            for f in m.factors() {
                let e = f.exp as i64;
                let r = ranges.entry((f.node, f.spectral)).or_insert((e, e, 0));
                r.0 = r.0.min(e);
                r.1 = r.1.max(e);
                r.2 += 1;
            }
        }
        let n = x.len();
        let ranges = ranges
            .into_iter()
            .map(|(v, (lo, hi, c))| if c < n { (v, (lo.min(0), hi.max(0))) } else { (v, (lo, hi)) })
            .collect();
        ExponentBox { ranges }
    }

    fn get(&self, v: &Var) -> (i64, i64) {
        self.ranges.get(v).copied().unwrap_or((0, 0))
    }

    fn vars<'a>(&'a self, o: &'a Self) -> impl Iterator<Item = Var> + 'a {
        self.ranges.keys().chain(o.ranges.keys().filter(|v| !self.ranges.contains_key(v))).copied()
    }

    /// Bounds for a product.
    pub fn sum(&self, o: &Self) -> Self {
        let ranges = self
            .vars(o)
            .map(|v| {
                let (a, b) = (self.get(&v), o.get(&v));
                (v, (a.0 + b.0, a.1 + b.1))
            })
            .collect();
        ExponentBox { ranges }
    }

    /// Bounds containing both boxes.
    pub fn hull(&self, o: &Self) -> Self {
        let ranges = self
            .vars(o)
            .map(|v| {
                let (a, b) = (self.get(&v), o.get(&v));
                (v, (a.0.min(b.0), a.1.max(b.1)))
            })
            .collect();
        ExponentBox { ranges }
    }

    /// Bounds for `Q` when `N = Q D` and `self` bounds `N`; `None` when empty.
    pub fn quotient(&self, den: &Self) -> Option<Self> {
        let mut ranges = FxHashMap::default();
        for v in self.vars(den) {
            let (n, d) = (self.get(&v), den.get(&v));
            let r = (n.0 - d.0, n.1 - d.1);
            if r.0 > r.1 {
                return None;
            }
            ranges.insert(v, r);
        }
        Some(ExponentBox { ranges })
    }

    pub fn contains(&self, m: &LMonomial) -> bool {
        let mut inside = 0;
        for f in m.factors() {
            let Some(&(lo, hi)) = self.ranges.get(&(f.node, f.spectral)) else { return false };
            if !(lo..=hi).contains(&(f.exp as i64)) {
                return false;
            }
            inside += 1;
        }
        // Listed variables absent from `m` need 0 in range.
        inside == self.ranges.len()
            || self.ranges.iter().all(|(v, &(lo, hi))| (lo <= 0 && 0 <= hi) || m.exponent(v.0, v.1 as i64) != 0)
    }
}
