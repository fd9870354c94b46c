//! q-characters of `U_{q_j}(\hat{sl}_2)`: strings, Kirillov-Reshetikhin
//! characters and characters of arbitrary dominant monomials.
//!
//! Every function takes a `step`: the spacing `r_j` of the node being
//! restricted to. Spectral parameters stay in units of `q`, so node 3 uses
//! step 2 and `A_s = Y_{s-2} Y_{s+2}`.

use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Monomial in `Y_s`, sorted by spectral parameter, no zero exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2Monomial {
    pairs: SmallVec<[(i64, i32); 6]>,
}

impl Sl2Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn y(s: i64) -> Self {
        Self::from_pairs([(s, 1)])
    }

    /// `A_s = Y_{s-step} Y_{s+step}`.
    pub fn a(s: i64, step: i64) -> Self {
        Self::from_pairs([(s - step, 1), (s + step, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (i64, i32)>>(it: I) -> Self {
        let mut map: BTreeMap<i64, i32> = BTreeMap::new();
        for (s, e) in it {
            *map.entry(s).or_default() += e;
        }
        Sl2Monomial { pairs: map.into_iter().filter(|(_, e)| *e != 0).collect() }
    }

    pub fn pairs(&self) -> &[(i64, i32)] {
        &self.pairs
    }

    pub fn is_one(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.pairs.iter().all(|&(_, e)| e > 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_pairs(self.pairs.iter().chain(o.pairs.iter()).copied())
    }

    pub fn pow(&self, n: i32) -> Self {
        Self::from_pairs(self.pairs.iter().map(|&(s, e)| (s, e * n)))
    }

    /// Total exponent, the `sl2` weight.
    pub fn degree(&self) -> i64 {
        self.pairs.iter().map(|&(_, e)| e as i64).sum()
    }
}

impl fmt::Display for Sl2Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairs.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|&(s, e)| if e == 1 { format!("Y_{s}") } else { format!("Y_{s}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Sparse `sl2` character.
pub type Sl2Character = BTreeMap<Sl2Monomial, i64>;

/// A string `Sigma_k^{(a)} = {a + step(k-1), a + step(k-3), ..., a - step(k-1)}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sl2String {
    pub center: i64,
    pub len: i64,
}

impl Sl2String {
    /// Spectral points, ascending.
    pub fn points(&self, step: i64) -> Vec<i64> {
        (0..self.len).map(|i| self.center - step * (self.len - 1) + 2 * step * i).collect()
    }

    /// Union is a longer string containing neither one.
    pub fn in_general_position(&self, o: &Self, step: i64) -> bool {
        let (a, b) = (self.points(step), o.points(step));
        let (a0, a1, b0, b1) = (a[0], *a.last().unwrap(), b[0], *b.last().unwrap());
        if (a0 - b0).rem_euclid(2 * step) != 0 {
            return true;
        }
        let contains = (a0 <= b0 && b1 <= a1) || (b0 <= a0 && a1 <= b1);
        let disjoint_gap = b0 > a1 + 2 * step || a0 > b1 + 2 * step;
        contains || disjoint_gap
    }
}

/// `X_k^{(a)} = prod_{i<k} Y_{a + step(k-2i-1)}`.
pub fn kr_top(k: i64, a: i64, step: i64) -> Sl2Monomial {
    Sl2Monomial::from_pairs((0..k).map(|i| (a + step * (k - 2 * i - 1), 1)))
}

/// Terms of `chi_q(W_k^{(a)})` together with the parameters `b` of the
/// lowering factors `A_b^{-1}` applied to the top term, in order.
pub fn kr_terms(k: i64, a: i64, step: i64) -> Vec<(Sl2Monomial, Vec<i64>)> {
    let top = kr_top(k, a, step);
    let mut out = Vec::with_capacity(k as usize + 1);
    let mut cur = top;
    let mut lowering = Vec::new();
    out.push((cur.clone(), lowering.clone()));
    for j in 0..k {
        let b = a + step * (k - 2 * j);
        cur = cur.mul(&Sl2Monomial::a(b, step).pow(-1));
        lowering.push(b);
        out.push((cur.clone(), lowering.clone()));
    }
    out
}

/// `chi_q(W_k^{(a)})` with unit step.
pub fn sl2_kr_character(k: i64, a: i64) -> Sl2Character {
    kr_terms(k, a, 1).into_iter().map(|(m, _)| (m, 1)).collect()
}

/// Decomposes a dominant monomial into strings in pairwise general position.
/// Greedy from the smallest point: each string is the longest chain upward.
pub fn string_decompose(m: &Sl2Monomial, step: i64) -> Result<Vec<Sl2String>> {
    if !m.is_dominant() {
        return Err(Error::NonDominantMonomial(m.to_string()));
    }
    let mut counts: BTreeMap<i64, i32> = m.pairs().iter().copied().collect();
    let mut out = Vec::new();
    while let Some((&b, _)) = counts.iter().next() {
        let mut len = 0;
        let mut s = b;
        while let Some(c) = counts.get_mut(&s) {
            *c -= 1;
            if *c == 0 {
                counts.remove(&s);
            }
            len += 1;
            s += 2 * step;
        }
        out.push(Sl2String { center: b + step * (len - 1), len });
    }
    out.sort();
    for (i, x) in out.iter().enumerate() {
        for y in &out[i + 1..] {
            if !x.in_general_position(y, step) {
                return Err(Error::Unknown(format!("strings {x:?} and {y:?} not in general position")));
            }
        }
    }
    Ok(out)
}

/// Unit-step [`string_decompose`].
pub fn sl2_string_decompose(m: &Sl2Monomial) -> Result<Vec<Sl2String>> {
    string_decompose(m, 1)
}

/// Lowering data of `chi_q(m)`: each term is `m * prod_b A_b^{-v_b}`,
/// returned as the map `b -> v_b` with its multiplicity.
pub fn character_lowerings(m: &Sl2Monomial, step: i64) -> Result<Vec<(BTreeMap<i64, i32>, i64)>> {
    let strings = string_decompose(m, step)?;
    let mut acc: BTreeMap<BTreeMap<i64, i32>, i64> = BTreeMap::from([(BTreeMap::new(), 1)]);
    for st in strings {
        let terms = kr_terms(st.len, st.center, step);
        let mut next: BTreeMap<BTreeMap<i64, i32>, i64> = BTreeMap::new();
        for (low, c) in &acc {
            for (_, add) in &terms {
                let mut l = low.clone();
                for b in add {
                    *l.entry(*b).or_default() += 1;
                }
                *next.entry(l).or_default() += c;
            }
        }
        acc = next;
    }
    Ok(acc.into_iter().collect())
}

/// `chi_q(m)` for a dominant monomial with the given step.
pub fn character(m: &Sl2Monomial, step: i64) -> Result<Sl2Character> {
    let mut out = Sl2Character::new();
    for (low, c) in character_lowerings(m, step)? {
        let x = low.iter().fold(m.clone(), |acc, (&b, &v)| acc.mul(&Sl2Monomial::a(b, step).pow(-v)));
        *out.entry(x).or_default() += c;
    }
    out.retain(|_, c| *c != 0);
    Ok(out)
}

/// Unit-step [`character`].
pub fn sl2_character(m: &Sl2Monomial) -> Result<Sl2Character> {
    character(m, 1)
}
