//! Exact division of a signed sum of products by a character, with the
//! products streamed in decreasing term order instead of expanded.
//!
//! Each product `A * B` is merged from the rows `a * B` (`B` sorted), so only
//! one pending monomial per row is held at a time. The quotient is subtracted
//! the same way: every quotient term `t` contributes the row `t * den`.

use std::cmp::Ordering;

use super::bounds::ExponentBox;
use super::QCharacter;
use crate::error::{Error, Result};
use crate::monomial::LMonomial;

/// Terms sorted by decreasing term order.
fn sorted(x: &QCharacter) -> Vec<(LMonomial, i64)> {
    x.sorted_terms()
}

/// Max-heap of row ids ordered by the rows' current monomials.
struct RowHeap {
    ids: Vec<u32>,
}

impl RowHeap {
    fn less(cur: &[LMonomial], a: u32, b: u32) -> bool {
        cur[a as usize].term_cmp(&cur[b as usize]) == Ordering::Less
    }

    fn push(&mut self, cur: &[LMonomial], id: u32) {
        let mut k = self.ids.len();
        self.ids.push(id);
        while k > 0 {
            let p = (k - 1) / 2;
            if !Self::less(cur, self.ids[p], id) {
                break;
            }
            self.ids[k] = self.ids[p];
            k = p;
        }
        self.ids[k] = id;
    }

    fn top(&self) -> Option<u32> {
        self.ids.first().copied()
    }

    /// Restores the heap after the top row's monomial decreased.
    fn sift_top(&mut self, cur: &[LMonomial]) {
        let n = self.ids.len();
        let Some(&top) = self.ids.first() else { return };
        let mut k = 0;
        loop {
            let mut c = 2 * k + 1;
            if c >= n {
                break;
            }
            if c + 1 < n && Self::less(cur, self.ids[c], self.ids[c + 1]) {
                c += 1;
            }
            if !Self::less(cur, top, self.ids[c]) {
                break;
            }
            self.ids[k] = self.ids[c];
            k = c;
        }
        self.ids[k] = top;
    }

    fn remove_top(&mut self, cur: &[LMonomial]) {
        let last = self.ids.pop().expect("nonempty heap");
        if !self.ids.is_empty() {
            self.ids[0] = last;
            self.sift_top(cur);
        }
    }
}

struct Stream {
    sign: i64,
    left: Vec<(LMonomial, i64)>,
    right: Vec<(LMonomial, i64)>,
}

/// A row `a * (b_0, b_1, ...)` with its current position.
struct Row {
    /// Stream index, or `None` for a quotient row.
    stream: Option<usize>,
    left: usize,
    right: usize,
}

/// `(sum_j sign_j prod(factors_j)) / den`, failing unless the division is exact.
/// Products with more than two factors have all but their largest factor
/// expanded first. `max_terms` bounds the quotient and `max_work` the number
/// of monomial products formed.
pub fn divide_sum_of_products(
    num: &[(i64, Vec<&QCharacter>)],
    den: &QCharacter,
    max_terms: usize,
    max_work: u64,
) -> Result<QCharacter> {
    let dterms = sorted(den);
    let Some((dlead, dcoef)) = dterms.first().cloned() else {
        return Err(Error::NotDivisible("division by zero".into()));
    };
    let mut streams = Vec::new();
    let mut work: u64 = 0;
    let mut floor: Option<LMonomial> = None;
    let mut nbox: Option<ExponentBox> = None;
    for (sign, factors) in num {
        if factors.iter().any(|x| x.is_zero()) {
            continue;
        }
        let big = (0..factors.len()).max_by_key(|&k| factors[k].len());
        let (left, right) = match big {
            None => (vec![(LMonomial::one(), 1)], vec![(LMonomial::one(), 1)]),
            Some(b) => {
                let rest = QCharacter::product(factors.iter().enumerate().filter(|&(k, _)| k != b).map(|(_, x)| *x));
                (sorted(&rest), sorted(factors[b]))
            }
        };
        let low = left.last().unwrap().0.mul(&right.last().unwrap().0);
        if floor.as_ref().map_or(true, |f| low.term_cmp(f) == Ordering::Less) {
            floor = Some(low);
        }
        let b = ExponentBox::of_character(&QCharacter::from_terms(left.iter().cloned()))
            .sum(&ExponentBox::of_character(&QCharacter::from_terms(right.iter().cloned())));
        nbox = Some(match nbox {
            None => b,
            Some(x) => x.hull(&b),
        });
        work += (left.len() as u64) * (right.len() as u64);
        streams.push(Stream { sign: *sign, left, right });
    }
    if work > max_work {
        return Err(Error::WorkCap(work, max_work));
    }
    let Some(floor) = floor else { return Ok(QCharacter::zero()) };
    // Every quotient term lies above lowest(num) / lowest(den).
    let floor = floor.div(&dterms.last().unwrap().0);
    let qbox = nbox
        .unwrap()
        .quotient(&ExponentBox::of_character(den))
        .ok_or_else(|| Error::NotDivisible("exponent ranges are incompatible".into()))?;

    let mut rows: Vec<Row> = Vec::new();
    let mut cur: Vec<LMonomial> = Vec::new();
    let mut heap = RowHeap { ids: Vec::new() };
    for (k, st) in streams.iter().enumerate() {
        for a in 0..st.left.len() {
            rows.push(Row { stream: Some(k), left: a, right: 0 });
            cur.push(st.left[a].0.mul(&st.right[0].0));
            heap.push(&cur, (rows.len() - 1) as u32);
        }
    }
    let mut quot: Vec<(LMonomial, i64)> = Vec::new();
    let coef = |row: &Row, quot: &[(LMonomial, i64)]| -> i64 {
        match row.stream {
            Some(k) => {
                let st = &streams[k];
                st.sign.checked_mul(st.left[row.left].1 * st.right[row.right].1).expect("multiplicity overflow")
            }
            None => -quot[row.left].1 * dterms[row.right].1,
        }
    };
    // Moves a popped row to its next monomial, if any.
    let advance = |id: u32, rows: &mut [Row], cur: &mut [LMonomial], quot: &[(LMonomial, i64)]| -> bool {
        let row = &mut rows[id as usize];
        row.right += 1;
        let (a, b) = match row.stream {
            Some(k) => {
                let st = &streams[k];
                let Some(b) = st.right.get(row.right) else { return false };
                (&st.left[row.left].0, &b.0)
            }
            None => {
                let Some(b) = dterms.get(row.right) else { return false };
                (&quot[row.left].0, &b.0)
            }
        };
        cur[id as usize] = a.mul(b);
        true
    };
    let mut mono = LMonomial::one();
    let step = |id: u32, heap: &mut RowHeap, rows: &mut [Row], cur: &mut [LMonomial], quot: &[(LMonomial, i64)]| {
        if advance(id, rows, cur, quot) {
            heap.sift_top(cur);
        } else {
            heap.remove_top(cur);
        }
    };
    while let Some(id) = heap.top() {
        std::mem::swap(&mut mono, &mut cur[id as usize]);
        let mut c = coef(&rows[id as usize], &quot);
        step(id, &mut heap, &mut rows, &mut cur, &quot);
        while let Some(id) = heap.top().filter(|&id| cur[id as usize] == mono) {
            c = c.checked_add(coef(&rows[id as usize], &quot)).expect("multiplicity overflow");
            step(id, &mut heap, &mut rows, &mut cur, &quot);
        }
        if c == 0 {
            continue;
        }
        if c % dcoef != 0 {
            return Err(Error::NotDivisible(format!("coefficient {c} at {mono} not divisible by {dcoef}")));
        }
        let t = mono.div(&dlead);
        if t.term_cmp(&floor) == Ordering::Less || !qbox.contains(&t) {
            return Err(Error::NotDivisible(format!("remainder term {mono} outside the quotient bounds")));
        }
        quot.push((t, c / dcoef));
        if quot.len() > max_terms {
            return Err(Error::TermCap(quot.len(), max_terms));
        }
        if dterms.len() > 1 {
            let q = quot.len() - 1;
            rows.push(Row { stream: None, left: q, right: 1 });
            cur.push(quot[q].0.mul(&dterms[1].0));
            heap.push(&cur, (rows.len() - 1) as u32);
        }
    }
    Ok(QCharacter::from_terms(quot))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch(s: &[(&str, i64)]) -> QCharacter {
        QCharacter::from_terms(s.iter().map(|(m, c)| (m.parse().unwrap(), *c)))
    }

    #[test]
    fn matches_expanded_division() {
        let a = ch(&[("1_0", 1), ("1_2^-1 2_1", 1), ("2_3^-1 3_2", 1)]);
        let b = ch(&[("2_0", 2), ("2_2^-1 1_1", 1)]);
        let d = ch(&[("3_0", 1), ("3_4^-1", 1), ("2_1 2_3^-1", -1)]);
        let extra = ch(&[("1_5", 3)]);
        let num = a.mul(&b).mul(&d).add(&extra.mul(&d));
        let q = divide_sum_of_products(&[(1, vec![&a, &b, &d]), (1, vec![&extra, &d])], &d, 1000, 1 << 20).unwrap();
        assert_eq!(q, num.exact_divide(&d, 1000).unwrap());
        let q2 = divide_sum_of_products(&[(1, vec![&a, &b, &d]), (-1, vec![&a, &b, &d])], &d, 1000, 1 << 20).unwrap();
        assert!(q2.is_zero());
    }

    #[test]
    fn detects_remainder_and_caps() {
        let a = ch(&[("1_0", 1), ("1_2^-1", 1)]);
        let d = ch(&[("2_0", 1), ("2_2^-1", 1)]);
        assert!(matches!(divide_sum_of_products(&[(1, vec![&a])], &d, 100, 100), Err(Error::NotDivisible(_))));
        assert!(matches!(divide_sum_of_products(&[(1, vec![&a, &a])], &d, 100, 3), Err(Error::WorkCap(4, 3))));
    }
}
