//! Predicted chains of dominant monomials in the products `chi(L) chi(R)`.
//!
//! Each case describes the left side of one relation as a product of two
//! labels together with the chain `M_0 > M_1 > ... > M_N` of its dominant
//! monomials, each obtained from the previous one by dividing by root monomials.

use std::fmt;

use super::label::{highest_monomial, Family, ModuleLabel};
use crate::error::{Error, Result};
use crate::monomial::LMonomial;

/// Number of chain cases.
pub const CASE_COUNT: u8 = 13;

/// One step `M_j = M_{j-1} prod A_{i,s}^{-1}`, as a list of `(i, s)`.
pub type ChainStep = Vec<(u8, i64)>;

/// A predicted chain for one case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominantChain {
    pub case: u8,
    pub params: Vec<i64>,
    pub shift: i64,
    /// The two factors of the product.
    pub factors: [ModuleLabel; 2],
    pub steps: Vec<ChainStep>,
    /// `M_0, ..., M_N`.
    pub monomials: Vec<LMonomial>,
}

impl fmt::Display for DominantChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case ({}) {:?} s={}: [{}][{}]", self.case, self.params, self.shift, self.factors[0], self.factors[1])
    }
}

/// Parameter names and lower bounds for a case.
pub fn case_parameters(case: u8) -> &'static [(&'static str, i64)] {
    match case {
        2 | 5 => &[("k", 1), ("m", 1)],
        4 => &[("l", 1), ("r", 1)],
        10 => &[("p", 2), ("l", 1)],
        _ => &[("k", 1), ("l", 1)],
    }
}

/// All parameter tuples of a case with every entry at most `max`.
pub fn case_grid(case: u8, max: i64) -> Vec<Vec<i64>> {
    let ps = case_parameters(case);
    let mut out = vec![vec![]];
    for (idx, (_, lo)) in ps.iter().enumerate() {
        let hi = if case == 4 && idx == 1 { max.min(2) } else { max };
        out = out
            .iter()
            .flat_map(|pre| {
                (*lo..=hi).map(move |v| {
                    let mut p = pre.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

fn run(node: u8, start: i64, step: i64, count: i64) -> Vec<ChainStep> {
    (0..count.max(0)).map(|j| vec![(node, start + step * j)]).collect()
}

fn lab(family: Family, params: &[i64], shift: i64) -> ModuleLabel {
    ModuleLabel::new(family, params, shift).expect("arity")
}

fn sigma(x: i64) -> i64 {
    x.rem_euclid(2)
}

/// The chain of case `case` with the given parameters and shift. With
/// `strict_paper` the misprinted chains are reproduced as printed.
pub fn dominant_chain(case: u8, params: &[i64], s: i64, strict_paper: bool) -> Result<DominantChain> {
    let fix = i64::from(!strict_paper);
    let ps = case_parameters(case);
    if !(1..=CASE_COUNT).contains(&case) || params.len() != 2 {
        return Err(Error::InvalidLabel(format!("no chain case ({case}) with {} parameters", params.len())));
    }
    if ps.iter().zip(params).any(|((_, lo), v)| v < lo) || (case == 4 && params[1] > 2) {
        return Err(Error::InvalidLabel(format!("parameters {params:?} out of range for case ({case})")));
    }
    let (a, b) = (params[0], params[1]);
    let mut steps: Vec<ChainStep> = Vec::new();
    let factors = match case {
        1 => {
            let (k, l) = (a, b);
            steps.extend(run(2, s + 4 * k + 2 * l - 2, -2, l - 1));
            steps.push(vec![(3, s + 4 * k - 2), (2, s + 4 * k)]);
            steps.extend(run(3, s + 4 * k - 6, -4, k - 1));
            [lab(Family::T, &[k, l - 1, 0], s), lab(Family::T, &[k - 1, l, 0], s + 4)]
        }
        2 => {
            let (k, m) = (a, b);
            steps.extend(run(1, s + 4 * k + 2 * m - 1, -2, m - 1));
            steps.push(vec![(3, s + 4 * k - 2), (2, s + 4 * k), (1, s + 4 * k + 1)]);
            steps.extend(run(3, s + 4 * k - 6, -4, k - 1));
            [lab(Family::T, &[k, 0, m - 1], s), lab(Family::T, &[k - 1, 0, m], s + 4)]
        }
        3 => {
            let (k, l) = (a, b);
            steps.extend(run(2, s + 2 * k + 2 * l + 1, -2, l - 1));
            steps.push(vec![(2, s + 2 * k - 1), (3, s + 2 * k + 1), (2, s + 2 * k + 3)]);
            steps.extend(run(2, s + 2 * k - 3, -2, k - 1));
            [lab(Family::S, &[k, l - 1], s), lab(Family::S, &[k - 1, l], s + 2)]
        }
        4 => {
            let (l, r) = (a, b);
            steps.extend(run(1, s + 2 * l + 2 * r - 2 + fix, -2, r - 1));
            steps.push(vec![(2, s + 2 * l), (1, s + 2 * l + 1)]);
            steps.extend(run(2, s + 2 * l - 2, -2, l - 1));
            [lab(Family::T, &[0, l, r - 1], s), lab(Family::T, &[0, l - 1, r], s + 2)]
        }
        5 => {
            let (k, m) = (a, b);
            steps.extend(run(3, s + 2 * k + 4 * m - 2, -4, m - 1));
            steps.push(vec![(1, s + 2 * k - 1), (2, s + 2 * k), (3, s + 2 * k + 2)]);
            steps.extend(run(1, s + 2 * k - 3, -2, k - 1));
            [lab(Family::Ttilde, &[k, 0, m - 1], s), lab(Family::Ttilde, &[k - 1, 0, m], s + 2)]
        }
        6 => {
            let (k, l) = (a, b);
            steps.extend(run(3, s + 2 * k + 4 * l - 3, -4, l - 1));
            steps.push(vec![(2, s + 2 * k - 1), (3, s + 2 * k + 1)]);
            steps.extend(run(2, s + 2 * k - 3, -2, k - 1));
            [lab(Family::R, &[k, 2 * l, l - 1], s), lab(Family::R, &[k - 1, 2 * l, l], s + 2)]
        }
        7 => {
            let (k, l) = (a, b);
            steps.extend(run(1, s + 2 * k + 4 * l, -2, 2 * l));
            steps.push(vec![(2, s + 2 * k - 1), (1, s + 2 * k)]);
            steps.extend(run(2, s + 2 * k - 3, -2, k - 1));
            [lab(Family::R, &[k, 2 * l, l], s), lab(Family::R, &[k - 1, 2 * l + 1, l], s + 2)]
        }
        8 => {
            let (k, l) = (a, b);
            steps.extend(run(1, s + 2 * k + 4 * l + 2, -2, 2 * l + 1));
            steps.push(vec![(2, s + 2 * k - 1), (1, s + 2 * k)]);
            steps.extend(run(2, s + 2 * k - 3, -2, k - 1));
            [lab(Family::R, &[k, 2 * l + 1, l], s), lab(Family::R, &[k - 1, 2 * l + 2, l], s + 2)]
        }
        9 => {
            let (k, l) = (a, b);
            steps.extend(run(2, s + 2 * k + 2 * l - 2, -2, l - 1));
            steps.push(vec![(1, s + 2 * k - 1), (2, s + 2 * k)]);
            steps.extend(run(1, s + 2 * k - 3, -2, k - 1));
            [lab(Family::Ttilde, &[k, l - 1, 0], s), lab(Family::Ttilde, &[k - 1, l, 0], s + 2)]
        }
        10 => {
            let (p, l) = (a, b);
            let c = (l - 1).div_euclid(2);
            steps.extend(run(3, s + 2 * p + 2 * l - 3, -4, c));
            debug_assert!(c == 0 || steps.last() == Some(&vec![(3, s + 2 * p + 2 * sigma(l + 1) + 3)]));
            if strict_paper || sigma(l) == 0 {
                steps.push(vec![(2, s + 2 * p - 1), (3, s + 2 * p + 1)]);
                steps.extend(run(2, s + 2 * p - 3, -2, p - 1));
            } else {
                steps.push(vec![(2, s + 2 * p - 3), (2, s + 2 * p - 1), (3, s + 2 * p - 1)]);
                steps.extend(run(2, s + 2 * p - 5, -2, p - 2));
            }
            [lab(Family::U, &[p, l - 1], s), lab(Family::U, &[p - 1, l], s + 2)]
        }
        11 => {
            let (k, l) = (a, b);
            steps.extend(run(3, s + 4 * k + 4 * l - 4, -4, l - 1));
            steps.push(vec![(3, s + 4 * k - 2), (2, s + 4 * k), (2, s + 4 * k - 2), (3, s + 4 * k)]);
            steps.extend(run(3, s + 4 * k - 6, -4, k - 1));
            [lab(Family::V, &[k, l - 1], s), lab(Family::V, &[k - 1, l], s + 4)]
        }
        12 => {
            let (k, l) = (a, b);
            steps.extend(run(3, s + 4 * k + 4 * l, -4, l - 1));
            steps.push(vec![(2, s + 4 * k + 2), (3, s + 4 * k + 4)]);
            steps.push(vec![(3, s + 4 * k - 2), (2, s + 4 * k)]);
            steps.extend(run(3, s + 4 * k - 6, -4, k - 1));
            [lab(Family::P, &[k, l - 1], s), lab(Family::P, &[k - 1, l], s + 4)]
        }
        _ => {
            let (k, l) = (a, b);
            steps.extend(run(2, s + 2 * k + 2 * l + 4 - fix, -2, l - 1));
            steps.push(vec![(1, s + 2 * k + 4), (2, s + 2 * k + 5)]);
            steps.push(vec![(1, s + 2 * k + 2)]);
            steps.push(vec![(2, s + 2 * k - 1), (1, s + 2 * k)]);
            steps.extend(run(2, s + 2 * k - 3, -2, k - 1));
            [lab(Family::O, &[k, l - 1], s), lab(Family::O, &[k - 1, l], s + 2)]
        }
    };
    let mut m = highest_monomial(&factors[0])?.mul(&highest_monomial(&factors[1])?);
    let mut monomials = vec![m.clone()];
    for st in &steps {
        for &(i, t) in st {
            m = m.div(&LMonomial::a(i, t));
        }
        monomials.push(m.clone());
    }
    Ok(DominantChain { case, params: params.to_vec(), shift: s, factors, steps, monomials })
}
