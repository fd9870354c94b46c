//! Truncation certificates for the special modules of the extended T-systems.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fm::truncation::{IndexSet, TruncationCertificate};
use crate::monomial::LMonomial;

/// The fourteen tabulated certificate rows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Table1Row {
    T10m,
    Tt10m,
    T0k1,
    T0k2,
    S1l,
    Rk2ll,
    Rk2l1l,
    Rk2l2l,
    R02ll,
    R02l1l,
    R02l2l,
    Ukl,
    V1l,
    P0l,
}

impl Table1Row {
    pub const ALL: [Table1Row; 14] = [
        Table1Row::T10m,
        Table1Row::Tt10m,
        Table1Row::T0k1,
        Table1Row::T0k2,
        Table1Row::S1l,
        Table1Row::Rk2ll,
        Table1Row::Rk2l1l,
        Table1Row::Rk2l2l,
        Table1Row::R02ll,
        Table1Row::R02l1l,
        Table1Row::R02l2l,
        Table1Row::Ukl,
        Table1Row::V1l,
        Table1Row::P0l,
    ];

    /// Number of integer parameters the row takes.
    pub fn arity(&self) -> usize {
        match self {
            Table1Row::Rk2ll | Table1Row::Rk2l1l | Table1Row::Rk2l2l | Table1Row::Ukl => 2,
            _ => 1,
        }
    }

    /// Whether `params` lie in the row's range: the U, V and P rows need
    /// `l >= 1`, since for `l = 0` their monomials leave the index set.
    pub fn in_range(&self, params: &[i64]) -> bool {
        params.len() == self.arity()
            && params.iter().all(|&p| p >= 0)
            && !(matches!(self, Table1Row::Ukl | Table1Row::V1l | Table1Row::P0l) && params[params.len() - 1] == 0)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Table1Row::T10m => "T_1_0_m",
            Table1Row::Tt10m => "Tt_1_0_m",
            Table1Row::T0k1 => "T_0_k_1",
            Table1Row::T0k2 => "T_0_k_2",
            Table1Row::S1l => "S_1_l",
            Table1Row::Rk2ll => "R_k_2l_l",
            Table1Row::Rk2l1l => "R_k_2l+1_l",
            Table1Row::Rk2l2l => "R_k_2l+2_l",
            Table1Row::R02ll => "R_0_2l_l",
            Table1Row::R02l1l => "R_0_2l+1_l",
            Table1Row::R02l2l => "R_0_2l+2_l",
            Table1Row::Ukl => "U_k_l",
            Table1Row::V1l => "V_1_l",
            Table1Row::P0l => "P_0_l",
        }
    }
}

impl fmt::Display for Table1Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Table1Row {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Table1Row::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Unknown(format!("certificate row `{s}`")))
    }
}

fn y(i: u8, s: i64) -> LMonomial {
    LMonomial::y(i, s)
}

fn ainv(i: u8, s: i64) -> LMonomial {
    LMonomial::a(i, s).inv()
}

/// `prod_{j in range} f(j)`.
fn prod<I: IntoIterator<Item = i64>, F: Fn(i64) -> LMonomial>(range: I, f: F) -> LMonomial {
    range.into_iter().fold(LMonomial::one(), |acc, j| acc.mul(&f(j)))
}

/// Follows a chain `m_{k+1} = m_{parent} * step`, returning all of `m_0, m_1, ...`.
fn chain(m0: LMonomial, steps: &[(usize, LMonomial)]) -> Vec<LMonomial> {
    let mut out = vec![m0];
    for (parent, step) in steps {
        let next = out[*parent].mul(step);
        out.push(next);
    }
    out
}

fn dedup(v: Vec<LMonomial>) -> Vec<LMonomial> {
    let mut seen = rustc_hash::FxHashSet::default();
    v.into_iter().filter(|m| seen.insert(m.clone())).collect()
}

/// Builds the certificate of a row. `params` are `[m]`, `[k]`, `[l]` or `[k, l]`
/// in the order the row names them. Unless `strict_paper` is set, the bound of
/// `U` is lowered by one for the rows `T_0_k_2`, `R_k_2l+1_l`, `R_k_2l+2_l`,
/// `R_0_2l+1_l`, `R_0_2l+2_l` and `U_k_l`, whose printed bound admits a lowering
/// of `m_+` outside `M`.
pub fn table1_certificate(row: Table1Row, params: &[i64], strict_paper: bool) -> Result<TruncationCertificate> {
    if params.len() != row.arity() || params.iter().any(|&p| p < 0) {
        return Err(Error::InvalidLabel(format!("row {row} takes {} nonnegative parameters, got {params:?}", row.arity())));
    }
    let p0 = params[0];
    let lowered = !strict_paper
        && matches!(
            row,
            Table1Row::T0k2 | Table1Row::Rk2l1l | Table1Row::Rk2l2l | Table1Row::R02l1l | Table1Row::R02l2l | Table1Row::Ukl
        );
    let cert = |m_plus: LMonomial, bound: i64, m: Vec<LMonomial>| TruncationCertificate {
        m_plus,
        u: IndexSet::at_most(if lowered { bound - 1 } else { bound }),
        m: dedup(m),
    };
    Ok(match row {
        Table1Row::T10m => {
            let m = p0;
            let mp = y(3, 0).mul(&prod(0..m, |j| y(1, 2 * j + 6)));
            let ms = chain(
                mp.clone(),
                &[(0, ainv(3, 2)), (1, ainv(2, 4)), (2, ainv(2, 2)), (3, ainv(3, 4))],
            );
            cert(mp, 2 * m + 4, ms)
        }
        Table1Row::Tt10m => {
            let m = p0;
            let mp = y(1, 0).mul(&prod(0..m, |j| y(3, 4 * j + 6)));
            let ms = chain(mp.clone(), &[(0, ainv(1, 1)), (1, ainv(2, 2))]);
            cert(mp, 4 * m + 2, ms)
        }
        Table1Row::T0k1 => {
            let k = p0;
            let mp = prod(0..k, |j| y(2, 2 * j + 1)).mul(&y(1, 2 * k + 2));
            let ms = (0..=k).map(|s| mp.mul(&prod(0..s, |j| ainv(2, 2 * (k - j))))).collect();
            cert(mp, 2 * k + 2, ms)
        }
        Table1Row::T0k2 => {
            let k = p0;
            let mp = prod(0..k, |j| y(2, 2 * j + 1)).mul(&y(1, 2 * k + 2)).mul(&y(1, 2 * k + 4));
            let mut ms = Vec::new();
            for s in 0..=k {
                let msv = mp.mul(&prod(1..=s, |j| ainv(2, 2 * (k - j + 1))));
                ms.push(msv.clone());
                for t1 in 0..=(s + 1) / 2 {
                    for t2 in 0..=s / 2 {
                        if t1 == 0 && t2 == 0 {
                            continue;
                        }
                        let x = prod(1..=t1, |j| ainv(3, 2 * k - 4 * j + 6)).mul(&prod(1..=t2, |j| ainv(3, 2 * k - 4 * j + 4)));
                        ms.push(msv.mul(&x));
                    }
                }
            }
            cert(mp, 2 * k + 4, ms)
        }
        Table1Row::S1l => {
            let l = p0;
            let mp = y(2, 0).mul(&prod(0..l, |j| y(2, 2 * j + 6)));
            let ms = chain(
                mp.clone(),
                &[(0, ainv(2, 2)), (1, ainv(1, 2)), (1, ainv(3, 3)), (3, ainv(1, 2))],
            );
            cert(mp, 2 * l + 4, ms)
        }
        Table1Row::Rk2ll | Table1Row::Rk2l1l | Table1Row::Rk2l2l => {
            let (k, l) = (params[0], params[1]);
            let (ones, bound) = match row {
                Table1Row::Rk2ll => (2 * l, 2 * k + 4 * l - 1),
                Table1Row::Rk2l1l => (2 * l + 1, 2 * k + 4 * l + 1),
                _ => (2 * l + 2, 2 * k + 4 * l + 3),
            };
            let mp = prod(0..k, |j| y(2, 2 * j))
                .mul(&prod(0..ones, |j| y(1, 2 * k + 2 * j + 1)))
                .mul(&prod(0..l, |j| y(3, 2 * k + 4 * j + 3)));
            let mut ms = Vec::new();
            for s in 0..=k {
                let msv = mp.mul(&prod(1..=s, |j| ainv(2, 2 * (k - j) + 1)));
                ms.push(msv.clone());
                if row == Table1Row::Rk2l2l {
                    for t1 in 0..=(s + 1) / 2 + l {
                        for t2 in 0..=s / 2 {
                            if t1 == 0 && t2 == 0 {
                                continue;
                            }
                            let x = prod(1..=t1, |j| ainv(3, 2 * k + 4 * l - 4 * j + 5))
                                .mul(&prod(1..=t2, |j| ainv(3, 2 * k + 4 * l - 4 * j - 1)));
                            ms.push(msv.mul(&x));
                        }
                    }
                }
            }
            cert(mp, bound, ms)
        }
        Table1Row::R02ll | Table1Row::R02l1l | Table1Row::R02l2l => {
            let l = p0;
            let (ones, bound) = match row {
                Table1Row::R02ll => (2 * l, 4 * l - 1),
                Table1Row::R02l1l => (2 * l + 1, 4 * l + 1),
                _ => (2 * l + 2, 4 * l + 3),
            };
            let mp = prod(0..ones, |j| y(1, 2 * j + 1)).mul(&prod(0..l, |j| y(3, 4 * j + 3)));
            let ms = if row == Table1Row::R02l2l {
                (0..=l).map(|j| mp.mul(&prod(0..j, |t| ainv(3, 4 * l - 4 * t + 1)))).collect()
            } else {
                vec![mp.clone()]
            };
            cert(mp, bound, ms)
        }
        Table1Row::Ukl => {
            let (k, l) = (params[0], params[1]);
            let mp = prod(0..k, |j| y(2, 2 * j)).mul(&prod(0..l, |j| y(3, 2 * k + 2 * j + 1)));
            let mut ms = Vec::new();
            for s in 0..=k {
                let msv = mp.mul(&prod(1..=s, |j| ainv(2, 2 * (k - j) + 1)));
                ms.push(msv.clone());
                for t in 1..=s {
                    ms.push(msv.mul(&prod(0..t, |j| ainv(1, 2 * (k - j)))));
                }
            }
            cert(mp, 2 * k + 2 * l - 1, ms)
        }
        Table1Row::V1l => {
            let l = p0;
            let mp = y(3, 0).mul(&prod(0..l, |j| y(3, 4 * j + 6)));
            let ms = chain(
                mp.clone(),
                &[
                    (0, ainv(3, 2)),
                    (1, ainv(2, 4)),
                    (2, ainv(2, 2)),
                    (2, ainv(1, 5)),
                    (4, ainv(2, 2)),
                    (5, ainv(1, 3)),
                ],
            );
            cert(mp, 4 * l + 2, ms)
        }
        Table1Row::P0l => {
            let l = p0;
            let mp = y(2, 1).mul(&prod(0..l, |j| y(3, 4 * j + 6)));
            let ms = chain(mp.clone(), &[(0, ainv(2, 2)), (1, ainv(1, 3))]);
            cert(mp, 4 * l + 2, ms)
        }
    })
}

/// Certificate for `T_{k,l,0}^{(0)}`: `U = I x {s <= 4k+2l-1}` and
/// `M = {m_+ prod_{j<s} A_{3,4k-4j-2}^{-1}}` with `0 <= s <= k-1` as printed,
/// or `0 <= s <= k` when `complete` is set.
pub fn tkl0_certificate(k: i64, l: i64, complete: bool) -> TruncationCertificate {
    let mp = prod(0..k, |j| y(3, 4 * j)).mul(&prod(0..l, |j| y(2, 4 * k + 2 * j + 1)));
    let top = if complete { k } else { k - 1 };
    let ms = (0..=top).map(|s| mp.mul(&prod(0..s, |j| ainv(3, 4 * k - 4 * j - 2)))).collect();
    TruncationCertificate { m_plus: mp, u: IndexSet::at_most(4 * k + 2 * l - 1), m: dedup(ms) }
}
