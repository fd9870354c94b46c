//! Labels of the monomial families and their highest monomials.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::LMonomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    T,
    Ttilde,
    S,
    R,
    U,
    V,
    P,
    O,
    Tbar,
    Ttildebar,
    Sbar,
    Rbar,
    Ubar,
    Vbar,
    Pbar,
    Obar,
    Zero,
    One,
}

impl Family {
    pub const ALL: [Family; 18] = [
        Family::T,
        Family::Ttilde,
        Family::S,
        Family::R,
        Family::U,
        Family::V,
        Family::P,
        Family::O,
        Family::Tbar,
        Family::Ttildebar,
        Family::Sbar,
        Family::Rbar,
        Family::Ubar,
        Family::Vbar,
        Family::Pbar,
        Family::Obar,
        Family::Zero,
        Family::One,
    ];

    pub fn arity(self) -> usize {
        use Family::*;
        match self {
            T | Ttilde | R | Tbar | Ttildebar | Rbar => 3,
            S | U | V | P | O | Sbar | Ubar | Vbar | Pbar | Obar => 2,
            Zero | One => 0,
        }
    }

    pub fn is_barred(self) -> bool {
        use Family::*;
        matches!(self, Tbar | Ttildebar | Sbar | Rbar | Ubar | Vbar | Pbar | Obar)
    }

    /// The barred family for an unbarred one and vice versa.
    pub fn bar(self) -> Family {
        use Family::*;
        match self {
            T => Tbar,
            Ttilde => Ttildebar,
            S => Sbar,
            R => Rbar,
            U => Ubar,
            V => Vbar,
            P => Pbar,
            O => Obar,
            Tbar => T,
            Ttildebar => Ttilde,
            Sbar => S,
            Rbar => R,
            Ubar => U,
            Vbar => V,
            Pbar => P,
            Obar => O,
            Zero => Zero,
            One => One,
        }
    }

    pub fn name(self) -> &'static str {
        use Family::*;
        match self {
            T => "T",
            Ttilde => "Ttilde",
            S => "S",
            R => "R",
            U => "U",
            V => "V",
            P => "P",
            O => "O",
            Tbar => "Tbar",
            Ttildebar => "Ttildebar",
            Sbar => "Sbar",
            Rbar => "Rbar",
            Ubar => "Ubar",
            Vbar => "Vbar",
            Pbar => "Pbar",
            Obar => "Obar",
            Zero => "Zero",
            One => "One",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Family::ALL
            .iter()
            .copied()
            .find(|f| f.name().eq_ignore_ascii_case(t))
            .or_else(|| match t {
                "Tt" | "tt" => Some(Family::Ttilde),
                "Ttbar" | "ttbar" => Some(Family::Ttildebar),
                "0" => Some(Family::Zero),
                "1" => Some(Family::One),
                _ => None,
            })
            .ok_or_else(|| Error::InvalidLabel(format!("unknown family {t:?}")))
    }
}

/// A family, its parameters and the shift `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModuleLabel {
    pub family: Family,
    pub params: Vec<i64>,
    pub shift: i64,
}

impl ModuleLabel {
    pub fn new(family: Family, params: &[i64], shift: i64) -> Result<Self> {
        if params.len() != family.arity() {
            return Err(Error::InvalidLabel(format!(
                "{family} takes {} parameters, got {}",
                family.arity(),
                params.len()
            )));
        }
        Ok(ModuleLabel { family, params: params.to_vec(), shift })
    }

    /// Constructor for internal use with statically correct arity.
    pub(crate) fn mk(family: Family, params: &[i64], shift: i64) -> Self {
        debug_assert_eq!(params.len(), family.arity());
        ModuleLabel { family, params: params.to_vec(), shift }
    }

    pub fn zero() -> Self {
        Self::mk(Family::Zero, &[], 0)
    }

    pub fn one() -> Self {
        Self::mk(Family::One, &[], 0)
    }

    pub fn t(k: i64, l: i64, m: i64, s: i64) -> Self {
        Self::mk(Family::T, &[k, l, m], s)
    }

    pub fn is_zero(&self) -> bool {
        self.family == Family::Zero || self.params.iter().any(|&p| p < 0)
    }

    /// The same family and parameters with the shift replaced.
    pub fn with_shift(&self, s: i64) -> Self {
        ModuleLabel { shift: s, ..self.clone() }
    }

    /// The label obtained by barring every factor of the highest monomial.
    pub fn bar(&self) -> Self {
        ModuleLabel { family: self.family.bar(), ..self.clone() }
    }

    /// Spectral translation taking the `s = 0` member to this one.
    pub fn spectral_offset(&self) -> i64 {
        if self.family.is_barred() {
            -self.shift
        } else {
            self.shift
        }
    }

    /// File stem used by the character cache, e.g. `T_k1_l0_m1`.
    pub fn file_stem(&self) -> String {
        let names: &[&str] = match self.family.arity() {
            3 => &["k", "l", "m"],
            2 => &["k", "l"],
            _ => &[],
        };
        let mut out = self.family.name().to_string();
        for (n, p) in names.iter().zip(&self.params) {
            out.push_str(&format!("_{n}{p}"));
        }
        out
    }
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Zero | Family::One => write!(f, "{}", self.family),
            fam => {
                let ps: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
                write!(f, "{fam}^({})_{{{}}}", self.shift, ps.join(","))
            }
        }
    }
}

fn push_string(out: &mut Vec<(i64, i64, i64)>, node: i64, start: i64, step: i64, len: i64) {
    for i in 0..len.max(0) {
        out.push((node, start + step * i, 1));
    }
}

fn unbarred_factors(family: Family, p: &[i64], s: i64) -> Vec<(i64, i64, i64)> {
    use Family::*;
    let mut v = Vec::new();
    match family {
        T => {
            let (k, l, m) = (p[0], p[1], p[2]);
            push_string(&mut v, 3, s, 4, k);
            push_string(&mut v, 2, s + 4 * k + 1, 2, l);
            push_string(&mut v, 1, s + 4 * k + 2 * l + 2, 2, m);
        }
        Ttilde => {
            let (k, l, m) = (p[0], p[1], p[2]);
            push_string(&mut v, 1, s, 2, k);
            push_string(&mut v, 2, s + 2 * k + 1, 2, l);
            push_string(&mut v, 3, s + 2 * k + 2 * l + 4, 4, m);
        }
        S => {
            let (k, l) = (p[0], p[1]);
            push_string(&mut v, 2, s, 2, k);
            push_string(&mut v, 2, s + 2 * k + 4, 2, l);
        }
        R => {
            let (k, l, m) = (p[0], p[1], p[2]);
            push_string(&mut v, 2, s, 2, k);
            push_string(&mut v, 1, s + 2 * k + 1, 2, l);
            push_string(&mut v, 3, s + 2 * k + 3, 4, m);
        }
        U => {
            let (k, l) = (p[0], p[1]);
            push_string(&mut v, 2, s, 2, k);
            push_string(&mut v, 3, s + 2 * k + 1, 2, l);
        }
        V => {
            let (k, l) = (p[0], p[1]);
            push_string(&mut v, 3, s, 4, k);
            push_string(&mut v, 3, s + 4 * k + 2, 4, l);
        }
        P => {
            let (k, l) = (p[0], p[1]);
            push_string(&mut v, 3, s, 4, k);
            v.push((2, s + 4 * k + 1, 1));
            push_string(&mut v, 3, s + 4 * k + 6, 4, l);
        }
        O => {
            let (k, l) = (p[0], p[1]);
            push_string(&mut v, 2, s, 2, k);
            v.push((1, s + 2 * k + 1, 1));
            v.push((1, s + 2 * k + 3, 1));
            push_string(&mut v, 2, s + 2 * k + 6, 2, l);
        }
        _ => unreachable!("barred or constant family"),
    }
    v
}

/// The highest monomial of a label. `Zero` has none.
pub fn highest_monomial(label: &ModuleLabel) -> Result<LMonomial> {
    if label.params.len() != label.family.arity() {
        return Err(Error::InvalidLabel(format!("{label}: wrong number of parameters")));
    }
    if label.is_zero() {
        return Err(Error::InvalidLabel(format!("{label} is the zero class")));
    }
    match label.family {
        Family::One => Ok(LMonomial::one()),
        Family::Zero => unreachable!(),
        f if f.is_barred() => Ok(LMonomial::from_triples(unbarred_factors(f.bar(), &label.params, label.shift))?.bar()),
        f => LMonomial::from_triples(unbarred_factors(f, &label.params, label.shift)),
    }
}

/// Recognises `Y_{i,a} Y_{i,a+2r_i} ... Y_{i,a+2r_i(n-1)}` as a Kirillov-Reshetikhin label.
fn kr_label(m: &LMonomial) -> Option<ModuleLabel> {
    let f = m.factors();
    let node = f.first()?.node;
    if f.iter().any(|x| x.node != node || x.exp != 1) {
        return None;
    }
    let step = 2 * crate::cartan::r(node);
    if f.windows(2).any(|w| (w[0].spectral - w[1].spectral) as i64 != step) {
        return None;
    }
    let (a, n) = (f[f.len() - 1].spectral as i64, f.len() as i64);
    Some(match node {
        3 => ModuleLabel::t(n, 0, 0, a),
        2 => ModuleLabel::t(0, n, 0, a - 1),
        _ => ModuleLabel::t(0, 0, n, a - 2),
    })
}

/// Labels at shift zero of the families shown to be special, with every
/// parameter at most `max`: `T_{k,l,0}`, `T_{k,0,m}`, `T_{0,l,r}` (`r <= 2`),
/// `Ttilde_{k,0,m}`, `Ttilde_{k,l,0}`, `S_{k,l}`, `R_{k,2l+j,l}` (`j <= 2`) and
/// `U, V, P, O`. Trivial labels are skipped.
pub fn special_family_labels(max: i64) -> Vec<ModuleLabel> {
    use Family::*;
    let mut out = Vec::new();
    let r = 0..=max;
    for a in r.clone() {
        for b in r.clone() {
            out.push(ModuleLabel::t(a, b, 0, 0));
            out.push(ModuleLabel::t(a, 0, b, 0));
            if b <= 2 {
                out.push(ModuleLabel::t(0, a, b, 0));
            }
            out.push(ModuleLabel::mk(Ttilde, &[a, 0, b], 0));
            out.push(ModuleLabel::mk(Ttilde, &[a, b, 0], 0));
            for f in [S, U, V, P, O] {
                out.push(ModuleLabel::mk(f, &[a, b], 0));
            }
            for j in 0..=2 {
                if 2 * b + j <= max {
                    out.push(ModuleLabel::mk(R, &[a, 2 * b + j, b], 0));
                }
            }
        }
    }
    let mut seen = std::collections::HashSet::new();
    out.retain(|l| highest_monomial(l).map_or(false, |m| !m.is_one()) && seen.insert(l.clone()));
    out
}

/// Rewrites degenerate labels: negative parameters give `Zero`, a trivial
/// highest monomial gives `One`, Kirillov-Reshetikhin modules become `T`
/// labels, and the coincidences between families with a vanishing parameter
/// are applied.
pub fn canonical_label(label: &ModuleLabel) -> ModuleLabel {
    use Family::*;
    if label.params.len() != label.family.arity() {
        return label.clone();
    }
    if label.is_zero() {
        return ModuleLabel::zero();
    }
    if label.family == One {
        return ModuleLabel::one();
    }
    let hm = highest_monomial(label).expect("valid label");
    if hm.is_one() {
        return ModuleLabel::one();
    }
    if let Some(kr) = kr_label(&hm) {
        return kr;
    }
    let p = &label.params;
    let s = label.shift;
    let next = match (label.family, p.as_slice()) {
        (R, &[k, l, 0]) => Some(ModuleLabel::t(0, k, l, s - 1)),
        (O, &[k, 0]) => Some(ModuleLabel::t(0, k, 2, s - 1)),
        (O, &[0, k]) => Some(ModuleLabel::mk(Ttilde, &[2, k, 0], s + 1)),
        (P, &[k, 0]) => Some(ModuleLabel::t(k, 1, 0, s)),
        (P, &[0, k]) => Some(ModuleLabel::mk(Ttilde, &[0, 1, k], s)),
        (Rbar, &[k, l, 0]) => Some(ModuleLabel::mk(Tbar, &[0, k, l], s - 1)),
        (Obar, &[k, 0]) => Some(ModuleLabel::mk(Tbar, &[0, k, 2], s - 1)),
        (Obar, &[0, k]) => Some(ModuleLabel::mk(Ttildebar, &[2, k, 0], s + 1)),
        (Pbar, &[k, 0]) => Some(ModuleLabel::mk(Tbar, &[k, 1, 0], s)),
        (Pbar, &[0, k]) => Some(ModuleLabel::t(k, 1, 0, -s - 4 * k - 2)),
        _ => None,
    };
    match next {
        Some(n) => canonical_label(&n),
        None => label.clone(),
    }
}
