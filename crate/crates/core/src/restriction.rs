//! Restriction of q-characters to `U_q(g)` and decomposition into irreducible
//! characters.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{dominant_multiplicities, freudenthal_weight_mults, weight_leq, weyl_dim, Weight};
use crate::error::{Error, Result};
use crate::qchar::QCharacter;
use crate::tsystem::{Family, ModuleLabel};

/// A sparse integer combination of weights.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCharacter {
    mults: BTreeMap<Weight, i64>,
}

impl WeightCharacter {
    pub fn one() -> Self {
        Self::from_weight(Weight::ZERO, 1)
    }

    pub fn from_weight(w: Weight, c: i64) -> Self {
        let mut x = Self::default();
        x.add_weight(w, c);
        x
    }

    /// Character of the irreducible module `V(lambda)`.
    pub fn irreducible(lambda: &Weight) -> Result<Self> {
        let mults = freudenthal_weight_mults(lambda)?.into_iter().map(|(w, m)| (w, m as i64)).collect();
        Ok(WeightCharacter { mults })
    }

    pub fn add_weight(&mut self, w: Weight, c: i64) {
        let v = self.mults.entry(w).or_default();
        *v += c;
        if *v == 0 {
            self.mults.remove(&w);
        }
    }

    pub fn get(&self, w: &Weight) -> i64 {
        self.mults.get(w).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &i64)> {
        self.mults.iter()
    }

    pub fn len(&self) -> usize {
        self.mults.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mults.is_empty()
    }

    /// Sum of multiplicities.
    pub fn dimension(&self) -> i64 {
        self.mults.values().sum()
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (w, &c) in &o.mults {
            out.add_weight(*w, c);
        }
        out
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::default();
        for (w, &c) in &self.mults {
            out.add_weight(*w, c * k);
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(-1))
    }

    /// Product in the character ring (characters of tensor products).
    pub fn mul(&self, o: &Self) -> Self {
        let mut out = Self::default();
        for (a, &ca) in &self.mults {
            for (b, &cb) in &o.mults {
                out.add_weight(*a + *b, ca * cb);
            }
        }
        out
    }

    /// Multiplicities agree along Weyl orbits.
    pub fn is_weyl_invariant(&self) -> bool {
        self.mults.iter().all(|(w, &c)| self.get(&w.dominant_conjugate()) == c)
            && self.mults.iter().filter(|(w, _)| w.is_dominant()).all(|(w, &c)| w.orbit().iter().all(|v| self.get(v) == c))
    }
}

/// `sum m` over the terms of `x`, each at the weight of its monomial.
pub fn restrict(x: &QCharacter) -> WeightCharacter {
    let mut out = WeightCharacter::default();
    for (m, &c) in x.iter() {
        out.add_weight(m.weight(), c);
    }
    out
}

/// Irreducible constituents `(lambda, multiplicity)`, by decreasing `lambda`.
pub type Decomposition = Vec<(Weight, u64)>;

/// Peels off irreducible characters at maximal dominant weights until nothing
/// is left. Fails on input that is not the character of a module.
pub fn decompose(w: &WeightCharacter) -> Result<Decomposition> {
    if !w.is_weyl_invariant() {
        return Err(Error::NotModule("not Weyl invariant".into()));
    }
    let mut rest: BTreeMap<Weight, i64> = w.mults.iter().filter(|(v, _)| v.is_dominant()).map(|(v, &c)| (*v, c)).collect();
    let mut out = Decomposition::new();
    while !rest.is_empty() {
        let maximal = rest.keys().filter(|a| !rest.keys().any(|b| b != *a && weight_leq(a, b)));
        let lambda = *maximal.max_by_key(|v| v.0).expect("a finite poset has maximal elements");
        let c = rest[&lambda];
        if c < 0 {
            return Err(Error::NotModule(format!("negative multiplicity {c} at {lambda}")));
        }
        for (mu, &m) in dominant_multiplicities(&lambda)?.iter() {
            let v = rest.entry(*mu).or_default();
            *v -= c * m as i64;
            if *v == 0 {
                rest.remove(mu);
            }
        }
        out.push((lambda, c as u64));
    }
    out.sort_by(|a, b| b.0 .0.cmp(&a.0 .0));
    Ok(out)
}

/// `sum mult * dim V(lambda)`.
pub fn decomposition_dimension(d: &Decomposition) -> Result<u64> {
    d.iter().try_fold(0u64, |acc, (l, m)| Ok(acc + m * weyl_dim(l)?))
}

/// Sorted multiset form, merging repeated weights.
fn normalize(v: impl IntoIterator<Item = (Weight, u64)>) -> Decomposition {
    let mut map: BTreeMap<Weight, u64> = BTreeMap::new();
    for (w, m) in v {
        *map.entry(w).or_default() += m;
    }
    let mut out: Decomposition = map.into_iter().collect();
    out.sort_by(|a, b| b.0 .0.cmp(&a.0 .0));
    out
}

/// Conjectured decompositions for `T_{k,l,0}`, `T_{k,0,m}` and `Ttilde_{k,0,m}`;
/// `None` for other labels.
pub fn conjecture_prediction(label: &ModuleLabel) -> Option<Decomposition> {
    let p = label.params.as_slice();
    let parts: Vec<Weight> = match (label.family, p) {
        (Family::T, &[k, l, 0]) => (0..=l / 2)
            .flat_map(|i| (0..=i).map(move |j| Weight::new(2 * i - 2 * j, l - 2 * i, k)))
            .collect(),
        (Family::T, &[k, 0, m]) => (0..=m / 2).map(|i| Weight::new(m - 2 * i, 0, k)).collect(),
        (Family::Ttilde, &[k, 0, m]) => (0..=k / 2).map(|i| Weight::new(k - 2 * i, 0, m)).collect(),
        _ => return None,
    };
    Some(normalize(parts.into_iter().map(|w| (w, 1))))
}

/// `h_p = sum_{r <= p/2} ch V((p - 2r) omega_1)`, with `h_0 = 1` and `h_p = 0` for `p < 0`.
fn h(p: i64) -> Result<WeightCharacter> {
    if p < 0 {
        return Ok(WeightCharacter::default());
    }
    (0..=p / 2).try_fold(WeightCharacter::default(), |acc, r| {
        Ok(acc.add(&WeightCharacter::irreducible(&Weight::new(p - 2 * r, 0, 0))?))
    })
}

fn det(m: &[Vec<WeightCharacter>]) -> WeightCharacter {
    match m.len() {
        0 => WeightCharacter::one(),
        1 => m[0][0].clone(),
        n => (0..n).fold(WeightCharacter::default(), |acc, j| {
            let minor: Vec<Vec<WeightCharacter>> =
                m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect()).collect();
            let term = m[0][j].mul(&det(&minor));
            if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            }
        }),
    }
}

/// `det(h_{lambda_i - i + j})` for `lambda = m1 omega_1 + m2 omega_2`, of size
/// `max{i : m_i != 0}`, where `lambda_i = sum_{k >= i} m_k`.
pub fn h_lambda_character(lambda: &Weight) -> Result<WeightCharacter> {
    let m = lambda.0;
    if m[2] != 0 || m.iter().any(|&x| x < 0) {
        return Err(Error::InvalidLabel(format!("{lambda}: expected m1 w1 + m2 w2 with m1, m2 >= 0")));
    }
    let size = m.iter().rposition(|&x| x != 0).map_or(0, |i| i + 1);
    let parts: Vec<i64> = (0..size).map(|i| m[i..size].iter().sum()).collect();
    let mut mat = Vec::new();
    for i in 0..size {
        let mut row = Vec::new();
        for j in 0..size {
            row.push(h(parts[i] - i as i64 + j as i64)?);
        }
        mat.push(row);
    }
    Ok(det(&mat))
}

/// Decomposition of one label with the conjectured one, when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub label: String,
    pub terms: usize,
    pub dimension: i64,
    /// `(lambda, multiplicity, dim V(lambda))`.
    pub components: Vec<(Weight, u64, u64)>,
    pub prediction: Option<Vec<(Weight, u64, u64)>>,
    pub matches_prediction: Option<bool>,
}

fn with_dims(d: &Decomposition) -> Result<Vec<(Weight, u64, u64)>> {
    d.iter().map(|&(w, m)| Ok((w, m, weyl_dim(&w)?))).collect()
}

impl DecompositionReport {
    pub fn new(label: &ModuleLabel, x: &QCharacter) -> Result<Self> {
        let d = decompose(&restrict(x))?;
        let pred = conjecture_prediction(label);
        Ok(DecompositionReport {
            label: label.to_string(),
            terms: x.len(),
            dimension: x.dimension(),
            components: with_dims(&d)?,
            matches_prediction: pred.as_ref().map(|p| *p == d),
            prediction: pred.as_ref().map(with_dims).transpose()?,
        })
    }
}

fn sum_text(v: &[(Weight, u64, u64)]) -> String {
    if v.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> =
        v.iter().map(|(w, m, _)| if *m == 1 { format!("V({w})") } else { format!("{m} V({w})") }).collect();
    parts.join(" + ")
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} terms, dimension {}", self.label, self.terms, self.dimension)?;
        writeln!(f, "restriction = {}", sum_text(&self.components))?;
        for (w, m, d) in &self.components {
            writeln!(f, "  {w}: multiplicity {m}, dim {d}")?;
        }
        if let (Some(p), Some(ok)) = (&self.prediction, self.matches_prediction) {
            writeln!(f, "predicted   = {}", sum_text(p))?;
            write!(f, "prediction {}", if ok { "matches" } else { "DIFFERS" })?;
        } else {
            write!(f, "no predicted decomposition for this family")?;
        }
        Ok(())
    }
}
