//! Root datum of type C3: Cartan matrix, symmetrized form, positive roots,
//! Weyl group and weight multiplicities of irreducible `U_q(g)`-modules.
//!
//! Weights are stored in fundamental-weight coordinates. Roots are stored
//! either as weights or in simple-root coordinates (`[i64; 3]`).

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Rank of C3.
pub const RANK: usize = 3;

/// Cartan matrix `C[i][j] = <alpha_j, h_i>`; node 3 is the long root.
pub const CARTAN: [[i64; 3]; 3] = [[2, -1, 0], [-1, 2, -2], [0, -1, 2]];

/// Symmetrizer `r_i = (alpha_i, alpha_i) / 2`.
pub const SYMMETRIZER: [i64; 3] = [1, 1, 2];

/// `adj(C)`; `C^{-1} = ADJ / DET`.
const ADJ: [[i64; 3]; 3] = [[2, 2, 2], [2, 4, 4], [1, 2, 3]];
const DET: i64 = 2;

/// Symmetrizer for a 1-based node index.
pub fn r(node: u8) -> i64 {
    SYMMETRIZER[node as usize - 1]
}

/// Symmetrized Cartan matrix `B = DC`, i.e. `B[i][j] = (alpha_i, alpha_j)`.
pub fn symmetrized() -> [[i64; 3]; 3] {
    let mut b = [[0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            b[i][j] = SYMMETRIZER[i] * CARTAN[i][j];
        }
    }
    b
}

/// An integral weight in the basis of fundamental weights.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub [i64; 3]);

impl Weight {
    pub const ZERO: Weight = Weight([0, 0, 0]);

    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Weight([a, b, c])
    }

    /// Fundamental weight `omega_i` (1-based).
    pub fn fundamental(i: u8) -> Self {
        let mut w = [0; 3];
        w[i as usize - 1] = 1;
        Weight(w)
    }

    /// Simple root `alpha_i` (1-based), i.e. the i-th column of `C`.
    pub fn simple_root(i: u8) -> Self {
        let j = i as usize - 1;
        Weight([CARTAN[0][j], CARTAN[1][j], CARTAN[2][j]])
    }

    /// Weight of a root given in simple-root coordinates.
    pub fn from_root_coords(x: [i64; 3]) -> Self {
        let mut w = [0; 3];
        for (i, wi) in w.iter_mut().enumerate() {
            *wi = (0..3).map(|j| CARTAN[i][j] * x[j]).sum();
        }
        Weight(w)
    }

    /// `2 C^{-1} lambda`, the doubled simple-root coordinates.
    fn doubled_root_coords(&self) -> [i64; 3] {
        let mut x = [0; 3];
        for (i, xi) in x.iter_mut().enumerate() {
            *xi = (0..3).map(|j| ADJ[i][j] * self.0[j]).sum();
        }
        x
    }

    /// Exact simple-root coordinates (denominators divide `det C = 2`).
    pub fn root_coords(&self) -> [Rational64; 3] {
        let x = self.doubled_root_coords();
        x.map(|v| Rational64::new(v, DET))
    }

    /// Simple-root coordinates when they are all integers.
    pub fn integral_root_coords(&self) -> Option<[i64; 3]> {
        let x = self.doubled_root_coords();
        if x.iter().all(|v| v % DET == 0) {
            Some(x.map(|v| v / DET))
        } else {
            None
        }
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Simple reflection `s_i` (1-based).
    pub fn reflect(&self, i: u8) -> Self {
        let c = self.0[i as usize - 1];
        *self - Weight::simple_root(i) * c
    }

    /// The unique dominant weight in the Weyl orbit.
    pub fn dominant_conjugate(&self) -> Self {
        let mut w = *self;
        loop {
            match (1..=3u8).find(|&i| w.0[i as usize - 1] < 0) {
                Some(i) => w = w.reflect(i),
                None => return w,
            }
        }
    }

    /// Weyl orbit, sorted.
    pub fn orbit(&self) -> Vec<Weight> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::from([*self]);
        seen.insert(*self);
        while let Some(w) = queue.pop_front() {
            for i in 1..=3u8 {
                let v = w.reflect(i);
                if seen.insert(v) {
                    queue.push_back(v);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        Weight([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl AddAssign for Weight {
    fn add_assign(&mut self, o: Weight) {
        *self = *self + o;
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        Weight([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl SubAssign for Weight {
    fn sub_assign(&mut self, o: Weight) {
        *self = *self - o;
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.map(|c| -c))
    }
}

impl Mul<i64> for Weight {
    type Output = Weight;
    fn mul(self, k: i64) -> Weight {
        Weight(self.0.map(|c| c * k))
    }
}

impl std::fmt::Display for Weight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (i, &c) in self.0.iter().enumerate() {
            match c {
                0 => {}
                1 => parts.push(format!("w{}", i + 1)),
                _ => parts.push(format!("{}w{}", c, i + 1)),
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join("+").replace("+-", "-"))
        }
    }
}

/// Twice the invariant form, an integer for integral weights.
fn form2(a: &Weight, b: &Weight) -> i64 {
    let x = b.doubled_root_coords();
    (0..3).map(|j| a.0[j] * SYMMETRIZER[j] * x[j]).sum()
}

/// The invariant bilinear form normalized by `(alpha_1, alpha_1) = 2`.
pub fn form(a: &Weight, b: &Weight) -> Rational64 {
    Rational64::new(form2(a, b), 2)
}

/// `lambda <= mu` iff `mu - lambda` is a nonnegative integer combination of simple roots.
pub fn weight_leq(lambda: &Weight, mu: &Weight) -> bool {
    match (*mu - *lambda).integral_root_coords() {
        Some(x) => x.iter().all(|&c| c >= 0),
        None => false,
    }
}

/// Half the sum of positive roots, `(1, 1, 1)`.
pub fn rho() -> Weight {
    Weight([1, 1, 1])
}

/// Positive roots in simple-root coordinates, generated by root-string closure
/// and sorted by height.
pub fn positive_roots() -> &'static [[i64; 3]] {
    static ROOTS: OnceLock<Vec<[i64; 3]>> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let mut roots: Vec<[i64; 3]> = vec![[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        let mut set: HashSet<[i64; 3]> = roots.iter().copied().collect();
        let mut frontier = roots.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for beta in &frontier {
                let bw = Weight::from_root_coords(*beta);
                for i in 0..3 {
                    let mut p = 0;
                    loop {
                        let mut down = *beta;
                        down[i] -= p + 1;
                        if set.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - bw.0[i];
                    if q > 0 {
                        let mut up = *beta;
                        up[i] += 1;
                        if set.insert(up) {
                            next.push(up);
                        }
                    }
                }
            }
            roots.extend(next.iter().copied());
            frontier = next;
        }
        roots.sort_by_key(|x| (x.iter().sum::<i64>(), std::cmp::Reverse(*x)));
        roots
    })
}

/// The Weyl group as integer matrices acting on fundamental-weight coordinates.
pub fn weyl_group() -> Vec<[[i64; 3]; 3]> {
    let apply = |m: &[[i64; 3]; 3], w: Weight| -> Weight {
        let mut out = [0; 3];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..3).map(|j| m[i][j] * w.0[j]).sum();
        }
        Weight(out)
    };
    let as_matrix = |f: &dyn Fn(Weight) -> Weight| -> [[i64; 3]; 3] {
        let mut m = [[0; 3]; 3];
        for j in 0..3 {
            let col = f(Weight::fundamental(j as u8 + 1));
            for i in 0..3 {
                m[i][j] = col.0[i];
            }
        }
        m
    };
    let id = as_matrix(&|w| w);
    let mut seen = HashSet::from([id]);
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for i in 1..=3u8 {
            let n = as_matrix(&|w| apply(&m, w).reflect(i));
            if seen.insert(n) {
                queue.push_back(n);
            }
        }
    }
    let mut out: Vec<_> = seen.into_iter().collect();
    out.sort();
    out
}

/// Weyl dimension formula.
pub fn weyl_dim(lambda: &Weight) -> Result<u64> {
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0));
    }
    let lr = *lambda + rho();
    let (mut num, mut den) = (1u128, 1u128);
    for a in positive_roots() {
        let aw = Weight::from_root_coords(*a);
        num *= form2(&lr, &aw) as u128;
        den *= form2(&rho(), &aw) as u128;
    }
    Ok((num / den) as u64)
}

/// Multiplicities of the dominant weights of `V(lambda)` (Freudenthal).
pub fn dominant_multiplicities(lambda: &Weight) -> Result<Arc<BTreeMap<Weight, u64>>> {
    static CACHE: OnceLock<Mutex<HashMap<Weight, Arc<BTreeMap<Weight, u64>>>>> = OnceLock::new();
    if !lambda.is_dominant() {
        return Err(Error::NotDominant(lambda.0));
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(lambda) {
        return Ok(hit.clone());
    }
    let x = lambda.doubled_root_coords().map(|v| v / DET);
    let mut dominant: Vec<([i64; 3], Weight)> = Vec::new();
    for n0 in 0..=x[0] {
        for n1 in 0..=x[1] {
            for n2 in 0..=x[2] {
                let mu = *lambda - Weight::from_root_coords([n0, n1, n2]);
                if mu.is_dominant() {
                    dominant.push(([n0, n1, n2], mu));
                }
            }
        }
    }
    dominant.sort_by_key(|(n, _)| n.iter().sum::<i64>());
    let lr = *lambda + rho();
    let top = form2(&lr, &lr);
    let roots: Vec<Weight> = positive_roots().iter().map(|a| Weight::from_root_coords(*a)).collect();
    let mut mult: BTreeMap<Weight, u64> = BTreeMap::new();
    for (_, mu) in &dominant {
        if mu == lambda {
            mult.insert(*mu, 1);
            continue;
        }
        let mut num: i64 = 0;
        for a in &roots {
            let mut k = 1;
            loop {
                let nu = *mu + *a * k;
                match mult.get(&nu.dominant_conjugate()) {
                    Some(&m) => num += m as i64 * form2(&nu, a),
                    None => break,
                }
                k += 1;
            }
        }
        let mr = *mu + rho();
        let den = top - form2(&mr, &mr);
        debug_assert!(den > 0 && (2 * num) % den == 0);
        let m = 2 * num / den;
        if m > 0 {
            mult.insert(*mu, m as u64);
        }
    }
    let out = Arc::new(mult);
    cache.lock().unwrap().insert(*lambda, out.clone());
    Ok(out)
}

/// All weight multiplicities of `V(lambda)`.
pub fn freudenthal_weight_mults(lambda: &Weight) -> Result<BTreeMap<Weight, u64>> {
    let dom = dominant_multiplicities(lambda)?;
    let mut out = BTreeMap::new();
    for (mu, &m) in dom.iter() {
        for w in mu.orbit() {
            out.insert(w, m);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrized_is_symmetric() {
        let b = symmetrized();
        assert_eq!(b, [[2, -1, 0], [-1, 2, -2], [0, -2, 4]]);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(b[i][j], b[j][i]);
            }
        }
    }

    #[test]
    fn form_on_simple_roots() {
        let a: Vec<Weight> = (1..=3).map(Weight::simple_root).collect();
        let b = symmetrized();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(form(&a[i], &a[j]), Rational64::from_integer(b[i][j]));
            }
            for j in 0..3 {
                let w = Weight::fundamental(j as u8 + 1);
                let expect = if i == j { SYMMETRIZER[i] } else { 0 };
                assert_eq!(form(&w, &a[i]), Rational64::from_integer(expect));
            }
        }
    }

    #[test]
    fn nine_positive_roots() {
        let roots = positive_roots();
        assert_eq!(roots.len(), 9);
        let expect: HashSet<[i64; 3]> = [
            [1, 0, 0],
            [0, 1, 0],
            [0, 0, 1],
            [1, 1, 0],
            [0, 1, 1],
            [1, 1, 1],
            [0, 2, 1],
            [1, 2, 1],
            [2, 2, 1],
        ]
        .into_iter()
        .collect();
        assert_eq!(roots.iter().copied().collect::<HashSet<_>>(), expect);
        let sum = roots.iter().fold(Weight::ZERO, |acc, a| acc + Weight::from_root_coords(*a));
        assert_eq!(sum, rho() * 2);
    }

    #[test]
    fn weyl_group_order() {
        assert_eq!(weyl_group().len(), 48);
    }

    #[test]
    fn root_coords_round_trip() {
        let w = Weight::new(1, 0, 0);
        let x = w.root_coords();
        assert_eq!(x, [Rational64::new(1, 1), Rational64::new(1, 1), Rational64::new(1, 2)]);
        assert_eq!(Weight::simple_root(2).integral_root_coords(), Some([0, 1, 0]));
        assert!(weight_leq(&(Weight::fundamental(2) - Weight::simple_root(2)), &Weight::fundamental(2)));
        assert!(!weight_leq(&Weight::fundamental(1), &Weight::fundamental(2)));
    }

    #[test]
    fn weyl_dimensions() {
        let cases = [
            ([1, 0, 0], 6),
            ([0, 1, 0], 14),
            ([0, 0, 1], 14),
            ([2, 0, 0], 21),
            ([0, 2, 0], 90),
            ([0, 0, 2], 84),
            ([0, 3, 3], 21216),
            ([6, 2, 2], 186732),
            ([2, 6, 0], 52668),
            ([0, 0, 6], 5712),
        ];
        for (l, d) in cases {
            assert_eq!(weyl_dim(&Weight(l)).unwrap(), d, "{:?}", l);
        }
        assert!(weyl_dim(&Weight::new(-1, 0, 0)).is_err());
    }

    #[test]
    fn freudenthal_matches_weyl_dim() {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let l = Weight::new(a, b, c);
                    let m = freudenthal_weight_mults(&l).unwrap();
                    let total: u64 = m.values().sum();
                    assert_eq!(total, weyl_dim(&l).unwrap(), "{}", l);
                    for (w, k) in &m {
                        for i in 1..=3 {
                            assert_eq!(m.get(&w.reflect(i)), Some(k));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn omega2_has_zero_weight_multiplicity_two() {
        let m = dominant_multiplicities(&Weight::new(0, 1, 0)).unwrap();
        assert_eq!(m.get(&Weight::ZERO), Some(&2));
    }
}
