//! Root systems of the simple Lie algebras in Bourbaki numbering.
//!
//! Simple roots are indexed from 0 in code; node `k` of a Dynkin diagram in
//! Bourbaki's tables is index `k - 1`. Cartan matrix convention:
//! `cartan[i][j] = <alpha_i, alpha_j^vee>`, so row `i` holds the Dynkin labels
//! of `alpha_i`. Squared root lengths are normalized so long roots have 2.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::rational::{q, Q};

/// Coordinates in the basis of simple roots.
pub type RootVec = Vec<i64>;
/// Coordinates in the basis of fundamental weights (Dynkin labels).
pub type WeightVec = Vec<i64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SimpleType {
    pub family: Family,
    pub rank: usize,
}

impl SimpleType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(SimpleType { family, rank })
        } else {
            Err(Error::InvalidType(format!("{family:?}{rank}")))
        }
    }

    /// Whether the root system has two root lengths.
    pub fn is_simply_laced(&self) -> bool {
        matches!(self.family, Family::A | Family::D | Family::E)
    }
}

impl fmt::Display for SimpleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for SimpleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidType(s.to_string());
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        SimpleType::new(family, rank).map_err(|_| bad())
    }
}

/// Data used to build the root vector `e_xi = [e_i, e_beta] / n` for a
/// non-simple positive root `xi = alpha_i + beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    /// Smallest simple index with `xi - alpha_i` a root.
    pub simple: usize,
    /// Index of `beta = xi - alpha_i` among the positive roots.
    pub rest: usize,
    /// `p + 1`, where `beta - p alpha_i` is the bottom of the `alpha_i`-string through `beta`.
    pub n: i64,
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub ty: SimpleType,
    pub cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i)` with long roots of squared length 2.
    pub root_len2: Vec<Q>,
    /// `d_j = (alpha_j, alpha_j) / 2`; `cartan[i][j] * d_j = (alpha_i, alpha_j)` is symmetric.
    pub symmetrizer: Vec<Q>,
    /// Positive roots ordered by height, then by coordinates in decreasing lexicographic order.
    pub positive_roots: Vec<RootVec>,
    pub highest_root: RootVec,
    pub dual_coxeter: i64,
    pub comarks: Vec<i64>,
    gram: Mat,
    cartan_inv: Mat,
    /// `cartan_den * cartan_inv`, integral.
    cartan_inv_int: Vec<Vec<i64>>,
    cartan_den: i64,
    index: HashMap<RootVec, usize>,
    decomp: Vec<Option<Decomposition>>,
}

fn bonds(ty: SimpleType) -> (Vec<(usize, usize)>, Vec<Q>) {
    let n = ty.rank;
    let chain = |m: usize| (0..m.saturating_sub(1)).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let two = q(2);
    match ty.family {
        Family::A => (chain(n), vec![two; n]),
        Family::B => {
            let mut l = vec![two; n];
            l[n - 1] = q(1);
            (chain(n), l)
        }
        Family::C => {
            let mut l = vec![q(1); n];
            l[n - 1] = two;
            (chain(n), l)
        }
        Family::D => {
            let mut e = chain(n - 1);
            e.push((n - 3, n - 1));
            (e, vec![two; n])
        }
        Family::E => {
            let mut e = vec![(0, 2), (1, 3)];
            for i in 2..n - 1 {
                e.push((i, i + 1));
            }
            (e, vec![two; n])
        }
        Family::F => (chain(4), vec![two.clone(), two, q(1), q(1)]),
        Family::G => (chain(2), vec![Q::new(2, 3), two]),
    }
}

/// Builds the root system of a simple type.
pub fn build_root_system(ty: SimpleType) -> Result<RootSystem> {
    SimpleType::new(ty.family, ty.rank)?;
    let l = ty.rank;
    let (edges, root_len2) = bonds(ty);
    let mut gram = linalg::zeros(l, l);
    for i in 0..l {
        gram[i][i] = root_len2[i].clone();
    }
    for &(i, j) in &edges {
        let m = std::cmp::max(&root_len2[i], &root_len2[j]).clone();
        let v = -(m / q(2));
        gram[i][j] = v.clone();
        gram[j][i] = v;
    }
    let mut cartan = vec![vec![0i64; l]; l];
    for i in 0..l {
        for j in 0..l {
            let a = q(2) * &gram[i][j] / &root_len2[j];
            cartan[i][j] = a.to_i64().ok_or_else(|| Error::Internal("non-integral Cartan entry".into()))?;
        }
    }
    let cartan_q: Mat = cartan.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let cartan_inv = linalg::inverse(&cartan_q).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let cartan_den =
        cartan_inv.iter().flatten().map(|x| x.denom().to_i64().expect("small denominator")).fold(1, num_integer::lcm);
    let cartan_inv_int: Vec<Vec<i64>> = cartan_inv
        .iter()
        .map(|r| r.iter().map(|x| (x * &q(cartan_den)).to_i64().expect("integral")).collect())
        .collect();
    let symmetrizer = root_len2.iter().map(|x| x / &q(2)).collect();

    let label = |beta: &RootVec, i: usize| -> i64 { (0..l).map(|j| beta[j] * cartan[j][i]).sum() };

    // grow positive roots level by level with the string criterion
    let simple: Vec<RootVec> = (0..l).map(|i| unit(l, i)).collect();
    let mut all: Vec<RootVec> = simple.clone();
    let mut known: HashSet<RootVec> = simple.iter().cloned().collect();
    let mut level = simple;
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..l {
                if beta.iter().sum::<i64>() == 1 && beta[i] == 1 {
                    continue;
                }
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if known.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - label(beta, i) >= 1 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if !known.contains(&up) {
                        known.insert(up.clone());
                        next.push(up);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all.sort_by(|a, b| {
        let (ha, hb) = (a.iter().sum::<i64>(), b.iter().sum::<i64>());
        ha.cmp(&hb).then_with(|| b.cmp(a))
    });
    let index: HashMap<RootVec, usize> = all.iter().enumerate().map(|(k, r)| (r.clone(), k)).collect();

    let mut decomp = Vec::with_capacity(all.len());
    for xi in &all {
        if xi.iter().sum::<i64>() == 1 {
            decomp.push(None);
            continue;
        }
        let mut found = None;
        for i in 0..l {
            let mut beta = xi.clone();
            beta[i] -= 1;
            if let Some(&rest) = index.get(&beta) {
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if index.contains_key(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                found = Some(Decomposition { simple: i, rest, n: p + 1 });
                break;
            }
        }
        decomp.push(Some(found.ok_or_else(|| Error::Internal(format!("root {xi:?} has no decomposition")))?));
    }

    let highest_root = all.last().cloned().expect("nonempty root system");
    let comarks: Vec<i64> =
        (0..l).map(|i| (q(highest_root[i]) * &root_len2[i] / q(2)).to_i64().expect("integral comark")).collect();
    let dual_coxeter = 1 + comarks.iter().sum::<i64>();

    Ok(RootSystem {
        ty,
        cartan,
        root_len2,
        symmetrizer,
        positive_roots: all,
        highest_root,
        dual_coxeter,
        comarks,
        gram,
        cartan_inv,
        cartan_inv_int,
        cartan_den,
        index,
        decomp,
    })
}

fn unit(l: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; l];
    v[i] = 1;
    v
}

impl RootSystem {
    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// Position of a positive root in the canonical order.
    pub fn root_index(&self, alpha: &[i64]) -> Option<usize> {
        self.index.get(alpha).copied()
    }

    pub fn is_root(&self, alpha: &[i64]) -> bool {
        if self.index.contains_key(alpha) {
            return true;
        }
        let neg: Vec<i64> = alpha.iter().map(|x| -x).collect();
        self.index.contains_key(&neg)
    }

    pub fn theta_index(&self) -> usize {
        self.positive_roots.len() - 1
    }

    pub fn decomposition(&self, idx: usize) -> Option<Decomposition> {
        self.decomp[idx]
    }

    /// Simple root index when `idx` is a simple root.
    pub fn simple_of(&self, idx: usize) -> Option<usize> {
        if idx < self.rank() {
            Some(idx)
        } else {
            None
        }
    }

    pub fn height(alpha: &[i64]) -> i64 {
        alpha.iter().sum()
    }

    /// `(alpha_i, alpha_j)`.
    pub fn gram(&self) -> &Mat {
        &self.gram
    }

    /// Invariant inner product of two vectors given in simple-root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> Q {
        let mut s = Q::zero();
        for (&ai, row) in a.iter().zip(&self.gram) {
            if ai == 0 {
                continue;
            }
            for (&bj, g) in b.iter().zip(row) {
                if bj != 0 && !g.is_zero() {
                    s += q(ai * bj) * g;
                }
            }
        }
        s
    }

    pub fn len2(&self, alpha: &[i64]) -> Q {
        self.inner(alpha, alpha)
    }

    pub fn is_long(&self, alpha: &[i64]) -> bool {
        self.len2(alpha) == q(2)
    }

    /// Coordinates of `alpha^vee` in the basis of simple coroots.
    pub fn coroot(&self, alpha: &[i64]) -> Vec<i64> {
        let n = self.len2(alpha);
        (0..self.rank()).map(|i| (q(alpha[i]) * &self.root_len2[i] / &n).to_i64().expect("integral coroot")).collect()
    }

    /// `<lambda, alpha^vee>` for a weight in fundamental-weight coordinates.
    pub fn pair(&self, lambda: &[i64], alpha: &[i64]) -> i64 {
        self.coroot(alpha).iter().zip(lambda).map(|(c, x)| c * x).sum()
    }

    /// Dynkin labels of an element of the root lattice.
    pub fn root_to_weight(&self, alpha: &[i64]) -> WeightVec {
        let l = self.rank();
        (0..l).map(|j| (0..l).map(|i| alpha[i] * self.cartan[i][j]).sum()).collect()
    }

    /// Simple-root coordinates of a weight (rational in general).
    pub fn weight_to_root(&self, mu: &[i64]) -> Vec<Q> {
        let l = self.rank();
        (0..l).map(|i| (0..l).filter(|&j| mu[j] != 0).map(|j| q(mu[j]) * &self.cartan_inv[j][i]).sum()).collect()
    }

    /// Simple-root coordinates when `mu` lies in the root lattice.
    pub fn weight_to_root_int(&self, mu: &[i64]) -> Option<RootVec> {
        let l = self.rank();
        (0..l)
            .map(|i| {
                let s: i64 = (0..l).map(|j| mu[j] * self.cartan_inv_int[j][i]).sum();
                (s % self.cartan_den == 0).then_some(s / self.cartan_den)
            })
            .collect()
    }

    pub fn fundamental_weight(&self, k: usize) -> WeightVec {
        unit(self.rank(), k)
    }

    /// The highest root as a weight.
    pub fn theta_weight(&self) -> WeightVec {
        self.root_to_weight(&self.highest_root)
    }

    pub fn rho(&self) -> WeightVec {
        vec![1; self.rank()]
    }

    /// Simple reflection `s_i` acting on Dynkin labels.
    pub fn reflect(&self, mu: &[i64], i: usize) -> WeightVec {
        let c = mu[i];
        (0..self.rank()).map(|j| mu[j] - c * self.cartan[i][j]).collect()
    }

    /// Unique dominant element of the Weyl orbit of `mu`.
    pub fn dominant_conjugate(&self, mu: &[i64]) -> WeightVec {
        let mut m = mu.to_vec();
        while let Some(i) = m.iter().position(|&x| x < 0) {
            let c = m[i];
            for (x, a) in m.iter_mut().zip(&self.cartan[i]) {
                *x -= c * a;
            }
        }
        m
    }

    pub fn is_dominant(mu: &[i64]) -> bool {
        mu.iter().all(|&x| x >= 0)
    }

    /// True iff `lambda - mu` is a nonnegative integer combination of simple roots.
    pub fn dominance_leq(&self, mu: &[i64], lambda: &[i64]) -> bool {
        let d: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        match self.weight_to_root_int(&d) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Whether `mu` is a weight of the irreducible module of highest weight `lambda`.
    pub fn is_weight_of(&self, mu: &[i64], lambda: &[i64]) -> Result<bool> {
        if !Self::is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        Ok(self.dominance_leq(&self.dominant_conjugate(mu), lambda))
    }

    /// Lowest weight `w0 lambda`.
    pub fn lowest_weight(&self, lambda: &[i64]) -> WeightVec {
        let neg: Vec<i64> = lambda.iter().map(|x| -x).collect();
        self.dominant_conjugate(&neg).iter().map(|x| -x).collect()
    }

    /// The sandwich test `w0 lambda <= mu <= lambda`, which is necessary for
    /// `mu` to be a weight but not sufficient in general.
    pub fn between_extremes(&self, mu: &[i64], lambda: &[i64]) -> bool {
        self.dominance_leq(mu, lambda) && self.dominance_leq(&self.lowest_weight(lambda), mu)
    }

    /// Dimension of the irreducible module with highest weight `lambda`.
    pub fn weyl_dimension(&self, lambda: &[i64]) -> Result<BigInt> {
        if !Self::is_dominant(lambda) {
            return Err(Error::NotDominant(lambda.to_vec()));
        }
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for alpha in &self.positive_roots {
            let c = self.coroot(alpha);
            let r: i64 = c.iter().sum();
            let lr: i64 = c.iter().zip(lambda).map(|(a, b)| a * b).sum::<i64>() + r;
            num *= lr;
            den *= r;
        }
        Ok(num / den)
    }

    /// All weights of the Weyl orbit of `mu`, by closure under simple reflections.
    pub fn weyl_orbit(&self, mu: &[i64]) -> Vec<WeightVec> {
        let mut seen: HashSet<WeightVec> = HashSet::new();
        let mut stack = vec![mu.to_vec()];
        seen.insert(mu.to_vec());
        let mut out = Vec::new();
        while let Some(m) = stack.pop() {
            for i in 0..self.rank() {
                let r = self.reflect(&m, i);
                if seen.insert(r.clone()) {
                    stack.push(r);
                }
            }
            out.push(m);
        }
        out.sort();
        out
    }

    /// Positive roots whose root space is not in the Levi factor of the
    /// maximal parabolic attached to node `k`, i.e. those with `alpha_k` coefficient > 0.
    pub fn non_levi_roots(&self, k: usize) -> Vec<usize> {
        (0..self.num_positive()).filter(|&a| self.positive_roots[a][k] > 0).collect()
    }

    pub fn summary(&self) -> RootSystemJson {
        RootSystemJson {
            r#type: self.ty.to_string(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
            root_lengths_squared: self.root_len2.iter().map(|x| x.to_string()).collect(),
            positive_roots: self.positive_roots.clone(),
            highest_root: self.highest_root.clone(),
            comarks: self.comarks.clone(),
            dual_coxeter: self.dual_coxeter,
        }
    }
}

/// Serializable view of a [`RootSystem`].
#[derive(Debug, Clone, Serialize, serde::Deserialize, PartialEq, Eq)]
pub struct RootSystemJson {
    pub r#type: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub root_lengths_squared: Vec<String>,
    pub positive_roots: Vec<RootVec>,
    pub highest_root: RootVec,
    pub comarks: Vec<i64>,
    pub dual_coxeter: i64,
}

/// ASCII Dynkin diagram with one label per node, drawn in Bourbaki layout.
pub fn dynkin_ascii(ty: SimpleType, labels: &[i64]) -> String {
    let n = ty.rank;
    let lab = |i: usize| labels[i].to_string();
    let chain = |sep: &dyn Fn(usize) -> &'static str| {
        let mut s = String::new();
        for i in 0..n {
            s.push_str(&lab(i));
            if i + 1 < n {
                s.push_str(sep(i));
            }
        }
        s
    };
    match ty.family {
        Family::A => chain(&|_| " - "),
        Family::B => chain(&|i| if i + 2 == n { " => " } else { " - " }),
        Family::C => chain(&|i| if i + 2 == n { " <= " } else { " - " }),
        Family::F => chain(&|i| if i == 1 { " => " } else { " - " }),
        Family::G => format!("{} <= {}", lab(0), lab(1)),
        Family::D => {
            let order: Vec<usize> = (0..n - 1).collect();
            hanging(&order, n - 3, n - 1, &lab)
        }
        Family::E => {
            let mut order = vec![0usize, 2, 3];
            order.extend(4..n);
            hanging(&order, 3, 1, &lab)
        }
    }
}

/// A chain of nodes with one extra node hanging below `branch`.
fn hanging(order: &[usize], branch: usize, extra: usize, lab: &dyn Fn(usize) -> String) -> String {
    let mut main = String::new();
    let mut col = 0;
    for (k, &i) in order.iter().enumerate() {
        if i == branch {
            col = main.len();
        }
        main.push_str(&lab(i));
        if k + 1 < order.len() {
            main.push_str(" - ");
        }
    }
    format!("{main}\n{}|\n{}{}", " ".repeat(col), " ".repeat(col), lab(extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rs(s: &str) -> RootSystem {
        build_root_system(s.parse().unwrap()).unwrap()
    }

    fn expected_count(ty: SimpleType) -> usize {
        let n = ty.rank;
        match ty.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => [36, 63, 120][n - 6],
            Family::F => 24,
            Family::G => 6,
        }
    }

    fn desk_types() -> Vec<SimpleType> {
        let mut v = Vec::new();
        for n in 1..=8 {
            v.push(SimpleType::new(Family::A, n).unwrap());
        }
        for n in 2..=8 {
            v.push(SimpleType::new(Family::B, n).unwrap());
            v.push(SimpleType::new(Family::C, n).unwrap());
        }
        for n in 3..=8 {
            v.push(SimpleType::new(Family::D, n).unwrap());
        }
        for n in 6..=8 {
            v.push(SimpleType::new(Family::E, n).unwrap());
        }
        v.push(SimpleType::new(Family::F, 4).unwrap());
        v.push(SimpleType::new(Family::G, 2).unwrap());
        v
    }

    #[test]
    fn parse_types() {
        assert_eq!("b4".parse::<SimpleType>().unwrap(), SimpleType { family: Family::B, rank: 4 });
        assert!("Q9".parse::<SimpleType>().is_err());
        assert!("E9".parse::<SimpleType>().is_err());
        assert!("B1".parse::<SimpleType>().is_err());
        assert!("D2".parse::<SimpleType>().is_err());
        assert!("G".parse::<SimpleType>().is_err());
    }

    #[test]
    fn root_counts_and_dual_coxeter() {
        for ty in desk_types() {
            let r = build_root_system(ty).unwrap();
            assert_eq!(r.num_positive(), expected_count(ty), "{ty}");
            assert_eq!(r.dual_coxeter, 1 + r.comarks.iter().sum::<i64>());
            let expected_h = match ty.family {
                Family::A => ty.rank as i64 + 1,
                Family::B => 2 * ty.rank as i64 - 1,
                Family::C => ty.rank as i64 + 1,
                Family::D => 2 * ty.rank as i64 - 2,
                Family::E => [12, 18, 30][ty.rank - 6],
                Family::F => 9,
                Family::G => 4,
            };
            assert_eq!(r.dual_coxeter, expected_h, "{ty}");
        }
    }

    #[test]
    fn highest_roots() {
        assert_eq!(rs("B2").highest_root, vec![1, 2]);
        assert_eq!(rs("G2").highest_root, vec![3, 2]);
        assert_eq!(rs("A1").positive_roots, vec![vec![1]]);
        assert_eq!(rs("F4").highest_root, vec![2, 3, 4, 2]);
        assert_eq!(rs("E8").highest_root, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(rs("D3").highest_root, vec![1, 1, 1]);
        assert_eq!(rs("C3").highest_root, vec![2, 2, 1]);
    }

    #[test]
    fn highest_root_is_dominant_and_maximal() {
        for ty in desk_types() {
            let r = build_root_system(ty).unwrap();
            assert!(RootSystem::is_dominant(&r.theta_weight()));
            for i in 0..r.rank() {
                let mut up = r.highest_root.clone();
                up[i] += 1;
                assert!(!r.is_root(&up));
            }
            for a in &r.positive_roots {
                assert!(r.dominance_leq(&r.root_to_weight(a), &r.theta_weight()));
            }
        }
    }

    #[test]
    fn cartan_is_symmetrizable() {
        for ty in desk_types() {
            let r = build_root_system(ty).unwrap();
            for i in 0..r.rank() {
                assert_eq!(r.cartan[i][i], 2);
                for j in 0..r.rank() {
                    let a = q(r.cartan[i][j]) * &r.symmetrizer[j];
                    let b = q(r.cartan[j][i]) * &r.symmetrizer[i];
                    assert_eq!(a, b);
                }
            }
        }
    }

    #[test]
    fn dual_coxeter_examples() {
        assert_eq!(rs("F4").dual_coxeter, 9);
        assert_eq!(rs("E8").dual_coxeter, 30);
        for n in 1..=8 {
            assert_eq!(rs(&format!("A{n}")).dual_coxeter, n as i64 + 1);
        }
    }

    #[test]
    fn dominance_examples() {
        let f4 = rs("F4");
        let w2 = f4.fundamental_weight(1);
        let th = f4.theta_weight();
        let lhs: Vec<i64> = w2.iter().zip(&th).map(|(a, b)| a - 3 * b).collect();
        let neg: Vec<i64> = w2.iter().map(|x| -x).collect();
        assert!(f4.dominance_leq(&neg, &lhs));
        assert!(f4.dominance_leq(&w2, &w2));

        let e8 = rs("E8");
        let w1 = e8.fundamental_weight(0);
        let th = e8.theta_weight();
        let lhs: Vec<i64> = w1.iter().zip(&th).map(|(a, b)| a - 3 * b).collect();
        let neg: Vec<i64> = w1.iter().map(|x| -x).collect();
        // the two weights are incomparable; neither is below the other
        assert!(!e8.dominance_leq(&lhs, &neg));
        assert!(!e8.dominance_leq(&neg, &lhs));
        assert!(!e8.is_weight_of(&lhs, &w1).unwrap());
        let two: Vec<i64> = w1.iter().zip(&th).map(|(a, b)| a - 2 * b).collect();
        assert!(e8.dominance_leq(&neg, &two));
        assert!(e8.is_weight_of(&two, &w1).unwrap());
    }

    #[test]
    fn weight_membership() {
        let f4 = rs("F4");
        let w1 = f4.fundamental_weight(0);
        let th = f4.theta_weight();
        let mu: Vec<i64> = w1.iter().zip(&th).map(|(a, b)| a - 2 * b).collect();
        assert_eq!(mu, w1.iter().map(|x| -x).collect::<Vec<_>>());
        assert!(f4.is_weight_of(&mu, &w1).unwrap());
        assert!(f4.is_weight_of(&w1, &w1).unwrap());
        assert!(f4.is_weight_of(&w1, &[-1, 0, 0, 0]).is_err());
    }

    #[test]
    fn dominant_conjugate_matches_orbit_enumeration_g2() {
        let g2 = rs("G2");
        let w1 = g2.fundamental_weight(0);
        let th = g2.theta_weight();
        let mu: Vec<i64> = w1.iter().zip(&th).map(|(a, b)| a - b).collect();
        let orbit = g2.weyl_orbit(&mu);
        let dominant: Vec<_> = orbit.iter().filter(|m| RootSystem::is_dominant(m)).collect();
        assert_eq!(dominant.len(), 1);
        assert_eq!(&g2.dominant_conjugate(&mu), dominant[0]);
        // the orbit of a regular weight has |W| = 12 elements
        assert_eq!(g2.weyl_orbit(&[1, 1]).len(), 12);
    }

    #[test]
    fn weyl_dimension_examples() {
        assert_eq!(rs("A3").weyl_dimension(&[0, 0, 0]).unwrap(), 1.into());
        assert_eq!(rs("A4").weyl_dimension(&[1, 0, 0, 0]).unwrap(), 5.into());
        assert_eq!(rs("E6").weyl_dimension(&[1, 0, 0, 0, 0, 0]).unwrap(), 27.into());
        assert_eq!(rs("E8").weyl_dimension(&[0, 0, 0, 0, 0, 0, 0, 1]).unwrap(), 248.into());
        assert_eq!(rs("G2").weyl_dimension(&[1, 0]).unwrap(), 7.into());
        assert_eq!(rs("B2").weyl_dimension(&[0, 1]).unwrap(), 4.into());
        assert_eq!(rs("E7").weyl_dimension(&[0, 0, 0, 1, 0, 0, 0]).unwrap(), 365750.into());
    }

    #[test]
    fn decompositions_use_smallest_simple_root() {
        let r = rs("B3");
        for (k, xi) in r.positive_roots.iter().enumerate() {
            if let Some(d) = r.decomposition(k) {
                let mut beta = xi.clone();
                beta[d.simple] -= 1;
                assert_eq!(r.positive_roots[d.rest], beta);
                for i in 0..d.simple {
                    let mut b = xi.clone();
                    b[i] -= 1;
                    assert!(r.root_index(&b).is_none());
                }
            }
        }
    }

    #[test]
    fn dynkin_pictures() {
        assert_eq!(dynkin_ascii("F4".parse().unwrap(), &[2, 3, 2, 1]), "2 - 3 => 2 - 1");
        assert_eq!(dynkin_ascii("A3".parse().unwrap(), &[1, 1, 1]), "1 - 1 - 1");
        let e6 = dynkin_ascii("E6".parse().unwrap(), &[1, 2, 2, 3, 2, 1]);
        assert_eq!(e6, "1 - 2 - 3 - 2 - 1\n        |\n        2");
    }

    fn arb_weight(l: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-4i64..5, l)
    }

    proptest! {
        #[test]
        fn dominant_conjugate_is_weyl_invariant(mu in arb_weight(4), word in proptest::collection::vec(0usize..4, 0..12)) {
            for name in ["A4", "B4", "C4", "D4", "F4"] {
                let r = rs(name);
                let d = r.dominant_conjugate(&mu);
                prop_assert!(RootSystem::is_dominant(&d));
                prop_assert_eq!(r.dominant_conjugate(&d), d.clone());
                let mut m = mu.clone();
                for &i in &word {
                    m = r.reflect(&m, i);
                }
                prop_assert_eq!(r.dominant_conjugate(&m), d);
            }
        }

        #[test]
        fn weight_root_conversion_roundtrips(c in proptest::collection::vec(-5i64..6, 8)) {
            for name in ["E8", "B8", "C8", "D8", "A8"] {
                let r = rs(name);
                let w = r.root_to_weight(&c);
                prop_assert_eq!(r.weight_to_root_int(&w), Some(c.clone()));
            }
        }
    }
}
