//! Irreducible highest-weight modules with exact generator actions.
//!
//! The module is grown weight space by weight space from `v_lambda`. For a
//! new weight `mu` every vector `f_i w` (with `w` a basis vector of weight
//! `mu + alpha_i`) is a candidate. A vector of weight `mu != lambda` in an
//! irreducible module vanishes iff every `e_j` kills it, so linear relations
//! among candidates are exactly the relations among their images under
//! `sum_j e_j`; these images are computable from the part already built via
//! `e_j f_i w = f_i e_j w + delta_ij <mu + alpha_i, alpha_i^vee> w`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::chevalley::BasisIndex;
use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Insert, SVec, SparseMat};
use crate::rational::{q, Q};
use crate::rootsys::{RootSystem, WeightVec};

pub const DEFAULT_DIM_CAP: usize = 20000;

#[derive(Debug)]
pub struct RepModule {
    pub rs: Arc<RootSystem>,
    pub highest_weight: WeightVec,
    pub dim: usize,
    /// Distinct weights in construction order; basis vectors of one weight are contiguous.
    pub weights: Vec<WeightVec>,
    /// Index into `weights` for each basis vector.
    pub basis_weight: Vec<usize>,
    /// Basis range of each weight space.
    pub spaces: Vec<std::ops::Range<usize>>,
    /// f-word generating each basis vector, in order of application.
    pub words: Vec<Vec<usize>>,
    /// Action of `e_j`.
    pub e: Vec<SparseMat>,
    /// Action of `f_i`.
    pub f: Vec<SparseMat>,
    pub hw_index: usize,
    pub lw_index: usize,
    weight_index: HashMap<WeightVec, usize>,
    full: OnceLock<Vec<SparseMat>>,
}

/// Dimension of `V_lambda` by the Weyl dimension formula.
pub fn weyl_dimension(rs: &RootSystem, lambda: &[i64]) -> Result<BigInt> {
    rs.weyl_dimension(lambda)
}

/// Builds `V_lambda`, refusing when its dimension exceeds `dim_cap`.
pub fn build_irrep(rs: &Arc<RootSystem>, lambda: &[i64], dim_cap: usize) -> Result<RepModule> {
    let l = rs.rank();
    if lambda.len() != l {
        return Err(Error::OutOfRange(format!("weight {lambda:?} has wrong length for rank {l}")));
    }
    let expected = rs.weyl_dimension(lambda)?;
    if expected > BigInt::from(dim_cap) {
        return Err(Error::OverCap { weight: lambda.to_vec(), dim: expected.to_string(), cap: dim_cap });
    }
    let expected = expected.to_usize().expect("dimension fits");

    let alpha_w: Vec<WeightVec> = (0..l).map(|i| rs.cartan[i].clone()).collect();
    let sub = |m: &WeightVec, i: usize| -> WeightVec { m.iter().zip(&alpha_w[i]).map(|(a, b)| a - b).collect() };
    let add = |m: &WeightVec, i: usize| -> WeightVec { m.iter().zip(&alpha_w[i]).map(|(a, b)| a + b).collect() };

    let mut weights: Vec<WeightVec> = vec![lambda.to_vec()];
    let mut spaces: Vec<std::ops::Range<usize>> = std::iter::once(0..1).collect();
    let mut basis_weight = vec![0usize];
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut weight_index: HashMap<WeightVec, usize> = HashMap::new();
    weight_index.insert(lambda.to_vec(), 0);
    // image of each basis vector under sum_j e_j, and under each f_i
    let mut etot: Vec<SVec> = vec![Vec::new()];
    let mut fcols: Vec<Vec<SVec>> = vec![Vec::new(); l];
    let mut level: Vec<usize> = vec![0];
    let mut dim = 1usize;

    while !level.is_empty() {
        // candidate weights one step below the current level, ordered by depth
        let mut next: BTreeSet<(std::cmp::Reverse<Vec<i64>>, WeightVec)> = BTreeSet::new();
        let mut tried: HashSet<WeightVec> = HashSet::new();
        for &w in &level {
            for i in 0..l {
                let mu = sub(&weights[w], i);
                if weight_index.contains_key(&mu) || !tried.insert(mu.clone()) {
                    continue;
                }
                if rs.is_weight_of(&mu, lambda)? {
                    let depth: Vec<i64> = lambda.iter().zip(&mu).map(|(a, b)| a - b).collect();
                    let depth = rs.weight_to_root_int(&depth).expect("root lattice");
                    next.insert((std::cmp::Reverse(depth), mu));
                }
            }
        }
        // F_i columns for the current level are produced while building the next one
        let mut new_level = Vec::new();
        for (_, mu) in next {
            let start = dim;
            let mut ech = Echelon::new();
            let mut chosen: Vec<usize> = Vec::new();
            let mut pending: Vec<(usize, usize, Option<usize>, SVec)> = Vec::new();
            for i in 0..l {
                let up = add(&mu, i);
                let Some(&wu) = weight_index.get(&up) else { continue };
                let c = q(up[i]);
                for b in spaces[wu].clone() {
                    let mut sig = if etot[b].is_empty() { Vec::new() } else { apply_cols(&fcols[i], &etot[b]) };
                    sig = linalg::axpy(&sig, &c, &vec![(b, Q::one())]);
                    match ech.insert(&sig) {
                        Insert::New(id) => {
                            debug_assert_eq!(id, chosen.len());
                            chosen.push(pending.len());
                            pending.push((i, b, Some(id), sig));
                        }
                        Insert::Dependent(comb) => pending.push((i, b, None, comb)),
                    }
                }
            }
            if chosen.is_empty() {
                // every candidate vanished; the weight does not occur
                for (i, b, _, _) in pending {
                    set_col(&mut fcols[i], b, Vec::new());
                }
                continue;
            }
            let wid = weights.len();
            weights.push(mu.clone());
            weight_index.insert(mu, wid);
            spaces.push(start..start + chosen.len());
            for &p in &chosen {
                let (i, b, _, sig) = &pending[p];
                basis_weight.push(wid);
                let mut word = words[*b].clone();
                word.push(*i);
                words.push(word);
                etot.push(sig.clone());
                dim += 1;
            }
            for (i, b, id, data) in pending {
                let col = match id {
                    Some(id) => vec![(start + id, Q::one())],
                    None => data.iter().map(|(k, c)| (start + k, c.clone())).collect(),
                };
                set_col(&mut fcols[i], b, col);
            }
            new_level.push(wid);
            if dim > expected {
                return Err(Error::Internal(format!("module for {lambda:?} exceeds its Weyl dimension {expected}")));
            }
        }
        level = new_level;
    }
    if dim != expected {
        return Err(Error::Internal(format!("built dimension {dim} differs from Weyl dimension {expected}")));
    }

    let mut e: Vec<SparseMat> = (0..l).map(|_| SparseMat::zero(dim, dim)).collect();
    for (b, col) in etot.into_iter().enumerate() {
        let here = &weights[basis_weight[b]];
        let mut parts: Vec<SVec> = vec![Vec::new(); l];
        for (k, c) in col {
            let target = &weights[basis_weight[k]];
            let j = (0..l)
                .find(|&j| (0..l).all(|t| target[t] == here[t] + alpha_w[j][t]))
                .expect("e_j raises by a simple root");
            parts[j].push((k, c));
        }
        for (j, p) in parts.into_iter().enumerate() {
            e[j].cols[b] = p;
        }
    }
    let f = fcols
        .into_iter()
        .map(|mut cols| {
            cols.resize(dim, Vec::new());
            SparseMat { nrows: dim, cols }
        })
        .collect();

    Ok(RepModule {
        rs: rs.clone(),
        highest_weight: lambda.to_vec(),
        dim,
        weights,
        basis_weight,
        spaces,
        words,
        e,
        f,
        hw_index: 0,
        lw_index: dim - 1,
        weight_index,
        full: OnceLock::new(),
    })
}

fn set_col(cols: &mut Vec<SVec>, b: usize, v: SVec) {
    if cols.len() <= b {
        cols.resize(b + 1, Vec::new());
    }
    cols[b] = v;
}

fn apply_cols(cols: &[SVec], v: &SVec) -> SVec {
    let mut acc = linalg::Acc::new();
    for (j, x) in v {
        if let Some(c) = cols.get(*j) {
            acc.add_scaled(c, x);
        }
    }
    acc.finish()
}

impl RepModule {
    pub fn weight_of(&self, b: usize) -> &WeightVec {
        &self.weights[self.basis_weight[b]]
    }

    pub fn weight_space(&self, mu: &[i64]) -> Option<std::ops::Range<usize>> {
        self.weight_index.get(mu).map(|&w| self.spaces[w].clone())
    }

    pub fn multiplicity(&self, mu: &[i64]) -> usize {
        self.weight_space(mu).map(|r| r.len()).unwrap_or(0)
    }

    /// Diagonal action of the simple coroot `h_i`.
    pub fn h(&self, i: usize) -> SparseMat {
        SparseMat {
            nrows: self.dim,
            cols: (0..self.dim)
                .map(|b| {
                    let c = self.weight_of(b)[i];
                    if c == 0 {
                        Vec::new()
                    } else {
                        vec![(b, q(c))]
                    }
                })
                .collect(),
        }
    }

    /// Matrices of every Chevalley basis element, in flat order.
    ///
    /// Root vectors follow the recursion `e_xi = [e_i, e_beta] / n`,
    /// `f_xi = [f_beta, f_i] / n` from [`RootSystem::decomposition`].
    pub fn full_action(&self) -> &[SparseMat] {
        self.full.get_or_init(|| {
            let rs = &*self.rs;
            let np = rs.num_positive();
            let mut pos: Vec<SparseMat> = Vec::with_capacity(np);
            let mut neg: Vec<SparseMat> = Vec::with_capacity(np);
            for a in 0..np {
                match rs.decomposition(a) {
                    None => {
                        pos.push(self.e[a].clone());
                        neg.push(self.f[a].clone());
                    }
                    Some(d) => {
                        let inv = Q::new(1, d.n);
                        pos.push(self.e[d.simple].commutator(&pos[d.rest]).scale(&inv));
                        neg.push(neg[d.rest].commutator(&self.f[d.simple]).scale(&inv));
                    }
                }
            }
            let mut out = neg;
            out.extend((0..rs.rank()).map(|i| self.h(i)));
            out.extend(pos);
            out
        })
    }

    pub fn action(&self, idx: BasisIndex) -> &SparseMat {
        &self.full_action()[idx.flat(&self.rs)]
    }

    /// `x . v` for `x` given in flat Chevalley coordinates.
    pub fn act(&self, x: &SVec, v: &SVec) -> SVec {
        let full = self.full_action();
        let mut acc = linalg::Acc::new();
        for (a, c) in x {
            acc.add_scaled(&full[*a].apply(v), c);
        }
        acc.finish()
    }

    /// Matrix of `sum_a x_a rho(a)`.
    pub fn matrix_of(&self, x: &SVec) -> SparseMat {
        let full = self.full_action();
        let mut m = SparseMat::zero(self.dim, self.dim);
        for (a, c) in x {
            m = m.add_scaled(&full[*a], c);
        }
        m
    }

    pub fn unit(&self, b: usize) -> SVec {
        vec![(b, Q::one())]
    }

    /// Coefficient of the highest-weight basis vector: the pairing with the
    /// lowest-weight vector of the dual module, normalized by `<v^k, v_k> = 1`.
    pub fn pair_highest(&self, v: &SVec) -> Q {
        linalg::coeff(v, self.hw_index)
    }

    /// Coefficient of the lowest-weight basis vector.
    pub fn pair_lowest(&self, v: &SVec) -> Q {
        linalg::coeff(v, self.lw_index)
    }

    /// Applies a nonzero multiple of `f_alpha` (positive root index `a`),
    /// splitting `alpha` into two roots of nearly equal height at each step so
    /// the number of simple-generator applications grows quadratically in the height.
    pub fn apply_neg_root_unnormalized(&self, a: usize, v: &SVec) -> SVec {
        let rs = &*self.rs;
        let alpha = &rs.positive_roots[a];
        let h = RootSystem::height(alpha);
        if h == 1 {
            let i = alpha.iter().position(|&x| x == 1).expect("simple root");
            return self.f[i].apply(v);
        }
        let mut best: Option<(i64, usize, usize)> = None;
        for (g, gamma) in rs.positive_roots.iter().enumerate() {
            let hg = RootSystem::height(gamma);
            if hg >= h {
                break;
            }
            let delta: Vec<i64> = alpha.iter().zip(gamma).map(|(x, y)| x - y).collect();
            if let Some(d) = rs.root_index(&delta) {
                let score = (h - 2 * hg).abs();
                if best.is_none_or(|(s, _, _)| score < s) {
                    best = Some((score, g, d));
                }
            }
        }
        let (_, g, d) = best.expect("non-simple root splits");
        let gd = self.apply_neg_root_unnormalized(g, &self.apply_neg_root_unnormalized(d, v));
        let dg = self.apply_neg_root_unnormalized(d, &self.apply_neg_root_unnormalized(g, v));
        linalg::axpy(&gd, &-Q::one(), &dg)
    }

    /// Largest `r` with `f_theta^r v_lambda != 0`.
    pub fn max_theta_power(&self) -> usize {
        let theta = self.rs.theta_index();
        let mut v = self.unit(self.hw_index);
        let mut r = 0;
        loop {
            v = self.apply_neg_root_unnormalized(theta, &v);
            if v.is_empty() {
                return r;
            }
            r += 1;
        }
    }

    /// Whether `mu` occurs as a weight.
    pub fn has_weight(&self, mu: &[i64]) -> bool {
        self.weight_index.contains_key(mu)
    }
}
