//! Chevalley basis with exact structure constants.
//!
//! Flat order: `f_alpha` for positive roots in canonical order, then `h_1..h_l`,
//! then `e_alpha` in canonical order. For a non-simple root `xi` with
//! decomposition `xi = alpha_i + beta` (smallest `i`), `e_xi = [e_i, e_beta]/(p+1)`
//! and `f_xi = [f_beta, f_i]/(p+1)`, so `N_{alpha_i, beta} = p + 1 > 0` on every
//! extraspecial pair and `f_alpha = -omega(e_alpha)` for the Chevalley involution.
//! The table is read off the adjoint module built by [`crate::repbuild`] and
//! checked entry by entry against the matrix commutators.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Acc, Mat, SVec, SparseMat};
use crate::polyring::LieBracket;
use crate::rational::{q, Q};
use crate::repbuild;
use crate::rootsys::{RootSystem, RootVec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BasisIndex {
    /// `h_i`.
    Cartan(usize),
    /// `e_alpha`, by positive-root index.
    PosRoot(usize),
    /// `f_alpha`, by positive-root index.
    NegRoot(usize),
}

impl BasisIndex {
    pub fn flat(&self, rs: &RootSystem) -> usize {
        let np = rs.num_positive();
        match *self {
            BasisIndex::NegRoot(a) => a,
            BasisIndex::Cartan(i) => np + i,
            BasisIndex::PosRoot(a) => np + rs.rank() + a,
        }
    }

    pub fn from_flat(rs: &RootSystem, k: usize) -> BasisIndex {
        let np = rs.num_positive();
        let l = rs.rank();
        if k < np {
            BasisIndex::NegRoot(k)
        } else if k < np + l {
            BasisIndex::Cartan(k - np)
        } else {
            BasisIndex::PosRoot(k - np - l)
        }
    }
}

pub fn lie_dim(rs: &RootSystem) -> usize {
    rs.rank() + 2 * rs.num_positive()
}

/// Which invariant bilinear form to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Form {
    /// `tr(ad x ad y)`.
    Killing,
    /// Normalized so long roots have squared length 2 on the dual Cartan.
    Normalized,
}

#[derive(Debug, Clone)]
pub struct ChevalleyBasis {
    pub rs: Arc<RootSystem>,
    dim: usize,
    /// `table[a * dim + b] = [x_a, x_b]`.
    table: Vec<Vec<(usize, i64)>>,
    weights: Vec<RootVec>,
}

/// Builds the Chevalley basis of the Lie algebra of `rs`.
pub fn build_chevalley(rs: &Arc<RootSystem>) -> Result<ChevalleyBasis> {
    let l = rs.rank();
    let np = rs.num_positive();
    let dim = lie_dim(rs);
    let adj = repbuild::build_irrep(rs, &rs.theta_weight(), usize::MAX)?;
    if adj.dim != dim {
        return Err(Error::Internal("adjoint module has the wrong dimension".into()));
    }
    let rho = adj.full_action();

    let mut weights: Vec<RootVec> = Vec::with_capacity(dim);
    for a in 0..np {
        weights.push(rs.positive_roots[a].iter().map(|x| -x).collect());
    }
    for _ in 0..l {
        weights.push(vec![0; l]);
    }
    weights.extend(rs.positive_roots.iter().cloned());

    let flat_of_weight = |w: &[i64]| -> Option<usize> {
        if let Some(a) = rs.root_index(w) {
            return Some(BasisIndex::PosRoot(a).flat(rs));
        }
        let neg: Vec<i64> = w.iter().map(|x| -x).collect();
        rs.root_index(&neg).map(|a| BasisIndex::NegRoot(a).flat(rs))
    };

    let mut table: Vec<Vec<(usize, i64)>> = vec![Vec::new(); dim * dim];
    for a in 0..dim {
        for b in a + 1..dim {
            let w: Vec<i64> = weights[a].iter().zip(&weights[b]).map(|(x, y)| x + y).collect();
            let (ka, kb) = (BasisIndex::from_flat(rs, a), BasisIndex::from_flat(rs, b));
            let entry: Vec<(usize, i64)> = match (ka, kb) {
                (BasisIndex::Cartan(_), BasisIndex::Cartan(_)) => Vec::new(),
                (BasisIndex::NegRoot(_), BasisIndex::Cartan(i)) => {
                    let c = rs.root_to_weight(&weights[a])[i];
                    if c == 0 {
                        Vec::new()
                    } else {
                        vec![(a, -c)]
                    }
                }
                (BasisIndex::Cartan(i), BasisIndex::PosRoot(_)) => {
                    let c = rs.root_to_weight(&weights[b])[i];
                    if c == 0 {
                        Vec::new()
                    } else {
                        vec![(b, c)]
                    }
                }
                _ => {
                    let comm = rho[a].commutator(&rho[b]);
                    if w.iter().all(|&x| x == 0) {
                        // [f_alpha, e_alpha] = -h_alpha
                        let BasisIndex::NegRoot(r) = ka else { unreachable!() };
                        let cor = rs.coroot(&rs.positive_roots[r]);
                        let entry: Vec<(usize, i64)> =
                            (0..l).filter(|&i| cor[i] != 0).map(|i| (np + i, -cor[i])).collect();
                        let mut expect = SparseMat::zero(dim, dim);
                        for (k, c) in &entry {
                            expect = expect.add_scaled(&rho[*k], &q(*c));
                        }
                        if expect != comm {
                            return Err(Error::Internal(format!("[x_{a}, x_{b}] is not -h_alpha")));
                        }
                        entry
                    } else if let Some(t) = flat_of_weight(&w) {
                        let (pi, pj, pv) = pivot(&rho[t]).expect("root vectors act nontrivially");
                        let c = &comm.get(pi, pj) / &pv;
                        if rho[t].scale(&c) != comm {
                            return Err(Error::Internal(format!("[x_{a}, x_{b}] is not a multiple of x_{t}")));
                        }
                        if c.is_zero() {
                            Vec::new()
                        } else {
                            let n = c.to_i64().ok_or_else(|| {
                                Error::Internal(format!("non-integral constant {c} for [x_{a}, x_{b}]"))
                            })?;
                            vec![(t, n)]
                        }
                    } else {
                        if !comm.is_zero() {
                            return Err(Error::Internal(format!("[x_{a}, x_{b}] should vanish")));
                        }
                        Vec::new()
                    }
                }
            };
            table[b * dim + a] = entry.iter().map(|&(k, c)| (k, -c)).collect();
            table[a * dim + b] = entry;
        }
    }
    Ok(ChevalleyBasis { rs: rs.clone(), dim, table, weights })
}

fn pivot(m: &SparseMat) -> Option<(usize, usize, Q)> {
    m.cols.iter().enumerate().find_map(|(j, c)| c.first().map(|(i, x)| (*i, j, x.clone())))
}

impl ChevalleyBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn flat(&self, idx: BasisIndex) -> usize {
        idx.flat(&self.rs)
    }

    pub fn index(&self, k: usize) -> BasisIndex {
        BasisIndex::from_flat(&self.rs, k)
    }

    pub fn e(&self, a: usize) -> usize {
        self.flat(BasisIndex::PosRoot(a))
    }

    pub fn f(&self, a: usize) -> usize {
        self.flat(BasisIndex::NegRoot(a))
    }

    pub fn h(&self, i: usize) -> usize {
        self.flat(BasisIndex::Cartan(i))
    }

    /// Weight of a basis element in simple-root coordinates.
    pub fn weight(&self, k: usize) -> &RootVec {
        &self.weights[k]
    }

    /// Human-readable name: `h1`, `e3`, `f3` (1-based).
    pub fn name(&self, k: usize) -> String {
        match self.index(k) {
            BasisIndex::Cartan(i) => format!("h{}", i + 1),
            BasisIndex::PosRoot(a) => format!("e{}", a + 1),
            BasisIndex::NegRoot(a) => format!("f{}", a + 1),
        }
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim + b]
    }

    /// `[x, y]` for vectors in flat coordinates.
    pub fn bracket(&self, x: &SVec, y: &SVec) -> Result<SVec> {
        let bad = |v: &SVec| v.last().is_some_and(|(k, _)| *k >= self.dim);
        if bad(x) || bad(y) {
            return Err(Error::BasisMismatch);
        }
        let mut acc = Acc::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let prod = ca * cb;
                for (k, n) in self.bracket_basis(*a, *b) {
                    acc.add(*k, &prod * &q(*n));
                }
            }
        }
        Ok(acc.finish())
    }

    /// Structure constant `N_{alpha,beta}` with `[e_alpha, e_beta] = N e_{alpha+beta}`.
    pub fn structure_constant(&self, alpha: usize, beta: usize) -> i64 {
        let entry = self.bracket_basis(self.e(alpha), self.e(beta));
        entry.first().map(|(_, n)| *n).unwrap_or(0)
    }

    /// `ad(x_a)` as a sparse matrix: column `b` is `[x_a, x_b]`.
    pub fn ad_sparse(&self, a: usize) -> SparseMat {
        SparseMat {
            nrows: self.dim,
            cols: (0..self.dim).map(|b| self.bracket_basis(a, b).iter().map(|&(k, n)| (k, q(n))).collect()).collect(),
        }
    }

    /// Dense matrix of `ad(x)` for a basis element.
    pub fn adjoint_matrix(&self, idx: BasisIndex) -> Mat {
        self.ad_sparse(self.flat(idx)).to_dense()
    }

    /// `ad(x)` for a general element.
    pub fn ad_of(&self, x: &SVec) -> SparseMat {
        let mut m = SparseMat::zero(self.dim, self.dim);
        for (a, c) in x {
            m = m.add_scaled(&self.ad_sparse(*a), c);
        }
        m
    }

    /// `exp(t ad x_a) v`, a finite sum because root vectors act nilpotently.
    pub fn exp_ad(&self, a: usize, t: &Q, v: &SVec) -> Result<SVec> {
        if let BasisIndex::Cartan(_) = self.index(a) {
            return Err(Error::NotNilpotent);
        }
        let mut out = v.clone();
        let mut term = v.clone();
        let mut k = 0i64;
        loop {
            k += 1;
            if k > 8 {
                return Err(Error::NotNilpotent);
            }
            let mut next = Acc::new();
            for (b, c) in &term {
                for (t2, n) in self.bracket_basis(a, *b) {
                    next.add(*t2, c * &q(*n));
                }
            }
            term = linalg::scale(&next.finish(), &(t / &q(k)));
            if term.is_empty() {
                return Ok(out);
            }
            out = linalg::axpy(&out, &Q::one(), &term);
        }
    }

    /// `exp(ad x) v` for a nilpotent `x`, summing until the terms vanish.
    pub fn exp_ad_vec(&self, x: &SVec, v: &SVec) -> Result<SVec> {
        let mut out = v.clone();
        let mut term = v.clone();
        for k in 1..=(2 * self.dim as i64 + 2) {
            term = linalg::scale(&self.bracket(x, &term)?, &Q::new(1, k));
            if term.is_empty() {
                return Ok(out);
            }
            out = linalg::axpy(&out, &Q::one(), &term);
        }
        Err(Error::NotNilpotent)
    }

    /// Value of an invariant form on two basis elements.
    pub fn form(&self, a: usize, b: usize, form: Form) -> Q {
        let rs = &*self.rs;
        let base = match (self.index(a), self.index(b)) {
            (BasisIndex::PosRoot(x), BasisIndex::NegRoot(y)) | (BasisIndex::NegRoot(y), BasisIndex::PosRoot(x))
                if x == y =>
            {
                q(2) / rs.len2(&rs.positive_roots[x])
            }
            (BasisIndex::Cartan(i), BasisIndex::Cartan(j)) => {
                q(4) * &rs.gram()[i][j] / (&rs.root_len2[i] * &rs.root_len2[j])
            }
            _ => Q::zero(),
        };
        match form {
            Form::Normalized => base,
            Form::Killing => base * q(2 * rs.dual_coxeter),
        }
    }

    /// Gram matrix of an invariant form in the flat basis.
    pub fn form_matrix(&self, form: Form) -> Mat {
        (0..self.dim).map(|a| (0..self.dim).map(|b| self.form(a, b, form)).collect()).collect()
    }

    /// `(alpha, alpha)` under the form dual to `form` on the Cartan subalgebra.
    pub fn root_norm(&self, alpha: &[i64], form: Form) -> Q {
        let n = self.rs.len2(alpha);
        match form {
            Form::Normalized => n,
            Form::Killing => n / q(2 * self.rs.dual_coxeter),
        }
    }

    /// The structure table as `(i, j, k, c)` with `[x_i, x_j] = sum c x_k`, `i < j`.
    pub fn structure_triples(&self) -> Vec<(usize, usize, usize, i64)> {
        let mut out = Vec::new();
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for &(k, c) in self.bracket_basis(a, b) {
                    out.push((a, b, k, c));
                }
            }
        }
        out
    }

    /// Jacobi identity on one triple of basis elements.
    pub fn jacobi(&self, a: usize, b: usize, c: usize) -> SVec {
        let u = |k: usize| vec![(k, Q::one())];
        let t1 = self.bracket(&u(a), &self.bracket(&u(b), &u(c)).unwrap()).unwrap();
        let t2 = self.bracket(&u(b), &self.bracket(&u(c), &u(a)).unwrap()).unwrap();
        let t3 = self.bracket(&u(c), &self.bracket(&u(a), &u(b)).unwrap()).unwrap();
        linalg::axpy(&linalg::axpy(&t1, &Q::one(), &t2), &Q::one(), &t3)
    }

    /// Checks Jacobi on all triples when `dim <= exhaustive_limit`, otherwise on
    /// `random` seeded triples; returns the first failing triple.
    pub fn check_jacobi(&self, exhaustive_limit: usize, random: usize, seed: u64) -> Option<(usize, usize, usize)> {
        if self.dim <= exhaustive_limit {
            for a in 0..self.dim {
                for b in a + 1..self.dim {
                    for c in b + 1..self.dim {
                        if !self.jacobi(a, b, c).is_empty() {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..random {
            let (a, b, c) = (rng.gen_range(0..self.dim), rng.gen_range(0..self.dim), rng.gen_range(0..self.dim));
            if !self.jacobi(a, b, c).is_empty() {
                return Some((a, b, c));
            }
        }
        None
    }
}

impl LieBracket for ChevalleyBasis {
    fn lie_dim(&self) -> usize {
        self.dim
    }

    fn basis_bracket(&self, a: usize, b: usize) -> SVec {
        self.bracket_basis(a, b).iter().map(|&(k, n)| (k, q(n))).collect()
    }
}

/// The G2 basis `{H1, H2, X1..X6, Y1..Y6}` used in the worked G2 example,
/// expressed in this crate's Chevalley basis.
///
/// `X_i` is the root vector of, in order, `a1, a2, a1+a2, 2a1+a2, 3a1+a2,
/// 3a1+2a2` (which is also the canonical order here), scaled by a sign;
/// `Y_i` carries the same sign so that `[X_i, Y_i]` is the coroot. The signs
/// were fixed by requiring the brackets of the example:
/// `[Y2,X6] = -X5`, `[Y3,X6] = -X4`, `[Y4,X6] = X3`, `[Y5,X6] = X2`,
/// `[Y6,X6] = -(H1+2H2)`, `[X2,X5] = -X6`, `[X3,X4] = -3X6`.
#[derive(Debug, Clone)]
pub struct G2Frame {
    pub h: [SVec; 2],
    pub x: [SVec; 6],
    pub y: [SVec; 6],
}

/// Signs relating the example's `X_i` to `e_{alpha_i}`.
pub const G2_FRAME_SIGNS: [i64; 6] = [1, -1, 1, 1, 1, 1];

pub fn g2_frame(cb: &ChevalleyBasis) -> Result<G2Frame> {
    if cb.rs.ty != "G2".parse()? {
        return Err(Error::BasisMismatch);
    }
    let one = |k: usize, s: i64| vec![(k, q(s))];
    Ok(G2Frame {
        h: [one(cb.h(0), 1), one(cb.h(1), 1)],
        x: std::array::from_fn(|i| one(cb.e(i), G2_FRAME_SIGNS[i])),
        y: std::array::from_fn(|i| one(cb.f(i), G2_FRAME_SIGNS[i])),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::build_root_system;

    fn cb(s: &str) -> ChevalleyBasis {
        let rs = Arc::new(build_root_system(s.parse().unwrap()).unwrap());
        build_chevalley(&rs).unwrap()
    }

    #[test]
    fn sl2_brackets() {
        let c = cb("A1");
        let (f, h, e) = (0, 1, 2);
        assert_eq!(c.bracket_basis(e, f), &[(h, 1)]);
        assert_eq!(c.bracket_basis(h, e), &[(e, 2)]);
        assert_eq!(c.bracket_basis(h, f), &[(f, -2)]);
    }

    #[test]
    fn simple_generators_bracket_to_coroots() {
        for name in ["B3", "G2", "F4", "C3"] {
            let c = cb(name);
            for i in 0..c.rank() {
                assert_eq!(c.bracket_basis(c.e(i), c.f(i)), &[(c.h(i), 1)]);
            }
        }
    }

    #[test]
    fn extraspecial_signs_positive() {
        let c = cb("F4");
        let rs = c.rs.clone();
        for xi in 0..rs.num_positive() {
            if let Some(d) = rs.decomposition(xi) {
                assert_eq!(c.structure_constant(d.simple, d.rest), d.n);
            }
        }
    }

    #[test]
    fn g2_jacobi_exhaustive() {
        let c = cb("G2");
        assert_eq!(c.dim(), 14);
        assert_eq!(c.check_jacobi(100, 0, 0), None);
    }

    #[test]
    fn exp_ad_of_theta_is_quadratic() {
        let c = cb("B3");
        let theta = c.e(c.rs.theta_index());
        let ad = c.ad_sparse(theta);
        let ad2 = ad.mul(&ad);
        let ad3 = ad2.mul(&ad);
        assert!(ad3.is_zero());
        for a in 0..c.rs.num_positive() {
            assert!(ad2.apply(&vec![(c.e(a), Q::one())]).is_empty());
        }
    }
}
