//! Hamiltonians of the integrable system on the minimal nilpotent orbit.
//!
//! `f_{n,k}(x) = <v^k, x^n v_k>` where `x` acts through `V_{w_k}` and `v^k`
//! reads the coefficient of the highest-weight vector (normalized by
//! `<v^k, v_k> = 1`). Coordinates `x_a` are the coefficients of `x` in the
//! flat Chevalley basis.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chevalley::{BasisIndex, ChevalleyBasis};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, SVec, SparseMat};
use crate::polyring::{Mono, Poly};
use crate::rational::{q, qr, Q};
use crate::repbuild::{self, RepModule};
use crate::rootsys::{Family, RootSystem, SimpleType};

/// Checks that `rep` is the fundamental module of node `k`.
fn check_fundamental(rs: &RootSystem, rep: &RepModule, k: usize) -> Result<()> {
    if k >= rs.rank() {
        return Err(Error::BadNode { node: k + 1, rank: rs.rank() });
    }
    if rep.rs.ty != rs.ty || rep.highest_weight != rs.fundamental_weight(k) {
        return Err(Error::BasisMismatch);
    }
    Ok(())
}

/// `f_{n,k}` as a polynomial in the flat Chevalley coordinates.
pub fn hamiltonian_poly(cb: &ChevalleyBasis, k: usize, n: u32, rep: &RepModule) -> Result<Poly> {
    let rs = &*cb.rs;
    check_fundamental(rs, rep, k)?;
    let dim = cb.dim();
    let full = rep.full_action();
    let theta_height = RootSystem::height(&rs.highest_root);
    let lambda = &rep.highest_weight;
    let depth_height = |b: usize| -> i64 {
        let d: Vec<i64> = lambda.iter().zip(rep.weight_of(b)).map(|(a, c)| a - c).collect();
        rs.weight_to_root_int(&d).expect("root lattice").iter().sum()
    };
    let heights: Vec<i64> = (0..rep.dim).map(depth_height).collect();

    let mut state: BTreeMap<usize, Poly> = BTreeMap::new();
    state.insert(rep.hw_index, Poly::constant(dim, Q::one()));
    for step in 1..=n {
        let remaining = (n - step) as i64;
        let mut next: BTreeMap<usize, Poly> = BTreeMap::new();
        for (&b, pb) in &state {
            for (a, m) in full.iter().enumerate() {
                let xa = Mono::var(a);
                for (i, c) in &m.cols[b] {
                    let keep =
                        if remaining == 0 { *i == rep.hw_index } else { heights[*i] <= remaining * theta_height };
                    if keep {
                        next.entry(*i).or_insert_with(|| Poly::zero(dim)).add_scaled(&pb.mul_mono(&xa, c), &Q::one());
                    }
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        state = next;
    }
    Ok(state.remove(&rep.hw_index).unwrap_or_else(|| Poly::zero(dim)))
}

/// `[f_{1,k}(x), ..., f_{nmax,k}(x)]` at a point, by matrix-vector products.
pub fn hamiltonian_values(rep: &RepModule, x: &SVec, nmax: u32) -> Vec<Q> {
    let m = rep.matrix_of(x);
    let mut v = rep.unit(rep.hw_index);
    let mut out = Vec::with_capacity(nmax as usize);
    for _ in 0..nmax {
        v = m.apply(&v);
        out.push(rep.pair_highest(&v));
    }
    out
}

/// The linear form `w_k`: `x_{h_k}`.
pub fn linear_closed_form(cb: &ChevalleyBasis, k: usize) -> Poly {
    Poly::var(cb.dim(), cb.h(k))
}

/// `x_{h_k}^2 + sum_{alpha not in R_{P_k}} <w_k, alpha^vee> x_{e_alpha} x_{f_alpha}`.
pub fn quadratic_closed_form(cb: &ChevalleyBasis, k: usize) -> Poly {
    let rs = &*cb.rs;
    let dim = cb.dim();
    let mut p = Poly::var(dim, cb.h(k)).pow(2);
    let w = rs.fundamental_weight(k);
    for a in rs.non_levi_roots(k) {
        let c = rs.pair(&w, &rs.positive_roots[a]);
        p.add_term(Mono::from_pairs(&[(cb.e(a), 1), (cb.f(a), 1)]), q(c));
    }
    p
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MMethod {
    /// `<w_k, theta^vee>`.
    Sl2,
    /// Largest `r` with `w_k - r theta` a weight of `V_{w_k}`, by dominant conjugates.
    Dominance,
    /// Largest `r` with `f_theta^r v_k != 0` in the constructed module.
    Rep,
}

/// `m_k` by the chosen method.
pub fn m_number(rs: &Arc<RootSystem>, k: usize, method: MMethod, dim_cap: usize) -> Result<i64> {
    if k >= rs.rank() {
        return Err(Error::BadNode { node: k + 1, rank: rs.rank() });
    }
    match method {
        MMethod::Sl2 => Ok(rs.comarks[k]),
        MMethod::Dominance => Ok(lattice_m(rs, k, |mu, lam| rs.is_weight_of(mu, lam).unwrap())),
        MMethod::Rep => {
            let rep = repbuild::build_irrep(rs, &rs.fundamental_weight(k), dim_cap)?;
            Ok(rep.max_theta_power() as i64)
        }
    }
}

/// `m_k` by the sandwich test `w0 w_k <= w_k - r theta <= w_k`, which treats
/// the two dominance inequalities as sufficient for being a weight.
pub fn m_number_sandwich(rs: &RootSystem, k: usize) -> i64 {
    lattice_m(rs, k, |mu, lam| rs.between_extremes(mu, lam))
}

fn lattice_m(rs: &RootSystem, k: usize, is_weight: impl Fn(&[i64], &[i64]) -> bool) -> i64 {
    let w = rs.fundamental_weight(k);
    let th = rs.theta_weight();
    let mut r = 0;
    loop {
        let mu: Vec<i64> = w.iter().zip(&th).map(|(a, b)| a - (r + 1) * b).collect();
        if !is_weight(&mu, &w) {
            return r;
        }
        r += 1;
    }
}

/// All methods for every node of a type.
#[derive(Debug, Clone, Serialize)]
pub struct MNumbers {
    pub r#type: String,
    pub sl2: Vec<i64>,
    pub dominance: Vec<i64>,
    /// `None` where the module exceeds the dimension cap.
    pub rep: Vec<Option<i64>>,
    /// Sandwich test, reported for comparison with `dominance`.
    pub sandwich: Vec<i64>,
    pub dual_coxeter: i64,
}

impl MNumbers {
    pub fn agree(&self) -> bool {
        self.sl2 == self.dominance && self.rep.iter().zip(&self.sl2).all(|(r, s)| r.is_none_or(|r| r == *s))
    }

    pub fn sum_ok(&self) -> bool {
        self.sl2.iter().sum::<i64>() == self.dual_coxeter - 1
    }

    /// Nodes where the sandwich test disagrees with the weight test.
    pub fn sandwich_divergence(&self) -> Vec<usize> {
        (0..self.sl2.len()).filter(|&i| self.sandwich[i] != self.dominance[i]).collect()
    }

    /// Number of methods that produced a value for every node.
    pub fn method_count(&self) -> usize {
        2 + usize::from(self.rep.iter().all(|r| r.is_some()))
    }
}

/// Computes `m_k` for every node by all methods; the module method runs in
/// parallel over nodes and is skipped above `dim_cap`.
pub fn m_numbers(rs: &Arc<RootSystem>, dim_cap: usize, with_rep: bool) -> MNumbers {
    use rayon::prelude::*;
    let l = rs.rank();
    let sl2: Vec<i64> = (0..l).map(|k| rs.comarks[k]).collect();
    let dominance = (0..l).map(|k| m_number(rs, k, MMethod::Dominance, dim_cap).unwrap()).collect();
    let rep = if with_rep {
        (0..l).into_par_iter().map(|k| m_number(rs, k, MMethod::Rep, dim_cap).ok()).collect()
    } else {
        vec![None; l]
    };
    MNumbers {
        r#type: rs.ty.to_string(),
        sl2,
        dominance,
        rep,
        sandwich: (0..l).map(|k| m_number_sandwich(rs, k)).collect(),
        dual_coxeter: rs.dual_coxeter,
    }
}

/// A point of the minimal orbit with the conjugation word that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitPoint {
    /// Coefficients in the flat Chevalley basis.
    pub coeffs: SVec,
    /// `(flat generator index, parameter)`, outermost first.
    pub word: Vec<(usize, Q)>,
}

impl OrbitPoint {
    pub fn dense(&self, dim: usize) -> Vec<Q> {
        linalg::to_dense(&self.coeffs, dim)
    }
}

const PARAMS: [(i64, i64); 5] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2)];

fn random_param(rng: &mut ChaCha8Rng) -> Q {
    let (n, d) = PARAMS[rng.gen_range(0..PARAMS.len())];
    qr(n, d)
}

fn random_word(cb: &ChevalleyBasis, rng: &mut ChaCha8Rng, len: usize) -> Vec<(usize, Q)> {
    let l = cb.rank();
    (0..len)
        .map(|_| {
            let g = rng.gen_range(0..2 * l);
            let a = if g < l { cb.e(g) } else { cb.f(g - l) };
            (a, random_param(rng))
        })
        .collect()
}

/// `Ad(exp(t_1 ad a_1)) ... Ad(exp(t_r ad a_r)) e_theta` for a seeded random
/// word over the simple generators `e_i`, `f_i`.
pub fn sample_orbit_point(cb: &ChevalleyBasis, seed: u64, word_length: usize) -> OrbitPoint {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let word = random_word(cb, &mut rng, word_length);
    conjugate_theta(cb, word)
}

/// A random word of length `word_length` applied after `ht(theta) + 1`
/// sweeps `f_1, ..., f_l` with random parameters. The sweeps move `e_theta`
/// to a generic point of its dense `B^-`-orbit; a short random word alone
/// stays near `e_theta`, where many Hamiltonians vanish.
pub fn sample_generic_orbit_point(cb: &ChevalleyBasis, seed: u64, word_length: usize) -> OrbitPoint {
    let rs = &*cb.rs;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut word = random_word(cb, &mut rng, word_length);
    let sweeps = RootSystem::height(&rs.highest_root) as usize + 1;
    for _ in 0..sweeps {
        for i in 0..rs.rank() {
            word.push((cb.f(i), random_param(&mut rng)));
        }
    }
    conjugate_theta(cb, word)
}

/// Applies a conjugation word to `e_theta`.
pub fn conjugate_theta(cb: &ChevalleyBasis, word: Vec<(usize, Q)>) -> OrbitPoint {
    let mut v: SVec = vec![(cb.e(cb.rs.theta_index()), Q::one())];
    for (a, t) in word.iter().rev() {
        v = cb.exp_ad(*a, t, &v).expect("root vectors are ad-nilpotent");
    }
    OrbitPoint { coeffs: v, word }
}

/// Default random word length.
pub const WORD_LENGTH: usize = 8;

/// Number of leading samples with short words (lengths `0..=8`).
pub const SHORT_SAMPLES: usize = 9;

/// Sample `i` of a seeded family: a plain random word of length `i` for
/// `i < 9` (sample 0 is `e_theta`), then generic points.
pub fn sample_family(cb: &ChevalleyBasis, seed: u64, count: usize) -> Vec<OrbitPoint> {
    (0..count)
        .map(|i| {
            let s = seed.wrapping_mul(1_000_003).wrapping_add(i as u64);
            if i < SHORT_SAMPLES {
                sample_orbit_point(cb, s, i)
            } else {
                sample_generic_orbit_point(cb, s, WORD_LENGTH)
            }
        })
        .collect()
}

/// Map `(node, order) -> f_{n,k}` with `1 <= n <= m_k`.
#[derive(Debug, Clone)]
pub struct HamiltonianSet {
    pub ty: SimpleType,
    pub entries: BTreeMap<(usize, u32), Poly>,
    pub m: Vec<i64>,
}

/// Builds every in-range Hamiltonian.
pub fn hamiltonian_set(cb: &ChevalleyBasis, reps: &[RepModule]) -> Result<HamiltonianSet> {
    let rs = &*cb.rs;
    let mut entries = BTreeMap::new();
    for (k, rep) in reps.iter().enumerate().take(rs.rank()) {
        for n in 1..=rs.comarks[k] as u32 {
            entries.insert((k, n), hamiltonian_poly(cb, k, n, rep)?);
        }
    }
    Ok(HamiltonianSet { ty: rs.ty, entries, m: rs.comarks.clone() })
}

/// Builds every fundamental module within the cap.
pub fn fundamental_reps(rs: &Arc<RootSystem>, dim_cap: usize) -> Result<Vec<RepModule>> {
    (0..rs.rank()).map(|k| repbuild::build_irrep(rs, &rs.fundamental_weight(k), dim_cap)).collect()
}

// Classical matrix realization.

/// Matrix of `x` acting on `V_{w_1}`, the defining module of a classical
/// algebra, in the module's weight basis (highest weight first).
pub fn classical_matrix(vrep: &RepModule, x: &SVec) -> Mat {
    vrep.matrix_of(x).to_dense()
}

/// Whether `(k, r)` lies in the range of the trace families for the type.
pub fn classical_range(ty: SimpleType, k: usize, r: u32) -> bool {
    let n = ty.rank;
    match (ty.family, r) {
        (Family::A | Family::C, 1) => (1..=n).contains(&k),
        (Family::B, 1) | (Family::D, 1) => (1..=n).contains(&k),
        (Family::B, 2) => (2..n).contains(&k),
        (Family::D, 2) => (2..=n.saturating_sub(2)).contains(&k),
        _ => false,
    }
}

/// `Tr(A_kk)` for `r = 1`, `Tr(wedge^2 A_kk)` for `r = 2`, where `A_kk` is
/// the upper-left `k x k` block.
pub fn classical_trace_hamiltonian(ty: SimpleType, k: usize, r: u32, a: &Mat) -> Result<Q> {
    if !classical_range(ty, k, r) {
        return Err(Error::OutOfRange(format!("no trace Hamiltonian of order {r} for block {k} in type {ty}")));
    }
    if k > a.len() {
        return Err(Error::OutOfRange(format!("block {k} larger than the matrix")));
    }
    let b = linalg::block(a, k);
    let t = linalg::trace(&b);
    Ok(match r {
        1 => t,
        _ => {
            let t2 = linalg::trace(&linalg::matmul(&b, &b));
            (&t * &t - t2) / q(2)
        }
    })
}

/// Coefficient of `t^m` in `det((exp(tA))_kk)` for nilpotent `A`.
pub fn exp_det_coefficient(a: &Mat, k: usize, m: usize) -> Result<Q> {
    let n = a.len();
    if k > n {
        return Err(Error::OutOfRange(format!("block {k} larger than the matrix")));
    }
    // powers of A until they vanish
    let mut powers: Vec<Mat> = vec![linalg::identity(n)];
    loop {
        let next = linalg::matmul(powers.last().unwrap(), a);
        if linalg::is_zero_mat(&next) {
            break;
        }
        if powers.len() > n {
            return Err(Error::NotNilpotent);
        }
        powers.push(next);
    }
    let s = powers.len() - 1;
    let deg = k * s;
    if m > deg {
        return Ok(Q::zero());
    }
    // det of the block is a polynomial of degree <= deg in t; interpolate at t = 0..=deg
    let values: Vec<Q> = (0..=deg)
        .map(|t| {
            let mut e = linalg::zeros(n, n);
            let mut coef = Q::one();
            for (j, p) in powers.iter().enumerate() {
                if j > 0 {
                    coef = coef * q(t as i64) / q(j as i64);
                }
                e = linalg::mat_add_scaled(&e, &coef, p);
            }
            linalg::det(&linalg::block(&e, k))
        })
        .collect();
    Ok(interpolate_coefficient(&values, m))
}

/// Coefficient of `t^m` of the polynomial taking `values[i]` at `t = i`.
fn interpolate_coefficient(values: &[Q], m: usize) -> Q {
    // Newton divided differences, then expand the Newton basis.
    let n = values.len();
    let mut dd = values.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / q(j as i64);
        }
    }
    let mut poly = vec![Q::zero(); n];
    let mut basis = vec![Q::one()];
    for (j, c) in dd.iter().enumerate() {
        for (d, b) in basis.iter().enumerate() {
            poly[d] += c * b;
        }
        // basis *= (t - j)
        let mut nb = vec![Q::zero(); basis.len() + 1];
        for (d, b) in basis.iter().enumerate() {
            nb[d + 1] += b.clone();
            nb[d] -= b * &q(j as i64);
        }
        basis = nb;
    }
    poly.get(m).cloned().unwrap_or_default()
}

/// The Hamiltonian combination matching a trace function, as
/// `(node, weight)` terms of `f_{r,node}`: the upper-left block of size `k`
/// carries the weight `eps_1 + ... + eps_k` of the defining module.
pub fn classical_counterpart(ty: SimpleType, k: usize, r: u32) -> Option<Vec<(usize, Q)>> {
    if !classical_range(ty, k, r) {
        return None;
    }
    let n = ty.rank;
    Some(match (ty.family, r) {
        (Family::D, 1) if k == n - 1 => vec![(n - 2, Q::one()), (n - 1, Q::one())],
        _ => vec![(k - 1, Q::one())],
    })
}

/// Rank of a matrix and whether it squares to zero.
pub fn rank_and_square_zero(a: &Mat) -> (usize, bool) {
    (linalg::rank(a), linalg::is_zero_mat(&linalg::matmul(a, a)))
}

/// Adjoint matrix of the element `x` (dense); used for tangent spaces.
pub fn ad_matrix(cb: &ChevalleyBasis, x: &SVec) -> SparseMat {
    cb.ad_of(x)
}

/// Flat Chevalley coordinates of the G2 element with example-basis
/// coordinates `(h, x, y)`.
pub fn g2_point(cb: &ChevalleyBasis, h: &[Q; 2], x: &[Q; 6], y: &[Q; 6]) -> Result<SVec> {
    let fr = crate::chevalley::g2_frame(cb)?;
    let mut acc = linalg::Acc::new();
    for (v, c) in fr.h.iter().zip(h) {
        acc.add_scaled(v, c);
    }
    for (v, c) in fr.x.iter().zip(x).chain(fr.y.iter().zip(y)) {
        acc.add_scaled(v, c);
    }
    Ok(acc.finish())
}

/// Flat index of a basis element.
pub fn flat(cb: &ChevalleyBasis, idx: BasisIndex) -> usize {
    cb.flat(idx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley;
    use crate::rootsys::build_root_system;

    fn setup(s: &str) -> (Arc<RootSystem>, ChevalleyBasis) {
        let rs = Arc::new(build_root_system(s.parse().unwrap()).unwrap());
        let cb = build_chevalley(&rs).unwrap();
        (rs, cb)
    }

    #[test]
    fn linear_and_quadratic_match_closed_forms_a2() {
        let (rs, cb) = setup("A2");
        let reps = fundamental_reps(&rs, 100).unwrap();
        for (k, rep) in reps.iter().enumerate() {
            assert_eq!(hamiltonian_poly(&cb, k, 1, rep).unwrap(), linear_closed_form(&cb, k));
            assert_eq!(hamiltonian_poly(&cb, k, 2, rep).unwrap(), quadratic_closed_form(&cb, k));
        }
    }

    #[test]
    fn f4_and_e8_marks() {
        let f4 = Arc::new(build_root_system("F4".parse().unwrap()).unwrap());
        let m = m_numbers(&f4, 2000, true);
        assert_eq!(m.sl2, vec![2, 3, 2, 1]);
        assert!(m.agree());
        let e8 = Arc::new(build_root_system("E8".parse().unwrap()).unwrap());
        let m = m_numbers(&e8, 0, false);
        assert_eq!(m.sl2, vec![2, 3, 4, 6, 5, 4, 3, 2]);
        assert_eq!(m.dominance, m.sl2);
        let a1 = Arc::new(build_root_system("A1".parse().unwrap()).unwrap());
        assert_eq!(m_number(&a1, 0, MMethod::Rep, 10).unwrap(), 1);
    }

    #[test]
    fn sample_zero_is_theta() {
        let (_, cb) = setup("B2");
        let p = sample_orbit_point(&cb, 3, 0);
        assert_eq!(p.coeffs, vec![(cb.e(cb.rs.theta_index()), Q::one())]);
    }

    #[test]
    fn type_a_samples_are_rank_one_square_zero() {
        let (rs, cb) = setup("A3");
        let v = repbuild::build_irrep(&rs, &rs.fundamental_weight(0), 100).unwrap();
        for p in sample_family(&cb, 11, 12) {
            let a = classical_matrix(&v, &p.coeffs);
            assert_eq!(rank_and_square_zero(&a), (1, true));
        }
    }

    #[test]
    fn type_bd_samples_are_rank_two_square_zero() {
        for name in ["B3", "D4"] {
            let (rs, cb) = setup(name);
            let v = repbuild::build_irrep(&rs, &rs.fundamental_weight(0), 100).unwrap();
            for p in sample_family(&cb, 5, 12) {
                let a = classical_matrix(&v, &p.coeffs);
                assert_eq!(rank_and_square_zero(&a), (2, true), "{name}");
            }
        }
    }

    #[test]
    fn trace_ranges() {
        let d4: SimpleType = "D4".parse().unwrap();
        let a = linalg::zeros(8, 8);
        assert!(classical_trace_hamiltonian(d4, 2, 2, &a).is_ok());
        assert!(classical_trace_hamiltonian(d4, 3, 2, &a).is_err());
        assert_eq!(classical_trace_hamiltonian(d4, 4, 1, &a).unwrap(), Q::zero());
        let b3: SimpleType = "B3".parse().unwrap();
        assert!(classical_trace_hamiltonian(b3, 2, 2, &a).is_ok());
        assert!(classical_trace_hamiltonian(b3, 3, 2, &a).is_err());
    }

    #[test]
    fn rank_one_trace() {
        let a4: SimpleType = "A4".parse().unwrap();
        let x = [q(1), q(2), q(-1), q(3), q(0)];
        let y = [q(2), q(1), q(1), q(-1), q(5)];
        // x . y = 2 + 2 - 1 - 3 + 0 = 0: traceless
        let a: Mat = (0..5).map(|i| (0..5).map(|j| &x[i] * &y[j]).collect()).collect();
        for k in 1..=4 {
            let expect: Q = (0..k).map(|i| &x[i] * &y[i]).sum();
            assert_eq!(classical_trace_hamiltonian(a4, k, 1, &a).unwrap(), expect);
        }
    }

    #[test]
    fn exp_det_low_orders() {
        let mut a = linalg::zeros(4, 4);
        a[0][1] = q(1);
        a[1][2] = q(2);
        a[0][3] = qr(1, 2);
        a[2][3] = q(-1);
        assert_eq!(exp_det_coefficient(&a, 3, 0).unwrap(), Q::one());
        assert_eq!(exp_det_coefficient(&a, 3, 1).unwrap(), linalg::trace(&linalg::block(&a, 3)));
        assert!(matches!(exp_det_coefficient(&linalg::identity(3), 2, 1), Err(Error::NotNilpotent)));
    }
}
