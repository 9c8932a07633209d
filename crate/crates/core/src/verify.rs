//! Mechanical checks of the integrable system: node labels, Poisson
//! commutativity, independence, cross-basis agreement, the reference tables
//! and the structural counts.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::chevalley::{build_chevalley, BasisIndex, ChevalleyBasis, Form};
use crate::error::Result;
use crate::hamiltonian::{
    self, classical_counterpart, classical_matrix, classical_range, classical_trace_hamiltonian, exp_det_coefficient,
    fundamental_reps, hamiltonian_set, hamiltonian_values, m_numbers, sample_family, HamiltonianSet, MNumbers,
    OrbitPoint, SHORT_SAMPLES,
};
use crate::heisenberg::{
    chart_to_orbit, heisenberg_hamiltonian, heisenberg_table, kostant_roots, table_labels, ChartPoint,
};
use crate::linalg::{self, Mat, SVec};
use crate::polyring::{kk_bracket, Poly};
use crate::rational::{factorial, q, qr, Q};
use crate::repbuild::{self, RepModule};
use crate::rootsys::{build_root_system, Family, RootSystem, SimpleType};
use crate::tables::{compare_table, golden_table, published_marks, TableComparison};

/// Shared objects for one type.
pub struct Context {
    pub rs: Arc<RootSystem>,
    pub cb: ChevalleyBasis,
    pub reps: Vec<RepModule>,
}

impl Context {
    pub fn new(ty: SimpleType, dim_cap: usize) -> Result<Context> {
        let rs = Arc::new(build_root_system(ty)?);
        let cb = build_chevalley(&rs)?;
        let reps = fundamental_reps(&rs, dim_cap)?;
        Ok(Context { rs, cb, reps })
    }
}

// Node labels.

#[derive(Debug, Clone, Serialize)]
pub struct MNumbersCheck {
    pub numbers: MNumbers,
    pub published: Option<Vec<i64>>,
    pub matches_published: bool,
}

impl MNumbersCheck {
    pub fn passed(&self) -> bool {
        self.matches_published && self.numbers.agree() && self.numbers.sum_ok() && self.numbers.method_count() >= 2
    }
}

pub fn verify_mnumbers(ty: SimpleType, dim_cap: usize) -> Result<MNumbersCheck> {
    let rs = Arc::new(build_root_system(ty)?);
    let numbers = m_numbers(&rs, dim_cap, true);
    let published = published_marks(ty);
    let matches_published = published.as_ref().is_none_or(|p| *p == numbers.sl2);
    Ok(MNumbersCheck { numbers, published, matches_published })
}

// Poisson structure.

/// Dual basis of the invariant form, as flat sparse vectors.
pub fn dual_basis(cb: &ChevalleyBasis, form: Form) -> Vec<SVec> {
    let rs = &*cb.rs;
    let l = rs.rank();
    let gram: Mat = (0..l).map(|i| (0..l).map(|j| cb.form(cb.h(i), cb.h(j), form)).collect()).collect();
    let ginv = linalg::inverse(&gram).expect("nondegenerate form");
    (0..cb.dim())
        .map(|b| match cb.index(b) {
            BasisIndex::PosRoot(a) => vec![(cb.f(a), cb.form(b, cb.f(a), form).recip())],
            BasisIndex::NegRoot(a) => vec![(cb.e(a), cb.form(b, cb.e(a), form).recip())],
            BasisIndex::Cartan(i) => linalg::from_dense(
                &(0..cb.dim())
                    .map(|c| match cb.index(c) {
                        BasisIndex::Cartan(j) => ginv[i][j].clone(),
                        _ => Q::zero(),
                    })
                    .collect::<Vec<_>>(),
            ),
        })
        .collect()
}

/// Gradient of `f` at `x` with respect to the invariant form.
pub fn gradient(f: &Poly, x: &[Q], duals: &[SVec]) -> SVec {
    let mut acc = linalg::Acc::new();
    for v in f.support() {
        let d = f.partial(v).evaluate(x).unwrap();
        acc.add_scaled(&duals[v], &d);
    }
    acc.finish()
}

/// `{F, G}(X) = kappa(X, [grad F, grad G])`.
pub fn poisson_at(cb: &ChevalleyBasis, f: &Poly, g: &Poly, x: &[Q], duals: &[SVec], form: Form) -> Q {
    let br = cb.bracket(&gradient(f, x, duals), &gradient(g, x, duals)).unwrap();
    pair(cb, x, &br, form)
}

fn pair(cb: &ChevalleyBasis, x: &[Q], y: &SVec, form: Form) -> Q {
    let mut s = Q::zero();
    for (b, c) in y {
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                let k = cb.form(a, *b, form);
                if !k.is_zero() {
                    s += xa * &k * c;
                }
            }
        }
    }
    s
}

/// Kirillov-Kostant bracket of two functions on `g`, computed symbolically by
/// moving to `g*` through the invariant form, bracketing there, and moving back.
pub fn kk_bracket_on_g(cb: &ChevalleyBasis, f: &Poly, g: &Poly, form: Form) -> Result<Poly> {
    let n = cb.dim();
    let k = cb.form_matrix(form);
    let kinv = linalg::inverse(&k).expect("nondegenerate form");
    // x = K^{-1} l
    let to_dual: Vec<Poly> = (0..n).map(|a| Poly::linear(n, &linalg::from_dense(&kinv[a]))).collect();
    // l = K x
    let back: Vec<Poly> = (0..n)
        .map(|b| Poly::linear(n, &linalg::from_dense(&k.iter().map(|r| r[b].clone()).collect::<Vec<_>>())))
        .collect();
    let br = kk_bracket(&f.compose(&to_dual, n), &g.compose(&to_dual, n), cb)?;
    Ok(br.compose(&back, n))
}

#[derive(Debug, Clone, Serialize)]
pub struct PairResult {
    /// `(node, order)`, 1-based nodes.
    pub first: (usize, u32),
    pub second: (usize, u32),
    pub passing_samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommutativityReport {
    pub r#type: String,
    pub samples: usize,
    pub seed: u64,
    pub pairs: Vec<PairResult>,
    /// `(node_i, order_i, node_j, order_j, sample)` with a nonzero bracket.
    pub failures: Vec<(usize, u32, usize, u32, usize)>,
}

impl CommutativityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Evaluates `{f_{n,k}, f_{m,j}}` for every pair of in-range Hamiltonians at
/// every sample.
pub fn verify_commutativity(ctx: &Context, set: &HamiltonianSet, samples: usize, seed: u64) -> CommutativityReport {
    let cb = &ctx.cb;
    let form = Form::Normalized;
    let duals = dual_basis(cb, form);
    let keys: Vec<(usize, u32)> = set.entries.keys().copied().collect();
    let index: Vec<(usize, usize)> = (0..keys.len()).flat_map(|i| (i + 1..keys.len()).map(move |j| (i, j))).collect();
    let points = sample_family(cb, seed, samples);
    let per_sample: Vec<Vec<bool>> = points
        .par_iter()
        .map(|p| {
            let x = p.dense(cb.dim());
            let grads: Vec<SVec> = keys.iter().map(|k| gradient(&set.entries[k], &x, &duals)).collect();
            index
                .iter()
                .map(|&(i, j)| {
                    let br = cb.bracket(&grads[i], &grads[j]).unwrap();
                    pair(cb, &x, &br, form).is_zero()
                })
                .collect()
        })
        .collect();
    let node = |k: (usize, u32)| (k.0 + 1, k.1);
    let mut failures = Vec::new();
    for (s, row) in per_sample.iter().enumerate() {
        for (p, ok) in row.iter().enumerate() {
            if !ok {
                let (i, j) = index[p];
                failures.push((keys[i].0 + 1, keys[i].1, keys[j].0 + 1, keys[j].1, s));
            }
        }
    }
    let pairs = index
        .iter()
        .enumerate()
        .map(|(p, &(i, j))| PairResult {
            first: node(keys[i]),
            second: node(keys[j]),
            passing_samples: per_sample.iter().filter(|row| row[p]).count(),
        })
        .collect();
    CommutativityReport { r#type: ctx.rs.ty.to_string(), samples, seed, pairs, failures }
}

// Completeness.

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceReport {
    pub r#type: String,
    pub expected_rank: usize,
    /// Rank of the tangent Jacobian at each tried sample.
    pub ranks: Vec<usize>,
    /// `(node, order, sample)` where an order above `m_k` gave a nonzero value.
    pub nonvanishing_above_m: Vec<(usize, u32, usize)>,
}

impl IndependenceReport {
    pub fn passed(&self) -> bool {
        self.ranks.contains(&self.expected_rank) && self.nonvanishing_above_m.is_empty()
    }
}

/// Rank of `(dF_X([b, X]))_{F, b}` over the in-range Hamiltonians.
pub fn tangent_rank(cb: &ChevalleyBasis, set: &HamiltonianSet, p: &OrbitPoint) -> usize {
    let x = p.dense(cb.dim());
    let tangents: Vec<Vec<Q>> = (0..cb.dim())
        .map(|b| linalg::to_dense(&cb.bracket(&vec![(b, Q::one())], &p.coeffs).unwrap(), cb.dim()))
        .collect();
    let rows: Mat = set
        .entries
        .values()
        .map(|f| {
            let grad: Vec<(usize, Q)> =
                f.support().into_iter().map(|v| (v, f.partial(v).evaluate(&x).unwrap())).collect();
            tangents.iter().map(|t| grad.iter().map(|(v, d)| d * &t[*v]).sum()).collect()
        })
        .collect();
    linalg::rank(&rows)
}

pub fn verify_independence(ctx: &Context, set: &HamiltonianSet, samples: usize, seed: u64) -> IndependenceReport {
    let cb = &ctx.cb;
    let rs = &*ctx.rs;
    let points = sample_family(cb, seed, samples);
    // the first generic samples
    let ranks = points
        .par_iter()
        .skip(SHORT_SAMPLES.min(points.len().saturating_sub(10)))
        .take(10)
        .map(|p| tangent_rank(cb, set, p))
        .collect();
    let nonvanishing_above_m = points
        .par_iter()
        .enumerate()
        .flat_map_iter(|(s, p)| {
            let mut bad = Vec::new();
            for k in 0..rs.rank() {
                let m = rs.comarks[k] as u32;
                let vals = hamiltonian_values(&ctx.reps[k], &p.coeffs, m + 2);
                for n in m + 1..=m + 2 {
                    if !vals[n as usize - 1].is_zero() {
                        bad.push((k + 1, n, s));
                    }
                }
            }
            bad
        })
        .collect();
    IndependenceReport {
        r#type: rs.ty.to_string(),
        expected_rank: (rs.dual_coxeter - 1) as usize,
        ranks,
        nonvanishing_above_m,
    }
}

// Cross-basis agreement.

#[derive(Debug, Clone, Serialize)]
pub struct ScalarFit {
    pub block: usize,
    pub order: u32,
    /// `trace = scalar * sum f_{order, node}`; `None` if all sampled values vanish.
    pub scalar: Option<String>,
    pub consistent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CrossReport {
    pub r#type: String,
    pub chart_points: usize,
    /// `(node, order, point)` where the chart identity failed.
    pub chart_failures: Vec<(usize, u32, usize)>,
    pub classical: Vec<ScalarFit>,
    /// `(block, order, sample)` where the exponential-determinant identity failed.
    pub exp_det_failures: Vec<(usize, usize, usize)>,
}

impl CrossReport {
    pub fn passed(&self) -> bool {
        self.chart_failures.is_empty()
            && self.classical.iter().all(|f| f.consistent)
            && self.exp_det_failures.is_empty()
    }
}

/// Seeded chart points with small rational coordinates and `c != 0`.
pub fn sample_chart_points(len: usize, seed: u64, count: usize) -> Vec<ChartPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut val = move |nonzero: bool| loop {
        let v = qr(rng.gen_range(-3..=3), rng.gen_range(1..=2));
        if !nonzero || !v.is_zero() {
            return v;
        }
    };
    (0..count).map(|_| ChartPoint { c: val(true), x: (0..len).map(|_| val(false)).collect() }).collect()
}

/// Whether `V_{w_k}` of a classical type is the top component of an exterior
/// power of the defining module, so its highest matrix coefficient is a
/// minor of the defining matrix.
fn exterior_node(ty: SimpleType, k: usize) -> bool {
    let n = ty.rank;
    match ty.family {
        Family::A | Family::C => true,
        Family::B => k + 1 < n,
        Family::D => k + 3 <= n,
        _ => false,
    }
}

fn fit_scalar(pairs: &[(Q, Q)]) -> (Option<Q>, bool) {
    // lhs = s * rhs for all pairs
    let s = pairs.iter().find(|(_, r)| !r.is_zero()).map(|(l, r)| l / r);
    let ok = match &s {
        Some(s) => pairs.iter().all(|(l, r)| *l == s * r),
        None => pairs.iter().all(|(l, _)| l.is_zero()),
    };
    (s, ok)
}

pub fn verify_cross_basis(ctx: &Context, samples: usize, seed: u64) -> Result<CrossReport> {
    let cb = &ctx.cb;
    let rs = &*ctx.rs;
    let ty = rs.ty;
    // Heisenberg chart against matrix coefficients.
    let hb = kostant_roots(&ctx.rs);
    let chart_count = samples.clamp(1, 20);
    let points = sample_chart_points(hb.len(), seed, chart_count);
    let mut chart_failures = Vec::new();
    for k in 0..rs.rank() {
        let m = rs.comarks[k] as u32;
        let hs: Vec<Poly> = (1..=m).map(|r| heisenberg_hamiltonian(&hb, &ctx.reps[k], k, r)).collect::<Result<_>>()?;
        for (pi, p) in points.iter().enumerate() {
            let orbit = chart_to_orbit(&hb, p, cb)?;
            let vals = hamiltonian_values(&ctx.reps[k], &orbit.coeffs, m);
            for r in 1..=m {
                let h = hs[r as usize - 1].evaluate(&p.x)?;
                if vals[r as usize - 1] != p.c.pow(r) * factorial(r) * h {
                    chart_failures.push((k + 1, r, pi));
                }
            }
        }
    }
    // Matrix realization.
    let mut classical = Vec::new();
    let mut exp_det_failures = Vec::new();
    if matches!(ty.family, Family::A | Family::B | Family::C | Family::D) {
        let vrep = repbuild::build_irrep(&ctx.rs, &rs.fundamental_weight(0), usize::MAX)?;
        let orbit = sample_family(cb, seed ^ 0x5eed, samples);
        let mats: Vec<Mat> = orbit.iter().map(|p| classical_matrix(&vrep, &p.coeffs)).collect();
        let values: Vec<Vec<Vec<Q>>> = orbit
            .iter()
            .map(|p| {
                (0..rs.rank()).map(|k| hamiltonian_values(&ctx.reps[k], &p.coeffs, rs.comarks[k] as u32 + 1)).collect()
            })
            .collect();
        for r in 1..=2u32 {
            for block in 1..=rs.rank() {
                if !classical_range(ty, block, r) {
                    continue;
                }
                let terms = classical_counterpart(ty, block, r).unwrap();
                let pairs: Vec<(Q, Q)> = mats
                    .iter()
                    .zip(&values)
                    .map(|(a, v)| {
                        let t = classical_trace_hamiltonian(ty, block, r, a).unwrap();
                        let f: Q = terms.iter().map(|(node, w)| w * &v[*node][r as usize - 1]).sum();
                        (t, f)
                    })
                    .collect();
                let (s, consistent) = fit_scalar(&pairs);
                classical.push(ScalarFit { block, order: r, scalar: s.map(|s| s.to_string()), consistent });
            }
        }
        for k in 0..rs.rank() {
            if !exterior_node(ty, k) {
                continue;
            }
            let m = rs.comarks[k] as usize;
            for (si, (a, v)) in mats.iter().zip(&values).enumerate() {
                for order in 1..=m + 1 {
                    let lhs = exp_det_coefficient(a, k + 1, order)?;
                    if lhs * factorial(order as u32) != v[k][order - 1] {
                        exp_det_failures.push((k + 1, order, si));
                    }
                }
            }
        }
    }
    Ok(CrossReport { r#type: ty.to_string(), chart_points: chart_count, chart_failures, classical, exp_det_failures })
}

// Reference tables.

#[derive(Debug, Clone, Serialize)]
pub struct TablesReport {
    pub comparisons: Vec<TableComparison>,
    /// Types whose reference labeling was resolved into `n*` without cells to compare.
    pub labels_only: Vec<String>,
}

impl TablesReport {
    pub fn passed(&self) -> bool {
        self.comparisons.iter().all(|c| c.passed())
    }

    pub fn warnings(&self) -> usize {
        self.comparisons.iter().map(|c| c.warnings()).sum()
    }
}

/// Regenerates and compares the tables for the given types (default: all
/// types with a reference labeling).
pub fn verify_tables(types: &[SimpleType]) -> Result<TablesReport> {
    let mut comparisons = Vec::new();
    let mut labels_only = Vec::new();
    for &ty in types {
        let Some(golden) = golden_table(ty) else { continue };
        let ctx = Context::new(ty, repbuild::DEFAULT_DIM_CAP)?;
        let hb = kostant_roots(&ctx.rs).with_table_order()?;
        if golden.cells.is_empty() {
            if hb.len() as i64 == 2 * ctx.rs.dual_coxeter - 3 && table_labels(ty).is_some() {
                labels_only.push(ty.to_string());
            }
            continue;
        }
        let table = heisenberg_table(&hb, &ctx.reps)?;
        comparisons.push(compare_table(&table, &golden));
    }
    Ok(TablesReport { comparisons, labels_only })
}

pub fn table_types() -> Vec<SimpleType> {
    ["B2", "D3", "B3", "D4", "B4", "D5", "G2"].iter().map(|s| s.parse().unwrap()).collect()
}

// Structural counts.

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub r#type: String,
    pub heisenberg_dim: usize,
    pub dual_coxeter: i64,
    pub sum_m: i64,
    /// `None` when not checked (rank above the limit).
    pub two_step: Option<bool>,
}

impl StructureReport {
    pub fn passed(&self) -> bool {
        self.heisenberg_dim as i64 == 2 * self.dual_coxeter - 3
            && self.sum_m == self.dual_coxeter - 1
            && self.two_step != Some(false)
    }
}

pub fn verify_structure(ty: SimpleType, two_step_rank_limit: usize) -> Result<StructureReport> {
    let rs = Arc::new(build_root_system(ty)?);
    let hb = kostant_roots(&rs);
    let two_step = if ty.rank <= two_step_rank_limit {
        let cb = build_chevalley(&rs)?;
        Some(hb.check_two_step(&cb))
    } else {
        None
    };
    Ok(StructureReport {
        r#type: ty.to_string(),
        heisenberg_dim: hb.len(),
        dual_coxeter: rs.dual_coxeter,
        sum_m: rs.comarks.iter().sum(),
        two_step,
    })
}

/// Builds every in-range Hamiltonian for a context.
pub fn hamiltonians(ctx: &Context) -> Result<HamiltonianSet> {
    hamiltonian_set(&ctx.cb, &ctx.reps)
}

/// Types used by the commutativity and completeness checks.
pub fn poisson_types() -> Vec<SimpleType> {
    ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "G2"]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect()
}

/// Classical types of rank at most 4 with a matrix realization.
pub fn classical_types() -> Vec<SimpleType> {
    let mut v = Vec::new();
    for n in 1..=4 {
        v.push(SimpleType::new(Family::A, n).unwrap());
    }
    for n in 2..=4 {
        v.push(SimpleType::new(Family::B, n).unwrap());
        v.push(SimpleType::new(Family::C, n).unwrap());
    }
    for n in 3..=4 {
        v.push(SimpleType::new(Family::D, n).unwrap());
    }
    v
}

/// Closed forms of orders 1 and 2 against the constructed polynomials.
pub fn closed_forms_hold(ctx: &Context) -> Result<bool> {
    for k in 0..ctx.rs.rank() {
        if hamiltonian::hamiltonian_poly(&ctx.cb, k, 1, &ctx.reps[k])? != hamiltonian::linear_closed_form(&ctx.cb, k) {
            return Ok(false);
        }
        if hamiltonian::hamiltonian_poly(&ctx.cb, k, 2, &ctx.reps[k])? != hamiltonian::quadratic_closed_form(&ctx.cb, k)
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The order-2 Hamiltonian of node 2 of G2 in the example coordinates
/// `(h_1, h_2, x_1..x_6, y_1..y_6)`, numbered `0..14`.
pub fn g2_example_quadratic(ctx: &Context) -> Result<Poly> {
    let cb = &ctx.cb;
    let fr = crate::chevalley::g2_frame(cb)?;
    let nv = 14;
    // flat coordinate of a point in terms of example coordinates
    let mut images: Vec<Poly> = vec![Poly::zero(nv); cb.dim()];
    let mut push = |v: &SVec, var: usize| {
        for (a, c) in v {
            images[*a].add_scaled(&Poly::var(nv, var), c);
        }
    };
    for i in 0..2 {
        push(&fr.h[i], i);
    }
    for i in 0..6 {
        push(&fr.x[i], 2 + i);
        push(&fr.y[i], 8 + i);
    }
    let f = hamiltonian::hamiltonian_poly(cb, 1, 2, &ctx.reps[1])?;
    Ok(f.compose(&images, nv))
}

/// `h2^2 + x2 y2 + 3 x3 y3 + 3 x4 y4 + x5 y5 + 2 x6 y6` in the numbering of
/// [`g2_example_quadratic`].
pub fn g2_expected_quadratic() -> Poly {
    let nv = 14;
    let x = |i: usize| Poly::var(nv, 1 + i);
    let y = |i: usize| Poly::var(nv, 7 + i);
    let mut p = Poly::var(nv, 1).pow(2);
    for (i, c) in [(2, 1), (3, 3), (4, 3), (5, 1), (6, 2)] {
        p.add_scaled(&x(i).mul(&y(i)), &q(c));
    }
    p
}
