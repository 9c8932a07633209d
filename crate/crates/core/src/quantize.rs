//! Elements of the universal enveloping algebra in PBW normal form and the
//! two proposed quantizations of the Hamiltonians.
//!
//! A PBW monomial is a non-decreasing word of flat Chevalley indices, so the
//! normal order is `f_alpha < h_i < e_alpha`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use serde::Serialize;

use crate::chevalley::{BasisIndex, ChevalleyBasis, Form};
use crate::error::{Error, Result};
use crate::heisenberg::HeisenbergBasis;
use crate::polyring::{Mono, Poly};
use crate::rational::{factorial, Q};
use crate::repbuild::RepModule;
use crate::rootsys::RootSystem;

pub type Word = Vec<u32>;

/// Finite combination of PBW monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct EnvElement {
    pub terms: BTreeMap<Word, Q>,
}

impl EnvElement {
    pub fn zero() -> Self {
        EnvElement::default()
    }

    pub fn one() -> Self {
        EnvElement::monomial(Vec::new(), Q::one())
    }

    pub fn generator(a: usize) -> Self {
        EnvElement::monomial(vec![a as u32], Q::one())
    }

    /// `c * w`, with `w` already sorted.
    pub fn monomial(w: Word, c: Q) -> Self {
        debug_assert!(w.windows(2).all(|p| p[0] <= p[1]));
        let mut e = EnvElement::zero();
        e.add_term(w, c);
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Vec::len).max()
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &EnvElement, c: &Q) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Q) -> EnvElement {
        let mut e = EnvElement::zero();
        e.add_scaled(self, c);
        e
    }

    /// Top-degree symbol as a polynomial in the flat coordinates.
    pub fn symbol(&self, nvars: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        let Some(d) = self.degree() else { return p };
        for (w, c) in self.terms.iter().filter(|(w, _)| w.len() == d) {
            let pairs: Vec<(usize, u32)> = w.iter().map(|&a| (a as usize, 1)).collect();
            p.add_term(Mono::from_pairs(&pairs), c.clone());
        }
        p
    }

    /// Text with Chevalley names, e.g. `1/2*f1*e1 + h1^2`.
    pub fn render(&self, cb: &ChevalleyBasis) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (w, c) in &self.terms {
            let mut f: Vec<String> = Vec::new();
            let mut i = 0;
            while i < w.len() {
                let mut j = i;
                while j < w.len() && w[j] == w[i] {
                    j += 1;
                }
                let n = cb.name(w[i] as usize);
                f.push(if j - i > 1 { format!("{n}^{}", j - i) } else { n });
                i = j;
            }
            let body = f.join("*");
            parts.push(match (body.is_empty(), c.is_one()) {
                (true, _) => c.to_string(),
                (false, true) => body,
                (false, false) => format!("{c}*{body}"),
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// PBW multiplication for one Lie algebra, memoizing generator products.
pub struct Pbw<'a> {
    cb: &'a ChevalleyBasis,
    memo: Mutex<HashMap<(Word, u32), EnvElement>>,
}

impl<'a> Pbw<'a> {
    pub fn new(cb: &'a ChevalleyBasis) -> Self {
        Pbw { cb, memo: Mutex::new(HashMap::new()) }
    }

    /// `w * g` in normal form.
    pub fn mul_word_gen(&self, w: &[u32], g: u32) -> EnvElement {
        match w.last() {
            None => return EnvElement::generator(g as usize),
            Some(&last) if last <= g => {
                let mut v = w.to_vec();
                v.push(g);
                return EnvElement::monomial(v, Q::one());
            }
            _ => {}
        }
        let key = (w.to_vec(), g);
        if let Some(r) = self.memo.lock().unwrap().get(&key) {
            return r.clone();
        }
        // w = w' a with a > g:  w' a g = (w' g) a + w' [a, g]
        let (a, rest) = (*w.last().unwrap(), &w[..w.len() - 1]);
        let mut out = EnvElement::zero();
        let wg = self.mul_word_gen(rest, g);
        for (u, c) in &wg.terms {
            out.add_scaled(&self.mul_word_gen(u, a), c);
        }
        for &(k, c) in self.cb.bracket_basis(a as usize, g as usize) {
            out.add_scaled(&self.mul_word_gen(rest, k as u32), &Q::from(c));
        }
        self.memo.lock().unwrap().insert(key, out.clone());
        out
    }

    /// `x * g`.
    pub fn mul_gen(&self, x: &EnvElement, g: usize) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in &x.terms {
            out.add_scaled(&self.mul_word_gen(w, g as u32), c);
        }
        out
    }

    /// `g * x`, by moving `g` rightwards through each word.
    pub fn gen_mul(&self, g: usize, x: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in &x.terms {
            let mut acc = EnvElement::generator(g);
            for &a in w {
                acc = self.mul_gen(&acc, a as usize);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    pub fn mul(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut out = EnvElement::zero();
        for (w, c) in &y.terms {
            let mut acc = x.clone();
            for &a in w {
                acc = self.mul_gen(&acc, a as usize);
            }
            out.add_scaled(&acc, c);
        }
        out
    }

    pub fn commutator(&self, x: &EnvElement, y: &EnvElement) -> EnvElement {
        let mut c = self.mul(x, y);
        c.add_scaled(&self.mul(y, x), &-Q::one());
        c
    }
}

/// `kappa(alpha, alpha)` for the chosen form.
fn root_norm(cb: &ChevalleyBasis, rs: &RootSystem, a: usize, form: Form) -> Q {
    cb.root_norm(&rs.positive_roots[a], form)
}

/// Weight `c(b)` attached to a basis element in the quantized Casimir power:
/// `1/kappa(alpha, alpha)` for `e_alpha`, `1` otherwise.
fn casimir_weight(cb: &ChevalleyBasis, b: usize, form: Form) -> Q {
    match cb.index(b) {
        BasisIndex::PosRoot(a) => root_norm(cb, &cb.rs, a, form).recip(),
        _ => Q::one(),
    }
}

/// `sum_words <v^k, rho(a_n) ... rho(a_1) v_k> prod c(a_j) a_n ... a_1`.
/// Degree 1 gives `h_k`; degree 2 gives
/// `h_k^2 + sum <w_k, alpha^vee> / kappa(alpha, alpha) e_alpha f_alpha`.
pub fn travkin_quantize(pbw: &Pbw, rep: &RepModule, k: usize, n: u32, form: Form) -> Result<EnvElement> {
    let cb = pbw.cb;
    let rs = &*cb.rs;
    if k >= rs.rank() {
        return Err(Error::BadNode { node: k + 1, rank: rs.rank() });
    }
    if rep.highest_weight != rs.fundamental_weight(k) {
        return Err(Error::BasisMismatch);
    }
    let full = rep.full_action();
    let weights: Vec<Q> = (0..cb.dim()).map(|b| casimir_weight(cb, b, form)).collect();
    let theta_height = RootSystem::height(&rs.highest_root);
    let lambda = &rep.highest_weight;
    let heights: Vec<i64> = (0..rep.dim)
        .map(|b| {
            let d: Vec<i64> = lambda.iter().zip(rep.weight_of(b)).map(|(a, c)| a - c).collect();
            rs.weight_to_root_int(&d).expect("root lattice").iter().sum()
        })
        .collect();
    let mut state: BTreeMap<usize, EnvElement> = BTreeMap::new();
    state.insert(rep.hw_index, EnvElement::one());
    for step in 1..=n {
        let remaining = (n - step) as i64;
        let mut next: BTreeMap<usize, EnvElement> = BTreeMap::new();
        for (&b, eb) in &state {
            for (a, m) in full.iter().enumerate() {
                let entries: Vec<&(usize, Q)> =
                    m.cols[b]
                        .iter()
                        .filter(|(i, _)| {
                            if remaining == 0 {
                                *i == rep.hw_index
                            } else {
                                heights[*i] <= remaining * theta_height
                            }
                        })
                        .collect();
                if entries.is_empty() {
                    continue;
                }
                let left = pbw.gen_mul(a, eb);
                for (i, c) in entries {
                    next.entry(*i).or_default().add_scaled(&left, &(c * &weights[a]));
                }
            }
        }
        next.retain(|_, e| !e.is_zero());
        state = next;
    }
    Ok(state.remove(&rep.hw_index).unwrap_or_default())
}

/// `sum_j 1/j! sum_words <v^k, E_{i_j} ... E_{i_1} f_theta^r v_k> prod 1/kappa(phi, phi) E_{i_j} ... E_{i_1}`
/// in `U(n*)`, written in the flat Chevalley indices of the `E_i`.
pub fn heisenberg_quantize(
    pbw: &Pbw,
    hb: &HeisenbergBasis,
    rep: &RepModule,
    k: usize,
    r: u32,
    form: Form,
) -> Result<EnvElement> {
    let cb = pbw.cb;
    let rs = &*cb.rs;
    if k >= rs.rank() {
        return Err(Error::BadNode { node: k + 1, rank: rs.rank() });
    }
    if rep.highest_weight != rs.fundamental_weight(k) {
        return Err(Error::BasisMismatch);
    }
    let ft = rep.action(BasisIndex::NegRoot(rs.theta_index()));
    let mut w = rep.unit(rep.hw_index);
    for _ in 0..r {
        w = ft.apply(&w);
    }
    let gens: Vec<(usize, Q)> = hb.roots.iter().map(|&a| (cb.e(a), root_norm(cb, rs, a, form).recip())).collect();
    let mut state: BTreeMap<usize, EnvElement> = w.into_iter().map(|(b, c)| (b, EnvElement::one().scale(&c))).collect();
    let mut total = EnvElement::zero();
    let mut j = 0u32;
    while !state.is_empty() {
        if let Some(e) = state.get(&rep.hw_index) {
            total.add_scaled(e, &factorial(j).recip());
        }
        j += 1;
        let mut next: BTreeMap<usize, EnvElement> = BTreeMap::new();
        for (&b, eb) in &state {
            for (g, wt) in &gens {
                let m = rep.action(cb.index(*g));
                if m.cols[b].is_empty() {
                    continue;
                }
                let left = pbw.gen_mul(*g, eb);
                for (i, c) in &m.cols[b] {
                    next.entry(*i).or_default().add_scaled(&left, &(c * wt));
                }
            }
        }
        next.retain(|_, e| !e.is_zero());
        state = next;
    }
    Ok(total)
}

/// Outcome of the quantization commutator checks for one type and form.
#[derive(Debug, Clone, Serialize)]
pub struct QuantizationReport {
    pub r#type: String,
    pub form: String,
    /// All `[H_i, H_j]` vanish.
    pub degree1_commute: bool,
    /// All `[H_j, Q_{2,k}]` vanish.
    pub degree1_degree2_commute: bool,
    /// `[H_beta, e_alpha f_alpha]` vanishes for every simple `beta` and positive `alpha`.
    pub cartan_pairs_commute: bool,
    /// Number of PBW terms of `[Q_{2,i}, Q_{2,j}]` for `i < j` with `m_i, m_j >= 2`; reported only.
    pub degree2_commutators: Vec<(usize, usize, usize)>,
}

impl QuantizationReport {
    pub fn passed(&self) -> bool {
        self.degree1_commute && self.degree1_degree2_commute && self.cartan_pairs_commute
    }
}

/// Runs the degree-1 and degree-2 checks for the proposal built from the
/// Casimir powers.
pub fn quantization_report(cb: &ChevalleyBasis, reps: &[RepModule], form: Form) -> Result<QuantizationReport> {
    let rs = &*cb.rs;
    let pbw = Pbw::new(cb);
    let l = rs.rank();
    let h1: Vec<EnvElement> = (0..l).map(|k| travkin_quantize(&pbw, &reps[k], k, 1, form)).collect::<Result<_>>()?;
    let q2: Vec<EnvElement> = (0..l).map(|k| travkin_quantize(&pbw, &reps[k], k, 2, form)).collect::<Result<_>>()?;
    let degree1_commute = (0..l).all(|i| (0..l).all(|j| pbw.commutator(&h1[i], &h1[j]).is_zero()));
    let degree1_degree2_commute = (0..l).all(|j| (0..l).all(|k| pbw.commutator(&h1[j], &q2[k]).is_zero()));
    let cartan_pairs_commute = (0..l).all(|b| {
        let hb = EnvElement::generator(cb.h(b));
        (0..rs.num_positive()).all(|a| {
            let ef = pbw.mul(&EnvElement::generator(cb.e(a)), &EnvElement::generator(cb.f(a)));
            pbw.commutator(&hb, &ef).is_zero()
        })
    });
    let mut degree2_commutators = Vec::new();
    for i in 0..l {
        for j in i + 1..l {
            if rs.comarks[i] >= 2 && rs.comarks[j] >= 2 {
                degree2_commutators.push((i, j, pbw.commutator(&q2[i], &q2[j]).len()));
            }
        }
    }
    Ok(QuantizationReport {
        r#type: rs.ty.to_string(),
        form: format!("{form:?}"),
        degree1_commute,
        degree1_degree2_commute,
        cartan_pairs_commute,
        degree2_commutators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chevalley::build_chevalley;
    use crate::hamiltonian::{fundamental_reps, quadratic_closed_form};
    use crate::rootsys::build_root_system;
    use std::sync::Arc;

    fn setup(s: &str) -> ChevalleyBasis {
        let rs = Arc::new(build_root_system(s.parse().unwrap()).unwrap());
        build_chevalley(&rs).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let cb = setup("A1");
        let pbw = Pbw::new(&cb);
        let (f, h, e) = (EnvElement::generator(0), EnvElement::generator(1), EnvElement::generator(2));
        assert_eq!(pbw.commutator(&e, &f), h);
        assert_eq!(pbw.commutator(&h, &e), e.scale(&Q::from(2)));
        // e f = f e + h
        let ef = pbw.mul(&e, &f);
        let mut expect = EnvElement::monomial(vec![0, 2], Q::one());
        expect.add_term(vec![1], Q::one());
        assert_eq!(ef, expect);
    }

    #[test]
    fn casimir_is_central_a1() {
        let cb = setup("A1");
        let pbw = Pbw::new(&cb);
        // h^2 + 2 e f + 2 f e
        let (f, h, e) = (EnvElement::generator(0), EnvElement::generator(1), EnvElement::generator(2));
        let mut c = pbw.mul(&h, &h);
        c.add_scaled(&pbw.mul(&e, &f), &Q::from(2));
        c.add_scaled(&pbw.mul(&f, &e), &Q::from(2));
        for g in [&e, &f, &h] {
            assert!(pbw.commutator(&c, g).is_zero());
        }
    }

    #[test]
    fn associativity_b2() {
        let cb = setup("B2");
        let pbw = Pbw::new(&cb);
        let g = |a: usize| EnvElement::generator(a);
        for (a, b, c) in [(9, 0, 5), (7, 2, 1), (8, 8, 0), (6, 3, 4)] {
            let l = pbw.mul(&pbw.mul(&g(a), &g(b)), &g(c));
            let r = pbw.mul(&g(a), &pbw.mul(&g(b), &g(c)));
            assert_eq!(l, r);
        }
    }

    #[test]
    fn low_degree_quantizations() {
        let cb = setup("B2");
        let rs = cb.rs.clone();
        let reps = fundamental_reps(&rs, 100).unwrap();
        let pbw = Pbw::new(&cb);
        for (k, rep) in reps.iter().enumerate() {
            let q1 = travkin_quantize(&pbw, rep, k, 1, Form::Normalized).unwrap();
            assert_eq!(q1, EnvElement::generator(cb.h(k)));
            // with the normalized form long roots have kappa = 1, so the
            // symbol of Q_2 differs from f_2 only on short roots
            let q2 = travkin_quantize(&pbw, rep, k, 2, Form::Normalized).unwrap();
            let mut expect = quadratic_closed_form(&cb, k);
            for a in rs.non_levi_roots(k) {
                let m = Mono::from_pairs(&[(cb.e(a), 1), (cb.f(a), 1)]);
                let c = expect.coeff(&m);
                expect.add_term(m, &c * &cb.root_norm(&rs.positive_roots[a], Form::Normalized).recip() - &c);
            }
            assert_eq!(q2.symbol(cb.dim()), expect);
        }
    }
}
