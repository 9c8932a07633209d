//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SVec;
use crate::rational::{q, Q};

/// A Lie algebra given by the brackets of its basis elements.
pub trait LieBracket {
    fn lie_dim(&self) -> usize;
    /// `[x_a, x_b]` in the same basis.
    fn basis_bracket(&self, a: usize, b: usize) -> SVec;
}

/// Monomial: strictly increasing variables with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Mono(Vec<(u32, u32)>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn var(i: usize) -> Self {
        Mono(vec![(i as u32, 1)])
    }

    /// Builds from `(variable, exponent)` pairs in any order; zero exponents dropped.
    pub fn from_pairs(pairs: &[(usize, u32)]) -> Self {
        let mut m: BTreeMap<u32, u32> = BTreeMap::new();
        for &(v, e) in pairs {
            *m.entry(v as u32).or_default() += e;
        }
        Mono(m.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Mono(exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| (i as u32, e)).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: usize) -> u32 {
        self.0.iter().find(|&&(x, _)| x as usize == v).map(|&(_, e)| e).unwrap_or(0)
    }

    pub fn vars(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().map(|&(v, e)| (v as usize, e))
    }

    pub fn max_var(&self) -> Option<usize> {
        self.0.last().map(|&(v, _)| v as usize)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                out.push(b[j]);
                j += 1;
            } else {
                out.push((a[i].0, a[i].1 + b[j].1));
                i += 1;
                j += 1;
            }
        }
        Mono(out)
    }

    /// Derivative with respect to `v`: the multiplier and the remaining monomial.
    pub fn diff(&self, v: usize) -> Option<(u32, Mono)> {
        let pos = self.0.iter().position(|&(x, _)| x as usize == v)?;
        let e = self.0[pos].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some((e, Mono(out)))
    }

    pub fn to_exponents(&self, nvars: usize) -> Vec<u32> {
        let mut v = vec![0; nvars];
        for &(x, e) in &self.0 {
            v[x as usize] = e;
        }
        v
    }
}

impl Ord for Mono {
    /// Graded order: total degree first, then the exponent vectors compared
    /// lexicographically from variable 0 (larger exponent of a lower variable wins).
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0) {
                if a.0 != b.0 {
                    // the monomial containing the smaller variable is larger
                    return b.0.cmp(&a.0);
                }
                if a.1 != b.1 {
                    return a.1.cmp(&b.1);
                }
            }
            self.0.len().cmp(&other.0.len())
        })
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    pub nvars: usize,
    terms: BTreeMap<Mono, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(Mono::one(), c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Poly::monomial(nvars, Mono::var(i), Q::one())
    }

    pub fn monomial(nvars: usize, m: Mono, c: Q) -> Self {
        let mut p = Poly::zero(nvars);
        p.add_term(m, c);
        p
    }

    /// `sum_k c_k x_k`.
    pub fn linear(nvars: usize, v: &SVec) -> Self {
        let mut p = Poly::zero(nvars);
        for (k, c) in v {
            p.add_term(Mono::var(*k), c.clone());
        }
        p
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Q {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn add_term(&mut self, m: Mono, c: Q) {
        if c.is_zero() {
            return;
        }
        if let Some(mv) = m.max_var() {
            if mv >= self.nvars {
                self.nvars = mv + 1;
            }
        }
        match self.terms.entry(m) {
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

    pub fn add_scaled(&mut self, other: &Poly, c: &Q) {
        if c.is_zero() {
            return;
        }
        self.nvars = self.nvars.max(other.nvars);
        for (m, x) in &other.terms {
            self.add_term(m.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &Q::one());
        p
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut p = self.clone();
        p.add_scaled(other, &-Q::one());
        p
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut p = Poly::zero(self.nvars.max(other.nvars));
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                p.add_term(ma.mul(mb), a * b);
            }
        }
        p
    }

    pub fn mul_mono(&self, m: &Mono, c: &Q) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (ma, a) in &self.terms {
            p.add_term(ma.mul(m), a * c);
        }
        p
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut acc = Poly::constant(self.nvars, Q::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, v: usize) -> Poly {
        let mut p = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.diff(v) {
                p.add_term(rest, c * &q(e as i64));
            }
        }
        p
    }

    /// Variables that occur.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.terms.keys().flat_map(|m| m.vars().map(|(v, _)| v)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    pub fn evaluate(&self, point: &[Q]) -> Result<Q> {
        if point.len() < self.nvars {
            return Err(Error::BasisMismatch);
        }
        let mut total = Q::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.vars() {
                t *= point[v].pow(e);
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Substitutes polynomial `images[v]` for each variable `v`.
    pub fn compose(&self, images: &[Poly], nvars: usize) -> Poly {
        let mut out = Poly::zero(nvars);
        let mut cache: BTreeMap<(usize, u32), Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut t = Poly::constant(nvars, c.clone());
            for (v, e) in m.vars() {
                let pw = cache.entry((v, e)).or_insert_with(|| images[v].pow(e));
                t = t.mul(pw);
            }
            out.add_scaled(&t, &Q::one());
        }
        out
    }

    /// Renames variables by `map[v]`.
    pub fn rename(&self, map: &[usize], nvars: usize) -> Poly {
        let mut p = Poly::zero(nvars);
        for (m, c) in &self.terms {
            let pairs: Vec<(usize, u32)> = m.vars().map(|(v, e)| (map[v], e)).collect();
            p.add_term(Mono::from_pairs(&pairs), c.clone());
        }
        p
    }

    /// Homogeneous component of degree `d`.
    pub fn homogeneous(&self, d: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Text with variables named by `name`, highest monomial first.
    pub fn render_with(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.degree() == 0 {
                factors.push(a.to_string());
            }
            for (v, e) in m.vars() {
                if e == 1 {
                    factors.push(name(v));
                } else {
                    factors.push(format!("{}^{}", name(v), e));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }

    /// Text with variables `x0, x1, ...`.
    pub fn render(&self) -> String {
        self.render_with(&|v| format!("x{v}"))
    }

    /// Parses the textual form produced by [`Poly::render`]: terms separated by
    /// `+`/`-`, factors by `*`, powers by `^`, variables `x<k>`.
    pub fn parse(s: &str, nvars: usize) -> Result<Poly> {
        let bad = || Error::OutOfRange(format!("cannot parse polynomial `{s}`"));
        let mut p = Poly::zero(nvars);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut sign = false;
        for ch in compact.chars() {
            if (ch == '+' || ch == '-') && !cur.is_empty() {
                terms.push((sign, std::mem::take(&mut cur)));
                sign = ch == '-';
            } else if (ch == '+' || ch == '-') && cur.is_empty() {
                if ch == '-' {
                    sign = !sign;
                }
            } else {
                cur.push(ch);
            }
        }
        if cur.is_empty() {
            return Err(bad());
        }
        terms.push((sign, cur));
        for (neg, t) in terms {
            let mut c = Q::one();
            let mut pairs: Vec<(usize, u32)> = Vec::new();
            for f in t.split('*') {
                if let Some(rest) = f.strip_prefix('x') {
                    let (v, e) = match rest.split_once('^') {
                        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                        None => (rest, 1),
                    };
                    pairs.push((v.parse::<usize>().map_err(|_| bad())?, e));
                } else if f == "0" {
                    c = Q::zero();
                } else {
                    c *= f.parse::<Q>().map_err(|_| bad())?;
                }
            }
            if neg {
                c = -c;
            }
            p.add_term(Mono::from_pairs(&pairs), c);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(m, c)| (m.to_exponents(self.nvars), c.numer().to_string(), c.denom().to_string()))
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        let mut p = Poly::zero(j.nvars);
        for (exps, n, d) in &j.terms {
            if exps.len() != j.nvars {
                return Err(Error::BasisMismatch);
            }
            let c: Q = format!("{n}/{d}").parse().map_err(|_| Error::OutOfRange(format!("bad coefficient {n}/{d}")))?;
            p.add_term(Mono::from_exponents(exps), c);
        }
        Ok(p)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// JSON form: each term is `(exponent vector, numerator, denominator)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyJson {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, String, String)>,
}

/// Lie-Poisson bracket on `S(g) = C[g*]`: `{x_a, x_b} = x_{[a,b]}`, extended
/// as a biderivation.
pub fn kk_bracket(f: &Poly, g: &Poly, lie: &dyn LieBracket) -> Result<Poly> {
    let n = lie.lie_dim();
    if f.nvars > n || g.nvars > n {
        return Err(Error::BasisMismatch);
    }
    let fs = f.support();
    let gs = g.support();
    let dg: Vec<(usize, Poly)> = gs.iter().map(|&b| (b, g.partial(b))).collect();
    let mut out = Poly::zero(n);
    for &a in &fs {
        let da = f.partial(a);
        for (b, db) in &dg {
            let br = lie.basis_bracket(a, *b);
            if br.is_empty() {
                continue;
            }
            let prod = da.mul(db);
            out.add_scaled(&prod.mul(&Poly::linear(n, &br)), &Q::one());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qr;
    use proptest::prelude::*;

    struct Sl2;
    impl LieBracket for Sl2 {
        fn lie_dim(&self) -> usize {
            3
        }
        // basis order f, h, e
        fn basis_bracket(&self, a: usize, b: usize) -> SVec {
            let t = |k: usize, c: i64| vec![(k, q(c))];
            match (a, b) {
                (2, 0) => t(1, 1),
                (0, 2) => t(1, -1),
                (1, 2) => t(2, 2),
                (2, 1) => t(2, -2),
                (1, 0) => t(0, -2),
                (0, 1) => t(0, 2),
                _ => Vec::new(),
            }
        }
    }

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    #[test]
    fn arithmetic() {
        let p = x(0).mul(&x(0)).mul(&x(1));
        assert_eq!(p.partial(0), x(0).mul(&x(1)).scale(&q(2)));
        let s = x(0).add(&x(1)).mul(&x(0).sub(&x(1)));
        assert_eq!(s, x(0).pow(2).sub(&x(1).pow(2)));
        assert_eq!(p.add(&Poly::zero(3)), p);
    }

    #[test]
    fn evaluation() {
        assert_eq!(Poly::constant(3, qr(5, 2)).evaluate(&[q(1), q(2), q(3)]).unwrap(), qr(5, 2));
        assert_eq!(x(0).mul(&x(1)).evaluate(&[q(2), q(3), q(0)]).unwrap(), q(6));
    }

    #[test]
    fn sl2_poisson() {
        assert_eq!(kk_bracket(&x(2), &x(0), &Sl2).unwrap(), x(1));
        assert_eq!(kk_bracket(&x(1), &x(2), &Sl2).unwrap(), x(2).scale(&q(2)));
    }

    #[test]
    fn render_and_parse() {
        let p = Poly::parse("1/2*x1*x2 + 1/2*x0*x3 + x4", 5).unwrap();
        assert_eq!(p.coeff(&Mono::from_pairs(&[(1, 1), (2, 1)])), qr(1, 2));
        assert_eq!(Poly::parse(&p.render(), 5).unwrap(), p);
        let g = Poly::parse("-x1^3*x2 - 1/4*x0^2*x2^2 + 3/2*x0*x1*x2*x3 + x4^2", 5).unwrap();
        assert_eq!(g.coeff(&Mono::from_pairs(&[(1, 3), (2, 1)])), q(-1));
        assert_eq!(Poly::parse(&g.render(), 5).unwrap(), g);
        assert!(Poly::parse("0", 3).unwrap().is_zero());
        assert!(Poly::parse("x1 +", 3).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let p = Poly::parse("-1/2*x1*x2 + 3*x0^2 + 7", 3).unwrap();
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back: PolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(Poly::from_json(&back).unwrap(), p);
    }

    fn arb_poly(nv: usize, maxdeg: u32) -> impl Strategy<Value = Poly> {
        proptest::collection::vec((proptest::collection::vec(0u32..=maxdeg, nv), -3i64..4, 1i64..3), 0..5).prop_map(
            move |ts| {
                let mut p = Poly::zero(nv);
                for (e, a, b) in ts {
                    let m = Mono::from_exponents(&e);
                    if m.degree() <= maxdeg {
                        p.add_term(m, qr(a, b));
                    }
                }
                p
            },
        )
    }

    fn arb_point(nv: usize) -> impl Strategy<Value = Vec<Q>> {
        proptest::collection::vec((-4i64..5, 1i64..3).prop_map(|(a, b)| qr(a, b)), nv)
    }

    proptest! {
        #[test]
        fn bracket_is_antisymmetric_and_jacobi(f in arb_poly(3, 2), g in arb_poly(3, 2), h in arb_poly(3, 2)) {
            let fg = kk_bracket(&f, &g, &Sl2).unwrap();
            let gf = kk_bracket(&g, &f, &Sl2).unwrap();
            prop_assert!(fg.add(&gf).is_zero());
            prop_assert!(kk_bracket(&f, &f, &Sl2).unwrap().is_zero());
            let j1 = kk_bracket(&f, &kk_bracket(&g, &h, &Sl2).unwrap(), &Sl2).unwrap();
            let j2 = kk_bracket(&g, &kk_bracket(&h, &f, &Sl2).unwrap(), &Sl2).unwrap();
            let j3 = kk_bracket(&h, &fg, &Sl2).unwrap();
            prop_assert!(j1.add(&j2).add(&j3).is_zero());
        }

        #[test]
        fn bracket_is_leibniz(f in arb_poly(3, 2), g in arb_poly(3, 2), h in arb_poly(3, 2)) {
            let lhs = kk_bracket(&f, &g.mul(&h), &Sl2).unwrap();
            let rhs = kk_bracket(&f, &g, &Sl2).unwrap().mul(&h).add(&g.mul(&kk_bracket(&f, &h, &Sl2).unwrap()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn evaluation_is_multiplicative(f in arb_poly(3, 3), g in arb_poly(3, 3), p in arb_point(3)) {
            prop_assert_eq!(f.mul(&g).evaluate(&p).unwrap(), f.evaluate(&p).unwrap() * g.evaluate(&p).unwrap());
            prop_assert_eq!(f.add(&g).evaluate(&p).unwrap(), f.evaluate(&p).unwrap() + g.evaluate(&p).unwrap());
        }

        #[test]
        fn render_parse_roundtrip(f in arb_poly(3, 3)) {
            prop_assert_eq!(Poly::parse(&f.render(), 3).unwrap(), f);
        }
    }
}
