//! Kostant's Heisenberg subalgebra `n* = span{e_phi : <phi, theta> != 0}` and
//! the chart `C* x n* -> O_min`, `(c, x) -> Ad(exp x)(c f_theta)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::chevalley::ChevalleyBasis;
use crate::error::{Error, Result};
use crate::hamiltonian::OrbitPoint;
use crate::linalg::{self, SVec};
use crate::polyring::{Mono, Poly};
use crate::rational::{factorial, Q};
use crate::repbuild::RepModule;
use crate::rootsys::{RootSystem, RootVec, SimpleType};

/// Ordered basis `E_0, ..., E_{2h-4}` of `n*`; chart variable `x_i` is the
/// coefficient of `E_i = e_{phi_i}`.
#[derive(Debug, Clone)]
pub struct HeisenbergBasis {
    pub rs: Arc<RootSystem>,
    /// Positive-root indices `phi_i`.
    pub roots: Vec<usize>,
    /// Position of `theta` in `roots`.
    pub center_index: usize,
    /// Whether `roots` follows a reference labeling table.
    pub table_order: bool,
}

/// Filtered positive roots in canonical (height, then lexicographic) order.
pub fn kostant_roots(rs: &Arc<RootSystem>) -> HeisenbergBasis {
    let th = rs.theta_weight();
    let roots: Vec<usize> =
        (0..rs.num_positive()).filter(|&a| rs.pair(&th, &rs.positive_roots[a]) != 0 || a == rs.theta_index()).collect();
    let center_index = roots.iter().position(|&a| a == rs.theta_index()).unwrap();
    HeisenbergBasis { rs: rs.clone(), roots, center_index, table_order: false }
}

/// `E[i]` labels in simple-root coordinates, for the types that have a
/// reference table.
pub fn table_labels(ty: SimpleType) -> Option<Vec<RootVec>> {
    let rows: &[&[i64]] = match ty.to_string().as_str() {
        "B2" => &[&[0, 1], &[1, 2], &[1, 1]],
        "D3" => &[&[0, 1, 0], &[0, 0, 1], &[1, 1, 0], &[1, 0, 1], &[1, 1, 1]],
        "B3" => &[&[0, 1, 0], &[1, 1, 0], &[0, 1, 2], &[0, 1, 1], &[1, 1, 2], &[1, 1, 1], &[1, 2, 2]],
        "D4" => &[
            &[0, 1, 0, 0],
            &[1, 1, 0, 0],
            &[0, 1, 1, 0],
            &[0, 1, 0, 1],
            &[1, 1, 1, 0],
            &[1, 1, 0, 1],
            &[0, 1, 1, 1],
            &[1, 1, 1, 1],
            &[1, 2, 1, 1],
        ],
        "B4" => &[
            &[0, 1, 0, 0],
            &[1, 1, 0, 0],
            &[0, 1, 1, 0],
            &[1, 1, 1, 0],
            &[0, 1, 1, 2],
            &[0, 1, 1, 1],
            &[1, 1, 1, 2],
            &[0, 1, 2, 2],
            &[1, 1, 1, 1],
            &[1, 1, 2, 2],
            &[1, 2, 2, 2],
        ],
        "D5" => &[
            &[0, 1, 0, 0, 0],
            &[1, 1, 0, 0, 0],
            &[0, 1, 1, 0, 0],
            &[1, 1, 1, 0, 0],
            &[0, 1, 1, 1, 0],
            &[0, 1, 1, 0, 1],
            &[1, 1, 1, 1, 0],
            &[1, 1, 1, 0, 1],
            &[0, 1, 1, 1, 1],
            &[1, 1, 1, 1, 1],
            &[0, 1, 2, 1, 1],
            &[1, 1, 2, 1, 1],
            &[1, 2, 2, 1, 1],
        ],
        "G2" => &[&[0, 1], &[1, 1], &[3, 1], &[2, 1], &[3, 2]],
        _ => return None,
    };
    Some(rows.iter().map(|r| r.to_vec()).collect())
}

impl HeisenbergBasis {
    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Reorders to the reference labeling when the type has one.
    pub fn with_table_order(&self) -> Result<HeisenbergBasis> {
        let Some(labels) = table_labels(self.rs.ty) else {
            return Ok(self.clone());
        };
        let roots = labels
            .iter()
            .map(|l| {
                let a = self.rs.root_index(l).ok_or_else(|| Error::Internal(format!("label {l:?} is not a root")))?;
                if self.roots.contains(&a) {
                    Ok(a)
                } else {
                    Err(Error::Internal(format!("label {l:?} is not in n*")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        if roots.len() != self.roots.len() {
            return Err(Error::Internal("label table has the wrong size".into()));
        }
        let center_index = roots.iter().position(|&a| a == self.rs.theta_index()).unwrap();
        Ok(HeisenbergBasis { rs: self.rs.clone(), roots, center_index, table_order: true })
    }

    /// Flat Chevalley index of `E_i`.
    pub fn element(&self, cb: &ChevalleyBasis, i: usize) -> usize {
        cb.e(self.roots[i])
    }

    /// `[E_i, E_j]` as a multiple of `e_theta`, or `None` if it leaves `span{e_theta}`.
    pub fn bracket_coefficient(&self, cb: &ChevalleyBasis, i: usize, j: usize) -> Option<Q> {
        let br = cb.bracket(&vec![(self.element(cb, i), Q::one())], &vec![(self.element(cb, j), Q::one())]).ok()?;
        let center = cb.e(self.rs.theta_index());
        match br.as_slice() {
            [] => Some(Q::zero()),
            [(k, c)] if *k == center => Some(c.clone()),
            _ => None,
        }
    }

    /// Two-step nilpotency: every `[E_i, E_j]` lies in `span{e_theta}` and every
    /// `[E_i, [E_j, E_k]]` vanishes.
    pub fn check_two_step(&self, cb: &ChevalleyBasis) -> bool {
        let n = self.len();
        let center = vec![(cb.e(self.rs.theta_index()), Q::one())];
        for i in 0..n {
            let ei = vec![(self.element(cb, i), Q::one())];
            if !cb.bracket(&ei, &center).unwrap().is_empty() {
                return false;
            }
            for j in 0..n {
                if self.bracket_coefficient(cb, i, j).is_none() {
                    return false;
                }
                let ej = vec![(self.element(cb, j), Q::one())];
                let inner = cb.bracket(&ej, &ei).unwrap();
                for k in 0..n {
                    let ek = vec![(self.element(cb, k), Q::one())];
                    if !cb.bracket(&ek, &inner).unwrap().is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `sum x_i E_i` in flat coordinates.
    pub fn embed(&self, cb: &ChevalleyBasis, x: &[Q]) -> SVec {
        let mut acc = linalg::Acc::new();
        for (i, c) in x.iter().enumerate() {
            acc.add(self.element(cb, i), c.clone());
        }
        acc.finish()
    }
}

/// A point `(c, x)` of `C* x n*`.
#[derive(Debug, Clone, Serialize)]
pub struct ChartPoint {
    pub c: Q,
    pub x: Vec<Q>,
}

/// `Ad(exp(ad sum x_i E_i))(c f_theta)`.
pub fn chart_to_orbit(hb: &HeisenbergBasis, p: &ChartPoint, cb: &ChevalleyBasis) -> Result<OrbitPoint> {
    if p.c.is_zero() {
        return Err(Error::ZeroScale);
    }
    if p.x.len() != hb.len() {
        return Err(Error::BasisMismatch);
    }
    let ft = vec![(cb.f(hb.rs.theta_index()), p.c.clone())];
    let x = hb.embed(cb, &p.x);
    let coeffs = cb.exp_ad_vec(&x, &ft)?;
    Ok(OrbitPoint { coeffs, word: Vec::new() })
}

/// `<v^k, exp(sum x_i rho(E_i)) rho(f_theta)^r v_k> / r!` in the chart variables.
/// Zero when `r > m_k`.
pub fn heisenberg_hamiltonian(hb: &HeisenbergBasis, rep: &RepModule, k: usize, r: u32) -> Result<Poly> {
    let rs = &*hb.rs;
    if k >= rs.rank() {
        return Err(Error::BadNode { node: k + 1, rank: rs.rank() });
    }
    if rep.highest_weight != rs.fundamental_weight(k) {
        return Err(Error::BasisMismatch);
    }
    let nv = hb.len();
    let ft = rep.action(crate::chevalley::BasisIndex::NegRoot(rs.theta_index()));
    let mut w = rep.unit(rep.hw_index);
    for _ in 0..r {
        w = ft.apply(&w);
    }
    let mut total = Poly::zero(nv);
    if w.is_empty() {
        return Ok(total);
    }
    let mats: Vec<_> = (0..nv).map(|i| rep.action(crate::chevalley::BasisIndex::PosRoot(hb.roots[i]))).collect();
    // state = X^j w / j!, as a map from module basis index to polynomial
    let mut state: BTreeMap<usize, Poly> = w.into_iter().map(|(b, c)| (b, Poly::constant(nv, c))).collect();
    let mut j = 0i64;
    while !state.is_empty() {
        if let Some(p) = state.get(&rep.hw_index) {
            total.add_scaled(p, &Q::one());
        }
        j += 1;
        let inv = Q::from(j).recip();
        let mut next: BTreeMap<usize, Poly> = BTreeMap::new();
        for (&b, pb) in &state {
            for (i, m) in mats.iter().enumerate() {
                let xi = Mono::var(i);
                for (t, c) in &m.cols[b] {
                    next.entry(*t)
                        .or_insert_with(|| Poly::zero(nv))
                        .add_scaled(&pb.mul_mono(&xi, &(c * &inv)), &Q::one());
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        state = next;
    }
    Ok(total.scale(&factorial(r).recip()))
}

/// One generated table: `cells[r-1][k]` is the order-`r` Hamiltonian of node `k`.
#[derive(Debug, Clone)]
pub struct HeisenbergTable {
    pub ty: SimpleType,
    pub labels: Vec<RootVec>,
    pub cells: Vec<Vec<Poly>>,
    pub m: Vec<i64>,
}

/// Generates orders `1..=max(2, max m_k)` for every node.
pub fn heisenberg_table(hb: &HeisenbergBasis, reps: &[RepModule]) -> Result<HeisenbergTable> {
    let rs = &*hb.rs;
    let orders = rs.comarks.iter().copied().max().unwrap_or(1).max(2) as u32;
    let cells = (1..=orders)
        .map(|r| (0..rs.rank()).map(|k| heisenberg_hamiltonian(hb, &reps[k], k, r)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(HeisenbergTable {
        ty: rs.ty,
        labels: hb.roots.iter().map(|&a| rs.positive_roots[a].clone()).collect(),
        cells,
        m: rs.comarks.clone(),
    })
}

/// Renders a root as `a1+2a2`.
pub fn root_label(r: &[i64]) -> String {
    let parts: Vec<String> = r
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| if c == 1 { format!("a{}", i + 1) } else { format!("{c}a{}", i + 1) })
        .collect();
    parts.join("+")
}

impl HeisenbergTable {
    /// Row/column text layout.
    pub fn render(&self) -> String {
        let mut s = format!("{}: x = sum x_i E[i]\n", self.ty);
        for (i, l) in self.labels.iter().enumerate() {
            s.push_str(&format!("  E[{i}] = {}\n", root_label(l)));
        }
        for (r, row) in self.cells.iter().enumerate() {
            s.push_str(&format!("Order-{}\n", r + 1));
            for (k, p) in row.iter().enumerate() {
                s.push_str(&format!("  w{}: {}\n", k + 1, p.render()));
            }
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.ty.to_string(),
            "labels": self.labels,
            "m": self.m,
            "orders": self.cells.iter().map(|row| row.iter().map(|p| p.render()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}
