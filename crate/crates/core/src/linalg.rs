//! Sparse vectors, sparse column matrices and small dense exact linear algebra.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::rational::Q;

/// Sparse vector: strictly increasing indices, no zero coefficients.
pub type SVec = Vec<(usize, Q)>;

/// Accumulator used to build an [`SVec`] from unordered contributions.
#[derive(Default, Clone, Debug)]
pub struct Acc(BTreeMap<usize, Q>);

impl Acc {
    pub fn new() -> Self {
        Acc(BTreeMap::new())
    }

    pub fn add(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(i) {
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

    pub fn add_scaled(&mut self, v: &SVec, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v {
            self.add(*i, x * c);
        }
    }

    pub fn finish(self) -> SVec {
        self.0.into_iter().collect()
    }
}

/// `a + c * b`.
pub fn axpy(a: &SVec, c: &Q, b: &SVec) -> SVec {
    if c.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, &b[j].1 * c));
            j += 1;
        } else {
            let s = &a[i].1 + &(&b[j].1 * c);
            if !s.is_zero() {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SVec, c: &Q) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn coeff(v: &SVec, i: usize) -> Q {
    match v.binary_search_by_key(&i, |e| e.0) {
        Ok(p) => v[p].1.clone(),
        Err(_) => Q::zero(),
    }
}

pub fn to_dense(v: &SVec, n: usize) -> Vec<Q> {
    let mut d = vec![Q::zero(); n];
    for (i, x) in v {
        d[*i] = x.clone();
    }
    d
}

pub fn from_dense(d: &[Q]) -> SVec {
    d.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Sparse matrix stored by columns: `cols[j]` is the image of basis vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub nrows: usize,
    pub cols: Vec<SVec>,
}

impl SparseMat {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseMat { nrows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { nrows: n, cols: (0..n).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn apply(&self, v: &SVec) -> SVec {
        match v.len() {
            0 => Vec::new(),
            1 => scale(&self.cols[v[0].0], &v[0].1),
            _ => {
                let mut acc = Acc::new();
                for (j, x) in v {
                    acc.add_scaled(&self.cols[*j], x);
                }
                acc.finish()
            }
        }
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        SparseMat { nrows: self.nrows, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add_scaled(&self, other: &SparseMat, c: &Q) -> SparseMat {
        SparseMat { nrows: self.nrows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| axpy(a, c, b)).collect() }
    }

    pub fn scale(&self, c: &Q) -> SparseMat {
        SparseMat { nrows: self.nrows, cols: self.cols.iter().map(|v| scale(v, c)).collect() }
    }

    /// `self * other - other * self`.
    pub fn commutator(&self, other: &SparseMat) -> SparseMat {
        let ab = self.mul(other);
        let ba = other.mul(self);
        ab.add_scaled(&ba, &-Q::one())
    }

    pub fn get(&self, i: usize, j: usize) -> Q {
        coeff(&self.cols[j], i)
    }

    pub fn to_dense(&self) -> Mat {
        let mut m = vec![vec![Q::zero(); self.ncols()]; self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, x) in col {
                m[*i][j] = x.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &Mat) -> SparseMat {
        let nrows = m.len();
        let ncols = if nrows == 0 { 0 } else { m[0].len() };
        let cols = (0..ncols)
            .map(|j| (0..nrows).filter(|&i| !m[i][j].is_zero()).map(|i| (i, m[i][j].clone())).collect())
            .collect();
        SparseMat { nrows, cols }
    }
}

/// Dense row-major matrix.
pub type Mat = Vec<Vec<Q>>;

pub fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> Mat {
    vec![vec![Q::zero(); c]; r]
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = if b.is_empty() { 0 } else { b[0].len() };
    let mut out = zeros(n, m);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += aik * &b[k][j];
                }
            }
        }
    }
    out
}

pub fn matvec(a: &Mat, v: &[Q]) -> Vec<Q> {
    a.iter().map(|row| row.iter().zip(v).filter(|(x, _)| !x.is_zero()).map(|(x, y)| x * y).sum()).collect()
}

pub fn mat_add_scaled(a: &Mat, c: &Q, b: &Mat) -> Mat {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + &(y * c)).collect()).collect()
}

pub fn is_zero_mat(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|x| x.is_zero()))
}

pub fn trace(a: &Mat) -> Q {
    (0..a.len()).map(|i| a[i][i].clone()).sum()
}

/// Upper-left `k x k` block.
pub fn block(a: &Mat, k: usize) -> Mat {
    a.iter().take(k).map(|r| r[..k].to_vec()).collect()
}

/// Rows scaled by their denominators' lcm so that elimination runs over the integers.
fn integer_rows(a: &Mat) -> Vec<Vec<BigInt>> {
    a.iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
            row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect()
}

/// Fraction-free (Bareiss) forward elimination in place; returns the rank.
fn bareiss(m: &mut [Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Exact rank over the rationals by fraction-free elimination.
pub fn rank(a: &Mat) -> usize {
    let mut m = integer_rows(a);
    bareiss(&mut m)
}

/// Exact determinant via fraction-free elimination.
pub fn det(a: &Mat) -> Q {
    let n = a.len();
    if n == 0 {
        return Q::one();
    }
    let mut scale_den = BigInt::one();
    let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
    for row in a {
        let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(&x.denom()));
        m.push(row.iter().map(|x| x.numer() * (&l / x.denom())).collect());
        scale_den *= l;
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Q::zero();
        };
        if p != c {
            m.swap(c, p);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                let v = &m[c][c] * &m[i][j] - &m[i][c] * &m[c][j];
                m[i][j] = v / &prev;
            }
            m[i][c] = BigInt::zero();
        }
        prev = m[c][c].clone();
    }
    Q::from(num_rational::BigRational::new(sign * &m[n - 1][n - 1], scale_den))
}

/// Inverse by Gauss-Jordan elimination; `None` when singular.
pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut m: Mat = a.to_vec();
    let mut inv = identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        inv.swap(c, p);
        let piv = m[c][c].recip();
        for j in 0..n {
            m[c][j] = &m[c][j] * &piv;
            inv[c][j] = &inv[c][j] * &piv;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..n {
                    let t = &m[c][j] * &f;
                    m[i][j] -= t;
                    let t = &inv[c][j] * &f;
                    inv[i][j] -= t;
                }
            }
        }
    }
    Some(inv)
}

/// Solves `a x = b` for square nonsingular `a`.
pub fn solve(a: &Mat, b: &[Q]) -> Option<Vec<Q>> {
    inverse(a).map(|inv| matvec(&inv, b))
}

/// Incremental row echelon form with full reduction, tracking how each stored
/// row was formed from the inserted vectors.
#[derive(Default, Debug, Clone)]
pub struct Echelon {
    /// Reduced rows with pivot coefficient 1; pivots are distinct.
    rows: Vec<(usize, SVec)>,
    /// `combo[r]` expresses row `r` in terms of the independent inputs.
    combo: Vec<SVec>,
    pivot_of: BTreeMap<usize, usize>,
    count: usize,
}

/// Outcome of inserting a vector into an [`Echelon`].
pub enum Insert {
    /// The vector was independent; it is input number `0`.
    New(usize),
    /// The vector equals this combination of earlier independent inputs.
    Dependent(SVec),
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.count
    }

    pub fn insert(&mut self, v: &SVec) -> Insert {
        let mut res = v.clone();
        // combination of stored rows subtracted so far
        let mut used = Acc::new();
        loop {
            let hit = res.iter().find_map(|(i, x)| self.pivot_of.get(i).map(|&r| (r, x.clone())));
            let Some((r, x)) = hit else { break };
            res = axpy(&res, &-x.clone(), &self.rows[r].1);
            used.add_scaled(&self.combo[r], &x);
        }
        let used = used.finish();
        if res.is_empty() {
            return Insert::Dependent(used);
        }
        let id = self.count;
        self.count += 1;
        let (p, pc) = res[0].clone();
        let inv = pc.recip();
        let row = scale(&res, &inv);
        // row = (v - used) / pc, and v is input `id`
        let mut c = scale(&used, &-inv.clone());
        c.push((id, inv.clone()));
        c.sort_by_key(|e| e.0);
        // keep rows fully reduced with respect to the new pivot
        for k in 0..self.rows.len() {
            let f = coeff(&self.rows[k].1, p);
            if !f.is_zero() {
                self.rows[k].1 = axpy(&self.rows[k].1, &-f.clone(), &row);
                self.combo[k] = axpy(&self.combo[k], &-f, &c);
            }
        }
        self.pivot_of.insert(p, self.rows.len());
        self.rows.push((p, row));
        self.combo.push(c);
        Insert::New(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};
    use proptest::prelude::*;

    fn leibniz_det(a: &Mat) -> Q {
        let n = a.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Q::zero();
        permute(&mut perm, 0, a, &mut total);
        total
    }

    fn permute(p: &mut Vec<usize>, k: usize, a: &Mat, total: &mut Q) {
        if k == p.len() {
            let mut inv = 0;
            for i in 0..p.len() {
                for j in i + 1..p.len() {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let prod: Q = (0..p.len()).map(|i| a[i][p[i]].clone()).product();
            if inv % 2 == 0 {
                *total += prod;
            } else {
                *total -= prod;
            }
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            permute(p, k + 1, a, total);
            p.swap(k, i);
        }
    }

    fn arb_mat(n: usize) -> impl Strategy<Value = Mat> {
        proptest::collection::vec(proptest::collection::vec((-3i64..4, 1i64..3), n), n)
            .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(|(a, b)| qr(a, b)).collect()).collect())
    }

    #[test]
    fn rank_of_known_matrices() {
        let m = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&identity(4)), 4);
        assert_eq!(rank(&zeros(3, 5)), 0);
    }

    #[test]
    fn echelon_expresses_dependents() {
        let mut e = Echelon::new();
        let a: SVec = vec![(0, q(1)), (1, q(2))];
        let b: SVec = vec![(1, q(1)), (2, q(1))];
        let c = axpy(&scale(&a, &q(3)), &qr(-1, 2), &b);
        assert!(matches!(e.insert(&a), Insert::New(0)));
        assert!(matches!(e.insert(&b), Insert::New(1)));
        match e.insert(&c) {
            Insert::Dependent(comb) => assert_eq!(comb, vec![(0, q(3)), (1, qr(-1, 2))]),
            Insert::New(_) => panic!("expected dependence"),
        }
    }

    proptest! {
        #[test]
        fn det_matches_leibniz(a in arb_mat(4)) {
            prop_assert_eq!(det(&a), leibniz_det(&a));
        }

        #[test]
        fn rank_full_iff_det_nonzero(a in arb_mat(4)) {
            prop_assert_eq!(rank(&a) == 4, !det(&a).is_zero());
        }

        #[test]
        fn inverse_roundtrip(a in arb_mat(3)) {
            if let Some(inv) = inverse(&a) {
                prop_assert_eq!(matmul(&a, &inv), identity(3));
            } else {
                prop_assert!(det(&a).is_zero());
            }
        }

        #[test]
        fn echelon_rank_matches_bareiss(a in arb_mat(5)) {
            let mut e = Echelon::new();
            for row in &a {
                e.insert(&from_dense(row));
            }
            prop_assert_eq!(e.rank(), rank(&a));
        }
    }

    #[test]
    fn sparse_commutator_matches_dense() {
        let a = vec![vec![q(0), q(1)], vec![q(0), q(0)]];
        let b = vec![vec![q(0), q(0)], vec![q(1), q(0)]];
        let sa = SparseMat::from_dense(&a);
        let sb = SparseMat::from_dense(&b);
        let c = sa.commutator(&sb).to_dense();
        assert_eq!(c, vec![vec![q(1), q(0)], vec![q(0), q(-1)]]);
    }
}
