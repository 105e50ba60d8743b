//! Dense linear algebra over a prime field F_p.
//!
//! Everything in this crate works with small matrices (dimensions in the
//! hundreds at most), so a straightforward row-reduction kernel is all we
//! need. Scalars are `u32` values in `0..p`.

use crate::Error;

/// A prime field context. All matrix routines take their field from the
/// matrix itself; this type mostly exists to validate `p` once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prime(pub u32);

impl Prime {
    pub fn new(p: u32) -> Result<Prime, Error> {
        if p < 2 || p > 17 || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Prime(p))
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).all(|d| d * d > n || n % d != 0)
}

#[inline]
pub fn fp_add(p: u32, a: u32, b: u32) -> u32 {
    (a + b) % p
}

#[inline]
pub fn fp_sub(p: u32, a: u32, b: u32) -> u32 {
    (a + p - b % p) % p
}

#[inline]
pub fn fp_mul(p: u32, a: u32, b: u32) -> u32 {
    (a * b) % p
}

#[inline]
pub fn fp_neg(p: u32, a: u32) -> u32 {
    (p - a % p) % p
}

/// Multiplicative inverse by Fermat; `a` must be nonzero mod p.
pub fn fp_inv(p: u32, a: u32) -> u32 {
    debug_assert!(a % p != 0);
    let mut acc = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduce an arbitrary signed integer into `0..p`.
pub fn fp_from_i64(p: u32, n: i64) -> u32 {
    (n.rem_euclid(p as i64)) as u32
}

/// A dense row-major matrix over F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMat {
    pub p: u32,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

impl FpMat {
    pub fn zero(p: u32, rows: usize, cols: usize) -> FpMat {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> FpMat {
        let mut m = FpMat::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> FpMat {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| v % p));
        }
        FpMat { p, rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn matmul(&self, other: &FpMat) -> FpMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in matmul");
        assert_eq!(self.p, other.p);
        let p = self.p;
        let mut out = FpMat::zero(p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = fp_add(p, out.get(i, j), fp_mul(p, a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = self.p;
        let mut out = vec![0u32; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u32;
            for j in 0..self.cols {
                acc = fp_add(p, acc, fp_mul(p, self.get(i, j), v[j]));
            }
            out[i] = acc;
        }
        out
    }

    pub fn transpose(&self) -> FpMat {
        let mut out = FpMat::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn add(&self, other: &FpMat) -> FpMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, &b) in out.data.iter_mut().zip(other.data.iter()) {
            *a = fp_add(self.p, *a, b);
        }
        out
    }

    pub fn scale(&self, c: u32) -> FpMat {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = fp_mul(self.p, *a, c);
        }
        out
    }

    /// In-place reduced row echelon form. Returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = fp_inv(p, self.get(r, c));
            for j in c..self.cols {
                let v = fp_mul(p, self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let f = self.get(i, c);
                    for j in c..self.cols {
                        let v = fp_sub(p, self.get(i, j), fp_mul(p, f, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (va, vb) = (self.get(a, j), self.get(b, j));
            self.set(a, j, vb);
            self.set(b, j, va);
        }
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel `{v : Mv = 0}`, as column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let p = self.p;
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = Some(r);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u32; self.cols];
            vec[free] = 1;
            for (c, pr) in pivot_set.iter().enumerate() {
                if let Some(r) = pr {
                    vec[c] = fp_neg(p, m.get(*r, free));
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Solve `Mx = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let p = self.p;
        let mut aug = FpMat::zero(p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i]);
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.get(r, self.cols);
        }
        Some(x)
    }
}

/// A subspace of F_p^n kept in reduced row echelon form, supporting
/// incremental insertion, membership tests and coordinates relative to an
/// original generating set.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub p: u32,
    pub ambient: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(p: u32, ambient: usize) -> Subspace {
        Subspace { p, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn from_vectors<'a, I: IntoIterator<Item = &'a Vec<u32>>>(
        p: u32,
        ambient: usize,
        vecs: I,
    ) -> Subspace {
        let mut s = Subspace::new(p, ambient);
        for v in vecs {
            s.insert(v);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current basis; returns the residue.
    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w = v.to_vec();
        for (row, &piv) in self.rows.iter().zip(self.pivots.iter()) {
            if w[piv] != 0 {
                let f = w[piv];
                for j in 0..self.ambient {
                    w[j] = fp_sub(p, w[j], fp_mul(p, f, row[j]));
                }
            }
        }
        w
    }

    /// Insert a vector; returns true if it enlarged the space.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ambient);
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = fp_inv(p, w[piv]);
        for x in w.iter_mut() {
            *x = fp_mul(p, *x, inv);
        }
        // back-substitute into existing rows
        for (row, _) in self.rows.iter_mut().zip(self.pivots.iter()) {
            if row[piv] != 0 {
                let f = row[piv];
                for j in 0..self.ambient {
                    row[j] = fp_sub(p, row[j], fp_mul(p, f, w[j]));
                }
            }
        }
        let at = self.pivots.iter().position(|&q| q > piv).unwrap_or(self.pivots.len());
        self.rows.insert(at, w);
        self.pivots.insert(at, piv);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Coordinates of `v` in the echelon basis, if `v` lies in the space.
    pub fn coordinates(&self, v: &[u32]) -> Option<Vec<u32>> {
        let p = self.p;
        let mut w = v.to_vec();
        let mut coords = vec![0u32; self.rows.len()];
        for (k, (row, &piv)) in self.rows.iter().zip(self.pivots.iter()).enumerate() {
            if w[piv] != 0 {
                let f = w[piv];
                coords[k] = f;
                for j in 0..self.ambient {
                    w[j] = fp_sub(p, w[j], fp_mul(p, f, row[j]));
                }
            }
        }
        if w.iter().all(|&x| x == 0) {
            Some(coords)
        } else {
            None
        }
    }
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect_spans(p: u32, ambient: usize, u: &[Vec<u32>], w: &[Vec<u32>]) -> Vec<Vec<u32>> {
    // Kernel of [U^T | W^T] gives coefficient pairs with Uc = Wd.
    let nu = u.len();
    let nw = w.len();
    if nu == 0 || nw == 0 {
        return Vec::new();
    }
    let mut m = FpMat::zero(p, ambient, nu + nw);
    for (k, v) in u.iter().enumerate() {
        for i in 0..ambient {
            m.set(i, k, v[i]);
        }
    }
    for (k, v) in w.iter().enumerate() {
        for i in 0..ambient {
            m.set(i, nu + k, fp_neg(p, v[i]));
        }
    }
    let mut out = Subspace::new(p, ambient);
    for ker in m.kernel_basis() {
        let mut vec = vec![0u32; ambient];
        for (k, v) in u.iter().enumerate() {
            for i in 0..ambient {
                vec[i] = fp_add(p, vec[i], fp_mul(p, ker[k], v[i]));
            }
        }
        out.insert(&vec);
    }
    out.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_kernel() {
        let m = FpMat::from_rows(2, &[vec![1, 1, 0], vec![1, 1, 1], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert!(m.apply(&ker[0]).iter().all(|&v| v == 0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = FpMat::from_rows(5, &[vec![2, 1], vec![1, 3]]);
        let x = m.solve(&[4, 2]).unwrap();
        assert_eq!(m.apply(&x), vec![4, 2]);
        let sing = FpMat::from_rows(5, &[vec![1, 1], vec![2, 2]]);
        assert!(sing.solve(&[1, 0]).is_none());
    }

    #[test]
    fn subspace_membership_coordinates() {
        let mut s = Subspace::new(3, 4);
        assert!(s.insert(&[1, 2, 0, 1]));
        assert!(s.insert(&[0, 1, 1, 0]));
        assert!(!s.insert(&[1, 0, 1, 1])); // combination of the first two
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[2, 2, 1, 2])); // 2·v1 + v2
        assert!(!s.contains(&[0, 0, 0, 1]));
        let c = s.coordinates(&[2, 2, 1, 2]).unwrap();
        let mut acc = vec![0u32; 4];
        for (k, row) in s.basis().iter().enumerate() {
            for j in 0..4 {
                acc[j] = fp_add(3, acc[j], fp_mul(3, c[k], row[j]));
            }
        }
        assert_eq!(acc, vec![2, 2, 1, 2]);
    }

    #[test]
    fn inverse_all_elements() {
        for p in [2u32, 3, 5, 7, 11, 13, 17] {
            for a in 1..p {
                assert_eq!(fp_mul(p, a, fp_inv(p, a)), 1);
            }
        }
    }

    #[test]
    fn intersect_planes() {
        // span{e1,e2} ∩ span{e2,e3} = span{e2} over F_2
        let u = vec![vec![1, 0, 0], vec![0, 1, 0]];
        let w = vec![vec![0, 1, 0], vec![0, 0, 1]];
        let i = intersect_spans(2, 3, &u, &w);
        assert_eq!(i, vec![vec![0, 1, 0]]);
    }
}
