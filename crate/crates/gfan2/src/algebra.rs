//! Finite-dimensional based algebras over F_p.
//!
//! An [`Algebra`] is a basis with structure constants, a unit vector and a
//! declared radical basis. A [`BasedAlgebra`] adds the pair of orthogonal
//! idempotents that makes it an elementary algebra of rank 2. Structure
//! constants are stored sparsely; the algebras arising here (bound quiver
//! algebras, trivial extensions, endomorphism algebras) multiply basis
//! elements to very few terms.

use std::collections::BTreeMap;

use crate::fp::{fp_add, fp_mul, fp_neg, intersect_spans, FpMat, Prime, Subspace};
use crate::Error;

pub type Vector = Vec<u32>;

/// Sparse coordinate vector: sorted (index, nonzero coefficient) pairs.
type SparseVec = Vec<(usize, u32)>;

fn to_sparse(v: &[u32]) -> SparseVec {
    v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect()
}

fn to_dense(v: &SparseVec, dim: usize) -> Vector {
    let mut out = vec![0; dim];
    for &(i, c) in v {
        out[i] = c;
    }
    out
}

/// An associative unital algebra over F_p given by structure constants.
#[derive(Debug, Clone)]
pub struct Algebra {
    pub p: u32,
    pub labels: Vec<String>,
    /// mult[i * dim + j] = sparse coordinates of b_i · b_j
    mult: Vec<SparseVec>,
    pub unit: Vector,
    /// Basis of the Jacobson radical, carried as data by every constructor.
    pub radical: Vec<Vector>,
}

impl Algebra {
    pub fn new(
        p: u32,
        labels: Vec<String>,
        mult_dense: &dyn Fn(usize, usize) -> Vector,
        unit: Vector,
        radical: Vec<Vector>,
    ) -> Result<Algebra, Error> {
        Prime::new(p)?;
        let dim = labels.len();
        let mut mult = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = mult_dense(i, j);
                if v.len() != dim {
                    return Err(Error::InvalidAlgebra("structure constant vector length".into()));
                }
                mult.push(to_sparse(&v));
            }
        }
        Ok(Algebra { p, labels, mult, unit, radical })
    }

    /// The base field as a one-dimensional algebra.
    pub fn field(p: u32) -> Algebra {
        Algebra {
            p,
            labels: vec!["1".into()],
            mult: vec![vec![(0, 1)]],
            unit: vec![1],
            radical: vec![],
        }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim() + j]
    }

    pub fn basis_product_dense(&self, i: usize, j: usize) -> Vector {
        to_dense(self.basis_product(i, j), self.dim())
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vector {
        let p = self.p;
        let dim = self.dim();
        let mut out = vec![0u32; dim];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                let c = fp_mul(p, xi, yj);
                for &(k, m) in self.basis_product(i, j) {
                    out[k] = fp_add(p, out[k], fp_mul(p, c, m));
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[u32], y: &[u32]) -> Vector {
        x.iter().zip(y).map(|(&a, &b)| fp_add(self.p, a, b)).collect()
    }

    pub fn scale(&self, c: u32, x: &[u32]) -> Vector {
        x.iter().map(|&a| fp_mul(self.p, c, a)).collect()
    }

    pub fn sub(&self, x: &[u32], y: &[u32]) -> Vector {
        x.iter().zip(y).map(|(&a, &b)| fp_add(self.p, a, fp_neg(self.p, b))).collect()
    }

    /// Matrix of y ↦ x·y.
    pub fn left_mult_matrix(&self, x: &[u32]) -> FpMat {
        let dim = self.dim();
        let mut m = FpMat::zero(self.p, dim, dim);
        for j in 0..dim {
            let mut e = vec![0u32; dim];
            e[j] = 1;
            let col = self.mul(x, &e);
            for (i, &c) in col.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mult_matrix(&self, x: &[u32]) -> FpMat {
        let dim = self.dim();
        let mut m = FpMat::zero(self.p, dim, dim);
        for j in 0..dim {
            let mut e = vec![0u32; dim];
            e[j] = 1;
            let col = self.mul(&e, x);
            for (i, &c) in col.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn is_unit_two_sided(&self) -> bool {
        let dim = self.dim();
        (0..dim).all(|i| {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    pub fn is_associative(&self) -> bool {
        let dim = self.dim();
        let p = self.p;
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.basis_product(i, j).clone();
                for k in 0..dim {
                    let mut lhs = vec![0u32; dim];
                    for &(l, c) in &ij {
                        for &(m, d) in self.basis_product(l, k) {
                            lhs[m] = fp_add(p, lhs[m], fp_mul(p, c, d));
                        }
                    }
                    let mut rhs = vec![0u32; dim];
                    for &(l, c) in self.basis_product(j, k) {
                        for &(m, d) in self.basis_product(i, l) {
                            rhs[m] = fp_add(p, rhs[m], fp_mul(p, c, d));
                        }
                    }
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn is_nilpotent_matrix(&self, m: &FpMat) -> bool {
        // m^k for k ≥ dim vanishes iff m is nilpotent
        let mut acc = m.clone();
        let mut e = self.dim().next_power_of_two().max(1);
        while e > 1 {
            if acc.is_zero() {
                return true;
            }
            acc = acc.matmul(&acc);
            e >>= 1;
        }
        acc.is_zero()
    }

    pub fn is_nilpotent(&self, x: &[u32]) -> bool {
        self.is_nilpotent_matrix(&self.left_mult_matrix(x))
    }

    /// The unique λ with x − λ·1 nilpotent, if the algebra is local with
    /// residue field F_p.
    pub fn residue_scalar(&self, x: &[u32]) -> Option<u32> {
        let mut found = None;
        for lambda in 0..self.p {
            let shifted = self.sub(x, &self.scale(lambda, &self.unit));
            if self.is_nilpotent(&shifted) {
                if found.is_some() {
                    return None; // not local
                }
                found = Some(lambda);
            }
        }
        found
    }

    /// Recompute the radical of a local algebra with residue F_p by the
    /// scalar scan. Certifies locality on the way (ideal + nilpotent +
    /// codimension one), so this also serves as an independent check of a
    /// carried radical.
    pub fn local_radical(&self) -> Result<Vec<Vector>, Error> {
        let dim = self.dim();
        let mut functional = Vec::with_capacity(dim);
        for i in 0..dim {
            let mut e = vec![0u32; dim];
            e[i] = 1;
            functional.push(self.residue_scalar(&e).ok_or(Error::NotLocal)?);
        }
        let mut span = Subspace::new(self.p, dim);
        for i in 0..dim {
            let mut v = vec![0u32; dim];
            v[i] = 1;
            let v = self.sub(&v, &self.scale(functional[i], &self.unit));
            span.insert(&v);
        }
        let rad: Vec<Vector> = span.basis().to_vec();
        if rad.len() + 1 != dim {
            return Err(Error::NotLocal);
        }
        if !self.is_ideal(&rad) || !self.is_nilpotent_ideal(&rad) {
            return Err(Error::NotLocal);
        }
        Ok(rad)
    }

    pub fn is_ideal(&self, gens: &[Vector]) -> bool {
        let dim = self.dim();
        let span = Subspace::from_vectors(self.p, dim, gens.iter());
        gens.iter().all(|g| {
            (0..dim).all(|i| {
                let mut e = vec![0u32; dim];
                e[i] = 1;
                span.contains(&self.mul(&e, g)) && span.contains(&self.mul(g, &e))
            })
        })
    }

    pub fn is_nilpotent_ideal(&self, gens: &[Vector]) -> bool {
        let dim = self.dim();
        let mut cur = Subspace::from_vectors(self.p, dim, gens.iter());
        loop {
            if cur.dim() == 0 {
                return true;
            }
            let mut next = Subspace::new(self.p, dim);
            for g in gens {
                for c in cur.basis() {
                    next.insert(&self.mul(g, c));
                }
            }
            // J^{k+1} ⊆ J^k for an ideal, so the dimension stabilizing at a
            // nonzero value means the chain never vanishes
            if next.dim() >= cur.dim() {
                return false;
            }
            cur = next;
        }
    }

    /// The opposite algebra: same basis, reversed products.
    pub fn opposite(&self) -> Algebra {
        let dim = self.dim();
        let mut mult = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                mult.push(self.basis_product(j, i).clone());
            }
        }
        Algebra {
            p: self.p,
            labels: self.labels.clone(),
            mult,
            unit: self.unit.clone(),
            radical: self.radical.clone(),
        }
    }

    /// Structure constants of the subalgebra spanned by `basis` (which must
    /// be multiplicatively closed and contain `unit`).
    pub fn subalgebra(&self, basis: &[Vector], unit: &[u32]) -> Result<Algebra, Error> {
        let span = Subspace::from_vectors(self.p, self.dim(), basis.iter());
        let coords = |v: &[u32]| -> Result<Vector, Error> {
            // express in the *given* basis, not the echelon one
            let mut m = FpMat::zero(self.p, self.dim(), basis.len());
            for (k, b) in basis.iter().enumerate() {
                for i in 0..self.dim() {
                    m.set(i, k, b[i]);
                }
            }
            m.solve(v).ok_or_else(|| Error::InvalidAlgebra("not closed under product".into()))
        };
        if !span.contains(unit) {
            return Err(Error::InvalidAlgebra("subalgebra misses the unit".into()));
        }
        let mut mult = Vec::with_capacity(basis.len() * basis.len());
        for x in basis {
            for y in basis {
                mult.push(to_sparse(&coords(&self.mul(x, y))?));
            }
        }
        let labels = (0..basis.len()).map(|k| format!("s{k}")).collect();
        let unit_c = coords(unit)?;
        Ok(Algebra { p: self.p, labels, mult, unit: unit_c, radical: vec![] })
    }
}

/// An elementary algebra of rank 2: a based algebra with a designated pair
/// of orthogonal idempotents summing to the unit.
#[derive(Debug, Clone)]
pub struct BasedAlgebra {
    pub alg: Algebra,
    pub e1: Vector,
    pub e2: Vector,
}

impl BasedAlgebra {
    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn p(&self) -> u32 {
        self.alg.p
    }

    /// k × k, the algebra whose g-fan is the coordinate cross.
    pub fn k_times_k(p: u32) -> BasedAlgebra {
        let mult = |i: usize, j: usize| -> Vector {
            let mut v = vec![0u32; 2];
            if i == j {
                v[i] = 1;
            }
            v
        };
        let alg = Algebra::new(p, vec!["e1".into(), "e2".into()], &mult, vec![1, 1], vec![])
            .expect("k×k is well formed");
        BasedAlgebra { alg, e1: vec![1, 0], e2: vec![0, 1] }
    }

    /// Opposite algebra; the idempotent pair is kept in place, so the g-fan
    /// of the result is the point reflection of the original one.
    pub fn opposite(&self) -> BasedAlgebra {
        BasedAlgebra { alg: self.alg.opposite(), e1: self.e1.clone(), e2: self.e2.clone() }
    }

    /// Exchange the roles of the two idempotents (transposes the g-fan).
    pub fn swap_idempotents(&self) -> BasedAlgebra {
        BasedAlgebra { alg: self.alg.clone(), e1: self.e2.clone(), e2: self.e1.clone() }
    }

    /// Peirce block e_i Λ e_j (i, j ∈ {1,2}), as a basis in parent coordinates.
    pub fn peirce_block(&self, i: usize, j: usize) -> Vec<Vector> {
        let ei = if i == 1 { &self.e1 } else { &self.e2 };
        let ej = if j == 1 { &self.e1 } else { &self.e2 };
        let dim = self.dim();
        let mut span = Subspace::new(self.p(), dim);
        for k in 0..dim {
            let mut e = vec![0u32; dim];
            e[k] = 1;
            span.insert(&self.alg.mul(ei, &self.alg.mul(&e, ej)));
        }
        span.basis().to_vec()
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.peirce_block(2, 1).is_empty()
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.peirce_block(1, 2).is_empty()
    }
}

/// Result of `validate_algebra`; report-valued, never fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraReport {
    pub unit_ok: bool,
    pub associative: bool,
    pub idempotents_ok: bool,
    pub radical_ideal: bool,
    pub radical_nilpotent: bool,
    pub quotient_rank_two: bool,
    /// Declared radical equals corner non-units plus both off-diagonal blocks.
    pub radical_matches_scan: bool,
}

impl AlgebraReport {
    pub fn is_valid(&self) -> bool {
        self.unit_ok
            && self.associative
            && self.idempotents_ok
            && self.radical_ideal
            && self.radical_nilpotent
            && self.quotient_rank_two
            && self.radical_matches_scan
    }
}

pub fn validate_algebra(la: &BasedAlgebra) -> AlgebraReport {
    let alg = &la.alg;
    let p = la.p();
    let dim = la.dim();
    let unit_ok = alg.is_unit_two_sided();
    let associative = unit_ok && alg.is_associative();
    let zero = vec![0u32; dim];
    let idempotents_ok = unit_ok
        && alg.mul(&la.e1, &la.e1) == la.e1
        && alg.mul(&la.e2, &la.e2) == la.e2
        && alg.mul(&la.e1, &la.e2) == zero
        && alg.mul(&la.e2, &la.e1) == zero
        && alg.add(&la.e1, &la.e2) == alg.unit;
    let radical_ideal = associative && alg.is_ideal(&alg.radical);
    let radical_nilpotent = radical_ideal && alg.is_nilpotent_ideal(&alg.radical);
    let rad_span = Subspace::from_vectors(p, dim, alg.radical.iter());
    let quotient_rank_two = idempotents_ok && rad_span.dim() + 2 == dim && {
        let mut full = rad_span.clone();
        full.insert(&la.e1) && full.insert(&la.e2)
    };
    let radical_matches_scan = quotient_rank_two && associative && radical_scan_matches(la);
    AlgebraReport {
        unit_ok,
        associative,
        idempotents_ok,
        radical_ideal,
        radical_nilpotent,
        quotient_rank_two,
        radical_matches_scan,
    }
}

fn radical_scan_matches(la: &BasedAlgebra) -> bool {
    let p = la.p();
    let dim = la.dim();
    let mut computed = Subspace::new(p, dim);
    for (i, e) in [(1usize, la.e1.clone()), (2, la.e2.clone())] {
        let corner = la.peirce_block(i, i);
        let Ok(sub) = la.alg.subalgebra(&corner, &e) else {
            return false;
        };
        let Ok(rad) = sub.local_radical() else {
            return false;
        };
        for r in &rad {
            // back to parent coordinates
            let mut v = vec![0u32; dim];
            for (k, b) in corner.iter().enumerate() {
                for t in 0..dim {
                    v[t] = fp_add(p, v[t], fp_mul(p, r[k], b[t]));
                }
            }
            computed.insert(&v);
        }
    }
    for v in la.peirce_block(1, 2).iter().chain(la.peirce_block(2, 1).iter()) {
        computed.insert(v);
    }
    let declared = Subspace::from_vectors(p, dim, la.alg.radical.iter());
    declared.dim() == computed.dim() && la.alg.radical.iter().all(|v| computed.contains(v))
}

/// Which sign split to take.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eps {
    PlusMinus,
    MinusPlus,
}

/// The Peirce data of a triangular algebra [[A, X],[0, B]]: two local
/// corners and the bimodule with its action matrices.
#[derive(Debug, Clone)]
pub struct TriangularData {
    pub a: Algebra,
    pub b: Algebra,
    pub x_labels: Vec<String>,
    /// left[i] = matrix of the action of the i-th A-basis element on X
    pub left: Vec<FpMat>,
    /// right[j] = matrix of the action of the j-th B-basis element on X
    pub right: Vec<FpMat>,
}

impl TriangularData {
    pub fn p(&self) -> u32 {
        self.a.p
    }

    pub fn x_dim(&self) -> usize {
        self.x_labels.len()
    }

    pub fn x_is_zero(&self) -> bool {
        self.x_dim() == 0
    }

    /// x ↦ a·x for an A-element in corner coordinates.
    pub fn act_left(&self, a: &[u32], x: &[u32]) -> Vector {
        let p = self.p();
        let mut out = vec![0u32; self.x_dim()];
        for (i, &c) in a.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let ax = self.left[i].apply(x);
            for (k, &v) in ax.iter().enumerate() {
                out[k] = fp_add(p, out[k], fp_mul(p, c, v));
            }
        }
        out
    }

    pub fn act_right(&self, x: &[u32], b: &[u32]) -> Vector {
        let p = self.p();
        let mut out = vec![0u32; self.x_dim()];
        for (j, &c) in b.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let xb = self.right[j].apply(x);
            for (k, &v) in xb.iter().enumerate() {
                out[k] = fp_add(p, out[k], fp_mul(p, c, v));
            }
        }
        out
    }

    /// J_A·X as a subspace of X.
    pub fn rad_left_image(&self) -> Subspace {
        let mut s = Subspace::new(self.p(), self.x_dim());
        for r in &self.a.radical {
            for k in 0..self.x_dim() {
                let mut e = vec![0u32; self.x_dim()];
                e[k] = 1;
                s.insert(&self.act_left(r, &e));
            }
        }
        s
    }

    /// X·J_B as a subspace of X.
    pub fn rad_right_image(&self) -> Subspace {
        let mut s = Subspace::new(self.p(), self.x_dim());
        for r in &self.b.radical {
            for k in 0..self.x_dim() {
                let mut e = vec![0u32; self.x_dim()];
                e[k] = 1;
                s.insert(&self.act_right(&e, r));
            }
        }
        s
    }

    /// ℓ = t_A(X), the minimal number of generators of X as a left A-module.
    pub fn t_left(&self) -> usize {
        self.x_dim() - self.rad_left_image().dim()
    }

    /// r = t(X)_B, the minimal number of generators as a right B-module.
    pub fn t_right(&self) -> usize {
        self.x_dim() - self.rad_right_image().dim()
    }

    /// Lexicographically first set of X-basis elements projecting to a basis
    /// of X/J_A·X; the canonical minimal left generating set.
    pub fn left_generators(&self) -> Vec<Vector> {
        let mut span = self.rad_left_image();
        let mut gens = Vec::new();
        for k in 0..self.x_dim() {
            let mut e = vec![0u32; self.x_dim()];
            e[k] = 1;
            if span.insert(&e) {
                gens.push(e);
            }
        }
        gens
    }

    /// Same on the right: canonical minimal generators of X as a B-module.
    pub fn right_generators(&self) -> Vec<Vector> {
        let mut span = self.rad_right_image();
        let mut gens = Vec::new();
        for k in 0..self.x_dim() {
            let mut e = vec![0u32; self.x_dim()];
            e[k] = 1;
            if span.insert(&e) {
                gens.push(e);
            }
        }
        gens
    }

    /// Verify the bimodule axioms against the corner structure constants.
    pub fn check_actions(&self) -> Result<(), Error> {
        let xd = self.x_dim();
        let complain = |m: &str| Err(Error::InvalidAlgebra(m.into()));
        if self.left.len() != self.a.dim() || self.right.len() != self.b.dim() {
            return complain("action matrix count");
        }
        let unit_l = {
            let mut m = FpMat::zero(self.p(), xd, xd);
            for (i, &c) in self.a.unit.iter().enumerate() {
                m = m.add(&self.left[i].scale(c));
            }
            m
        };
        let unit_r = {
            let mut m = FpMat::zero(self.p(), xd, xd);
            for (j, &c) in self.b.unit.iter().enumerate() {
                m = m.add(&self.right[j].scale(c));
            }
            m
        };
        if unit_l != FpMat::identity(self.p(), xd) || unit_r != FpMat::identity(self.p(), xd) {
            return complain("units do not act as identity on X");
        }
        for i in 0..self.a.dim() {
            for j in 0..self.a.dim() {
                let mut prod = FpMat::zero(self.p(), xd, xd);
                for &(k, c) in self.a.basis_product(i, j) {
                    prod = prod.add(&self.left[k].scale(c));
                }
                if self.left[i].matmul(&self.left[j]) != prod {
                    return complain("left action is not multiplicative");
                }
            }
        }
        for i in 0..self.b.dim() {
            for j in 0..self.b.dim() {
                let mut prod = FpMat::zero(self.p(), xd, xd);
                for &(k, c) in self.b.basis_product(i, j) {
                    prod = prod.add(&self.right[k].scale(c));
                }
                // (x·b_i)·b_j = x·(b_i b_j)
                if self.right[j].matmul(&self.right[i]) != prod {
                    return complain("right action is not multiplicative");
                }
            }
        }
        for l in &self.left {
            for r in &self.right {
                if l.matmul(r) != r.matmul(l) {
                    return complain("left and right actions do not commute");
                }
            }
        }
        Ok(())
    }

    /// Assemble the triangular algebra [[A, X],[0, B]] as a based algebra,
    /// with radical J_A ⊕ X ⊕ J_B.
    pub fn assemble(&self) -> BasedAlgebra {
        let p = self.p();
        let (da, dx, db) = (self.a.dim(), self.x_dim(), self.b.dim());
        let dim = da + dx + db;
        let mut labels = self.a.labels.iter().map(|l| format!("a:{l}")).collect::<Vec<_>>();
        labels.extend(self.x_labels.iter().map(|l| format!("x:{l}")));
        labels.extend(self.b.labels.iter().map(|l| format!("b:{l}")));
        let tri = self;
        let mult = move |i: usize, j: usize| -> Vector {
            let mut out = vec![0u32; dim];
            if i < da && j < da {
                for &(k, c) in tri.a.basis_product(i, j) {
                    out[k] = c;
                }
            } else if i < da && (da..da + dx).contains(&j) {
                let col = tri.left[i].apply(&unit_vec(dx, j - da));
                for (k, &c) in col.iter().enumerate() {
                    out[da + k] = c;
                }
            } else if (da..da + dx).contains(&i) && j >= da + dx {
                let col = tri.right[j - da - dx].apply(&unit_vec(dx, i - da));
                for (k, &c) in col.iter().enumerate() {
                    out[da + k] = c;
                }
            } else if i >= da + dx && j >= da + dx {
                for &(k, c) in tri.b.basis_product(i - da - dx, j - da - dx) {
                    out[da + dx + k] = c;
                }
            }
            out
        };
        let mut unit = vec![0u32; dim];
        unit[..da].copy_from_slice(&self.a.unit);
        unit[da + dx..].copy_from_slice(&self.b.unit);
        let mut e1 = vec![0u32; dim];
        e1[..da].copy_from_slice(&self.a.unit);
        let mut e2 = vec![0u32; dim];
        e2[da + dx..].copy_from_slice(&self.b.unit);
        let mut radical = Vec::new();
        for r in &self.a.radical {
            let mut v = vec![0u32; dim];
            v[..da].copy_from_slice(r);
            radical.push(v);
        }
        for k in 0..dx {
            let mut v = vec![0u32; dim];
            v[da + k] = 1;
            radical.push(v);
        }
        for r in &self.b.radical {
            let mut v = vec![0u32; dim];
            v[da + dx..].copy_from_slice(r);
            radical.push(v);
        }
        let alg = Algebra::new(p, labels, &mult, unit, radical).expect("triangular assembly");
        BasedAlgebra { alg, e1, e2 }
    }

    /// Quotient both corners by (radical ∩ annihilator of X). By the sign
    /// decomposition this does not change the fourth-quadrant part of the
    /// g-fan, and it keeps corner dimensions small along rotation walks.
    pub fn reduce_annihilators(&self) -> TriangularData {
        let a = quotient_corner(&self.a, &self.left);
        let b = quotient_corner(&self.b, &self.right);
        TriangularData {
            a: a.0,
            b: b.0,
            x_labels: self.x_labels.clone(),
            left: a.1,
            right: b.1,
        }
    }
}

fn unit_vec(dim: usize, k: usize) -> Vector {
    let mut v = vec![0u32; dim];
    v[k] = 1;
    v
}

/// Quotient a corner algebra by radical ∩ annihilator; returns the quotient
/// with its induced action matrices.
fn quotient_corner(alg: &Algebra, action: &[FpMat]) -> (Algebra, Vec<FpMat>) {
    let p = alg.p;
    let dim = alg.dim();
    let xd = action.first().map_or(0, |m| m.rows);
    // annihilator: elements acting as zero
    let mut ann_matrix = FpMat::zero(p, xd * xd, dim);
    for (i, m) in action.iter().enumerate() {
        for r in 0..xd {
            for c in 0..xd {
                ann_matrix.set(r * xd + c, i, m.get(r, c));
            }
        }
    }
    let ann = ann_matrix.kernel_basis();
    let ideal = intersect_spans(p, dim, &alg.radical, &ann);
    if ideal.is_empty() {
        return (alg.clone(), action.to_vec());
    }
    let ideal_span = Subspace::from_vectors(p, dim, ideal.iter());
    // representatives: standard basis vectors extending the ideal
    let mut ext = ideal_span.clone();
    let mut reps = Vec::new();
    for k in 0..dim {
        let e = unit_vec(dim, k);
        if ext.insert(&e) {
            reps.push(k);
        }
    }
    let qdim = reps.len();
    // change of basis: [ideal basis | reps] — projection to rep coordinates
    let mut basis_mat = FpMat::zero(p, dim, dim);
    for (c, v) in ideal_span.basis().iter().enumerate() {
        for r in 0..dim {
            basis_mat.set(r, c, v[r]);
        }
    }
    for (c, &k) in reps.iter().enumerate() {
        basis_mat.set(k, ideal_span.dim() + c, 1);
    }
    let project = |v: &[u32]| -> Vector {
        let sol = basis_mat.solve(v).expect("ideal + reps span the corner");
        sol[ideal_span.dim()..].to_vec()
    };
    let lift = |q: &[u32]| -> Vector {
        let mut v = vec![0u32; dim];
        for (c, &k) in reps.iter().enumerate() {
            v[k] = q[c];
        }
        v
    };
    let labels: Vec<String> = reps.iter().map(|&k| alg.labels[k].clone()).collect();
    let mult = |i: usize, j: usize| -> Vector {
        project(&alg.mul(&lift(&unit_vec(qdim, i)), &lift(&unit_vec(qdim, j))))
    };
    let unit = project(&alg.unit);
    let mut rad = Subspace::new(p, qdim);
    for r in &alg.radical {
        rad.insert(&project(r));
    }
    let q_alg = Algebra::new(p, labels, &mult, unit, rad.basis().to_vec()).expect("corner quotient");
    let q_action: Vec<FpMat> = reps.iter().map(|&k| action[k].clone()).collect();
    (q_alg, q_action)
}

/// Extract all four Peirce blocks with dimensions; a report structure.
#[derive(Debug, Clone)]
pub struct PeirceBlocks {
    /// basis[i][j] spans e_{i+1} Λ e_{j+1} in parent coordinates
    pub basis: [[Vec<Vector>; 2]; 2],
}

impl PeirceBlocks {
    pub fn dims(&self) -> [[usize; 2]; 2] {
        [
            [self.basis[0][0].len(), self.basis[0][1].len()],
            [self.basis[1][0].len(), self.basis[1][1].len()],
        ]
    }
}

pub fn peirce_decompose(la: &BasedAlgebra) -> PeirceBlocks {
    PeirceBlocks {
        basis: [
            [la.peirce_block(1, 1), la.peirce_block(1, 2)],
            [la.peirce_block(2, 1), la.peirce_block(2, 2)],
        ],
    }
}

/// The triangular data of the sign split ε: for ε = (+,−) the corners are
/// (e1Λe1, e2Λe2) with bimodule e1Λe2; for ε = (−,+) the roles of the
/// idempotents are exchanged. The complementary off-diagonal block is
/// dropped, which leaves the ε-quadrant of the g-fan unchanged.
pub fn triangular(la: &BasedAlgebra, eps: Eps) -> Result<TriangularData, Error> {
    let (ea, eb) = match eps {
        Eps::PlusMinus => (&la.e1, &la.e2),
        Eps::MinusPlus => (&la.e2, &la.e1),
    };
    let p = la.p();
    let dim = la.dim();
    let corner = |e: &Vector| -> Vec<Vector> {
        let mut span = Subspace::new(p, dim);
        for k in 0..dim {
            let e_k = unit_vec(dim, k);
            span.insert(&la.alg.mul(e, &la.alg.mul(&e_k, e)));
        }
        span.basis().to_vec()
    };
    let a_basis = corner(ea);
    let b_basis = corner(eb);
    let x_basis = {
        let mut span = Subspace::new(p, dim);
        for k in 0..dim {
            let e_k = unit_vec(dim, k);
            span.insert(&la.alg.mul(ea, &la.alg.mul(&e_k, eb)));
        }
        span.basis().to_vec()
    };
    let corner_algebra = |basis: &[Vector], e: &Vector| -> Result<Algebra, Error> {
        let mut alg = la.alg.subalgebra(basis, e)?;
        // induced radical: J(Λ) ∩ corner, in corner coordinates
        let inter = intersect_spans(p, dim, &la.alg.radical, &basis.to_vec());
        let mut basis_mat = FpMat::zero(p, dim, basis.len());
        for (c, v) in basis.iter().enumerate() {
            for r in 0..dim {
                basis_mat.set(r, c, v[r]);
            }
        }
        let mut rad = Vec::new();
        for v in inter {
            rad.push(basis_mat.solve(&v).ok_or(Error::NotLocal)?);
        }
        alg.radical = rad;
        // corners of an elementary rank-2 algebra must be local
        alg.local_radical()?;
        alg.labels = basis
            .iter()
            .enumerate()
            .map(|(k, v)| label_for(&la.alg, v).unwrap_or(format!("c{k}")))
            .collect();
        Ok(alg)
    };
    let a = corner_algebra(&a_basis, ea)?;
    let b = corner_algebra(&b_basis, eb)?;
    let xd = x_basis.len();
    let mut x_mat = FpMat::zero(p, dim, xd);
    for (c, v) in x_basis.iter().enumerate() {
        for r in 0..dim {
            x_mat.set(r, c, v[r]);
        }
    }
    let x_coords = |v: &[u32]| -> Vector { x_mat.solve(v).expect("product stays in the block") };
    let left: Vec<FpMat> = a_basis
        .iter()
        .map(|av| {
            let mut m = FpMat::zero(p, xd, xd);
            for (c, xv) in x_basis.iter().enumerate() {
                let prod = x_coords(&la.alg.mul(av, xv));
                for (r, &val) in prod.iter().enumerate() {
                    m.set(r, c, val);
                }
            }
            m
        })
        .collect();
    let right: Vec<FpMat> = b_basis
        .iter()
        .map(|bv| {
            let mut m = FpMat::zero(p, xd, xd);
            for (c, xv) in x_basis.iter().enumerate() {
                let prod = x_coords(&la.alg.mul(xv, bv));
                for (r, &val) in prod.iter().enumerate() {
                    m.set(r, c, val);
                }
            }
            m
        })
        .collect();
    let x_labels = x_basis
        .iter()
        .enumerate()
        .map(|(k, v)| label_for(&la.alg, v).unwrap_or(format!("x{k}")))
        .collect();
    let tri = TriangularData { a, b, x_labels, left, right };
    tri.check_actions()?;
    Ok(tri)
}

fn label_for(alg: &Algebra, v: &[u32]) -> Option<String> {
    let nz: Vec<usize> = v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect();
    if nz.len() == 1 && v[nz[0]] == 1 {
        Some(alg.labels[nz[0]].clone())
    } else {
        None
    }
}

/// A finite-dimensional one-sided module over an algebra, given by the
/// action matrix of each algebra basis element (already oriented so that
/// `action[i]` is "multiply by b_i on the module").
#[derive(Debug, Clone)]
pub struct OneSidedModule {
    pub p: u32,
    pub dim: usize,
    pub action: Vec<FpMat>,
}

impl OneSidedModule {
    /// X as a left A-module.
    pub fn x_left(tri: &TriangularData) -> OneSidedModule {
        OneSidedModule { p: tri.p(), dim: tri.x_dim(), action: tri.left.clone() }
    }

    /// X as a right B-module.
    pub fn x_right(tri: &TriangularData) -> OneSidedModule {
        OneSidedModule { p: tri.p(), dim: tri.x_dim(), action: tri.right.clone() }
    }

    /// A corner algebra as a module over a subalgebra (by left or right
    /// multiplication inside the corner).
    pub fn corner_over_subalgebra(
        corner: &Algebra,
        sub_basis: &[Vector],
        left_multiplication: bool,
    ) -> OneSidedModule {
        let action = sub_basis
            .iter()
            .map(|s| {
                if left_multiplication {
                    corner.left_mult_matrix(s)
                } else {
                    corner.right_mult_matrix(s)
                }
            })
            .collect();
        OneSidedModule { p: corner.p, dim: corner.dim(), action }
    }

    fn radical_submodule(&self, radical: &[Vector], start: &Subspace) -> Subspace {
        let mut next = Subspace::new(self.p, self.dim);
        for r in radical {
            for v in start.basis() {
                let mut out = vec![0u32; self.dim];
                for (i, &c) in r.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let av = self.action[i].apply(v);
                    for (k, &x) in av.iter().enumerate() {
                        out[k] = fp_add(self.p, out[k], fp_mul(self.p, c, x));
                    }
                }
                next.insert(&out);
            }
        }
        next
    }

    /// Dimensions of the radical filtration layers J^i·M / J^{i+1}·M.
    pub fn radical_layers(&self, radical: &[Vector]) -> Vec<usize> {
        let mut layers = Vec::new();
        let mut cur = Subspace::new(self.p, self.dim);
        for k in 0..self.dim {
            cur.insert(&unit_vec(self.dim, k));
        }
        loop {
            let next = self.radical_submodule(radical, &cur);
            layers.push(cur.dim() - next.dim());
            if next.dim() == 0 {
                break;
            }
            if next.dim() == cur.dim() {
                // radical not nilpotent on M; treated as a single huge layer
                break;
            }
            cur = next;
        }
        layers
    }
}

/// Minimal number of generators of a module over a local algebra: the
/// dimension of M / J·M. The acting algebra is re-certified local by the
/// scalar scan.
pub fn min_generators(alg: &Algebra, module: &OneSidedModule) -> Result<usize, Error> {
    let radical = alg.local_radical()?;
    Ok(module.radical_layers(&radical)[0])
}

/// Uniseriality over a local algebra: every radical layer has dimension ≤ 1.
pub fn is_uniserial(alg: &Algebra, module: &OneSidedModule) -> Result<bool, Error> {
    let radical = alg.local_radical()?;
    if module.dim == 0 {
        return Ok(true);
    }
    let layers = module.radical_layers(&radical);
    let total: usize = layers.iter().sum();
    Ok(total == module.dim && layers.iter().all(|&l| l <= 1))
}

/// Which side a stabilizer is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// The stabilizer subalgebra of x ∈ X: on the left, {a ∈ A : a·x ∈ x·B};
/// on the right, {b ∈ B : x·b ∈ A·x}. Returned as a basis in corner
/// coordinates; always multiplicatively closed and unital.
pub fn stabilizer_subalgebra(tri: &TriangularData, x: &[u32], side: Side) -> Vec<Vector> {
    let p = tri.p();
    let xd = tri.x_dim();
    let (corner_dim, orbit_dim) = match side {
        Side::Left => (tri.a.dim(), tri.b.dim()),
        Side::Right => (tri.b.dim(), tri.a.dim()),
    };
    // kernel of (a, b) ↦ a·x − (x·b)  (resp. x·b − a·x)
    let mut m = FpMat::zero(p, xd, corner_dim + orbit_dim);
    for i in 0..corner_dim {
        let col = match side {
            Side::Left => tri.act_left(&unit_vec(corner_dim, i), x),
            Side::Right => tri.act_right(x, &unit_vec(corner_dim, i)),
        };
        for (r, &v) in col.iter().enumerate() {
            m.set(r, i, v);
        }
    }
    for j in 0..orbit_dim {
        let col = match side {
            Side::Left => tri.act_right(x, &unit_vec(orbit_dim, j)),
            Side::Right => tri.act_left(&unit_vec(orbit_dim, j), x),
        };
        for (r, &v) in col.iter().enumerate() {
            m.set(r, j + corner_dim, fp_neg(p, v));
        }
    }
    let mut proj = Subspace::new(p, corner_dim);
    for k in m.kernel_basis() {
        proj.insert(&k[..corner_dim].to_vec());
    }
    proj.basis().to_vec()
}

/// Build a small algebra from a dense multiplication table given row by row;
/// test helper and JSON loader backend.
pub fn algebra_from_table(
    p: u32,
    labels: Vec<String>,
    table: Vec<Vec<Vector>>,
    unit: Vector,
    radical: Vec<Vector>,
) -> Result<Algebra, Error> {
    let dim = labels.len();
    if table.len() != dim || table.iter().any(|row| row.len() != dim) {
        return Err(Error::InvalidAlgebra("multiplication table shape".into()));
    }
    Algebra::new(p, labels, &|i, j| table[i][j].clone(), unit, radical)
}

/// Dense multiplication table of an algebra (inverse of `algebra_from_table`).
pub fn table_of(alg: &Algebra) -> Vec<Vec<Vector>> {
    let dim = alg.dim();
    (0..dim)
        .map(|i| (0..dim).map(|j| alg.basis_product_dense(i, j)).collect())
        .collect()
}

/// Pretty map from basis labels to indices; used by the quiver front end.
pub fn label_index(alg: &Algebra) -> BTreeMap<String, usize> {
    alg.labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver;

    fn path_1to2(p: u32) -> BasedAlgebra {
        quiver::parse(&format!("p {p}\nvertices 1 2\narrow a: 1 -> 2\n")).unwrap()
    }

    #[test]
    fn k_times_k_valid() {
        let la = BasedAlgebra::k_times_k(2);
        let rep = validate_algebra(&la);
        assert!(rep.is_valid(), "{rep:?}");
        assert_eq!(la.alg.radical.len(), 0);
    }

    #[test]
    fn path_algebra_valid_radical() {
        let la = path_1to2(2);
        assert_eq!(la.dim(), 3);
        let rep = validate_algebra(&la);
        assert!(rep.is_valid(), "{rep:?}");
        assert_eq!(la.alg.radical.len(), 1);
    }

    #[test]
    fn broken_associativity_detected() {
        let la = path_1to2(2);
        let mut table = table_of(&la.alg);
        // corrupt a·a (zero in the path algebra) to e1
        let ia = la.alg.labels.iter().position(|l| l == "a").unwrap();
        table[ia][ia] = vec![1, 0, 0];
        let alg = algebra_from_table(
            2,
            la.alg.labels.clone(),
            table,
            la.alg.unit.clone(),
            la.alg.radical.clone(),
        )
        .unwrap();
        let bad = BasedAlgebra { alg, e1: la.e1.clone(), e2: la.e2.clone() };
        assert!(!validate_algebra(&bad).associative);
    }

    #[test]
    fn peirce_of_path_algebra() {
        let la = path_1to2(2);
        let blocks = peirce_decompose(&la);
        assert_eq!(blocks.dims(), [[1, 1], [0, 1]]);
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert_eq!((tri.a.dim(), tri.x_dim(), tri.b.dim()), (1, 1, 1));
        let tri = triangular(&la, Eps::MinusPlus).unwrap();
        assert_eq!((tri.a.dim(), tri.x_dim(), tri.b.dim()), (1, 0, 1));
    }

    #[test]
    fn wang_algebra_peirce() {
        // vertex 2 carries a loop a with a^4 = 0
        let la = quiver::parse(
            "p 2\nvertices 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a*a*a*a\n",
        )
        .unwrap();
        assert_eq!(la.dim(), 9);
        assert!(validate_algebra(&la).is_valid());
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert_eq!((tri.a.dim(), tri.x_dim(), tri.b.dim()), (1, 4, 4));
        assert_eq!(tri.t_left(), 4);
        assert_eq!(tri.t_right(), 1);
    }

    #[test]
    fn two_cycle_peirce() {
        let la = quiver::parse(
            "p 2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*b\nrelation b*a\n",
        )
        .unwrap();
        let blocks = peirce_decompose(&la);
        assert_eq!(blocks.dims(), [[1, 1], [1, 1]]);
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert_eq!(tri.x_dim(), 1);
        let tri = triangular(&la, Eps::MinusPlus).unwrap();
        assert_eq!(tri.x_dim(), 1);
    }

    #[test]
    fn opposite_involution_and_blocks() {
        let la = path_1to2(2);
        let op = la.opposite();
        assert!(validate_algebra(&op).is_valid());
        assert!(op.is_lower_triangular());
        let opop = op.opposite();
        assert_eq!(table_of(&opop.alg), table_of(&la.alg));
        let kk = BasedAlgebra::k_times_k(3);
        assert_eq!(table_of(&kk.opposite().alg), table_of(&kk.alg));
    }

    #[test]
    fn min_generators_examples() {
        let la = path_1to2(2);
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert_eq!(min_generators(&tri.a, &OneSidedModule::x_left(&tri)).unwrap(), 1);
        // 1212-type algebra: loop c at vertex 1
        let la = quiver::parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 1 -> 1\nrelation c*c\n")
            .unwrap();
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert_eq!((tri.t_left(), tri.t_right()), (1, 2));
        // e1Ae1 over L_x = k has 2 generators
        let x = tri.left_generators()[0].clone();
        let lx = stabilizer_subalgebra(&tri, &x, Side::Left);
        assert_eq!(lx.len(), 1);
        let sub = tri.a.subalgebra(&lx, &tri.a.unit).unwrap();
        let module = OneSidedModule::corner_over_subalgebra(&tri.a, &lx, true);
        assert_eq!(min_generators(&sub, &module).unwrap(), 2);
    }

    #[test]
    fn stabilizer_closed_and_unital() {
        let la = quiver::parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 1 -> 1\nrelation c*c\n")
            .unwrap();
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        for side in [Side::Left, Side::Right] {
            for k in 0..tri.x_dim() {
                let x = unit_vec(tri.x_dim(), k);
                let basis = stabilizer_subalgebra(&tri, &x, side);
                let corner = if side == Side::Left { &tri.a } else { &tri.b };
                let span = Subspace::from_vectors(tri.p(), corner.dim(), basis.iter());
                assert!(span.contains(&corner.unit));
                for u in &basis {
                    for v in &basis {
                        assert!(span.contains(&corner.mul(u, v)));
                    }
                }
            }
        }
        // x = 0 stabilizes everything
        let z = vec![0u32; tri.x_dim()];
        assert_eq!(stabilizer_subalgebra(&tri, &z, Side::Left).len(), tri.a.dim());
    }

    #[test]
    fn uniserial_examples() {
        let la = quiver::parse(
            "p 2\nvertices 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a*a*a*a\n",
        )
        .unwrap();
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        // X/XJ_B over A = k is one-dimensional, hence uniserial
        let quot_dim = tri.t_right();
        assert_eq!(quot_dim, 1);
        // X/J_AX = X as a B-module is the regular module of k[a]/a^4
        let xq = OneSidedModule::x_right(&tri);
        assert!(is_uniserial(&tri.b, &xq).unwrap());
        // k^2 with zero action is not uniserial
        let field = Algebra::field(2);
        let m = OneSidedModule { p: 2, dim: 2, action: vec![FpMat::identity(2, 2)] };
        assert!(!is_uniserial(&field, &m).unwrap());
    }

    #[test]
    fn assemble_round_trip() {
        let la = quiver::parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 2 -> 2\nrelation c*c\n")
            .unwrap();
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        let back = tri.assemble();
        assert!(validate_algebra(&back).is_valid());
        assert_eq!(back.dim(), la.dim());
        let tri2 = triangular(&back, Eps::PlusMinus).unwrap();
        assert_eq!((tri2.a.dim(), tri2.x_dim(), tri2.b.dim()), (tri.a.dim(), tri.x_dim(), tri.b.dim()));
    }

    #[test]
    fn annihilator_reduction_keeps_walk_data() {
        // gluing-style corner with a dead radical direction: use k[c]/c² acting
        // trivially on X = k
        let a = quiver::parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 1 -> 1\nrelation c*c\nrelation c*a\n");
        let la = a.unwrap();
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        let red = tri.reduce_annihilators();
        assert!(red.a.dim() < tri.a.dim());
        assert_eq!(red.t_left(), tri.t_left());
        assert_eq!(red.t_right(), tri.t_right());
        red.check_actions().unwrap();
    }
}
