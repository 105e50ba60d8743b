//! Algebra-level counterparts of the fan operators, and the driver that
//! realizes any complete sign-coherent fan as the g-fan of a concrete
//! based algebra.
//!
//! * subdivision  → triangular algebra over a trivial extension of a corner
//! * rotation     → endomorphism algebra of the mutated silting complex
//! * gluing ∗     → fiber products of both corners, zero cross products
//! * gluing ∘     → fiber products of corners and of the bimodules

use crate::algebra::{
    triangular, Algebra, BasedAlgebra, Eps, TriangularData, Vector,
};
use crate::complexes::{end_of_complex, MatrixOverX};
use crate::fan::{quiddity_to_fan, Quiddity};
use crate::fp::{fp_add, fp_mul, FpMat};
use crate::oracle;
use crate::quiver;
use crate::Error;

/// Which bounding cone of the fourth quadrant is subdivided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubdivisionSide {
    /// cone{(0,−1),(1,−r)} gains the ray (1,−r−1)
    Bottom,
    /// cone{(1,0),(ℓ,−1)} gains the ray (ℓ+1,−1)
    Right,
}

fn unit_vec(dim: usize, k: usize) -> Vector {
    let mut v = vec![0u32; dim];
    v[k] = 1;
    v
}

/// Residue functional of a local algebra with carried radical: the
/// coefficient of the unit modulo the radical.
fn residue_functional(alg: &Algebra) -> Result<Vec<u32>, Error> {
    let p = alg.p;
    let dim = alg.dim();
    let mut m = FpMat::zero(p, dim, alg.radical.len() + 1);
    for (c, v) in alg.radical.iter().enumerate() {
        for r in 0..dim {
            m.set(r, c, v[r]);
        }
    }
    for r in 0..dim {
        m.set(r, alg.radical.len(), alg.unit[r]);
    }
    let mut out = Vec::with_capacity(dim);
    for k in 0..dim {
        let sol = m.solve(&unit_vec(dim, k)).ok_or(Error::NotLocal)?;
        out.push(sol[alg.radical.len()]);
    }
    Ok(out)
}

fn opposite_and_swap(la: &BasedAlgebra) -> BasedAlgebra {
    la.opposite().swap_idempotents()
}

/// The subdivision construction. For `Bottom`, the new algebra is
/// [[C, Y],[0, B]] with C the trivial extension of A by the dual of
/// X/X·J_B and Y = [k; X]; `Right` is the dual, obtained by conjugating
/// with opposite-and-swap.
pub fn subdivide_algebra(tri: &TriangularData, side: SubdivisionSide) -> Result<BasedAlgebra, Error> {
    match side {
        SubdivisionSide::Bottom => subdivide_bottom(tri),
        SubdivisionSide::Right => {
            let conj = opposite_and_swap(&tri.assemble());
            let t = triangular(&conj, Eps::PlusMinus)?;
            Ok(opposite_and_swap(&subdivide_bottom(&t)?))
        }
    }
}

fn subdivide_bottom(tri: &TriangularData) -> Result<BasedAlgebra, Error> {
    let p = tri.p();
    let da = tri.a.dim();
    let xd = tri.x_dim();
    let gens = tri.right_generators();
    let r = gens.len();
    let lambda_a = residue_functional(&tri.a)?;
    let lambda_b = residue_functional(&tri.b)?;
    // projection X → X/X·J_B in generator coordinates
    let rad_right = tri.rad_right_image();
    let mut proj_mat = FpMat::zero(p, xd.max(1), rad_right.dim() + r);
    for (c, v) in rad_right.basis().iter().enumerate() {
        for i in 0..xd {
            proj_mat.set(i, c, v[i]);
        }
    }
    for (c, v) in gens.iter().enumerate() {
        for i in 0..xd {
            proj_mat.set(i, rad_right.dim() + c, v[i]);
        }
    }
    let proj = |x: &[u32]| -> Vector {
        let sol = proj_mat.solve(x).expect("X element");
        sol[rad_right.dim()..].to_vec()
    };
    // induced action of A on X/X·J_B
    let lbar: Vec<FpMat> = (0..da)
        .map(|i| {
            let mut m = FpMat::zero(p, r, r);
            for (k, g) in gens.iter().enumerate() {
                let col = proj(&tri.act_left(&unit_vec(da, i), g));
                for (row, &v) in col.iter().enumerate() {
                    m.set(row, k, v);
                }
            }
            m
        })
        .collect();

    // C = A ⊕ D(X/X·J_B), a trivial extension
    let dc = da + r;
    let mut c_labels = tri.a.labels.clone();
    c_labels.extend((0..r).map(|k| format!("f{k}")));
    let lbar_ref = &lbar;
    let a_ref = &tri.a;
    let lam_ref = &lambda_a;
    let c_mult = move |i: usize, j: usize| -> Vector {
        let mut out = vec![0u32; dc];
        if i < da && j < da {
            let prod = a_ref.basis_product_dense(i, j);
            out[..da].copy_from_slice(&prod);
        } else if i < da && j >= da {
            // (a,0)(0,f) = (0, λ(a)·f)
            out[j] = lam_ref[i];
        } else if i >= da && j < da {
            // (0,f)(a,0) = (0, f·a) with (f·a)(x̄) = f(a·x̄)
            let q = i - da;
            for k in 0..r {
                out[da + k] = lbar_ref[j].get(q, k);
            }
        }
        out
    };
    let mut c_unit = vec![0u32; dc];
    c_unit[..da].copy_from_slice(&tri.a.unit);
    let mut c_radical: Vec<Vector> = tri
        .a
        .radical
        .iter()
        .map(|v| {
            let mut w = vec![0u32; dc];
            w[..da].copy_from_slice(v);
            w
        })
        .collect();
    for k in 0..r {
        c_radical.push(unit_vec(dc, da + k));
    }
    let c_alg = Algebra::new(p, c_labels, &c_mult, c_unit, c_radical)?;

    // Y = [k; X]
    let yd = 1 + xd;
    let mut y_labels = vec!["y".to_string()];
    y_labels.extend(tri.x_labels.clone());
    let left: Vec<FpMat> = (0..dc)
        .map(|i| {
            let mut m = FpMat::zero(p, yd, yd);
            if i < da {
                m.set(0, 0, lambda_a[i]);
                for k in 0..xd {
                    let col = tri.act_left(&unit_vec(da, i), &unit_vec(xd, k));
                    for (row, &v) in col.iter().enumerate() {
                        m.set(1 + row, 1 + k, v);
                    }
                }
            } else {
                let q = i - da;
                for k in 0..xd {
                    m.set(0, 1 + k, proj(&unit_vec(xd, k))[q]);
                }
            }
            m
        })
        .collect();
    let right: Vec<FpMat> = (0..tri.b.dim())
        .map(|j| {
            let mut m = FpMat::zero(p, yd, yd);
            m.set(0, 0, lambda_b[j]);
            for k in 0..xd {
                let col = tri.act_right(&unit_vec(xd, k), &unit_vec(tri.b.dim(), j));
                for (row, &v) in col.iter().enumerate() {
                    m.set(1 + row, 1 + k, v);
                }
            }
            m
        })
        .collect();
    let out = TriangularData { a: c_alg, b: tri.b.clone(), x_labels: y_labels, left, right };
    out.check_actions()?;
    Ok(out.assemble())
}

/// The mutation summand of μ₂⁻: the column of canonical minimal left
/// generators of X, as the differential of P_h.
pub fn mu2_minus(tri: &TriangularData) -> Result<MatrixOverX, Error> {
    if tri.x_is_zero() {
        return Err(Error::ZeroX);
    }
    Ok(MatrixOverX::generator_column(tri))
}

/// Rotation at the level of triangular data: the lower-triangular Peirce
/// part of End(P_1 ⊕ P_h), relabeled so that P_h ↦ (1,0) and P_1 ↦ (0,1).
pub fn rotate_tri(tri: &TriangularData) -> Result<TriangularData, Error> {
    let h = mu2_minus(tri)?;
    let l = h.s;
    let p = tri.p();
    let da = tri.a.dim();
    // new first corner: End(P_h)
    let (mut a_new, basis) = end_of_complex(tri, &h)?;
    a_new.radical = a_new.local_radical()?;
    // new bimodule: Hom(P_1, P_h) = M_{ℓ,1}(A), basis (row, A-basis element)
    let xd = l * da;
    let x_labels: Vec<String> = (0..l)
        .flat_map(|row| tri.a.labels.iter().map(move |lab| format!("h{row}:{lab}")))
        .collect();
    let left: Vec<FpMat> = basis
        .iter()
        .map(|cm| {
            // (c,d)·f = c·f with entries multiplied in A
            let mut m = FpMat::zero(p, xd, xd);
            for row in 0..l {
                for i in 0..da {
                    let src = row * da + i;
                    for q in 0..l {
                        let prod = tri.a.mul(&cm.f[q * l + row], &unit_vec(da, i));
                        for (idx, &v) in prod.iter().enumerate() {
                            if v != 0 {
                                m.set(q * da + idx, src, fp_add(p, m.get(q * da + idx, src), v));
                            }
                        }
                    }
                }
            }
            m
        })
        .collect();
    let right: Vec<FpMat> = (0..da)
        .map(|j| {
            let mut m = FpMat::zero(p, xd, xd);
            for row in 0..l {
                for i in 0..da {
                    let src = row * da + i;
                    let prod = tri.a.basis_product_dense(i, j);
                    for (idx, &v) in prod.iter().enumerate() {
                        if v != 0 {
                            m.set(row * da + idx, src, v);
                        }
                    }
                }
            }
            m
        })
        .collect();
    let out = TriangularData { a: a_new, b: tri.a.clone(), x_labels, left, right };
    out.check_actions()?;
    Ok(out)
}

/// Rotation returning the assembled based algebra.
pub fn rotate_algebra(tri: &TriangularData) -> Result<BasedAlgebra, Error> {
    Ok(rotate_tri(tri)?.assemble())
}

/// Fiber product A ×_k C of two local algebras along their residue maps,
/// with coordinate helpers for embedding and projecting.
struct Fiber {
    alg: Algebra,
    da: usize,
    dc: usize,
    a_rad: Vec<Vector>,
    c_rad: Vec<Vector>,
    a_unit: Vector,
    c_unit: Vector,
    a_solve: FpMat,
    c_solve: FpMat,
}

impl Fiber {
    fn new(a: &Algebra, c: &Algebra, tag: &str) -> Result<Fiber, Error> {
        let p = a.p;
        let (da, dc) = (a.dim(), c.dim());
        let (ra, rc) = (a.radical.len(), c.radical.len());
        if ra + 1 != da || rc + 1 != dc {
            return Err(Error::NotElementary);
        }
        let dim = 1 + ra + rc;
        let mut labels = vec![format!("u{tag}")];
        labels.extend((0..ra).map(|k| format!("{tag}l{k}")));
        labels.extend((0..rc).map(|k| format!("{tag}r{k}")));
        let solve_of = |alg: &Algebra| -> FpMat {
            let d = alg.dim();
            let mut m = FpMat::zero(p, d, alg.radical.len() + 1);
            for (cix, v) in alg.radical.iter().enumerate() {
                for r in 0..d {
                    m.set(r, cix, v[r]);
                }
            }
            for r in 0..d {
                m.set(r, alg.radical.len(), alg.unit[r]);
            }
            m
        };
        let fiber = Fiber {
            alg: Algebra::field(p), // placeholder, replaced below
            da,
            dc,
            a_rad: a.radical.clone(),
            c_rad: c.radical.clone(),
            a_unit: a.unit.clone(),
            c_unit: c.unit.clone(),
            a_solve: solve_of(a),
            c_solve: solve_of(c),
        };
        let a_cl = a.clone();
        let c_cl = c.clone();
        let fb = &fiber;
        let mult = move |i: usize, j: usize| -> Vector {
            let (xa, xc) = fb.lift(&unit_vec(dim, i));
            let (ya, yc) = fb.lift(&unit_vec(dim, j));
            fb.express(&a_cl.mul(&xa, &ya), &c_cl.mul(&xc, &yc))
                .expect("fiber product closed under multiplication")
        };
        let unit = unit_vec(dim, 0);
        let radical: Vec<Vector> = (1..dim).map(|k| unit_vec(dim, k)).collect();
        let alg = Algebra::new(p, labels, &mult, unit, radical)?;
        Ok(Fiber { alg, ..fiber })
    }

    fn dim(&self) -> usize {
        1 + self.a_rad.len() + self.c_rad.len()
    }

    /// Fiber coordinates → (A element, C element).
    fn lift(&self, v: &[u32]) -> (Vector, Vector) {
        let p = self.a_solve.p;
        let ra = self.a_rad.len();
        let mut xa = vec![0u32; self.da];
        let mut xc = vec![0u32; self.dc];
        for (i, &u) in self.a_unit.iter().enumerate() {
            xa[i] = fp_mul(p, v[0], u);
        }
        for (i, &u) in self.c_unit.iter().enumerate() {
            xc[i] = fp_mul(p, v[0], u);
        }
        for (k, rv) in self.a_rad.iter().enumerate() {
            for i in 0..self.da {
                xa[i] = fp_add(p, xa[i], fp_mul(p, v[1 + k], rv[i]));
            }
        }
        for (k, rv) in self.c_rad.iter().enumerate() {
            for i in 0..self.dc {
                xc[i] = fp_add(p, xc[i], fp_mul(p, v[1 + ra + k], rv[i]));
            }
        }
        (xa, xc)
    }

    /// (A element, C element) with equal residues → fiber coordinates.
    fn express(&self, xa: &[u32], xc: &[u32]) -> Result<Vector, Error> {
        let sa = self
            .a_solve
            .solve(xa)
            .ok_or_else(|| Error::InvalidAlgebra("element outside A".into()))?;
        let sc = self
            .c_solve
            .solve(xc)
            .ok_or_else(|| Error::InvalidAlgebra("element outside C".into()))?;
        let ra = self.a_rad.len();
        let rc = self.c_rad.len();
        if sa[ra] != sc[rc] {
            return Err(Error::InvalidAlgebra("residues differ; not a fiber element".into()));
        }
        let mut out = vec![0u32; self.dim()];
        out[0] = sa[ra];
        out[1..1 + ra].copy_from_slice(&sa[..ra]);
        out[1 + ra..].copy_from_slice(&sc[..rc]);
        Ok(out)
    }
}

/// Gluing ∗ at the algebra level: [[A×C, X],[Y, B×D]] with X·Y = Y·X = 0.
/// The first factor must contain cone{(-1,0),(0,1)} (upper triangular), the
/// second cone{(1,0),(0,-1)} (lower triangular).
pub fn glue_star_algebra(la: &BasedAlgebra, lb: &BasedAlgebra) -> Result<BasedAlgebra, Error> {
    if !la.is_upper_triangular() || !lb.is_lower_triangular() {
        return Err(Error::WrongTriangularity);
    }
    let t1 = triangular(la, Eps::PlusMinus)?; // (A, X, B)
    let t2 = triangular(lb, Eps::MinusPlus)?; // (D, Y, C)
    let p = t1.p();
    let ac = Fiber::new(&t1.a, &t2.b, "a")?;
    let bd = Fiber::new(&t1.b, &t2.a, "b")?;
    let (nac, nx, ny, nbd) = (ac.dim(), t1.x_dim(), t2.x_dim(), bd.dim());
    let dim = nac + nx + ny + nbd;
    let mut labels = ac.alg.labels.clone();
    labels.extend(t1.x_labels.iter().map(|l| format!("x:{l}")));
    labels.extend(t2.x_labels.iter().map(|l| format!("y:{l}")));
    labels.extend(bd.alg.labels.clone());
    let block = move |k: usize| -> (usize, usize) {
        if k < nac {
            (0, k)
        } else if k < nac + nx {
            (1, k - nac)
        } else if k < nac + nx + ny {
            (2, k - nac - nx)
        } else {
            (3, k - nac - nx - ny)
        }
    };
    let t1r = &t1;
    let t2r = &t2;
    let acr = &ac;
    let bdr = &bd;
    let mult = move |i: usize, j: usize| -> Vector {
        let mut out = vec![0u32; dim];
        let (bi, ki) = block(i);
        let (bj, kj) = block(j);
        match (bi, bj) {
            (0, 0) => {
                for &(k, c) in acr.alg.basis_product(ki, kj) {
                    out[k] = c;
                }
            }
            (3, 3) => {
                for &(k, c) in bdr.alg.basis_product(ki, kj) {
                    out[nac + nx + ny + k] = c;
                }
            }
            (0, 1) => {
                // (a,c)·x = a·x
                let (xa, _) = acr.lift(&unit_vec(nac, ki));
                let v = t1r.act_left(&xa, &unit_vec(nx, kj));
                for (k, &c) in v.iter().enumerate() {
                    out[nac + k] = c;
                }
            }
            (1, 3) => {
                // x·(b,d) = x·b
                let (xb, _) = bdr.lift(&unit_vec(nbd, kj));
                let v = t1r.act_right(&unit_vec(nx, ki), &xb);
                for (k, &c) in v.iter().enumerate() {
                    out[nac + k] = c;
                }
            }
            (3, 2) => {
                // (b,d)·y = d·y
                let (_, xd_) = bdr.lift(&unit_vec(nbd, ki));
                let v = t2r.act_left(&xd_, &unit_vec(ny, kj));
                for (k, &c) in v.iter().enumerate() {
                    out[nac + nx + k] = c;
                }
            }
            (2, 0) => {
                // y·(a,c) = y·c
                let (_, xc) = acr.lift(&unit_vec(nac, kj));
                let v = t2r.act_right(&unit_vec(ny, ki), &xc);
                for (k, &c) in v.iter().enumerate() {
                    out[nac + nx + k] = c;
                }
            }
            _ => {}
        }
        out
    };
    let mut unit = vec![0u32; dim];
    unit[0] = 1; // fiber units sit at coordinate 0 of each fiber block
    unit[nac + nx + ny] = 1;
    let e1 = unit_vec(dim, 0);
    let e2 = unit_vec(dim, nac + nx + ny);
    let mut radical = Vec::new();
    for k in 1..nac {
        radical.push(unit_vec(dim, k));
    }
    for k in 0..nx + ny {
        radical.push(unit_vec(dim, nac + k));
    }
    for k in 1..nbd {
        radical.push(unit_vec(dim, nac + nx + ny + k));
    }
    let alg = Algebra::new(p, labels, &mult, unit, radical)?;
    Ok(BasedAlgebra { alg, e1, e2 })
}

/// Gluing ∘ at the algebra level: [[A×C, X×Y],[0, B×D]], the bimodule
/// fiber product taken along the residues of the distinguished generators.
pub fn glue_circ_algebra(la: &BasedAlgebra, lb: &BasedAlgebra) -> Result<BasedAlgebra, Error> {
    if !la.is_upper_triangular() || !lb.is_upper_triangular() {
        return Err(Error::WrongTriangularity);
    }
    let t1 = triangular(la, Eps::PlusMinus)?; // (A, X, B)
    let t2 = triangular(lb, Eps::PlusMinus)?; // (C, Y, D)
    if t1.x_is_zero() || t1.t_right() != 1 || t2.x_is_zero() || t2.t_left() != 1 {
        return Err(Error::NotCyclicBimodule);
    }
    let p = t1.p();
    let g = t1.right_generators().remove(0);
    let h = t2.left_generators().remove(0);
    let ac = Fiber::new(&t1.a, &t2.a, "a")?;
    let bd = Fiber::new(&t1.b, &t2.b, "b")?;
    // π-coordinates: solve in [X·J_B | g] and [J_C·Y | h]
    let (x1d, x2d) = (t1.x_dim(), t2.x_dim());
    let rad1 = t1.rad_right_image();
    let rad2 = t2.rad_left_image();
    let mk_solve = |xd: usize, rad: &crate::fp::Subspace, gen: &Vector| -> FpMat {
        let mut m = FpMat::zero(p, xd.max(1), rad.dim() + 1);
        for (c, v) in rad.basis().iter().enumerate() {
            for r in 0..xd {
                m.set(r, c, v[r]);
            }
        }
        for r in 0..xd {
            m.set(r, rad.dim(), gen[r]);
        }
        m
    };
    let s1 = mk_solve(x1d, &rad1, &g);
    let s2 = mk_solve(x2d, &rad2, &h);
    let (r1, r2) = (rad1.dim(), rad2.dim());
    let xyd = 1 + r1 + r2;
    let mut xy_labels = vec!["gh".to_string()];
    xy_labels.extend((0..r1).map(|k| format!("xl{k}")));
    xy_labels.extend((0..r2).map(|k| format!("yr{k}")));
    // lift XY coordinates to the pair (x, y)
    let rad1b: Vec<Vector> = rad1.basis().to_vec();
    let rad2b: Vec<Vector> = rad2.basis().to_vec();
    let lift_xy = {
        let g = g.clone();
        let h = h.clone();
        let rad1b = rad1b.clone();
        let rad2b = rad2b.clone();
        move |v: &[u32]| -> (Vector, Vector) {
            let mut x = vec![0u32; x1d];
            let mut y = vec![0u32; x2d];
            for i in 0..x1d {
                x[i] = fp_mul(p, v[0], g[i]);
            }
            for i in 0..x2d {
                y[i] = fp_mul(p, v[0], h[i]);
            }
            for (k, rv) in rad1b.iter().enumerate() {
                for i in 0..x1d {
                    x[i] = fp_add(p, x[i], fp_mul(p, v[1 + k], rv[i]));
                }
            }
            for (k, rv) in rad2b.iter().enumerate() {
                for i in 0..x2d {
                    y[i] = fp_add(p, y[i], fp_mul(p, v[1 + r1 + k], rv[i]));
                }
            }
            (x, y)
        }
    };
    let express_xy = move |x: &[u32], y: &[u32]| -> Result<Vector, Error> {
        let sx = s1.solve(x).ok_or_else(|| Error::InvalidAlgebra("element outside X".into()))?;
        let sy = s2.solve(y).ok_or_else(|| Error::InvalidAlgebra("element outside Y".into()))?;
        if sx[r1] != sy[r2] {
            return Err(Error::InvalidAlgebra("π-residues differ".into()));
        }
        let mut out = vec![0u32; xyd];
        out[0] = sx[r1];
        out[1..1 + r1].copy_from_slice(&sx[..r1]);
        out[1 + r1..].copy_from_slice(&sy[..r2]);
        Ok(out)
    };
    let left: Vec<FpMat> = (0..ac.dim())
        .map(|i| {
            let (va, vc) = ac.lift(&unit_vec(ac.dim(), i));
            let mut m = FpMat::zero(p, xyd, xyd);
            for k in 0..xyd {
                let (x, y) = lift_xy(&unit_vec(xyd, k));
                let col = express_xy(&t1.act_left(&va, &x), &t2.act_left(&vc, &y))
                    .expect("fiber bimodule closed under the left action");
                for (row, &v) in col.iter().enumerate() {
                    m.set(row, k, v);
                }
            }
            m
        })
        .collect();
    let right: Vec<FpMat> = (0..bd.dim())
        .map(|j| {
            let (vb, vd) = bd.lift(&unit_vec(bd.dim(), j));
            let mut m = FpMat::zero(p, xyd, xyd);
            for k in 0..xyd {
                let (x, y) = lift_xy(&unit_vec(xyd, k));
                let col = express_xy(&t1.act_right(&x, &vb), &t2.act_right(&y, &vd))
                    .expect("fiber bimodule closed under the right action");
                for (row, &v) in col.iter().enumerate() {
                    m.set(row, k, v);
                }
            }
            m
        })
        .collect();
    let out = TriangularData { a: ac.alg, b: bd.alg, x_labels: xy_labels, left, right };
    out.check_actions()?;
    Ok(out.assemble())
}

/// Quotient an upper-triangular algebra by the annihilator part of its
/// corner radicals; the g-fan is unchanged. Used to keep intermediate
/// synthesis products small.
fn reduce_upper_triangular(la: &BasedAlgebra) -> Result<BasedAlgebra, Error> {
    Ok(triangular(la, Eps::PlusMinus)?.reduce_annihilators().assemble())
}

/// Realize the fan Σ_{a;00} by iterated rotation-and-bottom-subdivision,
/// starting from k × k.
fn realize_pm(a_part: &[i64], p: u32) -> Result<BasedAlgebra, Error> {
    if a_part == [0, 0] {
        return Ok(BasedAlgebra::k_times_k(p));
    }
    // peel interior 1-entries back to the cross fan, recording subdivision
    // cone indices (largest eligible position first, for determinism)
    let mut seq: Vec<i64> = a_part.to_vec();
    let mut steps: Vec<(usize, usize)> = Vec::new(); // (cone index i, facet count n before)
    while seq != [0, 0] {
        let m = seq.len();
        let j = (2..m)
            .rev()
            .find(|&j| seq[j - 1] == 1)
            .ok_or_else(|| Error::InvalidQuiddity("no removable entry 1".into()))?;
        let n_before = (m - 1) + 2;
        steps.push((j - 1, n_before));
        seq[j - 2] -= 1;
        seq[j] -= 1;
        seq.remove(j - 1);
    }
    let mut la = BasedAlgebra::k_times_k(p);
    let rho = |la: &BasedAlgebra| -> Result<BasedAlgebra, Error> {
        reduce_upper_triangular(&rotate_algebra(&triangular(la, Eps::PlusMinus)?)?)
    };
    let bottom = |la: &BasedAlgebra| -> Result<BasedAlgebra, Error> {
        reduce_upper_triangular(&subdivide_algebra(
            &triangular(la, Eps::PlusMinus)?,
            SubdivisionSide::Bottom,
        )?)
    };
    for &(i, n) in steps.iter().rev() {
        if i == n - 3 {
            la = bottom(&la)?;
        } else {
            // D_{σ_i} = ρ^{n-3-i} ∘ D_{σ_{n-3}} ∘ ρ^{i+1}
            for _ in 0..i + 1 {
                la = rho(&la)?;
            }
            la = bottom(&la)?;
            for _ in 0..n - 3 - i {
                la = rho(&la)?;
            }
        }
    }
    Ok(la)
}

/// Realize any valid quiddity sequence as the g-fan of a based algebra
/// over F_p, and confirm the result through the oracle.
pub fn synthesize_from_quiddity(q: &Quiddity, p: u32) -> Result<BasedAlgebra, Error> {
    quiddity_to_fan(q)?;
    let a_side = realize_pm(&q.a_part, p)?;
    let mut b_rev = q.b_part.clone();
    b_rev.reverse();
    let b_side = realize_pm(&b_rev, p)?.opposite();
    let glued = glue_star_algebra(&a_side, &b_side)?;
    let budget = q.len() + 4;
    match oracle::compute_gfan(&glued, budget)? {
        oracle::GFan::Complete(fan) => {
            let got = crate::fan::fan_to_quiddity(&fan)?;
            if got != *q {
                return Err(Error::OracleMismatch { expected: q.to_string(), got: got.to_string() });
            }
        }
        oracle::GFan::Partial { .. } => {
            return Err(Error::OracleMismatch { expected: q.to_string(), got: "incomplete".into() });
        }
    }
    Ok(glued)
}

pub const LAMBDA_FAMILY_CAP: usize = 5;

/// The quiver algebra 1 → 2 with a loop a at vertex 2 bound by a⁴ = 0.
pub fn wang_algebra(p: u32) -> Result<BasedAlgebra, Error> {
    quiver::parse(&format!(
        "p {p}\nvertices 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a*a*a*a\n"
    ))
}

/// The family Λ_1 = wang algebra, Λ_{N+1} = Λ_1 ∘ ρ(Λ_N); the g-fan of Λ_N
/// misses exactly N half lines.
pub fn lambda_family(n: usize, p: u32) -> Result<BasedAlgebra, Error> {
    if n == 0 || n > LAMBDA_FAMILY_CAP {
        return Err(Error::CapExceeded(n, LAMBDA_FAMILY_CAP));
    }
    let base = wang_algebra(p)?;
    let mut cur = base.clone();
    for _ in 1..n {
        let rotated = rotate_algebra(&triangular(&cur, Eps::PlusMinus)?)?;
        cur = glue_circ_algebra(&base, &rotated)?;
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;

    fn parse(src: &str) -> BasedAlgebra {
        quiver::parse(src).unwrap()
    }

    #[test]
    fn subdivide_arrow_algebra() {
        // k[1→2] subdivided at the bottom realizes Σ_1212; the trivial
        // extension corner is k[b]/b² and dim X grows to 2
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n");
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        let gamma = subdivide_algebra(&tri, SubdivisionSide::Bottom).unwrap();
        assert_eq!(gamma.dim(), 5);
        assert!(validate_algebra(&gamma).is_valid());
        let gt = triangular(&gamma, Eps::PlusMinus).unwrap();
        assert_eq!((gt.a.dim(), gt.x_dim(), gt.b.dim()), (2, 2, 1));
        assert_eq!((gt.t_left(), gt.t_right()), (1, 2));
    }

    #[test]
    fn subdivide_k_times_k() {
        let la = BasedAlgebra::k_times_k(2);
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        let gamma = subdivide_algebra(&tri, SubdivisionSide::Bottom).unwrap();
        assert_eq!(gamma.dim(), 3);
        assert!(validate_algebra(&gamma).is_valid());
        let gt = triangular(&gamma, Eps::PlusMinus).unwrap();
        assert_eq!((gt.t_left(), gt.t_right()), (1, 1));
    }

    #[test]
    fn subdivide_right_is_conjugate() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n");
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        let gamma = subdivide_algebra(&tri, SubdivisionSide::Right).unwrap();
        assert!(validate_algebra(&gamma).is_valid());
        let gt = triangular(&gamma, Eps::PlusMinus).unwrap();
        // right subdivision of Σ_111 gives Σ_2121: first cones (2,1)
        assert_eq!((gt.t_left(), gt.t_right()), (2, 1));
    }

    #[test]
    fn rotate_1212_to_2121() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 1\nrelation b*b\n");
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert_eq!((tri.t_left(), tri.t_right()), (1, 2));
        let rot = rotate_algebra(&tri).unwrap();
        assert!(validate_algebra(&rot).is_valid());
        let rt = triangular(&rot, Eps::PlusMinus).unwrap();
        assert_eq!((rt.t_left(), rt.t_right()), (2, 1));
        assert_eq!(rot.dim(), 5);
    }

    #[test]
    fn rotate_zero_bimodule_rejected() {
        let la = BasedAlgebra::k_times_k(2);
        let tri = triangular(&la, Eps::PlusMinus).unwrap();
        assert!(matches!(rotate_algebra(&tri), Err(Error::ZeroX)));
        assert!(matches!(mu2_minus(&tri), Err(Error::ZeroX)));
    }

    #[test]
    fn glue_star_two_arrows() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n");
        let lb = parse("p 2\nvertices 1 2\narrow b: 2 -> 1\n");
        let glued = glue_star_algebra(&la, &lb).unwrap();
        assert_eq!(glued.dim(), 4);
        assert!(validate_algebra(&glued).is_valid());
        // the 2-cycle with ab = ba = 0: products of x and y vanish
        let blocks = crate::algebra::peirce_decompose(&glued);
        assert_eq!(blocks.dims(), [[1, 1], [1, 1]]);
        assert!(glue_star_algebra(&lb, &la).is_err());
    }

    #[test]
    fn glue_star_with_k_times_k_is_identity_sized() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n");
        let kk = BasedAlgebra::k_times_k(2);
        let glued = glue_star_algebra(&la, &kk).unwrap();
        assert_eq!(glued.dim(), la.dim());
        assert!(validate_algebra(&glued).is_valid());
    }

    #[test]
    fn glue_circ_needs_cyclic_sides() {
        // Σ_1212 algebra has r = 2: not cyclic on the right
        let l1212 = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 1\nrelation b*b\n");
        let l111 = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n");
        assert!(matches!(glue_circ_algebra(&l1212, &l111), Err(Error::NotCyclicBimodule)));
        // Σ_111 ∘ Σ_111 works and stays 5-dimensional-ish
        let glued = glue_circ_algebra(&l111, &l111).unwrap();
        assert!(validate_algebra(&glued).is_valid());
        let gt = triangular(&glued, Eps::PlusMinus).unwrap();
        assert_eq!((gt.t_left(), gt.t_right()), (1, 1));
    }

    #[test]
    fn wang_and_family_cap() {
        let w = wang_algebra(2).unwrap();
        assert_eq!(w.dim(), 9);
        assert!(matches!(lambda_family(0, 2), Err(Error::CapExceeded(..))));
        assert!(matches!(lambda_family(99, 2), Err(Error::CapExceeded(..))));
        let l1 = lambda_family(1, 2).unwrap();
        assert_eq!(l1.dim(), 9);
    }
}
