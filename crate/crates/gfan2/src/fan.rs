//! Rank-2 nonsingular sign-coherent fans and their quiddity calculus.
//!
//! A complete fan here is stored as its clockwise list of primitive rays,
//! anchored at `v_0 = (0,1)`, `v_1 = (1,0)`, so the positive cone is always
//! `cone{rays[0], rays[1]}`. The quiddity sequence attached to the rays
//! determines the fan completely, which lets most operators work on integer
//! sequences and regenerate geometry afterwards.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// A primitive integer direction in the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    pub x: BigInt,
    pub y: BigInt,
}

impl Ray {
    pub fn new(x: BigInt, y: BigInt) -> Result<Ray, Error> {
        if x.is_zero() && y.is_zero() {
            return Err(Error::InvalidRay("zero vector".into()));
        }
        if x.gcd(&y) != BigInt::one() {
            return Err(Error::InvalidRay(format!("({x},{y}) is not primitive")));
        }
        Ok(Ray { x, y })
    }

    pub fn from_i64(x: i64, y: i64) -> Ray {
        Ray::new(BigInt::from(x), BigInt::from(y)).expect("bad ray literal")
    }

    /// det [self other] with both rays as columns.
    pub fn det(&self, other: &Ray) -> BigInt {
        &self.x * &other.y - &self.y * &other.x
    }

    fn add(&self, other: &Ray) -> Ray {
        Ray { x: &self.x + &other.x, y: &self.y + &other.y }
    }

    /// Apply the row-vector linear map `v ↦ v·M` for `M = [[a,b],[c,d]]`.
    fn apply(&self, a: i64, b: i64, c: i64, d: i64) -> Ray {
        Ray { x: &self.x * a + &self.y * c, y: &self.x * b + &self.y * d }
    }

    fn is(&self, x: i64, y: i64) -> bool {
        self.x == BigInt::from(x) && self.y == BigInt::from(y)
    }
}

impl fmt::Display for Ray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// Quiddity sequence of a complete sign-coherent fan, split at the axes:
/// the a-part lists entries clockwise from `(1,0)` to `(0,-1)`, the b-part
/// counterclockwise from `(0,1)` to `(-1,0)`. Fans containing the second
/// quadrant as a single cone have b-part `(0,0)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quiddity {
    pub a_part: Vec<i64>,
    pub b_part: Vec<i64>,
}

impl Quiddity {
    pub fn new(a_part: Vec<i64>, b_part: Vec<i64>) -> Quiddity {
        Quiddity { a_part, b_part }
    }

    /// The fan of the two coordinate axes, `Σ(0,0;0,0)`.
    pub fn cross() -> Quiddity {
        Quiddity::new(vec![0, 0], vec![0, 0])
    }

    /// a-part only, b-part `(0,0)` (a fan in `Fan^{+-}`).
    pub fn plus_minus(a_part: Vec<i64>) -> Quiddity {
        Quiddity::new(a_part, vec![0, 0])
    }

    /// Full cyclic sequence `(a_1,…,a_m, rev(b))`, one entry per ray.
    pub fn full_cyclic(&self) -> Vec<i64> {
        let mut v = self.a_part.clone();
        v.extend(self.b_part.iter().rev());
        v
    }

    pub fn len(&self) -> usize {
        self.a_part.len() + self.b_part.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// True when the fan contains the second quadrant cone, i.e. b-part is (0,0).
    pub fn is_plus_minus(&self) -> bool {
        self.b_part == [0, 0]
    }
}

fn part_to_string(part: &[i64]) -> String {
    if !part.is_empty() && part.iter().all(|&e| (0..=9).contains(&e)) {
        part.iter().map(|e| e.to_string()).collect()
    } else {
        part.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
    }
}

fn part_from_string(s: &str) -> Result<Vec<i64>, Error> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::ParseQuiddity("empty part".into()));
    }
    if s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| Error::ParseQuiddity(e.to_string())))
            .collect()
    } else {
        s.chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as i64)
                    .ok_or_else(|| Error::ParseQuiddity(format!("bad digit {c:?}")))
            })
            .collect()
    }
}

impl fmt::Display for Quiddity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};{}", part_to_string(&self.a_part), part_to_string(&self.b_part))
    }
}

impl FromStr for Quiddity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Quiddity, Error> {
        let (a, b) = s
            .split_once(';')
            .ok_or_else(|| Error::ParseQuiddity("expected \"a;b\"".into()))?;
        Ok(Quiddity::new(part_from_string(a)?, part_from_string(b)?))
    }
}

/// Validation report for a quiddity sequence (report-valued, never fails).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuiddityReport {
    /// Σ a_i = 3n − 12 over the full cyclic sequence.
    pub sum_ok: bool,
    /// Π [[0,−1],[1,a_i]] equals the identity.
    pub product_ok: bool,
    pub n: usize,
}

impl QuiddityReport {
    pub fn is_valid(&self) -> bool {
        self.sum_ok && self.product_ok
    }
}

/// Check the two arithmetic conditions characterizing quiddity sequences of
/// complete nonsingular rank-2 fans.
pub fn validate_quiddity_cyclic(entries: &[i64]) -> QuiddityReport {
    let n = entries.len();
    let sum: i64 = entries.iter().sum();
    let sum_ok = sum == 3 * n as i64 - 12;
    // 2x2 product in arbitrary precision; hostile inputs may overflow i64.
    let mut m = [[BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
    for &a in entries {
        let a = BigInt::from(a);
        // m ← m · [[0,−1],[1,a]]
        let c0 = [m[0][1].clone(), m[1][1].clone()];
        let new0 = [c0[0].clone(), -&m[0][0] + &m[0][1] * &a];
        let new1 = [c0[1].clone(), -&m[1][0] + &m[1][1] * &a];
        m = [new0, new1];
    }
    let product_ok = m[0][0].is_one()
        && m[0][1].is_zero()
        && m[1][0].is_zero()
        && m[1][1].is_one();
    QuiddityReport { sum_ok, product_ok, n }
}

pub fn validate_quiddity(q: &Quiddity) -> QuiddityReport {
    validate_quiddity_cyclic(&q.full_cyclic())
}

/// A complete sign-coherent fan of rank 2, as its clockwise ray cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan2 {
    rays: Vec<Ray>,
    complete: bool,
    positive_cone_index: usize,
}

impl Fan2 {
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Index of σ₊ = cone{(0,1),(1,0)} in the facet list σ_i = cone{v_i, v_{i+1}}.
    pub fn positive_cone_index(&self) -> usize {
        self.positive_cone_index
    }

    /// Number of facets (= number of rays for a complete fan).
    pub fn facets(&self) -> usize {
        self.rays.len()
    }

    fn ray(&self, k: usize) -> &Ray {
        &self.rays[k % self.rays.len()]
    }

    /// Position of (0,−1) in the ray cycle.
    fn south_index(&self) -> usize {
        self.rays.iter().position(|r| r.is(0, -1)).expect("complete fan has (0,-1)")
    }
}

/// A finite clockwise walk of rays in the fourth quadrant of a possibly
/// infinite fan, starting `(0,1),(1,0)`, with the quiddity entries observed
/// so far.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialWalk {
    pub rays: Vec<Ray>,
    pub entries: Vec<i64>,
    pub exhausted_budget: bool,
}

impl PartialWalk {
    pub fn new(entries: Vec<i64>, exhausted_budget: bool) -> PartialWalk {
        let mut rays = vec![Ray::from_i64(0, 1), Ray::from_i64(1, 0)];
        for (k, &a) in entries.iter().enumerate() {
            let next = next_ray(&rays[k], &rays[k + 1], a);
            rays.push(next);
        }
        PartialWalk { rays, entries, exhausted_budget }
    }

    /// Check v_{i+1} = a_i·v_i − v_{i−1} along the recorded entries.
    pub fn recurrence_holds(&self) -> bool {
        self.entries.iter().enumerate().all(|(k, &a)| {
            self.rays.len() > k + 2 && next_ray(&self.rays[k], &self.rays[k + 1], a) == self.rays[k + 2]
        })
    }

    /// Slope of the last computed ray, as an exact pair (y, x).
    pub fn last_ray(&self) -> &Ray {
        self.rays.last().expect("walk has at least two rays")
    }
}

fn next_ray(prev: &Ray, cur: &Ray, a: i64) -> Ray {
    Ray { x: &cur.x * a - &prev.x, y: &cur.y * a - &prev.y }
}

/// Compute the quiddity entry at `cur`, given its neighbors. Fails only on
/// geometrically inconsistent input.
fn entry_at(prev: &Ray, cur: &Ray, next: &Ray) -> Result<i64, Error> {
    let sx = &prev.x + &next.x;
    let sy = &prev.y + &next.y;
    let a = if !cur.x.is_zero() {
        let (q, r) = sx.div_rem(&cur.x);
        if !r.is_zero() {
            return Err(Error::InvalidQuiddity("non-integral quiddity entry".into()));
        }
        q
    } else {
        let (q, r) = sy.div_rem(&cur.y);
        if !r.is_zero() {
            return Err(Error::InvalidQuiddity("non-integral quiddity entry".into()));
        }
        q
    };
    if sx != &cur.x * &a || sy != &cur.y * &a {
        return Err(Error::InvalidQuiddity("neighbor sum not a multiple of the ray".into()));
    }
    i64::try_from(a).map_err(|_| Error::InvalidQuiddity("quiddity entry overflows i64".into()))
}

fn same_closed_quadrant(u: &Ray, v: &Ray) -> bool {
    let sign_pairs = [(1, 1), (1, -1), (-1, 1), (-1, -1)];
    sign_pairs.iter().any(|&(sx, sy)| {
        let ok = |r: &Ray| {
            (r.x.sign() != num_bigint::Sign::Minus || sx < 0)
                && (r.x.sign() != num_bigint::Sign::Plus || sx > 0)
                && (r.y.sign() != num_bigint::Sign::Minus || sy < 0)
                && (r.y.sign() != num_bigint::Sign::Plus || sy > 0)
        };
        ok(u) && ok(v)
    })
}

/// Build the complete fan determined by a quiddity sequence.
///
/// All fan invariants are verified: closure with winding one, unimodular
/// consecutive pairs, the four axis rays in the expected positions, and
/// sign-coherence of every cone.
pub fn quiddity_to_fan(q: &Quiddity) -> Result<Fan2, Error> {
    let full = q.full_cyclic();
    let n = full.len();
    if n < 4 {
        return Err(Error::InvalidQuiddity(format!("{n} entries; a complete fan needs at least 4")));
    }
    let mut rays = vec![Ray::from_i64(0, 1), Ray::from_i64(1, 0)];
    for k in 1..=n {
        let next = next_ray(&rays[k - 1], &rays[k], full[k - 1]);
        rays.push(next);
    }
    // closure: v_n = v_0 and v_{n+1} = v_1
    if rays[n] != rays[0] || rays[n + 1] != rays[1] {
        return Err(Error::InvalidQuiddity("recurrence does not close up".into()));
    }
    rays.truncate(n);
    // distinctness (rules out multiple winding)
    for i in 0..n {
        for j in (i + 1)..n {
            if rays[i] == rays[j] {
                return Err(Error::InvalidQuiddity("repeated ray; winding is not one".into()));
            }
        }
    }
    // axis anchors at the split positions
    let m = q.a_part.len();
    if m >= n || !rays[m].is(0, -1) || !rays[(m + 1) % n].is(-1, 0) {
        return Err(Error::InvalidQuiddity(
            "a-part does not end at (0,-1) followed by (-1,0)".into(),
        ));
    }
    for k in 0..n {
        let u = &rays[k];
        let v = &rays[(k + 1) % n];
        if u.det(v) != BigInt::from(-1) {
            return Err(Error::InvalidQuiddity(format!(
                "cone ({u},{v}) is not unimodular clockwise"
            )));
        }
        if !same_closed_quadrant(u, v) {
            return Err(Error::InvalidQuiddity(format!(
                "cone ({u},{v}) crosses a coordinate axis"
            )));
        }
    }
    Ok(Fan2 { rays, complete: true, positive_cone_index: 0 })
}

/// Build a complete fan from a raw clockwise ray list, re-validating all
/// invariants through the quiddity round trip.
pub fn fan_from_rays(rays: Vec<Ray>) -> Result<Fan2, Error> {
    if rays.len() < 4 || !rays[0].is(0, 1) || !rays[1].is(1, 0) {
        return Err(Error::InvalidQuiddity(
            "ray list must start (0,1),(1,0) and have at least 4 rays".into(),
        ));
    }
    let candidate = Fan2 { rays, complete: true, positive_cone_index: 0 };
    if !candidate.rays.iter().any(|r| r.is(0, -1)) {
        return Err(Error::InvalidQuiddity("no (0,-1) ray".into()));
    }
    let fan = quiddity_to_fan(&fan_to_quiddity(&candidate)?)?;
    if fan.rays != candidate.rays {
        return Err(Error::InvalidQuiddity("ray list is not a valid clockwise fan".into()));
    }
    Ok(fan)
}

/// Read the quiddity sequence off a complete fan.
pub fn fan_to_quiddity(f: &Fan2) -> Result<Quiddity, Error> {
    if !f.complete {
        return Err(Error::NotComplete);
    }
    let n = f.rays.len();
    let q_at = |k: usize| entry_at(f.ray(k + n - 1), f.ray(k), f.ray(k + 1));
    let m = f.south_index();
    let mut a_part = Vec::with_capacity(m);
    for k in 1..=m {
        a_part.push(q_at(k)?);
    }
    let mut b_part = vec![q_at(0)?];
    for k in ((m + 1)..n).rev() {
        b_part.push(q_at(k)?);
    }
    Ok(Quiddity::new(a_part, b_part))
}

/// Apply the sequence transform `D_i`: insert a 1 after position `i`
/// (1-based) and bump both neighbors. The cyclic wrap bumps position 1 when
/// `i = n`.
pub fn subdivide_cyclic(entries: &[i64], i: usize) -> Vec<i64> {
    let n = entries.len();
    assert!((1..=n).contains(&i));
    let mut out = Vec::with_capacity(n + 1);
    out.extend_from_slice(entries);
    out[i - 1] += 1;
    out[i % n] += 1;
    out.insert(i, 1);
    out
}

fn split_full_cyclic(full: &[i64]) -> Result<Quiddity, Error> {
    // Provisional split; quiddity_to_fan re-derives the ray positions, so
    // first regenerate rays to find where (0,-1) lands.
    let n = full.len();
    let mut rays = vec![Ray::from_i64(0, 1), Ray::from_i64(1, 0)];
    for k in 1..n {
        let next = next_ray(&rays[k - 1], &rays[k], full[k - 1]);
        rays.push(next);
    }
    let m = rays
        .iter()
        .position(|r| r.is(0, -1))
        .ok_or_else(|| Error::InvalidQuiddity("no (0,-1) ray".into()))?;
    let a_part = full[..m].to_vec();
    let mut b_part = vec![full[n - 1]];
    b_part.extend(full[m..n - 1].iter().rev());
    Ok(Quiddity::new(a_part, b_part))
}

/// Subdivision of the cone σ_i = cone{v_i, v_{i+1}} of a complete fan,
/// for 1 ≤ i ≤ n. The positive and negative cones may not be subdivided
/// (the result would no longer be sign-coherent).
pub fn subdivide_fan(f: &Fan2, i: usize) -> Result<Fan2, Error> {
    let n = f.facets();
    if !(1..=n).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let m = f.south_index();
    if i == n || i == m {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let u = f.ray(i).clone();
    let v = f.ray(i + 1).clone();
    let mut rays = f.rays.clone();
    rays.insert(i + 1, u.add(&v));
    let fan = Fan2 { rays, complete: true, positive_cone_index: 0 };
    // re-derive and re-validate through the quiddity round trip
    quiddity_to_fan(&fan_to_quiddity(&fan)?)
}

/// Quiddity-level subdivision; agrees with [`subdivide_fan`] through the
/// fan/quiddity correspondence.
pub fn subdivide_quiddity(q: &Quiddity, i: usize) -> Result<Quiddity, Error> {
    let n = q.len();
    let m = q.a_part.len();
    if !(1..=n).contains(&i) || i == n || i == m {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    split_full_cyclic(&subdivide_cyclic(&q.full_cyclic(), i))
}

/// Rotation ρ of a complete fan in `Fan^{+-}`: cyclic shift of the a-part.
pub fn rotate_quiddity(q: &Quiddity) -> Result<Quiddity, Error> {
    if !q.is_plus_minus() {
        return Err(Error::NotPlusMinusFan);
    }
    let mut a = q.a_part.clone();
    a.rotate_left(1);
    Ok(Quiddity::plus_minus(a))
}

pub fn rotate_fan(f: &Fan2) -> Result<Fan2, Error> {
    quiddity_to_fan(&rotate_quiddity(&fan_to_quiddity(f)?)?)
}

/// Rotation of a partial walk: drop the first entry and transform the rays
/// by the map sending (1,0) ↦ (0,1) and (ℓ,−1) ↦ (1,0).
pub fn rotate_walk(w: &PartialWalk) -> Result<PartialWalk, Error> {
    let Some(&l) = w.entries.first() else {
        return Err(Error::NotPlusMinusFan);
    };
    let entries = w.entries[1..].to_vec();
    let rays = w.rays[1..].iter().map(|r| r.apply(0, 1, -1, l)).collect();
    Ok(PartialWalk { rays, entries, exhausted_budget: w.exhausted_budget })
}

/// One step in a fan-operator pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FanOp {
    /// ρ applied `k` times.
    Rotate(usize),
    /// D at cone index `i`.
    Subdivide(usize),
}

/// The operator sequence, in application order, expressing `D_{σ_i}` on an
/// n-facet fan through rotations and the bottom subdivision `D_{σ_{n-3}}`.
pub fn rotation_decomposition(i: usize, n: usize) -> Result<Vec<FanOp>, Error> {
    if n < 4 || !(1..=n - 3).contains(&i) {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    Ok(vec![FanOp::Rotate(i + 1), FanOp::Subdivide(n - 3), FanOp::Rotate(n - 3 - i)])
}

pub fn apply_fan_ops(f: &Fan2, ops: &[FanOp]) -> Result<Fan2, Error> {
    let mut cur = f.clone();
    for op in ops {
        cur = match *op {
            FanOp::Rotate(k) => {
                let mut g = cur;
                for _ in 0..k {
                    g = rotate_fan(&g)?;
                }
                g
            }
            FanOp::Subdivide(i) => subdivide_fan(&cur, i)?,
        };
    }
    Ok(cur)
}

/// Gluing ∗ along the axes: the a-part of `f` with the b-part of `g`.
pub fn glue_star(f: &Fan2, g: &Fan2) -> Result<Fan2, Error> {
    let qf = fan_to_quiddity(f)?;
    let qg = fan_to_quiddity(g)?;
    glue_star_quiddity(&qf, &qg).and_then(|q| quiddity_to_fan(&q))
}

pub fn glue_star_quiddity(f: &Quiddity, g: &Quiddity) -> Result<Quiddity, Error> {
    if !f.is_plus_minus() {
        return Err(Error::WrongHalf("left factor must contain cone{(-1,0),(0,1)}".into()));
    }
    if g.a_part != [0, 0] {
        return Err(Error::WrongHalf("right factor must contain cone{(1,0),(0,-1)}".into()));
    }
    Ok(Quiddity::new(f.a_part.clone(), g.b_part.clone()))
}

/// Gluing ∘ along the ray (1,−1).
pub fn glue_circ(f: &Fan2, g: &Fan2) -> Result<Fan2, Error> {
    let qf = fan_to_quiddity(f)?;
    let qg = fan_to_quiddity(g)?;
    glue_circ_quiddity(&qf, &qg).and_then(|q| quiddity_to_fan(&q))
}

pub fn glue_circ_quiddity(f: &Quiddity, g: &Quiddity) -> Result<Quiddity, Error> {
    if !f.is_plus_minus() || !g.is_plus_minus() {
        return Err(Error::MissingAnchorCone);
    }
    let (fa, ga) = (&f.a_part, &g.a_part);
    // f must contain cone{(0,-1),(1,-1)} (last entry 1), g must contain
    // cone{(1,-1),(1,0)} (first entry 1).
    if fa.len() < 3 || ga.len() < 3 || *fa.last().unwrap() != 1 || ga[0] != 1 {
        return Err(Error::MissingAnchorCone);
    }
    let mut a = fa[..fa.len() - 2].to_vec();
    a.push(fa[fa.len() - 2] + ga[1] - 1);
    a.extend_from_slice(&ga[2..]);
    Ok(Quiddity::plus_minus(a))
}

/// Transpose (x,y) ↦ (y,x): swaps the a- and b-parts.
pub fn transpose_fan(f: &Fan2) -> Result<Fan2, Error> {
    quiddity_to_fan(&transpose_quiddity(&fan_to_quiddity(f)?))
}

pub fn transpose_quiddity(q: &Quiddity) -> Quiddity {
    Quiddity::new(q.b_part.clone(), q.a_part.clone())
}

/// Point reflection v ↦ −v, the fan of the opposite algebra: each part is
/// the reverse of the other part.
pub fn negate_fan(f: &Fan2) -> Result<Fan2, Error> {
    quiddity_to_fan(&negate_quiddity(&fan_to_quiddity(f)?))
}

pub fn negate_quiddity(q: &Quiddity) -> Quiddity {
    let mut a = q.b_part.clone();
    a.reverse();
    let mut b = q.a_part.clone();
    b.reverse();
    Quiddity::new(a, b)
}

/// Vertices of the polytope P(Σ): the ray endpoints in clockwise cyclic order.
pub fn polytope_vertices(f: &Fan2) -> Result<Vec<(BigInt, BigInt)>, Error> {
    if !f.complete {
        return Err(Error::NotComplete);
    }
    Ok(f.rays.iter().map(|r| (r.x.clone(), r.y.clone())).collect())
}

/// Convexity of P(Σ): no reflex vertex in the clockwise vertex cycle
/// (collinear triples are allowed).
pub fn is_convex(f: &Fan2) -> Result<bool, Error> {
    if !f.complete {
        return Err(Error::NotComplete);
    }
    let n = f.rays.len();
    for k in 0..n {
        let a = f.ray(k);
        let b = f.ray(k + 1);
        let c = f.ray(k + 2);
        let e1 = Ray { x: &b.x - &a.x, y: &b.y - &a.y };
        let e2 = Ray { x: &c.x - &b.x, y: &c.y - &b.y };
        let cross = &e1.x * &e2.y - &e1.y * &e2.x;
        if cross.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One of the four quiddity parts that occur in convex complete fans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConvexPart {
    P00,
    P111,
    P1212,
    P2121,
}

impl ConvexPart {
    pub fn entries(&self) -> &'static [i64] {
        match self {
            ConvexPart::P00 => &[0, 0],
            ConvexPart::P111 => &[1, 1, 1],
            ConvexPart::P1212 => &[1, 2, 1, 2],
            ConvexPart::P2121 => &[2, 1, 2, 1],
        }
    }

    pub fn of(part: &[i64]) -> Option<ConvexPart> {
        [ConvexPart::P00, ConvexPart::P111, ConvexPart::P1212, ConvexPart::P2121]
            .into_iter()
            .find(|c| c.entries() == part)
    }
}

impl fmt::Display for ConvexPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", part_to_string(self.entries()))
    }
}

/// Classification of a complete fan among the 16 convex types, or NonConvex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexClass {
    Convex(ConvexPart, ConvexPart),
    NonConvex,
}

impl fmt::Display for ConvexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConvexClass::Convex(a, b) => write!(f, "{a};{b}"),
            ConvexClass::NonConvex => write!(f, "NonConvex"),
        }
    }
}

pub fn classify_convex(f: &Fan2) -> Result<ConvexClass, Error> {
    let q = fan_to_quiddity(f)?;
    Ok(classify_convex_quiddity(&q))
}

pub fn classify_convex_quiddity(q: &Quiddity) -> ConvexClass {
    match (ConvexPart::of(&q.a_part), ConvexPart::of(&q.b_part)) {
        (Some(a), Some(b)) => ConvexClass::Convex(a, b),
        _ => ConvexClass::NonConvex,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Quiddity {
        s.parse().unwrap()
    }

    fn rays_i64(f: &Fan2) -> Vec<(i64, i64)> {
        f.rays()
            .iter()
            .map(|r| (i64::try_from(&r.x).unwrap(), i64::try_from(&r.y).unwrap()))
            .collect()
    }

    #[test]
    fn quiddity_string_round_trip() {
        for s in ["111;00", "21312;00", "00;00", "1,2,1,2;2,1,2,1"] {
            let parsed = q(s);
            let printed = parsed.to_string();
            assert_eq!(q(&printed), parsed);
        }
        assert_eq!(q("1,2,1,2;2,1,2,1").to_string(), "1212;2121");
        let big = Quiddity::plus_minus(vec![2, 1, 4, 1, 2, 2, 10]);
        assert_eq!(big.to_string(), "2,1,4,1,2,2,10;00");
    }

    #[test]
    fn validate_report_examples() {
        assert!(validate_quiddity_cyclic(&[0, 0, 0, 0]).is_valid());
        assert!(validate_quiddity_cyclic(&[1, 1, 1, 0, 0]).is_valid());
        assert!(validate_quiddity_cyclic(&[2, 1, 4, 1, 2, 2, 0, 0]).is_valid());
        let bad = validate_quiddity_cyclic(&[1, 1, 1, 1, 0]);
        assert!(!bad.is_valid());
        // sum can pass while the product fails
        let r = validate_quiddity_cyclic(&[3, 0, 0, 0, 0]);
        assert!(r.sum_ok && !r.product_ok);
    }

    #[test]
    fn fan_from_quiddity_examples() {
        let f = quiddity_to_fan(&q("111;00")).unwrap();
        assert_eq!(rays_i64(&f), vec![(0, 1), (1, 0), (1, -1), (0, -1), (-1, 0)]);
        let cross = quiddity_to_fan(&q("00;00")).unwrap();
        assert_eq!(rays_i64(&cross), vec![(0, 1), (1, 0), (0, -1), (-1, 0)]);
        let f = quiddity_to_fan(&q("1212;00")).unwrap();
        assert_eq!(rays_i64(&f), vec![(0, 1), (1, 0), (1, -1), (1, -2), (0, -1), (-1, 0)]);
        assert_eq!(f.positive_cone_index(), 0);
    }

    #[test]
    fn fan_to_quiddity_examples() {
        let cross = quiddity_to_fan(&Quiddity::cross()).unwrap();
        assert_eq!(fan_to_quiddity(&cross).unwrap(), Quiddity::cross());
        let f = quiddity_to_fan(&q("111;111")).unwrap();
        assert_eq!(fan_to_quiddity(&f).unwrap(), q("111;111"));
        let f = quiddity_to_fan(&q("21312;00")).unwrap();
        assert_eq!(fan_to_quiddity(&f).unwrap(), q("21312;00"));
    }

    #[test]
    fn invalid_quiddities_rejected() {
        assert!(quiddity_to_fan(&q("11;00")).is_err());
        assert!(quiddity_to_fan(&Quiddity::plus_minus(vec![3, 0, 0])).is_err());
        assert!(quiddity_to_fan(&Quiddity::new(vec![1, 1], vec![1, 1])).is_err());
    }

    #[test]
    fn subdivision_examples() {
        // D_2 on (1,1,1,0,0) = (1,2,1,2,0,0)
        assert_eq!(subdivide_quiddity(&q("111;00"), 2).unwrap(), q("1212;00"));
        // cross fan, cone{(1,0),(0,-1)} is σ_1; new ray (1,-1)
        let cross = quiddity_to_fan(&Quiddity::cross()).unwrap();
        let f = subdivide_fan(&cross, 1).unwrap();
        assert_eq!(fan_to_quiddity(&f).unwrap(), q("111;00"));
        assert!(rays_i64(&f).contains(&(1, -1)));
        // formula application at index 4 of (2,1,2,1,0,0): third-quadrant insert
        assert_eq!(subdivide_cyclic(&[2, 1, 2, 1, 0, 0], 4), vec![2, 1, 2, 2, 1, 1, 0]);
        // the geometry of the Σ_2121 → Σ_21312 step is the bottom cone σ_3
        assert_eq!(subdivide_quiddity(&q("2121;00"), 3).unwrap(), q("21312;00"));
    }

    #[test]
    fn subdivide_preserves_validity_and_ray_count() {
        let f = quiddity_to_fan(&q("1212;00")).unwrap();
        for i in 1..=f.facets() {
            match subdivide_fan(&f, i) {
                Ok(g) => {
                    assert_eq!(g.facets(), f.facets() + 1);
                    assert!(validate_quiddity(&fan_to_quiddity(&g).unwrap()).is_valid());
                }
                Err(Error::IndexOutOfRange { .. }) => {}
                Err(e) => panic!("unexpected error {e}"),
            }
        }
        assert!(subdivide_fan(&f, 0).is_err());
        assert!(subdivide_fan(&f, 99).is_err());
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(rotate_quiddity(&q("1212;00")).unwrap(), q("2121;00"));
        assert_eq!(rotate_quiddity(&q("21312;00")).unwrap(), q("13122;00"));
        // ρ^{n-2} is the identity
        let mut cur = q("111;00");
        let n = cur.len();
        for _ in 0..n - 2 {
            cur = rotate_quiddity(&cur).unwrap();
        }
        assert_eq!(cur, q("111;00"));
        assert!(rotate_quiddity(&q("111;111")).is_err());
    }

    #[test]
    fn rotate_walk_shifts_entries() {
        let w = PartialWalk::new(vec![4, 1, 4, 1], false);
        assert!(w.recurrence_holds());
        let r = rotate_walk(&w).unwrap();
        assert_eq!(r.entries, vec![1, 4, 1]);
        assert!(r.recurrence_holds());
        assert_eq!(r.rays[0], Ray::from_i64(0, 1));
        assert_eq!(r.rays[1], Ray::from_i64(1, 0));
    }

    #[test]
    fn rotation_decomposition_matches_direct() {
        // i = 1, n = 5 on Σ_111
        let f = quiddity_to_fan(&q("111;00")).unwrap();
        let ops = rotation_decomposition(1, 5).unwrap();
        let via = apply_fan_ops(&f, &ops).unwrap();
        let direct = subdivide_fan(&f, 1).unwrap();
        assert_eq!(via, direct);
        // i = 2, n = 6 on Σ_1212
        let f = quiddity_to_fan(&q("1212;00")).unwrap();
        let via = apply_fan_ops(&f, &rotation_decomposition(2, 6).unwrap()).unwrap();
        let direct = subdivide_fan(&f, 2).unwrap();
        assert_eq!(via, direct);
        // i = n−3 collapses to the plain bottom subdivision
        assert_eq!(
            rotation_decomposition(2, 5).unwrap(),
            vec![FanOp::Rotate(3), FanOp::Subdivide(2), FanOp::Rotate(0)]
        );
        assert!(rotation_decomposition(3, 5).is_err());
    }

    #[test]
    fn gluing_star_examples() {
        assert_eq!(glue_star_quiddity(&q("111;00"), &q("00;111")).unwrap(), q("111;111"));
        assert_eq!(
            glue_star_quiddity(&Quiddity::cross(), &Quiddity::cross()).unwrap(),
            Quiddity::cross()
        );
        assert_eq!(glue_star_quiddity(&q("13122;00"), &q("00;1212")).unwrap(), q("13122;1212"));
        assert!(glue_star_quiddity(&q("111;111"), &q("00;111")).is_err());
        // ray set of the gluing is the union of the two ray sets
        let f = quiddity_to_fan(&q("13122;00")).unwrap();
        let g = quiddity_to_fan(&q("00;1212")).unwrap();
        let glued = glue_star(&f, &g).unwrap();
        let mut union: Vec<&Ray> = f.rays().iter().chain(g.rays().iter()).collect();
        union.sort_by_key(|r| (r.x.clone(), r.y.clone()));
        union.dedup();
        assert_eq!(glued.facets(), union.len());
        for r in glued.rays() {
            assert!(union.contains(&r));
        }
    }

    #[test]
    fn gluing_circ_examples() {
        assert_eq!(glue_circ_quiddity(&q("2121;00"), &q("13122;00")).unwrap(), q("214122;00"));
        assert_eq!(glue_circ_quiddity(&q("111;00"), &q("111;00")).unwrap(), q("111;00"));
        assert_eq!(glue_circ_quiddity(&q("2121;00"), &q("1212;00")).unwrap(), q("21312;00"));
        assert!(glue_circ_quiddity(&q("1212;00"), &q("111;00")).is_err());
        assert!(glue_circ_quiddity(&q("111;00"), &q("2121;00")).is_err());
    }

    #[test]
    fn transpose_and_negate() {
        assert_eq!(transpose_quiddity(&q("111;00")), q("00;111"));
        assert_eq!(transpose_quiddity(&transpose_quiddity(&q("1212;00"))), q("1212;00"));
        let cross = quiddity_to_fan(&Quiddity::cross()).unwrap();
        assert_eq!(transpose_fan(&cross).unwrap(), cross);
        assert_eq!(negate_quiddity(&q("2121;00")), q("00;1212"));
        assert_eq!(negate_quiddity(&negate_quiddity(&q("13122;1212"))), q("13122;1212"));
    }

    #[test]
    fn convexity_examples() {
        let f = quiddity_to_fan(&q("111;111")).unwrap();
        assert!(is_convex(&f).unwrap());
        let f = quiddity_to_fan(&q("21312;00")).unwrap();
        assert!(!is_convex(&f).unwrap());
        let cross = quiddity_to_fan(&Quiddity::cross()).unwrap();
        assert!(is_convex(&cross).unwrap());
        assert_eq!(polytope_vertices(&cross).unwrap().len(), 4);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify_convex_quiddity(&q("1212;2121")),
            ConvexClass::Convex(ConvexPart::P1212, ConvexPart::P2121)
        );
        assert_eq!(
            classify_convex_quiddity(&Quiddity::cross()),
            ConvexClass::Convex(ConvexPart::P00, ConvexPart::P00)
        );
        assert_eq!(classify_convex_quiddity(&q("141222;00")), ConvexClass::NonConvex);
        assert_eq!(classify_convex_quiddity(&q("1212;2121")).to_string(), "1212;2121");
    }
}
