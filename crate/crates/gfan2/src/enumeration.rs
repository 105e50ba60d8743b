//! Enumeration of complete sign-coherent fans containing the second
//! quadrant, and the bijections with polygon triangulations and
//! parenthesizations.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;

use crate::fan::{quiddity_to_fan, subdivide_cyclic, Quiddity, Ray};
use crate::Error;

/// All fans in `c-Fan^{+-}(2)` with the given facet count, as quiddity
/// sequences. Generated by iterated subdivision of fourth-quadrant cones
/// starting from the coordinate-cross fan, deduplicated on the canonical
/// quiddity form.
pub fn enumerate_pm_fans(facets: usize) -> BTreeSet<Quiddity> {
    let mut level: BTreeSet<Vec<i64>> = BTreeSet::new();
    if facets >= 4 {
        level.insert(vec![0, 0]);
    }
    let mut cur_facets = 4;
    while cur_facets < facets {
        let mut next = BTreeSet::new();
        for a in &level {
            let full: Vec<i64> = a.iter().copied().chain([0, 0]).collect();
            // fourth-quadrant cones are σ_1 … σ_{m-1} for a-part length m
            for i in 1..a.len() {
                let sub = subdivide_cyclic(&full, i);
                next.insert(sub[..sub.len() - 2].to_vec());
            }
        }
        level = next;
        cur_facets += 1;
    }
    level.into_iter().map(Quiddity::plus_minus).collect()
}

/// The expected count `(1/n)·C(2n−2, n−1)` for `facets = n+3`.
pub fn expected_pm_count(facets: usize) -> BigInt {
    assert!(facets >= 4);
    let n = (facets - 3) as u64;
    let mut binom = BigInt::from(1);
    for k in 0..(n - 1) {
        binom = binom * BigInt::from(2 * n - 2 - k) / BigInt::from(k + 1);
    }
    binom / BigInt::from(n)
}

/// A triangulation of a convex polygon with vertices `1..=polygon` in
/// clockwise order. The 2-gon (no triangles) corresponds to the cross fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    pub polygon: usize,
    pub triangles: BTreeSet<[usize; 3]>,
}

impl Triangulation {
    pub fn new(polygon: usize, triangles: BTreeSet<[usize; 3]>) -> Result<Triangulation, Error> {
        let t = Triangulation { polygon, triangles };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<(), Error> {
        let k = self.polygon;
        if k < 2 {
            return Err(Error::InvalidTriangulation("polygon needs at least 2 vertices".into()));
        }
        if k == 2 {
            return if self.triangles.is_empty() {
                Ok(())
            } else {
                Err(Error::InvalidTriangulation("a 2-gon has no triangles".into()))
            };
        }
        if self.triangles.len() != k - 2 {
            return Err(Error::InvalidTriangulation(format!(
                "expected {} triangles, found {}",
                k - 2,
                self.triangles.len()
            )));
        }
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for t in &self.triangles {
            if t[0] >= t[1] || t[1] >= t[2] || t[2] > k || t[0] < 1 {
                return Err(Error::InvalidTriangulation(format!("bad triangle {t:?}")));
            }
            edges.push((t[0], t[1]));
            edges.push((t[1], t[2]));
            edges.push((t[0], t[2]));
        }
        let is_boundary = |&(a, b): &(usize, usize)| b == a + 1 || (a == 1 && b == k);
        // boundary edges appear once, diagonals twice
        let mut sorted = edges.clone();
        sorted.sort();
        let mut i = 0;
        while i < sorted.len() {
            let run = sorted[i..].iter().take_while(|e| **e == sorted[i]).count();
            let want = if is_boundary(&sorted[i]) { 1 } else { 2 };
            if run != want {
                return Err(Error::InvalidTriangulation(format!(
                    "edge {:?} appears {run} times, expected {want}",
                    sorted[i]
                )));
            }
            i += run;
        }
        // non-crossing diagonals
        let diags: Vec<_> = edges.iter().filter(|e| !is_boundary(e)).collect();
        for (idx, &&(a, b)) in diags.iter().enumerate() {
            for &&(c, d) in &diags[idx + 1..] {
                let crossing = (a < c && c < b && b < d) || (c < a && a < d && d < b);
                if crossing {
                    return Err(Error::InvalidTriangulation(format!(
                        "diagonals ({a},{b}) and ({c},{d}) cross"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Number of triangles containing each vertex, in label order.
    pub fn vertex_counts(&self) -> Vec<i64> {
        let mut counts = vec![0i64; self.polygon];
        for t in &self.triangles {
            for &v in t {
                counts[v - 1] += 1;
            }
        }
        counts
    }
}

/// The triangulation whose vertex counts are the a-part of `q`.
pub fn fan_to_triangulation(q: &Quiddity) -> Result<Triangulation, Error> {
    if !q.is_plus_minus() {
        return Err(Error::NotPlusMinusFan);
    }
    quiddity_to_fan(q)?;
    let counts = &q.a_part;
    let k = counts.len();
    if k == 2 {
        return Triangulation::new(2, BTreeSet::new());
    }
    // peel ears: a vertex with count 1 spans the triangle with its neighbors
    let mut live: Vec<(usize, i64)> = counts.iter().copied().enumerate().map(|(i, c)| (i + 1, c)).collect();
    let mut triangles = BTreeSet::new();
    while live.len() > 3 {
        let j = live
            .iter()
            .position(|&(_, c)| c == 1)
            .ok_or_else(|| Error::InvalidTriangulation("no ear to peel".into()))?;
        let m = live.len();
        let prev = (j + m - 1) % m;
        let next = (j + 1) % m;
        let mut tri = [live[prev].0, live[j].0, live[next].0];
        tri.sort();
        triangles.insert(tri);
        live[prev].1 -= 1;
        live[next].1 -= 1;
        live.remove(j);
    }
    if live.iter().any(|&(_, c)| c != 1) {
        return Err(Error::InvalidTriangulation("leftover counts are not a triangle".into()));
    }
    let mut tri = [live[0].0, live[1].0, live[2].0];
    tri.sort();
    triangles.insert(tri);
    Triangulation::new(k, triangles)
}

/// Inverse of [`fan_to_triangulation`].
pub fn triangulation_to_fan(t: &Triangulation) -> Result<Quiddity, Error> {
    t.validate()?;
    let q = Quiddity::plus_minus(if t.polygon == 2 { vec![0, 0] } else { t.vertex_counts() });
    quiddity_to_fan(&q)?;
    Ok(q)
}

/// Full binary tree recording how the fourth-quadrant cones of a fan arise
/// by iterated subdivision. Leaves are the cones `σ_1 … σ_n` left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParenTree {
    Leaf,
    Node(Box<ParenTree>, Box<ParenTree>),
}

impl ParenTree {
    pub fn leaves(&self) -> usize {
        match self {
            ParenTree::Leaf => 1,
            ParenTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }
}

impl fmt::Display for ParenTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wrap(t: &ParenTree, next: &mut usize, out: &mut String) {
            match t {
                ParenTree::Leaf => {
                    out.push_str(&format!("σ_{next}"));
                    *next += 1;
                }
                ParenTree::Node(..) => {
                    out.push('(');
                    flat(t, next, out);
                    out.push(')');
                }
            }
        }
        fn flat(t: &ParenTree, next: &mut usize, out: &mut String) {
            match t {
                ParenTree::Leaf => wrap(t, next, out),
                ParenTree::Node(l, r) => {
                    wrap(l, next, out);
                    wrap(r, next, out);
                }
            }
        }
        let mut out = String::new();
        let mut next = 1;
        flat(self, &mut next, &mut out);
        write!(f, "{out}")
    }
}

/// The subdivision-history tree of the fourth quadrant of `q`.
pub fn fan_to_parenthesization(q: &Quiddity) -> Result<ParenTree, Error> {
    if !q.is_plus_minus() {
        return Err(Error::NotPlusMinusFan);
    }
    let fan = quiddity_to_fan(q)?;
    let m = q.a_part.len();
    let rays: Vec<Ray> = fan.rays()[1..=m].to_vec(); // v_1 = (1,0) … v_m = (0,-1)
    fn build(u: &Ray, w: &Ray, interior: &[Ray]) -> Result<ParenTree, Error> {
        if interior.is_empty() {
            return Ok(ParenTree::Leaf);
        }
        let split = Ray { x: &u.x + &w.x, y: &u.y + &w.y };
        let pos = interior
            .iter()
            .position(|r| *r == split)
            .ok_or_else(|| Error::InvalidQuiddity("fan is not an iterated subdivision".into()))?;
        let left = build(u, &split, &interior[..pos])?;
        let right = build(&split, w, &interior[pos + 1..])?;
        Ok(ParenTree::Node(Box::new(left), Box::new(right)))
    }
    build(&rays[0], &rays[m - 1], &rays[1..m - 1])
}

/// Inverse of [`fan_to_parenthesization`]: rebuild the quiddity from the
/// subdivision tree.
pub fn parenthesization_to_fan(t: &ParenTree) -> Result<Quiddity, Error> {
    fn rays_of(t: &ParenTree, u: &Ray, w: &Ray, out: &mut Vec<Ray>) {
        if let ParenTree::Node(l, r) = t {
            let split = Ray { x: &u.x + &w.x, y: &u.y + &w.y };
            rays_of(l, u, &split, out);
            out.push(split.clone());
            rays_of(r, &split, w, out);
        }
    }
    let u = Ray::from_i64(1, 0);
    let w = Ray::from_i64(0, -1);
    let mut interior = Vec::new();
    rays_of(t, &u, &w, &mut interior);
    let mut cycle = vec![Ray::from_i64(0, 1), u];
    cycle.extend(interior);
    cycle.extend([w, Ray::from_i64(-1, 0)]);
    let n = cycle.len();
    let mut a_part = Vec::new();
    for k in 1..n - 1 {
        let prev = &cycle[k - 1];
        let cur = &cycle[k];
        let next = &cycle[k + 1];
        let sx = &prev.x + &next.x;
        let sy = &prev.y + &next.y;
        let a = if cur.x != BigInt::from(0) { &sx / &cur.x } else { &sy / &cur.y };
        let a = i64::try_from(a).map_err(|_| Error::InvalidQuiddity("entry overflow".into()))?;
        a_part.push(a);
    }
    let q = Quiddity::plus_minus(a_part);
    quiddity_to_fan(&q)?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::validate_quiddity;

    #[test]
    fn counts_small_facets() {
        assert_eq!(enumerate_pm_fans(4).len(), 1);
        assert_eq!(enumerate_pm_fans(5).len(), 1);
        let six: Vec<String> = enumerate_pm_fans(6).iter().map(|q| q.to_string()).collect();
        assert_eq!(six, vec!["1212;00", "2121;00"]);
        assert_eq!(enumerate_pm_fans(7).len(), 5);
        let eight = enumerate_pm_fans(8);
        assert_eq!(eight.len(), 14);
        assert!(eight.contains(&"141222;00".parse().unwrap()));
    }

    #[test]
    fn expected_counts_formula() {
        let want = [1u64, 1, 2, 5, 14, 42, 132, 429];
        for (k, &w) in want.iter().enumerate() {
            assert_eq!(expected_pm_count(4 + k), BigInt::from(w));
        }
    }

    #[test]
    fn enumerated_fans_are_valid() {
        for facets in 4..=8 {
            for q in enumerate_pm_fans(facets) {
                assert!(validate_quiddity(&q).is_valid(), "{q}");
                assert!(q.a_part.iter().all(|&e| e >= 0));
                assert_eq!(q.b_part, vec![0, 0]);
            }
        }
    }

    #[test]
    fn triangulation_141222() {
        let q: Quiddity = "141222;00".parse().unwrap();
        let t = fan_to_triangulation(&q).unwrap();
        assert_eq!(t.polygon, 6);
        let want: BTreeSet<[usize; 3]> =
            [[1, 2, 6], [2, 5, 6], [2, 4, 5], [2, 3, 4]].into_iter().collect();
        assert_eq!(t.triangles, want);
        assert_eq!(triangulation_to_fan(&t).unwrap(), q);
    }

    #[test]
    fn triangulation_triangle_and_cross() {
        let q: Quiddity = "111;00".parse().unwrap();
        let t = fan_to_triangulation(&q).unwrap();
        assert_eq!(t.polygon, 3);
        assert_eq!(t.triangles.len(), 1);
        assert_eq!(triangulation_to_fan(&t).unwrap(), q);
        let cross = Quiddity::cross();
        let t = fan_to_triangulation(&cross).unwrap();
        assert_eq!((t.polygon, t.triangles.len()), (2, 0));
        assert_eq!(triangulation_to_fan(&t).unwrap(), cross);
    }

    #[test]
    fn triangulation_round_trip_small() {
        for facets in 4..=9 {
            for q in enumerate_pm_fans(facets) {
                let t = fan_to_triangulation(&q).unwrap();
                assert_eq!(triangulation_to_fan(&t).unwrap(), q, "{q}");
            }
        }
    }

    #[test]
    fn crossing_diagonals_rejected() {
        // square with both diagonals: invalid
        let tris: BTreeSet<[usize; 3]> = [[1, 2, 3], [1, 3, 4], [2, 3, 4]].into_iter().collect();
        assert!(Triangulation::new(4, tris).is_err());
    }

    #[test]
    fn parenthesization_examples() {
        let q: Quiddity = "141222;00".parse().unwrap();
        let t = fan_to_parenthesization(&q).unwrap();
        assert_eq!(t.to_string(), "σ_1(((σ_2σ_3)σ_4)σ_5)");
        assert_eq!(t.leaves(), 5);
        let cross = fan_to_parenthesization(&Quiddity::cross()).unwrap();
        assert_eq!(cross, ParenTree::Leaf);
    }

    #[test]
    fn parenthesization_bijective_and_catalan() {
        for facets in 4..=8 {
            let fans = enumerate_pm_fans(facets);
            let mut trees = BTreeSet::new();
            for q in &fans {
                let t = fan_to_parenthesization(q).unwrap();
                assert_eq!(t.leaves(), facets - 3);
                assert_eq!(parenthesization_to_fan(&t).unwrap(), *q);
                trees.insert(t.to_string());
            }
            assert_eq!(BigInt::from(trees.len()), expected_pm_count(facets));
        }
    }
}
