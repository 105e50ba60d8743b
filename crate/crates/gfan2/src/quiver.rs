//! A small text format for bound quiver algebras on two vertices.
//!
//! ```text
//! # comments start with '#'
//! p 2
//! vertices 1 2
//! arrow a: 1 -> 2
//! arrow c: 2 -> 2
//! relation c*c
//! relation c*a - a*c        # F_p-combinations of path words
//! ```
//!
//! Paths compose left to right: `c*a` is "c, then a", a path from the source
//! of `c` to the target of `a`. Relations must be homogeneous in path length
//! (all the bound quiver algebras handled here are), of length at least two,
//! and the quotient must be finite dimensional.

use std::collections::BTreeMap;

use crate::algebra::{Algebra, BasedAlgebra, Vector};
use crate::fp::{fp_from_i64, FpMat, Prime, Subspace};
use crate::Error;

#[derive(Debug, Clone)]
struct Arrow {
    name: String,
    source: usize, // 0 or 1
    target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    source: usize,
    arrows: Vec<usize>,
}

impl Path {
    fn target(&self, arrows: &[Arrow]) -> usize {
        self.arrows.last().map_or(self.source, |&a| arrows[a].target)
    }
}

fn err(msg: impl Into<String>) -> Error {
    Error::ParseQuiver(msg.into())
}

/// Parse a quiver description into a based algebra.
pub fn parse(text: &str) -> Result<BasedAlgebra, Error> {
    let mut p: Option<u32> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<Arrow> = Vec::new();
    let mut relations: Vec<Vec<(i64, Vec<usize>)>> = Vec::new();

    let vertex_id = |vertices: &[String], tok: &str| -> Result<usize, Error> {
        vertices
            .iter()
            .position(|v| v == tok)
            .ok_or_else(|| err(format!("unknown vertex {tok:?}")))
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let at = |m: &str| err(format!("line {}: {m}", lineno + 1));
        if let Some(rest) = line.strip_prefix("p ") {
            p = Some(rest.trim().parse().map_err(|_| at("bad prime"))?);
        } else if let Some(rest) = line.strip_prefix("vertices") {
            vertices = rest.split_whitespace().map(str::to_owned).collect();
            if vertices.len() != 2 {
                return Err(at("exactly two vertices are supported"));
            }
        } else if let Some(rest) = line.strip_prefix("arrow ") {
            let (name, spec) = rest.split_once(':').ok_or_else(|| at("expected `name: i -> j`"))?;
            let (s, t) = spec.split_once("->").ok_or_else(|| at("expected `i -> j`"))?;
            let name = name.trim().to_string();
            if name.is_empty() || arrows.iter().any(|a| a.name == name) {
                return Err(at("bad or duplicate arrow name"));
            }
            arrows.push(Arrow {
                name,
                source: vertex_id(&vertices, s.trim())?,
                target: vertex_id(&vertices, t.trim())?,
            });
        } else if let Some(rest) = line.strip_prefix("relation ") {
            relations.push(parse_relation(rest, &arrows).map_err(|e| at(&e.to_string()))?);
        } else {
            return Err(at("unrecognized line"));
        }
    }
    let p = p.ok_or_else(|| err("missing `p <prime>` line"))?;
    Prime::new(p)?;
    if vertices.len() != 2 {
        return Err(err("missing `vertices` line"));
    }
    build(p, &arrows, &relations)
}

fn parse_relation(text: &str, arrows: &[Arrow]) -> Result<Vec<(i64, Vec<usize>)>, Error> {
    let mut terms = Vec::new();
    let mut rest = text.trim();
    let mut sign = 1i64;
    while !rest.is_empty() {
        let end = rest[1..].find(['+', '-']).map(|k| k + 1).unwrap_or(rest.len());
        let (term, tail) = rest.split_at(end);
        let term = term.trim();
        let mut parts = term.split('*').map(str::trim).peekable();
        let mut coeff = sign;
        if let Some(first) = parts.peek() {
            if let Ok(c) = first.parse::<i64>() {
                coeff *= c;
                parts.next();
            }
        }
        let mut word = Vec::new();
        for part in parts {
            let idx = arrows
                .iter()
                .position(|a| a.name == part)
                .ok_or_else(|| err(format!("unknown arrow {part:?} in relation")))?;
            word.push(idx);
        }
        if word.is_empty() {
            return Err(err("empty path word in relation"));
        }
        // composability
        for w in word.windows(2) {
            if arrows[w[0]].target != arrows[w[1]].source {
                return Err(err("path word is not composable"));
            }
        }
        terms.push((coeff, word));
        if tail.is_empty() {
            break;
        }
        sign = if tail.starts_with('-') { -1 } else { 1 };
        rest = tail[1..].trim();
    }
    // homogeneity: same length, source, target across the combination
    let len0 = terms[0].1.len();
    let s0 = arrows[terms[0].1[0]].source;
    let t0 = arrows[*terms[0].1.last().unwrap()].target;
    for (_, w) in &terms {
        if w.len() != len0 || arrows[w[0]].source != s0 || arrows[*w.last().unwrap()].target != t0 {
            return Err(err("relation is not homogeneous (length and endpoints must match)"));
        }
    }
    if len0 < 2 {
        return Err(err("relations must have path length at least 2"));
    }
    Ok(terms)
}

const MAX_PATH_LENGTH: usize = 64;

fn build(
    p: u32,
    arrows: &[Arrow],
    relations: &[Vec<(i64, Vec<usize>)>],
) -> Result<BasedAlgebra, Error> {
    // paths per length, with an index map
    let mut levels: Vec<Vec<Path>> = vec![vec![
        Path { source: 0, arrows: vec![] },
        Path { source: 1, arrows: vec![] },
    ]];
    // representative basis paths (global indices into `basis`), by level
    struct Level {
        paths: BTreeMap<Path, usize>,
        // reduction of each path class to representative coordinates
        to_reps: Vec<Option<Vector>>, // per path: coords in this level's reps, None = reduce later
        rep_global: Vec<usize>,
    }
    let mut basis: Vec<Path> = Vec::new();
    let mut labels: Vec<String> = Vec::new();
    let mut level_data: Vec<Level> = Vec::new();

    let rel_by_len: BTreeMap<usize, Vec<&Vec<(i64, Vec<usize>)>>> = {
        let mut m: BTreeMap<usize, Vec<_>> = BTreeMap::new();
        for r in relations {
            m.entry(r[0].1.len()).or_default().push(r);
        }
        m
    };

    let mut length = 0usize;
    loop {
        let paths = levels[length].clone();
        let pmap: BTreeMap<Path, usize> = paths.iter().cloned().zip(0..).collect();
        let n = paths.len();
        // ideal at this level: u · r · v padding every relation of length ≤ L
        let mut ideal = Subspace::new(p, n.max(1));
        if n > 0 {
            for (&rl, rels) in rel_by_len.range(..=length) {
                let pad = length - rl;
                for pre_len in 0..=pad {
                    let post_len = pad - pre_len;
                    for pre in &levels[pre_len] {
                        for rel in rels {
                            if pre.target(arrows) != arrows[rel[0].1[0]].source {
                                continue;
                            }
                            // enumerate postfix paths of length post_len starting
                            // at the relation target
                            let rel_target = arrows[*rel[0].1.last().unwrap()].target;
                            for post in &levels[post_len] {
                                if post.source != rel_target {
                                    continue;
                                }
                                let mut vec = vec![0u32; n];
                                let mut ok = true;
                                for (c, w) in rel.iter() {
                                    let mut full = pre.arrows.clone();
                                    full.extend(w.iter().copied());
                                    full.extend(post.arrows.iter().copied());
                                    let path = Path { source: pre.source, arrows: full };
                                    match pmap.get(&path) {
                                        Some(&k) => {
                                            vec[k] = fp_from_i64(p, *c);
                                        }
                                        None => {
                                            ok = false;
                                            break;
                                        }
                                    }
                                }
                                if ok {
                                    ideal.insert(&vec);
                                }
                            }
                        }
                    }
                }
            }
        }
        // representatives: paths not absorbed by the ideal
        let mut reps = Vec::new();
        let mut rep_global = Vec::new();
        let mut ext = ideal.clone();
        for (k, path) in paths.iter().enumerate() {
            let mut e = vec![0u32; n];
            e[k] = 1;
            if ext.insert(&e) {
                rep_global.push(basis.len());
                basis.push(path.clone());
                labels.push(path_label(path, arrows));
                reps.push(path.clone());
            }
        }
        // reduction table path ↦ representative coordinates
        let mut solve_mat = FpMat::zero(p, n.max(1), ideal.dim() + reps.len());
        for (c, v) in ideal.basis().iter().enumerate() {
            for r in 0..n {
                solve_mat.set(r, c, v[r]);
            }
        }
        for (c, path) in reps.iter().enumerate() {
            solve_mat.set(pmap[path], ideal.dim() + c, 1);
        }
        let mut to_reps = Vec::with_capacity(n);
        for k in 0..n {
            let mut e = vec![0u32; n];
            e[k] = 1;
            let sol = solve_mat
                .solve(&e)
                .ok_or_else(|| err("internal: path not reducible"))?;
            to_reps.push(Some(sol[ideal.dim()..].to_vec()));
        }
        let empty = reps.is_empty();
        level_data.push(Level { paths: pmap, to_reps, rep_global });
        if empty && length > 0 {
            break;
        }
        if length == MAX_PATH_LENGTH {
            return Err(err(format!(
                "algebra is not finite dimensional within path length {MAX_PATH_LENGTH}"
            )));
        }
        // next level of paths, extending representatives only would be wrong:
        // extend *all* paths, reduction handles the rest
        let mut next = Vec::new();
        for path in &paths {
            let t = path.target(arrows);
            for (ai, a) in arrows.iter().enumerate() {
                if a.source == t {
                    let mut w = path.arrows.clone();
                    w.push(ai);
                    next.push(Path { source: path.source, arrows: w });
                }
            }
        }
        levels.push(next);
        length += 1;
    }

    let dim = basis.len();
    let basis_index: BTreeMap<Path, usize> = basis.iter().cloned().zip(0..).collect();
    let arrows_owned = arrows.to_vec();
    let basis_c = basis.clone();
    let level_ref = &level_data;
    let mult = move |i: usize, j: usize| -> Vector {
        let mut out = vec![0u32; dim];
        let (u, v) = (&basis_c[i], &basis_c[j]);
        if u.target(&arrows_owned) != v.source {
            return out;
        }
        let mut w = u.arrows.clone();
        w.extend(v.arrows.iter().copied());
        let path = Path { source: u.source, arrows: w };
        let lvl = path.arrows.len();
        if lvl >= level_ref.len() {
            return out; // beyond the last level: everything is in the ideal
        }
        let data = &level_ref[lvl];
        let Some(&k) = data.paths.get(&path) else {
            return out;
        };
        let coords = data.to_reps[k].as_ref().expect("reduction computed");
        for (c, &val) in coords.iter().enumerate() {
            out[data.rep_global[c]] = val;
        }
        out
    };
    let _ = &basis_index;
    let e1 = {
        let mut v = vec![0u32; dim];
        v[0] = 1;
        v
    };
    let e2 = {
        let mut v = vec![0u32; dim];
        v[1] = 1;
        v
    };
    let unit: Vector = e1.iter().zip(&e2).map(|(&a, &b)| a + b).collect();
    let radical: Vec<Vector> = (2..dim)
        .map(|k| {
            let mut v = vec![0u32; dim];
            v[k] = 1;
            v
        })
        .collect();
    let alg = Algebra::new(p, labels, &mult, unit, radical)?;
    Ok(BasedAlgebra { alg, e1, e2 })
}

fn path_label(path: &Path, arrows: &[Arrow]) -> String {
    if path.arrows.is_empty() {
        return format!("e{}", path.source + 1);
    }
    let names: Vec<&str> = path.arrows.iter().map(|&a| arrows[a].name.as_str()).collect();
    if names.iter().all(|n| n.len() == 1) {
        names.concat()
    } else {
        names.join("*")
    }
}

/// Best-effort quiver presentation of a based algebra: the Gabriel quiver
/// (arrow counts from the radical modulo its square) with generated names.
/// Relations are not reconstructed.
pub fn pretty(la: &BasedAlgebra) -> String {
    let p = la.p();
    let dim = la.dim();
    let rad = Subspace::from_vectors(p, dim, la.alg.radical.iter());
    let mut rad_sq = Subspace::new(p, dim);
    for u in la.alg.radical.iter() {
        for v in la.alg.radical.iter() {
            rad_sq.insert(&la.alg.mul(u, v));
        }
    }
    let mut out = String::new();
    out.push_str(&format!("p {p}\nvertices 1 2\n"));
    let es = [la.e1.clone(), la.e2.clone()];
    let mut arrow_id = 0;
    for i in 0..2 {
        for j in 0..2 {
            // dim of e_i (J/J²) e_j
            let mut block = rad_sq.clone();
            let mut count = 0usize;
            for r in rad.basis() {
                let v = la.alg.mul(&es[i], &la.alg.mul(r, &es[j]));
                if block.insert(&v) {
                    count += 1;
                }
            }
            for _ in 0..count {
                out.push_str(&format!("arrow g{arrow_id}: {} -> {}\n", i + 1, j + 1));
                arrow_id += 1;
            }
        }
    }
    out.push_str(&format!(
        "# dim {} over F_{p}; relations not reconstructed (presentation is best effort)\n",
        dim
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::validate_algebra;

    #[test]
    fn path_algebra_of_one_arrow() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\n").unwrap();
        assert_eq!(la.dim(), 3);
        assert_eq!(la.alg.labels, vec!["e1", "e2", "a"]);
        assert!(validate_algebra(&la).is_valid());
    }

    #[test]
    fn loop_with_relation() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 1 -> 1\nrelation b*b\n").unwrap();
        // e1, e2, a, b, ba
        assert_eq!(la.dim(), 5);
        assert!(validate_algebra(&la).is_valid());
        let labels = &la.alg.labels;
        assert!(labels.contains(&"ba".to_string()));
        // b·a = path "ba", a·b = 0 (not composable)
        let ib = labels.iter().position(|l| l == "b").unwrap();
        let ia = labels.iter().position(|l| l == "a").unwrap();
        let iba = labels.iter().position(|l| l == "ba").unwrap();
        let prod = la.alg.basis_product_dense(ib, ia);
        assert_eq!(prod[iba], 1);
        assert!(la.alg.basis_product_dense(ia, ib).iter().all(|&c| c == 0));
    }

    #[test]
    fn commutation_relation() {
        // c·a = a·d with loops c at 1, d at 2
        let la = parse(
            "p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 1 -> 1\narrow d: 2 -> 2\n\
             relation c*c\nrelation d*d\nrelation c*a - a*d\n",
        )
        .unwrap();
        assert!(validate_algebra(&la).is_valid());
        // basis: e1 e2 a c d ca (ad ≡ ca)
        assert_eq!(la.dim(), 6);
    }

    #[test]
    fn infinite_dimensional_rejected() {
        assert!(parse("p 2\nvertices 1 2\narrow b: 1 -> 1\n").is_err());
    }

    #[test]
    fn malformed_inputs() {
        assert!(parse("vertices 1 2\n").is_err());
        assert!(parse("p 2\nvertices 1\n").is_err());
        assert!(parse("p 2\nvertices 1 2\narrow a: 1 -> 3\n").is_err());
        assert!(parse("p 2\nvertices 1 2\narrow a: 1 -> 2\nrelation a\n").is_err());
        assert!(parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*a\n").is_err());
        // inhomogeneous
        assert!(parse(
            "p 2\nvertices 1 2\narrow a: 1 -> 2\narrow b: 2 -> 1\nrelation a*b - a*b*a*b\n"
        )
        .is_err());
    }

    #[test]
    fn wang_dimension() {
        let la =
            parse("p 2\nvertices 1 2\narrow b: 1 -> 2\narrow a: 2 -> 2\nrelation a*a*a*a\n").unwrap();
        assert_eq!(la.dim(), 9);
        assert!(validate_algebra(&la).is_valid());
    }

    #[test]
    fn pretty_shows_gabriel_quiver() {
        let la = parse("p 2\nvertices 1 2\narrow a: 1 -> 2\narrow c: 2 -> 2\nrelation c*c\n").unwrap();
        let s = pretty(&la);
        assert!(s.contains("1 -> 2"));
        assert!(s.contains("2 -> 2"));
    }
}
