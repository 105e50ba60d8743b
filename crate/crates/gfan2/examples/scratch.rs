use gfan2::algebra::{triangular, Eps};
use gfan2::oracle::*;
use gfan2::synthesis::*;
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let base = wang_algebra(2).unwrap();
    println!("wang dim {} ({:?})", base.dim(), t0.elapsed());
    let t = Instant::now();
    let tri = triangular(&base, Eps::PlusMinus).unwrap();
    println!("tri ({:?})", t.elapsed());
    let t = Instant::now();
    let rotated = rotate_algebra(&tri).unwrap();
    println!("rotated dim {} ({:?})", rotated.dim(), t.elapsed());
    let t = Instant::now();
    let rot_tri = triangular(&rotated, Eps::PlusMinus).unwrap();
    println!("rot tri ({:?})", t.elapsed());
    let t = Instant::now();
    let w = quiddity_walk(&rot_tri, 8).unwrap();
    println!("walk rotated: {:?} ({:?})", match &w { WalkOutcome::Partial(p) => p.entries.clone(), WalkOutcome::Complete(e) => e.clone() }, t.elapsed());
    let t = Instant::now();
    let l2 = glue_circ_algebra(&base, &rotated).unwrap();
    println!("glued dim {} ({:?})", l2.dim(), t.elapsed());
    let t = Instant::now();
    let tri2 = triangular(&l2, Eps::PlusMinus).unwrap();
    println!("tri2 dims ({}, {}, {}) ({:?})", tri2.a.dim(), tri2.x_dim(), tri2.b.dim(), t.elapsed());
    let t = Instant::now();
    let w = quiddity_walk(&tri2, 8).unwrap();
    println!("walk l2 fwd: {:?} ({:?})", match &w { WalkOutcome::Partial(p) => p.entries.clone(), WalkOutcome::Complete(e) => e.clone() }, t.elapsed());
    let t = Instant::now();
    let w = quiddity_walk(&swap_op_tri(&tri2), 8).unwrap();
    println!("walk l2 end: {:?} ({:?})", match &w { WalkOutcome::Partial(p) => p.entries.clone(), WalkOutcome::Complete(e) => e.clone() }, t.elapsed());
    println!("total {:?}", t0.elapsed());
}
