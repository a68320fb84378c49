#![allow(dead_code)]

use std::collections::BTreeSet;

use polytract::mconvex::{enumerate_mconvex, simplex_points};
use polytract::{MConvexSet, Point};
use proptest::prelude::*;

/// Every M-convex subset of Δ^r_n.
pub fn family(n: usize, r: i64) -> Vec<MConvexSet> {
    enumerate_mconvex(n, r, 64).unwrap()
}

/// The families used by the exhaustive checks: Δ²₃, Δ³₂, Δ²₄, Δ³₃ (n, r).
pub const SHAPES: [(usize, i64); 4] = [(3, 2), (2, 3), (4, 2), (3, 3)];

pub fn all_families() -> Vec<MConvexSet> {
    SHAPES.iter().flat_map(|&(n, r)| family(n, r)).collect()
}

/// Exchange axiom, written directly from its statement on a hash set of points.
pub fn exchange_oracle(points: &[Point]) -> bool {
    let set: BTreeSet<&Point> = points.iter().collect();
    let n = points.first().map_or(0, |p| p.len());
    for a in points {
        for b in points {
            for i in (0..n).filter(|&i| a[i] > b[i]) {
                let found = (0..n).filter(|&j| a[j] < b[j]).any(|j| {
                    let mut a2 = a.clone();
                    let mut b2 = b.clone();
                    a2[i] -= 1;
                    a2[j] += 1;
                    b2[j] -= 1;
                    b2[i] += 1;
                    set.contains(&a2) && set.contains(&b2)
                });
                if !found {
                    return false;
                }
            }
        }
    }
    true
}

/// Nonempty subsets of Δ^r_n by bitmask.
pub fn subsets(n: usize, r: i64) -> Vec<Vec<Point>> {
    let pts = simplex_points(n, r);
    (1u64..1 << pts.len())
        .map(|m| {
            (0..pts.len())
                .filter(|&k| m >> k & 1 == 1)
                .map(|k| pts[k].clone())
                .collect()
        })
        .collect()
}

/// Box ∩ simplex: {α ∈ Δ^r_n : lo ≤ α ≤ hi}, which is M-convex when nonempty.
pub fn box_set(n: usize, r: i64, lo: &[i64], hi: &[i64]) -> Option<MConvexSet> {
    let pts: Vec<Point> = simplex_points(n, r)
        .into_iter()
        .filter(|p| p.iter().zip(lo).all(|(x, l)| x >= l) && p.iter().zip(hi).all(|(x, h)| x <= h))
        .collect();
    if pts.is_empty() {
        None
    } else {
        Some(MConvexSet::with_rank(n, r, pts).expect("box ∩ simplex is M-convex"))
    }
}

/// Random M-convex sets: box ∩ simplex, possibly translated.
pub fn arb_set() -> impl Strategy<Value = MConvexSet> {
    (1usize..=4, 0i64..=4)
        .prop_flat_map(|(n, r)| {
            (
                Just(n),
                Just(r),
                proptest::collection::vec(0i64..=2, n),
                proptest::collection::vec(0i64..=4, n),
                proptest::collection::vec(0i64..=2, n),
            )
        })
        .prop_filter_map("empty box", |(n, r, lo, hi, shift)| {
            box_set(n, r, &lo, &hi).map(|j| j.translate(&shift).unwrap())
        })
}

pub fn arb_permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}
