//! Strategies shared by the property suites.

#![allow(dead_code)]

use polarcone::{PolyhedralCone, Subspace, Vector};
use proptest::prelude::*;

pub fn vector(n: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(-2.0..2.0f64, n)
        .prop_map(Vector::new)
        .prop_map(Result::unwrap)
}

pub fn vectors(n: usize, max: usize) -> impl Strategy<Value = Vec<Vector>> {
    prop::collection::vec(vector(n), 0..=max)
}

/// A cone in dimension `1..=max_dim`, given by up to ten rays and a few
/// lineality directions, together with its raw generators.
pub fn cone(max_dim: usize) -> impl Strategy<Value = (PolyhedralCone, Vec<Vector>, Vec<Vector>)> {
    (1..=max_dim)
        .prop_flat_map(|n| {
            (
                vectors(n, 10),
                vectors(n, n.saturating_sub(1).min(2)),
                Just(n),
            )
        })
        .prop_map(|(rays, lin, n)| {
            let c = PolyhedralCone::from_generators(n, &rays, &lin).unwrap();
            (c, rays, lin)
        })
}

pub fn cone_and_point(max_dim: usize) -> impl Strategy<Value = (PolyhedralCone, Vector)> {
    cone(max_dim).prop_flat_map(|(c, _, _)| {
        let n = c.ambient_dim();
        (Just(c), vector(n).prop_map(|u| u.scaled(2.0)))
    })
}

pub fn subspace(max_dim: usize) -> impl Strategy<Value = Subspace> {
    (1..=max_dim)
        .prop_flat_map(|n| (Just(n), vectors(n, n)))
        .prop_map(|(n, vs)| Subspace::span(n, &vs).unwrap())
}
