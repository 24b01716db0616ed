mod common;

use common::{subspace, vector};
use polarcone::{orthogonal_complement, Subspace, Vector};
use proptest::prelude::*;

fn subspace_and_point() -> impl Strategy<Value = (Subspace, Vector)> {
    subspace(7).prop_flat_map(|s| {
        let n = s.ambient_dim();
        (Just(s), vector(n))
    })
}

proptest! {
    #[test]
    fn projection_is_idempotent((s, u) in subspace_and_point()) {
        let p = s.project(&u).unwrap();
        let pp = s.project(&p).unwrap();
        prop_assert!(p.distance(&pp) <= 1e-12 * (1.0 + u.norm()));
    }

    #[test]
    fn pythagoras((s, u) in subspace_and_point()) {
        let p = s.project(&u).unwrap();
        let r = &u - &p;
        prop_assert!((u.norm_sq() - p.norm_sq() - r.norm_sq()).abs() <= 1e-12 * (1.0 + u.norm_sq()));
        prop_assert!(p.dot(&r).abs() <= 1e-12 * (1.0 + u.norm_sq()));
    }

    #[test]
    fn complement_is_an_involution(s in subspace(7)) {
        let c = orthogonal_complement(&s);
        prop_assert_eq!(s.rank() + c.rank(), s.ambient_dim());
        for a in s.basis() {
            for b in c.basis() {
                prop_assert!(a.dot(b).abs() <= 1e-12);
            }
        }
        prop_assert!(orthogonal_complement(&c).same_as(&s, 1e-9));
    }

    #[test]
    fn basis_is_orthonormal(s in subspace(7)) {
        for (i, a) in s.basis().iter().enumerate() {
            for (j, b) in s.basis().iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((a.dot(b) - want).abs() <= 1e-12);
            }
        }
    }
}
