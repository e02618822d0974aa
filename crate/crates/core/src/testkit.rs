//! Shared fixtures for the unit tests: tiny structures with well-known
//! orders and distances.

use crate::quantale::{builtin_quantale, two, QValue};
use crate::tcat::TCategory;
use crate::theory::Theory;
use crate::vmat::VMatrix;

/// Chain 0 < 1 < ... < n-1 over `two` under the identity theory.
pub fn chain(n: usize) -> TCategory {
    let q = two();
    let th = Theory::identity(q.clone());
    let c = VMatrix::from_fn(q.clone(), n, n, |x, y| {
        if x <= y {
            q.unit()
        } else {
            q.bottom()
        }
    });
    let labels = (0..n).map(|i| i.to_string()).collect();
    TCategory::lift_from_vcat(th, labels, &c).unwrap()
}

/// n pairwise incomparable points over `two` under the identity theory.
pub fn antichain(n: usize) -> TCategory {
    let q = two();
    let th = Theory::identity(q.clone());
    let c = VMatrix::identity(q, n);
    let labels = (0..n).map(|i| i.to_string()).collect();
    TCategory::lift_from_vcat(th, labels, &c).unwrap()
}

/// A three-point ultrametric-style structure over pwedge_trunc(2): points
/// b and c at distance 1, both at distance 2 from a.
pub fn ultra3() -> TCategory {
    let q = builtin_quantale("pwedge_trunc(2)").unwrap();
    let th = Theory::identity(q.clone());
    let d = [[0u8, 2, 2], [2, 0, 1], [2, 1, 0]];
    let c = VMatrix::from_fn(q, 3, 3, |x, y| QValue(d[x][y]));
    let labels = vec!["a".into(), "b".into(), "c".into()];
    TCategory::lift_from_vcat(th, labels, &c).unwrap()
}

/// An arbitrary poset from its strict covering pairs, over `two`.
pub fn poset(n: usize, le_pairs: &[(usize, usize)]) -> TCategory {
    let q = two();
    let th = Theory::identity(q.clone());
    let mut le = vec![false; n * n];
    for i in 0..n {
        le[i * n + i] = true;
    }
    for &(x, y) in le_pairs {
        le[x * n + y] = true;
    }
    // Transitive closure.
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if le[i * n + k] && le[k * n + j] {
                    le[i * n + j] = true;
                }
            }
        }
    }
    let c = VMatrix::from_fn(q.clone(), n, n, |x, y| {
        if le[x * n + y] {
            q.unit()
        } else {
            q.bottom()
        }
    });
    let labels = (0..n).map(|i| i.to_string()).collect();
    TCategory::lift_from_vcat(th, labels, &c).unwrap()
}
