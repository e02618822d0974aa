//! Deterministic corpora for sweeps: every labeled poset at desk scale,
//! the posets with few down-sets (which enumerate the small distributive
//! lattices), and seeded random quantales and categories.

use crate::lattice::order_isomorphic;
use crate::quantale::{build_quantale, two, QValue, Quantale};
use crate::tcat::TCategory;
use crate::theory::Theory;
use crate::vmat::VMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn poset_mask_ok(n: usize, mask: u64) -> bool {
    let at = |x: usize, y: usize| mask >> (x * n + y) & 1 == 1;
    (0..n).all(|x| at(x, x))
        && (0..n).all(|x| (0..n).all(|y| x == y || !(at(x, y) && at(y, x))))
        && (0..n).all(|x| {
            (0..n).all(|y| (0..n).all(|z| !(at(x, y) && at(y, z)) || at(x, z)))
        })
}

fn poset_from_le(n: usize, le: impl Fn(usize, usize) -> bool) -> TCategory {
    let q = two();
    let a = VMatrix::from_fn(q.clone(), n, n, |x, y| {
        if le(x, y) {
            q.unit()
        } else {
            q.bottom()
        }
    });
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    TCategory::new(Theory::identity(q), labels, a).unwrap()
}

/// Every labeled poset on `n` points over the two-element quantale,
/// enumerated by ascending order-table mask. Kept to five points at most.
pub fn labeled_posets(n: usize) -> Vec<TCategory> {
    assert!(n <= 5, "labeled sweep is meant for up to five points");
    (0..1u64 << (n * n))
        .filter(|&mask| poset_mask_ok(n, mask))
        .map(|mask| poset_from_le(n, |x, y| mask >> (x * n + y) & 1 == 1))
        .collect()
}

fn downset_count(n: usize, le: &[bool]) -> usize {
    (0..1u32 << n)
        .filter(|&s| {
            (0..n).all(|x| {
                (0..n).all(|y| !(le[x * n + y] && s >> y & 1 == 1) || s >> x & 1 == 1)
            })
        })
        .count()
}

/// All posets, up to isomorphism, with at most `max_downsets` down-sets.
/// By the finite duality their down-set lattices are exactly the
/// distributive lattices with at most that many elements. Posets are
/// grown by repeatedly adding a maximal element above a chosen down-set.
pub fn posets_with_few_downsets(max_downsets: usize) -> Vec<TCategory> {
    assert!(max_downsets <= 64, "down-set budget is meant to stay small");
    let mut out: Vec<TCategory> = Vec::new();
    let mut frontier: Vec<(usize, Vec<bool>)> = vec![(0, Vec::new())];
    while let Some((n, le)) = frontier.pop() {
        let cat = poset_from_le(n, |x, y| le[x * n + y]);
        if out.iter().any(|p| order_isomorphic(p, &cat)) {
            continue;
        }
        out.push(cat);
        let m = n + 1;
        for s in 0..1u32 << n {
            let closed = (0..n).all(|x| {
                (0..n).all(|y| !(le[x * n + y] && s >> y & 1 == 1) || s >> x & 1 == 1)
            });
            if !closed {
                continue;
            }
            let mut bigger = vec![false; m * m];
            for x in 0..n {
                for y in 0..n {
                    bigger[x * m + y] = le[x * n + y];
                }
            }
            bigger[n * m + n] = true;
            for x in 0..n {
                bigger[x * m + n] = s >> x & 1 == 1;
            }
            if downset_count(m, &bigger) <= max_downsets {
                frontier.push((m, bigger));
            }
        }
    }
    out.sort_by_key(|p| p.n);
    out
}

/// A seeded random quantale of size at most six: either an ordinal-sum
/// chain (blocks of truncated addition or of minimum below a shared top
/// unit) or the down-sets of a random small poset under intersection.
pub fn random_quantale(rng: &mut ChaCha8Rng) -> Arc<Quantale> {
    if rng.gen_bool(0.5) {
        // Ordinal-sum chain with the top as unit.
        let m = rng.gen_range(2..=6usize);
        let mut blocks: Vec<(usize, usize, bool)> = Vec::new();
        let mut lo = 0usize;
        while lo + 1 < m {
            let hi = rng.gen_range(lo..m - 1);
            blocks.push((lo, hi, rng.gen_bool(0.5)));
            lo = hi + 1;
        }
        let block_of = |x: usize| blocks.iter().copied().find(|&(l, h, _)| l <= x && x <= h);
        let tensor = |x: usize, y: usize| {
            if x == m - 1 {
                y
            } else if y == m - 1 {
                x
            } else {
                match (block_of(x), block_of(y)) {
                    (Some((l, h, true)), Some((l2, _, _))) if l == l2 => {
                        l.max((x + y).saturating_sub(h))
                    }
                    _ => x.min(y),
                }
            }
        };
        let labels = (0..m).map(|i| i.to_string()).collect();
        let le = (0..m).flat_map(|x| (0..m).map(move |y| x <= y)).collect();
        let tens = (0..m).flat_map(|x| (0..m).map(move |y| tensor(x, y) as u8)).collect();
        build_quantale("rand-chain", labels, le, tens, QValue((m - 1) as u8)).unwrap()
    } else {
        // Down-sets of a poset on up to three points, tensored by
        // intersection; retry until the carrier fits in six.
        loop {
            let n = rng.gen_range(1..=3usize);
            let posets = labeled_posets(n);
            let p = &posets[rng.gen_range(0..posets.len())];
            let sets: Vec<u32> = (0..1u32 << n)
                .filter(|&s| {
                    (0..n).all(|x| {
                        (0..n).all(|y| {
                            !(p.point_le(x, y) && s >> y & 1 == 1) || s >> x & 1 == 1
                        })
                    })
                })
                .collect();
            let m = sets.len();
            if m > 6 {
                continue;
            }
            let labels = sets.iter().map(|s| format!("d{s}")).collect();
            let le = sets
                .iter()
                .flat_map(|&a| sets.iter().map(move |&b| a & !b == 0))
                .collect();
            let mut tens = Vec::with_capacity(m * m);
            for &a in &sets {
                for &b in &sets {
                    tens.push(sets.iter().position(|&c| c == a & b).unwrap() as u8);
                }
            }
            let unit = QValue((m - 1) as u8);
            return build_quantale("rand-frame", labels, le, tens, unit).unwrap();
        }
    }
}

/// A seeded random lawful category on `n` points: a random table made
/// reflexive, then closed under composition until it stabilizes.
pub fn random_category(q: &Arc<Quantale>, n: usize, rng: &mut ChaCha8Rng) -> TCategory {
    let mut a = VMatrix::from_fn(q.clone(), n, n, |_, _| {
        QValue(rng.gen_range(0..q.size()) as u8)
    });
    for x in 0..n {
        a.set(x, x, q.join(a.at(x, x), q.unit()));
    }
    loop {
        let sq = VMatrix::compose(&a, &a).unwrap();
        let grown =
            VMatrix::from_fn(q.clone(), n, n, |x, y| q.join(a.at(x, y), sq.at(x, y)));
        if grown == a {
            break;
        }
        a = grown;
    }
    let labels = (0..n).map(|i| format!("x{i}")).collect();
    TCategory::new(Theory::identity(q.clone()), labels, a).unwrap()
}
