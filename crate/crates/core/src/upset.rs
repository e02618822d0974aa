//! Covariant presheaves: the category V X of all tables `phi: X -> V`
//! closed under the structure's left action, carrying the reversed
//! pointwise order `d(phi, phi') = meet over x of hom(phi'(x), phi(x))`.
//!
//! Over `two` and a poset these are the up-sets under reverse inclusion.
//! The dual embedding sends x to its principal up-set `a0(x, -)`; limits are
//! weighted by these tables. Identity-like theories only, mirroring the
//! presheaf side.

use crate::error::{Error, Result};
use crate::presheaf::{closed_tables, render_table};
use crate::quantale::QValue;
use crate::tcat::{Side, TCategory};
use crate::vmat::VMatrix;
use std::collections::HashMap;

#[derive(Debug, Clone)]
pub struct UpsetCat {
    /// The category V X (identity theory over the same quantale).
    pub cat: TCategory,
    /// Element tables, aligned with `cat`'s carrier indices.
    pub elements: Vec<Vec<QValue>>,
    /// The dual embedding `x |-> a0(x, -)` as a carrier map into `cat`.
    pub coyoneda: Vec<usize>,
    index: HashMap<Vec<QValue>, usize>,
}

impl UpsetCat {
    pub fn index_of(&self, table: &[QValue]) -> Option<usize> {
        self.index.get(table).copied()
    }
}

/// Builds V X for an identity-like theory.
pub fn build_upsets(x: &TCategory) -> Result<UpsetCat> {
    if !x.theory.is_identity_like() {
        return Err(Error::TheoryNotSupported(
            "up-set carriers are enumerated for identity-like theories only".into(),
        ));
    }
    let q = x.quantale().clone();
    let elements = closed_tables(x, |t| {
        (0..x.n).all(|p| (0..x.n).all(|y| q.le(q.tensor(t[y], x.a.at(y, p)), t[p])))
    })?;
    let m = elements.len();
    let structure = VMatrix::from_fn(q.clone(), m, m, |i, j| {
        let mut acc = q.top();
        for p in 0..x.n {
            acc = q.meet(acc, q.hom(elements[j][p], elements[i][p]));
        }
        acc
    });
    let labels: Vec<String> = elements.iter().map(|t| render_table(x, t)).collect();
    let cat = TCategory::new(x.theory.clone(), labels, structure)?;
    let index: HashMap<Vec<QValue>, usize> =
        elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let coyoneda: Vec<usize> = (0..x.n)
        .map(|p| {
            let row: Vec<QValue> = (0..x.n).map(|z| x.a.at(p, z)).collect();
            *index
                .get(&row)
                .expect("principal tables are closed under the action")
        })
        .collect();
    Ok(UpsetCat { cat, elements, coyoneda, index })
}

/// The weighted limit of `h: Z -> X` by a weight on Z: the point `x0` with
/// `a(w, x0) = meet over z of hom(weight z, a(w, h z))` for every row w.
/// Rows range over TX, so the equation also makes sense under word theories.
pub fn limit(x: &TCategory, h: &[usize], weight: &[QValue]) -> Option<usize> {
    let q = x.quantale();
    let rows = x.theory.t_size(x.n);
    (0..x.n).find(|&x0| {
        (0..rows).all(|w| {
            let mut rhs = q.top();
            for (z, &hz) in h.iter().enumerate() {
                rhs = q.meet(rhs, q.hom(weight[z], x.a.at(w, hz)));
            }
            x.a.at(w, x0) == rhs
        })
    })
}

/// Infimum of a table: the limit of the identity weighted by it.
pub fn weighted_inf(x: &TCategory, phi: &[QValue]) -> Option<usize> {
    let h: Vec<usize> = (0..x.n).collect();
    limit(x, &h, phi)
}

/// The inf assignment V X -> X when every up-set has one.
pub fn inf_assignment(vx: &UpsetCat, x: &TCategory) -> Option<Vec<usize>> {
    vx.elements.iter().map(|phi| weighted_inf(x, phi)).collect()
}

/// Total completeness: every up-set has an infimum.
pub fn is_totally_complete(x: &TCategory) -> Result<bool> {
    let vx = build_upsets(x)?;
    Ok(inf_assignment(&vx, x).is_some())
}

/// The inf map as a right adjoint of the dual embedding, found by search.
/// Agrees with `inf_assignment` whenever either exists.
pub fn completeness(x: &TCategory, vx: &UpsetCat) -> Result<Option<Vec<usize>>> {
    x.find_adjoint(&vx.cat, &vx.coyoneda, Side::Right)
}

/// Whether `f: X -> Y` satisfies the openness inequality
/// `a . Tf° . Barr(b0) >= f° . b` cellwise. `None` means it does; a failing
/// cell is rendered as a witness. The reverse inequality holds for every
/// functor, so openness is really an equality condition.
pub fn is_downwards_open(
    f: &[usize],
    x: &TCategory,
    y: &TCategory,
) -> Result<Option<String>> {
    if x.theory != y.theory {
        return Err(Error::TheoryMismatch);
    }
    if f.len() != x.n {
        return Err(Error::ShapeMismatch(format!(
            "map table has {} entries for a {}-point carrier",
            f.len(),
            x.n
        )));
    }
    let q = x.quantale();
    let ty_rows = y.theory.t_size(y.n);
    let tx_rows = x.theory.t_size(x.n);
    let b0_barr = y.theory.barr_extend(&y.a0());
    for w in 0..ty_rows {
        for p in 0..x.n {
            let rhs = y.a.at(w, f[p]);
            let mut lhs = q.bottom();
            for v in 0..tx_rows {
                let fv = x.theory.t_apply(x.n, y.n, f, v);
                lhs = q.join(lhs, q.tensor(b0_barr.at(w, fv), x.a.at(v, p)));
            }
            if !q.le(rhs, lhs) {
                return Ok(Some(format!(
                    "row {w}, point {}: image value exceeds the reachable join",
                    x.labels[p]
                )));
            }
        }
    }
    Ok(None)
}

/// The direct image `V f: V X -> V Y` of `f: X -> Y`, as a carrier map:
/// `(V f phi)(y) = join over x of phi(x) (x) b(f x, y)`.
pub fn v_map(
    f: &[usize],
    x: &TCategory,
    y: &TCategory,
    vx: &UpsetCat,
    vy: &UpsetCat,
) -> Result<Vec<usize>> {
    let q = x.quantale();
    vx.elements
        .iter()
        .map(|phi| {
            let image: Vec<QValue> = (0..y.n)
                .map(|p| {
                    let mut acc = q.bottom();
                    for (xi, &fx) in f.iter().enumerate() {
                        acc = q.join(acc, q.tensor(phi[xi], y.a.at(fx, p)));
                    }
                    acc
                })
                .collect();
            vy.index_of(&image).ok_or_else(|| {
                Error::PreconditionFailed("direct image left the up-set carrier".into())
            })
        })
        .collect()
}

/// The multiplication V V X -> V X:
/// `(mu Phi)(x) = join over phi of Phi(phi) (x) phi(x)`.
pub fn upset_mult(vx: &UpsetCat, vvx: &UpsetCat) -> Result<Vec<usize>> {
    let q = vx.cat.quantale();
    vvx.elements
        .iter()
        .map(|big| {
            let flat: Vec<QValue> = (0..vx.elements[0].len())
                .map(|p| {
                    let mut acc = q.bottom();
                    for (j, phi) in vx.elements.iter().enumerate() {
                        acc = q.join(acc, q.tensor(big[j], phi[p]));
                    }
                    acc
                })
                .collect();
            vx.index_of(&flat).ok_or_else(|| {
                Error::PreconditionFailed("multiplication left the up-set carrier".into())
            })
        })
        .collect()
}

/// Whether `f: X -> Y` preserves all infima: `f . Inf_X` and `Inf_Y . V f`
/// agree up to isomorphism on every up-set. Both sides must be totally
/// complete.
pub fn is_continuous(f: &[usize], x: &TCategory, y: &TCategory) -> Result<bool> {
    let vx = build_upsets(x)?;
    let vy = build_upsets(y)?;
    let inf_x = inf_assignment(&vx, x)
        .ok_or_else(|| Error::PreconditionFailed("domain is not totally complete".into()))?;
    let inf_y = inf_assignment(&vy, y)
        .ok_or_else(|| Error::PreconditionFailed("codomain is not totally complete".into()))?;
    let vf = v_map(f, x, y, &vx, &vy)?;
    Ok((0..vx.elements.len()).all(|i| {
        let via_x = f[inf_x[i]];
        let via_v = inf_y[vf[i]];
        y.point_le(via_x, via_v) && y.point_le(via_v, via_x)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::two;
    use crate::testkit::{antichain, chain, ultra3};
    use crate::theory::{MonadKind, Theory};

    #[test]
    fn upsets_of_chain_form_reversed_chain() {
        let x = chain(2);
        let vx = build_upsets(&x).unwrap();
        assert_eq!(vx.elements.len(), 3);
        assert!(vx.cat.check_laws().ok());
        assert!(vx.cat.is_separated());
        // Reverse inclusion: the whole carrier is bottom, the empty table
        // is top. Enumeration is lexicographic, so {} is index 0.
        let whole = vx.index_of(&vec![x.quantale().unit(); 2]).unwrap();
        let empty = vx.index_of(&vec![x.quantale().bottom(); 2]).unwrap();
        assert!((0..3).all(|j| vx.cat.point_le(whole, j)));
        assert!((0..3).all(|j| vx.cat.point_le(j, empty)));
    }

    #[test]
    fn dual_embedding_satisfies_the_evaluation_identity() {
        for x in [chain(3), antichain(2), ultra3()] {
            let vx = build_upsets(&x).unwrap();
            for (j, phi) in vx.elements.iter().enumerate() {
                for p in 0..x.n {
                    assert_eq!(vx.cat.a.at(j, vx.coyoneda[p]), phi[p]);
                }
            }
            // Fully faithful.
            for p in 0..x.n {
                for r in 0..x.n {
                    assert_eq!(vx.cat.a.at(vx.coyoneda[p], vx.coyoneda[r]), x.a.at(p, r));
                }
            }
            assert!(x.check_functor(&vx.cat, &vx.coyoneda).unwrap().is_none());
        }
    }

    #[test]
    fn multiplication_chain_of_adjunctions() {
        for x in [chain(2), antichain(2)] {
            let vx = build_upsets(&x).unwrap();
            let vvx = build_upsets(&vx.cat).unwrap();
            let mult = upset_mult(&vx, &vvx).unwrap();
            let y_vx = &vvx.coyoneda;
            let v_of_y = v_map(&vx.coyoneda, &x, &vx.cat, &vx, &vvx).unwrap();
            // y_{V X} -| mult -| V y.
            assert!(vx.cat.is_adjoint_pair(&vvx.cat, y_vx, &mult));
            assert!(vvx.cat.is_adjoint_pair(&vx.cat, &mult, &v_of_y));
            // Both composites with mult are the identity on the nose.
            for i in 0..vx.elements.len() {
                assert_eq!(mult[y_vx[i]], i);
                assert_eq!(mult[v_of_y[i]], i);
            }
        }
    }

    #[test]
    fn completeness_verdicts_and_adjoint_criterion() {
        for (x, expect) in [
            (chain(1), true),
            (chain(3), true),
            (antichain(2), false),
            (ultra3(), false),
        ] {
            assert_eq!(is_totally_complete(&x).unwrap(), expect, "{:?}", x.labels);
            let vx = build_upsets(&x).unwrap();
            let right = x.find_adjoint(&vx.cat, &vx.coyoneda, Side::Right).unwrap();
            assert_eq!(right.is_some(), expect);
            if let (Some(g), Some(infs)) = (right, inf_assignment(&vx, &x)) {
                assert_eq!(g, infs);
            }
        }
    }

    #[test]
    fn infima_of_principal_weights_are_the_points() {
        for x in [chain(3), ultra3()] {
            for p in 0..x.n {
                let weight: Vec<QValue> = (0..x.n).map(|z| x.a.at(p, z)).collect();
                assert_eq!(weighted_inf(&x, &weight), Some(p));
            }
        }
    }

    #[test]
    fn continuity_discriminates() {
        // A right adjoint is continuous.
        let x = chain(2);
        let y = chain(3);
        let g = [0usize, 0, 1];
        assert!(is_continuous(&g, &y, &x).unwrap());
        // The bottom inclusion moves the empty inf.
        let one = chain(1);
        assert!(!is_continuous(&[0], &one, &x).unwrap());
    }

    #[test]
    fn adjoint_search_and_pointwise_infs_agree() {
        for x in [chain(1), chain(3), antichain(2), ultra3()] {
            let vx = build_upsets(&x).unwrap();
            let by_adjoint = completeness(&x, &vx).unwrap();
            let by_formula = inf_assignment(&vx, &x);
            assert_eq!(by_adjoint.is_some(), by_formula.is_some());
            if let (Some(f), Some(g)) = (by_adjoint, by_formula) {
                for i in 0..f.len() {
                    assert!(x.point_le(f[i], g[i]) && x.point_le(g[i], f[i]));
                }
            }
        }
    }

    /// All monotone maps between two carriers, by exhaustive filtering.
    fn all_functors(x: &TCategory, y: &TCategory) -> Vec<Vec<usize>> {
        let count = y.n.pow(x.n as u32);
        (0..count)
            .filter_map(|idx| {
                let mut f = vec![0usize; x.n];
                let mut rest = idx;
                for slot in 0..x.n {
                    f[slot] = rest % y.n;
                    rest /= y.n;
                }
                match x.check_functor(y, &f) {
                    Ok(None) => Some(f),
                    _ => None,
                }
            })
            .collect()
    }

    #[test]
    fn openness_matches_left_adjoints_of_the_direct_image() {
        // In the pure V-case every functor is downwards open (the identity
        // term of the join already reaches the image value), and
        // correspondingly the direct image always has a left adjoint.
        let fixtures =
            [(chain(2), chain(2)), (chain(3), chain(2)), (chain(2), antichain(2))];
        let q = two();
        for (x, y) in &fixtures {
            let vx = build_upsets(x).unwrap();
            let vy = build_upsets(y).unwrap();
            for f in all_functors(x, y) {
                assert!(is_downwards_open(&f, x, y).unwrap().is_none());
                let vf = v_map(&f, x, y, &vx, &vy).unwrap();
                assert!(vx.cat.find_adjoint(&vy.cat, &vf, Side::Left).unwrap().is_some());
                // The reverse inequality holds for every functor.
                let barr = y.theory.barr_extend(&y.a0());
                for w in 0..y.n {
                    for p in 0..x.n {
                        let mut lhs = q.bottom();
                        for v in 0..x.n {
                            lhs = q.join(lhs, q.tensor(barr.at(w, f[v]), x.a.at(v, p)));
                        }
                        assert!(q.le(lhs, y.a.at(w, f[p])));
                    }
                }
            }
        }
        // The dual embedding is always downwards open.
        for x in [chain(3), antichain(2), ultra3()] {
            let vx = build_upsets(&x).unwrap();
            assert!(is_downwards_open(&vx.coyoneda, &x, &vx.cat).unwrap().is_none());
        }
        // A broken domain structure produces a concrete witness: without
        // reflexivity the join cannot reach the image value.
        let bare = TCategory::new(
            Theory::identity(q.clone()),
            vec!["p".into(), "q".into()],
            VMatrix::constant(q.clone(), 2, 2, q.bottom()),
        )
        .unwrap();
        let witness = is_downwards_open(&[0, 1], &bare, &chain(2)).unwrap();
        assert!(witness.is_some());
    }

    #[test]
    fn unit_openness_detects_core_compactness_under_words() {
        // The unit into the lifted carrier is downwards open exactly for
        // core-compact bases.
        let th = Theory::new(MonadKind::Word { bound: 2 }, two()).unwrap();
        let q = two();
        let free = TCategory::free_point(th.clone());
        let lifted = free.lift_carrier().unwrap();
        let e: Vec<usize> = (0..free.n).map(|p| free.theory.e_index(free.n, p)).collect();
        assert!(free.is_core_compact().unwrap().is_some());
        assert!(is_downwards_open(&e, &free, &lifted).unwrap().is_some());

        let codisc = TCategory::new(
            th.clone(),
            vec!["*".into()],
            VMatrix::constant(q.clone(), th.t_size(1), 1, q.unit()),
        )
        .unwrap();
        assert!(codisc.check_laws().ok());
        assert!(codisc.is_core_compact().unwrap().is_none());
        let lifted = codisc.lift_carrier().unwrap();
        let e: Vec<usize> =
            (0..codisc.n).map(|p| codisc.theory.e_index(codisc.n, p)).collect();
        assert!(is_downwards_open(&e, &codisc, &lifted).unwrap().is_none());
    }
}
