//! Conjugation between covariant and contravariant weights on a structure.
//!
//! A covariant weight (a table `phi: X -> V`, the up-set side over `two`)
//! has a lower conjugate supported on TX rows, the "lower bounds":
//! `phi^-(w) = meet over x of hom(phi x, a(w, x))`. A contravariant weight
//! supported on TX rows has an upper conjugate back on points, the "upper
//! bounds": `psi^+(x) = meet over w of hom(psi w, a(w, x))`. The two maps
//! form a Galois connection and fix each other's images; infima of a weight
//! correspond to suprema of its lower conjugate.
//!
//! For identity-like theories both sides are plain `X -> V` tables and
//! interoperate with the presheaf and up-set carriers.

use crate::quantale::QValue;
use crate::tcat::TCategory;

/// Lower conjugate of a covariant weight: a table over TX rows.
pub fn conj_minus(x: &TCategory, phi: &[QValue]) -> Vec<QValue> {
    let q = x.quantale();
    let rows = x.theory.t_size(x.n);
    (0..rows)
        .map(|w| {
            let mut acc = q.top();
            for (p, &v) in phi.iter().enumerate() {
                acc = q.meet(acc, q.hom(v, x.a.at(w, p)));
            }
            acc
        })
        .collect()
}

/// Upper conjugate of a contravariant weight on TX rows: a table on points.
pub fn conj_plus(x: &TCategory, psi: &[QValue]) -> Vec<QValue> {
    let q = x.quantale();
    let rows = x.theory.t_size(x.n);
    (0..x.n)
        .map(|p| {
            let mut acc = q.top();
            for w in 0..rows {
                acc = q.meet(acc, q.hom(psi[w], x.a.at(w, p)));
            }
            acc
        })
        .collect()
}

/// Pointwise comparison of weight tables.
pub fn table_le(x: &TCategory, s: &[QValue], t: &[QValue]) -> bool {
    let q = x.quantale();
    s.iter().zip(t.iter()).all(|(&a, &b)| q.le(a, b))
}

/// One instance of the Galois biconditional:
/// `psi <= phi^-` iff `phi <= psi^+`, both pointwise.
pub fn galois_instance_holds(x: &TCategory, phi: &[QValue], psi: &[QValue]) -> bool {
    table_le(x, psi, &conj_minus(x, phi)) == table_le(x, phi, &conj_plus(x, psi))
}
