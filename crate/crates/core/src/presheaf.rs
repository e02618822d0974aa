//! Contravariant presheaves: the category P X of all tables `psi: X -> V`
//! closed under the structure's right action, ordered by the pointwise
//! lifting `[psi, psi'] = meet over x of hom(psi x, psi' x)`.
//!
//! Presheaves are only built for identity-like theories, where they coincide
//! with distributors into the one-point carrier; word theories are refused.
//! Carriers are enumerated exhaustively (all |V|^|X| candidate tables), so a
//! budget guards against runaway sizes.

use crate::error::{Error, Result};
use crate::quantale::QValue;
use crate::tcat::{Side, TCategory};
use crate::vmat::VMatrix;
use std::collections::HashMap;

/// Upper bound on |V|^|X| when enumerating presheaf carriers.
pub const PRESHEAF_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone)]
pub struct PresheafCat {
    /// The presheaf category itself (identity theory over the same quantale).
    pub cat: TCategory,
    /// Element tables, aligned with `cat`'s carrier indices.
    pub elements: Vec<Vec<QValue>>,
    /// The embedding `x |-> a(-, x)` as a carrier map into `cat`.
    pub yoneda: Vec<usize>,
    index: HashMap<Vec<QValue>, usize>,
}

impl PresheafCat {
    /// Carrier index of a presheaf table, if it is closed under the action.
    pub fn index_of(&self, table: &[QValue]) -> Option<usize> {
        self.index.get(table).copied()
    }
}

pub(crate) fn render_table(x: &TCategory, table: &[QValue]) -> String {
    let q = x.quantale();
    if q.size() == 2 {
        // Over the two-element chain a table is a subset.
        let members: Vec<&str> = table
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == q.unit())
            .map(|(i, _)| x.labels[i].as_str())
            .collect();
        format!("{{{}}}", members.join(","))
    } else {
        let parts: Vec<&str> = table.iter().map(|&v| q.label(v)).collect();
        format!("[{}]", parts.join(","))
    }
}

/// Enumerates every table closed under the right action, in lexicographic
/// order of value indices.
pub(crate) fn closed_tables(
    x: &TCategory,
    check: impl Fn(&[QValue]) -> bool,
) -> Result<Vec<Vec<QValue>>> {
    let q = x.quantale();
    let nv = q.size() as u64;
    let mut budget = 1u64;
    for _ in 0..x.n {
        budget = budget.saturating_mul(nv);
        if budget > PRESHEAF_BUDGET {
            return Err(Error::SearchSpaceTooLarge(format!(
                "{}^{} candidate tables",
                q.size(),
                x.n
            )));
        }
    }
    let mut out = Vec::new();
    let mut digits = vec![0u8; x.n];
    loop {
        let table: Vec<QValue> = digits.iter().map(|&d| QValue(d)).collect();
        if check(&table) {
            out.push(table);
        }
        let mut j = x.n;
        loop {
            if j == 0 {
                return Ok(out);
            }
            j -= 1;
            digits[j] += 1;
            if (digits[j] as usize) < q.size() {
                break;
            }
            digits[j] = 0;
        }
    }
}

/// Builds P X for an identity-like theory.
pub fn build_presheaves(x: &TCategory) -> Result<PresheafCat> {
    if !x.theory.is_identity_like() {
        return Err(Error::TheoryNotSupported(
            "presheaf carriers are enumerated for identity-like theories only".into(),
        ));
    }
    let q = x.quantale().clone();
    let elements = closed_tables(x, |t| {
        (0..x.n).all(|p| (0..x.n).all(|y| q.le(q.tensor(x.a.at(p, y), t[y]), t[p])))
    })?;
    let m = elements.len();
    let structure = VMatrix::from_fn(q.clone(), m, m, |i, j| {
        let mut acc = q.top();
        for p in 0..x.n {
            acc = q.meet(acc, q.hom(elements[i][p], elements[j][p]));
        }
        acc
    });
    let labels: Vec<String> = elements.iter().map(|t| render_table(x, t)).collect();
    let cat = TCategory::new(x.theory.clone(), labels, structure)?;
    let index: HashMap<Vec<QValue>, usize> =
        elements.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let yoneda: Vec<usize> = (0..x.n)
        .map(|p| {
            let col: Vec<QValue> = (0..x.n).map(|z| x.a.at(z, p)).collect();
            *index
                .get(&col)
                .expect("representable tables are closed under the action")
        })
        .collect();
    Ok(PresheafCat { cat, elements, yoneda, index })
}

/// The weighted colimit of `d: Z -> X` by a weight on Z: the point `x0`
/// with `a(x0, y) = meet over z of hom(w z, a(d z, y))` for every y.
/// Identity-like theories only (the defining rows are V-level).
pub fn colimit(x: &TCategory, d: &[usize], weight: &[QValue]) -> Option<usize> {
    let q = x.quantale();
    (0..x.n).find(|&x0| {
        (0..x.n).all(|y| {
            let mut rhs = q.top();
            for (z, &dz) in d.iter().enumerate() {
                rhs = q.meet(rhs, q.hom(weight[z], x.a.at(dz, y)));
            }
            x.a.at(x0, y) == rhs
        })
    })
}

/// Supremum of a presheaf: the colimit of the identity weighted by it.
pub fn weighted_sup(x: &TCategory, psi: &[QValue]) -> Option<usize> {
    let d: Vec<usize> = (0..x.n).collect();
    colimit(x, &d, psi)
}

/// The sup assignment P X -> X when every presheaf has one.
pub fn sup_assignment(px: &PresheafCat, x: &TCategory) -> Option<Vec<usize>> {
    px.elements.iter().map(|psi| weighted_sup(x, psi)).collect()
}

/// Total cocompleteness: every presheaf has a supremum.
pub fn is_totally_cocomplete(x: &TCategory) -> Result<bool> {
    let px = build_presheaves(x)?;
    Ok(sup_assignment(&px, x).is_some())
}

/// The sup map as a left adjoint of the embedding, found by search. Agrees
/// with `sup_assignment` whenever either exists.
pub fn total_cocompleteness(x: &TCategory, px: &PresheafCat) -> Result<Option<Vec<usize>>> {
    x.find_adjoint(&px.cat, &px.yoneda, Side::Left)
}

/// Transpose of a distributor `X -/-> Y` into the map `Y -> P X` collecting
/// its columns. The table must satisfy both distributor laws.
pub fn mate(
    x: &TCategory,
    y: &TCategory,
    px: &PresheafCat,
    phi: &VMatrix,
) -> Result<Vec<usize>> {
    if let Some(witness) = x.check_distributor(y, phi)? {
        return Err(Error::NotADistributor(witness));
    }
    (0..y.n)
        .map(|p| {
            let col: Vec<QValue> = (0..x.n).map(|z| phi.at(z, p)).collect();
            px.index_of(&col).ok_or_else(|| {
                Error::NotADistributor(format!("column {p} is not closed under the action"))
            })
        })
        .collect()
}

/// Inverse of `mate`: reassemble the distributor from a carrier map into P X.
pub fn unmate(px: &PresheafCat, g: &[usize]) -> VMatrix {
    let q = px.cat.quantale().clone();
    let n = px.elements.first().map_or(0, |t| t.len());
    VMatrix::from_fn(q, n, g.len(), |z, p| px.elements[g[p]][z])
}

/// The weighted colimit of `d: Z -> X` by a two-sided weight `Z -/-> A`:
/// the least map `g: A -> X` whose image distributor is the extension of
/// the image of `d` along the weight, or none.
pub fn colim(
    dcat: &TCategory,
    x: &TCategory,
    d: &[usize],
    weight: &VMatrix,
) -> Result<Option<Vec<usize>>> {
    if !x.theory.is_identity_like() {
        return Err(Error::TheoryNotSupported(
            "weighted colimits are computed for identity-like theories only".into(),
        ));
    }
    let d_im = dcat.image_dist(x, d);
    let want = VMatrix::extend(&d_im, weight)?;
    let n_a = weight.dst();
    let count = (x.n as u64)
        .checked_pow(n_a as u32)
        .filter(|&c| c <= crate::tcat::TABLE_BUDGET as u64);
    let Some(count) = count else {
        return Err(Error::SearchSpaceTooLarge(format!(
            "{} candidate maps from the weight's codomain",
            n_a
        )));
    };
    'next: for idx in 0..count {
        let mut g = vec![0usize; n_a];
        let mut rest = idx;
        for slot in (0..n_a).rev() {
            g[slot] = (rest % x.n as u64) as usize;
            rest /= x.n as u64;
        }
        for (ap, &ga) in g.iter().enumerate() {
            for x1 in 0..x.n {
                if x.a.at(ga, x1) != want.at(ap, x1) {
                    continue 'next;
                }
            }
        }
        return Ok(Some(g));
    }
    Ok(None)
}

/// Cocompleteness without the adjoint packaging: every presheaf admits a
/// representing supremum element.
pub fn is_cocomplete(x: &TCategory) -> Result<bool> {
    let px = build_presheaves(x)?;
    Ok(px.elements.iter().all(|psi| weighted_sup(x, psi).is_some()))
}

/// The direct image `P f: P X -> P Y` of `f: X -> Y`, as a carrier map:
/// `(P f psi)(y) = join over x of b(y, f x) (x) psi(x)`.
pub fn p_map(
    f: &[usize],
    x: &TCategory,
    y: &TCategory,
    px: &PresheafCat,
    py: &PresheafCat,
) -> Result<Vec<usize>> {
    let q = x.quantale();
    px.elements
        .iter()
        .map(|psi| {
            let image: Vec<QValue> = (0..y.n)
                .map(|p| {
                    let mut acc = q.bottom();
                    for (xi, &fx) in f.iter().enumerate() {
                        acc = q.join(acc, q.tensor(y.a.at(p, fx), psi[xi]));
                    }
                    acc
                })
                .collect();
            py.index_of(&image).ok_or_else(|| {
                Error::PreconditionFailed("direct image left the presheaf carrier".into())
            })
        })
        .collect()
}

/// The multiplication P P X -> P X: compose with the image of the embedding,
/// `(mu Psi)(x) = join over psi of Psi(psi) (x) psi(x)`.
pub fn yoneda_mult(px: &PresheafCat, ppx: &PresheafCat) -> Result<Vec<usize>> {
    let q = px.cat.quantale();
    ppx.elements
        .iter()
        .map(|big| {
            let flat: Vec<QValue> = (0..px.elements[0].len())
                .map(|p| {
                    let mut acc = q.bottom();
                    for (j, psi) in px.elements.iter().enumerate() {
                        acc = q.join(acc, q.tensor(big[j], psi[p]));
                    }
                    acc
                })
                .collect();
            px.index_of(&flat).ok_or_else(|| {
                Error::PreconditionFailed("multiplication left the presheaf carrier".into())
            })
        })
        .collect()
}

/// Whether `f: X -> Y` preserves all suprema: `f . Sup_X` and `Sup_Y . P f`
/// agree up to isomorphism on every presheaf. Both sides must be totally
/// cocomplete.
pub fn is_cocontinuous(f: &[usize], x: &TCategory, y: &TCategory) -> Result<bool> {
    let px = build_presheaves(x)?;
    let py = build_presheaves(y)?;
    let sup_x = sup_assignment(&px, x)
        .ok_or_else(|| Error::PreconditionFailed("domain is not totally cocomplete".into()))?;
    let sup_y = sup_assignment(&py, y)
        .ok_or_else(|| Error::PreconditionFailed("codomain is not totally cocomplete".into()))?;
    let pf = p_map(f, x, y, &px, &py)?;
    Ok((0..px.elements.len()).all(|i| {
        let via_x = f[sup_x[i]];
        let via_p = sup_y[pf[i]];
        y.point_le(via_x, via_p) && y.point_le(via_p, via_x)
    }))
}
