//! Command implementations. Each returns a `Report`; mathematical
//! failures become failed records (exit code 1), while unusable inputs or
//! blown budgets surface as `CliError` (exit code 2).

use std::sync::Arc;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use tvcat_core::{
    build_presheaves, build_upsets, conj_minus, conj_plus, dual, galois_instance_holds,
    is_cocomplete, is_esakia, is_totally_cocomplete, is_totally_complete, labeled_posets, lift_t,
    representability, split_idempotent, total_completeness, weighted_inf, weighted_sup,
    downset_lattice, join_irreducibles, order_isomorphic, posets_with_few_downsets, Error,
    QValue, Quantale, ReprDistMorphism, Side, TCategory, VMatrix,
};

use crate::error::{CliError, Result};
use crate::report::{CheckRecord, Report};
use crate::schema::{construction_file, Resolved};

/// Cap on exhaustive scans, configurable through `TVCAT_BUDGET`.
pub fn search_budget() -> usize {
    std::env::var("TVCAT_BUDGET")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(1 << 22)
}

fn ensure_budget(base: usize, exp: usize, what: &str) -> Result<usize> {
    let cap = search_budget();
    match (base as u128).checked_pow(exp as u32) {
        Some(c) if c <= cap as u128 => Ok(c as usize),
        _ => Err(CliError::Budget(format!(
            "{what} needs {base}^{exp} candidates, over the cap of {cap}"
        ))),
    }
}

fn get_space<'a>(r: &'a Resolved, name: &str) -> Result<&'a TCategory> {
    r.spaces
        .get(name)
        .ok_or_else(|| CliError::Unresolved(format!("unknown space '{name}'")))
}

fn stamp(mut records: Vec<CheckRecord>, start: Instant) -> Vec<CheckRecord> {
    let ms = start.elapsed().as_millis();
    for r in &mut records {
        r.millis = ms;
    }
    records
}

/// All tables of the given length over the quantale, in code order.
fn value_tables(q: &Arc<Quantale>, len: usize, total: usize) -> Vec<Vec<QValue>> {
    let nv = q.size();
    (0..total)
        .map(|code| {
            let mut c = code;
            (0..len)
                .map(|_| {
                    let v = QValue((c % nv) as u8);
                    c /= nv;
                    v
                })
                .collect()
        })
        .collect()
}

fn render_table(q: &Quantale, labels: &[String], t: &[QValue]) -> String {
    let cells: Vec<String> =
        labels.iter().zip(t).map(|(l, &v)| format!("{l}={}", q.label(v))).collect();
    format!("({})", cells.join(", "))
}

fn row_labels(x: &TCategory) -> Vec<String> {
    let bound = x.theory.word_bound().unwrap_or(0);
    (0..x.theory.t_size(x.n))
        .map(|w| x.theory.t_elem(x.n, bound, w).render(&x.labels))
        .collect()
}

/// Order-reversal of an identity-theory structure.
fn op(x: &TCategory) -> Result<TCategory> {
    if !x.theory.is_identity_like() {
        return Err(CliError::Usage(
            "order reversal is only defined for identity-like theories".into(),
        ));
    }
    Ok(TCategory::new(x.theory.clone(), x.labels.clone(), x.a.involution())?)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CheckFlags {
    pub axioms: bool,
    pub core_compact: bool,
    pub repr: bool,
    pub esakia: bool,
    pub separated: bool,
}

pub fn check_space(r: &Resolved, name: &str, mut flags: CheckFlags) -> Result<Report> {
    let x = get_space(r, name)?;
    let any = flags.axioms || flags.core_compact || flags.repr || flags.esakia || flags.separated;
    if !any {
        flags.axioms = true;
    }
    let start = Instant::now();
    let bound = x.theory.word_bound();
    let mut recs = Vec::new();

    if flags.axioms {
        let laws = x.check_laws();
        if laws.ok() {
            recs.push(CheckRecord::pass(name, "axioms").with_bound(bound));
        } else {
            for (law, witness) in laws.violations {
                recs.push(CheckRecord::fail(name, law, witness).with_bound(bound));
            }
        }
    }
    if flags.separated {
        if x.is_separated() {
            recs.push(CheckRecord::pass(name, "separated").with_bound(bound));
        } else {
            let pair = (0..x.n)
                .flat_map(|p| (p + 1..x.n).map(move |r2| (p, r2)))
                .find(|&(p, r2)| x.point_le(p, r2) && x.point_le(r2, p))
                .map(|(p, r2)| format!("{} ~ {}", x.labels[p], x.labels[r2]))
                .unwrap_or_else(|| "isomorphic points".into());
            recs.push(CheckRecord::fail(name, "separated", pair).with_bound(bound));
        }
    }
    if flags.core_compact {
        recs.push(
            match x.is_core_compact()? {
                None => CheckRecord::pass(name, "core-compact"),
                Some(w) => CheckRecord::fail(name, "core-compact", w),
            }
            .with_bound(bound),
        );
    }
    if flags.repr || flags.esakia {
        let alg = representability(x)?;
        if flags.repr {
            recs.push(
                match &alg {
                    Some(_) => CheckRecord::pass(name, "representable"),
                    None => {
                        CheckRecord::fail(name, "representable", unrepresented_row_witness(x))
                    }
                }
                .with_bound(bound),
            );
        }
        if flags.esakia {
            recs.push(
                match &alg {
                    None => CheckRecord::fail(name, "esakia", "the structure is not representable"),
                    Some(a) => match is_esakia(a)? {
                        None => CheckRecord::pass(name, "esakia"),
                        Some(w) => CheckRecord::fail(name, "esakia", w),
                    },
                }
                .with_bound(bound),
            );
        }
    }
    Ok(Report::new(stamp(recs, start)))
}

fn unrepresented_row_witness(x: &TCategory) -> String {
    let a0 = x.a0();
    let bound = x.theory.word_bound().unwrap_or(0);
    for w in 0..x.theory.t_size(x.n) {
        let represented =
            (0..x.n).any(|p| (0..x.n).all(|y| x.a.at(w, y) == a0.at(p, y)));
        if !represented {
            return format!(
                "row {} matches no point row",
                x.theory.t_elem(x.n, bound, w).render(&x.labels)
            );
        }
    }
    "rows are represented but the algebra laws fail".into()
}

pub fn check_map(r: &Resolved, name: &str) -> Result<Report> {
    let m = r
        .maps
        .get(name)
        .ok_or_else(|| CliError::Unresolved(format!("unknown map '{name}'")))?;
    let dom = get_space(r, &m.dom)?;
    let cod = get_space(r, &m.cod)?;
    let start = Instant::now();
    let bound = dom.theory.word_bound();
    let rec = match dom.check_functor(cod, &m.f)? {
        None => CheckRecord::pass(name, "structure-preserving"),
        Some(w) => CheckRecord::fail(name, "structure-preserving", w),
    };
    Ok(Report::new(stamp(vec![rec.with_bound(bound)], start)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    #[value(name = "P")]
    P,
    #[value(name = "V")]
    V,
    Dual,
    Tensor,
    Exp,
    #[value(name = "lift-T", alias = "lift-t")]
    LiftT,
}

pub fn construct(r: &Resolved, kind: ConstructKind, names: &[String]) -> Result<Report> {
    let binary = matches!(kind, ConstructKind::Tensor | ConstructKind::Exp);
    let expected = if binary { 2 } else { 1 };
    if names.len() != expected {
        return Err(CliError::Usage(format!(
            "construct takes exactly {expected} space name(s) for this kind, got {}",
            names.len()
        )));
    }
    let x = get_space(r, &names[0])?;
    let start = Instant::now();
    let bound = x.theory.word_bound();
    let mut recs = Vec::new();

    let (out_name, law, cat) = match kind {
        ConstructKind::P => {
            let rows = x.theory.t_size(x.n);
            ensure_budget(x.quantale().size(), rows, "presheaf carrier scan")?;
            (format!("P({})", names[0]), "construct-P", build_presheaves(x)?.cat)
        }
        ConstructKind::V => {
            ensure_budget(x.quantale().size(), x.n, "up-set carrier scan")?;
            (format!("V({})", names[0]), "construct-V", build_upsets(x)?.cat)
        }
        ConstructKind::Dual => {
            let (d, lawful) = dual(x)?;
            recs.push(if lawful {
                CheckRecord::pass(&names[0], "dual-lawful").with_bound(bound)
            } else {
                let w = d
                    .check_laws()
                    .violations
                    .first()
                    .map(|(law, wit)| format!("{law}: {wit}"))
                    .unwrap_or_else(|| "order reversal leaves the lawful class".into());
                CheckRecord::fail(&names[0], "dual-lawful", w).with_bound(bound)
            });
            (format!("dual({})", names[0]), "construct-dual", d)
        }
        ConstructKind::Tensor => {
            let y = get_space(r, &names[1])?;
            (format!("tensor({},{})", names[0], names[1]), "construct-tensor", x.tensor(y)?)
        }
        ConstructKind::Exp => {
            let y = get_space(r, &names[1])?;
            ensure_budget(y.n.max(1), x.n, "mapping-space scan")?;
            (format!("exp({},{})", names[0], names[1]), "construct-exp", x.exponential(y)?.0)
        }
        ConstructKind::LiftT => {
            (format!("liftT({})", names[0]), "construct-lift-T", lift_t(x)?)
        }
    };
    recs.insert(
        0,
        CheckRecord::pass(&out_name, law)
            .with_note(format!("{} points", cat.n))
            .with_bound(bound),
    );
    let file = construction_file(&r.file, &out_name, &cat);
    Ok(Report::new(stamp(recs, start)).with_construction(file))
}

pub fn adjoint(r: &Resolved, map_name: &str, side: Side) -> Result<Report> {
    let m = r
        .maps
        .get(map_name)
        .ok_or_else(|| CliError::Unresolved(format!("unknown map '{map_name}'")))?;
    let dom = get_space(r, &m.dom)?;
    let cod = get_space(r, &m.cod)?;
    let start = Instant::now();
    let bound = dom.theory.word_bound();
    let law = match side {
        Side::Left => "left-adjoint",
        Side::Right => "right-adjoint",
    };
    let rec = match dom.find_adjoint(cod, &m.f, side)? {
        Some(g) => {
            let rendered: Vec<String> = cod
                .labels
                .iter()
                .zip(&g)
                .map(|(l, &i)| format!("{l} -> {}", dom.labels[i]))
                .collect();
            CheckRecord::pass(map_name, law).with_note(rendered.join(", "))
        }
        None => CheckRecord::fail(map_name, law, "the defining equations have no solution"),
    };
    Ok(Report::new(stamp(vec![rec.with_bound(bound)], start)))
}

pub fn split(r: &Resolved, dist_name: &str) -> Result<Report> {
    let d = r
        .dists
        .get(dist_name)
        .ok_or_else(|| CliError::Unresolved(format!("unknown distributor '{dist_name}'")))?;
    if !r.theory.is_identity_like() {
        return Err(CliError::Usage(
            "split is defined for identity-like theories; declare the relation on points".into(),
        ));
    }
    if d.dom != d.cod {
        return Err(CliError::Usage(format!(
            "split needs an endo-relation; '{dist_name}' goes {} -> {}",
            d.dom, d.cod
        )));
    }
    let x = get_space(r, &d.dom)?;
    let psi = d.rel.mat.clone();
    let start = Instant::now();
    let mut recs = Vec::new();

    let alg = match representability(x)? {
        Some(alg) => alg,
        None => {
            recs.push(CheckRecord::fail(
                &d.dom,
                "representable",
                unrepresented_row_witness(x),
            ));
            return Ok(Report::new(stamp(recs, start)));
        }
    };
    recs.push(CheckRecord::pass(&d.dom, "representable"));

    let square = VMatrix::compose(&psi, &psi)?;
    if square != psi {
        let q = x.quantale();
        let cell = (0..x.n)
            .flat_map(|a| (0..x.n).map(move |b| (a, b)))
            .find(|&(a, b)| square.at(a, b) != psi.at(a, b))
            .map(|(a, b)| {
                format!(
                    "at ({}, {}): {} vs {}",
                    x.labels[a],
                    x.labels[b],
                    q.label(square.at(a, b)),
                    q.label(psi.at(a, b))
                )
            })
            .unwrap_or_default();
        recs.push(CheckRecord::fail(dist_name, "idempotent", cell));
        return Ok(Report::new(stamp(recs, start)));
    }
    recs.push(CheckRecord::pass(dist_name, "idempotent"));

    let m = match ReprDistMorphism::new(alg.clone(), alg, psi.clone()) {
        Ok(m) => m,
        Err(Error::NotCompatible(w)) => {
            recs.push(CheckRecord::fail(dist_name, "compatible", w));
            return Ok(Report::new(stamp(recs, start)));
        }
        Err(e) => return Err(e.into()),
    };
    recs.push(CheckRecord::pass(dist_name, "compatible"));

    let s = match split_idempotent(&m) {
        Ok(s) => s,
        Err(Error::SplitNotFound) => {
            recs.push(CheckRecord::fail(
                dist_name,
                "splits",
                "no splitting found within the search bound",
            ));
            return Ok(Report::new(stamp(recs, start)));
        }
        Err(e) => return Err(e.into()),
    };
    let rs = VMatrix::compose(&s.r, &s.s)?;
    let sr = VMatrix::compose(&s.s, &s.r)?;
    recs.push(if rs == psi && sr == s.core.base.a0() {
        CheckRecord::pass(dist_name, "section-retraction")
            .with_note(format!("core has {} points", s.core.base.n))
    } else {
        CheckRecord::fail(dist_name, "section-retraction", "composites disagree with the split")
    });
    let file = construction_file(&r.file, &format!("core({dist_name})"), &s.core.base);
    Ok(Report::new(stamp(recs, start)).with_construction(file))
}

pub fn limits(r: &Resolved, name: &str) -> Result<Report> {
    let x = get_space(r, name)?;
    let q = x.quantale();
    let start = Instant::now();
    let bound = x.theory.word_bound();
    let total = ensure_budget(q.size(), x.n, "weight enumeration")?;
    let rec = match value_tables(q, x.n, total)
        .iter()
        .find(|phi| weighted_inf(x, phi).is_none())
    {
        None => CheckRecord::pass(name, "all-weighted-limits")
            .with_note(format!("{total} weights have limits")),
        Some(phi) => CheckRecord::fail(
            name,
            "all-weighted-limits",
            format!("no limit weighted by {}", render_table(q, &x.labels, phi)),
        ),
    };
    Ok(Report::new(stamp(vec![rec.with_bound(bound)], start)))
}

pub fn colimits(r: &Resolved, name: &str) -> Result<Report> {
    let x = get_space(r, name)?;
    let q = x.quantale();
    let start = Instant::now();
    let bound = x.theory.word_bound();
    let rows = x.theory.t_size(x.n);
    let total = ensure_budget(q.size(), rows, "weight enumeration")?;
    let labels = row_labels(x);
    let rec = match value_tables(q, rows, total)
        .iter()
        .find(|psi| weighted_sup(x, psi).is_none())
    {
        None => CheckRecord::pass(name, "all-weighted-colimits")
            .with_note(format!("{total} weights have colimits")),
        Some(psi) => CheckRecord::fail(
            name,
            "all-weighted-colimits",
            format!("no colimit weighted by {}", render_table(q, &labels, psi)),
        ),
    };
    Ok(Report::new(stamp(vec![rec.with_bound(bound)], start)))
}

pub fn isbell(r: &Resolved, name: &str) -> Result<Report> {
    let x = get_space(r, name)?;
    let q = x.quantale();
    let start = Instant::now();
    let bound = x.theory.word_bound();
    let rows = x.theory.t_size(x.n);
    let n_phi = ensure_budget(q.size(), x.n, "covariant weight enumeration")?;
    let n_psi = ensure_budget(q.size(), rows, "contravariant weight enumeration")?;
    ensure_budget(n_phi.max(1), 2, "conjugation pair scan")?;
    let phis = value_tables(q, x.n, n_phi);
    let psis = value_tables(q, rows, n_psi);
    let psi_labels = row_labels(x);
    let mut recs = Vec::new();

    let galois = phis.iter().find_map(|phi| {
        psis.iter()
            .find(|psi| !galois_instance_holds(x, phi, psi))
            .map(|psi| (phi, psi))
    });
    recs.push(match galois {
        None => CheckRecord::pass(name, "conjugation-galois")
            .with_note(format!("{} weight pairs", n_phi * n_psi)),
        Some((phi, psi)) => CheckRecord::fail(
            name,
            "conjugation-galois",
            format!(
                "phi = {}, psi = {}",
                render_table(q, &x.labels, phi),
                render_table(q, &psi_labels, psi)
            ),
        ),
    });

    let triple = phis
        .iter()
        .find(|phi| {
            let minus = conj_minus(x, phi);
            conj_minus(x, &conj_plus(x, &minus)) != minus
        })
        .map(|phi| render_table(q, &x.labels, phi))
        .or_else(|| {
            psis.iter()
                .find(|psi| {
                    let plus = conj_plus(x, psi);
                    conj_plus(x, &conj_minus(x, &plus)) != plus
                })
                .map(|psi| render_table(q, &psi_labels, psi))
        });
    recs.push(match triple {
        None => CheckRecord::pass(name, "triple-conjugation"),
        Some(w) => CheckRecord::fail(name, "triple-conjugation", format!("unstable at {w}")),
    });

    let transfer = phis
        .iter()
        .find(|phi| weighted_inf(x, phi) != weighted_sup(x, &conj_minus(x, phi)));
    recs.push(match transfer {
        None => CheckRecord::pass(name, "limit-transfer"),
        Some(phi) => CheckRecord::fail(
            name,
            "limit-transfer",
            format!(
                "limit and conjugate colimit disagree at {}",
                render_table(q, &x.labels, phi)
            ),
        ),
    });

    let recs = recs.into_iter().map(|r2| r2.with_bound(bound)).collect();
    Ok(Report::new(stamp(recs, start)))
}

pub fn duality_suite(max_size: usize) -> Result<Report> {
    if max_size > 16 {
        return Err(CliError::Usage(
            "duality-suite enumerates every distributive lattice up to the bound; \
             sizes above 16 are not supported"
                .into(),
        ));
    }
    let corpus = posets_with_few_downsets(max_size);
    let per_instance: Vec<Result<Vec<CheckRecord>>> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            let start = Instant::now();
            let l = downset_lattice(p)?;
            let name = format!("lattice[{i}] ({} elements)", l.size());
            let mut recs = Vec::new();
            recs.push(if l.is_distributive() {
                CheckRecord::pass(&name, "distributive")
            } else {
                CheckRecord::fail(&name, "distributive", "meet fails to distribute over join")
            });
            recs.push(if l.is_heyting() {
                CheckRecord::pass(&name, "heyting")
            } else {
                CheckRecord::fail(&name, "heyting", "a relative pseudo-complement is missing")
            });
            let j = join_irreducibles(&l)?;
            recs.push(if order_isomorphic(&j, p) {
                CheckRecord::pass(&name, "points-of-down-sets")
            } else {
                CheckRecord::fail(
                    &name,
                    "points-of-down-sets",
                    "irreducibles are not order-isomorphic to the base",
                )
            });
            let l2 = downset_lattice(&j)?;
            recs.push(if l.isomorphic(&l2) {
                CheckRecord::pass(&name, "down-sets-of-points")
            } else {
                CheckRecord::fail(
                    &name,
                    "down-sets-of-points",
                    "rebuilt lattice is not isomorphic",
                )
            });
            Ok(stamp(recs, start))
        })
        .collect();
    let mut records = Vec::new();
    for r2 in per_instance {
        records.extend(r2?);
    }
    Ok(Report::new(records))
}

pub fn corpus_suite(max_size: usize) -> Result<Report> {
    if max_size > 4 {
        return Err(CliError::Usage(
            "corpus-suite walks every labelled carrier up to the bound; \
             sizes above 4 are not supported"
                .into(),
        ));
    }
    let corpus: Vec<TCategory> = (0..=max_size).flat_map(labeled_posets).collect();
    let per_instance: Vec<Result<Vec<CheckRecord>>> = corpus
        .par_iter()
        .enumerate()
        .map(|(i, x)| corpus_instance(i, x))
        .collect();
    let mut records = Vec::new();
    for r2 in per_instance {
        records.extend(r2?);
    }
    Ok(Report::new(records))
}

/// Maps an engine outcome to a record: `None` passes, `Some` fails with
/// that witness, and a blown internal search budget is inconclusive.
fn verdict(
    name: &str,
    law: &str,
    outcome: std::result::Result<Option<String>, Error>,
) -> Result<CheckRecord> {
    match outcome {
        Ok(None) => Ok(CheckRecord::pass(name, law)),
        Ok(Some(w)) => Ok(CheckRecord::fail(name, law, w)),
        Err(Error::SearchSpaceTooLarge(m)) => Ok(CheckRecord::inconclusive(name, law, m)),
        Err(e) => Err(e.into()),
    }
}

fn corpus_instance(i: usize, x: &TCategory) -> Result<Vec<CheckRecord>> {
    let start = Instant::now();
    let name = format!("poset[{i}] ({} points)", x.n);
    let mut recs = Vec::new();

    let laws = x.check_laws();
    recs.push(verdict(
        &name,
        "axioms",
        Ok(laws.violations.first().map(|(l, w)| format!("{l}: {w}"))),
    )?);

    recs.push(verdict(
        &name,
        "yoneda-evaluation",
        build_presheaves(x).map(|px| {
            for (s, table) in px.elements.iter().enumerate() {
                for p in 0..x.n {
                    if table[p] != px.cat.a.at(px.yoneda[p], s) {
                        return Some(format!(
                            "presheaf {s} at {} evaluates wrongly",
                            x.labels[p]
                        ));
                    }
                }
            }
            None
        }),
    )?);

    recs.push(verdict(
        &name,
        "complete-iff-cocomplete",
        is_totally_complete(x).and_then(|c| {
            Ok((c != is_cocomplete(x)?)
                .then(|| format!("complete = {c} but cocomplete differs")))
        }),
    )?);

    let xop = op(x)?;
    recs.push(verdict(
        &name,
        "cocomplete-iff-dual-complete",
        is_totally_cocomplete(x).and_then(|c| {
            Ok((c != is_totally_complete(&xop)?)
                .then(|| format!("cocomplete = {c} but the reversed order disagrees")))
        }),
    )?);

    recs.push(verdict(
        &name,
        "up-sets-totally-complete",
        build_upsets(x)
            .and_then(|vx| is_totally_complete(&vx.cat))
            .map(|ok| (!ok).then(|| "a weight on the up-set carrier has no limit".to_string())),
    )?);

    recs.push(verdict(
        &name,
        "presheaves-totally-cocomplete",
        build_presheaves(x)
            .and_then(|px| is_totally_cocomplete(&px.cat))
            .map(|ok| {
                (!ok).then(|| "a weight on the presheaf carrier has no colimit".to_string())
            }),
    )?);

    recs.push(verdict(
        &name,
        "algebra-iff-complete",
        total_completeness(x).and_then(|strong| {
            Ok((strong != is_totally_complete(x)?)
                .then(|| format!("algebra structure = {strong} but completeness differs")))
        }),
    )?);

    Ok(stamp(recs, start))
}
