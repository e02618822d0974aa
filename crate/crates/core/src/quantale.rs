//! Finite commutative unital quantales.
//!
//! A quantale here is a finite lattice carrying an associative, commutative
//! tensor with unit `k` that distributes over arbitrary joins (for a finite
//! carrier: over binary joins and the empty join). The internal hom is
//! derived from the tables by `hom(v, w) = join { u : u (x) v <= w }`, which
//! is the right adjoint of tensoring: `u (x) v <= w  iff  u <= hom(v, w)`.
//!
//! Values are indices into the carrier (`QValue`); all tables are dense
//! row-major vectors over those indices. Trivial quantales (unit = bottom)
//! are rejected, so `k != bottom` can be assumed everywhere downstream.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Index of a quantale element. Carriers are small (validated <= 64).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QValue(pub u8);

impl QValue {
    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

pub const MAX_CARRIER: usize = 64;

#[derive(Debug, Clone)]
pub struct Quantale {
    pub name: String,
    labels: Vec<String>,
    n: usize,
    le: Vec<bool>,
    join: Vec<u8>,
    meet: Vec<u8>,
    tensor: Vec<u8>,
    hom: Vec<u8>,
    unit: QValue,
    bottom: QValue,
    top: QValue,
}

impl PartialEq for Quantale {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.le == other.le
            && self.tensor == other.tensor
            && self.unit == other.unit
    }
}
impl Eq for Quantale {}

impl Quantale {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn label(&self, v: QValue) -> &str {
        &self.labels[v.idx()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn lookup(&self, label: &str) -> Option<QValue> {
        self.labels.iter().position(|l| l == label).map(|i| QValue(i as u8))
    }

    pub fn unit(&self) -> QValue {
        self.unit
    }

    pub fn bottom(&self) -> QValue {
        self.bottom
    }

    pub fn top(&self) -> QValue {
        self.top
    }

    #[inline]
    pub fn le(&self, u: QValue, v: QValue) -> bool {
        self.le[u.idx() * self.n + v.idx()]
    }

    #[inline]
    pub fn join(&self, u: QValue, v: QValue) -> QValue {
        QValue(self.join[u.idx() * self.n + v.idx()])
    }

    #[inline]
    pub fn meet(&self, u: QValue, v: QValue) -> QValue {
        QValue(self.meet[u.idx() * self.n + v.idx()])
    }

    #[inline]
    pub fn tensor(&self, u: QValue, v: QValue) -> QValue {
        QValue(self.tensor[u.idx() * self.n + v.idx()])
    }

    #[inline]
    pub fn hom(&self, u: QValue, v: QValue) -> QValue {
        QValue(self.hom[u.idx() * self.n + v.idx()])
    }

    /// Join of an arbitrary finite family; the empty join is bottom.
    pub fn join_all<I: IntoIterator<Item = QValue>>(&self, vs: I) -> QValue {
        vs.into_iter().fold(self.bottom, |a, b| self.join(a, b))
    }

    /// Meet of an arbitrary finite family; the empty meet is top.
    pub fn meet_all<I: IntoIterator<Item = QValue>>(&self, vs: I) -> QValue {
        vs.into_iter().fold(self.top, |a, b| self.meet(a, b))
    }

    pub fn elements(&self) -> impl Iterator<Item = QValue> {
        (0..self.n as u8).map(QValue)
    }
}

/// Validates order and tensor tables and builds the derived tables.
///
/// `le` is the full n*n order table, `tensor` the full n*n tensor table,
/// `unit` the tensor unit. Joins, meets and the internal hom are computed,
/// never supplied. Rejects non-lattices, non-commutative or non-associative
/// tensors, unit failures, join-distributivity failures, and the trivial
/// case `unit = bottom`.
pub fn build_quantale(
    name: &str,
    labels: Vec<String>,
    le: Vec<bool>,
    tensor_labels: Vec<u8>,
    unit: QValue,
) -> Result<Arc<Quantale>> {
    let n = labels.len();
    if n == 0 {
        return Err(Error::BadParameter("empty carrier".into()));
    }
    if n > MAX_CARRIER {
        return Err(Error::BadParameter(format!("carrier size {n} exceeds {MAX_CARRIER}")));
    }
    if le.len() != n * n || tensor_labels.len() != n * n {
        return Err(Error::ShapeMismatch(format!("tables must be {n}x{n}")));
    }
    if unit.idx() >= n {
        return Err(Error::BadParameter("unit outside carrier".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if tensor_labels[i * n + j] as usize >= n {
                return Err(Error::BadParameter("tensor value outside carrier".into()));
            }
        }
    }
    {
        let mut seen = labels.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != n {
            return Err(Error::BadParameter("duplicate carrier labels".into()));
        }
    }

    // Partial order axioms.
    for i in 0..n {
        if !le[i * n + i] {
            return Err(Error::NotALattice(format!("order not reflexive at {}", labels[i])));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && le[i * n + j] && le[j * n + i] {
                return Err(Error::NotALattice(format!(
                    "order not antisymmetric at ({}, {})",
                    labels[i], labels[j]
                )));
            }
            for k in 0..n {
                if le[i * n + j] && le[j * n + k] && !le[i * n + k] {
                    return Err(Error::NotALattice(format!(
                        "order not transitive at ({}, {}, {})",
                        labels[i], labels[j], labels[k]
                    )));
                }
            }
        }
    }

    // Binary joins and meets must exist; a finite lattice is then complete.
    let lub = |a: usize, b: usize| -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in 0..n {
            if le[a * n + c] && le[b * n + c] {
                best = match best {
                    None => Some(c),
                    // Keep the smaller of comparable bounds; on incomparable
                    // bounds keep the current one — the final pass decides.
                    Some(m) => Some(if le[c * n + m] { c } else { m }),
                };
            }
        }
        // Confirm the survivor is below every upper bound.
        let m = best?;
        for c in 0..n {
            if le[a * n + c] && le[b * n + c] && !le[m * n + c] {
                return None;
            }
        }
        Some(m)
    };
    let glb = |a: usize, b: usize| -> Option<usize> {
        let mut best: Option<usize> = None;
        for c in 0..n {
            if le[c * n + a] && le[c * n + b] {
                best = match best {
                    None => Some(c),
                    Some(m) => Some(if le[m * n + c] { c } else { m }),
                };
            }
        }
        // Confirm the survivor is above every lower bound.
        let m = best?;
        for c in 0..n {
            if le[c * n + a] && le[c * n + b] && !le[c * n + m] {
                return None;
            }
        }
        Some(m)
    };

    let mut join = vec![0u8; n * n];
    let mut meet = vec![0u8; n * n];
    for a in 0..n {
        for b in 0..n {
            match lub(a, b) {
                Some(c) => join[a * n + b] = c as u8,
                None => {
                    return Err(Error::NotALattice(format!(
                        "no join of {} and {}",
                        labels[a], labels[b]
                    )))
                }
            }
            match glb(a, b) {
                Some(c) => meet[a * n + b] = c as u8,
                None => {
                    return Err(Error::NotALattice(format!(
                        "no meet of {} and {}",
                        labels[a], labels[b]
                    )))
                }
            }
        }
    }
    let bottom = (0..n)
        .find(|&b| (0..n).all(|c| le[b * n + c]))
        .ok_or_else(|| Error::NotALattice("no bottom element".into()))?;
    let top = (0..n)
        .find(|&t| (0..n).all(|c| le[c * n + t]))
        .ok_or_else(|| Error::NotALattice("no top element".into()))?;

    let ten = |a: usize, b: usize| tensor_labels[a * n + b] as usize;
    for a in 0..n {
        for b in 0..n {
            if ten(a, b) != ten(b, a) {
                return Err(Error::NotCommutative(format!("({}, {})", labels[a], labels[b])));
            }
            for c in 0..n {
                if ten(ten(a, b), c) != ten(a, ten(b, c)) {
                    return Err(Error::NotAssociative(format!(
                        "({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    let k = unit.idx();
    for a in 0..n {
        if ten(k, a) != a {
            return Err(Error::UnitLawFails(format!("unit (x) {} = {}", labels[a], labels[ten(k, a)])));
        }
    }
    // Distribution over the empty join and over binary joins.
    for a in 0..n {
        if ten(a, bottom) != bottom {
            return Err(Error::DistributivityFails(format!(
                "{} (x) bottom = {}",
                labels[a],
                labels[ten(a, bottom)]
            )));
        }
        for b in 0..n {
            for c in 0..n {
                let lhs = ten(a, join[b * n + c] as usize);
                let rhs = join[ten(a, b) * n + ten(a, c)] as usize;
                if lhs != rhs {
                    return Err(Error::DistributivityFails(format!(
                        "{} (x) ({} v {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    if k == bottom {
        return Err(Error::TrivialQuantale);
    }

    // hom(v, w) = join of { u : u (x) v <= w }. The distributivity just
    // checked makes this join itself a member of the set, so the adjunction
    // holds by construction; tests re-verify it exhaustively.
    let mut hom = vec![0u8; n * n];
    for v in 0..n {
        for w in 0..n {
            let mut acc = bottom;
            for u in 0..n {
                if le[ten(u, v) * n + w] {
                    acc = join[acc * n + u] as usize;
                }
            }
            hom[v * n + w] = acc as u8;
        }
    }

    Ok(Arc::new(Quantale {
        name: name.to_string(),
        labels,
        n,
        le,
        join,
        meet,
        tensor: tensor_labels,
        hom,
        unit,
        bottom: QValue(bottom as u8),
        top: QValue(top as u8),
    }))
}

/// The two-element chain 0 < 1 with tensor = meet and unit 1.
pub fn two() -> Arc<Quantale> {
    let labels = vec!["0".to_string(), "1".to_string()];
    let le = vec![true, true, false, true];
    let tensor = vec![0, 0, 0, 1];
    build_quantale("two", labels, le, tensor, QValue(1)).expect("builtin")
}

/// Truncated extended non-negative distances {0..n, inf}.
///
/// The lattice order is the reversed numeric order (joins are numeric
/// minima, bottom is inf, top is 0), the tensor is addition with sums
/// above `n` collapsing to inf, and the unit is 0. The derived hom is
/// truncated subtraction read backwards: hom(u, v) = max(v - u, 0).
pub fn pplus_trunc(n: usize) -> Result<Arc<Quantale>> {
    dist_carrier(n, "pplus_trunc", |a, b, cut| {
        let s = a.saturating_add(b);
        if s > cut {
            usize::MAX
        } else {
            s
        }
    })
}

/// Truncated extended distances with tensor = numeric maximum and unit 0.
///
/// Same carrier and order as `pplus_trunc`; the derived hom is
/// hom(u, v) = 0 when u >= v numerically, and v otherwise.
pub fn pwedge_trunc(n: usize) -> Result<Arc<Quantale>> {
    dist_carrier(n, "pwedge_trunc", |a, b, _| a.max(b))
}

fn dist_carrier(
    n: usize,
    name: &str,
    op: fn(usize, usize, usize) -> usize,
) -> Result<Arc<Quantale>> {
    if n == 0 || n + 2 > MAX_CARRIER {
        return Err(Error::BadParameter(format!("{name} parameter {n} out of range")));
    }
    // Index i < size-1 holds the number i; the last index holds inf.
    let size = n + 2;
    let inf = size - 1;
    let numeric = |i: usize| if i == inf { usize::MAX } else { i };
    let mut labels: Vec<String> = (0..=n).map(|i| i.to_string()).collect();
    labels.push("inf".to_string());
    let mut le = vec![false; size * size];
    let mut tensor = vec![0u8; size * size];
    for a in 0..size {
        for b in 0..size {
            le[a * size + b] = numeric(a) >= numeric(b);
            let v = op(numeric(a), numeric(b), n);
            tensor[a * size + b] = if v > n { inf as u8 } else { v as u8 };
        }
    }
    build_quantale(&format!("{name}({n})"), labels, le, tensor, QValue(0))
}

/// Builtin lookup by the names accepted in definition files.
pub fn builtin_quantale(name: &str) -> Result<Arc<Quantale>> {
    if name == "two" {
        return Ok(two());
    }
    let parse = |prefix: &str| -> Option<usize> {
        name.strip_prefix(prefix)?
            .strip_prefix('(')?
            .strip_suffix(')')?
            .parse()
            .ok()
    };
    if let Some(n) = parse("pplus_trunc") {
        return pplus_trunc(n);
    }
    if let Some(n) = parse("pwedge_trunc") {
        return pwedge_trunc(n);
    }
    Err(Error::BadParameter(format!("unknown builtin quantale {name}")))
}
