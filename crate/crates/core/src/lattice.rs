//! Finite lattices and the classical dualities at desk scale: down-set
//! lattices of posets, join-irreducibles as the inverse direction,
//! Boolean atoms, Heyting implication, and the construction of Heyting
//! algebras from split idempotent relations.

use crate::error::{Error, Result};
use crate::quantale::two;
use crate::repr::{representability, split_idempotent, ReprDistMorphism};
use crate::tcat::TCategory;
use crate::theory::Theory;
use crate::vmat::VMatrix;

/// A lattice as tables: the order plus precomputed joins and meets.
#[derive(Debug, Clone)]
pub struct FiniteLattice {
    pub labels: Vec<String>,
    le: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
}

impl FiniteLattice {
    /// Validates the order and fills in the join/meet tables; every pair
    /// must have a least upper and a greatest lower bound.
    pub fn from_le(labels: Vec<String>, le: Vec<bool>) -> Result<FiniteLattice> {
        let n = labels.len();
        if le.len() != n * n {
            return Err(Error::NotALattice(format!(
                "order table has {} entries for {n} elements",
                le.len()
            )));
        }
        let at = |a: usize, b: usize| le[a * n + b];
        for a in 0..n {
            if !at(a, a) {
                return Err(Error::NotALattice(format!("{} is not below itself", labels[a])));
            }
            for b in 0..n {
                if a != b && at(a, b) && at(b, a) {
                    return Err(Error::NotALattice(format!(
                        "{} and {} are below each other",
                        labels[a], labels[b]
                    )));
                }
                for c in 0..n {
                    if at(a, b) && at(b, c) && !at(a, c) {
                        return Err(Error::NotALattice(format!(
                            "order is not transitive at {}, {}, {}",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let bound = |a: usize, b: usize, upper: bool| -> Option<usize> {
            let dominates =
                |c: usize, d: usize| if upper { at(d, c) } else { at(c, d) };
            let candidates: Vec<usize> =
                (0..n).filter(|&c| dominates(c, a) && dominates(c, b)).collect();
            candidates
                .iter()
                .copied()
                .find(|&c| candidates.iter().all(|&d| dominates(d, c)))
        };
        let mut join = vec![0usize; n * n];
        let mut meet = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                join[a * n + b] = bound(a, b, true).ok_or_else(|| {
                    Error::NotALattice(format!("{} and {} have no join", labels[a], labels[b]))
                })?;
                meet[a * n + b] = bound(a, b, false).ok_or_else(|| {
                    Error::NotALattice(format!("{} and {} have no meet", labels[a], labels[b]))
                })?;
            }
        }
        if n == 0 {
            return Err(Error::NotALattice("a lattice needs at least one element".into()));
        }
        let bottom = (0..n)
            .find(|&a| (0..n).all(|b| at(a, b)))
            .ok_or_else(|| Error::NotALattice("no least element".into()))?;
        let top = (0..n)
            .find(|&a| (0..n).all(|b| at(b, a)))
            .ok_or_else(|| Error::NotALattice("no greatest element".into()))?;
        Ok(FiniteLattice { labels, le, join, meet, bottom, top })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.size() + b]
    }

    pub fn join_of(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn meet_of(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| {
                    self.meet_of(a, self.join_of(b, c))
                        == self.join_of(self.meet_of(a, b), self.meet_of(a, c))
                })
            })
        })
    }

    /// Relative pseudo-complement `a -> b`, accepted only when it is a
    /// genuine adjoint: `c meet a <= b` exactly for `c <= a -> b`.
    pub fn heyting_implication(&self, a: usize, b: usize) -> Option<usize> {
        let n = self.size();
        let mut imp = self.bottom;
        for c in 0..n {
            if self.le(self.meet_of(c, a), b) {
                imp = self.join_of(imp, c);
            }
        }
        let adjoint =
            (0..n).all(|d| self.le(self.meet_of(d, a), b) == self.le(d, imp));
        adjoint.then_some(imp)
    }

    pub fn is_heyting(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (0..n).all(|b| self.heyting_implication(a, b).is_some()))
    }

    pub fn is_boolean(&self) -> bool {
        let n = self.size();
        self.is_distributive()
            && (0..n).all(|a| {
                (0..n).any(|b| {
                    self.meet_of(a, b) == self.bottom && self.join_of(a, b) == self.top
                })
            })
    }

    /// Minimal elements above the bottom of a Boolean lattice.
    pub fn boolean_atoms(&self) -> Result<Vec<usize>> {
        if !self.is_boolean() {
            return Err(Error::NotBoolean("some element has no complement".into()));
        }
        let n = self.size();
        Ok((0..n)
            .filter(|&a| {
                a != self.bottom
                    && (0..n).all(|x| !(x != self.bottom && x != a && self.le(x, a)))
            })
            .collect())
    }

    pub fn isomorphic(&self, other: &FiniteLattice) -> bool {
        iso_search(self.size(), other.size(), &|a, b| self.le(a, b), &|a, b| {
            other.le(a, b)
        })
    }
}

/// Backtracking search for an order bijection, pruned by degree pairs.
fn iso_search(
    n: usize,
    m: usize,
    a: &dyn Fn(usize, usize) -> bool,
    b: &dyn Fn(usize, usize) -> bool,
) -> bool {
    if n != m {
        return false;
    }
    let degrees = |le: &dyn Fn(usize, usize) -> bool, x: usize| {
        ((0..n).filter(|&y| le(x, y)).count(), (0..n).filter(|&y| le(y, x)).count())
    };
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        x: usize,
        n: usize,
        a: &dyn Fn(usize, usize) -> bool,
        b: &dyn Fn(usize, usize) -> bool,
        degrees: &dyn Fn(&dyn Fn(usize, usize) -> bool, usize) -> (usize, usize),
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || degrees(a, x) != degrees(b, y) {
                continue;
            }
            if (0..x).any(|p| a(p, x) != b(image[p], y) || a(x, p) != b(y, image[p])) {
                continue;
            }
            image[x] = y;
            used[y] = true;
            if assign(x + 1, n, a, b, degrees, image, used) {
                return true;
            }
            image[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    assign(0, n, a, b, &degrees, &mut image, &mut used)
}

/// Order bijection between two structures over the two-element quantale.
pub fn order_isomorphic(x: &TCategory, y: &TCategory) -> bool {
    let k = x.quantale().unit();
    iso_search(x.n, y.n, &|a, b| x.a.at(a, b) == k, &|a, b| y.a.at(a, b) == k)
}

/// All down-closed subsets of a finite poset, ordered by inclusion.
/// Always distributive; the carrier agrees with the presheaves of the
/// poset over the two-element quantale.
pub fn downset_lattice(p: &TCategory) -> Result<FiniteLattice> {
    if !p.theory.is_identity_like() || p.quantale().size() != 2 {
        return Err(Error::PreconditionFailed(
            "down-sets are taken of posets over the two-element quantale".into(),
        ));
    }
    if !p.check_laws().ok() || !p.is_separated() {
        return Err(Error::PreconditionFailed("the order is not a partial order".into()));
    }
    if p.n > 16 {
        return Err(Error::SearchSpaceTooLarge(format!("2^{} subsets", p.n)));
    }
    let k = p.quantale().unit();
    let closed = |mask: u32| {
        (0..p.n).all(|x| {
            (0..p.n).all(|y| !(p.a.at(x, y) == k && mask >> y & 1 == 1) || mask >> x & 1 == 1)
        })
    };
    let sets: Vec<u32> = (0..1u32 << p.n).filter(|&mask| closed(mask)).collect();
    let labels = sets
        .iter()
        .map(|&mask| {
            let members: Vec<&str> = (0..p.n)
                .filter(|&x| mask >> x & 1 == 1)
                .map(|x| p.labels[x].as_str())
                .collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let m = sets.len();
    let mut le = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            le[i * m + j] = sets[i] & !sets[j] == 0;
        }
    }
    FiniteLattice::from_le(labels, le)
}

/// The poset of join-irreducible elements of a distributive lattice:
/// non-bottom elements that are not the join of the elements strictly
/// below them. Taking down-sets again recovers the lattice.
pub fn join_irreducibles(l: &FiniteLattice) -> Result<TCategory> {
    if !l.is_distributive() {
        return Err(Error::NotDistributive(
            "join-irreducibles form the dual poset only for distributive lattices".into(),
        ));
    }
    let n = l.size();
    let irr: Vec<usize> = (0..n)
        .filter(|&j| {
            if j == l.bottom {
                return false;
            }
            let below = (0..n)
                .filter(|&x| x != j && l.le(x, j))
                .fold(l.bottom, |acc, x| l.join_of(acc, x));
            below != j
        })
        .collect();
    let q = two();
    let a = VMatrix::from_fn(q.clone(), irr.len(), irr.len(), |i, j| {
        if l.le(irr[i], irr[j]) {
            q.unit()
        } else {
            q.bottom()
        }
    });
    let labels = irr.iter().map(|&j| l.labels[j].clone()).collect();
    TCategory::new(Theory::identity(q), labels, a)
}

/// Splits an idempotent two-valued relation on a discrete carrier,
/// collapses the split core to a poset, and returns its down-set
/// lattice, which is always a Heyting algebra.
pub fn heyt_from_split(e: &VMatrix) -> Result<FiniteLattice> {
    if e.quantale().size() != 2 || e.src() != e.dst() {
        return Err(Error::PreconditionFailed(
            "expected a square relation over the two-element quantale".into(),
        ));
    }
    let q = e.quantale().clone();
    let n = e.src();
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let disc = TCategory::new(Theory::identity(q.clone()), labels, VMatrix::identity(q, n))?;
    let alg = representability(&disc)?.ok_or_else(|| {
        Error::PreconditionFailed("discrete carrier is not representable".into())
    })?;
    let m = ReprDistMorphism::new(alg.clone(), alg, e.clone())?;
    let split = split_idempotent(&m)?;
    let (posetal, _) = split.core.base.separated_quotient()?;
    let lattice = downset_lattice(&posetal)?;
    if !lattice.is_heyting() {
        return Err(Error::AxiomViolation(
            "down-sets of a split core must form a Heyting algebra".into(),
        ));
    }
    Ok(lattice)
}
