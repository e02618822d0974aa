//! Categories enriched along a theory: a finite carrier X together with a
//! structure matrix `a: TX -/-> X` that is reflexive (`k <= a(e x, x)`) and
//! transitive (`Barr a . m° <= a` on flatten-defined data).
//!
//! For the identity theory these are exactly V-categories; for `two` they
//! are preorders. Under a word theory every law is checked at the theory's
//! bound, quantifying transitivity over outer words whose flattening stays
//! inside the bound, and results are certified only up to that bound.

use crate::error::{Error, Result};
use crate::theory::{kleisli_convolution, LawCheck, MonadKind, TElem, TRelation, Theory};
use crate::vmat::VMatrix;
use std::sync::Arc;

/// Product size guard for derived carriers (exponentials, lifted carriers).
pub(crate) const TABLE_BUDGET: usize = 1 << 22;
/// Combination guard for adjoint searches under word theories.
const COMBO_BUDGET: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TCategory {
    pub theory: Theory,
    pub labels: Vec<String>,
    pub n: usize,
    /// Structure matrix, `t_size(n)` rows by `n` columns.
    pub a: VMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl TCategory {
    /// Wraps a structure table after shape validation. Laws are checked
    /// separately by `check_laws`: invalid structures are first-class values
    /// here so that fault injection can probe the checkers.
    pub fn new(theory: Theory, labels: Vec<String>, a: VMatrix) -> Result<TCategory> {
        let n = labels.len();
        if a.src() != theory.t_size(n) || a.dst() != n {
            return Err(Error::ShapeMismatch(format!(
                "structure table must be {}x{}, got {}x{}",
                theory.t_size(n),
                n,
                a.src(),
                a.dst()
            )));
        }
        if *a.quantale() != theory.quantale {
            return Err(Error::QuantaleMismatch);
        }
        Ok(TCategory { theory, labels, n, a })
    }

    /// The enriched category induced by a plain V-category structure
    /// `c: X -/-> X`: `a(w, x) = (Barr c)(w, e x)`. For the identity theory
    /// this is `c` itself.
    pub fn lift_from_vcat(theory: Theory, labels: Vec<String>, c: &VMatrix) -> Result<TCategory> {
        let n = labels.len();
        if c.src() != n || c.dst() != n {
            return Err(Error::ShapeMismatch("V-structure must be square".into()));
        }
        let big = theory.barr_extend(c);
        let a = VMatrix::from_fn(theory.quantale.clone(), theory.t_size(n), n, |i, x| {
            big.at(i, theory.e_index(n, x))
        });
        TCategory::new(theory, labels, a)
    }

    /// The free structure on a carrier: `a = e°`.
    pub fn free(theory: Theory, labels: Vec<String>) -> TCategory {
        let n = labels.len();
        let a = theory.e_op(n);
        TCategory { theory, labels, n, a }
    }

    /// The free one-object structure; the generator for exponentials.
    pub fn free_point(theory: Theory) -> TCategory {
        TCategory::free(theory, vec!["*".to_string()])
    }

    /// The one-object structure whose table is constantly the unit.
    pub fn unit_point(theory: Theory) -> TCategory {
        let q = theory.quantale.clone();
        let rows = theory.t_size(1);
        let a = VMatrix::constant(q.clone(), rows, 1, q.unit());
        TCategory { theory, labels: vec!["*".to_string()], n: 1, a }
    }

    pub fn quantale(&self) -> &Arc<crate::quantale::Quantale> {
        &self.theory.quantale
    }

    /// The structure as a relation for the convolution calculus.
    pub fn structure_rel(&self) -> TRelation {
        TRelation::new(self.theory.clone(), self.n, self.n, self.a.clone()).expect("shape")
    }

    /// Underlying V-structure `a0 = a . e`.
    pub fn a0(&self) -> VMatrix {
        VMatrix::from_fn(self.quantale().clone(), self.n, self.n, |x, y| {
            self.a.at(self.theory.e_index(self.n, x), y)
        })
    }

    /// Point order: `x <= y` iff `k <= a0(x, y)`.
    pub fn point_le(&self, x: usize, y: usize) -> bool {
        let q = self.quantale();
        q.le(q.unit(), self.a.at(self.theory.e_index(self.n, x), y))
    }

    pub fn is_separated(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).all(|y| x == y || !(self.point_le(x, y) && self.point_le(y, x)))
        })
    }

    /// Validates reflexivity and transitivity, with witnesses.
    pub fn check_laws(&self) -> LawCheck {
        let mut check = LawCheck::default();
        let q = self.quantale().clone();
        let th = &self.theory;

        for x in 0..self.n {
            let v = self.a.at(th.e_index(self.n, x), x);
            if !q.le(q.unit(), v) {
                check.push(
                    "reflexivity",
                    format!("a(e {0}, {0}) = {1}", self.labels[x], q.label(v)),
                );
            }
        }

        match th.kind {
            MonadKind::Identity | MonadKind::UFin => {
                'outer: for x in 0..self.n {
                    for y in 0..self.n {
                        for z in 0..self.n {
                            let lhs = q.tensor(self.a.at(x, y), self.a.at(y, z));
                            if !q.le(lhs, self.a.at(x, z)) {
                                check.push(
                                    "transitivity",
                                    format!(
                                        "a({0},{1}) (x) a({1},{2}) > a({0},{2})",
                                        self.labels[x], self.labels[y], self.labels[z]
                                    ),
                                );
                                break 'outer;
                            }
                        }
                    }
                }
            }
            MonadKind::Word { bound } => {
                let tn = th.t_size(self.n);
                // Outer words over TX whose flattening stays inside the
                // bound, walked by a stack of prefixes.
                let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
                'word: while let Some(outer) = stack.pop() {
                    if let Some(flat) = th.flatten(self.n, bound, bound, &outer) {
                        // Middles: words over X of the same length as outer.
                        let mids = words_of_len(self.n, outer.len());
                        for mid in &mids {
                            // Barr a pairs each block (a TX row) with one
                            // middle letter (an X column).
                            let mut t_full = q.unit();
                            for (&wi, &m) in outer.iter().zip(mid.iter()) {
                                t_full = q.tensor(t_full, self.a.at(wi, m));
                            }
                            let mid_idx = crate::theory::index_of_word(self.n, mid);
                            for x in 0..self.n {
                                let lhs = q.tensor(t_full, self.a.at(mid_idx, x));
                                if !q.le(lhs, self.a.at(flat, x)) {
                                    check.push(
                                        "transitivity",
                                        format!(
                                            "outer {}, middle {}, target {}",
                                            render_outer(th, self.n, bound, &outer, &self.labels),
                                            TElem::Word(mid.clone()).render(&self.labels),
                                            self.labels[x]
                                        ),
                                    );
                                    break 'word;
                                }
                            }
                        }
                    }
                    if outer.len() < bound {
                        for wi in 0..tn {
                            let mut next = outer.clone();
                            next.push(wi);
                            stack.push(next);
                        }
                    }
                }
            }
        }
        check
    }

    /// Checks that `f` (a total map on carrier indices) is a morphism:
    /// `a(w, x) <= b(Tf w, f x)` for all rows. Returns the first witness.
    pub fn check_functor(&self, other: &TCategory, f: &[usize]) -> Result<Option<String>> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch);
        }
        if f.len() != self.n || f.iter().any(|&y| y >= other.n) {
            return Err(Error::BadParameter("map is not a total function on the carrier".into()));
        }
        let q = self.quantale();
        let rows = self.theory.t_size(self.n);
        for w in 0..rows {
            let tf = self.theory.t_apply(self.n, other.n, f, w);
            for x in 0..self.n {
                if !q.le(self.a.at(w, x), other.a.at(tf, f[x])) {
                    let bound = self.theory.word_bound().unwrap_or(0);
                    let wi = self.theory.t_elem(self.n, bound, w);
                    return Ok(Some(format!(
                        "a({}, {}) = {} > {} = b(Tf -, f -)",
                        wi.render(&self.labels),
                        self.labels[x],
                        q.label(self.a.at(w, x)),
                        q.label(other.a.at(tf, f[x]))
                    )));
                }
            }
        }
        Ok(None)
    }

    /// Pointwise order on maps into this category: `f <= g` iff
    /// `k <= b0(f x, g x)` for every x.
    pub fn map_le(&self, f: &[usize], g: &[usize]) -> bool {
        f.iter().zip(g.iter()).all(|(&fx, &gx)| self.point_le(fx, gx))
    }

    /// The image distributor `f_* = b . Tf` of a map `f: self -> other`,
    /// tabulated as `T(self) x other`.
    pub fn image_dist(&self, other: &TCategory, f: &[usize]) -> VMatrix {
        let rows = self.theory.t_size(self.n);
        VMatrix::from_fn(self.quantale().clone(), rows, other.n, |w, y| {
            other.a.at(self.theory.t_apply(self.n, other.n, f, w), y)
        })
    }

    /// The preimage distributor `f^* = f° . b` of a map `f: other -> self`,
    /// tabulated as `T(self) x other`.
    pub fn preimage_dist(&self, other: &TCategory, f: &[usize]) -> VMatrix {
        let rows = self.theory.t_size(self.n);
        VMatrix::from_fn(self.quantale().clone(), rows, other.n, |w, y| {
            self.a.at(w, f[y])
        })
    }

    /// Adjunction test: `f -| g` iff the image distributor of f equals the
    /// preimage distributor of g, cell for cell.
    pub fn is_adjoint_pair(&self, other: &TCategory, f: &[usize], g: &[usize]) -> bool {
        let lhs = self.image_dist(other, f);
        let rhs = self.preimage_dist(other, g);
        lhs == rhs
    }

    /// Searches for an adjoint of `f: self -> other`.
    ///
    /// `Side::Right` finds `g` with `f -| g`; the defining equation
    /// `b(Tf w, y) = a(w, g y)` fixes each `g y` by an independent column
    /// match, so the search is linear. `Side::Left` finds `g` with
    /// `g -| f`; under a word theory the rows couple the choices, so
    /// single-letter rows narrow per-point candidates and the survivors are
    /// tried in lexicographic order (least candidate first) within a budget.
    pub fn find_adjoint(
        &self,
        other: &TCategory,
        f: &[usize],
        side: Side,
    ) -> Result<Option<Vec<usize>>> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch);
        }
        match side {
            Side::Right => {
                // g: other -> self, f -| g: b(Tf w, y) = a(w, g y).
                let image = self.image_dist(other, f);
                let rows = self.theory.t_size(self.n);
                let mut g = Vec::with_capacity(other.n);
                for y in 0..other.n {
                    let found = (0..self.n)
                        .find(|&x| (0..rows).all(|w| image.at(w, y) == self.a.at(w, x)));
                    match found {
                        Some(x) => g.push(x),
                        None => return Ok(None),
                    }
                }
                Ok(Some(g))
            }
            Side::Left => {
                // g: other -> self, g -| f: a(Tg v, x) = b(v, f x).
                let q = self.quantale();
                if self.theory.is_identity_like() {
                    let mut g = Vec::with_capacity(other.n);
                    for y in 0..other.n {
                        let found = (0..self.n).find(|&x_cand| {
                            (0..self.n).all(|x| self.a.at(x_cand, x) == other.a.at(y, f[x]))
                        });
                        match found {
                            Some(x) => g.push(x),
                            None => return Ok(None),
                        }
                    }
                    return Ok(Some(g));
                }
                // Empty-word row does not mention g; it must already agree.
                let _ = q;
                for x in 0..self.n {
                    if self.a.at(0, x) != other.a.at(0, f[x]) {
                        return Ok(None);
                    }
                }
                // Single-letter rows narrow candidates pointwise.
                let mut cands: Vec<Vec<usize>> = Vec::with_capacity(other.n);
                for y in 0..other.n {
                    let ey = self.theory.e_index(other.n, y);
                    let set: Vec<usize> = (0..self.n)
                        .filter(|&x_cand| {
                            let ex = self.theory.e_index(self.n, x_cand);
                            (0..self.n).all(|x| self.a.at(ex, x) == other.a.at(ey, f[x]))
                        })
                        .collect();
                    if set.is_empty() {
                        return Ok(None);
                    }
                    cands.push(set);
                }
                let combos: usize = cands.iter().map(|c| c.len()).product();
                if combos > COMBO_BUDGET {
                    return Err(Error::SearchSpaceTooLarge(format!(
                        "{combos} candidate maps in adjoint search"
                    )));
                }
                let rows = self.theory.t_size(other.n);
                let mut pick = vec![0usize; other.n];
                loop {
                    let g: Vec<usize> =
                        pick.iter().enumerate().map(|(y, &i)| cands[y][i]).collect();
                    let full = (0..rows).all(|v| {
                        let tg = self.theory.t_apply(other.n, self.n, &g, v);
                        (0..self.n).all(|x| self.a.at(tg, x) == other.a.at(v, f[x]))
                    });
                    if full {
                        return Ok(Some(g));
                    }
                    // Odometer over candidate lists.
                    let mut j = other.n;
                    loop {
                        if j == 0 {
                            return Ok(None);
                        }
                        j -= 1;
                        pick[j] += 1;
                        if pick[j] < cands[j].len() {
                            break;
                        }
                        pick[j] = 0;
                    }
                }
            }
        }
    }

    /// Checks a table `phi: T(self) x other` for the distributor laws: both
    /// actions `phi o a` and `b o phi` must equal `phi`. Inflation is
    /// automatic from reflexivity, so only deflation can fail.
    pub fn check_distributor(&self, other: &TCategory, phi: &VMatrix) -> Result<Option<String>> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch);
        }
        let rel = TRelation::new(self.theory.clone(), self.n, other.n, phi.clone())?;
        let right = kleisli_convolution(&self.structure_rel(), &rel)?;
        if right.mat != *phi {
            return Ok(Some("phi o a differs from phi".to_string()));
        }
        let left = kleisli_convolution(&rel, &other.structure_rel())?;
        if left.mat != *phi {
            return Ok(Some("b o phi differs from phi".to_string()));
        }
        Ok(None)
    }

    /// Binary tensor: carrier is the product, structure
    /// `c(w, (x, y)) = a(T pi1 w, x) (x) b(T pi2 w, y)`.
    pub fn tensor(&self, other: &TCategory) -> Result<TCategory> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch);
        }
        let (n1, n2) = (self.n, other.n);
        let n = n1 * n2;
        let th = &self.theory;
        let rows = th.t_size_checked(n, th.word_bound().unwrap_or(0))?;
        let q = self.quantale().clone();
        let p1: Vec<usize> = (0..n).map(|i| i / n2).collect();
        let p2: Vec<usize> = (0..n).map(|i| i % n2).collect();
        let a = VMatrix::from_fn(q.clone(), rows, n, |w, i| {
            let w1 = th.t_apply(n, n1, &p1, w);
            let w2 = th.t_apply(n, n2, &p2, w);
            q.tensor(self.a.at(w1, p1[i]), other.a.at(w2, p2[i]))
        });
        let labels = (0..n)
            .map(|i| format!("({},{})", self.labels[p1[i]], other.labels[p2[i]]))
            .collect();
        TCategory::new(th.clone(), labels, a)
    }

    /// Exponential `other^self`. The carrier consists of the maps
    /// `h: self -> other` that are morphisms from `free_point (x) self`,
    /// and the structure is
    /// `d(p, h) = meet over q |-> p, x of hom(a(T pi2 q, x), b(T ev q, h x))`.
    /// Also returns the carrier maps in enumeration order.
    pub fn exponential(&self, other: &TCategory) -> Result<(TCategory, Vec<Vec<usize>>)> {
        if self.theory != other.theory {
            return Err(Error::TheoryMismatch);
        }
        let th = self.theory.clone();
        let q = self.quantale().clone();
        let gate = TCategory::free_point(th.clone()).tensor(self)?;

        let total = (other.n as u64).checked_pow(self.n as u32);
        match total {
            Some(t) if t <= TABLE_BUDGET as u64 => {}
            _ => {
                return Err(Error::SearchSpaceTooLarge(format!(
                    "{}^{} candidate maps",
                    other.n, self.n
                )))
            }
        }
        let mut maps: Vec<Vec<usize>> = Vec::new();
        let mut h = vec![0usize; self.n];
        loop {
            if gate.check_functor(other, &h)?.is_none() {
                maps.push(h.clone());
            }
            let mut j = self.n;
            loop {
                if j == 0 {
                    break;
                }
                j -= 1;
                h[j] += 1;
                if h[j] < other.n {
                    break;
                }
                h[j] = 0;
            }
            if h.iter().all(|&v| v == 0) {
                break;
            }
        }
        let f = maps.len();
        if f == 0 {
            return Err(Error::BadParameter("exponential has an empty carrier".into()));
        }

        // Pairs (h, x), with projections and evaluation.
        let m = f * self.n;
        let bound = th.word_bound().unwrap_or(0);
        let t_pairs = th.t_size_checked(m, bound)?;
        let t_f = th.t_size_checked(f, bound)?;
        if t_pairs
            .checked_mul(self.n)
            .and_then(|c| c.checked_mul(f))
            .map_or(true, |c| c > TABLE_BUDGET)
        {
            return Err(Error::SearchSpaceTooLarge("exponential structure table".into()));
        }
        let pr_h: Vec<usize> = (0..m).map(|i| i / self.n).collect();
        let pr_x: Vec<usize> = (0..m).map(|i| i % self.n).collect();
        let ev: Vec<usize> = (0..m).map(|i| maps[pr_h[i]][pr_x[i]]).collect();

        let mut d = VMatrix::constant(q.clone(), t_f, f, q.top());
        for pair_w in 0..t_pairs {
            let p = th.t_apply(m, f, &pr_h, pair_w);
            let wx = th.t_apply(m, self.n, &pr_x, pair_w);
            let wy = th.t_apply(m, other.n, &ev, pair_w);
            for x in 0..self.n {
                let ante = self.a.at(wx, x);
                for (hi, map) in maps.iter().enumerate() {
                    let cons = other.a.at(wy, map[x]);
                    let cell = d.at(p, hi);
                    d.set(p, hi, q.meet(cell, q.hom(ante, cons)));
                }
            }
        }
        let labels = maps
            .iter()
            .map(|map| {
                let parts: Vec<String> = map
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}>{}", self.labels[x], other.labels[y]))
                    .collect();
                format!("[{}]", parts.join(" "))
            })
            .collect();
        let cat = TCategory::new(th, labels, d)?;
        Ok((cat, maps))
    }

    /// Core-compactness: `a . (Barr a) = a . m` on flatten-defined outer
    /// words. Returns the first witness when the equality fails.
    pub fn is_core_compact(&self) -> Result<Option<String>> {
        let th = &self.theory;
        let q = self.quantale().clone();
        match th.kind {
            MonadKind::Identity | MonadKind::UFin => {
                // Barr a = a and m = id, so the law is a . a = a; the join
                // side is <= by transitivity and >= by reflexivity, but the
                // table may violate the laws, so compute both sides anyway.
                let comp = VMatrix::compose(&self.a, &self.a)?;
                match comp.le(&self.a)?.err().or(self.a.le(&comp)?.err()) {
                    None => Ok(None),
                    Some((x, y)) => Ok(Some(format!(
                        "at ({}, {})",
                        self.labels[x], self.labels[y]
                    ))),
                }
            }
            MonadKind::Word { bound } => {
                let tn = th.t_size(self.n);
                let mut stack: Vec<Vec<usize>> = vec![Vec::new()];
                while let Some(outer) = stack.pop() {
                    if let Some(flat) = th.flatten(self.n, bound, bound, &outer) {
                        let mids = words_of_len(self.n, outer.len());
                        for x in 0..self.n {
                            let mut lhs = q.bottom();
                            for mid in &mids {
                                let mut t_full = q.unit();
                                for (&wi, &mltr) in outer.iter().zip(mid.iter()) {
                                    t_full = q.tensor(t_full, self.a.at(wi, mltr));
                                }
                                let mid_idx = crate::theory::index_of_word(self.n, mid);
                                lhs = q.join(lhs, q.tensor(t_full, self.a.at(mid_idx, x)));
                            }
                            if lhs != self.a.at(flat, x) {
                                return Ok(Some(format!(
                                    "outer {}, target {}: joined {} vs direct {}",
                                    render_outer(th, self.n, bound, &outer, &self.labels),
                                    self.labels[x],
                                    q.label(lhs),
                                    q.label(self.a.at(flat, x))
                                )));
                            }
                        }
                    }
                    if outer.len() < bound {
                        for wi in 0..tn {
                            let mut next = outer.clone();
                            next.push(wi);
                            stack.push(next);
                        }
                    }
                }
                Ok(None)
            }
        }
    }

    /// Collapses isomorphic points: the quotient keeps the least index of
    /// each class and returns the projection alongside it. The induced
    /// tables are well defined because isomorphic points have equal rows
    /// and columns.
    pub fn separated_quotient(&self) -> Result<(TCategory, Vec<usize>)> {
        if !self.theory.is_identity_like() {
            return Err(Error::TheoryNotSupported(
                "separated quotients are computed for identity-like theories only".into(),
            ));
        }
        let mut reps: Vec<usize> = Vec::new();
        let mut proj = vec![0usize; self.n];
        for x in 0..self.n {
            match reps
                .iter()
                .position(|&r| self.point_le(r, x) && self.point_le(x, r))
            {
                Some(pos) => proj[x] = pos,
                None => {
                    proj[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let a = VMatrix::from_fn(self.quantale().clone(), reps.len(), reps.len(), |i, j| {
            self.a.at(reps[i], reps[j])
        });
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        Ok((TCategory::new(self.theory.clone(), labels, a)?, proj))
    }

    /// Full substructure on a subset of the carrier (indices must be
    /// strictly increasing).
    pub fn full_subcategory(&self, keep: &[usize]) -> Result<TCategory> {
        if keep.windows(2).any(|w| w[0] >= w[1]) || keep.iter().any(|&i| i >= self.n) {
            return Err(Error::BadParameter("subset must be strictly increasing indices".into()));
        }
        let m = keep.len();
        let th = &self.theory;
        let rows = th.t_size(m);
        let a = VMatrix::from_fn(self.quantale().clone(), rows, m, |w, j| {
            let inc = th.t_apply(m, self.n, keep, w);
            self.a.at(inc, keep[j])
        });
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        TCategory::new(th.clone(), labels, a)
    }

    /// The lifted structure on TX: two elements of TX are related by the
    /// best decomposition `s(W, v) = join over Z with flatten Z = flatten W
    /// of (Barr a)(Z, v)`, flattenings compared as genuine words (they may
    /// exceed the bound). For identity-like theories this is the structure
    /// itself.
    pub fn lift_carrier(&self) -> Result<TCategory> {
        let th = &self.theory;
        match th.kind {
            MonadKind::Identity | MonadKind::UFin => Ok(self.clone()),
            MonadKind::Word { bound } => {
                let q = self.quantale().clone();
                let tn = th.t_size(self.n);
                let t_t = th.t_size_checked(tn, bound)?;
                if t_t.saturating_mul(tn) > TABLE_BUDGET {
                    return Err(Error::SearchSpaceTooLarge("lifted structure table".into()));
                }
                // Group outer words by their genuine flattening.
                let mut groups: std::collections::HashMap<Vec<usize>, Vec<usize>> =
                    std::collections::HashMap::new();
                for w_idx in 0..t_t {
                    let outer = crate::theory::word_of_index(tn, bound, w_idx);
                    let mut flat = Vec::new();
                    for &wi in &outer {
                        flat.extend(crate::theory::word_of_index(self.n, bound, wi));
                    }
                    groups.entry(flat).or_default().push(w_idx);
                }
                let mut s = VMatrix::constant(q.clone(), t_t, tn, q.bottom());
                for members in groups.values() {
                    // One row of joins per group, shared by all members.
                    let mut row = vec![q.bottom(); tn];
                    for &w_idx in members {
                        let outer = crate::theory::word_of_index(tn, bound, w_idx);
                        for (v_idx, cell) in row.iter_mut().enumerate() {
                            let v = crate::theory::word_of_index(self.n, bound, v_idx);
                            if v.len() != outer.len() {
                                continue;
                            }
                            let mut acc = q.unit();
                            for (&zi, &vi) in outer.iter().zip(v.iter()) {
                                acc = q.tensor(acc, self.a.at(zi, vi));
                            }
                            *cell = q.join(*cell, acc);
                        }
                    }
                    for &w_idx in members {
                        for (v_idx, &val) in row.iter().enumerate() {
                            s.set(w_idx, v_idx, val);
                        }
                    }
                }
                let labels = (0..tn)
                    .map(|i| th.t_elem(self.n, bound, i).render(&self.labels))
                    .collect();
                TCategory::new(th.clone(), labels, s)
            }
        }
    }
}

fn render_outer(
    th: &Theory,
    n: usize,
    bound: usize,
    outer: &[usize],
    labels: &[String],
) -> String {
    let parts: Vec<String> = outer
        .iter()
        .map(|&wi| th.t_elem(n, bound, wi).render(labels))
        .collect();
    format!("({})", parts.join(","))
}

/// All words of exactly `len` letters over an n-point carrier.
fn words_of_len(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for x in 0..n {
                let mut w2 = w.clone();
                w2.push(x);
                next.push(w2);
            }
        }
        out = next;
    }
    out
}
