//! Monad-plus-quantale theories over finite carriers.
//!
//! A theory couples a Set-monad T with a quantale V and an action
//! `xi: TV -> V`. Three monads are supported:
//!
//! * `identity`: TX = X, xi = id.
//! * `ufin`: alias of `identity`. Ultrafilters on a finite set are exactly
//!   the principal ones, so the finite fragment of the ultrafilter monad is
//!   the identity monad.
//! * `word(L)`: words of length at most L, unit = one-letter word,
//!   multiplication = flattening (partial at the bound), xi = tensor fold.
//!
//! Word-monad data is truncated at the bound L. A relation table on `TX`
//! denotes a relation on the full word monad that vanishes beyond the bound;
//! under that reading every composite below is computed exactly, with middle
//! words enumerated up to the middle relation's own bound rather than L.
//! Every result obtained under a word theory is only certified "up to
//! bound L" by callers.
//!
//! Words are indexed by length, then lexicographically; index 0 is the empty
//! word and indices 1..=n are the one-letter words.

use crate::error::{Error, Result};
use crate::quantale::{QValue, Quantale};
use crate::vmat::VMatrix;
use std::sync::Arc;

pub const ENUM_BUDGET: usize = 1 << 26;
pub const MAX_WORD_BOUND: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonadKind {
    Identity,
    UFin,
    Word { bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theory {
    pub kind: MonadKind,
    pub quantale: Arc<Quantale>,
}

/// An element of TX, for display and for definition files.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TElem {
    Base(usize),
    Word(Vec<usize>),
}

impl TElem {
    pub fn render(&self, labels: &[String]) -> String {
        match self {
            TElem::Base(x) => labels[*x].clone(),
            TElem::Word(w) => {
                let parts: Vec<&str> = w.iter().map(|&x| labels[x].as_str()).collect();
                format!("({})", parts.join(","))
            }
        }
    }
}

impl Theory {
    pub fn new(kind: MonadKind, quantale: Arc<Quantale>) -> Result<Theory> {
        if let MonadKind::Word { bound } = kind {
            if bound == 0 || bound > MAX_WORD_BOUND {
                return Err(Error::BadParameter(format!(
                    "word bound must be in 1..={MAX_WORD_BOUND}, got {bound}"
                )));
            }
        }
        Ok(Theory { kind, quantale })
    }

    pub fn identity(quantale: Arc<Quantale>) -> Theory {
        Theory { kind: MonadKind::Identity, quantale }
    }

    pub fn is_identity_like(&self) -> bool {
        matches!(self.kind, MonadKind::Identity | MonadKind::UFin)
    }

    /// Word bound, if this is a word theory.
    pub fn word_bound(&self) -> Option<usize> {
        match self.kind {
            MonadKind::Word { bound } => Some(bound),
            _ => None,
        }
    }

    pub fn t_size_at(&self, n: usize, bound: usize) -> usize {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => n,
            MonadKind::Word { .. } => {
                if n == 0 {
                    return 1;
                }
                let mut total = 1usize;
                let mut pw = 1usize;
                for _ in 0..bound {
                    pw = pw.checked_mul(n).expect("word table overflow");
                    total = total.checked_add(pw).expect("word table overflow");
                }
                total
            }
        }
    }

    /// Size of TX at the theory's own bound.
    pub fn t_size(&self, n: usize) -> usize {
        self.t_size_at(n, self.word_bound().unwrap_or(0))
    }

    pub fn t_size_checked(&self, n: usize, bound: usize) -> Result<usize> {
        let s = self.t_size_at(n, bound);
        if s > ENUM_BUDGET {
            return Err(Error::SearchSpaceTooLarge(format!("|TX| = {s}")));
        }
        Ok(s)
    }

    /// Index of the unit element e(x) in TX.
    pub fn e_index(&self, _n: usize, x: usize) -> usize {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => x,
            MonadKind::Word { .. } => 1 + x,
        }
    }

    /// Decodes a TX index. Identity-like theories yield `Base`.
    pub fn t_elem(&self, n: usize, bound: usize, idx: usize) -> TElem {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => TElem::Base(idx),
            MonadKind::Word { .. } => TElem::Word(word_of_index(n, bound, idx)),
        }
    }

    pub fn t_index(&self, n: usize, elem: &TElem) -> Result<usize> {
        match (self.kind, elem) {
            (MonadKind::Identity | MonadKind::UFin, TElem::Base(x)) => {
                if *x < n {
                    Ok(*x)
                } else {
                    Err(Error::BadParameter("element outside carrier".into()))
                }
            }
            (MonadKind::Word { bound }, TElem::Word(w)) => {
                if w.len() > bound {
                    return Err(Error::BoundExceeded(format!(
                        "word of length {} at bound {bound}",
                        w.len()
                    )));
                }
                if w.iter().any(|&x| x >= n) {
                    return Err(Error::BadParameter("letter outside carrier".into()));
                }
                Ok(index_of_word(n, w))
            }
            _ => Err(Error::BadParameter("element does not match the theory".into())),
        }
    }

    /// All of TX at the theory's bound, in index order.
    pub fn enumerate(&self, n: usize) -> Vec<TElem> {
        let size = self.t_size(n);
        (0..size)
            .map(|i| self.t_elem(n, self.word_bound().unwrap_or(0), i))
            .collect()
    }

    /// Word tables for internal loops; identity-like theories get `None`.
    fn words(&self, n: usize, bound: usize) -> Option<Vec<Vec<usize>>> {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => None,
            MonadKind::Word { .. } => {
                let size = self.t_size_at(n, bound);
                Some((0..size).map(|i| word_of_index(n, bound, i)).collect())
            }
        }
    }

    /// Tf on indices: applies f letterwise.
    pub fn t_apply(&self, n_src: usize, n_dst: usize, f: &[usize], idx: usize) -> usize {
        self.t_apply_at(n_src, n_dst, self.word_bound().unwrap_or(0), f, idx)
    }

    pub fn t_apply_at(
        &self,
        n_src: usize,
        n_dst: usize,
        bound: usize,
        f: &[usize],
        idx: usize,
    ) -> usize {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => f[idx],
            MonadKind::Word { .. } => {
                let w = word_of_index(n_src, bound, idx);
                let img: Vec<usize> = w.iter().map(|&x| f[x]).collect();
                let _ = n_dst;
                index_of_word(n_dst, &img)
            }
        }
    }

    /// Pointwise action of xi on a word of quantale values.
    pub fn xi(&self, word: &[QValue]) -> QValue {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => word[0],
            MonadKind::Word { .. } => {
                let q = &self.quantale;
                word.iter().fold(q.unit(), |a, &b| q.tensor(a, b))
            }
        }
    }

    /// Barr extension of a matrix `r: X -/-> Y` to `TX -/-> TY` at `bound`.
    ///
    /// Words of different lengths are unrelated (bottom); equal lengths pair
    /// letterwise under the tensor; the empty pair carries the unit.
    pub fn barr_extend_at(&self, r: &VMatrix, bound: usize) -> VMatrix {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => r.clone(),
            MonadKind::Word { .. } => {
                let q = r.quantale().clone();
                let (n, m) = (r.src(), r.dst());
                let rows = self.t_size_at(n, bound);
                let cols = self.t_size_at(m, bound);
                let xs = self.words(n, bound).unwrap();
                let ys = self.words(m, bound).unwrap();
                VMatrix::from_fn(q.clone(), rows, cols, |i, j| {
                    let (w, v) = (&xs[i], &ys[j]);
                    if w.len() != v.len() {
                        return q.bottom();
                    }
                    let mut acc = q.unit();
                    for (&x, &y) in w.iter().zip(v.iter()) {
                        acc = q.tensor(acc, r.at(x, y));
                    }
                    acc
                })
            }
        }
    }

    pub fn barr_extend(&self, r: &VMatrix) -> VMatrix {
        self.barr_extend_at(r, self.word_bound().unwrap_or(0))
    }

    /// The unit transpose e° as a matrix `TX -/-> X`.
    pub fn e_op(&self, n: usize) -> VMatrix {
        let q = self.quantale.clone();
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => VMatrix::identity(q, n),
            MonadKind::Word { bound } => {
                let rows = self.t_size_at(n, bound);
                let k = q.unit();
                let bot = q.bottom();
                VMatrix::from_fn(q, rows, n, |i, x| {
                    if i == self.e_index(n, x) {
                        k
                    } else {
                        bot
                    }
                })
            }
        }
    }

    /// Flattening m: T(TX) -> TX on indices. `None` when the flattened word
    /// exceeds `out_bound`. The outer carrier is TX at `inner_bound`.
    pub fn flatten(
        &self,
        n: usize,
        inner_bound: usize,
        out_bound: usize,
        outer: &[usize],
    ) -> Option<usize> {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => Some(outer[0]),
            MonadKind::Word { .. } => {
                let mut flat = Vec::new();
                for &wi in outer {
                    flat.extend_from_slice(&word_of_index(n, inner_bound, wi));
                    if flat.len() > out_bound {
                        return None;
                    }
                }
                Some(index_of_word(n, &flat))
            }
        }
    }

    /// The composite `(Barr alpha) . m°` as a matrix `T_out X -/-> T_mid Y`
    /// for `alpha: X -/-> Y` given on `T_alpha X`:
    ///
    /// cell (w, v) = join over splittings of w into |v| consecutive,
    /// possibly empty blocks of the tensor of alpha(block_i, v_i).
    ///
    /// Computed by dynamic programming over prefixes of w along the tree of
    /// middle words. Exact for tables that vanish beyond their bound.
    pub fn flatten_extension(
        &self,
        alpha: &VMatrix,
        alpha_bound: usize,
        out_bound: usize,
        mid_bound: usize,
    ) -> Result<VMatrix> {
        match self.kind {
            MonadKind::Identity | MonadKind::UFin => Ok(alpha.clone()),
            MonadKind::Word { .. } => {
                if out_bound > alpha_bound {
                    return Err(Error::BoundExceeded(format!(
                        "output bound {out_bound} above stored bound {alpha_bound}"
                    )));
                }
                let q = alpha.quantale().clone();
                let m = alpha.dst();
                let n = src_carrier(alpha.src(), alpha_bound);
                let rows = self.t_size_at(n, out_bound);
                let cols = self.t_size_checked(m, mid_bound)?;
                let ws = self.words(n, out_bound).unwrap();
                let mut out = VMatrix::constant(q.clone(), rows, cols, q.bottom());
                // Per row w: dp[v][p] = best over splittings of w[0..p] into
                // |v| blocks; children extend v by one letter and one block.
                for (i, w) in ws.iter().enumerate() {
                    let plen = w.len() + 1;
                    let mut dp = vec![q.bottom(); cols * plen];
                    dp[0] = q.unit(); // empty middle word, empty prefix
                    // Middle words in index order are already sorted by
                    // length, so parents precede children.
                    for v_idx in 0..cols {
                        let vlen = word_len(m, v_idx);
                        if vlen >= mid_bound {
                            continue;
                        }
                        for y in 0..m {
                            let child = extend_word_index(m, v_idx, vlen, y);
                            for p in 0..plen {
                                let base = dp[v_idx * plen + p];
                                if base == q.bottom() {
                                    continue;
                                }
                                for p2 in p..plen {
                                    let block = index_of_subword(n, &w[p..p2]);
                                    let val = q.tensor(base, alpha.at(block, y));
                                    let cell = &mut dp[child * plen + p2];
                                    *cell = q.join(*cell, val);
                                }
                            }
                        }
                    }
                    for v_idx in 0..cols {
                        out.set(i, v_idx, dp[v_idx * plen + w.len()]);
                    }
                }
                Ok(out)
            }
        }
    }
}

/// A relation `X -/-> Y` in the Kleisli-style calculus: a matrix
/// `TX -/-> Y` whose row space is enumerated at `src_bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TRelation {
    pub theory: Theory,
    pub src: usize,
    pub dst: usize,
    pub src_bound: usize,
    pub mat: VMatrix,
}

impl TRelation {
    pub fn new(theory: Theory, src: usize, dst: usize, mat: VMatrix) -> Result<TRelation> {
        let src_bound = theory.word_bound().unwrap_or(0);
        TRelation::at_bound(theory, src, dst, src_bound, mat)
    }

    pub fn at_bound(
        theory: Theory,
        src: usize,
        dst: usize,
        src_bound: usize,
        mat: VMatrix,
    ) -> Result<TRelation> {
        if mat.src() != theory.t_size_at(src, src_bound) || mat.dst() != dst {
            return Err(Error::ShapeMismatch(format!(
                "relation table must be {}x{}",
                theory.t_size_at(src, src_bound),
                dst
            )));
        }
        if *mat.quantale() != theory.quantale {
            return Err(Error::QuantaleMismatch);
        }
        Ok(TRelation { theory, src, dst, src_bound, mat })
    }

    /// Re-tabulates at a larger bound, padding new rows with bottom. This is
    /// the explicit "vanishes beyond the bound" reading.
    pub fn extend_bound(&self, new_bound: usize) -> Result<TRelation> {
        if new_bound < self.src_bound {
            return Err(Error::BoundExceeded(format!(
                "cannot shrink bound {} to {new_bound}",
                self.src_bound
            )));
        }
        if self.theory.is_identity_like() || new_bound == self.src_bound {
            return Ok(self.clone());
        }
        let q = self.theory.quantale.clone();
        let rows = self.theory.t_size_checked(self.src, new_bound)?;
        let old_rows = self.mat.src();
        let mat = VMatrix::from_fn(q.clone(), rows, self.dst, |i, y| {
            // Index order is length-then-lex, so old rows keep their indices.
            if i < old_rows {
                self.mat.at(i, y)
            } else {
                q.bottom()
            }
        });
        TRelation::at_bound(self.theory.clone(), self.src, self.dst, new_bound, mat)
    }

    /// The unit transpose e° as a relation X -/-> X.
    pub fn unit_op(theory: &Theory, n: usize) -> TRelation {
        let mat = theory.e_op(n);
        TRelation::new(theory.clone(), n, n, mat).expect("unit shape")
    }
}

/// Kleisli convolution `beta o alpha = beta . (Barr alpha) . m°`, tabulated
/// at `out_bound`.
///
/// Middle words range over TY at `beta.src_bound`, so the composite is exact
/// for tables that vanish beyond their bounds. Requesting an output bound
/// above `alpha.src_bound` is refused: those rows are not stored.
pub fn kleisli_at(alpha: &TRelation, beta: &TRelation, out_bound: usize) -> Result<TRelation> {
    if alpha.theory != beta.theory {
        return Err(Error::TheoryMismatch);
    }
    if alpha.dst != beta.src {
        return Err(Error::ShapeMismatch(format!(
            "convolution: inner carriers {} vs {}",
            alpha.dst, beta.src
        )));
    }
    if out_bound > alpha.src_bound {
        return Err(Error::BoundExceeded(format!(
            "convolution at bound {out_bound} over a table stored at {}",
            alpha.src_bound
        )));
    }
    let th = &alpha.theory;
    if th.is_identity_like() {
        let mat = VMatrix::compose(&beta.mat, &alpha.mat)?;
        return TRelation::new(th.clone(), alpha.src, beta.dst, mat);
    }
    let t = th.flatten_extension(&alpha.mat, alpha.src_bound, out_bound, beta.src_bound)?;
    let mat = VMatrix::compose(&beta.mat, &t)?;
    TRelation::at_bound(th.clone(), alpha.src, beta.dst, out_bound, mat)
}

/// Kleisli convolution at the left factor's own bound.
pub fn kleisli_convolution(alpha: &TRelation, beta: &TRelation) -> Result<TRelation> {
    kleisli_at(alpha, beta, alpha.src_bound)
}

/// Right extension along `alpha` in the convolution calculus: the largest
/// `beta: Y -/-> Z` (rows tabulated at `out_src_bound`) with
/// `beta o alpha <= gamma`. For identity-like theories this is the plain
/// matrix extension; for the word monad the convolution's middle factor
/// `(Barr alpha) . m°` is residuated away cellwise.
pub fn dist_extend(
    gamma: &TRelation,
    alpha: &TRelation,
    out_src_bound: usize,
) -> Result<TRelation> {
    if gamma.theory != alpha.theory {
        return Err(Error::TheoryMismatch);
    }
    if gamma.src != alpha.src {
        return Err(Error::ShapeMismatch(format!(
            "extension: sources {} vs {}",
            gamma.src, alpha.src
        )));
    }
    let th = &gamma.theory;
    if th.is_identity_like() {
        let mat = VMatrix::extend(&gamma.mat, &alpha.mat)?;
        return TRelation::new(th.clone(), alpha.dst, gamma.dst, mat);
    }
    let t = th.flatten_extension(&alpha.mat, alpha.src_bound, gamma.src_bound, out_src_bound)?;
    let mat = VMatrix::extend(&gamma.mat, &t)?;
    TRelation::at_bound(th.clone(), alpha.dst, gamma.dst, out_src_bound, mat)
}

/// Lifting through a one-point target: the largest `chi: Y -/-> 1` with
/// `psi o chi <= phi`, for `psi: 1 -/-> X` and `phi: Y -/-> X`. Only the
/// unit row of `psi` matters, so the lifting exists even though general
/// convolution liftings may not.
pub fn dist_lift_from_point(psi: &TRelation, phi: &TRelation) -> Result<TRelation> {
    if psi.theory != phi.theory {
        return Err(Error::TheoryMismatch);
    }
    if psi.src != 1 || psi.dst != phi.dst {
        return Err(Error::ShapeMismatch(format!(
            "lifting: need 1 -/-> {}, got {} -/-> {}",
            phi.dst, psi.src, psi.dst
        )));
    }
    let th = &psi.theory;
    let q = th.quantale.clone();
    let e_row = th.e_index(1, 0);
    let unit_part = VMatrix::from_fn(q, 1, psi.dst, |_, y| psi.mat.at(e_row, y));
    let mat = VMatrix::lift(&unit_part, &phi.mat)?;
    TRelation::at_bound(th.clone(), phi.src, 1, phi.src_bound, mat)
}

/// Outcome of a law validation: a (possibly empty) list of violated laws,
/// each with a concrete witness.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LawCheck {
    pub violations: Vec<(String, String)>,
}

impl LawCheck {
    pub fn push(&mut self, law: &str, witness: String) {
        self.violations.push((law.to_string(), witness));
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some((law, witness)) => Err(Error::AxiomViolation(format!("{law}: {witness}"))),
        }
    }
}

/// Validates the action `xi` of a theory against the monad and quantale.
///
/// Covered diagrams, each quantified over every enumerable element at the
/// theory's bound (pair enumerations stop at `ENUM_BUDGET` cells):
/// unit `xi . e = id`; multiplication `xi . m = xi . T xi` where flattening
/// is defined; strict compatibility with the tensor and its unit; the lax
/// internal-hom square `xi . T hom <= hom . (xi x xi)`. `xi_table`, indexed
/// like TV, substitutes for the builtin fold so corrupted actions can be
/// probed; `None` checks the builtin.
pub fn check_theory_instance(theory: &Theory, xi_table: Option<&[QValue]>) -> LawCheck {
    let q = &theory.quantale;
    let nv = q.size();
    let mut violations = Vec::new();

    let render = |w: &[QValue]| -> String {
        let parts: Vec<&str> = w.iter().map(|&v| q.label(v)).collect();
        format!("({})", parts.join(","))
    };

    match theory.kind {
        MonadKind::Identity | MonadKind::UFin => {
            if let Some(table) = xi_table {
                for (i, &v) in table.iter().enumerate() {
                    if v.idx() != i {
                        violations.push((
                            "action-unit".to_string(),
                            format!("xi({}) = {}", q.label(QValue(i as u8)), q.label(v)),
                        ));
                        break;
                    }
                }
            }
        }
        MonadKind::Word { bound } => {
            let words = all_words(nv, bound);
            let xi_of = |w: &[QValue]| -> QValue {
                match xi_table {
                    None => theory.xi(w),
                    Some(t) => {
                        let raw: Vec<usize> = w.iter().map(|v| v.idx()).collect();
                        t[index_of_word(nv, &raw)]
                    }
                }
            };

            // xi . e = id
            for v in q.elements() {
                let got = xi_of(&[v]);
                if got != v {
                    violations.push((
                        "action-unit".to_string(),
                        format!("xi(({})) = {}", q.label(v), q.label(got)),
                    ));
                }
            }

            // xi . m = xi . T xi on flatten-defined outer words.
            'mult: for outer_len in 0..=bound {
                let mut stack = vec![Vec::<usize>::new()];
                while let Some(pick) = stack.pop() {
                    if pick.len() == outer_len {
                        let mut flat: Vec<QValue> = Vec::new();
                        for &wi in &pick {
                            flat.extend(words[wi].iter().copied());
                        }
                        if flat.len() > bound {
                            continue;
                        }
                        let inner: Vec<QValue> = pick.iter().map(|&wi| xi_of(&words[wi])).collect();
                        let lhs = xi_of(&flat);
                        let rhs = xi_of(&inner);
                        if lhs != rhs {
                            violations.push((
                                "action-multiplication".to_string(),
                                format!("outer word {}", render(&flat)),
                            ));
                            break 'mult;
                        }
                    } else {
                        for wi in 0..words.len() {
                            let mut next = pick.clone();
                            next.push(wi);
                            stack.push(next);
                        }
                    }
                }
            }

            // Tensor and hom squares over words of pairs.
            let mut pair_words: Vec<Vec<(QValue, QValue)>> = vec![Vec::new()];
            let mut frontier: Vec<Vec<(QValue, QValue)>> = vec![Vec::new()];
            for _ in 0..bound {
                let mut next = Vec::new();
                for w in &frontier {
                    for a in q.elements() {
                        for b in q.elements() {
                            let mut w2 = w.clone();
                            w2.push((a, b));
                            next.push(w2);
                        }
                    }
                }
                if pair_words.len() + next.len() > ENUM_BUDGET {
                    break;
                }
                pair_words.extend(next.iter().cloned());
                frontier = next;
            }
            for w in &pair_words {
                let left: Vec<QValue> = w.iter().map(|p| p.0).collect();
                let right: Vec<QValue> = w.iter().map(|p| p.1).collect();
                let tens: Vec<QValue> = w.iter().map(|p| q.tensor(p.0, p.1)).collect();
                let homs: Vec<QValue> = w.iter().map(|p| q.hom(p.0, p.1)).collect();
                let xl = xi_of(&left);
                let xr = xi_of(&right);
                if xi_of(&tens) != q.tensor(xl, xr) {
                    violations.push((
                        "action-tensor".to_string(),
                        format!("pair word {}x{}", render(&left), render(&right)),
                    ));
                    break;
                }
                if !q.le(xi_of(&homs), q.hom(xl, xr)) {
                    violations.push((
                        "action-hom-lax".to_string(),
                        format!("pair word {}x{}", render(&left), render(&right)),
                    ));
                    break;
                }
            }

            // Unit word diagram: xi of a constant-unit word is the unit.
            for len in 0..=bound {
                let w = vec![q.unit(); len];
                if xi_of(&w) != q.unit() {
                    violations.push(("action-unit-word".to_string(), render(&w)));
                    break;
                }
            }
        }
    }

    LawCheck { violations }
}

// ---- word index codec -------------------------------------------------

/// Recovers n from a table size (inverse of t_size for word theories) is not
/// possible in general; flatten_extension instead receives the carrier via
/// the row count at a known bound.
fn src_carrier(rows: usize, bound: usize) -> usize {
    // rows = 1 + n + ... + n^bound; solve by trial. Carriers are small.
    if rows == 1 {
        return 0;
    }
    let mut n = 1usize;
    loop {
        let mut total = 1usize;
        let mut pw = 1usize;
        for _ in 0..bound {
            pw *= n;
            total += pw;
        }
        if total == rows {
            return n;
        }
        assert!(total < rows, "row count {rows} is not a word-table size at bound {bound}");
        n += 1;
    }
}

pub fn index_of_word(n: usize, w: &[usize]) -> usize {
    if w.is_empty() {
        return 0;
    }
    debug_assert!(n > 0);
    let mut offset = 1usize;
    let mut pw = 1usize;
    for _ in 1..w.len() {
        pw *= n;
        offset += pw;
    }
    let mut val = 0usize;
    for &d in w {
        val = val * n + d;
    }
    offset + val
}

fn index_of_subword(n: usize, w: &[usize]) -> usize {
    index_of_word(n, w)
}

pub fn word_of_index(n: usize, bound: usize, idx: usize) -> Vec<usize> {
    if idx == 0 {
        return Vec::new();
    }
    let mut offset = 1usize;
    let mut pw = 1usize;
    let mut len = 1usize;
    loop {
        // idx lies in the block of words of length `len` iff
        // offset <= idx < offset + n^len.
        if idx < offset + pw * n {
            break;
        }
        pw *= n;
        offset += pw;
        len += 1;
        assert!(len <= bound, "index {idx} out of range at bound {bound}");
    }
    let mut val = idx - offset;
    let mut w = vec![0usize; len];
    for slot in w.iter_mut().rev() {
        *slot = val % n;
        val /= n;
    }
    w
}

/// Length of the word at `idx` over an n-letter carrier.
fn word_len(n: usize, idx: usize) -> usize {
    if idx == 0 {
        return 0;
    }
    let mut offset = 1usize;
    let mut pw = 1usize;
    let mut len = 1usize;
    while idx >= offset + pw * n {
        pw *= n;
        offset += pw;
        len += 1;
    }
    len
}

/// Offset of the length-`l` block: 1 + n + ... + n^(l-1).
fn block_offset(n: usize, l: usize) -> usize {
    let mut o = 0usize;
    let mut pw = 1usize;
    for _ in 0..l {
        o += pw;
        pw *= n;
    }
    o
}

/// Index of the word at `idx` (of known length `len`) extended by letter `y`.
fn extend_word_index(n: usize, idx: usize, len: usize, y: usize) -> usize {
    let val = idx - block_offset(n, len);
    block_offset(n, len + 1) + val * n + y
}

fn all_words(n: usize, bound: usize) -> Vec<Vec<QValue>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<QValue>> = vec![Vec::new()];
    for _ in 0..bound {
        let mut next = Vec::new();
        for w in &frontier {
            for v in 0..n {
                let mut w2 = w.clone();
                w2.push(QValue(v as u8));
                next.push(w2);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantale::{pplus_trunc, two};

    fn word_theory(bound: usize) -> Theory {
        Theory::new(MonadKind::Word { bound }, two()).unwrap()
    }

    #[test]
    fn codec_is_length_then_lex() {
        let n = 2;
        assert_eq!(index_of_word(n, &[]), 0);
        assert_eq!(index_of_word(n, &[0]), 1);
        assert_eq!(index_of_word(n, &[1]), 2);
        assert_eq!(index_of_word(n, &[0, 0]), 3);
        assert_eq!(index_of_word(n, &[0, 1]), 4);
        assert_eq!(index_of_word(n, &[1, 0]), 5);
        assert_eq!(index_of_word(n, &[1, 1]), 6);
        for idx in 0..15 {
            let w = word_of_index(n, 3, idx);
            assert_eq!(index_of_word(n, &w), idx);
            assert_eq!(word_len(n, idx), w.len());
        }
        // extend_word_index agrees with push + encode
        for idx in 0..7 {
            let mut w = word_of_index(n, 2, idx);
            for y in 0..n {
                w.push(y);
                assert_eq!(extend_word_index(n, idx, w.len() - 1, y), index_of_word(n, &w));
                w.pop();
            }
        }
    }

    #[test]
    fn enumerate_sizes() {
        let th = word_theory(3);
        assert_eq!(th.t_size(2), 15);
        assert_eq!(th.t_size(1), 4);
        assert_eq!(th.t_size(0), 1);
        let id = Theory::identity(two());
        assert_eq!(id.t_size(5), 5);
        assert_eq!(th.enumerate(2).len(), 15);
        assert_eq!(th.e_index(2, 1), 2);
    }

    #[test]
    fn barr_pairs_letterwise() {
        let th = word_theory(2);
        let q = two();
        let one = q.unit();
        let zero = q.bottom();
        // r: 2 -/-> 2 relating x to x only.
        let r = VMatrix::identity(q.clone(), 2);
        let big = th.barr_extend(&r);
        let i = |w: &[usize]| index_of_word(2, w);
        assert_eq!(big.at(i(&[]), i(&[])), one);
        assert_eq!(big.at(i(&[0]), i(&[0])), one);
        assert_eq!(big.at(i(&[0]), i(&[1])), zero);
        // length mismatch is bottom
        assert_eq!(big.at(i(&[0]), i(&[])), zero);
        assert_eq!(big.at(i(&[0, 1]), i(&[0, 1])), one);
        assert_eq!(big.at(i(&[0, 1]), i(&[0, 0])), zero);
    }

    #[test]
    fn barr_is_functorial_and_involutive() {
        let th = Theory::new(MonadKind::Word { bound: 2 }, pplus_trunc(3).unwrap()).unwrap();
        let q = th.quantale.clone();
        let r = VMatrix::from_fn(q.clone(), 2, 2, |x, y| QValue(((x + 2 * y) % 5) as u8));
        let s = VMatrix::from_fn(q.clone(), 2, 2, |x, y| QValue(((2 * x + y) % 5) as u8));
        let sr = VMatrix::compose(&s, &r).unwrap();
        let lhs = th.barr_extend(&sr);
        let rhs = VMatrix::compose(&th.barr_extend(&s), &th.barr_extend(&r)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(th.barr_extend(&r.involution()), th.barr_extend(&r).involution());
        let id2 = VMatrix::identity(q, 2);
        assert_eq!(th.barr_extend(&id2), VMatrix::identity(th.quantale.clone(), th.t_size(2)));
    }

    #[test]
    fn unit_is_oplax() {
        // e_Y . r <= (Barr r) . e_X for all 2x2 relations over two.
        let th = word_theory(2);
        let q = two();
        for code in 0..16u32 {
            let r = VMatrix::from_fn(q.clone(), 2, 2, |x, y| {
                QValue(((code >> (x * 2 + y)) & 1) as u8)
            });
            let e_x = VMatrix::graph(q.clone(), th.t_size(2), &[th.e_index(2, 0), th.e_index(2, 1)]);
            let lhs = VMatrix::compose(&e_x, &r).unwrap();
            let rhs = VMatrix::compose(&th.barr_extend(&r), &e_x).unwrap();
            assert!(lhs.le_ok(&rhs));
        }
    }

    #[test]
    fn convolution_singleton_example() {
        // One-object carrier over truncated distances; alpha charges a word
        // its length. A convolution square splits w into j blocks (cost |w|
        // in total) and then pays j for the middle word, so the minimum is
        // 0 for the empty word and |w| + 1 otherwise.
        let q = pplus_trunc(4).unwrap();
        let th = Theory::new(MonadKind::Word { bound: 3 }, q.clone()).unwrap();
        let rows = th.t_size(1);
        let alpha = TRelation::new(
            th.clone(),
            1,
            1,
            VMatrix::from_fn(q.clone(), rows, 1, |i, _| QValue(word_len(1, i) as u8)),
        )
        .unwrap();
        let conv = kleisli_convolution(&alpha, &alpha).unwrap();
        for i in 0..rows {
            let len = word_len(1, i);
            let expect = if len == 0 { 0 } else { len + 1 };
            assert_eq!(conv.mat.at(i, 0), QValue(expect as u8), "at length {len}");
        }
        // "Length exactly one" is the unit transpose, hence idempotent.
        let e_rel = TRelation::unit_op(&th, 1);
        let ee = kleisli_convolution(&e_rel, &e_rel).unwrap();
        assert_eq!(ee.mat, e_rel.mat);
    }

    #[test]
    fn lax_unit_laws() {
        // alpha o e° = alpha exactly; e° o alpha >= alpha.
        let th = word_theory(2);
        let q = two();
        let rows = th.t_size(2);
        let e_rel = TRelation::unit_op(&th, 2);
        for code in 0..(1u32 << (rows * 2).min(20)) {
            let alpha = TRelation::new(
                th.clone(),
                2,
                2,
                VMatrix::from_fn(q.clone(), rows, 2, |i, y| {
                    QValue(((code >> ((i * 2 + y) % 20)) & 1) as u8)
                }),
            )
            .unwrap();
            let right = kleisli_convolution(&e_rel, &alpha).unwrap();
            assert_eq!(right.mat, alpha.mat, "alpha o e° must be alpha");
            let left = kleisli_convolution(&alpha, &e_rel).unwrap();
            assert!(alpha.mat.le_ok(&left.mat), "e° o alpha must dominate alpha");
        }
    }

    #[test]
    fn convolution_needs_matching_theories() {
        let th2 = word_theory(2);
        let th3 = word_theory(3);
        let a = TRelation::unit_op(&th2, 1);
        let b = TRelation::unit_op(&th3, 1);
        assert_eq!(kleisli_convolution(&a, &b).unwrap_err(), Error::TheoryMismatch);
    }

    #[test]
    fn bound_extension_pads_with_bottom() {
        let th = word_theory(2);
        let a = TRelation::unit_op(&th, 2);
        let wide = a.extend_bound(4).unwrap();
        assert_eq!(wide.mat.src(), th.t_size_at(2, 4));
        for i in 0..wide.mat.src() {
            for y in 0..2 {
                let expect = if i < a.mat.src() { a.mat.at(i, y) } else { two().bottom() };
                assert_eq!(wide.mat.at(i, y), expect);
            }
        }
        assert!(matches!(
            kleisli_at(&a, &a, 4),
            Err(Error::BoundExceeded(_))
        ));
    }

    #[test]
    fn builtin_actions_check_out() {
        for q in [two(), pplus_trunc(3).unwrap()] {
            for kind in [MonadKind::Identity, MonadKind::UFin, MonadKind::Word { bound: 3 }] {
                let th = Theory::new(kind, q.clone()).unwrap();
                let check = check_theory_instance(&th, None);
                assert!(check.ok(), "{:?} over {}: {:?}", kind, q.name, check.violations);
            }
        }
    }

    #[test]
    fn corrupted_action_is_rejected() {
        let th = word_theory(2);
        let q = two();
        let n = q.size();
        let rows = th.t_size(n);
        // Correct fold, then flip one cell.
        let mut table: Vec<QValue> = (0..rows)
            .map(|i| {
                let w = word_of_index(n, 2, i);
                let vals: Vec<QValue> = w.iter().map(|&d| QValue(d as u8)).collect();
                th.xi(&vals)
            })
            .collect();
        assert!(check_theory_instance(&th, Some(&table)).ok());
        let target = index_of_word(n, &[1, 1]);
        table[target] = q.bottom();
        let check = check_theory_instance(&th, Some(&table));
        assert!(!check.ok());
        assert!(check.into_result().is_err());
    }

    #[test]
    fn word_bound_validation() {
        assert!(Theory::new(MonadKind::Word { bound: 0 }, two()).is_err());
        assert!(Theory::new(MonadKind::Word { bound: 7 }, two()).is_err());
    }

    /// Enumerate every relation of a given shape over `two` as a TRelation.
    fn all_relations(th: &Theory, src: usize, dst: usize, bound: usize) -> Vec<TRelation> {
        let q = th.quantale.clone();
        let rows = th.t_size_at(src, bound);
        let cells = rows * dst;
        (0..(1usize << cells))
            .map(|mask| {
                let data: Vec<QValue> = (0..cells)
                    .map(|i| if mask >> i & 1 == 1 { q.unit() } else { q.bottom() })
                    .collect();
                let mat = VMatrix::new(q.clone(), rows, dst, data).unwrap();
                TRelation::at_bound(th.clone(), src, dst, bound, mat).unwrap()
            })
            .collect()
    }

    #[test]
    fn extension_is_largest_solution_of_the_convolution_inequality() {
        // Identity theory: beta o alpha <= gamma iff beta <= gamma o- alpha,
        // over every beta of the right shape.
        let id = Theory::identity(two());
        for (ga, al) in [(0b1101, 0b0110), (0b1111, 0b0001), (0b1000, 0b1110)] {
            let gamma = all_relations(&id, 2, 2, 0)[ga].clone();
            let alpha = all_relations(&id, 2, 2, 0)[al].clone();
            let ext = dist_extend(&gamma, &alpha, 0).unwrap();
            for beta in all_relations(&id, 2, 2, 0) {
                let composite = kleisli_convolution(&alpha, &beta).unwrap();
                let lhs = composite.mat.le_ok(&gamma.mat);
                let rhs = beta.mat.le_ok(&ext.mat);
                assert_eq!(lhs, rhs);
            }
        }
        // Word monad, one letter, bound 2: same biconditional.
        let th = word_theory(2);
        let gammas = all_relations(&th, 1, 1, 2);
        let alpha = &gammas[0b101]; // relates the empty word and the 2-letter word
        for gamma in &gammas {
            let ext = dist_extend(gamma, alpha, 2).unwrap();
            for beta in all_relations(&th, 1, 1, 2) {
                let composite = kleisli_at(alpha, &beta, 2).unwrap();
                let lhs = composite.mat.le_ok(&gamma.mat);
                let rhs = beta.mat.le_ok(&ext.mat);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn lifting_from_a_point_is_largest_solution() {
        // chi ranges over Y -/-> 1, psi: 1 -/-> X; psi o chi <= phi iff
        // chi <= lifting. Checked exhaustively over two.
        let id = Theory::identity(two());
        let psis = all_relations(&id, 1, 2, 0);
        let phis = all_relations(&id, 2, 2, 0);
        for psi in &psis {
            for phi in &phis {
                let lifted = dist_lift_from_point(psi, phi).unwrap();
                for chi in all_relations(&id, 2, 1, 0) {
                    let composite = kleisli_convolution(&chi, psi).unwrap();
                    let lhs = composite.mat.le_ok(&phi.mat);
                    let rhs = chi.mat.le_ok(&lifted.mat);
                    assert_eq!(lhs, rhs);
                }
            }
        }
        // The derived hom of two weights is the pointwise meet of homs.
        let q = two();
        let psi = psis[0b10].clone();
        let psi2 = psis[0b11].clone();
        let lifted = dist_lift_from_point(&psi, &psi2).unwrap();
        let expected =
            q.meet_all((0..2).map(|x| q.hom(psi.mat.at(0, x), psi2.mat.at(0, x))));
        assert_eq!(lifted.mat.at(0, 0), expected);
    }
}
