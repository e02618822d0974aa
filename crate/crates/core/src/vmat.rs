//! Matrices valued in a quantale, with relational composition and the two
//! Kan operations (extension and lifting).
//!
//! A matrix `r: X -/-> Y` stores `r(x, y)` densely, row-major in `x`.
//! Composition follows the applicative order: `(s . r)(x, z) =
//! join_y r(x, y) (x) s(y, z)`, so the right factor acts first. Extensions
//! solve `s . t <= r  iff  s <= extend(r, t)` (shared source), liftings solve
//! `t . u <= s  iff  u <= lift(t, s)` (shared target).

use crate::error::{Error, Result};
use crate::quantale::{QValue, Quantale};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VMatrix {
    q: Arc<Quantale>,
    src: usize,
    dst: usize,
    data: Vec<QValue>,
}

impl VMatrix {
    pub fn new(q: Arc<Quantale>, src: usize, dst: usize, data: Vec<QValue>) -> Result<Self> {
        if data.len() != src * dst {
            return Err(Error::ShapeMismatch(format!(
                "matrix {src}x{dst} needs {} entries, got {}",
                src * dst,
                data.len()
            )));
        }
        if data.iter().any(|v| v.idx() >= q.size()) {
            return Err(Error::BadParameter("matrix entry outside carrier".into()));
        }
        Ok(VMatrix { q, src, dst, data })
    }

    pub fn from_fn(
        q: Arc<Quantale>,
        src: usize,
        dst: usize,
        mut f: impl FnMut(usize, usize) -> QValue,
    ) -> Self {
        let mut data = Vec::with_capacity(src * dst);
        for x in 0..src {
            for y in 0..dst {
                data.push(f(x, y));
            }
        }
        VMatrix { q, src, dst, data }
    }

    pub fn constant(q: Arc<Quantale>, src: usize, dst: usize, v: QValue) -> Self {
        VMatrix { q, src, dst, data: vec![v; src * dst] }
    }

    pub fn quantale(&self) -> &Arc<Quantale> {
        &self.q
    }

    pub fn src(&self) -> usize {
        self.src
    }

    pub fn dst(&self) -> usize {
        self.dst
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> QValue {
        self.data[x * self.dst + y]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: QValue) {
        self.data[x * self.dst + y] = v;
    }

    pub fn data(&self) -> &[QValue] {
        &self.data
    }

    fn check_q(&self, other: &VMatrix) -> Result<()> {
        if self.q != other.q {
            return Err(Error::QuantaleMismatch);
        }
        Ok(())
    }

    /// Identity matrix: unit on the diagonal, bottom elsewhere.
    pub fn identity(q: Arc<Quantale>, n: usize) -> Self {
        let k = q.unit();
        let bot = q.bottom();
        VMatrix::from_fn(q, n, n, |x, y| if x == y { k } else { bot })
    }

    /// Graph of a function: unit at (x, f(x)), bottom elsewhere.
    pub fn graph(q: Arc<Quantale>, dst: usize, f: &[usize]) -> Self {
        let k = q.unit();
        let bot = q.bottom();
        VMatrix::from_fn(q, f.len(), dst, |x, y| if f[x] == y { k } else { bot })
    }

    /// `(s . r)(x, z) = join_y r(x, y) (x) s(y, z)`; `r` acts first.
    pub fn compose(s: &VMatrix, r: &VMatrix) -> Result<VMatrix> {
        s.check_q(r)?;
        if r.dst != s.src {
            return Err(Error::ShapeMismatch(format!(
                "compose: inner dimensions {} vs {}",
                r.dst, s.src
            )));
        }
        let q = s.q.clone();
        Ok(VMatrix::from_fn(q.clone(), r.src, s.dst, |x, z| {
            q.join_all((0..r.dst).map(|y| q.tensor(r.at(x, y), s.at(y, z))))
        }))
    }

    /// Transpose: `r°(y, x) = r(x, y)`.
    pub fn involution(&self) -> VMatrix {
        VMatrix::from_fn(self.q.clone(), self.dst, self.src, |y, x| self.at(x, y))
    }

    /// Extension along a shared source: for `r: X -/-> Y`, `t: X -/-> Z`,
    /// `extend(r, t)(z, y) = meet_x hom(t(x, z), r(x, y))`.
    pub fn extend(r: &VMatrix, t: &VMatrix) -> Result<VMatrix> {
        r.check_q(t)?;
        if r.src != t.src {
            return Err(Error::ShapeMismatch(format!(
                "extend: sources {} vs {}",
                r.src, t.src
            )));
        }
        let q = r.q.clone();
        Ok(VMatrix::from_fn(q.clone(), t.dst, r.dst, |z, y| {
            q.meet_all((0..r.src).map(|x| q.hom(t.at(x, z), r.at(x, y))))
        }))
    }

    /// Lifting through a shared target: for `t: X -/-> Z`, `s: Y -/-> Z`,
    /// `lift(t, s)(y, x) = meet_z hom(t(x, z), s(y, z))`.
    pub fn lift(t: &VMatrix, s: &VMatrix) -> Result<VMatrix> {
        t.check_q(s)?;
        if t.dst != s.dst {
            return Err(Error::ShapeMismatch(format!(
                "lift: targets {} vs {}",
                t.dst, s.dst
            )));
        }
        let q = t.q.clone();
        Ok(VMatrix::from_fn(q.clone(), s.src, t.src, |y, x| {
            q.meet_all((0..t.dst).map(|z| q.hom(t.at(x, z), s.at(y, z))))
        }))
    }

    /// Cellwise order; on violation returns the first offending cell.
    pub fn le(&self, other: &VMatrix) -> Result<std::result::Result<(), (usize, usize)>> {
        self.check_q(other)?;
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::ShapeMismatch(format!(
                "le: {}x{} vs {}x{}",
                self.src, self.dst, other.src, other.dst
            )));
        }
        for x in 0..self.src {
            for y in 0..self.dst {
                if !self.q.le(self.at(x, y), other.at(x, y)) {
                    return Ok(Err((x, y)));
                }
            }
        }
        Ok(Ok(()))
    }

    pub fn le_ok(&self, other: &VMatrix) -> bool {
        matches!(self.le(other), Ok(Ok(())))
    }

    pub fn join(&self, other: &VMatrix) -> Result<VMatrix> {
        self.check_q(other)?;
        if self.src != other.src || self.dst != other.dst {
            return Err(Error::ShapeMismatch("join: shapes differ".into()));
        }
        Ok(VMatrix::from_fn(self.q.clone(), self.src, self.dst, |x, y| {
            self.q.join(self.at(x, y), other.at(x, y))
        }))
    }
}
