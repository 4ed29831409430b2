//! View descriptors: the runtime-rank dope vector `(shape, strides, offset)`
//! together with the coordinate order used for scalar indexing.
//!
//! A descriptor maps a coordinate tuple `c` to the buffer index
//! `offset + Σ strides[j] * c[j]`. Independently of the strides, the
//! descriptor's [`CoordinateOrder`] fixes a bijection between coordinates and
//! scalar indices `0..size` through the *shape strides*:
//!
//! * first-major (FCMO, row-major in 2-D): `u[j] = Π_{k>j} shape[k]`
//! * last-major (LCMO, column-major in 2-D): `u[j] = Π_{k<j} shape[k]`
//!
//! Size, shape strides and a "simple" flag (unstrided with zero offset) are
//! cached on the descriptor; [`ViewDescriptor::check_invariants`] verifies that
//! the caches agree with the primary fields.

use std::fmt;

use crate::checks;
use crate::error::{Error, Result};

/// A coordinate tuple, one entry per axis.
pub type Coordinate = Vec<usize>;

/// Which coordinate is the strongest criterion when ordering coordinate tuples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CoordinateOrder {
    /// First coordinate major order (row-major for matrices).
    FirstMajor,
    /// Last coordinate major order (column-major for matrices).
    #[default]
    LastMajor,
}

impl CoordinateOrder {
    pub fn reversed(self) -> Self {
        match self {
            CoordinateOrder::FirstMajor => CoordinateOrder::LastMajor,
            CoordinateOrder::LastMajor => CoordinateOrder::FirstMajor,
        }
    }
}

impl fmt::Display for CoordinateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoordinateOrder::FirstMajor => f.write_str("fcmo"),
            CoordinateOrder::LastMajor => f.write_str("lcmo"),
        }
    }
}

/// Product of `shape`, `None` on overflow. The empty product is 1.
pub fn checked_size(shape: &[usize]) -> Option<usize> {
    shape.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s))
}

/// Shape strides of `shape` under `order`.
///
/// Each entry is a partial product of `shape`, so this cannot overflow when
/// [`checked_size`] does not.
pub fn shape_strides(shape: &[usize], order: CoordinateOrder) -> Vec<usize> {
    let d = shape.len();
    let mut u = vec![1usize; d];
    match order {
        CoordinateOrder::FirstMajor => {
            for j in (0..d.saturating_sub(1)).rev() {
                u[j] = u[j + 1].wrapping_mul(shape[j + 1]);
            }
        }
        CoordinateOrder::LastMajor => {
            for j in 1..d {
                u[j] = u[j - 1].wrapping_mul(shape[j - 1]);
            }
        }
    }
    u
}

/// Runtime-rank view descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ViewDescriptor {
    shape: Vec<usize>,
    strides: Vec<usize>,
    offset: usize,
    order: CoordinateOrder,
    size: usize,
    shape_strides: Vec<usize>,
    simple: bool,
}

impl ViewDescriptor {
    /// Builds a view from explicit shape, strides and offset.
    ///
    /// Fails if the lengths differ, if any extent is zero, or if the size or
    /// the largest reachable address does not fit in `usize`.
    pub fn new(
        shape: Vec<usize>,
        strides: Vec<usize>,
        offset: usize,
        order: CoordinateOrder,
    ) -> Result<Self> {
        if shape.len() != strides.len() {
            return Err(Error::LengthMismatch {
                shape: shape.len(),
                strides: strides.len(),
            });
        }
        if let Some(axis) = shape.iter().position(|&s| s == 0) {
            return Err(Error::ZeroExtent { axis });
        }
        let size = checked_size(&shape).ok_or(Error::Overflow)?;
        let mut max = offset;
        for (&s, &t) in shape.iter().zip(&strides) {
            let span = t.checked_mul(s - 1).ok_or(Error::Overflow)?;
            max = max.checked_add(span).ok_or(Error::Overflow)?;
        }
        let shape_strides = shape_strides(&shape, order);
        let simple = offset == 0 && strides == shape_strides;
        let view = ViewDescriptor {
            shape,
            strides,
            offset,
            order,
            size,
            shape_strides,
            simple,
        };
        view.debug_check();
        Ok(view)
    }

    /// Builds a view whose strides are the shape strides of `shape` under `order`.
    pub fn unstrided(shape: Vec<usize>, offset: usize, order: CoordinateOrder) -> Result<Self> {
        if let Some(axis) = shape.iter().position(|&s| s == 0) {
            return Err(Error::ZeroExtent { axis });
        }
        checked_size(&shape).ok_or(Error::Overflow)?;
        let strides = shape_strides(&shape, order);
        Self::new(shape, strides, offset, order)
    }

    /// A 0-dimensional view holding the single element at `offset`.
    pub fn scalar(offset: usize) -> Self {
        ViewDescriptor {
            shape: Vec::new(),
            strides: Vec::new(),
            offset,
            order: CoordinateOrder::default(),
            size: 1,
            shape_strides: Vec::new(),
            simple: offset == 0,
        }
    }

    /// Assembles a descriptor from all of its fields, caches included,
    /// without validation. Use [`check_invariants`](Self::check_invariants)
    /// to inspect the result.
    #[allow(clippy::too_many_arguments)]
    pub fn from_raw_parts(
        shape: Vec<usize>,
        strides: Vec<usize>,
        offset: usize,
        order: CoordinateOrder,
        size: usize,
        shape_strides: Vec<usize>,
        simple: bool,
    ) -> Self {
        ViewDescriptor {
            shape,
            strides,
            offset,
            order,
            size,
            shape_strides,
            simple,
        }
    }

    #[inline]
    pub fn dimension(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn shape(&self) -> &[usize] {
        &self.shape
    }

    #[inline]
    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    #[inline]
    pub fn offset(&self) -> usize {
        self.offset
    }

    #[inline]
    pub fn order(&self) -> CoordinateOrder {
        self.order
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn shape_strides(&self) -> &[usize] {
        &self.shape_strides
    }

    /// Unstrided with zero offset.
    #[inline]
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    /// Strides equal the shape strides for the view's order. Scalar views are
    /// unstrided.
    #[inline]
    pub fn is_unstrided(&self) -> bool {
        self.strides == self.shape_strides
    }

    pub fn is_scalar(&self) -> bool {
        self.shape.is_empty()
    }

    /// Smallest buffer index the view can address.
    #[inline]
    pub fn min_address(&self) -> usize {
        self.offset
    }

    /// Largest buffer index the view can address.
    pub fn max_address(&self) -> usize {
        self.shape
            .iter()
            .zip(&self.strides)
            .fold(self.offset, |acc, (&s, &t)| acc + t * (s - 1))
    }

    /// Checks that `c` is a member of this view's coordinate set.
    pub fn validate_coordinate(&self, c: &[usize]) -> Result<()> {
        if c.len() != self.dimension() {
            return Err(Error::RankMismatch {
                expected: self.dimension(),
                got: c.len(),
            });
        }
        if c.iter().zip(&self.shape).any(|(&cj, &sj)| cj >= sj) {
            return Err(Error::CoordinateOutOfBounds {
                coordinate: c.to_vec(),
                shape: self.shape.clone(),
            });
        }
        Ok(())
    }

    pub(crate) fn validate_index(&self, x: usize) -> Result<()> {
        if x >= self.size {
            return Err(Error::IndexOutOfBounds {
                index: x,
                size: self.size,
            });
        }
        Ok(())
    }

    /// Buffer index addressed by `c`. The empty tuple addresses the single
    /// element of a scalar view.
    pub fn address(&self, c: &[usize]) -> Result<usize> {
        self.validate_coordinate(c)?;
        Ok(self.address_unchecked(c))
    }

    /// Like [`address`](Self::address) without validating `c`. The result is
    /// meaningless for an invalid coordinate.
    #[inline]
    pub fn address_unchecked(&self, c: &[usize]) -> usize {
        self.strides
            .iter()
            .zip(c)
            .fold(self.offset, |acc, (&t, &cj)| acc + t * cj)
    }

    /// Buffer index of the single element of a scalar view.
    pub fn address_scalar(&self) -> Result<usize> {
        if !self.is_scalar() {
            return Err(Error::NotScalar {
                dimension: self.dimension(),
            });
        }
        Ok(self.offset)
    }

    /// Scalar index of `c` in the view's coordinate order.
    pub fn coordinate_to_index(&self, c: &[usize]) -> Result<usize> {
        self.validate_coordinate(c)?;
        Ok(self
            .shape_strides
            .iter()
            .zip(c)
            .map(|(&u, &cj)| u * cj)
            .sum())
    }

    /// Coordinate with scalar index `x` in the view's coordinate order.
    pub fn index_to_coordinate(&self, x: usize) -> Result<Coordinate> {
        self.validate_index(x)?;
        let mut c = vec![0; self.dimension()];
        self.index_to_coordinate_into(x, &mut c);
        Ok(c)
    }

    /// Writes the coordinate of scalar index `x` into `out` without
    /// validation. `out` must have one slot per axis.
    pub fn index_to_coordinate_into(&self, x: usize, out: &mut [usize]) {
        debug_assert_eq!(out.len(), self.dimension());
        self.decompose(x, |j, c| out[j] = c);
    }

    /// Calls `f(axis, coordinate)` for each component of the coordinate with
    /// scalar index `x`, most significant axis first: the last axis for
    /// last-major order, the first axis for first-major order.
    ///
    /// The direction comes from the stored order rather than from inspecting
    /// the shape strides, which cannot tell the orders apart when an extent
    /// is 1.
    #[inline]
    pub fn decompose<F: FnMut(usize, usize)>(&self, mut x: usize, mut f: F) {
        let mut step = |j: usize| {
            let u = self.shape_strides[j];
            f(j, x / u);
            x %= u;
        };
        match self.order {
            CoordinateOrder::LastMajor => (0..self.dimension()).rev().for_each(&mut step),
            CoordinateOrder::FirstMajor => (0..self.dimension()).for_each(&mut step),
        }
    }

    /// Buffer index of the element with scalar index `x`, without validation.
    #[inline]
    pub fn index_to_address(&self, x: usize) -> usize {
        if self.is_unstrided() {
            return self.offset + x;
        }
        let mut addr = self.offset;
        self.decompose(x, |j, c| addr += self.strides[j] * c);
        addr
    }

    /// Reports every cache that disagrees with the primary fields.
    pub fn check_invariants(&self) -> InvariantReport {
        let mut violations = Vec::new();
        let d = self.shape.len();
        if self.strides.len() != d || self.shape_strides.len() != d {
            violations.push(Violation::RankInconsistent {
                shape: d,
                strides: self.strides.len(),
                shape_strides: self.shape_strides.len(),
            });
        }
        if let Some(axis) = self.shape.iter().position(|&s| s == 0) {
            violations.push(Violation::ZeroExtent { axis });
        }
        match checked_size(&self.shape) {
            Some(size) if size == self.size => {}
            expected => violations.push(Violation::SizeMismatch {
                cached: self.size,
                expected,
            }),
        }
        let expected_u = shape_strides(&self.shape, self.order);
        if expected_u != self.shape_strides {
            violations.push(Violation::ShapeStridesMismatch {
                cached: self.shape_strides.clone(),
                expected: expected_u.clone(),
            });
        }
        let simple = self.offset == 0 && self.strides == expected_u;
        if simple != self.simple {
            violations.push(Violation::SimpleFlagInconsistent {
                cached: self.simple,
            });
        }
        InvariantReport { violations }
    }

    /// Panics if debug checks are on and an invariant is violated.
    #[inline]
    pub(crate) fn debug_check(&self) {
        if checks::debug_checks() {
            let report = self.check_invariants();
            assert!(report.is_ok(), "view invariant violated: {report}");
        }
    }

    /// Rebuilds the caches after the primary fields changed.
    pub(crate) fn refresh(&mut self) {
        self.size = checked_size(&self.shape).expect("size already validated");
        self.shape_strides = shape_strides(&self.shape, self.order);
        self.simple = self.offset == 0 && self.strides == self.shape_strides;
        self.debug_check();
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut Vec<usize>, &mut Vec<usize>, &mut usize) {
        (&mut self.shape, &mut self.strides, &mut self.offset)
    }

    pub(crate) fn set_order(&mut self, order: CoordinateOrder) {
        self.order = order;
    }
}

/// A single inconsistency found by [`ViewDescriptor::check_invariants`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RankInconsistent {
        shape: usize,
        strides: usize,
        shape_strides: usize,
    },
    ZeroExtent {
        axis: usize,
    },
    SizeMismatch {
        cached: usize,
        expected: Option<usize>,
    },
    ShapeStridesMismatch {
        cached: Vec<usize>,
        expected: Vec<usize>,
    },
    SimpleFlagInconsistent {
        cached: bool,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RankInconsistent {
                shape,
                strides,
                shape_strides,
            } => write!(
                f,
                "rank inconsistent: shape {shape}, strides {strides}, shape strides {shape_strides}"
            ),
            Violation::ZeroExtent { axis } => write!(f, "zero extent on axis {axis}"),
            Violation::SizeMismatch { cached, expected } => match expected {
                Some(e) => write!(f, "size ≠ Π shape ({cached} cached, {e} expected)"),
                None => write!(f, "size ≠ Π shape ({cached} cached, product overflows)"),
            },
            Violation::ShapeStridesMismatch { cached, expected } => write!(
                f,
                "shape strides inconsistent ({cached:?} cached, {expected:?} expected)"
            ),
            Violation::SimpleFlagInconsistent { cached } => {
                write!(f, "simplicity flag inconsistent (cached {cached})")
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantReport {
    violations: Vec<Violation>,
}

impl InvariantReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
