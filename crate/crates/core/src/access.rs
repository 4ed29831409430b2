//! Element access through views: reads and writes by coordinate and by scalar
//! index, random-access cursors, and assignment between views.
//!
//! [`View`] is read-only and [`ViewMut`] is read-write; writing through a
//! read-only view is a type error rather than a runtime one. Two views over
//! the same buffer can only coexist when both are read-only, so assignment
//! between aliasing views goes through [`ViewMut::assign_aliased`], which
//! takes the source as a descriptor over the destination's own buffer.

use std::ops::{Index, IndexMut};

use crate::array::Tensor;
use crate::checks;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::view::{Coordinate, CoordinateOrder, ViewDescriptor};

fn check_fits(desc: &ViewDescriptor, len: usize) -> Result<()> {
    let max_address = desc.max_address();
    if max_address >= len {
        return Err(Error::ViewOutOfBuffer { max_address, len });
    }
    Ok(())
}

fn check_same_shape(a: &ViewDescriptor, b: &ViewDescriptor) -> Result<()> {
    if a.shape() != b.shape() {
        return Err(Error::ShapeMismatch {
            left: a.shape().to_vec(),
            right: b.shape().to_vec(),
        });
    }
    Ok(())
}

pub(crate) fn check_destination(desc: &ViewDescriptor) -> Result<()> {
    let zero = desc
        .shape()
        .iter()
        .zip(desc.strides())
        .position(|(&s, &t)| t == 0 && s > 1);
    match zero {
        Some(axis) => Err(Error::ZeroStrideDestination { axis }),
        None => Ok(()),
    }
}

#[inline]
fn checked_address(desc: &ViewDescriptor, c: &[usize]) -> Result<usize> {
    if checks::arg_checks() {
        desc.address(c)
    } else {
        Ok(desc.address_unchecked(c))
    }
}

#[inline]
fn checked_index_address(desc: &ViewDescriptor, x: usize) -> Result<usize> {
    if checks::arg_checks() {
        desc.validate_index(x)?;
    }
    Ok(desc.index_to_address(x))
}

/// Whether the closed address intervals `[min, max]` of two descriptors over
/// one buffer intersect. Intersection of the intervals is necessary, not
/// sufficient, for the address sets to intersect.
pub fn address_ranges_intersect(a: &ViewDescriptor, b: &ViewDescriptor) -> bool {
    a.min_address() <= b.max_address() && b.min_address() <= a.max_address()
}

fn byte_range<T>(data: &[T], desc: &ViewDescriptor) -> (usize, usize) {
    let base = data.as_ptr() as usize;
    let width = std::mem::size_of::<T>().max(1);
    (
        base + desc.min_address() * width,
        base + (desc.max_address() + 1) * width,
    )
}

/// Whether two views may share memory.
///
/// Compares the memory intervals spanned by the views, so views over distinct
/// buffers never overlap and interleaved views over one buffer always do.
pub fn overlaps<T: Element>(a: &View<'_, T>, b: &View<'_, T>) -> bool {
    let (a0, a1) = byte_range(a.data, &a.desc);
    let (b0, b1) = byte_range(b.data, &b.desc);
    a0 < b1 && b0 < a1
}

/// Applies `f(k, old)` to the element with scalar index `k` of `dst`, for all
/// `k`, in `dst`'s coordinate order.
pub(crate) fn update_indexed<T, F>(strategy: Strategy, data: &mut [T], dst: &ViewDescriptor, f: F)
where
    T: Element,
    F: Fn(usize, T) -> T + Sync + Send,
{
    if dst.is_unstrided() {
        let start = dst.offset();
        let slice = &mut data[start..start + dst.size()];
        exec::for_each_indexed(strategy, slice, |k, o| *o = f(k, *o));
    } else {
        for k in 0..dst.size() {
            let a = dst.index_to_address(k);
            data[a] = f(k, data[a]);
        }
    }
}

/// Copies the elements of `src` into a fresh buffer in `src`'s index order.
pub(crate) fn gather<T: Element>(strategy: Strategy, data: &[T], src: &ViewDescriptor) -> Vec<T> {
    if src.is_unstrided() {
        return data[src.offset()..src.offset() + src.size()].to_vec();
    }
    let mut out = vec![T::default(); src.size()];
    exec::for_each_indexed(strategy, &mut out, |k, o| {
        *o = data[src.index_to_address(k)]
    });
    out
}

/// Read-only view over a borrowed buffer.
#[derive(Debug, Clone)]
pub struct View<'a, T> {
    data: &'a [T],
    desc: ViewDescriptor,
}

impl<'a, T: Element> View<'a, T> {
    /// Fails if the descriptor addresses past the end of `data`.
    pub fn new(data: &'a [T], desc: ViewDescriptor) -> Result<Self> {
        check_fits(&desc, data.len())?;
        Ok(View { data, desc })
    }

    /// Unstrided last-major view of `shape` at offset 0.
    pub fn from_shape(data: &'a [T], shape: &[usize]) -> Result<Self> {
        Self::new(
            data,
            ViewDescriptor::unstrided(shape.to_vec(), 0, CoordinateOrder::LastMajor)?,
        )
    }

    pub(crate) fn from_parts(data: &'a [T], desc: ViewDescriptor) -> Self {
        debug_assert!(desc.max_address() < data.len());
        View { data, desc }
    }

    pub fn descriptor(&self) -> &ViewDescriptor {
        &self.desc
    }

    /// The whole underlying buffer.
    pub fn buffer(&self) -> &'a [T] {
        self.data
    }

    pub fn shape(&self) -> &[usize] {
        self.desc.shape()
    }

    pub fn dimension(&self) -> usize {
        self.desc.dimension()
    }

    pub fn size(&self) -> usize {
        self.desc.size()
    }

    pub fn order(&self) -> CoordinateOrder {
        self.desc.order()
    }

    pub fn get(&self, c: &[usize]) -> Result<T> {
        Ok(self.data[checked_address(&self.desc, c)?])
    }

    pub fn get_by_index(&self, x: usize) -> Result<T> {
        Ok(self.data[checked_index_address(&self.desc, x)?])
    }

    /// The single element of a scalar view.
    pub fn scalar(&self) -> Result<T> {
        Ok(self.data[self.desc.address_scalar()?])
    }

    pub fn cursor(&self) -> Cursor<'a, T> {
        Cursor {
            data: self.data,
            pos: Position::new(self.desc.clone()),
        }
    }

    /// Elements in ascending scalar-index order.
    pub fn iter(&self) -> Cursor<'a, T> {
        self.cursor()
    }

    /// Makes this view alias `other`. No element is touched.
    pub fn rebind(&mut self, other: &View<'a, T>) {
        self.data = other.data;
        self.desc = other.desc.clone();
    }

    /// Applies a descriptor transform, keeping the buffer.
    pub fn map_descriptor<F>(&self, f: F) -> Result<View<'a, T>>
    where
        F: FnOnce(&ViewDescriptor) -> Result<ViewDescriptor>,
    {
        View::new(self.data, f(&self.desc)?)
    }

    pub fn sub_view(&self, base: &[usize], shape: &[usize]) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.sub_view(base, shape))
    }

    pub fn sub_view_with_order(
        &self,
        base: &[usize],
        shape: &[usize],
        order: CoordinateOrder,
    ) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.sub_view_with_order(base, shape, order))
    }

    pub fn bound(&self, axis: usize, value: usize) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.bound(axis, value))
    }

    pub fn squeezed(&self) -> View<'a, T> {
        View::from_parts(self.data, self.desc.squeezed())
    }

    pub fn permuted(&self, sigma: &[usize]) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.permuted(sigma))
    }

    pub fn transposed(&self, j: usize, k: usize) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.transposed(j, k))
    }

    pub fn transposed_all(&self) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.transposed_all())
    }

    pub fn shifted(&self, z: isize) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.shifted(z))
    }

    pub fn reshaped(&self, shape: &[usize]) -> Result<View<'a, T>> {
        self.map_descriptor(|d| d.reshaped(shape))
    }

    pub fn with_order(&self, order: CoordinateOrder) -> View<'a, T> {
        View::from_parts(self.data, self.desc.with_order(order))
    }

    /// Copies the viewed elements into a new tensor with this view's shape and
    /// coordinate order.
    pub fn to_tensor(&self) -> Tensor<T> {
        self.to_tensor_with(Strategy::Auto)
    }

    pub fn to_tensor_with(&self, strategy: Strategy) -> Tensor<T> {
        let desc = ViewDescriptor::unstrided(self.shape().to_vec(), 0, self.order())
            .expect("shape of a valid view");
        Tensor::from_parts(gather(strategy, self.data, &self.desc), desc)
    }

    /// All elements in ascending scalar-index order.
    pub fn to_vec(&self) -> Vec<T> {
        gather(Strategy::Auto, self.data, &self.desc)
    }
}

/// Read-write view over a mutably borrowed buffer.
#[derive(Debug)]
pub struct ViewMut<'a, T> {
    data: &'a mut [T],
    desc: ViewDescriptor,
}

impl<'a, T: Element> ViewMut<'a, T> {
    pub fn new(data: &'a mut [T], desc: ViewDescriptor) -> Result<Self> {
        check_fits(&desc, data.len())?;
        Ok(ViewMut { data, desc })
    }

    pub fn from_shape(data: &'a mut [T], shape: &[usize]) -> Result<Self> {
        let desc = ViewDescriptor::unstrided(shape.to_vec(), 0, CoordinateOrder::LastMajor)?;
        Self::new(data, desc)
    }

    pub(crate) fn from_parts(data: &'a mut [T], desc: ViewDescriptor) -> Self {
        debug_assert!(desc.max_address() < data.len());
        ViewMut { data, desc }
    }

    pub fn descriptor(&self) -> &ViewDescriptor {
        &self.desc
    }

    pub fn shape(&self) -> &[usize] {
        self.desc.shape()
    }

    pub fn dimension(&self) -> usize {
        self.desc.dimension()
    }

    pub fn size(&self) -> usize {
        self.desc.size()
    }

    pub fn order(&self) -> CoordinateOrder {
        self.desc.order()
    }

    pub fn as_view(&self) -> View<'_, T> {
        View::from_parts(self.data, self.desc.clone())
    }

    /// A shorter-lived `ViewMut` of the same elements.
    pub fn reborrow(&mut self) -> ViewMut<'_, T> {
        ViewMut::from_parts(self.data, self.desc.clone())
    }

    pub fn get(&self, c: &[usize]) -> Result<T> {
        Ok(self.data[checked_address(&self.desc, c)?])
    }

    pub fn set(&mut self, c: &[usize], value: T) -> Result<()> {
        self.data[checked_address(&self.desc, c)?] = value;
        Ok(())
    }

    pub fn get_by_index(&self, x: usize) -> Result<T> {
        Ok(self.data[checked_index_address(&self.desc, x)?])
    }

    pub fn set_by_index(&mut self, x: usize, value: T) -> Result<()> {
        self.data[checked_index_address(&self.desc, x)?] = value;
        Ok(())
    }

    pub fn cursor(&self) -> Cursor<'_, T> {
        Cursor {
            data: self.data,
            pos: Position::new(self.desc.clone()),
        }
    }

    pub fn cursor_mut(&mut self) -> CursorMut<'_, T> {
        CursorMut::over(self.data, self.desc.clone())
    }

    pub fn fill(&mut self, value: T) -> Result<()> {
        check_destination(&self.desc)?;
        update_indexed(Strategy::Auto, self.data, &self.desc, |_, _| value);
        Ok(())
    }

    /// Copies `src` into this view coordinate by coordinate: the element at
    /// coordinate `c` of `src` lands at coordinate `c` of `self`, whatever the
    /// coordinate orders of the two views.
    ///
    /// `src` is a separate borrow and so cannot overlap `self`.
    pub fn assign(&mut self, src: &View<'_, T>) -> Result<()> {
        self.assign_with(Strategy::Auto, src)
    }

    pub fn assign_with(&mut self, strategy: Strategy, src: &View<'_, T>) -> Result<()> {
        check_same_shape(&self.desc, &src.desc)?;
        check_destination(&self.desc)?;
        let src_desc = src.desc.with_order(self.order());
        if self.desc.is_unstrided() && src_desc.is_unstrided() {
            let (d, s, n) = (self.desc.offset(), src_desc.offset(), self.size());
            self.data[d..d + n].copy_from_slice(&src.data[s..s + n]);
            return Ok(());
        }
        let src_data = src.data;
        update_indexed(strategy, self.data, &self.desc, |k, _| {
            src_data[src_desc.index_to_address(k)]
        });
        Ok(())
    }

    /// Copies the view `src`, interpreted over this view's own buffer, into
    /// this view coordinate by coordinate. The result is as if `src` had first
    /// been copied to a temporary; a temporary is used when the address ranges
    /// of the two views intersect.
    pub fn assign_aliased(&mut self, src: &ViewDescriptor) -> Result<()> {
        self.assign_aliased_with(Strategy::Auto, src)
    }

    pub fn assign_aliased_with(&mut self, strategy: Strategy, src: &ViewDescriptor) -> Result<()> {
        check_fits(src, self.data.len())?;
        check_same_shape(&self.desc, src)?;
        check_destination(&self.desc)?;
        let src = src.with_order(self.order());
        if self.desc.is_unstrided() && src.is_unstrided() {
            // memmove semantics
            let (d, s, n) = (self.desc.offset(), src.offset(), self.size());
            self.data.copy_within(s..s + n, d);
            return Ok(());
        }
        if address_ranges_intersect(&self.desc, &src) {
            let temp = gather(strategy, self.data, &src);
            update_indexed(strategy, self.data, &self.desc, |k, _| temp[k]);
        } else {
            for k in 0..self.size() {
                let value = self.data[src.index_to_address(k)];
                self.data[self.desc.index_to_address(k)] = value;
            }
        }
        Ok(())
    }

    pub fn map_descriptor<F>(self, f: F) -> Result<ViewMut<'a, T>>
    where
        F: FnOnce(&ViewDescriptor) -> Result<ViewDescriptor>,
    {
        let desc = f(&self.desc)?;
        ViewMut::new(self.data, desc)
    }

    pub fn sub_view(self, base: &[usize], shape: &[usize]) -> Result<ViewMut<'a, T>> {
        self.map_descriptor(|d| d.sub_view(base, shape))
    }

    pub fn bound(self, axis: usize, value: usize) -> Result<ViewMut<'a, T>> {
        self.map_descriptor(|d| d.bound(axis, value))
    }

    pub fn squeezed(self) -> ViewMut<'a, T> {
        let desc = self.desc.squeezed();
        ViewMut::from_parts(self.data, desc)
    }

    pub fn permuted(self, sigma: &[usize]) -> Result<ViewMut<'a, T>> {
        self.map_descriptor(|d| d.permuted(sigma))
    }

    pub fn transposed(self, j: usize, k: usize) -> Result<ViewMut<'a, T>> {
        self.map_descriptor(|d| d.transposed(j, k))
    }

    pub fn shifted(self, z: isize) -> Result<ViewMut<'a, T>> {
        self.map_descriptor(|d| d.shifted(z))
    }

    pub fn with_order(self, order: CoordinateOrder) -> ViewMut<'a, T> {
        let desc = self.desc.with_order(order);
        ViewMut::from_parts(self.data, desc)
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut [T], &ViewDescriptor) {
        (self.data, &self.desc)
    }
}

/// Cursor position shared by [`Cursor`] and [`CursorMut`].
#[derive(Debug, Clone)]
struct Position {
    desc: ViewDescriptor,
    pos: usize,
}

impl Position {
    fn new(desc: ViewDescriptor) -> Self {
        Position { desc, pos: 0 }
    }

    fn seek(&mut self, k: usize) -> Result<()> {
        if k > self.desc.size() {
            return Err(Error::IndexOutOfBounds {
                index: k,
                size: self.desc.size(),
            });
        }
        self.pos = k;
        Ok(())
    }

    fn target(&self, delta: isize) -> Result<usize> {
        let size = self.desc.size();
        let k = self
            .pos
            .checked_add_signed(delta)
            .ok_or(Error::IndexOutOfBounds { index: 0, size })?;
        match k.cmp(&size) {
            std::cmp::Ordering::Less => Ok(self.desc.index_to_address(k)),
            std::cmp::Ordering::Equal => Err(Error::DereferenceAtEnd { position: k, size }),
            std::cmp::Ordering::Greater => Err(Error::IndexOutOfBounds { index: k, size }),
        }
    }
}

macro_rules! cursor_movement {
    () => {
        /// Scalar index of the current position; `size()` is one past the end.
        pub fn position(&self) -> usize {
            self.pos.pos
        }

        pub fn size(&self) -> usize {
            self.pos.desc.size()
        }

        pub fn is_end(&self) -> bool {
            self.pos.pos == self.pos.desc.size()
        }

        /// Moves to scalar index `k`; `k == size()` is the end position.
        pub fn seek(&mut self, k: usize) -> Result<()> {
            self.pos.seek(k)
        }

        pub fn advance(&mut self, n: usize) -> Result<()> {
            let k = self.pos.pos.checked_add(n).ok_or(Error::Overflow)?;
            self.pos.seek(k)
        }

        pub fn retreat(&mut self, n: usize) -> Result<()> {
            let k = self.pos.pos.checked_sub(n).ok_or(Error::IndexOutOfBounds {
                index: 0,
                size: self.size(),
            })?;
            self.pos.seek(k)
        }

        /// Coordinate of the current position.
        pub fn coordinate(&self) -> Result<Coordinate> {
            self.pos
                .desc
                .index_to_coordinate(self.pos.pos)
                .map_err(|_| Error::DereferenceAtEnd {
                    position: self.pos.pos,
                    size: self.size(),
                })
        }

        /// Element at the current position.
        pub fn get(&self) -> Result<T> {
            self.at(0)
        }

        /// Element `delta` positions away from the current one.
        pub fn at(&self, delta: isize) -> Result<T> {
            Ok(self.data[self.pos.target(delta)?])
        }
    };
}

/// Random-access read cursor over a view, ordered by scalar index.
#[derive(Debug, Clone)]
pub struct Cursor<'a, T> {
    data: &'a [T],
    pos: Position,
}

impl<T: Element> Cursor<'_, T> {
    cursor_movement!();
}

impl<T: Element> Iterator for Cursor<'_, T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let value = self.get().ok()?;
        self.pos.pos += 1;
        Some(value)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.size() - self.pos.pos;
        (n, Some(n))
    }
}

impl<T: Element> ExactSizeIterator for Cursor<'_, T> {}

/// Random-access read-write cursor over a view.
#[derive(Debug)]
pub struct CursorMut<'a, T> {
    data: &'a mut [T],
    pos: Position,
}

impl<'a, T: Element> CursorMut<'a, T> {
    pub(crate) fn over(data: &'a mut [T], desc: ViewDescriptor) -> Self {
        debug_assert!(desc.max_address() < data.len());
        CursorMut {
            data,
            pos: Position::new(desc),
        }
    }

    cursor_movement!();

    pub fn set(&mut self, value: T) -> Result<()> {
        self.set_at(0, value)
    }

    pub fn set_at(&mut self, delta: isize, value: T) -> Result<()> {
        self.data[self.pos.target(delta)?] = value;
        Ok(())
    }
}

macro_rules! index_impls {
    ($ty:ident) => {
        impl<T: Element, const N: usize> Index<[usize; N]> for $ty<'_, T> {
            type Output = T;

            fn index(&self, c: [usize; N]) -> &T {
                &self.data[self.desc.address(&c).unwrap_or_else(|e| panic!("{e}"))]
            }
        }

        impl<T: Element> Index<&[usize]> for $ty<'_, T> {
            type Output = T;

            fn index(&self, c: &[usize]) -> &T {
                &self.data[self.desc.address(c).unwrap_or_else(|e| panic!("{e}"))]
            }
        }

        /// Scalar index in the view's coordinate order.
        impl<T: Element> Index<usize> for $ty<'_, T> {
            type Output = T;

            fn index(&self, x: usize) -> &T {
                if let Err(e) = self.desc.validate_index(x) {
                    panic!("{e}");
                }
                &self.data[self.desc.index_to_address(x)]
            }
        }
    };
}

index_impls!(View);
index_impls!(ViewMut);

impl<T: Element, const N: usize> IndexMut<[usize; N]> for ViewMut<'_, T> {
    fn index_mut(&mut self, c: [usize; N]) -> &mut T {
        &mut self.data[self.desc.address(&c).unwrap_or_else(|e| panic!("{e}"))]
    }
}

impl<T: Element> IndexMut<&[usize]> for ViewMut<'_, T> {
    fn index_mut(&mut self, c: &[usize]) -> &mut T {
        &mut self.data[self.desc.address(c).unwrap_or_else(|e| panic!("{e}"))]
    }
}

impl<T: Element> IndexMut<usize> for ViewMut<'_, T> {
    fn index_mut(&mut self, x: usize) -> &mut T {
        if let Err(e) = self.desc.validate_index(x) {
            panic!("{e}");
        }
        &mut self.data[self.desc.index_to_address(x)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoordinateOrder::{FirstMajor, LastMajor};

    /// 1..=6 at buffer indices 100..=105.
    fn fixture_buffer() -> Vec<i32> {
        let mut b = vec![0; 106];
        for (i, v) in (100..106).zip(1..) {
            b[i] = v;
        }
        b
    }

    fn desc(shape: &[usize], strides: &[usize], offset: usize) -> ViewDescriptor {
        ViewDescriptor::new(shape.to_vec(), strides.to_vec(), offset, LastMajor).unwrap()
    }

    #[test]
    fn get_examples() {
        checks::set_arg_checks(true);
        let b = fixture_buffer();
        let v3 = View::new(&b, desc(&[2, 3], &[1, 2], 100)).unwrap();
        assert_eq!(v3.get(&[1, 2]), Ok(6));
        let v5 = View::new(&b, desc(&[2, 2], &[3, 1], 101)).unwrap();
        assert_eq!(v5.get(&[0, 0]), Ok(2));
        assert_eq!(v5[[1, 1]], 6);
        assert!(matches!(
            v5.get(&[2, 0]),
            Err(Error::CoordinateOutOfBounds { .. })
        ));
    }

    #[test]
    fn set_then_get() {
        let mut b = fixture_buffer();
        let mut v = ViewMut::new(&mut b, desc(&[3, 2], &[2, 1], 100)).unwrap();
        v.set(&[2, 1], 42).unwrap();
        assert_eq!(v.get(&[2, 1]), Ok(42));
        assert_eq!(b[105], 42);
    }

    #[test]
    fn by_index_examples() {
        checks::set_arg_checks(true);
        let b = fixture_buffer();
        let v6 = View::new(&b, desc(&[3], &[2], 101)).unwrap();
        assert_eq!(v6.get_by_index(1), Ok(4));
        assert_eq!(v6.get_by_index(0), Ok(2));
        assert_eq!(
            v6.get_by_index(3),
            Err(Error::IndexOutOfBounds { index: 3, size: 3 })
        );
        assert_eq!(v6[2usize], 6);
    }

    #[test]
    fn view_must_fit_buffer() {
        let b = vec![0i32; 5];
        assert!(View::new(&b, desc(&[3], &[2], 0)).is_ok());
        assert_eq!(
            View::new(&b, desc(&[3], &[2], 1)).err(),
            Some(Error::ViewOutOfBuffer {
                max_address: 5,
                len: 5
            })
        );
    }

    #[test]
    fn cursor_traversal_table_v1() {
        let b = fixture_buffer();
        let v1 = View::new(&b, desc(&[3, 2], &[1, 3], 100)).unwrap();
        assert_eq!(v1.iter().collect::<Vec<_>>(), vec![1, 2, 3, 4, 5, 6]);
        let v2 = View::new(&b, desc(&[3, 2], &[2, 1], 100)).unwrap();
        assert_eq!(v2.iter().collect::<Vec<_>>(), vec![1, 3, 5, 2, 4, 6]);
    }

    #[test]
    fn cursor_movement() {
        let b: Vec<i32> = (0..24).collect();
        let v = View::from_shape(&b, &[3, 2, 4]).unwrap();
        let mut c = v.cursor();
        assert_eq!(c.at(13), Ok(13));
        c.advance(5).unwrap();
        assert_eq!(c.get(), Ok(5));
        assert_eq!(c.at(-2), Ok(3));
        c.retreat(5).unwrap();
        assert_eq!(c.get(), Ok(0));
        assert!(c.retreat(1).is_err());
        c.seek(24).unwrap();
        assert!(c.is_end());
        assert_eq!(
            c.get(),
            Err(Error::DereferenceAtEnd {
                position: 24,
                size: 24
            })
        );
        assert!(c.seek(25).is_err());
        c.seek(13).unwrap();
        assert_eq!(c.coordinate(), Ok(vec![1, 0, 2]));
    }

    #[test]
    fn cursor_single_element() {
        let b = [7u8];
        let v = View::from_shape(&b, &[1]).unwrap();
        let mut c = v.cursor();
        assert_eq!(c.get(), Ok(7));
        c.advance(1).unwrap();
        assert!(c.is_end());
        assert!(c.get().is_err());
        assert_eq!(v.iter().count(), 1);
    }

    #[test]
    fn cursor_mut_writes() {
        let mut b = vec![0.0f32; 24];
        let mut v = ViewMut::from_shape(&mut b, &[3, 2, 4]).unwrap();
        v.cursor_mut().set_at(13, 4.2).unwrap();
        assert_eq!(v.get(&[1, 0, 2]), Ok(4.2));
    }

    #[test]
    fn overlap_detection() {
        let b = fixture_buffer();
        let v4 = View::new(&b, desc(&[2, 3], &[3, 1], 100)).unwrap();
        let v5 = v4.sub_view(&[0, 1], &[2, 2]).unwrap();
        assert!(overlaps(&v4, &v5));

        let other = fixture_buffer();
        let w = View::new(&other, desc(&[2, 3], &[3, 1], 100)).unwrap();
        assert!(!overlaps(&v4, &w));

        let lo = View::new(&b, desc(&[3], &[1], 0)).unwrap();
        let hi = View::new(&b, desc(&[3], &[1], 3)).unwrap();
        assert!(!overlaps(&lo, &hi));
        assert!(!address_ranges_intersect(lo.descriptor(), hi.descriptor()));
    }

    #[test]
    fn assign_shifted_alias() {
        let mut b = vec![1, 2, 3, 4, 5];
        let mut dst = ViewMut::new(&mut b, desc(&[4], &[1], 0)).unwrap();
        dst.assign_aliased(&desc(&[4], &[1], 1)).unwrap();
        assert_eq!(b, vec![2, 3, 4, 5, 5]);

        let mut b = vec![1, 2, 3, 4, 5];
        let mut dst = ViewMut::new(&mut b, desc(&[4], &[1], 1)).unwrap();
        dst.assign_aliased(&desc(&[4], &[1], 0)).unwrap();
        assert_eq!(b, vec![1, 1, 2, 3, 4]);
    }

    #[test]
    fn assign_strided_alias_uses_temporary() {
        // A transposed 2x2 block over the same four slots. Copying in place
        // without a temporary would read slot 1 after overwriting it.
        let mut b: Vec<i32> = (0..8).collect();
        let mut dst = ViewMut::new(&mut b, desc(&[2, 2], &[1, 2], 0)).unwrap();
        dst.assign_aliased(&desc(&[2, 2], &[2, 1], 0)).unwrap();
        // dst(j,k) at j + 2k gets old src(j,k) at 2j + k.
        assert_eq!(&b[..4], &[0, 2, 1, 3]);
    }

    #[test]
    fn assign_to_self() {
        let mut b = fixture_buffer();
        let before = b.clone();
        let d = desc(&[3, 2], &[2, 1], 100);
        let mut v = ViewMut::new(&mut b, d.clone()).unwrap();
        v.assign_aliased(&d).unwrap();
        assert_eq!(b, before);
    }

    #[test]
    fn assign_across_orders() {
        let src_buf: Vec<i32> = (0..6).collect();
        let src = View::new(
            &src_buf,
            ViewDescriptor::unstrided(vec![2, 3], 0, FirstMajor).unwrap(),
        )
        .unwrap();
        let mut dst_buf = vec![0; 6];
        let mut dst = ViewMut::from_shape(&mut dst_buf, &[2, 3]).unwrap();
        dst.assign(&src).unwrap();
        for j in 0..2 {
            for k in 0..3 {
                assert_eq!(dst.get(&[j, k]), src.get(&[j, k]));
            }
        }
    }

    #[test]
    fn assign_errors() {
        let src_buf = vec![0i32; 6];
        let src = View::from_shape(&src_buf, &[3, 2]).unwrap();
        let mut dst_buf = vec![0; 6];
        let mut dst = ViewMut::from_shape(&mut dst_buf, &[2, 3]).unwrap();
        assert!(matches!(dst.assign(&src), Err(Error::ShapeMismatch { .. })));
        let mut z = ViewMut::new(&mut dst_buf, desc(&[3, 2], &[0, 1], 0)).unwrap();
        assert_eq!(
            z.assign(&src),
            Err(Error::ZeroStrideDestination { axis: 0 })
        );
    }

    #[test]
    fn rebind_aliases_without_copy() {
        let a: Vec<i32> = (0..6).collect();
        let b: Vec<i32> = (10..16).collect();
        let mut v = View::from_shape(&a, &[2, 3]).unwrap();
        let w = View::from_shape(&b, &[3, 2]).unwrap();
        v.rebind(&w);
        assert_eq!(v.shape(), &[3, 2]);
        assert_eq!(v.to_vec(), w.to_vec());
        assert_eq!(a, (0..6).collect::<Vec<_>>());
        assert_eq!(b, (10..16).collect::<Vec<_>>());
        let same = v.clone();
        v.rebind(&same);
        assert_eq!(v.to_vec(), w.to_vec());
    }

    #[test]
    fn squeeze_sub_view_of_cube() {
        let b: Vec<f32> = (0..8000).map(|x| x as f32).collect();
        let cube = View::from_shape(&b, &[20, 20, 20]).unwrap();
        let v = cube.sub_view(&[3, 2, 4], &[5, 1, 5]).unwrap().squeezed();
        assert_eq!(v.shape(), &[5, 5]);
        assert_eq!(v.get(&[4, 4]), cube.get(&[7, 2, 8]));
    }
}
