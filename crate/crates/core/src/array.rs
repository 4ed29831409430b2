//! Owning arrays.
//!
//! A [`Tensor`] is a contiguous buffer plus a descriptor that is always
//! unstrided with zero offset. Axis transforms therefore live on views
//! ([`Tensor::view`]); materialize a transformed view with
//! [`View::to_tensor`].

use std::alloc::{self, Layout};
use std::ops::{Index, IndexMut};

use crate::access::{Cursor, CursorMut, View, ViewMut};
use crate::element::Element;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::view::{CoordinateOrder, ViewDescriptor};

#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<T> {
    data: Vec<T>,
    desc: ViewDescriptor,
}

fn layout_for(shape: &[usize], order: CoordinateOrder) -> Result<ViewDescriptor> {
    ViewDescriptor::unstrided(shape.to_vec(), 0, order)
}

fn filled_vec<T: Clone>(n: usize, fill: T) -> Result<Vec<T>> {
    let mut v = Vec::new();
    v.try_reserve_exact(n)
        .map_err(|_| Error::AllocationFailure(n))?;
    v.resize(n, fill);
    Ok(v)
}

fn zeroed_vec<T: Element>(n: usize) -> Result<Vec<T>> {
    let layout = Layout::array::<T>(n).map_err(|_| Error::AllocationFailure(n))?;
    if layout.size() == 0 {
        return Ok(Vec::new());
    }
    // SAFETY: the layout has non-zero size, and every `Element` type (sealed:
    // f32, f64, i32, i64, u8) is valid for the all-zero bit pattern. The
    // allocation comes from the global allocator with exactly the layout
    // `Vec<T>` uses for capacity `n`.
    unsafe {
        let ptr = alloc::alloc_zeroed(layout) as *mut T;
        if ptr.is_null() {
            return Err(Error::AllocationFailure(n));
        }
        Ok(Vec::from_raw_parts(ptr, n, n))
    }
}

impl<T: Element> Tensor<T> {
    /// Tensor of `shape` with every entry `T::default()` (zero).
    pub fn new(shape: &[usize], order: CoordinateOrder) -> Result<Self> {
        Self::filled(shape, order, T::default())
    }

    pub fn filled(shape: &[usize], order: CoordinateOrder, fill: T) -> Result<Self> {
        let desc = layout_for(shape, order)?;
        let data = filled_vec(desc.size(), fill)?;
        Ok(Tensor { data, desc })
    }

    /// Tensor whose entries are not explicitly initialized.
    ///
    /// The buffer comes straight from a zeroing allocation, which the
    /// allocator can usually satisfy without touching the pages. Entries
    /// happen to read as zero but callers should not rely on it.
    pub fn uninit(shape: &[usize], order: CoordinateOrder) -> Result<Self> {
        let desc = layout_for(shape, order)?;
        let data = zeroed_vec(desc.size())?;
        Ok(Tensor { data, desc })
    }

    /// Wraps `data`, stored in `order`, as a tensor of `shape`.
    pub fn from_vec(shape: &[usize], order: CoordinateOrder, data: Vec<T>) -> Result<Self> {
        let desc = layout_for(shape, order)?;
        if data.len() != desc.size() {
            return Err(Error::SizeMismatch {
                from: data.len(),
                to: desc.size(),
            });
        }
        Ok(Tensor { data, desc })
    }

    /// Tensor with entry `f(c)` at every coordinate `c`.
    pub fn from_fn<F>(shape: &[usize], order: CoordinateOrder, f: F) -> Result<Self>
    where
        F: Fn(&[usize]) -> T,
    {
        let desc = layout_for(shape, order)?;
        let mut data = filled_vec(desc.size(), T::default())?;
        let mut c = vec![0; desc.dimension()];
        for (k, slot) in data.iter_mut().enumerate() {
            desc.index_to_coordinate_into(k, &mut c);
            *slot = f(&c);
        }
        Ok(Tensor { data, desc })
    }

    /// Rank-1 tensor of `n` zeros.
    pub fn vector(n: usize) -> Result<Self> {
        Self::new(&[n], CoordinateOrder::LastMajor)
    }

    /// Rank-2 tensor of zeros with `rows` rows and `cols` columns.
    pub fn matrix(rows: usize, cols: usize) -> Result<Self> {
        Self::new(&[rows, cols], CoordinateOrder::LastMajor)
    }

    pub(crate) fn from_parts(data: Vec<T>, desc: ViewDescriptor) -> Self {
        debug_assert!(desc.is_simple());
        debug_assert_eq!(data.len(), desc.size());
        Tensor { data, desc }
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

    /// Entries in storage order, which is scalar-index order.
    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_vec(self) -> Vec<T> {
        self.data
    }

    pub fn view(&self) -> View<'_, T> {
        View::from_parts(&self.data, self.desc.clone())
    }

    pub fn view_mut(&mut self) -> ViewMut<'_, T> {
        ViewMut::from_parts(&mut self.data, self.desc.clone())
    }

    pub fn get(&self, c: &[usize]) -> Result<T> {
        self.view().get(c)
    }

    pub fn set(&mut self, c: &[usize], value: T) -> Result<()> {
        self.view_mut().set(c, value)
    }

    pub fn get_by_index(&self, x: usize) -> Result<T> {
        self.desc.validate_index(x)?;
        Ok(self.data[x])
    }

    pub fn set_by_index(&mut self, x: usize, value: T) -> Result<()> {
        self.desc.validate_index(x)?;
        self.data[x] = value;
        Ok(())
    }

    pub fn cursor(&self) -> Cursor<'_, T> {
        self.view().cursor()
    }

    pub fn cursor_mut(&mut self) -> CursorMut<'_, T> {
        CursorMut::over(&mut self.data, self.desc.clone())
    }

    /// Changes the shape, keeping the entry at every scalar index.
    pub fn reshape(&mut self, shape: &[usize]) -> Result<()> {
        self.desc.reshape(shape)
    }

    pub fn reshaped(mut self, shape: &[usize]) -> Result<Self> {
        self.reshape(shape)?;
        Ok(self)
    }

    /// Changes the shape and size, keeping entries whose coordinates match.
    ///
    /// On the leading `min(d, d')` axes an old entry at `c` moves to the same
    /// coordinate in the new tensor when it is in bounds there. Axes only the
    /// old tensor has must be 0 for the entry to survive; axes only the new
    /// tensor has are 0 at the surviving entries. Every other new entry is
    /// `fill`.
    pub fn resize(&mut self, shape: &[usize], fill: T) -> Result<()> {
        self.resize_with(Strategy::Auto, shape, fill)
    }

    pub fn resize_with(&mut self, strategy: Strategy, shape: &[usize], fill: T) -> Result<()> {
        let new_desc = layout_for(shape, self.order())?;
        if new_desc == self.desc {
            return Ok(());
        }
        let mut data = filled_vec(new_desc.size(), fill)?;
        let common = self.dimension().min(new_desc.dimension());
        let (old, old_desc) = (&self.data, &self.desc);
        exec::for_each_indexed(strategy, &mut data, |k, slot| {
            let mut inside = true;
            let mut addr = 0;
            new_desc.decompose(k, |j, c| {
                if j < common {
                    if c < old_desc.shape()[j] {
                        addr += old_desc.strides()[j] * c;
                    } else {
                        inside = false;
                    }
                } else if c != 0 {
                    inside = false;
                }
            });
            if inside {
                *slot = old[addr];
            }
        });
        self.data = data;
        self.desc = new_desc;
        self.desc.debug_check();
        Ok(())
    }
}

impl<T: Element, const N: usize> Index<[usize; N]> for Tensor<T> {
    type Output = T;

    fn index(&self, c: [usize; N]) -> &T {
        &self.data[self.desc.address(&c).unwrap_or_else(|e| panic!("{e}"))]
    }
}

impl<T: Element, const N: usize> IndexMut<[usize; N]> for Tensor<T> {
    fn index_mut(&mut self, c: [usize; N]) -> &mut T {
        &mut self.data[self.desc.address(&c).unwrap_or_else(|e| panic!("{e}"))]
    }
}

impl<T: Element> Index<&[usize]> for Tensor<T> {
    type Output = T;

    fn index(&self, c: &[usize]) -> &T {
        &self.data[self.desc.address(c).unwrap_or_else(|e| panic!("{e}"))]
    }
}

impl<T: Element> IndexMut<&[usize]> for Tensor<T> {
    fn index_mut(&mut self, c: &[usize]) -> &mut T {
        &mut self.data[self.desc.address(c).unwrap_or_else(|e| panic!("{e}"))]
    }
}

/// Scalar index; storage order equals index order for tensors.
impl<T: Element> Index<usize> for Tensor<T> {
    type Output = T;

    fn index(&self, x: usize) -> &T {
        &self.data[x]
    }
}

impl<T: Element> IndexMut<usize> for Tensor<T> {
    fn index_mut(&mut self, x: usize) -> &mut T {
        &mut self.data[x]
    }
}
