//! Strided multidimensional views over flat buffers.
//!
//! A [`ViewDescriptor`] maps coordinates to buffer addresses through a shape,
//! per-axis strides and an offset. [`View`] and [`ViewMut`] pair a descriptor
//! with a borrowed slice; [`Tensor`] owns its buffer and always uses a simple
//! (unstrided, offset 0) descriptor.
//!
//! Views can be restricted and rearranged without copying (sub-view, bind,
//! squeeze, permute, transpose, shift, reshape). Elementwise arithmetic lives
//! in [`ops`] and text and binary I/O in [`io`].
//!
//! ```
//! use tensorview::{CoordinateOrder, Tensor};
//!
//! let t = Tensor::from_vec(&[2, 3], CoordinateOrder::FirstMajor, (1..=6).collect()).unwrap();
//! let v = t.view().transposed_all().unwrap();
//! assert_eq!(v.shape(), &[3, 2]);
//! assert_eq!(v.get(&[2, 1]).unwrap(), 6);
//! ```

pub mod access;
pub mod array;
pub mod checks;
pub mod element;
pub mod error;
pub mod exec;
pub mod io;
pub mod ops;
mod transform;
pub mod view;

pub use access::{address_ranges_intersect, overlaps, Cursor, CursorMut, View, ViewMut};
pub use array::Tensor;
pub use element::{Element, ElementKind};
pub use error::{Error, Result};
pub use exec::Strategy;
pub use io::{
    read_tensor, read_tensor_as, render_matrix, render_table, write_any, write_tensor, AnyTensor,
    TensorFileHeader,
};
pub use ops::{ew_binary, ew_binary_with, negate, BinaryOp, Operand};
pub use view::{Coordinate, CoordinateOrder, InvariantReport, ViewDescriptor, Violation};
