//! Text rendering of views and the MTF1 binary tensor format.
//!
//! # Text styles
//!
//! *Table style* prints one line per element in ascending scalar-index order:
//! the coordinates joined by `,`, two spaces, then the value.
//!
//! *Matrix style* prints only values, separated by single spaces. Rank 1 is a
//! single row. In rank 2, row `j` holds the elements with coordinate 0 equal
//! to `j`, column `k` those with coordinate 1 equal to `k`. Higher ranks print
//! one block per combination of the trailing coordinates `2..d`, visited in
//! the view's coordinate order, each preceded by a header `(:,:,c2,...)` and
//! separated from the previous block by a blank line.
//!
//! Integers print exactly and floats in their shortest round-trip form.
//!
//! # MTF1
//!
//! All fields little-endian:
//!
//! | bytes | field                                           |
//! |-------|-------------------------------------------------|
//! | 4     | magic `MTF1`                                    |
//! | 1     | version, 1                                      |
//! | 1     | element code: 1 f32, 2 f64, 3 i32, 4 i64, 5 u8  |
//! | 1     | order code: 0 last-major, 1 first-major         |
//! | 1     | reserved, 0                                     |
//! | 4     | dimension `d` (u32)                             |
//! | 8·d   | shape (u64 each)                                |
//! | ...   | elements in storage order                       |

use std::fmt::Write as _;
use std::io::{Read, Write};

use crate::access::View;
use crate::array::Tensor;
use crate::element::{Element, ElementKind};
use crate::error::{Error, Result};
use crate::view::{CoordinateOrder, ViewDescriptor};

pub const MAGIC: [u8; 4] = *b"MTF1";
pub const VERSION: u8 = 1;

/// Table style rendering.
pub fn render_table<T: Element>(view: &View<'_, T>) -> String {
    let desc = view.descriptor();
    let mut out = String::new();
    let mut c = vec![0; desc.dimension()];
    for (k, value) in view.iter().enumerate() {
        desc.index_to_coordinate_into(k, &mut c);
        for (j, cj) in c.iter().enumerate() {
            if j > 0 {
                out.push(',');
            }
            write!(out, "{cj}").unwrap();
        }
        writeln!(out, "  {value}").unwrap();
    }
    out
}

/// Matrix style rendering.
pub fn render_matrix<T: Element>(view: &View<'_, T>) -> String {
    let mut out = String::new();
    match view.dimension() {
        0 => writeln!(out, "{}", view.scalar().expect("scalar view")).unwrap(),
        1 | 2 => write_rows(&mut out, view, &[]),
        d => {
            let trailing = view.shape()[2..].to_vec();
            let blocks = ViewDescriptor::unstrided(trailing, 0, view.order())
                .expect("extents of a valid view");
            let mut t = vec![0; d - 2];
            for b in 0..blocks.size() {
                blocks.index_to_coordinate_into(b, &mut t);
                if b > 0 {
                    out.push('\n');
                }
                out.push_str("(:,:");
                for tj in &t {
                    write!(out, ",{tj}").unwrap();
                }
                out.push_str(")\n");
                write_rows(&mut out, view, &t);
            }
        }
    }
    out
}

/// Writes the 2-D slice of `view` with trailing coordinates `tail`, or the
/// single row of a rank-1 view.
fn write_rows<T: Element>(out: &mut String, view: &View<'_, T>, tail: &[usize]) {
    let shape = view.shape();
    let (rows, cols) = if shape.len() == 1 {
        (1, shape[0])
    } else {
        (shape[0], shape[1])
    };
    let mut c = Vec::with_capacity(shape.len());
    for j in 0..rows {
        for k in 0..cols {
            c.clear();
            if shape.len() == 1 {
                c.push(k);
            } else {
                c.extend([j, k]);
                c.extend_from_slice(tail);
            }
            let addr = view.descriptor().address_unchecked(&c);
            if k > 0 {
                out.push(' ');
            }
            write!(out, "{}", view.buffer()[addr]).unwrap();
        }
        out.push('\n');
    }
}

fn element_code(kind: ElementKind) -> u8 {
    match kind {
        ElementKind::F32 => 1,
        ElementKind::F64 => 2,
        ElementKind::I32 => 3,
        ElementKind::I64 => 4,
        ElementKind::U8 => 5,
    }
}

fn element_kind(code: u8) -> Result<ElementKind> {
    Ok(match code {
        1 => ElementKind::F32,
        2 => ElementKind::F64,
        3 => ElementKind::I32,
        4 => ElementKind::I64,
        5 => ElementKind::U8,
        other => return Err(Error::UnknownElementCode(other)),
    })
}

fn order_code(order: CoordinateOrder) -> u8 {
    match order {
        CoordinateOrder::LastMajor => 0,
        CoordinateOrder::FirstMajor => 1,
    }
}

fn coordinate_order(code: u8) -> Result<CoordinateOrder> {
    match code {
        0 => Ok(CoordinateOrder::LastMajor),
        1 => Ok(CoordinateOrder::FirstMajor),
        other => Err(Error::UnknownOrderCode(other)),
    }
}

/// Fixed part of an MTF1 header plus the shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorFileHeader {
    pub kind: ElementKind,
    pub order: CoordinateOrder,
    pub shape: Vec<usize>,
}

impl TensorFileHeader {
    pub fn encode(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(12 + 8 * self.shape.len());
        out.extend_from_slice(&MAGIC);
        out.extend([VERSION, element_code(self.kind), order_code(self.order), 0]);
        out.extend_from_slice(&(self.shape.len() as u32).to_le_bytes());
        for &s in &self.shape {
            out.extend_from_slice(&(s as u64).to_le_bytes());
        }
        out
    }

    pub fn read_from<R: Read>(r: &mut R) -> Result<Self> {
        let mut fixed = [0u8; 12];
        read_exact(r, &mut fixed)?;
        let magic: [u8; 4] = fixed[..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(Error::BadMagic(magic));
        }
        if fixed[4] != VERSION {
            return Err(Error::UnsupportedVersion(fixed[4]));
        }
        let kind = element_kind(fixed[5])?;
        let order = coordinate_order(fixed[6])?;
        let dimension = u32::from_le_bytes(fixed[8..12].try_into().unwrap()) as usize;
        let mut shape = Vec::with_capacity(dimension.min(64));
        for axis in 0..dimension {
            let mut b = [0u8; 8];
            read_exact(r, &mut b)?;
            let s = usize::try_from(u64::from_le_bytes(b)).map_err(|_| Error::Overflow)?;
            if s == 0 {
                return Err(Error::ZeroExtent { axis });
            }
            shape.push(s);
        }
        Ok(TensorFileHeader { kind, order, shape })
    }

    /// Payload length in bytes.
    pub fn payload_len(&self) -> Result<u64> {
        crate::view::checked_size(&self.shape)
            .and_then(|n| n.checked_mul(self.kind.byte_width()))
            .map(|n| n as u64)
            .ok_or(Error::Overflow)
    }
}

/// `read_exact` that reports a short read as a truncated stream.
fn read_exact<R: Read>(r: &mut R, buf: &mut [u8]) -> Result<()> {
    let mut got = 0;
    while got < buf.len() {
        match r.read(&mut buf[got..]) {
            Ok(0) => {
                return Err(Error::TruncatedPayload {
                    expected: buf.len() as u64,
                    got: got as u64,
                })
            }
            Ok(n) => got += n,
            Err(e) if e.kind() == std::io::ErrorKind::Interrupted => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(())
}

pub fn write_tensor<W: Write, T: Element>(w: &mut W, tensor: &Tensor<T>) -> Result<()> {
    let header = TensorFileHeader {
        kind: T::KIND,
        order: tensor.order(),
        shape: tensor.shape().to_vec(),
    };
    let mut bytes = header.encode();
    bytes.reserve(tensor.size() * T::KIND.byte_width());
    for &x in tensor.as_slice() {
        x.write_le(&mut bytes);
    }
    w.write_all(&bytes)?;
    Ok(())
}

fn read_payload<R: Read, T: Element>(r: &mut R, header: &TensorFileHeader) -> Result<Tensor<T>> {
    let expected = header.payload_len()?;
    let mut bytes = Vec::new();
    let got = r.by_ref().take(expected).read_to_end(&mut bytes)? as u64;
    if got != expected {
        return Err(Error::TruncatedPayload { expected, got });
    }
    let mut probe = [0u8; 1];
    if r.read(&mut probe)? != 0 {
        return Err(Error::TrailingGarbage);
    }
    let data = bytes
        .chunks_exact(T::KIND.byte_width())
        .map(T::read_le)
        .collect();
    Tensor::from_vec(&header.shape, header.order, data)
}

/// Reads a tensor whose element kind must be `T`.
pub fn read_tensor_as<R: Read, T: Element>(r: &mut R) -> Result<Tensor<T>> {
    let header = TensorFileHeader::read_from(r)?;
    if header.kind != T::KIND {
        return Err(Error::KindMismatch {
            expected: T::KIND.name(),
            found: header.kind.name(),
        });
    }
    read_payload(r, &header)
}

/// A tensor of any supported element kind.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyTensor {
    F32(Tensor<f32>),
    F64(Tensor<f64>),
    I32(Tensor<i32>),
    I64(Tensor<i64>),
    U8(Tensor<u8>),
}

/// Evaluates `$body` with `$t` bound to the tensor inside an [`AnyTensor`].
#[macro_export]
macro_rules! with_any_tensor {
    ($any:expr, $t:ident => $body:expr) => {
        match $any {
            $crate::AnyTensor::F32($t) => $body,
            $crate::AnyTensor::F64($t) => $body,
            $crate::AnyTensor::I32($t) => $body,
            $crate::AnyTensor::I64($t) => $body,
            $crate::AnyTensor::U8($t) => $body,
        }
    };
}

impl AnyTensor {
    pub fn kind(&self) -> ElementKind {
        match self {
            AnyTensor::F32(_) => ElementKind::F32,
            AnyTensor::F64(_) => ElementKind::F64,
            AnyTensor::I32(_) => ElementKind::I32,
            AnyTensor::I64(_) => ElementKind::I64,
            AnyTensor::U8(_) => ElementKind::U8,
        }
    }

    pub fn descriptor(&self) -> &ViewDescriptor {
        with_any_tensor!(self, t => t.descriptor())
    }
}

macro_rules! any_from {
    ($($t:ty => $variant:ident),*) => {$(
        impl From<Tensor<$t>> for AnyTensor {
            fn from(t: Tensor<$t>) -> Self {
                AnyTensor::$variant(t)
            }
        }
    )*};
}

any_from!(f32 => F32, f64 => F64, i32 => I32, i64 => I64, u8 => U8);

pub fn read_tensor<R: Read>(r: &mut R) -> Result<AnyTensor> {
    let header = TensorFileHeader::read_from(r)?;
    Ok(match header.kind {
        ElementKind::F32 => AnyTensor::F32(read_payload(r, &header)?),
        ElementKind::F64 => AnyTensor::F64(read_payload(r, &header)?),
        ElementKind::I32 => AnyTensor::I32(read_payload(r, &header)?),
        ElementKind::I64 => AnyTensor::I64(read_payload(r, &header)?),
        ElementKind::U8 => AnyTensor::U8(read_payload(r, &header)?),
    })
}

pub fn write_any<W: Write>(w: &mut W, tensor: &AnyTensor) -> Result<()> {
    with_any_tensor!(tensor, t => write_tensor(w, t))
}
