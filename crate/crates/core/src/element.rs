//! Element kinds a tensor can hold.

use std::fmt::{self, Debug, Display};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Tag for the supported element kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    F32,
    F64,
    I32,
    I64,
    U8,
}

impl ElementKind {
    pub const ALL: [ElementKind; 5] = [
        ElementKind::F32,
        ElementKind::F64,
        ElementKind::I32,
        ElementKind::I64,
        ElementKind::U8,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::F32 => "f32",
            ElementKind::F64 => "f64",
            ElementKind::I32 => "i32",
            ElementKind::I64 => "i64",
            ElementKind::U8 => "u8",
        }
    }

    pub fn byte_width(self) -> usize {
        match self {
            ElementKind::F32 | ElementKind::I32 => 4,
            ElementKind::F64 | ElementKind::I64 => 8,
            ElementKind::U8 => 1,
        }
    }
}

impl Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ElementKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown element kind '{s}'"))
    }
}

mod sealed {
    pub trait Sealed {}
}

/// Numeric element type.
///
/// Sealed: every implementor is a plain number for which the all-zero byte
/// pattern is a valid value, which [`Tensor::uninit`](crate::Tensor::uninit)
/// relies on.
pub trait Element:
    sealed::Sealed + Copy + Default + PartialEq + Debug + Display + FromStr + Send + Sync + 'static
{
    const KIND: ElementKind;
    const ONE: Self;

    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Self;
    /// Integer kinds fail on a zero divisor; float kinds follow IEEE 754.
    fn div(self, rhs: Self) -> Result<Self>;
    fn neg(self) -> Self;

    fn write_le(self, out: &mut Vec<u8>);
    /// `bytes` holds exactly `KIND.byte_width()` bytes.
    fn read_le(bytes: &[u8]) -> Self;

    /// Bit-level equality, so NaNs compare equal to themselves.
    fn bit_eq(self, other: Self) -> bool;
}

macro_rules! float_element {
    ($t:ty, $kind:expr) => {
        impl sealed::Sealed for $t {}

        impl Element for $t {
            const KIND: ElementKind = $kind;
            const ONE: Self = 1.0;

            #[inline]
            fn add(self, rhs: Self) -> Self {
                self + rhs
            }
            #[inline]
            fn sub(self, rhs: Self) -> Self {
                self - rhs
            }
            #[inline]
            fn mul(self, rhs: Self) -> Self {
                self * rhs
            }
            #[inline]
            fn div(self, rhs: Self) -> Result<Self> {
                Ok(self / rhs)
            }
            #[inline]
            fn neg(self) -> Self {
                -self
            }
            fn write_le(self, out: &mut Vec<u8>) {
                out.extend_from_slice(&self.to_le_bytes());
            }
            fn read_le(bytes: &[u8]) -> Self {
                <$t>::from_le_bytes(bytes.try_into().expect("element width"))
            }
            fn bit_eq(self, other: Self) -> bool {
                self.to_bits() == other.to_bits()
            }
        }
    };
}

macro_rules! int_element {
    ($t:ty, $kind:expr) => {
        impl sealed::Sealed for $t {}

        impl Element for $t {
            const KIND: ElementKind = $kind;
            const ONE: Self = 1;

            #[inline]
            fn add(self, rhs: Self) -> Self {
                self.wrapping_add(rhs)
            }
            #[inline]
            fn sub(self, rhs: Self) -> Self {
                self.wrapping_sub(rhs)
            }
            #[inline]
            fn mul(self, rhs: Self) -> Self {
                self.wrapping_mul(rhs)
            }
            #[inline]
            fn div(self, rhs: Self) -> Result<Self> {
                if rhs == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(self.wrapping_div(rhs))
            }
            #[inline]
            fn neg(self) -> Self {
                self.wrapping_neg()
            }
            fn write_le(self, out: &mut Vec<u8>) {
                out.extend_from_slice(&self.to_le_bytes());
            }
            fn read_le(bytes: &[u8]) -> Self {
                <$t>::from_le_bytes(bytes.try_into().expect("element width"))
            }
            fn bit_eq(self, other: Self) -> bool {
                self == other
            }
        }
    };
}

float_element!(f32, ElementKind::F32);
float_element!(f64, ElementKind::F64);
int_element!(i32, ElementKind::I32);
int_element!(i64, ElementKind::I64);
int_element!(u8, ElementKind::U8);
