//! Elementwise arithmetic.
//!
//! Binary operations pair up elements by coordinate, so operands may differ in
//! strides and coordinate order as long as their shapes agree. A scalar
//! operand applies to every coordinate. Results take the shape of the view
//! operands and the coordinate order of the first view operand.
//!
//! The `std::ops` impls on [`Tensor`] are conveniences that panic where the
//! functions here return an error.

use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use crate::access::{self, View, ViewMut};
use crate::array::Tensor;
use crate::element::Element;
use crate::error::{Error, Result};
use crate::exec::{self, Strategy};
use crate::view::{CoordinateOrder, ViewDescriptor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 4] = [BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div];

    pub fn apply<T: Element>(self, a: T, b: T) -> Result<T> {
        match self {
            BinaryOp::Add => Ok(a.add(b)),
            BinaryOp::Sub => Ok(a.sub(b)),
            BinaryOp::Mul => Ok(a.mul(b)),
            BinaryOp::Div => a.div(b),
        }
    }

    /// For use after the divisor has been screened with [`fails_on`].
    #[inline]
    fn apply_screened<T: Element>(self, a: T, b: T) -> T {
        match self.apply(a, b) {
            Ok(v) => v,
            Err(_) => unreachable!("zero divisors are rejected up front"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::Add => "add",
            BinaryOp::Sub => "sub",
            BinaryOp::Mul => "mul",
            BinaryOp::Div => "div",
        }
    }
}

impl fmt::Display for BinaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BinaryOp {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        BinaryOp::ALL
            .into_iter()
            .find(|op| op.name() == s)
            .ok_or_else(|| format!("unknown operation '{s}'"))
    }
}

/// Whether `op` can fail for divisor `b` (integer division by zero).
fn fails_on<T: Element>(op: BinaryOp, b: T) -> bool {
    op == BinaryOp::Div && T::ONE.div(b).is_err()
}

/// Operand of an elementwise operation.
#[derive(Debug, Clone)]
pub enum Operand<'a, T> {
    View(View<'a, T>),
    Scalar(T),
}

impl<'a, T: Element> From<View<'a, T>> for Operand<'a, T> {
    fn from(v: View<'a, T>) -> Self {
        Operand::View(v)
    }
}

impl<'a, T: Element> From<&View<'a, T>> for Operand<'a, T> {
    fn from(v: &View<'a, T>) -> Self {
        Operand::View(v.clone())
    }
}

impl<'a, T: Element> From<&'a Tensor<T>> for Operand<'a, T> {
    fn from(t: &'a Tensor<T>) -> Self {
        Operand::View(t.view())
    }
}

macro_rules! scalar_operand {
    ($($t:ty),*) => {$(
        impl From<$t> for Operand<'_, $t> {
            fn from(v: $t) -> Self {
                Operand::Scalar(v)
            }
        }
    )*};
}

scalar_operand!(f32, f64, i32, i64, u8);

impl<T: Element> Operand<'_, T> {
    fn view(&self) -> Option<&View<'_, T>> {
        match self {
            Operand::View(v) => Some(v),
            Operand::Scalar(_) => None,
        }
    }

    /// Element source that yields the operand's element at scalar index `k`
    /// of a view with the same shape in `order`.
    fn source(&self, order: CoordinateOrder) -> Source<'_, T> {
        match self {
            Operand::View(v) => Source::View(v.buffer(), v.descriptor().with_order(order)),
            Operand::Scalar(s) => Source::Scalar(*s),
        }
    }
}

enum Source<'a, T> {
    View(&'a [T], ViewDescriptor),
    Scalar(T),
}

impl<T: Element> Source<'_, T> {
    #[inline]
    fn at(&self, k: usize) -> T {
        match self {
            Source::View(data, desc) => data[desc.index_to_address(k)],
            Source::Scalar(s) => *s,
        }
    }

    fn any_fails(&self, strategy: Strategy, op: BinaryOp, size: usize) -> bool {
        match self {
            Source::Scalar(s) => fails_on(op, *s),
            Source::View(..) => {
                op == BinaryOp::Div
                    && fails_on(op, T::default())
                    && exec::any_index(strategy, size, |k| fails_on(op, self.at(k)))
            }
        }
    }
}

/// `a op b` elementwise into a new tensor.
pub fn ew_binary<'a, 'b, T: Element>(
    op: BinaryOp,
    a: impl Into<Operand<'a, T>>,
    b: impl Into<Operand<'b, T>>,
) -> Result<Tensor<T>> {
    ew_binary_with(Strategy::Auto, op, &a.into(), &b.into())
}

pub fn ew_binary_with<T: Element>(
    strategy: Strategy,
    op: BinaryOp,
    a: &Operand<'_, T>,
    b: &Operand<'_, T>,
) -> Result<Tensor<T>> {
    let (shape, order) = match (a.view(), b.view()) {
        (Some(x), Some(y)) => {
            if x.shape() != y.shape() {
                return Err(Error::ShapeMismatch {
                    left: x.shape().to_vec(),
                    right: y.shape().to_vec(),
                });
            }
            (x.shape().to_vec(), x.order())
        }
        (Some(x), None) | (None, Some(x)) => (x.shape().to_vec(), x.order()),
        (None, None) => (Vec::new(), CoordinateOrder::default()),
    };
    let mut out = Tensor::new(&shape, order)?;
    let (sa, sb) = (a.source(order), b.source(order));
    if sb.any_fails(strategy, op, out.size()) {
        return Err(Error::DivisionByZero);
    }
    exec::for_each_indexed(strategy, out.as_mut_slice(), |k, o| {
        *o = op.apply_screened(sa.at(k), sb.at(k))
    });
    Ok(out)
}

/// `-a` elementwise into a new tensor.
pub fn negate<T: Element>(a: &View<'_, T>) -> Tensor<T> {
    let mut out = a.to_tensor();
    exec::for_each_indexed(Strategy::Auto, out.as_mut_slice(), |_, o| *o = o.neg());
    out
}

impl<T: Element> ViewMut<'_, T> {
    /// `self op= rhs` elementwise. `rhs` is a separate borrow, so it cannot
    /// overlap `self`.
    pub fn apply(&mut self, op: BinaryOp, rhs: &Operand<'_, T>) -> Result<()> {
        self.apply_with(Strategy::Auto, op, rhs)
    }

    pub fn apply_with(
        &mut self,
        strategy: Strategy,
        op: BinaryOp,
        rhs: &Operand<'_, T>,
    ) -> Result<()> {
        if let Some(v) = rhs.view() {
            if v.shape() != self.shape() {
                return Err(Error::ShapeMismatch {
                    left: self.shape().to_vec(),
                    right: v.shape().to_vec(),
                });
            }
        }
        access::check_destination(self.descriptor())?;
        let src = rhs.source(self.order());
        if src.any_fails(strategy, op, self.size()) {
            return Err(Error::DivisionByZero);
        }
        let (data, desc) = self.parts_mut();
        access::update_indexed(strategy, data, desc, |k, old| {
            op.apply_screened(old, src.at(k))
        });
        Ok(())
    }

    /// `self op= rhs` where `rhs` is a view over this view's own buffer, such
    /// as `x += x`. Behaves as if `rhs` were copied to a temporary first.
    pub fn apply_aliased(&mut self, op: BinaryOp, rhs: &ViewDescriptor) -> Result<()> {
        self.apply_aliased_with(Strategy::Auto, op, rhs)
    }

    pub fn apply_aliased_with(
        &mut self,
        strategy: Strategy,
        op: BinaryOp,
        rhs: &ViewDescriptor,
    ) -> Result<()> {
        let temp = {
            let whole = self.as_view();
            let buffer = whole.buffer();
            let rhs_view = View::new(buffer, rhs.with_order(self.order()))?;
            if rhs_view.shape() != self.shape() {
                return Err(Error::ShapeMismatch {
                    left: self.shape().to_vec(),
                    right: rhs_view.shape().to_vec(),
                });
            }
            if access::address_ranges_intersect(self.descriptor(), rhs) {
                Some(rhs_view.to_tensor_with(strategy))
            } else {
                None
            }
        };
        match temp {
            Some(t) => self.apply_with(strategy, op, &Operand::from(&t)),
            None => {
                access::check_destination(self.descriptor())?;
                let rhs = rhs.with_order(self.order());
                if op == BinaryOp::Div && fails_on(op, T::default()) {
                    let whole = self.as_view();
                    let buffer = whole.buffer();
                    if (0..self.size()).any(|k| fails_on(op, buffer[rhs.index_to_address(k)])) {
                        return Err(Error::DivisionByZero);
                    }
                }
                let (data, desc) = self.parts_mut();
                for k in 0..desc.size() {
                    let b = data[rhs.index_to_address(k)];
                    let a = desc.index_to_address(k);
                    data[a] = op.apply_screened(data[a], b);
                }
                Ok(())
            }
        }
    }

    /// Adds one to every element.
    pub fn increment_all(&mut self) -> Result<()> {
        self.apply(BinaryOp::Add, &Operand::Scalar(T::ONE))
    }

    /// Subtracts one from every element.
    pub fn decrement_all(&mut self) -> Result<()> {
        self.apply(BinaryOp::Sub, &Operand::Scalar(T::ONE))
    }

    /// Negates every element in place.
    pub fn negate_all(&mut self) -> Result<()> {
        access::check_destination(self.descriptor())?;
        let (data, desc) = self.parts_mut();
        access::update_indexed(Strategy::Auto, data, desc, |_, x| x.neg());
        Ok(())
    }
}

impl<T: Element> Tensor<T> {
    /// `self op= rhs` elementwise.
    pub fn apply<'a>(&mut self, op: BinaryOp, rhs: impl Into<Operand<'a, T>>) -> Result<()> {
        self.view_mut().apply(op, &rhs.into())
    }

    pub fn increment_all(&mut self) {
        exec::for_each_indexed(Strategy::Auto, self.as_mut_slice(), |_, x| {
            *x = x.add(T::ONE)
        });
    }

    pub fn decrement_all(&mut self) {
        exec::for_each_indexed(Strategy::Auto, self.as_mut_slice(), |_, x| {
            *x = x.sub(T::ONE)
        });
    }
}

fn unwrap_op<T>(r: Result<T>) -> T {
    r.unwrap_or_else(|e| panic!("{e}"))
}

macro_rules! tensor_binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign_method:ident, $op:expr) => {
        impl<T: Element> $trait<&Tensor<T>> for &Tensor<T> {
            type Output = Tensor<T>;

            fn $method(self, rhs: &Tensor<T>) -> Tensor<T> {
                unwrap_op(ew_binary($op, self, rhs))
            }
        }

        impl<T: Element> $trait<&Tensor<T>> for Tensor<T> {
            type Output = Tensor<T>;

            fn $method(mut self, rhs: &Tensor<T>) -> Tensor<T> {
                unwrap_op(self.apply($op, rhs));
                self
            }
        }

        impl<T: Element> $trait<Tensor<T>> for Tensor<T> {
            type Output = Tensor<T>;

            fn $method(self, rhs: Tensor<T>) -> Tensor<T> {
                self.$method(&rhs)
            }
        }

        impl<T: Element> $trait<Tensor<T>> for &Tensor<T> {
            type Output = Tensor<T>;

            fn $method(self, rhs: Tensor<T>) -> Tensor<T> {
                self.$method(&rhs)
            }
        }

        impl<T: Element> $trait<T> for &Tensor<T> {
            type Output = Tensor<T>;

            fn $method(self, rhs: T) -> Tensor<T> {
                unwrap_op(ew_binary($op, self, Operand::Scalar(rhs)))
            }
        }

        impl<T: Element> $trait<T> for Tensor<T> {
            type Output = Tensor<T>;

            fn $method(mut self, rhs: T) -> Tensor<T> {
                unwrap_op(self.apply($op, Operand::Scalar(rhs)));
                self
            }
        }

        impl<T: Element> $assign_trait<&Tensor<T>> for Tensor<T> {
            fn $assign_method(&mut self, rhs: &Tensor<T>) {
                unwrap_op(self.apply($op, rhs));
            }
        }

        impl<T: Element> $assign_trait<Tensor<T>> for Tensor<T> {
            fn $assign_method(&mut self, rhs: Tensor<T>) {
                unwrap_op(self.apply($op, &rhs));
            }
        }

        impl<T: Element> $assign_trait<T> for Tensor<T> {
            fn $assign_method(&mut self, rhs: T) {
                unwrap_op(self.apply($op, Operand::Scalar(rhs)));
            }
        }
    };
}

tensor_binop!(Add, add, AddAssign, add_assign, BinaryOp::Add);
tensor_binop!(Sub, sub, SubAssign, sub_assign, BinaryOp::Sub);
tensor_binop!(Mul, mul, MulAssign, mul_assign, BinaryOp::Mul);
tensor_binop!(Div, div, DivAssign, div_assign, BinaryOp::Div);

macro_rules! scalar_lhs {
    ($($t:ty),*) => {$(
        impl Add<&Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn add(self, rhs: &Tensor<$t>) -> Tensor<$t> {
                unwrap_op(ew_binary(BinaryOp::Add, Operand::Scalar(self), rhs))
            }
        }
        impl Sub<&Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn sub(self, rhs: &Tensor<$t>) -> Tensor<$t> {
                unwrap_op(ew_binary(BinaryOp::Sub, Operand::Scalar(self), rhs))
            }
        }
        impl Mul<&Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn mul(self, rhs: &Tensor<$t>) -> Tensor<$t> {
                unwrap_op(ew_binary(BinaryOp::Mul, Operand::Scalar(self), rhs))
            }
        }
        impl Div<&Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn div(self, rhs: &Tensor<$t>) -> Tensor<$t> {
                unwrap_op(ew_binary(BinaryOp::Div, Operand::Scalar(self), rhs))
            }
        }
        impl Add<Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn add(self, rhs: Tensor<$t>) -> Tensor<$t> {
                self + &rhs
            }
        }
        impl Sub<Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn sub(self, rhs: Tensor<$t>) -> Tensor<$t> {
                self - &rhs
            }
        }
        impl Mul<Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn mul(self, rhs: Tensor<$t>) -> Tensor<$t> {
                self * &rhs
            }
        }
        impl Div<Tensor<$t>> for $t {
            type Output = Tensor<$t>;
            fn div(self, rhs: Tensor<$t>) -> Tensor<$t> {
                self / &rhs
            }
        }
    )*};
}

scalar_lhs!(f32, f64, i32, i64, u8);

impl<T: Element> Neg for &Tensor<T> {
    type Output = Tensor<T>;

    fn neg(self) -> Tensor<T> {
        negate(&self.view())
    }
}

impl<T: Element> Neg for Tensor<T> {
    type Output = Tensor<T>;

    fn neg(mut self) -> Tensor<T> {
        exec::for_each_indexed(Strategy::Auto, self.as_mut_slice(), |_, x| *x = x.neg());
        self
    }
}
