//! Transforms producing new descriptors from existing ones.
//!
//! Every transform comes in two flavours: a producing method that leaves the
//! receiver untouched (`sub_view`, `bound`, `squeezed`, `permuted`,
//! `transposed`, `transposed_all`, `shifted`, `reshaped`) and an in-place
//! mutator (`bind`, `squeeze`, `permute`, `transpose`, `transpose_all`,
//! `shift`, `reshape`). None of them touch element data.

use crate::error::{Error, Result};
use crate::view::{checked_size, CoordinateOrder, ViewDescriptor};

impl ViewDescriptor {
    /// Window of shape `shape` starting at `base`, in the same coordinate order.
    ///
    /// The new offset is the address of `base` in this view.
    pub fn sub_view(&self, base: &[usize], shape: &[usize]) -> Result<ViewDescriptor> {
        self.sub_view_with_order(base, shape, self.order())
    }

    /// Like [`sub_view`](Self::sub_view) with an explicit coordinate order for
    /// the result.
    pub fn sub_view_with_order(
        &self,
        base: &[usize],
        shape: &[usize],
        order: CoordinateOrder,
    ) -> Result<ViewDescriptor> {
        if self.is_scalar() {
            return Err(Error::ScalarView);
        }
        if shape.len() != self.dimension() {
            return Err(Error::RankMismatch {
                expected: self.dimension(),
                got: shape.len(),
            });
        }
        let offset = self.address(base)?;
        let fits = base
            .iter()
            .zip(shape)
            .zip(self.shape())
            .all(|((&b, &s), &parent)| s >= 1 && b + s <= parent);
        if !fits {
            return Err(Error::SubViewOutOfBounds {
                base: base.to_vec(),
                shape: shape.to_vec(),
                parent: self.shape().to_vec(),
            });
        }
        ViewDescriptor::new(shape.to_vec(), self.strides().to_vec(), offset, order)
    }

    /// The view of rank `d - 1` obtained by fixing coordinate `axis` to `value`.
    pub fn bound(&self, axis: usize, value: usize) -> Result<ViewDescriptor> {
        let mut v = self.clone();
        v.bind(axis, value)?;
        Ok(v)
    }

    pub fn bind(&mut self, axis: usize, value: usize) -> Result<()> {
        if self.is_scalar() {
            return Err(Error::ScalarView);
        }
        if axis >= self.dimension() {
            return Err(Error::AxisOutOfRange {
                axis,
                dimension: self.dimension(),
            });
        }
        let extent = self.shape()[axis];
        if value >= extent {
            return Err(Error::ValueOutOfRange { value, extent });
        }
        let (shape, strides, offset) = self.parts_mut();
        *offset += strides[axis] * value;
        shape.remove(axis);
        strides.remove(axis);
        self.refresh();
        Ok(())
    }

    /// Binds every axis of extent 1 to 0. All-singleton views become scalar.
    pub fn squeezed(&self) -> ViewDescriptor {
        let mut v = self.clone();
        v.squeeze();
        v
    }

    pub fn squeeze(&mut self) {
        if !self.shape().contains(&1) {
            return;
        }
        let (shape, strides, _) = self.parts_mut();
        let mut j = 0;
        strides.retain(|_| {
            let keep = shape[j] != 1;
            j += 1;
            keep
        });
        shape.retain(|&s| s != 1);
        self.refresh();
    }

    /// Reorders the axes so that new axis `j` is old axis `sigma[j]`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<ViewDescriptor> {
        let mut v = self.clone();
        v.permute(sigma)?;
        Ok(v)
    }

    pub fn permute(&mut self, sigma: &[usize]) -> Result<()> {
        if self.is_scalar() {
            return Err(Error::ScalarView);
        }
        let d = self.dimension();
        if sigma.len() != d {
            return Err(Error::RankMismatch {
                expected: d,
                got: sigma.len(),
            });
        }
        let mut seen = vec![false; d];
        for &s in sigma {
            if s >= d || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NotAPermutation(sigma.to_vec()));
            }
        }
        let (shape, strides, _) = self.parts_mut();
        let new_shape: Vec<usize> = sigma.iter().map(|&s| shape[s]).collect();
        let new_strides: Vec<usize> = sigma.iter().map(|&s| strides[s]).collect();
        *shape = new_shape;
        *strides = new_strides;
        self.refresh();
        Ok(())
    }

    /// Swaps axes `j` and `k`.
    pub fn transposed(&self, j: usize, k: usize) -> Result<ViewDescriptor> {
        let mut v = self.clone();
        v.transpose(j, k)?;
        Ok(v)
    }

    pub fn transpose(&mut self, j: usize, k: usize) -> Result<()> {
        let d = self.dimension();
        if let Some(&axis) = [j, k].iter().find(|&&a| a >= d) {
            return Err(Error::AxisOutOfRange { axis, dimension: d });
        }
        let (shape, strides, _) = self.parts_mut();
        shape.swap(j, k);
        strides.swap(j, k);
        self.refresh();
        Ok(())
    }

    /// Reverses the order of the axes.
    pub fn transposed_all(&self) -> Result<ViewDescriptor> {
        let mut v = self.clone();
        v.transpose_all()?;
        Ok(v)
    }

    pub fn transpose_all(&mut self) -> Result<()> {
        if self.is_scalar() {
            return Err(Error::ScalarView);
        }
        let (shape, strides, _) = self.parts_mut();
        shape.reverse();
        strides.reverse();
        self.refresh();
        Ok(())
    }

    /// Rotates the axes by `z` positions: new axis `j` is old axis
    /// `(j - z) mod d`. Any `z` is accepted, including negative values and
    /// values beyond the rank.
    pub fn shifted(&self, z: isize) -> Result<ViewDescriptor> {
        let mut v = self.clone();
        v.shift(z)?;
        Ok(v)
    }

    pub fn shift(&mut self, z: isize) -> Result<()> {
        if self.is_scalar() {
            return Err(Error::ScalarView);
        }
        let d = self.dimension();
        let z = z.rem_euclid(d as isize) as usize;
        let (shape, strides, _) = self.parts_mut();
        shape.rotate_right(z);
        strides.rotate_right(z);
        self.refresh();
        Ok(())
    }

    /// Unstrided view of `shape` over the same elements, in the same order.
    ///
    /// Only unstrided views can be reshaped; the element at every scalar index
    /// is preserved.
    pub fn reshaped(&self, shape: &[usize]) -> Result<ViewDescriptor> {
        let mut v = self.clone();
        v.reshape(shape)?;
        Ok(v)
    }

    pub fn reshape(&mut self, new_shape: &[usize]) -> Result<()> {
        if !self.is_unstrided() {
            return Err(Error::NotUnstrided);
        }
        if let Some(axis) = new_shape.iter().position(|&s| s == 0) {
            return Err(Error::ZeroExtent { axis });
        }
        let to = checked_size(new_shape).ok_or(Error::Overflow)?;
        if to != self.size() {
            return Err(Error::SizeMismatch {
                from: self.size(),
                to,
            });
        }
        *self = ViewDescriptor::unstrided(new_shape.to_vec(), self.offset(), self.order())?;
        Ok(())
    }

    /// Same strides and offset, different coordinate order for scalar
    /// indexing.
    pub fn with_order(&self, order: CoordinateOrder) -> ViewDescriptor {
        let mut v = self.clone();
        v.set_order(order);
        v.refresh();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CoordinateOrder::{FirstMajor, LastMajor};

    fn view(shape: &[usize], strides: &[usize], offset: usize) -> ViewDescriptor {
        ViewDescriptor::new(shape.to_vec(), strides.to_vec(), offset, LastMajor).unwrap()
    }

    fn unstrided(shape: &[usize]) -> ViewDescriptor {
        ViewDescriptor::unstrided(shape.to_vec(), 0, LastMajor).unwrap()
    }

    #[test]
    fn sub_view_examples() {
        let v4 = view(&[2, 3], &[3, 1], 100);
        let v5 = v4.sub_view(&[0, 1], &[2, 2]).unwrap();
        assert_eq!(v5, view(&[2, 2], &[3, 1], 101));

        assert_eq!(v4.sub_view(&[0, 0], &[2, 3]).unwrap(), v4);

        let v1 = view(&[3, 2], &[1, 3], 100);
        let s = v1.sub_view(&[1, 0], &[2, 2]).unwrap();
        assert_eq!(s.offset(), 101);
        assert_eq!(s.strides(), &[1, 3]);
        let addrs: Vec<usize> = [[0, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|c| s.address(c).unwrap())
            .collect();
        assert_eq!(addrs, vec![101, 104, 102, 105]);
    }

    #[test]
    fn sub_view_errors() {
        let v4 = view(&[2, 3], &[3, 1], 100);
        assert!(matches!(
            v4.sub_view(&[1, 1], &[2, 2]),
            Err(Error::SubViewOutOfBounds { .. })
        ));
        assert!(matches!(
            v4.sub_view(&[0, 0], &[2]),
            Err(Error::RankMismatch { .. })
        ));
        assert!(matches!(
            v4.sub_view(&[2, 0], &[1, 1]),
            Err(Error::CoordinateOutOfBounds { .. })
        ));
        assert!(matches!(
            v4.sub_view(&[0, 0], &[0, 1]),
            Err(Error::SubViewOutOfBounds { .. })
        ));
    }

    #[test]
    fn sub_view_explicit_order() {
        let a = unstrided(&[4, 5]);
        let s = a.sub_view_with_order(&[0, 0], &[4, 5], FirstMajor).unwrap();
        assert_eq!(s.order(), FirstMajor);
        assert_eq!(s.strides(), a.strides());
        assert_eq!(s.index_to_coordinate(1).unwrap(), vec![0, 1]);
        assert!(!s.is_unstrided());
    }

    #[test]
    fn bind_examples() {
        let v3 = view(&[2, 3], &[1, 2], 100);
        assert_eq!(v3.bound(0, 1).unwrap(), view(&[3], &[2], 101));
        assert_eq!(v3.bound(1, 0).unwrap().offset(), 100);

        let v6 = view(&[3], &[2], 101);
        let s = v6.bound(0, 2).unwrap();
        assert!(s.is_scalar());
        assert_eq!(s.address_scalar(), Ok(105));
    }

    #[test]
    fn bind_errors() {
        let v3 = view(&[2, 3], &[1, 2], 100);
        assert_eq!(
            v3.bound(2, 0),
            Err(Error::AxisOutOfRange {
                axis: 2,
                dimension: 2
            })
        );
        assert_eq!(
            v3.bound(0, 2),
            Err(Error::ValueOutOfRange {
                value: 2,
                extent: 2
            })
        );
        assert_eq!(
            ViewDescriptor::scalar(0).bound(0, 0),
            Err(Error::ScalarView)
        );
    }

    #[test]
    fn squeeze_examples() {
        let v = view(&[5, 1, 5], &[400, 20, 1], 84);
        let s = v.squeezed();
        assert_eq!(s.shape(), &[5, 5]);
        assert_eq!(s.strides(), &[400, 1]);
        assert_eq!(s.offset(), 84);

        let plain = unstrided(&[2, 3]);
        assert_eq!(plain.squeezed(), plain);

        let ones = view(&[1, 1], &[4, 9], 17);
        let s = ones.squeezed();
        assert!(s.is_scalar());
        assert_eq!(s.address_scalar(), Ok(17));
    }

    #[test]
    fn permute_examples() {
        let v1 = view(&[3, 2], &[1, 3], 100);
        assert_eq!(v1.permuted(&[1, 0]).unwrap(), view(&[2, 3], &[3, 1], 100));
        assert_eq!(v1.permuted(&[0, 1]).unwrap(), v1);
        let a = unstrided(&[3, 2, 4]);
        assert_eq!(a.permuted(&[1, 0, 2]).unwrap().shape(), &[2, 3, 4]);
    }

    #[test]
    fn permute_errors() {
        let a = unstrided(&[3, 2, 4]);
        assert_eq!(
            a.permuted(&[0, 0, 1]),
            Err(Error::NotAPermutation(vec![0, 0, 1]))
        );
        assert_eq!(
            a.permuted(&[0, 1, 3]),
            Err(Error::NotAPermutation(vec![0, 1, 3]))
        );
        assert!(matches!(
            a.permuted(&[0, 1]),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn transpose_examples() {
        let a = unstrided(&[2, 3, 4]);
        assert_eq!(a.transposed(0, 2).unwrap().shape(), &[4, 3, 2]);
        assert_eq!(a.transposed(1, 1).unwrap(), a);
        let v2 = view(&[3, 2], &[2, 1], 100);
        assert_eq!(v2.transposed(0, 1).unwrap(), view(&[2, 3], &[1, 2], 100));
        assert_eq!(
            a.transposed(0, 3),
            Err(Error::AxisOutOfRange {
                axis: 3,
                dimension: 3
            })
        );
    }

    #[test]
    fn transpose_all_examples() {
        let a = unstrided(&[2, 4, 3]);
        assert_eq!(a.transposed_all().unwrap().shape(), &[3, 4, 2]);
        let one = unstrided(&[5]);
        assert_eq!(one.transposed_all().unwrap(), one);
        assert_eq!(a.transposed_all().unwrap().transposed_all().unwrap(), a);
        assert_eq!(
            ViewDescriptor::scalar(0).transposed_all(),
            Err(Error::ScalarView)
        );
    }

    #[test]
    fn shift_examples() {
        let a = unstrided(&[2, 3, 7]);
        assert_eq!(a.shifted(1).unwrap().shape(), &[7, 2, 3]);
        assert_eq!(a.shifted(-1).unwrap().shape(), &[3, 7, 2]);
        for z in [0, 3, -3, 6, -9] {
            assert_eq!(a.shifted(z).unwrap(), a);
        }
        let b = unstrided(&[4, 3, 2]).shifted(-1).unwrap();
        assert_eq!(b.shape(), &[3, 2, 4]);
        assert_eq!(b.shifted(2).unwrap().shape(), &[2, 4, 3]);
    }

    /// Literal transcription of the recursive shift definition, used as an
    /// oracle for the closed form.
    fn shift_recursive(shape: &[usize], z: isize) -> Vec<usize> {
        let d = shape.len() as isize;
        if d <= z.abs() {
            // `%` truncates toward zero, which keeps the sign of z.
            shift_recursive(shape, z % d)
        } else if 0 < z && z < d {
            shift_recursive(shape, z - d)
        } else {
            (0..d)
                .map(|j| shape[(j - z).rem_euclid(d) as usize])
                .collect()
        }
    }

    #[test]
    fn shift_matches_recursive_definition() {
        let shape = [2, 3, 7, 5];
        let v = unstrided(&shape);
        for z in -12..=12 {
            assert_eq!(
                v.shifted(z).unwrap().shape(),
                shift_recursive(&shape, z).as_slice(),
                "z = {z}"
            );
        }
    }

    #[test]
    fn reshape_examples() {
        let a = unstrided(&[3, 2, 4]);
        let r = a.reshaped(&[2, 2, 3, 2]).unwrap();
        assert_eq!(r.strides(), &[1, 2, 4, 12]);
        assert_eq!(r.dimension(), 4);
        assert_eq!(a.reshaped(&[3, 2, 4]).unwrap(), a);
        assert_eq!(
            a.reshaped(&[5, 5]),
            Err(Error::SizeMismatch { from: 24, to: 25 })
        );
        let strided = view(&[3, 2], &[2, 1], 100);
        assert_eq!(strided.reshaped(&[6]), Err(Error::NotUnstrided));
    }

    #[test]
    fn reshape_keeps_offset_and_order() {
        let a = ViewDescriptor::unstrided(vec![4, 6], 10, FirstMajor).unwrap();
        let r = a.reshaped(&[3, 8]).unwrap();
        assert_eq!(r.offset(), 10);
        assert_eq!(r.order(), FirstMajor);
        for k in 0..24 {
            assert_eq!(r.index_to_address(k), a.index_to_address(k));
        }
    }

    #[test]
    fn mutators_match_producers() {
        let a = view(&[2, 3, 4], &[1, 2, 6], 3);
        let mut m = a.clone();
        m.permute(&[2, 0, 1]).unwrap();
        assert_eq!(m, a.permuted(&[2, 0, 1]).unwrap());
        let mut m = a.clone();
        m.shift(5).unwrap();
        assert_eq!(m, a.shifted(5).unwrap());
        let mut m = a.clone();
        m.bind(1, 2).unwrap();
        assert_eq!(m, a.bound(1, 2).unwrap());
    }
}
