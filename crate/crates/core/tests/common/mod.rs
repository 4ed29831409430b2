//! Generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use tensorview::{BinaryOp, CoordinateOrder, ViewDescriptor};

pub use CoordinateOrder::{FirstMajor, LastMajor};

pub fn arb_order() -> impl Strategy<Value = CoordinateOrder> {
    prop_oneof![Just(FirstMajor), Just(LastMajor)]
}

pub fn arb_op() -> impl Strategy<Value = BinaryOp> {
    prop_oneof![
        Just(BinaryOp::Add),
        Just(BinaryOp::Sub),
        Just(BinaryOp::Mul),
        Just(BinaryOp::Div)
    ]
}

pub fn arb_shape(max_rank: usize, max_extent: usize) -> impl Strategy<Value = Vec<usize>> {
    vec(1..=max_extent, 0..=max_rank)
}

pub fn arb_shape_nonempty(max_rank: usize, max_extent: usize) -> impl Strategy<Value = Vec<usize>> {
    vec(1..=max_extent, 1..=max_rank)
}

/// Rank ≤ `max_rank`, extents in 1..=4, strides in 0..=8, offset in 0..=8.
pub fn arb_view(max_rank: usize) -> impl Strategy<Value = ViewDescriptor> {
    (0..=max_rank)
        .prop_flat_map(|d| {
            (
                vec(1..=4usize, d),
                vec(0..=8usize, d),
                0..=8usize,
                arb_order(),
            )
        })
        .prop_map(|(s, t, p, o)| ViewDescriptor::new(s, t, p, o).unwrap())
}

pub fn arb_view_nonempty(max_rank: usize) -> impl Strategy<Value = ViewDescriptor> {
    (1..=max_rank)
        .prop_flat_map(|d| {
            (
                vec(1..=4usize, d),
                vec(0..=8usize, d),
                0..=8usize,
                arb_order(),
            )
        })
        .prop_map(|(s, t, p, o)| ViewDescriptor::new(s, t, p, o).unwrap())
}

pub fn arb_unstrided(max_rank: usize) -> impl Strategy<Value = ViewDescriptor> {
    (arb_shape(max_rank, 4), 0..=8usize, arb_order())
        .prop_map(|(s, p, o)| ViewDescriptor::unstrided(s, p, o).unwrap())
}

/// A permutation of `0..d`.
pub fn arb_permutation(d: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..d).collect::<Vec<_>>()).prop_shuffle()
}

/// Addressing by direct summation over the raw fields.
pub fn brute_address(view: &ViewDescriptor, c: &[usize]) -> usize {
    let mut a = view.offset();
    for (t, x) in view.strides().iter().zip(c) {
        a += t * x;
    }
    a
}

/// Every coordinate of `shape` in scalar-index order, by odometer counting.
/// First-major increments the last axis fastest, last-major the first.
pub fn all_coordinates(shape: &[usize], order: CoordinateOrder) -> Vec<Vec<usize>> {
    let d = shape.len();
    let axes: Vec<usize> = match order {
        FirstMajor => (0..d).rev().collect(),
        LastMajor => (0..d).collect(),
    };
    let mut out = Vec::new();
    let mut c = vec![0; d];
    loop {
        out.push(c.clone());
        let mut carried = true;
        for &j in &axes {
            c[j] += 1;
            if c[j] < shape[j] {
                carried = false;
                break;
            }
            c[j] = 0;
        }
        if carried {
            return out;
        }
    }
}

/// Sorted multiset of addresses reached by a view.
pub fn address_multiset(view: &ViewDescriptor) -> Vec<usize> {
    let mut a: Vec<usize> = all_coordinates(view.shape(), view.order())
        .iter()
        .map(|c| brute_address(view, c))
        .collect();
    a.sort_unstable();
    a
}

/// Resize by enumerating every (old, new) coordinate pair and keeping those
/// that agree on the shared leading axes and are zero on all others.
pub fn resize_oracle<T: Copy>(
    old_shape: &[usize],
    old_get: impl Fn(&[usize]) -> T,
    new_shape: &[usize],
    fill: T,
) -> Vec<(Vec<usize>, T)> {
    let m = old_shape.len().min(new_shape.len());
    let olds = all_coordinates(old_shape, FirstMajor);
    all_coordinates(new_shape, FirstMajor)
        .into_iter()
        .map(|cn| {
            let hit = olds.iter().find(|co| {
                (0..m).all(|j| co[j] == cn[j])
                    && co[m..].iter().all(|&x| x == 0)
                    && cn[m..].iter().all(|&x| x == 0)
            });
            let v = match hit {
                Some(co) => old_get(co),
                None => fill,
            };
            (cn, v)
        })
        .collect()
}

/// Fixture buffer: 1..=6 at indices 100..=105.
pub fn fixture_buffer() -> Vec<i32> {
    let mut b = vec![0; 106];
    for (i, v) in (100..106).zip(1..) {
        b[i] = v;
    }
    b
}

/// Six views over the fixture buffer as (shape, strides, offset, expected matrix text).
pub fn fixture_views() -> Vec<(Vec<usize>, Vec<usize>, usize, &'static str)> {
    vec![
        (vec![3, 2], vec![1, 3], 100, "1 4\n2 5\n3 6\n"),
        (vec![3, 2], vec![2, 1], 100, "1 2\n3 4\n5 6\n"),
        (vec![2, 3], vec![1, 2], 100, "1 3 5\n2 4 6\n"),
        (vec![2, 3], vec![3, 1], 100, "1 2 3\n4 5 6\n"),
        (vec![2, 2], vec![3, 1], 101, "2 3\n5 6\n"),
        (vec![3], vec![2], 101, "2 4 6\n"),
    ]
}

/// Destination/source descriptor pair of equal shape over one buffer of
/// `len` elements. The destination never has a zero stride on an axis of
/// extent > 1. Sources include self, shifted aliases and unstrided layouts.
pub fn arb_alias_pair(len: usize) -> impl Strategy<Value = (ViewDescriptor, ViewDescriptor)> {
    (1..=3usize)
        .prop_flat_map(move |d| {
            (
                vec(1..=3usize, d),
                vec(1..=4usize, d),
                vec(0..=4usize, d),
                0..len,
                0..len,
                arb_order(),
                arb_order(),
                0..4u8,
            )
        })
        .prop_filter_map(
            "views must fit the buffer",
            move |(shape, dst_t, src_t, dp, sp, dord, sord, kind)| {
                let dst = match kind {
                    0 => ViewDescriptor::unstrided(shape.clone(), dp, dord).ok()?,
                    _ => ViewDescriptor::new(shape.clone(), dst_t, dp, dord).ok()?,
                };
                let src = match kind {
                    0 => ViewDescriptor::unstrided(shape.clone(), sp, sord).ok()?,
                    1 => dst.clone(),
                    2 => ViewDescriptor::new(shape, dst.strides().to_vec(), sp, sord).ok()?,
                    _ => ViewDescriptor::new(shape, src_t, sp, sord).ok()?,
                };
                (dst.max_address() < len && src.max_address() < len).then_some((dst, src))
            },
        )
}

/// Copies every source element into a temporary, then writes the
/// destination sequentially in its own index order.
pub fn assign_oracle<T: Copy>(buf: &mut [T], dst: &ViewDescriptor, src: &ViewDescriptor) {
    let coords = all_coordinates(dst.shape(), dst.order());
    let temp: Vec<T> = coords.iter().map(|c| buf[brute_address(src, c)]).collect();
    for (c, v) in coords.iter().zip(temp) {
        buf[brute_address(dst, c)] = v;
    }
}

/// `dst ← dst op src` through a temporary copy of `src`.
pub fn apply_oracle<T: Copy>(
    buf: &mut [T],
    dst: &ViewDescriptor,
    src: &ViewDescriptor,
    f: impl Fn(T, T) -> T,
) {
    let coords = all_coordinates(dst.shape(), dst.order());
    let temp: Vec<T> = coords.iter().map(|c| buf[brute_address(src, c)]).collect();
    for (c, v) in coords.iter().zip(temp) {
        let a = brute_address(dst, c);
        buf[a] = f(buf[a], v);
    }
}

/// Plain arithmetic used as the per-element reference.
pub fn f64_op(op: BinaryOp) -> fn(f64, f64) -> f64 {
    match op {
        BinaryOp::Add => |a, b| a + b,
        BinaryOp::Sub => |a, b| a - b,
        BinaryOp::Mul => |a, b| a * b,
        BinaryOp::Div => |a, b| a / b,
    }
}

pub fn i32_op(op: BinaryOp) -> fn(i32, i32) -> i32 {
    match op {
        BinaryOp::Add => i32::wrapping_add,
        BinaryOp::Sub => i32::wrapping_sub,
        BinaryOp::Mul => i32::wrapping_mul,
        BinaryOp::Div => i32::wrapping_div,
    }
}
