//! Flat-array compute kernels. Every kernel has a sequential implementation
//! and (behind the `parallel` feature) a rayon data-parallel one; reductions
//! use fixed-size chunked partial sums folded in chunk order, so parallel
//! and sequential results are bitwise identical for any thread count.

use num_complex::Complex64;

use crate::grid::Grid;

/// Reduction chunk length. Partial sums are always taken over chunks of
/// this size and folded in order, regardless of scheduling.
pub const CHUNK: usize = 4096;

fn chunk_partial(a: &[Complex64], b: &[Complex64], w: &[f64]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for ((x, y), wt) in a.iter().zip(b).zip(w) {
        acc += x.conj() * y * *wt;
    }
    acc
}

/// Weighted inner product `Σ conj(a)·b·w`, sequential path.
pub fn inner_weighted_seq(a: &[Complex64], b: &[Complex64], w: &[f64]) -> Complex64 {
    assert_eq!(a.len(), b.len());
    assert_eq!(a.len(), w.len());
    let mut total = Complex64::new(0.0, 0.0);
    for ((ca, cb), cw) in a.chunks(CHUNK).zip(b.chunks(CHUNK)).zip(w.chunks(CHUNK)) {
        total += chunk_partial(ca, cb, cw);
    }
    total
}

/// Weighted inner product; parallel when the feature is enabled, with the
/// same chunk partials and fold order as the sequential path.
pub fn inner_weighted(a: &[Complex64], b: &[Complex64], w: &[f64]) -> Complex64 {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        assert_eq!(a.len(), b.len());
        assert_eq!(a.len(), w.len());
        let partials: Vec<Complex64> = a
            .par_chunks(CHUNK)
            .zip(b.par_chunks(CHUNK))
            .zip(w.par_chunks(CHUNK))
            .map(|((ca, cb), cw)| chunk_partial(ca, cb, cw))
            .collect();
        let mut total = Complex64::new(0.0, 0.0);
        for p in partials {
            total += p;
        }
        total
    }
    #[cfg(not(feature = "parallel"))]
    {
        inner_weighted_seq(a, b, w)
    }
}

/// The real multiplication fields expressible by the operator tree.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Field {
    /// The constant field 1 (identity multiplication).
    One,
    /// The on-shell energy `ω_p`.
    Omega,
    /// `1/ω_p`.
    InvOmega,
    /// The momentum coordinate along a spatial axis (0, 1, or 2).
    Momentum(usize),
}

#[inline]
fn field_value(grid: &Grid, field: Field, t: usize) -> f64 {
    match field {
        Field::One => 1.0,
        Field::Omega => grid.omega[t],
        Field::InvOmega => 1.0 / grid.omega[t],
        Field::Momentum(axis) => grid.coord(t, axis),
    }
}

/// Pointwise multiplication by a named real field, sequential path.
pub fn multiply_field_seq(grid: &Grid, field: Field, input: &[Complex64], out: &mut [Complex64]) {
    for (t, (o, x)) in out.iter_mut().zip(input).enumerate() {
        *o = *x * field_value(grid, field, t);
    }
}

/// Pointwise multiplication by a named real field.
pub fn multiply_field(grid: &Grid, field: Field, input: &[Complex64], out: &mut [Complex64]) {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        out.par_iter_mut()
            .zip(input.par_iter())
            .enumerate()
            .for_each(|(t, (o, x))| *o = *x * field_value(grid, field, t));
    }
    #[cfg(not(feature = "parallel"))]
    {
        multiply_field_seq(grid, field, input, out);
    }
}

#[inline]
fn diff_at(
    input: &[Complex64],
    t: usize,
    c: usize,
    n: usize,
    stride: usize,
    inv2h: f64,
) -> Complex64 {
    // Symmetric two-point stencil with zero padding outside the grid.
    let up = if c + 1 < n {
        input[t + stride]
    } else {
        Complex64::new(0.0, 0.0)
    };
    let dn = if c > 0 {
        input[t - stride]
    } else {
        Complex64::new(0.0, 0.0)
    };
    (up - dn) * inv2h
}

/// Central difference along a spatial axis, sequential path.
pub fn central_diff_seq(grid: &Grid, axis: usize, input: &[Complex64], out: &mut [Complex64]) {
    let n = grid.spec.n;
    let stride = grid.stride(axis);
    let inv2h = 1.0 / (2.0 * grid.spec.h());
    for (t, o) in out.iter_mut().enumerate() {
        let c = (t / stride) % n;
        *o = diff_at(input, t, c, n, stride, inv2h);
    }
}

/// Central difference along a spatial axis (0, 1, or 2).
pub fn central_diff(grid: &Grid, axis: usize, input: &[Complex64], out: &mut [Complex64]) {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        let n = grid.spec.n;
        let stride = grid.stride(axis);
        let inv2h = 1.0 / (2.0 * grid.spec.h());
        out.par_iter_mut().enumerate().for_each(|(t, o)| {
            let c = (t / stride) % n;
            *o = diff_at(input, t, c, n, stride, inv2h);
        });
    }
    #[cfg(not(feature = "parallel"))]
    {
        central_diff_seq(grid, axis, input, out);
    }
}

/// `acc += c·x`, sequential path.
pub fn axpy_seq(acc: &mut [Complex64], c: Complex64, x: &[Complex64]) {
    for (a, v) in acc.iter_mut().zip(x) {
        *a += c * *v;
    }
}

/// `acc += c·x` elementwise.
pub fn axpy(acc: &mut [Complex64], c: Complex64, x: &[Complex64]) {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        acc.par_iter_mut()
            .zip(x.par_iter())
            .for_each(|(a, v)| *a += c * *v);
    }
    #[cfg(not(feature = "parallel"))]
    {
        axpy_seq(acc, c, x);
    }
}

/// In-place complex scaling.
pub fn scale_in_place(buf: &mut [Complex64], c: Complex64) {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        buf.par_iter_mut().for_each(|v| *v *= c);
    }
    #[cfg(not(feature = "parallel"))]
    {
        for v in buf.iter_mut() {
            *v *= c;
        }
    }
}
