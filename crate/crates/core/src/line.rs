//! One-particle numerics on the real line.
//!
//! Functions are sampled on a uniform grid over `[-X, X)` and moved to
//! momentum space by a discrete Fourier transform normalized as
//! `f̂(p) = (1/2π) ∫ e^{-ipx} f(x) dx`; the grid frequencies are
//! `p_m = π m / X` with `m` running over signed indices.  On top of the
//! transform the module provides unimodular Fourier multipliers, the
//! symplectic form `ω(f,g) = ½∫⟨f'(x), g(x)⟩ dx/2π`, half-line
//! endomorphism defects, spanning families for boundary subspaces of a
//! double cone, and a dilation/translation commutation probe.

use crate::fourier::{fft_in_place, ifft_in_place};
use crate::inner::{MatrixInnerFunction, SymmetricInnerFunction};
use crate::loops::ModeSpace;
use crate::real::{rl, Real, C};
use thiserror::Error;

/// Supports must stay this many grid steps away from the window edges so
/// that periodization leakage stays below the tolerances used here.
pub const EDGE_MARGIN_STEPS: usize = 8;

/// Half-line defect tests require supports separated from the origin by
/// this many grid steps.
pub const ORIGIN_MARGIN_STEPS: usize = 4;

/// Relative threshold used when measuring a support interval from samples.
const SUPPORT_REL_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LineError {
    #[error("grid length must be a power of two and at least 8, got {0}")]
    BadLength(usize),
    #[error("grid half width must be positive and finite")]
    BadHalfWidth,
    #[error("component count mismatch: expected {expected}, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("sample count mismatch: expected {expected}, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("operands live on different grids")]
    GridMismatch,
    #[error("spectral energy above half the Nyquist frequency exceeds the aliasing budget")]
    Aliased,
    #[error("support violates the required margin from the origin or the window edge")]
    SupportMargin,
    #[error("dilated support escapes the sample window")]
    SupportEscape,
    #[error("double cone intervals must be ordered, disjoint, and inside the window")]
    BadDoubleCone,
    #[error("translation is not an integer number of grid steps")]
    OffGridShift,
}

/// Uniform sample grid `x_j = -X + j·dx`, `dx = 2X/N`, with `N` a power of
/// two.  Momentum bins are `p_m = π m/X` for signed `m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineGrid<T> {
    half_width: T,
    len: usize,
}

impl<T: Real> LineGrid<T> {
    pub fn new(half_width: T, len: usize) -> Result<Self, LineError> {
        if len < 8 || !len.is_power_of_two() {
            return Err(LineError::BadLength(len));
        }
        if !(half_width > T::zero()) || !half_width.is_finite() {
            return Err(LineError::BadHalfWidth);
        }
        Ok(LineGrid { half_width, len })
    }

    /// Default verification grid: `X = 64`, `N = 2^14`.
    pub fn standard() -> Self {
        LineGrid { half_width: rl::<T>(64.0), len: 1 << 14 }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn half_width(&self) -> T {
        self.half_width
    }

    pub fn dx(&self) -> T {
        rl::<T>(2.0) * self.half_width / rl::<T>(self.len as f64)
    }

    pub fn dp(&self) -> T {
        T::PI() / self.half_width
    }

    pub fn x(&self, j: usize) -> T {
        -self.half_width + rl::<T>(j as f64) * self.dx()
    }

    /// Signed frequency index of bin `m` (the upper half wraps to negative).
    pub fn signed_index(&self, m: usize) -> i64 {
        if m < self.len / 2 {
            m as i64
        } else {
            m as i64 - self.len as i64
        }
    }

    pub fn p(&self, m: usize) -> T {
        self.dp() * rl::<T>(self.signed_index(m) as f64)
    }

    /// Nearest integer step count for a shift by `t`; errors unless `t` is
    /// an integer multiple of `dx` to within `1e-9` relative accuracy.
    pub fn shift_steps(&self, t: T) -> Result<i64, LineError> {
        let ratio = t / self.dx();
        let rounded = ratio.round();
        let tol = rl::<T>(1e-9) * (T::one() + ratio.abs());
        if (ratio - rounded).abs() > tol {
            return Err(LineError::OffGridShift);
        }
        Ok(rounded.to_f64().unwrap_or(0.0) as i64)
    }

    fn edge_margin(&self) -> T {
        rl::<T>(EDGE_MARGIN_STEPS as f64) * self.dx()
    }
}

/// Real vector-valued function sampled on a [`LineGrid`], stored
/// component-major.  `support` records the declared support interval when
/// one is known; multiplier outputs drop the declaration.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledLineFunction<T> {
    grid: LineGrid<T>,
    values: Vec<Vec<T>>,
    support: Option<(T, T)>,
}

impl<T: Real> SampledLineFunction<T> {
    pub fn zero(grid: LineGrid<T>, rank: usize) -> Self {
        SampledLineFunction {
            grid,
            values: vec![vec![T::zero(); grid.len()]; rank],
            support: None,
        }
    }

    pub fn from_components(
        grid: LineGrid<T>,
        values: Vec<Vec<T>>,
    ) -> Result<Self, LineError> {
        for row in &values {
            if row.len() != grid.len() {
                return Err(LineError::SampleCount { expected: grid.len(), got: row.len() });
            }
        }
        Ok(SampledLineFunction { grid, values, support: None })
    }

    /// Sample `profile` into component `component` of a rank-`rank`
    /// function.  When `support` is declared, samples outside it are set to
    /// exact zeros.
    pub fn sample(
        grid: LineGrid<T>,
        rank: usize,
        component: usize,
        profile: impl Fn(T) -> T,
        support: Option<(T, T)>,
    ) -> Self {
        let mut values = vec![vec![T::zero(); grid.len()]; rank];
        for j in 0..grid.len() {
            let x = grid.x(j);
            let inside = match support {
                Some((lo, hi)) => x > lo && x < hi,
                None => true,
            };
            if inside {
                values[component][j] = profile(x);
            }
        }
        SampledLineFunction { grid, values, support }
    }

    /// Sample a scalar profile against a fixed coefficient vector:
    /// component `d` holds `direction[d]·profile(x)`.
    pub fn sample_directed(
        grid: LineGrid<T>,
        direction: &[T],
        profile: impl Fn(T) -> T,
        support: Option<(T, T)>,
    ) -> Self {
        let mut values = vec![vec![T::zero(); grid.len()]; direction.len()];
        for j in 0..grid.len() {
            let x = grid.x(j);
            let inside = match support {
                Some((lo, hi)) => x > lo && x < hi,
                None => true,
            };
            if inside {
                let v = profile(x);
                for (d, &a) in direction.iter().enumerate() {
                    values[d][j] = a * v;
                }
            }
        }
        SampledLineFunction { grid, values, support }
    }

    pub fn grid(&self) -> &LineGrid<T> {
        &self.grid
    }

    pub fn rank(&self) -> usize {
        self.values.len()
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn component(&self, d: usize) -> &[T] {
        &self.values[d]
    }

    pub fn components(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn declared_support(&self) -> Option<(T, T)> {
        self.support
    }

    pub fn add(&self, other: &Self) -> Result<Self, LineError> {
        if self.grid != other.grid {
            return Err(LineError::GridMismatch);
        }
        if self.rank() != other.rank() {
            return Err(LineError::ComponentCount { expected: self.rank(), got: other.rank() });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x + y).collect())
            .collect();
        let support = match (self.support, other.support) {
            (Some((a, b)), Some((c, d))) => Some((a.min(c), b.max(d))),
            _ => None,
        };
        Ok(SampledLineFunction { grid: self.grid, values, support })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, LineError> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(-T::one())
    }

    pub fn scale(&self, a: T) -> Self {
        let values = self
            .values
            .iter()
            .map(|row| row.iter().map(|&v| a * v).collect())
            .collect();
        SampledLineFunction { grid: self.grid, values, support: self.support }
    }

    pub fn sup_norm(&self) -> T {
        let mut worst = T::zero();
        for row in &self.values {
            for &v in row {
                worst = worst.max(v.abs());
            }
        }
        worst
    }

    /// `L²` norm with the plain (componentwise) integrand.
    pub fn l2_norm(&self) -> T {
        let mut acc = T::zero();
        for row in &self.values {
            for &v in row {
                acc = acc + v * v;
            }
        }
        (acc * self.grid.dx()).sqrt()
    }

    /// Smallest interval of grid points carrying samples above
    /// `SUPPORT_REL_TOL` times the sup norm; `None` for the zero function.
    pub fn measured_support(&self) -> Option<(T, T)> {
        let sup = self.sup_norm();
        if sup == T::zero() {
            return None;
        }
        let thr = rl::<T>(SUPPORT_REL_TOL) * sup;
        let mut lo = None;
        let mut hi = None;
        for j in 0..self.grid.len() {
            let nonzero = self.values.iter().any(|row| row[j].abs() > thr);
            if nonzero {
                if lo.is_none() {
                    lo = Some(self.grid.x(j));
                }
                hi = Some(self.grid.x(j));
            }
        }
        Some((lo?, hi?))
    }

    fn support_for_checks(&self) -> Option<(T, T)> {
        self.support.or_else(|| self.measured_support())
    }

    /// Circular shift by `k` grid steps: the result at `x_j` is the input
    /// at `x_{j-k}`, i.e. translation by `k·dx` with wraparound.
    pub fn index_shift(&self, k: i64) -> Self {
        let n = self.grid.len() as i64;
        let values = self
            .values
            .iter()
            .map(|row| {
                (0..n)
                    .map(|j| {
                        let src = (j - k).rem_euclid(n) as usize;
                        row[src]
                    })
                    .collect()
            })
            .collect();
        let shift = rl::<T>(k as f64) * self.grid.dx();
        let support = self.support.map(|(a, b)| (a + shift, b + shift));
        SampledLineFunction { grid: self.grid, values, support }
    }

    /// Translation by an exact multiple of the grid step.
    pub fn translate(&self, t: T) -> Result<Self, LineError> {
        Ok(self.index_shift(self.grid.shift_steps(t)?))
    }

    pub fn sup_distance(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for (a, b) in self.values.iter().zip(&other.values) {
            for (&x, &y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
        worst
    }

    /// Forward transform; bins hold `f̂(p_m) = (dx/2π)(-1)^m Σ_j f_j e^{-2πi mj/N}`.
    pub fn transform(&self) -> SpectralLineFunction<T> {
        let scale = self.grid.dx() / (rl::<T>(2.0) * T::PI());
        let modes = self
            .values
            .iter()
            .map(|row| {
                let mut buf: Vec<C<T>> =
                    row.iter().map(|&v| C::new(v, T::zero())).collect();
                fft_in_place(&mut buf);
                for (m, z) in buf.iter_mut().enumerate() {
                    let sign = if m % 2 == 0 { scale } else { -scale };
                    *z = z.scale(sign);
                }
                buf
            })
            .collect();
        SpectralLineFunction { grid: self.grid, modes }
    }
}

/// Momentum-space image of a [`SampledLineFunction`], component-major;
/// bin `m` carries the frequency `p_m = π·signed(m)/X`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralLineFunction<T> {
    grid: LineGrid<T>,
    modes: Vec<Vec<C<T>>>,
}

impl<T: Real> SpectralLineFunction<T> {
    pub fn from_modes(
        grid: LineGrid<T>,
        modes: Vec<Vec<C<T>>>,
    ) -> Result<Self, LineError> {
        for row in &modes {
            if row.len() != grid.len() {
                return Err(LineError::SampleCount { expected: grid.len(), got: row.len() });
            }
        }
        Ok(SpectralLineFunction { grid, modes })
    }

    pub fn grid(&self) -> &LineGrid<T> {
        &self.grid
    }

    pub fn rank(&self) -> usize {
        self.modes.len()
    }

    pub fn mode_component(&self, d: usize) -> &[C<T>] {
        &self.modes[d]
    }

    pub fn modes(&self) -> &[Vec<C<T>>] {
        &self.modes
    }

    /// Inverse transform together with the largest imaginary residue of
    /// the reconstructed samples.
    pub fn inverse_with_residue(&self) -> (SampledLineFunction<T>, T) {
        let dp = self.grid.dp();
        let mut residue = T::zero();
        let values = self
            .modes
            .iter()
            .map(|row| {
                let mut buf: Vec<C<T>> = row
                    .iter()
                    .enumerate()
                    .map(|(m, &z)| if m % 2 == 0 { z } else { -z })
                    .collect();
                ifft_in_place(&mut buf);
                buf.iter()
                    .map(|z| {
                        residue = residue.max((z.im * dp).abs());
                        z.re * dp
                    })
                    .collect()
            })
            .collect();
        (
            SampledLineFunction { grid: self.grid, values, support: None },
            residue,
        )
    }

    pub fn inverse(&self) -> SampledLineFunction<T> {
        self.inverse_with_residue().0
    }

    /// Max deviation from the reality condition `conj(f̂(p)) = f̂(-p)`.
    pub fn hermitian_defect(&self) -> T {
        let n = self.grid.len();
        let mut worst = T::zero();
        for row in &self.modes {
            for m in 0..n {
                let mirror = (n - m) % n;
                let d = (row[m].conj() - row[mirror]).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn energy(&self) -> T {
        let mut acc = T::zero();
        for row in &self.modes {
            for z in row {
                acc = acc + z.norm_sqr();
            }
        }
        acc
    }

    /// Fraction of spectral energy at or above half the Nyquist frequency.
    pub fn high_band_fraction(&self) -> T {
        let n = self.grid.len();
        let mut high = T::zero();
        let mut total = T::zero();
        for row in &self.modes {
            for (m, z) in row.iter().enumerate() {
                let e = z.norm_sqr();
                total = total + e;
                if self.grid.signed_index(m).unsigned_abs() as usize >= n / 4 {
                    high = high + e;
                }
            }
        }
        if total == T::zero() {
            T::zero()
        } else {
            high / total
        }
    }

    /// Pointwise scalar multiplier `f̂(p) ↦ m(p)·f̂(p)` on every component.
    pub fn apply_scalar(&self, multiplier: impl Fn(T) -> C<T>) -> Self {
        let factors: Vec<C<T>> =
            (0..self.grid.len()).map(|m| multiplier(self.grid.p(m))).collect();
        let modes = self
            .modes
            .iter()
            .map(|row| row.iter().zip(&factors).map(|(&z, &f)| z * f).collect())
            .collect();
        SpectralLineFunction { grid: self.grid, modes }
    }

    /// Pointwise matrix multiplier mixing components:
    /// `f̂_d(p) ↦ Σ_e M(p)[d][e]·f̂_e(p)`.
    pub fn apply_matrix(&self, multiplier: impl Fn(T) -> Vec<Vec<C<T>>>) -> Self {
        let rank = self.rank();
        let n = self.grid.len();
        let mut modes = vec![vec![C::new(T::zero(), T::zero()); n]; rank];
        for m in 0..n {
            let mat = multiplier(self.grid.p(m));
            for d in 0..rank {
                let mut acc = C::new(T::zero(), T::zero());
                for e in 0..rank {
                    acc = acc + mat[d][e] * self.modes[e][m];
                }
                modes[d][m] = acc;
            }
        }
        SpectralLineFunction { grid: self.grid, modes }
    }

    /// Translation by arbitrary `t`: multiplication by `e^{-ipt}`.
    pub fn translate(&self, t: T) -> Self {
        self.apply_scalar(|p| C::from_polar(T::one(), -p * t))
    }

    /// Spectral derivative `f̂ ↦ ip·f̂`; the Nyquist bin is dropped to keep
    /// the result real.
    pub fn derivative(&self) -> Self {
        let n = self.grid.len();
        let mut out = self.apply_scalar(|p| C::new(T::zero(), p));
        for row in &mut out.modes {
            row[n / 2] = C::new(T::zero(), T::zero());
        }
        out
    }

    /// Periodic antiderivative `f̂ ↦ f̂/(ip)`; the mean and Nyquist bins are
    /// set to zero, so the result is the primitive of the mean-free part.
    pub fn antiderivative_periodic(&self) -> Self {
        let n = self.grid.len();
        let modes = self
            .modes
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(m, &z)| {
                        if m == 0 || m == n / 2 {
                            C::new(T::zero(), T::zero())
                        } else {
                            z / C::new(T::zero(), self.grid.p(m))
                        }
                    })
                    .collect()
            })
            .collect();
        SpectralLineFunction { grid: self.grid, modes }
    }

    pub fn add(&self, other: &Self) -> Result<Self, LineError> {
        if self.grid != other.grid {
            return Err(LineError::GridMismatch);
        }
        if self.rank() != other.rank() {
            return Err(LineError::ComponentCount { expected: self.rank(), got: other.rank() });
        }
        let modes = self
            .modes
            .iter()
            .zip(&other.modes)
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| x + y).collect())
            .collect();
        Ok(SpectralLineFunction { grid: self.grid, modes })
    }
}

/// Spec-level multiplier application: gates on the aliasing precondition
/// (spectral energy above half the Nyquist frequency below `1e-10` of the
/// total), multiplies by `m(p)`, and returns the real inverse along with
/// its imaginary residue.  A residue of order one signals a multiplier
/// without the symmetry `m(-p) = conj(m(p))`.
pub fn apply_multiplier<T: Real>(
    f: &SampledLineFunction<T>,
    multiplier: impl Fn(T) -> C<T>,
) -> Result<(SampledLineFunction<T>, T), LineError> {
    let spectrum = f.transform();
    if spectrum.high_band_fraction() > rl::<T>(1e-10) {
        return Err(LineError::Aliased);
    }
    Ok(spectrum.apply_scalar(multiplier).inverse_with_residue())
}

/// Action of `φ(P)` on samples for a symmetric inner function `φ`: with the
/// transform convention used here this is multiplication by the boundary
/// value `conj(φ(p))`, which extends boundedly to the lower half-plane and
/// hence preserves right half-line supports.  For the singular factor
/// `e^{itz}` it reduces to the right translation `T(t)`.
pub fn apply_inner_scalar<T: Real>(
    f: &SampledLineFunction<T>,
    phi: &SymmetricInnerFunction<T>,
) -> SampledLineFunction<T> {
    f.transform().apply_scalar(|p| phi.eval_real(p).conj()).inverse()
}

/// Blockwise action of a matrix inner function, conjugated the same way as
/// the scalar case.
pub fn apply_inner_matrix<T: Real>(
    f: &SampledLineFunction<T>,
    phi: &MatrixInnerFunction<T>,
) -> Result<SampledLineFunction<T>, LineError> {
    let rank = phi.lattice().rank();
    if f.rank() != rank {
        return Err(LineError::ComponentCount { expected: rank, got: f.rank() });
    }
    Ok(f
        .transform()
        .apply_matrix(|p| {
            phi.eval_real(p)
                .into_iter()
                .map(|row| row.into_iter().map(|z| z.conj()).collect())
                .collect()
        })
        .inverse())
}

/// One-particle inner product `(f,g) = ∫_0^∞ p·⟨conj(f̂(p)), ĝ(p)⟩_G dp`
/// evaluated on the positive frequency bins.
pub fn line_inner_spectral<T: Real>(
    f: &SpectralLineFunction<T>,
    g: &SpectralLineFunction<T>,
    space: &ModeSpace<T>,
) -> C<T> {
    assert_eq!(f.grid(), g.grid(), "operands live on different grids");
    let n = f.grid().len();
    let dp = f.grid().dp();
    let rank = f.rank();
    let mut acc = C::new(T::zero(), T::zero());
    let mut fm = vec![C::new(T::zero(), T::zero()); rank];
    let mut gm = vec![C::new(T::zero(), T::zero()); rank];
    for m in 1..n / 2 {
        for d in 0..rank {
            fm[d] = f.modes[d][m].conj();
            gm[d] = g.modes[d][m];
        }
        acc = acc + space.pair_c(&fm, &gm).scale(f.grid().p(m));
    }
    acc.scale(dp)
}

pub fn line_inner<T: Real>(
    f: &SampledLineFunction<T>,
    g: &SampledLineFunction<T>,
    space: &ModeSpace<T>,
) -> C<T> {
    line_inner_spectral(&f.transform(), &g.transform(), space)
}

/// Symplectic form `ω(f,g) = Im(f,g) = ½∫⟨f'(x), g(x)⟩ dx/2π`.
pub fn line_omega<T: Real>(
    f: &SampledLineFunction<T>,
    g: &SampledLineFunction<T>,
    space: &ModeSpace<T>,
) -> T {
    line_inner(f, g, space).im
}

pub fn line_omega_spectral<T: Real>(
    f: &SpectralLineFunction<T>,
    g: &SpectralLineFunction<T>,
    space: &ModeSpace<T>,
) -> T {
    line_inner_spectral(f, g, space).im
}

/// Gram-weighted grid quadrature `∫⟨f(x), g(x)⟩_G dx`.
pub fn x_pairing<T: Real>(
    f: &SampledLineFunction<T>,
    g: &SampledLineFunction<T>,
    space: &ModeSpace<T>,
) -> T {
    assert_eq!(f.grid(), g.grid(), "operands live on different grids");
    let gram = space.gram();
    let mut acc = T::zero();
    for (d, row) in gram.iter().enumerate() {
        for (e, &w) in row.iter().enumerate() {
            if w != 0 {
                let mut dot = T::zero();
                for (&a, &b) in f.values[d].iter().zip(&g.values[e]) {
                    dot = dot + a * b;
                }
                acc = acc + rl::<T>(w as f64) * dot;
            }
        }
    }
    acc * f.grid.dx()
}

/// Momentum-side pairing `2π·dp·Σ_m ⟨f̂_m, conj(ĝ_m)⟩_G`; its real part
/// equals [`x_pairing`] for real inputs (Parseval).
pub fn parseval_pairing<T: Real>(
    f: &SpectralLineFunction<T>,
    g: &SpectralLineFunction<T>,
    space: &ModeSpace<T>,
) -> C<T> {
    assert_eq!(f.grid(), g.grid(), "operands live on different grids");
    let n = f.grid().len();
    let rank = f.rank();
    let mut acc = C::new(T::zero(), T::zero());
    let mut fm = vec![C::new(T::zero(), T::zero()); rank];
    let mut gm = vec![C::new(T::zero(), T::zero()); rank];
    for m in 0..n {
        for d in 0..rank {
            fm[d] = f.modes[d][m];
            gm[d] = g.modes[d][m].conj();
        }
        acc = acc + space.pair_c(&fm, &gm);
    }
    acc.scale(rl::<T>(2.0) * T::PI() * f.grid().dp())
}

/// Direct quadrature of the transform at an arbitrary frequency:
/// `f̂(p) = (dx/2π)·Σ_j e^{-ip x_j} f_j`, one value per component.
pub fn fourier_at<T: Real>(f: &SampledLineFunction<T>, p: T) -> Vec<C<T>> {
    let grid = f.grid();
    let scale = grid.dx() / (rl::<T>(2.0) * T::PI());
    f.values
        .iter()
        .map(|row| {
            let mut acc = C::new(T::zero(), T::zero());
            for (j, &v) in row.iter().enumerate() {
                acc = acc + C::from_polar(v, -p * grid.x(j));
            }
            acc.scale(scale)
        })
        .collect()
}

fn require_support_in<T: Real>(
    f: &SampledLineFunction<T>,
    lo: T,
    hi: T,
) -> Result<(), LineError> {
    match f.support_for_checks() {
        None => Ok(()),
        Some((a, b)) => {
            if a >= lo && b <= hi {
                Ok(())
            } else {
                Err(LineError::SupportMargin)
            }
        }
    }
}

/// Half-line endomorphism defect `|ω(φ(P)f, g)|` for `f` supported in
/// `(0,∞)` and `g` in `(-∞,0)`, both separated from the origin by at least
/// four grid steps and from the window edges by eight.  For a symmetric
/// inner `φ` the multiplier keeps `f` on the right half-line, so the defect
/// is pure discretization error and decays under grid refinement; a
/// non-inner control spreads support across the origin and plateaus.
pub fn semigroup_defect<T: Real>(
    f: &SampledLineFunction<T>,
    g: &SampledLineFunction<T>,
    space: &ModeSpace<T>,
    phi: impl Fn(T) -> C<T>,
) -> Result<T, LineError> {
    if f.grid != g.grid {
        return Err(LineError::GridMismatch);
    }
    let grid = f.grid;
    let origin = rl::<T>(ORIGIN_MARGIN_STEPS as f64) * grid.dx();
    let edge = grid.half_width() - grid.edge_margin();
    require_support_in(f, origin, edge)?;
    require_support_in(g, -edge, -origin)?;
    let vf = f.transform().apply_scalar(|p| phi(p).conj()).inverse();
    Ok(line_omega(&vf, g, space).abs())
}

/// Smooth compactly supported profile `exp(1 - 1/(1-u²))` with
/// `u = (x-c)/h`, normalized to peak one; exactly zero for `|u| ≥ 1`.
pub fn mollifier<T: Real>(center: T, halfwidth: T) -> impl Fn(T) -> T + Copy {
    move |x| {
        let u = (x - center) / halfwidth;
        let d = T::one() - u * u;
        if d <= T::zero() {
            T::zero()
        } else {
            (T::one() - T::one() / d).exp()
        }
    }
}

/// Cubic B-spline bump, `C²` with polynomial spectral decay; used where a
/// convergence ladder must not bottom out at rounding level.  Normalized
/// to peak one on `(c-h, c+h)`.
pub fn cubic_bump<T: Real>(center: T, halfwidth: T) -> impl Fn(T) -> T + Copy {
    move |x| {
        let u = rl::<T>(2.0) * (x - center) / halfwidth + rl::<T>(2.0);
        let v = if u <= T::zero() || u >= rl::<T>(4.0) {
            T::zero()
        } else if u < T::one() {
            u * u * u / rl::<T>(6.0)
        } else if u < rl::<T>(2.0) {
            ((rl::<T>(-3.0) * u * u + rl::<T>(12.0) * u - rl::<T>(12.0)) * u + rl::<T>(4.0))
                / rl::<T>(6.0)
        } else if u < rl::<T>(3.0) {
            ((rl::<T>(3.0) * u * u - rl::<T>(24.0) * u + rl::<T>(60.0)) * u - rl::<T>(44.0))
                / rl::<T>(6.0)
        } else {
            let w = rl::<T>(4.0) - u;
            w * w * w / rl::<T>(6.0)
        };
        v * rl::<T>(1.5)
    }
}

/// Ordered pair of disjoint open intervals on the time axis; the boundary
/// subspace of the double cone is spanned by bumps in the first interval
/// plus multiplier images of bumps in the second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleCone<T> {
    pub first: (T, T),
    pub second: (T, T),
}

impl<T: Real> DoubleCone<T> {
    pub fn new(first: (T, T), second: (T, T)) -> Result<Self, LineError> {
        if first.0 < first.1 && first.1 < second.0 && second.0 < second.1 {
            Ok(DoubleCone { first, second })
        } else {
            Err(LineError::BadDoubleCone)
        }
    }

    pub fn shifted(&self, t: T) -> Self {
        DoubleCone {
            first: (self.first.0 + t, self.first.1 + t),
            second: (self.second.0 + t, self.second.1 + t),
        }
    }
}

/// Unimodular multiplier attached to a boundary subspace.
pub enum BoundaryMultiplier<'a, T: Real> {
    Trivial,
    Scalar(&'a SymmetricInnerFunction<T>),
    Matrix(&'a MatrixInnerFunction<T>),
}

impl<T: Real> BoundaryMultiplier<'_, T> {
    pub fn apply(&self, f: &SampledLineFunction<T>) -> Result<SampledLineFunction<T>, LineError> {
        match self {
            BoundaryMultiplier::Trivial => Ok(f.clone()),
            BoundaryMultiplier::Scalar(phi) => Ok(apply_inner_scalar(f, phi)),
            BoundaryMultiplier::Matrix(phi) => apply_inner_matrix(f, phi),
        }
    }
}

/// Bumps on the absolute dyadic mesh of level `level`: centers `k·2^{-level}`
/// whose support `(c-h, c+h)`, `h = 2^{-level}`, fits inside `interval`.
/// One copy per component, so a sub-interval's family is literally a subset
/// of the enclosing interval's family.
pub fn interval_bump_family<T: Real>(
    grid: LineGrid<T>,
    rank: usize,
    interval: (T, T),
    level: i32,
) -> Vec<SampledLineFunction<T>> {
    let h = rl::<T>(2.0f64.powi(-level));
    let mut family = Vec::new();
    let start = ((interval.0 + h) / h).ceil().to_f64().unwrap_or(0.0) as i64;
    let stop = ((interval.1 - h) / h).floor().to_f64().unwrap_or(-1.0) as i64;
    for k in start..=stop {
        let c = rl::<T>(k as f64) * h;
        if c - h < interval.0 || c + h > interval.1 {
            continue;
        }
        for d in 0..rank {
            family.push(SampledLineFunction::sample(
                grid,
                rank,
                d,
                mollifier(c, h),
                Some((c - h, c + h)),
            ));
        }
    }
    family
}

/// Spanning family of the boundary subspace of a double cone: bumps in the
/// first interval together with multiplier images of bumps in the second.
pub fn assemble_k<T: Real>(
    grid: LineGrid<T>,
    rank: usize,
    cone: &DoubleCone<T>,
    v: &BoundaryMultiplier<'_, T>,
    level: i32,
) -> Result<Vec<SampledLineFunction<T>>, LineError> {
    let margin = grid.half_width() - grid.edge_margin();
    if cone.first.0 <= -margin || cone.second.1 >= margin {
        return Err(LineError::BadDoubleCone);
    }
    DoubleCone::new(cone.first, cone.second)?;
    let mut family = interval_bump_family(grid, rank, cone.first, level);
    for b in interval_bump_family(grid, rank, cone.second, level) {
        family.push(v.apply(&b)?);
    }
    Ok(family)
}

/// Relative `L²` distance from `target` to the span of `family`, via the
/// normal equations with a tiny ridge and partial-pivot elimination.
pub fn span_residual<T: Real>(
    family: &[SampledLineFunction<T>],
    target: &SampledLineFunction<T>,
) -> T {
    let m = family.len();
    let dot = |a: &SampledLineFunction<T>, b: &SampledLineFunction<T>| -> T {
        let mut acc = T::zero();
        for (ra, rb) in a.components().iter().zip(b.components()) {
            for (&x, &y) in ra.iter().zip(rb) {
                acc = acc + x * y;
            }
        }
        acc * a.grid().dx()
    };
    let norm = dot(target, target).sqrt();
    if norm == T::zero() {
        return T::zero();
    }
    if m == 0 {
        return T::one();
    }
    let mut a = vec![vec![T::zero(); m]; m];
    let mut b = vec![T::zero(); m];
    for i in 0..m {
        for j in i..m {
            let v = dot(&family[i], &family[j]);
            a[i][j] = v;
            a[j][i] = v;
        }
        b[i] = dot(&family[i], target);
    }
    let mut trace = T::zero();
    for (i, row) in a.iter().enumerate() {
        trace = trace + row[i];
    }
    let ridge = rl::<T>(1e-13) * trace / rl::<T>(m as f64);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = row[i] + ridge;
    }
    // Gaussian elimination with partial pivoting.
    let mut c = b.clone();
    for col in 0..m {
        let mut piv = col;
        for r in col + 1..m {
            if a[r][col].abs() > a[piv][col].abs() {
                piv = r;
            }
        }
        a.swap(col, piv);
        c.swap(col, piv);
        let p = a[col][col];
        if p.abs() == T::zero() {
            continue;
        }
        for r in col + 1..m {
            let factor = a[r][col] / p;
            if factor != T::zero() {
                for k in col..m {
                    a[r][k] = a[r][k] - factor * a[col][k];
                }
                c[r] = c[r] - factor * c[col];
            }
        }
    }
    let mut coeff = vec![T::zero(); m];
    for col in (0..m).rev() {
        let mut acc = c[col];
        for k in col + 1..m {
            acc = acc - a[col][k] * coeff[k];
        }
        coeff[col] = if a[col][col].abs() == T::zero() { T::zero() } else { acc / a[col][col] };
    }
    let mut resid = target.clone();
    for (f, &w) in family.iter().zip(&coeff) {
        resid = resid.add(&f.scale(-w)).expect("family on target grid");
    }
    dot(&resid, &resid).max(T::zero()).sqrt() / norm
}

/// Largest relative residual of the members of `small` against the span of
/// `large`; near zero when the first family is contained in the second's
/// span (isotony of the assembled subspaces).
pub fn isotony_residual<T: Real>(
    small: &[SampledLineFunction<T>],
    large: &[SampledLineFunction<T>],
) -> T {
    let mut worst = T::zero();
    for f in small {
        worst = worst.max(span_residual(large, f));
    }
    worst
}

/// Largest `|ω|` between members of the two families; the locality probe
/// for spacelike-separated double cones.
pub fn family_locality_defect<T: Real>(
    fam1: &[SampledLineFunction<T>],
    fam2: &[SampledLineFunction<T>],
    space: &ModeSpace<T>,
) -> T {
    let s1: Vec<_> = fam1.iter().map(|f| f.transform()).collect();
    let s2: Vec<_> = fam2.iter().map(|f| f.transform()).collect();
    let mut worst = T::zero();
    for a in &s1 {
        for b in &s2 {
            worst = worst.max(line_omega_spectral(a, b, space).abs());
        }
    }
    worst
}

/// Pullback dilation `(D(s)f)(x) = f(e^{-s}x)` with Catmull-Rom cubic
/// interpolation for off-grid reads; errors if the dilated support leaves
/// the margined window.
pub fn dilate<T: Real>(
    f: &SampledLineFunction<T>,
    s: T,
) -> Result<SampledLineFunction<T>, LineError> {
    let grid = *f.grid();
    let bound = grid.half_width() - grid.edge_margin();
    if let Some((lo, hi)) = f.support_for_checks() {
        let scale = s.exp();
        if (lo * scale).abs() > bound || (hi * scale).abs() > bound {
            return Err(LineError::SupportEscape);
        }
    }
    let shrink = (-s).exp();
    let half = rl::<T>(0.5);
    let n = grid.len() as i64;
    let values = f
        .values
        .iter()
        .map(|row| {
            let at = |j: i64| -> T {
                if j < 0 || j >= n {
                    T::zero()
                } else {
                    row[j as usize]
                }
            };
            (0..grid.len())
                .map(|j| {
                    let y = shrink * grid.x(j);
                    let pos = (y + grid.half_width()) / grid.dx();
                    let base = pos.floor();
                    let u = pos - base;
                    let j0 = base.to_f64().unwrap_or(0.0) as i64;
                    let (p0, p1, p2, p3) = (at(j0 - 1), at(j0), at(j0 + 1), at(j0 + 2));
                    if u == T::zero() {
                        return p1;
                    }
                    let u2 = u * u;
                    let u3 = u2 * u;
                    half * (rl::<T>(2.0) * p1
                        + (p2 - p0) * u
                        + (rl::<T>(2.0) * p0 - rl::<T>(5.0) * p1 + rl::<T>(4.0) * p2 - p3) * u2
                        + (rl::<T>(3.0) * (p1 - p2) + p3 - p0) * u3)
                })
                .collect()
        })
        .collect();
    let support = f.support.map(|(lo, hi)| (lo * s.exp(), hi * s.exp()));
    Ok(SampledLineFunction { grid, values, support })
}

/// Commutation probe for dilations against translations: sup-norm gap of
/// `D(2πs) T(t) D(-2πs) f` against `T(e^{2πs} t) f`.
pub fn dilation_commutation_probe<T: Real>(
    f: &SampledLineFunction<T>,
    t: T,
    s: T,
) -> Result<T, LineError> {
    let a = rl::<T>(2.0) * T::PI() * s;
    let inner = dilate(f, -a)?;
    let shifted = inner.transform().translate(t).inverse();
    let lhs = dilate(&shifted, a)?;
    let rhs = f.transform().translate(a.exp() * t).inverse();
    Ok(lhs.sup_distance(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    type G = LineGrid<f64>;
    type F = SampledLineFunction<f64>;

    fn grid() -> G {
        G::standard()
    }

    fn bump(center: f64, halfwidth: f64) -> F {
        F::sample(
            grid(),
            1,
            0,
            mollifier(center, halfwidth),
            Some((center - halfwidth, center + halfwidth)),
        )
    }

    fn euclid1() -> ModeSpace<f64> {
        ModeSpace::euclidean(1)
    }

    #[test]
    fn roundtrip_and_reality_symmetry() {
        let f = bump(1.5, 2.0);
        let spec = f.transform();
        assert!(spec.hermitian_defect() < 1e-12);
        let (back, residue) = spec.inverse_with_residue();
        assert!(residue < 1e-12);
        assert!(f.sup_distance(&back) < 1e-12);
    }

    #[test]
    fn trivial_multiplier_is_identity() {
        let f = bump(-3.0, 1.0);
        let (out, residue) = apply_multiplier(&f, |_| C::new(1.0, 0.0)).unwrap();
        assert!(residue < 1e-12);
        assert!(f.sup_distance(&out) < 1e-12);
    }

    #[test]
    fn translation_multiplier_matches_grid_shift() {
        let f = bump(0.5, 1.5);
        let t = 17.0 * grid().dx();
        let (out, _) = apply_multiplier(&f, |p| C::from_polar(1.0, -p * t)).unwrap();
        let shifted = f.index_shift(17);
        assert!(out.sup_distance(&shifted) < 1e-8);
    }

    #[test]
    fn asymmetric_multiplier_fails_realness() {
        let f = bump(0.0, 1.0);
        let (_, residue) = apply_multiplier(&f, |_| C::new(0.0, 1.0)).unwrap();
        assert!(residue > 0.5, "constant i multiplier must break reality, residue {residue:.3e}");
    }

    #[test]
    fn aliasing_gate_rejects_rough_data() {
        let g = grid();
        let mut values = vec![vec![0.0; g.len()]];
        values[0][g.len() / 2] = 1.0;
        let spike = F::from_components(g, values).unwrap();
        assert_eq!(
            apply_multiplier(&spike, |_| C::new(1.0, 0.0)).unwrap_err(),
            LineError::Aliased
        );
    }

    #[test]
    fn omega_self_and_antisymmetry() {
        let space = euclid1();
        let f = bump(0.4, 1.2);
        let g = bump(-0.3, 1.0);
        assert!(line_omega(&f, &f, &space).abs() < 1e-12);
        let fw = line_omega(&f, &g, &space);
        let bw = line_omega(&g, &f, &space);
        assert!((fw + bw).abs() < 1e-10);
        assert!(fw.abs() > 1e-4, "overlapping bumps should pair nontrivially");
    }

    #[test]
    fn omega_disjoint_supports_vanish() {
        let space = euclid1();
        let f = bump(-3.0, 1.0);
        let g = bump(3.0, 1.0);
        assert!(line_omega(&f, &g, &space).abs() < 1e-12);
    }

    #[test]
    fn omega_two_route_agreement() {
        // Spectral route vs grid quadrature of (1/4π)∫⟨f', g⟩ dx.
        let space = euclid1();
        let f = bump(0.4, 1.2);
        let g = bump(-0.3, 1.0);
        let spectral = line_omega(&f, &g, &space);
        let fprime = f.transform().derivative().inverse();
        let quadrature = x_pairing(&fprime, &g, &space) / (4.0 * std::f64::consts::PI);
        assert!(
            (spectral - quadrature).abs() < 1e-10,
            "routes differ: {spectral:.6e} vs {quadrature:.6e}"
        );
    }

    #[test]
    fn omega_translation_continuity() {
        let space = euclid1();
        let f = bump(0.0, 1.0);
        let fs = f.transform();
        let mut prev: Option<f64> = None;
        for k in 0..=40 {
            let t = 0.05 * k as f64;
            let w = line_omega_spectral(&fs, &fs.translate(t), &space);
            if let Some(p) = prev {
                assert!((w - p).abs() < 0.05, "jump at t={t}: {}", (w - p).abs());
            }
            prev = Some(w);
        }
    }

    #[test]
    fn parseval_matches_grid_quadrature() {
        let space = euclid1();
        let f = bump(0.4, 1.2);
        let g = bump(-0.3, 1.0);
        let xq = x_pairing(&f, &g, &space);
        let pq = parseval_pairing(&f.transform(), &g.transform(), &space);
        assert!((xq - pq.re).abs() < 1e-10 * (1.0 + xq.abs()));
        assert!(pq.im.abs() < 1e-10);
    }

    #[test]
    fn direct_quadrature_matches_fft_bins() {
        let f = bump(2.0, 1.5);
        let spec = f.transform();
        for &m in &[1usize, 7, 32, 1001] {
            let direct = fourier_at(&f, grid().p(m));
            let diff = (direct[0] - spec.mode_component(0)[m]).norm();
            assert!(diff < 1e-10, "bin {m} differs by {diff:.3e}");
        }
    }

    #[test]
    fn inner_multiplier_preserves_energy_norm() {
        let space = euclid1();
        let f = bump(1.0, 1.5);
        let phi = SymmetricInnerFunction::blaschke(C::new(0.0, 1.0)).unwrap();
        let vf = apply_inner_scalar(&f, &phi);
        let before = line_inner(&f, &f, &space).re;
        let after = line_inner(&vf, &vf, &space).re;
        assert!((before - after).abs() < 1e-10 * before.abs());
    }

    #[test]
    fn antiderivative_inverts_derivative() {
        let f = bump(0.5, 1.0);
        let df = f.transform().derivative();
        let back = df.antiderivative_periodic().inverse();
        // f has nonzero mean, the periodic antiderivative drops it; compare
        // after removing the mean of f.
        let mean = f.component(0).iter().sum::<f64>() / f.len() as f64;
        let centered = F::from_components(
            grid(),
            vec![f.component(0).iter().map(|v| v - mean).collect()],
        )
        .unwrap();
        assert!(back.sup_distance(&centered) < 1e-9);
    }

    #[test]
    fn semigroup_trivial_multiplier_vanishes() {
        let space = euclid1();
        let f = bump(1.0, 0.5);
        let g = bump(-1.0, 0.5);
        let d = semigroup_defect(&f, &g, &space, |_| C::new(1.0, 0.0)).unwrap();
        assert!(d < 1e-12);
    }

    #[test]
    fn semigroup_support_preconditions() {
        let space = euclid1();
        let f = bump(0.01, 0.05); // straddles the 4-step origin margin
        let g = bump(-1.0, 0.5);
        assert_eq!(
            semigroup_defect(&f, &g, &space, |_| C::new(1.0, 0.0)).unwrap_err(),
            LineError::SupportMargin
        );
        let f = bump(1.0, 0.5);
        let g = bump(1.5, 0.2); // wrong half-line
        assert_eq!(
            semigroup_defect(&f, &g, &space, |_| C::new(1.0, 0.0)).unwrap_err(),
            LineError::SupportMargin
        );
    }

    #[test]
    fn semigroup_defect_subadditive_under_products() {
        let space = euclid1();
        let f = bump(1.0, 0.5);
        let g = bump(-1.0, 0.5);
        let b = SymmetricInnerFunction::blaschke(C::new(0.5, 1.0)).unwrap();
        let s = SymmetricInnerFunction::singular(0.375).unwrap();
        let db = semigroup_defect(&f, &g, &space, |p| b.eval_real(p)).unwrap();
        let ds = semigroup_defect(&f, &g, &space, |p| s.eval_real(p)).unwrap();
        let dp = semigroup_defect(&f, &g, &space, |p| b.eval_real(p) * s.eval_real(p)).unwrap();
        assert!(dp <= db + ds + 1e-8, "product defect {dp:.3e} vs parts {db:.3e}+{ds:.3e}");
    }

    #[test]
    fn matrix_multiplier_acts_blockwise() {
        let lattice = Lattice::from_i64_rows(&[vec![2, 0], vec![0, 2]]).unwrap();
        let phi0 = SymmetricInnerFunction::blaschke(C::new(0.0, 1.0)).unwrap();
        let phi1 = SymmetricInnerFunction::singular(0.5).unwrap();
        let v = MatrixInnerFunction::new(
            lattice,
            vec![phi0.clone(), phi1.clone()],
            MatrixInnerFunction::<f64>::identity_automorphism(2),
        )
        .unwrap();
        let g = grid();
        let f0 = F::sample(g, 2, 0, mollifier(1.0, 1.0), Some((0.0, 2.0)));
        let f1 = F::sample(g, 2, 1, mollifier(-2.0, 1.0), Some((-3.0, -1.0)));
        let f = f0.add(&f1).unwrap();
        let out = apply_inner_matrix(&f, &v).unwrap();
        let want0 = apply_inner_scalar(&f0, &phi0);
        let want1 = apply_inner_scalar(&f1, &phi1);
        let want = want0.add(&want1).unwrap();
        assert!(out.sup_distance(&want) < 1e-12);
    }

    #[test]
    fn bump_family_isotony() {
        let g = grid();
        let small = DoubleCone::new((2.0, 3.0), (4.0, 5.0)).unwrap();
        let large = DoubleCone::new((1.5, 3.5), (3.75, 5.5)).unwrap();
        let phi = SymmetricInnerFunction::blaschke(C::new(0.0, 1.0)).unwrap();
        let v = BoundaryMultiplier::Scalar(&phi);
        let fam_small = assemble_k(g, 1, &small, &v, 2).unwrap();
        let fam_large = assemble_k(g, 1, &large, &v, 2).unwrap();
        assert!(!fam_small.is_empty() && fam_large.len() > fam_small.len());
        let r = isotony_residual(&fam_small, &fam_large);
        assert!(r < 1e-8, "isotony residual {r:.3e}");
    }

    #[test]
    fn assembled_families_spacelike_locality() {
        let g = grid();
        let space = euclid1();
        let inner_cone = DoubleCone::new((2.0, 3.0), (4.0, 5.0)).unwrap();
        let outer_cone = DoubleCone::new((0.0, 1.0), (6.0, 7.0)).unwrap();
        let phi = SymmetricInnerFunction::blaschke(C::new(0.0, 1.0)).unwrap();
        let v = BoundaryMultiplier::Scalar(&phi);
        let fam_inner = assemble_k(g, 1, &inner_cone, &v, 2).unwrap();
        let fam_outer = assemble_k(g, 1, &outer_cone, &v, 2).unwrap();
        let d = family_locality_defect(&fam_inner, &fam_outer, &space);
        assert!(d < 1e-6, "locality defect {d:.3e}");
    }

    #[test]
    fn assembled_family_translation_covariance() {
        let g = grid();
        let cone = DoubleCone::new((2.0, 3.0), (4.0, 5.0)).unwrap();
        let phi = SymmetricInnerFunction::blaschke(C::new(0.0, 1.0)).unwrap();
        let v = BoundaryMultiplier::Scalar(&phi);
        let t = 0.5; // 64 grid steps and 2 mesh steps at level 2
        let fam = assemble_k(g, 1, &cone, &v, 2).unwrap();
        let fam_shifted = assemble_k(g, 1, &cone.shifted(t), &v, 2).unwrap();
        assert_eq!(fam.len(), fam_shifted.len());
        for (a, b) in fam.iter().zip(&fam_shifted) {
            let d = a.translate(t).unwrap().sup_distance(b);
            assert!(d < 1e-8, "covariance gap {d:.3e}");
        }
    }

    #[test]
    fn dilation_zero_parameters() {
        let f = bump(3.0, 2.0);
        assert_eq!(dilation_commutation_probe(&f, 1.0, 0.0).unwrap(), 0.0);
        let d = dilation_commutation_probe(&f, 0.0, 0.1).unwrap();
        assert!(d < 1e-5, "pure-dilation probe {d:.3e}");
    }

    #[test]
    fn dilation_commutation_small_probe() {
        // Floor set by the cubic resampling inside dilate, not by the
        // commutation identity itself.
        let f = bump(3.0, 2.0);
        let d = dilation_commutation_probe(&f, 1.0, 0.1).unwrap();
        assert!(d < 1e-5, "commutation probe {d:.3e}");
    }

    #[test]
    fn dilation_support_escape() {
        let f = bump(40.0, 2.0);
        assert_eq!(dilate(&f, 0.5).unwrap_err(), LineError::SupportEscape);
    }

    #[test]
    fn double_cone_validation() {
        assert_eq!(DoubleCone::new((2.0, 1.0), (3.0, 4.0)).unwrap_err(), LineError::BadDoubleCone);
        assert_eq!(DoubleCone::new((1.0, 3.0), (2.0, 4.0)).unwrap_err(), LineError::BadDoubleCone);
    }
}
