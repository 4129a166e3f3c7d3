//! Loops into a torus (or its covering space) as truncated Fourier data, and
//! the phase algebra of their central extension.
//!
//! A loop is stored as winding vector + zero mode + positive-frequency modes;
//! negative modes are implied by reality. All integrals reduce to rectangle
//! sums on uniform grids, which are exact for band-limited integrands, plus
//! closed forms for the pieces that involve the non-periodic ramp.

use crate::cocycle::CocycleData;
use crate::fourier;
use crate::lattice::Lattice;
use crate::phase;
use crate::real::{rl, Real, C};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum LoopError {
    #[error("need a closed sample grid of power-of-two interior size >= 4*cutoff, got {0} samples")]
    BadGrid(usize),
    #[error("declared winding disagrees with the endpoint increment by {0:.3e}")]
    WindingMismatch(f64),
    #[error("loop leaves 2 pi L off its declared support (worst defect {0:.3e})")]
    NotLocalized(f64),
    #[error("declared supports overlap or are out of range")]
    SupportsOverlap,
    #[error("rank mismatch between loops")]
    RankMismatch,
}

/// Loop f(theta) = winding * theta + zero + sum_{k=1..K} 2 Re(modes_k e^{ik theta}).
#[derive(Clone, Debug, PartialEq)]
pub struct TorusLoop<T: Real> {
    winding: Vec<i64>,
    zero: Vec<T>,
    /// modes[k-1][dir] is the k-th positive-frequency coefficient.
    modes: Vec<Vec<C<T>>>,
}

impl<T: Real> TorusLoop<T> {
    pub fn new(winding: Vec<i64>, zero: Vec<T>, modes: Vec<Vec<C<T>>>) -> Self {
        let rank = winding.len();
        assert_eq!(zero.len(), rank);
        assert!(modes.iter().all(|m| m.len() == rank));
        TorusLoop { winding, zero, modes }
    }

    pub fn constant(v: Vec<T>) -> Self {
        let rank = v.len();
        TorusLoop { winding: vec![0; rank], zero: v, modes: Vec::new() }
    }

    /// The straight winding loop t_alpha(theta) = alpha * theta.
    pub fn ramp(alpha: Vec<i64>) -> Self {
        let rank = alpha.len();
        TorusLoop { winding: alpha, zero: vec![T::zero(); rank], modes: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.winding.len()
    }

    pub fn cutoff(&self) -> usize {
        self.modes.len()
    }

    pub fn winding(&self) -> &[i64] {
        &self.winding
    }

    pub fn zero_mode(&self) -> &[T] {
        &self.zero
    }

    pub fn modes(&self) -> &[Vec<C<T>>] {
        &self.modes
    }

    pub fn mode(&self, k: usize) -> Option<&[C<T>]> {
        self.modes.get(k - 1).map(Vec::as_slice)
    }

    pub fn has_winding(&self) -> bool {
        self.winding.iter().any(|&w| w != 0)
    }

    /// Oscillator value at theta: modes only, no zero mode, no ramp.
    pub fn eval_osc(&self, theta: T) -> Vec<T> {
        let mut out = vec![T::zero(); self.rank()];
        for (i, m) in self.modes.iter().enumerate() {
            let k = T::from_usize(i + 1).unwrap();
            let e = phase::unit(k * theta);
            for (o, c) in out.iter_mut().zip(m) {
                *o = *o + rl::<T>(2.0) * (*c * e).re;
            }
        }
        out
    }

    /// Periodic part f1 = zero mode + oscillator.
    pub fn eval_periodic(&self, theta: T) -> Vec<T> {
        let mut v = self.eval_osc(theta);
        for (o, z) in v.iter_mut().zip(&self.zero) {
            *o = *o + *z;
        }
        v
    }

    /// Full value including the ramp.
    pub fn eval(&self, theta: T) -> Vec<T> {
        let mut v = self.eval_periodic(theta);
        for (o, &w) in v.iter_mut().zip(&self.winding) {
            *o = *o + rl::<T>(w as f64) * theta;
        }
        v
    }

    /// Derivative f'(theta) = winding + oscillator derivative (periodic).
    pub fn eval_deriv(&self, theta: T) -> Vec<T> {
        let mut out: Vec<T> = self.winding.iter().map(|&w| rl::<T>(w as f64)).collect();
        for (i, m) in self.modes.iter().enumerate() {
            let k = T::from_usize(i + 1).unwrap();
            let e = phase::unit(k * theta);
            for (o, c) in out.iter_mut().zip(m) {
                // d/dtheta 2 Re(c e^{ik theta}) = 2 Re(ik c e^{ik theta})
                *o = *o + rl::<T>(2.0) * (C::new(T::zero(), k) * *c * e).re;
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let kk = self.cutoff().max(other.cutoff());
        let winding =
            self.winding.iter().zip(&other.winding).map(|(a, b)| a + b).collect();
        let zero = self.zero.iter().zip(&other.zero).map(|(a, b)| *a + *b).collect();
        let zc = C::new(T::zero(), T::zero());
        let mut modes = vec![vec![zc; self.rank()]; kk];
        for (i, m) in self.modes.iter().enumerate() {
            for (dst, c) in modes[i].iter_mut().zip(m) {
                *dst = *dst + *c;
            }
        }
        for (i, m) in other.modes.iter().enumerate() {
            for (dst, c) in modes[i].iter_mut().zip(m) {
                *dst = *dst + *c;
            }
        }
        TorusLoop { winding, zero, modes }
    }

    pub fn neg(&self) -> Self {
        TorusLoop {
            winding: self.winding.iter().map(|w| -w).collect(),
            zero: self.zero.iter().map(|z| -*z).collect(),
            modes: self.modes.iter().map(|m| m.iter().map(|c| -c).collect()).collect(),
        }
    }

    /// Closed-grid samples at theta_j = 2 pi j / n, j = 0..=n.
    pub fn sample_closed(&self, n: usize) -> Vec<Vec<T>> {
        (0..=n)
            .map(|j| {
                let theta = rl::<T>(2.0) * T::PI() * T::from_usize(j).unwrap()
                    / T::from_usize(n).unwrap();
                self.eval(theta)
            })
            .collect()
    }

    /// Periodic part on the open uniform grid theta_j = 2 pi j / n,
    /// j = 0..n-1, synthesized by FFT (needs n > 2 * cutoff).
    pub fn grid_periodic(&self, n: usize) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.rank()]; n];
        for d in 0..self.rank() {
            let modes: Vec<C<T>> = self.modes.iter().map(|m| m[d]).collect();
            let vals = fourier::synth_real(self.zero[d], &modes, n);
            for (row, v) in out.iter_mut().zip(vals) {
                row[d] = v;
            }
        }
        out
    }

    /// Derivative (winding + oscillator derivative) on the open uniform grid.
    pub fn grid_deriv(&self, n: usize) -> Vec<Vec<T>> {
        let mut out = vec![vec![T::zero(); self.rank()]; n];
        for d in 0..self.rank() {
            let modes: Vec<C<T>> = self
                .modes
                .iter()
                .enumerate()
                .map(|(i, m)| m[d] * C::new(T::zero(), T::from_usize(i + 1).unwrap()))
                .collect();
            let vals = fourier::synth_real(rl::<T>(self.winding[d] as f64), &modes, n);
            for (row, v) in out.iter_mut().zip(vals) {
                row[d] = v;
            }
        }
        out
    }

    /// Full values (ramp included) on the open uniform grid.
    pub fn grid_full(&self, n: usize) -> Vec<Vec<T>> {
        let mut out = self.grid_periodic(n);
        let two_pi = rl::<T>(2.0) * T::PI();
        for (j, row) in out.iter_mut().enumerate() {
            let theta = two_pi * T::from_usize(j).unwrap() / T::from_usize(n).unwrap();
            for (v, &w) in row.iter_mut().zip(&self.winding) {
                *v = *v + rl::<T>(w as f64) * theta;
            }
        }
        out
    }
}

/// Rebuild a loop from closed samples (grid of n+1 values at theta_j =
/// 2 pi j/n) with a declared winding vector, keeping modes up to `cutoff`.
pub fn decompose<T: Real>(
    samples: &[Vec<T>],
    winding: &[i64],
    cutoff: usize,
) -> Result<TorusLoop<T>, LoopError> {
    if samples.len() < 2 {
        return Err(LoopError::BadGrid(samples.len()));
    }
    let n = samples.len() - 1;
    if !n.is_power_of_two() || n < 4 * cutoff.max(1) {
        return Err(LoopError::BadGrid(samples.len()));
    }
    let rank = winding.len();
    if samples.iter().any(|s| s.len() != rank) {
        return Err(LoopError::RankMismatch);
    }
    let two_pi = rl::<T>(2.0) * T::PI();
    // Endpoint increment must match the declared winding.
    let mut worst = T::zero();
    for d in 0..rank {
        let inc = samples[n][d] - samples[0][d] - two_pi * rl::<T>(winding[d] as f64);
        worst = worst.max(inc.abs());
    }
    if worst > rl::<T>(1e-6) {
        return Err(LoopError::WindingMismatch(worst.to_f64().unwrap_or(f64::NAN)));
    }

    let zc = C::new(T::zero(), T::zero());
    let mut zero = vec![T::zero(); rank];
    let mut modes = vec![vec![zc; rank]; cutoff];
    for d in 0..rank {
        // Subtract the ramp, then take analysis coefficients of one period.
        let periodic: Vec<T> = (0..n)
            .map(|j| {
                let theta = two_pi * T::from_usize(j).unwrap() / T::from_usize(n).unwrap();
                samples[j][d] - rl::<T>(winding[d] as f64) * theta
            })
            .collect();
        let coeffs = fourier::coeffs_of_real(&periodic);
        zero[d] = coeffs[0].re;
        for k in 1..=cutoff.min(n / 2 - 1) {
            modes[k - 1][d] = coeffs[k];
        }
    }
    Ok(TorusLoop::new(winding.to_vec(), zero, modes))
}

/// Quadrature mean of sampled density values over one period (open grid:
/// the closing duplicate sample, if present, must not be passed).
pub fn charge_mean<T: Real>(samples: &[Vec<T>]) -> Vec<T> {
    let n = samples.len();
    assert!(n > 0);
    let rank = samples[0].len();
    let mut out = vec![T::zero(); rank];
    for s in samples {
        for (o, v) in out.iter_mut().zip(s) {
            *o = *o + *v;
        }
    }
    let scale = T::one() / T::from_usize(n).unwrap();
    out.into_iter().map(|v| v * scale).collect()
}

/// Pairing data for loop values: an integer Gram matrix, either a lattice
/// form or the identity for plain Euclidean directions.
#[derive(Clone, Debug)]
pub struct ModeSpace<T: Real> {
    gram: Vec<Vec<i64>>,
    _marker: std::marker::PhantomData<T>,
}

impl<T: Real> ModeSpace<T> {
    pub fn from_lattice(lattice: &Lattice) -> Self {
        ModeSpace { gram: lattice.gram_i64(), _marker: std::marker::PhantomData }
    }

    pub fn euclidean(rank: usize) -> Self {
        let gram = (0..rank)
            .map(|i| (0..rank).map(|j| i64::from(i == j)).collect())
            .collect();
        ModeSpace { gram, _marker: std::marker::PhantomData }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// <x, y> for real vectors.
    pub fn pair(&self, x: &[T], y: &[T]) -> T {
        let mut acc = T::zero();
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    acc = acc + rl::<T>(g as f64) * x[i] * y[j];
                }
            }
        }
        acc
    }

    /// Bilinear (not sesquilinear) pairing of complex vectors.
    pub fn pair_c(&self, x: &[C<T>], y: &[C<T>]) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                if g != 0 {
                    acc = acc + x[i] * y[j] * rl::<T>(g as f64);
                }
            }
        }
        acc
    }

    /// Exact integer pairing of winding vectors.
    pub fn pair_int(&self, x: &[i64], y: &[i64]) -> i64 {
        let mut acc = 0i64;
        for (i, row) in self.gram.iter().enumerate() {
            for (j, &g) in row.iter().enumerate() {
                acc += g * x[i] * y[j];
            }
        }
        acc
    }

    fn pair_int_real(&self, x: &[i64], y: &[T]) -> T {
        let xf: Vec<T> = x.iter().map(|&v| rl::<T>(v as f64)).collect();
        self.pair(&xf, y)
    }

    /// Symplectic form via the mode sum: sum_{k>=1} k Im <f_k, conj g_k>.
    /// Windings and zero modes do not enter.
    pub fn omega(&self, f: &TorusLoop<T>, g: &TorusLoop<T>) -> T {
        let kk = f.cutoff().min(g.cutoff());
        let mut acc = T::zero();
        for k in 1..=kk {
            let conj_g: Vec<C<T>> = g.modes[k - 1].iter().map(C::conj).collect();
            let z = self.pair_c(&f.modes[k - 1], &conj_g);
            acc = acc + T::from_usize(k).unwrap() * z.im;
        }
        acc
    }

    /// Independent quadrature route for omega on zero-winding loops:
    /// (1/2) * integral <f(theta), g'(theta)> dtheta / 2pi by rectangle sum.
    pub fn omega_quadrature(&self, f: &TorusLoop<T>, g: &TorusLoop<T>, grid: usize) -> T {
        assert!(!f.has_winding() && !g.has_winding(), "quadrature route needs zero winding");
        let fp = f.grid_periodic(grid);
        let gd = g.grid_deriv(grid);
        let mut acc = T::zero();
        for (a, b) in fp.iter().zip(&gd) {
            acc = acc + self.pair(a, b);
        }
        rl::<T>(0.5) * acc / T::from_usize(grid).unwrap()
    }

    /// Grid large enough that rectangle sums of products of two loops with
    /// these cutoffs are exact (band-limited integrands).
    fn quad_grid(&self, f: &TorusLoop<T>, g: &TorusLoop<T>) -> usize {
        (4 * (f.cutoff().max(g.cutoff()) + 1)).next_power_of_two()
    }

    /// The action sum S(f,g) defined by
    ///   2 S(f,g) = integral <f'(theta), g(theta)> dtheta/2pi + <Delta_f, g(0)>.
    ///
    /// The integrand splits as <f', g_periodic> (band-limited, rectangle sum
    /// exact) plus theta * <f', Delta_g>, whose integral has the closed form
    /// pi <Delta_f, Delta_g> + <f_osc(0), Delta_g>.
    pub fn action(&self, f: &TorusLoop<T>, g: &TorusLoop<T>) -> T {
        assert_eq!(f.rank(), self.rank());
        assert_eq!(g.rank(), self.rank());
        let grid = self.quad_grid(f, g);
        let fd = f.grid_deriv(grid);
        let gp = g.grid_periodic(grid);
        let mut q = T::zero();
        for (a, b) in fd.iter().zip(&gp) {
            q = q + self.pair(a, b);
        }
        q = q / T::from_usize(grid).unwrap();

        let ramp_f = T::PI() * rl::<T>(self.pair_int(&f.winding, &g.winding) as f64);
        let osc_f0 = f.eval_osc(T::zero());
        let ramp_osc = self.pair_int_real(&g.winding, &osc_f0);
        let boundary = self.pair_int_real(&f.winding, &g.eval_periodic(T::zero()));
        let two_s = q + ramp_f + ramp_osc + boundary;
        two_s * rl::<T>(0.5)
    }

    /// Central-extension cocycle c(f,g) = epsilon(Delta_f, Delta_g) e^{iS(f,g)}.
    pub fn central_cocycle(
        &self,
        cocycle: &CocycleData,
        f: &TorusLoop<T>,
        g: &TorusLoop<T>,
    ) -> C<T> {
        let sign = rl::<T>(cocycle.epsilon(&f.winding, &g.winding) as f64);
        phase::unit(self.action(f, g)).scale(sign)
    }

    /// Commutation phase from the cocycle chain:
    /// (-1)^{<Delta_f, Delta_g>} e^{i (S(f,g) - S(g,f))}.
    pub fn commutation_phase(&self, f: &TorusLoop<T>, g: &TorusLoop<T>) -> C<T> {
        let sign = phase::neg_one_pow::<T>(self.pair_int(&f.winding, &g.winding));
        phase::unit(self.action(f, g) - self.action(g, f)).scale(sign)
    }

    /// Commutation phase from the displayed closed form:
    /// e^{i pi <Delta_f,Delta_g>} e^{i integral <f1', g1> dtheta/2pi}
    /// e^{i(<Delta_f, g0> - <Delta_g, f0>)}.
    pub fn commutation_phase_display(&self, f: &TorusLoop<T>, g: &TorusLoop<T>) -> C<T> {
        let grid = self.quad_grid(f, g);
        let fd = f.grid_deriv(grid);
        let gp = g.grid_periodic(grid);
        let mut integral = T::zero();
        for (df, b) in fd.iter().zip(&gp) {
            // Oscillator derivative only: strip the winding term from f'.
            let df_osc: Vec<T> = df
                .iter()
                .zip(&f.winding)
                .map(|(v, &w)| *v - rl::<T>(w as f64))
                .collect();
            integral = integral + self.pair(&df_osc, b);
        }
        integral = integral / T::from_usize(grid).unwrap();
        let zero_terms = self.pair_int_real(&f.winding, &g.zero)
            - self.pair_int_real(&g.winding, &f.zero);
        let sign = phase::neg_one_pow::<T>(self.pair_int(&f.winding, &g.winding));
        phase::unit(integral + zero_terms).scale(sign)
    }

    /// |commutation_phase - 1| for loops with declared disjoint supports.
    ///
    /// Each loop must sit in 2 pi L outside its declared open interval
    /// (checked on a dense grid); the intervals must not overlap.
    pub fn locality_defect(
        &self,
        f: &TorusLoop<T>,
        supp_f: (T, T),
        g: &TorusLoop<T>,
        supp_g: (T, T),
    ) -> Result<T, LoopError> {
        let two_pi = rl::<T>(2.0) * T::PI();
        for &(a, b) in &[supp_f, supp_g] {
            if !(T::zero() <= a && a < b && b <= two_pi) {
                return Err(LoopError::SupportsOverlap);
            }
        }
        let disjoint = supp_f.1 <= supp_g.0 || supp_g.1 <= supp_f.0;
        if !disjoint {
            return Err(LoopError::SupportsOverlap);
        }
        check_localized(f, supp_f)?;
        check_localized(g, supp_g)?;
        let one = C::new(T::one(), T::zero());
        Ok((self.commutation_phase(f, g) - one).norm())
    }
}

/// Verify that the loop takes values in 2 pi Z^n (basis coordinates of
/// 2 pi L) outside its declared support interval.
fn check_localized<T: Real>(f: &TorusLoop<T>, supp: (T, T)) -> Result<(), LoopError> {
    let grid = 512.max(8 * (f.cutoff() + 1)).next_power_of_two();
    let two_pi = rl::<T>(2.0) * T::PI();
    let mut worst = T::zero();
    for (j, row) in f.grid_full(grid).into_iter().enumerate() {
        let theta = two_pi * T::from_usize(j).unwrap() / T::from_usize(grid).unwrap();
        if theta > supp.0 && theta < supp.1 {
            continue;
        }
        for v in row {
            let frac = v / two_pi;
            let dist = (frac - frac.round()).abs() * two_pi;
            worst = worst.max(dist);
        }
    }
    // Loose gate: truncation ripple must not be mistaken for delocalization.
    if worst > rl::<T>(0.05) {
        return Err(LoopError::NotLocalized(worst.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(())
}

/// C-infinity unit step: 0 for u <= 0, 1 for u >= 1, strictly increasing
/// in between, all derivatives vanishing at both ends.
pub fn smooth_step<T: Real>(u: T) -> T {
    if u <= T::zero() {
        return T::zero();
    }
    if u >= T::one() {
        return T::one();
    }
    let a = (-u.recip()).exp();
    let b = (-(T::one() - u).recip()).exp();
    a / (a + b)
}

/// Standard compactly supported bump exp(-1/(1-x^2)) on |x| < 1, else 0.
pub fn bump<T: Real>(x: T) -> T {
    let x2 = x * x;
    if x2 >= T::one() {
        return T::zero();
    }
    (-(T::one() - x2).recip()).exp()
}

/// Winding loop supported in (a, b): climbs smoothly from 0 to 2 pi alpha
/// across the interval, so e^{if} differs from 1 only inside (a, b).
pub fn step_winding_loop<T: Real>(
    alpha: &[i64],
    a: T,
    b: T,
    grid: usize,
    cutoff: usize,
) -> Result<TorusLoop<T>, LoopError> {
    let two_pi = rl::<T>(2.0) * T::PI();
    let samples: Vec<Vec<T>> = (0..=grid)
        .map(|j| {
            let theta = two_pi * T::from_usize(j).unwrap() / T::from_usize(grid).unwrap();
            let s = smooth_step((theta - a) / (b - a));
            alpha.iter().map(|&w| two_pi * rl::<T>(w as f64) * s).collect()
        })
        .collect();
    decompose(&samples, alpha, cutoff)
}

/// Zero-winding loop v * bump, supported in (a, b).
pub fn bump_loop<T: Real>(
    v: &[T],
    a: T,
    b: T,
    grid: usize,
    cutoff: usize,
) -> Result<TorusLoop<T>, LoopError> {
    let two_pi = rl::<T>(2.0) * T::PI();
    let half = rl::<T>(0.5);
    let mid = (a + b) * half;
    let rad = (b - a) * half;
    let samples: Vec<Vec<T>> = (0..=grid)
        .map(|j| {
            let theta = two_pi * T::from_usize(j).unwrap() / T::from_usize(grid).unwrap();
            let s = bump((theta - mid) / rad);
            v.iter().map(|&c| c * s).collect()
        })
        .collect();
    decompose(&samples, &vec![0; v.len()], cutoff)
}
