//! Thin FFT wrappers with the normalization conventions used crate-wide.
//!
//! Forward transform: X_k = sum_j x_j e^{-2 pi i jk/N}. The inverse here is
//! unnormalized too (e^{+...} kernel); helpers that want analysis
//! coefficients divide by N themselves so the convention is visible at the
//! call site.

use crate::real::{Real, C};
use rustfft::FftPlanner;

pub fn fft_in_place<T: Real>(buf: &mut [C<T>]) {
    let fft = FftPlanner::<T>::new().plan_fft_forward(buf.len());
    fft.process(buf);
}

pub fn ifft_in_place<T: Real>(buf: &mut [C<T>]) {
    let fft = FftPlanner::<T>::new().plan_fft_inverse(buf.len());
    fft.process(buf);
}

/// Analysis coefficients of real samples on a uniform period grid:
/// c_k = (1/N) sum_j s_j e^{-2 pi i jk/N}, so s_j = sum_k c_k e^{+2 pi i jk/N}.
pub fn coeffs_of_real<T: Real>(samples: &[T]) -> Vec<C<T>> {
    let n = samples.len();
    let mut buf: Vec<C<T>> = samples.iter().map(|&s| C::new(s, T::zero())).collect();
    fft_in_place(&mut buf);
    let scale = T::one() / T::from_usize(n).unwrap();
    for z in &mut buf {
        *z = z.scale(scale);
    }
    buf
}

/// Synthesize real samples from one-sided coefficients: zero mode plus modes
/// 1..=K with implied conjugates. Returns N samples at theta_j = 2 pi j / N.
pub fn synth_real<T: Real>(zero: T, modes: &[C<T>], n: usize) -> Vec<T> {
    assert!(n > 2 * modes.len(), "grid too coarse for the mode content");
    let mut buf = vec![C::new(T::zero(), T::zero()); n];
    buf[0] = C::new(zero, T::zero());
    for (i, m) in modes.iter().enumerate() {
        let k = i + 1;
        buf[k] = *m;
        buf[n - k] = m.conj();
    }
    ifft_in_place(&mut buf);
    buf.into_iter().map(|z| z.re).collect()
}
