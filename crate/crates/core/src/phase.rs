//! Phase and angle helpers shared by the cocycle and boundary checks.
//!
//! Many identities in this crate compare unit complex numbers or angles that
//! are only meaningful modulo 2π. Comparing raw angle values would report
//! spurious defects of 2π; everything funnels through [`circle_dist`].

use crate::real::{rl, Real, C};

/// Wrap an angle into (-π, π].
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let two_pi = rl::<T>(2.0) * T::PI();
    let mut t = theta % two_pi;
    if t > T::PI() {
        t = t - two_pi;
    } else if t <= -T::PI() {
        t = t + two_pi;
    }
    t
}

/// Distance between two angles on the circle, in [0, π].
pub fn circle_dist<T: Real>(a: T, b: T) -> T {
    wrap_angle(a - b).abs()
}

/// Unit complex number e^{iθ}.
pub fn unit<T: Real>(theta: T) -> C<T> {
    C::new(theta.cos(), theta.sin())
}

/// |z - w| for unit complex numbers; bounded distance for phase comparisons.
pub fn phase_defect<T: Real>(z: C<T>, w: C<T>) -> T {
    (z - w).norm()
}

/// Distance of z from the unit circle combined with phase error against w.
/// Used when a product of phases should be exactly a given unit value.
pub fn defect_from<T: Real>(z: C<T>, expected: C<T>) -> T {
    phase_defect(z, expected)
}

/// (-1)^k as a real scalar.
pub fn neg_one_pow<T: Real>(k: i64) -> T {
    if k.rem_euclid(2) == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// e^{iπ q} for rational exponent q = num/den, computed with the integer
/// reduction done first so large numerators lose no precision.
pub fn unit_pi_rational<T: Real>(num: i64, den: i64) -> C<T> {
    assert!(den != 0);
    let (num, den) = if den < 0 { (-num, -den) } else { (num, den) };
    let r = num.rem_euclid(2 * den);
    unit(T::PI() * rl::<T>(r as f64) / rl::<T>(den as f64))
}
