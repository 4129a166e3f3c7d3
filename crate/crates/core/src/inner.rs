//! Symmetric inner functions on the real line.
//!
//! The representable family is `sign · e^{itp} · Π_j B_{a_j}(p)` where each
//! `B_a(p) = (p-a)(p+conj a) / ((p-conj a)(p+a))` is the symmetric Blaschke
//! factor attached to an upper-half-plane zero `a`. The family is closed
//! under multiplication, automatically satisfies `conj(φ(p)) = φ(-p)` and
//! `|φ(p)| = 1` on the real line, and is analytic and bounded by one on the
//! closed upper half plane. Matrix versions act on a lattice's coordinate
//! space with one scalar per irreducible component, twisted by a lattice
//! automorphism.

use crate::exact::Mat;
use crate::lattice::Lattice;
use crate::real::{rl, Real, C};
use num_traits::One;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum InnerError {
    #[error("Blaschke zero {0}+{1}i must lie in the open upper half plane")]
    ZeroNotUpper(f64, f64),
    #[error("singular exponent must be nonnegative, got {0}")]
    NegativeSingular(f64),
    #[error("sign must be +1 or -1, got {0}")]
    BadSign(i64),
    #[error("evaluation point lies in the lower half plane")]
    LowerHalfPlane,
    #[error("expected {expected} component scalars, got {got}")]
    ComponentCount { expected: usize, got: usize },
    #[error("matrix is not a lattice automorphism: {0}")]
    NotAutomorphism(String),
}

/// `sign · e^{itp} · Π_j B_{a_j}(p)` with all `a_j` in the upper half plane.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricInnerFunction<T> {
    zeros: Vec<C<T>>,
    singular_t: T,
    sign: i8,
}

impl<T: Real> SymmetricInnerFunction<T> {
    pub fn new(zeros: Vec<C<T>>, singular_t: T, sign: i8) -> Result<Self, InnerError> {
        for a in &zeros {
            if a.im <= T::zero() {
                return Err(InnerError::ZeroNotUpper(
                    a.re.to_f64().unwrap_or(f64::NAN),
                    a.im.to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        if singular_t < T::zero() {
            return Err(InnerError::NegativeSingular(
                singular_t.to_f64().unwrap_or(f64::NAN),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(InnerError::BadSign(sign as i64));
        }
        Ok(Self {
            zeros,
            singular_t,
            sign,
        })
    }

    /// The multiplicative identity: no zeros, no singular part, sign `+1`.
    pub fn one() -> Self {
        Self {
            zeros: Vec::new(),
            singular_t: T::zero(),
            sign: 1,
        }
    }

    pub fn singular(t: T) -> Result<Self, InnerError> {
        Self::new(Vec::new(), t, 1)
    }

    pub fn blaschke(a: C<T>) -> Result<Self, InnerError> {
        Self::new(vec![a], T::zero(), 1)
    }

    pub fn zeros(&self) -> &[C<T>] {
        &self.zeros
    }

    pub fn singular_t(&self) -> T {
        self.singular_t
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    /// `φ(0) = sign`; only the `+1` family can satisfy the Hölder criterion.
    pub fn is_holder_candidate(&self) -> bool {
        self.sign == 1
    }

    /// Evaluate at a point with `Im z >= 0` (all poles sit strictly below).
    pub fn eval(&self, z: C<T>) -> Result<C<T>, InnerError> {
        if z.im < T::zero() {
            return Err(InnerError::LowerHalfPlane);
        }
        Ok(self.eval_unchecked(z))
    }

    pub fn eval_real(&self, p: T) -> C<T> {
        self.eval_unchecked(C::new(p, T::zero()))
    }

    fn eval_unchecked(&self, z: C<T>) -> C<T> {
        let mut value = C::new(rl::<T>(self.sign as f64), T::zero());
        for &a in &self.zeros {
            let num = (z - a) * (z + a.conj());
            let den = (z - a.conj()) * (z + a);
            value = value * num / den;
        }
        if self.singular_t != T::zero() {
            // e^{itz}
            value = value * (C::new(T::zero(), self.singular_t) * z).exp();
        }
        value
    }

    /// Concatenate zeros, add singular exponents, multiply signs.
    pub fn multiply(&self, other: &Self) -> Self {
        let mut zeros = self.zeros.clone();
        zeros.extend_from_slice(&other.zeros);
        Self {
            zeros,
            singular_t: self.singular_t + other.singular_t,
            sign: self.sign * other.sign,
        }
    }

    /// `(symmetry, unimodularity)` defects over a real grid.
    pub fn symmetric_inner_defects(&self, grid: &[T]) -> (T, T) {
        symmetric_inner_defects(|p| self.eval_real(p), grid)
    }

    /// Max of `|φ| - 1` over a rectangle probe of the upper half plane.
    pub fn upper_bound_defect(&self, xs: &[T], ys: &[T]) -> T {
        let mut worst = T::zero();
        for &x in xs {
            for &y in ys {
                let v = self.eval_unchecked(C::new(x, y)).norm() - T::one();
                if v > worst {
                    worst = v;
                }
            }
        }
        worst
    }
}

/// Defects of `conj(φ(p)) = φ(-p)` and `|φ(p)| = 1` for an arbitrary
/// evaluator over a real grid.
pub fn symmetric_inner_defects<T: Real>(phi: impl Fn(T) -> C<T>, grid: &[T]) -> (T, T) {
    let mut sym = T::zero();
    let mut unimod = T::zero();
    for &p in grid {
        let v = phi(p);
        let s = (v.conj() - phi(-p)).norm();
        if s > sym {
            sym = s;
        }
        let u = (v.norm() - T::one()).abs();
        if u > unimod {
            unimod = u;
        }
    }
    (sym, unimod)
}

/// Uniform grid of `n` points on `[lo, hi]`.
pub fn uniform_grid<T: Real>(lo: T, hi: T, n: usize) -> Vec<T> {
    let step = (hi - lo) / rl::<T>((n - 1) as f64);
    (0..n).map(|i| lo + step * rl::<T>(i as f64)).collect()
}

/// Verdict of the local-integrability test for `|φ(p)-1|²/|p|` near zero.
#[derive(Debug, Clone)]
pub struct HolderReport<T> {
    /// Dyadic refinement is Cauchy: the tail contribution is negligible.
    pub pass: bool,
    /// Increments stopped decreasing: logarithmic or worse divergence.
    pub divergent_tail: bool,
    /// Accumulated integral over the resolved annuli of `[-1,1]`.
    pub estimate: T,
    /// Per-level contributions, outermost annulus first.
    pub increments: Vec<T>,
}

/// Dyadic-refinement quadrature of `|φ(p)-1|²/|p|` over `[-1,1] \ {0}`.
///
/// Level `l` integrates over `2^{-l} <= |p| <= 2^{-l+1}` with a fixed
/// midpoint rule; convergence of the level sums decides the verdict. The
/// tail window of eight levels matches the detection rule for logarithmic
/// growth, whose per-level contributions are asymptotically constant.
pub fn holder_check<T: Real>(phi: impl Fn(T) -> C<T>) -> HolderReport<T> {
    holder_check_levels(phi, 40)
}

pub fn holder_check_levels<T: Real>(phi: impl Fn(T) -> C<T>, levels: usize) -> HolderReport<T> {
    assert!(levels >= 10, "need enough dyadic levels for a verdict");
    let points_per_side = 16usize;
    let one = C::new(T::one(), T::zero());
    let mut increments = Vec::with_capacity(levels);
    let mut total = T::zero();
    let half = rl::<T>(0.5);
    let mut hi = T::one();
    for _ in 0..levels {
        let lo = hi * half;
        let width = (hi - lo) / rl::<T>(points_per_side as f64);
        let mut level = T::zero();
        for side in [T::one(), -T::one()] {
            for j in 0..points_per_side {
                let p = side * (lo + width * (rl::<T>(j as f64) + half));
                let d = phi(p) - one;
                level = level + d.norm_sqr() / p.abs() * width;
            }
        }
        increments.push(level);
        total = total + level;
        hi = lo;
    }
    let window = 8;
    let tail = &increments[increments.len() - window..];
    let tail_sum: T = tail.iter().copied().sum();
    let pass = tail_sum < rl::<T>(1e-6);
    let near_one = rl::<T>(0.999);
    let divergent_tail = tail.windows(2).all(|w| w[1] >= w[0] * near_one);
    HolderReport {
        pass,
        divergent_tail,
        estimate: total,
        increments,
    }
}

/// True when `R` is a gram isometry with determinant `±1`.
pub fn is_lattice_automorphism(lattice: &Lattice, r: &[Vec<i64>]) -> bool {
    let n = lattice.rank();
    if r.len() != n || r.iter().any(|row| row.len() != n) {
        return false;
    }
    let rm = Mat::from_i64_rows(r);
    let g = Mat::from_i64_rows(&lattice.gram_i64());
    let back = rm.transpose().mul(&g).mul(&rm);
    back == g && rm.det().magnitude().is_one()
}

/// Indices of each connected component of the gram matrix (two generators
/// touch when they pair nontrivially).
pub fn lattice_components(lattice: &Lattice) -> Vec<Vec<usize>> {
    let n = lattice.rank();
    let gram = lattice.gram_i64();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut comp = Vec::new();
        seen[start] = true;
        while let Some(i) = stack.pop() {
            comp.push(i);
            for j in 0..n {
                if !seen[j] && gram[i][j] != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        comps.push(comp);
    }
    comps
}

/// Matrix inner function `φ(p) α_i = φ_j(p) · R α_i` for `α_i` in component
/// `j`, with `R` a lattice automorphism.
#[derive(Debug, Clone)]
pub struct MatrixInnerFunction<T> {
    lattice: Lattice,
    components: Vec<Vec<usize>>,
    comp_of: Vec<usize>,
    scalars: Vec<SymmetricInnerFunction<T>>,
    r: Vec<Vec<i64>>,
}

impl<T: Real> MatrixInnerFunction<T> {
    pub fn new(
        lattice: Lattice,
        scalars: Vec<SymmetricInnerFunction<T>>,
        r: Vec<Vec<i64>>,
    ) -> Result<Self, InnerError> {
        let components = lattice_components(&lattice);
        if scalars.len() != components.len() {
            return Err(InnerError::ComponentCount {
                expected: components.len(),
                got: scalars.len(),
            });
        }
        if !is_lattice_automorphism(&lattice, &r) {
            return Err(InnerError::NotAutomorphism(
                "gram pairing or determinant not preserved".into(),
            ));
        }
        let mut comp_of = vec![0usize; lattice.rank()];
        for (c, comp) in components.iter().enumerate() {
            for &i in comp {
                comp_of[i] = c;
            }
        }
        Ok(Self {
            lattice,
            components,
            comp_of,
            scalars,
            r,
        })
    }

    /// Identity twist.
    pub fn identity_automorphism(rank: usize) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; rank]; rank];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        m
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    pub fn component_of(&self, generator: usize) -> usize {
        self.comp_of[generator]
    }

    pub fn scalar(&self, component: usize) -> &SymmetricInnerFunction<T> {
        &self.scalars[component]
    }

    pub fn scalar_of_generator(&self, generator: usize) -> &SymmetricInnerFunction<T> {
        &self.scalars[self.comp_of[generator]]
    }

    pub fn automorphism(&self) -> &[Vec<i64>] {
        &self.r
    }

    /// Rank-by-rank complex matrix in the generator basis.
    pub fn eval_real(&self, p: T) -> Vec<Vec<C<T>>> {
        let values: Vec<C<T>> = self.scalars.iter().map(|s| s.eval_real(p)).collect();
        per_generator_matrix(
            &self.r,
            &(0..self.lattice.rank())
                .map(|i| values[self.comp_of[i]])
                .collect::<Vec<_>>(),
        )
    }

    /// Max elementwise defect of `M(p)^T G conj(M(p)) = G`.
    pub fn unitarity_defect(&self, p: T) -> T {
        let m = self.eval_real(p);
        gram_unitarity_defect(&self.lattice.gram_i64(), &m)
    }
}

/// Column `i` is `values[i] · (R e_i)`; the well-formed evaluator uses one
/// value per component, the negative control feeds per-generator values.
pub fn per_generator_matrix<T: Real>(r: &[Vec<i64>], values: &[C<T>]) -> Vec<Vec<C<T>>> {
    let n = r.len();
    let mut m = vec![vec![C::new(T::zero(), T::zero()); n]; n];
    for (row_i, r_row) in r.iter().enumerate() {
        for (col, &v) in values.iter().enumerate() {
            if r_row[col] != 0 {
                m[row_i][col] = v.scale(rl::<T>(r_row[col] as f64));
            }
        }
    }
    m
}

/// Max elementwise defect of `M^T G conj(M) = G`.
pub fn gram_unitarity_defect<T: Real>(gram: &[Vec<i64>], m: &[Vec<C<T>>]) -> T {
    let n = gram.len();
    let mut worst = T::zero();
    for i in 0..n {
        for j in 0..n {
            let mut acc = C::new(T::zero(), T::zero());
            for a in 0..n {
                for b in 0..n {
                    let g = gram[a][b];
                    if g != 0 {
                        acc = acc + (m[a][i] * m[b][j].conj()).scale(rl::<T>(g as f64));
                    }
                }
            }
            let d = (acc - C::new(rl::<T>(gram[i][j] as f64), T::zero())).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}
