//! Coherent-state calculus for the bosonic Fock space over the
//! positive-mode one-particle space of `F`-valued loops.
//!
//! States are finite combinations of labelled exponentials `c·e^h`; Weyl
//! operators and second quantization act on the labels in closed form, so
//! every identity is checked without truncating an occupation-number basis.

use crate::loops::ModeSpace;
use crate::real::{rl, Real, C};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum WeylError {
    #[error("shape mismatch: rank {0}x cutoff {1} expected, got rank {2}x cutoff {3}")]
    ShapeMismatch(usize, usize, usize, usize),
    #[error("operator is not unitary for the weighted product (defect {0:.3e})")]
    NotUnitary(f64),
}

/// Element of the one-particle space: one complex `F`-coordinate vector per
/// positive mode `k = 1..=cutoff`. Mode `k` carries the weight `k` in the
/// inner product.
#[derive(Debug, Clone, PartialEq)]
pub struct OneParticleVector<T> {
    modes: Vec<Vec<C<T>>>,
}

impl<T: Real> OneParticleVector<T> {
    pub fn zero(rank: usize, cutoff: usize) -> Self {
        Self {
            modes: vec![vec![C::new(T::zero(), T::zero()); rank]; cutoff],
        }
    }

    /// `modes[k-1]` is the coordinate vector of mode `k`; all rows must have
    /// equal length.
    pub fn from_modes(modes: Vec<Vec<C<T>>>) -> Result<Self, WeylError> {
        if let Some(first) = modes.first() {
            let rank = first.len();
            for row in &modes {
                if row.len() != rank {
                    return Err(WeylError::ShapeMismatch(rank, modes.len(), row.len(), 0));
                }
            }
        }
        Ok(Self { modes })
    }

    pub fn rank(&self) -> usize {
        self.modes.first().map_or(0, Vec::len)
    }

    pub fn cutoff(&self) -> usize {
        self.modes.len()
    }

    pub fn mode(&self, k: usize) -> &[C<T>] {
        &self.modes[k - 1]
    }

    pub fn modes(&self) -> &[Vec<C<T>>] {
        &self.modes
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        assert_eq!(self.cutoff(), other.cutoff(), "cutoff mismatch");
        Self {
            modes: self
                .modes
                .iter()
                .zip(&other.modes)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            modes: self
                .modes
                .iter()
                .map(|row| row.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: C<T>) -> Self {
        Self {
            modes: self
                .modes
                .iter()
                .map(|row| row.iter().map(|x| x * c).collect())
                .collect(),
        }
    }
}

/// `coeff · e^{label}` in the coherent presentation of Fock space.
#[derive(Debug, Clone, PartialEq)]
pub struct CoherentTerm<T> {
    pub coeff: C<T>,
    pub label: OneParticleVector<T>,
}

impl<T: Real> CoherentTerm<T> {
    pub fn vacuum(rank: usize, cutoff: usize) -> Self {
        Self {
            coeff: C::new(T::one(), T::zero()),
            label: OneParticleVector::zero(rank, cutoff),
        }
    }

    pub fn exponential(label: OneParticleVector<T>) -> Self {
        Self {
            coeff: C::new(T::one(), T::zero()),
            label,
        }
    }
}

/// Finite linear combination of coherent terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CoherentVector<T> {
    pub terms: Vec<CoherentTerm<T>>,
}

impl<T: Real> CoherentVector<T> {
    pub fn from_terms(terms: Vec<CoherentTerm<T>>) -> Self {
        Self { terms }
    }
}

/// One-particle operator stored as one `rank x rank` complex block per mode.
/// Covers mode-phase multipliers, basis isometries, and their compositions;
/// blocks never mix distinct modes, matching the translation-covariant
/// operators exercised by the covariance checks.
#[derive(Debug, Clone, PartialEq)]
pub struct OneParticleOperator<T> {
    blocks: Vec<Vec<Vec<C<T>>>>,
    rank: usize,
}

impl<T: Real> OneParticleOperator<T> {
    pub fn identity(rank: usize, cutoff: usize) -> Self {
        let mut block = vec![vec![C::new(T::zero(), T::zero()); rank]; rank];
        for (i, row) in block.iter_mut().enumerate() {
            row[i] = C::new(T::one(), T::zero());
        }
        Self {
            blocks: vec![block; cutoff],
            rank,
        }
    }

    /// Same block on every mode.
    pub fn uniform(block: Vec<Vec<C<T>>>, cutoff: usize) -> Self {
        let rank = block.len();
        Self {
            blocks: vec![block; cutoff],
            rank,
        }
    }

    /// Diagonal multiplier: mode `k` is scaled by `phases[k-1]`.
    pub fn mode_phases(rank: usize, phases: &[C<T>]) -> Self {
        let blocks = phases
            .iter()
            .map(|&p| {
                let mut block = vec![vec![C::new(T::zero(), T::zero()); rank]; rank];
                for (i, row) in block.iter_mut().enumerate() {
                    row[i] = p;
                }
                block
            })
            .collect();
        Self { blocks, rank }
    }

    pub fn from_blocks(blocks: Vec<Vec<Vec<C<T>>>>) -> Self {
        let rank = blocks.first().map_or(0, Vec::len);
        Self { blocks, rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cutoff(&self) -> usize {
        self.blocks.len()
    }

    pub fn apply(&self, f: &OneParticleVector<T>) -> OneParticleVector<T> {
        assert_eq!(f.rank(), self.rank, "rank mismatch");
        assert_eq!(f.cutoff(), self.cutoff(), "cutoff mismatch");
        let modes = self
            .blocks
            .iter()
            .zip(&f.modes)
            .map(|(block, v)| mat_vec(block, v))
            .collect();
        OneParticleVector { modes }
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.rank, other.rank, "rank mismatch");
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| mat_mul(a, b))
            .collect();
        Self {
            blocks,
            rank: self.rank,
        }
    }

    /// Adjoint for the weighted product: per block `G^{-1} B^H G` (the mode
    /// weight `k` cancels within a block).
    pub fn adjoint(&self, space: &ModeSpace<T>) -> Self {
        let g: Vec<Vec<T>> = space
            .gram()
            .iter()
            .map(|row| row.iter().map(|&x| rl::<T>(x as f64)).collect())
            .collect();
        let g_inv = invert_real(&g);
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let bh = conj_transpose(b);
                let bg = complex_real_mul(&bh, &g);
                real_complex_mul(&g_inv, &bg)
            })
            .collect();
        Self {
            blocks,
            rank: self.rank,
        }
    }

    /// Max elementwise defect of `B^† B = 1` over all mode blocks.
    pub fn unitarity_defect(&self, space: &ModeSpace<T>) -> T {
        let adj = self.adjoint(space);
        let mut worst = T::zero();
        for (a, b) in adj.blocks.iter().zip(&self.blocks) {
            let prod = mat_mul(a, b);
            for (i, row) in prod.iter().enumerate() {
                for (j, x) in row.iter().enumerate() {
                    let target = if i == j { T::one() } else { T::zero() };
                    let d = (x - C::new(target, T::zero())).norm();
                    if d > worst {
                        worst = d;
                    }
                }
            }
        }
        worst
    }

    pub fn check_unitary(&self, space: &ModeSpace<T>) -> Result<(), WeylError> {
        let defect = self.unitarity_defect(space);
        if defect > rl::<T>(1e-10) {
            return Err(WeylError::NotUnitary(defect.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(())
    }
}

fn mat_vec<T: Real>(m: &[Vec<C<T>>], v: &[C<T>]) -> Vec<C<T>> {
    m.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(C::new(T::zero(), T::zero()), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

fn mat_mul<T: Real>(a: &[Vec<C<T>>], b: &[Vec<C<T>>]) -> Vec<Vec<C<T>>> {
    let n = a.len();
    let m = b[0].len();
    let inner = b.len();
    let zero = C::new(T::zero(), T::zero());
    let mut out = vec![vec![zero; m]; n];
    for i in 0..n {
        for (l, brow) in b.iter().enumerate().take(inner) {
            let ail = a[i][l];
            for j in 0..m {
                out[i][j] = out[i][j] + ail * brow[j];
            }
        }
    }
    out
}

fn conj_transpose<T: Real>(m: &[Vec<C<T>>]) -> Vec<Vec<C<T>>> {
    let n = m.len();
    let mut out = vec![vec![C::new(T::zero(), T::zero()); n]; n];
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[j][i] = x.conj();
        }
    }
    out
}

fn real_complex_mul<T: Real>(a: &[Vec<T>], b: &[Vec<C<T>>]) -> Vec<Vec<C<T>>> {
    let n = a.len();
    let m = b[0].len();
    let zero = C::new(T::zero(), T::zero());
    let mut out = vec![vec![zero; m]; n];
    for i in 0..n {
        for l in 0..b.len() {
            let ail = a[i][l];
            for j in 0..m {
                out[i][j] = out[i][j] + b[l][j].scale(ail);
            }
        }
    }
    out
}

fn complex_real_mul<T: Real>(a: &[Vec<C<T>>], b: &[Vec<T>]) -> Vec<Vec<C<T>>> {
    let n = a.len();
    let m = b[0].len();
    let zero = C::new(T::zero(), T::zero());
    let mut out = vec![vec![zero; m]; n];
    for i in 0..n {
        for (l, brow) in b.iter().enumerate() {
            let ail = a[i][l];
            for j in 0..m {
                out[i][j] = out[i][j] + ail.scale(brow[j]);
            }
        }
    }
    out
}

fn invert_real<T: Real>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    let mut a: Vec<Vec<T>> = m.to_vec();
    let mut inv = vec![vec![T::zero(); n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = T::one();
    }
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| {
                a[i][col]
                    .abs()
                    .partial_cmp(&a[j][col].abs())
                    .expect("non-finite pivot")
            })
            .expect("empty matrix");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        assert!(p.abs() > T::epsilon(), "singular gram");
        for j in 0..n {
            a[col][j] = a[col][j] / p;
            inv[col][j] = inv[col][j] / p;
        }
        for i in 0..n {
            if i == col {
                continue;
            }
            let f = a[i][col];
            if f == T::zero() {
                continue;
            }
            for j in 0..n {
                a[i][j] = a[i][j] - f * a[col][j];
                inv[i][j] = inv[i][j] - f * inv[col][j];
            }
        }
    }
    inv
}

/// Lower-triangular Cholesky factor of a positive-definite integer gram.
pub fn cholesky_gram<T: Real>(gram: &[Vec<i64>]) -> Vec<Vec<T>> {
    let n = gram.len();
    let mut l = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = rl::<T>(gram[i][j] as f64);
            for k in 0..j {
                s = s - l[i][k] * l[j][k];
            }
            if i == j {
                assert!(s > T::zero(), "gram not positive definite");
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    l
}

impl<T: Real> ModeSpace<T> {
    /// Weighted sesquilinear product `(f,h) = Σ_k k · f_k^T G conj(h_k)`
    /// (conjugation in the second slot; its imaginary part is the loop
    /// symplectic form restricted to positive modes).
    pub fn one_particle_inner(
        &self,
        f: &OneParticleVector<T>,
        h: &OneParticleVector<T>,
    ) -> C<T> {
        assert_eq!(f.rank(), self.rank(), "rank mismatch");
        assert_eq!(h.rank(), self.rank(), "rank mismatch");
        assert_eq!(f.cutoff(), h.cutoff(), "cutoff mismatch");
        let mut acc = C::new(T::zero(), T::zero());
        for (k, (fk, hk)) in f.modes.iter().zip(&h.modes).enumerate() {
            let mut pair = C::new(T::zero(), T::zero());
            for (a, fa) in fk.iter().enumerate() {
                for (b, hb) in hk.iter().enumerate() {
                    let g = self.gram()[a][b];
                    if g != 0 {
                        pair = pair + (fa * hb.conj()).scale(rl::<T>(g as f64));
                    }
                }
            }
            acc = acc + pair.scale(rl::<T>((k + 1) as f64));
        }
        acc
    }

    pub fn one_particle_norm_sqr(&self, f: &OneParticleVector<T>) -> T {
        self.one_particle_inner(f, f).re
    }

    /// `(c·e^f, d·e^h) = c · conj(d) · exp((f,h))`.
    pub fn coherent_inner(&self, s: &CoherentTerm<T>, t: &CoherentTerm<T>) -> C<T> {
        s.coeff * t.coeff.conj() * self.one_particle_inner(&s.label, &t.label).exp()
    }

    pub fn coherent_vec_inner(&self, s: &CoherentVector<T>, t: &CoherentVector<T>) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for a in &s.terms {
            for b in &t.terms {
                acc = acc + self.coherent_inner(a, b);
            }
        }
        acc
    }

    /// `W(f)·(c e^h) = c · e^{-‖f‖²/2 - (f,h)} · e^{f+h}`; the vacuum case is
    /// the defining action, the general label the unique extension compatible
    /// with the Weyl relation.
    pub fn weyl_apply(&self, f: &OneParticleVector<T>, t: &CoherentTerm<T>) -> CoherentTerm<T> {
        let half = rl::<T>(0.5);
        let exponent = -self.one_particle_inner(f, &t.label)
            - C::new(self.one_particle_norm_sqr(f) * half, T::zero());
        CoherentTerm {
            coeff: t.coeff * exponent.exp(),
            label: f.add(&t.label),
        }
    }

    pub fn weyl_apply_vec(
        &self,
        f: &OneParticleVector<T>,
        v: &CoherentVector<T>,
    ) -> CoherentVector<T> {
        CoherentVector {
            terms: v.terms.iter().map(|t| self.weyl_apply(f, t)).collect(),
        }
    }

    /// Second quantization on labels: `Γ(U) e^h = e^{Uh}`. Fails if `U` is
    /// not unitary for the weighted product.
    pub fn gamma_apply(
        &self,
        u: &OneParticleOperator<T>,
        t: &CoherentTerm<T>,
    ) -> Result<CoherentTerm<T>, WeylError> {
        u.check_unitary(self)?;
        Ok(CoherentTerm {
            coeff: t.coeff,
            label: u.apply(&t.label),
        })
    }

    /// `(Ω, W(f) Ω) = e^{-‖f‖²/2}`.
    pub fn vacuum_expectation(&self, f: &OneParticleVector<T>) -> C<T> {
        C::new((-self.one_particle_norm_sqr(f) * rl::<T>(0.5)).exp(), T::zero())
    }

    /// Max matrix-element defect of `W(f)W(g) = e^{-iω(f,g)} W(f+g)` over the
    /// coherent test set (rows bra, columns ket).
    pub fn weyl_relation_defect(
        &self,
        f: &OneParticleVector<T>,
        g: &OneParticleVector<T>,
        bras: &[CoherentTerm<T>],
        kets: &[CoherentTerm<T>],
    ) -> T {
        let omega = self.one_particle_inner(f, g).im;
        let phase = C::new(T::zero(), -omega).exp();
        let sum = f.add(g);
        let mut worst = T::zero();
        for ket in kets {
            let lhs = self.weyl_apply(f, &self.weyl_apply(g, ket));
            let mut rhs = self.weyl_apply(&sum, ket);
            rhs.coeff = rhs.coeff * phase;
            for bra in bras {
                let d = (self.coherent_inner(bra, &lhs) - self.coherent_inner(bra, &rhs)).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    /// Max matrix-element defect of `Γ(U) W(f) Γ(U)^* = W(Uf)`.
    pub fn bogoliubov_defect(
        &self,
        u: &OneParticleOperator<T>,
        f: &OneParticleVector<T>,
        bras: &[CoherentTerm<T>],
        kets: &[CoherentTerm<T>],
    ) -> Result<T, WeylError> {
        u.check_unitary(self)?;
        let u_inv = u.adjoint(self);
        let uf = u.apply(f);
        let mut worst = T::zero();
        for ket in kets {
            let step = self.gamma_apply(&u_inv, ket)?;
            let step = self.weyl_apply(f, &step);
            let lhs = self.gamma_apply(u, &step)?;
            let rhs = self.weyl_apply(&uf, ket);
            for bra in bras {
                let d = (self.coherent_inner(bra, &lhs) - self.coherent_inner(bra, &rhs)).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        Ok(worst)
    }

    /// Hermitian gram matrix of a coherent test family.
    pub fn coherent_gram(&self, terms: &[CoherentTerm<T>]) -> Vec<Vec<C<T>>> {
        terms
            .iter()
            .map(|a| terms.iter().map(|b| self.coherent_inner(a, b)).collect())
            .collect()
    }
}

/// Random one-particle vector with mode-`k` amplitudes damped like `1/k` so
/// norms stay O(scale).
pub fn random_one_particle<T: Real, R: Rng>(
    rng: &mut R,
    rank: usize,
    cutoff: usize,
    scale: T,
) -> OneParticleVector<T> {
    let modes = (1..=cutoff)
        .map(|k| {
            let damp = scale / rl::<T>(k as f64);
            (0..rank)
                .map(|_| {
                    let re = rl::<T>(rng.gen_range(-1.0..1.0)) * damp;
                    let im = rl::<T>(rng.gen_range(-1.0..1.0)) * damp;
                    C::new(re, im)
                })
                .collect()
        })
        .collect();
    OneParticleVector { modes }
}

/// Random real `G`-isometry acting uniformly on every mode: conjugate a
/// random orthogonal matrix into the gram geometry via the Cholesky factor.
pub fn random_isometry_operator<T: Real, R: Rng>(
    space: &ModeSpace<T>,
    cutoff: usize,
    rng: &mut R,
) -> OneParticleOperator<T> {
    let n = space.rank();
    let l = cholesky_gram::<T>(space.gram());
    let lt = transpose_real(&l);
    let lt_inv = invert_real(&lt);
    let q = random_orthogonal::<T, R>(n, rng);
    let block = mul_real(&mul_real(&lt_inv, &q), &lt);
    let cblock = block
        .iter()
        .map(|row| row.iter().map(|&x| C::new(x, T::zero())).collect())
        .collect();
    OneParticleOperator::uniform(cblock, cutoff)
}

/// Random diagonal mode-phase multiplier.
pub fn random_mode_phase_operator<T: Real, R: Rng>(
    rank: usize,
    cutoff: usize,
    rng: &mut R,
) -> OneParticleOperator<T> {
    let phases: Vec<C<T>> = (0..cutoff)
        .map(|_| {
            let theta = rl::<T>(rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI));
            C::new(theta.cos(), theta.sin())
        })
        .collect();
    OneParticleOperator::mode_phases(rank, &phases)
}

fn transpose_real<T: Real>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = m.len();
    let mut out = vec![vec![T::zero(); n]; n];
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            out[j][i] = x;
        }
    }
    out
}

fn mul_real<T: Real>(a: &[Vec<T>], b: &[Vec<T>]) -> Vec<Vec<T>> {
    let n = a.len();
    let mut out = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i][l];
            for j in 0..n {
                out[i][j] = out[i][j] + ail * b[l][j];
            }
        }
    }
    out
}

fn random_orthogonal<T: Real, R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<T>> {
    // Gram-Schmidt on random rows; retries guard against near-dependence.
    loop {
        let mut rows: Vec<Vec<T>> = (0..n)
            .map(|_| (0..n).map(|_| rl::<T>(rng.gen_range(-1.0..1.0))).collect())
            .collect();
        let mut ok = true;
        for i in 0..n {
            for j in 0..i {
                let dot = dot_real(&rows[i], &rows[j]);
                let prev = rows[j].clone();
                for (x, y) in rows[i].iter_mut().zip(prev) {
                    *x = *x - dot * y;
                }
            }
            let norm = dot_real(&rows[i], &rows[i]).sqrt();
            if norm < rl::<T>(1e-3) {
                ok = false;
                break;
            }
            for x in rows[i].iter_mut() {
                *x = *x / norm;
            }
        }
        if ok {
            return rows;
        }
    }
}

fn dot_real<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}
