//! Discrete 2-cocycle on an even lattice and the Klein-style phase algebra
//! built from it.
//!
//! The sign cocycle epsilon(a, b) = (-1)^{a^T B b} comes from an integer
//! bilinear form B chosen so that B + B^T matches the Gram matrix mod 2 and
//! the diagonal carries half the even norms. Everything in this module is
//! exact: signs are integers and the fourth-root phases are picked from a
//! lookup, so equality checks are honest booleans.

use crate::lattice::Lattice;
use num_complex::Complex64;

#[derive(Clone, Debug)]
pub struct CocycleData {
    /// Bilinear exponent matrix, entries 0/1.
    b: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
}

impl CocycleData {
    /// Upper-triangular convention: B_ij = G_ij mod 2 for i < j, the diagonal
    /// is G_ii / 2 mod 2, and nothing below.
    pub fn new(lattice: &Lattice) -> Self {
        let gram = lattice.gram_i64();
        let n = gram.len();
        let mut b = vec![vec![0i64; n]; n];
        for i in 0..n {
            b[i][i] = (gram[i][i] / 2).rem_euclid(2);
            for j in i + 1..n {
                b[i][j] = gram[i][j].rem_euclid(2);
            }
        }
        CocycleData { b, gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn b_matrix(&self) -> &[Vec<i64>] {
        &self.b
    }

    pub fn gram_pairing(&self, a: &[i64], c: &[i64]) -> i64 {
        pair(&self.gram, a, c)
    }

    pub fn bilinear_exponent(&self, a: &[i64], c: &[i64]) -> i64 {
        pair(&self.b, a, c)
    }

    /// epsilon(a, c) = (-1)^{a^T B c}, as +1 or -1.
    pub fn epsilon(&self, a: &[i64], c: &[i64]) -> i32 {
        if self.bilinear_exponent(a, c).rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    }

    /// epsilon(a, c) * epsilon(c, a); must equal (-1)^{<a, c>}.
    pub fn commutator(&self, a: &[i64], c: &[i64]) -> i32 {
        self.epsilon(a, c) * self.epsilon(c, a)
    }

    /// eta(a, c) = epsilon(a, c) * i^{<a, c>}, valued in {1, i, -1, -i},
    /// bimultiplicative in both slots.
    pub fn eta(&self, a: &[i64], c: &[i64]) -> Complex64 {
        let quarter = fourth_root(self.gram_pairing(a, c));
        quarter * self.epsilon(a, c) as f64
    }

    /// Copy with one exponent bit flipped; breaks the commutator relation and
    /// serves as the negative control in the identity checks.
    pub fn with_flipped_bit(&self, i: usize, j: usize) -> Self {
        let mut c = self.clone();
        c.b[i][j] = 1 - c.b[i][j];
        c
    }
}

fn pair(m: &[Vec<i64>], a: &[i64], c: &[i64]) -> i64 {
    assert_eq!(a.len(), m.len());
    assert_eq!(c.len(), m.len());
    let mut acc = 0i64;
    for (i, ai) in a.iter().enumerate() {
        if *ai == 0 {
            continue;
        }
        let row: i64 = m[i].iter().zip(c).map(|(x, y)| x * y).sum();
        acc += ai * row;
    }
    acc
}

/// i^k, exactly.
pub fn fourth_root(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Coefficient of the shifted delta when the ladder operator for `a` acts on
/// the basis vector at site `g`: delta_g -> coeff * delta_{g+a}. The phase
/// function is a parameter so corrupted phases can be tested too.
pub fn klein_coefficient<F>(eta: &F, a: &[i64], g: &[i64]) -> Complex64
where
    F: Fn(&[i64], &[i64]) -> Complex64,
{
    let arg: Vec<i64> = g.iter().zip(a).map(|(x, y)| -x - y).collect();
    eta(&arg, a)
}

/// Worst-case composition defect of the ladder operators over a coordinate
/// window: compare op_a(op_b(delta_g)) against eta(a, b) * op_{a+b}(delta_g)
/// coefficient-wise. The identity is algebraic for any phase with bilinear
/// exponent, so this should be zero to machine precision; a nonzero value
/// flags a phase whose exponent fails to be bilinear.
pub fn klein_composition_defect<F>(eta: &F, rank: usize, a: &[i64], b: &[i64], window: i64) -> f64
where
    F: Fn(&[i64], &[i64]) -> Complex64,
{
    let mut worst: f64 = 0.0;
    let mut g = vec![-window; rank];
    loop {
        let gb: Vec<i64> = g.iter().zip(b).map(|(x, y)| x + y).collect();
        let lhs = klein_coefficient(eta, b, &g) * klein_coefficient(eta, a, &gb);
        let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        let rhs = eta(a, b) * klein_coefficient(eta, &ab, &g);
        worst = worst.max((lhs - rhs).norm());
        // Advance the window counter.
        let mut k = 0;
        loop {
            if k == rank {
                return worst;
            }
            g[k] += 1;
            if g[k] <= window {
                break;
            }
            g[k] = -window;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dynkin(l: &str) -> Lattice {
        Lattice::dynkin(l).unwrap()
    }

    fn basis(n: usize) -> Vec<Vec<i64>> {
        (0..n)
            .map(|i| {
                let mut v = vec![0i64; n];
                v[i] = 1;
                v
            })
            .collect()
    }

    #[test]
    fn a2_exponent_matrix() {
        let data = CocycleData::new(&dynkin("A2"));
        assert_eq!(data.b_matrix(), &[vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn b_plus_bt_matches_gram_mod_two() {
        for label in ["A2", "A3", "D4", "D5", "E6", "E8"] {
            let lat = dynkin(label);
            let data = CocycleData::new(&lat);
            let g = lat.gram_i64();
            let n = g.len();
            for i in 0..n {
                for j in 0..n {
                    let sym = data.b_matrix()[i][j] + data.b_matrix()[j][i];
                    assert_eq!(sym.rem_euclid(2), g[i][j].rem_euclid(2), "{label} ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn cocycle_identity_exact() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let data = CocycleData::new(&dynkin("D4"));
        for _ in 0..200 {
            let v = |rng: &mut rand_chacha::ChaCha8Rng| {
                (0..4).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>()
            };
            let (a, b, c) = (v(&mut rng), v(&mut rng), v(&mut rng));
            let ab: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let bc: Vec<i64> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            // epsilon(a,b) epsilon(a+b,c) = epsilon(b,c) epsilon(a,b+c)
            assert_eq!(
                data.epsilon(&a, &b) * data.epsilon(&ab, &c),
                data.epsilon(&b, &c) * data.epsilon(&a, &bc)
            );
        }
    }

    #[test]
    fn commutator_matches_gram_sign_on_roots() {
        for label in ["A2", "D4"] {
            let lat = dynkin(label);
            let data = CocycleData::new(&lat);
            let roots = crate::roots::roots(&lat);
            for a in &roots {
                for b in &roots {
                    let expect = if data.gram_pairing(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
                    assert_eq!(data.commutator(a, b), expect, "{label} {a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn flipped_bit_breaks_commutator() {
        let lat = dynkin("A2");
        let bad = CocycleData::new(&lat).with_flipped_bit(0, 1);
        let e = basis(2);
        let mut violated = false;
        for a in &e {
            for b in &e {
                let expect = if bad.gram_pairing(a, b).rem_euclid(2) == 0 { 1 } else { -1 };
                violated |= bad.commutator(a, b) != expect;
            }
        }
        assert!(violated, "control failed to fail");
    }

    #[test]
    fn eta_is_fourth_root_and_bimultiplicative() {
        let data = CocycleData::new(&dynkin("A2"));
        let vs: Vec<Vec<i64>> =
            vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![-1, 2], vec![2, -1]];
        for a in &vs {
            for b in &vs {
                let z = data.eta(a, b);
                assert!((z.norm() - 1.0).abs() < 1e-15);
                assert!(
                    (z.re.abs() - 1.0).abs() < 1e-15 && z.im == 0.0
                        || (z.im.abs() - 1.0).abs() < 1e-15 && z.re == 0.0
                );
                for c in &vs {
                    let ab: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                    let lhs = data.eta(&ab, c);
                    let rhs = data.eta(a, c) * data.eta(b, c);
                    assert!((lhs - rhs).norm() < 1e-14);
                    let bc: Vec<i64> = b.iter().zip(c).map(|(x, y)| x + y).collect();
                    let lhs = data.eta(a, &bc);
                    let rhs = data.eta(a, b) * data.eta(a, c);
                    assert!((lhs - rhs).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn eta_commutator_is_gram_sign() {
        let lat = dynkin("D4");
        let data = CocycleData::new(&lat);
        for a in crate::roots::roots(&lat).iter().take(12) {
            for b in crate::roots::roots(&lat).iter().take(12) {
                let lhs = data.eta(a, b) * data.eta(b, a).conj();
                let rhs = fourth_root(2 * data.gram_pairing(a, b));
                assert!((lhs - rhs).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn klein_ladder_composes() {
        let lat = dynkin("A2");
        let data = CocycleData::new(&lat);
        let eta = |a: &[i64], b: &[i64]| data.eta(a, b);
        let gens = basis(2);
        for a in gens.iter().flat_map(|g| {
            [g.clone(), g.iter().map(|x| -x).collect::<Vec<_>>()]
        }) {
            for b in gens.iter().flat_map(|g| {
                [g.clone(), g.iter().map(|x| -x).collect::<Vec<_>>()]
            }) {
                assert_eq!(klein_composition_defect(&eta, 2, &a, &b, 2), 0.0);
            }
        }
        // A flipped exponent bit is still bilinear, so composition holds for
        // the corrupted cocycle too; only the Gram-commutator check sees it.
        let bad = CocycleData::new(&lat).with_flipped_bit(0, 1);
        let eta_bad = |a: &[i64], b: &[i64]| bad.eta(a, b);
        assert_eq!(klein_composition_defect(&eta_bad, 2, &gens[0], &gens[1], 2), 0.0);
    }

    #[test]
    fn klein_defect_detects_nonbilinear_phase() {
        let lat = dynkin("A2");
        let data = CocycleData::new(&lat);
        // Quadratic-in-first-slot corruption: exponent a_0^2 * b_0.
        let eta_bad =
            |a: &[i64], b: &[i64]| data.eta(a, b) * fourth_root(a[0] * a[0] * b[0]);
        let e1 = vec![1i64, 0];
        let worst = klein_composition_defect(&eta_bad, 2, &e1, &e1, 2);
        assert!(worst > 0.5, "control failed to fail: {worst}");
    }
}
