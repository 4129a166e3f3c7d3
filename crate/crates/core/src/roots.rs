//! Enumeration of lattice vectors of a given norm, by two independent
//! methods.
//!
//! The production route is exact Fincke-Pohst enumeration: a rational
//! quadratic completion of the Gram form prunes the search tree, with float
//! square roots used only to propose candidate windows that are then checked
//! exactly. The cross-check route ignores the form structure entirely and
//! scans a coordinate box whose per-axis bounds come from Cauchy-Schwarz
//! against the dual basis. The two must agree vector for vector; tests and
//! the verification runner keep both alive on purpose.

use crate::exact::{Mat, Rat};
use crate::lattice::Lattice;
use num_traits::{Signed, ToPrimitive, Zero};

/// All integer vectors x (in the lattice basis) with x^T G x equal to `norm`,
/// sorted lexicographically. `norm` must be positive.
pub fn short_vectors(lattice: &Lattice, norm: i64) -> Vec<Vec<i64>> {
    assert!(norm > 0, "norm target must be positive");
    let n = lattice.rank();
    let (d, u) = quadratic_completion(&lattice.gram().to_rat());
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    descend(&d, &u, n, Rat::from_integer(norm.into()), &mut x, &mut out);
    out.sort();
    out
}

/// Vectors of norm 2.
pub fn roots(lattice: &Lattice) -> Vec<Vec<i64>> {
    short_vectors(lattice, 2)
}

/// Quadratic completion G -> sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2 with
/// exact rational coefficients; d_i > 0 for positive-definite input.
fn quadratic_completion(gram: &Mat<Rat>) -> (Vec<Rat>, Mat<Rat>) {
    let n = gram.rows();
    let mut q = gram.clone();
    for i in 0..n {
        for j in i + 1..n {
            let v = q[(i, j)].clone() / q[(i, i)].clone();
            q[(i, j)] = v;
        }
        for k in i + 1..n {
            for l in k..n {
                let d = q[(i, k)].clone() * q[(i, l)].clone() * q[(i, i)].clone();
                q[(k, l)] = q[(k, l)].clone() - d;
            }
        }
    }
    let d = (0..n).map(|i| q[(i, i)].clone()).collect();
    (d, q)
}

/// Assign x_{level-1} and recurse. `budget` is what remains of the norm
/// target after the already-fixed outer coordinates.
fn descend(
    d: &[Rat],
    u: &Mat<Rat>,
    level: usize,
    budget: Rat,
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    let i = level - 1;
    // Offset U_i = sum_{j>i} u_ij x_j from the fixed coordinates.
    let mut offset = Rat::zero();
    for j in i + 1..x.len() {
        if x[j] != 0 {
            offset = offset + u[(i, j)].clone() * Rat::from_integer(x[j].into());
        }
    }
    // |x_i + U_i| <= sqrt(budget / d_i); the float window gets a one-unit
    // slack on each side and every candidate is re-checked exactly.
    let ratio = (budget.clone() / d[i].clone()).to_f64().expect("small rational");
    let radius = ratio.max(0.0).sqrt();
    let off = offset.to_f64().expect("small rational");
    let lo = (-radius - off).floor() as i64 - 1;
    let hi = (radius - off).ceil() as i64 + 1;
    for cand in lo..=hi {
        let shifted = Rat::from_integer(cand.into()) + offset.clone();
        let used = d[i].clone() * shifted.clone() * shifted;
        if used > budget {
            continue;
        }
        let rest = budget.clone() - used;
        x[i] = cand;
        if i == 0 {
            if rest.is_zero() {
                out.push(x.to_vec());
            }
        } else {
            descend(d, u, i, rest, x, out);
        }
    }
    x[i] = 0;
}

/// Independent oracle: exhaustive scan of the coordinate box
/// |x_i| <= floor(sqrt(norm * (G^{-1})_ii)).
///
/// The bound is sound: writing x_i as the pairing of x with the i-th dual
/// basis vector, Cauchy-Schwarz gives |x_i|^2 <= norm * (G^{-1})_ii. Runtime
/// is exponential in rank, so this stays a low-rank cross-check.
pub fn box_scan_vectors(lattice: &Lattice, norm: i64) -> Vec<Vec<i64>> {
    assert!(norm > 0);
    let n = lattice.rank();
    let inv = lattice.gram_inverse();
    let bounds: Vec<i64> = (0..n)
        .map(|i| floor_sqrt_rat(&(Rat::from_integer(norm.into()) * inv[(i, i)].clone())))
        .collect();
    let gram = lattice.gram_i64();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    // cross[k] = sum_{j<k} G_kj x_j, maintained incrementally.
    let mut cross = vec![0i64; n];
    box_descend(&gram, &bounds, norm, 0, 0, &mut x, &mut cross, &mut out);
    out.sort();
    out
}

#[allow(clippy::too_many_arguments)]
fn box_descend(
    gram: &[Vec<i64>],
    bounds: &[i64],
    norm: i64,
    k: usize,
    partial: i64,
    x: &mut [i64],
    cross: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    if k == x.len() {
        if partial == norm && x.iter().any(|&v| v != 0) {
            out.push(x.to_vec());
        }
        return;
    }
    for cand in -bounds[k]..=bounds[k] {
        x[k] = cand;
        let contrib = gram[k][k] * cand * cand + 2 * cand * cross[k];
        for j in k + 1..x.len() {
            cross[j] += gram[j][k] * cand;
        }
        box_descend(gram, bounds, norm, k + 1, partial + contrib, x, cross, out);
        for j in k + 1..x.len() {
            cross[j] -= gram[j][k] * cand;
        }
    }
    x[k] = 0;
}

/// Largest b >= 0 with b^2 <= r.
fn floor_sqrt_rat(r: &Rat) -> i64 {
    if r.is_negative() {
        return -1;
    }
    let approx = r.to_f64().expect("small rational").sqrt();
    let mut b = approx.floor() as i64;
    while Rat::from_integer(((b + 1) * (b + 1)).into()) <= *r {
        b += 1;
    }
    while b > 0 && Rat::from_integer((b * b).into()) > *r {
        b -= 1;
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dynkin(l: &str) -> Lattice {
        Lattice::dynkin(l).unwrap()
    }

    #[test]
    fn a2_roots_explicit() {
        let r = roots(&dynkin("A2"));
        let expect: Vec<Vec<i64>> = vec![
            vec![-1, -1],
            vec![-1, 0],
            vec![0, -1],
            vec![0, 1],
            vec![1, 0],
            vec![1, 1],
        ];
        assert_eq!(r, expect);
    }

    #[test]
    fn counts_match_root_system_sizes() {
        assert_eq!(roots(&dynkin("A1")).len(), 2);
        assert_eq!(roots(&dynkin("A2")).len(), 6);
        assert_eq!(roots(&dynkin("A3")).len(), 12);
        assert_eq!(roots(&dynkin("D4")).len(), 24);
    }

    #[test]
    fn e8_has_240_roots() {
        let r = roots(&dynkin("E8"));
        assert_eq!(r.len(), 240);
        let lat = dynkin("E8");
        let mut sorted = r.clone();
        sorted.dedup();
        assert_eq!(sorted.len(), 240, "duplicates in enumeration");
        for v in &r {
            let vi: Vec<_> = v.iter().map(|&x| crate::exact::Int::from(x)).collect();
            assert_eq!(lat.norm(&vi), crate::exact::Int::from(2));
            let neg: Vec<i64> = v.iter().map(|&x| -x).collect();
            assert!(r.binary_search(&neg).is_ok(), "not closed under negation");
        }
    }

    #[test]
    fn two_routes_agree() {
        for label in ["A1", "A2", "A3", "D4", "D5"] {
            let lat = dynkin(label);
            assert_eq!(roots(&lat), box_scan_vectors(&lat, 2), "{label}");
        }
    }

    #[test]
    fn two_routes_agree_higher_norm() {
        // Norm-4 vectors exercise the non-root branch of both enumerators.
        for label in ["A3", "D4", "D5"] {
            let lat = dynkin(label);
            let a = short_vectors(&lat, 4);
            let b = box_scan_vectors(&lat, 4);
            assert_eq!(a, b, "{label}");
            assert!(!a.is_empty());
        }
        // The hexagonal lattice skips norm 4 entirely; both routes must agree
        // on the empty set too.
        let a2 = dynkin("A2");
        assert!(short_vectors(&a2, 4).is_empty());
        assert!(box_scan_vectors(&a2, 4).is_empty());
    }

    #[test]
    fn no_vectors_of_odd_norm() {
        // Even lattice: x^T G x is always even.
        for label in ["A2", "D4"] {
            let lat = dynkin(label);
            assert!(short_vectors(&lat, 3).is_empty(), "{label}");
            assert!(box_scan_vectors(&lat, 1).is_empty(), "{label}");
        }
    }

    #[test]
    fn floor_sqrt_exactness() {
        for (num, den, expect) in [(4, 1, 2), (3, 1, 1), (8, 1, 2), (9, 4, 1), (25, 4, 2)] {
            let r = Rat::new(num.into(), den.into());
            assert_eq!(floor_sqrt_rat(&r), expect, "{num}/{den}");
        }
    }
}
