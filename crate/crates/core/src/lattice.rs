//! Even positive-definite integral lattices, their discriminant groups, and
//! finite-index sublattice extensions.
//!
//! Everything here is exact: Gram data lives in `BigInt`, dual vectors in
//! `BigRational`, and quotient groups come out of Smith normal form. The
//! floating-point world only enters at the very end, when a conformal spin
//! exponent is turned into a unit complex number.

use crate::exact::{Int, Mat, Rat};
use crate::snf::{smith_normal_form, Snf};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be square")]
    NotSquare,
    #[error("gram matrix must be symmetric")]
    NotSymmetric,
    #[error("diagonal entry at index {0} is odd; the lattice must be even")]
    OddDiagonal(usize),
    #[error("gram matrix is not positive definite (leading minor {0} is not positive)")]
    NotPositiveDefinite(usize),
    #[error("unknown Dynkin label {0:?} (expected An with n>=1, Dn with n>=4, or E6/E7/E8)")]
    BadDynkin(String),
    #[error("embedding matrix must be square with the ambient rank")]
    EmbeddingShape,
    #[error("embedding matrix is singular; the sublattice must have finite index")]
    SingularEmbedding,
    #[error("vector does not pair integrally with the lattice, so it is not in the dual")]
    NotInDual,
}

/// Even positive-definite lattice given by its Gram matrix in a fixed basis.
#[derive(Clone, Debug)]
pub struct Lattice {
    gram: Mat<Int>,
}

impl Lattice {
    pub fn new(gram: Mat<Int>) -> Result<Self, LatticeError> {
        if !gram.is_square() {
            return Err(LatticeError::NotSquare);
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        for i in 0..gram.rows() {
            if gram[(i, i)].is_odd() {
                return Err(LatticeError::OddDiagonal(i));
            }
        }
        // Exact Sylvester criterion; Bareiss keeps the minors in Z.
        for (k, minor) in gram.leading_minors().iter().enumerate() {
            if !minor.is_positive() {
                return Err(LatticeError::NotPositiveDefinite(k + 1));
            }
        }
        Ok(Lattice { gram })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self, LatticeError> {
        Lattice::new(Mat::from_i64_rows(rows))
    }

    /// Root lattice of an ADE Dynkin diagram, e.g. "A2", "D4", "E8".
    ///
    /// Node numbering: A_n is the path 1-2-...-n. D_n attaches the two short
    /// arms 1 and 2 to node 3 and continues the path 3-4-...-n. E_n is the
    /// path 1-2-...-(n-1) with node n attached to node 3.
    pub fn dynkin(label: &str) -> Result<Self, LatticeError> {
        let err = || LatticeError::BadDynkin(label.to_string());
        let label = label.trim();
        let mut chars = label.chars();
        let family = chars.next().ok_or_else(err)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| err())?;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        match family {
            'A' if n >= 1 => {
                edges.extend((1..n).map(|i| (i, i + 1)));
            }
            'D' if n >= 4 => {
                edges.push((1, 3));
                edges.push((2, 3));
                edges.extend((3..n).map(|i| (i, i + 1)));
            }
            'E' if (6..=8).contains(&n) => {
                edges.extend((1..n - 1).map(|i| (i, i + 1)));
                edges.push((3, n));
            }
            _ => return Err(err()),
        }
        let mut gram = Mat::<Int>::zeros(n, n);
        for i in 0..n {
            gram[(i, i)] = Int::from(2);
        }
        for (a, b) in edges {
            gram[(a - 1, b - 1)] = Int::from(-1);
            gram[(b - 1, a - 1)] = Int::from(-1);
        }
        Lattice::new(gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Mat<Int> {
        &self.gram
    }

    pub fn det(&self) -> Int {
        self.gram.det()
    }

    /// Gram matrix as i64 for the inner-loop enumeration code.
    pub fn gram_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rank())
            .map(|r| {
                self.gram
                    .row(r)
                    .iter()
                    .map(|x| i64::try_from(x).expect("gram entry exceeds i64"))
                    .collect()
            })
            .collect()
    }

    pub fn inner(&self, x: &[Int], y: &[Int]) -> Int {
        let gy = self.gram.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self, x: &[Int]) -> Int {
        self.inner(x, x)
    }

    pub fn inner_rat(&self, x: &[Rat], y: &[Rat]) -> Rat {
        let g = self.gram.to_rat();
        let gy = g.mul_vec(y);
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    /// Exact inverse Gram matrix; its columns express the dual basis.
    pub fn gram_inverse(&self) -> Mat<Rat> {
        self.gram.to_rat().inverse().expect("positive definite, hence invertible")
    }

    /// Order of the discriminant group dual/lattice; equals det(gram).
    pub fn discriminant_order(&self) -> Int {
        self.det()
    }

    pub fn discriminant(&self) -> DiscriminantGroup {
        DiscriminantGroup::new(self)
    }
}

/// The finite abelian group dual/lattice presented through Smith normal form
/// of the Gram matrix: U G V = diag(d). A class is stored as its canonical
/// coordinate vector c with 0 <= c_i < d_i.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    gram: Mat<Int>,
    snf: Snf<Int>,
}

impl DiscriminantGroup {
    fn new(lattice: &Lattice) -> Self {
        let snf = smith_normal_form(lattice.gram());
        DiscriminantGroup { gram: lattice.gram().clone(), snf }
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn order(&self) -> Int {
        self.snf.diag.iter().fold(Int::one(), |a, d| a * d)
    }

    /// Orders of the nontrivial cyclic factors.
    pub fn cyclic_factors(&self) -> Vec<Int> {
        self.snf.diag.iter().filter(|d| **d > Int::one()).cloned().collect()
    }

    pub fn elementary_divisors(&self) -> &[Int] {
        &self.snf.diag
    }

    /// Class of an integer vector under Z^n / (gram Z^n). Integer vectors
    /// encode dual elements through y = gram^{-1} m.
    pub fn class_of_integer(&self, m: &[Int]) -> Vec<Int> {
        assert_eq!(m.len(), self.rank());
        let um = self.snf.u.mul_vec(m);
        um.into_iter().zip(&self.snf.diag).map(|(x, d)| x.mod_floor(d)).collect()
    }

    /// Class of a dual vector given by rational coordinates in the lattice
    /// basis. Fails when gram*y is not integral, i.e. y is not in the dual.
    pub fn class_of_dual(&self, y: &[Rat]) -> Result<Vec<Int>, LatticeError> {
        assert_eq!(y.len(), self.rank());
        let gy = self.gram.to_rat().mul_vec(y);
        let m: Option<Vec<Int>> = gy
            .iter()
            .map(|q| if q.denom().is_one() { Some(q.numer().clone()) } else { None })
            .collect();
        Ok(self.class_of_integer(&m.ok_or(LatticeError::NotInDual)?))
    }

    /// Canonical dual-vector representative of a class, in lattice-basis
    /// rational coordinates: rep(c) = V diag(1/d) c.
    pub fn rep(&self, c: &[Int]) -> Vec<Rat> {
        assert_eq!(c.len(), self.rank());
        let scaled: Vec<Rat> =
            c.iter().zip(&self.snf.diag).map(|(ci, di)| Rat::new(ci.clone(), di.clone())).collect();
        self.snf.v.to_rat().mul_vec(&scaled)
    }

    pub fn zero_class(&self) -> Vec<Int> {
        vec![Int::zero(); self.rank()]
    }

    pub fn is_zero_class(&self, c: &[Int]) -> bool {
        c.iter().all(Zero::is_zero)
    }

    /// Group law (sector fusion): componentwise addition mod d_i.
    pub fn fuse(&self, a: &[Int], b: &[Int]) -> Vec<Int> {
        a.iter()
            .zip(b)
            .zip(&self.snf.diag)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect()
    }

    pub fn neg(&self, a: &[Int]) -> Vec<Int> {
        a.iter().zip(&self.snf.diag).map(|(x, d)| (-x).mod_floor(d)).collect()
    }

    /// Order of the class in the group: lcm_i of d_i / gcd(c_i, d_i).
    pub fn sector_order(&self, c: &[Int]) -> Int {
        c.iter().zip(&self.snf.diag).fold(Int::one(), |acc, (ci, di)| {
            let per = di / ci.gcd(di);
            acc.lcm(&per)
        })
    }

    /// Conformal spin exponent <rep, rep> reduced mod 2, in [0, 2). The value
    /// is independent of the representative because shifting by a lattice
    /// vector z changes <y,y> by <z,z> + 2<z,y> which is an even integer.
    pub fn spin_exponent(&self, c: &[Int]) -> Rat {
        let y = self.rep(c);
        let g = self.gram.to_rat();
        let gy = g.mul_vec(&y);
        let e: Rat = y.iter().zip(&gy).map(|(a, b)| a * b).sum();
        let two = Rat::from_integer(Int::from(2));
        let q = (e.clone() / two.clone()).floor();
        e - two * q
    }

    /// e^{i pi * spin_exponent}, the statistics phase of the sector.
    pub fn spin_value(&self, c: &[Int]) -> Complex64 {
        let e = self.spin_exponent(c).to_f64().expect("small rational");
        let theta = std::f64::consts::PI * e;
        Complex64::new(theta.cos(), theta.sin())
    }

    /// All classes in lexicographic coordinate order. Only sensible when the
    /// order is small; callers should check `order()` first.
    pub fn enumerate(&self) -> Vec<Vec<Int>> {
        mixed_radix(&self.snf.diag)
    }
}

/// All vectors c with 0 <= c_i < radix_i, lexicographic.
pub fn mixed_radix(radix: &[Int]) -> Vec<Vec<Int>> {
    let mut out = vec![vec![Int::zero(); radix.len()]];
    for (i, d) in radix.iter().enumerate() {
        let mut next = Vec::new();
        for prefix in &out {
            let mut v = Int::zero();
            while &v < d {
                let mut row = prefix.clone();
                row[i] = v.clone();
                next.push(row);
                v += Int::one();
            }
        }
        out = next;
    }
    out
}

/// A finite-index sublattice L of an ambient even lattice Q, described by an
/// integer matrix whose columns are the L-basis vectors in Q-coordinates.
#[derive(Clone, Debug)]
pub struct SublatticeExtension {
    ambient: Lattice,
    embedding: Mat<Int>,
    sub: Lattice,
    quotient: Snf<Int>,
    index: Int,
}

impl SublatticeExtension {
    pub fn new(ambient: Lattice, embedding: Mat<Int>) -> Result<Self, LatticeError> {
        let n = ambient.rank();
        if embedding.rows() != n || embedding.cols() != n {
            return Err(LatticeError::EmbeddingShape);
        }
        let index = embedding.det().abs();
        if index.is_zero() {
            return Err(LatticeError::SingularEmbedding);
        }
        // Norms of integer vectors in an even lattice are even, so the
        // sublattice Gram passes evenness automatically.
        let gram_sub = embedding.transpose().mul(ambient.gram()).mul(&embedding);
        let sub = Lattice::new(gram_sub)?;
        let quotient = smith_normal_form(&embedding);
        Ok(SublatticeExtension { ambient, embedding, sub, quotient, index })
    }

    pub fn ambient(&self) -> &Lattice {
        &self.ambient
    }

    pub fn sublattice(&self) -> &Lattice {
        &self.sub
    }

    pub fn embedding(&self) -> &Mat<Int> {
        &self.embedding
    }

    /// [Q : L], the order of Q/L.
    pub fn index(&self) -> &Int {
        &self.index
    }

    /// Orders of the nontrivial cyclic factors of Q/L.
    pub fn quotient_factors(&self) -> Vec<Int> {
        self.quotient.diag.iter().filter(|d| **d > Int::one()).cloned().collect()
    }

    /// One integer representative (in Q-coordinates) per coset of Q/L.
    pub fn coset_reps(&self) -> Vec<Vec<Int>> {
        let u_inv = self
            .quotient
            .u
            .to_rat()
            .inverse()
            .expect("unimodular")
            .map(|q| q.numer().clone());
        mixed_radix(&self.quotient.diag)
            .into_iter()
            .map(|c| u_inv.mul_vec(&c))
            .collect()
    }

    /// Class of a Q-vector k inside the discriminant group of L. The dual
    /// pairing vector is gram_L * (B^{-1} k) = B^T gram_Q k, which is always
    /// integral, so no rational arithmetic is needed.
    pub fn class_in_sub_discriminant(&self, disc: &DiscriminantGroup, k: &[Int]) -> Vec<Int> {
        let gk = self.ambient.gram().mul_vec(k);
        let m = self.embedding.transpose().mul_vec(&gk);
        disc.class_of_integer(&m)
    }

    /// Norm of a Q-vector, which is also the norm of its image in L*.
    pub fn ambient_norm(&self, k: &[Int]) -> Int {
        self.ambient.norm(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dynkin(l: &str) -> Lattice {
        Lattice::dynkin(l).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn factors_u64(f: &[Int]) -> Vec<u64> {
        f.iter().map(|d| u64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn constructor_rejects_bad_gram() {
        assert_eq!(
            Lattice::from_i64_rows(&[vec![2, -1], vec![0, 2]]).unwrap_err(),
            LatticeError::NotSymmetric
        );
        assert_eq!(
            Lattice::from_i64_rows(&[vec![1, 0], vec![0, 2]]).unwrap_err(),
            LatticeError::OddDiagonal(0)
        );
        assert_eq!(
            Lattice::from_i64_rows(&[vec![2, -3], vec![-3, 2]]).unwrap_err(),
            LatticeError::NotPositiveDefinite(2)
        );
        assert_eq!(
            Lattice::from_i64_rows(&[vec![-2]]).unwrap_err(),
            LatticeError::NotPositiveDefinite(1)
        );
    }

    #[test]
    fn d4_gram_row_convention() {
        let d4 = dynkin("D4");
        let row: Vec<i64> = d4.gram().row(2).iter().map(|x| i64::try_from(x).unwrap()).collect();
        assert_eq!(row, vec![-1, -1, 2, -1]);
    }

    #[test]
    fn discriminant_orders_of_ade() {
        // A_n -> n+1, D_n -> 4, E6 -> 3, E7 -> 2, E8 -> 1.
        for (label, order) in [
            ("A1", 2u64),
            ("A2", 3),
            ("A7", 8),
            ("D4", 4),
            ("D5", 4),
            ("D8", 4),
            ("E6", 3),
            ("E7", 2),
            ("E8", 1),
        ] {
            let l = dynkin(label);
            assert_eq!(u64::try_from(&l.discriminant_order()).unwrap(), order, "{label}");
            assert_eq!(l.discriminant().order(), l.discriminant_order(), "{label}");
        }
    }

    #[test]
    fn discriminant_factor_structure() {
        assert_eq!(factors_u64(&dynkin("A3").discriminant().cyclic_factors()), vec![4]);
        assert_eq!(factors_u64(&dynkin("D4").discriminant().cyclic_factors()), vec![2, 2]);
        assert_eq!(factors_u64(&dynkin("D6").discriminant().cyclic_factors()), vec![2, 2]);
        assert_eq!(factors_u64(&dynkin("D5").discriminant().cyclic_factors()), vec![4]);
        assert_eq!(factors_u64(&dynkin("E6").discriminant().cyclic_factors()), vec![3]);
        assert!(dynkin("E8").discriminant().cyclic_factors().is_empty());
    }

    #[test]
    fn bad_dynkin_labels() {
        for label in ["B2", "D3", "E9", "A0", "", "Ax"] {
            assert!(matches!(Lattice::dynkin(label), Err(LatticeError::BadDynkin(_))), "{label}");
        }
    }

    #[test]
    fn a2_sector_data() {
        let disc = dynkin("A2").discriminant();
        let classes = disc.enumerate();
        assert_eq!(classes.len(), 3);
        let mut spins = Vec::new();
        let mut orders = Vec::new();
        for c in &classes {
            orders.push(u64::try_from(&disc.sector_order(c)).unwrap());
            spins.push(disc.spin_value(c));
        }
        orders.sort();
        assert_eq!(orders, vec![1, 3, 3]);
        // Nontrivial A2 sectors have spin exponent 2/3: phase e^{2 pi i / 3}.
        let expect = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        let nontrivial: Vec<_> =
            classes.iter().filter(|c| !disc.is_zero_class(c)).collect();
        for c in nontrivial {
            assert!((disc.spin_value(c) - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn d4_sector_spins() {
        let disc = dynkin("D4").discriminant();
        let classes = disc.enumerate();
        assert_eq!(classes.len(), 4);
        for c in &classes {
            let s = disc.spin_value(c);
            if disc.is_zero_class(c) {
                assert!((s - Complex64::new(1.0, 0.0)).norm() < 1e-12);
            } else {
                // Vector and both chiral sectors of D4 all have spin -1.
                assert!((s - Complex64::new(-1.0, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_independent_of_representative() {
        let disc = dynkin("A3").discriminant();
        for c in disc.enumerate() {
            let base = disc.spin_exponent(&c);
            let y = disc.rep(&c);
            // Shift the representative by assorted lattice vectors.
            for z in [ints(&[1, 0, 0]), ints(&[0, -2, 1]), ints(&[3, 1, -1])] {
                let shifted: Vec<Rat> = y
                    .iter()
                    .zip(&z)
                    .map(|(a, b)| a + Rat::from_integer(b.clone()))
                    .collect();
                let lat = dynkin("A3");
                let e = lat.inner_rat(&shifted, &shifted);
                let two = Rat::from_integer(Int::from(2));
                let reduced = e.clone() - two.clone() * (e / two).floor();
                assert_eq!(reduced, base);
            }
        }
    }

    #[test]
    fn fuse_group_laws() {
        let disc = dynkin("A3").discriminant();
        let classes = disc.enumerate();
        for a in &classes {
            assert_eq!(disc.fuse(a, &disc.zero_class()), *a);
            assert!(disc.is_zero_class(&disc.fuse(a, &disc.neg(a))));
            for b in &classes {
                assert_eq!(disc.fuse(a, b), disc.fuse(b, a));
                for c in &classes {
                    assert_eq!(
                        disc.fuse(&disc.fuse(a, b), c),
                        disc.fuse(a, &disc.fuse(b, c))
                    );
                }
            }
        }
    }

    #[test]
    fn class_of_dual_roundtrip() {
        let disc = dynkin("A2").discriminant();
        for c in disc.enumerate() {
            let y = disc.rep(&c);
            assert_eq!(disc.class_of_dual(&y).unwrap(), c);
        }
        // A vector outside the dual is rejected.
        let bad = vec![Rat::new(Int::from(1), Int::from(5)), Rat::zero()];
        assert_eq!(disc.class_of_dual(&bad).unwrap_err(), LatticeError::NotInDual);
    }

    #[test]
    fn rank_one_index_two_extension() {
        // L = 2Z inside Q = Z with form 2x^2; gram_L = [[8]], Q/L = Z2.
        let q = Lattice::from_i64_rows(&[vec![2]]).unwrap();
        let ext = SublatticeExtension::new(q, Mat::from_i64_rows(&[vec![2]])).unwrap();
        assert_eq!(u64::try_from(ext.index()).unwrap(), 2);
        assert_eq!(
            u64::try_from(&ext.sublattice().discriminant_order()).unwrap(),
            8
        );
        let disc = ext.sublattice().discriminant();
        let reps = ext.coset_reps();
        assert_eq!(reps.len(), 2);
        let mut classes: Vec<_> =
            reps.iter().map(|k| ext.class_in_sub_discriminant(&disc, k)).collect();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), 2, "cosets embed injectively");
        for k in &reps {
            // Even ambient norms make every coset class isotropic.
            assert!(ext.ambient_norm(k).is_even());
            let c = ext.class_in_sub_discriminant(&disc, k);
            let e = disc.spin_exponent(&c);
            assert!(e.is_zero(), "nontrivial spin {e} on glue class");
        }
    }

    #[test]
    fn trivial_extension() {
        let q = dynkin("D4");
        let ext = SublatticeExtension::new(q, Mat::<Int>::identity(4)).unwrap();
        assert!(ext.index().is_one());
        assert!(ext.quotient_factors().is_empty());
        assert_eq!(ext.coset_reps().len(), 1);
    }

    /// Watches the index-2 chain D8 in E8 through Euclidean coordinates:
    /// both bases are written in R^8, the change of basis is solved exactly,
    /// and the glue class is checked to be isotropic in the D8 discriminant.
    #[test]
    fn d8_inside_e8() {
        let half = || Rat::new(Int::from(1), Int::from(2));
        let one = || Rat::from_integer(Int::one());
        let zero = || Rat::zero();

        // Our E8 node order: path 1..7, node 8 attached to node 3. Realize it
        // in R^8 as alpha_i = e_i - e_{i+1} for i = 1..7 plus the half-integer
        // root s below; s pairs to -1 with alpha_3, to 0 with the rest, and
        // has norm 2, so the Gram comes out exactly as dynkin("E8").
        let mut e8_cols: Vec<Vec<Rat>> = Vec::new();
        for i in 0..7 {
            let mut v = vec![zero(); 8];
            v[i] = one();
            v[i + 1] = -one();
            e8_cols.push(v);
        }
        let s: Vec<Rat> =
            vec![-half(), -half(), -half(), half(), half(), half(), half(), half()];
        e8_cols.push(s);

        let e8_mat = col_mat(&e8_cols);
        let gram = euclid_gram(&e8_mat);
        assert_eq!(gram, dynkin("E8").gram().to_rat(), "Euclidean basis drifted");

        // D8 sublattice: all integer vectors with even coordinate sum.
        let mut d8_cols: Vec<Vec<Rat>> = Vec::new();
        for i in 0..7 {
            let mut v = vec![zero(); 8];
            v[i] = one();
            v[i + 1] = -one();
            d8_cols.push(v);
        }
        let mut v = vec![zero(); 8];
        v[6] = one();
        v[7] = one();
        d8_cols.push(v);
        let d8_mat = col_mat(&d8_cols);

        // Change of basis: columns of B express D8 basis in E8 coordinates.
        let b_rat = e8_mat.inverse().unwrap().mul(&d8_mat);
        let b: Mat<Int> = b_rat.map(|q| {
            assert!(q.denom().is_one(), "D8 basis must be integral over E8");
            q.numer().clone()
        });

        let ambient = Lattice::new(gram.map(|q| q.numer().clone())).unwrap();
        let ext = SublatticeExtension::new(ambient, b).unwrap();
        assert_eq!(u64::try_from(ext.index()).unwrap(), 2);
        assert_eq!(
            u64::try_from(&ext.sublattice().discriminant_order()).unwrap(),
            4
        );
        assert_eq!(factors_u64(&ext.sublattice().discriminant().cyclic_factors()), vec![2, 2]);

        let disc = ext.sublattice().discriminant();
        let mut classes: Vec<_> = ext
            .coset_reps()
            .iter()
            .map(|k| ext.class_in_sub_discriminant(&disc, k))
            .collect();
        classes.sort();
        classes.dedup();
        assert_eq!(classes.len(), 2);
        for k in ext.coset_reps() {
            assert!(ext.ambient_norm(&k).is_even());
            let c = ext.class_in_sub_discriminant(&disc, &k);
            assert!(disc.spin_exponent(&c).is_zero());
        }
    }

    fn col_mat(cols: &[Vec<Rat>]) -> Mat<Rat> {
        let n = cols[0].len();
        let mut m = Mat::<Rat>::zeros(n, cols.len());
        for (c, col) in cols.iter().enumerate() {
            for r in 0..n {
                m[(r, c)] = col[r].clone();
            }
        }
        m
    }

    fn euclid_gram(basis: &Mat<Rat>) -> Mat<Rat> {
        basis.transpose().mul(basis)
    }
}
