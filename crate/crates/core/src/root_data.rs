//! Realized affine root systems with reduced gradient.
//!
//! A system is built from a `(family, rank, twist)` triple. The gradient
//! system lives in exact rational coordinates with the inner product scaled
//! so that short roots have squared length 2; the affine system is the set
//! of pairs `alpha + k*c` with `k` divisible by the multiplier of `alpha`.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::geometry::*;
use crate::Error;

/// Classification family of the gradient root system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "A" | "a" => Some(Family::A),
            "B" | "b" => Some(Family::B),
            "C" | "c" => Some(Family::C),
            "D" | "d" => Some(Family::D),
            "E" | "e" => Some(Family::E),
            "F" | "f" => Some(Family::F),
            "G" | "g" => Some(Family::G),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        };
        write!(f, "{}", c)
    }
}

/// Affine origin convention: `twisted` places it at minus the highest short
/// root, `untwisted` at minus the highest root. The two coincide for
/// simply-laced systems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize, serde::Deserialize)]
pub enum Twist {
    Twisted,
    Untwisted,
}

impl Twist {
    pub fn parse(s: &str) -> Option<Twist> {
        match s {
            "twisted" => Some(Twist::Twisted),
            "untwisted" => Some(Twist::Untwisted),
            _ => None,
        }
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Twist::Twisted => write!(f, "twisted"),
            Twist::Untwisted => write!(f, "untwisted"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct RootSystemSpec {
    pub family: Family,
    pub rank: usize,
    pub twist: Twist,
}

impl RootSystemSpec {
    pub fn new(family: Family, rank: usize, twist: Twist) -> Self {
        RootSystemSpec { family, rank, twist }
    }

    pub fn admissible(&self) -> bool {
        match self.family {
            Family::A => self.rank >= 1,
            Family::B | Family::C => self.rank >= 2,
            Family::D => self.rank >= 3,
            Family::E => matches!(self.rank, 6..=8),
            Family::F => self.rank == 4,
            Family::G => self.rank == 2,
        }
    }
}

impl fmt::Display for RootSystemSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} ({})", self.family, self.rank, self.twist)
    }
}

/// One gradient root with all derived data cached.
#[derive(Debug, Clone)]
pub struct Root {
    /// Coordinates in the ambient realization space.
    pub coords: QVec,
    /// Integer coefficients over the simple basis.
    pub simple_coeffs: Vec<i64>,
    /// Squared length under the ambient form.
    pub norm: BigRational,
    /// True for the longer length class (false everywhere if simply-laced).
    pub long: bool,
    /// Level multiplier: admissible affine levels are multiples of this.
    pub multiplier: i64,
    /// Coordinates of the coroot `2a/<a,a>`.
    pub coroot_coords: QVec,
    /// Integer coordinates in the fundamental-weight basis.
    pub weight_coords: Vec<i64>,
    /// Tau-orbit index: 0 = short, 1 = long (always 0 when simply-laced).
    pub orbit: usize,
}

impl Root {
    pub fn is_positive(&self) -> bool {
        self.simple_coeffs.iter().any(|&c| c > 0)
    }

    pub fn height(&self) -> i64 {
        self.simple_coeffs.iter().sum()
    }
}

/// An affine root `alpha + k*c`, stored as a gradient index and a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineRoot {
    pub root: usize,
    pub level: i64,
}

impl AffineRoot {
    /// Validated constructor: the level must be a multiple of the gradient's
    /// multiplier for the pair to be a member of the affine system.
    pub fn new(rs: &RootSystemData, root: usize, level: i64) -> Result<AffineRoot, Error> {
        if root >= rs.roots.len() {
            return Err(Error::InvalidAffineRoot(format!("root index {} out of range", root)));
        }
        let m = rs.roots[root].multiplier;
        if level % m != 0 {
            return Err(Error::InvalidAffineRoot(format!(
                "level {} is not a multiple of the gradient multiplier {}",
                level, m
            )));
        }
        Ok(AffineRoot { root, level })
    }
}

/// Fully realized root system data.
#[derive(Debug)]
pub struct RootSystemData {
    pub spec: RootSystemSpec,
    pub rank: usize,
    /// Ambient coordinate dimension (rank, rank+1 for type A, 8 for E6/E7).
    pub dim: usize,
    /// The inner product is `form_scale` times the standard dot product.
    pub form_scale: BigRational,
    /// All roots, positives first sorted by (height, coefficients).
    pub roots: Vec<Root>,
    pub num_positive: usize,
    /// Index lookup by simple-basis coefficient vector.
    coeff_index: BTreeMap<Vec<i64>, usize>,
    /// Indices of the simple roots inside `roots` (position j-1 holds alpha_j).
    pub simple_indices: Vec<usize>,
    /// `negation[r]` is the index of `-roots[r]`.
    pub negation: Vec<usize>,
    /// `reflection_table[i][r]` is the index of `s_i(roots[r])`.
    pub reflection_table: Vec<Vec<usize>>,
    /// Cartan matrix `cartan[i][j] = <alpha_i, alpha_j^v>`.
    pub cartan: Vec<Vec<i64>>,
    /// Squared length ratio of the two length classes (1 if simply-laced).
    pub length_ratio: i64,
    pub simply_laced: bool,
    /// Index of the highest root.
    pub highest_root: usize,
    /// Index of the highest short root.
    pub highest_short_root: usize,
    /// Index of the gradient of the affine origin a_0.
    pub alpha0: usize,
    /// Fundamental weights (basis of the weight lattice P).
    pub fundamental_weights: Vec<QVec>,
    /// Dual-side fundamental coweights (basis of the lattice P-hat).
    pub fundamental_coweights: Vec<QVec>,
    /// Simple reflection action on P in the fundamental-weight basis.
    pub simple_weight_mats: Vec<IMat>,
    /// Simple reflection action on P-hat in the fundamental-coweight basis.
    pub simple_coweight_mats: Vec<IMat>,
    /// `pairing_rows[r][i] = <alpha_r, omega-hat_i>` (always integral).
    pub pairing_rows: Vec<Vec<i64>>,
    /// Affine Coxeter orders m_jk over indices 0..=n; `None` encodes infinity.
    pub affine_orders: Vec<Vec<Option<u32>>>,
    /// Strictly positive integer weights for the height order on P.
    pub height_weights: Vec<i64>,
    /// Columns are the hatted roots in the fundamental-coweight basis.
    hat_root_basis: Vec<Vec<BigRational>>,
    /// Index of the dual weight lattice over the dual root lattice.
    pub cartan_determinant: u64,
    /// Conversion matrix: coweight-basis coordinates to weight-basis
    /// coordinates, `T[j][i] = <omega-hat_i, alpha_j^v>` (rational).
    pub coweight_to_weight: Vec<Vec<BigRational>>,
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Simple-root realization: (ambient dim, form scale, simple roots).
fn realize(spec: &RootSystemSpec) -> (usize, BigRational, Vec<QVec>) {
    let n = spec.rank;
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    match spec.family {
        Family::A => {
            let dim = n + 1;
            let mut simples = Vec::new();
            for i in 0..n {
                let mut v = qvec_zero(dim);
                v[i] = one.clone();
                v[i + 1] = -one.clone();
                simples.push(v);
            }
            (dim, one, simples)
        }
        Family::B => {
            let dim = n;
            let mut simples = Vec::new();
            for i in 0..n - 1 {
                let mut v = qvec_zero(dim);
                v[i] = one.clone();
                v[i + 1] = -one.clone();
                simples.push(v);
            }
            let mut v = qvec_zero(dim);
            v[n - 1] = one.clone();
            simples.push(v);
            (dim, two, simples)
        }
        Family::C => {
            let dim = n;
            let mut simples = Vec::new();
            for i in 0..n - 1 {
                let mut v = qvec_zero(dim);
                v[i] = one.clone();
                v[i + 1] = -one.clone();
                simples.push(v);
            }
            let mut v = qvec_zero(dim);
            v[n - 1] = two.clone();
            simples.push(v);
            (dim, one, simples)
        }
        Family::D => {
            let dim = n;
            let mut simples = Vec::new();
            for i in 0..n - 1 {
                let mut v = qvec_zero(dim);
                v[i] = one.clone();
                v[i + 1] = -one.clone();
                simples.push(v);
            }
            let mut v = qvec_zero(dim);
            v[n - 2] = one.clone();
            v[n - 1] = one.clone();
            simples.push(v);
            (dim, one, simples)
        }
        Family::E => {
            let dim = 8;
            let h = half();
            let mut a1 = vec![-h.clone(); dim];
            a1[0] = h.clone();
            a1[7] = h.clone();
            let mut simples = vec![a1];
            let mut a2 = qvec_zero(dim);
            a2[0] = one.clone();
            a2[1] = one.clone();
            simples.push(a2);
            for i in 0..6 {
                // alpha_{3+i} = e_{i+2} - e_{i+1}
                let mut v = qvec_zero(dim);
                v[i + 1] = one.clone();
                v[i] = -one.clone();
                simples.push(v);
            }
            simples.truncate(n);
            (dim, one, simples)
        }
        Family::F => {
            let dim = 4;
            let h = half();
            let mut simples = Vec::new();
            let mut a1 = qvec_zero(dim);
            a1[1] = one.clone();
            a1[2] = -one.clone();
            simples.push(a1);
            let mut a2 = qvec_zero(dim);
            a2[2] = one.clone();
            a2[3] = -one.clone();
            simples.push(a2);
            let mut a3 = qvec_zero(dim);
            a3[3] = one.clone();
            simples.push(a3);
            simples.push(vec![h.clone(), -h.clone(), -h.clone(), -h]);
            (dim, two, simples)
        }
        Family::G => {
            let dim = 3;
            let a1 = qvec_from_i64(&[1, -1, 0]);
            let a2 = qvec_from_i64(&[-2, 1, 1]);
            (dim, one, vec![a1, a2])
        }
    }
}

/// Builds and fully validates a root system from its specification.
pub fn build_root_system(spec: RootSystemSpec) -> Result<RootSystemData, Error> {
    if !spec.admissible() {
        return Err(Error::InadmissibleSpec(format!(
            "family {} does not admit rank {}",
            spec.family, spec.rank
        )));
    }
    let n = spec.rank;
    let (dim, scale, simples) = realize(&spec);

    let inner = |a: &[BigRational], b: &[BigRational]| -> BigRational { &scale * qvec_dot(a, b) };

    // Cartan pairing straight from coordinates; scale cancels.
    let pair_with_coroot = |a: &[BigRational], b: &[BigRational]| -> i64 {
        let num = BigRational::from_integer(2.into()) * qvec_dot(a, b);
        rational_to_i64(&(num / qvec_dot(b, b)))
    };

    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| pair_with_coroot(&simples[i], &simples[j])).collect())
        .collect();

    // Enumerate the full orbit of the simple roots under simple reflections,
    // tracking coefficients over the simple basis exactly.
    let mut seen: BTreeMap<Vec<i64>, QVec> = BTreeMap::new();
    let mut queue: Vec<(Vec<i64>, QVec)> = Vec::new();
    for (i, s) in simples.iter().enumerate() {
        let mut coeffs = vec![0i64; n];
        coeffs[i] = 1;
        seen.insert(coeffs.clone(), s.clone());
        queue.push((coeffs, s.clone()));
    }
    while let Some((coeffs, coords)) = queue.pop() {
        for i in 0..n {
            let t = pair_with_coroot(&coords, &simples[i]);
            if t == 0 {
                continue;
            }
            let mut c2 = coeffs.clone();
            c2[i] -= t;
            if seen.contains_key(&c2) {
                continue;
            }
            let x2 = qvec_sub(&coords, &qvec_scale(&BigRational::from_integer(t.into()), &simples[i]));
            seen.insert(c2.clone(), x2.clone());
            queue.push((c2, x2));
        }
    }

    // Positives first, sorted by (height, coefficient vector); negatives in
    // the mirrored order.
    let mut positives: Vec<(Vec<i64>, QVec)> =
        seen.iter().filter(|(c, _)| c.iter().any(|&x| x > 0)).map(|(c, x)| (c.clone(), x.clone())).collect();
    positives.sort_by_key(|(c, _)| (c.iter().sum::<i64>(), c.clone()));
    let num_positive = positives.len();
    assert_eq!(seen.len(), 2 * num_positive, "root set must be symmetric");

    let norms: Vec<BigRational> = positives.iter().map(|(_, x)| inner(x, x)).collect();
    let min_norm = norms.iter().min().unwrap().clone();
    let max_norm = norms.iter().max().unwrap().clone();
    assert_eq!(min_norm, BigRational::from_integer(2.into()), "short roots must have squared length 2");
    let simply_laced = min_norm == max_norm;
    let length_ratio = rational_to_i64(&(&max_norm / &min_norm));
    assert!((1..=3).contains(&length_ratio));

    let m_long: i64 = match spec.twist {
        Twist::Twisted => length_ratio,
        Twist::Untwisted => 1,
    };

    let mut roots = Vec::with_capacity(2 * num_positive);
    let mut push_root = |coeffs: Vec<i64>, coords: QVec| {
        let norm = inner(&coords, &coords);
        let long = !simply_laced && norm == max_norm;
        let coroot = qvec_scale(&(BigRational::from_integer(2.into()) / &norm), &coords);
        roots.push(Root {
            coords,
            simple_coeffs: coeffs,
            norm,
            long,
            multiplier: if long { m_long } else { 1 },
            coroot_coords: coroot,
            weight_coords: Vec::new(),
            orbit: if long { 1 } else { 0 },
        });
    };
    for (c, x) in &positives {
        push_root(c.clone(), x.clone());
    }
    for (c, x) in &positives {
        push_root(c.iter().map(|v| -v).collect(), qvec_neg(x));
    }

    let coeff_index: BTreeMap<Vec<i64>, usize> =
        roots.iter().enumerate().map(|(i, r)| (r.simple_coeffs.clone(), i)).collect();
    let negation: Vec<usize> =
        (0..roots.len()).map(|i| if i < num_positive { i + num_positive } else { i - num_positive }).collect();

    // Weight-basis coordinates of every root.
    for r in 0..roots.len() {
        let wc: Vec<i64> = (0..n).map(|j| pair_with_coroot(&roots[r].coords, &simples[j])).collect();
        roots[r].weight_coords = wc;
    }

    let simple_indices: Vec<usize> = (0..n)
        .map(|i| {
            let mut c = vec![0i64; n];
            c[i] = 1;
            coeff_index[&c]
        })
        .collect();

    // Reflection tables for the simple reflections.
    let mut reflection_table = Vec::with_capacity(n);
    for i in 0..n {
        let mut tbl = Vec::with_capacity(roots.len());
        for r in 0..roots.len() {
            let t = roots[r].weight_coords[i];
            let mut c2 = roots[r].simple_coeffs.clone();
            c2[i] -= t;
            tbl.push(coeff_index[&c2]);
        }
        reflection_table.push(tbl);
    }

    // Highest root / highest short root by height within each length class.
    let class_max = |want_long: bool| -> usize {
        (0..num_positive)
            .filter(|&r| simply_laced || roots[r].long == want_long)
            .max_by_key(|&r| (roots[r].height(), roots[r].simple_coeffs.clone()))
            .expect("nonempty length class")
    };
    let highest_root = class_max(true);
    let highest_short_root = class_max(false);
    if simply_laced {
        assert_eq!(highest_root, highest_short_root);
    }
    let alpha0 = match spec.twist {
        Twist::Twisted => negation[highest_short_root],
        Twist::Untwisted => negation[highest_root],
    };
    assert_eq!(roots[alpha0].multiplier, 1, "the affine origin gradient always has multiplier 1");

    // Fundamental weights from the inverse Cartan matrix:
    //   omega_i = sum_j (C^-1)[i][j] alpha_j.
    let cartan_q: Vec<Vec<BigRational>> =
        cartan.iter().map(|row| row.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect();
    let cartan_inv = qmat_inverse(&cartan_q).expect("Cartan matrix is invertible");
    let fundamental_weights: Vec<QVec> = (0..n)
        .map(|i| {
            let mut acc = qvec_zero(dim);
            for j in 0..n {
                acc = qvec_add(&acc, &qvec_scale(&cartan_inv[i][j], &simples[j]));
            }
            acc
        })
        .collect();

    // Gram matrix and fundamental coweights: <omega-hat_i, alpha_j> = m_j d_ij.
    let gram: Vec<Vec<BigRational>> =
        (0..n).map(|i| (0..n).map(|j| inner(&simples[i], &simples[j])).collect()).collect();
    let gram_inv = qmat_inverse(&gram).expect("Gram matrix is invertible");
    let mult_of_simple =
        |j: usize| -> i64 { roots[simple_indices[j]].multiplier };
    let fundamental_coweights: Vec<QVec> = (0..n)
        .map(|i| {
            let mi = BigRational::from_integer(mult_of_simple(i).into());
            let mut acc = qvec_zero(dim);
            for k in 0..n {
                acc = qvec_add(&acc, &qvec_scale(&(&gram_inv[k][i] * &mi), &simples[k]));
            }
            acc
        })
        .collect();
    for i in 0..n {
        for j in 0..n {
            let p = inner(&fundamental_coweights[i], &simples[j]);
            let expect = if i == j { mult_of_simple(j) } else { 0 };
            assert_eq!(p, BigRational::from_integer(expect.into()), "coweight pairing");
        }
    }

    // Simple reflection matrices on both lattices (exact, asserted integral).
    let coords_to_weight = |x: &[BigRational]| -> Vec<i64> {
        (0..n).map(|j| pair_with_coroot(x, &simples[j])).collect()
    };
    let coords_to_coweight = |x: &[BigRational]| -> Vec<i64> {
        (0..n)
            .map(|j| {
                let v = inner(x, &simples[j]) / BigRational::from_integer(mult_of_simple(j).into());
                rational_to_i64(&v)
            })
            .collect()
    };
    let reflect = |x: &[BigRational], i: usize| -> QVec {
        // Rational coefficient: only the assembled matrix entries must be
        // integral, not the individual reflection coefficients.
        let t = BigRational::from_integer(2.into()) * qvec_dot(x, &simples[i])
            / qvec_dot(&simples[i], &simples[i]);
        qvec_sub(x, &qvec_scale(&t, &simples[i]))
    };
    let mut simple_weight_mats = Vec::with_capacity(n);
    let mut simple_coweight_mats = Vec::with_capacity(n);
    for i in 0..n {
        let wm_cols: Vec<Vec<i64>> =
            (0..n).map(|j| coords_to_weight(&reflect(&fundamental_weights[j], i))).collect();
        let cm_cols: Vec<Vec<i64>> =
            (0..n).map(|j| coords_to_coweight(&reflect(&fundamental_coweights[j], i))).collect();
        let rows_from_cols = |cols: &[Vec<i64>]| -> IMat {
            IMat::from_rows((0..n).map(|r| (0..n).map(|c| cols[c][r]).collect()).collect())
        };
        simple_weight_mats.push(rows_from_cols(&wm_cols));
        simple_coweight_mats.push(rows_from_cols(&cm_cols));
    }

    // Pairings of roots with fundamental coweights.
    let pairing_rows: Vec<Vec<i64>> = roots
        .iter()
        .map(|r| (0..n).map(|i| r.simple_coeffs[i] * mult_of_simple(i)).collect())
        .collect();
    for (r, row) in pairing_rows.iter().enumerate() {
        for &v in row {
            assert_eq!(v % roots[r].multiplier, 0, "lattice pairing must respect multipliers");
        }
    }

    // Affine Coxeter orders from the Cartan numbers of the affine basis.
    let gradient_of = |j: usize| -> usize { if j == 0 { alpha0 } else { simple_indices[j - 1] } };
    let mut affine_orders = vec![vec![None; n + 1]; n + 1];
    for j in 0..=n {
        for k in 0..=n {
            if j == k {
                affine_orders[j][k] = Some(1);
                continue;
            }
            let a = &roots[gradient_of(j)];
            let b = &roots[gradient_of(k)];
            let njk = pair_with_coroot(&a.coords, &b.coords);
            let nkj = pair_with_coroot(&b.coords, &a.coords);
            affine_orders[j][k] = match njk * nkj {
                0 => Some(2),
                1 => Some(3),
                2 => Some(4),
                3 => Some(6),
                4 => None,
                p => panic!("impossible Cartan product {} in affine diagram", p),
            };
        }
    }
    if n > 1 {
        for j in 0..=n {
            for k in 0..=n {
                assert!(affine_orders[j][k].is_some(), "infinite order only occurs in rank 1");
            }
        }
    }

    // Height functional with strictly positive integral weights on P.
    let rho_vee: QVec = {
        let mut acc = qvec_zero(dim);
        for i in 0..n {
            let hi = &simples[i];
            let coef = inner(hi, hi) / BigRational::from_integer(2.into());
            for k in 0..n {
                acc = qvec_add(&acc, &qvec_scale(&(&gram_inv[k][i] * &coef), &simples[k]));
            }
        }
        acc
    };
    let kappa: Vec<BigRational> = (0..n).map(|i| inner(&fundamental_weights[i], &rho_vee)).collect();
    let denom_lcm = kappa.iter().fold(num_bigint::BigInt::one(), |acc, k| num_integer::lcm(acc, k.denom().clone()));
    let height_weights: Vec<i64> = kappa
        .iter()
        .map(|k| rational_to_i64(&(k * BigRational::from_integer(denom_lcm.clone()))))
        .collect();
    assert!(height_weights.iter().all(|&h| h > 0));

    // Hatted-root basis in the coweight basis, and the lattice index.
    let hat_root_basis: Vec<Vec<BigRational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|j| {
                    let mj = BigRational::from_integer(mult_of_simple(j).into());
                    let hat = qvec_scale(&mj, &roots[simple_indices[j]].coroot_coords);
                    inner(&hat, &simples[r]) / BigRational::from_integer(mult_of_simple(r).into())
                })
                .collect()
        })
        .collect();
    let det = qmat_det(&hat_root_basis);
    let det_abs = qrat_abs(&det);
    let cartan_determinant = {
        let v = rational_to_i64(&det_abs);
        assert!(v > 0);
        v as u64
    };

    let coweight_to_weight: Vec<Vec<BigRational>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    let two = BigRational::from_integer(2.into());
                    two * inner(&fundamental_coweights[i], &simples[j]) / inner(&simples[j], &simples[j])
                })
                .collect()
        })
        .collect();

    let rs = RootSystemData {
        spec,
        rank: n,
        dim,
        form_scale: scale,
        roots,
        num_positive,
        coeff_index,
        simple_indices,
        negation,
        reflection_table,
        cartan,
        length_ratio,
        simply_laced,
        highest_root,
        highest_short_root,
        alpha0,
        fundamental_weights,
        fundamental_coweights,
        simple_weight_mats,
        simple_coweight_mats,
        pairing_rows,
        affine_orders,
        height_weights,
        hat_root_basis,
        cartan_determinant,
        coweight_to_weight,
    };
    rs.check_stability();
    Ok(rs)
}

impl RootSystemData {
    pub fn inner(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        &self.form_scale * qvec_dot(a, b)
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    /// Index of the root whose simple-basis coefficients are `coeffs`.
    pub fn root_by_coeffs(&self, coeffs: &[i64]) -> Option<usize> {
        self.coeff_index.get(coeffs).copied()
    }

    /// Reflection of root `r` in root `b`, as a table index.
    pub fn reflect_root(&self, b: usize, r: usize) -> usize {
        let t = self.pair_root_coroot(r, b);
        let mut c = self.roots[r].simple_coeffs.clone();
        for (ci, bi) in c.iter_mut().zip(&self.roots[b].simple_coeffs) {
            *ci -= t * bi;
        }
        self.coeff_index[&c]
    }

    /// `<alpha_r, alpha_b^v>` as an integer.
    pub fn pair_root_coroot(&self, r: usize, b: usize) -> i64 {
        let num = BigRational::from_integer(2.into()) * qvec_dot(&self.roots[r].coords, &self.roots[b].coords);
        rational_to_i64(&(num / qvec_dot(&self.roots[b].coords, &self.roots[b].coords)))
    }

    /// Pairing `<alpha_r, lambda>` for `lambda` in coweight coordinates.
    pub fn pair_root_coweight(&self, r: usize, lam: &[i64]) -> i64 {
        self.pairing_rows[r].iter().zip(lam).map(|(p, l)| p * l).sum()
    }

    /// The simple affine basis member `a_j` for `j` in `0..=rank`.
    pub fn affine_simple(&self, j: usize) -> AffineRoot {
        assert!(j <= self.rank);
        if j == 0 {
            AffineRoot { root: self.alpha0, level: 1 }
        } else {
            AffineRoot { root: self.simple_indices[j - 1], level: 0 }
        }
    }

    /// Positivity with respect to the simple affine basis.
    pub fn is_positive_affine(&self, a: &AffineRoot) -> bool {
        a.level > 0 || (a.level == 0 && self.roots[a.root].is_positive())
    }

    /// Integral height functional ordering exponent vectors of P.
    pub fn weight_height(&self, weight: &[i64]) -> i64 {
        self.height_weights.iter().zip(weight).map(|(h, c)| h * c).sum()
    }

    /// Coordinates of a weight given in the fundamental-weight basis.
    pub fn weight_to_coords(&self, weight: &[i64]) -> QVec {
        let mut acc = qvec_zero(self.dim);
        for (i, &ci) in weight.iter().enumerate() {
            acc = qvec_add(&acc, &qvec_scale(&BigRational::from_integer(ci.into()), &self.fundamental_weights[i]));
        }
        acc
    }

    /// Coordinates of a coweight given in the fundamental-coweight basis.
    pub fn coweight_to_coords(&self, lam: &[i64]) -> QVec {
        let mut acc = qvec_zero(self.dim);
        for (i, &ci) in lam.iter().enumerate() {
            acc = qvec_add(&acc, &qvec_scale(&BigRational::from_integer(ci.into()), &self.fundamental_coweights[i]));
        }
        acc
    }

    /// Expresses ambient coordinates in the fundamental-weight basis; `None`
    /// when the vector is not a lattice point of P.
    pub fn coords_to_weight(&self, x: &[BigRational]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let s = &self.roots[self.simple_indices[j]];
            let v = BigRational::from_integer(2.into()) * qvec_dot(x, &s.coords) / qvec_dot(&s.coords, &s.coords);
            if !rational_is_integer(&v) {
                return None;
            }
            out.push(rational_to_i64(&v));
        }
        Some(out)
    }

    /// Expresses ambient coordinates in the fundamental-coweight basis.
    pub fn coords_to_coweight(&self, x: &[BigRational]) -> Option<Vec<i64>> {
        let mut out = Vec::with_capacity(self.rank);
        for j in 0..self.rank {
            let s = &self.roots[self.simple_indices[j]];
            let m = BigRational::from_integer(s.multiplier.into());
            let v = self.inner(x, &s.coords) / m;
            if !rational_is_integer(&v) {
                return None;
            }
            out.push(rational_to_i64(&v));
        }
        Some(out)
    }

    /// Hatted root `m_r * alpha_r^v` of root `r` in coweight coordinates.
    /// Unlike the bare coroot this always lies in the dual weight lattice.
    pub fn hat_root_coweight(&self, r: usize) -> Vec<i64> {
        let m = BigRational::from_integer(self.roots[r].multiplier.into());
        let hat = qvec_scale(&m, &self.roots[r].coroot_coords);
        self.coords_to_coweight(&hat).expect("hatted roots lie in the dual root lattice")
    }

    /// Membership of a coweight vector in the lattice spanned by the hatted
    /// roots (the dual root lattice).
    pub fn coweight_in_dual_root_lattice(&self, lam: &[i64]) -> bool {
        let b: Vec<BigRational> = lam.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        in_integer_span(&self.hat_root_basis, &b)
    }

    /// Tau-orbit index of root `r` (0 short / 1 long; 0 when simply-laced).
    pub fn orbit_of(&self, r: usize) -> usize {
        self.roots[r].orbit
    }

    pub fn orbit_count(&self) -> usize {
        if self.simply_laced {
            1
        } else {
            2
        }
    }

    /// Squared length of the affine origin gradient (2, 4 or 6).
    pub fn alpha0_norm(&self) -> BigRational {
        self.roots[self.alpha0].norm.clone()
    }

    fn check_stability(&self) {
        // Simple reflections permute the root set, and the dual lattice
        // pairing respects multipliers; both were asserted during build, so
        // this re-checks the reflection tables are involutions.
        for i in 0..self.rank {
            for r in 0..self.num_roots() {
                let rr = self.reflection_table[i][r];
                assert_eq!(self.reflection_table[i][rr], r);
            }
        }
    }
}

/// A finite subsystem of the gradient system: the orbit of the affine basis
/// gradients avoiding one index under the parabolic subgroup they generate.
#[derive(Debug)]
pub struct FiniteRootSubsystem {
    /// Omitted affine index.
    pub omitted: usize,
    /// Member roots (indices into the ambient table).
    pub members: Vec<usize>,
    /// Simple basis root indices (gradients of `a_j`, `j != omitted`).
    pub basis: Vec<usize>,
    /// Irreducible components, pairwise orthogonal, partitioning `members`.
    pub components: Vec<Vec<usize>>,
}

/// The orbit closure of the affine basis gradients avoiding index `k`.
pub fn parabolic_subsystem(rs: &RootSystemData, k: usize) -> FiniteRootSubsystem {
    assert!(k <= rs.rank);
    let basis: Vec<usize> = (0..=rs.rank)
        .filter(|&j| j != k)
        .map(|j| rs.affine_simple(j).root)
        .collect();
    let mut members: std::collections::BTreeSet<usize> = basis.iter().copied().collect();
    let mut frontier: Vec<usize> = basis.clone();
    while let Some(r) = frontier.pop() {
        for &b in &basis {
            let img = rs.reflect_root(b, r);
            if members.insert(img) {
                frontier.push(img);
            }
        }
    }
    let members: Vec<usize> = members.into_iter().collect();

    // Connected components under non-orthogonality.
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut components: Vec<Vec<usize>> = Vec::new();
    for &r in &members {
        if comp_of.contains_key(&r) {
            continue;
        }
        let id = components.len();
        let mut stack = vec![r];
        let mut comp = Vec::new();
        comp_of.insert(r, id);
        while let Some(x) = stack.pop() {
            comp.push(x);
            for &y in &members {
                if comp_of.contains_key(&y) {
                    continue;
                }
                let d = qvec_dot(&rs.roots[x].coords, &rs.roots[y].coords);
                if !d.is_zero() {
                    comp_of.insert(y, id);
                    stack.push(y);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }

    FiniteRootSubsystem { omitted: k, members, basis, components }
}

impl FiniteRootSubsystem {
    /// Reflection closure: `s_b(r)` stays in the subsystem for all members.
    pub fn is_reflection_closed(&self, rs: &RootSystemData) -> bool {
        let set: std::collections::BTreeSet<usize> = self.members.iter().copied().collect();
        self.members
            .iter()
            .all(|&b| self.members.iter().all(|&r| set.contains(&rs.reflect_root(b, r))))
    }

    /// Rational rank of the member span.
    pub fn rank(&self, rs: &RootSystemData) -> usize {
        let rows: Vec<Vec<BigRational>> = self.members.iter().map(|&r| rs.roots[r].coords.clone()).collect();
        qmat_rank(&rows)
    }

    /// Every member must be an all-nonnegative or all-nonpositive integer
    /// combination of the simple basis.
    pub fn basis_generates_positively(&self, rs: &RootSystemData) -> bool {
        let n = rs.rank;
        let basis_mat: Vec<Vec<BigRational>> = (0..n)
            .map(|row| {
                self.basis
                    .iter()
                    .map(|&b| BigRational::from_integer(rs.roots[b].simple_coeffs[row].into()))
                    .collect()
            })
            .collect();
        self.members.iter().all(|&r| {
            let target: Vec<BigRational> =
                rs.roots[r].simple_coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
            match qmat_solve(&basis_mat, &target) {
                Some(sol) => {
                    let ints = sol.iter().all(rational_is_integer);
                    let nonneg = sol.iter().all(|x| !x.is_negative());
                    let nonpos = sol.iter().all(|x| !x.is_positive());
                    ints && (nonneg || nonpos)
                }
                None => false,
            }
        })
    }

    /// Pairwise orthogonality of distinct components.
    pub fn components_orthogonal(&self, rs: &RootSystemData) -> bool {
        for (i, ci) in self.components.iter().enumerate() {
            for cj in self.components.iter().skip(i + 1) {
                for &x in ci {
                    for &y in cj {
                        if !qvec_dot(&rs.roots[x].coords, &rs.roots[y].coords).is_zero() {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// The index of the dual weight lattice over the dual root lattice.
pub fn cartan_determinant(rs: &RootSystemData) -> u64 {
    rs.cartan_determinant
}
