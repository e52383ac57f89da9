//! The extended affine Weyl group: composition, actions, length, reduced
//! words, Bruhat order and the length-zero subgroup.
//!
//! Elements are pairs `(v, lambda)` representing `v t_{c lambda}` with `v`
//! in the finite Weyl group and `lambda` an integer vector over the dual
//! fundamental coweights. The symbolic level `c` never needs a numeric
//! value here; it only acquires one in the polynomial representation.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_rational::BigRational;

use crate::geometry::{qvec_add, qvec_scale, IMat, QVec};
use crate::root_data::{AffineRoot, RootSystemData};

/// A finite Weyl group element, stored as its permutation of the root table
/// together with exact integer matrices for the two lattice actions (and
/// their inverses, so composition never solves linear systems).
#[derive(Debug, Clone)]
pub struct FiniteWeylElt {
    pub root_perm: Vec<u32>,
    weight_mat: IMat,
    weight_mat_inv: IMat,
    coweight_mat: IMat,
    coweight_mat_inv: IMat,
}

impl PartialEq for FiniteWeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.root_perm == other.root_perm
    }
}
impl Eq for FiniteWeylElt {}
impl PartialOrd for FiniteWeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for FiniteWeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.root_perm.cmp(&other.root_perm)
    }
}
impl Hash for FiniteWeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.root_perm.hash(state);
    }
}

impl FiniteWeylElt {
    pub fn identity(rs: &RootSystemData) -> Self {
        FiniteWeylElt {
            root_perm: (0..rs.num_roots() as u32).collect(),
            weight_mat: IMat::identity(rs.rank),
            weight_mat_inv: IMat::identity(rs.rank),
            coweight_mat: IMat::identity(rs.rank),
            coweight_mat_inv: IMat::identity(rs.rank),
        }
    }

    /// The simple reflection `s_i` for `i` in `0..rank`.
    pub fn simple(rs: &RootSystemData, i: usize) -> Self {
        let perm = rs.reflection_table[i].iter().map(|&x| x as u32).collect();
        let wm = rs.simple_weight_mats[i].clone();
        let cm = rs.simple_coweight_mats[i].clone();
        FiniteWeylElt {
            root_perm: perm,
            weight_mat_inv: wm.clone(),
            weight_mat: wm,
            coweight_mat_inv: cm.clone(),
            coweight_mat: cm,
        }
    }

    /// The orthogonal reflection in an arbitrary root of the table.
    pub fn reflection(rs: &RootSystemData, root: usize) -> Self {
        let perm: Vec<u32> = (0..rs.num_roots()).map(|r| rs.reflect_root(root, r) as u32).collect();
        // Columns of the lattice matrices through exact coordinates.
        let reflect_coords = |x: &QVec| -> QVec {
            let t = {
                let two = BigRational::from_integer(2.into());
                two * crate::geometry::qvec_dot(x, &rs.roots[root].coords)
                    / crate::geometry::qvec_dot(&rs.roots[root].coords, &rs.roots[root].coords)
            };
            crate::geometry::qvec_sub(x, &qvec_scale(&t, &rs.roots[root].coords))
        };
        let n = rs.rank;
        let mut wm_rows = vec![vec![0i64; n]; n];
        let mut cm_rows = vec![vec![0i64; n]; n];
        for j in 0..n {
            let wcol = rs
                .coords_to_weight(&reflect_coords(&rs.fundamental_weights[j]))
                .expect("reflections preserve the weight lattice");
            let ccol = rs
                .coords_to_coweight(&reflect_coords(&rs.fundamental_coweights[j]))
                .expect("reflections preserve the dual weight lattice");
            for r in 0..n {
                wm_rows[r][j] = wcol[r];
                cm_rows[r][j] = ccol[r];
            }
        }
        let wm = IMat::from_rows(wm_rows);
        let cm = IMat::from_rows(cm_rows);
        FiniteWeylElt {
            root_perm: perm,
            weight_mat_inv: wm.clone(),
            weight_mat: wm,
            coweight_mat_inv: cm.clone(),
            coweight_mat: cm,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.root_perm.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    pub fn compose(&self, other: &FiniteWeylElt) -> FiniteWeylElt {
        let perm = other.root_perm.iter().map(|&r| self.root_perm[r as usize]).collect();
        FiniteWeylElt {
            root_perm: perm,
            weight_mat: self.weight_mat.mul(&other.weight_mat),
            weight_mat_inv: other.weight_mat_inv.mul(&self.weight_mat_inv),
            coweight_mat: self.coweight_mat.mul(&other.coweight_mat),
            coweight_mat_inv: other.coweight_mat_inv.mul(&self.coweight_mat_inv),
        }
    }

    pub fn inverse(&self) -> FiniteWeylElt {
        let mut perm = vec![0u32; self.root_perm.len()];
        for (i, &p) in self.root_perm.iter().enumerate() {
            perm[p as usize] = i as u32;
        }
        FiniteWeylElt {
            root_perm: perm,
            weight_mat: self.weight_mat_inv.clone(),
            weight_mat_inv: self.weight_mat.clone(),
            coweight_mat: self.coweight_mat_inv.clone(),
            coweight_mat_inv: self.coweight_mat.clone(),
        }
    }

    #[inline]
    pub fn apply_root(&self, r: usize) -> usize {
        self.root_perm[r] as usize
    }

    /// Action on the weight lattice in fundamental-weight coordinates.
    pub fn apply_weight(&self, w: &[i64]) -> Vec<i64> {
        self.weight_mat.apply(w)
    }

    pub fn apply_weight_inv(&self, w: &[i64]) -> Vec<i64> {
        self.weight_mat_inv.apply(w)
    }

    /// Action on the dual lattice in fundamental-coweight coordinates.
    pub fn apply_coweight(&self, w: &[i64]) -> Vec<i64> {
        self.coweight_mat.apply(w)
    }

    pub fn apply_coweight_inv(&self, w: &[i64]) -> Vec<i64> {
        self.coweight_mat_inv.apply(w)
    }

    /// Exact action on an arbitrary ambient vector, through the weight basis.
    pub fn apply_coords(&self, rs: &RootSystemData, x: &QVec) -> QVec {
        let n = rs.rank;
        let coords: Vec<BigRational> = (0..n)
            .map(|j| {
                let s = &rs.roots[rs.simple_indices[j]].coords;
                BigRational::from_integer(2.into()) * crate::geometry::qvec_dot(x, s)
                    / crate::geometry::qvec_dot(s, s)
            })
            .collect();
        let mut out = crate::geometry::qvec_zero(rs.dim);
        for i in 0..n {
            let mut acc = BigRational::from_integer(0.into());
            for j in 0..n {
                acc += BigRational::from_integer(self.weight_mat.at(i, j).into()) * &coords[j];
            }
            out = qvec_add(&out, &qvec_scale(&acc, &rs.fundamental_weights[i]));
        }
        out
    }
}

/// An element `v t_{c lambda}` of the extended affine Weyl group.
#[derive(Clone)]
pub struct ExtAffineWeylElt {
    pub rs: Arc<RootSystemData>,
    pub gradient: FiniteWeylElt,
    /// Translation coweight in fundamental-coweight coordinates.
    pub translation: Vec<i64>,
}

impl fmt::Debug for ExtAffineWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtAffineWeylElt(perm={:?}, t={:?})", self.gradient.root_perm, self.translation)
    }
}

impl PartialEq for ExtAffineWeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.gradient == other.gradient && self.translation == other.translation
    }
}
impl Eq for ExtAffineWeylElt {}
impl PartialOrd for ExtAffineWeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for ExtAffineWeylElt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gradient.cmp(&other.gradient).then_with(|| self.translation.cmp(&other.translation))
    }
}
impl Hash for ExtAffineWeylElt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.gradient.hash(state);
        self.translation.hash(state);
    }
}

fn assert_same_system(a: &ExtAffineWeylElt, b: &ExtAffineWeylElt) {
    assert_eq!(
        a.rs.spec, b.rs.spec,
        "cannot combine elements of different root systems ({} vs {})",
        a.rs.spec, b.rs.spec
    );
}

impl ExtAffineWeylElt {
    pub fn identity(rs: &Arc<RootSystemData>) -> Self {
        ExtAffineWeylElt {
            rs: Arc::clone(rs),
            gradient: FiniteWeylElt::identity(rs),
            translation: vec![0; rs.rank],
        }
    }

    pub fn from_parts(rs: &Arc<RootSystemData>, gradient: FiniteWeylElt, translation: Vec<i64>) -> Self {
        assert_eq!(translation.len(), rs.rank);
        ExtAffineWeylElt { rs: Arc::clone(rs), gradient, translation }
    }

    /// The pure translation `t_{c lambda}`.
    pub fn translation(rs: &Arc<RootSystemData>, lam: Vec<i64>) -> Self {
        Self::from_parts(rs, FiniteWeylElt::identity(rs), lam)
    }

    /// The affine reflection attached to an affine root `alpha + k c`,
    /// which equals `(s_alpha, k alpha^v)` in semidirect coordinates.
    pub fn affine_reflection(rs: &Arc<RootSystemData>, a: &AffineRoot) -> Self {
        let grad = FiniteWeylElt::reflection(rs, a.root);
        let m = rs.roots[a.root].multiplier;
        assert_eq!(a.level % m, 0, "invalid affine root level");
        // k alpha^v = (k/m) * (m alpha^v), and the hatted root is a dual
        // lattice vector even when the bare coroot is not.
        let hat = rs.hat_root_coweight(a.root);
        let q = a.level / m;
        let lam: Vec<i64> = hat.iter().map(|&x| x * q).collect();
        Self::from_parts(rs, grad, lam)
    }

    /// The simple affine reflection `s_j` for `j` in `0..=rank`.
    pub fn simple(rs: &Arc<RootSystemData>, j: usize) -> Self {
        Self::affine_reflection(rs, &rs.affine_simple(j))
    }

    pub fn is_identity(&self) -> bool {
        self.gradient.is_identity() && self.translation.iter().all(|&x| x == 0)
    }

    /// Group law `(v1, l1)(v2, l2) = (v1 v2, v2^-1 l1 + l2)`.
    pub fn compose(&self, other: &ExtAffineWeylElt) -> ExtAffineWeylElt {
        assert_same_system(self, other);
        let gradient = self.gradient.compose(&other.gradient);
        let mut translation = other.gradient.apply_coweight_inv(&self.translation);
        for (t, o) in translation.iter_mut().zip(&other.translation) {
            *t += o;
        }
        ExtAffineWeylElt { rs: Arc::clone(&self.rs), gradient, translation }
    }

    pub fn inverse(&self) -> ExtAffineWeylElt {
        let gradient = self.gradient.inverse();
        let translation = self.gradient.apply_coweight(&self.translation).iter().map(|&x| -x).collect();
        ExtAffineWeylElt { rs: Arc::clone(&self.rs), gradient, translation }
    }

    /// Dual action on affine roots: gradient moves by the finite part, the
    /// level drops by the pairing with the translation coweight.
    pub fn act_on_affine_root(&self, a: &AffineRoot) -> AffineRoot {
        let img_root = self.gradient.apply_root(a.root);
        let pairing = self.rs.pair_root_coweight(a.root, &self.translation);
        let level = a.level - pairing;
        let m = self.rs.roots[img_root].multiplier;
        assert_eq!(
            level % m,
            0,
            "affine action broke the level divisibility invariant (translation not in the dual weight lattice?)"
        );
        AffineRoot { root: img_root, level }
    }

    /// Inversion-count length over the positive affine roots.
    pub fn length(&self) -> u64 {
        let rs = &self.rs;
        let mut total: u64 = 0;
        for r in 0..rs.num_roots() {
            let m = rs.roots[r].multiplier;
            let pairing = rs.pair_root_coweight(r, &self.translation);
            debug_assert_eq!(pairing % m, 0);
            let p = pairing / m;
            let q_min: i64 = if rs.roots[r].is_positive() { 0 } else { 1 };
            if p > q_min {
                total += (p - q_min) as u64;
            }
            if p >= q_min && !rs.roots[self.gradient.apply_root(r)].is_positive() {
                total += 1;
            }
        }
        total
    }

    /// Exact affine action on an ambient point for a numeric level `c`.
    /// Used for geometric spot checks.
    pub fn apply_to_point(&self, x: &QVec, c: &BigRational) -> QVec {
        let lam = self.rs.coweight_to_coords(&self.translation);
        let shifted = qvec_add(x, &qvec_scale(c, &lam));
        self.gradient.apply_coords(&self.rs, &shifted)
    }
}

/// A length-zero element together with its permutation of the simple
/// affine basis indices.
#[derive(Debug, Clone)]
pub struct OmegaElt {
    pub elt: ExtAffineWeylElt,
    /// `perm[j]` is the index with `u a_j = a_{perm[j]}`.
    pub perm: Vec<usize>,
}

type EltKey = (Vec<u32>, Vec<i64>);

fn key_of(e: &ExtAffineWeylElt) -> EltKey {
    (e.gradient.root_perm.clone(), e.translation.clone())
}

/// A ball element from breadth-first enumeration: the element, the index of
/// its length-zero part and one reduced word.
#[derive(Debug, Clone)]
pub struct BallElement {
    pub elt: ExtAffineWeylElt,
    pub omega: usize,
    pub word: Vec<usize>,
}

/// Context for the extended affine Weyl group of one root system: the simple
/// affine reflections and the computed length-zero subgroup.
pub struct AffineWeylGroup {
    pub rs: Arc<RootSystemData>,
    simple: Vec<ExtAffineWeylElt>,
    omega: Vec<OmegaElt>,
    omega_index: BTreeMap<EltKey, usize>,
}

/// Enumerates the finite Weyl group by orbit search, bailing out above `cap`.
fn enumerate_finite_weyl(rs: &RootSystemData, cap: usize) -> Option<Vec<FiniteWeylElt>> {
    let gens: Vec<FiniteWeylElt> = (0..rs.rank).map(|i| FiniteWeylElt::simple(rs, i)).collect();
    let mut seen: BTreeMap<Vec<u32>, FiniteWeylElt> = BTreeMap::new();
    let id = FiniteWeylElt::identity(rs);
    seen.insert(id.root_perm.clone(), id.clone());
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = x.compose(g);
            if seen.len() > cap {
                return None;
            }
            if !seen.contains_key(&y.root_perm) {
                seen.insert(y.root_perm.clone(), y.clone());
                frontier.push(y);
            }
        }
    }
    Some(seen.into_values().collect())
}

/// Longest element of the parabolic generated by the listed simple indices,
/// by dominance descent of the sub-regular vector.
fn longest_parabolic(rs: &RootSystemData, subset: &[usize]) -> FiniteWeylElt {
    let mut mu: Vec<i64> = vec![0; rs.rank];
    for &j in subset {
        mu[j] = 1;
    }
    let mut acc = FiniteWeylElt::identity(rs);
    while let Some(&j) = subset.iter().find(|&&j| mu[j] > 0) {
        let s = FiniteWeylElt::simple(rs, j);
        mu = s.apply_weight(&mu);
        acc = s.compose(&acc);
    }
    acc
}

fn longest_element(rs: &RootSystemData) -> FiniteWeylElt {
    let all: Vec<usize> = (0..rs.rank).collect();
    longest_parabolic(rs, &all)
}

impl AffineWeylGroup {
    pub fn new(rs: Arc<RootSystemData>) -> Self {
        let simple: Vec<ExtAffineWeylElt> = (0..=rs.rank).map(|j| ExtAffineWeylElt::simple(&rs, j)).collect();
        let mut group = AffineWeylGroup { rs, simple, omega: Vec::new(), omega_index: BTreeMap::new() };
        group.compute_omega();
        group
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    pub fn identity(&self) -> ExtAffineWeylElt {
        ExtAffineWeylElt::identity(&self.rs)
    }

    pub fn simple(&self, j: usize) -> &ExtAffineWeylElt {
        &self.simple[j]
    }

    pub fn omega(&self) -> &[OmegaElt] {
        &self.omega
    }

    pub fn omega_of(&self, e: &ExtAffineWeylElt) -> Option<usize> {
        self.omega_index.get(&key_of(e)).copied()
    }

    /// Tests the simple-basis permutation property; returns the index table.
    fn check_omega_candidate(&self, u: &ExtAffineWeylElt) -> Option<Vec<usize>> {
        let n = self.rs.rank;
        let mut perm = Vec::with_capacity(n + 1);
        let mut hit = vec![false; n + 1];
        for j in 0..=n {
            let img = u.act_on_affine_root(&self.rs.affine_simple(j));
            let target = (0..=n).find(|&k| self.rs.affine_simple(k) == img)?;
            if hit[target] {
                return None;
            }
            hit[target] = true;
            perm.push(target);
        }
        Some(perm)
    }

    /// Builds the full length-zero subgroup: one representative per
    /// nontrivial dual-lattice class, closed under the group law.
    fn compute_omega(&mut self) {
        let rs = Arc::clone(&self.rs);
        let n = rs.rank;
        let mut found: Vec<ExtAffineWeylElt> = vec![self.identity()];

        if rs.cartan_determinant > 1 {
            let candidates: Vec<Vec<i64>> = (0..n)
                .map(|i| {
                    let mut lam = vec![0i64; n];
                    lam[i] = 1;
                    lam
                })
                .filter(|lam| !rs.coweight_in_dual_root_lattice(lam))
                .collect();

            let finite = enumerate_finite_weyl(&rs, 50_000);
            for lam in &candidates {
                let mut winner: Option<ExtAffineWeylElt> = None;
                match &finite {
                    Some(list) => {
                        'search: for v in list {
                            for cand in [
                                ExtAffineWeylElt::from_parts(&rs, v.clone(), lam.clone()),
                                ExtAffineWeylElt::from_parts(&rs, v.clone(), v.apply_coweight_inv(lam)),
                            ] {
                                if self.check_omega_candidate(&cand).is_some() {
                                    winner = Some(cand);
                                    break 'search;
                                }
                            }
                        }
                    }
                    None => {
                        // Large finite Weyl group: closed construction from
                        // the longest elements, verified afterwards.
                        let i = lam.iter().position(|&x| x == 1).unwrap();
                        let w0 = longest_element(&rs);
                        let subset: Vec<usize> = (0..n).filter(|&j| j != i).collect();
                        let w0j = longest_parabolic(&rs, &subset);
                        let v1 = w0j.compose(&w0);
                        let v2 = w0.compose(&w0j);
                        'closed: for v in [v1, v2] {
                            for cand in [
                                ExtAffineWeylElt::from_parts(&rs, v.clone(), v.apply_coweight_inv(lam)),
                                ExtAffineWeylElt::from_parts(&rs, v.clone(), lam.clone()),
                            ] {
                                if self.check_omega_candidate(&cand).is_some() {
                                    winner = Some(cand);
                                    break 'closed;
                                }
                            }
                        }
                    }
                }
                if let Some(u) = winner {
                    found.push(u);
                }
            }
        }

        // Close under multiplication.
        let mut keys: std::collections::BTreeSet<EltKey> = found.iter().map(key_of).collect();
        loop {
            let mut added = Vec::new();
            for a in &found {
                for b in &found {
                    let c = a.compose(b);
                    if keys.insert(key_of(&c)) {
                        added.push(c);
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            found.extend(added);
        }

        let mut omega: Vec<OmegaElt> = found
            .into_iter()
            .map(|elt| {
                let perm = self
                    .check_omega_candidate(&elt)
                    .expect("length-zero candidate fails the simple-basis permutation property");
                assert_eq!(elt.length(), 0);
                OmegaElt { elt, perm }
            })
            .collect();
        omega.sort_by(|a, b| key_of(&a.elt).cmp(&key_of(&b.elt)).then(Ordering::Equal));
        // Identity first for readable reports.
        omega.sort_by_key(|u| !u.elt.is_identity());
        assert_eq!(
            omega.len() as u64,
            rs.cartan_determinant,
            "length-zero subgroup order must equal the dual lattice index"
        );
        self.omega_index = omega.iter().enumerate().map(|(i, u)| (key_of(&u.elt), i)).collect();
        self.omega = omega;
    }

    /// Greedy descent to a reduced decomposition `w = u s_{j_1} ... s_{j_l}`.
    pub fn reduced_word(&self, w: &ExtAffineWeylElt) -> (usize, Vec<usize>) {
        let mut cur = w.clone();
        let mut rev = Vec::new();
        loop {
            let descent = (0..=self.rs.rank).find(|&j| {
                let img = cur.act_on_affine_root(&self.rs.affine_simple(j));
                !self.rs.is_positive_affine(&img)
            });
            match descent {
                Some(j) => {
                    debug_assert!(cur.compose(&self.simple[j]).length() + 1 == cur.length());
                    cur = cur.compose(&self.simple[j]);
                    rev.push(j);
                }
                None => break,
            }
        }
        let u = self
            .omega_of(&cur)
            .expect("descent terminated outside the length-zero subgroup");
        rev.reverse();
        (u, rev)
    }

    /// Rebuilds the element `u s_{j_1} ... s_{j_l}` from a decomposition.
    pub fn recompose(&self, omega: usize, word: &[usize]) -> ExtAffineWeylElt {
        let mut acc = self.omega[omega].elt.clone();
        for &j in word {
            acc = acc.compose(&self.simple[j]);
        }
        acc
    }

    /// Bruhat order. Elements with different length-zero parts are
    /// incomparable; within one coset the standard greedy subword descent
    /// on a fixed reduced word decides the order.
    pub fn bruhat_leq(&self, v: &ExtAffineWeylElt, w: &ExtAffineWeylElt) -> bool {
        let (uv, _) = self.reduced_word(v);
        let (uw, word_w) = self.reduced_word(w);
        if uv != uw {
            return false;
        }
        let u_inv = self.omega[uv].elt.inverse();
        let mut x = u_inv.compose(v);
        let mut len_x = x.length();
        let mut word = word_w;
        while let Some(j) = word.pop() {
            if len_x == 0 {
                return true;
            }
            let xj = x.compose(&self.simple[j]);
            let len_xj = xj.length();
            if len_xj < len_x {
                x = xj;
                len_x = len_xj;
            }
        }
        len_x == 0
    }

    /// All elements of length at most `max_len`, each with one reduced word.
    pub fn enumerate_ball(&self, max_len: usize) -> Vec<BallElement> {
        let mut seen: std::collections::BTreeSet<EltKey> = std::collections::BTreeSet::new();
        let mut out: Vec<BallElement> = Vec::new();
        let mut frontier: Vec<BallElement> = Vec::new();
        for (i, u) in self.omega.iter().enumerate() {
            let b = BallElement { elt: u.elt.clone(), omega: i, word: Vec::new() };
            seen.insert(key_of(&b.elt));
            frontier.push(b);
        }
        out.extend(frontier.iter().cloned());
        for _ in 0..max_len {
            let mut next = Vec::new();
            for b in &frontier {
                for j in 0..=self.rs.rank {
                    let e2 = b.elt.compose(&self.simple[j]);
                    if seen.insert(key_of(&e2)) {
                        let mut word = b.word.clone();
                        word.push(j);
                        next.push(BallElement { elt: e2, omega: b.omega, word });
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out.sort_by(|a, b| {
            (a.omega, a.word.len(), &a.word).cmp(&(b.omega, b.word.len(), &b.word))
        });
        out
    }

    /// All reduced words of `w` (exponential; intended for small lengths).
    pub fn all_reduced_words(&self, w: &ExtAffineWeylElt) -> Vec<Vec<usize>> {
        let len = w.length();
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut words = Vec::new();
        for j in 0..=self.rs.rank {
            let img = w.act_on_affine_root(&self.rs.affine_simple(j));
            if !self.rs.is_positive_affine(&img) {
                let shorter = w.compose(&self.simple[j]);
                for mut prefix in self.all_reduced_words(&shorter) {
                    prefix.push(j);
                    words.push(prefix);
                }
            }
        }
        words
    }

    /// Canonical display `u_i . s_j1 ... s_jl` for report rendering.
    pub fn render(&self, w: &ExtAffineWeylElt) -> String {
        let (u, word) = self.reduced_word(w);
        let mut parts = Vec::new();
        if u != 0 {
            parts.push(format!("u{}", u));
        }
        for j in &word {
            parts.push(format!("s{}", j));
        }
        if parts.is_empty() {
            "e".to_string()
        } else {
            parts.join(".")
        }
    }
}
