//! The group algebra of the weight lattice over the parameter Laurent ring.
//!
//! Exponent vectors are integer coordinates in the fundamental-weight basis,
//! so the finite Weyl action is integer matrix application. Division by
//! binomials is exact top-down elimination under the height-lexicographic
//! term order; it either terminates with an exact quotient or reports that
//! no quotient exists.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;

use super::tau::{TauAssignment, TauLaurent};
use crate::affine_weyl::FiniteWeylElt;
use crate::root_data::RootSystemData;

/// Weight lattice point in fundamental-weight coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// `sign * omega_i`.
    pub fn fundamental(rank: usize, i: usize, sign: i64) -> Self {
        let mut v = vec![0; rank];
        v[i] = sign;
        Weight(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|a| a * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", c)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Height-lexicographic comparison of exponent vectors.
pub fn cmp_height_lex(rs: &RootSystemData, a: &Weight, b: &Weight) -> std::cmp::Ordering {
    rs.weight_height(&a.0).cmp(&rs.weight_height(&b.0)).then_with(|| a.0.cmp(&b.0))
}

/// Sparse element of the group algebra, zero coefficients never stored.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct GroupAlgElt {
    terms: BTreeMap<Weight, TauLaurent>,
}

impl GroupAlgElt {
    pub fn zero() -> Self {
        GroupAlgElt { terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::term(Weight::zero(rank), TauLaurent::one())
    }

    pub fn monomial(w: Weight) -> Self {
        Self::term(w, TauLaurent::one())
    }

    pub fn scalar(rank: usize, c: TauLaurent) -> Self {
        Self::term(Weight::zero(rank), c)
    }

    pub fn term(w: Weight, c: TauLaurent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        GroupAlgElt { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &TauLaurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &Weight) -> TauLaurent {
        self.terms.get(w).cloned().unwrap_or_else(TauLaurent::zero)
    }

    pub fn single_term(&self) -> Option<(&Weight, &TauLaurent)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, w: Weight, c: &TauLaurent) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w.clone()).or_insert_with(TauLaurent::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        GroupAlgElt { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = GroupAlgElt::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                out.add_term(w1.add(w2), &c1.mul(c2));
            }
        }
        out
    }

    pub fn scale_coeff(&self, c: &TauLaurent) -> Self {
        if c.is_zero() {
            return GroupAlgElt::zero();
        }
        GroupAlgElt { terms: self.terms.iter().map(|(w, x)| (w.clone(), x.mul(c))).collect() }
    }

    /// Multiplication by the monomial `X^w`.
    pub fn shift(&self, w: &Weight) -> Self {
        GroupAlgElt { terms: self.terms.iter().map(|(v, c)| (v.add(w), c.clone())).collect() }
    }

    /// Finite Weyl action on exponents.
    pub fn apply_weyl(&self, v: &FiniteWeylElt) -> Self {
        GroupAlgElt {
            terms: self.terms.iter().map(|(w, c)| (Weight(v.apply_weight(&w.0)), c.clone())).collect(),
        }
    }

    /// Leading term under the height-lexicographic order.
    pub fn leading(&self, rs: &RootSystemData) -> Option<(&Weight, &TauLaurent)> {
        self.terms.iter().max_by(|(a, _), (b, _)| cmp_height_lex(rs, a, b))
    }

    pub fn min_height(&self, rs: &RootSystemData) -> Option<i64> {
        self.terms.keys().map(|w| rs.weight_height(&w.0)).min()
    }

    /// Exact division by the binomial `lead_c X^lead_w + trail_c X^trail_w`
    /// (leading strictly higher, leading coefficient a parameter monomial).
    /// Returns `None` when the division is not exact.
    pub fn divide_binomial(
        &self,
        rs: &RootSystemData,
        lead_w: &Weight,
        lead_c: &TauLaurent,
        trail_w: &Weight,
        trail_c: &TauLaurent,
    ) -> Option<GroupAlgElt> {
        if self.is_zero() {
            return Some(GroupAlgElt::zero());
        }
        let delta = rs.weight_height(&lead_w.0) - rs.weight_height(&trail_w.0);
        assert!(delta > 0, "divisor leading term must be strictly higher");
        let lead_inv = lead_c.inverse_monomial().expect("divisor leading coefficient must be a unit monomial");
        let stop = self.min_height(rs).unwrap() + delta;
        let mut r = self.clone();
        let mut q = GroupAlgElt::zero();
        while !r.is_zero() {
            let (lam, c) = {
                let (lam, c) = r.leading(rs).unwrap();
                (lam.clone(), c.clone())
            };
            if rs.weight_height(&lam.0) < stop {
                return None;
            }
            let qc = c.mul(&lead_inv);
            let qw = lam.sub(lead_w);
            q.add_term(qw.clone(), &qc);
            r.add_term(lam, &c.neg());
            r.add_term(qw.add(trail_w), &qc.mul(trail_c).neg());
        }
        Some(q)
    }

    /// Parameter specialization at nonzero rationals, shape preserved.
    pub fn specialize(&self, vals: &TauAssignment) -> GroupAlgElt {
        let mut out = GroupAlgElt::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.specialize_to_constant(vals));
        }
        out
    }

    /// Evaluation-style hash input for golden rendering.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for GroupAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = c.to_string();
            let needs_parens = c.num_terms() > 1;
            if w.is_zero() {
                if needs_parens {
                    write!(f, "({})", coeff)?;
                } else {
                    write!(f, "{}", coeff)?;
                }
            } else if c.is_one() {
                write!(f, "X^{}", w)?;
            } else if needs_parens {
                write!(f, "({})*X^{}", coeff, w)?;
            } else {
                write!(f, "{}*X^{}", coeff, w)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupAlgElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Convenience: the constant `tau_orbit - tau_orbit^-1`.
pub fn tau_minus_inv(orbit: usize) -> TauLaurent {
    TauLaurent::var_pow(orbit, 1).sub(&TauLaurent::var_pow(orbit, -1))
}

/// Rational constant embedding.
pub fn rational_const(rank: usize, c: BigRational) -> GroupAlgElt {
    GroupAlgElt::scalar(rank, TauLaurent::constant(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_data::{build_root_system, Family, RootSystemSpec, Twist};

    fn a1() -> RootSystemData {
        build_root_system(RootSystemSpec::new(Family::A, 1, Twist::Untwisted)).unwrap()
    }

    #[test]
    fn monomial_group_law() {
        let w = Weight(vec![1]);
        let x = GroupAlgElt::monomial(w.clone());
        let xinv = GroupAlgElt::monomial(w.neg());
        assert_eq!(x.mul(&xinv), GroupAlgElt::one(1));
    }

    #[test]
    fn exact_division_examples() {
        let rs = a1();
        // alpha_1 = 2*omega.
        let alpha = Weight(vec![2]);
        let one_minus = GroupAlgElt::one(1).sub(&GroupAlgElt::monomial(alpha.neg()));
        let lead_w = Weight::zero(1);
        let trail_w = alpha.neg();
        let one = TauLaurent::one();
        let neg_one = one.neg();

        // (1 - X^-a) / (1 - X^-a) = 1.
        let q = one_minus.divide_binomial(&rs, &lead_w, &one, &trail_w, &neg_one).unwrap();
        assert_eq!(q, GroupAlgElt::one(1));

        // (X^w - X^-w) / (1 - X^-a) = X^w, confirmed by multiplying back.
        let f = GroupAlgElt::monomial(Weight(vec![1])).sub(&GroupAlgElt::monomial(Weight(vec![-1])));
        let q = f.divide_binomial(&rs, &lead_w, &one, &trail_w, &neg_one).unwrap();
        assert_eq!(q, GroupAlgElt::monomial(Weight(vec![1])));
        assert_eq!(q.mul(&one_minus), f);

        // (1 + X^-a) has no exact quotient.
        let g = GroupAlgElt::one(1).add(&GroupAlgElt::monomial(alpha.neg()));
        assert!(g.divide_binomial(&rs, &lead_w, &one, &trail_w, &neg_one).is_none());
    }

    #[test]
    fn division_matches_multiplication_roundtrip() {
        let rs = a1();
        let alpha = Weight(vec![2]);
        let one_minus = GroupAlgElt::one(1).sub(&GroupAlgElt::monomial(alpha.neg()));
        // Arbitrary polynomial times the divisor divides back exactly.
        let p = GroupAlgElt::term(Weight(vec![3]), TauLaurent::var_pow(0, 1))
            .add(&GroupAlgElt::term(Weight(vec![-2]), TauLaurent::constant(BigRational::new(7.into(), 3.into()))));
        let f = p.mul(&one_minus);
        let q = f
            .divide_binomial(&rs, &Weight::zero(1), &TauLaurent::one(), &alpha.neg(), &TauLaurent::one().neg())
            .unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn display_sorted() {
        let f = GroupAlgElt::term(Weight(vec![1]), TauLaurent::one())
            .add(&GroupAlgElt::term(Weight(vec![-1]), tau_minus_inv(0)));
        assert_eq!(f.to_string(), "(-ts^-1 + ts)*X^(-1) + X^(1)");
    }
}
