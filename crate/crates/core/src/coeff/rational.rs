//! Rational functions over the group algebra, localized at root factors.
//!
//! Denominators are multisets of canonical binomial factors indexed by a
//! positive root `b`:
//!
//! * `Plain`:       `1 - X^-b`
//! * `Deformed`:    `t_b^-1 - t_b X^-b`
//! * `DeformedInv`: `t_b - t_b^-1 X^-b`
//!
//! The plain factors generate the classical localization; the deformed pair
//! appears only when triangular expansions are inverted. Normal form: no
//! denominator factor exactly divides the numerator, and every factor is
//! oriented at a positive root (negative orientations are rewritten, with
//! the unit absorbed into the numerator).

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use super::group_alg::{GroupAlgElt, Weight};
use super::tau::{TauAssignment, TauExp, TauLaurent};
use super::CoeffCtx;
use crate::affine_weyl::FiniteWeylElt;

/// Denominator factor shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    Plain,
    Deformed,
    DeformedInv,
}

/// A canonical denominator factor: a shape at a positive root index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DenFactor {
    pub kind: FactorKind,
    pub root: usize,
}

impl DenFactor {
    pub fn plain(root: usize) -> Self {
        DenFactor { kind: FactorKind::Plain, root }
    }
}

/// The factor as an explicit two-term polynomial, split as
/// (leading weight, leading coeff, trailing weight, trailing coeff).
pub fn factor_terms(ctx: &CoeffCtx, f: DenFactor) -> (Weight, TauLaurent, Weight, TauLaurent) {
    let rs = &ctx.rs;
    assert!(f.root < rs.num_positive, "denominator factors must sit at positive roots");
    let beta = Weight(rs.roots[f.root].weight_coords.clone());
    let orbit = rs.orbit_of(f.root);
    let lead_w = Weight::zero(rs.rank);
    let trail_w = beta.neg();
    match f.kind {
        FactorKind::Plain => (lead_w, TauLaurent::one(), trail_w, TauLaurent::one().neg()),
        FactorKind::Deformed => (lead_w, ctx.tau_inv_of(orbit), trail_w, ctx.tau_of(orbit).neg()),
        FactorKind::DeformedInv => (lead_w, ctx.tau_of(orbit), trail_w, ctx.tau_inv_of(orbit).neg()),
    }
}

/// The factor as a group algebra element.
pub fn factor_poly(ctx: &CoeffCtx, f: DenFactor) -> GroupAlgElt {
    let (lw, lc, tw, tc) = factor_terms(ctx, f);
    GroupAlgElt::term(lw, lc).add(&GroupAlgElt::term(tw, tc))
}

fn divide_by_factor(ctx: &CoeffCtx, num: &GroupAlgElt, f: DenFactor) -> Option<GroupAlgElt> {
    let (lw, lc, tw, tc) = factor_terms(ctx, f);
    num.divide_binomial(&ctx.rs, &lw, &lc, &tw, &tc)
}

/// A normalized rational function `num / prod(factors)`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct RationalFn {
    num: GroupAlgElt,
    den: BTreeMap<DenFactor, u32>,
}

impl RationalFn {
    pub fn zero() -> Self {
        RationalFn { num: GroupAlgElt::zero(), den: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(GroupAlgElt::one(rank))
    }

    pub fn from_poly(num: GroupAlgElt) -> Self {
        RationalFn { num, den: BTreeMap::new() }
    }

    pub fn monomial(w: Weight) -> Self {
        Self::from_poly(GroupAlgElt::monomial(w))
    }

    pub fn scalar(rank: usize, c: TauLaurent) -> Self {
        Self::from_poly(GroupAlgElt::scalar(rank, c))
    }

    /// Builds `num / prod(factors)` and normalizes.
    pub fn new(ctx: &CoeffCtx, num: GroupAlgElt, den: BTreeMap<DenFactor, u32>) -> Self {
        let mut out = RationalFn { num, den };
        out.den.retain(|_, m| *m > 0);
        out.normalize(ctx);
        out
    }

    pub fn numerator(&self) -> &GroupAlgElt {
        &self.num
    }

    pub fn denominator(&self) -> &BTreeMap<DenFactor, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.single_term().is_some_and(|(w, c)| w.is_zero() && c.is_one())
    }

    /// `Some(polynomial)` when no denominator factors remain.
    pub fn as_poly(&self) -> Option<&GroupAlgElt> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    fn normalize(&mut self, ctx: &CoeffCtx) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        loop {
            let mut progressed = false;
            let keys: Vec<DenFactor> = self.den.keys().copied().collect();
            for f in keys {
                if let Some(q) = divide_by_factor(ctx, &self.num, f) {
                    self.num = q;
                    let m = self.den.get_mut(&f).unwrap();
                    *m -= 1;
                    if *m == 0 {
                        self.den.remove(&f);
                    }
                    progressed = true;
                    break;
                }
            }
            if !progressed {
                return;
            }
        }
    }

    pub fn add(&self, other: &Self, ctx: &CoeffCtx) -> Self {
        let mut den: BTreeMap<DenFactor, u32> = self.den.clone();
        for (f, m) in &other.den {
            let e = den.entry(*f).or_insert(0);
            *e = (*e).max(*m);
        }
        let scale_up = |x: &RationalFn| -> GroupAlgElt {
            let mut acc = x.num.clone();
            for (f, m) in &den {
                let have = x.den.get(f).copied().unwrap_or(0);
                for _ in have..*m {
                    acc = acc.mul(&factor_poly(ctx, *f));
                }
            }
            acc
        };
        Self::new(ctx, scale_up(self).add(&scale_up(other)), den)
    }

    pub fn neg(&self) -> Self {
        RationalFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self, ctx: &CoeffCtx) -> Self {
        self.add(&other.neg(), ctx)
    }

    pub fn mul(&self, other: &Self, ctx: &CoeffCtx) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(*f).or_insert(0) += m;
        }
        Self::new(ctx, self.num.mul(&other.num), den)
    }

    pub fn mul_poly(&self, p: &GroupAlgElt, ctx: &CoeffCtx) -> Self {
        Self::new(ctx, self.num.mul(p), self.den.clone())
    }

    /// Action of a finite Weyl element on exponents, with denominator
    /// factors re-oriented at positive roots.
    pub fn gradient_action(&self, ctx: &CoeffCtx, v: &FiniteWeylElt) -> Self {
        let rs = &ctx.rs;
        let mut num = self.num.apply_weyl(v);
        let mut den: BTreeMap<DenFactor, u32> = BTreeMap::new();
        for (f, m) in &self.den {
            let img = v.apply_root(f.root);
            if rs.roots[img].is_positive() {
                *den.entry(DenFactor { kind: f.kind, root: img }).or_insert(0) += m;
            } else {
                let pos = rs.negation[img];
                // Negative orientation: each shape flips to its partner at
                // the opposite root, contributing the unit -X^-b per power.
                let flipped_kind = match f.kind {
                    FactorKind::Plain => FactorKind::Plain,
                    FactorKind::Deformed => FactorKind::DeformedInv,
                    FactorKind::DeformedInv => FactorKind::Deformed,
                };
                *den.entry(DenFactor { kind: flipped_kind, root: pos }).or_insert(0) += m;
                let beta = Weight(rs.roots[pos].weight_coords.clone());
                let unit = GroupAlgElt::term(beta.neg(), TauLaurent::one().neg());
                for _ in 0..*m {
                    num = num.mul(&unit);
                }
            }
        }
        Self::new(ctx, num, den)
    }

    /// Parameter specialization of the numerator. The result belongs to the
    /// correspondingly specialized context, where the denominator factor
    /// keys are interpreted at the same assignment.
    pub fn specialize(&self, vals: &TauAssignment) -> Self {
        RationalFn { num: self.num.specialize(vals), den: self.den.clone() }
    }

    /// Recognized decomposition of a localized unit:
    /// `scalar * tau^exp * X^weight * prod(factors)` over the numerator,
    /// with the stored denominator untouched.
    pub fn recognize_unit(&self, ctx: &CoeffCtx) -> Option<UnitParts> {
        if self.num.is_zero() {
            return None;
        }
        let mut n = self.num.clone();
        let mut factors: BTreeMap<DenFactor, u32> = BTreeMap::new();
        'outer: loop {
            if let Some((w, c)) = n.single_term() {
                let (tau, scalar) = c.as_monomial()?;
                return Some(UnitParts { scalar, tau, weight: w.clone(), factors });
            }
            for root in 0..ctx.rs.num_positive {
                for kind in [FactorKind::Plain, FactorKind::Deformed, FactorKind::DeformedInv] {
                    let f = DenFactor { kind, root };
                    if let Some(q) = divide_by_factor(ctx, &n, f) {
                        n = q;
                        *factors.entry(f).or_insert(0) += 1;
                        continue 'outer;
                    }
                }
            }
            return None;
        }
    }

    /// True when the element is a unit of the fully localized algebra.
    pub fn is_localized_unit(&self, ctx: &CoeffCtx) -> bool {
        self.recognize_unit(ctx).is_some()
    }

    /// Inverse of a recognized unit; `None` when the element is not one.
    pub fn invert_unit(&self, ctx: &CoeffCtx) -> Option<RationalFn> {
        let parts = self.recognize_unit(ctx)?;
        let inv_mono = TauLaurent::monomial(
            (-parts.tau.0, -parts.tau.1),
            BigRational::one() / parts.scalar.clone(),
        );
        let mut num = GroupAlgElt::term(parts.weight.neg(), inv_mono);
        for (f, m) in &self.den {
            for _ in 0..*m {
                num = num.mul(&factor_poly(ctx, *f));
            }
        }
        Some(Self::new(ctx, num, parts.factors))
    }

    /// Canonical rendering (numerator in term order, factors sorted).
    pub fn render(&self, ctx: &CoeffCtx) -> String {
        let rs = &ctx.rs;
        let num = self.num.to_string();
        if self.den.is_empty() {
            return num;
        }
        let mut den = String::new();
        for (f, m) in &self.den {
            let beta = Weight(rs.roots[f.root].weight_coords.clone());
            let orbit = rs.orbit_of(f.root);
            let t = if orbit == 0 { "ts" } else { "tl" };
            let base = match f.kind {
                FactorKind::Plain => format!("(1 - X^{})", beta.neg()),
                FactorKind::Deformed => format!("({}^-1 - {}*X^{})", t, t, beta.neg()),
                FactorKind::DeformedInv => format!("({} - {}^-1*X^{})", t, t, beta.neg()),
            };
            if *m == 1 {
                den.push_str(&base);
            } else {
                den.push_str(&format!("{}^{}", base, m));
            }
        }
        format!("[{}] / {}", num, den)
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFn[{} / {:?}]", self.num, self.den)
    }
}

/// Decomposition witness of a localized unit.
#[derive(Debug, Clone)]
pub struct UnitParts {
    pub scalar: BigRational,
    pub tau: TauExp,
    pub weight: Weight,
    pub factors: BTreeMap<DenFactor, u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::group_alg::tau_minus_inv;
    use crate::root_data::{build_root_system, Family, RootSystemSpec, Twist};
    use std::sync::Arc;

    fn a1() -> CoeffCtx {
        let rs = Arc::new(build_root_system(RootSystemSpec::new(Family::A, 1, Twist::Untwisted)).unwrap());
        CoeffCtx::symbolic(rs)
    }

    fn c2() -> CoeffCtx {
        let rs = Arc::new(build_root_system(RootSystemSpec::new(Family::C, 2, Twist::Twisted)).unwrap());
        CoeffCtx::symbolic(rs)
    }

    #[test]
    fn inverse_factor_cancels() {
        let ctx = a1();
        let alpha_idx = ctx.rs.simple_indices[0];
        let f = DenFactor::plain(alpha_idx);
        let inv = RationalFn::new(&ctx, GroupAlgElt::one(1), BTreeMap::from([(f, 1)]));
        let product = inv.mul(&RationalFn::from_poly(factor_poly(&ctx, f)), &ctx);
        assert!(product.is_one());
    }

    #[test]
    fn division_absorbs_into_numerator() {
        // (X^w - X^-w) / (1 - X^-a) normalizes to the Laurent polynomial X^w.
        let ctx = a1();
        let alpha_idx = ctx.rs.simple_indices[0];
        let num = GroupAlgElt::monomial(Weight(vec![1])).sub(&GroupAlgElt::monomial(Weight(vec![-1])));
        let f = RationalFn::new(&ctx, num, BTreeMap::from([(DenFactor::plain(alpha_idx), 1)]));
        assert_eq!(f.as_poly().unwrap(), &GroupAlgElt::monomial(Weight(vec![1])));
    }

    #[test]
    fn addition_common_denominator() {
        let ctx = a1();
        let alpha_idx = ctx.rs.simple_indices[0];
        let f = DenFactor::plain(alpha_idx);
        let h = RationalFn::new(&ctx, GroupAlgElt::scalar(1, tau_minus_inv(0)), BTreeMap::from([(f, 1)]));
        let diff = h.sub(&h, &ctx);
        assert!(diff.is_zero());
        let twice = h.add(&h, &ctx);
        let two = RationalFn::scalar(1, TauLaurent::constant(BigRational::from_integer(2.into())));
        assert_eq!(twice, h.mul(&two, &ctx));
    }

    #[test]
    fn gradient_action_flips_orientation() {
        // s_1 sends (1 - X^-a)^-1 to (1 - X^a)^-1 = -X^-a (1 - X^-a)^-1.
        let ctx = a1();
        let alpha_idx = ctx.rs.simple_indices[0];
        let s1 = FiniteWeylElt::simple(&ctx.rs, 0);
        let f = RationalFn::new(&ctx, GroupAlgElt::one(1), BTreeMap::from([(DenFactor::plain(alpha_idx), 1)]));
        let g = f.gradient_action(&ctx, &s1);
        let expected = RationalFn::new(
            &ctx,
            GroupAlgElt::term(Weight(vec![-2]), TauLaurent::one().neg()),
            BTreeMap::from([(DenFactor::plain(alpha_idx), 1)]),
        );
        assert_eq!(g, expected);
        // Applying the action twice returns the original form exactly.
        assert_eq!(g.gradient_action(&ctx, &s1), f);
    }

    #[test]
    fn unit_recognition_positive_and_negative() {
        let ctx = a1();
        let alpha_idx = ctx.rs.simple_indices[0];
        let alpha = Weight(vec![2]);
        // (t^-1 - t X^-a) / (1 - X^-a) is a unit with an exact inverse.
        let num = GroupAlgElt::term(Weight::zero(1), TauLaurent::var_pow(0, -1))
            .sub(&GroupAlgElt::term(alpha.neg(), TauLaurent::var_pow(0, 1)));
        let f = RationalFn::new(&ctx, num, BTreeMap::from([(DenFactor::plain(alpha_idx), 1)]));
        let parts = f.recognize_unit(&ctx).unwrap();
        assert_eq!(parts.factors.len(), 1);
        let inv = f.invert_unit(&ctx).unwrap();
        assert!(f.mul(&inv, &ctx).is_one());

        // 1 + X^-a is not a unit.
        let g = RationalFn::from_poly(GroupAlgElt::one(1).add(&GroupAlgElt::monomial(alpha.neg())));
        assert!(!g.is_localized_unit(&ctx));
        assert!(g.invert_unit(&ctx).is_none());

        // A pure monomial with rational scalar is a unit.
        let m = RationalFn::from_poly(GroupAlgElt::term(
            Weight(vec![3]),
            TauLaurent::monomial((2, 0), BigRational::new(3.into(), 7.into())),
        ));
        assert!(m.is_localized_unit(&ctx));
        assert!(m.mul(&m.invert_unit(&ctx).unwrap(), &ctx).is_one());
    }

    #[test]
    fn unit_recognition_with_non_primitive_root() {
        // In C2 the long roots are twice a lattice vector, so plain factors
        // split; the recognizer must still decompose products exactly.
        let ctx = c2();
        let rs = &ctx.rs;
        let long_pos = (0..rs.num_positive).find(|&r| rs.roots[r].long).unwrap();
        let short_pos = (0..rs.num_positive).find(|&r| !rs.roots[r].long).unwrap();
        let prod = factor_poly(&ctx, DenFactor::plain(long_pos))
            .mul(&factor_poly(&ctx, DenFactor { kind: FactorKind::Deformed, root: short_pos }));
        let f = RationalFn::from_poly(prod);
        let parts = f.recognize_unit(&ctx).unwrap();
        assert_eq!(parts.factors.values().sum::<u32>(), 2);
        let inv = f.invert_unit(&ctx).unwrap();
        assert!(f.mul(&inv, &ctx).is_one());
    }

    #[test]
    fn specialized_context_unit_inversion() {
        // Unit recognition and inversion also run with parameters fixed at
        // nonzero rationals away from +-1.
        let rs = Arc::new(build_root_system(RootSystemSpec::new(Family::A, 1, Twist::Untwisted)).unwrap());
        let vals = TauAssignment::new(
            BigRational::new(2.into(), 1.into()),
            BigRational::new(3.into(), 1.into()),
        )
        .unwrap();
        let sym = CoeffCtx::symbolic(Arc::clone(&rs));
        let spe = CoeffCtx::specialized(rs, vals.clone()).unwrap();
        let alpha_idx = spe.rs.simple_indices[0];
        let num_sym = GroupAlgElt::term(Weight::zero(1), TauLaurent::var_pow(0, -1))
            .sub(&GroupAlgElt::term(Weight(vec![-2]), TauLaurent::var_pow(0, 1)));
        let f_sym = RationalFn::new(&sym, num_sym, BTreeMap::from([(DenFactor::plain(alpha_idx), 1)]));
        let f_spe = f_sym.specialize(&vals);
        let inv = f_spe.invert_unit(&spe).unwrap();
        assert!(f_spe.mul(&inv, &spe).is_one());
    }

    #[test]
    fn specialized_context_rejects_unit_magnitudes() {
        let rs = Arc::new(build_root_system(RootSystemSpec::new(Family::A, 1, Twist::Untwisted)).unwrap());
        let one = BigRational::one();
        let vals = TauAssignment::new(one.clone(), BigRational::new(3.into(), 1.into())).unwrap();
        assert!(CoeffCtx::specialized(Arc::clone(&rs), vals).is_err());
        let vals = TauAssignment::new(-one, BigRational::new(3.into(), 1.into())).unwrap();
        assert!(CoeffCtx::specialized(rs, vals).is_err());
    }

    #[test]
    fn specialization_commutes_with_multiplication() {
        let sym = a1();
        let rs = Arc::clone(&sym.rs);
        let alpha_idx = rs.simple_indices[0];
        let vals = TauAssignment::new(
            BigRational::new(2.into(), 1.into()),
            BigRational::new(3.into(), 1.into()),
        )
        .unwrap();
        let spe = CoeffCtx::specialized(rs, vals.clone()).unwrap();
        let h = RationalFn::new(&sym, GroupAlgElt::scalar(1, tau_minus_inv(0)), BTreeMap::from([(DenFactor::plain(alpha_idx), 1)]));
        let x = RationalFn::monomial(Weight(vec![1]));
        let lhs = h.mul(&x, &sym).specialize(&vals);
        let rhs = h.specialize(&vals).mul(&x.specialize(&vals), &spe);
        assert_eq!(lhs, rhs);
        // (ts - ts^-1) at ts = 2 is 3/2.
        assert_eq!(
            GroupAlgElt::scalar(1, tau_minus_inv(0)).specialize(&vals),
            GroupAlgElt::scalar(1, TauLaurent::constant(BigRational::new(3.into(), 2.into())))
        );
    }
}
