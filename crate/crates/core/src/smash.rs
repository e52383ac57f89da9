//! The smash product of the localized group algebra with the extended
//! affine Weyl group: finite sums `sum f_w . w` with the cross relation
//! `(f v)(g w) = f g^{v'} (v w)`, where only the gradient of `v` acts on
//! coefficients. The stored map is the normal form; zero coefficients are
//! never kept.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::affine_weyl::{AffineWeylGroup, ExtAffineWeylElt};
use crate::coeff::{CoeffCtx, GroupAlgElt, RationalFn, TauLaurent, Weight};

#[derive(Clone)]
pub struct SmashElt {
    pub ctx: CoeffCtx,
    terms: BTreeMap<ExtAffineWeylElt, RationalFn>,
}

impl PartialEq for SmashElt {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}
impl Eq for SmashElt {}

impl std::fmt::Debug for SmashElt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SmashElt({} terms)", self.terms.len())
    }
}

impl SmashElt {
    pub fn zero(ctx: &CoeffCtx) -> Self {
        SmashElt { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    /// The multiplicative unit `1 . e`.
    pub fn unit(ctx: &CoeffCtx) -> Self {
        Self::embed_group(ctx, ExtAffineWeylElt::identity(&ctx.rs))
    }

    /// Embedding of the coefficient algebra at the identity.
    pub fn embed_fn(ctx: &CoeffCtx, f: RationalFn) -> Self {
        let mut out = Self::zero(ctx);
        out.add_term(ExtAffineWeylElt::identity(&ctx.rs), f);
        out
    }

    /// Embedding of a group element with unit coefficient.
    pub fn embed_group(ctx: &CoeffCtx, w: ExtAffineWeylElt) -> Self {
        assert!(Arc::ptr_eq(&ctx.rs, &w.rs) || ctx.rs.spec == w.rs.spec, "mixed root systems");
        let mut out = Self::zero(ctx);
        let rank = ctx.rank();
        out.add_term(w, RationalFn::one(rank));
        out
    }

    /// Monomial embedding `X^lambda . e`.
    pub fn embed_monomial(ctx: &CoeffCtx, w: Weight) -> Self {
        Self::embed_fn(ctx, RationalFn::monomial(w))
    }

    /// Scalar embedding from the parameter ring, resolved in the context.
    pub fn embed_tau(ctx: &CoeffCtx, c: TauLaurent) -> Self {
        let resolved = ctx.resolve(&c);
        Self::embed_fn(ctx, RationalFn::scalar(ctx.rank(), resolved))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtAffineWeylElt, &RationalFn)> {
        self.terms.iter()
    }

    pub fn coeff(&self, w: &ExtAffineWeylElt) -> RationalFn {
        self.terms.get(w).cloned().unwrap_or_else(RationalFn::zero)
    }

    pub fn add_term(&mut self, w: ExtAffineWeylElt, f: RationalFn) {
        if f.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(f);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&f, &self.ctx);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, f) in &other.terms {
            out.add_term(w.clone(), f.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        SmashElt {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(w, f)| (w.clone(), f.neg())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Left multiplication by a coefficient.
    pub fn scale(&self, c: &RationalFn) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (w, f) in &self.terms {
            out.add_term(w.clone(), c.mul(f, &self.ctx));
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (v, f) in &self.terms {
            for (w, g) in &other.terms {
                let moved = g.gradient_action(&self.ctx, &v.gradient);
                out.add_term(v.compose(w), f.mul(&moved, &self.ctx));
            }
        }
        out
    }

    /// Conjugation `a . self . a^-1` by a group element.
    pub fn conjugate_by(&self, a: &ExtAffineWeylElt) -> Self {
        let ae = Self::embed_group(&self.ctx, a.clone());
        let ai = Self::embed_group(&self.ctx, a.inverse());
        ae.mul(self).mul(&ai)
    }

    /// Canonical rendering: terms ordered by (length-zero part, length,
    /// reduced word), one chunk per support element.
    pub fn render(&self, group: &AffineWeylGroup) -> String {
        type SortKey = (usize, usize, Vec<usize>);
        let mut rows: Vec<(SortKey, String)> = self
            .terms
            .iter()
            .map(|(w, f)| {
                let (u, word) = group.reduced_word(w);
                let label = group.render(w);
                ((u, word.len(), word), format!("({}) . [{}]", f.render(&self.ctx), label))
            })
            .collect();
        rows.sort();
        if rows.is_empty() {
            return "0".to_string();
        }
        rows.into_iter().map(|(_, s)| s).collect::<Vec<_>>().join(" + ")
    }
}

/// Helper embedding a plain group algebra element.
pub fn embed_poly(ctx: &CoeffCtx, p: GroupAlgElt) -> SmashElt {
    SmashElt::embed_fn(ctx, RationalFn::from_poly(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_weyl::AffineWeylGroup;
    use crate::coeff::tau_minus_inv;
    use crate::root_data::{build_root_system, Family, RootSystemSpec, Twist};

    fn a1() -> (AffineWeylGroup, CoeffCtx) {
        let rs = Arc::new(build_root_system(RootSystemSpec::new(Family::A, 1, Twist::Untwisted)).unwrap());
        let g = AffineWeylGroup::new(Arc::clone(&rs));
        let ctx = CoeffCtx::symbolic(rs);
        (g, ctx)
    }

    #[test]
    fn embeddings_are_morphisms() {
        let (g, ctx) = a1();
        // Group embedding respects products.
        let s0 = SmashElt::embed_group(&ctx, g.simple(0).clone());
        let s1 = SmashElt::embed_group(&ctx, g.simple(1).clone());
        let both = SmashElt::embed_group(&ctx, g.simple(0).compose(g.simple(1)));
        assert_eq!(s0.mul(&s1), both);
        // Function embedding respects products.
        let x = SmashElt::embed_monomial(&ctx, Weight(vec![1]));
        let y = SmashElt::embed_monomial(&ctx, Weight(vec![-1]));
        assert_eq!(x.mul(&y), SmashElt::unit(&ctx));
        // Identity embedding is the unit.
        let e = SmashElt::embed_group(&ctx, g.identity());
        assert_eq!(e.mul(&x), x);
        assert_eq!(x.mul(&e), x);
    }

    #[test]
    fn cross_relation_rank_one() {
        // (1 . s_1)(X^w . e) = X^-w . s_1 because s_1 w = -w.
        let (g, ctx) = a1();
        let s1 = SmashElt::embed_group(&ctx, g.simple(1).clone());
        let x = SmashElt::embed_monomial(&ctx, Weight(vec![1]));
        let lhs = s1.mul(&x);
        let mut rhs = SmashElt::zero(&ctx);
        rhs.add_term(g.simple(1).clone(), RationalFn::monomial(Weight(vec![-1])));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn translations_commute_with_coefficients() {
        let (g, ctx) = a1();
        let t = SmashElt::embed_group(&ctx, ExtAffineWeylElt::translation(&g.rs, vec![1]));
        for wt in [Weight(vec![1]), Weight(vec![-3]), Weight(vec![2])] {
            let x = SmashElt::embed_monomial(&ctx, wt);
            assert_eq!(t.mul(&x), x.mul(&t));
        }
        // Also with a genuine denominator.
        let alpha_idx = g.rs.simple_indices[0];
        let h = RationalFn::new(
            &ctx,
            crate::coeff::GroupAlgElt::scalar(1, tau_minus_inv(0)),
            std::collections::BTreeMap::from([(crate::coeff::DenFactor::plain(alpha_idx), 1)]),
        );
        let he = SmashElt::embed_fn(&ctx, h);
        assert_eq!(t.mul(&he), he.mul(&t));
    }

    #[test]
    fn conjugation_moves_coefficients() {
        let (g, ctx) = a1();
        let h = RationalFn::scalar(1, tau_minus_inv(0)).mul(&RationalFn::monomial(Weight(vec![1])), &ctx);
        let f = SmashElt::embed_fn(&ctx, h.clone());
        for w in [g.simple(0).clone(), g.simple(1).clone(), ExtAffineWeylElt::translation(&g.rs, vec![1])] {
            let conj = f.conjugate_by(&w);
            let expected = SmashElt::embed_fn(&ctx, h.gradient_action(&ctx, &w.gradient));
            assert_eq!(conj, expected);
        }
    }

    #[test]
    fn associativity_on_sampled_triples() {
        let (g, ctx) = a1();
        let mk = |w: &ExtAffineWeylElt, wt: i64, tau_e: i32| -> SmashElt {
            let coeff = RationalFn::from_poly(GroupAlgElt::term(
                Weight(vec![wt]),
                TauLaurent::var_pow(0, tau_e),
            ));
            SmashElt::embed_fn(&ctx, coeff).mul(&SmashElt::embed_group(&ctx, w.clone()))
        };
        let elems = [
            mk(g.simple(0), 1, 1),
            mk(g.simple(1), -2, -1),
            mk(&g.omega()[1].elt, 3, 2),
            mk(&g.identity(), 0, 0).scale(&RationalFn::scalar(1, tau_minus_inv(0))),
        ];
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                }
            }
        }
    }

    #[test]
    fn conjugation_identity_for_functions() {
        // w . f . w^-1 = (gradient action of w on f) as coefficients.
        let rs = Arc::new(build_root_system(RootSystemSpec::new(Family::C, 2, Twist::Twisted)).unwrap());
        let g = AffineWeylGroup::new(Arc::clone(&rs));
        let ctx = CoeffCtx::symbolic(rs);
        let f = RationalFn::monomial(Weight(vec![1, -1]));
        let fe = SmashElt::embed_fn(&ctx, f.clone());
        let w = g.simple(0).compose(g.simple(2));
        let lhs = fe.conjugate_by(&w);
        let rhs = SmashElt::embed_fn(&ctx, f.gradient_action(&ctx, &w.gradient));
        assert_eq!(lhs, rhs);
    }
}
