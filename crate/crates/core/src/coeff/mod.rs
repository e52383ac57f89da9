//! The coefficient tower: parameter Laurent polynomials, the group algebra
//! of the weight lattice, and its localization at root denominators.
//!
//! A [`CoeffCtx`] fixes the root system together with the parameter
//! environment: fully symbolic, or specialized at nonzero rationals. All
//! localized arithmetic runs inside one context; mixing contexts is a
//! programming error.

use std::sync::Arc;

use crate::root_data::RootSystemData;
use crate::Error;

pub mod group_alg;
pub mod rational;
pub mod tau;

pub use group_alg::{cmp_height_lex, rational_const, tau_minus_inv, GroupAlgElt, Weight};
pub use rational::{factor_poly, factor_terms, DenFactor, FactorKind, RationalFn, UnitParts};
pub use tau::{TauAssignment, TauExp, TauLaurent};

/// Parameter environment: symbolic indeterminates or fixed nonzero values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauEnv {
    Symbolic,
    Specialized(TauAssignment),
}

/// Coefficient context: the ambient root system plus the parameter
/// environment.
#[derive(Clone)]
pub struct CoeffCtx {
    pub rs: Arc<RootSystemData>,
    pub tau: TauEnv,
}

impl CoeffCtx {
    pub fn symbolic(rs: Arc<RootSystemData>) -> Self {
        CoeffCtx { rs, tau: TauEnv::Symbolic }
    }

    pub fn specialized(rs: Arc<RootSystemData>, vals: TauAssignment) -> Result<Self, Error> {
        // The assignment constructor already rejects zeros; reject unit
        // magnitudes too so that the deformed denominator factors stay
        // pairwise coprime and normal forms stay unique.
        use num_traits::One;
        let bad = |v: &num_rational::BigRational| v.is_one() || (-v).is_one();
        if bad(&vals.short) || bad(&vals.long) {
            return Err(Error::ZeroSpecialization);
        }
        Ok(CoeffCtx { rs, tau: TauEnv::Specialized(vals) })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank
    }

    /// Resolves a parameter polynomial in this environment.
    pub fn resolve(&self, t: &TauLaurent) -> TauLaurent {
        match &self.tau {
            TauEnv::Symbolic => t.clone(),
            TauEnv::Specialized(vals) => t.specialize_to_constant(vals),
        }
    }

    /// The parameter of the orbit, resolved.
    pub fn tau_of(&self, orbit: usize) -> TauLaurent {
        self.resolve(&TauLaurent::var_pow(orbit, 1))
    }

    pub fn tau_inv_of(&self, orbit: usize) -> TauLaurent {
        self.resolve(&TauLaurent::var_pow(orbit, -1))
    }

    /// `tau_j - tau_j^-1` for the orbit, resolved.
    pub fn tau_minus_inv_of(&self, orbit: usize) -> TauLaurent {
        self.resolve(&tau_minus_inv(orbit))
    }
}
