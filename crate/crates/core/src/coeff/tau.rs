//! Laurent polynomials in the Hecke parameters.
//!
//! One parameter per Weyl orbit of the gradient system: `ts` for the short
//! orbit and `tl` for the long one. Simply-laced systems use `ts` only.
//! Coefficients are exact rationals; zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Exponent pair `(short, long)`.
pub type TauExp = (i32, i32);

/// Nonzero rational values assigned to the two parameter orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauAssignment {
    pub short: BigRational,
    pub long: BigRational,
}

impl TauAssignment {
    pub fn new(short: BigRational, long: BigRational) -> Result<Self, Error> {
        if short.is_zero() || long.is_zero() {
            return Err(Error::ZeroSpecialization);
        }
        Ok(TauAssignment { short, long })
    }

    pub fn eval(&self, exp: TauExp) -> BigRational {
        // Ratio::pow handles negative exponents on nonzero values.
        self.short.pow(exp.0) * self.long.pow(exp.1)
    }
}

/// Sparse Laurent polynomial in the Hecke parameters.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct TauLaurent {
    terms: BTreeMap<TauExp, BigRational>,
}

impl TauLaurent {
    pub fn zero() -> Self {
        TauLaurent { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0), c);
        }
        TauLaurent { terms }
    }

    pub fn monomial(exp: TauExp, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        TauLaurent { terms }
    }

    /// The parameter of the given orbit (0 short, 1 long) to a power.
    pub fn var_pow(orbit: usize, e: i32) -> Self {
        let exp = match orbit {
            0 => (e, 0),
            1 => (0, e),
            _ => panic!("orbit index must be 0 or 1"),
        };
        Self::monomial(exp, BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&(0, 0)).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TauExp, &BigRational)> {
        self.terms.iter()
    }

    /// `Some((exp, coeff))` when the polynomial is a single monomial.
    pub fn as_monomial(&self) -> Option<(TauExp, BigRational)> {
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            Some((*e, c.clone()))
        } else {
            None
        }
    }

    /// Inverse of a monomial; `None` for sums.
    pub fn inverse_monomial(&self) -> Option<TauLaurent> {
        let (e, c) = self.as_monomial()?;
        Some(Self::monomial((-e.0, -e.1), BigRational::one() / c))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let entry = terms.entry(*e).or_insert_with(BigRational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        TauLaurent { terms }
    }

    pub fn neg(&self) -> Self {
        TauLaurent { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut terms: BTreeMap<TauExp, BigRational> = BTreeMap::new();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = (e1.0 + e2.0, e1.1 + e2.1);
                let entry = terms.entry(e).or_insert_with(BigRational::zero);
                *entry += c1 * c2;
                if entry.is_zero() {
                    terms.remove(&e);
                }
            }
        }
        TauLaurent { terms }
    }

    /// Evaluates at a nonzero assignment (a ring homomorphism to rationals).
    pub fn specialize(&self, vals: &TauAssignment) -> BigRational {
        self.terms.iter().map(|(e, c)| c * vals.eval(*e)).sum()
    }

    /// Same-shape specialization: the result is a constant polynomial.
    pub fn specialize_to_constant(&self, vals: &TauAssignment) -> TauLaurent {
        Self::constant(self.specialize(vals))
    }
}

impl fmt::Display for TauLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            if e.0 != 0 {
                parts.push(if e.0 == 1 { "ts".into() } else { format!("ts^{}", e.0) });
            }
            if e.1 != 0 {
                parts.push(if e.1 == 1 { "tl".into() } else { format!("tl^{}", e.1) });
            }
            let mono = parts.join("*");
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            if mono.is_empty() {
                write!(f, "{}", mag)?;
            } else if mag.is_one() {
                write!(f, "{}", mono)?;
            } else {
                write!(f, "{}*{}", mag, mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TauLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
