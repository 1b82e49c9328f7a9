//! Homogeneous polynomials with exact rational coefficients.
//!
//! Every polynomial lives in one fixed degree; addition checks degrees and
//! canonical form (no stored zero coefficient) is maintained by construction.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::monomial::{Monomial, MonomialError};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A homogeneous polynomial: a finite map from equal-degree monomials to
/// nonzero rational coefficients. The zero polynomial of a degree has an
/// empty term map.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousPoly {
    dim: usize,
    degree: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl HomogeneousPoly {
    pub fn zero(dim: usize, degree: u32) -> Self {
        HomogeneousPoly {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(mono: Monomial) -> Self {
        Self::from_terms(mono.dim(), mono.degree(), vec![(mono, Rational::one())]).unwrap()
    }

    pub fn from_terms(
        dim: usize,
        degree: u32,
        terms: Vec<(Monomial, Rational)>,
    ) -> Result<Self, MonomialError> {
        let mut map: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (mono, coeff) in terms {
            if mono.dim() != dim {
                return Err(MonomialError::DimensionMismatch(dim, mono.dim()));
            }
            if mono.degree() != degree {
                return Err(MonomialError::DegreeMismatch(degree, mono.degree()));
            }
            if coeff.is_zero() {
                continue;
            }
            let entry = map.entry(mono).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomogeneousPoly {
            dim,
            degree,
            terms: map,
        })
    }

    /// Sum of distinct monomials with coefficient 1.
    pub fn monomial_sum(dim: usize, degree: u32, monos: &[Monomial]) -> Self {
        Self::from_terms(
            dim,
            degree,
            monos.iter().map(|m| (m.clone(), Rational::one())).collect(),
        )
        .expect("mixed degrees in monomial sum")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending revlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// The revlex-largest monomial with nonzero coefficient.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn checked_add(&self, other: &HomogeneousPoly) -> Result<HomogeneousPoly, MonomialError> {
        if self.dim != other.dim {
            return Err(MonomialError::DimensionMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(MonomialError::DegreeMismatch(self.degree, other.degree));
        }
        let mut terms = self.terms.clone();
        for (mono, coeff) in &other.terms {
            let entry = terms.entry(mono.clone()).or_insert_with(Rational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(HomogeneousPoly {
            dim: self.dim,
            degree: self.degree,
            terms,
        })
    }

    pub fn add(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        self.checked_add(other)
            .expect("homogeneous degree mismatch")
    }

    pub fn sub(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, factor: &Rational) -> HomogeneousPoly {
        if factor.is_zero() {
            return HomogeneousPoly::zero(self.dim, self.degree);
        }
        HomogeneousPoly {
            dim: self.dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c * factor))
                .collect(),
        }
    }

    /// Multiplication by a monomial shifts the degree by its degree.
    pub fn mul_monomial(&self, mono: &Monomial) -> HomogeneousPoly {
        assert_eq!(self.dim, mono.dim(), "dimension mismatch");
        HomogeneousPoly {
            dim: self.dim,
            degree: self.degree + mono.degree(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.mul(mono), c.clone()))
                .collect(),
        }
    }

    pub fn mul(&self, other: &HomogeneousPoly) -> HomogeneousPoly {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut terms: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = ma.mul(mb);
                let entry = terms.entry(prod).or_insert_with(Rational::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomogeneousPoly {
            dim: self.dim,
            degree: self.degree + other.degree,
            terms,
        }
    }

    /// Substitutes variables by 1-based reindexing into a larger ring, leaving
    /// exponents untouched. Used to embed `k[x1..xe]` into `k[x1..xd]`.
    pub fn embed(&self, dim: usize) -> HomogeneousPoly {
        assert!(dim >= self.dim);
        HomogeneousPoly {
            dim,
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = m.exps().to_vec();
                    exps.resize(dim, 0);
                    (Monomial::new(exps), c.clone())
                })
                .collect(),
        }
    }

    /// Sets the variables `x{keep+1}..x{d}` to zero, keeping the ambient ring.
    pub fn truncate_variables(&self, keep: usize) -> HomogeneousPoly {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.max_support().is_none_or(|s| s <= keep) {
                terms.insert(m.clone(), c.clone());
            }
        }
        HomogeneousPoly {
            dim: self.dim,
            degree: self.degree,
            terms,
        }
    }
}

fn fmt_coeff_mono(f: &mut fmt::Formatter<'_>, coeff: &Rational, mono: &Monomial) -> fmt::Result {
    if mono.is_one() {
        return write!(f, "{}", coeff);
    }
    if coeff.is_one() {
        write!(f, "{}", mono)
    } else {
        write!(f, "{}*{}", coeff, mono)
    }
}

impl fmt::Display for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending revlex, leading term first
        for (i, (mono, coeff)) in self.terms.iter().rev().enumerate() {
            if i == 0 {
                if coeff.is_negative() {
                    write!(f, "-")?;
                }
            } else if coeff.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            fmt_coeff_mono(f, &coeff.abs(), mono)?;
        }
        Ok(())
    }
}

impl fmt::Debug for HomogeneousPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
