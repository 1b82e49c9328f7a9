//! Monomials as dense exponent vectors, together with the graded reverse
//! lexicographic order that fixes every basis and report in this crate.
//!
//! The order is defined within a single degree: `m < m'` exactly when, at the
//! largest variable index where the exponents differ, `m` has the *larger*
//! exponent. Across degrees we compare by total degree first, which makes
//! [`Monomial`] totally ordered and usable as a `BTreeMap` key.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),
    #[error("cannot parse monomial {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// A monomial in `d` variables. The ambient dimension is the length of the
/// exponent vector and is checked on every binary operation; the total degree
/// is cached at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "ambient dimension must be at least 1");
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    /// The empty monomial `1` in `dim` variables.
    pub fn one(dim: usize) -> Self {
        Monomial::new(vec![0; dim])
    }

    /// The variable `x{index}` (1-based).
    pub fn variable(dim: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= dim, "variable index out of range");
        let mut exps = vec![0; dim];
        exps[index - 1] = 1;
        Monomial::new(exps)
    }

    /// The quadratic monomial `x{i}*x{j}` (1-based, `i == j` allowed).
    pub fn quadratic(dim: usize, i: usize, j: usize) -> Self {
        assert!(i >= 1 && i <= dim && j >= 1 && j <= dim);
        let mut exps = vec![0; dim];
        exps[i - 1] += 1;
        exps[j - 1] += 1;
        Monomial::new(exps)
    }

    /// Builds a monomial from 1-based variable indices with multiplicity.
    pub fn from_factors(dim: usize, factors: &[usize]) -> Self {
        let mut exps = vec![0u32; dim];
        for &f in factors {
            assert!(f >= 1 && f <= dim, "factor index out of range");
            exps[f - 1] += 1;
        }
        Monomial::new(exps)
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// Exponent of `x{index}` (1-based).
    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index - 1]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Smallest 1-based variable index dividing the monomial, `None` for `1`.
    pub fn min_support(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e > 0).map(|i| i + 1)
    }

    /// Largest 1-based variable index dividing the monomial, `None` for `1`.
    pub fn max_support(&self) -> Option<usize> {
        self.exps.iter().rposition(|&e| e > 0).map(|i| i + 1)
    }

    /// 1-based variable indices with multiplicity, ascending.
    pub fn factor_list(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree as usize);
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(i + 1);
            }
        }
        out
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial, MonomialError> {
        if self.dim() != other.dim() {
            return Err(MonomialError::DimensionMismatch(self.dim(), other.dim()));
        }
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Monomial::new(exps))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other)
            .expect("monomial dimension mismatch")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.dim() == other.dim() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn divide_into(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial::new(
            other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        ))
    }

    /// The Borel exchange `m * x{to} / x{from}` for `to < from` when `x{from}`
    /// divides `m`; `None` when it does not apply.
    pub fn exchange(&self, to: usize, from: usize) -> Option<Monomial> {
        if to >= from || self.exps[from - 1] == 0 {
            return None;
        }
        let mut exps = self.exps.clone();
        exps[from - 1] -= 1;
        exps[to - 1] += 1;
        Some(Monomial::new(exps))
    }
}

/// Reverse lexicographic comparison of two monomials of one degree.
pub fn revlex_compare(a: &Monomial, b: &Monomial) -> Result<Ordering, MonomialError> {
    if a.dim() != b.dim() {
        return Err(MonomialError::DimensionMismatch(a.dim(), b.dim()));
    }
    if a.degree() != b.degree() {
        return Err(MonomialError::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(intra_degree_revlex(a, b))
}

fn intra_degree_revlex(a: &Monomial, b: &Monomial) -> Ordering {
    for i in (0..a.exps.len()).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => continue,
            // larger exponent at the last differing index means smaller monomial
            Ordering::Greater => return Ordering::Less,
            Ordering::Less => return Ordering::Greater,
        }
    }
    Ordering::Equal
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.dim(), other.dim(), "monomial dimension mismatch");
        self.degree
            .cmp(&other.degree)
            .then_with(|| intra_degree_revlex(self, other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given degree in `dim` variables, ascending in the
/// reverse lexicographic order. The list has `C(dim+degree-1, degree)`
/// entries and is the column order of every graded matrix.
pub fn enumerate_degree(dim: usize, degree: u32) -> Vec<Monomial> {
    assert!(dim >= 1);
    let mut out = Vec::with_capacity(binomial(dim + degree as usize - 1, degree as usize));
    let mut exps = vec![0u32; dim];
    fill_ascending(&mut out, &mut exps, dim, degree);
    out
}

fn fill_ascending(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, vars: usize, remaining: u32) {
    if vars == 1 {
        exps[0] = remaining;
        out.push(Monomial::new(exps.clone()));
        exps[0] = 0;
        return;
    }
    // Descending exponent on the last variable yields ascending revlex.
    for e in (0..=remaining).rev() {
        exps[vars - 1] = e;
        fill_ascending(out, exps, vars - 1, remaining - e);
    }
    exps[vars - 1] = 0;
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Parses the `x1^2*x3` text format (`1` for the empty monomial).
pub fn parse_monomial(text: &str, dim: usize) -> Result<Monomial, MonomialError> {
    let err = |reason: &str| MonomialError::Parse {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(err("empty string"));
    }
    if trimmed == "1" {
        return Ok(Monomial::one(dim));
    }
    let mut exps = vec![0u32; dim];
    for factor in trimmed.split('*') {
        let factor = factor.trim();
        let rest = factor
            .strip_prefix('x')
            .ok_or_else(|| err("factor must start with 'x'"))?;
        let (idx_str, exp_str) = match rest.split_once('^') {
            Some((i, e)) => (i, Some(e)),
            None => (rest, None),
        };
        let index: usize = idx_str.parse().map_err(|_| err("invalid variable index"))?;
        if index < 1 || index > dim {
            return Err(err(&format!(
                "variable index {index} out of range 1..={dim}"
            )));
        }
        let exp: u32 = match exp_str {
            Some(e) => e.parse().map_err(|_| err("invalid exponent"))?,
            None => 1,
        };
        if exp == 0 {
            return Err(err("exponent must be positive"));
        }
        exps[index - 1] += exp;
    }
    Ok(Monomial::new(exps))
}
