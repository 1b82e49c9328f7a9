//! The diagonal reduction of a strongly stable degree-two ideal, and the
//! ordered monomial walk that certifies its containment properties.
//!
//! The reduction is generated by the sums of generators along each tableau
//! diagonal. The walk (`OrderedStrata::generate`) visits, in a specific
//! order, every monomial of degree `h+1` whose smallest variable is `x{h}`
//! for `h = 1..=g`; each stratum comes out in ascending reverse
//! lexicographic order, which is verified rather than assumed.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::membership::{IdealPresentation, MembershipCertificate};
use crate::monomial::{binomial, enumerate_degree, Monomial};
use crate::poly::HomogeneousPoly;
use crate::stable::{StableError, StableIdeal2};

#[derive(Debug, Error)]
pub enum DiagonalError {
    #[error(transparent)]
    Stable(#[from] StableError),
    #[error("ordering walk exceeded the termination cap of {0} steps")]
    TerminationCap(usize),
    #[error("ordering walk revisited {0}")]
    Revisited(String),
    #[error("ordering walk reached a state not covered by the step rules: {0}")]
    UncoveredState(String),
    #[error("pure power of x{h} appeared in stratum {h} before the stratum was exhausted")]
    PurePowerNotLast { h: usize },
    #[error("stratum offset k={k} is out of range for an element of stratum {h}")]
    BadStratumOffset { h: usize, k: usize },
    #[error("no element of stratum {lower} follows position {position}")]
    MissingLowerElement { position: usize, lower: usize },
    #[error("closed-form successor {expected} disagrees with the scanned element {found}")]
    SuccessorMismatch { expected: String, found: String },
    #[error("{0} has no membership certificate in the diagonal reduction")]
    NonMembership(String),
}

/// First point where a stratum of the walk disagrees with its revlex target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataMismatch {
    pub stratum: usize,
    pub position: usize,
    pub expected: Option<Monomial>,
    pub found: Option<Monomial>,
}

/// The diagonal reduction: one generator per tableau diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalReduction {
    dim: usize,
    betas: Vec<usize>,
    generators: Vec<HomogeneousPoly>,
}

impl DiagonalReduction {
    pub fn from_ideal(ideal: &StableIdeal2) -> Result<Self, StableError> {
        if !ideal.is_full_width() {
            return Err(StableError::NotFullWidth {
                expected: ideal.dim(),
                found: ideal.rows()[0],
            });
        }
        let dim = ideal.dim();
        let rows = ideal.rows();
        let betas: Vec<usize> = (1..=dim)
            .map(|n| {
                (1..=ideal.height())
                    .filter(|&b| b + n - 1 <= rows[b - 1])
                    .max()
                    .expect("the first row is full, so b = 1 always qualifies")
            })
            .collect();
        debug_assert_eq!(betas[dim - 1], 1);
        let generators: Vec<HomogeneousPoly> = betas
            .iter()
            .enumerate()
            .map(|(n0, &beta)| {
                let n = n0 + 1;
                let monos: Vec<Monomial> = (1..=beta)
                    .map(|j| Monomial::quadratic(dim, j, j + n - 1))
                    .collect();
                HomogeneousPoly::monomial_sum(dim, 2, &monos)
            })
            .collect();
        debug_assert!(generators
            .iter()
            .zip(&betas)
            .all(|(g, &b)| g.num_terms() == b));
        Ok(DiagonalReduction {
            dim,
            betas,
            generators,
        })
    }

    /// The diagonal reduction of the square of the maximal ideal.
    pub fn of_maximal_square(dim: usize) -> Self {
        let square = StableIdeal2::new(dim, vec![dim; dim]).expect("valid square tableau");
        DiagonalReduction::from_ideal(&square).expect("square tableau is full width")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn betas(&self) -> &[usize] {
        &self.betas
    }

    pub fn generators(&self) -> &[HomogeneousPoly] {
        &self.generators
    }

    pub fn presentation(&self) -> IdealPresentation {
        IdealPresentation::new(self.dim, self.generators.clone())
    }
}

/// The ordered monomial sequence produced by the walk, with each element's
/// stratum (smallest variable index) and 1-based position inside it.
#[derive(Debug, Clone)]
pub struct OrderedStrata {
    dim: usize,
    height: usize,
    elements: Vec<(Monomial, usize, usize)>,
    index: HashMap<Monomial, usize>,
}

/// Successor of one walk step; `None` when no rule applies.
fn walk_step(m: &Monomial, height: usize) -> Option<Monomial> {
    let factors = m.factor_list();
    let head = factors[0];
    let second = factors[1];
    if head < second && head < height {
        // climb a stratum: bump the smallest factor, duplicate the second
        let mut f = factors.clone();
        f[0] = head + 1;
        f.push(second);
        Some(Monomial::from_factors(m.dim(), &f))
    } else if head == height && head < second {
        // walk within the top stratum: decrement the second factor
        let mut f = factors.clone();
        f[1] = second - 1;
        Some(Monomial::from_factors(m.dim(), &f))
    } else if head == second {
        // descend a stratum: drop the doubled head, shift the next factor down
        if factors.len() == 2 {
            Some(Monomial::from_factors(m.dim(), &[head - 1, head - 1]))
        } else {
            let mut f = vec![head - 1, factors[2] - 1];
            f.extend_from_slice(&factors[3..]);
            Some(Monomial::from_factors(m.dim(), &f))
        }
    } else {
        None
    }
}

impl OrderedStrata {
    /// Runs the walk from `x1*xd` until the square of `x1` is reached. The
    /// walk depends only on the dimension and the height. A step cap (one
    /// more than the number of monomials of degree at most `g+1`) guards
    /// termination, which is otherwise guaranteed.
    pub fn generate(dim: usize, height: usize) -> Result<Self, DiagonalError> {
        assert!(height >= 1 && height <= dim, "height out of range");
        let cap: usize = (0..=height + 1)
            .map(|k| binomial(dim + k - 1, k))
            .sum::<usize>()
            + 1;
        let mut elements: Vec<(Monomial, usize, usize)> = Vec::new();
        let mut index = HashMap::new();
        let mut stratum_sizes = vec![0usize; height + 1];
        let mut pure_power_seen = vec![false; height + 1];
        let mut current = Monomial::quadratic(dim, 1, dim);
        loop {
            let h = current.min_support().expect("walk monomials are nonempty");
            debug_assert!(h <= height, "walk left the strata range");
            debug_assert_eq!(current.degree() as usize, h + 1, "stratum degree invariant");
            if pure_power_seen[h] {
                // the pure power must close its stratum
                return Err(DiagonalError::PurePowerNotLast { h });
            }
            if current.exponent(h) == current.degree() {
                pure_power_seen[h] = true;
            }
            if index.insert(current.clone(), elements.len()).is_some() {
                return Err(DiagonalError::Revisited(current.to_string()));
            }
            stratum_sizes[h] += 1;
            elements.push((current.clone(), h, stratum_sizes[h]));
            if current.exponent(1) >= 2 {
                break;
            }
            if elements.len() > cap {
                return Err(DiagonalError::TerminationCap(cap));
            }
            current = walk_step(&current, height)
                .ok_or_else(|| DiagonalError::UncoveredState(current.to_string()))?;
        }
        Ok(OrderedStrata {
            dim,
            height,
            elements,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// `(monomial, stratum, position-within-stratum)` in walk order.
    pub fn elements(&self) -> &[(Monomial, usize, usize)] {
        &self.elements
    }

    pub fn position_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.elements.iter().map(|(m, _, _)| m)
    }

    /// Monomials of one stratum in walk order.
    pub fn stratum(&self, h: usize) -> Vec<&Monomial> {
        self.elements
            .iter()
            .filter(|(_, s, _)| *s == h)
            .map(|(m, _, _)| m)
            .collect()
    }

    /// Checks that each stratum, in walk order, equals the ascending revlex
    /// enumeration of the monomials of degree `h+1` with smallest variable
    /// `x{h}`.
    pub fn verify_strata_order(&self) -> Result<(), StrataMismatch> {
        for h in 1..=self.height {
            let actual = self.stratum(h);
            let expected = stratum_target(self.dim, h);
            let upto = actual.len().max(expected.len());
            for pos in 0..upto {
                let found = actual.get(pos).copied();
                let want = expected.get(pos);
                if found != want {
                    return Err(StrataMismatch {
                        stratum: h,
                        position: pos + 1,
                        expected: want.cloned(),
                        found: found.cloned(),
                    });
                }
            }
        }
        Ok(())
    }

    /// The first element of stratum `h-k` after position `index`, computed in
    /// closed form from the element's factors and cross-checked against a
    /// linear scan of the sequence.
    pub fn lower_stratum_successor(
        &self,
        position: usize,
        k: usize,
    ) -> Result<Monomial, DiagonalError> {
        let (monomial, h, _) = &self.elements[position];
        let h = *h;
        if k == 0 || k >= h {
            return Err(DiagonalError::BadStratumOffset { h, k });
        }
        let lower = h - k;
        let factors = monomial.factor_list();
        // factors = [h, v_1, ..., v_h]; successor is x{h-k} * x{v_(k+1) - 1} * rest
        let mut f = vec![lower, factors[k + 1] - 1];
        f.extend_from_slice(&factors[k + 2..]);
        let expected = Monomial::from_factors(self.dim, &f);
        debug_assert_eq!(expected.min_support(), Some(lower));
        debug_assert_eq!(expected.degree() as usize, lower + 1);
        let scanned = self.elements[position + 1..]
            .iter()
            .find(|(_, s, _)| *s == lower)
            .map(|(m, _, _)| m)
            .ok_or(DiagonalError::MissingLowerElement { position, lower })?;
        if scanned != &expected {
            return Err(DiagonalError::SuccessorMismatch {
                expected: expected.to_string(),
                found: scanned.to_string(),
            });
        }
        Ok(expected)
    }
}

/// Ascending revlex list of monomials of degree `h+1` whose smallest variable
/// is `x{h}`: the target each stratum must reproduce.
pub fn stratum_target(dim: usize, h: usize) -> Vec<Monomial> {
    enumerate_degree(dim, h as u32 + 1)
        .into_iter()
        .filter(|m| m.min_support() == Some(h))
        .collect()
}

/// Certificates that every minimal generator of `I * m^(g-1)` lies in the
/// diagonal reduction.
#[derive(Debug)]
pub struct ProductContainment {
    pub dim: usize,
    pub height: usize,
    /// Degree of the certified generators: `g + 1`.
    pub degree: u32,
    /// One certificate per generator, ascending revlex by target.
    pub certificates: Vec<MembershipCertificate>,
    pub targets: Vec<Monomial>,
}

pub fn certify_product_containment(
    ideal: &StableIdeal2,
) -> Result<ProductContainment, DiagonalError> {
    let gd = ideal.gd_report()?;
    if !gd.holds {
        return Err(StableError::GdRequired(
            "the containment theorem assumes the G_d property".into(),
        )
        .into());
    }
    let g = ideal.height();
    let degree = g as u32 + 1;
    let reduction = DiagonalReduction::from_ideal(ideal)?;
    let pres = reduction.presentation();
    let targets = ideal.multiples_of_degree(degree);
    let mut certificates = Vec::with_capacity(targets.len());
    for target in &targets {
        let poly = HomogeneousPoly::from_monomial(target.clone());
        let cert = pres
            .contains_with_certificate(&poly)
            .ok_or_else(|| DiagonalError::NonMembership(target.to_string()))?;
        certificates.push(cert);
    }
    Ok(ProductContainment {
        dim: ideal.dim(),
        height: g,
        degree,
        certificates,
        targets,
    })
}

/// Outcome of the reduction-number certification.
#[derive(Debug, Clone)]
pub struct ReductionCertificate {
    /// Degree in which the top equality was compared: `2g`.
    pub witness_degree: u32,
    /// Equality of the two spans in the witness degree.
    pub reduction_holds: bool,
    /// Least `r` with the power equality, found by descending search.
    pub minimal_reduction_number: usize,
    pub rationale: &'static str,
}

pub const REDUCTION_RATIONALE: &str = "both sides are generated purely in the compared degree, \
so span equality in that degree is equality of ideals";

/// Distinct monomial generators of the `r`-th power of the ideal.
pub fn power_generators(ideal: &StableIdeal2, r: usize) -> Vec<Monomial> {
    let mut current: BTreeSet<Monomial> = BTreeSet::new();
    current.insert(Monomial::one(ideal.dim()));
    let gens = ideal.generators();
    for _ in 0..r {
        let mut next = BTreeSet::new();
        for a in &current {
            for b in &gens {
                next.insert(a.mul(b));
            }
        }
        current = next;
    }
    current.into_iter().collect()
}

fn scaled_power_presentation(
    reduction: &DiagonalReduction,
    power: &[Monomial],
) -> IdealPresentation {
    let mut gens = Vec::with_capacity(reduction.generators().len() * power.len());
    for f in reduction.generators() {
        for u in power {
            gens.push(f.mul_monomial(u));
        }
    }
    IdealPresentation::new(reduction.dim(), gens)
}

/// Certifies `I^g = J I^(g-1)` in degree `2g` and reports the least power
/// `r` with `I^(r+1) = J I^r`.
pub fn certify_reduction_number(
    ideal: &StableIdeal2,
) -> Result<ReductionCertificate, DiagonalError> {
    let gd = ideal.gd_report()?;
    if !gd.holds {
        return Err(StableError::GdRequired(
            "the reduction-number bound assumes the G_d property".into(),
        )
        .into());
    }
    let g = ideal.height();
    let reduction = DiagonalReduction::from_ideal(ideal)?;
    let equality_at = |r: usize| -> bool {
        let degree = 2 * (r as u32 + 1);
        let power_high =
            IdealPresentation::from_monomials(ideal.dim(), &power_generators(ideal, r + 1));
        let scaled = scaled_power_presentation(&reduction, &power_generators(ideal, r));
        power_high.component_equal(&scaled, degree)
    };
    let reduction_holds = equality_at(g - 1);
    let mut minimal = g - 1;
    if reduction_holds {
        while minimal > 0 && equality_at(minimal - 1) {
            minimal -= 1;
        }
    }
    Ok(ReductionCertificate {
        witness_degree: 2 * g as u32,
        reduction_holds,
        minimal_reduction_number: minimal,
        rationale: REDUCTION_RATIONALE,
    })
}
