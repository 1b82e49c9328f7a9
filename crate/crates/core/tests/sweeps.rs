//! Exhaustive desk-scale sweeps of the structural invariants: every
//! full-width tableau in range is checked, not a sample.

use std::collections::BTreeSet;

use num_traits::One;
use stablecore::corecalc::{
    certify_lower_bound, check_northcott, core_ideal, core_strong_stability_check, NorthcottMatrix,
};
use stablecore::diagonal::{stratum_target, DiagonalReduction, OrderedStrata};
use stablecore::membership::IdealPresentation;
use stablecore::monomial::{enumerate_degree, Monomial};
use stablecore::poly::HomogeneousPoly;
use stablecore::stable::{full_width_tableaux, gd_tableaux, StableIdeal2};

#[test]
fn tableau_round_trip_everywhere() {
    for dim in 1..=6 {
        for ideal in full_width_tableaux(dim) {
            let back = StableIdeal2::from_generators(&ideal.generator_set()).unwrap();
            assert_eq!(back, ideal);
        }
    }
}

#[test]
fn analytic_spread_equals_dimension() {
    for dim in 1..=8 {
        for ideal in full_width_tableaux(dim) {
            assert_eq!(
                ideal.analytic_spread(),
                dim,
                "spread mismatch for rows {:?}",
                ideal.rows()
            );
        }
    }
}

#[test]
fn walk_size_matches_direct_enumeration() {
    for dim in 1..=8 {
        for height in 1..=dim {
            let strata = OrderedStrata::generate(dim, height).unwrap();
            let expected: usize = (1..=height).map(|h| stratum_target(dim, h).len()).sum();
            assert_eq!(
                strata.len(),
                expected,
                "size mismatch at d={dim}, g={height}"
            );
        }
    }
}

#[test]
fn saturation_self_checks_hold() {
    for dim in 1..=6 {
        for ideal in gd_tableaux(dim) {
            let sat = ideal.saturation().unwrap();
            assert!(
                sat.minimal_power <= ideal.height(),
                "power bound violated for rows {:?}",
                ideal.rows()
            );
        }
    }
}

#[test]
fn core_generators_match_product_oracle() {
    // the implementation scans for divisors; the oracle multiplies the
    // generators by every complementary monomial and deduplicates
    for dim in 1..=6 {
        for ideal in gd_tableaux(dim) {
            let core = core_ideal(&ideal).unwrap();
            let g = ideal.height();
            let mut oracle: BTreeSet<Monomial> = BTreeSet::new();
            for gen in ideal.generators() {
                for mult in enumerate_degree(dim, g as u32 - 1) {
                    oracle.insert(gen.mul(&mult));
                }
            }
            let oracle: Vec<Monomial> = oracle.into_iter().collect();
            assert_eq!(
                core.generators,
                oracle,
                "core mismatch for rows {:?}",
                ideal.rows()
            );
        }
    }
}

#[test]
fn cores_are_strongly_stable() {
    for dim in 1..=6 {
        for ideal in gd_tableaux(dim) {
            let core = core_ideal(&ideal).unwrap();
            assert!(
                core_strong_stability_check(&core),
                "exchange closure failed for rows {:?}",
                ideal.rows()
            );
        }
    }
}

#[test]
fn scaled_power_is_covered_by_the_walk() {
    // every monomial of degree g+1 whose smallest variable is at most g is a
    // multiple of some walk element
    for dim in 1..=6 {
        for height in 1..=dim {
            let strata = OrderedStrata::generate(dim, height).unwrap();
            let elements: Vec<&Monomial> = strata.monomials().collect();
            for mono in enumerate_degree(dim, height as u32 + 1) {
                let min = mono.min_support().unwrap();
                if min > height {
                    continue;
                }
                assert!(
                    elements.iter().any(|s| s.divides(&mono)),
                    "{mono} not covered at d={dim}, g={height}"
                );
            }
        }
    }
}

#[test]
fn ideal_multiples_of_walk_elements_lie_in_the_reduction() {
    // exhaustive to dimension 5; the six-variable family is sampled by its
    // largest member
    let mut ideals: Vec<StableIdeal2> = Vec::new();
    for dim in 1..=5 {
        ideals.extend(gd_tableaux(dim));
    }
    ideals.push(StableIdeal2::new(6, vec![6, 6, 6, 4]).unwrap());
    for ideal in ideals {
        let dim = ideal.dim();
        let g = ideal.height();
        let strata = OrderedStrata::generate(dim, g).unwrap();
        let elements: Vec<&Monomial> = strata.monomials().collect();
        let reduction = DiagonalReduction::from_ideal(&ideal)
            .unwrap()
            .presentation();
        for mono in ideal.multiples_of_degree(g as u32 + 1) {
            if !elements.iter().any(|s| s.divides(&mono)) {
                continue;
            }
            assert!(
                reduction.contains(&HomogeneousPoly::from_monomial(mono.clone())),
                "{mono} outside the reduction for rows {:?}",
                ideal.rows()
            );
        }
    }
}

#[test]
fn no_socle_below_the_top_degree() {
    for dim in 2..=6 {
        let pres = DiagonalReduction::of_maximal_square(dim).presentation();
        for degree in 2..dim as u32 {
            assert!(
                pres.socle_basis(degree).is_empty(),
                "unexpected socle in degree {degree} at d={dim}"
            );
        }
    }
}

#[test]
fn determinant_denominators_divide_powers_of_two() {
    for dim in 2..=6 {
        let det = NorthcottMatrix::new(dim).determinant();
        let shift = num_bigint::BigInt::from(2u32).pow(dim as u32);
        for (_, coeff) in det.terms() {
            let scaled = coeff * stablecore::poly::Rational::from_integer(shift.clone());
            assert!(
                scaled.denom().is_one(),
                "denominator of {coeff} does not divide 2^{dim}"
            );
        }
    }
}

#[test]
fn lower_bound_chain_everywhere() {
    for dim in 2..=5 {
        for ideal in gd_tableaux(dim) {
            if ideal.height() < 2 {
                continue;
            }
            let report = certify_lower_bound(&ideal).unwrap();
            assert!(
                report.all_hold(),
                "chain failed for rows {:?}",
                ideal.rows()
            );
        }
    }
    let wide = StableIdeal2::new(6, vec![6, 2]).unwrap();
    assert!(certify_lower_bound(&wide).unwrap().all_hold());
}

#[test]
fn stratum_extremes_under_revlex() {
    // each stratum target starts at x{h}*x{d}^h and ends at x{h}^(h+1)
    for dim in 1..=8usize {
        for h in 1..=dim {
            let target = stratum_target(dim, h);
            let mut low = vec![0u32; dim];
            low[h - 1] += 1;
            low[dim - 1] += h as u32;
            let mut high = vec![0u32; dim];
            high[h - 1] = h as u32 + 1;
            assert_eq!(target.first().unwrap(), &Monomial::new(low));
            assert_eq!(target.last().unwrap(), &Monomial::new(high));
        }
    }
}

#[test]
fn figure_ideal_ten_transformed_reductions() {
    let figure = StableIdeal2::new(6, vec![6, 6, 6, 4]).unwrap();
    let report = stablecore::corecalc::certify_upper_bound(&figure, 10, 42).unwrap();
    assert!(report.all_contained);
    assert_eq!(report.matrices.len(), 10);
    for m in &report.matrices {
        for (i, row) in m.iter().enumerate() {
            assert_eq!(row[i], 1);
            assert!(row[..i].iter().all(|&e| e == 0));
            assert!(row[i + 1..].iter().all(|&e| (-2..=2).contains(&e)));
        }
    }
}

#[test]
fn full_suite_on_the_four_variable_square() {
    let square = StableIdeal2::new(4, vec![4, 4, 4, 4]).unwrap();
    let report = stablecore::corecalc::certify_all(&square, 1, 2).unwrap();
    assert!(report.all_passed());
    assert!(report.checks.reduction_number_leq <= 3);
}

#[test]
fn northcott_holds_for_every_small_dimension() {
    for dim in 2..=5 {
        assert!(
            check_northcott(dim).all_hold(),
            "northcott failed at d={dim}"
        );
    }
}

#[test]
fn component_containment_tracks_ideal_containment() {
    // I * m ⊆ I ⊆ saturation(I), degree by degree
    for dim in 2..=5 {
        for ideal in gd_tableaux(dim) {
            let pres = ideal.presentation();
            let scaled = IdealPresentation::from_monomials(dim, &ideal.multiples_of_degree(3));
            for degree in 3..=5u32 {
                assert!(pres.component_contains(&scaled, degree));
            }
        }
    }
}

#[test]
fn determinant_matches_its_alternating_average() {
    // det(A) is congruent to the average of the two signed top powers,
    // x1^d and (-1)^c xd^d; in two variables the congruence is an equality
    use stablecore::poly::{ratio, HomogeneousPoly};
    for dim in 2..=6usize {
        let reduction = DiagonalReduction::of_maximal_square(dim);
        let pres = reduction.presentation();
        let det = NorthcottMatrix::new(dim).determinant();
        let sign: i64 = match dim % 4 {
            0 | 1 => 1,
            _ => -1,
        };
        let mut first = vec![0u32; dim];
        first[0] = dim as u32;
        let mut last = vec![0u32; dim];
        last[dim - 1] = dim as u32;
        let average = HomogeneousPoly::from_monomial(Monomial::new(first))
            .scale(&ratio(1, 2))
            .add(&HomogeneousPoly::from_monomial(Monomial::new(last)).scale(&ratio(sign, 2)));
        let diff = det.sub(&average);
        if dim == 2 {
            assert!(diff.is_zero(), "two-variable determinant is the average itself");
        } else {
            assert!(pres.contains(&diff), "average congruence fails at d={dim}");
        }
    }
}
