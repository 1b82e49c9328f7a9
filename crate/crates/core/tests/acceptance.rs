//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its elapsed time (visible with `cargo test --test acceptance -- --nocapture`).

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use stablecore::corecalc::{
    certify_embedded_reduction_with, certify_socle_ladder_with, certify_upper_bound,
    check_northcott, check_socle_with, core_ideal, core_strong_stability_check,
};
use stablecore::diagonal::{
    certify_product_containment, certify_reduction_number, stratum_target, DiagonalReduction,
    OrderedStrata,
};
use stablecore::membership::IdealPresentation;
use stablecore::monomial::{enumerate_degree, parse_monomial, Monomial};
use stablecore::stable::{full_width_tableaux, gd_tableaux, StableIdeal2};

fn figure_ideal() -> StableIdeal2 {
    StableIdeal2::new(6, vec![6, 6, 6, 4]).unwrap()
}

fn pass(criterion: u32, label: &str, start: Instant, budget: Option<Duration>) {
    let elapsed = start.elapsed();
    println!("[PASS] criterion {criterion}: {label} ({elapsed:.2?})");
    if let Some(budget) = budget {
        assert!(
            elapsed < budget,
            "criterion {criterion} exceeded its runtime budget: {elapsed:.2?} >= {budget:.2?}"
        );
    }
}

/// The exhaustive sweep used by criteria 3, 4 and 9: every G_d tableau with
/// d <= 5, plus a sample in six variables.
fn sweep_with_samples() -> Vec<StableIdeal2> {
    let mut ideals = Vec::new();
    for dim in 1..=5 {
        ideals.extend(gd_tableaux(dim));
    }
    ideals.push(figure_ideal());
    ideals.push(StableIdeal2::new(6, vec![6, 3]).unwrap());
    ideals.push(StableIdeal2::new(6, vec![6]).unwrap());
    ideals
}

#[test]
fn criterion_01_figure_golden() {
    let start = Instant::now();
    let ideal = figure_ideal();
    assert_eq!(ideal.height(), 4);
    assert!(ideal.gd_report().unwrap().holds);
    let reduction = DiagonalReduction::from_ideal(&ideal).unwrap();
    let rendered: Vec<String> = reduction
        .generators()
        .iter()
        .map(|p| p.to_string())
        .collect();
    assert_eq!(
        rendered,
        vec![
            "x1^2 + x2^2 + x3^2 + x4^2",
            "x1*x2 + x2*x3 + x3*x4",
            "x1*x3 + x2*x4 + x3*x5",
            "x1*x4 + x2*x5 + x3*x6",
            "x1*x5 + x2*x6",
            "x1*x6",
        ]
    );
    pass(
        1,
        "figure tableau and diagonal generators",
        start,
        Some(Duration::from_millis(100)),
    );
}

#[test]
fn criterion_02_core_formula_on_figure() {
    let start = Instant::now();
    let ideal = figure_ideal();
    let core = core_ideal(&ideal).unwrap();

    // divisor scan against the product oracle
    let mut oracle: BTreeSet<Monomial> = BTreeSet::new();
    for gen in ideal.generators() {
        for mult in enumerate_degree(6, 3) {
            oracle.insert(gen.mul(&mult));
        }
    }
    let oracle: Vec<Monomial> = oracle.into_iter().collect();
    assert_eq!(core.generators, oracle);
    assert_eq!(core.generators.len(), 241);
    assert!(core
        .generators
        .contains(&parse_monomial("x1*x6^4", 6).unwrap()));
    assert!(!core
        .generators
        .contains(&parse_monomial("x4*x5^4", 6).unwrap()));

    // the product agrees with the degree-(g+1) part of the ideal
    let product = IdealPresentation::from_monomials(6, &core.generators);
    assert!(product.component_equal(&ideal.presentation(), 5));

    pass(
        2,
        "core generators by divisor scan and span equality",
        start,
        Some(Duration::from_secs(1)),
    );
}

#[test]
fn criterion_03_product_containment_sweep() {
    let start = Instant::now();
    let mut certificates = 0usize;
    for ideal in sweep_with_samples() {
        let report = certify_product_containment(&ideal)
            .unwrap_or_else(|e| panic!("containment failed for rows {:?}: {e}", ideal.rows()));
        assert_eq!(report.certificates.len(), report.targets.len());
        certificates += report.certificates.len();
    }
    pass(
        3,
        &format!("product containment, {certificates} certificates"),
        start,
        None,
    );
}

#[test]
fn criterion_04_reduction_number_sweep() {
    let start = Instant::now();
    for ideal in sweep_with_samples() {
        let report = certify_reduction_number(&ideal)
            .unwrap_or_else(|e| panic!("reduction failed for rows {:?}: {e}", ideal.rows()));
        assert!(
            report.reduction_holds,
            "equality failed for rows {:?}",
            ideal.rows()
        );
        assert!(
            report.minimal_reduction_number < ideal.height().max(1),
            "reduction number bound violated for rows {:?}",
            ideal.rows()
        );
    }
    pass(4, "power equality and reduction numbers", start, None);
}

#[test]
fn criterion_05_socle_ladder_and_embedding() {
    let start = Instant::now();
    for dim in 1..=6 {
        let reduction = DiagonalReduction::of_maximal_square(dim);
        let pres = reduction.presentation();
        let ladder = certify_socle_ladder_with(&pres, dim).unwrap();
        assert_eq!(ladder.certificates.len(), dim);
        let socle = check_socle_with(&pres, dim);
        assert!(socle.matches, "socle basis mismatch at d={dim}");
        assert!(
            socle.top_power_outside,
            "top power inside the reduction at d={dim}"
        );
        if dim >= 2 {
            let embedded = certify_embedded_reduction_with(&reduction, &pres, dim).unwrap();
            assert!(embedded.closed_form_ok);
            assert_eq!(embedded.certificates.len(), dim - 1);
        }
    }
    pass(
        5,
        "socle bases, power ladder, embedded reduction",
        start,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_06_determinant_congruences() {
    let start = Instant::now();
    for dim in 2..=6 {
        let report = check_northcott(dim);
        assert!(report.matrix_consistent, "matrix rows at d={dim}");
        assert!(report.det_congruence, "det congruence at d={dim}");
        assert!(
            report.alternating_congruence,
            "alternating congruence at d={dim}"
        );
        let expected_sign = match dim % 4 {
            0 | 1 => 0,
            _ => 1,
        };
        assert_eq!(report.sign_exponent, expected_sign);
        assert!(report.colon_match, "colon comparison at d={dim}");
    }
    pass(
        6,
        "determinant congruences and colon match",
        start,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_07_ordering_walk() {
    let start = Instant::now();
    for dim in 1..=7usize {
        for height in 1..=dim {
            let strata = OrderedStrata::generate(dim, height)
                .unwrap_or_else(|e| panic!("walk failed at d={dim}, g={height}: {e}"));
            let expected: usize = (1..=height).map(|h| stratum_target(dim, h).len()).sum();
            assert_eq!(
                strata.len(),
                expected,
                "repeat or omission at d={dim}, g={height}"
            );
            let last = strata.monomials().last().unwrap();
            assert_eq!(
                last.exps().first(),
                Some(&2),
                "walk must end at the first square"
            );
            assert_eq!(last.degree(), 2);
            strata
                .verify_strata_order()
                .unwrap_or_else(|m| panic!("stratum mismatch at d={dim}, g={height}: {m:?}"));
            for (pos, (_, h, _)) in strata.elements().iter().enumerate() {
                for k in 1..*h {
                    strata.lower_stratum_successor(pos, k).unwrap_or_else(|e| {
                        panic!("successor mismatch at d={dim}, g={height}, pos={pos}, k={k}: {e}")
                    });
                }
            }
        }
    }
    pass(
        7,
        "walk strata, termination and closed-form successors",
        start,
        Some(Duration::from_secs(60)),
    );
}

#[test]
fn criterion_08_gd_equivalence() {
    let start = Instant::now();
    let mut checked = 0usize;
    for dim in 2..=8 {
        for ideal in full_width_tableaux(dim) {
            let g = ideal.height();
            if g < 2 {
                continue;
            }
            let by_row = ideal.gd_report().unwrap().holds;
            let by_membership =
                ideal
                    .generator_set()
                    .contains(&Monomial::quadratic(dim, g - 1, dim));
            assert_eq!(
                by_row,
                by_membership,
                "disagreement for rows {:?}",
                ideal.rows()
            );
            checked += 1;
        }
    }
    pass(
        8,
        &format!("G_d equivalence on {checked} tableaux"),
        start,
        Some(Duration::from_secs(30)),
    );
}

#[test]
fn criterion_09_stability_and_transformed_reductions() {
    let start = Instant::now();
    for ideal in sweep_with_samples() {
        let core = core_ideal(&ideal).unwrap();
        assert!(
            core_strong_stability_check(&core),
            "core not strongly stable for rows {:?}",
            ideal.rows()
        );
    }
    for dim in 1..=5 {
        for ideal in gd_tableaux(dim) {
            let report = certify_upper_bound(&ideal, 5, 20260810).unwrap_or_else(|e| {
                panic!(
                    "transformed containment failed for rows {:?}: {e}",
                    ideal.rows()
                )
            });
            assert!(report.all_contained);
            assert_eq!(report.matrices.len(), 5);
        }
    }
    pass(
        9,
        "core stability and five seeded transformed reductions",
        start,
        None,
    );
}

#[test]
fn criterion_10_deterministic_reports() {
    let start = Instant::now();
    let run = || {
        let output = Command::new(env!("CARGO_BIN_EXE_stablecore"))
            .args([
                "certify-all",
                "--input",
                r#"{"d":6,"rows":[6,6,6,4]}"#,
                "--seed",
                "7",
                "--trials",
                "5",
                "--json",
            ])
            .output()
            .expect("binary runs");
        assert!(
            output.status.success(),
            "certify-all failed: {}",
            String::from_utf8_lossy(&output.stderr)
        );
        output.stdout
    };
    let first = run();
    let second = run();
    assert_eq!(first, second, "reports differ between runs");
    assert!(!first.is_empty());
    pass(
        10,
        "byte-identical certify-all reports",
        start,
        Some(Duration::from_secs(60)),
    );
}
