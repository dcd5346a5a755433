use orderfour::analysis::{analyze, taylor_coeffs, ConstantVerdict, ConvergenceReport};
use orderfour::bench::Problem;
use orderfour::methods::{run, step, IterationSettings, MethodKind};
use orderfour::numeric::{Precision, Real};

fn prec() -> Precision {
    Precision::default()
}

fn report(problem: &Problem, kind: &MethodKind) -> ConvergenceReport {
    let (lo, hi) = problem.bracket(prec());
    analyze(&problem.expr(), kind, &problem.x0(prec()), (&lo, &hi)).unwrap()
}

fn affine_invariant() -> Vec<MethodKind> {
    MethodKind::catalogue()
        .into_iter()
        .filter(MethodKind::is_scale_invariant)
        .collect()
}

#[test]
fn scaling_leaves_iterates_unchanged() {
    assert_eq!(affine_invariant().len(), 5);
    let settings = IterationSettings::for_precision(prec());
    for problem in Problem::registry() {
        let expr = problem.expr();
        let x0 = problem.x0(prec());
        for kind in affine_invariant() {
            let base = run(&expr, &kind, &x0, &settings).unwrap();
            for factor in ["10", "-3", "1e-4"] {
                let scaled = run(&expr.scaled(factor), &kind, &x0, &settings).unwrap();
                // Residual stops can fire one step apart; compare the shared prefix.
                let shared = base.iterates.len().min(scaled.iterates.len());
                assert!(shared >= 4, "{kind} on {factor}*{}", problem.id);
                for (k, (a, b)) in base
                    .iterates
                    .iter()
                    .zip(&scaled.iterates)
                    .take(shared)
                    .enumerate()
                {
                    let ulps = Real::from_int(10, prec()) * a.ulp();
                    assert!(
                        (a - b).abs() <= ulps,
                        "{kind} on {factor}*{} differs at iterate {k}",
                        problem.id
                    );
                }
            }
        }
    }
}

#[test]
fn bisectrix_forms_feel_the_scale() {
    let f1 = Problem::by_id("f1").unwrap();
    let expr = f1.expr();
    let x0 = f1.x0(prec());
    for kind in [MethodKind::Bisectrix, MethodKind::InverseBisectrix] {
        let plain = step(&kind, &expr, &x0).unwrap().next;
        let scaled = step(&kind, &expr.scaled("10"), &x0).unwrap().next;
        assert!((plain - scaled).abs() > Real::pow10(-12, prec()), "{kind}");
    }
}

#[test]
fn computational_order_matches_theory() {
    for problem in Problem::registry() {
        for kind in MethodKind::catalogue() {
            let rep = report(problem, &kind);
            let gap = (rep.final_coc.to_f64() - f64::from(kind.theoretical_order())).abs();
            assert!(
                gap <= 0.15,
                "{kind} on {}: coc {}",
                problem.id,
                rep.final_coc.to_f64()
            );
            assert_eq!(rep.coc_sequence.len(), rep.errors.len() - 2);
        }
    }
}

#[test]
fn error_ratios_settle_on_f1() {
    let f1 = Problem::by_id("f1").unwrap();
    for kind in MethodKind::catalogue() {
        let rep = report(f1, &kind);
        let n = rep.ratios.len();
        assert!(n >= 2, "{kind}");
        let (a, b) = (
            rep.ratios[n - 2].sci_digits(2),
            rep.ratios[n - 1].sci_digits(2),
        );
        assert_eq!(
            a,
            b,
            "{kind}: {:?} vs {:?}",
            rep.ratios[n - 2],
            rep.ratios[n - 1]
        );
    }
}

#[test]
fn newton_constant_is_c2() {
    for problem in Problem::registry() {
        let rep = report(problem, &MethodKind::Newton);
        let c2 = taylor_coeffs(&problem.expr(), &rep.alpha).unwrap().c2.abs();
        let gap = ((&rep.empirical_constant - &c2) / &c2).abs().to_f64();
        assert!(
            gap <= 0.05,
            "{}: empirical {:?} vs |c2| {c2:?}",
            problem.id,
            rep.empirical_constant
        );
    }
}

#[test]
fn closed_form_constants_agree() {
    for problem in Problem::registry() {
        for kind in [
            MethodKind::InverseBisectrix,
            MethodKind::Bisectrix,
            MethodKind::weighted_fourth_default(),
        ] {
            let rep = report(problem, &kind);
            assert_eq!(
                rep.verdict,
                ConstantVerdict::Agrees,
                "{kind} on {}",
                problem.id
            );
            assert!(rep.relative_gap().unwrap().to_f64() < 1e-3);
        }
    }
}

#[test]
fn off_optimal_step_fraction_loses_order() {
    // The weight conditions are tuned to a = 2/3; elsewhere the quadratic
    // error term no longer cancels.
    let kind = MethodKind::from_parts("weighted4", None, Some("1/2")).unwrap();
    let rep = report(Problem::by_id("f3").unwrap(), &kind);
    assert!(!kind.order_is_proven());
    assert_eq!(rep.verdict, ConstantVerdict::Unavailable);
    assert!((rep.final_coc.to_f64() - 2.0).abs() < 0.15);
}
