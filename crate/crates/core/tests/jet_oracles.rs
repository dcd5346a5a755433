//! Jets checked against central finite differences computed at doubled
//! precision, and against themselves across precisions.

use orderfour::bench::Problem;
use orderfour::expr::{eval_jet, eval_real, Expr};
use orderfour::numeric::{
    jet_arith, jet_func, jet_variable, Jet4, JetFunc, JetOp, Precision, Real,
};
use proptest::prelude::*;

fn p300() -> Precision {
    Precision::default()
}

fn p600() -> Precision {
    p300().doubled()
}

fn real(s: &str, prec: Precision) -> Real {
    Real::parse_decimal(s, prec).unwrap()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * i64::from(n - i) / i64::from(i + 1))
}

fn factorial(k: u32) -> i64 {
    (1..=i64::from(k)).product()
}

/// k-th derivative by the central difference
/// `sum_j (-1)^j C(k, j) g(x + (k/2 - j) h) / h^k`, which is exact to O(h^2).
fn central_difference(g: &dyn Fn(&Real) -> Real, x: &Real, k: u32) -> Real {
    let prec = x.precision();
    let h = Real::pow10(-60, prec);
    let half_k = Real::from_int(i64::from(k), prec) / Real::from_int(2, prec);
    let mut sum = Real::zero(prec);
    for j in 0..=k {
        let offset = (&half_k - Real::from_int(i64::from(j), prec)) * &h;
        let term = Real::from_int(binomial(k, j), prec) * g(&(x + &offset));
        sum = if j % 2 == 0 { sum + term } else { sum - term };
    }
    sum / h.powi(i64::from(k))
}

fn assert_close(label: &str, got: &Real, want: &Real, rel: &Real) {
    let scale = want.abs().max(Real::one(want.precision()));
    let gap = (got - want).abs() / scale;
    assert!(gap <= *rel, "{label}: jet {got:?} vs difference {want:?}");
}

/// Compares coefficients 1..=4 of `jet_at(x)` with finite differences of
/// `g` at doubled precision.
fn check_against_differences(
    label: &str,
    grid: &[&str],
    g: &dyn Fn(&Real) -> Real,
    jet_at: &dyn Fn(Real) -> Jet4,
) {
    let tol = Real::pow10(-20, p600());
    for x in grid {
        let jet = jet_at(real(x, p300()));
        let x_hi = real(x, p600());
        for k in 1..=4u32 {
            let from_jet = (jet.coeff(k as usize) * Real::from_int(factorial(k), p300()))
                .with_precision(p600());
            let oracle = central_difference(g, &x_hi, k);
            assert_close(
                &format!("{label} at {x}, order {k}"),
                &from_jet,
                &oracle,
                &tol,
            );
        }
    }
}

fn func_jet(f: JetFunc) -> impl Fn(Real) -> Jet4 {
    move |x| jet_func(f, &jet_variable(x)).unwrap()
}

#[test]
fn exp_against_differences() {
    check_against_differences(
        "exp",
        &["-3", "-0.5", "0", "0.7", "2", "10"],
        &|x| x.exp(),
        &func_jet(JetFunc::Exp),
    );
}

#[test]
fn ln_against_differences() {
    check_against_differences(
        "ln",
        &["0.1", "0.5", "1", "2.5", "40"],
        &|x| x.ln(),
        &func_jet(JetFunc::Ln),
    );
}

#[test]
fn sin_cos_against_differences() {
    let grid = ["-2", "0", "0.4", "1.3", "3", "100"];
    check_against_differences("sin", &grid, &|x| x.sin(), &func_jet(JetFunc::Sin));
    check_against_differences("cos", &grid, &|x| x.cos(), &func_jet(JetFunc::Cos));
}

#[test]
fn sqrt_against_differences() {
    check_against_differences(
        "sqrt",
        &["0.05", "0.5", "1", "2", "9"],
        &|x| x.sqrt(),
        &func_jet(JetFunc::Sqrt),
    );
}

#[test]
fn pow_and_division_against_differences() {
    let grid = ["0.3", "1", "4"];
    let exponent = |prec| Jet4::constant(real("2.5", prec));
    check_against_differences(
        "x^2.5",
        &grid,
        &|x| x.pow(&real("2.5", x.precision())),
        &|x| {
            let prec = x.precision();
            jet_arith(JetOp::Pow, &jet_variable(x), &exponent(prec)).unwrap()
        },
    );
    check_against_differences("x^-3", &grid, &|x| x.powi(-3), &|x| {
        jet_variable(x).powi(-3).unwrap()
    });
    check_against_differences("1/x", &grid, &|x| Real::one(x.precision()) / x, &|x| {
        let one = Jet4::constant(Real::one(x.precision()));
        jet_arith(JetOp::Div, &one, &jet_variable(x)).unwrap()
    });
}

#[test]
fn paper_functions_against_differences() {
    // Nine points across each bracket, all four derivative orders.
    for problem in Problem::registry() {
        let expr = problem.expr();
        let (lo, hi) = problem.bracket(p300());
        let width = &hi - &lo;
        let grid: Vec<String> = (0..9)
            .map(|i| {
                (&lo + &width * Real::from_int(i, p300()) / Real::from_int(8, p300()))
                    .to_sci_string(40)
            })
            .collect();
        let grid: Vec<&str> = grid.iter().map(String::as_str).collect();
        check_against_differences(problem.id, &grid, &|x| eval_real(&expr, x).unwrap(), &|x| {
            eval_jet(&expr, &x).unwrap()
        });
    }
}

fn relative_gap(a: &Real, b: &Real) -> Real {
    if b.is_zero() {
        a.abs()
    } else {
        ((a - b) / b).abs()
    }
}

#[test]
fn doubling_precision_preserves_coefficients() {
    let corpus = [
        ("exp(-x)-1+x/5", vec!["4", "5", "6"]),
        ("(x^3+2.87*x^2-10.28)/4.62 - x", vec!["1", "2.5", "3"]),
        ("(x + cos(x)*sin(x))/pi - 1/4", vec!["0", "0.4", "1"]),
        ("sqrt(x)*ln(x) + x^2.5", vec!["0.2", "1", "7"]),
        ("sin(x)/x", vec!["0.5", "2"]),
    ];
    let tol = Real::pow10(-290, p600());
    for (src, grid) in corpus {
        let expr = Expr::parse(src).unwrap();
        for x in grid {
            let lo = eval_jet(&expr, &real(x, p300())).unwrap();
            let hi = eval_jet(&expr, &real(x, p600())).unwrap();
            for k in 0..5 {
                let gap = relative_gap(&lo.coeff(k).with_precision(p600()), hi.coeff(k));
                assert!(gap <= tol, "{src} at {x}, coefficient {k}: gap {gap:?}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn jet_value_matches_real_evaluation(t in 0.0f64..1.0) {
        let prec = Precision::new(100).unwrap();
        for problem in Problem::registry() {
            let expr = problem.expr();
            let (lo, hi) = problem.bracket(prec);
            let x = &lo + (&hi - &lo) * real(&format!("{t:.17}"), prec);
            let jet = eval_jet(&expr, &x).unwrap();
            let value = eval_real(&expr, &x).unwrap();
            prop_assert!(relative_gap(jet.value(), &value) <= Real::pow10(-95, prec));
        }
    }
}
