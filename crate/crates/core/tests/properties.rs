use orderfour::analysis::efficiency_index;
use orderfour::expr::{BinOp, Constant, Expr, Func, Node, NodeKind};
use orderfour::methods::{step, MethodKind, WeightFn};
use orderfour::numeric::{Jet4, Precision, Real};
use proptest::prelude::*;

fn prec() -> Precision {
    Precision::new(120).unwrap()
}

fn real(v: f64) -> Real {
    Real::parse_decimal(&format!("{v:e}"), prec()).unwrap()
}

fn jet(c: [f64; 5]) -> Jet4 {
    Jet4::from_coeffs(c.map(real))
}

fn coeffs() -> impl Strategy<Value = [f64; 5]> {
    prop::array::uniform5(-50.0f64..50.0)
}

fn jets_close(a: &Jet4, b: &Jet4, rel: &Real) -> bool {
    a.coeffs().iter().zip(b.coeffs()).all(|(x, y)| {
        let scale = x.abs().max(y.abs()).max(Real::one(prec()));
        (x - y).abs() <= rel * &scale
    })
}

fn node(kind: NodeKind) -> Node {
    Node::new(kind, 0)
}

fn ast() -> impl Strategy<Value = Node> {
    let leaf = prop_oneof![
        Just(node(NodeKind::Variable)),
        Just(node(NodeKind::Constant(Constant::Pi))),
        Just(node(NodeKind::Constant(Constant::E))),
        (0u32..1000, 0u32..100).prop_map(|(a, b)| node(NodeKind::Number(format!("{a}.{b}")))),
        (1u32..9, 1u32..30).prop_map(|(a, e)| node(NodeKind::Number(format!("{a}e-{e}")))),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        let op = prop_oneof![
            Just(BinOp::Add),
            Just(BinOp::Sub),
            Just(BinOp::Mul),
            Just(BinOp::Div),
            Just(BinOp::Pow),
        ];
        let func = prop::sample::select(Func::ALL.to_vec());
        prop_oneof![
            inner.clone().prop_map(|n| node(NodeKind::Neg(Box::new(n)))),
            (op, inner.clone(), inner.clone()).prop_map(|(o, l, r)| node(NodeKind::Binary(
                o,
                Box::new(l),
                Box::new(r)
            ))),
            (func, inner).prop_map(|(f, a)| node(NodeKind::Call(f, Box::new(a)))),
        ]
    })
}

proptest! {
    #[test]
    fn jet_product_commutes(a in coeffs(), b in coeffs()) {
        let (a, b) = (jet(a), jet(b));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn jet_product_associates(a in coeffs(), b in coeffs(), c in coeffs()) {
        let (a, b, c) = (jet(a), jet(b), jet(c));
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        prop_assert!(jets_close(&left, &right, &Real::pow10(-110, prec())));
    }

    #[test]
    fn formatting_round_trips(root in ast()) {
        let expr = Expr::new(root);
        let text = expr.to_string();
        let back = Expr::parse(&text).unwrap();
        prop_assert_eq!(&back, &expr, "{}", text);
    }

    #[test]
    fn efficiency_increases_with_order(order in 2i64..12, evals in 1u32..8) {
        let p = Precision::default();
        let lower = efficiency_index(&Real::from_int(order, p), evals);
        let higher = efficiency_index(&Real::from_int(order + 1, p), evals);
        prop_assert!(lower < higher);
    }

    #[test]
    fn efficiency_decreases_with_cost(order in 2i64..12, evals in 1u32..8) {
        let p = Precision::default();
        let cheap = efficiency_index(&Real::from_int(order, p), evals);
        let costly = efficiency_index(&Real::from_int(order, p), evals + 1);
        prop_assert!(cheap > costly);
    }

    #[test]
    fn affine_functions_are_solved_in_one_step(a in 1i64..500, neg in any::<bool>(), b in -1000i64..1000, x0 in -100i64..100) {
        let p = Precision::default();
        let a = if neg { -a } else { a };
        let expr = Expr::parse(&format!("({a})*x + ({b})")).unwrap();
        let root = Real::from_int(-b, p) / Real::from_int(a, p);
        let x0 = Real::from_int(x0, p);
        let cubic: WeightFn = "poly:5/4,3/4,-2,1".parse().unwrap();
        let kinds = [
            MethodKind::Newton,
            MethodKind::Chun3,
            MethodKind::weighted_fourth_default(),
            MethodKind::WeightedFourth { weight: cubic, a: MethodKind::default_step_fraction() },
        ];
        for kind in kinds {
            let next = step(&kind, &expr, &x0).unwrap().next;
            prop_assert!((&next - &root).abs() <= Real::pow10(-290, p), "{}", kind);
        }
    }
}

#[test]
fn efficiency_grid() {
    let p = Precision::default();
    let grid: Vec<Vec<f64>> = (2..=6)
        .map(|o| {
            (1..=5)
                .map(|e| efficiency_index(&Real::from_int(o, p), e).to_f64())
                .collect()
        })
        .collect();
    for (i, row) in grid.iter().enumerate() {
        for j in 0..row.len() {
            if j + 1 < row.len() {
                assert!(row[j] > row[j + 1]);
            }
            if i + 1 < grid.len() {
                assert!(row[j] < grid[i + 1][j]);
            }
        }
    }
}
