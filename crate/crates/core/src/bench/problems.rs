use crate::expr::Expr;
use crate::numeric::{Precision, Real};

/// A compiled-in test problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Problem {
    pub id: &'static str,
    pub expr_text: &'static str,
    pub x0_text: &'static str,
    pub bracket_text: (&'static str, &'static str),
    pub description: &'static str,
}

const REGISTRY: [Problem; 3] = [
    Problem {
        id: "f1",
        expr_text: "exp(-x)-1+x/5",
        x0_text: "5",
        bracket_text: ("4", "6"),
        description: "Planck radiation law, peak wavelength condition",
    },
    Problem {
        id: "f2",
        expr_text: "(x^3+2.87*x^2-10.28)/4.62 - x",
        x0_text: "2.5",
        bracket_text: ("1", "3"),
        description: "Embedment depth of a cantilever sheet-pile wall",
    },
    Problem {
        id: "f3",
        expr_text: "(x + cos(x)*sin(x))/pi - 1/4",
        x0_text: "0.4",
        bracket_text: ("0", "1"),
        description: "Boussinesq vertical stress under a strip load",
    },
];

impl Problem {
    pub fn registry() -> &'static [Problem] {
        &REGISTRY
    }

    pub fn by_id(id: &str) -> Option<&'static Problem> {
        REGISTRY.iter().find(|p| p.id == id)
    }

    pub fn expr(&self) -> Expr {
        Expr::parse(self.expr_text).expect("registry expressions parse")
    }

    pub fn x0(&self, prec: Precision) -> Real {
        Real::parse_decimal(self.x0_text, prec).expect("registry literal")
    }

    pub fn bracket(&self, prec: Precision) -> (Real, Real) {
        let lit = |s| Real::parse_decimal(s, prec).expect("registry literal");
        (lit(self.bracket_text.0), lit(self.bracket_text.1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::eval_real;

    #[test]
    fn brackets_change_sign_and_contain_x0() {
        let prec = Precision::default();
        for p in Problem::registry() {
            let expr = p.expr();
            let (lo, hi) = p.bracket(prec);
            let flo = eval_real(&expr, &lo).unwrap();
            let fhi = eval_real(&expr, &hi).unwrap();
            assert_ne!(flo.is_negative(), fhi.is_negative(), "{}", p.id);
            let x0 = p.x0(prec);
            assert!(lo <= x0 && x0 <= hi, "{}", p.id);
        }
    }

    #[test]
    fn lookup() {
        assert_eq!(Problem::by_id("f2").unwrap().x0_text, "2.5");
        assert!(Problem::by_id("f4").is_none());
    }
}
