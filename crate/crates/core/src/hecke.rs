//! The U_p operator, `Σ a(n) q^n ↦ Σ a(pn) q^n`, acting on coefficients.

use crate::scalar::Scalar;
use crate::series::{QSeries, EXACT};

/// Precision of `U_p f` for `f` known below `prec`: `n` is known iff `pn < prec`.
pub fn u_p_precision(prec: i64, p: u32) -> i64 {
    if prec == EXACT {
        EXACT
    } else {
        (prec - 1).div_euclid(p as i64) + 1
    }
}

pub fn u_p<T: Scalar>(f: &QSeries<T>, p: u32) -> QSeries<T> {
    let prec = u_p_precision(f.prec(), p);
    let pi = p as i64;
    let terms = f
        .terms()
        .filter(|(n, _)| n.rem_euclid(pi) == 0)
        .map(|(n, c)| (n / pi, c.clone()));
    QSeries::from_terms(terms, prec)
}

/// `U_p^alpha f`; `alpha = 0` returns `f` unchanged.
pub fn u_p_iter<T: Scalar>(f: &QSeries<T>, p: u32, alpha: u32) -> QSeries<T> {
    if alpha == 0 {
        return f.clone();
    }
    // U_p^α = U_{p^α}, and the precision rule composes the same way
    let mut out = u_p(f, p);
    for _ in 1..alpha {
        out = u_p(&out, p);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eta::phi_series;

    #[test]
    fn constants_fixed() {
        let one = QSeries::<i64>::one(10);
        let u = u_p(&one, 3);
        assert_eq!(u, QSeries::one(4));
        assert_eq!(u_p(&QSeries::<i64>::one(EXACT), 5), QSeries::one(EXACT));
    }

    #[test]
    fn index_filter() {
        let f = QSeries::<i64>::polynomial([(3, 1), (5, 5), (6, 7)]);
        assert_eq!(u_p(&f, 3), QSeries::polynomial([(1, 1), (2, 7)]));
    }

    #[test]
    fn precision_rule_is_exact() {
        // n valid iff 3n < prec
        for (prec, expect) in [
            (1, 1),
            (2, 1),
            (3, 1),
            (4, 2),
            (6, 2),
            (7, 3),
            (30, 10),
            (31, 11),
        ] {
            assert_eq!(u_p_precision(prec, 3), expect, "prec {prec}");
        }
        assert_eq!(u_p_precision(0, 3), 0);
        assert_eq!(u_p_precision(-3, 3), -1);
        assert_eq!(u_p_precision(-2, 3), 0);
    }

    #[test]
    fn negative_exponents() {
        let f = QSeries::<i64>::from_terms([(-6, 2), (-4, 9), (-3, 1), (0, 5), (3, 4)], 5);
        assert_eq!(
            u_p(&f, 3),
            QSeries::from_terms([(-2, 2), (-1, 1), (0, 5), (1, 4)], 2)
        );
    }

    #[test]
    fn unwinds_to_coefficient_of_phi() {
        let phi = phi_series::<i64>(3, 30).unwrap();
        let u = u_p(&phi, 3);
        assert_eq!(u.prec(), 10);
        assert_eq!(u.coefficient(1).unwrap(), phi.coefficient(3).unwrap());
        for n in 0..10 {
            assert_eq!(u.coefficient(n).unwrap(), phi.coefficient(3 * n).unwrap());
        }
    }

    #[test]
    fn iteration_composes() {
        let phi = phi_series::<i128>(3, 60).unwrap();
        assert_eq!(u_p_iter(&phi, 3, 0), phi);
        assert_eq!(u_p_iter(&phi, 3, 2), u_p(&u_p(&phi, 3), 3));
        let u9 = u_p_iter(&phi, 3, 2);
        for n in 0..u9.prec() {
            assert_eq!(u9.coefficient(n).unwrap(), phi.coefficient(9 * n).unwrap());
        }
    }
}
