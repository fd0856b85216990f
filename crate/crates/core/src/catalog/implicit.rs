//! Defining equations of monomial-x parametrisations `(t^m, y(t))`.

use num_traits::Zero;

use crate::arith::{BiPoly, GaussianRational as Gr, UniPoly};

type Matrix = Vec<Vec<BiPoly>>;

fn det(m: &Matrix) -> BiPoly {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = BiPoly::zero();
    for (col, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Matrix = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = entry * &det(&minor);
        acc = if col % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// `det(y I - M)` where `M` is multiplication by `y(t)` on `Q(i)[x][t] / (t^m - x)`.
/// The result is monic of degree `m` in `y` and vanishes on `(t^m, y(t))`.
pub fn implicitize(m: usize, y: &UniPoly) -> BiPoly {
    assert!(m >= 1);
    let mut mat: Matrix = vec![vec![BiPoly::zero(); m]; m];
    for col in 0..m {
        for (k, c) in y.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = k + col;
            let (q, r) = (e / m, e % m);
            let term = BiPoly::monomial(c.clone(), q as u32, 0);
            mat[r][col] = &mat[r][col] + &term;
        }
    }
    for (i, row) in mat.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let neg = -&*e;
            *e = if i == j { &BiPoly::y() + &neg } else { neg };
        }
    }
    det(&mat)
}

/// Convenience for integer supports: `y = sum t^k` over `exps`.
pub fn implicitize_monomials(m: usize, exps: &[usize]) -> BiPoly {
    let y = exps.iter().fold(UniPoly::zero(), |acc, &k| {
        acc.add(&UniPoly::monomial(Gr::from_int(1), k))
    });
    implicitize(m, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{eval_on_curve, ParamCurve};

    #[test]
    fn cusp_and_w12() {
        assert_eq!(
            implicitize_monomials(2, &[3]),
            BiPoly::from_int_terms(&[(1, 0, 2), (-1, 3, 0)])
        );
        assert_eq!(
            implicitize_monomials(4, &[5]),
            BiPoly::from_int_terms(&[(1, 0, 4), (-1, 5, 0)])
        );
    }

    #[test]
    fn vanishes_on_its_curve() {
        for (m, exps) in [
            (3usize, vec![4usize, 5]),
            (4, vec![6, 9]),
            (4, vec![7, 9]),
            (3, vec![6, 7]),
        ] {
            let f = implicitize_monomials(m, &exps);
            let y = exps.iter().map(|&k| (1i64, k)).collect::<Vec<_>>();
            let c = ParamCurve::from_int_terms(&[(1, m)], &y, 80).unwrap();
            assert!(eval_on_curve(&f, &c).is_zero(), "{:?}", exps);
            assert_eq!(c.annihilated_by(&f), Some(true));
        }
    }
}
