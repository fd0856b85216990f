//! Closed formula for `I_f` on semi-quasihomogeneous germs.

use num_integer::Integer;

use crate::arith::{is_squarefree, BiPoly, ExtendedNat, Finite};
use crate::error::{CurveError, Result};

fn violated(msg: impl Into<String>) -> CurveError {
    CurveError::HypothesisViolated(msg.into())
}

/// `d (3d - 2 w1 - 2 w2) / (w1 w2)` where `d` is the weighted degree of the initial part.
pub fn sqh_inflection_count(f: &BiPoly, w1: u32, w2: u32) -> Result<ExtendedNat> {
    if w1 == 0 || w2 == 0 {
        return Err(violated("weights must be positive"));
    }
    if w1.gcd(&w2) != 1 {
        return Err(violated(format!("weights {} and {} are not coprime", w1, w2)));
    }
    if w1 == 1 && w2 == 1 {
        return Err(violated("weights are both 1 (homogeneous initial part)"));
    }
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(CurveError::NotAtOrigin);
    }
    let d = f.weighted_order(w1, w2).expect("nonzero");
    let g = f.weighted_part(w1, w2, d);
    if g.terms().all(|(&(i, _), _)| i > 0) {
        return Err(violated(format!("x divides the initial part {}", g)));
    }
    if g.terms().all(|(&(_, j), _)| j > 0) {
        return Err(violated(format!("y divides the initial part {}", g)));
    }
    if !is_squarefree(&g) {
        return Err(violated(format!("initial part {} has a repeated factor", g)));
    }
    let (d, w1, w2) = (d as i64, w1 as i64, w2 as i64);
    let num = d * (3 * d - 2 * w1 - 2 * w2);
    if num < 0 || num % (w1 * w2) != 0 {
        return Err(violated(format!(
            "formula value {}/{} is not a natural number",
            num,
            w1 * w2
        )));
    }
    Ok(Finite((num / (w1 * w2)) as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::inflection_count_eq;

    fn p(v: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(v)
    }

    #[test]
    fn formula_examples() {
        let w12 = p(&[(1, 4, 0), (1, 0, 5), (1, 2, 3)]);
        assert_eq!(sqh_inflection_count(&w12, 5, 4).unwrap(), Finite(42));
        let e = p(&[(1, 3, 0), (1, 2, 3), (1, 0, 9), (1, 1, 7)]);
        assert_eq!(sqh_inflection_count(&e, 3, 1).unwrap(), Finite(57));
        let cusp = p(&[(1, 2, 0), (1, 0, 3)]);
        assert_eq!(sqh_inflection_count(&cusp, 3, 2).unwrap(), Finite(8));
        assert_eq!(inflection_count_eq(&cusp).unwrap().value, Finite(8));
    }

    #[test]
    fn hypotheses_named() {
        let cusp = p(&[(1, 2, 0), (1, 0, 3)]);
        let msg = |r: Result<ExtendedNat>| match r {
            Err(CurveError::HypothesisViolated(m)) => m,
            other => panic!("{:?}", other),
        };
        assert!(msg(sqh_inflection_count(&cusp, 2, 4)).contains("coprime"));
        assert!(msg(sqh_inflection_count(&cusp, 1, 1)).contains("both 1"));
        assert!(msg(sqh_inflection_count(&p(&[(1, 2, 1), (1, 0, 5)]), 2, 1)).contains("divides"));
    }
}
