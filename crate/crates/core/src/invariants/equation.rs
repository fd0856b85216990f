//! Inflection and vertex polynomials of a defining equation and their local counts.

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{BiPoly, ExtendedNat, Finite, GaussianRational as Gr, Infinite};
use crate::error::{CurveError, Result};
use crate::intersection::{intersection_multiplicity, milnor_number};

struct Partials {
    fx: BiPoly,
    fy: BiPoly,
    fxx: BiPoly,
    fxy: BiPoly,
    fyy: BiPoly,
}

fn partials(f: &BiPoly) -> Partials {
    let fx = f.dx();
    let fy = f.dy();
    Partials {
        fxx: fx.dx(),
        fxy: fx.dy(),
        fyy: fy.dy(),
        fx,
        fy,
    }
}

fn k(n: i64) -> Gr {
    Gr::from_int(n)
}

fn inflection_from(p: &Partials) -> BiPoly {
    let a = &(&p.fy * &p.fy) * &p.fxx;
    let b = &(&(&p.fx * &p.fy) * &p.fxy).scale(&k(2));
    let c = &(&p.fx * &p.fx) * &p.fyy;
    &(&a - b) + &c
}

/// `i_f = f_y^2 f_xx - 2 f_x f_y f_xy + f_x^2 f_yy`.
pub fn inflection_poly(f: &BiPoly) -> BiPoly {
    inflection_from(&partials(f))
}

/// `v_f = (f_x^2 + f_y^2)(f_x^3 f_yyy - 3 f_x^2 f_y f_xyy + 3 f_x f_y^2 f_xxy - f_y^3 f_xxx)
///        - 3 ((f_x^2 - f_y^2) f_xy - f_x f_y (f_xx - f_yy)) i_f`.
pub fn vertex_poly(f: &BiPoly) -> BiPoly {
    let p = partials(f);
    let fxxx = p.fxx.dx();
    let fxxy = p.fxx.dy();
    let fxyy = p.fxy.dy();
    let fyyy = p.fyy.dy();
    let fx2 = &p.fx * &p.fx;
    let fy2 = &p.fy * &p.fy;
    let fxfy = &p.fx * &p.fy;
    let cubic = {
        let t1 = &(&fx2 * &p.fx) * &fyyy;
        let t2 = (&(&fx2 * &p.fy) * &fxyy).scale(&k(3));
        let t3 = (&(&p.fx * &fy2) * &fxxy).scale(&k(3));
        let t4 = &(&fy2 * &p.fy) * &fxxx;
        &(&(&t1 - &t2) + &t3) - &t4
    };
    let first = &(&fx2 + &fy2) * &cubic;
    let bracket = &(&(&fx2 - &fy2) * &p.fxy) - &(&fxfy * &(&p.fxx - &p.fyy));
    let second = (&bracket * &inflection_from(&p)).scale(&k(3));
    &first - &second
}

/// A count that may be infinite, with the reason when it is.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Count {
    pub value: ExtendedNat,
    pub reason: Option<String>,
}

fn check_input(f: &BiPoly) -> Result<()> {
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(CurveError::NotAtOrigin);
    }
    // A plane germ is reduced exactly when its singularity is isolated.
    if !milnor_number(f)?.is_finite() {
        return Err(CurveError::NonReducedInput);
    }
    Ok(())
}

fn count(f: &BiPoly, g: &BiPoly) -> Result<ExtendedNat> {
    if g.is_zero() {
        return Ok(Infinite);
    }
    intersection_multiplicity(f, g)
}

/// `I_f = m(f, i_f)`.
pub fn inflection_count_eq(f: &BiPoly) -> Result<Count> {
    check_input(f)?;
    inflection_unchecked(f)
}

fn inflection_unchecked(f: &BiPoly) -> Result<Count> {
    let v = count(f, &inflection_poly(f))?;
    Ok(Count {
        value: v,
        reason: (!v.is_finite()).then(|| "line component".to_string()),
    })
}

/// `V_f = m(f, v_f)`.
pub fn vertex_count_eq(f: &BiPoly) -> Result<Count> {
    check_input(f)?;
    vertex_unchecked(f)
}

fn vertex_unchecked(f: &BiPoly) -> Result<Count> {
    let v = count(f, &vertex_poly(f))?;
    let reason = if v.is_finite() {
        None
    } else if count(f, &inflection_poly(f))?.is_finite() {
        Some("circle component".to_string())
    } else {
        Some("line component".to_string())
    };
    Ok(Count { value: v, reason })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub mult: u32,
    pub milnor: ExtendedNat,
    #[serde(rename = "I_f")]
    pub i_f: ExtendedNat,
    #[serde(rename = "V_f")]
    pub v_f: ExtendedNat,
    /// `(mu + r - 1) / 2` as text, when the number of branches `r` is known and `mu` finite.
    pub delta: Option<String>,
    pub branches: Option<usize>,
    pub reduced: bool,
    pub reason: Option<String>,
    pub notes: Vec<String>,
}

/// Multiplicity, Milnor number and both counts; `branches` is the number of branches when known.
pub fn eq_invariants(f: &BiPoly, branches: Option<usize>) -> Result<InvariantReport> {
    check_input(f)?;
    let mult = f.multiplicity()?;
    let milnor = milnor_number(f)?;
    let i = inflection_unchecked(f)?;
    let v = if i.value.is_finite() {
        vertex_unchecked(f)?
    } else {
        Count {
            value: count(f, &vertex_poly(f))?,
            reason: Some("line component".to_string()),
        }
    };
    let delta = match (milnor, branches) {
        (Finite(mu), Some(r)) => {
            let q = BigRational::new((mu as i64 + r as i64 - 1).into(), 2.into());
            Some(if q.is_integer() {
                q.numer().to_string()
            } else {
                format!("{}/{}", q.numer(), q.denom())
            })
        }
        _ => None,
    };
    let mut notes = Vec::new();
    if mult == 1 {
        notes.push(format!(
            "smooth germ: I_f + 2 = {} is the order of contact with the tangent line",
            i.value + 2
        ));
    }
    let reason = i.reason.clone().or_else(|| v.reason.clone());
    Ok(InvariantReport {
        mult,
        milnor,
        i_f: i.value,
        v_f: v.value,
        delta,
        branches,
        reduced: true,
        reason,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(v)
    }

    #[test]
    fn inflection_polynomials() {
        assert_eq!(inflection_poly(&p(&[(1, 0, 1), (-1, 2, 0)])), p(&[(-2, 0, 0)]));
        assert_eq!(
            inflection_poly(&p(&[(1, 0, 2), (-1, 3, 0)])),
            p(&[(18, 4, 0), (-24, 1, 2)])
        );
        let circle = p(&[(1, 2, 0), (1, 0, 2), (-2, 0, 1)]);
        assert_eq!(
            inflection_poly(&circle),
            p(&[(8, 2, 0), (8, 0, 2), (-16, 0, 1), (8, 0, 0)])
        );
    }

    #[test]
    fn vertex_polynomials() {
        assert!(vertex_poly(&BiPoly::y()).is_zero());
        assert_eq!(vertex_poly(&p(&[(1, 0, 1), (-1, 2, 0)])), p(&[(-24, 1, 0)]));
        let circle = p(&[(1, 2, 0), (1, 0, 2), (-2, 0, 1)]);
        let v = vertex_count_eq(&circle).unwrap();
        assert_eq!((v.value, v.reason.as_deref()), (Infinite, Some("circle component")));
    }

    #[test]
    fn counts_from_equations() {
        let c = |v: &[(i64, u32, u32)]| {
            let f = p(v);
            (
                inflection_count_eq(&f).unwrap().value,
                vertex_count_eq(&f).unwrap().value,
            )
        };
        assert_eq!(c(&[(1, 0, 2), (-1, 3, 0)]), (Finite(8), Finite(15)));
        assert_eq!(c(&[(1, 3, 0), (1, 0, 4)]), (Finite(22), Finite(43)));
        assert_eq!(c(&[(1, 3, 0), (1, 0, 5)]), (Finite(29), Finite(56)));
        assert_eq!(inflection_count_eq(&p(&[(1, 1, 1)])).unwrap().value, Infinite);
        assert_eq!(
            inflection_count_eq(&p(&[(1, 3, 0), (1, 0, 3), (-1, 1, 1)]))
                .unwrap()
                .value,
            Finite(6)
        );
    }

    #[test]
    fn input_errors() {
        assert_eq!(
            inflection_count_eq(&p(&[(1, 0, 0), (1, 1, 0)])),
            Err(CurveError::NotAtOrigin)
        );
        assert_eq!(
            vertex_count_eq(&p(&[(1, 0, 1), (-1, 2, 0)]).pow(2)),
            Err(CurveError::NonReducedInput)
        );
    }
}
