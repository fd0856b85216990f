//! Invariants of parametrised germs: Wronskians, Puiseux data, contact with circles, evolute.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    normalize_param, pure_power_form, with_retry, BiPoly, ExactParam, ExtendedNat, Finite, GaussianRational as Gr,
    Infinite, ParamCurve, Similarity, TruncSeries, UniPoly,
};
use crate::error::{CurveError, Result};

/// Truncation settings shared by every parametric driver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Trunc {
    pub start: usize,
    pub max: usize,
}

impl Default for Trunc {
    fn default() -> Self {
        Trunc {
            start: crate::arith::DEFAULT_TRUNC,
            max: crate::arith::DEFAULT_MAX_TRUNC,
        }
    }
}

impl Trunc {
    pub fn run<T>(&self, op: impl FnMut(usize) -> Result<T>) -> Result<T> {
        with_retry(self.start, self.max.max(self.start), op)
    }
}

struct Derivs {
    x1: TruncSeries,
    x2: TruncSeries,
    x3: TruncSeries,
    y1: TruncSeries,
    y2: TruncSeries,
    y3: TruncSeries,
}

fn derivs(g: &ParamCurve) -> Derivs {
    let x1 = g.x().derivative();
    let x2 = x1.derivative();
    let y1 = g.y().derivative();
    let y2 = y1.derivative();
    Derivs {
        x3: x2.derivative(),
        y3: y2.derivative(),
        x1,
        x2,
        y1,
        y2,
    }
}

/// `i = x' y'' - x'' y'`.
pub fn inflection_wronskian(g: &ParamCurve) -> TruncSeries {
    let d = derivs(g);
    d.x1.mul(&d.y2).sub(&d.x2.mul(&d.y1))
}

/// `v = (x'^2 + y'^2)(x' y''' - x''' y') + 3 (x' x'' + y' y'')(x'' y' - x' y'')`.
pub fn vertex_wronskian(g: &ParamCurve) -> TruncSeries {
    let d = derivs(g);
    let speed = d.x1.mul(&d.x1).add(&d.y1.mul(&d.y1));
    let w3 = d.x1.mul(&d.y3).sub(&d.x3.mul(&d.y1));
    let dot = d.x1.mul(&d.x2).add(&d.y1.mul(&d.y2));
    let w2 = d.x2.mul(&d.y1).sub(&d.x1.mul(&d.y2));
    speed.mul(&w3).add(&dot.mul(&w2).scale(&Gr::from_int(3)))
}

/// Numerators of `i` and `v` for an exact source `(p/q, r/q)`; `i` carries `q^5`, `v` carries `q^10`.
fn exact_wronskians(e: &ExactParam) -> (UniPoly, UniPoly) {
    let q = &e.den;
    let dq = q.derivative();
    let lift = |p: &UniPoly| {
        let d1 = p.derivative().mul(q).sub(&p.mul(&dq));
        let d2 = d1.derivative().mul(q).sub(&d1.mul(&dq).scale(&Gr::from_int(2)));
        let d3 = d2.derivative().mul(q).sub(&d2.mul(&dq).scale(&Gr::from_int(3)));
        (d1, d2, d3)
    };
    let (x1, x2, x3) = lift(&e.x_num);
    let (y1, y2, y3) = lift(&e.y_num);
    let i = x1.mul(&y2).sub(&x2.mul(&y1));
    let speed = x1.mul(&x1).add(&y1.mul(&y1));
    let w3 = x1.mul(&y3).sub(&x3.mul(&y1));
    let dot = x1.mul(&x2).add(&y1.mul(&y2));
    let w2 = x2.mul(&y1).sub(&x1.mul(&y2));
    let v = speed.mul(&w3).add(&dot.mul(&w2).scale(&Gr::from_int(3)));
    (i, v)
}

fn wronskian_order(
    g: &ParamCurve,
    t: Trunc,
    series: fn(&ParamCurve) -> TruncSeries,
    vertex: bool,
) -> Result<ExtendedNat> {
    if let Some(e) = g.exact() {
        let (i, v) = exact_wronskians(e);
        if (if vertex { v } else { i }).is_zero() {
            return Ok(Infinite);
        }
    }
    t.run(|n| {
        let s = series(&g.at_trunc(n)?);
        s.order().map(|k| Finite(k as u64))
    })
}

/// `I_gamma`, the order of the inflection Wronskian; infinite exactly on a line.
pub fn inflection_count_param(g: &ParamCurve, t: Trunc) -> Result<ExtendedNat> {
    g.check_reduced()?;
    wronskian_order(g, t, inflection_wronskian, false)
}

/// `V_gamma`, the order of the vertex Wronskian; infinite exactly on a line or circle.
pub fn vertex_count_param(g: &ParamCurve, t: Trunc) -> Result<ExtendedNat> {
    g.check_reduced()?;
    wronskian_order(g, t, vertex_wronskian, true)
}

/// First exponent of `y` not divisible by `m` once the curve is written as `(a s^m, y(s))`.
/// Smooth germs (`m = 1`) have none and report infinity.
pub fn first_puiseux_exponent(g: &ParamCurve, t: Trunc) -> Result<ExtendedNat> {
    t.run(|n| {
        let (c, _) = normalize_param(&g.at_trunc(n)?)?;
        let p = pure_power_form(&c)?;
        if p.m == 1 {
            return Ok(Infinite);
        }
        p.y.coeffs()
            .iter()
            .enumerate()
            .find(|(k, c)| k % p.m != 0 && !c.is_zero())
            .map(|(k, _)| Finite(k as u64))
            .ok_or_else(|| {
                CurveError::TruncationInsufficient(format!("no exponent prime to {} below t^{}", p.m, p.y.trunc()))
            })
    })
}

/// Circle `A (x^2 + y^2) + 2 B x + 2 C y = 0` through the origin, `A = 0` being a line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circle {
    pub a: Gr,
    pub b: Gr,
    pub c: Gr,
}

impl Circle {
    pub fn equation(&self) -> BiPoly {
        let two = Gr::from_int(2);
        let sq = &BiPoly::x().pow(2) + &BiPoly::y().pow(2);
        &(&sq.scale(&self.a) + &BiPoly::x().scale(&(&two * &self.b))) + &BiPoly::y().scale(&(&two * &self.c))
    }

    fn normalized(&self) -> Circle {
        match self.a.inverse() {
            Some(inv) => Circle {
                a: Gr::one(),
                b: &self.b * &inv,
                c: &self.c * &inv,
            },
            None => self.clone(),
        }
    }
}

impl fmt::Display for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.equation())
    }
}

impl Serialize for Circle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Circle", 4)?;
        st.serialize_field("A", &self.a.to_string())?;
        st.serialize_field("B", &self.b.to_string())?;
        st.serialize_field("C", &self.c.to_string())?;
        st.serialize_field("equation", &self.to_string())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Contact {
    pub lambda: ExtendedNat,
    pub osculating: Circle,
}

struct Pencil {
    s: TruncSeries,
    w: [Gr; 3],
}

/// Maximal contact order with a circle (`A != 0`) through the origin, by echelon reduction
/// of the pencil `{x^2 + y^2, x, y}` along the curve.
pub fn circle_contact(g: &ParamCurve, t: Trunc) -> Result<Contact> {
    t.run(|n| contact_at(&g.at_trunc(n)?))
}

fn contact_at(g: &ParamCurve) -> Result<Contact> {
    let x = g.x();
    let y = g.y();
    let unit = |k: usize| {
        let mut w = [Gr::zero(), Gr::zero(), Gr::zero()];
        w[k] = Gr::one();
        w
    };
    let seeds = [
        Pencil {
            s: x.mul(x).add(&y.mul(y)),
            w: unit(0),
        },
        Pencil {
            s: x.clone(),
            w: unit(1),
        },
        Pencil {
            s: y.clone(),
            w: unit(2),
        },
    ];
    let mut basis: Vec<(usize, Pencil)> = Vec::new();
    for mut e in seeds {
        loop {
            let Ok(k) = e.s.order() else {
                let circle = Circle {
                    a: e.w[0].clone(),
                    b: &e.w[1] * &Gr::from_ratio(1, 2),
                    c: &e.w[2] * &Gr::from_ratio(1, 2),
                };
                match g.annihilated_by(&circle.equation()) {
                    Some(true) if !circle.a.is_zero() => {
                        return Ok(Contact {
                            lambda: Infinite,
                            osculating: circle.normalized(),
                        })
                    }
                    Some(true) => break,
                    _ => {
                        return Err(CurveError::TruncationInsufficient(format!(
                            "pencil element vanishes up to t^{}",
                            e.s.trunc()
                        )))
                    }
                }
            };
            match basis.iter().find(|(o, _)| *o == k) {
                Some((_, b)) => {
                    let r = &e.s.coeff(k) / &b.s.coeff(k);
                    e.s = e.s.sub(&b.s.scale(&r));
                    for i in 0..3 {
                        e.w[i] = &e.w[i] - &(&b.w[i] * &r);
                    }
                }
                None => {
                    basis.push((k, e));
                    break;
                }
            }
        }
    }
    let best = basis
        .iter()
        .filter(|(_, e)| !e.w[0].is_zero())
        .max_by_key(|(o, _)| *o)
        .expect("x^2 + y^2 survives with A != 0");
    let circle = Circle {
        a: best.1.w[0].clone(),
        b: &best.1.w[1] * &Gr::from_ratio(1, 2),
        c: &best.1.w[2] * &Gr::from_ratio(1, 2),
    };
    Ok(Contact {
        lambda: Finite(best.0 as u64),
        osculating: circle.normalized(),
    })
}

/// `lambda` from the pure-power form `(t^m, y)`: `2m` unless `ord y = 2m`, and then
/// `2m + ord(a t^{2m} (a + y1)^2 - y1)` with `y = t^{2m} (a + y1)`.
/// `None` when the form does not apply (`ord y <= m` or `y` vanishes).
pub fn lambda_closed_form(g: &ParamCurve, t: Trunc) -> Result<Option<ExtendedNat>> {
    t.run(|n| {
        let (c, _) = normalize_param(&g.at_trunc(n)?)?;
        if c.exact().is_some_and(|e| e.y_num.is_zero()) {
            return Ok(None);
        }
        let p = pure_power_form(&c)?;
        let m = p.m;
        let y = p.y.scale(&p.a.inverse().unwrap());
        let ny = y.order()?;
        if ny <= m {
            return Ok(None);
        }
        if ny != 2 * m {
            return Ok(Some(Finite(2 * m as u64)));
        }
        let a = y.coeff(2 * m);
        let tail = y.shift_down(2 * m)?;
        let y1 = tail.sub(&TruncSeries::monomial(a.clone(), 0, tail.trunc()));
        let base = y1.add(&TruncSeries::monomial(a.clone(), 0, y1.trunc()));
        let lhs = base.mul(&base).scale(&a).shift_up(2 * m);
        let diff = lhs.with_trunc(y1.trunc()).sub(&y1);
        let k = diff.order()?;
        Ok(Some(Finite((2 * m + k) as u64)))
    })
}

/// Pair of series without the germ-at-origin constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPair {
    pub x: TruncSeries,
    pub y: TruncSeries,
}

impl fmt::Display for SeriesPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Centres of curvature `gamma + ((x'^2 + y'^2) / i) (-y', x')`.
pub fn evolute(g: &ParamCurve, t: Trunc) -> Result<SeriesPair> {
    if let Some(e) = g.exact() {
        if exact_wronskians(e).0.is_zero() {
            return Err(CurveError::EvoluteEscapes("the curve is a line".into()));
        }
    }
    t.run(|n| {
        let c = g.at_trunc(n)?;
        let d = derivs(&c);
        let speed = d.x1.mul(&d.x1).add(&d.y1.mul(&d.y1));
        let i = d.x1.mul(&d.y2).sub(&d.x2.mul(&d.y1));
        let q = speed.div(&i).map_err(|e| match e {
            CurveError::NotASeries(_) => CurveError::EvoluteEscapes(format!(
                "radius of curvature has a pole: ord (x'^2 + y'^2) < ord i = {}",
                i.order().unwrap_or(0)
            )),
            other => other,
        })?;
        let ex = c.x().sub(&q.mul(&d.y1));
        let ey = c.y().add(&q.mul(&d.x1));
        Ok(SeriesPair { x: ex, y: ey })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParamInvariants {
    pub m: u64,
    pub n: ExtendedNat,
    #[serde(rename = "I_gamma")]
    pub i_gamma: ExtendedNat,
    #[serde(rename = "V_gamma")]
    pub v_gamma: ExtendedNat,
    pub beta: ExtendedNat,
    pub lambda: ExtendedNat,
    pub lambda_closed_form: Option<ExtendedNat>,
    pub osculating: Circle,
    pub rotation: Option<String>,
}

/// Every parametric invariant of a reduced germ.
pub fn param_invariants(g: &ParamCurve, t: Trunc) -> Result<ParamInvariants> {
    g.check_reduced()?;
    let (norm, sim): (ParamCurve, Similarity) = t.run(|n| normalize_param(&g.at_trunc(n)?))?;
    let m = norm.order_x()?.finite().expect("normalised x has finite order");
    let n = norm.order_y().or_else(|e| match norm.exact() {
        None => Err(e),
        Some(_) => Ok(Infinite),
    })?;
    let i_gamma = inflection_count_param(g, t)?;
    let v_gamma = vertex_count_param(g, t)?;
    let beta = first_puiseux_exponent(g, t)?;
    let contact = circle_contact(g, t)?;
    let closed = if contact.lambda.is_finite() {
        lambda_closed_form(g, t)?
    } else {
        None
    };
    Ok(ParamInvariants {
        m,
        n,
        i_gamma,
        v_gamma,
        beta,
        lambda: contact.lambda,
        lambda_closed_form: closed,
        osculating: contact.osculating,
        rotation: (!sim.is_identity()).then(|| sim.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn curve(x: &[(i64, usize)], y: &[(i64, usize)]) -> ParamCurve {
        ParamCurve::from_int_terms(x, y, 64).unwrap()
    }

    fn t() -> Trunc {
        Trunc::default()
    }

    #[test]
    fn wronskians_by_hand() {
        let i = inflection_wronskian(&curve(&[(1, 1)], &[(1, 2)]));
        assert_eq!(i.coeff(0), Gr::from_int(2));
        assert_eq!(i.order().unwrap(), 0);
        let c = curve(&[(1, 2)], &[(1, 3)]);
        let i = inflection_wronskian(&c);
        assert_eq!(i.coeff(2), Gr::from_int(6));
        assert_eq!(i.order().unwrap(), 2);
        let v = vertex_wronskian(&c);
        assert_eq!(v.coeff(3), Gr::from_int(-24));
        assert_eq!(v.coeff(5), Gr::from_int(-216));
        assert!(v
            .coeffs()
            .iter()
            .enumerate()
            .all(|(k, x)| k == 3 || k == 5 || x.is_zero()));
        let i = inflection_wronskian(&curve(&[(1, 3)], &[(1, 4)]));
        assert_eq!(i.coeff(4), Gr::from_int(12));
        assert_eq!(i.order().unwrap(), 4);
    }

    #[test]
    fn counts() {
        let c = curve(&[(1, 2)], &[(1, 3)]);
        assert_eq!(inflection_count_param(&c, t()).unwrap(), Finite(2));
        assert_eq!(vertex_count_param(&c, t()).unwrap(), Finite(3));
        let c = curve(&[(1, 2)], &[(1, 4), (1, 5)]);
        assert_eq!(inflection_count_param(&c, t()).unwrap(), Finite(3));
        assert_eq!(vertex_count_param(&c, t()).unwrap(), Finite(5));
        let line = curve(&[(1, 1), (1, 2)], &[(2, 1), (2, 2)]);
        assert_eq!(inflection_count_param(&line, t()).unwrap(), Infinite);
    }

    #[test]
    fn puiseux_exponents() {
        let b = |x: &[(i64, usize)], y: &[(i64, usize)]| first_puiseux_exponent(&curve(x, y), t()).unwrap();
        assert_eq!(b(&[(1, 2)], &[(1, 3)]), Finite(3));
        assert_eq!(b(&[(1, 4)], &[(1, 6), (1, 7)]), Finite(6));
        assert_eq!(b(&[(1, 3)], &[(1, 6), (1, 7)]), Finite(7));
    }

    #[test]
    fn contact_examples() {
        let c = circle_contact(&curve(&[(1, 1)], &[(1, 2)]), t()).unwrap();
        assert_eq!(c.lambda, Finite(4));
        assert_eq!(
            c.osculating,
            Circle {
                a: Gr::one(),
                b: Gr::zero(),
                c: Gr::from_ratio(-1, 2)
            }
        );
        let c = circle_contact(&curve(&[(1, 2)], &[(1, 3)]), t()).unwrap();
        assert_eq!(c.lambda, Finite(4));
        assert_eq!(c.osculating.equation(), &BiPoly::x().pow(2) + &BiPoly::y().pow(2));
        let c = circle_contact(&curve(&[(1, 3)], &[(1, 6), (1, 7)]), t()).unwrap();
        assert_eq!(c.lambda, Finite(7));
    }

    #[test]
    fn exact_circle_has_infinite_contact() {
        // (2t/(1+t^2), 2t^2/(1+t^2)) parametrises x^2 + y^2 - 2y = 0
        let e = ExactParam {
            x_num: UniPoly::from_ints(&[0, 2]),
            y_num: UniPoly::from_ints(&[0, 0, 2]),
            den: UniPoly::from_ints(&[1, 0, 1]),
        };
        let g = ParamCurve::from_exact(e, 32).unwrap();
        let c = circle_contact(&g, t()).unwrap();
        assert_eq!(c.lambda, Infinite);
        assert_eq!(c.osculating.c, Gr::from_int(-1));
        assert_eq!(vertex_count_param(&g, t()).unwrap(), Infinite);
    }

    #[test]
    fn closed_form_lambda() {
        let l = |x: &[(i64, usize)], y: &[(i64, usize)]| lambda_closed_form(&curve(x, y), t()).unwrap();
        assert_eq!(l(&[(1, 2)], &[(1, 3)]), Some(Finite(4)));
        assert_eq!(l(&[(1, 1)], &[(1, 2)]), Some(Finite(4)));
        assert_eq!(l(&[(1, 3)], &[(1, 6), (1, 7)]), Some(Finite(7)));
    }

    #[test]
    fn evolute_examples() {
        let e = evolute(&curve(&[(1, 1)], &[(1, 2)]), t()).unwrap();
        assert_eq!(e.x.coeff(3), Gr::from_int(-4));
        assert_eq!(e.y.coeff(0), Gr::from_ratio(1, 2));
        assert_eq!(e.y.coeff(2), Gr::from_int(3));
        let e = evolute(&curve(&[(1, 2)], &[(1, 3)]), t()).unwrap();
        assert_eq!(e.x.coeff(2), Gr::from_int(-1));
        assert_eq!(e.x.coeff(4), Gr::from_ratio(-9, 2));
        assert_eq!(e.y.coeff(1), Gr::from_ratio(4, 3));
        assert_eq!(e.y.coeff(3), Gr::from_int(4));
        assert!(matches!(
            evolute(&curve(&[(1, 1)], &[(1, 3)]), t()),
            Err(CurveError::EvoluteEscapes(_))
        ));
    }
}
