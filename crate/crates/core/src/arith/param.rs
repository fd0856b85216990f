//! Parametrised curve germs `t -> (x(t), y(t))` at the origin.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::{BiPoly, ExtendedNat, Finite, GaussianRational as Gr, Infinite, TruncSeries, UniPoly, Var};
use crate::error::{CurveError, Result};

/// An exact rational parametrisation `(x_num / den, y_num / den)` with `den(0) != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactParam {
    pub x_num: UniPoly,
    pub y_num: UniPoly,
    pub den: UniPoly,
}

impl ExactParam {
    pub fn polynomial(x: UniPoly, y: UniPoly) -> Self {
        ExactParam {
            x_num: x,
            y_num: y,
            den: UniPoly::one(),
        }
    }

    pub fn series(&self, trunc: usize) -> Result<(TruncSeries, TruncSeries)> {
        if self.den == UniPoly::one() {
            return Ok((
                TruncSeries::from_poly(&self.x_num, trunc),
                TruncSeries::from_poly(&self.y_num, trunc),
            ));
        }
        Ok((
            TruncSeries::from_ratio(&self.x_num, &self.den, trunc)?,
            TruncSeries::from_ratio(&self.y_num, &self.den, trunc)?,
        ))
    }

    /// `den^(dx+dy) * g(x(t), y(t))`, which vanishes iff `g` vanishes on the curve.
    pub fn eval_cleared(&self, g: &BiPoly) -> UniPoly {
        let dx = g.degree_in(Var::X).unwrap_or(0) as usize;
        let dy = g.degree_in(Var::Y).unwrap_or(0) as usize;
        let plain = self.den == UniPoly::one();
        let powers = |base: &UniPoly, n: usize| {
            let mut v = vec![UniPoly::one()];
            for k in 1..=n {
                let next = v[k - 1].mul(base);
                v.push(next);
            }
            v
        };
        let xp = powers(&self.x_num, dx);
        let yp = powers(&self.y_num, dy);
        let qp = if plain {
            Vec::new()
        } else {
            powers(&self.den, dx.max(dy))
        };
        let rows = g.to_y_rows();
        let mut total = UniPoly::zero();
        for (j, row) in rows.iter().enumerate() {
            if row.is_zero() {
                continue;
            }
            let mut r = UniPoly::zero();
            for (i, c) in row.coeffs().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut term = xp[i].scale(c);
                if !plain {
                    term = term.mul(&qp[dx - i]);
                }
                r = r.add(&term);
            }
            let mut r = r.mul(&yp[j]);
            if !plain {
                r = r.mul(&qp[dy - j]);
            }
            total = total.add(&r);
        }
        total
    }

    fn map_linear(&self, a: &Gr, b: &Gr, c: &Gr, d: &Gr) -> ExactParam {
        ExactParam {
            x_num: self.x_num.scale(a).add(&self.y_num.scale(b)),
            y_num: self.x_num.scale(c).add(&self.y_num.scale(d)),
            den: self.den.clone(),
        }
    }
}

/// A curve germ given by two truncated series, optionally backed by an exact source
/// that allows re-expansion at a higher truncation and structural vanishing proofs.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamCurve {
    x: TruncSeries,
    y: TruncSeries,
    exact: Option<ExactParam>,
}

/// The rotation-similarity `(x, y) -> (a x + b y, -b x + a y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Similarity {
    pub a: Gr,
    pub b: Gr,
}

impl Similarity {
    pub fn identity() -> Self {
        Similarity {
            a: Gr::one(),
            b: Gr::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl fmt::Display for Similarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x, y) -> ({a}*x + {b}*y, -{b}*x + {a}*y)", a = self.a, b = self.b)
    }
}

impl ParamCurve {
    pub fn from_exact(exact: ExactParam, trunc: usize) -> Result<Self> {
        if exact.den.is_zero() || exact.den.coeff(0).is_zero() {
            return Err(CurveError::InvalidCurve("denominator must not vanish at t = 0".into()));
        }
        let (x, y) = exact.series(trunc)?;
        ParamCurve::checked(x, y, Some(exact))
    }

    pub fn from_polys(x: UniPoly, y: UniPoly, trunc: usize) -> Result<Self> {
        ParamCurve::from_exact(ExactParam::polynomial(x, y), trunc)
    }

    /// Integer-coefficient shorthand: `x` and `y` as `(coef, exponent)` lists.
    pub fn from_int_terms(x: &[(i64, usize)], y: &[(i64, usize)], trunc: usize) -> Result<Self> {
        let poly = |v: &[(i64, usize)]| {
            v.iter().fold(UniPoly::zero(), |acc, &(c, k)| {
                acc.add(&UniPoly::monomial(Gr::from_int(c), k))
            })
        };
        ParamCurve::from_polys(poly(x), poly(y), trunc)
    }

    /// Series-only curve; cannot be re-expanded beyond its truncation.
    pub fn from_series(x: TruncSeries, y: TruncSeries) -> Result<Self> {
        ParamCurve::checked(x, y, None)
    }

    fn checked(x: TruncSeries, y: TruncSeries, exact: Option<ExactParam>) -> Result<Self> {
        let n = x.trunc().min(y.trunc());
        let x = x.with_trunc(n);
        let y = y.with_trunc(n);
        if n == 0 {
            return Err(CurveError::InvalidCurve("truncation must be positive".into()));
        }
        if !x.coeff(0).is_zero() || !y.coeff(0).is_zero() {
            return Err(CurveError::NotAtOrigin);
        }
        let zero = match &exact {
            Some(e) => e.x_num.is_zero() && e.y_num.is_zero(),
            None => x.is_zero() && y.is_zero(),
        };
        if zero {
            return Err(CurveError::InvalidCurve("both components vanish".into()));
        }
        Ok(ParamCurve { x, y, exact })
    }

    pub fn x(&self) -> &TruncSeries {
        &self.x
    }

    pub fn y(&self) -> &TruncSeries {
        &self.y
    }

    pub fn exact(&self) -> Option<&ExactParam> {
        self.exact.as_ref()
    }

    pub fn trunc(&self) -> usize {
        self.x.trunc()
    }

    /// The same curve at truncation `n`; series-only curves cannot grow.
    pub fn at_trunc(&self, n: usize) -> Result<ParamCurve> {
        match &self.exact {
            Some(e) if n != self.trunc() => {
                let (x, y) = e.series(n)?;
                Ok(ParamCurve {
                    x,
                    y,
                    exact: Some(e.clone()),
                })
            }
            Some(_) => Ok(self.clone()),
            None if n <= self.trunc() => Ok(ParamCurve {
                x: self.x.with_trunc(n),
                y: self.y.with_trunc(n),
                exact: None,
            }),
            None => Err(CurveError::TruncationInsufficient(format!(
                "series input known only up to t^{}",
                self.trunc()
            ))),
        }
    }

    fn component_order(&self, which: Var) -> Result<ExtendedNat> {
        let (s, exact) = match which {
            Var::X => (&self.x, self.exact.as_ref().map(|e| &e.x_num)),
            Var::Y => (&self.y, self.exact.as_ref().map(|e| &e.y_num)),
        };
        match exact {
            Some(p) => Ok(p.order().map_or(Infinite, |k| Finite(k as u64))),
            None => s.order().map(|k| Finite(k as u64)),
        }
    }

    pub fn order_x(&self) -> Result<ExtendedNat> {
        self.component_order(Var::X)
    }

    pub fn order_y(&self) -> Result<ExtendedNat> {
        self.component_order(Var::Y)
    }

    /// Multiplicity of the germ, the smaller component order.
    pub fn multiplicity(&self) -> Result<u64> {
        let ox = self.order_x();
        let oy = self.order_y();
        match (ox, oy) {
            (Ok(a), Ok(b)) => Ok(a.min(b).finite().expect("one component is nonzero")),
            (Ok(Finite(a)), Err(_)) => Ok(a),
            (Err(_), Ok(Finite(b))) => Ok(b),
            (Err(e), _) | (_, Err(e)) => Err(e),
        }
    }

    /// `(a x + b y, c x + d y)`.
    pub fn linear_map(&self, a: &Gr, b: &Gr, c: &Gr, d: &Gr) -> Result<ParamCurve> {
        let x = self.x.scale(a).add(&self.y.scale(b));
        let y = self.x.scale(c).add(&self.y.scale(d));
        let exact = self.exact.as_ref().map(|e| e.map_linear(a, b, c, d));
        ParamCurve::checked(x, y, exact)
    }

    pub fn apply_similarity(&self, s: &Similarity) -> Result<ParamCurve> {
        self.linear_map(&s.a, &s.b, &-&s.b, &s.a)
    }

    /// Rejects curves whose exponent supports share a divisor above 1.
    pub fn check_reduced(&self) -> Result<()> {
        let support = |s: &TruncSeries, e: Option<&UniPoly>| -> Vec<usize> {
            let coeffs: &[Gr] = match e {
                Some(p) if self.exact.as_ref().is_some_and(|e| e.den == UniPoly::one()) => p.coeffs(),
                _ => s.coeffs(),
            };
            coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, _)| k)
                .collect()
        };
        let mut g = 0usize;
        for k in support(&self.x, self.exact.as_ref().map(|e| &e.x_num))
            .into_iter()
            .chain(support(&self.y, self.exact.as_ref().map(|e| &e.y_num)))
        {
            g = g.gcd(&k);
        }
        if g > 1 {
            return Err(CurveError::NonReducedParametrization(g as u64));
        }
        Ok(())
    }

    /// True when `g` vanishes identically on the exact source.
    pub fn annihilated_by(&self, g: &BiPoly) -> Option<bool> {
        self.exact.as_ref().map(|e| e.eval_cleared(g).is_zero())
    }
}

impl fmt::Display for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(e) if e.den == UniPoly::one() => write!(
                f,
                "({}, {})",
                TruncSeries::from_poly(&e.x_num, e.x_num.coeffs().len().max(1)),
                TruncSeries::from_poly(&e.y_num, e.y_num.coeffs().len().max(1))
            ),
            _ => write!(f, "({}, {})", self.x, self.y),
        }
    }
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ParamCurve{}", self)
    }
}

/// `g(x(t), y(t))` at the curve's truncation.
pub fn eval_on_curve(g: &BiPoly, gamma: &ParamCurve) -> TruncSeries {
    let n = gamma.trunc();
    let dx = g.degree_in(Var::X).unwrap_or(0) as usize;
    let dy = g.degree_in(Var::Y).unwrap_or(0) as usize;
    let powers = |s: &TruncSeries, k: usize| {
        let mut v = vec![TruncSeries::one(n)];
        for i in 1..=k {
            let next = if v[i - 1].is_zero() {
                TruncSeries::zero(n)
            } else {
                v[i - 1].mul(s)
            };
            v.push(next);
        }
        v
    };
    let xp = powers(gamma.x(), dx);
    let yp = powers(gamma.y(), dy);
    let mut total = TruncSeries::zero(n);
    for (j, row) in g.to_y_rows().iter().enumerate() {
        if row.is_zero() || yp[j].is_zero() {
            continue;
        }
        let mut acc = vec![Gr::zero(); n];
        for (i, c) in row.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, xc) in xp[i].coeffs().iter().enumerate() {
                if !xc.is_zero() {
                    acc[k] += &(c * xc);
                }
            }
        }
        let r = TruncSeries::new(acc, n);
        total = total.add(&r.mul(&yp[j]));
    }
    total
}

/// Component orders, with a component that vanishes up to truncation ranked at the truncation.
fn ranked_orders(gamma: &ParamCurve) -> (ExtendedNat, ExtendedNat) {
    let floor = Finite(gamma.trunc() as u64);
    (gamma.order_x().unwrap_or(floor), gamma.order_y().unwrap_or(floor))
}

/// Rotates the curve so that `ord x < ord y` (or `y` vanishes), returning the rotation used.
pub fn normalize_param(gamma: &ParamCurve) -> Result<(ParamCurve, Similarity)> {
    let (ox, oy) = ranked_orders(gamma);
    if ox < oy {
        return Ok((gamma.clone(), Similarity::identity()));
    }
    if ox > oy {
        let s = Similarity {
            a: Gr::zero(),
            b: Gr::one(),
        };
        return Ok((gamma.apply_similarity(&s)?, s));
    }
    let k = match ox {
        Finite(k) if (k as usize) < gamma.trunc() => k as usize,
        _ => {
            return Err(CurveError::TruncationInsufficient(
                "both components vanish up to truncation".into(),
            ))
        }
    };
    let alpha = gamma.x().coeff(k);
    let beta = gamma.y().coeff(k);
    if (&(&alpha * &alpha) + &(&beta * &beta)).is_zero() {
        return Err(CurveError::HypothesisViolated(
            "tangent direction is isotropic (x^2 + y^2 vanishes on it); no rotation separates the component orders"
                .into(),
        ));
    }
    let s = Similarity { a: alpha, b: beta };
    let out = gamma.apply_similarity(&s)?;
    let (nx, ny) = ranked_orders(&out);
    if nx < ny {
        Ok((out, s))
    } else {
        Err(CurveError::TruncationInsufficient(
            "component orders not separated within truncation".into(),
        ))
    }
}

/// A normalised curve rewritten as `(a s^m, y(s))` by the substitution `s = t * w(t)^(1/m)`,
/// where `x = a t^m w(t)`. The new `y` coefficients come from Lagrange inversion:
/// `[s^n] y = (1/n) [t^(n-1)] y'(t) w(t)^(-n/m)`.
#[derive(Clone, Debug)]
pub struct PurePower {
    pub m: usize,
    pub a: Gr,
    pub y: TruncSeries,
}

pub fn pure_power_form(gamma: &ParamCurve) -> Result<PurePower> {
    let m = gamma.x().order()?;
    if m == 0 {
        return Err(CurveError::NotAtOrigin);
    }
    let a = gamma.x().coeff(m);
    let w = gamma.x().shift_down(m)?.scale(&a.inverse().unwrap());
    let n = gamma.trunc();
    if w.coeffs().iter().skip(1).all(|c| c.is_zero()) {
        return Ok(PurePower {
            m,
            a,
            y: gamma.y().clone(),
        });
    }
    let out_trunc = (n - m + 1).min(gamma.y().trunc());
    let dy = gamma.y().derivative();
    let mut coeffs = vec![Gr::zero(); out_trunc];
    for k in 1..out_trunc {
        let wp = w.with_trunc(k).pow_ratio(-(k as i64), m as i64)?;
        let mut acc = Gr::zero();
        for i in 0..k {
            let d = dy.coeff(i);
            let c = wp.coeff(k - 1 - i);
            if !d.is_zero() && !c.is_zero() {
                acc += &(&d * &c);
            }
        }
        coeffs[k] = &acc * &Gr::from_ratio(1, k as i64);
    }
    Ok(PurePower {
        m,
        a,
        y: TruncSeries::new(coeffs, out_trunc),
    })
}
