//! Local intersection multiplicity at the origin and the Milnor number.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{
    eval_on_curve, with_retry, BiPoly, ExtendedNat, Finite, GaussianRational as Gr, Infinite, ParamCurve, Var,
    DEFAULT_MAX_TRUNC,
};
use crate::error::{CurveError, Result};

/// Dense rows: `rows[j][i]` is the coefficient of `x^i y^j`.
#[derive(Clone, Debug)]
struct Rows(Vec<Vec<Gr>>);

impl Rows {
    fn from_poly(p: &BiPoly) -> Rows {
        let mut r = Rows(p.to_y_rows().into_iter().map(|row| row.coeffs().to_vec()).collect());
        r.trim();
        r
    }

    fn trim(&mut self) {
        for row in self.0.iter_mut() {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.0.last().is_some_and(|r| r.is_empty()) {
            self.0.pop();
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn constant(&self) -> Gr {
        self.0.first().and_then(|r| r.first()).cloned().unwrap_or_else(Gr::zero)
    }

    /// Keep terms of total degree at most `d`.
    fn truncate(&mut self, d: usize) {
        self.0.truncate(d + 1);
        for (j, row) in self.0.iter_mut().enumerate() {
            row.truncate(d + 1 - j);
        }
        self.trim();
    }

    /// Order of `F(x, 0)`, `None` when `y` divides `F`.
    fn row0_order(&self) -> Option<usize> {
        self.0.first()?.iter().position(|c| !c.is_zero())
    }

    fn div_y(&mut self) {
        debug_assert!(self.0.first().is_none_or(|r| r.iter().all(|c| c.is_zero())));
        if !self.0.is_empty() {
            self.0.remove(0);
        }
        self.trim();
    }

    /// Divides out the rational content so coefficient heights stay small.
    fn make_primitive(&mut self) {
        let mut den = BigInt::one();
        let mut num = BigInt::zero();
        for c in self.0.iter().flatten() {
            for q in [c.re(), c.im()] {
                if !q.is_zero() {
                    den = den.lcm(q.denom());
                    num = num.gcd(q.numer());
                }
            }
        }
        if num.is_zero() || (den.is_one() && num.is_one()) {
            return;
        }
        let k = Gr::from_rational(BigRational::new(den, num));
        for c in self.0.iter_mut().flatten() {
            if !c.is_zero() {
                *c = &*c * &k;
            }
        }
    }
}

fn add_product(out: &mut Rows, p: &[Gr], k: usize, rows: &Rows, d: usize, negate: bool) {
    for (j, row) in rows.0.iter().enumerate() {
        if j > d {
            break;
        }
        let cap = d - j;
        if out.0.len() <= j {
            out.0.resize(j + 1, Vec::new());
        }
        let o = &mut out.0[j];
        for (i, a) in row.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (l, b) in p.iter().enumerate() {
                let idx = i + l + k;
                if idx > cap {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                if o.len() <= idx {
                    o.resize(idx + 1, Gr::zero());
                }
                let t = a * b;
                if negate {
                    o[idx] -= &t;
                } else {
                    o[idx] += &t;
                }
            }
        }
    }
}

/// `u g - x^k v f`, dropping terms of total degree above `d`.
fn combine(u: &[Gr], g: &Rows, v: &[Gr], k: usize, f: &Rows, d: usize) -> Rows {
    let mut out = Rows(Vec::new());
    add_product(&mut out, u, 0, g, d, false);
    add_product(&mut out, v, k, f, d, true);
    out.trim();
    out
}

/// `Some(m)` when `m(F, G) <= budget`, `None` when it is larger.
fn bounded(mut f: Rows, mut g: Rows, budget: usize) -> Option<u64> {
    let mut acc = 0u64;
    let mut d = budget as i64;
    loop {
        if d < 0 {
            return None;
        }
        let du = d as usize;
        f.truncate(du);
        g.truncate(du);
        if !f.constant().is_zero() || !g.constant().is_zero() {
            return Some(acc);
        }
        if f.is_zero() || g.is_zero() {
            return None;
        }
        match (f.row0_order(), g.row0_order()) {
            (None, None) => return None,
            (Some(_), None) => std::mem::swap(&mut f, &mut g),
            (Some(r), Some(s)) if r > s => std::mem::swap(&mut f, &mut g),
            _ => {}
        }
        match (f.row0_order(), g.row0_order()) {
            (None, Some(s)) => {
                // F = y H: m(F, G) = ord G(x, 0) + m(H, G)
                f.div_y();
                acc += s as u64;
                d -= s as i64;
            }
            (Some(r), Some(s)) => {
                if s > du {
                    return None;
                }
                // u is a unit at 0, so m(F, u G - x^(s-r) v F) = m(F, G)
                let u = f.0[0][r..].to_vec();
                let v = g.0[0][s..].to_vec();
                g = combine(&u, &g, &v, s - r, &f, du);
                g.div_y();
                g.make_primitive();
                acc += r as u64;
                d -= r as i64;
            }
            _ => unreachable!(),
        }
    }
}

/// `lc^k * g mod f` as polynomials in y, when the y-leading coefficient of `f` is a unit
/// at the origin. Same local intersection number with `f` as `g`.
fn reduce_mod_y(g: &BiPoly, f: &BiPoly) -> Option<BiPoly> {
    let fr = f.to_y_rows();
    let gr = g.to_y_rows();
    let df = fr.len().checked_sub(1)?;
    if df == 0 || gr.len() <= df {
        return None;
    }
    let lc = &fr[df];
    if lc.coeff(0).is_zero() {
        return None;
    }
    let lc_const = lc.degree() == Some(0);
    let inv = lc.coeff(0).inverse().unwrap();
    let mut r = gr;
    while r.len() > df {
        let top = r.len() - 1;
        let lr = r[top].clone();
        let shift = top - df;
        if lc_const {
            let c = lr.scale(&inv);
            for (j, fj) in fr.iter().enumerate() {
                r[j + shift] = r[j + shift].sub(&fj.mul(&c));
            }
        } else {
            for row in r.iter_mut() {
                *row = row.mul(lc);
            }
            for (j, fj) in fr.iter().enumerate() {
                r[j + shift] = r[j + shift].sub(&fj.mul(&lr));
            }
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    Some(BiPoly::from_y_rows(&r))
}

/// Local intersection number `m(f, g)` at the origin.
pub fn intersection_multiplicity(f: &BiPoly, g: &BiPoly) -> Result<ExtendedNat> {
    if f.is_zero() || g.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() || !g.vanishes_at_origin() {
        return Ok(Finite(0));
    }
    let fy = f.degree_in(Var::Y).unwrap_or(0);
    let gy = g.degree_in(Var::Y).unwrap_or(0);
    let (mut a, mut b) = (f.clone(), g.clone());
    if fy <= gy {
        if let Some(r) = reduce_mod_y(&b, &a) {
            b = r;
        }
    } else if let Some(r) = reduce_mod_y(&a, &b) {
        a = r;
    }
    if a.is_zero() || b.is_zero() {
        return Ok(Infinite);
    }
    if !a.vanishes_at_origin() || !b.vanishes_at_origin() {
        return Ok(Finite(0));
    }
    // Without a common component through 0 the local number is at most the Bezout number.
    let bezout = a.total_degree().unwrap_or(0) as usize * b.total_degree().unwrap_or(0) as usize;
    let fa = Rows::from_poly(&a);
    let fb = Rows::from_poly(&b);
    let mut budget = 32usize;
    loop {
        if let Some(m) = bounded(fa.clone(), fb.clone(), budget) {
            return Ok(Finite(m));
        }
        if budget >= bezout {
            return Ok(Infinite);
        }
        budget = (budget + budget / 2).min(bezout.max(32));
    }
}

/// `m(f, g)` as the order of `g` along a parametrisation of the branch `f`, retried at
/// doubling truncation. Infinity only when `g` vanishes on the exact source.
pub fn intersection_via_param(g: &BiPoly, gamma: &ParamCurve) -> Result<ExtendedNat> {
    intersection_via_param_with(g, gamma, gamma.trunc(), DEFAULT_MAX_TRUNC)
}

pub fn intersection_via_param_with(
    g: &BiPoly,
    gamma: &ParamCurve,
    trunc: usize,
    max_trunc: usize,
) -> Result<ExtendedNat> {
    if g.is_zero() {
        return Ok(Infinite);
    }
    if gamma.annihilated_by(g) == Some(true) {
        return Ok(Infinite);
    }
    with_retry(trunc, max_trunc.max(trunc), |n| {
        let c = gamma.at_trunc(n)?;
        let s = eval_on_curve(g, &c);
        s.order().map(|k| Finite(k as u64))
    })
}

/// Sum of the orders of `g` along every supplied branch.
pub fn intersection_via_branches(g: &BiPoly, branches: &[ParamCurve]) -> Result<ExtendedNat> {
    let mut total = Finite(0);
    for b in branches {
        total = total + intersection_via_param(g, b)?;
    }
    Ok(total)
}

/// Milnor number `m(f_x, f_y)`.
pub fn milnor_number(f: &BiPoly) -> Result<ExtendedNat> {
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(CurveError::NotAtOrigin);
    }
    let fx = f.dx();
    let fy = f.dy();
    if fx.is_zero() && fy.is_zero() {
        return Ok(Infinite);
    }
    if fx.is_zero() || fy.is_zero() {
        // one partial vanishing identically forces f to depend on a single variable
        let other = if fx.is_zero() { &fy } else { &fx };
        if !other.vanishes_at_origin() {
            return Ok(Finite(0));
        }
        return Ok(Infinite);
    }
    intersection_multiplicity(&fx, &fy)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TeissierCheck {
    pub lhs: ExtendedNat,
    pub rhs: ExtendedNat,
    pub ok: bool,
    /// Coordinate change applied to make `f(0, y)` nonzero, if any.
    pub change: Option<String>,
}

/// Compares `m(f, f_y)` with `mu(f) + ord f(0, y) - 1`.
pub fn teissier_check(f: &BiPoly, seed: u64) -> Result<TeissierCheck> {
    if f.is_zero() {
        return Err(CurveError::ZeroPolynomial);
    }
    if !f.vanishes_at_origin() {
        return Err(CurveError::NotAtOrigin);
    }
    let mut g = f.clone();
    let mut change = None;
    if g.restrict_x0().is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let a: i64 = rng.gen_range(1..=9);
            let cand = f.compose(&(&BiPoly::x() + &BiPoly::y().scale(&Gr::from_int(a))), &BiPoly::y());
            if !cand.restrict_x0().is_zero() {
                g = cand;
                change = Some(format!("x -> x + {}*y", a));
                break;
            }
        }
    }
    let ord = g.restrict_x0().order().expect("f(0, y) is nonzero") as u64;
    let fy = g.dy();
    let lhs = if fy.is_zero() {
        Infinite
    } else {
        intersection_multiplicity(&g, &fy)?
    };
    let mu = milnor_number(&g)?;
    let rhs = match mu {
        Finite(m) => Finite((m + ord).saturating_sub(1)),
        Infinite => Infinite,
    };
    Ok(TeissierCheck {
        lhs,
        rhs,
        ok: lhs == rhs,
        change,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[(i64, u32, u32)]) -> BiPoly {
        BiPoly::from_int_terms(v)
    }

    fn m(f: &BiPoly, g: &BiPoly) -> ExtendedNat {
        intersection_multiplicity(f, g).unwrap()
    }

    #[test]
    fn basic_values() {
        assert_eq!(m(&BiPoly::x(), &BiPoly::y()), Finite(1));
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(m(&cusp, &p(&[(18, 4, 0), (-24, 1, 2)])), Finite(8));
        assert_eq!(m(&p(&[(1, 0, 1), (-1, 2, 0)]), &p(&[(1, 0, 1), (1, 2, 0)])), Finite(2));
        assert_eq!(m(&p(&[(1, 1, 1)]), &BiPoly::x()), Infinite);
        assert_eq!(m(&cusp, &p(&[(1, 1, 0), (-1, 0, 2)])), Finite(2));
        assert_eq!(m(&p(&[(1, 0, 0), (1, 1, 0)]), &cusp), Finite(0));
    }

    #[test]
    fn order_based_reduction_terminates() {
        // the naive scalar cancellation loops forever on this pair
        let f = p(&[(1, 0, 1), (-1, 1, 0), (-1, 2, 0)]);
        let g = p(&[(1, 0, 1), (-1, 1, 0)]);
        assert_eq!(m(&f, &g), Finite(2));
    }

    #[test]
    fn common_unit_factor_is_divided_out() {
        let u = p(&[(1, 0, 0), (1, 1, 0), (1, 0, 1)]);
        let f = &u * &BiPoly::x();
        let g = &u * &BiPoly::y();
        assert_eq!(m(&f, &g), Finite(1));
    }

    #[test]
    fn parametric_route() {
        let c = ParamCurve::from_int_terms(&[(1, 2)], &[(1, 3)], 32).unwrap();
        assert_eq!(intersection_via_param(&BiPoly::x(), &c).unwrap(), Finite(2));
        assert_eq!(intersection_via_param(&BiPoly::y(), &c).unwrap(), Finite(3));
        let cusp = p(&[(1, 0, 2), (-1, 3, 0)]);
        assert_eq!(intersection_via_param(&cusp, &c).unwrap(), Infinite);
    }

    #[test]
    fn milnor_values() {
        assert_eq!(milnor_number(&p(&[(1, 0, 2), (-1, 3, 0)])).unwrap(), Finite(2));
        assert_eq!(milnor_number(&p(&[(1, 3, 0), (1, 0, 4)])).unwrap(), Finite(6));
        assert_eq!(milnor_number(&p(&[(1, 0, 1), (-1, 2, 0)])).unwrap(), Finite(0));
        assert_eq!(milnor_number(&p(&[(1, 0, 1), (-1, 2, 0)]).pow(2)).unwrap(), Infinite);
    }

    #[test]
    fn teissier_values() {
        let t = teissier_check(&p(&[(1, 0, 2), (-1, 3, 0)]), 0).unwrap();
        assert_eq!((t.lhs, t.rhs, t.ok), (Finite(3), Finite(3), true));
        let t = teissier_check(&p(&[(1, 3, 0), (1, 0, 4)]), 0).unwrap();
        assert_eq!((t.lhs, t.rhs, t.ok), (Finite(9), Finite(9), true));
        let t = teissier_check(&p(&[(1, 0, 1), (-1, 2, 0)]), 0).unwrap();
        assert_eq!((t.lhs, t.rhs, t.ok), (Finite(0), Finite(0), true));
        let t = teissier_check(&p(&[(1, 1, 0), (1, 1, 1)]), 7).unwrap();
        assert!(t.change.is_some());
    }
}
