//! Sparse bivariate polynomials in x, y over Q(i).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational as Gr, UniPoly};
use crate::error::{CurveError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    X,
    Y,
}

/// Exponent pair `(i, j)` for `x^i y^j`.
pub type Monomial = (u32, u32);

/// Graded lexicographic order with x > y.
pub fn grlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    (a.0 + a.1).cmp(&(b.0 + b.1)).then_with(|| a.0.cmp(&b.0))
}

#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Gr>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        BiPoly::constant(Gr::one())
    }

    pub fn constant(c: Gr) -> Self {
        BiPoly::monomial(c, 0, 0)
    }

    pub fn monomial(c: Gr, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    pub fn x() -> Self {
        BiPoly::monomial(Gr::one(), 1, 0)
    }

    pub fn y() -> Self {
        BiPoly::monomial(Gr::one(), 0, 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Gr)>>(it: I) -> Self {
        let mut p = BiPoly::zero();
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    /// Integer-coefficient shorthand: `[(c, i, j), ...]`.
    pub fn from_int_terms(v: &[(i64, u32, u32)]) -> Self {
        BiPoly::from_terms(v.iter().map(|&(c, i, j)| ((i, j), Gr::from_int(c))))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Gr) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gr)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Gr {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Gr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> Gr {
        self.coeff(0, 0)
    }

    pub fn vanishes_at_origin(&self) -> bool {
        self.constant_term().is_zero()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| if v == Var::X { i } else { j }).max()
    }

    /// Lowest total degree of a term.
    pub fn multiplicity(&self) -> Result<u32> {
        self.terms
            .keys()
            .map(|&(i, j)| i + j)
            .min()
            .ok_or(CurveError::ZeroPolynomial)
    }

    pub fn homogeneous_part(&self, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Lowest-degree homogeneous part.
    pub fn tangent_cone(&self) -> Result<BiPoly> {
        Ok(self.homogeneous_part(self.multiplicity()?))
    }

    /// Drop every term of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j <= d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Gr) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &Gr, di: u32, dj: u32) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), a)| ((i + di, j + dj), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn partial(&self, v: Var) -> BiPoly {
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            match v {
                Var::X if i > 0 => out.add_term((i - 1, j), &c.scale(i as i64)),
                Var::Y if j > 0 => out.add_term((i, j - 1), &c.scale(j as i64)),
                _ => {}
            }
        }
        out
    }

    pub fn dx(&self) -> BiPoly {
        self.partial(Var::X)
    }

    pub fn dy(&self) -> BiPoly {
        self.partial(Var::Y)
    }

    /// `f(x, 0)` as a polynomial in x.
    pub fn restrict_y0(&self) -> UniPoly {
        let n = self.degree_in(Var::X).unwrap_or(0) as usize;
        let mut v = vec![Gr::zero(); n + 1];
        for (&(i, j), c) in &self.terms {
            if j == 0 {
                v[i as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    /// `f(0, y)` as a polynomial in y.
    pub fn restrict_x0(&self) -> UniPoly {
        let n = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let mut v = vec![Gr::zero(); n + 1];
        for (&(i, j), c) in &self.terms {
            if i == 0 {
                v[j as usize] = c.clone();
            }
        }
        UniPoly::new(v)
    }

    pub fn swap_vars(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }

    /// `f(p(x,y), q(x,y))`.
    pub fn compose(&self, p: &BiPoly, q: &BiPoly) -> BiPoly {
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let dy = self.degree_in(Var::Y).unwrap_or(0) as usize;
        let mut ppow = vec![BiPoly::one()];
        for k in 1..=dx {
            let next = &ppow[k - 1] * p;
            ppow.push(next);
        }
        let mut qpow = vec![BiPoly::one()];
        for k in 1..=dy {
            let next = &qpow[k - 1] * q;
            qpow.push(next);
        }
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            let t = &ppow[i as usize] * &qpow[j as usize];
            out = &out + &t.scale(c);
        }
        out
    }

    /// `f(a x + b y, c x + d y)`.
    pub fn linear_change(&self, a: &Gr, b: &Gr, c: &Gr, d: &Gr) -> BiPoly {
        let p = &BiPoly::x().scale(a) + &BiPoly::y().scale(b);
        let q = &BiPoly::x().scale(c) + &BiPoly::y().scale(d);
        self.compose(&p, &q)
    }

    /// Leading monomial and coefficient in grlex order.
    pub fn leading_term(&self) -> Option<(Monomial, &Gr)> {
        self.terms
            .iter()
            .max_by(|a, b| grlex_cmp(a.0, b.0))
            .map(|(m, c)| (*m, c))
    }

    /// Scaled so the grlex-leading coefficient is 1.
    pub fn monic(&self) -> BiPoly {
        match self.leading_term() {
            None => BiPoly::zero(),
            Some((_, c)) => self.scale(&c.inverse().unwrap()),
        }
    }

    /// Exact division; `None` if `d` does not divide `self`.
    ///
    /// A single polynomial is a Gröbner basis of the ideal it generates, so the grlex
    /// division remainder is zero exactly when `d` divides `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        let (lm, lc) = d.leading_term()?;
        let inv = lc.inverse().unwrap();
        let mut rem = self.clone();
        let mut quot = BiPoly::zero();
        loop {
            let Some((m, c)) = rem.leading_term() else {
                return Some(quot);
            };
            if m.0 < lm.0 || m.1 < lm.1 {
                return None;
            }
            let coef = c * &inv;
            let (di, dj) = (m.0 - lm.0, m.1 - lm.1);
            quot.add_term((di, dj), &coef);
            let sub = d.mul_monomial(&coef, di, dj);
            rem = &rem - &sub;
        }
    }

    pub fn divides(&self, other: &BiPoly) -> bool {
        other.exact_div(self).is_some()
    }

    /// Coefficients of `y^k` as polynomials in x.
    pub fn to_y_rows(&self) -> Vec<UniPoly> {
        let dy = match self.degree_in(Var::Y) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let dx = self.degree_in(Var::X).unwrap_or(0) as usize;
        let mut rows = vec![vec![Gr::zero(); dx + 1]; dy + 1];
        for (&(i, j), c) in &self.terms {
            rows[j as usize][i as usize] = c.clone();
        }
        rows.into_iter().map(UniPoly::new).collect()
    }

    pub fn from_y_rows(rows: &[UniPoly]) -> BiPoly {
        let mut terms = BTreeMap::new();
        for (j, row) in rows.iter().enumerate() {
            for (i, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert((i as u32, j as u32), c.clone());
                }
            }
        }
        BiPoly { terms }
    }

    pub fn from_x_poly(p: &UniPoly) -> BiPoly {
        BiPoly::from_y_rows(std::slice::from_ref(p))
    }

    pub fn eval(&self, x: &Gr, y: &Gr) -> Gr {
        let mut acc = Gr::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(&(c * &x.pow(i)) * &y.pow(j));
        }
        acc
    }

    /// Minimum of `w1*i + w2*j` over the support.
    pub fn weighted_order(&self, w1: u32, w2: u32) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| w1 * i + w2 * j).min()
    }

    /// The terms of weighted degree exactly `d`.
    pub fn weighted_part(&self, w1: u32, w2: u32, d: u32) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .filter(|((i, j), _)| w1 * i + w2 * j == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Canonical text with variable names of the caller's choosing (used for `x`, `y`).
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, rhs: &BiPoly) -> BiPoly {
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(*m, c);
        }
        big
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, rhs: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, rhs: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<Monomial, Gr> = BTreeMap::new();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                let p = a * b;
                acc.entry((i1 + i2, j1 + j2)).and_modify(|v| *v += &p).or_insert(p);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        BiPoly { terms: acc }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $method(self, rhs: BiPoly) -> BiPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Writes `coef * mono` terms joined by ` + ` / ` - `, pulling real or pure-imaginary
/// negative signs out front. Shared by polynomial and series printers.
pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: IntoIterator<Item = (&'a Gr, String)>,
{
    let mut first = true;
    for (c, mono) in terms {
        let (neg, mag) = if c.is_negative_like() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else if neg {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        first = false;
        if mono.is_empty() {
            write!(f, "{}", mag)?;
        } else if mag.is_one() {
            write!(f, "{}", mono)?;
        } else {
            write!(f, "{}*{}", mag, mono)?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

pub(crate) fn mono_text(vars: &[(&str, u32)]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{}^{}", v, e) })
        .collect();
    parts.join("*")
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut ms: Vec<(&Monomial, &Gr)> = self.terms.iter().collect();
        ms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        write_terms(
            f,
            ms.into_iter().map(|(&(i, j), c)| (c, mono_text(&[("x", i), ("y", j)]))),
        )
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({})", self)
    }
}
