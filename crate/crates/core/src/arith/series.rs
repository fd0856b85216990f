//! Power series in t truncated at a fixed order.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::bipoly::{mono_text, write_terms};
use super::{GaussianRational as Gr, UniPoly};
use crate::error::{CurveError, Result};

pub const DEFAULT_TRUNC: usize = 64;
pub const DEFAULT_MAX_TRUNC: usize = 1024;

/// `sum coeffs[k] t^k + O(t^trunc)`; `coeffs.len() == trunc` always.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    coeffs: Vec<Gr>,
}

impl TruncSeries {
    pub fn new(mut coeffs: Vec<Gr>, trunc: usize) -> Self {
        coeffs.resize(trunc, Gr::zero());
        TruncSeries { coeffs }
    }

    pub fn zero(trunc: usize) -> Self {
        TruncSeries::new(Vec::new(), trunc)
    }

    pub fn one(trunc: usize) -> Self {
        TruncSeries::new(vec![Gr::one()], trunc)
    }

    pub fn monomial(c: Gr, k: usize, trunc: usize) -> Self {
        let mut v = vec![Gr::zero(); trunc];
        if k < trunc {
            v[k] = c;
        }
        TruncSeries { coeffs: v }
    }

    pub fn t(trunc: usize) -> Self {
        TruncSeries::monomial(Gr::one(), 1, trunc)
    }

    pub fn from_poly(p: &UniPoly, trunc: usize) -> Self {
        TruncSeries::new(p.coeffs().iter().take(trunc).cloned().collect(), trunc)
    }

    /// Expansion of `num / den`, `den(0) != 0`.
    pub fn from_ratio(num: &UniPoly, den: &UniPoly, trunc: usize) -> Result<Self> {
        TruncSeries::from_poly(num, trunc).div(&TruncSeries::from_poly(den, trunc))
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Gr] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Gr {
        self.coeffs.get(k).cloned().unwrap_or_else(Gr::zero)
    }

    /// Zero up to truncation.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn with_trunc(&self, trunc: usize) -> Self {
        let mut v = self.coeffs.clone();
        v.truncate(trunc);
        TruncSeries::new(v, trunc.min(self.trunc()))
    }

    pub fn to_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs.clone())
    }

    /// Index of the first nonzero coefficient.
    pub fn order(&self) -> Result<usize> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| CurveError::TruncationInsufficient(format!("series vanishes up to t^{}", self.trunc())))
    }

    pub fn leading_coeff(&self) -> Result<Gr> {
        Ok(self.coeffs[self.order()?].clone())
    }

    pub fn add(&self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.trunc().min(rhs.trunc());
        TruncSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.trunc().min(rhs.trunc());
        TruncSeries {
            coeffs: (0..n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }

    pub fn neg(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Gr) -> TruncSeries {
        TruncSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, rhs: &TruncSeries) -> TruncSeries {
        let n = self.trunc().min(rhs.trunc());
        let mut out = vec![Gr::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate().take(n) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(n - i) {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        TruncSeries { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> TruncSeries {
        let mut acc = TruncSeries::one(self.trunc());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient with truncation `min(trunc) - ord(rhs)`.
    pub fn div(&self, rhs: &TruncSeries) -> Result<TruncSeries> {
        let k = rhs.order().map_err(|_| {
            CurveError::TruncationInsufficient("division by a series that vanishes up to truncation".into())
        })?;
        let n = self.trunc().min(rhs.trunc());
        if let Some(j) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(CurveError::NotASeries(format!(
                "dividend has order {} below divisor order {}",
                j, k
            )));
        }
        let m = n - k;
        let num: Vec<Gr> = self.coeffs[k..n].to_vec();
        let den: Vec<Gr> = rhs.coeffs[k..n].to_vec();
        let inv0 = den[0].inverse().unwrap();
        let mut q = vec![Gr::zero(); m];
        for i in 0..m {
            let mut acc = num[i].clone();
            for j in 1..=i {
                if !den[j].is_zero() && !q[i - j].is_zero() {
                    acc -= &(&den[j] * &q[i - j]);
                }
            }
            q[i] = &acc * &inv0;
        }
        Ok(TruncSeries { coeffs: q })
    }

    /// Divide by `t^k`; the first `k` coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<TruncSeries> {
        if let Some(j) = self.coeffs.iter().take(k).position(|c| !c.is_zero()) {
            return Err(CurveError::NotASeries(format!("t^{} term below t^{}", j, k)));
        }
        Ok(TruncSeries {
            coeffs: self.coeffs[k.min(self.trunc())..].to_vec(),
        })
    }

    /// Multiply by `t^k`.
    pub fn shift_up(&self, k: usize) -> TruncSeries {
        let mut v = vec![Gr::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        TruncSeries { coeffs: v }
    }

    pub fn derivative(&self) -> TruncSeries {
        TruncSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(k as i64))
                .collect(),
        }
    }

    /// `self^(p/q)` for a series with constant term 1, by the power recurrence
    /// `n a_0 P_n = sum_k ((alpha + 1) k - n) a_k P_{n-k}`.
    pub fn pow_ratio(&self, p: i64, q: i64) -> Result<TruncSeries> {
        if !self.coeff(0).is_one() {
            return Err(CurveError::InvalidCurve(
                "fractional power needs constant term 1".into(),
            ));
        }
        let n = self.trunc();
        let alpha = BigRational::new(BigInt::from(p), BigInt::from(q));
        let ap1 = &alpha + BigRational::one();
        let mut out = vec![Gr::zero(); n];
        if n == 0 {
            return Ok(TruncSeries { coeffs: out });
        }
        out[0] = Gr::one();
        for m in 1..n {
            let mut acc = Gr::zero();
            for k in 1..=m {
                let a = &self.coeffs[k];
                if a.is_zero() || out[m - k].is_zero() {
                    continue;
                }
                let w = &ap1 * BigRational::from_integer(BigInt::from(k)) - BigRational::from_integer(BigInt::from(m));
                acc += &(&(a * &out[m - k]) * &Gr::from_rational(w));
            }
            out[m] = &acc * &Gr::from_ratio(1, m as i64);
        }
        Ok(TruncSeries { coeffs: out })
    }

    /// `self(s(t))` for `s(0) = 0`, by Horner.
    pub fn compose(&self, s: &TruncSeries) -> Result<TruncSeries> {
        if !s.coeff(0).is_zero() {
            return Err(CurveError::InvalidCurve("inner series must vanish at 0".into()));
        }
        let n = self.trunc().min(s.trunc());
        let s = s.with_trunc(n);
        let mut acc = TruncSeries::zero(n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&s);
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c, mono_text(&[("t", k as u32)]))),
        )
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(t^{})", self, self.trunc())
    }
}

/// Runs `op` at truncation `start`, doubling on `TruncationInsufficient` up to `max`.
pub fn with_retry<T>(start: usize, max: usize, mut op: impl FnMut(usize) -> Result<T>) -> Result<T> {
    let mut n = start.max(1);
    loop {
        match op(n) {
            Err(e) if e.is_truncation() && n < max => n = (n * 2).min(max),
            other => return other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[i64]) -> TruncSeries {
        TruncSeries::new(v.iter().map(|&n| Gr::from_int(n)).collect(), 16)
    }

    #[test]
    fn product_and_order() {
        let a = s(&[0, 1, 1]);
        let b = s(&[0, 1]);
        assert_eq!(a.mul(&b), s(&[0, 0, 1, 1]));
        assert_eq!(s(&[0, 0, 3, 0, 0, 1]).order().unwrap(), 2);
        assert_eq!(s(&[7, 1]).order().unwrap(), 0);
        assert!(TruncSeries::zero(64).order().unwrap_err().is_truncation());
    }

    #[test]
    fn division_cases() {
        let num = s(&[0, 0, 4, 0, 9]);
        let den = s(&[0, 0, 6]);
        let q = num.div(&den).unwrap();
        assert_eq!(q.coeff(0), Gr::from_ratio(2, 3));
        assert_eq!(q.coeff(2), Gr::from_ratio(3, 2));
        assert!(q
            .coeffs()
            .iter()
            .enumerate()
            .all(|(k, c)| k == 0 || k == 2 || c.is_zero()));
        assert_eq!(q.trunc(), 14);
        let err = s(&[0, 0, 1]).div(&s(&[0, 0, 0, 1])).unwrap_err();
        assert!(matches!(err, CurveError::NotASeries(_)));
    }

    #[test]
    fn derivative_drops_truncation() {
        let d = s(&[0, 0, 0, 1]).derivative();
        assert_eq!(d.coeff(2), Gr::from_int(3));
        assert_eq!(d.trunc(), 15);
        assert!(s(&[5]).derivative().is_zero());
        assert_eq!(s(&[0, 0, 1, 0, 1]).derivative(), s(&[0, 2, 0, 4]).with_trunc(15));
    }

    #[test]
    fn fractional_power_squares_back() {
        let w = s(&[1, 3, -2, 5]);
        let r = w.pow_ratio(1, 2).unwrap();
        assert_eq!(r.mul(&r), w);
        let inv = w.pow_ratio(-1, 1).unwrap();
        assert_eq!(inv.mul(&w), TruncSeries::one(16));
    }

    #[test]
    fn printing() {
        assert_eq!(s(&[0, 0, 1, 1]).to_string(), "t^2 + t^3");
        assert_eq!(s(&[1, -2]).to_string(), "1 - 2*t");
    }
}
