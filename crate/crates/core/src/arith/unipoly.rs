//! Dense univariate polynomials over Q(i).

use num_traits::{One, Zero};

use super::GaussianRational as Gr;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    /// `coeffs[k]` multiplies `var^k`; never ends in a zero.
    coeffs: Vec<Gr>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Gr>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::constant(Gr::one())
    }

    pub fn constant(c: Gr) -> Self {
        UniPoly::new(vec![c])
    }

    pub fn monomial(c: Gr, k: usize) -> Self {
        let mut v = vec![Gr::zero(); k + 1];
        v[k] = c;
        UniPoly::new(v)
    }

    pub fn from_ints(v: &[i64]) -> Self {
        UniPoly::new(v.iter().map(|&n| Gr::from_int(n)).collect())
    }

    pub fn coeffs(&self) -> &[Gr] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Gr {
        self.coeffs.get(k).cloned().unwrap_or_else(Gr::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> Option<&Gr> {
        self.coeffs.last()
    }

    pub fn add(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => out.push(a + b),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        UniPoly::new(out)
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Gr::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        UniPoly::new(out)
    }

    pub fn scale(&self, c: &Gr) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(k as i64))
                .collect(),
        )
    }

    /// Division with remainder over the field. Panics on a zero divisor.
    pub fn div_rem(&self, rhs: &UniPoly) -> (UniPoly, UniPoly) {
        let dr = rhs.degree().expect("division by zero polynomial");
        let inv_lead = rhs.leading().unwrap().inverse().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dr {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Gr::zero(); rem.len() - dr];
        for k in (dr..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = &rem[k] * &inv_lead;
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let t = &c * b;
                    rem[k - dr + j] -= &t;
                }
            }
            quot[k - dr] = c;
        }
        rem.truncate(dr);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Exact quotient, or `None` when `rhs` does not divide `self`.
    pub fn exact_div(&self, rhs: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }

    /// Scaled so the leading coefficient is 1; zero stays zero.
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inverse().unwrap()),
        }
    }

    /// Monic gcd by the Euclidean algorithm; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, at: &Gr) -> Gr {
        let mut acc = Gr::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Multiply by `var^k`.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Gr::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs: v }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euclid_gcd_is_monic_common_factor() {
        // (x - 1)(x + 2) and (x - 1)(x - 3)
        let a = UniPoly::from_ints(&[-2, 1, 1]);
        let b = UniPoly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), UniPoly::from_ints(&[-1, 1]));
        assert_eq!(a.gcd(&UniPoly::zero()), a.monic());
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = UniPoly::from_ints(&[1, 0, 3, 5]);
        let b = UniPoly::from_ints(&[2, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().is_none_or(|d| d < 1));
    }
}
