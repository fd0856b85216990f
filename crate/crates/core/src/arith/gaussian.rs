//! Exact elements of the Gaussian rational field Q(i).

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `re + im * i` with both parts canonical big rationals.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num / den` as a real element. Panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        GaussianRational {
            re,
            im: BigRational::zero(),
        }
    }

    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `re^2 + im^2`, the field norm down to Q.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(GaussianRational::from_rational(self.re.recip()));
        }
        let n = self.norm();
        Some(GaussianRational {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussianRational::one();
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

    /// Multiply by a machine integer.
    pub fn scale(&self, k: i64) -> Self {
        if k == 0 || self.is_zero() {
            return GaussianRational::zero();
        }
        let k = BigRational::from_integer(BigInt::from(k));
        GaussianRational {
            re: &self.re * &k,
            im: &self.im * &k,
        }
    }

    /// True when the real part is a negative number and the imaginary part vanishes,
    /// or the real part vanishes and the imaginary part is negative. Used by printers to
    /// pull a sign out in front of a term.
    pub fn is_negative_like(&self) -> bool {
        (self.im.is_zero() && self.re.is_negative()) || (self.re.is_zero() && self.im.is_negative())
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational {
            re: BigRational::one(),
            im: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: if self.im.is_zero() && rhs.im.is_zero() {
                BigRational::zero()
            } else {
                &self.im + &rhs.im
            },
        }
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: if self.im.is_zero() && rhs.im.is_zero() {
                BigRational::zero()
            } else {
                &self.im - &rhs.im
            },
        }
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussianRational::from_rational(&self.re * &rhs.re),
            (true, false) => GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.re * &rhs.im,
            },
            (false, true) => GaussianRational {
                re: &self.re * &rhs.re,
                im: &self.im * &rhs.re,
            },
            (false, false) => GaussianRational {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        let inv = rhs.inverse().expect("division by zero in Q(i)");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $method(self, rhs: &GaussianRational) -> GaussianRational {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        if !rhs.im.is_zero() {
            self.im += &rhs.im;
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        self.re -= &rhs.re;
        if !rhs.im.is_zero() {
            self.im -= &rhs.im;
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, rhs: &GaussianRational) {
        *self = &*self * rhs;
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

fn fmt_rational(q: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "({}/{})", q.numer(), q.denom())
    }
}

/// Prints a coefficient in the canonical grammar: `3`, `(1/2)`, `i`, `(-2/3)*i`,
/// `(1 + 2*i)`. Every form parses back to the same element.
impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re0 = self.re.is_zero();
        let im0 = self.im.is_zero();
        if im0 {
            return fmt_rational(&self.re, f);
        }
        let write_im = |f: &mut fmt::Formatter<'_>, im: &BigRational| -> fmt::Result {
            if im.is_one() {
                write!(f, "i")
            } else if (-im.clone()).is_one() {
                write!(f, "-i")
            } else {
                fmt_rational(im, f)?;
                write!(f, "*i")
            }
        };
        if re0 {
            return write_im(f, &self.im);
        }
        write!(f, "(")?;
        fmt_rational(&self.re, f)?;
        if self.im.is_negative() {
            write!(f, " - ")?;
            write_im(f, &-self.im.clone())?;
        } else {
            write!(f, " + ")?;
            write_im(f, &self.im)?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussianRational {
        GaussianRational::from_ratio(n, d)
    }

    #[test]
    fn canonical_form_and_field_ops() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        let i = GaussianRational::i();
        assert_eq!(&i * &i, GaussianRational::from_int(-1));
        let z = &q(1, 2) + &(&i * &q(3, 1));
        let w = &z * &z.inverse().unwrap();
        assert_eq!(w, GaussianRational::one());
        assert_eq!(&z * &z.conj(), GaussianRational::from_rational(z.norm()));
        assert!(GaussianRational::zero().inverse().is_none());
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(3, 1).to_string(), "3");
        assert_eq!(q(-1, 2).to_string(), "(-1/2)");
        assert_eq!(GaussianRational::i().to_string(), "i");
        assert_eq!((-GaussianRational::i()).to_string(), "-i");
        let z = &q(1, 2) - &(&GaussianRational::i() * &q(2, 3));
        assert_eq!(z.to_string(), "((1/2) - (2/3)*i)");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = &q(1, 1) + &GaussianRational::i();
        assert_eq!(z.pow(4), GaussianRational::from_int(-4));
        assert_eq!(z.pow(0), GaussianRational::one());
    }
}
