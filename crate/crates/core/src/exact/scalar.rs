//! Gaussian rationals `a/b + (c/d) i` with arbitrary-precision parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactError;

/// An exact element of Q(i).
///
/// Both parts are kept in lowest terms with positive denominators (this is
/// what `BigRational` maintains), so derived equality is exact equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
            im: BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|^2`, a non-negative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if self.im.is_zero() {
            return Ok(Scalar {
                re: self.re.recip(),
                im: BigRational::zero(),
            });
        }
        let n = self.norm_sqr();
        Ok(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self * &other.inv()?)
    }

    /// `(-1)^k`.
    pub fn sign(k: usize) -> Scalar {
        if k.is_multiple_of(2) {
            Scalar::one()
        } else {
            Scalar::from_int(-1)
        }
    }
}

/// The four field operations, as a value for table-driven callers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arithmetic(a: &Scalar, b: &Scalar, op: ScalarOp) -> Result<Scalar, ExactError> {
    match op {
        ScalarOp::Add => Ok(a + b),
        ScalarOp::Sub => Ok(a - b),
        ScalarOp::Mul => Ok(a * b),
        ScalarOp::Div => a.checked_div(b),
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        Scalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        // real fast path: nearly every coefficient in practice is real
        if self.im.is_zero() && rhs.im.is_zero() {
            return Scalar {
                re: &self.re * &rhs.re,
                im: BigRational::zero(),
            };
        }
        Scalar {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    /// Renders in the manifest syntax: `1`, `-2/3`, `i`, `1/2-3i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rational(&self.re));
        }
        let mut out = String::new();
        if !self.re.is_zero() {
            out.push_str(&fmt_rational(&self.re));
            if self.im.is_positive() {
                out.push('+');
            }
        }
        if self.im.is_one() {
            out.push('i');
        } else if (-self.im.clone()).is_one() {
            out.push_str("-i");
        } else {
            out.push_str(&fmt_rational(&self.im));
            out.push('i');
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_unsigned_rational(text: &str, whole: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::ScalarSyntax {
        text: whole.to_string(),
        reason: "expected digits or digits/digits".to_string(),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(ExactError::ScalarSyntax {
            text: whole.to_string(),
            reason: "zero denominator".to_string(),
        });
    }
    Ok(BigRational::new(n, d))
}

impl FromStr for Scalar {
    type Err = ExactError;

    /// Parses `a/b+c/di` with optional parts. Decimal notation is rejected.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err(ExactError::ScalarSyntax {
                text: String::new(),
                reason: "empty scalar".to_string(),
            });
        }
        if s.contains(['.', 'e', 'E']) {
            return Err(ExactError::ScalarSyntax {
                text: s.to_string(),
                reason: "exact scalar syntax required (no decimal notation)".to_string(),
            });
        }
        // split into signed terms at every +/- after the first character
        let mut terms: Vec<(bool, &str)> = Vec::new();
        let bytes = s.as_bytes();
        let mut start = 0;
        let mut negative = false;
        if bytes[0] == b'+' || bytes[0] == b'-' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        let mut k = start;
        while k < bytes.len() {
            if bytes[k] == b'+' || bytes[k] == b'-' {
                terms.push((negative, &s[start..k]));
                negative = bytes[k] == b'-';
                start = k + 1;
            }
            k += 1;
        }
        terms.push((negative, &s[start..]));
        if terms.len() > 2 {
            return Err(ExactError::ScalarSyntax {
                text: s.to_string(),
                reason: "at most one real and one imaginary part".to_string(),
            });
        }
        let mut re: Option<BigRational> = None;
        let mut im: Option<BigRational> = None;
        for (neg, body) in terms {
            let (slot, coeff) = match body.strip_suffix('i') {
                Some(c) => (&mut im, c),
                None => (&mut re, body),
            };
            if slot.is_some() {
                return Err(ExactError::ScalarSyntax {
                    text: s.to_string(),
                    reason: "duplicate real or imaginary part".to_string(),
                });
            }
            let mut q = if coeff.is_empty() && body.ends_with('i') {
                BigRational::one()
            } else {
                parse_unsigned_rational(coeff, s)?
            };
            if neg {
                q = -q;
            }
            *slot = Some(q);
        }
        Ok(Scalar {
            re: re.unwrap_or_else(BigRational::zero),
            im: im.unwrap_or_else(BigRational::zero),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn additive_identity() {
        let x = s("3/7-2i");
        assert_eq!(
            scalar_arithmetic(&x, &Scalar::zero(), ScalarOp::Add).unwrap(),
            x
        );
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = Scalar::i();
        assert_eq!(
            scalar_arithmetic(&i, &i, ScalarOp::Mul).unwrap(),
            Scalar::from_int(-1)
        );
    }

    #[test]
    fn half_plus_i_times_conjugate() {
        let p = scalar_arithmetic(&s("1/2+i"), &s("1/2-i"), ScalarOp::Mul).unwrap();
        assert_eq!(p, Scalar::from_ratio(5, 4));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let r = scalar_arithmetic(&Scalar::one(), &Scalar::zero(), ScalarOp::Div);
        assert_eq!(r, Err(ExactError::DivisionByZero));
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(s("2/4"), s("1/2"));
        assert_eq!(s("-6/4i"), s("-3/2i"));
        assert_eq!(s("2/4").to_string(), "1/2");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(s("1"), Scalar::one());
        assert_eq!(s("-2/3"), Scalar::from_ratio(-2, 3));
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("1/2-3i"), Scalar::from_parts(1, 2, -3, 1));
        assert_eq!(s("3i+1"), Scalar::from_parts(1, 1, 3, 1));
        assert_eq!(s("1/2i"), Scalar::from_parts(0, 1, 1, 2));
    }

    #[test]
    fn parse_rejects() {
        for bad in [
            "", "0.5", "1e3", "1/0", "1+2+3", "i+i", "a", "1//2", "+", "1/",
        ] {
            assert!(bad.parse::<Scalar>().is_err(), "accepted {bad:?}");
        }
        let err = "0.5".parse::<Scalar>().unwrap_err().to_string();
        assert!(err.contains("exact scalar syntax required"), "{err}");
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "0",
            "1",
            "-2/3",
            "i",
            "-i",
            "1/2-3i",
            "-1+i",
            "5/7i",
            "-4/3-1/9i",
        ] {
            let x = s(text);
            assert_eq!(s(&x.to_string()), x);
        }
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = s("3+4i");
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(w, s("3/25-4/25i"));
    }
}
