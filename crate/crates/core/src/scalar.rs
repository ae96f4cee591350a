//! Exact Gaussian rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number backing both parts of a [`Gq`].
pub type Rational = Ratio<i128>;

/// A complex number `re + im·i` with exact rational parts.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gq {
    pub re: Rational,
    pub im: Rational,
}

impl Gq {
    pub const fn new(re: Rational, im: Rational) -> Self {
        Gq { re, im }
    }

    pub fn int(n: i64) -> Self {
        Gq::new(Rational::from_integer(n as i128), Rational::zero())
    }

    pub fn real(re: Rational) -> Self {
        Gq::new(re, Rational::zero())
    }

    pub fn i() -> Self {
        Gq::new(Rational::zero(), Rational::one())
    }

    pub fn conj(self) -> Self {
        Gq::new(self.re, -self.im)
    }

    /// `|z|²`, always real.
    pub fn norm_sqr(self) -> Rational {
        self.re * self.re + self.im * self.im
    }

    pub fn inv(self) -> Self {
        let n = self.norm_sqr();
        assert!(!n.is_zero(), "division by zero in exact arithmetic");
        Gq::new(self.re / n, -self.im / n)
    }

    pub fn to_f64_pair(self) -> (f64, f64) {
        (ratio_to_f64(self.re), ratio_to_f64(self.im))
    }
}

fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

impl Zero for Gq {
    fn zero() -> Self {
        Gq::new(Rational::zero(), Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gq {
    fn one() -> Self {
        Gq::int(1)
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, rhs: Gq) -> Gq {
        Gq::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl AddAssign for Gq {
    fn add_assign(&mut self, rhs: Gq) {
        *self = *self + rhs;
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, rhs: Gq) -> Gq {
        Gq::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl SubAssign for Gq {
    fn sub_assign(&mut self, rhs: Gq) {
        *self = *self - rhs;
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, rhs: Gq) -> Gq {
        // real-only fast path; most entries in practice are 0/±1
        if self.im.is_zero() && rhs.im.is_zero() {
            return Gq::real(self.re * rhs.re);
        }
        Gq::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Div for Gq {
    type Output = Gq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Gq) -> Gq {
        self * rhs.inv()
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re, -self.im)
    }
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::int(n)
    }
}

fn fmt_ratio(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `i`, `-i`, `3i`, `1/2i`.
fn imag_part(r: &Rational) -> String {
    if r.is_one() {
        "i".into()
    } else if (-r).is_one() {
        "-i".into()
    } else {
        format!("{}i", fmt_ratio(r))
    }
}

/// Canonical text form: `"p/q"`, `"p/q+r/si"`, `"r/si"`; integers drop the denominator
/// and a unit imaginary coefficient is written `i`.
impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_ratio(&self.re)),
            (true, false) => write!(f, "{}", imag_part(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}", fmt_ratio(&self.re), sign, imag_part(&self.im.abs()))
            }
        }
    }
}

impl fmt::Debug for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid Gaussian rational literal {0:?}")]
pub struct ParseGqError(pub String);

fn parse_ratio(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i128 = n.trim().parse().ok()?;
            let d: i128 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<i128>().ok().map(Rational::from_integer),
    }
}

/// Parses an imaginary coefficient (text before the trailing `i`), allowing `""`, `"+"`, `"-"`.
fn parse_im_coeff(s: &str) -> Option<Rational> {
    match s.trim() {
        "" | "+" => Some(Rational::one()),
        "-" => Some(-Rational::one()),
        t => {
            let t = t.strip_prefix('+').unwrap_or(t);
            parse_ratio(t)
        }
    }
}

impl FromStr for Gq {
    type Err = ParseGqError;

    fn from_str(src: &str) -> Result<Self, Self::Err> {
        let err = || ParseGqError(src.to_string());
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(err());
        }
        let Some(body) = s.strip_suffix('i') else {
            return parse_ratio(&s).map(Gq::real).ok_or_else(err);
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|(_, c)| *c == '+' || *c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(at) => {
                let re = parse_ratio(&body[..at]).ok_or_else(err)?;
                let im = parse_im_coeff(&body[at..]).ok_or_else(err)?;
                Ok(Gq::new(re, im))
            }
            None => parse_im_coeff(body)
                .map(|im| Gq::new(Rational::zero(), im))
                .ok_or_else(err),
        }
    }
}

impl Serialize for Gq {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Gq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Lit {
            Int(i64),
            Text(String),
        }
        match Lit::deserialize(deserializer)? {
            Lit::Int(n) => Ok(Gq::int(n)),
            Lit::Text(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn display_forms() {
        assert_eq!(Gq::int(3).to_string(), "3");
        assert_eq!(Gq::real(q(-1, 2)).to_string(), "-1/2");
        assert_eq!(Gq::new(q(1, 2), q(-3, 4)).to_string(), "1/2-3/4i");
        assert_eq!(Gq::new(q(0, 1), q(2, 1)).to_string(), "2i");
    }

    #[test]
    fn parses_loose_forms() {
        assert_eq!("1/2 + 3/4 i".parse::<Gq>().unwrap(), Gq::new(q(1, 2), q(3, 4)));
        assert_eq!("-i".parse::<Gq>().unwrap(), Gq::new(q(0, 1), q(-1, 1)));
        assert_eq!("2-i".parse::<Gq>().unwrap(), Gq::new(q(2, 1), q(-1, 1)));
        assert_eq!("-3/6".parse::<Gq>().unwrap(), Gq::real(q(-1, 2)));
        assert!("1/0".parse::<Gq>().is_err());
        assert!("abc".parse::<Gq>().is_err());
        assert!("".parse::<Gq>().is_err());
    }

    #[test]
    fn field_ops() {
        let z = Gq::new(q(1, 2), q(1, 3));
        assert_eq!(z * z.inv(), Gq::one());
        assert_eq!((z * z.conj()).im, Rational::zero());
        assert_eq!(Gq::i() * Gq::i(), Gq::int(-1));
    }

    fn arb_gq() -> impl Strategy<Value = Gq> {
        (-20i128..20, 1i128..9, -20i128..20, 1i128..9)
            .prop_map(|(a, b, c, d)| Gq::new(q(a, b), q(c, d)))
    }

    proptest! {
        #[test]
        fn text_round_trip(z in arb_gq()) {
            prop_assert_eq!(z.to_string().parse::<Gq>().unwrap(), z);
        }

        #[test]
        fn conj_is_multiplicative(a in arb_gq(), b in arb_gq()) {
            prop_assert_eq!((a * b).conj(), a.conj() * b.conj());
        }
    }
}
