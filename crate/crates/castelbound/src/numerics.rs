//! Exact arithmetic: big rationals and numbers of the form `p + q*sqrt(m)`.
//!
//! Nothing here touches floating point except the `to_f64` helpers, which
//! exist only for drawing.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(pub BigRational);

impl Rat {
    /// `num/den`, reduced. Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rat {
        Rat(BigRational::new(num.into(), den.into()))
    }

    pub fn int(v: impl Into<BigInt>) -> Rat {
        Rat(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Rat {
        Rat(BigRational::zero())
    }

    pub fn one() -> Rat {
        Rat(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn sign(&self) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }

    pub fn abs(&self) -> Rat {
        Rat(self.0.abs())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn pow(&self, e: u32) -> Rat {
        Rat(num_traits::pow(self.0.clone(), e as usize))
    }

    pub fn recip(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn checked_div(&self, other: &Rat) -> Result<Rat> {
        Ok(self * &other.recip()?)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact decimal expansion when the denominator has only factors 2 and 5.
    pub fn to_decimal(&self) -> Option<String> {
        let mut den = self.denom().clone();
        let two = BigInt::from(2);
        let five = BigInt::from(5);
        let (mut twos, mut fives) = (0u32, 0u32);
        while den.is_multiple_of(&two) {
            den /= &two;
            twos += 1;
        }
        while den.is_multiple_of(&five) {
            den /= &five;
            fives += 1;
        }
        if !den.is_one() {
            return None;
        }
        let digits = twos.max(fives);
        let scaled = self.numer() * num_traits::pow(BigInt::from(10), digits as usize) / self.denom();
        if digits == 0 {
            return Some(scaled.to_string());
        }
        let neg = scaled.is_negative();
        let mut s = scaled.abs().to_string();
        while s.len() <= digits as usize {
            s.insert(0, '0');
        }
        let split = s.len() - digits as usize;
        Some(format!("{}{}.{}", if neg { "-" } else { "" }, &s[..split], &s[split..]))
    }
}

/// Total order on rationals.
pub fn rat_cmp(x: &Rat, y: &Rat) -> Ordering {
    x.cmp(y)
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

fn parse_int(s: &str) -> Option<BigInt> {
    let t = s.strip_prefix('+').unwrap_or(s);
    if t.is_empty() || t == "-" {
        return None;
    }
    BigInt::from_str(t).ok()
}

impl FromStr for Rat {
    type Err = Error;

    /// Accepts `p`, `p/q` and terminating decimals such as `-1.25`.
    fn from_str(s: &str) -> Result<Rat> {
        let err = || Error::Parse { what: "rational", input: s.to_string() };
        let t = s.trim();
        if let Some((a, b)) = t.split_once('/') {
            let n = parse_int(a.trim()).ok_or_else(err)?;
            let d = parse_int(b.trim()).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rat::new(n, d));
        }
        if let Some((a, b)) = t.split_once('.') {
            if b.is_empty() || !b.bytes().all(|c| c.is_ascii_digit()) {
                return Err(err());
            }
            let neg = a.starts_with('-');
            let whole = match a.trim_start_matches(['-', '+']) {
                "" => BigInt::zero(),
                w => parse_int(w).filter(|v| !v.is_negative()).ok_or_else(err)?,
            };
            let scale = num_traits::pow(BigInt::from(10), b.len());
            let frac = BigInt::from_str(b).map_err(|_| err())?;
            let mag = Rat::new(whole * &scale + frac, scale);
            return Ok(if neg { -mag } else { mag });
        }
        parse_int(t).map(Rat::int).ok_or_else(err)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(v) => Ok(Rat::int(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

macro_rules! from_prim {
    ($($t:ty),*) => {$(
        impl From<$t> for Rat {
            fn from(v: $t) -> Rat { Rat::int(v) }
        }
    )*};
}
from_prim!(i32, i64, i128, u32, u64, usize);

impl From<BigInt> for Rat {
    fn from(v: BigInt) -> Rat {
        Rat::int(v)
    }
}

macro_rules! rat_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<&Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat((&self.0).$m(&o.0))
            }
        }
        impl $tr<Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat(self.0.$m(o.0))
            }
        }
        impl $tr<&Rat> for Rat {
            type Output = Rat;
            fn $m(self, o: &Rat) -> Rat {
                Rat(self.0.$m(&o.0))
            }
        }
        impl $tr<Rat> for &Rat {
            type Output = Rat;
            fn $m(self, o: Rat) -> Rat {
                Rat((&self.0).$m(o.0))
            }
        }
    };
}
rat_binop!(Add, add);
rat_binop!(Sub, sub);
rat_binop!(Mul, mul);
// Division panics on a zero divisor, like integer division; use `checked_div` on untrusted input.
rat_binop!(Div, div);

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

fn perfect_sqrt(m: &BigInt) -> Option<BigInt> {
    if m.is_negative() {
        return None;
    }
    let s = m.sqrt();
    (&s * &s == *m).then_some(s)
}

/// Exact real number `p + q*sqrt(m)` with `m >= 0`.
///
/// Normal form: `q = 0` and `m = 0` whenever the value is rational.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surd {
    p: Rat,
    q: Rat,
    m: BigInt,
}

impl Surd {
    /// Panics if `m` is negative.
    pub fn new(p: Rat, q: Rat, m: impl Into<BigInt>) -> Surd {
        let m = m.into();
        assert!(!m.is_negative(), "radicand must be non-negative");
        if q.is_zero() || m.is_zero() {
            return Surd::from_rat(p);
        }
        if let Some(s) = perfect_sqrt(&m) {
            return Surd::from_rat(p + q * Rat::int(s));
        }
        Surd { p, q, m }
    }

    pub fn from_rat(p: Rat) -> Surd {
        Surd { p, q: Rat::zero(), m: BigInt::zero() }
    }

    /// `sqrt(r)` for a non-negative rational, written as `sqrt(num*den)/den`.
    pub fn sqrt_rat(r: &Rat) -> Result<Surd> {
        if r.is_negative() {
            return Err(Error::PreconditionViolated(format!("sqrt of negative rational {r}")));
        }
        let den = r.denom().clone();
        Ok(Surd::new(Rat::zero(), Rat::new(1, den.clone()), r.numer() * den))
    }

    pub fn p(&self) -> &Rat {
        &self.p
    }

    pub fn q(&self) -> &Rat {
        &self.q
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        self.is_rational().then_some(&self.p)
    }

    /// Sign of the value.
    ///
    /// | sign p | sign q | result                                  |
    /// |--------|--------|-----------------------------------------|
    /// | any    | 0      | sign p                                  |
    /// | 0 or = | ±      | sign q                                  |
    /// | +      | -      | compare p² with q²m: larger side wins   |
    /// | -      | +      | same                                    |
    pub fn sign(&self) -> Ordering {
        let sp = self.p.sign();
        let sq = self.q.sign();
        if sq == Ordering::Equal {
            return sp;
        }
        if sp == Ordering::Equal || sp == sq {
            return sq;
        }
        let p2 = self.p.pow(2);
        let q2m = self.q.pow(2) * Rat::int(self.m.clone());
        match p2.cmp(&q2m) {
            Ordering::Greater => sp,
            Ordering::Less => sq,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Brings two surds over one radicand. Works when the radicands agree or
    /// their product is a perfect square.
    fn unify(&self, other: &Surd) -> Result<(Surd, Surd)> {
        if self.is_rational() || other.is_rational() || self.m == other.m {
            let m = if self.is_rational() { other.m.clone() } else { self.m.clone() };
            let lift = |s: &Surd| Surd { p: s.p.clone(), q: s.q.clone(), m: m.clone() };
            return Ok((lift(self), lift(other)));
        }
        let prod = &self.m * &other.m;
        if let Some(s) = perfect_sqrt(&prod) {
            // sqrt(m2) = s/m1 * sqrt(m1)
            let factor = Rat::new(s, self.m.clone());
            let moved = Surd { p: other.p.clone(), q: &other.q * &factor, m: self.m.clone() };
            return Ok((self.clone(), moved));
        }
        Err(Error::MixedRadicals(self.m.to_string(), other.m.to_string()))
    }

    pub fn try_cmp(&self, other: &Surd) -> Result<Ordering> {
        Ok(self.try_sub(other)?.sign())
    }

    pub fn cmp_rat(&self, r: &Rat) -> Ordering {
        Surd { p: &self.p - r, q: self.q.clone(), m: self.m.clone() }.sign()
    }

    pub fn try_add(&self, o: &Surd) -> Result<Surd> {
        let (a, b) = self.unify(o)?;
        Ok(Surd::new(a.p + b.p, a.q + b.q, a.m))
    }

    pub fn try_sub(&self, o: &Surd) -> Result<Surd> {
        self.try_add(&-o)
    }

    pub fn try_mul(&self, o: &Surd) -> Result<Surd> {
        let (a, b) = self.unify(o)?;
        let m = Rat::int(a.m.clone());
        let p = &a.p * &b.p + &a.q * &b.q * m;
        let q = &a.p * &b.q + &a.q * &b.p;
        Ok(Surd::new(p, q, a.m))
    }

    /// `1/(p + q√m) = (p - q√m)/(p² - q²m)`.
    pub fn recip(&self) -> Result<Surd> {
        if self.sign() == Ordering::Equal {
            return Err(Error::DivisionByZero);
        }
        let norm = self.p.pow(2) - self.q.pow(2) * Rat::int(self.m.clone());
        let inv = norm.recip()?;
        Ok(Surd::new(&self.p * &inv, -(&self.q * &inv), self.m.clone()))
    }

    pub fn try_div(&self, o: &Surd) -> Result<Surd> {
        self.try_mul(&o.recip()?)
    }

    pub fn add_rat(&self, r: &Rat) -> Surd {
        Surd::new(&self.p + r, self.q.clone(), self.m.clone())
    }

    pub fn scale(&self, r: &Rat) -> Surd {
        Surd::new(&self.p * r, &self.q * r, self.m.clone())
    }

    /// Greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        if self.is_rational() {
            return self.p.floor();
        }
        let t_sq = self.q.pow(2) * Rat::int(self.m.clone());
        let s = t_sq.floor().sqrt();
        let mut c = self.p.floor() + if self.q.is_positive() { s } else { -s - 1 };
        while self.cmp_rat(&Rat::int(c.clone())) == Ordering::Less {
            c -= 1;
        }
        while self.cmp_rat(&Rat::int(&c + 1)) != Ordering::Less {
            c += 1;
        }
        c
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        self.p.to_f64() + self.q.to_f64() * self.m.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

/// Exact comparison of two surds over a shared radicand.
pub fn surd_cmp(x: &Surd, y: &Surd) -> Result<Ordering> {
    x.try_cmp(y)
}

/// Greatest integer `<= x`.
pub fn floor_of_surd(x: &Surd) -> BigInt {
    x.floor()
}

impl From<Rat> for Surd {
    fn from(r: Rat) -> Surd {
        Surd::from_rat(r)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { p: -&self.p, q: -&self.q, m: self.m.clone() }
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", self.p);
        }
        let sign = if self.q.is_negative() { '-' } else { '+' };
        write!(f, "{}{}{}*sqrt({})", self.p, sign, self.q.abs(), self.m)
    }
}

impl FromStr for Surd {
    type Err = Error;

    /// Parses `p+q*sqrt(m)`, `q*sqrt(m)`, `sqrt(m)` or a plain rational.
    fn from_str(s: &str) -> Result<Surd> {
        let err = || Error::Parse { what: "surd", input: s.to_string() };
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(pos) = t.find("sqrt(") else {
            return Ok(Surd::from_rat(t.parse()?));
        };
        let m_str = t[pos + 5..].strip_suffix(')').ok_or_else(err)?;
        let m = parse_int(m_str).filter(|m| !m.is_negative()).ok_or_else(err)?;
        let head = &t[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // The coefficient's sign is the last '+'/'-' after position 0.
        let split = head.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
        let (p_str, q_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let q = match q_str {
            "" | "+" => Rat::one(),
            "-" => -Rat::one(),
            other => other.parse().map_err(|_| err())?,
        };
        let p: Rat = p_str.parse().map_err(|_| err())?;
        Ok(Surd::new(p, q, m))
    }
}

impl Serialize for Surd {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Surd {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Surd, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn sd(s: &str) -> Surd {
        s.parse().unwrap()
    }

    #[test]
    fn rat_examples() {
        assert_eq!(rat_cmp(&r("1/2"), &r("2/4")), Ordering::Equal);
        assert_eq!(rat_cmp(&r("-3"), &r("0")), Ordering::Less);
        assert_eq!(rat_cmp(&r("7/3"), &r("5/2")), Ordering::Less);
    }

    #[test]
    fn rat_parse_forms() {
        assert_eq!(r("-1.25"), Rat::new(-5, 4));
        assert_eq!(r("-0.5"), Rat::new(-1, 2));
        assert_eq!(r(" 6/-4 "), Rat::new(-3, 2));
        assert!("1/0".parse::<Rat>().is_err());
        assert!("abc".parse::<Rat>().is_err());
        assert_eq!(Rat::new(-1, 8).to_decimal().unwrap(), "-0.125");
        assert_eq!(Rat::new(1, 3).to_decimal(), None);
    }

    #[test]
    fn surd_examples() {
        let x = sd("13/2-1*sqrt(12)");
        assert_eq!(surd_cmp(&x, &Surd::from_rat(Rat::int(3))).unwrap(), Ordering::Greater);
        assert_eq!(floor_of_surd(&x), BigInt::from(3));
        assert_eq!(sd("sqrt(2)").cmp_rat(&r("3/2")), Ordering::Less);
        assert_eq!(sd("0+1*sqrt(4)"), Surd::from_rat(Rat::int(2)));
        assert_eq!(floor_of_surd(&sd("sqrt(16)")), BigInt::from(4));
        assert_eq!(floor_of_surd(&sd("-sqrt(2)")), BigInt::from(-2));
    }

    #[test]
    fn mixed_radicals() {
        assert!(matches!(sd("sqrt(2)").try_cmp(&sd("sqrt(3)")), Err(Error::MixedRadicals(..))));
        // sqrt(8) = 2 sqrt(2), so these unify.
        assert_eq!(sd("2*sqrt(2)").try_cmp(&sd("sqrt(8)")).unwrap(), Ordering::Equal);
    }

    #[test]
    fn field_ops() {
        let a = sd("1+1*sqrt(2)");
        let inv = a.recip().unwrap();
        assert_eq!(inv, sd("-1+1*sqrt(2)"));
        assert_eq!(a.try_mul(&inv).unwrap(), Surd::from_rat(Rat::one()));
        assert!(Surd::from_rat(Rat::zero()).recip().is_err());
    }

    #[test]
    fn display_round_trip() {
        for s in ["13/2-1*sqrt(12)", "0+3/4*sqrt(7)", "-5", "-2/3+1*sqrt(3)"] {
            assert_eq!(sd(s).to_string().parse::<Surd>().unwrap(), sd(s));
        }
        assert_eq!(sd("sqrt(5)").to_string(), "0+1*sqrt(5)");
    }
}
