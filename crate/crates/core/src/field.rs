//! Exact scalar fields.
//!
//! Everything in this crate is generic over [`Field`]. Two implementations are
//! provided: [`Q`], the rationals with arbitrary-precision numerator and
//! denominator, and [`Fp`], the prime field `Z/P` for a compile-time prime.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A commutative field with exact arithmetic.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_i64(v: i64) -> Self;
    /// Image of a rational number; `None` when the denominator vanishes in the field.
    fn from_rational(q: &BigRational) -> Option<Self>;
    /// 0 for the rationals, `p` for `Z/p`.
    fn characteristic() -> u64;
    /// Short human-readable name, e.g. `Q` or `GF(7)`.
    fn descriptor() -> String;
    /// Whether the element is "negative" for sign normalisation. Always false in `Z/p`.
    fn is_negative(&self) -> bool;
    /// The element as a rational number; only available in characteristic 0.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc *= &base;
            }
            base = base.clone() * &base;
            exp >>= 1;
        }
        acc
    }

    /// Parses `p/q`, `p`, or a signed integer.
    fn parse(s: &str) -> Result<Self> {
        let q = parse_rational(s)?;
        Self::from_rational(&q).ok_or_else(|| {
            Error::Parse(format!("{s} is not defined in {}", Self::descriptor()))
        })
    }
}

pub(crate) fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let err = || Error::Parse(format!("invalid rational number `{s}`"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err())?;
    let den = BigInt::from_str(den).map_err(|_| err())?;
    if den.is_zero() {
        return Err(err());
    }
    Ok(BigRational::new(num, den))
}

/// Arbitrary-precision rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Q(BigRational);

impl Q {
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(q: BigRational) -> Self {
        Q(q)
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Q)
    }
}

macro_rules! forward_ops {
    ([$($gen:tt)*] $ty:ty) => {
        impl<$($gen)*> Add for $ty {
            type Output = Self;
            fn add(mut self, rhs: Self) -> Self { self += &rhs; self }
        }
        impl<'a, $($gen)*> Add<&'a Self> for $ty {
            type Output = Self;
            fn add(mut self, rhs: &'a Self) -> Self { self += rhs; self }
        }
        impl<$($gen)*> Sub for $ty {
            type Output = Self;
            fn sub(mut self, rhs: Self) -> Self { self -= &rhs; self }
        }
        impl<'a, $($gen)*> Sub<&'a Self> for $ty {
            type Output = Self;
            fn sub(mut self, rhs: &'a Self) -> Self { self -= rhs; self }
        }
        impl<$($gen)*> Mul for $ty {
            type Output = Self;
            fn mul(mut self, rhs: Self) -> Self { self *= &rhs; self }
        }
        impl<'a, $($gen)*> Mul<&'a Self> for $ty {
            type Output = Self;
            fn mul(mut self, rhs: &'a Self) -> Self { self *= rhs; self }
        }
        impl<$($gen)*> AddAssign for $ty {
            fn add_assign(&mut self, rhs: Self) { *self += &rhs; }
        }
        impl<$($gen)*> SubAssign for $ty {
            fn sub_assign(&mut self, rhs: Self) { *self -= &rhs; }
        }
        impl<$($gen)*> MulAssign for $ty {
            fn mul_assign(&mut self, rhs: Self) { *self *= &rhs; }
        }
    };
}

forward_ops!([] Q);

impl<'a> AddAssign<&'a Q> for Q {
    fn add_assign(&mut self, rhs: &'a Q) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a Q> for Q {
    fn sub_assign(&mut self, rhs: &'a Q) {
        self.0 -= &rhs.0;
    }
}

impl<'a> MulAssign<&'a Q> for Q {
    fn mul_assign(&mut self, rhs: &'a Q) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl Field for Q {
    fn zero() -> Self {
        Q(BigRational::zero())
    }
    fn one() -> Self {
        Q(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn inv(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Q(self.0.recip()))
        }
    }
    fn from_i64(v: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(v)))
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        Some(Q(q.clone()))
    }
    fn characteristic() -> u64 {
        0
    }
    fn descriptor() -> String {
        "Q".to_string()
    }
    fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.0.clone())
    }
}

/// The prime field `Z/P`. `P` must be a prime below `2^63`; this is checked
/// when the first element is built in debug builds only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        debug_assert!(P >= 2 && P < (1 << 63));
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

forward_ops!([const P: u64] Fp<P>);

impl<'a, const P: u64> AddAssign<&'a Fp<P>> for Fp<P> {
    fn add_assign(&mut self, rhs: &'a Fp<P>) {
        let s = self.0 as u128 + rhs.0 as u128;
        self.0 = (s % P as u128) as u64;
    }
}

impl<'a, const P: u64> SubAssign<&'a Fp<P>> for Fp<P> {
    fn sub_assign(&mut self, rhs: &'a Fp<P>) {
        self.0 = if self.0 >= rhs.0 { self.0 - rhs.0 } else { P - (rhs.0 - self.0) };
    }
}

impl<'a, const P: u64> MulAssign<&'a Fp<P>> for Fp<P> {
    fn mul_assign(&mut self, rhs: &'a Fp<P>) {
        self.0 = ((self.0 as u128 * rhs.0 as u128) % P as u128) as u64;
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}

fn big_mod(v: &BigInt, p: u64) -> u64 {
    let r = v.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl<const P: u64> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        // extended Euclid on i128
        let (mut a, mut b) = (self.0 as i128, P as i128);
        let (mut x0, mut x1) = (1i128, 0i128);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        Some(Fp(x0.rem_euclid(P as i128) as u64))
    }
    fn from_i64(v: i64) -> Self {
        Fp((v as i128).rem_euclid(P as i128) as u64)
    }
    fn from_rational(q: &BigRational) -> Option<Self> {
        let num = Fp(big_mod(q.numer(), P));
        let den = Fp::<P>(big_mod(q.denom(), P));
        den.inv().map(|d| num * d)
    }
    fn characteristic() -> u64 {
        P
    }
    fn descriptor() -> String {
        format!("GF({P})")
    }
    fn is_negative(&self) -> bool {
        false
    }
    fn to_rational(&self) -> Option<BigRational> {
        None
    }
}
