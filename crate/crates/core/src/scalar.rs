//! Exact rational scalar with an inline fast path.
//!
//! Values whose reduced numerator and denominator fit in `i64` are stored
//! inline and combined in `i128`; anything larger falls back to a heap
//! [`BigRational`]. The representation is canonical (a value is inline
//! whenever it fits), so equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
pub struct Rational(Repr);

#[derive(Clone)]
enum Repr {
    /// Lowest terms, `den > 0`, both within `±i64::MAX`.
    Small(i64, i64),
    Big(Box<BigRational>),
}

use Repr::{Big, Small};

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
        return gcd_u64(a as u64, b as u64) as u128;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    if a == 0 {
        return b;
    }
    if b == 0 {
        return a;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

const LIMIT: i128 = i64::MAX as i128;

impl Rational {
    /// `n / d`; panics when `d == 0`.
    pub fn new(n: i64, d: i64) -> Self {
        Self::from_i128(n as i128, d as i128)
    }

    pub fn from_integer(n: i64) -> Self {
        if n == i64::MIN {
            return Self::from_big(BigRational::from_integer(BigInt::from(n)));
        }
        Rational(Small(n, 1))
    }

    /// `n / d` for arbitrary-precision parts; panics when `d == 0`.
    pub fn from_bigints(n: BigInt, d: BigInt) -> Self {
        Self::from_big(BigRational::new(n, d))
    }

    fn from_i128(mut n: i128, mut d: i128) -> Self {
        assert!(d != 0, "zero denominator");
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if (-LIMIT..=LIMIT).contains(&n) && d <= LIMIT {
            Rational(Small(n as i64, d as i64))
        } else {
            Rational(Big(Box::new(BigRational::new_raw(n.into(), d.into()))))
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN && d != i64::MIN => Rational(Small(n, d)),
            _ => Rational(Big(Box::new(r))),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Small(n, _) => BigInt::from(*n),
            Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Small(_, d) => BigInt::from(*d),
            Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Small(_, d) => *d == 1,
            Big(b) => b.is_integer(),
        }
    }

    /// Integer part, rounded towards zero.
    pub fn to_integer(&self) -> BigInt {
        match &self.0 {
            Small(n, d) => BigInt::from(n / d),
            Big(b) => b.to_integer(),
        }
    }

    pub fn recip(&self) -> Self {
        Rational::one() / self
    }

    fn add_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Small(0, _), _) => o.clone(),
            (_, Small(0, _)) => self.clone(),
            (Small(a, b), Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a + c, b)
                } else {
                    Self::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() + o.to_big()),
        }
    }

    fn sub_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (_, Small(0, _)) => self.clone(),
            (Small(a, b), Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Self::from_i128(a - c, b)
                } else {
                    Self::from_i128(a * d - c * b, b * d)
                }
            }
            _ => Self::from_big(self.to_big() - o.to_big()),
        }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (Small(0, _), _) | (_, Small(0, _)) => Rational::zero(),
            (Small(1, 1), _) => o.clone(),
            (_, Small(1, 1)) => self.clone(),
            (Small(a, b), Small(c, d)) => Self::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
            _ => Self::from_big(self.to_big() * o.to_big()),
        }
    }

    fn div_ref(&self, o: &Self) -> Self {
        match (&self.0, &o.0) {
            (_, Small(0, _)) => panic!("division by zero"),
            (Small(0, _), _) => Rational::zero(),
            (_, Small(1, 1)) => self.clone(),
            (Small(a, b), Small(c, d)) => Self::from_i128(*a as i128 * *d as i128, *b as i128 * *c as i128),
            _ => Self::from_big(self.to_big() / o.to_big()),
        }
    }

    fn rem_ref(&self, o: &Self) -> Self {
        Self::from_big(self.to_big() % o.to_big())
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Small(a, b), Small(c, d)) => a == c && b == d,
            (Big(x), Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Big(b) => {
                1u8.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Small(a, b), Small(c, d)) => {
                if b == d {
                    a.cmp(c)
                } else {
                    (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
                }
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Small(n, 1) => write!(f, "{n}"),
            Small(n, d) => write!(f, "{n}/{d}"),
            Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_big(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational::from_big(r)
    }
}

impl FromStr for Rational {
    type Err = num_rational::ParseRatioError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BigRational::from_str(s).map(Rational::from_big)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(Small(0, 1))
    }

    fn is_zero(&self) -> bool {
        matches!(self.0, Small(0, _))
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(Small(1, 1))
    }
}

impl Num for Rational {
    type FromStrRadixErr = num_rational::ParseRatioError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        BigRational::from_str_radix(s, radix).map(Rational::from_big)
    }
}

impl Signed for Rational {
    fn abs(&self) -> Self {
        match &self.0 {
            Small(n, d) => Rational(Small(n.abs(), *d)),
            Big(b) => Rational(Big(Box::new(b.abs()))),
        }
    }

    fn abs_sub(&self, other: &Self) -> Self {
        if self <= other {
            Rational::zero()
        } else {
            self - other
        }
    }

    fn signum(&self) -> Self {
        if self.is_positive() {
            Rational::one()
        } else if self.is_negative() {
            -Rational::one()
        } else {
            Rational::zero()
        }
    }

    fn is_positive(&self) -> bool {
        match &self.0 {
            Small(n, _) => *n > 0,
            Big(b) => b.is_positive(),
        }
    }

    fn is_negative(&self) -> bool {
        match &self.0 {
            Small(n, _) => *n < 0,
            Big(b) => b.is_negative(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        -&self
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        match &self.0 {
            Small(n, d) => Rational(Small(-n, *d)),
            Big(b) => Rational::from_big(-(**b).clone()),
        }
    }
}

macro_rules! binop {
    ($tr:ident, $f:ident, $imp:ident, $atr:ident, $af:ident) => {
        impl $tr<&Rational> for &Rational {
            type Output = Rational;
            fn $f(self, o: &Rational) -> Rational {
                self.$imp(o)
            }
        }
        impl $tr<Rational> for &Rational {
            type Output = Rational;
            fn $f(self, o: Rational) -> Rational {
                self.$imp(&o)
            }
        }
        impl $tr<&Rational> for Rational {
            type Output = Rational;
            fn $f(self, o: &Rational) -> Rational {
                (&self).$imp(o)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $f(self, o: Rational) -> Rational {
                (&self).$imp(&o)
            }
        }
        impl $atr<&Rational> for Rational {
            fn $af(&mut self, o: &Rational) {
                *self = (&*self).$imp(o);
            }
        }
        impl $atr<Rational> for Rational {
            fn $af(&mut self, o: Rational) {
                *self = (&*self).$imp(&o);
            }
        }
    };
}

binop!(Add, add, add_ref, AddAssign, add_assign);
binop!(Sub, sub, sub_ref, SubAssign, sub_assign);
binop!(Mul, mul, mul_ref, MulAssign, mul_assign);
binop!(Div, div, div_ref, DivAssign, div_assign);

impl Rem<&Rational> for &Rational {
    type Output = Rational;
    fn rem(self, o: &Rational) -> Rational {
        self.rem_ref(o)
    }
}

impl Rem<Rational> for Rational {
    type Output = Rational;
    fn rem(self, o: Rational) -> Rational {
        self.rem_ref(&o)
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let m = Rational::from_integer(i64::MAX);
        let sq = &m * &m;
        assert!(matches!(sq.0, Big(_)));
        let back = &sq / &m;
        assert!(matches!(back.0, Small(..)));
        assert_eq!(back, m);
        let min = Rational::from_integer(i64::MIN);
        assert!(matches!(min.0, Big(_)));
        assert_eq!(-&min, &m + Rational::one());
    }

    #[test]
    fn display_matches_lowest_terms() {
        assert_eq!(Rational::new(6, -4).to_string(), "-3/2");
        assert_eq!(Rational::new(8, 4).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn agrees_with_bigrational(a in -1i64<<40..1i64<<40, b in 1i64..1<<40, c in -1i64<<40..1i64<<40, d in 1i64..1<<40) {
            let (x, y) = (Rational::new(a, b), Rational::new(c, d));
            let (bx, by) = (big(a, b), big(c, d));
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x - &y).to_big(), &bx - &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            if c != 0 {
                prop_assert_eq!((&x / &y).to_big(), &bx / &by);
            }
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            let z = &(&x * &y) * &(&x * &y);
            prop_assert_eq!(z.to_big(), (&bx * &by) * (&bx * &by));
            prop_assert_eq!(Rational::from(z.to_big()), z);
        }
    }
}
