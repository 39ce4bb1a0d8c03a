//! Exact integers and rationals with an inline fast path.
//!
//! Values that fit in an `i64` are kept inline; everything else is promoted
//! to `BigInt`. Every operation is exact, so overflow is never observable.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision integer. `Big` never holds a value that fits in `i64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    pub fn from_i128(v: i128) -> Int {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(BigInt::from(v)),
        }
    }

    pub fn from_big(v: BigInt) -> Int {
        match v.to_i64() {
            Some(s) => Int::Small(s),
            None => Int::Big(v),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(s) => BigInt::from(*s),
            Int::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(s) => Some(*s),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    pub fn signum(&self) -> i32 {
        match self {
            Int::Small(s) => s.signum() as i32,
            Int::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn div_floor(&self, other: &Int) -> Int {
        assert!(!other.is_zero(), "division by zero");
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(Integer::div_floor(&(*a as i128), &(*b as i128))),
            _ => Int::from_big(Integer::div_floor(&self.to_big(), &other.to_big())),
        }
    }

    pub fn mod_floor(&self, other: &Int) -> Int {
        assert!(!other.is_zero(), "division by zero");
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(Integer::mod_floor(&(*a as i128), &(*b as i128))),
            _ => Int::from_big(Integer::mod_floor(&self.to_big(), &other.to_big())),
        }
    }

    /// Exact division; panics in debug builds if `other` does not divide `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        let q = self.div_floor(other);
        debug_assert!((&q * other) == *self, "inexact division");
        q
    }

    /// Non-negative greatest common divisor.
    pub fn gcd(&self, other: &Int) -> Int {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => Int::from_i128(gcd_i128(*a as i128, *b as i128)),
            _ => Int::from_big(self.to_big().gcd(&other.to_big())),
        }
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g = gcd(self, other) >= 0`.
    pub fn extended_gcd(&self, other: &Int) -> (Int, Int, Int) {
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Int::ONE, Int::ZERO);
        let (mut old_t, mut t) = (Int::ZERO, Int::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let next_r = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, next_r);
            let next_s = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, next_s);
            let next_t = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, next_t);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a as i128
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from_i128(v as i128)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(s) => write!(f, "{s}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(s) => Int::from_i128(-(*s as i128)),
            Int::Big(b) => Int::from_big(-b),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

macro_rules! int_binop {
    ($trait:ident, $method:ident, $small:expr, $big:expr) => {
        impl $trait<&Int> for &Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                match (self, rhs) {
                    (Int::Small(a), Int::Small(b)) => {
                        let f: fn(i128, i128) -> Option<i128> = $small;
                        match f(*a as i128, *b as i128) {
                            Some(v) => Int::from_i128(v),
                            None => {
                                let g: fn(BigInt, BigInt) -> BigInt = $big;
                                Int::from_big(g(self.to_big(), rhs.to_big()))
                            }
                        }
                    }
                    _ => {
                        let g: fn(BigInt, BigInt) -> BigInt = $big;
                        Int::from_big(g(self.to_big(), rhs.to_big()))
                    }
                }
            }
        }
        impl $trait<Int> for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Int> for Int {
            type Output = Int;
            fn $method(self, rhs: &Int) -> Int {
                (&self).$method(rhs)
            }
        }
    };
}

int_binop!(Add, add, |a, b| a.checked_add(b), |a, b| a + b);
int_binop!(Sub, sub, |a, b| a.checked_sub(b), |a, b| a - b);
int_binop!(Mul, mul, |a, b| a.checked_mul(b), |a, b| a * b);

/// Exact rational number in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: Int,
    den: Int,
}

impl Rational {
    pub fn zero() -> Rational {
        Rational {
            num: Int::ZERO,
            den: Int::ONE,
        }
    }

    pub fn one() -> Rational {
        Rational {
            num: Int::ONE,
            den: Int::ONE,
        }
    }

    pub fn from_int(n: Int) -> Rational {
        Rational { num: n, den: Int::ONE }
    }

    pub fn new(num: Int, den: Int) -> Rational {
        assert!(!den.is_zero(), "zero denominator");
        if let (Int::Small(n), Int::Small(d)) = (&num, &den) {
            return Rational::from_i128_parts(*n as i128, *d as i128);
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g), den.div_exact(&g));
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Rational { num: n, den: d }
    }

    fn from_i128_parts(mut n: i128, mut d: i128) -> Rational {
        debug_assert!(d != 0);
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if d < 0 {
            n = -n;
            d = -d;
        }
        Rational {
            num: Int::from_i128(n),
            den: Int::from_i128(d),
        }
    }

    pub fn numer(&self) -> &Int {
        &self.num
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn signum(&self) -> i32 {
        self.num.signum()
    }

    pub fn is_positive(&self) -> bool {
        self.num.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.num.signum() < 0
    }

    pub fn floor(&self) -> Int {
        self.num.div_floor(&self.den)
    }

    pub fn recip(&self) -> Rational {
        Rational::new(self.den.clone(), self.num.clone())
    }

    /// Integer value, if this rational is integral.
    pub fn to_int(&self) -> Option<Int> {
        self.is_integer().then(|| self.num.clone())
    }

    fn small_parts(&self) -> Option<(i128, i128)> {
        match (&self.num, &self.den) {
            (Int::Small(n), Int::Small(d)) => Some((*n as i128, *d as i128)),
            _ => None,
        }
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(Int::Small(v))
    }
}

impl From<Int> for Rational {
    fn from(v: Int) -> Self {
        Rational::from_int(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl std::str::FromStr for Rational {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parse_int = |t: &str| -> Result<Int, String> {
            t.trim()
                .parse::<BigInt>()
                .map(Int::from_big)
                .map_err(|_| format!("bad integer `{t}`"))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = parse_int(d)?;
                if d.is_zero() {
                    return Err("zero denominator".into());
                }
                Ok(Rational::new(parse_int(n)?, d))
            }
            None => Ok(Rational::from_int(parse_int(s)?)),
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Some((a, b)), Some((c, d))) = (self.small_parts(), other.small_parts()) {
            return (a * d).cmp(&(c * b));
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        if let (Some((a, b)), Some((c, d))) = (self.small_parts(), rhs.small_parts()) {
            if b == d {
                return Rational::from_i128_parts(a + c, b);
            }
            return Rational::from_i128_parts(a * d + c * b, b * d);
        }
        Rational::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        if let (Some((a, b)), Some((c, d))) = (self.small_parts(), rhs.small_parts()) {
            if b == d {
                return Rational::from_i128_parts(a - c, b);
            }
            return Rational::from_i128_parts(a * d - c * b, b * d);
        }
        Rational::new(&(&self.num * &rhs.den) - &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        if let (Some((a, b)), Some((c, d))) = (self.small_parts(), rhs.small_parts()) {
            return Rational::from_i128_parts(a * c, b * d);
        }
        Rational::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        if let (Some((a, b)), Some((c, d))) = (self.small_parts(), rhs.small_parts()) {
            return Rational::from_i128_parts(a * d, b * c);
        }
        Rational::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

macro_rules! rat_owned {
    ($trait:ident, $method:ident) => {
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
    };
}

rat_owned!(Add, add);
rat_owned!(Sub, sub);
rat_owned!(Mul, mul);
rat_owned!(Div, div);

impl Zero for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn big(v: &Int) -> BigInt {
        v.to_big()
    }

    fn to_big_rational(r: &Rational) -> BigRational {
        BigRational::new(r.numer().to_big(), r.denom().to_big())
    }

    #[test]
    fn overflow_promotes() {
        let m = Int::Small(i64::MAX);
        let s = &m + &Int::ONE;
        assert!(matches!(s, Int::Big(_)));
        assert_eq!(&s - &Int::ONE, m);
        let p = &m * &m;
        assert_eq!(big(&p), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        assert_eq!(-Int::Small(i64::MIN), Int::from_i128(-(i64::MIN as i128)));
    }

    #[test]
    fn rational_display_and_parse() {
        let r: Rational = "6/-4".parse().unwrap();
        assert_eq!(r.to_string(), "-3/2");
        assert_eq!("7".parse::<Rational>().unwrap().to_string(), "7");
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!(r.floor(), Int::Small(-2));
    }

    #[test]
    fn extended_gcd_identity() {
        let (g, s, t) = Int::Small(12).extended_gcd(&Int::Small(-18));
        assert_eq!(g, Int::Small(6));
        assert_eq!(&(&s * &Int::Small(12)) + &(&t * &Int::Small(-18)), g);
        let (g, _, t) = Int::ZERO.extended_gcd(&Int::Small(-5));
        assert_eq!(g, Int::Small(5));
        assert_eq!(t, Int::Small(-1));
    }

    proptest! {
        #[test]
        fn int_ops_match_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::Small(a), Int::Small(b));
            let (bx, by) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!(big(&(&x + &y)), &bx + &by);
            prop_assert_eq!(big(&(&x - &y)), &bx - &by);
            prop_assert_eq!(big(&(&x * &y)), &bx * &by);
            let xy = &x * &y;
            prop_assert_eq!(big(&(&xy * &xy)), (&bx * &by) * (&bx * &by));
            prop_assert_eq!(xy.cmp(&x), (&bx * &by).cmp(&bx));
            if b != 0 {
                prop_assert_eq!(big(&x.div_floor(&y)), Integer::div_floor(&bx, &by));
                prop_assert_eq!(big(&x.mod_floor(&y)), Integer::mod_floor(&bx, &by));
            }
            prop_assert_eq!(big(&x.gcd(&y)), bx.gcd(&by));
        }

        #[test]
        fn rational_ops_match_bigrational(
            a in -1_000_000_000_000i64..1_000_000_000_000,
            b in 1i64..1_000_000_000_000,
            c in any::<i64>(),
            d in 1i64..i64::MAX,
        ) {
            let x = Rational::new(Int::Small(a), Int::Small(b));
            let y = Rational::new(Int::Small(c), Int::Small(d));
            let bx = BigRational::new(BigInt::from(a), BigInt::from(b));
            let by = BigRational::new(BigInt::from(c), BigInt::from(d));
            prop_assert_eq!(to_big_rational(&(&x + &y)), &bx + &by);
            prop_assert_eq!(to_big_rational(&(&x - &y)), &bx - &by);
            prop_assert_eq!(to_big_rational(&(&x * &y)), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            if c != 0 {
                prop_assert_eq!(to_big_rational(&(&x / &y)), &bx / &by);
            }
            let sq = &(&x * &y) * &(&x * &y);
            prop_assert_eq!(to_big_rational(&sq), (&bx * &by) * (&bx * &by));
        }
    }
}
