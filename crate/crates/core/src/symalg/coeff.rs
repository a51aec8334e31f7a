//! Arbitrary-precision integer coefficients with an inline fast path.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

#[derive(Clone, Debug)]
pub enum Coeff {
    Small(i64),
    Big(Box<BigInt>),
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::Small(0)
    }

    pub fn one() -> Self {
        Coeff::Small(1)
    }

    fn from_big(b: BigInt) -> Self {
        match b.to_i64() {
            Some(v) => Coeff::Small(v),
            None => Coeff::Big(Box::new(b)),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Coeff::Small(v) => BigInt::from(*v),
            Coeff::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Small(v) => Some(*v),
            Coeff::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Coeff::Small(1))
    }

    pub fn is_positive(&self) -> bool {
        match self {
            Coeff::Small(v) => *v > 0,
            Coeff::Big(b) => b.sign() == num_bigint::Sign::Plus,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Coeff::Small(v) => *v < 0,
            Coeff::Big(b) => b.sign() == num_bigint::Sign::Minus,
        }
    }
}

impl From<i64> for Coeff {
    fn from(v: i64) -> Self {
        Coeff::Small(v)
    }
}

impl From<BigInt> for Coeff {
    fn from(b: BigInt) -> Self {
        Coeff::from_big(b)
    }
}

impl PartialEq for Coeff {
    fn eq(&self, o: &Self) -> bool {
        match (self, o) {
            (Coeff::Small(a), Coeff::Small(b)) => a == b,
            (Coeff::Big(a), Coeff::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Coeff {}

impl std::hash::Hash for Coeff {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        match self {
            Coeff::Small(v) => v.hash(h),
            Coeff::Big(b) => b.hash(h),
        }
    }
}

impl Ord for Coeff {
    fn cmp(&self, o: &Self) -> Ordering {
        match (self, o) {
            (Coeff::Small(a), Coeff::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&o.to_big()),
        }
    }
}

impl PartialOrd for Coeff {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl<'a> Add<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn add(self, o: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, o) {
            if let Some(c) = a.checked_add(*b) {
                return Coeff::Small(c);
            }
        }
        Coeff::from_big(self.to_big() + o.to_big())
    }
}

impl<'a> Sub<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn sub(self, o: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, o) {
            if let Some(c) = a.checked_sub(*b) {
                return Coeff::Small(c);
            }
        }
        Coeff::from_big(self.to_big() - o.to_big())
    }
}

impl<'a> Mul<&'a Coeff> for &'a Coeff {
    type Output = Coeff;
    fn mul(self, o: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, o) {
            if let Some(c) = a.checked_mul(*b) {
                return Coeff::Small(c);
            }
        }
        Coeff::from_big(self.to_big() * o.to_big())
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, o: Coeff) -> Coeff {
        &self + &o
    }
}

impl Sub for Coeff {
    type Output = Coeff;
    fn sub(self, o: Coeff) -> Coeff {
        &self - &o
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, o: Coeff) -> Coeff {
        &self * &o
    }
}

impl Neg for Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(v) if v != i64::MIN => Coeff::Small(-v),
            other => Coeff::from_big(-other.to_big()),
        }
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        -self.clone()
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, o: &Coeff) {
        *self = &*self + o;
    }
}

impl SubAssign<&Coeff> for Coeff {
    fn sub_assign(&mut self, o: &Coeff) {
        *self = &*self - o;
    }
}

impl std::iter::Sum for Coeff {
    fn sum<I: Iterator<Item = Coeff>>(it: I) -> Coeff {
        it.fold(Coeff::zero(), |a, b| a + b)
    }
}

impl<'a> std::iter::Sum<&'a Coeff> for Coeff {
    fn sum<I: Iterator<Item = &'a Coeff>>(it: I) -> Coeff {
        it.fold(Coeff::zero(), |a, b| &a + b)
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(v) => write!(f, "{v}"),
            Coeff::Big(b) => write!(f, "{b}"),
        }
    }
}

impl std::str::FromStr for Coeff {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        let b: BigInt = s
            .trim()
            .parse()
            .map_err(|_| crate::Error::Parse(format!("integer `{s}`")))?;
        Ok(Coeff::from_big(b))
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::Small(0)
    }
    fn is_zero(&self) -> bool {
        Coeff::is_zero(self)
    }
}
