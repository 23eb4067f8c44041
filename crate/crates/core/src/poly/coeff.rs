//! Exact coefficient fields: prime fields `F_p` and the rationals.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{EngineError, Result};

/// The coefficient field of an ambient polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// `F_p` for a prime `p < 2^31`.
    Prime(u32),
    /// The rationals, with arbitrary precision.
    Rational,
}

/// A field element. Modular representatives are kept canonical in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Mod(u32),
    Rat(BigRational),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field {
    /// Builds the field of characteristic `p`; `0` selects the rationals.
    pub fn with_characteristic(p: u64) -> Result<Field> {
        if p == 0 {
            Ok(Field::Rational)
        } else if p < (1 << 31) && is_prime(p) {
            Ok(Field::Prime(p as u32))
        } else {
            Err(EngineError::InvalidPresentation(format!(
                "characteristic must be prime (got {p})"
            )))
        }
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Coefficient {
        match self {
            Field::Prime(_) => Coefficient::Mod(0),
            Field::Rational => Coefficient::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Coefficient {
        match self {
            Field::Prime(p) => Coefficient::Mod(v.rem_euclid(*p as i64) as u32),
            Field::Rational => Coefficient::Rat(BigRational::from_integer(BigInt::from(v))),
        }
    }

    /// Reads a non-negative decimal integer literal of any size.
    pub fn from_decimal(&self, digits: &str) -> Option<Coefficient> {
        match self {
            Field::Prime(p) => {
                let p = *p as u64;
                let mut acc = 0u64;
                for ch in digits.chars() {
                    acc = (acc * 10 + ch.to_digit(10)? as u64) % p;
                }
                Some(Coefficient::Mod(acc as u32))
            }
            Field::Rational => {
                let n: BigInt = digits.parse().ok()?;
                Some(Coefficient::Rat(BigRational::from_integer(n)))
            }
        }
    }

    pub fn add(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Prime(p), Coefficient::Mod(x), Coefficient::Mod(y)) => {
                Coefficient::Mod(((*x as u64 + *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Coefficient::Rat(x), Coefficient::Rat(y)) => Coefficient::Rat(x + y),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn neg(&self, a: &Coefficient) -> Coefficient {
        match (self, a) {
            (Field::Prime(p), Coefficient::Mod(x)) => {
                Coefficient::Mod(if *x == 0 { 0 } else { p - x })
            }
            (Field::Rational, Coefficient::Rat(x)) => Coefficient::Rat(-x),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn sub(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        match (self, a, b) {
            (Field::Prime(p), Coefficient::Mod(x), Coefficient::Mod(y)) => {
                Coefficient::Mod(((*x as u64 * *y as u64) % *p as u64) as u32)
            }
            (Field::Rational, Coefficient::Rat(x), Coefficient::Rat(y)) => Coefficient::Rat(x * y),
            _ => panic!("coefficient from a different field"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Coefficient) -> Option<Coefficient> {
        if a.is_zero() {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Coefficient::Mod(x)) => {
                let (mut t, mut new_t) = (0i64, 1i64);
                let (mut r, mut new_r) = (*p as i64, *x as i64);
                while new_r != 0 {
                    let q = r / new_r;
                    (t, new_t) = (new_t, t - q * new_t);
                    (r, new_r) = (new_r, r - q * new_r);
                }
                Some(Coefficient::Mod(t.rem_euclid(*p as i64) as u32))
            }
            (Field::Rational, Coefficient::Rat(x)) => Some(Coefficient::Rat(x.recip())),
            _ => panic!("coefficient from a different field"),
        }
    }

    pub fn div(&self, a: &Coefficient, b: &Coefficient) -> Coefficient {
        self.mul(a, &self.inv(b).expect("division by zero coefficient"))
    }
}

impl Coefficient {
    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Mod(x) => *x == 0,
            Coefficient::Rat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Mod(x) => *x == 1,
            Coefficient::Rat(x) => x.is_one(),
        }
    }

    /// Whether the printed form should carry a leading minus sign.
    pub(crate) fn is_negative_display(&self, field: &Field) -> bool {
        match (self, field) {
            (Coefficient::Mod(x), Field::Prime(p)) => *x > p / 2,
            (Coefficient::Rat(x), _) => x.is_negative(),
            _ => false,
        }
    }

    /// The symmetric representative for `F_p`, the value itself otherwise.
    pub(crate) fn abs_display(&self, field: &Field) -> String {
        match (self, field) {
            (Coefficient::Mod(x), Field::Prime(p)) => {
                if *x > p / 2 {
                    (p - x).to_string()
                } else {
                    x.to_string()
                }
            }
            (Coefficient::Rat(x), _) => x.abs().to_string(),
            (Coefficient::Mod(x), _) => x.to_string(),
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Mod(x) => write!(f, "{x}"),
            Coefficient::Rat(x) => write!(f, "{x}"),
        }
    }
}
