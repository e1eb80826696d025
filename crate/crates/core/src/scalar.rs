//! Prime-field scalars: exact rationals or residues modulo a prime.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The prime field underlying a coefficient field: ℚ or GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeField {
    Rationals,
    Modular(u64),
}

/// An element of a [`PrimeField`]. Residues are kept reduced in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    Modular(u64),
}

impl PrimeField {
    pub fn characteristic(self) -> u64 {
        match self {
            PrimeField::Rationals => 0,
            PrimeField::Modular(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            PrimeField::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            PrimeField::Modular(p) => Scalar::Modular(v.rem_euclid(p as i64) as u64),
        }
    }

    /// The rational `num/den`; in GF(p) the denominator is inverted.
    pub fn from_ratio(self, num: i64, den: i64) -> Option<Scalar> {
        let d = self.from_i64(den);
        let inv = self.inv(&d)?;
        Some(self.mul(&self.from_i64(num), &inv))
    }

    pub fn is_zero(self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular(v) => *v == 0,
        }
    }

    pub fn is_one(self, a: &Scalar) -> bool {
        match a {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular(v) => *v == 1,
        }
    }

    pub fn add(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
            (PrimeField::Modular(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular((x + y) % p)
            }
            _ => mixed(),
        }
    }

    pub fn neg(self, a: &Scalar) -> Scalar {
        match (self, a) {
            (_, Scalar::Rational(x)) => Scalar::Rational(-x),
            (PrimeField::Modular(p), Scalar::Modular(x)) => Scalar::Modular((p - x) % p),
            _ => mixed(),
        }
    }

    pub fn sub(self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (_, Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
            (PrimeField::Modular(p), Scalar::Modular(x), Scalar::Modular(y)) => {
                Scalar::Modular(((*x as u128 * *y as u128) % p as u128) as u64)
            }
            _ => mixed(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (_, Scalar::Rational(x)) => Some(Scalar::Rational(x.recip())),
            (PrimeField::Modular(p), Scalar::Modular(x)) => Some(Scalar::Modular(pow_mod(*x, p - 2, p))),
            _ => mixed(),
        }
    }

    /// All elements, in increasing order; `None` for ℚ.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            PrimeField::Rationals => None,
            PrimeField::Modular(p) => Some((0..p).map(Scalar::Modular).collect()),
        }
    }
}

pub(crate) fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let m = m as u128;
    let mut acc: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

fn mixed() -> ! {
    panic!("scalars from different prime fields combined")
}

impl Scalar {
    /// Whether the scalar prints with a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_negative(),
            Scalar::Modular(_) => false,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular(v) => write!(f, "{v}"),
        }
    }
}
