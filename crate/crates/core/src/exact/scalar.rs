//! Exact field scalars: arbitrary-precision rationals or prime-field elements.
//!
//! Every scalar is tagged with the ambient field descriptor; mixing fields in
//! one operation is a caller bug and panics. Division by zero is a recoverable
//! error because some callers probe invertibility.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use super::ExactError;

/// Ground field descriptor: the rationals or a prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Q,
    Fp(u64),
}

impl Field {
    /// Builds a prime-field descriptor, rejecting non-primes.
    pub fn prime(p: u64) -> Result<Field, ExactError> {
        if is_prime(p) {
            Ok(Field::Fp(p))
        } else {
            Err(ExactError::NotPrime(p))
        }
    }

    /// Characteristic: 0 for `Q`, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Q => 0,
            Field::Fp(p) => p,
        }
    }

    /// True iff the characteristic divides `n` (characteristic 0 divides nothing but 0).
    pub fn char_divides(self, n: u64) -> bool {
        match self {
            Field::Q => n == 0,
            Field::Fp(p) => n.is_multiple_of(p),
        }
    }

    pub fn zero(self) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(BigRational::zero()),
            Field::Fp(p) => Scalar::Fp { val: 0, p },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(BigRational::one()),
            Field::Fp(p) => Scalar::Fp { val: 1 % p, p },
        }
    }

    /// Embeds a signed integer.
    pub fn integer(self, n: i64) -> Scalar {
        match self {
            Field::Q => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Fp(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { val: r, p }
            }
        }
    }

    /// The fraction `num/den`; errors when `den` vanishes in the field.
    pub fn fraction(self, num: i64, den: i64) -> Result<Scalar, ExactError> {
        self.integer(num).checked_div(&self.integer(den))
    }

    /// Parses the serialized forms `p/q` (rationals) and `n mod p` / `n` (prime fields).
    pub fn parse_scalar(self, s: &str) -> Result<Scalar, ExactError> {
        let s = s.trim();
        match self {
            Field::Q => {
                let r = BigRational::from_str(s)
                    .map_err(|_| ExactError::BadScalar(s.to_string()))?;
                Ok(Scalar::Rat(r))
            }
            Field::Fp(p) => {
                let head = match s.split_once("mod") {
                    Some((n, m)) => {
                        let stated: u64 = m
                            .trim()
                            .parse()
                            .map_err(|_| ExactError::BadScalar(s.to_string()))?;
                        if stated != p {
                            return Err(ExactError::FieldMismatch);
                        }
                        n.trim()
                    }
                    None => s,
                };
                let n = BigInt::from_str(head)
                    .map_err(|_| ExactError::BadScalar(s.to_string()))?;
                let r = ((n % p) + p) % p;
                let val: u64 = r.try_into().expect("reduced residue fits u64");
                Ok(Scalar::Fp { val, p })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "Fp:{p}"),
        }
    }
}

/// An exact scalar in `Q` or `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Q,
            Scalar::Fp { p, .. } => Field::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, p } => *val == 1 % p,
        }
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: mod_inverse(*val, *p),
                p: *p,
            },
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self * &rhs.inv()?)
    }
}

fn check_same(a: &Scalar, b: &Scalar) {
    assert_eq!(
        a.field(),
        b.field(),
        "scalars from different fields in one operation"
    );
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                val: ((*a as u128 + *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        check_same(self, rhs);
        match (self, rhs) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                val: ((*a as u128 * *b as u128) % *p as u128) as u64,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: (*p - *val) % *p,
                p: *p,
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // `BigRational` keeps lowest terms with positive denominator.
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, p } => write!(f, "{val} mod {p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p), p prime and a != 0 mod p.
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "not invertible mod p");
    (t.rem_euclid(p as i128)) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_display() {
        let f = Field::Q;
        let x = f.fraction(4, -6).unwrap();
        assert_eq!(x.to_string(), "-2/3");
        assert_eq!(f.integer(5).to_string(), "5");
    }

    #[test]
    fn parse_roundtrip() {
        let f = Field::Q;
        for s in ["0", "-7", "3/4", "-22/7"] {
            assert_eq!(f.parse_scalar(s).unwrap().to_string(), s);
        }
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("7").unwrap().to_string(), "2 mod 5");
        assert_eq!(f5.parse_scalar("3 mod 5").unwrap().to_string(), "3 mod 5");
        assert!(f5.parse_scalar("3 mod 7").is_err());
    }

    #[test]
    fn field_arithmetic() {
        let f7 = Field::prime(7).unwrap();
        let a = f7.integer(3);
        let b = f7.integer(5);
        assert_eq!(&a * &b, f7.integer(1));
        assert_eq!(a.inv().unwrap(), b);
        assert_eq!(&a + &b, f7.integer(1));
        assert!(f7.zero().inv().is_err());
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(2).is_ok());
    }

    #[test]
    fn char_divides() {
        assert!(!Field::Q.char_divides(6));
        assert!(Field::prime(3).unwrap().char_divides(6));
        assert!(!Field::prime(5).unwrap().char_divides(6));
    }
}
