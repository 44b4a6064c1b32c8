//! Exact field scalars: arbitrary-precision rationals or residues modulo a prime.
//!
//! Every space and map carries a [`Field`] descriptor; mixing scalars from
//! different fields is a programming error (validated constructors make it
//! unreachable) and panics.

use num::{BigInt, BigRational, One, Signed, Zero};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Field {
    Rational,
    /// Prime field F_p. The modulus is validated for primality at construction.
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, crate::Error> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(crate::Error::NotPrime(p))
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "mod {}", p),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Rat(BigRational),
    /// Canonical residue in [0, p).
    Mod(u64, u64),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rational,
            Scalar::Mod(_, p) => Field::Prime(*p),
        }
    }

    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Mod(0, p),
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Mod(1 % p, p),
        }
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = n.rem_euclid(p as i64) as u64;
                Scalar::Mod(r, p)
            }
        }
    }

    /// Parse an integer or a fraction "a/b". For prime fields the fraction is
    /// interpreted via modular inversion; a denominator divisible by p is an error.
    pub fn parse(field: Field, s: &str) -> Result<Scalar, crate::Error> {
        let bad = || crate::Error::BadScalar(s.to_string());
        if let Some((num, den)) = s.split_once('/') {
            let n: i64 = num.trim().parse().map_err(|_| bad())?;
            let d: i64 = den.trim().parse().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            let nd = Scalar::from_i64(field, d);
            if nd.is_zero() {
                return Err(bad());
            }
            Ok(&Scalar::from_i64(field, n) * &nd.inv())
        } else {
            let n: i64 = s.trim().parse().map_err(|_| bad())?;
            Ok(Scalar::from_i64(field, n))
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod(v, p) => *v == 1 % p,
        }
    }

    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => {
                assert!(!r.is_zero(), "inverse of zero");
                Scalar::Rat(r.recip())
            }
            Scalar::Mod(v, p) => {
                assert!(*v != 0, "inverse of zero");
                Scalar::Mod(mod_pow(*v, p - 2, *p), *p)
            }
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r.clone()),
            Scalar::Mod(v, p) => Scalar::Mod(if *v == 0 { 0 } else { p - v }, *p),
        }
    }

    /// Reduce a rational scalar mod p; `None` when the denominator vanishes mod p.
    /// Prime-field scalars must already live over p.
    pub fn reduce_mod(&self, p: u64) -> Option<Scalar> {
        match self {
            Scalar::Rat(r) => {
                let pp = BigInt::from(p);
                let num = r.numer() % &pp;
                let den = r.denom() % &pp;
                let to_u64 = |x: BigInt| -> u64 {
                    let m = ((x % &pp) + &pp) % &pp;
                    let (_, digits) = m.to_u64_digits();
                    digits.first().copied().unwrap_or(0)
                };
                let d = to_u64(den);
                if d == 0 {
                    return None;
                }
                let n = to_u64(num);
                Some(Scalar::Mod(n * mod_pow(d, p - 2, p) % p, p))
            }
            Scalar::Mod(v, q) => {
                assert_eq!(*q, p, "reduce_mod on a different prime field");
                Some(Scalar::Mod(*v, p))
            }
        }
    }
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut bb: u128 = (b % p) as u128;
    let pp = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * bb % pp;
        }
        bb = bb * bb % pp;
        e >>= 1;
    }
    b = acc as u64;
    b
}

macro_rules! binop {
    ($trait:ident, $fn:ident, $ratop:tt, $modexpr:expr) => {
        impl std::ops::$trait for &Scalar {
            type Output = Scalar;
            fn $fn(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $ratop b),
                    (Scalar::Mod(a, p), Scalar::Mod(b, q)) => {
                        assert_eq!(p, q, "field mismatch in scalar arithmetic");
                        let f: fn(u64, u64, u64) -> u64 = $modexpr;
                        Scalar::Mod(f(*a, *b, *p), *p)
                    }
                    _ => panic!("field mismatch in scalar arithmetic"),
                }
            }
        }
    };
}

binop!(Add, add, +, |a, b, p| ((a as u128 + b as u128) % p as u128) as u64);
binop!(Sub, sub, -, |a, b, p| ((a as u128 + p as u128 - b as u128) % p as u128) as u64);
binop!(Mul, mul, *, |a, b, p| ((a as u128 * b as u128) % p as u128) as u64);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else if r.is_negative() {
                    write!(f, "-{}/{}", r.numer().abs(), r.denom())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod(v, _) => write!(f, "{}", v),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_arith() {
        let f = Field::Rational;
        let h = Scalar::parse(f, "1/2").unwrap();
        assert_eq!(&h + &h, Scalar::one(f));
        assert_eq!(&h * &Scalar::from_i64(f, 2), Scalar::one(f));
        let m = Scalar::parse(f, "-3/4").unwrap();
        assert_eq!(&m + &m.neg(), Scalar::zero(f));
    }

    #[test]
    fn prime_field() {
        let f = Field::prime(5).unwrap();
        let a = Scalar::from_i64(f, 3);
        assert_eq!(&a * &a.inv(), Scalar::one(f));
        assert_eq!(Scalar::from_i64(f, -1), Scalar::Mod(4, 5));
        // 1/2 == 3 mod 5
        assert_eq!(Scalar::parse(f, "1/2").unwrap(), Scalar::Mod(3, 5));
        assert!(Field::prime(6).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn reduction() {
        let q = Scalar::parse(Field::Rational, "7/3").unwrap();
        assert_eq!(q.reduce_mod(5), Some(Scalar::Mod(4, 5))); // 7*3^{-1} = 2*2 = 4 mod 5
        let bad = Scalar::parse(Field::Rational, "1/5").unwrap();
        assert_eq!(bad.reduce_mod(5), None);
    }
}
