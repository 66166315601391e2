//! Exact field arithmetic over GF(p) for odd primes p and over the rationals,
//! plus modular binomial coefficients.
//!
//! All arithmetic is exact: prime-field elements are canonical residues in
//! `[0, p)` and rational elements are reduced big-integer fractions. There is
//! no floating point anywhere in this crate.

use std::fmt;

use num::bigint::{BigInt, Sign};
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::Error;

/// The coefficient field: GF(p) for an odd prime p, or the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// Prime field GF(p), p an odd prime.
    Prime(u64),
    /// The field of rational numbers.
    Rationals,
}

impl FieldSpec {
    /// Builds GF(p), rejecting characteristic 2 and non-primes.
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Prime(p) => *p,
            FieldSpec::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_integer(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_integer(1)
    }

    pub fn from_integer(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Prime(p) => Scalar::Fp(n.rem_euclid(*p as i64) as u64),
            FieldSpec::Rationals => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(n)))),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                let s = x + y;
                Scalar::Fp(if s >= *p { s - p } else { s })
            }
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => {
                Scalar::Q(Box::new(&**x + &**y))
            }
            _ => panic!("scalar/field mismatch in add"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Scalar::Fp(if *x == 0 { 0 } else { p - x }),
            (FieldSpec::Rationals, Scalar::Q(x)) => Scalar::Q(Box::new(-&**x)),
            _ => panic!("scalar/field mismatch in neg"),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (FieldSpec::Prime(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (FieldSpec::Rationals, Scalar::Q(x), Scalar::Q(y)) => {
                Scalar::Q(Box::new(&**x * &**y))
            }
            _ => panic!("scalar/field mismatch in mul"),
        }
    }

    /// Exact inverse; inverting zero is a domain error.
    pub fn inv(&self, a: &Scalar) -> Result<Scalar, Error> {
        if a.is_zero() {
            return Err(Error::ZeroInversion);
        }
        match (self, a) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => Ok(Scalar::Fp(mod_inverse(*x, *p))),
            (FieldSpec::Rationals, Scalar::Q(x)) => Ok(Scalar::Q(Box::new(x.recip()))),
            _ => panic!("scalar/field mismatch in inv"),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Result<Scalar, Error> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Whether `s` is a legal element of this field (used when reading files).
    pub fn admits(&self, s: &Scalar) -> bool {
        match (self, s) {
            (FieldSpec::Prime(p), Scalar::Fp(x)) => x < p,
            (FieldSpec::Rationals, Scalar::Q(_)) => true,
            _ => false,
        }
    }

    /// Parses the canonical string form: a decimal residue for prime fields,
    /// `num` or `num/den` for the rationals.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar, Error> {
        let bad = || Error::ScalarParse(s.to_string());
        match self {
            FieldSpec::Prime(p) => {
                let v: u64 = s.parse().map_err(|_| bad())?;
                // Canonical form only (no leading +/zeros), bit-exact round trips.
                if v >= *p || v.to_string() != s {
                    return Err(bad());
                }
                Ok(Scalar::Fp(v))
            }
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (s, "1"),
                };
                let num: BigInt = n.parse().map_err(|_| bad())?;
                let den: BigInt = d.parse().map_err(|_| bad())?;
                if den.sign() != Sign::Plus {
                    return Err(bad());
                }
                let r = BigRational::new(num, den);
                // Canonical form only: reject non-reduced input so that
                // serialization round-trips are byte-identical.
                if format_rational(&r) != s {
                    return Err(bad());
                }
                Ok(Scalar::Q(Box::new(r)))
            }
        }
    }
}

/// An exact field element: canonical residue for GF(p), reduced fraction for Q.
///
/// Equality is structural, which coincides with field equality because both
/// representations are canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Fp(u64),
    Q(Box<BigRational>),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 0,
            Scalar::Q(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Fp(x) => *x == 1,
            Scalar::Q(x) => x.is_one(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Fp(x) => write!(f, "{x}"),
            Scalar::Q(x) => write!(f, "{}", format_rational(x)),
        }
    }
}

fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map(|s| s <= n).unwrap_or(false) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Extended Euclid on (a, p); p prime and a nonzero mod p.
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "inverse of a non-unit");
    s0.rem_euclid(p as i128) as u64
}

/// Binomial coefficient C(r+s, r) reduced into the field.
///
/// For prime fields this is computed by Lucas' theorem on base-p digits; for
/// the rationals by exact big-integer arithmetic.
pub fn binomial(r: u64, s: u64, spec: &FieldSpec) -> Scalar {
    match spec {
        FieldSpec::Prime(p) => Scalar::Fp(binomial_lucas(r + s, r, *p)),
        FieldSpec::Rationals => {
            Scalar::Q(Box::new(BigRational::from_integer(binomial_bigint(r + s, r))))
        }
    }
}

fn binomial_lucas(n: u64, k: u64, p: u64) -> u64 {
    let (mut n, mut k) = (n, k);
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        acc = (acc as u128 * binomial_digit(nd, kd, p) as u128 % p as u128) as u64;
        n /= p;
        k /= p;
    }
    acc
}

// C(n, k) mod p for digits n, k < p, via the multiplicative formula.
fn binomial_digit(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u64;
    let mut den = 1u64;
    for i in 0..k {
        num = (num as u128 * ((n - i) % p) as u128 % p as u128) as u64;
        den = (den as u128 * ((i + 1) % p) as u128 % p as u128) as u64;
    }
    (num as u128 * mod_inverse(den, p) as u128 % p as u128) as u64
}

/// Exact integer binomial coefficient C(n, k).
pub fn binomial_bigint(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const SEED: u64 = 0xC3A1;

    #[test]
    fn gf2_and_composites_rejected() {
        assert!(FieldSpec::prime(2).is_err());
        assert!(FieldSpec::prime(9).is_err());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(7919).is_ok());
    }

    #[test]
    fn gf3_arithmetic() {
        let f = FieldSpec::prime(3).unwrap();
        let two = f.from_integer(2);
        assert_eq!(f.add(&two, &two), f.one());
        assert_eq!(f.inv(&two).unwrap(), two); // 2·2 = 4 ≡ 1
        assert!(f.inv(&f.zero()).is_err());
    }

    #[test]
    fn rationals_have_a_third() {
        let f = FieldSpec::rationals();
        let third = f.div(&f.one(), &f.from_integer(3)).unwrap();
        assert_eq!(third.to_string(), "1/3");
        assert_eq!(f.mul(&third, &f.from_integer(3)), f.one());
    }

    #[test]
    fn scalar_strings_round_trip() {
        let q = FieldSpec::rationals();
        for s in ["0", "1", "-2/3", "5", "1/3", "-7"] {
            let v = q.parse_scalar(s).unwrap();
            assert_eq!(v.to_string(), s);
        }
        // Non-canonical forms are rejected.
        assert!(q.parse_scalar("2/4").is_err());
        assert!(q.parse_scalar("1/-3").is_err());
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(f3.parse_scalar("3").is_err());
        assert_eq!(f3.parse_scalar("2").unwrap(), Scalar::Fp(2));
    }

    #[test]
    fn binomial_examples() {
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(binomial(1, 1, &f3), Scalar::Fp(2)); // C(2,1) = 2
        assert_eq!(binomial(1, 2, &f3), Scalar::Fp(0)); // C(3,1) = 3 ≡ 0
        // C(8,4) = 70 ≡ 1 (mod 3); digits 8 = (2,2)₃, 4 = (1,1)₃ give C(2,1)² = 4 ≡ 1.
        assert_eq!(binomial(4, 4, &f3), Scalar::Fp(1));
        assert_eq!(binomial_bigint(8, 4), BigInt::from(70));
    }

    #[test]
    fn lucas_agrees_with_factorials_exhaustively() {
        // Independent oracle: exact big-integer binomials reduced mod 3,
        // for all r + s ≤ 30.
        let f3 = FieldSpec::prime(3).unwrap();
        for r in 0..=30u64 {
            for s in 0..=(30 - r) {
                let direct = binomial_bigint(r + s, r) % BigInt::from(3);
                let direct = u64::try_from(direct).unwrap();
                assert_eq!(binomial(r, s, &f3), Scalar::Fp(direct), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn field_axioms_randomized() {
        for spec in [FieldSpec::prime(3).unwrap(), FieldSpec::prime(7).unwrap(), FieldSpec::Rationals] {
            let mut rng = StdRng::seed_from_u64(SEED);
            let rand_scalar = |rng: &mut StdRng| spec.from_integer(rng.gen_range(-50..50));
            for _ in 0..200 {
                let (a, b, c) = (rand_scalar(&mut rng), rand_scalar(&mut rng), rand_scalar(&mut rng));
                assert_eq!(spec.add(&spec.add(&a, &b), &c), spec.add(&a, &spec.add(&b, &c)));
                assert_eq!(spec.mul(&spec.mul(&a, &b), &c), spec.mul(&a, &spec.mul(&b, &c)));
                assert_eq!(spec.mul(&a, &spec.add(&b, &c)), spec.add(&spec.mul(&a, &b), &spec.mul(&a, &c)));
                assert_eq!(spec.add(&a, &spec.neg(&a)), spec.zero());
                if !a.is_zero() {
                    assert_eq!(spec.mul(&a, &spec.inv(&a).unwrap()), spec.one());
                }
            }
        }
    }
}
