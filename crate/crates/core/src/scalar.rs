//! Exact field arithmetic over arbitrary-precision rationals and odd prime
//! fields.
//!
//! Two layers live here. [`Field`] is a context object (the pattern used by
//! exact linear-algebra kernels: the field is a value, elements are plain
//! data) with the two implementations [`Rationals`] and [`PrimeField`]; all
//! heavy computation in the crate is generic over it, so the prime-field
//! path stays a single machine word. [`Scalar`] is the dynamic counterpart
//! used at serialization and CLI boundaries, where values from different
//! fields can meet and mismatches must be reported rather than prevented by
//! types.
//!
//! Serialized forms: rationals as `num/den` (`den` omitted when 1),
//! prime-field elements as decimal residues in `[0, p)`; field specs as
//! `"Q"` or `"Fp:<p>"`.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Which exact field computations run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField { modulus: u64 },
}

impl FieldSpec {
    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField { modulus } => *modulus,
        }
    }

    /// Checks the standing hypotheses: prime-field moduli must be odd primes.
    pub fn validate(&self) -> Result<()> {
        match self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::PrimeField { modulus } => {
                if *modulus == 2 {
                    Err(Error::CharacteristicTwo)
                } else if !is_odd_prime(*modulus) {
                    Err(Error::NotPrime(*modulus))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Parses `"Q"` / `"Fp:<p>"` (serialized form) or `"q"` / `"mod:<p>"`
    /// (CLI form).
    pub fn parse(s: &str) -> Result<FieldSpec> {
        let spec = if s.eq_ignore_ascii_case("q") {
            FieldSpec::Rationals
        } else if let Some(p) = s.strip_prefix("Fp:").or_else(|| s.strip_prefix("mod:")) {
            let modulus = p
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad modulus in field spec {s:?}")))?;
            FieldSpec::PrimeField { modulus }
        } else {
            return Err(Error::Parse(format!(
                "bad field spec {s:?} (expected \"q\" or \"mod:<p>\")"
            )));
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::PrimeField { modulus } => write!(f, "Fp:{modulus}"),
        }
    }
}

/// Validates and builds a [`FieldSpec`]. `modulus` is required for (and only
/// for) the prime-field kind.
pub fn field_make(kind: FieldKind, modulus: Option<u64>) -> Result<FieldSpec> {
    let spec = match (kind, modulus) {
        (FieldKind::Rationals, None) => FieldSpec::Rationals,
        (FieldKind::Rationals, Some(_)) => {
            return Err(Error::Parse("modulus given for the rationals".into()))
        }
        (FieldKind::PrimeField, Some(modulus)) => FieldSpec::PrimeField { modulus },
        (FieldKind::PrimeField, None) => {
            return Err(Error::Parse("prime field needs a modulus".into()))
        }
    };
    spec.validate()?;
    Ok(spec)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldKind {
    Rationals,
    PrimeField,
}

/// An exact field, passed by value alongside plain element data.
///
/// Elements never round: every operation is exact and every element has one
/// canonical representation, so `==` on elements is semantic equality.
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse. Panics on zero: callers only invert verified
    /// pivots; the dynamic [`Scalar`] layer reports division by zero as an
    /// error instead.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.inv(b))
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `acc -= f * x`, the elimination kernel.
    fn sub_mul_assign(&self, acc: &mut Self::Elem, f: &Self::Elem, x: &Self::Elem) {
        *acc = self.sub(acc, &self.mul(f, x));
    }

    /// Rescales a sparse row (sorted, no explicit zeros) to its canonical
    /// representative: over the rationals, clear denominators and divide by
    /// the content so entries are coprime integers with the leading one
    /// positive; over a prime field, scale the leading entry to 1.
    fn normalize_row(&self, row: &mut [(u32, Self::Elem)]);

    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
}

/// The field of arbitrary-precision rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }

    fn normalize_row(&self, row: &mut [(u32, BigRational)]) {
        if row.is_empty() {
            return;
        }
        // lcm of denominators, then gcd of the scaled numerators (the content)
        let mut l = BigInt::one();
        for (_, v) in row.iter() {
            l = l.lcm(v.denom());
        }
        let nums: Vec<BigInt> = row
            .iter()
            .map(|(_, v)| v.numer() * (&l / v.denom()))
            .collect();
        let mut g = BigInt::zero();
        for n in &nums {
            g = g.gcd(n);
        }
        if nums[0].is_negative() {
            g = -g;
        }
        for ((_, v), n) in row.iter_mut().zip(nums) {
            *v = BigRational::from_integer(n / &g);
        }
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let bad = || Error::Parse(format!("bad rational {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BigRational::new(num, den))
    }
}

/// The prime field of odd order `p`, elements stored as canonical residues
/// in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField> {
        FieldSpec::PrimeField { modulus: p }.validate()?;
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduction of an arbitrary rational with denominator coprime to `p`.
    pub fn reduce_rational(&self, r: &BigRational) -> Result<u64> {
        let p = BigInt::from(self.p);
        let den = r.denom().mod_floor(&p);
        let den = u64::try_from(&den).expect("residue fits");
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let num = r.numer().mod_floor(&p);
        let num = u64::try_from(&num).expect("residue fits");
        Ok(self.mul(&num, &self.inv(&den)))
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField { modulus: self.p }
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }

    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - *a
        }
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }

    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        mod_inverse(*a, self.p)
    }

    fn sub_mul_assign(&self, acc: &mut u64, f: &u64, x: &u64) {
        *acc = self.sub(acc, &self.mul(f, x));
    }

    fn normalize_row(&self, row: &mut [(u32, u64)]) {
        if row.is_empty() {
            return;
        }
        let lead = row[0].1;
        if lead == 1 {
            return;
        }
        let f = self.inv(&lead);
        for (_, v) in row.iter_mut() {
            *v = self.mul(v, &f);
        }
    }

    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let n: i128 = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
        Ok(n.rem_euclid(self.p as i128) as u64)
    }
}

/// Extended-Euclid modular inverse; `a` must be nonzero mod the odd prime `p`.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t): (i128, i128) = (0, 1);
    let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of a non-unit");
    t.rem_euclid(p as i128) as u64
}

/// Deterministic Miller-Rabin for u64, rejecting 2 (the whole crate assumes
/// odd characteristic).
pub fn is_odd_prime(n: u64) -> bool {
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        b %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    };
    // This witness set decides primality for every u64.
    'witness: for &a in &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A field element together with its field, for boundaries where values from
/// different fields can meet.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Mod { value: u64, modulus: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl Scalar {
    pub fn spec(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Mod { modulus, .. } => FieldSpec::PrimeField { modulus: *modulus },
        }
    }

    pub fn parse(spec: FieldSpec, s: &str) -> Result<Scalar> {
        match spec {
            FieldSpec::Rationals => Ok(Scalar::Rational(Rationals.parse_elem(s)?)),
            FieldSpec::PrimeField { modulus } => {
                let f = PrimeField::new(modulus)?;
                Ok(Scalar::Mod {
                    value: f.parse_elem(s)?,
                    modulus,
                })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{}", Rationals.format_elem(r)),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Exact arithmetic on dynamic scalars, reporting field mismatches and
/// division by zero.
pub fn scalar_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<Scalar> {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => {
            let f = Rationals;
            let v = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => {
                    if y.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    f.div(x, y)
                }
            };
            Ok(Scalar::Rational(v))
        }
        (
            Scalar::Mod {
                value: x,
                modulus: p,
            },
            Scalar::Mod {
                value: y,
                modulus: q,
            },
        ) if p == q => {
            let f = PrimeField::new(*p)?;
            let v = match op {
                ArithOp::Add => f.add(x, y),
                ArithOp::Sub => f.sub(x, y),
                ArithOp::Mul => f.mul(x, y),
                ArithOp::Div => {
                    if *y == 0 {
                        return Err(Error::DivisionByZero);
                    }
                    f.div(x, y)
                }
            };
            Ok(Scalar::Mod {
                value: v,
                modulus: *p,
            })
        }
        _ => Err(Error::FieldMismatch(a.spec(), b.spec())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_make_validates() {
        assert_eq!(
            field_make(FieldKind::Rationals, None).unwrap(),
            FieldSpec::Rationals
        );
        assert_eq!(
            field_make(FieldKind::PrimeField, Some(101)).unwrap(),
            FieldSpec::PrimeField { modulus: 101 }
        );
        assert_eq!(
            field_make(FieldKind::PrimeField, Some(2)),
            Err(Error::CharacteristicTwo)
        );
        assert_eq!(
            field_make(FieldKind::PrimeField, Some(91)),
            Err(Error::NotPrime(91))
        );
        assert_eq!(
            field_make(FieldKind::PrimeField, Some(1)),
            Err(Error::NotPrime(1))
        );
    }

    #[test]
    fn rational_add_canonical() {
        let f = Rationals;
        let half = f.parse_elem("1/2").unwrap();
        let third = f.parse_elem("1/3").unwrap();
        assert_eq!(f.format_elem(&f.add(&half, &third)), "5/6");
    }

    /// Long-division oracle for the modular product example: 50 * 50 = 2500,
    /// and 2500 mod 101 by repeated subtraction.
    #[test]
    fn prime_field_product_vs_long_division() {
        let mut rem = 50u64 * 50u64;
        while rem >= 101 {
            rem -= 101;
        }
        assert_eq!(rem, 76);
        let f = PrimeField::new(101).unwrap();
        assert_eq!(f.mul(&50, &50), 76);
    }

    #[test]
    fn prime_field_inverse() {
        let f = PrimeField::new(101).unwrap();
        for x in 1..101 {
            assert_eq!(f.mul(&x, &f.inv(&x)), 1);
        }
    }

    #[test]
    fn scalar_arith_examples() {
        let a = Scalar::parse(FieldSpec::Rationals, "1/2").unwrap();
        let b = Scalar::parse(FieldSpec::Rationals, "1/3").unwrap();
        assert_eq!(
            scalar_arith(&a, &b, ArithOp::Add).unwrap().to_string(),
            "5/6"
        );

        let p = FieldSpec::PrimeField { modulus: 101 };
        let x = Scalar::parse(p, "50").unwrap();
        assert_eq!(
            scalar_arith(&x, &x, ArithOp::Mul).unwrap().to_string(),
            "76"
        );

        let zero = Scalar::parse(p, "0").unwrap();
        assert_eq!(
            scalar_arith(&x, &zero, ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            scalar_arith(&a, &x, ArithOp::Add),
            Err(Error::FieldMismatch(
                FieldSpec::Rationals,
                FieldSpec::PrimeField { modulus: 101 }
            ))
        );
    }

    #[test]
    fn field_spec_strings() {
        assert_eq!(FieldSpec::parse("q").unwrap(), FieldSpec::Rationals);
        assert_eq!(FieldSpec::parse("Q").unwrap(), FieldSpec::Rationals);
        assert_eq!(
            FieldSpec::parse("mod:101").unwrap(),
            FieldSpec::PrimeField { modulus: 101 }
        );
        assert_eq!(
            FieldSpec::parse("Fp:7").unwrap(),
            FieldSpec::PrimeField { modulus: 7 }
        );
        assert_eq!(FieldSpec::parse("mod:2"), Err(Error::CharacteristicTwo));
        assert_eq!(
            FieldSpec::PrimeField { modulus: 101 }.to_string(),
            "Fp:101"
        );
        assert_eq!(FieldSpec::Rationals.to_string(), "Q");
    }

    #[test]
    fn parse_format_roundtrip_is_canonical() {
        let f = Rationals;
        // non-canonical input normalizes on parse; formatting is then stable
        let v = f.parse_elem("-6/-4").unwrap();
        assert_eq!(f.format_elem(&v), "3/2");
        let w = f.parse_elem(&f.format_elem(&v)).unwrap();
        assert_eq!(v, w);

        let p = PrimeField::new(7).unwrap();
        assert_eq!(p.parse_elem("-1").unwrap(), 6);
        assert_eq!(p.parse_elem("13").unwrap(), 6);
    }

    #[test]
    fn normalize_row_rationals() {
        let f = Rationals;
        let mut row = vec![
            (0u32, f.parse_elem("-1/2").unwrap()),
            (3u32, f.parse_elem("1/3").unwrap()),
        ];
        f.normalize_row(&mut row);
        // multiply by -6: (3, -2)
        assert_eq!(f.format_elem(&row[0].1), "3");
        assert_eq!(f.format_elem(&row[1].1), "-2");
    }

    #[test]
    fn primality() {
        assert!(is_odd_prime(3));
        assert!(is_odd_prime(101));
        assert!(is_odd_prime(1_000_000_007));
        assert!(!is_odd_prime(2));
        assert!(!is_odd_prime(1));
        assert!(!is_odd_prime(91));
        assert!(!is_odd_prime(1_000_000_007u64 * 3));
    }

    /// Reduction to F_p is a ring homomorphism on rationals whose
    /// denominators are units mod p.
    #[test]
    fn rational_to_prime_field_homomorphism() {
        let q = Rationals;
        let p = PrimeField::new(101).unwrap();
        let samples = ["1/2", "-3/4", "7", "22/7", "-5/6", "0", "100/3"];
        for a in samples {
            for b in samples {
                let (ra, rb) = (q.parse_elem(a).unwrap(), q.parse_elem(b).unwrap());
                let (ma, mb) = (
                    p.reduce_rational(&ra).unwrap(),
                    p.reduce_rational(&rb).unwrap(),
                );
                assert_eq!(p.reduce_rational(&q.add(&ra, &rb)).unwrap(), p.add(&ma, &mb));
                assert_eq!(p.reduce_rational(&q.mul(&ra, &rb)).unwrap(), p.mul(&ma, &mb));
            }
        }
    }
}

#[cfg(test)]
mod proptests {
    use super::*;
    use proptest::prelude::*;

    fn arb_rational() -> impl Strategy<Value = BigRational> {
        (-50i64..50, 1i64..30).prop_map(|(n, d)| {
            BigRational::new(BigInt::from(n), BigInt::from(d))
        })
    }

    fn arb_mod101() -> impl Strategy<Value = u64> {
        0u64..101
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            let f = Rationals;
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        }

        #[test]
        fn prime_field_axioms(a in arb_mod101(), b in arb_mod101(), c in arb_mod101()) {
            let f = PrimeField::new(101).unwrap();
            prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
            prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
            prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
            prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
            prop_assert_eq!(f.sub(&a, &a), 0);
        }

        #[test]
        fn inverses_cancel(a in arb_rational(), m in 1u64..101) {
            let f = Rationals;
            if !a.is_zero() {
                prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a))));
            }
            let p = PrimeField::new(101).unwrap();
            prop_assert_eq!(p.mul(&m, &p.inv(&m)), 1);
        }
    }
}
