//! Exact coefficient fields: the rationals, prime fields `F_p`, and small
//! extension fields `F_{p^k}` represented as `F_p[t] / (modulus)`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::AlgebraError;

/// How a caller asks for a field. [`Field::make`] validates it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    /// `F_{p^k}`. When `modulus` is `None` the lexicographically smallest
    /// monic irreducible polynomial of degree `k` is chosen.
    Extension {
        p: u64,
        k: u32,
        modulus: Option<Vec<u64>>,
    },
}

/// A validated coefficient field.
///
/// Extension moduli are stored low degree first and are monic of length `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rationals,
    Prime(u64),
    Extension { p: u64, k: u32, modulus: Vec<u64> },
}

/// An element of some [`Field`]. Elements do not carry their field; every
/// operation goes through the field that owns them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Q(BigRational),
    Fp(u64),
    /// Residue of degree `< k`, coefficients low degree first, length exactly `k`.
    Fq(Vec<u64>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime, if possible.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1 && is_prime(p)).then_some((p, k))
}

/// All prime powers in `2..=max`, ascending.
pub fn prime_powers_up_to(max: u64) -> Vec<u64> {
    (2..=max)
        .filter(|&q| prime_power_decomposition(q).is_some())
        .collect()
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    (a != 0).then(|| pow_mod(a, p - 2, p))
}

/// Univariate polynomial helpers over `F_p`, coefficients low degree first.
mod upoly {
    use super::{inv_mod, mul_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo `b` (`b` nonzero, trimmed).
    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let lead_inv = inv_mod(*b.last().expect("nonzero divisor"), p).expect("unit lead");
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = mul_mod(*r.last().unwrap(), lead_inv, p);
            for (i, &bi) in b.iter().enumerate() {
                let sub = mul_mod(c, bi, p);
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    /// Monic polynomial of degree `deg` whose lower coefficients are the
    /// base-`p` digits of `code`, constant term least significant.
    pub fn monic_from_code(mut code: u64, deg: usize, p: u64) -> Vec<u64> {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(code % p);
            code /= p;
        }
        c.push(1);
        c
    }

    /// Brute-force irreducibility: no monic factor of degree `1..=deg/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let deg = f.len() - 1;
        if deg == 0 {
            return false;
        }
        for d in 1..=deg / 2 {
            let count = p.pow(d as u32);
            for code in 0..count {
                let g = monic_from_code(code, d, p);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl Field {
    pub fn make(spec: FieldSpec) -> Result<Field, AlgebraError> {
        match spec {
            FieldSpec::Rationals => Ok(Field::Rationals),
            FieldSpec::Prime(p) => {
                if is_prime(p) {
                    Ok(Field::Prime(p))
                } else {
                    Err(AlgebraError::NonPrimeCharacteristic(p))
                }
            }
            FieldSpec::Extension { p, k, modulus } => {
                if !is_prime(p) {
                    return Err(AlgebraError::NonPrimeCharacteristic(p));
                }
                if k == 0 {
                    return Err(AlgebraError::InvalidExtensionDegree(k));
                }
                if k == 1 && modulus.is_none() {
                    return Ok(Field::Prime(p));
                }
                let modulus = match modulus {
                    Some(m) => {
                        let m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                        if m.len() != k as usize + 1
                            || m.last() != Some(&1)
                            || !upoly::is_irreducible(&m, p)
                        {
                            return Err(AlgebraError::ReducibleModulus);
                        }
                        m
                    }
                    None => Self::smallest_irreducible(p, k),
                };
                Ok(Field::Extension { p, k, modulus })
            }
        }
    }

    /// Field with `q` elements (prime or prime power), default modulus.
    pub fn finite(q: u64) -> Result<Field, AlgebraError> {
        let (p, k) = prime_power_decomposition(q).ok_or(AlgebraError::NotPrimePower(q))?;
        if k == 1 {
            Field::make(FieldSpec::Prime(p))
        } else {
            Field::make(FieldSpec::Extension {
                p,
                k,
                modulus: None,
            })
        }
    }

    /// Prime field of characteristic `p`, or the rationals for `p = 0`.
    pub fn of_characteristic(p: u64) -> Result<Field, AlgebraError> {
        if p == 0 {
            Ok(Field::Rationals)
        } else {
            Field::make(FieldSpec::Prime(p))
        }
    }

    fn smallest_irreducible(p: u64, k: u32) -> Vec<u64> {
        (0..p.pow(k))
            .map(|code| upoly::monic_from_code(code, k as usize, p))
            .find(|f| upoly::is_irreducible(f, p))
            .expect("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) | Field::Extension { p, .. } => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(*p),
            Field::Extension { p, k, .. } => Some(p.pow(*k)),
        }
    }

    pub fn modulus(&self) -> Option<&[u64]> {
        match self {
            Field::Extension { modulus, .. } => Some(modulus),
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        match self {
            Field::Rationals => Elem::Q(BigRational::zero()),
            Field::Prime(_) => Elem::Fp(0),
            Field::Extension { k, .. } => Elem::Fq(vec![0; *k as usize]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match self {
            Field::Rationals => Elem::Q(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Elem::Fp(v.rem_euclid(*p as i64) as u64),
            Field::Extension { p, k, .. } => {
                let mut c = vec![0; *k as usize];
                c[0] = v.rem_euclid(*p as i64) as u64;
                Elem::Fq(c)
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Elem, AlgebraError> {
        match self {
            Field::Rationals => Ok(Elem::Q(r.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let num = self.from_bigint(&r.numer().mod_floor_big(&p));
                let den = self.from_bigint(&r.denom().mod_floor_big(&p));
                let inv = self.inv(&den).ok_or(AlgebraError::DivisionByZero)?;
                Ok(self.mul(&num, &inv))
            }
        }
    }

    fn from_bigint(&self, v: &BigInt) -> Elem {
        let small: i64 = v.try_into().expect("reduced residue fits in i64");
        self.from_i64(small)
    }

    /// Image of a prime-field element under the canonical embedding.
    pub fn embed(&self, from: &Field, e: &Elem) -> Result<Elem, AlgebraError> {
        if from == self {
            return Ok(e.clone());
        }
        match (from, e) {
            (Field::Prime(p), Elem::Fp(v)) if *p == self.characteristic() => {
                Ok(self.from_i64(*v as i64))
            }
            (Field::Rationals, Elem::Q(r)) => self.from_rational(r),
            _ => Err(AlgebraError::FieldMismatch),
        }
    }

    pub fn is_zero(&self, e: &Elem) -> bool {
        match e {
            Elem::Q(r) => r.is_zero(),
            Elem::Fp(v) => *v == 0,
            Elem::Fq(c) => c.iter().all(|&x| x == 0),
        }
    }

    pub fn is_one(&self, e: &Elem) -> bool {
        *e == self.one()
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            (Field::Prime(p), Elem::Fp(x), Elem::Fp(y)) => Elem::Fp((x + y) % p),
            (Field::Extension { p, .. }, Elem::Fq(x), Elem::Fq(y)) => {
                Elem::Fq(x.iter().zip(y).map(|(a, b)| (a + b) % p).collect())
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (Field::Rationals, Elem::Q(x)) => Elem::Q(-x),
            (Field::Prime(p), Elem::Fp(x)) => Elem::Fp((p - x) % p),
            (Field::Extension { p, .. }, Elem::Fq(x)) => {
                Elem::Fq(x.iter().map(|a| (p - a) % p).collect())
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (Field::Rationals, Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Field::Prime(p), Elem::Fp(x), Elem::Fp(y)) => Elem::Fp(mul_mod(*x, *y, *p)),
            (Field::Extension { p, k, modulus }, Elem::Fq(x), Elem::Fq(y)) => {
                let prod = upoly::mul(&upoly::trim(x.clone()), &upoly::trim(y.clone()), *p);
                let mut r = upoly::rem(&prod, modulus, *p);
                r.resize(*k as usize, 0);
                Elem::Fq(r)
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn pow(&self, a: &Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &Elem) -> Option<Elem> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Rationals, Elem::Q(x)) => Some(Elem::Q(x.recip())),
            (Field::Prime(p), Elem::Fp(x)) => inv_mod(*x, *p).map(Elem::Fp),
            (Field::Extension { .. }, Elem::Fq(_)) => {
                let q = self.order().unwrap();
                Some(self.pow(a, q - 2))
            }
            _ => panic!("element does not belong to field {self}"),
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    /// All elements of a finite field in a deterministic order: residues
    /// by their base-`p` code, constant coefficient least significant.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some((0..*p).map(Elem::Fp).collect()),
            Field::Extension { p, k, .. } => {
                let q = p.pow(*k);
                Some(
                    (0..q)
                        .map(|mut code| {
                            let mut c = Vec::with_capacity(*k as usize);
                            for _ in 0..*k {
                                c.push(code % p);
                                code /= p;
                            }
                            Elem::Fq(c)
                        })
                        .collect(),
                )
            }
        }
    }

    /// Sign of a rational element; finite-field elements have none.
    pub fn rational_sign(&self, e: &Elem) -> Option<std::cmp::Ordering> {
        match e {
            Elem::Q(r) => Some(if r.is_positive() {
                std::cmp::Ordering::Greater
            } else if r.is_negative() {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Equal
            }),
            _ => None,
        }
    }

    /// Renders an element. Extension residues print as polynomials in `t`.
    pub fn format(&self, e: &Elem) -> String {
        match e {
            Elem::Q(r) => {
                if r.is_integer() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Fp(v) => v.to_string(),
            Elem::Fq(c) => {
                let mut parts = Vec::new();
                for (d, &coef) in c.iter().enumerate().rev() {
                    if coef == 0 {
                        continue;
                    }
                    let var = match d {
                        0 => String::new(),
                        1 => "t".to_string(),
                        _ => format!("t^{d}"),
                    };
                    parts.push(match (coef, d) {
                        (_, 0) => coef.to_string(),
                        (1, _) => var,
                        _ => format!("{coef}*{var}"),
                    });
                }
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            }
        }
    }

    /// True when `format` of this element is a single token (no `+`).
    pub fn is_atomic(&self, e: &Elem) -> bool {
        match e {
            Elem::Fq(c) => c.iter().filter(|&&x| x != 0).count() <= 1,
            _ => true,
        }
    }

    /// Whether `e` is a legal element of this field.
    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (Field::Rationals, Elem::Q(_)) => true,
            (Field::Prime(p), Elem::Fp(v)) => v < p,
            (Field::Extension { p, k, .. }, Elem::Fq(c)) => {
                c.len() == *k as usize && c.iter().all(|x| x < p)
            }
            _ => false,
        }
    }
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.is_negative() {
            r + m
        } else {
            r
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
            Field::Extension { p, k, .. } => write!(f, "GF({p}^{k})"),
        }
    }
}

/// Convenience constructor for rational elements.
pub fn rational(num: i64, den: i64) -> Elem {
    Elem::Q(BigRational::new(num.into(), den.into()))
}

impl Elem {
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Elem::Q(r) => Some(r),
            _ => None,
        }
    }
}

impl From<BigRational> for Elem {
    fn from(r: BigRational) -> Self {
        Elem::Q(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = Field::make(FieldSpec::Prime(5)).unwrap();
        assert_eq!(f.order(), Some(5));
        assert_eq!(f.elements().unwrap().len(), 5);
        assert_eq!(f.inv(&Elem::Fp(2)), Some(Elem::Fp(3)));
    }

    #[test]
    fn non_prime_rejected() {
        assert_eq!(
            Field::make(FieldSpec::Prime(4)),
            Err(AlgebraError::NonPrimeCharacteristic(4))
        );
        assert!(Field::make(FieldSpec::Extension {
            p: 6,
            k: 2,
            modulus: None
        })
        .is_err());
    }

    #[test]
    fn default_moduli_are_lexicographically_smallest() {
        // t^2 has the root 0; t^2 + 1 has no root mod 3.
        let f9 = Field::finite(9).unwrap();
        assert_eq!(f9.modulus(), Some(&[1, 0, 1][..]));
        let f4 = Field::finite(4).unwrap();
        assert_eq!(f4.modulus(), Some(&[1, 1, 1][..]));
        let f8 = Field::finite(8).unwrap();
        assert_eq!(f8.modulus(), Some(&[1, 1, 0, 1][..]));
    }

    #[test]
    fn supplied_reducible_modulus_rejected() {
        let r = Field::make(FieldSpec::Extension {
            p: 3,
            k: 2,
            modulus: Some(vec![0, 0, 1]),
        });
        assert_eq!(r, Err(AlgebraError::ReducibleModulus));
    }

    #[test]
    fn prime_power_helpers() {
        assert_eq!(prime_power_decomposition(9), Some((3, 2)));
        assert_eq!(prime_power_decomposition(12), None);
        assert_eq!(prime_powers_up_to(13), vec![2, 3, 4, 5, 7, 8, 9, 11, 13]);
    }

    fn check_field_axioms(f: &Field) {
        let els = f.elements().unwrap();
        let one = f.one();
        for a in &els {
            assert_eq!(f.add(a, &f.neg(a)), f.zero());
            if !f.is_zero(a) {
                assert_eq!(f.mul(a, &f.inv(a).unwrap()), one);
            }
            for b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in &els {
                    assert_eq!(f.mul(a, &f.add(b, c)), f.add(&f.mul(a, b), &f.mul(a, c)));
                    assert_eq!(f.mul(&f.mul(a, b), c), f.mul(a, &f.mul(b, c)));
                    assert_eq!(f.add(&f.add(a, b), c), f.add(a, &f.add(b, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small_fields() {
        for q in prime_powers_up_to(13) {
            check_field_axioms(&Field::finite(q).unwrap());
        }
    }

    #[test]
    fn rational_reduction_mod_p() {
        let f = Field::Prime(7);
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), Elem::Fp(4));
        let neg = BigRational::new((-3).into(), 1.into());
        assert_eq!(f.from_rational(&neg).unwrap(), Elem::Fp(4));
    }

    #[test]
    fn extension_formatting() {
        let f = Field::finite(9).unwrap();
        assert_eq!(f.format(&Elem::Fq(vec![1, 2])), "2*t + 1");
        assert_eq!(f.format(&Elem::Fq(vec![0, 1])), "t");
        assert_eq!(f.format(&f.zero()), "0");
    }
}
