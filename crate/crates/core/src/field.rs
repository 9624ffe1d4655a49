//! Exact fields: prime fields, small extensions, and the rationals.

use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::ntheory::{add_mod, factorize, is_prime, mul_mod, pow_mod};

/// An exact field. Elements are plain values; all arithmetic goes through the field handle.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Eq + Hash + Ord + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_bigint(&self, v: &BigInt) -> Self::Elem;
    /// "p", "p^e" or "Q".
    fn name(&self) -> String;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(v))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// a + b*c, the inner step of every elimination.
    fn mul_add(&self, a: &Self::Elem, b: &Self::Elem, c: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(b, c))
    }

    fn same_as(&self, other: &Self) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.name(), other.name()))
        }
    }
}

/// A field with finitely many elements, enumerable by index `0..order`.
pub trait FiniteField: Field {
    fn order(&self) -> u64;
    fn characteristic(&self) -> u64;
    fn degree(&self) -> u32;
    /// Canonical element with index `i`; index 0 is zero and index 1 is one.
    fn element(&self, i: u64) -> Self::Elem;
    fn index(&self, a: &Self::Elem) -> u64;

    /// Multiplicative order of a nonzero element, via the factorization of q - 1.
    fn multiplicative_order(&self, a: &Self::Elem) -> Option<u64> {
        if self.is_zero(a) {
            return None;
        }
        let mut ord = self.order() - 1;
        for (p, e) in factorize(ord) {
            for _ in 0..e {
                if self.pow(a, ord / p) == self.one() {
                    ord /= p;
                } else {
                    break;
                }
            }
        }
        Some(ord)
    }

    /// Smallest-index generator of the multiplicative group.
    fn primitive_element(&self) -> Self::Elem {
        let target = self.order() - 1;
        (1..self.order())
            .map(|i| self.element(i))
            .find(|g| self.multiplicative_order(g) == Some(target))
            .expect("finite fields have primitive elements")
    }
}

#[derive(Debug)]
struct GfInner {
    p: u64,
    e: u32,
    q: u64,
    /// Monic modulus, constant term first; empty for prime fields.
    modulus: Vec<u64>,
    /// exp/log tables for small extension fields.
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// The finite field F_{p^e}. Elements are encoded as integers `sum c_i p^i`
/// where `c_i` is the coefficient of `x^i` modulo the field's modulus.
#[derive(Clone)]
pub struct Gf(Arc<GfInner>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.name())
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.e == other.0.e
    }
}
impl Eq for Gf {}

const TABLE_LIMIT: u64 = 1 << 20;

impl Gf {
    pub fn prime(p: u64) -> Result<Gf> {
        Gf::new(p, 1)
    }

    /// F_{p^e} with the smallest irreducible modulus (lexicographic on the
    /// coefficient encoding), so equal (p, e) always give the same field.
    pub fn new(p: u64, e: u32) -> Result<Gf> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 63 {
            return invalid("characteristic must be below 2^63");
        }
        if e == 0 || e > 8 {
            return invalid(format!("extension degree {e} outside 1..=8"));
        }
        let q = (p as u128).pow(e);
        if q >= 1 << 63 {
            return invalid(format!("field size {p}^{e} does not fit in 63 bits"));
        }
        let q = q as u64;
        let mut inner = GfInner { p, e, q, modulus: Vec::new(), exp: Vec::new(), log: Vec::new() };
        if e > 1 {
            inner.modulus = smallest_irreducible(p, e as usize);
            let gf = Gf(Arc::new(inner));
            if q <= TABLE_LIMIT {
                let g = gf.primitive_element();
                let mut exp = Vec::with_capacity(q as usize - 1);
                let mut log = vec![0u32; q as usize];
                let mut x = 1u64;
                for i in 0..q - 1 {
                    exp.push(x);
                    log[x as usize] = i as u32;
                    x = gf.mul_slow(x, g);
                }
                let mut inner = Arc::try_unwrap(gf.0).expect("unshared");
                inner.exp = exp;
                inner.log = log;
                return Ok(Gf(Arc::new(inner)));
            }
            return Ok(gf);
        }
        Ok(Gf(Arc::new(inner)))
    }

    /// Parses "p" or "p^e".
    pub fn parse(spec: &str) -> Result<Gf> {
        let bad = || Error::Parse { location: "field".into(), message: format!("bad field spec {spec:?}") };
        let (p, e) = match spec.trim().split_once('^') {
            Some((p, e)) => (p.trim().parse().map_err(|_| bad())?, e.trim().parse().map_err(|_| bad())?),
            None => (spec.trim().parse().map_err(|_| bad())?, 1),
        };
        Gf::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    /// Monic modulus coefficients, constant term first (empty for prime fields).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Coefficient vector (length e) of an element.
    pub fn coefficients(&self, mut a: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.0.e as usize);
        for _ in 0..self.0.e {
            out.push(a % self.0.p);
            a /= self.0.p;
        }
        out
    }

    pub fn from_coefficients(&self, coeffs: &[u64]) -> Result<u64> {
        if coeffs.len() > self.0.e as usize || coeffs.iter().any(|&c| c >= self.0.p) {
            return invalid(format!("coefficients {coeffs:?} do not describe an element of F_{}", self.name()));
        }
        Ok(coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.0.p + c))
    }

    fn mul_slow(&self, a: u64, b: u64) -> u64 {
        let p = self.0.p;
        let e = self.0.e as usize;
        let ca = self.coefficients(a);
        let cb = self.coefficients(b);
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        let m = &self.0.modulus;
        for d in (e..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &mi) in m.iter().take(e).enumerate() {
                let sub = mul_mod(c, mi, p);
                prod[d - e + i] = add_mod(prod[d - e + i], p - sub, p);
            }
        }
        self.from_coefficients(&prod[..e]).expect("reduced")
    }

    fn digitwise(&self, a: u64, b: u64, f: impl Fn(u64, u64) -> u64) -> u64 {
        let p = self.0.p;
        let (mut a, mut b) = (a, b);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.0.e {
            out += f(a % p, b % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }
}

impl Field for Gf {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            add_mod(*a, *b, p)
        } else {
            self.digitwise(*a, *b, |x, y| add_mod(x, y, p))
        }
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        let p = self.0.p;
        if self.0.e == 1 {
            add_mod(*a, if *b == 0 { 0 } else { p - *b }, p)
        } else {
            self.digitwise(*a, *b, |x, y| add_mod(x, if y == 0 { 0 } else { p - y }, p))
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        self.sub(&0, a)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        if self.0.e == 1 {
            let p = self.0.p;
            if p < 1 << 32 {
                (a * b) % p
            } else {
                mul_mod(*a, *b, p)
            }
        } else if *a == 0 || *b == 0 {
            0
        } else if !self.0.exp.is_empty() {
            let n = self.0.q - 1;
            let l = (self.0.log[*a as usize] as u64 + self.0.log[*b as usize] as u64) % n;
            self.0.exp[l as usize]
        } else {
            self.mul_slow(*a, *b)
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        if self.0.e == 1 {
            return Some(pow_mod(*a, self.0.p - 2, self.0.p));
        }
        if !self.0.exp.is_empty() {
            let n = self.0.q - 1;
            return Some(self.0.exp[((n - self.0.log[*a as usize] as u64) % n) as usize]);
        }
        Some(self.pow(a, self.0.q - 2))
    }
    fn from_bigint(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.0.p));
        r.to_u64().expect("reduced below p")
    }
    fn from_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.0.p as i128) as u64
    }
    fn name(&self) -> String {
        if self.0.e == 1 {
            self.0.p.to_string()
        } else {
            format!("{}^{}", self.0.p, self.0.e)
        }
    }
}

impl FiniteField for Gf {
    fn order(&self) -> u64 {
        self.0.q
    }
    fn characteristic(&self) -> u64 {
        self.0.p
    }
    fn degree(&self) -> u32 {
        self.0.e
    }
    fn element(&self, i: u64) -> u64 {
        debug_assert!(i < self.0.q);
        i
    }
    fn index(&self, a: &u64) -> u64 {
        *a
    }
}

// Polynomials over F_p as coefficient vectors (constant first), used only to find moduli.

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
        }
    }
    poly_rem(prod, f, p)
}

fn poly_rem(mut a: Vec<u64>, f: &[u64], p: u64) -> Vec<u64> {
    let df = f.len() - 1;
    let lead_inv = pow_mod(f[df], p - 2, p);
    a = trim(a);
    while a.len() > df {
        let d = a.len() - 1;
        let c = mul_mod(a[d], lead_inv, p);
        for (i, &fi) in f.iter().enumerate() {
            let idx = d - df + i;
            a[idx] = add_mod(a[idx], p - mul_mod(c, fi, p) % p, p) % p;
        }
        a = trim(a);
    }
    a
}

fn poly_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    a = trim(a);
    b = trim(b);
    while !b.is_empty() {
        let r = poly_rem(a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    let mut h = vec![0u64, 1];
    for _ in 0..e / 2 {
        // h <- h^p mod f
        let mut base = h.clone();
        let mut acc = vec![1u64];
        let mut k = p;
        while k > 0 {
            if k & 1 == 1 {
                acc = poly_mulmod(&acc, &base, f, p);
            }
            base = poly_mulmod(&base, &base, f, p);
            k >>= 1;
        }
        h = acc;
        let mut g = h.clone();
        g.resize(g.len().max(2), 0);
        g[1] = add_mod(g[1], p - 1, p);
        if poly_gcd(f.to_vec(), g, p).len() != 1 {
            return false;
        }
    }
    true
}

fn smallest_irreducible(p: u64, e: usize) -> Vec<u64> {
    let count = (p as u128).pow(e as u32) as u64;
    for code in 0..count {
        let mut f = Vec::with_capacity(e + 1);
        let mut c = code;
        for _ in 0..e {
            f.push(c % p);
            c /= p;
        }
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist")
}

/// The field of rational numbers, arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_bigint(&self, v: &BigInt) -> BigRational {
        BigRational::from_integer(v.clone())
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// Formats a rational as "num/den" (or "num" when the denominator is 1).
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses "num/den" or "num" into a reduced rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse { location: "rational".into(), message: format!("bad rational {s:?}") };
    let (n, d) = match s.trim().split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().map_err(|_| bad())?, d.trim().parse::<BigInt>().map_err(|_| bad())?),
        None => (s.trim().parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if d.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(n, d);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_arithmetic() {
        let f = Gf::prime(7).unwrap();
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.from_i64(-1), 6);
        assert_eq!(f.name(), "7");
    }

    #[test]
    fn rejects_composites_and_big_degrees() {
        assert_eq!(Gf::prime(9), Err(Error::NotPrime(9)));
        assert!(Gf::new(3, 9).is_err());
        assert!(Gf::new(3, 0).is_err());
    }

    #[test]
    fn f9_uses_x2_plus_1() {
        let f = Gf::new(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        // i = x, i^2 = -1
        let i = 3u64;
        assert_eq!(f.mul(&i, &i), f.from_i64(-1));
        assert_eq!(f.name(), "3^2");
    }

    #[test]
    fn extension_fields_are_fields() {
        for (p, e) in [(2, 3), (3, 2), (2, 4), (5, 2), (3, 3)] {
            let f = Gf::new(p, e).unwrap();
            let q = f.order();
            for a in 1..q {
                let ai = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &ai), 1, "{p}^{e}: {a}");
                assert_eq!(f.mul_slow(a, ai), 1);
                for b in 0..q {
                    assert_eq!(f.mul(&a, &b), f.mul_slow(a, b));
                    assert_eq!(f.sub(&f.add(&a, &b), &b), a);
                }
            }
            assert_eq!(f.multiplicative_order(&f.primitive_element()), Some(q - 1));
        }
    }

    #[test]
    fn same_spec_same_field() {
        assert_eq!(Gf::new(3, 2).unwrap(), Gf::parse("3^2").unwrap());
        assert_eq!(Gf::parse("11").unwrap(), Gf::prime(11).unwrap());
        assert!(Gf::parse("x").is_err());
    }

    #[test]
    fn large_prime_field() {
        let p = (1u64 << 61) - 1;
        let f = Gf::prime(p).unwrap();
        let a = p - 2;
        assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        assert_eq!(f.from_i64(-3), p - 3);
    }

    #[test]
    fn rational_round_trip() {
        let r = parse_rational("6/-4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("8/4").unwrap()), "2");
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn orders_in_f11() {
        let f = Gf::prime(11).unwrap();
        assert_eq!(f.multiplicative_order(&2), Some(10));
        assert_eq!(f.multiplicative_order(&3), Some(5));
        assert_eq!(f.multiplicative_order(&0), None);
        assert_eq!(f.primitive_element(), 2);
    }
}
