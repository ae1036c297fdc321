use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use super::{prime_power, Field, FieldDescriptor, PrimeField};
use crate::error::{Error, Result};

/// Largest supported field size; arithmetic is table driven.
pub const MAX_Q: u64 = 1024;

/// An element of F_q, stored as the base-p digits of its coordinate vector
/// in the power basis `1, x, ..., x^{r-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fq(pub u16);

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Fq({})", self.0)
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// The field F_q with q = p^r, realized as F_p[x]/(f) for a fixed primitive
/// polynomial f.
///
/// The basis `v_1 = 1, v_2 = x, ..., v_r = x^{r-1}` is the one used by the
/// generator sets of both group models.
#[derive(Clone)]
pub struct FqConfig {
    p: u64,
    r: u32,
    q: u64,
    /// Coefficients of the monic modulus, constant term first, length r+1.
    modulus: Vec<u64>,
    tables: Arc<Tables>,
}

impl fmt::Debug for FqConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqConfig")
            .field("p", &self.p)
            .field("r", &self.r)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FqConfig {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.r == other.r && self.modulus == other.modulus
    }
}

impl Eq for FqConfig {}

impl FqConfig {
    /// Builds F_q for a prime power q, choosing the smallest primitive modulus.
    pub fn new(q: u64) -> Result<Self> {
        let (p, r) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        if q > MAX_Q {
            return Err(Error::InvalidField(format!("q = {q} exceeds the supported maximum {MAX_Q}")));
        }
        let modulus = smallest_primitive_modulus(p, r);
        Ok(Self::with_modulus(p, r, modulus))
    }

    fn with_modulus(p: u64, r: u32, modulus: Vec<u64>) -> Self {
        let q = p.pow(r);
        let n = q as usize;
        let digits: Vec<Vec<u64>> = (0..q).map(|i| to_digits(i, p, r)).collect();
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u64> = digits[a].iter().zip(&digits[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = from_digits(&s, p) as u16;
                mul[a * n + b] = from_digits(&poly_mul_mod(&digits[a], &digits[b], &modulus, p), p) as u16;
            }
        }
        let mut neg = vec![0u16; n];
        let mut inv = vec![0u16; n];
        for a in 0..n {
            neg[a] = (0..n).find(|&b| add[a * n + b] == 0).unwrap() as u16;
            if a != 0 {
                inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u16;
            }
        }
        Self { p, r, q, modulus, tables: Arc::new(Tables { add, mul, neg, inv }) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// `v_l` for `1 <= l <= r`, i.e. `x^{l-1}`.
    pub fn basis(&self) -> Vec<Fq> {
        (0..self.r).map(|i| Fq(self.p.pow(i) as u16)).collect()
    }

    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(|i| Fq(i as u16))
    }

    /// The element `x`, a generator of the multiplicative group.
    pub fn primitive_element(&self) -> Fq {
        if self.r == 1 {
            // root of x + c_0
            Fq(((self.p - self.modulus[0]) % self.p) as u16)
        } else {
            Fq(self.p as u16)
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fq {
        Fq(v.rem_euclid(self.p as i64) as u16)
    }

    /// Coordinates of `a` in the basis `v_1, ..., v_r`.
    pub fn coordinates(&self, a: Fq) -> Vec<u64> {
        to_digits(a.0 as u64, self.p, self.r)
    }

    pub fn prime_subfield(&self) -> PrimeField {
        PrimeField::new(self.p).expect("p is prime")
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.tables.add[a.0 as usize * self.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        Fq(self.tables.mul[a.0 as usize * self.q as usize + b.0 as usize])
    }
    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        Fq(self.tables.neg[a.0 as usize])
    }
    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        self.add(a, self.neg(b))
    }
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        (a.0 != 0).then(|| Fq(self.tables.inv[a.0 as usize]))
    }
    pub fn pow(&self, a: Fq, mut e: u64) -> Fq {
        let mut acc = Fq(1);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

impl Field for FqConfig {
    type Elem = Fq;

    fn zero(&self) -> Fq {
        Fq(0)
    }
    fn one(&self) -> Fq {
        Fq(1)
    }
    fn from_i64(&self, v: i64) -> Fq {
        self.from_int(v)
    }
    fn add(&self, a: &Fq, b: &Fq) -> Fq {
        FqConfig::add(self, *a, *b)
    }
    fn sub(&self, a: &Fq, b: &Fq) -> Fq {
        FqConfig::sub(self, *a, *b)
    }
    fn mul(&self, a: &Fq, b: &Fq) -> Fq {
        FqConfig::mul(self, *a, *b)
    }
    fn neg(&self, a: &Fq) -> Fq {
        FqConfig::neg(self, *a)
    }
    fn inv(&self, a: &Fq) -> Option<Fq> {
        FqConfig::inv(self, *a)
    }
    fn is_zero(&self, a: &Fq) -> bool {
        a.0 == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn from_rational(&self, r: &BigRational) -> Option<Fq> {
        self.prime_subfield().from_rational(r).map(|v| Fq(v as u16))
    }
    fn descriptor(&self) -> FieldDescriptor {
        if self.r == 1 {
            FieldDescriptor::Prime { p: self.p }
        } else {
            FieldDescriptor::Extension { p: self.p, r: self.r }
        }
    }
    /// Coordinates in the basis `v_1, ..., v_r`, e.g. `[2,1]`.
    fn display(&self, a: &Fq) -> String {
        if self.r == 1 {
            a.0.to_string()
        } else {
            format!("{:?}", self.coordinates(*a))
        }
    }
}

fn to_digits(mut i: u64, p: u64, r: u32) -> Vec<u64> {
    (0..r)
        .map(|_| {
            let d = i % p;
            i /= p;
            d
        })
        .collect()
}

fn from_digits(d: &[u64], p: u64) -> u64 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Product of two polynomials of degree < r reduced modulo the monic `modulus`.
fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let r = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * r];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for deg in (r..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (k, m) in modulus[..r].iter().enumerate() {
            let idx = deg - r + k;
            prod[idx] = (prod[idx] + (p - c) * m) % p;
        }
    }
    prod.truncate(r);
    prod
}

/// First monic polynomial of degree r (ordered by the base-p value of its
/// lower coefficients) for which x has multiplicative order p^r - 1.
fn smallest_primitive_modulus(p: u64, r: u32) -> Vec<u64> {
    let q = p.pow(r);
    let group_order = q - 1;
    let prime_factors: Vec<u64> = (2..=group_order).filter(|&d| group_order % d == 0 && super::is_prime(d)).collect();
    for lower in 0..q {
        let mut modulus = to_digits(lower, p, r);
        if modulus[0] == 0 {
            continue;
        }
        modulus.push(1);
        let x = if r == 1 { vec![(p - modulus[0]) % p] } else { to_digits(p, p, r) };
        let pow = |e: u64| {
            let mut acc = to_digits(1, p, r);
            let mut base = x.clone();
            let mut e = e;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mul_mod(&acc, &base, &modulus, p);
                }
                base = poly_mul_mod(&base, &base, &modulus, p);
                e >>= 1;
            }
            acc
        };
        let one = to_digits(1, p, r);
        if pow(group_order) == one && prime_factors.iter().all(|f| pow(group_order / f) != one) {
            return modulus;
        }
    }
    unreachable!("primitive polynomials exist for every prime power")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FqConfig) {
        let elems: Vec<Fq> = f.elements().collect();
        for &a in &elems {
            assert_eq!(f.add(a, Fq(0)), a);
            assert_eq!(f.mul(a, Fq(1)), a);
            assert_eq!(f.add(a, f.neg(a)), Fq(0));
            if a != Fq(0) {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq(1));
            }
            for &b in &elems {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &elems {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 8, 9] {
            check_axioms(&FqConfig::new(q).unwrap());
        }
    }

    #[test]
    fn basis_starts_with_one() {
        let f = FqConfig::new(25).unwrap();
        let basis = f.basis();
        assert_eq!(basis, vec![Fq(1), Fq(5)]);
        assert_eq!(f.coordinates(Fq(7)), vec![2, 1]);
    }

    #[test]
    fn primitive_element_generates() {
        for q in [2, 3, 4, 5, 7, 9, 25, 27] {
            let f = FqConfig::new(q).unwrap();
            let g = f.primitive_element();
            let mut seen = std::collections::HashSet::new();
            let mut x = Fq(1);
            for _ in 0..q - 1 {
                seen.insert(x);
                x = f.mul(x, g);
            }
            assert_eq!(seen.len() as u64, q - 1, "q = {q}");
        }
    }

    #[test]
    fn modulus_for_f4() {
        let f = FqConfig::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FqConfig::new(6).is_err());
        assert!(FqConfig::new(0).is_err());
        assert!(FqConfig::new(2048).is_err());
    }
}
