//! Exact arithmetic over the two coefficient structures: Z/NZ (N >= 2) and
//! finite fields F_p / GF(p^m).
//!
//! Elements are canonical `u64` encodings. For Z/NZ and F_p the encoding is
//! the residue 0..N-1. For GF(p^m) it is the base-p packing of the
//! coefficient vector, low degree first, so the external letter alphabet is
//! always the integers 0..cardinality-1. Every operation reduces eagerly; an
//! [`Elem`] obtained from a [`Ring`] is always canonical.

use std::fmt;
use std::sync::Arc;

use crate::error::SlError;

/// A canonical ring element. Only meaningful relative to the [`Ring`] that
/// produced it; all arithmetic goes through [`Ring`] methods.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u64);

impl Elem {
    /// The canonical encoded value (residue, or base-p digit packing).
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    IntegersMod {
        n: u64,
        prime: bool,
    },
    PrimeField {
        p: u64,
    },
    ExtensionField {
        p: u64,
        m: u32,
        /// Monic irreducible modulus, coefficients low degree first,
        /// length m+1, reduced mod p.
        modulus: Vec<u64>,
        cardinality: u64,
    },
}

/// A validated coefficient ring: Z/NZ, F_p, or GF(p^m).
///
/// Cheap to clone (the representation is shared); equality and hashing are
/// structural, so two independently constructed rings with the same
/// parameters compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    repr: Arc<Repr>,
}

impl Ring {
    /// The ring Z/NZ, N >= 2.
    pub fn integers_mod(n: u64) -> Result<Ring, SlError> {
        if n < 2 {
            return Err(SlError::InvalidModulus(n));
        }
        Ok(Ring {
            repr: Arc::new(Repr::IntegersMod {
                n,
                prime: is_prime(n),
            }),
        })
    }

    /// The prime field F_p.
    pub fn prime_field(p: u64) -> Result<Ring, SlError> {
        if p < 2 {
            return Err(SlError::InvalidModulus(p));
        }
        if !is_prime(p) {
            return Err(SlError::NotPrime(p));
        }
        Ok(Ring {
            repr: Arc::new(Repr::PrimeField { p }),
        })
    }

    /// The extension field GF(p^m), m >= 2, defined by a monic irreducible
    /// modulus polynomial of degree m (coefficients low degree first,
    /// length m+1). Coefficients are reduced mod p before validation.
    pub fn extension_field(p: u64, m: u32, modulus_poly: &[u64]) -> Result<Ring, SlError> {
        if p < 2 {
            return Err(SlError::InvalidModulus(p));
        }
        if !is_prime(p) {
            return Err(SlError::NotPrime(p));
        }
        if m < 2 {
            return Err(SlError::InvalidPolynomial(format!(
                "extension degree must be at least 2 (got {m})"
            )));
        }
        if modulus_poly.len() != m as usize + 1 {
            return Err(SlError::InvalidPolynomial(format!(
                "need {} coefficients for degree {m}, got {}",
                m + 1,
                modulus_poly.len()
            )));
        }
        let modulus: Vec<u64> = modulus_poly.iter().map(|&c| c % p).collect();
        if modulus[m as usize] != 1 {
            return Err(SlError::InvalidPolynomial(
                "modulus polynomial must be monic".into(),
            ));
        }
        if let Some(d) = reducible_witness_degree(&modulus, p) {
            return Err(SlError::ReduciblePolynomial(d));
        }
        let cardinality = (p as u128)
            .checked_pow(m)
            .filter(|&c| c <= u64::MAX as u128)
            .ok_or(SlError::Overflow)? as u64;
        Ok(Ring {
            repr: Arc::new(Repr::ExtensionField {
                p,
                m,
                modulus,
                cardinality,
            }),
        })
    }

    /// Number of elements: N, p, or p^m.
    pub fn cardinality(&self) -> u64 {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => *n,
            Repr::PrimeField { p } => *p,
            Repr::ExtensionField { cardinality, .. } => *cardinality,
        }
    }

    /// True if every nonzero element is invertible. Z/NZ counts as a field
    /// exactly when N is prime.
    pub fn is_field(&self) -> bool {
        match &*self.repr {
            Repr::IntegersMod { prime, .. } => *prime,
            Repr::PrimeField { .. } | Repr::ExtensionField { .. } => true,
        }
    }

    /// True if the ring was declared as Z/NZ (regardless of N's primality).
    pub fn is_integers_mod(&self) -> bool {
        matches!(&*self.repr, Repr::IntegersMod { .. })
    }

    /// The declared modulus N for Z/NZ rings.
    pub fn modulus(&self) -> Option<u64> {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => Some(*n),
            _ => None,
        }
    }

    /// Strict element constructor: the value must already be canonical.
    pub fn elem(&self, value: u64) -> Result<Elem, SlError> {
        if value < self.cardinality() {
            Ok(Elem(value))
        } else {
            Err(SlError::LetterOutOfRange {
                letter: value,
                cardinality: self.cardinality(),
            })
        }
    }

    /// Element constructor that reduces the value into canonical range.
    pub fn elem_reduced(&self, value: u64) -> Elem {
        Elem(value % self.cardinality())
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1 % self.cardinality())
    }

    /// All elements in canonical order 0, 1, ..., cardinality-1.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.cardinality()).map(Elem)
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => Elem(add_mod(a.0, b.0, *n)),
            Repr::PrimeField { p } => Elem(add_mod(a.0, b.0, *p)),
            Repr::ExtensionField { p, m, .. } => {
                let (x, y) = (self.decode(a, *p, *m), self.decode(b, *p, *m));
                let sum: Vec<u64> = x.iter().zip(&y).map(|(u, v)| add_mod(*u, *v, *p)).collect();
                self.encode(&sum, *p)
            }
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => Elem(neg_mod(a.0, *n)),
            Repr::PrimeField { p } => Elem(neg_mod(a.0, *p)),
            Repr::ExtensionField { p, m, .. } => {
                let x = self.decode(a, *p, *m);
                let neg: Vec<u64> = x.iter().map(|&u| neg_mod(u, *p)).collect();
                self.encode(&neg, *p)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => Elem(mul_mod(a.0, b.0, *n)),
            Repr::PrimeField { p } => Elem(mul_mod(a.0, b.0, *p)),
            Repr::ExtensionField { p, m, modulus, .. } => {
                let (x, y) = (self.decode(a, *p, *m), self.decode(b, *p, *m));
                let mut prod = vec![0u64; 2 * (*m as usize) - 1];
                for (i, &xi) in x.iter().enumerate() {
                    for (j, &yj) in y.iter().enumerate() {
                        prod[i + j] = add_mod(prod[i + j], mul_mod(xi, yj, *p), *p);
                    }
                }
                poly_reduce(&mut prod, modulus, *p);
                self.encode(&prod[..*m as usize], *p)
            }
        }
    }

    /// True iff the element has a multiplicative inverse: gcd(x, N) = 1 in
    /// Z/NZ, nonzero in a field.
    pub fn is_unit(&self, a: Elem) -> bool {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => gcd(a.0, *n) == 1,
            Repr::PrimeField { .. } | Repr::ExtensionField { .. } => a.0 != 0,
        }
    }

    /// Multiplicative inverse, via extended gcd for residues and
    /// exponentiation by cardinality-2 for extension fields.
    pub fn inv(&self, a: Elem) -> Result<Elem, SlError> {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => {
                inv_mod(a.0, *n).map(Elem).ok_or(SlError::NotAUnit(a.0))
            }
            Repr::PrimeField { p } => inv_mod(a.0, *p).map(Elem).ok_or(SlError::NotAUnit(a.0)),
            Repr::ExtensionField { cardinality, .. } => {
                if a.0 == 0 {
                    return Err(SlError::NotAUnit(0));
                }
                Ok(self.pow(a, cardinality - 2))
            }
        }
    }

    fn pow(&self, base: Elem, mut exp: u64) -> Elem {
        let mut acc = self.one();
        let mut base = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Order of the special linear group of degree two over this ring:
    /// q^3 - q for a field with q elements, N^3 * prod(1 - 1/p^2) over the
    /// distinct primes p | N for Z/NZ.
    pub fn sl2_order(&self) -> u128 {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => sl2_order_mod(*n),
            Repr::PrimeField { p } => {
                let q = *p as u128;
                q * q * q - q
            }
            Repr::ExtensionField { cardinality, .. } => {
                let q = *cardinality as u128;
                q * q * q - q
            }
        }
    }

    /// Structural description of the ring, for serialization.
    pub fn describe(&self) -> RingDescription {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => RingDescription::IntegersMod { n: *n },
            Repr::PrimeField { p } => RingDescription::PrimeField { p: *p },
            Repr::ExtensionField { p, m, modulus, .. } => RingDescription::ExtensionField {
                p: *p,
                m: *m,
                modulus: modulus.clone(),
            },
        }
    }

    /// Coefficient vector of an extension-field element, low degree first.
    fn decode(&self, a: Elem, p: u64, m: u32) -> Vec<u64> {
        let mut v = a.0;
        let mut digits = Vec::with_capacity(m as usize);
        for _ in 0..m {
            digits.push(v % p);
            v /= p;
        }
        digits
    }

    fn encode(&self, digits: &[u64], p: u64) -> Elem {
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            v = v * p + d;
        }
        Elem(v)
    }
}

/// The constructor parameters of a [`Ring`], exposed for output layers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingDescription {
    IntegersMod { n: u64 },
    PrimeField { p: u64 },
    ExtensionField { p: u64, m: u32, modulus: Vec<u64> },
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.repr {
            Repr::IntegersMod { n, .. } => write!(f, "Z/{n}Z"),
            Repr::PrimeField { p } => write!(f, "F_{p}"),
            Repr::ExtensionField { p, m, .. } => write!(f, "GF({p}^{m})"),
        }
    }
}

/// |SL2(Z/NZ)| = N^3 * prod over distinct primes p | N of (p^2 - 1) / p^2.
pub(crate) fn sl2_order_mod(n: u64) -> u128 {
    let mut order = (n as u128) * (n as u128) * (n as u128);
    for (p, _) in factorize(n) {
        let p2 = (p as u128) * (p as u128);
        order = order / p2 * (p2 - 1);
    }
    order
}

/// Distinct prime factors with multiplicities, by trial division.
pub(crate) fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut factors = Vec::new();
    let mut d = 2;
    while d as u128 * d as u128 <= n as u128 {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    factors
}

/// Trial-division primality test.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let mut d = 5u64;
    while d as u128 * d as u128 <= n as u128 {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 + b as u128) % n as u128) as u64
}

fn neg_mod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Extended gcd inverse of a mod n; None when gcd(a, n) != 1.
fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some((s0.rem_euclid(n as i128)) as u64)
}

/// In-place remainder of `poly` modulo the monic `modulus`, coefficients mod p.
fn poly_reduce(poly: &mut [u64], modulus: &[u64], p: u64) {
    let m = modulus.len() - 1;
    for i in (m..poly.len()).rev() {
        let lead = poly[i];
        if lead == 0 {
            continue;
        }
        poly[i] = 0;
        for (j, &c) in modulus.iter().take(m).enumerate() {
            let sub = mul_mod(lead, c, p);
            poly[i - m + j] = sub_mod_u(poly[i - m + j], sub, p);
        }
    }
}

fn sub_mod_u(a: u64, b: u64, p: u64) -> u64 {
    add_mod(a, neg_mod(b, p), p)
}

/// Degree of a monic divisor of `poly` over F_p with degree in 1..=deg/2,
/// or None when the polynomial is irreducible. Exhaustive trial division;
/// fine at desk scale.
fn reducible_witness_degree(poly: &[u64], p: u64) -> Option<u32> {
    let deg = poly.len() - 1;
    for d in 1..=(deg / 2) {
        let count = (p as u128).pow(d as u32);
        for idx in 0..count {
            let mut candidate = vec![0u64; d + 1];
            let mut v = idx;
            for c in candidate.iter_mut().take(d) {
                *c = (v % p as u128) as u64;
                v /= p as u128;
            }
            candidate[d] = 1;
            if poly_rem_is_zero(poly, &candidate, p) {
                return Some(d as u32);
            }
        }
    }
    None
}

/// True when the monic `divisor` divides `poly` over F_p.
fn poly_rem_is_zero(poly: &[u64], divisor: &[u64], p: u64) -> bool {
    let mut rem: Vec<u64> = poly.to_vec();
    let d = divisor.len() - 1;
    for i in (d..rem.len()).rev() {
        let lead = rem[i];
        if lead == 0 {
            continue;
        }
        rem[i] = 0;
        for (j, &c) in divisor.iter().take(d).enumerate() {
            rem[i - d + j] = sub_mod_u(rem[i - d + j], mul_mod(lead, c, p), p);
        }
    }
    rem.iter().all(|&c| c == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinalities() {
        assert_eq!(Ring::integers_mod(6).unwrap().cardinality(), 6);
        assert_eq!(Ring::prime_field(3).unwrap().cardinality(), 3);
        // x^2 + x + 1 has no root in F_2: 0+0+1 = 1, 1+1+1 = 1
        assert_eq!(
            Ring::extension_field(2, 2, &[1, 1, 1]).unwrap().cardinality(),
            4
        );
    }

    #[test]
    fn rejects_degenerate_rings() {
        assert_eq!(Ring::integers_mod(1), Err(SlError::InvalidModulus(1)));
        assert_eq!(Ring::integers_mod(0), Err(SlError::InvalidModulus(0)));
        assert_eq!(Ring::prime_field(4), Err(SlError::NotPrime(4)));
        assert_eq!(Ring::prime_field(1), Err(SlError::InvalidModulus(1)));
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^2 + 1 = (x+1)^2 over F_2
        assert_eq!(
            Ring::extension_field(2, 2, &[1, 0, 1]),
            Err(SlError::ReduciblePolynomial(1))
        );
        // x^3 + x^2 + x + 1 = (x+1)(x^2+1) over F_2
        assert_eq!(
            Ring::extension_field(2, 3, &[1, 1, 1, 1]),
            Err(SlError::ReduciblePolynomial(1))
        );
        // degree-4 square of an irreducible quadratic: (x^2+x+1)^2 = x^4+x^2+1 over F_2,
        // caught only by the degree-2 divisor scan
        assert_eq!(
            Ring::extension_field(2, 4, &[1, 0, 1, 0, 1]),
            Err(SlError::ReduciblePolynomial(2))
        );
    }

    #[test]
    fn rejects_malformed_modulus_poly() {
        assert!(matches!(
            Ring::extension_field(2, 2, &[1, 1]),
            Err(SlError::InvalidPolynomial(_))
        ));
        assert!(matches!(
            Ring::extension_field(3, 2, &[1, 0, 2]),
            Err(SlError::InvalidPolynomial(_))
        ));
        assert!(matches!(
            Ring::extension_field(2, 1, &[1, 1]),
            Err(SlError::InvalidPolynomial(_))
        ));
    }

    #[test]
    fn unit_tests_mod_6() {
        let r = Ring::integers_mod(6).unwrap();
        assert!(r.is_unit(r.elem(5).unwrap()));
        assert!(!r.is_unit(r.elem(2).unwrap()));
        assert!(!Ring::prime_field(3).unwrap().is_unit(Elem(0)));
    }

    #[test]
    fn inverses() {
        let z6 = Ring::integers_mod(6).unwrap();
        assert_eq!(z6.inv(z6.one()).unwrap(), z6.one());
        assert_eq!(z6.inv(z6.elem(5).unwrap()).unwrap().value(), 5);
        assert_eq!(z6.inv(z6.elem(2).unwrap()), Err(SlError::NotAUnit(2)));
        let f3 = Ring::prime_field(3).unwrap();
        assert_eq!(f3.inv(f3.elem(2).unwrap()).unwrap().value(), 2);
    }

    #[test]
    fn every_unit_has_two_sided_inverse() {
        for ring in sample_rings() {
            for x in ring.elements() {
                if ring.is_unit(x) {
                    let y = ring.inv(x).unwrap();
                    assert_eq!(ring.mul(x, y), ring.one(), "{ring}: {x}");
                    assert_eq!(ring.mul(y, x), ring.one(), "{ring}: {x}");
                } else {
                    assert!(ring.inv(x).is_err());
                }
            }
        }
    }

    #[test]
    fn unit_count_matches_euler_phi() {
        let phi = phi_sieve(30);
        for n in 2..=30u64 {
            let ring = Ring::integers_mod(n).unwrap();
            let units = ring.elements().filter(|&x| ring.is_unit(x)).count() as u64;
            assert_eq!(units, phi[n as usize], "phi({n})");
        }
    }

    #[test]
    fn fields_have_only_zero_nonunit() {
        for ring in [
            Ring::prime_field(2).unwrap(),
            Ring::prime_field(3).unwrap(),
            Ring::prime_field(5).unwrap(),
            Ring::prime_field(7).unwrap(),
            Ring::extension_field(2, 2, &[1, 1, 1]).unwrap(),
            Ring::extension_field(2, 3, &[1, 1, 0, 1]).unwrap(),
            Ring::extension_field(3, 2, &[1, 0, 1]).unwrap(),
        ] {
            for x in ring.elements() {
                assert_eq!(ring.is_unit(x), x.value() != 0, "{ring}: {x}");
            }
        }
    }

    #[test]
    fn arithmetic_stays_canonical() {
        for ring in sample_rings() {
            let card = ring.cardinality();
            for a in ring.elements() {
                for b in ring.elements() {
                    assert!(ring.add(a, b).value() < card);
                    assert!(ring.sub(a, b).value() < card);
                    assert!(ring.mul(a, b).value() < card);
                    assert!(ring.neg(a).value() < card);
                }
            }
        }
    }

    #[test]
    fn gf4_multiplication_table_spot_checks() {
        // encoding: 2 = x, 3 = x+1 with modulus x^2+x+1
        let gf4 = Ring::extension_field(2, 2, &[1, 1, 1]).unwrap();
        let x = gf4.elem(2).unwrap();
        let x1 = gf4.elem(3).unwrap();
        assert_eq!(gf4.mul(x, x).value(), 3); // x^2 = x+1
        assert_eq!(gf4.mul(x, x1).value(), 1); // x(x+1) = x^2+x = 1
        assert_eq!(gf4.inv(x).unwrap().value(), 3);
        assert_eq!(gf4.mul(x1, x1).value(), 2); // (x+1)^2 = x^2+1 = x
    }

    #[test]
    fn field_axioms_hold_exhaustively_small() {
        for ring in [
            Ring::extension_field(2, 2, &[1, 1, 1]).unwrap(),
            Ring::extension_field(3, 2, &[1, 0, 1]).unwrap(),
        ] {
            for a in ring.elements() {
                for b in ring.elements() {
                    assert_eq!(ring.mul(a, b), ring.mul(b, a));
                    for c in ring.elements() {
                        assert_eq!(
                            ring.mul(a, ring.add(b, c)),
                            ring.add(ring.mul(a, b), ring.mul(a, c))
                        );
                        assert_eq!(ring.mul(ring.mul(a, b), c), ring.mul(a, ring.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn strict_elem_rejects_out_of_range() {
        let f3 = Ring::prime_field(3).unwrap();
        assert_eq!(
            f3.elem(3),
            Err(SlError::LetterOutOfRange {
                letter: 3,
                cardinality: 3
            })
        );
        assert_eq!(f3.elem_reduced(7).value(), 1);
    }

    #[test]
    fn sl2_orders() {
        assert_eq!(Ring::integers_mod(2).unwrap().sl2_order(), 6);
        assert_eq!(Ring::integers_mod(3).unwrap().sl2_order(), 24);
        assert_eq!(Ring::integers_mod(6).unwrap().sl2_order(), 144);
        assert_eq!(Ring::prime_field(5).unwrap().sl2_order(), 120);
        assert_eq!(
            Ring::extension_field(2, 2, &[1, 1, 1]).unwrap().sl2_order(),
            60
        );
    }

    fn sample_rings() -> Vec<Ring> {
        vec![
            Ring::integers_mod(2).unwrap(),
            Ring::integers_mod(6).unwrap(),
            Ring::integers_mod(12).unwrap(),
            Ring::prime_field(3).unwrap(),
            Ring::prime_field(7).unwrap(),
            Ring::extension_field(2, 2, &[1, 1, 1]).unwrap(),
            Ring::extension_field(2, 3, &[1, 1, 0, 1]).unwrap(),
            Ring::extension_field(3, 2, &[1, 0, 1]).unwrap(),
        ]
    }

    /// Sieve of smallest prime factors; classic Euler phi oracle.
    fn phi_sieve(limit: usize) -> Vec<u64> {
        let mut phi: Vec<u64> = (0..=limit as u64).collect();
        for i in 2..=limit {
            if phi[i] == i as u64 {
                let mut j = i;
                while j <= limit {
                    phi[j] -= phi[j] / i as u64;
                    j += i;
                }
            }
        }
        phi
    }
}
