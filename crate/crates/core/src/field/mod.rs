//! Arithmetic in GF(2^n) for odd n = 2m + 1.
//!
//! Elements are bit-packed polynomials over GF(2) (bit 0 is the constant
//! term) reduced modulo a fixed primitive polynomial. Multiplication goes
//! through log/exp tables built once per field; the largest supported field
//! has 2048 elements so the tables are small.

mod poly;

pub use poly::Poly;

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};

/// Defining polynomials, indexed by n. All of them are primitive.
pub const MODULI: [(u32, u32); 5] = [
    (3, 0b1011),
    (5, 0b10_0101),
    (7, 0b1000_0011),
    (9, 0b10_0001_0001),
    (11, 0b1000_0000_0101),
];

/// A field element. Only meaningful together with the [`Field`] it came from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

impl std::ops::Add for Gf {
    type Output = Gf;
    #[inline]
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for Gf {
    #[inline]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

/// Carry-less multiply followed by reduction. Slow; used to build the tables
/// and as a reference in tests.
pub fn mul_reference(a: u32, b: u32, modulus: u32, n: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if a >> n & 1 == 1 {
            a ^= modulus;
        }
    }
    acc
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Exact order of an element, given a multiple `n` of it and a predicate
/// telling whether the element raised to `e` is the identity.
pub fn order_from_multiple(n: u64, mut is_one: impl FnMut(u64) -> bool) -> u64 {
    let mut ord = n;
    for p in prime_factors(n) {
        while ord % p == 0 && is_one(ord / p) {
            ord /= p;
        }
    }
    ord
}

#[derive(Clone)]
pub struct Field {
    m: u32,
    n: u32,
    q: u32,
    t: u32,
    modulus: u32,
    generator: Gf,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.n)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(m: u32) -> Result<Field> {
        if !(1..=5).contains(&m) {
            return Err(Error::UnsupportedField(m));
        }
        let n = 2 * m + 1;
        let modulus = MODULI.iter().find(|e| e.0 == n).unwrap().1;
        let q = 1u32 << n;
        let gen = (2..q)
            .find(|&g| {
                order_from_multiple((q - 1) as u64, |e| {
                    pow_reference(g, e, modulus, n) == 1
                }) == (q - 1) as u64
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u16; 2 * (q as usize - 1)];
        let mut log = vec![0u16; q as usize];
        let mut x = 1u32;
        for i in 0..(q - 1) as usize {
            exp[i] = x as u16;
            exp[i + q as usize - 1] = x as u16;
            log[x as usize] = i as u16;
            x = mul_reference(x, gen, modulus, n);
        }
        Ok(Field {
            m,
            n,
            q,
            t: 1 << (m + 1),
            modulus,
            generator: Gf(gen as u16),
            exp,
            log,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// The twist exponent 2^(m+1); t^2 = 2q.
    pub fn t(&self) -> u32 {
        self.t
    }
    pub fn modulus(&self) -> u32 {
        self.modulus
    }
    pub fn generator(&self) -> Gf {
        self.generator
    }

    pub fn elem(&self, v: u32) -> Result<Gf> {
        if v >= self.q {
            return Err(Error::OutOfRange { value: v, n: self.n });
        }
        Ok(Gf(v as u16))
    }

    pub fn elements(&self) -> impl Iterator<Item = Gf> {
        (0..self.q).map(|v| Gf(v as u16))
    }

    pub fn units(&self) -> impl Iterator<Item = Gf> {
        (1..self.q).map(|v| Gf(v as u16))
    }

    #[inline]
    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.0 == 0 || b.0 == 0 {
            return Gf::ZERO;
        }
        Gf(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    pub fn checked_inv(&self, a: Gf) -> Option<Gf> {
        if a.is_zero() {
            return None;
        }
        let l = self.log[a.0 as usize] as usize;
        Some(Gf(self.exp[(self.q as usize - 1 - l) % (self.q as usize - 1)]))
    }

    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: Gf) -> Gf {
        self.checked_inv(a).expect("inverse of zero")
    }

    pub fn div(&self, a: Gf, b: Gf) -> Gf {
        self.mul(a, self.inv(b))
    }

    /// a^e for any integer e; negative exponents require a != 0.
    pub fn pow(&self, a: Gf, e: i64) -> Gf {
        if a.is_zero() {
            assert!(e >= 0, "negative power of zero");
            return if e == 0 { Gf::ONE } else { Gf::ZERO };
        }
        let ord = (self.q - 1) as i64;
        let l = self.log[a.0 as usize] as i64;
        let k = (l * e.rem_euclid(ord)).rem_euclid(ord);
        Gf(self.exp[k as usize])
    }

    pub fn square(&self, a: Gf) -> Gf {
        self.mul(a, a)
    }

    /// a^(2^k).
    pub fn frob(&self, a: Gf, k: u32) -> Gf {
        let k = k % self.n;
        self.pow(a, 1i64 << k)
    }

    /// The field automorphism x -> x^t.
    pub fn twist(&self, a: Gf) -> Gf {
        self.frob(a, self.m + 1)
    }

    pub fn sqrt(&self, a: Gf) -> Gf {
        self.frob(a, self.n - 1)
    }

    /// Absolute trace to GF(2).
    pub fn trace(&self, a: Gf) -> bool {
        let mut acc = Gf::ZERO;
        let mut x = a;
        for _ in 0..self.n {
            acc += x;
            x = self.square(x);
        }
        debug_assert!(acc.0 <= 1);
        acc.0 == 1
    }

    pub fn element_order(&self, a: Gf) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(order_from_multiple((self.q - 1) as u64, |e| {
            self.pow(a, e as i64) == Gf::ONE
        }))
    }

    /// Proper divisors d of n (d < n).
    pub fn proper_subfield_degrees(&self) -> Vec<u32> {
        (1..self.n).filter(|d| self.n % d == 0).collect()
    }

    pub fn in_subfield(&self, a: Gf, d: u32) -> bool {
        self.frob(a, d) == a
    }

    /// True when a nonzero element lies in GF(2^d) for some proper divisor d.
    pub fn in_proper_subfield(&self, a: Gf) -> Result<bool> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self
            .proper_subfield_degrees()
            .into_iter()
            .any(|d| self.pow(a, (1i64 << d) - 1) == Gf::ONE))
    }

    /// Smallest k with 1 <= k <= ord(base) and base^k = target, by
    /// baby-step giant-step over the cyclic group generated by `base`.
    pub fn discrete_log(&self, base: Gf, target: Gf) -> Result<Option<u64>> {
        if base.is_zero() || target.is_zero() {
            return Err(Error::ZeroElement);
        }
        let ord = self.element_order(base)?;
        let step = (ord as f64).sqrt().ceil() as u64;
        let mut table = HashMap::with_capacity(step as usize);
        let mut e = Gf::ONE;
        for j in 0..step {
            table.entry(e).or_insert(j);
            e = self.mul(e, base);
        }
        let giant = self.pow(base, -(step as i64));
        let mut y = target;
        for i in 0..=step {
            if let Some(&j) = table.get(&y) {
                let k = (i * step + j) % ord;
                return Ok(Some(if k == 0 { ord } else { k }));
            }
            y = self.mul(y, giant);
        }
        Ok(None)
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.gen_range(0..self.q) as u16)
    }

    pub fn random_unit<R: Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.gen_range(1..self.q) as u16)
    }

    pub fn hex_width(&self) -> usize {
        self.n.div_ceil(4) as usize
    }

    /// Fixed-width, zero-padded, lowercase. Lexicographic order on the
    /// strings agrees with numeric order on the packed values.
    pub fn to_hex(&self, a: Gf) -> String {
        format!("{:0w$x}", a.0, w = self.hex_width())
    }

    pub fn parse_hex(&self, s: &str) -> Result<Gf> {
        let s = s.trim();
        let s = s.strip_prefix("0x").unwrap_or(s);
        let v = u32::from_str_radix(s, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
        self.elem(v)
    }

    /// The image of `small`'s generator-polynomial root in this field, which
    /// fixes an embedding of `small` as a subfield.
    pub fn subfield_embedding(&self, small: &Field) -> Result<Vec<Gf>> {
        if self.n % small.n != 0 {
            return Err(Error::InvalidArgument(format!(
                "GF(2^{}) is not a subfield of GF(2^{})",
                small.n, self.n
            )));
        }
        let minpoly = Poly::from_bits(small.modulus);
        let root = self.poly_roots(&minpoly)?[0];
        let mut powers = vec![Gf::ONE];
        for _ in 1..small.n {
            powers.push(self.mul(*powers.last().unwrap(), root));
        }
        Ok(small
            .elements()
            .map(|x| {
                (0..small.n)
                    .filter(|i| x.0 >> i & 1 == 1)
                    .fold(Gf::ZERO, |acc, i| acc + powers[i as usize])
            })
            .collect())
    }
}

fn pow_reference(a: u32, mut e: u64, modulus: u32, n: u32) -> u32 {
    let mut base = a;
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_reference(acc, base, modulus, n);
        }
        base = mul_reference(base, base, modulus, n);
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fields() -> Vec<Field> {
        (1..=5).map(|m| Field::new(m).unwrap()).collect()
    }

    #[test]
    fn rejects_unsupported_m() {
        assert!(matches!(Field::new(0), Err(Error::UnsupportedField(0))));
        assert!(matches!(Field::new(6), Err(Error::UnsupportedField(6))));
    }

    #[test]
    fn moduli_are_primitive_with_generator_x() {
        for f in fields() {
            assert_eq!(f.generator(), Gf(2), "n = {}", f.n());
        }
    }

    #[test]
    fn table_mul_matches_reference() {
        for f in fields() {
            let step = if f.q() > 128 { 7 } else { 1 };
            for a in (0..f.q()).step_by(step) {
                for b in (0..f.q()).step_by(step + 2) {
                    assert_eq!(
                        f.mul(Gf(a as u16), Gf(b as u16)).0 as u32,
                        mul_reference(a, b, f.modulus(), f.n())
                    );
                }
            }
        }
    }

    #[test]
    fn twist_squared_is_frobenius() {
        // (x^t)^t = x^(2q) = x^2
        for f in fields() {
            for a in f.elements() {
                assert_eq!(f.twist(f.twist(a)), f.square(a));
            }
        }
    }

    #[test]
    fn twist_on_gf8_example() {
        // In GF(8) = GF(2)[x]/(x^3+x+1), t = 4 and x^4 = x^2 + x.
        let f = Field::new(1).unwrap();
        assert_eq!(f.twist(Gf(0b010)), Gf(0b110));
    }

    #[test]
    fn sqrt_inverts_square() {
        for f in fields() {
            for a in f.elements() {
                assert_eq!(f.square(f.sqrt(a)), a);
            }
        }
    }

    #[test]
    fn trace_is_additive_and_balanced() {
        for f in fields() {
            let ones = f.elements().filter(|&a| f.trace(a)).count();
            assert_eq!(ones as u32, f.q() / 2);
        }
    }

    #[test]
    fn discrete_log_matches_tables() {
        for f in fields() {
            let g = f.generator();
            for a in f.units().step_by(3) {
                let k = f.discrete_log(g, a).unwrap().unwrap();
                assert!(k >= 1 && k <= (f.q() - 1) as u64);
                let expected = f.log[a.0 as usize] as u64;
                let expected = if expected == 0 { (f.q() - 1) as u64 } else { expected };
                assert_eq!(k, expected);
            }
        }
    }

    #[test]
    fn discrete_log_of_one_is_order() {
        let f = Field::new(4).unwrap();
        let lam = f.pow(f.generator(), 73);
        assert_eq!(f.element_order(lam).unwrap(), 7);
        assert_eq!(f.discrete_log(lam, Gf::ONE).unwrap(), Some(7));
        // Outside the subgroup there is no logarithm.
        assert_eq!(f.discrete_log(lam, f.generator()).unwrap(), None);
    }

    #[test]
    fn proper_subfield_membership() {
        let f = Field::new(4).unwrap(); // GF(512) contains GF(8)
        let sub: Vec<Gf> = f.units().filter(|&a| f.in_proper_subfield(a).unwrap()).collect();
        assert_eq!(sub.len(), 7);
        let f = Field::new(3).unwrap(); // GF(128): only GF(2)
        let sub: Vec<Gf> = f.units().filter(|&a| f.in_proper_subfield(a).unwrap()).collect();
        assert_eq!(sub, vec![Gf::ONE]);
    }

    #[test]
    fn subfield_embedding_is_a_ring_map() {
        let big = Field::new(4).unwrap();
        let small = Field::new(1).unwrap();
        let e = big.subfield_embedding(&small).unwrap();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(e[small.mul(a, b).0 as usize], big.mul(e[a.0 as usize], e[b.0 as usize]));
                assert_eq!(e[(a + b).0 as usize], e[a.0 as usize] + e[b.0 as usize]);
            }
        }
    }

    #[test]
    fn hex_round_trip_and_order() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.to_hex(Gf(0x5)), "005");
        let mut all: Vec<String> = f.elements().map(|a| f.to_hex(a)).collect();
        let sorted = {
            let mut s = all.clone();
            s.sort();
            s
        };
        assert_eq!(all, sorted);
        for s in all.drain(..).step_by(11) {
            assert_eq!(f.to_hex(f.parse_hex(&s).unwrap()), s);
        }
        assert!(f.parse_hex("800").is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(m in 1u32..=5, a in any::<u16>(), b in any::<u16>(), c in any::<u16>()) {
            let f = Field::new(m).unwrap();
            let mask = (f.q() - 1) as u16;
            let (a, b, c) = (Gf(a & mask), Gf(b & mask), Gf(c & mask));
            prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
            prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            if !a.is_zero() {
                prop_assert_eq!(f.mul(a, f.inv(a)), Gf::ONE);
                prop_assert_eq!(f.pow(a, (f.q() - 1) as i64), Gf::ONE);
            }
            // twist is additive and multiplicative
            prop_assert_eq!(f.twist(a + b), f.twist(a) + f.twist(b));
            prop_assert_eq!(f.twist(f.mul(a, b)), f.mul(f.twist(a), f.twist(b)));
        }
    }
}
