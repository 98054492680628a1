//! Univariate polynomials over GF(2^n) and root finding.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Field, Gf};
use crate::error::{Error, Result};

const SPLIT_ATTEMPTS: u32 = 64;

/// Coefficients low to high, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly(Vec<Gf>);

impl Poly {
    pub fn new(mut c: Vec<Gf>) -> Poly {
        while c.last() == Some(&Gf::ZERO) {
            c.pop();
        }
        Poly(c)
    }

    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    pub fn constant(c: Gf) -> Poly {
        Poly::new(vec![c])
    }

    /// x - c (= x + c).
    pub fn linear(c: Gf) -> Poly {
        Poly::new(vec![c, Gf::ONE])
    }

    pub fn monomial(c: Gf, k: usize) -> Poly {
        let mut v = vec![Gf::ZERO; k + 1];
        v[k] = c;
        Poly::new(v)
    }

    /// Polynomial with GF(2) coefficients given by the bits of `bits`.
    pub fn from_bits(bits: u32) -> Poly {
        Poly::new((0..32).map(|i| Gf((bits >> i & 1) as u16)).collect())
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Gf {
        self.0.get(k).copied().unwrap_or(Gf::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Gf {
        self.0.last().copied().unwrap_or(Gf::ZERO)
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let len = self.0.len().max(o.0.len());
        Poly::new((0..len).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn scale(&self, c: Gf, f: &Field) -> Poly {
        Poly::new(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, o: &Poly, f: &Field) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Gf::ZERO; self.0.len() + o.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in o.0.iter().enumerate() {
                out[i + j] += f.mul(a, b);
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: Gf, f: &Field) -> Gf {
        self.0.iter().rev().fold(Gf::ZERO, |acc, &c| f.mul(acc, x) + c)
    }

    pub fn monic(&self, f: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        self.scale(f.inv(self.lead()), f)
    }

    /// Quotient and remainder. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Poly, f: &Field) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv_lead = f.inv(d.lead());
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![Gf::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = f.mul(r[i], inv_lead);
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c;
            for (j, &dc) in d.0.iter().enumerate() {
                r[i - dd + j] += f.mul(c, dc);
            }
        }
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly, f: &Field) -> Poly {
        self.div_rem(d, f).1
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Poly, f: &Field) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b, f);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    fn mul_mod(&self, o: &Poly, m: &Poly, f: &Field) -> Poly {
        self.mul(o, f).rem(m, f)
    }
}

impl Field {
    /// Distinct roots in this field, sorted by packed value.
    pub fn poly_roots(&self, p: &Poly) -> Result<Vec<Gf>> {
        let deg = p.degree().ok_or(Error::ZeroPolynomial)?;
        if deg == 0 {
            return Ok(Vec::new());
        }
        let p = p.monic(self);
        // gcd(p, x^q - x) collects the distinct linear factors.
        let x = Poly::linear(Gf::ZERO);
        let mut h = x.rem(&p, self);
        for _ in 0..self.n() {
            h = h.mul_mod(&h, &p, self);
        }
        let g = p.gcd(&h.add(&x), self);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ deg as u64);
        let mut roots = Vec::new();
        self.split(&g, &mut rng, &mut roots)?;
        roots.sort();
        Ok(roots)
    }

    fn split(&self, g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Gf>) -> Result<()> {
        match g.degree() {
            None | Some(0) => return Ok(()),
            Some(1) => {
                out.push(g.coeff(0));
                return Ok(());
            }
            _ => {}
        }
        for _ in 0..SPLIT_ATTEMPTS {
            let beta = self.random_unit(rng);
            let mut w = Poly::monomial(beta, 1).rem(g, self);
            let mut acc = w.clone();
            for _ in 1..self.n() {
                w = w.mul_mod(&w, g, self);
                acc = acc.add(&w);
            }
            let d = g.gcd(&acc, self);
            let dd = d.degree().unwrap_or(0);
            if dd > 0 && Some(dd) != g.degree() {
                let (e, _) = g.div_rem(&d, self);
                self.split(&d, rng, out)?;
                return self.split(&e, rng, out);
            }
        }
        Err(Error::RootSplitting(SPLIT_ATTEMPTS))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_roots(p: &Poly, f: &Field) -> Vec<Gf> {
        f.elements().filter(|&x| p.eval(x, f).is_zero()).collect()
    }

    #[test]
    fn zero_polynomial_is_an_error() {
        let f = Field::new(1).unwrap();
        assert!(matches!(f.poly_roots(&Poly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn constant_has_no_roots() {
        let f = Field::new(1).unwrap();
        assert!(f.poly_roots(&Poly::constant(Gf(3))).unwrap().is_empty());
    }

    #[test]
    fn product_of_linears() {
        let f = Field::new(3).unwrap();
        let rs = [Gf(0), Gf(5), Gf(77), Gf(100), Gf(127)];
        let mut p = Poly::constant(Gf(9));
        for &r in &rs {
            p = p.mul(&Poly::linear(r), &f);
            // repeated root
            if r == Gf(77) {
                p = p.mul(&Poly::linear(r), &f);
            }
        }
        assert_eq!(f.poly_roots(&p).unwrap(), rs.to_vec());
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = Field::new(2).unwrap();
        let a = Poly::new((1..9).map(Gf).collect());
        let b = Poly::new(vec![Gf(3), Gf(0), Gf(7)]);
        let (q, r) = a.div_rem(&b, &f);
        assert_eq!(q.mul(&b, &f).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    proptest! {
        #[test]
        fn roots_match_exhaustive_search(m in 1u32..=4, coeffs in prop::collection::vec(any::<u16>(), 1..12)) {
            let f = Field::new(m).unwrap();
            let mask = (f.q() - 1) as u16;
            let p = Poly::new(coeffs.into_iter().map(|c| Gf(c & mask)).collect());
            prop_assume!(!p.is_zero());
            prop_assert_eq!(f.poly_roots(&p).unwrap(), brute_roots(&p, &f));
        }

        #[test]
        fn split_polynomials_recover_roots(m in 1u32..=5, rs in prop::collection::btree_set(any::<u16>(), 1..20)) {
            let f = Field::new(m).unwrap();
            let mask = (f.q() - 1) as u16;
            let rs: std::collections::BTreeSet<Gf> = rs.into_iter().map(|r| Gf(r & mask)).collect();
            let p = rs.iter().fold(Poly::constant(Gf::ONE), |acc, &r| acc.mul(&Poly::linear(r), &f));
            prop_assert_eq!(f.poly_roots(&p).unwrap(), rs.into_iter().collect::<Vec<_>>());
        }
    }
}
