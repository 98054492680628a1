//! Polynomials in α and X, where X stands for α^t.
//!
//! Only the substitution X = α^t gives these meaning, which is what makes
//! the two Frobenius-like maps below well defined:
//! (c α^j X^k)^t = c^t α^(2k) X^j and, for even j = 2u,
//! (c α^(2u) X^k)^(t/2) = c^(t/2) α^k X^u.

use crate::error::{Error, Result};
use crate::field::{Field, Gf, Poly};

pub const MAX_ALPHA: usize = 80;
pub const MAX_X: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BiPoly {
    /// c[j][k] is the coefficient of α^j X^k.
    c: Vec<[Gf; MAX_X + 1]>,
}

impl BiPoly {
    pub fn zero() -> BiPoly {
        BiPoly { c: Vec::new() }
    }

    pub fn monomial(c: Gf, j: usize, k: usize) -> Result<BiPoly> {
        if j > MAX_ALPHA || k > MAX_X {
            return Err(Error::InvalidArgument(format!("monomial α^{j} X^{k} out of range")));
        }
        let mut p = BiPoly { c: vec![[Gf::ZERO; MAX_X + 1]; j + 1] };
        p.c[j][k] = c;
        p.trim();
        Ok(p)
    }

    fn trim(&mut self) {
        while self.c.last().is_some_and(|r| r.iter().all(|x| x.is_zero())) {
            self.c.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn coeff(&self, j: usize, k: usize) -> Gf {
        self.c.get(j).map_or(Gf::ZERO, |r| r[k])
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, Gf)> + '_ {
        self.c.iter().enumerate().flat_map(|(j, r)| {
            r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, &c)| (j, k, c))
        })
    }

    fn from_terms(terms: impl IntoIterator<Item = (usize, usize, Gf)>) -> Result<BiPoly> {
        let mut p = BiPoly::zero();
        for (j, k, c) in terms {
            if j > MAX_ALPHA || k > MAX_X {
                return Err(Error::InvalidArgument(format!("term α^{j} X^{k} out of range")));
            }
            if p.c.len() <= j {
                p.c.resize(j + 1, [Gf::ZERO; MAX_X + 1]);
            }
            p.c[j][k] += c;
        }
        p.trim();
        Ok(p)
    }

    pub fn add(&self, o: &BiPoly) -> BiPoly {
        BiPoly::from_terms(self.terms().chain(o.terms())).expect("sum stays in range")
    }

    pub fn scale(&self, s: Gf, f: &Field) -> BiPoly {
        BiPoly::from_terms(self.terms().map(|(j, k, c)| (j, k, f.mul(c, s)))).unwrap()
    }

    pub fn mul(&self, o: &BiPoly, f: &Field) -> Result<BiPoly> {
        let mut terms = Vec::new();
        for (j1, k1, c1) in self.terms() {
            for (j2, k2, c2) in o.terms() {
                terms.push((j1 + j2, k1 + k2, f.mul(c1, c2)));
            }
        }
        BiPoly::from_terms(terms)
    }

    /// Image under x -> x^t.
    pub fn twist(&self, f: &Field) -> Result<BiPoly> {
        BiPoly::from_terms(self.terms().map(|(j, k, c)| (2 * k, j, f.twist(c))))
    }

    /// Image under x -> x^(t/2); every α-degree must be even.
    pub fn half_twist(&self, f: &Field) -> Result<BiPoly> {
        let m = f.m();
        let mut out = Vec::new();
        for (j, k, c) in self.terms() {
            if j % 2 == 1 {
                return Err(Error::InvalidArgument("half twist of an odd α-degree".into()));
            }
            out.push((k, j / 2, f.frob(c, m)));
        }
        BiPoly::from_terms(out)
    }

    pub fn shift_x(&self) -> Result<BiPoly> {
        BiPoly::from_terms(self.terms().map(|(j, k, c)| (j, k + 1, c)))
    }

    /// Value at α = a, X = a^t.
    pub fn eval(&self, a: Gf, f: &Field) -> Gf {
        let x = f.twist(a);
        self.terms().fold(Gf::ZERO, |acc, (j, k, c)| {
            acc + f.mul(c, f.mul(f.pow(a, j as i64), f.pow(x, k as i64)))
        })
    }

    /// Coefficient of X^k as a polynomial in α.
    pub fn x_coeff(&self, k: usize) -> Poly {
        Poly::new(self.c.iter().map(|r| r[k]).collect())
    }

    pub fn alpha_degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
}
