//! Linear algebra over GF(2^n) for the natural 4-dimensional module.
//!
//! Vectors are rows and matrices act on the right: a point P is moved to
//! P·g. Conjugation is x^y = y⁻¹xy and the commutator is [a, b] = a⁻¹b⁻¹ab.

mod dense;
pub(crate) mod eigen;
mod gf2;
mod module;

pub use dense::{DMat, Subspace};
pub use eigen::{charpoly, diagonalise_torus, eigen_data, torus_pattern};
pub use gf2::{gf2_rank, gf2_solve};
pub use module::{
    enveloping_algebra_dim,
    composition_series, invariant_symplectic_form, is_absolutely_irreducible, module_hom_space,
    symplectic_basis, written_over_subfield,
};

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{order_from_multiple, Field, Gf};
use crate::slp::Group;

pub type Vec4 = [Gf; 4];

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat4(pub [[Gf; 4]; 4]);

impl fmt::Debug for Mat4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{:x} {:x} {:x} {:x}", r[0].0, r[1].0, r[2].0, r[3].0)?;
        }
        f.write_str("]")
    }
}

pub fn dot(u: &Vec4, v: &Vec4, f: &Field) -> Gf {
    (0..4).fold(Gf::ZERO, |acc, i| acc + f.mul(u[i], v[i]))
}

pub fn scale_vec(v: &Vec4, c: Gf, f: &Field) -> Vec4 {
    v.map(|x| f.mul(x, c))
}

pub fn add_vec(u: &Vec4, v: &Vec4) -> Vec4 {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2], u[3] + v[3]]
}

pub fn is_zero_vec(v: &Vec4) -> bool {
    v.iter().all(|x| x.is_zero())
}

impl Mat4 {
    pub const IDENTITY: Mat4 = Mat4([
        [Gf::ONE, Gf::ZERO, Gf::ZERO, Gf::ZERO],
        [Gf::ZERO, Gf::ONE, Gf::ZERO, Gf::ZERO],
        [Gf::ZERO, Gf::ZERO, Gf::ONE, Gf::ZERO],
        [Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ONE],
    ]);
    pub const ZERO: Mat4 = Mat4([[Gf::ZERO; 4]; 4]);
    /// The anti-identity.
    pub const ANTI: Mat4 = Mat4([
        [Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ONE],
        [Gf::ZERO, Gf::ZERO, Gf::ONE, Gf::ZERO],
        [Gf::ZERO, Gf::ONE, Gf::ZERO, Gf::ZERO],
        [Gf::ONE, Gf::ZERO, Gf::ZERO, Gf::ZERO],
    ]);

    pub fn from_fn(mut g: impl FnMut(usize, usize) -> Gf) -> Mat4 {
        let mut m = Mat4::ZERO;
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = g(i, j);
            }
        }
        m
    }

    pub fn diag(d: Vec4) -> Mat4 {
        Mat4::from_fn(|i, j| if i == j { d[i] } else { Gf::ZERO })
    }

    pub fn from_rows(rows: [Vec4; 4]) -> Mat4 {
        Mat4(rows)
    }

    pub fn row(&self, i: usize) -> Vec4 {
        self.0[i]
    }

    pub fn diagonal(&self) -> Vec4 {
        [self.0[0][0], self.0[1][1], self.0[2][2], self.0[3][3]]
    }

    pub fn transpose(&self) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[j][i])
    }

    pub fn add(&self, o: &Mat4) -> Mat4 {
        Mat4::from_fn(|i, j| self.0[i][j] + o.0[i][j])
    }

    pub fn scale(&self, c: Gf, f: &Field) -> Mat4 {
        Mat4::from_fn(|i, j| f.mul(self.0[i][j], c))
    }

    pub fn map(&self, mut g: impl FnMut(Gf) -> Gf) -> Mat4 {
        Mat4::from_fn(|i, j| g(self.0[i][j]))
    }

    /// Entrywise x -> x^(2^k).
    pub fn frob(&self, k: u32, f: &Field) -> Mat4 {
        self.map(|x| f.frob(x, k))
    }

    pub fn mul(&self, o: &Mat4, f: &Field) -> Mat4 {
        Mat4::from_fn(|i, j| {
            (0..4).fold(Gf::ZERO, |acc, k| acc + f.mul(self.0[i][k], o.0[k][j]))
        })
    }

    /// Row vector times matrix.
    pub fn act(&self, v: &Vec4, f: &Field) -> Vec4 {
        let mut out = [Gf::ZERO; 4];
        for (k, &c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += f.mul(c, self.0[k][j]);
            }
        }
        out
    }

    pub fn trace(&self) -> Gf {
        self.0[0][0] + self.0[1][1] + self.0[2][2] + self.0[3][3]
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat4::IDENTITY
    }

    pub fn is_scalar(&self) -> bool {
        let c = self.0[0][0];
        *self == Mat4::diag([c; 4])
    }

    pub fn is_diagonal(&self) -> bool {
        (0..4).all(|i| (0..4).all(|j| i == j || self.0[i][j].is_zero()))
    }

    pub fn det(&self, f: &Field) -> Gf {
        let mut a = self.0;
        let mut det = Gf::ONE;
        for c in 0..4 {
            let Some(p) = (c..4).find(|&r| !a[r][c].is_zero()) else {
                return Gf::ZERO;
            };
            a.swap(c, p);
            det = f.mul(det, a[c][c]);
            let inv = f.inv(a[c][c]);
            for r in c + 1..4 {
                let k = f.mul(a[r][c], inv);
                if k.is_zero() {
                    continue;
                }
                for j in c..4 {
                    let s = f.mul(k, a[c][j]);
                    a[r][j] += s;
                }
            }
        }
        det
    }

    pub fn inv(&self, f: &Field) -> Option<Mat4> {
        let mut a = self.0;
        let mut b = Mat4::IDENTITY.0;
        for c in 0..4 {
            let p = (c..4).find(|&r| !a[r][c].is_zero())?;
            a.swap(c, p);
            b.swap(c, p);
            let inv = f.inv(a[c][c]);
            for j in 0..4 {
                a[c][j] = f.mul(a[c][j], inv);
                b[c][j] = f.mul(b[c][j], inv);
            }
            for r in 0..4 {
                if r == c || a[r][c].is_zero() {
                    continue;
                }
                let k = a[r][c];
                for j in 0..4 {
                    let (x, y) = (f.mul(k, a[c][j]), f.mul(k, b[c][j]));
                    a[r][j] += x;
                    b[r][j] += y;
                }
            }
        }
        Some(Mat4(b))
    }

    /// Panics if singular.
    pub fn inverse(&self, f: &Field) -> Mat4 {
        self.inv(f).expect("singular matrix")
    }

    /// Integer power; negative exponents require invertibility.
    pub fn pow(&self, e: i64, f: &Field) -> Mat4 {
        let base = if e < 0 { self.inverse(f) } else { *self };
        let mut e = e.unsigned_abs();
        let mut b = base;
        let mut acc = Mat4::IDENTITY;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b, f);
            }
            b = b.mul(&b, f);
            e >>= 1;
        }
        acc
    }

    /// x^y = y⁻¹ x y.
    pub fn conj(&self, y: &Mat4, f: &Field) -> Mat4 {
        y.inverse(f).mul(self, f).mul(y, f)
    }

    /// [a, b] = a⁻¹ b⁻¹ a b.
    pub fn comm(a: &Mat4, b: &Mat4, f: &Field) -> Mat4 {
        a.inverse(f).mul(&b.inverse(f), f).mul(a, f).mul(b, f)
    }

    /// Order for an element of a group whose exponent divides `exponent`.
    pub fn order_dividing(&self, exponent: u64, f: &Field) -> Option<u64> {
        if !self.pow(exponent as i64, f).is_identity() {
            return None;
        }
        Some(order_from_multiple(exponent, |e| self.pow(e as i64, f).is_identity()))
    }

    /// Uniform random element of GL(4, q).
    pub fn random_invertible<R: rand::Rng + ?Sized>(f: &Field, rng: &mut R) -> Mat4 {
        loop {
            let m = Mat4::from_fn(|_, _| f.random(rng));
            if !m.det(f).is_zero() {
                return m;
            }
        }
    }

    /// Order by repeated multiplication, up to `limit`.
    pub fn order_naive(&self, limit: u64, f: &Field) -> Option<u64> {
        let mut x = *self;
        for k in 1..=limit {
            if x.is_identity() {
                return Some(k);
            }
            x = x.mul(self, f);
        }
        None
    }

    pub fn to_hex_line(&self, f: &Field) -> String {
        self.0
            .iter()
            .flatten()
            .map(|&x| f.to_hex(x))
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn parse_hex_line(line: &str, f: &Field) -> Result<Mat4> {
        let words: Vec<&str> = line.split_whitespace().collect();
        if words.len() != 16 {
            return Err(Error::Parse(format!("expected 16 entries, found {}", words.len())));
        }
        let mut m = Mat4::ZERO;
        for (k, w) in words.iter().enumerate() {
            m.0[k / 4][k % 4] = f.parse_hex(w)?;
        }
        Ok(m)
    }
}

/// GL(4, q) as a [`Group`] for straight-line program evaluation.
#[derive(Clone, Copy)]
pub struct MatGroup<'a>(pub &'a Field);

impl Group for MatGroup<'_> {
    type Elem = Mat4;
    fn one(&self) -> Mat4 {
        Mat4::IDENTITY
    }
    fn mul(&self, a: &Mat4, b: &Mat4) -> Mat4 {
        a.mul(b, self.0)
    }
    fn inv(&self, a: &Mat4) -> Mat4 {
        a.inverse(self.0)
    }
}

/// A point of projective 3-space, normalised so that its last nonzero
/// coordinate is 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ProjPoint(Vec4);

impl ProjPoint {
    pub const INF: ProjPoint = ProjPoint([Gf::ONE, Gf::ZERO, Gf::ZERO, Gf::ZERO]);
    pub const ZERO: ProjPoint = ProjPoint([Gf::ZERO, Gf::ZERO, Gf::ZERO, Gf::ONE]);

    pub fn new(v: Vec4, f: &Field) -> Option<ProjPoint> {
        let last = *v.iter().rev().find(|x| !x.is_zero())?;
        Some(ProjPoint(scale_vec(&v, f.inv(last), f)))
    }

    pub fn coords(&self) -> Vec4 {
        self.0
    }

    pub fn act(&self, g: &Mat4, f: &Field) -> ProjPoint {
        ProjPoint::new(g.act(&self.0, f), f).expect("matrix is singular")
    }
}
