//! The standard copy of Sz(q) inside Sp(4, q).
//!
//! The group preserves the alternating form with Gram matrix J (the
//! anti-identity) and acts doubly transitively on the ovoid
//! {P∞} ∪ {(ab + a^(t+2) + b^t : b : a : 1)}. Its Borel subgroup is the set of
//! products S(a, b)·M(c), lower triangular with respect to the basis used
//! here, and the Weyl element is T = J.

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Gf};
use crate::linalg::{module_hom_space, Mat4, ProjPoint, Vec4};

/// Basis positions {12, 13, 24, 34} inside Λ² of the natural module.
const WEDGE: [(usize, usize); 4] = [(0, 1), (0, 2), (1, 3), (2, 3)];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Decoy {
    /// Point stabiliser ⟨S(1,0), M(c₀)⟩.
    Stabiliser,
    /// Normaliser of the diagonal torus ⟨M(c₀), T⟩.
    TorusNormaliser,
    /// The subfield subgroup Sz(2) = ⟨S(1,0), T⟩.
    Subfield,
    /// Normaliser of a cyclic subgroup of order q + t + 1.
    HallPlus,
    /// Normaliser of a cyclic subgroup of order q - t + 1.
    HallMinus,
}

impl std::str::FromStr for Decoy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Decoy> {
        Ok(match s {
            "stabiliser" | "stabilizer" => Decoy::Stabiliser,
            "torus-normaliser" | "torus-normalizer" => Decoy::TorusNormaliser,
            "subfield" => Decoy::Subfield,
            "hall-plus" => Decoy::HallPlus,
            "hall-minus" => Decoy::HallMinus,
            _ => return Err(Error::InvalidArgument(format!("unknown decoy {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct Sz {
    field: Field,
    c0: Gf,
    psi_c: Mat4,
    psi_c_inv: Mat4,
}

impl Sz {
    pub fn new(m: u32) -> Result<Sz> {
        let field = Field::new(m)?;
        let c0 = field.generator();
        let mut sz = Sz { field, c0, psi_c: Mat4::IDENTITY, psi_c_inv: Mat4::IDENTITY };
        let gens = [sz.s(Gf::ONE, Gf::ZERO), sz.s(Gf::ZERO, Gf::ONE), sz.m(c0), Mat4::ANTI];
        let images: Vec<Mat4> = gens.iter().map(|g| sz.psi_raw(g)).collect();
        let homs = module_hom_space(&images, &gens, &sz.field);
        if homs.len() != 1 {
            return Err(Error::Calibration(homs.len()));
        }
        sz.psi_c = homs[0];
        sz.psi_c_inv = homs[0].inv(&sz.field).ok_or(Error::Calibration(0))?;
        Ok(sz)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }
    pub fn q(&self) -> u32 {
        self.field.q()
    }
    pub fn t(&self) -> u32 {
        self.field.t()
    }

    /// The calibration matrix C of Ψ(g) = C⁻¹·F(A(g))·C.
    pub fn psi_calibration(&self) -> Mat4 {
        self.psi_c
    }

    /// Primitive element used in the standard generators.
    pub fn c0(&self) -> Gf {
        self.c0
    }

    pub fn s(&self, a: Gf, b: Gf) -> Mat4 {
        let f = &self.field;
        let t = f.t() as i64;
        let (z, o) = (Gf::ZERO, Gf::ONE);
        let last = f.pow(a, t + 2) + f.mul(a, b) + f.twist(b);
        Mat4([
            [o, z, z, z],
            [a, o, z, z],
            [b, f.twist(a), o, z],
            [last, f.pow(a, t + 1) + b, a, o],
        ])
    }

    /// Parameters (a, b) of an element known to be of the form S(a, b).
    pub fn s_params(&self, g: &Mat4) -> (Gf, Gf) {
        (g.0[1][0], g.0[2][0])
    }

    /// M(c) = diag(c^(1+2^m), c^(2^m), c^(-2^m), c^(-1-2^m)).
    pub fn m(&self, c: Gf) -> Mat4 {
        let f = &self.field;
        let h = 1i64 << f.m();
        Mat4::diag([f.pow(c, 1 + h), f.pow(c, h), f.pow(c, -h), f.pow(c, -1 - h)])
    }

    /// M'(λ) = diag(λ^(t+1), λ, λ⁻¹, λ^(-t-1)); equal to M(λ^t).
    pub fn m_prime(&self, lambda: Gf) -> Mat4 {
        Mat4::diag(crate::linalg::eigen::torus_pattern(lambda, &self.field))
    }

    pub fn generators(&self) -> Vec<Mat4> {
        vec![self.s(Gf::ONE, Gf::ZERO), self.m(self.c0), Mat4::ANTI]
    }

    pub fn ovoid_point(&self, a: Gf, b: Gf) -> ProjPoint {
        let f = &self.field;
        let x0 = f.mul(a, b) + f.pow(a, f.t() as i64 + 2) + f.twist(b);
        ProjPoint::new([x0, b, a, Gf::ONE], f).unwrap()
    }

    pub fn is_ovoid_point(&self, p: &ProjPoint) -> bool {
        let c = p.coords();
        if c[3].is_zero() {
            return *p == ProjPoint::INF;
        }
        *p == self.ovoid_point(c[2], c[1])
    }

    /// All q² + 1 ovoid points.
    pub fn ovoid(&self) -> Vec<ProjPoint> {
        let f = &self.field;
        let mut out = vec![ProjPoint::INF];
        for a in f.elements() {
            for b in f.elements() {
                out.push(self.ovoid_point(a, b));
            }
        }
        out
    }

    /// The submatrix of Λ²g on the basis positions 12, 13, 24, 34.
    pub fn wedge_block(&self, g: &Mat4) -> Mat4 {
        let f = &self.field;
        Mat4::from_fn(|r, c| {
            let (i, j) = WEDGE[r];
            let (k, l) = WEDGE[c];
            f.mul(g.0[i][k], g.0[j][l]) + f.mul(g.0[i][l], g.0[j][k])
        })
    }

    fn psi_raw(&self, g: &Mat4) -> Mat4 {
        self.wedge_block(g).frob(self.field.m(), &self.field)
    }

    /// The endomorphism of Sp(4, q) whose fixed points are Sz(q).
    pub fn psi(&self, g: &Mat4) -> Mat4 {
        let f = &self.field;
        self.psi_c_inv.mul(&self.psi_raw(g), f).mul(&self.psi_c, f)
    }

    /// The graph endomorphism π with Ψ = F^m ∘ π, where F is entrywise
    /// squaring. π∘π = F, so Ψ∘Ψ is the identity on Sp(4, q).
    pub fn graph_map(&self, g: &Mat4) -> Mat4 {
        self.psi(g).frob(self.field.m() + 1, &self.field)
    }

    pub fn preserves_form(&self, g: &Mat4) -> bool {
        let f = &self.field;
        g.mul(&Mat4::ANTI, f).mul(&g.transpose(), f) == Mat4::ANTI
    }

    pub fn is_member(&self, g: &Mat4) -> bool {
        g.det(&self.field) == Gf::ONE && self.preserves_form(g) && self.psi(g) == *g
    }

    /// Least common multiple of the element orders of Sz(q).
    pub fn exponent(&self) -> u64 {
        let (q, t) = (self.q() as u64, self.t() as u64);
        // the four factors are pairwise coprime
        4 * (q - 1) * (q + t + 1) * (q - t + 1)
    }

    /// Order of a group element (None if g is not in a group of this exponent).
    pub fn order(&self, g: &Mat4) -> Option<u64> {
        g.order_dividing(self.exponent(), &self.field)
    }

    /// Uniform random element, via the Bruhat decomposition
    /// Sz = B ∪ B·T·F with B = F·H.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat4 {
        let f = &self.field;
        let q2 = (self.q() as u64).pow(2);
        let b = self
            .s(f.random(rng), f.random(rng))
            .mul(&self.m(f.random_unit(rng)), f);
        if rng.gen_range(0..q2 + 1) == 0 {
            return b;
        }
        b.mul(&Mat4::ANTI, f).mul(&self.s(f.random(rng), f.random(rng)), f)
    }

    /// Every element of the group. Only for q = 8.
    pub fn enumerate(&self) -> Result<Vec<Mat4>> {
        if self.q() > 8 {
            return Err(Error::InvalidArgument("enumeration is limited to q = 8".into()));
        }
        let f = &self.field;
        let mut borel = Vec::new();
        for a in f.elements() {
            for b in f.elements() {
                for c in f.units() {
                    borel.push(self.s(a, b).mul(&self.m(c), f));
                }
            }
        }
        let mut out = borel.clone();
        for x in &borel {
            let xt = x.mul(&Mat4::ANTI, f);
            for a in f.elements() {
                for b in f.elements() {
                    out.push(xt.mul(&self.s(a, b), f));
                }
            }
        }
        Ok(out)
    }

    /// Ovoid points fixed by g. Intended for non-identity g.
    pub fn fixed_ovoid_points(&self, g: &Mat4) -> Result<Vec<ProjPoint>> {
        let f = &self.field;
        let mut out = Vec::new();
        for (_, space) in crate::linalg::eigen_data(g, f)? {
            for p in projective_points(space.basis(), f) {
                if self.is_ovoid_point(&p) {
                    out.push(p);
                }
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn decoy_generators<R: Rng + ?Sized>(&self, kind: Decoy, rng: &mut R) -> Result<Vec<Mat4>> {
        let f = &self.field;
        Ok(match kind {
            Decoy::Stabiliser => vec![self.s(Gf::ONE, Gf::ZERO), self.m(self.c0)],
            Decoy::TorusNormaliser => vec![self.m(self.c0), Mat4::ANTI],
            Decoy::Subfield => vec![self.s(Gf::ONE, Gf::ZERO), Mat4::ANTI],
            Decoy::HallPlus | Decoy::HallMinus => {
                let (q, t) = (self.q() as u64, self.t() as u64);
                let k = if kind == Decoy::HallPlus { q + t + 1 } else { q - t + 1 };
                let u = loop {
                    let u = self.random_element(rng);
                    if self.order(&u) == Some(k) {
                        break u;
                    }
                };
                let uq = u.pow(q as i64, f);
                let space = module_hom_space(&[u], &[uq], f);
                let x = loop {
                    let x = space
                        .iter()
                        .fold(Mat4::ZERO, |acc, b| acc.add(&b.scale(f.random(rng), f)));
                    let Some(x) = normalise_to_sz(self, &x) else { continue };
                    break x;
                };
                vec![u, x]
            }
        })
    }
}

/// If some scalar multiple of x lies in Sz(q), returns it.
fn normalise_to_sz(sz: &Sz, x: &Mat4) -> Option<Mat4> {
    let f = sz.field();
    let d = x.det(f);
    if d.is_zero() {
        return None;
    }
    // det(cx) = c⁴ det x, and fourth roots are unique in characteristic 2.
    let c = f.inv(f.sqrt(f.sqrt(d)));
    let y = x.scale(c, f);
    sz.is_member(&y).then_some(y)
}

/// Normalised projective points of the span of `basis`.
pub fn projective_points(basis: &[Vec4], f: &Field) -> Vec<ProjPoint> {
    let k = basis.len();
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let q = f.q() as usize;
    // coefficient vectors with last nonzero coefficient 1
    for lead in 0..k {
        let count = q.pow(lead as u32);
        for idx in 0..count {
            let mut v = basis[lead];
            let mut r = idx;
            for b in basis.iter().take(lead) {
                let c = Gf((r % q) as u16);
                r /= q;
                v = crate::linalg::add_vec(&v, &crate::linalg::scale_vec(b, c, f));
            }
            if let Some(p) = ProjPoint::new(v, f) {
                out.push(p);
            }
        }
    }
    out
}
