//! Solving P'·M'(γ)·g·M'(δ) ∝ Q' for (γ, δ).
//!
//! Writing the four coordinates of P'·M'(γ)·g as K, L, M, N, the condition
//! becomes four polynomial identities in α = γ and X = α^t. Treating
//! X, X², X³, X⁴ as independent unknowns gives a 4x4 linear system over
//! GF(q)[α]; Cramer's rule then yields a univariate polynomial whose roots
//! contain every admissible γ.

use std::sync::atomic::{AtomicU64, Ordering};

use super::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::field::{Field, Gf, Poly};
use crate::linalg::eigen::poly_det4;
use crate::linalg::{diagonalise_torus, Mat4, ProjPoint};
use crate::szstd::Sz;

static SOLVES: AtomicU64 = AtomicU64::new(0);
static VANISHING: AtomicU64 = AtomicU64::new(0);
static FALLBACKS: AtomicU64 = AtomicU64::new(0);
static MAX_DEGREE: AtomicU64 = AtomicU64::new(0);
static REJECTED: AtomicU64 = AtomicU64::new(0);

/// Counters over every call to [`solve_equation`] in this process.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct MonitorSnapshot {
    pub solves: u64,
    /// Instances where the system determinant vanished identically.
    pub vanishing_determinant: u64,
    /// Instances where the primary consistency polynomial vanished and a
    /// secondary one was used.
    pub fallbacks: u64,
    pub max_degree: u64,
    /// Instances refused by [`Instance::new`] before reaching the solver.
    pub rejected: u64,
}

pub fn monitor() -> MonitorSnapshot {
    MonitorSnapshot {
        solves: SOLVES.load(Ordering::Relaxed),
        vanishing_determinant: VANISHING.load(Ordering::Relaxed),
        fallbacks: FALLBACKS.load(Ordering::Relaxed),
        max_degree: MAX_DEGREE.load(Ordering::Relaxed),
        rejected: REJECTED.load(Ordering::Relaxed),
    }
}

/// One instance of the equation, after moving into the diagonal basis.
#[derive(Clone, Debug)]
pub struct Instance {
    pub g: Mat4,
    pub p: ProjPoint,
    pub q: ProjPoint,
}

#[derive(Clone, Debug)]
pub struct Elimination {
    pub delta: Poly,
    pub cramer: [Poly; 4],
    pub consistency: Poly,
    /// Index of the consistency polynomial used; 0 is f = Δ·Δ₂ + Δ₁².
    pub fallback: usize,
}

#[derive(Clone, Debug)]
pub struct Solution {
    pub pairs: Vec<(Gf, Gf)>,
    pub degree: usize,
    pub fallback: usize,
}

impl Instance {
    /// Refuses instances where P' or Q' has a zero coordinate, or where g
    /// maps one of the torus fixed points ⟨e1⟩, ⟨e4⟩ onto one of them. In
    /// both cases the system is degenerate and the determinant often
    /// vanishes identically; the caller redraws instead.
    pub fn new(g: Mat4, p: ProjPoint, q: ProjPoint) -> Result<Instance> {
        let reject = |why| {
            REJECTED.fetch_add(1, Ordering::Relaxed);
            Err(Error::DegenerateInstance(why))
        };
        if q.coords().iter().any(|x| x.is_zero()) {
            return reject("target point has a zero coordinate");
        }
        if p.coords().iter().any(|x| x.is_zero()) {
            return reject("source point has a zero coordinate");
        }
        let on_axis = |r: usize, k: usize| (0..4).all(|j| j == k || g.0[r][j].is_zero());
        if on_axis(0, 0) || on_axis(0, 3) || on_axis(3, 0) || on_axis(3, 3) {
            return reject("g moves a torus fixed point to a torus fixed point");
        }
        Ok(Instance { g, p, q })
    }

    fn describe(&self, f: &Field) -> String {
        let pt = |p: &ProjPoint| {
            p.coords().iter().map(|&x| f.to_hex(x)).collect::<Vec<_>>().join(" ")
        };
        format!("g = [{}], P = ({}), Q = ({})", self.g.to_hex_line(f), pt(&self.p), pt(&self.q))
    }

    /// (αX)·(coordinate j of P'·M'(α)·g).
    fn hatted(&self, j: usize, f: &Field) -> Result<BiPoly> {
        let p = self.p.coords();
        let g = &self.g.0;
        let terms = [(2, 2), (2, 1), (0, 1), (0, 0)];
        let mut out = BiPoly::zero();
        for (i, &(a, x)) in terms.iter().enumerate() {
            out = out.add(&BiPoly::monomial(f.mul(p[i], g[i][j]), a, x)?);
        }
        Ok(out)
    }

    fn equations(&self, f: &Field) -> Result<[BiPoly; 4]> {
        let r = self.q.coords();
        let h = (f.t() / 2) as i64;
        let t = f.t() as i64;
        let k = self.hatted(0, f)?;
        let l = self.hatted(1, f)?;
        let m = self.hatted(2, f)?;
        let n = self.hatted(3, f)?;
        let lh = l.half_twist(f)?;
        let mh = m.half_twist(f)?;
        let e1 = n
            .mul(&k, f)?
            .scale(f.mul(r[1], r[2]), f)
            .add(&m.mul(&l, f)?.scale(f.mul(r[0], r[3]), f));
        let e2 = l
            .mul(&lh, f)?
            .scale(f.mul(r[0], f.pow(r[2], h)), f)
            .add(&mh.mul(&k, f)?.scale(f.pow(r[1], 1 + h), f));
        let e3 = n
            .twist(f)?
            .mul(&l, f)?
            .scale(f.pow(r[2], t + 1), f)
            .add(&m.twist(f)?.mul(&m, f)?.scale(f.mul(r[1], f.pow(r[3], t)), f));
        let e4 = n
            .mul(&lh, f)?
            .scale(f.pow(r[2], 1 + h), f)
            .add(&m.mul(&mh, f)?.scale(f.mul(r[3], f.pow(r[1], h)), f))
            .shift_x()?;
        Ok([e1, e2, e3, e4])
    }

    pub fn eliminate(&self, f: &Field) -> Result<Elimination> {
        let e = self.equations(f)?;
        let coeffs: [[Poly; 4]; 4] =
            std::array::from_fn(|i| std::array::from_fn(|k| e[i].x_coeff(k + 1)));
        let rhs: [Poly; 4] = std::array::from_fn(|i| e[i].x_coeff(0));
        let delta = poly_det4(&coeffs, f);
        let cramer: [Poly; 4] = std::array::from_fn(|k| {
            let mut m = coeffs.clone();
            for i in 0..4 {
                m[i][k] = rhs[i].clone();
            }
            poly_det4(&m, f)
        });
        // Cramer gives Δ·X^k = Δ_k at every true α, so each of these vanishes there.
        let candidates = [
            delta.mul(&cramer[1], f).add(&cramer[0].mul(&cramer[0], f)),
            delta.mul(&cramer[3], f).add(&cramer[1].mul(&cramer[1], f)),
            delta.mul(&cramer[2], f).add(&cramer[0].mul(&cramer[1], f)),
            delta.mul(&Poly::monomial(Gf::ONE, f.t() as usize), f).add(&cramer[0]),
        ];
        let idx = candidates.iter().position(|p| !p.is_zero());
        if idx.is_some_and(|i| i > 0) {
            FALLBACKS.fetch_add(1, Ordering::Relaxed);
            log::warn!("primary consistency polynomial vanished: {}", self.describe(f));
        }
        let consistency = idx.map(|i| candidates[i].clone()).unwrap_or_default();
        Ok(Elimination { delta, cramer, consistency, fallback: idx.unwrap_or(0) })
    }
}

/// Draws h and a torus element a of Sz(q) as Algorithm-style rounds do and
/// returns (g, x⁻¹) where x diagonalises a and g = x·h·x⁻¹. Points P, Q of
/// the ovoid become P·x⁻¹, Q·x⁻¹ in this frame.
pub fn torus_frame<R: rand::Rng + ?Sized>(sz: &Sz, rng: &mut R) -> (Mat4, Mat4) {
    let f = sz.field();
    loop {
        let h = sz.random_element(rng);
        let a = sz.random_element(rng);
        if a.is_identity() || !a.pow(f.q() as i64 - 1, f).is_identity() {
            continue;
        }
        let Ok((x, _)) = diagonalise_torus(&a, f) else { continue };
        let xi = x.inverse(f);
        return (x.mul(&h, f).mul(&xi, f), xi);
    }
}

/// All (γ, δ) with P'·M'(γ)·g·M'(δ) ∝ Q'. Fails if the determinant of the
/// linear system vanishes identically.
pub fn solve_equation(sz: &Sz, inst: &Instance) -> Result<Solution> {
    let f = sz.field();
    let elim = inst.eliminate(f)?;
    SOLVES.fetch_add(1, Ordering::Relaxed);
    if elim.delta.is_zero() {
        VANISHING.fetch_add(1, Ordering::Relaxed);
        let d = inst.describe(f);
        log::error!("determinant vanishes identically: {d}");
        return Err(Error::ConjectureViolated(d));
    }
    if elim.consistency.is_zero() {
        return Err(Error::DegenerateInstance("every consistency polynomial vanishes"));
    }
    let degree = elim.consistency.degree().unwrap_or(0);
    MAX_DEGREE.fetch_max(degree as u64, Ordering::Relaxed);
    let mut alphas = f.poly_roots(&elim.consistency)?;
    alphas.extend(f.poly_roots(&elim.delta)?);
    alphas.sort();
    alphas.dedup();

    let r = inst.q.coords();
    let mut pairs = Vec::new();
    for gamma in alphas.into_iter().filter(|a| !a.is_zero()) {
        let v = sz.m_prime(gamma).act(&inst.p.coords(), f);
        let w = inst.g.act(&v, f);
        let (l, m) = (w[1], w[2]);
        if l.is_zero() || m.is_zero() {
            continue;
        }
        let delta = f.sqrt(f.div(f.mul(r[1], m), f.mul(r[2], l)));
        let image = sz.m_prime(delta).act(&w, f);
        if ProjPoint::new(image, f) == Some(inst.q) {
            pairs.push((gamma, delta));
        }
    }
    Ok(Solution { pairs, degree, fallback: elim.fallback })
}
