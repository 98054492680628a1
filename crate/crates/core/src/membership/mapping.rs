//! Elements mapping one ovoid point to another, and point stabilisers.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

use super::solve::{solve_equation, Instance};
use crate::error::Result;
use crate::lasvegas;
use crate::linalg::{diagonalise_torus, Mat4, ProjPoint};
use crate::random::PrGenerator;
use crate::slp::Word;
use crate::szstd::Sz;

static DLOG_NANOS: AtomicU64 = AtomicU64::new(0);

/// Total time spent in discrete logarithms by this module, in nanoseconds.
pub fn dlog_nanos() -> u64 {
    DLOG_NANOS.load(Ordering::Relaxed)
}

fn timed_dlog(sz: &Sz, base: crate::Gf, x: crate::Gf) -> Option<u64> {
    let start = Instant::now();
    let r = sz.field().discrete_log(base, x).ok().flatten();
    DLOG_NANOS.fetch_add(start.elapsed().as_nanos() as u64, Ordering::Relaxed);
    r
}

/// One round: returns an element z with P·z = Q, or `None`.
pub fn find_mapping_element(
    sz: &Sz,
    prg: &mut PrGenerator,
    p: &ProjPoint,
    q: &ProjPoint,
) -> Result<Option<(Mat4, Word)>> {
    let f = sz.field();
    let (h, wh) = prg.next_element();
    let (a, wa) = prg.next_element();
    if a.is_identity() || !a.pow(f.q() as i64 - 1, f).is_identity() {
        return Ok(None);
    }
    let Ok((x, lambda)) = diagonalise_torus(&a, f) else {
        return Ok(None);
    };
    let xi = x.inverse(f);
    let g = x.mul(&h, f).mul(&xi, f);
    let Ok(inst) = Instance::new(g, p.act(&xi, f), q.act(&xi, f)) else {
        return Ok(None);
    };
    let Ok(sol) = solve_equation(sz, &inst) else {
        return Ok(None);
    };
    for (gamma, delta) in sol.pairs {
        let (Some(l), Some(k)) = (timed_dlog(sz, lambda, gamma), timed_dlog(sz, lambda, delta)) else {
            continue;
        };
        let (l, k) = (l as i64, k as i64);
        let z = a.pow(l, f).mul(&h, f).mul(&a.pow(k, f), f);
        debug_assert_eq!(p.act(&z, f), *q);
        return Ok(Some((z, wa.pow(l).mul(&wh).mul(&wa.pow(k)))));
    }
    Ok(None)
}

/// One round: a random element of the stabiliser of P, or `None`.
pub fn stabiliser_element(sz: &Sz, prg: &mut PrGenerator, p: &ProjPoint) -> Result<Option<(Mat4, Word)>> {
    let f = sz.field();
    let (x, wx) = prg.next_element();
    let q = p.act(&x, f);
    if q == *p {
        return Ok(None);
    }
    Ok(find_mapping_element(sz, prg, &q, p)?.map(|(y, wy)| (x.mul(&y, f), wx.mul(&wy))))
}

pub fn mapping_element(sz: &Sz, prg: &mut PrGenerator, p: &ProjPoint, q: &ProjPoint, eps: f64) -> Result<(Mat4, Word)> {
    lasvegas::try_run(lasvegas::rounds_for(eps, 0.25), || find_mapping_element(sz, prg, p, q))
}

pub fn stabiliser(sz: &Sz, prg: &mut PrGenerator, p: &ProjPoint, eps: f64) -> Result<(Mat4, Word)> {
    lasvegas::try_run(lasvegas::rounds_for(eps, 0.25), || stabiliser_element(sz, prg, p))
}
