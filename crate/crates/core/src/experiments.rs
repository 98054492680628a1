//! Seeded experiment drivers behind the `check-conjecture` and `bench`
//! commands.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lasvegas;
use crate::linalg::Mat4;
use crate::membership::dlog_nanos;
use crate::membership::solve::{solve_equation, torus_frame, Instance};
use crate::random::PrGenerator;
use crate::recog::{find_conjugator, recognise_conjugate, stabiliser_generators};
use crate::szstd::Sz;

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub m: u32,
    pub q: u32,
    /// Instances handed to the solver.
    pub instances: u64,
    /// Draws refused as degenerate before solving.
    pub rejected: u64,
    /// Instances whose determinant vanished identically.
    pub violations: u64,
    pub violating_instances: Vec<String>,
    /// Instances that needed a secondary consistency polynomial.
    pub fallbacks: u64,
    pub max_degree: usize,
    pub ms: f64,
}

/// Solves `instances` random equation instances built as in the mapping
/// round: random h and torus element a, random ovoid points P and Q, all
/// moved into the eigenbasis of a.
pub fn check_conjecture(m: u32, instances: u64, seed: u64) -> Result<ConjectureReport> {
    let sz = Sz::new(m)?;
    let f = sz.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = Instant::now();
    let mut report = ConjectureReport {
        m,
        q: f.q(),
        instances: 0,
        rejected: 0,
        violations: 0,
        violating_instances: Vec::new(),
        fallbacks: 0,
        max_degree: 0,
        ms: 0.0,
    };
    while report.instances < instances {
        let (g, xi) = torus_frame(&sz, &mut rng);
        let p = sz.ovoid_point(f.random(&mut rng), f.random(&mut rng));
        let q = sz.ovoid_point(f.random(&mut rng), f.random(&mut rng));
        let Ok(inst) = Instance::new(g, p.act(&xi, f), q.act(&xi, f)) else {
            report.rejected += 1;
            continue;
        };
        report.instances += 1;
        match solve_equation(&sz, &inst) {
            Ok(sol) => {
                report.max_degree = report.max_degree.max(sol.degree);
                report.fallbacks += (sol.fallback > 0) as u64;
            }
            Err(Error::ConjectureViolated(d)) => {
                report.violations += 1;
                report.violating_instances.push(d);
            }
            Err(e) => return Err(e),
        }
    }
    report.ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchRow {
    pub m: u32,
    pub q: u32,
    pub op: &'static str,
    pub trials: u64,
    pub mean_ms: f64,
    pub dlog_ms: f64,
}

fn conjugate_copy(sz: &Sz, rng: &mut ChaCha8Rng) -> Vec<Mat4> {
    let f = sz.field();
    let h = Mat4::random_invertible(f, rng);
    sz.generators().iter().map(|g| g.conj(&h, f)).collect()
}

/// Mean wall times for recognising conjugates, finding conjugators and
/// computing stabiliser generating sets of random points. Trial i uses
/// seed `seed + i`.
pub fn bench(m: u32, trials: u64, seed: u64, eps: f64) -> Result<Vec<BenchRow>> {
    let sz = Sz::new(m)?;
    let f = sz.field();
    let mut rows = Vec::new();
    let mut time = |op: &'static str, body: &mut dyn FnMut(u64) -> Result<()>| -> Result<()> {
        let (start, dlog0) = (Instant::now(), dlog_nanos());
        for i in 0..trials {
            body(seed.wrapping_add(i))?;
        }
        let n = trials.max(1) as f64;
        rows.push(BenchRow {
            m,
            q: f.q(),
            op,
            trials,
            mean_ms: start.elapsed().as_secs_f64() * 1e3 / n,
            dlog_ms: (dlog_nanos() - dlog0) as f64 / 1e6 / n,
        });
        Ok(())
    };
    time("recognise_conjugate", &mut |s| {
        let gens = conjugate_copy(&sz, &mut ChaCha8Rng::seed_from_u64(s));
        recognise_conjugate(&sz, &gens)?;
        Ok(())
    })?;
    time("find_conjugator", &mut |s| {
        let gens = conjugate_copy(&sz, &mut ChaCha8Rng::seed_from_u64(s));
        find_conjugator(&sz, &gens, s, eps)?;
        Ok(())
    })?;
    time("stabiliser", &mut |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let p = sz.ovoid_point(f.random(&mut rng), f.random(&mut rng));
        let mut prg = PrGenerator::new(&sz.generators(), s, f)?;
        let budget = lasvegas::rounds_for(eps, 0.5);
        lasvegas::try_run(budget, || stabiliser_generators(&sz, &mut prg, &p, eps))?;
        Ok(())
    })?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjecture_check_is_deterministic() {
        let a = check_conjecture(2, 50, 3).unwrap();
        let b = check_conjecture(2, 50, 3).unwrap();
        assert_eq!(a.instances, 50);
        assert_eq!((a.rejected, a.violations, a.max_degree), (b.rejected, b.violations, b.max_degree));
        assert!(a.max_degree <= 60);
    }

    #[test]
    fn bench_schema() {
        let rows = bench(1, 1, 0, 1e-6).unwrap();
        let ops: Vec<&str> = rows.iter().map(|r| r.op).collect();
        assert_eq!(ops, ["recognise_conjugate", "find_conjugator", "stabiliser"]);
        let v = serde_json::to_value(&rows[0]).unwrap();
        let mut keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        keys.sort();
        assert_eq!(keys, ["dlog_ms", "m", "mean_ms", "op", "q", "trials"]);
    }
}
