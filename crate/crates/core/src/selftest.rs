//! Counting identities for Sz(8), checked by brute force over the whole
//! group.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::field::Gf;
use crate::linalg::{Mat4, ProjPoint};
use crate::szstd::{projective_points, Sz};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, expected: impl ToString, observed: impl ToString) -> Check {
        let (expected, observed) = (expected.to_string(), observed.to_string());
        let pass = expected == observed;
        Check { name, expected, observed, pass }
    }
}

/// Closure of a generating set under right multiplication by generators.
pub fn closure(gens: &[Mat4], sz: &Sz) -> Vec<Mat4> {
    let f = sz.field();
    let mut seen: HashSet<Mat4> = HashSet::from([Mat4::IDENTITY]);
    let mut queue = VecDeque::from([Mat4::IDENTITY]);
    let mut out = Vec::new();
    while let Some(x) = queue.pop_front() {
        out.push(x);
        for g in gens {
            let y = x.mul(g, f);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    out
}

fn all_points(sz: &Sz) -> Vec<ProjPoint> {
    projective_points(&Mat4::IDENTITY.0, sz.field())
}

/// Runs every identity at q = 8. `seed` drives the random choices in the
/// double coset check.
pub fn run(seed: u64) -> Result<Vec<Check>> {
    let sz = Sz::new(1)?;
    let f = sz.field();
    let q = f.q() as u64;
    let mut out = Vec::new();

    let group = closure(&sz.generators(), &sz);
    out.push(Check::new("group order (q^2+1) q^2 (q-1)", (q * q + 1) * q * q * (q - 1), group.len()));
    let members = group.iter().filter(|g| sz.is_member(g)).count();
    out.push(Check::new("closure lies in the standard copy", group.len(), members));

    let ovoid: Vec<ProjPoint> = all_points(&sz).into_iter().filter(|p| sz.is_ovoid_point(p)).collect();
    out.push(Check::new("ovoid size q^2+1", q * q + 1, ovoid.len()));
    let orbit: HashSet<ProjPoint> = group.iter().map(|g| ProjPoint::INF.act(g, f)).collect();
    out.push(Check::new("orbit of P_inf is the ovoid", true, orbit == ovoid.iter().copied().collect()));

    let stab: Vec<Mat4> = group.iter().filter(|g| ProjPoint::INF.act(g, f) == ProjPoint::INF).copied().collect();
    let stab_orbit: HashSet<ProjPoint> = stab.iter().map(|g| ProjPoint::ZERO.act(g, f)).collect();
    out.push(Check::new("point stabiliser transitive on the other points", q * q, stab_orbit.len()));

    let orders: Vec<u64> = group.iter().map(|g| g.order_naive(1000, f).unwrap_or(0)).collect();
    let phi = (1..q - 1).filter(|k| gcd(*k, q - 1) == 1).count() as u64;
    out.push(Check::new(
        "elements of order q-1, phi(q-1) q^2 (q^2+1) / 2",
        phi * q * q * (q * q + 1) / 2,
        orders.iter().filter(|&&o| o == q - 1).count(),
    ));

    let fixing = group.iter().filter(|g| ovoid.iter().any(|p| p.act(g, f) == *p)).count();
    out.push(Check::new("elements fixing an ovoid point, q^2 (q-1) (q^2+q+2) / 2", q * q * (q - 1) * (q * q + q + 2) / 2, fixing));

    // FH is the stabiliser of P_inf
    let mut order4 = 0u64;
    for a in &stab {
        for b in &stab {
            let c = Mat4::comm(a, b, f);
            if !c.pow(2, f).is_identity() {
                order4 += 1;
            }
        }
    }
    let pairs = (stab.len() * stab.len()) as u64;
    out.push(Check::new("commutators of order 4 in FH x FH, 6/7 of pairs", pairs / 7 * 6, order4));

    let torus: Vec<Mat4> = f.units().map(|l| sz.m_prime(l)).collect();
    let torus_set: HashSet<Mat4> = torus.iter().copied().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sizes = Vec::new();
    while sizes.len() < 20 {
        let g = sz.random_element(&mut rng);
        let gi = g.inverse(f);
        if torus.iter().all(|h| torus_set.contains(&gi.mul(h, f).mul(&g, f))) {
            continue;
        }
        let coset: HashSet<Mat4> = torus
            .iter()
            .flat_map(|a| torus.iter().map(move |b| (a, b)))
            .map(|(a, b)| a.mul(&g, f).mul(b, f))
            .collect();
        sizes.push(coset.len());
    }
    out.push(Check::new("|HgH| = (q-1)^2 for 20 g outside N(H)", format!("{:?}", [(q - 1).pow(2) as usize; 20]), format!("{sizes:?}")));

    let (classes, traces_distinct) = odd_order_classes(&sz, &group, &orders);
    out.push(Check::new("classes of non-identity odd-order elements", q - 1, classes));
    out.push(Check::new("odd-order classes have distinct traces", true, traces_distinct));

    let even_traces = group
        .iter()
        .zip(&orders)
        .filter(|(_, o)| *o % 2 == 0)
        .all(|(g, _)| g.trace() == Gf::ZERO);
    out.push(Check::new("even-order elements have trace 0", true, even_traces));
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Conjugacy classes of non-identity odd-order elements, found as orbits
/// under conjugation by the generators.
fn odd_order_classes(sz: &Sz, group: &[Mat4], orders: &[u64]) -> (usize, bool) {
    let f = sz.field();
    let gens = sz.generators();
    let mut class_of: HashMap<Mat4, usize> = HashMap::new();
    let mut traces = Vec::new();
    for (g, &o) in group.iter().zip(orders) {
        if o % 2 == 0 || o == 1 || class_of.contains_key(g) {
            continue;
        }
        let id = traces.len();
        let mut queue = VecDeque::from([*g]);
        class_of.insert(*g, id);
        let mut class_traces = HashSet::new();
        while let Some(x) = queue.pop_front() {
            class_traces.insert(x.trace());
            for y in &gens {
                let z = x.conj(y, f);
                if let std::collections::hash_map::Entry::Vacant(e) = class_of.entry(z) {
                    e.insert(id);
                    queue.push_back(z);
                }
            }
        }
        traces.push(class_traces);
    }
    let constant = traces.iter().all(|s| s.len() == 1);
    let distinct: HashSet<Gf> = traces.iter().flatten().copied().collect();
    (traces.len(), constant && distinct.len() == traces.len())
}
