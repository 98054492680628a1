use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use suzuki::linalg::{invariant_symplectic_form, is_absolutely_irreducible};
use suzuki::membership::stabiliser_element;
use suzuki::random::PrGenerator;
use suzuki::recog::{recognise_conjugate, recognise_standard};
use suzuki::szstd::{projective_points, Decoy, Sz};
use suzuki::{Field, Gf, Mat4, ProjPoint};

const DECOYS: [Decoy; 5] = [
    Decoy::Stabiliser,
    Decoy::TorusNormaliser,
    Decoy::Subfield,
    Decoy::HallPlus,
    Decoy::HallMinus,
];

fn generating_set(sz: &Sz, choice: usize, rng: &mut ChaCha8Rng) -> Vec<Mat4> {
    match choice {
        0 => sz.generators(),
        k => sz.decoy_generators(DECOYS[k - 1], rng).unwrap(),
    }
}

fn invariant(basis: &[[Gf; 4]], gens: &[Mat4], f: &Field) -> bool {
    let span: HashSet<ProjPoint> = projective_points(basis, f).into_iter().collect();
    gens.iter()
        .all(|g| basis.iter().all(|v| span.contains(&ProjPoint::new(g.act(v, f), f).unwrap())))
}

/// Irreducibility over F_q by enumerating every 1-, 2- and 3-dimensional
/// subspace; 3-dimensional ones via invariant points of the transposes.
fn irreducible_by_enumeration(gens: &[Mat4], f: &Field) -> bool {
    let points = projective_points(&Mat4::IDENTITY.0, f);
    let transposes: Vec<Mat4> = gens.iter().map(|g| g.transpose()).collect();
    if points.iter().any(|p| invariant(&[p.coords()], gens, f) || invariant(&[p.coords()], &transposes, f)) {
        return false;
    }
    let mut seen: HashSet<Vec<ProjPoint>> = HashSet::new();
    for (i, p) in points.iter().enumerate() {
        for r in &points[i + 1..] {
            let basis = [p.coords(), r.coords()];
            let mut key = projective_points(&basis, f);
            key.sort();
            if key[0] != *p || !seen.insert(key) {
                continue;
            }
            if invariant(&basis, gens, f) {
                return false;
            }
        }
    }
    true
}

#[test]
fn absolute_irreducibility_agrees_with_enumeration_at_q8() {
    let sz = Sz::new(1).unwrap();
    let f = sz.field();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let mut inputs: Vec<Vec<Mat4>> = Vec::new();
    for _ in 0..8 {
        inputs.push(vec![sz.random_element(&mut rng), sz.random_element(&mut rng)]);
    }
    for _ in 0..4 {
        inputs.push(vec![Mat4::random_invertible(f, &mut rng), Mat4::random_invertible(f, &mut rng)]);
    }
    for _ in 0..3 {
        // lower triangular pairs
        let lower = |rng: &mut ChaCha8Rng| {
            Mat4::from_fn(|r, c| match r.cmp(&c) {
                std::cmp::Ordering::Less => Gf::ZERO,
                std::cmp::Ordering::Equal => f.random_unit(rng),
                std::cmp::Ordering::Greater => f.random(rng),
            })
        };
        inputs.push(vec![lower(&mut rng), lower(&mut rng)]);
    }
    for kind in DECOYS {
        inputs.push(sz.decoy_generators(kind, &mut rng).unwrap());
    }
    assert_eq!(inputs.len(), 20);
    let mut both = [0, 0];
    for gens in &inputs {
        let abs = is_absolutely_irreducible(gens, f);
        assert_eq!(abs, irreducible_by_enumeration(gens, f), "{gens:?}");
        both[abs as usize] += 1;
    }
    assert!(both[0] > 0 && both[1] > 0);
}

#[test]
fn sharply_limited_fixed_points_and_double_transitivity() {
    let sz = Sz::new(1).unwrap();
    let f = sz.field();
    let group = sz.enumerate().unwrap();
    let ovoid = sz.ovoid();
    for g in group.iter().filter(|g| !g.is_identity()) {
        assert!(ovoid.iter().filter(|p| p.act(g, f) == **p).count() <= 2);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let pair = |rng: &mut ChaCha8Rng| loop {
        let (a, b) = (ovoid[rng.gen_range(0..ovoid.len())], ovoid[rng.gen_range(0..ovoid.len())]);
        if a != b {
            return (a, b);
        }
    };
    for _ in 0..2 {
        let (p1, p2) = pair(&mut rng);
        let (q1, q2) = pair(&mut rng);
        assert!(group.iter().any(|g| p1.act(g, f) == q1 && p2.act(g, f) == q2));
    }
}

#[test]
fn distinct_seeds_give_distinct_streams() {
    let sz = Sz::new(1).unwrap();
    let mut prefixes = HashSet::new();
    for seed in 0..100 {
        let mut prg = PrGenerator::new(&sz.generators(), seed, sz.field()).unwrap();
        let prefix: Vec<Mat4> = (0..20).map(|_| prg.next_element().0).collect();
        assert!(prefixes.insert(prefix), "seed {seed}");
    }
}

/// Upper 0.01 point of the chi-squared distribution, Wilson-Hilferty.
fn chi2_critical(df: f64) -> f64 {
    let z = 2.326_347_874;
    let k = 2.0 / (9.0 * df);
    df * (1.0 - k + z * k.sqrt()).powi(3)
}

#[test]
fn stabiliser_elements_are_uniform_at_q8() {
    let sz = Sz::new(1).unwrap();
    let f = sz.field();
    let stab: Vec<Mat4> = sz
        .enumerate()
        .unwrap()
        .into_iter()
        .filter(|g| ProjPoint::INF.act(g, f) == ProjPoint::INF)
        .collect();
    assert_eq!(stab.len(), 448);
    let mut counts: HashMap<Mat4, u32> = stab.iter().map(|g| (*g, 0)).collect();
    let mut prg = PrGenerator::new(&sz.generators(), 23, f).unwrap();
    let samples = 500;
    let mut got = 0;
    while got < samples {
        if let Some((g, _)) = stabiliser_element(&sz, &mut prg, &ProjPoint::INF).unwrap() {
            *counts.get_mut(&g).expect("element of the stabiliser") += 1;
            got += 1;
        }
    }
    let expected = samples as f64 / stab.len() as f64;
    let chi2: f64 = counts.values().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    let critical = chi2_critical(stab.len() as f64 - 1.0);
    assert!(chi2 < critical, "chi2 = {chi2:.1}, critical {critical:.1}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn invariant_forms_of_conjugates(seed in any::<u64>(), m in 1u32..=3) {
        let sz = Sz::new(m).unwrap();
        let f = sz.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = Mat4::random_invertible(f, &mut rng);
        let gens: Vec<Mat4> = sz.generators().iter().map(|g| g.conj(&h, f)).collect();
        let form = invariant_symplectic_form(&gens, f).unwrap();
        prop_assert_eq!(form.transpose(), form);
        prop_assert!((0..4).all(|i| form.0[i][i] == Gf::ZERO));
        prop_assert!(form.det(f) != Gf::ZERO);
        for g in &gens {
            prop_assert_eq!(g.mul(&form, f).mul(&g.transpose(), f), form);
        }
    }

    #[test]
    fn verdicts_are_conjugation_invariant(seed in any::<u64>(), m in 1u32..=2, choice in 0usize..6) {
        let sz = Sz::new(m).unwrap();
        let f = sz.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens = generating_set(&sz, choice, &mut rng);
        let h = Mat4::random_invertible(f, &mut rng);
        let conj: Vec<Mat4> = gens.iter().map(|g| g.conj(&h, f)).collect();
        let standard = recognise_standard(&sz, &gens).unwrap();
        let conjugate = recognise_conjugate(&sz, &conj).unwrap();
        prop_assert_eq!(standard.verdict, conjugate.verdict);
        prop_assert_eq!(standard.tag, conjugate.tag);
    }

    #[test]
    fn psi_fixes_the_standard_copy(seed in any::<u64>(), m in 1u32..=5) {
        let sz = Sz::new(m).unwrap();
        let f = sz.field();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random_unit(&mut rng));
        for g in [sz.s(a, b), sz.m(c), Mat4::ANTI] {
            prop_assert_eq!(sz.psi(&g), g);
        }
    }
}
