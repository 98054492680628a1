//! Writing group elements as words in the input generators.

use super::stdgen::{Radical, StandardGenerators};
use crate::error::{Error, Result};
use crate::field::Gf;
use crate::linalg::{gf2_solve, Mat4, ProjPoint};
use crate::random::PrGenerator;
use crate::slp::Word;
use crate::szstd::Sz;

fn is_lower_triangular(g: &Mat4) -> bool {
    (0..4).all(|i| (i + 1..4).all(|j| g.0[i][j].is_zero()))
}

fn product(sz: &Sz, elems: &[(Mat4, Word)], idx: &[usize]) -> (Mat4, Word) {
    let f = sz.field();
    let mut it = idx.iter();
    let Some(&first) = it.next() else {
        return (Mat4::IDENTITY, Word::identity());
    };
    it.fold(elems[first].clone(), |(m, w), &i| (m.mul(&elems[i].0, f), w.mul(&elems[i].1)))
}

/// A word for an element of the point stabiliser described by `rad`.
///
/// The torus part, if any, is taken from the stored torus element by a
/// discrete logarithm, so it must lie in the cyclic group that element
/// generates.
pub fn express_in_stabiliser(sz: &Sz, rad: &Radical, g: &Mat4) -> Result<Word> {
    let f = sz.field();
    let h = rad.lower(g, sz);
    if !is_lower_triangular(&h) || h.det(f) != Gf::ONE {
        return Err(Error::NotInGroup);
    }
    let mut rest = h;
    let mut torus_word = None;
    if h.0[1][1] != Gf::ONE {
        let k = f
            .discrete_log(rad.lambda, h.0[1][1])?
            .ok_or(Error::NotInGroup)? as i64;
        let d = rad.lower(&rad.torus.0, sz);
        rest = h.mul(&d.pow(-k, f), f);
        torus_word = Some(rad.torus.1.pow(k));
    }
    let lowered: Vec<(Mat4, Word)> = rad.a_elems.iter().map(|(m, w)| (rad.lower(m, sz), w.clone())).collect();
    let ia = gf2_solve(&rad.a_basis, rest.0[1][0]).ok_or(Error::NotInGroup)?;
    let (pa, wa) = product(sz, &lowered, &ia);
    let rest2 = pa.inverse(f).mul(&rest, f);
    let lowered_b: Vec<(Mat4, Word)> = rad.b_elems.iter().map(|(m, w)| (rad.lower(m, sz), w.clone())).collect();
    let ib = gf2_solve(&rad.b_basis, rest2.0[2][0]).ok_or(Error::NotInGroup)?;
    let (pb, wb) = product(sz, &lowered_b, &ib);
    if pa.mul(&pb, f) != rest {
        return Err(Error::NotInGroup);
    }
    let w = wa.mul(&wb);
    Ok(match torus_word {
        Some(t) => w.mul(&t),
        None => w,
    })
}

/// Point of the ovoid other than P∞ as P0·S(a, b); returns S(a, b)⁻¹,
/// which maps it to P0.
fn to_p0(sz: &Sz, q: &ProjPoint) -> Mat4 {
    let f = sz.field();
    let c = q.coords();
    let a = c[2];
    let b = c[1] + f.pow(a, f.t() as i64 + 1);
    sz.s(a, b).inverse(f)
}

/// One round of writing g as a word; `None` on a failed round.
pub fn element_to_slp_round(
    sz: &Sz,
    prg: &mut PrGenerator,
    std: &StandardGenerators,
    g: &Mat4,
) -> Result<Option<Word>> {
    let f = sz.field();
    let (r, wr) = prg.next_element();
    let h1 = g.mul(&r, f);
    if h1.is_identity() {
        return Ok(Some(wr.inv()));
    }
    let Some(q) = sz.fixed_ovoid_points(&h1)?.into_iter().find(|p| *p != ProjPoint::INF) else {
        return Ok(None);
    };
    let z1 = to_p0(sz, &q);
    let wz1 = express_in_stabiliser(sz, &std.lower, &z1)?;
    let y = h1.conj(&z1, f);
    let lam = y.0[1][1];
    let z2 = y.inverse(f).mul(&Mat4::diag(y.diagonal()), f);
    let wz2 = express_in_stabiliser(sz, &std.upper, &z2)?;
    let core = if lam == Gf::ONE {
        wz2.inv()
    } else {
        let Some(wd) = torus_word(sz, std, lam)? else {
            return Ok(None);
        };
        wd.mul(&wz2.inv())
    };
    Ok(Some(core.conj(&wz1.inv()).mul(&wr.inv())))
}

/// A word for the diagonal element M'(λ), λ ≠ 1, built from the
/// commutator of two involutions with the right trace.
fn torus_word(sz: &Sz, std: &StandardGenerators, lam: Gf) -> Result<Option<Word>> {
    let f = sz.field();
    let target = sz.m_prime(lam);
    let x = target.trace();
    let s = f.frob(x, f.m() - 1);
    let i1 = sz.s(Gf::ZERO, s);
    let i2 = Mat4::ANTI.mul(&sz.s(Gf::ZERO, Gf::ONE), f).mul(&Mat4::ANTI, f);
    let h = Mat4::comm(&i1, &i2, f);
    let wh = Word::comm(
        &express_in_stabiliser(sz, &std.lower, &i1)?,
        &express_in_stabiliser(sz, &std.upper, &i2)?,
    );
    let fixed = sz.fixed_ovoid_points(&h)?;
    if fixed.len() != 2 {
        return Ok(None);
    }
    let (p1, p2) = if fixed[0] == ProjPoint::INF { (fixed[1], fixed[0]) } else { (fixed[0], fixed[1]) };
    let a = to_p0(sz, &p1);
    let p3 = p2.act(&a, f).act(&Mat4::ANTI, f);
    if p3 == ProjPoint::INF {
        return Ok(None);
    }
    let b = Mat4::ANTI.mul(&to_p0(sz, &p3), f).mul(&Mat4::ANTI, f);
    let ab = a.mul(&b, f);
    let d = h.conj(&ab, f);
    let e = if d == target {
        1
    } else if d.inverse(f) == target {
        -1
    } else {
        return Ok(None);
    };
    let wa = express_in_stabiliser(sz, &std.lower, &a)?;
    let wb = express_in_stabiliser(sz, &std.upper, &b)?;
    Ok(Some(wh.conj(&wa.mul(&wb)).pow(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::stdgen::preprocess;
    use crate::linalg::MatGroup;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn involution_commutator_has_prescribed_trace() {
        for m in 1..=5 {
            let sz = Sz::new(m).unwrap();
            let f = sz.field();
            let i2 = Mat4::ANTI.mul(&sz.s(Gf::ZERO, Gf::ONE), f).mul(&Mat4::ANTI, f);
            for x in f.elements().step_by(5) {
                let i1 = sz.s(Gf::ZERO, f.frob(x, f.m() - 1));
                assert_eq!(Mat4::comm(&i1, &i2, f).trace(), x);
            }
        }
    }

    #[test]
    fn stabiliser_elements_are_expressed() {
        let sz = Sz::new(2).unwrap();
        let f = sz.field();
        let gens = sz.generators();
        let mut prg = PrGenerator::new(&gens, 17, f).unwrap();
        let std = preprocess(&sz, &mut prg, 1e-6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let u = sz.s(f.random(&mut rng), f.random(&mut rng));
            let w = express_in_stabiliser(&sz, &std.lower, &u).unwrap();
            assert_eq!(w.evaluate(&MatGroup(f), &gens).unwrap(), u);
            let ut = Mat4::ANTI.mul(&u, f).mul(&Mat4::ANTI, f);
            let w = express_in_stabiliser(&sz, &std.upper, &ut).unwrap();
            assert_eq!(w.evaluate(&MatGroup(f), &gens).unwrap(), ut);
        }
        assert!(matches!(
            express_in_stabiliser(&sz, &std.lower, &Mat4::ANTI),
            Err(Error::NotInGroup)
        ));
    }

    #[test]
    fn rewrites_random_elements() {
        let sz = Sz::new(1).unwrap();
        let f = sz.field();
        let gens = sz.generators();
        let mut prg = PrGenerator::new(&gens, 23, f).unwrap();
        let std = preprocess(&sz, &mut prg, 1e-6).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..20 {
            let g = sz.random_element(&mut rng);
            let w = crate::lasvegas::try_run(200, || element_to_slp_round(&sz, &mut prg, &std, &g)).unwrap();
            assert_eq!(w.evaluate(&MatGroup(f), &gens).unwrap(), g);
        }
    }
}
