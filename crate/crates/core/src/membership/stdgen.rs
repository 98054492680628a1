//! Generators of the unipotent radicals of the two standard point
//! stabilisers, as words in the input generators.
//!
//! For the stabiliser of P∞ (lower triangular) a commutator c = S(a, b) of
//! order 4 and a torus-type element d give c^(d^i) = S(μ^i a, ·) and
//! (c²)^(d^i) = S(0, ν^i b'), i = 1..n. When μ generates the field these
//! parameters span GF(q) over GF(2). The stabiliser of P0 is handled the
//! same way after conjugating by T.

use super::mapping::stabiliser;
use crate::error::Result;
use crate::field::Gf;
use crate::lasvegas;
use crate::linalg::{gf2_rank, Mat4, ProjPoint};
use crate::random::PrGenerator;
use crate::slp::Word;
use crate::szstd::Sz;

#[derive(Clone, Debug)]
pub struct Radical {
    /// True for the stabiliser of P0; elements are then upper triangular.
    pub upper: bool,
    /// c^(d^i); their first parameters form `a_basis`.
    pub a_elems: Vec<(Mat4, Word)>,
    /// (c²)^(d^i); central, their second parameters form `b_basis`.
    pub b_elems: Vec<(Mat4, Word)>,
    pub a_basis: Vec<Gf>,
    pub b_basis: Vec<Gf>,
    pub torus: (Mat4, Word),
    /// Entry [1][1] of the lowered torus element.
    pub lambda: Gf,
}

impl Radical {
    /// Moves an element of this stabiliser to the lower triangular side.
    pub fn lower(&self, g: &Mat4, sz: &Sz) -> Mat4 {
        if self.upper {
            Mat4::ANTI.mul(g, sz.field()).mul(&Mat4::ANTI, sz.field())
        } else {
            *g
        }
    }

    /// All words held by this structure.
    pub fn words(&self) -> Vec<&Word> {
        self.a_elems
            .iter()
            .chain(&self.b_elems)
            .map(|e| &e.1)
            .chain([&self.torus.1])
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct StandardGenerators {
    pub lower: Radical,
    pub upper: Radical,
}

impl StandardGenerators {
    pub fn words(&self) -> Vec<&Word> {
        let mut w = self.lower.words();
        w.extend(self.upper.words());
        w
    }
}

/// One round at the point P∞ (or P0 if `upper`).
pub fn radical_round(sz: &Sz, prg: &mut PrGenerator, upper: bool, eps: f64) -> Result<Option<Radical>> {
    let f = sz.field();
    let point = if upper { ProjPoint::ZERO } else { ProjPoint::INF };
    let a1 = stabiliser(sz, prg, &point, eps)?;
    let a2 = stabiliser(sz, prg, &point, eps)?;
    let c = Mat4::comm(&a1.0, &a2.0, f);
    if c.pow(2, f).is_identity() {
        return Ok(None);
    }
    let wc = Word::comm(&a1.1, &a2.1);
    let q1 = f.q() as i64 - 1;
    let Some(d) = [a1, a2]
        .into_iter()
        .find(|(d, _)| !d.is_identity() && d.pow(q1, f).is_identity())
    else {
        return Ok(None);
    };
    let mut rad = Radical {
        upper,
        a_elems: Vec::new(),
        b_elems: Vec::new(),
        a_basis: Vec::new(),
        b_basis: Vec::new(),
        torus: d.clone(),
        lambda: Gf::ZERO,
    };
    let lowered = rad.lower(&d.0, sz);
    rad.lambda = lowered.0[1][1];
    if rad.lambda == Gf::ONE || f.in_proper_subfield(rad.lambda)? {
        return Ok(None);
    }
    let di = d.0.inverse(f);
    let mut cur = (c, wc.clone());
    let mut cur2 = (c.pow(2, f), wc.pow(2));
    for _ in 0..f.n() {
        cur = (di.mul(&cur.0, f).mul(&d.0, f), cur.1.conj(&d.1));
        cur2 = (di.mul(&cur2.0, f).mul(&d.0, f), cur2.1.conj(&d.1));
        rad.a_basis.push(rad.lower(&cur.0, sz).0[1][0]);
        rad.b_basis.push(rad.lower(&cur2.0, sz).0[2][0]);
        rad.a_elems.push(cur.clone());
        rad.b_elems.push(cur2.clone());
    }
    let n = f.n() as usize;
    if gf2_rank(&rad.a_basis) < n || gf2_rank(&rad.b_basis) < n {
        return Ok(None);
    }
    Ok(Some(rad))
}

/// Builds both radicals within the failure bound `eps`.
pub fn preprocess(sz: &Sz, prg: &mut PrGenerator, eps: f64) -> Result<StandardGenerators> {
    let budget = lasvegas::rounds_for(eps, 0.1);
    let lower = lasvegas::try_run(budget, || radical_round(sz, prg, false, eps))?;
    let upper = lasvegas::try_run(budget, || radical_round(sz, prg, true, eps))?;
    Ok(StandardGenerators { lower, upper })
}
