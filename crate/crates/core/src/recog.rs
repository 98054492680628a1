//! Recognition of the standard copy and of its conjugates in GL(4, q), and
//! construction of a matrix conjugating a conjugate back to the standard
//! copy.

use rand::RngCore;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Gf;
use crate::lasvegas;
use crate::linalg::{
    diagonalise_torus, composition_series, invariant_symplectic_form, is_absolutely_irreducible,
    module_hom_space, symplectic_basis, torus_pattern, written_over_subfield, Mat4, ProjPoint,
    Subspace,
};
use crate::membership::mapping::stabiliser;
use crate::random::PrGenerator;
use crate::szstd::Sz;

/// Lower bound used for the per-round success of [`find_ovoid_point_round`].
const OVOID_POINT_SUCCESS: f64 = 0.1;
/// Lower bound used for the per-round success of [`find_conjugator`].
const CONJUGATOR_SUCCESS: f64 = 0.1;
/// Point redraws allowed in [`diagonal_adjust`].
const ADJUST_REDRAWS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Tag {
    #[serde(rename = "not-in-Sp")]
    NotInSp,
    #[serde(rename = "not-psi-fixed")]
    NotPsiFixed,
    #[serde(rename = "reducible")]
    Reducible,
    #[serde(rename = "subfield")]
    Subfield,
    #[serde(rename = "metabelian-trap")]
    MetabelianTrap,
    #[serde(rename = "proper-subgroup")]
    ProperSubgroup,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::NotInSp => "not-in-Sp",
            Tag::NotPsiFixed => "not-psi-fixed",
            Tag::Reducible => "reducible",
            Tag::Subfield => "subfield",
            Tag::MetabelianTrap => "metabelian-trap",
            Tag::ProperSubgroup => "proper-subgroup",
        }
    }
}

impl std::fmt::Display for Tag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Index of the offending generator.
    Generator(usize),
    /// Degree d of the subfield GF(2^d) the group can be written over.
    SubfieldDegree(u32),
    /// A commutator c of generators with [c, c^x] = 1 for every generator x.
    Commutator(Mat4),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verdict: bool,
    pub tag: Option<Tag>,
    pub witness: Option<Witness>,
}

impl Report {
    fn yes() -> Report {
        Report { verdict: true, tag: None, witness: None }
    }

    fn no(tag: Tag, witness: Option<Witness>) -> Report {
        Report { verdict: false, tag: Some(tag), witness }
    }
}

fn proper_divisors(n: u32) -> impl Iterator<Item = u32> {
    (1..n).filter(move |d| n % d == 0)
}

/// Irreducibility and subfield conditions, shared by both recognisers.
fn module_conditions(sz: &Sz, gens: &[Mat4]) -> Result<Option<Report>> {
    let f = sz.field();
    if gens.is_empty() || !is_absolutely_irreducible(gens, f) {
        return Ok(Some(Report::no(Tag::Reducible, None)));
    }
    for d in proper_divisors(f.n()) {
        if written_over_subfield(gens, d, f)? {
            return Ok(Some(Report::no(Tag::Subfield, Some(Witness::SubfieldDegree(d)))));
        }
    }
    Ok(None)
}

/// The commutator criterion for a subgroup of Sz(q) that is absolutely
/// irreducible and not over a subfield to be the whole group.
fn commutator_condition(sz: &Sz, gens: &[Mat4]) -> Report {
    let f = sz.field();
    let c = (0..gens.len())
        .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
        .map(|(i, j)| Mat4::comm(&gens[i], &gens[j], f))
        .find(|c| !c.is_identity());
    let Some(c) = c else {
        return Report::no(Tag::ProperSubgroup, None);
    };
    if gens.iter().any(|x| !Mat4::comm(&c, &c.conj(x, f), f).is_identity()) {
        Report::yes()
    } else {
        Report::no(Tag::MetabelianTrap, Some(Witness::Commutator(c)))
    }
}

/// Decides whether the generators generate the standard copy Sz(q).
pub fn recognise_standard(sz: &Sz, gens: &[Mat4]) -> Result<Report> {
    let f = sz.field();
    for (i, g) in gens.iter().enumerate() {
        if g.det(f) != Gf::ONE || !sz.preserves_form(g) {
            return Ok(Report::no(Tag::NotInSp, Some(Witness::Generator(i))));
        }
        if sz.psi(g) != *g {
            return Ok(Report::no(Tag::NotPsiFixed, Some(Witness::Generator(i))));
        }
    }
    if let Some(r) = module_conditions(sz, gens)? {
        return Ok(r);
    }
    Ok(commutator_condition(sz, gens))
}

/// Decides whether the generators generate a GL(4, q)-conjugate of Sz(q).
pub fn recognise_conjugate(sz: &Sz, gens: &[Mat4]) -> Result<Report> {
    let f = sz.field();
    if gens.is_empty() || !is_absolutely_irreducible(gens, f) {
        return Ok(Report::no(Tag::Reducible, None));
    }
    let Some(form) = invariant_symplectic_form(gens, f) else {
        return Ok(Report::no(Tag::NotInSp, None));
    };
    let x = match symplectic_basis(&form, f) {
        Ok(x) => x,
        Err(Error::DegenerateForm) => return Ok(Report::no(Tag::NotInSp, None)),
        Err(e) => return Err(e),
    };
    let rebased: Vec<Mat4> = gens.iter().map(|g| g.conj(&x, f)).collect();
    let twisted: Vec<Mat4> = rebased.iter().map(|g| sz.psi(g)).collect();
    // absolutely irreducible, so the hom space is at most one-dimensional
    let iso = module_hom_space(&rebased, &twisted, f).iter().any(|h| !h.det(f).is_zero());
    if !iso {
        return Ok(Report::no(Tag::NotPsiFixed, None));
    }
    if let Some(r) = module_conditions(sz, &rebased)? {
        return Ok(r);
    }
    Ok(commutator_condition(sz, &rebased))
}

/// One round: two points of the ovoid of ⟨X⟩, the eigenspaces for the
/// eigenvalues μ^(t+1) and μ^(-t-1) of a random element of order dividing
/// q - 1. `None` if the draw is unsuitable.
pub fn find_ovoid_point_round(prg: &mut PrGenerator) -> Result<Option<(ProjPoint, ProjPoint)>> {
    let f = prg.field().clone();
    let (g, _) = prg.next_element();
    if g.is_identity() || !g.pow(f.q() as i64 - 1, &f).is_identity() {
        return Ok(None);
    }
    let Ok((x, lambda)) = diagonalise_torus(&g, &f) else {
        return Ok(None);
    };
    // The pair is ambiguous when λ^(t+1) also produces the same pattern.
    let sorted = |mut v: Vec<Gf>| {
        v.sort();
        v
    };
    let alt = f.pow(lambda, f.t() as i64 + 1);
    if alt != lambda && sorted(torus_pattern(alt, &f).to_vec()) == sorted(torus_pattern(lambda, &f).to_vec()) {
        return Ok(None);
    }
    let p = ProjPoint::new(x.row(0), &f).ok_or(Error::Singular)?;
    let q = ProjPoint::new(x.row(3), &f).ok_or(Error::Singular)?;
    Ok(Some((p, q)))
}

/// A point of the ovoid on which ⟨X⟩ acts doubly transitively.
pub fn find_ovoid_point(prg: &mut PrGenerator, eps: f64) -> Result<ProjPoint> {
    let budget = lasvegas::rounds_for(eps, OVOID_POINT_SUCCESS);
    Ok(lasvegas::try_run(budget, || find_ovoid_point_round(prg))?.0)
}

/// Given generators of subgroups of the stabilisers of two distinct ovoid
/// points, each containing the unipotent radical, returns k such that
/// G^k is conjugate to Sz(q) by a diagonal matrix.
pub fn conjugate_to_triangular(sz: &Sz, y_p: &[Mat4], y_q: &[Mat4]) -> Result<Mat4> {
    let f = sz.field();
    let vp = composition_series(y_p, f)?;
    let vq = composition_series(y_q, f)?;
    let one = |s: Subspace| -> Result<[Gf; 4]> {
        if s.dim() != 1 {
            return Err(Error::NotGeneralPosition);
        }
        Ok(s.basis()[0])
    };
    let rows = [
        one(vp[0].clone())?,
        one(vp[1].intersect(&vq[2], f))?,
        one(vp[2].intersect(&vq[1], f))?,
        one(vq[0].clone())?,
    ];
    Mat4::from_rows(rows).inv(f).ok_or(Error::NotGeneralPosition)
}

/// For generators X_k of a diagonal conjugate of Sz(q), a diagonal e with
/// ⟨X_k⟩^e = Sz(q). `prg` must produce elements of ⟨X_k⟩.
pub fn diagonal_adjust(sz: &Sz, xk: &[Mat4], prg: &mut PrGenerator, eps: f64) -> Result<Mat4> {
    let f = sz.field();
    let form = invariant_symplectic_form(xk, f).ok_or(Error::NotSymplectic)?;
    let (k14, k23) = (form.0[0][3], form.0[1][2]);
    if k14.is_zero() || k23.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let t = f.t() as i64;
    for _ in 0..ADJUST_REDRAWS {
        let p = find_ovoid_point(prg, eps)?.coords();
        let q = find_ovoid_point(prg, eps)?.coords();
        if p[3].is_zero() || q[3].is_zero() || p == q {
            continue;
        }
        // p₂^t x + p₃^(t+2) y = p₁ K₁₄ + p₂ p₃ K₂₃, likewise for q
        let row = |v: [Gf; 4]| {
            (
                f.pow(v[1], t),
                f.pow(v[2], t + 2),
                f.mul(v[0], k14) + f.mul(f.mul(v[1], v[2]), k23),
            )
        };
        let (a1, b1, c1) = row(p);
        let (a2, b2, c2) = row(q);
        let det = f.mul(a1, b2) + f.mul(a2, b1);
        if det.is_zero() {
            continue;
        }
        let x = f.div(f.mul(c1, b2) + f.mul(c2, b1), det);
        let y = f.div(f.mul(a1, c2) + f.mul(a2, c1), det);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let e2 = f.sqrt(f.pow(x, t));
        let e3 = f.pow(y, 1 - t / 2);
        return Ok(Mat4::diag([k14, e2, e3, Gf::ONE]));
    }
    Err(Error::BudgetExhausted(ADJUST_REDRAWS as u64))
}

/// Generators of a subgroup of the stabiliser of `p` containing its
/// unipotent radical: two random stabiliser elements and their commutator,
/// which must have order 4.
pub fn stabiliser_generators(sz: &Sz, prg: &mut PrGenerator, p: &ProjPoint, eps: f64) -> Result<Option<Vec<Mat4>>> {
    let f = sz.field();
    let (a1, _) = stabiliser(sz, prg, p, eps)?;
    let (a2, _) = stabiliser(sz, prg, p, eps)?;
    let c = Mat4::comm(&a1, &a2, f);
    if c.pow(2, f).is_identity() {
        return Ok(None);
    }
    Ok(Some(vec![a1, a2, c]))
}

/// One round of [`find_conjugator`].
pub fn find_conjugator_round(sz: &Sz, prg: &mut PrGenerator, eps: f64) -> Result<Option<Mat4>> {
    let f = sz.field();
    let gens = prg.generators().to_vec();
    let p = find_ovoid_point(prg, eps)?;
    let q = find_ovoid_point(prg, eps)?;
    if p == q {
        return Ok(None);
    }
    let Some(y_p) = stabiliser_generators(sz, prg, &p, eps)? else {
        return Ok(None);
    };
    let Some(y_q) = stabiliser_generators(sz, prg, &q, eps)? else {
        return Ok(None);
    };
    let k = match conjugate_to_triangular(sz, &y_p, &y_q) {
        Ok(k) => k,
        Err(Error::NotGeneralPosition | Error::NotUniserial) => return Ok(None),
        Err(e) => return Err(e),
    };
    let xk: Vec<Mat4> = gens.iter().map(|g| g.conj(&k, f)).collect();
    let mut inner = PrGenerator::new(&xk, prg.rng().next_u64(), f)?;
    let e = match diagonal_adjust(sz, &xk, &mut inner, eps) {
        Ok(e) => e,
        Err(Error::BudgetExhausted(_) | Error::DegenerateForm | Error::NotSymplectic) => return Ok(None),
        Err(e) => return Err(e),
    };
    let g = k.mul(&e, f);
    Ok(gens.iter().all(|x| sz.is_member(&x.conj(&g, f))).then_some(g))
}

/// A matrix g with ⟨X⟩^g = Sz(q), for X generating a conjugate of Sz(q).
pub fn find_conjugator(sz: &Sz, gens: &[Mat4], seed: u64, eps: f64) -> Result<Mat4> {
    let mut prg = PrGenerator::new(gens, seed, sz.field())?;
    let budget = lasvegas::rounds_for(eps, CONJUGATOR_SUCCESS);
    lasvegas::try_run(budget, || find_conjugator_round(sz, &mut prg, eps))
}

/// Whether two conjugators g, g' for the same group differ by a scalar
/// times an element of Sz(q), that is, g⁻¹·g' ∈ F_q^×·Sz(q).
pub fn same_up_to_normaliser(sz: &Sz, g: &Mat4, g2: &Mat4) -> bool {
    let f = sz.field();
    let Some(gi) = g.inv(f) else { return false };
    let h = gi.mul(g2, f);
    let d = h.det(f);
    if d.is_zero() {
        return false;
    }
    let c = f.inv(f.sqrt(f.sqrt(d)));
    sz.is_member(&h.scale(c, f))
}
