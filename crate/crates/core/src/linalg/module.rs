//! Module-theoretic computations on matrix generating sets.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{add_vec, charpoly, is_zero_vec, scale_vec, DMat, Mat4, Subspace, Vec4};
use crate::error::{Error, Result};
use crate::field::{Field, Gf};

const FORM_SLOTS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn flatten(m: &Mat4) -> Vec<Gf> {
    m.0.iter().flatten().copied().collect()
}

fn unflatten(v: &[Gf]) -> Mat4 {
    Mat4::from_fn(|i, j| v[4 * i + j])
}

/// A nonzero alternating M with g M gᵀ = M for every generator, if one
/// exists. The first vector of the RREF nullspace basis is returned.
pub fn invariant_symplectic_form(gens: &[Mat4], f: &Field) -> Option<Mat4> {
    let basis: Vec<Mat4> = FORM_SLOTS
        .iter()
        .map(|&(i, j)| {
            let mut e = Mat4::ZERO;
            e.0[i][j] = Gf::ONE;
            e.0[j][i] = Gf::ONE;
            e
        })
        .collect();
    let mut rows = Vec::new();
    for g in gens {
        let gt = g.transpose();
        let cols: Vec<Vec<Gf>> = basis
            .iter()
            .map(|e| flatten(&g.mul(e, f).mul(&gt, f).add(e)))
            .collect();
        for r in 0..16 {
            rows.push(cols.iter().map(|c| c[r]).collect());
        }
    }
    let ns = DMat::from_rows(6, rows).nullspace(f);
    let v = ns.first()?;
    Some(
        basis
            .iter()
            .zip(v)
            .fold(Mat4::ZERO, |acc, (e, &c)| acc.add(&e.scale(c, f))),
    )
}

fn bilinear(u: &Vec4, m: &Mat4, v: &Vec4, f: &Field) -> Gf {
    super::dot(&m.act(u, f), v, f)
}

/// For a nondegenerate alternating form M, returns X with
/// X⁻¹ M X⁻ᵀ = J (the anti-identity). Conjugating by X moves the isometry
/// group of M onto that of J: if g M gᵀ = M then g' = X⁻¹ g X preserves J.
pub fn symplectic_basis(m: &Mat4, f: &Field) -> Result<Mat4> {
    let alternating = (0..4).all(|i| m.0[i][i].is_zero() && (0..4).all(|j| m.0[i][j] == m.0[j][i]));
    if !alternating || m.det(f).is_zero() {
        return Err(Error::DegenerateForm);
    }
    let std = Mat4::IDENTITY.0;
    let pair = |cands: &[Vec4]| -> Option<(Vec4, Vec4)> {
        let a = *cands.iter().find(|v| !is_zero_vec(v))?;
        let b = cands.iter().find(|v| !bilinear(&a, m, v, f).is_zero())?;
        let c = bilinear(&a, m, b, f);
        Some((a, scale_vec(b, f.inv(c), f)))
    };
    let (f1, f4) = pair(&std).ok_or(Error::DegenerateForm)?;
    let rest: Vec<Vec4> = std
        .iter()
        .map(|w| {
            let w = add_vec(w, &scale_vec(&f1, bilinear(w, m, &f4, f), f));
            add_vec(&w, &scale_vec(&f4, bilinear(&w, m, &f1, f), f))
        })
        .collect();
    let (f2, f3) = pair(&rest).ok_or(Error::DegenerateForm)?;
    let y = Mat4([f1, f2, f3, f4]);
    y.inv(f).ok_or(Error::DegenerateForm)
}

/// Basis of {T : A_i T = T B_i for all i}.
pub fn module_hom_space(a: &[Mat4], b: &[Mat4], f: &Field) -> Vec<Mat4> {
    assert_eq!(a.len(), b.len());
    let mut rows = Vec::new();
    for (ai, bi) in a.iter().zip(b) {
        for r in 0..4 {
            for c in 0..4 {
                let mut row = vec![Gf::ZERO; 16];
                for k in 0..4 {
                    row[4 * k + c] += ai.0[r][k];
                    row[4 * r + k] += bi.0[k][c];
                }
                rows.push(row);
            }
        }
    }
    DMat::from_rows(16, rows)
        .nullspace(f)
        .iter()
        .map(|v| unflatten(v))
        .collect()
}

struct Echelon {
    rows: Vec<(Vec<Gf>, usize)>,
}

impl Echelon {
    /// Reduces v; returns true and stores it if it was independent.
    fn insert(&mut self, mut v: Vec<Gf>, f: &Field) -> bool {
        for (r, p) in &self.rows {
            let c = v[*p];
            if !c.is_zero() {
                for (x, &y) in v.iter_mut().zip(r) {
                    *x += f.mul(c, y);
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for (r, _) in self.rows.iter_mut() {
            let c = r[p];
            if !c.is_zero() {
                for (x, &y) in r.iter_mut().zip(&v) {
                    *x += f.mul(c, y);
                }
            }
        }
        self.rows.push((v, p));
        true
    }
}

/// Dimension of the matrix algebra spanned by all words in `gens`.
pub fn enveloping_algebra_dim(gens: &[Mat4], f: &Field) -> usize {
    let mut ech = Echelon { rows: Vec::new() };
    let mut queue = vec![Mat4::IDENTITY];
    ech.insert(flatten(&Mat4::IDENTITY), f);
    while let Some(m) = queue.pop() {
        for g in gens {
            let p = m.mul(g, f);
            if ech.insert(flatten(&p), f) {
                if ech.rows.len() == 16 {
                    return 16;
                }
                queue.push(p);
            }
        }
    }
    ech.rows.len()
}

/// True when the generated algebra is the full matrix algebra, which over
/// a finite field is equivalent to absolute irreducibility.
pub fn is_absolutely_irreducible(gens: &[Mat4], f: &Field) -> bool {
    enveloping_algebra_dim(gens, f) == 16
}

/// Whether the module is isomorphic to its image under x -> x^(2^d), which
/// for an absolutely irreducible module means it can be written over
/// GF(2^d). `d` must be a proper divisor of n.
pub fn written_over_subfield(gens: &[Mat4], d: u32, f: &Field) -> Result<bool> {
    if d == 0 || d >= f.n() || f.n() % d != 0 {
        return Err(Error::InvalidArgument(format!(
            "{d} is not a proper divisor of {}",
            f.n()
        )));
    }
    if gens.iter().any(|g| !f.in_subfield(g.trace(), d)) {
        return Ok(false);
    }
    let twisted: Vec<Mat4> = gens.iter().map(|g| g.frob(d, f)).collect();
    let homs = module_hom_space(gens, &twisted, f);
    if homs.iter().any(|h| !h.det(f).is_zero()) {
        return Ok(true);
    }
    if homs.len() >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        for _ in 0..64 {
            let h = homs
                .iter()
                .fold(Mat4::ZERO, |acc, b| acc.add(&b.scale(f.random(&mut rng), f)));
            if !h.det(f).is_zero() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// For a uniserial module with one-dimensional factors, the unique chain
/// V1 < V2 < V3 of submodules.
pub fn composition_series(gens: &[Mat4], f: &Field) -> Result<Vec<Subspace>> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("empty generating set".into()));
    }
    let eigen: Vec<Vec<Gf>> = gens
        .iter()
        .map(|g| f.poly_roots(&charpoly(g, f)))
        .collect::<Result<_>>()?;
    if eigen.iter().any(|e| e.is_empty()) {
        return Err(Error::NotUniserial);
    }
    let mut chain = Vec::new();
    let mut w = Subspace::zero();
    for k in 0..3 {
        let ann = w.annihilator(f);
        let mut total = w.clone();
        let mut combo = vec![0usize; gens.len()];
        loop {
            let mut rows = Vec::new();
            for (g, (e, &i)) in gens.iter().zip(eigen.iter().zip(&combo)) {
                let h = g.add(&Mat4::diag([e[i]; 4]));
                for a in ann.basis() {
                    rows.push((0..4).map(|r| super::dot(&h.0[r], a, f)).collect());
                }
            }
            let sols: Vec<Vec4> = DMat::from_rows(4, rows)
                .nullspace(f)
                .into_iter()
                .map(|v| [v[0], v[1], v[2], v[3]])
                .collect();
            total = total.sum(&Subspace::span(&sols, f), f);
            // odometer over eigenvalue choices
            let mut pos = 0;
            while pos < combo.len() {
                combo[pos] += 1;
                if combo[pos] < eigen[pos].len() {
                    break;
                }
                combo[pos] = 0;
                pos += 1;
            }
            if pos == combo.len() {
                break;
            }
        }
        if total.dim() != k + 1 {
            return Err(Error::NotUniserial);
        }
        w = total;
        chain.push(w.clone());
    }
    Ok(chain)
}
