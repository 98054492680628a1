use super::{DMat, Mat4, Subspace, Vec4};
use crate::error::{Error, Result};
use crate::field::{Field, Gf, Poly};

const PERMS: [[usize; 4]; 24] = {
    let mut out = [[0; 4]; 24];
    let mut k = 0;
    let mut a = 0;
    while a < 4 {
        let mut b = 0;
        while b < 4 {
            let mut c = 0;
            while c < 4 {
                if a != b && a != c && b != c {
                    out[k] = [a, b, c, 6 - a - b - c];
                    k += 1;
                }
                c += 1;
            }
            b += 1;
        }
        a += 1;
    }
    out
};

/// det of a 4x4 matrix of polynomials. No signs in characteristic 2.
pub(crate) fn poly_det4(m: &[[Poly; 4]; 4], f: &Field) -> Poly {
    let mut acc = Poly::zero();
    for p in PERMS.iter() {
        let mut term = m[0][p[0]].clone();
        for (i, &j) in p.iter().enumerate().skip(1) {
            if term.is_zero() {
                break;
            }
            term = term.mul(&m[i][j], f);
        }
        acc = acc.add(&term);
    }
    acc
}

/// det(xI - g).
pub fn charpoly(g: &Mat4, f: &Field) -> Poly {
    let m: [[Poly; 4]; 4] = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            if i == j {
                Poly::new(vec![g.0[i][j], Gf::ONE])
            } else {
                Poly::constant(g.0[i][j])
            }
        })
    });
    poly_det4(&m, f)
}

fn left_eigenspace(g: &Mat4, mu: Gf, f: &Field) -> Subspace {
    let h = g.add(&Mat4::diag([mu; 4]));
    let a = DMat::from_rows(4, (0..4).map(|i| (0..4).map(|r| h.0[r][i]).collect()).collect());
    let vs: Vec<Vec4> = a.nullspace(f).into_iter().map(|v| [v[0], v[1], v[2], v[3]]).collect();
    Subspace::span(&vs, f)
}

/// Eigenvalues in the field, each with its left eigenspace {v : v·g = μv}.
pub fn eigen_data(g: &Mat4, f: &Field) -> Result<Vec<(Gf, Subspace)>> {
    let roots = f.poly_roots(&charpoly(g, f))?;
    Ok(roots.into_iter().map(|mu| (mu, left_eigenspace(g, mu, f))).collect())
}

/// The torus eigenvalue pattern (λ^(t+1), λ, λ⁻¹, λ^(-t-1)).
pub fn torus_pattern(lambda: Gf, f: &Field) -> Vec4 {
    let t = f.t() as i64;
    [f.pow(lambda, t + 1), lambda, f.inv(lambda), f.pow(lambda, -t - 1)]
}

/// Returns (x, λ) with x g x⁻¹ = diag(λ^(t+1), λ, λ⁻¹, λ^(-t-1)).
///
/// Rows of x are eigenvectors, each scaled so its first nonzero entry is 1.
/// Among admissible λ the one with the smallest encoding is chosen.
pub fn diagonalise_torus(g: &Mat4, f: &Field) -> Result<(Mat4, Gf)> {
    let data = eigen_data(g, f)?;
    if data.len() != 4 || data.iter().any(|(_, s)| s.dim() != 1) {
        return Err(Error::NotTorusConjugate);
    }
    let mut eigen: Vec<Gf> = data.iter().map(|d| d.0).collect();
    eigen.sort();
    let lambda = eigen
        .iter()
        .copied()
        .filter(|&l| {
            let mut p = torus_pattern(l, f).to_vec();
            p.sort();
            p == eigen
        })
        .min()
        .ok_or(Error::NotTorusConjugate)?;
    let pattern = torus_pattern(lambda, f);
    let mut x = Mat4::ZERO;
    for (i, mu) in pattern.iter().enumerate() {
        let v = data.iter().find(|d| d.0 == *mu).unwrap().1.basis()[0];
        let lead = *v.iter().find(|c| !c.is_zero()).unwrap();
        x.0[i] = super::scale_vec(&v, f.inv(lead), f);
    }
    Ok((x, lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn charpoly_of_diagonal() {
        let f = Field::new(2).unwrap();
        let d = [Gf(3), Gf(5), Gf(7), Gf(3)];
        let p = charpoly(&Mat4::diag(d), &f);
        let expect = d
            .iter()
            .fold(Poly::constant(Gf::ONE), |acc, &r| acc.mul(&Poly::linear(r), &f));
        assert_eq!(p, expect);
    }

    #[test]
    fn charpoly_constant_term_is_det() {
        let f = Field::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let g = Mat4::from_fn(|_, _| f.random(&mut rng));
            assert_eq!(charpoly(&g, &f).coeff(0), g.det(&f));
            assert_eq!(charpoly(&g, &f).coeff(3), g.trace());
        }
    }

    #[test]
    fn diagonalises_conjugated_torus_elements() {
        let f = Field::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..30 {
            let lam = f.random_unit(&mut rng);
            if lam == Gf::ONE {
                continue;
            }
            let d = Mat4::diag(torus_pattern(lam, &f));
            let y = loop {
                let y = Mat4::from_fn(|_, _| f.random(&mut rng));
                if y.inv(&f).is_some() {
                    break y;
                }
            };
            let g = d.conj(&y, &f);
            let (x, l) = diagonalise_torus(&g, &f).unwrap();
            let back = x.mul(&g, &f).mul(&x.inverse(&f), &f);
            assert_eq!(back, Mat4::diag(torus_pattern(l, &f)));
            assert!(l == lam || l == f.inv(lam) || l == f.pow(lam, f.t() as i64 + 1) || l == f.pow(lam, -(f.t() as i64) - 1));
        }
    }

    #[test]
    fn rejects_non_torus_elements() {
        let f = Field::new(1).unwrap();
        assert!(matches!(diagonalise_torus(&Mat4::IDENTITY, &f), Err(Error::NotTorusConjugate)));
        let j = Mat4::diag([Gf(2), Gf(2), Gf(3), Gf(4)]);
        assert!(diagonalise_torus(&j, &f).is_err());
    }
}
