use super::Vec4;
use crate::field::{Field, Gf};

/// Small dense matrix for solving linear systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DMat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Gf>>,
}

impl DMat {
    pub fn zeros(rows: usize, cols: usize) -> DMat {
        DMat { rows, cols, data: vec![vec![Gf::ZERO; cols]; rows] }
    }

    pub fn from_rows(cols: usize, data: Vec<Vec<Gf>>) -> DMat {
        debug_assert!(data.iter().all(|r| r.len() == cols));
        DMat { rows: data.len(), cols, data }
    }

    /// In-place reduced row echelon form; returns pivot columns.
    pub fn rref(&mut self, f: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.data[i][c].is_zero()) else {
                continue;
            };
            self.data.swap(r, p);
            let inv = f.inv(self.data[r][c]);
            for x in self.data[r].iter_mut() {
                *x = f.mul(*x, inv);
            }
            let pivot_row = self.data[r].clone();
            for (i, row) in self.data.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let k = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x += f.mul(k, y);
                }
            }
            pivots.push(c);
            r += 1;
        }
        self.data.truncate(self.rows);
        pivots
    }

    pub fn rank(&self, f: &Field) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of {v : A v = 0}, one vector per free column in increasing
    /// order, with that free coordinate set to 1.
    pub fn nullspace(&self, f: &Field) -> Vec<Vec<Gf>> {
        let mut a = self.clone();
        let pivots = a.rref(f);
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![Gf::ZERO; self.cols];
            v[free] = Gf::ONE;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = a.data[r][free];
            }
            out.push(v);
        }
        out
    }
}

/// A subspace of the natural module, stored as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Vec<Vec4>,
}

impl Subspace {
    pub fn span(vs: &[Vec4], f: &Field) -> Subspace {
        let mut m = DMat::from_rows(4, vs.iter().map(|v| v.to_vec()).collect());
        let rank = m.rref(f).len();
        let basis = m.data[..rank]
            .iter()
            .map(|r| [r[0], r[1], r[2], r[3]])
            .collect();
        Subspace { basis }
    }

    pub fn zero() -> Subspace {
        Subspace { basis: Vec::new() }
    }

    pub fn whole(f: &Field) -> Subspace {
        Subspace::span(&super::Mat4::IDENTITY.0, f)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec4] {
        &self.basis
    }

    pub fn contains(&self, v: &Vec4, f: &Field) -> bool {
        let mut vs = self.basis.clone();
        vs.push(*v);
        Subspace::span(&vs, f).dim() == self.dim()
    }

    /// {x : b·x = 0 for every basis vector b}.
    pub fn annihilator(&self, f: &Field) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::whole(f);
        }
        let m = DMat::from_rows(4, self.basis.iter().map(|v| v.to_vec()).collect());
        let ns: Vec<Vec4> = m
            .nullspace(f)
            .into_iter()
            .map(|v| [v[0], v[1], v[2], v[3]])
            .collect();
        Subspace::span(&ns, f)
    }

    pub fn sum(&self, o: &Subspace, f: &Field) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend_from_slice(&o.basis);
        Subspace::span(&vs, f)
    }

    pub fn intersect(&self, o: &Subspace, f: &Field) -> Subspace {
        self.annihilator(f).sum(&o.annihilator(f), f).annihilator(f)
    }

    pub fn image(&self, g: &super::Mat4, f: &Field) -> Subspace {
        let vs: Vec<Vec4> = self.basis.iter().map(|v| g.act(v, f)).collect();
        Subspace::span(&vs, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn nullspace_vectors_are_solutions() {
        let f = Field::new(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for rows in 1..6 {
            let mut a = DMat::zeros(rows, 7);
            for r in a.data.iter_mut() {
                for x in r.iter_mut() {
                    *x = f.random(&mut rng);
                }
            }
            let ns = a.nullspace(&f);
            assert_eq!(ns.len() + a.rank(&f), 7);
            for v in ns {
                for r in &a.data {
                    let s = r.iter().zip(&v).fold(Gf::ZERO, |acc, (&x, &y)| acc + f.mul(x, y));
                    assert!(s.is_zero());
                }
            }
        }
    }

    proptest! {
        #[test]
        fn intersection_dimension_formula(seed in any::<u64>(), da in 0usize..=4, db in 0usize..=4) {
            let f = Field::new(1).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut rv = |k: usize| -> Vec<Vec4> {
                (0..k).map(|_| [f.random(&mut rng), f.random(&mut rng), f.random(&mut rng), f.random(&mut rng)]).collect()
            };
            let a = Subspace::span(&rv(da), &f);
            let b = Subspace::span(&rv(db), &f);
            let i = a.intersect(&b, &f);
            prop_assert_eq!(a.dim() + b.dim(), a.sum(&b, &f).dim() + i.dim());
            for v in i.basis() {
                prop_assert!(a.contains(v, &f) && b.contains(v, &f));
            }
        }
    }
}
