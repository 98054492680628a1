//! Random group elements by product replacement with an accumulator.
//!
//! Each element comes with a [`Word`] over the input generators. The words
//! share history through the DAG, so a draw adds O(1) nodes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Mat4;
use crate::slp::Word;

#[derive(Clone)]
pub struct PrGenerator {
    field: Field,
    gens: Vec<Mat4>,
    slots: Vec<(Mat4, Word)>,
    acc: (Mat4, Word),
    rng: ChaCha8Rng,
}

impl PrGenerator {
    pub fn new(gens: &[Mat4], seed: u64, f: &Field) -> Result<PrGenerator> {
        if gens.is_empty() {
            return Err(Error::InvalidArgument("empty generating set".into()));
        }
        if gens.iter().any(|g| g.inv(f).is_none()) {
            return Err(Error::Singular);
        }
        let n = gens.len();
        let slots = (0..(2 * n).max(10))
            .map(|i| (gens[i % n], Word::gen(i % n)))
            .collect();
        let mut pr = PrGenerator {
            field: f.clone(),
            gens: gens.to_vec(),
            slots,
            acc: (Mat4::IDENTITY, Word::identity()),
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..50 + 10 * n {
            pr.step();
        }
        Ok(pr)
    }

    pub fn generators(&self) -> &[Mat4] {
        &self.gens
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// All words currently held; anything a later word shares with these
    /// was already paid for.
    pub fn state_words(&self) -> Vec<&Word> {
        self.slots.iter().map(|s| &s.1).chain([&self.acc.1]).collect()
    }

    fn step(&mut self) {
        let f = &self.field;
        let k = self.slots.len();
        let i = self.rng.gen_range(0..k);
        let j = (i + self.rng.gen_range(1..k)) % k;
        let inverse = self.rng.gen_bool(0.5);
        let (mj, wj) = &self.slots[j];
        let (mj, wj) = if inverse { (mj.inverse(f), wj.inv()) } else { (*mj, wj.clone()) };
        let (mi, wi) = &self.slots[i];
        let new = if self.rng.gen_bool(0.5) {
            (mj.mul(mi, f), wj.mul(wi))
        } else {
            (mi.mul(&mj, f), wi.mul(&wj))
        };
        self.acc = (self.acc.0.mul(&new.0, f), self.acc.1.mul(&new.1));
        self.slots[i] = new;
    }

    /// Next random element with its word.
    pub fn next_element(&mut self) -> (Mat4, Word) {
        self.step();
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MatGroup;
    use crate::szstd::Sz;

    #[test]
    fn words_evaluate_to_elements() {
        let sz = Sz::new(2).unwrap();
        let f = sz.field();
        let gens = sz.generators();
        let mut pr = PrGenerator::new(&gens, 1, f).unwrap();
        for _ in 0..50 {
            let (g, w) = pr.next_element();
            assert_eq!(w.evaluate(&MatGroup(f), &gens).unwrap(), g);
            assert!(sz.is_member(&g));
        }
    }

    #[test]
    fn seeded_streams_are_reproducible() {
        let sz = Sz::new(1).unwrap();
        let gens = sz.generators();
        let mut a = PrGenerator::new(&gens, 7, sz.field()).unwrap();
        let mut b = PrGenerator::new(&gens, 7, sz.field()).unwrap();
        for _ in 0..20 {
            assert_eq!(a.next_element().0, b.next_element().0);
        }
    }

    #[test]
    fn words_grow_by_a_constant_per_draw() {
        let sz = Sz::new(1).unwrap();
        let mut pr = PrGenerator::new(&sz.generators(), 3, sz.field()).unwrap();
        for _ in 0..100 {
            let state: Vec<Word> = pr.state_words().into_iter().cloned().collect();
            let refs: Vec<&Word> = state.iter().collect();
            let (_, w) = pr.next_element();
            assert!(w.node_count_beyond(&refs) <= 4);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let f = Field::new(1).unwrap();
        assert!(PrGenerator::new(&[], 0, &f).is_err());
        assert!(matches!(PrGenerator::new(&[Mat4::ZERO], 0, &f), Err(Error::Singular)));
    }
}
