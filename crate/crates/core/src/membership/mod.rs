//! Constructive membership testing in the standard copy.
//!
//! After a one-off preprocessing step that builds generators of the two
//! standard unipotent radicals, any element of the group can be written as
//! a straight-line program in the input generators.

pub mod bipoly;
pub mod mapping;
pub mod rewrite;
pub mod solve;
pub mod stdgen;

pub use mapping::{dlog_nanos, find_mapping_element, stabiliser_element};
pub use rewrite::{element_to_slp_round, express_in_stabiliser};
pub use solve::{monitor, solve_equation, Instance, MonitorSnapshot};
pub use stdgen::{preprocess, Radical, StandardGenerators};

use crate::error::{Error, Result};
use crate::lasvegas;
use crate::linalg::Mat4;
use crate::random::PrGenerator;
use crate::slp::Word;
use crate::szstd::Sz;

/// Lower bound on the success probability of one rewriting round.
const REWRITE_SUCCESS: f64 = 0.25;

pub struct Membership {
    sz: Sz,
    prg: PrGenerator,
    std: StandardGenerators,
    eps: f64,
}

/// A word together with its cost beyond what was already built.
#[derive(Clone, Debug)]
pub struct Rewritten {
    pub word: Word,
    /// Nodes not shared with the random-element state or the standard
    /// generators.
    pub incremental_len: usize,
}

impl Membership {
    /// Preprocesses a generating set of the standard copy.
    pub fn new(sz: &Sz, gens: &[Mat4], seed: u64, eps: f64) -> Result<Membership> {
        if gens.iter().any(|g| !sz.is_member(g)) {
            return Err(Error::NotInGroup);
        }
        let mut prg = PrGenerator::new(gens, seed, sz.field())?;
        let std = preprocess(sz, &mut prg, eps)?;
        Ok(Membership { sz: sz.clone(), prg, std, eps })
    }

    pub fn group(&self) -> &Sz {
        &self.sz
    }

    pub fn generators(&self) -> &[Mat4] {
        self.prg.generators()
    }

    pub fn standard_generators(&self) -> &StandardGenerators {
        &self.std
    }

    pub fn contains(&self, g: &Mat4) -> bool {
        self.sz.is_member(g)
    }

    pub fn element_to_slp(&mut self, g: &Mat4) -> Result<Word> {
        Ok(self.rewrite(g)?.word)
    }

    pub fn rewrite(&mut self, g: &Mat4) -> Result<Rewritten> {
        if !self.contains(g) {
            return Err(Error::NotInGroup);
        }
        let base: Vec<Word> = self
            .prg
            .state_words()
            .into_iter()
            .chain(self.std.words())
            .cloned()
            .collect();
        let budget = lasvegas::rounds_for(self.eps, REWRITE_SUCCESS);
        let (sz, std, prg) = (&self.sz, &self.std, &mut self.prg);
        let word = lasvegas::try_run(budget, || element_to_slp_round(sz, prg, std, g))?;
        let refs: Vec<&Word> = base.iter().collect();
        let incremental_len = word.node_count_beyond(&refs);
        Ok(Rewritten { word, incremental_len })
    }
}
