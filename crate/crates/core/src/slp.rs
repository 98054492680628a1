//! Straight-line programs.
//!
//! [`Word`] is the builder: an immutable DAG whose nodes are shared by
//! reference, so products of already-built words cost one node. A word is
//! flattened into an [`Slp`], a list of instructions over the generators,
//! which is what gets printed, parsed and evaluated.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Arithmetic needed to evaluate a program.
pub trait Group {
    type Elem: Clone;
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, e: i64) -> Self::Elem {
        let mut b = if e < 0 { self.inv(a) } else { a.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// a^b = b⁻¹ a b.
    fn conj(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(b), a), b)
    }
}

#[derive(Debug)]
enum Node {
    Gen(usize),
    Mul(Word, Word),
    Pow(Word, i64),
    Conj(Word, Word),
}

#[derive(Clone, Debug)]
pub struct Word(Arc<Node>);

fn placeholder() -> Word {
    static LEAF: OnceLock<Word> = OnceLock::new();
    LEAF.get_or_init(|| Word(Arc::new(Node::Gen(0)))).clone()
}

fn take_children(node: &mut Node, out: &mut Vec<Word>) {
    match node {
        Node::Gen(_) => {}
        Node::Pow(a, _) => out.push(std::mem::replace(a, placeholder())),
        Node::Mul(a, b) | Node::Conj(a, b) => {
            out.push(std::mem::replace(a, placeholder()));
            out.push(std::mem::replace(b, placeholder()));
        }
    }
}

// Histories of random elements form chains far deeper than the stack, so
// the default recursive drop is replaced by an explicit worklist.
impl Drop for Node {
    fn drop(&mut self) {
        let mut stack = Vec::new();
        take_children(self, &mut stack);
        while let Some(w) = stack.pop() {
            if let Ok(mut node) = Arc::try_unwrap(w.0) {
                take_children(&mut node, &mut stack);
            }
        }
    }
}

impl Word {
    pub fn gen(k: usize) -> Word {
        Word(Arc::new(Node::Gen(k)))
    }

    pub fn identity() -> Word {
        Word::gen(0).pow(0)
    }

    pub fn mul(&self, o: &Word) -> Word {
        Word(Arc::new(Node::Mul(self.clone(), o.clone())))
    }

    pub fn pow(&self, e: i64) -> Word {
        if e == 1 {
            return self.clone();
        }
        Word(Arc::new(Node::Pow(self.clone(), e)))
    }

    pub fn inv(&self) -> Word {
        self.pow(-1)
    }

    /// self^y = y⁻¹ self y.
    pub fn conj(&self, y: &Word) -> Word {
        Word(Arc::new(Node::Conj(self.clone(), y.clone())))
    }

    /// [a, b] = a⁻¹ b⁻¹ a b.
    pub fn comm(a: &Word, b: &Word) -> Word {
        a.inv().mul(&b.inv()).mul(a).mul(b)
    }

    fn key(&self) -> *const Node {
        Arc::as_ptr(&self.0)
    }

    fn children(&self) -> Vec<&Word> {
        match &*self.0 {
            Node::Gen(_) => vec![],
            Node::Pow(a, _) => vec![a],
            Node::Mul(a, b) | Node::Conj(a, b) => vec![a, b],
        }
    }

    fn reachable(roots: &[&Word]) -> HashSet<*const Node> {
        let mut seen = HashSet::new();
        let mut stack: Vec<&Word> = roots.to_vec();
        while let Some(w) = stack.pop() {
            if seen.insert(w.key()) {
                stack.extend(w.children());
            }
        }
        seen
    }

    /// Number of distinct nodes reachable from this word.
    pub fn node_count(&self) -> usize {
        Word::reachable(&[self]).len()
    }

    /// Number of nodes reachable from this word but not from any of
    /// `base`: the cost of this word on top of programs already built.
    pub fn node_count_beyond(&self, base: &[&Word]) -> usize {
        let old = Word::reachable(base);
        Word::reachable(&[self]).difference(&old).count()
    }

    /// Flattens into a program, sharing identical subterms.
    pub fn to_slp(&self) -> Slp {
        let mut index: HashMap<*const Node, usize> = HashMap::new();
        let mut structural: HashMap<Instr, usize> = HashMap::new();
        let mut instrs = Vec::new();
        // Iterative post-order; chains can be far deeper than the stack.
        let mut stack: Vec<(&Word, bool)> = vec![(self, false)];
        while let Some((w, expanded)) = stack.pop() {
            if index.contains_key(&w.key()) {
                continue;
            }
            if !expanded {
                stack.push((w, true));
                for c in w.children() {
                    if !index.contains_key(&c.key()) {
                        stack.push((c, false));
                    }
                }
                continue;
            }
            let ix = |c: &Word| index[&c.key()];
            let instr = match &*w.0 {
                Node::Gen(k) => Instr::Ref(*k),
                Node::Mul(a, b) => Instr::Mul(ix(a), ix(b)),
                Node::Pow(a, e) => Instr::Pow(ix(a), *e),
                Node::Conj(a, b) => Instr::Conj(ix(a), ix(b)),
            };
            let slot = *structural.entry(instr).or_insert_with(|| {
                instrs.push(instr);
                instrs.len() - 1
            });
            index.insert(w.key(), slot);
        }
        Slp { result: index[&self.key()], instrs }
    }

    /// Rebuilds a word from a flat program.
    pub fn from_slp(slp: &Slp) -> Word {
        let mut nodes: Vec<Word> = Vec::with_capacity(slp.instrs.len());
        for ins in &slp.instrs {
            let w = match *ins {
                Instr::Ref(k) => Word::gen(k),
                Instr::Mul(a, b) => nodes[a].mul(&nodes[b]),
                Instr::Pow(a, e) => Word(Arc::new(Node::Pow(nodes[a].clone(), e))),
                Instr::Conj(a, b) => nodes[a].conj(&nodes[b]),
            };
            nodes.push(w);
        }
        nodes[slp.result].clone()
    }

    /// Replaces generator k by `images[k]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let slp = self.to_slp();
        let mut nodes: Vec<Word> = Vec::with_capacity(slp.instrs.len());
        for ins in &slp.instrs {
            let w = match *ins {
                Instr::Ref(k) => images[k].clone(),
                Instr::Mul(a, b) => nodes[a].mul(&nodes[b]),
                Instr::Pow(a, e) => Word(Arc::new(Node::Pow(nodes[a].clone(), e))),
                Instr::Conj(a, b) => nodes[a].conj(&nodes[b]),
            };
            nodes.push(w);
        }
        nodes[slp.result].clone()
    }

    pub fn evaluate<G: Group>(&self, g: &G, images: &[G::Elem]) -> Result<G::Elem> {
        self.to_slp().evaluate(g, images)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Instr {
    /// The k-th generator.
    Ref(usize),
    Mul(usize, usize),
    Pow(usize, i64),
    /// s_i^(s_j) = s_j⁻¹ s_i s_j.
    Conj(usize, usize),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Slp {
    pub instrs: Vec<Instr>,
    pub result: usize,
}

impl Slp {
    pub fn len(&self) -> usize {
        self.instrs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.instrs.is_empty()
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.instrs
            .iter()
            .filter_map(|i| match i {
                Instr::Ref(k) => Some(*k),
                _ => None,
            })
            .max()
    }

    pub fn evaluate<G: Group>(&self, g: &G, images: &[G::Elem]) -> Result<G::Elem> {
        let mut vals: Vec<G::Elem> = Vec::with_capacity(self.instrs.len());
        for ins in &self.instrs {
            let v = match *ins {
                Instr::Ref(k) => images
                    .get(k)
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument(format!("generator {k} out of range")))?,
                Instr::Mul(a, b) => g.mul(&vals[a], &vals[b]),
                Instr::Pow(a, e) => g.pow(&vals[a], e),
                Instr::Conj(a, b) => g.conj(&vals[a], &vals[b]),
            };
            vals.push(v);
        }
        vals.get(self.result)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument("empty program".into()))
    }

    pub fn parse(text: &str) -> Result<Slp> {
        let mut instrs = Vec::new();
        let mut result = None;
        for (ln, line) in text.lines().enumerate() {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.is_empty() || toks[0].starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: {line:?}", ln + 1));
            let idx = |s: &str| -> Result<usize> {
                let i: usize = s.parse().map_err(|_| bad())?;
                if i >= instrs.len() {
                    return Err(bad());
                }
                Ok(i)
            };
            let ins = match (toks[0], toks.len()) {
                ("REF", 2) => Instr::Ref(toks[1].parse().map_err(|_| bad())?),
                ("MUL", 3) => Instr::Mul(idx(toks[1])?, idx(toks[2])?),
                ("POW", 3) => Instr::Pow(idx(toks[1])?, toks[2].parse().map_err(|_| bad())?),
                ("CONJ", 3) => Instr::Conj(idx(toks[1])?, idx(toks[2])?),
                ("RESULT", 2) => {
                    result = Some(idx(toks[1])?);
                    continue;
                }
                _ => return Err(bad()),
            };
            instrs.push(ins);
        }
        let result = result.ok_or_else(|| Error::Parse("missing RESULT line".into()))?;
        Ok(Slp { instrs, result })
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.instrs {
            match ins {
                Instr::Ref(k) => writeln!(f, "REF {k}")?,
                Instr::Mul(a, b) => writeln!(f, "MUL {a} {b}")?,
                Instr::Pow(a, e) => writeln!(f, "POW {a} {e}")?,
                Instr::Conj(a, b) => writeln!(f, "CONJ {a} {b}")?,
            }
        }
        writeln!(f, "RESULT {}", self.result)
    }
}
