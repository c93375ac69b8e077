//! Garside systems: the simple-element lattice of a balanced element,
//! complement and twist maps, and the spindle-type checks.

mod build;
mod builtins;
mod closure;
mod def;
pub mod validate;

pub use build::{build_system, build_system_with, BuildConfig};
pub use builtins::*;
pub use closure::{ClassInfo, ClosureCaps, Rewriter};
pub use def::SystemDef;

use crate::error::ClosureCapExceeded;
use crate::word::AtomId;
use crate::SimpleId;

/// One simple element: a divisor of the Garside element.
#[derive(Debug, Clone)]
pub struct SimpleEntry {
    pub id: SimpleId,
    /// For the identity: empty. For delta: the designated delta word.
    /// For proper simples: the unique positive word in spindle systems,
    /// otherwise the minimal word under (length, lex).
    pub canonical_word: Vec<AtomId>,
    /// Every positive word representing the element, sorted.
    pub all_words: Vec<Vec<AtomId>>,
    /// Length of the canonical word.
    pub len: usize,
}

/// Node table of the trie over all simple words.
#[derive(Debug, Clone, Default)]
pub struct SimpleTrie {
    /// children[node * n_atoms + atom] = child node + 1, or 0 for none.
    children: Vec<u32>,
    accept: Vec<Option<SimpleId>>,
    n_atoms: usize,
}

impl SimpleTrie {
    pub fn new(n_atoms: usize) -> Self {
        SimpleTrie { children: vec![0; n_atoms], accept: vec![None], n_atoms }
    }

    pub fn insert(&mut self, word: &[AtomId], id: SimpleId) {
        let mut node = 0usize;
        for &a in word {
            let slot = node * self.n_atoms + a;
            if self.children[slot] == 0 {
                let fresh = self.accept.len();
                self.children.extend(std::iter::repeat(0).take(self.n_atoms));
                self.accept.push(None);
                self.children[slot] = fresh as u32;
                node = fresh;
            } else {
                node = self.children[slot] as usize;
            }
        }
        self.accept[node] = Some(id);
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn step(&self, node: usize, atom: AtomId) -> Option<usize> {
        let c = self.children[node * self.n_atoms + atom];
        if c == 0 {
            None
        } else {
            Some(c as usize)
        }
    }

    pub fn accept(&self, node: usize) -> Option<SimpleId> {
        self.accept[node]
    }

    pub fn node_count(&self) -> usize {
        self.accept.len()
    }
}

/// Immutable tables of a built Garside system. Construction happens in
/// [`build_system`]; afterwards the value is safe to share across threads.
#[derive(Debug)]
pub struct GarsideSystem {
    pub name: String,
    atoms: Vec<String>,
    simples: Vec<SimpleEntry>,
    /// SimpleId of each atom, indexed by AtomId.
    atom_simple: Vec<SimpleId>,
    /// AtomId of each atom-simple, None for non-atoms.
    simple_atom: Vec<Option<AtomId>>,
    left_div: Vec<bool>,
    right_div: Vec<bool>,
    meet_left: Vec<SimpleId>,
    meet_right: Vec<SimpleId>,
    join_left: Vec<SimpleId>,
    join_right: Vec<SimpleId>,
    /// Product table on simples: Some(id) iff the product is again simple.
    mult: Vec<Option<SimpleId>>,
    /// lquot[g * n + v] = w with g w = v, defined when g left-divides v.
    lquot: Vec<Option<SimpleId>>,
    dpartial: Vec<SimpleId>,
    dpartial_inv: Vec<SimpleId>,
    tau_simple: Vec<SimpleId>,
    tau_atoms: Vec<AtomId>,
    /// tau^r tables for every residue r in 0..ord.
    tau_simple_pow: Vec<Vec<SimpleId>>,
    tau_atom_pow: Vec<Vec<AtomId>>,
    ord: usize,
    len_min: usize,
    len_max: usize,
    homogeneous: bool,
    relations: Vec<(Vec<AtomId>, Vec<AtomId>)>,
    delta_word: Vec<AtomId>,
    trie: SimpleTrie,
    caps: ClosureCaps,
    /// Atom weights of a linear functional constant on relations with
    /// positive value on delta, when one exists.
    weight: Option<Vec<i64>>,
    weight_delta: i64,
    matrix_rep: Option<Vec<crate::laurent::LaurentMatrix>>,
}

/// Result of the spindle-type scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpindleCheck {
    Ok,
    /// First pair (in (SimpleId, SimpleId) lexicographic order) whose left
    /// or right gcd escapes {s, t, 1}, with the offending gcd.
    Witness { s: SimpleId, t: SimpleId, gcd: SimpleId },
}

impl GarsideSystem {
    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn n_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn n_simples(&self) -> usize {
        self.simples.len()
    }

    pub fn simples(&self) -> &[SimpleEntry] {
        &self.simples
    }

    pub fn simple(&self, id: SimpleId) -> &SimpleEntry {
        &self.simples[id]
    }

    pub fn identity(&self) -> SimpleId {
        0
    }

    pub fn delta(&self) -> SimpleId {
        self.simples.len() - 1
    }

    pub fn is_proper(&self, s: SimpleId) -> bool {
        s != self.identity() && s != self.delta()
    }

    pub fn atom_simple(&self, a: AtomId) -> SimpleId {
        self.atom_simple[a]
    }

    pub fn simple_as_atom(&self, s: SimpleId) -> Option<AtomId> {
        self.simple_atom[s]
    }

    /// The designated word for delta (the chain of the first atom, or the
    /// explicit delta word of a relation-form definition).
    pub fn delta_word(&self) -> &[AtomId] {
        &self.delta_word
    }

    pub fn word_of(&self, s: SimpleId) -> &[AtomId] {
        &self.simples[s].canonical_word
    }

    /// min / max word length of delta.
    pub fn len_min(&self) -> usize {
        self.len_min
    }

    pub fn len_max(&self) -> usize {
        self.len_max
    }

    pub fn order(&self) -> usize {
        self.ord
    }

    pub fn homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn relations(&self) -> &[(Vec<AtomId>, Vec<AtomId>)] {
        &self.relations
    }

    pub fn closure_caps(&self) -> ClosureCaps {
        self.caps
    }

    pub fn weight(&self) -> Option<(&[i64], i64)> {
        self.weight.as_ref().map(|w| (w.as_slice(), self.weight_delta))
    }

    pub fn matrix_rep(&self) -> Option<&[crate::laurent::LaurentMatrix]> {
        self.matrix_rep.as_deref()
    }

    #[inline]
    pub fn divides_left(&self, s: SimpleId, t: SimpleId) -> bool {
        self.left_div[s * self.simples.len() + t]
    }

    #[inline]
    pub fn divides_right(&self, s: SimpleId, t: SimpleId) -> bool {
        self.right_div[s * self.simples.len() + t]
    }

    #[inline]
    pub fn meet_left(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.meet_left[s * self.simples.len() + t]
    }

    #[inline]
    pub fn meet_right(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.meet_right[s * self.simples.len() + t]
    }

    #[inline]
    pub fn join_left(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.join_left[s * self.simples.len() + t]
    }

    #[inline]
    pub fn join_right(&self, s: SimpleId, t: SimpleId) -> SimpleId {
        self.join_right[s * self.simples.len() + t]
    }

    /// Product of two simples when the product is again a divisor of delta.
    #[inline]
    pub fn mult(&self, s: SimpleId, t: SimpleId) -> Option<SimpleId> {
        self.mult[s * self.simples.len() + t]
    }

    /// Left quotient: the unique w with g w = v, when g left-divides v.
    #[inline]
    pub fn lquot(&self, g: SimpleId, v: SimpleId) -> Option<SimpleId> {
        self.lquot[g * self.simples.len() + v]
    }

    /// Right complement: s -> s \ delta.
    #[inline]
    pub fn dpartial(&self, s: SimpleId) -> SimpleId {
        self.dpartial[s]
    }

    /// Left complement: s -> delta / s; the inverse of `dpartial`.
    #[inline]
    pub fn dpartial_inv(&self, s: SimpleId) -> SimpleId {
        self.dpartial_inv[s]
    }

    #[inline]
    pub fn tau(&self, s: SimpleId) -> SimpleId {
        self.tau_simple[s]
    }

    #[inline]
    pub fn tau_atom(&self, a: AtomId) -> AtomId {
        self.tau_atoms[a]
    }

    /// tau^e on a simple, for any integer exponent.
    #[inline]
    pub fn tau_pow(&self, s: SimpleId, e: i64) -> SimpleId {
        self.tau_simple_pow[self.residue(e)][s]
    }

    /// tau^e on an atom, for any integer exponent.
    #[inline]
    pub fn tau_pow_atom(&self, a: AtomId, e: i64) -> AtomId {
        self.tau_atom_pow[self.residue(e)][a]
    }

    #[inline]
    fn residue(&self, e: i64) -> usize {
        e.rem_euclid(self.ord as i64) as usize
    }

    /// (partial, partial-inverse, tau) images of one simple.
    pub fn complement_maps(&self, s: SimpleId) -> (SimpleId, SimpleId, SimpleId) {
        (self.dpartial[s], self.dpartial_inv[s], self.tau_simple[s])
    }

    /// (left gcd, right gcd, lcm in the left order, lcm in the right order).
    pub fn lattice_meet_join(
        &self,
        s: SimpleId,
        t: SimpleId,
    ) -> (SimpleId, SimpleId, SimpleId, SimpleId) {
        (self.meet_left(s, t), self.meet_right(s, t), self.join_left(s, t), self.join_right(s, t))
    }

    /// Minimal n >= 1 with tau^n the identity on atoms.
    pub fn system_order(&self) -> usize {
        self.ord
    }

    /// Scan both gcd tables for the spindle condition.
    pub fn spindle_check(&self) -> SpindleCheck {
        let n = self.simples.len();
        let id = self.identity();
        for s in 0..n {
            for t in 0..n {
                for gcd in [self.meet_left(s, t), self.meet_right(s, t)] {
                    if gcd != s && gcd != t && gcd != id {
                        return SpindleCheck::Witness { s, t, gcd };
                    }
                }
            }
        }
        SpindleCheck::Ok
    }

    pub fn is_spindle(&self) -> bool {
        matches!(self.spindle_check(), SpindleCheck::Ok)
    }

    /// Closure-based equivalence of positive words (fresh rewriter per call,
    /// with caps widened to accommodate the inputs).
    pub fn words_equivalent(
        &self,
        u: &[AtomId],
        v: &[AtomId],
    ) -> Result<bool, ClosureCapExceeded> {
        let caps = ClosureCaps {
            max_word_len: self.caps.max_word_len.max(2 * u.len().max(v.len())),
            max_class_size: self.caps.max_class_size,
        };
        let rw = Rewriter::new(&self.relations, caps);
        rw.equivalent(u, v)
    }

    /// Trie lookup of a positive word among all simple words.
    pub fn trie_lookup(&self, word: &[AtomId]) -> Option<SimpleId> {
        let mut node = self.trie.root();
        for &a in word {
            node = self.trie.step(node, a)?;
        }
        self.trie.accept(node)
    }

    pub fn trie(&self) -> &SimpleTrie {
        &self.trie
    }

    /// Render a positive word with this system's atom names.
    pub fn render_atoms(&self, w: &[AtomId]) -> String {
        w.iter().map(|&a| self.atoms[a].as_str()).collect::<Vec<_>>().join(" ")
    }

    /// Compact factor rendering: letters concatenated without spaces.
    pub fn render_factor(&self, s: SimpleId) -> String {
        self.simples[s].canonical_word.iter().map(|&a| self.atoms[a].as_str()).collect()
    }

    /// Weight of a signed letter under the invariant functional, if any.
    pub fn letter_weight(&self, atom: AtomId, positive: bool) -> Option<i64> {
        self.weight.as_ref().map(|w| if positive { w[atom] } else { -w[atom] })
    }
}

/// All data assembled by the builder; crate-private constructor.
pub(crate) struct SystemParts {
    pub name: String,
    pub atoms: Vec<String>,
    pub simples: Vec<SimpleEntry>,
    pub atom_simple: Vec<SimpleId>,
    pub simple_atom: Vec<Option<AtomId>>,
    pub left_div: Vec<bool>,
    pub right_div: Vec<bool>,
    pub meet_left: Vec<SimpleId>,
    pub meet_right: Vec<SimpleId>,
    pub join_left: Vec<SimpleId>,
    pub join_right: Vec<SimpleId>,
    pub mult: Vec<Option<SimpleId>>,
    pub lquot: Vec<Option<SimpleId>>,
    pub dpartial: Vec<SimpleId>,
    pub dpartial_inv: Vec<SimpleId>,
    pub tau_simple: Vec<SimpleId>,
    pub tau_atoms: Vec<AtomId>,
    pub ord: usize,
    pub len_min: usize,
    pub len_max: usize,
    pub homogeneous: bool,
    pub relations: Vec<(Vec<AtomId>, Vec<AtomId>)>,
    pub delta_word: Vec<AtomId>,
    pub trie: SimpleTrie,
    pub caps: ClosureCaps,
    pub weight: Option<Vec<i64>>,
    pub weight_delta: i64,
    pub matrix_rep: Option<Vec<crate::laurent::LaurentMatrix>>,
}

impl GarsideSystem {
    pub(crate) fn from_parts(p: SystemParts) -> Self {
        let ord = p.ord;
        let mut tau_simple_pow = Vec::with_capacity(ord);
        let mut tau_atom_pow = Vec::with_capacity(ord);
        let n = p.simples.len();
        let mut cur_s: Vec<SimpleId> = (0..n).collect();
        let mut cur_a: Vec<AtomId> = (0..p.atoms.len()).collect();
        for _ in 0..ord {
            tau_simple_pow.push(cur_s.clone());
            tau_atom_pow.push(cur_a.clone());
            cur_s = cur_s.iter().map(|&s| p.tau_simple[s]).collect();
            cur_a = cur_a.iter().map(|&a| p.tau_atoms[a]).collect();
        }
        GarsideSystem {
            name: p.name,
            atoms: p.atoms,
            simples: p.simples,
            atom_simple: p.atom_simple,
            simple_atom: p.simple_atom,
            left_div: p.left_div,
            right_div: p.right_div,
            meet_left: p.meet_left,
            meet_right: p.meet_right,
            join_left: p.join_left,
            join_right: p.join_right,
            mult: p.mult,
            lquot: p.lquot,
            dpartial: p.dpartial,
            dpartial_inv: p.dpartial_inv,
            tau_simple: p.tau_simple,
            tau_atoms: p.tau_atoms,
            tau_simple_pow,
            tau_atom_pow,
            ord: p.ord,
            len_min: p.len_min,
            len_max: p.len_max,
            homogeneous: p.homogeneous,
            relations: p.relations,
            delta_word: p.delta_word,
            trie: p.trie,
            caps: p.caps,
            weight: p.weight,
            weight_delta: p.weight_delta,
            matrix_rep: p.matrix_rep,
        }
    }
}
