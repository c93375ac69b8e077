//! Left Garside normal form: a table-driven greedy reference algorithm and
//! the four-stage pipeline (negative-letter elimination, delta extraction,
//! simple read-off) that mirrors the bounded-state stream programs.

use crate::oracle::{Backend, FcScan};
use crate::system::GarsideSystem;
use crate::word::{AtomId, Letter, Word};
use crate::{error::WordError, SimpleId};

/// Left delta-normal form: delta power `p` followed by proper simple
/// factors, left-greedy at every junction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub p: i64,
    pub factors: Vec<SimpleId>,
}

impl NormalForm {
    pub fn delta_power(p: i64) -> Self {
        NormalForm { p, factors: Vec::new() }
    }

    pub fn inf(&self) -> i64 {
        self.p
    }

    pub fn sup(&self) -> i64 {
        self.p + self.factors.len() as i64
    }

    pub fn cl(&self) -> usize {
        self.factors.len()
    }

    pub fn is_identity(&self) -> bool {
        self.p == 0 && self.factors.is_empty()
    }

    /// `p=<int> factors=<w1>,<w2>,...` with canonical factor words.
    pub fn render(&self, sys: &GarsideSystem) -> String {
        let factors =
            self.factors.iter().map(|&f| sys.render_factor(f)).collect::<Vec<_>>().join(",");
        format!("p={} factors={}", self.p, factors)
    }

    /// Reconstruct a word: |p| copies of the delta word (inverted for
    /// negative p) followed by the factor words.
    pub fn to_word(&self, sys: &GarsideSystem) -> Word {
        let mut letters = Vec::new();
        let d = sys.delta_word();
        if self.p >= 0 {
            for _ in 0..self.p {
                letters.extend(d.iter().map(|&a| Letter::pos(a)));
            }
        } else {
            for _ in 0..-self.p {
                letters.extend(d.iter().rev().map(|&a| Letter::neg(a)));
            }
        }
        for &f in &self.factors {
            letters.extend(sys.word_of(f).iter().map(|&a| Letter::pos(a)));
        }
        Word(letters)
    }

    /// Check the left-greedy condition at every junction.
    pub fn is_left_greedy(&self, sys: &GarsideSystem) -> bool {
        self.factors.iter().all(|&f| sys.is_proper(f))
            && self
                .factors
                .windows(2)
                .all(|w| sys.meet_left(sys.dpartial(w[0]), w[1]) == sys.identity())
    }
}

/// Incremental left-greedy accumulator: a normal form that absorbs letters
/// or simples pushed on the right, restoring greediness by local slides.
pub struct NfBuilder<'s> {
    sys: &'s GarsideSystem,
    p: i64,
    factors: Vec<SimpleId>,
}

impl<'s> NfBuilder<'s> {
    pub fn new(sys: &'s GarsideSystem) -> Self {
        NfBuilder { sys, p: 0, factors: Vec::new() }
    }

    pub fn clear(&mut self) {
        self.p = 0;
        self.factors.clear();
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn cl(&self) -> usize {
        self.factors.len()
    }

    /// Some(p) iff the accumulated element is a pure delta power.
    pub fn as_delta_power(&self) -> Option<i64> {
        if self.factors.is_empty() {
            Some(self.p)
        } else {
            None
        }
    }

    pub fn nf(&self) -> NormalForm {
        NormalForm { p: self.p, factors: self.factors.clone() }
    }

    /// Storage footprint in bits, for oracle-space accounting.
    pub fn footprint_bits(&self) -> u64 {
        let state_bits = 64usize.next_power_of_two().trailing_zeros() as u64; // p register
        let per_factor = (usize::BITS - (self.sys.n_simples() - 1).leading_zeros()) as u64;
        state_bits + self.factors.len() as u64 * per_factor.max(1)
    }

    fn twist_all(&mut self, e: i64) {
        for f in self.factors.iter_mut() {
            *f = self.sys.tau_pow(*f, e);
        }
    }

    pub fn push_word(&mut self, w: &Word) {
        for &l in &w.0 {
            self.push_letter(l);
        }
    }

    pub fn push_letter(&mut self, l: Letter) {
        if l.positive {
            self.push_simple(self.sys.atom_simple(l.atom));
        } else {
            // F x^-1 = delta^-1 tau^-1(F) tau^-1(partial(x))
            self.p -= 1;
            self.twist_all(-1);
            let c = self.sys.dpartial(self.sys.atom_simple(l.atom));
            self.push_simple(self.sys.tau_pow(c, -1));
        }
    }

    pub fn push_atom(&mut self, a: AtomId) {
        self.push_simple(self.sys.atom_simple(a));
    }

    pub fn push_simple(&mut self, v: SimpleId) {
        let sys = self.sys;
        if v == sys.identity() {
            return;
        }
        if v == sys.delta() {
            // F delta = delta tau(F)
            self.p += 1;
            self.twist_all(1);
            return;
        }
        self.factors.push(v);
        if self.factors.len() >= 2 {
            self.stabilize(self.factors.len() - 2);
        }
    }

    /// Restore left-greediness by local slides. `start` is the left index of
    /// the first pair that may violate; every pair strictly left of the
    /// cursor is greedy at all times.
    fn stabilize(&mut self, start: usize) {
        let sys = self.sys;
        let id = sys.identity();
        let delta = sys.delta();
        let mut i = start;
        let mut budget = 4 * (self.factors.len() + 2) * (self.factors.len() + 2) + 64;
        while i + 1 < self.factors.len() + 1 {
            if i + 1 >= self.factors.len() {
                break;
            }
            let u = self.factors[i];
            let v = self.factors[i + 1];
            let g = sys.meet_left(sys.dpartial(u), v);
            if g == id {
                i += 1;
                continue;
            }
            budget = budget.checked_sub(1).expect("greedy normalization failed to stabilize");
            let u2 = sys.mult(u, g).expect("u.g divides delta");
            let v2 = sys.lquot(g, v).expect("g divides v");
            if v2 == id {
                self.factors.remove(i + 1);
            } else {
                self.factors[i + 1] = v2;
            }
            if u2 == delta {
                // delta migrates over the prefix: p += 1, twist factors[..i]
                self.factors.remove(i);
                self.p += 1;
                for f in self.factors[..i].iter_mut() {
                    *f = sys.tau_pow(*f, 1);
                }
            } else {
                self.factors[i] = u2;
            }
            i = i.saturating_sub(1);
        }
        debug_assert!(self.nf().is_left_greedy(sys), "stabilize left a non-greedy junction");
    }

    pub fn finish(self) -> NormalForm {
        NormalForm { p: self.p, factors: self.factors }
    }
}

/// Table-driven greedy computation of the left normal form of a word.
pub fn greedy_reference(sys: &GarsideSystem, w: &Word) -> NormalForm {
    let mut b = NfBuilder::new(sys);
    b.push_word(w);
    b.finish()
}

/// Multiply a normal form by one signed letter on the right.
pub fn nf_push_letter(sys: &GarsideSystem, nf: &NormalForm, l: Letter) -> NormalForm {
    let mut b = NfBuilder::new(sys);
    b.p = nf.p;
    b.factors = nf.factors.clone();
    b.push_letter(l);
    b.finish()
}

/// Stage one of the pipeline: count the negative letters and eliminate them
/// by complement substitution, twisting survivors by the number of negatives
/// still to their right.
pub fn stage_fb(sys: &GarsideSystem, w: &Word) -> (i64, Vec<AtomId>) {
    let k = w.0.iter().filter(|l| !l.positive).count() as i64;
    let mut j = k;
    let mut out = Vec::with_capacity(w.len() * sys.len_max());
    for &l in &w.0 {
        if l.positive {
            out.push(sys.tau_pow_atom(l.atom, -j));
        } else {
            let c = sys.dpartial(sys.atom_simple(l.atom));
            for &x in sys.word_of(c) {
                out.push(sys.tau_pow_atom(x, -j));
            }
            j -= 1;
        }
    }
    debug_assert_eq!(j, 0);
    (k, out)
}

/// Bounds on the possible delta power of a factor of the given length.
pub fn q_bounds(sys: &GarsideSystem, len: usize) -> (i64, i64) {
    let len = len as i64;
    let qmin = (len + sys.len_max() as i64 - 1) / sys.len_max() as i64;
    let qmax = len / sys.len_min() as i64;
    (qmin, qmax)
}

/// Stage two: extract the total delta content q of a positive word, emitting
/// the surviving letters twisted by the delta power collected so far.
///
/// For each start position the scan finds the longest block starting there
/// that represents a delta power (checking candidate powers inside the
/// length-derived bounds with the word-problem oracle) and jumps over it;
/// letters that begin no block survive.
pub fn stage_fc(
    sys: &GarsideSystem,
    k: i64,
    w_b: &[AtomId],
    backend: &Backend,
) -> Result<(i64, Vec<AtomId>, i64), WordError> {
    let mut q: i64 = 0;
    let mut out: Vec<AtomId> = Vec::new();
    let mut scan = FcScan::new(sys, backend);
    let n = w_b.len();
    let mut i = 0usize;
    while i < n {
        scan.reset();
        let mut best: Option<(usize, i64)> = None;
        for j in i..n {
            scan.feed(w_b[j]);
            let (qmin, qmax) = q_bounds(sys, j - i + 1);
            if qmin > qmax {
                continue;
            }
            if let Some(q1) = scan.delta_power(&w_b[i..=j], qmin, qmax)? {
                best = Some((j, q1));
            }
        }
        match best {
            Some((j, q1)) => {
                q += q1;
                i = j + 1;
            }
            None => {
                out.push(sys.tau_pow_atom(w_b[i], -q));
                i += 1;
            }
        }
    }
    Ok((k, out, q))
}

/// Stage three: read off the maximal simple prefixes of the q-twisted
/// residue; the result is the normal form with infimum q - k.
pub fn stage_fd(sys: &GarsideSystem, k: i64, w_c: &[AtomId], q: i64) -> NormalForm {
    let trie = sys.trie();
    let mut factors = Vec::new();
    let mut pos = 0usize;
    while pos < w_c.len() {
        let mut node = trie.root();
        let mut last: Option<(SimpleId, usize)> = None;
        let mut j = pos;
        while j < w_c.len() {
            let atom = sys.tau_pow_atom(w_c[j], q);
            match trie.step(node, atom) {
                Some(next) => match trie.accept(next) {
                    Some(s) if sys.is_proper(s) => {
                        node = next;
                        last = Some((s, j + 1));
                        j += 1;
                    }
                    _ => break,
                },
                None => break,
            }
        }
        let (s, next_pos) = last.expect("delta-free residue must parse into proper simples");
        factors.push(s);
        pos = next_pos;
    }
    NormalForm { p: q - k, factors }
}

/// The composed pipeline: negative elimination, delta extraction, simple
/// read-off. Equals `greedy_reference` on every input.
pub fn lnf(sys: &GarsideSystem, w: &Word, backend: &Backend) -> Result<NormalForm, WordError> {
    let (k, w_b) = stage_fb(sys, w);
    let (k, w_c, q) = stage_fc(sys, k, &w_b, backend)?;
    Ok(stage_fd(sys, k, &w_c, q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{build_system, i2_classical, p3, t_pq};

    fn t23() -> GarsideSystem {
        build_system(&t_pq(2, 3)).unwrap()
    }

    fn w(sys: &GarsideSystem, text: &str) -> Word {
        Word::parse(text, sys.atom_names()).unwrap()
    }

    #[test]
    fn greedy_reference_examples() {
        let sys = t23();
        // fourth power of the Garside element
        let nf = greedy_reference(&sys, &w(&sys, "b a b b a a b a b b"));
        assert_eq!(nf, NormalForm { p: 4, factors: vec![] });
        // empty word
        assert_eq!(greedy_reference(&sys, &Word::empty()), NormalForm::delta_power(0));
        // a^-1 b = delta^-1 a b
        let nf = greedy_reference(&sys, &w(&sys, "a^-1 b"));
        assert_eq!(nf.p, -1);
        assert_eq!(nf.render(&sys), "p=-1 factors=a,b");
        assert!(nf.is_left_greedy(&sys));
    }

    #[test]
    fn stage_fb_examples() {
        let sys = t23();
        let (k, out) = stage_fb(&sys, &w(&sys, "a^-1 b"));
        assert_eq!((k, sys.render_atoms(&out)), (1, "a b".to_string()));
        let (k, out) = stage_fb(&sys, &w(&sys, "b^-1 a^-1"));
        assert_eq!((k, sys.render_atoms(&out)), (2, "b b a".to_string()));
        let (k, out) = stage_fb(&sys, &w(&sys, "a b a"));
        assert_eq!((k, sys.render_atoms(&out)), (0, "a b a".to_string()));
    }

    #[test]
    fn stage_fc_examples() {
        let sys = t23();
        let backend = Backend::reference();
        let atoms = |text: &str| w(&sys, text).to_atoms().unwrap();
        let (k, out, q) = stage_fc(&sys, 0, &atoms("b a b b a a b a b b"), &backend).unwrap();
        assert_eq!((k, out.len(), q), (0, 0, 4));
        let (k, out, q) = stage_fc(&sys, 1, &atoms("a b"), &backend).unwrap();
        assert_eq!((k, sys.render_atoms(&out), q), (1, "a b".to_string(), 0));
        let (k, out, q) = stage_fc(&sys, 0, &atoms("a a"), &backend).unwrap();
        assert_eq!((k, out.len(), q), (0, 0, 1));
    }

    #[test]
    fn stage_fd_examples() {
        let sys = t23();
        let atoms = |text: &str| w(&sys, text).to_atoms().unwrap();
        let nf = stage_fd(&sys, 1, &atoms("a b"), 0);
        assert_eq!(nf.render(&sys), "p=-1 factors=a,b");
        let nf = stage_fd(&sys, 0, &atoms("b b"), 0);
        assert_eq!(nf.render(&sys), "p=0 factors=bb");
        let nf = stage_fd(&sys, 3, &[], 5);
        assert_eq!(nf, NormalForm { p: 2, factors: vec![] });
    }

    #[test]
    fn lnf_matches_examples() {
        let sys = t23();
        let backend = Backend::reference();
        let nf = lnf(&sys, &w(&sys, "b a b b a a b a b b"), &backend).unwrap();
        assert_eq!(nf, NormalForm { p: 4, factors: vec![] });
        let nf = lnf(&sys, &w(&sys, "a^-1 b"), &backend).unwrap();
        assert_eq!(nf.render(&sys), "p=-1 factors=a,b");

        let p3s = build_system(&p3()).unwrap();
        let nf = lnf(&p3s, &w(&p3s, "a c"), &Backend::reference()).unwrap();
        assert_eq!(nf.render(&p3s), "p=0 factors=a,c");
    }

    #[test]
    fn pipeline_equals_reference_small_exhaustive() {
        for def in [t_pq(2, 3), i2_classical(3)] {
            let sys = build_system(&def).unwrap();
            let backend = Backend::reference();
            let alphabet: Vec<Letter> = (0..sys.n_atoms())
                .flat_map(|a| [Letter::pos(a), Letter::neg(a)])
                .collect();
            let mut words: Vec<Word> = vec![Word::empty()];
            for _ in 0..5 {
                let mut next = Vec::new();
                for word in &words {
                    for &l in &alphabet {
                        let mut v = word.0.clone();
                        v.push(l);
                        next.push(Word(v));
                    }
                }
                for word in &next {
                    let a = greedy_reference(&sys, word);
                    let b = lnf(&sys, word, &backend).unwrap();
                    assert_eq!(a, b, "word {:?} in {}", word.render(sys.atom_names()), sys.name);
                    assert!(a.is_left_greedy(&sys));
                }
                words = next;
            }
        }
    }

    #[test]
    fn well_defined_under_relation_application() {
        let sys = t23();
        // babbaababb with a^2 -> b^3 applied at position 4
        let u = w(&sys, "b a b b a a b a b b");
        let v = w(&sys, "b a b b b b b b a b b");
        assert_eq!(greedy_reference(&sys, &u), greedy_reference(&sys, &v));
    }

    #[test]
    fn to_word_round_trips_through_reference() {
        let sys = t23();
        for text in ["a^-1 b", "b b a a^-1", "a b a b a", "b^-1 b^-1 a"] {
            let word = w(&sys, text);
            let nf = greedy_reference(&sys, &word);
            let back = greedy_reference(&sys, &nf.to_word(&sys));
            assert_eq!(nf, back);
        }
    }
}
