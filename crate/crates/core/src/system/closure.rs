//! Equivalence closure of positive words under relation application.
//!
//! Two positive words represent the same monoid element of a presented
//! monoid iff one can be rewritten into the other by replacing a subword
//! equal to one side of a defining relation with the other side. Classes
//! are explored breadth-first with configurable caps on word length and
//! class size; hitting a cap is a hard error, never a silent truncation.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use crate::error::ClosureCapExceeded;
use crate::word::AtomId;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClosureCaps {
    /// Longest word the closure may generate.
    pub max_word_len: usize,
    /// Largest class the closure may materialize.
    pub max_class_size: usize,
}

#[derive(Debug)]
pub struct ClassInfo {
    /// Minimal word of the class under (length, lex) order; the class key.
    pub key: Vec<AtomId>,
    /// Every word of the class, sorted.
    pub words: BTreeSet<Vec<AtomId>>,
}

/// Closure engine over a fixed relation set, with memoization keyed by word.
pub struct Rewriter {
    /// Directed rewrite rules: both orientations of every relation.
    rules: Vec<(Vec<AtomId>, Vec<AtomId>)>,
    caps: ClosureCaps,
    memo: RefCell<HashMap<Vec<AtomId>, Rc<ClassInfo>>>,
}

fn key_order(a: &[AtomId], b: &[AtomId]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

impl Rewriter {
    pub fn new(relations: &[(Vec<AtomId>, Vec<AtomId>)], caps: ClosureCaps) -> Self {
        let mut rules = Vec::with_capacity(relations.len() * 2);
        for (l, r) in relations {
            if l != r {
                rules.push((l.clone(), r.clone()));
                rules.push((r.clone(), l.clone()));
            }
        }
        Rewriter { rules, caps, memo: RefCell::new(HashMap::new()) }
    }

    pub fn caps(&self) -> ClosureCaps {
        self.caps
    }

    /// Full equivalence class of `w`.
    pub fn class(&self, w: &[AtomId]) -> Result<Rc<ClassInfo>, ClosureCapExceeded> {
        if let Some(c) = self.memo.borrow().get(w) {
            return Ok(Rc::clone(c));
        }
        if w.len() > self.caps.max_word_len {
            return Err(ClosureCapExceeded(format!(
                "word of length {} exceeds cap {}",
                w.len(),
                self.caps.max_word_len
            )));
        }
        let mut seen: BTreeSet<Vec<AtomId>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<AtomId>> = VecDeque::new();
        seen.insert(w.to_vec());
        queue.push_back(w.to_vec());
        while let Some(cur) = queue.pop_front() {
            for (from, to) in &self.rules {
                if from.len() > cur.len() {
                    continue;
                }
                for i in 0..=cur.len() - from.len() {
                    if &cur[i..i + from.len()] != from.as_slice() {
                        continue;
                    }
                    let mut next = Vec::with_capacity(cur.len() - from.len() + to.len());
                    next.extend_from_slice(&cur[..i]);
                    next.extend_from_slice(to);
                    next.extend_from_slice(&cur[i + from.len()..]);
                    if next.len() > self.caps.max_word_len {
                        return Err(ClosureCapExceeded(format!(
                            "rewrite produced word of length {} over cap {}",
                            next.len(),
                            self.caps.max_word_len
                        )));
                    }
                    if seen.insert(next.clone()) {
                        if seen.len() > self.caps.max_class_size {
                            return Err(ClosureCapExceeded(format!(
                                "class size exceeds cap {}",
                                self.caps.max_class_size
                            )));
                        }
                        queue.push_back(next);
                    }
                }
            }
        }
        let key = seen
            .iter()
            .min_by(|a, b| key_order(a, b))
            .expect("class contains the seed word")
            .clone();
        let info = Rc::new(ClassInfo { key, words: seen });
        let mut memo = self.memo.borrow_mut();
        for word in &info.words {
            memo.insert(word.clone(), Rc::clone(&info));
        }
        Ok(info)
    }

    /// Canonical key (minimal word) of the class of `w`.
    pub fn key(&self, w: &[AtomId]) -> Result<Vec<AtomId>, ClosureCapExceeded> {
        Ok(self.class(w)?.key.clone())
    }

    pub fn equivalent(&self, u: &[AtomId], v: &[AtomId]) -> Result<bool, ClosureCapExceeded> {
        if u == v {
            return Ok(true);
        }
        Ok(self.class(u)?.words.contains(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t23() -> Rewriter {
        // a^2 = b^3 with a = 0, b = 1
        Rewriter::new(
            &[(vec![0, 0], vec![1, 1, 1])],
            ClosureCaps { max_word_len: 16, max_class_size: 100_000 },
        )
    }

    #[test]
    fn closure_of_delta_in_t23() {
        let rw = t23();
        let class = rw.class(&[0, 0]).unwrap();
        assert_eq!(class.words.len(), 2);
        assert!(class.words.contains(&vec![1, 1, 1]));
        assert_eq!(class.key, vec![0, 0]);
    }

    #[test]
    fn equivalence_and_non_equivalence() {
        let rw = t23();
        assert!(rw.equivalent(&[0, 0], &[1, 1, 1]).unwrap());
        assert!(!rw.equivalent(&[0, 1], &[1, 0]).unwrap());
        assert!(rw.equivalent(&[0, 1], &[0, 1]).unwrap());
    }

    #[test]
    fn cap_is_a_hard_error() {
        let rw = Rewriter::new(
            &[(vec![0, 0], vec![1, 1, 1])],
            ClosureCaps { max_word_len: 2, max_class_size: 100 },
        );
        assert!(rw.class(&[0, 0]).is_err());
    }
}
