//! Words over signed atoms: parsing, rendering, free reduction, and the
//! closure-based positive-word utilities.

use crate::error::{ClosureCapExceeded, WordError};
use crate::system::GarsideSystem;
use crate::SimpleId;

pub type AtomId = usize;

/// A single signed letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub atom: AtomId,
    pub positive: bool,
}

impl Letter {
    pub fn pos(atom: AtomId) -> Self {
        Letter { atom, positive: true }
    }
    pub fn neg(atom: AtomId) -> Self {
        Letter { atom, positive: false }
    }
    pub fn inverse(self) -> Self {
        Letter { atom: self.atom, positive: !self.positive }
    }
}

/// A finite word over the signed atoms of some system.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| l.positive)
    }

    /// Formal inverse: reverse the letters and flip every sign.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Positive word from atom ids.
    pub fn from_atoms(atoms: &[AtomId]) -> Word {
        Word(atoms.iter().map(|&a| Letter::pos(a)).collect())
    }

    /// The atom-id sequence of a positive word.
    pub fn to_atoms(&self) -> Result<Vec<AtomId>, WordError> {
        self.0
            .iter()
            .map(|l| {
                if l.positive {
                    Ok(l.atom)
                } else {
                    Err(WordError::NotPositive(format!("atom #{}^-1", l.atom)))
                }
            })
            .collect()
    }

    /// Parse the word text format: whitespace-separated tokens, each an atom
    /// name optionally followed by `^-1`.
    pub fn parse(text: &str, atom_names: &[String]) -> Result<Word, WordError> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let (name, positive) = match tok.strip_suffix("^-1") {
                Some(base) => (base, false),
                None => (tok, true),
            };
            if name.is_empty() {
                return Err(WordError::Parse(format!("empty atom name in token '{tok}'")));
            }
            match atom_names.iter().position(|n| n == name) {
                Some(atom) => letters.push(Letter { atom, positive }),
                None => {
                    return Err(WordError::Parse(format!("unknown atom '{name}' in token '{tok}'")))
                }
            }
        }
        Ok(Word(letters))
    }

    /// Render in the same token format `parse` accepts.
    pub fn render(&self, atom_names: &[String]) -> String {
        self.0
            .iter()
            .map(|l| {
                if l.positive {
                    atom_names[l.atom].clone()
                } else {
                    format!("{}^-1", atom_names[l.atom])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Freely reduce a word by cancelling adjacent `x x^-1` pairs (stack pass).
///
/// This is a plain linear-state pass, deliberately not a bounded-state
/// stream program; the normal-form pipeline never calls it internally.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in &w.0 {
        if let Some(&top) = stack.last() {
            if top.atom == l.atom && top.positive != l.positive {
                stack.pop();
                continue;
            }
        }
        stack.push(l);
    }
    Word(stack)
}

/// Decide whether two positive words represent the same monoid element by
/// relation-application closure.
pub fn positive_equiv(sys: &GarsideSystem, u: &Word, v: &Word) -> Result<bool, WordError> {
    let ua = u.to_atoms()?;
    let va = v.to_atoms()?;
    if ua == va {
        return Ok(true);
    }
    sys.words_equivalent(&ua, &va).map_err(WordError::from)
}

/// Recognize a positive word as a simple element via the word trie.
/// Returns the simple id whose word set contains `w`, or `None`.
pub fn is_simple_word(sys: &GarsideSystem, w: &Word) -> Result<Option<SimpleId>, WordError> {
    let atoms = w.to_atoms()?;
    Ok(sys.trie_lookup(&atoms))
}

/// Convenience wrapper so callers see the documented error type.
pub fn closure_cap_error(msg: impl Into<String>) -> ClosureCapExceeded {
    ClosureCapExceeded(msg.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".to_string(), "b".to_string()]
    }

    #[test]
    fn parse_and_render_round_trip() {
        let w = Word::parse("a b^-1 a a^-1", &names()).unwrap();
        assert_eq!(w.len(), 4);
        assert_eq!(w.render(&names()), "a b^-1 a a^-1");
    }

    #[test]
    fn parse_rejects_unknown_atom() {
        assert!(Word::parse("a c", &names()).is_err());
        assert!(Word::parse("^-1", &names()).is_err());
    }

    #[test]
    fn free_reduce_examples() {
        let names = names();
        // a b b^-1 a -> a a
        let w = Word::parse("a b b^-1 a", &names).unwrap();
        assert_eq!(free_reduce(&w).render(&names), "a a");
        // empty -> empty
        assert_eq!(free_reduce(&Word::empty()), Word::empty());
        // a a^-1 a -> a
        let w = Word::parse("a a^-1 a", &names).unwrap();
        assert_eq!(free_reduce(&w).render(&names), "a");
    }

    #[test]
    fn free_reduce_idempotent_and_nonincreasing() {
        // small deterministic sweep over all signed words of length <= 6
        let alphabet = [Letter::pos(0), Letter::neg(0), Letter::pos(1), Letter::neg(1)];
        let stackcheck = |w: &Word| {
            let r = free_reduce(w);
            assert!(r.len() <= w.len());
            assert_eq!(free_reduce(&r), r);
            for pair in r.0.windows(2) {
                assert!(!(pair[0].atom == pair[1].atom && pair[0].positive != pair[1].positive));
            }
        };
        let mut words = vec![Word::empty()];
        for _ in 0..6 {
            let mut next = Vec::new();
            for w in &words {
                for &l in &alphabet {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            for w in &next {
                stackcheck(w);
            }
            words = next;
        }
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let names = names();
        let w = Word::parse("a b^-1", &names).unwrap();
        assert_eq!(w.inverse().render(&names), "b a^-1");
        assert_eq!(free_reduce(&w.concat(&w.inverse())), Word::empty());
    }
}
