//! Word-problem oracle backends.
//!
//! The reference backend decides triviality through the greedy normal form.
//! The modular-linear backend uses a faithful Laurent-matrix representation:
//! cheap modular screens at fixed (evaluation point, prime) pairs reject
//! non-identities early, and an exact arbitrary-precision matrix product
//! settles whatever survives, so every answer is exact.

use crate::laurent::{mulmod, LaurentMatrix};
use crate::normal::{greedy_reference, NfBuilder};
use crate::system::GarsideSystem;
use crate::word::{AtomId, Letter, Word};
use crate::{error::WordError, SimpleId};

/// Fixed screen schedule: (evaluation point, prime) pairs.
const SCREEN_PAIRS: [(u64, u64); 6] = [
    (2, (1 << 61) - 1),
    (3, (1 << 31) - 1),
    (5, 1_000_000_007),
    (7, 998_244_353),
    (11, 1_000_000_009),
    (13, 754_974_721),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BackendKind {
    Reference,
    ModularLinear,
}

/// Per-(point, prime) images of the generators and delta, flattened dim*dim.
struct ScreenTable {
    prime: u64,
    atoms: Vec<Vec<u64>>,
    atom_invs: Vec<Vec<u64>>,
    delta: Vec<u64>,
    delta_inv: Vec<u64>,
}

/// Precomputed representation data for the modular-linear backend.
pub struct ModularData {
    dim: usize,
    atom_mats: Vec<LaurentMatrix>,
    atom_inv_mats: Vec<LaurentMatrix>,
    delta_inv_mat: LaurentMatrix,
    screens: Vec<ScreenTable>,
    weight: Option<(Vec<i64>, i64)>,
}

pub enum Backend {
    Reference,
    Modular(Box<ModularData>),
}

impl Backend {
    pub fn reference() -> Backend {
        Backend::Reference
    }

    /// Build the modular-linear backend from the system's representation.
    pub fn modular(sys: &GarsideSystem) -> Result<Backend, WordError> {
        let rep = sys.matrix_rep().ok_or(WordError::NoRepresentation)?;
        let dim = rep[0].dim;
        let atom_mats: Vec<LaurentMatrix> = rep.to_vec();
        let atom_inv_mats: Vec<LaurentMatrix> =
            rep.iter().map(|m| m.inverse()).collect::<Result<_, _>>()?;
        let mut delta_mat = LaurentMatrix::identity(dim);
        for &a in sys.delta_word() {
            delta_mat = delta_mat.mul(&atom_mats[a]);
        }
        let delta_inv_mat = delta_mat.inverse()?;
        let screens = SCREEN_PAIRS
            .iter()
            .map(|&(point, prime)| ScreenTable {
                prime,
                atoms: atom_mats.iter().map(|m| m.eval_mod(point, prime)).collect(),
                atom_invs: atom_inv_mats.iter().map(|m| m.eval_mod(point, prime)).collect(),
                delta: delta_mat.eval_mod(point, prime),
                delta_inv: delta_inv_mat.eval_mod(point, prime),
            })
            .collect();
        let weight = sys.weight().map(|(w, d)| (w.to_vec(), d));
        Ok(Backend::Modular(Box::new(ModularData {
            dim,
            atom_mats,
            atom_inv_mats,
            delta_inv_mat,
            screens,
            weight,
        })))
    }

    pub fn kind(&self) -> BackendKind {
        match self {
            Backend::Reference => BackendKind::Reference,
            Backend::Modular(_) => BackendKind::ModularLinear,
        }
    }
}

fn mat_mul_mod(dim: usize, a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let aik = a[i * dim + k];
            if aik == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] = (out[i * dim + j] + mulmod(aik, b[k * dim + j], p)) % p;
            }
        }
    }
    out
}

fn mat_identity_mod(dim: usize) -> Vec<u64> {
    let mut m = vec![0u64; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

fn mat_is_identity_mod(dim: usize, m: &[u64], p: u64) -> bool {
    for i in 0..dim {
        for j in 0..dim {
            let want = u64::from(i == j);
            if m[i * dim + j] % p != want {
                return false;
            }
        }
    }
    true
}

fn mat_pow_mod(dim: usize, m: &[u64], mut e: u64, p: u64) -> Vec<u64> {
    let mut acc = mat_identity_mod(dim);
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mat_mul_mod(dim, &acc, &base, p);
        }
        base = mat_mul_mod(dim, &base, &base, p);
        e >>= 1;
    }
    acc
}

fn mat_pow_exact(base: &LaurentMatrix, mut e: u64) -> LaurentMatrix {
    let mut acc = LaurentMatrix::identity(base.dim);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    acc
}

impl ModularData {
    pub fn dim(&self) -> usize {
        self.dim
    }

    fn letter_screen<'a>(&'a self, t: &'a ScreenTable, l: Letter) -> &'a [u64] {
        if l.positive {
            &t.atoms[l.atom]
        } else {
            &t.atom_invs[l.atom]
        }
    }

    fn letter_exact(&self, l: Letter) -> &LaurentMatrix {
        if l.positive {
            &self.atom_mats[l.atom]
        } else {
            &self.atom_inv_mats[l.atom]
        }
    }

    /// Exact identity test for a signed word followed by delta^(-q).
    fn is_identity(&self, letters: &[Letter], q: u64) -> bool {
        if let Some((w, wd)) = &self.weight {
            let mut acc: i64 = -(wd * q as i64);
            for l in letters {
                acc += if l.positive { w[l.atom] } else { -w[l.atom] };
            }
            if acc != 0 {
                return false;
            }
        }
        for t in &self.screens {
            let mut acc = mat_identity_mod(self.dim);
            for &l in letters {
                acc = mat_mul_mod(self.dim, &acc, self.letter_screen(t, l), t.prime);
            }
            if q > 0 {
                let dpow = mat_pow_mod(self.dim, &t.delta_inv, q, t.prime);
                acc = mat_mul_mod(self.dim, &acc, &dpow, t.prime);
            }
            if !mat_is_identity_mod(self.dim, &acc, t.prime) {
                return false;
            }
        }
        // All screens agree with the identity: settle exactly.
        let mut acc = LaurentMatrix::identity(self.dim);
        for &l in letters {
            acc = acc.mul(self.letter_exact(l));
        }
        if q > 0 {
            acc = acc.mul(&mat_pow_exact(&self.delta_inv_mat, q));
        }
        acc.is_identity()
    }
}

/// Decide whether a word represents the identity.
pub fn word_problem(sys: &GarsideSystem, w: &Word, backend: &Backend) -> Result<bool, WordError> {
    match backend {
        Backend::Reference => Ok(greedy_reference(sys, w).is_identity()),
        Backend::Modular(data) => Ok(data.is_identity(&w.0, 0)),
    }
}

/// Decide whether `subword . delta^(-q)` is trivial, for positive subwords.
pub fn delta_power_problem(
    sys: &GarsideSystem,
    subword: &[AtomId],
    q: i64,
    backend: &Backend,
) -> Result<bool, WordError> {
    debug_assert!(q >= 0);
    match backend {
        Backend::Reference => {
            let mut b = NfBuilder::new(sys);
            for &a in subword {
                b.push_atom(a);
            }
            Ok(b.as_delta_power() == Some(q))
        }
        Backend::Modular(data) => {
            let letters: Vec<Letter> = subword.iter().map(|&a| Letter::pos(a)).collect();
            Ok(data.is_identity(&letters, q as u64))
        }
    }
}

/// Product of the representation images of a word, exactly.
pub fn matrix_eval(rep: &[LaurentMatrix], w: &Word) -> Result<LaurentMatrix, WordError> {
    let dim = rep[0].dim;
    let mut inverses: Vec<Option<LaurentMatrix>> = vec![None; rep.len()];
    let mut acc = LaurentMatrix::identity(dim);
    for &l in &w.0 {
        if l.positive {
            acc = acc.mul(&rep[l.atom]);
        } else {
            if inverses[l.atom].is_none() {
                inverses[l.atom] = Some(rep[l.atom].inverse()?);
            }
            acc = acc.mul(inverses[l.atom].as_ref().unwrap());
        }
    }
    Ok(acc)
}

/// Incremental scan state for the delta-extraction stage: feeds letters of a
/// positive window and answers "is the window a delta power, and which one".
///
/// The reference flavour keeps the window's greedy normal form (linear
/// scratch); the modular flavour keeps one screen accumulator and the running
/// weight (constant scratch), escalating candidates to the exact oracle.
pub struct FcScan<'s, 'b> {
    sys: &'s GarsideSystem,
    inner: FcScanInner<'s, 'b>,
}

enum FcScanInner<'s, 'b> {
    Reference {
        nf: NfBuilder<'s>,
    },
    Modular {
        data: &'b ModularData,
        backend: &'b Backend,
        omega: Option<i64>,
        acc: Vec<u64>,
        len: usize,
    },
}

impl<'s, 'b> FcScan<'s, 'b> {
    pub fn new(sys: &'s GarsideSystem, backend: &'b Backend) -> Self {
        let inner = match backend {
            Backend::Reference => FcScanInner::Reference { nf: NfBuilder::new(sys) },
            Backend::Modular(data) => FcScanInner::Modular {
                data,
                backend,
                omega: sys.weight().map(|_| 0),
                acc: mat_identity_mod(data.dim),
                len: 0,
            },
        };
        FcScan { sys, inner }
    }

    pub fn reset(&mut self) {
        match &mut self.inner {
            FcScanInner::Reference { nf } => nf.clear(),
            FcScanInner::Modular { data, omega, acc, len, .. } => {
                if let Some(o) = omega {
                    *o = 0;
                }
                *acc = mat_identity_mod(data.dim);
                *len = 0;
            }
        }
    }

    pub fn feed(&mut self, atom: AtomId) {
        match &mut self.inner {
            FcScanInner::Reference { nf } => nf.push_atom(atom),
            FcScanInner::Modular { data, omega, acc, len, .. } => {
                if let Some(o) = omega {
                    *o += self.sys.weight().expect("omega implies weight").0[atom];
                }
                let t = &data.screens[0];
                *acc = mat_mul_mod(data.dim, acc, &t.atoms[atom], t.prime);
                *len += 1;
            }
        }
    }

    /// Authoritative: Some(q1) iff the fed window equals delta^q1 with
    /// qmin <= q1 <= qmax.
    pub fn delta_power(
        &mut self,
        window: &[AtomId],
        qmin: i64,
        qmax: i64,
    ) -> Result<Option<i64>, WordError> {
        match &mut self.inner {
            FcScanInner::Reference { nf } => match nf.as_delta_power() {
                Some(p) if p >= 1 => {
                    debug_assert!(qmin <= p && p <= qmax);
                    Ok(Some(p))
                }
                _ => Ok(None),
            },
            FcScanInner::Modular { data, backend, omega, acc, .. } => {
                let candidates: Vec<i64> = match omega {
                    Some(o) => {
                        let (_, wd) = self.sys.weight().expect("omega implies weight");
                        if wd != 0 && *o % wd == 0 && (qmin..=qmax).contains(&(*o / wd)) {
                            vec![*o / wd]
                        } else {
                            Vec::new()
                        }
                    }
                    None => (qmin..=qmax).collect(),
                };
                let t = &data.screens[0];
                for q1 in candidates {
                    let dpow = mat_pow_mod(data.dim, &t.delta, q1 as u64, t.prime);
                    if *acc != dpow {
                        continue;
                    }
                    if delta_power_problem(self.sys, window, q1, backend)? {
                        return Ok(Some(q1));
                    }
                }
                Ok(None)
            }
        }
    }

    /// Peak scratch footprint in bits, for oracle-space accounting.
    pub fn footprint_bits(&self) -> u64 {
        match &self.inner {
            FcScanInner::Reference { nf } => nf.footprint_bits(),
            FcScanInner::Modular { data, .. } => {
                (data.dim * data.dim) as u64 * 64 + 64 /* omega */ + 64 /* len */
            }
        }
    }
}

/// Positive-word equivalence via the same greedy machinery, used by tests as
/// an alternative route to the closure-based check.
pub fn nf_of_atoms(sys: &GarsideSystem, atoms: &[AtomId]) -> crate::normal::NormalForm {
    let mut b = NfBuilder::new(sys);
    for &a in atoms {
        b.push_atom(a);
    }
    b.finish()
}

/// SimpleId-indexed helper: the normal form of a single simple.
pub fn simple_nf(sys: &GarsideSystem, s: SimpleId) -> crate::normal::NormalForm {
    if s == sys.identity() {
        crate::normal::NormalForm::delta_power(0)
    } else if s == sys.delta() {
        crate::normal::NormalForm::delta_power(1)
    } else {
        crate::normal::NormalForm { p: 0, factors: vec![s] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::{build_system, t_pq};

    fn t23() -> GarsideSystem {
        build_system(&t_pq(2, 3)).unwrap()
    }

    fn w(sys: &GarsideSystem, text: &str) -> Word {
        Word::parse(text, sys.atom_names()).unwrap()
    }

    #[test]
    fn word_problem_examples_both_backends() {
        let sys = t23();
        let reference = Backend::reference();
        let modular = Backend::modular(&sys).unwrap();
        for b in [&reference, &modular] {
            assert!(word_problem(&sys, &w(&sys, "a a b^-1 b^-1 b^-1"), b).unwrap());
            assert!(!word_problem(&sys, &w(&sys, "a b a^-1 b^-1"), b).unwrap());
            assert!(word_problem(&sys, &Word::empty(), b).unwrap());
        }
    }

    #[test]
    fn modular_requires_representation() {
        let sys = build_system(&crate::system::i2_classical(4)).unwrap();
        assert!(matches!(Backend::modular(&sys), Err(WordError::NoRepresentation)));
    }

    #[test]
    fn matrix_eval_t23_relation() {
        let sys = t23();
        let rep = sys.matrix_rep().unwrap();
        let a2 = matrix_eval(rep, &w(&sys, "a a")).unwrap();
        let b3 = matrix_eval(rep, &w(&sys, "b b b")).unwrap();
        assert_eq!(a2, b3);
        let empty = matrix_eval(rep, &Word::empty()).unwrap();
        assert!(empty.is_identity());
    }

    #[test]
    fn matrix_eval_is_homomorphism() {
        let sys = t23();
        let rep = sys.matrix_rep().unwrap();
        let u = w(&sys, "a b^-1 a a");
        let v = w(&sys, "b b a^-1");
        let uv = matrix_eval(rep, &u.concat(&v)).unwrap();
        assert_eq!(uv, matrix_eval(rep, &u).unwrap().mul(&matrix_eval(rep, &v).unwrap()));
    }

    #[test]
    fn backend_agreement_short_words() {
        let sys = t23();
        let reference = Backend::reference();
        let modular = Backend::modular(&sys).unwrap();
        let alphabet =
            [Letter::pos(0), Letter::neg(0), Letter::pos(1), Letter::neg(1)];
        let mut words = vec![Word::empty()];
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
                assert_eq!(
                    word_problem(&sys, word, &reference).unwrap(),
                    word_problem(&sys, word, &modular).unwrap(),
                    "{}",
                    word.render(sys.atom_names())
                );
            }
            words = next;
        }
    }
}
