//! Geodesic normal form for homogeneous systems.
//!
//! A negative delta power is traded against chosen factors: each chosen
//! simple s is replaced by delta . (inverse of the word of partial(s)),
//! which cancels one delta and costs |delta| - |s| letters. The threshold
//! rule picks the longest factors, leftmost first, making the output a
//! function of the element. A breadth-first Cayley-graph search provides
//! the independent length oracle.

use std::collections::HashMap;

use crate::error::GeodesicError;
use crate::normal::{greedy_reference, lnf, nf_push_letter, NormalForm};
use crate::oracle::Backend;
use crate::system::GarsideSystem;
use crate::word::{Letter, Word};

/// The replacement plan of the threshold case.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeodesicPlan {
    pub t: usize,
    /// 0-based positions of the replaced factors, strictly increasing.
    pub indices: Vec<usize>,
    /// Negative replacement word per chosen factor.
    pub neg_words: Vec<Word>,
}

/// Greatest t such that at least |p| factors have canonical length >= t.
pub fn threshold(sys: &GarsideSystem, nf: &NormalForm) -> usize {
    debug_assert!(nf.p < 0 && (-nf.p as usize) < nf.cl());
    let need = (-nf.p) as usize;
    let mut lengths: Vec<usize> = nf.factors.iter().map(|&f| sys.simple(f).len).collect();
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    // candidate thresholds are the factor lengths themselves
    let mut best = 1;
    for &t in &lengths {
        if lengths.iter().filter(|&&l| l >= t).count() >= need {
            best = best.max(t);
        }
    }
    best
}

fn not_homogeneous(sys: &GarsideSystem) -> GeodesicError {
    let (l, r) = sys
        .relations()
        .iter()
        .find(|(l, r)| l.len() != r.len())
        .expect("non-homogeneous flag implies a length-changing relation");
    GeodesicError::NotHomogeneous {
        system: sys.name.clone(),
        relation: format!("{} = {}", sys.render_atoms(l), sys.render_atoms(r)),
        lhs: l.len(),
        rhs: r.len(),
    }
}

/// Geodesic representative of the element of `w`, with the replacement plan
/// when the threshold case applies.
pub fn geodesic_nf_with_plan(
    sys: &GarsideSystem,
    w: &Word,
    backend: &Backend,
) -> Result<(Word, Option<GeodesicPlan>), GeodesicError> {
    if !sys.homogeneous() {
        return Err(not_homogeneous(sys));
    }
    let nf = lnf(sys, w, backend)?;
    let l = nf.cl();
    let (plan_t, indices): (Option<usize>, Vec<usize>) = if nf.p >= 0 {
        (None, Vec::new())
    } else if (-nf.p) as usize >= l {
        (None, (0..l).collect())
    } else {
        // t is the |p|-th largest factor length; replacing anything shorter
        // than a longer available factor wastes letters, so take every
        // factor strictly above t and fill up with the leftmost factors of
        // length exactly t.
        let t = threshold(sys, &nf);
        let need = (-nf.p) as usize;
        let mut idx: Vec<usize> =
            (0..l).filter(|&i| sys.simple(nf.factors[i]).len > t).collect();
        debug_assert!(idx.len() < need);
        for i in 0..l {
            if idx.len() == need {
                break;
            }
            if sys.simple(nf.factors[i]).len == t && !idx.contains(&i) {
                idx.push(i);
            }
        }
        debug_assert_eq!(idx.len(), need);
        idx.sort_unstable();
        (Some(t), idx)
    };

    let m = indices.len() as i64;
    let mut letters: Vec<Letter> = Vec::new();
    let d = sys.delta_word();
    let head = nf.p + m;
    if head >= 0 {
        for _ in 0..head {
            letters.extend(d.iter().map(|&a| Letter::pos(a)));
        }
    } else {
        for _ in 0..-head {
            letters.extend(d.iter().rev().map(|&a| Letter::neg(a)));
        }
    }

    let mut neg_words = Vec::with_capacity(indices.len());
    let mut chosen_seen = 0usize;
    for (i, &f) in nf.factors.iter().enumerate() {
        let start = letters.len();
        if chosen_seen < indices.len() && indices[chosen_seen] == i {
            // replacement word: inverse of the word of partial(f)
            let v = Word(
                sys.word_of(sys.dpartial(f)).iter().rev().map(|&a| Letter::neg(a)).collect(),
            );
            letters.extend(v.0.iter().copied());
            chosen_seen += 1;
            neg_words.push(v);
        } else {
            letters.extend(sys.word_of(f).iter().map(|&a| Letter::pos(a)));
        }
        // the segment ending at the k-th replacement carries tau^(m-k); this
        // segment has seen `chosen_seen` replacements, so its twist is
        // m - chosen_seen. The leading delta block needs no twist.
        let e = m - chosen_seen as i64;
        for letter in letters[start..].iter_mut() {
            letter.atom = sys.tau_pow_atom(letter.atom, e);
        }
    }

    let plan = plan_t.map(|t| GeodesicPlan { t, indices: indices.clone(), neg_words });
    Ok((Word(letters), plan))
}

/// Geodesic representative (homogeneous systems only).
pub fn geodesic_nf(
    sys: &GarsideSystem,
    w: &Word,
    backend: &Backend,
) -> Result<Word, GeodesicError> {
    geodesic_nf_with_plan(sys, w, backend).map(|(w, _)| w)
}

/// Distances from the identity in the Cayley graph, out to a radius.
pub struct GeodesicBall {
    dist: HashMap<NormalForm, usize>,
    radius: usize,
}

impl GeodesicBall {
    pub fn build(sys: &GarsideSystem, radius: usize) -> Self {
        let mut dist = HashMap::new();
        let mut frontier = vec![NormalForm::delta_power(0)];
        dist.insert(NormalForm::delta_power(0), 0usize);
        for r in 1..=radius {
            let mut next = Vec::new();
            for nf in &frontier {
                for atom in 0..sys.n_atoms() {
                    for positive in [true, false] {
                        let neighbor = nf_push_letter(sys, nf, Letter { atom, positive });
                        if !dist.contains_key(&neighbor) {
                            dist.insert(neighbor.clone(), r);
                            next.push(neighbor);
                        }
                    }
                }
            }
            frontier = next;
        }
        GeodesicBall { dist, radius }
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn lookup(&self, nf: &NormalForm) -> Option<usize> {
        self.dist.get(nf).copied()
    }
}

/// Exact geodesic length by breadth-first search, expanding until the
/// element of `w` is reached or the cap is passed.
pub fn bfs_geodesic_length(
    sys: &GarsideSystem,
    w: &Word,
    cap: usize,
) -> Result<usize, GeodesicError> {
    let target = greedy_reference(sys, w);
    if target.is_identity() {
        return Ok(0);
    }
    let mut dist: HashMap<NormalForm, usize> = HashMap::new();
    let mut frontier = vec![NormalForm::delta_power(0)];
    dist.insert(NormalForm::delta_power(0), 0);
    for r in 1..=cap {
        let mut next = Vec::new();
        for nf in &frontier {
            for atom in 0..sys.n_atoms() {
                for positive in [true, false] {
                    let neighbor = nf_push_letter(sys, nf, Letter { atom, positive });
                    if neighbor == target {
                        return Ok(r);
                    }
                    if !dist.contains_key(&neighbor) {
                        dist.insert(neighbor.clone(), r);
                        next.push(neighbor);
                    }
                }
            }
        }
        frontier = next;
    }
    Err(GeodesicError::CapExceeded(cap))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::word_problem;
    use crate::system::{build_system, i2_classical, p3, t_pq};

    fn isys(m: usize) -> GarsideSystem {
        build_system(&i2_classical(m)).unwrap()
    }

    fn w(sys: &GarsideSystem, text: &str) -> Word {
        Word::parse(text, sys.atom_names()).unwrap()
    }

    fn id_of(s: &GarsideSystem, word: &str) -> usize {
        (0..s.n_simples()).find(|&i| s.render_factor(i) == word).unwrap()
    }

    #[test]
    fn threshold_examples() {
        let s = isys(3);
        // lengths (2, 1), one replacement needed -> t = 2
        let nf = NormalForm { p: -1, factors: vec![id_of(&s, "ab"), id_of(&s, "a")] };
        assert_eq!(threshold(&s, &nf), 2);
        // all factors length 1 -> t = 1
        let nf = NormalForm { p: -1, factors: vec![id_of(&s, "a"), id_of(&s, "b")] };
        assert_eq!(threshold(&s, &nf), 1);
        // P3, lengths (2, 2, 1), two replacements -> t = 2
        let s3 = build_system(&p3()).unwrap();
        let nf = NormalForm {
            p: -2,
            factors: vec![id_of(&s3, "ab"), id_of(&s3, "bc"), id_of(&s3, "a")],
        };
        assert_eq!(threshold(&s3, &nf), 2);
    }

    #[test]
    fn geodesic_examples() {
        let s = isys(3);
        let backend = Backend::reference();
        // delta^-1 a: already geodesic of length 2
        let g = geodesic_nf(&s, &w(&s, "a^-1 b^-1"), &backend).unwrap();
        assert_eq!(g.render(s.atom_names()), "a^-1 b^-1");
        // positive word: delta . b spelled out
        let g = geodesic_nf(&s, &w(&s, "a b a b"), &backend).unwrap();
        assert_eq!(g.render(s.atom_names()), "a b a b");
        // empty
        let g = geodesic_nf(&s, &Word::empty(), &backend).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn bfs_examples() {
        let s = isys(3);
        assert_eq!(bfs_geodesic_length(&s, &w(&s, "a^-1 b^-1"), 8).unwrap(), 2);
        assert_eq!(bfs_geodesic_length(&s, &Word::empty(), 8).unwrap(), 0);
        let s3 = build_system(&p3()).unwrap();
        assert_eq!(bfs_geodesic_length(&s3, &w(&s3, "a^-1"), 8).unwrap(), 1);
        // tight cap errors
        assert!(matches!(
            bfs_geodesic_length(&s, &w(&s, "a b a b"), 2),
            Err(GeodesicError::CapExceeded(2))
        ));
    }

    #[test]
    fn homogeneity_gate_and_counterexample_shape() {
        let t25 = build_system(&t_pq(2, 5)).unwrap();
        let backend = Backend::reference();
        match geodesic_nf(&t25, &w(&t25, "a^-1 a^-1 b"), &backend) {
            Err(GeodesicError::NotHomogeneous { system, lhs, rhs, .. }) => {
                assert_eq!(system, "t25");
                assert_eq!((lhs.min(rhs), lhs.max(rhs)), (2, 5));
            }
            other => panic!("expected NotHomogeneous, got {other:?}"),
        }
        // the naive replacement really would grow the word here:
        // a^-2 b has normal form delta^-1 . b, and the replacement word for
        // b has length q - 1 = 4 > 3 = |input|.
        let input = w(&t25, "a^-1 a^-1 b");
        let nf = greedy_reference(&t25, &input);
        assert_eq!(nf.p, -1);
        assert_eq!(nf.factors.len(), 1);
        let replacement_len = t25.word_of(t25.dpartial(nf.factors[0])).len();
        assert_eq!(replacement_len, 4);
        assert!(replacement_len > input.len());
    }

    #[test]
    fn optimal_on_small_exhaustive_i23() {
        let s = isys(3);
        let backend = Backend::reference();
        let ball = GeodesicBall::build(&s, 4);
        let alphabet: Vec<Letter> =
            (0..2).flat_map(|a| [Letter::pos(a), Letter::neg(a)]).collect();
        let mut words = vec![Word::empty()];
        for _ in 0..4 {
            let mut next = Vec::new();
            for word in &words {
                for &l in &alphabet {
                    let mut v = word.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            for word in &next {
                let g = geodesic_nf(&s, word, &backend).unwrap();
                let nf = greedy_reference(&s, word);
                let best = ball.lookup(&nf).unwrap();
                assert_eq!(g.len(), best, "word {}", word.render(s.atom_names()));
                // soundness: same element
                assert_eq!(greedy_reference(&s, &g), nf);
                // determinism
                assert_eq!(g, geodesic_nf(&s, word, &backend).unwrap());
            }
            words = next;
        }
    }

    #[test]
    fn geodesic_never_longer_than_input() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for def in [i2_classical(3), i2_classical(4), p3()] {
            let s = build_system(&def).unwrap();
            let backend = Backend::reference();
            for _ in 0..300 {
                let len = rng.gen_range(0..=24);
                let word = Word(
                    (0..len)
                        .map(|_| Letter {
                            atom: rng.gen_range(0..s.n_atoms()),
                            positive: rng.gen_bool(0.5),
                        })
                        .collect(),
                );
                let g = geodesic_nf(&s, &word, &backend).unwrap();
                assert!(g.len() <= word.len());
                let probe = word.concat(&g.inverse());
                assert!(word_problem(&s, &probe, &backend).unwrap());
            }
        }
    }

    #[test]
    fn plan_reported_in_threshold_case() {
        let s = isys(3);
        let backend = Backend::reference();
        let nf = NormalForm { p: -1, factors: vec![id_of(&s, "ab"), id_of(&s, "a")] };
        let word = nf.to_word(&s);
        let (g, plan) = geodesic_nf_with_plan(&s, &word, &backend).unwrap();
        let plan = plan.expect("threshold case");
        assert_eq!(plan.t, 2);
        assert_eq!(plan.indices, vec![0]);
        assert_eq!(g.len(), bfs_geodesic_length(&s, &word, 12).unwrap());
    }
}
