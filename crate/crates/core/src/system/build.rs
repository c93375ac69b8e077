//! Construction of a Garside system from a presentation: breadth-first
//! enumeration of the divisor classes of delta, balance / cancellativity /
//! lattice checks, and the complement and twist tables.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use crate::error::BuildError;
use crate::system::closure::{ClassInfo, ClosureCaps, Rewriter};
use crate::system::def::SystemDef;
use crate::system::{GarsideSystem, SimpleEntry, SimpleTrie, SystemParts};
use crate::word::AtomId;
use crate::SimpleId;

#[derive(Debug, Clone, Copy)]
pub struct BuildConfig {
    /// Override for the closure word-length cap. The default is three times
    /// the norm of delta, measured after the delta class is known.
    pub closure_len_cap: Option<usize>,
    pub closure_class_cap: usize,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { closure_len_cap: None, closure_class_cap: 500_000 }
    }
}

pub fn build_system(def: &SystemDef) -> Result<GarsideSystem, BuildError> {
    build_system_with(def, &BuildConfig::default())
}

pub fn build_system_with(
    def: &SystemDef,
    config: &BuildConfig,
) -> Result<GarsideSystem, BuildError> {
    def.validate()?;
    let relations = def.relations();
    let delta_word = def.delta();
    let n_atoms = def.atoms.len();

    let max_side = relations
        .iter()
        .flat_map(|(l, r)| [l.len(), r.len()])
        .max()
        .unwrap_or(0);
    let default_len_cap = 3 * (delta_word.len() + max_side) + 4;
    let caps = ClosureCaps {
        max_word_len: config.closure_len_cap.unwrap_or(default_len_cap),
        max_class_size: config.closure_class_cap,
    };
    let rw = Rewriter::new(&relations, caps);
    let render = |w: &[AtomId]| {
        w.iter().map(|&a| def.atoms[a].as_str()).collect::<Vec<_>>().join(" ")
    };

    // Delta's class fixes the length bounds.
    let delta_class = rw.class(&delta_word)?;
    let len_max = delta_class.words.iter().map(|w| w.len()).max().unwrap();
    let len_min = delta_class.words.iter().map(|w| w.len()).min().unwrap();

    // Left divisors: classes of all prefixes of all delta words.
    // Right divisors: classes of all suffixes.
    let mut left: BTreeMap<Vec<AtomId>, Rc<ClassInfo>> = BTreeMap::new();
    let mut right: BTreeMap<Vec<AtomId>, Rc<ClassInfo>> = BTreeMap::new();
    for w in &delta_class.words {
        for cut in 0..=w.len() {
            let pre = rw.class(&w[..cut])?;
            left.entry(pre.key.clone()).or_insert(pre);
            let suf = rw.class(&w[cut..])?;
            right.entry(suf.key.clone()).or_insert(suf);
        }
    }
    if left.keys().ne(right.keys()) {
        let only_left: Vec<String> =
            left.keys().filter(|k| !right.contains_key(*k)).map(|k| render(k)).collect();
        let only_right: Vec<String> =
            right.keys().filter(|k| !left.contains_key(*k)).map(|k| render(k)).collect();
        return Err(BuildError::NotBalanced(format!(
            "left-only divisors [{}], right-only divisors [{}]",
            only_left.join(", "),
            only_right.join(", ")
        )));
    }

    // Assign SimpleIds: identity first, delta last, proper simples sorted by
    // (canonical length, lex).
    let delta_key = delta_class.key.clone();
    let mut proper: Vec<(Vec<AtomId>, Rc<ClassInfo>)> = left
        .iter()
        .filter(|(k, _)| !k.is_empty() && **k != delta_key)
        .map(|(k, c)| (k.clone(), Rc::clone(c)))
        .collect();
    proper.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));

    let mut simples: Vec<SimpleEntry> = Vec::with_capacity(proper.len() + 2);
    simples.push(SimpleEntry {
        id: 0,
        canonical_word: Vec::new(),
        all_words: vec![Vec::new()],
        len: 0,
    });
    for (key, class) in &proper {
        simples.push(SimpleEntry {
            id: simples.len(),
            canonical_word: key.clone(),
            all_words: class.words.iter().cloned().collect(),
            len: key.len(),
        });
    }
    simples.push(SimpleEntry {
        id: simples.len(),
        canonical_word: delta_word.clone(),
        all_words: delta_class.words.iter().cloned().collect(),
        len: delta_word.len(),
    });
    let n = simples.len();
    let delta: SimpleId = n - 1;

    // Word -> simple id over every word of every simple.
    let mut word_id: HashMap<Vec<AtomId>, SimpleId> = HashMap::new();
    for e in &simples {
        for w in &e.all_words {
            if let Some(prev) = word_id.insert(w.clone(), e.id) {
                if prev != e.id {
                    return Err(BuildError::NotLattice(format!(
                        "word '{}' lies in two divisor classes",
                        render(w)
                    )));
                }
            }
        }
    }

    // Atoms must be divisors (they generate, and delta is a common multiple).
    let mut atom_simple = vec![usize::MAX; n_atoms];
    for a in 0..n_atoms {
        match word_id.get(&vec![a]) {
            Some(&id) => atom_simple[a] = id,
            None => {
                return Err(BuildError::NotLattice(format!(
                    "atom '{}' is not a divisor of delta",
                    def.atoms[a]
                )))
            }
        }
    }
    let mut simple_atom = vec![None; n];
    for a in 0..n_atoms {
        simple_atom[atom_simple[a]] = Some(a);
    }

    // Desk-scale cancellativity: products of three divisors, grouped by
    // (left factor, right factor, product class); the middle factor must be
    // determined.
    let key_of = |w: &[AtomId]| rw.key(w);
    {
        let mut seen: HashMap<(SimpleId, SimpleId, Vec<AtomId>), SimpleId> = HashMap::new();
        let mut buf: Vec<AtomId> = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    buf.clear();
                    buf.extend_from_slice(&simples[a].canonical_word);
                    buf.extend_from_slice(&simples[b].canonical_word);
                    buf.extend_from_slice(&simples[c].canonical_word);
                    let key = key_of(&buf)?;
                    if let Some(&prev_b) = seen.get(&(a, c, key.clone())) {
                        if prev_b != b {
                            return Err(BuildError::NotCancellative(format!(
                                "{} . {} . {} = {} . {} . {} but middles differ",
                                render(&simples[a].canonical_word),
                                render(&simples[prev_b].canonical_word),
                                render(&simples[c].canonical_word),
                                render(&simples[a].canonical_word),
                                render(&simples[b].canonical_word),
                                render(&simples[c].canonical_word),
                            )));
                        }
                    } else {
                        seen.insert((a, c, key), b);
                    }
                }
            }
        }
    }

    // Divisibility restricted to the simples, via prefix / suffix classes.
    let mut left_div = vec![false; n * n];
    let mut right_div = vec![false; n * n];
    for t in 0..n {
        let mut pre_ids: BTreeSet<SimpleId> = BTreeSet::new();
        let mut suf_ids: BTreeSet<SimpleId> = BTreeSet::new();
        for w in &simples[t].all_words {
            for cut in 0..=w.len() {
                match word_id.get(&w[..cut]) {
                    Some(&id) => {
                        pre_ids.insert(id);
                    }
                    None => {
                        return Err(BuildError::NotLattice(format!(
                            "prefix '{}' of a divisor word is not itself a divisor",
                            render(&w[..cut])
                        )))
                    }
                }
                match word_id.get(&w[cut..]) {
                    Some(&id) => {
                        suf_ids.insert(id);
                    }
                    None => {
                        return Err(BuildError::NotLattice(format!(
                            "suffix '{}' of a divisor word is not itself a divisor",
                            render(&w[cut..])
                        )))
                    }
                }
            }
        }
        for s in pre_ids {
            left_div[s * n + t] = true;
        }
        for s in suf_ids {
            right_div[s * n + t] = true;
        }
    }

    // gcd / lcm tables with uniqueness checks.
    let mut meet_left = vec![0usize; n * n];
    let mut meet_right = vec![0usize; n * n];
    let mut join_left = vec![0usize; n * n];
    let mut join_right = vec![0usize; n * n];
    let unique_max = |cands: &[SimpleId], div: &dyn Fn(SimpleId, SimpleId) -> bool| {
        cands
            .iter()
            .copied()
            .find(|&m| cands.iter().all(|&c| div(c, m)))
    };
    for s in 0..n {
        for t in 0..n {
            let common_left: Vec<SimpleId> =
                (0..n).filter(|&d| left_div[d * n + s] && left_div[d * n + t]).collect();
            match unique_max(&common_left, &|c, m| left_div[c * n + m]) {
                Some(m) => meet_left[s * n + t] = m,
                None => {
                    return Err(BuildError::NotLattice(format!(
                        "pair ({}, {}) has no left gcd among the divisors",
                        render(&simples[s].canonical_word),
                        render(&simples[t].canonical_word)
                    )))
                }
            }
            let common_right: Vec<SimpleId> =
                (0..n).filter(|&d| right_div[d * n + s] && right_div[d * n + t]).collect();
            match unique_max(&common_right, &|c, m| right_div[c * n + m]) {
                Some(m) => meet_right[s * n + t] = m,
                None => {
                    return Err(BuildError::NotLattice(format!(
                        "pair ({}, {}) has no right gcd among the divisors",
                        render(&simples[s].canonical_word),
                        render(&simples[t].canonical_word)
                    )))
                }
            }
            let upper_left: Vec<SimpleId> =
                (0..n).filter(|&c| left_div[s * n + c] && left_div[t * n + c]).collect();
            match upper_left.iter().copied().find(|&m| upper_left.iter().all(|&c| left_div[m * n + c])) {
                Some(m) => join_left[s * n + t] = m,
                None => {
                    return Err(BuildError::NotLattice(format!(
                        "pair ({}, {}) has no lcm in the left divisibility order",
                        render(&simples[s].canonical_word),
                        render(&simples[t].canonical_word)
                    )))
                }
            }
            let upper_right: Vec<SimpleId> =
                (0..n).filter(|&c| right_div[s * n + c] && right_div[t * n + c]).collect();
            match upper_right
                .iter()
                .copied()
                .find(|&m| upper_right.iter().all(|&c| right_div[m * n + c]))
            {
                Some(m) => join_right[s * n + t] = m,
                None => {
                    return Err(BuildError::NotLattice(format!(
                        "pair ({}, {}) has no lcm in the right divisibility order",
                        render(&simples[s].canonical_word),
                        render(&simples[t].canonical_word)
                    )))
                }
            }
        }
    }

    // Product and left-quotient tables.
    let mut mult: Vec<Option<SimpleId>> = vec![None; n * n];
    let mut buf: Vec<AtomId> = Vec::new();
    for s in 0..n {
        for t in 0..n {
            buf.clear();
            buf.extend_from_slice(&simples[s].canonical_word);
            buf.extend_from_slice(&simples[t].canonical_word);
            let key = key_of(&buf)?;
            mult[s * n + t] = word_id.get(&key).copied();
        }
    }
    let mut lquot: Vec<Option<SimpleId>> = vec![None; n * n];
    for g in 0..n {
        for w in 0..n {
            if let Some(v) = mult[g * n + w] {
                if let Some(prev) = lquot[g * n + v] {
                    if prev != w {
                        return Err(BuildError::NotCancellative(format!(
                            "two left quotients of '{}' by '{}'",
                            render(&simples[v].canonical_word),
                            render(&simples[g].canonical_word)
                        )));
                    }
                }
                lquot[g * n + v] = Some(w);
            }
        }
    }
    for g in 0..n {
        for v in 0..n {
            debug_assert_eq!(
                left_div[g * n + v],
                lquot[g * n + v].is_some(),
                "divisibility and quotient tables must agree"
            );
        }
    }

    // Right complement map s -> s \ delta and its inverse s -> delta / s.
    let mut dpartial = vec![0usize; n];
    for s in 0..n {
        match lquot[s * n + delta] {
            Some(c) => dpartial[s] = c,
            None => {
                return Err(BuildError::NotLattice(format!(
                    "divisor '{}' has no right complement in delta",
                    render(&simples[s].canonical_word)
                )))
            }
        }
    }
    let mut dpartial_inv = vec![usize::MAX; n];
    for s in 0..n {
        let c = dpartial[s];
        if dpartial_inv[c] != usize::MAX {
            return Err(BuildError::NotCancellative(
                "right complement map is not injective".into(),
            ));
        }
        dpartial_inv[c] = s;
    }
    // Independent check that the inverse is the left complement.
    for s in 0..n {
        let c = dpartial_inv[s];
        if mult[c * n + s] != Some(delta) {
            return Err(BuildError::NotLattice(format!(
                "complement maps are not mutually inverse at '{}'",
                render(&simples[s].canonical_word)
            )));
        }
    }

    // tau = partial^2 on simples; check it is the delta conjugation on atoms.
    let tau_simple: Vec<SimpleId> = (0..n).map(|s| dpartial[dpartial[s]]).collect();
    let mut tau_atoms = vec![0usize; n_atoms];
    for a in 0..n_atoms {
        let img = tau_simple[atom_simple[a]];
        match simple_atom[img] {
            Some(b) => tau_atoms[a] = b,
            None => {
                return Err(BuildError::NotLattice(format!(
                    "tau image of atom '{}' is not an atom",
                    def.atoms[a]
                )))
            }
        }
        // delta . tau(a) = a . delta as monoid elements
        let mut lhs = delta_word.clone();
        lhs.push(tau_atoms[a]);
        let mut rhs = vec![a];
        rhs.extend_from_slice(&delta_word);
        if !rw.equivalent(&lhs, &rhs)? {
            return Err(BuildError::NotLattice(format!(
                "tau(atom '{}') does not satisfy the conjugation identity",
                def.atoms[a]
            )));
        }
    }

    // Order of the atom permutation.
    let ord = permutation_order(&tau_atoms);
    {
        // tau^ord must also fix every simple.
        let mut img: Vec<SimpleId> = (0..n).collect();
        for _ in 0..ord {
            img = img.iter().map(|&s| tau_simple[s]).collect();
        }
        if img.iter().enumerate().any(|(s, &t)| s != t) {
            return Err(BuildError::NotLattice(
                "atom order of tau does not fix all simples".into(),
            ));
        }
    }

    let homogeneous = relations.iter().all(|(l, r)| l.len() == r.len());

    // Invariant weight functional: integer atom weights constant across each
    // relation, nonzero on delta. Used as a sound fast filter by oracles.
    let weight = relation_invariant_weight(n_atoms, &relations, &delta_word);
    let weight_delta =
        weight.as_ref().map(|w| delta_word.iter().map(|&a| w[a]).sum()).unwrap_or(0);

    // Trie over all words of all simples.
    let mut trie = SimpleTrie::new(n_atoms);
    for e in &simples {
        for w in &e.all_words {
            trie.insert(w, e.id);
        }
    }

    let matrix_rep = match &def.matrix_rep {
        Some(rep) => {
            let mut v = Vec::with_capacity(n_atoms);
            for a in 0..n_atoms {
                v.push(rep.get(&a).expect("validated: rep covers every atom").clone());
            }
            // The representation must satisfy the defining relations.
            let eval = |w: &[AtomId]| {
                let mut m = crate::laurent::LaurentMatrix::identity(v[0].dim);
                for &a in w {
                    m = m.mul(&v[a]);
                }
                m
            };
            for (l, r) in &relations {
                if eval(l) != eval(r) {
                    return Err(BuildError::MalformedDef(format!(
                        "matrix representation violates relation {} = {}",
                        render(l),
                        render(r)
                    )));
                }
            }
            Some(v)
        }
        None => None,
    };

    let caps_final = ClosureCaps {
        max_word_len: caps.max_word_len.max(3 * len_max),
        max_class_size: caps.max_class_size,
    };

    Ok(GarsideSystem::from_parts(SystemParts {
        name: def.name.clone(),
        atoms: def.atoms.clone(),
        simples,
        atom_simple,
        simple_atom,
        left_div,
        right_div,
        meet_left,
        meet_right,
        join_left,
        join_right,
        mult,
        lquot,
        dpartial,
        dpartial_inv,
        tau_simple,
        tau_atoms,
        ord,
        len_min,
        len_max,
        homogeneous,
        relations,
        delta_word,
        trie,
        caps: caps_final,
        weight,
        weight_delta,
        matrix_rep,
    }))
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut ord = 1usize;
    let mut seen = vec![false; perm.len()];
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        loop {
            seen[cur] = true;
            len += 1;
            cur = perm[cur];
            if cur == start {
                break;
            }
        }
        ord = lcm(ord, len);
    }
    ord
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Find integer atom weights with equal weight on both sides of every
/// relation and nonzero total on the delta word. Exact rational elimination
/// over the relation difference vectors; returns None when no such
/// functional exists.
fn relation_invariant_weight(
    n_atoms: usize,
    relations: &[(Vec<AtomId>, Vec<AtomId>)],
    delta_word: &[AtomId],
) -> Option<Vec<i64>> {
    // Difference count vectors, one row per relation.
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (l, r) in relations {
        let mut row = vec![0i128; n_atoms];
        for &a in l {
            row[a] += 1;
        }
        for &a in r {
            row[a] -= 1;
        }
        if row.iter().any(|&x| x != 0) {
            rows.push(row);
        }
    }
    let mut delta_vec = vec![0i128; n_atoms];
    for &a in delta_word {
        delta_vec[a] += 1;
    }

    // Fraction-free Gaussian elimination to row echelon form.
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for col in 0..n_atoms {
        if let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) {
            rows.swap(r, p);
            let (head, tail) = rows.split_at_mut(r + 1);
            let pivot_row = &head[r];
            for row in tail.iter_mut() {
                if row[col] != 0 {
                    let a = pivot_row[col];
                    let b = row[col];
                    for k in 0..n_atoms {
                        row[k] = row[k] * a - pivot_row[k] * b;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
    }
    rows.truncate(r);

    let free: Vec<usize> = (0..n_atoms).filter(|c| !pivots.contains(c)).collect();
    if free.is_empty() && !rows.is_empty() {
        return None;
    }
    // Try each free column as the seed of a nullspace vector; pick the first
    // with nonzero delta weight.
    let candidates: Vec<usize> = if rows.is_empty() { vec![n_atoms] } else { free };
    for &seed in &candidates {
        let mut w = vec![0i128; n_atoms];
        if rows.is_empty() {
            // no constraints: all-ones works
            w = vec![1; n_atoms];
        } else {
            w[seed] = 1;
            // back substitution
            for (i, &pc) in pivots.iter().enumerate().rev() {
                let mut acc: i128 = 0;
                for c in pc + 1..n_atoms {
                    acc += rows[i][c] * w[c];
                }
                // rows[i][pc] * w[pc] + acc = 0  ->  w[pc] = -acc / rows[i][pc]
                let pv = rows[i][pc];
                if acc % pv != 0 {
                    // scale the whole vector to clear the denominator
                    let g = gcd128(acc.unsigned_abs(), pv.unsigned_abs()) as i128;
                    let scale = (pv / g).abs();
                    for x in w.iter_mut() {
                        *x *= scale;
                    }
                    acc *= scale;
                }
                w[pc] = -acc / pv;
            }
        }
        let dw: i128 = delta_word.iter().map(|&a| w[a]).sum();
        let _ = &delta_vec;
        if dw == 0 {
            continue;
        }
        if dw < 0 {
            for x in w.iter_mut() {
                *x = -*x;
            }
        }
        // make primitive
        let mut g: u128 = 0;
        for &x in &w {
            g = gcd128(g, x.unsigned_abs());
        }
        if g > 1 {
            for x in w.iter_mut() {
                *x /= g as i128;
            }
        }
        if w.iter().all(|&x| x.abs() <= i64::MAX as i128) {
            return Some(w.into_iter().map(|x| x as i64).collect());
        }
    }
    None
}

fn gcd128(a: u128, b: u128) -> u128 {
    if b == 0 {
        a
    } else {
        gcd128(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::builtins::*;
    use crate::system::validate::{axiom_report, axioms_hold};
    use crate::system::SpindleCheck;

    fn sys(def: &SystemDef) -> GarsideSystem {
        build_system(def).unwrap()
    }

    /// Look a simple up by its rendered canonical word.
    fn id_of(s: &GarsideSystem, word: &str) -> SimpleId {
        (0..s.n_simples())
            .find(|&i| s.render_factor(i) == word)
            .unwrap_or_else(|| panic!("no simple '{word}' in {}", s.name))
    }

    #[test]
    fn t23_has_exactly_the_five_simples() {
        let s = sys(&t_pq(2, 3));
        assert_eq!(s.n_simples(), 5);
        let words: Vec<String> = (0..5).map(|i| s.render_factor(i)).collect();
        assert_eq!(words, vec!["", "a", "b", "bb", "aa"]);
        assert_eq!(s.len_min(), 2);
        assert_eq!(s.len_max(), 3);
        assert!(!s.homogeneous());
    }

    #[test]
    fn one_atom_system_is_the_integers() {
        let s = sys(&z1());
        assert_eq!(s.n_simples(), 2);
        assert_eq!(s.spindle_check(), SpindleCheck::Ok);
        assert_eq!(s.system_order(), 1);
        assert!(s.homogeneous());
    }

    #[test]
    fn p3_has_eight_simples_with_expected_complements() {
        let s = sys(&p3());
        assert_eq!(s.n_simples(), 8);
        for w in ["", "a", "b", "c", "ab", "bc", "ca", "abc"] {
            let _ = id_of(&s, w);
        }
        // chain structure: partial(a) = bc, partial(b) = ca, partial(c) = ab
        assert_eq!(s.dpartial(id_of(&s, "a")), id_of(&s, "bc"));
        assert_eq!(s.dpartial(id_of(&s, "b")), id_of(&s, "ca"));
        assert_eq!(s.dpartial(id_of(&s, "c")), id_of(&s, "ab"));
        // delta is central here, so the left complement coincides with the
        // right one and tau is the identity.
        let (dp, dpi, tau) = s.complement_maps(id_of(&s, "a"));
        assert_eq!(
            (dp, dpi, tau),
            (id_of(&s, "bc"), id_of(&s, "bc"), id_of(&s, "a"))
        );
        assert_eq!(s.mult(dpi, id_of(&s, "a")), Some(s.delta()));
        assert_eq!(s.system_order(), 1);
    }

    #[test]
    fn simple_counts_match_closure_for_families() {
        // torus: p + q simples
        for (p, q) in [(2, 3), (2, 5), (3, 4)] {
            assert_eq!(sys(&t_pq(p, q)).n_simples(), p + q, "T({p},{q})");
        }
        // classical dihedral: 2m
        for m in [3, 4, 5] {
            assert_eq!(sys(&i2_classical(m)).n_simples(), 2 * m, "I2({m})");
        }
        // dual dihedral: m + 2
        for m in [3, 4, 5] {
            assert_eq!(sys(&i2_dual(m)).n_simples(), m + 2, "I2*({m})");
        }
        // pure dihedral: n(n-1) + 2
        for n in [2, 3, 4] {
            assert_eq!(sys(&pure_dihedral(n)).n_simples(), n * (n - 1) + 2, "PD({n})");
        }
    }

    #[test]
    fn spindle_checks() {
        for def in [t_pq(2, 3), t_pq(2, 5), i2_classical(3), i2_classical(4), i2_dual(3), i2_dual(4), p3(), pure_dihedral(4), z1()] {
            let s = sys(&def);
            assert_eq!(s.spindle_check(), SpindleCheck::Ok, "{}", s.name);
        }
        let f = sys(&nonspindle_b3());
        assert_eq!(f.n_simples(), 8);
        match f.spindle_check() {
            SpindleCheck::Witness { s, t, gcd } => {
                // the witness gcd must genuinely escape {s, t, 1} and be a
                // common divisor on one side
                assert!(gcd != s && gcd != t && gcd != f.identity());
                assert!(
                    (f.divides_left(gcd, s) && f.divides_left(gcd, t))
                        || (f.divides_right(gcd, s) && f.divides_right(gcd, t))
                );
                // and be the first violation in id-lexicographic order
                let mut first = None;
                'scan: for x in 0..f.n_simples() {
                    for y in 0..f.n_simples() {
                        for g in [f.meet_left(x, y), f.meet_right(x, y)] {
                            if g != x && g != y && g != f.identity() {
                                first = Some((x, y));
                                break 'scan;
                            }
                        }
                    }
                }
                assert_eq!(first, Some((s, t)));
            }
            SpindleCheck::Ok => panic!("fixture must fail the spindle check"),
        }
    }

    #[test]
    fn t23_lattice_examples() {
        let s = sys(&t_pq(2, 3));
        let (a, b, bb, delta) = (id_of(&s, "a"), id_of(&s, "b"), id_of(&s, "bb"), s.delta());
        assert_eq!(s.lattice_meet_join(a, b), (s.identity(), s.identity(), delta, delta));
        assert_eq!(s.lattice_meet_join(b, bb), (b, b, bb, bb));
    }

    #[test]
    fn p3_lattice_example() {
        let s = sys(&p3());
        let (a, ab, delta) = (id_of(&s, "a"), id_of(&s, "ab"), s.delta());
        assert_eq!(s.lattice_meet_join(a, ab), (a, s.identity(), ab, delta));
    }

    #[test]
    fn t23_complement_examples() {
        let s = sys(&t_pq(2, 3));
        let (b, bb, delta) = (id_of(&s, "b"), id_of(&s, "bb"), s.delta());
        assert_eq!(s.complement_maps(b), (bb, bb, b));
        assert_eq!(s.complement_maps(s.identity()), (delta, delta, s.identity()));
    }

    #[test]
    fn system_orders() {
        assert_eq!(sys(&t_pq(2, 3)).system_order(), 1);
        assert_eq!(sys(&i2_classical(3)).system_order(), 2);
        assert_eq!(sys(&i2_classical(4)).system_order(), 1);
        assert_eq!(sys(&i2_dual(3)).system_order(), 3);
        assert_eq!(sys(&z1()).system_order(), 1);
        assert_eq!(sys(&p3()).system_order(), 1);
        // dihedral by chains: tau swaps the two atoms for odd m
        let i23 = sys(&i2_classical(3));
        assert_eq!(i23.tau_atom(0), 1);
        assert_eq!(i23.tau_atom(1), 0);
    }

    #[test]
    fn axiom_suite_all_builtins() {
        for def in all_builtin_defs() {
            let s = sys(&def);
            let expect_spindle = def.name != "nonspindle-b3";
            let report = axiom_report(&s, expect_spindle);
            for c in &report {
                assert!(c.passed, "{}: {} failed ({})", s.name, c.name, c.detail);
            }
        }
    }

    #[test]
    fn malformed_definitions_rejected() {
        let bad = SystemDef {
            name: "bad".into(),
            atoms: vec![],
            delta_chains: None,
            extra_relations: vec![],
            delta_word: Some(vec![0]),
            matrix_rep: None,
        };
        assert!(matches!(build_system(&bad), Err(BuildError::MalformedDef(_))));
    }

    #[test]
    fn closure_cap_override_is_hard_error() {
        let cfg = BuildConfig { closure_len_cap: Some(2), ..Default::default() };
        assert!(matches!(
            build_system_with(&t_pq(2, 3), &cfg),
            Err(BuildError::Closure(_))
        ));
    }

    #[test]
    fn homogeneity_flags() {
        assert!(sys(&i2_classical(4)).homogeneous());
        assert!(sys(&i2_dual(4)).homogeneous());
        assert!(sys(&p3()).homogeneous());
        assert!(!sys(&t_pq(2, 5)).homogeneous());
    }

    #[test]
    fn weight_functional_exists_for_torus() {
        let s = sys(&t_pq(2, 3));
        let (w, wd) = s.weight().expect("torus systems admit a weight");
        assert_eq!(w.len(), 2);
        // both relation sides weigh the same; delta weighs wd > 0
        assert_eq!(2 * w[0], 3 * w[1]);
        assert_eq!(wd, 2 * w[0]);
        assert!(wd > 0);
        // homogeneous systems get the length functional (up to scale)
        let h = sys(&p3());
        let (w, wd) = h.weight().unwrap();
        assert!(w.iter().all(|&x| x == w[0]) && wd == 3 * w[0]);
    }

    #[test]
    fn axioms_hold_helper() {
        assert!(axioms_hold(&sys(&t_pq(2, 3)), true));
        assert!(!axioms_hold(&sys(&nonspindle_b3()), true));
        assert!(axioms_hold(&sys(&nonspindle_b3()), false));
    }
}
