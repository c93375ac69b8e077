//! Built-in system definitions: torus-knot monoids, classical and dual
//! dihedral Artin monoids, pure dihedral monoids, the one-generator case,
//! and the non-spindle fixture on three strands.

use std::collections::BTreeMap;

use crate::laurent::{burau_s1, burau_s2, LaurentMatrix};
use crate::system::def::SystemDef;

fn letter_names(n: usize) -> Vec<String> {
    assert!(n <= 26, "builtin systems use single-letter atom names");
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Torus-knot monoid T(p, q): two atoms with a^p = b^q. The (2, 3) instance
/// carries the fixed reduced-Burau representation (a as the half twist,
/// b as the dual element).
pub fn t_pq(p: usize, q: usize) -> SystemDef {
    assert!(p >= 1 && q >= 1);
    let matrix_rep = if (p, q) == (2, 3) {
        let s1 = burau_s1();
        let s2 = burau_s2();
        let a = s1.mul(&s2).mul(&s1);
        let b = s1.mul(&s2);
        Some(BTreeMap::from([(0, a), (1, b)]))
    } else {
        None
    };
    SystemDef {
        name: format!("t{p}{q}"),
        atoms: letter_names(2),
        delta_chains: Some(vec![vec![0; p], vec![1; q]]),
        extra_relations: Vec::new(),
        delta_word: None,
        matrix_rep,
    }
}

/// Classical dihedral Artin monoid I2(m): aba... = bab... (m letters each).
/// The m = 3 instance is the 3-strand braid monoid and carries the Burau
/// representation.
pub fn i2_classical(m: usize) -> SystemDef {
    assert!(m >= 2);
    let chain = |first: usize| (0..m).map(|i| (first + i) % 2).collect::<Vec<_>>();
    let matrix_rep = if m == 3 {
        Some(BTreeMap::from([(0, burau_s1()), (1, burau_s2())]))
    } else {
        None
    };
    SystemDef {
        name: format!("i2-{m}"),
        atoms: letter_names(2),
        delta_chains: Some(vec![chain(0), chain(1)]),
        extra_relations: Vec::new(),
        delta_word: None,
        matrix_rep,
    }
}

/// Dual dihedral monoid: m atoms with x1 xm = xm x(m-1) = ... = x2 x1.
/// For m = 3 the atoms are the three band generators of the 3-strand braid
/// group and carry the Burau representation.
pub fn i2_dual(m: usize) -> SystemDef {
    assert!(m >= 3);
    let mut chains = Vec::with_capacity(m);
    chains.push(vec![0, m - 1]);
    for i in 1..m {
        chains.push(vec![i, i - 1]);
    }
    let matrix_rep = if m == 3 {
        let s1 = burau_s1();
        let s2 = burau_s2();
        let band = s2.mul(&s1).mul(&s2.inverse().expect("burau generators are invertible"));
        Some(BTreeMap::from([(0, s1), (1, s2), (2, band)]))
    } else {
        None
    };
    SystemDef {
        name: format!("i2-dual-{m}"),
        atoms: letter_names(m),
        delta_chains: Some(chains),
        extra_relations: Vec::new(),
        delta_word: None,
        matrix_rep,
    }
}

/// Pure dihedral monoid of rank n: the n cyclic rotations of the product of
/// all atoms are equal. Rank 3 is the 3-strand pure braid group and carries
/// the squared-band Burau representation.
pub fn pure_dihedral(n: usize) -> SystemDef {
    assert!(n >= 2);
    let chains: Vec<Vec<usize>> =
        (0..n).map(|first| (0..n).map(|i| (first + i) % n).collect()).collect();
    let matrix_rep = if n == 3 { Some(p3_rep()) } else { None };
    SystemDef {
        name: if n == 3 { "p3".to_string() } else { format!("pure-dihedral-{n}") },
        atoms: letter_names(n),
        delta_chains: Some(chains),
        extra_relations: Vec::new(),
        delta_word: None,
        matrix_rep,
    }
}

/// The 3-strand pure braid group with atoms the squared band generators,
/// ordered so the product of the chain equals the full twist.
fn p3_rep() -> BTreeMap<usize, LaurentMatrix> {
    let s1 = burau_s1();
    let s2 = burau_s2();
    let band = s2.mul(&s1).mul(&s2.inverse().expect("invertible"));
    let a = band.mul(&band);
    let b = s2.mul(&s2);
    let c = s1.mul(&s1);
    BTreeMap::from([(0, a), (1, b), (2, c)])
}

/// 3-strand pure braid group presentation; alias for `pure_dihedral(3)`.
pub fn p3() -> SystemDef {
    pure_dihedral(3)
}

/// The one-generator case: a single atom equal to delta; the group is the
/// integers.
pub fn z1() -> SystemDef {
    SystemDef {
        name: "z".to_string(),
        atoms: vec!["a".to_string()],
        delta_chains: Some(vec![vec![0]]),
        extra_relations: Vec::new(),
        delta_word: None,
        matrix_rep: None,
    }
}

/// The non-spindle 3-strand fixture: s b s = b b with delta b^3. Builds as
/// a Garside system of eight simples but fails the spindle check.
pub fn nonspindle_b3() -> SystemDef {
    SystemDef {
        name: "nonspindle-b3".to_string(),
        atoms: vec!["s".to_string(), "b".to_string()],
        delta_chains: None,
        extra_relations: vec![(vec![0, 1, 0], vec![1, 1])],
        delta_word: Some(vec![1, 1, 1]),
        matrix_rep: None,
    }
}

/// Every builtin definition shipped with the command-line tool.
pub fn all_builtin_defs() -> Vec<SystemDef> {
    vec![
        t_pq(2, 3),
        t_pq(2, 5),
        t_pq(3, 4),
        i2_classical(3),
        i2_classical(4),
        i2_dual(3),
        i2_dual(4),
        p3(),
        pure_dihedral(4),
        z1(),
        nonspindle_b3(),
    ]
}
