//! System definitions: the presentation data a Garside system is built
//! from, and the line-oriented text format for definition files.

use std::collections::BTreeMap;

use crate::error::{BuildError, WordError};
use crate::laurent::{LaurentMatrix, LaurentPoly};
use crate::word::AtomId;

/// Presentation of a candidate Garside monoid.
///
/// Either `delta_chains` is given (one positive word per atom, chain `i`
/// starting with atom `i`, all chains declared equal and equal to the
/// Garside element), or `extra_relations` plus an explicit `delta_word`
/// describe a general positive presentation with a designated element.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemDef {
    pub name: String,
    pub atoms: Vec<String>,
    pub delta_chains: Option<Vec<Vec<AtomId>>>,
    pub extra_relations: Vec<(Vec<AtomId>, Vec<AtomId>)>,
    pub delta_word: Option<Vec<AtomId>>,
    pub matrix_rep: Option<BTreeMap<AtomId, LaurentMatrix>>,
}

impl SystemDef {
    pub fn validate(&self) -> Result<(), BuildError> {
        if self.atoms.is_empty() {
            return Err(BuildError::MalformedDef("system has zero atoms".into()));
        }
        for (i, name) in self.atoms.iter().enumerate() {
            if name.is_empty() {
                return Err(BuildError::MalformedDef(format!("atom #{i} has empty name")));
            }
            if name.contains(|c: char| c.is_whitespace() || c == '^' || c == ',' || c == '|') {
                return Err(BuildError::MalformedDef(format!(
                    "atom name '{name}' contains a reserved character"
                )));
            }
            if self.atoms[..i].contains(name) {
                return Err(BuildError::MalformedDef(format!("duplicate atom name '{name}'")));
            }
        }
        match (&self.delta_chains, &self.delta_word) {
            (Some(chains), _) => {
                if chains.len() != self.atoms.len() {
                    return Err(BuildError::MalformedDef(format!(
                        "expected one delta chain per atom ({} atoms, {} chains)",
                        self.atoms.len(),
                        chains.len()
                    )));
                }
                for (i, chain) in chains.iter().enumerate() {
                    if chain.is_empty() {
                        return Err(BuildError::MalformedDef(format!("delta chain #{i} is empty")));
                    }
                    if chain[0] != i {
                        return Err(BuildError::MalformedDef(format!(
                            "delta chain #{i} must start with atom '{}'",
                            self.atoms[i]
                        )));
                    }
                    for &a in chain {
                        if a >= self.atoms.len() {
                            return Err(BuildError::MalformedDef(format!(
                                "delta chain #{i} references atom #{a}"
                            )));
                        }
                    }
                }
            }
            (None, Some(w)) => {
                if w.is_empty() {
                    return Err(BuildError::MalformedDef("delta word is empty".into()));
                }
            }
            (None, None) => {
                return Err(BuildError::MalformedDef(
                    "definition needs delta chains or an explicit delta word".into(),
                ));
            }
        }
        for (l, r) in &self.extra_relations {
            if l.is_empty() || r.is_empty() {
                return Err(BuildError::MalformedDef(
                    "relations must relate two nonempty positive words".into(),
                ));
            }
            for &a in l.iter().chain(r.iter()) {
                if a >= self.atoms.len() {
                    return Err(BuildError::MalformedDef(format!("relation references atom #{a}")));
                }
            }
        }
        if let Some(rep) = &self.matrix_rep {
            let mut dim = None;
            for (&atom, m) in rep {
                if atom >= self.atoms.len() {
                    return Err(BuildError::MalformedDef(format!("rep references atom #{atom}")));
                }
                match dim {
                    None => dim = Some(m.dim),
                    Some(d) if d == m.dim => {}
                    Some(d) => {
                        return Err(BuildError::MalformedDef(format!(
                            "rep matrices disagree on dimension ({d} vs {})",
                            m.dim
                        )))
                    }
                }
            }
            if rep.len() != self.atoms.len() {
                return Err(BuildError::MalformedDef(
                    "rep must cover every atom or be omitted".into(),
                ));
            }
        }
        Ok(())
    }

    /// The defining relations: all chain pairs plus the extra relations.
    pub fn relations(&self) -> Vec<(Vec<AtomId>, Vec<AtomId>)> {
        let mut rels = Vec::new();
        if let Some(chains) = &self.delta_chains {
            for i in 0..chains.len() {
                for j in i + 1..chains.len() {
                    rels.push((chains[i].clone(), chains[j].clone()));
                }
            }
        }
        rels.extend(self.extra_relations.iter().cloned());
        rels
    }

    /// The designated word for the Garside element.
    pub fn delta(&self) -> Vec<AtomId> {
        if let Some(w) = &self.delta_word {
            return w.clone();
        }
        self.delta_chains.as_ref().expect("validated")[0].clone()
    }

    fn atom_id(&self, name: &str) -> Result<AtomId, BuildError> {
        self.atoms
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| BuildError::MalformedDef(format!("unknown atom '{name}'")))
    }

    fn parse_positive(&self, text: &str) -> Result<Vec<AtomId>, BuildError> {
        text.split_whitespace().map(|t| self.atom_id(t)).collect()
    }

    /// Parse the definition file format.
    ///
    /// Lines (order free, `#` starts a comment):
    ///   name: <identifier>
    ///   atoms: <a> <b> ...
    ///   delta: <w1> | <w2> | ...          spindle chains, one per atom
    ///   relation: <u> = <v>               general positive relation
    ///   delta-word: <w>                   designated delta for relation form
    ///   rep <atom>: <e> <e> ; <e> <e>     rows ;-separated, entries [c@e,...]
    pub fn parse(text: &str) -> Result<SystemDef, BuildError> {
        let mut def = SystemDef {
            name: String::new(),
            atoms: Vec::new(),
            delta_chains: None,
            extra_relations: Vec::new(),
            delta_word: None,
            matrix_rep: None,
        };
        let mut chains_text: Option<String> = None;
        let mut relations_text: Vec<String> = Vec::new();
        let mut delta_word_text: Option<String> = None;
        let mut rep_text: Vec<(String, String)> = Vec::new();

        for (lineno, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (head, rest) = line.split_once(':').ok_or_else(|| {
                BuildError::MalformedDef(format!("line {}: expected '<key>: ...'", lineno + 1))
            })?;
            let head = head.trim();
            let rest = rest.trim();
            match head {
                "name" => def.name = rest.to_string(),
                "atoms" => def.atoms = rest.split_whitespace().map(str::to_string).collect(),
                "delta" => chains_text = Some(rest.to_string()),
                "relation" => relations_text.push(rest.to_string()),
                "delta-word" => delta_word_text = Some(rest.to_string()),
                _ => {
                    if let Some(atom) = head.strip_prefix("rep ") {
                        rep_text.push((atom.trim().to_string(), rest.to_string()));
                    } else {
                        return Err(BuildError::MalformedDef(format!(
                            "line {}: unknown key '{head}'",
                            lineno + 1
                        )));
                    }
                }
            }
        }

        if def.name.is_empty() {
            return Err(BuildError::MalformedDef("missing 'name:' line".into()));
        }
        if def.atoms.is_empty() {
            return Err(BuildError::MalformedDef("missing or empty 'atoms:' line".into()));
        }
        if let Some(chains) = chains_text {
            let parsed: Result<Vec<_>, _> =
                chains.split('|').map(|c| def.parse_positive(c)).collect();
            def.delta_chains = Some(parsed?);
        }
        for rel in relations_text {
            let (l, r) = rel.split_once('=').ok_or_else(|| {
                BuildError::MalformedDef(format!("relation '{rel}' needs '<u> = <v>'"))
            })?;
            def.extra_relations.push((def.parse_positive(l)?, def.parse_positive(r)?));
        }
        if let Some(w) = delta_word_text {
            def.delta_word = Some(def.parse_positive(&w)?);
        }
        if !rep_text.is_empty() {
            let mut rep = BTreeMap::new();
            for (atom, body) in rep_text {
                let id = def.atom_id(&atom)?;
                let rows: Result<Vec<Vec<LaurentPoly>>, WordError> = body
                    .split(';')
                    .map(|row| row.split_whitespace().map(LaurentPoly::parse).collect())
                    .collect();
                let rows = rows.map_err(|e| BuildError::MalformedDef(e.to_string()))?;
                let m = LaurentMatrix::from_rows(rows)
                    .map_err(|e| BuildError::MalformedDef(e.to_string()))?;
                rep.insert(id, m);
            }
            def.matrix_rep = Some(rep);
        }
        def.validate()?;
        Ok(def)
    }

    /// Render back into the file format.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("name: {}\n", self.name));
        out.push_str(&format!("atoms: {}\n", self.atoms.join(" ")));
        let word = |w: &[AtomId]| {
            w.iter().map(|&a| self.atoms[a].as_str()).collect::<Vec<_>>().join(" ")
        };
        if let Some(chains) = &self.delta_chains {
            let chains = chains.iter().map(|c| word(c)).collect::<Vec<_>>().join(" | ");
            out.push_str(&format!("delta: {chains}\n"));
        }
        for (l, r) in &self.extra_relations {
            out.push_str(&format!("relation: {} = {}\n", word(l), word(r)));
        }
        if let Some(w) = &self.delta_word {
            out.push_str(&format!("delta-word: {}\n", word(w)));
        }
        if let Some(rep) = &self.matrix_rep {
            for (&atom, m) in rep {
                let rows = (0..m.dim)
                    .map(|i| {
                        (0..m.dim).map(|j| m.at(i, j).render()).collect::<Vec<_>>().join(" ")
                    })
                    .collect::<Vec<_>>()
                    .join(" ; ");
                out.push_str(&format!("rep {}: {rows}\n", self.atoms[atom]));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_spindle_form() {
        let def = SystemDef::parse(
            "# comment\nname: t23\natoms: a b\ndelta: a a | b b b\n",
        )
        .unwrap();
        assert_eq!(def.name, "t23");
        assert_eq!(def.atoms, vec!["a", "b"]);
        assert_eq!(def.delta_chains, Some(vec![vec![0, 0], vec![1, 1, 1]]));
        assert_eq!(def.relations(), vec![(vec![0, 0], vec![1, 1, 1])]);
        assert_eq!(def.delta(), vec![0, 0]);
    }

    #[test]
    fn parse_relation_form() {
        let def = SystemDef::parse(
            "name: fixture\natoms: s b\nrelation: s b s = b b\ndelta-word: b b b\n",
        )
        .unwrap();
        assert_eq!(def.extra_relations, vec![(vec![0, 1, 0], vec![1, 1])]);
        assert_eq!(def.delta(), vec![1, 1, 1]);
    }

    #[test]
    fn render_parse_round_trip() {
        let def = SystemDef::parse(
            "name: t23\natoms: a b\ndelta: a a | b b b\nrep a: [] [-1@1] ; [-1@2] []\nrep b: [] [-1@1] ; [1@1] [-1@1]\n",
        )
        .unwrap();
        let again = SystemDef::parse(&def.render()).unwrap();
        assert_eq!(def, again);
    }

    #[test]
    fn rejects_malformed() {
        // zero atoms
        assert!(SystemDef::parse("name: x\natoms:\ndelta-word: a\n").is_err());
        // chain not starting with its atom
        assert!(SystemDef::parse("name: x\natoms: a b\ndelta: b a | b b\n").is_err());
        // no delta at all
        assert!(SystemDef::parse("name: x\natoms: a\nrelation: a = a a\n").is_err());
        // empty relation side
        assert!(SystemDef::parse("name: x\natoms: a\nrelation: a =\ndelta-word: a\n").is_err());
        // duplicate atoms
        assert!(SystemDef::parse("name: x\natoms: a a\ndelta: a a | a a\n").is_err());
    }
}
