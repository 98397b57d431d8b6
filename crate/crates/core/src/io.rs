//! JSON file formats for semigroups, subsemigroups, presentations and
//! automata, and the word tokenizer used for presentation relations.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::automatic::{AutomaticStructure, Nfa, PaddedRelationNfa, PairLetter};
use crate::error::{Error, Result};
use crate::present::{Assignment, Presentation, Word};
use crate::semigroup::{validate_table, Elem, FiniteSemigroup, SubSemigroup};

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupFile {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl SemigroupFile {
    pub fn from_semigroup(s: &FiniteSemigroup) -> Self {
        SemigroupFile {
            order: s.order(),
            table: s.rows(),
            names: s.names().map(|n| n.to_vec()),
        }
    }

    pub fn build(&self) -> Result<FiniteSemigroup> {
        if self.table.len() != self.order {
            return Err(Error::Input(format!(
                "order is {} but the table has {} rows",
                self.order,
                self.table.len()
            )));
        }
        let s = validate_table(&self.table)?;
        match &self.names {
            Some(n) => s.with_names(n.clone()),
            None => Ok(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubFile {
    pub members: Vec<Elem>,
}

impl SubFile {
    pub fn build(&self, s: &FiniteSemigroup) -> Result<SubSemigroup> {
        SubSemigroup::new(s, &self.members)
    }
}

pub fn semigroup_from_json(text: &str) -> Result<FiniteSemigroup> {
    serde_json::from_str::<SemigroupFile>(text)
        .map_err(|e| Error::Input(e.to_string()))?
        .build()
}

pub fn load_semigroup(path: &Path) -> Result<FiniteSemigroup> {
    read_json::<SemigroupFile>(path)?.build()
}

pub fn load_sub(path: &Path, s: &FiniteSemigroup) -> Result<SubSemigroup> {
    read_json::<SubFile>(path)?.build(s)
}

/// Splits `text` into letters of `alphabet`. Whitespace or commas separate
/// letters explicitly; otherwise the string must have exactly one reading.
pub fn tokenize(text: &str, alphabet: &[String]) -> Result<Word> {
    let text = text.trim();
    if text.contains(|c: char| c.is_whitespace() || c == ',') {
        return text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| letter(t, alphabet))
            .collect();
    }
    // ways[k]: number of readings of text[k..], capped at 2
    let n = text.len();
    let mut ways = vec![0u8; n + 1];
    let mut next = vec![usize::MAX; n + 1];
    ways[n] = 1;
    for k in (0..n).rev() {
        if !text.is_char_boundary(k) {
            continue;
        }
        for (a, name) in alphabet.iter().enumerate() {
            if !name.is_empty() && text[k..].starts_with(name.as_str()) {
                let w = ways[k + name.len()];
                if w > 0 {
                    if ways[k] == 0 {
                        next[k] = a;
                    }
                    ways[k] = (ways[k] + w).min(2);
                }
            }
        }
    }
    match ways[0] {
        0 => Err(Error::InvalidLetter(text.to_string())),
        1 => {
            let mut out = Vec::new();
            let mut k = 0;
            while k < n {
                out.push(next[k]);
                k += alphabet[next[k]].len();
            }
            Ok(out)
        }
        _ => Err(Error::Input(format!("word {text:?} has more than one reading"))),
    }
}

fn letter(t: &str, alphabet: &[String]) -> Result<usize> {
    alphabet
        .iter()
        .position(|a| a == t)
        .ok_or_else(|| Error::InvalidLetter(t.to_string()))
}

/// A word as written in a file: a string to tokenize, or a list of letters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WordSpec {
    Text(String),
    Letters(Vec<String>),
}

impl WordSpec {
    pub fn parse(&self, alphabet: &[String]) -> Result<Word> {
        match self {
            WordSpec::Text(t) => tokenize(t, alphabet),
            WordSpec::Letters(ls) => ls.iter().map(|t| letter(t, alphabet)).collect(),
        }
    }

    /// A string when it reads back unambiguously, else a list.
    pub fn write(word: &[usize], alphabet: &[String]) -> Self {
        let text: String = word.iter().map(|&a| alphabet[a].as_str()).collect();
        match tokenize(&text, alphabet) {
            Ok(w) if w == word && !text.contains(|c: char| c.is_whitespace() || c == ',') => {
                WordSpec::Text(text)
            }
            _ => WordSpec::Letters(word.iter().map(|&a| alphabet[a].clone()).collect()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub alphabet: Vec<String>,
    pub relations: Vec<(WordSpec, WordSpec)>,
    /// letter ↦ element of the semigroup it is meant to present
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment: Option<Vec<Elem>>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation, alpha: Option<&Assignment>) -> Self {
        PresentationFile {
            alphabet: p.alphabet.clone(),
            relations: p
                .relations
                .iter()
                .map(|(u, v)| (WordSpec::write(u, &p.alphabet), WordSpec::write(v, &p.alphabet)))
                .collect(),
            assignment: alpha.map(|a| a.images.clone()),
        }
    }

    pub fn build(&self) -> Result<(Presentation, Option<Assignment>)> {
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.alphabet.iter().find(|a| !seen.insert(a.as_str())) {
            return Err(Error::Input(format!("letter {dup:?} is repeated")));
        }
        if self.alphabet.iter().any(|a| a.is_empty()) {
            return Err(Error::Input("empty letter name".into()));
        }
        let relations = self
            .relations
            .iter()
            .map(|(u, v)| Ok((u.parse(&self.alphabet)?, v.parse(&self.alphabet)?)))
            .collect::<Result<Vec<_>>>()?;
        let p = Presentation::new(self.alphabet.clone(), relations)?;
        let alpha = match &self.assignment {
            Some(images) if images.len() != p.alphabet.len() => return Err(Error::AlphabetMismatch),
            Some(images) => Some(Assignment::new(images.clone())),
            None => None,
        };
        Ok((p, alpha))
    }
}

/// Automaton file. Symbols are letter names, or `[left, right]` pairs with
/// `"$"` for padding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub states: usize,
    pub alphabet: Vec<Value>,
    pub transitions: Vec<(usize, Value, usize)>,
    pub initial: Vec<usize>,
    pub accepting: Vec<usize>,
}

const PAD: &str = "$";

fn automaton_file<L: crate::automatic::Symbol>(nfa: &Nfa<L>, sym: impl Fn(&L) -> Value) -> AutomatonFile {
    let nfa = nfa.remove_epsilon();
    AutomatonFile {
        states: nfa.state_count(),
        alphabet: nfa.alphabet().iter().map(&sym).collect(),
        transitions: nfa
            .transitions()
            .into_iter()
            .map(|(p, a, q)| (p, sym(&a), q))
            .collect(),
        initial: nfa.initial().to_vec(),
        accepting: (0..nfa.state_count()).filter(|&q| nfa.is_accepting(q)).collect(),
    }
}

impl AutomatonFile {
    pub fn from_language(nfa: &Nfa<usize>, names: &[String]) -> Self {
        automaton_file(nfa, |&a| Value::String(names[a].clone()))
    }

    pub fn from_relation(r: &PaddedRelationNfa, left: &[String], right: &[String]) -> Self {
        let name = |names: &[String], x: Option<usize>| match x {
            Some(a) => Value::String(names[a].clone()),
            None => Value::String(PAD.into()),
        };
        automaton_file(r.nfa(), |p| {
            Value::Array(vec![name(left, p.left), name(right, p.right)])
        })
    }

    fn build_nfa<L: crate::automatic::Symbol>(
        &self,
        alphabet: Vec<L>,
        sym: impl Fn(&Value) -> Result<L>,
    ) -> Result<Nfa<L>> {
        let mut nfa = Nfa::new(alphabet);
        for _ in 0..self.states {
            nfa.add_state(false);
        }
        let check = |q: usize| {
            if q < self.states {
                Ok(q)
            } else {
                Err(Error::Input(format!("state {q} out of range")))
            }
        };
        for &q in &self.initial {
            nfa.set_initial(check(q)?);
        }
        for &q in &self.accepting {
            nfa.set_accepting(check(q)?, true);
        }
        for (p, a, q) in &self.transitions {
            nfa.add_transition(check(*p)?, &sym(a)?, check(*q)?)?;
        }
        Ok(nfa)
    }

    pub fn to_language(&self, names: &[String]) -> Result<Nfa<usize>> {
        let sym = |v: &Value| -> Result<usize> {
            v.as_str()
                .and_then(|s| names.iter().position(|n| n == s))
                .ok_or_else(|| Error::InvalidLetter(v.to_string()))
        };
        for v in &self.alphabet {
            sym(v)?;
        }
        self.build_nfa((0..names.len()).collect(), sym)
    }

    pub fn to_relation(&self, left: &[String], right: &[String]) -> Result<PaddedRelationNfa> {
        let side = |names: &[String], v: &Value| -> Result<Option<usize>> {
            match v.as_str() {
                Some(PAD) => Ok(None),
                Some(s) => names
                    .iter()
                    .position(|n| n == s)
                    .map(Some)
                    .ok_or_else(|| Error::InvalidLetter(s.to_string())),
                None => Err(Error::InvalidLetter(v.to_string())),
            }
        };
        let sym = |v: &Value| -> Result<PairLetter> {
            match v.as_array().map(|a| a.as_slice()) {
                Some([l, r]) => Ok(PairLetter::new(side(left, l)?, side(right, r)?)),
                _ => Err(Error::InvalidLetter(v.to_string())),
            }
        };
        for v in &self.alphabet {
            sym(v)?;
        }
        let nfa = self.build_nfa(
            crate::automatic::padded::pair_alphabet(left.len(), right.len()),
            sym,
        )?;
        PaddedRelationNfa::new(nfa, left.len(), right.len())
    }
}

/// An automatic structure together with the semigroup it describes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureFile {
    pub semigroup: SemigroupFile,
    pub generators: Vec<Elem>,
    pub letters: Vec<String>,
    pub language: AutomatonFile,
    pub multipliers: Vec<AutomatonFile>,
    pub equality: AutomatonFile,
}

impl StructureFile {
    pub fn from_structure(st: &AutomaticStructure, s: &FiniteSemigroup) -> Self {
        let names = &st.letter_names;
        StructureFile {
            semigroup: SemigroupFile::from_semigroup(s),
            generators: st.generators.clone(),
            letters: names.clone(),
            language: AutomatonFile::from_language(&st.language, names),
            multipliers: st
                .multipliers
                .iter()
                .map(|m| AutomatonFile::from_relation(m, names, names))
                .collect(),
            equality: AutomatonFile::from_relation(&st.equality, names, names),
        }
    }

    pub fn build(&self) -> Result<(AutomaticStructure, FiniteSemigroup)> {
        let s = self.semigroup.build()?;
        let names = &self.letters;
        if self.generators.len() != names.len() || self.multipliers.len() != names.len() {
            return Err(Error::AlphabetMismatch);
        }
        for &g in &self.generators {
            s.check_element(g)?;
        }
        let st = AutomaticStructure {
            generators: self.generators.clone(),
            letter_names: names.clone(),
            language: self.language.to_language(names)?,
            multipliers: self
                .multipliers
                .iter()
                .map(|m| m.to_relation(names, names))
                .collect::<Result<_>>()?,
            equality: self.equality.to_relation(names, names)?,
        };
        Ok((st, s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automatic::{structure_for_finite, verify_structure};
    use crate::catalog;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn tokenize_unique_reading() {
        let a = names(&["b", "d1", "d"]);
        assert_eq!(tokenize("bd1b", &a).unwrap(), vec![0, 1, 0]);
        assert_eq!(tokenize("b d b", &a).unwrap(), vec![0, 2, 0]);
        assert!(matches!(tokenize("bx", &a), Err(Error::InvalidLetter(_))));
    }

    #[test]
    fn tokenize_rejects_ambiguity() {
        let a = names(&["a", "aa"]);
        assert!(matches!(tokenize("aa", &a), Err(Error::Input(_))));
        assert_eq!(tokenize("a,aa", &a).unwrap(), vec![0, 1]);
    }

    #[test]
    fn ambiguous_words_are_written_as_lists() {
        let a = names(&["a", "aa"]);
        assert_eq!(WordSpec::write(&[0, 0], &a), WordSpec::Letters(names(&["a", "a"])));
        let b = names(&["x", "y"]);
        assert_eq!(WordSpec::write(&[0, 1], &b), WordSpec::Text("xy".into()));
    }

    #[test]
    fn presentation_round_trip() {
        let s = catalog::cyclic_group(3);
        let (p, alpha) = crate::present::presentation_from_table(&s);
        let file = PresentationFile::from_presentation(&p, Some(&alpha));
        let text = serde_json::to_string(&file).unwrap();
        let back: PresentationFile = serde_json::from_str(&text).unwrap();
        let (q, beta) = back.build().unwrap();
        assert_eq!(q, p);
        assert_eq!(beta, Some(alpha));
    }

    #[test]
    fn semigroup_file_rejects_non_associative() {
        let text = r#"{"order":2,"table":[[0,0],[1,0]]}"#;
        assert!(matches!(semigroup_from_json(text), Err(Error::NotAssociative { .. })));
        assert!(matches!(semigroup_from_json("{"), Err(Error::Input(_))));
    }

    #[test]
    fn structure_round_trip() {
        let s = catalog::cyclic_group(4);
        let st = structure_for_finite(&s, &[1]).unwrap();
        let file = StructureFile::from_structure(&st, &s);
        let text = serde_json::to_string(&file).unwrap();
        let (back, s2) = serde_json::from_str::<StructureFile>(&text).unwrap().build().unwrap();
        assert_eq!(s2, s);
        assert_eq!(back.language.enumerate(6), st.language.enumerate(6));
        assert_eq!(back.multipliers[0].enumerate(6), st.multipliers[0].enumerate(6));
        assert!(verify_structure(&back, &s2, 6).valid);
    }
}
