//! Semigroup presentations: multiplication-table presentations, a coset
//! enumerator for finite quotients, verification against a finite
//! semigroup, and synthesis of a presentation for `S` from presentations of
//! `T` and of the Schützenberger groups of the complement classes.

mod enumerate;
mod synth;

pub use enumerate::{enumerate_presentation, Enumeration, EnumerationOutcome};
pub use synth::{
    default_schutz_packs, synthesize_presentation, synthesize_with_table_presentations,
    RelationFamily, SchutzPack, SchutzPresentationPack, Synthesis,
};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, Factorizer, FiniteSemigroup};

/// A word over an alphabet, as letter indices.
pub type Word = Vec<usize>;

/// `⟨A | ℜ⟩` with letters as indices into `alphabet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Vec<String>,
    pub relations: Vec<(Word, Word)>,
}

impl Presentation {
    pub fn new(alphabet: Vec<String>, relations: Vec<(Word, Word)>) -> Result<Self> {
        let p = Presentation {
            alphabet,
            relations,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.alphabet.len();
        for (u, v) in &self.relations {
            if u.is_empty() || v.is_empty() {
                return Err(Error::EmptyWord);
            }
            if let Some(&bad) = u.iter().chain(v).find(|&&a| a >= n) {
                return Err(Error::InvalidLetter(bad.to_string()));
            }
        }
        Ok(())
    }

    pub fn spell(&self, word: &[usize]) -> String {
        word.iter().map(|&a| self.alphabet[a].as_str()).collect()
    }
}

/// Letter images in a finite semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub images: Vec<Elem>,
}

impl Assignment {
    pub fn new(images: Vec<Elem>) -> Self {
        Assignment { images }
    }

    pub fn image(&self, letter: usize) -> Elem {
        self.images[letter]
    }

    /// Value of a nonempty word; `None` for the empty word.
    pub fn eval(&self, s: &FiniteSemigroup, word: &[usize]) -> Option<Elem> {
        let mut it = word.iter();
        let first = self.images[*it.next()?];
        Some(it.fold(first, |acc, &a| s.mul(acc, self.images[a])))
    }

    /// Value in `S¹`: the empty word is the adjoined identity.
    pub fn eval1(&self, s: &FiniteSemigroup, word: &[usize]) -> Elem {
        self.eval(s, word).unwrap_or_else(|| s.one())
    }
}

/// One letter per element and one relation `xy = z` per table cell.
pub fn presentation_from_table(s: &FiniteSemigroup) -> (Presentation, Assignment) {
    presentation_from_table_named(s, |x| format!("s{x}"))
}

pub(crate) fn presentation_from_table_named(
    s: &FiniteSemigroup,
    name: impl Fn(Elem) -> String,
) -> (Presentation, Assignment) {
    let alphabet = s.elements().map(name).collect();
    let relations = s
        .elements()
        .flat_map(|x| s.elements().map(move |y| (vec![x, y], vec![s.mul(x, y)])))
        .collect();
    (
        Presentation {
            alphabet,
            relations,
        },
        Assignment::new(s.elements().collect()),
    )
}

/// Shortlex-least word over `b` (as positions in `b`) evaluating to `t`.
pub fn factorize(t: Elem, b: &[Elem], s: &FiniteSemigroup) -> Result<Word> {
    s.check_element(t)?;
    Factorizer::new(s, b)?
        .word(t)
        .ok_or(Error::NotInSubsemigroup(t))
}

/// Why a presentation does or does not define the given semigroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    /// index of the first relation whose sides evaluate differently
    pub violated_relation: Option<usize>,
    pub onto: bool,
    pub classes: Option<usize>,
    pub bijective: bool,
}

/// Checks the relations under `alpha`, surjectivity, and that the
/// enumerated quotient maps bijectively onto `s`.
pub fn verify_presentation(
    p: &Presentation,
    s: &FiniteSemigroup,
    alpha: &Assignment,
    max_classes: usize,
    max_len: usize,
) -> Result<VerifyReport> {
    p.validate()?;
    if alpha.images.len() != p.alphabet.len() {
        return Err(Error::AlphabetMismatch);
    }
    for &x in &alpha.images {
        s.check_element(x)?;
    }
    let mut report = VerifyReport {
        valid: false,
        violated_relation: None,
        onto: false,
        classes: None,
        bijective: false,
    };
    if let Some(k) = p
        .relations
        .iter()
        .position(|(u, v)| alpha.eval(s, u) != alpha.eval(s, v))
    {
        report.violated_relation = Some(k);
        return Ok(report);
    }
    report.onto = !alpha.images.is_empty() && s.is_generated_by(&alpha.images);
    if !report.onto {
        return Ok(report);
    }
    let e = match enumerate_presentation(p, max_classes, max_len) {
        EnumerationOutcome::Complete(e) => e,
        EnumerationOutcome::BoundExceeded(reason) => return Err(Error::BoundExceeded(reason)),
    };
    report.classes = Some(e.order());
    let mut hit = vec![false; s.order()];
    report.bijective = e.order() == s.order()
        && e.representatives().iter().all(|w| {
            let x = alpha.eval(s, w).expect("representatives are nonempty");
            !std::mem::replace(&mut hit[x], true)
        });
    report.valid = report.bijective;
    Ok(report)
}
