//! Pushing class representatives through products in either direction,
//! generator extraction in both directions between `S` and `T`,
//! and the rewriting-based decision procedure for the word problem of `S`.

use crate::error::{Error, Result};
use crate::green::{ClassId, ConnectorTables};
use crate::present::Synthesis;
use crate::semigroup::{Elem, Factorizer};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `h_i s₁…sₙ = t₁…tₙ h_j`
    Right,
    /// `s₁…sₙ h_i = h_j t₁…tₙ`
    Left,
}

/// The result of pushing `h_i` through a word over `S¹`.
///
/// `indices` has `n + 1` entries. For [`Direction::Right`] they are
/// `i₁ … i_{n+1}` (so `indices[0] = i`, `indices[n] = j`); for
/// [`Direction::Left`] they are `i₀ … iₙ` (so `indices[n] = i`,
/// `indices[0] = j`). `output[k]` is the `T¹` factor produced at letter `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteTrace {
    pub direction: Direction,
    pub input_class: ClassId,
    pub word: Vec<Elem>,
    pub output: Vec<Elem>,
    pub output_class: ClassId,
    pub indices: Vec<ClassId>,
}

pub fn push_right(conn: &ConnectorTables, i: ClassId, word: &[Elem]) -> RewriteTrace {
    let mut indices = Vec::with_capacity(word.len() + 1);
    let mut output = Vec::with_capacity(word.len());
    let mut cur = i;
    indices.push(cur);
    for &s in word {
        output.push(conn.tau(cur, s));
        cur = conn.lambda(cur, s);
        indices.push(cur);
    }
    RewriteTrace {
        direction: Direction::Right,
        input_class: i,
        word: word.to_vec(),
        output,
        output_class: cur,
        indices,
    }
}

pub fn push_left(conn: &ConnectorTables, i: ClassId, word: &[Elem]) -> RewriteTrace {
    let n = word.len();
    let mut indices = vec![i; n + 1];
    let mut output = vec![conn.semigroup().one(); n];
    let mut cur = i;
    for k in (0..n).rev() {
        output[k] = conn.sigma(word[k], cur);
        cur = conn.rho(word[k], cur);
        indices[k] = cur;
    }
    RewriteTrace {
        direction: Direction::Left,
        input_class: i,
        word: word.to_vec(),
        output,
        output_class: cur,
        indices,
    }
}

/// Outcome of checking a trace. Each part is `None` when its hypothesis
/// does not apply to the trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceCheck {
    pub equation: bool,
    pub recursion: bool,
    /// product outside `T` is `L^T`- (right) or `R^T`- (left) related to `h_j`
    pub part_i: Option<bool>,
    /// product in `T` forces `j = 1`
    pub part_ii: Option<bool>,
    /// product `R^T`- (right) or `L^T`- (left) related to `h_i` is `H^T`-related to `h_j`
    pub part_iii: Option<bool>,
}

impl TraceCheck {
    pub fn holds(&self) -> bool {
        self.equation
            && self.recursion
            && self.part_i != Some(false)
            && self.part_ii != Some(false)
            && self.part_iii != Some(false)
    }
}

impl RewriteTrace {
    /// Evaluates both sides in `S¹` and checks the structural claims that
    /// apply when every letter lies in `T`.
    pub fn check(&self, conn: &ConnectorTables) -> TraceCheck {
        let g = conn.green();
        let s = g.semigroup();
        let hi = g.rep(self.input_class);
        let hj = g.rep(self.output_class);
        let w = s.product1(&self.word);
        let t = s.product1(&self.output);
        let (lhs, rhs) = match self.direction {
            Direction::Right => (s.mul1(hi, w), s.mul1(t, hj)),
            Direction::Left => (s.mul1(w, hi), s.mul1(hj, t)),
        };
        let n = self.word.len();
        let recursion = self.indices.len() == n + 1
            && self.output.len() == n
            && (0..n).all(|k| match self.direction {
                Direction::Right => {
                    self.indices[k + 1] == conn.lambda(self.indices[k], self.word[k])
                        && self.output[k] == conn.tau(self.indices[k], self.word[k])
                }
                Direction::Left => {
                    self.indices[k] == conn.rho(self.word[k], self.indices[k + 1])
                        && self.output[k] == conn.sigma(self.word[k], self.indices[k + 1])
                }
            })
            && match self.direction {
                Direction::Right => {
                    self.indices[0] == self.input_class && self.indices[n] == self.output_class
                }
                Direction::Left => {
                    self.indices[n] == self.input_class && self.indices[0] == self.output_class
                }
            };

        let all_in_t = self.word.iter().all(|&x| g.in_t(x));
        let product = lhs;
        let (mut part_i, mut part_ii, mut part_iii) = (None, None, None);
        if all_in_t && n > 0 {
            if !g.in_t1(product) {
                part_i = Some(match self.direction {
                    Direction::Right => g.l_related(product, hj),
                    Direction::Left => g.r_related(product, hj),
                });
            } else {
                part_ii = Some(self.output_class.is_one());
            }
            let same_side = match self.direction {
                Direction::Right => g.r_related(product, hi),
                Direction::Left => g.l_related(product, hi),
            };
            if !self.input_class.is_one() && same_side {
                part_iii = Some(g.h_related(product, hj));
            }
        }
        TraceCheck {
            equation: lhs == rhs,
            recursion,
            part_i,
            part_ii,
            part_iii,
        }
    }
}

/// A product of Schreier generators equal to a given element of `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchreierFactorization {
    pub target: Elem,
    /// Shortest word over the generating set of `S` for `target`.
    pub source_word: Vec<Elem>,
    /// `τ(j_k, σ(a_k, i_k))` for every letter; may contain the adjoined identity.
    pub factors: Vec<Elem>,
    /// The factors with identity values removed: a word over `B`.
    pub b_word: Vec<Elem>,
}

/// The generating set `B = {τ(i, σ(a, j))} ∩ T` together with the
/// machinery to factorize elements of `T` over it.
#[derive(Debug, Clone)]
pub struct SchreierGenerators {
    conn: ConnectorTables,
    source_gens: Vec<Elem>,
    generators: Vec<Elem>,
    factorizer: Factorizer,
}

pub fn schreier_generators(conn: &ConnectorTables, gens: &[Elem]) -> Result<SchreierGenerators> {
    let g = conn.green();
    let s = g.semigroup();
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for &a in gens {
        s.check_element(a)?;
    }
    if !s.is_generated_by(gens) {
        return Err(Error::NotGenerating("A does not generate S".into()));
    }
    let mut generators: Vec<Elem> = Vec::new();
    for i in g.class_ids() {
        for j in g.class_ids() {
            for &a in gens {
                let b = conn.tau(i, conn.sigma(a, j));
                if g.in_t(b) {
                    generators.push(b);
                }
            }
        }
    }
    generators.sort_unstable();
    generators.dedup();
    Ok(SchreierGenerators {
        conn: conn.clone(),
        source_gens: gens.to_vec(),
        generators,
        factorizer: Factorizer::new(s, gens)?,
    })
}

impl SchreierGenerators {
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Rewrites a shortest `A`-word for `t` right-to-left from `h₁ = 1`,
    /// then left-to-right from the resulting representative.
    pub fn factorize(&self, t: Elem) -> Result<SchreierFactorization> {
        let g = self.conn.green();
        if !g.in_t(t) {
            return Err(Error::NotInSubsemigroup(t));
        }
        let source_word: Vec<Elem> = self
            .factorizer
            .word(t)
            .ok_or(Error::NotInSubsemigroup(t))?
            .into_iter()
            .map(|k| self.source_gens[k])
            .collect();
        let first = push_left(&self.conn, ClassId::ONE, &source_word);
        let second = push_right(&self.conn, first.output_class, &first.output);
        if !second.output_class.is_one() {
            return Err(Error::InternalInconsistency(
                "second rewriting pass did not end at 1".into(),
            ));
        }
        let factors = second.output;
        let b_word: Vec<Elem> = factors.iter().copied().filter(|&x| g.in_t(x)).collect();
        debug_assert!(b_word.iter().all(|x| self.generators.contains(x)));
        Ok(SchreierFactorization {
            target: t,
            source_word,
            factors,
            b_word,
        })
    }
}

/// `B ∪ {h_i : i ∈ I}`, which generates `S` whenever `B` generates `T`.
pub fn extended_generators(green: &crate::green::GreenData, b: &[Elem]) -> Result<Vec<Elem>> {
    let s = green.semigroup();
    for &x in b {
        s.check_element(x)?;
        if !green.in_t(x) {
            return Err(Error::NotGenerating(format!("{x} is not in T")));
        }
    }
    let closure = s.closure(b)?;
    if closure.members() != green.sub().members() {
        return Err(Error::NotGenerating("B does not generate T".into()));
    }
    let mut out = b.to_vec();
    for i in green.complement_ids() {
        let h = green.rep(i);
        if !out.contains(&h) {
            out.push(h);
        }
    }
    Ok(out)
}

/// Word problem callbacks for the pieces `S` is assembled from.
pub trait WordProblemOracles {
    /// Equality in `T` of two words over the `B`-letters.
    fn t_equal(&self, u: &[usize], v: &[usize]) -> bool;
    /// Equality in the Schützenberger group of class `k` of two words over
    /// the `B`-letters, each representing an element of `Stab(H_k)`.
    fn schutz_equal(&self, k: ClassId, u: &[usize], v: &[usize]) -> bool;
}

/// Oracles for finite `T`: evaluate and compare.
pub struct FiniteOracles<'a> {
    ctx: &'a Synthesis,
}

impl<'a> FiniteOracles<'a> {
    pub fn new(ctx: &'a Synthesis) -> Self {
        FiniteOracles { ctx }
    }
}

impl WordProblemOracles for FiniteOracles<'_> {
    fn t_equal(&self, u: &[usize], v: &[usize]) -> bool {
        self.ctx.eval(u) == self.ctx.eval(v)
    }

    fn schutz_equal(&self, k: ClassId, u: &[usize], v: &[usize]) -> bool {
        let g = self.ctx.connectors().green();
        let s = g.semigroup();
        let h = g.rep(k);
        s.mul1(h, self.ctx.eval(u)) == s.mul1(h, self.ctx.eval(v))
    }
}

/// Which case of the decision procedure settled the question.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WordProblemBranch {
    /// both words represent elements of `T`
    BothInT,
    /// exactly one word represents an element of `T`
    Split,
    /// both in the complement, different `H^T`-classes
    DifferentClasses,
    /// both in the same complement class; decided in its Schützenberger group
    SchutzGroup,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordProblemVerdict {
    pub equal: bool,
    pub branch: WordProblemBranch,
    /// `(j, k)` after the first two passes
    pub classes: (ClassId, ClassId),
}

/// Normal form data for one word: `w = w'' d_j`, and if `j ≠ 1` also
/// `w = d_k w'''`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordRewriting {
    pub t_word: Vec<usize>,
    pub right_class: ClassId,
    pub residual: Option<(ClassId, Vec<usize>)>,
}

/// Rewrites a word over `A = B ∪ {d_i}` with the relation families of the
/// synthesized presentation: `d₁` is pushed right-to-left, the resulting
/// `d_i` left-to-right, and for complement elements once more right-to-left.
pub fn rewrite_word(ctx: &Synthesis, word: &[usize]) -> Result<WordRewriting> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let alphabet = ctx.presentation().alphabet.len();
    if let Some(&bad) = word.iter().find(|&&a| a >= alphabet) {
        return Err(Error::InvalidLetter(bad.to_string()));
    }
    let (i0, first) = ctx.push_d_left(word, ClassId::ONE);
    let (t_word, j) = ctx.push_d_right(i0, &first);
    let residual = if j.is_one() {
        None
    } else {
        Some(ctx.push_d_left(&t_word, j))
    };
    Ok(WordRewriting {
        t_word,
        right_class: j,
        residual,
    })
}

pub fn decide_word_equality(ctx: &Synthesis, w1: &[usize], w2: &[usize]) -> Result<WordProblemVerdict> {
    decide_word_equality_with(ctx, &FiniteOracles::new(ctx), w1, w2)
}

pub fn decide_word_equality_with<O: WordProblemOracles>(
    ctx: &Synthesis,
    oracles: &O,
    w1: &[usize],
    w2: &[usize],
) -> Result<WordProblemVerdict> {
    let r1 = rewrite_word(ctx, w1)?;
    let r2 = rewrite_word(ctx, w2)?;
    let classes = (r1.right_class, r2.right_class);
    let verdict = match (&r1.residual, &r2.residual) {
        (None, None) => WordProblemVerdict {
            equal: oracles.t_equal(&r1.t_word, &r2.t_word),
            branch: WordProblemBranch::BothInT,
            classes,
        },
        (None, Some(_)) | (Some(_), None) => WordProblemVerdict {
            equal: false,
            branch: WordProblemBranch::Split,
            classes,
        },
        (Some((k, u)), Some((r, v))) => {
            if k != r {
                WordProblemVerdict {
                    equal: false,
                    branch: WordProblemBranch::DifferentClasses,
                    classes,
                }
            } else {
                WordProblemVerdict {
                    equal: oracles.schutz_equal(*k, u, v),
                    branch: WordProblemBranch::SchutzGroup,
                    classes,
                }
            }
        }
    };
    Ok(verdict)
}
