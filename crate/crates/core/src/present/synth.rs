//! Presentation for `S` from a presentation `⟨B | Q⟩` of `T` and
//! presentations of the Schützenberger groups of the complement classes.
//!
//! The alphabet is `B ∪ {d_i : i ∈ I}` with `d_i ↦ h_i`; `d₁` stands for the
//! empty word and is elided from every relation. Relation families:
//!
//! * `Q`
//! * `a d_i = d_{ρ(a,i)} σ(a,i)` for every letter `a` and `i ∈ I¹`
//! * `d_j b = τ(j,b) d_{λ(j,b)}` for `b ∈ B`, `j ∈ I¹`
//! * `d_i ξ̄(u) = d_i ξ̄(v)` for each relation `(u, v)` of the pack of `i`

use serde::Serialize;

use super::{
    presentation_from_table_named, verify_presentation, Assignment, Presentation, Word,
};
use crate::error::{Error, Result};
use crate::green::{ClassId, ConnectorTables, GreenData};
use crate::schutz::schutz_group_of_class;
use crate::semigroup::{Elem, Factorizer, FiniteSemigroup};

/// Presentation of one Schützenberger group together with its evaluation
/// `ξ` into the group of its owning class and the lift `ξ̄` into `B⁺`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchutzPack {
    pub presentation: Presentation,
    /// letter ↦ element of `Γ`, numbered as in [`crate::schutz::SchutzGroup`]
    pub xi: Vec<usize>,
    /// letter ↦ word over the letters of `Q`
    pub xi_bar: Vec<Word>,
}

/// Packs shared by `L^T`-related classes. `class_pack[k - 1]` is the pack
/// of complement class `k`; `None` when `Stab(H_k)` meets `T` trivially,
/// in which case the group is trivial and contributes no relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchutzPresentationPack {
    pub packs: Vec<SchutzPack>,
    pub class_pack: Vec<Option<usize>>,
    /// the class whose group each pack evaluates into
    pub owner: Vec<ClassId>,
}

impl SchutzPresentationPack {
    pub fn pack_of(&self, k: ClassId) -> Option<&SchutzPack> {
        self.class_pack[k.0 - 1].map(|p| &self.packs[p])
    }
}

/// Table presentations of every `Γ_i`, lifted through `β` by factorizing
/// the smallest member of `T` in each `γ`-class.
pub fn default_schutz_packs(green: &GreenData, beta: &Assignment) -> Result<SchutzPresentationPack> {
    let s = green.semigroup();
    let fact = Factorizer::new(s, &beta.images)?;
    let mut packs = Vec::new();
    let mut owner = Vec::new();
    let mut class_pack = vec![None; green.complement_count()];
    for i in green.complement_ids() {
        // share with the first L^T-related class
        if let Some(j) = green
            .complement_ids()
            .take_while(|&j| j < i)
            .find(|&j| green.l_related(green.rep(i), green.rep(j)))
        {
            class_pack[i.0 - 1] = class_pack[j.0 - 1];
            continue;
        }
        let group = schutz_group_of_class(green, i)?;
        if !group.stabilizer().iter().any(|&t| green.in_t(t)) {
            continue;
        }
        let p = packs.len();
        let (presentation, xi) =
            presentation_from_table_named(&group.to_semigroup(), |g| format!("c{}_{g}", i.0));
        let xi_bar = (0..group.order())
            .map(|g| {
                let t = group.t_lift(g, green).ok_or_else(|| {
                    Error::InternalInconsistency(format!("no lift in T for {g} in class {i}"))
                })?;
                fact.word(t).ok_or(Error::NotInSubsemigroup(t))
            })
            .collect::<Result<Vec<_>>>()?;
        packs.push(SchutzPack {
            presentation,
            xi: xi.images,
            xi_bar,
        });
        owner.push(i);
        class_pack[i.0 - 1] = Some(p);
    }
    Ok(SchutzPresentationPack {
        packs,
        class_pack,
        owner,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationFamily {
    /// a relation of the presentation of `T`
    Base,
    /// `a d_i = d_{ρ(a,i)} σ(a,i)`
    LeftConnector,
    /// `d_j b = τ(j,b) d_{λ(j,b)}`
    RightConnector,
    /// `d_i ξ̄(u) = d_i ξ̄(v)`
    Schutz,
}

/// The synthesized presentation together with the word-level connector
/// data it was built from.
#[derive(Debug, Clone)]
pub struct Synthesis {
    presentation: Presentation,
    alpha: Assignment,
    families: Vec<RelationFamily>,
    b_count: usize,
    // letter of d_k for complement class k (index k - 1)
    d_letter: Vec<usize>,
    width: usize,
    rho: Vec<ClassId>,
    sigma_words: Vec<Word>,
    lambda: Vec<ClassId>,
    tau_words: Vec<Word>,
    conn: ConnectorTables,
}

/// Builds the presentation after checking that `q` presents `T` under
/// `beta`, that every pack presents its group and lifts correctly, and that
/// packs are shared exactly by `L^T`-related classes.
pub fn synthesize_presentation(
    q: &Presentation,
    beta: &Assignment,
    packs: &SchutzPresentationPack,
    conn: &ConnectorTables,
    max_classes: usize,
    max_len: usize,
) -> Result<Synthesis> {
    let g = conn.green();
    let s = g.semigroup();
    let t = g.sub();
    if beta.images.len() != q.alphabet.len() {
        return Err(Error::AlphabetMismatch);
    }
    if let Some(&bad) = beta.images.iter().find(|&&x| x >= s.order() || !t.contains(x)) {
        return Err(Error::BadInputPresentation(format!("letter value {bad} is not in T")));
    }
    let local = t.to_semigroup(s);
    let local_beta = Assignment::new(
        beta.images
            .iter()
            .map(|&x| t.local_index(x).unwrap())
            .collect(),
    );
    let report = verify_presentation(q, &local, &local_beta, max_classes, max_len)?;
    if !report.valid {
        return Err(Error::BadInputPresentation(
            "the presentation does not define T".into(),
        ));
    }
    check_packs(g, packs, beta, max_classes, max_len)?;

    let b_count = q.alphabet.len();
    let m = g.complement_count();
    let width = g.width();
    let mut alphabet = q.alphabet.clone();
    let mut images = beta.images.clone();
    let mut d_letter = Vec::with_capacity(m);
    for i in g.complement_ids() {
        let mut name = format!("d{}", i.0);
        while alphabet.contains(&name) {
            name.insert(0, '_');
        }
        d_letter.push(alphabet.len());
        alphabet.push(name);
        images.push(g.rep(i));
    }
    let letters = alphabet.len();
    let fact = Factorizer::new(s, &beta.images)?;
    let word_of = |x: Elem| -> Result<Word> {
        if x == s.one() {
            Ok(Vec::new())
        } else {
            fact.word(x).ok_or(Error::NotInSubsemigroup(x))
        }
    };
    let mut rho = Vec::with_capacity(letters * width);
    let mut sigma_words = Vec::with_capacity(letters * width);
    for &a in &images {
        for i in g.class_ids() {
            rho.push(conn.rho(a, i));
            sigma_words.push(word_of(conn.sigma(a, i))?);
        }
    }
    let mut lambda = Vec::with_capacity(width * b_count);
    let mut tau_words = Vec::with_capacity(width * b_count);
    for j in g.class_ids() {
        for &b in &beta.images {
            lambda.push(conn.lambda(j, b));
            tau_words.push(word_of(conn.tau(j, b))?);
        }
    }

    let d = |k: ClassId| -> Word {
        if k.is_one() {
            Vec::new()
        } else {
            vec![d_letter[k.0 - 1]]
        }
    };
    let mut relations: Vec<(Word, Word)> = Vec::new();
    let mut families = Vec::new();
    let mut emit = |u: Word, v: Word, f: RelationFamily| -> Result<()> {
        if u.is_empty() || v.is_empty() {
            return Err(Error::InternalInconsistency("relation with an empty side".into()));
        }
        if u != v && !relations.contains(&(u.clone(), v.clone())) {
            relations.push((u, v));
            families.push(f);
        }
        Ok(())
    };
    for (u, v) in &q.relations {
        emit(u.clone(), v.clone(), RelationFamily::Base)?;
    }
    for a in 0..letters {
        for i in g.class_ids() {
            let lhs = [vec![a], d(i)].concat();
            let rhs = [d(rho[a * width + i.0]), sigma_words[a * width + i.0].clone()].concat();
            emit(lhs, rhs, RelationFamily::LeftConnector)?;
        }
    }
    for j in g.class_ids() {
        for b in 0..b_count {
            let lhs = [d(j), vec![b]].concat();
            let k = j.0 * b_count + b;
            let rhs = [tau_words[k].clone(), d(lambda[k])].concat();
            emit(lhs, rhs, RelationFamily::RightConnector)?;
        }
    }
    for i in g.complement_ids() {
        if let Some(pack) = packs.pack_of(i) {
            for (u, v) in &pack.presentation.relations {
                let lift = |w: &Word| -> Word {
                    let mut out = d(i);
                    for &c in w {
                        out.extend_from_slice(&pack.xi_bar[c]);
                    }
                    out
                };
                emit(lift(u), lift(v), RelationFamily::Schutz)?;
            }
        }
    }

    let presentation = Presentation {
        alphabet,
        relations,
    };
    let alpha = Assignment::new(images);
    if let Some((u, v)) = presentation
        .relations
        .iter()
        .find(|(u, v)| alpha.eval(s, u) != alpha.eval(s, v))
    {
        return Err(Error::InternalInconsistency(format!(
            "emitted relation {} = {} is false",
            presentation.spell(u),
            presentation.spell(v)
        )));
    }
    Ok(Synthesis {
        presentation,
        alpha,
        families,
        b_count,
        d_letter,
        width,
        rho,
        sigma_words,
        lambda,
        tau_words,
        conn: conn.clone(),
    })
}

fn check_packs(
    g: &GreenData,
    packs: &SchutzPresentationPack,
    beta: &Assignment,
    max_classes: usize,
    max_len: usize,
) -> Result<()> {
    let s = g.semigroup();
    if packs.class_pack.len() != g.complement_count() || packs.owner.len() != packs.packs.len() {
        return Err(Error::DaggerViolation("one pack entry per complement class expected".into()));
    }
    for i in g.complement_ids() {
        for j in g.complement_ids() {
            let related = g.l_related(g.rep(i), g.rep(j));
            let (pi, pj) = (packs.class_pack[i.0 - 1], packs.class_pack[j.0 - 1]);
            if related != (pi == pj) && (pi.is_some() || pj.is_some()) {
                return Err(Error::DaggerViolation(format!(
                    "classes {i} and {j} share packs exactly when L-related"
                )));
            }
        }
    }
    for (a, pa) in packs.packs.iter().enumerate() {
        for pb in &packs.packs[a + 1..] {
            if pa
                .presentation
                .alphabet
                .iter()
                .any(|c| pb.presentation.alphabet.contains(c))
            {
                return Err(Error::DaggerViolation("pack alphabets overlap".into()));
            }
        }
    }
    for i in g.complement_ids() {
        let group = schutz_group_of_class(g, i)?;
        let Some(p) = packs.class_pack[i.0 - 1] else {
            if group.order() != 1 {
                return Err(Error::BadInputPresentation(format!(
                    "class {i} has a nontrivial group but no pack"
                )));
            }
            continue;
        };
        let pack = &packs.packs[p];
        if packs.owner[p] != i && packs.class_pack[packs.owner[p].0 - 1] != Some(p) {
            return Err(Error::DaggerViolation("pack owner does not use its pack".into()));
        }
        if pack.xi.len() != pack.presentation.alphabet.len()
            || pack.xi_bar.len() != pack.presentation.alphabet.len()
        {
            return Err(Error::AlphabetMismatch);
        }
        if packs.owner[p] == i {
            let gs = group.to_semigroup();
            let report =
                verify_presentation(&pack.presentation, &gs, &Assignment::new(pack.xi.clone()), max_classes, max_len)?;
            if !report.valid {
                return Err(Error::BadInputPresentation(format!(
                    "pack of class {i} does not define its group"
                )));
            }
        }
        for (c, w) in pack.xi_bar.iter().enumerate() {
            if w.is_empty() || w.iter().any(|&b| b >= beta.images.len()) {
                return Err(Error::BadInputPresentation(format!("bad lift for letter {c}")));
            }
            let t = beta.eval(s, w).unwrap();
            // both groups number elements by position of h·t in the class,
            // so compare through the owner's basepoint
            let owner = schutz_group_of_class(g, packs.owner[p])?;
            if owner.class_of(t) != Some(pack.xi[c]) {
                return Err(Error::BadInputPresentation(format!(
                    "lift of letter {c} does not evaluate to its group element"
                )));
            }
        }
    }
    Ok(())
}

/// Synthesis from the table presentation of `T` (letters `b{x}` for
/// `x ∈ T`) and the default packs.
pub fn synthesize_with_table_presentations(
    conn: &ConnectorTables,
    max_classes: usize,
    max_len: usize,
) -> Result<Synthesis> {
    let g = conn.green();
    let (q, beta) = table_presentation_of_sub(g);
    let packs = default_schutz_packs(g, &beta)?;
    synthesize_presentation(&q, &beta, &packs, conn, max_classes, max_len)
}

/// Table presentation of `T` with letters valued in `S`.
pub fn table_presentation_of_sub(g: &GreenData) -> (Presentation, Assignment) {
    let (s, t) = (g.semigroup(), g.sub());
    let local = t.to_semigroup(s);
    let members = t.members().to_vec();
    let (p, _) = presentation_from_table_named(&local, |x| format!("b{}", members[x]));
    (p, Assignment::new(members))
}

impl Synthesis {
    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn assignment(&self) -> &Assignment {
        &self.alpha
    }

    pub fn families(&self) -> &[RelationFamily] {
        &self.families
    }

    pub fn connectors(&self) -> &ConnectorTables {
        &self.conn
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        self.conn.semigroup()
    }

    /// Number of letters coming from `T`; they come first.
    pub fn b_count(&self) -> usize {
        self.b_count
    }

    pub fn d_letter(&self, k: ClassId) -> Option<usize> {
        if k.is_one() {
            None
        } else {
            self.d_letter.get(k.0 - 1).copied()
        }
    }

    /// Value in `S¹` of a word over the alphabet.
    pub fn eval(&self, word: &[usize]) -> Elem {
        self.alpha.eval1(self.semigroup(), word)
    }

    /// Uses the left connector relations right-to-left: `w d_i = d_j w′`
    /// with `w′` over `B`. Returns `(j, w′)`.
    pub fn push_d_left(&self, word: &[usize], i: ClassId) -> (ClassId, Word) {
        let mut cur = i;
        let mut blocks: Vec<&Word> = Vec::with_capacity(word.len());
        for &a in word.iter().rev() {
            let k = a * self.width + cur.0;
            blocks.push(&self.sigma_words[k]);
            cur = self.rho[k];
        }
        let out = blocks.into_iter().rev().flatten().copied().collect();
        (cur, out)
    }

    /// Uses the right connector relations left-to-right: `d_j w = w′ d_k`
    /// for `w` over `B`. Returns `(w′, k)`.
    pub fn push_d_right(&self, j: ClassId, word: &[usize]) -> (Word, ClassId) {
        let mut cur = j;
        let mut out = Vec::new();
        for &b in word {
            debug_assert!(b < self.b_count);
            let k = cur.0 * self.b_count + b;
            out.extend_from_slice(&self.tau_words[k]);
            cur = self.lambda[k];
        }
        (out, cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::green::{connectors, relative_green};
    use crate::present::{enumerate_presentation, Presentation};

    fn conn_for(s: &FiniteSemigroup, t: &crate::semigroup::SubSemigroup) -> ConnectorTables {
        connectors(&relative_green(s, t)).unwrap()
    }

    fn assert_presents(syn: &Synthesis) {
        let s = syn.semigroup();
        let e = enumerate_presentation(syn.presentation(), 500, 14)
            .complete()
            .expect("enumeration completes");
        assert_eq!(e.order(), s.order());
        let mut images: Vec<Elem> = e
            .representatives()
            .iter()
            .map(|w| syn.assignment().eval(s, w).unwrap())
            .collect();
        images.sort_unstable();
        assert_eq!(images, s.elements().collect::<Vec<_>>());
    }

    #[test]
    fn index_one_returns_q() {
        let s = catalog::cyclic_group(3);
        let t = s.closure(&[1]).unwrap();
        let conn = conn_for(&s, &t);
        let (q, beta) = table_presentation_of_sub(conn.green());
        let packs = default_schutz_packs(conn.green(), &beta).unwrap();
        let syn = synthesize_presentation(&q, &beta, &packs, &conn, 500, 14).unwrap();
        assert_eq!(syn.presentation(), &q);
    }

    #[test]
    fn z6_from_compact_q() {
        let (s, t) = catalog::z6_with_order_two();
        let conn = conn_for(&s, &t);
        let q = Presentation::new(vec!["b".into()], vec![(vec![0, 0, 0], vec![0])]).unwrap();
        let beta = Assignment::new(vec![3]);
        let packs = default_schutz_packs(conn.green(), &beta).unwrap();
        assert_eq!(packs.packs.len(), 2);
        let syn = synthesize_presentation(&q, &beta, &packs, &conn, 500, 14).unwrap();
        assert_eq!(syn.presentation().alphabet, vec!["b", "d1", "d2"]);
        assert_presents(&syn);
    }

    #[test]
    fn fixed_instances_are_presented() {
        for inst in catalog::fixed_instances() {
            let conn = conn_for(&inst.semigroup, &inst.sub);
            let syn = synthesize_with_table_presentations(&conn, 500, 14).unwrap();
            assert_presents(&syn);
        }
    }

    #[test]
    fn wrong_q_is_rejected() {
        let (s, t) = catalog::z6_with_order_two();
        let conn = conn_for(&s, &t);
        let q = Presentation::new(vec!["b".into()], vec![(vec![0, 0], vec![0])]).unwrap();
        let beta = Assignment::new(vec![3]);
        let packs = SchutzPresentationPack {
            packs: vec![],
            class_pack: vec![None, None],
            owner: vec![],
        };
        assert!(matches!(
            synthesize_presentation(&q, &beta, &packs, &conn, 500, 14),
            Err(Error::BadInputPresentation(_))
        ));
    }

    #[test]
    fn unshared_packs_for_related_classes_violate_dagger() {
        let (s, t) = catalog::s3_with_transposition();
        let conn = conn_for(&s, &t);
        let g = conn.green();
        let (q, beta) = table_presentation_of_sub(g);
        let mut packs = default_schutz_packs(g, &beta).unwrap();
        // find two L-related complement classes and split them
        let related: Vec<(ClassId, ClassId)> = g
            .complement_ids()
            .flat_map(|i| g.complement_ids().map(move |j| (i, j)))
            .filter(|&(i, j)| i < j && g.l_related(g.rep(i), g.rep(j)))
            .collect();
        if let Some(&(_, j)) = related.first() {
            packs.class_pack[j.0 - 1] = None;
            assert!(matches!(
                synthesize_presentation(&q, &beta, &packs, &conn, 500, 14),
                Err(Error::DaggerViolation(_))
            ));
        }
    }
}
