//! Out-balls, growth series, and the domination inequality
//! `g_S(n) ≤ k₁·g_T(k₂·n)` for a subsemigroup with `S¹ = R·T¹`.

use std::collections::HashSet;

use serde::Serialize;

use crate::blackbox::BlackBoxSemigroup;
use crate::error::{Error, Result};
use crate::semigroup::{Elem, Factorizer, FiniteSemigroup, SubSemigroup};

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// `g(0), g(1), …`: ball sizes by radius.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthSeries {
    pub sizes: Vec<usize>,
}

impl GrowthSeries {
    pub fn is_monotone(&self) -> bool {
        self.sizes.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn at(&self, m: usize) -> Option<usize> {
        self.sizes.get(m).copied()
    }
}

/// Elements of `S¹`; `None` is the adjoined identity.
pub type Elem1<E> = Option<E>;

fn mul1<B: BlackBoxSemigroup>(sem: &B, x: &Elem1<B::Element>, y: &B::Element) -> B::Element {
    match x {
        None => y.clone(),
        Some(x) => sem.multiply(x, y),
    }
}

// Ball layers around `s`: sizes after each radius up to `n`.
fn ball_layers<B: BlackBoxSemigroup>(
    sem: &B,
    gens: &[B::Element],
    s: Elem1<B::Element>,
    n: usize,
    budget: usize,
) -> Result<(HashSet<Elem1<B::Element>>, Vec<usize>)> {
    let mut seen: HashSet<Elem1<B::Element>> = HashSet::from([s.clone()]);
    let mut frontier = vec![s];
    let mut sizes = vec![1];
    for _ in 0..n {
        let mut next = Vec::new();
        for x in &frontier {
            for g in gens {
                let y = Some(mul1(sem, x, g));
                if seen.insert(y.clone()) {
                    if seen.len() > budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    next.push(y);
                }
            }
        }
        sizes.push(seen.len());
        frontier = next;
    }
    Ok((seen, sizes))
}

/// `{s·x₁…x_r : xᵢ ∈ X¹, r ≤ n}`.
pub fn out_ball<B: BlackBoxSemigroup>(
    sem: &B,
    gens: &[B::Element],
    s: Elem1<B::Element>,
    n: usize,
    budget: usize,
) -> Result<Vec<Elem1<B::Element>>> {
    let (set, _) = ball_layers(sem, gens, s, n, budget)?;
    let mut v: Vec<_> = set.into_iter().collect();
    v.sort();
    Ok(v)
}

/// Ball sizes around the adjoined identity for radii `0..=m_max`.
pub fn growth_function<B: BlackBoxSemigroup>(
    sem: &B,
    gens: &[B::Element],
    m_max: usize,
    budget: usize,
) -> Result<GrowthSeries> {
    let (_, sizes) = ball_layers(sem, gens, None, m_max, budget)?;
    Ok(GrowthSeries { sizes })
}

/// One row of the domination table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationRow {
    pub n: usize,
    pub g_s: usize,
    pub g_t: usize,
    pub bound: usize,
    pub holds: bool,
}

/// `a₁a₂ = r·μ` with `μ ∈ T¹` of least `B`-length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuWitness {
    pub a1: Elem,
    pub a2: Elem,
    pub r: Elem,
    pub mu: Elem,
    pub length: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DominationReport {
    pub k1: usize,
    pub k2: usize,
    pub a: Vec<Elem>,
    pub witnesses: Vec<MuWitness>,
    pub g_s: GrowthSeries,
    pub g_t: GrowthSeries,
    pub rows: Vec<DominationRow>,
    pub holds: bool,
}

/// Checks `S¹ = R·T¹` with `1 ∈ R`, builds `A = B ∪ (R ∖ {1})`, picks the
/// witnesses `a₁a₂ = r μ` for `a₁ ∈ A`, `a₂ ∈ R`, and tabulates
/// `g_S(n) ≤ k₁·g_T(k₂·n)` for `n ≤ m_max` with `k₁ = |R|` and `k₂` the
/// largest witness length (at least 1).
pub fn domination_check(
    s: &FiniteSemigroup,
    t: &SubSemigroup,
    r: &[Elem],
    b: &[Elem],
    m_max: usize,
) -> Result<DominationReport> {
    let one = s.one();
    let mut r: Vec<Elem> = r.to_vec();
    r.sort_unstable();
    r.dedup();
    if let Some(&bad) = r.iter().find(|&&x| x > one) {
        return Err(Error::InvalidElement(bad));
    }
    if !r.contains(&one) {
        return Err(Error::HypothesisFails("R must contain the adjoined identity".into()));
    }
    if b.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for &x in b {
        s.check_element(x)?;
    }
    if s.closure(b)?.members() != t.members() {
        return Err(Error::NotGenerating("B does not generate T".into()));
    }
    let t1 = t.with_one(s);
    for x in 0..=one {
        if !r.iter().any(|&rr| t1.iter().any(|&tt| s.mul1(rr, tt) == x)) {
            return Err(Error::HypothesisFails(format!(
                "{} is not in R·T¹",
                s.name(x)
            )));
        }
    }
    let mut a: Vec<Elem> = b.to_vec();
    for &x in &r {
        if x != one && !a.contains(&x) {
            a.push(x);
        }
    }
    let fb = Factorizer::new(s, b)?;
    let len_b = |x: Elem| -> Option<usize> {
        if x == one {
            Some(0)
        } else {
            fb.length(x)
        }
    };
    let mut witnesses = Vec::new();
    for &a1 in &a {
        for &a2 in &r {
            let p = s.mul1(a1, a2);
            let best = r
                .iter()
                .flat_map(|&rr| t1.iter().map(move |&mu| (rr, mu)))
                .filter(|&(rr, mu)| s.mul1(rr, mu) == p)
                .filter_map(|(rr, mu)| len_b(mu).map(|l| (l, rr, mu)))
                .min();
            let (length, rr, mu) = best.ok_or_else(|| {
                Error::HypothesisFails(format!("{} is not in R·T¹", s.name(p)))
            })?;
            witnesses.push(MuWitness {
                a1,
                a2,
                r: rr,
                mu,
                length,
            });
        }
    }
    let k1 = r.len();
    let k2 = witnesses.iter().map(|w| w.length).max().unwrap_or(0).max(1);
    let g_s = growth_function(s, &a, m_max, DEFAULT_BUDGET)?;
    let g_t = growth_function(s, b, k2 * m_max, DEFAULT_BUDGET)?;
    let rows: Vec<DominationRow> = (0..=m_max)
        .map(|n| {
            let gs = g_s.sizes[n];
            let gt = g_t.sizes[k2 * n];
            DominationRow {
                n,
                g_s: gs,
                g_t: gt,
                bound: k1 * gt,
                holds: gs <= k1 * gt,
            }
        })
        .collect();
    let holds = rows.iter().all(|row| row.holds);
    Ok(DominationReport {
        k1,
        k2,
        a,
        witnesses,
        g_s,
        g_t,
        rows,
        holds,
    })
}

/// The default `R`: the adjoined identity and the complement representatives.
pub fn default_transversal(green: &crate::green::GreenData) -> Vec<Elem> {
    let mut r = vec![green.semigroup().one()];
    r.extend(green.complement_ids().map(|i| green.rep(i)));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blackbox::Naturals;
    use crate::catalog;
    use crate::green::relative_green;
    use crate::semigroup::validate_table;
    use proptest::prelude::*;

    #[test]
    fn radius_zero_is_the_centre() {
        let s = catalog::cyclic_group(6);
        assert_eq!(out_ball(&s, &[1], Some(2), 0, 10).unwrap(), vec![Some(2)]);
    }

    #[test]
    fn naturals_ball() {
        let ball = out_ball(&Naturals, &[1], Some(0), 5, DEFAULT_BUDGET).unwrap();
        assert_eq!(ball.len(), 6);
        let g = growth_function(&Naturals, &[1], 10, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.sizes, (1..=11).collect::<Vec<_>>());
    }

    #[test]
    fn budget_is_enforced() {
        assert_eq!(
            growth_function(&Naturals, &[1], 50, 10).unwrap_err(),
            Error::BudgetExceeded(10)
        );
    }

    #[test]
    fn z6_growth() {
        let s = catalog::cyclic_group(6);
        let g = growth_function(&s, &[1], 9, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.sizes, vec![1, 2, 3, 4, 5, 6, 7, 7, 7, 7]);
    }

    #[test]
    fn trivial_growth() {
        let s = validate_table(&[vec![0]]).unwrap();
        let g = growth_function(&s, &[0], 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(g.sizes, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn saturated_ball_is_translate_of_closure() {
        let s = catalog::cyclic_group(6);
        let ball = out_ball(&s, &[2], Some(1), 6, DEFAULT_BUDGET).unwrap();
        assert_eq!(ball, vec![Some(1), Some(3), Some(5)]);
    }

    #[test]
    fn domination_for_index_one() {
        let s = catalog::cyclic_group(4);
        let t = s.closure(&[1]).unwrap();
        let rep = domination_check(&s, &t, &[s.one()], &[1], 8).unwrap();
        assert_eq!(rep.k1, 1);
        assert!(rep.holds);
    }

    #[test]
    fn domination_for_z6() {
        let (s, t) = catalog::z6_with_order_two();
        let r = default_transversal(&relative_green(&s, &t));
        assert_eq!(r, vec![6, 1, 2]);
        let rep = domination_check(&s, &t, &r, &[3], 12).unwrap();
        assert_eq!(rep.k1, 3);
        assert!(rep.holds);
    }

    #[test]
    fn domination_rejects_bad_transversal() {
        let (s, t) = catalog::z6_with_order_two();
        assert!(matches!(
            domination_check(&s, &t, &[6, 1], &[3], 4),
            Err(Error::HypothesisFails(_))
        ));
        assert!(matches!(
            domination_check(&s, &t, &[1, 2], &[3], 4),
            Err(Error::HypothesisFails(_))
        ));
    }

    proptest! {
        #[test]
        fn growth_is_monotone(n in 1usize..12, g in 1usize..12, m in 0usize..15) {
            let s = catalog::cyclic_group(n);
            let series = growth_function(&s, &[g % n], m, DEFAULT_BUDGET).unwrap();
            prop_assert!(series.is_monotone());
            prop_assert!(series.sizes.iter().all(|&x| x <= n + 1));
        }
    }
}
