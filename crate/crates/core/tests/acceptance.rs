//! Acceptance criteria, one line each. Every check compares library output
//! with a recomputation done here from the multiplication table.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use greenidx::automatic::{
    rewriting_relation, structure_for_finite, transfer, transfer_letters, verify_structure, Triple,
};
use greenidx::blackbox::Naturals;
use greenidx::catalog::{self, Instance};
use greenidx::growth::{default_transversal, domination_check, growth_function, DEFAULT_BUDGET};
use greenidx::io::{SemigroupFile, SubFile};
use greenidx::present::{enumerate_presentation, synthesize_with_table_presentations, EnumerationOutcome};
use greenidx::rewrite::{decide_word_equality, push_left, push_right, schreier_generators};
use greenidx::schutz::{
    check_l_r_transport, groups_isomorphic, lambda_data, schutz_generators, schutz_group_of_class,
    Isomorphism,
};
use greenidx::{connectors, relative_green, ConnectorTables, Elem, FiniteSemigroup, SubSemigroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const RANDOM_PAIRS: usize = 50;
const RANDOM_MAX_ORDER: usize = 40;
const RANDOM_SEED: u64 = 0x5eed_2024;
const REWRITE_WORD_LEN: usize = 4;
const MAX_CLASSES: usize = 500;
const MAX_LEN: usize = 14;
const WP_WORD_LEN: usize = 4;
const GROWTH_RADIUS: usize = 12;
const NATURALS_RADIUS: usize = 100;
const AUTO_MAX_LEN: usize = 6;
const TRIPLE_WORD_LEN: usize = 3;
const CANCELLATIVE_MAX_ORDER: usize = 4;
const CONNECTOR_TIME: Duration = Duration::from_secs(30);
const PRESENTATION_TIME: Duration = Duration::from_secs(120);
const CANCELLATIVE_TIME: Duration = Duration::from_secs(60);

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---- oracles ----------------------------------------------------------

struct Oracle<'a> {
    s: &'a FiniteSemigroup,
    t: &'a SubSemigroup,
    right: Vec<BTreeSet<Elem>>,
    left: Vec<BTreeSet<Elem>>,
}

impl<'a> Oracle<'a> {
    fn new(s: &'a FiniteSemigroup, t: &'a SubSemigroup) -> Self {
        let right = s
            .elements()
            .map(|u| t.members().iter().map(|&x| s.mul(u, x)).chain([u]).collect())
            .collect();
        let left = s
            .elements()
            .map(|u| t.members().iter().map(|&x| s.mul(x, u)).chain([u]).collect())
            .collect();
        Oracle { s, t, right, left }
    }

    fn one(&self) -> Elem {
        self.s.order()
    }

    fn mul(&self, x: Elem, y: Elem) -> Elem {
        match (x == self.one(), y == self.one()) {
            (true, _) => y,
            (_, true) => x,
            _ => self.s.mul(x, y),
        }
    }

    fn product(&self, w: &[Elem]) -> Elem {
        w.iter().fold(self.one(), |acc, &x| self.mul(acc, x))
    }

    fn in_t1(&self, x: Elem) -> bool {
        x == self.one() || self.t.contains(x)
    }

    fn r(&self, u: Elem, v: Elem) -> bool {
        self.right[u] == self.right[v]
    }

    fn l(&self, u: Elem, v: Elem) -> bool {
        self.left[u] == self.left[v]
    }

    fn h(&self, u: Elem, v: Elem) -> bool {
        self.r(u, v) && self.l(u, v)
    }

    fn t1(&self) -> Vec<Elem> {
        let mut v = self.t.members().to_vec();
        v.push(self.one());
        v
    }

    fn h_class(&self, u: Elem) -> BTreeSet<Elem> {
        self.s.elements().filter(|&v| self.h(u, v)).collect()
    }

    fn stab(&self, h: &BTreeSet<Elem>) -> BTreeSet<Elem> {
        self.t1()
            .into_iter()
            .filter(|&t| h.iter().map(|&x| self.mul(x, t)).collect::<BTreeSet<_>>() == *h)
            .collect()
    }
}

fn closure(s: &FiniteSemigroup, gens: &[Elem]) -> BTreeSet<Elem> {
    let mut seen: BTreeSet<Elem> = gens.iter().copied().collect();
    let mut stack: Vec<Elem> = seen.iter().copied().collect();
    while let Some(x) = stack.pop() {
        for &g in gens {
            for y in [s.mul(x, g), s.mul(g, x)] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    seen
}

fn words(letters: usize, min_len: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for len in 0..=max_len {
        if len >= min_len {
            out.extend(layer.iter().cloned());
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                (0..letters).map(move |a| {
                    let mut v = w.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

fn ball_sizes(s: &FiniteSemigroup, gens: &[Elem], radius: usize) -> Vec<usize> {
    // None is the adjoined identity
    let mut seen: BTreeSet<Option<Elem>> = BTreeSet::from([None]);
    let mut frontier = vec![None];
    let mut sizes = vec![1];
    for _ in 0..radius {
        let mut next = Vec::new();
        for x in &frontier {
            for &g in gens {
                let y = Some(x.map_or(g, |x| s.mul(x, g)));
                if seen.insert(y) {
                    next.push(y);
                }
            }
        }
        sizes.push(seen.len());
        frontier = next;
    }
    sizes
}

// ---- instances --------------------------------------------------------

fn random_pairs() -> Vec<(FiniteSemigroup, SubSemigroup)> {
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    (0..RANDOM_PAIRS)
        .map(|_| catalog::random_instance(&mut rng, RANDOM_MAX_ORDER))
        .collect()
}

fn all_pairs(fixed: &[Instance]) -> Vec<(String, FiniteSemigroup, SubSemigroup)> {
    fixed
        .iter()
        .map(|i| (i.name.to_string(), i.semigroup.clone(), i.sub.clone()))
        .chain(
            random_pairs()
                .into_iter()
                .enumerate()
                .map(|(k, (s, t))| (format!("random #{k}"), s, t)),
        )
        .collect()
}

fn greedy_all(s: &FiniteSemigroup) -> Vec<Elem> {
    s.greedy_generators(&s.elements().collect::<Vec<_>>())
}

// ---- criteria ---------------------------------------------------------

fn check_connectors(name: &str, conn: &ConnectorTables, o: &Oracle) -> std::result::Result<usize, String> {
    let g = conn.green();
    let mut checked = 0;
    for s in 0..=o.one() {
        for i in g.class_ids() {
            let h = g.rep(i);
            // s h_i = h_ρ σ
            let x = o.mul(s, h);
            let (rho, sigma) = (conn.rho(s, i), conn.sigma(s, i));
            ensure(o.in_t1(sigma), || format!("{name}: σ({s},{i}) not in T¹"))?;
            ensure(x == o.mul(g.rep(rho), sigma), || format!("{name}: s·h_i ≠ h_ρ·σ at ({s},{i})"))?;
            let rho_ok = if o.in_t1(x) {
                rho.is_one()
            } else {
                !rho.is_one() && o.h(x, g.rep(rho))
            };
            ensure(rho_ok, || format!("{name}: ρ does not classify s·h_i at ({s},{i})"))?;
            // h_i s = τ h_λ
            let y = o.mul(h, s);
            let (lambda, tau) = (conn.lambda(i, s), conn.tau(i, s));
            ensure(o.in_t1(tau), || format!("{name}: τ({i},{s}) not in T¹"))?;
            ensure(y == o.mul(tau, g.rep(lambda)), || format!("{name}: h_i·s ≠ τ·h_λ at ({i},{s})"))?;
            let lambda_ok = if o.in_t1(y) {
                lambda.is_one()
            } else {
                !lambda.is_one() && o.h(y, g.rep(lambda))
            };
            ensure(lambda_ok, || format!("{name}: λ does not classify h_i·s at ({i},{s})"))?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn criterion_1(fixed: &[Instance]) -> Check {
    let start = Instant::now();
    let pairs = all_pairs(fixed);
    let mut cells = 0;
    for (name, s, t) in &pairs {
        let o = Oracle::new(s, t);
        let conn = connectors(&relative_green(s, t)).map_err(|e| format!("{name}: {e}"))?;
        // the classes partition S ∖ T into H^T-classes with the given reps
        let g = conn.green();
        let reps: Vec<Elem> = g.complement_ids().map(|i| g.rep(i)).collect();
        let expected: BTreeSet<BTreeSet<Elem>> =
            t.complement().iter().map(|&u| o.h_class(u)).collect();
        let got: BTreeSet<BTreeSet<Elem>> = reps.iter().map(|&h| o.h_class(h)).collect();
        ensure(expected == got && reps.len() == expected.len(), || {
            format!("{name}: complement classes differ from the oracle")
        })?;
        cells += check_connectors(name, &conn, &o)?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CONNECTOR_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("{} pairs, {cells} (s,i) cells, {elapsed:.1?}", pairs.len()))
}

fn criterion_2(fixed: &[Instance]) -> Check {
    let mut traces = 0;
    for inst in fixed {
        let (s, t) = (&inst.semigroup, &inst.sub);
        let o = Oracle::new(s, t);
        let conn = connectors(&relative_green(s, t)).map_err(|e| e.to_string())?;
        let g = conn.green();
        for w in words(s.order(), 1, REWRITE_WORD_LEN) {
            let all_in_t = w.iter().all(|&x| t.contains(x));
            let prod = o.product(&w);
            for i in g.class_ids() {
                let hi = g.rep(i);
                // left to right
                let tr = push_right(&conn, i, &w);
                let mut cur = i;
                for (k, &x) in w.iter().enumerate() {
                    ensure(tr.output[k] == conn.tau(cur, x) && tr.indices[k] == cur, || {
                        format!("{}: left-to-right recursion differs for {w:?}", inst.name)
                    })?;
                    cur = conn.lambda(cur, x);
                }
                ensure(cur == tr.output_class, || format!("{}: left-to-right output class differs", inst.name))?;
                let lhs = o.mul(hi, prod);
                ensure(lhs == o.mul(o.product(&tr.output), g.rep(cur)), || {
                    format!("{}: h_i·w ≠ t·h_j for i={i}, w={w:?}", inst.name)
                })?;
                ensure(tr.output.iter().all(|&x| o.in_t1(x)), || "t_k outside T¹".into())?;
                if all_in_t {
                    let hj = g.rep(cur);
                    if !o.in_t1(lhs) {
                        ensure(o.l(lhs, hj), || format!("{}: product outside T¹ not L-related to h_j", inst.name))?;
                    } else {
                        ensure(cur.is_one(), || format!("{}: product in T¹ but j ≠ 1", inst.name))?;
                    }
                    if !i.is_one() && o.r(lhs, hi) {
                        ensure(o.h(lhs, hj), || format!("{}: R-related product not H-related to h_j", inst.name))?;
                    }
                }
                // right to left
                let tr = push_left(&conn, i, &w);
                let mut cur = i;
                for k in (0..w.len()).rev() {
                    ensure(tr.output[k] == conn.sigma(w[k], cur), || {
                        format!("{}: right-to-left recursion differs for {w:?}", inst.name)
                    })?;
                    cur = conn.rho(w[k], cur);
                    ensure(tr.indices[k] == cur, || "index sequence differs".into())?;
                }
                ensure(cur == tr.output_class, || format!("{}: right-to-left output class differs", inst.name))?;
                let lhs = o.mul(prod, hi);
                ensure(lhs == o.mul(g.rep(cur), o.product(&tr.output)), || {
                    format!("{}: w·h_i ≠ h_j·t for i={i}, w={w:?}", inst.name)
                })?;
                if all_in_t {
                    let hj = g.rep(cur);
                    if !o.in_t1(lhs) {
                        ensure(o.r(lhs, hj), || format!("{}: product outside T¹ not R-related to h_j", inst.name))?;
                    } else {
                        ensure(cur.is_one(), || format!("{}: product in T¹ but j ≠ 1 (right to left)", inst.name))?;
                    }
                    if !i.is_one() && o.l(lhs, hi) {
                        ensure(o.h(lhs, hj), || format!("{}: L-related product not H-related to h_j", inst.name))?;
                    }
                }
                traces += 2;
            }
        }
    }
    Ok(format!("{traces} traces"))
}

fn criterion_3(fixed: &[Instance]) -> Check {
    let pairs = all_pairs(fixed);
    let mut factorizations = 0;
    for (name, s, t) in &pairs {
        let conn = connectors(&relative_green(s, t)).map_err(|e| e.to_string())?;
        let g = conn.green();
        let gen_sets = if name.starts_with("random") {
            vec![greedy_all(s)]
        } else {
            vec![greedy_all(s), s.elements().collect()]
        };
        for a in gen_sets {
            let sg = schreier_generators(&conn, &a).map_err(|e| format!("{name}: {e}"))?;
            let b = sg.generators();
            ensure(closure(s, b) == t.members().iter().copied().collect(), || {
                format!("{name}: closure of B is not T")
            })?;
            ensure(b.len() <= a.len() * g.width() * g.width(), || format!("{name}: |B| too large"))?;
            for &x in t.members() {
                let f = sg.factorize(x).map_err(|e| e.to_string())?;
                let src: Vec<Elem> = f.source_word.clone();
                ensure(src.iter().all(|y| a.contains(y)), || "source word leaves A".into())?;
                ensure(!f.b_word.is_empty() && f.b_word.iter().all(|y| b.contains(y)), || {
                    format!("{name}: factorization of {x} leaves B")
                })?;
                let o = Oracle::new(s, t);
                ensure(o.product(&f.b_word) == x && o.product(&src) == x, || {
                    format!("{name}: factorization of {x} evaluates wrongly")
                })?;
                factorizations += 1;
            }
        }
    }
    let mut index_two = Vec::new();
    for inst in fixed.iter().filter(|i| i.name.starts_with("S(")) {
        let gi = relative_green(&inst.semigroup, &inst.sub).green_index();
        ensure(gi == 2, || format!("{}: Green index {gi}, expected 2", inst.name))?;
        index_two.push(inst.name);
    }
    Ok(format!(
        "{} pairs, {factorizations} factorizations, index 2 on {}",
        pairs.len(),
        index_two.join(" and ")
    ))
}

fn element_orders(grp: &FiniteSemigroup) -> BTreeMap<usize, usize> {
    let e = grp.identity().expect("a group has an identity");
    let mut counts = BTreeMap::new();
    for x in grp.elements() {
        let (mut y, mut k) = (x, 1);
        while y != e {
            y = grp.mul(y, x);
            k += 1;
        }
        *counts.entry(k).or_insert(0) += 1;
    }
    counts
}

fn criterion_4(fixed: &[Instance]) -> Check {
    let pairs = all_pairs(fixed);
    let (mut classes, mut transports) = (0, 0);
    for (name, s, t) in &pairs {
        let g = relative_green(s, t);
        let o = Oracle::new(s, t);
        let b = s.greedy_generators(t.members());
        for i in g.complement_ids() {
            let group = schutz_group_of_class(&g, i).map_err(|e| format!("{name}: {e}"))?;
            let h = o.h_class(g.rep(i));
            ensure(group.order() == h.len(), || format!("{name}: |Γ| ≠ |H| for {i}"))?;
            let stab: BTreeSet<Elem> = group.stabilizer().iter().copied().collect();
            ensure(stab == o.stab(&h), || format!("{name}: Stab differs for {i}"))?;
            let lam = lambda_data(&g, group.h_class(), group.basepoint()).map_err(|e| e.to_string())?;
            let x = schutz_generators(&g, &b, &lam, &group).map_err(|e| format!("{name}: {e}"))?;
            // subgroup generated by X; the empty set generates the trivial group
            let table = group.table();
            let e = (0..group.order())
                .find(|&e| (0..group.order()).all(|y| table[e][y] == y))
                .ok_or("Γ has no identity")?;
            let mut sub: BTreeSet<usize> = x.iter().copied().chain([e]).collect();
            loop {
                let next: BTreeSet<usize> = sub
                    .iter()
                    .flat_map(|&p| sub.iter().map(|&q| table[p][q]).collect::<Vec<_>>())
                    .chain(sub.iter().copied())
                    .collect();
                if next == sub {
                    break;
                }
                sub = next;
            }
            ensure(sub.len() == group.order(), || format!("{name}: X = {x:?} does not generate Γ({i}) of order {}", group.order()))?;
            classes += 1;
            for j in g.complement_ids().filter(|&j| j > i) {
                let (hi, hj) = (g.rep(i), g.rep(j));
                if !o.l(hi, hj) && !o.r(hi, hj) {
                    continue;
                }
                let rep = check_l_r_transport(&g, i, j).map_err(|e| e.to_string())?;
                ensure(rep.holds(), || format!("{name}: transport check fails for {i},{j}"))?;
                let other = schutz_group_of_class(&g, j).map_err(|e| e.to_string())?;
                if o.l(hi, hj) {
                    let hj_class = o.h_class(hj);
                    ensure(o.stab(&h) == o.stab(&hj_class), || format!("{name}: L-related classes have different stabilizers"))?;
                }
                if o.r(hi, hj) {
                    let (a, b) = (group.to_semigroup(), other.to_semigroup());
                    ensure(element_orders(&a) == element_orders(&b), || format!("{name}: R-related classes have non-isomorphic groups"))?;
                    ensure(groups_isomorphic(&a, &b) != Isomorphism::NotIsomorphic, || {
                        format!("{name}: R-related classes have non-isomorphic groups")
                    })?;
                }
                transports += 1;
            }
        }
    }
    Ok(format!("{classes} classes, {transports} related class pairs"))
}

fn criterion_5(fixed: &[Instance]) -> Check {
    let mut parts = Vec::new();
    for inst in fixed {
        let start = Instant::now();
        let s = &inst.semigroup;
        let conn = connectors(&relative_green(s, &inst.sub)).map_err(|e| e.to_string())?;
        let syn = synthesize_with_table_presentations(&conn, MAX_CLASSES, MAX_LEN)
            .map_err(|e| format!("{}: {e}", inst.name))?;
        let p = syn.presentation();
        let alpha = &syn.assignment().images;
        let o = Oracle::new(s, &inst.sub);
        let eval = |w: &[usize]| o.product(&w.iter().map(|&a| alpha[a]).collect::<Vec<_>>());
        for (u, v) in &p.relations {
            ensure(eval(u) == eval(v), || format!("{}: unsound relation", inst.name))?;
        }
        let e = match enumerate_presentation(p, MAX_CLASSES, MAX_LEN) {
            EnumerationOutcome::Complete(e) => e,
            EnumerationOutcome::BoundExceeded(r) => return Err(format!("{}: {r}", inst.name)),
        };
        let images: Vec<Elem> = e.representatives().iter().map(|w| eval(w)).collect();
        let distinct: BTreeSet<Elem> = images.iter().copied().collect();
        ensure(e.order() == s.order() && distinct.len() == s.order(), || {
            format!("{}: {} classes for |S| = {}", inst.name, e.order(), s.order())
        })?;
        for x in 0..e.order() {
            for y in 0..e.order() {
                ensure(images[e.mul(x, y)] == s.mul(images[x], images[y]), || {
                    format!("{}: induced map is not a homomorphism", inst.name)
                })?;
            }
        }
        let elapsed = start.elapsed();
        ensure(elapsed < PRESENTATION_TIME, || format!("{}: took {elapsed:?}", inst.name))?;
        parts.push(format!("{} {} classes {elapsed:.1?}", inst.name, e.order()));
    }
    Ok(parts.join(", "))
}

fn criterion_6(fixed: &[Instance]) -> Check {
    let mut decided = 0usize;
    for inst in fixed {
        let s = &inst.semigroup;
        let conn = connectors(&relative_green(s, &inst.sub)).map_err(|e| e.to_string())?;
        let syn = synthesize_with_table_presentations(&conn, MAX_CLASSES, MAX_LEN).map_err(|e| e.to_string())?;
        let alpha = &syn.assignment().images;
        let o = Oracle::new(s, &inst.sub);
        let all = words(alpha.len(), 1, WP_WORD_LEN);
        let values: Vec<Elem> = all
            .iter()
            .map(|w| o.product(&w.iter().map(|&a| alpha[a]).collect::<Vec<_>>()))
            .collect();
        for (w1, v1) in all.iter().zip(&values) {
            for (w2, v2) in all.iter().zip(&values) {
                let verdict = decide_word_equality(&syn, w1, w2).map_err(|e| e.to_string())?;
                ensure(verdict.equal == (v1 == v2), || {
                    format!("{}: wrong verdict for {w1:?} vs {w2:?}", inst.name)
                })?;
                decided += 1;
            }
        }
    }
    Ok(format!("{decided} word pairs"))
}

fn criterion_7(fixed: &[Instance]) -> Check {
    let mut rows = 0;
    for inst in fixed {
        let (s, t) = (&inst.semigroup, &inst.sub);
        let g = relative_green(s, t);
        let r = default_transversal(&g);
        let b = s.greedy_generators(t.members());
        let rep = domination_check(s, t, &r, &b, GROWTH_RADIUS).map_err(|e| format!("{}: {e}", inst.name))?;
        ensure(rep.k1 == r.len(), || "k1 ≠ |R|".into())?;
        let o = Oracle::new(s, t);
        for w in &rep.witnesses {
            ensure(o.mul(w.a1, w.a2) == o.mul(w.r, w.mu) && o.in_t1(w.mu) && r.contains(&w.r), || {
                format!("{}: bad μ witness", inst.name)
            })?;
        }
        let gs = ball_sizes(s, &rep.a, GROWTH_RADIUS);
        let gt = ball_sizes(s, &b, rep.k2 * GROWTH_RADIUS);
        for n in 0..=GROWTH_RADIUS {
            ensure(gs[n] == rep.g_s.sizes[n] && gt[rep.k2 * n] == rep.g_t.sizes[rep.k2 * n], || {
                format!("{}: growth series differ at {n}", inst.name)
            })?;
            ensure(gs[n] <= rep.k1 * gt[rep.k2 * n], || {
                format!("{}: inequality fails at n = {n}", inst.name)
            })?;
            rows += 1;
        }
    }
    let nat = growth_function(&Naturals, &[1], NATURALS_RADIUS, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
    ensure(nat.sizes == (1..=NATURALS_RADIUS + 1).collect::<Vec<_>>(), || {
        "(ℕ,+) series is not n ↦ n+1".into()
    })?;
    Ok(format!("{rows} rows, (ℕ,+) exact to {NATURALS_RADIUS}"))
}

fn criterion_8(fixed: &[Instance]) -> Check {
    let mut parts = Vec::new();
    for inst in fixed {
        let (s, t) = (&inst.semigroup, &inst.sub);
        let conn = connectors(&relative_green(s, t)).map_err(|e| e.to_string())?;
        let g = conn.green();
        let a = greedy_all(s);
        let st = structure_for_finite(s, &a).map_err(|e| e.to_string())?;
        let tr = transfer(&st, &conn, s.order() + 1).map_err(|e| format!("{}: {e}", inst.name))?;
        let rep = verify_structure(&tr.structure, &tr.t_semigroup, AUTO_MAX_LEN);
        ensure(rep.valid, || format!("{}: {:?}", inst.name, rep.defect))?;

        // the general relation on A⁺
        let o = Oracle::new(s, t);
        let queue = st.max_word_length().unwrap_or(s.order());
        let rel = rewriting_relation(&conn, &a, queue).map_err(|e| format!("{}: {e}", inst.name))?;
        let letters = transfer_letters(&conn, &a);
        ensure(letters == tr.letters, || "letter sets differ".into())?;
        let value = |tr: &Triple| o.mul(conn.tau(tr.j, conn.sigma(a[tr.a], tr.i)), o.one());
        let pairs = rel.enumerate(REWRITE_WORD_LEN);
        let mut partners: HashMap<Vec<usize>, Vec<Vec<usize>>> = HashMap::new();
        for (u, v) in &pairs {
            let uv = o.product(&u.iter().map(|&x| a[x]).collect::<Vec<_>>());
            let vv = o.product(&v.iter().map(|b| value(&letters[*b])).collect::<Vec<_>>());
            // every accepted pair has equal values in T
            ensure(uv == vv && t.contains(uv), || format!("{}: accepted pair with unequal values for {u:?}", inst.name))?;
            partners.entry(u.clone()).or_default().push(v.clone());
        }
        // exactly one partner for words with value in T, none otherwise
        for u in words(a.len(), 1, REWRITE_WORD_LEN) {
            let uv = o.product(&u.iter().map(|&x| a[x]).collect::<Vec<_>>());
            let n = partners.get(&u).map_or(0, |p| p.len());
            ensure(n == usize::from(t.contains(uv)), || {
                format!("{}: {u:?} has {n} partners", inst.name)
            })?;
        }
        // every consistent triple word is the output for its middle letters
        let triples: Vec<Triple> = g
            .class_ids()
            .flat_map(|j| (0..a.len()).flat_map(move |x| g.class_ids().map(move |i| Triple { j, a: x, i })))
            .collect();
        let index: HashMap<Triple, usize> = letters.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let mut consistent = 0;
        for w in words(triples.len(), 1, TRIPLE_WORD_LEN) {
            let v: Vec<Triple> = w.iter().map(|&k| triples[k]).collect();
            let n = v.len();
            let ok = v[n - 1].i.is_one()
                && (1..n).all(|k| v[k - 1].i == conn.rho(a[v[k].a], v[k].i))
                && v[0].j == conn.rho(a[v[0].a], v[0].i)
                && (1..n).all(|k| v[k].j == conn.lambda(v[k - 1].j, conn.sigma(a[v[k - 1].a], v[k - 1].i)))
                && conn.lambda(v[n - 1].j, conn.sigma(a[v[n - 1].a], v[n - 1].i)).is_one();
            if !ok {
                continue;
            }
            consistent += 1;
            let u: Vec<usize> = v.iter().map(|x| x.a).collect();
            let kept: Vec<usize> = v.iter().filter_map(|x| index.get(x).copied()).collect();
            let found = partners.get(&u).cloned().unwrap_or_default();
            ensure(found == vec![kept], || format!("{}: consistent triple word {v:?} not produced", inst.name))?;
        }
        parts.push(format!(
            "{}: {} letters, {} pairs, {consistent} triple words",
            inst.name,
            letters.len(),
            pairs.len()
        ));
    }
    Ok(parts.join("; "))
}

// Latin squares of order n by backtracking: exactly the cancellative tables.
fn latin_squares(n: usize) -> Vec<Vec<Vec<usize>>> {
    fn fill(n: usize, cell: usize, t: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if cell == n * n {
            out.push(t.clone());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        for v in 0..n {
            if (0..c).any(|k| t[r][k] == v) || (0..r).any(|k| t[k][c] == v) {
                continue;
            }
            t[r][c] = v;
            fill(n, cell + 1, t, out);
        }
        t[r][c] = usize::MAX;
    }
    let mut out = Vec::new();
    fill(n, 0, &mut vec![vec![usize::MAX; n]; n], &mut out);
    out
}

fn criterion_9() -> Check {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 1..=CANCELLATIVE_MAX_ORDER {
        let mut groups = 0;
        for table in latin_squares(n) {
            let assoc = (0..n).all(|x| {
                (0..n).all(|y| (0..n).all(|z| table[table[x][y]][z] == table[x][table[y][z]]))
            });
            let Ok(s) = greenidx::validate_table(&table) else {
                ensure(!assoc, || "associative table rejected".into())?;
                continue;
            };
            ensure(assoc && s.is_cancellative(), || "validation disagrees".into())?;
            let e = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x));
            let inverses = e.is_some_and(|e| (0..n).all(|x| (0..n).any(|y| table[x][y] == e && table[y][x] == e)));
            ensure(inverses && s.is_group(), || format!("order {n}: cancellative but not a group"))?;
            groups += 1;
        }
        counts.push(groups);
    }
    // labelled groups: 1, 2, 3, and 4!/2 + 4!/6 = 16
    ensure(counts == vec![1, 2, 3, 16], || format!("group counts {counts:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < CANCELLATIVE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("associative Latin squares by order {counts:?}, {elapsed:.1?}"))
}

fn cli_pipeline(dir: &Path, s: &FiniteSemigroup, t: &SubSemigroup) -> Vec<u8> {
    let sf = dir.join("s.json");
    let tf = dir.join("t.json");
    std::fs::write(&sf, serde_json::to_string(&SemigroupFile::from_semigroup(s)).unwrap()).unwrap();
    std::fs::write(
        &tf,
        serde_json::to_string(&SubFile {
            members: t.members().to_vec(),
        })
        .unwrap(),
    )
    .unwrap();
    let (pf, st, tt) = (dir.join("p.json"), dir.join("st.json"), dir.join("tt.json"));
    let sp = |p: &Path| p.to_str().unwrap().to_string();
    let pair = vec!["--semigroup".to_string(), sp(&sf), "--sub".to_string(), sp(&tf)];
    let cmds: Vec<Vec<String>> = vec![
        vec!["validate".into(), "--semigroup".into(), sp(&sf)],
        [vec!["green-index".into()], pair.clone()].concat(),
        [vec!["connectors".into()], pair.clone()].concat(),
        [vec!["schreier".into()], pair.clone()].concat(),
        [vec!["present".into(), "synth".into()], pair.clone(), vec!["--out".into(), sp(&pf)]].concat(),
        vec!["present".into(), "enumerate".into(), "--presentation".into(), sp(&pf)],
        vec!["present".into(), "verify".into(), "--presentation".into(), sp(&pf), "--semigroup".into(), sp(&sf)],
        [vec!["growth".into(), "dominate".into()], pair.clone()].concat(),
        vec!["auto".into(), "build".into(), "--semigroup".into(), sp(&sf), "--out".into(), sp(&st)],
        vec!["auto".into(), "transfer".into(), "--structure".into(), sp(&st), "--sub".into(), sp(&tf), "--out".into(), sp(&tt)],
        vec!["auto".into(), "verify".into(), "--structure".into(), sp(&tt)],
    ];
    let mut bytes = Vec::new();
    for args in cmds {
        let out = Command::new(env!("CARGO_BIN_EXE_greenidx"))
            .arg("--format")
            .arg("json")
            .args(&args)
            .output()
            .unwrap();
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        bytes.extend(out.stdout);
    }
    for f in [&pf, &st, &tt] {
        bytes.extend(std::fs::read(f).unwrap());
    }
    bytes
}

fn criterion_10(fixed: &[Instance]) -> Check {
    let mut total = 0;
    for inst in fixed {
        let d1 = tempfile::TempDir::new().unwrap();
        let d2 = tempfile::TempDir::new().unwrap();
        let mut a = cli_pipeline(d1.path(), &inst.semigroup, &inst.sub);
        let mut b = cli_pipeline(d2.path(), &inst.semigroup, &inst.sub);
        // file paths differ between the two directories
        let strip = |v: &mut Vec<u8>, d: &Path| {
            let text = String::from_utf8(std::mem::take(v)).unwrap();
            *v = text.replace(d.to_str().unwrap(), "<dir>").into_bytes();
        };
        strip(&mut a, d1.path());
        strip(&mut b, d2.path());
        ensure(a == b, || format!("{}: outputs differ", inst.name))?;
        total += a.len();
    }
    Ok(format!("{total} bytes identical across two runs"))
}

fn main() {
    let fixed = catalog::fixed_instances();
    let criteria: Vec<(&str, Box<dyn Fn() -> Check>)> = vec![
        ("connector soundness", Box::new(|| criterion_1(&fixed))),
        ("rewriting", Box::new(|| criterion_2(&fixed))),
        ("Schreier generators", Box::new(|| criterion_3(&fixed))),
        ("Schützenberger generators", Box::new(|| criterion_4(&fixed))),
        ("presentation synthesis", Box::new(|| criterion_5(&fixed))),
        ("word problem", Box::new(|| criterion_6(&fixed))),
        ("growth domination", Box::new(|| criterion_7(&fixed))),
        ("automatic transfer", Box::new(|| criterion_8(&fixed))),
        ("finite cancellativity", Box::new(criterion_9)),
        ("determinism", Box::new(|| criterion_10(&fixed))),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        match result {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} {name}: FAIL ({why})", k + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

