//! Relative Schützenberger groups: stabilizers, the kernel congruence `γ`,
//! the group as permutations of an `H^T`-class, the connecting elements
//! `p_λ, p′_λ` across an `R^T`-class, and generating sets for the group.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::green::{ClassId, GreenData};
use crate::semigroup::{Elem, FiniteSemigroup};

/// `Γ(H) = Stab(H)/γ`, realized as the permutations `x ↦ xt` of `H`.
///
/// Group elements are numbered by the position of `h·t` in the sorted
/// class, so the basepoint's position is the identity.
#[derive(Debug, Clone)]
pub struct SchutzGroup {
    h_class: Vec<Elem>,
    basepoint: Elem,
    stabilizer: Vec<Elem>,
    gamma_classes: Vec<Vec<Elem>>,
    // indexed by S¹ element
    quotient: Vec<Option<usize>>,
    perms: Vec<Vec<usize>>,
    table: Vec<usize>,
    identity: usize,
}

pub fn schutz_group(green: &GreenData, h_class: &[Elem], basepoint: Elem) -> Result<SchutzGroup> {
    let s = green.semigroup();
    let mut h: Vec<Elem> = h_class.to_vec();
    h.sort_unstable();
    h.dedup();
    if h.is_empty() || h.iter().any(|&x| x >= s.order()) || green.h_class_of(h[0]) != h.as_slice()
    {
        return Err(Error::NotAnHClass);
    }
    let Ok(base_pos) = h.binary_search(&basepoint) else {
        return Err(Error::NotAnHClass);
    };
    let pos = |x: Elem| h.binary_search(&x).ok();

    let mut stabilizer = Vec::new();
    let mut gamma_classes = vec![Vec::new(); h.len()];
    let mut quotient = vec![None; s.order() + 1];
    for t in green.t1_witness_order() {
        if let Some(k) = pos(s.mul1(basepoint, t)) {
            stabilizer.push(t);
            gamma_classes[k].push(t);
            quotient[t] = Some(k);
        }
    }
    if gamma_classes.iter().any(|c| c.is_empty()) {
        return Err(Error::InternalInconsistency(
            "H is not the orbit of its stabilizer".into(),
        ));
    }
    let mut perms = Vec::with_capacity(h.len());
    for class in &gamma_classes {
        let t = class[0];
        let perm: Option<Vec<usize>> = h.iter().map(|&x| pos(s.mul1(x, t))).collect();
        perms.push(perm.ok_or_else(|| {
            Error::InternalInconsistency("stabilizer element moves H off itself".into())
        })?);
    }
    let m = h.len();
    // g·k acts as x ↦ (x t_g) t_k, so it sends the basepoint to perms[k][g]
    let mut table = vec![0; m * m];
    for g in 0..m {
        for k in 0..m {
            table[g * m + k] = perms[k][g];
        }
    }
    Ok(SchutzGroup {
        h_class: h,
        basepoint,
        stabilizer,
        gamma_classes,
        quotient,
        perms,
        table,
        identity: base_pos,
    })
}

/// Schützenberger group of a complement class, based at its representative.
pub fn schutz_group_of_class(green: &GreenData, i: ClassId) -> Result<SchutzGroup> {
    if i.is_one() || i.0 > green.complement_count() {
        return Err(Error::NotAnHClass);
    }
    schutz_group(green, &green.class_members(i), green.rep(i))
}

impl SchutzGroup {
    pub fn h_class(&self) -> &[Elem] {
        &self.h_class
    }

    pub fn basepoint(&self) -> Elem {
        self.basepoint
    }

    /// `Stab(H)`, members of `T` ascending then the adjoined identity.
    pub fn stabilizer(&self) -> &[Elem] {
        &self.stabilizer
    }

    pub fn gamma_classes(&self) -> &[Vec<Elem>] {
        &self.gamma_classes
    }

    pub fn order(&self) -> usize {
        self.h_class.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, k: usize) -> usize {
        self.table[g * self.order() + k]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order())
            .map(|row| row.to_vec())
            .collect()
    }

    pub fn permutation(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    /// `t/γ` for `t ∈ Stab(H)`.
    pub fn class_of(&self, t: Elem) -> Option<usize> {
        self.quotient.get(t).copied().flatten()
    }

    /// The element of `H` that the group element moves the basepoint to.
    pub fn image_of_basepoint(&self, g: usize) -> Elem {
        self.h_class[g]
    }

    /// Smallest member of `T` in the `γ`-class, if any.
    pub fn t_lift(&self, g: usize, green: &GreenData) -> Option<Elem> {
        self.gamma_classes[g]
            .iter()
            .copied()
            .find(|&t| green.in_t(t))
    }

    pub fn to_semigroup(&self) -> FiniteSemigroup {
        FiniteSemigroup::from_flat(self.order(), self.table.clone())
            .expect("Schützenberger group table is associative")
    }

    /// Closure of `gens` under the group product, always containing the identity.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&g| seen[g]).collect()
    }

    /// Re-checks the defining properties: `Stab(H)` exactly, `H = h·Stab`,
    /// `γ` a congruence with the quotient table, and simple transitivity.
    pub fn check(&self, green: &GreenData) -> bool {
        let s = green.semigroup();
        let in_h = |x: Elem| self.h_class.binary_search(&x).is_ok();
        let stab_ok = green
            .t1()
            .into_iter()
            .all(|t| in_h(s.mul1(self.basepoint, t)) == self.stabilizer.contains(&t));
        let orbit: BTreeSet<Elem> = self
            .stabilizer
            .iter()
            .map(|&t| s.mul1(self.basepoint, t))
            .collect();
        let orbit_ok = orbit.into_iter().eq(self.h_class.iter().copied());
        let congruence_ok = self.stabilizer.iter().all(|&u| {
            self.stabilizer.iter().all(|&v| {
                let uv = s.mul1(u, v);
                match (self.class_of(u), self.class_of(v), self.class_of(uv)) {
                    (Some(a), Some(b), Some(c)) => self.mul(a, b) == c,
                    _ => false,
                }
            })
        });
        let regular_ok = (0..self.order()).all(|g| {
            let fixed = self.perms[g]
                .iter()
                .enumerate()
                .filter(|&(x, &y)| x == y)
                .count();
            g == self.identity || fixed == 0
        });
        stab_ok && orbit_ok && congruence_ok && regular_ok
    }
}

/// The `H^T`-classes `H_λ` in the `R^T`-class of `H`, with elements
/// `p_λ, p′_λ ∈ T¹` such that `H p_λ = H_λ` and `p′_λ` undoes it on `H`.
#[derive(Debug, Clone)]
pub struct LambdaData {
    classes: Vec<Vec<Elem>>,
    p: Vec<Elem>,
    p_prime: Vec<Elem>,
    // [λ * (n + 1) + t]
    action: Vec<Option<usize>>,
    width: usize,
}

pub fn lambda_data(green: &GreenData, h_class: &[Elem], basepoint: Elem) -> Result<LambdaData> {
    let s = green.semigroup();
    let mut h: Vec<Elem> = h_class.to_vec();
    h.sort_unstable();
    h.dedup();
    if h.is_empty() || h.iter().any(|&x| x >= s.order()) || green.h_class_of(h[0]) != h.as_slice()
    {
        return Err(Error::NotAnHClass);
    }
    if h.binary_search(&basepoint).is_err() {
        return Err(Error::NotAnHClass);
    }
    let r = green.r_class_id(basepoint);
    let mut classes = vec![h.clone()];
    let mut seen: BTreeSet<usize> = BTreeSet::from([green.h_class_id(basepoint)]);
    for u in s.elements() {
        if green.r_class_id(u) == r && seen.insert(green.h_class_id(u)) {
            classes.push(green.h_class_of(u).to_vec());
        }
    }
    let one = s.one();
    let mut p = vec![one];
    let mut p_prime = vec![one];
    for class in &classes[1..] {
        let pl = green
            .t1_witness_order()
            .find(|&t| class.binary_search(&s.mul1(basepoint, t)).is_ok())
            .ok_or_else(|| Error::InternalInconsistency("no p_lambda".into()))?;
        let hp = s.mul1(basepoint, pl);
        let ppl = green
            .t1_witness_order()
            .find(|&t| s.mul1(hp, t) == basepoint)
            .ok_or_else(|| Error::InternalInconsistency("no p'_lambda".into()))?;
        p.push(pl);
        p_prime.push(ppl);
    }
    let width = s.order() + 1;
    let mut action = vec![None; classes.len() * width];
    for (l, class) in classes.iter().enumerate() {
        for t in green.t1() {
            let mut image: Vec<Elem> = class.iter().map(|&x| s.mul1(x, t)).collect();
            image.sort_unstable();
            image.dedup();
            action[l * width + t] = classes.iter().position(|c| *c == image);
        }
    }
    Ok(LambdaData {
        classes,
        p,
        p_prime,
        action,
        width,
    })
}

impl LambdaData {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }

    pub fn p(&self, l: usize) -> Elem {
        self.p[l]
    }

    pub fn p_prime(&self, l: usize) -> Elem {
        self.p_prime[l]
    }

    /// `λ·t`, or `None` for the sink `0`.
    pub fn act(&self, l: usize, t: Elem) -> Option<usize> {
        self.action[l * self.width + t]
    }

    /// `H p_λ = H_λ`, `h₁ p_λ p′_λ = h₁` on `H`, `h₂ p′_λ p_λ = h₂` on `H_λ`.
    pub fn check(&self, green: &GreenData) -> bool {
        let s = green.semigroup();
        let h = &self.classes[0];
        (0..self.len()).all(|l| {
            let (p, q) = (self.p[l], self.p_prime[l]);
            let mut image: Vec<Elem> = h.iter().map(|&x| s.mul1(x, p)).collect();
            image.sort_unstable();
            image == self.classes[l]
                && h.iter().all(|&x| s.mul1(s.mul1(x, p), q) == x)
                && self.classes[l]
                    .iter()
                    .all(|&x| s.mul1(s.mul1(x, q), p) == x)
        })
    }
}

/// `X = {(p_λ b p′_{λ·b})/γ : λ ∈ Λ, b ∈ B, λ·b ≠ 0}`, sorted.
pub fn schutz_generators(
    green: &GreenData,
    b: &[Elem],
    lambda: &LambdaData,
    group: &SchutzGroup,
) -> Result<Vec<usize>> {
    let s = green.semigroup();
    if b.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for &x in b {
        s.check_element(x)?;
    }
    if s.closure(b)?.members() != green.sub().members() {
        return Err(Error::NotGenerating("B does not generate T".into()));
    }
    let mut x = BTreeSet::new();
    for l in 0..lambda.len() {
        for &bb in b {
            if let Some(m) = lambda.act(l, bb) {
                let t = s.mul1(s.mul1(lambda.p(l), bb), lambda.p_prime(m));
                let g = group.class_of(t).ok_or_else(|| {
                    Error::InternalInconsistency(format!("{t} is not in the stabilizer"))
                })?;
                x.insert(g);
            }
        }
    }
    let x: Vec<usize> = x.into_iter().collect();
    if group.generated_subgroup(&x).len() != group.order() {
        return Err(Error::NotGenerating("X does not generate the group".into()));
    }
    Ok(x)
}

/// Every `p_λ t p′_{λ·t}` with `λ·t ≠ 0` lies in `Stab(H)`, and every
/// `γ`-class is hit with `λ = λ₁`.
pub fn check_all_transports_stabilize(green: &GreenData, lambda: &LambdaData, group: &SchutzGroup) -> bool {
    let s = green.semigroup();
    let mut hit = vec![false; group.order()];
    for l in 0..lambda.len() {
        for t in green.t1() {
            if let Some(m) = lambda.act(l, t) {
                let u = s.mul1(s.mul1(lambda.p(l), t), lambda.p_prime(m));
                match group.class_of(u) {
                    Some(g) if l == 0 => hit[g] = true,
                    Some(_) => {}
                    None => return false,
                }
            }
        }
    }
    hit.into_iter().all(|x| x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Isomorphism {
    Isomorphic,
    NotIsomorphic,
    /// order above the search cap
    Unchecked,
}

pub const ISOMORPHISM_ORDER_CAP: usize = 24;

/// Brute-force group isomorphism test on Cayley tables.
pub fn groups_isomorphic(g1: &FiniteSemigroup, g2: &FiniteSemigroup) -> Isomorphism {
    let m = g1.order();
    if m != g2.order() {
        return Isomorphism::NotIsomorphic;
    }
    if m > ISOMORPHISM_ORDER_CAP {
        return Isomorphism::Unchecked;
    }
    let (Some(e1), Some(e2)) = (g1.identity(), g2.identity()) else {
        return Isomorphism::NotIsomorphic;
    };
    let elem_order = |g: &FiniteSemigroup, e: Elem, x: Elem| {
        let (mut y, mut k) = (x, 1);
        while y != e {
            y = g.mul(y, x);
            k += 1;
        }
        k
    };
    let orders1: Vec<usize> = (0..m).map(|x| elem_order(g1, e1, x)).collect();
    let orders2: Vec<usize> = (0..m).map(|x| elem_order(g2, e2, x)).collect();
    let mut sorted1 = orders1.clone();
    let mut sorted2 = orders2.clone();
    sorted1.sort_unstable();
    sorted2.sort_unstable();
    if sorted1 != sorted2 {
        return Isomorphism::NotIsomorphic;
    }
    // greedy generating set of g1
    let mut gens: Vec<Elem> = Vec::new();
    let mut span = vec![e1];
    for x in 0..m {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        span = g1.closure(&gens).map(|c| c.members().to_vec()).unwrap_or_default();
        if !span.contains(&e1) {
            span.push(e1);
        }
        if span.len() == m {
            break;
        }
    }

    fn extend(
        g1: &FiniteSemigroup,
        g2: &FiniteSemigroup,
        e1: Elem,
        e2: Elem,
        gens: &[Elem],
        images: &[Elem],
    ) -> bool {
        let m = g1.order();
        let mut map = vec![usize::MAX; m];
        map[e1] = e2;
        let mut queue = VecDeque::from([e1]);
        while let Some(x) = queue.pop_front() {
            for (k, &g) in gens.iter().enumerate() {
                let y = g1.mul(x, g);
                let fy = g2.mul(map[x], images[k]);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    queue.push_back(y);
                } else if map[y] != fy {
                    return false;
                }
            }
        }
        let mut used = vec![false; m];
        for &y in &map {
            if y == usize::MAX || used[y] {
                return false;
            }
            used[y] = true;
        }
        (0..m).all(|x| (0..m).all(|y| map[g1.mul(x, y)] == g2.mul(map[x], map[y])))
    }

    fn search(
        g1: &FiniteSemigroup,
        g2: &FiniteSemigroup,
        e: (Elem, Elem),
        orders: (&[usize], &[usize]),
        gens: &[Elem],
        images: &mut Vec<Elem>,
    ) -> bool {
        if images.len() == gens.len() {
            return extend(g1, g2, e.0, e.1, gens, images);
        }
        let want = orders.0[gens[images.len()]];
        for y in 0..g2.order() {
            if orders.1[y] == want {
                images.push(y);
                if search(g1, g2, e, orders, gens, images) {
                    return true;
                }
                images.pop();
            }
        }
        false
    }

    if search(g1, g2, (e1, e2), (&orders1, &orders2), &gens, &mut Vec::new()) {
        Isomorphism::Isomorphic
    } else {
        Isomorphism::NotIsomorphic
    }
}

/// Outcome of comparing the Schützenberger data of two complement classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransportReport {
    pub l_related: bool,
    pub r_related: bool,
    /// for `L^T`-related classes: equal stabilizers
    pub stabilizers_equal: Option<bool>,
    /// for `L^T`-related classes: equal `γ`-partitions
    pub gamma_equal: Option<bool>,
    /// for `R^T`-related classes
    pub isomorphic: Option<Isomorphism>,
}

impl TransportReport {
    pub fn holds(&self) -> bool {
        self.stabilizers_equal != Some(false)
            && self.gamma_equal != Some(false)
            && self.isomorphic != Some(Isomorphism::NotIsomorphic)
    }
}

fn gamma_partition(g: &SchutzGroup) -> BTreeSet<Vec<Elem>> {
    g.gamma_classes()
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.sort_unstable();
            c
        })
        .collect()
}

pub fn check_l_r_transport(green: &GreenData, i: ClassId, j: ClassId) -> Result<TransportReport> {
    let gi = schutz_group_of_class(green, i)?;
    let gj = schutz_group_of_class(green, j)?;
    let (hi, hj) = (green.rep(i), green.rep(j));
    let l_related = green.l_related(hi, hj);
    let r_related = green.r_related(hi, hj);
    if !l_related && !r_related {
        return Err(Error::NotComparable(i.0, j.0));
    }
    let mut report = TransportReport {
        l_related,
        r_related,
        stabilizers_equal: None,
        gamma_equal: None,
        isomorphic: None,
    };
    if l_related {
        let a: BTreeSet<Elem> = gi.stabilizer().iter().copied().collect();
        let b: BTreeSet<Elem> = gj.stabilizer().iter().copied().collect();
        report.stabilizers_equal = Some(a == b);
        report.gamma_equal = Some(gamma_partition(&gi) == gamma_partition(&gj));
    }
    if r_related {
        report.isomorphic = Some(groups_isomorphic(&gi.to_semigroup(), &gj.to_semigroup()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::green::relative_green;
    use crate::semigroup::SubSemigroup;

    #[test]
    fn z6_class_of_one() {
        let (s, t) = catalog::z6_with_order_two();
        let g = relative_green(&s, &t);
        let group = schutz_group(&g, &[1, 4], 1).unwrap();
        assert_eq!(group.stabilizer(), &[0, 3, 6]);
        assert_eq!(group.order(), 2);
        // 0 and the adjoined 1 act identically
        assert_eq!(group.class_of(0), group.class_of(6));
        assert_ne!(group.class_of(0), group.class_of(3));
        assert!(group.check(&g));
        assert_eq!(
            groups_isomorphic(&group.to_semigroup(), &catalog::cyclic_group(2)),
            Isomorphism::Isomorphic
        );
    }

    #[test]
    fn singleton_class_gives_trivial_group() {
        let (s, t) = catalog::z2_over_trivial();
        let g = relative_green(&s, &t);
        let group = schutz_group_of_class(&g, ClassId(1)).unwrap();
        assert_eq!(group.order(), 1);
        assert!(group.check(&g));
    }

    #[test]
    fn rejects_non_classes() {
        let (s, t) = catalog::z6_with_order_two();
        let g = relative_green(&s, &t);
        assert_eq!(schutz_group(&g, &[1, 2], 1).unwrap_err(), Error::NotAnHClass);
        assert_eq!(schutz_group(&g, &[1, 4], 2).unwrap_err(), Error::NotAnHClass);
        assert_eq!(schutz_group(&g, &[], 2).unwrap_err(), Error::NotAnHClass);
    }

    #[test]
    fn semilattice_class_matches_group_inside_u() {
        let (s, t) = catalog::z4_over_z2();
        let g = relative_green(&s, &t);
        let group = schutz_group(&g, &[4, 5], 4).unwrap();
        let u = catalog::cyclic_group(2);
        let uu = SubSemigroup::new(&u, &[0, 1]).unwrap();
        let inner = schutz_group(&relative_green(&u, &uu), &[0, 1], 0).unwrap();
        assert_eq!(
            groups_isomorphic(&group.to_semigroup(), &inner.to_semigroup()),
            Isomorphism::Isomorphic
        );
    }

    #[test]
    fn lambda_data_singleton_in_z6() {
        let (s, t) = catalog::z6_with_order_two();
        let g = relative_green(&s, &t);
        let l = lambda_data(&g, &[1, 4], 1).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!((l.p(0), l.p_prime(0)), (6, 6));
        assert!(l.check(&g));
    }

    #[test]
    fn z6_generators() {
        let (s, t) = catalog::z6_with_order_two();
        let g = relative_green(&s, &t);
        let group = schutz_group(&g, &[1, 4], 1).unwrap();
        let l = lambda_data(&g, &[1, 4], 1).unwrap();
        let x = schutz_generators(&g, &[3], &l, &group).unwrap();
        assert_eq!(group.generated_subgroup(&x).len(), 2);
        assert!(check_all_transports_stabilize(&g, &l, &group));
    }

    #[test]
    fn classical_case_in_t2() {
        let (s, _) = catalog::full_transformation_monoid_2();
        let all: Vec<Elem> = s.elements().collect();
        let t = SubSemigroup::new(&s, &all).unwrap();
        let g = relative_green(&s, &t);
        for h in g.h_classes() {
            let group = schutz_group(&g, h, h[0]).unwrap();
            let l = lambda_data(&g, h, h[0]).unwrap();
            assert!(group.check(&g) && l.check(&g));
            let x = schutz_generators(&g, &all, &l, &group).unwrap();
            assert_eq!(group.generated_subgroup(&x).len(), group.order());
        }
    }

    #[test]
    fn transport_on_same_class() {
        let (s, t) = catalog::s3_with_transposition();
        let g = relative_green(&s, &t);
        for i in g.complement_ids() {
            let r = check_l_r_transport(&g, i, i).unwrap();
            assert!(r.holds());
            assert!(r.l_related && r.r_related);
        }
    }

    #[test]
    fn isomorphism_distinguishes_z4_from_klein() {
        let z4 = catalog::cyclic_group(4);
        let klein = FiniteSemigroup::from_flat(4, (0..4).flat_map(|x| (0..4).map(move |y| x ^ y)).collect())
            .unwrap();
        assert_eq!(groups_isomorphic(&z4, &klein), Isomorphism::NotIsomorphic);
        assert_eq!(groups_isomorphic(&klein, &klein), Isomorphism::Isomorphic);
        let (s3, _) = catalog::symmetric_group_3();
        assert_eq!(groups_isomorphic(&s3, &catalog::cyclic_group(6)), Isomorphism::NotIsomorphic);
        assert_eq!(groups_isomorphic(&s3, &s3), Isomorphism::Isomorphic);
    }
}
