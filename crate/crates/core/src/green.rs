//! Relative Green's relations `R^T`, `L^T`, `H^T`, the Green index, and the
//! connector maps `ρ, λ, σ, τ` that transport products with class
//! representatives back to representative form.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::semigroup::{Elem, FiniteSemigroup, SubSemigroup};

/// Index into `I¹ = I ∪ {1}`. `ClassId::ONE` is the extra index whose
/// representative is the adjoined identity; `ClassId(k)` for `k ≥ 1` is the
/// `k`-th complement `H^T`-class ordered by smallest member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassId(pub usize);

impl ClassId {
    pub const ONE: ClassId = ClassId(0);

    pub fn is_one(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "i{}", self.0)
        }
    }
}

/// Partition of `S` into `T`-relative classes.
#[derive(Debug, Clone)]
pub struct GreenData {
    semigroup: FiniteSemigroup,
    sub: SubSemigroup,
    r_class: Vec<usize>,
    l_class: Vec<usize>,
    h_class: Vec<usize>,
    h_classes: Vec<Vec<Elem>>,
    r_classes: Vec<Vec<Elem>>,
    l_classes: Vec<Vec<Elem>>,
    // H-class ids lying in the complement, by smallest member
    complement: Vec<usize>,
    complement_of: Vec<ClassId>,
}

// Groups elements by a key, numbering groups by their smallest member.
fn group_by_key<K: std::hash::Hash + Eq>(keys: Vec<K>) -> (Vec<usize>, Vec<Vec<Elem>>) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let mut class = Vec::with_capacity(keys.len());
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for (u, key) in keys.into_iter().enumerate() {
        let next = ids.len();
        let id = *ids.entry(key).or_insert(next);
        if id == classes.len() {
            classes.push(Vec::new());
        }
        classes[id].push(u);
        class.push(id);
    }
    (class, classes)
}

/// Computes `R^T`, `L^T` and `H^T` by comparing the principal sets `uT¹`
/// and `T¹u`.
pub fn relative_green(s: &FiniteSemigroup, t: &SubSemigroup) -> GreenData {
    let n = s.order();
    let principal = |left: bool| -> Vec<FixedBitSet> {
        s.elements()
            .map(|u| {
                let mut set = FixedBitSet::with_capacity(n);
                set.insert(u);
                for &x in t.members() {
                    set.insert(if left { s.mul(x, u) } else { s.mul(u, x) });
                }
                set
            })
            .collect()
    };
    let (r_class, r_classes) = group_by_key(principal(false));
    let (l_class, l_classes) = group_by_key(principal(true));
    let (h_class, h_classes) = group_by_key(
        s.elements()
            .map(|u| (r_class[u], l_class[u]))
            .collect::<Vec<_>>(),
    );
    let complement: Vec<usize> = (0..h_classes.len())
        .filter(|&h| !t.contains(h_classes[h][0]))
        .collect();
    let mut complement_of = vec![ClassId::ONE; n];
    for (k, &h) in complement.iter().enumerate() {
        for &u in &h_classes[h] {
            complement_of[u] = ClassId(k + 1);
        }
    }
    GreenData {
        semigroup: s.clone(),
        sub: t.clone(),
        r_class,
        l_class,
        h_class,
        h_classes,
        r_classes,
        l_classes,
        complement,
        complement_of,
    }
}

/// Size of the complement `S ∖ T`.
pub fn rees_index(s: &FiniteSemigroup, t: &SubSemigroup) -> usize {
    s.order() - t.len()
}

impl GreenData {
    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.semigroup
    }

    pub fn sub(&self) -> &SubSemigroup {
        &self.sub
    }

    /// One more than the number of `H^T`-classes in the complement.
    pub fn green_index(&self) -> usize {
        self.complement.len() + 1
    }

    pub fn complement_count(&self) -> usize {
        self.complement.len()
    }

    /// `I¹` in order: `ONE` first, then the complement classes.
    pub fn class_ids(&self) -> impl Iterator<Item = ClassId> + Clone {
        (0..=self.complement.len()).map(ClassId)
    }

    /// The complement classes `I`.
    pub fn complement_ids(&self) -> impl Iterator<Item = ClassId> + Clone {
        (1..=self.complement.len()).map(ClassId)
    }

    pub fn width(&self) -> usize {
        self.complement.len() + 1
    }

    /// Elements of the complement class `i`; `ONE` yields `{1}`.
    pub fn class_members(&self, i: ClassId) -> Vec<Elem> {
        if i.is_one() {
            vec![self.semigroup.one()]
        } else {
            self.h_classes[self.complement[i.0 - 1]].clone()
        }
    }

    /// Representative `h_i`; the smallest member, or the adjoined identity for `ONE`.
    pub fn rep(&self, i: ClassId) -> Elem {
        if i.is_one() {
            self.semigroup.one()
        } else {
            self.h_classes[self.complement[i.0 - 1]][0]
        }
    }

    /// Complement class containing `u`, or `ONE` if `u ∈ T¹`.
    pub fn class_of(&self, u: Elem) -> ClassId {
        if u == self.semigroup.one() {
            ClassId::ONE
        } else {
            self.complement_of[u]
        }
    }

    pub fn in_t(&self, u: Elem) -> bool {
        self.sub.contains(u)
    }

    pub fn in_t1(&self, u: Elem) -> bool {
        u == self.semigroup.one() || self.sub.contains(u)
    }

    /// Relations on `S¹`; the adjoined identity is related only to itself.
    pub fn r_related(&self, u: Elem, v: Elem) -> bool {
        self.related(&self.r_class, u, v)
    }

    pub fn l_related(&self, u: Elem, v: Elem) -> bool {
        self.related(&self.l_class, u, v)
    }

    pub fn h_related(&self, u: Elem, v: Elem) -> bool {
        self.related(&self.h_class, u, v)
    }

    fn related(&self, classes: &[usize], u: Elem, v: Elem) -> bool {
        let one = self.semigroup.one();
        if u == one || v == one {
            u == v
        } else {
            classes[u] == classes[v]
        }
    }

    pub fn r_class_id(&self, u: Elem) -> usize {
        self.r_class[u]
    }

    pub fn l_class_id(&self, u: Elem) -> usize {
        self.l_class[u]
    }

    pub fn h_class_id(&self, u: Elem) -> usize {
        self.h_class[u]
    }

    /// All `H^T`-classes of `S`, inside and outside `T`.
    pub fn h_classes(&self) -> &[Vec<Elem>] {
        &self.h_classes
    }

    pub fn r_classes(&self) -> &[Vec<Elem>] {
        &self.r_classes
    }

    pub fn l_classes(&self) -> &[Vec<Elem>] {
        &self.l_classes
    }

    pub fn h_class_of(&self, u: Elem) -> &[Elem] {
        &self.h_classes[self.h_class[u]]
    }

    /// `T¹` with the adjoined identity first.
    pub fn t1(&self) -> Vec<Elem> {
        self.sub.with_one(&self.semigroup)
    }

    /// `T¹` in witness order: members of `T` ascending, adjoined identity last.
    pub fn t1_witness_order(&self) -> impl Iterator<Item = Elem> + '_ {
        self.sub
            .members()
            .iter()
            .copied()
            .chain(std::iter::once(self.semigroup.one()))
    }

    /// Egg-box diagram in Graphviz DOT: rows are `R^T`-classes, columns
    /// `L^T`-classes, cells `H^T`-classes; complement cells are shaded.
    pub fn eggbox_dot(&self) -> String {
        let s = &self.semigroup;
        let mut out = String::from("digraph eggbox {\n  node [shape=plaintext];\n");
        out.push_str("  eggbox [label=<<table border=\"0\" cellborder=\"1\" cellspacing=\"0\">\n");
        for row in &self.r_classes {
            out.push_str("    <tr>");
            for col in 0..self.l_classes.len() {
                let cell: Vec<Elem> = row
                    .iter()
                    .copied()
                    .filter(|&u| self.l_class[u] == col)
                    .collect();
                if cell.is_empty() {
                    // skip columns that do not meet this row
                    continue;
                }
                let names: Vec<String> = cell.iter().map(|&u| s.name(u)).collect();
                let colour = if self.sub.contains(cell[0]) {
                    "white"
                } else {
                    "lightgrey"
                };
                out.push_str(&format!(
                    "<td bgcolor=\"{colour}\">{}</td>",
                    escape_html(&names.join(" "))
                ));
            }
            out.push_str("</tr>\n");
        }
        out.push_str("  </table>>];\n}\n");
        out
    }
}

fn escape_html(text: &str) -> String {
    text.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// The maps `ρ, λ, σ, τ` materialized as dense tables over `S¹ × I¹`.
#[derive(Debug, Clone)]
pub struct ConnectorTables {
    green: GreenData,
    rho: Vec<ClassId>,
    sigma: Vec<Elem>,
    lambda: Vec<ClassId>,
    tau: Vec<Elem>,
}

/// Builds the connector tables. Witnesses are the smallest suitable element
/// of `T` (the adjoined identity counts as largest), except that `s = 1`
/// always gets `σ(1, i) = τ(i, 1) = 1`.
pub fn connectors(green: &GreenData) -> Result<ConnectorTables> {
    let s = &green.semigroup;
    let n1 = s.order() + 1;
    let w = green.width();
    let one = s.one();
    let mut rho = vec![ClassId::ONE; n1 * w];
    let mut sigma = vec![one; n1 * w];
    let mut lambda = vec![ClassId::ONE; w * n1];
    let mut tau = vec![one; w * n1];
    for x in 0..n1 {
        for i in green.class_ids() {
            let h = green.rep(i);

            let left = s.mul1(x, h);
            let j = green.class_of(left);
            rho[x * w + i.0] = j;
            sigma[x * w + i.0] = if x == one {
                one
            } else if j.is_one() {
                left
            } else {
                let hj = green.rep(j);
                green
                    .t1_witness_order()
                    .find(|&t| s.mul1(hj, t) == left)
                    .ok_or_else(|| {
                        Error::InternalInconsistency(format!(
                            "no sigma witness for s={x}, i={i}"
                        ))
                    })?
            };

            let right = s.mul1(h, x);
            let j = green.class_of(right);
            lambda[i.0 * n1 + x] = j;
            tau[i.0 * n1 + x] = if x == one {
                one
            } else if j.is_one() {
                right
            } else {
                let hj = green.rep(j);
                green
                    .t1_witness_order()
                    .find(|&t| s.mul1(t, hj) == right)
                    .ok_or_else(|| {
                        Error::InternalInconsistency(format!("no tau witness for i={i}, s={x}"))
                    })?
            };
        }
    }
    Ok(ConnectorTables {
        green: green.clone(),
        rho,
        sigma,
        lambda,
        tau,
    })
}

/// A failed instance of one of the defining identities of the connectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectorViolation {
    pub s: Elem,
    pub i: ClassId,
    pub identity: &'static str,
}

impl ConnectorTables {
    pub fn green(&self) -> &GreenData {
        &self.green
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.green.semigroup
    }

    #[inline]
    pub fn rho(&self, s: Elem, i: ClassId) -> ClassId {
        self.rho[s * self.green.width() + i.0]
    }

    #[inline]
    pub fn sigma(&self, s: Elem, i: ClassId) -> Elem {
        self.sigma[s * self.green.width() + i.0]
    }

    #[inline]
    pub fn lambda(&self, i: ClassId, s: Elem) -> ClassId {
        self.lambda[i.0 * (self.green.semigroup.order() + 1) + s]
    }

    #[inline]
    pub fn tau(&self, i: ClassId, s: Elem) -> Elem {
        self.tau[i.0 * (self.green.semigroup.order() + 1) + s]
    }

    /// Re-evaluates every defining identity:
    /// `s·h_i = h_ρ·σ`, `h_i·s = τ·h_λ`, and that `ρ`/`λ` are `1` exactly
    /// when the product lies in `T¹`.
    pub fn check(&self) -> std::result::Result<(), ConnectorViolation> {
        let g = &self.green;
        let s = &g.semigroup;
        for x in 0..=s.order() {
            for i in g.class_ids() {
                let h = g.rep(i);
                let fail = |identity| ConnectorViolation { s: x, i, identity };
                let (rho, sigma) = (self.rho(x, i), self.sigma(x, i));
                if !g.in_t1(sigma) {
                    return Err(fail("sigma in T1"));
                }
                if s.mul1(x, h) != s.mul1(g.rep(rho), sigma) {
                    return Err(fail("s h_i = h_rho sigma"));
                }
                if rho.is_one() != g.in_t1(s.mul1(x, h)) {
                    return Err(fail("rho = 1 iff s h_i in T1"));
                }
                if !rho.is_one() && !g.h_related(s.mul1(x, h), g.rep(rho)) {
                    return Err(fail("s h_i in H_rho"));
                }
                let (lambda, tau) = (self.lambda(i, x), self.tau(i, x));
                if !g.in_t1(tau) {
                    return Err(fail("tau in T1"));
                }
                if s.mul1(h, x) != s.mul1(tau, g.rep(lambda)) {
                    return Err(fail("h_i s = tau h_lambda"));
                }
                if lambda.is_one() != g.in_t1(s.mul1(h, x)) {
                    return Err(fail("lambda = 1 iff h_i s in T1"));
                }
                if !lambda.is_one() && !g.h_related(s.mul1(h, x), g.rep(lambda)) {
                    return Err(fail("h_i s in H_lambda"));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    // Brute-force oracle: u R v iff uT¹ = vT¹ as sorted vectors.
    fn principal_right(s: &FiniteSemigroup, t: &SubSemigroup, u: Elem) -> Vec<Elem> {
        let mut v: Vec<Elem> = std::iter::once(u)
            .chain(t.members().iter().map(|&x| s.mul(u, x)))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    fn principal_left(s: &FiniteSemigroup, t: &SubSemigroup, u: Elem) -> Vec<Elem> {
        let mut v: Vec<Elem> = std::iter::once(u)
            .chain(t.members().iter().map(|&x| s.mul(x, u)))
            .collect();
        v.sort();
        v.dedup();
        v
    }

    #[test]
    fn z6_mod_order_two() {
        let (s, t) = catalog::z6_with_order_two();
        let g = relative_green(&s, &t);
        assert_eq!(g.green_index(), 3);
        assert_eq!(g.class_members(ClassId(1)), vec![1, 4]);
        assert_eq!(g.class_members(ClassId(2)), vec![2, 5]);
        assert_eq!(g.rep(ClassId(2)), 2);
        assert_eq!(rees_index(&s, &t), 4);
    }

    #[test]
    fn whole_semigroup_has_index_one() {
        let s = catalog::cyclic_group(5);
        let t = s.closure(&[1]).unwrap();
        let g = relative_green(&s, &t);
        assert_eq!(g.green_index(), 1);
        assert_eq!(rees_index(&s, &t), 0);
    }

    #[test]
    fn strong_semilattice_has_index_two() {
        let (s, t) = catalog::z2_over_trivial();
        let g = relative_green(&s, &t);
        assert_eq!(g.green_index(), 2);
        assert_eq!(rees_index(&s, &t), 1);
    }

    #[test]
    fn classes_match_principal_set_oracle() {
        for inst in catalog::fixed_instances() {
            let (s, t) = (&inst.semigroup, &inst.sub);
            let g = relative_green(s, t);
            for u in s.elements() {
                for v in s.elements() {
                    let r = principal_right(s, t, u) == principal_right(s, t, v);
                    let l = principal_left(s, t, u) == principal_left(s, t, v);
                    assert_eq!(g.r_related(u, v), r);
                    assert_eq!(g.l_related(u, v), l);
                    assert_eq!(g.h_related(u, v), r && l);
                }
            }
        }
    }

    #[test]
    fn identity_column_of_connectors() {
        for inst in catalog::fixed_instances() {
            let g = relative_green(&inst.semigroup, &inst.sub);
            let c = connectors(&g).unwrap();
            let one = inst.semigroup.one();
            for i in g.class_ids() {
                assert_eq!(c.rho(one, i), i);
                assert_eq!(c.sigma(one, i), one);
                assert_eq!(c.lambda(i, one), i);
                assert_eq!(c.tau(i, one), one);
            }
            c.check().unwrap();
        }
    }

    #[test]
    fn z6_connector_for_one_times_rep() {
        let (s, t) = catalog::z6_with_order_two();
        let g = relative_green(&s, &t);
        let c = connectors(&g).unwrap();
        // 1 + h_{i1} = 1 + 1 = 2, which lies in {2,5}
        assert_eq!(c.rho(1, ClassId(1)), ClassId(2));
        let sigma = c.sigma(1, ClassId(1));
        assert_eq!(s.mul1(g.rep(ClassId(2)), sigma), 2);
        assert!(g.in_t1(sigma));
    }

    #[test]
    fn eggbox_marks_complement() {
        let (s, t) = catalog::z6_with_order_two();
        let dot = relative_green(&s, &t).eggbox_dot();
        assert!(dot.starts_with("digraph eggbox"));
        assert!(dot.contains("lightgrey\">1 4<"));
        assert!(dot.contains("white\">0 3<"));
    }
}
