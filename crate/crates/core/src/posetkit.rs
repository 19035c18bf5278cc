//! Finite posets, Möbius functions, and the tope posets of a sign system.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signvec::{ElementSet, SignVector};
use crate::system::SignSystem;

/// Default bound on the number of elements for chain enumeration.
pub const DEFAULT_CHAIN_LIMIT: usize = 20;

/// A finite poset stored as a transitively closed strict order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePoset {
    labels: Vec<String>,
    /// `less[a][b]` iff `a < b`.
    less: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Builds a poset from any generating set of strict relations `a < b`;
    /// the transitive closure is taken and cycles are rejected.
    pub fn from_relations<S: Into<String>>(
        labels: impl IntoIterator<Item = S>,
        relations: &[(usize, usize)],
    ) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let n = labels.len();
        let mut seen = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if seen.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        let mut less = vec![vec![false; n]; n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::NotInPoset(format!("#{}", a.max(b))));
            }
            less[a][b] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if less[i][k] {
                    for j in 0..n {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| less[i][i]) {
            return Err(Error::CyclicOrder(labels[i].clone()));
        }
        Ok(FinitePoset { labels, less })
    }

    /// Builds a poset from a strict order predicate that is already
    /// transitive and irreflexive.
    pub(crate) fn from_strict_order(labels: Vec<String>, lt: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let less = (0..n).map(|a| (0..n).map(|b| a != b && lt(a, b)).collect()).collect();
        FinitePoset { labels, less }
    }

    /// Builds a poset from labelled relations `[a, b]` meaning `a < b`.
    pub fn from_labeled<S: AsRef<str>>(labels: &[S], relations: &[(S, S)]) -> Result<Self> {
        let index: HashMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_ref(), i)).collect();
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| Error::NotInPoset(l.to_string()));
        let rel = relations
            .iter()
            .map(|(a, b)| Ok((lookup(a.as_ref())?, lookup(b.as_ref())?)))
            .collect::<Result<Vec<_>>>()?;
        FinitePoset::from_relations(labels.iter().map(|l| l.as_ref().to_string()), &rel)
    }

    pub fn antichain(n: usize) -> Self {
        FinitePoset::from_relations((0..n).map(element_name), &[]).expect("antichain")
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        FinitePoset::from_relations((0..n).map(element_name), &rel).expect("chain")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::NotInPoset(label.to_string()))
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.less[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.le(b, a)
    }

    /// Cover relations `a ⋖ b`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.less[a][b] && !(0..n).any(|c| self.less[a][c] && self.less[c][b]) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// A linear extension: elements sorted by the number of elements below.
    pub fn topological_order(&self) -> Vec<usize> {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&b| (0..n).filter(|&a| self.less[a][b]).count());
        order
    }

    /// The lexicographically least linear extension by element index.
    pub fn topological_order_lex(&self) -> Vec<usize> {
        let n = self.len();
        let mut used = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let x = (0..n)
                .find(|&x| !used[x] && (0..n).all(|y| used[y] || !self.less[y][x]))
                .expect("strict orders are acyclic");
            used[x] = true;
            order.push(x);
        }
        order
    }

    /// `μ(x, z)` for every `z`, `None` where `x ≤ z` fails.
    pub fn mobius_row(&self, x: usize) -> Vec<Option<i64>> {
        let n = self.len();
        let mut mu: Vec<Option<i64>> = vec![None; n];
        mu[x] = Some(1);
        for z in self.topological_order() {
            if !self.less[x][z] {
                continue;
            }
            let s: i64 = (0..n)
                .filter(|&w| self.le(x, w) && self.less[w][z])
                .map(|w| mu[w].expect("interval element processed earlier"))
                .sum();
            mu[z] = Some(-s);
        }
        mu
    }

    /// The Möbius function `μ(x, y)`.
    pub fn mobius(&self, x: usize, y: usize) -> Result<i64> {
        if x >= self.len() || y >= self.len() {
            return Err(Error::NotInPoset(format!("#{}", x.max(y))));
        }
        if !self.le(x, y) {
            return Err(Error::Incomparable(self.labels[x].clone(), self.labels[y].clone()));
        }
        Ok(self.mobius_row(x)[y].expect("x <= y"))
    }

    /// The poset with a new least element (index 0) and greatest element
    /// (last index) attached.
    pub fn bounded_extension(&self) -> FinitePoset {
        let n = self.len();
        let mut labels = Vec::with_capacity(n + 2);
        labels.push("0^".to_string());
        labels.extend(self.labels.iter().cloned());
        labels.push("1^".to_string());
        FinitePoset::from_strict_order(labels, |a, b| {
            a == 0 || b == n + 1 || (a >= 1 && a <= n && b >= 1 && b <= n && self.less[a - 1][b - 1])
        })
    }

    /// The Möbius number `μ(0^, 1^)` of the bounded extension.
    pub fn mobius_number(&self) -> i64 {
        let ext = self.bounded_extension();
        ext.mobius(0, ext.len() - 1).expect("bounded extension")
    }

    /// Euler characteristic of the order complex, from an explicit
    /// enumeration of the nonempty chains.
    pub fn chain_euler_characteristic(&self, limit: usize) -> Result<i64> {
        if self.len() > limit {
            return Err(Error::SizeGuard { what: "poset", size: self.len(), limit });
        }
        let order = self.topological_order();
        let mut chi = 0i64;
        // chains listed as increasing sequences in topological order
        let mut stack: Vec<(usize, usize)> = order.iter().map(|&v| (v, 1)).collect();
        while let Some((top, k)) = stack.pop() {
            chi += if k % 2 == 1 { 1 } else { -1 };
            for &next in &order {
                if self.less[top][next] {
                    stack.push((next, k + 1));
                }
            }
        }
        Ok(chi)
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        let n = self.len();
        (0..n).filter(|&b| !(0..n).any(|a| self.less[a][b])).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        let n = self.len();
        (0..n).filter(|&a| !(0..n).any(|b| self.less[a][b])).collect()
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            relations: self
                .covers()
                .into_iter()
                .map(|(a, b)| [self.labels[a].clone(), self.labels[b].clone()])
                .collect(),
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Self> {
        let rel: Vec<(String, String)> = file.relations.iter().map(|[a, b]| (a.clone(), b.clone())).collect();
        FinitePoset::from_labeled(&file.elements, &rel)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let file: PosetFile = serde_json::from_str(s)?;
        FinitePoset::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data")
    }
}

pub(crate) fn element_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("p{i}")
    }
}

/// JSON form `{"elements": [...], "relations": [[a, b], ...]}` with `a < b`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub relations: Vec<[String; 2]>,
}

/// The topes of a system ordered by `P ⪯ Q` iff `S(R,P) ⊆ S(R,Q)` for a base
/// pattern `R`.
#[derive(Clone, Debug)]
pub struct TopePoset {
    pub poset: FinitePoset,
    pub base_pattern: SignVector,
    pub topes: Vec<SignVector>,
    pub separators: Vec<ElementSet>,
}

fn check_pattern(sys: &SignSystem, r: &SignVector) -> Result<()> {
    if r.len() != sys.num_elements() {
        return Err(Error::GroundSetMismatch { left: sys.num_elements(), right: r.len() });
    }
    if !r.is_tope() {
        return Err(Error::NotFullSupport(r.to_string()));
    }
    Ok(())
}

/// The tope poset with base pattern `r`, which must have full support but
/// need not be a tope.
pub fn tope_order(sys: &SignSystem, r: &SignVector) -> Result<TopePoset> {
    check_pattern(sys, r)?;
    let topes = sys.topes().to_vec();
    let separators: Vec<ElementSet> = topes.iter().map(|t| r.separator_unchecked(t)).collect();
    let labels = topes.iter().map(|t| t.to_string()).collect();
    let poset = FinitePoset::from_strict_order(labels, |a, b| {
        separators[a] != separators[b] && separators[a].is_subset(separators[b])
    });
    Ok(TopePoset { poset, base_pattern: *r, topes, separators })
}

impl TopePoset {
    pub fn mobius_number(&self) -> i64 {
        self.poset.mobius_number()
    }

    pub fn minimal_topes(&self) -> Vec<SignVector> {
        self.poset.minimal_elements().into_iter().map(|i| self.topes[i]).collect()
    }

    pub fn maximal_topes(&self) -> Vec<SignVector> {
        self.poset.maximal_elements().into_iter().map(|i| self.topes[i]).collect()
    }
}

/// An element of a [`PointedTopePoset`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pointed {
    Bottom,
    Tope(SignVector),
}

/// `{T : T_e = -R_e} ∪ {0^}` with the order induced from the tope poset of
/// `R` and `0^` as artificial least element.
#[derive(Clone, Debug)]
pub struct PointedTopePoset {
    /// Index 0 is `0^`; index `i + 1` is `members[i]`.
    pub poset: FinitePoset,
    pub members: Vec<SignVector>,
    pub base_pattern: SignVector,
    pub element: usize,
    /// `μ(0^, members[i])`.
    mobius: Vec<i64>,
}

pub fn pointed_tope_poset(sys: &SignSystem, r: &SignVector, e: usize) -> Result<PointedTopePoset> {
    check_pattern(sys, r)?;
    if e >= sys.num_elements() {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    let opposite = r.get(e).neg();
    let members: Vec<SignVector> = sys.topes().iter().copied().filter(|t| t.get(e) == opposite).collect();
    let seps: Vec<ElementSet> = members.iter().map(|t| r.separator_unchecked(t)).collect();
    let mut labels = vec!["0^".to_string()];
    labels.extend(members.iter().map(|t| t.to_string()));
    let poset = FinitePoset::from_strict_order(labels, |a, b| {
        b != 0 && (a == 0 || (seps[a - 1] != seps[b - 1] && seps[a - 1].is_subset(seps[b - 1])))
    });
    let row = poset.mobius_row(0);
    let mobius = row[1..].iter().map(|m| m.expect("0^ is below every member")).collect();
    Ok(PointedTopePoset { poset, members, base_pattern: *r, element: e, mobius })
}

impl PointedTopePoset {
    pub fn position(&self, q: &SignVector) -> Option<usize> {
        self.members.iter().position(|t| t == q)
    }

    /// `μ(0^, q)`; `μ(0^, 0^) = 1`.
    pub fn interval_mobius(&self, q: &Pointed) -> Result<i64> {
        match q {
            Pointed::Bottom => Ok(1),
            Pointed::Tope(t) => self
                .position(t)
                .map(|i| self.mobius[i])
                .ok_or_else(|| Error::NotInPoset(t.to_string())),
        }
    }

    /// `μ(0^, q)` for a member tope.
    pub fn mobius_at(&self, q: &SignVector) -> Result<i64> {
        self.interval_mobius(&Pointed::Tope(*q))
    }

    /// `μ(0^, T)` for every member, in `members` order.
    pub fn mobius_values(&self) -> &[i64] {
        &self.mobius
    }

    /// Does `a ≤ b` hold among members?
    pub fn member_le(&self, a: usize, b: usize) -> bool {
        self.poset.le(a + 1, b + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_om, full_cube};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn diamond() -> FinitePoset {
        FinitePoset::from_labeled(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")]).unwrap()
    }

    #[test]
    fn mobius_examples() {
        let d = diamond();
        for x in 0..4 {
            assert_eq!(d.mobius(x, x).unwrap(), 1);
        }
        assert_eq!(FinitePoset::chain(2).mobius(0, 1).unwrap(), -1);
        assert_eq!(d.mobius(0, 3).unwrap(), 1);
        assert!(matches!(d.mobius(1, 2), Err(Error::Incomparable(..))));
        assert!(d.mobius(3, 0).is_err());
    }

    #[test]
    fn mobius_number_examples() {
        assert_eq!(FinitePoset::antichain(1).mobius_number(), 0);
        assert_eq!(FinitePoset::antichain(0).mobius_number(), -1);
        assert_eq!(FinitePoset::antichain(2).mobius_number(), 1);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(FinitePoset::antichain(1).chain_euler_characteristic(20).unwrap(), 1);
        assert_eq!(FinitePoset::antichain(2).chain_euler_characteristic(20).unwrap(), 2);
        assert_eq!(FinitePoset::chain(2).chain_euler_characteristic(20).unwrap(), 1);
        assert!(matches!(
            FinitePoset::antichain(21).chain_euler_characteristic(DEFAULT_CHAIN_LIMIT),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn cycles_rejected_and_closure_taken() {
        let err = FinitePoset::from_labeled(&["a", "b"], &[("a", "b"), ("b", "a")]);
        assert!(matches!(err, Err(Error::CyclicOrder(_))));
        let p = FinitePoset::from_labeled(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert!(p.lt(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn json_round_trip() {
        let p = diamond();
        let q = FinitePoset::from_json(&p.to_json()).unwrap();
        assert_eq!(p, q);
        assert!(FinitePoset::from_json(r#"{"elements":["a"],"relations":[["a","z"]]}"#).is_err());
    }

    #[test]
    fn philip_hall_on_small_posets() {
        for p in crate::constructions::all_posets(4) {
            let chi = p.chain_euler_characteristic(DEFAULT_CHAIN_LIMIT).unwrap();
            assert_eq!(p.mobius_number(), chi - 1);
        }
    }

    #[test]
    fn tope_order_examples() {
        let c3 = cycle_om(3).unwrap();
        let tp = tope_order(&c3, &sv("++-")).unwrap();
        assert_eq!(tp.minimal_topes(), vec![sv("++-")]);
        let tp = tope_order(&c3, &sv("+++")).unwrap();
        assert_eq!(tp.minimal_topes().len(), 3);
        let one = full_cube(1);
        let tp = tope_order(&one, &sv("+")).unwrap();
        assert!(tp.poset.lt(0, 1));
        assert_eq!(tp.topes, vec![sv("+"), sv("-")]);
        assert!(matches!(tope_order(&c3, &sv("+0-")), Err(Error::NotFullSupport(_))));
    }

    #[test]
    fn pointed_poset_examples() {
        let c3 = cycle_om(3).unwrap();
        let p = pointed_tope_poset(&c3, &sv("+-+"), 2).unwrap();
        assert_eq!(p.members, vec![sv("++-"), sv("+--"), sv("-+-")]);
        assert_eq!(p.interval_mobius(&Pointed::Bottom).unwrap(), 1);
        // the maximal member: the defining sum over [0^, Q] vanishes
        let top = (0..3).find(|&i| (0..3).all(|j| p.member_le(j, i))).unwrap();
        let sum: i64 = 1 + (0..3).filter(|&j| p.member_le(j, top)).map(|j| p.mobius_values()[j]).sum::<i64>();
        assert_eq!(sum, 0);

        let one = full_cube(1);
        let p = pointed_tope_poset(&one, &sv("+"), 0).unwrap();
        assert_eq!(p.members, vec![sv("-")]);
        assert_eq!(p.mobius_at(&sv("-")).unwrap(), -1);
        assert!(p.mobius_at(&sv("+")).is_err());

        let plus_only = SignSystem::parse(crate::signvec::GroundSet::numbered(1), ["+"]).unwrap();
        let p = pointed_tope_poset(&plus_only, &sv("+"), 0).unwrap();
        assert!(p.members.is_empty());
        assert_eq!(p.poset.len(), 1);
    }

    #[test]
    fn defining_recursion_holds_everywhere() {
        let c4 = cycle_om(4).unwrap();
        for r in c4.topes() {
            for e in 0..4 {
                let p = pointed_tope_poset(&c4, r, e).unwrap();
                for q in 0..p.members.len() {
                    let s: i64 = 1 + (0..p.members.len())
                        .filter(|&j| p.member_le(j, q))
                        .map(|j| p.mobius_values()[j])
                        .sum::<i64>();
                    assert_eq!(s, 0);
                }
            }
        }
    }
}
