//! Executable checks of the Möbius-function and gate identities behind the
//! factorization. Each check enumerates every eligible instance and returns
//! a [`LemmaReport`] listing the instances that fail.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::posetkit::{pointed_tope_poset, tope_order};
use crate::signvec::{ElementSet, Sign, SignVector};
use crate::system::SignSystem;
use crate::varchenko::{contraction_closed_form, face_assignment, mobius_table, ElementOrder};

const MAX_VIOLATIONS: usize = 20;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub name: &'static str,
    pub checked: usize,
    pub failed: usize,
    /// The first few failing instances.
    pub violations: Vec<String>,
}

impl LemmaReport {
    pub fn new(name: &'static str) -> Self {
        LemmaReport { name, ..Default::default() }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.violations.len() < MAX_VIOLATIONS {
                self.violations.push(describe());
            }
        }
    }

    pub fn holds(&self) -> bool {
        self.failed == 0
    }

    pub fn merge(&mut self, other: LemmaReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = MAX_VIOLATIONS.saturating_sub(self.violations.len());
        self.violations.extend(other.violations.into_iter().take(room));
    }
}

fn pairs(n: usize, topes: usize, limit: Option<usize>) -> Vec<(usize, usize)> {
    let all: Vec<(usize, usize)> = (0..topes).flat_map(|r| (0..n).map(move |e| (r, e))).collect();
    match limit {
        Some(k) if k > 0 && all.len() > k => {
            let stride = all.len().div_ceil(k);
            all.into_iter().step_by(stride).collect()
        }
        _ => all,
    }
}

/// For topes `R`, elements `e` and `P ∈ T_{R,e}`, the sums of `μ(0^,Q)` over
/// `Q ∈ T_{R,e}` grouped by `S = S(P,Q) ∩ S(Q,R)` are `-1` for `S = ∅` and `0`
/// otherwise. `limit` bounds the number of `(R, e)` pairs, spread evenly.
pub fn crucial_sums(sys: &SignSystem, limit: Option<usize>) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("crucial sums");
    let topes = sys.topes();
    let g = sys.ground();
    for (ri, e) in pairs(sys.num_elements(), topes.len(), limit) {
        let r = &topes[ri];
        let p = pointed_tope_poset(sys, r, e)?;
        for pt in &p.members {
            let mut sums: BTreeMap<ElementSet, i64> = BTreeMap::new();
            sums.insert(ElementSet::empty(), 0);
            for (q, mu) in p.members.iter().zip(p.mobius_values()) {
                let s = pt.separator_unchecked(q).intersection(q.separator_unchecked(r));
                *sums.entry(s).or_default() += mu;
            }
            for (s, total) in sums {
                let expected = if s.is_empty() { -1 } else { 0 };
                report.record(total == expected, || {
                    format!("R={r} e={} P={pt} S={}: sum {total}, expected {expected}", g.name(e), g.format_set(s))
                });
            }
        }
    }
    Ok(report)
}

/// With `Y` the maximal nonzero covector below `R` vanishing at `e`, every
/// `P ∈ T_{R,e}` outside `star(Y)` has `μ(0^,P) = 0`.
pub fn proper_face_mobius(sys: &SignSystem) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("proper face Möbius");
    let g = sys.ground();
    for e in 0..sys.num_elements() {
        let table = mobius_table(sys, e)?;
        for (ri, r) in sys.topes().iter().enumerate() {
            let Some(y) = sys.max_face_covector(r, e)? else { continue };
            for (qi, q) in sys.topes().iter().enumerate() {
                if q.get(e) == r.get(e) || y.le(q) {
                    continue;
                }
                let mu = table.values[ri][qi];
                report.record(mu == 0, || format!("R={r} e={} Y={y} P={q}: mu {mu}", g.name(e)));
            }
        }
    }
    Ok(report)
}

/// On an OM, `P ∈ T_{R,e}` such that `e` defines no proper face of `P` has
/// `μ(0^,P) = (-1)^rank` when `P = -R` and `0` otherwise.
pub fn no_proper_face_mobius(sys: &SignSystem) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("no proper face Möbius");
    if !sys.contains_zero() {
        return Err(Error::MissingZero);
    }
    let rank = sys.rank()?;
    let sign = if rank % 2 == 0 { 1 } else { -1 };
    let g = sys.ground();
    for e in 0..sys.num_elements() {
        let table = mobius_table(sys, e)?;
        for (ri, r) in sys.topes().iter().enumerate() {
            for (qi, q) in sys.topes().iter().enumerate() {
                if q.get(e) == r.get(e) || sys.max_covector_vanishing_at(q, e, false).is_some() {
                    continue;
                }
                let expected = if *q == -*r { sign } else { 0 };
                let mu = table.values[ri][qi];
                report.record(mu == expected, || {
                    format!("R={r} e={} P={q}: mu {mu}, expected {expected}", g.name(e))
                });
            }
        }
    }
    Ok(report)
}

/// For `Q, R ∈ T^{Y,e}` with `e` the largest element of `z(Y)` and
/// `Q_e = -R_e`, `μ(0^,Q)_{R,e}` equals `(-1)^{rank of the face of Y}` when
/// `Q` and `R` are opposite on `z(Y)` and `0` otherwise. With `all_zero_elements`
/// every `e ∈ z(Y)` is used instead of only the largest.
pub fn contraction(sys: &SignSystem, order: &ElementOrder, all_zero_elements: bool) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("contraction");
    let topes = sys.topes();
    let g = sys.ground();
    for e in 0..sys.num_elements() {
        let table = mobius_table(sys, e)?;
        let faces = face_assignment(sys, e);
        for (ri, r) in topes.iter().enumerate() {
            let Some(y) = faces[ri] else { continue };
            if !all_zero_elements && order.max_of(y.zero_set()) != Some(e) {
                continue;
            }
            for (qi, q) in topes.iter().enumerate() {
                if faces[qi] != Some(y) || q.get(e) == r.get(e) {
                    continue;
                }
                let expected = contraction_closed_form(sys, &y, q, r)?;
                let mu = table.values[ri][qi];
                report.record(mu == expected, || {
                    format!("Y={y} e={} Q={q} R={r}: mu {mu}, expected {expected}", g.name(e))
                });
            }
        }
    }
    Ok(report)
}

/// For each tope `R'` of `ambient`, the tope poset of the fiber
/// `T(plus, minus)` with base pattern `R'` restricted to the remaining
/// elements has Möbius number `0`.
pub fn fiber_contractible(ambient: &SignSystem, plus: ElementSet, minus: ElementSet) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("fiber contractible");
    let fiber = ambient.topal_fiber(plus, minus)?;
    if fiber.topes().is_empty() {
        return Ok(report);
    }
    let keep = ambient.ground().all().difference(plus.union(minus));
    let patterns: HashSet<SignVector> = ambient.topes().iter().map(|t| t.restrict_unchecked(keep)).collect();
    let mut patterns: Vec<SignVector> = patterns.into_iter().collect();
    patterns.sort();
    let g = ambient.ground();
    for r in patterns {
        let mu = tope_order(&fiber, &r)?.mobius_number();
        report.record(mu == 0, || {
            format!("fiber +{} -{} base {r}: mobius number {mu}", g.format_set(plus), g.format_set(minus))
        });
    }
    Ok(report)
}

/// [`fiber_contractible`] over every fiber with `|plus ∪ minus| <= max_fixed`.
pub fn all_fibers_contractible(ambient: &SignSystem, max_fixed: usize) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("fiber contractible");
    let n = ambient.num_elements();
    for fixed in 0u128..(1u128 << n) {
        let fixed = ElementSet::from_bits(fixed);
        if fixed.len() > max_fixed {
            continue;
        }
        for plus_bits in 0u128..(1u128 << fixed.len()) {
            let elems: Vec<usize> = fixed.iter().collect();
            let plus: ElementSet = elems.iter().enumerate().filter(|(i, _)| plus_bits >> i & 1 == 1).map(|(_, e)| *e).collect();
            report.merge(fiber_contractible(ambient, plus, fixed.difference(plus))?);
        }
    }
    Ok(report)
}

/// For every covector `X` and tope `P`, exactly one `Q ∈ star(X)` satisfies
/// `S(P,O) = S(P,Q) ∪ S(Q,O)` and `S(P,Q) ∩ S(Q,O) = ∅` for all `O ∈ star(X)`,
/// and it is `X ∘ P`.
pub fn gate_uniqueness(sys: &SignSystem) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("gate uniqueness");
    for x in sys.covectors() {
        let star = sys.star(x)?;
        for p in sys.topes() {
            let gates: Vec<&SignVector> = star
                .iter()
                .filter(|q| {
                    let pq = p.separator_unchecked(q);
                    star.iter().all(|o| {
                        let qo = q.separator_unchecked(o);
                        p.separator_unchecked(o) == pq.union(qo) && pq.is_disjoint(qo)
                    })
                })
                .collect();
            let expected = x.compose_unchecked(p);
            report.record(gates.len() == 1 && *gates[0] == expected, || {
                format!("X={x} P={p}: gates {gates:?}, expected {expected}")
            });
        }
    }
    Ok(report)
}

/// `P ↦ Y ∘ (-P)` is a fixed-point-free involution on every nonempty `T^{Y,e}`.
pub fn pairing(sys: &SignSystem) -> Result<LemmaReport> {
    let mut report = LemmaReport::new("pairing");
    let g = sys.ground();
    for e in 0..sys.num_elements() {
        let faces = face_assignment(sys, e);
        let mut groups: BTreeMap<SignVector, Vec<SignVector>> = BTreeMap::new();
        for (t, y) in sys.topes().iter().zip(faces) {
            if let Some(y) = y {
                groups.entry(y).or_default().push(*t);
            }
        }
        for (y, members) in groups {
            for p in &members {
                let q = y.compose_unchecked(&-*p);
                let back = y.compose_unchecked(&-q);
                report.record(q != *p && back == *p && members.contains(&q), || {
                    format!("Y={y} e={} P={p}: partner {q}", g.name(e))
                });
            }
        }
    }
    Ok(report)
}

/// When every tope `T^f` (`+` at `f`, `-` elsewhere) exists and the all-minus
/// vector is not a tope, the system is the directed cycle OM. `None` when the
/// hypothesis fails.
pub fn cycle_recognition(sys: &SignSystem) -> Option<bool> {
    let n = sys.num_elements();
    if n == 0 || sys.is_tope(&SignVector::all_minus(n)) {
        return None;
    }
    let all_tf = (0..n).all(|f| {
        let mut t = SignVector::all_minus(n);
        t.set(f, Sign::Plus);
        sys.is_tope(&t)
    });
    all_tf.then(|| sys.is_cycle_system())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_om, full_cube, ideals_com, poset_q};
    use crate::signvec::GroundSet;

    fn systems() -> Vec<SignSystem> {
        vec![
            SignSystem::parse(GroundSet::numbered(1), ["0", "+", "-"]).unwrap(),
            cycle_om(3).unwrap(),
            cycle_om(4).unwrap(),
            full_cube(3),
            ideals_com(&poset_q()).unwrap(),
        ]
    }

    #[test]
    fn crucial_sums_hold() {
        for s in systems() {
            let r = crucial_sums(&s, None).unwrap();
            assert!(r.holds(), "{:?}", r.violations);
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn limited_crucial_sums_sample() {
        let s = cycle_om(4).unwrap();
        let all = crucial_sums(&s, None).unwrap().checked;
        let some = crucial_sums(&s, Some(5)).unwrap().checked;
        assert!(some > 0 && some < all);
    }

    #[test]
    fn face_lemmas_hold() {
        for s in systems() {
            assert!(proper_face_mobius(&s).unwrap().holds());
            let n = s.num_elements();
            let c = contraction(&s, &ElementOrder::natural(n), true).unwrap();
            assert!(c.holds(), "{:?}", c.violations);
            assert!(pairing(&s).unwrap().holds());
            assert!(gate_uniqueness(&s).unwrap().holds());
        }
        for n in 3..=5 {
            let r = no_proper_face_mobius(&cycle_om(n).unwrap()).unwrap();
            assert!(r.holds() && r.checked > 0, "{:?}", r.violations);
        }
        assert!(no_proper_face_mobius(&ideals_com(&poset_q()).unwrap()).is_err());
    }

    #[test]
    fn fibers_contractible() {
        let r = all_fibers_contractible(&cycle_om(4).unwrap(), 4).unwrap();
        assert!(r.holds() && r.checked > 0, "{:?}", r.violations);
        let r = all_fibers_contractible(&ideals_com(&poset_q()).unwrap(), 2).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
    }

    #[test]
    fn cycle_recognition_examples() {
        for n in 3..=6 {
            assert_eq!(cycle_recognition(&cycle_om(n).unwrap()), Some(true));
        }
        assert_eq!(cycle_recognition(&full_cube(3)), None);
    }

    #[test]
    fn failing_instance_reported() {
        let mut r = LemmaReport::new("x");
        r.record(true, String::new);
        r.record(false, || "bad".into());
        assert!(!r.holds());
        assert_eq!((r.checked, r.failed), (2, 1));
        assert_eq!(r.violations, ["bad"]);
    }
}
