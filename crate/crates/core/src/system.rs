//! Sign-vector systems given by an explicit covector list.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signvec::{ElementSet, GroundSet, Sign, SignVector};

/// A ground set together with a set of covectors `L`.
#[derive(Clone, Debug)]
pub struct SignSystem {
    ground: GroundSet,
    covectors: Vec<SignVector>,
    lookup: HashSet<SignVector>,
    topes: Vec<SignVector>,
}

impl PartialEq for SignSystem {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.covectors == other.covectors
    }
}

impl Eq for SignSystem {}

impl SignSystem {
    /// Builds a system; duplicate covectors are rejected.
    pub fn new(ground: GroundSet, covectors: impl IntoIterator<Item = SignVector>) -> Result<Self> {
        let mut list = Vec::new();
        let mut seen = HashSet::new();
        for x in covectors {
            if x.len() != ground.len() {
                return Err(Error::GroundSetMismatch { left: ground.len(), right: x.len() });
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateCovector(x.to_string()));
            }
            list.push(x);
        }
        Ok(Self::from_parts(ground, list, seen))
    }

    /// Builds a system, silently merging duplicates.
    pub fn from_covectors_dedup(ground: GroundSet, covectors: impl IntoIterator<Item = SignVector>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut list = Vec::new();
        for x in covectors {
            if x.len() != ground.len() {
                return Err(Error::GroundSetMismatch { left: ground.len(), right: x.len() });
            }
            if seen.insert(x) {
                list.push(x);
            }
        }
        Ok(Self::from_parts(ground, list, seen))
    }

    /// Parses covector strings such as `"+-0"` against `ground`.
    pub fn parse<S: AsRef<str>>(ground: GroundSet, covectors: impl IntoIterator<Item = S>) -> Result<Self> {
        let list = covectors
            .into_iter()
            .map(|s| s.as_ref().parse::<SignVector>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(ground, list)
    }

    fn from_parts(ground: GroundSet, mut covectors: Vec<SignVector>, lookup: HashSet<SignVector>) -> Self {
        covectors.sort();
        let topes = covectors.iter().copied().filter(SignVector::is_tope).collect();
        SignSystem { ground, covectors, lookup, topes }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn num_elements(&self) -> usize {
        self.ground.len()
    }

    /// Covectors in canonical (lexicographic, `0 < + < -`) order.
    pub fn covectors(&self) -> &[SignVector] {
        &self.covectors
    }

    pub fn contains(&self, x: &SignVector) -> bool {
        self.lookup.contains(x)
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&SignVector::zero(self.num_elements()))
    }

    /// Covectors of full support, in lexicographic order with `+ < -`.
    pub fn topes(&self) -> &[SignVector] {
        &self.topes
    }

    pub fn is_tope(&self, t: &SignVector) -> bool {
        t.len() == self.num_elements() && t.is_tope() && self.contains(t)
    }

    pub(crate) fn require_covector(&self, x: &SignVector) -> Result<()> {
        if !self.contains(x) {
            return Err(Error::NotACovector(x.to_string()));
        }
        Ok(())
    }

    pub(crate) fn require_tope(&self, t: &SignVector) -> Result<()> {
        if !self.is_tope(t) {
            return Err(Error::NotATope(t.to_string()));
        }
        Ok(())
    }

    pub fn check_axioms(&self) -> AxiomReport {
        check_axioms(self)
    }

    /// Simplicity as required by the Varchenko constructions.
    pub fn is_simple(&self) -> bool {
        simplicity_witness(self).is_none()
    }

    /// Errors unless the system is a simple COM.
    pub fn require_simple_com(&self) -> Result<()> {
        let report = self.check_axioms();
        if !report.is_com() {
            let why = report
                .witnesses
                .first()
                .map(|w| w.describe(&self.ground))
                .unwrap_or_default();
            return Err(Error::NotCom(why));
        }
        if !report.simple {
            let why = report
                .witnesses
                .iter()
                .find(|w| w.is_simplicity())
                .map(|w| w.describe(&self.ground))
                .unwrap_or_default();
            return Err(Error::NotSimple(why));
        }
        Ok(())
    }

    /// Restriction of every covector to `E \ removed`, duplicates merged.
    pub fn deletion(&self, removed: ElementSet) -> Result<SignSystem> {
        self.ground.check_subset(removed)?;
        let keep = self.ground.all().difference(removed);
        let ground = self.ground.restrict(keep)?;
        SignSystem::from_covectors_dedup(ground, self.covectors.iter().map(|x| x.restrict_unchecked(keep)))
    }

    /// Covectors positive on `plus` and negative on `minus`, with those
    /// coordinates removed.
    pub fn topal_fiber(&self, plus: ElementSet, minus: ElementSet) -> Result<SignSystem> {
        self.ground.check_subset(plus)?;
        self.ground.check_subset(minus)?;
        if !plus.is_disjoint(minus) {
            return Err(Error::OverlappingFiber);
        }
        let keep = self.ground.all().difference(plus.union(minus));
        let ground = self.ground.restrict(keep)?;
        let list = self
            .covectors
            .iter()
            .filter(|x| plus.is_subset(x.plus_set()) && minus.is_subset(x.minus_set()))
            .map(|x| x.restrict_unchecked(keep));
        SignSystem::from_covectors_dedup(ground, list)
    }

    /// The face OM of `x`: `{x ∘ Y}` restricted to the zero set of `x`.
    pub fn face(&self, x: &SignVector) -> Result<SignSystem> {
        self.require_covector(x)?;
        let keep = x.zero_set();
        let ground = self.ground.restrict(keep)?;
        let list = self
            .covectors
            .iter()
            .map(|y| x.compose_unchecked(y).restrict_unchecked(keep));
        SignSystem::from_covectors_dedup(ground, list)
    }

    /// Topes above `x` in the covector order.
    pub fn star(&self, x: &SignVector) -> Result<Vec<SignVector>> {
        self.require_covector(x)?;
        Ok(self.topes.iter().copied().filter(|t| x.le(t)).collect())
    }

    /// The gate of tope `p` in `star(x)`, namely `x ∘ p`.
    pub fn gate(&self, x: &SignVector, p: &SignVector) -> Result<SignVector> {
        self.require_covector(x)?;
        self.require_tope(p)?;
        Ok(x.compose_unchecked(p))
    }

    /// Composition of all nonzero covectors below tope `r` that vanish at `e`;
    /// `None` when `e` does not define a proper face of `r`.
    pub fn max_face_covector(&self, r: &SignVector, e: usize) -> Result<Option<SignVector>> {
        self.require_tope(r)?;
        if e >= self.num_elements() {
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        Ok(self.max_covector_vanishing_at(r, e, false))
    }

    /// Composition of the covectors `X <= t` with `X_e = 0`; the zero vector
    /// counts only when `include_zero` is set.
    pub(crate) fn max_covector_vanishing_at(&self, t: &SignVector, e: usize, include_zero: bool) -> Option<SignVector> {
        let mut acc: Option<SignVector> = None;
        for x in &self.covectors {
            if x.get(e) != Sign::Zero || !x.le(t) || (!include_zero && x.is_zero()) {
                continue;
            }
            acc = Some(match acc {
                Some(a) => a.compose_unchecked(x),
                None => *x,
            });
        }
        acc
    }

    /// Length of a longest chain from the zero vector to a tope.
    pub fn rank(&self) -> Result<usize> {
        if !self.contains_zero() {
            return Err(Error::MissingZero);
        }
        let mut order: Vec<&SignVector> = self.covectors.iter().collect();
        order.sort_by_key(|x| x.support().len());
        let mut height = vec![0usize; order.len()];
        for i in 0..order.len() {
            let mut best = 0;
            for j in 0..i {
                if order[j] != order[i] && order[j].le(order[i]) {
                    best = best.max(height[j] + 1);
                }
            }
            height[i] = best;
        }
        Ok(order
            .iter()
            .zip(&height)
            .filter(|(x, _)| x.is_tope())
            .map(|(_, h)| *h)
            .max()
            .unwrap_or(0))
    }

    /// True iff the covectors are exactly those of the directed `n`-cycle OM,
    /// `n = |E|`: the zero vector and every vector carrying both signs.
    pub fn is_cycle_system(&self) -> bool {
        let n = self.num_elements() as u32;
        if n == 0 || n > 40 {
            return false;
        }
        let expected = 3u128.pow(n) - 2 * 2u128.pow(n) + 2;
        self.covectors.len() as u128 == expected
            && self
                .covectors
                .iter()
                .all(|x| x.is_zero() || (!x.plus_set().is_empty() && !x.minus_set().is_empty()))
    }

    /// Reorients every covector on `set`.
    pub fn reorient(&self, set: ElementSet) -> Result<SignSystem> {
        self.ground.check_subset(set)?;
        SignSystem::new(self.ground.clone(), self.covectors.iter().map(|x| x.reorient_unchecked(set)))
    }

    /// Cartesian product on the disjoint union of the ground sets.
    pub fn product(&self, other: &SignSystem) -> Result<SignSystem> {
        let names = self.ground.names().iter().chain(other.ground.names()).cloned();
        let ground = GroundSet::new(names)?;
        let mut list = Vec::with_capacity(self.covectors.len() * other.covectors.len());
        for x in &self.covectors {
            for y in &other.covectors {
                list.push(x.concat(y)?);
            }
        }
        SignSystem::new(ground, list)
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            ground_set: self.ground.names().to_vec(),
            covectors: self.covectors.iter().map(|x| x.to_string()).collect(),
        }
    }

    pub fn from_file(file: &SystemFile) -> Result<Self> {
        SignSystem::parse(GroundSet::new(file.ground_set.iter().cloned())?, &file.covectors)
    }

    /// `{"ground_set": [...], "covectors": ["+-0", ...]}`.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("plain data")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(&serde_json::from_str(text)?)
    }

    /// Same covectors over a renamed ground set.
    pub fn with_ground(&self, ground: GroundSet) -> Result<SignSystem> {
        SignSystem::new(ground, self.covectors.iter().copied())
    }
}

impl fmt::Display for SignSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ground set: {}", self.ground.names().join(" "))?;
        for x in &self.covectors {
            writeln!(f, "{x}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub ground_set: Vec<String>,
    pub covectors: Vec<String>,
}

/// A concrete counterexample to one of the axioms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    FaceSymmetry { x: SignVector, y: SignVector },
    StrongElimination { x: SignVector, y: SignVector, element: usize },
    Composition { x: SignVector, y: SignVector },
    /// An element that does not take all of `0, +, -`.
    SimpleElement { element: usize },
    /// A pair whose sign products miss one of `0, +, -`.
    SimplePair { first: usize, second: usize },
}

impl Witness {
    pub fn is_simplicity(&self) -> bool {
        matches!(self, Witness::SimpleElement { .. } | Witness::SimplePair { .. })
    }

    pub fn describe(&self, ground: &GroundSet) -> String {
        match self {
            Witness::FaceSymmetry { x, y } => format!("(FS) fails: {x} o -{y} is not a covector"),
            Witness::StrongElimination { x, y, element } => {
                format!("(SE) fails for {x}, {y} at {}", ground.name(*element))
            }
            Witness::Composition { x, y } => format!("(C) fails: {x} o {y} is not a covector"),
            Witness::SimpleElement { element } => {
                format!("element {} does not take all of 0,+,-", ground.name(*element))
            }
            Witness::SimplePair { first, second } => format!(
                "elements {} and {} are parallel or constant as a pair",
                ground.name(*first),
                ground.name(*second)
            ),
        }
    }
}

/// Outcome of checking (FS), (SE), (C) and simplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub face_symmetry: bool,
    pub strong_elimination: bool,
    pub composition: bool,
    pub simple: bool,
    pub contains_zero: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    pub fn is_com(&self) -> bool {
        self.face_symmetry && self.strong_elimination
    }

    pub fn is_om(&self) -> bool {
        self.is_com() && self.contains_zero
    }

    pub fn to_json(&self, ground: &GroundSet) -> AxiomReportJson {
        AxiomReportJson {
            face_symmetry: self.face_symmetry,
            strong_elimination: self.strong_elimination,
            composition: self.composition,
            simple: self.simple,
            contains_zero: self.contains_zero,
            com: self.is_com(),
            om: self.is_om(),
            witnesses: self.witnesses.iter().map(|w| w.describe(ground)).collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReportJson {
    pub face_symmetry: bool,
    pub strong_elimination: bool,
    pub composition: bool,
    pub simple: bool,
    pub contains_zero: bool,
    pub com: bool,
    pub om: bool,
    pub witnesses: Vec<String>,
}

fn check_axioms(sys: &SignSystem) -> AxiomReport {
    let l = sys.covectors();
    let mut witnesses = Vec::new();

    let fs = l.iter().find_map(|x| {
        l.iter()
            .find(|y| !sys.contains(&x.compose_unchecked(&-**y)))
            .map(|y| Witness::FaceSymmetry { x: *x, y: *y })
    });
    let c = l.iter().find_map(|x| {
        l.iter()
            .find(|y| !sys.contains(&x.compose_unchecked(y)))
            .map(|y| Witness::Composition { x: *x, y: *y })
    });
    let se = strong_elimination_witness(sys);
    let simple = simplicity_witness(sys);

    let report = AxiomReport {
        face_symmetry: fs.is_none(),
        strong_elimination: se.is_none(),
        composition: c.is_none(),
        simple: simple.is_none(),
        contains_zero: sys.contains_zero(),
        witnesses: Vec::new(),
    };
    witnesses.extend(fs);
    witnesses.extend(se);
    witnesses.extend(c);
    witnesses.extend(simple);
    AxiomReport { witnesses, ..report }
}

fn strong_elimination_witness(sys: &SignSystem) -> Option<Witness> {
    let l = sys.covectors();
    for (i, x) in l.iter().enumerate() {
        for y in &l[i + 1..] {
            let sep = x.separator_unchecked(y);
            if sep.is_empty() {
                continue;
            }
            let xy = x.compose_unchecked(y);
            for e in sep.iter() {
                if !has_elimination(sys, &xy, sep, e) {
                    return Some(Witness::StrongElimination { x: *x, y: *y, element: e });
                }
            }
        }
    }
    None
}

/// Is there `Z` with `Z_e = 0` that agrees with `xy` outside `sep`?
fn has_elimination(sys: &SignSystem, xy: &SignVector, sep: ElementSet, e: usize) -> bool {
    let free = sep.difference(ElementSet::singleton(e));
    let matches = |z: &SignVector| {
        z.get(e) == Sign::Zero && {
            let fixed = ElementSet::full(z.len()).difference(sep);
            z.plus_set().intersection(fixed) == xy.plus_set().intersection(fixed)
                && z.minus_set().intersection(fixed) == xy.minus_set().intersection(fixed)
        }
    };
    let candidates = 3f64.powi(free.len() as i32);
    if candidates > sys.covectors().len() as f64 {
        return sys.covectors().iter().any(matches);
    }
    // enumerate the free coordinates directly
    let free: Vec<usize> = free.iter().collect();
    let mut base = *xy;
    for f in sep.iter() {
        base.set(f, Sign::Zero);
    }
    let total = 3usize.pow(free.len() as u32);
    (0..total).any(|mut code| {
        let mut z = base;
        for &f in &free {
            z.set(f, [Sign::Zero, Sign::Plus, Sign::Minus][code % 3]);
            code /= 3;
        }
        sys.contains(&z)
    })
}

fn simplicity_witness(sys: &SignSystem) -> Option<Witness> {
    let n = sys.num_elements();
    let l = sys.covectors();
    for e in 0..n {
        let mut seen = [false; 3];
        for x in l {
            seen[x.get(e) as usize] = true;
        }
        if seen != [true; 3] {
            return Some(Witness::SimpleElement { element: e });
        }
    }
    for e in 0..n {
        for f in e + 1..n {
            let (mut zero, mut pos, mut neg) = (false, false, false);
            for x in l {
                match (x.get(e), x.get(f)) {
                    (Sign::Zero, _) | (_, Sign::Zero) => zero = true,
                    (a, b) if a == b => pos = true,
                    _ => neg = true,
                }
                if zero && pos && neg {
                    break;
                }
            }
            if !(zero && pos && neg) {
                return Some(Witness::SimplePair { first: e, second: f });
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{cycle_om, full_cube};

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_is_an_om() {
        let c3 = cycle_om(3).unwrap();
        let r = c3.check_axioms();
        assert!(r.face_symmetry && r.strong_elimination && r.composition && r.contains_zero && r.simple);
        assert!(r.is_om());
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn single_covector_system() {
        let s = SignSystem::parse(GroundSet::numbered(1), ["+"]).unwrap();
        let r = s.check_axioms();
        assert!(r.face_symmetry);
        assert!(r.strong_elimination);
        assert!(!r.simple);
        assert!(matches!(r.witnesses[0], Witness::SimpleElement { element: 0 }));
    }

    #[test]
    fn full_square_is_om() {
        let r = full_cube(2).check_axioms();
        assert!(r.is_om() && r.simple);
    }

    #[test]
    fn empty_covector_list() {
        let s = SignSystem::new(GroundSet::numbered(2), []).unwrap();
        let r = s.check_axioms();
        assert!(r.is_com() && r.composition);
        assert!(!r.simple && !r.contains_zero);
    }

    #[test]
    fn axiom_failures_carry_witnesses() {
        // missing the zero vector that (SE) on +,- demands
        let s = SignSystem::parse(GroundSet::numbered(1), ["+", "-"]).unwrap();
        let r = s.check_axioms();
        assert!(r.face_symmetry && !r.strong_elimination);
        assert!(r.witnesses.iter().any(|w| matches!(w, Witness::StrongElimination { .. })));
        // no -(+) so (FS) fails
        let s = SignSystem::parse(GroundSet::numbered(1), ["0", "+"]).unwrap();
        let r = s.check_axioms();
        assert!(!r.face_symmetry);
        assert!(r.witnesses.iter().any(|w| matches!(w, Witness::FaceSymmetry { .. })));
        // (C) fails without the composed tope
        let s = SignSystem::parse(GroundSet::numbered(2), ["00", "+0", "-0", "0+", "0-"]).unwrap();
        let r = s.check_axioms();
        assert!(!r.composition && !r.face_symmetry);
    }

    #[test]
    fn duplicates_and_mismatch_rejected() {
        assert!(SignSystem::parse(GroundSet::numbered(1), ["+", "+"]).is_err());
        assert!(SignSystem::parse(GroundSet::numbered(2), ["+"]).is_err());
    }

    #[test]
    fn tope_examples() {
        let c3 = cycle_om(3).unwrap();
        let topes: Vec<String> = c3.topes().iter().map(|t| t.to_string()).collect();
        assert_eq!(topes, ["++-", "+-+", "+--", "-++", "-+-", "--+"]);
        assert_eq!(full_cube(2).topes().len(), 4);
        let z = SignSystem::parse(GroundSet::numbered(2), ["00"]).unwrap();
        assert!(z.topes().is_empty());
    }

    #[test]
    fn deletion_examples() {
        let c3 = cycle_om(3).unwrap();
        let d = c3.deletion(ElementSet::singleton(2)).unwrap();
        assert_eq!(d.num_elements(), 2);
        assert!(d.check_axioms().is_com());
        assert_eq!(c3.deletion(ElementSet::empty()).unwrap(), c3);
        let cube = full_cube(2).deletion(ElementSet::singleton(1)).unwrap();
        assert_eq!(cube.covectors(), full_cube(1).covectors());
        assert!(c3.deletion(ElementSet::singleton(7)).is_err());
    }

    #[test]
    fn topal_fiber_examples() {
        let c3 = cycle_om(3).unwrap();
        let f = c3.topal_fiber(ElementSet::singleton(0), ElementSet::empty()).unwrap();
        assert_eq!(f.topes().len(), 3);
        assert!(f.check_axioms().is_com());
        assert_eq!(c3.topal_fiber(ElementSet::empty(), ElementSet::empty()).unwrap(), c3);
        let cube = full_cube(2).topal_fiber(ElementSet::singleton(0), ElementSet::empty()).unwrap();
        assert_eq!(cube.covectors(), full_cube(1).covectors());
        assert!(matches!(
            c3.topal_fiber(ElementSet::singleton(0), ElementSet::singleton(0)),
            Err(Error::OverlappingFiber)
        ));
    }

    #[test]
    fn face_examples() {
        let c3 = cycle_om(3).unwrap();
        let f = c3.face(&sv("+-0")).unwrap();
        assert_eq!(f.ground().names(), ["e3"]);
        let strs: Vec<String> = f.covectors().iter().map(|x| x.to_string()).collect();
        assert_eq!(strs, ["0", "+", "-"]);
        assert!(f.check_axioms().is_om());
        let whole = c3.face(&sv("000")).unwrap();
        assert_eq!(whole, c3);
        let point = c3.face(&sv("++-")).unwrap();
        assert_eq!(point.num_elements(), 0);
        assert_eq!(point.covectors().len(), 1);
        assert!(c3.face(&sv("+++")).is_err());
    }

    #[test]
    fn star_and_gate_examples() {
        let c3 = cycle_om(3).unwrap();
        assert_eq!(c3.star(&sv("+-0")).unwrap(), vec![sv("+-+"), sv("+--")]);
        assert_eq!(c3.star(&sv("++-")).unwrap(), vec![sv("++-")]);
        assert_eq!(c3.star(&sv("000")).unwrap().len(), 6);
        assert_eq!(c3.gate(&sv("+-0"), &sv("-++")).unwrap(), sv("+-+"));
        assert_eq!(c3.gate(&sv("+-0"), &sv("+--")).unwrap(), sv("+--"));
        assert_eq!(c3.gate(&sv("000"), &sv("-+-")).unwrap(), sv("-+-"));
        assert!(c3.gate(&sv("+-0"), &sv("+++")).is_err());
    }

    #[test]
    fn max_face_examples() {
        let c3 = cycle_om(3).unwrap();
        assert_eq!(c3.max_face_covector(&sv("+-+"), 2).unwrap(), Some(sv("+-0")));
        assert_eq!(full_cube(1).max_face_covector(&sv("+"), 0).unwrap(), None);
        assert_eq!(full_cube(2).max_face_covector(&sv("++"), 0).unwrap(), Some(sv("0+")));
        assert!(c3.max_face_covector(&sv("+++"), 0).is_err());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(cycle_om(3).unwrap().rank().unwrap(), 2);
        for n in 0..4 {
            assert_eq!(full_cube(n).rank().unwrap(), n);
        }
        let fiber = cycle_om(3).unwrap().topal_fiber(ElementSet::singleton(0), ElementSet::empty()).unwrap();
        assert!(matches!(fiber.rank(), Err(Error::MissingZero)));
    }

    #[test]
    fn cycle_recognition() {
        assert!(cycle_om(3).unwrap().is_cycle_system());
        assert!(cycle_om(4).unwrap().is_cycle_system());
        assert!(!full_cube(3).is_cycle_system());
    }

    #[test]
    fn fs_implies_c_on_subsystems() {
        // every subset of covectors of C_3 that satisfies (FS) also satisfies (C)
        let c3 = cycle_om(3).unwrap();
        let all = c3.covectors().to_vec();
        let mut checked = 0;
        for mask in 0u32..(1 << all.len()) {
            if mask.count_ones() > 7 {
                continue;
            }
            let sub = SignSystem::new(
                c3.ground().clone(),
                all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x),
            )
            .unwrap();
            let r = sub.check_axioms();
            if r.face_symmetry {
                checked += 1;
                assert!(r.composition, "{sub}");
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn json_round_trip() {
        let c3 = cycle_om(3).unwrap();
        let text = c3.to_json();
        assert!(text.contains("\"ground_set\""));
        assert_eq!(SignSystem::from_json(&text).unwrap(), c3);
        assert!(SignSystem::from_json(r#"{"ground_set":["a"],"covectors":["+-"]}"#).is_err());
        assert!(SignSystem::from_json("{").is_err());
    }
}
