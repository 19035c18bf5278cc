//! Sign vectors over a named ground set.
//!
//! A [`SignVector`] is an element of `{0,+,-}^E`. Coordinates are stored as two
//! bit masks, so a ground set holds at most [`MAX_ELEMENTS`] elements.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Upper bound on the size of a ground set.
pub const MAX_ELEMENTS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Zero,
    Plus,
    Minus,
}

impl Sign {
    pub fn neg(self) -> Sign {
        match self {
            Sign::Zero => Sign::Zero,
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Zero => '0',
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '0' => Some(Sign::Zero),
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A set of ground-set element indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ElementSet(u128);

impl ElementSet {
    pub const fn empty() -> Self {
        ElementSet(0)
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS);
        if n == MAX_ELEMENTS {
            ElementSet(u128::MAX)
        } else {
            ElementSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Self {
        assert!(e < MAX_ELEMENTS);
        ElementSet(1u128 << e)
    }

    pub fn from_bits(bits: u128) -> Self {
        ElementSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < MAX_ELEMENTS && self.0 >> e & 1 == 1
    }

    pub fn insert(&mut self, e: usize) {
        assert!(e < MAX_ELEMENTS);
        self.0 |= 1u128 << e;
    }

    pub fn remove(&mut self, e: usize) {
        if e < MAX_ELEMENTS {
            self.0 &= !(1u128 << e);
        }
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest index in the set, if any.
    pub fn max_index(self) -> Option<usize> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let e = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(e)
        })
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::empty();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Ordered, named ground set. The order of the names is the default linear
/// order on the elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(names.len()));
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::Parse("empty element name".into()));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        Ok(GroundSet { names, index })
    }

    /// Ground set `e1, .., en`.
    pub fn numbered(n: usize) -> Self {
        GroundSet::new((1..=n).map(|i| format!("e{i}"))).expect("distinct generated names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, e: usize) -> &str {
        &self.names[e]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn element_set<S: AsRef<str>>(&self, names: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        names.into_iter().map(|n| self.index_of(n.as_ref())).collect()
    }

    pub fn all(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Checks that every index of `set` belongs to this ground set.
    pub fn check_subset(&self, set: ElementSet) -> Result<()> {
        match set.difference(self.all()).iter().next() {
            Some(e) => Err(Error::UnknownElement(format!("#{e}"))),
            None => Ok(()),
        }
    }

    /// The sub-ground-set on `keep`, order inherited.
    pub fn restrict(&self, keep: ElementSet) -> Result<GroundSet> {
        self.check_subset(keep)?;
        GroundSet::new(keep.iter().map(|e| self.names[e].clone()))
    }

    pub fn format_set(&self, set: ElementSet) -> String {
        let names: Vec<&str> = set.iter().map(|e| self.name(e)).collect();
        format!("{{{}}}", names.join(","))
    }
}

/// An element of `{0,+,-}^E`, index-aligned with a [`GroundSet`].
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    plus: u128,
    minus: u128,
}

impl SignVector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_ELEMENTS);
        SignVector { len: len as u8, plus: 0, minus: 0 }
    }

    /// The vector that is `+` everywhere.
    pub fn all_plus(len: usize) -> Self {
        SignVector { len: len as u8, plus: ElementSet::full(len).bits(), minus: 0 }
    }

    pub fn all_minus(len: usize) -> Self {
        SignVector { len: len as u8, plus: 0, minus: ElementSet::full(len).bits() }
    }

    /// Builds a vector from its positive and negative parts.
    pub fn from_parts(len: usize, plus: ElementSet, minus: ElementSet) -> Result<Self> {
        if len > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(len));
        }
        let all = ElementSet::full(len);
        if !plus.is_disjoint(minus) || !plus.union(minus).is_subset(all) {
            return Err(Error::Parse("inconsistent sign vector parts".into()));
        }
        Ok(SignVector { len: len as u8, plus: plus.bits(), minus: minus.bits() })
    }

    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        if signs.len() > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(signs.len()));
        }
        let mut v = SignVector::zero(signs.len());
        for (i, s) in signs.iter().enumerate() {
            v.set(i, *s);
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, e: usize) -> Sign {
        debug_assert!(e < self.len());
        if self.plus >> e & 1 == 1 {
            Sign::Plus
        } else if self.minus >> e & 1 == 1 {
            Sign::Minus
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, e: usize, s: Sign) {
        assert!(e < self.len());
        let bit = 1u128 << e;
        self.plus &= !bit;
        self.minus &= !bit;
        match s {
            Sign::Plus => self.plus |= bit,
            Sign::Minus => self.minus |= bit,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|e| self.get(e)).collect()
    }

    pub fn plus_set(&self) -> ElementSet {
        ElementSet(self.plus)
    }

    pub fn minus_set(&self) -> ElementSet {
        ElementSet(self.minus)
    }

    pub fn support(&self) -> ElementSet {
        ElementSet(self.plus | self.minus)
    }

    pub fn zero_set(&self) -> ElementSet {
        ElementSet::full(self.len()).difference(self.support())
    }

    /// `(support, zero set)`; their disjoint union is the ground set.
    pub fn support_sets(&self) -> (ElementSet, ElementSet) {
        (self.support(), self.zero_set())
    }

    pub fn is_zero(&self) -> bool {
        self.plus | self.minus == 0
    }

    /// Full support.
    pub fn is_tope(&self) -> bool {
        self.support() == ElementSet::full(self.len())
    }

    fn check_same(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::GroundSetMismatch { left: self.len(), right: other.len() });
        }
        Ok(())
    }

    /// `X ∘ Y`: the sign of `X` where it is nonzero, else the sign of `Y`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_same(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let sup = self.plus | self.minus;
        SignVector {
            len: self.len,
            plus: self.plus | (other.plus & !sup),
            minus: self.minus | (other.minus & !sup),
        }
    }

    /// Elements where the two vectors carry opposite nonzero signs.
    pub fn separator(&self, other: &SignVector) -> Result<ElementSet> {
        self.check_same(other)?;
        Ok(self.separator_unchecked(other))
    }

    pub(crate) fn separator_unchecked(&self, other: &SignVector) -> ElementSet {
        ElementSet((self.plus & other.minus) | (self.minus & other.plus))
    }

    /// Flips the signs on `set`; zeros stay zero.
    pub fn reorient(&self, set: ElementSet) -> Result<SignVector> {
        let all = ElementSet::full(self.len());
        if !set.is_subset(all) {
            let e = set.difference(all).iter().next().unwrap_or_default();
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        Ok(self.reorient_unchecked(set))
    }

    pub(crate) fn reorient_unchecked(&self, set: ElementSet) -> SignVector {
        let m = set.bits();
        SignVector {
            len: self.len,
            plus: (self.plus & !m) | (self.minus & m),
            minus: (self.minus & !m) | (self.plus & m),
        }
    }

    /// Restriction to the coordinates in `keep`, in ground-set order.
    pub fn restrict(&self, keep: ElementSet) -> Result<SignVector> {
        let all = ElementSet::full(self.len());
        if !keep.is_subset(all) {
            let e = keep.difference(all).iter().next().unwrap_or_default();
            return Err(Error::UnknownElement(format!("#{e}")));
        }
        Ok(self.restrict_unchecked(keep))
    }

    pub(crate) fn restrict_unchecked(&self, keep: ElementSet) -> SignVector {
        let mut out = SignVector::zero(keep.len());
        for (j, e) in keep.iter().enumerate() {
            out.set(j, self.get(e));
        }
        out
    }

    /// Componentwise order with `0 < +` and `0 < -`.
    pub fn le(&self, other: &SignVector) -> bool {
        self.len == other.len && self.plus & !other.plus == 0 && self.minus & !other.minus == 0
    }

    /// Concatenation `(X, Y)` on the disjoint union of ground sets.
    pub fn concat(&self, other: &SignVector) -> Result<SignVector> {
        let len = self.len() + other.len();
        if len > MAX_ELEMENTS {
            return Err(Error::GroundSetTooLarge(len));
        }
        let shift = self.len();
        Ok(SignVector {
            len: len as u8,
            plus: self.plus | other.plus.checked_shl(shift as u32).unwrap_or(0),
            minus: self.minus | other.minus.checked_shl(shift as u32).unwrap_or(0),
        })
    }
}

impl std::ops::Neg for SignVector {
    type Output = SignVector;

    fn neg(self) -> SignVector {
        SignVector { len: self.len, plus: self.minus, minus: self.plus }
    }
}

/// Lexicographic in ground-set order with `0 < + < -`.
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len.cmp(&other.len).then_with(|| {
            let diff = (self.plus ^ other.plus) | (self.minus ^ other.minus);
            if diff == 0 {
                return Ordering::Equal;
            }
            let e = diff.trailing_zeros() as usize;
            self.get(e).cmp(&other.get(e))
        })
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in 0..self.len() {
            write!(f, "{}", self.get(e).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector(\"{self}\")")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .chars()
            .map(|c| Sign::from_char(c).ok_or_else(|| Error::Parse(format!("bad sign {c:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        SignVector::from_signs(&signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(sv("+-0").compose(&sv("0+-")).unwrap(), sv("+--"));
        assert_eq!(sv("000").compose(&sv("-+-")).unwrap(), sv("-+-"));
        assert_eq!(sv("+0-").compose(&sv("+0-")).unwrap(), sv("+0-"));
        assert!(matches!(sv("+-").compose(&sv("+")), Err(Error::GroundSetMismatch { .. })));
    }

    #[test]
    fn separator_examples() {
        let s = sv("++-").separator(&sv("+-+")).unwrap();
        assert_eq!(s, [1, 2].into_iter().collect());
        assert!(sv("+-0").separator(&sv("+-0")).unwrap().is_empty());
        assert_eq!(sv("+-0").separator(&sv("-+0")).unwrap(), [0, 1].into_iter().collect());
    }

    #[test]
    fn support_sets_examples() {
        let (sup, zero) = sv("+0-").support_sets();
        assert_eq!(sup, [0, 2].into_iter().collect());
        assert_eq!(zero, ElementSet::singleton(1));
        let (sup, zero) = sv("000").support_sets();
        assert!(sup.is_empty());
        assert_eq!(zero, ElementSet::full(3));
        assert_eq!(sv("+-0").zero_set(), ElementSet::singleton(2));
    }

    #[test]
    fn reorient_and_restrict_examples() {
        assert_eq!(sv("+-0").reorient(ElementSet::singleton(0)).unwrap(), sv("--0"));
        assert_eq!(sv("+-0").reorient(ElementSet::empty()).unwrap(), sv("+-0"));
        assert!(sv("+-0").reorient(ElementSet::singleton(3)).is_err());
        assert_eq!(sv("+-0").restrict([0, 2].into_iter().collect()).unwrap(), sv("+0"));
        assert_eq!(sv("+-0").restrict(ElementSet::full(3)).unwrap(), sv("+-0"));
        assert_eq!(sv("+-+").restrict(ElementSet::singleton(1)).unwrap(), sv("-"));
        assert!(sv("+-+").restrict(ElementSet::singleton(5)).is_err());
    }

    #[test]
    fn order_and_text() {
        assert!(sv("0+0").le(&sv("-+0")));
        assert!(!sv("0+0").le(&sv("--0")));
        assert!(sv("++") < sv("+-"));
        assert!(sv("0-") < sv("+-"));
        assert_eq!(sv("+-0").to_string(), "+-0");
        assert!("+x".parse::<SignVector>().is_err());
        assert_eq!(-sv("+-0"), sv("-+0"));
    }

    #[test]
    fn ground_set_lookup() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        assert_eq!(g.index_of("c").unwrap(), 2);
        assert!(g.index_of("z").is_err());
        assert!(GroundSet::new(["a", "a"]).is_err());
        let sub = g.restrict([0, 2].into_iter().collect()).unwrap();
        assert_eq!(sub.names(), ["a", "c"]);
    }

    fn sign_vec(n: usize) -> impl Strategy<Value = SignVector> {
        proptest::collection::vec(prop_oneof![Just(Sign::Zero), Just(Sign::Plus), Just(Sign::Minus)], n)
            .prop_map(|s| SignVector::from_signs(&s).unwrap())
    }

    fn triple() -> impl Strategy<Value = (SignVector, SignVector, SignVector, u128)> {
        (0usize..9).prop_flat_map(|n| (sign_vec(n), sign_vec(n), sign_vec(n), any::<u128>().prop_map(move |m| m & ElementSet::full(n).bits())))
    }

    proptest! {
        #[test]
        fn compose_associative((x, y, z, _) in triple()) {
            let l = x.compose(&y).unwrap().compose(&z).unwrap();
            let r = x.compose(&y.compose(&z).unwrap()).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn support_of_composition((x, y, _, _) in triple()) {
            prop_assert_eq!(x.compose(&y).unwrap().support(), x.support().union(y.support()));
            let s = x.separator(&y).unwrap();
            prop_assert!(s.is_subset(x.support().intersection(y.support())));
            prop_assert_eq!(s, y.separator(&x).unwrap());
        }

        #[test]
        fn reorient_commutes_with_compose((x, y, _, mask) in triple()) {
            let a = ElementSet::from_bits(mask);
            let l = x.compose(&y).unwrap().reorient(a).unwrap();
            let r = x.reorient(a).unwrap().compose(&y.reorient(a).unwrap()).unwrap();
            prop_assert_eq!(l, r);
            prop_assert_eq!(x.reorient(a).unwrap().reorient(a).unwrap(), x);
        }

        #[test]
        fn text_round_trip((x, _, _, _) in triple()) {
            prop_assert_eq!(x.to_string().parse::<SignVector>().unwrap(), x);
        }
    }
}
