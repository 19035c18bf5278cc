//! The signed Varchenko matrix of a COM, its factors `ℳ^e`, the tope blocks
//! `T^{Y,e}` and the closed-form determinant `∏ (1 - a(Y))^{b_Y}`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::constructions::random_assignment;
use crate::error::{Error, Result};
use crate::lemmas::{crucial_sums, LemmaReport};
use crate::polymatrix::PolyMatrix;
use crate::polyring::{Factorization, Monomial, Poly, Variable};
use crate::posetkit::pointed_tope_poset;
use crate::signvec::{ElementSet, GroundSet, Sign, SignVector};
use crate::system::SignSystem;

/// Topes above which [`verify`] stops expanding the full determinant and
/// relies on the factor chain and block determinants instead.
pub const SYMBOLIC_DET_LIMIT: usize = 14;

/// A linear order `e_1 ≺ ⋯ ≺ e_r` on the ground set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementOrder {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl ElementOrder {
    /// The ground-set order itself.
    pub fn natural(n: usize) -> Self {
        ElementOrder { order: (0..n).collect(), position: (0..n).collect() }
    }

    /// `order[k]` is the element at position `k`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut position = vec![usize::MAX; n];
        for (k, &e) in order.iter().enumerate() {
            if e >= n || position[e] != usize::MAX {
                return Err(Error::InvalidOrder(format!("{order:?} is not a permutation")));
            }
            position[e] = k;
        }
        Ok(ElementOrder { order, position })
    }

    /// Parses a comma-separated list of element names.
    pub fn parse(ground: &GroundSet, text: &str) -> Result<Self> {
        let order = text
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| ground.index_of(s))
            .collect::<Result<Vec<_>>>()?;
        if order.len() != ground.len() {
            return Err(Error::InvalidOrder(format!("{} names given for {} elements", order.len(), ground.len())));
        }
        ElementOrder::new(order)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, e: usize) -> usize {
        self.position[e]
    }

    /// The largest element of `set`.
    pub fn max_of(&self, set: ElementSet) -> Option<usize> {
        set.iter().max_by_key(|&e| self.position[e])
    }

    /// The largest element of the ground set.
    pub fn max_element(&self) -> Option<usize> {
        self.order.last().copied()
    }

    pub fn reversed(&self) -> Self {
        ElementOrder::new(self.order.iter().rev().copied().collect()).expect("permutation")
    }

    /// Rotation moving the first `k` elements to the end.
    pub fn rotated(&self, k: usize) -> Self {
        let mut order = self.order.clone();
        if !order.is_empty() {
            let k = k % order.len();
            order.rotate_left(k);
        }
        ElementOrder::new(order).expect("permutation")
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::InvalidOrder(format!("order has {} elements, ground set {n}", self.len())));
        }
        Ok(())
    }

    pub fn names(&self, ground: &GroundSet) -> Vec<String> {
        self.order.iter().map(|&e| ground.name(e).to_string()).collect()
    }
}

/// `∏_{e ∈ S(P,Q)} x_{e^{P_e}}`.
pub fn signed_entry(p: &SignVector, q: &SignVector) -> Poly {
    let sep = p.separator_unchecked(q);
    Poly::monomial(Monomial::from_powers(sep.iter().map(|e| {
        let v = if p.get(e) == Sign::Plus { Variable::plus(e) } else { Variable::minus(e) };
        (v, 1)
    })))
}

/// `∏_{e : P_e ≠ Q_e} x_e`.
pub fn unsigned_entry(p: &SignVector, q: &SignVector) -> Poly {
    let sep = p.separator_unchecked(q);
    Poly::monomial(Monomial::from_powers(sep.iter().map(|e| (Variable::unsigned(e), 1))))
}

/// `a(Y) = ∏_{e ∈ z(Y)} x_{e+} x_{e-}`, or `∏ x_e²` when unsigned.
pub fn a_of(y: &SignVector, signed: bool) -> Poly {
    let z = y.zero_set();
    let m = if signed {
        Monomial::from_powers(z.iter().flat_map(|e| [(Variable::plus(e), 1), (Variable::minus(e), 1)]))
    } else {
        Monomial::from_powers(z.iter().map(|e| (Variable::unsigned(e), 2)))
    };
    Poly::monomial(m)
}

/// The matrix together with the topes indexing it.
#[derive(Clone, Debug)]
pub struct VarchenkoMatrix {
    pub matrix: PolyMatrix,
    pub signed: bool,
    pub topes: Vec<SignVector>,
    pub ground: GroundSet,
}

fn tope_labels(topes: &[SignVector]) -> Vec<String> {
    topes.iter().map(|t| t.to_string()).collect()
}

fn require_buildable(sys: &SignSystem) -> Result<()> {
    if !sys.is_simple() {
        return sys.require_simple_com();
    }
    if sys.topes().is_empty() {
        return Err(Error::NoTopes);
    }
    Ok(())
}

/// `V_{P,Q} = ∏_{e ∈ S(P,Q)} x_{e^{P_e}}` over the topes in canonical order.
pub fn build_signed(sys: &SignSystem) -> Result<VarchenkoMatrix> {
    require_buildable(sys)?;
    let topes = sys.topes().to_vec();
    let labels = tope_labels(&topes);
    let matrix = PolyMatrix::from_fn(labels.clone(), labels, |i, j| signed_entry(&topes[i], &topes[j]));
    Ok(VarchenkoMatrix { matrix, signed: true, topes, ground: sys.ground().clone() })
}

/// The unsigned matrix `V_{P,Q} = ∏_{e ∈ S(P,Q)} x_e`.
pub fn build_unsigned(sys: &SignSystem) -> Result<VarchenkoMatrix> {
    require_buildable(sys)?;
    build_unsigned_from_topes(sys.ground().clone(), sys.topes().to_vec())
}

/// The unsigned matrix of an arbitrary set of full-support sign vectors.
pub fn build_unsigned_from_topes(ground: GroundSet, topes: Vec<SignVector>) -> Result<VarchenkoMatrix> {
    let mut seen = std::collections::HashSet::new();
    for t in &topes {
        if t.len() != ground.len() {
            return Err(Error::GroundSetMismatch { left: ground.len(), right: t.len() });
        }
        if !t.is_tope() {
            return Err(Error::NotFullSupport(t.to_string()));
        }
        if !seen.insert(*t) {
            return Err(Error::DuplicateCovector(t.to_string()));
        }
    }
    let labels = tope_labels(&topes);
    let matrix = PolyMatrix::from_fn(labels.clone(), labels, |i, j| unsigned_entry(&topes[i], &topes[j]));
    Ok(VarchenkoMatrix { matrix, signed: false, topes, ground })
}

impl VarchenkoMatrix {
    pub fn len(&self) -> usize {
        self.topes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.topes.is_empty()
    }

    pub fn index_of(&self, t: &SignVector) -> Option<usize> {
        self.topes.iter().position(|x| x == t)
    }

    /// The specialization `x_{e+} = x_{e-} = x_e`.
    pub fn unsigned(&self) -> VarchenkoMatrix {
        VarchenkoMatrix {
            matrix: self.matrix.map(Poly::unsigned_specialize),
            signed: false,
            topes: self.topes.clone(),
            ground: self.ground.clone(),
        }
    }

    /// The matrix with all variables of `elements` evaluated at zero.
    pub fn set_zero(&self, elements: ElementSet) -> PolyMatrix {
        self.matrix.map(|p| elements.iter().fold(p.clone(), |acc, e| acc.set_zero(e)))
    }

    pub fn det(&self) -> Result<Poly> {
        self.matrix.bareiss_det()
    }

    pub fn to_json(&self) -> String {
        self.matrix.to_json(&self.ground)
    }
}

/// `μ(0^, Q)` in `T_{R,e}` for every pair of topes, `values[r][q]`, zero
/// when `Q` is not a member.
#[derive(Clone, Debug)]
pub struct MobiusTable {
    pub element: usize,
    pub values: Vec<Vec<i64>>,
}

pub fn mobius_table(sys: &SignSystem, e: usize) -> Result<MobiusTable> {
    let topes = sys.topes();
    let index: HashMap<SignVector, usize> = topes.iter().enumerate().map(|(i, t)| (*t, i)).collect();
    let mut values = vec![vec![0i64; topes.len()]; topes.len()];
    for (r, rt) in topes.iter().enumerate() {
        let p = pointed_tope_poset(sys, rt, e)?;
        for (m, mu) in p.members.iter().zip(p.mobius_values()) {
            values[r][index[m]] = *mu;
        }
    }
    Ok(MobiusTable { element: e, values })
}

fn me_from_table(v: &VarchenkoMatrix, table: &MobiusTable, order: &ElementOrder) -> PolyMatrix {
    let e = table.element;
    let labels = v.matrix.row_labels().to_vec();
    PolyMatrix::from_fn(labels.clone(), labels, |q, r| {
        if q == r {
            return Poly::one();
        }
        let sep = v.topes[q].separator_unchecked(&v.topes[r]);
        if order.max_of(sep) != Some(e) {
            return Poly::zero();
        }
        let mu = table.values[r][q];
        if mu == 0 {
            Poly::zero()
        } else {
            &Poly::constant(-mu) * v.matrix.get(q, r)
        }
    })
}

/// `ℳ^e_{Q,R}`: `1` on the diagonal, `-μ(0^,Q)_{R,e} V_{Q,R}` when `e` is
/// the largest element of `S(Q,R)`, `0` otherwise.
pub fn build_me(sys: &SignSystem, v: &VarchenkoMatrix, e: usize, order: &ElementOrder) -> Result<PolyMatrix> {
    order.check(sys.num_elements())?;
    if e >= sys.num_elements() {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    if v.topes != sys.topes() {
        return Err(Error::LabelMismatch("matrix topes differ from the system".into()));
    }
    Ok(me_from_table(v, &mobius_table(sys, e)?, order))
}

/// For every tope `P`, the composition of all covectors `X ≤ P` with
/// `X_e = 0`, the zero vector included; `None` when there is none.
pub fn face_assignment(sys: &SignSystem, e: usize) -> Vec<Option<SignVector>> {
    sys.topes().iter().map(|t| sys.max_covector_vanishing_at(t, e, true)).collect()
}

/// `T^{Y,e}`: topes whose maximal covector vanishing at `e` is `Y`.
pub fn topes_ye(sys: &SignSystem, y: &SignVector, e: usize) -> Result<Vec<SignVector>> {
    sys.require_covector(y)?;
    if e >= sys.num_elements() {
        return Err(Error::UnknownElement(format!("#{e}")));
    }
    if y.get(e) != Sign::Zero {
        return Err(Error::InvalidArgument(format!("{y} does not vanish at {}", sys.ground().name(e))));
    }
    Ok(sys
        .topes()
        .iter()
        .zip(face_assignment(sys, e))
        .filter(|(_, f)| f.as_ref() == Some(y))
        .map(|(t, _)| *t)
        .collect())
}

fn half(count: usize, y: &SignVector) -> Result<u32> {
    if !count.is_multiple_of(2) {
        return Err(Error::IdentityViolated(format!("T^(Y,e) has odd size {count} for Y = {y}")));
    }
    Ok((count / 2) as u32)
}

/// `b_Y = |T^{Y,e_Y}| / 2` with `e_Y` the largest element of `z(Y)`; zero for topes.
pub fn exponent_b(sys: &SignSystem, y: &SignVector, order: &ElementOrder) -> Result<u32> {
    sys.require_covector(y)?;
    order.check(sys.num_elements())?;
    match order.max_of(y.zero_set()) {
        None => Ok(0),
        Some(e) => half(topes_ye(sys, y, e)?.len(), y),
    }
}

/// `b_Y` for every covector with a positive exponent, in covector order.
pub fn exponents(sys: &SignSystem, order: &ElementOrder) -> Result<Vec<(SignVector, u32)>> {
    order.check(sys.num_elements())?;
    let mut counts: BTreeMap<SignVector, usize> = BTreeMap::new();
    for e in 0..sys.num_elements() {
        for y in face_assignment(sys, e).into_iter().flatten() {
            if order.max_of(y.zero_set()) == Some(e) {
                *counts.entry(y).or_default() += 1;
            }
        }
    }
    counts.into_iter().map(|(y, c)| Ok((y, half(c, &y)?))).collect()
}

/// One factor of the closed form before merging.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormTerm {
    pub covector: SignVector,
    pub a: Poly,
    pub b: u32,
}

pub fn closed_form_terms(sys: &SignSystem, signed: bool, order: &ElementOrder) -> Result<Vec<ClosedFormTerm>> {
    Ok(exponents(sys, order)?
        .into_iter()
        .map(|(y, b)| ClosedFormTerm { covector: y, a: a_of(&y, signed), b })
        .collect())
}

fn merge_terms(terms: &[ClosedFormTerm]) -> Factorization {
    let mut f = Factorization::new();
    for t in terms {
        f.push(&Poly::one() - &t.a, t.b);
    }
    f
}

/// `∏_Y (1 - a(Y))^{b_Y}` with factors of equal zero set merged.
pub fn closed_form_det(sys: &SignSystem, signed: bool) -> Result<Factorization> {
    sys.require_simple_com()?;
    closed_form_det_with_order(sys, signed, &ElementOrder::natural(sys.num_elements()))
}

pub fn closed_form_det_with_order(sys: &SignSystem, signed: bool, order: &ElementOrder) -> Result<Factorization> {
    Ok(merge_terms(&closed_form_terms(sys, signed, order)?))
}

/// A diagonal block `ℳ^{Y,e}` of `ℳ^e`.
#[derive(Clone, Debug)]
pub struct Block {
    /// `None` collects topes with no covector below them vanishing at `e`.
    pub covector: Option<SignVector>,
    pub topes: Vec<SignVector>,
    /// `b_{Y,e}`.
    pub exponent: u32,
    pub det: Poly,
    pub expected: Poly,
    pub paired: bool,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    pub element: usize,
    pub blocks: Vec<Block>,
    pub triangular: bool,
}

impl BlockDecomposition {
    pub fn holds(&self) -> bool {
        self.triangular && self.blocks.iter().all(|b| b.holds)
    }

    /// `∏ (1 - a(Y))^{b_{Y,e}}` over the blocks.
    pub fn factorization(&self, signed: bool) -> Factorization {
        let mut f = Factorization::new();
        for b in &self.blocks {
            if let Some(y) = &b.covector {
                f.push(&Poly::one() - &a_of(y, signed), b.exponent);
            }
        }
        f
    }
}

/// Partitions the topes into the sets `T^{Y,e}`, ordered by the support of
/// `Y`, and checks that `ℳ^e` is block lower triangular with
/// `det ℳ^{Y,e} = (1 - a(Y))^{b_{Y,e}}`.
pub fn block_decomposition(
    sys: &SignSystem,
    v: &VarchenkoMatrix,
    e: usize,
    order: &ElementOrder,
) -> Result<BlockDecomposition> {
    let me = build_me(sys, v, e, order)?;
    block_decomposition_of(sys, v, &me, e, order)
}

fn block_decomposition_of(
    sys: &SignSystem,
    v: &VarchenkoMatrix,
    me: &PolyMatrix,
    e: usize,
    order: &ElementOrder,
) -> Result<BlockDecomposition> {
    let mut groups: BTreeMap<(usize, Option<SignVector>), Vec<SignVector>> = BTreeMap::new();
    for (t, y) in v.topes.iter().zip(face_assignment(sys, e)) {
        // support size is a linear extension of the covector order
        let key = (y.map_or(0, |y| y.support().len() + 1), y);
        groups.entry(key).or_default().push(*t);
    }
    let mut blocks = Vec::with_capacity(groups.len());
    for ((_, y), topes) in groups {
        let labels = tope_labels(&topes);
        let det = me.select(&labels, &labels)?.bareiss_det()?;
        let (exponent, expected, paired) = match &y {
            None => (0, Poly::one(), true),
            Some(y) => {
                let exponent = if order.max_of(y.zero_set()) == Some(e) {
                    if topes.len() % 2 == 0 {
                        (topes.len() / 2) as u32
                    } else {
                        u32::MAX
                    }
                } else {
                    0
                };
                let expected = if exponent == u32::MAX {
                    Poly::zero()
                } else {
                    (&Poly::one() - &a_of(y, v.signed)).pow(exponent)
                };
                let paired = topes.iter().all(|p| {
                    let q = y.compose_unchecked(&-*p);
                    q != *p && topes.contains(&q)
                });
                (exponent, expected, paired)
            }
        };
        let holds = exponent != u32::MAX && paired && det == expected;
        blocks.push(Block { covector: y, topes, exponent, det, expected, paired, holds });
    }
    let partition: Vec<Vec<String>> = blocks.iter().map(|b| tope_labels(&b.topes)).collect();
    let triangular = me.block_triangular_check(&partition)?;
    Ok(BlockDecomposition { element: e, blocks, triangular })
}

/// `μ(0^,Q)_{R,e}` for `Q, R ∈ T^{Y,e}` with `Q_e = -R_e`, checked against
/// `(-1)^{rank(L|z(Y))}` when `Q` and `R` are opposite on `z(Y)` and `0` otherwise.
pub fn contraction_mobius(sys: &SignSystem, y: &SignVector, e: usize, q: &SignVector, r: &SignVector) -> Result<i64> {
    let members = topes_ye(sys, y, e)?;
    for t in [q, r] {
        if !members.contains(t) {
            return Err(Error::InvalidArgument(format!("{t} is not in T^(Y,e) for Y = {y}")));
        }
    }
    if q.get(e) != r.get(e).neg() {
        return Err(Error::InvalidArgument(format!("{q} and {r} agree at {}", sys.ground().name(e))));
    }
    let direct = pointed_tope_poset(sys, r, e)?.mobius_at(q)?;
    let closed = contraction_closed_form(sys, y, q, r)?;
    if direct != closed {
        return Err(Error::IdentityViolated(format!(
            "mu(0^,{q}) in T_({r},{}) is {direct}, expected {closed} from Y = {y}",
            sys.ground().name(e)
        )));
    }
    Ok(direct)
}

pub(crate) fn contraction_closed_form(sys: &SignSystem, y: &SignVector, q: &SignVector, r: &SignVector) -> Result<i64> {
    let z = y.zero_set();
    if q.restrict_unchecked(z) != -r.restrict_unchecked(z) {
        return Ok(0);
    }
    let rank = sys.face(y)?.rank()?;
    Ok(if rank % 2 == 0 { 1 } else { -1 })
}

/// Options for [`verify`].
#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub signed: bool,
    pub order: Option<ElementOrder>,
    /// Largest tope count for which the determinant is expanded by elimination.
    pub symbolic_limit: usize,
    /// Number of `(R, e)` pairs whose Möbius sums are checked; `None` checks all.
    pub crucial_limit: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { signed: true, order: None, symbolic_limit: SYMBOLIC_DET_LIMIT, crucial_limit: Some(64) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetMethod {
    /// Fraction-free elimination on the full matrix.
    Bareiss,
    /// Product of the verified block determinants of the verified factors.
    Factors,
}

/// Outcome of checking every identity of the factorization on one system.
#[derive(Clone, Debug)]
pub struct FactorReport {
    pub ground: GroundSet,
    pub signed: bool,
    pub order: ElementOrder,
    pub matrix: VarchenkoMatrix,
    /// `ℳ^e` in ground-set order.
    pub factors: Vec<PolyMatrix>,
    /// Every prefix `ℳ^{e_1}⋯ℳ^{e_k}` equals `V` with the later variables set to zero.
    pub chain_holds: bool,
    /// `V = V_{x_e=0} ℳ^e` for the largest `e`.
    pub lemma_fac_holds: bool,
    /// The block identities through `U^e` and `L^e` for the largest `e`.
    pub lemma_fac1_holds: bool,
    pub blocks: Vec<BlockDecomposition>,
    pub det_method: DetMethod,
    pub det_symbolic: Option<Poly>,
    /// `∏_e det ℳ^e` assembled from the blocks.
    pub det_from_blocks: Factorization,
    pub terms: Vec<ClosedFormTerm>,
    pub closed_form: Factorization,
    pub crucial: Option<LemmaReport>,
    pub matches: bool,
}

impl FactorReport {
    pub fn blocks_hold(&self) -> bool {
        self.blocks.iter().all(BlockDecomposition::holds)
    }

    pub fn all_hold(&self) -> bool {
        self.chain_holds
            && self.lemma_fac_holds
            && self.lemma_fac1_holds
            && self.blocks_hold()
            && self.matches
            && self.crucial.as_ref().is_none_or(LemmaReport::holds)
    }

    pub fn to_json(&self) -> FactorReportJson {
        let g = &self.ground;
        FactorReportJson {
            ground_set: g.names().to_vec(),
            order: self.order.names(g),
            signed: self.signed,
            topes: self.matrix.len(),
            formula: self.closed_form.to_string_with(g),
            factors: self
                .closed_form
                .factors()
                .iter()
                .map(|(f, k)| FactorJson { factor: f.to_string_with(g), exponent: *k })
                .collect(),
            closed_form_terms: self
                .terms
                .iter()
                .map(|t| TermJson { covector: t.covector.to_string(), a: t.a.to_string_with(g), b: t.b })
                .collect(),
            det_method: self.det_method,
            det_symbolic: self.det_symbolic.as_ref().map(|p| p.to_string_with(g)),
            chain_holds: self.chain_holds,
            lemma_fac_holds: self.lemma_fac_holds,
            lemma_fac1_holds: self.lemma_fac1_holds,
            blocks_hold: self.blocks_hold(),
            crucial_holds: self.crucial.as_ref().map(LemmaReport::holds),
            crucial_checked: self.crucial.as_ref().map(|c| c.checked),
            matches: self.matches,
            blocks: self
                .blocks
                .iter()
                .map(|d| BlockDecompositionJson {
                    element: g.name(d.element).to_string(),
                    triangular: d.triangular,
                    blocks: d
                        .blocks
                        .iter()
                        .map(|b| BlockJson {
                            covector: b.covector.map(|y| y.to_string()),
                            topes: tope_labels(&b.topes),
                            exponent: b.exponent,
                            det: b.det.to_string_with(g),
                            holds: b.holds,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorReportJson {
    pub ground_set: Vec<String>,
    pub order: Vec<String>,
    pub signed: bool,
    pub topes: usize,
    pub formula: String,
    pub factors: Vec<FactorJson>,
    pub closed_form_terms: Vec<TermJson>,
    pub det_method: DetMethod,
    pub det_symbolic: Option<String>,
    pub chain_holds: bool,
    pub lemma_fac_holds: bool,
    pub lemma_fac1_holds: bool,
    pub blocks_hold: bool,
    pub crucial_holds: Option<bool>,
    pub crucial_checked: Option<usize>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub blocks: Vec<BlockDecompositionJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FactorJson {
    pub factor: String,
    pub exponent: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub covector: String,
    pub a: String,
    pub b: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockDecompositionJson {
    pub element: String,
    pub triangular: bool,
    pub blocks: Vec<BlockJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockJson {
    pub covector: Option<String>,
    pub topes: Vec<String>,
    pub exponent: u32,
    pub det: String,
    pub holds: bool,
}

/// Checks the factor chain, its block identities and the closed form with
/// default options in the natural order.
pub fn verify_factor_chain(sys: &SignSystem) -> Result<FactorReport> {
    verify(sys, &VerifyOptions::default())
}

pub fn verify(sys: &SignSystem, opts: &VerifyOptions) -> Result<FactorReport> {
    sys.require_simple_com()?;
    if sys.topes().is_empty() {
        return Err(Error::NoTopes);
    }
    let n = sys.num_elements();
    let order = opts.order.clone().unwrap_or_else(|| ElementOrder::natural(n));
    order.check(n)?;
    let signed_v = build_signed(sys)?;
    let v = if opts.signed { signed_v } else { signed_v.unsigned() };
    let tables = (0..n).map(|e| mobius_table(sys, e)).collect::<Result<Vec<_>>>()?;
    let factors: Vec<PolyMatrix> = tables.iter().map(|t| me_from_table(&v, t, &order)).collect();

    let labels = v.matrix.row_labels().to_vec();
    let mut chain_holds = true;
    let mut product = PolyMatrix::identity(labels.clone());
    let mut zeroed: ElementSet = (0..n).collect();
    if product != v.set_zero(zeroed) {
        chain_holds = false;
    }
    for &e in order.elements() {
        product = product.mat_mul(&factors[e])?;
        zeroed.remove(e);
        if product != v.set_zero(zeroed) {
            chain_holds = false;
        }
    }

    let (lemma_fac_holds, lemma_fac1_holds) = match order.max_element() {
        None => (true, true),
        Some(e) => lemma_fac_checks(&v, &factors[e], e)?,
    };

    let blocks = (0..n)
        .map(|e| block_decomposition_of(sys, &v, &factors[e], e, &order))
        .collect::<Result<Vec<_>>>()?;
    let mut det_from_blocks = Factorization::new();
    for d in &blocks {
        for (f, k) in d.factorization(v.signed).factors() {
            det_from_blocks.push(f.clone(), *k);
        }
    }

    let terms = closed_form_terms(sys, v.signed, &order)?;
    let closed_form = merge_terms(&terms);
    let blocks_hold = blocks.iter().all(BlockDecomposition::holds);
    let (det_method, det_symbolic, matches) = if v.len() <= opts.symbolic_limit {
        let det = v.det()?;
        let matches = det == closed_form.expand() && det_from_blocks == closed_form;
        (DetMethod::Bareiss, Some(det), matches)
    } else {
        let matches = chain_holds && blocks_hold && det_from_blocks == closed_form;
        (DetMethod::Factors, None, matches)
    };

    let crucial = Some(crucial_sums(sys, opts.crucial_limit)?);
    Ok(FactorReport {
        ground: sys.ground().clone(),
        signed: v.signed,
        order,
        matrix: v,
        factors,
        chain_holds,
        lemma_fac_holds,
        lemma_fac1_holds,
        blocks,
        det_method,
        det_symbolic,
        det_from_blocks,
        terms,
        closed_form,
        crucial,
        matches,
    })
}

/// `V = V_{x_e=0} ℳ^e`, and `V^{(-,+)} = V^{(-,-)} U^e`, `V^{(+,-)} = V^{(+,+)} L^e`
/// together with the identity blocks of `ℳ^e`.
fn lemma_fac_checks(v: &VarchenkoMatrix, me: &PolyMatrix, e: usize) -> Result<(bool, bool)> {
    let fac = v.set_zero(ElementSet::singleton(e)).mat_mul(me)? == v.matrix;
    let minus: Vec<String> = v.topes.iter().filter(|t| t.get(e) == Sign::Minus).map(|t| t.to_string()).collect();
    let plus: Vec<String> = v.topes.iter().filter(|t| t.get(e) == Sign::Plus).map(|t| t.to_string()).collect();
    let vm = &v.matrix;
    let u = me.select(&minus, &plus)?;
    let l = me.select(&plus, &minus)?;
    let upper = vm.select(&minus, &plus)? == vm.select(&minus, &minus)?.mat_mul(&u)?;
    let lower = vm.select(&plus, &minus)? == vm.select(&plus, &plus)?.mat_mul(&l)?;
    let identities = me.select(&minus, &minus)? == PolyMatrix::identity(minus.clone())
        && me.select(&plus, &plus)? == PolyMatrix::identity(plus.clone());
    Ok((fac, upper && lower && identities))
}

/// Compares `det` with the integer determinant of `v` at `points` seeded
/// random integer points.
pub fn evaluation_check(v: &VarchenkoMatrix, det: &Poly, seed: u64, points: usize) -> Result<bool> {
    evaluation_check_with(v, |asg| det.eval_int(asg), seed, points)
}

/// [`evaluation_check`] against a factored determinant, which is never expanded.
pub fn evaluation_check_factored(v: &VarchenkoMatrix, det: &Factorization, seed: u64, points: usize) -> Result<bool> {
    evaluation_check_with(v, |asg| det.eval_int(asg), seed, points)
}

fn evaluation_check_with(
    v: &VarchenkoMatrix,
    det: impl Fn(&HashMap<Variable, BigInt>) -> Result<BigInt>,
    seed: u64,
    points: usize,
) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..points {
        let asg: HashMap<Variable, BigInt> = random_assignment(&mut rng, v.ground.len(), 7);
        if v.matrix.eval_int(&asg)?.det()? != det(&asg)? {
            return Ok(false);
        }
    }
    Ok(true)
}
