//! Standard families of COMs and the fixtures used across the test suite.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::polyring::{Factorization, Monomial, Poly, Variable};
use crate::posetkit::{element_name, FinitePoset};
use crate::signvec::{ElementSet, GroundSet, Sign, SignVector};
use crate::system::SignSystem;

/// Bound on the number of weak extensions enumerated for a ranking COM.
pub const WEAK_EXTENSION_LIMIT: usize = 200_000;

/// The OM of a directed cycle with `n` arcs: the closure under composition
/// of its cocircuits, which carry one `+`, one `-` and zeros elsewhere.
pub fn cycle_om(n: usize) -> Result<SignSystem> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("a cycle needs at least 3 arcs, got {n}")));
    }
    if n > 12 {
        return Err(Error::SizeGuard { what: "cycle length", size: n, limit: 12 });
    }
    let mut cocircuits = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let v = SignVector::from_parts(n, ElementSet::singleton(i), ElementSet::singleton(j))?;
                cocircuits.push(v);
            }
        }
    }
    let mut all: HashSet<SignVector> = cocircuits.iter().copied().collect();
    all.insert(SignVector::zero(n));
    let mut frontier: Vec<SignVector> = cocircuits.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in &frontier {
            for c in &cocircuits {
                let y = x.compose_unchecked(c);
                if all.insert(y) {
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    SignSystem::new(GroundSet::numbered(n), all)
}

/// `{0,+,-}^n`.
pub fn full_cube(n: usize) -> SignSystem {
    assert!(n <= 12, "full cube on {n} elements is too large");
    let mut list = Vec::with_capacity(3usize.pow(n as u32));
    for code in 0..3usize.pow(n as u32) {
        let mut c = code;
        let signs: Vec<Sign> = (0..n)
            .map(|_| {
                let s = [Sign::Zero, Sign::Plus, Sign::Minus][c % 3];
                c /= 3;
                s
            })
            .collect();
        list.push(SignVector::from_signs(&signs).expect("length within bounds"));
    }
    SignSystem::new(GroundSet::numbered(n), list).expect("distinct vectors")
}

fn poset_mask(p: &FinitePoset) -> Result<()> {
    if p.len() > 128 {
        return Err(Error::GroundSetTooLarge(p.len()));
    }
    Ok(())
}

/// All order ideals (down-sets) of `p`, sorted by size and then bits.
pub fn ideals(p: &FinitePoset) -> Vec<ElementSet> {
    let n = p.len();
    let below: Vec<ElementSet> = (0..n).map(|b| (0..n).filter(|&a| p.lt(a, b)).collect()).collect();
    let mut out = Vec::new();
    // grow ideals along a linear extension so every ideal is produced once
    let order = p.topological_order();
    fn rec(k: usize, order: &[usize], below: &[ElementSet], cur: ElementSet, out: &mut Vec<ElementSet>) {
        if k == order.len() {
            out.push(cur);
            return;
        }
        let x = order[k];
        rec(k + 1, order, below, cur, out);
        if below[x].is_subset(cur) {
            let mut with = cur;
            with.insert(x);
            rec(k + 1, order, below, with, out);
        }
    }
    rec(0, &order, &below, ElementSet::empty(), &mut out);
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}

/// All antichains of `p`, including the empty one, sorted by size and bits.
pub fn antichains(p: &FinitePoset) -> Vec<ElementSet> {
    let n = p.len();
    let mut out = Vec::new();
    fn rec(p: &FinitePoset, k: usize, cur: ElementSet, out: &mut Vec<ElementSet>) {
        if k == p.len() {
            out.push(cur);
            return;
        }
        rec(p, k + 1, cur, out);
        if cur.iter().all(|a| !p.comparable(a, k)) {
            let mut with = cur;
            with.insert(k);
            rec(p, k + 1, with, out);
        }
    }
    if n <= 128 {
        rec(p, 0, ElementSet::empty(), &mut out);
    }
    out.sort_by_key(|s| (s.len(), s.bits()));
    out
}

/// All linear extensions as sequences of element indices, in lexicographic order.
pub fn linear_extensions(p: &FinitePoset) -> Vec<Vec<usize>> {
    let n = p.len();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(p: &FinitePoset, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == p.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..p.len() {
            if !used[x] && (0..p.len()).all(|y| !p.lt(y, x) || used[y]) {
                used[x] = true;
                cur.push(x);
                rec(p, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(p, &mut cur, &mut used, &mut out);
    out
}

/// Ordered partitions of the elements into blocks, each block a nonempty set
/// of minimal elements of what remains. Returns the block index of every element.
pub fn weak_extensions(p: &FinitePoset, limit: usize) -> Result<Vec<Vec<usize>>> {
    poset_mask(p)?;
    let n = p.len();
    let mut out = Vec::new();
    let mut block = vec![0usize; n];
    fn rec(
        p: &FinitePoset,
        remaining: ElementSet,
        depth: usize,
        block: &mut [usize],
        out: &mut Vec<Vec<usize>>,
        limit: usize,
    ) -> Result<()> {
        if remaining.is_empty() {
            if out.len() >= limit {
                return Err(Error::SizeGuard { what: "weak extensions", size: out.len() + 1, limit });
            }
            out.push(block.to_vec());
            return Ok(());
        }
        let minimal: Vec<usize> = remaining.iter().filter(|&x| remaining.iter().all(|y| !p.lt(y, x))).collect();
        for mask in 1u64..(1u64 << minimal.len()) {
            let mut chosen = ElementSet::empty();
            for (i, &x) in minimal.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    chosen.insert(x);
                    block[x] = depth;
                }
            }
            rec(p, remaining.difference(chosen), depth + 1, block, out, limit)?;
        }
        Ok(())
    }
    rec(p, ElementSet::full(n), 0, &mut block, &mut out, limit)?;
    Ok(out)
}

/// The COM of the distributive lattice of ideals: the tope of an ideal `I`
/// is `-` on `I` and `+` elsewhere, and every covector is a cube face
/// `(I, S)` with `S` a set of minimal elements of the complement of `I`,
/// carrying `0` on `S`.
pub fn ideals_com(p: &FinitePoset) -> Result<SignSystem> {
    poset_mask(p)?;
    let n = p.len();
    let ground = GroundSet::new(p.labels().iter().cloned())?;
    let mut list = Vec::new();
    for ideal in ideals(p) {
        let rest = ElementSet::full(n).difference(ideal);
        let minimal: Vec<usize> = rest.iter().filter(|&x| rest.iter().all(|y| !p.lt(y, x))).collect();
        for mask in 0u64..(1u64 << minimal.len()) {
            let zeros: ElementSet = minimal.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            list.push(SignVector::from_parts(n, rest.difference(zeros), ideal)?);
        }
    }
    SignSystem::new(ground, list)
}

/// `∏_p (1 - x_p²)^{m_p}` with `m_p` the number of antichains containing `p`.
pub fn ideals_closed_form(p: &FinitePoset) -> Factorization {
    let chains = antichains(p);
    let mut f = Factorization::new();
    for x in 0..p.len() {
        let m = chains.iter().filter(|a| a.contains(x)).count() as u32;
        let factor = &Poly::one() - &Poly::monomial(Monomial::from_powers([(Variable::unsigned(x), 2)]));
        f.push(factor, m);
    }
    f
}

/// Incomparable pairs `(p, q)` with `p` before `q` in `l0`, sorted by positions.
fn incomparable_pairs(p: &FinitePoset, l0: &[usize]) -> Vec<(usize, usize)> {
    let mut pos = vec![0; p.len()];
    for (i, &x) in l0.iter().enumerate() {
        pos[x] = i;
    }
    let mut pairs = Vec::new();
    for (i, &a) in l0.iter().enumerate() {
        for &b in &l0[i + 1..] {
            if !p.comparable(a, b) {
                pairs.push((a, b));
            }
        }
    }
    pairs.sort_by_key(|&(a, b)| (pos[a], pos[b]));
    pairs
}

fn pair_name(p: &FinitePoset, a: usize, b: usize) -> String {
    let single = p.labels().iter().all(|l| l.chars().count() == 1);
    if single {
        format!("{}{}", p.label(a), p.label(b))
    } else {
        format!("{}-{}", p.label(a), p.label(b))
    }
}

fn check_linear_extension(p: &FinitePoset, l0: &[usize]) -> Result<()> {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut ok = l0.len() == n && l0.iter().all(|&x| x < n && !std::mem::replace(&mut seen[x], true));
    if ok {
        ok = (0..n).all(|i| (i + 1..n).all(|j| !p.lt(l0[j], l0[i])));
    }
    if ok {
        Ok(())
    } else {
        let names: Vec<String> = l0.iter().map(|&x| if x < n { p.label(x).to_string() } else { format!("#{x}") }).collect();
        Err(Error::NotLinearExtension(names.join("")))
    }
}

/// The reference extension: `l0` if given (and valid), otherwise the
/// lexicographically least linear extension.
pub fn reference_extension(p: &FinitePoset, l0: Option<&[usize]>) -> Result<Vec<usize>> {
    match l0 {
        Some(l) => {
            check_linear_extension(p, l)?;
            Ok(l.to_vec())
        }
        None => Ok(p.topological_order_lex()),
    }
}

/// Ground set of the ranking COM: incomparable pairs, named `pq` with `p`
/// before `q` in the reference extension.
pub fn ranking_ground(p: &FinitePoset, l0: Option<&[usize]>) -> Result<(GroundSet, Vec<(usize, usize)>)> {
    let l0 = reference_extension(p, l0)?;
    let pairs = incomparable_pairs(p, &l0);
    let ground = GroundSet::new(pairs.iter().map(|&(a, b)| pair_name(p, a, b)))?;
    Ok((ground, pairs))
}

/// The ranking COM on the incomparable pairs of `p`: covectors are the weak
/// extensions, topes the linear extensions. A pair is `0` when both lie in
/// one block and `+` when ordered as in the reference extension.
pub fn ranking_com(p: &FinitePoset, l0: Option<&[usize]>) -> Result<SignSystem> {
    let (ground, pairs) = ranking_ground(p, l0)?;
    let m = pairs.len();
    let mut list = Vec::new();
    for blocks in weak_extensions(p, WEAK_EXTENSION_LIMIT)? {
        let mut plus = ElementSet::empty();
        let mut minus = ElementSet::empty();
        for (k, &(a, b)) in pairs.iter().enumerate() {
            match blocks[a].cmp(&blocks[b]) {
                std::cmp::Ordering::Less => plus.insert(k),
                std::cmp::Ordering::Greater => minus.insert(k),
                std::cmp::Ordering::Equal => {}
            }
        }
        list.push(SignVector::from_parts(m, plus, minus)?);
    }
    SignSystem::new(ground, list)
}

/// Names a linear extension by concatenating labels, e.g. `abcde`.
pub fn extension_name(p: &FinitePoset, ext: &[usize]) -> String {
    ext.iter().map(|&x| p.label(x)).collect::<Vec<_>>().join("")
}

/// The tope of `ranking_com(p, l0)` corresponding to a linear extension.
pub fn ranking_tope(p: &FinitePoset, l0: Option<&[usize]>, ext: &[usize]) -> Result<SignVector> {
    check_linear_extension(p, ext)?;
    let (_, pairs) = ranking_ground(p, l0)?;
    let mut pos = vec![0; p.len()];
    for (i, &x) in ext.iter().enumerate() {
        pos[x] = i;
    }
    let plus: ElementSet = pairs.iter().enumerate().filter(|(_, &(a, b))| pos[a] < pos[b]).map(|(k, _)| k).collect();
    let minus = ElementSet::full(pairs.len()).difference(plus);
    SignVector::from_parts(pairs.len(), plus, minus)
}

/// `∏_{A} (1 - ∏_{p≠q∈A} x_{pq}²)^{(|A|-2)!}` over antichains of size at least two.
///
/// This is not the determinant of the ranking matrix in general: already the
/// 3-antichain has `(1 - x[ab]^2)^2`. It agrees with the determinant exactly
/// when every contraction of an antichain has a single linear extension; see
/// [`ranking_closed_form_weighted`].
pub fn ranking_closed_form(p: &FinitePoset, l0: Option<&[usize]>) -> Result<(GroundSet, Factorization)> {
    antichain_product(p, l0, |_| Ok(1))
}

fn antichain_product(
    p: &FinitePoset,
    l0: Option<&[usize]>,
    weight: impl Fn(ElementSet) -> Result<u32>,
) -> Result<(GroundSet, Factorization)> {
    let (ground, pairs) = ranking_ground(p, l0)?;
    let mut f = Factorization::new();
    for a in antichains(p).into_iter().filter(|a| a.len() >= 2) {
        let powers = pairs
            .iter()
            .enumerate()
            .filter(|(_, &(x, y))| a.contains(x) && a.contains(y))
            .map(|(k, _)| (Variable::unsigned(k), 2));
        let factor = &Poly::one() - &Poly::monomial(Monomial::from_powers(powers));
        let exponent: u32 = (1..=(a.len() as u32 - 2)).product();
        f.push(factor, exponent * weight(a)?);
    }
    Ok((ground, f))
}

/// `p` with the antichain `a` contracted to one element.
pub fn contract_antichain(p: &FinitePoset, a: ElementSet) -> Result<FinitePoset> {
    let rep = a.iter().next().ok_or_else(|| Error::InvalidArgument("empty antichain".into()))?;
    let keep: Vec<usize> = (0..p.len()).filter(|&x| !a.contains(x) || x == rep).collect();
    let image = |x: usize| if a.contains(x) { rep } else { x };
    let index = |x: usize| keep.iter().position(|&k| k == image(x)).expect("kept");
    let mut relations = Vec::new();
    for x in 0..p.len() {
        for y in 0..p.len() {
            if p.lt(x, y) && image(x) != image(y) {
                relations.push((index(x), index(y)));
            }
        }
    }
    FinitePoset::from_relations(keep.iter().map(|&x| p.label(x).to_string()), &relations)
}

/// Like [`ranking_closed_form`], with the exponent of each antichain `A`
/// multiplied by the number of linear extensions of `p` with `A` contracted,
/// i.e. the number of weak extensions whose only non-singleton block is `A`.
/// This is the unsigned determinant of the ranking COM.
pub fn ranking_closed_form_weighted(p: &FinitePoset, l0: Option<&[usize]>) -> Result<(GroundSet, Factorization)> {
    antichain_product(p, l0, |a| Ok(linear_extensions(&contract_antichain(p, a)?).len() as u32))
}

/// The poset with `a<c, b<c, a<d, b<d, b<e`.
pub fn poset_q() -> FinitePoset {
    FinitePoset::from_labeled(
        &["a", "b", "c", "d", "e"],
        &[("a", "c"), ("b", "c"), ("a", "d"), ("b", "d"), ("b", "e")],
    )
    .expect("valid poset")
}

/// Tope labels of the full subdivision of `K4`.
pub const K4_LABELS: [&str; 10] = ["v1", "v2", "v3", "v4", "v5", "v6", "v7", "v8", "v9", "v10"];

/// Vertices of the full subdivision of `K4` as a partial cube in `Q_4`: `v1`
/// is all-plus and each other vertex is negative on the coordinates where it
/// differs from `v1`.
pub fn k4_subdivision_topes() -> (GroundSet, Vec<SignVector>) {
    let flips: [&[usize]; 10] = [&[], &[1], &[2], &[3], &[1, 4], &[1, 3, 4], &[3, 4], &[2, 3, 4], &[2, 4], &[1, 2, 4]];
    let ground = GroundSet::new(["1", "2", "3", "4"]).expect("distinct names");
    let topes = flips
        .iter()
        .map(|f| {
            let minus: ElementSet = f.iter().map(|&i| i - 1).collect();
            SignVector::from_parts(4, ElementSet::full(4).difference(minus), minus).expect("4 coordinates")
        })
        .collect();
    (ground, topes)
}

/// All posets on `n` elements up to isomorphism, labelled `a, b, ...` along a
/// natural labelling.
pub fn all_posets(n: usize) -> Vec<FinitePoset> {
    assert!(n <= 6, "poset enumeration is limited to 6 elements");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let rel = |a: usize, b: usize| a < b && mask >> pair_index(n, a, b) & 1 == 1;
        let transitive = (0..n).all(|a| (a + 1..n).all(|b| !rel(a, b) || (b + 1..n).all(|c| !rel(b, c) || rel(a, c))));
        if !transitive {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|pi| {
                let mut code = 0u64;
                for a in 0..n {
                    for b in 0..n {
                        if rel(a, b) {
                            code |= 1 << (pi[a] * n + pi[b]);
                        }
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canonical) {
            let relations: Vec<(usize, usize)> = pairs.iter().copied().filter(|&(a, b)| rel(a, b)).collect();
            out.push(FinitePoset::from_relations((0..n).map(element_name), &relations).expect("acyclic"));
        }
    }
    out
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    // index of (a, b) in the row-major list of pairs a < b
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k.is_multiple_of(2) {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut cur, &mut out);
    out
}

/// Size limits for [`random_com`].
#[derive(Clone, Copy, Debug)]
pub struct RandomBudget {
    pub min_topes: usize,
    pub max_topes: usize,
    pub max_elements: usize,
    pub attempts: usize,
}

impl Default for RandomBudget {
    fn default() -> Self {
        RandomBudget { min_topes: 3, max_topes: 14, max_elements: 7, attempts: 2000 }
    }
}

fn random_block(rng: &mut ChaCha8Rng) -> SignSystem {
    match rng.gen_range(0..7) {
        0 => cycle_om(3).expect("n = 3"),
        1 => cycle_om(4).expect("n = 4"),
        2 => full_cube(1),
        3 => full_cube(2),
        4 => full_cube(3),
        _ => {
            let n = rng.gen_range(2..=4);
            let relations: Vec<(usize, usize)> =
                (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|_| rng.gen_bool(0.4)).collect();
            let p = FinitePoset::from_relations((0..n).map(element_name), &relations).expect("acyclic");
            ideals_com(&p).expect("small poset")
        }
    }
}

fn relabel(sys: &SignSystem, prefix: &str) -> SignSystem {
    let ground = GroundSet::new((0..sys.num_elements()).map(|i| format!("{prefix}{i}"))).expect("distinct names");
    sys.with_ground(ground).expect("same length")
}

/// A simple COM drawn deterministically from `seed`: a product of small
/// cycle OMs and cubes, cut down by random deletions, topal fibers and
/// reorientations, on ground set `e1..en`.
pub fn random_com(seed: u64, budget: RandomBudget) -> Result<SignSystem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget.attempts {
        let blocks = rng.gen_range(1..=3);
        let mut sys = relabel(&random_block(&mut rng), "t0_");
        for b in 1..blocks {
            sys = sys.product(&relabel(&random_block(&mut rng), &format!("t{b}_")))?;
        }
        for _ in 0..rng.gen_range(0..7) {
            let n = sys.num_elements();
            if n <= 1 {
                break;
            }
            let e = rng.gen_range(0..n);
            sys = match rng.gen_range(0..3) {
                0 => sys.deletion(ElementSet::singleton(e))?,
                1 => {
                    let (plus, minus) = if rng.gen_bool(0.5) {
                        (ElementSet::singleton(e), ElementSet::empty())
                    } else {
                        (ElementSet::empty(), ElementSet::singleton(e))
                    };
                    sys.topal_fiber(plus, minus)?
                }
                _ => {
                    let mut order: Vec<usize> = (0..n).collect();
                    order.shuffle(&mut rng);
                    let k = rng.gen_range(1..=n);
                    sys.reorient(order[..k].iter().copied().collect())?
                }
            };
        }
        let n = sys.num_elements();
        let t = sys.topes().len();
        if n == 0 || n > budget.max_elements || t < budget.min_topes.max(1) || t > budget.max_topes {
            continue;
        }
        if !sys.is_simple() || !sys.check_axioms().is_com() {
            continue;
        }
        return sys.with_ground(GroundSet::numbered(n));
    }
    Err(Error::GenerationFailed(budget.attempts))
}

/// Integer assignment helper: value of every signed and unsigned variable of
/// `n` elements drawn from `rng` in `[-bound, bound]`.
pub fn random_assignment(rng: &mut impl Rng, n: usize, bound: i64) -> std::collections::HashMap<Variable, BigInt> {
    let mut m = std::collections::HashMap::new();
    for e in 0..n {
        for v in [Variable::plus(e), Variable::minus(e), Variable::unsigned(e)] {
            m.insert(v, BigInt::from(rng.gen_range(-bound..=bound)));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_examples() {
        let c3 = cycle_om(3).unwrap();
        assert_eq!(c3.covectors().len(), 13);
        for s in ["+-0", "-+0", "+0-", "-0+", "0+-", "0-+"] {
            assert!(c3.contains(&sv(s)));
        }
        let topes: Vec<String> = c3.topes().iter().map(|t| t.to_string()).collect();
        assert_eq!(topes, ["++-", "+-+", "+--", "-++", "-+-", "--+"]);
        assert!(c3.is_cycle_system());
        let c4 = cycle_om(4).unwrap();
        assert_eq!(c4.covectors().len(), 51);
        assert!(c4.is_cycle_system());
        assert!(c4.check_axioms().is_om());
        assert!(cycle_om(2).is_err());
        for n in 3..7 {
            let c = cycle_om(n).unwrap();
            assert!(!c.is_tope(&SignVector::all_plus(n)));
            assert!(!c.is_tope(&SignVector::all_minus(n)));
            assert_eq!(c.topes().len(), (1 << n) - 2);
        }
    }

    #[test]
    fn cube_examples() {
        assert_eq!(full_cube(1).covectors().len(), 3);
        let c2 = full_cube(2);
        assert_eq!((c2.covectors().len(), c2.topes().len()), (9, 4));
        assert_eq!(full_cube(3).rank().unwrap(), 3);
        assert_eq!(full_cube(0).covectors().len(), 1);
    }

    #[test]
    fn poset_q_structure() {
        let q = poset_q();
        let names: Vec<String> = ideals(&q).iter().map(|i| q_set(&q, *i)).collect();
        let mut expected = ["", "a", "b", "ab", "be", "abc", "abd", "abe", "abcd", "abce", "abde", "abcde"].map(String::from).to_vec();
        let mut got = names.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
        let (ground, _) = ranking_ground(&q, None).unwrap();
        assert_eq!(ground.names(), ["ab", "ae", "cd", "ce", "de"]);
        let sizes: Vec<usize> = ["a", "b", "c", "d", "e"]
            .iter()
            .map(|l| antichains(&q).iter().filter(|a| a.contains(q.index_of(l).unwrap())).count())
            .collect();
        assert_eq!(sizes, [3, 2, 4, 4, 5]);
    }

    fn q_set(p: &FinitePoset, s: ElementSet) -> String {
        s.iter().map(|i| p.label(i)).collect()
    }

    #[test]
    fn ideals_com_examples() {
        let q = poset_q();
        let l = ideals_com(&q).unwrap();
        assert_eq!(l.topes().len(), 12);
        assert!(l.check_axioms().is_com());
        assert!(l.is_simple());
        let anti = ideals_com(&FinitePoset::antichain(3)).unwrap();
        assert_eq!(anti.covectors(), full_cube(3).with_ground(anti.ground().clone()).unwrap().covectors());
    }

    #[test]
    fn ranking_com_examples() {
        let q = poset_q();
        let r = ranking_com(&q, None).unwrap();
        assert_eq!(r.topes().len(), linear_extensions(&q).len());
        assert!(r.check_axioms().is_com());
        let two = ranking_com(&FinitePoset::antichain(2), None).unwrap();
        assert_eq!(two.covectors(), full_cube(1).covectors());
        let chain = ranking_com(&FinitePoset::chain(3), None).unwrap();
        assert_eq!(chain.topes().len(), 1);
        assert!(ranking_com(&q, Some(&[2, 0, 1, 3, 4])).is_err());
        let t = ranking_tope(&q, None, &[1, 4, 0, 3, 2]).unwrap();
        assert_eq!(t.to_string(), "-----");
    }

    #[test]
    fn closed_form_examples() {
        let single = ideals_closed_form(&FinitePoset::antichain(1));
        assert_eq!(single.factors().len(), 1);
        assert_eq!(single.factors()[0].1, 1);
        let (_, f) = ranking_closed_form(&FinitePoset::chain(4), None).unwrap();
        assert!(f.expand().is_one());
        let (_, f) = ranking_closed_form(&poset_q(), None).unwrap();
        assert_eq!(f.factors().len(), 6);
        assert!(f.factors().iter().all(|(_, k)| *k == 1));
        let (g, f) = ranking_closed_form_weighted(&poset_q(), None).unwrap();
        let exponent = |t: &str| f.exponent_of(&Poly::parse(t, &g).unwrap());
        assert_eq!(exponent("1 - x[ab]^2"), 6);
        assert_eq!(exponent("1 - x[ae]^2"), 2);
        assert_eq!(exponent("1 - x[cd]^2*x[ce]^2*x[de]^2"), 2);
    }

    #[test]
    fn contraction_of_antichain() {
        let q = poset_q();
        let ab: ElementSet = [0, 1].into_iter().collect();
        let c = contract_antichain(&q, ab).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(linear_extensions(&c).len(), 6);
        let chain = contract_antichain(&FinitePoset::antichain(3), ElementSet::full(3)).unwrap();
        assert_eq!(chain.len(), 1);
    }

    #[test]
    fn k4_topes() {
        let (g, t) = k4_subdivision_topes();
        assert_eq!(g.len(), 4);
        assert_eq!(t.len(), 10);
        assert_eq!(t[0].to_string(), "++++");
        assert_eq!(t[5].to_string(), "-+--");
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..6).map(|n| all_posets(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 5, 16, 63]);
    }

    #[test]
    fn extensions_and_antichains() {
        assert_eq!(linear_extensions(&FinitePoset::antichain(3)).len(), 6);
        assert_eq!(linear_extensions(&FinitePoset::chain(3)), vec![vec![0, 1, 2]]);
        // ordered set partitions of 3 elements
        assert_eq!(weak_extensions(&FinitePoset::antichain(3), 100).unwrap().len(), 13);
        assert!(weak_extensions(&FinitePoset::antichain(4), 10).is_err());
        assert_eq!(antichains(&FinitePoset::chain(3)).len(), 4);
    }

    #[test]
    fn random_is_deterministic_and_valid() {
        for seed in 0..10 {
            let a = random_com(seed, RandomBudget::default()).unwrap();
            let b = random_com(seed, RandomBudget::default()).unwrap();
            assert_eq!(a, b);
            assert!(a.topes().len() <= 14);
            assert!(a.check_axioms().is_com());
            assert!(a.is_simple());
        }
        let small = RandomBudget { max_topes: 10, ..RandomBudget::default() };
        assert!(random_com(3, small).unwrap().topes().len() <= 10);
        let fiber = cycle_om(3).unwrap().topal_fiber(ElementSet::singleton(0), ElementSet::empty()).unwrap();
        assert_eq!(fiber.topes().len(), 3);
    }
}
