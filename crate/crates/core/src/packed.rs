//! Polynomials with exponent vectors packed into a `u128` and `i128`
//! coefficients, used as a fast path for fraction-free elimination. Every
//! operation reports overflow as `None` so callers can fall back to [`Poly`].

use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::polyring::{Monomial, Poly, Variable};

/// Layout of the packed exponent vector. Each variable owns `width` bits
/// followed by one guard bit; earlier variables sit in more significant
/// fields so integer order on keys is a lexicographic monomial order.
#[derive(Clone, Debug)]
pub(crate) struct Packing {
    vars: Vec<Variable>,
    field: u32,
    guards: u128,
}

impl Packing {
    /// A packing for `vars` that holds exponents up to `max_degree`.
    pub(crate) fn new(vars: Vec<Variable>, max_degree: u64) -> Option<Self> {
        let width = 64 - max_degree.max(1).leading_zeros();
        let field = width + 1;
        if vars.len() as u32 * field > 128 {
            return None;
        }
        let mut guards = 0u128;
        for i in 0..vars.len() {
            guards |= 1u128 << (Self::shift_of(vars.len(), field, i) + width);
        }
        Some(Packing { vars, field, guards })
    }

    fn shift_of(n: usize, field: u32, i: usize) -> u32 {
        (n - 1 - i) as u32 * field
    }

    fn pack(&self, m: &Monomial) -> Option<u128> {
        let mut key = 0u128;
        let limit = 1u128 << (self.field - 1);
        for (v, e) in m.powers() {
            let i = self.vars.binary_search(v).ok()?;
            if u128::from(*e) >= limit {
                return None;
            }
            key += u128::from(*e) << Self::shift_of(self.vars.len(), self.field, i);
        }
        Some(key)
    }

    fn unpack(&self, key: u128) -> Monomial {
        let mask = (1u128 << self.field) - 1;
        Monomial::from_powers(self.vars.iter().enumerate().filter_map(|(i, v)| {
            let e = (key >> Self::shift_of(self.vars.len(), self.field, i)) & mask;
            (e > 0).then_some((*v, e as u32))
        }))
    }

    pub(crate) fn to_packed(&self, p: &Poly) -> Option<PackedPoly> {
        let mut terms = p
            .terms()
            .iter()
            .map(|(m, c)| Some((self.pack(m)?, c.to_i128()?)))
            .collect::<Option<Vec<_>>>()?;
        terms.sort_unstable_by_key(|t| std::cmp::Reverse(t.0));
        Some(PackedPoly { terms })
    }

    pub(crate) fn to_poly(&self, p: &PackedPoly) -> Poly {
        Poly::from_terms(p.terms.iter().map(|(k, c)| (self.unpack(*k), BigInt::from(*c))))
    }

    fn divides(&self, a: u128, b: u128) -> bool {
        ((a | self.guards) - b) & self.guards == self.guards
    }

    fn fits(&self, key: u128) -> bool {
        key & self.guards == 0
    }
}

/// Terms sorted by decreasing key, coefficients nonzero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct PackedPoly {
    terms: Vec<(u128, i128)>,
}

/// The next product term of one stream `coef * key_i * other_j`.
#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct Head {
    key: u128,
    stream: usize,
    pos: usize,
}

impl PackedPoly {
    fn one() -> Self {
        PackedPoly { terms: vec![(0, 1)] }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    pub(crate) fn neg(&self) -> Option<PackedPoly> {
        let terms = self.terms.iter().map(|(k, c)| Some((*k, c.checked_neg()?))).collect::<Option<_>>()?;
        Some(PackedPoly { terms })
    }

    /// `Σ s_i f_i g_i` for the given `(f_i, g_i, s_i)`, merged through a heap
    /// of term streams so no unsorted product is ever materialized.
    fn sum_of_products(parts: &[(&PackedPoly, &PackedPoly, i128)], packing: &Packing) -> Option<PackedPoly> {
        // one stream per term of each left factor
        let mut streams: Vec<(u128, i128, usize)> = Vec::new();
        let mut heap = BinaryHeap::new();
        for (pi, (f, g, sign)) in parts.iter().enumerate() {
            let Some(&(gk, _)) = g.terms.first() else { continue };
            for &(fk, fc) in &f.terms {
                let key = fk + gk;
                if !packing.fits(key) {
                    return None;
                }
                heap.push(Head { key, stream: streams.len(), pos: 0 });
                streams.push((fk, fc.checked_mul(*sign)?, pi));
            }
        }
        let mut terms: Vec<(u128, i128)> = Vec::new();
        while let Some(Head { key, stream, pos }) = heap.pop() {
            let (fk, fc, pi) = streams[stream];
            let g = parts[pi].1;
            let c = fc.checked_mul(g.terms[pos].1)?;
            match terms.last_mut() {
                Some(last) if last.0 == key => last.1 = last.1.checked_add(c)?,
                _ => {
                    if terms.last().is_some_and(|t| t.1 == 0) {
                        terms.pop();
                    }
                    terms.push((key, c));
                }
            }
            if let Some(&(gk, _)) = g.terms.get(pos + 1) {
                let key = fk + gk;
                if !packing.fits(key) {
                    return None;
                }
                heap.push(Head { key, stream, pos: pos + 1 });
            }
        }
        if terms.last().is_some_and(|t| t.1 == 0) {
            terms.pop();
        }
        Some(PackedPoly { terms })
    }

    #[cfg(test)]
    fn mul(&self, other: &PackedPoly, packing: &Packing) -> Option<PackedPoly> {
        Self::sum_of_products(&[(self, other, 1)], packing)
    }

    /// `a d - b c`.
    pub(crate) fn cross(a: &PackedPoly, d: &PackedPoly, b: &PackedPoly, c: &PackedPoly, packing: &Packing) -> Option<PackedPoly> {
        Self::sum_of_products(&[(a, d, 1), (b, c, -1)], packing)
    }

    #[cfg(test)]
    fn sub(&self, other: &PackedPoly, packing: &Packing) -> Option<PackedPoly> {
        let one = PackedPoly::one();
        Self::sum_of_products(&[(self, &one, 1), (other, &one, -1)], packing)
    }

    /// The exact quotient, `None` on a nonzero remainder or overflow.
    /// Quotient terms are found in decreasing order while the products of
    /// earlier quotient terms with the divisor tail stream through a heap.
    pub(crate) fn exact_div(&self, divisor: &PackedPoly, packing: &Packing) -> Option<PackedPoly> {
        let &(lk, lc) = divisor.terms.first()?;
        if divisor.terms.len() == 1 {
            let terms = self
                .terms
                .iter()
                .map(|(k, c)| {
                    if !packing.divides(*k, lk) || c % lc != 0 {
                        return None;
                    }
                    Some((k - lk, c / lc))
                })
                .collect::<Option<_>>()?;
            return Some(PackedPoly { terms });
        }
        let tail = &divisor.terms;
        let mut quotient: Vec<(u128, i128)> = Vec::new();
        let mut heap: BinaryHeap<Head> = BinaryHeap::new();
        let mut next = 0;
        loop {
            let from_a = self.terms.get(next).map(|t| t.0);
            let from_heap = heap.peek().map(|h| h.key);
            let key = match (from_a, from_heap) {
                (None, None) => break,
                (a, h) => a.max(h).expect("one side present"),
            };
            let mut c: i128 = 0;
            if from_a == Some(key) {
                c = self.terms[next].1;
                next += 1;
            }
            while heap.peek().is_some_and(|h| h.key == key) {
                let Head { stream, pos, .. } = heap.pop().expect("peeked");
                let (qk, qc) = quotient[stream];
                c = c.checked_sub(qc.checked_mul(tail[pos].1)?)?;
                if let Some(&(dk, _)) = tail.get(pos + 1) {
                    if !packing.fits(qk + dk) {
                        return None;
                    }
                    heap.push(Head { key: qk + dk, stream, pos: pos + 1 });
                }
            }
            if c == 0 {
                continue;
            }
            if !packing.divides(key, lk) || c % lc != 0 {
                return None;
            }
            let (qk, qc) = (key - lk, c / lc);
            let k1 = qk + tail[1].0;
            if !packing.fits(k1) {
                return None;
            }
            heap.push(Head { key: k1, stream: quotient.len(), pos: 1 });
            quotient.push((qk, qc));
        }
        Some(PackedPoly { terms: quotient })
    }
}

/// Fraction-free elimination on packed entries; `None` when some
/// intermediate does not fit the packing.
pub(crate) fn bareiss(entries: &[Vec<Poly>]) -> Option<Poly> {
    let n = entries.len();
    let mut vars: Vec<Variable> = entries.iter().flatten().flat_map(|p| p.variables()).collect();
    vars.sort();
    vars.dedup();
    // a minor has degree in v at most the total degree of v over the rows
    // holding it; products of two minors bound every intermediate
    let mut row_degree = vec![0u64; vars.len()];
    for row in entries {
        let mut here = vec![0u64; vars.len()];
        for p in row {
            for (m, _) in p.terms() {
                for (v, e) in m.powers() {
                    let i = vars.binary_search(v).expect("collected above");
                    here[i] = here[i].max(u64::from(*e));
                }
            }
        }
        for (total, h) in row_degree.iter_mut().zip(here) {
            *total += h;
        }
    }
    let packing = Packing::new(vars, 2 * row_degree.into_iter().max().unwrap_or(0))?;
    let mut a: Vec<Vec<PackedPoly>> = entries
        .iter()
        .map(|row| row.iter().map(|p| packing.to_packed(p)).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let mut negate = false;
    let mut prev = PackedPoly::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Some(Poly::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        let (top, bottom) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[k]);
            for j in k + 1..n {
                let v = PackedPoly::cross(&row[j], &pivot_row[k], &lead, &pivot_row[j], &packing)?;
                row[j] = if prev.is_one() { v } else { v.exact_div(&prev, &packing)? };
            }
        }
        prev = a[k][k].clone();
    }
    let det = if n == 0 { PackedPoly::one() } else { a[n - 1][n - 1].clone() };
    let det = if negate { det.neg()? } else { det };
    Some(packing.to_poly(&det))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signvec::GroundSet;

    #[test]
    fn round_trip_and_arithmetic() {
        let g = GroundSet::numbered(3);
        let p = Poly::parse("1 - 2*x[e1]+*x[e2]- + x[e3]^3", &g).unwrap();
        let q = Poly::parse("x[e1]+ + 3", &g).unwrap();
        let mut vars: Vec<Variable> = p.variables().into_iter().chain(q.variables()).collect();
        vars.sort();
        vars.dedup();
        let packing = Packing::new(vars, 16).unwrap();
        let (pp, qq) = (packing.to_packed(&p).unwrap(), packing.to_packed(&q).unwrap());
        assert_eq!(packing.to_poly(&pp), p);
        let prod = pp.mul(&qq, &packing).unwrap();
        assert_eq!(packing.to_poly(&prod), &p * &q);
        assert_eq!(prod.exact_div(&qq, &packing).unwrap(), pp);
        assert_eq!(packing.to_poly(&pp.sub(&qq, &packing).unwrap()), &p - &q);
        assert!(pp.exact_div(&qq, &packing).is_none());
    }

    #[test]
    fn overflow_detected() {
        let packing = Packing::new(vec![Variable::unsigned(0)], 2).unwrap();
        let g = GroundSet::numbered(1);
        let x = packing.to_packed(&Poly::parse("x[e1]", &g).unwrap()).unwrap();
        let x2 = x.mul(&x, &packing).unwrap();
        assert!(x2.mul(&x, &packing).is_some());
        assert!(x2.mul(&x2, &packing).is_none());
        assert!(Packing::new((0..40).map(Variable::plus).collect(), 1000).is_none());
    }
}
