//! Dense labeled matrices over [`Poly`] with exact products and determinants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Poly, Variable};
use crate::signvec::GroundSet;

/// Largest dimension accepted by [`PolyMatrix::cofactor_det`].
pub const COFACTOR_LIMIT: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    /// Row-major.
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(row_labels: Vec<String>, col_labels: Vec<String>, entries: Vec<Poly>) -> Result<Self> {
        if entries.len() != row_labels.len() * col_labels.len() {
            return Err(Error::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                row_labels.len(),
                col_labels.len()
            )));
        }
        Ok(PolyMatrix { row_labels, col_labels, entries })
    }

    pub fn from_fn(row_labels: Vec<String>, col_labels: Vec<String>, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let (r, c) = (row_labels.len(), col_labels.len());
        let mut entries = Vec::with_capacity(r * c);
        for i in 0..r {
            for j in 0..c {
                entries.push(f(i, j));
            }
        }
        PolyMatrix { row_labels, col_labels, entries }
    }

    pub fn identity(labels: Vec<String>) -> Self {
        PolyMatrix::from_fn(labels.clone(), labels, |i, j| if i == j { Poly::one() } else { Poly::zero() })
    }

    pub fn nrows(&self) -> usize {
        self.row_labels.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_labels.len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.ncols() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        let c = self.ncols();
        self.entries[i * c + j] = p;
    }

    /// Entry addressed by row and column label.
    pub fn entry(&self, row: &str, col: &str) -> Result<&Poly> {
        let i = position(&self.row_labels, row)?;
        let j = position(&self.col_labels, col)?;
        Ok(self.get(i, j))
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Poly]> {
        self.entries.chunks(self.ncols().max(1)).take(self.nrows())
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMatrix {
        PolyMatrix {
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.col_labels.clone(), self.row_labels.clone(), |i, j| self.get(j, i).clone())
    }

    /// `self · other`; the column labels of `self` must equal the row labels of `other`.
    pub fn mat_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.ncols() != other.nrows() {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows(),
                self.ncols(),
                other.nrows(),
                other.ncols()
            )));
        }
        if self.col_labels != other.row_labels {
            return Err(Error::LabelMismatch("column labels of the left factor differ from row labels of the right".into()));
        }
        let (n, m, p) = (self.nrows(), self.ncols(), other.ncols());
        let mut entries = vec![Poly::zero(); n * p];
        for i in 0..n {
            let out = &mut entries[i * p..(i + 1) * p];
            for k in 0..m {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for (j, slot) in out.iter_mut().enumerate() {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *slot = &*slot + &(a * b);
                    }
                }
            }
        }
        Ok(PolyMatrix { row_labels: self.row_labels.clone(), col_labels: other.col_labels.clone(), entries })
    }

    /// Rows `rows` and columns `cols`, by index.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        PolyMatrix::from_fn(
            rows.iter().map(|&i| self.row_labels[i].clone()).collect(),
            cols.iter().map(|&j| self.col_labels[j].clone()).collect(),
            |i, j| self.get(rows[i], cols[j]).clone(),
        )
    }

    /// Submatrix addressed by labels.
    pub fn select(&self, rows: &[String], cols: &[String]) -> Result<PolyMatrix> {
        let ri = rows.iter().map(|l| position(&self.row_labels, l)).collect::<Result<Vec<_>>>()?;
        let ci = cols.iter().map(|l| position(&self.col_labels, l)).collect::<Result<Vec<_>>>()?;
        Ok(self.submatrix(&ri, &ci))
    }

    /// Applies the same permutation to rows and columns: new index `k` holds old `order[k]`.
    pub fn permute(&self, order: &[usize]) -> Result<PolyMatrix> {
        if !self.is_square() {
            return Err(Error::Dimension("permute needs a square matrix".into()));
        }
        let mut seen = vec![false; self.nrows()];
        if order.len() != self.nrows() || order.iter().any(|&i| i >= seen.len() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidArgument("not a permutation of the matrix indices".into()));
        }
        Ok(self.submatrix(order, order))
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.nrows())
        } else {
            Err(Error::Dimension(format!("{}x{} matrix is not square", self.nrows(), self.ncols())))
        }
    }

    /// Determinant by fraction-free elimination.
    pub fn bareiss_det(&self) -> Result<Poly> {
        let n = self.require_square()?;
        let mut a: Vec<Vec<Poly>> = self.rows().map(|r| r.to_vec()).collect();
        if let Some(det) = crate::packed::bareiss(&a) {
            return Ok(det);
        }
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero());
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
                    let mut v = &row[j] * &pivot_row[k];
                    if !lead.is_zero() && !pivot_row[j].is_zero() {
                        v = &v - &(&lead * &pivot_row[j]);
                    }
                    row[j] = if prev.is_one() { v } else { v.exact_div(&prev)? };
                }
            }
            prev = a[k][k].clone();
        }
        let det = if n == 0 { Poly::one() } else { a[n - 1][n - 1].clone() };
        Ok(if negate { -det } else { det })
    }

    /// Determinant by Laplace expansion along the first row; independent of
    /// [`bareiss_det`](Self::bareiss_det) and limited to [`COFACTOR_LIMIT`].
    pub fn cofactor_det(&self) -> Result<Poly> {
        let n = self.require_square()?;
        if n > COFACTOR_LIMIT {
            return Err(Error::SizeGuard { what: "cofactor expansion dimension", size: n, limit: COFACTOR_LIMIT });
        }
        let mut memo = HashMap::new();
        Ok(self.minor(0, (1u32 << n) - 1, &mut memo))
    }

    /// Determinant of rows `row..n` against the columns in `cols`.
    fn minor(&self, row: usize, cols: u32, memo: &mut HashMap<u32, Poly>) -> Poly {
        if cols == 0 {
            return Poly::one();
        }
        if let Some(p) = memo.get(&cols) {
            return p.clone();
        }
        let mut acc = Poly::zero();
        let mut sign_negative = false;
        for j in 0..self.ncols() {
            if cols & (1 << j) == 0 {
                continue;
            }
            let a = self.get(row, j);
            if !a.is_zero() {
                let t = a * &self.minor(row + 1, cols & !(1 << j), memo);
                acc = if sign_negative { &acc - &t } else { &acc + &t };
            }
            sign_negative = !sign_negative;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// True iff every entry whose row block comes strictly before its column
    /// block is zero. `blocks` must partition the labels, which are shared by
    /// rows and columns.
    pub fn block_triangular_check(&self, blocks: &[Vec<String>]) -> Result<bool> {
        self.require_square()?;
        if self.row_labels != self.col_labels {
            return Err(Error::LabelMismatch("row and column labels differ".into()));
        }
        let mut block_of = vec![usize::MAX; self.nrows()];
        for (b, block) in blocks.iter().enumerate() {
            for l in block {
                let i = position(&self.row_labels, l)?;
                if block_of[i] != usize::MAX {
                    return Err(Error::InvalidArgument(format!("label {l} appears in two blocks")));
                }
                block_of[i] = b;
            }
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidArgument(format!("label {} is in no block", self.row_labels[i])));
        }
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                if block_of[i] < block_of[j] && !self.get(i, j).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.nrows()).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Evaluates every entry.
    pub fn eval_int(&self, assignment: &HashMap<Variable, BigInt>) -> Result<IntMatrix> {
        let mut rows = Vec::with_capacity(self.nrows());
        for r in self.rows() {
            rows.push(r.iter().map(|p| p.eval_int(assignment)).collect::<Result<Vec<_>>>()?);
        }
        Ok(IntMatrix { rows })
    }

    /// Variables occurring in any entry, sorted.
    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.entries.iter().flat_map(|p| p.variables()).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    pub fn to_json_value(&self, ground: &GroundSet) -> MatrixFile {
        MatrixFile {
            ground_set: ground.names().to_vec(),
            row_labels: self.row_labels.clone(),
            col_labels: self.col_labels.clone(),
            entries: self.rows().map(|r| r.iter().map(|p| p.to_string_with(ground)).collect()).collect(),
        }
    }

    pub fn to_json(&self, ground: &GroundSet) -> String {
        serde_json::to_string_pretty(&self.to_json_value(ground)).expect("matrix serializes")
    }

    /// Parses the JSON form; returns the ground set it names alongside the matrix.
    pub fn from_json(text: &str) -> Result<(GroundSet, PolyMatrix)> {
        let file: MatrixFile = serde_json::from_str(text)?;
        let ground = GroundSet::new(file.ground_set.iter().cloned())?;
        if file.entries.len() != file.row_labels.len() {
            return Err(Error::Dimension("entry rows do not match row labels".into()));
        }
        let mut entries = Vec::new();
        for row in &file.entries {
            if row.len() != file.col_labels.len() {
                return Err(Error::Dimension("entry row length does not match column labels".into()));
            }
            for s in row {
                entries.push(Poly::parse(s, &ground)?);
            }
        }
        let m = PolyMatrix::new(file.row_labels, file.col_labels, entries)?;
        Ok((ground, m))
    }
}

fn position(labels: &[String], l: &str) -> Result<usize> {
    labels.iter().position(|x| x == l).ok_or_else(|| Error::LabelMismatch(format!("no label {l}")))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub ground_set: Vec<String>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub entries: Vec<Vec<String>>,
}

/// A square or rectangular matrix of integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// Exact determinant by integer Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.rows.len();
        if self.rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("integer matrix is not square".into()));
        }
        let mut a = self.rows.clone();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            let (top, bottom) = a.split_at_mut(k + 1);
            let pivot_row = &top[k];
            for row in bottom.iter_mut() {
                for j in k + 1..n {
                    let v = &row[j] * &pivot_row[k] - &row[k] * &pivot_row[j];
                    row[j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = if n == 0 { BigInt::one() } else { a[n - 1][n - 1].clone() };
        Ok(if negate { -det } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::Monomial;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn g() -> GroundSet {
        GroundSet::new(["e", "f"]).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, &g()).unwrap()
    }

    fn labels(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("r{i}")).collect()
    }

    fn mat(rows: &[&[&str]]) -> PolyMatrix {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        let entries = rows.iter().flat_map(|r| r.iter().map(|s| p(s))).collect();
        PolyMatrix::new(labels(n), labels(m), entries).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let a = mat(&[&["1", "x[e]"], &["x[f]", "3"]]);
        let i = PolyMatrix::identity(labels(2));
        assert_eq!(a.mat_mul(&i).unwrap(), a);
        assert_eq!(i.mat_mul(&a).unwrap(), a);
        let row = PolyMatrix::new(vec!["r0".into()], labels(2), vec![p("1"), p("x[e]")]).unwrap();
        let col = PolyMatrix::new(labels(2), vec!["c".into()], vec![p("1"), p("x[f]")]).unwrap();
        assert_eq!(row.mat_mul(&col).unwrap().get(0, 0), &p("1 + x[e]*x[f]"));
        assert!(matches!(col.mat_mul(&col), Err(Error::Dimension(_))));
        let relabeled = PolyMatrix::new(vec!["a".into(), "b".into()], vec!["c".into()], vec![p("1"), p("1")]).unwrap();
        assert!(matches!(row.mat_mul(&relabeled), Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn determinant_examples() {
        let a = mat(&[&["1", "x[e]-"], &["x[e]+", "1"]]);
        assert_eq!(a.bareiss_det().unwrap(), p("1 - x[e]+*x[e]-"));
        assert_eq!(a.cofactor_det().unwrap(), p("1 - x[e]+*x[e]-"));
        let i = PolyMatrix::identity(labels(5));
        assert!(i.bareiss_det().unwrap().is_one());
        assert!(i.cofactor_det().unwrap().is_one());
        let one = mat(&[&["x[e] + 2"]]);
        assert_eq!(one.cofactor_det().unwrap(), p("x[e] + 2"));
        let swap = mat(&[&["0", "1"], &["1", "0"]]);
        assert_eq!(swap.bareiss_det().unwrap(), p("-1"));
        assert_eq!(swap.cofactor_det().unwrap(), p("-1"));
        let singular = mat(&[&["x[e]", "x[f]"], &["x[e]^2", "x[e]*x[f]"]]);
        assert!(singular.bareiss_det().unwrap().is_zero());
        let empty = PolyMatrix::identity(Vec::new());
        assert!(empty.bareiss_det().unwrap().is_one());
        let big = PolyMatrix::identity(labels(11));
        assert!(matches!(big.cofactor_det(), Err(Error::SizeGuard { .. })));
    }

    #[test]
    fn block_examples() {
        let d = mat(&[&["1", "0"], &["0", "x[e]"]]);
        let singletons = vec![vec!["r0".to_string()], vec!["r1".to_string()]];
        assert!(d.block_triangular_check(&singletons).unwrap());
        let u = mat(&[&["1", "x[e]"], &["0", "1"]]);
        assert!(!u.block_triangular_check(&singletons).unwrap());
        assert!(u.transpose().block_triangular_check(&singletons).unwrap());
        assert!(u.block_triangular_check(&[vec!["r0".to_string()]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let a = mat(&[&["1", "x[e]+*x[f]-"], &["-2*x[f]^3", "1"]]);
        let (gs, b) = PolyMatrix::from_json(&a.to_json(&g())).unwrap();
        assert_eq!(gs, g());
        assert_eq!(a, b);
    }

    #[test]
    fn permutation_preserves_determinant() {
        let a = mat(&[&["1", "x[e]", "0"], &["x[f]", "1", "x[e]"], &["2", "x[f]^2", "1"]]);
        let b = a.permute(&[2, 0, 1]).unwrap();
        assert_eq!(a.bareiss_det().unwrap(), b.bareiss_det().unwrap());
        assert_eq!(b.entry("r2", "r0").unwrap(), &p("2"));
        assert!(a.permute(&[0, 0, 1]).is_err());
    }

    fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> PolyMatrix {
        let vars = [Variable::plus(0), Variable::minus(0), Variable::unsigned(1)];
        PolyMatrix::from_fn(labels(n), labels(n), |_, _| {
            if rng.gen_bool(0.4) {
                return Poly::zero();
            }
            let m = Monomial::from_powers(vars.iter().map(|&v| (v, rng.gen_range(0..2))));
            Poly::term(m, BigInt::from(rng.gen_range(-2i64..3)))
        })
    }

    #[test]
    fn bareiss_agrees_with_cofactor_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 0..7 {
            for _ in 0..4 {
                let a = random_matrix(&mut rng, n);
                assert_eq!(a.bareiss_det().unwrap(), a.cofactor_det().unwrap());
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn determinant_is_multiplicative(seed in any::<u64>(), n in 1usize..5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n);
            let b = random_matrix(&mut rng, n);
            let ab = a.mat_mul(&b).unwrap();
            prop_assert_eq!(ab.bareiss_det().unwrap(), &a.bareiss_det().unwrap() * &b.bareiss_det().unwrap());
        }

        #[test]
        fn evaluation_commutes_with_determinant(seed in any::<u64>(), n in 1usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n);
            let mut asg = HashMap::new();
            for v in [Variable::plus(0), Variable::minus(0), Variable::unsigned(1)] {
                asg.insert(v, BigInt::from(rng.gen_range(-9i64..10)));
            }
            let det = a.bareiss_det().unwrap().eval_int(&asg).unwrap();
            prop_assert_eq!(a.eval_int(&asg).unwrap().det().unwrap(), det);
        }

        #[test]
        fn simultaneous_swaps_preserve_determinant(seed in any::<u64>(), n in 2usize..6) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, n);
            let mut order: Vec<usize> = (0..n).collect();
            order.swap(0, n - 1);
            prop_assert_eq!(a.permute(&order).unwrap().bareiss_det().unwrap(), a.bareiss_det().unwrap());
        }
    }
}
