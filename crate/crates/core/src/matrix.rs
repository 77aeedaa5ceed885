//! Matrices of the fundamental representation
//! `rho(h_a) = e_{a,a}`, `rho(w_a) = sum_c e_{sigma_a(c), c}`.
//!
//! Tensor legs use the Kronecker ordering: `e_i (x) e_j` is basis vector
//! `i * n + j`, and `R_13` etc. are built by index arithmetic.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Mul, Neg};

use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraElement, TensorElement};
use crate::brace::YbMap;
use crate::limits::{LimitExceeded, Limits};
use crate::rational::{self, Rational};
use crate::report::{PropertyReport, Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension {dim} is not a perfect square")]
    NotPerfectSquare { dim: usize },
    #[error("dimensions differ: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("entry ({row}, {col}) outside a {dim}x{dim} matrix")]
    OutOfRange { row: usize, col: usize, dim: usize },
    #[error("duplicate entry ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("{what} disagrees with the image of its universal counterpart: {witness}")]
    RepresentationMismatch { what: &'static str, witness: Witness },
    #[error("braid operator differs from P R^F: {witness}")]
    BridgeMismatch { witness: Witness },
    #[error(transparent)]
    Limit(#[from] LimitExceeded),
}

/// Exact matrix entries: rationals, or rational functions of the spectral
/// parameters.
pub trait Entry: Clone + PartialEq + Zero + One + Add<Output = Self> + Mul<Output = Self> + Neg<Output = Self> {
    /// The entry as it appears in a witness.
    fn witness_string(&self) -> String;
}

impl Entry for Rational {
    fn witness_string(&self) -> String {
        rational::to_ratio_string(self)
    }
}

/// A square matrix stored by sparse rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    dim: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

/// A matrix with exact rational entries.
pub type ExactMatrix = SparseMatrix<Rational>;

impl<T: Entry> SparseMatrix<T> {
    pub fn zero(dim: usize) -> Self {
        SparseMatrix { dim, rows: vec![BTreeMap::new(); dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i].insert(i, T::one());
        }
        m
    }

    /// Builds from a dense row list.
    pub fn from_dense(rows: &[Vec<T>]) -> Result<Self, MatrixError> {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(MatrixError::DimensionMismatch { left: dim, right: row.len() });
            }
            for (j, q) in row.iter().enumerate() {
                m.set(i, j, q.clone());
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> T {
        self.rows[row].get(&col).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, value: T) {
        if value.is_zero() {
            self.rows[row].remove(&col);
        } else {
            self.rows[row].insert(col, value);
        }
    }

    pub fn add_at(&mut self, row: usize, col: usize, value: &T) {
        let current = self.rows[row].remove(&col).unwrap_or_else(T::zero);
        let sum = current + value.clone();
        if !sum.is_zero() {
            self.rows[row].insert(col, sum);
        }
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(&j, q)| (i, j, q)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn dense_rows(&self) -> Vec<Vec<T>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).collect()).collect()
    }

    fn same_dim(&self, other: &SparseMatrix<T>) -> Result<(), MatrixError> {
        if self.dim != other.dim {
            return Err(MatrixError::DimensionMismatch { left: self.dim, right: other.dim });
        }
        Ok(())
    }

    pub fn mul(&self, other: &SparseMatrix<T>) -> Result<SparseMatrix<T>, MatrixError> {
        self.same_dim(other)?;
        let mut out = Self::zero(self.dim);
        for (i, row) in self.rows.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.rows[k] {
                    out.add_at(i, j, &(a.clone() * b.clone()));
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &SparseMatrix<T>) -> Result<SparseMatrix<T>, MatrixError> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (i, j, q) in other.entries() {
            out.add_at(i, j, q);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseMatrix<T>) -> Result<SparseMatrix<T>, MatrixError> {
        self.add(&other.scale(&-T::one()))
    }

    pub fn scale(&self, q: &T) -> SparseMatrix<T> {
        let mut out = Self::zero(self.dim);
        if !q.is_zero() {
            for (i, j, v) in self.entries() {
                out.rows[i].insert(j, v.clone() * q.clone());
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix<T> {
        let mut out = Self::zero(self.dim);
        for (i, j, q) in self.entries() {
            out.rows[j].insert(i, q.clone());
        }
        out
    }

    /// `self (x) other`.
    pub fn kron(&self, other: &SparseMatrix<T>) -> SparseMatrix<T> {
        let d = other.dim;
        let mut out = Self::zero(self.dim * d);
        for (i, j, a) in self.entries() {
            for (k, l, b) in other.entries() {
                out.rows[i * d + k].insert(j * d + l, a.clone() * b.clone());
            }
        }
        out
    }

    /// The first entry, in row-major order, where the matrices differ.
    pub fn first_difference(&self, other: &SparseMatrix<T>) -> Option<Witness> {
        if self.dim != other.dim {
            return Some(Witness::note(format!("dimensions {} and {}", self.dim, other.dim)));
        }
        let zero = T::zero();
        for i in 0..self.dim {
            let cols: BTreeSet<usize> = self.rows[i].keys().chain(other.rows[i].keys()).copied().collect();
            for j in cols {
                let l = self.rows[i].get(&j).unwrap_or(&zero);
                let r = other.rows[i].get(&j).unwrap_or(&zero);
                if l != r {
                    return Some(Witness::Entry {
                        row: i,
                        col: j,
                        left: l.witness_string(),
                        right: r.witness_string(),
                    });
                }
            }
        }
        None
    }

    /// Embeds a matrix acting on `legs.len()` tensor legs of an
    /// `n`-dimensional space into `V^{(x) k}`, acting on `legs` in that order
    /// (`R_21` is `embed(R, n, 2, &[1, 0])`).
    pub fn embed(&self, n: usize, k: usize, legs: &[usize]) -> SparseMatrix<T> {
        assert_eq!(n.pow(legs.len() as u32), self.dim, "matrix does not act on the given legs");
        let free: Vec<usize> = (0..k).filter(|l| !legs.contains(l)).collect();
        let index = |local: usize, others: usize| {
            let mut digits = vec![0; k];
            let mut rest = local;
            for &leg in legs.iter().rev() {
                digits[leg] = rest % n;
                rest /= n;
            }
            let mut rest = others;
            for &leg in free.iter().rev() {
                digits[leg] = rest % n;
                rest /= n;
            }
            digits.iter().fold(0, |acc, &d| acc * n + d)
        };
        let mut out = Self::zero(n.pow(k as u32));
        for others in 0..n.pow(free.len() as u32) {
            for (i, j, q) in self.entries() {
                out.rows[index(i, others)].insert(index(j, others), q.clone());
            }
        }
        out
    }

    /// Conjugation by the flip of legs `i` and `j`.
    pub fn flip_legs(&self, n: usize, k: usize, i: usize, j: usize) -> SparseMatrix<T> {
        let mut legs: Vec<usize> = (0..k).collect();
        legs.swap(i, j);
        self.embed(n, k, &legs)
    }
}

impl ExactMatrix {
    /// The matrix as a set of unit positions, if every entry is 0 or 1.
    pub fn to_zero_one(&self) -> Option<SparseZOMatrix> {
        let one = Rational::one();
        let mut entries = BTreeSet::new();
        for (i, j, q) in self.entries() {
            if *q != one {
                return None;
            }
            entries.insert((i, j));
        }
        Some(SparseZOMatrix { dim: self.dim, entries })
    }
}

/// A square 0/1 matrix given by its unit positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SparseZOMatrix {
    dim: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl SparseZOMatrix {
    pub fn new(dim: usize, positions: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, MatrixError> {
        let mut entries = BTreeSet::new();
        for (row, col) in positions {
            if row >= dim || col >= dim {
                return Err(MatrixError::OutOfRange { row, col, dim });
            }
            if !entries.insert((row, col)) {
                return Err(MatrixError::DuplicateEntry { row, col });
            }
        }
        Ok(SparseZOMatrix { dim, entries })
    }

    pub fn identity(dim: usize) -> Self {
        SparseZOMatrix { dim, entries: (0..dim).map(|i| (i, i)).collect() }
    }

    /// `P = sum_{a,b} e_{a,b} (x) e_{b,a}` on `V (x) V` with `dim V = n`.
    pub fn flip(n: usize) -> Self {
        SparseZOMatrix {
            dim: n * n,
            entries: (0..n).flat_map(|a| (0..n).map(move |b| (a * n + b, b * n + a))).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.entries.contains(&(row, col))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_exact(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(self.dim);
        for &(i, j) in &self.entries {
            m.rows[i].insert(j, Rational::one());
        }
        m
    }

    /// `perm[row] = col` when the matrix has exactly one 1 per row and column.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.entries.len() != self.dim {
            return None;
        }
        let mut perm = vec![usize::MAX; self.dim];
        let mut seen = vec![false; self.dim];
        for &(i, j) in &self.entries {
            if perm[i] != usize::MAX || seen[j] {
                return None;
            }
            perm[i] = j;
            seen[j] = true;
        }
        Some(perm)
    }

    fn from_permutation(perm: &[usize]) -> Self {
        SparseZOMatrix { dim: perm.len(), entries: perm.iter().enumerate().map(|(i, &j)| (i, j)).collect() }
    }

    /// Matrix product. Permutation matrices compose in `O(dim)`; anything
    /// else goes through exact arithmetic.
    pub fn mul(&self, other: &SparseZOMatrix) -> Result<ExactMatrix, MatrixError> {
        if let (Some(p), Some(q)) = (self.as_permutation(), other.as_permutation()) {
            if p.len() != q.len() {
                return Err(MatrixError::DimensionMismatch { left: p.len(), right: q.len() });
            }
            let composed: Vec<usize> = p.iter().map(|&j| q[j]).collect();
            return Ok(Self::from_permutation(&composed).to_exact());
        }
        self.to_exact().mul(&other.to_exact())
    }
}

fn perfect_root(dim: usize) -> Result<usize, MatrixError> {
    let n = (dim as f64).sqrt().round() as usize;
    if n * n == dim {
        Ok(n)
    } else {
        Err(MatrixError::NotPerfectSquare { dim })
    }
}

/// Row and column of the single unit entry of `rho(h_a w_g)`:
/// `e_{a,a} rho(w_g) = e_{a, sigma_g^{-1}(a)}`.
pub fn rho_basis_image(ctx: &AlgebraContext, x: usize) -> (usize, usize) {
    let n = ctx.n();
    let (a, g) = (x / n, x % n);
    (a, ctx.map().sigma_inv(g, a))
}

pub fn rho(ctx: &AlgebraContext, x: &AlgebraElement) -> ExactMatrix {
    rho_tensor(ctx, x)
}

/// `rho^{(x) k}` applied to an order-`k` tensor.
pub fn rho_tensor(ctx: &AlgebraContext, x: &TensorElement) -> ExactMatrix {
    rho_tensor_with(ctx, x, |i| rho_basis_image(ctx, i))
}

fn rho_tensor_with(ctx: &AlgebraContext, x: &TensorElement, image: impl Fn(usize) -> (usize, usize)) -> ExactMatrix {
    let n = ctx.n();
    let mut out = ExactMatrix::zero(n.pow(x.order() as u32));
    for (digits, q) in x.terms() {
        let (mut row, mut col) = (0, 0);
        for d in digits {
            let (r, c) = image(d);
            row = row * n + r;
            col = col * n + c;
        }
        out.add_at(row, col, q);
    }
    out
}

/// `rho(xy) = rho(x) rho(y)` on all basis pairs.
pub fn rho_is_homomorphism(ctx: &AlgebraContext) -> PropertyReport {
    rho_is_homomorphism_with(ctx, |x| rho_basis_image(ctx, x))
}

/// The homomorphism check for a caller-supplied image of each basis element
/// (a single unit entry).
pub fn rho_is_homomorphism_with(ctx: &AlgebraContext, image: impl Fn(usize) -> (usize, usize)) -> PropertyReport {
    let mut report = PropertyReport::new();
    report.timed("matrix.rho_homomorphism", "rho(xy) = rho(x) rho(y)", || {
        let dim = ctx.dim();
        let images: Vec<(usize, usize)> = (0..dim).map(&image).collect();
        let n = ctx.n();
        let unit = |(r, c): (usize, usize)| {
            let mut m = ExactMatrix::zero(n);
            m.set(r, c, Rational::one());
            m
        };
        for x in 0..dim {
            for y in 0..dim {
                let left = match ctx.basis_mul(x, y) {
                    Some(p) => unit(images[p]),
                    None => ExactMatrix::zero(n),
                };
                let right = unit(images[x]).mul(&unit(images[y])).expect("same dimension");
                if let Some(w) = left.first_difference(&right) {
                    return Some(Witness::note(format!("basis pair ({}, {}): {}", x, y, w)));
                }
            }
        }
        None
    });
    report
}

/// The transposed representation `x -> rho(x)^T`, an anti-homomorphism;
/// used as a negative control.
pub fn transposed_rho_image(ctx: &AlgebraContext, x: usize) -> (usize, usize) {
    let (r, c) = rho_basis_image(ctx, x);
    (c, r)
}

/// `F = sum_{a,b} e_{a,a} (x) e_{b, sigma_a(b)}`.
pub fn matrix_f(map: &YbMap) -> SparseZOMatrix {
    let n = map.n();
    let positions = (0..n).flat_map(|a| (0..n).map(move |b| (a * n + b, a * n + map.sigma(a, b))));
    SparseZOMatrix::new(n * n, positions).expect("distinct positions")
}

/// `F^{-1} = sum_{a,b} e_{a,a} (x) e_{sigma_a(b), b}`.
pub fn matrix_f_inv(map: &YbMap) -> SparseZOMatrix {
    let n = map.n();
    let positions = (0..n).flat_map(|a| (0..n).map(move |b| (a * n + map.sigma(a, b), a * n + b)));
    SparseZOMatrix::new(n * n, positions).expect("distinct positions")
}

/// `R^F = sum_{a,b} e_{b, sigma_a(b)} (x) e_{a, tau_b(a)}`.
pub fn matrix_rf(map: &YbMap) -> SparseZOMatrix {
    let n = map.n();
    let positions = (0..n).flat_map(|a| (0..n).map(move |b| (b * n + a, map.sigma(a, b) * n + map.tau(b, a))));
    SparseZOMatrix::new(n * n, positions).expect("distinct positions")
}

/// `matrix_f` after checking it against `(rho (x) rho)(F)`.
pub fn matrix_f_checked(ctx: &AlgebraContext) -> Result<SparseZOMatrix, MatrixError> {
    let f = matrix_f(ctx.map());
    if let Some(witness) = f.to_exact().first_difference(&rho_tensor(ctx, &ctx.build_f())) {
        return Err(MatrixError::RepresentationMismatch { what: "F", witness });
    }
    Ok(f)
}

/// `matrix_rf` after checking it against `(rho (x) rho)(R^F)`.
pub fn matrix_rf_checked(ctx: &AlgebraContext) -> Result<SparseZOMatrix, MatrixError> {
    let r = matrix_rf(ctx.map());
    let universal = ctx
        .build_rf()
        .map_err(|e| MatrixError::RepresentationMismatch { what: "R^F", witness: Witness::note(e.to_string()) })?;
    if let Some(witness) = r.to_exact().first_difference(&rho_tensor(ctx, &universal)) {
        return Err(MatrixError::RepresentationMismatch { what: "R^F", witness });
    }
    Ok(r)
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on `V^{(x) 3}`.
pub fn check_matrix_ybe(r: &ExactMatrix) -> Result<Verdict, MatrixError> {
    let n = perfect_root(r.dim())?;
    let r12 = r.embed(n, 3, &[0, 1]);
    let r13 = r.embed(n, 3, &[0, 2]);
    let r23 = r.embed(n, 3, &[1, 2]);
    let left = r12.mul(&r13)?.mul(&r23)?;
    let right = r23.mul(&r13)?.mul(&r12)?;
    Ok(Verdict::from_witness(left.first_difference(&right)))
}

/// The YBE for a 0/1 matrix; permutation matrices compose as permutations.
pub fn check_matrix_ybe_zo(r: &SparseZOMatrix) -> Result<Verdict, MatrixError> {
    let n = perfect_root(r.dim())?;
    let Some(perm) = r.as_permutation() else {
        return check_matrix_ybe(&r.to_exact());
    };
    // Leg permutations on V^{(x) 3}, as maps row -> col.
    let leg = |legs: [usize; 2]| -> Vec<usize> {
        let mut out = vec![0; n * n * n];
        for (idx, slot) in out.iter_mut().enumerate() {
            let mut d = [idx / (n * n), (idx / n) % n, idx % n];
            let local = perm[d[legs[0]] * n + d[legs[1]]];
            d[legs[0]] = local / n;
            d[legs[1]] = local % n;
            *slot = (d[0] * n + d[1]) * n + d[2];
        }
        out
    };
    let (p12, p13, p23) = (leg([0, 1]), leg([0, 2]), leg([1, 2]));
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { p.iter().map(|&j| q[j]).collect() };
    let left = compose(&compose(&p12, &p13), &p23);
    let right = compose(&compose(&p23, &p13), &p12);
    Ok(Verdict::from_witness(left.iter().zip(&right).enumerate().find_map(|(row, (&l, &r))| {
        (l != r).then(|| Witness::Entry {
            row,
            col: l.min(r),
            left: if l < r { "1/1" } else { "0/1" }.to_string(),
            right: if l < r { "0/1" } else { "1/1" }.to_string(),
        })
    })))
}

/// Exactly one entry equal to 1 in every row and column, all others 0.
pub fn check_combinatorial(r: &ExactMatrix) -> bool {
    r.to_zero_one().and_then(|m| m.as_permutation()).is_some()
}

/// `R (P R P) = 1`, i.e. `R_12 R_21 = 1`.
pub fn check_reversibility(r: &ExactMatrix) -> Result<bool, MatrixError> {
    let n = perfect_root(r.dim())?;
    let r21 = r.embed(n, 2, &[1, 0]);
    Ok(r.mul(&r21)?.first_difference(&ExactMatrix::identity(r.dim())).is_none())
}

/// The map `e_a (x) e_b -> e_{sigma_a(b)} (x) e_{tau_b(a)}` with rows indexed
/// by the input and columns by the output, so that it equals `P R^F`.
pub fn braid_operator(m: &YbMap) -> SparseZOMatrix {
    let n = m.n();
    let positions = (0..n).flat_map(|a| {
        (0..n).map(move |b| {
            let (x, y) = m.r(a, b);
            (a * n + b, x * n + y)
        })
    });
    SparseZOMatrix::new(n * n, positions).expect("bijective map")
}

/// `braid_operator` after checking it against `P R^F`.
pub fn braid_operator_checked(map: &YbMap) -> Result<SparseZOMatrix, MatrixError> {
    let b = braid_operator(map);
    let prf = SparseZOMatrix::flip(map.n()).mul(&matrix_rf(map))?;
    if let Some(witness) = b.to_exact().first_difference(&prf) {
        return Err(MatrixError::BridgeMismatch { witness });
    }
    Ok(b)
}

/// `rho(w_a) e_{c,b} = e_{sigma_a(c), sigma_a(b)} rho(w_a)` for all `a, b, c`.
pub fn check_w_exchange(ctx: &AlgebraContext) -> Option<Witness> {
    let n = ctx.n();
    let m = ctx.map();
    for a in 0..n {
        let w = rho(ctx, &ctx.w(a));
        for b in 0..n {
            for c in 0..n {
                let mut e = ExactMatrix::zero(n);
                e.set(c, b, Rational::one());
                let mut e2 = ExactMatrix::zero(n);
                e2.set(m.sigma(a, c), m.sigma(a, b), Rational::one());
                let left = w.mul(&e).expect("same dimension");
                let right = e2.mul(&w).expect("same dimension");
                if let Some(wit) = left.first_difference(&right) {
                    return Some(Witness::note(format!("(a, b, c) = ({}, {}, {}): {}", a, b, c, wit)));
                }
            }
        }
    }
    None
}

/// The representation of the `k`-fold twist with the recursion, closed-form
/// and exchange-law checks.
pub fn matrix_nfold_twist(
    ctx: &AlgebraContext,
    k: usize,
    limits: &Limits,
) -> Result<(SparseZOMatrix, PropertyReport), MatrixError> {
    let n = ctx.n();
    if !(2..=4).contains(&k) {
        return Err(MatrixError::Limit(LimitExceeded { what: "n-fold twist order", requested: k, ceiling: 4 }));
    }
    let size = n.checked_pow(k as u32).unwrap_or(usize::MAX);
    if size > limits.max_tensor_dim {
        return Err(MatrixError::Limit(LimitExceeded {
            what: "representation space dimension",
            requested: size,
            ceiling: limits.max_tensor_dim,
        }));
    }
    let map = ctx.map();
    let brace = ctx.brace();
    let mut report = PropertyReport::new();
    let f = matrix_f(map).to_exact();

    let mut twist = f.clone();
    for j in 3..=k {
        let prev_left = twist.embed(n, j, &(0..j - 1).collect::<Vec<_>>());
        let prev_right = twist.embed(n, j, &(1..j).collect::<Vec<_>>());
        let left = prev_left.mul(&rho_tensor(ctx, &ctx.twist_rest_last(j)))?;
        let right = prev_right.mul(&rho_tensor(ctx, &ctx.twist_first_rest(j)))?;
        report.record(
            &format!("matrix_nfold.k{}.bracketings_{}", k, j),
            "F_2...n F_1,2...n = F_12...n-1 F_12...n-1,n",
            left.first_difference(&right),
        );
        twist = left;
    }

    // e_{a1,a1} (x) e_{a2, sigma_{a1}(a2)} (x) ... (x) e_{ak, sigma_{a1 o ... o a_{k-1}}(ak)}
    let mut closed = ExactMatrix::zero(size);
    for code in 0..size {
        let mut a = vec![0; k];
        let mut rest = code;
        for slot in (0..k).rev() {
            a[slot] = rest % n;
            rest /= n;
        }
        let mut prefix = 0;
        let mut col = 0;
        for &x in &a {
            col = col * n + map.sigma(prefix, x);
            prefix = brace.circ(prefix, x);
        }
        closed.set(code, col, Rational::one());
    }
    report.record(
        &format!("matrix_nfold.k{}.closed_form", k),
        "F_12...n = sum e_a1a1 (x) e_{a2, sigma_a1(a2)} (x) ... (x) e_{an, sigma_{a1 o ... o a_{n-1}}(an)}",
        twist.first_difference(&closed),
    );
    let rf = matrix_rf(map).to_exact();
    for j in 0..k - 1 {
        let left = twist.flip_legs(n, k, j, j + 1);
        let right = rf.embed(n, k, &[j, j + 1]).mul(&twist)?;
        report.record(
            &format!("matrix_nfold.k{}.exchange_{}", k, j + 1),
            "F_12...j+1 j...n = R^F_j,j+1 F_12...j j+1...n",
            left.first_difference(&right),
        );
    }
    let zo = twist.to_zero_one().ok_or_else(|| MatrixError::RepresentationMismatch {
        what: "n-fold twist",
        witness: Witness::note("entries outside {0, 1}"),
    })?;
    Ok((zo, report))
}

/// Every matrix-level check for one algebra.
pub fn verify_matrix_suites(ctx: &AlgebraContext, limits: &Limits) -> PropertyReport {
    let mut report = rho_is_homomorphism(ctx);
    let universal_ok = ctx.n() <= limits.max_universal_order;
    let map = ctx.map();
    let rf = matrix_rf(map);
    if universal_ok {
        report.timed("matrix.f_equals_rho_f", "(rho (x) rho) F = sum e_aa (x) e_{b, sigma_a(b)}", || {
            matrix_f_checked(ctx).err().map(|e| Witness::note(e.to_string()))
        });
        report.timed(
            "matrix.rf_equals_rho_rf",
            "(rho (x) rho) R^F = sum e_{b, sigma_a(b)} (x) e_{a, tau_b(a)}",
            || matrix_rf_checked(ctx).err().map(|e| Witness::note(e.to_string())),
        );
    } else {
        let reason = format!("universal layer capped at order {}", limits.max_universal_order);
        report.skip("matrix.f_equals_rho_f", "(rho (x) rho) F = F_mat", reason.clone());
        report.skip("matrix.rf_equals_rho_rf", "(rho (x) rho) R^F = R^F_mat", reason);
    }
    report.timed("matrix.f_inverse", "F_mat F_mat^-1 = 1", || {
        let prod = matrix_f(map).mul(&matrix_f_inv(map)).ok()?;
        prod.first_difference(&ExactMatrix::identity(map.n() * map.n()))
    });
    report.timed("matrix.ybe", "R_12 R_13 R_23 = R_23 R_13 R_12", || match check_matrix_ybe_zo(&rf) {
        Ok(v) => v.witness().cloned(),
        Err(e) => Some(Witness::note(e.to_string())),
    });
    report.timed("matrix.combinatorial", "one unit entry per row and column", || {
        (!check_combinatorial(&rf.to_exact())).then(|| Witness::note("R^F is not combinatorial"))
    });
    report.timed("matrix.reversibility", "R^F_12 R^F_21 = 1", || match check_reversibility(&rf.to_exact()) {
        Ok(true) => None,
        Ok(false) => Some(Witness::note("R^F_12 R^F_21 != 1")),
        Err(e) => Some(Witness::note(e.to_string())),
    });
    report.timed("matrix.braid_bridge", "braid operator = P R^F", || {
        braid_operator_checked(map).err().map(|e| Witness::note(e.to_string()))
    });
    report.timed("matrix.braid_square", "(braid operator)^2 = 1 iff the map is involutive", || {
        let b = braid_operator(map);
        let square_is_one = b.mul(&b).ok()?.first_difference(&ExactMatrix::identity(b.dim())).is_none();
        (square_is_one != crate::brace::is_involutive(map))
            .then(|| Witness::note(format!("square is identity: {}", square_is_one)))
    });
    report
        .timed("matrix.w_exchange", "rho(w_a) e_{c,b} = e_{sigma_a(c), sigma_a(b)} rho(w_a)", || check_w_exchange(ctx));
    for k in 3..=4 {
        if !universal_ok {
            report.skip(
                &format!("matrix_nfold.order_{}", k),
                "n-fold twist in the representation",
                format!("universal layer capped at order {}", limits.max_universal_order),
            );
            continue;
        }
        match matrix_nfold_twist(ctx, k, limits) {
            Ok((_, r)) => report.extend(r),
            Err(MatrixError::Limit(e)) => {
                report.skip(&format!("matrix_nfold.order_{}", k), "n-fold twist", e.to_string())
            }
            Err(e) => {
                report.record(&format!("matrix_nfold.order_{}", k), "n-fold twist", Some(Witness::note(e.to_string())))
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::algebra_from_brace;
    use crate::brace::{derive_sigma_tau, enumerate_braces, is_involutive, SkewBrace};
    use crate::finite::GroupTable;

    fn q(v: i64) -> Rational {
        rational::int(v)
    }

    fn ctx_of(b: &SkewBrace) -> AlgebraContext {
        algebra_from_brace(b).unwrap()
    }

    #[test]
    fn rho_examples() {
        let t = ctx_of(&SkewBrace::trivial(GroupTable::cyclic(2)));
        let h1 = rho(&t, &t.h(1));
        assert_eq!(h1.entries().map(|(i, j, _)| (i, j)).collect::<Vec<_>>(), vec![(1, 1)]);
        assert_eq!(rho(&t, &t.unit()), ExactMatrix::identity(2));
        let r = ctx_of(&SkewBrace::z4_radical());
        let w1 = rho(&r, &r.w(1)).to_zero_one().unwrap();
        assert_eq!(w1.as_permutation().unwrap(), vec![0, 3, 2, 1]);
    }

    #[test]
    fn homomorphism_and_transposed_control() {
        let t = ctx_of(&SkewBrace::trivial(GroupTable::cyclic(2)));
        assert!(rho_is_homomorphism(&t).all_passed());
        let r = ctx_of(&SkewBrace::z4_radical());
        assert!(rho_is_homomorphism(&r).all_passed());
        let bad = rho_is_homomorphism_with(&r, |x| transposed_rho_image(&r, x));
        let check = bad.get("matrix.rho_homomorphism").unwrap();
        assert!(!check.passed());
        assert!(check.witness.is_some());
    }

    #[test]
    fn rf_examples() {
        for n in 1..=4 {
            let b = SkewBrace::trivial(GroupTable::cyclic(n));
            let m = derive_sigma_tau(&b).unwrap();
            assert_eq!(matrix_rf(&m), SparseZOMatrix::identity(n * n));
            assert_eq!(matrix_f(&m), SparseZOMatrix::identity(n * n));
            assert_eq!(braid_operator(&m), SparseZOMatrix::flip(n));
        }
        let ctx = ctx_of(&SkewBrace::z4_radical());
        let rf = matrix_rf_checked(&ctx).unwrap();
        assert_eq!(rf.dim(), 16);
        assert!(rf.as_permutation().is_some());
        // a = b = 1: e_{1,3} (x) e_{1,3}
        assert!(rf.contains(4 + 1, 3 * 4 + 3));
        assert!(check_combinatorial(&rf.to_exact()));
        assert!(check_reversibility(&rf.to_exact()).unwrap());
        matrix_f_checked(&ctx).unwrap();
        braid_operator_checked(ctx.map()).unwrap();
    }

    #[test]
    fn ybe_on_simple_matrices() {
        for n in 1..=3 {
            assert!(check_matrix_ybe(&ExactMatrix::identity(n * n)).unwrap().is_pass());
            assert!(check_matrix_ybe(&SparseZOMatrix::flip(n).to_exact()).unwrap().is_pass());
            assert!(check_matrix_ybe_zo(&SparseZOMatrix::flip(n)).unwrap().is_pass());
        }
        let one_plus_p = ExactMatrix::identity(4).add(&SparseZOMatrix::flip(2).to_exact()).unwrap();
        assert!(!check_combinatorial(&one_plus_p));
        assert_eq!(one_plus_p.get(0, 0), q(2));
        assert!(check_combinatorial(&ExactMatrix::identity(4)));
        assert!(check_reversibility(&ExactMatrix::identity(4)).unwrap());
        assert!(matches!(check_matrix_ybe(&ExactMatrix::identity(3)), Err(MatrixError::NotPerfectSquare { dim: 3 })));
    }

    proptest::proptest! {
        #[test]
        fn permutation_ybe_paths_agree(n in 2usize..4, seed in proptest::collection::vec(0usize..1000, 16)) {
            // A seeded shuffle of the n^2 basis vectors.
            let dim = n * n;
            let mut perm: Vec<usize> = (0..dim).collect();
            for i in (1..dim).rev() {
                perm.swap(i, seed[i % seed.len()] % (i + 1));
            }
            let m = SparseZOMatrix::new(dim, perm.iter().enumerate().map(|(i, &j)| (i, j))).unwrap();
            let fast = check_matrix_ybe_zo(&m).unwrap();
            let slow = check_matrix_ybe(&m.to_exact()).unwrap();
            proptest::prop_assert_eq!(fast.is_pass(), slow.is_pass());
        }
    }

    #[test]
    fn embed_conventions() {
        let p = SparseZOMatrix::flip(2).to_exact();
        assert_eq!(p.embed(2, 2, &[1, 0]), p);
        let mut e01 = ExactMatrix::zero(2);
        e01.set(0, 1, q(1));
        let id = ExactMatrix::identity(2);
        let two_legs = e01.kron(&id);
        assert_eq!(two_legs.embed(2, 3, &[0, 1]), e01.kron(&id).kron(&id));
        assert_eq!(two_legs.embed(2, 3, &[0, 2]), e01.kron(&id).kron(&id));
        assert_eq!(two_legs.embed(2, 3, &[1, 2]), id.kron(&e01).kron(&id));
        assert_eq!(e01.embed(2, 3, &[2]), id.kron(&id).kron(&e01));
    }

    #[test]
    fn duplicate_positions_rejected() {
        assert_eq!(
            SparseZOMatrix::new(2, [(0, 0), (0, 0)]).unwrap_err(),
            MatrixError::DuplicateEntry { row: 0, col: 0 }
        );
        assert!(SparseZOMatrix::new(2, [(0, 2)]).is_err());
    }

    #[test]
    fn nfold_examples() {
        let limits = Limits::default();
        let t = ctx_of(&SkewBrace::trivial(GroupTable::cyclic(2)));
        for k in 2..=4 {
            let (m, report) = matrix_nfold_twist(&t, k, &limits).unwrap();
            assert!(report.all_passed(), "{}", report);
            assert_eq!(m, SparseZOMatrix::identity(1 << k));
        }
        let r = ctx_of(&SkewBrace::z4_radical());
        let (m, report) = matrix_nfold_twist(&r, 4, &limits).unwrap();
        assert!(report.all_passed(), "{}", report);
        assert!(report.passed("matrix_nfold.k4.exchange_3"));
        assert_eq!(m.dim(), 256);
        assert!(matrix_nfold_twist(&r, 5, &limits).is_err());
    }

    #[test]
    fn suites_for_all_braces_to_four() {
        let limits = Limits::default();
        for n in 1..=4 {
            for b in enumerate_braces(n, true, &limits).unwrap() {
                let ctx = ctx_of(&b);
                let report = verify_matrix_suites(&ctx, &limits);
                assert!(report.all_passed(), "{}", report);
                let b2 = braid_operator(ctx.map());
                let sq = b2.mul(&b2).unwrap() == ExactMatrix::identity(n * n);
                assert_eq!(sq, is_involutive(ctx.map()));
            }
        }
    }

    #[test]
    fn matrix_layer_scales_to_order_six() {
        let limits = Limits::default();
        for n in 5..=6 {
            let mut checked = 0;
            for b in enumerate_braces(n, true, &limits).unwrap() {
                let Ok(map) = derive_sigma_tau(&b) else {
                    assert!(!b.is_brace());
                    continue;
                };
                let rf = matrix_rf(&map);
                assert!(check_matrix_ybe_zo(&rf).unwrap().is_pass());
                assert!(check_combinatorial(&rf.to_exact()));
                assert!(check_reversibility(&rf.to_exact()).unwrap());
                assert_eq!(braid_operator_checked(&map).unwrap(), braid_operator(&map));
                checked += 1;
            }
            assert!(checked > 0);
        }
    }
}
