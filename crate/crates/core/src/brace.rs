//! Skew braces, the set-theoretic solution `r(a, b) = (sigma_a(b), tau_b(a))`
//! they induce, and exhaustive checks of the brace-level identities.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::finite::{enumerate_group_tables, GroupTable, ValidationFailure};
use crate::limits::{LimitExceeded, Limits};
use crate::report::{PropertyReport, Verdict, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("additive table has order {add}, multiplicative table has order {mul}")]
    SizeMismatch { add: usize, mul: usize },
    #[error("distributivity fails at ({a}, {b}, {c})")]
    DistributivityFailure { a: usize, b: usize, c: usize },
    #[error("{which} table: {source}")]
    Group { which: &'static str, source: ValidationFailure },
}

/// Two group structures `+` and `o` on `0..n` sharing the neutral `0` with
/// `a o (b + c) = a o b - a + a o c`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SkewBrace {
    add: GroupTable,
    mul: GroupTable,
    abelian: bool,
}

/// Accepts the pair iff distributivity holds on every triple; otherwise the
/// lexicographically first failing triple is returned.
pub fn validate_brace(add: GroupTable, mul: GroupTable) -> Result<SkewBrace, BraceError> {
    if add.n() != mul.n() {
        return Err(BraceError::SizeMismatch { add: add.n(), mul: mul.n() });
    }
    if let Some((a, b, c)) = first_distributivity_failure(&add, &mul) {
        return Err(BraceError::DistributivityFailure { a, b, c });
    }
    let abelian = add.is_abelian();
    Ok(SkewBrace { add, mul, abelian })
}

fn first_distributivity_failure(add: &GroupTable, mul: &GroupTable) -> Option<(usize, usize, usize)> {
    let n = add.n();
    for a in 0..n {
        let neg_a = add.inverse(a);
        for b in 0..n {
            let ab = mul.op(a, b);
            for c in 0..n {
                let lhs = mul.op(a, add.op(b, c));
                let rhs = add.op(add.op(ab, neg_a), mul.op(a, c));
                if lhs != rhs {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

impl SkewBrace {
    pub fn from_rows(add: &[Vec<usize>], mul: &[Vec<usize>]) -> Result<Self, BraceError> {
        let add = GroupTable::from_rows(add).map_err(|source| BraceError::Group { which: "add", source })?;
        let mul = GroupTable::from_rows(mul).map_err(|source| BraceError::Group { which: "mul", source })?;
        validate_brace(add, mul)
    }

    pub fn from_fns(
        n: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, BraceError> {
        let add = GroupTable::from_fn(n, add).map_err(|source| BraceError::Group { which: "add", source })?;
        let mul = GroupTable::from_fn(n, mul).map_err(|source| BraceError::Group { which: "mul", source })?;
        validate_brace(add, mul)
    }

    /// The trivial brace `a o b = a + b`.
    pub fn trivial(add: GroupTable) -> Self {
        validate_brace(add.clone(), add).expect("a group is a brace over itself")
    }

    /// `Z_4` with `a o b = a + b + 2ab`.
    pub fn z4_radical() -> Self {
        Self::from_fns(4, |a, b| (a + b) % 4, |a, b| (a + b + 2 * a * b) % 4).expect("radical brace")
    }

    pub fn n(&self) -> usize {
        self.add.n()
    }

    pub fn add(&self) -> &GroupTable {
        &self.add
    }

    pub fn mul(&self) -> &GroupTable {
        &self.mul
    }

    #[inline]
    pub fn plus(&self, a: usize, b: usize) -> usize {
        self.add.op(a, b)
    }

    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.mul.op(a, b)
    }

    /// Inverse in `(X, +)`.
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.add.inverse(a)
    }

    /// Inverse in `(X, o)`.
    #[inline]
    pub fn circ_inv(&self, a: usize) -> usize {
        self.mul.inverse(a)
    }

    /// True when `(X, +)` is abelian, i.e. this is a brace rather than a
    /// properly skew one.
    pub fn is_brace(&self) -> bool {
        self.abelian
    }

    /// Relabels the elements by a permutation fixing `0`.
    pub fn relabel(&self, perm: &[usize]) -> SkewBrace {
        let n = self.n();
        let mut inv = vec![0; n];
        for (a, &p) in perm.iter().enumerate() {
            inv[p] = a;
        }
        let add = GroupTable::from_fn(n, |x, y| perm[self.plus(inv[x], inv[y])]).expect("relabeled group");
        let mul = GroupTable::from_fn(n, |x, y| perm[self.circ(inv[x], inv[y])]).expect("relabeled group");
        SkewBrace { add, mul, abelian: self.abelian }
    }
}

/// Every pair of group tables on `0..n` (neutral `0`) satisfying
/// distributivity, ordered by additive table and then multiplicative table.
/// With `skew = false` only abelian additive tables are used.
pub fn enumerate_braces(n: usize, skew: bool, limits: &Limits) -> Result<Vec<SkewBrace>, LimitExceeded> {
    let tables = enumerate_group_tables(n, limits)?;
    let mut out = Vec::new();
    for add in tables.iter().filter(|g| skew || g.is_abelian()) {
        for mul in &tables {
            if let Ok(b) = validate_brace(add.clone(), mul.clone()) {
                out.push(b);
            }
        }
    }
    Ok(out)
}

/// One representative per isomorphism class, found by minimizing over all
/// relabelings that fix `0`. Feasible for `n <= 6`.
pub fn isomorphism_classes(braces: &[SkewBrace]) -> Vec<SkewBrace> {
    let mut seen = BTreeSet::new();
    let mut reps = Vec::new();
    for b in braces {
        let canon = canonical_form(b);
        if seen.insert(canon) {
            reps.push(b.clone());
        }
    }
    reps
}

fn canonical_form(b: &SkewBrace) -> (Vec<usize>, Vec<usize>) {
    let n = b.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    loop {
        let r = b.relabel(&perm);
        let key = (r.add.table().cells().to_vec(), r.mul.table().cells().to_vec());
        if best.as_ref().map_or(true, |cur| key < *cur) {
            best = Some(key);
        }
        if !next_permutation(&mut perm[1..]) {
            break;
        }
    }
    best.expect("at least the identity relabeling")
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has {found} cells, expected {expected}")]
    Shape { expected: usize, found: usize },
    #[error("value {value} is outside 0..{n}")]
    OutOfRange { value: usize, n: usize },
    #[error("sigma_{a} is not a bijection")]
    SigmaNotBijective { a: usize },
    #[error("tau_{b} is not a bijection")]
    TauNotBijective { b: usize },
    #[error("supplied tau_{b}({a}) disagrees with the value derived from sigma")]
    TauMismatch { b: usize, a: usize },
}

/// The lookup tables of `r(a, b) = (sigma_a(b), tau_b(a))`.
///
/// Construction only checks that every `sigma_a` and `tau_b` is a
/// permutation; the left-inverse law is a separate check so that corrupted
/// maps can be built and analysed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YbMap {
    n: usize,
    sigma: Vec<usize>,
    tau: Vec<usize>,
    sigma_inv: Vec<usize>,
}

fn permutation_inverse(row: &[usize]) -> Option<Vec<usize>> {
    let n = row.len();
    let mut inv = vec![usize::MAX; n];
    for (i, &v) in row.iter().enumerate() {
        if v >= n || inv[v] != usize::MAX {
            return None;
        }
        inv[v] = i;
    }
    Some(inv)
}

impl YbMap {
    /// `sigma[a][b] = sigma_a(b)` and `tau[b][a] = tau_b(a)`.
    pub fn new(n: usize, sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self, MapError> {
        for t in [&sigma, &tau] {
            if t.len() != n * n {
                return Err(MapError::Shape { expected: n * n, found: t.len() });
            }
            if let Some(&value) = t.iter().find(|&&v| v >= n) {
                return Err(MapError::OutOfRange { value, n });
            }
        }
        let mut sigma_inv = Vec::with_capacity(n * n);
        for a in 0..n {
            let inv = permutation_inverse(&sigma[a * n..(a + 1) * n]).ok_or(MapError::SigmaNotBijective { a })?;
            sigma_inv.extend(inv);
        }
        for b in 0..n {
            permutation_inverse(&tau[b * n..(b + 1) * n]).ok_or(MapError::TauNotBijective { b })?;
        }
        Ok(YbMap { n, sigma, tau, sigma_inv })
    }

    /// Builds the map from `sigma` alone, with
    /// `tau_b(a) = sigma^{-1}_{sigma_a(b)}(a)`.
    pub fn from_sigma(n: usize, sigma: Vec<usize>) -> Result<Self, MapError> {
        if sigma.len() != n * n {
            return Err(MapError::Shape { expected: n * n, found: sigma.len() });
        }
        let mut sigma_inv = Vec::with_capacity(n * n);
        for a in 0..n {
            let row = &sigma[a * n..(a + 1) * n];
            if let Some(&value) = row.iter().find(|&&v| v >= n) {
                return Err(MapError::OutOfRange { value, n });
            }
            sigma_inv.extend(permutation_inverse(row).ok_or(MapError::SigmaNotBijective { a })?);
        }
        let mut tau = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let s = sigma[a * n + b];
                tau[b * n + a] = sigma_inv[s * n + a];
            }
        }
        Self::new(n, sigma, tau)
    }

    /// Like [`YbMap::from_sigma`] and additionally requires the supplied
    /// `tau` to equal the derived one.
    pub fn from_tables_checked(n: usize, sigma: Vec<usize>, tau: Vec<usize>) -> Result<Self, MapError> {
        let derived = Self::from_sigma(n, sigma)?;
        if tau.len() != n * n {
            return Err(MapError::Shape { expected: n * n, found: tau.len() });
        }
        for b in 0..n {
            for a in 0..n {
                if tau[b * n + a] != derived.tau(b, a) {
                    return Err(MapError::TauMismatch { b, a });
                }
            }
        }
        Ok(derived)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn sigma(&self, a: usize, b: usize) -> usize {
        self.sigma[a * self.n + b]
    }

    #[inline]
    pub fn tau(&self, b: usize, a: usize) -> usize {
        self.tau[b * self.n + a]
    }

    /// `sigma_a^{-1}(x)`.
    #[inline]
    pub fn sigma_inv(&self, a: usize, x: usize) -> usize {
        self.sigma_inv[a * self.n + x]
    }

    #[inline]
    pub fn r(&self, a: usize, b: usize) -> (usize, usize) {
        (self.sigma(a, b), self.tau(b, a))
    }

    pub fn sigma_rows(&self) -> Vec<Vec<usize>> {
        self.sigma.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn tau_rows(&self) -> Vec<Vec<usize>> {
        self.tau.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// First `(a, b)` violating `sigma_{sigma_a(b)}(tau_b(a)) = a`.
    pub fn left_inverse_violation(&self) -> Option<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.sigma(self.sigma(a, b), self.tau(b, a)) != a)
    }
}

/// `sigma_a(b) = -a + a o b`, with `tau` from the left-inverse law.
pub fn derive_sigma_tau(b: &SkewBrace) -> Result<YbMap, MapError> {
    let n = b.n();
    let mut sigma = Vec::with_capacity(n * n);
    for a in 0..n {
        for x in 0..n {
            sigma.push(b.plus(b.neg(a), b.circ(a, x)));
        }
    }
    let map = YbMap::from_sigma(n, sigma)?;
    debug_assert!(map.left_inverse_violation().is_none());
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BraidReport {
    Pass,
    Counterexample { triple: [usize; 3], left: [usize; 3], right: [usize; 3] },
}

impl BraidReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, BraidReport::Pass)
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            BraidReport::Pass => Verdict::Pass,
            BraidReport::Counterexample { triple, left, right } => {
                Verdict::Counterexample(Witness::note(format!("at {:?}: {:?} vs {:?}", triple, left, right)))
            }
        }
    }
}

/// `(r x id)(id x r)(r x id) = (id x r)(r x id)(id x r)` on all triples.
pub fn check_braid(m: &YbMap) -> BraidReport {
    let n = m.n();
    let r12 = |[x, y, z]: [usize; 3]| {
        let (p, q) = m.r(x, y);
        [p, q, z]
    };
    let r23 = |[x, y, z]: [usize; 3]| {
        let (p, q) = m.r(y, z);
        [x, p, q]
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = [a, b, c];
                let left = r12(r23(r12(t)));
                let right = r23(r12(r23(t)));
                if left != right {
                    return BraidReport::Counterexample { triple: t, left, right };
                }
            }
        }
    }
    BraidReport::Pass
}

/// `r(r(a, b)) = (a, b)` for all pairs.
pub fn is_involutive(m: &YbMap) -> bool {
    let n = m.n();
    (0..n).all(|a| {
        (0..n).all(|b| {
            let (x, y) = m.r(a, b);
            m.r(x, y) == (a, b)
        })
    })
}

fn first_pair(n: usize, mut bad: impl FnMut(usize, usize) -> bool) -> Option<Witness> {
    for a in 0..n {
        for b in 0..n {
            if bad(a, b) {
                return Some(Witness::indices(&[a, b]));
            }
        }
    }
    None
}

fn first_triple(n: usize, mut bad: impl FnMut(usize, usize, usize) -> bool) -> Option<Witness> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if bad(a, b, c) {
                    return Some(Witness::indices(&[a, b, c]));
                }
            }
        }
    }
    None
}

/// Exhaustive checks of the identities relating `+`, `o`, `sigma` and `tau`.
pub fn check_brace_theorem_properties(b: &SkewBrace) -> PropertyReport {
    let n = b.n();
    let mut report = PropertyReport::new();
    let m = match derive_sigma_tau(b) {
        Ok(m) => m,
        Err(e) => {
            report.record("brace.derive_sigma_tau", "sigma_a(b) = -a + a o b", Some(Witness::note(e.to_string())));
            return report;
        }
    };
    report.timed("brace.sigma_tau_product", "sigma_a(b) o tau_b(a) = -a + a o b + a", || {
        first_pair(n, |x, y| b.circ(m.sigma(x, y), m.tau(y, x)) != b.plus(b.plus(b.neg(x), b.circ(x, y)), x))
    });
    report.timed("brace.sigma_action", "sigma_a(sigma_b(c)) = sigma_{a o b}(c)", || {
        first_triple(n, |x, y, z| m.sigma(x, m.sigma(y, z)) != m.sigma(b.circ(x, y), z))
    });
    report.timed("brace.distributivity", "a o (b + c) = a o b - a + a o c", || {
        first_distributivity_failure(b.add(), b.mul()).map(|(x, y, z)| Witness::indices(&[x, y, z]))
    });
    report.timed("brace.neutral_fixing", "sigma_a(0) = 0, tau_0(a) = a, sigma_0(a) = a, tau_a(0) = 0", || {
        (0..n)
            .find(|&a| m.sigma(a, 0) != 0 || m.tau(0, a) != a || m.sigma(0, a) != a || m.tau(a, 0) != 0)
            .map(|a| Witness::indices(&[a]))
    });
    let factorization = || first_pair(n, |x, y| b.circ(x, y) != b.circ(m.sigma(x, y), m.tau(y, x)));
    let anchor = "a o b = sigma_a(b) o tau_b(a)";
    if b.is_brace() {
        report.timed("brace.abelian_factorization", anchor, factorization);
    } else {
        let holds = factorization().is_none();
        report.skip(
            "brace.abelian_factorization",
            anchor,
            format!("additive group is not abelian; identity holds: {}", holds),
        );
    }
    report
}
