//! Exact rank of sparse integer matrices.
//!
//! The fast path computes the rank modulo a random 62-bit prime. That value is
//! a lower bound for the rank over ℚ. When it is not already the maximum
//! possible rank, it is certified: the pivot columns found modulo `p` are
//! eliminated exactly (fraction-free, integer rows kept primitive), a basis of
//! the left kernel of those columns is solved for exactly, and every column of
//! the matrix is checked to be annihilated by it. If any check fails the whole
//! matrix is eliminated exactly.

use std::collections::{HashMap, HashSet};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

/// Sparse column vector: `(row, value)` pairs, strictly increasing rows, no zeros.
pub type SparseColumn = Vec<(usize, BigInt)>;

/// Sparse matrix over ℤ stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: Vec<SparseColumn>,
}

fn normalize_column(mut entries: Vec<(usize, BigInt)>) -> SparseColumn {
    entries.sort_by_key(|(r, _)| *r);
    let mut out: SparseColumn = Vec::with_capacity(entries.len());
    for (r, v) in entries {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.cols[i].push((i, BigInt::one()));
        }
        m
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::new(nrows, ncols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.cols[c].push((r, BigInt::from(v)));
                }
            }
        }
        m
    }

    /// Appends a column; duplicate rows are summed and zeros dropped.
    pub fn push_column(&mut self, entries: Vec<(usize, BigInt)>) {
        let col = normalize_column(entries);
        assert!(
            col.iter().all(|(r, _)| *r < self.rows),
            "row index out of range"
        );
        self.cols.push(col);
    }

    pub fn insert(&mut self, row: usize, col: usize, value: BigInt) {
        assert!(
            row < self.rows && col < self.cols.len(),
            "index out of range"
        );
        let mut entries = std::mem::take(&mut self.cols[col]);
        entries.retain(|(r, _)| *r != row);
        entries.push((row, value));
        self.cols[col] = normalize_column(entries);
    }

    pub fn get(&self, row: usize, col: usize) -> BigInt {
        self.cols[col]
            .binary_search_by_key(&row, |(r, _)| *r)
            .map(|i| self.cols[col][i].1.clone())
            .unwrap_or_else(|_| BigInt::zero())
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(usize, BigInt)] {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseColumn] {
        &self.cols
    }

    pub fn transpose(&self) -> SparseIntMatrix {
        let mut t = SparseIntMatrix::new(self.cols.len(), self.rows);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                t.cols[*r].push((c, v.clone()));
            }
        }
        t
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols.len()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col {
                d[*r][c] = v.clone();
            }
        }
        d
    }
}

fn content(v: &[(usize, BigInt)]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, x) in v {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading entry positive.
fn make_primitive(v: &mut SparseColumn) {
    if v.is_empty() {
        return;
    }
    let mut g = content(v);
    if v[0].1.sign() == Sign::Minus {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Zero columns removed, every column primitive, duplicates (up to sign and
/// scaling) removed. Rank is unchanged.
fn preprocess(m: &SparseIntMatrix) -> Vec<SparseColumn> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for col in &m.cols {
        if col.is_empty() {
            continue;
        }
        let mut c = col.clone();
        make_primitive(&mut c);
        if seen.insert(c.clone()) {
            out.push(c);
        }
    }
    out
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly chosen prime in `[2^61, 2^62)`.
pub fn random_prime_62() -> u64 {
    let mut rng = rand::thread_rng();
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime_u64(candidate) {
            return candidate;
        }
    }
}

fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Rank modulo `p` and the indices of the columns that carried a new pivot.
fn modular_echelon(cols: &[SparseColumn], rows: usize, p: u64) -> (usize, Vec<usize>) {
    // basis[r] = column vector with leading 1 at row r
    let mut basis: Vec<Option<Vec<(usize, u64)>>> = vec![None; rows];
    let mut pivots = Vec::new();
    let mut work = vec![0u64; rows];
    for (ci, col) in cols.iter().enumerate() {
        if pivots.len() == rows {
            break;
        }
        let mut lo = usize::MAX;
        for (r, v) in col {
            let x = reduce_mod(v, p);
            work[*r] = x;
            if x != 0 {
                lo = lo.min(*r);
            }
        }
        if lo == usize::MAX {
            continue;
        }
        let mut r = lo;
        while r < rows {
            let x = work[r];
            if x == 0 {
                r += 1;
                continue;
            }
            match &basis[r] {
                Some(b) => {
                    let f = p - x;
                    for &(br, bv) in b {
                        work[br] = (work[br] + mul_mod(f, bv, p)) % p;
                    }
                    r += 1;
                }
                None => {
                    let inv = pow_mod(x, p - 2, p);
                    let mut vec = Vec::new();
                    for (rr, slot) in work.iter_mut().enumerate().skip(r) {
                        if *slot != 0 {
                            vec.push((rr, mul_mod(*slot, inv, p)));
                            *slot = 0;
                        }
                    }
                    basis[r] = Some(vec);
                    pivots.push(ci);
                    break;
                }
            }
        }
        for w in work.iter_mut() {
            *w = 0;
        }
    }
    (pivots.len(), pivots)
}

/// Rank of `m` modulo the prime `p`; never exceeds the rank over ℚ.
pub fn rank_mod_p(m: &SparseIntMatrix, p: u64) -> usize {
    assert!(is_prime_u64(p), "{p} is not prime");
    modular_echelon(&m.cols, m.rows, p).0
}

/// `a*x - b*y` on sparse vectors.
fn combine(a: &BigInt, x: &[(usize, BigInt)], b: &BigInt, y: &[(usize, BigInt)]) -> SparseColumn {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        let (r, v) = if take_x {
            let e = (x[i].0, a * &x[i].1);
            i += 1;
            e
        } else if take_y {
            let e = (y[j].0, -(b * &y[j].1));
            j += 1;
            e
        } else {
            let e = (x[i].0, a * &x[i].1 - b * &y[j].1);
            i += 1;
            j += 1;
            e
        };
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    out
}

/// Row-echelon basis over ℤ built one column at a time. Each stored vector
/// is primitive and is keyed by its first nonzero row.
#[derive(Default)]
struct ExactEchelon {
    basis: HashMap<usize, SparseColumn>,
}

impl ExactEchelon {
    /// Reduces `v` against the basis; stores it if it is independent.
    fn insert(&mut self, mut v: SparseColumn) -> bool {
        make_primitive(&mut v);
        while let Some((lead, lv)) = v.first().cloned() {
            match self.basis.get(&lead) {
                Some(b) => {
                    let bv = &b[0].1;
                    let g = bv.gcd(&lv);
                    let (fa, fb) = (bv / &g, &lv / &g);
                    v = combine(&fa, &v, &fb, b);
                    make_primitive(&mut v);
                }
                None => {
                    self.basis.insert(lead, v);
                    return true;
                }
            }
        }
        false
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Integer basis of the vectors orthogonal to every stored vector.
    fn left_kernel(&self, rows: usize) -> Vec<SparseColumn> {
        let mut pivots: Vec<usize> = self.basis.keys().copied().collect();
        pivots.sort_unstable();
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        let mut kernel = Vec::new();
        for i in (0..rows).filter(|r| !pivot_set.contains(r)) {
            // y = e_i - sum_r c_r e_r with y . b_r = 0 for every pivot r;
            // b_r vanishes above r, so solve from the largest pivot down.
            let mut coef: HashMap<usize, BigRational> = HashMap::new();
            for &r in pivots.iter().rev() {
                let b = &self.basis[&r];
                let mut rhs = BigRational::zero();
                for (row, val) in b.iter().skip(1) {
                    if *row == i {
                        rhs += BigRational::from_integer(val.clone());
                    } else if let Some(c) = coef.get(row) {
                        rhs -= c * BigRational::from_integer(val.clone());
                    }
                }
                let c = rhs / BigRational::from_integer(b[0].1.clone());
                if !c.is_zero() {
                    coef.insert(r, c);
                }
            }
            let lcm = coef
                .values()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            let mut y: Vec<(usize, BigInt)> = coef
                .into_iter()
                .map(|(r, c)| {
                    (
                        r,
                        -(c * BigRational::from_integer(lcm.clone())).to_integer(),
                    )
                })
                .collect();
            y.push((i, lcm));
            kernel.push(normalize_column(y));
        }
        kernel
    }
}

fn dot(y: &[(usize, BigInt)], v: &[(usize, BigInt)]) -> BigInt {
    let (mut i, mut j) = (0, 0);
    let mut acc = BigInt::zero();
    while i < y.len() && j < v.len() {
        match y[i].0.cmp(&v[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                acc += &y[i].1 * &v[j].1;
                i += 1;
                j += 1;
            }
        }
    }
    acc
}

/// Rank over ℚ by fraction-free elimination of every column, no modular
/// shortcut.
pub fn rank_fraction_free(m: &SparseIntMatrix) -> usize {
    let mut ech = ExactEchelon::default();
    for col in preprocess(m) {
        if ech.rank() == m.rows {
            break;
        }
        ech.insert(col);
    }
    ech.rank()
}

/// How a rank was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RankCertificate {
    /// Empty matrix or no nonzero columns.
    Trivial,
    /// Modular rank already equals `min(rows, cols)`.
    FullRankModP,
    /// Modular rank confirmed by an exact left-kernel certificate.
    KernelCertified,
    /// Exact elimination of the whole matrix.
    FullElimination,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankReport {
    pub rank: usize,
    pub modular_rank: usize,
    pub prime: u64,
    pub certificate: RankCertificate,
}

/// Exact rank over ℚ, using a random 62-bit prime for the modular pass.
pub fn rank_exact(m: &SparseIntMatrix) -> usize {
    rank_exact_report(m, random_prime_62()).rank
}

/// Exact rank over ℚ with a caller-chosen prime for the modular pass.
pub fn rank_exact_report(m: &SparseIntMatrix, prime: u64) -> RankReport {
    let cols = preprocess(m);
    if cols.is_empty() {
        return RankReport {
            rank: 0,
            modular_rank: 0,
            prime,
            certificate: RankCertificate::Trivial,
        };
    }
    let (modular_rank, pivots) = modular_echelon(&cols, m.rows, prime);
    if modular_rank == m.rows.min(cols.len()) {
        return RankReport {
            rank: modular_rank,
            modular_rank,
            prime,
            certificate: RankCertificate::FullRankModP,
        };
    }
    let mut ech = ExactEchelon::default();
    for &ci in &pivots {
        let independent = ech.insert(cols[ci].clone());
        debug_assert!(
            independent,
            "columns independent mod p are independent over Q"
        );
    }
    let kernel = ech.left_kernel(m.rows);
    let certified = cols
        .iter()
        .all(|v| kernel.iter().all(|y| dot(y, v).is_zero()));
    if certified {
        return RankReport {
            rank: modular_rank,
            modular_rank,
            prime,
            certificate: RankCertificate::KernelCertified,
        };
    }
    for col in cols {
        if ech.rank() == m.rows {
            break;
        }
        ech.insert(col);
    }
    RankReport {
        rank: ech.rank(),
        modular_rank,
        prime,
        certificate: RankCertificate::FullElimination,
    }
}

/// Scales rational entries by the least common denominator of each column.
pub fn integer_column(
    entries: impl IntoIterator<Item = (usize, BigRational)>,
) -> Vec<(usize, BigInt)> {
    let entries: Vec<(usize, BigRational)> =
        entries.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let lcm = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    entries
        .into_iter()
        .map(|(r, v)| (r, (v * BigRational::from_integer(lcm.clone())).to_integer()))
        .collect()
}
