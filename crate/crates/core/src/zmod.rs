//! Exact linear algebra over `Z/m` for arbitrary `m ≥ 2`.
//!
//! Systems are solved by integer gcd pivoting on lifted representatives, so
//! nothing here assumes `m` is prime or a prime power.  Submodules of
//! `(Z/m)^n` are kept in Howell normal form, which is canonical: two
//! submodules are equal iff their forms are identical, and membership is
//! decidable by reduction against the form.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ZmError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended gcd on lifted integers: returns `(g, s, t)` with `g = s·a + t·b`.
fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn addm(a: u64, b: u64, m: u64) -> u64 {
    let s = a + b;
    if s >= m {
        s - m
    } else {
        s
    }
}

pub fn subm(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + m - b
    }
}

pub fn mulm(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn negm(a: u64, m: u64) -> u64 {
    if a == 0 {
        0
    } else {
        m - a
    }
}

/// Representative of a residue class, reduced into `[0, m)`.
pub fn norm(a: i128, m: u64) -> u64 {
    let m = m as i128;
    (((a % m) + m) % m) as u64
}

/// Coefficients `(aa, bb, cc, dd)` of a determinant-one transform sending
/// the pair `(a, b)` to `(gcd(a, b), 0)`:
/// `new_x = aa·x + bb·y`, `new_y = cc·x + dd·y`.
///
/// When `a | b` this is a plain Euclidean elimination that keeps the pivot
/// row fixed; otherwise the Bézout transform strictly decreases the pivot,
/// which is what makes the elimination loops below terminate.
fn gcd_transform(a: u64, b: u64, m: u64) -> (u64, u64, u64, u64) {
    debug_assert!(a != 0 && b != 0);
    if b % a == 0 {
        (1, 0, negm((b / a) % m, m), 1)
    } else {
        let (g, s, t) = ext_gcd(a as i128, b as i128);
        let g = g as u64;
        (norm(s, m), norm(t, m), norm(-((b / g) as i128), m), norm((a / g) as i128, m))
    }
}

/// Inverse of `a` modulo `m`, when `gcd(a, m) = 1`.
pub fn invm(a: u64, m: u64) -> Option<u64> {
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    if g == 1 {
        Some(norm(s, m))
    } else {
        None
    }
}

pub fn is_unit(a: u64, m: u64) -> bool {
    gcd(a % m, m) == 1
}

/// A unit `u` of `Z/m` with `u·a ≡ gcd(a, m) (mod m)`.
///
/// Every residue is a unit multiple of the divisor `gcd(a, m)`; this is what
/// lets pivots in the normal forms below be normalized to divisors of `m`.
pub fn unit_lift(a: u64, m: u64) -> u64 {
    let a = a % m;
    if a == 0 {
        return 1;
    }
    let g = gcd(a, m);
    let a1 = a / g;
    let m1 = m / g;
    if m1 == 1 {
        return 1;
    }
    let u0 = invm(a1 % m1, m1).expect("a/g is invertible mod m/g");
    let mut u = u0;
    while gcd(u, m) != 1 {
        u += m1;
    }
    u % m
}

/// Solves the scalar congruence `d·y ≡ b (mod m)`.
pub fn solve_scalar(d: u64, b: u64, m: u64) -> Option<u64> {
    let d = d % m;
    let b = b % m;
    if d == 0 {
        return if b == 0 { Some(0) } else { None };
    }
    let g = gcd(d, m);
    if b % g != 0 {
        return None;
    }
    let m1 = m / g;
    let inv = invm((d / g) % m1, m1).expect("d/g invertible mod m/g");
    Some(mulm(b / g % m1, inv, m1))
}

/// Dense matrix over `Z/m`, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct MatZm {
    pub m: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl std::fmt::Debug for MatZm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "MatZm {}x{} mod {} [", self.rows, self.cols, self.m)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

impl MatZm {
    pub fn zero(m: u64, rows: usize, cols: usize) -> Self {
        MatZm { m, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(m: u64, n: usize) -> Self {
        let mut a = Self::zero(m, n, n);
        for i in 0..n {
            a[(i, i)] = 1 % m;
        }
        a
    }

    pub fn from_rows(m: u64, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut a = Self::zero(m, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                a[(i, j)] = x % m;
            }
        }
        a
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn push_row(&mut self, r: &[u64]) {
        assert_eq!(r.len(), self.cols);
        self.data.extend(r.iter().map(|&x| x % self.m));
        self.rows += 1;
    }

    pub fn transpose(&self) -> MatZm {
        let mut t = MatZm::zero(self.m, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `self · x` for a column vector `x`.
    pub fn mul_vec(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols, "mul_vec dimension");
        let m = self.m as u128;
        (0..self.rows)
            .map(|i| {
                let mut acc: u128 = 0;
                for j in 0..self.cols {
                    acc = (acc + self[(i, j)] as u128 * x[j] as u128) % m;
                }
                acc as u64
            })
            .collect()
    }

    /// `v · self` for a row vector `v`.
    pub fn vec_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows, "vec_mul dimension");
        let m = self.m as u128;
        (0..self.cols)
            .map(|j| {
                let mut acc: u128 = 0;
                for i in 0..self.rows {
                    acc = (acc + v[i] as u128 * self[(i, j)] as u128) % m;
                }
                acc as u64
            })
            .collect()
    }

    pub fn mat_mul(&self, other: &MatZm) -> MatZm {
        assert_eq!(self.cols, other.rows, "mat_mul dimension");
        assert_eq!(self.m, other.m);
        let mut out = MatZm::zero(self.m, self.rows, other.cols);
        let m = self.m as u128;
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = (out[(i, j)] as u128 + a as u128 * other[(k, j)] as u128) % m;
                    out[(i, j)] = v as u64;
                }
            }
        }
        out
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: u64) {
        let m = self.m;
        for x in self.row_mut(i) {
            *x = mulm(*x, c, m);
        }
    }

    /// row_i ← a·row_i + b·row_j, row_j ← c·row_i + d·row_j (old values).
    fn combine_rows(&mut self, i: usize, j: usize, a: u64, b: u64, c: u64, d: u64) {
        let m = self.m as u128;
        for col in 0..self.cols {
            let x = self[(i, col)] as u128;
            let y = self[(j, col)] as u128;
            self[(i, col)] = ((a as u128 * x + b as u128 * y) % m) as u64;
            self[(j, col)] = ((c as u128 * x + d as u128 * y) % m) as u64;
        }
    }

    fn combine_cols(&mut self, i: usize, j: usize, a: u64, b: u64, c: u64, d: u64) {
        let m = self.m as u128;
        for row in 0..self.rows {
            let x = self[(row, i)] as u128;
            let y = self[(row, j)] as u128;
            self[(row, i)] = ((a as u128 * x + b as u128 * y) % m) as u64;
            self[(row, j)] = ((c as u128 * x + d as u128 * y) % m) as u64;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Howell normal form of the row span.  Canonical: equal spans give
    /// byte-equal forms, and [`MatZm::reduce_vec`] against the form decides
    /// membership.
    pub fn howell_form(&self) -> MatZm {
        let m = self.m;
        let cols = self.cols;
        let mut work: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| self.row(i).to_vec())
            .filter(|r| r.iter().any(|&x| x != 0))
            .collect();
        let mut out: Vec<Vec<u64>> = Vec::new();
        for c in 0..cols {
            // Gather everything still active with a nonzero entry in column c
            // and fold it into a single pivot row by gcd elimination.
            let mut pivot: Option<Vec<u64>> = None;
            let mut rest: Vec<Vec<u64>> = Vec::new();
            for row in work.drain(..) {
                if row[c] == 0 {
                    rest.push(row);
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(row),
                    Some(mut p) => {
                        let (a, b, cc, dd) = gcd_transform(p[c], row[c], m);
                        let mut q = row;
                        for col in 0..cols {
                            let x = p[col] as u128;
                            let y = q[col] as u128;
                            let np = ((a as u128 * x + b as u128 * y) % m as u128) as u64;
                            let nq = ((cc as u128 * x + dd as u128 * y) % m as u128) as u64;
                            p[col] = np;
                            q[col] = nq;
                        }
                        debug_assert_eq!(q[c], 0);
                        if q.iter().any(|&x| x != 0) {
                            rest.push(q);
                        }
                        pivot = Some(p);
                    }
                }
            }
            work = rest;
            let Some(mut p) = pivot else { continue };
            // Normalize the pivot to the divisor gcd(p[c], m).
            let u = unit_lift(p[c], m);
            if u != 1 {
                for x in p.iter_mut() {
                    *x = mulm(*x, u, m);
                }
            }
            let piv = p[c];
            debug_assert_eq!(piv, gcd(piv, m));
            // Reduce earlier rows above this pivot.
            for prev in out.iter_mut() {
                let q = prev[c] / piv;
                if q != 0 {
                    for col in 0..cols {
                        prev[col] = subm(prev[col], mulm(q, p[col], m), m);
                    }
                }
            }
            // Howell condition: the annihilator multiple of the pivot row
            // must lie in the span of the later rows.
            let ann = m / piv;
            if ann > 1 {
                let extra: Vec<u64> = p.iter().map(|&x| mulm(ann, x, m)).collect();
                if extra.iter().any(|&x| x != 0) {
                    work.push(extra);
                }
            }
            out.push(p);
        }
        let mut h = MatZm::zero(m, 0, cols);
        h.rows = out.len();
        h.data = out.into_iter().flatten().collect();
        h
    }

    /// Reduces `v` against a Howell form, returning the canonical residue.
    /// The result is the zero vector iff `v` lies in the row span.
    pub fn reduce_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let m = self.m;
        let mut v: Vec<u64> = v.iter().map(|&x| x % m).collect();
        for i in 0..self.rows {
            let c = match self.row(i).iter().position(|&x| x != 0) {
                Some(c) => c,
                None => continue,
            };
            let q = v[c] / self[(i, c)];
            if q != 0 {
                for col in 0..self.cols {
                    v[col] = subm(v[col], mulm(q, self[(i, col)], m), m);
                }
            }
        }
        v
    }

    pub fn contains_vec(&self, v: &[u64]) -> bool {
        self.reduce_vec(v).iter().all(|&x| x == 0)
    }

    /// Smith normal form over `Z/m` with transforms: `u·A·v = diag(d)`,
    /// `u`, `v` invertible mod `m`, each `dᵢ` a divisor of `m` (0 stands for
    /// the zero ideal) with `d₁ | d₂ | …`.
    pub fn smith(&self) -> SnfMod {
        let m = self.m;
        let mut a = self.clone();
        let mut u = MatZm::identity(m, self.rows);
        let mut v = MatZm::identity(m, self.cols);
        let nmin = self.rows.min(self.cols);
        for k in 0..nmin {
            'improve: loop {
                // Locate a pivot in the trailing submatrix.
                let mut found = None;
                'search: for i in k..a.rows {
                    for j in k..a.cols {
                        if a[(i, j)] != 0 {
                            found = Some((i, j));
                            break 'search;
                        }
                    }
                }
                let Some((pi, pj)) = found else { break 'improve };
                a.swap_rows(k, pi);
                u.swap_rows(k, pi);
                a.swap_cols(k, pj);
                v.swap_cols(k, pj);
                // Clear column k, then row k; redo if clearing the row
                // reintroduced entries in the column.
                loop {
                    let mut dirty = false;
                    for i in k + 1..a.rows {
                        if a[(i, k)] != 0 {
                            let (aa, bb, cc, dd) = gcd_transform(a[(k, k)], a[(i, k)], m);
                            a.combine_rows(k, i, aa, bb, cc, dd);
                            u.combine_rows(k, i, aa, bb, cc, dd);
                        }
                    }
                    for j in k + 1..a.cols {
                        if a[(k, j)] != 0 {
                            let (aa, bb, cc, dd) = gcd_transform(a[(k, k)], a[(k, j)], m);
                            a.combine_cols(k, j, aa, bb, cc, dd);
                            v.combine_cols(k, j, aa, bb, cc, dd);
                            dirty = true;
                        }
                    }
                    if !dirty || (k + 1..a.rows).all(|i| a[(i, k)] == 0) {
                        break;
                    }
                }
                if a[(k, k)] == 0 {
                    continue 'improve;
                }
                // Pivot must divide every remaining entry (as ideals of Z/m).
                let g = gcd(a[(k, k)], m);
                let mut offender = None;
                'scan: for i in k + 1..a.rows {
                    for j in k + 1..a.cols {
                        if a[(i, j)] % g != 0 {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        // Fold the offending row into the pivot row and redo.
                        a.combine_rows(k, i, 1, 1, 0, 1);
                        u.combine_rows(k, i, 1, 1, 0, 1);
                    }
                    None => break 'improve,
                }
            }
        }
        // Normalize the diagonal to divisors of m.
        let mut diag = Vec::with_capacity(nmin);
        for k in 0..nmin {
            let d = a[(k, k)];
            if d != 0 {
                let c = unit_lift(d, m);
                if c != 1 {
                    a.scale_row(k, c);
                    u.scale_row(k, c);
                }
            }
            diag.push(a[(k, k)]);
        }
        SnfMod { m, diag, u, v, rows: self.rows, cols: self.cols }
    }

    /// Canonical Howell basis of `{x : A·x ≡ 0 (mod m)}` (rows are
    /// generators).
    pub fn kernel(&self) -> MatZm {
        let h = self.howell_form();
        let snf = h.smith();
        let m = self.m;
        let mut gens = MatZm::zero(m, 0, self.cols);
        for i in 0..self.cols {
            let scale = if i < snf.diag.len() {
                let g = if snf.diag[i] == 0 { m } else { gcd(snf.diag[i], m) };
                m / g
            } else {
                1
            };
            if scale % m == 0 && m > 1 && scale != 0 {
                // d_i is a unit: this coordinate contributes nothing.
                if scale == m {
                    continue;
                }
            }
            let col: Vec<u64> = (0..self.cols).map(|r| mulm(snf.v[(r, i)], scale % m, m)).collect();
            if col.iter().any(|&x| x != 0) {
                gens.push_row(&col);
            }
        }
        gens.howell_form()
    }

    /// Any solution of `A·x ≡ b (mod m)`, or `None` when infeasible.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.rows, "solve: rhs length");
        let m = self.m;
        // Compress the system first: row operations preserve the solution
        // set, and the Howell form has at most cols+1 rows.
        let mut aug = MatZm::zero(m, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i] % m;
        }
        let h = aug.howell_form();
        let mut a2 = MatZm::zero(m, h.rows, self.cols);
        let mut b2 = vec![0u64; h.rows];
        for i in 0..h.rows {
            for j in 0..self.cols {
                a2[(i, j)] = h[(i, j)];
            }
            b2[i] = h[(i, self.cols)];
        }
        let snf = a2.smith();
        let c = snf.u.mul_vec(&b2);
        let nmin = snf.diag.len();
        let mut y = vec![0u64; self.cols];
        for i in 0..a2.rows {
            if i < nmin {
                y[i] = solve_scalar(snf.diag[i], c[i], m)?;
            } else if c[i] != 0 {
                return None;
            }
        }
        Some(snf.v.mul_vec(&y))
    }

    /// Deterministic solution: the particular solution reduced against the
    /// Howell basis of the kernel.
    pub fn solve_canonical(&self, b: &[u64]) -> Option<Vec<u64>> {
        let x = self.solve(b)?;
        let k = self.kernel();
        Some(k.reduce_vec(&x))
    }

    /// Two-sided inverse mod `m`, when it exists.
    pub fn inverse(&self) -> Option<MatZm> {
        if self.rows != self.cols {
            return None;
        }
        let snf = self.smith();
        if snf.diag.len() < self.rows || snf.diag.iter().any(|&d| gcd(d, self.m) != 1) {
            return None;
        }
        // A = U⁻¹ D V⁻¹ with D a unit diagonal, so A⁻¹ = V D⁻¹ U.
        let mut dinv = MatZm::zero(self.m, self.rows, self.rows);
        for i in 0..self.rows {
            dinv[(i, i)] = invm(snf.diag[i], self.m).expect("unit diagonal");
        }
        let inv = snf.v.mat_mul(&dinv).mat_mul(&snf.u);
        debug_assert!(inv.mat_mul(self) == MatZm::identity(self.m, self.rows));
        Some(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && {
            let snf = self.smith();
            snf.diag.len() == self.rows && snf.diag.iter().all(|&d| gcd(d, self.m) == 1)
        }
    }
}

impl std::ops::Index<(usize, usize)> for MatZm {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatZm {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of [`MatZm::smith`]: `u·A·v = diag(d)` over `Z/m`.
pub struct SnfMod {
    pub m: u64,
    pub diag: Vec<u64>,
    pub u: MatZm,
    pub v: MatZm,
    pub rows: usize,
    pub cols: usize,
}

impl SnfMod {
    /// Per-coordinate annihilator moduli of the quotient `(Z/m)^cols / N`,
    /// `N` the row span of the decomposed matrix.  Coordinate `i` of `x·v`
    /// lives in `Z/gᵢ`; `x ∈ N` iff every coordinate vanishes there.
    pub fn quotient_moduli(&self) -> Vec<u64> {
        (0..self.cols)
            .map(|i| {
                if i < self.diag.len() {
                    if self.diag[i] == 0 {
                        self.m
                    } else {
                        gcd(self.diag[i], self.m)
                    }
                } else {
                    self.m
                }
            })
            .collect()
    }
}

/// A linear system `A·x ≡ b (mod m)` with lifted integer coefficients.
pub struct LinearSystem {
    pub a: MatZm,
    pub b: Vec<u64>,
}

impl LinearSystem {
    pub fn new(a: MatZm, b: Vec<u64>) -> Result<Self, ZmError> {
        if a.rows != b.len() {
            return Err(ZmError::DimensionMismatch(format!(
                "matrix has {} rows but rhs has {} entries",
                a.rows,
                b.len()
            )));
        }
        Ok(LinearSystem { a, b })
    }

    pub fn solve(&self) -> Option<Vec<u64>> {
        self.a.solve(&self.b)
    }

    pub fn kernel(&self) -> MatZm {
        self.a.kernel()
    }
}

pub fn vec_add(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| addm(x, y, m)).collect()
}

pub fn vec_sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(&x, &y)| subm(x, y, m)).collect()
}

pub fn vec_scale(c: u64, a: &[u64], m: u64) -> Vec<u64> {
    a.iter().map(|&x| mulm(c, x, m)).collect()
}

pub fn vec_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scalar_congruences() {
        assert_eq!(solve_scalar(2, 1, 3), Some(2));
        assert_eq!(solve_scalar(2, 1, 4), None);
        assert_eq!(solve_scalar(2, 2, 4), Some(1));
        assert_eq!(solve_scalar(0, 0, 5), Some(0));
        assert_eq!(solve_scalar(0, 3, 5), None);
    }

    #[test]
    fn unit_lift_normalizes() {
        for m in 2..40u64 {
            for a in 0..m {
                let u = unit_lift(a, m);
                assert!(is_unit(u, m), "lift not a unit: a={a} m={m}");
                let g = if a == 0 { 0 } else { gcd(a, m) };
                assert_eq!(mulm(u, a, m), g % m, "a={a} m={m}");
            }
        }
    }

    #[test]
    fn kernel_of_two_mod_four() {
        let a = MatZm::from_rows(4, &[vec![2]]);
        let k = a.kernel();
        assert_eq!(k.rows, 1);
        assert_eq!(k.row(0), &[2]);
    }

    #[test]
    fn solve_small_systems() {
        let a = MatZm::from_rows(3, &[vec![2]]);
        assert_eq!(a.solve(&[1]), Some(vec![2]));
        let a = MatZm::from_rows(4, &[vec![2]]);
        assert_eq!(a.solve(&[1]), None);
        // Underdetermined: 2x + 3y = 1 mod 6.
        let a = MatZm::from_rows(6, &[vec![2, 3]]);
        let x = a.solve(&[1]).unwrap();
        assert_eq!(addm(mulm(2, x[0], 6), mulm(3, x[1], 6), 6), 1);
    }

    #[test]
    fn howell_is_canonical_under_row_shuffles() {
        let a = MatZm::from_rows(8, &[vec![2, 4, 0], vec![0, 4, 2], vec![4, 0, 6]]);
        // Same span: a permutation of a's rows plus the sum of the first two.
        let b = MatZm::from_rows(8, &[vec![4, 0, 6], vec![2, 4, 0], vec![0, 4, 2], vec![2, 0, 2]]);
        assert_eq!(a.howell_form(), b.howell_form());
    }

    #[test]
    fn smith_diagonalizes_with_transforms() {
        let cases = vec![
            (4u64, vec![vec![2, 1], vec![0, 2]]),
            (6, vec![vec![2, 4], vec![4, 2]]),
            (12, vec![vec![6, 4, 2], vec![3, 0, 9]]),
            (9, vec![vec![3, 0], vec![0, 3], vec![1, 2]]),
        ];
        for (m, rows) in cases {
            let a = MatZm::from_rows(m, &rows);
            let snf = a.smith();
            let d = snf.u.mat_mul(&a).mat_mul(&snf.v);
            for i in 0..a.rows {
                for j in 0..a.cols {
                    let expect = if i == j && i < snf.diag.len() { snf.diag[i] } else { 0 };
                    assert_eq!(d[(i, j)], expect, "m={m} at ({i},{j})");
                }
            }
            assert!(snf.u.is_invertible());
            assert!(snf.v.is_invertible());
            for w in snf.diag.windows(2) {
                let (g0, g1) = (gcd(w[0], m), gcd(w[1], m));
                assert_eq!(g1 % g0, 0, "divisibility chain m={m}");
            }
        }
    }

    fn exhaustive_solutions(a: &MatZm, b: &[u64]) -> Vec<Vec<u64>> {
        let m = a.m;
        let total = (m as u128).pow(a.cols as u32) as u64;
        let mut out = Vec::new();
        for code in 0..total {
            let mut x = vec![0u64; a.cols];
            let mut c = code;
            for xi in x.iter_mut() {
                *xi = c % m;
                c /= m;
            }
            if a.mul_vec(&x) == b {
                out.push(x);
            }
        }
        out
    }

    proptest! {
        // solve() agrees with exhaustive search on tiny systems.
        #[test]
        fn solve_matches_exhaustive(
            m in 2u64..7,
            rows in 1usize..4,
            cols in 1usize..4,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let entries: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
                .collect();
            let a = MatZm::from_rows(m, &entries);
            let b: Vec<u64> = (0..rows).map(|_| rng.gen_range(0..m)).collect();
            let all = exhaustive_solutions(&a, &b);
            match a.solve(&b) {
                Some(x) => {
                    prop_assert_eq!(a.mul_vec(&x), b.clone());
                    prop_assert!(!all.is_empty());
                }
                None => prop_assert!(all.is_empty()),
            }
        }

        // kernel() generates exactly the exhaustive kernel.
        #[test]
        fn kernel_matches_exhaustive(
            m in 2u64..7,
            rows in 1usize..4,
            cols in 1usize..4,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let entries: Vec<Vec<u64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
                .collect();
            let a = MatZm::from_rows(m, &entries);
            let k = a.kernel();
            for i in 0..k.rows {
                prop_assert!(vec_is_zero(&a.mul_vec(k.row(i))));
            }
            let zero = vec![0u64; rows];
            for x in exhaustive_solutions(&a, &zero) {
                prop_assert!(k.contains_vec(&x), "missing kernel vector {:?}", x);
            }
        }

        // Howell membership agrees with exhaustive span enumeration.
        #[test]
        fn howell_membership_exact(
            m in 2u64..6,
            gens in 1usize..3,
            cols in 1usize..4,
            seed in any::<u64>(),
        ) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let entries: Vec<Vec<u64>> = (0..gens)
                .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
                .collect();
            let a = MatZm::from_rows(m, &entries);
            let h = a.howell_form();
            // Enumerate the true span.
            let total = (m as u128).pow(gens as u32) as u64;
            let mut span = std::collections::BTreeSet::new();
            for code in 0..total {
                let mut coef = vec![0u64; gens];
                let mut c = code;
                for ci in coef.iter_mut() {
                    *ci = c % m;
                    c /= m;
                }
                let mut v = vec![0u64; cols];
                for (ci, row) in coef.iter().zip(entries.iter()) {
                    for (vj, &rj) in v.iter_mut().zip(row.iter()) {
                        *vj = addm(*vj, mulm(*ci, rj, m), m);
                    }
                }
                span.insert(v);
            }
            let all = (m as u128).pow(cols as u32) as u64;
            for code in 0..all {
                let mut v = vec![0u64; cols];
                let mut c = code;
                for vi in v.iter_mut() {
                    *vi = c % m;
                    c /= m;
                }
                prop_assert_eq!(h.contains_vec(&v), span.contains(&v), "v={:?}", v);
            }
        }
    }
}
