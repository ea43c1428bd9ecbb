//! Dense exact linear algebra over prime fields `F_p`.
//!
//! Everything downstream (module homs, syzygies, Tate products) reduces to
//! rank, kernel and solve calls on these matrices, so the contracts here are
//! strict: the modulus travels with every value, mixing moduli is a hard
//! error, and row reduction follows a fixed pivot strategy (leftmost pivot
//! column, topmost nonzero row) so that every derived basis is canonical.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Multiplicative inverse mod p (p prime, a nonzero mod p).
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2) mod p.
    debug_assert!(!a.is_multiple_of(p));
    let mut base = u64::from(a % p);
    let mut exp = p - 2;
    let mut acc: u64 = 1;
    let m = u64::from(p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc as u32
}

/// A residue in `[0, p)` together with its prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FpScalar {
    value: u32,
    modulus: u32,
}

impl FpScalar {
    pub fn new(value: u32, modulus: u32) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::NotPrime(modulus));
        }
        if value >= modulus {
            return Err(Error::ScalarOutOfRange { value, modulus });
        }
        Ok(Self { value, modulus })
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            value: (self.value + other.value) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self {
            value: (self.value + self.modulus - other.value) % self.modulus,
            modulus: self.modulus,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let v = u64::from(self.value) * u64::from(other.value) % u64::from(self.modulus);
        Ok(Self {
            value: v as u32,
            modulus: self.modulus,
        })
    }

    pub fn neg(&self) -> Self {
        Self {
            value: (self.modulus - self.value) % self.modulus,
            modulus: self.modulus,
        }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.value == 0 {
            return Err(Error::InvalidInput("inverse of zero".into()));
        }
        Ok(Self {
            value: inv_mod(self.value, self.modulus),
            modulus: self.modulus,
        })
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<u32>,
}

impl FpMatrix {
    pub fn new(p: u32, rows: usize, cols: usize, entries: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if entries.len() != rows * cols {
            return Err(Error::InvalidInput(format!(
                "entry count {} does not match {}x{}",
                entries.len(),
                rows,
                cols
            )));
        }
        for &e in &entries {
            if e >= p {
                return Err(Error::ScalarOutOfRange {
                    value: e,
                    modulus: p,
                });
            }
        }
        Ok(Self {
            p,
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(p: u32, rows: usize, cols: usize) -> Self {
        Self {
            p,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zero(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidInput("ragged rows".into()));
        }
        Self::new(p, r, c, rows.concat())
    }

    /// Column vector from a slice.
    pub fn column_vector(p: u32, v: &[u32]) -> Result<Self> {
        Self::new(p, v.len(), 1, v.to_vec())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        debug_assert!(v < self.p);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entry(&self, i: usize, j: usize) -> FpScalar {
        FpScalar {
            value: self.get(i, j),
            modulus: self.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Self, context: &'static str) -> Result<()> {
        self.check_modulus(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context,
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        Ok(())
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + b) % self.p)
            .collect();
        Ok(Self {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| (a + self.p - b) % self.p)
            .collect();
        Ok(Self {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn neg(&self) -> Self {
        let entries = self
            .entries
            .iter()
            .map(|&a| (self.p - a) % self.p)
            .collect();
        Self {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = u64::from(c % self.p);
        let m = u64::from(self.p);
        let entries = self
            .entries
            .iter()
            .map(|&a| (u64::from(a) * c % m) as u32)
            .collect();
        Self {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                context: "mul",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let m = u64::from(self.p);
        let mut entries = vec![0u32; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = u64::from(self.get(i, k));
                if a == 0 {
                    continue;
                }
                let out = &mut entries[i * other.cols..(i + 1) * other.cols];
                let row_b = &other.entries[k * other.cols..(k + 1) * other.cols];
                for (o, &b) in out.iter_mut().zip(row_b) {
                    *o = ((u64::from(*o) + a * u64::from(b)) % m) as u32;
                }
            }
        }
        Ok(Self {
            p: self.p,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    /// `self^k` for square matrices; `k = 0` gives the identity.
    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                context: "pow",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: self.rows,
                right_cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.p, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                context: "apply",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        let m = u64::from(self.p);
        let mut out = vec![0u32; self.rows];
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            let mut acc = 0u64;
            for (&a, &b) in row.iter().zip(v) {
                acc += u64::from(a) * u64::from(b);
            }
            *o = (acc % m) as u32;
        }
        Ok(out)
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                context: "hstack",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = Self::zero(self.p, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j));
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                context: "vstack",
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(Self {
            p: self.p,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn block_diag(p: u32, blocks: &[&FpMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zero(p, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            out.set_block(ro, co, b);
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with top-left corner at `(row, col)`.
    pub fn set_block(&mut self, row: usize, col: usize, block: &FpMatrix) {
        debug_assert_eq!(self.p, block.p);
        debug_assert!(row + block.rows <= self.rows && col + block.cols <= self.cols);
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(row + i, col + j, block.get(i, j));
            }
        }
    }

    pub fn submatrix(&self, row: usize, col: usize, rows: usize, cols: usize) -> Self {
        let mut out = Self::zero(self.p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(row + i, col + j));
            }
        }
        out
    }

    /// Kronecker product; basis of the product is ordered with the left
    /// factor major, i.e. `(i, j) -> i * other.rows + j`.
    pub fn kronecker(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let m = u64::from(self.p);
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = Self::zero(self.p, rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = u64::from(self.get(i, j));
                if a == 0 {
                    continue;
                }
                for x in 0..other.rows {
                    for y in 0..other.cols {
                        let v = (a * u64::from(other.get(x, y)) % m) as u32;
                        out.set(i * other.rows + x, j * other.cols + y, v);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot column list.
    ///
    /// Pivot selection is leftmost column, topmost nonzero row, which makes
    /// the output (and every basis derived from it) canonical.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let pivot_row = (row..m.rows).find(|&r| m.get(r, col) != 0);
            let Some(r) = pivot_row else { continue };
            m.swap_rows(row, r);
            let inv = inv_mod(m.get(row, col), m.p);
            m.scale_row(row, inv);
            for r2 in 0..m.rows {
                if r2 != row {
                    let factor = m.get(r2, col);
                    if factor != 0 {
                        m.subtract_scaled_row(r2, row, factor);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (va, vb) = (self.get(a, j), self.get(b, j));
            self.set(a, j, vb);
            self.set(b, j, va);
        }
    }

    fn scale_row(&mut self, r: usize, c: u32) {
        let m = u64::from(self.p);
        let c = u64::from(c);
        for j in 0..self.cols {
            let v = (u64::from(self.get(r, j)) * c % m) as u32;
            self.set(r, j, v);
        }
    }

    /// row[target] -= factor * row[source]
    fn subtract_scaled_row(&mut self, target: usize, source: usize, factor: u32) {
        let m = u64::from(self.p);
        let f = u64::from(factor);
        for j in 0..self.cols {
            let s = u64::from(self.get(source, j));
            let t = u64::from(self.get(target, j));
            let sub = f * s % m;
            self.set(target, j, ((t + m - sub) % m) as u32);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one vector per free column, ordered by
    /// ascending free column index.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row_idx, &col) in pivots.iter().enumerate() {
                v[col] = Some(row_idx);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![0u32; self.cols];
            vec[free] = 1;
            for (row_idx, &col) in pivots.iter().enumerate() {
                let e = r.get(row_idx, free);
                vec[col] = (self.p - e) % self.p;
            }
            basis.push(vec);
        }
        basis
    }

    /// Kernel basis packed as matrix columns.
    pub fn kernel_matrix(&self) -> Self {
        let basis = self.kernel_basis();
        let mut out = Self::zero(self.p, self.cols, basis.len());
        for (j, v) in basis.iter().enumerate() {
            for (i, &e) in v.iter().enumerate() {
                out.set(i, j, e);
            }
        }
        out
    }

    /// Pivot columns of the original matrix: a basis of the column space.
    pub fn image_basis(&self) -> Vec<Vec<u32>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&j| self.column(j)).collect()
    }

    /// Canonical solution of `self * x = b`: free variables are set to zero
    /// after row reduction. Returns `None` when the system is inconsistent.
    /// For a fixed coefficient matrix the canonical solution is linear in
    /// `b`, which downstream chain-map lifting relies on.
    ///
    /// ```
    /// use stmod::ff::FpMatrix;
    /// let a = FpMatrix::from_rows(2, &[vec![1, 1]])?;
    /// assert_eq!(a.solve(&[1]), Some(vec![1, 0])); // free variable zeroed
    /// assert_eq!(FpMatrix::zero(2, 1, 2).solve(&[1]), None);
    /// # Ok::<(), stmod::Error>(())
    /// ```
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        let bm = FpMatrix::column_vector(self.p, b).ok()?;
        self.solve_matrix(&bm).map(|x| x.column(0))
    }

    /// Columnwise canonical solve of `self * X = B`.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        debug_assert_eq!(self.p, b.p);
        debug_assert_eq!(self.rows, b.rows);
        let aug = self.hstack(b).ok()?;
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zero(self.p, self.cols, b.cols);
        for (row_idx, &col) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(col, j, r.get(row_idx, self.cols + j));
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Self::identity(self.p, self.rows))?;
        // solve_matrix returns a solution whenever the system is consistent;
        // invertibility additionally needs full rank.
        if self.mul(&x).ok()? == Self::identity(self.p, self.rows) {
            Some(x)
        } else {
            None
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

/// Wire format: `{"p": 2, "rows": r, "cols": c, "entries": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixJson {
    p: u32,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u32>>,
}

impl Serialize for FpMatrix {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect();
        MatrixJson {
            p: self.p,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FpMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.rows {
            return Err(serde::de::Error::custom("row count mismatch"));
        }
        FpMatrix::from_rows(raw.p, &raw.entries).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64;

    fn mat(p: u32, rows: &[&[u32]]) -> FpMatrix {
        FpMatrix::from_rows(p, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn scalar_arithmetic() {
        let two = FpScalar::new(2, 3).unwrap();
        assert_eq!(two.mul(&two).unwrap().value(), 1); // 2*2 = 4 = 1 mod 3
        assert_eq!(two.add(&two).unwrap().value(), 1);
        assert_eq!(two.neg().value(), 1);
        assert_eq!(two.inv().unwrap().value(), 2);
        assert!(FpScalar::new(3, 3).is_err());
        assert!(FpScalar::new(1, 4).is_err());
        let five = FpScalar::new(2, 5).unwrap();
        assert!(two.add(&five).is_err());

        // matrix entries carry their modulus
        let m = mat(3, &[&[2]]);
        assert_eq!(m.entry(0, 0).mul(&m.entry(0, 0)).unwrap().value(), 1);
    }

    #[test]
    fn mul_identity_cases() {
        let i2 = FpMatrix::identity(2, 2);
        assert_eq!(i2.mul(&i2).unwrap(), i2);

        // involution in char 2
        let a = mat(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(a.mul(&a).unwrap(), FpMatrix::identity(2, 2));

        // 2*2 = 4 = 1 mod 3
        let b = mat(3, &[&[2]]);
        assert_eq!(b.mul(&b).unwrap(), mat(3, &[&[1]]));
    }

    #[test]
    fn mul_rejects_bad_shapes() {
        let a = FpMatrix::zero(2, 2, 3);
        let b = FpMatrix::zero(2, 2, 3);
        assert!(a.mul(&b).is_err());
        let c = FpMatrix::zero(3, 3, 2);
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn rref_examples() {
        let i3 = FpMatrix::identity(2, 3);
        let (r, piv) = i3.rref();
        assert_eq!(r, i3);
        assert_eq!(piv, vec![0, 1, 2]);

        let z = FpMatrix::zero(3, 2, 2);
        let (r, piv) = z.rref();
        assert_eq!(r, z);
        assert!(piv.is_empty());

        let a = mat(2, &[&[1, 1], &[1, 1]]);
        let (r, piv) = a.rref();
        assert_eq!(r, mat(2, &[&[1, 1], &[0, 0]]));
        assert_eq!(piv, vec![0]);
        assert_eq!(a.rank(), 1);
    }

    #[test]
    fn rref_is_idempotent() {
        let mut rng = XorShift64::new(11);
        for p in [2u32, 3, 5] {
            for _ in 0..20 {
                let rows = 1 + rng.below(6) as usize;
                let cols = 1 + rng.below(6) as usize;
                let entries: Vec<u32> = (0..rows * cols).map(|_| rng.below(p)).collect();
                let m = FpMatrix::new(p, rows, cols, entries).unwrap();
                let (r, piv) = m.rref();
                let (rr, piv2) = r.rref();
                assert_eq!(r, rr);
                assert_eq!(piv, piv2);
            }
        }
    }

    #[test]
    fn kernel_examples() {
        assert!(FpMatrix::identity(2, 3).kernel_basis().is_empty());

        let a = mat(2, &[&[1, 1]]);
        assert_eq!(a.kernel_basis(), vec![vec![1, 1]]);

        let z = FpMatrix::zero(5, 3, 4);
        let k = z.kernel_basis();
        assert_eq!(k.len(), 4);
        for (i, v) in k.iter().enumerate() {
            let mut e = vec![0u32; 4];
            e[i] = 1;
            assert_eq!(*v, e);
        }
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let mut rng = XorShift64::new(99);
        for p in [2u32, 3, 5] {
            for _ in 0..30 {
                let rows = 1 + rng.below(7) as usize;
                let cols = 1 + rng.below(7) as usize;
                let entries: Vec<u32> = (0..rows * cols).map(|_| rng.below(p)).collect();
                let m = FpMatrix::new(p, rows, cols, entries).unwrap();
                assert_eq!(m.rank() + m.kernel_basis().len(), cols);
                // kernel vectors actually lie in the kernel
                for v in m.kernel_basis() {
                    assert!(m.apply(&v).unwrap().iter().all(|&e| e == 0));
                }
            }
        }
    }

    #[test]
    fn solve_examples() {
        let i3 = FpMatrix::identity(2, 3);
        assert_eq!(i3.solve(&[1, 0, 1]), Some(vec![1, 0, 1]));

        // free variable zeroed
        let a = mat(2, &[&[1, 1]]);
        assert_eq!(a.solve(&[1]), Some(vec![1, 0]));

        let z = mat(2, &[&[0, 0]]);
        assert_eq!(z.solve(&[1]), None);
    }

    #[test]
    fn solve_returns_exact_solutions() {
        let mut rng = XorShift64::new(5);
        for p in [2u32, 3, 5] {
            for _ in 0..30 {
                let rows = 1 + rng.below(6) as usize;
                let cols = 1 + rng.below(6) as usize;
                let entries: Vec<u32> = (0..rows * cols).map(|_| rng.below(p)).collect();
                let m = FpMatrix::new(p, rows, cols, entries).unwrap();
                let b: Vec<u32> = (0..rows).map(|_| rng.below(p)).collect();
                if let Some(x) = m.solve(&b) {
                    assert_eq!(m.apply(&x).unwrap(), b);
                }
            }
        }
    }

    #[test]
    fn solve_is_linear_in_rhs() {
        // canonical solutions share the pivot structure of the coefficient
        // matrix, so solve(A, b1 + b2) = solve(A, b1) + solve(A, b2)
        let mut rng = XorShift64::new(17);
        for p in [2u32, 3] {
            for _ in 0..20 {
                let rows = 2 + rng.below(4) as usize;
                let cols = 2 + rng.below(4) as usize;
                let entries: Vec<u32> = (0..rows * cols).map(|_| rng.below(p)).collect();
                let m = FpMatrix::new(p, rows, cols, entries).unwrap();
                let x1: Vec<u32> = (0..cols).map(|_| rng.below(p)).collect();
                let x2: Vec<u32> = (0..cols).map(|_| rng.below(p)).collect();
                let b1 = m.apply(&x1).unwrap();
                let b2 = m.apply(&x2).unwrap();
                let sum: Vec<u32> = b1.iter().zip(&b2).map(|(&a, &b)| (a + b) % p).collect();
                let s1 = m.solve(&b1).unwrap();
                let s2 = m.solve(&b2).unwrap();
                let s12 = m.solve(&sum).unwrap();
                let expect: Vec<u32> = s1.iter().zip(&s2).map(|(&a, &b)| (a + b) % p).collect();
                assert_eq!(s12, expect);
            }
        }
    }

    #[test]
    fn rank_and_image_examples() {
        assert_eq!(FpMatrix::identity(3, 4).rank(), 4);
        assert_eq!(mat(2, &[&[1, 1], &[1, 1]]).rank(), 1);
        assert_eq!(FpMatrix::zero(2, 3, 3).rank(), 0);

        let a = mat(2, &[&[1, 1, 0], &[1, 1, 1]]);
        assert_eq!(a.image_basis(), vec![vec![1, 1], vec![0, 1]]);
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(3, &[&[1, 2], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), FpMatrix::identity(3, 2));
        assert!(mat(2, &[&[1, 1], &[1, 1]]).inverse().is_none());
    }

    #[test]
    fn kronecker_shapes() {
        let a = mat(2, &[&[0, 1], &[0, 0]]);
        let i2 = FpMatrix::identity(2, 2);
        let k = a.kronecker(&i2).unwrap();
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(k.get(0, 2), 1);
        assert_eq!(k.get(1, 3), 1);
        assert_eq!(k.rank(), 2);
    }

    #[test]
    fn json_roundtrip_and_validation() {
        let a = mat(3, &[&[1, 2], &[0, 1]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"p":3,"rows":2,"cols":2,"entries":[[1,2],[0,1]]}"#);
        let back: FpMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        // out-of-range entry rejected
        let bad = r#"{"p":3,"rows":1,"cols":1,"entries":[[5]]}"#;
        assert!(serde_json::from_str::<FpMatrix>(bad).is_err());
    }
}
