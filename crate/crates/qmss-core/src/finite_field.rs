//! Exact linear algebra over the prime field Z_d.
//!
//! Everything downstream (share derivation, recombination vectors, the
//! black-box eigenvector checks) reduces to solving small linear systems over
//! Z_d, so this module is deliberately exact and deterministic: elements are
//! canonical residues in `0..d`, elimination uses a unique reduced
//! row-echelon form with leftmost pivot selection, and underdetermined
//! systems are canonicalized by setting every free variable to zero. Two
//! calls on the same input always return the same answer, which keeps run
//! transcripts reproducible.
//!
//! The modulus is validated to be prime (trial division is plenty below the
//! supported bound of 10^4), so every nonzero element is invertible and
//! pivoting never stalls on a zero divisor.

use std::fmt;

use rand::Rng;
use thiserror::Error;

/// Largest supported prime modulus.
///
/// Keeps scalar products comfortably inside `u64` (entries are below 10^4,
/// so a product plus accumulator stays below 2^63) and keeps trial-division
/// primality checking instantaneous.
pub const MAX_MODULUS: u64 = 10_000;

/// Attempt cap for rejection-sampling a random invertible matrix.
pub const SAMPLING_ATTEMPT_CAP: u32 = 1_000;

/// Errors from field construction and linear algebra.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    /// The requested modulus is composite (or < 2).
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    /// The requested modulus exceeds [`MAX_MODULUS`].
    #[error("modulus {0} exceeds the supported bound {MAX_MODULUS}")]
    ModulusTooLarge(u64),
    /// Two operands were built over different moduli.
    #[error("operands use different moduli ({lhs} vs {rhs})")]
    ModulusMismatch { lhs: u64, rhs: u64 },
    /// Shapes are incompatible for the attempted operation.
    #[error("{op}: incompatible dimensions ({lhs} vs {rhs})")]
    DimensionMismatch {
        op: &'static str,
        lhs: String,
        rhs: String,
    },
    /// A square matrix had no inverse.
    #[error("matrix is singular over Z_{modulus}")]
    Singular { modulus: u64 },
    /// A linear system was inconsistent.
    #[error("linear system has no solution")]
    NoSolution,
    /// A nonzero vector was required.
    #[error("zero vector supplied where a nonzero vector is required")]
    ZeroVector,
    /// The vector is not an eigenvector of the matrix.
    #[error("vector is not an eigenvector of the matrix")]
    NotEigenvector,
    /// Rejection sampling failed to find an invertible matrix.
    #[error("no invertible matrix found after {attempts} attempts")]
    SamplingExhausted { attempts: u32 },
}

/// A validated prime modulus together with scalar arithmetic mod d.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus {
    d: u64,
}

impl Modulus {
    /// Validates that `d` is prime and within [`MAX_MODULUS`].
    pub fn new(d: u64) -> Result<Self, FieldError> {
        if d > MAX_MODULUS {
            return Err(FieldError::ModulusTooLarge(d));
        }
        if !is_prime(d) {
            return Err(FieldError::NotPrime(d));
        }
        Ok(Modulus { d })
    }

    /// The underlying prime d.
    pub fn value(self) -> u64 {
        self.d
    }

    /// Canonical residue of an unsigned value.
    pub fn reduce(self, x: u64) -> u64 {
        x % self.d
    }

    /// Canonical residue of a signed value (`-1` maps to `d - 1`).
    pub fn reduce_signed(self, x: i64) -> u64 {
        x.rem_euclid(self.d as i64) as u64
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.d
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.d - b % self.d) % self.d
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        (a % self.d) * (b % self.d) % self.d
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.d - a % self.d) % self.d
    }

    /// a^e mod d by square-and-multiply.
    pub fn pow(self, a: u64, mut e: u64) -> u64 {
        let mut base = a % self.d;
        let mut acc = 1 % self.d;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.d;
            }
            base = base * base % self.d;
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse of a nonzero element (via a^(d-2), d prime).
    pub fn inv(self, a: u64) -> Result<u64, FieldError> {
        if a % self.d == 0 {
            return Err(FieldError::ZeroVector);
        }
        Ok(self.pow(a, self.d - 2))
    }

    /// Uniformly random element of `0..d`.
    pub fn sample(self, rng: &mut impl Rng) -> u64 {
        rng.random_range(0..self.d)
    }

    /// Errors unless both operands share this modulus.
    pub fn check_same(self, other: Modulus) -> Result<(), FieldError> {
        if self.d != other.d {
            return Err(FieldError::ModulusMismatch {
                lhs: self.d,
                rhs: other.d,
            });
        }
        Ok(())
    }
}

fn is_prime(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    if d % 2 == 0 {
        return d == 2;
    }
    let mut q = 3;
    while q * q <= d {
        if d % q == 0 {
            return false;
        }
        q += 2;
    }
    true
}

/// A vector of canonical residues mod a shared prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldVector {
    modulus: Modulus,
    entries: Vec<u64>,
}

impl FieldVector {
    /// Builds a vector, reducing every entry into `0..d`.
    pub fn new(modulus: Modulus, entries: Vec<u64>) -> Self {
        let entries = entries.into_iter().map(|x| modulus.reduce(x)).collect();
        FieldVector { modulus, entries }
    }

    /// Builds a vector from signed entries (negatives wrap mod d).
    pub fn from_signed(modulus: Modulus, entries: &[i64]) -> Self {
        let entries = entries.iter().map(|&x| modulus.reduce_signed(x)).collect();
        FieldVector { modulus, entries }
    }

    pub fn zeros(modulus: Modulus, len: usize) -> Self {
        FieldVector {
            modulus,
            entries: vec![0; len],
        }
    }

    /// Standard basis vector e_i (0-based index) of the given length.
    pub fn unit(modulus: Modulus, len: usize, i: usize) -> Self {
        let mut entries = vec![0; len];
        entries[i] = 1 % modulus.value();
        FieldVector { modulus, entries }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> u64 {
        self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &FieldVector) -> Result<FieldVector, FieldError> {
        self.modulus.check_same(other.modulus)?;
        if self.len() != other.len() {
            return Err(FieldError::DimensionMismatch {
                op: "vector add",
                lhs: self.len().to_string(),
                rhs: other.len().to_string(),
            });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.modulus.add(a, b))
            .collect();
        Ok(FieldVector {
            modulus: self.modulus,
            entries,
        })
    }

    /// Entry-wise scaling by a field element.
    pub fn scale(&self, c: u64) -> FieldVector {
        let entries = self
            .entries
            .iter()
            .map(|&a| self.modulus.mul(a, c))
            .collect();
        FieldVector {
            modulus: self.modulus,
            entries,
        }
    }

    /// Inner product mod d.
    pub fn dot(&self, other: &FieldVector) -> Result<u64, FieldError> {
        self.modulus.check_same(other.modulus)?;
        if self.len() != other.len() {
            return Err(FieldError::DimensionMismatch {
                op: "dot product",
                lhs: self.len().to_string(),
                rhs: other.len().to_string(),
            });
        }
        let d = self.modulus;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(0, |acc, (&a, &b)| d.add(acc, d.mul(a, b))))
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major matrix of canonical residues mod a shared prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    modulus: Modulus,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl FieldMatrix {
    /// Builds a matrix from row-major entries, reducing each into `0..d`.
    pub fn new(
        modulus: Modulus,
        rows: usize,
        cols: usize,
        entries: Vec<u64>,
    ) -> Result<Self, FieldError> {
        if entries.len() != rows * cols {
            return Err(FieldError::DimensionMismatch {
                op: "matrix construction",
                lhs: format!("{rows}x{cols}"),
                rhs: format!("{} entries", entries.len()),
            });
        }
        let entries = entries.into_iter().map(|x| modulus.reduce(x)).collect();
        Ok(FieldMatrix {
            modulus,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from signed row-major entries (negatives wrap mod d).
    pub fn from_signed(
        modulus: Modulus,
        rows: usize,
        cols: usize,
        entries: &[i64],
    ) -> Result<Self, FieldError> {
        if entries.len() != rows * cols {
            return Err(FieldError::DimensionMismatch {
                op: "matrix construction",
                lhs: format!("{rows}x{cols}"),
                rhs: format!("{} entries", entries.len()),
            });
        }
        let entries = entries.iter().map(|&x| modulus.reduce_signed(x)).collect();
        Ok(FieldMatrix {
            modulus,
            rows,
            cols,
            entries,
        })
    }

    /// Stacks row vectors (all of equal length and modulus) into a matrix.
    pub fn from_rows(rows: &[FieldVector]) -> Result<Self, FieldError> {
        let first = rows.first().ok_or(FieldError::DimensionMismatch {
            op: "matrix from rows",
            lhs: "0 rows".into(),
            rhs: "at least 1".into(),
        })?;
        let modulus = first.modulus();
        let cols = first.len();
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            modulus.check_same(r.modulus())?;
            if r.len() != cols {
                return Err(FieldError::DimensionMismatch {
                    op: "matrix from rows",
                    lhs: cols.to_string(),
                    rhs: r.len().to_string(),
                });
            }
            entries.extend_from_slice(r.entries());
        }
        Ok(FieldMatrix {
            modulus,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn identity(modulus: Modulus, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1 % modulus.value();
        }
        FieldMatrix {
            modulus,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn zeros(modulus: Modulus, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            modulus,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    /// Square matrix with the given values on the diagonal.
    pub fn diagonal(modulus: Modulus, diag: &[u64]) -> Self {
        let n = diag.len();
        let mut entries = vec![0; n * n];
        for (i, &x) in diag.iter().enumerate() {
            entries[i * n + i] = modulus.reduce(x);
        }
        FieldMatrix {
            modulus,
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry accessor; panics if out of bounds.
    pub fn get(&self, r: usize, c: usize) -> u64 {
        assert!(r < self.rows && c < self.cols, "matrix index out of bounds");
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> FieldVector {
        assert!(r < self.rows, "row index out of bounds");
        FieldVector {
            modulus: self.modulus,
            entries: self.entries[r * self.cols..(r + 1) * self.cols].to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> FieldVector {
        assert!(c < self.cols, "column index out of bounds");
        let entries = (0..self.rows).map(|r| self.get(r, c)).collect();
        FieldVector {
            modulus: self.modulus,
            entries,
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut entries = vec![0; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.get(r, c);
            }
        }
        FieldMatrix {
            modulus: self.modulus,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// New matrix keeping the listed rows, in the order given.
    pub fn select_rows(&self, rows: &[usize]) -> Result<FieldMatrix, FieldError> {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            if r >= self.rows {
                return Err(FieldError::DimensionMismatch {
                    op: "row selection",
                    lhs: format!("{} rows", self.rows),
                    rhs: format!("index {r}"),
                });
            }
            entries.extend_from_slice(&self.entries[r * self.cols..(r + 1) * self.cols]);
        }
        Ok(FieldMatrix {
            modulus: self.modulus,
            rows: rows.len(),
            cols: self.cols,
            entries,
        })
    }

    pub fn mat_mul(&self, other: &FieldMatrix) -> Result<FieldMatrix, FieldError> {
        self.modulus.check_same(other.modulus)?;
        if self.cols != other.rows {
            return Err(FieldError::DimensionMismatch {
                op: "matrix multiply",
                lhs: format!("{}x{}", self.rows, self.cols),
                rhs: format!("{}x{}", other.rows, other.cols),
            });
        }
        let d = self.modulus;
        let mut entries = vec![0; self.rows * other.cols];
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    entries[idx] = d.add(entries[idx], d.mul(a, other.get(k, c)));
                }
            }
        }
        Ok(FieldMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn mat_vec_mul(&self, v: &FieldVector) -> Result<FieldVector, FieldError> {
        self.modulus.check_same(v.modulus())?;
        if self.cols != v.len() {
            return Err(FieldError::DimensionMismatch {
                op: "matrix-vector multiply",
                lhs: format!("{}x{}", self.rows, self.cols),
                rhs: format!("length {}", v.len()),
            });
        }
        let d = self.modulus;
        let entries = (0..self.rows)
            .map(|r| {
                (0..self.cols).fold(0, |acc, c| d.add(acc, d.mul(self.get(r, c), v.get(c))))
            })
            .collect();
        Ok(FieldVector {
            modulus: self.modulus,
            entries,
        })
    }

    pub fn sub(&self, other: &FieldMatrix) -> Result<FieldMatrix, FieldError> {
        self.modulus.check_same(other.modulus)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(FieldError::DimensionMismatch {
                op: "matrix subtract",
                lhs: format!("{}x{}", self.rows, self.cols),
                rhs: format!("{}x{}", other.rows, other.cols),
            });
        }
        let d = self.modulus;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| d.sub(a, b))
            .collect();
        Ok(FieldMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, c: u64) -> FieldMatrix {
        let d = self.modulus;
        let entries = self.entries.iter().map(|&a| d.mul(a, c)).collect();
        FieldMatrix {
            modulus: self.modulus,
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Matrix rank via row reduction.
    pub fn rank(&self) -> usize {
        let mut work = self.entries.clone();
        let pivots = row_reduce(self.modulus, &mut work, self.rows, self.cols, self.cols);
        pivots.len()
    }

    /// Inverse of a square matrix by Gauss-Jordan on `[A | I]`.
    pub fn mat_inverse(&self) -> Result<FieldMatrix, FieldError> {
        if self.rows != self.cols {
            return Err(FieldError::DimensionMismatch {
                op: "matrix inverse",
                lhs: format!("{}x{}", self.rows, self.cols),
                rhs: "square matrix".into(),
            });
        }
        let n = self.rows;
        let width = 2 * n;
        let mut work = vec![0; n * width];
        for r in 0..n {
            for c in 0..n {
                work[r * width + c] = self.get(r, c);
            }
            work[r * width + n + r] = 1 % self.modulus.value();
        }
        let pivots = row_reduce(self.modulus, &mut work, n, width, n);
        if pivots.len() < n {
            return Err(FieldError::Singular {
                modulus: self.modulus.value(),
            });
        }
        let mut entries = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                entries[r * n + c] = work[r * width + n + c];
            }
        }
        Ok(FieldMatrix {
            modulus: self.modulus,
            rows: n,
            cols: n,
            entries,
        })
    }

    /// Canonical solution of `A x = b`.
    ///
    /// Reduces the augmented system to reduced row-echelon form (leftmost
    /// pivots, pivots normalized to 1) and sets every free variable to zero,
    /// so underdetermined systems always yield the same representative.
    /// Returns [`FieldError::NoSolution`] when the system is inconsistent.
    pub fn solve_linear(&self, b: &FieldVector) -> Result<FieldVector, FieldError> {
        self.modulus.check_same(b.modulus())?;
        if self.rows != b.len() {
            return Err(FieldError::DimensionMismatch {
                op: "linear solve",
                lhs: format!("{} rows", self.rows),
                rhs: format!("length {}", b.len()),
            });
        }
        let width = self.cols + 1;
        let mut work = vec![0; self.rows * width];
        for r in 0..self.rows {
            for c in 0..self.cols {
                work[r * width + c] = self.get(r, c);
            }
            work[r * width + self.cols] = b.get(r);
        }
        let pivots = row_reduce(self.modulus, &mut work, self.rows, width, self.cols);
        // A pivot-free row with a nonzero right-hand side means 0 = nonzero.
        for r in pivots.len()..self.rows {
            if work[r * width + self.cols] != 0 {
                return Err(FieldError::NoSolution);
            }
        }
        let mut x = vec![0; self.cols];
        for (r, &col) in pivots.iter().enumerate() {
            x[col] = work[r * width + self.cols];
        }
        Ok(FieldVector {
            modulus: self.modulus,
            entries: x,
        })
    }

    /// Basis of the right nullspace `{v : A v = 0}`, in a canonical order.
    ///
    /// One basis vector per free column of the reduced row-echelon form: the
    /// vector has 1 in the free column, the negated reduced entries in the
    /// pivot columns, and 0 elsewhere. Returns an empty vec for full column
    /// rank.
    pub fn nullspace_basis(&self) -> Vec<FieldVector> {
        let mut work = self.entries.clone();
        let pivots = row_reduce(self.modulus, &mut work, self.rows, self.cols, self.cols);
        let d = self.modulus;
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![0; self.cols];
            v[free] = 1 % d.value();
            for (r, &col) in pivots.iter().enumerate() {
                v[col] = d.neg(work[r * self.cols + free]);
            }
            basis.push(FieldVector {
                modulus: self.modulus,
                entries: v,
            });
        }
        basis
    }

    /// The eigenvalue s with `A y = s y`, if `y` is an eigenvector.
    ///
    /// Fails with [`FieldError::ZeroVector`] for y = 0 and
    /// [`FieldError::NotEigenvector`] when `A y` is not proportional to `y`.
    pub fn eigenvalue_for(&self, y: &FieldVector) -> Result<u64, FieldError> {
        if y.is_zero() {
            return Err(FieldError::ZeroVector);
        }
        let image = self.mat_vec_mul(y)?;
        let d = self.modulus;
        // Read the ratio off the first nonzero coordinate, then confirm it
        // holds everywhere.
        let lead = y.entries.iter().position(|&x| x != 0).expect("nonzero");
        let s = d.mul(image.get(lead), d.inv(y.get(lead))?);
        if image == y.scale(s) {
            Ok(s)
        } else {
            Err(FieldError::NotEigenvector)
        }
    }

    /// Uniformly random invertible n x n matrix by rejection sampling.
    ///
    /// Each attempt draws all entries uniformly and keeps the matrix iff it
    /// has full rank; the accepted distribution is therefore uniform over
    /// GL(n, Z_d). Gives up after [`SAMPLING_ATTEMPT_CAP`] rejections (the
    /// singular fraction is at most ~1/d + 1/d^2 + ..., so hitting the cap in
    /// practice would indicate a broken RNG).
    pub fn random_invertible(
        modulus: Modulus,
        n: usize,
        rng: &mut impl Rng,
    ) -> Result<FieldMatrix, FieldError> {
        for _ in 0..SAMPLING_ATTEMPT_CAP {
            let entries: Vec<u64> = (0..n * n).map(|_| modulus.sample(rng)).collect();
            let candidate = FieldMatrix {
                modulus,
                rows: n,
                cols: n,
                entries,
            };
            if candidate.rank() == n {
                return Ok(candidate);
            }
        }
        Err(FieldError::SamplingExhausted {
            attempts: SAMPLING_ATTEMPT_CAP,
        })
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// True iff the vectors are linearly independent over their common field.
///
/// The empty family is independent. All vectors must share modulus and
/// length.
pub fn is_linearly_independent(vectors: &[FieldVector]) -> Result<bool, FieldError> {
    if vectors.is_empty() {
        return Ok(true);
    }
    let matrix = FieldMatrix::from_rows(vectors)?;
    Ok(matrix.rank() == vectors.len())
}

/// In-place reduced row-echelon form over the first `reduce_cols` columns.
///
/// `work` is row-major with `width` columns. Pivot search scans columns left
/// to right, picking the first row with a nonzero entry; pivots are scaled to
/// 1 and eliminated above and below, which makes the result unique. Returns
/// the pivot column indices in row order.
fn row_reduce(
    modulus: Modulus,
    work: &mut [u64],
    rows: usize,
    width: usize,
    reduce_cols: usize,
) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..reduce_cols {
        if pivot_row == rows {
            break;
        }
        let Some(src) = (pivot_row..rows).find(|&r| work[r * width + col] != 0) else {
            continue;
        };
        if src != pivot_row {
            for c in 0..width {
                work.swap(pivot_row * width + c, src * width + c);
            }
        }
        let inv = modulus
            .inv(work[pivot_row * width + col])
            .expect("pivot is nonzero");
        for c in 0..width {
            work[pivot_row * width + c] = modulus.mul(work[pivot_row * width + c], inv);
        }
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = work[r * width + col];
            if factor == 0 {
                continue;
            }
            for c in 0..width {
                let delta = modulus.mul(factor, work[pivot_row * width + c]);
                work[r * width + c] = modulus.sub(work[r * width + c], delta);
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}
