use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{MultiPoly, Rational, Var};
use crate::Error;

/// Dense matrix over [`MultiPoly`], row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

/// Sizes below this use Laplace expansion; larger ones use Bareiss.
const BAREISS_FROM: usize = 5;

impl RingMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Result<Self, Error> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeViolation(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RingMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RingMatrix { rows, cols, entries: vec![MultiPoly::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { MultiPoly::one() } else { MultiPoly::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RingMatrix { rows, cols, entries }
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self, Error> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeViolation("ragged rows".into()));
        }
        Ok(Self::from_fn(r, c, |i, j| MultiPoly::from_int(rows[i][j])))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[MultiPoly] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Leading `k`×`k` block.
    pub fn leading(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        RingMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly, Error>) -> Result<Self, Error> {
        let entries = self.entries.iter().map(f).collect::<Result<_, _>>()?;
        Ok(RingMatrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale(&self, c: &MultiPoly) -> Self {
        self.map(|e| e * c)
    }

    pub fn diff(&self, v: &Var, order: u32) -> Result<Self, Error> {
        self.try_map(|e| e.diff(v, order))
    }

    pub fn eval(&self, assignment: &[(Var, Rational)]) -> Result<Self, Error> {
        self.try_map(|e| e.eval(assignment))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, Error> {
        if self.cols != rhs.rows {
            return Err(Error::ShapeViolation(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols)
                .filter(|&k| !self.get(i, k).is_zero() && !rhs.get(k, j).is_zero())
                .map(|k| self.get(i, k) * rhs.get(k, j))
                .sum()
        }))
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&MultiPoly, &MultiPoly) -> MultiPoly) -> Self {
        assert!(self.rows == rhs.rows && self.cols == rhs.cols, "shape mismatch");
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    /// Exact determinant. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<MultiPoly, Error> {
        self.require_square()?;
        if self.rows < BAREISS_FROM {
            self.det_laplace()
        } else {
            self.det_bareiss()
        }
    }

    fn require_square(&self) -> Result<(), Error> {
        if !self.is_square() {
            return Err(Error::NonSquare { rows: self.rows, cols: self.cols });
        }
        Ok(())
    }

    /// Laplace expansion along rows, memoized over column subsets.
    pub fn det_laplace(&self) -> Result<MultiPoly, Error> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one());
        }
        assert!(n < 24, "Laplace expansion is for small matrices");
        // minors[S]: determinant of rows 0..|S| restricted to columns S.
        let mut minors: Vec<Option<MultiPoly>> = vec![None; 1 << n];
        minors[0] = Some(MultiPoly::one());
        for mask in 0usize..(1 << n) {
            let Some(m) = minors[mask].take() else { continue };
            let r = mask.count_ones() as usize;
            if r == n {
                return Ok(m);
            }
            if m.is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 || self.get(r, j).is_zero() {
                    continue;
                }
                // Row r sits last among the chosen rows; column j has `after`
                // chosen columns to its right.
                let after = (mask >> j).count_ones();
                let t = &m * self.get(r, j);
                let t = if after % 2 == 1 { -t } else { t };
                let slot = &mut minors[mask | (1 << j)];
                *slot = Some(match slot.take() {
                    Some(s) => &s + &t,
                    None => t,
                });
            }
        }
        Ok(MultiPoly::zero())
    }

    /// Fraction-free Gaussian elimination with row pivoting.
    pub fn det_bareiss(&self) -> Result<MultiPoly, Error> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one());
        }
        let mut a: Vec<Vec<MultiPoly>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut sign = false;
        let mut prev = MultiPoly::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = !sign;
                    }
                    None => return Ok(MultiPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.div_exact(&prev)?;
                }
                a[i][k] = MultiPoly::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        Ok(if sign { -d } else { d })
    }

    /// Plain recursive cofactor expansion along the first row.
    pub fn det_cofactor(&self) -> Result<MultiPoly, Error> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one());
        }
        let rest: Vec<usize> = (1..n).collect();
        let mut acc = MultiPoly::zero();
        for j in 0..n {
            if self.get(0, j).is_zero() {
                continue;
            }
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let minor = self.submatrix(&rest, &cols).det_cofactor()?;
            let t = self.get(0, j) * &minor;
            acc = if j % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        Ok(acc)
    }
}

impl<'a> Mul<&'a RingMatrix> for &'a RingMatrix {
    type Output = RingMatrix;
    /// Panics on a shape mismatch; see [`RingMatrix::checked_mul`].
    fn mul(self, rhs: &RingMatrix) -> RingMatrix {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }
}

impl<'a> Add<&'a RingMatrix> for &'a RingMatrix {
    type Output = RingMatrix;
    fn add(self, rhs: &RingMatrix) -> RingMatrix {
        self.zip(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a RingMatrix> for &'a RingMatrix {
    type Output = RingMatrix;
    fn sub(self, rhs: &RingMatrix) -> RingMatrix {
        self.zip(rhs, |a, b| a - b)
    }
}

impl Neg for &RingMatrix {
    type Output = RingMatrix;
    fn neg(self) -> RingMatrix {
        self.map(|e| -e)
    }
}

impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingMatrix {}x{}\n{self}", self.rows, self.cols)
    }
}
