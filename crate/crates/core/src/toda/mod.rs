//! The finite 2-Toda hierarchy on matrices indexed by `m..n`.

mod linear;
mod restrict;
mod wave;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use linear::{check_factorization, check_inverses, check_zakharov_shabat, verify_linear_problem, Flow, WaveSide};
pub use restrict::{power_sum_append_zeros_check, restrict_tau};
pub use wave::{bilinear_check, bilinear_residues, shifted_tau, verify_prop1, wave_entries, Shift, WaveEntry, WaveKind};
pub(crate) use wave::raw_wave;

use crate::algebra::{MultiPoly, Rational, RingMatrix};
use crate::combinatorics::{partitions_in_box, Partition};
use crate::symfunc::{char_poly, zeta_all, TimeVector};
use crate::Error;

/// A value attached to a lattice site `s`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SitedValue<T> {
    pub s: i64,
    pub value: T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// `exp(Σ t_l Λ^l)`, upper triangular.
    Raise,
    /// `exp(Σ t_l (Λ^T)^l)`, lower triangular.
    Lower,
}

/// `exp(Σ_l t_l Λ^l)` or its transpose as a Toeplitz matrix of `ζ_k(t)`.
/// The size is `t.len() + 1`.
pub fn shift_exp(direction: Direction, t: &TimeVector, size: usize) -> RingMatrix {
    let z = zeta_all(size.saturating_sub(1), t);
    RingMatrix::from_fn(size, size, |i, j| {
        let k = match direction {
            Direction::Raise => j as i64 - i as i64,
            Direction::Lower => i as i64 - j as i64,
        };
        if k < 0 {
            MultiPoly::zero()
        } else {
            z[k as usize].clone()
        }
    })
}

/// Finite Toda data: matrix indices run over `m..n`, `A` is constant and
/// `x`, `y` carry `n-m-1` time variables each.
#[derive(Clone, Debug)]
pub struct TauContext {
    m: i64,
    n: i64,
    a: RingMatrix,
    x: TimeVector,
    y: TimeVector,
    dressed: RingMatrix,
}

impl TauContext {
    pub fn new(m: i64, n: i64, a: RingMatrix, x: TimeVector, y: TimeVector) -> Result<Self, Error> {
        if n <= m {
            return Err(Error::Config(format!("need n > m, got m={m} n={n}")));
        }
        let size = (n - m) as usize;
        if a.rows() != size || a.cols() != size {
            return Err(Error::Config(format!("A must be {size}x{size}")));
        }
        if a.entries().iter().any(|e| e.as_constant().is_none()) {
            return Err(Error::Config("A must have constant entries".into()));
        }
        if x.len() != size - 1 || y.len() != size - 1 {
            return Err(Error::Config(format!("time vectors must have length {}", size - 1)));
        }
        let dressed = &(&shift_exp(Direction::Raise, &x, size) * &a) * &shift_exp(Direction::Lower, &y.neg(), size);
        Ok(TauContext { m, n, a, x, y, dressed })
    }

    /// Times `x1..`, `y1..` as free variables.
    pub fn symbolic(m: i64, n: i64, a: RingMatrix) -> Result<Self, Error> {
        let k = (n - m - 1).max(0) as usize;
        Self::new(m, n, a, TimeVector::symbolic("x", k), TimeVector::symbolic("y", k))
    }

    /// Same `A`, new times.
    pub fn with_times(&self, x: TimeVector, y: TimeVector) -> Result<Self, Error> {
        Self::new(self.m, self.n, self.a.clone(), x, y)
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn size(&self) -> usize {
        (self.n - self.m) as usize
    }

    pub fn a(&self) -> &RingMatrix {
        &self.a
    }

    pub fn x(&self) -> &TimeVector {
        &self.x
    }

    pub fn y(&self) -> &TimeVector {
        &self.y
    }

    /// `exp(Σ x_k Λ^k) A exp(-Σ y_k (Λ^T)^k)`.
    pub fn dressed_matrix(&self) -> &RingMatrix {
        &self.dressed
    }

    pub(crate) fn check_site(&self, s: i64, lo: i64, hi: i64) -> Result<(), Error> {
        if s < lo || s > hi {
            return Err(Error::RangeViolation(format!("s={s} outside {lo}..={hi}")));
        }
        Ok(())
    }

    /// Determinant of `a` on absolute row and column indices.
    pub fn minor(&self, rows: &[i64], cols: &[i64]) -> Result<MultiPoly, Error> {
        self.minor_of(&self.dressed, rows, cols)
    }

    pub(crate) fn minor_of(&self, mat: &RingMatrix, rows: &[i64], cols: &[i64]) -> Result<MultiPoly, Error> {
        let r: Vec<usize> = rows.iter().map(|&i| (i - self.m) as usize).collect();
        let c: Vec<usize> = cols.iter().map(|&j| (j - self.m) as usize).collect();
        mat.submatrix(&r, &c).det()
    }

    /// `τ(s)`, the leading `(s-m)` minor of the dressed matrix.
    pub fn tau(&self, s: i64) -> Result<MultiPoly, Error> {
        self.check_site(s, self.m, self.n)?;
        self.dressed.leading((s - self.m) as usize).det()
    }

    /// `τ(s)` as `Σ A_{λμ} χ_λ(x) χ_μ(-y)` over `λ, μ ⊆ (n-s)^{s-m}`.
    pub fn tau_schur_expand(&self, s: i64) -> Result<MultiPoly, Error> {
        self.check_site(s, self.m, self.n)?;
        let rows = (s - self.m) as usize;
        let width = (self.n - s) as u32;
        let parts = partitions_in_box(rows, width);
        let neg_y = self.y.neg();
        let chi_x: Vec<MultiPoly> = parts.iter().map(|l| char_poly(l, &self.x, rows)).collect::<Result<_, _>>()?;
        let chi_y: Vec<MultiPoly> = parts.iter().map(|l| char_poly(l, &neg_y, rows)).collect::<Result<_, _>>()?;
        let mut total = MultiPoly::zero();
        for (li, l) in parts.iter().enumerate() {
            for (mi, mu) in parts.iter().enumerate() {
                let coef = self.a_minor(l, mu, rows)?;
                if coef.is_zero() {
                    continue;
                }
                total = &total + &(&coef * &(&chi_x[li] * &chi_y[mi]));
            }
        }
        Ok(total)
    }

    /// `A_{λμ} = det[a_{λ_{r+1-i}+i-1, μ_{r+1-j}+j-1}]` in 0-based offsets.
    fn a_minor(&self, l: &Partition, mu: &Partition, r: usize) -> Result<MultiPoly, Error> {
        let ri: Vec<usize> = (1..=r).map(|i| (l.part(r - i) as usize) + i - 1).collect();
        let ci: Vec<usize> = (1..=r).map(|j| (mu.part(r - j) as usize) + j - 1).collect();
        self.a.submatrix(&ri, &ci).det()
    }
}

/// Seeded random integer matrix with entries in `[-5, 5]` whose leading
/// principal minors are all nonzero.
pub fn generic_matrix(size: usize, seed: u64) -> RingMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let rows: Vec<Vec<i64>> = (0..size).map(|_| (0..size).map(|_| rng.random_range(-5..=5)).collect()).collect();
        let a = RingMatrix::from_ints(&rows).unwrap();
        if (1..=size).all(|k| !a.leading(k).det().unwrap().is_zero()) {
            return a;
        }
    }
}

/// Leading principal minors of `a` that vanish, as their sizes.
/// Reads a row-major CSV of integers and rejects matrices with a vanishing
/// leading principal minor.
pub fn matrix_from_csv(text: &str) -> Result<RingMatrix, Error> {
    let rows = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Parse(format!("`{}`: {e}", c.trim()))))
                .collect::<Result<Vec<i64>, Error>>()
        })
        .collect::<Result<Vec<_>, Error>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows.len()) {
        return Err(Error::Config("matrix file must hold a nonempty square array".into()));
    }
    let a = RingMatrix::from_ints(&rows)?;
    let bad = vanishing_leading_minors(&a);
    if !bad.is_empty() {
        return Err(Error::Config(format!("leading minors of order {bad:?} vanish")));
    }
    Ok(a)
}

pub fn vanishing_leading_minors(a: &RingMatrix) -> Vec<usize> {
    (1..=a.rows()).filter(|&k| a.leading(k).det().map(|d| d.is_zero()).unwrap_or(true)).collect()
}

/// A rational point with entries `num/den`, `num` in `[-9, 9]`, `den` in
/// `1..=4`.
pub fn random_rationals(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rational> {
    (0..len).map(|_| Rational::new(rng.random_range(-9..=9), rng.random_range(1..=4)).unwrap()).collect()
}
