use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::odometer::Odometer;
use super::{Order, Partition, SkewShape, Tableau};
use crate::Error;

/// An `N`×`N` array with entries in `0..=M`, weakly decreasing along rows
/// and down columns. Indices are 0-based; `get(i, j)` is `π_{i+1,j+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PlanePartitionBox {
    n: usize,
    m: u32,
    rows: Vec<Vec<u32>>,
}

impl PlanePartitionBox {
    pub fn new(n: usize, m: u32, rows: Vec<Vec<u32>>) -> Result<Self, Error> {
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeViolation(format!("plane partition must be {n}x{n}")));
        }
        for i in 0..n {
            for j in 0..n {
                let v = rows[i][j];
                if v > m {
                    return Err(Error::ShapeViolation(format!("entry ({i},{j}) = {v} exceeds {m}")));
                }
                if (i > 0 && rows[i - 1][j] < v) || (j > 0 && rows[i][j - 1] < v) {
                    return Err(Error::ShapeViolation(format!("entry ({i},{j}) breaks monotonicity")));
                }
            }
        }
        Ok(PlanePartitionBox { n, m, rows })
    }

    pub fn zero(n: usize, m: u32) -> Self {
        PlanePartitionBox { n, m, rows: vec![vec![0; n]; n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Partition {
        Partition::new((0..self.n).map(|i| self.rows[i][i]).collect()).unwrap()
    }

    pub fn half(&self, half: Half) -> HalfPlanePartition {
        let rows = (0..self.n)
            .map(|i| (0..self.n).map(|j| if half.contains(i, j) { self.rows[i][j] } else { 0 }).collect())
            .collect();
        HalfPlanePartition { half, n: self.n, m: self.m, rows }
    }

    /// Glues two halves that share a diagonal.
    pub fn from_halves(upper: &HalfPlanePartition, lower: &HalfPlanePartition) -> Result<Self, Error> {
        if upper.half != Half::Upper || lower.half != Half::Lower {
            return Err(Error::ShapeViolation("expected an upper and a lower half".into()));
        }
        if upper.n != lower.n || upper.m != lower.m || upper.diagonal() != lower.diagonal() {
            return Err(Error::ShapeViolation("halves do not share a diagonal".into()));
        }
        let n = upper.n;
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if j >= i { upper.rows[i][j] } else { lower.rows[i][j] }).collect())
            .collect();
        PlanePartitionBox::new(n, upper.m, rows)
    }

    pub fn size(&self) -> u32 {
        self.rows.iter().flatten().sum()
    }
}

impl fmt::Display for PlanePartitionBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_grid(f, &self.rows, |_, _| true)
    }
}

fn fmt_grid(f: &mut fmt::Formatter<'_>, rows: &[Vec<u32>], show: impl Fn(usize, usize) -> bool) -> fmt::Result {
    for (i, r) in rows.iter().enumerate() {
        let s: Vec<String> =
            r.iter().enumerate().map(|(j, v)| if show(i, j) { v.to_string() } else { ".".into() }).collect();
        writeln!(f, "{}", s.join(" "))?;
    }
    Ok(())
}

/// Which triangle of the array, diagonal included.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Half {
    /// Cells with `j >= i`.
    Upper,
    /// Cells with `i >= j`.
    Lower,
}

impl Half {
    pub fn contains(self, i: usize, j: usize) -> bool {
        match self {
            Half::Upper => j >= i,
            Half::Lower => i >= j,
        }
    }

    fn cells(self, n: usize) -> Vec<(usize, usize)> {
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| self.contains(i, j)).collect()
    }
}

/// One triangle of a boxed plane partition. Cells outside the triangle are
/// stored as zero and ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HalfPlanePartition {
    half: Half,
    n: usize,
    m: u32,
    rows: Vec<Vec<u32>>,
}

impl HalfPlanePartition {
    pub fn half_kind(&self) -> Half {
        self.half
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// 0-based entry; zero outside the triangle.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i < self.n && j < self.n && self.half.contains(i, j) {
            self.rows[i][j]
        } else {
            0
        }
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn diagonal(&self) -> Partition {
        Partition::new((0..self.n).map(|i| self.rows[i][i]).collect()).unwrap()
    }

    /// Sum of the entries on the `d`-th off-diagonal of this triangle.
    fn diag_sum(&self, d: usize) -> i64 {
        (0..self.n.saturating_sub(d))
            .map(|i| match self.half {
                Half::Upper => self.rows[i][i + d],
                Half::Lower => self.rows[i + d][i],
            } as i64)
            .sum()
    }

    /// Exponent of the spectral variable attached to each lattice column,
    /// read off from differences of diagonal sums. Entry `l-1` belongs to
    /// `u_l` (upper) or `v_l` (lower).
    pub fn column_exponents(&self) -> Vec<i32> {
        let n = self.n;
        let m = self.m as i64;
        (1..=n)
            .map(|l| {
                let e = match self.half {
                    Half::Upper => 2 * (self.diag_sum(l - 1) - self.diag_sum(l)) - m,
                    Half::Lower => m - 2 * (self.diag_sum(n - l) - self.diag_sum(n - l + 1)),
                };
                e as i32
            })
            .collect()
    }

    /// Layers the triangle into a tableau of the diagonal shape: descending
    /// for the upper half, ascending for the lower.
    pub fn to_tableau(&self) -> Tableau {
        let n = self.n;
        let lambda = self.diagonal();
        let rows: Vec<Vec<u32>> = (0..lambda.len())
            .map(|i| {
                (1..=lambda.part(i))
                    .map(|c| {
                        let d = (1..)
                            .find(|&d| {
                                let off = match self.half {
                                    Half::Upper => self.get(i, i + d),
                                    Half::Lower => self.get(i + d, i),
                                };
                                c > off
                            })
                            .unwrap() as u32;
                        match self.half {
                            Half::Upper => d,
                            Half::Lower => n as u32 + 1 - d,
                        }
                    })
                    .collect()
            })
            .collect();
        let order = match self.half {
            Half::Upper => Order::Descending,
            Half::Lower => Order::Ascending,
        };
        Tableau::new(SkewShape::straight(lambda), rows, order, n.max(1) as u32)
            .expect("layering always yields a semistandard tableau")
    }

    /// Inverse of [`Self::to_tableau`].
    pub fn from_tableau(t: &Tableau, n: usize, m: u32) -> Result<Self, Error> {
        let shape = t.shape();
        if !shape.inner.is_empty() {
            return Err(Error::ShapeViolation("expected a straight shape".into()));
        }
        if !shape.outer.fits(n, m) {
            return Err(Error::ShapeViolation(format!("{} does not fit in ({m})^{n}", shape.outer)));
        }
        let half = match t.order() {
            Order::Descending => Half::Upper,
            Order::Ascending => Half::Lower,
        };
        let mut rows = vec![vec![0u32; n]; n];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            row[i] = shape.outer.part(i);
        }
        for (i, trow) in t.rows().iter().enumerate() {
            for d in 1..n - i {
                let count = match half {
                    Half::Upper => trow.iter().filter(|&&v| v > d as u32).count(),
                    Half::Lower => trow.iter().filter(|&&v| v < (n - d) as u32 + 1).count(),
                } as u32;
                match half {
                    Half::Upper => rows[i][i + d] = count,
                    Half::Lower => rows[i + d][i] = count,
                }
            }
        }
        let hp = HalfPlanePartition { half, n, m, rows };
        hp.validate()?;
        Ok(hp)
    }

    fn validate(&self) -> Result<(), Error> {
        for (i, j) in self.half.cells(self.n) {
            let v = self.rows[i][j];
            let above = i > 0 && self.half.contains(i - 1, j) && self.rows[i - 1][j] < v;
            let left = j > 0 && self.half.contains(i, j - 1) && self.rows[i][j - 1] < v;
            if v > self.m || above || left {
                return Err(Error::ShapeViolation(format!("entry ({i},{j}) is invalid")));
            }
        }
        Ok(())
    }
}

impl fmt::Display for HalfPlanePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_grid(f, &self.rows, |i, j| self.half.contains(i, j))
    }
}

/// All plane partitions in the `N`×`N`×`M` box, row-major lexicographic.
pub fn enumerate_plane_partitions(n: usize, m: u32) -> impl Iterator<Item = PlanePartitionBox> {
    let range = move |v: &[u32], k: usize| {
        let (i, j) = (k / n, k % n);
        let mut hi = m;
        if i > 0 {
            hi = hi.min(v[k - n]);
        }
        if j > 0 {
            hi = hi.min(v[k - 1]);
        }
        (0, hi)
    };
    Odometer::new(n * n, range).map(move |v| PlanePartitionBox { n, m, rows: v.chunks(n.max(1)).map(<[u32]>::to_vec).collect() })
}

/// Enumerates one triangle with the diagonal fixed to `lambda` and the
/// extra cells in `fixed` pinned to given values.
pub fn enumerate_half(
    half: Half,
    lambda: &Partition,
    n: usize,
    m: u32,
    fixed: &[((usize, usize), u32)],
) -> Result<Vec<HalfPlanePartition>, Error> {
    if !lambda.fits(n, m) {
        return Err(Error::ShapeViolation(format!("{lambda} does not fit in ({m})^{n}")));
    }
    let mut pins: Vec<((usize, usize), u32)> = (0..n).map(|i| ((i, i), lambda.part(i))).collect();
    for &((i, j), v) in fixed {
        if i >= n || j >= n || !half.contains(i, j) || v > m {
            return Err(Error::ShapeViolation(format!("cannot pin ({i},{j}) to {v}")));
        }
        if let Some(p) = pins.iter().find(|p| p.0 == (i, j)) {
            if p.1 != v {
                return Err(Error::ShapeViolation(format!("conflicting pins at ({i},{j})")));
            }
            continue;
        }
        pins.push(((i, j), v));
    }
    let cells = half.cells(n);
    let index = |i: usize, j: usize| cells.iter().position(|&c| c == (i, j));
    let left: Vec<Option<usize>> = cells.iter().map(|&(i, j)| j.checked_sub(1).and_then(|jl| index(i, jl))).collect();
    let above: Vec<Option<usize>> = cells.iter().map(|&(i, j)| i.checked_sub(1).and_then(|iu| index(iu, j))).collect();
    // A pinned cell dominated by (i,j) bounds it from below; a pinned cell
    // itself has a one-point range.
    let bounds: Vec<(u32, Option<u32>)> = cells
        .iter()
        .map(|&(i, j)| {
            let lo = pins.iter().filter(|((a, b), _)| *a >= i && *b >= j).map(|p| p.1).max().unwrap_or(0);
            let pin = pins.iter().find(|p| p.0 == (i, j)).map(|p| p.1);
            (lo, pin)
        })
        .collect();
    let range = |v: &[u32], k: usize| {
        let mut hi = m;
        if let Some(l) = left[k] {
            hi = hi.min(v[l]);
        }
        if let Some(a) = above[k] {
            hi = hi.min(v[a]);
        }
        match bounds[k] {
            (lo, Some(p)) => {
                if lo <= p && p <= hi {
                    (p, p)
                } else {
                    (1, 0)
                }
            }
            (lo, None) => (lo, hi),
        }
    };
    let out = Odometer::new(cells.len(), range)
        .map(|v| {
            let mut rows = vec![vec![0u32; n]; n];
            for (k, &(i, j)) in cells.iter().enumerate() {
                rows[i][j] = v[k];
            }
            HalfPlanePartition { half, n, m, rows }
        })
        .collect();
    Ok(out)
}

pub fn upper_diagonal(lambda: &Partition, n: usize, m: u32) -> Result<Vec<HalfPlanePartition>, Error> {
    enumerate_half(Half::Upper, lambda, n, m, &[])
}

pub fn lower_diagonal(lambda: &Partition, n: usize, m: u32) -> Result<Vec<HalfPlanePartition>, Error> {
    enumerate_half(Half::Lower, lambda, n, m, &[])
}

/// `∏_{i,j≤N, k≤M} (i+j+k-1)/(i+j+k-2)`, the number of plane partitions in
/// the box.
pub fn macmahon_count(n: usize, m: u32) -> BigInt {
    let mut acc = BigRational::from_integer(1.into());
    for i in 1..=n as i64 {
        for j in 1..=n as i64 {
            for k in 1..=m as i64 {
                acc *= BigRational::new((i + j + k - 1).into(), (i + j + k - 2).into());
            }
        }
    }
    assert!(acc.is_integer());
    acc.to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_array() -> PlanePartitionBox {
        PlanePartitionBox::new(3, 4, vec![vec![3, 1, 1], vec![3, 1, 1], vec![2, 1, 1]]).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_plane_partitions(1, 1).count(), 2);
        assert_eq!(enumerate_plane_partitions(2, 1).count(), 6);
        assert_eq!(enumerate_plane_partitions(0, 3).count(), 1);
        assert_eq!(macmahon_count(2, 1), 6.into());
        assert_eq!(macmahon_count(3, 3), 980.into());
    }

    #[test]
    fn running_example_is_enumerated() {
        assert!(enumerate_plane_partitions(3, 4).any(|p| p == sample_array()));
    }

    #[test]
    fn running_example_tableaux() {
        let up = sample_array().half(Half::Upper).to_tableau();
        assert_eq!(up.rows(), &[vec![3, 1, 1], vec![2], vec![1]]);
        assert_eq!(up.order(), Order::Descending);
        let low = sample_array().half(Half::Lower).to_tableau();
        assert_eq!(low.rows(), &[vec![1, 1, 2], vec![2], vec![3]]);
        assert_eq!(low.order(), Order::Ascending);
        assert_eq!(HalfPlanePartition::from_tableau(&up, 3, 4).unwrap(), sample_array().half(Half::Upper));
        assert_eq!(HalfPlanePartition::from_tableau(&low, 3, 4).unwrap(), sample_array().half(Half::Lower));
    }

    #[test]
    fn zero_gives_empty_tableau() {
        let t = PlanePartitionBox::zero(3, 2).half(Half::Upper).to_tableau();
        assert_eq!(t.shape().size(), 0);
    }

    #[test]
    fn halves_glue_back() {
        for p in enumerate_plane_partitions(3, 2) {
            let g = PlanePartitionBox::from_halves(&p.half(Half::Upper), &p.half(Half::Lower)).unwrap();
            assert_eq!(g, p);
        }
    }

    #[test]
    fn half_enumeration_matches_full() {
        let lambda: Partition = "2,1".parse().unwrap();
        let ups = upper_diagonal(&lambda, 3, 2).unwrap();
        let lows = lower_diagonal(&lambda, 3, 2).unwrap();
        let full = enumerate_plane_partitions(3, 2).filter(|p| p.diagonal() == lambda).count();
        assert_eq!(ups.len() * lows.len(), full);
        assert!(upper_diagonal(&"3".parse().unwrap(), 3, 2).is_err());
    }

    #[test]
    fn pinned_cells() {
        let lambda: Partition = "2,1".parse().unwrap();
        let pinned = enumerate_half(Half::Lower, &lambda, 2, 2, &[((1, 0), 2)]).unwrap();
        assert!(pinned.iter().all(|h| h.get(1, 0) == 2));
        assert_eq!(pinned.len(), 1);
        let impossible = enumerate_half(Half::Lower, &lambda, 2, 2, &[((1, 0), 0)]).unwrap();
        assert!(impossible.is_empty());
    }
}
