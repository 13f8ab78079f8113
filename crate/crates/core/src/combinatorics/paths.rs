//! Non-crossing column-strict lattice paths on the `(M+1)`×`2N` lattice.
//!
//! Horizontal edges are labelled by slots `-N..=N`, with slot 0 the middle
//! line between the two halves. Global column `c` (1-based) sits between
//! slots `c-N-1` and `c-N`. Path `j` starts on slot `j-N-1` at row 0, ends
//! on slot `j` at row `M`, and is recorded by its rows `ρ_j(1..=N)` on the
//! `N` slots in between. Its row on the middle slot is `ρ_j(N-j+1)`.
//!
//! Each lattice column is closed off by two virtual vertical edges: a left
//! column is entered from below and left empty above, a right column the
//! other way round. Vertex letters then depend only on the two vertical
//! edges at the vertex: `d` when both are empty, `a` when both are used.

use std::fmt;

use serde::Serialize;

use super::{Partition, PlanePartitionBox};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Columns `1..=N`, weighted by `v_1..v_N`.
    Left,
    /// Columns `N+1..=2N`, weighted by `u_1..u_N`.
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Up,
    Right,
}

/// Letter counts `(t^d, t^a)` of one lattice column.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ColumnLetters {
    pub d: u32,
    pub a: u32,
}

impl ColumnLetters {
    pub fn exponent(&self) -> i32 {
        self.d as i32 - self.a as i32
    }
}

/// Per-path rows with the endpoints included: index 0 is row 0, index
/// `N+1` is row `M`. `None` marks slots outside a half lattice.
type Track = Vec<Option<u32>>;

struct Lattice<'a> {
    n: usize,
    m: u32,
    tracks: &'a [Track],
}

impl Lattice<'_> {
    fn column_range(&self, side: Option<Side>) -> std::ops::RangeInclusive<usize> {
        match side {
            None => 1..=2 * self.n,
            Some(Side::Left) => 1..=self.n,
            Some(Side::Right) => self.n + 1..=2 * self.n,
        }
    }

    /// Vertical edges `1..=M` of global column `c`, with a use count each.
    fn column_usage(&self, c: usize) -> Option<Vec<u32>> {
        let mut used = vec![0u32; self.m as usize + 1];
        for (j0, t) in self.tracks.iter().enumerate() {
            let j = j0 + 1;
            if c < j || c > j + self.n {
                continue;
            }
            let k = c - j;
            let (lo, hi) = (t[k]?, t[k + 1]?);
            for r in lo + 1..=hi {
                used[r as usize] += 1;
            }
        }
        Some(used)
    }

    fn check(&self, side: Option<Side>) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::ShapeViolation(msg));
        for (j0, t) in self.tracks.iter().enumerate() {
            let known: Vec<u32> = t.iter().flatten().copied().collect();
            if known.windows(2).any(|w| w[0] > w[1]) || known.iter().any(|&r| r > self.m) {
                return bad(format!("path {} is not an up-right path in the box", j0 + 1));
            }
        }
        for c in self.column_range(side) {
            let used = self.column_usage(c).expect("every path crossing a column is known on that side");
            if used.iter().any(|&u| u > 1) {
                return bad(format!("column {c} has a shared vertical edge"));
            }
        }
        // Path j sits one slot index ahead of path j+1 on every shared slot.
        for w in self.tracks.windows(2) {
            for i in 0..=self.n {
                if let (Some(a), Some(b)) = (w[0][i + 1], w[1][i]) {
                    if a < b {
                        return bad("paths cross".into());
                    }
                }
            }
        }
        Ok(())
    }

    fn letters(&self, c: usize) -> ColumnLetters {
        let used = self.column_usage(c).expect("column must be fully known");
        let left = c <= self.n;
        let m = self.m as usize;
        let mut out = ColumnLetters::default();
        for r in 0..=m {
            let below = if r == 0 { left } else { used[r] == 1 };
            let above = if r == m { !left } else { used[r + 1] == 1 };
            match (below, above) {
                (false, false) => out.d += 1,
                (true, true) => out.a += 1,
                _ => {}
            }
        }
        out
    }

    /// Whether some path runs along row 0 into global column `c`.
    fn enters_at_row_zero(&self, c: usize) -> bool {
        self.tracks.iter().enumerate().any(|(j0, t)| {
            let j = j0 + 1;
            c >= j && c <= j + self.n && t[c - j] == Some(0)
        })
    }
}

fn full_track(m: u32, rho: &[u32]) -> Track {
    std::iter::once(0).chain(rho.iter().copied()).chain(std::iter::once(m)).map(Some).collect()
}

/// A full configuration of `N` paths.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticePathConfig {
    n: usize,
    m: u32,
    /// `turning_rows[j][k-1] = ρ_{j+1}(k)`.
    turning_rows: Vec<Vec<u32>>,
}

impl LatticePathConfig {
    pub fn new(n: usize, m: u32, turning_rows: Vec<Vec<u32>>) -> Result<Self, Error> {
        if turning_rows.len() != n || turning_rows.iter().any(|r| r.len() != n) {
            return Err(Error::ShapeViolation(format!("need {n} paths with {n} rows each")));
        }
        let c = LatticePathConfig { n, m, turning_rows };
        c.lattice_check()?;
        Ok(c)
    }

    fn tracks(&self) -> Vec<Track> {
        self.turning_rows.iter().map(|r| full_track(self.m, r)).collect()
    }

    fn lattice_check(&self) -> Result<(), Error> {
        let tracks = self.tracks();
        Lattice { n: self.n, m: self.m, tracks: &tracks }.check(None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn turning_rows(&self) -> &[Vec<u32>] {
        &self.turning_rows
    }

    /// Rows at which the paths cross the middle line.
    pub fn middle(&self) -> Partition {
        Partition::new((0..self.n).map(|j| self.turning_rows[j][self.n - j - 1]).collect())
            .expect("non-crossing paths meet the middle in decreasing rows")
    }

    /// Up/right steps of path `j` (0-based), starting on its first slot.
    pub fn steps(&self, j: usize) -> Vec<Step> {
        let t = full_track(self.m, &self.turning_rows[j]);
        let mut out = Vec::new();
        for k in 0..=self.n {
            let climb = t[k + 1].unwrap() - t[k].unwrap();
            out.extend(std::iter::repeat(Step::Up).take(climb as usize));
            out.push(Step::Right);
        }
        out
    }

    /// Letter counts of global columns `1..=2N`.
    pub fn letters(&self) -> Vec<ColumnLetters> {
        let tracks = self.tracks();
        let lat = Lattice { n: self.n, m: self.m, tracks: &tracks };
        (1..=2 * self.n).map(|c| lat.letters(c)).collect()
    }

    /// `t^d - t^a` for global columns `1..=2N`: `v_1..v_N` then `u_1..u_N`.
    pub fn column_exponents(&self) -> Vec<i32> {
        self.letters().iter().map(ColumnLetters::exponent).collect()
    }

    /// Path `j` becomes column `j` of the array, read bottom to top.
    pub fn to_plane_partition(&self) -> PlanePartitionBox {
        let n = self.n;
        let rows = (0..n).map(|i| (0..n).map(|j| self.turning_rows[j][n - 1 - i]).collect()).collect();
        PlanePartitionBox::new(n, self.m, rows).expect("valid paths give a valid plane partition")
    }

    pub fn from_plane_partition(pp: &PlanePartitionBox) -> Result<Self, Error> {
        let n = pp.n();
        let rows = (0..n).map(|j| (1..=n).map(|k| pp.get(n - k, j)).collect()).collect();
        LatticePathConfig::new(n, pp.m(), rows)
    }

    pub fn half(&self, side: Side) -> HalfPathConfig {
        let n = self.n;
        let rows = (0..n)
            .map(|j| {
                let mid = n - j;
                match side {
                    Side::Left => self.turning_rows[j][..mid].to_vec(),
                    Side::Right => self.turning_rows[j][mid - 1..].to_vec(),
                }
            })
            .collect();
        HalfPathConfig { side, n, m: self.m, rows }
    }
}

impl fmt::Display for LatticePathConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, r) in self.turning_rows.iter().enumerate() {
            let s: Vec<String> = r.iter().map(u32::to_string).collect();
            writeln!(f, "path {}: {}", j + 1, s.join(" "))?;
        }
        Ok(())
    }
}

/// Paths restricted to one half of the lattice. For path `j` (0-based) the
/// left half keeps `ρ(1..=N-j)`, ending on the middle row; the right half
/// keeps `ρ(N-j..=N)`, starting on it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct HalfPathConfig {
    side: Side,
    n: usize,
    m: u32,
    rows: Vec<Vec<u32>>,
}

impl HalfPathConfig {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn tracks(&self) -> Vec<Track> {
        let n = self.n;
        (0..n)
            .map(|j| {
                let mut t: Track = vec![None; n + 2];
                let mid = n - j;
                match self.side {
                    Side::Left => {
                        t[0] = Some(0);
                        for (k, &r) in self.rows[j].iter().enumerate() {
                            t[k + 1] = Some(r);
                        }
                    }
                    Side::Right => {
                        for (k, &r) in self.rows[j].iter().enumerate() {
                            t[mid + k] = Some(r);
                        }
                        t[n + 1] = Some(self.m);
                    }
                }
                t
            })
            .collect()
    }

    pub fn middle(&self) -> Partition {
        let parts = self
            .rows
            .iter()
            .map(|r| match self.side {
                Side::Left => *r.last().unwrap(),
                Side::Right => r[0],
            })
            .collect();
        Partition::new(parts).expect("non-crossing paths meet the middle in decreasing rows")
    }

    /// Letter counts of this half's columns, in order `1..=N`.
    pub fn letters(&self) -> Vec<ColumnLetters> {
        let tracks = self.tracks();
        let lat = Lattice { n: self.n, m: self.m, tracks: &tracks };
        lat.column_range(Some(self.side)).map(|c| lat.letters(c)).collect()
    }

    pub fn column_exponents(&self) -> Vec<i32> {
        self.letters().iter().map(ColumnLetters::exponent).collect()
    }

    /// Whether a path enters the half's column `q` (1-based) along row 0.
    pub fn enters_at_row_zero(&self, q: usize) -> bool {
        let tracks = self.tracks();
        let lat = Lattice { n: self.n, m: self.m, tracks: &tracks };
        let c = match self.side {
            Side::Left => q,
            Side::Right => self.n + q,
        };
        lat.enters_at_row_zero(c)
    }
}

/// Restrictions on a full path enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathConstraint {
    None,
    /// The paths cross the middle line at the rows given by the partition,
    /// i.e. the occupation pattern of the middle slot is fixed.
    Middle(Partition),
}

/// Every weakly increasing sequence of length `len` in `lo..=hi`.
fn monotone_sequences(len: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(len);
    fn go(cur: &mut Vec<u32>, len: usize, lo: u32, hi: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for v in lo..=hi {
            cur.push(v);
            go(cur, len, v, hi, out);
            cur.pop();
        }
    }
    if lo <= hi || len == 0 {
        go(&mut cur, len, lo, hi, &mut out);
    }
    out
}

/// Cartesian product over per-path candidate lists, first path slowest.
fn product(lists: &[Vec<Vec<u32>>]) -> Vec<Vec<Vec<u32>>> {
    let mut acc: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
    for l in lists {
        acc = acc
            .into_iter()
            .flat_map(|pre| {
                l.iter().map(move |x| {
                    let mut p = pre.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    acc
}

/// All full configurations satisfying `constraint`, found by filtering
/// every choice of monotone rows through the lattice checks.
pub fn enumerate_path_configs(n: usize, m: u32, constraint: &PathConstraint) -> Vec<LatticePathConfig> {
    if let PathConstraint::Middle(l) = constraint {
        if !l.fits(n, m) {
            return Vec::new();
        }
    }
    let per_path: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|j| {
            let all = monotone_sequences(n, 0, m);
            match constraint {
                PathConstraint::None => all,
                PathConstraint::Middle(l) => all.into_iter().filter(|r| r[n - j - 1] == l.part(j)).collect(),
            }
        })
        .collect();
    product(&per_path)
        .into_iter()
        .filter_map(|rows| LatticePathConfig::new(n, m, rows).ok())
        .collect()
}

/// Extra conditions on a half enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfPathConstraint {
    None,
    /// Left half: the first path turns right at row `k` in the first column.
    FirstTurnsAt(u32),
    /// Right half: the last `k` paths turn up at row 1 in their final
    /// column, and only the first `N-k` right columns see a path on row 0.
    LastTurnUpAtOne(usize),
}

/// All half configurations meeting the middle line at `lambda`.
pub fn enumerate_half_paths(
    side: Side,
    lambda: &Partition,
    n: usize,
    m: u32,
    constraint: &HalfPathConstraint,
) -> Result<Vec<HalfPathConfig>, Error> {
    if !lambda.fits(n, m) {
        return Err(Error::ShapeViolation(format!("{lambda} does not fit in ({m})^{n}")));
    }
    let per_path: Vec<Vec<Vec<u32>>> = (0..n)
        .map(|j| {
            let mid = lambda.part(j);
            match side {
                Side::Left => monotone_sequences(n - j - 1, 0, mid)
                    .into_iter()
                    .map(|mut r| {
                        r.push(mid);
                        r
                    })
                    .collect(),
                Side::Right => monotone_sequences(j, mid, m)
                    .into_iter()
                    .map(|r| std::iter::once(mid).chain(r).collect())
                    .collect(),
            }
        })
        .collect();
    let out = product(&per_path)
        .into_iter()
        .map(|rows| HalfPathConfig { side, n, m, rows })
        .filter(|h| {
            let tracks = h.tracks();
            Lattice { n, m, tracks: &tracks }.check(Some(side)).is_ok()
        })
        .filter(|h| match (constraint, side) {
            (HalfPathConstraint::None, _) => true,
            (HalfPathConstraint::FirstTurnsAt(k), Side::Left) => n > 0 && h.rows[0][0] == *k,
            (HalfPathConstraint::LastTurnUpAtOne(k), Side::Right) => {
                (n - k + 1..=n).all(|q| *h.rows[q - 1].last().unwrap() == 1 && !h.enters_at_row_zero(q))
            }
            _ => false,
        })
        .collect();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_array() -> PlanePartitionBox {
        PlanePartitionBox::new(3, 4, vec![vec![3, 1, 1], vec![3, 1, 1], vec![2, 1, 1]]).unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_path_configs(1, 0, &PathConstraint::None).len(), 1);
        assert_eq!(enumerate_path_configs(1, 1, &PathConstraint::None).len(), 2);
        assert_eq!(enumerate_path_configs(2, 1, &PathConstraint::None).len(), 6);
    }

    #[test]
    fn running_example() {
        let c = LatticePathConfig::from_plane_partition(&sample_array()).unwrap();
        assert_eq!(c.turning_rows(), &[vec![2, 3, 3], vec![1, 1, 1], vec![1, 1, 1]]);
        assert_eq!(c.middle(), "3,1,1".parse().unwrap());
        assert!(enumerate_path_configs(3, 4, &PathConstraint::None).contains(&c));
        assert_eq!(c.to_plane_partition(), sample_array());
        assert_eq!(c.steps(1).len(), 4 + 4);
    }

    #[test]
    fn shared_vertical_edge_is_rejected() {
        // Both paths would climb through row 1 of column 2.
        assert!(LatticePathConfig::new(2, 1, vec![vec![0, 1], vec![1, 1]]).is_err());
    }

    #[test]
    fn single_column_letters() {
        let empty = LatticePathConfig::new(1, 1, vec![vec![0]]).unwrap();
        assert_eq!(empty.column_exponents(), vec![1, -1]);
        let full = LatticePathConfig::new(1, 1, vec![vec![1]]).unwrap();
        assert_eq!(full.column_exponents(), vec![-1, 1]);
    }

    #[test]
    fn halves_split_the_full_count() {
        let lambda: Partition = "2,1".parse().unwrap();
        let full = enumerate_path_configs(3, 2, &PathConstraint::Middle(lambda.clone())).len();
        let l = enumerate_half_paths(Side::Left, &lambda, 3, 2, &HalfPathConstraint::None).unwrap().len();
        let r = enumerate_half_paths(Side::Right, &lambda, 3, 2, &HalfPathConstraint::None).unwrap().len();
        assert_eq!(full, l * r);
    }
}
