use std::fmt;

use serde::Serialize;

use crate::Error;

/// Weakly decreasing sequence of positive parts; trailing zeros are dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::ShapeViolation(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The one-row partition `(k)`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Self::empty()
        } else {
            Partition(vec![k])
        }
    }

    /// The one-column partition `(1^k)`.
    pub fn column(k: usize) -> Self {
        Partition(vec![1; k])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Parts padded with zeros to length `n`. Panics if `n < self.len()`.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        assert!(n >= self.0.len(), "partition {self} has more than {n} parts");
        let mut v = self.0.clone();
        v.resize(n, 0);
        v
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Fits in the `rows`×`max` rectangle.
    pub fn fits(&self, rows: usize, max: u32) -> bool {
        self.len() <= rows && self.part(0) <= max
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0);
        Partition((1..=w).map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32).collect())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1,1`, `(3,1,1)` or an empty string.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Self::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>, _>>()?;
        Partition::new(parts)
    }
}

/// A skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SkewShape {
    pub outer: Partition,
    pub inner: Partition,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self, Error> {
        if !outer.contains(&inner) {
            return Err(Error::ShapeViolation(format!("{inner} is not contained in {outer}")));
        }
        Ok(SkewShape { outer, inner })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape { outer, inner: Partition::empty() }
    }

    pub fn rows(&self) -> usize {
        self.outer.len()
    }

    /// Cells `(row, col)`, 0-based, in row-major order.
    pub fn cells(&self) -> Vec<(usize, u32)> {
        (0..self.rows())
            .flat_map(|i| (self.inner.part(i)..self.outer.part(i)).map(move |c| (i, c)))
            .collect()
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

/// All partitions with at most `n` parts, each at most `m`.
///
/// Order is lexicographic on the reversed zero-padded part vectors, so for
/// `n = 2, m = 1` the list is `(), (1), (1,1)`. The count is `C(n+m, n)`.
pub fn partitions_in_box(n: usize, m: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill_box(&mut cur, n, m, &mut out);
    out
}

// Chooses the last part first (outermost loop), so that parts compared from
// the end vary slowest.
fn fill_box(cur: &mut Vec<u32>, k: usize, cap: u32, out: &mut Vec<Partition>) {
    if k == 0 {
        out.push(Partition::new(cur.clone()).unwrap());
        return;
    }
    let floor = if k < cur.len() { cur[k] } else { 0 };
    for v in floor..=cap {
        cur[k - 1] = v;
        fill_box(cur, k - 1, cap, out);
    }
}

/// Occupation numbers `n_0..n_M` of the sites of the phase model.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct OccupationSequence(Vec<u32>);

impl OccupationSequence {
    /// Needs at least one site.
    pub fn new(counts: Vec<u32>) -> Result<Self, Error> {
        if counts.is_empty() {
            return Err(Error::ShapeViolation("occupation sequence needs at least one site".into()));
        }
        Ok(OccupationSequence(counts))
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    /// Largest site index `M`.
    pub fn max_site(&self) -> u32 {
        self.0.len() as u32 - 1
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(M^{n_M}, …, 1^{n_1})`; zeros are implicit.
    pub fn to_partition(&self) -> Partition {
        let mut parts = Vec::new();
        for (j, &c) in self.0.iter().enumerate().rev() {
            parts.extend(std::iter::repeat(j as u32).take(c as usize));
        }
        Partition::new(parts).unwrap()
    }

    /// Inverse of [`Self::to_partition`] for `N` particles on sites `0..=M`.
    pub fn from_partition(lambda: &Partition, n: usize, m: u32) -> Result<Self, Error> {
        if !lambda.fits(n, m) {
            return Err(Error::ShapeViolation(format!("{lambda} does not fit in ({m})^{n}")));
        }
        let mut counts = vec![0u32; m as usize + 1];
        for i in 0..n {
            counts[lambda.part(i) as usize] += 1;
        }
        Ok(OccupationSequence(counts))
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// `C(n+m, n)`, the number of partitions in the `n`×`m` box.
pub fn box_count(n: usize, m: u32) -> u64 {
    binomial(n as u64 + m as u64, n as u64)
}
