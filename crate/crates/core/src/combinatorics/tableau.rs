use std::fmt;

use serde::Serialize;

use super::SkewShape;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Order {
    /// Rows weakly increase, columns strictly increase.
    Ascending,
    /// Rows weakly decrease, columns strictly decrease.
    Descending,
}

/// A semistandard filling of a skew shape with entries in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Tableau {
    shape: SkewShape,
    /// Row `i` holds the entries of columns `inner[i]..outer[i]`.
    rows: Vec<Vec<u32>>,
    order: Order,
}

impl Tableau {
    pub fn new(shape: SkewShape, rows: Vec<Vec<u32>>, order: Order, n: u32) -> Result<Self, Error> {
        let t = Tableau { shape, rows, order };
        t.validate(n)?;
        Ok(t)
    }

    fn validate(&self, n: u32) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::ShapeViolation(msg));
        if self.rows.len() != self.shape.rows() {
            return bad(format!("{} rows for shape {}", self.rows.len(), self.shape));
        }
        for (i, row) in self.rows.iter().enumerate() {
            let want = (self.shape.outer.part(i) - self.shape.inner.part(i)) as usize;
            if row.len() != want {
                return bad(format!("row {i} has {} entries, expected {want}", row.len()));
            }
            if row.iter().any(|&v| v == 0 || v > n) {
                return bad(format!("row {i} has entries outside 1..={n}"));
            }
        }
        for (i, c) in self.shape.cells() {
            let v = self.at(i, c).unwrap();
            if let Some(l) = c.checked_sub(1).and_then(|cl| self.at(i, cl)) {
                let ok = match self.order {
                    Order::Ascending => l <= v,
                    Order::Descending => l >= v,
                };
                if !ok {
                    return bad(format!("row condition fails at ({i}, {c})"));
                }
            }
            if let Some(u) = i.checked_sub(1).and_then(|iu| self.at(iu, c)) {
                let ok = match self.order {
                    Order::Ascending => u < v,
                    Order::Descending => u > v,
                };
                if !ok {
                    return bad(format!("column condition fails at ({i}, {c})"));
                }
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    pub fn order(&self) -> Order {
        self.order
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// Entry at 0-based `(row, col)` in diagram coordinates.
    pub fn at(&self, i: usize, c: u32) -> Option<u32> {
        let lo = self.shape.inner.part(i);
        if i >= self.rows.len() || c < lo || c >= self.shape.outer.part(i) {
            return None;
        }
        Some(self.rows[i][(c - lo) as usize])
    }

    /// `t[j-1]` is the number of entries equal to `j`, for `j = 1..=n`.
    pub fn weight(&self, n: u32) -> Vec<u32> {
        let mut t = vec![0u32; n as usize];
        for v in self.rows.iter().flatten() {
            t[*v as usize - 1] += 1;
        }
        t
    }

    /// Swaps the order convention via `v -> n+1-v`.
    pub fn complement(&self, n: u32) -> Tableau {
        let order = match self.order {
            Order::Ascending => Order::Descending,
            Order::Descending => Order::Ascending,
        };
        let rows = self.rows.iter().map(|r| r.iter().map(|v| n + 1 - v).collect()).collect();
        Tableau { shape: self.shape.clone(), rows, order }
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows.iter().enumerate() {
            let pad = "  ".repeat(self.shape.inner.part(i) as usize);
            let s: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{pad}{}", s.join(" "))?;
        }
        Ok(())
    }
}

/// Lazily enumerates all semistandard fillings of a skew shape.
///
/// Ascending fillings come out in lexicographic order of their row-major
/// entry lists; descending ones are complements of those.
pub struct Tableaux {
    shape: SkewShape,
    n: u32,
    order: Order,
    cells: Vec<(usize, u32)>,
    /// For each cell, the index of the cell to its left and above, if any.
    left: Vec<Option<usize>>,
    above: Vec<Option<usize>>,
    vals: Vec<u32>,
    started: bool,
    done: bool,
}

pub fn enumerate_tableaux(shape: &SkewShape, n: u32, order: Order) -> Tableaux {
    let cells = shape.cells();
    let find = |i: usize, c: u32| cells.iter().position(|&x| x == (i, c));
    let left = cells.iter().map(|&(i, c)| c.checked_sub(1).and_then(|cl| find(i, cl))).collect();
    let above = cells.iter().map(|&(i, c)| i.checked_sub(1).and_then(|iu| find(iu, c))).collect();
    let len = cells.len();
    Tableaux {
        shape: shape.clone(),
        n,
        order,
        cells,
        left,
        above,
        vals: vec![0; len],
        started: false,
        done: false,
    }
}

impl Tableaux {
    fn floor(&self, k: usize) -> u32 {
        let l = self.left[k].map_or(1, |j| self.vals[j]);
        let a = self.above[k].map_or(1, |j| self.vals[j] + 1);
        l.max(a)
    }

    /// Fills cells `from..` with their smallest admissible values.
    fn fill_from(&mut self, from: usize) -> bool {
        for k in from..self.cells.len() {
            let f = self.floor(k);
            if f > self.n {
                return false;
            }
            self.vals[k] = f;
        }
        true
    }

    /// Next filling in lexicographic order: bump the last cell that can
    /// grow, then refill the suffix minimally.
    fn advance(&mut self) -> bool {
        for k in (0..self.cells.len()).rev() {
            if self.vals[k] < self.n {
                self.vals[k] += 1;
                // Suffix floors only grow with vals[k], so one failure is final.
                if self.fill_from(k + 1) {
                    return true;
                }
            }
        }
        false
    }

    fn current(&self) -> Tableau {
        let mut rows: Vec<Vec<u32>> = vec![Vec::new(); self.shape.rows()];
        for (k, &(i, _)) in self.cells.iter().enumerate() {
            rows[i].push(self.vals[k]);
        }
        let t = Tableau { shape: self.shape.clone(), rows, order: Order::Ascending };
        match self.order {
            Order::Ascending => t,
            Order::Descending => t.complement(self.n),
        }
    }
}

impl Iterator for Tableaux {
    type Item = Tableau;

    fn next(&mut self) -> Option<Tableau> {
        if self.done {
            return None;
        }
        let ok = if !self.started {
            self.started = true;
            self.fill_from(0)
        } else {
            self.advance()
        };
        if !ok {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}
