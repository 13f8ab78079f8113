/// Enumerates integer vectors cell by cell, where each cell's admissible
/// range depends on the cells before it. Vectors come out in lexicographic
/// order.
pub(crate) struct Odometer<F> {
    vals: Vec<u32>,
    range: F,
    state: State,
}

#[derive(PartialEq)]
enum State {
    Fresh,
    Running,
    Done,
}

impl<F: Fn(&[u32], usize) -> (u32, u32)> Odometer<F> {
    pub(crate) fn new(len: usize, range: F) -> Self {
        Odometer { vals: vec![0; len], range, state: State::Fresh }
    }

    fn fill_from(&mut self, from: usize) -> bool {
        for k in from..self.vals.len() {
            let (lo, hi) = (self.range)(&self.vals, k);
            if lo > hi {
                return self.bump(k);
            }
            self.vals[k] = lo;
        }
        true
    }

    /// Finds the next admissible vector that differs at or before cell `k`.
    fn bump(&mut self, mut k: usize) -> bool {
        while k > 0 {
            k -= 1;
            let (_, hi) = (self.range)(&self.vals, k);
            while self.vals[k] < hi {
                self.vals[k] += 1;
                if self.fill_from_no_bump(k + 1) {
                    return true;
                }
            }
        }
        false
    }

    fn fill_from_no_bump(&mut self, from: usize) -> bool {
        for k in from..self.vals.len() {
            let (lo, hi) = (self.range)(&self.vals, k);
            if lo > hi {
                return false;
            }
            self.vals[k] = lo;
        }
        true
    }
}

impl<F: Fn(&[u32], usize) -> (u32, u32)> Iterator for Odometer<F> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let ok = match self.state {
            State::Done => return None,
            State::Fresh => self.fill_from(0),
            State::Running => {
                let n = self.vals.len();
                self.bump(n)
            }
        };
        self.state = if ok { State::Running } else { State::Done };
        ok.then(|| self.vals.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weakly_increasing_pairs() {
        let got: Vec<Vec<u32>> = Odometer::new(2, |v: &[u32], k| (if k == 0 { 0 } else { v[0] }, 2)).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![0, 2], vec![1, 1], vec![1, 2], vec![2, 2]]);
    }

    #[test]
    fn empty_vector_yields_once() {
        assert_eq!(Odometer::new(0, |_: &[u32], _| (0, 0)).count(), 1);
    }

    #[test]
    fn dead_ends_are_skipped() {
        // Second cell must exceed the first, both in 0..=1.
        let got: Vec<Vec<u32>> = Odometer::new(2, |v: &[u32], k| if k == 0 { (0, 1) } else { (v[0] + 1, 1) }).collect();
        assert_eq!(got, vec![vec![0, 1]]);
    }
}
