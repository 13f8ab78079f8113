use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::Error;

/// A named indeterminate such as `x1`, `u3` or `lambda`.
///
/// Ordering splits the name into a non-digit stem and a trailing number, so
/// `u2 < u10 < v1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Self, Error> {
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Parse(format!("invalid variable name `{name}`")));
        }
        Ok(Var(Arc::from(name)))
    }

    /// `stem` followed by an index, e.g. `indexed("u", 3)` is `u3`.
    pub fn indexed(stem: &str, i: usize) -> Self {
        Var::new(&format!("{stem}{i}")).expect("valid indexed variable")
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    fn split(&self) -> (&str, Option<u64>) {
        let s = &*self.0;
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (stem, digits) = s.split_at(cut);
        (stem, digits.parse().ok())
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, i) = self.split();
        let (b, j) = other.split();
        a.cmp(b).then(i.cmp(&j)).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    /// Panics on an invalid name; use [`Var::new`] for untrusted input.
    fn from(s: &str) -> Self {
        Var::new(s).expect("invalid variable name")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numeric_suffix_order() {
        let mut v: Vec<Var> = ["u10", "v1", "u2", "u", "lambda", "u1"].iter().map(|s| Var::from(*s)).collect();
        v.sort();
        let names: Vec<_> = v.iter().map(Var::name).collect();
        assert_eq!(names, ["lambda", "u", "u1", "u2", "u10", "v1"]);
    }

    #[test]
    fn rejects_bad_names() {
        assert!(Var::new("1x").is_err());
        assert!(Var::new("").is_err());
        assert!(Var::new("a-b").is_err());
        assert!(Var::new("x_1").is_ok());
    }
}
