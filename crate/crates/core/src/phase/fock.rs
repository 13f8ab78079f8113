//! Fock space of `M+1` bosonic sites, the local `L`-operator and the
//! monodromy matrix acting on kets and bras.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::Serialize;

use crate::algebra::{MultiPoly, Var};
use crate::combinatorics::{OccupationSequence, Partition};
use crate::Error;

/// Occupation numbers `n_0..n_M`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FockState(Vec<u32>);

impl FockState {
    pub fn new(occupation: Vec<u32>) -> Self {
        FockState(occupation)
    }

    pub fn vacuum(m: usize) -> Self {
        FockState(vec![0; m + 1])
    }

    pub fn occupation(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `(M^{n_M}, …, 1^{n_1}, 0^{n_0})`.
    pub fn partition(&self) -> Partition {
        OccupationSequence::new(self.0.clone()).expect("nonempty occupation").to_partition()
    }

    pub fn from_partition(lambda: &Partition, n: usize, m: u32) -> Result<Self, Error> {
        Ok(FockState(OccupationSequence::from_partition(lambda, n, m)?.counts().to_vec()))
    }

    /// All states of `M+1` sites with total occupation `n`.
    pub fn all_with_total(m: usize, n: u32) -> Vec<FockState> {
        fn go(left: usize, n: u32, cur: &mut Vec<u32>, out: &mut Vec<FockState>) {
            if left == 1 {
                cur.push(n);
                out.push(FockState(cur.clone()));
                cur.pop();
                return;
            }
            for k in 0..=n {
                cur.push(k);
                go(left - 1, n - k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(m + 1, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "|{}>", parts.join(","))
    }
}

/// A corner of a `2×2` operator matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Corner {
    A,
    B,
    C,
    D,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::A, Corner::B, Corner::C, Corner::D];

    pub fn from_indices(row: usize, col: usize) -> Corner {
        match (row, col) {
            (0, 0) => Corner::A,
            (0, 1) => Corner::B,
            (1, 0) => Corner::C,
            _ => Corner::D,
        }
    }

    pub fn indices(self) -> (usize, usize) {
        match self {
            Corner::A => (0, 0),
            Corner::B => (0, 1),
            Corner::C => (1, 0),
            Corner::D => (1, 1),
        }
    }
}

/// A ket, or with `dual` set a bra, over the sites `0..=M`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    m: usize,
    dual: bool,
    terms: BTreeMap<FockState, MultiPoly>,
}

impl StateVector {
    pub fn zero(m: usize, dual: bool) -> Self {
        StateVector { m, dual, terms: BTreeMap::new() }
    }

    pub fn vacuum(m: usize, dual: bool) -> Self {
        Self::basis(FockState::vacuum(m), dual)
    }

    pub fn basis(state: FockState, dual: bool) -> Self {
        let m = state.0.len() - 1;
        let mut terms = BTreeMap::new();
        terms.insert(state, MultiPoly::one());
        StateVector { m, dual, terms }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_dual(&self) -> bool {
        self.dual
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, state: &FockState) -> MultiPoly {
        self.terms.get(state).cloned().unwrap_or_else(MultiPoly::zero)
    }

    /// Coefficient of the basis state with partition `λ` and `n` particles.
    pub fn coefficient_of(&self, lambda: &Partition, n: usize) -> Result<MultiPoly, Error> {
        Ok(self.coefficient(&FockState::from_partition(lambda, n, self.m as u32)?))
    }

    /// Partitions carrying a nonzero coefficient.
    pub fn support(&self) -> Vec<Partition> {
        let mut v: Vec<Partition> = self.terms.keys().map(FockState::partition).collect();
        v.sort();
        v
    }

    fn insert(&mut self, state: FockState, c: MultiPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&state) {
            Some(v) => {
                *v = &*v + &c;
                if v.is_zero() {
                    self.terms.remove(&state);
                }
            }
            None => {
                self.terms.insert(state, c);
            }
        }
    }

    pub fn add(&self, other: &StateVector) -> StateVector {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.insert(s.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &MultiPoly) -> StateVector {
        let mut out = StateVector::zero(self.m, self.dual);
        for (s, v) in &self.terms {
            out.insert(s.clone(), v * c);
        }
        out
    }

    /// Adds one particle at site `j` (`up`) or removes one, dropping states
    /// where the site is empty.
    fn hop(&self, j: usize, up: bool) -> StateVector {
        let mut out = StateVector::zero(self.m, self.dual);
        for (s, c) in &self.terms {
            let mut occ = s.0.clone();
            if up {
                occ[j] += 1;
            } else if occ[j] == 0 {
                continue;
            } else {
                occ[j] -= 1;
            }
            out.insert(FockState(occ), c.clone());
        }
        out
    }

    /// `φ†_j` on a ket; on a bra this is `⟨ψ|φ†_j`.
    pub fn create(&self, j: usize) -> StateVector {
        self.hop(j, !self.dual)
    }

    /// `φ_j` on a ket; on a bra this is `⟨ψ|φ_j`.
    pub fn annihilate(&self, j: usize) -> StateVector {
        self.hop(j, self.dual)
    }

    /// Every term has total occupation `n`.
    pub fn has_total(&self, n: u32) -> bool {
        self.terms.keys().all(|s| s.total() == n)
    }
}

impl Serialize for StateVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            occupation: &'a [u32],
            partition: String,
            coefficient: String,
        }
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|(f, c)| Term { occupation: &f.0, partition: f.partition().to_string(), coefficient: c.to_string() })
            .collect();
        let mut st = s.serialize_struct("StateVector", 3)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("dual", &self.dual)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl fmt::Display for StateVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(s, c)| {
                let occ: Vec<String> = s.0.iter().map(u32::to_string).collect();
                if self.dual {
                    format!("({c})<{}|", occ.join(","))
                } else {
                    format!("({c})|{}>", occ.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// One entry of `L_j(u) = [[1/u, φ†_j], [φ_j, u]]` applied to `state`.
pub fn apply_local_l(j: usize, entry: Corner, u: &MultiPoly, state: &StateVector) -> Result<StateVector, Error> {
    if j > state.m {
        return Err(Error::RangeViolation(format!("site {j} beyond M={}", state.m)));
    }
    Ok(match entry {
        Corner::A => state.scale(&u.pow_i(-1)?),
        Corner::B => state.create(j),
        Corner::C => state.annihilate(j),
        Corner::D => state.scale(u),
    })
}

/// One entry of `T(u) = L_M(u)…L_0(u)` applied to `state`.
pub fn monodromy_apply(entry: Corner, u: &MultiPoly, state: &StateVector) -> Result<StateVector, Error> {
    let (row, col) = entry.indices();
    // `cur[c]` holds `(L_j…L_0)_{c,col}` applied to the state.
    let mut cur = [StateVector::zero(state.m, state.dual), StateVector::zero(state.m, state.dual)];
    cur[col] = state.clone();
    for j in 0..=state.m {
        let mut next = [StateVector::zero(state.m, state.dual), StateVector::zero(state.m, state.dual)];
        for (r, slot) in next.iter_mut().enumerate() {
            for (c, v) in cur.iter().enumerate() {
                if !v.is_zero() {
                    *slot = slot.add(&apply_local_l(j, Corner::from_indices(r, c), u, v)?);
                }
            }
        }
        cur = next;
    }
    let [a, b] = cur;
    Ok(if row == 0 { a } else { b })
}

/// Spectral variables `stem_l` for `l` in `range`.
pub fn spectral(stem: &str, range: impl IntoIterator<Item = usize>) -> Vec<MultiPoly> {
    range.into_iter().map(|l| MultiPoly::from(&Var::indexed(stem, l))).collect()
}

/// `B(u_1)…B(u_N)` applied to `state`, rightmost first.
pub fn apply_b_string(u: &[MultiPoly], state: &StateVector) -> Result<StateVector, Error> {
    let mut s = state.clone();
    for ui in u.iter().rev() {
        s = monodromy_apply(Corner::B, ui, &s)?;
    }
    Ok(s)
}

/// `state C(v_a)…C(v_b)` for a bra, leftmost first.
pub fn apply_c_string(v: &[MultiPoly], state: &StateVector) -> Result<StateVector, Error> {
    let mut s = state.clone();
    for vi in v {
        s = monodromy_apply(Corner::C, vi, &s)?;
    }
    Ok(s)
}

/// `|Ψ_M⟩ = B(u_1)…B(u_N)|0⟩`.
pub fn build_state(u: &[MultiPoly], m: usize) -> Result<StateVector, Error> {
    apply_b_string(u, &StateVector::vacuum(m, false))
}

/// `⟨Ψ_M| = ⟨0|C(v_N)…C(v_1)`.
pub fn build_conj_state(v: &[MultiPoly], m: usize) -> Result<StateVector, Error> {
    let rev: Vec<MultiPoly> = v.iter().rev().cloned().collect();
    apply_c_string(&rev, &StateVector::vacuum(m, true))
}

/// `⟨bra|ket⟩` with orthonormal Fock states.
pub fn pairing(bra: &StateVector, ket: &StateVector) -> Result<MultiPoly, Error> {
    if !bra.dual || ket.dual {
        return Err(Error::Config("pairing needs a bra on the left and a ket on the right".into()));
    }
    if bra.m != ket.m {
        return Err(Error::Config(format!("site counts differ: {} vs {}", bra.m, ket.m)));
    }
    Ok(bra.terms.iter().filter_map(|(s, c)| ket.terms.get(s).map(|d| c * d)).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u() -> MultiPoly {
        MultiPoly::var("u")
    }

    #[test]
    fn local_entries() {
        let vac = StateVector::vacuum(2, false);
        let b = apply_local_l(1, Corner::B, &u(), &vac).unwrap();
        assert_eq!(b.coefficient(&FockState::new(vec![0, 1, 0])), MultiPoly::one());
        assert!(apply_local_l(1, Corner::C, &u(), &vac).unwrap().is_zero());
        let a = apply_local_l(0, Corner::A, &u(), &b).unwrap();
        assert_eq!(a.coefficient(&FockState::new(vec![0, 1, 0])).to_string(), "u^-1");
        assert!(apply_local_l(3, Corner::A, &u(), &vac).is_err());
    }

    #[test]
    fn b_on_vacuum_one_step() {
        let s = monodromy_apply(Corner::B, &u(), &StateVector::vacuum(1, false)).unwrap();
        assert_eq!(s.coefficient(&FockState::new(vec![1, 0])).to_string(), "u^-1");
        assert_eq!(s.coefficient(&FockState::new(vec![0, 1])).to_string(), "u");
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn c_kills_the_vacuum() {
        assert!(monodromy_apply(Corner::C, &u(), &StateVector::vacuum(3, false)).unwrap().is_zero());
        assert!(monodromy_apply(Corner::B, &u(), &StateVector::vacuum(3, true)).unwrap().is_zero());
    }

    #[test]
    fn bra_and_ket_pair() {
        let bra = build_conj_state(&[MultiPoly::var("v")], 1).unwrap();
        let ket = build_state(&[u()], 1).unwrap();
        assert_eq!(pairing(&bra, &ket).unwrap().to_string(), "u*v^-1 + u^-1*v");
        assert!(pairing(&ket, &bra).is_err());
    }

    #[test]
    fn states_with_total() {
        assert_eq!(FockState::all_with_total(2, 2).len(), 6);
        assert_eq!(FockState::all_with_total(0, 3), vec![FockState::new(vec![3])]);
    }
}
