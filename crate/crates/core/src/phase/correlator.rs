//! Boundary correlators: states with particles inserted at the boundary,
//! their pairings, and the recursions linking them.

use serde::Serialize;

use super::fock::{apply_b_string, apply_c_string, build_conj_state, build_state, pairing, StateVector};
use super::scalar::{n_point_admissible, scalar_product, single_det_form, ScalarMethod, SingleDet};
use crate::algebra::MultiPoly;
use crate::Error;

/// `⟨0|φ_k C(v_2)…C(v_N)`.
pub fn skew_conj_state(k: u32, v_rest: &[MultiPoly], m: usize) -> Result<StateVector, Error> {
    if k as usize > m {
        return Err(Error::RangeViolation(format!("site {k} beyond M={m}")));
    }
    let bra = StateVector::vacuum(m, true).annihilate(k as usize);
    apply_c_string(v_rest, &bra)
}

/// `B(u_1)…B(u_{N-k}) (φ†_1)^k |0⟩`.
pub fn skew_state(k: usize, u_rest: &[MultiPoly], m: usize) -> Result<StateVector, Error> {
    if k > 0 && m == 0 {
        return Err(Error::RangeViolation("site 1 needs M ≥ 1".into()));
    }
    let ket = (0..k).fold(StateVector::vacuum(m, false), |s, _| s.create(1));
    apply_b_string(u_rest, &ket)
}

/// `B(u_1)…B(u_{N-n}) φ†_{r_1}…φ†_{r_n} |0⟩`.
pub fn insertion_state(r: &[u32], u_rest: &[MultiPoly], m: usize) -> Result<StateVector, Error> {
    if let Some(&bad) = r.iter().find(|&&x| x as usize > m) {
        return Err(Error::RangeViolation(format!("site {bad} beyond M={m}")));
    }
    let ket = r.iter().fold(StateVector::vacuum(m, false), |s, &x| s.create(x as usize));
    apply_b_string(u_rest, &ket)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Correlator {
    /// `⟨0|φ_k C(v_2)…C(v_N) B(u_1)…B(u_N)|0⟩`.
    KindI(u32),
    /// `⟨Ψ|Ψ^{1^k}⟩`.
    KindII(usize),
    /// `⟨Ψ|Ψ^{r_1..r_n}⟩`.
    NPoint(Vec<u32>),
}

/// Correlator with `N = u.len() = v.len()`, computed in the Fock space.
/// `KindI` ignores `v_1`.
pub fn boundary_correlator(kind: &Correlator, m: u32, u: &[MultiPoly], v: &[MultiPoly]) -> Result<MultiPoly, Error> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::Config(format!("{} u-letters but {} v-letters", n, v.len())));
    }
    let mm = m as usize;
    match kind {
        Correlator::KindI(k) => {
            if n == 0 || *k > m {
                return Err(Error::RangeViolation(format!("row {k} needs N ≥ 1 and k ≤ M={m}")));
            }
            pairing(&skew_conj_state(*k, &v[1..], mm)?, &build_state(u, mm)?)
        }
        Correlator::KindII(k) => {
            if *k > n {
                return Err(Error::RangeViolation(format!("1^{k} with N={n}")));
            }
            pairing(&build_conj_state(v, mm)?, &skew_state(*k, &u[..n - k], mm)?)
        }
        Correlator::NPoint(r) => {
            if !n_point_admissible(r, n, m) {
                return Err(Error::RangeViolation(format!("insertions {r:?} with N={n}, M={m}")));
            }
            pairing(&build_conj_state(v, mm)?, &insertion_state(r, &u[..n - r.len()], mm)?)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recursion {
    /// Expansion of `⟨Ψ|Ψ^{1^{n-q},0^q}⟩` in `u_{N-n}`.
    Mixed { n: usize, q: usize },
    /// Expansion of `⟨Ψ|Ψ^{0^n}⟩` in `u_{N-n}`.
    Zeros { n: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evaluation {
    Fock,
    Determinant,
}

fn insertion(head: Option<u32>, ones: usize, zeros: usize) -> Vec<u32> {
    head.into_iter().chain(std::iter::repeat_n(1, ones)).chain(std::iter::repeat_n(0, zeros)).collect()
}

fn evaluate(r: Vec<u32>, m: u32, u: &[MultiPoly], v: &[MultiPoly], how: Evaluation) -> Result<MultiPoly, Error> {
    match how {
        Evaluation::Fock => boundary_correlator(&Correlator::NPoint(r), m, u, v),
        Evaluation::Determinant => single_det_form(&SingleDet::NPoint(r), m, u, v),
    }
}

/// Both sides of a recursion. Every term on the right carries one more
/// insertion than the left and no longer depends on `u_{N-n}`.
pub fn recursion_sides(
    rec: Recursion,
    m: u32,
    u: &[MultiPoly],
    v: &[MultiPoly],
    how: Evaluation,
) -> Result<(MultiPoly, MultiPoly), Error> {
    let n_particles = u.len();
    let n = match rec {
        Recursion::Mixed { n, q } => {
            if n == 0 || q >= n {
                return Err(Error::RangeViolation(format!("q={q} needs 0 ≤ q < n={n}")));
            }
            n
        }
        Recursion::Zeros { n } => n,
    };
    if n >= n_particles {
        return Err(Error::RangeViolation(format!("n={n} needs n < N={n_particles}")));
    }
    if m == 0 {
        return Err(Error::RangeViolation("the expansion needs M ≥ 1".into()));
    }
    let w = &u[n_particles - n - 1];
    let wp = |e: i32| w.pow_i(e);
    let mi = m as i32;
    let at = |r: Vec<u32>| evaluate(r, m, u, v, how);
    match rec {
        Recursion::Mixed { n, q } => {
            let lhs = at(insertion(None, n - q, q))?;
            let mut rhs = &wp(-mi)? * &at(insertion(None, n - q, q + 1))?;
            rhs = &rhs + &(&wp(mi)? * &at(insertion(Some(m), n - q, q))?);
            for j in 1..m {
                let pair = &at(insertion(Some(j), n - q, q))? + &at(insertion(Some(j + 1), n - q - 1, q + 1))?;
                rhs = &rhs + &(&wp(2 * j as i32 - mi)? * &pair);
            }
            Ok((lhs, rhs))
        }
        Recursion::Zeros { n } => {
            let lhs = if n == 0 {
                let method = match how {
                    Evaluation::Fock => ScalarMethod::FockPairing,
                    Evaluation::Determinant => ScalarMethod::Determinant,
                };
                scalar_product(m, u, v, method)?
            } else {
                at(insertion(None, 0, n))?
            };
            let mut rhs = MultiPoly::zero();
            for j in 0..=m {
                rhs = &rhs + &(&wp(2 * j as i32 - mi)? * &at(insertion(Some(j), 0, n))?);
            }
            Ok((lhs, rhs))
        }
    }
}

pub fn verify_recursion(rec: Recursion, m: u32, u: &[MultiPoly], v: &[MultiPoly], how: Evaluation) -> Result<bool, Error> {
    let (l, r) = recursion_sides(rec, m, u, v, how)?;
    Ok(l == r)
}
