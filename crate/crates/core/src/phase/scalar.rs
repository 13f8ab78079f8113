//! The scalar product in three forms and the single determinant formulas
//! for the boundary correlators.

use serde::Serialize;

use super::fock::{build_conj_state, build_state, pairing};
use crate::algebra::{MultiPoly, RingMatrix};
use crate::combinatorics::{partitions_in_box, SkewShape};
use crate::symfunc::{hk_letters, schur_letters, SchurMethod};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScalarMethod {
    FockPairing,
    SchurSum,
    Determinant,
}

impl ScalarMethod {
    pub const ALL: [ScalarMethod; 3] = [ScalarMethod::FockPairing, ScalarMethod::SchurSum, ScalarMethod::Determinant];
}

pub(crate) fn squares(xs: &[MultiPoly]) -> Vec<MultiPoly> {
    xs.iter().map(|x| x * x).collect()
}

pub(crate) fn inverse_squares(xs: &[MultiPoly]) -> Result<Vec<MultiPoly>, Error> {
    xs.iter().map(|x| x.pow_i(-2)).collect()
}

/// `∏ x^e`.
pub(crate) fn power_product(xs: &[MultiPoly], e: i32) -> Result<MultiPoly, Error> {
    xs.iter().try_fold(MultiPoly::one(), |acc, x| Ok(&acc * &x.pow_i(e)?))
}

/// `∏_{j<k} (x_j^2 - x_k^2)`.
pub fn vandermonde_squares(xs: &[MultiPoly]) -> MultiPoly {
    let sq = squares(xs);
    let mut out = MultiPoly::one();
    for j in 0..sq.len() {
        for k in j + 1..sq.len() {
            out = &out * &(&sq[j] - &sq[k]);
        }
    }
    out
}

/// `h_k` of the letters, zero for negative `k`.
pub(crate) fn h(k: i64, letters: &[MultiPoly]) -> MultiPoly {
    hk_letters(k, letters)
}

/// `∏ u^{-M} ∏ v^{-M} det / (Δ'(w^2) Δ(v^2))` with `Δ'(w^2) = ∏_{j<k}(w_k^2 - w_j^2)`,
/// the orientation produced by column-reducing `h_p(w_k^2, ·)`. The
/// division is exact.
fn omega_times(det: &MultiPoly, u: &[MultiPoly], w: &[MultiPoly], v: &[MultiPoly], m: u32) -> Result<MultiPoly, Error> {
    let flips = w.len() * w.len().saturating_sub(1) / 2;
    let mut vand = &vandermonde_squares(w) * &vandermonde_squares(v);
    if flips % 2 == 1 {
        vand = -vand;
    }
    if vand.is_zero() {
        return Err(Error::DegenerateVandermonde);
    }
    let q = det.div_exact(&vand)?;
    Ok(&q * &(&power_product(u, -(m as i32))? * &power_product(v, -(m as i32))?))
}

fn check_lengths(u: &[MultiPoly], v: &[MultiPoly]) -> Result<usize, Error> {
    if u.len() != v.len() {
        return Err(Error::Config(format!("{} u-letters but {} v-letters", u.len(), v.len())));
    }
    Ok(u.len())
}

/// `⟨Ψ_M|Ψ_M⟩` for `N = u.len()` particles.
pub fn scalar_product(m: u32, u: &[MultiPoly], v: &[MultiPoly], method: ScalarMethod) -> Result<MultiPoly, Error> {
    let n = check_lengths(u, v)?;
    match method {
        ScalarMethod::FockPairing => pairing(&build_conj_state(v, m as usize)?, &build_state(u, m as usize)?),
        ScalarMethod::SchurSum => {
            let (us, vs) = (squares(u), inverse_squares(v)?);
            let sum: MultiPoly = partitions_in_box(n, m)
                .into_iter()
                .map(|l| {
                    let s = SkewShape::straight(l);
                    &schur_letters(&s, &us, SchurMethod::JacobiTrudi) * &schur_letters(&s, &vs, SchurMethod::JacobiTrudi)
                })
                .sum();
            Ok(&(&power_product(v, m as i32)? * &power_product(u, -(m as i32))?) * &sum)
        }
        ScalarMethod::Determinant => {
            if n == 0 {
                return Ok(MultiPoly::one());
            }
            let (us, vs) = (squares(u), squares(v));
            let top = (m as usize + n - 1) as i64;
            let mat = RingMatrix::from_fn(n, n, |a, b| h(top, &[us[a].clone(), vs[b].clone()]));
            omega_times(&mat.det()?, u, u, v, m)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingleDet {
    /// Coefficient of `v_1^{M-2q}`: the correlator with `φ_q` at the
    /// left boundary.
    Wave0(u32),
    /// `⟨Ψ|Ψ^{q}⟩`.
    OnePoint(u32),
    /// `⟨Ψ|Ψ^{q,1}⟩`.
    TwoPoint(u32),
    /// `⟨Ψ|Ψ^{r_1..r_n}⟩`.
    NPoint(Vec<u32>),
}

/// Whether `r_1 ∈ 0..=M`, later `r_i ∈ {0,1}`, nonincreasing, `1 ≤ n ≤ N`.
pub fn n_point_admissible(r: &[u32], n_particles: usize, m: u32) -> bool {
    !r.is_empty()
        && r.len() <= n_particles
        && r[0] <= m
        && r[1..].iter().all(|&x| x <= 1)
        && r.windows(2).all(|w| w[0] >= w[1])
}

/// Single determinant form of a boundary correlator.
pub fn single_det_form(kind: &SingleDet, m: u32, u: &[MultiPoly], v: &[MultiPoly]) -> Result<MultiPoly, Error> {
    let n = check_lengths(u, v)?;
    match kind {
        SingleDet::Wave0(q) => {
            if n == 0 || *q > m {
                return Err(Error::RangeViolation(format!("row {q} needs N ≥ 1 and q ≤ M={m}")));
            }
            let (us, vs) = (squares(u), squares(v));
            let top = (m as usize + n - 1) as i64;
            let mat = RingMatrix::from_fn(n, n, |j, k| {
                if j == 0 {
                    let mut letters = vec![us[k].clone()];
                    letters.extend_from_slice(&vs[1..]);
                    h(*q as i64, &letters)
                } else {
                    h(top, &[us[k].clone(), vs[j].clone()])
                }
            });
            omega_times(&mat.det()?, u, u, &v[1..], m)
        }
        SingleDet::OnePoint(q) => single_det_form(&SingleDet::NPoint(vec![*q]), m, u, v),
        SingleDet::TwoPoint(q) => single_det_form(&SingleDet::NPoint(vec![*q, 1]), m, u, v),
        SingleDet::NPoint(r) => {
            if !n_point_admissible(r, n, m) {
                return Err(Error::RangeViolation(format!("insertions {r:?} with N={n}, M={m}")));
            }
            let p = r.len();
            let kept = n - p;
            let (us, vs) = (squares(u), squares(v));
            let mat = RingMatrix::from_fn(n, n, |j, col| {
                if col < kept {
                    // c_{jk} = h_{M+N-k}(u_1^2..u_k^2, v_j^2), k = col + 1
                    let mut letters = us[..=col].to_vec();
                    letters.push(vs[j].clone());
                    h((m as usize + n - col - 1) as i64, &letters)
                } else {
                    // columns for r_n, r_{n-1}, …, r_1
                    let t = col - kept;
                    let idx = p - 1 - t;
                    let mut letters = us[..kept].to_vec();
                    letters.push(vs[j].clone());
                    h(m as i64 - r[idx] as i64 + idx as i64, &letters)
                }
            });
            // the c_{jk} columns already carry the u-Vandermonde
            omega_times(&mat.det()?, &u[..kept], &[], v, m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase::spectral;

    #[test]
    fn one_particle_one_site() {
        let (u, v) = (spectral("u", 1..=1), spectral("v", 1..=1));
        for method in ScalarMethod::ALL {
            assert_eq!(scalar_product(1, &u, &v, method).unwrap().to_string(), "u1*v1^-1 + u1^-1*v1", "{method:?}");
        }
    }

    #[test]
    fn empty_is_one() {
        for method in ScalarMethod::ALL {
            assert!(scalar_product(3, &[], &[], method).unwrap().is_one());
        }
    }

    #[test]
    fn coincident_letters() {
        let u = vec![MultiPoly::from_int(2), MultiPoly::from_int(2)];
        let v = vec![MultiPoly::from_int(1), MultiPoly::from_int(3)];
        assert!(matches!(scalar_product(1, &u, &v, ScalarMethod::Determinant), Err(Error::DegenerateVandermonde)));
    }

    #[test]
    fn admissible_insertions() {
        assert!(n_point_admissible(&[3, 1, 0], 3, 3));
        assert!(n_point_admissible(&[0, 0], 2, 1));
        assert!(!n_point_admissible(&[1, 2], 2, 3));
        assert!(!n_point_admissible(&[2, 2], 2, 3));
        assert!(!n_point_admissible(&[4], 2, 3));
        assert!(!n_point_admissible(&[1, 1, 1], 2, 3));
    }
}
