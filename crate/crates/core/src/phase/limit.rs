//! The restricted Toda wave functions and their limits onto the phase
//! model correlators.

use serde::Serialize;

use super::correlator::{boundary_correlator, Correlator};
use super::fock::spectral;
use super::scalar::{power_product, scalar_product, ScalarMethod};
use crate::algebra::{MultiPoly, RingMatrix, Var};
use crate::symfunc::{miwa_map, AlphabetSpec, Convention};
use crate::toda::{raw_wave, TauContext, WaveKind};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LimitKind {
    /// `v_1 → ∞` in the `W^0` numerator at `s = N-1`.
    V1ToInfinity(u32),
    /// `u_{N-k+1}, …, u_N → 0` in the `W^∞` numerator at `s = N`.
    UTailToZero(usize),
}

/// `A = δ`, `n - m = N + M`, times from `u^2` and `v^{-2}`.
pub fn restricted_context(n: usize, m: u32) -> Result<TauContext, Error> {
    let size = n + m as usize;
    if size < 2 {
        return Err(Error::RangeViolation(format!("N + M = {size} leaves no times")));
    }
    let u = AlphabetSpec::indexed("u", 1..=n, Convention::Squared);
    let v = AlphabetSpec::indexed("v", 1..=n, Convention::InverseSquared);
    let (x, y) = miwa_map(&u, &v, size - 1);
    TauContext::new(0, size as i64, RingMatrix::identity(size), x, y)
}

/// Both sides of the limit: the restricted `τ(s)·ŵ_k(s)` after the limit,
/// and the prefactor times the Fock-space correlator.
pub fn limit_sides(kind: LimitKind, n: usize, m: u32) -> Result<(MultiPoly, MultiPoly), Error> {
    let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
    let mi = m as i32;
    match kind {
        LimitKind::V1ToInfinity(k) => {
            if n == 0 || k > m {
                return Err(Error::RangeViolation(format!("row {k} needs N ≥ 1 and k ≤ M={m}")));
            }
            let ctx = restricted_context(n, m)?;
            let (num, _) = raw_wave(&ctx, n as i64 - 1, WaveKind::WZero, k as i64)?;
            let v1 = Var::indexed("v", 1);
            let lhs = match num.degree_range(&v1) {
                Some((_, hi)) if hi > 0 => {
                    return Err(Error::PoleViolation(format!("v1^{hi} survives v1 → ∞")));
                }
                _ => num.coeff(&v1, 0),
            };
            let pre = &power_product(&u, mi)? * &power_product(&v[1..], -mi)?;
            Ok((lhs, &pre * &boundary_correlator(&Correlator::KindI(k), m, &u, &v)?))
        }
        LimitKind::UTailToZero(k) => {
            if k > n || m == 0 {
                return Err(Error::RangeViolation(format!("1^{k} needs k ≤ N={n} and M ≥ 1")));
            }
            let ctx = restricted_context(n, m)?;
            let (num, _) = raw_wave(&ctx, n as i64, WaveKind::WInf, k as i64)?;
            let subs: Vec<(Var, MultiPoly)> = (n - k + 1..=n).map(|j| (Var::indexed("u", j), MultiPoly::zero())).collect();
            let lhs = num.substitute(&subs)?;
            let sign = MultiPoly::from_int(if k % 2 == 0 { 1 } else { -1 });
            let pre = &sign * &(&power_product(&u[..n - k], mi)? * &power_product(&v, -mi)?);
            Ok((lhs, &pre * &boundary_correlator(&Correlator::KindII(k), m, &u, &v)?))
        }
    }
}

pub fn limit_correspondence(kind: LimitKind, n: usize, m: u32) -> Result<bool, Error> {
    let (l, r) = limit_sides(kind, n, m)?;
    Ok(l == r)
}

/// `τ(N)` restricted, times `∏(v/u)^M`, against the scalar product.
pub fn restricted_scalar_product_check(n: usize, m: u32) -> Result<bool, Error> {
    let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
    let ua = AlphabetSpec::indexed("u", 1..=n, Convention::Squared);
    let va = AlphabetSpec::indexed("v", 1..=n, Convention::InverseSquared);
    let tau = crate::toda::restrict_tau(&ua, &va, m)?;
    let pre = &power_product(&v, m as i32)? * &power_product(&u, -(m as i32))?;
    Ok(&pre * &tau == scalar_product(m, &u, &v, ScalarMethod::FockPairing)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_cases() {
        assert!(limit_correspondence(LimitKind::V1ToInfinity(0), 1, 1).unwrap());
        assert!(limit_correspondence(LimitKind::UTailToZero(1), 1, 1).unwrap());
        assert!(restricted_scalar_product_check(1, 1).unwrap());
    }

    #[test]
    fn ranges() {
        assert!(matches!(limit_sides(LimitKind::V1ToInfinity(3), 2, 2), Err(Error::RangeViolation(_))));
        assert!(matches!(limit_sides(LimitKind::UTailToZero(3), 2, 2), Err(Error::RangeViolation(_))));
    }
}
