//! Coefficients of the phase-model state vectors as weighted sums over the
//! three combinatorial pictures.

use serde::Serialize;

use super::paths::{enumerate_half_paths, HalfPathConstraint, Side};
use super::plane::{enumerate_half, Half};
use super::{enumerate_tableaux, Order, Partition, SkewShape, Tableau};
use crate::algebra::{MultiPoly, Rational, Var};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Picture {
    Paths,
    PlanePartitions,
    Tableaux,
}

impl Picture {
    pub const ALL: [Picture; 3] = [Picture::Paths, Picture::PlanePartitions, Picture::Tableaux];
}

/// `∏ stem_l^{e}` over the given `(l, e)` pairs, `l` 1-based.
fn monomial(stem: &str, exps: impl IntoIterator<Item = (usize, i32)>) -> MultiPoly {
    let fs: Vec<(Var, i32)> = exps.into_iter().map(|(l, e)| (Var::indexed(stem, l), e)).collect();
    MultiPoly::monomial(Rational::one(), &fs)
}

/// Sums `stem_l^{e_l}` over exponent vectors, keeping columns `cols`
/// (1-based).
fn sum_weights(stem: &str, weights: impl Iterator<Item = Vec<i32>>, cols: std::ops::RangeInclusive<usize>) -> MultiPoly {
    weights.map(|w| monomial(stem, cols.clone().map(|l| (l, w[l - 1])))).sum()
}

/// Tableau weights: `sign·(2t_l - M)` for each letter `l = 1..=n`.
fn tableau_exponents(t: &Tableau, n: usize, m: u32, sign: i32) -> Vec<i32> {
    t.weight(n as u32).iter().map(|&c| sign * (2 * c as i32 - m as i32)).collect()
}

fn check_box(lambda: &Partition, n: usize, m: u32) -> Result<(), Error> {
    if lambda.fits(n, m) {
        Ok(())
    } else {
        Err(Error::ShapeViolation(format!("{lambda} does not fit in ({m})^{n}")))
    }
}

/// Coefficient `f_λ(u_1..u_N)` of the state vector.
pub fn weighted_sum_f(lambda: &Partition, n: usize, m: u32, picture: Picture) -> Result<MultiPoly, Error> {
    check_box(lambda, n, m)?;
    Ok(match picture {
        Picture::Paths => {
            let hs = enumerate_half_paths(Side::Right, lambda, n, m, &HalfPathConstraint::None)?;
            sum_weights("u", hs.iter().map(|h| h.column_exponents()), 1..=n)
        }
        Picture::PlanePartitions => {
            let hs = enumerate_half(Half::Upper, lambda, n, m, &[])?;
            sum_weights("u", hs.iter().map(|h| h.column_exponents()), 1..=n)
        }
        Picture::Tableaux => {
            let ts = enumerate_tableaux(&SkewShape::straight(lambda.clone()), n as u32, Order::Descending);
            sum_weights("u", ts.map(|t| tableau_exponents(&t, n, m, 1)), 1..=n)
        }
    })
}

/// Coefficient `g_λ(v_1..v_N)` of the conjugate state vector.
pub fn weighted_sum_g(lambda: &Partition, n: usize, m: u32, picture: Picture) -> Result<MultiPoly, Error> {
    check_box(lambda, n, m)?;
    Ok(match picture {
        Picture::Paths => {
            let hs = enumerate_half_paths(Side::Left, lambda, n, m, &HalfPathConstraint::None)?;
            sum_weights("v", hs.iter().map(|h| h.column_exponents()), 1..=n)
        }
        Picture::PlanePartitions => {
            let hs = enumerate_half(Half::Lower, lambda, n, m, &[])?;
            sum_weights("v", hs.iter().map(|h| h.column_exponents()), 1..=n)
        }
        Picture::Tableaux => {
            let ts = enumerate_tableaux(&SkewShape::straight(lambda.clone()), n as u32, Order::Ascending);
            sum_weights("v", ts.map(|t| tableau_exponents(&t, n, m, -1)), 1..=n)
        }
    })
}

/// Whether `(k) ⊆ λ ⊆ (M^{N-1}, k)`.
pub fn psi1_admissible(k: u32, lambda: &Partition, n: usize, m: u32) -> bool {
    n >= 1 && k <= m && lambda.fits(n, m) && lambda.part(0) >= k && lambda.part(n - 1) <= k
}

/// Whether `(1^k) ⊆ λ ⊆ (M^{N-k}, 1^k)`.
pub fn psi2_admissible(k: usize, lambda: &Partition, n: usize, m: u32) -> bool {
    k <= n
        && lambda.fits(n, m)
        && (k == 0 || lambda.part(k - 1) >= 1)
        && (n - k..n).all(|i| lambda.part(i) <= 1)
}

/// Coefficient `ψ^{(1,k)}_λ(v_2..v_N)` of the conjugate vector with `φ_k`
/// inserted at the boundary.
pub fn weighted_sum_psi1(k: u32, lambda: &Partition, n: usize, m: u32, picture: Picture) -> Result<MultiPoly, Error> {
    if !psi1_admissible(k, lambda, n, m) {
        return Err(Error::ShapeViolation(format!("{lambda} is outside the range for row {k}")));
    }
    Ok(match picture {
        Picture::Paths => {
            let hs = enumerate_half_paths(Side::Left, lambda, n, m, &HalfPathConstraint::FirstTurnsAt(k))?;
            sum_weights("v", hs.iter().map(|h| h.column_exponents()), 2..=n)
        }
        Picture::PlanePartitions => {
            let hs = enumerate_half(Half::Lower, lambda, n, m, &[((n - 1, 0), k)])?;
            sum_weights("v", hs.iter().map(|h| h.column_exponents()), 2..=n)
        }
        Picture::Tableaux => {
            // Entries 2..=N on λ/(k), stored shifted down by one.
            let shape = SkewShape::new(lambda.clone(), Partition::row(k))?;
            let ts = enumerate_tableaux(&shape, n as u32 - 1, Order::Ascending);
            ts.map(|t| {
                let w = t.weight(n as u32 - 1);
                monomial("v", w.iter().enumerate().map(|(i, &c)| (i + 2, m as i32 - 2 * c as i32)))
            })
            .sum()
        }
    })
}

/// Coefficient `ψ^{(2,1^k)}_λ(u_1..u_{N-k})` of the state vector with
/// `(φ†_1)^k` inserted at the boundary.
pub fn weighted_sum_psi2(k: usize, lambda: &Partition, n: usize, m: u32, picture: Picture) -> Result<MultiPoly, Error> {
    if !psi2_admissible(k, lambda, n, m) {
        return Err(Error::ShapeViolation(format!("{lambda} is outside the range for 1^{k}")));
    }
    Ok(match picture {
        Picture::Paths => {
            let hs = enumerate_half_paths(Side::Right, lambda, n, m, &HalfPathConstraint::LastTurnUpAtOne(k))?;
            sum_weights("u", hs.iter().map(|h| h.column_exponents()), 1..=n - k)
        }
        Picture::PlanePartitions => {
            let pins: Vec<((usize, usize), u32)> =
                (0..k).flat_map(|i| (n - k..n).filter(move |&j| j >= i).map(move |j| ((i, j), 1))).collect();
            let hs = enumerate_half(Half::Upper, lambda, n, m, &pins)?;
            sum_weights("u", hs.iter().map(|h| h.column_exponents()), 1..=n - k)
        }
        Picture::Tableaux => {
            let shape = SkewShape::new(lambda.clone(), Partition::column(k))?;
            let ts = enumerate_tableaux(&shape, (n - k) as u32, Order::Descending);
            sum_weights("u", ts.map(|t| tableau_exponents(&t, n - k, m, 1)), 1..=n - k)
        }
    })
}
