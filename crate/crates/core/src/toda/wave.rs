//! Wave-matrix entries as signed minor ratios, their derivative forms and
//! the bilinear residue identity.

use serde::Serialize;

use super::TauContext;
use crate::algebra::{MultiPoly, RingMatrix, Var};
use crate::symfunc::{zeta_all, zeta_of_derivatives, TimeVector};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveKind {
    /// `ŵ^(∞)_k(s)`, entry `(s, s-k)` of `Ŵ^(∞)`.
    WInf,
    /// `ŵ^(0)_k(s)`, entry `(s, s+k)` of `Ŵ^(0)`.
    WZero,
    /// `ŵ*^(∞)_k(s)`, entry `(s+k, s)` of `(Ŵ^(∞))^{-1}`.
    WStarInf,
    /// `ŵ*^(0)_k(s)`, entry `(s-k, s)` of `(Ŵ^(0))^{-1}`.
    WStarZero,
}

impl WaveKind {
    pub const ALL: [WaveKind; 4] = [WaveKind::WInf, WaveKind::WZero, WaveKind::WStarInf, WaveKind::WStarZero];

    /// Largest valid `k` at site `s`.
    pub fn max_k(self, ctx: &TauContext, s: i64) -> i64 {
        match self {
            WaveKind::WInf | WaveKind::WStarZero => s - ctx.m(),
            WaveKind::WZero | WaveKind::WStarInf => ctx.n() - s - 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WaveEntry {
    pub numerator: MultiPoly,
    pub denominator: MultiPoly,
}

impl WaveEntry {
    fn reduced(numerator: MultiPoly, denominator: MultiPoly) -> Self {
        if numerator.is_zero() {
            return WaveEntry { numerator, denominator: MultiPoly::one() };
        }
        if numerator == denominator {
            return WaveEntry { numerator: MultiPoly::one(), denominator: MultiPoly::one() };
        }
        match numerator.div_exact(&denominator) {
            Ok(q) => WaveEntry { numerator: q, denominator: MultiPoly::one() },
            Err(_) => WaveEntry { numerator, denominator },
        }
    }

    /// `numerator * d == n * denominator`.
    pub fn equals_ratio(&self, n: &MultiPoly, d: &MultiPoly) -> bool {
        &self.numerator * d == n * &self.denominator
    }
}

fn sign(k: i64) -> MultiPoly {
    MultiPoly::from_int(if k % 2 == 0 { 1 } else { -1 })
}

/// Signed numerator minor and the site `t` of the denominator `τ(t)`.
pub(crate) fn raw_wave(ctx: &TauContext, s: i64, kind: WaveKind, k: i64) -> Result<(MultiPoly, i64), Error> {
    let m = ctx.m();
    let upto = |end: i64| (m..end).collect::<Vec<i64>>();
    Ok(match kind {
        WaveKind::WInf => {
            let rows: Vec<i64> = (m..=s).filter(|&r| r != s - k).collect();
            (&sign(k) * &ctx.minor(&rows, &upto(s))?, s)
        }
        WaveKind::WZero => {
            let mut cols = upto(s);
            cols.push(s + k);
            (ctx.minor(&upto(s + 1), &cols)?, s)
        }
        WaveKind::WStarInf => {
            let mut rows = upto(s);
            rows.push(s + k);
            (ctx.minor(&rows, &upto(s + 1))?, s + 1)
        }
        WaveKind::WStarZero => {
            let cols: Vec<i64> = (m..=s).filter(|&c| c != s - k).collect();
            (&sign(k) * &ctx.minor(&upto(s), &cols)?, s + 1)
        }
    })
}

/// Wave-matrix entry at site `s`, `m ≤ s ≤ n-1`. Negative `k` gives zero.
pub fn wave_entries(ctx: &TauContext, s: i64, kind: WaveKind, k: i64) -> Result<WaveEntry, Error> {
    ctx.check_site(s, ctx.m(), ctx.n() - 1)?;
    if k < 0 {
        return Ok(WaveEntry { numerator: MultiPoly::zero(), denominator: MultiPoly::one() });
    }
    if k > kind.max_k(ctx, s) {
        return Err(Error::RangeViolation(format!("k={k} outside 0..={} for {kind:?} at s={s}", kind.max_k(ctx, s))));
    }
    let (num, t) = raw_wave(ctx, s, kind, k)?;
    Ok(WaveEntry::reduced(num, ctx.tau(t)?))
}

/// The time variables behind a symbolic time vector.
fn time_vars(t: &TimeVector) -> Result<Vec<Var>, Error> {
    t.values()
        .iter()
        .map(|p| match p.vars() {
            [v] if *p == MultiPoly::var(v.name()) => Ok(v.clone()),
            _ => Err(Error::Config(format!("time {p} is not a free variable"))),
        })
        .collect()
}

/// One of the four derivative formulas for the wave entries, checked by
/// cross-multiplication.
pub fn verify_prop1(ctx: &TauContext, s: i64, k: i64, kind: WaveKind) -> Result<bool, Error> {
    let entry = wave_entries(ctx, s, kind, k)?;
    let (xv, yv) = (time_vars(ctx.x())?, time_vars(ctx.y())?);
    let k = k as usize;
    let (deriv, den) = match kind {
        WaveKind::WInf => (zeta_of_derivatives(k, -1, &xv, &ctx.tau(s)?)?, ctx.tau(s)?),
        WaveKind::WZero => (zeta_of_derivatives(k, -1, &yv, &ctx.tau(s + 1)?)?, ctx.tau(s)?),
        WaveKind::WStarInf => (zeta_of_derivatives(k, 1, &xv, &ctx.tau(s + 1)?)?, ctx.tau(s + 1)?),
        WaveKind::WStarZero => (zeta_of_derivatives(k, 1, &yv, &ctx.tau(s)?)?, ctx.tau(s + 1)?),
    };
    Ok(entry.equals_ratio(&deriv, &den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Shift {
    /// `x → x - ε(λ)`
    XMinus,
    /// `x → x + ε(λ)`
    XPlus,
    /// `y → y - ε(λ)`
    YMinus,
    /// `y → y + ε(λ)`
    YPlus,
}

/// `1 - λΛ` (`inverse = false`) or `Σ_k λ^k Λ^k` (`inverse = true`).
fn spectral_factor(size: usize, lambda: &MultiPoly, inverse: bool) -> RingMatrix {
    let powers: Vec<MultiPoly> = (0..size as u32).map(|k| lambda.pow(k)).collect();
    RingMatrix::from_fn(size, size, |i, j| {
        if j < i {
            MultiPoly::zero()
        } else if inverse {
            powers[j - i].clone()
        } else if j == i {
            MultiPoly::one()
        } else if j == i + 1 {
            -lambda
        } else {
            MultiPoly::zero()
        }
    })
}

/// `τ(s)` with one time family shifted by `±ε(λ)`, as a determinant of the
/// dressed matrix multiplied by `(1 - λΛ)^{±1}` or its transpose.
pub fn shifted_tau(ctx: &TauContext, s: i64, which: Shift, lambda: &MultiPoly) -> Result<MultiPoly, Error> {
    ctx.check_site(s, ctx.m(), ctx.n())?;
    let size = ctx.size();
    let a = ctx.dressed_matrix();
    let mat = match which {
        Shift::XMinus => &spectral_factor(size, lambda, false) * a,
        Shift::XPlus => &spectral_factor(size, lambda, true) * a,
        Shift::YMinus => a * &spectral_factor(size, lambda, true).transpose(),
        Shift::YPlus => a * &spectral_factor(size, lambda, false).transpose(),
    };
    mat.leading((s - ctx.m()) as usize).det()
}

/// Coefficient of `λ^{-1}` in `λ^{e0} (Σ_k z_k λ^k) p(λ)` where `p` has
/// only nonpositive powers.
fn residue(lam: &Var, e0: i32, t: &TimeVector, p: &MultiPoly) -> MultiPoly {
    let Some((lo, _)) = p.degree_range(lam) else {
        return MultiPoly::zero();
    };
    let top = -1 - e0 - lo;
    if top < 0 {
        return MultiPoly::zero();
    }
    let z = zeta_all(top as usize, t);
    (0..=top).map(|k| &z[k as usize] * &p.coeff(lam, -1 - e0 - k)).sum()
}

/// Both residues of the bilinear relation at a rational point, after
/// clearing the common denominator `τ(s; x, y) τ(s'; x', y')`.
pub fn bilinear_residues(
    ctx: &TauContext,
    s: i64,
    s2: i64,
    x: &TimeVector,
    x2: &TimeVector,
    y: &TimeVector,
    y2: &TimeVector,
) -> Result<(MultiPoly, MultiPoly), Error> {
    ctx.check_site(s, ctx.m(), ctx.n() - 1)?;
    ctx.check_site(s2, ctx.m() + 1, ctx.n())?;
    let c1 = ctx.with_times(x.clone(), y.clone())?;
    let c2 = ctx.with_times(x2.clone(), y2.clone())?;
    for (c, site) in [(&c1, s), (&c2, s2)] {
        if c.tau(site)?.is_zero() {
            return Err(Error::DegenerateDenominator(format!("tau({site}) vanishes at the chosen point")));
        }
    }
    let lam = Var::from("lambda");
    let inv = MultiPoly::var_pow(&lam, -1);
    let lhs = &shifted_tau(&c1, s + 1, Shift::YMinus, &inv)? * &shifted_tau(&c2, s2 - 1, Shift::YPlus, &inv)?;
    let rhs = &shifted_tau(&c1, s, Shift::XMinus, &inv)? * &shifted_tau(&c2, s2, Shift::XPlus, &inv)?;
    let l = residue(&lam, (s2 - s - 2) as i32, &y.add(&y2.neg()), &lhs);
    let r = residue(&lam, (s - s2) as i32, &x.add(&x2.neg()), &rhs);
    Ok((l, r))
}

/// Whether the two residues of the bilinear relation agree exactly.
pub fn bilinear_check(
    ctx: &TauContext,
    s: i64,
    s2: i64,
    x: &TimeVector,
    x2: &TimeVector,
    y: &TimeVector,
    y2: &TimeVector,
) -> Result<bool, Error> {
    let (l, r) = bilinear_residues(ctx, s, s2, x, x2, y, y2)?;
    Ok(l == r)
}
