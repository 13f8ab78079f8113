//! Full wave-matrices, the Lax matrices and the linear problem, over
//! fractions whose denominators are products of `τ(s)`.

use std::collections::HashMap;

use serde::Serialize;

use super::wave::{raw_wave, WaveKind};
use super::{shift_exp, Direction, TauContext};
use crate::algebra::{MultiPoly, RingMatrix, Var};
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Flow {
    X,
    Y,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WaveSide {
    Inf,
    Zero,
}

/// `num / ∏ τ(m+1+i)^{den[i]}`.
#[derive(Clone, Debug)]
struct Frac {
    num: MultiPoly,
    den: Vec<u32>,
}

/// Arithmetic on [`Frac`] for one context.
struct FracRing {
    taus: Vec<MultiPoly>,
    dtaus: HashMap<Var, Vec<MultiPoly>>,
}

impl FracRing {
    fn new(ctx: &TauContext, vars: &[Var]) -> Result<Self, Error> {
        let taus: Vec<MultiPoly> = (ctx.m() + 1..=ctx.n()).map(|s| ctx.tau(s)).collect::<Result<_, _>>()?;
        if taus.iter().any(MultiPoly::is_zero) {
            return Err(Error::DegenerateDenominator("a leading minor vanishes identically".into()));
        }
        let mut dtaus = HashMap::new();
        for v in vars {
            dtaus.insert(v.clone(), taus.iter().map(|t| t.diff(v, 1)).collect::<Result<_, _>>()?);
        }
        Ok(FracRing { taus, dtaus })
    }

    fn zero(&self) -> Frac {
        self.poly(MultiPoly::zero())
    }

    fn poly(&self, p: MultiPoly) -> Frac {
        Frac { num: p, den: vec![0; self.taus.len()] }
    }

    fn over_tau(&self, p: MultiPoly, site: usize) -> Frac {
        let mut f = self.poly(p);
        if site > 0 {
            f.den[site - 1] = 1;
        }
        f
    }

    fn lift(&self, f: &Frac, den: &[u32]) -> MultiPoly {
        let mut num = f.num.clone();
        for (i, (&want, &have)) in den.iter().zip(&f.den).enumerate() {
            if want > have {
                num = &num * &self.taus[i].pow(want - have);
            }
        }
        num
    }

    fn add(&self, a: &Frac, b: &Frac) -> Frac {
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        let den: Vec<u32> = a.den.iter().zip(&b.den).map(|(x, y)| *x.max(y)).collect();
        let num = &self.lift(a, &den) + &self.lift(b, &den);
        self.reduce(Frac { num, den })
    }

    fn neg(&self, a: &Frac) -> Frac {
        Frac { num: -&a.num, den: a.den.clone() }
    }

    fn mul(&self, a: &Frac, b: &Frac) -> Frac {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let den = a.den.iter().zip(&b.den).map(|(x, y)| x + y).collect();
        self.reduce(Frac { num: &a.num * &b.num, den })
    }

    /// Cancels factors of `τ` from the numerator where they divide exactly.
    fn reduce(&self, mut f: Frac) -> Frac {
        if f.num.is_zero() {
            return self.zero();
        }
        for i in 0..f.den.len() {
            while f.den[i] > 0 {
                match f.num.div_exact(&self.taus[i]) {
                    Ok(q) => {
                        f.num = q;
                        f.den[i] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
        f
    }

    fn diff(&self, a: &Frac, v: &Var) -> Result<Frac, Error> {
        let Some(dt) = self.dtaus.get(v) else {
            return Ok(self.zero());
        };
        let used: Vec<usize> = (0..a.den.len()).filter(|&i| a.den[i] > 0).collect();
        let others = |skip: Option<usize>| -> MultiPoly {
            used.iter().filter(|&&i| Some(i) != skip).fold(MultiPoly::one(), |acc, &i| &acc * &self.taus[i])
        };
        let mut num = &a.num.diff(v, 1)? * &others(None);
        for &i in &used {
            let c = MultiPoly::from_int(a.den[i] as i64);
            num = &num - &(&(&a.num * &c) * &(&dt[i] * &others(Some(i))));
        }
        let mut den = a.den.clone();
        for &i in &used {
            den[i] += 1;
        }
        Ok(self.reduce(Frac { num, den }))
    }
}

#[derive(Clone, Debug)]
struct FracMatrix {
    size: usize,
    e: Vec<Frac>,
}

impl FracMatrix {
    fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> Result<Frac, Error>) -> Result<Self, Error> {
        let mut e = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                e.push(f(i, j)?);
            }
        }
        Ok(FracMatrix { size, e })
    }

    fn from_ring(r: &FracRing, m: &RingMatrix) -> Self {
        FracMatrix { size: m.rows(), e: m.entries().iter().map(|p| r.poly(p.clone())).collect() }
    }

    fn at(&self, i: usize, j: usize) -> &Frac {
        &self.e[i * self.size + j]
    }

    fn mul(&self, r: &FracRing, o: &Self) -> Self {
        let n = self.size;
        let mut e = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = r.zero();
                for k in 0..n {
                    let (a, b) = (self.at(i, k), o.at(k, j));
                    if !a.num.is_zero() && !b.num.is_zero() {
                        acc = r.add(&acc, &r.mul(a, b));
                    }
                }
                e.push(acc);
            }
        }
        FracMatrix { size: n, e }
    }

    fn zip(&self, o: &Self, f: impl Fn(&Frac, &Frac) -> Frac) -> Self {
        FracMatrix { size: self.size, e: self.e.iter().zip(&o.e).map(|(a, b)| f(a, b)).collect() }
    }

    fn sub(&self, r: &FracRing, o: &Self) -> Self {
        self.zip(o, |a, b| r.add(a, &r.neg(b)))
    }

    fn add(&self, r: &FracRing, o: &Self) -> Self {
        self.zip(o, |a, b| r.add(a, b))
    }

    fn diff(&self, r: &FracRing, v: &Var) -> Result<Self, Error> {
        Ok(FracMatrix { size: self.size, e: self.e.iter().map(|a| r.diff(a, v)).collect::<Result<_, _>>()? })
    }

    /// Keeps entries where `keep(i, j)`.
    fn mask(&self, r: &FracRing, keep: impl Fn(usize, usize) -> bool) -> Self {
        let n = self.size;
        FracMatrix { size: n, e: (0..n * n).map(|idx| if keep(idx / n, idx % n) { self.e[idx].clone() } else { r.zero() }).collect() }
    }

    fn is_zero(&self) -> bool {
        self.e.iter().all(|f| f.num.is_zero())
    }
}

/// Everything needed for the linear problem at one context.
struct Lax {
    ring: FracRing,
    xv: Vec<Var>,
    yv: Vec<Var>,
    w_inf: FracMatrix,
    w_zero: FracMatrix,
    w_inf_inv: FracMatrix,
    w_zero_inv: FracMatrix,
    a: FracMatrix,
    l: FracMatrix,
    mm: FracMatrix,
}

fn free_vars(t: &crate::symfunc::TimeVector) -> Result<Vec<Var>, Error> {
    t.values()
        .iter()
        .map(|p| match p.vars() {
            [v] if *p == MultiPoly::var(v.name()) => Ok(v.clone()),
            _ => Err(Error::Config(format!("time {p} is not a free variable"))),
        })
        .collect()
}

impl Lax {
    fn new(ctx: &TauContext) -> Result<Self, Error> {
        let (xv, yv) = (free_vars(ctx.x())?, free_vars(ctx.y())?);
        let all: Vec<Var> = xv.iter().chain(&yv).cloned().collect();
        let ring = FracRing::new(ctx, &all)?;
        let n = ctx.size();
        let m = ctx.m();
        let entry = |kind: WaveKind, site: usize, k: usize| -> Result<Frac, Error> {
            let (num, t) = raw_wave(ctx, m + site as i64, kind, k as i64)?;
            Ok(ring.over_tau(num, (t - m) as usize))
        };
        let hat_inf = FracMatrix::from_fn(n, |i, j| if j <= i { entry(WaveKind::WInf, i, i - j) } else { Ok(ring.zero()) })?;
        let hat_zero = FracMatrix::from_fn(n, |i, j| if j >= i { entry(WaveKind::WZero, i, j - i) } else { Ok(ring.zero()) })?;
        let hat_inf_inv =
            FracMatrix::from_fn(n, |i, j| if i >= j { entry(WaveKind::WStarInf, j, i - j) } else { Ok(ring.zero()) })?;
        let hat_zero_inv =
            FracMatrix::from_fn(n, |i, j| if i <= j { entry(WaveKind::WStarZero, j, j - i) } else { Ok(ring.zero()) })?;
        let fm = |d: Direction, t: &crate::symfunc::TimeVector| FracMatrix::from_ring(&ring, &shift_exp(d, t, n));
        let w_inf = hat_inf.mul(&ring, &fm(Direction::Raise, ctx.x()));
        let w_zero = hat_zero.mul(&ring, &fm(Direction::Lower, ctx.y()));
        let w_inf_inv = fm(Direction::Raise, &ctx.x().neg()).mul(&ring, &hat_inf_inv);
        let w_zero_inv = fm(Direction::Lower, &ctx.y().neg()).mul(&ring, &hat_zero_inv);
        let shift = RingMatrix::from_fn(n, n, |i, j| MultiPoly::from_int((j == i + 1) as i64));
        let l = w_inf.mul(&ring, &FracMatrix::from_ring(&ring, &shift)).mul(&ring, &w_inf_inv);
        let mm = w_zero.mul(&ring, &FracMatrix::from_ring(&ring, &shift.transpose())).mul(&ring, &w_zero_inv);
        let a = FracMatrix::from_ring(&ring, ctx.a());
        Ok(Lax { ring, xv, yv, w_inf, w_zero, w_inf_inv, w_zero_inv, a, l, mm })
    }

    fn power(&self, base: &FracMatrix, k: usize) -> FracMatrix {
        let mut acc = base.clone();
        for _ in 1..k {
            acc = acc.mul(&self.ring, base);
        }
        acc
    }

    /// `B_k = (L^k)_+`, diagonal included.
    fn b(&self, k: usize) -> FracMatrix {
        self.power(&self.l, k).mask(&self.ring, |i, j| j >= i)
    }

    /// `C_k = (M^k)_-`, strictly lower.
    fn c(&self, k: usize) -> FracMatrix {
        self.power(&self.mm, k).mask(&self.ring, |i, j| i > j)
    }

    fn time(&self, flow: Flow, j: usize) -> Option<&Var> {
        match flow {
            Flow::X => self.xv.get(j - 1),
            Flow::Y => self.yv.get(j - 1),
        }
    }

    fn d(&self, mat: &FracMatrix, flow: Flow, j: usize) -> Result<FracMatrix, Error> {
        match self.time(flow, j) {
            Some(v) => mat.diff(&self.ring, v),
            None => Ok(mat.mask(&self.ring, |_, _| false)),
        }
    }

    fn generator(&self, flow: Flow, j: usize) -> FracMatrix {
        match flow {
            Flow::X => self.b(j),
            Flow::Y => self.c(j),
        }
    }

    fn linear(&self, j: usize, flow: Flow, side: WaveSide) -> Result<bool, Error> {
        let w = match side {
            WaveSide::Inf => &self.w_inf,
            WaveSide::Zero => &self.w_zero,
        };
        let lhs = self.d(w, flow, j)?;
        let rhs = self.generator(flow, j).mul(&self.ring, w);
        Ok(lhs.sub(&self.ring, &rhs).is_zero())
    }

    fn commutator(&self, p: &FracMatrix, q: &FracMatrix) -> FracMatrix {
        p.mul(&self.ring, q).sub(&self.ring, &q.mul(&self.ring, p))
    }

    /// The three compatibility identities for the pair `(j, k)`.
    fn zakharov_shabat(&self, j: usize, k: usize) -> Result<[bool; 3], Error> {
        let r = &self.ring;
        let (bj, bk, cj, ck) = (self.b(j), self.b(k), self.c(j), self.c(k));
        let xx = self.d(&bk, Flow::X, j)?.sub(r, &self.d(&bj, Flow::X, k)?).add(r, &self.commutator(&bk, &bj));
        let yy = self.d(&ck, Flow::Y, j)?.sub(r, &self.d(&cj, Flow::Y, k)?).add(r, &self.commutator(&ck, &cj));
        let xy = self.d(&bk, Flow::Y, j)?.sub(r, &self.d(&cj, Flow::X, k)?).add(r, &self.commutator(&bk, &cj));
        Ok([xx.is_zero(), yy.is_zero(), xy.is_zero()])
    }

    fn is_identity(&self, p: &FracMatrix) -> bool {
        let id = FracMatrix::from_ring(&self.ring, &RingMatrix::identity(p.size));
        p.sub(&self.ring, &id).is_zero()
    }
}

/// `∂W = B_j W` (flow `x`) or `∂W = C_j W` (flow `y`) for one of the two
/// wave-matrices, together with `W^(0) = W^(∞) A`, `W W^{-1} = I` and the
/// Zakharov–Shabat identities for all pairs `(j', k) ≤ j`.
pub fn verify_linear_problem(ctx: &TauContext, j: usize, flow: Flow, side: WaveSide) -> Result<bool, Error> {
    if j == 0 {
        return Err(Error::RangeViolation("flows start at j = 1".into()));
    }
    let lax = Lax::new(ctx)?;
    if !lax.linear(j, flow, side)? {
        return Ok(false);
    }
    if !factorization(&lax) || !inverses(&lax) {
        return Ok(false);
    }
    for a in 1..=j {
        for b in 1..=j {
            if lax.zakharov_shabat(a, b)?.contains(&false) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn factorization(lax: &Lax) -> bool {
    lax.w_zero.sub(&lax.ring, &lax.w_inf.mul(&lax.ring, &lax.a)).is_zero()
}

fn inverses(lax: &Lax) -> bool {
    let r = &lax.ring;
    lax.is_identity(&lax.w_inf.mul(r, &lax.w_inf_inv))
        && lax.is_identity(&lax.w_inf_inv.mul(r, &lax.w_inf))
        && lax.is_identity(&lax.w_zero.mul(r, &lax.w_zero_inv))
        && lax.is_identity(&lax.w_zero_inv.mul(r, &lax.w_zero))
}

/// `W^(0) = W^(∞) A`.
pub fn check_factorization(ctx: &TauContext) -> Result<bool, Error> {
    Ok(factorization(&Lax::new(ctx)?))
}

/// Both wave-matrices times their assembled inverses, on both sides.
pub fn check_inverses(ctx: &TauContext) -> Result<bool, Error> {
    Ok(inverses(&Lax::new(ctx)?))
}

/// `[xx, yy, xy]` compatibility identities for the pair `(j, k)`.
pub fn check_zakharov_shabat(ctx: &TauContext, j: usize, k: usize) -> Result<[bool; 3], Error> {
    Lax::new(ctx)?.zakharov_shabat(j, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toda::generic_matrix;

    #[test]
    fn two_by_two() {
        let ctx = TauContext::symbolic(0, 2, generic_matrix(2, 2)).unwrap();
        assert!(check_factorization(&ctx).unwrap());
        assert!(check_inverses(&ctx).unwrap());
        for flow in [Flow::X, Flow::Y] {
            for side in [WaveSide::Inf, WaveSide::Zero] {
                assert!(verify_linear_problem(&ctx, 1, flow, side).unwrap(), "{flow:?} {side:?}");
            }
        }
    }

    #[test]
    fn rejects_numeric_times() {
        let ctx = TauContext::symbolic(0, 2, generic_matrix(2, 2)).unwrap();
        let z = crate::symfunc::TimeVector::zero(1);
        let c = ctx.with_times(z.clone(), z).unwrap();
        assert!(matches!(check_inverses(&c), Err(Error::Config(_))));
    }
}
