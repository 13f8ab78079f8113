//! Complete homogeneous and power sums, one-row character polynomials,
//! Schur functions and the Miwa change of variables.

use serde::Serialize;

use crate::algebra::{MultiPoly, Rational, RingMatrix, Var};
use crate::combinatorics::{enumerate_tableaux, Order, Partition, SkewShape};
use crate::Error;

/// How a named variable enters as a letter of the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    Plain,
    /// Letter `u^2`.
    Squared,
    /// Letter `v^-2`.
    InverseSquared,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphabetSpec {
    names: Vec<Var>,
    convention: Convention,
}

impl AlphabetSpec {
    pub fn new(names: Vec<Var>, convention: Convention) -> Result<Self, Error> {
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::Config("alphabet names must be distinct".into()));
        }
        Ok(AlphabetSpec { names, convention })
    }

    /// `stem_i` for `i` in `range`, e.g. `u1..uN`.
    pub fn indexed(stem: &str, range: impl IntoIterator<Item = usize>, convention: Convention) -> Self {
        AlphabetSpec { names: range.into_iter().map(|i| Var::indexed(stem, i)).collect(), convention }
    }

    pub fn names(&self) -> &[Var] {
        &self.names
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> Vec<MultiPoly> {
        let e = match self.convention {
            Convention::Plain => 1,
            Convention::Squared => 2,
            Convention::InverseSquared => -2,
        };
        self.names.iter().map(|v| MultiPoly::var_pow(v, e)).collect()
    }
}

/// Time variables `t_1..t_K`; entry `k-1` is `t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct TimeVector(Vec<MultiPoly>);

impl TimeVector {
    pub fn new(values: Vec<MultiPoly>) -> Self {
        TimeVector(values)
    }

    /// Plain variables `stem1..stemK`.
    pub fn symbolic(stem: &str, len: usize) -> Self {
        TimeVector((1..=len).map(|k| MultiPoly::from(&Var::indexed(stem, k))).collect())
    }

    pub fn zero(len: usize) -> Self {
        TimeVector(vec![MultiPoly::zero(); len])
    }

    pub fn from_rationals(values: &[Rational]) -> Self {
        TimeVector(values.iter().cloned().map(MultiPoly::constant).collect())
    }

    pub fn values(&self) -> &[MultiPoly] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `t_k`, 1-based; zero past the end.
    pub fn get(&self, k: usize) -> MultiPoly {
        self.0.get(k.wrapping_sub(1)).cloned().unwrap_or_default()
    }

    pub fn neg(&self) -> Self {
        TimeVector(self.0.iter().map(|v| -v).collect())
    }

    pub fn add(&self, other: &TimeVector) -> Self {
        let n = self.len().max(other.len());
        TimeVector((1..=n).map(|k| &self.get(k) + &other.get(k)).collect())
    }
}

/// `h_0..h_kmax` of the given letters.
pub fn hk_all(kmax: usize, letters: &[MultiPoly]) -> Vec<MultiPoly> {
    let mut h = vec![MultiPoly::zero(); kmax + 1];
    h[0] = MultiPoly::one();
    for a in letters {
        for k in 1..=kmax {
            h[k] = &h[k] + &(a * &h[k - 1]);
        }
    }
    h
}

/// `h_k` of the letters; zero for negative `k`.
pub fn hk_letters(k: i64, letters: &[MultiPoly]) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    hk_all(k as usize, letters).pop().unwrap()
}

pub fn hk(k: i64, alphabet: &AlphabetSpec) -> MultiPoly {
    hk_letters(k, &alphabet.letters())
}

pub fn pk_letters(k: u32, letters: &[MultiPoly]) -> MultiPoly {
    letters.iter().map(|a| a.pow(k)).sum()
}

pub fn pk(k: u32, alphabet: &AlphabetSpec) -> MultiPoly {
    pk_letters(k, &alphabet.letters())
}

/// `ζ_0..ζ_kmax`, the coefficients of `z^k` in `exp(Σ_j z^j t_j)`, via
/// `k ζ_k = Σ_j j t_j ζ_{k-j}`.
pub fn zeta_all(kmax: usize, t: &TimeVector) -> Vec<MultiPoly> {
    let mut z = Vec::with_capacity(kmax + 1);
    z.push(MultiPoly::one());
    for k in 1..=kmax {
        let mut acc = MultiPoly::zero();
        for j in 1..=k.min(t.len()) {
            let term = &t.values()[j - 1] * &z[k - j];
            acc = &acc + &term.scale(&Rational::from_int(j as i64));
        }
        z.push(acc.scale(&Rational::new(1, k as i64).unwrap()));
    }
    z
}

/// `ζ_k(t)`; zero for negative `k`.
pub fn zeta(k: i64, t: &TimeVector) -> MultiPoly {
    if k < 0 {
        return MultiPoly::zero();
    }
    zeta_all(k as usize, t).pop().unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SchurMethod {
    JacobiTrudi,
    TableauSum,
}

/// Determinant `det[seq(λ_i - μ_j - i + j)]` of size `rows`.
fn jt_det(shape: &SkewShape, rows: usize, seq: impl Fn(i64) -> MultiPoly) -> Result<MultiPoly, Error> {
    let lam = &shape.outer;
    let mu = &shape.inner;
    let m = RingMatrix::from_fn(rows, rows, |i, j| {
        seq(lam.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64)
    });
    m.det()
}

/// Skew Schur polynomial `S_{λ/μ}` of the alphabet's letters.
pub fn schur(shape: &SkewShape, alphabet: &AlphabetSpec, method: SchurMethod) -> MultiPoly {
    schur_letters(shape, &alphabet.letters(), method)
}

pub fn schur_letters(shape: &SkewShape, letters: &[MultiPoly], method: SchurMethod) -> MultiPoly {
    match method {
        SchurMethod::JacobiTrudi => {
            let top = shape.outer.part(0) as usize + shape.rows();
            let h = hk_all(top, letters);
            let seq = |k: i64| if k < 0 { MultiPoly::zero() } else { h[k as usize].clone() };
            jt_det(shape, shape.rows(), seq).expect("square")
        }
        SchurMethod::TableauSum => enumerate_tableaux(shape, letters.len() as u32, Order::Ascending)
            .map(|t| {
                let w = t.weight(letters.len() as u32);
                w.iter().zip(letters).fold(MultiPoly::one(), |acc, (&c, a)| &acc * &a.pow(c))
            })
            .sum(),
    }
}

/// `χ_λ(t) = det[ζ_{λ_i + j - i}(t)]` of size `rows`.
pub fn char_poly(lambda: &Partition, t: &TimeVector, rows: usize) -> Result<MultiPoly, Error> {
    skew_char_poly(&SkewShape::straight(lambda.clone()), t, rows)
}

/// `χ_{λ/μ}(t) = det[ζ_{λ_i - μ_j + j - i}(t)]` of size `rows`.
pub fn skew_char_poly(shape: &SkewShape, t: &TimeVector, rows: usize) -> Result<MultiPoly, Error> {
    if shape.outer.len() > rows {
        return Err(Error::ShapeViolation(format!("{} has more than {rows} rows", shape.outer)));
    }
    let top = shape.outer.part(0) as usize + rows;
    let z = zeta_all(top, t);
    jt_det(shape, rows, |k| if k < 0 { MultiPoly::zero() } else { z[k as usize].clone() })
}

/// Time vectors `x_k = p_k(u)/k`, `y_k = -p_k(v)/k` for `k = 1..=horizon`,
/// with letters taken in each alphabet's convention.
pub fn miwa_map(u: &AlphabetSpec, v: &AlphabetSpec, horizon: usize) -> (TimeVector, TimeVector) {
    let (lu, lv) = (u.letters(), v.letters());
    let x = (1..=horizon).map(|k| pk_letters(k as u32, &lu).scale(&Rational::new(1, k as i64).unwrap())).collect();
    let y = (1..=horizon).map(|k| pk_letters(k as u32, &lv).scale(&Rational::new(-1, k as i64).unwrap())).collect();
    (TimeVector(x), TimeVector(y))
}

/// Whether `h_p(B, a) - h_p(B, b) = (a - b) h_{p-1}(B, a, b)` with the
/// squared letters `B = {w^2}`, `a = v_j^2`, `b = v_k^2`.
pub fn hk_identity_check(p: i64, base: &AlphabetSpec, vj: &Var, vk: &Var) -> bool {
    let b = AlphabetSpec { names: base.names.clone(), convention: Convention::Squared }.letters();
    let a = MultiPoly::var_pow(vj, 2);
    let c = MultiPoly::var_pow(vk, 2);
    let with = |extra: &[&MultiPoly]| -> Vec<MultiPoly> { b.iter().cloned().chain(extra.iter().map(|&e| e.clone())).collect() };
    let lhs = &hk_letters(p, &with(&[&a])) - &hk_letters(p, &with(&[&c]));
    let rhs = &(&a - &c) * &hk_letters(p - 1, &with(&[&a, &c]));
    lhs == rhs
}

/// `ζ_k(s·∂̃) f` with `∂̃_j = (1/j) ∂/∂t_j` over the time variables `vars`
/// (`vars[j-1]` is `t_j`) and `s = ±1`. Operators for `j` beyond `vars`
/// act as zero.
pub fn zeta_of_derivatives(k: usize, sign: i32, vars: &[Var], f: &MultiPoly) -> Result<MultiPoly, Error> {
    let formal = TimeVector::symbolic("w", vars.len());
    let zk = zeta(k as i64, &formal);
    let wvars: Vec<Var> = (1..=vars.len()).map(|j| Var::indexed("w", j)).collect();
    let mut out = MultiPoly::zero();
    for (mono, c) in zk.terms() {
        let mut term = f.clone();
        let mut coef = c.clone();
        for (idx, &e) in mono.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let wv = &zk.vars()[idx];
            let j = wvars.iter().position(|w| w == wv).unwrap() + 1;
            let scale = Rational::new(sign as i64, j as i64).unwrap().pow(e)?;
            coef = &coef * &scale;
            term = term.diff(&vars[j - 1], e as u32)?;
        }
        out = &out + &term.scale(&coef);
    }
    Ok(out)
}
