//! Multivariate Laurent polynomials with rational coefficients.
//!
//! A [`MultiPoly`] stores a sorted list of the variables that actually occur
//! and a list of `(exponent vector, coefficient)` terms sorted in descending
//! graded reverse-lexicographic order. Zero coefficients are never stored
//! and unused variables are pruned, so equal polynomials have identical
//! representations and the derived `Eq`/`Hash` are structural.

use std::borrow::Cow;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use smallvec::{smallvec, SmallVec};

use super::{Rational, Var};
use crate::Error;

/// Exponent vector, indexed like the owning polynomial's variable list.
pub type Mono = SmallVec<[i32; 8]>;

/// Graded reverse-lexicographic comparison on Laurent exponent vectors.
fn grevlex(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&e| e as i64).sum();
    let db: i64 = b.iter().map(|&e| e as i64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

fn union_vars(a: &[Var], b: &[Var]) -> Vec<Var> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j].clone());
                j += 1;
            }
            Ordering::Equal => {
                out.push(a[i].clone());
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn add_exps(a: &[i32], b: &[i32]) -> Mono {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.checked_add(*y).expect("exponent overflow"))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    vars: Arc<[Var]>,
    terms: Vec<(Mono, Rational)>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { vars: Arc::from(Vec::new()), terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly { vars: Arc::from(Vec::new()), terms: vec![(Mono::new(), c)] }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_int(n))
    }

    /// The polynomial `name`. Panics on an invalid variable name.
    pub fn var(name: &str) -> Self {
        Self::var_pow(&Var::from(name), 1)
    }

    pub fn var_pow(v: &Var, e: i32) -> Self {
        Self::monomial(Rational::one(), &[(v.clone(), e)])
    }

    /// `c * Π v^e`. Repeated variables multiply.
    pub fn monomial(c: Rational, factors: &[(Var, i32)]) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut vars: Vec<Var> = factors.iter().map(|(v, _)| v.clone()).collect();
        vars.sort();
        vars.dedup();
        let mut m: Mono = smallvec![0; vars.len()];
        for (v, e) in factors {
            let i = vars.binary_search(v).unwrap();
            m[i] += e;
        }
        Self::prune(vars, vec![(m, c)])
    }

    /// Builds a polynomial from terms over `vars` (sorted, distinct).
    /// Duplicate monomials are merged.
    pub fn from_terms(vars: Vec<Var>, terms: impl IntoIterator<Item = (Mono, Rational)>) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let mut map: FxHashMap<Mono, Rational> = FxHashMap::default();
        for (m, c) in terms {
            debug_assert_eq!(m.len(), vars.len());
            let e = map.entry(m).or_insert_with(Rational::zero);
            *e += &c;
        }
        Self::from_map(vars, map)
    }

    fn from_map(vars: Vec<Var>, map: FxHashMap<Mono, Rational>) -> Self {
        let mut terms: Vec<(Mono, Rational)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| grevlex(&b.0, &a.0));
        Self::prune(vars, terms)
    }

    /// Drops variables whose exponent is zero in every term. Expects sorted
    /// terms; removing all-zero columns preserves the order.
    fn prune(vars: Vec<Var>, terms: Vec<(Mono, Rational)>) -> Self {
        if terms.is_empty() {
            return Self::zero();
        }
        let used: Vec<bool> = (0..vars.len()).map(|i| terms.iter().any(|(m, _)| m[i] != 0)).collect();
        if used.iter().all(|&u| u) {
            return MultiPoly { vars: Arc::from(vars), terms };
        }
        let keep: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        let new_vars: Vec<Var> = keep.iter().map(|&i| vars[i].clone()).collect();
        let terms = terms
            .into_iter()
            .map(|(m, c)| (keep.iter().map(|&i| m[i]).collect(), c))
            .collect();
        MultiPoly { vars: Arc::from(new_vars), terms }
    }

    /// Terms re-expressed over a superset `universe` of this polynomial's
    /// variables. Inserting zero columns keeps the term order.
    fn remap(&self, universe: &[Var]) -> Vec<(Mono, Rational)> {
        let pos: Vec<usize> = self.vars.iter().map(|v| universe.binary_search(v).unwrap()).collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut out: Mono = smallvec![0; universe.len()];
                for (i, &e) in m.iter().enumerate() {
                    out[pos[i]] = e;
                }
                (out, c.clone())
            })
            .collect()
    }

    fn unify<'a>(
        a: &'a MultiPoly,
        b: &'a MultiPoly,
    ) -> (Vec<Var>, Cow<'a, [(Mono, Rational)]>, Cow<'a, [(Mono, Rational)]>) {
        if a.vars == b.vars {
            return (a.vars.to_vec(), Cow::Borrowed(&a.terms), Cow::Borrowed(&b.terms));
        }
        let u = union_vars(&a.vars, &b.vars);
        let ta = if u.len() == a.vars.len() { Cow::Borrowed(&a.terms[..]) } else { Cow::Owned(a.remap(&u)) };
        let tb = if u.len() == b.vars.len() { Cow::Borrowed(&b.terms[..]) } else { Cow::Owned(b.remap(&u)) };
        (u, ta, tb)
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Terms in canonical (descending) order; exponents index [`Self::vars`].
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&[i32], &Rational)> {
        self.terms.iter().map(|(m, c)| (&m[..], c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty() && self.terms.len() == 1 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value of a constant polynomial (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.vars.binary_search(v).is_ok()
    }

    fn var_index(&self, v: &Var) -> Option<usize> {
        self.vars.binary_search(v).ok()
    }

    /// Smallest and largest exponent of `v`; `None` for the zero polynomial.
    pub fn degree_range(&self, v: &Var) -> Option<(i32, i32)> {
        if self.is_zero() {
            return None;
        }
        match self.var_index(v) {
            None => Some((0, 0)),
            Some(i) => {
                let lo = self.terms.iter().map(|(m, _)| m[i]).min().unwrap();
                let hi = self.terms.iter().map(|(m, _)| m[i]).max().unwrap();
                Some((lo, hi))
            }
        }
    }

    /// Range of total degrees; `None` for the zero polynomial.
    pub fn total_degree_range(&self) -> Option<(i64, i64)> {
        let degs = self.terms.iter().map(|(m, _)| m.iter().map(|&e| e as i64).sum::<i64>());
        let (mut lo, mut hi) = (i64::MAX, i64::MIN);
        for d in degs {
            lo = lo.min(d);
            hi = hi.max(d);
        }
        (!self.is_zero()).then_some((lo, hi))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiplies by `v^e` (a unit of the Laurent ring).
    pub fn mul_var_pow(&self, v: &Var, e: i32) -> Self {
        if e == 0 || self.is_zero() {
            return self.clone();
        }
        self * &Self::var_pow(v, e)
    }

    fn merge(vars: Vec<Var>, a: &[(Mono, Rational)], b: &[(Mono, Rational)], negate_b: bool) -> Self {
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let nb = |c: &Rational| if negate_b { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match grevlex(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0.clone(), nb(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_b { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), nb(c))));
        Self::prune(vars, out)
    }

    fn add_impl(&self, rhs: &Self, negate: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate { -rhs } else { rhs.clone() };
        }
        let (vars, a, b) = Self::unify(self, rhs);
        Self::merge(vars, &a, &b, negate)
    }

    fn mul_impl(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let (vars, a, b) = Self::unify(self, rhs);
        if a.len() == 1 || b.len() == 1 {
            // Multiplying by a monomial preserves the order.
            let (single, other) = if a.len() == 1 { (&a[0], &b[..]) } else { (&b[0], &a[..]) };
            let terms = other.iter().map(|(m, c)| (add_exps(m, &single.0), c * &single.1)).collect();
            return Self::prune(vars, terms);
        }
        let mut map: FxHashMap<Mono, Rational> = FxHashMap::default();
        map.reserve(a.len() * b.len() / 2);
        for (ma, ca) in a.iter() {
            for (mb, cb) in b.iter() {
                let e = map.entry(add_exps(ma, mb)).or_insert_with(Rational::zero);
                *e += &(ca * cb);
            }
        }
        Self::from_map(vars, map)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a single-term polynomial.
    pub fn inv_monomial(&self) -> Result<Self, Error> {
        match self.terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(m, c)] => Ok(MultiPoly {
                vars: self.vars.clone(),
                terms: vec![(m.iter().map(|e| -e).collect(), c.recip()?)],
            }),
            _ => Err(Error::NotDivisible),
        }
    }

    /// Integer power, allowing negative exponents for single-term polynomials.
    pub fn pow_i(&self, e: i32) -> Result<Self, Error> {
        if e >= 0 {
            Ok(self.pow(e as u32))
        } else {
            Ok(self.inv_monomial()?.pow(e.unsigned_abs()))
        }
    }

    /// Substitutes rational values for some variables; the rest stay symbolic.
    pub fn eval(&self, assignment: &[(Var, Rational)]) -> Result<Self, Error> {
        let vals: Vec<Option<&Rational>> = self
            .vars
            .iter()
            .map(|v| assignment.iter().find(|(w, _)| w == v).map(|(_, r)| r))
            .collect();
        if vals.iter().all(Option::is_none) {
            return Ok(self.clone());
        }
        let kept: Vec<usize> = (0..self.vars.len()).filter(|&i| vals[i].is_none()).collect();
        let kept_vars: Vec<Var> = kept.iter().map(|&i| self.vars[i].clone()).collect();
        let mut cache: FxHashMap<(usize, i32), Rational> = FxHashMap::default();
        let mut map: FxHashMap<Mono, Rational> = FxHashMap::default();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, val) in vals.iter().enumerate() {
                if let Some(val) = val {
                    if m[i] != 0 {
                        let p = match cache.get(&(i, m[i])) {
                            Some(p) => p.clone(),
                            None => {
                                let p = val.pow(m[i])?;
                                cache.insert((i, m[i]), p.clone());
                                p
                            }
                        };
                        coeff *= &p;
                    }
                }
            }
            let key: Mono = kept.iter().map(|&i| m[i]).collect();
            let e = map.entry(key).or_insert_with(Rational::zero);
            *e += &coeff;
        }
        Ok(Self::from_map(kept_vars, map))
    }

    /// Evaluates to a number; every occurring variable must be assigned.
    pub fn eval_rational(&self, assignment: &[(Var, Rational)]) -> Result<Rational, Error> {
        let p = self.eval(assignment)?;
        p.as_constant()
            .ok_or_else(|| Error::RangeViolation(format!("unassigned variables {:?}", p.vars())))
    }

    /// Composition: replaces each listed variable by a polynomial. A variable
    /// occurring with a negative exponent needs a single-term substitute.
    pub fn substitute(&self, subs: &[(Var, MultiPoly)]) -> Result<Self, Error> {
        let targets: Vec<Option<&MultiPoly>> = self
            .vars
            .iter()
            .map(|v| subs.iter().find(|(w, _)| w == v).map(|(_, p)| p))
            .collect();
        if targets.iter().all(Option::is_none) {
            return Ok(self.clone());
        }
        let kept: Vec<usize> = (0..self.vars.len()).filter(|&i| targets[i].is_none()).collect();
        let kept_vars: Vec<Var> = kept.iter().map(|&i| self.vars[i].clone()).collect();
        let mut cache: FxHashMap<(usize, i32), MultiPoly> = FxHashMap::default();
        let mut acc = Accum::new();
        for (m, c) in &self.terms {
            let key: Mono = kept.iter().map(|&i| m[i]).collect();
            let mut piece = MultiPoly::prune(kept_vars.clone(), vec![(key, c.clone())]);
            for (i, t) in targets.iter().enumerate() {
                if let Some(t) = t {
                    if m[i] != 0 {
                        if !cache.contains_key(&(i, m[i])) {
                            let p = t.pow_i(m[i]).map_err(|e| match e {
                                Error::NotDivisible => Error::NegativeExponent(self.vars[i].to_string()),
                                e => e,
                            })?;
                            cache.insert((i, m[i]), p);
                        }
                        piece = &piece * &cache[&(i, m[i])];
                    }
                }
            }
            acc.add_scaled(&piece, &Rational::one());
        }
        Ok(acc.finish())
    }

    /// `order`-th partial derivative in `v`.
    pub fn diff(&self, v: &Var, order: u32) -> Result<Self, Error> {
        let Some(i) = self.var_index(v) else {
            return Ok(if order == 0 { self.clone() } else { Self::zero() });
        };
        if self.terms.iter().any(|(m, _)| m[i] < 0) {
            return Err(Error::NegativeExponent(v.to_string()));
        }
        if order == 0 {
            return Ok(self.clone());
        }
        let k = order as i32;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] >= k)
            .map(|(m, c)| {
                let falling: i64 = (0..k).map(|j| (m[i] - j) as i64).product();
                let mut m2 = m.clone();
                m2[i] -= k;
                (m2, c * &Rational::from_int(falling))
            })
            .collect::<Vec<_>>();
        // Dividing every surviving term by v^k keeps them sorted.
        Ok(Self::prune(self.vars.to_vec(), terms))
    }

    /// Coefficient of `v^power`, as a polynomial in the other variables.
    pub fn coeff(&self, v: &Var, power: i32) -> Self {
        let Some(i) = self.var_index(v) else {
            return if power == 0 { self.clone() } else { Self::zero() };
        };
        let terms: Vec<(Mono, Rational)> = self
            .terms
            .iter()
            .filter(|(m, _)| m[i] == power)
            .map(|(m, c)| {
                let mut m2 = m.clone();
                m2[i] = 0;
                (m2, c.clone())
            })
            .collect();
        // Terms share v's exponent, so zeroing it keeps their relative order.
        Self::prune(self.vars.to_vec(), terms)
    }

    /// Exact quotient `self / d` in the Laurent ring, or `NotDivisible`.
    pub fn div_exact(&self, d: &Self) -> Result<Self, Error> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some(c) = d.as_constant() {
            return Ok(self.scale(&c.recip()?));
        }
        if d.is_monomial() {
            return Ok(self * &d.inv_monomial()?);
        }
        let (vars, p, dv) = Self::unify(self, d);
        let n = vars.len();
        // A quotient's exponents in each variable lie in this box.
        let mut lo = vec![0i32; n];
        let mut hi = vec![0i32; n];
        for i in 0..n {
            let (pl, ph) = minmax(p.iter().map(|(m, _)| m[i]));
            let (dl, dh) = minmax(dv.iter().map(|(m, _)| m[i]));
            lo[i] = pl - dl;
            hi[i] = ph - dh;
            if lo[i] > hi[i] {
                return Err(Error::NotDivisible);
            }
        }
        let (lead_m, lead_c) = &dv[0];
        let lead_inv = lead_c.recip()?;
        let mut rem: BTreeMap<Graded, Rational> = p.iter().map(|(m, c)| (Graded(m.clone()), c.clone())).collect();
        let mut quot: Vec<(Mono, Rational)> = Vec::new();
        while let Some((Graded(m), c)) = rem.pop_last() {
            let qm: Mono = m.iter().zip(lead_m.iter()).map(|(a, b)| a - b).collect();
            if (0..n).any(|i| qm[i] < lo[i] || qm[i] > hi[i]) {
                return Err(Error::NotDivisible);
            }
            let qc = &c * &lead_inv;
            for (dm, dc) in dv.iter().skip(1) {
                let key = Graded(add_exps(&qm, dm));
                let t = &qc * dc;
                match rem.get_mut(&key) {
                    Some(v) => {
                        *v -= &t;
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -t);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Ok(Self::prune(vars, quot))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: impl Fn(&Rational) -> Rational) -> Self {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), f(c))).filter(|(_, c)| !c.is_zero()).collect();
        Self::prune(self.vars.to_vec(), terms)
    }
}

fn minmax(it: impl Iterator<Item = i32>) -> (i32, i32) {
    it.fold((i32::MAX, i32::MIN), |(l, h), e| (l.min(e), h.max(e)))
}

#[derive(Clone, PartialEq, Eq)]
struct Graded(Mono);

impl Ord for Graded {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

impl PartialOrd for Graded {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Hash-map accumulator for long sums of polynomials over growing variable
/// sets.
pub(crate) struct Accum {
    vars: Vec<Var>,
    map: FxHashMap<Mono, Rational>,
}

impl Accum {
    pub(crate) fn new() -> Self {
        Accum { vars: Vec::new(), map: FxHashMap::default() }
    }

    fn absorb(&mut self, vs: &[Var]) {
        if vs.iter().all(|v| self.vars.binary_search(v).is_ok()) {
            return;
        }
        let u = union_vars(&self.vars, vs);
        let pos: Vec<usize> = self.vars.iter().map(|v| u.binary_search(v).unwrap()).collect();
        let old = std::mem::take(&mut self.map);
        for (m, c) in old {
            let mut k: Mono = smallvec![0; u.len()];
            for (i, &e) in m.iter().enumerate() {
                k[pos[i]] = e;
            }
            self.map.insert(k, c);
        }
        self.vars = u;
    }

    pub(crate) fn add_scaled(&mut self, p: &MultiPoly, c: &Rational) {
        if c.is_zero() || p.is_zero() {
            return;
        }
        self.absorb(&p.vars);
        let pos: Vec<usize> = p.vars.iter().map(|v| self.vars.binary_search(v).unwrap()).collect();
        for (m, k) in &p.terms {
            let mut key: Mono = smallvec![0; self.vars.len()];
            for (i, &e) in m.iter().enumerate() {
                key[pos[i]] = e;
            }
            let e = self.map.entry(key).or_insert_with(Rational::zero);
            *e += &(k * c);
        }
    }

    pub(crate) fn finish(self) -> MultiPoly {
        MultiPoly::from_map(self.vars, self.map)
    }
}

impl Default for MultiPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for MultiPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for MultiPoly {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<&Var> for MultiPoly {
    fn from(v: &Var) -> Self {
        Self::var_pow(v, 1)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, false)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.add_impl(rhs, true)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.mul_impl(rhs)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        let mut acc = Accum::new();
        for p in iter {
            acc.add_scaled(&p, &Rational::one());
        }
        acc.finish()
    }
}

impl<'a> Sum<&'a MultiPoly> for MultiPoly {
    fn sum<I: Iterator<Item = &'a MultiPoly>>(iter: I) -> Self {
        let mut acc = Accum::new();
        for p in iter {
            acc.add_scaled(p, &Rational::one());
        }
        acc.finish()
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (t, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (t, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            let factors: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { self.vars[i].to_string() } else { format!("{}^{}", self.vars[i], e) })
                .collect();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl serde::Serialize for MultiPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Parses the canonical text form, e.g. `x^2 - 1/2*u1*v2^-1 + 3`.
impl FromStr for MultiPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Parser { s: s.as_bytes(), i: 0 }.poly()
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at byte {} of `{}`", self.i, String::from_utf8_lossy(self.s)))
    }

    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.s.get(self.i).copied()
    }

    fn digits(&mut self) -> &str {
        let start = self.i;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.i += 1;
        }
        std::str::from_utf8(&self.s[start..self.i]).unwrap()
    }

    fn poly(&mut self) -> Result<MultiPoly, Error> {
        let mut acc = Accum::new();
        self.ws();
        let mut first = true;
        loop {
            self.ws();
            let neg = match self.peek() {
                None if !first => break,
                Some(b'+') => {
                    self.i += 1;
                    false
                }
                Some(b'-') => {
                    self.i += 1;
                    true
                }
                _ if first => false,
                _ => return Err(self.err("expected `+` or `-`")),
            };
            first = false;
            self.ws();
            let t = self.term()?;
            acc.add_scaled(&t, &Rational::from_int(if neg { -1 } else { 1 }));
        }
        Ok(acc.finish())
    }

    fn term(&mut self) -> Result<MultiPoly, Error> {
        let mut coeff = Rational::one();
        let mut factors: Vec<(Var, i32)> = Vec::new();
        loop {
            self.ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let n = self.digits().to_string();
                    let mut lit = n;
                    if self.peek() == Some(b'/') {
                        self.i += 1;
                        let d = self.digits();
                        if d.is_empty() {
                            return Err(self.err("expected denominator"));
                        }
                        lit = format!("{lit}/{d}");
                    }
                    coeff *= &lit.parse::<Rational>()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let start = self.i;
                    while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                        self.i += 1;
                    }
                    let name = std::str::from_utf8(&self.s[start..self.i]).unwrap();
                    let v = Var::new(name)?;
                    let mut e = 1i32;
                    if self.peek() == Some(b'^') {
                        self.i += 1;
                        let neg = self.peek() == Some(b'-');
                        if neg {
                            self.i += 1;
                        }
                        let d = self.digits();
                        e = d.parse().map_err(|_| self.err("expected exponent"))?;
                        if neg {
                            e = -e;
                        }
                    }
                    factors.push((v, e));
                }
                _ => return Err(self.err("expected a factor")),
            }
            self.ws();
            if self.peek() == Some(b'*') {
                self.i += 1;
            } else {
                break;
            }
        }
        Ok(MultiPoly::monomial(coeff, &factors))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn difference_of_squares() {
        let x = MultiPoly::var("x");
        let y = MultiPoly::var("y");
        assert_eq!(&(&x + &y) * &(&x - &y), p("x^2 - y^2"));
        assert_eq!(&x + &MultiPoly::zero(), x);
    }

    #[test]
    fn laurent_product() {
        assert_eq!(p("u^-1 + u") * p("u"), p("1 + u^2"));
    }

    #[test]
    fn canonical_text() {
        let f = p("-v2^-1*u1^2*2/3");
        assert_eq!(f.to_string(), "-2/3*u1^2*v2^-1");
        assert_eq!(p("1 + x").to_string(), "x + 1");
        assert_eq!(p("x - x").to_string(), "0");
        assert_eq!(p("-x*y + 2").to_string(), "-x*y + 2");
    }

    #[test]
    fn grevlex_order() {
        // Same total degree: smaller exponent in the last variable wins.
        assert_eq!(p("y^2 + x*y + x^2").to_string(), "x^2 + x*y + y^2");
        assert_eq!(p("x*y^2 + x^3 + x^2*y").to_string(), "x^3 + x^2*y + x*y^2");
    }

    #[test]
    fn evaluation() {
        let x = Var::from("x");
        let y = Var::from("y");
        let f = p("x^2 - y^2");
        assert_eq!(f.eval_rational(&[(x.clone(), q(3)), (y.clone(), q(2))]).unwrap(), q(5));
        assert_eq!(f.eval(&[(x, q(3))]).unwrap(), p("9 - y^2"));
        let u = Var::from("u");
        assert!(matches!(p("u^-1").eval(&[(u, q(0))]), Err(Error::DivisionByZero)));
        let h2 = p("u1^2 + u1*u2 + u2^2");
        let pt = [(Var::from("u1"), q(1)), (Var::from("u2"), q(2))];
        assert_eq!(h2.eval_rational(&pt).unwrap(), q(7));
    }

    #[test]
    fn differentiation() {
        let x = Var::from("x");
        assert_eq!(p("x^3").diff(&x, 1).unwrap(), p("3*x^2"));
        assert_eq!(p("x^2").diff(&Var::from("y"), 1).unwrap(), MultiPoly::zero());
        let zeta2 = p("x2 + 1/2*x1^2");
        assert_eq!(zeta2.diff(&Var::from("x1"), 2).unwrap(), MultiPoly::one());
        assert!(matches!(p("x^-1 + y").diff(&x, 1), Err(Error::NegativeExponent(_))));
    }

    #[test]
    fn coefficient_extraction() {
        let l = Var::from("lambda");
        let f = p("lambda^2 + 5*lambda^-1 + 1");
        assert_eq!(f.coeff(&l, -1), p("5"));
        assert_eq!(p("lambda^2").coeff(&l, 3), MultiPoly::zero());
        let g = p("3*a*lambda + b*lambda + a");
        assert_eq!(g.coeff(&l, 1), p("3*a + b"));
        assert_eq!(g.coeff(&l, 0), p("a"));
    }

    #[test]
    fn coefficient_of_weighted_expansion() {
        // v1^M * sum_q v1^(-2q) c_q with M = 3: the v1^(M-2j) coefficient is c_j.
        let v1 = Var::from("v1");
        let cs = [p("a"), p("b + 1"), p("2*c"), p("a*b")];
        let m = 3;
        let total: MultiPoly = cs.iter().enumerate().map(|(qi, c)| c.mul_var_pow(&v1, m - 2 * qi as i32)).sum();
        for (j, c) in cs.iter().enumerate() {
            assert_eq!(&total.coeff(&v1, m - 2 * j as i32), c);
        }
    }

    #[test]
    fn exact_division() {
        let a = p("x^2 - y^2");
        let b = p("x + y");
        assert_eq!(a.div_exact(&b).unwrap(), p("x - y"));
        assert!(matches!(p("x^2 + 1").div_exact(&b), Err(Error::NotDivisible)));
        assert_eq!(p("1").div_exact(&p("2*x")).unwrap(), p("1/2*x^-1"));
        let l = p("u^-1 + u") * p("u^-2 - 3*v");
        assert_eq!(l.div_exact(&p("u^-2 - 3*v")).unwrap(), p("u^-1 + u"));
    }

    #[test]
    fn substitution() {
        let f = p("x^2*y + y^-1");
        let r = f.substitute(&[(Var::from("x"), p("a + 1")), (Var::from("y"), p("2*b"))]).unwrap();
        assert_eq!(r, p("2*a^2*b + 4*a*b + 2*b + 1/2*b^-1"));
        assert!(f.substitute(&[(Var::from("y"), p("a + b"))]).is_err());
    }

    #[test]
    fn unused_vars_are_pruned() {
        let f = p("x*y") - p("x*y") + p("z");
        assert_eq!(f.vars(), &[Var::from("z")]);
        assert_eq!(p("x - x + 1"), MultiPoly::one());
    }
}
