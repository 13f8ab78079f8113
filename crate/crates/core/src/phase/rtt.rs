use super::fock::{monodromy_apply, Corner, FockState, StateVector};
use crate::algebra::MultiPoly;
use crate::Error;

/// `(u^2 - v^2) R(u, v)`, so that every entry is a polynomial.
fn scaled_r(u: &MultiPoly, v: &MultiPoly) -> [[MultiPoly; 4]; 4] {
    let z = MultiPoly::zero;
    let f = u * u;
    let g = u * v;
    let one = &(u * u) - &(v * v);
    [
        [f.clone(), z(), z(), z()],
        [z(), g.clone(), one, z()],
        [z(), z(), g, z()],
        [z(), z(), z(), f],
    ]
}

fn t(entry: (usize, usize), x: &MultiPoly, s: &StateVector) -> Result<StateVector, Error> {
    monodromy_apply(Corner::from_indices(entry.0, entry.1), x, s)
}

/// `R(u,v)[T(u)⊗T(v)] = [T(v)⊗T(u)]R(u,v)` applied to every basis ket
/// of total occupation at most `n_cap`.
pub fn verify_rtt(u: &MultiPoly, v: &MultiPoly, m: usize, n_cap: u32) -> Result<bool, Error> {
    if (&(u * u) - &(v * v)).is_zero() {
        return Err(Error::PoleViolation(format!("u^2 = v^2 for u={u}, v={v}")));
    }
    let r = scaled_r(u, v);
    let split = |p: usize| (p / 2, p % 2);
    for total in 0..=n_cap {
        for basis in FockState::all_with_total(m, total) {
            let psi = StateVector::basis(basis, false);
            // (T_{xy}(v) ψ) for every corner, reused on both sides.
            let mut tv = Vec::with_capacity(4);
            let mut tu = Vec::with_capacity(4);
            for p in 0..4 {
                tv.push(t(split(p), v, &psi)?);
                tu.push(t(split(p), u, &psi)?);
            }
            for p in 0..4 {
                let (a, c) = split(p);
                for q in 0..4 {
                    let (b, d) = split(q);
                    let mut lhs = StateVector::zero(m, false);
                    let mut rhs = StateVector::zero(m, false);
                    for ef in 0..4 {
                        let (e, f) = split(ef);
                        if !r[p][ef].is_zero() {
                            let inner = &tv[f * 2 + d];
                            lhs = lhs.add(&t((e, b), u, inner)?.scale(&r[p][ef]));
                        }
                        if !r[ef][q].is_zero() {
                            let inner = &tu[c * 2 + f];
                            rhs = rhs.add(&t((a, e), v, inner)?.scale(&r[ef][q]));
                        }
                    }
                    if lhs != rhs {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> MultiPoly {
        MultiPoly::from_int(n)
    }

    #[test]
    fn single_site() {
        assert!(verify_rtt(&q(2), &q(1), 0, 2).unwrap());
    }

    #[test]
    fn two_sites() {
        assert!(verify_rtt(&q(3), &q(2), 1, 2).unwrap());
    }

    #[test]
    fn symbolic() {
        assert!(verify_rtt(&MultiPoly::var("u"), &MultiPoly::var("v"), 2, 2).unwrap());
    }

    #[test]
    fn pole() {
        assert!(matches!(verify_rtt(&q(1), &q(1), 0, 1), Err(Error::PoleViolation(_))));
        assert!(matches!(verify_rtt(&q(2), &q(-2), 0, 1), Err(Error::PoleViolation(_))));
    }
}
