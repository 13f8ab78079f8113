use super::TauContext;
use crate::algebra::{MultiPoly, RingMatrix};
use crate::symfunc::{miwa_map, pk_letters, AlphabetSpec};
use crate::Error;

/// `τ(m+N)` for `A = δ`, `n - m = N + M`, with the times replaced by
/// power sums of `u^2` and `v^{-2}`.
pub fn restrict_tau(u: &AlphabetSpec, v: &AlphabetSpec, m: u32) -> Result<MultiPoly, Error> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::Config(format!("alphabets of sizes {} and {}", n, v.len())));
    }
    let size = n + m as usize;
    if size == 0 {
        return Ok(MultiPoly::one());
    }
    let (x, y) = miwa_map(u, v, size - 1);
    let ctx = TauContext::new(0, size as i64, RingMatrix::identity(size), x, y)?;
    ctx.tau(n as i64)
}

/// `p_k(μ, 0^l) = p_k(μ)` for `k = 1..=horizon`.
pub fn power_sum_append_zeros_check(mu: &[MultiPoly], zeros: usize, horizon: u32) -> bool {
    let mut padded = mu.to_vec();
    padded.extend(std::iter::repeat_n(MultiPoly::zero(), zeros));
    (1..=horizon).all(|k| pk_letters(k, &padded) == pk_letters(k, mu))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::Convention;

    #[test]
    fn one_by_one() {
        let u = AlphabetSpec::indexed("u", 1..=1, Convention::Squared);
        let v = AlphabetSpec::indexed("v", 1..=1, Convention::InverseSquared);
        assert_eq!(restrict_tau(&u, &v, 1).unwrap().to_string(), "u1^2*v1^-2 + 1");
        let e = AlphabetSpec::indexed("u", 1..=0, Convention::Squared);
        assert!(restrict_tau(&e, &e, 2).unwrap().is_one());
    }

    #[test]
    fn zeros_leave_power_sums() {
        let mu: Vec<MultiPoly> = ["a", "b"].iter().map(|s| MultiPoly::var(s)).collect();
        assert!(power_sum_append_zeros_check(&mu[..1], 1, 3));
        assert!(power_sum_append_zeros_check(&mu, 2, 6));
    }
}
