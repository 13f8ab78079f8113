use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{CheckResult, Defaults, SuiteName};
use crate::algebra::{MultiPoly, Rational};
use crate::combinatorics::{
    box_count, enumerate_half, enumerate_path_configs, enumerate_plane_partitions, enumerate_tableaux, macmahon_count,
    partitions_in_box, psi1_admissible, psi2_admissible, weighted_sum_f, weighted_sum_g, weighted_sum_psi1,
    weighted_sum_psi2, Half, HalfPlanePartition, LatticePathConfig, Order, PathConstraint, Picture, SkewShape,
};
use crate::phase::{
    boundary_correlator, build_conj_state, build_state, limit_correspondence, monodromy_apply, n_point_admissible,
    restricted_scalar_product_check, scalar_product, single_det_form, spectral, verify_recursion, verify_rtt, Corner,
    Correlator, Evaluation, FockState, LimitKind, Recursion, ScalarMethod, SingleDet, StateVector,
};
use crate::symfunc::{schur_letters, SchurMethod, TimeVector};
use crate::toda::{bilinear_check, generic_matrix, random_rationals, verify_linear_problem, verify_prop1, Flow, TauContext, WaveKind, WaveSide};
use crate::Error;

struct Sink {
    suite: SuiteName,
    items: Vec<CheckResult>,
}

impl Sink {
    fn new(suite: SuiteName) -> Self {
        Sink { suite, items: Vec::new() }
    }

    fn push(&mut self, name: &str, params: String, outcome: Result<bool, Error>) {
        self.items.push(CheckResult::new(self.suite, name, params, outcome));
    }
}

fn universes(b: &Defaults) -> impl Iterator<Item = (usize, u32)> + '_ {
    (0..=b.max_particles).flat_map(move |n| (0..=b.max_sites).map(move |m| (n, m)))
}

fn all_equal(v: &[MultiPoly]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

pub(super) fn combinatorics(b: &Defaults) -> Vec<CheckResult> {
    let mut out = Sink::new(SuiteName::Combinatorics);
    for (n, m) in universes(b) {
        let p = format!("N={n} M={m}");
        let pps: Vec<_> = enumerate_plane_partitions(n, m).collect();
        out.push("box_counts", p.clone(), Ok(partitions_in_box(n, m).len() as u64 == box_count(n, m) && macmahon_count(n, m) == pps.len().into()));

        let paths = enumerate_path_configs(n, m, &PathConstraint::None);
        let round_trip = paths.len() == pps.len()
            && paths.iter().all(|c| LatticePathConfig::from_plane_partition(&c.to_plane_partition()).is_ok_and(|d| &d == c))
            && pps.iter().all(|pp| LatticePathConfig::from_plane_partition(pp).is_ok_and(|c| &c.to_plane_partition() == pp));
        out.push("path_bijection", p.clone(), Ok(round_trip));

        let weights = paths.iter().all(|c| {
            let pp = c.to_plane_partition();
            let (lower, upper) = (pp.half(Half::Lower), pp.half(Half::Upper));
            let from_pp: Vec<i32> = lower.column_exponents().into_iter().chain(upper.column_exponents()).collect();
            let from_tab: Vec<i32> = lower
                .to_tableau()
                .weight(n as u32)
                .iter()
                .map(|&t| m as i32 - 2 * t as i32)
                .chain(upper.to_tableau().weight(n as u32).iter().map(|&t| 2 * t as i32 - m as i32))
                .collect();
            c.column_exponents() == from_pp && from_pp == from_tab
        });
        out.push("weight_preservation", p.clone(), Ok(weights));

        for lambda in partitions_in_box(n, m) {
            let q = format!("N={n} M={m} lambda={lambda}");
            let shape = SkewShape::straight(lambda.clone());
            let halves = [(Half::Upper, Order::Descending), (Half::Lower, Order::Ascending)].into_iter().all(|(half, order)| {
                let hs = enumerate_half(half, &lambda, n, m, &[]).unwrap_or_default();
                let ts: Vec<_> = enumerate_tableaux(&shape, n as u32, order).collect();
                hs.len() == ts.len()
                    && hs.iter().all(|h| HalfPlanePartition::from_tableau(&h.to_tableau(), n, m).is_ok_and(|g| &g == h))
                    && ts.iter().all(|t| HalfPlanePartition::from_tableau(t, n, m).is_ok_and(|h| &h.to_tableau() == t))
            });
            out.push("tableau_bijection", q.clone(), Ok(halves));

            let three = |f: &dyn Fn(Picture) -> Result<MultiPoly, Error>| -> Result<bool, Error> {
                let v = Picture::ALL.iter().map(|&pic| f(pic)).collect::<Result<Vec<_>, _>>()?;
                Ok(all_equal(&v))
            };
            out.push("pictures_f", q.clone(), three(&|pic| weighted_sum_f(&lambda, n, m, pic)));
            out.push("pictures_g", q.clone(), three(&|pic| weighted_sum_g(&lambda, n, m, pic)));
            for k in (0..=m).filter(|&k| psi1_admissible(k, &lambda, n, m)) {
                out.push("pictures_psi1", format!("{q} k={k}"), three(&|pic| weighted_sum_psi1(k, &lambda, n, m, pic)));
            }
            for k in (0..=n).filter(|&k| psi2_admissible(k, &lambda, n, m)) {
                out.push("pictures_psi2", format!("{q} k={k}"), three(&|pic| weighted_sum_psi2(k, &lambda, n, m, pic)));
            }
        }
    }
    out.items
}

pub(super) fn toda(b: &Defaults, seed: u64) -> Vec<CheckResult> {
    let mut out = Sink::new(SuiteName::Toda);
    for size in 2..=b.prop1_size {
        let ctx = TauContext::symbolic(0, size as i64, generic_matrix(size, seed.wrapping_add(size as u64)));
        let ctx = match ctx {
            Ok(c) => c,
            Err(e) => {
                out.push("prop1", format!("n-m={size}"), Err(e));
                continue;
            }
        };
        for s in ctx.m()..ctx.n() {
            for kind in WaveKind::ALL {
                for k in 0..=kind.max_k(&ctx, s) {
                    out.push("prop1", format!("n-m={size} s={s} {kind:?} k={k}"), verify_prop1(&ctx, s, k, kind));
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for size in 2..=b.bilinear_size {
        let ctx = TauContext::symbolic(0, size as i64, generic_matrix(size, seed.wrapping_add(100 + size as u64)))
            .expect("generic matrices are valid");
        for t in 0..b.bilinear_tuples_per_size {
            let mut times = || TimeVector::from_rationals(&random_rationals(&mut rng, size - 1));
            let (x, x2, y, y2) = (times(), times(), times(), times());
            for s in ctx.m()..ctx.n() {
                for s2 in ctx.m() + 1..=ctx.n() {
                    out.push(
                        "bilinear",
                        format!("n-m={size} tuple={t} s={s} s'={s2}"),
                        bilinear_check(&ctx, s, s2, &x, &x2, &y, &y2),
                    );
                }
            }
        }
    }

    for size in 2..=b.linear_size {
        let ctx = TauContext::symbolic(0, size as i64, generic_matrix(size, seed.wrapping_add(200 + size as u64)))
            .expect("generic matrices are valid");
        for j in 1..=b.linear_flow_index {
            for flow in [Flow::X, Flow::Y] {
                for side in [WaveSide::Inf, WaveSide::Zero] {
                    out.push(
                        "linear_problem",
                        format!("n-m={size} j={j} {flow:?} {side:?}"),
                        verify_linear_problem(&ctx, j, flow, side),
                    );
                }
            }
        }
    }
    out.items
}

fn rational_point(rng: &mut ChaCha8Rng) -> MultiPoly {
    let num: i64 = rng.random_range(1..=9) * if rng.random_bool(0.5) { 1 } else { -1 };
    MultiPoly::from(Rational::new(num, rng.random_range(1..=4)).expect("nonzero denominator"))
}

fn distinct_squares(xs: &[MultiPoly]) -> bool {
    let sq: Vec<MultiPoly> = xs.iter().map(|x| x * x).collect();
    (0..sq.len()).all(|i| (i + 1..sq.len()).all(|j| sq[i] != sq[j]))
}

fn three_way(m: u32, u: &[MultiPoly], v: &[MultiPoly]) -> Result<bool, Error> {
    let vals = ScalarMethod::ALL.iter().map(|&meth| scalar_product(m, u, v, meth)).collect::<Result<Vec<_>, _>>()?;
    Ok(all_equal(&vals))
}

fn schur_coefficients(n: usize, m: u32) -> Result<bool, Error> {
    let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
    let ket = build_state(&u, m as usize)?;
    let bra = build_conj_state(&v, m as usize)?;
    let u2: Vec<MultiPoly> = u.iter().map(|x| x * x).collect();
    let v2 = v.iter().map(|x| x.pow_i(-2)).collect::<Result<Vec<_>, _>>()?;
    let (pu, pv) = (
        u.iter().try_fold(MultiPoly::one(), |a, x| Ok::<_, Error>(&a * &x.pow_i(-(m as i32))?))?,
        v.iter().try_fold(MultiPoly::one(), |a, x| Ok::<_, Error>(&a * &x.pow_i(m as i32)?))?,
    );
    for lambda in partitions_in_box(n, m) {
        let shape = SkewShape::straight(lambda.clone());
        let f = &pu * &schur_letters(&shape, &u2, SchurMethod::JacobiTrudi);
        let g = &pv * &schur_letters(&shape, &v2, SchurMethod::JacobiTrudi);
        if ket.coefficient_of(&lambda, n)? != f || bra.coefficient_of(&lambda, n)? != g {
            return Ok(false);
        }
    }
    Ok(ket.len() == partitions_in_box(n, m).len())
}

/// `B` raises and `C` lowers the total occupation on every basis ket.
fn grading(m: usize, cap: u32) -> Result<bool, Error> {
    let u = MultiPoly::var("u");
    for total in 0..=cap {
        for st in FockState::all_with_total(m, total) {
            let ket = StateVector::basis(st, false);
            if !monodromy_apply(Corner::B, &u, &ket)?.has_total(total + 1) {
                return Ok(false);
            }
            let down = monodromy_apply(Corner::C, &u, &ket)?;
            if total == 0 && !down.is_zero() || total > 0 && !down.has_total(total - 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub(super) fn phase(b: &Defaults, seed: u64) -> Vec<CheckResult> {
    let mut out = Sink::new(SuiteName::Phase);
    for n in 0..=b.scalar_symbolic_particles {
        for m in 0..=b.max_sites {
            let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
            out.push("scalar_three_way", format!("N={n} M={m} symbolic"), three_way(m, &u, &v));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in b.scalar_point_particles {
        for m in 0..=b.max_sites {
            for p in 0..b.scalar_points {
                let (u, v) = loop {
                    let u: Vec<MultiPoly> = (0..n).map(|_| rational_point(&mut rng)).collect();
                    let v: Vec<MultiPoly> = (0..n).map(|_| rational_point(&mut rng)).collect();
                    if distinct_squares(&u) && distinct_squares(&v) {
                        break (u, v);
                    }
                };
                out.push("scalar_three_way", format!("N={n} M={m} point={p:02}"), three_way(m, &u, &v));
            }
        }
    }
    for (n, m) in universes(b) {
        out.push("state_coefficients", format!("N={n} M={m}"), schur_coefficients(n, m));
    }
    for m in 0..=b.rtt_sites {
        out.push("grading", format!("M={m}"), grading(m, b.rtt_cap));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    let mut pairs = 0;
    while pairs < b.rtt_pairs {
        let (u, v) = (rational_point(&mut rng), rational_point(&mut rng));
        if &u * &u == &v * &v {
            continue;
        }
        for m in 0..=b.rtt_sites {
            out.push("rtt", format!("pair={pairs} u={u} v={v} M={m} cap={}", b.rtt_cap), verify_rtt(&u, &v, m, b.rtt_cap));
        }
        pairs += 1;
    }
    out.items
}

/// Every admissible insertion list for `N` particles on `M+1` sites.
pub fn insertion_lists(n_particles: usize, m: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for n in 1..=n_particles {
        for head in 0..=m {
            for ones in 0..n {
                let r: Vec<u32> =
                    std::iter::once(head).chain(std::iter::repeat_n(1, ones)).chain(std::iter::repeat_n(0, n - 1 - ones)).collect();
                if n_point_admissible(&r, n_particles, m) {
                    out.push(r);
                }
            }
        }
    }
    out
}

fn equal(a: Result<MultiPoly, Error>, b: Result<MultiPoly, Error>) -> Result<bool, Error> {
    Ok(a? == b?)
}

pub(super) fn correspondence(b: &Defaults) -> Vec<CheckResult> {
    let mut out = Sink::new(SuiteName::Correspondence);
    for (n, m) in universes(b) {
        let p = format!("N={n} M={m}");
        out.push("restricted_tau", p.clone(), restricted_scalar_product_check(n, m));
        if n == 0 || m == 0 {
            continue;
        }
        for k in 0..=m {
            out.push("limit_v1", format!("{p} k={k}"), limit_correspondence(LimitKind::V1ToInfinity(k), n, m));
        }
        for k in 0..=n {
            out.push("limit_u_tail", format!("{p} k={k}"), limit_correspondence(LimitKind::UTailToZero(k), n, m));
        }
        let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
        for q in 0..=m {
            out.push(
                "single_det_row",
                format!("{p} q={q}"),
                equal(single_det_form(&SingleDet::Wave0(q), m, &u, &v), boundary_correlator(&Correlator::KindI(q), m, &u, &v)),
            );
        }
        for r in insertion_lists(n, m) {
            let kind = match r.as_slice() {
                [q] => SingleDet::OnePoint(*q),
                [q, 1] => SingleDet::TwoPoint(*q),
                _ => SingleDet::NPoint(r.clone()),
            };
            out.push(
                "single_det_insertions",
                format!("{p} r={r:?}"),
                equal(single_det_form(&kind, m, &u, &v), boundary_correlator(&Correlator::NPoint(r.clone()), m, &u, &v)),
            );
        }
        for how in [Evaluation::Fock, Evaluation::Determinant] {
            for nn in 1..n {
                for q in 0..nn {
                    let rec = Recursion::Mixed { n: nn, q };
                    out.push("recursion", format!("{p} {rec:?} {how:?}"), verify_recursion(rec, m, &u, &v, how));
                }
            }
            for nn in 0..n {
                let rec = Recursion::Zeros { n: nn };
                out.push("recursion", format!("{p} {rec:?} {how:?}"), verify_recursion(rec, m, &u, &v, how));
            }
        }
    }
    out.items
}
