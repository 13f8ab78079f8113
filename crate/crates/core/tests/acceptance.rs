//! Acceptance battery. Prints one line per criterion and exits nonzero if
//! any criterion fails. All comparisons are exact (tolerance zero); time
//! targets are reported next to the measured time.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use phase_toda::algebra::{MultiPoly, Rational};
use phase_toda::combinatorics::{
    enumerate_half, enumerate_path_configs, enumerate_plane_partitions, enumerate_tableaux, partitions_in_box,
    psi1_admissible, psi2_admissible, weighted_sum_f, weighted_sum_g, weighted_sum_psi1, weighted_sum_psi2, Half,
    HalfPlanePartition, LatticePathConfig, Order, PathConstraint, Picture, SkewShape,
};
use phase_toda::phase::{
    boundary_correlator, build_conj_state, build_state, limit_correspondence, restricted_scalar_product_check,
    scalar_product, single_det_form, spectral, verify_recursion, verify_rtt, Correlator, Evaluation, LimitKind,
    Recursion, ScalarMethod, SingleDet,
};
use phase_toda::suite::{insertion_lists, run_suite, SuiteName};
use phase_toda::symfunc::{schur_letters, SchurMethod, TimeVector};
use phase_toda::toda::{
    bilinear_check, generic_matrix, random_rationals, verify_linear_problem, verify_prop1, Flow, TauContext, WaveKind,
    WaveSide,
};
use phase_toda::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 2024;
const TOLERANCE: &str = "exact, tolerance 0";

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), Outcome> {
    if ok {
        Ok(())
    } else {
        Err(fail(what()))
    }
}

fn holds(r: Result<bool, Error>, what: impl FnOnce() -> String) -> Result<(), Outcome> {
    match r {
        Ok(true) => Ok(()),
        Ok(false) => Err(fail(what())),
        Err(e) => Err(fail(format!("{}: {e}", what()))),
    }
}

fn all_equal(v: &[MultiPoly]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

fn rational_point(rng: &mut ChaCha8Rng) -> MultiPoly {
    let num: i64 = rng.random_range(1..=12) * if rng.random_bool(0.5) { 1 } else { -1 };
    MultiPoly::from(Rational::new(num, rng.random_range(1..=5)).unwrap())
}

fn distinct_squares(xs: &[MultiPoly]) -> bool {
    let sq: Vec<MultiPoly> = xs.iter().map(|x| x * x).collect();
    (0..sq.len()).all(|i| (i + 1..sq.len()).all(|j| sq[i] != sq[j]))
}

fn three_way(m: u32, u: &[MultiPoly], v: &[MultiPoly]) -> Result<bool, Error> {
    let vals = ScalarMethod::ALL.iter().map(|&meth| scalar_product(m, u, v, meth)).collect::<Result<Vec<_>, _>>()?;
    Ok(all_equal(&vals))
}

fn scalar_products() -> Result<Outcome, Outcome> {
    let (u, v) = (MultiPoly::var("u1"), MultiPoly::var("v1"));
    let anchor = &(&v * &u.pow_i(-1).unwrap()) + &(&u * &v.pow_i(-1).unwrap());
    for meth in ScalarMethod::ALL {
        let got = scalar_product(1, &spectral("u", 1..=1), &spectral("v", 1..=1), meth).map_err(|e| fail(e.to_string()))?;
        check(got == anchor, || format!("(1,1) anchor via {meth:?}: {got}"))?;
    }
    let mut symbolic = 0;
    for n in 0..=2 {
        for m in 0..=3 {
            holds(three_way(m, &spectral("u", 1..=n), &spectral("v", 1..=n)), || format!("N={n} M={m} symbolic"))?;
            symbolic += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut points = 0;
    for n in [3, 4] {
        for m in 0..=3 {
            for p in 0..20 {
                let (u, v) = loop {
                    let u: Vec<MultiPoly> = (0..n).map(|_| rational_point(&mut rng)).collect();
                    let v: Vec<MultiPoly> = (0..n).map(|_| rational_point(&mut rng)).collect();
                    if distinct_squares(&u) && distinct_squares(&v) {
                        break (u, v);
                    }
                };
                holds(three_way(m, &u, &v), || format!("N={n} M={m} point {p}"))?;
                points += 1;
            }
        }
    }
    Ok(pass(format!("{symbolic} symbolic cases, {points} seeded points, (1,1) anchor")))
}

fn state_coefficients() -> Result<Outcome, Outcome> {
    let mut coefficients = 0;
    for n in 0..=3 {
        for m in 0..=3u32 {
            let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
            let ket = build_state(&u, m as usize).map_err(|e| fail(e.to_string()))?;
            let bra = build_conj_state(&v, m as usize).map_err(|e| fail(e.to_string()))?;
            let u2: Vec<MultiPoly> = u.iter().map(|x| x * x).collect();
            let v2: Vec<MultiPoly> = v.iter().map(|x| x.pow_i(-2).unwrap()).collect();
            let pu = u.iter().fold(MultiPoly::one(), |a, x| &a * &x.pow_i(-(m as i32)).unwrap());
            let pv = v.iter().fold(MultiPoly::one(), |a, x| &a * &x.pow_i(m as i32).unwrap());
            let box_ = partitions_in_box(n, m);
            check(ket.len() == box_.len(), || format!("N={n} M={m}: ket has {} terms", ket.len()))?;
            for lambda in box_ {
                // Schur polynomials as tableau sums, independent of the determinant route.
                let shape = SkewShape::straight(lambda.clone());
                let f = &pu * &schur_letters(&shape, &u2, SchurMethod::TableauSum);
                let g = &pv * &schur_letters(&shape, &v2, SchurMethod::TableauSum);
                check(ket.coefficient_of(&lambda, n).is_ok_and(|c| c == f), || format!("f N={n} M={m} {lambda}"))?;
                check(bra.coefficient_of(&lambda, n).is_ok_and(|c| c == g), || format!("g N={n} M={m} {lambda}"))?;
                coefficients += 2;
            }
        }
    }
    Ok(pass(format!("{coefficients} coefficients")))
}

fn pictures() -> Result<Outcome, Outcome> {
    let mut sums = 0;
    let three = |f: &dyn Fn(Picture) -> Result<MultiPoly, Error>| -> Result<bool, Error> {
        let v = Picture::ALL.iter().map(|&p| f(p)).collect::<Result<Vec<_>, _>>()?;
        Ok(all_equal(&v))
    };
    for n in 0..=3 {
        for m in 0..=3 {
            for lambda in partitions_in_box(n, m) {
                let p = format!("N={n} M={m} lambda={lambda}");
                holds(three(&|pic| weighted_sum_f(&lambda, n, m, pic)), || format!("f {p}"))?;
                holds(three(&|pic| weighted_sum_g(&lambda, n, m, pic)), || format!("g {p}"))?;
                sums += 2;
                for k in (0..=m).filter(|&k| psi1_admissible(k, &lambda, n, m)) {
                    holds(three(&|pic| weighted_sum_psi1(k, &lambda, n, m, pic)), || format!("psi1 {p} k={k}"))?;
                    sums += 1;
                }
                for k in (0..=n).filter(|&k| psi2_admissible(k, &lambda, n, m)) {
                    holds(three(&|pic| weighted_sum_psi2(k, &lambda, n, m, pic)), || format!("psi2 {p} k={k}"))?;
                    sums += 1;
                }
            }
        }
    }
    Ok(pass(format!("{sums} weighted sums in three pictures")))
}

/// `Π_{i,j,k} (i+j+k-1)/(i+j+k-2)` over the `a`×`b`×`c` box.
fn macmahon(a: usize, b: usize, c: usize) -> BigInt {
    let (mut num, mut den) = (BigInt::from(1), BigInt::from(1));
    for i in 1..=a {
        for j in 1..=b {
            for k in 1..=c {
                num *= i + j + k - 1;
                den *= i + j + k - 2;
            }
        }
    }
    num / den
}

fn bijections() -> Result<Outcome, Outcome> {
    let mut objects = 0;
    for n in 0..=3usize {
        for m in 0..=3u32 {
            let pps: Vec<_> = enumerate_plane_partitions(n, m).collect();
            check(BigInt::from(pps.len()) == macmahon(n, n, m as usize), || format!("count N={n} M={m}: {}", pps.len()))?;
            let distinct: BTreeSet<String> = pps.iter().map(|p| format!("{:?}", p.rows())).collect();
            check(distinct.len() == pps.len(), || format!("duplicates N={n} M={m}"))?;
            let paths = enumerate_path_configs(n, m, &PathConstraint::None);
            check(paths.len() == pps.len(), || format!("path count N={n} M={m}"))?;
            for pp in &pps {
                let c = LatticePathConfig::from_plane_partition(pp).map_err(|e| fail(e.to_string()))?;
                check(&c.to_plane_partition() == pp, || format!("pp round trip N={n} M={m}"))?;
                let (lower, upper) = (pp.half(Half::Lower), pp.half(Half::Upper));
                let from_pp: Vec<i32> = lower.column_exponents().into_iter().chain(upper.column_exponents()).collect();
                let from_tab: Vec<i32> = lower
                    .to_tableau()
                    .weight(n as u32)
                    .iter()
                    .map(|&t| m as i32 - 2 * t as i32)
                    .chain(upper.to_tableau().weight(n as u32).iter().map(|&t| 2 * t as i32 - m as i32))
                    .collect();
                check(c.column_exponents() == from_pp && from_pp == from_tab, || format!("weights N={n} M={m}"))?;
                objects += 1;
            }
            for c in &paths {
                check(LatticePathConfig::from_plane_partition(&c.to_plane_partition()).is_ok_and(|d| &d == c), || {
                    format!("path round trip N={n} M={m}")
                })?;
            }
            for lambda in partitions_in_box(n, m) {
                let shape = SkewShape::straight(lambda.clone());
                for (half, order) in [(Half::Upper, Order::Descending), (Half::Lower, Order::Ascending)] {
                    let hs = enumerate_half(half, &lambda, n, m, &[]).map_err(|e| fail(e.to_string()))?;
                    let ts: Vec<_> = enumerate_tableaux(&shape, n as u32, order).collect();
                    check(hs.len() == ts.len(), || format!("half count {half:?} {lambda}"))?;
                    for h in &hs {
                        check(HalfPlanePartition::from_tableau(&h.to_tableau(), n, m).is_ok_and(|g| &g == h), || {
                            format!("half round trip {half:?} {lambda}")
                        })?;
                    }
                    for t in &ts {
                        check(HalfPlanePartition::from_tableau(t, n, m).is_ok_and(|h| &h.to_tableau() == t), || {
                            format!("tableau round trip {half:?} {lambda}")
                        })?;
                    }
                    objects += hs.len();
                }
            }
        }
    }
    Ok(pass(format!("{objects} objects round-tripped, MacMahon counts match")))
}

fn prop1() -> Result<Outcome, Outcome> {
    let mut cases = 0;
    for size in 1..=4 {
        let ctx = TauContext::symbolic(0, size as i64, generic_matrix(size, SEED + size as u64)).map_err(|e| fail(e.to_string()))?;
        for s in ctx.m()..ctx.n() {
            for kind in WaveKind::ALL {
                for k in 0..=kind.max_k(&ctx, s) {
                    holds(verify_prop1(&ctx, s, k, kind), || format!("n-m={size} s={s} {kind:?} k={k}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(pass(format!("{cases} (size, s, kind, k) cases")))
}

fn bilinear() -> Result<Outcome, Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut tuples, mut residues) = (0, 0);
    for size in 2..=4 {
        let ctx = TauContext::symbolic(0, size as i64, generic_matrix(size, SEED + 100 + size as u64)).map_err(|e| fail(e.to_string()))?;
        for _ in 0..17 {
            let mut times = || TimeVector::from_rationals(&random_rationals(&mut rng, size - 1));
            let (x, x2, y, y2) = (times(), times(), times(), times());
            for s in ctx.m()..ctx.n() {
                for s2 in ctx.m() + 1..=ctx.n() {
                    match bilinear_check(&ctx, s, s2, &x, &x2, &y, &y2) {
                        Ok(true) => residues += 1,
                        Err(Error::DegenerateDenominator(_)) => {}
                        other => return Err(fail(format!("n-m={size} s={s} s'={s2}: {other:?}"))),
                    }
                }
            }
            tuples += 1;
        }
    }
    check(tuples >= 50, || format!("only {tuples} tuples"))?;
    Ok(pass(format!("{tuples} seeded tuples, {residues} residue equalities")))
}

fn linear() -> Result<Outcome, Outcome> {
    let mut cases = 0;
    for size in 1..=3 {
        let ctx = TauContext::symbolic(0, size as i64, generic_matrix(size, SEED + 200 + size as u64)).map_err(|e| fail(e.to_string()))?;
        for j in 1..=2 {
            for flow in [Flow::X, Flow::Y] {
                for side in [WaveSide::Inf, WaveSide::Zero] {
                    holds(verify_linear_problem(&ctx, j, flow, side), || format!("n-m={size} j={j} {flow:?} {side:?}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(pass(format!("{cases} (size, j, flow, side) cases")))
}

fn restricted_tau() -> Result<Outcome, Outcome> {
    for n in 0..=3 {
        for m in 0..=3 {
            holds(restricted_scalar_product_check(n, m), || format!("N={n} M={m}"))?;
        }
    }
    Ok(pass("16 (N, M) pairs"))
}

fn limits() -> Result<Outcome, Outcome> {
    let mut cases = 0;
    for n in 1..=3 {
        for m in 1..=3 {
            for k in 0..=m {
                holds(limit_correspondence(LimitKind::V1ToInfinity(k), n, m), || format!("kind I N={n} M={m} k={k}"))?;
                cases += 1;
            }
            for k in 0..=n {
                holds(limit_correspondence(LimitKind::UTailToZero(k), n, m), || format!("kind II N={n} M={m} k={k}"))?;
                cases += 1;
            }
        }
    }
    Ok(pass(format!("{cases} limits, both kinds")))
}

fn single_dets() -> Result<Outcome, Outcome> {
    let (mut forms, mut recursions) = (0, 0);
    let eq = |a: Result<MultiPoly, Error>, b: Result<MultiPoly, Error>| -> Result<bool, Error> { Ok(a? == b?) };
    for n in 1..=3 {
        for m in 1..=3 {
            let (u, v) = (spectral("u", 1..=n), spectral("v", 1..=n));
            for q in 0..=m {
                holds(eq(single_det_form(&SingleDet::Wave0(q), m, &u, &v), boundary_correlator(&Correlator::KindI(q), m, &u, &v)), || {
                    format!("row form N={n} M={m} q={q}")
                })?;
                forms += 1;
            }
            for r in insertion_lists(n, m) {
                let kind = match r.as_slice() {
                    [q] => SingleDet::OnePoint(*q),
                    [q, 1] => SingleDet::TwoPoint(*q),
                    _ => SingleDet::NPoint(r.clone()),
                };
                holds(eq(single_det_form(&kind, m, &u, &v), boundary_correlator(&Correlator::NPoint(r.clone()), m, &u, &v)), || {
                    format!("N={n} M={m} r={r:?}")
                })?;
                forms += 1;
            }
            for how in [Evaluation::Fock, Evaluation::Determinant] {
                let mut recs: Vec<Recursion> = (0..n).map(|nn| Recursion::Zeros { n: nn }).collect();
                recs.extend((1..n).flat_map(|nn| (0..nn).map(move |q| Recursion::Mixed { n: nn, q })));
                for rec in recs {
                    holds(verify_recursion(rec, m, &u, &v, how), || format!("N={n} M={m} {rec:?} {how:?}"))?;
                    recursions += 1;
                }
            }
        }
    }
    Ok(pass(format!("{forms} determinant forms, {recursions} recursions")))
}

fn rtt() -> Result<Outcome, Outcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pairs = 0;
    while pairs < 5 {
        let (u, v) = (rational_point(&mut rng), rational_point(&mut rng));
        if &u * &u == &v * &v {
            continue;
        }
        for m in 0..=2 {
            holds(verify_rtt(&u, &v, m, 3), || format!("u={u} v={v} M={m}"))?;
        }
        pairs += 1;
    }
    Ok(pass("5 seeded pairs, M <= 2, cap 3"))
}

fn determinism() -> Result<Outcome, Outcome> {
    let first = run_suite(SuiteName::All, SEED);
    let second = run_suite(SuiteName::All, SEED);
    check(first.all_passed(), || format!("{} failing items, first: {:?}", first.failed, first.failures().next()))?;
    check(first.to_json() == second.to_json(), || "JSON differs".into())?;
    check(first.to_csv() == second.to_csv(), || "CSV differs".into())?;
    Ok(pass(format!("{} bytes identical, {} items", first.to_json().len(), first.items.len())))
}

type Criterion = (u32, &'static str, Option<u64>, fn() -> Result<Outcome, Outcome>);

const CRITERIA: [Criterion; 12] = [
    (1, "scalar product three ways", Some(60), scalar_products),
    (2, "state coefficients are Schur polynomials", Some(30), state_coefficients),
    (3, "weighted sums agree in three pictures", None, pictures),
    (4, "bijections and MacMahon counts", None, bijections),
    (5, "derivative identities for wave entries", Some(60), prop1),
    (6, "bilinear residue relation", None, bilinear),
    (7, "linear problem and Lax consistency", None, linear),
    (8, "restricted tau is the scalar product", None, restricted_tau),
    (9, "wave-function limits give correlators", None, limits),
    (10, "single determinant forms and recursions", None, single_dets),
    (11, "intertwining relation on truncated blocks", None, rtt),
    (12, "suite reports are byte-identical", None, determinism),
];

fn main() {
    let mut failed = 0;
    for (id, name, target, run) in CRITERIA {
        let start = Instant::now();
        let out = run().unwrap_or_else(|e| e);
        let took = start.elapsed();
        let timing = match target {
            Some(t) if took > Duration::from_secs(t) => format!("{:.1}s, over the {t}s target", took.as_secs_f64()),
            Some(t) => format!("{:.1}s, target {t}s", took.as_secs_f64()),
            None => format!("{:.1}s", took.as_secs_f64()),
        };
        println!("criterion {id:>2} {} {name} ({TOLERANCE}; {timing}): {}", if out.ok { "PASS" } else { "FAIL" }, out.detail);
        if !out.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
