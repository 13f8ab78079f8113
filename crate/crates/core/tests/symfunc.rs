use phase_toda::algebra::{MultiPoly, Rational, Var};
use phase_toda::combinatorics::*;
use phase_toda::symfunc::*;
use proptest::prelude::*;

fn squared(stem: &str, range: impl IntoIterator<Item = usize>) -> AlphabetSpec {
    AlphabetSpec::indexed(stem, range, Convention::Squared)
}

fn inv_squared(stem: &str, range: impl IntoIterator<Item = usize>) -> AlphabetSpec {
    AlphabetSpec::indexed(stem, range, Convention::InverseSquared)
}

/// `∏ stem_l^e` over `range`.
fn power_product(stem: &str, range: impl IntoIterator<Item = usize>, e: i32) -> MultiPoly {
    let fs: Vec<(Var, i32)> = range.into_iter().map(|l| (Var::indexed(stem, l), e)).collect();
    MultiPoly::monomial(Rational::one(), &fs)
}

fn skew_shapes_in(n: usize, m: u32) -> Vec<SkewShape> {
    let all = partitions_in_box(n, m);
    let mut out = Vec::new();
    for outer in &all {
        for inner in &all {
            if outer.contains(inner) {
                out.push(SkewShape::new(outer.clone(), inner.clone()).unwrap());
            }
        }
    }
    out
}

#[test]
fn jacobi_trudi_matches_tableau_sum() {
    for letters in 0..=3 {
        let a = AlphabetSpec::indexed("u", 1..=letters, Convention::Plain);
        for s in skew_shapes_in(3, 3) {
            assert_eq!(
                schur(&s, &a, SchurMethod::JacobiTrudi),
                schur(&s, &a, SchurMethod::TableauSum),
                "{s} in {letters} letters"
            );
        }
    }
}

#[test]
fn zeta_under_miwa_is_h() {
    for n in 0..=3 {
        let (x, y) = miwa_map(&squared("u", 1..=n), &inv_squared("v", 1..=n), 6);
        for k in 0..=6 {
            assert_eq!(zeta(k, &x), hk(k, &squared("u", 1..=n)), "k={k} N={n}");
            assert_eq!(zeta(k, &y.neg()), hk(k, &inv_squared("v", 1..=n)), "k={k} N={n}");
        }
    }
}

#[test]
fn char_poly_under_miwa_is_schur() {
    for n in 1..=3 {
        let (x, y) = miwa_map(&squared("u", 1..=n), &inv_squared("v", 1..=n), 9);
        for lambda in partitions_in_box(n, 3) {
            let s = SkewShape::straight(lambda.clone());
            assert_eq!(char_poly(&lambda, &x, n).unwrap(), schur(&s, &squared("u", 1..=n), SchurMethod::JacobiTrudi));
            assert_eq!(
                char_poly(&lambda, &y.neg(), n).unwrap(),
                schur(&s, &inv_squared("v", 1..=n), SchurMethod::TableauSum)
            );
        }
    }
    let (x, _) = miwa_map(&squared("u", 1..=3), &inv_squared("v", 1..=3), 5);
    let lambda: Partition = "3,1,1".parse().unwrap();
    assert_eq!(
        char_poly(&lambda, &x, 3).unwrap(),
        schur(&SkewShape::straight(lambda), &squared("u", 1..=3), SchurMethod::TableauSum)
    );
}

#[test]
fn h_difference_identity() {
    let (a, b) = (Var::from("v1"), Var::from("v9"));
    for p in -1..=6 {
        for base in 0..=2 {
            assert!(hk_identity_check(p, &squared("v", 2..2 + base), &a, &b), "p={p} base={base}");
        }
    }
}

#[test]
fn derivatives_strip_rows_and_columns() {
    let len = 6;
    let x = TimeVector::symbolic("x", len);
    let y = TimeVector::symbolic("y", len);
    let xv: Vec<Var> = (1..=len).map(|k| Var::indexed("x", k)).collect();
    let yv: Vec<Var> = (1..=len).map(|k| Var::indexed("y", k)).collect();
    for lambda in partitions_in_box(2, 2) {
        let rows = 2;
        let chi_y = char_poly(&lambda, &y.neg(), rows).unwrap();
        let chi_x = char_poly(&lambda, &x, rows).unwrap();
        for j in 0..=2u32 {
            let row_j = Partition::row(j);
            let col_j = Partition::column(j as usize);
            let lhs = zeta_of_derivatives(j as usize, -1, &yv, &chi_y).unwrap();
            let rhs = if lambda.contains(&row_j) {
                skew_char_poly(&SkewShape::new(lambda.clone(), row_j).unwrap(), &y.neg(), rows).unwrap()
            } else {
                MultiPoly::zero()
            };
            assert_eq!(lhs, rhs, "row strip {lambda} j={j}");

            let lhs = zeta_of_derivatives(j as usize, -1, &xv, &chi_x).unwrap();
            let rhs = if lambda.contains(&col_j) {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                skew_char_poly(&SkewShape::new(lambda.clone(), col_j).unwrap(), &x, rows)
                    .unwrap()
                    .scale(&Rational::from_int(sign))
            } else {
                MultiPoly::zero()
            };
            assert_eq!(lhs, rhs, "column strip {lambda} j={j}");
        }
    }
}

#[test]
fn weighted_sums_match_closed_forms() {
    for n in 0..=3usize {
        for m in 0..=3u32 {
            let u = squared("u", 1..=n);
            let v = inv_squared("v", 1..=n);
            for lambda in partitions_in_box(n, m) {
                let s = SkewShape::straight(lambda.clone());
                let f = weighted_sum_f(&lambda, n, m, Picture::Tableaux).unwrap();
                assert_eq!(&f * &power_product("u", 1..=n, m as i32), schur(&s, &u, SchurMethod::JacobiTrudi));
                let g = weighted_sum_g(&lambda, n, m, Picture::Paths).unwrap();
                assert_eq!(g, &power_product("v", 1..=n, m as i32) * &schur(&s, &v, SchurMethod::JacobiTrudi));

                for k in 0..=m {
                    if psi1_admissible(k, &lambda, n, m) {
                        let got = weighted_sum_psi1(k, &lambda, n, m, Picture::PlanePartitions).unwrap();
                        let sk = SkewShape::new(lambda.clone(), Partition::row(k)).unwrap();
                        let want = &power_product("v", 2..=n, m as i32)
                            * &schur(&sk, &inv_squared("v", 2..=n), SchurMethod::JacobiTrudi);
                        assert_eq!(got, want, "psi1 k={k} {lambda} N={n} M={m}");
                    }
                }
                for k in 0..=n {
                    if psi2_admissible(k, &lambda, n, m) {
                        let got = weighted_sum_psi2(k, &lambda, n, m, Picture::Paths).unwrap();
                        let sk = SkewShape::new(lambda.clone(), Partition::column(k)).unwrap();
                        let want = &power_product("u", 1..=n - k, -(m as i32))
                            * &schur(&sk, &squared("u", 1..=n - k), SchurMethod::JacobiTrudi);
                        assert_eq!(got, want, "psi2 k={k} {lambda} N={n} M={m}");
                    }
                }
            }
        }
    }
}

/// The ψ1 coefficients reassemble g once each row `k` is weighted by
/// `v_1^{M-2k}`.
#[test]
fn psi1_rows_reassemble_g() {
    for n in 1..=3usize {
        for m in 0..=3u32 {
            for lambda in partitions_in_box(n, m) {
                let mut total = MultiPoly::zero();
                for k in 0..=m {
                    if psi1_admissible(k, &lambda, n, m) {
                        let c = weighted_sum_psi1(k, &lambda, n, m, Picture::Tableaux).unwrap();
                        total = &total + &c.mul_var_pow(&Var::indexed("v", 1), m as i32 - 2 * k as i32);
                    }
                }
                assert_eq!(total, weighted_sum_g(&lambda, n, m, Picture::Tableaux).unwrap());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn zeta_is_additive_in_time(a in prop::collection::vec(-5i64..=5, 4), b in prop::collection::vec(-5i64..=5, 4), k in 0i64..6) {
        // exp(Σ z^j (a_j + b_j)) = exp(Σ z^j a_j) exp(Σ z^j b_j)
        let ta = TimeVector::from_rationals(&a.iter().map(|&v| Rational::from_int(v)).collect::<Vec<_>>());
        let tb = TimeVector::from_rationals(&b.iter().map(|&v| Rational::from_int(v)).collect::<Vec<_>>());
        let lhs = zeta(k, &ta.add(&tb));
        let rhs: MultiPoly = (0..=k).map(|i| &zeta(i, &ta) * &zeta(k - i, &tb)).sum();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_methods_agree_on_random_shapes(parts in prop::collection::vec(0u32..=3, 3), inner in prop::collection::vec(0u32..=3, 3), letters in 1usize..=3) {
        let mut o = parts.clone();
        o.sort_unstable_by(|a, b| b.cmp(a));
        let mut i: Vec<u32> = inner.iter().zip(&o).map(|(a, b)| *a.min(b)).collect();
        i.sort_unstable_by(|a, b| b.cmp(a));
        let i: Vec<u32> = i.iter().zip(&o).map(|(a, b)| *a.min(b)).collect();
        let s = SkewShape::new(Partition::new(o).unwrap(), Partition::new(i).unwrap()).unwrap();
        let a = AlphabetSpec::indexed("u", 1..=letters, Convention::Squared);
        prop_assert_eq!(schur(&s, &a, SchurMethod::JacobiTrudi), schur(&s, &a, SchurMethod::TableauSum));
    }
}
