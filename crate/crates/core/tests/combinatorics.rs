use phase_toda::combinatorics::*;
use proptest::prelude::*;

fn universes() -> impl Iterator<Item = (usize, u32)> {
    (0..=3).flat_map(|n| (0..=3).map(move |m| (n, m)))
}

#[test]
fn box_counts() {
    for (n, m) in universes() {
        assert_eq!(partitions_in_box(n, m).len() as u64, box_count(n, m));
        let pps = enumerate_plane_partitions(n, m).count();
        assert_eq!(macmahon_count(n, m), pps.into(), "N={n} M={m}");
    }
}

#[test]
fn paths_and_plane_partitions_biject() {
    for (n, m) in universes() {
        let paths = enumerate_path_configs(n, m, &PathConstraint::None);
        let pps: Vec<PlanePartitionBox> = enumerate_plane_partitions(n, m).collect();
        assert_eq!(paths.len(), pps.len(), "N={n} M={m}");
        for c in &paths {
            let pp = c.to_plane_partition();
            assert_eq!(&LatticePathConfig::from_plane_partition(&pp).unwrap(), c);
        }
        for pp in &pps {
            let c = LatticePathConfig::from_plane_partition(pp).unwrap();
            assert_eq!(&c.to_plane_partition(), pp);
            assert_eq!(c.middle(), pp.diagonal());
        }
    }
}

#[test]
fn weights_agree_across_pictures() {
    for (n, m) in universes() {
        for c in enumerate_path_configs(n, m, &PathConstraint::None) {
            let pp = c.to_plane_partition();
            let lower = pp.half(Half::Lower);
            let upper = pp.half(Half::Upper);
            let from_pp: Vec<i32> = lower.column_exponents().into_iter().chain(upper.column_exponents()).collect();
            assert_eq!(c.column_exponents(), from_pp, "{c}");

            let tplus = lower.to_tableau().weight(n as u32);
            let tminus = upper.to_tableau().weight(n as u32);
            let from_tab: Vec<i32> = tplus
                .iter()
                .map(|&t| m as i32 - 2 * t as i32)
                .chain(tminus.iter().map(|&t| 2 * t as i32 - m as i32))
                .collect();
            assert_eq!(from_pp, from_tab, "{pp}");

            let halves: Vec<i32> =
                c.half(Side::Left).column_exponents().into_iter().chain(c.half(Side::Right).column_exponents()).collect();
            assert_eq!(halves, from_pp);
        }
    }
}

#[test]
fn halves_and_tableaux_biject() {
    for (n, m) in universes() {
        for lambda in partitions_in_box(n, m) {
            let shape = SkewShape::straight(lambda.clone());
            for (half, order) in [(Half::Upper, Order::Descending), (Half::Lower, Order::Ascending)] {
                let hs = enumerate_half(half, &lambda, n, m, &[]).unwrap();
                let ts: Vec<Tableau> = enumerate_tableaux(&shape, n as u32, order).collect();
                assert_eq!(hs.len(), ts.len(), "{lambda} N={n} M={m} {half:?}");
                for h in &hs {
                    let t = h.to_tableau();
                    assert_eq!(t.order(), order);
                    assert_eq!(&HalfPlanePartition::from_tableau(&t, n, m).unwrap(), h);
                }
                for t in &ts {
                    let h = HalfPlanePartition::from_tableau(t, n, m).unwrap();
                    assert_eq!(&h.to_tableau(), t);
                }
            }
        }
    }
}

fn agree(f: impl Fn(Picture) -> phase_toda::algebra::MultiPoly) {
    let v: Vec<_> = Picture::ALL.iter().map(|&p| f(p)).collect();
    assert_eq!(v[0], v[1]);
    assert_eq!(v[1], v[2]);
}

#[test]
fn three_pictures_give_one_weighted_sum() {
    for (n, m) in universes() {
        for lambda in partitions_in_box(n, m) {
            agree(|p| weighted_sum_f(&lambda, n, m, p).unwrap());
            agree(|p| weighted_sum_g(&lambda, n, m, p).unwrap());
            for k in 0..=m {
                if psi1_admissible(k, &lambda, n, m) {
                    agree(|p| weighted_sum_psi1(k, &lambda, n, m, p).unwrap());
                } else {
                    assert!(weighted_sum_psi1(k, &lambda, n, m, Picture::Tableaux).is_err());
                }
            }
            for k in 0..=n {
                if psi2_admissible(k, &lambda, n, m) {
                    agree(|p| weighted_sum_psi2(k, &lambda, n, m, p).unwrap());
                }
            }
        }
    }
}

#[test]
fn psi2_without_constraint_is_f() {
    for (n, m) in universes() {
        for lambda in partitions_in_box(n, m) {
            assert_eq!(
                weighted_sum_psi2(0, &lambda, n, m, Picture::Paths).unwrap(),
                weighted_sum_f(&lambda, n, m, Picture::Paths).unwrap()
            );
        }
    }
}

fn plane_partition() -> impl Strategy<Value = PlanePartitionBox> {
    (1usize..=4, 0u32..=4).prop_flat_map(|(n, m)| {
        prop::collection::vec(0..=m, n * n).prop_map(move |raw| {
            let mut rows = vec![vec![0u32; n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut v = raw[i * n + j];
                    if i > 0 {
                        v = v.min(rows[i - 1][j]);
                    }
                    if j > 0 {
                        v = v.min(rows[i][j - 1]);
                    }
                    rows[i][j] = v;
                }
            }
            PlanePartitionBox::new(n, m, rows).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn random_plane_partitions_round_trip(pp in plane_partition()) {
        let c = LatticePathConfig::from_plane_partition(&pp).unwrap();
        prop_assert_eq!(&c.to_plane_partition(), &pp);
        for half in [Half::Upper, Half::Lower] {
            let h = pp.half(half);
            prop_assert_eq!(&HalfPlanePartition::from_tableau(&h.to_tableau(), pp.n(), pp.m()).unwrap(), &h);
        }
        let glued = PlanePartitionBox::from_halves(&pp.half(Half::Upper), &pp.half(Half::Lower)).unwrap();
        prop_assert_eq!(glued, pp);
    }

    #[test]
    fn occupation_round_trip(n in 0usize..5, m in 0u32..5, seed in any::<u64>()) {
        let all = partitions_in_box(n, m);
        let lambda = &all[(seed % all.len() as u64) as usize];
        let o = OccupationSequence::from_partition(lambda, n, m).unwrap();
        prop_assert_eq!(o.total() as usize, n);
        prop_assert_eq!(&o.to_partition(), lambda);
    }
}
