mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use weylns::base_change::{pullback_local, RamificationProfile};
use weylns::lattice::{reflect, FibralSpace};
use weylns::lift::lift_word;
use weylns::ns::{
    build_ns, classify_isometry, fibral_bound, pullback_ns, sample_isometry, Classification,
    NsLattice, SectionData, SurfaceConfig,
};
use weylns::weyl::WeylWord;
use weylns::{IntMatrix, Record, Report};

fn word(max_n: usize) -> impl Strategy<Value = (usize, Vec<usize>)> {
    (3..=max_n).prop_flat_map(|n| (Just(n), prop::collection::vec(0..n, 0..12)))
}

fn z3() -> NsLattice {
    let mut c = SurfaceConfig::with_fibers(&[3, 9]);
    c.sections = vec![
        SectionData::new("P").component("t1", 3).torsion(3).pairing("O", 0),
        SectionData::new("P2").component("t1", 6).torsion(3).pairing("O", 0),
    ];
    build_ns(&c).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn word_matrix_preserves_form_and_fiber((n, letters) in word(8)) {
        let space = FibralSpace::new(n).unwrap();
        let m = WeylWord::new(space, letters).unwrap().matrix();
        let g: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| space.gram(i, j)).collect()).collect();
        prop_assert!(m.preserves_form(&IntMatrix::try_from(g).unwrap()));
        prop_assert_eq!(m.apply(&vec![1; n]), vec![1; n]);
    }

    #[test]
    fn reflection_is_involutive_isometry(n in 3usize..9, a in prop::collection::vec(-5i64..=5, 9), i in 0usize..9) {
        let space = FibralSpace::new(n).unwrap();
        let root = space.basis((i % n) as i64);
        let v = space.vector(a[..n].to_vec()).unwrap();
        let once = reflect(&root, &v).unwrap();
        prop_assert_eq!(once.square(), v.square());
        prop_assert_eq!(reflect(&root, &once).unwrap(), v);
    }

    #[test]
    fn permutation_is_homomorphism((n, a) in word(8), b in prop::collection::vec(0usize..3, 0..8)) {
        let space = FibralSpace::new(n).unwrap();
        let w1 = WeylWord::new(space, a).unwrap();
        let w2 = WeylWord::new(space, b).unwrap();
        let joint = w1.concat(&w2).unwrap().to_permutation();
        prop_assert_eq!(joint, w1.to_permutation().compose(&w2.to_permutation()));
    }

    #[test]
    fn lift_is_homomorphism((n, a) in word(6), b in prop::collection::vec(0usize..3, 0..6), e in 1usize..4) {
        let space = FibralSpace::new(n).unwrap();
        let w1 = WeylWord::new(space, a).unwrap();
        let w2 = WeylWord::new(space, b).unwrap();
        let joint = lift_word(e, &w1.concat(&w2).unwrap()).unwrap().matrix();
        let split = lift_word(e, &w1).unwrap().matrix().mul(&lift_word(e, &w2).unwrap().matrix());
        prop_assert_eq!(joint, split);
    }

    #[test]
    fn lift_intertwines_words((n, letters) in word(6), e in 1usize..4, a in prop::collection::vec(-4i64..=4, 6)) {
        let space = FibralSpace::new(n).unwrap();
        let w = WeylWord::new(space, letters).unwrap();
        let v = space.vector(a[..n].to_vec()).unwrap();
        let lhs = lift_word(e, &w).unwrap().act(&pullback_local(e as i64, &v).unwrap()).unwrap();
        let rhs = pullback_local(e as i64, &w.act(&v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn pullback_scales_form(n in 3usize..9, e in 1usize..5, a in prop::collection::vec(-9i64..=9, 8), b in prop::collection::vec(-9i64..=9, 8)) {
        let (x, y) = (&a[..n], &b[..n]);
        let lhs = common::pair(&common::pullback(e, x), &common::pullback(e, y));
        prop_assert_eq!(lhs, e as i64 * common::pair(x, y));
        let space = FibralSpace::new(n).unwrap();
        let lib = pullback_local(e as i64, &space.vector(x.to_vec()).unwrap()).unwrap();
        prop_assert_eq!(lib.coeffs().to_vec(), common::pullback(e, x));
    }

    #[test]
    fn fibral_bound_is_nonpositive(n in 3usize..10, a in prop::collection::vec(-30i64..=30, 9), j in 0usize..9) {
        let mut a = a[..n].to_vec();
        a[0] = 0;
        let got = fibral_bound(n, &a, j % n).unwrap();
        prop_assert!(got <= 0);
        prop_assert_eq!(got, common::fibral_bound(&a, j % n));
    }

    #[test]
    fn classify_round_trip(seed in any::<u64>()) {
        let l = z3();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iso = sample_isometry(&l, &mut rng, 10);
        let m = iso.matrix(&l).unwrap();
        match classify_isometry(&l, &m).unwrap() {
            Classification::Universal { iso: got, .. } => {
                prop_assert_eq!(got.matrix(&l).unwrap(), m);
                prop_assert!(got.equivalent(&iso, &l).unwrap());
            }
            Classification::NotUniversal { reason } => prop_assert!(false, "{}", reason),
        }
    }

    #[test]
    fn divisor_literal_round_trip(coeffs in prop::collection::vec(-6i64..=6, 14)) {
        let l = z3();
        let d = l.divisor(coeffs[..l.dim()].to_vec()).unwrap();
        let text = l.render(&d);
        prop_assert_eq!(l.parse_divisor(&text).unwrap(), d);
    }

    #[test]
    fn report_json_round_trip(values in prop::collection::vec((0i64..20, any::<bool>()), 0..20)) {
        let report = Report::from_records(values.iter().map(|&(n, ok)| {
            let mut r = Record::new("prop", &[("n", n)], None);
            if !ok {
                r = Record::new("prop", &[("n", n)], Some(weylns::report::Counterexample {
                    witness: format!("n={n}"),
                    expected: vec![0],
                    actual: vec![n],
                }));
            }
            r
        }));
        let back: Report = serde_json::from_str(&report.to_json()).unwrap();
        prop_assert_eq!(back, report);
    }

    #[test]
    fn act_commutes_with_pullback(seed in any::<u64>(), pick in 0usize..4) {
        let base = z3();
        let lit = ["t0:[2]", "t0:[1,1]", "t0:[2,1]", "t0:[2];t1:[1,1]"][pick];
        let profile = RamificationProfile::parse(lit).unwrap();
        let pb = pullback_ns(&base, &profile).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iso = sample_isometry(&base, &mut rng, 6);
        let down = iso.matrix(&base).unwrap();
        let up = iso.pulled_back(&base, &pb).unwrap().matrix(&pb.lattice).unwrap();
        prop_assert_eq!(pb.map.mul(&down), up.mul(&pb.map));
    }
}
