mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use hardknots::invariants::{bracket_frontier, bracket_state_sum, fingerprint};
use hardknots::moves::{apply_move, find_sites, validate};
use hardknots::search::{classify_hardness, nonincreasing_closure, SearchBudget};
use hardknots::{Dart, Diagram, LinkCatalog, MoveKinds, MoveSite, Symmetry};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn assert_euler(d: &Diagram) {
    if d.is_connected() && d.crossing_count() > 0 {
        let n = d.crossing_count();
        assert_eq!(d.face_count(), n + 2, "{}", d.emit_pd());
        assert_eq!(d.edge_count(), 2 * n);
        assert_eq!(d.faces().iter().map(|f| f.degree()).sum::<usize>(), 4 * n);
    }
}

fn face_degree(d: &Diagram, corner: Dart) -> (usize, usize) {
    let (ids, _) = d.face_ids();
    let id = ids[corner.index()];
    (id, ids.iter().filter(|&&f| f == id).count())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_law(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 10);
        assert_euler(&d);
    }

    #[test]
    fn canonical_code_ignores_relabeling(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 8);
        let n = d.crossing_count();
        let code = d.canonical_code(Symmetry::Oriented);
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut r);
            let shift: Vec<usize> = (0..n).map(|_| r.random_range(0..2)).collect();
            prop_assert_eq!(&d.relabel(&perm, &shift).canonical_code(Symmetry::Oriented), &code);
        }
    }

    #[test]
    fn connected_sum_merges_faces_pairwise(seed in any::<u64>(), twist in any::<bool>()) {
        let mut r = rng(seed);
        let d1 = random_diagram(&mut r, 5);
        let d2 = random_diagram(&mut r, 5);
        let a = Dart::new(r.random_range(0..d1.crossing_count()), r.random_range(0..4));
        let b = Dart::new(r.random_range(0..d2.crossing_count()), r.random_range(0..4));
        let (fa, da) = face_degree(&d1, a);
        let (fa2, da2) = face_degree(&d1, d1.partner(a));
        let (fb, db) = face_degree(&d2, b);
        let (fb2, db2) = face_degree(&d2, d2.partner(b));
        // An edge with one face on both sides (a nugatory crossing) merges
        // differently; those are covered by the unit tests.
        prop_assume!(fa != fa2 && fb != fb2);

        let s = d1.connected_sum(a, &d2, b, twist).unwrap();
        assert_euler(&s);
        let degrees = |d: &Diagram, skip: [usize; 2]| -> Vec<usize> {
            let (ids, k) = d.face_ids();
            (0..k)
                .filter(|f| !skip.contains(f))
                .map(|f| ids.iter().filter(|&&x| x == f).count())
                .collect()
        };
        let mut expected = degrees(&d1, [fa, fa2]);
        expected.extend(degrees(&d2, [fb, fb2]));
        if twist {
            expected.extend([da + db2, da2 + db]);
        } else {
            expected.extend([da + db, da2 + db2]);
        }
        expected.sort_unstable();
        let mut got: Vec<usize> = s.faces().iter().map(|f| f.degree()).collect();
        got.sort_unstable();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn mirrors_keep_alternation_and_fingerprint(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 8);
        prop_assert_eq!(d.mirror().is_alternating(), d.is_alternating());
        prop_assert_eq!(d.switch_all().is_alternating(), d.is_alternating());
        prop_assert_eq!(fingerprint(&d.mirror()).unwrap(), fingerprint(&d).unwrap());
    }

    #[test]
    fn located_sites_apply_as_advertised(seed in any::<u64>()) {
        let mut r = rng(seed);
        let d = random_diagram(&mut r, 7);
        let fp = fingerprint(&d).unwrap();
        let mut sites = find_sites(&d, MoveKinds::all());
        sites.shuffle(&mut r);
        for site in sites.iter().take(12) {
            prop_assert!(validate(&d, site).is_ok());
            let next = apply_move(&d, site).unwrap();
            assert_euler(&next);
            let delta = next.crossing_count() as i32 - d.crossing_count() as i32;
            prop_assert_eq!(delta, site.delta());
            prop_assert_eq!(next.components(), d.components());
            if let MoveSite::R3 { corners } = *site {
                prop_assert!(triangle_admits_r3(&d, corners));
                prop_assert_eq!(next.face_count(), d.face_count());
            }
            prop_assert_eq!(fingerprint(&next).unwrap(), fp.clone());
        }
    }

    #[test]
    fn bracket_evaluators_agree(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 10);
        let b = bracket_state_sum(&d).unwrap();
        prop_assert_eq!(&b, &hardknots::invariants::bracket_skein(&d));
        prop_assert_eq!(&b, &bracket_frontier(&d).unwrap());
        prop_assert!(b.terms().all(|(_, c)| c != 0));
    }

    #[test]
    fn jones_survives_move_sequences(seed in any::<u64>()) {
        let mut r = rng(seed);
        let mut d = random_diagram(&mut r, 6);
        let start = jones_all_orientations(&d);
        for _ in 0..6 {
            let Some((_, next)) = random_move(&mut r, &d, 9) else { break };
            d = next;
            prop_assert_eq!(&jones_all_orientations(&d), &start);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn closure_is_monotone_and_keeps_the_link(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 7);
        let budget = SearchBudget { max_states: 5_000, ..SearchBudget::default() };
        let c = nonincreasing_closure(&d, &budget);
        prop_assert!(c.min_crossings <= d.crossing_count());
        let fp = fingerprint(&d).unwrap();
        for m in &c.members {
            prop_assert!(m.crossing_count() <= d.crossing_count());
            prop_assert_eq!(&fingerprint(m).unwrap(), &fp);
        }
    }

    #[test]
    fn hardness_report_flags_are_consistent(seed in any::<u64>()) {
        let d = random_diagram(&mut rng(seed), 9);
        let cat = LinkCatalog::bundled();
        let r = classify_hardness(&d, &cat, &SearchBudget::default()).unwrap();
        let sites = find_sites(&d, MoveKinds::R3).len();
        prop_assert_eq!(r.omega3_sites, sites);
        if r.is_rigid {
            prop_assert!(r.is_hard && sites == 0);
        }
        if r.is_shaky {
            prop_assert!(r.is_hard && sites > 0);
        }
        if r.is_hard {
            let c = r.identified.as_ref().unwrap().crossing_number;
            prop_assert!(r.is_reduced && d.crossing_count() > c && r.min_crossings_reached > c);
            prop_assert!(!r.is_alternating);
        }
    }
}
