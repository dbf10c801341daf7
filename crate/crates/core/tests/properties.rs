use fiberlink::diagram::random_move;
use fiberlink::invariants::{hopf_invariant, linking_matrix, seifert};
use fiberlink::obstruction::{framing_change_delta, obstruction_vector, parity_identity_check, ParityCheck};
use fiberlink::realizability::{
    hp_submersion_check, realize_singular, split_possible, witness_singular, Target, Verdict,
};
use fiberlink::{parse_diagram, parse_document, ComponentId, FramedLink, LinkDiagram};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEEDS: &[&str] = &[
    "U 1",
    "X 1 3 2 4\nX 3 1 4 2",
    "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3",
    "X 4 2 5 1\nX 8 6 1 5\nX 6 3 7 4\nX 2 7 3 8",
    "U 1\nU 2",
];

fn seed(i: usize) -> LinkDiagram {
    parse_diagram(SEEDS[i % SEEDS.len()]).unwrap()
}

/// A seed diagram, optionally with a second seed split off beside it, then
/// scrambled by random Reidemeister moves.
fn scrambled(a: usize, b: Option<usize>, moves: usize, rng_seed: u64) -> LinkDiagram {
    let mut d = seed(a);
    if let Some(b) = b {
        d = d.disjoint_union(&seed(b));
    }
    scramble(d, moves, rng_seed)
}

fn scramble(mut d: LinkDiagram, moves: usize, rng_seed: u64) -> LinkDiagram {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    for _ in 0..moves {
        if let Some(m) = random_move(&d, &mut rng, 40) {
            d = d.apply_reidemeister(m).unwrap();
        }
    }
    d
}

fn off_diagonal(d: &LinkDiagram) -> Vec<Vec<i64>> {
    let mut rows = linking_matrix(d).rows();
    for (i, r) in rows.iter_mut().enumerate() {
        r[i] = 0;
    }
    rows
}

/// Linking numbers counted from crossings where `i` passes over `j` only.
fn over_count_lk(d: &LinkDiagram, i: ComponentId, j: ComponentId) -> i64 {
    (0..d.crossing_count())
        .filter(|&k| d.over_component(k) == i && d.under_component(k) == j)
        .map(|k| d.crossings()[k].sign().value())
        .sum()
}

/// Framings with Hopf invariant zero: all free except the first, which
/// absorbs the rest.
fn null_cobordant(d: LinkDiagram, free: &[i64]) -> FramedLink {
    let n = d.component_count();
    let lk = linking_matrix(&d);
    let mut framings: Vec<i64> = (0..n).map(|i| free.get(i).copied().unwrap_or(0)).collect();
    let pairs: i64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| i != j)
        .map(|(i, j)| lk.get(ComponentId::from_index(i), ComponentId::from_index(j)))
        .sum();
    framings[0] = -(framings[1..].iter().sum::<i64>() + pairs);
    let fl = FramedLink::new(d, framings).unwrap();
    assert_eq!(hopf_invariant(&fl), 0);
    fl
}

fn diagram_params() -> impl Strategy<Value = (usize, Option<usize>, usize, u64)> {
    (
        0..SEEDS.len(),
        proptest::option::of(0..SEEDS.len()),
        0usize..30,
        any::<u64>(),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn text_round_trip((a, b, n, s) in diagram_params()) {
        let d = scrambled(a, b, n, s);
        prop_assert!(d.validate().is_empty());
        prop_assert_eq!(parse_diagram(&d.to_string()).unwrap(), d.clone());
        prop_assert_eq!(LinkDiagram::from_pd(&d.to_pd()).unwrap(), d);
    }

    #[test]
    fn linking_numbers_survive_moves((a, b, n, s) in diagram_params()) {
        let start = scrambled(a, b, 0, s);
        let d = scrambled(a, b, n, s);
        prop_assert_eq!(off_diagonal(&start), off_diagonal(&d));
        let lk = linking_matrix(&d);
        prop_assert!(lk.is_symmetric());
        for i in d.component_ids() {
            for j in d.component_ids() {
                if i != j {
                    prop_assert_eq!(lk.get(i, j), over_count_lk(&d, i, j));
                }
            }
        }
    }

    #[test]
    fn single_moves_change_self_writhe_only_by_kinks((a, b, n, s) in diagram_params(), step in any::<u64>()) {
        let d = scrambled(a, b, n, s);
        let mut rng = ChaCha8Rng::seed_from_u64(step);
        if let Some(m) = random_move(&d, &mut rng, 40) {
            let e = d.apply_reidemeister(m).unwrap();
            let (before, after) = (linking_matrix(&d), linking_matrix(&e));
            let diffs: Vec<i64> = d.component_ids().map(|c| after.self_writhe(c) - before.self_writhe(c)).collect();
            match m {
                fiberlink::diagram::Move::R1Add { sign, .. } => {
                    prop_assert_eq!(diffs.iter().sum::<i64>(), sign.value());
                    prop_assert_eq!(diffs.iter().filter(|&&x| x != 0).count(), 1);
                }
                fiberlink::diagram::Move::R1Remove { .. } => {
                    prop_assert_eq!(diffs.iter().map(|x| x.abs()).sum::<i64>(), 1);
                }
                _ => prop_assert!(diffs.iter().all(|&x| x == 0)),
            }
        }
    }

    #[test]
    fn reversal_negates_a_row((a, b, n, s) in diagram_params(), pick in any::<usize>(), free in proptest::collection::vec(-4i64..5, 4)) {
        let d = scrambled(a, b, n, s);
        let c = ComponentId::from_index(pick % d.component_count());
        let r = d.reverse_component(c).unwrap();
        let (lk, lr) = (linking_matrix(&d), linking_matrix(&r));
        for i in d.component_ids() {
            for j in d.component_ids() {
                let expected = if i != j && (i == c || j == c) { -lk.get(i, j) } else { lk.get(i, j) };
                prop_assert_eq!(lr.get(i, j), expected);
            }
        }
        let framings: Vec<i64> = (0..d.component_count()).map(|i| free[i % free.len()]).collect();
        let fd = FramedLink::new(d.clone(), framings.clone()).unwrap();
        let fr = FramedLink::new(r, framings).unwrap();
        let row = lk.off_diagonal_row_sum(c);
        prop_assert_eq!(hopf_invariant(&fr) - hopf_invariant(&fd), -4 * row);
    }

    #[test]
    fn seifert_parity((a, b, n, s) in diagram_params()) {
        let d = scrambled(a, b, n, s);
        let sd = seifert(&d);
        prop_assert_eq!((sd.circle_count as i64 - sd.crossing_count as i64).rem_euclid(2), (d.component_count() % 2) as i64);
        prop_assert_eq!(sd.euler_characteristic, sd.circle_count as i64 - sd.crossing_count as i64);
    }

    #[test]
    fn split_unions_add((a, n, s) in (0..SEEDS.len(), 0usize..20, any::<u64>()), (b, m, t) in (0..SEEDS.len(), 0usize..20, any::<u64>())) {
        let (x, y) = (scrambled(a, None, n, s), scrambled(b, None, m, t));
        let u = x.disjoint_union(&y);
        prop_assert_eq!(u.component_count(), x.component_count() + y.component_count());
        prop_assert_eq!(seifert(&u).circle_count, seifert(&x).circle_count + seifert(&y).circle_count);
        let (lx, ly, lu) = (linking_matrix(&x), linking_matrix(&y), linking_matrix(&u));
        let nx = x.component_count();
        for i in u.component_ids() {
            for j in u.component_ids() {
                let (ii, jj) = (i.index(), j.index());
                let expected = match (ii < nx, jj < nx) {
                    (true, true) => lx.get(i, j),
                    (false, false) => ly.get(ComponentId::from_index(ii - nx), ComponentId::from_index(jj - nx)),
                    _ => 0,
                };
                prop_assert_eq!(lu.get(i, j), expected);
            }
        }
        let fx = FramedLink::new(x.clone(), vec![1; x.component_count()]).unwrap();
        let fy = FramedLink::new(y.clone(), vec![-2; y.component_count()]).unwrap();
        let mut f = vec![1; x.component_count()];
        f.extend(vec![-2; y.component_count()]);
        let fu = FramedLink::new(u, f).unwrap();
        prop_assert_eq!(hopf_invariant(&fu), hopf_invariant(&fx) + hopf_invariant(&fy));
    }

    #[test]
    fn obstruction_survives_moves((a, b, n, s) in diagram_params(), free in proptest::collection::vec(-5i64..6, 4)) {
        let start = scrambled(a, b, 0, s);
        let fl = null_cobordant(start, &free);
        let moved = fl.with_diagram(scrambled(a, b, n, s)).unwrap();
        prop_assert_eq!(obstruction_vector(&fl), obstruction_vector(&moved));
        prop_assert_eq!(hopf_invariant(&moved), 0);
        prop_assert_eq!(parity_identity_check(&moved), ParityCheck::Holds);
    }

    #[test]
    fn even_reframing_is_invisible((a, b, n, s) in diagram_params(), k in -6i64..7, pick in any::<usize>()) {
        let d = scrambled(a, b, n, s);
        let fl = FramedLink::new(d.clone(), vec![0; d.component_count()]).unwrap();
        let c = ComponentId::from_index(pick % d.component_count());
        let f = fl.framing(c).unwrap();
        let change = framing_change_delta(&fl, c, f + 2 * k).unwrap();
        prop_assert_eq!(change.delta, 0);
        prop_assert_eq!(change.obstruction, obstruction_vector(&fl));
        let odd = framing_change_delta(&fl, c, f + 2 * k + 1).unwrap();
        prop_assert_eq!(odd.delta, 1);
    }

    #[test]
    fn witnesses_are_realizable((a, b, n, s) in diagram_params(), free in proptest::collection::vec(-5i64..6, 4)) {
        let fl = null_cobordant(scrambled(a, b, n, s), &free);
        let w = witness_singular(&fl).unwrap();
        prop_assert_eq!(w.link.meridians.clone(), obstruction_vector(&fl).support());
        let report = realize_singular(&w.scene, Target::Plane).unwrap();
        prop_assert_eq!(report.verdict, Verdict::Realizable);
        prop_assert_eq!(w.scene.fiber().unwrap(), fl.clone());
        let text = w.scene.to_document().to_text();
        let back = fiberlink::LabeledScene::from_document(&parse_document(&text).unwrap()).unwrap();
        prop_assert_eq!(back, w.scene);
    }

    #[test]
    fn odd_fibers_never_split((a, b, n, s) in diagram_params(), free in proptest::collection::vec(-5i64..6, 4)) {
        let fl = null_cobordant(scrambled(a, b, n, s), &free);
        let decision = split_possible(&fl, Target::Plane);
        if fl.component_count() % 2 == 1 {
            prop_assert!(!decision.possible);
        }
        prop_assert_eq!(decision.possible, obstruction_vector(&fl).is_zero());
    }

    #[test]
    fn submersion_criterion_is_orientation_and_mirror_blind((a, b, n, s) in diagram_params(), pick in any::<usize>()) {
        let d = scrambled(a, b, n, s);
        let verdict = hp_submersion_check(&d).verdict;
        let c = ComponentId::from_index(pick % d.component_count());
        prop_assert_eq!(hp_submersion_check(&d.reverse_component(c).unwrap()).verdict, verdict);
        prop_assert_eq!(hp_submersion_check(&d.mirror()).verdict, verdict);
    }
}

#[test]
fn kinks_do_not_change_the_obstruction() {
    // Two positive kinks on an unknot: blackboard framing 2, self-writhe 2,
    // so the vertical twisting vanishes while two projection crossings
    // remain.
    let u = LinkDiagram::unlink(1);
    let mut d = u.clone();
    for _ in 0..2 {
        d = d
            .apply_reidemeister(fiberlink::diagram::Move::R1Add {
                arc: fiberlink::ArcId(1),
                side: fiberlink::diagram::Side::Left,
                sign: fiberlink::Sign::Positive,
            })
            .unwrap();
    }
    let c = ComponentId(1);
    assert_eq!(linking_matrix(&d).self_writhe(c), 2);
    assert_eq!(fiberlink::invariants::self_crossing_count(&d, c), Some(2));
    let framing = 2;
    let t_v = framing - linking_matrix(&d).self_writhe(c);
    let crossings = fiberlink::invariants::self_crossing_count(&d, c).unwrap() as i64;
    let direct = (t_v + crossings + 1).rem_euclid(2) as u8;
    let fl = FramedLink::new(d, vec![framing]).unwrap();
    assert_eq!(direct, 1);
    assert_eq!(obstruction_vector(&fl).entries(), &[direct]);
    assert_eq!(
        obstruction_vector(&FramedLink::new(u, vec![framing]).unwrap()),
        obstruction_vector(&fl)
    );
}
