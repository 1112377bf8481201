use orthogrid::error::SolverError;
use orthogrid::solver::{brute_force_solve, dump, solve, SeparationProblem, DEFAULT_TOLERANCE};
use proptest::prelude::*;

fn unit_problem(z0: &[f64]) -> SeparationProblem {
    SeparationProblem::new(z0.to_vec(), vec![0.5; z0.len()]).unwrap()
}

fn both(p: &SeparationProblem) -> [Vec<f64>; 2] {
    [solve(p, DEFAULT_TOLERANCE).unwrap(), brute_force_solve(p).unwrap()]
}

#[test]
fn one_constraint_one_pair() {
    let mut p = unit_problem(&[0.0, 5.0]);
    p.add_pair(0, 1).unwrap();
    p.add_constraint(0, 1, 1.0).unwrap();
    for z in both(&p) {
        assert!((z[1] - z[0] - 1.0).abs() < 1e-9);
        assert!((p.objective(&z) - 1.0).abs() < 1e-9);
        assert!(p.is_feasible(&z));
    }
}

#[test]
fn feasible_start_without_pairs_is_kept() {
    let mut p = unit_problem(&[0.0, 3.0]);
    p.add_constraint(0, 1, 1.0).unwrap();
    for z in both(&p) {
        assert_eq!(z, vec![0.0, 3.0]);
    }
}

#[test]
fn chain_with_pair_between_ends() {
    let mut p = unit_problem(&[0.0, 4.0, 9.0]);
    p.add_constraint(0, 1, 1.0).unwrap();
    p.add_constraint(1, 2, 1.0).unwrap();
    p.add_pair(0, 2).unwrap();
    for z in both(&p) {
        assert!((z[2] - z[0] - 2.0).abs() < 1e-9);
        assert!((p.objective(&z) - 4.0).abs() < 1e-9);
        assert!(p.max_violation(&z) <= 1e-9);
        // anchored: the smallest coordinate stays where it started
        assert!(z.iter().cloned().fold(f64::INFINITY, f64::min).abs() < 1e-9);
    }
}

#[test]
fn degenerate_sizes() {
    let p = unit_problem(&[]);
    assert!(solve(&p, DEFAULT_TOLERANCE).unwrap().is_empty());
    assert!(brute_force_solve(&p).unwrap().is_empty());
    let p = unit_problem(&[-2.25]);
    assert_eq!(both(&p), [vec![-2.25], vec![-2.25]]);
}

#[test]
fn structural_errors() {
    let mut p = unit_problem(&[0.0, 1.0, 2.0]);
    p.add_constraint(0, 1, 1.0).unwrap();
    p.add_constraint(1, 2, 1.0).unwrap();
    p.add_constraint(2, 0, 1.0).unwrap();
    assert_eq!(solve(&p, DEFAULT_TOLERANCE), Err(SolverError::CyclicConstraints));
    assert_eq!(p.add_pair(1, 1), Err(SolverError::SelfPair(1)));
    assert!(matches!(p.add_constraint(0, 7, 1.0), Err(SolverError::IndexOutOfRange { .. })));
    let big = unit_problem(&[0.0; 11]);
    assert!(matches!(brute_force_solve(&big), Err(SolverError::OracleScope { .. })));
}

#[test]
fn dump_round_trip() {
    let mut p = SeparationProblem::new(vec![0.5, -3.0, 7.25], vec![1.0, 0.5, 1.5]).unwrap();
    p.add_pair(0, 2).unwrap();
    p.add_pair(1, 0).unwrap();
    p.add_constraint(1, 0, 2.0).unwrap();
    p.add_constraint(0, 2, 0.1).unwrap();
    let text = dump::write(&p);
    assert_eq!(dump::parse(&text).unwrap(), p);
    assert!(matches!(
        dump::parse("var 0 0.5\nbogus 1\n"),
        Err(SolverError::Parse { line: 2, .. })
    ));
    assert!(matches!(dump::parse("var 0 0.5\npair 0 0\n"), Err(SolverError::Parse { line: 2, .. })));
}

/// Problems with at most 8 variables, 10 constraints along a random order
/// and 10 objective pairs, from arbitrary starts.
fn small_problem() -> impl Strategy<Value = SeparationProblem> {
    (1usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                Just((0..n).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(1u8..=4, n),
                prop::collection::vec(-20.0f64..20.0, n),
                prop::collection::vec((0..n, 0..n, 1u8..=6), 0..=10),
                prop::collection::vec((0..n, 0..n), 0..=10),
            )
        })
        .prop_map(|(n, order, widths, z0, seps, pairs)| {
            let offsets = widths.iter().map(|&w| w as f64 / 2.0).collect();
            let mut p = SeparationProblem::new(z0, offsets).unwrap();
            let rank: Vec<usize> = {
                let mut r = vec![0; n];
                for (k, &v) in order.iter().enumerate() {
                    r[v] = k;
                }
                r
            };
            for (a, b, gap) in seps {
                if rank[a] < rank[b] {
                    p.add_constraint(a, b, gap as f64 / 2.0).unwrap();
                }
            }
            for (i, j) in pairs {
                if i != j {
                    p.add_pair(i, j).unwrap();
                }
            }
            p
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn solve_matches_oracle(p in small_problem()) {
        let z = solve(&p, DEFAULT_TOLERANCE).unwrap();
        let best = brute_force_solve(&p).unwrap();
        prop_assert!(p.is_feasible(&z));
        prop_assert!((p.objective(&z) - p.objective(&best)).abs() <= 1e-6,
            "solve {} vs oracle {}", p.objective(&z), p.objective(&best));
    }

    #[test]
    fn dumps_reparse_to_the_same_problem(p in small_problem()) {
        prop_assert_eq!(dump::parse(&dump::write(&p)).unwrap(), p);
    }
}
