use expdom::domination::{covering_program, exact_gamma, exact_gamma_milp, lp_lower, weight_matrix};
use expdom::lp::{enumerate_oracle, solve_lp, solve_milp, Budget, Direction, LpProblem, LpStatus, Sense};
use expdom::{FamilyKind, Graph, GraphFamily};
use proptest::prelude::*;

fn sense_of(s: u8) -> Sense {
    match s % 3 {
        0 => Sense::Ge,
        1 => Sense::Le,
        _ => Sense::Eq,
    }
}

prop_compose! {
    fn binary_program()(n in 1usize..=15, m in 1usize..=6)
        (obj in prop::collection::vec(-5i32..=5, n),
         rows in prop::collection::vec((prop::collection::vec(-3i32..=4, n), any::<u8>(), -2i32..=6), m),
         maximize in any::<bool>()) -> LpProblem {
        let dir = if maximize { Direction::Maximize } else { Direction::Minimize };
        let mut p = LpProblem::new(dir, obj.iter().map(|&c| c as f64).collect());
        for (coeffs, s, rhs) in rows {
            // Equalities on random data are almost always infeasible; keep them rare.
            let sense = if s % 7 == 0 { Sense::Eq } else { sense_of(s % 2) };
            p.add_constraint(coeffs.iter().map(|&c| c as f64).collect(), sense, rhs as f64).unwrap();
        }
        for j in 0..obj.len() {
            p.set_bounds(j, 0.0, 1.0).unwrap();
            p.set_integer(j).unwrap();
        }
        p
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn milp_matches_enumeration(p in binary_program()) {
        let milp = solve_milp(&p).unwrap();
        let oracle = enumerate_oracle(&p).unwrap();
        prop_assert_eq!(milp.status, oracle.status);
        if milp.status == LpStatus::Optimal {
            prop_assert!((milp.objective - oracle.objective).abs() < 1e-9,
                "milp {} vs oracle {}", milp.objective, oracle.objective);
            prop_assert!(p.max_residual(&milp.x) <= 1e-7);
            prop_assert!(p.max_fractionality(&milp.x) <= 1e-6);
        }
    }

    #[test]
    fn relaxation_bounds_the_integer_optimum(p in binary_program()) {
        let lp = solve_lp(&p).unwrap();
        let milp = solve_milp(&p).unwrap();
        if milp.status == LpStatus::Optimal {
            prop_assert_eq!(lp.status, LpStatus::Optimal);
            prop_assert!(p.max_residual(&lp.x) <= 1e-7);
            match p.direction {
                Direction::Minimize => prop_assert!(lp.objective <= milp.objective + 1e-7),
                Direction::Maximize => prop_assert!(lp.objective >= milp.objective - 1e-7),
            }
        }
    }

    #[test]
    fn listing_round_trips(p in binary_program()) {
        prop_assert_eq!(LpProblem::from_listing(&p.to_listing()).unwrap(), p);
    }
}

#[test]
fn covering_solvers_agree_on_small_grids() {
    for f in [
        GraphFamily::king(4),
        GraphFamily::king(5),
        GraphFamily::slant(4),
        GraphFamily::standard(4),
        GraphFamily::new(FamilyKind::Torus, 3, 4),
        GraphFamily::hypercube(4),
    ] {
        let g = Graph::build(f).unwrap();
        let search = exact_gamma(&g, Budget::unlimited()).unwrap();
        let milp = exact_gamma_milp(&g, Budget::unlimited()).unwrap();
        assert!(search.optimal && milp.optimal);
        assert_eq!(search.value, milp.value, "{f}");
        let lp = lp_lower(&g).unwrap();
        assert!(lp <= search.value as f64 + 1e-7, "{f}: lp {lp} > {}", search.value);
        if g.vertex_count() <= 16 {
            let p = covering_program(&weight_matrix(&g).unwrap(), true);
            assert_eq!(enumerate_oracle(&p).unwrap().objective, search.value as f64, "{f}");
        }
    }
}

#[test]
fn exact_search_matches_milp_on_mid_sizes() {
    for f in [GraphFamily::king(7), GraphFamily::slant(6), GraphFamily::hypercube(5)] {
        let g = Graph::build(f).unwrap();
        let a = exact_gamma(&g, Budget::unlimited()).unwrap();
        let b = exact_gamma_milp(&g, Budget::unlimited()).unwrap();
        assert_eq!(a.value, b.value, "{f}");
    }
}
