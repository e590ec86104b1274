use fdds::canon::{canon, is_isomorphic};
use fdds::enumerate::Catalog;
use fdds::gen::{self, planted_cycle_poly};
use fdds::solver::cycles::solve_poly_explicit;
use fdds::solver::general::solve_poly_general;
use fdds::solver::oracle::brute_force_solve;
use fdds::{CycleSum, Fdds, FddsPoly};

fn sys(s: &str) -> Fdds {
    Fdds::parse(s).unwrap()
}

fn suite() -> Vec<FddsPoly> {
    vec![
        FddsPoly::identity(),
        FddsPoly::from_terms([(1, sys("0 0"))]),
        FddsPoly::from_terms([(1, Fdds::cycle(2))]),
        FddsPoly::from_terms([(1, sys("1 0 0"))]),
        FddsPoly::from_terms([(2, Fdds::one()), (1, Fdds::one())]),
        FddsPoly::from_terms([(2, Fdds::one()), (0, Fdds::one())]),
        FddsPoly::from_terms([(2, sys("0 0 1")), (1, sys("0"))]),
        FddsPoly::from_terms([(2, Fdds::cycle(2)), (0, sys("0 0"))]),
    ]
}

#[test]
fn agrees_with_the_oracle_on_small_right_hand_sides() {
    let rhs = Catalog::new(8).systems_up_to(8);
    let mut solved = 0;
    for p in suite() {
        assert!(p.is_pseudo_injective());
        for b in &rhs {
            let out = solve_poly_general(&p, b);
            let oracle = brute_force_solve(&p, b, b.len(), 1_000_000).unwrap();
            assert_eq!(out.is_solved(), !oracle.is_empty(), "{p} = {b}");
            let Some(y) = out.solution else { continue };
            solved += 1;
            assert!(out.verified);
            assert_eq!(canon(&p.eval(&y).unwrap()), canon(b));
            let most = oracle.iter().map(|x| x.components().len()).max().unwrap();
            let best: Vec<&Fdds> = oracle.iter().filter(|x| x.components().len() == most).collect();
            assert_eq!(best.len(), 1, "{p} = {b}: max-component solution is shared");
            assert!(is_isomorphic(&y, best[0]), "{p} = {b}: {y} is not the max-component solution {}", best[0]);
        }
    }
    assert!(solved > 300);
}

#[test]
fn matches_the_cycle_solver_on_cycles() {
    let mut rng = gen::rng(5);
    for _ in 0..60 {
        let pl = planted_cycle_poly(&mut rng, 2, 2, 6, 8).unwrap();
        let p = pl.poly.to_fdds_poly(1000).unwrap();
        let b = pl.rhs.to_fdds(100_000).unwrap();
        let general = solve_poly_general(&p, &b);
        let cycles = solve_poly_explicit(&p, &b);
        let g = general.solution.map(|y| CycleSum::from_fdds(&y).expect("sum of cycles"));
        let c = cycles.solution.map(|y| CycleSum::from_fdds(&y).expect("sum of cycles"));
        assert_eq!(g, c, "{}", pl.poly);
        assert!(g.is_some());
    }
}

#[test]
fn components_add_up_to_the_solution() {
    let mut rng = gen::rng(9);
    for _ in 0..40 {
        let pl = gen::planted_fdds_poly(&mut rng, 2, 2, 5, 8).unwrap();
        let out = solve_poly_general(&pl.poly, &pl.rhs);
        let y = out.solution.expect("planted instances are solvable");
        let sum = out.components_added.iter().fold(Fdds::zero(), |acc, c| acc.sum(c));
        assert!(is_isomorphic(&sum, &y));
        assert!(out.components_added.iter().all(|c| c.components().len() == 1));
    }
}
