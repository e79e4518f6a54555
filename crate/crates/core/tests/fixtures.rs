use qclique::catalog::*;
use qclique::code_space::check_clique;
use qclique::kl::kl_check_algebraic;
use qclique::bounds::{check_against_bound, BoundCheck};

fn published() -> Vec<Vec<String>> {
    include_str!("data/published_digits.txt")
        .split("--\n")
        .map(|block| block.lines().map(str::to_string).collect())
        .collect()
}

#[test]
fn digits_match_the_published_strings() {
    let blocks = published();
    assert_eq!(blocks[0], PAPER27_FACTOR_1);
    assert_eq!(blocks[1], PAPER27_FACTOR_2);
    let gens: Vec<String> = PAPER2845_GENERATORS.iter().map(|(a, b)| format!("{a} {b}")).collect();
    assert_eq!(blocks[2], gens);
    let clique = paper27_clique();
    let mut k = 0;
    for a in &blocks[0] {
        for b in &blocks[1] {
            assert_eq!(clique[k].to_digit_string(), format!("{a}{b}"));
            k += 1;
        }
    }
}

#[test]
fn paper27_layout_and_bound() {
    let f = paper_code_27();
    assert_eq!(f.spec.k(), 27);
    assert_eq!(f.spec.n(), 10);
    assert_eq!(f.spec.d, 3);
    assert_eq!(f.spec.layout.channels().len(), 5);
    assert!(f.spec.layout.channels().iter().enumerate().all(|(i, ch)| ch == &vec![i, i + 5]));
    assert_eq!(check_against_bound(&f.spec).margin(), Some(0));
    for tr in resolve_star_convention().trials {
        assert_eq!(check_against_bound(&paper27_spec(tr.centers)).margin(), Some(0));
    }
}

#[test]
fn recovered_graph_verifies_and_bound_declines() {
    let r = recover_graph_2845(RECOVERY_BUDGET, RECOVERY_SEED);
    assert_eq!(recover_graph_2845(RECOVERY_BUDGET, RECOVERY_SEED), r);
    let g = r.graph.expect("recovery finds a graph with the pinned seed");
    assert_eq!(r.best_violations, 0);
    let f = paper2845_fixture_with(g, true);
    assert!(check_clique(&f.spec).passed);
    assert!(kl_check_algebraic(&f.spec).passed);
    assert!(matches!(check_against_bound(&f.spec), BoundCheck::NotApplicable(_)));
}

#[test]
fn placeholder_graph_fails_verification() {
    let f = paper_code_2845();
    assert!(!f.graph_resolved);
    assert!(!check_clique(&f.spec).passed);
}
