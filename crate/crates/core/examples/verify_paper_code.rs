//! The 27-element two-star code: star-centre resolution, clique
//! conditions, both KL verifiers and the Singleton bound.

use std::time::Instant;

use qclique::bounds::check_against_bound;
use qclique::catalog::{paper_code_27, resolve_star_convention};
use qclique::code_space::check_clique;
use qclique::dense::dense_cap_from_env;
use qclique::kl::{kl_check_algebraic, kl_check_dense};

fn main() {
    let t = Instant::now();
    let conventions = resolve_star_convention();
    println!("star centres (1-based)  clique violations  KL violations");
    for tr in &conventions.trials {
        println!(
            "  ({}, {})  {:>5} ({} purity, {} covered)  {:>5}",
            tr.centers.0 + 1,
            tr.centers.1 + 1,
            tr.clique_violations,
            tr.not_orthogonal,
            tr.covered_differences,
            tr.kl_violations
        );
    }
    println!(
        "resolved: {}, pinned ({}, {}) [{:.1?}]",
        conventions.resolved,
        conventions.pinned.0 + 1,
        conventions.pinned.1 + 1,
        t.elapsed()
    );

    let f = paper_code_27();
    let clique = check_clique(&f.spec);
    println!("clique conditions: {} ({} violations)", clique.passed, clique.violations.len());
    if let Some(v) = clique.first_violation() {
        println!("  first: {v:?}");
    }
    let t = Instant::now();
    let alg = kl_check_algebraic(&f.spec);
    println!(
        "algebraic KL: {} over {} errors, {} violations [{:.1?}]",
        alg.passed,
        alg.errors_checked,
        alg.violations.len(),
        t.elapsed()
    );
    let t = Instant::now();
    let dense = kl_check_dense(&f.spec, dense_cap_from_env()).unwrap();
    println!(
        "dense KL: {} ({} violations), same report as algebraic: {} [{:.1?}]",
        dense.passed,
        dense.violations.len(),
        dense == alg,
        t.elapsed()
    );
    println!("bound: {:?}", check_against_bound(&f.spec));
}
