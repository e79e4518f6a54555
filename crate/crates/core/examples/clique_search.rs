//! Coding-clique search on small graphs: the five-qubit code on a 5-cycle,
//! a qutrit star, and the subgroup-only variant.

use qclique::code_space::CodeSpec;
use qclique::graph_state::{star_graph, WeightedGraph};
use qclique::kl::kl_check_algebraic;
use qclique::noise::ChannelLayout;
use qclique::search::{search, SearchMode, SearchOptions};
use qclique::zp::Modulus;

fn report(name: &str, g: WeightedGraph, layout: ChannelLayout, d: usize, opts: &SearchOptions) {
    let out = search(&g, &layout, d, opts).unwrap();
    let spec = CodeSpec::new(g, layout, d, out.clique.clone()).unwrap();
    let kl = kl_check_algebraic(&spec);
    let vectors: Vec<String> = out.clique.iter().map(|c| c.to_string()).collect();
    println!(
        "{name}: K = {} ({:?}, {} nodes, {} candidates), KL over {} errors: {}",
        out.clique.len(),
        out.status,
        out.nodes_explored,
        out.candidates,
        kl.errors_checked,
        if kl.passed { "pass" } else { "FAIL" }
    );
    println!("  {}", vectors.join(" "));
}

fn main() {
    let z2 = Modulus::new(2).unwrap();
    let cycle = WeightedGraph::from_edges(z2, 5, &[(0, 1, 1), (1, 2, 1), (2, 3, 1), (3, 4, 1), (0, 4, 1)]).unwrap();
    report("5-cycle, d=3", cycle, ChannelLayout::singletons(5), 3, &SearchOptions::default());

    let z3 = Modulus::new(3).unwrap();
    let star = star_graph(z3, 5, 0, 1).unwrap();
    report("qutrit star, d=2", star.clone(), ChannelLayout::singletons(5), 2, &SearchOptions::default());
    let subgroup = SearchOptions {
        mode: SearchMode::Subgroup,
        ..SearchOptions::default()
    };
    report("qutrit star, d=2, subgroup", star, ChannelLayout::singletons(5), 2, &subgroup);

    report("single qubit, d=2", WeightedGraph::empty(z2, 1), ChannelLayout::singletons(1), 2, &SearchOptions::default());
}
