//! Fixed inputs shared by the benchmarks.

use straighten_core::{build_poset, Poset};

/// Named posets spanning small to mid-sized ideal lattices.
pub fn fixtures() -> Vec<(&'static str, Poset)> {
    let v = build_poset(&["p", "p'", "q"], &[("p", "q"), ("p'", "q")]).unwrap();
    let crown = build_poset(
        &["a", "b", "c", "x", "y", "z"],
        &[("a", "x"), ("a", "y"), ("b", "y"), ("b", "z"), ("c", "z"), ("c", "x")],
    )
    .unwrap();
    vec![
        ("v", v),
        ("crown6", crown),
        ("chains-3-3-2", Poset::sum_of_chains(&[3, 3, 2])),
        ("antichain-8", Poset::antichain(8)),
        ("antichain-12", Poset::antichain(12)),
        ("chain-16", Poset::chain(16)),
    ]
}

/// Lattices small enough for the compatible-ASL search.
pub fn search_fixtures() -> Vec<(&'static str, Poset)> {
    let v_plus_point = build_poset(&["p", "p'", "q", "r"], &[("p", "q"), ("p'", "q")]).unwrap();
    vec![
        ("chains-2-1", Poset::sum_of_chains(&[2, 1])),
        ("v-plus-point", v_plus_point),
        ("chains-2-1-1", Poset::sum_of_chains(&[2, 1, 1])),
    ]
}
