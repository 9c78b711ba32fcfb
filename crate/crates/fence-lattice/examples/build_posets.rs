//! Construct the three poset families and inspect their structure:
//! covers, segments, the alpha/delta parameters, and duals.
//!
//! Run with `cargo run --example build_posets`.

use fence_lattice::{CircularFencePoset, Composition, FencePoset, GatePoset};

fn main() {
    let fence = FencePoset::new(&Composition::of(&[2, 4, 1]));
    println!("fence F(2,4,1): {} elements", fence.n());
    print!("{}", fence.poset().edge_list_text());
    for seg in fence.segments() {
        println!(
            "  {} segment: {:?}",
            if seg.ascending { "ascending " } else { "descending" },
            seg.elements
        );
    }

    let circular = CircularFencePoset::new(&Composition::of(&[2, 1, 1, 2])).unwrap();
    println!(
        "\ncircular fence over (2,1,1,2): {} elements, degenerate: {}",
        circular.n(),
        circular.is_degenerate()
    );
    print!("{}", circular.poset().edge_list_text());

    // the smallest even composition collapses to a single cover
    let tiny = CircularFencePoset::new(&Composition::of(&[1, 1])).unwrap();
    println!(
        "\ncircular fence over (1,1): {} elements, degenerate: {}",
        tiny.n(),
        tiny.is_degenerate()
    );

    let gate = GatePoset::new(&Composition::of(&[2, 3, 1]));
    println!("\ngate over (2,3,1): {} elements", gate.n());
    print!("{}", gate.poset().edge_list_text());
    println!("descending chains: {:?}", gate.descending_chains());
    println!(
        "dual gate is the gate over {}",
        gate.dual().delta()
    );

    let wide = FencePoset::new(&Composition::of(&[6, 2, 1, 2, 3, 1, 6]));
    let params = wide.alpha_delta().unwrap();
    println!(
        "\nF(6,2,1,2,3,1,6): alpha = {:?}, delta = {:?}",
        params.alpha, params.delta
    );

    println!("\nJSON export of F(2,4,1):");
    println!("{}", serde_json::to_string_pretty(&fence.to_json()).unwrap());
}
