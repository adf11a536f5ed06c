#![no_main]

use icfade::graph::{build_flow_graph, prune};
use icfade::problem::{reduce_to_square, IndexCodingProblem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = IndexCodingProblem::from_toml_str(text) else {
        return;
    };
    let again = IndexCodingProblem::from_toml_str(&p.to_toml_string()).unwrap();
    assert_eq!(p, again);
    if let Ok(red) = reduce_to_square(&p) {
        if let Ok(g) = build_flow_graph(&red.problem) {
            let _ = prune(&g);
        }
    }
});
