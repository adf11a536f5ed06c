use icfade::channel::{ChannelConfig, CodeSelector};
use icfade::code::IndexCode;
use icfade::graph::{build_flow_graph, prune};
use icfade::problem::{reduce_to_square, IndexCodingProblem};
use std::path::PathBuf;

fn seeds(target: &str) -> Vec<(PathBuf, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            let bytes = std::fs::read(&p).unwrap();
            (p, String::from_utf8_lossy(&bytes).into_owned())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn problem_seeds() {
    for (path, text) in seeds("parse_problem") {
        let p = IndexCodingProblem::from_toml_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(IndexCodingProblem::from_toml_str(&p.to_toml_string()).unwrap(), p);
        let red = reduce_to_square(&p).unwrap();
        let _ = prune(&build_flow_graph(&red.problem).unwrap());
    }
}

#[test]
fn config_seeds() {
    for (path, text) in seeds("parse_config") {
        let cfg = ChannelConfig::from_toml_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            ChannelConfig::from_toml_str(&cfg.to_toml_string()).unwrap().hash(),
            cfg.hash()
        );
    }
}

#[test]
fn code_matrix_seeds() {
    for (path, text) in seeds("parse_code_matrix") {
        let code = IndexCode::from_toml_str(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(
            IndexCode::from_toml_str(&code.to_toml_string()).unwrap().matrix_hash(),
            code.matrix_hash()
        );
    }
}

#[test]
fn code_selector_seeds() {
    let mut accepted = 0;
    for (_, text) in seeds("parse_code_selector") {
        if let Ok(sel) = text.parse::<CodeSelector>() {
            assert_eq!(sel.to_string().parse::<CodeSelector>().unwrap(), sel);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 4);
}
