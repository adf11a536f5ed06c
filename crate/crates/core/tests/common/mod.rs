#![allow(dead_code)]

use icfade::channel::ChannelConfig;
use icfade::code::IndexCode;
use icfade::problem::IndexCodingProblem;
use std::path::PathBuf;

pub fn fixture(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(rel)
}

pub fn problem(name: &str) -> IndexCodingProblem {
    let text = std::fs::read_to_string(fixture(&format!("problems/{name}.toml"))).unwrap();
    IndexCodingProblem::from_toml_str(&text).unwrap()
}

pub fn code(name: &str) -> IndexCode {
    let text = std::fs::read_to_string(fixture(&format!("codes/{name}.toml"))).unwrap();
    IndexCode::from_toml_str(&text).unwrap()
}

pub fn config(name: &str) -> ChannelConfig {
    let text = std::fs::read_to_string(fixture(&format!("configs/{name}.toml"))).unwrap();
    ChannelConfig::from_toml_str(&text).unwrap()
}
