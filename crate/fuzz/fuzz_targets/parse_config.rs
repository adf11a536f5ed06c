#![no_main]

use icfade::channel::ChannelConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cfg) = ChannelConfig::from_toml_str(text) else {
        return;
    };
    let again = ChannelConfig::from_toml_str(&cfg.to_toml_string()).unwrap();
    assert_eq!(cfg.hash(), again.hash());
});
