#![no_main]

use aoi_cli::config::ConfigFile;
use aoi_cli::{resolve_with, Cli};
use clap::Parser;
use libfuzzer_sys::fuzz_target;

// NUL-separated arguments. Config files are never read; a `--config` flag
// resolves against an empty document.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let argv = std::iter::once("paoi").chain(text.split('\0'));
    let Ok(cli) = Cli::try_parse_from(argv) else { return };
    if let Ok(inv) = resolve_with(&cli, |_| Ok(ConfigFile::default())) {
        let _ = inv.params();
    }
});
