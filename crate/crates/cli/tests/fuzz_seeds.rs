//! Replays the checked-in fuzz corpus through the same entry points the fuzz
//! targets exercise.

use std::path::{Path, PathBuf};

use aoi_cli::config::ConfigFile;
use aoi_cli::sweep::{self, Axis};
use aoi_cli::{resolve_with, Cli};
use clap::Parser;

fn seeds(target: &str) -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    assert!(!files.is_empty());
    files
}

fn read(path: &Path) -> String {
    String::from_utf8(std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn config_seeds_parse() {
    for path in seeds("config_json") {
        ConfigFile::from_json_str(&read(&path))
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    }
}

#[test]
fn sweep_seeds_parse_or_reject_cleanly() {
    let mut accepted = 0;
    for path in seeds("sweep_lists") {
        let text = read(&path);
        let mut lines = text.lines();
        let axis = lines.next().unwrap().parse::<Axis>();
        let values = sweep::parse_values(lines.next().unwrap());
        let tasks = sweep::parse_tasks(lines.next().unwrap());
        if axis.is_ok() && values.is_ok() && tasks.is_ok() {
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
}

#[test]
fn argv_seeds_resolve() {
    for path in seeds("cli_argv") {
        let text = read(&path);
        let cli = Cli::try_parse_from(std::iter::once("paoi").chain(text.split('\0')))
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let inv = resolve_with(&cli, |_| Ok(ConfigFile::default())).unwrap();
        inv.params().unwrap();
    }
}
