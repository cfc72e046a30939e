use std::fs;
use std::path::Path;

use dce::config::RunConfig;

#[test]
fn sample_configs_parse_and_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    let mut n = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let cfg = RunConfig::parse(&fs::read_to_string(&path).unwrap())
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        cfg.model().unwrap();
        assert_eq!(RunConfig::parse(&cfg.to_text()).unwrap(), cfg);
        n += 1;
    }
    assert!(n >= 3);
}

#[test]
fn readme_config_block_matches_defaults() {
    let readme = fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../README.md")).unwrap();
    let start = readme.find("```\n[cavity]").expect("config block") + 4;
    let block = &readme[start..];
    let block = &block[..block.find("```").unwrap()];
    let cfg = RunConfig::parse(block).unwrap();
    assert_eq!(cfg, RunConfig::default());
}
