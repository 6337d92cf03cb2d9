//! Driving the experiment harness programmatically.
//!
//! The bin is a flag parser around `cli::run`; everything it can do is
//! available as a library call.  Reports embed the spec hash and seed, and
//! an identical `RunConfig` renders byte-identical text — run artifacts can
//! be diffed directly.

use hyperconv::cli::{run, CommandKind, RunConfig, SpecSource, EXIT_EXHAUSTED, EXIT_OK};
use hyperconv::report::Format;

fn config(command: CommandKind, spec: &str) -> RunConfig {
    RunConfig {
        command,
        spec: Some(SpecSource::Inline(spec.into())),
        format: Format::Json,
        window: None,
        depth: None,
        seed: 0,
    }
}

fn main() {
    // A witness experiment: fixed sequence, mono criterion.
    let spec = r#"{
        "structure": {"builtin": "cp1"},
        "coloring": {"kind": "mod_k", "k": 2},
        "criterion": "mono",
        "sequence": [2, 4, 6]
    }"#;
    let mut cfg = config(CommandKind::Experiment, spec);
    cfg.depth = Some(3);
    let outcome = run(&cfg);
    assert_eq!(outcome.exit, EXIT_OK);
    println!("{}", outcome.text);

    // Byte-for-byte determinism.
    let again = run(&cfg);
    println!("identical rerun: {}", outcome.text == again.text);

    // The same experiment as CSV rows, one per family and class.
    cfg.format = Format::Csv;
    println!("\n{}", run(&cfg).text);

    // An exhausted search exits 3 and says what it scanned.
    let spec = r#"{
        "structure": {"builtin": "cp2"},
        "coloring": {"kind": "mod_k", "k": 3},
        "criterion": "mono"
    }"#;
    let mut cfg = config(CommandKind::Experiment, spec);
    cfg.depth = Some(2);
    cfg.window = Some(20);
    let outcome = run(&cfg);
    assert_eq!(outcome.exit, EXIT_EXHAUSTED);
    let v: serde_json::Value = serde_json::from_str(&outcome.text).unwrap();
    println!(
        "search: verdict = {}, cases = {}, window = {}",
        v["report"]["verdict"].as_str().unwrap(),
        v["report"]["cases"],
        v["report"]["window"].as_str().unwrap()
    );

    // Reproduce scenarios are plain commands too.
    let outcome = run(&RunConfig {
        command: CommandKind::Reproduce("quotient-table".into()),
        spec: None,
        format: Format::Json,
        window: None,
        depth: None,
        seed: 0,
    });
    let v: serde_json::Value = serde_json::from_str(&outcome.text).unwrap();
    println!(
        "reproduce quotient-table: exit = {}, pass = {}",
        outcome.exit, v["report"]["pass"]
    );
}
