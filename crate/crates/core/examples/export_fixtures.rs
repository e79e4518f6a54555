//! Writes both catalogued codes as JSON and reads them back.

use qclique::catalog::paper_code_27;
use qclique::formats::{fixture_to_json, parse_code_spec, render};
use qclique::workbench::paper2845_recovered;
use qclique::catalog::{RECOVERY_BUDGET, RECOVERY_SEED};

fn main() {
    let dir = std::env::args().nth(1).unwrap_or_else(|| "fixtures".into());
    std::fs::create_dir_all(&dir).unwrap();
    for f in [paper_code_27(), paper2845_recovered(RECOVERY_BUDGET, RECOVERY_SEED)] {
        let text = render(&fixture_to_json(&f));
        let path = format!("{dir}/{}.json", f.name);
        std::fs::write(&path, &text).unwrap();
        let back = parse_code_spec(&text).unwrap();
        println!(
            "{path}: {} vectors, graph resolved {}, round trip {}",
            back.k(),
            f.graph_resolved,
            back == f.spec
        );
    }
}
