//! Runs the lift construction and the obstruction search over a seeded corpus.
//!
//! Usage: `cargo run --release --example corpus_sweep [count]`

use std::collections::BTreeMap;
use std::time::Instant;

use troprank::corpus::corpus;
use troprank::lift::kapranov_upper;
use troprank::obstruct::{certify_lower_bound, Verdict, DEFAULT_BUDGET};
use troprank::scalars::FieldSpec;

fn main() {
    let count: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let insts = corpus(count, 1, 3..=8, 5).expect("corpus");
    for f in [FieldSpec::Gf4, FieldSpec::Fp(5), FieldSpec::Q] {
        let start = Instant::now();
        let mut tally: BTreeMap<String, usize> = BTreeMap::new();
        let mut max_nodes = 0;
        for inst in &insts {
            let key = match kapranov_upper(&inst.matrix, f) {
                Ok(c) => c.method.to_string(),
                Err(e) => {
                    eprintln!("seed {} {f}: {e}", inst.seed);
                    "failed".into()
                }
            };
            *tally.entry(key).or_default() += 1;
            if f.is_finite() {
                match certify_lower_bound(&inst.matrix, 3, f, DEFAULT_BUDGET) {
                    Ok(rep) if rep.verdict == Verdict::Certified => {
                        eprintln!("seed {} {f}: certified against a lift", inst.seed);
                        *tally.entry("contradiction".into()).or_default() += 1;
                    }
                    Ok(rep) => max_nodes = max_nodes.max(rep.nodes_visited),
                    Err(e) => {
                        eprintln!("seed {} {f}: {e}", inst.seed);
                        *tally.entry("obstruction error".into()).or_default() += 1;
                    }
                }
            }
        }
        println!("{f}: {tally:?} max nodes {max_nodes} in {:.1?}", start.elapsed());
    }
}
