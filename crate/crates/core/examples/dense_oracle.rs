//! Randomized agreement between closed forms and explicit state vectors.

use qclique::dense::dense_cap_from_env;
use qclique::oracle::run_all;
use qclique::zp::Modulus;

fn main() {
    let cap = dense_cap_from_env();
    for (p, n) in [(2, 4), (2, 6), (3, 3), (3, 5)] {
        let results = run_all(Modulus::new(p).unwrap(), n, 50, 2024, cap).unwrap();
        for r in results {
            println!("p={p} n={n}  {:<32} {:>3} trials  {}", r.name, r.trials, if r.passed() { "ok" } else { "FAILED" });
            for f in &r.failures {
                println!("    {f}");
            }
        }
    }
}
