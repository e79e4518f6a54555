//! Singleton bounds for distance-3 codes over 9-level channels.

use qclique::bounds::{singleton_bound, BoundQuery};
use qclique::zp::Modulus;

fn main() {
    let p = Modulus::new(3).unwrap();
    println!("{:>3} {:>3} {:>3} {:>10} {:>8}", "n", "e", "e'", "regime", "K_max");
    for n in 0..=6 {
        for e in 0..=2 {
            for e_half in 0..=2 {
                let q = BoundQuery { p, n, d: 3, e, e_half };
                let r = singleton_bound(&q).unwrap();
                println!("{:>3} {:>3} {:>3} {:>10} {:>8}", n, e, e_half, r.regime, r.k_max);
            }
        }
    }
}
