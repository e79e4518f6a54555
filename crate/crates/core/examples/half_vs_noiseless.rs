//! Two half-noisy channels against one noiseless channel, at equal channel
//! count, and the same comparison swept over larger codes.

use qclique::bounds::compare_scenarios;
use qclique::zp::Modulus;

fn main() {
    let p = Modulus::new(3).unwrap();
    let c = compare_scenarios(p, 3, 5, (0, 2), (1, 0)).unwrap();
    println!("5 channels, d = 3");
    println!("  two half-noisy: K <= {} ({})", c.a.k_max, c.a.regime);
    println!("  one noiseless:  K <= {} ({})", c.b.k_max, c.b.regime);
    println!("  ratio 3^{}", c.ratio_exponent.unwrap());

    println!();
    println!("{:>2} {:>8} {:>8} {:>8}", "d", "channels", "2 x half", "1 x full");
    for d in 2..=5 {
        for channels in 2 * (d - 1)..=2 * (d - 1) + 3 {
            let c = compare_scenarios(p, d, channels, (0, 2), (1, 0)).unwrap();
            let show = |e: Option<u64>| e.map_or("-".to_string(), |x| format!("3^{x}"));
            println!("{:>2} {:>8} {:>8} {:>8}", d, channels, show(c.a.exponent), show(c.b.exponent));
        }
    }
}
