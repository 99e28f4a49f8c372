//! Seeded property run; same seed, same report.
//!
//!     cargo run --release --example fuzz -- 42 500

use laundry::fuzz::run_fuzz;

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("integer argument"));
    let seed = args.next().unwrap_or(1);
    let cases = args.next().unwrap_or(100);
    let report = run_fuzz(seed, cases);
    print!("{report}");
    if !report.all_passed() {
        std::process::exit(1);
    }
}
