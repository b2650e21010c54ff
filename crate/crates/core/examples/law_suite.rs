//! Runs the executable law suite and prints one line per law.
//!
//! ```text
//! cargo run --release --example law_suite -- [seed] [scale]
//! ```

use acrewrite::laws::{run_suite, SuiteConfig};

fn main() -> acrewrite::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed = args.next().map_or(0, |s| s.parse().expect("seed is an integer"));
    let scale: f64 = args.next().map_or(0.1, |s| s.parse().expect("scale is a number"));

    let mut cfg = SuiteConfig { seed, ..Default::default() };
    cfg.counts = cfg.counts.scaled(scale);

    let reports = run_suite(&cfg)?;
    let mut failed = 0;
    for r in &reports {
        println!("{}", r.summary());
        failed += usize::from(!r.passed());
    }
    println!("{} laws, {failed} failing", reports.len());
    if failed > 0 {
        std::process::exit(1);
    }
    Ok(())
}
