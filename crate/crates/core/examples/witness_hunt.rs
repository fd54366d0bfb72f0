//! Seeded sampling of qutrit encoders, reporting anything recursive and
//! non-catastrophic. Arguments: `[samples] [seed] [m n k]`.

use quconv::harness::{run_search, RunReport, SearchConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let samples = args.first().copied().unwrap_or(20_000);
    let seed = args.get(1).copied().unwrap_or(1);
    let (m, n, k) = match args.get(2..5) {
        Some(s) => (s[0] as usize, s[1] as usize, s[2] as usize),
        None => (1, 2, 1),
    };
    let config = SearchConfig::sampled(3, m, n, k, samples, seed);
    let summary = run_search(&config, |w| eprintln!("witness at index {}", w.index))?;
    eprintln!(
        "{} examined: {} catastrophic, {} recursive ({} with re-verified catastrophic witness), {} matches",
        summary.examined, summary.catastrophic, summary.recursive, summary.recursive_reverified, summary.matches
    );
    let mut report = RunReport::new("search");
    report.search_config = Some(config);
    report.search = Some(summary);
    print!("{}", report.to_toml());
    Ok(())
}
