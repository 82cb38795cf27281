//! Randomized gap verification in every regime.

use coop_ic::harness::{gap_sweep, SweepConfig, SweepRegime};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (regime, gap) in [
        (SweepRegime::Weak, 2.0),
        (SweepRegime::Mixed, 1.5),
        (SweepRegime::Strong, 1.0),
        (SweepRegime::Cmac, 1.0),
    ] {
        let report = gap_sweep(&SweepConfig::new(regime, 2000, 7, gap))?;
        println!("{}", report.summary());
    }
    // an impossible target produces violations that re-check against
    // freshly built regions
    let cfg = SweepConfig::new(SweepRegime::Weak, 200, 7, 0.5);
    let report = gap_sweep(&cfg)?;
    println!("{}", report.summary());
    if let Some(v) = report.violations.first() {
        println!(
            "first violation: sample {} witness ({:.3}, {:.3}) excess {:.4}, re-checked {:.4}",
            v.index,
            v.witness[0],
            v.witness[1],
            v.excess,
            v.recheck(cfg.regime, cfg.gap_bits)?
        );
    }
    Ok(())
}
