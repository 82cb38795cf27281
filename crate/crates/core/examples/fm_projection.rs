//! Projects the rate-split system of the two-round strategy onto the
//! `(R1, R2)` plane and compares it with the closed-form region.

use coop_ic::bounds::{build_two_round, two_round_split_system, StrategyOrder};
use coop_ic::region::contains;
use coop_ic::ChannelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ChannelParams::from_db(45.0, 40.0, 25.0, 20.0, 0.8, 3.0, 2.0)?;
    let system = two_round_split_system(&p)?;
    println!("split system ({} rows):", system.rows().len());
    println!("{system}");
    let projected = system.eliminate_all(&["R1c", "R2c"])?;
    println!("\nafter eliminating R1c and R2c ({} rows):", projected.rows().len());
    println!("{}", projected.reduce()?);

    let by_elimination = projected.to_region()?;
    let direct = build_two_round(&p, StrategyOrder::TwoRound212)?;
    println!(
        "\nmutual excess: {:.2e} / {:.2e} bits",
        contains(&direct, &by_elimination, 0.0).max_excess,
        contains(&by_elimination, &direct, 0.0).max_excess
    );
    Ok(())
}
