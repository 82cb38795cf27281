//! Symmetric capacity bound against the one-round symmetric rate as
//! cooperation grows.

use std::f64::consts::FRAC_PI_2;

use coop_ic::bounds::{sym_one_round, sym_upper};
use coop_ic::ChannelParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (snr_db, inr_db) in [(40.0, 20.0), (40.0, 40.0), (30.0, 45.0)] {
        println!("SNR {snr_db} dB, INR {inr_db} dB");
        println!("  C (bits)   upper    one-round   gap");
        for c in [0.0, 1.0, 2.0, 4.0, 8.0, 16.0] {
            let p = ChannelParams::from_db(snr_db, snr_db, inr_db, inr_db, FRAC_PI_2, c, c)?;
            let (u, l) = (sym_upper(&p)?, sym_one_round(&p)?);
            println!("  {c:8.1} {u:8.3} {l:11.3} {:7.3}", u - l);
        }
    }
    Ok(())
}
