//! Generalized degrees of freedom curves and their high-SNR convergence.

use std::f64::consts::FRAC_PI_2;

use coop_ic::gdof::{d, snr_db_grid, verify_limit, GdofQuery};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let kappas = [0.0, 0.125, 0.25, 0.5];
    print!("alpha");
    for k in kappas {
        print!("  k={k:<5}");
    }
    println!();
    for i in 0..=12 {
        let alpha = i as f64 * 0.25;
        print!("{alpha:5.2}");
        for k in kappas {
            print!("  {:7.4}", d(GdofQuery::new(alpha, k)?));
        }
        println!();
    }

    let q = GdofQuery::new(0.5, 0.25)?;
    let report = verify_limit(q, &snr_db_grid(20.0, 300.0, 8), FRAC_PI_2)?;
    println!("\nconvergence to d = {} at alpha 0.5, kappa 0.25:", report.d_formula);
    for p in &report.points {
        println!(
            "  {:6.1} dB  {:.5}  (deviation {:.5})",
            p.snr_db, p.csym_over_logsnr, p.deviation
        );
    }
    Ok(())
}
