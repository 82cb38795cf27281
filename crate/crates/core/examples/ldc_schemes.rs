//! Deterministic-model schemes: a hand-written decode-and-forward scheme
//! and exhaustive search over raw one-round cooperation.

use coop_ic::ldc::{check_scheme, cut_set_bound, search_raw, LdcChannel, LdcScheme};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let symmetric: LdcChannel = "q=3,n11=3,n12=2,n21=2,n22=3".parse()?;
    for k in 0..=2 {
        let ch = symmetric.with_budgets(k, k);
        let r = search_raw(&ch, ch.q)?;
        println!(
            "{ch}: best sum {} (cut-set {}), rates {:?}",
            r.sum,
            cut_set_bound(&ch),
            r.rates
        );
        print!("{}", r.scheme.to_text(ch.q));
    }

    let asymmetric: LdcChannel = "q=3,n11=2,n12=1,n21=3,n22=3,k12=2,k21=1".parse()?;
    let scheme = LdcScheme::parse(include_str!("../data/asymmetric.scheme"))?;
    println!("\n{asymmetric}:");
    print!("{}", scheme.to_text(asymmetric.q));
    println!("outcome: {:?}", check_scheme(&asymmetric, &scheme)?);
    Ok(())
}
