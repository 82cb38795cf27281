//! Inner and outer regions for one channel in each interference regime,
//! with the smallest gap that makes the outer region fit.

use coop_ic::bounds::{build_cmac, build_inner, build_outer};
use coop_ic::region::{contains, RateRegion};
use coop_ic::ChannelParams;

/// Smallest `g` (to 1e-4) such that `outer` lies inside `inner` inflated by `g`.
fn measured_gap(inner: &RateRegion, outer: &RateRegion) -> f64 {
    let (mut lo, mut hi) = (0.0, 64.0);
    while hi - lo > 1e-4 {
        let mid = 0.5 * (lo + hi);
        if contains(&inner.inflate(mid), outer, 1e-9).holds {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn show(label: &str, r: &RateRegion) {
    let pts: Vec<String> = r
        .vertices()
        .iter()
        .map(|v| format!("({:.2}, {:.2})", v[0], v[1]))
        .collect();
    println!("  {label:<6} {}", pts.join(" "));
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let channels = [
        ("weak", ChannelParams::from_db(40.0, 35.0, 20.0, 15.0, 1.0, 4.0, 2.0)?),
        ("mixed", ChannelParams::from_db(40.0, 20.0, 30.0, 10.0, 2.0, 3.0, 3.0)?),
        ("strong", ChannelParams::from_db(20.0, 25.0, 30.0, 35.0, 0.5, 2.0, 5.0)?),
    ];
    for (name, p) in channels {
        let inner = build_inner(&p);
        let outer = build_outer(&p);
        println!("{name} ({}):", p.classify());
        show("inner", &inner);
        show("outer", &outer);
        println!("  gap    {:.4} bits", measured_gap(&inner, &outer));
        let cmac = build_cmac(&p);
        println!("  compound MAC gap {:.4} bits", measured_gap(&cmac.inner, &cmac.outer));
    }
    Ok(())
}
