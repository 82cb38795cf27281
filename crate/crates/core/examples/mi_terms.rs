//! Closed-form information terms next to the covariance-determinant
//! evaluation of the same quantities.

use coop_ic::channel::{ChannelParams, PowerSplit, User};
use coop_ic::gaussian::{GaussianModel, Obs, Source};
use coop_ic::mi::{distortion_and_xi, TermContext};
use coop_ic::MiId;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = ChannelParams::from_db(30.0, 25.0, 12.0, 18.0, 1.2, 2.0, 2.0)?;
    let ctx = TermContext::new(&p);
    println!(
        "{} regime, split q1p = {:.4}, q2p = {:.4}",
        p.classify(),
        ctx.split.q_p(User::One),
        ctx.split.q_p(User::Two)
    );
    for id in MiId::ALL.into_iter().filter(|id| !id.requires_all_common()) {
        println!("  {id:?} at receiver 1: {:.6}", ctx.term(id, User::One)?);
    }

    let split = PowerSplit::for_channel(&p);
    let q = distortion_and_xi(&p, &split, User::Two);
    let g = GaussianModel::new(&p, &split, [1.0, q.delta]);
    let given = [
        Source::Common(User::One),
        Source::Private(User::One),
        Source::Common(User::Two),
    ];
    let xi_ref = g.cond_logdet_bits(&[Obs::YHat(User::Two)], &given, &[Obs::Y(User::One)]) - q.delta.log2();
    println!("rate loss: closed form {:.12}, reference {:.12}", q.xi, xi_ref);

    let own = Source::full(User::One);
    let closed = ctx.term(MiId::OwnAndOtherCommonWithQuant, User::One)?;
    let reference = g.mutual_info(
        &[own[0], own[1], Source::Common(User::Two)],
        &[Obs::Y(User::One), Obs::YHat(User::Two)],
        &[],
        &[],
    );
    println!("I(x1, x2c; y1, y2hat): closed form {closed:.12}, reference {reference:.12}");
    Ok(())
}
