//! Shared reference evaluators for the integration tests.

#![allow(dead_code)]

use coop_ic::channel::{ChannelParams, PowerSplit, User};
use coop_ic::gaussian::{GaussianModel, Obs, Source};
use coop_ic::mi::{distortion_and_xi, eval_mi, MiError, MiId, MiTerm, QuantizerConfig};

/// Reference value of a catalogue term from covariance determinants.
pub fn oracle_mi(id: MiId, rx: User, p: &ChannelParams, split: &PowerSplit, deltas: [f64; 2]) -> f64 {
    let g = GaussianModel::new(p, split, deltas);
    let i = rx;
    let j = rx.other();
    let own = Source::full(i);
    let other = Source::full(j);
    let cat = |a: &[Source], b: &[Source]| [a, b].concat();
    let y = [Obs::Y(i)];
    let yq = [Obs::Y(i), Obs::YHat(j)];
    match id {
        MiId::OwnGivenOtherCommon => g.mutual_info(&own, &y, &[Source::Common(j)], &[]),
        MiId::OwnPrivate => g.mutual_info(&[Source::Private(i)], &y, &[Source::Common(i), Source::Common(j)], &[]),
        MiId::OtherCommonGivenOwn => g.mutual_info(&[Source::Common(j)], &y, &own, &[]),
        MiId::OwnAndOtherCommon => g.mutual_info(&cat(&own, &[Source::Common(j)]), &y, &[], &[]),
        MiId::OwnAndOtherCommonGivenOwnCommon => {
            g.mutual_info(&[Source::Private(i), Source::Common(j)], &y, &[Source::Common(i)], &[])
        }
        MiId::OwnAndOtherCommonWithQuant => g.mutual_info(&cat(&own, &[Source::Common(j)]), &yq, &[], &[]),
        MiId::OwnAndOtherCommonWithQuantGivenOwnCommon => {
            g.mutual_info(&[Source::Private(i), Source::Common(j)], &yq, &[Source::Common(i)], &[])
        }
        MiId::OwnGivenOther => g.mutual_info(&own, &y, &other, &[]),
        MiId::OtherGivenOwn => g.mutual_info(&other, &y, &own, &[]),
        MiId::Both => g.mutual_info(&cat(&own, &other), &y, &[], &[]),
        MiId::BothWithQuant => g.mutual_info(&cat(&own, &other), &yq, &[], &[]),
        MiId::OwnGivenOtherWithQuant => g.mutual_info(&own, &yq, &other, &[]),
        MiId::OtherGivenOwnWithQuant => g.mutual_info(&other, &yq, &own, &[]),
    }
}

/// Reference rate loss `I(ŷ_j; y_j | x_i, x_jc, y_i)` for quantizer `j`.
pub fn oracle_xi(p: &ChannelParams, split: &PowerSplit, quantizer: User, delta: f64) -> f64 {
    let j = quantizer;
    let i = j.other();
    let mut deltas = [1.0, 1.0];
    deltas[j.index()] = delta;
    let g = GaussianModel::new(p, split, deltas);
    let given: Vec<Source> = [Source::full(i).as_slice(), &[Source::Common(j)]].concat();
    g.cond_logdet_bits(&[Obs::YHat(j)], &given, &[Obs::Y(i)]) - delta.log2()
}

/// Split and quantizer under which a term is evaluated: the regime split,
/// or the all-common split for terms that need it.
pub fn term_setup(id: MiId, rx: User, p: &ChannelParams) -> (PowerSplit, QuantizerConfig) {
    let split = if id.requires_all_common() {
        PowerSplit::all_common(p)
    } else {
        PowerSplit::for_channel(p)
    };
    let quant = distortion_and_xi(p, &split, rx.other());
    (split, quant)
}

/// Closed form and reference value of one term.
pub fn closed_and_oracle(id: MiId, rx: User, p: &ChannelParams) -> Result<(f64, f64), MiError> {
    let (split, quant) = term_setup(id, rx, p);
    let closed = eval_mi(MiTerm::new(id, rx), p, &split, Some(&quant))?;
    let mut deltas = [1.0, 1.0];
    deltas[quant.quantizer.index()] = quant.delta;
    Ok((closed, oracle_mi(id, rx, p, &split, deltas)))
}

/// `|a - b| <= rel * max(|a|, |b|)`.
pub fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}
