//! Inner and outer rate regions.
//!
//! Outer bounds come from cut-set and genie-aided arguments and hold for
//! every channel. Inner regions are achieved by two coding strategies:
//!
//! * two-round: the receiver that decodes last first quantizes its signal
//!   and bins it to the other receiver, which decodes and then forwards bin
//!   indices of the decoded common messages back;
//! * one-round: both receivers quantize-bin-forward simultaneously and
//!   decode once, with no superposition at the transmitters.
//!
//! [`build_inner`] picks the strategy that matches the interference regime.

use serde::Serialize;

use crate::channel::{ChannelParams, Regime, User};
use crate::fm::{FmError, IneqSystem};
use crate::mi::{MiError, MiId, TermContext};
use crate::region::{conv_union, HalfSpace, RateRegion, RegionError};

/// Cooperation strategy and processing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum StrategyOrder {
    /// Receiver 2 quantizes, receiver 1 decodes and forwards, receiver 2
    /// decodes last.
    TwoRound212,
    /// Mirror of [`StrategyOrder::TwoRound212`].
    TwoRound121,
    /// Simultaneous quantize-bin-forward in both directions.
    OneRound,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BoundsError {
    #[error("no two-round region for order {order:?} in the {regime} regime")]
    RegimeMismatch { order: StrategyOrder, regime: Regime },
    #[error("{0:?} is not a two-round order")]
    NotTwoRound(StrategyOrder),
    #[error("parameters must be symmetric (equal SNRs, INRs and cooperation capacities)")]
    NotSymmetric,
    #[error(transparent)]
    Mi(#[from] MiError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Fm(#[from] FmError),
}

const SYMMETRY_TOL: f64 = 1e-12;

fn lg(x: f64) -> f64 {
    x.log2()
}

fn region(rows: &[(f64, f64, f64)]) -> Result<RateRegion, BoundsError> {
    let hs = rows
        .iter()
        .map(|&(a1, a2, b)| HalfSpace::new(a1, a2, b))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(RateRegion::new(hs)?)
}

/// Outer bound valid for every channel: two single-rate bounds, four
/// sum-rate bounds, and two bounds each on `2R1 + R2` and `R1 + 2R2`.
pub fn build_outer(p: &ChannelParams) -> RateRegion {
    let (s1, s2, i1, i2) = (p.snr1(), p.snr2(), p.inr1(), p.inr2());
    let (c12, c21) = (p.cb12(), p.cb21());
    let det = p.det_term();

    let r1 = lg(1.0 + s1) + c21.min(lg(1.0 + i2 / (1.0 + s1)));
    let r2 = lg(1.0 + s2) + c12.min(lg(1.0 + i1 / (1.0 + s2)));
    let etw = lg(1.0 + i1 + s1 / (1.0 + i2)) + lg(1.0 + i2 + s2 / (1.0 + i1)) + c21 + c12;
    let z12 = lg(1.0 + s2 + i2) + lg(1.0 + s1 / (1.0 + i2)) + c12;
    let z21 = lg(1.0 + s1 + i1) + lg(1.0 + s2 / (1.0 + i1)) + c21;
    let simo = lg(1.0 + s1 + s2 + i1 + i2 + det);
    let two_r1 = lg(1.0 + i2 + s2 / (1.0 + i1)) + lg(1.0 + s1 / (1.0 + i2)) + lg(1.0 + s1 + i1) + c21 + c12;
    let two_r2 = lg(1.0 + i1 + s1 / (1.0 + i2)) + lg(1.0 + s2 / (1.0 + i1)) + lg(1.0 + s2 + i2) + c12 + c21;
    let cut_r1 = lg(1.0 + s2 / (1.0 + i1) + i2 + s1 + i1 / (1.0 + i1) + det / (1.0 + i1)) + lg(1.0 + s1 + i1) + c21;
    let cut_r2 = lg(1.0 + s1 / (1.0 + i2) + i1 + s2 + i2 / (1.0 + i2) + det / (1.0 + i2)) + lg(1.0 + s2 + i2) + c12;

    region(&[
        (1.0, 0.0, r1),
        (0.0, 1.0, r2),
        (1.0, 1.0, etw),
        (1.0, 1.0, z12),
        (1.0, 1.0, z21),
        (1.0, 1.0, simo),
        (2.0, 1.0, two_r1),
        (1.0, 2.0, two_r2),
        (2.0, 1.0, cut_r1),
        (1.0, 2.0, cut_r2),
    ])
    .expect("outer bounds are finite and nonnegative")
}

/// Two-round region for the given order. Requires the weak regime or the
/// mixed orientation in which the quantizing receiver sees the stronger
/// interference.
pub fn build_two_round(p: &ChannelParams, order: StrategyOrder) -> Result<RateRegion, BoundsError> {
    let regime = p.classify();
    match order {
        StrategyOrder::TwoRound212 => match regime {
            Regime::Weak => weak_two_round(p),
            Regime::Mixed12 => mixed_two_round(p),
            _ => Err(BoundsError::RegimeMismatch { order, regime }),
        },
        StrategyOrder::TwoRound121 => match regime {
            Regime::Weak | Regime::Mixed21 => Ok(build_two_round(&p.swapped(), StrategyOrder::TwoRound212)?.mirrored()),
            _ => Err(BoundsError::RegimeMismatch { order, regime }),
        },
        StrategyOrder::OneRound => Err(BoundsError::NotTwoRound(order)),
    }
}

/// Named terms of the two-round region for the order 2→1→2.
struct TwoRoundTerms {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    e: f64,
    f: f64,
    g: f64,
    h: f64,
    k: f64,
    l: f64,
    m: f64,
    c12: f64,
    x: f64,
}

impl TwoRoundTerms {
    fn new(ctx: &TermContext) -> Result<Self, MiError> {
        let (r1, r2) = (User::One, User::Two);
        Ok(Self {
            a: ctx.term(MiId::OwnGivenOtherCommon, r1)?,
            b: ctx.term(MiId::OwnPrivate, r1)?,
            c: ctx.term(MiId::OwnAndOtherCommonGivenOwnCommon, r2)?,
            d: ctx.term(MiId::OwnGivenOtherCommon, r2)?,
            e: ctx.term(MiId::OtherCommonGivenOwn, r1)?,
            f: ctx.term(MiId::OwnPrivate, r2)?,
            g: ctx.term(MiId::OwnAndOtherCommon, r1)?,
            h: ctx.term(MiId::OwnAndOtherCommonWithQuant, r1)?,
            k: ctx.term(MiId::OwnAndOtherCommonGivenOwnCommon, r1)?,
            l: ctx.term(MiId::OwnAndOtherCommonWithQuantGivenOwnCommon, r1)?,
            m: ctx.term(MiId::OwnAndOtherCommon, r2)?,
            c12: ctx.params.cb12(),
            x: ctx.coop_surplus(r1),
        })
    }
}

fn weak_two_round(p: &ChannelParams) -> Result<RateRegion, BoundsError> {
    let t = TwoRoundTerms::new(&TermContext::new(p))?;
    region(&[
        (1.0, 0.0, t.a),
        (1.0, 0.0, t.b + t.c + t.c12),
        (0.0, 1.0, t.d + t.c12),
        (0.0, 1.0, t.e + t.f),
        (1.0, 1.0, t.g + t.f + t.x),
        (1.0, 1.0, t.h + t.f),
        (1.0, 1.0, t.k + t.c + t.c12 + t.x),
        (1.0, 1.0, t.l + t.c + t.c12),
        (1.0, 1.0, t.b + t.m + t.c12),
        (1.0, 1.0, t.b + t.e + t.c + t.c12),
        (2.0, 1.0, t.g + t.b + t.c + t.c12 + t.x),
        (2.0, 1.0, t.h + t.b + t.c + t.c12),
        (1.0, 2.0, t.k + t.m + t.f + t.c12 + t.x),
        (1.0, 2.0, t.k + t.e + t.c + t.f + t.c12 + t.x),
        (1.0, 2.0, t.l + t.m + t.f + t.c12),
        (1.0, 2.0, t.l + t.e + t.c + t.f + t.c12),
    ])
}

fn mixed_two_round(p: &ChannelParams) -> Result<RateRegion, BoundsError> {
    let ctx = TermContext::new(p);
    let (r1, r2) = (User::One, User::Two);
    let own_given_other = ctx.term(MiId::OwnGivenOther, r1)?;
    let own_private = ctx.term(MiId::OwnPrivate, r1)?;
    let other_given_own = ctx.term(MiId::OtherGivenOwn, r1)?;
    let both = ctx.term(MiId::Both, r1)?;
    let both_quant = ctx.term(MiId::BothWithQuant, r1)?;
    let k = ctx.term(MiId::OwnAndOtherCommonGivenOwnCommon, r1)?;
    let l = ctx.term(MiId::OwnAndOtherCommonWithQuantGivenOwnCommon, r1)?;
    let common_at_2 = ctx.term(MiId::OtherCommonGivenOwn, r2)?;
    let own_at_2 = ctx.term(MiId::OwnGivenOtherCommon, r2)?;
    let m = ctx.term(MiId::OwnAndOtherCommon, r2)?;
    let c12 = p.cb12();
    let x = ctx.coop_surplus(r1);
    region(&[
        (1.0, 0.0, own_given_other),
        (1.0, 0.0, own_private + common_at_2 + c12),
        (0.0, 1.0, other_given_own),
        (0.0, 1.0, own_at_2 + c12),
        (1.0, 1.0, both + x),
        (1.0, 1.0, both_quant),
        (1.0, 1.0, own_private + m + c12),
        (1.0, 1.0, k + common_at_2 + c12 + x),
        (1.0, 1.0, l + common_at_2 + c12),
        (1.0, 2.0, k + m + c12 + x),
        (1.0, 2.0, l + m + c12),
    ])
}

/// One-round region with both users sending only common messages; the
/// strong-regime inner region and the compound-MAC inner region.
pub fn build_one_round(p: &ChannelParams) -> RateRegion {
    let ctx = TermContext::all_common(p);
    let t = |id, rx| {
        ctx.term(id, rx)
            .expect("all-common terms are valid for an all-common split")
    };
    let (r1, r2) = (User::One, User::Two);
    let x1 = ctx.coop_surplus(r1);
    let x2 = ctx.coop_surplus(r2);
    region(&[
        (0.0, 1.0, t(MiId::OtherGivenOwn, r1) + x1),
        (0.0, 1.0, t(MiId::OtherGivenOwnWithQuant, r1)),
        (1.0, 0.0, t(MiId::OwnGivenOther, r1) + x1),
        (1.0, 0.0, t(MiId::OwnGivenOtherWithQuant, r1)),
        (1.0, 1.0, t(MiId::Both, r1) + x1),
        (1.0, 1.0, t(MiId::BothWithQuant, r1)),
        (1.0, 0.0, t(MiId::OtherGivenOwn, r2) + x2),
        (1.0, 0.0, t(MiId::OtherGivenOwnWithQuant, r2)),
        (0.0, 1.0, t(MiId::OwnGivenOther, r2) + x2),
        (0.0, 1.0, t(MiId::OwnGivenOtherWithQuant, r2)),
        (1.0, 1.0, t(MiId::Both, r2) + x2),
        (1.0, 1.0, t(MiId::BothWithQuant, r2)),
    ])
    .expect("one-round bounds are finite and nonnegative")
}

/// Achievable region matched to the interference regime.
pub fn build_inner(p: &ChannelParams) -> RateRegion {
    let two_round = |o| build_two_round(p, o).expect("order matches regime");
    match p.classify() {
        Regime::Weak => conv_union(
            &two_round(StrategyOrder::TwoRound212),
            &two_round(StrategyOrder::TwoRound121),
        ),
        Regime::Mixed12 => two_round(StrategyOrder::TwoRound212),
        Regime::Mixed21 => two_round(StrategyOrder::TwoRound121),
        Regime::Strong => build_one_round(p),
    }
}

/// Inner and outer regions of the compound MAC in which both receivers
/// decode both messages.
#[derive(Debug, Clone)]
pub struct CmacRegions {
    pub inner: RateRegion,
    pub outer: RateRegion,
}

pub fn build_cmac(p: &ChannelParams) -> CmacRegions {
    let (s1, s2, i1, i2) = (p.snr1(), p.snr2(), p.inr1(), p.inr2());
    let (c12, c21) = (p.cb12(), p.cb21());
    let r1 = (lg(1.0 + s1) + c21).min(lg(1.0 + i2) + c12).min(lg(1.0 + s1 + i2));
    let r2 = (lg(1.0 + s2) + c12).min(lg(1.0 + i1) + c21).min(lg(1.0 + s2 + i1));
    let outer = region(&[
        (1.0, 0.0, r1),
        (0.0, 1.0, r2),
        (1.0, 1.0, lg(1.0 + s1 + i1) + c21),
        (1.0, 1.0, lg(1.0 + s2 + i2) + c12),
        (1.0, 1.0, lg(1.0 + s1 + i1 + s2 + i2 + p.det_term())),
    ])
    .expect("cut-set bounds are finite and nonnegative");
    CmacRegions {
        inner: build_one_round(p),
        outer,
    }
}

fn require_symmetric(p: &ChannelParams) -> Result<(), BoundsError> {
    if p.is_symmetric(SYMMETRY_TOL) {
        Ok(())
    } else {
        Err(BoundsError::NotSymmetric)
    }
}

/// Upper bound on the symmetric capacity; the true value lies within two
/// bits below it.
pub fn sym_upper(p: &ChannelParams) -> Result<f64, BoundsError> {
    require_symmetric(p)?;
    let (s, i, c) = (p.snr1(), p.inr1(), p.cb12());
    let terms = sym_upper_terms(s, i, c, p.det_term());
    Ok(terms.into_iter().fold(f64::INFINITY, f64::min))
}

/// The four expressions whose minimum is [`sym_upper`].
pub fn sym_upper_terms(s: f64, i: f64, c: f64, det: f64) -> [f64; 4] {
    [
        lg(1.0 + s) + c.min(lg(1.0 + i / (1.0 + s))),
        lg(1.0 + i + s / (1.0 + i)) + c,
        0.5 * lg(1.0 + s + i) + 0.5 * lg(1.0 + s / (1.0 + i)) + 0.5 * c,
        0.5 * lg(1.0 + 2.0 * s + 2.0 * i + det),
    ]
}

/// Symmetric rate guaranteed by the one-round strategy: within three bits
/// of [`sym_upper`], and within one bit when `SNR <= INR`.
pub fn sym_one_round(p: &ChannelParams) -> Result<f64, BoundsError> {
    require_symmetric(p)?;
    if p.snr1() <= p.inr1() {
        return Ok(build_one_round(p).max_symmetric());
    }
    let ctx = TermContext::new(p);
    let r1 = User::One;
    let x = ctx.coop_surplus(r1);
    let k = ctx.term(MiId::OwnAndOtherCommonGivenOwnCommon, r1)?;
    let l = ctx.term(MiId::OwnAndOtherCommonWithQuantGivenOwnCommon, r1)?;
    let a = ctx.term(MiId::OwnGivenOtherCommon, r1)?;
    let g = ctx.term(MiId::OwnAndOtherCommon, r1)?;
    let h = ctx.term(MiId::OwnAndOtherCommonWithQuant, r1)?;
    let b = ctx.term(MiId::OwnPrivate, r1)?;
    let half_sum = 0.5 * (g + x).min(h) + 0.5 * b;
    Ok((k + x).min(l).min(a).min(half_sum).max(0.0))
}

/// Rate-split constraints of the two-round strategy with order 2→1→2 over
/// `(R1, R2, R1c, R2c)`, after substituting `R_ip = R_i - R_ic` and
/// keeping the unquantized arm of the three constraints whose quantized arm
/// is never needed.
pub fn two_round_split_system(p: &ChannelParams) -> Result<IneqSystem, BoundsError> {
    let t = TwoRoundTerms::new(&TermContext::new(p))?;
    let mut s = IneqSystem::nonnegative(&["R1", "R2", "R1c", "R2c"])?;
    // R_ip >= 0
    s.add(&[("R1c", 1.0), ("R1", -1.0)], 0.0)?;
    s.add(&[("R2c", 1.0), ("R2", -1.0)], 0.0)?;

    let r1p = [("R1", 1.0), ("R1c", -1.0)];
    let r2p = [("R2", 1.0), ("R2c", -1.0)];
    let with = |base: &[(&'static str, f64)], extra: &[(&'static str, f64)]| {
        let mut v = base.to_vec();
        v.extend_from_slice(extra);
        v
    };

    // receiver 1
    s.add(&r1p, t.b)?;
    s.add(&[("R2c", 1.0)], t.e)?;
    s.add(&with(&r1p, &[("R2c", 1.0)]), t.k + t.x)?;
    s.add(&with(&r1p, &[("R2c", 1.0)]), t.l)?;
    s.add(&with(&r1p, &[("R1c", 1.0)]), t.a)?;
    s.add(&with(&r1p, &[("R1c", 1.0), ("R2c", 1.0)]), t.g + t.x)?;
    s.add(&with(&r1p, &[("R1c", 1.0), ("R2c", 1.0)]), t.h)?;
    // receiver 2
    s.add(&r2p, t.f)?;
    s.add(&with(&r2p, &[("R1c", 1.0)]), t.c + t.c12)?;
    s.add(&with(&r2p, &[("R2c", 1.0)]), t.d + t.c12)?;
    s.add(&with(&r2p, &[("R1c", 1.0), ("R2c", 1.0)]), t.m + t.c12)?;
    Ok(s)
}

/// Fourier–Motzkin projection of [`two_round_split_system`] onto
/// `(R1, R2)`.
pub fn two_round_by_elimination(p: &ChannelParams) -> Result<RateRegion, BoundsError> {
    let s = two_round_split_system(p)?;
    Ok(s.eliminate_all(&["R1c", "R2c"])?.to_region()?)
}
