//! Closed-form mutual-information terms for Gaussian inputs.
//!
//! Each transmitter uses rate splitting: `x_i = x_ic + x_ip` with common
//! power `1 - Q_ip` and private power `Q_ip`. A cooperating receiver may
//! forward a quantized copy `ŷ_j = y_j + ẑ_j` of its observation with
//! quantization noise variance `Δ_j`.
//!
//! Terms are written from the point of view of a receiver `i` that decodes
//! with side information; `j` is always the other user. All logs are base 2.

use serde::Serialize;

use crate::channel::{ChannelParams, PowerSplit, User};

/// Identifier of a closed-form mutual-information term, evaluated at
/// receiver `i` with `j` the other user.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MiId {
    /// `I(x_i; y_i | x_jc)`
    OwnGivenOtherCommon,
    /// `I(x_i; y_i | x_ic, x_jc)`
    OwnPrivate,
    /// `I(x_jc; y_i | x_i)`
    OtherCommonGivenOwn,
    /// `I(x_i, x_jc; y_i)`
    OwnAndOtherCommon,
    /// `I(x_i, x_jc; y_i | x_ic)`
    OwnAndOtherCommonGivenOwnCommon,
    /// `I(x_i, x_jc; y_i, ŷ_j)`
    OwnAndOtherCommonWithQuant,
    /// `I(x_i, x_jc; y_i, ŷ_j | x_ic)`
    OwnAndOtherCommonWithQuantGivenOwnCommon,
    /// `I(x_i; y_i | x_j)`; needs user `j` to be all common.
    OwnGivenOther,
    /// `I(x_j; y_i | x_i)`; needs user `j` to be all common.
    OtherGivenOwn,
    /// `I(x_i, x_j; y_i)`; needs user `j` to be all common.
    Both,
    /// `I(x_i, x_j; y_i, ŷ_j)`; needs user `j` to be all common.
    BothWithQuant,
    /// `I(x_i; y_i, ŷ_j | x_j)`; needs user `j` to be all common.
    OwnGivenOtherWithQuant,
    /// `I(x_j; y_i, ŷ_j | x_i)`; needs user `j` to be all common.
    OtherGivenOwnWithQuant,
}

impl MiId {
    pub const ALL: [MiId; 13] = [
        MiId::OwnGivenOtherCommon,
        MiId::OwnPrivate,
        MiId::OtherCommonGivenOwn,
        MiId::OwnAndOtherCommon,
        MiId::OwnAndOtherCommonGivenOwnCommon,
        MiId::OwnAndOtherCommonWithQuant,
        MiId::OwnAndOtherCommonWithQuantGivenOwnCommon,
        MiId::OwnGivenOther,
        MiId::OtherGivenOwn,
        MiId::Both,
        MiId::BothWithQuant,
        MiId::OwnGivenOtherWithQuant,
        MiId::OtherGivenOwnWithQuant,
    ];

    /// Whether the term treats the other user's message as a whole, which
    /// is only meaningful when that user sends no private codeword.
    pub fn requires_all_common(self) -> bool {
        matches!(
            self,
            MiId::OwnGivenOther
                | MiId::OtherGivenOwn
                | MiId::Both
                | MiId::BothWithQuant
                | MiId::OwnGivenOtherWithQuant
                | MiId::OtherGivenOwnWithQuant
        )
    }

    /// Whether the term involves the other receiver's quantized observation.
    pub fn uses_quantizer(self) -> bool {
        matches!(
            self,
            MiId::OwnAndOtherCommonWithQuant
                | MiId::OwnAndOtherCommonWithQuantGivenOwnCommon
                | MiId::BothWithQuant
                | MiId::OwnGivenOtherWithQuant
                | MiId::OtherGivenOwnWithQuant
        )
    }
}

/// A catalogue term evaluated at a specific receiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct MiTerm {
    pub id: MiId,
    pub receiver: User,
}

impl MiTerm {
    pub fn new(id: MiId, receiver: User) -> Self {
        Self { id, receiver }
    }
}

/// Quantize-binning parameters of the receiver that quantizes first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantizerConfig {
    /// Receiver whose observation is quantized.
    pub quantizer: User,
    /// Quantization noise variance `Δ`.
    pub delta: f64,
    /// Rate loss `ξ` of quantizing instead of forwarding the exact
    /// observation, in bits.
    pub xi: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MiError {
    #[error("{term:?} at receiver {receiver} needs user {other} to be all common, but its private power is {q_p}")]
    NotAllCommon {
        term: MiId,
        receiver: User,
        other: User,
        q_p: f64,
    },
    #[error("{term:?} at receiver {receiver} needs the quantizer of receiver {expected}, got receiver {got}")]
    QuantizerMismatch {
        term: MiId,
        receiver: User,
        expected: User,
        got: User,
    },
    #[error("{term:?} at receiver {receiver} needs a quantizer but none was supplied")]
    MissingQuantizer { term: MiId, receiver: User },
    #[error("{term:?} at receiver {receiver} assumes unit quantization noise, got {delta}")]
    DistortionMismatch { term: MiId, receiver: User, delta: f64 },
}

/// Distortion `Δ_j = max{SNR_jp, 1}` and rate loss `ξ` when receiver `j`
/// quantizes its observation for the other receiver `i`.
pub fn distortion_and_xi(p: &ChannelParams, split: &PowerSplit, quantizer: User) -> QuantizerConfig {
    let j = quantizer;
    let i = j.other();
    let delta = split.snr_p(j).max(1.0);
    let base = (1.0 + delta) / delta;
    let arg = if p.snr(j) > p.inr(i) {
        base + split.snr_p(j) / ((1.0 + split.inr_p(i)) * delta)
    } else {
        base
    };
    QuantizerConfig {
        quantizer: j,
        delta,
        xi: arg.log2(),
    }
}

/// `log2(num / den)` for positive arguments, computed without
/// catastrophic rounding when the ratio is close to one.
fn log2_ratio(num: f64, den: f64) -> f64 {
    let d = (num - den) / den;
    d.ln_1p() / std::f64::consts::LN_2
}

/// Evaluates a catalogue term. `quant` must describe the quantizer of the
/// other receiver whenever the term involves `ŷ_j`.
pub fn eval_mi(
    term: MiTerm,
    p: &ChannelParams,
    split: &PowerSplit,
    quant: Option<&QuantizerConfig>,
) -> Result<f64, MiError> {
    let i = term.receiver;
    let j = i.other();
    if term.id.requires_all_common() && !split.is_all_common(j) {
        return Err(MiError::NotAllCommon {
            term: term.id,
            receiver: i,
            other: j,
            q_p: split.q_p(j),
        });
    }
    let delta = if term.id.uses_quantizer() {
        let q = quant.ok_or(MiError::MissingQuantizer {
            term: term.id,
            receiver: i,
        })?;
        if q.quantizer != j {
            return Err(MiError::QuantizerMismatch {
                term: term.id,
                receiver: i,
                expected: j,
                got: q.quantizer,
            });
        }
        if term.id.requires_all_common() && q.delta != 1.0 {
            return Err(MiError::DistortionMismatch {
                term: term.id,
                receiver: i,
                delta: q.delta,
            });
        }
        q.delta
    } else {
        1.0
    };

    let s = p.snr(i);
    let n = p.inr(i);
    let sj = p.snr(j);
    let nj = p.inr(j);
    let sp = split.snr_p(i);
    let np = split.inr_p(i);
    let sjp = split.snr_p(j);
    let njp = split.inr_p(j);
    let det = p.det_term();

    let v = match term.id {
        MiId::OwnGivenOtherCommon => log2_ratio(1.0 + np + s, 1.0 + np),
        MiId::OwnPrivate => log2_ratio(1.0 + np + sp, 1.0 + np),
        MiId::OtherCommonGivenOwn => log2_ratio(1.0 + n, 1.0 + np),
        MiId::OwnAndOtherCommon => log2_ratio(1.0 + s + n, 1.0 + np),
        MiId::OwnAndOtherCommonGivenOwnCommon => log2_ratio(1.0 + sp + n, 1.0 + np),
        MiId::OwnAndOtherCommonWithQuant => log2_ratio(
            (1.0 + delta) * (1.0 + s + n) + sj + nj + det,
            (1.0 + delta) * (1.0 + np) + sjp,
        ),
        MiId::OwnAndOtherCommonWithQuantGivenOwnCommon => log2_ratio(
            (1.0 + delta) * (1.0 + sp + n) + sj + njp + det * split.q_p(i),
            (1.0 + delta) * (1.0 + np) + sjp,
        ),
        MiId::OwnGivenOther => s.ln_1p() / std::f64::consts::LN_2,
        MiId::OtherGivenOwn => n.ln_1p() / std::f64::consts::LN_2,
        MiId::Both => (s + n).ln_1p() / std::f64::consts::LN_2,
        MiId::BothWithQuant => log2_ratio(2.0 * (1.0 + s + n) + sj + nj + det, 2.0),
        MiId::OwnGivenOtherWithQuant => log2_ratio(2.0 + 2.0 * s + nj, 2.0),
        MiId::OtherGivenOwnWithQuant => log2_ratio(2.0 + 2.0 * n + sj, 2.0),
    };
    Ok(v.max(0.0))
}

/// Natural superposition split of a scenario together with both
/// receivers' quantizers, the bundle every region constructor needs.
#[derive(Debug, Clone, Copy)]
pub struct TermContext {
    pub params: ChannelParams,
    pub split: PowerSplit,
    quant: [QuantizerConfig; 2],
}

impl TermContext {
    pub fn new(params: &ChannelParams) -> Self {
        Self::with_split(params, PowerSplit::for_channel(params))
    }

    pub fn all_common(params: &ChannelParams) -> Self {
        Self::with_split(params, PowerSplit::all_common(params))
    }

    pub fn with_split(params: &ChannelParams, split: PowerSplit) -> Self {
        let quant = [
            distortion_and_xi(params, &split, User::One),
            distortion_and_xi(params, &split, User::Two),
        ];
        Self {
            params: *params,
            split,
            quant,
        }
    }

    /// Quantizer of receiver `u`.
    pub fn quantizer(&self, u: User) -> &QuantizerConfig {
        &self.quant[u.index()]
    }

    /// Term `id` at receiver `rx`, with the other receiver's quantizer.
    pub fn term(&self, id: MiId, rx: User) -> Result<f64, MiError> {
        eval_mi(
            MiTerm::new(id, rx),
            &self.params,
            &self.split,
            Some(self.quantizer(rx.other())),
        )
    }

    /// `(C_{j->i} - ξ_j)^+`: cooperation surplus available to receiver
    /// `rx` after paying for the quantized observation of the other one.
    pub fn coop_surplus(&self, rx: User) -> f64 {
        let j = rx.other();
        (self.params.coop_from(j) - self.quantizer(j).xi).max(0.0)
    }
}
