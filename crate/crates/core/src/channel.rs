//! Channel scenarios for the two-user Gaussian interference channel with
//! conferencing decoders.
//!
//! A scenario is fully described by seven numbers: the two direct-link SNRs,
//! the two cross-link INRs (all linear power ratios), the aggregate phase of
//! the channel matrix, and the two receiver-cooperation link capacities in
//! bits per channel use. Every rate expression in this crate depends on the
//! individual link phases only through `|h11 h22 - h12 h21|^2`, which in turn
//! depends only on the aggregate phase, so the four complex gains are never
//! stored.
//!
//! Conventions: `INR_i = |h_ij|^2` is the interference power seen at
//! receiver `i`, and `cb12` is the capacity of the link from receiver 1 to
//! receiver 2.

use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// User (equivalently transmitter/receiver pair) index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum User {
    One,
    Two,
}

impl User {
    pub const BOTH: [User; 2] = [User::One, User::Two];

    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }

    /// Zero-based array index.
    pub fn index(self) -> usize {
        match self {
            User::One => 0,
            User::Two => 1,
        }
    }
}

impl fmt::Display for User {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            User::One => write!(f, "1"),
            User::Two => write!(f, "2"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ChannelError {
    #[error("{name} must be finite and non-negative, got {value}")]
    InvalidPower { name: &'static str, value: f64 },
    #[error("{name} must be finite and non-negative, got {value}")]
    InvalidCapacity { name: &'static str, value: f64 },
    #[error("theta must be finite, got {0}")]
    InvalidPhase(f64),
}

/// Interference regime of a scenario.
///
/// Ties `SNR_i = INR_j` fall on the non-strict side, i.e. into the mixed or
/// strong cases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    /// `SNR1 > INR2` and `SNR2 > INR1`.
    Weak,
    /// `SNR1 > INR2` and `SNR2 <= INR1`.
    Mixed12,
    /// `SNR1 <= INR2` and `SNR2 > INR1`.
    Mixed21,
    /// `SNR1 <= INR2` and `SNR2 <= INR1`.
    Strong,
}

impl Regime {
    pub fn is_mixed(self) -> bool {
        matches!(self, Regime::Mixed12 | Regime::Mixed21)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Weak => "weak",
            Regime::Mixed12 => "mixed12",
            Regime::Mixed21 => "mixed21",
            Regime::Strong => "strong",
        };
        f.write_str(s)
    }
}

/// Channel parameters of one scenario. Immutable once constructed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelParams {
    snr: [f64; 2],
    inr: [f64; 2],
    theta: f64,
    cb12: f64,
    cb21: f64,
}

fn check_power(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(ChannelError::InvalidPower { name, value })
    }
}

fn check_capacity(name: &'static str, value: f64) -> Result<f64, ChannelError> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(ChannelError::InvalidCapacity { name, value })
    }
}

/// Reduces an angle into `[0, 2π)`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    // rem_euclid can round up to exactly TAU for tiny negative inputs
    if t >= TAU {
        0.0
    } else {
        t
    }
}

/// `10 log10(x)`.
pub fn to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Inverse of [`to_db`].
pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

impl ChannelParams {
    pub fn new(
        snr1: f64,
        snr2: f64,
        inr1: f64,
        inr2: f64,
        theta: f64,
        cb12: f64,
        cb21: f64,
    ) -> Result<Self, ChannelError> {
        if !theta.is_finite() {
            return Err(ChannelError::InvalidPhase(theta));
        }
        Ok(Self {
            snr: [check_power("snr1", snr1)?, check_power("snr2", snr2)?],
            inr: [check_power("inr1", inr1)?, check_power("inr2", inr2)?],
            theta: normalize_angle(theta),
            cb12: check_capacity("cb12", cb12)?,
            cb21: check_capacity("cb21", cb21)?,
        })
    }

    /// Symmetric scenario: `SNR1 = SNR2`, `INR1 = INR2`, `cb12 = cb21`.
    pub fn symmetric(snr: f64, inr: f64, theta: f64, cb: f64) -> Result<Self, ChannelError> {
        Self::new(snr, snr, inr, inr, theta, cb, cb)
    }

    /// Builds a scenario from powers given in dB.
    pub fn from_db(
        snr1_db: f64,
        snr2_db: f64,
        inr1_db: f64,
        inr2_db: f64,
        theta: f64,
        cb12: f64,
        cb21: f64,
    ) -> Result<Self, ChannelError> {
        Self::new(
            from_db(snr1_db),
            from_db(snr2_db),
            from_db(inr1_db),
            from_db(inr2_db),
            theta,
            cb12,
            cb21,
        )
    }

    /// Builds a scenario from the four complex link gains; `h[i][j]` is the
    /// gain from transmitter `j+1` to receiver `i+1`.
    pub fn from_gains(h: [[Complex64; 2]; 2], cb12: f64, cb21: f64) -> Result<Self, ChannelError> {
        let theta = h[0][0].arg() + h[1][1].arg() - h[0][1].arg() - h[1][0].arg();
        Self::new(
            h[0][0].norm_sqr(),
            h[1][1].norm_sqr(),
            h[0][1].norm_sqr(),
            h[1][0].norm_sqr(),
            theta,
            cb12,
            cb21,
        )
    }

    /// One realisation of complex gains consistent with these parameters:
    /// all phase is put on `h22`.
    pub fn gains(&self) -> [[Complex64; 2]; 2] {
        [
            [
                Complex64::new(self.snr[0].sqrt(), 0.0),
                Complex64::new(self.inr[0].sqrt(), 0.0),
            ],
            [
                Complex64::new(self.inr[1].sqrt(), 0.0),
                Complex64::from_polar(self.snr[1].sqrt(), self.theta),
            ],
        ]
    }

    pub fn snr(&self, u: User) -> f64 {
        self.snr[u.index()]
    }

    pub fn inr(&self, u: User) -> f64 {
        self.inr[u.index()]
    }

    pub fn snr1(&self) -> f64 {
        self.snr[0]
    }
    pub fn snr2(&self) -> f64 {
        self.snr[1]
    }
    pub fn inr1(&self) -> f64 {
        self.inr[0]
    }
    pub fn inr2(&self) -> f64 {
        self.inr[1]
    }
    pub fn theta(&self) -> f64 {
        self.theta
    }
    pub fn cb12(&self) -> f64 {
        self.cb12
    }
    pub fn cb21(&self) -> f64 {
        self.cb21
    }

    /// Capacity of the cooperation link leaving receiver `from`.
    pub fn coop_from(&self, from: User) -> f64 {
        match from {
            User::One => self.cb12,
            User::Two => self.cb21,
        }
    }

    /// Same channel with the user labels exchanged. The aggregate phase is
    /// invariant under the relabelling.
    pub fn swapped(&self) -> Self {
        Self {
            snr: [self.snr[1], self.snr[0]],
            inr: [self.inr[1], self.inr[0]],
            theta: self.theta,
            cb12: self.cb21,
            cb21: self.cb12,
        }
    }

    pub fn with_coop(&self, cb12: f64, cb21: f64) -> Result<Self, ChannelError> {
        Ok(Self {
            cb12: check_capacity("cb12", cb12)?,
            cb21: check_capacity("cb21", cb21)?,
            ..*self
        })
    }

    /// True when both users see identical link strengths and cooperation
    /// capacities, up to a relative tolerance.
    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        let close = |a: f64, b: f64| (a - b).abs() <= rel_tol * a.abs().max(b.abs());
        close(self.snr[0], self.snr[1]) && close(self.inr[0], self.inr[1]) && close(self.cb12, self.cb21)
    }

    pub fn classify(&self) -> Regime {
        match (self.snr[0] > self.inr[1], self.snr[1] > self.inr[0]) {
            (true, true) => Regime::Weak,
            (true, false) => Regime::Mixed12,
            (false, true) => Regime::Mixed21,
            (false, false) => Regime::Strong,
        }
    }

    /// `|h11 h22 - h12 h21|^2`.
    ///
    /// Evaluated as `(a - b)^2 + 4 sin^2(Θ/2) a b` with `a = sqrt(SNR1 SNR2)`
    /// and `b = sqrt(INR1 INR2)`, which is never negative and is exactly zero
    /// for a rank-one channel.
    pub fn det_term(&self) -> f64 {
        let a = (self.snr[0] * self.snr[1]).sqrt();
        let b = (self.inr[0] * self.inr[1]).sqrt();
        let s = (0.5 * self.theta).sin();
        (a - b) * (a - b) + 4.0 * s * s * a * b
    }

    pub fn power_split(&self) -> PowerSplit {
        PowerSplit::for_channel(self)
    }

    pub fn to_scenario(&self) -> Scenario {
        Scenario {
            snr1_db: to_db(self.snr[0]),
            snr2_db: to_db(self.snr[1]),
            inr1_db: to_db(self.inr[0]),
            inr2_db: to_db(self.inr[1]),
            theta_rad: self.theta,
            cb12_bits: self.cb12,
            cb21_bits: self.cb21,
        }
    }
}

/// Superposition power split between common and private codewords.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerSplit {
    q_p: [f64; 2],
    snr_p: [f64; 2],
    inr_p: [f64; 2],
}

impl PowerSplit {
    /// Private power `Q_ip = min{1, 1/INR_j}` when `SNR_i > INR_j`, else 0,
    /// so the private interference arrives at or below the noise level.
    pub fn for_channel(p: &ChannelParams) -> Self {
        let q = |i: User| {
            let j = i.other();
            if p.snr(i) > p.inr(j) {
                (1.0 / p.inr(j)).min(1.0)
            } else {
                0.0
            }
        };
        Self::with_private_power(p, [q(User::One), q(User::Two)])
    }

    /// Everything common, no superposition.
    pub fn all_common(p: &ChannelParams) -> Self {
        Self::with_private_power(p, [0.0, 0.0])
    }

    fn with_private_power(p: &ChannelParams, q_p: [f64; 2]) -> Self {
        Self {
            q_p,
            snr_p: [p.snr1() * q_p[0], p.snr2() * q_p[1]],
            inr_p: [p.inr1() * q_p[1], p.inr2() * q_p[0]],
        }
    }

    /// Private power fraction `Q_ip` of user `u`.
    pub fn q_p(&self, u: User) -> f64 {
        self.q_p[u.index()]
    }

    /// Common power fraction `Q_ic = 1 - Q_ip`.
    pub fn q_c(&self, u: User) -> f64 {
        1.0 - self.q_p[u.index()]
    }

    /// `SNR_ip = SNR_i Q_ip`: own private power at receiver `u`.
    pub fn snr_p(&self, u: User) -> f64 {
        self.snr_p[u.index()]
    }

    /// `INR_ip = INR_i Q_jp`: private interference power at receiver `u`.
    pub fn inr_p(&self, u: User) -> f64 {
        self.inr_p[u.index()]
    }

    pub fn is_all_common(&self, u: User) -> bool {
        self.q_p[u.index()] == 0.0
    }
}

/// Scenario file schema (dB powers, radians, bits).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub snr1_db: f64,
    pub snr2_db: f64,
    pub inr1_db: f64,
    pub inr2_db: f64,
    pub theta_rad: f64,
    pub cb12_bits: f64,
    pub cb21_bits: f64,
}

impl Scenario {
    pub fn to_params(&self) -> Result<ChannelParams, ChannelError> {
        ChannelParams::from_db(
            self.snr1_db,
            self.snr2_db,
            self.inr1_db,
            self.inr2_db,
            self.theta_rad,
            self.cb12_bits,
            self.cb21_bits,
        )
    }
}
