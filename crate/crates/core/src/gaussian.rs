//! Generic jointly-Gaussian mutual-information evaluator.
//!
//! Builds the linear model of the channel explicitly (codewords, receiver
//! noise, quantization noise and genie signals as independent circularly
//! symmetric Gaussians) and evaluates
//! `I(A; B | C) = log det Cov(B | C) - log det Cov(B | A, C)` from
//! covariance matrices. It shares no algebra with the closed forms in
//! [`crate::mi`] and serves as their reference.

use num_complex::Complex64;

use crate::channel::{ChannelParams, PowerSplit, User};

const N_BASE: usize = 10;

/// Transmitted codeword components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Source {
    Common(User),
    Private(User),
}

impl Source {
    /// Both components of a user's input.
    pub fn full(u: User) -> [Source; 2] {
        [Source::Common(u), Source::Private(u)]
    }

    fn base_index(self) -> usize {
        match self {
            Source::Common(User::One) => 0,
            Source::Private(User::One) => 1,
            Source::Common(User::Two) => 2,
            Source::Private(User::Two) => 3,
        }
    }
}

/// Observable signals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Obs {
    /// Channel output `y_i`.
    Y(User),
    /// Quantized output `ŷ_i = y_i + ẑ_i`.
    YHat(User),
    /// User `i`'s signal as seen at the other receiver, with that receiver's
    /// noise: `h_ji x_i + z_j`.
    Genie(User),
    /// Same as [`Obs::Genie`] but with fresh, independent unit noise.
    GenieIndep(User),
}

/// Linear Gaussian model of one scenario.
#[derive(Debug, Clone)]
pub struct GaussianModel {
    h: [[Complex64; 2]; 2],
    var: [f64; N_BASE],
}

impl GaussianModel {
    /// `deltas[i]` is the quantization noise variance of receiver `i`.
    pub fn new(params: &ChannelParams, split: &PowerSplit, deltas: [f64; 2]) -> Self {
        let var = [
            split.q_c(User::One),
            split.q_p(User::One),
            split.q_c(User::Two),
            split.q_p(User::Two),
            1.0,
            1.0,
            deltas[0],
            deltas[1],
            1.0,
            1.0,
        ];
        Self { h: params.gains(), var }
    }

    /// Every input all common, unit quantization noise.
    pub fn all_common(params: &ChannelParams) -> Self {
        Self::new(params, &PowerSplit::all_common(params), [1.0, 1.0])
    }

    fn coefficients(&self, o: Obs) -> [Complex64; N_BASE] {
        let zero = Complex64::new(0.0, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let mut c = [zero; N_BASE];
        let put_user = |c: &mut [Complex64; N_BASE], u: User, g: Complex64| {
            c[Source::Common(u).base_index()] = g;
            c[Source::Private(u).base_index()] = g;
        };
        let h = &self.h;
        match o {
            Obs::Y(rx) | Obs::YHat(rx) => {
                let r = rx.index();
                put_user(&mut c, User::One, h[r][0]);
                put_user(&mut c, User::Two, h[r][1]);
                c[4 + r] = one;
                if let Obs::YHat(_) = o {
                    c[6 + r] = one;
                }
            }
            Obs::Genie(u) | Obs::GenieIndep(u) => {
                let tx = u.index();
                let rx = u.other().index();
                put_user(&mut c, u, h[rx][tx]);
                match o {
                    Obs::Genie(_) => c[4 + rx] = one,
                    _ => c[8 + rx] = one,
                }
            }
        }
        c
    }

    fn covariance(&self, obs: &[Obs], known: &[Source]) -> Vec<Vec<Complex64>> {
        let mut var = self.var;
        for s in known {
            var[s.base_index()] = 0.0;
        }
        let coeffs: Vec<_> = obs.iter().map(|&o| self.coefficients(o)).collect();
        let n = obs.len();
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for a in 0..n {
            for b in 0..n {
                m[a][b] = (0..N_BASE).map(|k| coeffs[a][k] * coeffs[b][k].conj() * var[k]).sum();
            }
        }
        m
    }

    /// `log2 det Cov(obs | known)` where `known` sources are removed and
    /// `given` observations are conditioned on.
    fn cond_logdet(&self, obs: &[Obs], known: &[Source], given: &[Obs]) -> f64 {
        let mut joint: Vec<Obs> = obs.to_vec();
        joint.extend_from_slice(given);
        let full = log2_det(self.covariance(&joint, known));
        let cond = if given.is_empty() {
            0.0
        } else {
            log2_det(self.covariance(given, known))
        };
        full - cond
    }

    /// `I(a; b | given_src, given_obs)` in bits.
    pub fn mutual_info(&self, a: &[Source], b: &[Obs], given_src: &[Source], given_obs: &[Obs]) -> f64 {
        let mut known_with_a = given_src.to_vec();
        known_with_a.extend_from_slice(a);
        self.cond_logdet(b, given_src, given_obs) - self.cond_logdet(b, &known_with_a, given_obs)
    }

    /// `log2 det Cov(b | given_src, given_obs)`, i.e. the conditional
    /// differential entropy of `b` up to the constant `n log2(πe)`.
    pub fn cond_logdet_bits(&self, b: &[Obs], given_src: &[Source], given_obs: &[Obs]) -> f64 {
        self.cond_logdet(b, given_src, given_obs)
    }
}

/// `log2 |det m|` by LU decomposition with partial pivoting.
fn log2_det(mut m: Vec<Vec<Complex64>>) -> f64 {
    let n = m.len();
    let mut acc = 0.0;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| m[a][col].norm().total_cmp(&m[b][col].norm()))
            .expect("non-empty range");
        m.swap(col, pivot);
        let p = m[col][col];
        if p.norm() == 0.0 {
            return f64::NEG_INFINITY;
        }
        acc += p.norm().log2();
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let f = row[col] / p;
            for (x, &v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
        }
    }
    acc
}
