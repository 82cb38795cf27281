//! Linear deterministic approximation of the channel.
//!
//! Each transmitter sends `q` bits per use, level 1 being the most
//! significant. Receiver `i` sees the top `n_ij` levels of user `j` shifted
//! down to the bottom of its `q`-row observation, and the two users' shifted
//! vectors add over GF(2):
//! `y_i = S^{q - n_ii} x_i ⊕ S^{q - n_ij} x_j`.
//!
//! A scheme places message bits on a subset of levels and specifies what
//! each receiver forwards over its cooperation link: XORs of its own
//! received rows (raw) or XORs of bits it has already decoded. A receiver
//! succeeds when all of its own message bits lie in the span of what it
//! observes.

mod gf2;
mod search;
mod text;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::channel::User;

pub use gf2::{rank, Basis};
pub use search::{cut_set_bound, search_raw, SearchResult, MAX_SEARCH_LEVELS, MAX_SEARCH_LINK_BITS};

/// Largest supported number of levels; bits of both users fit in a `u64`.
pub const MAX_LEVELS: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LdcError {
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("receiver {from} forwards {used} functionals but its link carries {allowed} bits")]
    Budget { from: User, used: usize, allowed: usize },
    #[error("row {row} is outside 1..={q}")]
    RowOutOfRange { row: usize, q: usize },
    #[error("bit {bit} is outside 1..={q}")]
    LevelOutOfRange { bit: Bit, q: usize },
    #[error("bit {0} is forwarded as decoded but carries no message")]
    UnplacedBit(Bit),
    #[error("receiver {from} cannot decode {bit} at the stage where it forwards it")]
    UndecodableForward { from: User, bit: Bit },
    #[error("empty functional")]
    EmptyFunctional,
    #[error("search is limited to q <= {max_q} and at most {max_k} cooperation bits per link")]
    TooLarge { max_q: usize, max_k: usize },
}

/// Level counts and cooperation budgets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LdcChannel {
    pub q: usize,
    pub n11: usize,
    pub n12: usize,
    pub n21: usize,
    pub n22: usize,
    /// Bits per use from receiver 1 to receiver 2.
    pub k12: usize,
    /// Bits per use from receiver 2 to receiver 1.
    pub k21: usize,
}

impl LdcChannel {
    pub fn new(
        q: usize,
        n11: usize,
        n12: usize,
        n21: usize,
        n22: usize,
        k12: usize,
        k21: usize,
    ) -> Result<Self, LdcError> {
        if q == 0 || q > MAX_LEVELS {
            return Err(LdcError::InvalidChannel(format!(
                "q must be in 1..={MAX_LEVELS}, got {q}"
            )));
        }
        for (name, n) in [("n11", n11), ("n12", n12), ("n21", n21), ("n22", n22)] {
            if n > q {
                return Err(LdcError::InvalidChannel(format!("{name} = {n} exceeds q = {q}")));
            }
        }
        Ok(Self {
            q,
            n11,
            n12,
            n21,
            n22,
            k12,
            k21,
        })
    }

    /// Levels of transmitter `tx` visible at receiver `rx`.
    pub fn levels(&self, rx: User, tx: User) -> usize {
        match (rx, tx) {
            (User::One, User::One) => self.n11,
            (User::One, User::Two) => self.n12,
            (User::Two, User::One) => self.n21,
            (User::Two, User::Two) => self.n22,
        }
    }

    /// Cooperation budget of the link leaving receiver `from`.
    pub fn budget(&self, from: User) -> usize {
        match from {
            User::One => self.k12,
            User::Two => self.k21,
        }
    }

    /// Same channel with the cooperation budgets replaced.
    pub fn with_budgets(&self, k12: usize, k21: usize) -> Self {
        Self { k12, k21, ..*self }
    }

    /// Linear form of row `row` (1-based, top first) of `y_rx` over all
    /// `2q` message bits, ignoring placement.
    pub fn row_form(&self, rx: User, row: usize) -> u64 {
        let mut form = 0;
        for tx in User::BOTH {
            let shift = self.q - self.levels(rx, tx);
            if row > shift {
                form |= Bit::new(tx, row - shift).mask(self.q);
            }
        }
        form
    }

    /// Mask of all bits of `user`.
    pub fn user_mask(&self, user: User) -> u64 {
        let levels = (1u64 << self.q) - 1;
        levels << (user.index() * self.q)
    }
}

impl fmt::Display for LdcChannel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "q={},n11={},n12={},n21={},n22={},k12={},k21={}",
            self.q, self.n11, self.n12, self.n21, self.n22, self.k12, self.k21
        )
    }
}

impl FromStr for LdcChannel {
    type Err = LdcError;

    /// Parses `q=3,n11=3,n12=2,n21=2,n22=3,k12=1,k21=1`; missing budgets
    /// default to zero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: String| LdcError::InvalidChannel(msg);
        let mut vals: [Option<usize>; 7] = [None; 7];
        const KEYS: [&str; 7] = ["q", "n11", "n12", "n21", "n22", "k12", "k21"];
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got `{part}`")))?;
            let idx = KEYS
                .iter()
                .position(|key| *key == k.trim())
                .ok_or_else(|| bad(format!("unknown key `{k}`")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| bad(format!("invalid value for {k}: `{v}`")))?;
            vals[idx] = Some(v);
        }
        let need = |i: usize| vals[i].ok_or_else(|| bad(format!("missing `{}`", KEYS[i])));
        Self::new(
            need(0)?,
            need(1)?,
            need(2)?,
            need(3)?,
            need(4)?,
            vals[5].unwrap_or(0),
            vals[6].unwrap_or(0),
        )
    }
}

/// One message bit: `a_l` for user 1, `b_l` for user 2, level `l` from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bit {
    pub user: User,
    pub level: usize,
}

impl Bit {
    pub fn new(user: User, level: usize) -> Self {
        Self { user, level }
    }

    fn index(&self, q: usize) -> usize {
        self.user.index() * q + self.level - 1
    }

    pub fn mask(&self, q: usize) -> u64 {
        1u64 << self.index(q)
    }
}

impl fmt::Display for Bit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.user {
            User::One => 'a',
            User::Two => 'b',
        };
        write!(f, "{c}{}", self.level)
    }
}

/// One GF(2) functional sent over a cooperation link.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum Functional {
    /// XOR of the listed rows (1-based) of the sender's observation.
    Raw(Vec<usize>),
    /// XOR of the listed bits, each of which the sender must have decoded.
    Decoded(Vec<Bit>),
}

/// Processing order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum LdcOrder {
    /// Both receivers forward functions of their own observation, then
    /// both decode.
    OneRound,
    /// Receiver `first` forwards, the other receiver decodes and forwards,
    /// then `first` decodes.
    TwoRound { first: User },
}

/// Placement and cooperation functionals.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct LdcScheme {
    /// Level masks: bit `l - 1` set when level `l` of that user carries a
    /// message bit.
    pub placement: [u64; 2],
    /// Functionals sent from receiver 1 to receiver 2.
    pub coop1: Vec<Functional>,
    /// Functionals sent from receiver 2 to receiver 1.
    pub coop2: Vec<Functional>,
    pub order: LdcOrder,
}

impl LdcScheme {
    pub fn new(order: LdcOrder) -> Self {
        Self {
            placement: [0, 0],
            coop1: Vec::new(),
            coop2: Vec::new(),
            order,
        }
    }

    pub fn place(&mut self, bit: Bit) {
        self.placement[bit.user.index()] |= 1u64 << (bit.level - 1);
    }

    pub fn coop(&self, from: User) -> &[Functional] {
        match from {
            User::One => &self.coop1,
            User::Two => &self.coop2,
        }
    }

    /// Placed bits as a mask over all `2q` message bits.
    pub fn placed_mask(&self, q: usize) -> u64 {
        self.placement[0] | (self.placement[1] << q)
    }

    pub fn rates(&self) -> [usize; 2] {
        [
            self.placement[0].count_ones() as usize,
            self.placement[1].count_ones() as usize,
        ]
    }

    pub fn parse(text: &str) -> Result<Self, LdcError> {
        text::parse_scheme(text)
    }

    pub fn to_text(&self, q: usize) -> String {
        text::format_scheme(self, q)
    }
}

/// Result of checking a scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LdcOutcome {
    /// Every receiver decodes its own bits; bits per user.
    Success { rates: [usize; 2] },
    /// The first receiver, in processing order, that cannot decode.
    Failure { receiver: User },
}

/// What a receiver knows at some stage: its observation rows plus
/// incoming functionals, restricted to placed bits.
struct Knowledge {
    basis: Basis,
}

impl Knowledge {
    fn observe(ch: &LdcChannel, rx: User, placed: u64) -> Self {
        let basis = Basis::from_vectors((1..=ch.q).map(|r| ch.row_form(rx, r) & placed));
        Self { basis }
    }

    fn add(&mut self, forms: &[u64]) {
        for &f in forms {
            self.basis.insert(f);
        }
    }

    fn decodes(&self, bits: u64) -> bool {
        (0..64)
            .filter(|i| bits >> i & 1 == 1)
            .all(|i| self.basis.contains(1u64 << i))
    }
}

fn validate_bit(ch: &LdcChannel, bit: Bit) -> Result<(), LdcError> {
    if bit.level == 0 || bit.level > ch.q {
        Err(LdcError::LevelOutOfRange { bit, q: ch.q })
    } else {
        Ok(())
    }
}

/// Linear forms of the functionals sent by `from`, given what it knows.
fn forward_forms(
    ch: &LdcChannel,
    from: User,
    funcs: &[Functional],
    placed: u64,
    known: &Knowledge,
) -> Result<Vec<u64>, LdcError> {
    funcs
        .iter()
        .map(|f| match f {
            Functional::Raw(rows) => {
                if rows.is_empty() {
                    return Err(LdcError::EmptyFunctional);
                }
                let mut form = 0;
                for &r in rows {
                    if r == 0 || r > ch.q {
                        return Err(LdcError::RowOutOfRange { row: r, q: ch.q });
                    }
                    form ^= ch.row_form(from, r) & placed;
                }
                Ok(form)
            }
            Functional::Decoded(bits) => {
                if bits.is_empty() {
                    return Err(LdcError::EmptyFunctional);
                }
                let mut form = 0;
                for &b in bits {
                    validate_bit(ch, b)?;
                    let m = b.mask(ch.q);
                    if m & placed == 0 {
                        return Err(LdcError::UnplacedBit(b));
                    }
                    if !known.basis.contains(m) {
                        return Err(LdcError::UndecodableForward { from, bit: b });
                    }
                    form ^= m;
                }
                Ok(form)
            }
        })
        .collect()
}

/// Checks a scheme on a channel.
pub fn check_scheme(ch: &LdcChannel, scheme: &LdcScheme) -> Result<LdcOutcome, LdcError> {
    for from in User::BOTH {
        let used = scheme.coop(from).len();
        let allowed = ch.budget(from);
        if used > allowed {
            return Err(LdcError::Budget { from, used, allowed });
        }
    }
    let level_mask = (1u64 << ch.q) - 1;
    for u in User::BOTH {
        let extra = scheme.placement[u.index()] & !level_mask;
        if extra != 0 {
            let level = extra.trailing_zeros() as usize + 1;
            return Err(LdcError::LevelOutOfRange {
                bit: Bit::new(u, level),
                q: ch.q,
            });
        }
    }

    let placed = scheme.placed_mask(ch.q);
    let own = |u: User| ch.user_mask(u) & placed;
    let mut know = [
        Knowledge::observe(ch, User::One, placed),
        Knowledge::observe(ch, User::Two, placed),
    ];
    let decode_order = match scheme.order {
        LdcOrder::OneRound => {
            let to2 = forward_forms(ch, User::One, &scheme.coop1, placed, &know[0])?;
            let to1 = forward_forms(ch, User::Two, &scheme.coop2, placed, &know[1])?;
            know[0].add(&to1);
            know[1].add(&to2);
            [User::One, User::Two]
        }
        LdcOrder::TwoRound { first } => {
            let second = first.other();
            let out = forward_forms(ch, first, scheme.coop(first), placed, &know[first.index()])?;
            know[second.index()].add(&out);
            let back = forward_forms(ch, second, scheme.coop(second), placed, &know[second.index()])?;
            know[first.index()].add(&back);
            [second, first]
        }
    };
    for rx in decode_order {
        if !know[rx.index()].decodes(own(rx)) {
            return Ok(LdcOutcome::Failure { receiver: rx });
        }
    }
    Ok(LdcOutcome::Success { rates: scheme.rates() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(k: usize) -> LdcChannel {
        LdcChannel::new(3, 3, 2, 2, 3, k, k).unwrap()
    }

    fn a(l: usize) -> Bit {
        Bit::new(User::One, l)
    }

    fn b(l: usize) -> Bit {
        Bit::new(User::Two, l)
    }

    #[test]
    fn received_rows() {
        let ch = symmetric(0);
        // y1 = [a1, a2 + b1, a3 + b2]
        assert_eq!(ch.row_form(User::One, 1), a(1).mask(3));
        assert_eq!(ch.row_form(User::One, 2), a(2).mask(3) | b(1).mask(3));
        assert_eq!(ch.row_form(User::One, 3), a(3).mask(3) | b(2).mask(3));
    }

    #[test]
    fn no_cooperation_scheme() {
        let ch = symmetric(0);
        let mut s = LdcScheme::new(LdcOrder::OneRound);
        for bit in [a(1), a(3), b(1), b(3)] {
            s.place(bit);
        }
        assert_eq!(check_scheme(&ch, &s), Ok(LdcOutcome::Success { rates: [2, 2] }));
        s.place(a(2));
        assert_eq!(check_scheme(&ch, &s), Ok(LdcOutcome::Failure { receiver: User::One }));
    }

    #[test]
    fn one_bit_cooperation_scheme() {
        let ch = symmetric(1);
        let mut s = LdcScheme::new(LdcOrder::OneRound);
        for bit in [a(1), a(2), a(3), b(1), b(3)] {
            s.place(bit);
        }
        s.coop1.push(Functional::Raw(vec![2]));
        s.coop2.push(Functional::Raw(vec![1]));
        assert_eq!(check_scheme(&ch, &s), Ok(LdcOutcome::Success { rates: [3, 2] }));
    }

    #[test]
    fn budget_is_enforced() {
        let ch = symmetric(0);
        let mut s = LdcScheme::new(LdcOrder::OneRound);
        s.coop2.push(Functional::Raw(vec![1]));
        assert_eq!(
            check_scheme(&ch, &s),
            Err(LdcError::Budget {
                from: User::Two,
                used: 1,
                allowed: 0
            })
        );
    }

    #[test]
    fn decoded_forward_requires_decodability() {
        let ch = symmetric(1);
        let mut s = LdcScheme::new(LdcOrder::OneRound);
        for bit in [a(1), a(2), b(1)] {
            s.place(bit);
        }
        // receiver 2 sees b1 + ..., a1 via row 2 only mixed with b2 = 0: y2 = [b1, b2 + a1, b3 + a2]
        s.coop2.push(Functional::Decoded(vec![a(2)]));
        assert_eq!(check_scheme(&ch, &s), Ok(LdcOutcome::Success { rates: [2, 1] }));
        let mut s2 = s.clone();
        s2.coop2 = vec![Functional::Decoded(vec![a(3)])];
        assert_eq!(check_scheme(&ch, &s2), Err(LdcError::UnplacedBit(a(3))));
        let mut s3 = s.clone();
        s3.place(b(3));
        s3.coop2 = vec![Functional::Decoded(vec![a(2)])];
        assert_eq!(
            check_scheme(&ch, &s3),
            Err(LdcError::UndecodableForward {
                from: User::Two,
                bit: a(2)
            })
        );
    }

    #[test]
    fn channel_string_round_trip() {
        let ch: LdcChannel = "q=3,n11=2,n12=1,n21=3,n22=3,k12=2,k21=1".parse().unwrap();
        assert_eq!(ch, LdcChannel::new(3, 2, 1, 3, 3, 2, 1).unwrap());
        assert_eq!(ch.to_string().parse::<LdcChannel>().unwrap(), ch);
        assert!("q=3,n11=4,n12=0,n21=0,n22=0".parse::<LdcChannel>().is_err());
        assert!("q=3,n11=1".parse::<LdcChannel>().is_err());
    }
}
