//! Line-oriented scheme format.
//!
//! ```text
//! # comment
//! placement a1 a2 a3 b2
//! order 1-2-1            # or 2-1-2, one-round
//! coop1 raw 2            # one functional per line
//! coop1 raw 3
//! coop2 decoded a3
//! coop2 decoded a1+b2    # XOR of decoded bits
//! ```
//!
//! Raw functionals list received rows, 1 being the top row; `2+3` is the
//! XOR of rows 2 and 3.

use super::{Bit, Functional, LdcError, LdcOrder, LdcScheme};
use crate::channel::User;

fn parse_bit(tok: &str, line: usize) -> Result<Bit, LdcError> {
    let err = || LdcError::Parse {
        line,
        msg: format!("expected a bit name like a1 or b3, got `{tok}`"),
    };
    let mut chars = tok.chars();
    let user = match chars.next() {
        Some('a') => User::One,
        Some('b') => User::Two,
        _ => return Err(err()),
    };
    let level: usize = chars.as_str().parse().map_err(|_| err())?;
    if level == 0 || level > super::MAX_LEVELS {
        return Err(err());
    }
    Ok(Bit::new(user, level))
}

fn parse_row(tok: &str, line: usize) -> Result<usize, LdcError> {
    tok.parse().map_err(|_| LdcError::Parse {
        line,
        msg: format!("expected a row index, got `{tok}`"),
    })
}

fn parse_functional(mode: &str, body: &[&str], line: usize) -> Result<Functional, LdcError> {
    let joined = body.join("");
    if joined.is_empty() {
        return Err(LdcError::Parse {
            line,
            msg: "functional has no terms".into(),
        });
    }
    let terms = joined.split('+');
    match mode {
        "raw" => Ok(Functional::Raw(
            terms.map(|t| parse_row(t, line)).collect::<Result<_, _>>()?,
        )),
        "decoded" => Ok(Functional::Decoded(
            terms.map(|t| parse_bit(t, line)).collect::<Result<_, _>>()?,
        )),
        other => Err(LdcError::Parse {
            line,
            msg: format!("unknown functional mode `{other}`, expected raw or decoded"),
        }),
    }
}

pub(super) fn parse_scheme(text: &str) -> Result<LdcScheme, LdcError> {
    let mut scheme = LdcScheme::new(LdcOrder::OneRound);
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else {
            continue;
        };
        match head {
            "placement" => {
                for t in rest {
                    scheme.place(parse_bit(t, line)?);
                }
            }
            "order" => {
                scheme.order = match rest {
                    ["one-round"] => LdcOrder::OneRound,
                    ["1-2-1"] => LdcOrder::TwoRound { first: User::One },
                    ["2-1-2"] => LdcOrder::TwoRound { first: User::Two },
                    _ => {
                        return Err(LdcError::Parse {
                            line,
                            msg: "order must be one-round, 1-2-1 or 2-1-2".into(),
                        })
                    }
                }
            }
            "coop1" | "coop2" => {
                let Some((&mode, body)) = rest.split_first() else {
                    return Err(LdcError::Parse {
                        line,
                        msg: "expected `raw` or `decoded` after the link name".into(),
                    });
                };
                let f = parse_functional(mode, body, line)?;
                if head == "coop1" {
                    scheme.coop1.push(f);
                } else {
                    scheme.coop2.push(f);
                }
            }
            other => {
                return Err(LdcError::Parse {
                    line,
                    msg: format!("unknown directive `{other}`"),
                })
            }
        }
    }
    Ok(scheme)
}

fn format_functional(f: &Functional) -> String {
    match f {
        Functional::Raw(rows) => {
            let parts: Vec<String> = rows.iter().map(usize::to_string).collect();
            format!("raw {}", parts.join("+"))
        }
        Functional::Decoded(bits) => {
            let parts: Vec<String> = bits.iter().map(Bit::to_string).collect();
            format!("decoded {}", parts.join("+"))
        }
    }
}

pub(super) fn format_scheme(scheme: &LdcScheme, q: usize) -> String {
    let mut bits = Vec::new();
    for u in User::BOTH {
        for level in 1..=q {
            if scheme.placement[u.index()] >> (level - 1) & 1 == 1 {
                bits.push(Bit::new(u, level).to_string());
            }
        }
    }
    let order = match scheme.order {
        LdcOrder::OneRound => "one-round",
        LdcOrder::TwoRound { first: User::One } => "1-2-1",
        LdcOrder::TwoRound { first: User::Two } => "2-1-2",
    };
    let mut s = format!("placement {}\norder {order}\n", bits.join(" "));
    for (name, funcs) in [("coop1", &scheme.coop1), ("coop2", &scheme.coop2)] {
        for f in funcs {
            s.push_str(&format!("{name} {}\n", format_functional(f)));
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    const ASYMMETRIC: &str = "\
# asymmetric example
placement a1 a2 a3 b2
order 1-2-1
coop1 raw 2
coop1 raw 3
coop2 decoded a3
";

    #[test]
    fn parses_and_round_trips() {
        let s = parse_scheme(ASYMMETRIC).unwrap();
        assert_eq!(s.placement, [0b111, 0b010]);
        assert_eq!(s.order, LdcOrder::TwoRound { first: User::One });
        assert_eq!(s.coop1, vec![Functional::Raw(vec![2]), Functional::Raw(vec![3])]);
        assert_eq!(s.coop2, vec![Functional::Decoded(vec![Bit::new(User::One, 3)])]);
        assert_eq!(parse_scheme(&format_scheme(&s, 3)).unwrap(), s);
    }

    #[test]
    fn xor_terms() {
        let s = parse_scheme("coop1 raw 1+3\ncoop2 decoded a1 + b2").unwrap();
        assert_eq!(s.coop1, vec![Functional::Raw(vec![1, 3])]);
        assert_eq!(
            s.coop2,
            vec![Functional::Decoded(vec![
                Bit::new(User::One, 1),
                Bit::new(User::Two, 2)
            ])]
        );
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_scheme("placement a1\n\nplacement c2").unwrap_err();
        assert!(matches!(err, LdcError::Parse { line: 3, .. }));
        assert!(parse_scheme("order 3-1-3").is_err());
        assert!(parse_scheme("coop1 fancy 1").is_err());
        assert!(parse_scheme("coop1 raw").is_err());
    }
}
