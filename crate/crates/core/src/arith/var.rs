use alloc::string::String;
use core::fmt;

/// Global variable universe: `P1..Pn`, `L0..LN`, `Y`, `x`, `q`, `Q1..Qn`.
///
/// The derived order (P < L < Y < x < q < Q) fixes the canonical
/// orientation of factors and the sort order of serialized forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    P(u16),
    L(u16),
    Y,
    X,
    Q,
    Nov(u16),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::P(i) => write!(f, "P{i}"),
            Var::L(j) => write!(f, "L{j}"),
            Var::Y => f.write_str("Y"),
            Var::X => f.write_str("x"),
            Var::Q => f.write_str("q"),
            Var::Nov(i) => write!(f, "Q{i}"),
        }
    }
}

impl Var {
    pub fn parse(s: &str) -> Option<Var> {
        let idx = |rest: &str| -> Option<u16> {
            if rest.is_empty() || (rest.len() > 1 && rest.starts_with('0')) {
                return None;
            }
            rest.parse().ok()
        };
        match s {
            "Y" => Some(Var::Y),
            "x" => Some(Var::X),
            "q" => Some(Var::Q),
            _ => {
                let (head, rest) = s.split_at(1);
                match head {
                    "P" => idx(rest).filter(|&i| i > 0).map(Var::P),
                    "L" => idx(rest).map(Var::L),
                    "Q" => idx(rest).filter(|&i| i > 0).map(Var::Nov),
                    _ => None,
                }
            }
        }
    }

    pub fn name(&self) -> String {
        alloc::format!("{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for v in [Var::P(1), Var::L(0), Var::L(12), Var::Y, Var::X, Var::Q, Var::Nov(3)] {
            assert_eq!(Var::parse(&v.name()), Some(v));
        }
        assert_eq!(Var::parse("P0"), None);
        assert_eq!(Var::parse("L01"), None);
        assert_eq!(Var::parse("Z"), None);
    }
}
