use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graphcore::address::{Address, GraphParams};

/// Orientation of a thick-pair edge. `Fwd` runs from the `s`-side endpoint of
/// the pair to the `t`-side endpoint as the pair is written; `Back` is the
/// reverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dir {
    Fwd,
    Back,
}

/// One edge rule of a gadget. A gadget at address `mu` emits `2k` thick pairs
/// (k parallel edges each direction) and `2k + 1` simple directed edges; rules
/// are numbered in the order the pairs and edges are listed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// `pair` in `0..2k`, with a direction. Pair 0 is `{s_mu, t_mu1}`, pairs
    /// `1..=2k-2` are `{s_mu(p-1), t_mu(p+1)}`, pair `2k-1` is
    /// `{s_mu(2k-2), t_mu}`.
    Thick { pair: u8, dir: Dir },
    /// `index` in `0..2k+1`: `(s_mu, t_mu0)`, then `(t_mui, s_mu(i+1))` for
    /// even `i` ascending, then `(s_mui, t_mu(i+1))` for odd `i < 2k-1`
    /// ascending, finally `(s_mu(2k-1), t_mu)`.
    Simple { index: u8 },
}

impl Rule {
    pub fn check(&self, params: &GraphParams) -> Result<()> {
        let n = params.alphabet_size();
        match self {
            Rule::Thick { pair, .. } if *pair < n => Ok(()),
            Rule::Simple { index } if *index <= n => Ok(()),
            _ => Err(Error::invalid(format!("rule {self} out of range for k={}", params.k()))),
        }
    }

    pub fn is_thick(&self) -> bool {
        matches!(self, Rule::Thick { .. })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Thick { pair, dir: Dir::Fwd } => write!(f, "T{pair}f"),
            Rule::Thick { pair, dir: Dir::Back } => write!(f, "T{pair}b"),
            Rule::Simple { index } => write!(f, "S{index}"),
        }
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad rule {s:?}"));
        match s.as_bytes().first() {
            Some(b'T') => {
                let body = &s[1..];
                let (num, dir) = if let Some(n) = body.strip_suffix('f') {
                    (n, Dir::Fwd)
                } else if let Some(n) = body.strip_suffix('b') {
                    (n, Dir::Back)
                } else {
                    return Err(bad());
                };
                let pair = num.parse::<u8>().map_err(|_| bad())?;
                Ok(Rule::Thick { pair, dir })
            }
            Some(b'S') => {
                let index = s[1..].parse::<u8>().map_err(|_| bad())?;
                Ok(Rule::Simple { index })
            }
            _ => Err(bad()),
        }
    }
}

/// Canonical identity of one family edge: the gadget that emits it, the rule,
/// and the parallel-copy index (`0..k` for thick rules, always 0 for simple
/// ones). Two references denote the same edge iff all three fields match.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub gadget: Address,
    pub rule: Rule,
    pub copy: u8,
}

impl EdgeRef {
    pub fn new(gadget: Address, rule: Rule, copy: u8) -> Self {
        EdgeRef { gadget, rule, copy }
    }

    pub fn relocated(&self, nu: &Address) -> Self {
        EdgeRef {
            gadget: self.gadget.relocated(nu),
            rule: self.rule,
            copy: self.copy,
        }
    }
}

impl fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gadget.is_empty() {
            write!(f, "-/{}/{}", self.rule, self.copy)
        } else {
            write!(f, "{}/{}/{}", self.gadget, self.rule, self.copy)
        }
    }
}

impl FromStr for EdgeRef {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split('/');
        let (g, r, c) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(g), Some(r), Some(c), None) => (g, r, c),
            _ => return Err(Error::Parse(format!("bad edge reference {s:?}"))),
        };
        let gadget = if g == "-" { Address::root() } else { g.parse()? };
        let rule = r.parse()?;
        let copy = c
            .parse::<u8>()
            .map_err(|_| Error::Parse(format!("bad copy index in {s:?}")))?;
        Ok(EdgeRef { gadget, rule, copy })
    }
}

impl Serialize for EdgeRef {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeRef {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Edge identity in an arbitrary graph of this crate. Family truncations and
/// quotients only ever contain `Family` edges; the parallel-edge elimination
/// transform introduces the other variants, each keyed by the family edge(s)
/// it replaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeId {
    Family(EdgeRef),
    /// `tail(e) -> midpoint(e)` half of a split bundle edge `e`.
    SplitIn(EdgeRef),
    /// `midpoint(e) -> head(e)` half of a split bundle edge `e`.
    SplitOut(EdgeRef),
    /// `midpoint(e) -> midpoint(f)` for an ordered pair of distinct edges of
    /// one bundle.
    Cross(EdgeRef, EdgeRef),
}

impl EdgeId {
    pub fn family(&self) -> Option<&EdgeRef> {
        match self {
            EdgeId::Family(e) => Some(e),
            _ => None,
        }
    }

    /// Longest gadget address mentioned by this identity, in digits.
    pub fn gadget_len(&self) -> usize {
        match self {
            EdgeId::Family(e) | EdgeId::SplitIn(e) | EdgeId::SplitOut(e) => e.gadget.len(),
            EdgeId::Cross(e, f) => e.gadget.len().max(f.gadget.len()),
        }
    }

    pub fn relocated(&self, nu: &Address) -> Self {
        match self {
            EdgeId::Family(e) => EdgeId::Family(e.relocated(nu)),
            EdgeId::SplitIn(e) => EdgeId::SplitIn(e.relocated(nu)),
            EdgeId::SplitOut(e) => EdgeId::SplitOut(e.relocated(nu)),
            EdgeId::Cross(e, f) => EdgeId::Cross(e.relocated(nu), f.relocated(nu)),
        }
    }
}

impl From<EdgeRef> for EdgeId {
    fn from(e: EdgeRef) -> Self {
        EdgeId::Family(e)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::Family(e) => write!(f, "{e}"),
            EdgeId::SplitIn(e) => write!(f, "in({e})"),
            EdgeId::SplitOut(e) => write!(f, "out({e})"),
            EdgeId::Cross(e, g) => write!(f, "x({e}|{g})"),
        }
    }
}

impl FromStr for EdgeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = |s: &str, head: &str| -> Option<String> {
            s.strip_prefix(head)?.strip_suffix(')').map(str::to_owned)
        };
        if let Some(body) = inner(s, "in(") {
            Ok(EdgeId::SplitIn(body.parse()?))
        } else if let Some(body) = inner(s, "out(") {
            Ok(EdgeId::SplitOut(body.parse()?))
        } else if let Some(body) = inner(s, "x(") {
            let (a, b) = body
                .split_once('|')
                .ok_or_else(|| Error::Parse(format!("bad cross edge {s:?}")))?;
            Ok(EdgeId::Cross(a.parse()?, b.parse()?))
        } else {
            Ok(EdgeId::Family(s.parse()?))
        }
    }
}

impl Serialize for EdgeId {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for EdgeId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_text_roundtrip() {
        for text in ["T0f", "T11b", "S0", "S12"] {
            let r: Rule = text.parse().unwrap();
            assert_eq!(r.to_string(), text);
        }
        assert!("T3x".parse::<Rule>().is_err());
        assert!("Q1".parse::<Rule>().is_err());
    }

    #[test]
    fn edge_ref_text_roundtrip() {
        for text in ["-/T0f/1", "0.13/S2/0", "1/T3b/2"] {
            let e: EdgeRef = text.parse().unwrap();
            assert_eq!(e.to_string(), text);
        }
    }

    #[test]
    fn edge_id_text_roundtrip() {
        for text in ["-/T0f/1", "in(0/S0/0)", "out(-/T1b/0)", "x(-/T0f/0|-/T0f/1)"] {
            let e: EdgeId = text.parse().unwrap();
            assert_eq!(e.to_string(), text);
        }
    }

    #[test]
    fn thick_forward_sorts_before_back_and_simple() {
        let fwd = Rule::Thick { pair: 0, dir: Dir::Fwd };
        let back = Rule::Thick { pair: 0, dir: Dir::Back };
        let simple = Rule::Simple { index: 0 };
        assert!(fwd < back && back < simple);
    }
}
