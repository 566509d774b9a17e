use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Family parameter. Fixes the digit alphabet `I = {0, ..., 2k-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GraphParams {
    k: u8,
}

impl GraphParams {
    pub fn new(k: u8) -> Result<Self> {
        if k < 2 {
            return Err(Error::invalid(format!("k must be at least 2, got {k}")));
        }
        if k > 100 {
            return Err(Error::invalid(format!("k too large: {k}")));
        }
        Ok(GraphParams { k })
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    /// Number of digits, `2k`.
    pub fn alphabet_size(&self) -> u8 {
        2 * self.k
    }

    pub fn digits(&self) -> impl Iterator<Item = u8> {
        0..self.alphabet_size()
    }

    pub fn even_digits(&self) -> impl Iterator<Item = u8> {
        (0..self.alphabet_size()).step_by(2)
    }

    pub fn odd_digits(&self) -> impl Iterator<Item = u8> {
        (1..self.alphabet_size()).step_by(2)
    }

    pub fn check_digit(&self, d: u8) -> Result<()> {
        if d < self.alphabet_size() {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "digit {d} out of range for k={} (must be < {})",
                self.k,
                self.alphabet_size()
            )))
        }
    }
}

/// A finite digit sequence locating one nested copy of the family inside
/// itself. The empty address is the whole graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Address(Vec<u8>);

impl Address {
    pub fn root() -> Self {
        Address(Vec::new())
    }

    pub fn new(digits: impl Into<Vec<u8>>) -> Self {
        Address(digits.into())
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Extend with a final digit: `mu.child(i)` is the address `mu i`.
    pub fn child(&self, digit: u8) -> Self {
        let mut v = self.0.clone();
        v.push(digit);
        Address(v)
    }

    /// Drop the final digit; `None` on the root.
    pub fn parent(&self) -> Option<(Self, u8)> {
        let (&last, rest) = self.0.split_last()?;
        Some((Address(rest.to_vec()), last))
    }

    pub fn starts_with(&self, prefix: &Address) -> bool {
        self.0.starts_with(&prefix.0)
    }

    /// Address of this copy seen inside the copy at `nu`: concatenation `nu self`.
    pub fn relocated(&self, nu: &Address) -> Self {
        let mut v = Vec::with_capacity(nu.0.len() + self.0.len());
        v.extend_from_slice(&nu.0);
        v.extend_from_slice(&self.0);
        Address(v)
    }

    pub fn check_digits(&self, params: &GraphParams) -> Result<()> {
        for &d in &self.0 {
            params.check_digit(d)?;
        }
        Ok(())
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for d in &self.0 {
            if !first {
                write!(f, ".")?;
            }
            write!(f, "{d}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for Address {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Ok(Address::root());
        }
        let digits = s
            .split('.')
            .map(|p| {
                p.parse::<u8>()
                    .map_err(|_| Error::Parse(format!("bad address digit {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(Address(digits))
    }
}

/// Which of the two vertices of a copy: the source-side `s` or the sink-side `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    S,
    T,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::S => write!(f, "s"),
            Role::T => write!(f, "t"),
        }
    }
}

/// A vertex of the family: a role paired with an address. Equal iff both
/// fields are equal. Ordering is role-first (all `s` before all `t`), then
/// lexicographic on digits; every iteration order in the crate derives from it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub role: Role,
    pub address: Address,
}

impl Vertex {
    pub fn s(address: Address) -> Self {
        Vertex { role: Role::S, address }
    }

    pub fn t(address: Address) -> Self {
        Vertex { role: Role::T, address }
    }

    pub fn source() -> Self {
        Vertex::s(Address::root())
    }

    pub fn sink() -> Self {
        Vertex::t(Address::root())
    }

    pub fn relocated(&self, nu: &Address) -> Self {
        Vertex {
            role: self.role,
            address: self.address.relocated(nu),
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.role)?;
        if !self.address.is_empty() {
            write!(f, "_{}", self.address)?;
        }
        Ok(())
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (role, rest) = match s.as_bytes().first() {
            Some(b's') => (Role::S, &s[1..]),
            Some(b't') => (Role::T, &s[1..]),
            _ => return Err(Error::Parse(format!("vertex name must start with s or t: {s:?}"))),
        };
        let address = if rest.is_empty() {
            Address::root()
        } else if let Some(digits) = rest.strip_prefix('_') {
            digits.parse()?
        } else {
            return Err(Error::Parse(format!("expected `_` after role letter: {s:?}")));
        };
        Ok(Vertex { role, address })
    }
}

impl Serialize for Vertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_reject_small_k() {
        assert!(GraphParams::new(0).is_err());
        assert!(GraphParams::new(1).is_err());
        assert!(GraphParams::new(2).is_ok());
    }

    #[test]
    fn address_roundtrip() {
        for text in ["", "0", "0.13.2", "11.3"] {
            let a: Address = text.parse().unwrap();
            assert_eq!(a.to_string(), text);
        }
        assert!("x".parse::<Address>().is_err());
        assert!("1..2".parse::<Address>().is_err());
    }

    #[test]
    fn vertex_order_puts_all_s_first() {
        let s_late = Vertex::s("3.3".parse().unwrap());
        let t_early = Vertex::sink();
        assert!(s_late < t_early);
        let s_prefix = Vertex::s("1".parse().unwrap());
        let s_longer = Vertex::s("1.0".parse().unwrap());
        assert!(s_prefix < s_longer);
    }

    #[test]
    fn vertex_name_roundtrip() {
        for text in ["s", "t", "s_1", "t_0.13.2"] {
            let v: Vertex = text.parse().unwrap();
            assert_eq!(v.to_string(), text);
        }
        assert!("s1".parse::<Vertex>().is_err());
        assert!("u_1".parse::<Vertex>().is_err());
    }

    #[test]
    fn relocation_concatenates() {
        let nu: Address = "3".parse().unwrap();
        let v = Vertex::s("1".parse().unwrap());
        assert_eq!(v.relocated(&nu), Vertex::s("3.1".parse().unwrap()));
        // relocating by the root address is the identity
        assert_eq!(v.relocated(&Address::root()), v);
    }
}
