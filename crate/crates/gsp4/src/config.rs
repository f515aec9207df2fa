use std::path::PathBuf;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

/// Default memory budget: 8 GiB.
pub const DEFAULT_MEM_BUDGET: u64 = 8 << 30;

/// Rough resident cost of one enumerated group element: the packed code, its
/// class index and the BFS hash set entry.
pub const BYTES_PER_ELEMENT: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    N,
    R,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Lemmas,
    CanonicalForms,
    Group,
    Types,
    TableN,
    TableR,
    Corollary,
    All,
}

impl Suite {
    /// Suites that need nothing beyond the field.
    pub fn field_only(self) -> bool {
        matches!(self, Suite::Lemmas | Suite::CanonicalForms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Command {
    Chartab,
    Table { model: Model, datum: Option<[u32; 3]>, chi: Option<String> },
    Verify { suite: Suite },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunConfig {
    pub p: u32,
    pub n: u32,
    pub command: Command,
    /// `None` writes to stdout.
    pub out: Option<PathBuf>,
    pub format: Format,
    /// `None` disables the character-table cache.
    pub cache: Option<PathBuf>,
    pub threads: usize,
    pub mem_budget: u64,
    /// Seed of the sampled conjugation pre-pass.
    pub seed: u64,
}

impl RunConfig {
    pub fn new(p: u32, n: u32, command: Command) -> RunConfig {
        RunConfig {
            p,
            n,
            command,
            out: None,
            format: Format::Text,
            cache: None,
            threads: default_threads(),
            mem_budget: DEFAULT_MEM_BUDGET,
            seed: 0,
        }
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    /// Largest group the memory budget allows us to enumerate.
    pub fn element_budget(&self) -> u64 {
        self.mem_budget / BYTES_PER_ELEMENT
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

/// Splits a prime power into `(p, n)`.
pub fn parse_prime_power(q: u64) -> anyhow::Result<(u32, u32)> {
    if q < 2 {
        bail!("q = {q} is not a prime power");
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
    let mut n = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        n += 1;
    }
    if r != 1 {
        bail!("q = {q} is not a prime power");
    }
    Ok((p as u32, n))
}

/// Byte counts with an optional `K`, `M`, `G` or `T` suffix (powers of 1024).
pub fn parse_bytes(s: &str) -> anyhow::Result<u64> {
    let s = s.trim();
    let (digits, shift) = match s.chars().last().map(|c| c.to_ascii_uppercase()) {
        Some('K') => (&s[..s.len() - 1], 10),
        Some('M') => (&s[..s.len() - 1], 20),
        Some('G') => (&s[..s.len() - 1], 30),
        Some('T') => (&s[..s.len() - 1], 40),
        _ => (s, 0),
    };
    let v: u64 = digits.trim().parse().with_context(|| format!("bad byte count {s:?}"))?;
    v.checked_shl(shift).filter(|x| x >> shift == v).with_context(|| format!("byte count {s:?} overflows"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(parse_prime_power(9).unwrap(), (3, 2));
        assert_eq!(parse_prime_power(2).unwrap(), (2, 1));
        assert_eq!(parse_prime_power(8).unwrap(), (2, 3));
        assert!(parse_prime_power(6).is_err());
        assert!(parse_prime_power(1).is_err());
    }

    #[test]
    fn byte_counts() {
        assert_eq!(parse_bytes("512").unwrap(), 512);
        assert_eq!(parse_bytes("8G").unwrap(), 8 << 30);
        assert_eq!(parse_bytes("3m").unwrap(), 3 << 20);
        assert!(parse_bytes("x").is_err());
    }
}
