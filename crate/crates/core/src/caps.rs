use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Size limits applied by every construction that can blow up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub max_ji: usize,
    pub max_elements: usize,
    pub max_congruences: usize,
    pub max_cideals: usize,
    pub max_universe: usize,
    /// Largest frame size accepted on either side of a Cauchy enumeration.
    pub max_cauchy: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_ji: 16,
            max_elements: 4096,
            max_congruences: 4096,
            max_cideals: 4096,
            max_universe: 16,
            max_cauchy: 6,
        }
    }
}

impl Caps {
    /// Caps large enough that only the 64-bit representation limit applies.
    pub fn unbounded() -> Self {
        Caps {
            max_ji: 64,
            max_elements: usize::MAX,
            max_congruences: usize::MAX,
            max_cideals: usize::MAX,
            max_universe: 64,
            max_cauchy: usize::MAX,
        }
    }

    pub fn check(what: &'static str, value: usize, limit: usize) -> Result<()> {
        if value > limit {
            Err(Error::CapExceeded { what, limit })
        } else {
            Ok(())
        }
    }

    /// Parse `key=value` pairs separated by commas or whitespace, on top of `self`.
    pub fn with_overrides(mut self, spec: &str) -> std::result::Result<Self, String> {
        for item in spec.split(|c: char| c == ',' || c.is_whitespace()) {
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got {item:?}"))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| format!("cap {k:?} needs an integer, got {v:?}"))?;
            match k.trim() {
                "max_ji" => self.max_ji = v.min(64),
                "max_elements" => self.max_elements = v,
                "max_congruences" => self.max_congruences = v,
                "max_cideals" => self.max_cideals = v,
                "max_universe" => self.max_universe = v.min(64),
                "max_cauchy" => self.max_cauchy = v,
                other => return Err(format!("unknown cap {other:?}")),
            }
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let c = Caps::default().with_overrides("max_ji=5, max_elements=10").unwrap();
        assert_eq!(c.max_ji, 5);
        assert_eq!(c.max_elements, 10);
        assert_eq!(c.max_cideals, 4096);
        assert!(Caps::default().with_overrides("bogus=1").is_err());
        assert!(Caps::default().with_overrides("max_ji").is_err());
    }
}
