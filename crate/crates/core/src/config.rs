use serde::{Deserialize, Serialize};

/// Environment variable overriding [`Config::e_cap`].
pub const EMAX_CAP_ENV: &str = "HKFORGE_EMAX_CAP";

/// Engine limits, carried by every [`Ring`](crate::Ring).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    /// Largest Frobenius exponent accepted by bracket powers.
    pub e_cap: u32,
    /// Largest `n` tried when searching for `m^n U ⊆ J`.
    pub nilpotency_cap: usize,
    /// Largest number of colon steps in a saturation.
    pub saturation_cap: usize,
    /// Enable the Gebauer–Möller pair criteria in Buchberger's algorithm.
    pub gebauer_moller: bool,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            e_cap: 6,
            nilpotency_cap: 64,
            saturation_cap: 256,
            gebauer_moller: false,
        }
    }
}

impl Config {
    /// Defaults, with `e_cap` taken from `HKFORGE_EMAX_CAP` when it parses.
    pub fn from_env() -> Self {
        let mut config = Config::default();
        if let Some(cap) = std::env::var(EMAX_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
        {
            config.e_cap = cap;
        }
        config
    }
}
