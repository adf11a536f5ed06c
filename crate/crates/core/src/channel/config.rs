use crate::error::{Error, Result};
use crate::field::PrimeField;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Seed used when neither the config nor the command line gives one.
pub const DEFAULT_SEED: u64 = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mapping {
    /// Reflected binary code on the phase index.
    Gray,
    /// Field symbol `k` on phase index `k`.
    Natural,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum Fading {
    /// `h = 1`.
    None,
    /// `h ~ CN(0, 1)`.
    Rayleigh,
    /// `h = sqrt(K/(K+1)) + sqrt(1/(K+1)) CN(0, 1)`.
    Rician { k: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChannelConfig {
    /// Constellation size `M`.
    pub modulation: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mapping: Option<Mapping>,
    #[serde(default = "no_fading")]
    pub fading: Fading,
    /// Es/N0 in dB with unit noise variance.
    pub snr_db: Vec<f64>,
    pub trials: u64,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn no_fading() -> Fading {
    Fading::None
}

fn default_seed() -> u64 {
    DEFAULT_SEED
}

impl ChannelConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let mut cfg: ChannelConfig = toml::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        cfg.mapping = Some(cfg.mapping());
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    /// Gray for binary constellations, natural for ternary, unless set.
    pub fn mapping(&self) -> Mapping {
        self.mapping.unwrap_or(if self.modulation == 3 {
            Mapping::Natural
        } else {
            Mapping::Gray
        })
    }

    /// Field-independent checks.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidConfig(msg));
        match (self.modulation, self.mapping()) {
            (2 | 4 | 8 | 16, Mapping::Gray) | (3, Mapping::Natural) => {}
            (m, map) => return bad(format!("{m}-PSK does not support {map:?} mapping")),
        }
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.snr_db.is_empty() {
            return bad("snr_db must list at least one point".into());
        }
        if let Some(s) = self.snr_db.iter().find(|s| !s.is_finite() || s.abs() > 300.0) {
            return bad(format!("snr point {s} dB is out of range"));
        }
        if let Fading::Rician { k } = self.fading {
            if !(k.is_finite() && k > 0.0) {
                return bad(format!("Rician factor must be positive, got {k}"));
            }
        }
        Ok(())
    }

    /// Checks that the constellation carries symbols of `field`.
    pub fn check_field(&self, field: PrimeField) -> Result<()> {
        let ok = match field.order() {
            2 => self.modulation != 3,
            _ => self.modulation == 3,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidConfig(format!(
                "{}-PSK cannot carry symbols of {field}",
                self.modulation
            )))
        }
    }

    /// SHA-256 of the canonical serialization.
    pub fn hash(&self) -> String {
        let mut canon = self.clone();
        canon.mapping = Some(self.mapping());
        hex::encode(Sha256::digest(canon.to_toml_string().as_bytes()))
    }

    /// One-line description for CSV headers.
    pub fn describe(&self) -> String {
        let fading = match self.fading {
            Fading::None => "none".to_string(),
            Fading::Rayleigh => "rayleigh".to_string(),
            Fading::Rician { k } => format!("rician(K={k})"),
        };
        let snr = self.snr_db.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ");
        format!(
            "{}-PSK {:?} mapping, fading {fading}, snr_db [{snr}], trials {}",
            self.modulation,
            self.mapping(),
            self.trials
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const RAYLEIGH: &str = r#"
modulation = 4
snr_db = [0, 5, 10]
trials = 1000

[fading]
kind = "rayleigh"
"#;

    #[test]
    fn parses_with_defaults() {
        let c = ChannelConfig::from_toml_str(RAYLEIGH).unwrap();
        assert_eq!(c.modulation, 4);
        assert_eq!(c.mapping(), Mapping::Gray);
        assert_eq!(c.fading, Fading::Rayleigh);
        assert_eq!(c.snr_db, vec![0.0, 5.0, 10.0]);
        assert_eq!(c.seed, DEFAULT_SEED);
        c.check_field(PrimeField::F2).unwrap();
        assert!(c.check_field(PrimeField::F3).is_err());
    }

    #[test]
    fn round_trip_and_hash() {
        let c = ChannelConfig::from_toml_str(RAYLEIGH).unwrap();
        let back = ChannelConfig::from_toml_str(&c.to_toml_string()).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.hash(), c.hash());
        let mut d = c.clone();
        d.seed += 1;
        assert_ne!(d.hash(), c.hash());
    }

    #[test]
    fn rician_and_ternary() {
        let c = ChannelConfig::from_toml_str(
            "modulation = 3\nsnr_db = [10.0]\ntrials = 5\nseed = 1\nfading = { kind = \"rician\", k = 2.0 }\n",
        )
        .unwrap();
        assert_eq!(c.mapping(), Mapping::Natural);
        assert_eq!(c.fading, Fading::Rician { k: 2.0 });
        c.check_field(PrimeField::F3).unwrap();
    }

    #[test]
    fn rejects_invalid() {
        for text in [
            "modulation = 5\nsnr_db = [0]\ntrials = 1\n",
            "modulation = 4\nmapping = \"natural\"\nsnr_db = [0]\ntrials = 1\n",
            "modulation = 4\nsnr_db = []\ntrials = 1\n",
            "modulation = 4\nsnr_db = [0]\ntrials = 0\n",
            "modulation = 4\nsnr_db = [0]\ntrials = 1\nfading = { kind = \"rician\", k = 0.0 }\n",
            "modulation = 4\nsnr_db = [0]\ntrials = 1\nfading = { kind = \"nakagami\" }\n",
            "modulation = 4\nsnr_db = [0]\ntrials = 1\nextra = 1\n",
            "modulation = 4\nsnr_db = [0]\ntrials = -1\n",
        ] {
            assert!(ChannelConfig::from_toml_str(text).is_err(), "{text}");
        }
    }
}
