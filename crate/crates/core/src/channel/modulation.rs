//! M-PSK constellations, frame mapping and coherent hard detection.

use super::config::{ChannelConfig, Mapping};
use crate::error::{Error, Result};
use crate::field::PrimeField;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Reflected binary code of `k`.
pub fn gray(k: usize) -> usize {
    k ^ (k >> 1)
}

/// Unit-energy M-PSK points and their labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    field: PrimeField,
    points: Vec<Complex64>,
    /// `label_of[k]`: bits (binary) or field symbol (ternary) sent on point `k`.
    label_of: Vec<usize>,
    /// Inverse of `label_of`.
    point_of: Vec<usize>,
}

impl Constellation {
    pub fn new(m: usize, mapping: Mapping, field: PrimeField) -> Result<Self> {
        let label_of: Vec<usize> = match (m, mapping, field.order()) {
            (2 | 4 | 8 | 16, Mapping::Gray, 2) => (0..m).map(gray).collect(),
            (3, Mapping::Natural, 3) => (0..m).collect(),
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "{m}-PSK with {mapping:?} mapping cannot carry symbols of {field}"
                )))
            }
        };
        let offset = if m.is_multiple_of(2) { PI / m as f64 } else { 0.0 };
        let points = (0..m)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64 + offset))
            .collect();
        let mut point_of = vec![0; m];
        for (k, &l) in label_of.iter().enumerate() {
            point_of[l] = k;
        }
        Ok(Constellation {
            field,
            points,
            label_of,
            point_of,
        })
    }

    pub fn for_config(config: &ChannelConfig, field: PrimeField) -> Result<Self> {
        Self::new(config.modulation, config.mapping(), field)
    }

    pub fn order(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    /// Code symbols carried by one channel symbol.
    pub fn symbols_per_point(&self) -> usize {
        if self.field.order() == 2 {
            self.order().trailing_zeros() as usize
        } else {
            1
        }
    }

    /// Channel symbols needed for `n` code symbols, including padding.
    pub fn frame_len(&self, n: usize) -> usize {
        n.div_ceil(self.symbols_per_point())
    }

    /// Point indices for a frame of code symbols. Binary symbols are grouped
    /// most significant first and the last group is padded with zeros.
    pub fn map_frame(&self, code: &[u8]) -> Vec<usize> {
        let b = self.symbols_per_point();
        code.chunks(b)
            .map(|chunk| {
                let label = (0..b).fold(0usize, |acc, i| acc << 1 | chunk.get(i).copied().unwrap_or(0) as usize);
                self.point_of[label]
            })
            .collect()
    }

    /// Inverse of [`map_frame`](Self::map_frame); padding is dropped.
    pub fn demap_frame(&self, points: &[usize], n: usize, out: &mut Vec<u8>) {
        out.clear();
        let b = self.symbols_per_point();
        for &k in points {
            let label = self.label_of[k];
            if self.field.order() == 2 {
                out.extend((0..b).rev().map(|i| ((label >> i) & 1) as u8));
            } else {
                out.push(label as u8);
            }
        }
        out.truncate(n);
    }

    /// Transmitted complex symbols with energy `es` per symbol.
    pub fn modulate(&self, code: &[u8], es: f64) -> Vec<Complex64> {
        let a = es.sqrt();
        self.map_frame(code).into_iter().map(|k| self.points[k] * a).collect()
    }

    /// Index of the point minimising `|y - h_scaled * s|^2`.
    pub fn detect(&self, y: Complex64, scaled: &[Complex64]) -> usize {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (k, s) in scaled.iter().enumerate() {
            let d = (y - s).norm_sqr();
            if d < best_d {
                best_d = d;
                best = k;
            }
        }
        best
    }
}

/// `10^(snr_db / 10)`.
pub fn es_of_db(snr_db: f64) -> f64 {
    10f64.powf(snr_db / 10.0)
}
