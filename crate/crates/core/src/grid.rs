//! Two-dimensional sweep results and their CSV/JSON encodings.
//!
//! Axes are stored in Hz (ν/2π along x; Ω/2π or δ/2π along y). Values are
//! row-major with y outer and x inner. Masked cells are NaN; the CSV
//! writer prints them as `nan` and the JSON encoding uses `null`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::units::to_hz;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    Population,
    DispersiveShiftHz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Layer {
    AdiabaticImpulse,
    Rwa,
    Lindblad2,
    Lindblad5,
}

impl Layer {
    pub fn name(&self) -> &'static str {
        match self {
            Layer::AdiabaticImpulse => "adiabatic_impulse",
            Layer::Rwa => "rwa",
            Layer::Lindblad2 => "lindblad2",
            Layer::Lindblad5 => "lindblad5",
        }
    }
}

impl std::str::FromStr for Layer {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "adiabatic_impulse" | "ai" => Ok(Layer::AdiabaticImpulse),
            "rwa" => Ok(Layer::Rwa),
            "lindblad2" => Ok(Layer::Lindblad2),
            "lindblad5" => Ok(Layer::Lindblad5),
            other => Err(Error::Grid(format!("unknown layer `{other}`"))),
        }
    }
}

/// What the y axis of a (ν, y) sweep holds, with the other modulation
/// parameter fixed. Values in rad/s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "y")]
pub enum SweepAxis {
    /// y = Ω at fixed amplitude δ.
    ModulationFrequency { delta: f64 },
    /// y = δ at fixed frequency Ω.
    ModulationAmplitude { omega: f64 },
}

impl SweepAxis {
    /// (δ, Ω) for a y-axis value.
    pub fn delta_omega(&self, y: f64) -> (f64, f64) {
        match *self {
            SweepAxis::ModulationFrequency { delta } => (delta, y),
            SweepAxis::ModulationAmplitude { omega } => (y, omega),
        }
    }

    pub fn y_label(&self) -> &'static str {
        match self {
            SweepAxis::ModulationFrequency { .. } => "Omega_Hz",
            SweepAxis::ModulationAmplitude { .. } => "delta_Hz",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
pub struct GridMeta {
    /// Free-form parameter record (numbers in Hz / s / K, strings for kinds).
    pub params: BTreeMap<String, Value>,
    pub nan_count: usize,
    pub code_version: String,
    /// Wall-clock stamp; excluded from reproducibility comparisons.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated: Option<String>,
}

impl GridMeta {
    pub fn insert_param(&mut self, key: &str, value: impl Into<Value>) {
        self.params.insert(key.to_string(), value.into());
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumGrid {
    pub x_axis: Vec<f64>,
    pub y_axis: Vec<f64>,
    pub axis: SweepAxis,
    #[serde(with = "nan_as_null")]
    pub values: Vec<f64>,
    pub observable: Observable,
    pub layer: Layer,
    pub meta: GridMeta,
}

mod nan_as_null {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[f64], s: S) -> Result<S::Ok, S::Error> {
        let opt: Vec<Option<f64>> = v.iter().map(|x| if x.is_nan() { None } else { Some(*x) }).collect();
        opt.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        let opt: Vec<Option<f64>> = Vec::deserialize(d)?;
        Ok(opt.into_iter().map(|x| x.unwrap_or(f64::NAN)).collect())
    }
}

fn strictly_monotone(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0]) || v.windows(2).all(|w| w[1] < w[0])
}

impl SpectrumGrid {
    /// Builds a grid from angular-frequency axes (rad/s).
    pub fn from_angular(
        nus: &[f64],
        ys: &[f64],
        axis: SweepAxis,
        values: Vec<f64>,
        observable: Observable,
        layer: Layer,
    ) -> Result<Self> {
        let mut meta = GridMeta { code_version: env!("CARGO_PKG_VERSION").to_string(), ..Default::default() };
        match axis {
            SweepAxis::ModulationFrequency { delta } => meta.insert_param("delta_hz", to_hz(delta)),
            SweepAxis::ModulationAmplitude { omega } => meta.insert_param("omega_hz", to_hz(omega)),
        }
        let grid = Self {
            x_axis: nus.iter().map(|&x| to_hz(x)).collect(),
            y_axis: ys.iter().map(|&y| to_hz(y)).collect(),
            axis,
            values,
            observable,
            layer,
            meta,
        };
        let mut grid = grid;
        grid.meta.nan_count = grid.values.iter().filter(|v| v.is_nan()).count();
        grid.validate()?;
        Ok(grid)
    }

    pub fn validate(&self) -> Result<()> {
        if self.values.len() != self.x_axis.len() * self.y_axis.len() {
            return Err(Error::Grid(format!(
                "{} values for a {}x{} grid",
                self.values.len(),
                self.y_axis.len(),
                self.x_axis.len()
            )));
        }
        if !strictly_monotone(&self.x_axis) || !strictly_monotone(&self.y_axis) {
            return Err(Error::Grid("axes must be strictly monotone".into()));
        }
        if self.observable == Observable::Population
            && self.values.iter().any(|v| !v.is_nan() && !(-1e-9..=1.0 + 1e-9).contains(v))
        {
            return Err(Error::Grid("population outside [0, 1]".into()));
        }
        Ok(())
    }

    pub fn get(&self, iy: usize, ix: usize) -> f64 {
        self.values[iy * self.x_axis.len() + ix]
    }

    pub fn row(&self, iy: usize) -> &[f64] {
        let nx = self.x_axis.len();
        &self.values[iy * nx..(iy + 1) * nx]
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self).map_err(|e| Error::Grid(e.to_string()))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let g: Self = serde_json::from_str(s).map_err(|e| Error::Grid(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    /// Long-format CSV: `#` metadata lines, a header row, then one row per
    /// cell with 12 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# layer: {}", self.layer.name());
        let _ = writeln!(out, "# observable: {}", serde_json::to_string(&self.observable).unwrap_or_default());
        for (k, v) in &self.meta.params {
            let _ = writeln!(out, "# {k}: {v}");
        }
        let _ = writeln!(out, "# nan_count: {}", self.meta.nan_count);
        let _ = writeln!(out, "# code_version: {}", self.meta.code_version);
        if let Some(g) = &self.meta.generated {
            let _ = writeln!(out, "# generated: {g}");
        }
        let _ = writeln!(out, "nu_Hz,{},value", self.axis.y_label());
        for (iy, y) in self.y_axis.iter().enumerate() {
            for (ix, x) in self.x_axis.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", fmt_sig(*x), fmt_sig(*y), fmt_sig(self.get(iy, ix)));
            }
        }
        out
    }
}

/// Plain decimal with 12 significant digits; NaN as `nan`.
pub fn fmt_sig(v: f64) -> String {
    if v.is_nan() {
        return "nan".to_string();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    // round to 12 significant digits first so the exponent is final
    let rounded: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    let exp = rounded.abs().log10().floor() as i32;
    let decimals = (11 - exp).max(0) as usize;
    let s = format!("{rounded:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::mhz;
    use proptest::prelude::*;

    fn sample(values: Vec<f64>) -> SpectrumGrid {
        SpectrumGrid::from_angular(
            &[mhz(-10.0), mhz(0.0), mhz(10.0)],
            &[mhz(5.0), mhz(6.0)],
            SweepAxis::ModulationFrequency { delta: mhz(100.0) },
            values,
            Observable::Population,
            Layer::Lindblad2,
        )
        .unwrap()
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let r = SpectrumGrid::from_angular(
            &[1.0, 2.0],
            &[1.0],
            SweepAxis::ModulationFrequency { delta: 1.0 },
            vec![0.1],
            Observable::Population,
            Layer::Rwa,
        );
        assert!(r.is_err());
    }

    #[test]
    fn non_monotone_axis_rejected() {
        let r = SpectrumGrid::from_angular(
            &[1.0, 1.0],
            &[1.0],
            SweepAxis::ModulationFrequency { delta: 1.0 },
            vec![0.1, 0.2],
            Observable::Population,
            Layer::Rwa,
        );
        assert!(r.is_err());
    }

    #[test]
    fn csv_layout() {
        let g = sample(vec![0.1, f64::NAN, 0.3, 0.4, 0.5, 0.25]);
        let csv = g.to_csv();
        assert!(csv.contains("# nan_count: 1"));
        let data: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(data[0], "nu_Hz,Omega_Hz,value");
        assert_eq!(data.len(), 7);
        assert!(data[2].ends_with(",nan"));
        assert_eq!(fmt_sig(0.1), "0.1");
        assert_eq!(fmt_sig(-300e6), "-300000000");
        assert_eq!(fmt_sig(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_sig(2.0 / 3.0 * 1e-7), "0.0000000666666666667");
        assert_eq!(fmt_sig(123456789.0123456), "123456789.012");
        assert_eq!(fmt_sig(0.9999999999999), "1");
    }

    proptest! {
        #[test]
        fn json_round_trip_is_exact(vals in proptest::collection::vec(prop_oneof![0.0f64..=1.0, Just(f64::NAN)], 6)) {
            let g = sample(vals);
            let back = SpectrumGrid::from_json(&g.to_json().unwrap()).unwrap();
            prop_assert_eq!(back.x_axis.iter().map(|v| v.to_bits()).collect::<Vec<_>>(), g.x_axis.iter().map(|v| v.to_bits()).collect::<Vec<_>>());
            for (a, b) in back.values.iter().zip(&g.values) {
                prop_assert!(a.to_bits() == b.to_bits() || (a.is_nan() && b.is_nan()));
            }
            prop_assert_eq!(back.meta, g.meta);
        }
    }
}
