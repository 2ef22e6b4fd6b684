use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Logarithmic,
    Linear,
}

/// Construction parameters of a [`TimeGrid`]; printed as
/// `<count>,<t_min>,<t_max>,<log|lin>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub count: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub spacing: Spacing,
}

/// Ascending scales at which trace signatures are sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeGrid {
    spec: GridSpec,
    values: Vec<f64>,
}

pub fn make_time_grid(count: usize, t_min: f64, t_max: f64, spacing: Spacing) -> Result<TimeGrid> {
    TimeGrid::new(GridSpec {
        count,
        t_min,
        t_max,
        spacing,
    })
}

impl TimeGrid {
    pub fn new(spec: GridSpec) -> Result<Self> {
        let GridSpec {
            count,
            t_min,
            t_max,
            spacing,
        } = spec;
        if count == 0 {
            return Err(Error::invalid("time grid needs at least one value"));
        }
        if !(t_min.is_finite() && t_max.is_finite() && t_min < t_max) {
            return Err(Error::invalid(format!("time grid bounds [{t_min}, {t_max}] are not increasing")));
        }
        if spacing == Spacing::Logarithmic && t_min <= 0.0 {
            return Err(Error::invalid("logarithmic time grid needs t_min > 0"));
        }
        if spacing == Spacing::Linear && t_min < 0.0 {
            return Err(Error::invalid("time grid values must be non-negative"));
        }
        let values = if count == 1 {
            vec![t_min]
        } else {
            let last = (count - 1) as f64;
            let mut v: Vec<f64> = match spacing {
                Spacing::Logarithmic => {
                    let (a, b) = (t_min.log10(), t_max.log10());
                    (0..count)
                        .map(|i| 10f64.powf(a + (b - a) * i as f64 / last))
                        .collect()
                }
                Spacing::Linear => (0..count)
                    .map(|i| t_min + (t_max - t_min) * i as f64 / last)
                    .collect(),
            };
            v[0] = t_min;
            v[count - 1] = t_max;
            v
        };
        Ok(TimeGrid { spec, values })
    }

    /// 250 log-spaced scales in `[0.01, 100]`.
    pub fn heat_default() -> Self {
        make_time_grid(250, 1e-2, 1e2, Spacing::Logarithmic).expect("valid default grid")
    }

    /// 250 evenly spaced scales covering `[0, 2π)`.
    pub fn wave_default() -> Self {
        let count = 250;
        let t_max = 2.0 * PI * (count - 1) as f64 / count as f64;
        make_time_grid(count, 0.0, t_max, Spacing::Linear).expect("valid default grid")
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::Logarithmic => "log",
            Spacing::Linear => "lin",
        })
    }
}

impl FromStr for Spacing {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "log" => Ok(Spacing::Logarithmic),
            "lin" => Ok(Spacing::Linear),
            other => Err(Error::invalid(format!("unknown grid spacing `{other}` (expected log or lin)"))),
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{}", self.count, self.t_min, self.t_max, self.spacing)
    }
}

impl FromStr for GridSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 4 {
            return Err(Error::invalid(format!("grid `{s}` is not `count,min,max,log|lin`")));
        }
        let bad = |what: &str| Error::invalid(format!("grid `{s}`: bad {what}"));
        Ok(GridSpec {
            count: parts[0].parse().map_err(|_| bad("count"))?,
            t_min: parts[1].parse().map_err(|_| bad("minimum"))?,
            t_max: parts[2].parse().map_err(|_| bad("maximum"))?,
            spacing: parts[3].parse()?,
        })
    }
}
