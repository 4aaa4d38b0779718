//! Parameter sweeps over the total rate, including the presets behind the five rate plots.
//!
//! A sweep varies one parameter over a uniform grid, optionally once per value of a second
//! "series" parameter, and holds the others fixed. Copy counts `N` are swept over powers
//! of two only.

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{domain, Result};
use crate::rates::{evaluate, ProtocolParams, Protocol, RateRow};

/// A protocol parameter that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Param {
    X,
    Q,
    Alpha,
    N,
}

impl Param {
    pub fn name(self) -> &'static str {
        match self {
            Param::X => "x",
            Param::Q => "q",
            Param::Alpha => "alpha",
            Param::N => "N",
        }
    }
}

impl FromStr for Param {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(Param::X),
            "q" => Ok(Param::Q),
            "alpha" | "a" => Ok(Param::Alpha),
            "N" => Ok(Param::N),
            _ => domain(format!("unknown sweep parameter {s:?} (expected x, q, alpha or N)")),
        }
    }
}

pub fn parse_protocol(s: &str) -> Result<Protocol> {
    match s {
        "qubit" => Ok(Protocol::Qubit),
        "zero" => Ok(Protocol::QuditZero),
        "parity" => Ok(Protocol::QuditParity),
        "naive" => Ok(Protocol::QuditNaive),
        _ => domain(format!("unknown protocol {s:?} (expected qubit, zero, parity or naive)")),
    }
}

pub fn protocol_name(p: Protocol) -> &'static str {
    match p {
        Protocol::Qubit => "qubit",
        Protocol::QuditZero => "zero",
        Protocol::QuditParity => "parity",
        Protocol::QuditNaive => "naive",
    }
}

/// Everything needed to reproduce one sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepConfig {
    pub protocol: Protocol,
    pub d: u32,
    pub x: f64,
    pub q: f64,
    pub alpha: f64,
    pub copies: u64,
    pub swept: Param,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    /// Optional second parameter with one curve per listed value.
    pub series: Option<(Param, Vec<f64>)>,
    pub output: Option<PathBuf>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            protocol: Protocol::Qubit,
            d: 2,
            x: 0.8,
            q: 0.2,
            alpha: 0.5,
            copies: 16,
            swept: Param::Q,
            lo: 0.0,
            hi: 1.0,
            steps: 101,
            series: None,
            output: None,
        }
    }
}

/// Grid resolution of the presets.
pub const PRESET_STEPS: usize = 101;

impl SweepConfig {
    /// The grid of one of the five rate plots.
    pub fn figure(figure: u8) -> Result<Self> {
        let base = Self {
            steps: PRESET_STEPS,
            ..Self::default()
        };
        let copies = vec![2.0, 4.0, 8.0, 16.0];
        Ok(match figure {
            1 => Self {
                swept: Param::Q,
                series: Some((Param::X, vec![0.8, 0.6, 0.4, 0.2])),
                ..base
            },
            2 => Self {
                swept: Param::X,
                series: Some((Param::Q, vec![0.1, 0.2, 0.3, 0.4])),
                ..base
            },
            3 => Self {
                swept: Param::Alpha,
                q: 0.2,
                x: 0.8,
                ..base
            },
            4 => Self {
                swept: Param::Q,
                x: 0.9,
                series: Some((Param::N, copies)),
                ..base
            },
            5 => Self {
                swept: Param::X,
                q: 0.1,
                series: Some((Param::N, copies)),
                ..base
            },
            _ => return domain(format!("there are five figure presets, got {figure}")),
        })
    }

    /// Reads a flat `key = value` file. Blank lines and `#` comments are ignored; keys not
    /// present keep their values from `self`.
    pub fn apply_kv(mut self, text: &str) -> Result<Self> {
        let mut series_param = self.series.as_ref().map(|s| s.0);
        let mut series_values = self.series.as_ref().map(|s| s.1.clone());
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return domain(format!("line {}: expected key = value, got {raw:?}", lineno + 1));
            };
            let (key, value) = (key.trim(), value.trim());
            let num = || -> Result<f64> {
                value
                    .parse::<f64>()
                    .or_else(|_| domain(format!("line {}: {key} needs a number, got {value:?}", lineno + 1)))
            };
            match key {
                "protocol" => self.protocol = parse_protocol(value)?,
                "d" => self.d = num()? as u32,
                "x" => self.x = num()?,
                "q" => self.q = num()?,
                "alpha" => self.alpha = num()?,
                "N" => self.copies = num()? as u64,
                "sweep" => self.swept = value.parse()?,
                "lo" => self.lo = num()?,
                "hi" => self.hi = num()?,
                "steps" => self.steps = num()? as usize,
                "series" => series_param = if value.is_empty() { None } else { Some(value.parse()?) },
                "series_values" => {
                    series_values = Some(
                        value
                            .split(',')
                            .map(|v| v.trim().parse::<f64>())
                            .collect::<std::result::Result<_, _>>()
                            .or_else(|_| domain(format!("line {}: bad list {value:?}", lineno + 1)))?,
                    )
                }
                "output" => self.output = Some(PathBuf::from(value)),
                _ => return domain(format!("line {}: unknown key {key:?}", lineno + 1)),
            }
        }
        self.series = match (series_param, series_values) {
            (None, _) => None,
            (Some(p), Some(v)) => Some((p, v)),
            (Some(p), None) => return domain(format!("series {} given without series_values", p.name())),
        };
        Ok(self)
    }

    /// `key = value` lines that [`apply_kv`](Self::apply_kv) reads back to the same config.
    pub fn to_kv(&self) -> Vec<(String, String)> {
        let mut kv = vec![
            ("protocol".into(), protocol_name(self.protocol).into()),
            ("d".into(), self.d.to_string()),
            ("x".into(), self.x.to_string()),
            ("q".into(), self.q.to_string()),
            ("alpha".into(), self.alpha.to_string()),
            ("N".into(), self.copies.to_string()),
            ("sweep".into(), self.swept.name().into()),
            ("lo".into(), self.lo.to_string()),
            ("hi".into(), self.hi.to_string()),
            ("steps".into(), self.steps.to_string()),
        ];
        if let Some((p, values)) = &self.series {
            kv.push(("series".into(), p.name().into()));
            let list: Vec<String> = values.iter().map(f64::to_string).collect();
            kv.push(("series_values".into(), list.join(",")));
        }
        kv
    }

    fn validate(&self) -> Result<()> {
        if self.steps == 0 || self.steps > 100_000 {
            return domain(format!("steps={} outside 1..=100000", self.steps));
        }
        if !(self.lo <= self.hi) {
            return domain(format!("empty range [{}, {}]", self.lo, self.hi));
        }
        if let Some((p, _)) = &self.series {
            if *p == self.swept {
                return domain("series parameter equals the swept parameter");
            }
        }
        Ok(())
    }

    /// Values taken by the swept parameter, in output order.
    pub fn swept_values(&self) -> Result<Vec<f64>> {
        self.validate()?;
        if self.swept == Param::N {
            let mut out = Vec::new();
            let mut c = 2u64;
            while c as f64 <= self.hi && c <= 1 << 12 {
                if c as f64 >= self.lo {
                    out.push(c as f64);
                }
                c *= 2;
            }
            return Ok(out);
        }
        if self.steps == 1 {
            return Ok(vec![self.lo]);
        }
        let span = self.hi - self.lo;
        Ok((0..self.steps)
            .map(|i| self.lo + span * i as f64 / (self.steps - 1) as f64)
            .collect())
    }

    fn params_at(&self, assignments: &[(Param, f64)]) -> Result<ProtocolParams> {
        let (mut x, mut q, mut alpha, mut copies) = (self.x, self.q, self.alpha, self.copies as f64);
        for &(p, v) in assignments {
            match p {
                Param::X => x = v,
                Param::Q => q = v,
                Param::Alpha => alpha = v,
                Param::N => copies = v,
            }
        }
        if copies.fract() != 0.0 || copies < 0.0 {
            return domain(format!("N={copies} is not an integer"));
        }
        ProtocolParams::with_copies(x, q, alpha, copies as u64, self.d)
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub series: Option<f64>,
    pub swept: f64,
    pub row: RateRow,
}

/// Evaluated sweep, series-major then in grid order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub config: SweepConfig,
    pub points: Vec<SweepPoint>,
}

impl SweepTable {
    /// Evaluates the whole grid in parallel; the point order does not depend on scheduling.
    pub fn evaluate(config: &SweepConfig) -> Result<Self> {
        use rayon::prelude::*;
        let swept = config.swept_values()?;
        let series: Vec<Option<f64>> = match &config.series {
            Some((_, values)) => values.iter().copied().map(Some).collect(),
            None => vec![None],
        };
        let mut grid = Vec::with_capacity(series.len() * swept.len());
        for &s in &series {
            for &v in &swept {
                let mut assign = vec![(config.swept, v)];
                if let (Some(value), Some((p, _))) = (s, &config.series) {
                    assign.push((*p, value));
                }
                grid.push((s, v, config.params_at(&assign)?));
            }
        }
        let points = grid
            .par_iter()
            .map(|(s, v, params)| {
                Ok(SweepPoint {
                    series: *s,
                    swept: *v,
                    row: evaluate(config.protocol, params)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            config: config.clone(),
            points,
        })
    }

    fn curve_list(&self) -> Vec<(Option<f64>, Vec<&SweepPoint>)> {
        let mut out: Vec<(Option<f64>, Vec<&SweepPoint>)> = Vec::new();
        for p in &self.points {
            match out.last_mut() {
                Some((s, pts)) if s.map(f64::to_bits) == p.series.map(f64::to_bits) => pts.push(p),
                _ => out.push((p.series, vec![p])),
            }
        }
        out
    }
}

/// Result of one qualitative property check on a sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyCheck {
    pub name: String,
    pub passed: bool,
    /// Largest violation found (0 when none).
    pub worst: f64,
    pub witness: Option<String>,
}

impl PropertyCheck {
    fn from_violations(name: impl Into<String>, tol: f64, violations: Vec<(f64, String)>) -> Self {
        let worst = violations.iter().map(|v| v.0).fold(0.0, f64::max);
        let witness = violations
            .into_iter()
            .filter(|v| v.0 > tol)
            .max_by(|a, b| a.0.total_cmp(&b.0))
            .map(|v| v.1);
        Self {
            name: name.into(),
            passed: witness.is_none(),
            worst,
            witness,
        }
    }
}

/// Tolerance of the monotonicity and symmetry checks.
pub const PROPERTY_TOLERANCE: f64 = 1e-12;

/// Along every curve the rate grows with `|v - 1/2|` on each side of `v = 1/2`.
pub fn check_grows_away_from_half(table: &SweepTable) -> PropertyCheck {
    let mut violations = Vec::new();
    for (s, pts) in table.curve_list() {
        for w in pts.windows(2) {
            let (a, b) = (w[0], w[1]);
            // moving right: toward 1/2 below it, away from it above it
            let drop = if b.swept <= 0.5 {
                b.row.total - a.row.total
            } else if a.swept >= 0.5 {
                a.row.total - b.row.total
            } else {
                continue;
            };
            violations.push((drop, format!("series {s:?}: R({}) = {}, R({}) = {}", a.swept, a.row.total, b.swept, b.row.total)));
        }
    }
    PropertyCheck::from_violations(
        format!("rate increases with |{} - 1/2|", table.config.swept.name()),
        PROPERTY_TOLERANCE,
        violations,
    )
}

/// Along every curve the rate is nondecreasing in the swept parameter.
pub fn check_nondecreasing_along_curves(table: &SweepTable) -> PropertyCheck {
    let mut violations = Vec::new();
    for (s, pts) in table.curve_list() {
        for w in pts.windows(2) {
            let drop = w[0].row.total - w[1].row.total;
            violations.push((drop, format!("series {s:?}: R({}) = {} > R({}) = {}", w[0].swept, w[0].row.total, w[1].swept, w[1].row.total)));
        }
    }
    PropertyCheck::from_violations(
        format!("rate nondecreasing in {}", table.config.swept.name()),
        PROPERTY_TOLERANCE,
        violations,
    )
}

/// At every grid point the rate is nondecreasing in `key(series value)`; `key_label`
/// names the key in the check name.
pub fn check_nondecreasing_across_series(
    table: &SweepTable,
    key_label: &str,
    key: impl Fn(f64) -> f64,
) -> PropertyCheck {
    let mut curves = table.curve_list();
    curves.sort_by(|a, b| key(a.0.unwrap_or(0.0)).total_cmp(&key(b.0.unwrap_or(0.0))));
    let mut violations = Vec::new();
    for w in curves.windows(2) {
        for (a, b) in w[0].1.iter().zip(&w[1].1) {
            let drop = a.row.total - b.row.total;
            violations.push((drop, format!(
                "at {} = {}: series {:?} gives {}, series {:?} gives {}",
                table.config.swept.name(), a.swept, w[0].0, a.row.total, w[1].0, b.row.total
            )));
        }
    }
    PropertyCheck::from_violations(format!("rate nondecreasing in {key_label} pointwise"), PROPERTY_TOLERANCE, violations)
}

/// The rate at `v` and at `lo + hi - v` agree along every curve.
pub fn check_mirror_symmetry(table: &SweepTable) -> PropertyCheck {
    let mut violations = Vec::new();
    for (s, pts) in table.curve_list() {
        let n = pts.len();
        for i in 0..n / 2 {
            let (a, b) = (pts[i], pts[n - 1 - i]);
            violations.push(((a.row.total - b.row.total).abs(), format!(
                "series {s:?}: R({}) = {} vs R({}) = {}", a.swept, a.row.total, b.swept, b.row.total
            )));
        }
    }
    PropertyCheck::from_violations(
        format!("rate symmetric in {} about the grid midpoint", table.config.swept.name()),
        PROPERTY_TOLERANCE,
        violations,
    )
}

/// Every curve attains its maximum at the grid midpoint.
pub fn check_maximum_at_midpoint(table: &SweepTable) -> PropertyCheck {
    let mut violations = Vec::new();
    for (s, pts) in table.curve_list() {
        let mid = pts[pts.len() / 2];
        for p in &pts {
            violations.push((p.row.total - mid.row.total, format!(
                "series {s:?}: R({}) = {} exceeds midpoint R({}) = {}", p.swept, p.row.total, mid.swept, mid.row.total
            )));
        }
    }
    PropertyCheck::from_violations("maximum at the midpoint", PROPERTY_TOLERANCE, violations)
}

/// For every pair of adjacent series (ordered by series value), and for the outermost
/// pair, the gap between the two curves is largest in the upper part of the swept range:
/// its maximum over `v >= threshold` exceeds its maximum over `v < threshold`.
pub fn check_gap_largest_above(table: &SweepTable, threshold: f64) -> PropertyCheck {
    let mut curves = table.curve_list();
    curves.sort_by(|a, b| a.0.unwrap_or(0.0).total_cmp(&b.0.unwrap_or(0.0)));
    let mut pairs: Vec<(usize, usize)> = (1..curves.len()).map(|i| (i - 1, i)).collect();
    if curves.len() > 2 {
        pairs.push((0, curves.len() - 1));
    }
    let mut violations = Vec::new();
    for (lo, hi) in pairs {
        let gaps: Vec<(f64, f64)> = curves[lo]
            .1
            .iter()
            .zip(&curves[hi].1)
            .map(|(a, b)| (a.swept, b.row.total - a.row.total))
            .collect();
        let max_in = |keep: &dyn Fn(f64) -> bool| {
            gaps.iter().filter(|g| keep(g.0)).map(|g| g.1).fold(f64::NEG_INFINITY, f64::max)
        };
        let below = max_in(&|v| v < threshold);
        let above = max_in(&|v| v >= threshold);
        violations.push((
            if below >= above { below - above + f64::MIN_POSITIVE } else { 0.0 },
            format!(
                "series {:?} vs {:?}: largest gap below {threshold} is {below}, at or above it {above}",
                curves[lo].0, curves[hi].0
            ),
        ));
    }
    PropertyCheck::from_violations(
        format!("gap between series largest at {} >= {threshold}", table.config.swept.name()),
        0.0,
        violations,
    )
}

/// Threshold above which the gap between copy-count curves must peak in the x sweep.
pub const LARGE_X: f64 = 0.9;

/// The qualitative properties each preset is expected to show, evaluated on its grid.
pub fn preset_properties(figure: u8) -> Result<(SweepTable, Vec<PropertyCheck>)> {
    let table = SweepTable::evaluate(&SweepConfig::figure(figure)?)?;
    let checks = match figure {
        1 => vec![
            check_grows_away_from_half(&table),
            check_nondecreasing_across_series(&table, "x", |x| x),
            check_mirror_symmetry(&table),
        ],
        2 => vec![
            check_nondecreasing_along_curves(&table),
            check_nondecreasing_across_series(&table, "|q - 1/2|", |q| (q - 0.5).abs()),
        ],
        3 => vec![check_mirror_symmetry(&table), check_maximum_at_midpoint(&table)],
        4 => vec![
            check_nondecreasing_across_series(&table, "N", |n| n),
            check_grows_away_from_half(&table),
        ],
        _ => vec![
            check_nondecreasing_across_series(&table, "N", |n| n),
            check_nondecreasing_along_curves(&table),
            check_gap_largest_above(&table, LARGE_X),
        ],
    };
    Ok((table, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_exist() {
        for f in 1..=5 {
            let cfg = SweepConfig::figure(f).unwrap();
            assert_eq!(cfg.swept_values().unwrap().len(), PRESET_STEPS);
        }
        assert!(SweepConfig::figure(6).is_err());
        assert_eq!(SweepConfig::figure(4).unwrap().series.unwrap().1, vec![2.0, 4.0, 8.0, 16.0]);
    }

    #[test]
    fn kv_round_trip() {
        let cfg = SweepConfig::figure(5).unwrap();
        let text: String = cfg.to_kv().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
        let back = SweepConfig::default().apply_kv(&text).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn kv_errors_and_comments() {
        let cfg = SweepConfig::default()
            .apply_kv("# fig\n\nsweep = x  # swept\nsteps = 3\n")
            .unwrap();
        assert_eq!(cfg.swept, Param::X);
        assert_eq!(cfg.swept_values().unwrap(), vec![0.0, 0.5, 1.0]);
        assert!(SweepConfig::default().apply_kv("bogus = 1").is_err());
        assert!(SweepConfig::default().apply_kv("x 1").is_err());
        assert!(SweepConfig::default().apply_kv("x = one").is_err());
        assert!(SweepConfig::default().apply_kv("series = N").is_err());
    }

    #[test]
    fn copies_sweep_uses_powers_of_two() {
        let cfg = SweepConfig {
            swept: Param::N,
            lo: 3.0,
            hi: 40.0,
            ..Default::default()
        };
        assert_eq!(cfg.swept_values().unwrap(), vec![4.0, 8.0, 16.0, 32.0]);
    }

    #[test]
    fn sweep_order_is_series_major() {
        let cfg = SweepConfig {
            steps: 3,
            series: Some((Param::X, vec![0.9, 0.5])),
            ..Default::default()
        };
        let t = SweepTable::evaluate(&cfg).unwrap();
        let order: Vec<(Option<f64>, f64)> = t.points.iter().map(|p| (p.series, p.swept)).collect();
        assert_eq!(
            order,
            vec![(Some(0.9), 0.0), (Some(0.9), 0.5), (Some(0.9), 1.0), (Some(0.5), 0.0), (Some(0.5), 0.5), (Some(0.5), 1.0)]
        );
        assert_eq!(t.points[0].row.params.x, 0.9);
        assert_eq!(t.points[4].row.params.q, 0.5);
    }
}
