//! Escape-time renderings of filled Julia sets of `z ↦ z² + c`.
//!
//! This is the only floating-point code in the workspace; the images are
//! illustrations. Preset parameters are not stored as constants but
//! recomputed from the parabolic cycles that characterize them, and each
//! carries a note on how it was obtained.

use std::str::FromStr;

use image::{GrayImage, Luma};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Residual demanded of preset cycles.
pub const CYCLE_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JuliaParams {
    /// Real and imaginary parts of `c`, as decimal strings.
    pub c: (String, String),
    pub max_iter: u32,
    pub escape_radius: f64,
    pub width: u32,
    pub height: u32,
    /// `(x_min, y_min, x_max, y_max)` in the plane.
    pub viewport: (f64, f64, f64, f64),
}

impl JuliaParams {
    pub fn new(c: Complex64) -> Self {
        JuliaParams {
            c: (format!("{}", c.re), format!("{}", c.im)),
            max_iter: 400,
            escape_radius: 2.0,
            width: 800,
            height: 600,
            viewport: (-2.0, -1.5, 2.0, 1.5),
        }
    }

    pub fn c(&self) -> Result<Complex64, CliError> {
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::Usage(format!("`{s}` is not a decimal number")))
        };
        Ok(Complex64::new(parse(&self.c.0)?, parse(&self.c.1)?))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        self.c()?;
        let (x0, y0, x1, y1) = self.viewport;
        let bad = |m: &str| Err(CliError::Usage(m.into()));
        if self.max_iter < 1 {
            return bad("max_iter must be at least 1");
        }
        if !(self.escape_radius >= 2.0 && self.escape_radius.is_finite()) {
            return bad("escape_radius must be at least 2");
        }
        if self.width == 0 || self.height == 0 {
            return bad("image size must be positive");
        }
        if !(x0 < x1 && y0 < y1) || [x0, y0, x1, y1].iter().any(|v| !v.is_finite()) {
            return bad("viewport must be a nonempty rectangle");
        }
        Ok(())
    }
}

/// Escape time of `z` under `z ↦ z² + c`, or `None` if the orbit stays
/// within `radius` for `max_iter` steps.
pub fn escape_time(z: Complex64, c: Complex64, max_iter: u32, radius: f64) -> Option<u32> {
    let r2 = radius * radius;
    let mut z = z;
    for k in 0..max_iter {
        if z.norm_sqr() > r2 {
            return Some(k);
        }
        z = z * z + c;
    }
    (z.norm_sqr() > r2).then_some(max_iter)
}

/// Black pixels for bounded orbits; escaping points are shaded by escape time.
pub fn render(p: &JuliaParams) -> Result<GrayImage, CliError> {
    p.validate()?;
    let c = p.c()?;
    let (x0, y0, x1, y1) = p.viewport;
    let (w, h) = (p.width, p.height);
    let rows: Vec<Vec<u8>> = (0..h)
        .into_par_iter()
        .map(|j| {
            let y = y1 - (j as f64 + 0.5) * (y1 - y0) / h as f64;
            (0..w)
                .map(|i| {
                    let x = x0 + (i as f64 + 0.5) * (x1 - x0) / w as f64;
                    match escape_time(Complex64::new(x, y), c, p.max_iter, p.escape_radius) {
                        None => 0,
                        Some(k) => 255 - (160.0 * (k as f64 / p.max_iter as f64).sqrt()) as u8,
                    }
                })
                .collect()
        })
        .collect();
    let mut img = GrayImage::new(w, h);
    for (j, row) in rows.iter().enumerate() {
        for (i, v) in row.iter().enumerate() {
            img.put_pixel(i as u32, j as u32, Luma([*v]));
        }
    }
    Ok(img)
}

/// `f_c^p` at `z` together with its first and second partial derivatives.
struct Iterate {
    w: Complex64,
    dz: Complex64,
    dc: Complex64,
    dzz: Complex64,
    dzc: Complex64,
}

fn iterate(z: Complex64, c: Complex64, p: u32) -> Iterate {
    let one = Complex64::new(1.0, 0.0);
    let mut it = Iterate {
        w: z,
        dz: one,
        dc: Complex64::new(0.0, 0.0),
        dzz: Complex64::new(0.0, 0.0),
        dzc: Complex64::new(0.0, 0.0),
    };
    for _ in 0..p {
        let Iterate { w, dz, dc, dzz, dzc } = it;
        it = Iterate {
            w: w * w + c,
            dz: 2.0 * w * dz,
            dc: 2.0 * w * dc + one,
            dzz: 2.0 * (dz * dz + w * dzz),
            dzc: 2.0 * (dc * dz + w * dzc),
        };
    }
    it
}

/// `(|f^p(z) − z|, |(f^p)'(z) − 1|)`: zero exactly at a parabolic `p`-cycle
/// with multiplier 1.
pub fn cycle_residual(z: Complex64, c: Complex64, p: u32) -> (f64, f64) {
    let it = iterate(z, c, p);
    ((it.w - z).norm(), (it.dz - 1.0).norm())
}

/// Newton's method on `f^p(z) = z`, `(f^p)'(z) = 1` in the unknowns `(z, c)`.
pub fn parabolic_newton(mut z: Complex64, mut c: Complex64, p: u32) -> (Complex64, Complex64) {
    for _ in 0..100 {
        let it = iterate(z, c, p);
        let (f1, f2) = (it.w - z, it.dz - 1.0);
        let (a, b, d, e) = (it.dz - 1.0, it.dc, it.dzz, it.dzc);
        let det = a * e - b * d;
        if det.norm() == 0.0 {
            break;
        }
        let step_z = (e * f1 - b * f2) / det;
        let step_c = (a * f2 - d * f1) / det;
        z -= step_z;
        c -= step_c;
        if step_z.norm() + step_c.norm() < 1e-16 {
            break;
        }
    }
    (z, c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Preset {
    Basilica,
    Rabbit(u32),
    Airplane,
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Preset::Basilica => f.write_str("basilica"),
            Preset::Rabbit(n) => write!(f, "rabbit:{n}"),
            Preset::Airplane => f.write_str("airplane"),
        }
    }
}

impl FromStr for Preset {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "basilica" => Ok(Preset::Basilica),
            "airplane" => Ok(Preset::Airplane),
            _ => {
                let n = s
                    .strip_prefix("rabbit")
                    .map(|r| r.strip_prefix(':').unwrap_or(r))
                    .and_then(|r| r.parse::<u32>().ok())
                    .filter(|n| (2..=64).contains(n))
                    .ok_or_else(|| CliError::Usage(format!("unknown preset `{s}`")))?;
                Ok(if n == 2 { Preset::Basilica } else { Preset::Rabbit(n) })
            }
        }
    }
}

impl From<Preset> for String {
    fn from(p: Preset) -> String {
        p.to_string()
    }
}

impl TryFrom<String> for Preset {
    type Error = CliError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A preset parameter, the parabolic cycle certifying it, and how it was found.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresetValue {
    pub preset: Preset,
    pub c: (f64, f64),
    pub period: u32,
    /// A point of the parabolic cycle.
    pub cycle_point: (f64, f64),
    /// `(|f^p(z) − z|, |(f^p)'(z) − 1|)` at the cycle point.
    pub residual: (f64, f64),
    pub provenance: String,
}

impl PresetValue {
    pub fn c(&self) -> Complex64 {
        Complex64::new(self.c.0, self.c.1)
    }

    pub fn certified(&self) -> bool {
        self.residual.0 <= CYCLE_TOLERANCE && self.residual.1 <= CYCLE_TOLERANCE
    }
}

fn value(preset: Preset, c: Complex64, z: Complex64, period: u32, provenance: String) -> PresetValue {
    PresetValue {
        preset,
        c: (c.re, c.im),
        period,
        cycle_point: (z.re, z.im),
        residual: cycle_residual(z, c, period),
        provenance,
    }
}

/// Computes the parameter of a preset from its parabolic cycle.
pub fn preset_value(preset: &Preset) -> PresetValue {
    match *preset {
        Preset::Basilica => {
            // f²(z) − z = (z² − z + c)(z² + z + c + 1); the 2-cycle solves the
            // second factor, so its multiplier 4·z₁z₂ equals 4(c + 1). The
            // root of the period-2 component has multiplier 1.
            let c = Complex64::new(1.0 / 4.0 - 1.0, 0.0);
            let z = (-1.0 + (1.0 - 4.0 * (c + 1.0)).sqrt()) / 2.0;
            value(
                Preset::Basilica,
                c,
                z,
                2,
                "2-cycle multiplier 4(c+1) set to 1 and solved exactly: c = 1/4 - 1".into(),
            )
        }
        Preset::Rabbit(n) => {
            // On the main cardioid the fixed point λ/2 has multiplier λ at
            // c = λ/2 − λ²/4; at λ = e^{2πi/n} it becomes a parabolic n-cycle.
            let lambda = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / n as f64);
            let c = lambda / 2.0 - lambda * lambda / 4.0;
            value(
                Preset::Rabbit(n),
                c,
                lambda / 2.0,
                n,
                format!("main-cardioid parameter c = l/2 - l^2/4 at l = exp(2 pi i/{n}); fixed point l/2 is a parabolic {n}-cycle"),
            )
        }
        Preset::Airplane => {
            // The real period-3 center solves f_c³(0) = 0; Newton from there
            // reaches the root of its component.
            let mut c = Complex64::new(-2.0, 0.0);
            for _ in 0..100 {
                let it = iterate(Complex64::new(0.0, 0.0), c, 3);
                c -= it.w / it.dc;
            }
            let center = c;
            let (z, c) = parabolic_newton(Complex64::new(0.0, 0.0), center, 3);
            value(
                Preset::Airplane,
                c,
                z,
                3,
                format!(
                    "Newton on f^3(z) = z, (f^3)'(z) = 1 from the real period-3 center c = {:.12}",
                    center.re
                ),
            )
        }
    }
}
