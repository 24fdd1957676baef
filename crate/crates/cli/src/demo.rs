//! Bundled datasets.

use std::f64::consts::PI;

use georefine::{ManifoldPoint, Polyline};

use crate::CliError;

pub const NAMES: [&str; 4] = ["sphere-circle", "so3-path", "spd-path", "euclidean-square"];

pub fn dataset(name: &str) -> Result<Polyline, CliError> {
    let p = match name {
        "sphere-circle" => sphere_circle(),
        "so3-path" => so3_path(),
        "spd-path" => spd_path(),
        "euclidean-square" => euclidean_square(),
        _ => {
            return Err(CliError::invalid(format!(
                "unknown demo '{name}' (expected one of {})",
                NAMES.join(", ")
            )))
        }
    };
    Ok(p.expect("bundled data is admissible"))
}

/// Eight points on the great circle through (1,0,0) tilted 30° out of the xy-plane.
fn sphere_circle() -> georefine::Result<Polyline> {
    let tilt = PI / 6.0;
    let pts = (0..8)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 8.0;
            ManifoldPoint::sphere_from_direction(&[
                t.cos(),
                t.sin() * tilt.cos(),
                t.sin() * tilt.sin(),
            ])
        })
        .collect::<georefine::Result<Vec<_>>>()?;
    Polyline::periodic(pts)
}

/// Six rotations about a slowly turning axis.
fn so3_path() -> georefine::Result<Polyline> {
    let pts = (0..6)
        .map(|k| {
            let s = k as f64 / 5.0;
            let axis = [1.0 - s, s, 0.5];
            ManifoldPoint::rotation_from_axis_angle(axis, 0.4 + 0.5 * k as f64)
        })
        .collect::<georefine::Result<Vec<_>>>()?;
    Polyline::open(pts)
}

/// Five 3×3 SPD matrices.
fn spd_path() -> georefine::Result<Polyline> {
    let pts = (0..5)
        .map(|k| {
            let s = k as f64;
            let a = [
                2.0 + s,
                0.3 * s,
                0.1,
                0.3 * s,
                1.0 + 0.5 * s * s,
                -0.2 * s,
                0.1,
                -0.2 * s,
                1.5 + (s * 0.8).sin(),
            ];
            ManifoldPoint::spd(3, a.to_vec())
        })
        .collect::<georefine::Result<Vec<_>>>()?;
    Polyline::open(pts)
}

fn euclidean_square() -> georefine::Result<Polyline> {
    let pts = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
        .iter()
        .map(|c| ManifoldPoint::euclidean(c.to_vec()))
        .collect::<georefine::Result<Vec<_>>>()?;
    Polyline::periodic(pts)
}
