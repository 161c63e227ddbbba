//! Named bounded profiles selectable from the command line. Each one
//! reduces the coordinate functions to a scalar t = c0 + sum_j c_j a_j and
//! applies a fixed bounded function of t. Arbitrary profiles stay a library
//! concern so that every run is reproducible from its config echo.

use crate::parse::parse_floats;
use mmtop::C64;

pub const NAMES: [&str; 5] = ["const", "ratio", "reciprocal", "gaussian", "sigmoid"];

/// Resolves a profile name and optional coefficient string against a basis
/// of `m` coordinate functions. Returns the profile closure together with
/// the resolved coefficients for the config echo. Without --profile-args
/// the reduction is the plain sum of the coordinates.
pub fn build(
    name: &str,
    args: Option<&str>,
    m: usize,
) -> Result<(Box<dyn Fn(&[f64]) -> C64 + Send + Sync>, Vec<f64>), String> {
    let coeffs = match args {
        Some(s) => {
            let c = parse_floats(s)?;
            if c.len() != m + 1 {
                return Err(format!(
                    "profile coefficients want {} values c0..c{m} for this basis, got {}",
                    m + 1,
                    c.len()
                ));
            }
            c
        }
        None => {
            let mut c = vec![1.0; m + 1];
            c[0] = 0.0;
            c
        }
    };
    let g: fn(f64) -> f64 = match name {
        "const" => |_| 1.0,
        "ratio" => |t| t / (1.0 + t),
        "reciprocal" => |t| 1.0 / (1.0 + t),
        "gaussian" => |t| (-t * t).exp(),
        "sigmoid" => |t| 1.0 / (1.0 + (-t).exp()),
        other => {
            return Err(format!(
                "unknown profile '{other}'; expected one of {}",
                NAMES.join(", ")
            ))
        }
    };
    let cs = coeffs.clone();
    let f = move |a: &[f64]| {
        let t = cs[0] + a.iter().zip(&cs[1..]).map(|(x, c)| x * c).sum::<f64>();
        C64::new(g(t), 0.0)
    };
    Ok((Box::new(f), coeffs))
}
