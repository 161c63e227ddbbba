//! Flag-string parsing shared by the subcommands: actions, bases, points,
//! grids. Every failure here is a configuration error and exits with code 2.

use mmtop::moment::{
    partition_beta_elliptic, partition_beta_parabolic, partition_beta_quasinilpotent, Partition,
};
use mmtop::{BetaBasis, Domain, Error, GroupAction, Point, C64};

pub fn parse_action(name: &str, n: usize, k: Option<usize>) -> Result<GroupAction, String> {
    let action = match name {
        "elliptic" => GroupAction::Elliptic(n),
        "parabolic" => GroupAction::Parabolic(n),
        "hyperbolic" => GroupAction::Hyperbolic(n),
        "nilpotent" => GroupAction::Nilpotent(n),
        "quasinilpotent" => {
            let k = k.ok_or("--k is required for the quasinilpotent action")?;
            GroupAction::QuasiNilpotent(n, k)
        }
        other => {
            return Err(format!(
                "unknown action '{other}'; expected elliptic, parabolic, hyperbolic, \
                 nilpotent or quasinilpotent"
            ))
        }
    };
    if k.is_some() && !matches!(action, GroupAction::QuasiNilpotent(..)) {
        return Err("--k applies to the quasinilpotent action only".into());
    }
    action.validate().map_err(|e| e.to_string())?;
    Ok(action)
}

pub fn parse_floats(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number '{}'", t.trim())))
        .collect()
}

pub fn parse_usizes(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad count '{}'", t.trim())))
        .collect()
}

/// Comma list "a,b,c" or inclusive linspace "lo:hi:count".
pub fn parse_grid(s: &str) -> Result<Vec<f64>, String> {
    if !s.contains(':') {
        return parse_floats(s);
    }
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("grid '{s}' must be lo:hi:count or a comma list"));
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| format!("bad number '{}'", parts[0]))?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| format!("bad number '{}'", parts[1]))?;
    let count: usize =
        parts[2].trim().parse().map_err(|_| format!("bad count '{}'", parts[2]))?;
    match count {
        0 => Err(format!("grid '{s}' wants at least one sample")),
        1 => Ok(vec![lo]),
        _ => Ok((0..count)
            .map(|i| lo + (hi - lo) * i as f64 / (count - 1) as f64)
            .collect()),
    }
}

fn parse_complex(t: &str) -> Result<C64, String> {
    let parts: Vec<&str> = t.split(',').collect();
    match parts[..] {
        [re] => Ok(C64::new(
            re.trim().parse().map_err(|_| format!("bad component '{t}'"))?,
            0.0,
        )),
        [re, im] => Ok(C64::new(
            re.trim().parse().map_err(|_| format!("bad component '{t}'"))?,
            im.trim().parse().map_err(|_| format!("bad component '{t}'"))?,
        )),
        _ => Err(format!("component '{t}' must be re or re,im")),
    }
}

pub fn parse_point(domain: Domain, s: &str) -> Result<Point, String> {
    let coords =
        s.split(';').map(parse_complex).collect::<Result<Vec<_>, _>>()?;
    Point::new(domain, coords).map_err(|e| format!("invalid --point '{s}': {e}"))
}

fn axis_index(row: &str) -> Option<usize> {
    let digits = row.strip_prefix('e')?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok()
}

pub fn resolve_basis(
    action: GroupAction,
    beta: &str,
    partition: Option<&str>,
) -> Result<BetaBasis, String> {
    if let Some(spec) = partition {
        let part = Partition::new(parse_usizes(spec)?).map_err(|e| e.to_string())?;
        let n = action.n();
        return match action {
            GroupAction::Elliptic(_) => partition_beta_elliptic(n, &part),
            GroupAction::Parabolic(_) => partition_beta_parabolic(n, &part),
            GroupAction::QuasiNilpotent(_, k) => partition_beta_quasinilpotent(n, k, &part),
            _ => Err(Error::UnsupportedAction(
                "partition bases exist for the elliptic, parabolic and quasinilpotent families"
                    .into(),
            )),
        }
        .map_err(|e| e.to_string());
    }
    if beta == "canonical" {
        return BetaBasis::canonical(action, action.n()).map_err(|e| e.to_string());
    }
    let rows: Vec<&str> = beta.split(';').map(str::trim).collect();
    if rows.iter().all(|r| axis_index(r).is_some()) {
        let mut indices = Vec::with_capacity(rows.len());
        for r in &rows {
            let i = axis_index(r).unwrap();
            if i == 0 {
                return Err("axis names are 1-based: e1, e2, ...".into());
            }
            indices.push(i - 1);
        }
        return BetaBasis::coordinate_axes(action, &indices).map_err(|e| e.to_string());
    }
    let vectors = rows.iter().map(|r| parse_floats(r)).collect::<Result<Vec<_>, _>>()?;
    BetaBasis::new(action, vectors).map_err(|e| e.to_string())
}
