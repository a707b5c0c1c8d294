//! Plain-text serialization of grid functions.
//!
//! Layout: a `grid <dim>` header, one `axis <lower> <upper> <count>` line
//! per axis, then one value per line in flat index order (`inf` marks an
//! infinite node). Floats print in Rust's shortest round-trip form, so a
//! write/read cycle reproduces values bit for bit. Coverage fractions are
//! derived data and are not stored.

use diffn_core::grid::{Axis, BoxDomain, GridFunction};
use diffn_core::ExtNonNeg;

use crate::CliError;

pub fn write_grid(f: &GridFunction<f64>) -> String {
    let d = f.domain();
    let mut out = format!("grid {}\n", d.dim());
    for k in 0..d.dim() {
        let ax = d.axis(k);
        out.push_str(&format!("axis {} {} {}\n", ax.lower(), ax.upper(), ax.count()));
    }
    for v in f.values() {
        if v.is_infinite() {
            out.push_str("inf\n");
        } else {
            out.push_str(&format!("{}\n", v.value()));
        }
    }
    out
}

fn bad(line: usize, what: &str) -> CliError {
    CliError::Parse(format!("line {}: {what}", line + 1))
}

pub fn read_grid(text: &str) -> Result<GridFunction<f64>, CliError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (ln, header) = lines.next().ok_or_else(|| bad(0, "empty input"))?;
    let dim: usize = header
        .trim()
        .strip_prefix("grid ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| bad(ln, "expected `grid <dim>`"))?;
    let mut axes = Vec::with_capacity(dim);
    for _ in 0..dim {
        let (ln, line) = lines.next().ok_or_else(|| bad(0, "missing axis line"))?;
        let parts: Vec<&str> = line.trim().split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "axis" {
            return Err(bad(ln, "expected `axis <lower> <upper> <count>`"));
        }
        let lower: f64 = parts[1].parse().map_err(|_| bad(ln, "bad axis lower"))?;
        let upper: f64 = parts[2].parse().map_err(|_| bad(ln, "bad axis upper"))?;
        let count: usize = parts[3].parse().map_err(|_| bad(ln, "bad axis count"))?;
        axes.push(Axis::new(lower, upper, count).map_err(CliError::Core)?);
    }
    let domain = BoxDomain::new(axes).map_err(CliError::Core)?;
    let mut values = Vec::with_capacity(domain.node_count());
    for (ln, line) in lines {
        let t = line.trim();
        let v = if t == "inf" {
            ExtNonNeg::infinity()
        } else {
            let x: f64 = t.parse().map_err(|_| bad(ln, "bad value"))?;
            ExtNonNeg::new(x).map_err(CliError::Core)?
        };
        values.push(v);
    }
    if values.len() != domain.node_count() {
        return Err(CliError::Parse(format!(
            "expected {} values, found {}",
            domain.node_count(),
            values.len()
        )));
    }
    GridFunction::from_values(domain, values).map_err(CliError::Core)
}

#[cfg(test)]
mod tests {
    use super::*;
    use diffn_core::family::AnalyticFamily;

    #[test]
    fn round_trip_is_bit_exact() {
        let d = BoxDomain::from_bounds(&[(-1.5, 2.0, 17), (-0.25, 0.75, 9)]).unwrap();
        let f = AnalyticFamily::Gaussian { center: vec![0.3, -0.1], width: 0.8 }
            .sample(&d)
            .unwrap();
        let back = read_grid(&write_grid(&f)).unwrap();
        assert!(back.domain().same_grid(f.domain()));
        for i in 0..d.node_count() {
            assert_eq!(back.value(i), f.value(i));
        }
    }

    #[test]
    fn infinite_nodes_survive() {
        let d = BoxDomain::from_bounds(&[(-0.25, 1.0, 21)]).unwrap();
        let f = AnalyticFamily::OneDExtremalB { alpha: -2.0 }.sample(&d).unwrap();
        assert_eq!(f.infinite_count(), 1);
        let back = read_grid(&write_grid(&f)).unwrap();
        assert_eq!(back.infinite_count(), 1);
        for i in 0..d.node_count() {
            assert_eq!(back.value(i), f.value(i));
        }
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(read_grid("").is_err());
        assert!(read_grid("grid 1\naxis 0 1 3\n0.5\n0.5\n").is_err());
        assert!(read_grid("grid 1\naxis 0 1 3\n0.5\n-1\n0.5\n").is_err());
        assert!(read_grid("grid 1\naxis 1 0 3\n").is_err());
        assert!(read_grid("grid 1\naxis 0 1 3\n0.1\nwat\n0.1\n").is_err());
    }
}
