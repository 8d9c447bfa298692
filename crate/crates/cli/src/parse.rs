//! Value syntaxes shared by flags and config files.

use update_queues::Perturbation;

use crate::error::{CliError, Result};

/// Slack allowed when deciding whether `stop` is on a `start:stop:step` grid.
pub const GRID_ENDPOINT_SLACK: f64 = 1e-12;

/// Parses a Δ grid: `start:stop:step` (both ends included), a comma list,
/// or a single value. Entries must be positive and strictly increasing.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(CliError::Usage("delta grid is empty".into()));
    }
    let grid = if text.contains(':') {
        range_grid(text)?
    } else {
        text.split(',')
            .map(|s| number("delta grid entry", s))
            .collect::<Result<Vec<_>>>()?
    };
    if grid.is_empty() {
        return Err(CliError::Usage("delta grid is empty".into()));
    }
    if let Some(bad) = grid.iter().find(|d| !(d.is_finite() && **d > 0.0)) {
        return Err(CliError::Usage(format!(
            "delta grid entries must be positive, got {bad}"
        )));
    }
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Usage(
            "delta grid must be strictly increasing".into(),
        ));
    }
    Ok(grid)
}

fn range_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    let [start, stop, step] = parts[..] else {
        return Err(CliError::Usage(format!(
            "grid `{text}` is not start:stop:step"
        )));
    };
    let (start, stop, step) = (
        number("grid start", start)?,
        number("grid stop", stop)?,
        number("grid step", step)?,
    );
    if !(step > 0.0) {
        return Err(CliError::Usage(format!(
            "grid step must be positive, got {step}"
        )));
    }
    if stop < start {
        return Err(CliError::Usage(format!(
            "grid stop {stop} is below start {start}"
        )));
    }
    let mut count = ((stop - start) / step).floor() as usize;
    if start + (count + 1) as f64 * step <= stop + GRID_ENDPOINT_SLACK {
        count += 1;
    }
    // points are start + k·step, snapped to 12 decimals so 0.6:3.0:0.2 prints as typed
    Ok((0..=count).map(|k| snap(start + k as f64 * step)).collect())
}

fn snap(x: f64) -> f64 {
    let snapped = (x * 1e12).round() / 1e12;
    if (snapped - x).abs() <= GRID_ENDPOINT_SLACK {
        snapped
    } else {
        x
    }
}

/// Parses an initial-condition offset pattern: `ε` (±ε on queues 1 and 2),
/// `alt:ε` (alternating signs over all queues) or a comma list with one
/// offset per queue.
pub fn parse_perturbation(text: &str) -> Result<Perturbation<f64>> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("alt:") {
        return Ok(Perturbation::Alternating(number(
            "seed perturbation",
            rest,
        )?));
    }
    if text.contains(',') {
        let offsets = text
            .split(',')
            .map(|s| number("seed perturbation entry", s))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Perturbation::Offsets(offsets));
    }
    Ok(Perturbation::Pair(number("seed perturbation", text)?))
}

pub(crate) fn number(what: &str, text: &str) -> Result<f64> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: `{}` is not a number", text.trim())))?;
    if !v.is_finite() {
        return Err(CliError::Usage(format!("{what} must be finite, got {v}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_includes_both_ends() {
        let g = parse_grid("0.6:3.0:0.2").unwrap();
        assert_eq!(g.len(), 13);
        assert_eq!(g[0], 0.6);
        assert_eq!(g[2], 1.0);
        assert_eq!(g[12], 3.0);
    }

    #[test]
    fn range_stop_off_grid_is_dropped() {
        assert_eq!(parse_grid("1:2.05:0.5").unwrap(), vec![1.0, 1.5, 2.0]);
        assert_eq!(parse_grid("1:1:0.5").unwrap(), vec![1.0]);
    }

    #[test]
    fn lists_and_singletons() {
        assert_eq!(parse_grid("0.5, 1.5,2").unwrap(), vec![0.5, 1.5, 2.0]);
        assert_eq!(parse_grid("0.7").unwrap(), vec![0.7]);
    }

    #[test]
    fn bad_grids() {
        for bad in [
            "", "1:0:0.1", "0:1:0.5", "1:2:0", "1:2", "1,1", "2,1", "a:b:c", "-1", "nan",
        ] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn perturbations() {
        assert_eq!(
            parse_perturbation("0.01").unwrap(),
            Perturbation::Pair(0.01)
        );
        assert_eq!(
            parse_perturbation("alt:0.5").unwrap(),
            Perturbation::Alternating(0.5)
        );
        assert_eq!(
            parse_perturbation("-0.1,0.1,0").unwrap(),
            Perturbation::Offsets(vec![-0.1, 0.1, 0.0])
        );
        assert!(parse_perturbation("alt:x").is_err());
    }
}
