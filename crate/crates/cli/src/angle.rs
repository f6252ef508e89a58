//! Angle tokens: plain reals, or multiples of π such as `pi`, `pi/3`,
//! `2pi/3`, `2*pi/3`, `0.5pi`.

use std::f64::consts::PI;

pub fn parse_angle(s: &str) -> Result<f64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_ascii_lowercase();
    if t.is_empty() {
        return Err("empty angle".into());
    }
    let Some(pos) = t.find("pi") else {
        return finite(t.parse::<f64>().map_err(|_| format!("cannot parse angle {s:?}"))?, s);
    };
    let (head, rest) = (&t[..pos], &t[pos + 2..]);
    let head = head.strip_suffix('*').unwrap_or(head);
    let coeff = match head {
        "" => 1.0,
        "-" => -1.0,
        h => h.parse::<f64>().map_err(|_| format!("bad coefficient in angle {s:?}"))?,
    };
    let denom = match rest {
        "" => 1.0,
        r => r
            .strip_prefix('/')
            .and_then(|d| d.parse::<f64>().ok())
            .ok_or_else(|| format!("bad denominator in angle {s:?}"))?,
    };
    if denom == 0.0 {
        return Err(format!("zero denominator in angle {s:?}"));
    }
    finite(coeff * PI / denom, s)
}

fn finite(v: f64, s: &str) -> Result<f64, String> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("angle {s:?} is not finite"))
    }
}

/// Inclusive arithmetic grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleGrid {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl AngleGrid {
    /// Points start + i·step up to stop (with 1e-9 relative slack so that a
    /// stop landing on the grid is included). Points are rounded to 15
    /// significant digits so decimal grids print as typed.
    pub fn points(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n)
            .map(|i| {
                let x = self.start + i as f64 * self.step;
                format!("{x:.14e}").parse::<f64>().expect("formatted float parses")
            })
            .collect()
    }
}

pub fn parse_grid(s: &str) -> Result<AngleGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("grid must be start:stop:step, got {s:?}"));
    };
    let g = AngleGrid {
        start: parse_angle(a)?,
        stop: parse_angle(b)?,
        step: parse_angle(c)?,
    };
    if !(g.step > 0.0) || g.stop < g.start {
        return Err(format!("grid {s:?} needs step > 0 and stop ≥ start"));
    }
    if (g.stop - g.start) / g.step > 1e6 {
        return Err(format!("grid {s:?} has more than a million points"));
    }
    Ok(g)
}
