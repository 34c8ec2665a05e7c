use std::io::Write;

use dbcert_core::hutchings::{hutchings_point, VolumePair};
use dbcert_core::SpaceTag;

/// `VMIN:VMAX:WMIN:WMAX:RES`: `RES` evenly spaced values on each axis,
/// endpoints included.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub v_min: f64,
    pub v_max: f64,
    pub w_min: f64,
    pub w_max: f64,
    pub res: usize,
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 5 {
            return Err(format!("expected VMIN:VMAX:WMIN:WMAX:RES, got {s:?}"));
        }
        let f = |i: usize| parts[i].trim().parse::<f64>().map_err(|e| format!("{}: {e}", parts[i]));
        let g = GridSpec {
            v_min: f(0)?,
            v_max: f(1)?,
            w_min: f(2)?,
            w_max: f(3)?,
            res: parts[4].trim().parse().map_err(|e| format!("{}: {e}", parts[4]))?,
        };
        if [g.v_min, g.v_max, g.w_min, g.w_max].iter().any(|x| !x.is_finite()) {
            return Err("grid bounds must be finite".into());
        }
        Ok(g)
    }
}

fn axis(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 0 || lo > hi {
        return Vec::new();
    }
    if n == 1 || lo == hi {
        return vec![lo];
    }
    (0..n).map(|i| if i == n - 1 { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
}

impl GridSpec {
    pub fn v_axis(&self) -> Vec<f64> {
        axis(self.v_min, self.v_max, self.res)
    }

    pub fn w_axis(&self) -> Vec<f64> {
        axis(self.w_min, self.w_max, self.res)
    }
}

/// `F` at every grid point; `None` where the solver gives up or the point
/// is outside the space.
pub fn evaluate(space: SpaceTag, g: &GridSpec) -> Vec<(f64, f64, Option<f64>)> {
    let ws = g.w_axis();
    let mut out = Vec::new();
    for v in g.v_axis() {
        for &w in &ws {
            let f = hutchings_point(space, VolumePair { v, w }).ok().filter(|x| x.is_finite());
            out.push((v, w, f));
        }
    }
    out
}

/// Header `v,w,F`, one row per point with `v` the slow index. Values use
/// the shortest round-tripping decimal form.
pub fn write_csv<W: Write>(mut out: W, rows: &[(f64, f64, Option<f64>)]) -> std::io::Result<()> {
    writeln!(out, "v,w,F")?;
    for (v, w, f) in rows {
        match f {
            Some(f) => writeln!(out, "{v:?},{w:?},{f:?}")?,
            None => writeln!(out, "{v:?},{w:?},")?,
        }
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_axes() {
        let g: GridSpec = "0.1:20:0.1:20:5".parse().unwrap();
        let ax = g.v_axis();
        assert_eq!((ax.len(), ax[0], ax[4]), (5, 0.1, 20.0));
        assert!(ax.iter().zip([0.1, 5.075, 10.05, 15.025, 20.0]).all(|(a, b)| (a - b).abs() < 1e-12));
        assert!("1:2:3".parse::<GridSpec>().is_err());
        let e: GridSpec = "2:1:0:1:4".parse().unwrap();
        assert!(e.v_axis().is_empty());
    }

    #[test]
    fn empty_grid_is_header_only() {
        let g: GridSpec = "1:1:1:1:0".parse().unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &evaluate(SpaceTag::H3, &g)).unwrap();
        assert_eq!(buf, b"v,w,F\n");
    }

    #[test]
    fn degenerate_cells_are_blank() {
        // Beyond the total volume of S³.
        let g: GridSpec = "15:15:15:15:1".parse().unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &evaluate(SpaceTag::S3, &g)).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "v,w,F\n15.0,15.0,\n");
    }
}
