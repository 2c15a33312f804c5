//! CSV persistence. Files start with `# pvarlab grid M N` (M = 1 for a
//! one-dimensional grid) followed by M comma-separated rows. Values are
//! written in shortest round-trip form, so save/load is bit-exact.

use super::{Grid1, Grid2, GridData};
use crate::error::{Error, Result};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Either kind of grid, as read from a file.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyGrid {
    One(Grid1),
    Two(Grid2),
}

impl AnyGrid {
    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyGrid::One(g) => (1, g.len()),
            AnyGrid::Two(f) => (f.rows(), f.cols()),
        }
    }

    pub fn samples(&self) -> &[f64] {
        match self {
            AnyGrid::One(g) => g.samples(),
            AnyGrid::Two(f) => f.samples(),
        }
    }
}

impl From<Grid1> for AnyGrid {
    fn from(g: Grid1) -> Self {
        AnyGrid::One(g)
    }
}

impl From<Grid2> for AnyGrid {
    fn from(f: Grid2) -> Self {
        AnyGrid::Two(f)
    }
}

pub fn write_csv<W: Write>(grid: &AnyGrid, mut w: W) -> Result<()> {
    let (rows, cols) = grid.shape();
    writeln!(w, "# pvarlab grid {rows} {cols}")?;
    for row in grid.samples().chunks(cols) {
        let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    w.flush()?;
    Ok(())
}

pub fn save_csv(grid: &AnyGrid, path: impl AsRef<Path>) -> Result<()> {
    write_csv(grid, BufWriter::new(File::create(path)?))
}

fn parse_header(line: &str) -> Result<(usize, usize)> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    let bad = || Error::Csv(format!("malformed header {line:?}"));
    if tokens.len() != 5 || tokens[0] != "#" || tokens[1] != "pvarlab" || tokens[2] != "grid" {
        return Err(bad());
    }
    let m = tokens[3].parse().map_err(|_| bad())?;
    let n = tokens[4].parse().map_err(|_| bad())?;
    Ok((m, n))
}

/// Reads a grid. A missing header is tolerated (dimensions are then taken
/// from the data); a present header must match the data exactly.
pub fn read_csv<R: BufRead>(r: R) -> Result<AnyGrid> {
    let mut header = None;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        if text.starts_with('#') {
            if lineno == 0 {
                header = Some(parse_header(text)?);
                continue;
            }
            return Err(Error::Csv(format!(
                "unexpected comment on line {}",
                lineno + 1
            )));
        }
        let row = text
            .split(',')
            .map(|cell| {
                cell.trim().parse::<f64>().map_err(|_| {
                    Error::Csv(format!(
                        "non-numeric cell {:?} on line {}",
                        cell,
                        lineno + 1
                    ))
                })
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Csv(format!("ragged row on line {}", lineno + 1)));
            }
        }
        rows.push(row);
    }
    let m = rows.len();
    let n = rows.first().map_or(0, |r| r.len());
    if let Some((hm, hn)) = header {
        if (hm, hn) != (m, n) {
            return Err(Error::Csv(format!(
                "header declares {hm}x{hn} but the data is {m}x{n}"
            )));
        }
    }
    match m {
        0 => Err(Error::Csv("no data rows".into())),
        1 => Ok(AnyGrid::One(Grid1::new(rows.pop().unwrap())?)),
        _ => Ok(AnyGrid::Two(Grid2::from_rows(&rows)?)),
    }
}

pub fn load_csv(path: impl AsRef<Path>) -> Result<AnyGrid> {
    read_csv(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkerboard_without_header() {
        let g = read_csv("1,0\n0,1\n".as_bytes()).unwrap();
        let expect = Grid2::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(g, AnyGrid::Two(expect));
    }

    #[test]
    fn header_mismatch_is_rejected() {
        assert!(read_csv("# pvarlab grid 3 2\n1,0\n0,1\n".as_bytes()).is_err());
        assert!(read_csv("# pvarlab mesh 2 2\n1,0\n0,1\n".as_bytes()).is_err());
        assert!(read_csv("1,0\n0\n".as_bytes()).is_err());
        assert!(read_csv("1,x\n0,1\n".as_bytes()).is_err());
    }

    #[test]
    fn round_trip_is_bit_exact() {
        let g = AnyGrid::One(Grid1::new(vec![0.1, -1e-300, 1.0 / 3.0, 2e17, -0.0]).unwrap());
        let mut buf = Vec::new();
        write_csv(&g, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        let (a, b) = (g.samples(), back.samples());
        assert!(a.iter().zip(b).all(|(x, y)| x.to_bits() == y.to_bits()));
    }
}
