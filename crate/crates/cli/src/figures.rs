//! Column-oriented plot data for the bound curves and the classification
//! points. These files carry display approximations of the log terms; the
//! red/black labels come from the exact integer comparisons, never from
//! the floats.

use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use degenbound::classifier::classify_point;
use degenbound::exact::sphere_sum;

const PRECISION_NOTE: &str = "# values are display approximations (3 decimals); \
every verdict in this tool is decided by exact integer comparison\n";

fn log2_big(f: &BigUint) -> f64 {
    let bits = f.bits();
    if bits <= 53 {
        f.to_f64().expect("fits in f64").log2()
    } else {
        let shift = bits - 53;
        let top = (f >> shift).to_f64().expect("53-bit mantissa");
        top.log2() + shift as f64
    }
}

/// Real-valued shifted bound at integer n for weight t:
/// n - ell - log2(f_t(n - sigma)) once the shift fits, n - ell before.
fn shifted_value(n: u32, t: u32, ell: u32, sigma: u32) -> f64 {
    if sigma <= n {
        f64::from(n) - f64::from(ell) - log2_big(&sphere_sum((n - sigma).into(), t))
    } else {
        f64::from(n) - f64::from(ell)
    }
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))
}

pub fn emit(which: u8, out_dir: &Path) -> Result<ExitCode> {
    std::fs::create_dir_all(out_dir)
        .with_context(|| format!("creating {}", out_dir.display()))?;
    match which {
        1 => figure1(out_dir)?,
        2 => figure2(out_dir)?,
        3 => figure3(out_dir)?,
        _ => unreachable!("clap range"),
    }
    Ok(ExitCode::SUCCESS)
}

/// The weight-one base bound and two of its profile shifts.
fn figure1(dir: &Path) -> Result<()> {
    let profiles = [(0u32, 0u32), (3, 6), (8, 14)];
    let mut text = String::from("# weight-one sphere-packing bound and two profile shifts\n");
    text.push_str(PRECISION_NOTE);
    text.push_str("n\tl0_s0\tl3_s6\tl8_s14\n");
    for n in 0..=26u32 {
        write!(text, "{n}").unwrap();
        for (ell, sigma) in profiles {
            write!(text, "\t{:.3}", shifted_value(n, 1, ell, sigma)).unwrap();
        }
        text.push('\n');
    }
    write_file(dir, "figure1.tsv", &text)
}

/// The (ell, 1)-bound family for ell = 0..=6.
fn figure2(dir: &Path) -> Result<()> {
    let mut text = String::from("# (ell, t)-bounds for t = 1, ell = 0..=6\n");
    text.push_str(PRECISION_NOTE);
    text.push_str("n\tl0\tl1\tl2\tl3\tl4\tl5\tl6\n");
    for n in 0..=16u32 {
        write!(text, "{n}").unwrap();
        for ell in 0..=6u32 {
            write!(text, "\t{:.3}", shifted_value(n, 1, ell, 2 * ell)).unwrap();
        }
        text.push('\n');
    }
    write_file(dir, "figure2.tsv", &text)
}

/// The degenerate-code bound against the base bound, plus the classified
/// optimal points.
fn figure3(dir: &Path) -> Result<()> {
    let mut curves = String::from("# weight-one base bound and the degenerate-code bound\n");
    curves.push_str(PRECISION_NOTE);
    curves.push_str("n\tquantum_hamming\tdegenerate\n");
    for n in 0..=26u32 {
        writeln!(
            curves,
            "{n}\t{:.3}\t{:.3}",
            shifted_value(n, 1, 0, 0),
            shifted_value(n, 1, 1, 2)
        )
        .unwrap();
    }
    write_file(dir, "figure3_curves.tsv", &curves)?;

    let mut points = String::from("# optimal distance-3 parameters; red = may be degenerate\n");
    points.push_str("n\tk\tcolor\n");
    for n in 5..=25u32 {
        let p = classify_point(n).expect("table covers 5..=25");
        writeln!(points, "{n}\t{}\t{}", p.optimal_k, if p.allowed { "red" } else { "black" })
            .unwrap();
    }
    write_file(dir, "figure3_points.tsv", &points)
}
