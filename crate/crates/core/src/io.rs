//! CSV serialization for signals, spectra, operator matrices, bound sweeps,
//! and localization tables. Floats are written with 17 significant digits
//! so values round-trip exactly and reruns are byte-identical.

use std::io::Write;

use ndarray::{Array1, Array2, ArrayView1, ArrayView2};
use num_complex::Complex64;

use crate::approx::BoundReport;
use crate::error::{Error, Result};
use crate::localize::DecayRow;
use crate::spectral::{FrequencySet, SpectralBasis};

/// 17-significant-digit float formatting shared by every writer.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes `index,re,im` rows for a complex signal.
pub fn write_signal_csv<W: Write>(mut w: W, x: &ArrayView1<Complex64>) -> Result<()> {
    writeln!(w, "index,re,im")?;
    for (i, z) in x.iter().enumerate() {
        writeln!(w, "{i},{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
    }
    Ok(())
}

/// Reads a signal written by [`write_signal_csv`]. Rows must be dense and
/// in index order.
pub fn read_signal_csv(text: &str) -> Result<Array1<Complex64>> {
    let mut values = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("index") {
            continue;
        }
        let parse_err = |msg: String| Error::Parse {
            line: lineno + 1,
            msg,
        };
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() != 3 {
            return Err(parse_err(format!("expected `index,re,im`, got `{line}`")));
        }
        let idx: usize = cols[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad index `{}`", cols[0])))?;
        if idx != values.len() {
            return Err(parse_err(format!(
                "rows out of order: expected index {}, got {idx}",
                values.len()
            )));
        }
        let re: f64 = cols[1]
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad float `{}`", cols[1])))?;
        let im: f64 = cols[2]
            .trim()
            .parse()
            .map_err(|_| parse_err(format!("bad float `{}`", cols[2])))?;
        values.push(Complex64::new(re, im));
    }
    Ok(Array1::from(values))
}

/// Writes `l,eigenvalue,nu,theta` rows for a spectral basis.
pub fn write_spectrum_csv<W: Write>(
    mut w: W,
    basis: &SpectralBasis,
    freqs: &FrequencySet,
) -> Result<()> {
    writeln!(w, "l,eigenvalue,nu,theta")?;
    for l in 0..basis.n() {
        writeln!(
            w,
            "{l},{},{},{}",
            fmt_f64(basis.eigenvalues()[l]),
            fmt_f64(freqs.nu[l]),
            fmt_f64(freqs.theta[l])
        )?;
    }
    Ok(())
}

/// Writes a dense complex matrix as `i,j,re,im` rows.
pub fn write_matrix_csv<W: Write>(mut w: W, m: &ArrayView2<Complex64>) -> Result<()> {
    writeln!(w, "i,j,re,im")?;
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            let z = m[[i, j]];
            writeln!(w, "{i},{j},{},{}", fmt_f64(z.re), fmt_f64(z.im))?;
        }
    }
    Ok(())
}

/// Writes the Laplacian-kind bound sweep. When every report carries an
/// oracle value an `oracle` column is appended.
pub fn write_bounds_csv<W: Write>(mut w: W, rows: &[BoundReport]) -> Result<()> {
    let with_oracle = !rows.is_empty() && rows.iter().all(|r| r.oracle.is_some());
    write!(
        w,
        "P,Q,alpha,rho,kappa_C,kappa_S,kappa_R,total_paper,corrected_total,dc_term"
    )?;
    writeln!(w, "{}", if with_oracle { ",oracle" } else { "" })?;
    for r in rows {
        write!(
            w,
            "{},{},{},{},{},{},{},{},{},{}",
            r.p,
            r.q,
            fmt_f64(r.alpha),
            fmt_f64(r.rho),
            fmt_f64(r.kappa_c),
            fmt_f64(r.kappa_s),
            fmt_f64(r.kappa_r),
            fmt_f64(r.total_paper),
            fmt_f64(r.corrected_total),
            fmt_f64(r.dc_term)
        )?;
        if with_oracle {
            write!(w, ",{}", fmt_f64(r.oracle.unwrap()))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

/// Writes an adjacency-kind bound sweep as `K,alpha,bound` rows.
pub fn write_adjacency_bounds_csv<W: Write>(mut w: W, rows: &[(usize, f64, f64)]) -> Result<()> {
    writeln!(w, "K,alpha,bound")?;
    for &(k, alpha, bound) in rows {
        writeln!(w, "{k},{},{}", fmt_f64(alpha), fmt_f64(bound))?;
    }
    Ok(())
}

/// One `alpha,xi,min_order,P,Q,total` row of a minimal-order sweep. `None`
/// marks a search that exceeded its cap.
pub struct MinOrderRow {
    pub alpha: f64,
    pub xi: f64,
    pub solution: Option<(usize, usize, f64)>,
}

pub fn write_min_order_csv<W: Write>(mut w: W, rows: &[MinOrderRow]) -> Result<()> {
    writeln!(w, "alpha,xi,min_order,P,Q,total")?;
    for r in rows {
        match r.solution {
            Some((p, q, total)) => writeln!(
                w,
                "{},{},{},{p},{q},{}",
                fmt_f64(r.alpha),
                fmt_f64(r.xi),
                p + q,
                fmt_f64(total)
            )?,
            None => writeln!(w, "{},{},unsolved,,,", fmt_f64(r.alpha), fmt_f64(r.xi))?,
        }
    }
    Ok(())
}

/// Writes a localization decay table.
pub fn write_localization_csv<W: Write>(mut w: W, rows: &[DecayRow]) -> Result<()> {
    writeln!(
        w,
        "hop,energy,cum_fraction,one_minus_cum,envelope_oracle,envelope_paper"
    )?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.hop,
            fmt_f64(r.energy),
            fmt_f64(r.cum_fraction),
            fmt_f64(r.one_minus_cum),
            fmt_f64(r.envelope_oracle),
            fmt_f64(r.envelope_paper)
        )?;
    }
    Ok(())
}

/// Renders a complex matrix to an owned CSV string.
pub fn matrix_csv_string(m: &Array2<Complex64>) -> String {
    let mut buf = Vec::new();
    write_matrix_csv(&mut buf, &m.view()).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
