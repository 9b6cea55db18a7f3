//! CSV profile and metric files.

use std::io::{Read, Write};

use hfsim_core::IntensityProfile;

pub const PROFILE_HEADER: [&str; 2] = ["position_m", "intensity_rel"];
pub const METRICS_HEADER: [&str; 2] = ["metric_name", "value"];

/// 17 significant digits, enough to round-trip any f64.
pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_profile<W: Write>(out: W, profile: &IntensityProfile) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(PROFILE_HEADER)?;
    for (y, v) in profile.grid().positions().iter().zip(profile.values()) {
        w.write_record([format_number(*y), format_number(*v)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_metrics<W: Write>(out: W, metrics: &[(String, f64)]) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(METRICS_HEADER)?;
    for (name, value) in metrics {
        w.write_record([name.clone(), format_number(*value)])?;
    }
    w.flush()?;
    Ok(())
}

fn read_pairs<R: Read>(input: R, header: [&str; 2]) -> csv::Result<Vec<(String, f64)>> {
    let mut r = csv::Reader::from_reader(input);
    let found = r.headers()?.clone();
    if found.iter().ne(header) {
        return Err(csv::Error::from(std::io::Error::new(
            std::io::ErrorKind::InvalidData,
            format!("expected header {header:?}, found {found:?}"),
        )));
    }
    r.records()
        .map(|rec| {
            let rec = rec?;
            let value = rec[1].parse::<f64>().map_err(|e| {
                csv::Error::from(std::io::Error::new(std::io::ErrorKind::InvalidData, e))
            })?;
            Ok((rec[0].to_string(), value))
        })
        .collect()
}

/// Reads `(position, intensity)` rows back.
pub fn read_profile<R: Read>(input: R) -> csv::Result<Vec<(f64, f64)>> {
    read_pairs(input, PROFILE_HEADER)?
        .into_iter()
        .map(|(y, v)| {
            y.parse::<f64>().map(|y| (y, v)).map_err(|e| {
                csv::Error::from(std::io::Error::new(std::io::ErrorKind::InvalidData, e))
            })
        })
        .collect()
}

pub fn read_metrics<R: Read>(input: R) -> csv::Result<Vec<(String, f64)>> {
    read_pairs(input, METRICS_HEADER)
}
