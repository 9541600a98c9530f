//! CSV persistence of traces.

use std::fs::File;
use std::path::Path;

use crate::error::{Error, Result};
use crate::verifier::{EntropyTrace, TraceSample};

/// Column order of every trace file.
pub const COLUMNS: [&str; 17] = [
    "t",
    "entropy",
    "h_hat",
    "energy_candidate",
    "energy_reference",
    "dissipation_candidate",
    "dissipation_reference",
    "r_d",
    "r_c",
    "r_bar_d",
    "r_bar_c",
    "r_1d",
    "r_1c",
    "r_1c_a",
    "r_1c_b",
    "mass_candidate",
    "sphere_defect",
];

/// Header plus one row per sample; absent values are empty fields and
/// floats use the shortest representation that parses back exactly.
pub fn write_trace(trace: &EntropyTrace, path: &Path) -> Result<()> {
    write_samples(&trace.samples, path)
}

pub fn write_samples(samples: &[TraceSample], path: &Path) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(File::create(path)?);
    w.write_record(COLUMNS)?;
    for s in samples {
        w.serialize(s)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_trace(path: &Path) -> Result<Vec<TraceSample>> {
    let mut r = csv::Reader::from_path(path)?;
    let header: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if header != COLUMNS {
        return Err(Error::TraceFormat(format!("unexpected header {header:?}")));
    }
    r.deserialize()
        .map(|row| row.map_err(Error::from))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::System;
    use proptest::prelude::*;

    fn trace(samples: Vec<TraceSample>) -> EntropyTrace {
        EntropyTrace {
            system: System::Gl,
            samples,
            max_renormalization: 0.0,
            director_l2: Vec::new(),
        }
    }

    #[test]
    fn empty_trace_is_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        write_trace(&trace(Vec::new()), &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), 1);
        assert_eq!(text.trim_end(), COLUMNS.join(","));
        assert!(read_trace(&p).unwrap().is_empty());
    }

    #[test]
    fn three_samples_four_lines_and_empty_fields() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("t.csv");
        let s: Vec<TraceSample> = (0..3)
            .map(|k| TraceSample {
                t: k as f64,
                energy_candidate: 1.0,
                ..Default::default()
            })
            .collect();
        write_trace(&trace(s), &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().nth(1).unwrap().split(',').count(), 17);
        assert!(text.lines().nth(1).unwrap().contains(",,"));
    }

    fn opt() -> impl Strategy<Value = Option<f64>> {
        prop_oneof![
            Just(None),
            any::<f64>()
                .prop_filter("finite", |v| v.is_finite())
                .prop_map(Some)
        ]
    }

    fn finite() -> impl Strategy<Value = f64> {
        any::<f64>().prop_filter("finite", |v| v.is_finite())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn round_trip_is_bit_exact(
            t in finite(), e in opt(), h in opt(), ec in finite(), er in opt(),
            dc in finite(), dr in opt(), r1 in opt(), r2 in opt(), m in finite(), sd in opt(),
        ) {
            let s = TraceSample {
                t, entropy: e, h_hat: h, energy_candidate: ec, energy_reference: er,
                dissipation_candidate: dc, dissipation_reference: dr,
                r_d: r1, r_c: r2, r_bar_d: r2, r_bar_c: r1,
                r_1d: r1, r_1c: r2, r_1c_a: r1, r_1c_b: r2,
                mass_candidate: m, sphere_defect: sd,
            };
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("t.csv");
            write_trace(&trace(vec![s.clone(), s.clone()]), &p).unwrap();
            let back = read_trace(&p).unwrap();
            prop_assert_eq!(back.len(), 2);
            prop_assert_eq!(format!("{:?}", &back[0]), format!("{:?}", &s));
            prop_assert_eq!(back[0].t.to_bits(), s.t.to_bits());
        }
    }
}
