//! CSV ingestion and emission for labeled and PU datasets.
//!
//! Two fixed schemas, distinguished by header:
//!
//! - labeled: `f0,...,f{d-1},label` with label `+1` or `-1`;
//! - PU: `f0,...,f{d-1},observed,oracle_label` with observed `P` or `U` and
//!   oracle_label `+1`, `-1`, or `NA`.
//!
//! Files are UTF-8 with `.` as the decimal point. Floats are written with
//! Rust's shortest round-trip formatting, so save followed by load
//! reproduces every value bit for bit. Parse failures report a 1-based row
//! (the header is row 1) and column.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use ndarray::{Array1, Array2};

use super::{DataError, LabeledDataset, PuDataset, Setting};

/// Result of loading a CSV file, keyed by which schema the header matched.
#[derive(Debug, Clone)]
pub enum LoadedCsv {
    Labeled(LabeledDataset),
    Pu(PuCsvData),
}

/// Rows of a PU CSV. The file format carries no setting, prior, or label
/// frequency, so the caller supplies them via [`into_dataset`]
/// (`into_dataset`: PuCsvData::into_dataset).
#[derive(Debug, Clone)]
pub struct PuCsvData {
    pub positives: Array2<f64>,
    pub unlabeled: Array2<f64>,
    pub oracle_unlabeled_labels: Option<Array1<i8>>,
}

impl PuCsvData {
    pub fn n_p(&self) -> usize {
        self.positives.nrows()
    }

    pub fn n_u(&self) -> usize {
        self.unlabeled.nrows()
    }

    /// Attach generation metadata and validate the combination.
    pub fn into_dataset(
        self,
        setting: Setting,
        prior: f64,
        label_frequency: Option<f64>,
    ) -> Result<PuDataset, DataError> {
        PuDataset::new(
            self.positives,
            self.unlabeled,
            setting,
            prior,
            label_frequency,
            self.oracle_unlabeled_labels,
        )
    }
}

fn io_err(path: &Path, source: std::io::Error) -> DataError {
    DataError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(path: &Path, row: usize, col: usize, message: impl Into<String>) -> DataError {
    DataError::Parse {
        path: path.display().to_string(),
        row,
        col,
        message: message.into(),
    }
}

fn parse_float(path: &Path, row: usize, col: usize, token: &str) -> Result<f64, DataError> {
    let value: f64 = token
        .parse()
        .map_err(|_| parse_err(path, row, col, format!("`{token}` is not a number")))?;
    if !value.is_finite() {
        return Err(parse_err(path, row, col, format!("non-finite value `{token}`")));
    }
    Ok(value)
}

fn parse_label(path: &Path, row: usize, col: usize, token: &str) -> Result<i8, DataError> {
    match token {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        other => Err(parse_err(
            path,
            row,
            col,
            format!("unknown label token `{other}` (expected +1 or -1)"),
        )),
    }
}

/// Load a dataset, deciding the schema from the header row.
pub fn load_csv(path: impl AsRef<Path>) -> Result<LoadedCsv, DataError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    let mut lines = BufReader::new(file).lines().enumerate();

    let header = match lines.next() {
        Some((_, Ok(line))) => line,
        Some((_, Err(e))) => return Err(io_err(path, e)),
        None => return Err(parse_err(path, 1, 1, "empty file")),
    };
    let header = header.trim_end_matches('\r');
    let cols: Vec<&str> = header.split(',').collect();

    enum Schema {
        Labeled,
        Pu,
    }
    let (schema, dim) = match cols.as_slice() {
        [features @ .., "label"] if !features.is_empty() => (Schema::Labeled, features.len()),
        [features @ .., "observed", "oracle_label"] if !features.is_empty() => {
            (Schema::Pu, features.len())
        }
        _ => {
            return Err(parse_err(
                path,
                1,
                1,
                format!("unrecognized header `{header}`"),
            ))
        }
    };
    for (i, col) in cols.iter().take(dim).enumerate() {
        if *col != format!("f{i}") {
            return Err(parse_err(
                path,
                1,
                i + 1,
                format!("expected feature column `f{i}`, found `{col}`"),
            ));
        }
    }
    let expected_fields = cols.len();

    let mut feature_rows: Vec<f64> = Vec::new();
    let mut labels: Vec<i8> = Vec::new(); // labeled schema
    let mut observed: Vec<bool> = Vec::new(); // PU schema: true = P
    let mut oracle: Vec<Option<i8>> = Vec::new(); // PU schema, U rows only
    let mut n_rows = 0usize;

    for (idx, line) in lines {
        let row = idx + 1; // 1-based, header was row 1
        let line = line.map_err(|e| io_err(path, e))?;
        let line = line.trim_end_matches('\r');
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != expected_fields {
            return Err(parse_err(
                path,
                row,
                fields.len().min(expected_fields),
                format!("expected {expected_fields} fields, found {}", fields.len()),
            ));
        }
        for (j, token) in fields.iter().take(dim).enumerate() {
            feature_rows.push(parse_float(path, row, j + 1, token)?);
        }
        match schema {
            Schema::Labeled => {
                labels.push(parse_label(path, row, dim + 1, fields[dim])?);
            }
            Schema::Pu => {
                let is_p = match fields[dim] {
                    "P" => true,
                    "U" => false,
                    other => {
                        return Err(parse_err(
                            path,
                            row,
                            dim + 1,
                            format!("unknown observed token `{other}` (expected P or U)"),
                        ))
                    }
                };
                let oracle_tok = fields[dim + 1];
                if is_p {
                    // A P row is a known positive; its oracle entry may only
                    // confirm that or be absent.
                    if oracle_tok != "NA" && parse_label(path, row, dim + 2, oracle_tok)? != 1 {
                        return Err(parse_err(
                            path,
                            row,
                            dim + 2,
                            "P row carries oracle label -1",
                        ));
                    }
                } else {
                    oracle.push(match oracle_tok {
                        "NA" => None,
                        tok => Some(parse_label(path, row, dim + 2, tok)?),
                    });
                }
                observed.push(is_p);
            }
        }
        n_rows += 1;
    }

    if n_rows == 0 {
        return Err(parse_err(path, 2, 1, "no data rows"));
    }
    let all = Array2::from_shape_vec((n_rows, dim), feature_rows)
        .expect("row-major feature buffer matches counted shape");
    if let Some((flat, _)) = all
        .iter()
        .enumerate()
        .find(|(_, v)| !v.is_finite())
    {
        // parse_float already rejects non-finite tokens; this is a backstop.
        return Err(parse_err(path, flat / dim + 2, flat % dim + 1, "non-finite value"));
    }

    match schema {
        Schema::Labeled => Ok(LoadedCsv::Labeled(LabeledDataset::new(
            all,
            Array1::from_vec(labels),
        )?)),
        Schema::Pu => {
            let p_rows: Vec<usize> = (0..n_rows).filter(|&i| observed[i]).collect();
            let u_rows: Vec<usize> = (0..n_rows).filter(|&i| !observed[i]).collect();
            if p_rows.is_empty() || u_rows.is_empty() {
                return Err(parse_err(
                    path,
                    2,
                    dim + 1,
                    format!(
                        "PU file needs both P and U rows, found {} P and {} U",
                        p_rows.len(),
                        u_rows.len()
                    ),
                ));
            }
            let n_known = oracle.iter().filter(|o| o.is_some()).count();
            let oracle_unlabeled_labels = if n_known == 0 {
                None
            } else if n_known == oracle.len() {
                Some(Array1::from_iter(oracle.into_iter().map(|o| o.unwrap())))
            } else {
                return Err(parse_err(
                    path,
                    2,
                    dim + 2,
                    format!(
                        "oracle labels must be all NA or all known, found {n_known} of {}",
                        oracle.len()
                    ),
                ));
            };
            Ok(LoadedCsv::Pu(PuCsvData {
                positives: all.select(ndarray::Axis(0), &p_rows),
                unlabeled: all.select(ndarray::Axis(0), &u_rows),
                oracle_unlabeled_labels,
            }))
        }
    }
}

fn write_features<W: Write>(out: &mut W, row: ndarray::ArrayView1<f64>) -> std::io::Result<()> {
    for v in row.iter() {
        write!(out, "{v},")?;
    }
    Ok(())
}

/// Write a labeled dataset in the `f0,...,f{d-1},label` schema.
pub fn save_labeled_csv(dataset: &LabeledDataset, path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        for j in 0..dataset.dim() {
            write!(out, "f{j},")?;
        }
        writeln!(out, "label")?;
        for (row, &y) in dataset
            .features()
            .rows()
            .into_iter()
            .zip(dataset.labels().iter())
        {
            write_features(&mut out, row)?;
            writeln!(out, "{}", if y == 1 { "+1" } else { "-1" })?;
        }
        out.flush()
    };
    body().map_err(|e| io_err(path, e))
}

/// Write a PU dataset in the `f0,...,f{d-1},observed,oracle_label` schema:
/// P rows first (oracle `+1` by construction), then U rows with their oracle
/// labels, or `NA` throughout when the dataset carries none.
pub fn save_pu_csv(dataset: &PuDataset, path: impl AsRef<Path>) -> Result<(), DataError> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut out = BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        for j in 0..dataset.dim() {
            write!(out, "f{j},")?;
        }
        writeln!(out, "observed,oracle_label")?;
        for row in dataset.positives().rows() {
            write_features(&mut out, row)?;
            writeln!(out, "P,+1")?;
        }
        let oracle = dataset.oracle_unlabeled_labels();
        for (i, row) in dataset.unlabeled().rows().into_iter().enumerate() {
            write_features(&mut out, row)?;
            match oracle {
                Some(labels) => writeln!(out, "U,{}", if labels[i] == 1 { "+1" } else { "-1" })?,
                None => writeln!(out, "U,NA")?,
            }
        }
        out.flush()
    };
    body().map_err(|e| io_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{make_ts_pu, synthesize_labeled, GaussianMixtureSpec};
    use ndarray::array;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        use std::io::Write as _;
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    #[test]
    fn labeled_rows_ingest_in_order() {
        let f = write_temp("f0,f1,label\n0.5,1.0,+1\n-0.25,2.0,-1\n3.0,4.0,+1\n");
        let LoadedCsv::Labeled(ds) = load_csv(f.path()).unwrap() else {
            panic!("expected labeled schema");
        };
        assert_eq!(ds.labels().to_vec(), vec![1, -1, 1]);
        assert_eq!(ds.features()[(1, 0)], -0.25);
    }

    #[test]
    fn pu_rows_partition_by_observed_column() {
        let f = write_temp(
            "f0,observed,oracle_label\n1.0,P,+1\n2.0,U,-1\n3.0,U,+1\n4.0,P,NA\n",
        );
        let LoadedCsv::Pu(pu) = load_csv(f.path()).unwrap() else {
            panic!("expected PU schema");
        };
        assert_eq!((pu.n_p(), pu.n_u()), (2, 2));
        assert_eq!(pu.positives.column(0).to_vec(), vec![1.0, 4.0]);
        assert_eq!(pu.unlabeled.column(0).to_vec(), vec![2.0, 3.0]);
        assert_eq!(
            pu.oracle_unlabeled_labels.unwrap().to_vec(),
            vec![-1, 1]
        );
    }

    #[test]
    fn pu_all_na_oracle_loads_as_none() {
        let f = write_temp("f0,observed,oracle_label\n1.0,P,NA\n2.0,U,NA\n");
        let LoadedCsv::Pu(pu) = load_csv(f.path()).unwrap() else {
            panic!("expected PU schema");
        };
        assert!(pu.oracle_unlabeled_labels.is_none());
    }

    #[test]
    fn labeled_round_trip_is_exact() {
        let spec =
            GaussianMixtureSpec::new(vec![0.0; 16], vec![1.0; 16], 1.0, 2.0, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let ds = synthesize_labeled(&spec, 1000, &mut rng).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("labeled.csv");
        save_labeled_csv(&ds, &path).unwrap();
        let LoadedCsv::Labeled(back) = load_csv(&path).unwrap() else {
            panic!("expected labeled schema");
        };
        assert_eq!(back, ds);
    }

    #[test]
    fn pu_round_trip_is_exact() {
        let spec = GaussianMixtureSpec::new(vec![1.4], vec![-1.4], 1.0, 1.0, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let pu = make_ts_pu(&spec, 40, 160, &mut rng).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("pu.csv");
        save_pu_csv(&pu, &path).unwrap();
        let LoadedCsv::Pu(back) = load_csv(&path).unwrap() else {
            panic!("expected PU schema");
        };
        let rebuilt = back
            .into_dataset(pu.setting(), pu.prior(), pu.label_frequency())
            .unwrap();
        assert_eq!(rebuilt, pu);
    }

    #[test]
    fn parse_errors_carry_location() {
        let cases = [
            ("f0,label\n1.0,+2\n", 2, 2, "label token"),
            ("f0,label\nabc,+1\n", 2, 1, "not a number"),
            ("f0,label\ninf,+1\n", 2, 1, "non-finite"),
            ("f0,label\n1.0\n", 2, 1, "fields"),
            ("f0,observed,oracle_label\n1.0,X,NA\n", 2, 2, "observed token"),
            ("f0,observed,oracle_label\n1.0,P,-1\n2.0,U,NA\n", 2, 3, "oracle label -1"),
            ("g0,label\n1.0,+1\n", 1, 1, "feature column"),
            ("who,knows\n", 1, 1, "header"),
        ];
        for (content, row, col, needle) in cases {
            let f = write_temp(content);
            match load_csv(f.path()) {
                Err(DataError::Parse {
                    row: r,
                    col: c,
                    message,
                    ..
                }) => {
                    assert_eq!((r, c), (row, col), "case `{content}`: {message}");
                    assert!(
                        message.contains(needle),
                        "case `{content}`: message `{message}` missing `{needle}`"
                    );
                }
                other => panic!("case `{content}`: expected parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn mixed_oracle_presence_is_rejected() {
        let f = write_temp("f0,observed,oracle_label\n1.0,P,+1\n2.0,U,NA\n3.0,U,+1\n");
        assert!(matches!(load_csv(f.path()), Err(DataError::Parse { .. })));
    }

    #[test]
    fn header_only_file_is_rejected() {
        let f = write_temp("f0,label\n");
        assert!(matches!(load_csv(f.path()), Err(DataError::Parse { .. })));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(
            load_csv("/nonexistent/nowhere.csv"),
            Err(DataError::Io { .. })
        ));
    }

    #[test]
    fn crlf_line_endings_are_tolerated() {
        let f = write_temp("f0,label\r\n1.5,+1\r\n-0.5,-1\r\n");
        let LoadedCsv::Labeled(ds) = load_csv(f.path()).unwrap() else {
            panic!("expected labeled schema");
        };
        assert_eq!(ds.n(), 2);
    }

    #[test]
    fn shortest_float_formatting_survives_extremes() {
        let features = array![[0.1 + 0.2], [f64::MIN_POSITIVE], [1e300], [-3.141592653589793]];
        let ds = LabeledDataset::new(features, array![1, -1, 1, -1]).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("edge.csv");
        save_labeled_csv(&ds, &path).unwrap();
        let LoadedCsv::Labeled(back) = load_csv(&path).unwrap() else {
            panic!("expected labeled schema");
        };
        assert_eq!(back, ds);
    }
}
