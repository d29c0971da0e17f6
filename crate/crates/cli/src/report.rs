//! CSV assembly, fit footers and the error type shared by all subcommands.

use std::fmt;

use dqho::fit_line;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, config files or insufficient data. Exit status 1.
    Usage(String),
    /// A numerical routine or precondition failed on one record. Exit status 2.
    Numerical { record: String, source: dqho::Error },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Numerical { .. } => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Numerical { record, source } => write!(f, "{record}: {source}"),
        }
    }
}

/// Attaches the failing record's inputs to a library error.
pub trait AtRecord<T> {
    fn at(self, record: impl FnOnce() -> String) -> Result<T, CliError>;
}

impl<T> AtRecord<T> for dqho::Result<T> {
    fn at(self, record: impl FnOnce() -> String) -> Result<T, CliError> {
        self.map_err(|source| CliError::Numerical {
            record: record(),
            source,
        })
    }
}

/// Floats are written with 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, Copy)]
pub enum FitModel {
    /// `ln|y|` against `x`.
    LogLinear,
    /// `ln|y|` against `ln x`.
    PowerLaw,
}

impl FitModel {
    fn name(self) -> &'static str {
        match self {
            FitModel::LogLinear => "loglinear",
            FitModel::PowerLaw => "powerlaw",
        }
    }
}

/// Footer lines describing a least-squares fit of `ys` against `xs`.
pub fn emit_fit_report(xs: &[f64], ys: &[f64], model: FitModel) -> Result<Vec<String>, CliError> {
    if xs.len() < 3 {
        return Err(CliError::Usage(format!(
            "insufficient data for a fit: {} record(s), need at least 3",
            xs.len()
        )));
    }
    let fx: Vec<f64> = match model {
        FitModel::LogLinear => xs.to_vec(),
        FitModel::PowerLaw => xs.iter().map(|x| x.ln()).collect(),
    };
    let fy: Vec<f64> = ys.iter().map(|y| y.abs().ln()).collect();
    let fit =
        fit_line(&fx, &fy).map_err(|e| CliError::Usage(format!("cannot fit records: {e}")))?;
    Ok(vec![
        format!("# fit model={}", model.name()),
        format!(
            "# fit slope={} intercept={} r2={}",
            num(fit.slope),
            num(fit.intercept),
            num(fit.r_squared)
        ),
    ])
}

/// A CSV document built in memory: metadata lines, header, rows, footer.
#[derive(Debug)]
pub struct Table {
    header: Vec<&'static str>,
    meta: Vec<String>,
    rows: Vec<Vec<String>>,
    footer: Vec<String>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Self {
            header: header.to_vec(),
            meta: Vec::new(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn meta(&mut self, line: impl fmt::Display) {
        self.meta.push(format!("# {line}"));
    }

    /// Metadata placed before anything the subcommand recorded.
    pub fn preamble(&mut self, lines: impl IntoIterator<Item = String>) {
        let mut front: Vec<String> = lines.into_iter().map(|l| format!("# {l}")).collect();
        front.append(&mut self.meta);
        self.meta = front;
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(
            cells.len(),
            self.header.len(),
            "row width must match the header"
        );
        self.rows.push(cells);
    }

    pub fn footer(&mut self, lines: impl IntoIterator<Item = String>) {
        self.footer.extend(lines);
    }

    /// Footer line in the same `# key=value` form as the metadata.
    pub fn note(&mut self, line: impl fmt::Display) {
        self.footer.push(format!("# {line}"));
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.meta {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.header.join(","));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        for line in &self.footer {
            out.push_str(line);
            out.push('\n');
        }
        out
    }
}
