use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Pretty,
}

/// The result of a subcommand in all its renderings.
#[derive(Debug, Clone)]
pub struct Report {
    pub json: Value,
    pub table: Option<Vec<Vec<String>>>,
    pub pretty: Option<String>,
    /// format used when none is requested
    pub default: Format,
}

impl Report {
    pub fn new(json: Value) -> Self {
        Report {
            json,
            table: None,
            pretty: None,
            default: Format::Pretty,
        }
    }

    pub fn table(mut self, rows: Vec<Vec<String>>) -> Self {
        self.table = Some(rows);
        self
    }

    pub fn pretty(mut self, text: String) -> Self {
        self.pretty = Some(text);
        self
    }

    pub fn default_format(mut self, f: Format) -> Self {
        self.default = f;
        self
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => Ok(format!(
                "{}\n",
                serde_json::to_string_pretty(&self.json).expect("json value")
            )),
            Format::Csv => {
                let rows = self
                    .table
                    .as_ref()
                    .ok_or("this command has no CSV rendering; use --format json")?;
                let mut w = csv::WriterBuilder::new()
                    .flexible(true)
                    .from_writer(Vec::new());
                for r in rows {
                    w.write_record(r).map_err(|e| e.to_string())?;
                }
                Ok(String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).expect("utf-8"))
            }
            Format::Pretty => Ok(match (&self.pretty, &self.table) {
                (Some(p), _) => p.clone(),
                (None, Some(rows)) => aligned(rows),
                (None, None) => format!(
                    "{}\n",
                    serde_json::to_string_pretty(&self.json).expect("json value")
                ),
            }),
        }
    }
}

/// Left-aligned columns separated by two spaces.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}
