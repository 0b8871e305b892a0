use serde::{Deserialize, Serialize};

use super::{Dataset, RawTable};
use crate::error::{Error, Result};

/// Categorical columns with more distinct values than this are refused.
pub const MAX_CATEGORIES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ColumnEncoding {
    Numeric {
        name: String,
    },
    /// One indicator column per category, categories sorted lexicographically.
    Categorical {
        name: String,
        categories: Vec<String>,
    },
}

impl ColumnEncoding {
    fn name(&self) -> &str {
        match self {
            ColumnEncoding::Numeric { name } | ColumnEncoding::Categorical { name, .. } => name,
        }
    }

    fn output_names(&self) -> Vec<String> {
        match self {
            ColumnEncoding::Numeric { name } => vec![name.clone()],
            ColumnEncoding::Categorical { name, categories } => {
                categories.iter().map(|c| format!("{name}={c}")).collect()
            }
        }
    }
}

/// Column layout learned from a table, replayable on other tables with the
/// same header.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EncodingSchema {
    pub label_column: String,
    pub positive_label: String,
    pub id_column: Option<String>,
    pub columns: Vec<ColumnEncoding>,
}

fn parse_number(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

impl EncodingSchema {
    pub fn fit(table: &RawTable) -> Result<Self> {
        let mut columns = Vec::new();
        for (ci, name) in table.columns.iter().enumerate() {
            if *name == table.label_column || Some(name) == table.id_column.as_ref() {
                continue;
            }
            let cells = table.rows.iter().map(|r| r[ci].as_str());
            if cells.clone().all(|c| parse_number(c).is_some()) {
                columns.push(ColumnEncoding::Numeric { name: name.clone() });
                continue;
            }
            let mut categories: Vec<String> = cells.map(str::to_string).collect();
            categories.sort();
            categories.dedup();
            if categories.len() > MAX_CATEGORIES {
                return Err(Error::Data(format!(
                    "column '{name}' has {} distinct non-numeric values (limit {MAX_CATEGORIES}); \
                     is it a numeric column with stray text, or an identifier?",
                    categories.len()
                )));
            }
            columns.push(ColumnEncoding::Categorical {
                name: name.clone(),
                categories,
            });
        }
        Ok(EncodingSchema {
            label_column: table.label_column.clone(),
            positive_label: table.positive_label.clone(),
            id_column: table.id_column.clone(),
            columns,
        })
    }

    pub fn feature_names(&self) -> Vec<String> {
        self.columns
            .iter()
            .flat_map(ColumnEncoding::output_names)
            .collect()
    }

    /// Encodes `table`. Categories unseen at fit time encode as all zeros.
    pub fn transform(&self, table: &RawTable) -> Result<Dataset> {
        let label_idx = table.column_index(&self.label_column)?;
        let id_idx = self
            .id_column
            .as_deref()
            .map(|c| table.column_index(c))
            .transpose()?;
        let col_idx: Vec<usize> = self
            .columns
            .iter()
            .map(|c| table.column_index(c.name()))
            .collect::<Result<_>>()?;

        let mut features = Vec::with_capacity(table.n_rows());
        for (ri, row) in table.rows.iter().enumerate() {
            let mut out = Vec::new();
            for (enc, &ci) in self.columns.iter().zip(&col_idx) {
                let cell = &row[ci];
                match enc {
                    ColumnEncoding::Numeric { name } => {
                        out.push(parse_number(cell).ok_or_else(|| {
                            Error::Data(format!(
                                "row {}, column '{name}': '{cell}' is not a number",
                                ri + 1
                            ))
                        })?)
                    }
                    ColumnEncoding::Categorical { categories, .. } => {
                        out.extend(categories.iter().map(|c| if c == cell { 1.0 } else { 0.0 }))
                    }
                }
            }
            features.push(out);
        }
        let labels = table
            .rows
            .iter()
            .map(|r| (r[label_idx] == self.positive_label) as u8)
            .collect();
        let ids = match id_idx {
            Some(i) => table.rows.iter().map(|r| r[i].clone()).collect(),
            None => (0..table.n_rows()).map(|i| i.to_string()).collect(),
        };
        Dataset::with_metadata(features, labels, ids, self.feature_names())
    }
}

/// Parses numeric columns and expands the rest into indicator columns.
pub fn one_hot_encode(table: &RawTable) -> Result<Dataset> {
    EncodingSchema::fit(table)?.transform(table)
}
