use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::error::{Error, Result};

/// Rectangular string table with a designated binary label column.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub label_column: String,
    pub positive_label: String,
    /// Column holding sample identifiers; excluded from the features.
    pub id_column: Option<String>,
}

/// Reads a comma-separated UTF-8 file with a header row.
pub fn load_csv(
    path: impl AsRef<Path>,
    label_column: &str,
    positive_label: &str,
) -> Result<RawTable> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    RawTable::from_reader(file, label_column, positive_label).map_err(|e| match e {
        Error::Data(msg) => Error::Data(format!("{}: {msg}", path.display())),
        other => other,
    })
}

impl RawTable {
    pub fn from_reader<R: Read>(
        reader: R,
        label_column: &str,
        positive_label: &str,
    ) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .flexible(true)
            .from_reader(reader);
        let columns: Vec<String> = rdr
            .headers()?
            .iter()
            .map(|h| h.trim().to_string())
            .collect();
        if columns.is_empty() || columns.iter().all(String::is_empty) {
            return Err(Error::Data("file is empty (no header row)".into()));
        }
        if !columns.iter().any(|c| c == label_column) {
            return Err(Error::Data(format!(
                "label column '{label_column}' not found in header"
            )));
        }

        let mut rows = Vec::new();
        for (i, record) in rdr.records().enumerate() {
            let record = record?;
            let row_no = i + 1;
            if record.len() != columns.len() {
                return Err(Error::Data(format!(
                    "row {row_no} has {} fields but the header has {}",
                    record.len(),
                    columns.len()
                )));
            }
            rows.push(record.iter().map(|f| f.trim().to_string()).collect());
        }
        if rows.is_empty() {
            return Err(Error::Data("file has a header but no data rows".into()));
        }

        let table = RawTable {
            columns,
            rows,
            label_column: label_column.to_string(),
            positive_label: positive_label.to_string(),
            id_column: None,
        };
        table.check_labels()?;
        Ok(table)
    }

    pub fn with_id_column(mut self, id_column: &str) -> Result<Self> {
        if id_column == self.label_column {
            return Err(Error::Data(
                "id column cannot also be the label column".into(),
            ));
        }
        self.column_index(id_column)?;
        self.id_column = Some(id_column.to_string());
        Ok(self)
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::Data(format!("column '{name}' not found in header")))
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    fn check_labels(&self) -> Result<()> {
        let li = self.column_index(&self.label_column)?;
        let mut distinct: Vec<&str> = self.rows.iter().map(|r| r[li].as_str()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() > 2 {
            return Err(Error::Data(format!(
                "label column '{}' has {} distinct values; a binary label is required",
                self.label_column,
                distinct.len()
            )));
        }
        if !distinct.contains(&self.positive_label.as_str()) {
            return Err(Error::Data(format!(
                "positive label '{}' never occurs in column '{}' (values: {distinct:?})",
                self.positive_label, self.label_column
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<RawTable> {
        RawTable::from_reader(text.as_bytes(), "class", "P")
    }

    #[test]
    fn three_rows() {
        let t = parse("a,b,class\n1,x,P\n2,y,H\n3,x,P\n").unwrap();
        assert_eq!(t.n_rows(), 3);
        assert_eq!(t.columns, vec!["a", "b", "class"]);
    }

    #[test]
    fn ragged_row_is_named() {
        let mut text = String::from("a,class\n");
        for i in 1..=6 {
            text.push_str(&format!("{i},P\n"));
        }
        text.push_str("7,H,extra\n");
        let err = parse(&text).unwrap_err().to_string();
        assert!(err.contains("row 7"), "{err}");
    }

    #[test]
    fn missing_label_column_is_named() {
        let err = RawTable::from_reader("a,b\n1,2\n".as_bytes(), "diagnosis", "P")
            .unwrap_err()
            .to_string();
        assert!(err.contains("diagnosis"), "{err}");
    }

    #[test]
    fn empty_inputs() {
        assert!(parse("").is_err());
        assert!(parse("a,class\n").is_err());
    }

    #[test]
    fn label_checks() {
        assert!(parse("a,class\n1,P\n2,H\n3,X\n").is_err());
        assert!(parse("a,class\n1,Q\n2,H\n").is_err());
    }

    #[test]
    fn id_column() {
        let t = parse("id,a,class\nr1,1,P\nr2,2,H\n").unwrap();
        assert!(t.clone().with_id_column("nope").is_err());
        assert!(t.clone().with_id_column("class").is_err());
        assert_eq!(
            t.with_id_column("id").unwrap().id_column.as_deref(),
            Some("id")
        );
    }

    #[test]
    fn missing_file_names_path() {
        let err = load_csv("/definitely/not/here.csv", "class", "P").unwrap_err();
        assert!(err.to_string().contains("/definitely/not/here.csv"));
    }
}
