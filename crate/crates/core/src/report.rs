//! Tables of computed values.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
}

impl Cell {
    pub fn as_f64(&self) -> Option<f64> {
        match *self {
            Cell::Int(i) => Some(i as f64),
            Cell::Real(x) => Some(x),
            Cell::Text(_) => None,
        }
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Column {
    pub header: String,
    pub unit: String,
}

/// A named table whose rows all have one cell per column.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportTable {
    name: String,
    columns: Vec<Column>,
    rows: Vec<Vec<Cell>>,
}

impl ReportTable {
    /// `columns` are `(header, unit)` pairs; use `""` for dimensionless.
    pub fn new(name: &str, columns: &[(&str, &str)]) -> Result<Self> {
        if name.is_empty() {
            return Err(Error::InvalidArgument("table name must be nonempty"));
        }
        Ok(ReportTable {
            name: name.to_string(),
            columns: columns
                .iter()
                .map(|(h, u)| Column {
                    header: h.to_string(),
                    unit: u.to_string(),
                })
                .collect(),
            rows: Vec::new(),
        })
    }

    pub fn push_row(&mut self, row: Vec<Cell>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidArgument("row arity differs from column count"));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn column_index(&self, header: &str) -> Option<usize> {
        self.columns.iter().position(|c| c.header == header)
    }

    /// Numeric values of a column, `NaN` for text cells.
    pub fn column(&self, header: &str) -> Option<Vec<f64>> {
        let i = self.column_index(header)?;
        Some(
            self.rows
                .iter()
                .map(|r| r[i].as_f64().unwrap_or(f64::NAN))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn arity_is_enforced() {
        let mut t = ReportTable::new("t", &[("n", ""), ("v", "rad")]).unwrap();
        assert!(t.push_row(vec![Cell::from(3usize)]).is_err());
        t.push_row(vec![3usize.into(), 0.5.into()]).unwrap();
        assert_eq!(t.column("v").unwrap(), vec![0.5]);
        assert_eq!(t.column("n").unwrap(), vec![3.0]);
        assert!(t.column("missing").is_none());
        assert!(ReportTable::new("", &[]).is_err());
    }
}
