//! Flat key-value reports with deterministic key order.

use std::fmt::Display;

use chern_core::forms::InvariantForm;
use chern_core::linalg::Matrix;
use chern_core::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Kv,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    title: String,
    entries: Vec<(String, String)>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), entries: Vec::new() }
    }

    pub fn push(&mut self, key: impl Into<String>, value: impl Display) {
        self.entries.push((key.into(), value.to_string()));
    }

    pub fn scalar<S: Scalar>(&mut self, key: impl Into<String>, value: &S) {
        self.push(key, value.render());
    }

    /// One key per entry, `key.ij` with 1-based indices.
    pub fn matrix<S: Scalar>(&mut self, key: &str, m: &Matrix<S>) {
        for (i, row) in m.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                self.push(format!("{key}.{}{}", i + 1, j + 1), v.render());
            }
        }
    }

    /// One key per monomial; an empty form is reported as `key = 0`.
    pub fn form<S: Scalar>(&mut self, key: &str, form: &InvariantForm<S>) {
        if form.is_empty() {
            self.push(key, "0");
        }
        for (m, c) in form.terms() {
            self.push(format!("{key}.{}", m.render()), c.render());
        }
    }

    #[cfg(test)]
    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Kv => self.entries.iter().map(|(k, v)| format!("{k}={v}\n")).collect(),
            Format::Text => {
                let width = self.entries.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
                let mut out = format!("# {}\n", self.title);
                for (k, v) in &self.entries {
                    out.push_str(&format!("{k:<width$}  {v}\n"));
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chern_core::scalar::{Scalar, CQ};

    #[test]
    fn renders_in_insertion_order() {
        let mut r = Report::new("demo");
        r.push("b", 1);
        r.push("a", "x");
        r.matrix("m", &vec![vec![CQ::from_ratio(1, 2)]]);
        assert_eq!(r.render(Format::Kv), "b=1\na=x\nm.11=1/2+0i\n");
        assert_eq!(r.render(Format::Text), "# demo\nb     1\na     x\nm.11  1/2+0i\n");
        assert_eq!(r.get("a"), Some("x"));
    }

    #[test]
    fn empty_form_is_zero() {
        let mut r = Report::new("t");
        r.form::<CQ>("theta", &InvariantForm::zero(2));
        assert_eq!(r.get("theta"), Some("0"));
    }
}
