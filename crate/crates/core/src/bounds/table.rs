use std::fmt::Write as _;

use num_bigint::BigInt;
use serde_json::{json, Value};

use super::{absolute_code_bound, check_grassmannian, int, one_distance_bound, two_distance_bound, BoundResult};
use crate::error::Result;
use crate::sympoly::{dim_hk, fmt_rational, rat, Rational};

/// One cell of the bound table, specialized to a fixed `(m, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCell {
    pub kind: String,
    pub value: String,
    pub applicable: String,
    pub conditions: Vec<String>,
    pub note: Option<String>,
}

/// Upper bounds on `A`-codes in `G(m, n)` for `|A| = 1, 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundTable {
    pub m: usize,
    pub n: usize,
    pub cells: Vec<TableCell>,
}

pub fn bound_table(m: usize, n: usize) -> Result<BoundTable> {
    check_grassmannian(m, n)?;
    let (mm, nn) = (int(m), int(n));
    let one = rat(1);
    let m2 = &mm * &mm;
    let n2 = (n * n) as u64;
    let r = fmt_rational;

    let (abs_one, _) = absolute_code_bound(1, m, n)?;
    let (abs_two, note) = if m > 1 {
        (absolute_code_bound(2, m, n)?.0, None)
    } else {
        (
            dim_hk(2, 1, n)?,
            Some(format!(
                "binomial(n^2, 2) needs m > 1; for m = 1 this is dim H_2(1, n) = {}",
                dim_hk(2, 1, n)?
            )),
        )
    };
    debug_assert!(m == 1 || abs_two == crate::sympoly::binomial(n2, 2));

    let threshold = &m2 / &nn;
    let k = (&mm + &one) * (&mm + &one) / (rat(2) * (&nn + &one)) + (&mm - &one) * (&mm - &one) / (rat(2) * (&nn - &one));
    let ab = &nn / &m2;
    let first = if n == 2 {
        "c(1) >= 0 in the zonal expansion of the annihilator".to_string()
    } else {
        let rhs = rat(2) * (&m2 * &nn - rat(4) * &mm + &nn) / (&nn * &nn - rat(4));
        format!("a + b <= {}", r(&rhs))
    };
    let rhs2 = (&m2 * &nn - rat(2) * &mm + &nn) / (&nn * &nn - &one);

    let cells = vec![
        TableCell {
            kind: "absolute |A|=1".into(),
            value: abs_one.to_string(),
            applicable: "yes".into(),
            conditions: Vec::new(),
            note: None,
        },
        TableCell {
            kind: "absolute |A|=2".into(),
            value: abs_two.to_string(),
            applicable: "yes".into(),
            conditions: Vec::new(),
            note,
        },
        TableCell {
            kind: "relative A={a}".into(),
            value: format!("{n}({m} - a)/({} - {n}a)", r(&m2)),
            applicable: "conditional".into(),
            conditions: vec![format!("a < {}", r(&threshold))],
            note: None,
        },
        TableCell {
            kind: "relative A={a,b}".into(),
            value: format!("{n}({m} - a)({m} - b)/({}({} - (a + b) + {}ab))", r(&m2), r(&k), r(&ab)),
            applicable: "conditional".into(),
            conditions: vec![first, format!("a + b - {}ab < {}", r(&ab), r(&rhs2))],
            note: None,
        },
    ];
    Ok(BoundTable { m, n, cells })
}

fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

impl BoundTable {
    pub fn absolute(&self, k: usize) -> Option<BigInt> {
        self.cells.get(k.checked_sub(1)?)?.value.parse().ok()
    }

    /// The relative `{a}` cell evaluated at `alpha`.
    pub fn relative_one(&self, alpha: &Rational) -> BoundResult {
        one_distance_bound(alpha, self.m, self.n)
    }

    /// The relative `{a, b}` cell evaluated at `(alpha, beta)`.
    pub fn relative_two(&self, alpha: &Rational, beta: &Rational) -> Result<BoundResult> {
        two_distance_bound(alpha, beta, self.m, self.n)
    }

    pub fn to_text(&self) -> String {
        let width = self.cells.iter().map(|c| c.kind.len()).max().unwrap_or(0);
        let mut out = format!("Upper bounds on |S| for A-codes in G({}, {})\n", self.m, self.n);
        for cell in &self.cells {
            let _ = writeln!(out, "{:<width$}  {}", cell.kind, cell.value);
            for c in &cell.conditions {
                let _ = writeln!(out, "{:<width$}    if {c}", "");
            }
            if let Some(note) = &cell.note {
                let _ = writeln!(out, "{:<width$}    note: {note}", "");
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,value,applicable,conditions\n");
        for cell in &self.cells {
            let mut conditions = cell.conditions.join("; ");
            if let Some(note) = &cell.note {
                if !conditions.is_empty() {
                    conditions.push_str("; ");
                }
                conditions.push_str("note: ");
                conditions.push_str(note);
            }
            let _ = writeln!(
                out,
                "{},{},{},{}",
                csv_field(&cell.kind),
                csv_field(&cell.value),
                csv_field(&cell.applicable),
                csv_field(&conditions)
            );
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "n": self.n,
            "cells": self.cells.iter().map(|c| json!({
                "kind": c.kind,
                "value": c.value,
                "applicable": c.applicable,
                "conditions": c.conditions,
                "note": c.note,
            })).collect::<Vec<_>>(),
        })
    }
}
