//! Charts rendered from the CSV files alone.

use super::svg::{grouped_bar_chart, line_chart, Bar, Panel, Series};
use crate::error::{Error, Result};

struct Table {
    headers: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn parse(csv_text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(csv_text.as_bytes());
        let headers = reader.headers()?.iter().map(str::to_owned).collect();
        let rows = reader
            .records()
            .map(|r| r.map(|rec| rec.iter().map(str::to_owned).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { headers, rows })
    }

    fn index(&self, name: &str) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::invalid(format!("csv has no column {name:?}")))
    }

    fn text(&self, name: &str) -> Result<Vec<&str>> {
        let i = self.index(name)?;
        Ok(self.rows.iter().map(|r| r.get(i).map(String::as_str).unwrap_or("")).collect())
    }

    /// Unparseable or empty cells become NaN and are skipped when drawing.
    fn numbers(&self, name: &str) -> Result<Vec<f64>> {
        Ok(self
            .text(name)?
            .into_iter()
            .map(|v| v.parse().unwrap_or(f64::NAN))
            .collect())
    }

    fn series<'a>(&self, x: &[f64], label: &'a str, column: &str) -> Result<Series<'a>> {
        let ys = self.numbers(column)?;
        Ok(Series {
            name: label,
            points: x.iter().copied().zip(ys).collect(),
        })
    }
}

/// `(file name, svg)` pairs for price, market caps, nodes and users.
pub fn trajectory_charts(csv_text: &str) -> Result<Vec<(&'static str, String)>> {
    let t = Table::parse(csv_text)?;
    let months = t.numbers("month")?;
    Ok(vec![
        (
            "price.svg",
            line_chart("Token price", "month", "price", &[t.series(&months, "price", "price")?]),
        ),
        (
            "market_cap.svg",
            line_chart(
                "Market capitalization",
                "month",
                "currency",
                &[
                    t.series(&months, "market cap", "market_cap")?,
                    t.series(&months, "diluted cap", "diluted_cap")?,
                ],
            ),
        ),
        (
            "nodes.svg",
            line_chart("Active nodes", "month", "nodes", &[t.series(&months, "nodes", "nodes")?]),
        ),
        (
            "users.svg",
            line_chart("Users", "month", "users", &[t.series(&months, "users", "users")?]),
        ),
    ])
}

/// Cumulative releases per stakeholder class.
pub fn vesting_chart(csv_text: &str) -> Result<String> {
    let t = Table::parse(csv_text)?;
    let months = t.numbers("month")?;
    Ok(line_chart(
        "Cumulative token releases",
        "month",
        "tokens",
        &[
            t.series(&months, "core team", "team_cumulative")?,
            t.series(&months, "VCs", "vc_cumulative")?,
            t.series(&months, "node providers", "node_cumulative")?,
        ],
    ))
}

/// Efficiency, inclusion and stability panels, one bar per policy cell.
pub fn compare_chart(csv_text: &str) -> Result<String> {
    let t = Table::parse(csv_text)?;
    let labels: Vec<String> = t
        .text("policy")?
        .into_iter()
        .zip(t.text("patience")?)
        .map(|(p, k)| format!("{p} p={k}"))
        .collect();
    let mut panels = Vec::new();
    for (title, metric) in [
        ("Efficiency", "efficiency"),
        ("Inclusion", "inclusion"),
        ("Stability", "stability"),
    ] {
        let means = t.numbers(&format!("{metric}_mean"))?;
        let stds = t.numbers(&format!("{metric}_std"))?;
        let bars = labels
            .iter()
            .zip(means.into_iter().zip(stds))
            .filter(|(_, (m, _))| m.is_finite())
            .map(|(label, (mean, std))| Bar {
                label,
                mean,
                std: if std.is_finite() { std } else { 0.0 },
            })
            .collect();
        panels.push(Panel { title, bars });
    }
    Ok(grouped_bar_chart("Policy comparison (mean ± 1 std)", &panels))
}
