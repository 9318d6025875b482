use std::path::Path;

use crate::error::{Error, Result};

/// A price column read from CSV, with the 1-based file line of each value.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceSeries {
    pub prices: Vec<f64>,
    pub lines: Vec<u64>,
}

/// Reads one column of prices. A first row whose selected field is not a
/// number is taken as a header. `column` picks a field by header name or by
/// 0-based index; without it the column named `price` is used when present,
/// otherwise the first column.
pub fn read_price_series(text: &str, column: Option<&str>) -> Result<PriceSeries> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let records: Vec<csv::StringRecord> = reader
        .records()
        .filter(|r| !matches!(r, Ok(rec) if rec.iter().all(str::is_empty)))
        .collect::<std::result::Result<_, _>>()?;
    let Some(first) = records.first() else {
        return Err(Error::invalid("price series is empty"));
    };

    let numeric_first = first.iter().all(|f| f.parse::<f64>().is_ok());
    let index = match column {
        Some(c) => match c.parse::<usize>() {
            Ok(i) => i,
            Err(_) if !numeric_first => first
                .iter()
                .position(|h| h == c)
                .ok_or_else(|| Error::invalid(format!("no column named {c:?}")))?,
            Err(_) => return Err(Error::invalid(format!("no header row to find column {c:?}"))),
        },
        None if !numeric_first => first.iter().position(|h| h == "price").unwrap_or(0),
        None => 0,
    };
    let header = first
        .get(index)
        .map(|f| f.parse::<f64>().is_err())
        .unwrap_or(false);

    let mut series = PriceSeries {
        prices: Vec::new(),
        lines: Vec::new(),
    };
    for record in records.iter().skip(usize::from(header)) {
        // the reader's positions include skipped blank lines, so count from the record's first byte
        let line = record.position().map(|p| line_of(text, p.byte() as usize)).unwrap_or(0);
        let field = record
            .get(index)
            .ok_or_else(|| Error::invalid(format!("row {line}: missing column {index}")))?;
        let price: f64 = field
            .parse()
            .map_err(|_| Error::invalid(format!("row {line}: {field:?} is not a number")))?;
        if !(price.is_finite() && price > 0.0) {
            return Err(Error::invalid(format!("row {line}: price {price} must be positive")));
        }
        series.prices.push(price);
        series.lines.push(line);
    }
    if series.prices.is_empty() {
        return Err(Error::invalid("price series is empty"));
    }
    Ok(series)
}

fn line_of(text: &str, offset: usize) -> u64 {
    let bytes = text.as_bytes();
    let start = offset + bytes[offset..].iter().take_while(|b| matches!(b, b'\n' | b'\r')).count();
    bytes[..start].iter().filter(|&&b| b == b'\n').count() as u64 + 1
}

pub(crate) fn read_price_file(path: &Path, column: Option<&str>) -> Result<PriceSeries> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    read_price_series(&text, column)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_column() {
        let s = read_price_series("1\n2\n\n3\n", None).unwrap();
        assert_eq!(s.prices, [1.0, 2.0, 3.0]);
        assert_eq!(s.lines, [1, 2, 4]);
    }

    #[test]
    fn header_is_optional() {
        assert_eq!(read_price_series("close\n5\n6\n", None).unwrap().prices, [5.0, 6.0]);
    }

    #[test]
    fn named_column_and_default_price_column() {
        let text = "month,price,nodes\n1,2.5,50\n2,3.5,60\n";
        assert_eq!(read_price_series(text, None).unwrap().prices, [2.5, 3.5]);
        assert_eq!(read_price_series(text, Some("nodes")).unwrap().prices, [50.0, 60.0]);
        assert_eq!(read_price_series(text, Some("0")).unwrap().prices, [1.0, 2.0]);
        assert!(read_price_series(text, Some("volume")).is_err());
    }

    #[test]
    fn bad_rows_name_their_line() {
        let err = read_price_series("price\n1\n0\n", None).unwrap_err();
        assert!(err.to_string().contains("row 3"), "{err}");
        let err = read_price_series("1\n-2\n", None).unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        assert!(read_price_series("1\nabc\n", None).is_err());
    }

    #[test]
    fn empty_inputs() {
        assert!(read_price_series("", None).is_err());
        assert!(read_price_series("price\n", None).is_err());
    }
}
