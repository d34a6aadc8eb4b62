use serde::Serialize;

use hp0_core::series::render_table;

use crate::commands::CliError;

pub fn table_text<const N: usize>(header: &[&str; N], rows: &[[String; N]]) -> String {
    render_table(header, rows)
}

/// Compact JSON on one line; keys keep their declaration order.
pub fn json_text<T: Serialize>(value: &T) -> Result<String, CliError> {
    let v = serde_json::to_value(value)
        .map_err(|e| CliError::Invalid(format!("cannot encode JSON: {e}")))?;
    Ok(v.to_string() + "\n")
}

pub fn csv_text<const N: usize>(
    header: &[&str; N],
    rows: &[[String; N]],
) -> Result<String, CliError> {
    let encode = |e: csv::Error| CliError::Invalid(format!("cannot encode CSV: {e}"));
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(encode)?;
    for row in rows {
        w.write_record(row).map_err(encode)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Invalid(format!("cannot encode CSV: {e}")))?;
    String::from_utf8(bytes).map_err(|e| CliError::Invalid(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_cells_with_commas() {
        let text = csv_text(&["a", "b"], &[["1".into(), "x, y".into()]]).unwrap();
        assert_eq!(text, "a,b\n1,\"x, y\"\n");
    }

    #[test]
    fn json_keeps_field_order() {
        #[derive(Serialize)]
        struct Row {
            weight: i64,
            alpha: bool,
        }
        assert_eq!(
            json_text(&Row {
                weight: 3,
                alpha: true
            })
            .unwrap(),
            "{\"weight\":3,\"alpha\":true}\n"
        );
    }
}
