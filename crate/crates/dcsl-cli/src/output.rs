//! Table emission and machine-readable error reporting.

use std::io::{self, Write};
use std::path::Path;

use dcsl::table::{Table, TableFormat};

/// Renders the table and writes it to stdout, or atomically to `out`
/// (temp file in the destination directory, then rename) so readers never
/// observe a partially written file.
pub fn write_table(table: &Table, format: TableFormat, out: Option<&Path>) -> io::Result<()> {
    let text = table.render(format);
    match out {
        None => io::stdout().write_all(text.as_bytes()),
        Some(path) => {
            let dir = match path.parent() {
                Some(p) if !p.as_os_str().is_empty() => p,
                _ => Path::new("."),
            };
            let mut file = tempfile::NamedTempFile::new_in(dir)?;
            file.write_all(text.as_bytes())?;
            file.as_file().sync_all()?;
            file.persist(path).map_err(|e| e.error)?;
            Ok(())
        }
    }
}

/// Prints a one-line machine-readable error object to stderr:
/// `{"error":{"code":N,"kind":"...","message":"..."}}`.
pub fn emit_error(code: i32, kind: &str, message: &str) {
    let body = serde_json::json!({
        "error": { "code": code, "kind": kind, "message": message }
    });
    eprintln!("{body}");
}
