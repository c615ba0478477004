//! Regenerates `corpus/` at the repository root.

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for (rel, contents) in quasihopf_cli::corpus_files::corpus_files() {
        let path = root.join(rel);
        std::fs::create_dir_all(path.parent().expect("files live in subdirectories"))?;
        std::fs::write(&path, contents)?;
    }
    Ok(())
}
