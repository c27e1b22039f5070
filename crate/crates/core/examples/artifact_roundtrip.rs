//! The command-line workflow through the library: write a catalog input,
//! quantize it to an artifact, then rebuild and re-verify the artifact.

use gamma_bialg::cli::{catalog_document, quantize, verify_artifact, Tuning};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::temp_dir().join(format!("gammaq-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;
    let input = dir.join("sl2-cartan-z2.json");
    let doc = catalog_document("sl2-cartan-z2").expect("catalog entry");
    std::fs::write(&input, serde_json::to_string_pretty(&doc)?)?;

    let tuning = Tuning::default();
    let artifact = dir.join("sl2-cartan-z2.artifact.json");
    let q = quantize(&input, Some(&artifact), &tuning);
    print!("{}", q.report().to_text());
    let v = verify_artifact(&artifact, &tuning);
    print!("{}", v.report().to_text());
    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
