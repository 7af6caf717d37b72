//! Rewrites `assets/L.pd` from the geometric model of the family link.
//!
//! Run with `cargo run -p surgeon --example regen_asset`.

use std::path::Path;

fn main() {
    let text = match surgeon::family::asset::render_asset() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(1);
        }
    };
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets/L.pd");
    if let Err(e) = std::fs::write(&path, text) {
        eprintln!("error: {}: {e}", path.display());
        std::process::exit(1);
    }
    println!("wrote {}", path.display());
}
