//! Writes the chord diagram of a braid word as SVG.
//!
//!     cargo run --example svg -- "2: 1 1 1" trefoil.svg

use laundry::cli::chord_svg;
use laundry::laundry_model::circle_with_chords;
use laundry::ClosedBraidDiagram;

fn main() -> laundry::Result<()> {
    let mut args = std::env::args().skip(1);
    let word = args.next().unwrap_or_else(|| "2: 1 1 1".into());
    let d: ClosedBraidDiagram = word.parse()?;
    let svg = chord_svg(&circle_with_chords(&d));
    match args.next() {
        Some(path) => {
            std::fs::write(&path, svg).expect("write svg");
            println!("wrote {path}");
        }
        None => print!("{svg}"),
    }
    Ok(())
}
