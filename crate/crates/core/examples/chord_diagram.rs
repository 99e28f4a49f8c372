//! The circle with chords of a diagram, its overlap graph, and the
//! equivalence certificate.

use laundry::laundry_model::{certificate_of, certificates_equal, circle_with_chords, interior_first_edges, overlap_graph, twisted_band_chords};
use laundry::ClosedBraidDiagram;

fn main() -> laundry::Result<()> {
    let d: ClosedBraidDiagram = "4: 3 -2 1 -2 1".parse()?;
    let c = circle_with_chords(&d);
    print!("{c}");
    let g = overlap_graph(&c);
    println!("overlap edges: {:?}", g.edges);
    let reduced = c.without_chords(&twisted_band_chords(&d));
    let interior: Vec<String> = interior_first_edges(&reduced).iter().map(|e| e.to_string()).collect();
    println!("without crossing bands: {}", interior.join(" "));
    let mirror: ClosedBraidDiagram = "4: -3 2 -1 2 -1".parse()?;
    println!("same as itself: {}", certificates_equal(&certificate_of(&d), &certificate_of(&d)));
    println!("same as its mirror word: {}", certificates_equal(&certificate_of(&d), &certificate_of(&mirror)));
    Ok(())
}
