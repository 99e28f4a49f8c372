//! Encode a braid word, print the linking matrix with its row labels, and
//! decode it back.
//!
//!     cargo run --example encode_decode -- "4: 3 -2 1 -2 1"

use laundry::{linking, ClosedBraidDiagram};

fn main() -> laundry::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "4: 3 -2 1 -2 1".into());
    let d: ClosedBraidDiagram = text.parse()?;
    let m = linking::encode(&d);
    let labels: Vec<String> = m.order().labels().iter().map(|l| l.to_string()).collect();
    println!("order: {}", labels.join(" "));
    print!("{m}");
    println!("decoded: {}", linking::decode(&m)?);
    Ok(())
}
