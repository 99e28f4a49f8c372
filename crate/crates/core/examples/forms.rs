//! The orientable-surface matrix, the Gordon-Litherland form and the Seifert
//! matrix of one diagram, plus the trip back from the form.

use laundry::forms::{gl_form, m_prime, restore_m_from_gl, seifert_matrix};
use laundry::{linking, ClosedBraidDiagram};

fn main() -> laundry::Result<()> {
    let d: ClosedBraidDiagram = "3: 1 -2 1 -2".parse()?;
    let m = linking::encode(&d);
    println!("M\n{m}");
    println!("M'\n{}", m_prime(&d)?);
    let f = gl_form(&m);
    println!("Gordon-Litherland\n{f}");
    println!("Seifert\n{}", seifert_matrix(&d)?);
    assert_eq!(restore_m_from_gl(&f)?, m);
    println!("restored M from the form");
    Ok(())
}
