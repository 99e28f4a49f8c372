//! Determinant, signature and Alexander polynomial from the Seifert matrix,
//! checked against the Burau computation.

use laundry::forms::seifert_matrix;
use laundry::invariants::{alexander, alexander_oracle, LinkInvariants};
use laundry::ClosedBraidDiagram;

fn main() -> laundry::Result<()> {
    for w in ["2: 1 1 1", "3: 1 -2 1 -2", "2: 1 1 1 1 1", "3: 1 1 2 1 1 2", "4: 3 -2 1 -2 1"] {
        let d: ClosedBraidDiagram = w.parse()?;
        let inv = LinkInvariants::of(&d)?;
        let burau = alexander_oracle(d.word())?;
        let agree = alexander(&seifert_matrix(&d)?).eq_up_to_units(&burau);
        println!("{w:<18} {inv}  burau={} agree={agree}", burau.coefficient_string());
    }
    Ok(())
}
