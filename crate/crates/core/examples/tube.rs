//! Stabilization as a tube slide: widen, insert a canceling pair, change
//! basis.

use laundry::linking::encode;
use laundry::moves::{apply_matrix_move, stabilize_via_tube, MatrixMoveSpec};
use laundry::{ClosedBraidDiagram, Sign};

fn main() -> laundry::Result<()> {
    let d: ClosedBraidDiagram = "2: 1 1 1".parse()?;
    let m = encode(&d);
    let t = stabilize_via_tube(&m, Sign::Negative)?;
    println!("after inserting the pair\n{}", t.inserted);
    println!("slide\n{}", t.slide);
    println!("result\n{}", t.result);
    let (direct, _) = apply_matrix_move(&m, &MatrixMoveSpec::M2Stabilize { sign: Sign::Negative })?;
    println!("matches direct stabilization: {}", direct == t.result);
    Ok(())
}
