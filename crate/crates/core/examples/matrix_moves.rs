//! Every applicable braid move of a small diagram, done once on the word and
//! once on the matrix.

use laundry::braid::{applicable_moves, apply_braid_move};
use laundry::linking::encode;
use laundry::moves::{apply_matrix_move, MatrixMoveSpec};
use laundry::ClosedBraidDiagram;

fn main() -> laundry::Result<()> {
    let d: ClosedBraidDiagram = "3: 1 2 1 -2".parse()?;
    let m = encode(&d);
    for mv in applicable_moves(&d) {
        let after = apply_braid_move(&d, &mv)?;
        let (m2, witness) = apply_matrix_move(&m, &MatrixMoveSpec::from_braid(&mv, &m)?)?;
        let same = m2 == encode(&after);
        let w = match witness {
            Some(p) => format!("witness ok={}", p.verify(m.matrix(), m2.matrix())),
            None => "no witness".into(),
        };
        println!("{:<8} -> {:<22} commutes={same} {w}", mv.to_string(), after.to_string());
    }
    Ok(())
}
