//! Seeded random diagrams and moves. Every generator is deterministic given
//! the RNG state.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{applicable_moves, BraidLetter, BraidMoveSpec, BraidWord, ClosedBraidDiagram, Sign};

pub type CaseRng = ChaCha8Rng;

pub fn rng(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Independent stream for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> CaseRng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case);
    r
}

fn random_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

/// A word on `1..=max_strands` strands with at most `max_crossings` letters.
pub fn random_word<R: Rng>(rng: &mut R, max_strands: usize, max_crossings: usize) -> BraidWord {
    let n = rng.gen_range(1..=max_strands.max(1));
    let len = if n == 1 { 0 } else { rng.gen_range(0..=max_crossings) };
    let letters = (0..len)
        .map(|_| BraidLetter::new(rng.gen_range(1..n), random_sign(rng)))
        .collect();
    BraidWord::new(n, letters).expect("columns drawn in range")
}

/// Diagrams with `n ≤ 6` and at most 12 crossings.
pub fn random_diagram<R: Rng>(rng: &mut R) -> ClosedBraidDiagram {
    ClosedBraidDiagram::new(random_word(rng, 6, 12))
}

/// Swaps one random adjacent pair of commuting letters, if there is one.
pub fn random_b0_swap<R: Rng>(rng: &mut R, w: &BraidWord) -> BraidWord {
    let l = w.letters();
    let spots: Vec<usize> = (1..l.len()).filter(|&k| l[k - 1].column.abs_diff(l[k].column) >= 2).collect();
    let Some(&k) = spots.choose(rng) else {
        return w.clone();
    };
    let mut letters = l.to_vec();
    letters.swap(k - 1, k);
    BraidWord::new(w.strands(), letters).expect("same letters")
}

/// A random canceling-pair insertion, if the diagram has a column.
pub fn random_insert<R: Rng>(rng: &mut R, d: &ClosedBraidDiagram) -> Option<BraidMoveSpec> {
    (d.strands() >= 2).then(|| BraidMoveSpec::R2Insert {
        column: rng.gen_range(1..d.strands()),
        height: rng.gen_range(1..=d.crossings() + 1),
        upper_sign: random_sign(rng),
    })
}

/// A uniformly chosen applicable move, insertions included.
pub fn random_move<R: Rng>(rng: &mut R, d: &ClosedBraidDiagram) -> BraidMoveSpec {
    let mut moves = applicable_moves(d);
    if let Some(m) = random_insert(rng, d) {
        moves.push(m);
    }
    *moves.choose(rng).expect("conjugation always applies")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::b0_normal_form;

    #[test]
    fn deterministic() {
        let a: Vec<String> = (0..20).map(|c| random_diagram(&mut case_rng(7, c)).to_string()).collect();
        let b: Vec<String> = (0..20).map(|c| random_diagram(&mut case_rng(7, c)).to_string()).collect();
        assert_eq!(a, b);
        let c: Vec<String> = (0..20).map(|c| random_diagram(&mut case_rng(8, c)).to_string()).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn bounds() {
        let mut r = rng(1);
        for _ in 0..300 {
            let d = random_diagram(&mut r);
            assert!(d.strands() <= 6 && d.crossings() <= 12);
        }
    }

    #[test]
    fn swap_keeps_normal_form() {
        let mut r = rng(3);
        for _ in 0..100 {
            let w = random_word(&mut r, 6, 12);
            let s = random_b0_swap(&mut r, &w);
            assert_eq!(b0_normal_form(&w), b0_normal_form(&s));
        }
    }
}
