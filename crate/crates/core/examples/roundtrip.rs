//! Random diagrams survive encode then decode, and far commutations never
//! change the matrix.

use laundry::braid::b0_normal_form;
use laundry::linking::{decode, encode};
use laundry::random::{case_rng, random_b0_swap, random_diagram};

fn main() {
    let mut bad = 0;
    for case in 0..200 {
        let mut rng = case_rng(7, case);
        let d = random_diagram(&mut rng);
        let m = encode(&d);
        if decode(&m).as_ref() != Ok(&d) {
            println!("case {case}: {d} does not come back");
            bad += 1;
        }
        let mut w = d.word().clone();
        for _ in 0..10 {
            w = random_b0_swap(&mut rng, &w);
        }
        if encode(&b0_normal_form(&w)) != m {
            println!("case {case}: swaps of {d} change the matrix");
            bad += 1;
        }
    }
    println!("200 diagrams, {bad} problems");
}
