//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints its own PASS/FAIL line; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use laundry::braid::{applicable_moves, apply_braid_move, b0_normal_form, BraidLetter};
use laundry::forms::{correction_n, f_from_s, gl_form, intersection_form, m_prime, restore_m_from_gl, seifert_matrix};
use laundry::invariants::{alexander, alexander_oracle, LinkInvariants};
use laundry::laundry_model::{
    braid_turns, certificate, certificate_of, certificates_equal, circle_with_chords, interior_first_edges,
    overlap_graph, twisted_band_chords,
};
use laundry::linking::{decode, encode, laundry_order};
use laundry::moves::{apply_matrix_move, is_unimodular, verify_commuting, MatrixMoveSpec};
use laundry::random::{case_rng, random_b0_swap, random_diagram, random_insert, random_move, random_word};
use laundry::{
    BraidMoveSpec, BraidWord, ClosedBraidDiagram, IntMatrix, LaurentPoly, LinkingMatrix, R3Direction, Sign,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Duration, Box<dyn Fn() -> Outcome + 'a>);

const SEED: u64 = 20_240_611;

fn diagram(s: &str) -> ClosedBraidDiagram {
    s.parse().expect("literal braid word")
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden() -> IntMatrix {
    IntMatrix::from_rows(&[
        [0, -1, 1, -1, 1, 0, 0, 0, 0],
        [-1, -1, 1, 0, 1, 0, 1, 1, 0],
        [1, 1, 1, 0, 0, 0, 0, 0, -1],
        [-1, 0, 0, -1, 1, 0, 1, 1, 0],
        [1, 1, 0, 1, 1, 0, 0, 0, -1],
        [0, 0, 0, 0, 0, 0, 1, 0, 0],
        [0, 1, 0, 1, 0, 1, 1, -1, 0],
        [0, 1, 0, 1, 0, 0, -1, 0, 0],
        [0, 0, -1, 0, -1, 0, 0, 0, 0],
    ])
}

fn corpus() -> Vec<ClosedBraidDiagram> {
    (0..500).map(|c| random_diagram(&mut case_rng(SEED, c))).collect()
}

fn golden_matrix() -> Outcome {
    let d = diagram("4: 3 -2 1 -2 1");
    let m = encode(&d);
    let want = golden();
    let wrong: Vec<String> = (0..9)
        .flat_map(|i| (0..9).map(move |j| (i, j)))
        .filter(|&(i, j)| m[(i, j)] != want[(i, j)])
        .map(|(i, j)| format!("({},{})", i + 1, j + 1))
        .collect();
    check(m.size() == 9 && wrong.is_empty(), || format!("entries differ at {wrong:?}"))?;
    let back = decode(&LinkingMatrix::new(want).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    check(back == b0_normal_form(d.word()), || format!("decode gave {back}"))?;
    check(back.to_string() == "4: 3 -2 1 -2 1", || format!("decode gave {back}"))?;
    Ok("81/81 entries, decode = 4: 3 -2 1 -2 1".into())
}

fn roundtrip(corpus: &[ClosedBraidDiagram]) -> Outcome {
    let mut swaps = 0;
    for (k, d) in corpus.iter().enumerate() {
        let m = encode(d);
        let back = decode(&m).map_err(|e| format!("case {k} [{d}]: {e}"))?;
        check(&back == d, || format!("case {k}: decode(encode({d})) = {back}"))?;
        check(encode(&back) == m, || format!("case {k}: encode(decode(M)) != M for {d}"))?;
        let mut rng = case_rng(SEED + 1, k as u64);
        let mut w = d.word().clone();
        for s in 0..100 {
            w = random_b0_swap(&mut rng, &w);
            swaps += 1;
            check(encode(&b0_normal_form(&w)) == m, || format!("case {k}: swap {s} ({w}) changed M"))?;
        }
    }
    Ok(format!("{} diagrams both ways, {swaps} B0 swaps", corpus.len()))
}

fn conversions(corpus: &[ClosedBraidDiagram]) -> Outcome {
    for (k, d) in corpus.iter().enumerate() {
        let e = |x: laundry::Error| format!("case {k} [{d}]: {x}");
        let m = encode(d);
        let order = laundry_order(d);
        let n = correction_n(&order);
        let mp = m_prime(d).map_err(e)?;
        check(mp.add(&mp.transpose()).add(&n) == *m.matrix(), || format!("case {k} [{d}]: M'+M'ᵀ+N != M"))?;
        let parity = m.sub(&n).add(&intersection_form(d));
        check(parity.to_rows().iter().flatten().all(|x| x % 2 == 0), || {
            format!("case {k} [{d}]: M-N+A has odd entries")
        })?;
        let f = gl_form(&m);
        check(restore_m_from_gl(&f).map_err(e)? == m, || format!("case {k} [{d}]: restore(gl(M)) != M"))?;
        check(gl_form(&restore_m_from_gl(&f).map_err(e)?) == f, || format!("case {k} [{d}]: gl(restore(F)) != F"))?;
        let s = seifert_matrix(d).map_err(e)?;
        check(f_from_s(&s, &order).map_err(e)? == f, || format!("case {k} [{d}]: f_from_s(S) != gl(M)"))?;
    }
    Ok(format!("4 identities on {} diagrams", corpus.len()))
}

fn seifert_vs_oracle(corpus: &[ClosedBraidDiagram]) -> Outcome {
    let named = ["1:", "2: 1 1 1", "4: 3 -2 1 -2 1", "2: 1 1", "3: 1 1"];
    let all: Vec<ClosedBraidDiagram> = named.iter().map(|s| diagram(s)).chain(corpus.iter().cloned()).collect();
    for d in &all {
        let s = seifert_matrix(d).map_err(|e| format!("[{d}]: {e}"))?;
        let got = alexander(&s);
        let want = alexander_oracle(d.word()).map_err(|e| format!("[{d}]: {e}"))?;
        check(got.normalized() == want.normalized() && got.eq_up_to_units(&want), || {
            format!("[{d}]: Seifert gives {got}, Burau gives {want}")
        })?;
    }
    Ok(format!("{} diagrams ({} named)", all.len(), named.len()))
}

fn named_values() -> Outcome {
    let inv = |s: &str| LinkInvariants::of(&diagram(s)).map_err(|e| e.to_string());
    let p = LaurentPoly::from_coeffs;
    let u = inv("1:")?;
    check((u.determinant, u.signature, &u.alexander) == (1, 0, &LaurentPoly::one()), || format!("unknot {u}"))?;
    let t = inv("2: 1 1 1")?;
    check(
        (t.determinant, t.signature.abs(), &t.alexander) == (3, 2, &p(&[1, -1, 1])),
        || format!("trefoil {t}"),
    )?;
    let f = inv("4: 3 -2 1 -2 1")?;
    check(
        (f.determinant, f.signature, &f.alexander) == (5, 0, &p(&[1, -3, 1])),
        || format!("figure-eight {f}"),
    )?;
    let s = inv("3: 1 1")?;
    check(s.alexander.is_zero(), || format!("split link {s}"))?;
    Ok("unknot, trefoil, figure-eight, split link".into())
}

/// Families 0..4 = M1..M4; each has four versions.
fn version_of(d: &ClosedBraidDiagram, mv: &BraidMoveSpec) -> Option<(usize, usize)> {
    let sign_bit = |s: Sign| usize::from(s == Sign::Negative);
    match *mv {
        BraidMoveSpec::R2Insert { column, upper_sign, .. } => Some((0, 2 * (column % 2) + sign_bit(upper_sign))),
        BraidMoveSpec::R2Delete { height } => {
            let l = d.letters()[height - 1];
            Some((0, 2 * (l.column % 2) + sign_bit(l.sign.flip())))
        }
        BraidMoveSpec::Stabilize { sign } => Some((1, 2 * (d.strands() % 2) + sign_bit(sign))),
        BraidMoveSpec::Destabilize => {
            let l = d.letters().iter().find(|l| l.column == d.strands() - 1)?;
            Some((1, 2 * (l.column % 2) + sign_bit(l.sign)))
        }
        BraidMoveSpec::ConjugateRotate => {
            let l = d.letters().first()?;
            Some((2, 2 * (l.column % 2) + sign_bit(l.sign)))
        }
        BraidMoveSpec::R3 { height, direction } => {
            let l = d.letters()[height - 1];
            Some((3, 2 * usize::from(direction == R3Direction::Left) + sign_bit(l.sign)))
        }
    }
}

/// A diagram and move of the requested family and version.
fn pair_for(case: u64, family: usize, version: usize) -> Option<(ClosedBraidDiagram, BraidMoveSpec)> {
    let mut rng = case_rng(SEED + 2, case);
    for _ in 0..2000 {
        let mut w = random_word(&mut rng, 6, 10);
        if family == 3 && w.strands() >= 3 {
            // plant a braid-relation pattern
            let sign = if version.is_multiple_of(2) { Sign::Positive } else { Sign::Negative };
            let (outer, middle) = if version < 2 { (1, 2) } else { (2, 1) };
            let shift = if w.strands() > 3 { case as usize % (w.strands() - 2) } else { 0 };
            let mut letters = w.letters().to_vec();
            let at = case as usize % (letters.len() + 1);
            for (k, c) in [outer, middle, outer].into_iter().enumerate() {
                letters.insert(at + k, BraidLetter::new(c + shift, sign));
            }
            w = BraidWord::new(w.strands(), letters).ok()?;
        }
        let d = ClosedBraidDiagram::new(w);
        let mut moves = applicable_moves(&d);
        for _ in 0..6 {
            moves.extend(random_insert(&mut rng, &d));
        }
        if family == 1 {
            // a destabilizable diagram via a stabilization
            let s = if version.is_multiple_of(2) { Sign::Positive } else { Sign::Negative };
            if let Ok(st) = apply_braid_move(&d, &BraidMoveSpec::Stabilize { sign: s }) {
                if case % 2 == 1 && version_of(&st, &BraidMoveSpec::Destabilize) == Some((1, version)) {
                    return Some((st, BraidMoveSpec::Destabilize));
                }
            }
        }
        if let Some(mv) = moves.into_iter().find(|mv| version_of(&d, mv) == Some((family, version))) {
            return Some((d, mv));
        }
    }
    None
}

fn commuting_squares() -> Outcome {
    let mut covered = BTreeSet::new();
    let mut witnesses = 0;
    for case in 0..200u64 {
        let family = (case % 4) as usize;
        let version = ((case / 4) % 4) as usize;
        let (d, mv) = pair_for(case, family, version).ok_or_else(|| format!("no pair for M{} v{version}", family + 1))?;
        covered.insert((family, version));
        let ok = verify_commuting(&d, &mv).map_err(|e| format!("case {case} [{d}] {mv}: {e}"))?;
        check(ok, || format!("case {case} [{d}] {mv}: square does not commute"))?;
        let m = encode(&d);
        let spec = MatrixMoveSpec::from_braid(&mv, &m).map_err(|e| e.to_string())?;
        let (out, w) = apply_matrix_move(&m, &spec).map_err(|e| e.to_string())?;
        if family >= 2 {
            let w = w.ok_or_else(|| format!("case {case}: M{} without witness", family + 1))?;
            let p = w.matrix();
            check(is_unimodular(p) == Ok(true), || format!("case {case}: det P != ±1"))?;
            check(m.congruence(p) == *out.matrix(), || format!("case {case}: PᵀMP != output"))?;
            witnesses += 1;
        }
    }
    check(covered.len() == 16, || format!("only {} of 16 family versions covered", covered.len()))?;
    Ok(format!("200 pairs, 16/16 versions, {witnesses} witnesses checked"))
}

fn move_invariance() -> Outcome {
    let mut moves = 0;
    for start in 0..20u64 {
        let d0 = random_diagram(&mut case_rng(SEED + 3, start));
        let base = LinkInvariants::of(&d0).map_err(|e| e.to_string())?.triple();
        for seq in 0..50u64 {
            let mut rng = case_rng(SEED + 4, start * 50 + seq);
            let mut d = d0.clone();
            for step in 0..10 {
                let mv = random_move(&mut rng, &d);
                d = apply_braid_move(&d, &mv).map_err(|e| e.to_string())?;
                moves += 1;
                let t = LinkInvariants::of(&d).map_err(|e| e.to_string())?.triple();
                check(t == base, || {
                    format!("start {start} [{d0}] seq {seq} step {step} {mv}: {base} -> {t}")
                })?;
            }
        }
    }
    Ok(format!("1000 sequences, {moves} moves"))
}

fn worked_example() -> Outcome {
    let d = diagram("4: 3 -2 1 -2 1");
    let c = circle_with_chords(&d);
    let twisted = twisted_band_chords(&d);
    check(twisted == vec![2, 3, 4, 5, 7], || format!("twisted chords {twisted:?}"))?;
    let reduced = c.without_chords(&twisted);
    let g = overlap_graph(&reduced);
    check(g.vertices.len() == 4 && g.edges.is_empty(), || format!("overlap graph {g:?}"))?;
    for x in [&c, &reduced] {
        let t = braid_turns(x);
        check(t.len() == interior_first_edges(x).len() && t.0.values().all(|&v| v == 0), || "nonzero turn".into())?;
    }
    let cert = certificate_of(&d);
    check(certificates_equal(&cert, &certificate_of(&d)), || "certificate not reflexive".into())?;
    check(!certificates_equal(&certificate_of(&diagram("2: 1")), &certificate_of(&diagram("2: -1"))), || {
        "twist flip not distinguished".into()
    })?;
    // the same data with one turn flipped
    let red_diagram_cert = {
        let turns = braid_turns(&reduced);
        let e = *turns.0.keys().next().ok_or("reduced example has no interior edge")?;
        let mut flipped = turns.clone();
        flipped.set(e, 1);
        let m = laundry::laundry_model::augment(&IntMatrix::zeros(reduced.chord_count(), reduced.chord_count()));
        let a = certificate(reduced.clone(), m.clone(), turns).map_err(|e| e.to_string())?;
        let b = certificate(reduced.clone(), m, flipped).map_err(|e| e.to_string())?;
        !certificates_equal(&a, &b)
    };
    check(red_diagram_cert, || "turn flip not distinguished".into())?;
    Ok("chords {2,3,4,5,7}, 4 vertices / 0 edges, zero turns, certificates".into())
}

fn main() -> ExitCode {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("1 golden matrix", Duration::from_millis(100), Box::new(golden_matrix)),
        ("2 bijection round trip", Duration::from_secs(5), Box::new(|| roundtrip(&corpus))),
        ("3 conversion identities", Duration::from_secs(5), Box::new(|| conversions(&corpus))),
        ("4 Seifert vs Burau", Duration::from_secs(30), Box::new(|| seifert_vs_oracle(&corpus))),
        ("5 named invariants", Duration::from_secs(1), Box::new(named_values)),
        ("6 commuting squares", Duration::from_secs(10), Box::new(commuting_squares)),
        ("7 move invariance", Duration::from_secs(60), Box::new(move_invariance)),
        ("8 chord diagram example", Duration::from_millis(100), Box::new(worked_example)),
    ];
    let mut failed = 0;
    for (name, limit, f) in &criteria {
        let start = Instant::now();
        let outcome = f();
        let took = start.elapsed();
        let verdict = match outcome {
            Ok(detail) if took <= *limit => format!("PASS {name}: {detail}"),
            Ok(detail) => format!("FAIL {name}: {detail}, but over the time limit"),
            Err(why) => format!("FAIL {name}: {why}"),
        };
        if verdict.starts_with("FAIL") {
            failed += 1;
        }
        println!("{verdict} [{:.3}s / limit {:.3}s]", took.as_secs_f64(), limit.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
