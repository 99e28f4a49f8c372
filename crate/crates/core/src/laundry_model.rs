//! Circle-with-chords combinatorics of laundry surfaces.
//!
//! A circle-with-chords is a circle carrying oriented chords `E_i = a_i b_i`
//! and a base arc `J` from `a_0` to `b_0` holding every vertex. Here it is
//! stored as the sequence of chord endpoints met along `J`. For a braid
//! diagram there is one chord per surface cycle, and the first endpoints
//! appear in laundry order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::braid::ClosedBraidDiagram;
use crate::error::{Error, Result};
use crate::linking::{encode, laundry_order, odd_circle_of, CycleLabel, LaundryOrder};
use crate::matrix::{tokens, IntMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    A,
    B,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub chord: usize,
    pub end: End,
}

impl Endpoint {
    pub fn a(chord: usize) -> Self {
        Endpoint { chord, end: End::A }
    }

    pub fn b(chord: usize) -> Self {
        Endpoint { chord, end: End::B }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.end {
            End::A => 'a',
            End::B => 'b',
        };
        write!(f, "{c}{}", self.chord)
    }
}

impl FromStr for Endpoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(1, 1, format!("bad endpoint token {s:?}"));
        let (end, rest) = match s.as_bytes().first() {
            Some(b'a') => (End::A, &s[1..]),
            Some(b'b') => (End::B, &s[1..]),
            _ => return Err(bad()),
        };
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        Ok(Endpoint {
            chord: rest.parse().map_err(|_| bad())?,
            end,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleWithChords {
    endpoints: Vec<Endpoint>,
}

impl CircleWithChords {
    /// Checks the labeling rules: `a_0` first, `b_0` last, each chord has one
    /// `a` and one `b` with `a` first, and the `a` endpoints appear in
    /// increasing label order.
    pub fn new(endpoints: Vec<Endpoint>) -> Result<Self> {
        let bad = |msg: String| Err(Error::Inconsistent(msg));
        if endpoints.first() != Some(&Endpoint::a(0)) || endpoints.last() != Some(&Endpoint::b(0)) {
            return bad("J must start at a0 and end at b0".into());
        }
        let mut seen_a = BTreeSet::new();
        let mut seen_b = BTreeSet::new();
        let mut last_a = None;
        for e in &endpoints {
            match e.end {
                End::A => {
                    if !seen_a.insert(e.chord) {
                        return bad(format!("{e} appears twice"));
                    }
                    if last_a.is_some_and(|l| l >= e.chord) {
                        return bad(format!("{e} out of order along J"));
                    }
                    last_a = Some(e.chord);
                }
                End::B => {
                    if !seen_a.contains(&e.chord) {
                        return bad(format!("{e} precedes a{}", e.chord));
                    }
                    if !seen_b.insert(e.chord) {
                        return bad(format!("{e} appears twice"));
                    }
                }
            }
        }
        if seen_a != seen_b {
            return bad("every chord needs both endpoints".into());
        }
        Ok(CircleWithChords { endpoints })
    }

    /// Endpoints in J-order, `a0` first and `b0` last.
    pub fn endpoints(&self) -> &[Endpoint] {
        &self.endpoints
    }

    /// Chord labels other than 0, ascending.
    pub fn chords(&self) -> Vec<usize> {
        self.endpoints
            .iter()
            .filter(|e| e.end == End::A && e.chord != 0)
            .map(|e| e.chord)
            .collect()
    }

    pub fn chord_count(&self) -> usize {
        self.endpoints.len() / 2 - 1
    }

    /// J-positions of `a_i` and `b_i`.
    pub fn span(&self, chord: usize) -> Option<(usize, usize)> {
        let a = self.endpoints.iter().position(|&e| e == Endpoint::a(chord))?;
        let b = self.endpoints.iter().position(|&e| e == Endpoint::b(chord))?;
        Some((a, b))
    }

    /// Drops the given chords, keeping the labels of the others.
    pub fn without_chords(&self, remove: &[usize]) -> Self {
        CircleWithChords {
            endpoints: self
                .endpoints
                .iter()
                .copied()
                .filter(|e| e.chord == 0 || !remove.contains(&e.chord))
                .collect(),
        }
    }

    fn spans(&self) -> BTreeMap<usize, (usize, usize)> {
        let mut out: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        for (p, e) in self.endpoints.iter().enumerate() {
            if e.chord == 0 {
                continue;
            }
            let s = out.entry(e.chord).or_insert((0, 0));
            match e.end {
                End::A => s.0 = p,
                End::B => s.1 = p,
            }
        }
        out
    }
}

/// Text format: the chord count, then the endpoint tokens in J-order.
impl fmt::Display for CircleWithChords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.chord_count())?;
        let toks: Vec<String> = self.endpoints.iter().map(|e| e.to_string()).collect();
        writeln!(f, "{}", toks.join(" "))
    }
}

impl FromStr for CircleWithChords {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (n_line, first) = lines.next().ok_or_else(|| Error::parse(1, 1, "empty input"))?;
        let n: usize = first
            .trim()
            .parse()
            .map_err(|_| Error::parse(n_line + 1, 1, format!("bad chord count {:?}", first.trim())))?;
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(n_line + 2, 1, "missing endpoint line"))?;
        let mut endpoints = Vec::new();
        for (col, tok) in tokens(line) {
            let e: Endpoint = tok.parse().map_err(|_| Error::parse(line_no + 1, col, format!("bad endpoint {tok:?}")))?;
            endpoints.push(e);
        }
        if endpoints.len() != 2 * n + 2 {
            return Err(Error::parse(
                line_no + 1,
                1,
                format!("expected {} endpoints, found {}", 2 * n + 2, endpoints.len()),
            ));
        }
        if let Some((extra, _)) = lines.next() {
            return Err(Error::parse(extra + 1, 1, "trailing input"));
        }
        CircleWithChords::new(endpoints)
    }
}

/// The two halves of the laundry order of feet: first feet along the even
/// circles, then second feet down the odd circles. Chord `i` is the cycle at
/// laundry position `i - 1`.
pub(crate) fn feet_halves(order: &LaundryOrder) -> (Vec<Endpoint>, Vec<Endpoint>) {
    let labels = order.labels();
    let chord = |p: usize| p + 1;
    let mut first = Vec::new();
    let mut open: Option<usize> = None;
    let mut odd_start = labels.len();
    for (p, l) in labels.iter().enumerate() {
        match *l {
            CycleLabel::Circle(j) if j % 2 == 0 => {
                if let Some(c) = open.take() {
                    first.push(Endpoint::b(c));
                }
                first.push(Endpoint::a(chord(p)));
                open = Some(chord(p));
            }
            CycleLabel::Circle(_) => {
                odd_start = p;
                break;
            }
            CycleLabel::Band { .. } => first.push(Endpoint::a(chord(p))),
        }
    }
    if let Some(c) = open {
        first.push(Endpoint::b(c));
    }

    let mut second = Vec::new();
    for (p, l) in labels.iter().enumerate().skip(odd_start) {
        let CycleLabel::Circle(j) = *l else {
            unreachable!("odd circles close the laundry order")
        };
        second.push(Endpoint::a(chord(p)));
        let mut feet: Vec<(usize, usize)> = labels
            .iter()
            .enumerate()
            .filter_map(|(q, l)| match *l {
                CycleLabel::Band { height, column, .. } if odd_circle_of(column) == j => Some((height, q)),
                _ => None,
            })
            .collect();
        feet.sort_by_key(|y| std::cmp::Reverse(y.0));
        second.extend(feet.into_iter().map(|(_, q)| Endpoint::b(chord(q))));
        second.push(Endpoint::b(chord(p)));
    }
    (first, second)
}

pub fn circle_with_chords(d: &ClosedBraidDiagram) -> CircleWithChords {
    let (first, second) = feet_halves(&laundry_order(d));
    let mut endpoints = vec![Endpoint::a(0)];
    endpoints.extend(first);
    endpoints.extend(second);
    endpoints.push(Endpoint::b(0));
    CircleWithChords::new(endpoints).expect("braid diagrams give well-labeled chords")
}

/// Chords of the crossing bands.
pub fn twisted_band_chords(d: &ClosedBraidDiagram) -> Vec<usize> {
    laundry_order(d).band_positions().into_iter().map(|p| p + 1).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OverlapGraph {
    pub vertices: Vec<usize>,
    /// Pairs `(i, j)` with `i < j`.
    pub edges: BTreeSet<(usize, usize)>,
}

impl OverlapGraph {
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    /// Connected components, each sorted, ordered by minimum.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &v in &self.vertices {
            if !seen.insert(v) {
                continue;
            }
            let mut comp = vec![v];
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &(i, j) in &self.edges {
                    let y = if i == x {
                        j
                    } else if j == x {
                        i
                    } else {
                        continue;
                    };
                    if seen.insert(y) {
                        comp.push(y);
                        stack.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn overlap_graph(c: &CircleWithChords) -> OverlapGraph {
    let spans = c.spans();
    let vertices: Vec<usize> = spans.keys().copied().collect();
    let mut edges = BTreeSet::new();
    for (&i, &(ai, bi)) in &spans {
        for (&j, &(aj, bj)) in spans.range(i + 1..) {
            let (x, y) = if ai < aj { ((ai, bi), (aj, bj)) } else { ((aj, bj), (ai, bi)) };
            if x.0 < y.0 && y.0 < x.1 && x.1 < y.1 {
                edges.insert((i, j));
            }
        }
    }
    OverlapGraph { vertices, edges }
}

/// An edge of `J` between consecutive vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JEdge {
    pub from: Endpoint,
    pub to: Endpoint,
}

impl fmt::Display for JEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.from, self.to)
    }
}

/// For each overlap component not containing chord 1, the `J`-edge ending at
/// the first endpoint of its smallest chord.
pub fn interior_first_edges(c: &CircleWithChords) -> Vec<JEdge> {
    let graph = overlap_graph(c);
    let mut out = Vec::new();
    for comp in graph.components() {
        if comp.contains(&1) {
            continue;
        }
        let target = Endpoint::a(comp[0]);
        let p = c
            .endpoints
            .iter()
            .position(|&e| e == target)
            .expect("component chords are on J");
        out.push(JEdge {
            from: c.endpoints[p - 1],
            to: target,
        });
    }
    out
}

/// Turn values (0 or 1) keyed by interior first-edge.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TurnAssignment(pub BTreeMap<JEdge, u8>);

impl TurnAssignment {
    pub fn get(&self, e: &JEdge) -> Option<u8> {
        self.0.get(e).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn set(&mut self, e: JEdge, turn: u8) {
        self.0.insert(e, turn);
    }
}

/// Surfaces built from braid diagrams have turn zero on every interior
/// first-edge.
pub fn braid_turns(c: &CircleWithChords) -> TurnAssignment {
    TurnAssignment(interior_first_edges(c).into_iter().map(|e| (e, 0)).collect())
}

/// Graph, linking matrix (with the zero row of `X_0` first) and turns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EquivalenceCertificate {
    graph: CircleWithChords,
    matrix: IntMatrix,
    turns: TurnAssignment,
}

impl EquivalenceCertificate {
    pub fn graph(&self) -> &CircleWithChords {
        &self.graph
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn turns(&self) -> &TurnAssignment {
        &self.turns
    }
}

pub fn certificate(c: CircleWithChords, m_augmented: IntMatrix, t: TurnAssignment) -> Result<EquivalenceCertificate> {
    let n = c.chord_count();
    if !m_augmented.is_square() || m_augmented.rows() != n + 1 {
        return Err(Error::SizeMismatch {
            expected: n + 1,
            found: m_augmented.rows(),
        });
    }
    if (0..=n).any(|k| m_augmented[(0, k)] != 0 || m_augmented[(k, 0)] != 0) {
        return Err(Error::Inconsistent("the X_0 row and column must be zero".into()));
    }
    let expected: BTreeSet<JEdge> = interior_first_edges(&c).into_iter().collect();
    let given: BTreeSet<JEdge> = t.0.keys().copied().collect();
    if expected != given {
        return Err(Error::Inconsistent("turn keys differ from the interior first-edges".into()));
    }
    if t.0.values().any(|&v| v > 1) {
        return Err(Error::Inconsistent("turns are 0 or 1".into()));
    }
    Ok(EquivalenceCertificate {
        graph: c,
        matrix: m_augmented,
        turns: t,
    })
}

/// Borders `m` with a leading zero row and column.
pub fn augment(m: &IntMatrix) -> IntMatrix {
    let n = m.rows() + 1;
    IntMatrix::from_fn(n, n, |i, j| if i == 0 || j == 0 { 0 } else { m[(i - 1, j - 1)] })
}

pub fn certificate_of(d: &ClosedBraidDiagram) -> EquivalenceCertificate {
    let c = circle_with_chords(d);
    let turns = braid_turns(&c);
    certificate(c, augment(encode(d).matrix()), turns).expect("braid certificates are consistent")
}

pub fn certificates_equal(x: &EquivalenceCertificate, y: &EquivalenceCertificate) -> bool {
    x == y
}

/// Crossing point of the semicircles over `(p1, q1)` and `(p2, q2)` as an
/// exact fraction `num / den` of the J coordinate, `den > 0`.
fn crossing_x(p1: i64, q1: i64, p2: i64, q2: i64) -> (i64, i64) {
    let num = p2 * q2 - p1 * q1;
    let den = (p2 + q2) - (p1 + q1);
    if den < 0 {
        (-num, -den)
    } else {
        (num, den)
    }
}

/// Laundry condition (6) for the canonical drawing: `J` on a line and each
/// chord a semicircle below it. For every chord `i`, the later chords it
/// crosses must be met along `E_i` in increasing label order.
pub fn condition6_check(c: &CircleWithChords) -> bool {
    let spans = c.spans();
    for (&i, &(ai, bi)) in &spans {
        let mut hits: Vec<(usize, (i64, i64))> = Vec::new();
        for (&j, &(aj, bj)) in spans.range(i + 1..) {
            let interleaved = (ai < aj && aj < bi && bi < bj) || (aj < ai && ai < bj && bj < bi);
            if interleaved {
                hits.push((j, crossing_x(ai as i64, bi as i64, aj as i64, bj as i64)));
            }
        }
        // E_i runs from a_i to b_i, left to right
        for w in hits.windows(2) {
            let ((_, (n1, d1)), (_, (n2, d2))) = (w[0], w[1]);
            if (n1 as i128) * (d2 as i128) >= (n2 as i128) * (d1 as i128) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> ClosedBraidDiagram {
        s.parse().unwrap()
    }

    fn cwc(s: &str) -> CircleWithChords {
        s.parse().unwrap()
    }

    #[test]
    fn single_circle() {
        let c = circle_with_chords(&d("1:"));
        assert_eq!(c.to_string(), "1\na0 a1 b1 b0\n");
        assert!(interior_first_edges(&c).is_empty());
        assert!(braid_turns(&c).is_empty());
    }

    #[test]
    fn figure_eight_endpoint_sequence() {
        let c = circle_with_chords(&d("4: 3 -2 1 -2 1"));
        assert_eq!(c.chord_count(), 9);
        let got: Vec<String> = c.endpoints().iter().map(|e| e.to_string()).collect();
        // u2 x1a x2a x3a x4a v2 u4 x5a v4 u3 x3b x1b x5b v3 u1 x4b x2b v1
        let want = "a0 a1 a2 a3 a4 a5 b1 a6 a7 b6 a8 b4 b2 b7 b8 a9 b5 b3 b9 b0";
        assert_eq!(got.join(" "), want);
        assert_eq!(twisted_band_chords(&d("4: 3 -2 1 -2 1")), vec![2, 3, 4, 5, 7]);
    }

    #[test]
    fn reduced_example() {
        let c = circle_with_chords(&d("4: 3 -2 1 -2 1")).without_chords(&[2, 3, 4, 5, 7]);
        let g = overlap_graph(&c);
        assert_eq!(g.vertices, vec![1, 6, 8, 9]);
        assert!(g.edges.is_empty());
        let edges = interior_first_edges(&c);
        assert_eq!(edges.len(), 3);
        assert!(edges.contains(&JEdge {
            from: Endpoint::b(6),
            to: Endpoint::a(8)
        }));
        assert!(braid_turns(&c).0.values().all(|&t| t == 0));
    }

    #[test]
    fn overlap_definition() {
        assert!(overlap_graph(&cwc("2\na0 a1 a2 b2 b1 b0")).edges.is_empty());
        let g = overlap_graph(&cwc("2\na0 a1 a2 b1 b2 b0"));
        assert!(g.has_edge(1, 2) && g.has_edge(2, 1));
        assert!(interior_first_edges(&cwc("2\na0 a1 a2 b1 b2 b0")).is_empty());
    }

    #[test]
    fn text_format_rejects_bad_labels() {
        assert!("1\na0 b1 a1 b0".parse::<CircleWithChords>().is_err());
        assert!("2\na0 a2 a1 b1 b2 b0".parse::<CircleWithChords>().is_err());
        assert!("1\na1 a0 b1 b0".parse::<CircleWithChords>().is_err());
        assert!("2\na0 a1 b1 b0".parse::<CircleWithChords>().is_err());
        assert!("1\na0 x1 b1 b0".parse::<CircleWithChords>().is_err());
    }

    #[test]
    fn condition6_examples() {
        assert!(condition6_check(&cwc("1\na0 a1 b1 b0")));
        assert!(condition6_check(&cwc("2\na0 a1 a2 b1 b2 b0")));
        let three = cwc("3\na0 a1 a2 a3 b1 b2 b3 b0");
        let first = condition6_check(&three);
        assert_eq!(first, condition6_check(&three));
        // positions 1..6: chord 1 spans (1,4), 2 (2,5), 3 (3,6). E_1 meets
        // chord 2 at x = (10-4)/(7-5) = 3 and chord 3 at (18-4)/(9-5) = 3.5.
        assert!(first);
    }

    #[test]
    fn certificates() {
        let x = certificate_of(&d("2: 1"));
        assert!(certificates_equal(&x, &certificate_of(&d("2: 1"))));
        assert!(!certificates_equal(&x, &certificate_of(&d("2: -1"))));
        assert_eq!(x.matrix().row(0), &[0, 0, 0, 0]);

        let e = certificate_of(&d("4: 3 -2 1 -2 1"));
        let reduced = e.graph().without_chords(&[2, 3, 4, 5, 7]);
        let keep = [0usize, 1, 6, 8, 9];
        let m = e.matrix().principal(&keep);
        let zero = certificate(reduced.clone(), m.clone(), braid_turns(&reduced)).unwrap();
        let mut flipped_turns = braid_turns(&reduced);
        let edge = interior_first_edges(&reduced)[0];
        flipped_turns.set(edge, 1);
        let one = certificate(reduced, m, flipped_turns).unwrap();
        assert!(!certificates_equal(&zero, &one));
    }

    #[test]
    fn certificate_consistency_errors() {
        let c = circle_with_chords(&d("2: 1"));
        let m = augment(encode(&d("2: 1")).matrix());
        assert!(certificate(c.clone(), IntMatrix::identity(2), TurnAssignment::default()).is_err());
        let mut nonzero = m.clone();
        nonzero[(0, 1)] = 1;
        assert!(certificate(c.clone(), nonzero, TurnAssignment::default()).is_err());
        let mut extra = TurnAssignment::default();
        extra.set(
            JEdge {
                from: Endpoint::a(0),
                to: Endpoint::a(1),
            },
            0,
        );
        assert!(certificate(c, m, extra).is_err());
    }
}
