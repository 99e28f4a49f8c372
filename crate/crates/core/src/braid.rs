//! Braid words, closed braid diagrams and the braid moves.
//!
//! Letters are read bottom to top: the first letter of a word is the lowest
//! crossing of the diagram (height 1). Two words give the same diagram when
//! they differ by commuting letters whose columns are at least two apart; the
//! diagram stores the canonical representative of that class.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::tokens;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Positive),
            -1 => Some(Sign::Negative),
            _ => None,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

/// One crossing: the generator `σ_column` or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidLetter {
    pub column: usize,
    pub sign: Sign,
}

impl BraidLetter {
    pub fn new(column: usize, sign: Sign) -> Self {
        BraidLetter { column, sign }
    }

    /// Signed generator index as used in the text format.
    pub fn signed(self) -> i64 {
        self.column as i64 * self.sign.value()
    }

    fn depends_on(self, other: BraidLetter) -> bool {
        self.column.abs_diff(other.column) <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if strands < 1 {
            return Err(Error::OutOfRange("strand count must be at least 1".into()));
        }
        if let Some(l) = letters.iter().find(|l| l.column < 1 || l.column >= strands) {
            return Err(Error::OutOfRange(format!(
                "column {} outside 1..{} for {} strands",
                l.column,
                strands - 1,
                strands
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices, e.g. `[3, -2, 1]`.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self> {
        let mut out = Vec::with_capacity(letters.len());
        for &e in letters {
            if e == 0 {
                return Err(Error::OutOfRange("letter 0 is not a generator".into()));
            }
            let sign = if e > 0 { Sign::Positive } else { Sign::Negative };
            out.push(BraidLetter::new(e.unsigned_abs() as usize, sign));
        }
        Self::new(strands, out)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed_letters(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.signed()).collect()
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Grammar: `<n> ":" (<signed integer>)*`, whitespace-insensitive.
    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (line_no, line) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "empty input, expected `<n>: <letters>`"))?;
        let line_no = line_no + 1;
        if let Some((extra, _)) = lines.next() {
            return Err(Error::parse(extra + 1, 1, "trailing input after braid word"));
        }
        let colon = line
            .find(':')
            .ok_or_else(|| Error::parse(line_no, line.len().max(1), "missing `:` after strand count"))?;
        let head = &line[..colon];
        let head_tok = head.trim();
        let head_col = head.len() - head.trim_start().len() + 1;
        let strands: usize = head_tok
            .parse()
            .map_err(|_| Error::parse(line_no, head_col, format!("bad strand count {head_tok:?}")))?;
        if strands < 1 {
            return Err(Error::parse(line_no, head_col, "strand count must be at least 1"));
        }
        let mut letters = Vec::new();
        for (col, tok) in tokens(&line[colon + 1..]) {
            let col = col + colon + 1;
            let v: i64 = tok
                .parse()
                .map_err(|_| Error::parse(line_no, col, format!("bad letter {tok:?}")))?;
            if v == 0 {
                return Err(Error::parse(line_no, col, "letter 0 is not a generator"));
            }
            let column = v.unsigned_abs() as usize;
            if column >= strands {
                return Err(Error::parse(
                    line_no,
                    col,
                    format!("column {column} needs more than {strands} strands"),
                ));
            }
            let sign = if v > 0 { Sign::Positive } else { Sign::Negative };
            letters.push(BraidLetter::new(column, sign));
        }
        Ok(BraidWord { strands, letters })
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.strands)?;
        for l in &self.letters {
            write!(f, " {}", l.signed())?;
        }
        Ok(())
    }
}

pub fn parse_braid(text: &str) -> Result<BraidWord> {
    text.parse()
}

pub fn format_braid(w: &BraidWord) -> String {
    w.to_string()
}

/// A closed braid diagram up to planar isotopy, held as its canonical word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedBraidDiagram {
    word: BraidWord,
}

impl ClosedBraidDiagram {
    pub fn new(word: BraidWord) -> Self {
        b0_normal_form(&word)
    }

    pub fn word(&self) -> &BraidWord {
        &self.word
    }

    pub fn strands(&self) -> usize {
        self.word.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.word.letters
    }

    pub fn crossings(&self) -> usize {
        self.word.letters.len()
    }
}

impl FromStr for ClosedBraidDiagram {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Ok(ClosedBraidDiagram::new(text.parse()?))
    }
}

impl fmt::Display for ClosedBraidDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

/// Canonical representative under distant commutation: repeatedly emit the
/// smallest-column letter among those whose dependent predecessors (column
/// difference at most one) have all been emitted.
pub fn b0_normal_form(w: &BraidWord) -> ClosedBraidDiagram {
    let letters = &w.letters;
    let n = letters.len();
    // blockers[k] = number of not-yet-emitted earlier letters that k depends on
    let mut blockers: Vec<usize> = (0..n)
        .map(|k| (0..k).filter(|&j| letters[j].depends_on(letters[k])).count())
        .collect();
    let mut emitted = vec![false; n];
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&k| !emitted[k] && blockers[k] == 0)
            .min_by_key(|&k| letters[k].column)
            .expect("dependency order of a word is acyclic");
        emitted[next] = true;
        out.push(letters[next]);
        for k in next + 1..n {
            if !emitted[k] && letters[next].depends_on(letters[k]) {
                blockers[k] -= 1;
            }
        }
    }
    ClosedBraidDiagram {
        word: BraidWord {
            strands: w.strands,
            letters: out,
        },
    }
}

/// Number of link components of the closure.
pub fn component_count(w: &BraidWord) -> usize {
    let n = w.strands;
    // perm[p] = strand at position p after reading the word
    let mut perm: Vec<usize> = (0..n).collect();
    for l in &w.letters {
        perm.swap(l.column - 1, l.column);
    }
    let mut seen = vec![false; n];
    let mut cycles = 0;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
        }
    }
    cycles
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum R3Direction {
    /// Middle letter one column left of the outer pair: `σ_{i+1} σ_i σ_{i+1}`.
    Left,
    /// Middle letter one column right of the outer pair: `σ_i σ_{i+1} σ_i`.
    Right,
}

impl R3Direction {
    pub fn offset(self) -> isize {
        match self {
            R3Direction::Left => -1,
            R3Direction::Right => 1,
        }
    }

    pub fn reversed(self) -> R3Direction {
        match self {
            R3Direction::Left => R3Direction::Right,
            R3Direction::Right => R3Direction::Left,
        }
    }
}

/// Heights are 1-based positions in the canonical word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidMoveSpec {
    /// Insert `σ_column^{-s} σ_column^{s}` (upper letter has sign `s`) so that
    /// the lower new letter sits at `height`; `height = len + 1` means the top.
    R2Insert {
        column: usize,
        height: usize,
        upper_sign: Sign,
    },
    /// Delete the canceling pair whose lower letter is at `height`.
    R2Delete { height: usize },
    /// Widen to `n + 1` strands and prepend `σ_n^{±1}` at the bottom.
    Stabilize { sign: Sign },
    Destabilize,
    /// Move the bottom letter to the top.
    ConjugateRotate,
    /// Braid relation rewrite; `height` is that of the lowest pattern letter.
    R3 { height: usize, direction: R3Direction },
}

impl fmt::Display for BraidMoveSpec {
    /// The command-line move syntax.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            BraidMoveSpec::R2Insert {
                column,
                height,
                upper_sign,
            } => write!(f, "r2-insert:{column}:{height}:{}", upper_sign.symbol()),
            BraidMoveSpec::R2Delete { height } => write!(f, "r2-delete:{height}"),
            BraidMoveSpec::Stabilize { sign } => write!(f, "stab:{}", sign.symbol()),
            BraidMoveSpec::Destabilize => write!(f, "destab"),
            BraidMoveSpec::ConjugateRotate => write!(f, "conj"),
            BraidMoveSpec::R3 { height, direction } => write!(
                f,
                "r3:{height}:{}",
                match direction {
                    R3Direction::Left => 'l',
                    R3Direction::Right => 'r',
                }
            ),
        }
    }
}

impl FromStr for BraidMoveSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let parts: Vec<&str> = text.split(':').collect();
        let bad = |msg: &str| Error::parse(1, 1, format!("bad move {text:?}: {msg}"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad("expected a positive integer"));
        let sign = |s: &str| match s {
            "+" => Ok(Sign::Positive),
            "-" => Ok(Sign::Negative),
            _ => Err(bad("expected `+` or `-`")),
        };
        match parts.as_slice() {
            ["r2-insert", c, h, s] => Ok(BraidMoveSpec::R2Insert {
                column: num(c)?,
                height: num(h)?,
                upper_sign: sign(s)?,
            }),
            ["r2-delete", h] => Ok(BraidMoveSpec::R2Delete { height: num(h)? }),
            ["stab", s] => Ok(BraidMoveSpec::Stabilize { sign: sign(s)? }),
            ["destab"] => Ok(BraidMoveSpec::Destabilize),
            ["conj"] => Ok(BraidMoveSpec::ConjugateRotate),
            ["r3", h, d] => Ok(BraidMoveSpec::R3 {
                height: num(h)?,
                direction: match *d {
                    "l" => R3Direction::Left,
                    "r" => R3Direction::Right,
                    _ => return Err(bad("expected `l` or `r`")),
                },
            }),
            _ => Err(bad("unknown move")),
        }
    }
}

/// Index in `letters` of the next letter above `from` whose column lies in
/// `lo..=hi`.
fn next_in_columns(letters: &[BraidLetter], from: usize, lo: usize, hi: usize) -> Option<usize> {
    (from + 1..letters.len()).find(|&k| (lo..=hi).contains(&letters[k].column))
}

/// An R3 pattern found in a word: the three letter indices, and an order of
/// all indices, equal to the word up to B0, in which they are adjacent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct R3Site {
    pub(crate) indices: [usize; 3],
    pub(crate) order: Vec<usize>,
}

fn dependent(x: &BraidLetter, y: &BraidLetter) -> bool {
    x.column.abs_diff(y.column) <= 1
}

/// The pattern whose lowest letter is `start`. Its letters need not be
/// adjacent, but no other letter may lie between two of them in the
/// dependency order, so that B0 swaps can make them adjacent.
pub(crate) fn r3_pattern(
    letters: &[BraidLetter],
    strands: usize,
    start: usize,
    direction: R3Direction,
) -> Result<R3Site> {
    let outer = letters[start];
    let middle_col = outer.column as isize + direction.offset();
    if middle_col < 1 || middle_col as usize >= strands {
        return Err(Error::PatternNotFound(format!(
            "no column {middle_col} beside column {}",
            outer.column
        )));
    }
    let middle = BraidLetter::new(middle_col as usize, outer.sign);
    let second = (start + 1..letters.len())
        .find(|&k| letters[k].column == middle.column)
        .filter(|&k| letters[k] == middle)
        .ok_or_else(|| Error::PatternNotFound("R3 middle letter missing".into()))?;
    let third = (second + 1..letters.len())
        .find(|&k| letters[k].column == outer.column)
        .filter(|&k| letters[k] == outer)
        .ok_or_else(|| Error::PatternNotFound("R3 top letter missing".into()))?;

    // above[z]: start precedes z; below[z]: z precedes third
    let mut above = vec![false; letters.len()];
    above[start] = true;
    for z in start + 1..=third {
        above[z] = (start..z).any(|w| above[w] && dependent(&letters[w], &letters[z]));
    }
    let mut below = vec![false; letters.len()];
    below[third] = true;
    for z in (0..third).rev() {
        below[z] = (z + 1..=third).any(|w| below[w] && dependent(&letters[z], &letters[w]));
    }
    if let Some(z) = (start + 1..third).find(|&z| z != second && above[z] && below[z]) {
        return Err(Error::PatternNotFound(format!(
            "letter at height {} is caught inside the R3 pattern",
            z + 1
        )));
    }
    let indices = [start, second, third];
    let mut order: Vec<usize> = (0..third).filter(|&z| below[z] && !indices.contains(&z)).collect();
    order.extend(indices);
    let rest: Vec<usize> = (0..letters.len()).filter(|&z| !order.contains(&z)).collect();
    order.extend(rest);
    Ok(R3Site { indices, order })
}

fn check_height(height: usize, len: usize) -> Result<usize> {
    if height < 1 || height > len {
        return Err(Error::OutOfRange(format!("height {height} outside 1..={len}")));
    }
    Ok(height - 1)
}

pub fn apply_braid_move(d: &ClosedBraidDiagram, m: &BraidMoveSpec) -> Result<ClosedBraidDiagram> {
    let n = d.strands();
    let mut letters = d.letters().to_vec();
    let mut strands = n;
    match *m {
        BraidMoveSpec::R2Insert {
            column,
            height,
            upper_sign,
        } => {
            if column < 1 || column >= n {
                return Err(Error::OutOfRange(format!("column {column} outside 1..{}", n.saturating_sub(1).max(1))));
            }
            if height < 1 || height > letters.len() + 1 {
                return Err(Error::OutOfRange(format!(
                    "height {height} outside 1..={}",
                    letters.len() + 1
                )));
            }
            let at = height - 1;
            letters.insert(at, BraidLetter::new(column, upper_sign));
            letters.insert(at, BraidLetter::new(column, upper_sign.flip()));
        }
        BraidMoveSpec::R2Delete { height } => {
            let k = check_height(height, letters.len())?;
            let low = letters[k];
            let up = next_in_columns(&letters, k, low.column.saturating_sub(1), low.column + 1)
                .filter(|&j| letters[j].column == low.column && letters[j].sign == low.sign.flip())
                .ok_or_else(|| {
                    Error::PatternNotFound(format!("no canceling partner above height {height}"))
                })?;
            letters.remove(up);
            letters.remove(k);
        }
        BraidMoveSpec::Stabilize { sign } => {
            strands = n + 1;
            letters.insert(0, BraidLetter::new(n, sign));
        }
        BraidMoveSpec::Destabilize => {
            if n < 2 {
                return Err(Error::PatternNotFound("a single strand cannot destabilize".into()));
            }
            let last: Vec<usize> = (0..letters.len()).filter(|&k| letters[k].column == n - 1).collect();
            if last.len() != 1 {
                return Err(Error::PatternNotFound(format!(
                    "column {} has {} letters, need exactly one",
                    n - 1,
                    last.len()
                )));
            }
            letters.remove(last[0]);
            strands = n - 1;
        }
        BraidMoveSpec::ConjugateRotate => {
            if !letters.is_empty() {
                letters.rotate_left(1);
            }
        }
        BraidMoveSpec::R3 { height, direction } => {
            let k = check_height(height, letters.len())?;
            let site = r3_pattern(&letters, n, k, direction)?;
            let [a, b, c] = site.indices;
            let outer = letters[a].column;
            let middle = letters[b].column;
            letters[a].column = middle;
            letters[b].column = outer;
            letters[c].column = middle;
            letters = site.order.iter().map(|&z| letters[z]).collect();
        }
    }
    Ok(ClosedBraidDiagram::new(BraidWord::new(strands, letters)?))
}

/// Every applicable move of the delete/rewrite kinds plus conjugation and
/// both stabilizations. Insertions are unbounded in number and omitted.
pub fn applicable_moves(d: &ClosedBraidDiagram) -> Vec<BraidMoveSpec> {
    let mut out = vec![
        BraidMoveSpec::ConjugateRotate,
        BraidMoveSpec::Stabilize { sign: Sign::Positive },
        BraidMoveSpec::Stabilize { sign: Sign::Negative },
    ];
    if d.strands() >= 2 && d.letters().iter().filter(|l| l.column == d.strands() - 1).count() == 1 {
        out.push(BraidMoveSpec::Destabilize);
    }
    for h in 1..=d.crossings() {
        let spec = BraidMoveSpec::R2Delete { height: h };
        if apply_braid_move(d, &spec).is_ok() {
            out.push(spec);
        }
        for direction in [R3Direction::Left, R3Direction::Right] {
            if r3_pattern(d.letters(), d.strands(), h - 1, direction).is_ok() {
                out.push(BraidMoveSpec::R3 { height: h, direction });
            }
        }
    }
    out
}
