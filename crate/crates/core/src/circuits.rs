//! Leveled, alternating AND/OR circuits with negations only on inputs.
//!
//! Text format, one item per line (blank lines and `#` comments ignored):
//!
//! ```text
//! circuit n=3
//! level 1 AND
//! g1.1 = x1, x2
//! g1.2 = x1, x3
//! g1.3 = x2, x3
//! level 2 OR
//! g2.1 = g1.1, g1.2, g1.3
//! ```
//!
//! Level-1 operands are literals `x<i>` or `~x<i>`; level-`t` operands are
//! gates `g<t-1>.<j>`. Gates are numbered from 1 in declaration order.
//! Operands may be separated by commas, whitespace, or both. Gate values are
//! computed over `{0,1}` with `a_i` as the value of `x_i`, and the output bit
//! `b` becomes `f = (-1)^b`.

use std::fmt;

use crate::error::{Error, Result};
use crate::truth_table::TruthTable;

pub const MAX_CIRCUIT_VARS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GateKind {
    And,
    Or,
}

impl GateKind {
    fn name(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
        }
    }

    fn other(self) -> GateKind {
        match self {
            GateKind::And => GateKind::Or,
            GateKind::Or => GateKind::And,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operand {
    /// 1-based input variable, possibly negated.
    Literal { var: usize, negated: bool },
    /// 0-based gate index in the previous level.
    Gate(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub kind: GateKind,
    pub gates: Vec<Vec<Operand>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    n: usize,
    levels: Vec<Level>,
}

impl Circuit {
    /// Validate and build.
    pub fn new(n: usize, levels: Vec<Level>) -> Result<Self> {
        if n == 0 || n > MAX_CIRCUIT_VARS {
            return Err(Error::VarCount(n));
        }
        if levels.is_empty() {
            return Err(Error::Circuit("circuit has no levels".into()));
        }
        for (t, level) in levels.iter().enumerate() {
            if level.gates.is_empty() {
                return Err(Error::Circuit(format!("level {} has no gates", t + 1)));
            }
            if t > 0 && levels[t - 1].kind == level.kind {
                return Err(Error::Circuit(format!(
                    "levels {} and {} are both {}",
                    t,
                    t + 1,
                    level.kind.name()
                )));
            }
            for (j, gate) in level.gates.iter().enumerate() {
                if gate.is_empty() {
                    return Err(Error::Circuit(format!("gate g{}.{} has no inputs", t + 1, j + 1)));
                }
                for op in gate {
                    let ok = match *op {
                        Operand::Literal { var, .. } => t == 0 && (1..=n).contains(&var),
                        Operand::Gate(k) => t > 0 && k < levels[t - 1].gates.len(),
                    };
                    if !ok {
                        return Err(Error::Circuit(format!(
                            "gate g{}.{} has invalid operand {op:?}",
                            t + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        let top = levels.last().expect("nonempty").gates.len();
        if top != 1 {
            return Err(Error::Circuit(format!(
                "last level has {top} gates; exactly one output gate is required"
            )));
        }
        Ok(Circuit { n, levels })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Number of gates.
    pub fn size(&self) -> usize {
        self.levels.iter().map(|l| l.gates.len()).sum()
    }

    /// Truth table of the output gate, in `O(size · 2^n / 64)` word operations.
    pub fn evaluate(&self) -> TruthTable {
        let n = self.n;
        let words = if n <= 6 { 1 } else { 1 << (n - 6) };
        let live = if n >= 6 { u64::MAX } else { (1u64 << (1 << n)) - 1 };
        let inputs: Vec<Vec<u64>> = (1..=n)
            .map(|i| TruthTable::dictator(n, i).expect("valid").words().to_vec())
            .collect();
        let mut prev: Vec<Vec<u64>> = Vec::new();
        for level in &self.levels {
            let current: Vec<Vec<u64>> = level
                .gates
                .iter()
                .map(|gate| {
                    let mut acc = match level.kind {
                        GateKind::And => vec![live; words],
                        GateKind::Or => vec![0; words],
                    };
                    for op in gate {
                        let src: Vec<u64> = match *op {
                            Operand::Literal { var, negated } => inputs[var - 1]
                                .iter()
                                .map(|w| if negated { !w & live } else { *w })
                                .collect(),
                            Operand::Gate(k) => prev[k].clone(),
                        };
                        for (a, s) in acc.iter_mut().zip(&src) {
                            match level.kind {
                                GateKind::And => *a &= s,
                                GateKind::Or => *a |= s,
                            }
                        }
                    }
                    acc
                })
                .collect();
            prev = current;
        }
        TruthTable::from_words(n, prev.swap_remove(0)).expect("masked to live bits")
    }

    /// OR of one minterm AND per input with `b = 1`. The all-zero table gets
    /// the single contradictory term `x1 ∧ ¬x1`.
    pub fn canonical_dnf(tt: &TruthTable) -> Result<Circuit> {
        let n = tt.n();
        let minterm = |j: usize| -> Vec<Operand> {
            (1..=n)
                .map(|i| Operand::Literal {
                    var: i,
                    negated: (j >> (i - 1)) & 1 == 0,
                })
                .collect()
        };
        let mut terms: Vec<Vec<Operand>> = (0..tt.len()).filter(|&j| tt.bit(j)).map(minterm).collect();
        if terms.is_empty() {
            terms.push(vec![
                Operand::Literal { var: 1, negated: false },
                Operand::Literal { var: 1, negated: true },
            ]);
        }
        let top = vec![(0..terms.len()).map(Operand::Gate).collect()];
        Circuit::new(
            n,
            vec![
                Level {
                    kind: GateKind::And,
                    gates: terms,
                },
                Level {
                    kind: GateKind::Or,
                    gates: top,
                },
            ],
        )
    }

    /// Read-once alternating formula: level 1 is AND over blocks of `fanin`
    /// positive literals, then levels alternate with fan-in `fanin`.
    /// `n = fanin^depth`.
    pub fn read_once_alternating(depth: usize, fanin: usize) -> Result<Circuit> {
        if depth == 0 || fanin == 0 {
            return Err(Error::Circuit("depth and fan-in must be positive".into()));
        }
        let n = fanin.checked_pow(depth as u32).unwrap_or(usize::MAX);
        if n > MAX_CIRCUIT_VARS {
            return Err(Error::VarCount(n));
        }
        let mut levels = Vec::with_capacity(depth);
        let mut kind = GateKind::And;
        let mut count = n / fanin;
        levels.push(Level {
            kind,
            gates: (0..count)
                .map(|g| {
                    (0..fanin)
                        .map(|k| Operand::Literal {
                            var: g * fanin + k + 1,
                            negated: false,
                        })
                        .collect()
                })
                .collect(),
        });
        for _ in 1..depth {
            kind = kind.other();
            count /= fanin;
            levels.push(Level {
                kind,
                gates: (0..count)
                    .map(|g| (0..fanin).map(|k| Operand::Gate(g * fanin + k)).collect())
                    .collect(),
            });
        }
        Circuit::new(n, levels)
    }

    /// Tribes: OR of `count` disjoint ANDs of width `width`.
    pub fn tribes(width: usize, count: usize) -> Result<Circuit> {
        let n = width * count;
        if width == 0 || count == 0 || n > MAX_CIRCUIT_VARS {
            return Err(Error::VarCount(n));
        }
        let ands = (0..count)
            .map(|g| {
                (0..width)
                    .map(|k| Operand::Literal {
                        var: g * width + k + 1,
                        negated: false,
                    })
                    .collect()
            })
            .collect();
        Circuit::new(
            n,
            vec![
                Level {
                    kind: GateKind::And,
                    gates: ands,
                },
                Level {
                    kind: GateKind::Or,
                    gates: vec![(0..count).map(Operand::Gate).collect()],
                },
            ],
        )
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "circuit n={}", self.n)?;
        for (t, level) in self.levels.iter().enumerate() {
            writeln!(f, "level {} {}", t + 1, level.kind.name())?;
            for (j, gate) in level.gates.iter().enumerate() {
                let ops: Vec<String> = gate
                    .iter()
                    .map(|op| match *op {
                        Operand::Literal { var, negated: false } => format!("x{var}"),
                        Operand::Literal { var, negated: true } => format!("~x{var}"),
                        Operand::Gate(k) => format!("g{}.{}", t, k + 1),
                    })
                    .collect();
                writeln!(f, "g{}.{} = {}", t + 1, j + 1, ops.join(", "))?;
            }
        }
        Ok(())
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Split into (1-based column, token) pairs on whitespace and commas.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        let sep = c.is_whitespace() || c == ',';
        match (sep, start) {
            (true, Some(s)) => {
                out.push((s + 1, &text[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &text[s..]));
    }
    out
}

fn parse_index(tok: &str) -> Option<usize> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) || tok.starts_with('0') {
        return None;
    }
    tok.parse().ok()
}

pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut n: Option<usize> = None;
    let mut levels: Vec<Level> = Vec::new();
    let mut level_lines: Vec<usize> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        let Some(&(col0, first)) = toks.first() else { continue };

        if n.is_none() {
            if first != "circuit" {
                return Err(parse_err(line_no, col0, "expected header `circuit n=<int>`"));
            }
            let &(col, arg) = toks
                .get(1)
                .ok_or_else(|| parse_err(line_no, col0 + first.len(), "missing `n=<int>`"))?;
            let value = arg
                .strip_prefix("n=")
                .and_then(parse_index)
                .ok_or_else(|| parse_err(line_no, col, format!("expected `n=<int>`, found `{arg}`")))?;
            if value > MAX_CIRCUIT_VARS {
                return Err(parse_err(line_no, col, format!("n={value} exceeds {MAX_CIRCUIT_VARS}")));
            }
            if let Some(&(c, extra)) = toks.get(2) {
                return Err(parse_err(line_no, c, format!("unexpected `{extra}`")));
            }
            n = Some(value);
            continue;
        }
        let n = n.expect("header seen");

        if first == "level" {
            let expect = levels.len() + 1;
            let &(c1, t) = toks
                .get(1)
                .ok_or_else(|| parse_err(line_no, col0 + 5, "missing level number"))?;
            if parse_index(t) != Some(expect) {
                return Err(parse_err(line_no, c1, format!("expected level {expect}, found `{t}`")));
            }
            let &(c2, kind) = toks
                .get(2)
                .ok_or_else(|| parse_err(line_no, c1 + t.len(), "missing gate type AND|OR"))?;
            let kind = match kind {
                "AND" => GateKind::And,
                "OR" => GateKind::Or,
                other => return Err(parse_err(line_no, c2, format!("unknown gate type `{other}`"))),
            };
            if let Some(prev) = levels.last() {
                if prev.kind == kind {
                    return Err(parse_err(
                        line_no,
                        c2,
                        format!("alternation violated: level {} repeats {}", expect, kind.name()),
                    ));
                }
                if prev.gates.is_empty() {
                    return Err(parse_err(line_no, col0, format!("level {} has no gates", expect - 1)));
                }
            }
            if let Some(&(c, extra)) = toks.get(3) {
                return Err(parse_err(line_no, c, format!("unexpected `{extra}`")));
            }
            levels.push(Level { kind, gates: Vec::new() });
            level_lines.push(line_no);
            continue;
        }

        let t = levels.len();
        if t == 0 {
            return Err(parse_err(line_no, col0, "gate before any `level` line"));
        }
        let expect_name = format!("g{}.{}", t, levels[t - 1].gates.len() + 1);
        if first != expect_name {
            return Err(parse_err(line_no, col0, format!("expected gate `{expect_name}`, found `{first}`")));
        }
        match toks.get(1) {
            Some(&(_, "=")) => {}
            Some(&(c, other)) => return Err(parse_err(line_no, c, format!("expected `=`, found `{other}`"))),
            None => return Err(parse_err(line_no, col0 + first.len(), "expected `=`")),
        }
        if toks.len() < 3 {
            return Err(parse_err(line_no, raw.len() + 1, "gate has no operands"));
        }
        let mut ops = Vec::with_capacity(toks.len() - 2);
        for &(c, tok) in &toks[2..] {
            let op = if t == 1 {
                let (negated, rest) = match tok.strip_prefix('~') {
                    Some(r) => (true, r),
                    None => (false, tok),
                };
                let var = rest
                    .strip_prefix('x')
                    .and_then(parse_index)
                    .ok_or_else(|| parse_err(line_no, c, format!("expected literal x<i> or ~x<i>, found `{tok}`")))?;
                if var > n {
                    return Err(parse_err(line_no, c, format!("dangling reference: x{var} with n={n}")));
                }
                Operand::Literal { var, negated }
            } else {
                let (lvl, idx) = tok
                    .strip_prefix('g')
                    .and_then(|r| r.split_once('.'))
                    .and_then(|(a, b)| Some((parse_index(a)?, parse_index(b)?)))
                    .ok_or_else(|| parse_err(line_no, c, format!("expected gate reference g<t>.<j>, found `{tok}`")))?;
                if lvl != t - 1 {
                    return Err(parse_err(
                        line_no,
                        c,
                        format!("level {t} gates may only read level {}, found `{tok}`", t - 1),
                    ));
                }
                if idx > levels[t - 2].gates.len() {
                    return Err(parse_err(line_no, c, format!("dangling reference: `{tok}` is not declared")));
                }
                Operand::Gate(idx - 1)
            };
            ops.push(op);
        }
        levels[t - 1].gates.push(ops);
    }

    let n = n.ok_or_else(|| parse_err(1, 1, "missing header `circuit n=<int>`"))?;
    if let Some(last) = levels.last() {
        if last.gates.len() > 1 {
            let line = *level_lines.last().expect("parallel");
            return Err(parse_err(
                line,
                1,
                format!("multiple output gates: last level declares {}", last.gates.len()),
            ));
        }
    }
    Circuit::new(n, levels)
}
