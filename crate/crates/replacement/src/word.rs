//! Edge words, gluing vertices and the gluing relation on eventually
//! periodic symbol sequences.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::system::ReplacementSystem;
use crate::ReplacementError;

/// The name of an edge of a graph expansion: a base edge followed by
/// replacement-graph edge names.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeWord(pub Vec<String>);

impl EdgeWord {
    pub fn new<S: Into<String>>(symbols: impl IntoIterator<Item = S>) -> Self {
        EdgeWord(symbols.into_iter().map(Into::into).collect())
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, symbol: &str) -> Self {
        let mut v = self.0.clone();
        v.push(symbol.to_string());
        EdgeWord(v)
    }

    pub fn prefix(&self, k: usize) -> Self {
        EdgeWord(self.0[..k.min(self.0.len())].to_vec())
    }

    pub fn is_prefix_of(&self, other: &EdgeWord) -> bool {
        other.0.starts_with(&self.0)
    }
}

impl fmt::Display for EdgeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(s)?;
        }
        Ok(())
    }
}

/// A vertex of some graph expansion, identified by the edge whose expansion
/// created it (empty for base vertices) and its index in the graph copied
/// in. The identity survives every further expansion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GluingVertex {
    pub word: EdgeWord,
    pub local: usize,
}

impl GluingVertex {
    pub fn base(local: usize) -> Self {
        GluingVertex {
            word: EdgeWord::default(),
            local,
        }
    }
}

impl fmt::Display for GluingVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "v{}", self.local)
        } else {
            write!(f, "{}.v{}", self.word, self.local)
        }
    }
}

/// An eventually periodic symbol sequence `prefix · period^∞`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InfiniteWord {
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

impl InfiniteWord {
    pub fn new<S: Into<String>>(
        prefix: impl IntoIterator<Item = S>,
        period: impl IntoIterator<Item = S>,
    ) -> Result<Self, ReplacementError> {
        let w = InfiniteWord {
            prefix: prefix.into_iter().map(Into::into).collect(),
            period: period.into_iter().map(Into::into).collect(),
        };
        if w.period.is_empty() {
            return Err(ReplacementError::InvalidWord("empty period".into()));
        }
        Ok(w)
    }

    pub fn symbol(&self, k: usize) -> &str {
        if k < self.prefix.len() {
            &self.prefix[k]
        } else {
            &self.period[(k - self.prefix.len()) % self.period.len()]
        }
    }

    /// The first `k` symbols as an edge word.
    pub fn truncate(&self, k: usize) -> EdgeWord {
        EdgeWord((0..k).map(|i| self.symbol(i).to_string()).collect())
    }

    /// Position within the periodic part, once past the prefix.
    fn phase(&self, k: usize) -> Option<usize> {
        (k >= self.prefix.len()).then(|| (k - self.prefix.len()) % self.period.len())
    }

    /// Checks that every prefix is an edge of some expansion. Validity of
    /// the next symbol depends only on the current color and phase, so
    /// finitely many symbols suffice.
    pub fn validate(&self, sys: &ReplacementSystem) -> Result<(), ReplacementError> {
        let n = self.prefix.len() + self.period.len() * (sys.colors.len() + 1);
        sys.endpoints(&self.truncate(n)).map(|_| ())
    }
}

/// The endpoints and color of the current prefix, advanced symbol by symbol.
struct Walker<'a> {
    sys: &'a ReplacementSystem,
    word: EdgeWord,
    from: GluingVertex,
    to: GluingVertex,
    color: String,
}

impl<'a> Walker<'a> {
    fn start(sys: &'a ReplacementSystem, first: &str) -> Result<Self, ReplacementError> {
        let word = EdgeWord::new([first]);
        let (from, to, color) = sys.endpoints(&word)?;
        Ok(Walker {
            sys,
            word,
            from,
            to,
            color,
        })
    }

    fn step(&mut self, symbol: &str) -> Result<(), ReplacementError> {
        let (from, to, color) = self
            .sys
            .step_endpoints(&self.word, &self.from, &self.to, &self.color, symbol)?;
        self.word = self.word.child(symbol);
        self.from = from;
        self.to = to;
        self.color = color;
        Ok(())
    }

    fn incident(&self, other: &Walker) -> bool {
        self.word == other.word
            || [&self.from, &self.to]
                .iter()
                .any(|v| **v == other.from || **v == other.to)
    }
}

/// Whether the length-`k` prefixes of `x` and `y` are incident (or equal)
/// for every `k ≤ depth`.
pub fn are_glued(
    sys: &ReplacementSystem,
    x: &InfiniteWord,
    y: &InfiniteWord,
    depth: usize,
) -> Result<bool, ReplacementError> {
    x.validate(sys)?;
    y.validate(sys)?;
    if depth == 0 {
        return Ok(true);
    }
    let mut wx = Walker::start(sys, x.symbol(0))?;
    let mut wy = Walker::start(sys, y.symbol(0))?;
    for k in 1..=depth {
        if k > 1 {
            wx.step(x.symbol(k - 1))?;
            wy.step(y.symbol(k - 1))?;
        }
        if !wx.incident(&wy) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Where an endpoint of the next prefix comes from.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Source {
    /// The initial (0) or terminal (1) endpoint of the current prefix.
    Old(usize),
    /// A vertex created by expanding the current prefix.
    Fresh(usize),
}

/// The gluing relation decided exactly. Incidence of prefixes can only be
/// lost, never regained, so `x ∼ y` iff all prefixes are incident; the
/// pair evolves through finitely many abstract states, so the sequence is
/// eventually periodic and the check terminates.
pub fn glued(sys: &ReplacementSystem, x: &InfiniteWord, y: &InfiniteWord) -> Result<bool, ReplacementError> {
    x.validate(sys)?;
    y.validate(sys)?;
    let first = |w: &InfiniteWord| -> Result<(String, [GluingVertex; 2]), ReplacementError> {
        let (a, b, c) = sys.endpoints(&w.truncate(1))?;
        Ok((c, [a, b]))
    };
    let (mut cx, ex) = first(x)?;
    let (mut cy, ey) = first(y)?;
    let mut eq = x.symbol(0) == y.symbol(0);
    let mut rel = [[false; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            rel[i][j] = ex[i] == ey[j];
        }
    }
    type State = (bool, [[bool; 2]; 2], String, String, usize, usize);
    let mut seen: BTreeMap<State, usize> = BTreeMap::new();
    let mut k = 1;
    loop {
        if !(eq || rel.iter().flatten().any(|&b| b)) {
            return Ok(false);
        }
        if let (Some(px), Some(py)) = (x.phase(k), y.phase(k)) {
            let state = (eq, rel, cx.clone(), cy.clone(), px, py);
            if seen.insert(state, k).is_some() {
                return Ok(true);
            }
        }
        let (a, b) = (x.symbol(k), y.symbol(k));
        let source = |color: &str, sym: &str| -> Result<([Source; 2], String), ReplacementError> {
            let r = sys.replacement(color)?;
            let e = r
                .graph
                .edges
                .iter()
                .find(|e| e.name == sym)
                .ok_or_else(|| ReplacementError::InvalidWord(format!("{sym} after color {color}")))?;
            let src = |v: usize| {
                if v == r.iota {
                    Source::Old(0)
                } else if v == r.tau {
                    Source::Old(1)
                } else {
                    Source::Fresh(v)
                }
            };
            Ok(([src(e.from), src(e.to)], e.color.clone()))
        };
        let (sx, ncx) = source(&cx, a)?;
        let (sy, ncy) = source(&cy, b)?;
        let mut next = [[false; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                next[i][j] = match (sx[i], sy[j]) {
                    (Source::Old(p), Source::Old(q)) => rel[p][q],
                    (Source::Fresh(p), Source::Fresh(q)) => eq && p == q,
                    _ => false,
                };
            }
        }
        eq = eq && a == b;
        rel = next;
        cx = ncx;
        cy = ncy;
        k += 1;
    }
}
