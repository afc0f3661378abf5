use std::fmt;

use super::Verdict;

/// An integer known up to bounds; `None` is unbounded on that side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Range {
    pub lo: Option<i64>,
    pub hi: Option<i64>,
}

impl Range {
    pub fn exact(n: i64) -> Self {
        Range { lo: Some(n), hi: Some(n) }
    }

    pub fn at_least(n: i64) -> Self {
        Range { lo: Some(n), hi: None }
    }

    pub fn between(a: i64, b: i64) -> Self {
        Range { lo: Some(a), hi: Some(b) }
    }

    pub fn unknown() -> Self {
        Range { lo: None, hi: None }
    }

    pub fn value(&self) -> Option<i64> {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => Some(a),
            _ => None,
        }
    }

    pub fn add(self, o: Range) -> Range {
        Range {
            lo: self.lo.zip(o.lo).map(|(a, b)| a + b),
            hi: self.hi.zip(o.hi).map(|(a, b)| a + b),
        }
    }

    pub fn sub(self, o: Range) -> Range {
        Range {
            lo: self.lo.zip(o.hi).map(|(a, b)| a - b),
            hi: self.hi.zip(o.lo).map(|(a, b)| a - b),
        }
    }

    pub fn max(self, o: Range) -> Range {
        Range {
            lo: match (self.lo, o.lo) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (x, y) => x.or(y),
            },
            hi: self.hi.zip(o.hi).map(|(a, b)| a.max(b)),
        }
    }

    /// `self <= o`, decided only when the bounds force it.
    pub fn le(self, o: Range) -> Verdict {
        if let (Some(a), Some(b)) = (self.hi, o.lo) {
            if a <= b {
                return Verdict::Pass;
            }
        }
        if let (Some(a), Some(b)) = (self.lo, o.hi) {
            if a > b {
                return Verdict::Fail;
            }
        }
        Verdict::NotApplicable
    }

    pub fn eq(self, o: Range) -> Verdict {
        match (self.value(), o.value()) {
            (Some(a), Some(b)) => Verdict::from_bool(a == b),
            _ => {
                if self.le(o) == Verdict::Fail || o.le(self) == Verdict::Fail {
                    Verdict::Fail
                } else {
                    Verdict::NotApplicable
                }
            }
        }
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lo, self.hi) {
            (Some(a), Some(b)) if a == b => write!(f, "{a}"),
            (Some(a), Some(b)) => write!(f, "[{a},{b}]"),
            (Some(a), None) => write!(f, ">={a}"),
            (None, Some(b)) => write!(f, "<={b}"),
            (None, None) => write!(f, "?"),
        }
    }
}
