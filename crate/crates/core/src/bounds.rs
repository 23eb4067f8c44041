use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    Error,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
            Verdict::Error => "ERROR",
        })
    }
}

/// One evaluated inequality `lhs ≤ rhs` at a parameter point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundEntry {
    pub bound: String,
    #[serde(rename = "Q")]
    pub q: String,
    pub n: Option<u64>,
    pub m: Option<u64>,
    pub lhs: Option<i64>,
    pub rhs: Option<i64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundEntry {
    pub fn compare(bound: &str, q: &str, n: Option<u64>, m: Option<u64>, lhs: i64, rhs: i64) -> Self {
        BoundEntry {
            bound: bound.to_string(),
            q: q.to_string(),
            n,
            m,
            lhs: Some(lhs),
            rhs: Some(rhs),
            verdict: if lhs <= rhs { Verdict::Pass } else { Verdict::Fail },
            note: None,
        }
    }

    pub fn skipped(bound: &str, q: &str, reason: impl Into<String>) -> Self {
        BoundEntry {
            bound: bound.to_string(),
            q: q.to_string(),
            n: None,
            m: None,
            lhs: None,
            rhs: None,
            verdict: Verdict::Skipped,
            note: Some(reason.into()),
        }
    }

    pub fn error(bound: &str, q: &str, n: Option<u64>, m: Option<u64>, reason: impl Into<String>) -> Self {
        BoundEntry {
            bound: bound.to_string(),
            q: q.to_string(),
            n,
            m,
            lhs: None,
            rhs: None,
            verdict: Verdict::Error,
            note: Some(reason.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_sharp(&self) -> bool {
        self.verdict == Verdict::Pass && self.lhs.is_some() && self.lhs == self.rhs
    }
}

/// `C(n, k)`, zero outside `0 ≤ k ≤ n`.
pub fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i64 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// `(4 I)^((d-1)!)`, saturating at `i64::MAX`.
fn main_power(ia: i64, d: usize) -> i64 {
    let base = 4 * ia;
    if base <= 1 {
        return base;
    }
    let Some(exponent) = (1..d as u64).try_fold(1u64, |acc, k| acc.checked_mul(k)) else {
        return i64::MAX;
    };
    let mut acc: i64 = 1;
    for _ in 0..exponent {
        acc = match acc.checked_mul(base) {
            Some(v) => v,
            None => return i64::MAX,
        };
        if acc == 0 {
            break;
        }
    }
    acc
}

/// Right side of the regularity bound.
pub fn regularity_rhs(ia: i64, d: usize) -> i64 {
    if d <= 1 {
        (ia - 1).max(0)
    } else {
        main_power(ia, d).saturating_sub(ia + 1).max(0)
    }
}

/// Right side shared by the postulation and relation-type bounds.
pub fn postulation_rhs(ia: i64, d: usize) -> i64 {
    if d <= 1 {
        ia.max(1)
    } else {
        main_power(ia, d).saturating_sub(ia).max(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(3, 0), 1);
        assert_eq!(binom(-1, -1), 0);
        assert_eq!(binom(2, 3), 0);
    }

    #[test]
    fn right_sides() {
        for r in 1..7 {
            assert_eq!(regularity_rhs(r, 1), r - 1);
            assert_eq!(postulation_rhs(r, 1), r);
        }
        assert_eq!(regularity_rhs(0, 1), 0);
        assert_eq!(postulation_rhs(0, 1), 1);
        assert_eq!(regularity_rhs(1, 2), 2);
        assert_eq!(postulation_rhs(1, 2), 3);
        assert_eq!(regularity_rhs(0, 3), 0);
        assert_eq!(postulation_rhs(0, 2), 1);
        // (4*2)^(2!) - 2 - 1
        assert_eq!(regularity_rhs(2, 3), 61);
        assert_eq!(postulation_rhs(5, 30), i64::MAX - 5);
    }

    #[test]
    fn verdicts() {
        let e = BoundEntry::compare("Thm2.5", "(y)", None, None, 2, 2);
        assert_eq!(e.verdict, Verdict::Pass);
        assert!(e.is_sharp());
        let f = BoundEntry::compare("Thm2.5", "(y)", None, None, 3, 2);
        assert_eq!(f.verdict, Verdict::Fail);
        assert!(!f.is_sharp());
    }
}
