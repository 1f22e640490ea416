//! Face-sequence types: the cyclic word of face sizes read around a vertex.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceSeqError {
    #[error("face-sequence needs at least 3 entries, got {0}")]
    TooShort(usize),
    #[error("face size {0} is below 3")]
    SizeTooSmall(usize),
    #[error("cannot parse face-sequence entry {0:?}")]
    Parse(String),
}

/// A face-sequence type in normalized form.
///
/// The stored representative is the lexicographically least word among all
/// rotations and reflections, so `==` is equality of rotation/reflection
/// classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct FaceSeqType {
    sizes: Vec<usize>,
}

impl FaceSeqType {
    pub fn new(sizes: &[usize]) -> Result<Self, FaceSeqError> {
        if sizes.len() < 3 {
            return Err(FaceSeqError::TooShort(sizes.len()));
        }
        if let Some(&s) = sizes.iter().find(|&&s| s < 3) {
            return Err(FaceSeqError::SizeTooSmall(s));
        }
        Ok(Self { sizes: least_rotation_or_reflection(sizes) })
    }

    /// The eight types that can occur on a surface of Euler characteristic 0
    /// without being equivelar.
    pub fn flat_semi_equivelar_types() -> Vec<FaceSeqType> {
        [
            &[3, 3, 3, 4, 4][..],
            &[3, 3, 4, 3, 4],
            &[3, 4, 6, 4],
            &[4, 8, 8],
            &[3, 3, 3, 3, 6],
            &[3, 6, 3, 6],
            &[3, 12, 12],
            &[4, 6, 12],
        ]
        .iter()
        .map(|s| FaceSeqType::new(s).expect("static type"))
        .collect()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// Number of occurrences of face size `p` in the word.
    pub fn multiplicity(&self, p: usize) -> usize {
        self.sizes.iter().filter(|&&s| s == p).count()
    }

    /// Distinct face sizes, ascending.
    pub fn distinct_sizes(&self) -> Vec<usize> {
        let mut v = self.sizes.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// True if `word`, read cyclically, is in this type's class.
    pub fn matches(&self, word: &[usize]) -> bool {
        word.len() == self.sizes.len() && least_rotation_or_reflection(word) == self.sizes
    }

    /// Dash-separated form used in file names, e.g. `3-3-3-4-4`.
    pub fn dashed(&self) -> String {
        join(&self.sizes, "-")
    }

    /// Comma-separated form used on the command line, e.g. `3,3,3,4,4`.
    pub fn comma(&self) -> String {
        join(&self.sizes, ",")
    }

    /// Power notation, e.g. `(3^3,4^2)`; runs are merged in stored order.
    pub fn power_notation(&self) -> String {
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.sizes.len() {
            let mut j = i;
            while j < self.sizes.len() && self.sizes[j] == self.sizes[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(self.sizes[i].to_string());
            } else {
                parts.push(format!("{}^{}", self.sizes[i], j - i));
            }
            i = j;
        }
        format!("({})", parts.join(","))
    }
}

fn join(v: &[usize], sep: &str) -> String {
    v.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(sep)
}

impl fmt::Display for FaceSeqType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.comma())
    }
}

impl FromStr for FaceSeqType {
    type Err = FaceSeqError;

    /// Accepts `3,3,3,4,4`, `3-3-3-4-4` or `(3,3,3,4,4)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let sizes = s
            .split([',', '-'])
            .map(|p| p.trim().parse::<usize>().map_err(|_| FaceSeqError::Parse(p.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        FaceSeqType::new(&sizes)
    }
}

impl TryFrom<Vec<usize>> for FaceSeqType {
    type Error = FaceSeqError;
    fn try_from(v: Vec<usize>) -> Result<Self, Self::Error> {
        FaceSeqType::new(&v)
    }
}

impl From<FaceSeqType> for Vec<usize> {
    fn from(t: FaceSeqType) -> Self {
        t.sizes
    }
}

/// Lexicographically least rotation or reflection of a cyclic word.
pub fn least_rotation_or_reflection<T: Ord + Clone>(word: &[T]) -> Vec<T> {
    let n = word.len();
    let mut best: Option<Vec<T>> = None;
    let rev: Vec<T> = word.iter().rev().cloned().collect();
    for w in [word, &rev[..]] {
        for s in 0..n {
            let cand: Vec<T> = w[s..].iter().chain(w[..s].iter()).cloned().collect();
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}
