//! Sign vectors in `{-,0,+}^E` and their calculus.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sets::ElementSet;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn negate(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }

    pub fn from_char(c: char) -> Result<Sign> {
        match c {
            '-' => Ok(Sign::Negative),
            '0' => Ok(Sign::Zero),
            '+' => Ok(Sign::Positive),
            other => Err(Error::BadSign(other)),
        }
    }
}

/// An element of `{-,0,+}^E`, encoded as the pair of bitsets `(X⁺, X⁻)`.
///
/// Equality and hashing are structural on the two masks and the length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignVector {
    len: u8,
    plus: ElementSet,
    minus: ElementSet,
}

impl SignVector {
    pub fn new(len: usize, plus: ElementSet, minus: ElementSet) -> Result<Self> {
        if len > crate::MAX_GROUND {
            return Err(Error::GroundSetUnsupported(len));
        }
        let full = ElementSet::full(len);
        if !plus.is_disjoint(minus) || !plus.union(minus).is_subset(full) {
            return Err(Error::LengthMismatch {
                expected: len,
                found: plus.union(minus).iter().last().map_or(0, |i| i + 1),
            });
        }
        Ok(SignVector {
            len: len as u8,
            plus,
            minus,
        })
    }

    /// Constructor for callers that already guarantee disjointness.
    pub(crate) fn from_parts(len: usize, plus: ElementSet, minus: ElementSet) -> Self {
        debug_assert!(plus.is_disjoint(minus));
        debug_assert!(plus.union(minus).is_subset(ElementSet::full(len)));
        SignVector {
            len: len as u8,
            plus,
            minus,
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::from_parts(len, ElementSet::EMPTY, ElementSet::EMPTY)
    }

    /// The vector `0^zeros +^(E ∖ zeros)`.
    pub fn positive_off(len: usize, zeros: ElementSet) -> Self {
        Self::from_parts(len, ElementSet::full(len).difference(zeros), ElementSet::EMPTY)
    }

    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        if signs.len() > crate::MAX_GROUND {
            return Err(Error::GroundSetUnsupported(signs.len()));
        }
        let mut plus = ElementSet::EMPTY;
        let mut minus = ElementSet::EMPTY;
        for (i, s) in signs.iter().enumerate() {
            match s {
                Sign::Positive => plus.insert(i),
                Sign::Negative => minus.insert(i),
                Sign::Zero => {}
            }
        }
        SignVector::new(signs.len(), plus, minus)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn plus(&self) -> ElementSet {
        self.plus
    }

    pub fn minus(&self) -> ElementSet {
        self.minus
    }

    pub fn support(&self) -> ElementSet {
        self.plus.union(self.minus)
    }

    /// `X⁰`.
    pub fn zero_set(&self) -> ElementSet {
        ElementSet::full(self.len()).difference(self.support())
    }

    pub fn is_zero(&self) -> bool {
        self.support().is_empty()
    }

    pub fn get(&self, i: usize) -> Sign {
        if self.plus.contains(i) {
            Sign::Positive
        } else if self.minus.contains(i) {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn negate(&self) -> Self {
        Self::from_parts(self.len(), self.minus, self.plus)
    }

    /// `(X ∘ Y)_i = X_i` if `X_i ≠ 0`, else `Y_i`.
    pub fn compose(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len, other.len);
        let free = self.zero_set();
        Self::from_parts(
            self.len(),
            self.plus.union(other.plus.intersection(free)),
            self.minus.union(other.minus.intersection(free)),
        )
    }

    /// Containment order: `X ≤ Y` iff `X⁺ ⊆ Y⁺` and `X⁻ ⊆ Y⁻`.
    pub fn conforms_to(&self, other: &Self) -> bool {
        self.plus.is_subset(other.plus) && self.minus.is_subset(other.minus)
    }

    /// Separation set `S(X,Y) = {i : X_i = -Y_i ≠ 0}`.
    pub fn separation(&self, other: &Self) -> ElementSet {
        self.plus
            .intersection(other.minus)
            .union(self.minus.intersection(other.plus))
    }

    /// Negates the coordinates in `flip`.
    pub fn reorient(&self, flip: ElementSet) -> Self {
        let keep_plus = self.plus.difference(flip);
        let keep_minus = self.minus.difference(flip);
        Self::from_parts(
            self.len(),
            keep_plus.union(self.minus.intersection(flip)),
            keep_minus.union(self.plus.intersection(flip)),
        )
    }

    /// Coordinate projection `π_within`, renumbered to length `|within|`.
    pub fn restrict(&self, within: ElementSet) -> Self {
        Self::from_parts(
            within.len(),
            self.plus.intersection(within).compress(within),
            self.minus.intersection(within).compress(within),
        )
    }

    /// Inverse of [`restrict`](Self::restrict): embeds into length `len`,
    /// zero outside `within`.
    pub fn extend(&self, within: ElementSet, len: usize) -> Self {
        Self::from_parts(len, self.plus.expand(within), self.minus.expand(within))
    }

    /// Keeps the coordinates in `within` and zeroes the rest, without
    /// renumbering.
    pub fn mask(&self, within: ElementSet) -> Self {
        Self::from_parts(
            self.len(),
            self.plus.intersection(within),
            self.minus.intersection(within),
        )
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    /// Parses strings such as `+0--`; surrounding whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let signs = s
            .trim()
            .chars()
            .map(Sign::from_char)
            .collect::<Result<Vec<_>>>()?;
        SignVector::from_signs(&signs)
    }
}

impl Serialize for SignVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
