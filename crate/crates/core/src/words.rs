//! Reduced words in a free group of finite rank.
//!
//! Generators are indexed from zero; in text they are written `a`, `b`, ...
//! and their inverses `A`, `B`, .... The identity is written `1` (or the
//! empty string).
//!
//! ShortLex compares words first by length and then lexicographically under
//! the letter order `a < A < b < B < ...`. The same order indexes the
//! transition slots of coset graphs, so a breadth-first search that expands
//! slots in increasing order discovers vertices in ShortLex order of their
//! least labels.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{invalid, Error, Result};

/// Largest rank that has a text representation.
pub const MAX_TEXT_RANK: usize = 26;

/// A generator or its inverse.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        let k = generator as i32 + 1;
        Letter(if inverse { -k } else { k })
    }

    /// `+k` is the `k`-th generator (one-based), `-k` its inverse.
    pub fn from_signed(k: i32) -> Option<Self> {
        (k != 0).then_some(Letter(k))
    }

    pub fn signed(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position in the letter order `a < A < b < B < ...`.
    pub fn slot(self) -> usize {
        2 * self.generator() + usize::from(self.is_inverse())
    }

    pub fn from_slot(slot: usize) -> Self {
        Letter::new(slot / 2, slot % 2 == 1)
    }

    /// The positive letter of the edge this letter traverses.
    pub fn positive(self) -> Self {
        Letter(self.0.abs())
    }

    pub fn from_char(c: char) -> Option<Self> {
        if c.is_ascii_lowercase() {
            Some(Letter::new((c as u8 - b'a') as usize, false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new((c as u8 - b'A') as usize, true))
        } else {
            None
        }
    }

    pub fn to_char(self) -> char {
        let g = self.generator();
        if g >= MAX_TEXT_RANK {
            return '?';
        }
        let base = if self.is_inverse() { b'A' } else { b'a' };
        (base + g as u8) as char
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generator() < MAX_TEXT_RANK {
            write!(f, "{}", self.to_char())
        } else {
            write!(f, "x{}", self.0)
        }
    }
}

/// The generating set of a free group of rank `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return invalid("alphabet rank must be at least 1");
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Number of signed letters, `2n`.
    pub fn slots(self) -> usize {
        2 * self.rank
    }

    /// Signed letters in ShortLex order.
    pub fn letters(self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.slots()).map(Letter::from_slot)
    }

    pub fn contains(self, x: Letter) -> bool {
        x.generator() < self.rank
    }
}

/// A freely reduced word.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    rank: usize,
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// Freely reduces a raw sequence of letters.
    pub fn reduce(alphabet: Alphabet, raw: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for x in raw {
            if !alphabet.contains(x) {
                return invalid(format!("letter {x} outside alphabet of rank {}", alphabet.rank));
            }
            match letters.last() {
                Some(&y) if y == x.inverse() => {
                    letters.pop();
                }
                _ => letters.push(x),
            }
        }
        Ok(Word { rank: alphabet.rank, letters })
    }

    /// Reduces a sequence of signed one-based generator indices.
    pub fn from_signed(alphabet: Alphabet, raw: &[i32]) -> Result<Self> {
        let letters = raw.iter().map(|&k| Letter::from_signed(k).ok_or_else(|| Error::InvalidInput("index 0".into()))).collect::<Result<Vec<_>>>()?;
        Word::reduce(alphabet, letters)
    }

    /// Parses the text form: lowercase generators, uppercase inverses, `1`
    /// or the empty string for the identity. The result is reduced.
    pub fn parse(rank: usize, text: &str) -> Result<Self> {
        let alphabet = Alphabet::new(rank)?;
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::identity(rank));
        }
        let letters = text
            .chars()
            .map(|c| Letter::from_char(c).ok_or_else(|| Error::InvalidInput(format!("bad letter {c:?} in {text:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::reduce(alphabet, letters)
    }

    /// Parses a comma-separated list of words. Empty entries are skipped.
    pub fn parse_list(rank: usize, text: &str) -> Result<Vec<Self>> {
        text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|s| Word::parse(rank, s)).collect()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet { rank: self.rank }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::AlphabetMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    /// Reduced product `self · other`.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        Ok(self.mul(other))
    }

    /// Reduced product, assuming equal ranks.
    pub(crate) fn mul(&self, other: &Word) -> Word {
        debug_assert_eq!(self.rank, other.rank);
        let mut cancel = 0;
        let (u, v) = (&self.letters, &other.letters);
        while cancel < u.len() && cancel < v.len() && u[u.len() - 1 - cancel] == v[cancel].inverse() {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(u.len() + v.len() - 2 * cancel);
        letters.extend_from_slice(&u[..u.len() - cancel]);
        letters.extend_from_slice(&v[cancel..]);
        Word { rank: self.rank, letters }
    }

    pub fn invert(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|x| x.inverse()).collect() }
    }

    /// Appends one letter, cancelling if it inverts the last one.
    pub fn push(&mut self, x: Letter) {
        if self.letters.last() == Some(&x.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(x);
        }
    }

    pub fn prefix(&self, len: usize) -> Word {
        Word { rank: self.rank, letters: self.letters[..len].to_vec() }
    }

    pub fn suffix_from(&self, start: usize) -> Word {
        Word { rank: self.rank, letters: self.letters[start..].to_vec() }
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.letters.starts_with(&self.letters)
    }

    /// Strips conjugating letters: returns `(c, r)` with `self = c·r·c⁻¹`
    /// and `r` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inverse() {
            k += 1;
        }
        (self.prefix(k), Word { rank: self.rank, letters: l[k..l.len() - k].to_vec() })
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.letters.len().cmp(&other.letters.len()).then_with(|| {
            let a = self.letters.iter().map(|x| x.slot());
            let b = other.letters.iter().map(|x| x.slot());
            a.cmp(b)
        })
    }

    /// Strict ShortLex comparison; errors on mismatched alphabets.
    pub fn shortlex_less(&self, other: &Word) -> Result<bool> {
        self.check_rank(other)?;
        Ok(self.shortlex_cmp(other) == Ordering::Less)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// ShortLex, with the rank as a final tie-breaker so that `Ord` is total.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other).then(self.rank.cmp(&other.rank))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("1");
        }
        for x in &self.letters {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// All reduced words of length exactly `len`, in ShortLex order.
pub fn reduced_words_of_length(rank: usize, len: usize) -> Vec<Word> {
    let mut layer = vec![Word::identity(rank)];
    let letters: Vec<Letter> = (0..2 * rank).map(Letter::from_slot).collect();
    for _ in 0..len {
        let mut next = Vec::with_capacity(layer.len() * (2 * rank).saturating_sub(1).max(1));
        for w in &layer {
            for &x in &letters {
                if w.last() == Some(x.inverse()) {
                    continue;
                }
                let mut v = w.clone();
                v.letters.push(x);
                next.push(v);
            }
        }
        layer = next;
    }
    layer
}

/// Number of reduced words of length at most `len`: the ball volume
/// `1 + n((2n-1)^len - 1)/(n-1)` of the free group (saturating).
pub fn free_ball_size(rank: usize, len: usize) -> u64 {
    let mut total: u64 = 1;
    let mut sphere: u64 = if len == 0 { 0 } else { 2 * rank as u64 };
    for _ in 0..len {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(2 * rank as u64 - 1);
    }
    total
}
