//! The free monoid of finite words over a coefficient ring, and the
//! homomorphism `pi` sending each word to its matrix image.
//!
//! Two textual syntaxes: a contiguous digit string (rings with at most 10
//! elements) or a comma-separated integer list; the literal `e` is the
//! empty word.

use std::fmt;

use crate::error::SlError;
use crate::ring::{Elem, Ring};
use crate::sl2::Mat2;

/// A finite word: an ordered sequence of ring elements, possibly empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    ring: Ring,
    letters: Vec<Elem>,
}

impl Word {
    /// Build a word from canonical letters of the given ring.
    pub fn new(ring: &Ring, letters: Vec<Elem>) -> Result<Word, SlError> {
        let card = ring.cardinality();
        for &l in &letters {
            if l.value() >= card {
                return Err(SlError::LetterOutOfRange {
                    letter: l.value(),
                    cardinality: card,
                });
            }
        }
        Ok(Word {
            ring: ring.clone(),
            letters,
        })
    }

    /// The empty word.
    pub fn empty(ring: &Ring) -> Word {
        Word {
            ring: ring.clone(),
            letters: Vec::new(),
        }
    }

    /// Strict parse: letters must already be canonical residues.
    pub fn parse(text: &str, ring: &Ring) -> Result<Word, SlError> {
        Self::parse_inner(text, ring, false)
    }

    /// Lenient parse: out-of-range letters are reduced into the ring.
    pub fn parse_reduced(text: &str, ring: &Ring) -> Result<Word, SlError> {
        Self::parse_inner(text, ring, true)
    }

    fn parse_inner(text: &str, ring: &Ring, reduce: bool) -> Result<Word, SlError> {
        let text = text.trim();
        if text.is_empty() {
            return Err(SlError::MalformedInput("empty word text; use 'e'".into()));
        }
        if text == "e" {
            return Ok(Word::empty(ring));
        }
        let tokens: Vec<u64> = if text.contains(',') {
            text.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<u64>()
                        .map_err(|_| SlError::MalformedInput(format!("bad letter '{tok}'")))
                })
                .collect::<Result<_, _>>()?
        } else if ring.cardinality() <= 10 {
            text.chars()
                .map(|ch| {
                    ch.to_digit(10)
                        .map(u64::from)
                        .ok_or_else(|| SlError::MalformedInput(format!("bad digit '{ch}'")))
                })
                .collect::<Result<_, _>>()?
        } else {
            vec![text
                .parse::<u64>()
                .map_err(|_| SlError::MalformedInput(format!("bad letter '{text}'")))?]
        };
        let letters = tokens
            .into_iter()
            .map(|v| {
                if reduce {
                    Ok(ring.elem_reduced(v))
                } else {
                    ring.elem(v)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Word {
            ring: ring.clone(),
            letters,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn letters(&self) -> &[Elem] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The image under the monoid homomorphism: the product of the letters'
    /// generator matrices, left to right; the empty word maps to I.
    pub fn pi(&self) -> Mat2 {
        let mut acc = Mat2::identity(&self.ring);
        for &l in &self.letters {
            acc = &acc * &Mat2::generator(&self.ring, l);
        }
        acc
    }

    /// Images of all prefixes: position k holds the image of the first k
    /// letters (position 0 is I). One matrix product per letter.
    pub fn pi_prefixes(&self) -> Vec<Mat2> {
        let mut out = Vec::with_capacity(self.letters.len() + 1);
        let mut acc = Mat2::identity(&self.ring);
        out.push(acc.clone());
        for &l in &self.letters {
            acc = &acc * &Mat2::generator(&self.ring, l);
            out.push(acc.clone());
        }
        out
    }

    /// First k letters.
    pub fn prefix(&self, k: usize) -> Word {
        Word {
            ring: self.ring.clone(),
            letters: self.letters[..k].to_vec(),
        }
    }

    /// Letters from position k onward.
    pub fn suffix_from(&self, k: usize) -> Word {
        Word {
            ring: self.ring.clone(),
            letters: self.letters[k..].to_vec(),
        }
    }

    pub fn reversed(&self) -> Word {
        let mut letters = self.letters.clone();
        letters.reverse();
        Word {
            ring: self.ring.clone(),
            letters,
        }
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word {
            ring: self.ring.clone(),
            letters,
        }
    }

    pub(crate) fn from_letters(ring: &Ring, letters: Vec<Elem>) -> Word {
        Word {
            ring: ring.clone(),
            letters,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        if self.ring.cardinality() <= 10 {
            for l in &self.letters {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}
