//! Prime words over Z/NZ and the unique factorization of zero-target
//! class words into alternating prime blocks and single separator letters.
//!
//! A prime word is a word in the A-class none of whose proper nonempty
//! prefixes is in the A-class. Every A-class word splits uniquely as
//! p1 d1 p2 d2 ... pn dn p(n+1) with each pi prime and each di a letter;
//! the greedy shortest-prefix scan realizes that factorization in one pass
//! of prefix images.

use std::fmt;

use crate::classify::{verdict_ring, Verdict};
use crate::error::SlError;
use crate::ring::{Elem, Ring};
use crate::sl2::Mat2;
use crate::word::Word;

/// The unique decomposition of an A-class word into prime blocks and
/// separator letters. `separators` is always one shorter than `primes`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    ring: Ring,
    pub primes: Vec<Word>,
    pub separators: Vec<Elem>,
}

impl Factorization {
    /// Number of separators (the n in p1 d1 ... dn p(n+1)).
    pub fn n(&self) -> usize {
        self.separators.len()
    }

    /// Interleave the primes and separators back into the original word.
    pub fn reassemble(&self) -> Word {
        let mut letters = Vec::new();
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                letters.push(self.separators[i - 1]);
            }
            letters.extend_from_slice(p.letters());
        }
        Word::from_letters(&self.ring, letters)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, " d{}={} ", i, self.separators[i - 1])?;
            }
            write!(f, "p{}={}", i + 1, p)?;
        }
        Ok(())
    }
}

fn ensure_integers_mod(ring: &Ring) -> Result<(), SlError> {
    if ring.is_integers_mod() {
        Ok(())
    } else {
        Err(SlError::NotIntegersMod)
    }
}

/// True iff the word is in the A-class and every proper nonempty prefix is
/// in the C-class. One pass over incremental prefix images.
pub fn is_prime_word(w: &Word) -> Result<bool, SlError> {
    ensure_integers_mod(w.ring())?;
    if w.is_empty() {
        return Err(SlError::EmptyWord);
    }
    let ring = w.ring();
    let mut image = Mat2::identity(ring);
    for (i, &letter) in w.letters().iter().enumerate() {
        image = &image * &Mat2::generator(ring, letter);
        let in_a = verdict_ring(&image) == Verdict::InA;
        if i + 1 < w.len() {
            if in_a {
                return Ok(false);
            }
        } else {
            return Ok(in_a);
        }
    }
    unreachable!("loop returns on the last letter")
}

/// Factor an A-class word into its unique prime/separator decomposition:
/// repeatedly take the shortest nonempty prefix in the A-class, then
/// consume one separator letter.
pub fn factorize(w: &Word) -> Result<Factorization, SlError> {
    ensure_integers_mod(w.ring())?;
    let ring = w.ring().clone();
    if verdict_ring(&w.pi()) != Verdict::InA {
        return Err(SlError::NotInAbar);
    }
    let letters = w.letters();
    let mut primes = Vec::new();
    let mut separators = Vec::new();
    let mut idx = 0;
    while idx < letters.len() {
        let mut image = Mat2::identity(&ring);
        let mut s = 0;
        loop {
            assert!(
                idx + s < letters.len(),
                "remainder of an A-class word failed to reach the A-class"
            );
            image = &image * &Mat2::generator(&ring, letters[idx + s]);
            s += 1;
            if verdict_ring(&image) == Verdict::InA {
                break;
            }
        }
        primes.push(Word::from_letters(&ring, letters[idx..idx + s].to_vec()));
        idx += s;
        if idx < letters.len() {
            separators.push(letters[idx]);
            idx += 1;
        }
    }
    Ok(Factorization {
        ring,
        primes,
        separators,
    })
}
