//! Successor and predecessor dynamics on A-class words over Z/NZ, the
//! orbits they generate (periodic infinite words), and the periodic-word
//! parameters t and t'.
//!
//! An A-class word of length l has matrix image `[[a,b],[-b^-1,0]]`. Its
//! unique immediate successor shifts one position right, appending the
//! letter -a*b^-1; its unique immediate predecessor prepends -a*b. Iterating
//! the successor must cycle, which yields the period s and the infinite
//! periodic word.

use crate::classify::{classify_ring, verdict_ring, Verdict};
use crate::error::SlError;
use crate::sl2::Mat2;
use crate::word::Word;

/// A successor orbit: the cycle of same-length A-class words and the
/// length-s letter block generating the infinite word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitInfo {
    pub representative: Word,
    pub period: usize,
    pub cycle: Vec<Word>,
    pub period_word: Word,
}

/// The two multipliers attached to a period word: t is minimal with all
/// cyclic subwords of length t*s - 1 in the A-class; t' is the common
/// multiplicative order of the s conjugate matrix images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicAnalysis {
    pub period_word: Word,
    pub t: u64,
    pub t_prime: u64,
    pub subwords: Vec<Word>,
}

fn a_class_image(w: &Word) -> Result<Mat2, SlError> {
    let label = classify_ring(w)?;
    if label.verdict != Verdict::InA {
        return Err(SlError::NotInAbar);
    }
    Ok(label.witness)
}

/// The unique same-length A-class word overlapping `w` one shift to the
/// right: drop the first letter, append -a*b^-1.
pub fn successor(w: &Word) -> Result<Word, SlError> {
    let ring = w.ring().clone();
    let m = a_class_image(w)?;
    let appended = ring.neg(ring.mul(m.a(), ring.inv(m.b())?));
    let mut letters = w.letters()[1..].to_vec();
    letters.push(appended);
    Word::new(&ring, letters)
}

/// The unique same-length A-class word overlapping `w` one shift to the
/// left: prepend -a*b, drop the last letter.
pub fn predecessor(w: &Word) -> Result<Word, SlError> {
    let ring = w.ring().clone();
    let m = a_class_image(w)?;
    let prepended = ring.neg(ring.mul(m.a(), m.b()));
    let mut letters = vec![prepended];
    letters.extend_from_slice(&w.letters()[..w.len() - 1]);
    Word::new(&ring, letters)
}

/// Iterate the successor until the word recurs. The cycle lists the s
/// distinct words starting at `w`; the period word collects their first
/// letters, i.e. the first s letters of the infinite word.
pub fn orbit(w: &Word) -> Result<OrbitInfo, SlError> {
    let ring = w.ring().clone();
    a_class_image(w)?;
    let mut cycle = vec![w.clone()];
    let mut cur = successor(w)?;
    while cur != *w {
        cycle.push(cur.clone());
        cur = successor(&cur)?;
    }
    let first_letters = cycle.iter().map(|m| m.letters()[0]).collect();
    Ok(OrbitInfo {
        representative: w.clone(),
        period: cycle.len(),
        cycle: cycle.clone(),
        period_word: Word::new(&ring, first_letters)?,
    })
}

/// For an s-periodic infinite word given by its period block, find the
/// smallest t such that all s cyclic subwords of length t*s - 1 are in the
/// A-class (the length-0 subword counts as not in it). The scan is capped
/// by t' = the order of the period block's image, which always satisfies
/// the condition.
pub fn periodic_t(period_word: &Word) -> Result<PeriodicAnalysis, SlError> {
    if !period_word.ring().is_integers_mod() {
        return Err(SlError::NotIntegersMod);
    }
    if period_word.is_empty() {
        return Err(SlError::EmptyWord);
    }
    let s = period_word.len();
    let t_prime = period_word.pi().order();
    for t in 1..=t_prime {
        let len = t as usize * s - 1;
        let subwords = cyclic_subwords(period_word, len);
        let all_in_a = !subwords.is_empty()
            && subwords.iter().all(|w| verdict_ring(&w.pi()) == Verdict::InA);
        if all_in_a {
            return Ok(PeriodicAnalysis {
                period_word: period_word.clone(),
                t,
                t_prime,
                subwords,
            });
        }
    }
    panic!("no multiplier up to the conjugate order {t_prime} worked: invariant broken");
}

/// The s cyclic subwords of the given length, starting at offsets 0..s-1
/// of the infinite repetition. Length 0 yields no subwords (the empty word
/// never qualifies).
pub fn cyclic_subwords(period_word: &Word, len: usize) -> Vec<Word> {
    if len == 0 {
        return Vec::new();
    }
    let s = period_word.len();
    let letters = period_word.letters();
    (0..s)
        .map(|offset| {
            let sub: Vec<_> = (0..len).map(|j| letters[(offset + j) % s]).collect();
            Word::from_letters(period_word.ring(), sub)
        })
        .collect()
}
