//! Length-reducing rewrite rules that classify words without computing the
//! full matrix image: complete over fields, partial over Z/NZ (nonzero
//! zero-divisor prefixes have no rule and surface as Unknown).
//!
//! Each step is recorded with the rule applied and the classification
//! parameter in force, since the field-side rule for a prefix equal to the
//! target switches the remaining reduction to target 0.

use std::fmt;

use crate::classify::{verdict_field, verdict_ring, ClassLabel, Target, Verdict};
use crate::error::SlError;
use crate::ring::{Elem, Ring};
use crate::word::Word;

/// The rewrite rule applied by a single step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    /// alpha beta x -> gamma x at the same target r (requires alpha != r);
    /// gamma = (r^2 - (alpha-beta) r + 1 - alpha beta) / (r - alpha).
    FieldPrefix { alpha: Elem, beta: Elem, gamma: Elem },
    /// r beta x -> x, switching the target from r to 0.
    FieldDropToR0 { beta: Elem },
    /// alpha beta x -> (beta - alpha^-1) x for a unit prefix alpha.
    RingUnitPrefix {
        alpha: Elem,
        beta: Elem,
        replacement: Elem,
    },
    /// 0 beta x -> x.
    RingZeroPrefix { beta: Elem },
    /// The empty word: always in the C-class.
    BaseEmpty,
    /// A single letter: in the A-class iff it equals the current target.
    BaseSingle { alpha: Elem },
}

/// One rewrite step: word and classification parameter before and after.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub before: Word,
    pub after: Word,
    pub param_before: Target,
    pub param_after: Target,
}

/// Final outcome of a rewrite classification. Unknown only arises on the
/// ring side, when a nonzero zero-divisor prefix blocks every rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceVerdict {
    InA,
    InC,
    Unknown,
}

impl From<Verdict> for TraceVerdict {
    fn from(v: Verdict) -> Self {
        match v {
            Verdict::InA => TraceVerdict::InA,
            Verdict::InC => TraceVerdict::InC,
        }
    }
}

impl fmt::Display for TraceVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TraceVerdict::InA => write!(f, "InA"),
            TraceVerdict::InC => write!(f, "InC"),
            TraceVerdict::Unknown => write!(f, "Unknown"),
        }
    }
}

/// The full reduction: the steps taken, the word the reduction stopped at,
/// and the verdict (Unknown when the ring-side rules got stuck).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<RewriteStep>,
    pub final_word: Word,
    pub final_verdict: TraceVerdict,
}

fn ensure_field(ring: &Ring) -> Result<(), SlError> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(SlError::NotAField(ring.cardinality()))
    }
}

/// One field-side step on a word of length >= 2 with target r.
pub fn reduce_step_field(w: &Word, r: Elem) -> Result<RewriteStep, SlError> {
    ensure_field(w.ring())?;
    if w.len() < 2 {
        return Err(SlError::WordTooShort);
    }
    let ring = w.ring().clone();
    let alpha = w.letters()[0];
    let beta = w.letters()[1];
    let rest = w.suffix_from(2);
    if alpha == r {
        return Ok(RewriteStep {
            rule: Rule::FieldDropToR0 { beta },
            before: w.clone(),
            after: rest,
            param_before: Target::Field { r },
            param_after: Target::Field { r: ring.zero() },
        });
    }
    // gamma = (r^2 - (alpha - beta) r + 1 - alpha*beta) / (r - alpha)
    let r2 = ring.mul(r, r);
    let num = ring.add(
        ring.sub(r2, ring.mul(ring.sub(alpha, beta), r)),
        ring.sub(ring.one(), ring.mul(alpha, beta)),
    );
    let gamma = ring.mul(num, ring.inv(ring.sub(r, alpha))?);
    let mut letters = vec![gamma];
    letters.extend_from_slice(rest.letters());
    let after = Word::from_letters(&ring, letters);
    Ok(RewriteStep {
        rule: Rule::FieldPrefix { alpha, beta, gamma },
        before: w.clone(),
        after,
        param_before: Target::Field { r },
        param_after: Target::Field { r },
    })
}

/// Classify over a field purely by rewriting: repeated steps down to length
/// <= 1, then the base cases. Never consults the matrix classifier for the
/// verdict; the matrix image is recorded only as the label's witness.
pub fn classify_by_rewrite_field(
    w: &Word,
    r: Elem,
) -> Result<(ClassLabel, ReductionTrace), SlError> {
    ensure_field(w.ring())?;
    let mut steps = Vec::new();
    let mut cur = w.clone();
    let mut param = r;
    while cur.len() >= 2 {
        let step = reduce_step_field(&cur, param)?;
        cur = step.after.clone();
        param = match step.param_after {
            Target::Field { r } => r,
            Target::Ring => unreachable!("field reduction keeps a field target"),
        };
        steps.push(step);
    }
    let verdict = if cur.is_empty() {
        steps.push(RewriteStep {
            rule: Rule::BaseEmpty,
            before: cur.clone(),
            after: cur.clone(),
            param_before: Target::Field { r: param },
            param_after: Target::Field { r: param },
        });
        Verdict::InC
    } else {
        let alpha = cur.letters()[0];
        steps.push(RewriteStep {
            rule: Rule::BaseSingle { alpha },
            before: cur.clone(),
            after: cur.clone(),
            param_before: Target::Field { r: param },
            param_after: Target::Field { r: param },
        });
        if alpha == param {
            Verdict::InA
        } else {
            Verdict::InC
        }
    };
    let label = ClassLabel {
        verdict,
        target: Target::Field { r },
        witness: w.pi(),
    };
    let trace = ReductionTrace {
        steps,
        final_word: cur,
        final_verdict: verdict.into(),
    };
    debug_assert_eq!(verdict, verdict_field(&label.witness, r));
    Ok((label, trace))
}

/// One ring-side step on a word of length >= 2; None when the leading
/// letter is a nonzero zero divisor, for which no rule exists.
pub fn reduce_step_ring(w: &Word) -> Result<Option<RewriteStep>, SlError> {
    if !w.ring().is_integers_mod() {
        return Err(SlError::NotIntegersMod);
    }
    if w.len() < 2 {
        return Err(SlError::WordTooShort);
    }
    let ring = w.ring().clone();
    let alpha = w.letters()[0];
    let beta = w.letters()[1];
    let rest = w.suffix_from(2);
    if alpha == ring.zero() {
        return Ok(Some(RewriteStep {
            rule: Rule::RingZeroPrefix { beta },
            before: w.clone(),
            after: rest,
            param_before: Target::Ring,
            param_after: Target::Ring,
        }));
    }
    if !ring.is_unit(alpha) {
        return Ok(None);
    }
    let replacement = ring.sub(beta, ring.inv(alpha)?);
    let mut letters = vec![replacement];
    letters.extend_from_slice(rest.letters());
    let after = Word::from_letters(&ring, letters);
    Ok(Some(RewriteStep {
        rule: Rule::RingUnitPrefix {
            alpha,
            beta,
            replacement,
        },
        before: w.clone(),
        after,
        param_before: Target::Ring,
        param_after: Target::Ring,
    }))
}

/// Classify over Z/NZ by rewriting alone. Stops with Unknown at the first
/// nonzero zero-divisor prefix; never falls back to the matrix method.
pub fn classify_by_rewrite_ring(w: &Word) -> Result<(TraceVerdict, ReductionTrace), SlError> {
    if !w.ring().is_integers_mod() {
        return Err(SlError::NotIntegersMod);
    }
    let ring = w.ring().clone();
    let mut steps = Vec::new();
    let mut cur = w.clone();
    while cur.len() >= 2 {
        match reduce_step_ring(&cur)? {
            Some(step) => {
                cur = step.after.clone();
                steps.push(step);
            }
            None => {
                let trace = ReductionTrace {
                    steps,
                    final_word: cur,
                    final_verdict: TraceVerdict::Unknown,
                };
                return Ok((TraceVerdict::Unknown, trace));
            }
        }
    }
    let verdict = if cur.is_empty() {
        steps.push(RewriteStep {
            rule: Rule::BaseEmpty,
            before: cur.clone(),
            after: cur.clone(),
            param_before: Target::Ring,
            param_after: Target::Ring,
        });
        TraceVerdict::InC
    } else {
        let alpha = cur.letters()[0];
        steps.push(RewriteStep {
            rule: Rule::BaseSingle { alpha },
            before: cur.clone(),
            after: cur.clone(),
            param_before: Target::Ring,
            param_after: Target::Ring,
        });
        if alpha == ring.zero() {
            TraceVerdict::InA
        } else {
            TraceVerdict::InC
        }
    };
    if let TraceVerdict::InA | TraceVerdict::InC = verdict {
        debug_assert_eq!(
            verdict,
            TraceVerdict::from(verdict_ring(&w.pi())),
            "rewrite verdict diverged from the matrix characterization"
        );
    }
    let trace = ReductionTrace {
        steps,
        final_word: cur,
        final_verdict: verdict,
    };
    Ok((verdict, trace))
}
