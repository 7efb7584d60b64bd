//! 2x2 determinant-one matrices over a coefficient ring: the generator
//! family `[[0,1],[-1,alpha]]`, products, adjugate inverses, and
//! multiplicative order.

use std::fmt;
use std::ops::Mul;

use crate::error::SlError;
use crate::ring::{Elem, Ring};

/// A 2x2 matrix `[[a,b],[c,d]]` of determinant one. Value type with
/// structural equality on the canonical entries, so it can key hash sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    ring: Ring,
    e: [Elem; 4],
}

impl Mat2 {
    /// Construct from row-major entries, checking det = 1.
    pub fn new(ring: &Ring, a: Elem, b: Elem, c: Elem, d: Elem) -> Result<Mat2, SlError> {
        let det = ring.sub(ring.mul(a, d), ring.mul(b, c));
        if det != ring.one() {
            return Err(SlError::NotDeterminantOne(det.value()));
        }
        Ok(Mat2 {
            ring: ring.clone(),
            e: [a, b, c, d],
        })
    }

    pub fn identity(ring: &Ring) -> Mat2 {
        Mat2 {
            ring: ring.clone(),
            e: [ring.one(), ring.zero(), ring.zero(), ring.one()],
        }
    }

    /// The generator `[[0, 1], [-1, alpha]]`. Always has determinant one.
    pub fn generator(ring: &Ring, alpha: Elem) -> Mat2 {
        Mat2 {
            ring: ring.clone(),
            e: [ring.zero(), ring.one(), ring.neg(ring.one()), alpha],
        }
    }

    pub fn a(&self) -> Elem {
        self.e[0]
    }

    pub fn b(&self) -> Elem {
        self.e[1]
    }

    pub fn c(&self) -> Elem {
        self.e[2]
    }

    pub fn d(&self) -> Elem {
        self.e[3]
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn entries(&self) -> [Elem; 4] {
        self.e
    }

    /// Raw entry values, handy as a compact hash key.
    pub fn key(&self) -> [u64; 4] {
        [
            self.e[0].value(),
            self.e[1].value(),
            self.e[2].value(),
            self.e[3].value(),
        ]
    }

    /// Matrix product; fails when the operands live in different rings.
    pub fn checked_mul(&self, rhs: &Mat2) -> Result<Mat2, SlError> {
        if self.ring != rhs.ring {
            return Err(SlError::RingMismatch);
        }
        let r = &self.ring;
        let [a, b, c, d] = self.e;
        let [e, f, g, h] = rhs.e;
        Ok(Mat2 {
            ring: r.clone(),
            e: [
                r.add(r.mul(a, e), r.mul(b, g)),
                r.add(r.mul(a, f), r.mul(b, h)),
                r.add(r.mul(c, e), r.mul(d, g)),
                r.add(r.mul(c, f), r.mul(d, h)),
            ],
        })
    }

    /// Inverse by the adjugate `[[d,-b],[-c,a]]`; sound because det = 1.
    pub fn inv(&self) -> Mat2 {
        let r = &self.ring;
        let [a, b, c, d] = self.e;
        Mat2 {
            ring: r.clone(),
            e: [d, r.neg(b), r.neg(c), a],
        }
    }

    /// Smallest t >= 1 with self^t = I, by repeated multiplication. The
    /// group is finite, so the loop is capped by its order.
    pub fn order(&self) -> u64 {
        let id = Mat2::identity(&self.ring);
        let cap = self.ring.sl2_order();
        let mut acc = self.clone();
        let mut t: u128 = 1;
        while acc != id {
            acc = acc.checked_mul(self).expect("same ring");
            t += 1;
            assert!(t <= cap, "order exceeded the group order: det-1 invariant broken");
        }
        t as u64
    }

    /// Parse the textual form `a,b,c,d` (row-major canonical residues).
    pub fn parse(text: &str, ring: &Ring) -> Result<Mat2, SlError> {
        let parts: Vec<&str> = text.split(',').collect();
        if parts.len() != 4 {
            return Err(SlError::MalformedInput(format!(
                "matrix needs 4 comma-separated entries, got {}",
                parts.len()
            )));
        }
        let mut entries = [ring.zero(); 4];
        for (i, part) in parts.iter().enumerate() {
            let v: u64 = part
                .trim()
                .parse()
                .map_err(|_| SlError::MalformedInput(format!("bad matrix entry '{part}'")))?;
            entries[i] = ring.elem(v)?;
        }
        Mat2::new(ring, entries[0], entries[1], entries[2], entries[3])
    }
}

impl Mul for &Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: &Mat2) -> Mat2 {
        self.checked_mul(rhs).expect("ring mismatch in matrix product")
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}
