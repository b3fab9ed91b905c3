//! Chords of the unit disk with endpoints on the circle: the leaves of a
//! lamination, together with the crossing test and the pullback step under
//! the doubling map.

use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::angle::{in_open_arc, Angle};

/// An unordered pair of circle angles; `a == b` marks a degenerate leaf.
///
/// Stored with `a <= b` so equality and ordering are order-insensitive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chord {
    a: Angle,
    b: Angle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChordError {
    /// `sibling_preimages` needs a genuine chord to pull back.
    DegenerateInput,
    /// Both endpoint pairings avoid the critical chord; the caller must
    /// resolve the pullback from more context.
    AmbiguousPairing,
    /// The guide chord of a pullback must be a diameter.
    NotCriticalChord,
}

impl fmt::Display for ChordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChordError::DegenerateInput => write!(f, "cannot pull back a degenerate chord"),
            ChordError::AmbiguousPairing => {
                write!(f, "both sibling pairings avoid the critical chord")
            }
            ChordError::NotCriticalChord => write!(f, "guide chord is not a diameter"),
        }
    }
}

impl Chord {
    pub fn new(a: Angle, b: Angle) -> Self {
        if a <= b {
            Chord { a, b }
        } else {
            Chord { a: b, b: a }
        }
    }

    pub fn endpoints(&self) -> (&Angle, &Angle) {
        (&self.a, &self.b)
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    /// The diameter with endpoints `halves(v)`; the critical chord over `v`.
    pub fn critical(v: &Angle) -> Self {
        let (h0, h1) = v.halves();
        Chord::new(h0, h1)
    }

    /// A diameter: endpoints differ by exactly 1/2.
    pub fn is_diameter(&self) -> bool {
        self.a.antipode() == self.b
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        &self.a == x || &self.b == x
    }

    pub fn other_endpoint(&self, x: &Angle) -> Option<&Angle> {
        if x == &self.a {
            Some(&self.b)
        } else if x == &self.b {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Shorter-arc distance between the endpoints, in `[0, 1/2]`.
    pub fn length(&self) -> Ratio<BigInt> {
        self.a.arc_distance(&self.b)
    }

    /// Forward image under doubling; may be degenerate (critical chords
    /// collapse onto the critical value).
    pub fn image(&self) -> Chord {
        Chord::new(self.a.double(), self.b.double())
    }

    pub fn image_n(&self, m: usize) -> Chord {
        Chord::new(self.a.double_n(m), self.b.double_n(m))
    }

    /// Rotation of both endpoints by the same angle.
    pub fn rotate(&self, by: &Angle) -> Chord {
        Chord::new(self.a.rotate(by), self.b.rotate(by))
    }

    /// The half-turn image `-self`.
    pub fn antipode(&self) -> Chord {
        Chord::new(self.a.antipode(), self.b.antipode())
    }

    /// Complex conjugation of both endpoints.
    pub fn conjugate(&self) -> Chord {
        Chord::new(self.a.conjugate(), self.b.conjugate())
    }

    /// Linked-endpoint test. Chords sharing an endpoint do not cross, and
    /// degenerate chords never cross anything.
    pub fn crosses(&self, other: &Chord) -> bool {
        if self.is_degenerate() || other.is_degenerate() {
            return false;
        }
        if self.has_endpoint(&other.a) || self.has_endpoint(&other.b) {
            return false;
        }
        in_open_arc(&other.a, &self.a, &self.b) != in_open_arc(&other.b, &self.a, &self.b)
    }

    /// Serialization as `"p/q r/s"` with endpoints in ascending order.
    pub fn to_text(&self) -> String {
        use alloc::format;
        format!(
            "{} {}",
            self.a.to_fraction_string(),
            self.b.to_fraction_string()
        )
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// The two sibling preimages of `c` under doubling, selected so that neither
/// crosses the critical chord `crit`.
///
/// When both pairings avoid `crit` (exactly when the critical value is an
/// endpoint of `c`) the ambiguity is reported, not resolved.
pub fn sibling_preimages(c: &Chord, crit: &Chord) -> Result<(Chord, Chord), ChordError> {
    if c.is_degenerate() {
        return Err(ChordError::DegenerateInput);
    }
    if !crit.is_diameter() {
        return Err(ChordError::NotCriticalChord);
    }
    let (a1, a2) = c.a.halves();
    let (b1, b2) = c.b.halves();
    let p1 = (Chord::new(a1.clone(), b1.clone()), Chord::new(a2.clone(), b2.clone()));
    let p2 = (Chord::new(a1, b2), Chord::new(a2, b1));
    let ok1 = !p1.0.crosses(crit) && !p1.1.crosses(crit);
    let ok2 = !p2.0.crosses(crit) && !p2.1.crosses(crit);
    match (ok1, ok2) {
        (true, false) => Ok(p1),
        (false, true) => Ok(p2),
        (true, true) => Err(ChordError::AmbiguousPairing),
        (false, false) => unreachable!("antipodal halves always admit a non-crossing pairing"),
    }
}

/// All preimage chords of `c` that do not cross `crit` (shared endpoints
/// allowed). This is the pullback step of the critical-leaf construction
/// taken literally: in the ambiguous case all four chords qualify.
pub fn all_preimages(c: &Chord, crit: &Chord) -> alloc::vec::Vec<Chord> {
    let mut out = alloc::vec::Vec::new();
    if c.is_degenerate() {
        let (h1, h2) = c.a.halves();
        out.push(Chord::new(h1.clone(), h1));
        out.push(Chord::new(h2.clone(), h2));
        return out;
    }
    let (a1, a2) = c.a.halves();
    let (b1, b2) = c.b.halves();
    for x in [&a1, &a2] {
        for y in [&b1, &b2] {
            let cand = Chord::new(x.clone(), y.clone());
            if !cand.crosses(crit) && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    fn ang(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    fn ch(p: (i64, i64), q: (i64, i64)) -> Chord {
        Chord::new(ang(p.0, p.1), ang(q.0, q.1))
    }

    #[test]
    fn crossing_examples() {
        assert!(ch((0, 1), (1, 2)).crosses(&ch((1, 4), (3, 4))));
        // l0 and l1 = -l0 of the z^2 - 1 model coexist
        assert!(!ch((1, 3), (2, 3)).crosses(&ch((5, 6), (1, 6))));
        assert!(!ch((0, 1), (1, 3)).crosses(&ch((1, 3), (1, 2))));
        // degenerate chords never cross
        assert!(!ch((1, 7), (1, 7)).crosses(&ch((0, 1), (1, 2))));
    }

    #[test]
    fn image_examples() {
        assert_eq!(ch((1, 3), (2, 3)).image(), ch((2, 3), (1, 3)));
        let collapsed = ch((1, 6), (2, 3)).image();
        assert!(collapsed.is_degenerate());
        assert_eq!(collapsed, ch((1, 3), (1, 3)));
        assert_eq!(ch((1, 7), (2, 7)).image(), ch((2, 7), (4, 7)));
    }

    #[test]
    fn length_examples() {
        use num_bigint::BigInt;
        use num_rational::Ratio;
        let r = |n: i64, d: i64| Ratio::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(ch((0, 1), (1, 2)).length(), r(1, 2));
        assert_eq!(ch((1, 3), (2, 3)).length(), r(1, 3));
        assert_eq!(ch((1, 7), (1, 7)).length(), r(0, 1));
    }

    /// Oracle for the pullback selection: enumerate both pairings and apply
    /// the crossing filter directly.
    fn sibling_oracle(c: &Chord, crit: &Chord) -> Vec<(Chord, Chord)> {
        let (a1, a2) = c.endpoints().0.halves();
        let (b1, b2) = c.endpoints().1.halves();
        let mut found = Vec::new();
        let p1 = (
            Chord::new(a1.clone(), b1.clone()),
            Chord::new(a2.clone(), b2.clone()),
        );
        let p2 = (Chord::new(a1, b2), Chord::new(a2, b1));
        for p in [p1, p2] {
            if !p.0.crosses(crit) && !p.1.crosses(crit) {
                found.push(p);
            }
        }
        found
    }

    #[test]
    fn depth_one_pullbacks_of_one_third() {
        // theta = 1/3, l0 = {1/6, 2/3}: pulling l0 back through itself
        let crit = Chord::critical(&ang(1, 3));
        assert_eq!(crit, ch((1, 6), (2, 3)));
        let (u, v) = sibling_preimages(&crit, &crit).unwrap();
        let got = alloc::vec![u, v];
        assert!(got.contains(&ch((1, 12), (5, 6))));
        assert!(got.contains(&ch((1, 3), (7, 12))));
    }

    #[test]
    fn pullback_matches_oracle() {
        let crit = Chord::critical(&ang(4, 7)); // image 1/7 hit at {1/14, 4/7}... guide over 4/7
        let c = ch((2, 7), (4, 7));
        let oracle = sibling_oracle(&c, &crit);
        match sibling_preimages(&c, &crit) {
            Ok(pair) => {
                assert_eq!(oracle.len(), 1);
                assert_eq!(pair, oracle[0]);
            }
            Err(ChordError::AmbiguousPairing) => assert_eq!(oracle.len(), 2),
            Err(e) => panic!("unexpected error {e:?}"),
        }
    }

    #[test]
    fn ambiguity_exactly_at_critical_value() {
        // Pulling back a leaf whose endpoint is the critical value leaves
        // both pairings legal.
        let theta = ang(1, 3);
        let crit = Chord::critical(&theta);
        let c = ch((1, 3), (7, 12));
        assert_eq!(
            sibling_preimages(&c, &crit),
            Err(ChordError::AmbiguousPairing)
        );
        assert_eq!(all_preimages(&c, &crit).len(), 4);
    }

    #[test]
    fn siblings_never_cross_exhaustive_small() {
        // endpoints with denominator <= 16, guides over denominators <= 8
        let mut angles = Vec::new();
        for q in 1..=16i64 {
            for p in 0..q {
                let a = ang(p, q);
                if !angles.contains(&a) {
                    angles.push(a);
                }
            }
        }
        let mut guides = Vec::new();
        for q in 1..=8i64 {
            for p in 0..q {
                let v = ang(p, q);
                let c = Chord::critical(&v);
                if !guides.contains(&c) {
                    guides.push(c);
                }
            }
        }
        for i in 0..angles.len() {
            for j in (i + 1)..angles.len() {
                let c = Chord::new(angles[i].clone(), angles[j].clone());
                for g in &guides {
                    if let Ok((u, v)) = sibling_preimages(&c, g) {
                        assert!(!u.crosses(&v), "siblings cross for {c} guide {g}");
                        assert_eq!(u.image(), c);
                        assert_eq!(v.image(), c);
                    }
                }
            }
        }
    }
}
