//! Orbit portraits: periodic cycles of pairwise-unlinked chords, the
//! co-existence relation, and principal portraits (finite gaps or leaves
//! whose vertices are rotated by doubling).

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::angle::Angle;
use crate::chord::Chord;

/// A periodic cycle of chords: `image(chords[i]) = chords[i+1 mod n]`,
/// pairwise non-crossing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPortrait {
    chords: Vec<Chord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PortraitError {
    /// The forward images of the chord cross each other.
    Crossing,
    /// An endpoint of the chord is not periodic under doubling.
    NotPeriodic,
    /// No principal portrait within the period bound co-exists.
    NotFound,
    /// More than one principal portrait co-exists; the uniqueness asserted
    /// by the theory failed, which indicates a bug.
    MultipleFound,
}

impl fmt::Display for PortraitError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PortraitError::Crossing => write!(f, "forward images of the chord cross"),
            PortraitError::NotPeriodic => write!(f, "chord endpoint is not periodic"),
            PortraitError::NotFound => write!(f, "no principal portrait within bound"),
            PortraitError::MultipleFound => {
                write!(f, "multiple principal portraits co-exist (internal inconsistency)")
            }
        }
    }
}

impl OrbitPortrait {
    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    /// All endpoint angles, sorted.
    pub fn vertices(&self) -> Vec<Angle> {
        let mut v: Vec<Angle> = Vec::new();
        for c in &self.chords {
            let (a, b) = c.endpoints();
            if !v.contains(a) {
                v.push(a.clone());
            }
            if !v.contains(b) {
                v.push(b.clone());
            }
        }
        v.sort();
        v
    }

    /// The conjugate portrait `O*`.
    pub fn conjugate(&self) -> OrbitPortrait {
        let n = self.chords.len();
        let start = self
            .chords
            .iter()
            .map(|c| c.conjugate())
            .min()
            .expect("portraits are nonempty");
        let mut ordered = alloc::vec![start];
        for _ in 1..n {
            let next = ordered.last().unwrap().image();
            ordered.push(next);
        }
        OrbitPortrait { chords: ordered }
    }

    pub fn contains_chord(&self, c: &Chord) -> bool {
        self.chords.contains(c)
    }

    fn chord_set(&self) -> Vec<Chord> {
        let mut v = self.chords.clone();
        v.sort();
        v
    }
}

/// The forward cycle of a chord with periodic endpoints, verified to be
/// pairwise non-crossing.
pub fn portrait_from_chord(c: &Chord) -> Result<OrbitPortrait, PortraitError> {
    let (a, b) = c.endpoints();
    if !a.is_periodic() || !b.is_periodic() {
        return Err(PortraitError::NotPeriodic);
    }
    let mut chords = alloc::vec![c.clone()];
    let mut cur = c.image();
    while cur != *c {
        chords.push(cur.clone());
        cur = cur.image();
    }
    for i in 0..chords.len() {
        for j in (i + 1)..chords.len() {
            if chords[i].crosses(&chords[j]) {
                return Err(PortraitError::Crossing);
            }
        }
    }
    Ok(OrbitPortrait { chords })
}

/// Portraits co-exist when they coincide or have no crossings at all.
pub fn coexist(p: &OrbitPortrait, q: &OrbitPortrait) -> bool {
    if p.chord_set() == q.chord_set() {
        return true;
    }
    for a in &p.chords {
        for b in &q.chords {
            if a.crosses(b) {
                return false;
            }
        }
    }
    true
}

/// Doubling restricted to the vertex set is a cyclic-order-preserving
/// permutation (a combinatorial rotation).
pub fn is_principal(p: &OrbitPortrait) -> bool {
    let verts = p.vertices();
    let n = verts.len();
    if n == 0 {
        return false;
    }
    let mut shift: Option<usize> = None;
    for (i, v) in verts.iter().enumerate() {
        let img = v.double();
        let Some(j) = verts.iter().position(|w| *w == img) else {
            return false;
        };
        let s = (j + n - i) % n;
        match shift {
            None => shift = Some(s),
            Some(s0) if s0 == s => {}
            _ => return false,
        }
    }
    true
}

/// A rotation cycle of the doubling map: the vertex set of a principal
/// portrait, with its rotation number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationCycle {
    /// Rotation number p/q (reduced, 0 < p < q).
    pub rotation: (usize, usize),
    /// The cycle angles, sorted; all have denominator 2^q - 1.
    pub angles: Vec<Angle>,
}

impl RotationCycle {
    /// The polygon edges: chords between circularly consecutive angles.
    /// A two-point cycle gives the single chord.
    pub fn edges(&self) -> Vec<Chord> {
        let n = self.angles.len();
        if n < 2 {
            return Vec::new();
        }
        if n == 2 {
            return alloc::vec![Chord::new(self.angles[0].clone(), self.angles[1].clone())];
        }
        (0..n)
            .map(|i| Chord::new(self.angles[i].clone(), self.angles[(i + 1) % n].clone()))
            .collect()
    }

    /// The characteristic (minor) edge: the pair of circularly consecutive
    /// cycle points subtending the shortest arc.
    pub fn minor_arc(&self) -> (Angle, Angle) {
        let n = self.angles.len();
        debug_assert!(n >= 2);
        let mut best: Option<(Angle, Angle)> = None;
        let mut best_len: Option<num_rational::Ratio<BigInt>> = None;
        for i in 0..n {
            let a = &self.angles[i];
            let b = &self.angles[(i + 1) % n];
            let len = a.ccw_distance(b);
            if best_len.as_ref().map_or(true, |l| len < *l) {
                best_len = Some(len);
                best = Some((a.clone(), b.clone()));
            }
        }
        best.unwrap()
    }

    pub fn as_portrait(&self) -> OrbitPortrait {
        let edges = self.edges();
        // order the edge cycle so that image(chords[i]) = chords[i+1]
        let mut ordered = alloc::vec![edges[0].clone()];
        while ordered.len() < edges.len() {
            let next = ordered.last().unwrap().image();
            debug_assert!(edges.contains(&next));
            ordered.push(next);
        }
        OrbitPortrait { chords: ordered }
    }
}

/// All rotation cycles of period exactly `q` (one per p coprime to q).
pub fn rotation_cycles(q: usize) -> Vec<RotationCycle> {
    debug_assert!(q >= 2);
    let modulus: i64 = (1i64 << q) - 1;
    let mut seen = alloc::vec![false; modulus as usize];
    let mut out = Vec::new();
    for start in 1..modulus {
        if seen[start as usize] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut k = start;
        loop {
            seen[k as usize] = true;
            cyc.push(k);
            k = (k * 2) % modulus;
            if k == start {
                break;
            }
        }
        if cyc.len() != q {
            continue;
        }
        let mut sorted = cyc.clone();
        sorted.sort();
        // rotation check: position shift of doubling must be constant
        let mut shift: Option<usize> = None;
        let mut ok = true;
        for (i, v) in sorted.iter().enumerate() {
            let img = (v * 2) % modulus;
            let j = sorted.binary_search(&img).unwrap();
            let s = (j + q - i) % q;
            match shift {
                None => shift = Some(s),
                Some(s0) if s0 == s => {}
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let p = shift.unwrap();
        debug_assert!(p > 0 && num_integer::gcd(p, q) == 1);
        out.push(RotationCycle {
            rotation: (p, q),
            angles: sorted
                .into_iter()
                .map(|k| {
                    Angle::from_ratio(num_rational::Ratio::new(
                        BigInt::from(k),
                        BigInt::from(modulus),
                    ))
                })
                .collect(),
        });
    }
    out
}

/// All principal portraits with vertex period at most `bound`.
pub fn enumerate_principal(bound: usize) -> Vec<OrbitPortrait> {
    let mut out = Vec::new();
    for q in 2..=bound {
        for cyc in rotation_cycles(q) {
            out.push(cyc.as_portrait());
        }
    }
    out
}

/// The unique principal portrait co-existing with `p`, searched up to the
/// given vertex period. Non-uniqueness is surfaced loudly, never broken.
pub fn principal_coexisting(
    p: &OrbitPortrait,
    period_bound: usize,
) -> Result<OrbitPortrait, PortraitError> {
    let mut found: Vec<OrbitPortrait> = Vec::new();
    for cand in enumerate_principal(period_bound) {
        if coexist(p, &cand) {
            found.push(cand);
        }
    }
    match found.len() {
        0 => Err(PortraitError::NotFound),
        1 => Ok(found.remove(0)),
        _ => Err(PortraitError::MultipleFound),
    }
}

/// Length of the shortest arc subtended by consecutive cycle points, as a
/// sanity value: for a q-cycle it is 1/(2^q - 1).
pub fn minor_arc_length(cycle: &RotationCycle) -> num_rational::Ratio<BigInt> {
    let (a, b) = cycle.minor_arc();
    let one = num_rational::Ratio::<BigInt>::one();
    let d = a.ccw_distance(&b);
    if d > one.clone() / BigInt::from(2) {
        one - d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    fn ch(p: (i64, i64), q: (i64, i64)) -> Chord {
        Chord::new(ang(p.0, p.1), ang(q.0, q.1))
    }

    #[test]
    fn portrait_from_chord_examples() {
        let p = portrait_from_chord(&ch((1, 3), (2, 3))).unwrap();
        assert_eq!(p.len(), 1);
        let p = portrait_from_chord(&ch((1, 7), (2, 7))).unwrap();
        assert_eq!(p.len(), 3);
        assert!(p.contains_chord(&ch((2, 7), (4, 7))));
        assert!(p.contains_chord(&ch((4, 7), (1, 7))));
        let p = portrait_from_chord(&ch((1, 5), (4, 5))).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.contains_chord(&ch((2, 5), (3, 5))));
        assert!(matches!(
            portrait_from_chord(&ch((1, 6), (1, 3))),
            Err(PortraitError::NotPeriodic)
        ));
    }

    #[test]
    fn coexist_examples() {
        let leaf = portrait_from_chord(&ch((1, 3), (2, 3))).unwrap();
        let two = portrait_from_chord(&ch((1, 5), (4, 5))).unwrap();
        assert!(coexist(&leaf, &two));
        assert!(coexist(&leaf, &leaf));
        let rabbit = portrait_from_chord(&ch((1, 7), (2, 7))).unwrap();
        assert!(!coexist(&leaf, &rabbit));
    }

    #[test]
    fn is_principal_examples() {
        assert!(is_principal(
            &portrait_from_chord(&ch((1, 3), (2, 3))).unwrap()
        ));
        assert!(is_principal(
            &portrait_from_chord(&ch((1, 7), (2, 7))).unwrap()
        ));
        assert!(!is_principal(
            &portrait_from_chord(&ch((1, 5), (4, 5))).unwrap()
        ));
    }

    #[test]
    fn rotation_cycles_small_periods() {
        let c2 = rotation_cycles(2);
        assert_eq!(c2.len(), 1);
        assert_eq!(c2[0].angles, alloc::vec![ang(1, 3), ang(2, 3)]);
        assert_eq!(c2[0].rotation, (1, 2));

        let c3 = rotation_cycles(3);
        assert_eq!(c3.len(), 2);
        let one_third = c3.iter().find(|c| c.rotation == (1, 3)).unwrap();
        assert_eq!(
            one_third.angles,
            alloc::vec![ang(1, 7), ang(2, 7), ang(4, 7)]
        );
        let two_thirds = c3.iter().find(|c| c.rotation == (2, 3)).unwrap();
        assert_eq!(
            two_thirds.angles,
            alloc::vec![ang(3, 7), ang(5, 7), ang(6, 7)]
        );

        let c4 = rotation_cycles(4);
        assert_eq!(c4.len(), 2);
        let quarter = c4.iter().find(|c| c.rotation == (1, 4)).unwrap();
        assert_eq!(
            quarter.angles,
            alloc::vec![ang(1, 15), ang(2, 15), ang(4, 15), ang(8, 15)]
        );
    }

    #[test]
    fn minor_arcs() {
        let c3 = rotation_cycles(3);
        let one_third = c3.iter().find(|c| c.rotation == (1, 3)).unwrap();
        assert_eq!(one_third.minor_arc(), (ang(1, 7), ang(2, 7)));
        let two_thirds = c3.iter().find(|c| c.rotation == (2, 3)).unwrap();
        assert_eq!(two_thirds.minor_arc(), (ang(5, 7), ang(6, 7)));
    }

    #[test]
    fn principal_coexisting_examples() {
        let two = portrait_from_chord(&ch((1, 5), (4, 5))).unwrap();
        let res = principal_coexisting(&two, 4).unwrap();
        assert_eq!(res.vertices(), alloc::vec![ang(1, 3), ang(2, 3)]);
        // a principal portrait finds itself
        let rabbit = portrait_from_chord(&ch((1, 7), (2, 7))).unwrap();
        let res = principal_coexisting(&rabbit, 6).unwrap();
        assert_eq!(res.vertices(), alloc::vec![ang(1, 7), ang(2, 7), ang(4, 7)]);
    }

    #[test]
    fn conjugation_preserves_coexistence() {
        let two = portrait_from_chord(&ch((1, 5), (4, 5))).unwrap();
        let leaf = portrait_from_chord(&ch((1, 3), (2, 3))).unwrap();
        assert_eq!(
            coexist(&two, &leaf),
            coexist(&two.conjugate(), &leaf.conjugate())
        );
        let rabbit = portrait_from_chord(&ch((1, 7), (2, 7))).unwrap();
        assert_eq!(
            coexist(&rabbit, &leaf),
            coexist(&rabbit.conjugate(), &leaf.conjugate())
        );
    }
}
