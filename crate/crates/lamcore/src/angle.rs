//! Exact rational angles on the circle R/Z and the doubling map.
//!
//! Everything downstream (chords, laminations, matings, regluings) is driven
//! by the dynamics of `x -> 2x mod 1` on rational angles, so this module is
//! deliberately small and fully exact: angles are reduced fractions backed by
//! arbitrary-precision integers, and every predicate is decided by integer
//! arithmetic. There is no floating point anywhere in the core.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// A point of R/Z, stored as a reduced fraction in `[0, 1)`.
///
/// Only rational angles are representable; the constructions in this crate
/// never need irrational ones.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Angle(Ratio<BigInt>);

/// Errors from angle construction and parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AngleError {
    ZeroDenominator,
    Parse(String),
}

impl fmt::Display for AngleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleError::ZeroDenominator => write!(f, "angle denominator must be nonzero"),
            AngleError::Parse(s) => write!(f, "cannot parse angle from {s:?}"),
        }
    }
}

fn wrap(r: Ratio<BigInt>) -> Ratio<BigInt> {
    let fl = r.floor();
    r - fl
}

impl Angle {
    /// Builds `p/q mod 1`. Unreduced and out-of-range input is normalized.
    pub fn new(numer: i64, denom: i64) -> Result<Self, AngleError> {
        if denom == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Self::from_ratio(Ratio::new(
            BigInt::from(numer),
            BigInt::from(denom),
        )))
    }

    /// Wraps an exact ratio into `[0, 1)`.
    pub fn from_ratio(r: Ratio<BigInt>) -> Self {
        Angle(wrap(r))
    }

    pub fn zero() -> Self {
        Angle(Ratio::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn ratio(&self) -> &Ratio<BigInt> {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Image under the doubling map `sigma_2`.
    pub fn double(&self) -> Self {
        Angle::from_ratio(&self.0 * BigInt::from(2))
    }

    /// `m`-fold doubling.
    pub fn double_n(&self, m: usize) -> Self {
        let mut a = self.clone();
        for _ in 0..m {
            a = a.double();
        }
        a
    }

    /// The two preimages under doubling: `(a/2, a/2 + 1/2)`.
    pub fn halves(&self) -> (Self, Self) {
        let h = Angle::from_ratio(&self.0 / BigInt::from(2));
        let h2 = h.rotate(&Angle::new(1, 2).unwrap());
        (h, h2)
    }

    /// The antipode `a + 1/2`.
    pub fn antipode(&self) -> Self {
        self.rotate(&Angle::new(1, 2).unwrap())
    }

    /// `-a mod 1`; the effect of `z -> 1/z` on circle angles.
    pub fn conjugate(&self) -> Self {
        Angle::from_ratio(-self.0.clone())
    }

    pub fn rotate(&self, by: &Angle) -> Self {
        Angle::from_ratio(&self.0 + &by.0)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_distance(&self, other: &Angle) -> Ratio<BigInt> {
        wrap(&other.0 - &self.0)
    }

    /// Shorter-arc distance between two angles, in `[0, 1/2]`.
    pub fn arc_distance(&self, other: &Angle) -> Ratio<BigInt> {
        let d = self.ccw_distance(other);
        let one = Ratio::<BigInt>::one();
        let half = Ratio::new(BigInt::one(), BigInt::from(2));
        if d > half {
            one - d
        } else {
            d
        }
    }

    /// Whether the angle is periodic under doubling (iff the reduced
    /// denominator is odd).
    pub fn is_periodic(&self) -> bool {
        use num_integer::Integer;
        self.0.denom().is_odd()
    }

    /// Minimal preperiod and period under doubling, plus the orbit visited
    /// (preperiodic tail followed by one full cycle).
    pub fn orbit_info(&self) -> OrbitInfo {
        let mut seen: Vec<Angle> = Vec::new();
        let mut cur = self.clone();
        loop {
            if let Some(idx) = seen.iter().position(|a| *a == cur) {
                let period = seen.len() - idx;
                return OrbitInfo {
                    preperiod: idx,
                    period,
                    orbit: seen,
                };
            }
            seen.push(cur.clone());
            cur = cur.double();
        }
    }

    /// Serialization as reduced fraction text, `"0/1"` for zero.
    pub fn to_fraction_string(&self) -> String {
        use alloc::format;
        format!("{}/{}", self.0.numer(), self.0.denom())
    }

    /// Parses `"p/q"` (unreduced input accepted) or a bare integer.
    pub fn parse(text: &str) -> Result<Self, AngleError> {
        let t = text.trim();
        let (np, dp) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = np
            .parse()
            .map_err(|_| AngleError::Parse(String::from(text)))?;
        let d: BigInt = dp
            .parse()
            .map_err(|_| AngleError::Parse(String::from(text)))?;
        if d.is_zero() {
            return Err(AngleError::ZeroDenominator);
        }
        Ok(Angle::from_ratio(Ratio::new(n, d)))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Preperiod, period and visited orbit of an angle under doubling.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitInfo {
    pub preperiod: usize,
    pub period: usize,
    pub orbit: Vec<Angle>,
}

impl OrbitInfo {
    pub fn is_periodic(&self) -> bool {
        self.preperiod == 0
    }

    /// The cycle the orbit eventually falls into.
    pub fn cycle(&self) -> &[Angle] {
        &self.orbit[self.preperiod..]
    }
}

/// True iff `x` lies strictly inside the counterclockwise open arc from
/// `from` to `to`. Requires `from != to`.
pub fn in_open_arc(x: &Angle, from: &Angle, to: &Angle) -> bool {
    debug_assert!(from != to, "in_open_arc requires a nondegenerate arc");
    if from < to {
        x > from && x < to
    } else {
        x > from || x < to
    }
}

/// Circular comparison: the order of `b` and `c` as seen from base point `a`
/// walking counterclockwise.
pub fn ccw_order_from(a: &Angle, b: &Angle, c: &Angle) -> Ordering {
    a.ccw_distance(b).cmp(&a.ccw_distance(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ang(n: i64, d: i64) -> Angle {
        Angle::new(n, d).unwrap()
    }

    #[test]
    fn doubling_basics() {
        assert_eq!(ang(1, 3).double(), ang(2, 3));
        assert_eq!(ang(2, 3).double(), ang(1, 3));
        assert_eq!(Angle::zero().double(), Angle::zero());
    }

    #[test]
    fn halves_basics() {
        assert_eq!(ang(1, 3).halves(), (ang(1, 6), ang(2, 3)));
        assert_eq!(Angle::zero().halves(), (Angle::zero(), ang(1, 2)));
        // double of each half must recover the angle
        assert_eq!(ang(1, 7).halves(), (ang(1, 14), ang(4, 7)));
        for q in 1..30i64 {
            for p in 0..q {
                let a = ang(p, q);
                let (h0, h1) = a.halves();
                assert_eq!(h0.double(), a);
                assert_eq!(h1.double(), a);
            }
        }
    }

    #[test]
    fn orbit_info_examples() {
        let o = ang(1, 7).orbit_info();
        assert_eq!((o.preperiod, o.period), (0, 3));
        assert_eq!(o.orbit, alloc::vec![ang(1, 7), ang(2, 7), ang(4, 7)]);
        let o = ang(1, 3).orbit_info();
        assert_eq!((o.preperiod, o.period), (0, 2));
        let o = ang(1, 6).orbit_info();
        assert_eq!((o.preperiod, o.period), (1, 2));
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(ang(1, 3).conjugate(), ang(2, 3));
        assert_eq!(Angle::zero().conjugate(), Angle::zero());
        assert_eq!(ang(1, 7).conjugate(), ang(6, 7));
    }

    #[test]
    fn arc_membership() {
        assert!(in_open_arc(&ang(1, 4), &Angle::zero(), &ang(1, 2)));
        assert!(!in_open_arc(&ang(3, 4), &Angle::zero(), &ang(1, 2)));
        assert!(!in_open_arc(&Angle::zero(), &Angle::zero(), &ang(1, 2)));
        // wrap-around arc
        assert!(in_open_arc(&ang(1, 12), &ang(2, 3), &ang(1, 6)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(Angle::parse("2/6").unwrap(), ang(1, 3));
        assert_eq!(Angle::parse("7/3").unwrap(), ang(1, 3));
        assert_eq!(Angle::parse("-1/3").unwrap(), ang(2, 3));
        assert_eq!(Angle::zero().to_fraction_string(), "0/1");
        assert!(Angle::parse("1/0").is_err());
        assert!(Angle::parse("x").is_err());
    }

    #[test]
    fn periodicity_matches_denominator_parity() {
        for q in 1..40i64 {
            for p in 0..q {
                let a = ang(p, q);
                use num_integer::Integer;
                assert_eq!(a.is_periodic(), a.denom().is_odd());
                assert_eq!(a.is_periodic(), a.orbit_info().preperiod == 0);
            }
        }
    }
}
