//! Critical-leaf laminations: the pullback set of the critical diameter,
//! caterpillar detection, the cleaning procedure, central gaps, and the
//! non-recurrence certificate.
//!
//! The raw lamination takes the pullback definition literally: every chord
//! whose iterated image reaches the critical leaf without earlier images
//! crossing it. Cleaning rebuilds the limit structure exactly through an
//! invariant class engine keyed by the itinerary sides of the critical
//! diameter.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::angle::{in_open_arc, Angle};
use crate::chord::Chord;
use crate::lamination::{Face, Lamination, Meta};
use crate::portrait::{portrait_from_chord, rotation_cycles, RotationCycle};

/// Which cleaning case the generator angle falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CaseTag {
    /// An endpoint of the critical leaf is periodic (the generator angle is
    /// periodic): the lamination has caterpillars.
    PeriodicEndpoint,
    /// The generator is preperiodic and the critical value carries several
    /// rays: cleaning leaves a finite critical gap.
    FiniteCriticalGap,
    /// Already clean.
    Plain,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::PeriodicEndpoint => write!(f, "PeriodicEndpoint"),
            CaseTag::FiniteCriticalGap => write!(f, "FiniteCriticalGap"),
            CaseTag::Plain => write!(f, "Plain"),
        }
    }
}

/// The critical leaf lamination of an angle, truncated at a pullback depth.
#[derive(Clone, Debug)]
pub struct CriticalLeafLamination {
    pub theta: Angle,
    pub depth: u32,
    pub critical_leaf: Chord,
    pub lamination: Lamination,
    pub case_tag: CaseTag,
}

/// A maximal endpoint-sharing chain of leaves hanging off the critical
/// leaf, present when an endpoint of the critical leaf is periodic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Caterpillar {
    pub chain: Vec<Chord>,
    /// The periodic leaf the chain accumulates on, when identifiable at
    /// this depth (degenerate limits are reported as `None`).
    pub limit_leaf: Option<Chord>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CritLamError {
    /// No invariant finite face or leaf found at this depth.
    NotFound,
    /// Several candidates: the truncation is too shallow to decide.
    Ambiguous,
}

impl fmt::Display for CritLamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CritLamError::NotFound => write!(f, "no central gap at this depth"),
            CritLamError::Ambiguous => write!(f, "several central gap candidates; deepen the truncation"),
        }
    }
}

/// Builds the critical leaf plus its pullbacks up to `depth` generations.
///
/// Pullback candidates are admitted generation by generation only if they
/// cross neither the critical leaf nor any leaf admitted before them. For
/// non-periodic generators this filter never fires and the result is the
/// literal pullback set; for periodic generators it resolves the caterpillar
/// attachment consistently (the literal set of all pullbacks is not
/// pairwise unlinked there).
pub fn build_critical_lamination(theta: &Angle, depth: u32) -> CriticalLeafLamination {
    use num_traits::ToPrimitive;
    let q = theta
        .denom()
        .to_u128()
        .expect("generator denominator fits in u128");
    assert!(depth < 100, "pullback depth out of supported range");
    let scale: u128 = q << (depth + 1);
    let numer = theta.numer().to_u128().unwrap();
    let t_pos = numer * (scale / q);

    // integer position space: angle p/scale <-> position p
    let h0 = t_pos / 2;
    let h1 = h0 + scale / 2;
    let crosses = |a: (u128, u128), b: (u128, u128)| -> bool {
        if a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1 {
            return false;
        }
        let in0 = a.0 < b.0 && b.0 < a.1;
        let in1 = a.0 < b.1 && b.1 < a.1;
        in0 != in1
    };
    let norm = |x: u128, y: u128| if x <= y { (x, y) } else { (y, x) };

    let crit_pos = norm(h0, h1);
    let mut accepted: Vec<(u128, u128)> = alloc::vec![crit_pos];
    let mut seen: BTreeSet<(u128, u128)> = accepted.iter().cloned().collect();
    let mut frontier = accepted.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for &(a, b) in &frontier {
            debug_assert!(a % 2 == 0 && b % 2 == 0);
            let half = scale / 2;
            let cands = [
                norm(a / 2, b / 2),
                norm(a / 2 + half, b / 2 + half),
                norm(a / 2, b / 2 + half),
                norm(a / 2 + half, b / 2),
            ];
            for c in cands {
                if c.0 == c.1 || seen.contains(&c) {
                    continue;
                }
                if crosses(c, crit_pos) {
                    continue;
                }
                if accepted.iter().any(|&l| crosses(c, l)) {
                    continue;
                }
                seen.insert(c);
                accepted.push(c);
                next.push(c);
            }
        }
        frontier = next;
    }

    let to_angle = |p: u128| {
        Angle::from_ratio(num_rational::Ratio::new(
            num_bigint::BigInt::from(p),
            num_bigint::BigInt::from(scale),
        ))
    };
    let crit = Chord::critical(theta);
    let leaves: Vec<Chord> = accepted
        .iter()
        .map(|&(a, b)| Chord::new(to_angle(a), to_angle(b)))
        .collect();
    let case_tag = classify_case(theta);
    CriticalLeafLamination {
        theta: theta.clone(),
        depth,
        critical_leaf: crit,
        lamination: Lamination::new(
            leaves,
            Some(Meta {
                theta: theta.clone(),
                depth,
            }),
        ),
        case_tag,
    }
}

/// Itinerary side of a point with respect to the critical diameter of
/// `theta`: `A` is the open half containing `theta` itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    A,
    B,
    Cut,
}

pub fn side_of(x: &Angle, theta: &Angle) -> Side {
    let (h0, h1) = theta.halves();
    if x == &h0 || x == &h1 {
        Side::Cut
    } else if in_open_arc(x, &h0, &h1) {
        Side::A
    } else {
        Side::B
    }
}

/// The angles sharing the itinerary of a non-periodic `theta` with respect
/// to its own critical diameter: the rays co-landing at the critical value.
/// Always contains `theta`.
pub fn itinerary_class(theta: &Angle) -> Vec<Angle> {
    debug_assert!(!theta.is_periodic());
    let info = theta.orbit_info();
    let p = info.preperiod;
    let q = info.period;
    let target = itinerary(theta, theta, p + q);
    debug_assert!(target.iter().all(|s| *s != Side::Cut));
    let mut out = Vec::new();
    // candidates: angles mapping onto the cycle of theta in exactly p steps
    let pow = num_bigint::BigInt::from(1u8) << p;
    for c in info.cycle() {
        for j in 0..(1u64 << p) {
            let cand = Angle::from_ratio(
                (c.ratio() + num_rational::Ratio::from_integer(num_bigint::BigInt::from(j)))
                    / pow.clone(),
            );
            let ci = cand.orbit_info();
            if ci.preperiod != p || ci.period != q {
                continue;
            }
            let it = itinerary(&cand, theta, p + q);
            if it == target && !out.contains(&cand) {
                out.push(cand);
            }
        }
    }
    debug_assert!(out.contains(theta));
    out.sort();
    out
}

fn itinerary(x: &Angle, theta: &Angle, len: usize) -> Vec<Side> {
    let mut out = Vec::with_capacity(len);
    let mut cur = x.clone();
    for _ in 0..len {
        out.push(side_of(&cur, theta));
        cur = cur.double();
    }
    out
}

fn classify_case(theta: &Angle) -> CaseTag {
    if theta.is_periodic() {
        CaseTag::PeriodicEndpoint
    } else if itinerary_class(theta).len() > 1 {
        CaseTag::FiniteCriticalGap
    } else {
        CaseTag::Plain
    }
}

/// A co-landing class of angles, circularly sorted.
pub type Class = Vec<Angle>;

/// The central structure of the cleaned lamination of a periodic angle:
/// the principal rotation cycle whose closed characteristic arc contains
/// the angle. `None` for the fixed angle 0.
pub fn central_cycle(theta: &Angle) -> Option<RotationCycle> {
    if !theta.is_periodic() || theta.is_zero() {
        return None;
    }
    let n = theta.orbit_info().period;
    let mut hits: Vec<RotationCycle> = Vec::new();
    for q in 2..=n.max(2) {
        for cyc in rotation_cycles(q) {
            let (lo, hi) = cyc.minor_arc();
            if theta == &lo || theta == &hi || in_open_arc(theta, &lo, &hi) {
                hits.push(cyc);
            }
        }
    }
    debug_assert!(
        hits.len() == 1,
        "every periodic angle lies in exactly one principal characteristic arc"
    );
    hits.pop()
}

/// For a periodic angle not on its central rotation cycle, the companion
/// angle whose ray pair bounds the same wake.
///
/// Candidates of the same exact period must form a non-self-crossing chord
/// cycle with `theta`, the long preimage pair of the leaf (the major and
/// its half turn) must not cross the cycle, and the cycle must not cross
/// the central rotation polygon. Among the survivors the leaf is shortest.
pub fn companion_angle(theta: &Angle) -> Option<Angle> {
    if !theta.is_periodic() || theta.is_zero() {
        return None;
    }
    let n = theta.orbit_info().period;
    let modulus: i64 = (1i64 << n) - 1;
    let central_edges: Vec<Chord> = central_cycle(theta)
        .map(|c| c.edges())
        .unwrap_or_default();
    let mut best: Option<(num_rational::Ratio<num_bigint::BigInt>, Angle)> = None;
    for k in 1..modulus {
        let cand = Angle::new(k, modulus).unwrap();
        if &cand == theta || cand.orbit_info().period != n {
            continue;
        }
        let leaf = Chord::new(theta.clone(), cand.clone());
        let Ok(p) = portrait_from_chord(&leaf) else {
            continue;
        };
        // the long preimage pair (major and its half turn) must be
        // compatible with the whole cycle
        let (a0, a1) = leaf.endpoints();
        let (x0, x1) = a0.halves();
        let (y0, y1) = a1.halves();
        let long_pair = {
            let p1 = (Chord::new(x0.clone(), y0.clone()), Chord::new(x1.clone(), y1.clone()));
            let p2 = (Chord::new(x0, y1), Chord::new(x1, y0));
            if p1.0.length() >= p2.0.length() {
                p1
            } else {
                p2
            }
        };
        let major_ok = p.chords().iter().all(|c| {
            !c.crosses(&long_pair.0) && !c.crosses(&long_pair.1)
        });
        if !major_ok {
            continue;
        }
        let polygon_ok = p
            .chords()
            .iter()
            .all(|c| central_edges.iter().all(|e| !c.crosses(e)));
        if !polygon_ok {
            continue;
        }
        let len = leaf.length();
        match &best {
            Some((l, _)) if *l <= len => {}
            _ => best = Some((len, cand)),
        }
    }
    best.map(|(_, a)| a)
}

/// Pullback of a co-landing class through one inverse step of doubling,
/// keyed by the critical diameter of `theta`.
///
/// Generic classes split into the two same-side half classes. The class of
/// the critical value itself splits with the periodic half joining the
/// value side when `theta` is periodic, and merges into the single critical
/// class (the critical gap) when it is not.
pub fn class_preimages(class: &Class, theta: &Angle) -> Vec<Class> {
    let contains_theta = class.contains(theta);
    if contains_theta && !theta.is_periodic() {
        let mut merged: Class = Vec::new();
        for k in class {
            let (x, y) = k.halves();
            merged.push(x);
            merged.push(y);
        }
        merged.sort();
        merged.dedup();
        return alloc::vec![merged];
    }
    if contains_theta {
        // the class of the critical value is periodic; its two preimage
        // classes are the cycle predecessor and its half turn
        let mut pred = class_image(class);
        let mut steps = 1usize;
        while &pred != class {
            pred = class_image(&pred);
            steps += 1;
            assert!(steps <= 4096, "critical value class is not on a cycle");
        }
        // walk one short of a full cycle
        let mut before = class.clone();
        for _ in 0..(steps - 1) {
            before = class_image(&before);
        }
        let mut anti: Class = before.iter().map(|a| a.antipode()).collect();
        anti.sort();
        anti.dedup();
        return alloc::vec![before, anti];
    }
    let mut a_side: Class = Vec::new();
    let mut b_side: Class = Vec::new();
    for k in class {
        let (x, y) = k.halves();
        match side_of(&x, theta) {
            Side::A => {
                a_side.push(x);
                b_side.push(y);
            }
            Side::B => {
                b_side.push(x);
                a_side.push(y);
            }
            Side::Cut => unreachable!("only halves of theta land on the cuts"),
        }
    }
    a_side.sort();
    a_side.dedup();
    b_side.sort();
    b_side.dedup();
    alloc::vec![a_side, b_side]
}

/// Polygon edges of a class: chords between circularly consecutive members.
pub fn class_edges(class: &Class) -> Vec<Chord> {
    let n = class.len();
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return alloc::vec![Chord::new(class[0].clone(), class[1].clone())];
    }
    (0..n)
        .map(|i| Chord::new(class[i].clone(), class[(i + 1) % n].clone()))
        .collect()
}

fn class_image(class: &Class) -> Class {
    let mut out: Class = class.iter().map(|a| a.double()).collect();
    out.sort();
    out.dedup();
    out
}

/// Expands seed classes through forward closure and `depth` generations of
/// preimages; returns all classes found.
pub fn expand_classes(theta: &Angle, seeds: Vec<Class>, depth: u32) -> Vec<Class> {
    let mut all: BTreeSet<Class> = BTreeSet::new();
    let mut frontier: Vec<Class> = Vec::new();
    // forward closure of the seeds
    let mut queue = seeds;
    while let Some(k) = queue.pop() {
        if all.insert(k.clone()) {
            frontier.push(k.clone());
            queue.push(class_image(&k));
        }
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for k in &frontier {
            for child in class_preimages(k, theta) {
                if !child.is_empty() && all.insert(child.clone()) {
                    next.push(child);
                }
            }
        }
        frontier = next;
    }
    all.into_iter().collect()
}

/// The invariant lamination generated by the class engine: all polygon
/// edges of all classes.
pub fn classes_to_lamination(classes: &[Class], theta: &Angle, depth: u32) -> Lamination {
    let mut leaves = Vec::new();
    for k in classes {
        leaves.extend(class_edges(k));
    }
    Lamination::new(
        leaves,
        Some(Meta {
            theta: theta.clone(),
            depth,
        }),
    )
}

/// The cleaning of a critical leaf lamination.
///
/// Periodic generators get the invariant lamination of the polynomial they
/// define, rebuilt from the central rotation cycle (plus the companion ray
/// pair for generators off the principal cycle). Preperiodic generators
/// with a multi-ray critical value get the finite-critical-gap structure.
/// Clean generators pass through unchanged.
pub fn clean(cl: &CriticalLeafLamination) -> Lamination {
    match cl.case_tag {
        CaseTag::Plain => cl.lamination.clone(),
        CaseTag::FiniteCriticalGap => {
            let seed = itinerary_class(&cl.theta);
            let classes = expand_classes(&cl.theta, alloc::vec![seed], cl.depth);
            classes_to_lamination(&classes, &cl.theta, cl.depth)
        }
        CaseTag::PeriodicEndpoint => {
            let Some(cycle) = central_cycle(&cl.theta) else {
                // theta = 0: the model of z^2 has no leaves at all
                return Lamination::new(
                    Vec::new(),
                    Some(Meta {
                        theta: cl.theta.clone(),
                        depth: cl.depth,
                    }),
                );
            };
            let mut seeds: Vec<Class> = alloc::vec![cycle.angles.clone()];
            if !cycle.angles.contains(&cl.theta) {
                // primitive or deeper satellite: also seed the ray-pair
                // portrait of the generator
                if let Some(psi) = companion_angle(&cl.theta) {
                    let leaf = Chord::new(cl.theta.clone(), psi);
                    if let Ok(p) = portrait_from_chord(&leaf) {
                        for c in p.chords() {
                            let (a, b) = c.endpoints();
                            seeds.push(alloc::vec![a.clone().min(b.clone()), a.clone().max(b.clone())]);
                        }
                    }
                }
            }
            let classes = expand_classes(&cl.theta, seeds, cl.depth);
            classes_to_lamination(&classes, &cl.theta, cl.depth)
        }
    }
}

/// Detects the caterpillar: the maximal endpoint-sharing chain of leaves
/// starting at the critical leaf, present exactly when an endpoint of the
/// critical leaf is periodic.
pub fn detect_caterpillar(cl: &CriticalLeafLamination) -> Option<Caterpillar> {
    let (h0, h1) = cl.theta.halves();
    let (periodic, preperiodic) = if h0.is_periodic() {
        (h0, h1)
    } else if h1.is_periodic() {
        (h1, h0)
    } else {
        return None;
    };
    // hang the chain off the non-periodic endpoint and always continue
    // along the shortest unused leaf at the current pivot
    let mut chain = alloc::vec![cl.critical_leaf.clone()];
    let mut pivot = preperiodic.clone();
    loop {
        let mut cands: Vec<&Chord> = cl
            .lamination
            .leaves()
            .filter(|c| c.has_endpoint(&pivot) && !chain.contains(c))
            .collect();
        if cands.is_empty() {
            break;
        }
        cands.sort_by(|a, b| a.length().cmp(&b.length()).then(a.cmp(b)));
        let next = cands[0].clone();
        pivot = next.other_endpoint(&pivot).unwrap().clone();
        chain.push(next);
    }
    let limit_leaf = caterpillar_limit_leaf(cl, &periodic, &preperiodic);
    Some(Caterpillar { chain, limit_leaf })
}

/// The periodic leaf the caterpillar accumulates on: one endpoint is the
/// periodic endpoint of the critical leaf, the chord-cycle period divides
/// the endpoint period, nothing in the truncation crosses it, and among
/// such candidates it is the one nearest the chain.
fn caterpillar_limit_leaf(
    cl: &CriticalLeafLamination,
    periodic: &Angle,
    preperiodic: &Angle,
) -> Option<Chord> {
    let k = periodic.orbit_info().period;
    let modulus: i64 = (1i64 << k) - 1;
    let mut valid: Vec<Chord> = Vec::new();
    for j in 1..modulus {
        let x = Angle::new(j, modulus).unwrap();
        if &x == periodic {
            continue;
        }
        let cand = Chord::new(periodic.clone(), x);
        let Ok(p) = portrait_from_chord(&cand) else {
            continue;
        };
        if k % p.len() != 0 {
            continue;
        }
        if cl.lamination.leaves().any(|c| c.crosses(&cand)) {
            continue;
        }
        valid.push(cand);
    }
    // nearest to the chain: the candidate whose arc on the preperiodic side
    // contains no other candidate's free endpoint
    valid
        .iter()
        .find(|cand| {
            let x = cand.other_endpoint(periodic).unwrap();
            valid.iter().all(|other| {
                let y = other.other_endpoint(periodic).unwrap();
                y == x || !arc_from_towards(periodic, x, preperiodic, y)
            })
        })
        .cloned()
}

/// Whether `y` lies in the open arc bounded by `from`..`to` on the side of
/// `probe`.
fn arc_from_towards(from: &Angle, to: &Angle, probe: &Angle, y: &Angle) -> bool {
    if in_open_arc(probe, from, to) {
        in_open_arc(y, from, to)
    } else {
        in_open_arc(y, to, from)
    }
}

/// The unique finite invariant face or leaf of (a truncation of) an
/// invariant lamination, with vertices permuted as a rotation.
pub fn central_gap(l: &Lamination) -> Result<Face, CritLamError> {
    let mut candidates: Vec<Face> = Vec::new();
    for f in l.faces() {
        if !f.is_finite_type() {
            continue;
        }
        if face_vertices_rotated(&f) {
            candidates.push(f);
        }
    }
    for c in l.leaves() {
        if c.image() == *c && !candidates.iter().any(|f| f.vertex_count() != 2) {
            candidates.push(Face::from_leaf(c));
        }
    }
    match candidates.len() {
        0 => Err(CritLamError::NotFound),
        1 => Ok(candidates.pop().unwrap()),
        _ => Err(CritLamError::Ambiguous),
    }
}

fn face_vertices_rotated(f: &Face) -> bool {
    let verts = f.vertices();
    let n = verts.len();
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

/// Finite non-recurrence certificate: up to `horizon`, the forward orbit of
/// the critical structure's basis never enters the open arcs spanned around
/// the critical diameter's endpoints by their neighboring vertices in the
/// ambient truncation. Landing on a vertex or on the critical pair itself
/// is not recurrence.
pub fn check_nonrecurrent(cl: &CriticalLeafLamination, horizon: u32) -> bool {
    if horizon == 0 {
        return true;
    }
    let (h0, h1) = cl.theta.halves();
    let ambient = match cl.case_tag {
        CaseTag::Plain => cl.lamination.clone(),
        _ => clean(cl),
    };
    let verts = ambient.vertices();
    if verts.is_empty() {
        return true;
    }
    let basis: Vec<Angle> = match cl.case_tag {
        CaseTag::Plain => alloc::vec![h0.clone(), h1.clone()],
        CaseTag::FiniteCriticalGap => {
            let class = itinerary_class(&cl.theta);
            let mut b = Vec::new();
            for a in class {
                let (x, y) = a.halves();
                b.push(x);
                b.push(y);
            }
            b
        }
        CaseTag::PeriodicEndpoint => match ambient
            .faces()
            .into_iter()
            .find(|f| f.contains_center())
        {
            Some(f) => f.vertices(),
            None => alloc::vec![h0.clone(), h1.clone()],
        },
    };
    let neighbor_arc = |h: &Angle| -> (Angle, Angle) {
        let lo = verts
            .iter()
            .filter(|v| *v != h)
            .max_by(|x, y| h.ccw_distance(x).cmp(&h.ccw_distance(y)))
            .unwrap()
            .clone();
        let hi = verts
            .iter()
            .filter(|v| *v != h)
            .min_by(|x, y| h.ccw_distance(x).cmp(&h.ccw_distance(y)))
            .unwrap()
            .clone();
        (lo, hi)
    };
    let arcs = [neighbor_arc(&h0), neighbor_arc(&h1)];
    for v in &basis {
        let mut cur = v.clone();
        for _ in 0..horizon {
            cur = cur.double();
            for (lo, hi) in &arcs {
                if in_open_arc(&cur, lo, hi)
                    && cur != h0
                    && cur != h1
                    && !verts.contains(&cur)
                {
                    return false;
                }
            }
        }
    }
    true
}
