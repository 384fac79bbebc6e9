//! The three qualitative calculi edge relations are built from: a
//! threshold-bucketed distance calculus, a four-component trajectory calculus
//! (approach/retreat plus lateral side, per object), and rectangle algebra as
//! a pair of Allen interval relations over the x- and y-projections of two
//! boxes.
//!
//! All relations are JEPD within their calculus: for any valid input exactly
//! one value holds. Endpoint equality in the interval relations is decided
//! with an absolute tolerance.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scene::BoundingBox;

/// Thresholds and tolerances shared by all relation computations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalculiConfig {
    /// Distance thresholds (meters), strictly increasing and positive.
    pub theta1: f64,
    pub theta2: f64,
    pub theta3: f64,
    /// Dead zone (meters) for trajectory approach/side decisions.
    pub qtc_tol: f64,
    /// Absolute tolerance for interval endpoint equality.
    pub allen_delta: f64,
}

impl Default for CalculiConfig {
    fn default() -> Self {
        CalculiConfig {
            theta1: 2.0,
            theta2: 5.0,
            theta3: 10.0,
            qtc_tol: 0.05,
            allen_delta: 1e-9,
        }
    }
}

impl CalculiConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.theta1 > 0.0 && self.theta1 < self.theta2 && self.theta2 < self.theta3) {
            return Err(Error::Config(format!(
                "distance thresholds must satisfy 0 < t1 < t2 < t3, got ({}, {}, {})",
                self.theta1, self.theta2, self.theta3
            )));
        }
        if self.qtc_tol < 0.0 {
            return Err(Error::Config("qtc_tol must be >= 0".into()));
        }
        if self.allen_delta < 0.0 {
            return Err(Error::Config("allen_delta must be >= 0".into()));
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Qualitative distance
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QdcRelation {
    VeryClose,
    Close,
    Far,
    VeryFar,
}

impl QdcRelation {
    pub const CARDINALITY: usize = 4;

    pub fn code(self) -> usize {
        match self {
            QdcRelation::VeryClose => 0,
            QdcRelation::Close => 1,
            QdcRelation::Far => 2,
            QdcRelation::VeryFar => 3,
        }
    }

    pub fn from_code(code: usize) -> Option<Self> {
        match code {
            0 => Some(QdcRelation::VeryClose),
            1 => Some(QdcRelation::Close),
            2 => Some(QdcRelation::Far),
            3 => Some(QdcRelation::VeryFar),
            _ => None,
        }
    }
}

/// Buckets the Euclidean distance between box centroids by the thresholds.
pub fn qdc_relation(b1: &BoundingBox, b2: &BoundingBox, cfg: &CalculiConfig) -> Result<QdcRelation> {
    b1.validate()?;
    b2.validate()?;
    cfg.validate()?;
    let (x1, y1) = b1.centroid();
    let (x2, y2) = b2.centroid();
    let d = ((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt();
    Ok(if d <= cfg.theta1 {
        QdcRelation::VeryClose
    } else if d <= cfg.theta2 {
        QdcRelation::Close
    } else if d <= cfg.theta3 {
        QdcRelation::Far
    } else {
        QdcRelation::VeryFar
    })
}

// ---------------------------------------------------------------------------
// Qualitative trajectory
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QtcApproach {
    Towards,
    Stable,
    Away,
}

impl QtcApproach {
    pub const CARDINALITY: usize = 3;

    pub fn code(self) -> usize {
        match self {
            QtcApproach::Towards => 0,
            QtcApproach::Stable => 1,
            QtcApproach::Away => 2,
        }
    }

    pub fn from_code(code: usize) -> Option<Self> {
        match code {
            0 => Some(QtcApproach::Towards),
            1 => Some(QtcApproach::Stable),
            2 => Some(QtcApproach::Away),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QtcSide {
    Left,
    Steady,
    Right,
}

impl QtcSide {
    pub const CARDINALITY: usize = 3;

    pub fn code(self) -> usize {
        match self {
            QtcSide::Left => 0,
            QtcSide::Steady => 1,
            QtcSide::Right => 2,
        }
    }

    pub fn from_code(code: usize) -> Option<Self> {
        match code {
            0 => Some(QtcSide::Left),
            1 => Some(QtcSide::Steady),
            2 => Some(QtcSide::Right),
            _ => None,
        }
    }
}

/// Trajectory relation between two objects over one frame step:
/// `(approach of o1, approach of o2, side of o1's motion, side of o2's motion)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QtcRelation {
    pub approach1: QtcApproach,
    pub approach2: QtcApproach,
    pub side1: QtcSide,
    pub side2: QtcSide,
}

impl QtcRelation {
    /// The no-information value used when no predecessor frame exists.
    pub fn neutral() -> Self {
        QtcRelation {
            approach1: QtcApproach::Stable,
            approach2: QtcApproach::Stable,
            side1: QtcSide::Steady,
            side2: QtcSide::Steady,
        }
    }

    /// Relation as seen with the object roles exchanged.
    pub fn swap_roles(self) -> Self {
        QtcRelation {
            approach1: self.approach2,
            approach2: self.approach1,
            side1: self.side2,
            side2: self.side1,
        }
    }
}

fn dist(a: (f64, f64), b: (f64, f64)) -> f64 {
    ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt()
}

fn approach_component(prev: (f64, f64), cur: (f64, f64), other_prev: (f64, f64), tol: f64) -> QtcApproach {
    let delta = dist(cur, other_prev) - dist(prev, other_prev);
    if delta < -tol {
        QtcApproach::Towards
    } else if delta > tol {
        QtcApproach::Away
    } else {
        QtcApproach::Stable
    }
}

/// Side of the step `prev -> cur` relative to the reference line from `prev`
/// to `other_prev`, decided on the perpendicular offset against `tol`.
fn side_component(prev: (f64, f64), cur: (f64, f64), other_prev: (f64, f64), tol: f64) -> QtcSide {
    let dir = (other_prev.0 - prev.0, other_prev.1 - prev.1);
    let len = (dir.0 * dir.0 + dir.1 * dir.1).sqrt();
    if len == 0.0 {
        return QtcSide::Steady;
    }
    let disp = (cur.0 - prev.0, cur.1 - prev.1);
    let offset = (dir.0 * disp.1 - dir.1 * disp.0) / len;
    if offset > tol {
        QtcSide::Left
    } else if offset < -tol {
        QtcSide::Right
    } else {
        QtcSide::Steady
    }
}

/// Trajectory relation from the two objects' boxes at the previous and
/// current frame.
pub fn qtc_relation(
    b1_prev: &BoundingBox,
    b1_cur: &BoundingBox,
    b2_prev: &BoundingBox,
    b2_cur: &BoundingBox,
    tol: f64,
) -> Result<QtcRelation> {
    for b in [b1_prev, b1_cur, b2_prev, b2_cur] {
        b.validate()?;
    }
    if tol < 0.0 {
        return Err(Error::InvalidInput("qtc tolerance must be >= 0".into()));
    }
    let p1 = b1_prev.centroid();
    let c1 = b1_cur.centroid();
    let p2 = b2_prev.centroid();
    let c2 = b2_cur.centroid();
    Ok(QtcRelation {
        approach1: approach_component(p1, c1, p2, tol),
        approach2: approach_component(p2, c2, p1, tol),
        side1: side_component(p1, c1, p2, tol),
        side2: side_component(p2, c2, p1, tol),
    })
}

// ---------------------------------------------------------------------------
// Allen interval relations / rectangle algebra
// ---------------------------------------------------------------------------

/// The 13 Allen interval relations: the six base relations plus equality,
/// then the six inverses in matching order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AllenRelation {
    Before,
    Meets,
    Overlaps,
    Starts,
    During,
    Finishes,
    Equals,
    After,
    MetBy,
    OverlappedBy,
    StartedBy,
    Contains,
    FinishedBy,
}

impl AllenRelation {
    pub const CARDINALITY: usize = 13;

    pub const ALL: [AllenRelation; 13] = [
        AllenRelation::Before,
        AllenRelation::Meets,
        AllenRelation::Overlaps,
        AllenRelation::Starts,
        AllenRelation::During,
        AllenRelation::Finishes,
        AllenRelation::Equals,
        AllenRelation::After,
        AllenRelation::MetBy,
        AllenRelation::OverlappedBy,
        AllenRelation::StartedBy,
        AllenRelation::Contains,
        AllenRelation::FinishedBy,
    ];

    pub fn code(self) -> usize {
        Self::ALL.iter().position(|&r| r == self).unwrap()
    }

    pub fn from_code(code: usize) -> Option<Self> {
        Self::ALL.get(code).copied()
    }

    pub fn inverse(self) -> Self {
        match self {
            AllenRelation::Before => AllenRelation::After,
            AllenRelation::Meets => AllenRelation::MetBy,
            AllenRelation::Overlaps => AllenRelation::OverlappedBy,
            AllenRelation::Starts => AllenRelation::StartedBy,
            AllenRelation::During => AllenRelation::Contains,
            AllenRelation::Finishes => AllenRelation::FinishedBy,
            AllenRelation::Equals => AllenRelation::Equals,
            AllenRelation::After => AllenRelation::Before,
            AllenRelation::MetBy => AllenRelation::Meets,
            AllenRelation::OverlappedBy => AllenRelation::Overlaps,
            AllenRelation::StartedBy => AllenRelation::Starts,
            AllenRelation::Contains => AllenRelation::During,
            AllenRelation::FinishedBy => AllenRelation::Finishes,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cmp {
    Lt,
    Eq,
    Gt,
}

fn cmp_tol(a: f64, b: f64, delta: f64) -> Cmp {
    if (a - b).abs() <= delta {
        Cmp::Eq
    } else if a < b {
        Cmp::Lt
    } else {
        Cmp::Gt
    }
}

/// Allen relation between intervals `[a_lo, a_hi]` and `[b_lo, b_hi]`, with
/// endpoint equality decided at absolute tolerance `delta`.
pub fn allen_relation(a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64, delta: f64) -> Result<AllenRelation> {
    for v in [a_lo, a_hi, b_lo, b_hi] {
        if !v.is_finite() {
            return Err(Error::InvalidInput("interval endpoint not finite".into()));
        }
    }
    if !(a_lo < a_hi) || !(b_lo < b_hi) {
        return Err(Error::InvalidInput(format!(
            "degenerate interval: [{a_lo}, {a_hi}] vs [{b_lo}, {b_hi}]"
        )));
    }
    let lo = cmp_tol(a_lo, b_lo, delta);
    let hi = cmp_tol(a_hi, b_hi, delta);
    Ok(match (lo, hi) {
        (Cmp::Eq, Cmp::Eq) => AllenRelation::Equals,
        (Cmp::Eq, Cmp::Lt) => AllenRelation::Starts,
        (Cmp::Eq, Cmp::Gt) => AllenRelation::StartedBy,
        (Cmp::Gt, Cmp::Eq) => AllenRelation::Finishes,
        (Cmp::Lt, Cmp::Eq) => AllenRelation::FinishedBy,
        (Cmp::Lt, Cmp::Gt) => AllenRelation::Contains,
        (Cmp::Gt, Cmp::Lt) => AllenRelation::During,
        (Cmp::Lt, Cmp::Lt) => match cmp_tol(a_hi, b_lo, delta) {
            Cmp::Lt => AllenRelation::Before,
            Cmp::Eq => AllenRelation::Meets,
            Cmp::Gt => AllenRelation::Overlaps,
        },
        (Cmp::Gt, Cmp::Gt) => match cmp_tol(a_lo, b_hi, delta) {
            Cmp::Gt => AllenRelation::After,
            Cmp::Eq => AllenRelation::MetBy,
            Cmp::Lt => AllenRelation::OverlappedBy,
        },
    })
}

// ---------------------------------------------------------------------------
// Combined per-frame relation
// ---------------------------------------------------------------------------

/// The full relation label on a QXG edge for one frame: one value per
/// calculus, rectangle algebra split into its two axis projections.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QualRelation {
    pub qdc: QdcRelation,
    pub qtc: QtcRelation,
    pub ra_x: AllenRelation,
    pub ra_y: AllenRelation,
}

impl QualRelation {
    /// Computes the relation for objects at the current frame; `prev` boxes
    /// are needed for the trajectory component and default it to
    /// stable/steady when absent.
    pub fn compute(
        b1_cur: &BoundingBox,
        b2_cur: &BoundingBox,
        prev: Option<(&BoundingBox, &BoundingBox)>,
        cfg: &CalculiConfig,
    ) -> Result<QualRelation> {
        let qdc = qdc_relation(b1_cur, b2_cur, cfg)?;
        let qtc = match prev {
            Some((b1_prev, b2_prev)) => qtc_relation(b1_prev, b1_cur, b2_prev, b2_cur, cfg.qtc_tol)?,
            None => QtcRelation::neutral(),
        };
        let ra_x = allen_relation(b1_cur.x_min, b1_cur.x_max, b2_cur.x_min, b2_cur.x_max, cfg.allen_delta)?;
        let ra_y = allen_relation(b1_cur.y_min, b1_cur.y_max, b2_cur.y_min, b2_cur.y_max, cfg.allen_delta)?;
        Ok(QualRelation { qdc, qtc, ra_x, ra_y })
    }

    /// The same relation expressed with the object roles exchanged: distance
    /// is symmetric, trajectory components swap, interval relations invert.
    pub fn swap_roles(self) -> Self {
        QualRelation {
            qdc: self.qdc,
            qtc: self.qtc.swap_roles(),
            ra_x: self.ra_x.inverse(),
            ra_y: self.ra_y.inverse(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bb(x_min: f64, y_min: f64, x_max: f64, y_max: f64) -> BoundingBox {
        BoundingBox::new(x_min, y_min, x_max, y_max).unwrap()
    }

    fn cfg(t1: f64, t2: f64, t3: f64) -> CalculiConfig {
        CalculiConfig {
            theta1: t1,
            theta2: t2,
            theta3: t3,
            ..CalculiConfig::default()
        }
    }

    #[test]
    fn qdc_coincident_centroids_is_very_close() {
        let c = cfg(2.0, 5.0, 10.0);
        let b1 = bb(0.0, 0.0, 2.0, 2.0);
        let b2 = bb(0.5, 0.5, 1.5, 1.5);
        assert_eq!(qdc_relation(&b1, &b2, &c).unwrap(), QdcRelation::VeryClose);
    }

    #[test]
    fn qdc_six_meters_apart_is_far() {
        let c = cfg(2.0, 5.0, 10.0);
        let b1 = bb(0.0, 0.0, 1.0, 1.0);
        let b2 = bb(0.0, 6.0, 1.0, 7.0);
        assert_eq!(qdc_relation(&b1, &b2, &c).unwrap(), QdcRelation::Far);
    }

    #[test]
    fn qdc_diagonal_distance_exceeds_largest_threshold() {
        // centroids (1,1) and (11,11): d = sqrt(200) ~ 14.14 > 10
        let c = cfg(2.0, 5.0, 10.0);
        let b1 = bb(0.0, 0.0, 2.0, 2.0);
        let b2 = bb(10.0, 10.0, 12.0, 12.0);
        let d = (200.0f64).sqrt();
        assert!(d > 10.0);
        assert_eq!(qdc_relation(&b1, &b2, &c).unwrap(), QdcRelation::VeryFar);
    }

    #[test]
    fn qdc_rejects_invalid_thresholds_and_boxes() {
        let bad = cfg(5.0, 2.0, 10.0);
        let b = bb(0.0, 0.0, 1.0, 1.0);
        assert!(qdc_relation(&b, &b, &bad).is_err());
    }

    #[test]
    fn qtc_motionless_objects_are_neutral() {
        let b1 = bb(0.0, 0.0, 1.0, 1.0);
        let b2 = bb(5.0, 0.0, 6.0, 1.0);
        let r = qtc_relation(&b1, &b1, &b2, &b2, 0.01).unwrap();
        assert_eq!(r, QtcRelation::neutral());
    }

    #[test]
    fn qtc_head_on_approach() {
        let b1_prev = bb(0.0, 0.0, 1.0, 1.0);
        // straight at object 2's previous centroid (5.5, 0.5)
        let b1_cur = bb(2.0, 0.0, 3.0, 1.0);
        let b2 = bb(5.0, 0.0, 6.0, 1.0);
        let r = qtc_relation(&b1_prev, &b1_cur, &b2, &b2, 0.01).unwrap();
        assert_eq!(r.approach1, QtcApproach::Towards);
        assert_eq!(r.approach2, QtcApproach::Stable);
        assert_eq!(r.side1, QtcSide::Steady);
        assert_eq!(r.side2, QtcSide::Steady);
    }

    #[test]
    fn qtc_diagonal_step_lands_left_of_reference_line() {
        // Hand oracle: o1 centroid (0,0) -> (1,1), o2 still at (5,0).
        // dist change: sqrt(17) - 5 < -tol so towards; cross product
        // (5,0) x (1,1) = 5 > 0 so the step is left of the line to o2.
        let b1_prev = bb(-0.5, -0.5, 0.5, 0.5);
        let b1_cur = bb(0.5, 0.5, 1.5, 1.5);
        let b2 = bb(4.5, -0.5, 5.5, 0.5);
        let delta = (17.0f64).sqrt() - 5.0;
        assert!(delta < -0.01);
        let r = qtc_relation(&b1_prev, &b1_cur, &b2, &b2, 0.01).unwrap();
        assert_eq!(r.approach1, QtcApproach::Towards);
        assert_eq!(r.approach2, QtcApproach::Stable);
        assert_eq!(r.side1, QtcSide::Left);
        assert_eq!(r.side2, QtcSide::Steady);
    }

    #[test]
    fn allen_identity_is_equals() {
        assert_eq!(
            allen_relation(0.0, 1.0, 0.0, 1.0, 1e-9).unwrap(),
            AllenRelation::Equals
        );
    }

    #[test]
    fn allen_disjoint_ordered_is_before() {
        assert_eq!(
            allen_relation(0.0, 1.0, 2.0, 3.0, 1e-9).unwrap(),
            AllenRelation::Before
        );
    }

    #[test]
    fn allen_strict_containment_is_contains() {
        let r = allen_relation(0.0, 5.0, 1.0, 2.0, 1e-9).unwrap();
        assert_eq!(r, AllenRelation::Contains);
        // cross-check against the definitional oracle
        let holds = oracle_relations(0.0, 5.0, 1.0, 2.0, 1e-9);
        assert_eq!(holds, vec![AllenRelation::Contains]);
    }

    #[test]
    fn allen_rejects_degenerate_interval() {
        assert!(allen_relation(1.0, 1.0, 0.0, 2.0, 1e-9).is_err());
        assert!(allen_relation(0.0, f64::INFINITY, 0.0, 2.0, 1e-9).is_err());
    }

    /// Independent definitional predicates for all 13 relations.
    fn oracle_relations(a_lo: f64, a_hi: f64, b_lo: f64, b_hi: f64, d: f64) -> Vec<AllenRelation> {
        let eq = |u: f64, v: f64| (u - v).abs() <= d;
        let lt = |u: f64, v: f64| u < v && !eq(u, v);
        let gt = |u: f64, v: f64| u > v && !eq(u, v);
        let mut out = Vec::new();
        if lt(a_hi, b_lo) {
            out.push(AllenRelation::Before);
        }
        if eq(a_hi, b_lo) {
            out.push(AllenRelation::Meets);
        }
        if lt(a_lo, b_lo) && gt(a_hi, b_lo) && lt(a_hi, b_hi) {
            out.push(AllenRelation::Overlaps);
        }
        if eq(a_lo, b_lo) && lt(a_hi, b_hi) {
            out.push(AllenRelation::Starts);
        }
        if gt(a_lo, b_lo) && lt(a_hi, b_hi) {
            out.push(AllenRelation::During);
        }
        if gt(a_lo, b_lo) && eq(a_hi, b_hi) {
            out.push(AllenRelation::Finishes);
        }
        if eq(a_lo, b_lo) && eq(a_hi, b_hi) {
            out.push(AllenRelation::Equals);
        }
        if gt(a_lo, b_hi) {
            out.push(AllenRelation::After);
        }
        if eq(a_lo, b_hi) {
            out.push(AllenRelation::MetBy);
        }
        if gt(a_lo, b_lo) && lt(a_lo, b_hi) && gt(a_hi, b_hi) {
            out.push(AllenRelation::OverlappedBy);
        }
        if eq(a_lo, b_lo) && gt(a_hi, b_hi) {
            out.push(AllenRelation::StartedBy);
        }
        if lt(a_lo, b_lo) && gt(a_hi, b_hi) {
            out.push(AllenRelation::Contains);
        }
        if lt(a_lo, b_lo) && eq(a_hi, b_hi) {
            out.push(AllenRelation::FinishedBy);
        }
        out
    }

    #[test]
    fn allen_inverse_is_an_involution() {
        for r in AllenRelation::ALL {
            assert_eq!(r.inverse().inverse(), r);
        }
    }

    #[test]
    fn allen_codes_are_a_bijection() {
        for (i, r) in AllenRelation::ALL.iter().enumerate() {
            assert_eq!(r.code(), i);
            assert_eq!(AllenRelation::from_code(i), Some(*r));
        }
        assert_eq!(AllenRelation::from_code(13), None);
    }

    /// Intervals on a coarse grid so exact endpoint ties occur often.
    fn grid_interval() -> impl Strategy<Value = (f64, f64)> {
        (0i32..40, 1i32..20).prop_map(|(lo, len)| {
            let lo = lo as f64 * 0.25;
            (lo, lo + len as f64 * 0.25)
        })
    }

    proptest! {
        #[test]
        fn allen_is_jepd_and_matches_oracle(
            (a_lo, a_hi) in grid_interval(),
            (b_lo, b_hi) in grid_interval(),
        ) {
            let delta = 1e-9;
            let got = allen_relation(a_lo, a_hi, b_lo, b_hi, delta).unwrap();
            let holds = oracle_relations(a_lo, a_hi, b_lo, b_hi, delta);
            prop_assert_eq!(holds.len(), 1, "JEPD violated for [{},{}] vs [{},{}]", a_lo, a_hi, b_lo, b_hi);
            prop_assert_eq!(holds[0], got);
        }

        #[test]
        fn allen_swap_is_inverse(
            (a_lo, a_hi) in grid_interval(),
            (b_lo, b_hi) in grid_interval(),
        ) {
            let r_ab = allen_relation(a_lo, a_hi, b_lo, b_hi, 1e-9).unwrap();
            let r_ba = allen_relation(b_lo, b_hi, a_lo, a_hi, 1e-9).unwrap();
            prop_assert_eq!(r_ab.inverse(), r_ba);
        }

        #[test]
        fn qdc_is_symmetric(
            x1 in -30.0f64..30.0, y1 in -30.0f64..30.0,
            x2 in -30.0f64..30.0, y2 in -30.0f64..30.0,
        ) {
            let c = CalculiConfig::default();
            let b1 = bb(x1, y1, x1 + 1.0, y1 + 1.0);
            let b2 = bb(x2, y2, x2 + 1.5, y2 + 0.5);
            prop_assert_eq!(
                qdc_relation(&b1, &b2, &c).unwrap(),
                qdc_relation(&b2, &b1, &c).unwrap()
            );
        }

        #[test]
        fn qtc_role_swap_swaps_components(
            p1x in -10.0f64..10.0, p1y in -10.0f64..10.0,
            c1x in -10.0f64..10.0, c1y in -10.0f64..10.0,
            p2x in -10.0f64..10.0, p2y in -10.0f64..10.0,
            c2x in -10.0f64..10.0, c2y in -10.0f64..10.0,
        ) {
            let b1p = bb(p1x, p1y, p1x + 1.0, p1y + 1.0);
            let b1c = bb(c1x, c1y, c1x + 1.0, c1y + 1.0);
            let b2p = bb(p2x, p2y, p2x + 1.0, p2y + 1.0);
            let b2c = bb(c2x, c2y, c2x + 1.0, c2y + 1.0);
            let fwd = qtc_relation(&b1p, &b1c, &b2p, &b2c, 0.05).unwrap();
            let rev = qtc_relation(&b2p, &b2c, &b1p, &b1c, 0.05).unwrap();
            prop_assert_eq!(fwd.swap_roles(), rev);
        }
    }
}
