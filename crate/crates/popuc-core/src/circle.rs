//! Points on the unit circle, stored as principal angles, and finite circular
//! point sets with a declared floating-point equality policy.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::tol;

pub const TAU: f64 = 2.0 * std::f64::consts::PI;

/// A point of the unit circle as its canonical angle in [0, 2π).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CirclePoint {
    angle: f64,
}

impl CirclePoint {
    pub fn from_angle(theta: f64) -> Self {
        let mut a = theta.rem_euclid(TAU);
        // rem_euclid can return exactly TAU after rounding at the seam.
        if a >= TAU {
            a = 0.0;
        }
        Self { angle: a }
    }

    /// Angle of a nonzero complex number; modulus is ignored.
    pub fn from_complex(z: Complex64) -> Self {
        Self::from_angle(z.arg())
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }

    /// Geodesic distance on the circle: min(|Δθ|, 2π − |Δθ|).
    pub fn distance(&self, other: &CirclePoint) -> f64 {
        angular_distance(self.angle, other.angle)
    }
}

pub fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(TAU);
    d.min(TAU - d)
}

/// Sorted set of circle points. Construction collapses points closer than the
/// matching tolerance and remembers that it did.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CircularPointSet {
    points: Vec<CirclePoint>,
    label: String,
    collapsed_duplicates: bool,
}

impl CircularPointSet {
    pub fn new(mut points: Vec<CirclePoint>, label: impl Into<String>) -> Self {
        points.sort_by(|a, b| a.angle.partial_cmp(&b.angle).unwrap());
        let mut deduped: Vec<CirclePoint> = Vec::with_capacity(points.len());
        let mut collapsed = false;
        for p in points {
            if let Some(last) = deduped.last() {
                if last.distance(&p) <= tol::EPS_MATCH {
                    collapsed = true;
                    continue;
                }
            }
            deduped.push(p);
        }
        // The seam: first and last may collide across 0 ≡ 2π.
        if deduped.len() > 1 {
            let first = deduped[0];
            let last = *deduped.last().unwrap();
            if first.distance(&last) <= tol::EPS_MATCH {
                deduped.pop();
                collapsed = true;
            }
        }
        Self {
            points: deduped,
            label: label.into(),
            collapsed_duplicates: collapsed,
        }
    }

    pub fn from_angles(angles: &[f64], label: impl Into<String>) -> Self {
        Self::new(angles.iter().map(|&a| CirclePoint::from_angle(a)).collect(), label)
    }

    pub fn points(&self) -> &[CirclePoint] {
        &self.points
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn collapsed_duplicates(&self) -> bool {
        self.collapsed_duplicates
    }

    pub fn contains(&self, p: &CirclePoint, eps: f64) -> bool {
        self.points.iter().any(|q| q.distance(p) <= eps)
    }

    /// Smallest angular gap between consecutive points (2π for singletons).
    pub fn min_gap(&self) -> f64 {
        let n = self.points.len();
        if n < 2 {
            return TAU;
        }
        (0..n)
            .map(|i| {
                let a = self.points[i].angle;
                let b = self.points[(i + 1) % n].angle;
                (b - a).rem_euclid(TAU)
            })
            .fold(TAU, f64::min)
    }

    /// Points of `self` matched into `other` (taken from `self`).
    pub fn intersection(&self, other: &Self, eps: f64, label: impl Into<String>) -> Self {
        let kept = self
            .points
            .iter()
            .filter(|p| other.contains(p, eps))
            .cloned()
            .collect();
        Self::new(kept, label)
    }

    /// Points of `self` not matched into `other`.
    pub fn difference(&self, other: &Self, eps: f64, label: impl Into<String>) -> Self {
        let kept = self
            .points
            .iter()
            .filter(|p| !other.contains(p, eps))
            .cloned()
            .collect();
        Self::new(kept, label)
    }

    pub fn union(&self, other: &Self, label: impl Into<String>) -> Self {
        let mut pts = self.points.clone();
        pts.extend_from_slice(&other.points);
        Self::new(pts, label)
    }
}

/// Result of nearest-neighbor matching of two circular point sets.
#[derive(Debug, Clone)]
pub struct SetMatch {
    /// Index pairs (into a, into b) accepted as the same point.
    pub pairs: Vec<(usize, usize)>,
    /// Some match had a runner-up closer than the ambiguity factor allows.
    pub ambiguous: bool,
}

/// Matches points of `a` to points of `b` within `eps`. A pair is accepted
/// only when the second-nearest candidate sits at least
/// [`tol::MATCH_AMBIGUITY_FACTOR`]× farther away than the match.
pub fn match_point_sets(a: &[CirclePoint], b: &[CirclePoint], eps: f64) -> SetMatch {
    let mut pairs = Vec::new();
    let mut ambiguous = false;
    let mut taken = vec![false; b.len()];
    for (i, p) in a.iter().enumerate() {
        let mut d1 = f64::INFINITY;
        let mut d2 = f64::INFINITY;
        let mut j1 = usize::MAX;
        for (j, q) in b.iter().enumerate() {
            let d = p.distance(q);
            if d < d1 {
                d2 = d1;
                d1 = d;
                j1 = j;
            } else if d < d2 {
                d2 = d;
            }
        }
        if d1 <= eps {
            if d2 < tol::MATCH_AMBIGUITY_FACTOR * d1 || taken[j1] {
                ambiguous = true;
            }
            if !taken[j1] {
                taken[j1] = true;
                pairs.push((i, j1));
            }
        }
    }
    SetMatch { pairs, ambiguous }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_angle_lands_in_range() {
        assert!((CirclePoint::from_angle(-0.5).angle() - (TAU - 0.5)).abs() < 1e-15);
        assert_eq!(CirclePoint::from_angle(TAU).angle(), 0.0);
        assert_eq!(CirclePoint::from_angle(0.0).angle(), 0.0);
        let nearly = CirclePoint::from_angle(-1e-18);
        assert!(nearly.angle() < TAU);
    }

    #[test]
    fn distance_wraps_the_seam() {
        let a = CirclePoint::from_angle(0.01);
        let b = CirclePoint::from_angle(TAU - 0.01);
        assert!((a.distance(&b) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn duplicate_collapse_sets_flag() {
        let s = CircularPointSet::from_angles(&[1.0, 1.0 + 1e-12, 2.0], "s");
        assert_eq!(s.len(), 2);
        assert!(s.collapsed_duplicates());
        let t = CircularPointSet::from_angles(&[1.0, 2.0], "t");
        assert!(!t.collapsed_duplicates());
    }

    #[test]
    fn seam_duplicates_collapse_too() {
        let s = CircularPointSet::from_angles(&[1e-12, 3.0, TAU - 1e-12], "s");
        assert_eq!(s.len(), 2);
        assert!(s.collapsed_duplicates());
    }

    #[test]
    fn set_algebra_uses_angular_matching() {
        let a = CircularPointSet::from_angles(&[0.0, 1.0, 2.0], "a");
        let b = CircularPointSet::from_angles(&[1.0 + 1e-10, 3.0], "b");
        assert_eq!(a.intersection(&b, tol::EPS_MATCH, "i").len(), 1);
        assert_eq!(a.difference(&b, tol::EPS_MATCH, "d").len(), 2);
        assert_eq!(a.union(&b, "u").len(), 4);
    }

    #[test]
    fn matching_flags_ambiguity() {
        let a = vec![CirclePoint::from_angle(1.0)];
        let b = vec![
            CirclePoint::from_angle(1.0 + 1e-9),
            CirclePoint::from_angle(1.0 + 3e-9),
        ];
        let m = match_point_sets(&a, &b, tol::EPS_MATCH);
        assert_eq!(m.pairs.len(), 1);
        assert!(m.ambiguous);

        let b2 = vec![
            CirclePoint::from_angle(1.0 + 1e-12),
            CirclePoint::from_angle(2.0),
        ];
        let m2 = match_point_sets(&a, &b2, tol::EPS_MATCH);
        assert_eq!(m2.pairs, vec![(0, 0)]);
        assert!(!m2.ambiguous);
    }
}
