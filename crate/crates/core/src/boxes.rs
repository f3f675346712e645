//! Finite unions of axis-aligned boxes with closed (possibly unbounded)
//! coordinate intervals.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{Extended, Scalar};
use crate::search::Cardinality;

/// `[lo, hi]`, closed at finite endpoints. Serialized as `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(Extended, Extended)", into = "(Extended, Extended)")]
pub struct Interval {
    lo: Extended,
    hi: Extended,
}

impl Interval {
    pub fn new(lo: Extended, hi: Extended) -> Result<Self> {
        if lo > hi || lo == Extended::PosInf || hi == Extended::NegInf {
            return Err(Error::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: Scalar) -> Self {
        Interval { lo: Extended::Finite(v.clone()), hi: Extended::Finite(v) }
    }

    pub fn lo(&self) -> &Extended {
        &self.lo
    }

    pub fn hi(&self) -> &Extended {
        &self.hi
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: &Scalar) -> bool {
        let v = Extended::Finite(v.clone());
        self.lo <= v && v <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl TryFrom<(Extended, Extended)> for Interval {
    type Error = Error;
    fn try_from((lo, hi): (Extended, Extended)) -> Result<Self> {
        Interval::new(lo, hi)
    }
}

impl From<Interval> for (Extended, Extended) {
    fn from(i: Interval) -> Self {
        (i.lo, i.hi)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of one interval per coordinate.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntervalBox(pub Vec<Interval>);

impl IntervalBox {
    pub fn point(x: &[Scalar]) -> Self {
        IntervalBox(x.iter().cloned().map(Interval::point).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        x.len() == self.dim() && self.0.iter().zip(x).all(|(iv, v)| iv.contains(v))
    }

    pub fn contains_box(&self, other: &IntervalBox) -> bool {
        self.dim() == other.dim() && self.0.iter().zip(&other.0).all(|(a, b)| a.contains_interval(b))
    }

    pub fn is_point(&self) -> bool {
        self.0.iter().all(Interval::is_point)
    }

    /// The single point of a degenerate box.
    pub fn as_point(&self) -> Option<Vec<Scalar>> {
        self.0
            .iter()
            .map(|iv| if iv.is_point() { iv.lo.finite().cloned() } else { None })
            .collect()
    }

    /// Corners with finite coordinates (unbounded sides replaced by the
    /// finite end, or by `end -/+ 1` when both ends are infinite).
    pub fn sample_points(&self) -> Vec<Vec<Scalar>> {
        let choices: Vec<Vec<Scalar>> = self.0.iter().map(sample_coordinate).collect();
        choices.into_iter().multi_cartesian_product().collect()
    }
}

fn sample_coordinate(iv: &Interval) -> Vec<Scalar> {
    let one = Scalar::one();
    let mut out = match (&iv.lo, &iv.hi) {
        (Extended::Finite(a), Extended::Finite(b)) if a == b => vec![a.clone()],
        (Extended::Finite(a), Extended::Finite(b)) => vec![a.clone(), Scalar::midpoint(a, b), b.clone()],
        (Extended::Finite(a), Extended::PosInf) => vec![a.clone(), a + &one],
        (Extended::NegInf, Extended::Finite(b)) => vec![b - &one, b.clone()],
        _ => vec![Scalar::zero()],
    };
    out.dedup();
    out
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.iter().join(" x "))
    }
}

impl fmt::Debug for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Finite union of boxes of a common dimension.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawUnion")]
pub struct BoxUnion {
    dim: usize,
    boxes: Vec<IntervalBox>,
}

#[derive(Deserialize)]
struct RawUnion {
    dim: usize,
    boxes: Vec<IntervalBox>,
}

impl TryFrom<RawUnion> for BoxUnion {
    type Error = Error;

    fn try_from(raw: RawUnion) -> Result<Self> {
        BoxUnion::new(raw.dim, raw.boxes)
    }
}

impl BoxUnion {
    pub fn empty(dim: usize) -> Self {
        BoxUnion { dim, boxes: Vec::new() }
    }

    pub fn new(dim: usize, boxes: Vec<IntervalBox>) -> Result<Self> {
        if let Some(b) = boxes.iter().find(|b| b.dim() != dim) {
            return Err(Error::DimensionMismatch { what: "box", expected: dim, found: b.dim() });
        }
        Ok(BoxUnion { dim, boxes })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn boxes(&self) -> &[IntervalBox] {
        &self.boxes
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn push(&mut self, b: IntervalBox) -> Result<()> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch { what: "box", expected: self.dim, found: b.dim() });
        }
        self.boxes.push(b);
        Ok(())
    }

    pub fn extend(&mut self, other: BoxUnion) -> Result<()> {
        if other.dim != self.dim {
            return Err(Error::DimensionMismatch { what: "box union", expected: self.dim, found: other.dim });
        }
        self.boxes.extend(other.boxes);
        Ok(())
    }

    /// Sorts, deduplicates and drops boxes contained in another box.
    pub fn prune_contained(&mut self) {
        self.boxes.sort();
        self.boxes.dedup();
        let keep: Vec<bool> = (0..self.boxes.len())
            .map(|k| {
                !self
                    .boxes
                    .iter()
                    .enumerate()
                    .any(|(l, other)| l != k && other.contains_box(&self.boxes[k]))
            })
            .collect();
        let mut flags = keep.into_iter();
        self.boxes.retain(|_| flags.next().unwrap_or(true));
    }

    /// Repeatedly fuses two boxes that agree on all but one coordinate where
    /// their intervals overlap or touch, then prunes contained boxes.
    pub fn coalesce(&mut self) {
        self.prune_contained();
        'outer: loop {
            for k in 0..self.boxes.len() {
                for l in k + 1..self.boxes.len() {
                    if let Some(fused) = fuse(&self.boxes[k], &self.boxes[l]) {
                        self.boxes.swap_remove(l);
                        self.boxes[k] = fused;
                        self.prune_contained();
                        continue 'outer;
                    }
                }
            }
            break;
        }
    }

    /// Number of points, or `Infinite` once any box has extent. The count
    /// assumes degenerate boxes are distinct points after deduplication.
    pub fn cardinality(&self) -> Cardinality {
        if self.boxes.iter().any(|b| !b.is_point()) {
            return Cardinality::Infinite;
        }
        let points: std::collections::BTreeSet<_> = self.boxes.iter().filter_map(IntervalBox::as_point).collect();
        Cardinality::Finite(points.len())
    }
}

fn fuse(u: &IntervalBox, v: &IntervalBox) -> Option<IntervalBox> {
    let mut differing = (0..u.dim()).filter(|&j| u.0[j] != v.0[j]);
    let c = differing.next()?;
    if differing.next().is_some() {
        return None;
    }
    let (a, b) = (&u.0[c], &v.0[c]);
    if a.hi < b.lo || b.hi < a.lo {
        return None;
    }
    let mut out = u.clone();
    out.0[c] = Interval { lo: a.lo.clone().min(b.lo.clone()), hi: a.hi.clone().max(b.hi.clone()) };
    Some(out)
}

impl fmt::Debug for BoxUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.boxes.is_empty() {
            return write!(f, "(empty union in dimension {})", self.dim);
        }
        write!(f, "{}", self.boxes.iter().map(|b| format!("{{{b}}}")).join(" u "))
    }
}

/// True when `x` lies in some box of `u`.
pub fn member(u: &BoxUnion, x: &[Scalar]) -> bool {
    u.boxes.iter().any(|b| b.contains(x))
}

/// Sorted finite endpoints of all boxes, per coordinate.
fn endpoint_grid<'a>(dim: usize, unions: impl IntoIterator<Item = &'a BoxUnion>) -> Vec<Vec<Scalar>> {
    let mut grid = vec![Vec::new(); dim];
    for u in unions {
        for b in &u.boxes {
            for (j, iv) in b.0.iter().enumerate() {
                grid[j].extend(iv.lo.finite().cloned());
                grid[j].extend(iv.hi.finite().cloned());
            }
        }
    }
    for g in &mut grid {
        g.sort();
        g.dedup();
    }
    grid
}

/// One representative per grid position: each breakpoint, each gap midpoint,
/// and one point beyond each end.
pub(crate) fn position_representatives(breaks: &[Scalar]) -> Vec<Scalar> {
    if breaks.is_empty() {
        return vec![Scalar::zero()];
    }
    let one = Scalar::one();
    let mut reps = Vec::with_capacity(2 * breaks.len() + 1);
    reps.push(&breaks[0] - &one);
    for (k, b) in breaks.iter().enumerate() {
        reps.push(b.clone());
        match breaks.get(k + 1) {
            Some(next) => reps.push(Scalar::midpoint(b, next)),
            None => reps.push(b + &one),
        }
    }
    reps
}

/// Point-set equality, decided on the common refinement of both unions'
/// endpoints: every cell of that grid lies wholly inside or outside each box.
pub fn box_union_equal(u: &BoxUnion, v: &BoxUnion) -> Result<bool> {
    if u.dim != v.dim {
        return Err(Error::DimensionMismatch { what: "box union", expected: u.dim, found: v.dim });
    }
    if u.dim == 0 {
        return Ok(u.is_empty() == v.is_empty());
    }
    let reps: Vec<Vec<Scalar>> = endpoint_grid(u.dim, [u, v])
        .iter()
        .map(|b| position_representatives(b))
        .collect();
    Ok(reps
        .into_iter()
        .multi_cartesian_product()
        .all(|x| member(u, &x) == member(v, &x)))
}

/// True when every point of `inner` lies in `outer`.
pub fn box_union_subset(inner: &BoxUnion, outer: &BoxUnion) -> Result<bool> {
    if inner.dim != outer.dim {
        return Err(Error::DimensionMismatch { what: "box union", expected: outer.dim, found: inner.dim });
    }
    if inner.is_empty() {
        return Ok(true);
    }
    let reps: Vec<Vec<Scalar>> = endpoint_grid(inner.dim, [inner, outer])
        .iter()
        .map(|b| position_representatives(b))
        .collect();
    Ok(reps
        .into_iter()
        .multi_cartesian_product()
        .all(|x| !member(inner, &x) || member(outer, &x)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(v: i64) -> Extended {
        Extended::Finite(Scalar::from(v))
    }

    fn iv(lo: Extended, hi: Extended) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn pt(v: i64) -> Interval {
        Interval::point(Scalar::from(v))
    }

    #[test]
    fn coalesce_fuses_touching_boxes() {
        let mut u = BoxUnion::new(
            2,
            vec![
                IntervalBox(vec![pt(3), iv(fin(-6), fin(-3))]),
                IntervalBox(vec![pt(3), iv(fin(-3), fin(0))]),
                IntervalBox(vec![pt(3), iv(fin(2), fin(4))]),
                IntervalBox(vec![pt(4), pt(1)]),
            ],
        )
        .unwrap();
        let before = u.clone();
        u.coalesce();
        assert_eq!(
            u.boxes(),
            &[
                IntervalBox(vec![pt(3), iv(fin(-6), fin(0))]),
                IntervalBox(vec![pt(3), iv(fin(2), fin(4))]),
                IntervalBox(vec![pt(4), pt(1)]),
            ]
        );
        assert!(box_union_equal(&u, &before).unwrap());
    }

    #[test]
    fn deserialize_checks_dimension() {
        let ok: BoxUnion = serde_json::from_str(r#"{"dim":1,"boxes":[[["-inf","2"]]]}"#).unwrap();
        assert_eq!(ok.boxes()[0].0[0], iv(Extended::NegInf, fin(2)));
        assert!(serde_json::from_str::<BoxUnion>(r#"{"dim":2,"boxes":[[["0","2"]]]}"#).is_err());
        assert!(serde_json::from_str::<BoxUnion>(r#"{"dim":1,"boxes":[[["3","2"]]]}"#).is_err());
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(fin(2), fin(1)).is_err());
        assert!(Interval::new(Extended::PosInf, Extended::PosInf).is_err());
        assert!(Interval::new(Extended::NegInf, Extended::PosInf).is_ok());
    }

    #[test]
    fn split_box_equals_whole() {
        let whole = BoxUnion::new(2, vec![IntervalBox(vec![iv(fin(0), fin(4)), pt(1)])]).unwrap();
        let split = BoxUnion::new(
            2,
            vec![IntervalBox(vec![iv(fin(0), fin(2)), pt(1)]), IntervalBox(vec![iv(fin(2), fin(4)), pt(1)])],
        )
        .unwrap();
        assert!(box_union_equal(&whole, &whole).unwrap());
        assert!(box_union_equal(&whole, &split).unwrap());
        let gap = BoxUnion::new(
            2,
            vec![IntervalBox(vec![iv(fin(0), fin(1)), pt(1)]), IntervalBox(vec![iv(fin(2), fin(4)), pt(1)])],
        )
        .unwrap();
        assert!(!box_union_equal(&whole, &gap).unwrap());
        assert!(box_union_subset(&gap, &whole).unwrap());
        assert!(!box_union_subset(&whole, &gap).unwrap());
    }

    #[test]
    fn rays_and_membership() {
        let u = BoxUnion::new(1, vec![IntervalBox(vec![iv(Extended::NegInf, fin(-3))])]).unwrap();
        assert!(member(&u, &[Scalar::from(-100)]));
        assert!(member(&u, &[Scalar::from(-3)]));
        assert!(!member(&u, &[Scalar::from(-2)]));
        assert!(!member(&BoxUnion::empty(1), &[Scalar::zero()]));
        let v = BoxUnion::new(1, vec![IntervalBox(vec![iv(Extended::NegInf, fin(-2))])]).unwrap();
        assert!(!box_union_equal(&u, &v).unwrap());
        assert!(box_union_equal(&u, &BoxUnion::empty(2)).is_err());
    }

    #[test]
    fn pruning_and_cardinality() {
        let big = IntervalBox(vec![iv(fin(0), fin(4)), pt(1)]);
        let small = IntervalBox(vec![pt(2), pt(1)]);
        let mut u = BoxUnion::new(2, vec![small.clone(), big.clone(), big.clone()]).unwrap();
        u.prune_contained();
        assert_eq!(u.boxes(), &[big]);
        assert_eq!(u.cardinality(), Cardinality::Infinite);
        let pts = BoxUnion::new(2, vec![small.clone(), small, IntervalBox(vec![pt(0), pt(0)])]).unwrap();
        assert_eq!(pts.cardinality(), Cardinality::Finite(2));
        assert_eq!(BoxUnion::empty(3).cardinality(), Cardinality::Finite(0));
    }

    #[test]
    fn serde_shape() {
        let u = BoxUnion::new(2, vec![IntervalBox(vec![iv(Extended::NegInf, fin(-3)), pt(1)])]).unwrap();
        let js = serde_json::to_string(&u).unwrap();
        assert_eq!(js, r#"{"dim":2,"boxes":[[["-inf","-3"],["1","1"]]]}"#);
        let back: BoxUnion = serde_json::from_str(&js).unwrap();
        assert_eq!(back, u);
        assert!(serde_json::from_str::<Interval>(r#"["2","1"]"#).is_err());
    }
}
