use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// Orientation sign of a boundary point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// An object of the bicategory: a finite ordered list of signed points.
pub type PointConfig = Vec<Sign>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Source,
    Target,
}

/// A boundary slot: a position in the source or target configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot {
    pub side: Side,
    pub index: usize,
}

impl Slot {
    pub fn source(index: usize) -> Slot {
        Slot { side: Side::Source, index }
    }
    pub fn target(index: usize) -> Slot {
        Slot { side: Side::Target, index }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::Source => write!(f, "source[{}]", self.index),
            Side::Target => write!(f, "target[{}]", self.index),
        }
    }
}

/// Identifier of a framed 0-sphere whose two arcs are marked in a manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SphereId(pub u32);

/// One arc of a framed 0-sphere. Arc 0 runs with the ambient orientation,
/// arc 1 against it; the direction is derived from the index, never stored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcMark {
    pub sphere: SphereId,
    pub arc: u8,
}

impl ArcMark {
    pub fn new(sphere: SphereId, arc: u8) -> ArcMark {
        debug_assert!(arc < 2);
        ArcMark { sphere, arc }
    }
}

/// An interval component. Its intrinsic direction runs from the slot with
/// co-sign −1 to the slot with co-sign +1; `marks` lists occupancies in
/// ambient order along that direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    pub from: Slot,
    pub to: Slot,
    pub marks: Vec<ArcMark>,
}

impl Interval {
    pub fn new(from: Slot, to: Slot) -> Interval {
        Interval { from, to, marks: Vec::new() }
    }
}

/// A collared 1-cobordism in canonical form.
///
/// Canonical form: intervals sorted by their co-sign −1 slot, each marked
/// circle rotated to its lexicographically minimal rotation and the circles
/// sorted, bare circles kept only as a multiplicity. Equality of canonical
/// forms is the module's notion of equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cob1 {
    source: PointConfig,
    target: PointConfig,
    intervals: Vec<Interval>,
    marked_circles: Vec<Vec<ArcMark>>,
    bare_circles: usize,
}

impl fmt::Debug for Cob1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let src: Vec<String> = self.source.iter().map(|s| s.to_string()).collect();
        let tgt: Vec<String> = self.target.iter().map(|s| s.to_string()).collect();
        write!(f, "Cob1[{}] -> [{}]", src.join(""), tgt.join(""))?;
        for i in &self.intervals {
            write!(f, " {}->{}", i.from, i.to)?;
            if !i.marks.is_empty() {
                write!(f, "{:?}", i.marks)?;
            }
        }
        for c in &self.marked_circles {
            write!(f, " O{c:?}")?;
        }
        if self.bare_circles > 0 {
            write!(f, " O×{}", self.bare_circles)?;
        }
        Ok(())
    }
}

/// Rotate `v` left by `r`.
fn rotate<T: Clone>(v: &[T], r: usize) -> Vec<T> {
    let n = v.len();
    if n == 0 {
        return Vec::new();
    }
    let r = r % n;
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&v[r..]);
    out.extend_from_slice(&v[..r]);
    out
}

/// Lexicographically minimal rotation of a cyclic list.
pub(crate) fn min_rotation(v: &[ArcMark]) -> Vec<ArcMark> {
    if v.is_empty() {
        return Vec::new();
    }
    (0..v.len())
        .map(|r| rotate(v, r))
        .min()
        .unwrap()
}

impl Cob1 {
    /// Build and canonicalize; validates all slot and mark invariants.
    pub fn new(
        source: PointConfig,
        target: PointConfig,
        intervals: Vec<Interval>,
        marked_circles: Vec<Vec<ArcMark>>,
        bare_circles: usize,
    ) -> Result<Cob1> {
        let mut m = Cob1 {
            source,
            target,
            intervals,
            marked_circles,
            bare_circles,
        };
        m.canonicalize()?;
        Ok(m)
    }

    fn canonicalize(&mut self) -> Result<()> {
        // Slot usage: every boundary slot appears exactly once as an
        // interval endpoint, with the correct co-sign at each end.
        let mut seen: BTreeMap<Slot, ()> = BTreeMap::new();
        for iv in &self.intervals {
            for (slot, expect) in [(iv.from, -1i8), (iv.to, 1i8)] {
                let sign = self.slot_sign(slot).ok_or_else(|| {
                    Error::Validation(format!("interval endpoint {slot} is out of range"))
                })?;
                let co = if slot.side == Side::Target { sign } else { sign.flip() };
                let co = if co == Sign::Plus { 1 } else { -1 };
                if co != expect {
                    return Err(Error::Validation(format!(
                        "interval endpoint {slot} has co-sign {co}, expected {expect}"
                    )));
                }
                if seen.insert(slot, ()).is_some() {
                    return Err(Error::Validation(format!("slot {slot} used twice")));
                }
            }
        }
        let expected = self.source.len() + self.target.len();
        if seen.len() != expected {
            return Err(Error::Validation(format!(
                "{} boundary slots but {} interval endpoints",
                expected,
                seen.len()
            )));
        }
        // Sphere marks: each sphere present must contribute arc 0 and arc 1
        // exactly once each, anywhere in the manifold.
        let mut arcs: BTreeMap<SphereId, [usize; 2]> = BTreeMap::new();
        let all_marks = self
            .intervals
            .iter()
            .flat_map(|i| i.marks.iter())
            .chain(self.marked_circles.iter().flatten());
        for mark in all_marks {
            if mark.arc > 1 {
                return Err(Error::Validation(format!(
                    "arc index {} out of range for sphere {:?}",
                    mark.arc, mark.sphere
                )));
            }
            arcs.entry(mark.sphere).or_insert([0, 0])[mark.arc as usize] += 1;
        }
        for (sphere, counts) in &arcs {
            if *counts != [1, 1] {
                return Err(Error::Validation(format!(
                    "sphere {sphere:?} has arc multiplicities {counts:?}, expected [1, 1]"
                )));
            }
        }
        // Canonical ordering.
        self.intervals.sort_by_key(|i| i.from);
        let mut marked = Vec::new();
        for c in std::mem::take(&mut self.marked_circles) {
            if c.is_empty() {
                self.bare_circles += 1;
            } else {
                marked.push(min_rotation(&c));
            }
        }
        marked.sort();
        self.marked_circles = marked;
        Ok(())
    }

    fn slot_sign(&self, slot: Slot) -> Option<Sign> {
        match slot.side {
            Side::Source => self.source.get(slot.index).copied(),
            Side::Target => self.target.get(slot.index).copied(),
        }
    }

    /// Co-sign of a boundary slot: the sign of the point for target slots,
    /// its flip for source slots.
    pub fn co_sign(&self, slot: Slot) -> Option<i8> {
        let sign = self.slot_sign(slot)?;
        let co = if slot.side == Side::Target { sign } else { sign.flip() };
        Some(if co == Sign::Plus { 1 } else { -1 })
    }

    pub fn source(&self) -> &PointConfig {
        &self.source
    }

    pub fn target(&self) -> &PointConfig {
        &self.target
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn marked_circles(&self) -> &[Vec<ArcMark>] {
        &self.marked_circles
    }

    pub fn bare_circles(&self) -> usize {
        self.bare_circles
    }

    pub fn is_unmarked(&self) -> bool {
        self.marked_circles.is_empty() && self.intervals.iter().all(|i| i.marks.is_empty())
    }

    pub fn sphere_ids(&self) -> Vec<SphereId> {
        let mut ids: Vec<SphereId> = self
            .intervals
            .iter()
            .flat_map(|i| i.marks.iter())
            .chain(self.marked_circles.iter().flatten())
            .map(|m| m.sphere)
            .collect();
        ids.sort();
        ids.dedup();
        ids
    }

    /// The empty 1-morphism `∅ → ∅`.
    pub fn empty() -> Cob1 {
        Cob1::new(vec![], vec![], vec![], vec![], 0).unwrap()
    }

    /// Identity cylinder on a configuration.
    pub fn identity(config: &PointConfig) -> Cob1 {
        let intervals = config
            .iter()
            .enumerate()
            .map(|(i, s)| match s {
                Sign::Plus => Interval::new(Slot::source(i), Slot::target(i)),
                Sign::Minus => Interval::new(Slot::target(i), Slot::source(i)),
            })
            .collect();
        Cob1::new(config.clone(), config.clone(), intervals, vec![], 0).unwrap()
    }

    /// One bare circle, as a morphism `∅ → ∅`.
    pub fn circle() -> Cob1 {
        Cob1::circles(1)
    }

    pub fn circles(n: usize) -> Cob1 {
        Cob1::new(vec![], vec![], vec![], vec![], n).unwrap()
    }

    /// The cup `∅ → (+,−)`: one interval between the two target points.
    pub fn cup() -> Cob1 {
        Cob1::new(
            vec![],
            vec![Sign::Plus, Sign::Minus],
            vec![Interval::new(Slot::target(1), Slot::target(0))],
            vec![],
            0,
        )
        .unwrap()
    }

    /// The cap `(+,−) → ∅`.
    pub fn cap() -> Cob1 {
        Cob1::new(
            vec![Sign::Plus, Sign::Minus],
            vec![],
            vec![Interval::new(Slot::source(0), Slot::source(1))],
            vec![],
            0,
        )
        .unwrap()
    }

    /// Remove all marks belonging to `sphere`, returning the stripped
    /// manifold and the index the host circle receives if a marked circle
    /// became bare. Newly bared circles are indexed before inherited ones.
    pub fn without_sphere(&self, sphere: SphereId) -> (Cob1, Option<usize>) {
        let mut intervals = self.intervals.clone();
        for iv in &mut intervals {
            iv.marks.retain(|m| m.sphere != sphere);
        }
        let mut marked = Vec::new();
        let mut newly_bared = 0;
        for c in &self.marked_circles {
            let kept: Vec<ArcMark> = c.iter().filter(|m| m.sphere != sphere).cloned().collect();
            if kept.is_empty() {
                newly_bared += 1;
            } else {
                marked.push(kept);
            }
        }
        let bared_index = if newly_bared > 0 { Some(0) } else { None };
        let m = Cob1::new(
            self.source.clone(),
            self.target.clone(),
            intervals,
            marked,
            newly_bared + self.bare_circles,
        )
        .expect("stripping marks preserves validity");
        (m, bared_index)
    }

    /// Glue `self` to `other` along `self.target = other.source`.
    pub fn compose(&self, other: &Cob1) -> Result<Cob1> {
        self.compose_traced(other).map(|(m, _)| m)
    }

    /// Composition with a trace of where every piece of both manifolds
    /// lands in the composite.
    pub fn compose_traced(&self, other: &Cob1) -> Result<(Cob1, ComposeTrace)> {
        if self.target.len() != other.source.len() {
            return Err(Error::Composition {
                index: self.target.len().min(other.source.len()),
                left: format!("{} target points", self.target.len()),
                right: format!("{} source points", other.source.len()),
            });
        }
        for (i, (a, b)) in self.target.iter().zip(other.source.iter()).enumerate() {
            if a != b {
                return Err(Error::Composition {
                    index: i,
                    left: a.to_string(),
                    right: b.to_string(),
                });
            }
        }

        // Walk strands forward. An interval of `self` ending at target[t]
        // continues into the interval of `other` departing source[t], and
        // vice versa.
        let find_from = |side_m1: bool, slot: Slot| -> Option<usize> {
            let list = if side_m1 { &self.intervals } else { &other.intervals };
            list.iter().position(|iv| iv.from == slot)
        };
        let n1 = self.intervals.len();
        let mut visited = vec![false; n1 + other.intervals.len()];
        let idx = |m1: bool, i: usize| if m1 { i } else { n1 + i };

        let mut walk = |start_m1: bool, start_i: usize, visited: &mut Vec<bool>| -> (Vec<Piece>, Vec<ArcMark>, Slot) {
            let mut chain = Vec::new();
            let mut marks = Vec::new();
            let (mut m1, mut i) = (start_m1, start_i);
            loop {
                visited[idx(m1, i)] = true;
                let iv = if m1 { &self.intervals[i] } else { &other.intervals[i] };
                chain.push(if m1 { Piece::M1(i) } else { Piece::M2(i) });
                marks.extend(iv.marks.iter().cloned());
                let to = iv.to;
                let inner = if m1 { to.side == Side::Target } else { to.side == Side::Source };
                if !inner {
                    return (chain, marks, to);
                }
                let next_slot = if m1 { Slot::source(to.index) } else { Slot::target(to.index) };
                let next_m1 = !m1;
                match find_from(next_m1, next_slot) {
                    Some(j) => {
                        if visited[idx(next_m1, j)] {
                            // closed a cycle
                            return (chain, marks, to);
                        }
                        m1 = next_m1;
                        i = j;
                    }
                    None => unreachable!("validated slot usage guarantees a continuation"),
                }
            }
        };

        let mut interval_data: Vec<(Interval, Vec<Piece>)> = Vec::new();
        // Outer starting ends: source slots of self, target slots of other.
        let mut starts: Vec<(bool, usize)> = Vec::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            if iv.from.side == Side::Source {
                starts.push((true, i));
            }
        }
        for (i, iv) in other.intervals.iter().enumerate() {
            if iv.from.side == Side::Target {
                starts.push((false, i));
            }
        }
        for (m1, i) in starts {
            let (chain, marks, end) = walk(m1, i, &mut visited);
            let first = if m1 { &self.intervals[i] } else { &other.intervals[i] };
            let from = first.from;
            interval_data.push((Interval { from, to: end, marks }, chain));
        }

        // Remaining intervals close up into circles.
        let mut cycle_data: Vec<(Vec<ArcMark>, Vec<Piece>)> = Vec::new();
        for i in 0..n1 + other.intervals.len() {
            if visited[i] {
                continue;
            }
            let (m1, j) = if i < n1 { (true, i) } else { (false, i - n1) };
            let (chain, marks, _) = walk(m1, j, &mut visited);
            cycle_data.push((marks, chain));
        }

        // Assemble; sort intervals by from-slot keeping chains aligned.
        interval_data.sort_by_key(|(iv, _)| iv.from);
        let (intervals, interval_chains): (Vec<_>, Vec<_>) = interval_data.into_iter().unzip();

        let mut marked_entries: Vec<(Vec<ArcMark>, CircleOrigin)> = Vec::new();
        let mut bare_origins: Vec<BareOrigin> = Vec::new();
        for (marks, chain) in cycle_data {
            if marks.is_empty() {
                bare_origins.push(BareOrigin::Fused(chain));
            } else {
                marked_entries.push((min_rotation(&marks), CircleOrigin::Fused(chain)));
            }
        }
        for (i, c) in self.marked_circles.iter().enumerate() {
            marked_entries.push((c.clone(), CircleOrigin::CarriedM1(i)));
        }
        for (i, c) in other.marked_circles.iter().enumerate() {
            marked_entries.push((c.clone(), CircleOrigin::CarriedM2(i)));
        }
        marked_entries.sort_by(|a, b| a.0.cmp(&b.0));
        for i in 0..self.bare_circles {
            bare_origins.push(BareOrigin::M1(i));
        }
        for i in 0..other.bare_circles {
            bare_origins.push(BareOrigin::M2(i));
        }

        let (marked, marked_origins): (Vec<_>, Vec<_>) = marked_entries.into_iter().unzip();
        let bare_count = bare_origins.len();
        let result = Cob1::new(
            self.source.clone(),
            other.target.clone(),
            intervals,
            marked,
            bare_count,
        )?;
        Ok((
            result,
            ComposeTrace {
                intervals: interval_chains,
                marked: marked_origins,
                bares: bare_origins,
            },
        ))
    }

    /// Disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &Cob1) -> Result<Cob1> {
        self.disjoint_union_traced(other).map(|(m, _)| m)
    }

    pub fn disjoint_union_traced(&self, other: &Cob1) -> Result<(Cob1, UnionTrace)> {
        let shift = |slot: Slot| -> Slot {
            match slot.side {
                Side::Source => Slot::source(slot.index + self.source.len()),
                Side::Target => Slot::target(slot.index + self.target.len()),
            }
        };
        let mut source = self.source.clone();
        source.extend(other.source.iter().copied());
        let mut target = self.target.clone();
        target.extend(other.target.iter().copied());

        let mut interval_data: Vec<(Interval, Piece)> = Vec::new();
        for (i, iv) in self.intervals.iter().enumerate() {
            interval_data.push((iv.clone(), Piece::M1(i)));
        }
        for (i, iv) in other.intervals.iter().enumerate() {
            interval_data.push((
                Interval {
                    from: shift(iv.from),
                    to: shift(iv.to),
                    marks: iv.marks.clone(),
                },
                Piece::M2(i),
            ));
        }
        interval_data.sort_by_key(|(iv, _)| iv.from);
        let (intervals, interval_origins): (Vec<_>, Vec<_>) = interval_data.into_iter().unzip();

        let mut marked_entries: Vec<(Vec<ArcMark>, Piece)> = Vec::new();
        for (i, c) in self.marked_circles.iter().enumerate() {
            marked_entries.push((c.clone(), Piece::M1(i)));
        }
        for (i, c) in other.marked_circles.iter().enumerate() {
            marked_entries.push((c.clone(), Piece::M2(i)));
        }
        marked_entries.sort_by(|a, b| a.0.cmp(&b.0));
        let (marked, marked_origins): (Vec<_>, Vec<_>) = marked_entries.into_iter().unzip();

        let result = Cob1::new(
            source,
            target,
            intervals,
            marked,
            self.bare_circles + other.bare_circles,
        )?;
        Ok((
            result,
            UnionTrace {
                intervals: interval_origins,
                marked: marked_origins,
                m1_bares: self.bare_circles,
            },
        ))
    }
}

/// Which input manifold a piece came from, and its index there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Piece {
    M1(usize),
    M2(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircleOrigin {
    /// New circle fused from intervals of both sides; the chain lists them
    /// in traversal order.
    Fused(Vec<Piece>),
    CarriedM1(usize),
    CarriedM2(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BareOrigin {
    Fused(Vec<Piece>),
    M1(usize),
    M2(usize),
}

/// Where every component of a composite came from. Interval chains are
/// aligned with the composite's canonical interval order; bare origins list
/// fused cycles first, then the inherited bare circles of each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComposeTrace {
    pub intervals: Vec<Vec<Piece>>,
    pub marked: Vec<CircleOrigin>,
    pub bares: Vec<BareOrigin>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnionTrace {
    pub intervals: Vec<Piece>,
    pub marked: Vec<Piece>,
    pub m1_bares: usize,
}
