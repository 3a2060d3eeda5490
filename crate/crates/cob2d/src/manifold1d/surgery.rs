use super::cob::{ArcMark, Cob1, Interval, Sign, Slot, SphereId};
use super::cob::min_rotation;
use super::sphere::{apply_plan, ArcSite, CompRef, FramedSphere, SpherePlan};
use crate::error::{Error, Result};

/// Cut point of a surgered arc, named by arc role and parameter end.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Cut {
    Tail0,
    Head0,
    Tail1,
    Head1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SegEnd {
    Slot(Slot),
    Cut(Cut),
}

/// A maximal piece of the manifold after removing the two open arcs.
#[derive(Debug, Clone)]
struct Segment {
    entry: SegEnd,
    exit: SegEnd,
    marks: Vec<ArcMark>,
}

/// Ambient-order cut tokens for an arc: the preceding piece exits at the
/// first token, the following piece enters at the second. Arc 0 runs with
/// the ambient orientation (tail first), arc 1 against it (head first).
fn exit_token(arc: u8) -> Cut {
    if arc == 0 { Cut::Tail0 } else { Cut::Head1 }
}

fn entry_token(arc: u8) -> Cut {
    if arc == 0 { Cut::Head0 } else { Cut::Tail1 }
}

/// The reglue rule of the 1-handle: the two new strands join the cut ends
/// parameter-end to parameter-end.
fn successor(exit: Cut) -> (Cut, JoinKind) {
    match exit {
        Cut::Tail0 => (Cut::Tail1, JoinKind::Tail),
        Cut::Head1 => (Cut::Head0, JoinKind::Head),
        _ => unreachable!("entry tokens never appear as exits"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinKind {
    Tail,
    Head,
}

/// Where the belt locus of a surgery sits in the result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BeltLocus {
    /// k = 0: the born circle, by bare-circle index in the result.
    Born { bare_index: usize },
    /// k = 1: the host components of the two reglued strands.
    Joins { tail: CompRef, head: CompRef },
    /// k = 2: the locus is removed.
    Killed,
}

/// Provenance of a surgery: belt location plus the fate of every bare
/// circle of the input. New bare circles (join cycles, the born circle)
/// come before inherited ones, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryTrace {
    pub belt: BeltLocus,
    /// For each bare circle of the input, its bare index in the result
    /// (`None` only for the circle killed by a k=2 surgery).
    pub bare_map: Vec<Option<usize>>,
    /// Number of new bare circles created (indices `0..new_bares`).
    pub new_bares: usize,
}

/// Where each arc of a sphere sits: host component (in the marked
/// manifold's canonical indexing) and mark position on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Host {
    Interval(usize, usize),
    Circle(usize, usize),
}

fn locate_arcs(m: &Cob1, id: SphereId) -> Result<(Host, Host)> {
    let mut found: [Option<Host>; 2] = [None, None];
    for (i, iv) in m.intervals().iter().enumerate() {
        for (p, mark) in iv.marks.iter().enumerate() {
            if mark.sphere == id {
                found[mark.arc as usize] = Some(Host::Interval(i, p));
            }
        }
    }
    for (c, circle) in m.marked_circles().iter().enumerate() {
        for (p, mark) in circle.iter().enumerate() {
            if mark.sphere == id {
                found[mark.arc as usize] = Some(Host::Circle(c, p));
            }
        }
    }
    match (found[0], found[1]) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(Error::Surgery(format!("sphere {id:?} is not placed in the manifold"))),
    }
}

/// Cut the two arcs of `id` out of `m`, producing segments plus the
/// untouched components.
struct Cutting {
    segments: Vec<Segment>,
    /// untouched marked circles (canonical content)
    carried_marked: Vec<Vec<ArcMark>>,
}

fn cut(m: &Cob1, id: SphereId) -> Result<Cutting> {
    let (h0, h1) = locate_arcs(m, id)?;
    let mut segments = Vec::new();
    let mut carried_marked = Vec::new();

    for (i, iv) in m.intervals().iter().enumerate() {
        let mut cuts: Vec<(usize, u8)> = Vec::new();
        for h in [h0, h1] {
            if let Host::Interval(j, p) = h {
                if j == i {
                    cuts.push((p, if h == h0 { 0 } else { 1 }));
                }
            }
        }
        if cuts.is_empty() {
            segments.push(Segment {
                entry: SegEnd::Slot(iv.from),
                exit: SegEnd::Slot(iv.to),
                marks: iv.marks.clone(),
            });
            continue;
        }
        cuts.sort();
        let mut entry = SegEnd::Slot(iv.from);
        let mut last = 0usize;
        for &(p, arc) in &cuts {
            segments.push(Segment {
                entry,
                exit: SegEnd::Cut(exit_token(arc)),
                marks: iv.marks[last..p].to_vec(),
            });
            entry = SegEnd::Cut(entry_token(arc));
            last = p + 1;
        }
        segments.push(Segment {
            entry,
            exit: SegEnd::Slot(iv.to),
            marks: iv.marks[last..].to_vec(),
        });
    }

    for (c, circle) in m.marked_circles().iter().enumerate() {
        let mut cuts: Vec<(usize, u8)> = Vec::new();
        for h in [h0, h1] {
            if let Host::Circle(j, p) = h {
                if j == c {
                    cuts.push((p, if h == h0 { 0 } else { 1 }));
                }
            }
        }
        match cuts.len() {
            0 => carried_marked.push(circle.clone()),
            1 => {
                let (p, arc) = cuts[0];
                let mut marks = circle[p + 1..].to_vec();
                marks.extend_from_slice(&circle[..p]);
                segments.push(Segment {
                    entry: SegEnd::Cut(entry_token(arc)),
                    exit: SegEnd::Cut(exit_token(arc)),
                    marks,
                });
            }
            2 => {
                cuts.sort();
                let (p0, a0) = cuts[0];
                let (p1, a1) = cuts[1];
                segments.push(Segment {
                    entry: SegEnd::Cut(entry_token(a0)),
                    exit: SegEnd::Cut(exit_token(a1)),
                    marks: circle[p0 + 1..p1].to_vec(),
                });
                let mut wrap = circle[p1 + 1..].to_vec();
                wrap.extend_from_slice(&circle[..p0]);
                segments.push(Segment {
                    entry: SegEnd::Cut(entry_token(a1)),
                    exit: SegEnd::Cut(exit_token(a0)),
                    marks: wrap,
                });
            }
            _ => unreachable!("a sphere has two arcs"),
        }
    }
    Ok(Cutting { segments, carried_marked })
}

/// Surgery along a framed sphere; the canonical result.
pub fn surgery(m: &Cob1, s: &FramedSphere) -> Result<Cob1> {
    surgery_traced(m, s).map(|(r, _)| r)
}

/// Surgery with provenance.
pub fn surgery_traced(m: &Cob1, s: &FramedSphere) -> Result<(Cob1, SurgeryTrace)> {
    match s {
        FramedSphere::K0 => {
            let result = Cob1::new(
                m.source().clone(),
                m.target().clone(),
                m.intervals().to_vec(),
                m.marked_circles().to_vec(),
                m.bare_circles() + 1,
            )?;
            let bare_map = (0..m.bare_circles()).map(|i| Some(i + 1)).collect();
            Ok((
                result,
                SurgeryTrace { belt: BeltLocus::Born { bare_index: 0 }, bare_map, new_bares: 1 },
            ))
        }
        FramedSphere::K2 { bare } => {
            if *bare >= m.bare_circles() {
                return Err(Error::Surgery(format!(
                    "no bare circle {} to perform surgery on",
                    bare
                )));
            }
            let result = Cob1::new(
                m.source().clone(),
                m.target().clone(),
                m.intervals().to_vec(),
                m.marked_circles().to_vec(),
                m.bare_circles() - 1,
            )?;
            let bare_map = (0..m.bare_circles())
                .map(|i| {
                    if i == *bare {
                        None
                    } else if i < *bare {
                        Some(i)
                    } else {
                        Some(i - 1)
                    }
                })
                .collect();
            Ok((result, SurgeryTrace { belt: BeltLocus::Killed, bare_map, new_bares: 0 }))
        }
        FramedSphere::K1 { sphere } => {
            let cutting = cut(m, *sphere)?;
            reglue(m, cutting)
        }
    }
}

fn reglue(m: &Cob1, cutting: Cutting) -> Result<(Cob1, SurgeryTrace)> {
    let segs = &cutting.segments;
    let n = segs.len();
    let mut used = vec![false; n];
    let find_entry = |e: SegEnd, used: &[bool]| -> Option<usize> {
        segs.iter()
            .enumerate()
            .position(|(i, s)| !used[i] && s.entry == e)
    };

    // Walk from a starting segment, collecting marks and joins crossed.
    let walk = |start: usize, used: &mut Vec<bool>| -> (Vec<ArcMark>, Vec<JoinKind>, SegEnd) {
        let mut marks = Vec::new();
        let mut joins = Vec::new();
        let mut i = start;
        loop {
            used[i] = true;
            marks.extend(segs[i].marks.iter().cloned());
            match segs[i].exit {
                SegEnd::Slot(s) => return (marks, joins, SegEnd::Slot(s)),
                SegEnd::Cut(c) => {
                    let (next_entry, kind) = successor(c);
                    joins.push(kind);
                    match find_entry(SegEnd::Cut(next_entry), used) {
                        Some(j) => i = j,
                        // Closing jump back to the walk's starting segment.
                        None => return (marks, joins, SegEnd::Cut(next_entry)),
                    }
                }
            }
        }
    };

    // Intervals first, ordered by their from-slot.
    let mut starts: Vec<(Slot, usize)> = segs
        .iter()
        .enumerate()
        .filter_map(|(i, s)| match s.entry {
            SegEnd::Slot(sl) => Some((sl, i)),
            _ => None,
        })
        .collect();
    starts.sort();
    let mut new_intervals: Vec<(Interval, Vec<JoinKind>)> = Vec::new();
    for (from, i) in starts {
        if used[i] {
            continue;
        }
        let (marks, joins, end) = walk(i, &mut used);
        let SegEnd::Slot(to) = end else {
            return Err(Error::Surgery(
                "strand from a boundary slot ended at a cut; orientation data is inconsistent"
                    .into(),
            ));
        };
        new_intervals.push((Interval { from, to, marks }, joins));
    }

    // Remaining segments close into cycles; tail-join cycle first.
    let mut new_cycles: Vec<(Vec<ArcMark>, Vec<JoinKind>)> = Vec::new();
    for want in [Cut::Tail1, Cut::Head0] {
        if let Some(i) = segs
            .iter()
            .enumerate()
            .position(|(i, s)| !used[i] && s.entry == SegEnd::Cut(want))
        {
            let (marks, joins, _end) = walk(i, &mut used);
            new_cycles.push((marks, joins));
        }
    }
    if used.iter().any(|u| !u) {
        return Err(Error::Surgery("disconnected cut segments remained untraced".into()));
    }

    // Assemble the canonical result while tracking where joins land.
    new_intervals.sort_by_key(|(iv, _)| iv.from);
    let mut joins_host: Vec<(JoinKind, CompRef)> = Vec::new();
    for (idx, (_, joins)) in new_intervals.iter().enumerate() {
        for j in joins {
            joins_host.push((*j, CompRef::Interval(idx)));
        }
    }

    let mut marked_entries: Vec<(Vec<ArcMark>, Option<Vec<JoinKind>>)> = Vec::new();
    let mut new_bare_cycles: Vec<Vec<JoinKind>> = Vec::new();
    for (marks, joins) in new_cycles {
        if marks.is_empty() {
            new_bare_cycles.push(joins);
        } else {
            marked_entries.push((min_rotation(&marks), Some(joins)));
        }
    }
    for c in &cutting.carried_marked {
        marked_entries.push((c.clone(), None));
    }
    marked_entries.sort_by(|a, b| a.0.cmp(&b.0));
    for (idx, (_, joins)) in marked_entries.iter().enumerate() {
        if let Some(js) = joins {
            for j in js {
                joins_host.push((*j, CompRef::MarkedCircle(idx)));
            }
        }
    }
    for (idx, joins) in new_bare_cycles.iter().enumerate() {
        for j in joins {
            joins_host.push((*j, CompRef::BareCircle(idx)));
        }
    }

    let new_bares = new_bare_cycles.len();
    let bare_map = (0..m.bare_circles()).map(|i| Some(i + new_bares)).collect();

    let tail = joins_host
        .iter()
        .find(|(k, _)| *k == JoinKind::Tail)
        .map(|(_, c)| *c)
        .ok_or_else(|| Error::Surgery("tail join lost during tracing".into()))?;
    let head = joins_host
        .iter()
        .find(|(k, _)| *k == JoinKind::Head)
        .map(|(_, c)| *c)
        .ok_or_else(|| Error::Surgery("head join lost during tracing".into()))?;

    let marked: Vec<Vec<ArcMark>> = marked_entries.into_iter().map(|(m, _)| m).collect();
    let intervals: Vec<Interval> = new_intervals.into_iter().map(|(iv, _)| iv).collect();
    let result = Cob1::new(
        m.source().clone(),
        m.target().clone(),
        intervals,
        marked,
        m.bare_circles() + new_bares,
    )?;
    Ok((
        result,
        SurgeryTrace {
            belt: BeltLocus::Joins { tail, head },
            bare_map,
            new_bares,
        },
    ))
}

/// The complement of a framed sphere: the manifold with the locus removed
/// and the cut ends promoted to new outgoing boundary points.
///
/// For k = 1 the four new target points appear in strand order
/// tail₀, head₀, tail₁, head₁ with signs (+,−,−,+), matching the source
/// configuration of the standard pieces. For k = 0 the complement is the
/// manifold itself; for k = 2 it loses the circle and gains no points.
pub fn complement(m: &Cob1, s: &FramedSphere) -> Result<Cob1> {
    match s {
        FramedSphere::K0 => Ok(m.clone()),
        FramedSphere::K2 { bare } => {
            if *bare >= m.bare_circles() {
                return Err(Error::Surgery(format!("no bare circle {bare}")));
            }
            Cob1::new(
                m.source().clone(),
                m.target().clone(),
                m.intervals().to_vec(),
                m.marked_circles().to_vec(),
                m.bare_circles() - 1,
            )
        }
        FramedSphere::K1 { sphere } => {
            let cutting = cut(m, *sphere)?;
            let base = m.target().len();
            let slot_of = |c: Cut| -> Slot {
                match c {
                    Cut::Tail0 => Slot::target(base),
                    Cut::Head0 => Slot::target(base + 1),
                    Cut::Tail1 => Slot::target(base + 2),
                    Cut::Head1 => Slot::target(base + 3),
                }
            };
            let mut target = m.target().clone();
            target.extend([Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus]);
            let intervals = cutting
                .segments
                .into_iter()
                .map(|seg| Interval {
                    from: match seg.entry {
                        SegEnd::Slot(s) => s,
                        SegEnd::Cut(c) => slot_of(c),
                    },
                    to: match seg.exit {
                        SegEnd::Slot(s) => s,
                        SegEnd::Cut(c) => slot_of(c),
                    },
                    marks: seg.marks,
                })
                .collect();
            Cob1::new(
                m.source().clone(),
                target,
                intervals,
                cutting.carried_marked,
                m.bare_circles(),
            )
        }
    }
}

/// The standard piece `S^{k−1} × D^{2−k}`, as a 1-morphism from the new
/// boundary configuration to the empty manifold.
pub fn source_piece(k: u8) -> Cob1 {
    match k {
        0 => Cob1::empty(),
        1 => k1_piece([(0, 1), (3, 2)]),
        2 => Cob1::circle(),
        _ => panic!("handle index out of range"),
    }
}

/// The standard piece `D^k × S^{1−k}`, same boundary configuration.
pub fn target_piece(k: u8) -> Cob1 {
    match k {
        0 => Cob1::circle(),
        1 => k1_piece([(0, 2), (3, 1)]),
        2 => Cob1::empty(),
        _ => panic!("handle index out of range"),
    }
}

fn k1_piece(strands: [(usize, usize); 2]) -> Cob1 {
    let source = vec![Sign::Plus, Sign::Minus, Sign::Minus, Sign::Plus];
    let intervals = strands
        .iter()
        .map(|&(f, t)| Interval::new(Slot::source(f), Slot::source(t)))
        .collect();
    Cob1::new(source, vec![], intervals, vec![], 0).unwrap()
}

/// Swap the two arc roles of a placed k=1 sphere. The sphere itself keeps
/// its identity; the ambient manifold's marks change. Surgery along the
/// reversed sphere yields the same canonical result.
pub fn reverse_sphere(m: &Cob1, s: &FramedSphere) -> Result<Cob1> {
    let FramedSphere::K1 { sphere } = s else {
        return Err(Error::UnsupportedSphere(format!(
            "reversal is defined for k = 1 spheres only, got k = {}",
            s.index()
        )));
    };
    locate_arcs(m, *sphere)?;
    let swap = |marks: &[ArcMark]| -> Vec<ArcMark> {
        marks
            .iter()
            .map(|mk| {
                if mk.sphere == *sphere {
                    ArcMark::new(mk.sphere, 1 - mk.arc)
                } else {
                    *mk
                }
            })
            .collect()
    };
    let intervals = m
        .intervals()
        .iter()
        .map(|iv| Interval { from: iv.from, to: iv.to, marks: swap(&iv.marks) })
        .collect();
    let marked = m.marked_circles().iter().map(|c| swap(c)).collect();
    Cob1::new(
        m.source().clone(),
        m.target().clone(),
        intervals,
        marked,
        m.bare_circles(),
    )
}

/// Reverse a positional k=1 plan.
pub fn reverse_plan(plan: &SpherePlan) -> Result<SpherePlan> {
    match plan {
        SpherePlan::K1 { arc0, arc1, arc0_first } => Ok(SpherePlan::K1 {
            arc0: *arc1,
            arc1: *arc0,
            arc0_first: if arc0 == arc1 { !arc0_first } else { true },
        }),
        _ => Err(Error::UnsupportedSphere(
            "reversal is defined for k = 1 spheres only".into(),
        )),
    }
}

/// Algebraic intersection of the belt sphere of `s` with the attaching
/// sphere of a subsequent surgery described by `plan2` in `surgery(m, s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Intersection {
    Zero,
    Plus,
    Minus,
    Many,
}

impl Intersection {
    pub fn is_once(&self) -> bool {
        matches!(self, Intersection::Plus | Intersection::Minus)
    }
}

/// Count intersections of the belt sphere of `s` (in `m`) with the
/// attaching sphere of `plan2` (in `surgery(m, s)`).
///
/// Supported index pairs: (0,1) — arcs of the second sphere on the born
/// circle — and (1,2) — reglued strand midpoints on the killed circle. The
/// sign is +1 exactly when the distinguished datum (arc 0, tail strand)
/// realizes the single intersection.
pub fn intersection_number(m: &Cob1, s: &FramedSphere, plan2: &SpherePlan) -> Result<Intersection> {
    let (result, trace) = surgery_traced(m, s)?;
    // plan2 must be valid there
    apply_plan(&result, plan2, fresh_id(&result))?;
    match (s, plan2) {
        (FramedSphere::K0, SpherePlan::K1 { arc0, arc1, .. }) => {
            let BeltLocus::Born { bare_index } = trace.belt else { unreachable!() };
            let born = CompRef::BareCircle(bare_index);
            let on0 = arc0.comp == born;
            let on1 = arc1.comp == born;
            Ok(match (on0, on1) {
                (true, true) => Intersection::Many,
                (true, false) => Intersection::Plus,
                (false, true) => Intersection::Minus,
                (false, false) => Intersection::Zero,
            })
        }
        (FramedSphere::K1 { .. }, SpherePlan::K2 { bare }) => {
            let BeltLocus::Joins { tail, head } = trace.belt else { unreachable!() };
            let target = CompRef::BareCircle(*bare);
            let tail_on = tail == target;
            let head_on = head == target;
            Ok(match (tail_on, head_on) {
                (true, true) => Intersection::Many,
                (true, false) => Intersection::Plus,
                (false, true) => Intersection::Minus,
                (false, false) => Intersection::Zero,
            })
        }
        _ => Err(Error::UnsupportedSphere(format!(
            "intersection number is defined for index pairs (0,1) and (1,2), got ({}, {})",
            s.index(),
            match plan2 {
                SpherePlan::K0 => 0,
                SpherePlan::K1 { .. } => 1,
                SpherePlan::K2 { .. } => 2,
            }
        ))),
    }
}

/// A sphere id not occurring in `m`.
pub fn fresh_id(m: &Cob1) -> SphereId {
    let next = m
        .sphere_ids()
        .iter()
        .map(|s| s.0 + 1)
        .max()
        .unwrap_or(0);
    SphereId(next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold1d::sphere::{enumerate_framed_spheres, place_k1};

    fn plus() -> Vec<Sign> {
        vec![Sign::Plus]
    }

    #[test]
    fn k0_births_a_circle() {
        let cyl = Cob1::identity(&plus());
        let (r, trace) = surgery_traced(&cyl, &FramedSphere::K0).unwrap();
        let expected = cyl.disjoint_union(&Cob1::circle()).unwrap();
        assert_eq!(r, expected);
        assert_eq!(trace.belt, BeltLocus::Born { bare_index: 0 });
    }

    #[test]
    fn k2_kills_a_circle() {
        let m = Cob1::circle();
        let r = surgery(&m, &FramedSphere::K2 { bare: 0 }).unwrap();
        assert_eq!(r, Cob1::empty());
    }

    #[test]
    fn k1_on_one_circle_splits_into_two() {
        // One circle carrying both arcs: surgery yields two bare circles.
        let sid = SphereId(0);
        let m = Cob1::new(
            vec![],
            vec![],
            vec![],
            vec![vec![ArcMark::new(sid, 0), ArcMark::new(sid, 1)]],
            0,
        )
        .unwrap();
        let (r, trace) = surgery_traced(&m, &FramedSphere::K1 { sphere: sid }).unwrap();
        assert_eq!(r, Cob1::circles(2));
        assert_eq!(
            trace.belt,
            BeltLocus::Joins {
                tail: CompRef::BareCircle(0),
                head: CompRef::BareCircle(1)
            }
        );
    }

    #[test]
    fn k1_on_two_circles_merges_into_one() {
        let sid = SphereId(0);
        let m = Cob1::new(
            vec![],
            vec![],
            vec![],
            vec![vec![ArcMark::new(sid, 0)], vec![ArcMark::new(sid, 1)]],
            0,
        )
        .unwrap();
        let r = surgery(&m, &FramedSphere::K1 { sphere: sid }).unwrap();
        assert_eq!(r, Cob1::circle());
    }

    #[test]
    fn k1_on_one_interval_gives_interval_and_circle() {
        let cyl = Cob1::identity(&plus());
        let sid = SphereId(0);
        let site = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let m = place_k1(&cyl, sid, site, site, true).unwrap();
        let (r, trace) = surgery_traced(&m, &FramedSphere::K1 { sphere: sid }).unwrap();
        let expected = cyl.disjoint_union(&Cob1::circle()).unwrap();
        assert_eq!(r, expected);
        // arc0 before arc1: the split-off circle carries the head join.
        assert_eq!(
            trace.belt,
            BeltLocus::Joins {
                tail: CompRef::Interval(0),
                head: CompRef::BareCircle(0)
            }
        );
    }

    #[test]
    fn k1_on_two_intervals_recombines_without_changing_counts() {
        let two = Cob1::identity(&vec![Sign::Plus, Sign::Plus]);
        let sid = SphereId(0);
        let m = place_k1(
            &two,
            sid,
            ArcSite { comp: CompRef::Interval(0), gap: 0 },
            ArcSite { comp: CompRef::Interval(1), gap: 0 },
            true,
        )
        .unwrap();
        let r = surgery(&m, &FramedSphere::K1 { sphere: sid }).unwrap();
        assert_eq!(r.intervals().len(), 2);
        assert_eq!(r.bare_circles(), 0);
        // endpoints are exchanged
        assert_eq!(r.intervals()[0].from, Slot::source(0));
        assert_eq!(r.intervals()[0].to, Slot::target(1));
    }

    #[test]
    fn complement_of_k1_on_interval_is_three_intervals() {
        let cyl = Cob1::identity(&plus());
        let sid = SphereId(0);
        let site = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let m = place_k1(&cyl, sid, site, site, true).unwrap();
        let c = complement(&m, &FramedSphere::K1 { sphere: sid }).unwrap();
        assert_eq!(c.intervals().len(), 3);
        assert_eq!(c.target().len(), 5);
    }

    #[test]
    fn round_trip_through_pieces() {
        // compose(complement, id ⊔ source piece) = m and with the target
        // piece = surgery, for every enumerated sphere of a sample manifold.
        let base = Cob1::identity(&vec![Sign::Plus, Sign::Minus])
            .disjoint_union(&Cob1::circles(2))
            .unwrap();
        for k in 0..=2u8 {
            for placed in enumerate_framed_spheres(&base, k, SphereId(7)) {
                let m = &placed.manifold;
                // The round trip restores the manifold; the sphere's own
                // marks are consumed by the decomposition.
                let bare = match placed.sphere {
                    FramedSphere::K1 { sphere } => m.without_sphere(sphere).0,
                    _ => m.clone(),
                };
                let comp = complement(m, &placed.sphere).unwrap();
                let idt = Cob1::identity(m.target());
                let src = idt.disjoint_union(&source_piece(k)).unwrap();
                let tgt = idt.disjoint_union(&target_piece(k)).unwrap();
                assert_eq!(comp.compose(&src).unwrap(), bare, "source round trip k={k}");
                assert_eq!(
                    comp.compose(&tgt).unwrap(),
                    surgery(m, &placed.sphere).unwrap(),
                    "target round trip k={k}"
                );
            }
        }
    }

    #[test]
    fn reversal_is_involutive_and_preserves_surgery() {
        let base = Cob1::identity(&plus()).disjoint_union(&Cob1::circle()).unwrap();
        for placed in enumerate_framed_spheres(&base, 1, SphereId(3)) {
            let rev = reverse_sphere(&placed.manifold, &placed.sphere).unwrap();
            let back = reverse_sphere(&rev, &placed.sphere).unwrap();
            assert_eq!(back, placed.manifold);
            assert_eq!(
                surgery(&placed.manifold, &placed.sphere).unwrap(),
                surgery(&rev, &placed.sphere).unwrap()
            );
        }
    }

    #[test]
    fn enumeration_counts() {
        let cyl = Cob1::identity(&plus());
        assert_eq!(enumerate_framed_spheres(&cyl, 2, SphereId(0)).len(), 0);
        assert_eq!(enumerate_framed_spheres(&Cob1::circle(), 2, SphereId(0)).len(), 1);
        // a bare interval admits exactly two k=1 spheres (two role orders)
        assert_eq!(enumerate_framed_spheres(&cyl, 1, SphereId(0)).len(), 2);
    }

    #[test]
    fn intersection_signs_for_birth_then_saddle() {
        let cyl = Cob1::identity(&plus());
        let s = FramedSphere::K0;
        // after birth: bare circle 0 is the belt
        let on_born = ArcSite { comp: CompRef::BareCircle(0), gap: 0 };
        let on_interval = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let plan_plus = SpherePlan::K1 { arc0: on_born, arc1: on_interval, arc0_first: true };
        let plan_minus = SpherePlan::K1 { arc0: on_interval, arc1: on_born, arc0_first: true };
        let plan_zero = SpherePlan::K1 { arc0: on_interval, arc1: on_interval, arc0_first: true };
        let plan_many = SpherePlan::K1 { arc0: on_born, arc1: on_born, arc0_first: true };
        assert_eq!(intersection_number(&cyl, &s, &plan_plus).unwrap(), Intersection::Plus);
        assert_eq!(intersection_number(&cyl, &s, &plan_minus).unwrap(), Intersection::Minus);
        assert_eq!(intersection_number(&cyl, &s, &plan_zero).unwrap(), Intersection::Zero);
        assert_eq!(intersection_number(&cyl, &s, &plan_many).unwrap(), Intersection::Many);
    }

    #[test]
    fn intersection_signs_for_split_then_death() {
        // Both arcs on one interval, arc1 first: the split circle carries
        // the tail join, so killing it meets the belt positively.
        let cyl = Cob1::identity(&plus());
        let sid = SphereId(0);
        let site = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let m = place_k1(&cyl, sid, site, site, false).unwrap();
        let s = FramedSphere::K1 { sphere: sid };
        let i = intersection_number(&m, &s, &SpherePlan::K2 { bare: 0 }).unwrap();
        assert_eq!(i, Intersection::Plus);
        // arc0 first: the circle carries the head join.
        let m2 = place_k1(&cyl, sid, site, site, true).unwrap();
        let i2 = intersection_number(&m2, &s, &SpherePlan::K2 { bare: 0 }).unwrap();
        assert_eq!(i2, Intersection::Minus);
    }
}
