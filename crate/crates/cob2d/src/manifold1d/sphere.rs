use super::cob::{ArcMark, Cob1, SphereId};
use crate::error::{Error, Result};

/// A framed (k−1)-sphere for k ∈ {0,1,2}.
///
/// The k=1 sphere refers to its two marked arcs (already placed in the
/// ambient manifold) by identifier; the empty sphere and the circle sphere
/// carry their locus directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FramedSphere {
    /// S⁻¹ × D²: the empty sphere. Embeds uniquely.
    K0,
    /// S⁰ × D¹: two marked arcs, referenced by sphere id.
    K1 { sphere: SphereId },
    /// S¹ × D⁰: a bare circle component, by bare-circle index.
    K2 { bare: usize },
}

impl FramedSphere {
    pub fn index(&self) -> u8 {
        match self {
            FramedSphere::K0 => 0,
            FramedSphere::K1 { .. } => 1,
            FramedSphere::K2 { .. } => 2,
        }
    }
}

/// A component of a canonical manifold, for addressing insertion sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CompRef {
    Interval(usize),
    MarkedCircle(usize),
    BareCircle(usize),
}

/// An insertion site: a gap between existing marks on a component.
///
/// An interval with p marks has p+1 gaps (gap g sits before mark g); a
/// marked circle with p marks has p cyclic gaps (gap g sits after mark g);
/// a bare circle has a single gap 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSite {
    pub comp: CompRef,
    pub gap: usize,
}

/// A positional description of a framed sphere relative to a canonical
/// manifold, used by the word calculus and by serialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpherePlan {
    K0,
    K1 {
        arc0: ArcSite,
        arc1: ArcSite,
        /// When both arcs land in the same gap, whether arc 0 comes first
        /// in ambient order. Ignored otherwise.
        arc0_first: bool,
    },
    K2 { bare: usize },
}

fn gap_count(m: &Cob1, comp: CompRef) -> Result<usize> {
    match comp {
        CompRef::Interval(i) => m
            .intervals()
            .get(i)
            .map(|iv| iv.marks.len() + 1)
            .ok_or_else(|| Error::Surgery(format!("no interval {i}"))),
        CompRef::MarkedCircle(i) => m
            .marked_circles()
            .get(i)
            .map(|c| c.len())
            .ok_or_else(|| Error::Surgery(format!("no marked circle {i}"))),
        CompRef::BareCircle(i) => {
            if i < m.bare_circles() {
                Ok(1)
            } else {
                Err(Error::Surgery(format!("no bare circle {i}")))
            }
        }
    }
}

/// Insert the two arcs of a fresh sphere at the given sites.
///
/// Sites refer to the gaps of `m` before any insertion. Returns the marked
/// manifold; the sphere is `FramedSphere::K1 { sphere: id }`.
pub fn place_k1(
    m: &Cob1,
    id: SphereId,
    arc0: ArcSite,
    arc1: ArcSite,
    arc0_first: bool,
) -> Result<Cob1> {
    if m.sphere_ids().contains(&id) {
        return Err(Error::Surgery(format!("sphere id {id:?} already present")));
    }
    for site in [arc0, arc1] {
        let gaps = gap_count(m, site.comp)?;
        if site.gap >= gaps {
            return Err(Error::Surgery(format!(
                "gap {} out of range for {:?} ({} gaps)",
                site.gap, site.comp, gaps
            )));
        }
    }
    let mark0 = ArcMark::new(id, 0);
    let mark1 = ArcMark::new(id, 1);

    let mut intervals = m.intervals().to_vec();
    let mut marked: Vec<Vec<ArcMark>> = m.marked_circles().to_vec();
    let mut bare = m.bare_circles();

    // Insertion order resolves same-gap placements: insert the later one
    // first so indices stay valid.
    let mut inserts: Vec<(ArcSite, ArcMark)> = vec![(arc0, mark0), (arc1, mark1)];
    if arc0 == arc1 {
        // same gap on the same component: ambient order by flag
        if let CompRef::BareCircle(_) = arc0.comp {
            // a bare circle becomes a 2-mark circle; cyclic order of two
            // marks is rotation-invariant, so the flag is immaterial
            let b = match arc0.comp {
                CompRef::BareCircle(b) => b,
                _ => unreachable!(),
            };
            if b >= bare {
                return Err(Error::Surgery(format!("no bare circle {b}")));
            }
            bare -= 1;
            marked.push(vec![mark0, mark1]);
            return Cob1::new(
                m.source().clone(),
                m.target().clone(),
                intervals,
                marked,
                bare,
            );
        }
        let (first, second) = if arc0_first { (mark0, mark1) } else { (mark1, mark0) };
        match arc0.comp {
            CompRef::Interval(i) => {
                intervals[i].marks.insert(arc0.gap, second);
                intervals[i].marks.insert(arc0.gap, first);
            }
            CompRef::MarkedCircle(i) => {
                // gap g sits after mark g
                marked[i].insert(arc0.gap + 1, second);
                marked[i].insert(arc0.gap + 1, first);
            }
            CompRef::BareCircle(_) => unreachable!(),
        }
        return Cob1::new(
            m.source().clone(),
            m.target().clone(),
            intervals,
            marked,
            bare,
        );
    }

    // Distinct sites. Two sites on the same linear component must be
    // inserted back-to-front.
    inserts.sort_by_key(|(site, _)| (site.comp, std::cmp::Reverse(site.gap)));
    // Placing on two distinct bare circles consumes the higher index first.
    let mut bare_used: Vec<usize> = Vec::new();
    for (site, mark) in inserts {
        match site.comp {
            CompRef::Interval(i) => intervals[i].marks.insert(site.gap, mark),
            CompRef::MarkedCircle(i) => marked[i].insert(site.gap + 1, mark),
            CompRef::BareCircle(b) => {
                if b >= m.bare_circles() || bare_used.contains(&b) {
                    return Err(Error::Surgery(format!("bare circle {b} unavailable")));
                }
                bare_used.push(b);
                bare -= 1;
                marked.push(vec![mark]);
            }
        }
    }
    Cob1::new(
        m.source().clone(),
        m.target().clone(),
        intervals,
        marked,
        bare,
    )
}

/// Materialize a positional plan as a placed sphere.
pub fn apply_plan(m: &Cob1, plan: &SpherePlan, fresh: SphereId) -> Result<(Cob1, FramedSphere)> {
    match plan {
        SpherePlan::K0 => Ok((m.clone(), FramedSphere::K0)),
        SpherePlan::K2 { bare } => {
            if *bare >= m.bare_circles() {
                return Err(Error::Surgery(format!(
                    "no bare circle {} (count {})",
                    bare,
                    m.bare_circles()
                )));
            }
            Ok((m.clone(), FramedSphere::K2 { bare: *bare }))
        }
        SpherePlan::K1 { arc0, arc1, arc0_first } => {
            let placed = place_k1(m, fresh, *arc0, *arc1, *arc0_first)?;
            Ok((placed, FramedSphere::K1 { sphere: fresh }))
        }
    }
}

/// A framed sphere together with the ambient manifold carrying its marks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placed {
    pub manifold: Cob1,
    pub sphere: FramedSphere,
}

/// All insertion sites of a canonical manifold.
pub fn all_sites(m: &Cob1) -> Vec<ArcSite> {
    let mut sites = Vec::new();
    for (i, iv) in m.intervals().iter().enumerate() {
        for g in 0..=iv.marks.len() {
            sites.push(ArcSite { comp: CompRef::Interval(i), gap: g });
        }
    }
    for (i, c) in m.marked_circles().iter().enumerate() {
        for g in 0..c.len() {
            sites.push(ArcSite { comp: CompRef::MarkedCircle(i), gap: g });
        }
    }
    for b in 0..m.bare_circles() {
        sites.push(ArcSite { comp: CompRef::BareCircle(b), gap: 0 });
    }
    sites
}

/// All K1 plans on `m`, deduplicated up to isotopy (two placements are the
/// same isotopy class exactly when the marked manifolds agree as canonical
/// forms).
pub fn enumerate_k1_plans(m: &Cob1, fresh: SphereId) -> Vec<SpherePlan> {
    let sites = all_sites(m);
    let mut seen: Vec<Cob1> = Vec::new();
    let mut plans = Vec::new();
    for &s0 in &sites {
        for &s1 in &sites {
            let flags: &[bool] = if s0 == s1 { &[true, false] } else { &[true] };
            for &flag in flags {
                let plan = SpherePlan::K1 { arc0: s0, arc1: s1, arc0_first: flag };
                let Ok(placed) = place_k1(m, fresh, s0, s1, flag) else {
                    continue;
                };
                if !seen.contains(&placed) {
                    seen.push(placed);
                    plans.push(plan);
                }
            }
        }
    }
    plans
}

/// All isotopy classes of framed (k−1)-spheres in `m`, as placed spheres.
///
/// For k = 1 the returned manifolds carry the fresh sphere's marks; for
/// k = 0 and k = 2 the manifold is `m` itself.
pub fn enumerate_framed_spheres(m: &Cob1, k: u8, fresh: SphereId) -> Vec<Placed> {
    match k {
        0 => vec![Placed { manifold: m.clone(), sphere: FramedSphere::K0 }],
        2 => (0..m.bare_circles())
            .map(|b| Placed { manifold: m.clone(), sphere: FramedSphere::K2 { bare: b } })
            .collect(),
        1 => enumerate_k1_plans(m, fresh)
            .into_iter()
            .map(|plan| {
                let (manifold, sphere) = apply_plan(m, &plan, fresh).unwrap();
                Placed { manifold, sphere }
            })
            .collect(),
        _ => Vec::new(),
    }
}
