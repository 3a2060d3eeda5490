use super::cob::{ArcMark, Cob1, SphereId};
use super::sphere::{apply_plan, ArcSite, CompRef, FramedSphere, SpherePlan};
use super::surgery::{fresh_id, intersection_number, surgery, surgery_traced, BeltLocus};
use crate::error::{Error, Result};

/// An isotopy class of collar-preserving diffeomorphisms between canonical
/// manifolds.
///
/// At this dimension a collar-preserving diffeomorphism fixes the boundary
/// pointwise, so it matches each interval to the interval with the same
/// endpoints and each marked circle to the circle carrying the same marks;
/// rotations are isotopic to the identity. The only residual datum is the
/// permutation of the interchangeable bare circles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diffeo {
    source: Cob1,
    target: Cob1,
    bare_perm: Vec<usize>,
}

impl Diffeo {
    pub fn new(source: Cob1, target: Cob1, bare_perm: Vec<usize>) -> Result<Diffeo> {
        if source != target {
            return Err(Error::Validation(
                "a diffeomorphism requires equal canonical forms".into(),
            ));
        }
        let n = source.bare_circles();
        if bare_perm.len() != n {
            return Err(Error::Validation(format!(
                "bare permutation has length {}, manifold has {} bare circles",
                bare_perm.len(),
                n
            )));
        }
        let mut seen = vec![false; n];
        for &i in &bare_perm {
            if i >= n || seen[i] {
                return Err(Error::Validation("bare permutation is not a bijection".into()));
            }
            seen[i] = true;
        }
        Ok(Diffeo { source, target, bare_perm })
    }

    pub fn identity(m: &Cob1) -> Diffeo {
        Diffeo {
            source: m.clone(),
            target: m.clone(),
            bare_perm: (0..m.bare_circles()).collect(),
        }
    }

    pub fn source(&self) -> &Cob1 {
        &self.source
    }

    pub fn target(&self) -> &Cob1 {
        &self.target
    }

    pub fn bare_perm(&self) -> &[usize] {
        &self.bare_perm
    }

    pub fn is_identity(&self) -> bool {
        self.bare_perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Diffeo) -> Result<Diffeo> {
        if self.target != other.source {
            return Err(Error::Endpoints(
                "diffeomorphisms do not compose: middle manifolds differ".into(),
            ));
        }
        let perm = self
            .bare_perm
            .iter()
            .map(|&i| other.bare_perm[i])
            .collect();
        Diffeo::new(self.source.clone(), other.target.clone(), perm)
    }

    pub fn inverse(&self) -> Diffeo {
        let mut perm = vec![0; self.bare_perm.len()];
        for (i, &j) in self.bare_perm.iter().enumerate() {
            perm[j] = i;
        }
        Diffeo {
            source: self.target.clone(),
            target: self.source.clone(),
            bare_perm: perm,
        }
    }
}

/// Transport a framed sphere along a diffeomorphism. Marked spheres travel
/// with their marks; a circle sphere follows the bare permutation.
pub fn transport_sphere(d: &Diffeo, s: &FramedSphere) -> Result<FramedSphere> {
    match s {
        FramedSphere::K0 => Ok(FramedSphere::K0),
        FramedSphere::K1 { sphere } => {
            if !d.source().sphere_ids().contains(sphere) {
                return Err(Error::Surgery(format!("sphere {sphere:?} not placed in the source")));
            }
            Ok(*s)
        }
        FramedSphere::K2 { bare } => {
            let n = d.source().bare_circles();
            if *bare >= n {
                return Err(Error::Surgery(format!("no bare circle {bare}")));
            }
            Ok(FramedSphere::K2 { bare: d.bare_perm()[*bare] })
        }
    }
}

/// Transport a positional plan along a diffeomorphism.
pub fn transport_plan(d: &Diffeo, plan: &SpherePlan) -> Result<SpherePlan> {
    let move_site = |site: &ArcSite| -> ArcSite {
        match site.comp {
            CompRef::BareCircle(b) => ArcSite {
                comp: CompRef::BareCircle(d.bare_perm()[b]),
                gap: site.gap,
            },
            _ => *site,
        }
    };
    Ok(match plan {
        SpherePlan::K0 => SpherePlan::K0,
        SpherePlan::K2 { bare } => {
            if *bare >= d.source().bare_circles() {
                return Err(Error::Surgery(format!("no bare circle {bare}")));
            }
            SpherePlan::K2 { bare: d.bare_perm()[*bare] }
        }
        SpherePlan::K1 { arc0, arc1, arc0_first } => SpherePlan::K1 {
            arc0: move_site(arc0),
            arc1: move_site(arc1),
            arc0_first: *arc0_first,
        },
    })
}

/// The diffeomorphism `d^S` induced on surgered manifolds by `d`, for a
/// sphere placed in `d.source()` (equivalently in `d.target()`; the marks
/// agree).
pub fn induced_diffeo(d: &Diffeo, s: &FramedSphere) -> Result<Diffeo> {
    let s_target = transport_sphere(d, s)?;
    let (src_res, src_trace) = surgery_traced(d.source(), s)?;
    let (tgt_res, tgt_trace) = surgery_traced(d.target(), &s_target)?;
    let n = src_res.bare_circles();
    let mut perm = vec![usize::MAX; n];
    // New bare circles (born circle, join cycles) occupy the same structural
    // positions on both sides and correspond identically.
    for i in 0..src_trace.new_bares {
        perm[i] = i;
    }
    for (old, dest) in src_trace.bare_map.iter().enumerate() {
        if let Some(a) = dest {
            let moved = d.bare_perm()[old];
            if let Some(b) = tgt_trace.bare_map[moved] {
                perm[*a] = b;
            }
        }
    }
    // A k=2 surgery kills the circle the sphere names on each side; the
    // remaining correspondence is total.
    if perm.iter().any(|&p| p == usize::MAX) {
        return Err(Error::Surgery("induced diffeomorphism lost a circle".into()));
    }
    Diffeo::new(src_res, tgt_res, perm)
}

/// The cancellation diffeomorphism for a pair of surgeries whose belt and
/// attaching spheres meet exactly once: `source` is the manifold before the
/// pair (stripped of the first sphere's marks), `target` the double surgery
/// result, and the permutation is the identity away from the locus.
pub fn cancellation_diffeo(m: &Cob1, s: &FramedSphere, plan2: &SpherePlan) -> Result<Diffeo> {
    let inter = intersection_number(m, s, plan2)?;
    if !inter.is_once() {
        return Err(Error::Precondition(format!(
            "cancellation requires a single transverse intersection, found {inter:?}"
        )));
    }
    let (mid, trace1) = surgery_traced(m, s)?;
    let (mid_marked, s2) = apply_plan(&mid, plan2, fresh_id(&mid))?;
    let final_m = surgery(&mid_marked, &s2)?;
    let (source, _) = match s {
        FramedSphere::K1 { sphere } => m.without_sphere(*sphere),
        _ => (m.clone(), None),
    };
    if source != final_m {
        return Err(Error::Surgery(
            "cancellation did not return to the original manifold".into(),
        ));
    }

    let n = source.bare_circles();
    let identity: Vec<usize> = (0..n).collect();
    let perm = match (s, plan2) {
        (FramedSphere::K0, SpherePlan::K1 { arc0, arc1, .. }) => {
            // The born circle is consumed by the second surgery. If the
            // second arc sat on an original bare circle X, the locus glues
            // X and the born circle into the single join cycle, which the
            // trace convention lists first; everything else keeps its
            // relative order.
            let born = BeltLocus::Born { bare_index: 0 };
            debug_assert_eq!(trace1.belt, born);
            let other = if arc0.comp == CompRef::BareCircle(0) { arc1 } else { arc0 };
            match other.comp {
                CompRef::BareCircle(b) => {
                    // b >= 1 names an original bare circle (b − 1 in m).
                    let x = b - 1;
                    let mut perm = vec![0usize; n];
                    perm[x] = 0;
                    let mut next = 1;
                    for (i, p) in perm.iter_mut().enumerate() {
                        if i != x {
                            *p = next;
                            next += 1;
                        }
                    }
                    perm
                }
                _ => identity,
            }
        }
        (FramedSphere::K1 { .. }, SpherePlan::K2 { .. }) => {
            // Only split configurations admit a single intersection, and
            // the second surgery kills one join cycle. The survivor takes
            // the same front position that the stripped host takes in
            // `source` (both conventions list new/bared circles first), so
            // the index correspondence is the identity.
            identity
        }
        _ => identity,
    };
    Diffeo::new(source, final_m, perm)
}

/// Recover the positional plan of a placed sphere relative to the manifold
/// without it.
///
/// `marked` must strip (by removing the sphere's marks) to `base`. Host
/// circles that were bare in `base` are assigned bare indices in arc order.
pub fn extract_plan(base: &Cob1, marked: &Cob1, sphere: SphereId) -> Result<SpherePlan> {
    let (stripped, _) = marked.without_sphere(sphere);
    if stripped != *base {
        return Err(Error::Surgery(
            "marked manifold does not strip to the given base".into(),
        ));
    }
    let mut sites: [Option<ArcSite>; 2] = [None, None];
    let mut arc0_first = true;
    let mut bare_hosts: Vec<usize> = Vec::new(); // marked-circle indices that strip to bare

    for (i, iv) in marked.intervals().iter().enumerate() {
        let ours: Vec<(usize, &ArcMark)> = iv
            .marks
            .iter()
            .enumerate()
            .filter(|(_, mk)| mk.sphere == sphere)
            .collect();
        for (p, mk) in &ours {
            let gap = iv.marks[..*p]
                .iter()
                .filter(|other| other.sphere != sphere)
                .count();
            sites[mk.arc as usize] = Some(ArcSite { comp: CompRef::Interval(i), gap });
        }
        if ours.len() == 2 {
            arc0_first = ours[0].1.arc == 0;
        }
    }

    for (c, circle) in marked.marked_circles().iter().enumerate() {
        let ours: Vec<(usize, &ArcMark)> = circle
            .iter()
            .enumerate()
            .filter(|(_, mk)| mk.sphere == sphere)
            .collect();
        if ours.is_empty() {
            continue;
        }
        let rest: Vec<ArcMark> = circle
            .iter()
            .filter(|mk| mk.sphere != sphere)
            .cloned()
            .collect();
        if rest.is_empty() {
            // host was a bare circle of base
            let bare_index = if let Some(pos) = bare_hosts.iter().position(|&h| h == c) {
                pos
            } else {
                bare_hosts.push(c);
                bare_hosts.len() - 1
            };
            for (_, mk) in &ours {
                sites[mk.arc as usize] =
                    Some(ArcSite { comp: CompRef::BareCircle(bare_index), gap: 0 });
            }
            // cyclic order of two arcs alone is rotation invariant
            arc0_first = true;
            continue;
        }
        // find the base circle with the same residual content
        let canonical_rest = super::cob::min_rotation(&rest);
        let base_index = base
            .marked_circles()
            .iter()
            .position(|bc| *bc == canonical_rest)
            .ok_or_else(|| Error::Surgery("host circle not found in base".into()))?;
        // base gap g sits after base mark g
        for (p, mk) in &ours {
            let mut q = *p;
            let prev = loop {
                q = (q + circle.len() - 1) % circle.len();
                if circle[q].sphere != sphere {
                    break circle[q];
                }
            };
            let gap = canonical_rest.iter().position(|r| *r == prev).unwrap();
            sites[mk.arc as usize] = Some(ArcSite { comp: CompRef::MarkedCircle(base_index), gap });
        }
        if ours.len() == 2 {
            // same gap order: which arc follows the shared predecessor first
            let (p0, _) = ours[0];
            let before0 = {
                let mut q = p0;
                let mut dist = 0;
                loop {
                    q = (q + circle.len() - 1) % circle.len();
                    dist += 1;
                    if circle[q].sphere != sphere {
                        break dist;
                    }
                }
            };
            // ours[0] is closer to the predecessor iff it comes first
            arc0_first = (ours[0].1.arc == 0) == (before0 == 1);
        }
    }

    match (sites[0], sites[1]) {
        (Some(a0), Some(a1)) => Ok(SpherePlan::K1 { arc0: a0, arc1: a1, arc0_first }),
        _ => Err(Error::Surgery(format!("sphere {sphere:?} not placed"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold1d::cob::Sign;
    use crate::manifold1d::sphere::enumerate_k1_plans;

    #[test]
    fn identity_diffeo_and_inverse() {
        let m = Cob1::circles(3);
        let d = Diffeo::new(m.clone(), m.clone(), vec![2, 0, 1]).unwrap();
        let e = d.compose(&d.inverse()).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn transport_k2_along_swap() {
        let m = Cob1::circles(2);
        let d = Diffeo::new(m.clone(), m.clone(), vec![1, 0]).unwrap();
        let s = transport_sphere(&d, &FramedSphere::K2 { bare: 0 }).unwrap();
        assert_eq!(s, FramedSphere::K2 { bare: 1 });
    }

    #[test]
    fn transport_along_identity_is_identity() {
        let m = Cob1::circles(2);
        let d = Diffeo::identity(&m);
        for s in [FramedSphere::K0, FramedSphere::K2 { bare: 1 }] {
            assert_eq!(transport_sphere(&d, &s).unwrap(), s);
        }
    }

    #[test]
    fn relation_two_square_closes_on_two_circles() {
        // surgery(target, transported sphere) agrees with transporting the
        // surgered manifold through the induced diffeomorphism, for every
        // sphere of a 2-circle manifold and every bare permutation.
        let m = Cob1::circles(2);
        for perm in [vec![0, 1], vec![1, 0]] {
            let d = Diffeo::new(m.clone(), m.clone(), perm).unwrap();
            for k in [0u8, 2u8] {
                for placed in crate::manifold1d::sphere::enumerate_framed_spheres(
                    &m,
                    k,
                    crate::manifold1d::cob::SphereId(5),
                ) {
                    let s2 = transport_sphere(&d, &placed.sphere).unwrap();
                    let lhs = surgery(d.target(), &s2).unwrap();
                    let ind = induced_diffeo(&d, &placed.sphere).unwrap();
                    assert_eq!(ind.target(), &lhs);
                    assert_eq!(
                        ind.source(),
                        &surgery(d.source(), &placed.sphere).unwrap()
                    );
                }
            }
            // k=1 spheres via plans on the marked manifold
            let d = Diffeo::new(m.clone(), m.clone(), vec![1, 0]).unwrap();
            for plan in enumerate_k1_plans(&m, SphereId(5)) {
                let moved = transport_plan(&d, &plan).unwrap();
                let (src_marked, s) = apply_plan(&m, &plan, SphereId(5)).unwrap();
                let (tgt_marked, s_t) = apply_plan(&m, &moved, SphereId(5)).unwrap();
                let lhs = surgery(&src_marked, &s).unwrap();
                let rhs = surgery(&tgt_marked, &s_t).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn cancellation_birth_then_saddle() {
        let cyl = Cob1::identity(&vec![Sign::Plus]);
        let on_born = ArcSite { comp: CompRef::BareCircle(0), gap: 0 };
        let on_interval = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let plan = SpherePlan::K1 { arc0: on_born, arc1: on_interval, arc0_first: true };
        let d = cancellation_diffeo(&cyl, &FramedSphere::K0, &plan).unwrap();
        assert_eq!(d.source(), &cyl);
        assert!(d.is_identity());
    }

    #[test]
    fn cancellation_split_then_death() {
        let cyl = Cob1::identity(&vec![Sign::Plus]);
        let sid = SphereId(0);
        let site = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let m = crate::manifold1d::sphere::place_k1(&cyl, sid, site, site, false).unwrap();
        let d = cancellation_diffeo(&m, &FramedSphere::K1 { sphere: sid }, &SpherePlan::K2 { bare: 0 })
            .unwrap();
        assert_eq!(d.source(), &cyl);
        assert!(d.is_identity());
    }

    #[test]
    fn cancellation_rejects_far_spheres() {
        let cyl = Cob1::identity(&vec![Sign::Plus]);
        let on_interval = ArcSite { comp: CompRef::Interval(0), gap: 0 };
        let plan = SpherePlan::K1 { arc0: on_interval, arc1: on_interval, arc0_first: true };
        assert!(cancellation_diffeo(&cyl, &FramedSphere::K0, &plan).is_err());
    }

    #[test]
    fn extract_plan_inverts_placement() {
        let base = Cob1::identity(&vec![Sign::Plus, Sign::Minus])
            .disjoint_union(&Cob1::circles(2))
            .unwrap();
        let sid = SphereId(9);
        for plan in enumerate_k1_plans(&base, sid) {
            let (marked, _) = apply_plan(&base, &plan, sid).unwrap();
            let back = extract_plan(&base, &marked, sid).unwrap();
            let (again, _) = apply_plan(&base, &back, sid).unwrap();
            assert_eq!(again, marked, "plan {plan:?} vs extracted {back:?}");
        }
    }
}
