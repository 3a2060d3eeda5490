use super::word::{Move, Word};
use crate::error::{Error, Result};
use crate::manifold1d::{
    apply_plan, cancellation_diffeo, enumerate_k1_plans, extract_plan, fresh_id, induced_diffeo,
    intersection_number, reverse_plan, surgery, surgery_traced, transport_plan, ArcSite, Cob1,
    CompRef, Diffeo, FramedSphere, SphereId, SpherePlan,
};

/// One applicable rewrite, with enough parameters to apply it
/// deterministically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RewriteStep {
    /// Merge two adjacent diffeomorphism moves.
    R1Merge { position: usize },
    /// Drop a diffeomorphism move isotopic to the identity.
    R1DropId { position: usize },
    /// Slide a surgery left through a preceding diffeomorphism.
    R2SlideLeft { position: usize },
    /// Slide a surgery right through a following diffeomorphism.
    R2SlideRight { position: usize },
    /// Swap two surgeries along disjoint spheres; the parameters give the
    /// plans of the swapped pair.
    R3Commute { position: usize, first: SpherePlan, second: SpherePlan },
    /// Replace a canceling pair of surgeries by the induced diffeomorphism.
    R4Cancel { position: usize },
    /// Insert a canceling pair (and the compensating diffeomorphism when it
    /// is not the identity).
    R4Insert { position: usize, first: SpherePlan, second: SpherePlan },
    /// Reverse the attaching sphere of a k=1 surgery.
    R5Reverse { position: usize },
}

impl RewriteStep {
    pub fn position(&self) -> usize {
        match self {
            RewriteStep::R1Merge { position }
            | RewriteStep::R1DropId { position }
            | RewriteStep::R2SlideLeft { position }
            | RewriteStep::R2SlideRight { position }
            | RewriteStep::R3Commute { position, .. }
            | RewriteStep::R4Cancel { position }
            | RewriteStep::R4Insert { position, .. }
            | RewriteStep::R5Reverse { position } => *position,
        }
    }
}

const ID_A: SphereId = SphereId(100);
const ID_B: SphereId = SphereId(101);

/// Bare-circle indices of the marked placement, mapped back to the indices
/// of the unmarked base: placing arcs on bare circles consumes them, the
/// remaining ones keep their relative order.
fn bare_embedding(base: &Cob1, plan: &SpherePlan) -> Vec<usize> {
    let mut consumed = Vec::new();
    if let SpherePlan::K1 { arc0, arc1, .. } = plan {
        for site in [arc0, arc1] {
            if let CompRef::BareCircle(b) = site.comp {
                if !consumed.contains(&b) {
                    consumed.push(b);
                }
            }
        }
    }
    (0..base.bare_circles())
        .filter(|b| !consumed.contains(b))
        .collect()
}

/// Try to express `[Surgery p1, Surgery p2]` at `m0` as surgeries along two
/// disjoint spheres, returning the swapped plans.
fn commute(m0: &Cob1, p1: &SpherePlan, p2: &SpherePlan) -> Option<(SpherePlan, SpherePlan)> {
    let (m_a, s_a) = apply_plan(m0, p1, ID_A).ok()?;
    let m1 = surgery(&m_a, &s_a).ok()?;
    let (reference, _s_b_ref) = apply_plan(&m1, p2, ID_B).ok()?;

    // Candidate placements of the second sphere directly in the marked
    // manifold m_a, i.e. disjoint from the first sphere.
    let candidates: Vec<SpherePlan> = match p2 {
        SpherePlan::K0 => vec![SpherePlan::K0],
        SpherePlan::K2 { .. } => (0..m_a.bare_circles())
            .map(|b| SpherePlan::K2 { bare: b })
            .collect(),
        SpherePlan::K1 { .. } => enumerate_k1_plans(&m_a, ID_B),
    };

    for q in candidates {
        let Ok((m_ab, s_b)) = apply_plan(&m_a, &q, ID_B) else { continue };
        // push the second sphere through the first surgery and compare
        let Ok(pushed) = surgery(&m_ab, &s_a) else { continue };
        if pushed != reference {
            continue;
        }
        // Found a simultaneous witness. Read off the swapped word.
        let q2 = match &q {
            SpherePlan::K0 => SpherePlan::K0,
            SpherePlan::K2 { bare } => {
                // index in m_a coordinates -> index in m0 coordinates
                let emb = bare_embedding(m0, p1);
                SpherePlan::K2 { bare: emb[*bare] }
            }
            SpherePlan::K1 { .. } => {
                let stripped = m_ab.without_sphere(ID_A).0;
                extract_plan(m0, &stripped, ID_B).ok()?
            }
        };
        // The first sphere's marks ride through the second surgery; read
        // off its plan in the swapped order.
        let Ok(m1_alt) = surgery(&m_ab, &s_b) else { continue };
        let q1 = match p1 {
            SpherePlan::K0 => SpherePlan::K0,
            SpherePlan::K2 { bare } => {
                // transport the killed circle's index through q's placement
                // and the second surgery
                let emb = bare_embedding(m0, &q2);
                let in_mb = emb.iter().position(|&x| x == *bare)?;
                let (_, trace_b) = surgery_traced(&m_ab, &s_b).ok()?;
                // m_ab and (m0 marked with q2) have the same bare circles
                SpherePlan::K2 { bare: trace_b.bare_map[in_mb]? }
            }
            SpherePlan::K1 { .. } => {
                let base = m1_alt.without_sphere(ID_A).0;
                extract_plan(&base, &m1_alt, ID_A).ok()?
            }
        };
        // final sanity: the swapped pair reaches the same target
        let original_target = surgery(&reference, &_s_b_ref).ok()?;
        let swapped_target = surgery(&m1_alt, &s_a).ok()?;
        if swapped_target == original_target {
            return Some((q2, q1));
        }
    }
    None
}

/// Enumerate every applicable rewrite of a word. With `non_compact` set,
/// steps that would introduce a k=2 surgery are excluded.
pub fn enumerate_rewrites(w: &Word, non_compact: bool) -> Result<Vec<RewriteStep>> {
    let states = w.states()?;
    let mut steps = Vec::new();
    for i in 0..w.moves.len() {
        match (&w.moves[i], w.moves.get(i + 1)) {
            (Move::Diff(p), _) if p.iter().enumerate().all(|(a, &b)| a == b) => {
                steps.push(RewriteStep::R1DropId { position: i });
            }
            _ => {}
        }
        if let (Some(Move::Diff(_)), Some(Move::Diff(_))) =
            (w.moves.get(i), w.moves.get(i + 1))
        {
            steps.push(RewriteStep::R1Merge { position: i });
        }
        if let (Some(Move::Diff(_)), Some(Move::Surgery(_))) =
            (w.moves.get(i), w.moves.get(i + 1))
        {
            steps.push(RewriteStep::R2SlideLeft { position: i });
        }
        if let (Some(Move::Surgery(_)), Some(Move::Diff(perm))) =
            (w.moves.get(i), w.moves.get(i + 1))
        {
            if slide_right(&states[i], match &w.moves[i] {
                Move::Surgery(p) => p,
                _ => unreachable!(),
            }, perm)
            .is_some()
            {
                steps.push(RewriteStep::R2SlideRight { position: i });
            }
        }
        if let (Some(Move::Surgery(p1)), Some(Move::Surgery(p2))) =
            (w.moves.get(i), w.moves.get(i + 1))
        {
            if let Some((first, second)) = commute(&states[i], p1, p2) {
                steps.push(RewriteStep::R3Commute { position: i, first, second });
            }
            if let Ok((m_a, s_a)) = apply_plan(&states[i], p1, ID_A) {
                if let Ok(inter) = intersection_number(&m_a, &s_a, p2) {
                    if inter.is_once() {
                        steps.push(RewriteStep::R4Cancel { position: i });
                    }
                }
            }
        }
        if let Move::Surgery(SpherePlan::K1 { .. }) = &w.moves[i] {
            steps.push(RewriteStep::R5Reverse { position: i });
        }
    }
    for (i, state) in states.iter().enumerate() {
        for (first, second) in insertable_pairs(state, non_compact) {
            steps.push(RewriteStep::R4Insert { position: i, first, second });
        }
    }
    Ok(steps)
}

/// Canceling pairs that may be inserted at a manifold: a birth canceled by
/// a saddle, or a splitting saddle canceled by a death.
pub fn insertable_pairs(m: &Cob1, non_compact: bool) -> Vec<(SpherePlan, SpherePlan)> {
    let mut pairs = Vec::new();
    // k = 0 then k = 1: one arc on the born circle, the other anywhere.
    let (after_birth, _) = surgery_traced(m, &FramedSphere::K0).unwrap();
    let born = ArcSite { comp: CompRef::BareCircle(0), gap: 0 };
    for site in crate::manifold1d::all_sites(&after_birth) {
        if site.comp == born.comp {
            continue;
        }
        for (a0, a1) in [(born, site), (site, born)] {
            pairs.push((
                SpherePlan::K0,
                SpherePlan::K1 { arc0: a0, arc1: a1, arc0_first: true },
            ));
        }
    }
    if non_compact {
        return pairs;
    }
    // k = 1 then k = 2: a splitting saddle, killing one offspring circle.
    for plan in enumerate_k1_plans(m, ID_A) {
        let Ok((marked, s)) = apply_plan(m, &plan, ID_A) else { continue };
        let Ok((_, trace)) = surgery_traced(&marked, &s) else { continue };
        if let crate::manifold1d::BeltLocus::Joins { tail, head } = trace.belt {
            for (host, other) in [(tail, head), (head, tail)] {
                if host == other {
                    continue;
                }
                if let CompRef::BareCircle(b) = host {
                    pairs.push((plan, SpherePlan::K2 { bare: b }));
                }
            }
        }
    }
    pairs
}

fn slide_right(m: &Cob1, plan: &SpherePlan, perm_after: &[usize]) -> Option<(Vec<usize>, SpherePlan)> {
    // Find d on m with induced diffeomorphism equal to the given
    // permutation; the slid word is [Diff d, Surgery d∘plan].
    let (marked, s) = apply_plan(m, plan, ID_A).ok()?;
    let (_result, trace) = surgery_traced(&marked, &s).ok()?;
    // the permutation must fix the new circles
    for i in 0..trace.new_bares {
        if perm_after.get(i) != Some(&i) {
            return None;
        }
    }
    let emb = bare_embedding(m, plan);
    // reconstruct the permutation on the marked manifold's bare circles
    let mut d_marked = vec![usize::MAX; marked.bare_circles()];
    for (old, dest) in trace.bare_map.iter().enumerate() {
        match dest {
            Some(a) => {
                let b = *perm_after.get(*a)?;
                // b must be a carried circle
                if b < trace.new_bares {
                    return None;
                }
                let old2 = trace.bare_map.iter().position(|x| *x == Some(b))?;
                d_marked[old] = old2;
            }
            None => {
                // killed circle must be fixed so the sphere transports to
                // itself
                d_marked[old] = old;
            }
        }
    }
    if d_marked.iter().any(|&x| x == usize::MAX) {
        return None;
    }
    // lift to the unmarked manifold: consumed circles stay fixed
    let mut d = vec![usize::MAX; m.bare_circles()];
    for b in 0..m.bare_circles() {
        if let Some(j) = emb.iter().position(|&x| x == b) {
            d[b] = emb[d_marked[j]];
        } else {
            d[b] = b;
        }
    }
    // the plan transported along d⁻¹... along d: the slid surgery acts on
    // the same manifold; sites on bare circles move by the inverse of d
    let mut d_inv = vec![0usize; d.len()];
    for (i, &j) in d.iter().enumerate() {
        d_inv[j] = i;
    }
    let diffeo = Diffeo::new(m.clone(), m.clone(), d_inv.clone()).ok()?;
    let moved = transport_plan(&diffeo, plan).ok()?;
    Some((d, moved))
}

/// Apply a rewrite step. The result is a valid word with the same source
/// and the same target canonical form; both are re-checked.
pub fn apply_rewrite(w: &Word, step: &RewriteStep) -> Result<Word> {
    let states = w.states()?;
    let target = states.last().unwrap().clone();
    let i = step.position();
    let get_move = |j: usize| -> Result<&Move> {
        w.moves
            .get(j)
            .ok_or_else(|| Error::Rewrite(format!("no move at position {j}")))
    };
    let mut moves = w.moves.clone();
    match step {
        RewriteStep::R1Merge { .. } => {
            let (Move::Diff(p1), Move::Diff(p2)) = (get_move(i)?, get_move(i + 1)?) else {
                return Err(Error::Rewrite("R1 merge needs two adjacent diffeomorphisms".into()));
            };
            let composed: Vec<usize> = p1.iter().map(|&a| p2[a]).collect();
            moves.splice(i..i + 2, [Move::Diff(composed)]);
        }
        RewriteStep::R1DropId { .. } => {
            let Move::Diff(p) = get_move(i)? else {
                return Err(Error::Rewrite("R1 drop needs a diffeomorphism move".into()));
            };
            if !p.iter().enumerate().all(|(a, &b)| a == b) {
                return Err(Error::Rewrite(
                    "R1 drop applies to identity diffeomorphisms only".into(),
                ));
            }
            moves.remove(i);
        }
        RewriteStep::R2SlideLeft { .. } => {
            let (Move::Diff(perm), Move::Surgery(plan)) = (get_move(i)?, get_move(i + 1)?) else {
                return Err(Error::Rewrite("R2 slide-left needs [diff, surgery]".into()));
            };
            let m = &states[i];
            let d = Diffeo::new(m.clone(), m.clone(), perm.clone())?;
            let pulled = transport_plan(&d.inverse(), plan)?;
            let (marked, s) = apply_plan(m, &pulled, fresh_id(m))?;
            let d_marked = Diffeo::new(marked.clone(), marked.clone(), {
                // extend d over the marked manifold: consumed bare circles
                // cannot be moved by d, otherwise the slide is inapplicable
                let emb = bare_embedding(m, &pulled);
                let mut dm = Vec::with_capacity(marked.bare_circles());
                for &orig in &emb {
                    let image = d.bare_perm()[orig];
                    let Some(j) = emb.iter().position(|&x| x == image) else {
                        return Err(Error::Rewrite(
                            "diffeomorphism moves the surgered circles".into(),
                        ));
                    };
                    dm.push(j);
                }
                dm
            })?;
            let induced = induced_diffeo(&d_marked, &s)?;
            moves.splice(
                i..i + 2,
                [Move::Surgery(pulled), Move::Diff(induced.bare_perm().to_vec())],
            );
        }
        RewriteStep::R2SlideRight { .. } => {
            let (Move::Surgery(plan), Move::Diff(perm)) = (get_move(i)?, get_move(i + 1)?) else {
                return Err(Error::Rewrite("R2 slide-right needs [surgery, diff]".into()));
            };
            let Some((d, moved)) = slide_right(&states[i], plan, perm) else {
                return Err(Error::Rewrite(
                    "the diffeomorphism is not induced by one of the pre-surgery manifold".into(),
                ));
            };
            moves.splice(i..i + 2, [Move::Diff(d), Move::Surgery(moved)]);
        }
        RewriteStep::R3Commute { first, second, .. } => {
            let (Move::Surgery(_), Move::Surgery(_)) = (get_move(i)?, get_move(i + 1)?) else {
                return Err(Error::Rewrite("R3 needs two adjacent surgeries".into()));
            };
            moves.splice(
                i..i + 2,
                [Move::Surgery(*first), Move::Surgery(*second)],
            );
        }
        RewriteStep::R4Cancel { .. } => {
            let (Move::Surgery(p1), Move::Surgery(p2)) = (get_move(i)?, get_move(i + 1)?) else {
                return Err(Error::Rewrite("R4 needs two adjacent surgeries".into()));
            };
            let m = &states[i];
            let (marked, s) = apply_plan(m, p1, fresh_id(m))?;
            let d = cancellation_diffeo(&marked, &s, p2)?;
            moves.splice(i..i + 2, [Move::Diff(d.bare_perm().to_vec())]);
        }
        RewriteStep::R4Insert { first, second, .. } => {
            if i > w.moves.len() {
                return Err(Error::Rewrite(format!("insert position {i} out of range")));
            }
            let m = &states[i];
            let (marked, s) = apply_plan(m, first, fresh_id(m))?;
            let d = cancellation_diffeo(&marked, &s, second)?;
            let mut inserted = vec![Move::Surgery(*first), Move::Surgery(*second)];
            if !d.is_identity() {
                inserted.push(Move::Diff(d.inverse().bare_perm().to_vec()));
            }
            moves.splice(i..i, inserted);
        }
        RewriteStep::R5Reverse { .. } => {
            let Move::Surgery(plan) = get_move(i)? else {
                return Err(Error::Rewrite("R5 needs a surgery move".into()));
            };
            moves[i] = Move::Surgery(reverse_plan(plan)?);
        }
    }
    let out = Word::new(w.source.clone(), moves)?;
    let new_target = out.replay().map_err(|e| {
        Error::Rewrite(format!("rewritten word does not replay: {e}"))
    })?;
    if new_target != target {
        return Err(Error::Rewrite(
            "rewrite changed the target canonical form; step rejected".into(),
        ));
    }
    Ok(out)
}

/// Greedily merge adjacent diffeomorphism moves and drop identities.
pub fn normalize_diffs(w: &Word) -> Word {
    let mut moves: Vec<Move> = Vec::new();
    for mv in &w.moves {
        match (moves.last_mut(), mv) {
            (Some(Move::Diff(prev)), Move::Diff(next)) => {
                let composed: Vec<usize> = prev.iter().map(|&a| next[a]).collect();
                *prev = composed;
            }
            _ => moves.push(mv.clone()),
        }
    }
    moves.retain(|m| match m {
        Move::Diff(p) => !p.iter().enumerate().all(|(a, &b)| a == b),
        _ => true,
    });
    Word { source: w.source.clone(), moves }
}

/// Greedy normal form: merge diffeomorphisms and cancel pairs left to
/// right until no rule applies.
pub fn normalize(w: &Word) -> Result<Word> {
    let mut current = normalize_diffs(w);
    loop {
        let steps = enumerate_rewrites(&current, false)?;
        let next = steps.iter().find(|s| {
            matches!(s, RewriteStep::R4Cancel { .. } | RewriteStep::R1Merge { .. } | RewriteStep::R1DropId { .. })
        });
        match next {
            Some(step) => {
                current = apply_rewrite(&current, step)?;
                current = normalize_diffs(&current);
            }
            None => return Ok(current),
        }
    }
}
