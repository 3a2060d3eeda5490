use crate::error::{Error, Result};
use crate::manifold1d::{
    apply_plan, fresh_id, surgery, Cob1, Diffeo, SpherePlan,
};

/// A single move of a handle-decomposition word.
///
/// Surgery moves name their locus positionally in the canonical form of the
/// manifold reached at their position; diffeomorphism moves give the bare
/// circle permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    Surgery(SpherePlan),
    Diff(Vec<usize>),
}

/// A parametrized handle-decomposition word: a source manifold and a
/// sequence of moves. Validity of every move is positional and checked by
/// replay.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    pub source: Cob1,
    pub moves: Vec<Move>,
}

impl Word {
    pub fn new(source: Cob1, moves: Vec<Move>) -> Result<Word> {
        if !source.is_unmarked() {
            return Err(Error::Validation(
                "word sources are unmarked canonical manifolds".into(),
            ));
        }
        Ok(Word { source, moves })
    }

    pub fn empty(source: Cob1) -> Result<Word> {
        Word::new(source, Vec::new())
    }

    /// Apply one move to a manifold.
    pub fn step(m: &Cob1, mv: &Move) -> Result<Cob1> {
        match mv {
            Move::Surgery(plan) => {
                let (marked, sphere) = apply_plan(m, plan, fresh_id(m))?;
                surgery(&marked, &sphere)
            }
            Move::Diff(perm) => {
                let d = Diffeo::new(m.clone(), m.clone(), perm.clone())?;
                Ok(d.target().clone())
            }
        }
    }

    /// All intermediate manifolds, from the source to the target.
    pub fn states(&self) -> Result<Vec<Cob1>> {
        let mut states = vec![self.source.clone()];
        for (i, mv) in self.moves.iter().enumerate() {
            let next = Word::step(states.last().unwrap(), mv).map_err(|e| Error::Replay {
                index: i,
                reason: e.to_string(),
            })?;
            states.push(next);
        }
        Ok(states)
    }

    /// The target manifold; fails fast at the first invalid move.
    pub fn replay(&self) -> Result<Cob1> {
        Ok(self.states()?.pop().unwrap())
    }

    /// Whether any move performs a k=2 surgery.
    pub fn uses_top_handle(&self) -> bool {
        self.moves
            .iter()
            .any(|m| matches!(m, Move::Surgery(SpherePlan::K2 { .. })))
    }

    /// Concatenate two words with matching endpoints.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let t = self.replay()?;
        if t != other.source {
            return Err(Error::Endpoints(
                "first word's target differs from second word's source".into(),
            ));
        }
        let mut moves = self.moves.clone();
        moves.extend(other.moves.iter().cloned());
        Word::new(self.source.clone(), moves)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold1d::{ArcSite, CompRef};

    #[test]
    fn empty_word_replays_to_source() {
        let m = Cob1::circles(2);
        let w = Word::empty(m.clone()).unwrap();
        assert_eq!(w.replay().unwrap(), m);
    }

    #[test]
    fn birth_on_empty() {
        let w = Word::new(Cob1::empty(), vec![Move::Surgery(SpherePlan::K0)]).unwrap();
        assert_eq!(w.replay().unwrap(), Cob1::circle());
    }

    #[test]
    fn sphere_word_replays_to_empty() {
        // ∅ → S¹ → S¹⊔S¹ → S¹ → ∅: birth, split, death, death.
        let on_born = ArcSite { comp: CompRef::BareCircle(0), gap: 0 };
        let w = Word::new(
            Cob1::empty(),
            vec![
                Move::Surgery(SpherePlan::K0),
                Move::Surgery(SpherePlan::K1 { arc0: on_born, arc1: on_born, arc0_first: true }),
                Move::Surgery(SpherePlan::K2 { bare: 0 }),
                Move::Surgery(SpherePlan::K2 { bare: 0 }),
            ],
        )
        .unwrap();
        let states = w.states().unwrap();
        assert_eq!(states[1], Cob1::circle());
        assert_eq!(states[2], Cob1::circles(2));
        assert_eq!(states[3], Cob1::circle());
        assert_eq!(states[4], Cob1::empty());
    }

    #[test]
    fn replay_reports_failing_index() {
        let w = Word::new(
            Cob1::empty(),
            vec![
                Move::Surgery(SpherePlan::K0),
                Move::Surgery(SpherePlan::K2 { bare: 3 }),
            ],
        )
        .unwrap();
        match w.replay() {
            Err(Error::Replay { index, .. }) => assert_eq!(index, 1),
            other => panic!("expected replay error, got {other:?}"),
        }
    }
}
