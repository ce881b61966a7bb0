//! Maximal solutions of `⊕_k z_k ⊗ H_k = Y` over an additively idempotent
//! semiring.
//!
//! For each unknown the set `T_k = {x : x ⊗ H_k ⊕ Y = Y}` is the intersection
//! of one constraint per component; its maximum is the meet of the
//! per-component maxima. If the system is solvable at all, the vector of
//! these maxima is a solution and dominates every other solution.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::semiring::Residuated;

/// `columns[k]` is `H_k`; every column has the length of `target`.
/// JSON form: `{"columns": [[…], …], "target": […]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SystemRepr<S>", into = "SystemRepr<S>")]
#[serde(bound(serialize = "S: Serialize + Clone", deserialize = "S: Deserialize<'de>"))]
pub struct LinearSystem<S> {
    columns: Vec<Vec<S>>,
    target: Vec<S>,
}

#[derive(Serialize, Deserialize)]
struct SystemRepr<S> {
    columns: Vec<Vec<S>>,
    target: Vec<S>,
}

impl<S> TryFrom<SystemRepr<S>> for LinearSystem<S> {
    type Error = Error;

    fn try_from(r: SystemRepr<S>) -> Result<Self> {
        LinearSystem::new(r.columns, r.target)
    }
}

impl<S> From<LinearSystem<S>> for SystemRepr<S> {
    fn from(s: LinearSystem<S>) -> Self {
        SystemRepr {
            columns: s.columns,
            target: s.target,
        }
    }
}

impl<S> LinearSystem<S> {
    pub fn new(columns: Vec<Vec<S>>, target: Vec<S>) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::InvalidParameter("linear system needs at least one column".into()));
        }
        for c in &columns {
            check_dim(target.len(), c.len())?;
        }
        Ok(LinearSystem { columns, target })
    }

    pub fn columns(&self) -> &[Vec<S>] {
        &self.columns
    }

    pub fn target(&self) -> &[S] {
        &self.target
    }

    pub fn unknowns(&self) -> usize {
        self.columns.len()
    }

    pub fn equations(&self) -> usize {
        self.target.len()
    }
}

impl<S: Residuated> LinearSystem<S> {
    /// The coordinatewise maxima `z_k = max T_k`, before verification.
    pub fn candidate(&self) -> Vec<S> {
        self.columns
            .iter()
            .map(|h| {
                h.iter()
                    .zip(&self.target)
                    .map(|(h, y)| S::max_component(h, y))
                    .fold(S::one(), |acc, x| acc.meet(&x))
            })
            .collect()
    }

    /// `⊕_k z_k ⊗ H_k`.
    pub fn evaluate(&self, z: &[S]) -> Result<Vec<S>> {
        check_dim(self.columns.len(), z.len())?;
        let mut acc = vec![S::zero(); self.target.len()];
        for (zk, h) in z.iter().zip(&self.columns) {
            for (a, hl) in acc.iter_mut().zip(h) {
                *a = a.add(&zk.mul(hl));
            }
        }
        Ok(acc)
    }

    pub fn verify(&self, z: &[S]) -> Result<bool> {
        Ok(self.evaluate(z)? == self.target)
    }

    /// The maximal solution, or `None` when the system has no solution.
    pub fn maximal_solution(&self) -> Option<Vec<S>> {
        let z = self.candidate();
        match self.verify(&z) {
            Ok(true) => Some(z),
            _ => None,
        }
    }

    pub fn solve(&self) -> Result<Vec<S>> {
        self.maximal_solution()
            .ok_or_else(|| Error::NoSolution("maximal candidate does not satisfy the system".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::{DigitalValue, Finite, Infinity};

    fn col(v: &[u64]) -> Vec<DigitalValue> {
        v.iter().map(|&x| Finite(x)).collect()
    }

    fn max_component(h: u64, y: u64) -> DigitalValue {
        DigitalValue::max_component(&Finite(h), &Finite(y))
    }

    /// Greatest x over a bounded domain with x ⊗ h ⊕ y = y.
    fn exhaustive_max(h: DigitalValue, y: DigitalValue) -> DigitalValue {
        (0..=10_000u64)
            .map(Finite)
            .chain([Infinity])
            .filter(|x| x.mul(h).add(y) == y)
            .fold(Finite(0), |a, b| a.add(b))
    }

    #[test]
    fn max_component_examples() {
        assert_eq!(max_component(5, 19), Infinity);
        assert_eq!(max_component(19, 5), Finite(5));
        assert_eq!(max_component(28, 19), Finite(19));
        for (h, y) in [(5, 19), (19, 5), (28, 19)] {
            assert_eq!(max_component(h, y), exhaustive_max(Finite(h), Finite(y)));
        }
    }

    #[test]
    fn max_component_agrees_with_exhaustive_search() {
        let probes = [0u64, 1, 5, 9, 10, 19, 28, 55, 91, 99, 100, 777, 1000, 9999];
        let values: Vec<_> = probes.iter().map(|&v| Finite(v)).chain([Infinity]).collect();
        for &h in &values {
            for &y in &values {
                assert_eq!(DigitalValue::max_component(&h, &y), exhaustive_max(h, y), "h={h} y={y}");
            }
        }
    }

    #[test]
    fn solver_examples() {
        let sys = LinearSystem::new(vec![col(&[19]), col(&[5])], col(&[19])).unwrap();
        assert_eq!(sys.maximal_solution(), Some(vec![Infinity, Infinity]));

        let sys = LinearSystem::new(vec![col(&[3, 77])], col(&[3, 77])).unwrap();
        assert_eq!(sys.maximal_solution(), Some(vec![Infinity]));

        let sys = LinearSystem::new(vec![col(&[5])], col(&[19])).unwrap();
        assert_eq!(sys.maximal_solution(), None);
        assert!(matches!(sys.solve(), Err(Error::NoSolution(_))));
    }

    #[test]
    fn verify_contract() {
        let sys = LinearSystem::new(vec![col(&[19, 2]), col(&[5, 40])], col(&[5, 4])).unwrap();
        if let Some(z) = sys.maximal_solution() {
            assert!(sys.verify(&z).unwrap());
        }
        assert!(!sys.verify(&[Finite(0), Finite(0)]).unwrap());
        assert!(sys.verify(&[Finite(0)]).is_err());
    }

    #[test]
    fn malformed_systems_rejected() {
        assert!(LinearSystem::<DigitalValue>::new(vec![], col(&[1])).is_err());
        assert!(LinearSystem::new(vec![col(&[1, 2])], col(&[1])).is_err());
        let err = serde_json::from_str::<LinearSystem<DigitalValue>>(r#"{"columns":[[1]],"target":[1,2]}"#);
        assert!(err.is_err());
    }

    #[test]
    fn json_form() {
        let sys = LinearSystem::new(vec![col(&[19]), vec![Infinity]], col(&[19])).unwrap();
        let s = serde_json::to_string(&sys).unwrap();
        assert_eq!(s, r#"{"columns":[[19],["inf"]],"target":[19]}"#);
        assert_eq!(serde_json::from_str::<LinearSystem<DigitalValue>>(&s).unwrap(), sys);
    }
}
