//! Factorization results: unit times a product of monic irreducibles.

/// A complete factorization `unit * prod factors[i]^mult[i]`.
///
/// Factors are pairwise distinct, stored in a canonical order chosen by the
/// producer, each irreducible over its domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorList<P, U> {
    unit: U,
    factors: Vec<(P, u32)>,
}

impl<P, U> FactorList<P, U> {
    pub fn new(unit: U, factors: Vec<(P, u32)>) -> Self {
        FactorList { unit, factors }
    }

    pub fn unit(&self) -> &U {
        &self.unit
    }

    pub fn factors(&self) -> &[(P, u32)] {
        &self.factors
    }

    pub fn into_parts(self) -> (U, Vec<(P, u32)>) {
        (self.unit, self.factors)
    }

    /// A single factor with multiplicity 1 and trivial-ish unit is how an
    /// irreducible input comes back; callers that need the unit to be exactly
    /// one check it themselves.
    pub fn is_single(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl<P: Clone + Ord, U> FactorList<P, U> {
    /// Merge two factorizations (of a and b) into the factorization of a*b.
    pub fn merge(&self, other: &Self, mul_unit: impl Fn(&U, &U) -> U) -> Self {
        let mut factors = self.factors.clone();
        for (g, m) in &other.factors {
            match factors.iter_mut().find(|(h, _)| h == g) {
                Some((_, mm)) => *mm += m,
                None => factors.push((g.clone(), *m)),
            }
        }
        factors.sort();
        FactorList {
            unit: mul_unit(&self.unit, &other.unit),
            factors,
        }
    }
}
