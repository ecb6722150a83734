use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector, one slot per ring variable.
///
/// Ordered graded-lexicographically: higher total degree first, ties broken
/// by the exponent of `x1`, then `x2`, and so on.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[index] = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.0[index]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Panics on exponent overflow; degrees used here stay far below it.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("monomial exponent overflow"))
                .collect(),
        )
    }

    pub(crate) fn bump(&mut self, index: usize, by: u16) {
        self.0[index] = self.0[index]
            .checked_add(by)
            .expect("monomial exponent overflow");
    }

    pub(crate) fn set(&mut self, index: usize, value: u16) {
        self.0[index] = value;
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let m = |e: &[u16]| Monomial::from_exponents(e);
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        assert!(m(&[1, 1, 0]) > m(&[1, 0, 1]));
        assert!(m(&[1, 0, 1]) > m(&[0, 1, 1]));
        assert!(m(&[0, 0, 0]) < m(&[0, 0, 1]));
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn overflow_is_caught() {
        let big = Monomial::from_exponents(&[u16::MAX]);
        let _ = big.mul(&Monomial::from_exponents(&[1]));
    }
}
