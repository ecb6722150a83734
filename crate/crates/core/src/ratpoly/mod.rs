//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are addressed by zero-based index; the text and JSON forms name
//! them `x1 … xn`. Terms live in a `BTreeMap` keyed by graded-lex order, so
//! two equal polynomials always have identical term sequences.

mod json;
mod monomial;
mod packed;
mod text;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

pub use json::{PolyJson, TermJson};
pub use monomial::Monomial;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparsePoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl SparsePoly {
    pub fn zero(nvars: usize) -> Self {
        SparsePoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    /// The variable `x_{index+1}`.
    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        let mut p = Self::zero(nvars);
        p.terms.insert(Monomial::var(nvars, index), Rational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn from_map(nvars: usize, map: HashMap<Monomial, Rational>) -> Self {
        SparsePoly {
            nvars,
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16]) -> Rational {
        if exps.len() != self.nvars {
            return Rational::zero();
        }
        self.terms
            .get(&Monomial::from_exponents(exps))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &SparsePoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index,
                nvars: self.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.mul_with(other, Exec::default())
    }

    /// Distributive product; with a parallel strategy the left operand is
    /// split into chunks whose partial products are merged afterwards.
    pub fn mul_with(&self, other: &SparsePoly, exec: Exec) -> Result<SparsePoly> {
        self.check_arity(other)?;
        if let Some(p) = packed::try_mul(self, other, exec) {
            return Ok(p);
        }
        Ok(self.mul_exact(other, exec))
    }

    fn mul_exact(&self, other: &SparsePoly, exec: Exec) -> SparsePoly {
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let left: Vec<(&Monomial, &Rational)> = big.terms.iter().collect();
        let right: Vec<(&Monomial, &Rational)> = small.terms.iter().collect();
        let chunk = par::chunk_len(exec, left.len());
        let chunks: Vec<&[(&Monomial, &Rational)]> = left.chunks(chunk).collect();
        let partials = par::map(exec, &chunks, |block| {
            let mut acc: HashMap<Monomial, Rational> = HashMap::new();
            for (ma, ca) in block.iter() {
                for (mb, cb) in &right {
                    let m = ma.mul(mb);
                    let c = *ca * *cb;
                    match acc.get_mut(&m) {
                        Some(v) => *v += c,
                        None => {
                            acc.insert(m, c);
                        }
                    }
                }
            }
            acc
        });
        Self::from_map(self.nvars, merge_maps(partials))
    }

    pub fn scale(&self, c: &Rational) -> SparsePoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparsePoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> SparsePoly {
        let mut result = Self::one(self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; self.nvars];
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * &point[i];
                    cache.push(next);
                }
                v *= &cache[e as usize];
            }
            total += v;
        }
        Ok(total)
    }

    /// Floating-point evaluation, summing terms in ascending order.
    pub fn eval_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: point.len(),
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                m.exponents()
                    .iter()
                    .zip(point)
                    .fold(crate::rational::to_f64(c), |acc, (&e, x)| acc * x.powi(e as i32))
            })
            .sum())
    }

    /// Replaces `x_{var+1}` by `g` and expands.
    pub fn substitute(&self, var: usize, g: &SparsePoly) -> Result<SparsePoly> {
        self.check_index(var)?;
        self.check_arity(g)?;
        let max_e = self.degree_in(var) as usize;
        let mut powers = Vec::with_capacity(max_e + 1);
        powers.push(Self::one(self.nvars));
        for k in 1..=max_e {
            let next = &powers[k - 1] * g;
            powers.push(next);
        }
        let mut grouped: BTreeMap<u16, SparsePoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut rest = m.clone();
            rest.set(var, 0);
            grouped
                .entry(e)
                .or_insert_with(|| Self::zero(self.nvars))
                .add_term(rest, c.clone());
        }
        let mut out = Self::zero(self.nvars);
        for (e, coeff) in grouped {
            let part = &coeff * &powers[e as usize];
            for (m, c) in part.terms {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// `f ∘ π`: the result is `f(x_{π(1)}, …, x_{π(n)})`, so the exponent of
    /// slot `i` moves to slot `π(i)`.
    pub fn permute_vars(&self, perm: &[usize]) -> Result<SparsePoly> {
        if perm.len() != self.nvars || !is_permutation(perm) {
            return Err(Error::NotAPermutation(self.nvars));
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(self.nvars);
            for (i, &e) in m.exponents().iter().enumerate() {
                out.set(perm[i], e);
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(self.nvars, terms))
    }

    /// Maximum exponent of the variable; 0 when it does not occur.
    pub fn degree_in(&self, var: usize) -> u32 {
        if var >= self.nvars {
            return 0;
        }
        self.terms
            .keys()
            .map(|m| m.exponent(var) as u32)
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Coefficient of `x_{var+1}^k`, as a polynomial in the same ring that no
    /// longer involves `x_{var+1}`.
    pub fn coeff_in(&self, var: usize, k: u16) -> Result<SparsePoly> {
        self.check_index(var)?;
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(var) == k)
            .map(|(m, c)| {
                let mut m = m.clone();
                m.set(var, 0);
                (m, c.clone())
            });
        Ok(Self::from_terms(self.nvars, terms))
    }

    /// Sets `x_{var+1}` to a constant, keeping the ring.
    pub fn specialize(&self, var: usize, value: &Rational) -> Result<SparsePoly> {
        self.substitute(var, &Self::constant(self.nvars, value.clone()))
    }

    /// Drops a variable that does not occur, shifting later indices down.
    pub fn remove_var(&self, var: usize) -> Result<SparsePoly> {
        self.check_index(var)?;
        if self.degree_in(var) > 0 {
            return Err(Error::Precondition(format!(
                "x{} still occurs in the polynomial",
                var + 1
            )));
        }
        let n = self.nvars - 1;
        let terms = self.terms.iter().map(|(m, c)| {
            let exps: Vec<u16> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != var)
                .map(|(_, &e)| e)
                .collect();
            (Monomial::from_exponents(&exps), c.clone())
        });
        Ok(Self::from_terms(n, terms))
    }

    /// Moves the polynomial into a ring with `nvars` variables, sending
    /// variable `i` to `map[i]`.
    pub fn embed(&self, nvars: usize, map: &[usize]) -> Result<SparsePoly> {
        if map.len() != self.nvars {
            return Err(Error::ArityMismatch {
                left: self.nvars,
                right: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= nvars) {
            return Err(Error::IndexOutOfRange { index: bad, nvars });
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut out = Monomial::one(nvars);
            for (i, &e) in m.exponents().iter().enumerate() {
                out.bump(map[i], e);
            }
            (out, c.clone())
        });
        Ok(Self::from_terms(nvars, terms))
    }

    /// First term (descending graded-lex) where the two polynomials differ.
    pub fn first_difference(&self, other: &SparsePoly) -> Option<String> {
        if self.nvars != other.nvars {
            return Some(format!("variable counts {} vs {}", self.nvars, other.nvars));
        }
        let diff = self - other;
        diff.terms.iter().next_back().map(|(m, _)| {
            format!(
                "{}: {} vs {}",
                text::monomial_string(m),
                crate::rational::fraction_string(&self.terms.get(m).cloned().unwrap_or_default()),
                crate::rational::fraction_string(&other.terms.get(m).cloned().unwrap_or_default()),
            )
        })
    }
}

pub(crate) fn merge_maps<K: std::hash::Hash + Eq>(
    partials: Vec<HashMap<K, Rational>>,
) -> HashMap<K, Rational> {
    let mut iter = partials.into_iter();
    let mut acc = iter.next().unwrap_or_default();
    for part in iter {
        for (m, c) in part {
            match acc.get_mut(&m) {
                Some(v) => *v += c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
    }
    acc
}

pub(crate) fn is_permutation(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    true
}

impl fmt::Debug for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparsePoly[{}]({})", self.nvars, self)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pretty())
    }
}

// Operator impls panic on arity mismatch; use the `checked_*` methods for
// untrusted input.
impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_add(rhs).expect("SparsePoly add")
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_sub(rhs).expect("SparsePoly sub")
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        self.checked_mul(rhs).expect("SparsePoly mul")
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        self.scale(&-Rational::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn x(n: usize, i: usize) -> SparsePoly {
        SparsePoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> SparsePoly {
        SparsePoly::constant(n, int(v))
    }

    fn p3() -> SparsePoly {
        SparsePoly::parse("x1^2+x2^2+x3^2-2*x1*x2*x3-1", Some(3)).unwrap()
    }

    #[test]
    fn addition_examples() {
        assert!((&x(1, 0) + &(-&x(1, 0))).is_zero());
        let sum = &(&x(2, 0) - &c(2, 1)) + &(&x(2, 1) - &x(2, 0));
        assert_eq!(sum, &x(2, 1) - &c(2, 1));
        let sq = x(1, 0).pow(2);
        assert_eq!(&sq + &sq.scale(&int(2)), sq.scale(&int(3)));
        assert!(matches!(
            x(1, 0).checked_add(&x(2, 0)),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        ));
        // Zero keeps its arity.
        let z = &x(3, 0) - &x(3, 0);
        assert_eq!(z.nvars(), 3);
    }

    #[test]
    fn multiplication_examples() {
        let d = &x(2, 0) - &x(2, 1);
        assert_eq!((&d * &d).to_pretty(), "x1^2-2*x1*x2+x2^2");
        let f = p3();
        assert_eq!(&f * &SparsePoly::one(3), f);
        let a = &x(1, 0) - &c(1, 1);
        let b = &x(1, 0) + &c(1, 1);
        assert_eq!((&a * &b).to_pretty(), "x1^2-1");
        assert!(x(1, 0).checked_mul(&x(2, 0)).is_err());
        for exec in [Exec::Sequential, Exec::Parallel] {
            assert_eq!(f.mul_with(&f, exec).unwrap(), f.pow(2));
        }
    }

    #[test]
    fn evaluation_examples() {
        let f = p3();
        let at = |v: [Rational; 3]| f.eval(&v).unwrap();
        assert_eq!(at([frac(-3, 5), frac(-9, 41), frac(-133, 205)]), int(0));
        for t in [frac(1, 3), frac(-7, 2), int(0), int(5)] {
            assert_eq!(at([int(1), t.clone(), t]), int(0));
        }
        assert_eq!(at([frac(-204, 325), frac(-152, 377), frac(-333, 725)]), int(0));
        assert!(f.eval(&[int(1)]).is_err());
        assert!((f.eval_f64(&[-0.5, -0.5, -0.5]).unwrap()).abs() < 1e-15);
    }

    #[test]
    fn substitution_examples() {
        let f = &x(3, 1) - &x(3, 0);
        let g = &x(3, 1) * &x(3, 2);
        assert_eq!(f.substitute(1, &g).unwrap().to_pretty(), "x2*x3-x1");
        let h = p3();
        for i in 0..3 {
            assert_eq!(h.substitute(i, &x(3, i)).unwrap(), h);
        }
        assert!(h.substitute(3, &g).is_err());
        assert!(h.substitute(0, &x(2, 0)).is_err());
    }

    #[test]
    fn permutation_examples() {
        let f = p3();
        assert_eq!(f.permute_vars(&[1, 2, 0]).unwrap(), f);
        assert_eq!(x(1, 0).permute_vars(&[0]).unwrap(), x(1, 0));
        let p2 = &x(2, 1) - &x(2, 0);
        assert_eq!(p2.permute_vars(&[1, 0]).unwrap(), -&p2);
        assert!(f.permute_vars(&[0, 0, 1]).is_err());
        assert!(f.permute_vars(&[0, 1]).is_err());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(p3().degree_in(0), 2);
        assert_eq!(c(3, 5).degree_in(2), 0);
        assert_eq!(SparsePoly::zero(2).degree_in(1), 0);
    }

    #[test]
    fn specialization_and_removal() {
        let f = p3().specialize(1, &int(1)).unwrap();
        let g = f.remove_var(1).unwrap();
        let d = &x(2, 1) - &x(2, 0);
        assert_eq!(g, &d * &d);
        assert!(p3().remove_var(0).is_err());
        let e = d.embed(4, &[3, 1]).unwrap();
        assert_eq!(e.to_pretty(), "x2-x4");
        assert_eq!(p3().coeff_in(2, 1).unwrap().to_pretty(), "-2*x1*x2");
    }

    #[test]
    fn first_difference_reports_leading_term() {
        let f = p3();
        let g = &f + &x(3, 0).pow(2);
        let msg = f.first_difference(&g).unwrap();
        assert!(msg.starts_with("x1^2"), "{msg}");
        assert!(f.first_difference(&f).is_none());
    }
}
