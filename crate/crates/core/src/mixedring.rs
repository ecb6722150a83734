//! The ring `Q[x_1..x_n, y_1..y_n] / (y_i² − (1 − x_i²))`.
//!
//! Every element is kept reduced: each `y_i` appears at most once per term,
//! so a term is an x-monomial times a subset of the `y`s (stored as a
//! bitset, bit `i` ↔ `y_{i+1}`). This is where `cos(θ_1+…+θ_n)` and
//! `sin(θ_1+…+θ_n)` live as polynomials in `x_i = cos θ_i`, `y_i = sin θ_i`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Exec};
use crate::rational::{fraction_string, Rational};
use crate::ratpoly::{merge_maps, Monomial, PolyJson, SparsePoly, TermJson};

/// Largest supported `n`; the `y` support is a `u32` bitset.
pub const MAX_VARS: usize = 32;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
struct Key {
    x: Monomial,
    ys: u32,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MixedElement {
    n: usize,
    terms: BTreeMap<Key, Rational>,
}

impl MixedElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_VARS, "at most {MAX_VARS} variables");
        MixedElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Monomial::one(n), 0, c);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    pub fn x(n: usize, i: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Monomial::var(n, i), 0, Rational::one());
        e
    }

    pub fn y(n: usize, i: usize) -> Self {
        assert!(i < n, "y index out of range");
        let mut e = Self::zero(n);
        e.add_term(Monomial::one(n), 1 << i, Rational::one());
        e
    }

    pub fn from_pure(p: &SparsePoly) -> Self {
        let mut e = Self::zero(p.nvars());
        for (m, c) in p.terms() {
            e.add_term(m.clone(), 0, c.clone());
        }
        e
    }

    pub fn n(&self) -> usize {
        self.n
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

    /// Terms as (x-exponents, y-support as zero-based indices, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], Vec<usize>, &Rational)> {
        self.terms
            .iter()
            .map(|(k, c)| (k.x.exponents(), bits(k.ys), c))
    }

    fn add_term(&mut self, x: Monomial, ys: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(Key { x, ys }) {
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

    fn check_arity(&self, other: &MixedElement) -> Result<()> {
        if self.n != other.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MixedElement) -> Result<MixedElement> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.x.clone(), k.ys, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MixedElement {
        let mut out = Self::zero(self.n);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect();
        out
    }

    pub fn checked_mul(&self, other: &MixedElement) -> Result<MixedElement> {
        self.mul_with(other, Exec::default())
    }

    /// Product with eager reduction `y_i² → 1 − x_i²`.
    pub fn mul_with(&self, other: &MixedElement, exec: Exec) -> Result<MixedElement> {
        self.check_arity(other)?;
        let (big, small) = if self.len() >= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let left: Vec<(&Key, &Rational)> = big.terms.iter().collect();
        let right: Vec<(&Key, &Rational)> = small.terms.iter().collect();
        let chunk = par::chunk_len(exec, left.len());
        let chunks: Vec<&[(&Key, &Rational)]> = left.chunks(chunk).collect();
        let partials = par::map(exec, &chunks, |block| {
            let mut acc: HashMap<Key, Rational> = HashMap::new();
            for (ka, ca) in block.iter() {
                for (kb, cb) in &right {
                    let c = *ca * *cb;
                    let x = ka.x.mul(&kb.x);
                    let common = ka.ys & kb.ys;
                    let ys = ka.ys ^ kb.ys;
                    // Each shared y_i contributes a factor (1 − x_i²).
                    let mut sub = common;
                    loop {
                        let mut xm = x.clone();
                        for i in bits(sub) {
                            xm.bump(i, 2);
                        }
                        let term = if sub.count_ones() % 2 == 1 { -c.clone() } else { c.clone() };
                        let key = Key { x: xm, ys };
                        match acc.get_mut(&key) {
                            Some(v) => *v += term,
                            None => {
                                acc.insert(key, term);
                            }
                        }
                        if sub == 0 {
                            break;
                        }
                        sub = (sub - 1) & common;
                    }
                }
            }
            acc
        });
        let mut out = Self::zero(self.n);
        out.terms = merge_maps(partials)
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> MixedElement {
        let mut result = Self::one(self.n);
        for _ in 0..k {
            result = &result * self;
        }
        result
    }

    /// Applies the automorphism `σ`: generator `σ_i` negates a term exactly
    /// when an odd number of its `y`s sit at positions `≤ i`. Pure-x terms
    /// are fixed and `σ_i(y_j y_{j+1}) = −y_j y_{j+1}` iff `i = j`.
    pub fn apply_sign(&self, sigma: &SignVector) -> Result<MixedElement> {
        if sigma.len() + 1 != self.n.max(1) {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: sigma.len() + 1,
            });
        }
        let mut out = Self::zero(self.n);
        out.terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                if sigma.negates(k.ys) {
                    (k.clone(), -c.clone())
                } else {
                    (k.clone(), c.clone())
                }
            })
            .collect();
        Ok(out)
    }

    /// Extracts the pure-x polynomial; fails if any `y` survives.
    pub fn to_pure(&self) -> Result<SparsePoly> {
        if let Some((k, _)) = self.terms.iter().find(|(k, _)| k.ys != 0) {
            let ys: Vec<String> = bits(k.ys).iter().map(|i| format!("y{}", i + 1)).collect();
            return Err(Error::ResidualY(ys.join("*")));
        }
        Ok(SparsePoly::from_terms(
            self.n,
            self.terms.iter().map(|(k, c)| (k.x.clone(), c.clone())),
        ))
    }

    /// Moves into a ring of size `n`, sending variable `i` (both `x_i` and
    /// `y_i`) to `map[i]`.
    pub fn embed(&self, n: usize, map: &[usize]) -> Result<MixedElement> {
        if map.len() != self.n {
            return Err(Error::ArityMismatch {
                left: self.n,
                right: map.len(),
            });
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= n) {
            return Err(Error::IndexOutOfRange { index: bad, nvars: n });
        }
        let mut out = Self::zero(n);
        for (k, c) in &self.terms {
            let mut x = Monomial::one(n);
            let mut ys = 0u32;
            for (i, &e) in k.x.exponents().iter().enumerate() {
                x.bump(map[i], e);
            }
            for i in bits(k.ys) {
                ys |= 1 << map[i];
            }
            out.add_term(x, ys, c.clone());
        }
        Ok(out)
    }

    /// Evaluates a pure polynomial at mixed-ring images of its variables.
    pub fn substitute_into(f: &SparsePoly, images: &[MixedElement]) -> Result<MixedElement> {
        if images.len() != f.nvars() {
            return Err(Error::ArityMismatch {
                left: f.nvars(),
                right: images.len(),
            });
        }
        let n = match images.first() {
            Some(e) => e.n,
            None => 0,
        };
        for e in images {
            if e.n != n {
                return Err(Error::ArityMismatch { left: n, right: e.n });
            }
        }
        let mut powers: Vec<Vec<MixedElement>> = images
            .iter()
            .map(|e| vec![Self::one(n), e.clone()])
            .collect();
        let mut out = Self::zero(n);
        for (m, c) in f.terms() {
            let mut value = Self::constant(n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                value = &value * &powers[i][e as usize];
            }
            for (k, v) in value.terms {
                out.add_term(k.x, k.ys, v);
            }
        }
        Ok(out)
    }

    /// True when every term's `y`-support has the given parity.
    pub fn y_parity_is(&self, odd: bool) -> bool {
        self.terms.keys().all(|k| (k.ys.count_ones() % 2 == 1) == odd)
    }

    pub fn to_json_model(&self) -> PolyJson {
        PolyJson {
            vars: (1..=self.n).map(|i| format!("x{i}")).collect(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(k, c)| TermJson {
                    c: fraction_string(c),
                    e: k.x.exponents().to_vec(),
                    ys: Some(bits(k.ys).into_iter().map(|i| i + 1).collect()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_model()).expect("mixed element JSON")
    }

    pub fn from_json(text: &str) -> Result<MixedElement> {
        let model: PolyJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
        let n = model.vars.len();
        if n > MAX_VARS {
            return Err(Error::Json(format!("at most {MAX_VARS} variables")));
        }
        let mut out = Self::zero(n);
        for t in &model.terms {
            if t.e.len() != n {
                return Err(Error::Json("exponent vector length mismatch".into()));
            }
            let mut ys = 0u32;
            // Repeated y's reduce through the defining relation.
            let mut extra = Self::one(n);
            for &i in t.ys.as_deref().unwrap_or(&[]) {
                if i == 0 || i > n {
                    return Err(Error::Json(format!("y index {i} out of range")));
                }
                if ys & (1 << (i - 1)) != 0 {
                    extra = &extra * &Self::y(n, i - 1).pow(2);
                }
                ys ^= 1 << (i - 1);
            }
            let mut single = Self::zero(n);
            single.add_term(Monomial::from_exponents(&t.e), ys, crate::rational::parse_rational(&t.c)?);
            out = &out + &(&single * &extra);
        }
        Ok(out)
    }
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

impl fmt::Display for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (k, c)) in self.terms.iter().rev().enumerate() {
            let mut factors: Vec<String> = k
                .x
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            factors.extend(bits(k.ys).iter().map(|i| format!("y{}", i + 1)));
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if neg {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MixedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedElement[{}]({})", self.n, self)
    }
}

impl Add for &MixedElement {
    type Output = MixedElement;
    fn add(self, rhs: &MixedElement) -> MixedElement {
        self.checked_add(rhs).expect("MixedElement add")
    }
}

impl Sub for &MixedElement {
    type Output = MixedElement;
    fn sub(self, rhs: &MixedElement) -> MixedElement {
        self.checked_add(&-rhs).expect("MixedElement sub")
    }
}

impl Mul for &MixedElement {
    type Output = MixedElement;
    fn mul(self, rhs: &MixedElement) -> MixedElement {
        self.checked_mul(rhs).expect("MixedElement mul")
    }
}

impl Neg for &MixedElement {
    type Output = MixedElement;
    fn neg(self) -> MixedElement {
        self.scale(&-Rational::one())
    }
}

/// An element of `G_n ≅ Z_2^{n−1}`: bit `i` selects generator `σ_{i+1}`,
/// which flips the sign of `y_{i+1} y_{i+2}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SignVector {
    bits: Vec<bool>,
}

impl SignVector {
    pub fn new(bits: Vec<bool>) -> Self {
        SignVector { bits }
    }

    pub fn identity(n: usize) -> Self {
        SignVector {
            bits: vec![false; n.saturating_sub(1)],
        }
    }

    /// The generator `σ_{i+1}` of `G_n`.
    pub fn generator(n: usize, i: usize) -> Self {
        let mut s = Self::identity(n);
        s.bits[i] = true;
        s
    }

    /// All `2^{n−1}` elements of `G_n`, in binary counting order.
    pub fn all(n: usize) -> Vec<SignVector> {
        let len = n.saturating_sub(1);
        (0..1u64 << len)
            .map(|mask| SignVector {
                bits: (0..len).map(|i| mask & (1 << i) != 0).collect(),
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn compose(&self, other: &SignVector) -> SignVector {
        assert_eq!(self.len(), other.len(), "sign vectors of different groups");
        SignVector {
            bits: self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// Crossing-parity rule for a `y`-support bitset.
    fn negates(&self, ys: u32) -> bool {
        let mut neg = false;
        for (i, &on) in self.bits.iter().enumerate() {
            if on {
                let below = ys & ((1u64 << (i + 1)) - 1) as u32;
                neg ^= below.count_ones() % 2 == 1;
            }
        }
        neg
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_VARS {
        return Err(Error::out_of_range("n", n, format!("1..={MAX_VARS}")));
    }
    Ok(())
}

/// `(EC_n, ES_n)` by the addition-formula recursion on the first variable:
/// `EC_n = x_1 EC_{n−1}(x̂_1) − y_1 ES_{n−1}(x̂_1)`,
/// `ES_n = y_1 EC_{n−1}(x̂_1) + x_1 ES_{n−1}(x̂_1)`.
pub fn build_ec_es(n: usize) -> Result<(MixedElement, MixedElement)> {
    check_n(n)?;
    let vars: Vec<usize> = (0..n).collect();
    Ok(ec_es_over(n, &vars))
}

/// `(EC, ES)` of the angle sum over `vars`, inside a ring of size `ambient`.
pub fn ec_es_over(ambient: usize, vars: &[usize]) -> (MixedElement, MixedElement) {
    assert!(!vars.is_empty(), "at least one angle");
    ec_es_pivot(ambient, vars, 0)
}

/// Same expansion, but peeling off `vars[pivot]` at the top level.
pub fn ec_es_pivot(ambient: usize, vars: &[usize], pivot: usize) -> (MixedElement, MixedElement) {
    let v = vars[pivot];
    let x = MixedElement::x(ambient, v);
    let y = MixedElement::y(ambient, v);
    if vars.len() == 1 {
        return (x, y);
    }
    let rest: Vec<usize> = vars
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pivot)
        .map(|(_, &w)| w)
        .collect();
    let (ec, es) = ec_es_over(ambient, &rest);
    let new_ec = &(&x * &ec) - &(&y * &es);
    let new_es = &(&y * &ec) + &(&x * &es);
    (new_ec, new_es)
}

/// `(EC_n, ES_n)` as signed sums over sine/cosine patterns: a pattern with
/// `2e` sines contributes `(−1)^e` to `EC_n`, one with `2e+1` sines
/// contributes `(−1)^e` to `ES_n`.
pub fn build_ec_es_direct(n: usize) -> Result<(MixedElement, MixedElement)> {
    check_n(n)?;
    let mut ec = MixedElement::zero(n);
    let mut es = MixedElement::zero(n);
    for sines in 0u32..(1u32 << n) {
        let count = sines.count_ones();
        let mut x = Monomial::one(n);
        for i in 0..n {
            if sines & (1 << i) == 0 {
                x.bump(i, 1);
            }
        }
        let sign = if (count / 2) % 2 == 0 {
            Rational::one()
        } else {
            -Rational::one()
        };
        if count % 2 == 0 {
            ec.add_term(x, sines, sign);
        } else {
            es.add_term(x, sines, sign);
        }
    }
    Ok((ec, es))
}
