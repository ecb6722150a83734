//! Multiplication kernel for polynomials with machine-size integer
//! coefficients: exponent vectors packed into a `u128` (8 bits per variable)
//! and `i128` accumulators. Callers fall back to the exact kernel when any
//! precondition fails or an accumulator overflows.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rustc_hash::FxHashMap;

use super::{Monomial, SparsePoly};
use crate::par::{self, Exec};
use crate::rational::Rational;

const BITS: usize = 8;
const MAX_VARS: usize = 128 / BITS;

type Packed = Vec<(u128, i128)>;

fn pack(p: &SparsePoly) -> Option<Packed> {
    p.terms
        .iter()
        .map(|(m, c)| {
            if !c.is_integer() {
                return None;
            }
            let c = c.numer().to_i64()? as i128;
            let key = m
                .exponents()
                .iter()
                .enumerate()
                .fold(0u128, |k, (i, &e)| k | (e as u128) << (BITS * i));
            Some((key, c))
        })
        .collect()
}

fn unpack(nvars: usize, key: u128) -> Monomial {
    let mask = (1u128 << BITS) - 1;
    let exps: Vec<u16> = (0..nvars).map(|i| ((key >> (BITS * i)) & mask) as u16).collect();
    Monomial::from_exponents(&exps)
}

fn fits(a: &SparsePoly, b: &SparsePoly) -> bool {
    a.nvars <= MAX_VARS && (0..a.nvars).all(|v| a.degree_in(v) + b.degree_in(v) < 1 << BITS)
}

fn accumulate(acc: &mut FxHashMap<u128, i128>, key: u128, c: i128) -> Option<()> {
    let slot = acc.entry(key).or_insert(0);
    *slot = slot.checked_add(c)?;
    Some(())
}

pub(super) fn try_mul(a: &SparsePoly, b: &SparsePoly, exec: Exec) -> Option<SparsePoly> {
    if !fits(a, b) {
        return None;
    }
    let square = std::ptr::eq(a, b) || a == b;
    let left = pack(a)?;
    let right = if square { left.clone() } else { pack(b)? };
    let (outer, inner) = if left.len() >= right.len() { (&left, &right) } else { (&right, &left) };
    let chunk = par::chunk_len(exec, outer.len());
    let starts: Vec<usize> = (0..outer.len()).step_by(chunk.max(1)).collect();
    let partials = par::map(exec, &starts, |&start| {
        let end = (start + chunk).min(outer.len());
        let mut acc: FxHashMap<u128, i128> = FxHashMap::default();
        for i in start..end {
            let (ka, ca) = outer[i];
            if square {
                accumulate(&mut acc, ka + ka, ca.checked_mul(ca)?)?;
                for &(kb, cb) in &inner[i + 1..] {
                    accumulate(&mut acc, ka + kb, ca.checked_mul(cb)?.checked_mul(2)?)?;
                }
            } else {
                for &(kb, cb) in inner {
                    accumulate(&mut acc, ka + kb, ca.checked_mul(cb)?)?;
                }
            }
        }
        Some(acc)
    });
    let mut merged: FxHashMap<u128, i128> = FxHashMap::default();
    for part in partials {
        for (k, c) in part? {
            accumulate(&mut merged, k, c)?;
        }
    }
    let terms = merged
        .into_iter()
        .filter(|&(_, c)| c != 0)
        .map(|(k, c)| (unpack(a.nvars, k), Rational::from_integer(BigInt::from(c))));
    Some(SparsePoly::from_terms(a.nvars, terms))
}
