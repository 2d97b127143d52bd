//! The Grassmann algebra on `m * n` anticommuting variables `x_{ai}`.
//!
//! Variables are laid out row-major: `x_{ai}` occupies slot
//! `(a-1) * n + (i-1)`. A monomial is the product of its variables in
//! increasing slot order, so it is determined by its slot set and is stored
//! as a bitset. With this layout the block product of the identification
//! between tensor products of exterior powers and weight subspaces lands on
//! canonical monomials with coefficient `+1`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{parse_rational, Rational};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::perm::Perm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Shape {
    pub m: usize,
    pub n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m * n > 64 {
            return Err(Error::DimensionMismatch(format!(
                "m * n = {} exceeds the 64-variable limit",
                m * n
            )));
        }
        Ok(Shape { m, n })
    }

    pub fn vars(&self) -> usize {
        self.m * self.n
    }

    /// Slot of `x_{ai}`, one-based `a` and `i`.
    pub fn slot(&self, a: usize, i: usize) -> usize {
        debug_assert!(a >= 1 && a <= self.m && i >= 1 && i <= self.n);
        (a - 1) * self.n + (i - 1)
    }

    /// One-based `(a, i)` of a slot.
    pub fn var_of(&self, slot: usize) -> (usize, usize) {
        (slot / self.n + 1, slot % self.n + 1)
    }

    fn row_mask(&self, a: usize) -> u64 {
        let width = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        width << ((a - 1) * self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const UNIT: Monomial = Monomial(0);

    pub fn from_bits(bits: u64) -> Self {
        Monomial(bits)
    }

    pub fn bits(&self) -> u64 {
        self.0
    }

    pub fn contains(&self, slot: usize) -> bool {
        self.0 >> slot & 1 == 1
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    /// Slots in increasing order.
    pub fn slots(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let s = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(s)
            }
        })
    }

    pub fn row_weight(&self, shape: Shape) -> RowWeight {
        RowWeight(
            (1..=shape.m)
                .map(|a| (self.0 & shape.row_mask(a)).count_ones() as usize)
                .collect(),
        )
    }

    /// Number of slots of `self` strictly below `slot`.
    fn count_below(&self, slot: usize) -> u32 {
        (self.0 & ((1u64 << slot) - 1)).count_ones()
    }

    /// Sign and product of two monomials; `None` when they share a variable.
    pub fn mul(&self, other: &Monomial) -> Option<(bool, Monomial)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // inversions: pairs (s in self, t in other) with s > t
        let mut inversions = 0u32;
        for t in other.slots() {
            inversions += (self.0 >> t).count_ones();
        }
        Some((inversions % 2 == 1, Monomial(self.0 | other.0)))
    }

    /// Left derivation by the variable in `slot`: `(negative, result)`.
    pub fn derive(&self, slot: usize) -> Option<(bool, Monomial)> {
        if !self.contains(slot) {
            return None;
        }
        Some((self.count_below(slot) % 2 == 1, Monomial(self.0 & !(1u64 << slot))))
    }

    /// Left multiplication by the variable in `slot`.
    pub fn mul_var(&self, slot: usize) -> Option<(bool, Monomial)> {
        if self.contains(slot) {
            return None;
        }
        Some((self.count_below(slot) % 2 == 1, Monomial(self.0 | 1u64 << slot)))
    }

    /// Image under `x_{ai} -> x_{sigma(a) i}` with the sign of re-sorting.
    pub fn permute_rows(&self, shape: Shape, sigma: &Perm) -> (bool, Monomial) {
        let images: Vec<usize> = self
            .slots()
            .map(|s| {
                let (a, i) = shape.var_of(s);
                shape.slot(sigma.at(a - 1) + 1, i)
            })
            .collect();
        let mut inversions = 0usize;
        for x in 0..images.len() {
            for y in x + 1..images.len() {
                if images[x] > images[y] {
                    inversions += 1;
                }
            }
        }
        let bits = images.iter().fold(0u64, |acc, &s| acc | 1u64 << s);
        (inversions % 2 == 1, Monomial(bits))
    }
}

/// Degrees of a monomial in each row's variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RowWeight(pub Vec<usize>);

impl RowWeight {
    pub fn validate(&self, shape: Shape) -> Result<()> {
        if self.0.len() != shape.m || self.0.iter().any(|&d| d > shape.n) {
            return Err(Error::DimensionMismatch(format!(
                "row weight {:?} for m = {}, n = {}",
                self.0, shape.m, shape.n
            )));
        }
        Ok(())
    }
}

/// Sparse rational combination of monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrassmannElt {
    shape: Shape,
    terms: BTreeMap<Monomial, Rational>,
}

impl GrassmannElt {
    pub fn zero(shape: Shape) -> Self {
        GrassmannElt {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: Shape) -> Self {
        GrassmannElt::monomial(shape, Monomial::UNIT, Rational::one())
    }

    pub fn monomial(shape: Shape, mono: Monomial, coeff: Rational) -> Self {
        let mut e = GrassmannElt::zero(shape);
        e.add_term(mono, coeff);
        e
    }

    /// The variable `x_{ai}`.
    pub fn var(shape: Shape, a: usize, i: usize) -> Self {
        GrassmannElt::monomial(shape, Monomial(1u64 << shape.slot(a, i)), Rational::one())
    }

    /// The product `x_{a1} x_{a2} ... x_{an}` of a whole row.
    pub fn row_top(shape: Shape, a: usize) -> Self {
        GrassmannElt::monomial(shape, Monomial(shape.row_mask(a)), Rational::one())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn add_signed(&mut self, mono: Monomial, negative: bool, coeff: &Rational) {
        self.add_term(mono, if negative { -coeff.clone() } else { coeff.clone() });
    }

    pub fn add(&self, other: &GrassmannElt) -> Result<GrassmannElt> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GrassmannElt) -> Result<GrassmannElt> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> GrassmannElt {
        let mut out = GrassmannElt::zero(self.shape);
        if c.is_zero() {
            return out;
        }
        for (m, x) in &self.terms {
            out.terms.insert(*m, x * c);
        }
        out
    }

    fn same_shape(&self, other: &GrassmannElt) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    /// Exterior product.
    pub fn mul(&self, other: &GrassmannElt) -> Result<GrassmannElt> {
        self.same_shape(other)?;
        let mut out = GrassmannElt::zero(self.shape);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((neg, mono)) = ma.mul(mb) {
                    out.add_signed(mono, neg, &(ca * cb));
                }
            }
        }
        Ok(out)
    }

    /// Left derivation by `x_{ai}`.
    pub fn derive(&self, a: usize, i: usize) -> GrassmannElt {
        let slot = self.shape.slot(a, i);
        let mut out = GrassmannElt::zero(self.shape);
        for (m, c) in &self.terms {
            if let Some((neg, mono)) = m.derive(slot) {
                out.add_signed(mono, neg, c);
            }
        }
        out
    }

    /// Left multiplication by `x_{ai}`.
    pub fn mul_var(&self, a: usize, i: usize) -> GrassmannElt {
        let slot = self.shape.slot(a, i);
        let mut out = GrassmannElt::zero(self.shape);
        for (m, c) in &self.terms {
            if let Some((neg, mono)) = m.mul_var(slot) {
                out.add_signed(mono, neg, c);
            }
        }
        out
    }

    /// The automorphism `x_{ai} -> x_{sigma(a) i}`.
    pub fn permute_rows(&self, sigma: &Perm) -> Result<GrassmannElt> {
        if sigma.len() != self.shape.m {
            return Err(Error::DimensionMismatch(format!(
                "permutation of {} letters on {} rows",
                sigma.len(),
                self.shape.m
            )));
        }
        let mut out = GrassmannElt::zero(self.shape);
        for (m, c) in &self.terms {
            let (neg, mono) = m.permute_rows(self.shape, sigma);
            out.add_signed(mono, neg, c);
        }
        Ok(out)
    }

    /// Applies a linear map given on monomials.
    pub fn map_linear<F>(&self, mut f: F) -> GrassmannElt
    where
        F: FnMut(&Monomial) -> GrassmannElt,
    {
        let mut out = GrassmannElt::zero(self.shape);
        for (m, c) in &self.terms {
            for (m2, c2) in f(m).terms {
                out.add_term(m2, c * c2);
            }
        }
        out
    }
}

impl fmt::Display for GrassmannElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .slots()
                    .map(|s| {
                        let (a, i) = self.shape.var_of(s);
                        format!("x{a}{i}")
                    })
                    .collect();
                if vars.is_empty() {
                    c.to_string()
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    slots: Vec<[usize; 2]>,
    coeff: String,
}

impl GrassmannElt {
    /// JSON list of `{"slots": [[a, i], ...], "coeff": "p/q"}`.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(m, c)| TermJson {
                slots: m
                    .slots()
                    .map(|s| {
                        let (a, i) = self.shape.var_of(s);
                        [a, i]
                    })
                    .collect(),
                coeff: c.to_string(),
            })
            .collect();
        serde_json::to_value(terms).expect("serializable")
    }

    pub fn from_json(shape: Shape, value: &serde_json::Value) -> Result<Self> {
        let terms: Vec<TermJson> = serde_json::from_value(value.clone())
            .map_err(|e| Error::InvalidSpec(e.to_string()))?;
        let mut out = GrassmannElt::zero(shape);
        for t in terms {
            let mut prev = None;
            let mut bits = 0u64;
            for [a, i] in t.slots {
                if a == 0 || a > shape.m || i == 0 || i > shape.n {
                    return Err(Error::InvalidSpec(format!("variable x_{a}{i} out of range")));
                }
                let s = shape.slot(a, i);
                if prev.is_some_and(|p| p >= s) {
                    return Err(Error::InvalidSpec("slots not in canonical order".into()));
                }
                prev = Some(s);
                bits |= 1u64 << s;
            }
            out.add_term(Monomial(bits), parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

/// All strictly increasing `k`-subsets of `1..=n`, lexicographically.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..=n {
            if n - x + 1 < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(1, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, j| acc * (n - j) / (j + 1))
}

/// Monomials of row weight `weight`, in lexicographic slot order.
pub fn basis_of_weight(shape: Shape, weight: &RowWeight) -> Result<Vec<Monomial>> {
    weight.validate(shape)?;
    let per_row: Vec<Vec<Vec<usize>>> = weight.0.iter().map(|&d| combinations(shape.n, d)).collect();
    let mut out = vec![Monomial::UNIT];
    for (a, combos) in per_row.iter().enumerate() {
        let mut next = Vec::with_capacity(out.len() * combos.len());
        for prefix in &out {
            for combo in combos {
                let bits = combo
                    .iter()
                    .fold(prefix.0, |acc, &i| acc | 1u64 << shape.slot(a + 1, i));
                next.push(Monomial(bits));
            }
        }
        out = next;
    }
    Ok(out)
}

/// Image of a tensor basis vector of exterior powers under the block
/// product identification: each factor's index tuple becomes the product of
/// that row's variables.
pub fn alpha_encode(shape: Shape, tuples: &[Vec<usize>]) -> Result<Monomial> {
    if tuples.len() != shape.m {
        return Err(Error::DimensionMismatch(format!(
            "{} tuples for m = {}",
            tuples.len(),
            shape.m
        )));
    }
    let mut bits = 0u64;
    for (a, tuple) in tuples.iter().enumerate() {
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonIncreasingTuple(tuple.clone()));
        }
        for &i in tuple {
            if i == 0 || i > shape.n {
                return Err(Error::DimensionMismatch(format!("index {i} for n = {}", shape.n)));
            }
            bits |= 1u64 << shape.slot(a + 1, i);
        }
    }
    Ok(Monomial(bits))
}

pub fn alpha_decode(shape: Shape, mono: &Monomial) -> Vec<Vec<usize>> {
    let mut tuples = vec![Vec::new(); shape.m];
    for s in mono.slots() {
        let (a, i) = shape.var_of(s);
        tuples[a - 1].push(i);
    }
    tuples
}

/// An enumerated weight subspace with a reverse index.
#[derive(Clone, Debug)]
pub struct WeightBasis {
    pub shape: Shape,
    pub weight: RowWeight,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl WeightBasis {
    pub fn new(shape: Shape, weight: RowWeight) -> Result<Self> {
        let monomials = basis_of_weight(shape, &weight)?;
        let index = monomials.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        Ok(WeightBasis {
            shape,
            weight,
            monomials,
            index,
        })
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn position(&self, mono: &Monomial) -> Option<usize> {
        self.index.get(mono).copied()
    }

    pub fn to_vector(&self, x: &GrassmannElt) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (m, c) in x.terms() {
            let k = self.position(m).ok_or_else(|| {
                Error::DimensionMismatch(format!("monomial outside weight {:?}", self.weight.0))
            })?;
            v[k] = c.clone();
        }
        Ok(v)
    }

    pub fn to_element(&self, v: &[Rational]) -> GrassmannElt {
        let mut x = GrassmannElt::zero(self.shape);
        for (m, c) in self.monomials.iter().zip(v) {
            x.add_term(*m, c.clone());
        }
        x
    }

    /// Matrix of a linear map from this subspace into `codomain`.
    pub fn matrix_of<F>(&self, codomain: &WeightBasis, mut f: F) -> Result<Matrix>
    where
        F: FnMut(&Monomial) -> Result<GrassmannElt>,
    {
        let mut out = Matrix::zeros(codomain.dim(), self.dim());
        for (col, m) in self.monomials.iter().enumerate() {
            let image = f(m)?;
            for (m2, c) in image.terms() {
                let row = codomain.position(m2).ok_or_else(|| {
                    Error::DimensionMismatch(format!(
                        "image leaves weight {:?}",
                        codomain.weight.0
                    ))
                })?;
                out.set(row, col, c.clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn shape(m: usize, n: usize) -> Shape {
        Shape::new(m, n).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let s = shape(2, 2);
        let x11 = GrassmannElt::var(s, 1, 1);
        let x12 = GrassmannElt::var(s, 1, 2);
        let x21 = GrassmannElt::var(s, 2, 1);
        assert!(x11.mul(&x11).unwrap().is_empty());
        let lhs = x12.mul(&x11).unwrap();
        let rhs = x11.mul(&x12).unwrap().scale(&int(-1));
        assert_eq!(lhs, rhs);
        let sum = x11.add(&x21).unwrap();
        assert_eq!(sum.mul(&x21).unwrap(), x11.mul(&x21).unwrap());
        assert!(x11.mul(&GrassmannElt::var(shape(1, 2), 1, 1)).is_err());
    }

    #[test]
    fn derivation_examples() {
        let s = shape(2, 2);
        let x11x12 = GrassmannElt::var(s, 1, 1)
            .mul(&GrassmannElt::var(s, 1, 2))
            .unwrap();
        assert_eq!(x11x12.derive(1, 1), GrassmannElt::var(s, 1, 2));
        assert_eq!(x11x12.derive(1, 2), GrassmannElt::var(s, 1, 1).scale(&int(-1)));
        assert!(GrassmannElt::var(s, 1, 1).derive(2, 1).is_empty());
    }

    #[test]
    fn longest_permutation_examples() {
        let s = shape(2, 1);
        let x11x21 = GrassmannElt::var(s, 1, 1)
            .mul(&GrassmannElt::var(s, 2, 1))
            .unwrap();
        let sigma0 = Perm::longest(2);
        assert_eq!(x11x21.permute_rows(&sigma0).unwrap(), x11x21.scale(&int(-1)));
        assert_eq!(
            GrassmannElt::var(s, 1, 1).permute_rows(&sigma0).unwrap(),
            GrassmannElt::var(s, 2, 1)
        );
        assert_eq!(x11x21.permute_rows(&Perm::identity(2)).unwrap(), x11x21);
    }

    #[test]
    fn alpha_examples() {
        let s = shape(2, 2);
        let mono = alpha_encode(s, &[vec![1, 2], vec![1]]).unwrap();
        let expected = GrassmannElt::var(s, 1, 1)
            .mul(&GrassmannElt::var(s, 1, 2))
            .unwrap()
            .mul(&GrassmannElt::var(s, 2, 1))
            .unwrap();
        assert_eq!(GrassmannElt::monomial(s, mono, int(1)), expected);
        assert_eq!(alpha_encode(s, &[vec![], vec![]]).unwrap(), Monomial::UNIT);
        assert!(matches!(
            alpha_encode(s, &[vec![2, 1], vec![]]),
            Err(Error::NonIncreasingTuple(_))
        ));
    }

    #[test]
    fn alpha_round_trip_exhaustive() {
        let s = shape(3, 3);
        let basis = basis_of_weight(s, &RowWeight(vec![2, 1, 2])).unwrap();
        let mut count = 0;
        for t1 in combinations(3, 2) {
            for t2 in combinations(3, 1) {
                for t3 in combinations(3, 2) {
                    let w = vec![t1.clone(), t2.clone(), t3.clone()];
                    let mono = alpha_encode(s, &w).unwrap();
                    assert_eq!(alpha_decode(s, &mono), w);
                    assert_eq!(basis[count], mono);
                    count += 1;
                }
            }
        }
        assert_eq!(count, 27);
    }

    #[test]
    fn weight_basis_sizes() {
        let b = basis_of_weight(shape(1, 2), &RowWeight(vec![1])).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0] < b[1]);
        assert_eq!(basis_of_weight(shape(3, 2), &RowWeight(vec![0, 0, 0])).unwrap(), vec![Monomial::UNIT]);
        assert_eq!(basis_of_weight(shape(2, 2), &RowWeight(vec![1, 2])).unwrap().len(), 2);
        assert!(basis_of_weight(shape(2, 2), &RowWeight(vec![3, 0])).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = shape(2, 2);
        let x = GrassmannElt::var(s, 2, 1)
            .mul(&GrassmannElt::var(s, 1, 2))
            .unwrap()
            .add(&GrassmannElt::one(s).scale(&int(3)))
            .unwrap();
        let json = x.to_json();
        assert_eq!(
            json.to_string(),
            r#"[{"coeff":"3","slots":[]},{"coeff":"-1","slots":[[1,2],[2,1]]}]"#
        );
        assert_eq!(GrassmannElt::from_json(s, &json).unwrap(), x);
    }
}
