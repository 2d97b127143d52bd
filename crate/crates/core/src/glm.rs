//! The gl_m action on the Grassmann algebra and the operators `X`, `Y`
//! assembled from it.
//!
//! `E_ab = sum_k x_{ak} d_{bk}` is the plain action. Given a sign vector,
//! the signed action swaps the roles of multiplication and derivation in
//! every row carrying a minus sign.
//!
//! For `a < b` and a weight `w` with `w_a - w_b` not a negative integer,
//!
//! ```text
//! X = sum_{r>=0} (-1)^r E_ba^r E_ab^r / (r! (w_a - w_b + 1)_r)
//! Y = sum_{r>=0} (-1)^r E_ab^r E_ba^r / (r! (w_a - w_b + 1)_r)
//! ```
//!
//! Both preserve every weight subspace. `E_ab` is nilpotent of order `n + 1`
//! off the diagonal, so the sums stop at `r = n`.

use num_traits::One;
use serde::Serialize;

use crate::arith::rational::{factorial, is_negative_integer};
use crate::arith::{int, pochhammer, Rational};
use crate::error::{Error, Result};
use crate::grassmann::{GrassmannElt, RowWeight, Shape, WeightBasis};
use crate::linalg::Matrix;

/// Signs `epsilon_a` in {+1, -1}, one per row.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::Precondition(format!("signs must be +1 or -1: {signs:?}")));
        }
        Ok(SignVector(signs))
    }

    pub fn all_plus(m: usize) -> Self {
        SignVector(vec![1; m])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_minus(&self, a: usize) -> bool {
        self.0[a - 1] < 0
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.0
    }

    pub fn is_all_plus(&self) -> bool {
        self.0.iter().all(|&s| s > 0)
    }

    /// Every sign vector of length `m`.
    pub fn all(m: usize) -> Vec<SignVector> {
        (0..1u32 << m)
            .map(|mask| {
                SignVector((0..m).map(|a| if mask >> a & 1 == 1 { -1 } else { 1 }).collect())
            })
            .collect()
    }
}

/// `E_ab(x) = sum_k x_{ak} d_{bk} x`.
pub fn e_op(a: usize, b: usize, x: &GrassmannElt) -> GrassmannElt {
    let shape = x.shape();
    let mut out = GrassmannElt::zero(shape);
    for k in 1..=shape.n {
        let term = x.derive(b, k).mul_var(a, k);
        for (m, c) in term.terms() {
            out.add_term(*m, c.clone());
        }
    }
    out
}

/// `EE_ab(x) = sum_i q_{ai} p_{bi} x` with `(q, p) = (x, d)` in plus rows
/// and `(d, x)` in minus rows.
pub fn ee_op(eps: &SignVector, a: usize, b: usize, x: &GrassmannElt) -> GrassmannElt {
    let shape = x.shape();
    let mut out = GrassmannElt::zero(shape);
    for i in 1..=shape.n {
        let after_p = if eps.is_minus(b) {
            x.mul_var(b, i)
        } else {
            x.derive(b, i)
        };
        let term = if eps.is_minus(a) {
            after_p.derive(a, i)
        } else {
            after_p.mul_var(a, i)
        };
        for (m, c) in term.terms() {
            out.add_term(*m, c.clone());
        }
    }
    out
}

/// Which gl_m action to use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    Plain,
    Signed(SignVector),
}

impl Action {
    pub fn apply(&self, a: usize, b: usize, x: &GrassmannElt) -> GrassmannElt {
        match self {
            Action::Plain => e_op(a, b, x),
            Action::Signed(eps) => ee_op(eps, a, b, x),
        }
    }

    fn signs(&self, m: usize) -> SignVector {
        match self {
            Action::Plain => SignVector::all_plus(m),
            Action::Signed(eps) => eps.clone(),
        }
    }

    /// Row weight after applying the generator `(a, b)`, or `None` when the
    /// image is necessarily zero (a degree would leave `0..=n`).
    pub fn shift_weight(&self, a: usize, b: usize, weight: &RowWeight, n: usize) -> Option<RowWeight> {
        let eps = self.signs(weight.0.len());
        let mut w: Vec<i64> = weight.0.iter().map(|&d| d as i64).collect();
        // q_a raises row a in plus rows and lowers it in minus rows; p_b the reverse
        w[b - 1] += if eps.is_minus(b) { 1 } else { -1 };
        w[a - 1] += if eps.is_minus(a) { -1 } else { 1 };
        if w.iter().any(|&d| d < 0 || d > n as i64) {
            return None;
        }
        Some(RowWeight(w.into_iter().map(|d| d as usize).collect()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XyKind {
    X,
    Y,
}

/// A linear map between two enumerated weight subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearMap {
    pub domain: RowWeight,
    pub codomain: RowWeight,
    pub matrix: Matrix,
}

/// Matrix of the generator `(a, b)` from weight `weight` to wherever it lands.
pub fn generator_map(
    action: &Action,
    shape: Shape,
    a: usize,
    b: usize,
    weight: &RowWeight,
) -> Result<Option<LinearMap>> {
    let Some(target) = action.shift_weight(a, b, weight, shape.n) else {
        return Ok(None);
    };
    let dom = WeightBasis::new(shape, weight.clone())?;
    let cod = WeightBasis::new(shape, target.clone())?;
    let matrix = dom.matrix_of(&cod, |mono| {
        Ok(action.apply(a, b, &GrassmannElt::monomial(shape, *mono, Rational::one())))
    })?;
    Ok(Some(LinearMap {
        domain: weight.clone(),
        codomain: target,
        matrix,
    }))
}

/// `X^w_ab` or `Y^w_ab` (plain or signed) on the weight subspace `weight`.
pub fn xy_op(
    kind: XyKind,
    action: &Action,
    w: &[Rational],
    a: usize,
    b: usize,
    shape: Shape,
    weight: &RowWeight,
) -> Result<LinearMap> {
    if !(a >= 1 && a < b && b <= shape.m) {
        return Err(Error::Precondition(format!("need 1 <= a < b <= m, got ({a}, {b})")));
    }
    if w.len() != shape.m {
        return Err(Error::DimensionMismatch(format!("weight of length {}", w.len())));
    }
    let diff = &w[a - 1] - &w[b - 1];
    if is_negative_integer(&diff) {
        return Err(Error::ForbiddenWeightDifference {
            a,
            b,
            diff: diff.to_string(),
        });
    }
    let shift = &diff + Rational::one();
    let (first, second) = match kind {
        XyKind::X => ((a, b), (b, a)),
        XyKind::Y => ((b, a), (a, b)),
    };
    let basis = WeightBasis::new(shape, weight.clone())?;
    let matrix = basis.matrix_of(&basis, |mono| {
        let x = GrassmannElt::monomial(shape, *mono, Rational::one());
        let mut acc = x.clone();
        let mut raised = x;
        for r in 1..=shape.n {
            raised = action.apply(first.0, first.1, &raised);
            if raised.is_empty() {
                break;
            }
            let mut term = raised.clone();
            for _ in 0..r {
                term = action.apply(second.0, second.1, &term);
            }
            let sign = if r % 2 == 1 { -Rational::one() } else { Rational::one() };
            let coeff = sign / (factorial(r) * pochhammer(&shift, r));
            acc = acc.add(&term.scale(&coeff))?;
        }
        Ok(acc)
    })?;
    Ok(LinearMap {
        domain: weight.clone(),
        codomain: weight.clone(),
        matrix,
    })
}

/// `[A, B] = AB - BA` of two operators, as a function on elements.
pub fn commutator<F, G>(f: F, g: G, x: &GrassmannElt) -> Result<GrassmannElt>
where
    F: Fn(&GrassmannElt) -> GrassmannElt,
    G: Fn(&GrassmannElt) -> GrassmannElt,
{
    f(&g(x)).sub(&g(&f(x)))
}

/// Checks `[E_ab, E_cd] = d_bc E_ad - d_da E_cb` on every monomial of the
/// full algebra for the given action. Returns the first violation.
pub fn check_gl_relations(action: &Action, shape: Shape) -> Result<()> {
    let total = 1u64 << shape.vars();
    let m = shape.m;
    for bits in 0..total {
        let x = GrassmannElt::monomial(
            shape,
            crate::grassmann::Monomial::from_bits(bits),
            Rational::one(),
        );
        for a in 1..=m {
            for b in 1..=m {
                let ab = action.apply(a, b, &x);
                for c in 1..=m {
                    for d in 1..=m {
                        let lhs = action
                            .apply(a, b, &action.apply(c, d, &x))
                            .sub(&action.apply(c, d, &ab))?;
                        let mut rhs = GrassmannElt::zero(shape);
                        if b == c {
                            rhs = rhs.add(&action.apply(a, d, &x))?;
                        }
                        if d == a {
                            rhs = rhs.sub(&action.apply(c, b, &x))?;
                        }
                        if lhs != rhs {
                            return Err(Error::CheckFailed(format!(
                                "[E_{a}{b}, E_{c}{d}] on {x} (m={}, n={})",
                                shape.m, shape.n
                            )));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// `(-1)^r` as a rational.
pub fn sign_of(negative: bool) -> Rational {
    if negative {
        int(-1)
    } else {
        Rational::one()
    }
}
