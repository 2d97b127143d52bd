//! Complementation maps relating modules with negative `nu_a` to
//! polynomial ones.
//!
//! On a single row, `R(x) = S(x) . x_1 ... x_n` where `S` swaps each `x_i`
//! with `d_i`; the signed version `R_eps` does this in the negative rows
//! only, against the product of their top monomials. Conjugating the
//! polynomial intertwiner of `(mu, nu_bar)` by `R_eps` recovers the
//! intertwiner of `(mu, nu)` up to a sign. That sign is
//! `(-1)^{composite_exponent}`; it agrees with `(-1)^{K+L}` only when
//! `sum_{c: nu_c < 0} nu_bar_c sum_{b != c} nu_b` is even.

use num_traits::One;
use serde::Serialize;

use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::glm::SignVector;
use crate::grassmann::{GrassmannElt, Monomial, Shape, WeightBasis};
use crate::intertwiner::{build_i, dominance_violation, pair_sum, sign, Intertwiner, ReducedWord};
use crate::linalg::Matrix;
use crate::yangian::{highest_vector, ModuleSpec};

/// The sign exponents `N`, `N_bar`, `K`, `L`, `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SignCounters {
    #[serde(rename = "N")]
    pub n: i64,
    #[serde(rename = "Nbar")]
    pub nbar: i64,
    #[serde(rename = "K")]
    pub k: i64,
    #[serde(rename = "L")]
    pub l: i64,
    #[serde(rename = "M")]
    pub m: i64,
}

impl SignCounters {
    pub fn of(spec: &ModuleSpec) -> Self {
        let nu = spec.nu();
        let mut k = 0;
        let mut l = 0;
        let mut m = 0;
        for (a, &x) in nu.iter().enumerate() {
            if x >= 0 {
                continue;
            }
            k += nu[a + 1..].iter().map(|&y| x * y).sum::<i64>();
            l += nu[..a].iter().map(|&y| x * y).sum::<i64>();
            m += x * (x - 1) / 2;
        }
        SignCounters {
            n: pair_sum(nu),
            nbar: pair_sum(&spec.nu_bar()),
            k,
            l,
            m,
        }
    }
}

/// Applies `S_eps(x)` to `target`: reading `x` right to left, variables of
/// negative rows act by derivation and the others by multiplication.
fn apply_swapped(eps: &SignVector, x: &GrassmannElt, target: &GrassmannElt) -> Result<GrassmannElt> {
    let shape = x.shape();
    let mut out = GrassmannElt::zero(shape);
    for (mono, c) in x.terms() {
        let mut y = target.clone();
        let slots: Vec<usize> = mono.slots().collect();
        for &s in slots.iter().rev() {
            let (a, i) = shape.var_of(s);
            y = if eps.is_minus(a) { y.derive(a, i) } else { y.mul_var(a, i) };
        }
        out = out.add(&y.scale(c))?;
    }
    Ok(out)
}

/// Product of the top monomials `x_{a1} ... x_{an}` of the negative rows,
/// in increasing order of `a`.
fn negative_tops(eps: &SignVector, shape: Shape) -> Result<GrassmannElt> {
    let mut p = GrassmannElt::one(shape);
    for a in 1..=shape.m {
        if eps.is_minus(a) {
            p = p.mul(&GrassmannElt::row_top(shape, a))?;
        }
    }
    Ok(p)
}

/// `R(x) = S(x) . x_1 ... x_n` on the single-row algebra `G_n`.
pub fn r_map(x: &GrassmannElt) -> Result<GrassmannElt> {
    let shape = x.shape();
    if shape.m != 1 {
        return Err(Error::Precondition("R acts on a single row".into()));
    }
    r_eps_element(&SignVector::new(vec![-1])?, x)
}

/// `R_eps(x) = S_eps(x) . prod_{eps_a = -1} x_{a1} ... x_{an}` on the whole
/// algebra.
pub fn r_eps_element(eps: &SignVector, x: &GrassmannElt) -> Result<GrassmannElt> {
    let shape = x.shape();
    if eps.len() != shape.m {
        return Err(Error::DimensionMismatch(format!("{} signs for m = {}", eps.len(), shape.m)));
    }
    apply_swapped(eps, x, &negative_tops(eps, shape)?)
}

/// `R_eps` as a matrix from the weight `|nu|` subspace to the weight
/// `nu_bar` subspace.
pub fn r_eps(spec: &ModuleSpec) -> Result<Matrix> {
    let eps = spec.eps();
    let barred = barred_spec(spec);
    let shape = spec.shape();
    spec.basis().matrix_of(&barred.basis(), |mono| {
        r_eps_element(&eps, &GrassmannElt::monomial(shape, *mono, Rational::one()))
    })
}

/// The polynomial spec `(n, mu, nu_bar)`.
pub fn barred_spec(spec: &ModuleSpec) -> ModuleSpec {
    ModuleSpec::new(spec.n(), spec.mu().to_vec(), spec.nu_bar()).expect("0 <= nu_bar <= n")
}

/// Checks `R^2 = (-1)^{n(n-1)/2}` on every monomial of `G_n`.
pub fn r_squared_check(n: usize) -> Result<()> {
    let shape = Shape::new(1, n)?;
    let expected = sign((n * (n - 1) / 2) % 2 == 1);
    for bits in 0..1u64 << n {
        let x = GrassmannElt::monomial(shape, Monomial::from_bits(bits), Rational::one());
        let twice = r_map(&r_map(&x)?)?;
        if twice != x.scale(&expected) {
            return Err(Error::CheckFailed(format!("R^2 on {x} gives {twice}")));
        }
    }
    Ok(())
}

/// The isomorphism from the covector power `Lambda^d` at `z` (spec
/// `nu = (-d)`) to `Lambda^{n-d} (x) Lambda^n` (spec `nu = (n - d, -n)`),
/// `x -> R(x) (x) x_1 ... x_n`.
pub fn iso_covector(n: usize, d: usize, z: &Rational) -> Result<Intertwiner> {
    if d > n {
        return Err(Error::InvalidSpec(format!("d = {d} exceeds n = {n}")));
    }
    let source = ModuleSpec::new(n, vec![z.clone()], vec![-(d as i64)])?;
    let target = ModuleSpec::new(n, vec![z.clone(), z.clone()], vec![(n - d) as i64, -(n as i64)])?;
    let row = Shape::new(1, n)?;
    let src = WeightBasis::new(row, crate::grassmann::RowWeight(vec![d]))?;
    let dst = WeightBasis::new(row, crate::grassmann::RowWeight(vec![n - d]))?;
    // the second tensor factor is one-dimensional, so target coordinates are
    // those of R(x)
    let matrix = src.matrix_of(&dst, |mono| r_map(&GrassmannElt::monomial(row, *mono, Rational::one())))?;
    debug_assert_eq!(matrix.rows(), target.dim());
    Ok(Intertwiner {
        source,
        target,
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompositeReport {
    pub counters: SignCounters,
    pub dim: usize,
    /// `c` with `R_{sigma_0 eps}^{-1} I_bar R_eps = c I`.
    pub composite_sign: i8,
    /// `(-1)^{K+L}`.
    pub counter_sign: i8,
    /// `(-1)^{composite_exponent}`.
    pub exact_sign: i8,
    /// Signs of `R_eps` on the source and target highest vectors.
    pub source_hv_sign: i8,
    pub target_hv_sign: i8,
}

fn parity_sign(e: i64) -> i8 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Sign exponent of the row-local map `R` on `e_{n-d+1} ^ ... ^ e_n`.
fn row_hv_exponent(n: i64, d: i64) -> i64 {
    d * (n - 1) - d * (d - 1) / 2
}

/// Exponent `e` with `R_eps(v) = (-1)^e v_bar` for the highest vectors of
/// `spec` and of its barred spec. Each positive row below a negative row
/// moves past that row's top monomial of degree `n`.
pub fn hv_exponent(spec: &ModuleSpec) -> i64 {
    let n = spec.n() as i64;
    let nu = spec.nu();
    let mut e = 0;
    for (c, &nc) in nu.iter().enumerate() {
        if nc < 0 {
            e += row_hv_exponent(n, -nc);
            e += n * nu[c + 1..].iter().map(|x| x.abs()).sum::<i64>();
        }
    }
    e
}

/// Exponent `e` with `R_{sigma_0 eps}^{-1} I_bar R_eps = (-1)^e I`, namely
/// `n * sum_{c: nu_c < 0} sum_{b != c} |nu_b|`.
pub fn composite_exponent(spec: &ModuleSpec) -> i64 {
    hv_exponent(spec) + hv_exponent(&spec.reversed())
}

/// Conjugates the polynomial intertwiner of `(mu, nu_bar)` by `R_eps` and
/// `R_{sigma_0 eps}` and measures the scalar relating it to the intertwiner
/// of `spec`.
pub fn composite_analysis(spec: &ModuleSpec, word: &ReducedWord) -> Result<CompositeReport> {
    if let Some((a, b, diff)) = dominance_violation(&spec.lambda_bar()) {
        return Err(Error::NotDominant {
            a,
            b,
            diff: diff.to_string(),
        });
    }
    let counters = SignCounters::of(spec);
    let barred = barred_spec(spec);
    let target = spec.reversed();
    let barred_target = barred.reversed();

    let r_source = r_eps(spec)?;
    let r_target = r_eps(&target)?;
    let r_target_inv = r_target
        .inverse()
        .ok_or_else(|| Error::CompositeMismatch("R_eps is not invertible".into()))?;

    let poly = build_i(&barred, word)?;
    let rational = build_i(spec, word)?;
    let composite = &(&r_target_inv * &poly.matrix) * &r_source;
    let composite_sign = if composite == rational.matrix {
        1
    } else if composite == rational.matrix.scale(&int(-1)) {
        -1
    } else {
        return Err(Error::CompositeMismatch(format!(
            "conjugated intertwiner is not proportional to I for nu = {:?}",
            spec.nu()
        )));
    };

    let hv_sign = |r: &Matrix, from: &ModuleSpec, to: &ModuleSpec| -> Result<i8> {
        let image = r.column(highest_vector(from).index);
        let w = highest_vector(to).coordinates();
        if image == w {
            Ok(1)
        } else if image.iter().zip(&w).all(|(x, y)| x == &-y) {
            Ok(-1)
        } else {
            Err(Error::CompositeMismatch("R_eps does not map highest vector to highest vector".into()))
        }
    };
    let source_hv_sign = hv_sign(&r_source, spec, &barred)?;
    let target_hv_sign = hv_sign(&r_target, &target, &barred_target)?;

    Ok(CompositeReport {
        counter_sign: parity_sign(counters.k + counters.l),
        exact_sign: parity_sign(composite_exponent(spec)),
        counters,
        dim: spec.dim(),
        composite_sign,
        source_hv_sign,
        target_hv_sign,
    })
}

/// Checks that the conjugated polynomial intertwiner equals `(-1)^{K+L} I`
/// and that `R_eps`, `R_{sigma_0 eps}` scale the highest vectors by
/// `(-1)^{K+M}`, `(-1)^{L+M}`.
pub fn composite_check(spec: &ModuleSpec, word: &ReducedWord) -> Result<CompositeReport> {
    let report = composite_analysis(spec, word)?;
    let c = &report.counters;
    if report.composite_sign != report.counter_sign {
        return Err(Error::CompositeMismatch(format!(
            "conjugated intertwiner is {} I, (-1)^(K+L) = {} for n = {}, nu = {:?}",
            report.composite_sign,
            report.counter_sign,
            spec.n(),
            spec.nu()
        )));
    }
    for (got, want, label) in [
        (report.source_hv_sign, parity_sign(c.k + c.m), "(-1)^(K+M)"),
        (report.target_hv_sign, parity_sign(c.l + c.m), "(-1)^(L+M)"),
    ] {
        if got != want {
            return Err(Error::CompositeMismatch(format!(
                "highest vector sign {got} differs from {label} = {want} for n = {}, nu = {:?}",
                spec.n(),
                spec.nu()
            )));
        }
    }
    Ok(report)
}
