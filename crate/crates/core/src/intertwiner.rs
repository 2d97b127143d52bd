//! Intertwining operators between a standard module and the module with its
//! tensor factors reversed.
//!
//! Given a reduced decomposition of the longest permutation, the positive
//! roots of gl_m are ordered normally and the operator is
//!
//! ```text
//! I = (-1)^N  alpha^{-1}  sigma_0  Z  alpha,    Z = ordered product of X_ab or Y_ab
//! ```
//!
//! where `X_ab` uses the weight `lambda_bar` when `nu_bar_a >= nu_bar_b` and
//! `Y_ab` uses `mu` otherwise. Modules with negative `nu_a` use the signed
//! gl_m action. The sign is `(-1)^N` with `N = sum_{a<b} nu_a nu_b` taken over
//! the signed `nu`, which is the choice sending the highest vector to the
//! highest vector.

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::arith::rational::is_negative_integer;
use crate::arith::{int, Rational};
use crate::error::{Error, Result};
use crate::glm::{xy_op, Action, XyKind};
use crate::grassmann::{GrassmannElt, WeightBasis};
use crate::linalg::Matrix;
use crate::perm::Perm;
use crate::yangian::{highest_vector, ModuleAction, ModuleSpec, PolyMatrix};

/// A reduced decomposition `sigma_0 = sigma_{a_1} ... sigma_{a_l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    m: usize,
    letters: Vec<usize>,
}

impl ReducedWord {
    pub fn new(m: usize, letters: Vec<usize>) -> Result<Self> {
        let ell = m * (m - 1) / 2;
        if letters.len() != ell || letters.iter().any(|&a| a == 0 || a >= m) {
            return Err(Error::NotReduced(letters));
        }
        let mut p = Perm::identity(m);
        for &a in &letters {
            if p.at(a - 1) > p.at(a) {
                return Err(Error::NotReduced(letters));
            }
            p = p.compose(&Perm::simple(m, a));
        }
        Ok(ReducedWord { m, letters })
    }

    /// `(1)(2,1)(3,2,1)...(m-1,...,1)`.
    pub fn default_for(m: usize) -> Self {
        let letters = (1..m).flat_map(|k| (1..=k).rev()).collect();
        ReducedWord { m, letters }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    /// Every reduced decomposition of the longest permutation of `m` letters,
    /// in lexicographic order.
    pub fn all(m: usize) -> Vec<ReducedWord> {
        fn extend(m: usize, p: &Perm, word: &mut Vec<usize>, ell: usize, out: &mut Vec<ReducedWord>) {
            if word.len() == ell {
                out.push(ReducedWord {
                    m,
                    letters: word.clone(),
                });
                return;
            }
            for a in 1..m {
                if p.at(a - 1) < p.at(a) {
                    word.push(a);
                    extend(m, &p.compose(&Perm::simple(m, a)), word, ell, out);
                    word.pop();
                }
            }
        }
        let mut out = Vec::new();
        extend(m, &Perm::identity(m), &mut Vec::new(), m * (m - 1) / 2, &mut out);
        out
    }

    /// `sigma_{a_{s+1}} ... sigma_{a_l}` (zero-based `s`).
    fn suffix(&self, s: usize) -> Perm {
        self.letters[s + 1..]
            .iter()
            .fold(Perm::identity(self.m), |acc, &a| acc.compose(&Perm::simple(self.m, a)))
    }
}

/// A total order on the positive roots `e_a - e_b`, `a < b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootOrdering {
    pub pairs: Vec<(usize, usize)>,
}

impl RootOrdering {
    /// Whenever two roots sum to a root, the sum sits between them.
    pub fn is_normal(&self) -> bool {
        let pos = |p: (usize, usize)| self.pairs.iter().position(|&q| q == p);
        for &(a, b) in &self.pairs {
            for &(c, d) in &self.pairs {
                if b != c {
                    continue;
                }
                let (Some(x), Some(y), Some(s)) = (pos((a, b)), pos((c, d)), pos((a, d))) else {
                    return false;
                };
                if !(x.min(y) < s && s < x.max(y)) {
                    return false;
                }
            }
        }
        let mut sorted = self.pairs.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == self.pairs.len()
    }
}

/// The `s`-th pair is `(sigma^{-1}(a_s), sigma^{-1}(a_s + 1))` with
/// `sigma = sigma_{a_{s+1}} ... sigma_{a_l}`.
pub fn root_order(word: &ReducedWord) -> Result<RootOrdering> {
    let mut pairs = Vec::with_capacity(word.letters.len());
    for (s, &a) in word.letters.iter().enumerate() {
        let inv = word.suffix(s).inverse();
        let pair = (inv.at(a - 1) + 1, inv.at(a) + 1);
        if pair.0 >= pair.1 {
            return Err(Error::NotReduced(word.letters.clone()));
        }
        pairs.push(pair);
    }
    let order = RootOrdering { pairs };
    debug_assert!(order.is_normal());
    Ok(order)
}

/// A constant intertwining operator between two standard modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Intertwiner {
    pub source: ModuleSpec,
    pub target: ModuleSpec,
    pub matrix: Matrix,
}

impl Intertwiner {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

impl Serialize for Intertwiner {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("Intertwiner", 4)?;
        s.serialize_field("matrix", &self.matrix)?;
        s.serialize_field("rank", &self.rank())?;
        s.serialize_field("source", &self.source)?;
        s.serialize_field("target", &self.target)?;
        s.end()
    }
}

/// Which operator a pair with `nu_bar_a = nu_bar_b` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TieRule {
    X,
    Y,
}

/// First pair `a < b` with `w_a - w_b` a negative integer, if any.
pub fn dominance_violation(w: &[Rational]) -> Option<(usize, usize, Rational)> {
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            let diff = &w[a] - &w[b];
            if is_negative_integer(&diff) {
                return Some((a + 1, b + 1, diff));
            }
        }
    }
    None
}

/// `sum_{a<b} w_a w_b`.
pub fn pair_sum(w: &[i64]) -> i64 {
    (0..w.len())
        .flat_map(|a| (a + 1..w.len()).map(move |b| w[a] * w[b]))
        .sum()
}

pub(crate) fn sign(odd: bool) -> Rational {
    if odd {
        int(-1)
    } else {
        Rational::one()
    }
}

/// Matrix of the row permutation `x_{ai} -> x_{sigma(a) i}` between
/// enumerated weight subspaces.
pub fn permutation_matrix(sigma: &Perm, domain: &WeightBasis, codomain: &WeightBasis) -> Result<Matrix> {
    domain.matrix_of(codomain, |mono| {
        GrassmannElt::monomial(domain.shape, *mono, Rational::one()).permute_rows(sigma)
    })
}

/// The operator `Z` on the weight `|nu|` subspace for the given root order.
pub fn z_operator(spec: &ModuleSpec, order: &RootOrdering, tie: TieRule) -> Result<Matrix> {
    let action = if spec.is_polynomial() {
        Action::Plain
    } else {
        Action::Signed(spec.eps())
    };
    let nu_bar = spec.nu_bar();
    let lambda_bar = spec.lambda_bar();
    let weight = spec.row_weight();
    let shape = spec.shape();
    let mut z = Matrix::identity(spec.dim());
    for &(a, b) in &order.pairs {
        let use_x = match nu_bar[a - 1].cmp(&nu_bar[b - 1]) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => tie == TieRule::X,
        };
        let factor = if use_x {
            xy_op(XyKind::X, &action, &lambda_bar, a, b, shape, &weight)?
        } else {
            xy_op(XyKind::Y, &action, spec.mu(), a, b, shape, &weight)?
        };
        z = &z * &factor.matrix;
    }
    Ok(z)
}

/// Builds the intertwiner for `spec` along `word`.
pub fn build_i(spec: &ModuleSpec, word: &ReducedWord) -> Result<Intertwiner> {
    build_i_with(spec, word, TieRule::X)
}

pub fn build_i_with(spec: &ModuleSpec, word: &ReducedWord, tie: TieRule) -> Result<Intertwiner> {
    let m = spec.m();
    if word.m() != m {
        return Err(Error::Precondition(format!("word for m = {} used with m = {m}", word.m())));
    }
    if let Some((a, b, diff)) = dominance_violation(&spec.lambda_bar()) {
        return Err(Error::NotDominant {
            a,
            b,
            diff: diff.to_string(),
        });
    }
    let target = spec.reversed();
    let order = root_order(word)?;
    let z = z_operator(spec, &order, tie)?;
    let sigma0 = Perm::longest(m);
    let p = permutation_matrix(&sigma0, &spec.basis(), &target.basis())?;
    let n_sign = pair_sum(spec.nu());
    let matrix = (&p * &z).scale(&sign(n_sign % 2 != 0));
    Ok(Intertwiner {
        source: spec.clone(),
        target,
        matrix,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryKind {
    I,
    J,
    JPrime,
}

/// The elementary intertwiners attached to the transposition of factors
/// `a` and `a + 1` of a polynomial module.
///
/// `I_a` and `J_a` map `spec` to the swapped module; `J'_a` maps the swapped
/// module back to `spec`.
pub fn elementary(kind: ElementaryKind, spec: &ModuleSpec, a: usize) -> Result<Intertwiner> {
    let m = spec.m();
    if !spec.is_polynomial() {
        return Err(Error::Precondition("elementary intertwiners need nu >= 0".into()));
    }
    if a == 0 || a >= m {
        return Err(Error::Precondition(format!("transposition index {a} for m = {m}")));
    }
    let sa = Perm::simple(m, a);
    let (source, xy, w) = match kind {
        ElementaryKind::I => (spec.clone(), XyKind::X, spec.lambda()),
        ElementaryKind::J => (spec.clone(), XyKind::Y, spec.mu().to_vec()),
        ElementaryKind::JPrime => {
            let swapped = spec.permuted(&sa);
            let w = swapped.mu().to_vec();
            (swapped, XyKind::Y, w)
        }
    };
    let target = source.permuted(&sa);
    let op = xy_op(xy, &Action::Plain, &w, a, a + 1, source.shape(), &source.row_weight())?;
    let p = permutation_matrix(&sa, &source.basis(), &target.basis())?;
    Ok(Intertwiner {
        source,
        target,
        matrix: &p * &op.matrix,
    })
}

/// The intertwiner of a polynomial module as an ordered composition of
/// elementary ones along `word`: `J` replaces `I` at every step whose pair
/// has `nu_a < nu_b`.
pub fn compose_elementary(spec: &ModuleSpec, word: &ReducedWord) -> Result<Intertwiner> {
    if let Some((a, b, diff)) = dominance_violation(&spec.lambda()) {
        return Err(Error::NotDominant {
            a,
            b,
            diff: diff.to_string(),
        });
    }
    let m = spec.m();
    let mut current = spec.clone();
    let mut matrix = Matrix::identity(spec.dim());
    for s in (0..word.letters().len()).rev() {
        let a = word.letters()[s];
        let kind = if current.nu()[a - 1] < current.nu()[a] {
            ElementaryKind::J
        } else {
            ElementaryKind::I
        };
        let step = elementary(kind, &current, a)?;
        matrix = &step.matrix * &matrix;
        current = step.target;
    }
    debug_assert_eq!(current, spec.permuted(&Perm::longest(m)));
    let n_sign = pair_sum(spec.nu());
    Ok(Intertwiner {
        source: spec.clone(),
        target: current,
        matrix: matrix.scale(&sign(n_sign % 2 != 0)),
    })
}

/// Builds the intertwiner along every reduced word and checks they agree.
/// Returns the number of words compared.
pub fn word_independence_check(spec: &ModuleSpec) -> Result<usize> {
    let words = ReducedWord::all(spec.m());
    let first = build_i(spec, &words[0])?;
    for w in &words[1..] {
        let other = build_i(spec, w)?;
        if other.matrix != first.matrix {
            return Err(Error::WordDependenceViolated {
                first: words[0].letters().to_vec(),
                second: w.letters().to_vec(),
            });
        }
    }
    Ok(words.len())
}

/// `I T_ij(u) = T'_ij(u) I` for all `i, j`, compared exactly on numerator
/// coefficients after cross-multiplying the two common denominators.
pub fn intertwine_check(op: &Intertwiner) -> Result<()> {
    let source = ModuleAction::new(&op.source);
    let target = ModuleAction::new(&op.target);
    intertwine_check_with(op, &source, &target)
}

pub fn intertwine_check_with(op: &Intertwiner, source: &ModuleAction, target: &ModuleAction) -> Result<()> {
    let n = op.source.n();
    if op.target.n() != n || source.spec() != &op.source || target.spec() != &op.target {
        return Err(Error::DimensionMismatch("actions do not match the operator".into()));
    }
    let same_den = source.den() == target.den();
    for i in 1..=n {
        for j in 1..=n {
            let mut lhs: PolyMatrix = source.num(i, j).left_mul(&op.matrix);
            let mut rhs: PolyMatrix = target.num(i, j).right_mul(&op.matrix);
            if !same_den {
                lhs = lhs.scale_poly(target.den());
                rhs = rhs.scale_poly(source.den());
            }
            if lhs != rhs {
                return Err(Error::IntertwiningViolated { i, j });
            }
        }
    }
    Ok(())
}

/// `I(v) = v'` for the highest vectors of source and target.
pub fn highest_vector_check(op: &Intertwiner) -> Result<()> {
    let v = highest_vector(&op.source);
    let w = highest_vector(&op.target);
    let image = op.matrix.column(v.index);
    if image != w.coordinates() {
        return Err(Error::CheckFailed(format!(
            "image of the highest vector is {:?}",
            image.iter().map(|x| x.to_string()).collect::<Vec<_>>()
        )));
    }
    Ok(())
}

/// Incrementally maintained span of rational vectors in echelon form.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<(usize, Vec<Rational>)>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut v = v.to_vec();
        for (pivot, row) in &self.rows {
            if !v[*pivot].is_zero() {
                let c = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x -= &c * r;
                    }
                }
            }
        }
        v
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let v = self.reduce(v);
        let Some(pivot) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rational::one() / &v[pivot];
        let v: Vec<Rational> = v.iter().map(|x| x * &inv).collect();
        for (_, row) in self.rows.iter_mut() {
            if !row[pivot].is_zero() {
                let c = row[pivot].clone();
                for (x, y) in row.iter_mut().zip(&v) {
                    if !y.is_zero() {
                        *x -= &c * y;
                    }
                }
            }
        }
        self.rows.push((pivot, v));
        true
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }
}

/// Smallest subspace containing `v` and stable under every operator.
pub fn closure(ops: &[Matrix], v: &[Rational]) -> Span {
    let mut span = Span::new();
    let mut queue = vec![v.to_vec()];
    while let Some(w) = queue.pop() {
        if !span.insert(&w) {
            continue;
        }
        for op in ops {
            let image = op.apply(&w);
            if !span.contains(&image) {
                queue.push(image);
            }
        }
    }
    span
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ImageReport {
    pub rank: usize,
    #[serde(skip)]
    pub basis: Vec<Vec<Rational>>,
    /// Dimension of the space of image vectors annihilated by every
    /// strictly upper coefficient `T^(r)_ij`, `i < j`.
    pub singular_dim: usize,
    /// The singular line generates the whole image.
    pub cyclic_from_singular: bool,
    pub irreducible: bool,
}

/// Rank, image basis and irreducibility of the image of an intertwiner.
///
/// With `D(u) T_ij(u) = N_ij(u)` and `deg N_ij <= deg D = d`, the Laurent
/// coefficients obey a scalar recurrence of order `d`, so `T^(1..=d)_ij`
/// span every `T^(r)_ij`. A nonzero submodule of the image contains a
/// vector of extreme `gl_n` weight, which is singular. So the image is
/// irreducible exactly when its singular vectors form a line and that line
/// generates it.
pub fn image_analysis(op: &Intertwiner) -> Result<ImageReport> {
    let target = ModuleAction::new(&op.target);
    image_analysis_with(op, &target)
}

pub fn image_analysis_with(op: &Intertwiner, target: &ModuleAction) -> Result<ImageReport> {
    let n = op.target.n();
    let count = target.den().degree().unwrap_or(0).max(1);
    let mut all_ops = Vec::new();
    let mut upper = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for t in target.laurent(i, j, count + 1).into_iter().skip(1) {
                if t.is_zero() {
                    continue;
                }
                if i < j {
                    upper.push(t.clone());
                }
                all_ops.push(t);
            }
        }
    }
    let basis = op.matrix.column_basis();
    let rank = basis.len();
    let singular = if rank == 0 {
        Vec::new()
    } else if upper.is_empty() {
        basis.clone()
    } else {
        let b = Matrix::from_columns(op.matrix.rows(), &basis);
        let stacked: Vec<Vec<Rational>> = upper.iter().flat_map(|t| (t * &b).to_rows()).collect();
        Matrix::from_rows(stacked)?
            .nullspace()
            .iter()
            .map(|c| b.apply(c))
            .collect()
    };
    let cyclic = singular.len() == 1 && closure(&all_ops, &singular[0]).dim() == rank;
    Ok(ImageReport {
        rank,
        basis,
        singular_dim: singular.len(),
        cyclic_from_singular: cyclic,
        irreducible: rank > 0 && cyclic,
    })
}

/// `true` when the matrices are equal up to the scalar `c`: `a = c b`.
pub fn proportional(a: &Matrix, b: &Matrix, c: &Rational) -> bool {
    *a == b.scale(c)
}
