//! Standard Yangian modules: tensor products of exterior powers of `C^n`
//! (and of their duals) with the action of the generating series `T_ij(u)`.
//!
//! Each factor acts by `T_ij(u) = N_ij(u) / D(u)` with `D` monic of degree at
//! most one and `N_ij` a matrix polynomial of the same degree, so the whole
//! tensor product is stored as a common denominator `D(u) = prod_a D_a(u)`
//! and matrix polynomial numerators. Exact identities are then checked on
//! numerator coefficients.

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{int, Poly, RatFun, Rational};
use crate::error::{Error, Result};
use crate::glm::SignVector;
use crate::grassmann::{alpha_encode, binomial, GrassmannElt, Monomial, RowWeight, Shape, WeightBasis};
use crate::linalg::{poly_det, Matrix};
use crate::perm::Perm;

/// The data `(n, mu, nu)` of a standard module; `lambda = mu + nu`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    n: usize,
    mu: Vec<Rational>,
    nu: Vec<i64>,
}

impl ModuleSpec {
    pub fn new(n: usize, mu: Vec<Rational>, nu: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("n must be positive".into()));
        }
        if mu.is_empty() {
            return Err(Error::InvalidSpec("m must be positive".into()));
        }
        if mu.len() != nu.len() {
            return Err(Error::InvalidSpec(format!(
                "mu has {} entries but nu has {}",
                mu.len(),
                nu.len()
            )));
        }
        if let Some(d) = nu.iter().find(|d| d.unsigned_abs() as usize > n) {
            return Err(Error::InvalidSpec(format!("|nu_a| = {} exceeds n = {n}", d.abs())));
        }
        if mu.len() * n > 64 {
            return Err(Error::InvalidSpec(format!("m*n = {} exceeds 64", mu.len() * n)));
        }
        Ok(ModuleSpec { n, mu, nu })
    }

    /// Convenience constructor with integer `mu`.
    pub fn with_int_mu(n: usize, mu: &[i64], nu: &[i64]) -> Result<Self> {
        ModuleSpec::new(n, mu.iter().map(|&x| int(x)).collect(), nu.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[Rational] {
        &self.mu
    }

    pub fn nu(&self) -> &[i64] {
        &self.nu
    }

    pub fn lambda(&self) -> Vec<Rational> {
        self.mu.iter().zip(&self.nu).map(|(m, &d)| m + int(d)).collect()
    }

    pub fn eps(&self) -> SignVector {
        SignVector::new(self.nu.iter().map(|&d| if d >= 0 { 1 } else { -1 }).collect())
            .expect("signs are +1 or -1")
    }

    pub fn is_polynomial(&self) -> bool {
        self.nu.iter().all(|&d| d >= 0)
    }

    pub fn nu_bar(&self) -> Vec<i64> {
        self.nu
            .iter()
            .map(|&d| if d >= 0 { d } else { self.n as i64 + d })
            .collect()
    }

    pub fn lambda_bar(&self) -> Vec<Rational> {
        self.mu.iter().zip(self.nu_bar()).map(|(m, d)| m + int(d)).collect()
    }

    /// `|nu|`, the Grassmann weight the module is identified with.
    pub fn row_weight(&self) -> RowWeight {
        RowWeight(self.nu.iter().map(|d| d.unsigned_abs() as usize).collect())
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.m(), self.n).expect("validated on construction")
    }

    pub fn dim(&self) -> usize {
        self.nu
            .iter()
            .map(|d| binomial(self.n, d.unsigned_abs() as usize))
            .product()
    }

    pub fn basis(&self) -> WeightBasis {
        WeightBasis::new(self.shape(), self.row_weight()).expect("weight within bounds")
    }

    /// The module spec with factors rearranged by `sigma` (`sigma(mu)`, `sigma(nu)`).
    pub fn permuted(&self, sigma: &Perm) -> ModuleSpec {
        ModuleSpec {
            n: self.n,
            mu: sigma.act_on(&self.mu),
            nu: sigma.act_on(&self.nu),
        }
    }

    pub fn reversed(&self) -> ModuleSpec {
        self.permuted(&Perm::longest(self.m()))
    }
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    n: usize,
    m: usize,
    mu: Vec<String>,
    nu: Vec<i64>,
}

impl Serialize for ModuleSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawSpec {
            n: self.n,
            m: self.m(),
            mu: self.mu.iter().map(|x| x.to_string()).collect(),
            nu: self.nu.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ModuleSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpec::deserialize(deserializer)?;
        if raw.m != raw.mu.len() {
            return Err(serde::de::Error::custom(format!(
                "m = {} but mu has {} entries",
                raw.m,
                raw.mu.len()
            )));
        }
        let mu = raw
            .mu
            .iter()
            .map(|s| crate::arith::parse_rational(s))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        ModuleSpec::new(raw.n, mu, raw.nu).map_err(serde::de::Error::custom)
    }
}

/// A square matrix polynomial `sum_k C_k u^k`, trailing zero coefficients
/// trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    coeffs: Vec<Matrix>,
}

impl PolyMatrix {
    pub fn zero(dim: usize) -> Self {
        PolyMatrix { dim, coeffs: Vec::new() }
    }

    pub fn from_coeffs(dim: usize, mut coeffs: Vec<Matrix>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        PolyMatrix { dim, coeffs }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[Matrix] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero matrix beyond the degree).
    pub fn coeff(&self, k: usize) -> Matrix {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|m| m.get(r, c).clone()).collect())
    }

    pub fn eval(&self, u: &Rational) -> Matrix {
        let mut acc = Matrix::zeros(self.dim, self.dim);
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(u) + c;
        }
        acc
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect();
        PolyMatrix::from_coeffs(self.dim, coeffs)
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| &self.coeff(k) - &other.coeff(k)).collect();
        PolyMatrix::from_coeffs(self.dim, coeffs)
    }

    fn convolve<F>(&self, other: &PolyMatrix, dim: usize, f: F) -> PolyMatrix
    where
        F: Fn(&Matrix, &Matrix) -> Matrix,
    {
        if self.is_zero() || other.is_zero() {
            return PolyMatrix::zero(dim);
        }
        let mut coeffs = vec![Matrix::zeros(dim, dim); self.coeffs.len() + other.coeffs.len() - 1];
        for (p, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (q, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[p + q] = &coeffs[p + q] + &f(a, b);
                }
            }
        }
        PolyMatrix::from_coeffs(dim, coeffs)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        self.convolve(other, self.dim, |a, b| a * b)
    }

    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        self.convolve(other, self.dim * other.dim, |a, b| a.kron(b))
    }

    pub fn left_mul(&self, m: &Matrix) -> PolyMatrix {
        PolyMatrix::from_coeffs(m.rows(), self.coeffs.iter().map(|c| m * c).collect())
    }

    pub fn right_mul(&self, m: &Matrix) -> PolyMatrix {
        PolyMatrix::from_coeffs(m.cols(), self.coeffs.iter().map(|c| c * m).collect())
    }

    pub fn scale_poly(&self, p: &Poly) -> PolyMatrix {
        let constant = |c: &Rational| {
            let mut m = Matrix::identity(self.dim);
            m = m.scale(c);
            m
        };
        let as_pm = PolyMatrix::from_coeffs(self.dim, p.coeffs().iter().map(constant).collect());
        self.mul(&as_pm)
    }
}

/// One tensor factor `Lambda^{|d|}(C^n)` at evaluation point `z`: its
/// denominator and the numerators of all `T_ij(u)`, indexed `(i-1)*n + (j-1)`.
fn factor_numerators(n: usize, d: i64, z: &Rational) -> (Poly, Vec<PolyMatrix>) {
    let k = d.unsigned_abs() as usize;
    let shape = Shape::new(1, n).expect("n <= 64");
    let basis = WeightBasis::new(shape, RowWeight(vec![k])).expect("k <= n");
    let size = basis.dim();
    let unit = |i: usize, j: usize| -> Matrix {
        basis
            .matrix_of(&basis, |mono| {
                let x = GrassmannElt::monomial(shape, *mono, Rational::one());
                Ok(x.derive(1, j).mul_var(1, i))
            })
            .expect("E_ij preserves the degree")
    };
    let den = match d.signum() {
        1 => Poly::linear(z),
        -1 => Poly::linear(&(z - Rational::one())),
        _ => Poly::one(),
    };
    let mut nums = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            let diag = if i == j {
                den.coeffs().iter().map(|c| Matrix::identity(size).scale(c)).collect()
            } else {
                Vec::new()
            };
            let mut num = PolyMatrix::from_coeffs(size, diag);
            if d > 0 {
                num = num.add(&PolyMatrix::from_coeffs(size, vec![unit(i, j)]));
            } else if d < 0 {
                num = num.sub(&PolyMatrix::from_coeffs(size, vec![unit(j, i)]));
            }
            nums.push(num);
        }
    }
    (den, nums)
}

/// `T_ij(u)` on one exterior power factor, as rational function entries.
///
/// For `d >= 0` this is `delta_ij + E_ij / (u - z)` on `Lambda^d(C^n)`; for
/// `d < 0` it is `delta_ij - E_ji / (u - z + 1)` on `Lambda^{-d}(C^n)`.
pub fn factor_action(n: usize, d: i64, z: &Rational, i: usize, j: usize) -> Result<Vec<Vec<RatFun>>> {
    if d.unsigned_abs() as usize > n || n == 0 || n > 64 {
        return Err(Error::InvalidSpec(format!("factor degree {d} with n = {n}")));
    }
    if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
        return Err(Error::Precondition(format!("generator index ({i}, {j}) with n = {n}")));
    }
    let (den, nums) = factor_numerators(n, d, z);
    to_ratfun_entries(&nums[(i - 1) * n + (j - 1)], &den)
}

fn to_ratfun_entries(num: &PolyMatrix, den: &Poly) -> Result<Vec<Vec<RatFun>>> {
    (0..num.dim())
        .map(|r| {
            (0..num.dim())
                .map(|c| RatFun::new(num.entry(r, c), den.clone()))
                .collect()
        })
        .collect()
}

/// `T_ij(u)` on a module: `num(u) / den(u)` entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    pub i: usize,
    pub j: usize,
    pub den: Poly,
    pub num: PolyMatrix,
}

impl ActionMatrix {
    pub fn entries(&self) -> Vec<Vec<RatFun>> {
        to_ratfun_entries(&self.num, &self.den).expect("denominator is nonzero")
    }

    pub fn entry(&self, r: usize, c: usize) -> RatFun {
        RatFun::new(self.num.entry(r, c), self.den.clone()).expect("denominator is nonzero")
    }

    pub fn eval(&self, u: &Rational) -> Result<Matrix> {
        let d = self.den.eval(u);
        if d.is_zero() {
            return Err(Error::PoleEvaluation(u.to_string()));
        }
        Ok(self.num.eval(u).scale(&(Rational::one() / d)))
    }
}

impl Serialize for ActionMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("ActionMatrix", 3)?;
        s.serialize_field("entries", &self.entries())?;
        s.serialize_field("i", &self.i)?;
        s.serialize_field("j", &self.j)?;
        s.end()
    }
}

/// All `n^2` series `T_ij(u)` on a standard module.
#[derive(Clone, Debug)]
pub struct ModuleAction {
    spec: ModuleSpec,
    den: Poly,
    nums: Vec<PolyMatrix>,
}

impl ModuleAction {
    /// Builds the action through the iterated comultiplication
    /// `T_ij(u) -> sum_k T_ik(u) (x) T_kj(u)`.
    pub fn new(spec: &ModuleSpec) -> ModuleAction {
        let n = spec.n();
        let mut factors = spec
            .nu()
            .iter()
            .zip(spec.mu())
            .rev()
            .map(|(&d, z)| factor_numerators(n, d, z));
        let (mut den, mut nums) = factors.next().expect("m >= 1");
        for (fden, fnums) in factors {
            let combined = (0..n * n)
                .map(|idx| {
                    let (i, j) = (idx / n, idx % n);
                    let dim = fnums[0].dim() * nums[0].dim();
                    (0..n).fold(PolyMatrix::zero(dim), |acc, k| {
                        acc.add(&fnums[i * n + k].kron(&nums[k * n + j]))
                    })
                })
                .collect();
            nums = combined;
            den = &fden * &den;
        }
        let action = ModuleAction {
            spec: spec.clone(),
            den,
            nums,
        };
        debug_assert!(action.denominator_bound_holds());
        action
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn dim(&self) -> usize {
        self.nums[0].dim()
    }

    pub fn num(&self, i: usize, j: usize) -> &PolyMatrix {
        let n = self.spec.n();
        &self.nums[(i - 1) * n + (j - 1)]
    }

    pub fn get(&self, i: usize, j: usize) -> ActionMatrix {
        ActionMatrix {
            i,
            j,
            den: self.den.clone(),
            num: self.num(i, j).clone(),
        }
    }

    /// Every entry is proper and its denominator divides
    /// `prod_a (u - mu_a)(u - mu_a + 1)`.
    pub fn denominator_bound_holds(&self) -> bool {
        let bound = self
            .spec
            .mu()
            .iter()
            .fold(Poly::one(), |acc, z| &acc * &Poly::from_roots(&[z.clone(), z - Rational::one()]));
        let divides = bound.div_rem(&self.den).map(|(_, r)| r.is_zero()).unwrap_or(false);
        let den_deg = self.den.degree().unwrap_or(0);
        divides && self.nums.iter().all(|p| p.degree().unwrap_or(0) <= den_deg)
    }

    /// Coefficients `T^(r)` of `T_ij(u) = sum_{r>=0} T^(r) u^{-r}` for
    /// `r = 0..count`.
    pub fn laurent(&self, i: usize, j: usize, count: usize) -> Vec<Matrix> {
        let num = self.num(i, j);
        let d = self.den.degree().unwrap_or(0);
        let dim = self.dim();
        let mut out: Vec<Matrix> = Vec::with_capacity(count);
        for r in 0..count {
            let mut t = if r <= d {
                num.coeff(d - r)
            } else {
                Matrix::zeros(dim, dim)
            };
            // the coefficient of u^{d-r} in D(u) T(u) collects D_k T^(k - d + r)
            for k in d.saturating_sub(r)..d {
                let c = self.den.coeff(k);
                if !c.is_zero() {
                    t = &t - &out[k + r - d].scale(&c);
                }
            }
            out.push(t);
        }
        out
    }
}

/// The highest vector `v_{nu_1} (x) ... (x) v_{nu_m}` as a basis index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestVector {
    pub monomial: Monomial,
    pub index: usize,
    pub dim: usize,
}

impl HighestVector {
    pub fn coordinates(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[self.index] = Rational::one();
        v
    }
}

pub fn highest_vector(spec: &ModuleSpec) -> HighestVector {
    let n = spec.n();
    let tuples: Vec<Vec<usize>> = spec
        .nu()
        .iter()
        .map(|&d| {
            if d >= 0 {
                (1..=d as usize).collect()
            } else {
                ((n as i64 + d + 1) as usize..=n).collect()
            }
        })
        .collect();
    let monomial = alpha_encode(spec.shape(), &tuples).expect("strictly increasing tuples");
    let basis = spec.basis();
    HighestVector {
        monomial,
        index: basis.position(&monomial).expect("monomial of weight |nu|"),
        dim: basis.dim(),
    }
}

/// `A_i(u)` in closed form: the product over `nu_a < i - n` of
/// `(u - mu_a)/(u - mu_a + 1)` times the product over `nu_a >= i` of
/// `(u - mu_a + 1)/(u - mu_a)`.
pub fn eigen_closed_form(spec: &ModuleSpec, i: usize) -> RatFun {
    let n = spec.n() as i64;
    let i = i as i64;
    let mut acc = RatFun::one();
    for (&d, z) in spec.nu().iter().zip(spec.mu()) {
        if d < i - n {
            acc = &acc * &RatFun::linear_ratio(z, &(z - Rational::one()));
        }
        if d >= i {
            acc = &acc * &RatFun::linear_ratio(&(z - Rational::one()), z);
        }
    }
    acc
}

/// Applies `T_ii(u)` to the highest vector, checks that it is an eigenvector
/// annihilated by every `T_ij(u)`, `i < j`, and that the eigenvalue matches
/// the closed form. Returns the eigenvalue `A_i(u)`.
pub fn eigen_series(action: &ModuleAction, i: usize) -> Result<RatFun> {
    let spec = action.spec();
    let hv = highest_vector(spec);
    let column = |j: usize| -> Vec<Poly> {
        let num = action.num(i, j);
        (0..hv.dim).map(|r| num.entry(r, hv.index)).collect()
    };
    for j in i + 1..=spec.n() {
        if column(j).iter().any(|p| !p.is_zero()) {
            return Err(Error::NotEigenvector {
                i,
                detail: format!("T_{i}{j}(u) does not annihilate the highest vector"),
            });
        }
    }
    let col = column(i);
    if col.iter().enumerate().any(|(r, p)| r != hv.index && !p.is_zero()) {
        return Err(Error::NotEigenvector {
            i,
            detail: "T_ii(u) moves the highest vector off its line".into(),
        });
    }
    let value = RatFun::new(col[hv.index].clone(), action.den().clone())?;
    let expected = eigen_closed_form(spec, i);
    if value != expected {
        return Err(Error::NotEigenvector {
            i,
            detail: format!("eigenvalue {value} differs from the closed form {expected}"),
        });
    }
    Ok(value)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RttReport {
    pub points_per_axis: usize,
    pub relations: usize,
}

/// Minimal number of sample values per axis for [`rtt_check`].
///
/// After clearing denominators every entry of the relation is a polynomial
/// of degree at most `4m + 2` in each of `u` and `v`.
pub fn rtt_min_samples(m: usize) -> usize {
    4 * m + 3
}

/// Verifies `(u - v)[T_ij(u), T_kl(v)] = T_kj(u) T_il(v) - T_kj(v) T_il(u)`
/// on a `samples x samples` grid of rational points avoiding the poles.
///
/// Both sides are multiplied by `D(u) D(v)`, so only numerators are
/// evaluated. Since the cleared relation is polynomial of degree below
/// `samples` in each variable, agreement on the grid is a proof.
pub fn rtt_check(action: &ModuleAction, samples: usize) -> Result<RttReport> {
    let spec = action.spec();
    let m = spec.m();
    if samples < rtt_min_samples(m) {
        return Err(Error::Precondition(format!(
            "need at least {} samples per axis for m = {m}, got {samples}",
            rtt_min_samples(m)
        )));
    }
    let n = spec.n();
    let mut points = Vec::with_capacity(samples);
    let mut k = 0i64;
    while points.len() < samples {
        let c = int(k);
        if !action.den().eval(&c).is_zero() {
            points.push(c);
        }
        k += 1;
    }
    let evaluated: Vec<Vec<Matrix>> = points
        .iter()
        .map(|c| {
            (1..=n)
                .flat_map(|i| (1..=n).map(move |j| (i, j)))
                .map(|(i, j)| action.num(i, j).eval(c))
                .collect()
        })
        .collect();
    let idx = |i: usize, j: usize| (i - 1) * n + (j - 1);
    let mut relations = 0;
    for p in 0..samples {
        for q in p..samples {
            let a = &evaluated[p];
            let b = &evaluated[q];
            // ab[x][y] = A_x B_y, ba[y][x] = B_y A_x
            let ab: Vec<Vec<Matrix>> = a.iter().map(|x| b.iter().map(|y| x * y).collect()).collect();
            let ba: Vec<Vec<Matrix>> = b.iter().map(|y| a.iter().map(|x| y * x).collect()).collect();
            let diff = &points[p] - &points[q];
            for (u_first, diff) in [(true, diff.clone()), (false, -diff)] {
                if !u_first && p == q {
                    continue;
                }
                // uv(x, y) = T_x(u) T_y(v), vu(y, x) = T_y(v) T_x(u)
                let uv = |x: usize, y: usize| if u_first { &ab[x][y] } else { &ba[x][y] };
                let vu = |y: usize, x: usize| if u_first { &ba[y][x] } else { &ab[y][x] };
                for i in 1..=n {
                    for j in 1..=n {
                        for k in 1..=n {
                            for l in 1..=n {
                                let lhs = (uv(idx(i, j), idx(k, l)) - vu(idx(k, l), idx(i, j))).scale(&diff);
                                let rhs = uv(idx(k, j), idx(i, l)) - vu(idx(k, j), idx(i, l));
                                relations += 1;
                                if lhs != rhs {
                                    let (u, v) = if u_first { (p, q) } else { (q, p) };
                                    return Err(Error::RelationViolated {
                                        i,
                                        j,
                                        k,
                                        l,
                                        u: points[u].to_string(),
                                        v: points[v].to_string(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(RttReport {
        points_per_axis: samples,
        relations,
    })
}

/// Index sets of the connected components of the off-diagonal support of
/// a square matrix. Reordering the basis by component makes it block
/// diagonal.
fn components(entries: &[Vec<Poly>]) -> Vec<Vec<usize>> {
    let dim = entries.len();
    let mut parent: Vec<usize> = (0..dim).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (r, row) in entries.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if r != c && !e.is_zero() {
                let (x, y) = (root(&mut parent, r), root(&mut parent, c));
                parent[x] = y;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; dim];
    for x in 0..dim {
        let r = root(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(x);
    }
    groups
}

/// `det(t D - N)` restricted to `idx`, as coefficients in `t` (low to high).
fn block_char_poly(den: &Poly, entries: &[Vec<Poly>], idx: &[usize]) -> Result<Vec<Poly>> {
    let k = idx.len();
    // evaluate at t = 0..=k, then interpolate in t
    let values = (0..=k)
        .map(|t| {
            let td = den.scale(&int(t as i64));
            let rows = idx
                .iter()
                .map(|&r| {
                    idx.iter()
                        .map(|&c| if r == c { &td - &entries[r][c] } else { -&entries[r][c] })
                        .collect()
                })
                .collect();
            poly_det(rows)
        })
        .collect::<Result<Vec<Poly>>>()?;
    let mut coeffs = vec![Poly::zero(); k + 1];
    for (j, value) in values.iter().enumerate() {
        let mut basis = Poly::one();
        let mut scale = Rational::one();
        for l in 0..=k {
            if l != j {
                basis = &basis * &Poly::linear(&int(l as i64));
                scale /= int(j as i64 - l as i64);
            }
        }
        for (p, c) in basis.coeffs().iter().enumerate() {
            coeffs[p] = &coeffs[p] + &value.scale(&(c * &scale));
        }
    }
    Ok(coeffs)
}

fn diagonal_blocks(action: &ModuleAction, i: usize) -> Result<Vec<Vec<Poly>>> {
    let dim = action.dim();
    let num = action.num(i, i);
    let entries: Vec<Vec<Poly>> = (0..dim)
        .map(|r| (0..dim).map(|c| num.entry(r, c)).collect())
        .collect();
    components(&entries)
        .iter()
        .map(|idx| block_char_poly(action.den(), &entries, idx))
        .collect()
}

/// Characteristic polynomial `det(t - T_ii(u))` as coefficients in `t`
/// (low to high) over the rational-function field.
pub fn char_poly(action: &ModuleAction, i: usize) -> Result<Vec<RatFun>> {
    let mut product = vec![Poly::one()];
    for block in diagonal_blocks(action, i)? {
        let mut next = vec![Poly::zero(); product.len() + block.len() - 1];
        for (x, p) in product.iter().enumerate() {
            for (y, q) in block.iter().enumerate() {
                next[x + y] = &next[x + y] + &(p * q);
            }
        }
        product = next;
    }
    let den_pow = action.den().pow(action.dim());
    product
        .into_iter()
        .map(|p| RatFun::new(p, den_pow.clone()))
        .collect()
}

/// Divides `chi(t)` in `Q[u][t]` by `b t - a`, where `g = a / b` in lowest
/// terms; `None` unless the division is exact.
fn divide_root(chi: &[Poly], g: &RatFun) -> Option<Vec<Poly>> {
    let deg = chi.len() - 1;
    if deg == 0 {
        return None;
    }
    let (a, b) = (g.num(), g.den());
    let exact = |p: &Poly| match p.div_rem(b) {
        Ok((q, r)) if r.is_zero() => Some(q),
        _ => None,
    };
    let mut quotient = vec![Poly::zero(); deg];
    quotient[deg - 1] = exact(&chi[deg])?;
    for k in (1..deg).rev() {
        quotient[k - 1] = exact(&(&chi[k] + &(a * &quotient[k])))?;
    }
    (&chi[0] + &(a * &quotient[0])).is_zero().then_some(quotient)
}

/// The candidate eigenvalues `g_{I,J}(u)` with `I` ranging over subsets of
/// the positive factors and `J` over subsets of the negative ones.
pub fn eigen_candidates(spec: &ModuleSpec) -> Vec<RatFun> {
    let factors: Vec<(i64, &Rational)> = spec
        .nu()
        .iter()
        .zip(spec.mu())
        .filter(|(d, _)| **d != 0)
        .map(|(&d, z)| (d, z))
        .collect();
    let mut out: Vec<RatFun> = Vec::new();
    for mask in 0..1u32 << factors.len() {
        let mut g = RatFun::one();
        for (k, (d, z)) in factors.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let f = if *d > 0 {
                    RatFun::linear_ratio(&(*z - Rational::one()), z)
                } else {
                    RatFun::linear_ratio(z, &(*z - Rational::one()))
                };
                g = &g * &f;
            }
        }
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EigenformReport {
    /// Eigenvalues of `T_ii(u)` with multiplicity, for `i = 1..n`.
    pub eigenvalues: Vec<Vec<RatFun>>,
}

/// Factors the characteristic polynomial of every `T_ii(u)` completely into
/// linear factors `t - g_{I,J}(u)`.
pub fn eigenform_check(action: &ModuleAction) -> Result<EigenformReport> {
    let spec = action.spec();
    let candidates = eigen_candidates(spec);
    let mut eigenvalues = Vec::new();
    for i in 1..=spec.n() {
        let mut found = Vec::new();
        for mut chi in diagonal_blocks(action, i)? {
            'strip: while chi.len() > 1 {
                for g in &candidates {
                    if let Some(q) = divide_root(&chi, g) {
                        chi = q;
                        found.push(g.clone());
                        continue 'strip;
                    }
                }
                return Err(Error::NoCandidateFactorization { i });
            }
        }
        eigenvalues.push(found);
    }
    Ok(EigenformReport { eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn lin(a: Rational, b: Rational) -> RatFun {
        RatFun::linear_ratio(&a, &b)
    }

    #[test]
    fn vector_and_covector() {
        let z = rat(1, 3);
        let t12 = factor_action(2, 1, &z, 1, 2).unwrap();
        // column of e_2, row of e_1
        assert_eq!(t12[0][1], RatFun::new(Poly::one(), Poly::linear(&z)).unwrap());
        assert!(t12[1][0].is_zero());

        let t12 = factor_action(2, -1, &z, 1, 2).unwrap();
        let expected = RatFun::new(Poly::constant(int(-1)), Poly::linear(&(&z - int(1)))).unwrap();
        assert_eq!(t12[1][0], expected);
        assert!(t12[0][1].is_zero());
    }

    #[test]
    fn determinantal_factors() {
        let z = int(2);
        for i in 1..=2 {
            for j in 1..=2 {
                let t = factor_action(2, 2, &z, i, j).unwrap();
                let expected = if i == j { lin(&z - int(1), z.clone()) } else { RatFun::zero() };
                assert_eq!(t, vec![vec![expected]]);
                let t = factor_action(2, -2, &z, i, j).unwrap();
                let expected = if i == j { lin(z.clone(), &z - int(1)) } else { RatFun::zero() };
                assert_eq!(t, vec![vec![expected]]);
            }
        }
    }

    #[test]
    fn two_vector_factors() {
        let (z1, z2) = (rat(1, 2), int(3));
        let spec = ModuleSpec::new(2, vec![z1.clone(), z2.clone()], vec![1, 1]).unwrap();
        let action = ModuleAction::new(&spec);
        // basis e1e1, e1e2, e2e1, e2e2; e1 (x) e2 has index 1
        let t11 = action.get(1, 1);
        assert_eq!(t11.entry(1, 1), lin(&z1 - int(1), z1.clone()));
        for r in [0, 2, 3] {
            assert!(t11.entry(r, 1).is_zero());
        }
    }

    #[test]
    fn trivial_factors_are_invisible() {
        let spec = ModuleSpec::with_int_mu(2, &[0, 5], &[1, 0]).unwrap();
        let single = ModuleSpec::with_int_mu(2, &[0], &[1]).unwrap();
        let (a, b) = (ModuleAction::new(&spec), ModuleAction::new(&single));
        for i in 1..=2 {
            for j in 1..=2 {
                assert_eq!(a.get(i, j).entries(), b.get(i, j).entries());
            }
        }
    }

    #[test]
    fn highest_vectors() {
        let hv = highest_vector(&ModuleSpec::with_int_mu(3, &[0], &[-2]).unwrap());
        let spec = ModuleSpec::with_int_mu(3, &[0], &[-2]).unwrap();
        let tuples = crate::grassmann::alpha_decode(spec.shape(), &hv.monomial);
        assert_eq!(tuples, vec![vec![2, 3]]);

        let spec = ModuleSpec::with_int_mu(2, &[0, 0], &[1, -1]).unwrap();
        let hv = highest_vector(&spec);
        assert_eq!(crate::grassmann::alpha_decode(spec.shape(), &hv.monomial), vec![vec![1], vec![2]]);
        assert_eq!(hv.index, 1);
    }

    #[test]
    fn eigenvalues_match_closed_forms() {
        let (m1, m2) = (rat(1, 2), int(-1));
        let spec = ModuleSpec::new(3, vec![m1.clone(), m2.clone()], vec![2, 1]).unwrap();
        let action = ModuleAction::new(&spec);
        let a1 = eigen_series(&action, 1).unwrap();
        assert_eq!(
            a1,
            &lin(&m1 - int(1), m1.clone()) * &lin(&m2 - int(1), m2.clone())
        );
        assert_eq!(eigen_series(&action, 2).unwrap(), lin(&m1 - int(1), m1.clone()));
        assert!(eigen_series(&action, 3).unwrap().is_one());

        let spec = ModuleSpec::new(2, vec![m1.clone()], vec![-2]).unwrap();
        let action = ModuleAction::new(&spec);
        for i in 1..=2 {
            assert_eq!(eigen_series(&action, i).unwrap(), lin(m1.clone(), &m1 - int(1)));
        }
    }

    #[test]
    fn rtt_small() {
        for (mu, nu) in [(&[0, 1][..], &[1, 1][..]), (&[0, 0], &[1, -1]), (&[2, 0], &[-1, 2])] {
            let spec = ModuleSpec::with_int_mu(2, mu, nu).unwrap();
            let action = ModuleAction::new(&spec);
            rtt_check(&action, rtt_min_samples(2)).unwrap();
        }
        let spec = ModuleSpec::with_int_mu(2, &[0], &[1]).unwrap();
        assert!(rtt_check(&ModuleAction::new(&spec), 3).is_err());
    }

    #[test]
    fn rtt_detects_a_broken_action() {
        let spec = ModuleSpec::with_int_mu(2, &[0, 1], &[1, 1]).unwrap();
        let mut action = ModuleAction::new(&spec);
        let bump = PolyMatrix::from_coeffs(4, vec![Matrix::identity(4)]);
        action.nums[1] = action.nums[1].add(&bump);
        assert!(matches!(
            rtt_check(&action, rtt_min_samples(2)),
            Err(Error::RelationViolated { .. })
        ));
    }

    #[test]
    fn eigenforms() {
        let z = rat(1, 2);
        let spec = ModuleSpec::new(2, vec![z.clone()], vec![1]).unwrap();
        let report = eigenform_check(&ModuleAction::new(&spec)).unwrap();
        let mut got = report.eigenvalues[0].clone();
        got.sort_by_key(|g| g.to_string());
        let mut want = vec![RatFun::one(), lin(&z - int(1), z.clone())];
        want.sort_by_key(|g| g.to_string());
        assert_eq!(got, want);

        let spec = ModuleSpec::new(2, vec![z.clone()], vec![-1]).unwrap();
        let report = eigenform_check(&ModuleAction::new(&spec)).unwrap();
        assert!(report.eigenvalues[0].contains(&lin(z.clone(), &z - int(1))));

        let spec = ModuleSpec::with_int_mu(2, &[0, 3], &[1, 1]).unwrap();
        let report = eigenform_check(&ModuleAction::new(&spec)).unwrap();
        assert!(report.eigenvalues.iter().all(|e| e.len() == 4));
    }

    #[test]
    fn laurent_coefficients() {
        let spec = ModuleSpec::new(2, vec![rat(1, 2), int(2)], vec![1, -1]).unwrap();
        let action = ModuleAction::new(&spec);
        let u = int(1000);
        for (i, j) in [(1, 1), (1, 2), (2, 1)] {
            let coeffs = action.laurent(i, j, 12);
            assert_eq!(coeffs[0], if i == j { Matrix::identity(4) } else { Matrix::zeros(4, 4) });
            // compare the truncated expansion with the exact value to high order
            let exact = action.get(i, j).eval(&u).unwrap();
            let mut approx = Matrix::zeros(4, 4);
            let mut pow = Rational::one();
            for c in &coeffs {
                approx = &approx + &c.scale(&pow);
                pow /= &u;
            }
            let err = &exact - &approx;
            let bound = num_traits::pow(rat(1, 10), 30);
            assert!((0..4).all(|r| (0..4).all(|c| num_traits::Signed::abs(err.get(r, c)) < bound)));
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = ModuleSpec::new(3, vec![rat(-1, 2), int(0)], vec![1, -2]).unwrap();
        let json = serde_json::to_string(&spec).unwrap();
        assert_eq!(json, r#"{"n":3,"m":2,"mu":["-1/2","0"],"nu":[1,-2]}"#);
        let back: ModuleSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        assert!(serde_json::from_str::<ModuleSpec>(r#"{"n":1,"m":1,"mu":["0"],"nu":[2]}"#).is_err());
    }
}
