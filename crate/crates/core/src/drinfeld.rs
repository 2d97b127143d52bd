//! Drinfeld data of irreducible highest weight modules and their
//! realization as images of intertwiners.
//!
//! An irreducible rational module is determined by monic polynomials
//! `P_1, ..., P_{n-1}` and a rational function `Q_n = Qn_num / Qn_den` with
//! `A_i / A_{i+1} = P_i(u+1)/P_i(u)` and `A_n = Q_n(u+1)/Q_n(u)`. The module
//! is polynomial exactly when `Qn_den = 1`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::rational::frac_part;
use crate::arith::{int, Poly, RatFun, Rational};
use crate::error::{Error, Result};
use crate::yangian::{eigen_series, ModuleAction, ModuleSpec};

/// `P_1, ..., P_{n-1}` and `Q_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DrinfeldData {
    p: Vec<Poly>,
    qn_num: Poly,
    qn_den: Poly,
}

impl DrinfeldData {
    pub fn new(p: Vec<Poly>, qn_num: Poly, qn_den: Poly) -> Result<Self> {
        if let Some(bad) = p.iter().chain([&qn_num, &qn_den]).find(|q| !q.is_monic()) {
            return Err(Error::InvalidSpec(format!("{bad} is not monic")));
        }
        if !qn_num.gcd(&qn_den).is_one() {
            return Err(Error::CommonZeroes(format!("{qn_num} and {qn_den}")));
        }
        Ok(DrinfeldData { p, qn_num, qn_den })
    }

    /// Data of the trivial module of `Y(gl_n)`.
    pub fn trivial(n: usize) -> Self {
        DrinfeldData {
            p: vec![Poly::one(); n - 1],
            qn_num: Poly::one(),
            qn_den: Poly::one(),
        }
    }

    pub fn n(&self) -> usize {
        self.p.len() + 1
    }

    pub fn p(&self) -> &[Poly] {
        &self.p
    }

    pub fn qn_num(&self) -> &Poly {
        &self.qn_num
    }

    pub fn qn_den(&self) -> &Poly {
        &self.qn_den
    }

    pub fn qn(&self) -> RatFun {
        RatFun::new(self.qn_num.clone(), self.qn_den.clone()).expect("monic denominator")
    }

    pub fn is_trivial(&self) -> bool {
        self.p.iter().all(|p| p.is_one()) && self.qn_num.is_one() && self.qn_den.is_one()
    }
}

#[derive(Serialize, Deserialize)]
struct RawQn {
    num: Poly,
    den: Poly,
}

#[derive(Serialize, Deserialize)]
struct RawData {
    #[serde(rename = "P")]
    p: Vec<Poly>,
    #[serde(rename = "Qn")]
    qn: RawQn,
}

impl Serialize for DrinfeldData {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RawData {
            p: self.p.clone(),
            qn: RawQn {
                num: self.qn_num.clone(),
                den: self.qn_den.clone(),
            },
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DrinfeldData {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = RawData::deserialize(deserializer)?;
        DrinfeldData::new(raw.p, raw.qn.num, raw.qn.den).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Polynomial,
    Rational,
}

pub fn classify_kind(data: &DrinfeldData) -> Kind {
    if data.qn_den.is_one() {
        Kind::Polynomial
    } else {
        Kind::Rational
    }
}

/// A multiset of pairs `(nu_a, mu_a)`, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet {
    pairs: Vec<(i64, Rational)>,
}

impl PairSet {
    pub fn new(mut pairs: Vec<(i64, Rational)>) -> Self {
        pairs.sort();
        PairSet { pairs }
    }

    pub fn of_spec(spec: &ModuleSpec) -> Self {
        PairSet::new(spec.nu().iter().copied().zip(spec.mu().iter().cloned()).collect())
    }

    pub fn pairs(&self) -> &[(i64, Rational)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

impl Serialize for PairSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<(i64, String)> = self.pairs.iter().map(|(d, z)| (*d, z.to_string())).collect();
        raw.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PairSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<(i64, String)>::deserialize(deserializer)?;
        let pairs = raw
            .into_iter()
            .map(|(d, z)| crate::arith::parse_rational(&z).map(|z| (d, z)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(PairSet::new(pairs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftMode {
    Polynomial,
    Rational,
}

/// Solves `Q(u+1)/Q(u) = R(u)` for a monic polynomial or a ratio of coprime
/// monic polynomials `Q = (num, den)`.
///
/// If `Q = prod (u - w)^{e_w}` then the order of `R` at `x` is
/// `f(x) = e_{x+1} - e_x`, so `e_x = -sum_{k>=0} f(x + k)` along each chain
/// of roots differing by integers, and every chain must sum to zero.
pub fn solve_shift_quotient(r: &RatFun, mode: ShiftMode) -> Result<(Poly, Poly)> {
    if r.num().degree() != r.den().degree() || !r.num().is_monic() {
        return Err(Error::NoSolution(format!("{r} does not tend to 1")));
    }
    let mut order: BTreeMap<Rational, i64> = BTreeMap::new();
    for x in r.num().factor_linear()? {
        *order.entry(x).or_default() += 1;
    }
    for x in r.den().factor_linear()? {
        *order.entry(x).or_default() -= 1;
    }
    let mut chains: BTreeMap<Rational, Vec<Rational>> = BTreeMap::new();
    for x in order.keys() {
        chains.entry(frac_part(x)).or_default().push(x.clone());
    }
    let mut num_roots = Vec::new();
    let mut den_roots = Vec::new();
    for (key, chain) in chains {
        let total: i64 = chain.iter().map(|x| order[x]).sum();
        if total != 0 {
            return Err(Error::NoSolution(format!(
                "roots of {r} in the class {key} + Z do not telescope"
            )));
        }
        let low = chain.first().expect("nonempty chain").clone();
        let high = chain.last().expect("nonempty chain") + Rational::one();
        let mut tail = 0i64;
        let mut x = high;
        while x >= low {
            tail += order.get(&x).copied().unwrap_or(0);
            let e = -tail;
            let roots = if e > 0 { &mut num_roots } else { &mut den_roots };
            for _ in 0..e.abs() {
                roots.push(x.clone());
            }
            x -= Rational::one();
        }
    }
    if mode == ShiftMode::Polynomial && !den_roots.is_empty() {
        return Err(Error::NoSolution(format!("{r} needs a rational solution")));
    }
    Ok((Poly::from_roots(&num_roots), Poly::from_roots(&den_roots)))
}

/// Drinfeld data read off `(nu, mu)`: `P_i` collects `u - mu_a` over
/// `nu_a = i` or `nu_a = i - n`, and `Q_n` has numerator over `nu_a = n` and
/// denominator over `nu_a < 0`.
pub fn closed_form_data(spec: &ModuleSpec) -> DrinfeldData {
    let n = spec.n() as i64;
    let roots = |pred: &dyn Fn(i64) -> bool| -> Vec<Rational> {
        spec.nu()
            .iter()
            .zip(spec.mu())
            .filter(|(d, _)| pred(**d))
            .map(|(_, z)| z.clone())
            .collect()
    };
    let p = (1..n)
        .map(|i| Poly::from_roots(&roots(&|d| d == i || d == i - n)))
        .collect();
    let q = RatFun::new(
        Poly::from_roots(&roots(&|d| d == n)),
        Poly::from_roots(&roots(&|d| d < 0)),
    )
    .expect("monic denominator");
    DrinfeldData {
        p,
        qn_num: q.num().clone(),
        qn_den: q.den().clone(),
    }
}

/// Drinfeld data recovered from the eigenvalues of the diagonal series on
/// the highest vector.
pub fn data_from_eigen_series(action: &ModuleAction) -> Result<DrinfeldData> {
    let n = action.spec().n();
    let a: Vec<RatFun> = (1..=n).map(|i| eigen_series(action, i)).collect::<Result<_>>()?;
    let p = (0..n - 1)
        .map(|i| {
            let ratio = a[i].div(&a[i + 1])?;
            solve_shift_quotient(&ratio, ShiftMode::Polynomial).map(|(q, _)| q)
        })
        .collect::<Result<Vec<_>>>()?;
    let (qn_num, qn_den) = solve_shift_quotient(&a[n - 1], ShiftMode::Rational)?;
    DrinfeldData::new(p, qn_num, qn_den)
}

/// Drinfeld data of the irreducible module attached to `spec`, computed from
/// the closed forms and from the eigenvalue series; the two must agree.
pub fn data_of_module(spec: &ModuleSpec) -> Result<DrinfeldData> {
    let closed = closed_form_data(spec);
    let from_series = data_from_eigen_series(&ModuleAction::new(spec))?;
    if closed != from_series {
        return Err(Error::CheckFailed(format!(
            "closed form {} differs from eigenvalue route {}",
            serde_json::to_string(&closed).unwrap_or_default(),
            serde_json::to_string(&from_series).unwrap_or_default()
        )));
    }
    Ok(closed)
}

/// The pairs `(i, z)` over roots `z` of `P_i`, `(n, z)` over roots of
/// `Qn_num` and `(-n, z)` over roots of `Qn_den`.
pub fn pairs_of_data(data: &DrinfeldData) -> Result<PairSet> {
    let n = data.n() as i64;
    let mut pairs = Vec::new();
    for (i, p) in data.p.iter().enumerate() {
        for z in p.factor_linear()? {
            pairs.push((i as i64 + 1, z));
        }
    }
    for z in data.qn_num.factor_linear()? {
        pairs.push((n, z));
    }
    for z in data.qn_den.factor_linear()? {
        pairs.push((-n, z));
    }
    Ok(PairSet::new(pairs))
}

/// Orders the pairs so that `lambda_bar` is dominant: by the class of
/// `lambda_bar_a` modulo Z, then `lambda_bar_a` descending, then `mu_a`
/// ascending.
pub fn spec_of_pairs(pairs: &PairSet, n: usize) -> Result<ModuleSpec> {
    if pairs.is_empty() {
        return ModuleSpec::new(n, vec![Rational::zero()], vec![0]);
    }
    let mut keyed: Vec<(Rational, Rational, Rational, i64)> = pairs
        .pairs
        .iter()
        .map(|(d, z)| {
            let bar = if *d >= 0 { *d } else { n as i64 + d };
            let lb = z + int(bar);
            (frac_part(&lb), -lb, z.clone(), *d)
        })
        .collect();
    keyed.sort();
    let mu = keyed.iter().map(|k| k.2.clone()).collect();
    let nu = keyed.iter().map(|k| k.3).collect();
    ModuleSpec::new(n, mu, nu)
}

/// A module with the given Drinfeld data.
pub fn realize(data: &DrinfeldData) -> Result<ModuleSpec> {
    if !data.qn_num.gcd(&data.qn_den).is_one() {
        return Err(Error::CommonZeroes(format!("{} and {}", data.qn_num, data.qn_den)));
    }
    spec_of_pairs(&pairs_of_data(data)?, data.n())
}

/// Candidate merges: indices of a pair `(d, z)`, `d > 0`, and a pair
/// `(-n, z)`.
fn merges(pairs: &PairSet, n: usize) -> Vec<(usize, usize)> {
    let n = n as i64;
    let mut out = Vec::new();
    for (x, (d, z)) in pairs.pairs.iter().enumerate() {
        if *d <= 0 {
            continue;
        }
        if let Some(y) = pairs.pairs.iter().position(|(e, w)| *e == -n && w == z) {
            out.push((x, y));
        }
    }
    out
}

fn merge(pairs: &PairSet, x: usize, y: usize, n: usize) -> PairSet {
    let (d, z) = pairs.pairs[x].clone();
    let mut rest: Vec<(i64, Rational)> = pairs
        .pairs
        .iter()
        .enumerate()
        .filter(|(k, _)| *k != x && *k != y)
        .map(|(_, p)| p.clone())
        .collect();
    rest.push((d - n as i64, z));
    PairSet::new(rest)
}

/// Replaces coexisting `(d, z)`, `d > 0`, and `(-n, z)` by `(d - n, z)`
/// until no such pairs remain, always merging the first available pair.
pub fn reduce_minimal(pairs: &PairSet, n: usize) -> PairSet {
    let mut current = pairs.clone();
    while let Some(&(x, y)) = merges(&current, n).first() {
        current = merge(&current, x, y, n);
    }
    current
}

/// Every fully reduced set reachable by some order of merges.
pub fn all_reductions(pairs: &PairSet, n: usize) -> BTreeSet<PairSet> {
    fn walk(p: &PairSet, n: usize, seen: &mut BTreeSet<PairSet>, out: &mut BTreeSet<PairSet>) {
        if !seen.insert(p.clone()) {
            return;
        }
        let options = merges(p, n);
        if options.is_empty() {
            out.insert(p.clone());
        }
        for (x, y) in options {
            walk(&merge(p, x, y, n), n, seen, out);
        }
    }
    let mut out = BTreeSet::new();
    walk(pairs, n, &mut BTreeSet::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn rf(num: &[i64], den: &[i64]) -> RatFun {
        RatFun::new(Poly::from_ints(num), Poly::from_ints(den)).unwrap()
    }

    /// `Q(u+1)/Q(u)` computed directly, the oracle for the solver.
    fn shift_ratio(num: &Poly, den: &Poly) -> RatFun {
        let q = RatFun::new(num.clone(), den.clone()).unwrap();
        q.shift(&int(1)).div(&q).unwrap()
    }

    #[test]
    fn shift_quotients() {
        let (q, d) = solve_shift_quotient(&rf(&[1, 1], &[0, 1]), ShiftMode::Polynomial).unwrap();
        assert_eq!((q, d), (Poly::u(), Poly::one()));

        let r = rf(&[2, 1], &[0, 1]);
        let (q, _) = solve_shift_quotient(&r, ShiftMode::Polynomial).unwrap();
        assert_eq!(q, Poly::from_ints(&[0, 1, 1]));
        assert_eq!(shift_ratio(&q, &Poly::one()), r);

        let r = rf(&[0, 1], &[1, 1]);
        assert!(matches!(
            solve_shift_quotient(&r, ShiftMode::Polynomial),
            Err(Error::NoSolution(_))
        ));
        let (q, d) = solve_shift_quotient(&r, ShiftMode::Rational).unwrap();
        assert_eq!((q.clone(), d.clone()), (Poly::one(), Poly::u()));
        assert_eq!(shift_ratio(&q, &d), r);

        // (u + 1/2)/u has no telescoping chain
        let r = RatFun::new(Poly::linear(&rat(-1, 2)), Poly::u()).unwrap();
        assert!(solve_shift_quotient(&r, ShiftMode::Rational).is_err());
    }

    #[test]
    fn shift_quotient_round_trips() {
        let roots = [int(0), int(0), int(3), rat(1, 2), rat(-5, 2), rat(1, 3)];
        for mask in 0..1u32 << roots.len() {
            let chosen: Vec<Rational> = (0..roots.len())
                .filter(|k| mask >> k & 1 == 1)
                .map(|k| roots[k].clone())
                .collect();
            let (num_roots, den_roots): (Vec<_>, Vec<_>) =
                chosen.iter().cloned().enumerate().partition(|(k, _)| k % 3 != 2);
            let num = Poly::from_roots(num_roots.iter().map(|p| &p.1));
            let den = Poly::from_roots(den_roots.iter().map(|p| &p.1));
            let q = RatFun::new(num, den).unwrap();
            let r = shift_ratio(q.num(), q.den());
            let (n2, d2) = solve_shift_quotient(&r, ShiftMode::Rational).unwrap();
            assert_eq!((&n2, &d2), (q.num(), q.den()));
        }
    }

    #[test]
    fn module_data() {
        let spec = ModuleSpec::with_int_mu(2, &[0, -1], &[2, 1]).unwrap();
        let data = data_of_module(&spec).unwrap();
        assert_eq!(data.p(), &[Poly::from_ints(&[1, 1])]);
        assert_eq!(data.qn(), RatFun::from_poly(Poly::u()));

        let spec = ModuleSpec::with_int_mu(2, &[0], &[-2]).unwrap();
        let data = data_of_module(&spec).unwrap();
        assert!(data.p()[0].is_one());
        assert_eq!(data.qn(), rf(&[1], &[0, 1]));
        assert_eq!(classify_kind(&data), Kind::Rational);

        let spec = ModuleSpec::with_int_mu(3, &[4, 1], &[0, 0]).unwrap();
        assert!(data_of_module(&spec).unwrap().is_trivial());
    }

    #[test]
    fn realizations() {
        let data = DrinfeldData::new(vec![Poly::u()], Poly::one(), Poly::one()).unwrap();
        let spec = realize(&data).unwrap();
        assert_eq!(spec, ModuleSpec::with_int_mu(2, &[0], &[1]).unwrap());
        assert_eq!(data_of_module(&spec).unwrap(), data);

        let data = DrinfeldData::new(vec![Poly::one()], Poly::one(), Poly::u()).unwrap();
        let spec = realize(&data).unwrap();
        assert_eq!(spec, ModuleSpec::with_int_mu(2, &[0], &[-2]).unwrap());

        let spec = realize(&DrinfeldData::trivial(3)).unwrap();
        assert_eq!(spec, ModuleSpec::with_int_mu(3, &[0], &[0]).unwrap());

        assert!(matches!(
            DrinfeldData::new(vec![Poly::one()], Poly::u(), Poly::u()),
            Err(Error::CommonZeroes(_))
        ));
    }

    #[test]
    fn reductions() {
        let n = 2;
        let p = PairSet::new(vec![(1, int(0)), (-2, int(0))]);
        assert_eq!(reduce_minimal(&p, n), PairSet::new(vec![(-1, int(0))]));

        let p = PairSet::new(vec![(1, int(0)), (-2, int(1))]);
        assert_eq!(reduce_minimal(&p, n), p);

        let p = PairSet::new(vec![(1, int(0)), (2, int(0)), (-2, int(0)), (-2, int(0))]);
        let all = all_reductions(&p, n);
        assert!(all.iter().all(|q| q.len() == 2));
        assert!(all.contains(&PairSet::new(vec![(-1, int(0)), (0, int(0))])));
        assert_eq!(reduce_minimal(&p, n).len(), 2);
    }

    #[test]
    fn json_formats() {
        let data = DrinfeldData::new(vec![Poly::linear(&int(-1))], Poly::u(), Poly::one()).unwrap();
        let json = serde_json::to_string(&data).unwrap();
        assert_eq!(json, r#"{"P":[["1","1"]],"Qn":{"num":["0","1"],"den":["1"]}}"#);
        assert_eq!(serde_json::from_str::<DrinfeldData>(&json).unwrap(), data);

        let pairs = PairSet::new(vec![(-2, rat(1, 2)), (1, int(0))]);
        let json = serde_json::to_string(&pairs).unwrap();
        assert_eq!(json, r#"[[-2,"1/2"],[1,"0"]]"#);
        assert_eq!(serde_json::from_str::<PairSet>(&json).unwrap(), pairs);
    }
}
