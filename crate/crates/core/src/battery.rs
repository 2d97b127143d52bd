//! Enumerations of small module specs used by the verification suites.

use crate::arith::{int, rat, Rational};
use crate::intertwiner::dominance_violation;
use crate::yangian::ModuleSpec;

/// The shift values `0, 1, -1, 1/2` taken by every `mu_a`.
pub fn battery_mu_values() -> Vec<Rational> {
    vec![int(0), int(1), int(-1), rat(1, 2)]
}

/// All tuples of length `len` with entries from `values`, in lexicographic
/// order of positions.
pub fn tuples<T: Clone>(values: &[T], len: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                values.iter().map(move |v| {
                    let mut t = prefix.clone();
                    t.push(v.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every spec with `n` and `m` in the given ranges, `nu_a` in `[-n, n]` and
/// `mu_a` from [`battery_mu_values`].
pub fn battery(ms: impl IntoIterator<Item = usize> + Clone, ns: impl IntoIterator<Item = usize>) -> Vec<ModuleSpec> {
    let mus = battery_mu_values();
    let mut out = Vec::new();
    for n in ns {
        let range: Vec<i64> = (-(n as i64)..=n as i64).collect();
        for m in ms.clone() {
            for nu in tuples(&range, m) {
                for mu in tuples(&mus, m) {
                    if let Ok(spec) = ModuleSpec::new(n, mu, nu.clone()) {
                        out.push(spec);
                    }
                }
            }
        }
    }
    out
}

/// `true` when `lambda_bar` is dominant, the precondition of the intertwiner.
pub fn is_dominant(spec: &ModuleSpec) -> bool {
    dominance_violation(&spec.lambda_bar()).is_none()
}

/// `true` when `nu` has both a negative and a nonnegative entry.
pub fn is_mixed(spec: &ModuleSpec) -> bool {
    spec.nu().iter().any(|&x| x < 0) && spec.nu().iter().any(|&x| x >= 0)
}
