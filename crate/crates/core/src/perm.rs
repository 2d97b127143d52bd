//! Permutations of {1..m}, stored zero-based.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(m: usize) -> Self {
        Perm((0..m).collect())
    }

    /// The longest element: a -> m + 1 - a.
    pub fn longest(m: usize) -> Self {
        Perm((0..m).rev().collect())
    }

    /// The adjacent transposition of `a` and `a + 1` (one-based `a`).
    pub fn simple(m: usize, a: usize) -> Self {
        assert!(a >= 1 && a < m, "simple reflection index out of range");
        let mut p = Perm::identity(m);
        p.0.swap(a - 1, a);
        p
    }

    /// Builds from one-based images `[sigma(1), ..., sigma(m)]`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        let mut zero_based = Vec::with_capacity(m);
        for &x in images {
            if x == 0 || x > m || seen[x - 1] {
                return Err(Error::Precondition(format!("{images:?} is not a permutation")));
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Perm(zero_based))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Image of a zero-based index.
    pub fn at(&self, a: usize) -> usize {
        self.0[a]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (a, &b) in self.0.iter().enumerate() {
            inv[b] = a;
        }
        Perm(inv)
    }

    /// Number of inversions, i.e. the Coxeter length.
    pub fn length(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .flat_map(|i| (i + 1..p.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| p[i] > p[j])
            .count()
    }

    /// Weight action `sigma(w)_a = w_{sigma^{-1}(a)}`.
    pub fn act_on<T: Clone>(&self, w: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (0..w.len()).map(|a| w[inv.0[a]].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn longest_has_full_length() {
        assert_eq!(Perm::longest(4).length(), 6);
        assert_eq!(Perm::longest(4).act_on(&[1, 2, 3, 4]), vec![4, 3, 2, 1]);
    }

    #[test]
    fn compose_and_invert() {
        let s1 = Perm::simple(3, 1);
        let s2 = Perm::simple(3, 2);
        let p = s1.compose(&s2).compose(&s1);
        assert_eq!(p, Perm::longest(3));
        assert_eq!(p.compose(&p.inverse()), Perm::identity(3));
        assert!(Perm::from_images(&[1, 1]).is_err());
    }
}
