//! Permutations of `{1, ..., n}` and conjugacy-class bookkeeping.

use num::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::rational::factorial;
use crate::series::Monomial;
use crate::series::VarId;

/// A permutation of `{1, ..., n}`, stored as its image list:
/// `images[i - 1]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    /// Build from an image list. Panics unless the list is a bijection.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            assert!(v >= 1 && v <= n && !seen[v - 1], "not a permutation: {images:?}");
            seen[v - 1] = true;
        }
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// Functional composition: `(a.compose(b))(i) = a(b(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.n()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v - 1] = i + 1;
        }
        Permutation { images }
    }

    /// Cycle lengths in ascending order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lengths = Vec::new();
        for start in 1..=n {
            if seen[start - 1] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i - 1] {
                seen[i - 1] = true;
                len += 1;
                i = self.apply(i);
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }

    /// All `n!` permutations. Intended for small `n` only.
    pub fn all(n: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        if n == 0 {
            return vec![Permutation::identity(0)];
        }
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    /// The full rotation `1 -> 2 -> ... -> n -> 1`.
    pub fn rotation(n: usize) -> Permutation {
        Permutation {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    /// A uniformly random permutation.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<usize> = (1..=n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// A representative permutation with the given cycle lengths, laid out
    /// consecutively on `1..=sum(parts)`.
    pub fn of_cycle_type(parts: &[usize]) -> Permutation {
        let n: usize = parts.iter().sum();
        let mut images: Vec<usize> = (1..=n).collect();
        let mut start = 1;
        for &len in parts {
            for offset in 0..len {
                images[start + offset - 1] = start + (offset + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }
}

/// All partitions of `n`, parts ascending within each partition.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(remaining: usize, min_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in min_part..=remaining {
            prefix.push(part);
            go(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 1, &mut Vec::new(), &mut out);
    out
}

/// Number of permutations of `n` points with the given cycle type:
/// `n!` divided by the centralizer order `prod_i i^(m_i) m_i!`.
pub fn conjugacy_class_size(n: usize, parts: &[usize]) -> BigInt {
    let mut centralizer = BigInt::from(1);
    let mut i = 0;
    while i < parts.len() {
        let len = parts[i];
        let mut mult = 0usize;
        while i < parts.len() && parts[i] == len {
            mult += 1;
            i += 1;
        }
        for _ in 0..mult {
            centralizer *= len;
        }
        centralizer *= factorial(mult);
    }
    factorial(n) / centralizer
}

/// The monomial `prod x_len` over the cycle lengths of a type.
pub fn cycle_type_monomial(parts: &[usize]) -> Monomial {
    Monomial::from_pairs(parts.iter().map(|&len| (VarId::X(len as u32), 1)))
}
