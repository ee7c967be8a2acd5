//! Permutations, Koszul signs and unshuffle enumeration.
//!
//! Permutations are 0-based: `images[i] = σ(i)`. A permutation acts on a word
//! `(x_0, …, x_{n-1})` by reading it as `(x_{σ(0)}, …, x_{σ(n-1)})`.

use crate::error::{Error, Result};
use crate::graded::scalar::{sign, Scalar};

#[inline]
pub(crate) fn odd(d: i32) -> bool {
    d & 1 != 0
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    blocks: Option<Vec<usize>>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::malformed(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        Ok(Permutation {
            images,
            blocks: None,
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
            blocks: None,
        }
    }

    /// Transposition of `i` and `j` in `S_n`.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Permutation {
            images,
            blocks: None,
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Block sizes when this permutation came out of [`unshuffles`].
    pub fn unshuffle_blocks(&self) -> Option<&[usize]> {
        self.blocks.as_deref()
    }

    /// `σ∘τ`, i.e. `i ↦ σ(τ(i))`.
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        assert_eq!(self.len(), tau.len());
        Permutation {
            images: tau.images.iter().map(|&i| self.images[i]).collect(),
            blocks: None,
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.len()];
        for (i, &s) in self.images.iter().enumerate() {
            images[s] = i;
        }
        Permutation {
            images,
            blocks: None,
        }
    }

    /// Reorders `items` as `(items[σ(0)], …)`.
    pub fn permute<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| items[i].clone()).collect()
    }

    /// Parity of the Koszul sign: pairs `a < b` with `σ(a) > σ(b)` where both
    /// entries have odd degree.
    pub fn koszul_odd(&self, degrees: &[i32]) -> bool {
        let mut parity = false;
        for a in 0..self.images.len() {
            let da = degrees[self.images[a]];
            if !odd(da) {
                continue;
            }
            for b in a + 1..self.images.len() {
                if self.images[a] > self.images[b] && odd(degrees[self.images[b]]) {
                    parity = !parity;
                }
            }
        }
        parity
    }
}

/// `ε(σ)` defined by `x_{σ(1)}⊙…⊙x_{σ(n)} = ε(σ) x_1⊙…⊙x_n`.
pub fn koszul_sign(sigma: &Permutation, degrees: &[i32]) -> Result<Scalar> {
    if sigma.len() != degrees.len() {
        return Err(Error::malformed(format!(
            "permutation of {} elements with {} degrees",
            sigma.len(),
            degrees.len()
        )));
    }
    Ok(sign(sigma.koszul_odd(degrees)))
}

/// All `(k_1, …, k_j)`-unshuffles: permutations increasing on each block.
///
/// Enumerated in lexicographic order of the first block's image set, then of
/// the second, and so on, so the output order is reproducible.
pub fn unshuffles(block_sizes: &[usize], arity_cap: usize) -> Result<Vec<Permutation>> {
    if block_sizes.is_empty() {
        return Err(Error::malformed("unshuffles need at least one block"));
    }
    if block_sizes.contains(&0) {
        return Err(Error::malformed("unshuffle blocks must be positive"));
    }
    let n: usize = block_sizes.iter().sum();
    if n > arity_cap {
        return Err(Error::Truncation {
            what: "unshuffle arity",
            needed: n,
            cap: arity_cap,
        });
    }
    let mut out = Vec::new();
    let remaining: Vec<usize> = (0..n).collect();
    let mut prefix = Vec::with_capacity(n);
    enumerate_blocks(block_sizes, &remaining, &mut prefix, &mut |images| {
        out.push(Permutation {
            images: images.to_vec(),
            blocks: Some(block_sizes.to_vec()),
        })
    });
    Ok(out)
}

fn enumerate_blocks(
    sizes: &[usize],
    remaining: &[usize],
    prefix: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    let Some((&k, rest)) = sizes.split_first() else {
        emit(prefix);
        return;
    };
    for_each_combination(remaining.len(), k, |chosen| {
        let mark = prefix.len();
        let mut left = Vec::with_capacity(remaining.len() - k);
        let mut c = 0;
        for (pos, &r) in remaining.iter().enumerate() {
            if c < chosen.len() && chosen[c] == pos {
                prefix.push(r);
                c += 1;
            } else {
                left.push(r);
            }
        }
        enumerate_blocks(rest, &left, prefix, emit);
        prefix.truncate(mark);
    });
}

/// Calls `f` with every `k`-subset of `0..n` as a sorted index list, in
/// lexicographic order.
fn for_each_combination(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        // rightmost slot that can still advance
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Koszul parity of moving the positions in `mask` (kept in order) in front of
/// the others, for a word whose letters have the given degrees.
#[inline]
pub(crate) fn front_mask_odd(degrees: &[i32], mask: u32) -> bool {
    let mut parity = false;
    let mut odd_skipped = 0u32;
    for (p, &d) in degrees.iter().enumerate() {
        let chosen = mask & (1 << p) != 0;
        if chosen {
            if odd(d) && odd_skipped & 1 == 1 {
                parity = !parity;
            }
        } else if odd(d) {
            odd_skipped += 1;
        }
    }
    parity
}

/// Proper nonempty submasks of `mask`, paired with their complements.
pub(crate) fn split_masks(n: usize) -> impl Iterator<Item = (u32, u32)> {
    let full: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    (1..full).map(move |m| (m, full & !m))
}
