use std::fmt;

/// Permutation of `{0, …, n-1}` stored by images.
///
/// Acts on the left: on sequences `(σx)_{σ(p)} = x_p`, so `(στ)x = σ(τx)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm {
            images: (0..n).collect(),
        }
    }

    /// Checks that `images` is a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Perm> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Perm { images })
    }

    /// Swap of `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Perm {
        let mut p = Self::identity(n);
        p.images.swap(i, j);
        p
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, p: usize) -> usize {
        self.images[p]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i == p)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.len(), other.len());
        Perm {
            images: other.images.iter().map(|&p| self.images[p]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.len()];
        for (p, &q) in self.images.iter().enumerate() {
            images[q] = p;
        }
        Perm { images }
    }

    /// `(σx)_{σ(p)} = x_p`.
    pub fn apply<T: Clone>(&self, x: &[T]) -> Vec<T> {
        assert_eq!(x.len(), self.len());
        let mut out = x.to_vec();
        for (p, item) in x.iter().enumerate() {
            out[self.images[p]] = item.clone();
        }
        out
    }

    /// All of `S_n` in lexicographic order of image lists.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        let mut used = vec![false; n];
        fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm { images: cur.clone() });
                return;
            }
            for i in 0..n {
                if !used[i] {
                    used[i] = true;
                    cur.push(i);
                    go(n, cur, used, out);
                    cur.pop();
                    used[i] = false;
                }
            }
        }
        go(n, &mut cur, &mut used, &mut out);
        out
    }

    /// `S_{l_1} × … × S_{l_h}` acting on consecutive blocks.
    pub fn young_subgroup(composition: &[usize]) -> Vec<Perm> {
        let n: usize = composition.iter().sum();
        let mut out = vec![Perm::identity(n)];
        let mut offset = 0;
        for &size in composition {
            let block = Perm::all(size);
            let mut next = Vec::with_capacity(out.len() * block.len());
            for base in &out {
                for b in &block {
                    let mut images = base.images.clone();
                    for (k, &q) in b.images.iter().enumerate() {
                        images[offset + k] = offset + q;
                    }
                    next.push(Perm { images });
                }
            }
            out = next;
            offset += size;
        }
        out.sort();
        out
    }

    /// Permutations fixing `v` under the left action.
    pub fn stabilizer<T: Clone + PartialEq>(v: &[T]) -> Vec<Perm> {
        Perm::all(v.len())
            .into_iter()
            .filter(|s| s.apply(v) == v)
            .collect()
    }

    /// Adjacent transpositions, which generate `S_n`.
    pub fn adjacent_transpositions(n: usize) -> Vec<Perm> {
        (1..n).map(|i| Perm::transposition(n, i - 1, i)).collect()
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", p + 1)?;
        }
        f.write_str("]")
    }
}
