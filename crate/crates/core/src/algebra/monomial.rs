use smallvec::SmallVec;

use super::CurveLetter;
use crate::combinatorics::Perm;

pub(crate) type Exps = SmallVec<[u16; 4]>;
pub(crate) type Letters = SmallVec<[CurveLetter; 4]>;

/// `x_1 ⊗ … ⊗ x_n · ω^a · t^b`.
///
/// Field order matters: the derived `Ord` is the canonical term order (total
/// degree, then t-exponents, then ω-exponents, then letters, all
/// lexicographic). `t_exp` never carries trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    degree: u32,
    t_exp: Exps,
    omega_exp: Exps,
    letters: Letters,
}

impl Monomial {
    pub fn new(letters: &[CurveLetter], omega_exp: &[u16], t_exp: &[u16]) -> Monomial {
        assert_eq!(letters.len(), omega_exp.len(), "letters and ω exponents differ in length");
        Self::from_parts(letters.into(), omega_exp.into(), t_exp.into())
    }

    pub(crate) fn from_parts(letters: Letters, omega_exp: Exps, mut t_exp: Exps) -> Monomial {
        while t_exp.last() == Some(&0) {
            t_exp.pop();
        }
        let degree = letters.iter().map(|l| l.degree()).sum::<u32>()
            + 2 * omega_exp.iter().map(|&e| e as u32).sum::<u32>()
            + 2 * t_exp.iter().map(|&e| e as u32).sum::<u32>();
        Monomial {
            degree,
            t_exp,
            omega_exp,
            letters,
        }
    }

    pub fn unit(factors: usize) -> Monomial {
        Self::from_parts(
            SmallVec::from_elem(CurveLetter::Unit, factors),
            SmallVec::from_elem(0, factors),
            SmallVec::new(),
        )
    }

    pub fn letters(&self) -> &[CurveLetter] {
        &self.letters
    }

    pub fn omega_exp(&self) -> &[u16] {
        &self.omega_exp
    }

    /// Exponents of `t_0, t_1, …` without trailing zeros.
    pub fn t_exp(&self) -> &[u16] {
        &self.t_exp
    }

    /// Cohomological degree.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn letter_degree(&self) -> u32 {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    pub fn omega_degree(&self) -> u32 {
        self.omega_exp.iter().map(|&e| e as u32).sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.t_exp.iter().map(|&e| e as u32).sum()
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }

    /// The `H*(C^n)` part alone.
    pub fn letters_only(&self) -> Monomial {
        Self::from_parts(
            self.letters.clone(),
            SmallVec::from_elem(0, self.letters.len()),
            SmallVec::new(),
        )
    }

    pub(crate) fn with_omega(&self, omega_exp: Exps) -> Monomial {
        Self::from_parts(self.letters.clone(), omega_exp, self.t_exp.clone())
    }

    /// Product with the Koszul sign `(-1)^{Σ_{i<j} |y_i||x_j|}`. `None` when a
    /// factorwise letter product vanishes; otherwise the product and whether
    /// its sign is negative.
    pub fn mul(&self, other: &Monomial) -> Option<(Monomial, bool)> {
        let n = self.letters.len();
        debug_assert_eq!(n, other.letters.len());
        let mut negative = false;
        let mut odd_x_after = false;
        let mut letters = Letters::with_capacity(n);
        // walk right to left so `odd_x_after` counts odd x_j with j > i
        for i in (0..n).rev() {
            let (x, y) = (self.letters[i], other.letters[i]);
            if y.is_odd() && odd_x_after {
                negative = !negative;
            }
            if x.is_odd() {
                odd_x_after = !odd_x_after;
            }
            let (z, neg) = x.mul(y)?;
            negative ^= neg;
            letters.push(z);
        }
        letters.reverse();
        let omega_exp = self
            .omega_exp
            .iter()
            .zip(&other.omega_exp)
            .map(|(a, b)| a + b)
            .collect();
        let (long, short) = if self.t_exp.len() >= other.t_exp.len() {
            (&self.t_exp, &other.t_exp)
        } else {
            (&other.t_exp, &self.t_exp)
        };
        let mut t_exp = long.clone();
        for (a, b) in t_exp.iter_mut().zip(short.iter()) {
            *a += b;
        }
        Some((Self::from_parts(letters, omega_exp, t_exp), negative))
    }

    /// Moves the letter in factor `p` to factor `σ(p)`; the sign counts pairs
    /// of odd letters whose relative order is reversed. ω-exponents follow the
    /// letters when `move_omega` is set and stay in place otherwise.
    pub fn permuted(&self, sigma: &Perm, move_omega: bool) -> (Monomial, bool) {
        let n = self.letters.len();
        assert_eq!(sigma.len(), n, "permutation size does not match factor count");
        let mut letters: Letters = SmallVec::from_elem(CurveLetter::Unit, n);
        let mut omega_exp = if move_omega {
            SmallVec::from_elem(0, n)
        } else {
            self.omega_exp.clone()
        };
        for p in 0..n {
            let q = sigma.image(p);
            letters[q] = self.letters[p];
            if move_omega {
                omega_exp[q] = self.omega_exp[p];
            }
        }
        let mut negative = false;
        for p in 0..n {
            if !self.letters[p].is_odd() {
                continue;
            }
            for q in p + 1..n {
                if self.letters[q].is_odd() && sigma.image(p) > sigma.image(q) {
                    negative = !negative;
                }
            }
        }
        (
            Self::from_parts(letters, omega_exp, self.t_exp.clone()),
            negative,
        )
    }

    /// Pads with unit letters and zero ω-exponents up to `factors`.
    pub(crate) fn padded(&self, factors: usize) -> Monomial {
        let mut letters = self.letters.clone();
        letters.resize(factors, CurveLetter::Unit);
        let mut omega_exp = self.omega_exp.clone();
        omega_exp.resize(factors, 0);
        Self::from_parts(letters, omega_exp, self.t_exp.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::CurveLetter::*;
    use super::*;

    #[test]
    fn koszul_sign_on_crossing_odd_letters() {
        // (1⊗α)(β⊗1): β passes α
        let x = Monomial::new(&[Unit, Alpha(1)], &[0, 0], &[]);
        let y = Monomial::new(&[Beta(1), Unit], &[0, 0], &[]);
        let (m, neg) = x.mul(&y).unwrap();
        assert_eq!(m.letters(), &[Beta(1), Alpha(1)]);
        assert!(neg);
        // reversed order has no crossing
        let (m2, neg2) = y.mul(&x).unwrap();
        assert_eq!(m2, m);
        assert!(!neg2);
    }

    #[test]
    fn degree_counts_all_parts() {
        let m = Monomial::new(&[Point, Alpha(1)], &[1, 0], &[0, 2, 0]);
        assert_eq!(m.degree(), 2 + 1 + 2 + 4);
        assert_eq!(m.t_exp(), &[0, 2]);
    }

    #[test]
    fn canonical_order_is_degree_first() {
        let low = Monomial::new(&[Point, Point], &[0, 0], &[]);
        let high = Monomial::new(&[Unit, Unit], &[0, 3], &[]);
        assert!(low < high);
        let a = Monomial::new(&[Unit, Unit], &[0, 1], &[]);
        let b = Monomial::new(&[Unit, Unit], &[1, 0], &[]);
        assert!(a < b);
    }
}
