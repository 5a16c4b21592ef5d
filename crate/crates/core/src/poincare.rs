//! Poincaré polynomials and truncated series of symmetric products, filt and
//! quot schemes.

use serde::Serialize;

use crate::algebra::{CurveLetter, RingContext, RingElement};
use crate::combinatorics::{dec_of_weights, enumerate_b, enumerate_dec, Perm, WeightVector};
use crate::quot::{curve_monomials, pullback_classes, span_rank, DegreeRank};
use crate::xi::XiEngine;
use crate::Result;

/// Polynomial in `t`, coefficient of `t^k` at index `k`.
pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn add_into(acc: &mut Poly, p: &[i64], shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (k, c) in p.iter().enumerate() {
        acc[k + shift] += c;
    }
}

/// Product truncated at degree `cap` (untruncated when `None`).
pub fn poly_mul(a: &[i64], b: &[i64], cap: Option<usize>) -> Poly {
    let len = a.len() + b.len() - 1;
    let len = cap.map_or(len, |c| len.min(c + 1));
    let mut out = vec![0; len];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if i + j < len {
                out[i + j] += x * y;
            }
        }
    }
    trim(out)
}

fn poly_pow(a: &[i64], k: u32, cap: Option<usize>) -> Poly {
    let mut out = vec![1];
    for _ in 0..k {
        out = poly_mul(&out, a, cap);
    }
    out
}

fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// `P(C^(m))`: the `u^m` coefficient of `(1+ut)^{2g} / ((1−u)(1−ut²))`.
pub fn sym_prod_poincare(genus: u32, m: u32) -> Poly {
    let mut out = vec![0; 2 * m as usize + 1];
    for k in 0..=m.min(2 * genus) {
        // remaining u-power m − k split between 1/(1−u) and 1/(1−ut²)
        for b in 0..=(m - k) {
            out[(k + 2 * b) as usize] += binomial(2 * genus, k);
        }
    }
    trim(out)
}

/// `P(H*(C)^{⊗m})^{S_m}` by counting graded-symmetric monomials on the basis
/// of `H*(C)`: even letters with repetition, odd letters at most once.
pub fn sym_prod_by_counting(genus: u32, m: u32) -> Poly {
    // dp over letters: poly in (count, degree)
    let basis = CurveLetter::basis(genus);
    let m = m as usize;
    let mut table = vec![vec![0i64; 2 * m + 1]; m + 1];
    table[0][0] = 1;
    for letter in basis {
        let d = letter.degree() as usize;
        let max_mult = if letter.is_odd() { 1 } else { m };
        let mut next = vec![vec![0i64; 2 * m + 1]; m + 1];
        for c in 0..=m {
            for deg in 0..=2 * m {
                let x = table[c][deg];
                if x == 0 {
                    continue;
                }
                for k in 0..=max_mult {
                    if c + k > m || deg + k * d > 2 * m {
                        break;
                    }
                    next[c + k][deg + k * d] += x;
                }
            }
        }
        table = next;
    }
    trim(table[m].clone())
}

/// Degreewise dimension of the `S_m`-invariants of `H*(C)^{⊗m}`, by averaging
/// tensor monomials over `S_m` (with Koszul signs) and taking ranks.
pub fn sym_prod_by_projector(genus: u32, m: usize) -> Result<Poly> {
    if m == 0 {
        return Ok(vec![1]);
    }
    let ctx = RingContext::new(genus, m);
    let group = Perm::all(m);
    let averages: Vec<RingElement> = curve_monomials(&ctx, |_| true)
        .into_iter()
        .map(|x| x.project_invariant(&group))
        .filter(|x| !x.is_zero())
        .collect();
    let out = (0..=2 * m as u32).map(|d| span_rank(&averages, d).map(|k| k as i64)).collect::<Result<Poly>>()?;
    Ok(trim(out))
}

/// `P(Quot(r, l)) = Σ_{Dec(l,r)} t^{2 co} Π_α P(C^(l_α))`, summed one index
/// `α` at a time.
pub fn quot_poincare(genus: u32, r: u32, l: u32) -> Poly {
    let l = l as usize;
    // by_length[k]: partial sum over the parts chosen so far with total k
    let mut by_length: Vec<Poly> = vec![vec![0]; l + 1];
    by_length[0] = vec![1];
    for alpha in 0..r as usize {
        let mut next: Vec<Poly> = vec![vec![0]; l + 1];
        for (k, acc) in by_length.iter().enumerate() {
            for x in 0..=l - k {
                let p = poly_mul(acc, &sym_prod_poincare(genus, x as u32), None);
                add_into(&mut next[k + x], &p, 2 * alpha * x);
            }
        }
        by_length = next.into_iter().map(trim).collect();
    }
    by_length.swap_remove(l)
}

/// Direct sum over every decomposition; small inputs only.
pub fn quot_poincare_by_decompositions(genus: u32, r: u32, l: u32) -> Poly {
    let mut out = vec![0];
    for dec in enumerate_dec(l, r) {
        let co: u32 = dec.iter().enumerate().map(|(a, &x)| a as u32 * x).sum();
        let mut p = vec![1];
        for &x in &dec {
            p = poly_mul(&p, &sym_prod_poincare(genus, x), None);
        }
        add_into(&mut out, &p, 2 * co as usize);
    }
    trim(out)
}

/// Coefficients `[s^l][t^k]` of `Π_{h<r} (1+st^{2h+1})^{b1} / ((1−t^{2h}s)(1−t^{2h+2}s))`
/// for `l ≤ max_s`, `k ≤ max_t`. `r = None` keeps every factor that can reach
/// `t^{max_t}`.
pub fn quot_product_formula(genus: u32, r: Option<u32>, max_s: usize, max_t: usize) -> Vec<Poly> {
    let b1 = 2 * genus;
    let hs = r.unwrap_or(max_t as u32 / 2 + 1);
    let mut acc: Vec<Poly> = vec![vec![0; max_t + 1]; max_s + 1];
    acc[0][0] = 1;
    let mul_by = |acc: &Vec<Poly>, factor: &Vec<Poly>| -> Vec<Poly> {
        let mut out = vec![vec![0; max_t + 1]; max_s + 1];
        for (i, a) in acc.iter().enumerate() {
            for (j, f) in factor.iter().enumerate() {
                if i + j > max_s {
                    break;
                }
                for (p, x) in a.iter().enumerate() {
                    if *x == 0 {
                        continue;
                    }
                    for (q, y) in f.iter().enumerate() {
                        if p + q <= max_t {
                            out[i + j][p + q] += x * y;
                        }
                    }
                }
            }
        }
        out
    };
    // 1/(1 − t^e s) = Σ_k s^k t^{ek}
    let geometric = |e: usize| -> Vec<Poly> {
        (0..=max_s)
            .map(|k| {
                let mut p = vec![0; max_t + 1];
                if e * k <= max_t {
                    p[e * k] = 1;
                }
                p
            })
            .collect()
    };
    for h in 0..hs as usize {
        let mut odd = vec![vec![0; max_t + 1]; max_s + 1];
        odd[0][0] = 1;
        if 2 * h < max_t && max_s >= 1 {
            odd[1][2 * h + 1] = 1;
        }
        for _ in 0..b1 {
            acc = mul_by(&acc, &odd);
        }
        acc = mul_by(&acc, &geometric(2 * h));
        acc = mul_by(&acc, &geometric(2 * h + 2));
    }
    acc
}

fn truncated(p: &[i64], max_t: usize) -> Poly {
    (0..=max_t).map(|k| p.get(k).copied().unwrap_or(0)).collect()
}

/// Differences between `P(Quot(r, l))` and the product formula, for each
/// `l ≤ max_s`, up to `t^{max_t}`. `r = None` is the infinite-rank case.
pub fn quot_series_check(genus: u32, r: Option<u32>, max_s: usize, max_t: usize) -> Vec<Poly> {
    let formula = quot_product_formula(genus, r, max_s, max_t);
    // parts at α > max_t/2 contribute only above t^{max_t}
    let r_eff = r.unwrap_or(max_t as u32 / 2 + 1);
    (0..=max_s)
        .map(|l| {
            let direct = truncated(&quot_poincare(genus, r_eff, l as u32), max_t);
            direct.iter().zip(&formula[l]).map(|(a, b)| a - b).collect()
        })
        .collect()
}

/// `Σ_{v∈[0,r−1]^n} t^{2 co(v)} (1+2gt+t²)^n`.
pub fn filt_poincare(genus: u32, r: u32, n: usize) -> Poly {
    let curve = vec![1, 2 * genus as i64, 1];
    let fibre = poly_pow(&curve, n as u32, None);
    let mut out = vec![0];
    for v in WeightVector::all_below(n, r) {
        add_into(&mut out, &fibre, 2 * v.co() as usize);
    }
    trim(out)
}

/// `filt_poincare` minus `(1+2gt+t²)^n ((1−t^{2r})/(1−t²))^n`.
pub fn filt_presentation_check(genus: u32, r: u32, n: usize) -> Poly {
    let curve = vec![1, 2 * genus as i64, 1];
    let mut quotient = vec![0; 2 * r as usize - 1];
    for k in 0..r as usize {
        quotient[2 * k] = 1;
    }
    let closed = poly_mul(&poly_pow(&curve, n as u32, None), &poly_pow(&quotient, n as u32, None), None);
    let direct = filt_poincare(genus, r, n);
    let len = closed.len().max(direct.len());
    trim((0..len)
        .map(|k| direct.get(k).copied().unwrap_or(0) - closed.get(k).copied().unwrap_or(0))
        .collect())
}

/// Outcome of the infinite-limit comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitReport {
    /// Stabilized `t^k` coefficient of `P(Quot(r, r))`.
    pub stabilized: Poly,
    /// `(1+t)^{b1}/(1−t²) Π_{h≥1} (1+t^{2h+1})^{b1}/((1−t^{2h})(1−t^{2h+2}))`.
    pub product: Poly,
    /// `P(C^(∞)) · Π_h P(Sym H*(C)[−2h])`.
    pub tensor_model: Poly,
    /// Every `t^k` coefficient is constant for `r > k`.
    pub stabilizes: bool,
}

impl LimitReport {
    pub fn ok(&self) -> bool {
        self.stabilizes && self.stabilized == self.product && self.product == self.tensor_model
    }
}

fn series_inverse_one_minus(e: usize, max_t: usize) -> Poly {
    (0..=max_t).map(|k| if e > 0 && k % e == 0 { 1 } else { 0 }).collect()
}

pub fn infinite_limits_check(genus: u32, max_t: usize) -> LimitReport {
    let b1 = 2 * genus;
    let cap = Some(max_t);
    let r_max = max_t as u32 + 3;
    let quot: Vec<Poly> = (1..=r_max).map(|r| truncated(&quot_poincare(genus, r, r), max_t)).collect();
    let stabilizes = (0..=max_t).all(|k| {
        let first = quot[k][k];
        quot[k..].iter().all(|p| p[k] == first)
    });
    let stabilized: Poly = (0..=max_t).map(|k| quot[k][k]).collect();

    let mut product = poly_pow(&[1, 1], b1, cap);
    product = poly_mul(&product, &series_inverse_one_minus(2, max_t), cap);
    for h in 1..=max_t / 2 + 1 {
        let mut odd = vec![0; 2 * h + 2];
        odd[0] = 1;
        odd[2 * h + 1] = 1;
        product = poly_mul(&product, &poly_pow(&odd, b1, cap), cap);
        product = poly_mul(&product, &series_inverse_one_minus(2 * h, max_t), cap);
        product = poly_mul(&product, &series_inverse_one_minus(2 * h + 2, max_t), cap);
    }

    // P(C^(m)) is constant in degrees ≤ m; m = max_t suffices
    let mut tensor = truncated(&sym_prod_poincare(genus, max_t as u32 + 1), max_t);
    for h in 1..=max_t / 2 + 1 {
        for letter in CurveLetter::basis(genus) {
            let d = 2 * h + letter.degree() as usize;
            let factor = if letter.is_odd() {
                let mut p = vec![0; d + 1];
                p[0] = 1;
                p[d] = 1;
                p
            } else {
                series_inverse_one_minus(d, max_t)
            };
            tensor = poly_mul(&tensor, &factor, cap);
        }
    }
    LimitReport {
        stabilized,
        product: truncated(&product, max_t),
        tensor_model: truncated(&tensor, max_t),
        stabilizes,
    }
}

/// Per degree: `Σ_{v∈B(n,r)} t^{2co(v)} P(F^Q(v))` against the rank of the
/// pullback classes `Ψ*ξ^Q(v; a)`, `v ∈ B(n, r)`.
pub fn decomposition_dimension_check(engine: &XiEngine, r: u32, max_degree: u32) -> Result<Vec<DegreeRank>> {
    let ctx = engine.ctx();
    let genus = ctx.genus();
    let n = ctx.factors();
    let mut expected = vec![0];
    for v in enumerate_b(n, Some(r), None)? {
        let dec = dec_of_weights(std::slice::from_ref(&v), r)?;
        let mut p = vec![1];
        for part in &dec.parts {
            p = poly_mul(&p, &sym_prod_poincare(genus, part[0]), None);
        }
        add_into(&mut expected, &p, 2 * v.co() as usize);
    }
    let classes = pullback_classes(engine, Some(r), max_degree)?;
    (0..=max_degree)
        .map(|d| {
            Ok(DegreeRank {
                degree: d,
                span_rank: span_rank(&classes, d)?,
                expected: expected.get(d as usize).copied().unwrap_or(0) as usize,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RingContext;

    #[test]
    fn symmetric_products() {
        assert_eq!(sym_prod_poincare(0, 3), vec![1, 0, 1, 0, 1, 0, 1]);
        assert_eq!(sym_prod_poincare(1, 1), vec![1, 2, 1]);
        assert_eq!(sym_prod_poincare(2, 0), vec![1]);
        for g in 0..=2 {
            for m in 0..=4 {
                assert_eq!(sym_prod_poincare(g, m), sym_prod_by_counting(g, m), "g={g} m={m}");
                if m <= 3 {
                    assert_eq!(sym_prod_poincare(g, m), sym_prod_by_projector(g, m as usize).unwrap());
                }
            }
        }
    }

    #[test]
    fn quot_examples() {
        for l in 0..4 {
            assert_eq!(quot_poincare(1, 1, l), sym_prod_poincare(1, l));
        }
        assert_eq!(quot_poincare(0, 2, 1), vec![1, 0, 2, 0, 1]);
        assert_eq!(quot_poincare(2, 3, 0), vec![1]);
        for (g, r, l) in [(0, 3, 4), (1, 2, 3), (2, 4, 2), (1, 1, 0)] {
            assert_eq!(quot_poincare(g, r, l), quot_poincare_by_decompositions(g, r, l));
        }
        for g in 0..=1 {
            for r in [Some(1), Some(2), None] {
                for residual in quot_series_check(g, r, 3, 8) {
                    assert!(residual.iter().all(|&c| c == 0), "g={g} r={r:?}");
                }
            }
        }
    }

    #[test]
    fn filt_examples() {
        assert_eq!(filt_poincare(0, 2, 1), vec![1, 0, 2, 0, 1]);
        assert_eq!(filt_poincare(1, 1, 2), poly_pow(&[1, 2, 1], 2, None));
        assert_eq!(filt_poincare(1, 3, 0), vec![1]);
        assert_eq!(filt_presentation_check(1, 3, 2), vec![0]);
    }

    #[test]
    fn infinite_limit_small() {
        let report = infinite_limits_check(0, 6);
        assert!(report.ok(), "{report:?}");
        assert_eq!(report.stabilized[0], 1);
        let g1 = infinite_limits_check(1, 4);
        assert!(g1.ok(), "{g1:?}");
        assert_eq!(g1.stabilized[1], 2);
    }

    #[test]
    fn decomposition_dimension_small() {
        let ctx = RingContext::new(0, 2);
        let e = XiEngine::new(&ctx);
        let report = decomposition_dimension_check(&e, 2, 6).unwrap();
        assert!(report.iter().all(DegreeRank::ok), "{report:?}");
        assert_eq!(report[0].expected, 1);
        let one = RingContext::new(1, 1);
        let report = decomposition_dimension_check(&XiEngine::new(&one), 3, 6).unwrap();
        assert!(report.iter().all(DegreeRank::ok), "{report:?}");
    }
}
