//! The Fock action of Peak on Peak*, the Heisenberg double `Peak* # Peak`,
//! the filtration `(Peak*)^{(n)}` and a degreewise freeness certificate over Ω.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::combinatorics::{compositions_of, partitions_of, peak_sets_in, Composition, PeakSet};
use crate::error::{Error, Result};
use crate::field::rat;
use crate::hopf::{convert, coproduct, graded_rank, peak_pairing, product, q_gen, Basis, FreeElement, Index, TensorElement};
use crate::limits;

/// Largest degree handled by the filtration and freeness routines.
pub const MAX_DEGREE: usize = 8;

fn check_degree(d: usize) -> Result<()> {
    limits::check("Peak* degree", d, MAX_DEGREE)
}

fn require(x: &FreeElement, algebra: crate::hopf::Algebra, what: &str) -> Result<()> {
    if x.algebra() != algebra {
        return Err(Error::Mismatch(format!("{what} must lie in {algebra}, got {}", x.algebra())));
    }
    Ok(())
}

fn require_peak(a: &FreeElement, what: &str) -> Result<()> {
    if a.basis() == Basis::Q {
        return Ok(());
    }
    require(a, crate::hopf::Algebra::Peak, what)
}

/// `a.x = Σ x₁ [a, x₂]` over `Δ(x) = Σ x₁ ⊗ x₂`; the result is in the basis of `x`.
pub fn fock_action(a: &FreeElement, x: &FreeElement) -> Result<FreeElement> {
    require_peak(a, "the acting element")?;
    require(x, crate::hopf::Algebra::PeakDual, "the Fock vector")?;
    let a = convert(a, Basis::Xi)?;
    let delta = coproduct(x)?;
    let right = delta.bases().1;
    delta.contract_right(|j| peak_pairing(&a, &FreeElement::basis_element(right, *j)))
}

/// `N_α = ϑ(M_α)`.
pub fn n_element(alpha: &Composition) -> FreeElement {
    FreeElement::basis_element(Basis::N, Index::Comp(*alpha))
}

/// `q_n = K_{∅_n}` inside Peak*.
pub fn q_dual(n: usize) -> FreeElement {
    if n == 0 {
        FreeElement::one(Basis::K)
    } else {
        FreeElement::basis_element(Basis::K, Index::Peak(PeakSet::empty(n)))
    }
}

/// `q_λ = q_{λ₁} ⋯ q_{λ_r}` in the `K` basis.
pub fn q_monomial(parts: &[usize]) -> Result<FreeElement> {
    let mut acc = FreeElement::one(Basis::K);
    for &p in parts {
        acc = product(&acc, &q_dual(p))?;
    }
    convert(&acc, Basis::K)
}

/// Basis `{q_λ : λ ⊢ k, all parts odd}` of `Ω_k`.
pub fn omega_basis(k: usize) -> Result<Vec<FreeElement>> {
    if k == 0 {
        return Ok(vec![FreeElement::one(Basis::K)]);
    }
    partitions_of(k).iter().filter(|p| p.parts().iter().all(|x| x % 2 == 1)).map(|p| q_monomial(&p.parts())).collect()
}

/// Number of peak sets in `[n]` (`|𝒫_n|`).
pub fn peak_count(n: usize) -> usize {
    if n == 0 {
        1
    } else {
        peak_sets_in(n).len()
    }
}

/// Spanning set of `(Peak*)^{(level)}` in one degree: `q_λ N_β` with `ℓ(β) ≤ level`.
pub fn filtration_component(level: usize, degree: usize) -> Result<Vec<FreeElement>> {
    check_degree(degree)?;
    let mut out = Vec::new();
    for b in 0..=degree {
        let nbs: Vec<FreeElement> = if b == 0 {
            vec![FreeElement::one(Basis::K)]
        } else {
            compositions_of(b)?
                .into_iter()
                .filter(|c| c.len() <= level)
                .map(|c| convert(&n_element(&c), Basis::K))
                .collect::<Result<_>>()?
        };
        if nbs.is_empty() {
            continue;
        }
        for w in omega_basis(degree - b)? {
            for nb in &nbs {
                out.push(convert(&product(&w, nb)?, Basis::K)?);
            }
        }
    }
    Ok(out)
}

/// Rank of a family in one degree.
pub fn span_rank(elements: &[FreeElement], degree: usize) -> Result<usize> {
    if elements.is_empty() {
        return Ok(0);
    }
    graded_rank(elements, degree)
}

/// Whether `x` lies in the span of `family` (degree `d`).
pub fn in_span(family: &[FreeElement], x: &FreeElement, degree: usize) -> Result<bool> {
    if x.terms().all(|(_, c)| c.is_zero()) {
        return Ok(true);
    }
    let base = span_rank(family, degree)?;
    let mut ext = family.to_vec();
    ext.push(convert(x, Basis::K)?);
    Ok(span_rank(&ext, degree)? == base)
}

/// Report on the filtration in one degree.
#[derive(Clone, Debug)]
pub struct FiltrationReport {
    pub degree: usize,
    /// Rank of each level `0..=degree`.
    pub ranks: Vec<usize>,
    pub omega_dim: usize,
    pub full_dim: usize,
    /// Each level is closed under multiplication by `q_k` and under `Q_m`-lowering.
    pub closed: bool,
}

impl FiltrationReport {
    pub fn passes(&self) -> bool {
        self.ranks.first() == Some(&self.omega_dim)
            && self.ranks.last() == Some(&self.full_dim)
            && self.ranks.windows(2).all(|w| w[0] <= w[1])
            && self.closed
    }
}

pub fn filtration_report(degree: usize) -> Result<FiltrationReport> {
    check_degree(degree)?;
    let mut ranks = Vec::new();
    let mut closed = true;
    for level in 0..=degree {
        let span = filtration_component(level, degree)?;
        ranks.push(span_rank(&span, degree)?);
        for m in 1..=degree {
            let lower = filtration_component(level, degree - m)?;
            for v in &span {
                closed &= in_span(&lower, &fock_action(&q_gen(m), v)?, degree - m)?;
            }
        }
        if degree < MAX_DEGREE {
            let upper = filtration_component(level, degree + 1)?;
            for v in &span {
                closed &= in_span(&upper, &product(v, &q_dual(1))?, degree + 1)?;
            }
        }
    }
    Ok(FiltrationReport {
        degree,
        ranks,
        omega_dim: omega_basis(degree)?.len(),
        full_dim: peak_count(degree),
        closed,
    })
}

/// `Q_m . N_α` lies in level `ℓ(α) − 1`, and equals `Σ_{β·γ=α} [Q_m, N_γ] N_β`.
pub fn lowering_check(alpha: &Composition, m: usize) -> Result<bool> {
    let d = alpha.size();
    check_degree(d)?;
    if m == 0 || m > d {
        return Err(Error::Mismatch("lowering degree must lie in 1..=|α|".into()));
    }
    lowering_holds(alpha, m, &filtration_component(alpha.len() - 1, d - m)?)
}

/// As [`lowering_check`], against a precomputed spanning set of level `ℓ(α) − 1` in degree `|α| − m`.
pub fn lowering_holds(alpha: &Composition, m: usize, level: &[FreeElement]) -> Result<bool> {
    let d = alpha.size();
    let got = fock_action(&q_gen(m), &n_element(alpha))?;
    let mut rule = FreeElement::zero(Basis::N);
    for (beta, gamma) in alpha.deconcatenations() {
        let c = peak_pairing(&q_gen(m), &n_element(&gamma))?;
        if !c.is_zero() {
            rule.add_term(Index::Comp(beta), &c);
        }
    }
    Ok(convert(&got, Basis::K)? == convert(&rule, Basis::K)? && in_span(level, &got, d - m)?)
}

/// `Q_m.(xy) = Σ_k (Q_k.x)(Q_{m−k}.y)`.
pub fn module_algebra_check(m: usize, x: &FreeElement, y: &FreeElement) -> Result<bool> {
    let lhs = convert(&fock_action(&q_gen(m), &product(x, y)?)?, Basis::K)?;
    let mut rhs = FreeElement::zero(Basis::K);
    for k in 0..=m {
        let a = fock_action(&q_gen(k), x)?;
        let b = fock_action(&q_gen(m - k), y)?;
        rhs = rhs.add(&convert(&product(&convert(&a, Basis::K)?, &convert(&b, Basis::K)?)?, Basis::K)?)?;
    }
    Ok(lhs == rhs)
}

/// A seeded random integral element of `Peak*_d` in the `K` basis.
pub fn random_dual(rng: &mut ChaCha8Rng, d: usize) -> FreeElement {
    if d == 0 {
        return FreeElement::one(Basis::K).scale(&rat(rng.gen_range(1..=5)));
    }
    FreeElement::from_terms(Basis::K, peak_sets_in(d).into_iter().map(|p| (Index::Peak(p), rat(rng.gen_range(-3..=3)))))
}

/// A seeded random integral element of `Peak_d` in the `Ξ` basis.
pub fn random_peak(rng: &mut ChaCha8Rng, d: usize) -> FreeElement {
    if d == 0 {
        return FreeElement::one(Basis::Xi).scale(&rat(rng.gen_range(1..=5)));
    }
    FreeElement::from_terms(Basis::Xi, peak_sets_in(d).into_iter().map(|p| (Index::Peak(p), rat(rng.gen_range(-3..=3)))))
}

/// Seeded module-algebra checks with `deg x, deg y ≤ max_degree`.
pub fn module_algebra_random(max_degree: usize, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let dx = rng.gen_range(0..=max_degree);
        let dy = rng.gen_range(0..=max_degree);
        if dx + dy == 0 {
            continue;
        }
        let m = rng.gen_range(1..=dx + dy);
        let (x, y) = (random_dual(&mut rng, dx), random_dual(&mut rng, dy));
        if !module_algebra_check(m, &x, &y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// An element `Σ c · (x # a)` of the Heisenberg double, `x ∈ Peak*` (`K`), `a ∈ Peak` (`Ξ`).
#[derive(Clone, Debug, PartialEq)]
pub struct DoubleElement(pub TensorElement);

impl DoubleElement {
    pub fn pure(x: &FreeElement, a: &FreeElement) -> Result<DoubleElement> {
        require(x, crate::hopf::Algebra::PeakDual, "left factor")?;
        require_peak(a, "right factor")?;
        Ok(DoubleElement(TensorElement::pure(&convert(x, Basis::K)?, &convert(a, Basis::Xi)?)))
    }

    pub fn one() -> DoubleElement {
        DoubleElement(TensorElement::pure(&FreeElement::one(Basis::K), &FreeElement::one(Basis::Xi)))
    }

    pub fn add(&self, other: &DoubleElement) -> Result<DoubleElement> {
        Ok(DoubleElement(self.0.add(&other.0)?))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .0
            .terms()
            .map(|((i, j), c)| {
                json!({
                    "left": FreeElement::symbol(Basis::K, i),
                    "right": FreeElement::symbol(Basis::Xi, j),
                    "coeff": crate::field::rational_to_string(c),
                })
            })
            .collect();
        Value::Array(terms)
    }
}

/// `(x # a)(y # b) = Σ x (a₁.y) # a₂ b`.
pub fn double_multiply(u: &DoubleElement, v: &DoubleElement) -> Result<DoubleElement> {
    let mut out = TensorElement::zero(Basis::K, Basis::Xi);
    for ((i, j), c) in u.0.terms() {
        let x = FreeElement::basis_element(Basis::K, *i);
        let a = FreeElement::basis_element(Basis::Xi, *j);
        let da = coproduct(&a)?;
        for ((k, l), d) in v.0.terms() {
            let y = FreeElement::basis_element(Basis::K, *k);
            let b = FreeElement::basis_element(Basis::Xi, *l);
            for ((p, q), e) in da.terms() {
                let a1 = FreeElement::basis_element(Basis::Xi, *p);
                let a2 = FreeElement::basis_element(Basis::Xi, *q);
                let left = convert(&product(&x, &convert(&fock_action(&a1, &y)?, Basis::K)?)?, Basis::K)?;
                if left.terms().all(|(_, z)| z.is_zero()) {
                    continue;
                }
                let right = convert(&product(&a2, &b)?, Basis::Xi)?;
                let coeff = c * d * e;
                out = out.add(&TensorElement::pure(&left, &right).scale(&coeff))?;
            }
        }
    }
    Ok(DoubleElement(out))
}

/// `(x # a).y = x (a.y)` on the Fock space.
pub fn double_act(u: &DoubleElement, y: &FreeElement) -> Result<FreeElement> {
    let mut out = FreeElement::zero(Basis::K);
    for ((i, j), c) in u.0.terms() {
        let x = FreeElement::basis_element(Basis::K, *i);
        let a = FreeElement::basis_element(Basis::Xi, *j);
        let ay = convert(&fock_action(&a, y)?, Basis::K)?;
        out = out.add(&convert(&product(&x, &ay)?, Basis::K)?.scale(c))?;
    }
    Ok(out)
}

/// Seeded associativity and Fock-module checks on pure tensors of total degree `≤ max_degree`.
pub fn double_random_checks(max_degree: usize, trials: usize, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pick = |rng: &mut ChaCha8Rng, budget: usize| -> Result<(DoubleElement, usize)> {
        let dx = rng.gen_range(0..=budget.min(2));
        let da = rng.gen_range(0..=(budget - dx).min(2));
        Ok((DoubleElement::pure(&random_dual(rng, dx), &random_peak(rng, da))?, dx + da))
    };
    for _ in 0..trials {
        let (u, du) = pick(&mut rng, max_degree)?;
        let (v, dv) = pick(&mut rng, max_degree - du)?;
        let (w, _) = pick(&mut rng, max_degree - du - dv)?;
        let left = double_multiply(&double_multiply(&u, &v)?, &w)?;
        let right = double_multiply(&u, &double_multiply(&v, &w)?)?;
        if left != right {
            return Ok(false);
        }
        let y = random_dual(&mut rng, 2);
        if double_act(&double_multiply(&u, &v)?, &y)? != double_act(&u, &double_act(&v, &y)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Greedy free generators of Peak* over Ω with their per-degree certificates.
#[derive(Clone, Debug)]
pub struct FreenessCertificate {
    pub max_degree: usize,
    /// `(degree, generator)` in order of selection.
    pub generators: Vec<(usize, FreeElement)>,
    /// Per degree: (number of products `g · q_λ`, their rank, `|𝒫_d|`).
    pub ranks: Vec<(usize, usize, usize)>,
    /// Per degree: `Σ_e g(e) dim Ω_{d−e}` against `|𝒫_d|`.
    pub hilbert: Vec<(usize, usize)>,
}

impl FreenessCertificate {
    pub fn passes(&self) -> bool {
        self.ranks.iter().all(|&(count, rank, full)| count == rank && rank == full)
            && self.hilbert.iter().all(|(a, b)| a == b)
    }

    pub fn generator_counts(&self) -> Vec<usize> {
        (0..=self.max_degree).map(|d| self.generators.iter().filter(|(e, _)| *e == d).count()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "max_degree": self.max_degree,
            "generators": self.generators.iter().map(|(d, g)| json!({"degree": d, "element": g.to_json()})).collect::<Vec<_>>(),
            "ranks": self.ranks.iter().enumerate().map(|(d, (c, r, f))| json!({"degree": d, "products": c, "rank": r, "dim": f})).collect::<Vec<_>>(),
        })
    }
}

pub fn free_basis_over_omega(max_degree: usize) -> Result<FreenessCertificate> {
    check_degree(max_degree)?;
    let omega: Vec<Vec<FreeElement>> = (0..=max_degree).map(omega_basis).collect::<Result<_>>()?;
    let mut generators: Vec<(usize, FreeElement)> = Vec::new();
    let mut ranks = Vec::new();
    for d in 0..=max_degree {
        let mut products = Vec::new();
        for (e, g) in &generators {
            for w in &omega[d - e] {
                products.push(convert(&product(g, w)?, Basis::K)?);
            }
        }
        let mut rank = span_rank(&products, d)?;
        let full = peak_count(d);
        let candidates: Vec<FreeElement> = if d == 0 {
            vec![FreeElement::one(Basis::K)]
        } else {
            peak_sets_in(d).into_iter().map(|p| FreeElement::basis_element(Basis::K, Index::Peak(p))).collect()
        };
        for c in candidates {
            if rank == full {
                break;
            }
            products.push(c.clone());
            let r = span_rank(&products, d)?;
            if r > rank {
                rank = r;
                generators.push((d, c));
            } else {
                products.pop();
            }
        }
        ranks.push((products.len(), rank, full));
    }
    let counts: Vec<usize> = (0..=max_degree).map(|d| generators.iter().filter(|(e, _)| *e == d).count()).collect();
    let hilbert = (0..=max_degree)
        .map(|n| ((0..=n).map(|e| counts[e] * omega[n - e].len()).sum(), peak_count(n)))
        .collect();
    Ok(FreenessCertificate { max_degree, generators, ranks, hilbert })
}

/// Degreewise dimensions of the `𝔥_proj`-submodule of Fock space generated by `1`.
pub fn vacuum_orbit_dims(max_degree: usize) -> Result<Vec<usize>> {
    check_degree(max_degree)?;
    let mut layers: Vec<Vec<FreeElement>> = vec![Vec::new(); max_degree + 1];
    layers[0].push(FreeElement::one(Basis::K));
    let mut changed = true;
    while changed {
        changed = false;
        for d in 0..=max_degree {
            let current = layers[d].clone();
            for v in &current {
                for k in 1..=max_degree - d {
                    let w = convert(&product(v, &q_dual(k))?, Basis::K)?;
                    if !in_span(&layers[d + k], &w, d + k)? {
                        layers[d + k].push(w);
                        changed = true;
                    }
                }
                for m in 1..=d {
                    let w = convert(&fock_action(&q_gen(m), v)?, Basis::K)?;
                    if !in_span(&layers[d - m], &w, d - m)? {
                        layers[d - m].push(w);
                        changed = true;
                    }
                }
            }
        }
    }
    (0..=max_degree).map(|d| span_rank(&layers[d], d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn comp(p: &[usize]) -> Composition {
        Composition::of(p)
    }

    #[test]
    fn fock_examples() {
        let r = fock_action(&q_gen(1), &n_element(&comp(&[1]))).unwrap();
        assert_eq!(r, FreeElement::one(Basis::N).scale(&rat(2)));
        let r = fock_action(&q_gen(2), &FreeElement::one(Basis::K)).unwrap();
        assert!(r.is_zero());
        let r = fock_action(&q_gen(1), &n_element(&comp(&[1, 1]))).unwrap();
        assert_eq!(r, n_element(&comp(&[1])).scale(&rat(2)));
    }

    #[test]
    fn double_examples() {
        let a = DoubleElement::pure(&FreeElement::one(Basis::K), &q_gen(1)).unwrap();
        let n1 = convert(&n_element(&comp(&[1])), Basis::K).unwrap();
        let b = DoubleElement::pure(&n1, &FreeElement::one(Basis::Xi)).unwrap();
        let got = double_multiply(&a, &b).unwrap();
        let want = DoubleElement::one()
            .0
            .scale(&rat(2))
            .add(&DoubleElement::pure(&n1, &q_gen(1)).unwrap().0)
            .unwrap();
        assert_eq!(got.0, want);
        let x = DoubleElement::pure(&n1, &FreeElement::one(Basis::Xi)).unwrap();
        let xx = double_multiply(&x, &x).unwrap();
        let sq = convert(&product(&n1, &n1).unwrap(), Basis::K).unwrap();
        assert_eq!(xx, DoubleElement::pure(&sq, &FreeElement::one(Basis::Xi)).unwrap());
    }

    #[test]
    fn filtration_examples() {
        assert_eq!(span_rank(&filtration_component(0, 3).unwrap(), 3).unwrap(), 2);
        assert_eq!(span_rank(&filtration_component(0, 1).unwrap(), 1).unwrap(), 1);
        assert_eq!(span_rank(&filtration_component(4, 4).unwrap(), 4).unwrap(), 3);
        assert!(filtration_report(3).unwrap().passes());
    }

    #[test]
    fn lowering_small() {
        for p in [&[1][..], &[2, 1], &[1, 1, 2]] {
            for m in 1..=comp(p).size() {
                assert!(lowering_check(&comp(p), m).unwrap());
            }
        }
    }

    #[test]
    fn freeness_small() {
        let c = free_basis_over_omega(4).unwrap();
        assert!(c.passes());
        assert_eq!(c.generators[0], (0, FreeElement::one(Basis::K)));
        let counts = c.generator_counts();
        let omega = [1, 1, 1, 2, 2];
        let peaks = [1, 1, 1, 2, 3];
        for n in 0..=4 {
            assert_eq!((0..=n).map(|e| counts[e] * omega[n - e]).sum::<usize>(), peaks[n]);
        }
    }

    #[test]
    fn module_algebra_small() {
        assert!(module_algebra_random(3, 6, 7).unwrap());
    }

    #[test]
    fn double_random_small() {
        assert!(double_random_checks(3, 3, 11).unwrap());
    }

    #[test]
    fn vacuum_small() {
        assert_eq!(vacuum_orbit_dims(4).unwrap(), vec![1, 1, 1, 2, 2]);
    }
}
