//! Verification suites producing JSON claim reports.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::combinatorics::{compositions_of, format_set, peak_sets_in, strict_partition_count, Composition};
use crate::error::{Error, Result};
use crate::field::{rat, Field, GaussianRational};
use crate::grothendieck as gr;
use crate::hclifford::{self as hc, AlgebraElement, BasisKey, Morphism};
use crate::heisenberg as hs;
use crate::hopf::{self, convert, Basis, FreeElement, Index};
use crate::supermodules as sm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Verified,
    Failed,
    SkippedResource,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Failed => "failed",
            Status::SkippedResource => "skipped-resource",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One checked claim instance.
#[derive(Clone, Debug)]
pub struct Report {
    pub claim: String,
    pub params: Value,
    pub status: Status,
    pub witness: Value,
}

impl Report {
    fn new(claim: &str, params: Value, ok: bool, witness: Value) -> Report {
        Report { claim: claim.into(), params, status: if ok { Status::Verified } else { Status::Failed }, witness }
    }

    fn from_result(claim: &str, params: Value, r: Result<(bool, Value)>) -> Report {
        match r {
            Ok((ok, w)) => Report::new(claim, params, ok, w),
            Err(e @ Error::ResourceLimit { .. }) => {
                Report { claim: claim.into(), params, status: Status::SkippedResource, witness: json!({"error": e.to_string()}) }
            }
            Err(e) => Report { claim: claim.into(), params, status: Status::Failed, witness: json!({"error": e.to_string()}) },
        }
    }

    fn skipped(claim: &str, params: Value, limit: usize) -> Report {
        Report { claim: claim.into(), params, status: Status::SkippedResource, witness: json!({"limit": limit}) }
    }

    pub fn to_json(&self) -> Value {
        json!({"claim": self.claim, "params": self.params, "status": self.status.name(), "witness": self.witness})
    }
}

/// Overall status: `failed` if any report failed, else `skipped-resource` if any was skipped.
pub fn overall(reports: &[Report]) -> Status {
    if reports.iter().any(|r| r.status == Status::Failed) {
        Status::Failed
    } else if reports.iter().any(|r| r.status == Status::SkippedResource) {
        Status::SkippedResource
    } else {
        Status::Verified
    }
}

/// Size bounds; `None` selects each suite's default.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub max_n: Option<usize>,
    pub max_degree: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Suite {
    Euler,
    Generators,
    Ribbons,
    Duality,
    KBasis,
    Gessel,
    Hcl,
    Simples,
    Projectives,
    Cartan,
    Restriction,
    Corner,
    Twists,
    Bialgebra,
    Freeness,
    Invariants,
}

impl Suite {
    /// The acceptance suites in criterion order.
    pub const ACCEPTANCE: [Suite; 15] = [
        Suite::Euler,
        Suite::Generators,
        Suite::Ribbons,
        Suite::Duality,
        Suite::KBasis,
        Suite::Gessel,
        Suite::Hcl,
        Suite::Simples,
        Suite::Projectives,
        Suite::Cartan,
        Suite::Restriction,
        Suite::Corner,
        Suite::Twists,
        Suite::Bialgebra,
        Suite::Freeness,
    ];

    pub const ALL: [Suite; 16] = [
        Suite::Euler,
        Suite::Generators,
        Suite::Ribbons,
        Suite::Duality,
        Suite::KBasis,
        Suite::Gessel,
        Suite::Hcl,
        Suite::Simples,
        Suite::Projectives,
        Suite::Cartan,
        Suite::Restriction,
        Suite::Corner,
        Suite::Twists,
        Suite::Bialgebra,
        Suite::Freeness,
        Suite::Invariants,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Euler => "euler",
            Suite::Generators => "generators",
            Suite::Ribbons => "ribbons",
            Suite::Duality => "duality",
            Suite::KBasis => "kbasis",
            Suite::Gessel => "gessel",
            Suite::Hcl => "hcl",
            Suite::Simples => "simples",
            Suite::Projectives => "projectives",
            Suite::Cartan => "cartan",
            Suite::Restriction => "restriction",
            Suite::Corner => "corner",
            Suite::Twists => "twists",
            Suite::Bialgebra => "bialgebra",
            Suite::Freeness => "freeness",
            Suite::Invariants => "invariants",
        }
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.iter().copied().find(|x| x.name() == s)
    }

    pub fn description(&self) -> &'static str {
        match self {
            Suite::Euler => "Euler relations among the Q_n in the H basis",
            Suite::Generators => "Q_n as twice the sum of hook ribbons",
            Suite::Ribbons => "descent-to-peak images of ribbons",
            Suite::Duality => "adjointness of the two descent-to-peak maps",
            Suite::KBasis => "F and M forms of K_P; K of the empty set equals q_n",
            Suite::Gessel => "Hopf pairing against brute-force permutation counts",
            Suite::Hcl => "0-Hecke-Clifford relations, associativity and Frobenius form",
            Suite::Simples => "splitting and endomorphisms of simple supermodules",
            Suite::Projectives => "Hom dimensions between induced projectives and simples",
            Suite::Cartan => "Cartan images by two routes and their rank",
            Suite::Restriction => "restriction of induced projectives to the 0-Hecke algebra",
            Suite::Corner => "restriction along the corner embedding",
            Suite::Twists => "twisted isomorphisms with prescribed parity",
            Suite::Bialgebra => "classes of induced outer tensor products",
            Suite::Freeness => "Fock action, lowering, module-algebra law and freeness over Omega",
            Suite::Invariants => "coproduct, adjointness and Nakayama checks on classes",
        }
    }

    /// `(default bound, largest supported bound)`.
    pub fn bounds(&self) -> (usize, usize) {
        match self {
            Suite::Euler => (12, 16),
            Suite::Generators => (10, 14),
            Suite::Ribbons => (8, 10),
            Suite::Duality => (7, 8),
            Suite::KBasis => (8, 10),
            Suite::Gessel => (6, 7),
            Suite::Hcl => (4, 4),
            Suite::Simples => (5, 5),
            Suite::Projectives => (4, 4),
            Suite::Cartan => (6, 7),
            Suite::Restriction => (8, 8),
            Suite::Corner => (5, 5),
            Suite::Twists => (4, 5),
            Suite::Bialgebra => (5, 5),
            Suite::Freeness => (8, hs::MAX_DEGREE),
            Suite::Invariants => (4, 4),
        }
    }

    fn bound(&self, opts: &Options) -> usize {
        let requested = match self {
            Suite::Freeness => opts.max_degree.or(opts.max_n),
            _ => opts.max_n,
        };
        requested.unwrap_or(self.bounds().0)
    }
}

/// Runs one suite; reports come in a deterministic order.
pub fn run(suite: Suite, opts: &Options) -> Vec<Report> {
    let bound = suite.bound(opts);
    let limit = suite.bounds().1;
    let b = bound.min(limit);
    let mut out = match suite {
        Suite::Euler => euler(b),
        Suite::Generators => generators(b),
        Suite::Ribbons => ribbons(b),
        Suite::Duality => duality(b),
        Suite::KBasis => kbasis(b),
        Suite::Gessel => gessel(b),
        Suite::Hcl => hcl(b),
        Suite::Simples => simples(b),
        Suite::Projectives => projectives(b),
        Suite::Cartan => cartan(b),
        Suite::Restriction => restriction(b),
        Suite::Corner => corner(b),
        Suite::Twists => twists(b),
        Suite::Bialgebra => bialgebra(b),
        Suite::Freeness => freeness(b),
        Suite::Invariants => invariants(b),
    };
    if bound > limit {
        out.push(Report::skipped(suite.name(), json!({"from": limit + 1, "to": bound}), limit));
    }
    out
}

/// Runs every acceptance suite.
pub fn run_all(opts: &Options) -> Vec<(Suite, Vec<Report>)> {
    Suite::ACCEPTANCE.iter().map(|s| (*s, run(*s, opts))).collect()
}

fn comps_upto(n: usize) -> Vec<Composition> {
    (1..=n).flat_map(|k| compositions_of(k).unwrap_or_default()).collect()
}

fn r_el(a: &Composition) -> FreeElement {
    FreeElement::basis_element(Basis::R, Index::Comp(*a))
}

fn f_el(a: &Composition) -> FreeElement {
    FreeElement::basis_element(Basis::F, Index::Comp(*a))
}

fn alpha_params(a: &Composition) -> Value {
    json!({"alpha": a.parts()})
}

fn per_n(claim: &str, from: usize, to: usize, f: impl Fn(usize) -> Result<(bool, Value)> + Sync) -> Vec<Report> {
    (from..=to).into_par_iter().map(|n| Report::from_result(claim, json!({"n": n}), f(n))).collect()
}

fn per_alpha(claim: &str, comps: &[Composition], f: impl Fn(&Composition) -> Result<(bool, Value)> + Sync) -> Vec<Report> {
    comps.par_iter().map(|a| Report::from_result(claim, alpha_params(a), f(a))).collect()
}

fn euler(b: usize) -> Vec<Report> {
    per_n("euler.relation", 1, b, |n| {
        let mut acc = FreeElement::zero(Basis::H);
        for r in 0..=n {
            let t = convert(&hopf::product(&hopf::q_gen(r), &hopf::q_gen(n - r))?, Basis::H)?;
            acc = if r % 2 == 0 { acc.add(&t)? } else { acc.sub(&t)? };
        }
        Ok((acc.is_zero(), acc.to_json()))
    })
}

/// `2 Σ_k R_{(1^k, n−k)}`.
pub fn hook_sum(n: usize) -> FreeElement {
    let mut r = FreeElement::zero(Basis::R);
    for k in 0..n {
        let mut parts = vec![1; k];
        parts.push(n - k);
        r.add_term(Index::Comp(Composition::of(&parts)), &rat(2));
    }
    r
}

fn generators(b: usize) -> Vec<Report> {
    per_n("generators.hook-ribbons", 1, b, |n| {
        let q = convert(&hopf::q_gen(n), Basis::R)?;
        Ok((q == hook_sum(n), q.to_json()))
    })
}

fn ribbons(b: usize) -> Vec<Report> {
    per_n("ribbons.theta", 1, b, |n| {
        let comps = compositions_of(n)?;
        let mut bad = Vec::new();
        for a in &comps {
            if hopf::theta_transform(&r_el(a))? != hopf::theta_ribbon_formula(a) {
                bad.push(a.to_string());
            }
        }
        Ok((bad.is_empty(), json!({"compositions": comps.len(), "mismatches": bad})))
    })
}

fn duality(b: usize) -> Vec<Report> {
    per_n("duality.theta-vartheta", 1, b, |n| {
        let comps = compositions_of(n)?;
        let thetas: Vec<FreeElement> = comps.iter().map(|a| hopf::theta_transform(&r_el(a))).collect::<Result<_>>()?;
        let varthetas: Vec<FreeElement> = comps.iter().map(|a| hopf::vartheta(&f_el(a))).collect::<Result<_>>()?;
        let mut bad = Vec::new();
        for (a, t) in comps.iter().zip(&thetas) {
            for (c, v) in comps.iter().zip(&varthetas) {
                let lhs = hopf::pairing(t, &f_el(c))?;
                if lhs != hopf::pairing(&r_el(a), v)? || lhs != hopf::peak_pairing(t, v)? {
                    bad.push(format!("{a} / {c}"));
                }
            }
        }
        Ok((bad.is_empty(), json!({"pairs": comps.len() * comps.len(), "mismatches": bad})))
    })
}

fn kbasis(b: usize) -> Vec<Report> {
    per_n("kbasis.expansions", 1, b, |n| {
        let mut bad = Vec::new();
        for p in peak_sets_in(n) {
            let (f, m) = hopf::k_expansions(&p);
            if convert(&m, Basis::F)? != f || convert(&FreeElement::basis_element(Basis::K, Index::Peak(p)), Basis::F)? != f {
                bad.push(format_set(p.mask()));
            }
        }
        let total = compositions_of(n)?.iter().fold(FreeElement::zero(Basis::F), |mut acc, a| {
            acc.add_term(Index::Comp(*a), &rat(2));
            acc
        });
        let empty = convert(&hs::q_dual(n), Basis::F)?;
        let q = convert(&hopf::sym_to_qsym(&FreeElement::comp(Basis::OmegaQ, &[n]))?, Basis::F)?;
        let ok = bad.is_empty() && empty == total && q == total;
        Ok((ok, json!({"mismatches": bad, "q_n": q.to_string()})))
    })
}

fn gessel(b: usize) -> Vec<Report> {
    per_n("gessel.count", 1, b, |n| {
        let comps = compositions_of(n)?;
        let mut bad = Vec::new();
        let mut total = 0;
        for a in &comps {
            for c in &comps {
                let (lhs, count) = gr::gessel_pairing(a, c)?;
                total += count;
                if lhs != rat(count as i64) || count != gr::gessel_count(c, a)? {
                    bad.push(format!("{a} / {c}"));
                }
            }
        }
        Ok((bad.is_empty() && total == (1..=n).product::<usize>(), json!({"pairs": comps.len() * comps.len(), "permutations": total, "mismatches": bad})))
    })
}

fn random_homogeneous(n: usize, rng: &mut ChaCha8Rng, keys: &[BasisKey]) -> AlgebraElement {
    let parity = rng.gen_range(0..2u8);
    let pool: Vec<&BasisKey> = keys.iter().filter(|k| k.parity() == parity).collect();
    let mut x = AlgebraElement::zero(n);
    for _ in 0..rng.gen_range(1..4) {
        let k = pool[rng.gen_range(0..pool.len())];
        x.add_term(k.clone(), &GaussianRational::from_i64(rng.gen_range(-3..=3)));
    }
    x
}

/// `(a, b) = (−1)^{|a||b|} (φ(b), a)` on all basis pairs, through the Gram matrix.
pub fn nakayama_identity(n: usize) -> Result<bool> {
    let keys = hc::basis_keys(n)?;
    let pos: HashMap<&BasisKey, usize> = keys.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let form: Vec<Vec<GaussianRational>> = hc::gram_matrix(n)?.rows().iter().map(|r| r.to_dense(keys.len())).collect();
    let images: Vec<Vec<(usize, GaussianRational)>> = keys
        .iter()
        .map(|k| {
            let im = hc::apply_morphism(Morphism::Phi, &AlgebraElement::from_key(n, k))?;
            Ok(im.terms().map(|(k, c)| (pos[k], c.clone())).collect())
        })
        .collect::<Result<_>>()?;
    for (bi, b) in keys.iter().enumerate() {
        for (ai, a) in keys.iter().enumerate() {
            let mut rhs = GaussianRational::zero();
            for (k, c) in &images[bi] {
                rhs = rhs.add_ref(&c.mul_ref(&form[*k][ai]));
            }
            if a.parity() * b.parity() == 1 {
                rhs = -rhs;
            }
            if form[ai][bi] != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn hcl(b: usize) -> Vec<Report> {
    let mut out = per_n("hcl.dimension-and-relations", 1, b, |n| {
        let dim = hc::basis_keys(n)?.len();
        let expected = (1usize << n) * (1..=n).product::<usize>();
        let failures = hc::defining_relation_failures(n);
        Ok((dim == expected && failures.is_empty(), json!({"dim": dim, "expected": expected, "failed_relations": failures})))
    });
    out.extend(per_n("hcl.associativity", 1, b, |n| {
        let keys = hc::basis_keys(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed + n as u64);
        let mut bad = 0;
        for _ in 0..500 {
            let x = random_homogeneous(n, &mut rng, &keys);
            let y = random_homogeneous(n, &mut rng, &keys);
            let z = random_homogeneous(n, &mut rng, &keys);
            if x.mul(&y)?.mul(&z)? != x.mul(&y.mul(&z)?)? {
                bad += 1;
            }
        }
        Ok((bad == 0, json!({"triples": 500, "failures": bad})))
    }));
    out.extend(per_n("hcl.frobenius", 1, b, |n| {
        let g = hc::gram_matrix(n)?;
        let inv = g.is_invertible();
        let nak = nakayama_identity(n)?;
        Ok((inv && nak, json!({"gram_invertible": inv, "nakayama": nak, "dim": g.ncols()})))
    }));
    out
}

fn simples(b: usize) -> Vec<Report> {
    let comps = comps_upto(b);
    let split: Vec<Result<sm::SimpleSplit>> = comps.par_iter().map(sm::split_simple).collect();
    let mut out = Vec::new();
    for (a, s) in comps.iter().zip(&split) {
        out.push(Report::from_result(
            "simples.splitting",
            alpha_params(a),
            s.clone().map(|s| {
                (
                    s.passes_up_to_parity(),
                    json!({
                        "l": s.l,
                        "components": s.components.len(),
                        "component_dims": s.components.iter().map(|c| c.dim()).collect::<Vec<_>>(),
                        "type": s.component_type.name(),
                        "expected_type": s.expected_type().name(),
                    }),
                )
            }),
        ));
    }
    for (a, s) in comps.iter().zip(&split) {
        out.push(Report::from_result(
            "simples.even-isomorphism",
            alpha_params(a),
            s.clone().map(|s| (s.pairwise_even, json!({"type": s.component_type.name(), "l": s.l, "pairwise_up_to_parity": s.pairwise_up_to_parity}))),
        ));
    }
    out.extend(per_alpha("simples.endomorphisms", &comps, |a| {
        let e = sm::end_clifford_check(a)?;
        Ok((
            e.passes(),
            json!({"valley": e.valley, "end_dims": [e.end_dims.0, e.end_dims.1], "expected": e.expected_dim(), "span_dim": e.span_dim}),
        ))
    }));
    out
}

fn projectives(b: usize) -> Vec<Report> {
    per_n("projectives.hom-dimensions", 1, b, |n| {
        let comps = compositions_of(n)?;
        let pairs: Vec<(Composition, Composition)> = comps.iter().flat_map(|a| comps.iter().map(move |c| (*a, *c))).collect();
        let cells: Vec<gr::HomCell> = pairs.par_iter().map(|(a, c)| gr::hom_projective_simple(a, c)).collect::<Result<_>>()?;
        let bad: Vec<String> = cells.iter().filter(|c| !c.agrees()).map(|c| format!("{} / {}", c.alpha, c.beta)).collect();
        Ok((bad.is_empty(), json!({"pairs": cells.len(), "mismatches": bad})))
    })
}

fn cartan(b: usize) -> Vec<Report> {
    let mut out = per_alpha("cartan.routes-agree", &comps_upto(b), |a| {
        let r = gr::cartan_image(a)?;
        Ok((r.agrees(), json!({"image": r.filtration.to_string()})))
    });
    out.extend(per_n("cartan.rank", 1, b, |n| {
        let rank = gr::cartan_rank(n)?;
        let omega = gr::omega_dim(n);
        let strict = strict_partition_count(n);
        Ok((rank == omega && omega == strict, json!({"rank": rank, "omega_dim": omega, "strict_partitions": strict})))
    }));
    out
}

/// The vector `v_{5,2}` as printed: `v_{1,4,5} − v_{1,3,5} − v_{1} + v_{1,3,4}`.
pub const V52_PRINTED: [(u32, i64); 4] = [(0b11001, 1), (0b10101, -1), (0b00001, -1), (0b01101, 1)];

fn restriction(b: usize) -> Vec<Report> {
    let mut out = per_alpha("restriction.classes", &comps_upto(b), |a| {
        let r = gr::verify_restriction_to_hecke(a, 5)?;
        Ok((r.passes(), json!({"class": r.rule.to_string(), "module_level": r.by_module.is_some()})))
    });
    out.extend(per_n("restriction.splitting", 1, b.min(6), |n| {
        let r = sm::restriction_splitting(n)?;
        Ok((
            r.passes(),
            json!({
                "vectors": r.vectors.iter().map(|v| json!({
                    "k": v.k,
                    "parity": v.parity,
                    "terms": v.terms.iter().map(|(d, s)| json!([format_set(*d), s])).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }),
        ))
    }));
    if b >= 5 {
        out.push(Report::from_result(
            "restriction.v52",
            json!({"n": 5, "k": 2}),
            sm::restriction_vectors(5).map(|vs| {
                let v = vs.iter().find(|v| v.k == 2 && v.parity == 1);
                let mut got: Vec<(u32, i64)> = v.map(|v| v.terms.clone()).unwrap_or_default();
                let mut want = V52_PRINTED.to_vec();
                got.sort();
                want.sort();
                (got == want, json!(got.iter().map(|(d, s)| json!([format_set(*d), s])).collect::<Vec<_>>()))
            }),
        ));
    }
    out
}

fn corner(b: usize) -> Vec<Report> {
    let mut out = per_alpha("corner.restriction", &comps_upto(b), |a| {
        let r = gr::verify_corner_restriction(a)?;
        let summands: Vec<Value> = r.summands.iter().map(|(c, k)| json!([c.parts(), k])).collect();
        Ok((r.passes(), json!({"summands": summands, "dim": r.dim, "predicted_dim": r.predicted_dim})))
    });
    if b >= 5 {
        let a = Composition::of(&[1, 2, 2]);
        out.push(Report::from_result(
            "corner.worked-example",
            alpha_params(&a),
            gr::verify_corner_restriction(&a).map(|r| {
                let mut got: Vec<(Vec<usize>, usize)> = r.summands.iter().map(|(c, k)| (c.parts(), *k)).collect();
                got.sort();
                let mut want = vec![(vec![2, 2], 2), (vec![1, 1, 2], 2), (vec![1, 3], 2), (vec![1, 2, 1], 2)];
                want.sort();
                (got == want && r.passes(), json!(got))
            }),
        ));
    }
    out
}

fn twists(b: usize) -> Vec<Report> {
    let cases: Vec<(sm::TwistStatement, Composition)> =
        sm::TwistStatement::ALL.iter().flat_map(|s| comps_upto(b).into_iter().map(move |a| (*s, a))).collect();
    cases
        .par_iter()
        .map(|(s, a)| {
            Report::from_result(
                &format!("twists.{}", s.name()),
                alpha_params(a),
                sm::twisted_isomorphism(*s, a).map(|r| {
                    (r.passes(), json!({"parity": r.map.parity, "expected_parity": r.expected_parity, "invertible": r.invertible}))
                }),
            )
        })
        .collect()
}

fn bialgebra(b: usize) -> Vec<Report> {
    let comps = comps_upto(b.saturating_sub(1));
    let pairs: Vec<(Composition, Composition)> =
        comps.iter().flat_map(|a| comps.iter().filter(|c| a.size() + c.size() <= b).map(move |c| (*a, *c))).collect();
    pairs
        .par_iter()
        .map(|(a, c)| {
            Report::from_result(
                "bialgebra.product",
                json!({"alpha": a.parts(), "beta": c.parts()}),
                gr::bialgebra_check(a, c).map(|(l, r)| (l == r, json!({"module": l.to_string(), "product": r.to_string()}))),
            )
        })
        .collect()
}

fn freeness(b: usize) -> Vec<Report> {
    let mut out = Vec::new();
    let examples = (|| -> Result<(bool, Value)> {
        let n1 = hs::n_element(&Composition::of(&[1]));
        let e1 = hs::fock_action(&hopf::q_gen(1), &n1)? == FreeElement::one(Basis::N).scale(&rat(2));
        let e2 = hs::fock_action(&hopf::q_gen(1), &hs::n_element(&Composition::of(&[1, 1])))? == n1.scale(&rat(2));
        let k1 = convert(&n1, Basis::K)?;
        let lhs = hs::double_multiply(
            &hs::DoubleElement::pure(&FreeElement::one(Basis::K), &hopf::q_gen(1))?,
            &hs::DoubleElement::pure(&k1, &FreeElement::one(Basis::Xi))?,
        )?;
        let rhs = hs::DoubleElement::one().0.scale(&rat(2)).add(&hs::DoubleElement::pure(&k1, &hopf::q_gen(1))?.0)?;
        let e3 = lhs.0 == rhs;
        Ok((e1 && e2 && e3, json!({"q1_n1": e1, "q1_n11": e2, "double": e3})))
    })();
    out.push(Report::from_result("freeness.examples", json!({}), examples));

    let mut spans: HashMap<(usize, usize), Vec<FreeElement>> = HashMap::new();
    let keys: Vec<(usize, usize)> = (0..=b).flat_map(|d| (0..=b).map(move |l| (l, d))).collect();
    let built: Vec<((usize, usize), Result<Vec<FreeElement>>)> =
        keys.par_iter().map(|&(l, d)| ((l, d), hs::filtration_component(l, d))).collect();
    let mut span_error = None;
    for (k, v) in built {
        match v {
            Ok(v) => {
                spans.insert(k, v);
            }
            Err(e) => span_error = Some(e),
        }
    }
    if let Some(e) = span_error {
        out.push(Report::from_result("freeness.lowering", json!({"max_degree": b}), Err(e)));
        return out;
    }
    out.extend(per_n("freeness.lowering", 1, b, |d| {
        let cases: Vec<(Composition, usize)> = compositions_of(d)?.into_iter().flat_map(|a| (1..=d).map(move |m| (a, m))).collect();
        let results: Vec<bool> = cases.par_iter().map(|(a, m)| hs::lowering_holds(a, *m, &spans[&(a.len() - 1, d - m)])).collect::<Result<_>>()?;
        let bad: Vec<String> = cases.iter().zip(&results).filter(|(_, ok)| !**ok).map(|((a, m), _)| format!("Q{m}.N[{a}]")).collect();
        Ok((bad.is_empty(), json!({"cases": cases.len(), "failures": bad})))
    }));
    out.extend(per_n("freeness.levels", 0, b, |d| {
        let ranks: Vec<usize> = (0..=d).map(|l| hs::span_rank(&spans[&(l, d)], d)).collect::<Result<_>>()?;
        let omega = gr::omega_dim(d).max(usize::from(d == 0));
        let full = hs::peak_count(d);
        let ok = ranks[0] == omega && ranks[d] == full && ranks.windows(2).all(|w| w[0] <= w[1]);
        Ok((ok, json!({"ranks": ranks, "omega_dim": omega, "dim": full})))
    }));
    let alg_degree = b.min(5);
    out.push(Report::from_result(
        "freeness.module-algebra",
        json!({"max_degree": alg_degree, "trials": 40, "seed": 17}),
        hs::module_algebra_random(alg_degree, 40, 17).map(|ok| (ok, json!({}))),
    ));
    out.push(Report::from_result(
        "freeness.double",
        json!({"max_degree": b.min(5), "trials": 8, "seed": 23}),
        hs::double_random_checks(b.min(5), 8, 23).map(|ok| (ok, json!({}))),
    ));
    out.push(Report::from_result(
        "freeness.certificate",
        json!({"max_degree": b}),
        hs::free_basis_over_omega(b).map(|c| {
            let counts = c.generator_counts();
            (c.passes(), json!({"certificate": c.to_json(), "generator_counts": counts, "hilbert": c.hilbert}))
        }),
    ));
    let vac = b.min(6);
    out.push(Report::from_result(
        "freeness.vacuum-orbit",
        json!({"max_degree": vac}),
        hs::vacuum_orbit_dims(vac).map(|dims| {
            let omega: Vec<usize> = (0..=vac).map(|d| gr::omega_dim(d).max(usize::from(d == 0))).collect();
            (dims == omega, json!({"dims": dims, "omega": omega}))
        }),
    ));
    out
}

fn invariants(b: usize) -> Vec<Report> {
    let comps = comps_upto(b);
    let mut out: Vec<Report> = comps
        .par_iter()
        .filter(|a| a.size() >= 2)
        .flat_map(|a| {
            (1..a.size())
                .map(|m| {
                    Report::from_result(
                        "invariants.coproduct",
                        json!({"alpha": a.parts(), "m": m}),
                        gr::coproduct_probes(a, m).map(|p| (p.iter().all(|(x, y)| x == y), json!(p))),
                    )
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let triples: Vec<(Composition, Composition, Composition)> = comps
        .iter()
        .flat_map(|a| {
            let comps = &comps;
            comps.iter().flat_map(move |c| {
                comps.iter().filter(move |e| c.size() + e.size() == a.size()).map(move |e| (*a, *c, *e))
            })
        })
        .collect();
    let adjoint: Vec<Report> = triples
        .par_iter()
        .map(|(a, c, e)| {
            Report::from_result(
                "invariants.adjointness",
                json!({"alpha": a.parts(), "beta": c.parts(), "gamma": e.parts()}),
                gr::adjointness_check(a, c, e).map(|(x, y)| (x == y, json!([x, y]))),
            )
        })
        .collect();
    out.extend(adjoint);
    out.extend(per_alpha("invariants.nakayama-twist", &comps, |a| gr::nakayama_hecke_check(a).map(|ok| (ok, json!({})))));
    out
}

/// Text rendering: one line per report.
pub fn render_text(reports: &[Report]) -> String {
    reports
        .iter()
        .map(|r| format!("{:<17} {} {}", r.status.name(), r.claim, r.params))
        .collect::<Vec<_>>()
        .join("\n")
}
