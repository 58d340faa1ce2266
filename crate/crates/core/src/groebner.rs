//! Buchberger's algorithm over the rationals, normal forms, and ideal
//! membership.
//!
//! Inside this module polynomials are kept as term vectors sorted in
//! decreasing order under the active [`TermOrder`]; the public API speaks
//! [`Polynomial`]. Critical pairs are pruned with the Gebauer–Möller
//! criteria and processed by the normal strategy: smallest lcm degree first,
//! ties broken by creation index.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::order::TermOrder;
use crate::poly::{Monomial, Polynomial, LAMBDA, SAT_VAR};
use crate::scalar::Scalar;
use crate::system::PolySystem;

type Terms = Vec<(Monomial, Scalar)>;

fn sorted_terms(p: &Polynomial, order: &TermOrder) -> Terms {
    let mut t: Terms = p.terms().map(|(m, c)| (*m, c.clone())).collect();
    t.sort_by(|a, b| order.cmp(&b.0, &a.0));
    t
}

fn to_polynomial(t: &[(Monomial, Scalar)]) -> Polynomial {
    Polynomial::from_terms(t.iter().cloned())
}

fn make_monic(t: &mut Terms) {
    if let Some((_, lc)) = t.first() {
        if !lc.is_one() {
            let inv = lc.recip().expect("leading coefficient is nonzero");
            for (_, c) in t.iter_mut() {
                *c = &*c * &inv;
            }
        }
    }
}

/// `p − c·m·g`, all sorted decreasingly.
fn sub_scaled(
    p: &[(Monomial, Scalar)],
    c: &Scalar,
    m: &Monomial,
    g: &[(Monomial, Scalar)],
    order: &TermOrder,
) -> Terms {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() || j < g.len() {
        if j == g.len() {
            out.extend_from_slice(&p[i..]);
            break;
        }
        let gm = g[j].0.mul(m);
        if i == p.len() {
            out.push((gm, -(c * &g[j].1)));
            j += 1;
            continue;
        }
        match order.cmp(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(c * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let v = &p[i].1 - &(c * &g[j].1);
                if !v.is_zero() {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` by `divisors`; optionally records quotients.
fn reduce(p: Terms, divisors: &[&Terms], order: &TermOrder, mut quotients: Option<&mut Vec<Polynomial>>) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut cur = p;
    let mut start = 0;
    while start < cur.len() {
        let (lm, lc) = (cur[start].0, cur[start].1.clone());
        let hit = divisors.iter().enumerate().find(|(_, g)| g.first().is_some_and(|(gm, _)| gm.divides(&lm)));
        match hit {
            Some((idx, g)) => {
                let (gm, gc) = &g[0];
                let m = lm.checked_div(gm).expect("divisibility checked");
                let c = &lc / gc;
                if let Some(q) = quotients.as_deref_mut() {
                    q[idx].add_term(m, &c);
                }
                cur = sub_scaled(&cur[start..], &c, &m, g, order);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    rem
}

/// Remainder of multivariate division of `p` by `g` (in list order).
pub fn normal_form(p: &Polynomial, g: &[Polynomial], order: &TermOrder) -> Polynomial {
    let divisors: Vec<Terms> = g.iter().filter(|x| !x.is_zero()).map(|x| sorted_terms(x, order)).collect();
    let refs: Vec<&Terms> = divisors.iter().collect();
    to_polynomial(&reduce(sorted_terms(p, order), &refs, order, None))
}

/// Division with quotients: `p = Σ quotients[i]·g[i] + remainder`.
pub fn divide(p: &Polynomial, g: &[Polynomial], order: &TermOrder) -> (Vec<Polynomial>, Polynomial) {
    let divisors: Vec<Terms> = g.iter().map(|x| sorted_terms(x, order)).collect();
    let refs: Vec<&Terms> = divisors.iter().collect();
    let mut q = vec![Polynomial::zero(); g.len()];
    let r = reduce(sorted_terms(p, order), &refs, order, Some(&mut q));
    (q, to_polynomial(&r))
}

pub fn leading_monomial(p: &Polynomial, order: &TermOrder) -> Option<Monomial> {
    p.terms().map(|(m, _)| *m).max_by(|a, b| order.cmp(a, b))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: &TermOrder) -> Polynomial {
    let (tf, tg) = (sorted_terms(f, order), sorted_terms(g, order));
    to_polynomial(&s_poly_terms(&tf, &tg, order))
}

fn s_poly_terms(f: &Terms, g: &Terms, order: &TermOrder) -> Terms {
    let (fm, fc) = &f[0];
    let (gm, gc) = &g[0];
    let l = fm.lcm(gm);
    let uf = l.checked_div(fm).expect("lcm");
    let ug = l.checked_div(gm).expect("lcm");
    let scaled_f: Terms = f.iter().map(|(m, c)| (m.mul(&uf), c / fc)).collect();
    let c = gc.recip().expect("nonzero");
    sub_scaled(&scaled_f, &c, &ug, g, order)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_pairs: 100_000, max_degree: 12 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BuchbergerStats {
    pub pairs_created: usize,
    pub pairs_pruned: usize,
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub max_pair_degree: u32,
    pub basis_size: usize,
}

impl fmt::Display for BuchbergerStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} pairs created, {} pruned, {} reduced ({} to zero), max pair degree {}",
            self.pairs_created, self.pairs_pruned, self.pairs_reduced, self.zero_reductions, self.max_pair_degree
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("input system has no nonzero polynomial")]
    EmptyInput,
    #[error("pair limit {limit} reached: {stats}")]
    PairLimit { limit: usize, stats: BuchbergerStats },
    #[error("degree cap {limit} exceeded by a critical pair of degree {degree}: {stats}")]
    DegreeLimit { limit: u32, degree: u32, stats: BuchbergerStats },
}

impl GroebnerError {
    pub fn stats(&self) -> Option<&BuchbergerStats> {
        match self {
            GroebnerError::EmptyInput => None,
            GroebnerError::PairLimit { stats, .. } | GroebnerError::DegreeLimit { stats, .. } => Some(stats),
        }
    }
}

/// A reduced Gröbner basis: monic generators sorted by decreasing leading
/// monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub generators: Vec<Polynomial>,
    pub order: TermOrder,
    pub stats: BuchbergerStats,
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    polys: Vec<Terms>,
    active: Vec<bool>,
    /// keyed by (lcm degree, creation index)
    pairs: BTreeMap<(u32, usize), Pair>,
    next_pair: usize,
    stats: BuchbergerStats,
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    fn active_refs(&self) -> Vec<&Terms> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller update with the new polynomial `h`.
    fn update(&mut self, h: usize) {
        let hm = *self.lm(h);
        let olds: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let candidates: Vec<Pair> = olds.iter().map(|&g| Pair { i: g, j: h, lcm: self.lm(g).lcm(&hm) }).collect();
        self.stats.pairs_created += candidates.len();

        // chain criterion among the new pairs
        let mut kept: Vec<Pair> = Vec::new();
        for (idx, p) in candidates.iter().enumerate() {
            let coprime = self.lm(p.i).coprime(&hm);
            let dominated = candidates.iter().enumerate().any(|(o, q)| {
                if o == idx {
                    return false;
                }
                if !q.lcm.divides(&p.lcm) {
                    return false;
                }
                // strict divisibility, or an equal lcm earlier in the list
                q.lcm != p.lcm || o < idx
            });
            if coprime || !dominated {
                kept.push(*p);
            }
        }
        // among pairs with equal lcm keep one; then drop coprime ones
        let mut fresh: Vec<Pair> = Vec::new();
        for p in kept {
            if fresh.iter().any(|q| q.lcm == p.lcm) {
                continue;
            }
            fresh.push(p);
        }
        let before = fresh.len();
        fresh.retain(|p| !self.lm(p.i).coprime(&hm));
        self.stats.pairs_pruned += candidates.len() - before + (before - fresh.len());

        // prune old pairs that h makes redundant
        let removable: Vec<(u32, usize)> = self
            .pairs
            .iter()
            .filter(|(_, p)| hm.divides(&p.lcm) && self.lm(p.i).lcm(&hm) != p.lcm && self.lm(p.j).lcm(&hm) != p.lcm)
            .map(|(k, _)| *k)
            .collect();
        self.stats.pairs_pruned += removable.len();
        for k in removable {
            self.pairs.remove(&k);
        }

        for p in fresh {
            self.pairs.insert((p.lcm.degree(), self.next_pair), p);
            self.next_pair += 1;
        }

        for g in olds {
            if hm.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn push(&mut self, mut t: Terms) {
        make_monic(&mut t);
        self.polys.push(t);
        self.active.push(false);
        let h = self.polys.len() - 1;
        self.update(h);
    }
}

/// Reduced Gröbner basis of the ideal generated by `system`.
pub fn buchberger(system: &PolySystem, order: &TermOrder, limits: Limits) -> Result<GroebnerBasis, GroebnerError> {
    buchberger_polys(&system.polynomials().cloned().collect::<Vec<_>>(), order, limits)
}

pub fn buchberger_polys(
    input: &[Polynomial],
    order: &TermOrder,
    limits: Limits,
) -> Result<GroebnerBasis, GroebnerError> {
    let mut engine = Engine {
        polys: Vec::new(),
        active: Vec::new(),
        pairs: BTreeMap::new(),
        next_pair: 0,
        stats: BuchbergerStats::default(),
    };

    // inter-reduce the input so the starting set is deterministic and small
    let mut seeds: Vec<Terms> = Vec::new();
    for p in input.iter().filter(|p| !p.is_zero()) {
        let mut t = sorted_terms(p, order);
        make_monic(&mut t);
        if !seeds.contains(&t) {
            seeds.push(t);
        }
    }
    if seeds.is_empty() {
        return Err(GroebnerError::EmptyInput);
    }
    seeds.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0).then_with(|| a.len().cmp(&b.len())));
    for s in seeds {
        let reduced = {
            let refs = engine.active_refs();
            reduce(s, &refs, order, None)
        };
        if !reduced.is_empty() {
            engine.push(reduced);
        }
    }

    while let Some((&key, &pair)) = engine.pairs.iter().next() {
        engine.pairs.remove(&key);
        let degree = key.0;
        engine.stats.max_pair_degree = engine.stats.max_pair_degree.max(degree);
        if degree > limits.max_degree {
            return Err(GroebnerError::DegreeLimit { limit: limits.max_degree, degree, stats: engine.stats });
        }
        if engine.stats.pairs_reduced >= limits.max_pairs {
            return Err(GroebnerError::PairLimit { limit: limits.max_pairs, stats: engine.stats });
        }
        engine.stats.pairs_reduced += 1;
        let s = s_poly_terms(&engine.polys[pair.i], &engine.polys[pair.j], order);
        let r = {
            let refs = engine.active_refs();
            reduce(s, &refs, order, None)
        };
        if r.is_empty() {
            engine.stats.zero_reductions += 1;
        } else {
            engine.push(r);
        }
    }

    // minimal basis, then inter-reduce tails
    let mut basis: Vec<Terms> =
        engine.polys.iter().zip(&engine.active).filter(|(_, &a)| a).map(|(p, _)| p.clone()).collect();
    basis.sort_by(|a, b| order.cmp(&b[0].0, &a[0].0));
    let mut reduced: Vec<Terms> = Vec::with_capacity(basis.len());
    for idx in 0..basis.len() {
        let others: Vec<&Terms> = basis.iter().enumerate().filter(|&(o, _)| o != idx).map(|(_, t)| t).collect();
        let head = basis[idx][0].clone();
        let tail = reduce(basis[idx][1..].to_vec(), &others, order, None);
        let mut t = vec![head];
        t.extend(tail);
        reduced.push(t);
    }
    let mut stats = engine.stats;
    stats.basis_size = reduced.len();
    Ok(GroebnerBasis { generators: reduced.iter().map(|t| to_polynomial(t)).collect(), order: order.clone(), stats })
}

impl GroebnerBasis {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        normal_form(p, &self.generators, &self.order)
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| leading_monomial(g, &self.order)).collect()
    }

    /// Whether the ideal is the whole ring.
    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| leading_monomial(g, &self.order).is_some_and(|m| m.is_one()))
    }

    /// Buchberger's criterion checked from scratch over every pair.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        for a in 0..self.generators.len() {
            for b in a + 1..self.generators.len() {
                let s = s_polynomial(&self.generators[a], &self.generators[b], &self.order);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Reduced: monic, and no term of any generator is divisible by another
    /// generator's leading monomial.
    pub fn is_reduced(&self) -> bool {
        let lms = self.leading_monomials();
        self.generators.iter().enumerate().all(|(i, g)| {
            let monic = leading_monomial(g, &self.order).is_some_and(|m| g.coefficient(&m).is_one());
            monic && g.terms().all(|(m, _)| lms.iter().enumerate().all(|(j, l)| i == j || !l.divides(m)))
        })
    }

    /// Cofactors `q` with `p = Σ q_i·g_i`, verified exactly, or `None` when
    /// `p` is not in the ideal.
    pub fn membership_certificate(&self, p: &Polynomial) -> Option<Vec<Polynomial>> {
        let (q, r) = divide(p, &self.generators, &self.order);
        if !r.is_zero() {
            return None;
        }
        let recombined = q.iter().zip(&self.generators).fold(Polynomial::zero(), |acc, (qi, gi)| &acc + &(qi * gi));
        assert_eq!(&recombined, p, "cofactor representation failed to verify");
        Some(q)
    }

    pub fn contains(&self, p: &Polynomial) -> bool {
        self.membership_certificate(p).is_some()
    }
}

pub fn ideal_contains(g: &GroebnerBasis, p: &Polynomial) -> bool {
    g.contains(p)
}

/// `system ∪ {t·λ − 1}`: encodes λ ≠ 0. A polynomial free of `t` lies in
/// the resulting ideal iff it lies in the saturation of `system` by λ.
pub fn saturate_weight(system: &PolySystem) -> PolySystem {
    let mut out = system.clone();
    let rel = &(&Polynomial::var(SAT_VAR) * &Polynomial::var(LAMBDA)) - &Polynomial::one();
    out.push("t*l - 1", rel);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Membership {
    InIdeal,
    /// Not a member, but the given power is (so it lies in the radical).
    PowerInIdeal {
        power: u32,
    },
    /// Neither the polynomial nor its square or cube is a member.
    NotContained,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    pub label: String,
    pub polynomial: String,
    #[serde(flatten)]
    pub membership: Membership,
}

/// Containment both ways between the ideals of two systems.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealComparison {
    pub order: TermOrder,
    pub saturated: bool,
    /// Generators of B tested against the ideal of A.
    pub b_in_a: Vec<MemberReport>,
    /// Generators of A tested against the ideal of B.
    pub a_in_b: Vec<MemberReport>,
    pub b_subset_a: bool,
    pub a_subset_b: bool,
    pub equal: bool,
    pub basis_a_size: usize,
    pub basis_b_size: usize,
}

pub fn classify_membership(g: &GroebnerBasis, p: &Polynomial) -> Membership {
    if g.contains(p) {
        return Membership::InIdeal;
    }
    for power in 2..=3 {
        if g.contains(&p.pow(power)) {
            return Membership::PowerInIdeal { power };
        }
    }
    Membership::NotContained
}

fn members(g: &GroebnerBasis, sys: &PolySystem) -> Vec<MemberReport> {
    sys.polys
        .iter()
        .filter(|lp| !lp.poly.is_zero())
        .map(|lp| MemberReport {
            label: lp.label.clone(),
            polynomial: lp.poly.to_string(),
            membership: classify_membership(g, &lp.poly),
        })
        .collect()
}

/// Compares `⟨A⟩` and `⟨B⟩`. With `saturate`, both sides get `t·λ − 1`
/// first, so the comparison is between the λ-saturations.
pub fn compare_ideals(
    a: &PolySystem,
    b: &PolySystem,
    order: &TermOrder,
    limits: Limits,
    saturate: bool,
) -> Result<IdealComparison, GroebnerError> {
    let (sa, sb) = if saturate { (saturate_weight(a), saturate_weight(b)) } else { (a.clone(), b.clone()) };
    let ga = buchberger(&sa, order, limits)?;
    let gb = buchberger(&sb, order, limits)?;
    let b_in_a = members(&ga, b);
    let a_in_b = members(&gb, a);
    let b_subset_a = b_in_a.iter().all(|m| m.membership == Membership::InIdeal);
    let a_subset_b = a_in_b.iter().all(|m| m.membership == Membership::InIdeal);
    Ok(IdealComparison {
        order: order.clone(),
        saturated: saturate,
        b_in_a,
        a_in_b,
        b_subset_a,
        a_subset_b,
        equal: b_subset_a && a_subset_b,
        basis_a_size: ga.len(),
        basis_b_size: gb.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{OrderKind, TermOrder};

    fn p(s: &str) -> Polynomial {
        Polynomial::parse(s).unwrap()
    }

    fn gb(polys: &[&str], order: &TermOrder) -> GroebnerBasis {
        let input: Vec<Polynomial> = polys.iter().map(|s| p(s)).collect();
        buchberger_polys(&input, order, Limits::default()).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let ord = TermOrder::grevlex();
        let g = p("a11*a12 - 3*a13 + 1");
        assert!(normal_form(&g, std::slice::from_ref(&g), &ord).is_zero());
        assert!(normal_form(&p("a11^2"), &[p("a11")], &ord).is_zero());
        assert_eq!(normal_form(&p("a11 + a22"), &[p("a11")], &ord), p("a22"));
    }

    #[test]
    fn linear_system_lex() {
        // x = a11 > y = a12
        let g = gb(&["a11 - 1", "a12 - a11"], &TermOrder::lex());
        assert_eq!(g.generators, vec![p("a11 - 1"), p("a12 - 1")]);
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let g = gb(&["a11^2", "a11*a12"], &TermOrder::grevlex());
        assert_eq!(g.generators, vec![p("a11^2"), p("a11*a12")]);
    }

    #[test]
    fn textbook_example_grevlex() {
        // x^3 - 2xy, x^2 y - 2y^2 + x  (Cox–Little–O'Shea)
        let g = gb(&["a11^3 - 2*a11*a12", "a11^2*a12 - 2*a12^2 + a11"], &TermOrder::grevlex());
        let want: Vec<Polynomial> = ["a11^2", "a11*a12", "a12^2 - 1/2*a11"].iter().map(|s| p(s)).collect();
        let mut got = g.generators.clone();
        got.sort_by_key(|x| x.to_string());
        let mut want_sorted = want;
        want_sorted.sort_by_key(|x| x.to_string());
        assert_eq!(got, want_sorted);
        assert!(g.satisfies_buchberger_criterion());
        assert!(g.is_reduced());
    }

    #[test]
    fn unit_ideal_collapses() {
        let g = gb(&["a11", "a11 + 1"], &TermOrder::grevlex());
        assert_eq!(g.generators, vec![Polynomial::one()]);
        assert!(g.is_unit_ideal());
    }

    #[test]
    fn membership_examples() {
        let g = gb(&["a11"], &TermOrder::grevlex());
        assert!(ideal_contains(&g, &p("a11*a22")));
        assert!(!ideal_contains(&g, &p("a22")));
        let cert = g.membership_certificate(&p("a11*a22 - 2*a11")).unwrap();
        assert_eq!(cert, vec![p("a22 - 2")]);
    }

    #[test]
    fn compare_textbook_ideals() {
        let a = PolySystem::from_polys([p("a11")]);
        let b = PolySystem::from_polys([p("a11^2")]);
        let cmp = compare_ideals(&a, &b, &TermOrder::grevlex(), Limits::default(), false).unwrap();
        assert!(cmp.b_subset_a);
        assert!(!cmp.a_subset_b);
        assert_eq!(cmp.a_in_b[0].membership, Membership::PowerInIdeal { power: 2 });
        let same = compare_ideals(&a, &a, &TermOrder::grevlex(), Limits::default(), false).unwrap();
        assert!(same.equal);
    }

    #[test]
    fn saturation_inverts_the_weight() {
        // a11·λ = 0 with λ invertible forces a11 = 0
        let sys = PolySystem::from_polys([p("a11*l")]);
        let plain = buchberger(&sys, &TermOrder::grevlex(), Limits::default()).unwrap();
        assert!(!plain.contains(&p("a11")));
        let sat = buchberger(&saturate_weight(&sys), &TermOrder::grevlex(), Limits::default()).unwrap();
        assert!(sat.contains(&p("a11")));
    }

    #[test]
    fn limits_are_enforced() {
        let input = [p("a11^3 - 2*a11*a12"), p("a11^2*a12 - 2*a12^2 + a11")];
        let tight = Limits { max_pairs: 1, max_degree: 12 };
        assert!(matches!(buchberger_polys(&input, &TermOrder::grevlex(), tight), Err(GroebnerError::PairLimit { .. })));
        let shallow = Limits { max_pairs: 100, max_degree: 2 };
        assert!(matches!(
            buchberger_polys(&input, &TermOrder::grevlex(), shallow),
            Err(GroebnerError::DegreeLimit { .. })
        ));
        assert!(matches!(
            buchberger_polys(&[], &TermOrder::grevlex(), Limits::default()),
            Err(GroebnerError::EmptyInput)
        ));
    }

    #[test]
    fn lex_and_grevlex_agree_on_membership() {
        let polys = ["a11^2 - a12", "a11*a12 - a13"];
        let lex = gb(&polys, &TermOrder::natural(OrderKind::Lex));
        let grev = gb(&polys, &TermOrder::grevlex());
        for q in ["a11^3 - a13", "a12^2 - a11*a13", "a11 - a13"] {
            assert_eq!(lex.contains(&p(q)), grev.contains(&p(q)), "{q}");
        }
    }
}
