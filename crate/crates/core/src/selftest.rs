//! Invariant suite behind `dqrb selftest`.
//!
//! Mandatory checks exercise this implementation and decide the exit code.
//! Informational checks compare against the published listings and
//! families; a disagreement there is a finding, not a failure.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{DualQuaternion, StructureTable, DIM};
use crate::classify::{build_family, recover_family, sample_family, FamilyDescriptor, FamilyKind};
use crate::groebner::{buchberger, compare_ideals, normal_form, saturate_weight, Limits, Membership};
use crate::operator::{published_matrix_discrepancies, rb_defect, MatrixIdentities, OperatorMatrix};
use crate::order::TermOrder;
use crate::poly::{Polynomial, LAMBDA};
use crate::scalar::Scalar;
use crate::system::{
    assignment, compare_systems, generate_system, generate_system_with, published_weight0_reduced,
    published_weight0_system, published_weighted_reduced, published_weighted_system, WeightMode,
};

const SEED: u64 = 0x5eed_d0a1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Mandatory,
    Informational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<CheckResult>,
}

impl SelftestReport {
    pub fn mandatory_passed(&self) -> bool {
        self.checks.iter().filter(|c| c.kind == CheckKind::Mandatory).all(|c| c.passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let status = match (c.kind, c.passed) {
                (CheckKind::Mandatory, true) => "PASS",
                (CheckKind::Mandatory, false) => "FAIL",
                (CheckKind::Informational, true) => "AGREE",
                (CheckKind::Informational, false) => "DIFFER",
            };
            let kind = match c.kind {
                CheckKind::Mandatory => "mandatory",
                CheckKind::Informational => "info",
            };
            writeln!(f, "{status:<6} {kind:<9} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.mandatory_passed() { "all mandatory checks passed" } else { "mandatory checks FAILED" };
        writeln!(f, "{verdict}")
    }
}

pub fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.gen_range(-5..=5), rng.gen_range(1..=4))
}

pub fn random_element<R: Rng>(rng: &mut R) -> DualQuaternion {
    DualQuaternion::new(std::array::from_fn(|_| random_scalar(rng)))
}

pub fn random_matrix<R: Rng>(rng: &mut R) -> OperatorMatrix {
    OperatorMatrix::from_fn(|_, _| random_scalar(rng))
}

fn mandatory(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.to_string(), kind: CheckKind::Mandatory, passed, detail: detail.into() }
}

fn info(name: &str, passed: bool, detail: impl Into<String>) -> CheckResult {
    CheckResult { name: name.to_string(), kind: CheckKind::Informational, passed, detail: detail.into() }
}

fn check_axioms(table: &StructureTable, rng: &mut ChaCha8Rng) -> CheckResult {
    let report = table.check();
    let mut nilpotent_failures = 0;
    for _ in 0..100 {
        let pure = random_element(rng).pure_part();
        if !table.multiply_elements(&pure, &pure).is_zero() {
            nilpotent_failures += 1;
        }
    }
    let passed = report.all_hold() && nilpotent_failures == 0;
    mandatory(
        "algebra axioms",
        passed,
        format!(
            "unital={} commutative={} associative={}, pure-part squares nonzero on {nilpotent_failures}/100",
            report.unital, report.commutative, report.associative
        ),
    )
}

fn check_product_formula(table: &StructureTable, rng: &mut ChaCha8Rng) -> CheckResult {
    let bad = (0..100)
        .filter(|_| {
            let (x, y) = (random_element(rng), random_element(rng));
            x.mul(&y) != table.multiply_elements(&x, &y)
        })
        .count();
    mandatory("closed product formula", bad == 0, format!("{bad}/100 random pairs disagree with the table"))
}

fn check_lemma_paths(table: &StructureTable, rng: &mut ChaCha8Rng) -> CheckResult {
    let ids = MatrixIdentities::new(table);
    let mut bad = 0;
    for _ in 0..200 {
        let r = random_matrix(rng);
        let lambda = random_scalar(rng);
        let residual = ids.theorem3_residual(&r, &lambda);
        for i in 0..DIM {
            for j in 0..DIM {
                let (ri, rj) = (r.image_of_basis(i), r.image_of_basis(j));
                let (ei, ej) = (DualQuaternion::basis(i), DualQuaternion::basis(j));
                let defect = rb_defect(&r, &lambda, &ei, &ej);
                let residual_col = DualQuaternion::new(std::array::from_fn(|k| residual[j][(k, i)].clone()));
                if ids.lemma1_product(&r, i, j) != table.multiply_elements(&ri, &rj)
                    || ids.lemma2_left(&r, i, j) != table.multiply_elements(&ei, &rj)
                    || ids.lemma2_right(&r, i, j) != table.multiply_elements(&ri, &ej)
                    || residual_col != defect
                {
                    bad += 1;
                }
            }
        }
    }
    mandatory("matrix identities vs direct product", bad == 0, format!("{bad}/3200 (matrix, pair) cases disagree"))
}

fn check_system_vs_defect(table: &StructureTable, rng: &mut ChaCha8Rng) -> CheckResult {
    let system = generate_system_with(table, &WeightMode::Symbolic);
    let mut samples: Vec<(OperatorMatrix, Scalar)> =
        (0..200).map(|_| (random_matrix(rng), random_scalar(rng))).collect();
    let one = Scalar::one();
    samples.push((OperatorMatrix::zero(), Scalar::zero()));
    samples.push((OperatorMatrix::single(1, 0, one.clone()), Scalar::zero()));
    samples.push((OperatorMatrix::single(2, 3, one.clone()), Scalar::zero()));
    samples.push((OperatorMatrix::single(2, 2, -&one), one.clone()));
    let mut bad = 0;
    for (r, lambda) in &samples {
        let point = assignment(&r.entries, lambda);
        for j in 0..DIM {
            for i in 0..DIM {
                let d = rb_defect(r, lambda, &DualQuaternion::basis(i), &DualQuaternion::basis(j));
                for k in 0..DIM {
                    let value = system.polys[16 * j + 4 * i + k].poly.evaluate(&point);
                    if value != -&d.coords[k] {
                        bad += 1;
                    }
                }
            }
        }
    }
    mandatory(
        "generated system equals negated defect",
        bad == 0 && system.len() == 64,
        format!("{} polynomials, {bad} slot evaluations disagree over {} operators", system.len(), samples.len()),
    )
}

fn check_system_shape() -> CheckResult {
    let sym = generate_system(&WeightMode::Symbolic);
    let zero = generate_system(&WeightMode::Zero);
    let first = Polynomial::parse("a11^2 + 2*a12*a21 + 2*a13*a31 + 2*a14*a41 + a11*l").expect("literal");
    let specialised = sym.substitute(LAMBDA, &Scalar::zero());
    let same = specialised.polys.iter().zip(&zero.polys).all(|(a, b)| a.poly == b.poly);
    let no_weight = zero.polynomials().all(|p| !p.uses_var(LAMBDA));
    let passed = sym.len() == 64 && zero.len() == 64 && sym.polys[0].poly == first && same && no_weight;
    mandatory(
        "system generation",
        passed,
        format!("first slot {} ; weight-0 specialisation consistent={same}", sym.polys[0].poly),
    )
}

fn check_groebner(rng: &mut ChaCha8Rng) -> CheckResult {
    let order = TermOrder::grevlex();
    let limits = Limits::default();
    let w0 = buchberger(&generate_system(&WeightMode::Zero), &order, limits);
    let sat = buchberger(&saturate_weight(&generate_system(&WeightMode::Symbolic)), &order, limits);
    match (w0, sat) {
        (Ok(w0), Ok(sat)) => {
            let mut valid = w0.satisfies_buchberger_criterion()
                && w0.is_reduced()
                && sat.satisfies_buchberger_criterion()
                && sat.is_reduced();
            // permutation invariance of normal forms modulo a Gröbner basis
            let probes = ["a33 + a44", "a12*a23*a34", "a23^2 + a11*a44 - 3*a24", "a43^3"];
            for probe in probes {
                let p = Polynomial::parse(probe).expect("literal");
                let mut shuffled = w0.generators.clone();
                for k in (1..shuffled.len()).rev() {
                    shuffled.swap(k, rng.gen_range(0..=k));
                }
                valid &= normal_form(&p, &shuffled, &order) == w0.normal_form(&p);
            }
            mandatory(
                "groebner bases",
                valid,
                format!("weight-0 basis {} generators, saturated basis {} generators", w0.len(), sat.len()),
            )
        }
        (Err(e), _) | (_, Err(e)) => mandatory("groebner bases", false, e.to_string()),
    }
}

fn check_recovery(rng: &mut ChaCha8Rng) -> CheckResult {
    let mut bad = 0;
    for kind in [FamilyKind::W0Row, FamilyKind::W0Block, FamilyKind::WlRow] {
        for _ in 0..100 {
            let fam = sample_family(kind, rng);
            let m = build_family(&fam).expect("sampled parameters respect constraints");
            let want = if m.is_zero() { FamilyDescriptor::ZeroOperator } else { fam.clone() };
            if recover_family(&m, &fam.weight()) != Some(want) {
                bad += 1;
            }
        }
    }
    mandatory("family parameter recovery", bad == 0, format!("{bad}/300 round trips failed"))
}

fn check_family_soundness(rng: &mut ChaCha8Rng) -> Vec<CheckResult> {
    [
        (FamilyKind::W0Row, "row family, weight 0"),
        (FamilyKind::W0Block, "block family, weight 0"),
        (FamilyKind::WlRow, "row family, nonzero weight"),
    ]
    .into_iter()
    .map(|(kind, label)| {
        let good = (0..100)
            .filter(|_| {
                let fam = sample_family(kind, rng);
                crate::operator::is_rota_baxter(&build_family(&fam).expect("valid"), &fam.weight())
            })
            .count();
        info(&format!("family soundness ({label})"), good == 100, format!("{good}/100 random members are Rota-Baxter"))
    })
    .collect()
}

fn transcription_checks() -> Vec<CheckResult> {
    let order = TermOrder::grevlex();
    let mut out = Vec::new();
    for (name, mode, listing) in [
        ("transcription, weight 0", WeightMode::Zero, published_weight0_system()),
        ("transcription, symbolic weight", WeightMode::Symbolic, published_weighted_system()),
    ] {
        let report = compare_systems(&generate_system(&mode), &listing, &order);
        let listed = report.discrepancies();
        out.push(info(
            name,
            report.exact == listing.len(),
            format!(
                "{}/{} exact, {} scalar multiples, deviating: {}",
                report.exact,
                listing.len(),
                report.scalar_multiple,
                listed.join(" ")
            ),
        ));
    }
    out
}

fn containment_checks() -> Vec<CheckResult> {
    let order = TermOrder::grevlex();
    let limits = Limits::default();
    let mut out = Vec::new();
    for (name, mode, listing, saturate) in [
        ("reduced list, weight 0", WeightMode::Zero, published_weight0_reduced(), false),
        ("reduced list, nonzero weight (saturated)", WeightMode::Symbolic, published_weighted_reduced(), true),
    ] {
        match compare_ideals(&generate_system(&mode), &listing, &order, limits, saturate) {
            Ok(cmp) => {
                let missing: Vec<String> = cmp
                    .b_in_a
                    .iter()
                    .filter(|m| m.membership != Membership::InIdeal)
                    .map(|m| m.label.clone())
                    .collect();
                let converse = cmp.a_in_b.iter().filter(|m| m.membership == Membership::InIdeal).count();
                out.push(info(
                    name,
                    cmp.equal,
                    format!(
                        "{}/{} listed polynomials in the generated ideal (outside: {}); converse {}/{}",
                        cmp.b_in_a.len() - missing.len(),
                        cmp.b_in_a.len(),
                        missing.join(" "),
                        converse,
                        cmp.a_in_b.len()
                    ),
                ));
            }
            Err(e) => out.push(info(name, false, e.to_string())),
        }
    }
    out
}

fn display_check() -> CheckResult {
    let found = published_matrix_discrepancies(&MatrixIdentities::dual_quaternion());
    let names: Vec<String> = found.iter().map(|d| d.location.clone()).collect();
    info("printed matrix identities", found.is_empty(), format!("{} discrepancies: {}", found.len(), names.join("; ")))
}

/// Runs every check against `table`. Output is deterministic.
pub fn run_selftest(table: &StructureTable) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut checks = vec![
        check_axioms(table, &mut rng),
        check_product_formula(table, &mut rng),
        check_lemma_paths(table, &mut rng),
        check_system_vs_defect(table, &mut rng),
        check_system_shape(),
        check_groebner(&mut rng),
        check_recovery(&mut rng),
    ];
    checks.extend(check_family_soundness(&mut rng));
    checks.extend(transcription_checks());
    checks.extend(containment_checks());
    checks.push(display_check());
    SelftestReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fresh_table_passes_and_corrupted_table_fails() {
        let report = run_selftest(&StructureTable::dual_quaternion());
        assert!(report.mandatory_passed(), "{report}");

        let mut broken = StructureTable::dual_quaternion();
        broken.set(1, 1, 0, Scalar::one());
        let report = run_selftest(&broken);
        assert!(!report.mandatory_passed());
        let axioms = report.checks.iter().find(|c| c.name == "algebra axioms").unwrap();
        assert!(!axioms.passed);
    }
}
