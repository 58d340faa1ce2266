//! Parametric operator families, classification of a single operator, and an
//! exhaustive grid audit of the classification.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::DIM;
use crate::operator::{find_defect, is_rota_baxter, DefectWitness, OperatorMatrix};
use crate::poly::entry_var;
use crate::scalar::Scalar;
use crate::system::{assignment, generate_system, PolySystem, WeightMode};

/// Named operator families.
///
/// * `W0RowFamily(a, b, c)`: first row `(0, a, b, c)`, zeros elsewhere.
/// * `W0BlockFamily(d, e, f)`: rows `(0,0,0,0)`, `(0,0,d,de/f)`,
///   `(0,0,−e,−e²/f)`, `(0,0,f,e)`; requires `f ≠ 0`.
/// * `WlRowFamily(λ, a, b, c)`: first row `(−λ, a, b, c)`; requires `λ ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilyDescriptor {
    ZeroOperator,
    W0RowFamily { a: Scalar, b: Scalar, c: Scalar },
    W0BlockFamily { d: Scalar, e: Scalar, f: Scalar },
    WlRowFamily { lambda: Scalar, a: Scalar, b: Scalar, c: Scalar },
}

impl FamilyDescriptor {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyDescriptor::ZeroOperator => "zero_operator",
            FamilyDescriptor::W0RowFamily { .. } => "w0_row_family",
            FamilyDescriptor::W0BlockFamily { .. } => "w0_block_family",
            FamilyDescriptor::WlRowFamily { .. } => "wl_row_family",
        }
    }

    /// Weight the family is stated for.
    pub fn weight(&self) -> Scalar {
        match self {
            FamilyDescriptor::WlRowFamily { lambda, .. } => lambda.clone(),
            _ => Scalar::zero(),
        }
    }
}

impl fmt::Display for FamilyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyDescriptor::ZeroOperator => f.write_str("ZeroOperator"),
            FamilyDescriptor::W0RowFamily { a, b, c } => write!(f, "W0_RowFamily(a={a}, b={b}, c={c})"),
            FamilyDescriptor::W0BlockFamily { d, e, f: ff } => write!(f, "W0_BlockFamily(d={d}, e={e}, f={ff})"),
            FamilyDescriptor::WlRowFamily { lambda, a, b, c } => {
                write!(f, "WL_RowFamily(lambda={lambda}, a={a}, b={b}, c={c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("block family needs f != 0")]
    ZeroF,
    #[error("weighted row family needs lambda != 0")]
    ZeroLambda,
}

fn first_row(a11: Scalar, a: &Scalar, b: &Scalar, c: &Scalar) -> OperatorMatrix {
    let mut m = OperatorMatrix::zero();
    m.entries[0] = [a11, a.clone(), b.clone(), c.clone()];
    m
}

pub fn build_family(f: &FamilyDescriptor) -> Result<OperatorMatrix, FamilyError> {
    match f {
        FamilyDescriptor::ZeroOperator => Ok(OperatorMatrix::zero()),
        FamilyDescriptor::W0RowFamily { a, b, c } => Ok(first_row(Scalar::zero(), a, b, c)),
        FamilyDescriptor::W0BlockFamily { d, e, f } => {
            let inv = f.recip().ok_or(FamilyError::ZeroF)?;
            let z = Scalar::zero;
            Ok(OperatorMatrix::new([
                [z(), z(), z(), z()],
                [z(), z(), d.clone(), d * e * &inv],
                [z(), z(), -e, -(e * e * &inv)],
                [z(), z(), f.clone(), e.clone()],
            ]))
        }
        FamilyDescriptor::WlRowFamily { lambda, a, b, c } => {
            if lambda.is_zero() {
                return Err(FamilyError::ZeroLambda);
            }
            Ok(first_row(-lambda, a, b, c))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ClassificationResult {
    NotRotaBaxter {
        witness: DefectWitness,
    },
    InFamily {
        family: FamilyDescriptor,
    },
    /// Rota–Baxter, but no family's recovery predicate accepts it.
    OutsideKnownFamilies {
        matrix: OperatorMatrix,
    },
}

impl fmt::Display for ClassificationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassificationResult::NotRotaBaxter { witness } => write!(f, "NOT ROTA-BAXTER: {witness}"),
            ClassificationResult::InFamily { family } => write!(f, "IN FAMILY: {family}"),
            ClassificationResult::OutsideKnownFamilies { matrix } => {
                write!(f, "ROTA-BAXTER OUTSIDE KNOWN FAMILIES: {matrix}")
            }
        }
    }
}

fn lower_rows_zero(r: &OperatorMatrix) -> bool {
    r.entries[1..].iter().all(|row| row.iter().all(Scalar::is_zero))
}

/// Parameter recovery against every family stated for `lambda`, without
/// consulting the Rota–Baxter equation.
pub fn recover_family(r: &OperatorMatrix, lambda: &Scalar) -> Option<FamilyDescriptor> {
    if r.is_zero() {
        return Some(FamilyDescriptor::ZeroOperator);
    }
    let e = &r.entries;
    if lambda.is_zero() {
        if lower_rows_zero(r) && e[0][0].is_zero() {
            return Some(FamilyDescriptor::W0RowFamily { a: e[0][1].clone(), b: e[0][2].clone(), c: e[0][3].clone() });
        }
        if !e[3][2].is_zero() {
            let fam = FamilyDescriptor::W0BlockFamily { d: e[1][2].clone(), e: e[3][3].clone(), f: e[3][2].clone() };
            if build_family(&fam).as_ref() == Ok(r) {
                return Some(fam);
            }
        }
        None
    } else if lower_rows_zero(r) && e[0][0] == -lambda {
        Some(FamilyDescriptor::WlRowFamily {
            lambda: lambda.clone(),
            a: e[0][1].clone(),
            b: e[0][2].clone(),
            c: e[0][3].clone(),
        })
    } else {
        None
    }
}

pub fn classify(r: &OperatorMatrix, lambda: &Scalar) -> ClassificationResult {
    if let Some(witness) = find_defect(r, lambda) {
        return ClassificationResult::NotRotaBaxter { witness };
    }
    match recover_family(r, lambda) {
        Some(family) => ClassificationResult::InFamily { family },
        None => ClassificationResult::OutsideKnownFamilies { matrix: r.clone() },
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    W0Row,
    W0Block,
    WlRow,
}

fn random_scalar<R: Rng>(rng: &mut R) -> Scalar {
    Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

fn random_nonzero<R: Rng>(rng: &mut R) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random member of a family with small rational parameters, respecting
/// its constraints.
pub fn sample_family<R: Rng>(kind: FamilyKind, rng: &mut R) -> FamilyDescriptor {
    match kind {
        FamilyKind::W0Row => {
            FamilyDescriptor::W0RowFamily { a: random_scalar(rng), b: random_scalar(rng), c: random_scalar(rng) }
        }
        FamilyKind::W0Block => {
            FamilyDescriptor::W0BlockFamily { d: random_scalar(rng), e: random_scalar(rng), f: random_nonzero(rng) }
        }
        FamilyKind::WlRow => FamilyDescriptor::WlRowFamily {
            lambda: random_nonzero(rng),
            a: random_scalar(rng),
            b: random_scalar(rng),
            c: random_scalar(rng),
        },
    }
}

/// Entries the reduced systems force to zero; the audit holds them at 0.
pub const FORCED_ZERO: [(usize, usize); 6] = [(1, 0), (1, 1), (2, 0), (2, 1), (3, 0), (3, 1)];

/// Entries that range over the grid (all but `a11` and the forced zeros).
pub const FREE_ENTRIES: [(usize, usize); 9] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)];

const MAX_EXAMPLES: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inconsistency {
    pub matrix: OperatorMatrix,
    pub satisfies_generated_system: bool,
    pub is_rota_baxter: bool,
}

/// Status of the zero operator at a nonzero weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroOperatorStatus {
    pub is_rota_baxter: bool,
    pub matches_weighted_row_form: bool,
    pub note: String,
}

/// A Rota–Baxter operator with a single nonzero entry at a position the
/// audit holds at zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ForcedZeroProbe {
    pub entry: String,
    pub value: Scalar,
    pub matrix: OperatorMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub mode: String,
    pub grid: Vec<Scalar>,
    pub free_entries: Vec<String>,
    pub candidates: usize,
    pub solutions: usize,
    pub by_family: BTreeMap<String, usize>,
    pub outside_count: usize,
    /// First few outside-family solutions in enumeration order.
    pub outside_examples: Vec<OperatorMatrix>,
    pub inconsistencies: Vec<Inconsistency>,
    pub zero_operator: Option<ZeroOperatorStatus>,
    pub forced_zero_probes: Vec<ForcedZeroProbe>,
}

impl AuditReport {
    /// Every solution is in some family.
    pub fn complete(&self) -> bool {
        self.outside_count == 0 && self.inconsistencies.is_empty()
    }
}

/// Odometer step, last digit fastest; false once every digit wraps.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

fn sorted_grid(grid: &[Scalar]) -> Vec<Scalar> {
    let mut g = grid.to_vec();
    g.sort_by(|a, b| a.as_rational().cmp(b.as_rational()));
    g.dedup();
    g
}

fn zero_operator_status(lambda: &Scalar) -> ZeroOperatorStatus {
    let z = OperatorMatrix::zero();
    let rb = is_rota_baxter(&z, lambda);
    let matches = lambda.is_zero();
    let note = if rb && !matches {
        format!("the zero operator is Rota-Baxter of weight {lambda} but its a11 = 0 differs from -lambda, so the first-row form (-lambda, a, b, c) does not contain it")
    } else {
        "the zero operator is covered by the row form".to_string()
    };
    ZeroOperatorStatus { is_rota_baxter: rb, matches_weighted_row_form: matches, note }
}

fn forced_zero_probes(lambda: &Scalar, values: &[Scalar]) -> Vec<ForcedZeroProbe> {
    let mut out = Vec::new();
    for &(r, c) in &FORCED_ZERO {
        for v in values {
            let m = OperatorMatrix::single(r, c, v.clone());
            if is_rota_baxter(&m, lambda) {
                out.push(ForcedZeroProbe { entry: crate::algebra::entry_name(r, c), value: v.clone(), matrix: m });
            }
        }
    }
    out
}

/// Exhaustive audit over the grid. `lambda = 0` uses the weight-0 system;
/// otherwise the system at that fixed weight, with `a11 ∈ {0, −λ}`.
pub fn audit_completeness(lambda: &Scalar, grid: &[Scalar]) -> AuditReport {
    let grid = sorted_grid(grid);
    let mode = if lambda.is_zero() { WeightMode::Zero } else { WeightMode::Fixed(lambda.clone()) };
    let system: PolySystem = generate_system(&mode);
    let polys: Vec<_> = system.polynomials().filter(|p| !p.is_zero()).cloned().collect();

    let a11_values: Vec<Scalar> =
        if lambda.is_zero() { vec![Scalar::zero()] } else { sorted_grid(&[Scalar::zero(), -lambda]) };

    let mut by_family: BTreeMap<String, usize> = BTreeMap::new();
    let mut report = AuditReport {
        mode: mode.to_string(),
        grid: grid.clone(),
        free_entries: FREE_ENTRIES.iter().map(|&(r, c)| crate::algebra::entry_name(r, c)).collect(),
        candidates: 0,
        solutions: 0,
        by_family: BTreeMap::new(),
        outside_count: 0,
        outside_examples: Vec::new(),
        inconsistencies: Vec::new(),
        zero_operator: (!lambda.is_zero()).then(|| zero_operator_status(lambda)),
        forced_zero_probes: Vec::new(),
    };

    let n = FREE_ENTRIES.len();
    let mut idx = vec![0usize; n];
    for a11 in &a11_values {
        loop {
            let mut entries: [[Scalar; DIM]; DIM] = Default::default();
            entries[0][0] = a11.clone();
            for (k, &(r, c)) in FREE_ENTRIES.iter().enumerate() {
                entries[r][c] = grid[idx[k]].clone();
            }
            let point = assignment(&entries, lambda);
            debug_assert_eq!(point[entry_var(0, 0)], *a11);
            let m = OperatorMatrix::new(entries);
            report.candidates += 1;

            let vanishes = polys.iter().all(|p| p.evaluate(&point).is_zero());
            let rb = is_rota_baxter(&m, lambda);
            if vanishes != rb {
                report.inconsistencies.push(Inconsistency {
                    matrix: m.clone(),
                    satisfies_generated_system: vanishes,
                    is_rota_baxter: rb,
                });
            }
            if vanishes && rb {
                report.solutions += 1;
                match recover_family(&m, lambda) {
                    Some(f) => *by_family.entry(f.name().to_string()).or_default() += 1,
                    None => {
                        report.outside_count += 1;
                        if report.outside_examples.len() < MAX_EXAMPLES {
                            report.outside_examples.push(m);
                        }
                    }
                }
            }

            if !advance(&mut idx, grid.len()) {
                break;
            }
        }
    }
    if report.outside_count > 0 {
        by_family.insert("outside_known_families".to_string(), report.outside_count);
    }
    report.by_family = by_family;

    let mut probe_values = vec![Scalar::one(), -Scalar::one()];
    if !lambda.is_zero() {
        probe_values.extend([lambda.clone(), -lambda]);
    }
    report.forced_zero_probes = forced_zero_probes(lambda, &sorted_grid(&probe_values));
    report
}
