//! The Rota–Baxter constraint system of H_d, generated symbolically, and its
//! comparison with transcribed published listings.
//!
//! For each basis pair `(e_i, e_j)` the generator evaluates, with the
//! operator entries `a11..a44` as indeterminates,
//!
//! ```text
//! R(R(e_i)e_j) + R(e_i R(e_j)) + w·R(e_i e_j) − R(e_i)R(e_j)
//! ```
//!
//! and emits its four coordinates. This is the negated defect, the sign the
//! published listings use. Slots are ordered `j`, then `i`, then the
//! coordinate `k`, so slot `16j + 4i + k` (0-based) lines up with the
//! published equation number `16j + 4i + k + 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{RingElement, StructureTable, DIM};
use crate::order::TermOrder;
use crate::poly::{var_index, var_name, Monomial, ParseError, Polynomial, LAMBDA, NVARS};
use crate::scalar::Scalar;

/// Transcribed listings shipped with the crate, one `label: polynomial` per
/// line.
pub mod fixtures {
    pub const WEIGHT0_SYSTEM: &str = include_str!("../data/weight0_system.txt");
    pub const WEIGHTED_SYSTEM: &str = include_str!("../data/weighted_system.txt");
    pub const WEIGHT0_REDUCED: &str = include_str!("../data/weight0_reduced.txt");
    pub const WEIGHTED_REDUCED: &str = include_str!("../data/weighted_reduced.txt");
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum WeightMode {
    Zero,
    Symbolic,
    /// A fixed nonzero weight.
    Fixed(Scalar),
}

impl WeightMode {
    fn weight_polynomial(&self) -> Polynomial {
        match self {
            WeightMode::Zero => Polynomial::zero(),
            WeightMode::Symbolic => Polynomial::lambda(),
            WeightMode::Fixed(c) => Polynomial::constant(c.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid weight {0:?}: expected \"0\", \"sym\" or a rational \"p/q\"")]
pub struct WeightParseError(pub String);

impl FromStr for WeightMode {
    type Err = WeightParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "sym" => Ok(WeightMode::Symbolic),
            other => {
                let c: Scalar = other.parse().map_err(|_| WeightParseError(s.to_string()))?;
                Ok(if c.is_zero() { WeightMode::Zero } else { WeightMode::Fixed(c) })
            }
        }
    }
}

impl fmt::Display for WeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightMode::Zero => f.write_str("0"),
            WeightMode::Symbolic => f.write_str("sym"),
            WeightMode::Fixed(c) => write!(f, "{c}"),
        }
    }
}

/// Provenance of a generated polynomial: basis pair `(e_i, e_j)`,
/// coordinate `e_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotLabel {
    pub i: usize,
    pub j: usize,
    pub k: usize,
}

impl SlotLabel {
    /// Slot of the 1-based published equation number `n` (1..=64).
    pub fn from_equation_number(n: usize) -> Option<SlotLabel> {
        if !(1..=64).contains(&n) {
            return None;
        }
        let s = n - 1;
        Some(SlotLabel { j: s / 16, i: (s / 4) % 4, k: s % 4 })
    }

    pub fn equation_number(&self) -> usize {
        16 * self.j + 4 * self.i + self.k + 1
    }
}

impl fmt::Display for SlotLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},e{})", self.i, self.j, self.k)
    }
}

impl FromStr for SlotLabel {
    type Err = ();
    fn from_str(s: &str) -> Result<Self, ()> {
        let inner = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or(())?;
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(());
        }
        let i = parts[0].parse().map_err(|_| ())?;
        let j = parts[1].parse().map_err(|_| ())?;
        let k = parts[2].strip_prefix('e').ok_or(())?.parse().map_err(|_| ())?;
        if i < DIM && j < DIM && k < DIM {
            Ok(SlotLabel { i, j, k })
        } else {
            Err(())
        }
    }
}

/// Provenance implied by a label: `(i,j,ek)` directly, or a published
/// equation number `e17` / `eq17`.
pub fn slot_of_label(label: &str) -> Option<SlotLabel> {
    if let Ok(slot) = label.parse::<SlotLabel>() {
        return Some(slot);
    }
    let digits = label.strip_prefix("eq").or_else(|| label.strip_prefix('e'))?;
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    SlotLabel::from_equation_number(digits.parse().ok()?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledPolynomial {
    pub label: String,
    pub slot: Option<SlotLabel>,
    pub poly: Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolySystem {
    pub weight_mode: Option<WeightMode>,
    pub polys: Vec<LabeledPolynomial>,
}

impl PolySystem {
    pub fn new(weight_mode: Option<WeightMode>) -> Self {
        PolySystem { weight_mode, polys: Vec::new() }
    }

    pub fn from_polys(polys: impl IntoIterator<Item = Polynomial>) -> Self {
        let mut sys = PolySystem::new(None);
        for (n, p) in polys.into_iter().enumerate() {
            sys.push(format!("p{}", n + 1), p);
        }
        sys
    }

    pub fn push(&mut self, label: impl Into<String>, poly: Polynomial) {
        let label = label.into();
        let slot = slot_of_label(&label);
        self.polys.push(LabeledPolynomial { label, slot, poly });
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.polys.iter().map(|lp| &lp.poly)
    }

    pub fn get(&self, slot: SlotLabel) -> Option<&LabeledPolynomial> {
        self.polys.iter().find(|lp| lp.slot == Some(slot))
    }

    /// Every polynomial vanishes at the point (indexed by variable).
    pub fn vanishes_at(&self, point: &[Scalar]) -> bool {
        self.polys.iter().all(|lp| lp.poly.evaluate(point).is_zero())
    }

    pub fn substitute(&self, v: usize, value: &Scalar) -> PolySystem {
        PolySystem {
            weight_mode: self.weight_mode.clone(),
            polys: self
                .polys
                .iter()
                .map(|lp| LabeledPolynomial {
                    label: lp.label.clone(),
                    slot: lp.slot,
                    poly: lp.poly.substitute(v, value),
                })
                .collect(),
        }
    }

    /// One line per polynomial, `<label>: <polynomial>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(mode) = &self.weight_mode {
            out.push_str(&format!("# weight: {mode}\n"));
        }
        for lp in &self.polys {
            out.push_str(&format!("{}: {}\n", lp.label, lp.poly));
        }
        out
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            weight_mode: self.weight_mode.as_ref().map(ToString::to_string),
            polys: self
                .polys
                .iter()
                .map(|lp| PolyJson { label: lp.label.clone(), terms: terms_to_json(&lp.poly) })
                .collect(),
        }
    }

    pub fn from_json(json: &SystemJson) -> Result<PolySystem, SystemFormatError> {
        let weight_mode = match &json.weight_mode {
            None => None,
            Some(s) => Some(s.parse().map_err(|e: WeightParseError| SystemFormatError::Weight(e.to_string()))?),
        };
        let mut sys = PolySystem::new(weight_mode);
        for pj in &json.polys {
            sys.push(pj.label.clone(), terms_from_json(&pj.label, &pj.terms)?);
        }
        Ok(sys)
    }
}

/// Serialized system: `{"weight_mode": ..., "polys": [{"label", "terms"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub weight_mode: Option<String>,
    pub polys: Vec<PolyJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub label: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: Scalar,
    pub exps: BTreeMap<String, u16>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemFormatError {
    #[error("{0}")]
    Weight(String),
    #[error("polynomial {label:?}: unknown variable {name:?}")]
    UnknownVariable { label: String, name: String },
}

pub fn terms_to_json(p: &Polynomial) -> Vec<TermJson> {
    p.display_terms()
        .into_iter()
        .map(|(m, c)| TermJson {
            coeff: c.clone(),
            exps: (0..NVARS).filter(|&v| m.exp(v) > 0).map(|v| (var_name(v), m.exp(v))).collect(),
        })
        .collect()
}

pub fn terms_from_json(label: &str, terms: &[TermJson]) -> Result<Polynomial, SystemFormatError> {
    let mut p = Polynomial::zero();
    for t in terms {
        let mut exps = [0u16; NVARS];
        for (name, &e) in &t.exps {
            let v = var_index(name)
                .ok_or_else(|| SystemFormatError::UnknownVariable { label: label.to_string(), name: name.clone() })?;
            exps[v] += e;
        }
        p.add_term(Monomial::from_exps(exps), &t.coeff);
    }
    Ok(p)
}

fn symbolic_operator() -> [[Polynomial; DIM]; DIM] {
    std::array::from_fn(|r| std::array::from_fn(|c| Polynomial::entry(r, c)))
}

fn apply_symbolic(r: &[[Polynomial; DIM]; DIM], x: &[Polynomial; DIM]) -> [Polynomial; DIM] {
    std::array::from_fn(|row| {
        let mut acc = Polynomial::zero();
        for (a, v) in r[row].iter().zip(x) {
            if !v.is_zero() {
                acc = &acc + &(a * v);
            }
        }
        acc
    })
}

fn basis_symbolic(i: usize) -> [Polynomial; DIM] {
    std::array::from_fn(|k| if k == i { Polynomial::one() } else { Polynomial::zero() })
}

/// Coordinates of the negated defect at `(e_i, e_j)` over an arbitrary
/// structure table.
pub fn pair_polynomials(table: &StructureTable, mode: &WeightMode, i: usize, j: usize) -> [Polynomial; DIM] {
    let r = symbolic_operator();
    let w = mode.weight_polynomial();
    let (ei, ej) = (basis_symbolic(i), basis_symbolic(j));
    let rei = apply_symbolic(&r, &ei);
    let rej = apply_symbolic(&r, &ej);
    let t1 = apply_symbolic(&r, &table.multiply(&rei, &ej));
    let t2 = apply_symbolic(&r, &table.multiply(&ei, &rej));
    let t3 = apply_symbolic(&r, &table.multiply(&ei, &ej));
    let lhs = table.multiply(&rei, &rej);
    std::array::from_fn(|k| {
        let weighted = &w * &t3[k];
        (&(&t1[k] + &t2[k]) + &weighted).sub_ref(&lhs[k])
    })
}

pub fn generate_system_with(table: &StructureTable, mode: &WeightMode) -> PolySystem {
    let mut sys = PolySystem::new(Some(mode.clone()));
    for j in 0..DIM {
        for i in 0..DIM {
            let coords = pair_polynomials(table, mode, i, j);
            for (k, poly) in coords.into_iter().enumerate() {
                let slot = SlotLabel { i, j, k };
                sys.polys.push(LabeledPolynomial { label: slot.to_string(), slot: Some(slot), poly });
            }
        }
    }
    sys
}

/// The 64 labeled polynomials of the Rota–Baxter system of H_d.
pub fn generate_system(mode: &WeightMode) -> PolySystem {
    generate_system_with(&StructureTable::dual_quaternion(), mode)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{} unparseable line(s): {}", .errors.len(), .errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
pub struct SystemParseError {
    pub errors: Vec<ParseError>,
}

/// Parses a listing: one polynomial per line, optionally prefixed by
/// `label:`; blank lines and `#` comments are skipped. Unlabeled lines get
/// `p<line>`. All bad lines are reported together.
pub fn parse_paper_system(text: &str) -> Result<PolySystem, SystemParseError> {
    let mut sys = PolySystem::new(None);
    let mut errors = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (label, body, offset) = match raw.split_once(':') {
            Some((l, b)) => (l.trim().to_string(), b, l.chars().count() + 1),
            None => (format!("p{line_no}"), raw, 0),
        };
        match Polynomial::parse(body) {
            Ok(p) => sys.push(label, p),
            Err(e) => errors.push(ParseError { line: line_no, column: e.column + offset, message: e.message }),
        }
    }
    if errors.is_empty() {
        Ok(sys)
    } else {
        Err(SystemParseError { errors })
    }
}

/// Verdict for one transcribed polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum MatchVerdict {
    Exact,
    /// `transcribed = factor · generated`.
    ScalarMultiple {
        factor: Scalar,
    },
    Mismatch {
        /// `generated − transcribed`.
        difference: String,
        /// Labels of generated polynomials equal to the transcription up to
        /// a nonzero scalar, if it matches some other slot.
        matches_elsewhere: Vec<String>,
    },
    /// No generated polynomial carries the transcription's slot.
    Unmatched {
        matches_elsewhere: Vec<String>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonEntry {
    pub transcribed_label: String,
    pub generated_label: Option<String>,
    pub transcribed: String,
    pub generated: Option<String>,
    #[serde(flatten)]
    pub verdict: MatchVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub exact: usize,
    pub scalar_multiple: usize,
    pub mismatched: usize,
    pub entries: Vec<ComparisonEntry>,
}

impl ComparisonReport {
    /// Labels of the transcribed polynomials that are not exact matches.
    pub fn discrepancies(&self) -> Vec<&str> {
        self.entries.iter().filter(|e| e.verdict != MatchVerdict::Exact).map(|e| e.transcribed_label.as_str()).collect()
    }
}

/// Monic form under `order`: divided by its leading coefficient.
pub fn monic(p: &Polynomial, order: &TermOrder) -> Polynomial {
    match leading_coefficient(p, order) {
        Some(lc) => p.scale(&lc.recip().expect("leading coefficient is nonzero")),
        None => Polynomial::zero(),
    }
}

fn leading_coefficient(p: &Polynomial, order: &TermOrder) -> Option<Scalar> {
    p.terms().max_by(|a, b| order.cmp(a.0, b.0)).map(|(_, c)| c.clone())
}

/// `Some(c)` with `b = c·a`, `c ≠ 0`, if such a scalar exists.
pub fn scalar_factor(a: &Polynomial, b: &Polynomial, order: &TermOrder) -> Option<Scalar> {
    if a.is_zero() || b.is_zero() {
        return None;
    }
    if monic(a, order) != monic(b, order) {
        return None;
    }
    let la = leading_coefficient(a, order)?;
    let lb = leading_coefficient(b, order)?;
    Some(&lb / &la)
}

/// Compares each transcribed polynomial with the generated polynomial in the
/// same slot. The generated system is authoritative.
pub fn compare_systems(generated: &PolySystem, transcribed: &PolySystem, order: &TermOrder) -> ComparisonReport {
    let mut entries = Vec::new();
    let (mut exact, mut scalar_multiple, mut mismatched) = (0, 0, 0);
    for (idx, t) in transcribed.polys.iter().enumerate() {
        let partner = match t.slot {
            Some(slot) => generated.get(slot),
            None => generated.polys.get(idx),
        };
        let elsewhere = || -> Vec<String> {
            generated
                .polys
                .iter()
                .filter(|g| partner.is_none_or(|p| p.label != g.label))
                .filter(|g| g.poly == t.poly || scalar_factor(&g.poly, &t.poly, order).is_some())
                .map(|g| g.label.clone())
                .collect()
        };
        let verdict = match partner {
            None => MatchVerdict::Unmatched { matches_elsewhere: elsewhere() },
            Some(g) if g.poly == t.poly => MatchVerdict::Exact,
            Some(g) => match scalar_factor(&g.poly, &t.poly, order) {
                Some(factor) => MatchVerdict::ScalarMultiple { factor },
                None => MatchVerdict::Mismatch {
                    difference: (&g.poly - &t.poly).to_string(),
                    matches_elsewhere: elsewhere(),
                },
            },
        };
        match verdict {
            MatchVerdict::Exact => exact += 1,
            MatchVerdict::ScalarMultiple { .. } => scalar_multiple += 1,
            _ => mismatched += 1,
        }
        entries.push(ComparisonEntry {
            transcribed_label: t.label.clone(),
            generated_label: partner.map(|g| g.label.clone()),
            transcribed: t.poly.to_string(),
            generated: partner.map(|g| g.poly.to_string()),
            verdict,
        });
    }
    ComparisonReport { exact, scalar_multiple, mismatched, entries }
}

/// The shipped transcription of the weight-0 system.
pub fn published_weight0_system() -> PolySystem {
    parse_paper_system(fixtures::WEIGHT0_SYSTEM).expect("shipped fixture parses")
}

pub fn published_weighted_system() -> PolySystem {
    parse_paper_system(fixtures::WEIGHTED_SYSTEM).expect("shipped fixture parses")
}

pub fn published_weight0_reduced() -> PolySystem {
    parse_paper_system(fixtures::WEIGHT0_REDUCED).expect("shipped fixture parses")
}

pub fn published_weighted_reduced() -> PolySystem {
    parse_paper_system(fixtures::WEIGHTED_REDUCED).expect("shipped fixture parses")
}

/// Assignment vector for an operator matrix and weight, indexed by variable.
pub fn assignment(entries: &[[Scalar; DIM]; DIM], lambda: &Scalar) -> Vec<Scalar> {
    let mut point = vec![Scalar::zero(); NVARS];
    for r in 0..DIM {
        for c in 0..DIM {
            point[r * DIM + c] = entries[r][c].clone();
        }
    }
    point[LAMBDA] = lambda.clone();
    point
}
