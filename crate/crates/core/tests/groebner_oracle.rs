//! Gröbner results checked against bases and verdicts computed
//! independently with sympy (`groebner(..., order='grevlex')` over
//! a11 > … > a44 > l > t) and frozen here.

use dualquat_rb::groebner::{buchberger, classify_membership, saturate_weight, GroebnerBasis, Limits, Membership};
use dualquat_rb::poly::LAMBDA;
use dualquat_rb::system::{generate_system, monic, published_weight0_reduced, published_weighted_reduced};
use dualquat_rb::{PolySystem, Polynomial, Scalar, TermOrder, WeightMode};

const WEIGHT0_BASIS: &str = include_str!("oracle/weight0_grevlex_basis.txt");
const SATURATED_BASIS: &str = include_str!("oracle/saturated_grevlex_basis.txt");

// per reduced-list entry: In (member), P2 / P3 (that power is a member), No
const WEIGHT0_VERDICTS: &str = "r1=P3 r2=P2 r3=P2 r4=P2 r5=P2 r6=P2 r7=P2 r8=P2 r9=P2 r10=P2 r11=No r12=P2 r13=P2 \
    r14=P2 r15=P2 r16=No r17=P2 r18=P2 r19=P2 r20=No r21=No r22=No r23=No r24=No r25=No r26=No";
const SATURATED_VERDICTS: &str = "equ65=In equ66=P2 equ67=P2 equ68=P2 equ69=No equ70=P2 equ71=P2 equ72=P2 equ73=No \
    equ74=P2 equ75=P2 equ76=P2 equ77=No equ78=P2 equ79=P2 equ80=P2 equ81=No equ82=No equ83=P2 equ84=P2 equ85=P2 \
    equ86=No equ87=No equ88=No equ89=P2 equ90=P2 equ91=P2 equ92=No equ93=No equ94=No equ95=No equ96=No equ97=In \
    equ98=No equ99=In equ100=No equ101=No equ102=In equ103=No";

// slot n (0-based) of the generated system lies in the listing's ideal
const WEIGHT0_CONVERSE: &str = "1111111111111111111101110111011111110111011101111111011101110111";
const SATURATED_CONVERSE: &str = "1111111111111111111101110111011111110111011101111111011101110111";

fn oracle_basis(text: &str, order: &TermOrder) -> Vec<Polynomial> {
    let mut v: Vec<Polynomial> = text.lines().map(|l| monic(&Polynomial::parse(l).unwrap(), order)).collect();
    v.sort_by_key(ToString::to_string);
    v
}

fn sorted(g: &GroebnerBasis) -> Vec<Polynomial> {
    let mut v = g.generators.clone();
    v.sort_by_key(ToString::to_string);
    v
}

fn verdict(code: &str) -> Membership {
    match code {
        "In" => Membership::InIdeal,
        "P2" => Membership::PowerInIdeal { power: 2 },
        "P3" => Membership::PowerInIdeal { power: 3 },
        "No" => Membership::NotContained,
        other => panic!("bad code {other}"),
    }
}

fn check_verdicts(basis: &GroebnerBasis, listing: &PolySystem, table: &str) {
    let expected: Vec<(&str, &str)> = table.split_whitespace().map(|kv| kv.split_once('=').unwrap()).collect();
    assert_eq!(expected.len(), listing.len());
    for ((label, code), lp) in expected.iter().zip(&listing.polys) {
        assert_eq!(*label, lp.label);
        assert_eq!(classify_membership(basis, &lp.poly), verdict(code), "{label}: {}", lp.poly);
    }
}

fn weight0_basis() -> GroebnerBasis {
    buchberger(&generate_system(&WeightMode::Zero), &TermOrder::grevlex(), Limits::default()).unwrap()
}

fn saturated_basis() -> GroebnerBasis {
    let sys = saturate_weight(&generate_system(&WeightMode::Symbolic));
    buchberger(&sys, &TermOrder::grevlex(), Limits::default()).unwrap()
}

#[test]
fn weight0_basis_matches_oracle() {
    let g = weight0_basis();
    assert_eq!(g.len(), 64);
    assert_eq!(g.generators.iter().filter_map(|p| p.total_degree()).max(), Some(5));
    assert_eq!(sorted(&g), oracle_basis(WEIGHT0_BASIS, &g.order));
    assert!(g.satisfies_buchberger_criterion());
    assert!(g.is_reduced());
}

#[test]
fn saturated_basis_matches_oracle() {
    let g = saturated_basis();
    assert_eq!(g.len(), 39);
    assert_eq!(sorted(&g), oracle_basis(SATURATED_BASIS, &g.order));
    assert!(g.satisfies_buchberger_criterion());
}

#[test]
fn weight0_reduced_list_verdicts() {
    check_verdicts(&weight0_basis(), &published_weight0_reduced(), WEIGHT0_VERDICTS);
}

#[test]
fn saturated_reduced_list_verdicts() {
    check_verdicts(&saturated_basis(), &published_weighted_reduced(), SATURATED_VERDICTS);
}

#[test]
fn specific_non_members() {
    let g = weight0_basis();
    for text in ["a33 + a44", "a32", "a21", "a12", "a12*a23", "a34*a43 + a44^2", "a23*a34 + a24*a44"] {
        assert!(!g.contains(&Polynomial::parse(text).unwrap()), "{text}");
    }
    // what the true system does force: a12² = 0 (from the (e1, e1) slot)
    assert!(g.contains(&Polynomial::parse("a12^2").unwrap()));
    let sat = saturated_basis();
    assert!(!sat.contains(&Polynomial::parse("a23*l").unwrap()));
    assert!(sat.contains(&Polynomial::parse("a21").unwrap()));
}

fn check_converse(listing: PolySystem, saturate: bool, generated: &PolySystem, bits: &str) {
    let listing = if saturate { saturate_weight(&listing) } else { listing };
    let g = buchberger(&listing, &TermOrder::grevlex(), Limits::default()).unwrap();
    let got: String = generated.polys.iter().map(|lp| if g.contains(&lp.poly) { '1' } else { '0' }).collect();
    assert_eq!(got, bits);
}

#[test]
fn converse_containment_matches_oracle() {
    let sym = generate_system(&WeightMode::Symbolic);
    check_converse(published_weight0_reduced(), false, &sym.substitute(LAMBDA, &Scalar::zero()), WEIGHT0_CONVERSE);
    check_converse(published_weighted_reduced(), true, &sym, SATURATED_CONVERSE);
}

#[test]
fn buchberger_is_deterministic_and_input_order_invariant() {
    let sys = generate_system(&WeightMode::Zero);
    let a = weight0_basis();
    let mut reversed = PolySystem::new(None);
    for lp in sys.polys.iter().rev() {
        reversed.push(lp.label.clone(), lp.poly.clone());
    }
    let b = buchberger(&reversed, &TermOrder::grevlex(), Limits::default()).unwrap();
    assert_eq!(a.generators, b.generators);
    assert_eq!(a, weight0_basis());
}
