//! Monomial term orders.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::poly::{var_name, Monomial, NVARS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
}

impl FromStr for OrderKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(OrderKind::Lex),
            "grevlex" => Ok(OrderKind::Grevlex),
            other => Err(format!("unknown term order {other:?} (expected lex or grevlex)")),
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Lex => "lex",
            OrderKind::Grevlex => "grevlex",
        })
    }
}

/// A term order: lex or grevlex over the variables listed in `priority`,
/// most significant first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    kind: OrderKind,
    priority: [usize; NVARS],
}

impl TermOrder {
    /// `priority` must be a permutation of `0..NVARS`.
    pub fn new(kind: OrderKind, priority: [usize; NVARS]) -> Self {
        let mut seen = [false; NVARS];
        for &v in &priority {
            assert!(v < NVARS && !seen[v], "priority must be a permutation of the variables");
            seen[v] = true;
        }
        TermOrder { kind, priority }
    }

    /// Natural variable order `a11 > a12 > … > a44 > l > t`.
    pub fn natural(kind: OrderKind) -> Self {
        TermOrder::new(kind, std::array::from_fn(|i| i))
    }

    pub fn grevlex() -> Self {
        TermOrder::natural(OrderKind::Grevlex)
    }

    pub fn lex() -> Self {
        TermOrder::natural(OrderKind::Lex)
    }

    /// Natural order except that the listed variables come first, in the
    /// given sequence.
    pub fn with_leading(kind: OrderKind, leading: &[usize]) -> Self {
        let mut priority = Vec::with_capacity(NVARS);
        priority.extend_from_slice(leading);
        priority.extend((0..NVARS).filter(|v| !leading.contains(v)));
        TermOrder::new(kind, priority.try_into().expect("permutation of NVARS variables"))
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize; NVARS] {
        &self.priority
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &v in &self.priority {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        other => return other,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    other => return other,
                }
                for &v in self.priority.iter().rev() {
                    match a.exp(v).cmp(&b.exp(v)) {
                        Ordering::Equal => continue,
                        other => return other.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Human-readable descriptor, e.g. `grevlex(a11>a12>…>l>t)`.
    pub fn descriptor(&self) -> String {
        let names: Vec<String> = self.priority.iter().map(|&v| var_name(v)).collect();
        format!("{}({})", self.kind, names.join(">"))
    }
}

impl Default for TermOrder {
    fn default() -> Self {
        TermOrder::grevlex()
    }
}

impl Serialize for TermOrder {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Polynomial;
    use proptest::prelude::*;

    fn m(text: &str) -> Monomial {
        let p = Polynomial::parse(text).unwrap();
        let mono = *p.terms().next().unwrap().0;
        mono
    }

    #[test]
    fn grevlex_textbook_order() {
        // with x = a11 > y = a12 > z = a13
        let ord = TermOrder::grevlex();
        let chain = [
            "a11^3",
            "a11^2*a12",
            "a11*a12^2",
            "a12^3",
            "a11^2*a13",
            "a11*a12*a13",
            "a12^2*a13",
            "a11*a13^2",
            "a12*a13^2",
            "a13^3",
            "a11",
            "1",
        ];
        for w in chain.windows(2) {
            assert_eq!(ord.cmp(&m(w[0]), &m(w[1])), Ordering::Greater, "{} > {}", w[0], w[1]);
        }
    }

    #[test]
    fn lex_vs_grevlex() {
        let (a, b) = (m("a11"), m("a12^5"));
        assert_eq!(TermOrder::lex().cmp(&a, &b), Ordering::Greater);
        assert_eq!(TermOrder::grevlex().cmp(&a, &b), Ordering::Less);
    }

    #[test]
    fn leading_variables_reorder() {
        let ord = TermOrder::with_leading(OrderKind::Lex, &[crate::poly::SAT_VAR]);
        assert_eq!(ord.cmp(&m("t"), &m("a11^4")), Ordering::Greater);
        assert!(ord.descriptor().starts_with("lex(t>a11>"));
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        prop::array::uniform6(0u16..3).prop_map(|e| {
            let mut exps = [0u16; NVARS];
            for (k, x) in e.iter().enumerate() {
                exps[k * 3] = *x;
            }
            Monomial::from_exps(exps)
        })
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_well_founded(a in arb_mono(), b in arb_mono(), w in arb_mono(), lex in any::<bool>()) {
            let ord = if lex { TermOrder::lex() } else { TermOrder::grevlex() };
            prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&a.mul(&w), &b.mul(&w)));
            prop_assert_ne!(ord.cmp(&Monomial::one(), &a), Ordering::Greater);
            prop_assert_eq!(ord.cmp(&a, &b) == Ordering::Equal, a == b);
        }
    }
}
