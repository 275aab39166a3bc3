use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::Formula;

/// Assignment of formulas to schema metavariables, keyed by metavariable index.
pub type MetaBinding = BTreeMap<u32, Formula>;

/// A formula whose atoms are metavariables: atom `k` plays the role of the
/// `k`-th schematic letter (`A`, `B`, `C`, ...).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Schema {
    pattern: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("metavariable {} is not bound", metavariable_name(*.0))]
    Unbound(u32),
}

/// `A`, `B`, ... `Z`, then `A26`, `A27`, ...
pub fn metavariable_name(index: u32) -> String {
    if index < 26 {
        char::from(b'A' + index as u8).to_string()
    } else {
        format!("A{index}")
    }
}

impl Schema {
    pub fn new(pattern: Formula) -> Schema {
        Schema { pattern }
    }

    /// Builds a schema from formula syntax, reading `p0` as `A`, `p1` as `B`
    /// and so on.
    pub fn parse(text: &str) -> Result<Schema, super::ParseError> {
        super::parse(text).map(Schema::new)
    }

    pub fn pattern(&self) -> &Formula {
        &self.pattern
    }

    pub fn metavariables(&self) -> std::collections::BTreeSet<u32> {
        self.pattern.atoms()
    }
}

impl fmt::Display for Schema {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Render through the formula printer, then swap atom names for letters.
        // Atoms are rendered highest index first so `p1` never clips `p10`.
        let mut text = self.pattern.to_string();
        let mut vars: Vec<u32> = self.metavariables().into_iter().collect();
        vars.sort_unstable_by(|a, b| b.cmp(a));
        for v in vars {
            text = text.replace(&format!("p{v}"), &metavariable_name(v));
        }
        f.write_str(&text)
    }
}

/// First-order matching of `f` against the schema. Returns the unique binding
/// under which the schema instantiates to `f`, if any.
pub fn match_schema(schema: &Schema, f: &Formula) -> Option<MetaBinding> {
    let mut binding = MetaBinding::new();
    if match_into(&schema.pattern, f, &mut binding) {
        Some(binding)
    } else {
        None
    }
}

fn match_into(pattern: &Formula, f: &Formula, binding: &mut MetaBinding) -> bool {
    use Formula as F;
    match (pattern, f) {
        (F::Atom(v), _) => match binding.get(v) {
            Some(bound) => bound == f,
            None => {
                binding.insert(*v, f.clone());
                true
            }
        },
        (F::Top, F::Top) | (F::Bottom, F::Bottom) => true,
        (F::Not(p), F::Not(g))
        | (F::Box(p), F::Box(g))
        | (F::Diamond(p), F::Diamond(g))
        | (F::Nabla(p), F::Nabla(g)) => match_into(p, g, binding),
        (F::And(p, q), F::And(g, h))
        | (F::Or(p, q), F::Or(g, h))
        | (F::Implies(p, q), F::Implies(g, h))
        | (F::Iff(p, q), F::Iff(g, h)) => match_into(p, g, binding) && match_into(q, h, binding),
        _ => false,
    }
}

/// Homomorphic substitution of the binding into the schema.
pub fn instantiate(schema: &Schema, binding: &MetaBinding) -> Result<Formula, SchemaError> {
    if let Some(v) = schema.metavariables().into_iter().find(|v| !binding.contains_key(v)) {
        return Err(SchemaError::Unbound(v));
    }
    Ok(schema.pattern.substitute(&|v| binding.get(&v).cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::arbitrary;
    use proptest::prelude::*;

    fn f(text: &str) -> Formula {
        text.parse().unwrap()
    }

    fn s(text: &str) -> Schema {
        Schema::parse(text).unwrap()
    }

    #[test]
    fn matches_substitution_instances() {
        let t = s("[]p0 -> p0");
        let b = match_schema(&t, &f("[](p0 & p1) -> p0 & p1")).unwrap();
        assert_eq!(b, MetaBinding::from([(0, f("p0 & p1"))]));
        assert_eq!(match_schema(&t, &f("[]p0 -> p1")), None);

        let five = s("<>p0 -> []<>p0");
        let b = match_schema(&five, &f("<>p2 -> []<>p2")).unwrap();
        assert_eq!(b, MetaBinding::from([(0, f("p2"))]));
    }

    #[test]
    fn repeated_metavariables_must_agree() {
        let pl1 = s("p0 -> p1 -> p0");
        assert!(match_schema(&pl1, &f("p3 -> p4 -> p3")).is_some());
        assert!(match_schema(&pl1, &f("p3 -> p4 -> p4")).is_none());
        // two metavariables may be bound to the same formula
        assert!(match_schema(&pl1, &f("p3 -> p3 -> p3")).is_some());
    }

    #[test]
    fn instantiate_examples() {
        let t = s("[]p0 -> p0");
        assert_eq!(
            instantiate(&t, &MetaBinding::from([(0, Formula::Top)])).unwrap(),
            f("[]true -> true")
        );
        let ax1 = s("nabla p0 & nabla p1 -> nabla(p0 & p1)");
        let b = MetaBinding::from([(0, f("p0")), (1, f("p1"))]);
        assert_eq!(
            instantiate(&ax1, &b).unwrap(),
            f("nabla p0 & nabla p1 -> nabla(p0 & p1)")
        );
        assert_eq!(
            instantiate(&s("p0"), &MetaBinding::from([(0, f("p3"))])).unwrap(),
            f("p3")
        );
    }

    #[test]
    fn instantiate_requires_total_binding() {
        let k = s("[](p0 -> p1) -> []p0 -> []p1");
        let partial = MetaBinding::from([(0, f("p0"))]);
        assert_eq!(instantiate(&k, &partial), Err(SchemaError::Unbound(1)));
    }

    #[test]
    fn display_uses_letters() {
        assert_eq!(
            s("[](p0 -> p1) -> []p0 -> []p1").to_string(),
            "[](A -> B) -> []A -> []B"
        );
        assert_eq!(s("p1 | p12").to_string(), "B | M");
        assert_eq!(s("p3 | p30").to_string(), "D | A30");
    }

    proptest! {
        #[test]
        fn matching_is_sound(
            pattern in arbitrary::formula(3, b"bdn"),
            a in arbitrary::formula(3, b"bdn"),
            b in arbitrary::formula(3, b"bdn"),
            c in arbitrary::formula(3, b"bdn"),
        ) {
            let schema = Schema::new(pattern);
            let full = MetaBinding::from([(0, a), (1, b), (2, c)]);
            let instance = instantiate(&schema, &full).unwrap();
            let found = match_schema(&schema, &instance).expect("instance must match");
            prop_assert_eq!(instantiate(&schema, &found).unwrap(), instance);
        }

        #[test]
        fn mismatches_return_none_or_sound_binding(
            pattern in arbitrary::formula(2, b"b"),
            target in arbitrary::formula(2, b"b"),
        ) {
            let schema = Schema::new(pattern);
            if let Some(b) = match_schema(&schema, &target) {
                prop_assert_eq!(instantiate(&schema, &b).unwrap(), target);
            }
        }
    }
}
