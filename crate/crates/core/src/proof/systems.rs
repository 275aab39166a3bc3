//! Axiom schemas of the four deductive systems, plus a catalog of derived
//! schemas used as semantic test targets.
//!
//! Schemas are written in formula syntax with `p0`, `p1`, `p2` standing for
//! the metavariables `A`, `B`, `C`.

use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use crate::formula::{Dialect, Schema};

/// A Hilbert system: a fixed schema list plus its primitive rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemId {
    /// Classical propositional logic.
    Lpc,
    /// S5 with box and diamond.
    S5,
    /// The plausibility logic over `nabla`.
    LNabla,
    /// The plausibility logic restated with box.
    LPBox,
}

/// Primitive inference rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Modus ponens.
    Mp,
    /// From `A <-> B` infer `[]A <-> []B`.
    Re,
    /// From `A -> B` infer `nabla A -> nabla B`.
    RNabla,
    /// From `A` infer `[]A`.
    Rn,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Mp => "mp",
            Rule::Re => "re",
            Rule::RNabla => "rnabla",
            Rule::Rn => "rn",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The classical base shared by every system.
const LPC_BASE: &[(&str, &str)] = &[
    ("PL1", "p0 -> p1 -> p0"),
    ("PL2", "(p0 -> p1 -> p2) -> (p0 -> p1) -> p0 -> p2"),
    ("PL3", "(~p1 -> ~p0) -> p0 -> p1"),
    ("PL4", "p0 & p1 -> p0"),
    ("PL5", "p0 & p1 -> p1"),
    ("PL6", "p0 -> p1 -> p0 & p1"),
    ("PL7", "p0 -> p0 | p1"),
    ("PL8", "p1 -> p0 | p1"),
    ("PL9", "(p0 -> p2) -> (p1 -> p2) -> p0 | p1 -> p2"),
    ("PL10", "(p0 <-> p1) -> p0 -> p1"),
    ("PL11", "(p0 <-> p1) -> p1 -> p0"),
    ("PL12", "(p0 -> p1) -> (p1 -> p0) -> (p0 <-> p1)"),
    ("PL13", "true"),
    ("PL14", "false -> p0"),
];

const S5_AXIOMS: &[(&str, &str)] = &[
    ("T", "[]p0 -> p0"),
    ("5", "<>p0 -> []<>p0"),
    ("K", "[](p0 -> p1) -> []p0 -> []p1"),
    ("DfDia", "<>p0 <-> ~[]~p0"),
];

const LNABLA_AXIOMS: &[(&str, &str)] = &[
    ("Ax1", "nabla p0 & nabla p1 -> nabla(p0 & p1)"),
    ("Ax2", "nabla(p0 | ~p0)"),
    ("Ax3", "nabla p0 -> p0"),
];

const LPBOX_AXIOMS: &[(&str, &str)] = &[
    ("C", "[]p0 & []p1 -> [](p0 & p1)"),
    ("H", "[]p0 | []p1 -> [](p0 | p1)"),
    ("T", "[]p0 -> p0"),
    ("N", "[]true"),
];

/// Derived S5 schemas, checked semantically rather than used as axioms.
pub const S5_DERIVED: &[(&str, &str)] = &[
    ("TDia", "p0 -> <>p0"),
    ("D", "[]p0 -> <>p0"),
    ("B", "p0 -> []<>p0"),
    ("4", "[]p0 -> [][]p0"),
    ("4Dia", "<><>p0 -> <>p0"),
    ("BDia", "<>[]p0 -> p0"),
    ("5Dia", "<>[]p0 -> []p0"),
    ("DfBox", "[]p0 <-> ~<>~p0"),
    ("N", "[]true"),
    ("M", "[](p0 & p1) -> []p0 & []p1"),
    ("C", "[]p0 & []p1 -> [](p0 & p1)"),
];

/// Derived theorems of the `nabla` logic, numbered as in its literature.
pub const NABLA_DERIVED: &[(&str, &str)] = &[
    ("i", "~nabla false"),
    ("ii", "nabla p0 -> nabla(p0 | p1)"),
    ("iv", "p0 -> ~nabla ~p0"),
    ("v", "nabla p0 -> ~nabla ~p0"),
    ("vi", "nabla ~p0 -> ~nabla p0"),
];

fn build(groups: &[&[(&str, &str)]]) -> Vec<(String, Schema)> {
    groups
        .iter()
        .flat_map(|g| g.iter())
        .map(|(id, text)| {
            let schema = Schema::parse(text).expect("built-in schema parses");
            (id.to_string(), schema)
        })
        .collect()
}

static LPC: LazyLock<Vec<(String, Schema)>> = LazyLock::new(|| build(&[LPC_BASE]));
static S5: LazyLock<Vec<(String, Schema)>> = LazyLock::new(|| build(&[LPC_BASE, S5_AXIOMS]));
static LNABLA: LazyLock<Vec<(String, Schema)>> = LazyLock::new(|| build(&[LPC_BASE, LNABLA_AXIOMS]));
static LPBOX: LazyLock<Vec<(String, Schema)>> = LazyLock::new(|| build(&[LPC_BASE, LPBOX_AXIOMS]));

/// Parses a schema table such as [`S5_DERIVED`].
pub fn catalog(table: &[(&str, &str)]) -> Vec<(String, Schema)> {
    build(&[table])
}

impl SystemId {
    pub const ALL: [SystemId; 4] = [SystemId::Lpc, SystemId::S5, SystemId::LNabla, SystemId::LPBox];

    pub fn name(self) -> &'static str {
        match self {
            SystemId::Lpc => "LPC",
            SystemId::S5 => "S5",
            SystemId::LNabla => "LNabla",
            SystemId::LPBox => "LPBox",
        }
    }

    pub fn dialect(self) -> Dialect {
        match self {
            SystemId::Lpc => Dialect::Classical,
            SystemId::S5 => Dialect::S5,
            SystemId::LNabla => Dialect::NablaSystem,
            SystemId::LPBox => Dialect::BoxSystem,
        }
    }

    /// Axiom schemas in documented order: the classical base, then the
    /// modal axioms.
    pub fn schemas(self) -> &'static [(String, Schema)] {
        match self {
            SystemId::Lpc => &LPC,
            SystemId::S5 => &S5,
            SystemId::LNabla => &LNABLA,
            SystemId::LPBox => &LPBOX,
        }
    }

    pub fn schema(self, id: &str) -> Option<&'static Schema> {
        self.schemas().iter().find(|(k, _)| k == id).map(|(_, s)| s)
    }

    /// Primitive rules, with S5's `re` controlled by `s5_re`.
    pub fn has_rule(self, rule: Rule, s5_re: bool) -> bool {
        match rule {
            Rule::Mp => true,
            Rule::Re => self == SystemId::LPBox || (self == SystemId::S5 && s5_re),
            Rule::RNabla => self == SystemId::LNabla,
            Rule::Rn => self == SystemId::S5,
        }
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SystemId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SystemId::ALL
            .into_iter()
            .find(|sys| sys.name() == s)
            .ok_or_else(|| format!("unknown system `{s}` (expected LPC, S5, LNabla or LPBox)"))
    }
}

pub fn list_axiom_schemas(system: SystemId) -> &'static [(String, Schema)] {
    system.schemas()
}
