use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::degree::TriDegree;
use crate::resolution::{ExtClass, ExtTable};
use crate::steenrod::Profile;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedClass {
    pub class: ExtClass,
    /// How the name was pinned down.
    pub provenance: String,
}

/// Conventional names for classes, assigned only where the group is
/// one-dimensional.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NamedClassRegistry {
    entries: BTreeMap<String, NamedClass>,
    /// Names whose degree was out of range or not one-dimensional.
    pub unassigned: Vec<(String, TriDegree, Option<usize>)>,
}

const MOTIVIC: &[(&str, (i32, i32, i32))] = &[
    ("h0", (0, 1, 0)),
    ("h1", (1, 1, 1)),
    ("h2", (3, 1, 2)),
    ("h3", (7, 1, 4)),
    ("c0", (8, 3, 5)),
    ("Ph1", (9, 5, 5)),
    ("Ph2", (11, 5, 6)),
    ("d0", (14, 4, 8)),
    ("x3", (17, 4, 10)),
    ("tau_g", (20, 4, 11)),
    ("x4", (37, 8, 22)),
];

const A2_MOTIVIC: &[(&str, (i32, i32, i32))] = &[
    ("h0", (0, 1, 0)),
    ("h1", (1, 1, 1)),
    ("h2", (3, 1, 2)),
    ("c0", (8, 3, 5)),
    ("Ph1", (9, 5, 5)),
    ("d0", (14, 4, 8)),
    ("e0", (17, 4, 10)),
    ("g", (20, 4, 12)),
];

const CLASSICAL: &[(&str, (i32, i32, i32))] = &[
    ("h0", (0, 1, 0)),
    ("h1", (1, 1, 0)),
    ("h2", (3, 1, 0)),
    ("h3", (7, 1, 0)),
    ("h1^3", (3, 3, 0)),
    ("c0", (8, 3, 0)),
    ("Ph1", (9, 5, 0)),
    ("P h1^3", (11, 7, 0)),
    ("d0", (14, 4, 0)),
    ("e0", (17, 4, 0)),
    ("P^2 h1^3", (19, 11, 0)),
    ("g", (20, 4, 0)),
    ("P^3 h1^3", (27, 15, 0)),
];

impl NamedClassRegistry {
    /// The standard names for the algebra of `table`, where they apply.
    pub fn standard(table: &ExtTable) -> Self {
        let spec = table.spec();
        let list = match (spec.is_motivic(), spec.profile) {
            (true, Profile::Full) => MOTIVIC,
            (true, _) => A2_MOTIVIC,
            (false, _) => CLASSICAL,
        };
        let mut reg = NamedClassRegistry::default();
        for &(name, (s, f, w)) in list {
            let d = TriDegree::new(s, f, w);
            match table.classes(d) {
                Ok(cs) if cs.len() == 1 => {
                    let class = cs.into_iter().next().expect("one class").named(name);
                    reg.insert(name, class, "only nonzero class in its degree");
                }
                Ok(cs) => reg.unassigned.push((name.to_string(), d, Some(cs.len()))),
                Err(_) => reg.unassigned.push((name.to_string(), d, None)),
            }
        }
        reg
    }

    pub fn insert(&mut self, name: &str, class: ExtClass, provenance: &str) {
        self.entries.insert(
            name.to_string(),
            NamedClass {
                class: class.named(name),
                provenance: provenance.to_string(),
            },
        );
    }

    pub fn get(&self, name: &str) -> Option<&ExtClass> {
        self.entries.get(name).map(|e| &e.class)
    }

    pub fn entry(&self, name: &str) -> Option<&NamedClass> {
        self.entries.get(name)
    }

    /// Name of the class at `d`, if one was assigned there.
    pub fn name_at(&self, d: TriDegree) -> Option<&str> {
        self.entries
            .iter()
            .find(|(_, e)| e.class.degree == d)
            .map(|(n, _)| n.as_str())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &NamedClass)> {
        self.entries.iter()
    }
}
