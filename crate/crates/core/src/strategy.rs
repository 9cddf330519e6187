//! Named group-law constructions, selectable at runtime.

use std::collections::BTreeMap;

use crate::bch::bch_group_law;
use crate::error::Result;
use crate::fgl::{group_law_from_uea, GroupLaw};
use crate::liealg::LieAlgebra;

pub trait GroupLawConstruction: Send + Sync {
    fn name(&self) -> &'static str;
    fn description(&self) -> &'static str;
    fn construct(&self, g: &LieAlgebra, order: usize) -> Result<GroupLaw>;
}

/// Transpose of the multiplication of `U(g)`.
pub struct DualPairing;

impl GroupLawConstruction for DualPairing {
    fn name(&self) -> &'static str {
        "dual"
    }

    fn description(&self) -> &'static str {
        "dual of the enveloping algebra under the divided-power pairing"
    }

    fn construct(&self, g: &LieAlgebra, order: usize) -> Result<GroupLaw> {
        group_law_from_uea(g, order)
    }
}

/// `log(exp X exp Y)` in `U(g)`.
pub struct BchExpLog;

impl GroupLawConstruction for BchExpLog {
    fn name(&self) -> &'static str {
        "bch"
    }

    fn description(&self) -> &'static str {
        "Baker-Campbell-Hausdorff series via exp/log in the enveloping algebra"
    }

    fn construct(&self, g: &LieAlgebra, order: usize) -> Result<GroupLaw> {
        bch_group_law(g, order)
    }
}

pub struct Registry {
    entries: BTreeMap<&'static str, Box<dyn GroupLawConstruction>>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry {
            entries: BTreeMap::new(),
        }
    }

    pub fn register(&mut self, c: Box<dyn GroupLawConstruction>) {
        self.entries.insert(c.name(), c);
    }

    pub fn get(&self, name: &str) -> Option<&dyn GroupLawConstruction> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }
}

impl Default for Registry {
    fn default() -> Self {
        let mut r = Registry::empty();
        r.register(Box::new(DualPairing));
        r.register(Box::new(BchExpLog));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::standard::heisenberg;

    #[test]
    fn default_registry() {
        let r = Registry::default();
        assert_eq!(r.names().collect::<Vec<_>>(), ["bch", "dual"]);
        assert!(r.get("nope").is_none());
        let g = heisenberg();
        let a = r.get("dual").unwrap().construct(&g, 3).unwrap();
        let b = r.get("bch").unwrap().construct(&g, 3).unwrap();
        assert_eq!(a, b);
    }
}
