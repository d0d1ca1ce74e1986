use std::collections::HashMap;
use std::sync::RwLock;

use psi_extrema::descendants::DescendantStore;
use psi_extrema::{DescendantKey, Rational};

/// Descendant cache shared across threads. Readers run concurrently; inserts
/// take the write lock briefly.
#[derive(Default, Debug)]
pub struct SharedStore {
    map: RwLock<HashMap<DescendantKey, Rational>>,
}

impl SharedStore {
    pub fn new() -> Self {
        Self::default()
    }
}

impl DescendantStore for SharedStore {
    fn get(&self, key: &DescendantKey) -> Option<Rational> {
        self.map
            .read()
            .expect("cache lock poisoned")
            .get(key)
            .cloned()
    }

    fn insert(&self, key: DescendantKey, value: Rational) {
        self.map
            .write()
            .expect("cache lock poisoned")
            .insert(key, value);
    }

    fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }

    fn snapshot(&self) -> Vec<(DescendantKey, Rational)> {
        let mut records: Vec<_> = self
            .map
            .read()
            .expect("cache lock poisoned")
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        records.sort();
        records
    }
}
