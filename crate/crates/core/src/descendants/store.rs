use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cell::RefCell;

use super::{DescendantKey, Rational};

/// Backing map for the descendant cache.
///
/// Values are a pure function of the key, so a racing duplicate insert writes
/// the same value and last-write-wins is sound.
pub trait DescendantStore {
    fn get(&self, key: &DescendantKey) -> Option<Rational>;

    fn insert(&self, key: DescendantKey, value: Rational);

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Every cached record, in key order.
    fn snapshot(&self) -> Vec<(DescendantKey, Rational)>;
}

/// Single-threaded store.
#[derive(Default, Debug)]
pub struct LocalStore {
    map: RefCell<BTreeMap<DescendantKey, Rational>>,
}

impl LocalStore {
    pub fn new() -> Self {
        Self::default()
    }
}

impl DescendantStore for LocalStore {
    fn get(&self, key: &DescendantKey) -> Option<Rational> {
        self.map.borrow().get(key).cloned()
    }

    fn insert(&self, key: DescendantKey, value: Rational) {
        self.map.borrow_mut().insert(key, value);
    }

    fn len(&self) -> usize {
        self.map.borrow().len()
    }

    fn snapshot(&self) -> Vec<(DescendantKey, Rational)> {
        self.map
            .borrow()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

impl<S: DescendantStore + ?Sized> DescendantStore for &S {
    fn get(&self, key: &DescendantKey) -> Option<Rational> {
        (**self).get(key)
    }

    fn insert(&self, key: DescendantKey, value: Rational) {
        (**self).insert(key, value)
    }

    fn len(&self) -> usize {
        (**self).len()
    }

    fn snapshot(&self) -> Vec<(DescendantKey, Rational)> {
        (**self).snapshot()
    }
}
