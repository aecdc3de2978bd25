use std::collections::HashMap;
use std::hash::Hash;
use std::sync::{Arc, OnceLock, RwLock};

/// Process-wide memo table. Each key is published at most once; a reader sees
/// either no entry or the final value. Values are computed outside the lock,
/// so two threads racing on the same key may both compute it, and the first
/// insertion wins.
pub(crate) struct Memo<K, V> {
    inner: OnceLock<RwLock<HashMap<K, Arc<V>>>>,
}

impl<K: Eq + Hash + Clone, V> Memo<K, V> {
    pub(crate) const fn new() -> Self {
        Memo {
            inner: OnceLock::new(),
        }
    }

    fn table(&self) -> &RwLock<HashMap<K, Arc<V>>> {
        self.inner.get_or_init(|| RwLock::new(HashMap::new()))
    }

    pub(crate) fn get_or_insert_with(&self, key: &K, f: impl FnOnce() -> V) -> Arc<V> {
        if let Some(v) = self.table().read().expect("memo lock poisoned").get(key) {
            return Arc::clone(v);
        }
        let value = Arc::new(f());
        let mut w = self.table().write().expect("memo lock poisoned");
        Arc::clone(w.entry(key.clone()).or_insert(value))
    }

    pub(crate) fn try_get_or_insert_with<E>(
        &self,
        key: &K,
        f: impl FnOnce() -> Result<V, E>,
    ) -> Result<Arc<V>, E> {
        if let Some(v) = self.table().read().expect("memo lock poisoned").get(key) {
            return Ok(Arc::clone(v));
        }
        let value = Arc::new(f()?);
        let mut w = self.table().write().expect("memo lock poisoned");
        Ok(Arc::clone(w.entry(key.clone()).or_insert(value)))
    }
}
