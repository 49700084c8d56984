//! Shared computation state: Kostka matrices, target tables and skew weight
//! columns, each computed at most once per key.

use std::collections::HashMap;
use std::hash::Hash;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::kschur::KostkaMatrix;
use crate::ktableaux::TargetTable;
use crate::partition::{in_pi, Partition};

/// Per-key memo where concurrent requests for the same key wait for a single
/// computation instead of repeating it.
type Slot<V> = Arc<OnceLock<Result<Arc<V>>>>;

pub(crate) struct SingleFlight<K, V> {
    slots: Mutex<HashMap<K, Slot<V>>>,
}

impl<K: Eq + Hash + Clone, V> SingleFlight<K, V> {
    pub(crate) fn new() -> Self {
        SingleFlight {
            slots: Mutex::new(HashMap::new()),
        }
    }

    pub(crate) fn get_or_compute(&self, key: &K, compute: impl FnOnce() -> Result<V>) -> Result<Arc<V>> {
        let slot = {
            let mut slots = self.slots.lock().unwrap();
            slots.entry(key.clone()).or_default().clone()
        };
        slot.get_or_init(|| compute().map(Arc::new)).clone()
    }

    pub(crate) fn len(&self) -> usize {
        self.slots.lock().unwrap().len()
    }
}

/// Which final shapes a family of skew counts is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scope {
    /// Every k-bounded partition of the degree.
    All,
    /// Only partitions in `Π^{ℓn}` (the ones that survive reduction in the
    /// quantum cohomology of the Grassmannian).
    Pi { l: usize, n: usize },
}

impl Scope {
    pub(crate) fn admits(self, nu: &Partition) -> Result<bool> {
        match self {
            Scope::All => Ok(true),
            Scope::Pi { l, n } => in_pi(nu, l, n),
        }
    }
}

type ColumnKey = (usize, Scope, Partition, Vec<usize>);

/// Holds every memo table. Cheap to create; share one per workload.
pub struct Context {
    cache_dir: Option<PathBuf>,
    pub(crate) kostka: SingleFlight<(usize, usize), KostkaMatrix>,
    targets: SingleFlight<(usize, usize, Scope), TargetTable>,
    columns: SingleFlight<ColumnKey, Vec<u128>>,
}

impl Default for Context {
    fn default() -> Self {
        Context::new()
    }
}

impl Context {
    /// Memory-only context.
    pub fn new() -> Self {
        Context {
            cache_dir: None,
            kostka: SingleFlight::new(),
            targets: SingleFlight::new(),
            columns: SingleFlight::new(),
        }
    }

    /// Context that also reads and writes Kostka matrices under `dir`.
    pub fn with_cache_dir(dir: impl Into<PathBuf>) -> Self {
        Context {
            cache_dir: Some(dir.into()),
            ..Context::new()
        }
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// Number of Kostka matrices held in memory.
    pub fn matrices_in_memory(&self) -> usize {
        self.kostka.len()
    }

    pub(crate) fn targets(&self, k: usize, degree: usize, scope: Scope) -> Result<Arc<TargetTable>> {
        self.targets.get_or_compute(&(k, degree, scope), || {
            let all = TargetTable::new(k, degree)?;
            if scope == Scope::All {
                return Ok(all);
            }
            let mut keep = Vec::new();
            for (nu, core) in all.entries() {
                if scope.admits(nu)? {
                    keep.push((nu.clone(), core.clone()));
                }
            }
            Ok(TargetTable::from_entries(k, degree, keep))
        })
    }

    /// `K^{(k)}_{ν/μ,α}` for every `ν` in the target table of degree
    /// `|μ| + |α|`, aligned with its entries.
    pub(crate) fn skew_column(&self, k: usize, scope: Scope, mu: &Partition, alpha: &[usize]) -> Result<Arc<Vec<u128>>> {
        let key = (k, scope, mu.clone(), alpha.to_vec());
        self.columns.get_or_compute(&key, || {
            let degree = mu.degree() + alpha.iter().sum::<usize>();
            let table = self.targets(k, degree, scope)?;
            table.column(mu, alpha)
        })
    }
}
