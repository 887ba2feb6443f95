/// Search budgets and parallelism shared by every exhaustive routine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of search nodes an enumeration may visit.
    pub node_cap: u64,
    /// Worker threads; `None` uses the global rayon pool.
    pub workers: Option<usize>,
}

pub const DEFAULT_NODE_CAP: u64 = 100_000_000;

/// Environment variable overriding [`DEFAULT_NODE_CAP`].
pub const NODE_CAP_ENV: &str = "FRIEZELAB_NODE_CAP";

impl Default for Limits {
    fn default() -> Self {
        Limits { node_cap: DEFAULT_NODE_CAP, workers: None }
    }
}

impl Limits {
    /// Defaults, with the node cap taken from `FRIEZELAB_NODE_CAP` if set.
    pub fn from_env() -> Self {
        let node_cap = std::env::var(NODE_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().replace('_', "").parse().ok())
            .unwrap_or(DEFAULT_NODE_CAP);
        Limits { node_cap, workers: None }
    }

    pub fn with_node_cap(mut self, cap: u64) -> Self {
        self.node_cap = cap;
        self
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = Some(workers.max(1));
        self
    }

    /// Runs `f` inside a pool with the configured number of workers.
    pub(crate) fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            None => f(),
            Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
                Ok(pool) => pool.install(f),
                Err(_) => f(),
            },
        }
    }
}
