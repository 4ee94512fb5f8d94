/// Result of an exact reconfiguration search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    /// A shortest sequence.
    Found(T),
    /// The source's whole component was explored without meeting the target.
    NotReconfigurable,
    /// `max_len` cut the search off before the component was exhausted.
    BudgetExceeded,
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Outcome::Found(_))
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::NotReconfigurable => Outcome::NotReconfigurable,
            Outcome::BudgetExceeded => Outcome::BudgetExceeded,
        }
    }
}

/// Bounds on an exact search. `max_len` truncates BFS at that depth;
/// exceeding `max_states` aborts with a resource error.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_len: Option<usize>,
    pub max_states: Option<usize>,
}

impl SearchLimits {
    pub fn unbounded() -> Self {
        Self::default()
    }

    pub fn with_max_len(max_len: usize) -> Self {
        SearchLimits { max_len: Some(max_len), max_states: None }
    }
}
