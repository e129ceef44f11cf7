//! Events raised by the time integrators.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    /// Two point vortices or two filaments met.
    Collision,
    /// The polygon profile reached zero.
    Vanish,
    /// The time integrator produced a non-finite state.
    Breakdown,
    /// Self-similar radius reached zero.
    Collapse,
    /// Self-similar radius diverged.
    BlowUp,
}

impl EventKind {
    pub fn name(self) -> &'static str {
        match self {
            EventKind::Collision => "collision",
            EventKind::Vanish => "vanish",
            EventKind::Breakdown => "breakdown",
            EventKind::Collapse => "collapse",
            EventKind::BlowUp => "blowup",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Event<T> {
    pub kind: EventKind,
    pub time: T,
    /// Pair of vortices or filaments involved.
    pub pair: Option<(usize, usize)>,
    /// Position along the filament.
    pub sigma: Option<T>,
    /// Monitored quantity at the event (separation, ratio or modulus).
    pub value: T,
}
