use core::fmt;

/// Position of a node on the identifier ring `Z_n`. One node per position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[repr(transparent)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<u32> for NodeId {
    fn from(v: u32) -> Self {
        NodeId(v)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Wrap-around distance `min(|u - v|, n - |u - v|)` on a ring of length `n`.
#[inline]
pub fn ring_distance(u: NodeId, v: NodeId, n: u32) -> u32 {
    debug_assert!(u.0 < n && v.0 < n);
    let diff = u.0.abs_diff(v.0);
    diff.min(n - diff)
}

/// Open ball `B_d(center) = { u : dist(u, center) < d }`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BallSpec {
    pub center: NodeId,
    pub radius: u32,
}

impl BallSpec {
    pub fn new(center: NodeId, radius: u32) -> Self {
        BallSpec { center, radius }
    }

    #[inline]
    pub fn contains(&self, u: NodeId, n: u32) -> bool {
        ring_distance(u, self.center, n) < self.radius
    }

    /// Members in ascending ring order starting at `center - radius + 1`.
    pub fn members(&self, n: u32) -> impl Iterator<Item = NodeId> + '_ {
        let span = if self.radius == 0 {
            0
        } else {
            (2 * self.radius as u64 - 1).min(n as u64) as u32
        };
        let start = (self.center.0 as u64 + n as u64
            - (self.radius.saturating_sub(1) as u64 % n as u64))
            % n as u64;
        (0..span).map(move |k| NodeId(((start + k as u64) % n as u64) as u32))
    }
}
