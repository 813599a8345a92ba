use super::Tick;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ScheduleError {
    #[error("cannot schedule at tick {requested}, current time is {now}")]
    IntoThePast { requested: Tick, now: Tick },
}

/// Deterministic event queue: events pop strictly in `(fire_time, sequence)`
/// order, with the sequence number assigned monotonically at scheduling time.
/// Same-tick events therefore fire in scheduling order.
#[derive(Debug)]
pub struct EventQueue<A> {
    heap: BinaryHeap<Reverse<Entry<A>>>,
    next_seq: u64,
    now: Tick,
}

#[derive(Debug)]
struct Entry<A> {
    fire_time: Tick,
    sequence: u64,
    action: A,
}

impl<A> PartialEq for Entry<A> {
    fn eq(&self, other: &Self) -> bool {
        self.fire_time == other.fire_time && self.sequence == other.sequence
    }
}
impl<A> Eq for Entry<A> {}
impl<A> PartialOrd for Entry<A> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl<A> Ord for Entry<A> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.fire_time, self.sequence).cmp(&(other.fire_time, other.sequence))
    }
}

impl<A> Default for EventQueue<A> {
    fn default() -> Self {
        Self::new()
    }
}

impl<A> EventQueue<A> {
    pub fn new() -> Self {
        EventQueue {
            heap: BinaryHeap::new(),
            next_seq: 0,
            now: 0,
        }
    }

    pub fn now(&self) -> Tick {
        self.now
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn schedule(&mut self, fire_time: Tick, action: A) -> Result<(), ScheduleError> {
        if fire_time < self.now {
            return Err(ScheduleError::IntoThePast {
                requested: fire_time,
                now: self.now,
            });
        }
        let sequence = self.next_seq;
        self.next_seq += 1;
        self.heap.push(Reverse(Entry {
            fire_time,
            sequence,
            action,
        }));
        Ok(())
    }

    /// Pop the next event, advancing virtual time to its fire time.
    /// Returns `None` at end of simulation (empty queue).
    pub fn advance(&mut self) -> Option<(Tick, A)> {
        let Reverse(e) = self.heap.pop()?;
        debug_assert!(e.fire_time >= self.now);
        self.now = e.fire_time;
        Some((e.fire_time, e.action))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn pops_in_time_order() {
        let mut q = EventQueue::new();
        q.schedule(5, "a").unwrap();
        q.schedule(3, "b").unwrap();
        assert_eq!(q.advance(), Some((3, "b")));
        assert_eq!(q.advance(), Some((5, "a")));
        assert_eq!(q.advance(), None);
    }

    #[test]
    fn same_tick_fires_in_scheduling_order() {
        let mut q = EventQueue::new();
        q.schedule(7, 1).unwrap();
        q.schedule(7, 2).unwrap();
        q.schedule(7, 3).unwrap();
        assert_eq!(q.advance(), Some((7, 1)));
        assert_eq!(q.advance(), Some((7, 2)));
        assert_eq!(q.advance(), Some((7, 3)));
    }

    #[test]
    fn rejects_scheduling_into_the_past() {
        let mut q = EventQueue::new();
        q.schedule(10, ()).unwrap();
        q.advance();
        assert_eq!(
            q.schedule(9, ()),
            Err(ScheduleError::IntoThePast {
                requested: 9,
                now: 10
            })
        );
        // Scheduling at the current tick is allowed.
        q.schedule(10, ()).unwrap();
    }

    #[test]
    fn replay_of_random_events_is_identical() {
        let run = |seed: u64| -> Vec<(u64, u32)> {
            let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
            let mut q = EventQueue::new();
            let mut out = Vec::new();
            for i in 0..10_000u32 {
                q.schedule(rng.random_range(0..1000), i).unwrap();
            }
            while let Some(ev) = q.advance() {
                out.push(ev);
            }
            out
        };
        let a = run(42);
        let b = run(42);
        assert_eq!(a, b);
        // Time never decreases and ties respect scheduling order.
        for w in a.windows(2) {
            assert!(w[0].0 < w[1].0 || (w[0].0 == w[1].0 && w[0].1 < w[1].1));
        }
    }
}
