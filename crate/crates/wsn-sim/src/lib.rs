//! A deterministic discrete-event simulator and protocol library for
//! wireless-sensor-network routing security.
//!
//! The crate has three layers:
//!
//! * primitives and substrate: [`crypto`], [`model`] (virtual time, radio
//!   topology, loose clocks, energy accounting);
//! * protocol state machines: [`mutesla`] (broadcast authentication with
//!   delayed key disclosure), [`snep`] (pairwise counter-mode sessions),
//!   [`merkle`] (hash-tree public-key certification), [`routing`]
//!   (AODV-lite discovery plus the FRq/FRp single-blackhole check),
//!   [`grayhole`] (DRI-table cooperative grayhole detection), [`nms`]
//!   (monitored single-path routing);
//! * experiment plumbing: [`adversary`] models, the integrated [`engine`],
//!   and the [`harness`] (scenario files, metrics, sweeps).
//!
//! Every simulation run is a pure function of the scenario and its seed:
//! identical inputs give byte-identical traces and metrics.

pub mod crypto;
pub mod mutesla;
pub mod merkle;
pub mod snep;
pub mod model;
