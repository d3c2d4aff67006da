//! Shared workloads for the pipeline benchmarks.

use sqtile::origami::fixtures;
use sqtile::Origami;

pub fn surfaces() -> Vec<(&'static str, Origami)> {
    vec![("s3", fixtures::s3()), ("s4", fixtures::s4())]
}
