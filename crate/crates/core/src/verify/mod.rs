//! Executable statement registry, tightness checks, exhaustive scans and the
//! seeded counterexample hunter.

mod averaging;
pub mod hunt;
mod registry;
pub mod sample;
pub mod scan;
pub mod tightness;

pub use averaging::averaging_lower_bound;
pub use registry::{assess, check, Arity, Entry, Instance, Params, Status, Verdict};

use sha2::{Digest, Sha256};

use crate::hgf;

/// Hex prefix of the SHA-256 of the canonical serialization.
pub fn instance_digest(instance: &Instance) -> String {
    let mut hasher = Sha256::new();
    match instance {
        Instance::Single(h) => hasher.update(hgf::serialize(h)),
        Instance::Pair(a, b) => {
            hasher.update(hgf::serialize(a));
            hasher.update(b"--\n");
            hasher.update(hgf::serialize(b));
        }
        Instance::Colored(fams) => {
            for (k, f) in fams.iter().enumerate() {
                if k > 0 {
                    hasher.update(b"--\n");
                }
                let text =
                    hgf::serialize_colored(f.base(), f.colors()).expect("colors of a validated family are positive");
                hasher.update(text);
            }
        }
    }
    hex::encode(&hasher.finalize()[..8])
}
