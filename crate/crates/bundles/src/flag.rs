use serde::{Deserialize, Serialize};

use polyalg::ddz;

use crate::{BundleError, MeromorphicBundle};

/// Nested bundles `members[k]` sitting at index `lo + k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoloFlag {
    pub lo: i64,
    pub members: Vec<MeromorphicBundle>,
}

impl HoloFlag {
    pub fn new(lo: i64, members: Vec<MeromorphicBundle>) -> Self {
        HoloFlag { lo, members }
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.members.len() as i64 - 1
    }

    pub fn get(&self, i: i64) -> Option<&MeromorphicBundle> {
        usize::try_from(i - self.lo).ok().and_then(|k| self.members.get(k))
    }

    pub fn top(&self) -> &MeromorphicBundle {
        self.members.last().expect("flags are non-empty")
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.members.iter().map(MeromorphicBundle::rank).collect()
    }

    pub fn is_nested(&self) -> Result<bool, BundleError> {
        for w in self.members.windows(2) {
            if !w[1].contains_bundle(&w[0])? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Every frame column of each member and its derivative lie in the next member.
pub fn is_superhorizontal(flag: &HoloFlag) -> Result<bool, BundleError> {
    for w in flag.members.windows(2) {
        for v in w[0].frame() {
            if !w[1].contains(v)? || !w[1].contains(&ddz(v))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
