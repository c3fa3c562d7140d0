use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use lattice_core::{chi1, chi2, flag_type, grassmannian_target, FlagType, LatticeElement, Target};

use crate::{check_n, EnumError, Mode};

/// One symmetry orbit, annotated through its representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Lexicographically least member.
    pub representative: LatticeElement,
    /// Sorted; includes the representative.
    pub members: Vec<LatticeElement>,
    pub support: Vec<usize>,
    pub target: Target,
    pub flag_type: FlagType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSet", into = "RawSet")]
pub struct CanonicalSet {
    pub n: usize,
    pub mode: Mode,
    /// Sorted lexicographically.
    pub elements: Vec<LatticeElement>,
    /// Sorted by representative.
    pub orbits: Vec<Orbit>,
}

impl CanonicalSet {
    pub fn representatives(&self) -> Vec<&LatticeElement> {
        self.orbits.iter().map(|o| &o.representative).collect()
    }

    pub fn orbit_of(&self, xi: &LatticeElement) -> Option<&Orbit> {
        self.orbits.iter().find(|o| o.members.contains(xi))
    }

    pub fn contains(&self, xi: &LatticeElement) -> bool {
        self.elements.binary_search(xi).is_ok()
    }
}

fn generators(xi: &LatticeElement) -> Vec<LatticeElement> {
    let mut g = vec![chi1(xi)];
    if xi.n() % 2 == 1 {
        g.push(chi2(xi).expect("odd n"));
    }
    g
}

fn annotate(members: Vec<LatticeElement>) -> Result<Orbit, EnumError> {
    let representative = members[0].clone();
    Ok(Orbit {
        support: representative.support(),
        target: grassmannian_target(&representative)?,
        flag_type: flag_type(&representative)?,
        representative,
        members,
    })
}

/// Splits `elements` into orbits of the group generated by `chi1` (and `chi2`
/// for odd `n`), walking only through elements of the given set.
pub fn quotient_by_symmetry(n: usize, mode: Mode, elements: &[LatticeElement]) -> Result<CanonicalSet, EnumError> {
    check_n(n)?;
    if let Some(x) = elements.iter().find(|x| x.n() != n) {
        return Err(EnumError::MixedN { expected: n, got: x.n() });
    }
    let set: BTreeSet<LatticeElement> = elements.iter().cloned().collect();
    let mut seen = BTreeSet::new();
    let mut orbits = Vec::new();
    for start in &set {
        if seen.contains(start) {
            continue;
        }
        let mut members = BTreeSet::new();
        let mut queue = VecDeque::from([start.clone()]);
        while let Some(x) = queue.pop_front() {
            if !members.insert(x.clone()) {
                continue;
            }
            queue.extend(generators(&x).into_iter().filter(|y| set.contains(y)));
        }
        seen.extend(members.iter().cloned());
        orbits.push(annotate(members.into_iter().collect())?);
    }
    Ok(CanonicalSet { n, mode, elements: set.into_iter().collect(), orbits })
}

#[derive(Serialize, Deserialize)]
struct RawOrbit {
    representative: Vec<i64>,
    members: Vec<Vec<i64>>,
    support: Vec<usize>,
    target: Target,
    flag_type: FlagType,
}

#[derive(Serialize, Deserialize)]
struct RawSet {
    n: usize,
    mode: Mode,
    orbits: Vec<RawOrbit>,
}

impl From<CanonicalSet> for RawSet {
    fn from(s: CanonicalSet) -> Self {
        RawSet {
            n: s.n,
            mode: s.mode,
            orbits: s
                .orbits
                .into_iter()
                .map(|o| RawOrbit {
                    representative: o.representative.coeffs().to_vec(),
                    members: o.members.iter().map(|m| m.coeffs().to_vec()).collect(),
                    support: o.support,
                    target: o.target,
                    flag_type: o.flag_type,
                })
                .collect(),
        }
    }
}

impl TryFrom<RawSet> for CanonicalSet {
    type Error = EnumError;
    fn try_from(raw: RawSet) -> Result<Self, EnumError> {
        let n = raw.n;
        let mut elements = Vec::new();
        let mut orbits = Vec::new();
        for o in raw.orbits {
            let members = o.members.into_iter().map(|c| LatticeElement::new(n, c)).collect::<Result<Vec<_>, _>>()?;
            elements.extend(members.iter().cloned());
            orbits.push(Orbit {
                representative: LatticeElement::new(n, o.representative)?,
                members,
                support: o.support,
                target: o.target,
                flag_type: o.flag_type,
            });
        }
        elements.sort();
        Ok(CanonicalSet { n, mode: raw.mode, elements, orbits })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate_symmetric_canonical;

    fn el(n: usize, c: &[i64]) -> LatticeElement {
        LatticeElement::new(n, c.to_vec()).unwrap()
    }

    #[test]
    fn su3_symmetric_orbits() {
        let set = quotient_by_symmetry(3, Mode::Symmetric, &enumerate_symmetric_canonical(3).unwrap()).unwrap();
        let orbits: Vec<Vec<Vec<i64>>> =
            set.orbits.iter().map(|o| o.members.iter().map(|m| m.coeffs().to_vec()).collect()).collect();
        assert_eq!(orbits, vec![vec![vec![0, 3], vec![3, 0]], vec![vec![1, 1]], vec![vec![1, 4], vec![4, 1]]]);
        assert_eq!(set.orbits[0].representative, el(3, &[0, 3]));
    }

    #[test]
    fn singleton_is_fixed() {
        let set = quotient_by_symmetry(3, Mode::Symmetric, &[el(3, &[3, 0])]).unwrap();
        assert_eq!(set.orbits.len(), 1);
        assert_eq!(set.orbits[0].members, vec![el(3, &[3, 0])]);
    }

    #[test]
    fn rejects_mixed_n() {
        assert!(quotient_by_symmetry(3, Mode::Plain, &[el(4, &[1, 2, 1])]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let set =
            quotient_by_symmetry(4, Mode::Plain, &[el(4, &[1, 2, 1]), el(4, &[4, 0, 0]), el(4, &[0, 0, 4])]).unwrap();
        let s = serde_json::to_string(&set).unwrap();
        assert!(s.starts_with(r#"{"n":4,"mode":"plain","orbits":[{"representative":[0,0,4],"members":[[0,0,4],[4,0,0]],"support":[3],"target":"#));
        let back: CanonicalSet = serde_json::from_str(&s).unwrap();
        assert_eq!(back, set);
        assert_eq!(serde_json::to_string(&back).unwrap(), s);
    }
}
