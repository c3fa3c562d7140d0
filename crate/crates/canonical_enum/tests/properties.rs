use canonical_enum::*;
use lattice_core::{chi1, chi2, grassmannian_target, in_lattice, LatticeElement, Target};
use proptest::prelude::*;

/// Every lattice point of the box accepted by `keep`, by plain nested iteration.
fn box_points(bounds: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in bounds {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn oracle_filter(n: usize, mode: Mode, support: &[usize]) -> Vec<LatticeElement> {
    let bounds = search_bounds(n, mode, support).unwrap();
    let mut v: Vec<LatticeElement> = box_points(&bounds)
        .into_iter()
        .map(|c| LatticeElement::new(n, c).unwrap())
        .filter(|x| in_lattice(x) && !x.is_zero())
        .filter(|x| mode == Mode::Plain || !x.is_symmetric_trivial())
        .filter(|x| maximality_oracle(x, mode))
        .collect();
    v.sort();
    v
}

#[test]
fn plain_enumeration_matches_oracle() {
    for n in 2..=6 {
        for mask in 1u32..1 << (n - 1) {
            let support: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            assert_eq!(
                enumerate_i_canonical(n, &support).unwrap(),
                oracle_filter(n, Mode::Plain, &support),
                "n = {n}, I = {support:?}"
            );
        }
    }
}

#[test]
fn symmetric_enumeration_matches_oracle() {
    for n in 2..=6 {
        assert_eq!(enumerate_symmetric_canonical(n).unwrap(), oracle_filter(n, Mode::Symmetric, &[]), "n = {n}");
    }
}

#[test]
fn odd_n_full_support_is_unique() {
    for n in [3usize, 5, 7] {
        let got = enumerate_i_canonical(n, &(1..n).collect::<Vec<_>>()).unwrap();
        assert_eq!(got, vec![LatticeElement::new(n, vec![1; n - 1]).unwrap()]);
    }
}

#[test]
fn singleton_supports() {
    for n in 2..=9 {
        for i in 1..n {
            let m = lattice_core::min_multiple(n, i).unwrap() as i64;
            assert_eq!(enumerate_i_canonical(n, &[i]).unwrap(), vec![LatticeElement::basis_multiple(n, i, m).unwrap()]);
        }
    }
}

#[test]
fn symmetric_elements_are_non_trivial() {
    for n in 2..=6 {
        for xi in enumerate_symmetric_canonical(n).unwrap() {
            assert_ne!(grassmannian_target(&xi).unwrap(), Target::Point, "{xi}");
        }
    }
}

#[test]
fn orbits_partition_elements() {
    for n in 2..=6 {
        for mode in [Mode::Plain, Mode::Symmetric] {
            let set = canonical_set(n, mode).unwrap();
            let mut all: Vec<LatticeElement> = set.orbits.iter().flat_map(|o| o.members.clone()).collect();
            all.sort();
            assert_eq!(all, set.elements);
            for o in &set.orbits {
                assert_eq!(&o.representative, o.members.iter().min().unwrap());
            }
        }
    }
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Plain), Just(Mode::Symmetric)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chi_maps_canonical_sets_to_themselves(n in 2usize..=6, mode in mode(), pick in any::<prop::sample::Index>()) {
        let set = canonical_set(n, mode).unwrap();
        prop_assume!(!set.elements.is_empty());
        let xi = pick.get(&set.elements);
        prop_assert!(set.contains(&chi1(xi)));
        if n % 2 == 1 {
            prop_assert!(set.contains(&chi2(xi).unwrap()));
        }
    }

    #[test]
    fn enumerated_elements_are_maximal(n in 2usize..=7, mask in 1u32..64) {
        let support: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
        prop_assume!(!support.is_empty());
        for xi in enumerate_i_canonical(n, &support).unwrap() {
            prop_assert!(xi.is_dominant() && in_lattice(&xi));
            prop_assert_eq!(xi.support(), support.clone());
            prop_assert!(maximality_oracle(&xi, Mode::Plain));
        }
    }
}
