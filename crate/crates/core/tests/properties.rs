mod common;

use common::*;
use homloc::complex::{closure, suspension, Chain, Simplex};
use homloc::oracle::homologous;
use proptest::prelude::*;

fn simplex(dim: usize) -> impl Strategy<Value = Simplex> {
    prop::collection::btree_set(0u32..8, dim + 1).prop_map(|v| Simplex::new(v).unwrap())
}

fn chain(dim: usize) -> impl Strategy<Value = Chain> {
    prop::collection::vec(simplex(dim), 0..10).prop_map(move |xs| {
        let mut c = Chain::zero(dim);
        for x in xs {
            c.toggle(x).unwrap();
        }
        c
    })
}

proptest! {
    #[test]
    fn boundary_of_boundary_vanishes(c in (1usize..4).prop_flat_map(chain)) {
        prop_assert!(c.boundary().boundary().is_empty());
    }

    #[test]
    fn addition_is_an_abelian_group(a in chain(2), b in chain(2), c in chain(2)) {
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&Chain::zero(2)).unwrap(), a.clone());
        prop_assert!(a.add(&a).unwrap().is_empty());
    }

    #[test]
    fn boundary_is_linear(a in chain(2), b in chain(2)) {
        prop_assert_eq!(a.add(&b).unwrap().boundary(), a.boundary().add(&b.boundary()).unwrap());
    }

    #[test]
    fn closure_is_idempotent_and_face_closed(xs in prop::collection::vec((0usize..4).prop_flat_map(simplex), 0..8)) {
        let once = closure(xs.iter());
        let twice = closure(once.iter());
        prop_assert_eq!(&once, &twice);
        for x in &xs {
            prop_assert!(once.contains(x));
        }
        for s in &once {
            for f in s.facets() {
                prop_assert!(once.contains(&f));
            }
        }
    }

    #[test]
    fn suspension_is_a_complex_lifting_cycles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, k, v, float) = random_instance(&mut r, 8);
        let sk = suspension(&k);
        prop_assert_eq!(sk.complex.len(), 3 * k.len() + 2);
        prop_assert_eq!(sk.complex.euler_characteristic(), 2 - k.euler_characteristic());
        let lifted = sk.lift_cycle(&v).unwrap();
        prop_assert!(lifted.is_cycle());
        prop_assert!(lifted.is_in(&sk.complex));
        prop_assert!(close(lifted.cost(&sk.complex).unwrap(), 2.0 * v.cost(&k).unwrap(), float));
    }

    #[test]
    fn homologous_is_an_equivalence(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (_, k, v, _) = random_instance(&mut r, 8);
        let u = add_random_boundary(&mut r, &k, &v);
        let w = add_random_boundary(&mut r, &k, &u);
        prop_assert!(homologous(&k, &v, &v).unwrap());
        prop_assert!(homologous(&k, &u, &v).unwrap() && homologous(&k, &v, &u).unwrap());
        prop_assert!(homologous(&k, &v, &w).unwrap());
        let z = random_cycle(&mut r, &k, v.dim());
        let shifted = v.add(&z).unwrap();
        prop_assert_eq!(homologous(&k, &v, &shifted).unwrap(), homologous(&k, &z, &Chain::zero(v.dim())).unwrap());
    }
}
