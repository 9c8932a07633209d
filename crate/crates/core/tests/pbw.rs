use std::sync::Arc;

use minorbit::chevalley::{build_chevalley, ChevalleyBasis};
use minorbit::quantize::{EnvElement, Pbw};
use minorbit::rootsys::build_root_system;
use minorbit::Q;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn basis(t: &str) -> ChevalleyBasis {
    build_chevalley(&Arc::new(build_root_system(t.parse().unwrap()).unwrap())).unwrap()
}

/// One or two PBW monomials of degree at most 2 with small coefficients.
fn random_element(rng: &mut ChaCha8Rng, dim: usize) -> EnvElement {
    let mut e = EnvElement::zero();
    for _ in 0..rng.gen_range(1..=2) {
        let mut w: Vec<u32> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..dim as u32)).collect();
        w.sort_unstable();
        e.add_term(w, Q::from_int(rng.gen_range(1..=3)));
    }
    e
}

#[test]
fn multiplication_is_associative_on_random_triples() {
    for t in ["A2", "B2", "G2", "A3", "B3", "C3"] {
        let cb = basis(t);
        let pbw = Pbw::new(&cb);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let (a, b, c) = (
                random_element(&mut rng, cb.dim()),
                random_element(&mut rng, cb.dim()),
                random_element(&mut rng, cb.dim()),
            );
            assert_eq!(pbw.mul(&pbw.mul(&a, &b), &c), pbw.mul(&a, &pbw.mul(&b, &c)), "{t}");
        }
    }
}

#[test]
fn symbol_is_multiplicative() {
    for t in ["A2", "B2", "G2", "C3"] {
        let cb = basis(t);
        let pbw = Pbw::new(&cb);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..300 {
            let a = random_element(&mut rng, cb.dim());
            let b = random_element(&mut rng, cb.dim());
            let ab = pbw.mul(&a, &b);
            assert_eq!(ab.degree().unwrap(), a.degree().unwrap() + b.degree().unwrap());
            assert_eq!(ab.symbol(cb.dim()), a.symbol(cb.dim()).mul(&b.symbol(cb.dim())), "{t}");
        }
    }
}

#[test]
fn unit_and_defining_relation() {
    let cb = basis("A1");
    let pbw = Pbw::new(&cb);
    let (e, f, h) = (cb.e(0), cb.f(0), cb.h(0));
    let g = EnvElement::generator;
    assert_eq!(pbw.mul(&g(e), &EnvElement::one()), g(e));
    assert_eq!(pbw.mul(&EnvElement::one(), &g(f)), g(f));
    // e f = f e + h
    let mut want = EnvElement::monomial(vec![f as u32, e as u32], Q::one());
    want.add_term(vec![h as u32], Q::one());
    assert_eq!(pbw.mul(&g(e), &g(f)), want);
    // commutators are antisymmetric
    let c = pbw.commutator(&g(e), &g(f));
    assert_eq!(pbw.commutator(&g(f), &g(e)), c.scale(&Q::from_int(-1)));
}
