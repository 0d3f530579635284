use std::sync::Arc;

use super::*;
use crate::image::enumerate_images;
use crate::maps::{constant_map, enumerate_continuous_maps, identity_map};

const B: usize = DEFAULT_BUDGET;

fn arc(x: DigitalImage) -> Arc<DigitalImage> {
    Arc::new(x)
}

fn five_twist() -> Arc<DigitalImage> {
    arc(DigitalImage::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (3, 5), (5, 0)]).unwrap())
}

fn rho(w: &Arc<DigitalImage>) -> DigitalMap {
    DigitalMap::new(w.clone(), w.clone(), vec![0, 1, 2, 3, 4, 4]).unwrap()
}

fn rotation(c: &Arc<DigitalImage>, k: usize) -> DigitalMap {
    let n = c.len();
    DigitalMap::from_fn(c.clone(), c.clone(), |v| (v + k) % n).unwrap()
}

/// Union-find closure of the single-step relation over every continuous map,
/// computed directly from the adjacency rule.
fn brute_force_classes(x: &Arc<DigitalImage>, y: &Arc<DigitalImage>, cat: Category) -> Vec<(DigitalMap, usize)> {
    let maps: Vec<DigitalMap> = enumerate_continuous_maps(x, y).unwrap().collect();
    let mut parent: Vec<usize> = (0..maps.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let step = |f: &DigitalMap, g: &DigitalMap| match cat {
        Category::Np1 => x.vertices().all(|a| y.adjacent(f.apply(a), g.apply(a))),
        Category::Np2 => x
            .vertices()
            .all(|a| x.vertices().all(|b| !x.adjacent(a, b) || y.adjacent(f.apply(a), g.apply(b)))),
    };
    for i in 0..maps.len() {
        for j in i + 1..maps.len() {
            if step(&maps[i], &maps[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    (0..maps.len())
        .map(|i| (maps[i].clone(), find(&mut parent, i)))
        .collect()
}

#[test]
fn single_step_examples() {
    let c5 = arc(DigitalImage::cycle(5));
    let id = identity_map(&c5);
    let r = rotation(&c5, 1);
    assert!(single_step_homotopic(&id, &r, Category::Np1).unwrap());
    assert!(!single_step_homotopic(&id, &r, Category::Np2).unwrap());
    for cat in Category::BOTH {
        assert!(single_step_homotopic(&r, &r, cat).unwrap());
    }
    let k2 = arc(DigitalImage::complete(2));
    assert!(single_step_homotopic(&id, &identity_map(&k2), Category::Np1).is_err());
}

#[test]
fn five_twist_rho_is_homotopic_to_identity_in_two_steps() {
    let w = five_twist();
    let v = homotopic(&rho(&w), &identity_map(&w), Category::Np1, B).unwrap();
    assert_eq!(v.status, Status::Yes);
    let cert = v.certificate.unwrap();
    assert_eq!(cert.steps(), 2);
    assert!(cert.proves(&rho(&w), &identity_map(&w)));
}

#[test]
fn rotation_of_c5_is_not_np2_homotopic_to_identity() {
    let c5 = arc(DigitalImage::cycle(5));
    let v = homotopic(&rotation(&c5, 1), &identity_map(&c5), Category::Np2, B).unwrap();
    assert_eq!(v.status, Status::No);
    assert!(v.certificate.is_none());
    let v1 = homotopic(&rotation(&c5, 2), &identity_map(&c5), Category::Np1, B).unwrap();
    assert_eq!(v1.status, Status::Yes);
    assert!(v1.certificate.unwrap().verify());
}

#[test]
fn trivial_homotopy_on_a_point() {
    let k1 = arc(DigitalImage::point());
    let v = homotopic(&identity_map(&k1), &identity_map(&k1), Category::Np2, B).unwrap();
    assert_eq!(v.status, Status::Yes);
    assert_eq!(v.certificate.unwrap().steps(), 0);
}

#[test]
fn homotopic_rejects_bad_input() {
    let c5 = arc(DigitalImage::cycle(5));
    let bad = DigitalMap::new(c5.clone(), c5.clone(), vec![0, 3, 2, 3, 4]).unwrap();
    assert!(matches!(
        homotopic(&bad, &identity_map(&c5), Category::Np1, B),
        Err(Error::Discontinuous { .. })
    ));
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let c5 = arc(DigitalImage::cycle(5));
    let v = homotopic(&rotation(&c5, 1), &identity_map(&c5), Category::Np2, 1).unwrap();
    // Both endpoints are isolated in the NP2 step graph, so even a tiny budget
    // proves disconnection once both frontiers run dry.
    assert_eq!(v.status, Status::No);

    let w = five_twist();
    let v = homotopic(&rho(&w), &identity_map(&w), Category::Np1, 3).unwrap();
    assert_eq!(v.status, Status::Inconclusive);
    assert_eq!(v.explored, v.budget);
}

#[test]
fn pointed_examples() {
    let w = five_twist();
    let v = pointed_homotopic(&rho(&w), &identity_map(&w), Category::Np1, 0, 0, B).unwrap();
    assert_eq!(v.status, Status::No);

    let k2 = arc(DigitalImage::complete(2));
    let c0 = constant_map(&k2, &k2, 0).unwrap();
    let v = pointed_homotopic(&identity_map(&k2), &c0, Category::Np1, 0, 0, B).unwrap();
    assert_eq!(v.status, Status::Yes);
    let cert = v.certificate.unwrap();
    assert_eq!(cert.base(), Some((0, 0)));
    assert!(cert.verify());

    let r = rho(&w);
    assert!(pointed_homotopic(&r, &r, Category::Np2, 0, 0, B).unwrap().status.is_yes());
    assert!(matches!(
        pointed_homotopic(&r, &r, Category::Np1, 5, 5, B),
        Err(Error::NotPointed { .. })
    ));
}

#[test]
fn class_examples() {
    let k1 = arc(DigitalImage::point());
    let id = identity_map(&k1);
    assert_eq!(homotopy_class(&id, Category::Np1, B).unwrap(), HomotopyClass::Complete(vec![id]));

    let c5 = arc(DigitalImage::cycle(5));
    let id5 = identity_map(&c5);
    assert_eq!(
        homotopy_class(&id5, Category::Np2, B).unwrap(),
        HomotopyClass::Complete(vec![id5.clone()])
    );

    let c4 = arc(DigitalImage::cycle(4));
    let id4 = identity_map(&c4);
    for cat in Category::BOTH {
        let oracle = brute_force_classes(&c4, &c4, cat);
        let root = oracle.iter().find(|(f, _)| *f == id4).unwrap().1;
        let mut expected: Vec<_> = oracle.iter().filter(|(_, r)| *r == root).map(|(f, _)| f.values().to_vec()).collect();
        let mut got: Vec<_> = homotopy_class(&id4, cat, B).unwrap().maps().unwrap().iter().map(|f| f.values().to_vec()).collect();
        expected.sort();
        got.sort();
        assert_eq!(got, expected, "{cat}");
    }
    assert!(matches!(
        homotopy_class(&id4, Category::Np1, 2).unwrap(),
        HomotopyClass::Inconclusive { .. }
    ));
}

#[test]
fn contractibility_examples() {
    let k2 = arc(DigitalImage::complete(2));
    for cat in Category::BOTH {
        let v = is_contractible(&k2, cat, B).unwrap();
        assert_eq!(v.status, Status::Yes);
        assert!(v.witness().unwrap().is_constant());
    }
    let c5 = arc(DigitalImage::cycle(5));
    assert_eq!(is_contractible(&c5, Category::Np1, B).unwrap().status, Status::No);

    let c4 = arc(DigitalImage::cycle(4));
    let v = is_contractible(&c4, Category::Np1, B).unwrap();
    assert_eq!(v.status, Status::Yes);
    let cert = v.certificate.unwrap();
    assert!(cert.verify() && cert.source().is_identity() && cert.target().is_constant());
    // Brute-force agreement: some constant shares the identity's class.
    let oracle = brute_force_classes(&c4, &c4, Category::Np1);
    let root = oracle.iter().find(|(f, _)| f.is_identity()).unwrap().1;
    assert!(oracle.iter().any(|(f, r)| *r == root && f.is_constant()));
    assert_eq!(is_contractible(&c4, Category::Np2, B).unwrap().status, Status::No);
}

#[test]
fn irreducibility_examples() {
    let c5 = arc(DigitalImage::cycle(5));
    assert_eq!(is_irreducible(&c5, Category::Np1, B).unwrap().status, Status::Yes);

    let w = five_twist();
    let v = is_irreducible(&w, Category::Np1, B).unwrap();
    assert_eq!(v.status, Status::No);
    let witness = v.witness().unwrap().clone();
    assert!(!witness.is_surjective());
    assert!(v.certificate.as_ref().unwrap().proves(&identity_map(&w), &witness));
    assert!(!rho(&w).is_surjective());

    let k2 = arc(DigitalImage::complete(2));
    for cat in Category::BOTH {
        assert_eq!(is_irreducible(&k2, cat, B).unwrap().status, Status::No);
    }
}

#[test]
fn rigidity_examples() {
    let c5 = arc(DigitalImage::cycle(5));
    assert_eq!(is_rigid(&c5, Category::Np2, B).unwrap().status, Status::Yes);
    let v = is_rigid(&c5, Category::Np1, B).unwrap();
    assert_eq!(v.status, Status::No);
    assert_eq!(v.witness().unwrap(), &rotation(&c5, 1));
    assert!(v.certificate.unwrap().verify());
    let k1 = arc(DigitalImage::point());
    for cat in Category::BOTH {
        assert_eq!(is_rigid(&k1, cat, B).unwrap().status, Status::Yes);
    }
}

#[test]
fn equivalence_examples() {
    let k2 = arc(DigitalImage::complete(2));
    let k1 = arc(DigitalImage::point());
    for cat in Category::BOTH {
        let v = homotopy_equivalent(&k2, &k1, cat, B, None).unwrap();
        assert_eq!(v.status, Status::Yes);
        let (f, g) = v.witness.unwrap();
        let (c1, c2) = v.certificates.unwrap();
        assert!(c1.proves(&compose(&g, &f).unwrap(), &identity_map(&k2)));
        assert!(c2.proves(&compose(&f, &g).unwrap(), &identity_map(&k1)));
    }
    let c5 = arc(DigitalImage::cycle(5));
    assert_eq!(homotopy_equivalent(&c5, &k1, Category::Np1, B, None).unwrap().status, Status::No);
    let v = homotopy_equivalent(&c5, &c5, Category::Np1, B, None).unwrap();
    assert_eq!(v.status, Status::Yes);
    assert!(v.witness.unwrap().0.is_identity());

    // The five-twist image reduces to the 5-cycle, but not by pointed
    // homotopies at x0 (the collapse of x̄4 has to travel around the cycle).
    let w = five_twist();
    assert_eq!(homotopy_equivalent(&w, &c5, Category::Np1, B, None).unwrap().status, Status::Yes);
    assert_eq!(homotopy_equivalent(&w, &c5, Category::Np1, B, Some((0, 0))).unwrap().status, Status::No);
}

fn small_images(max: usize) -> Vec<Arc<DigitalImage>> {
    (1..=max).flat_map(|n| enumerate_images(n).unwrap()).map(arc).collect()
}

#[test]
fn single_step_is_reflexive_symmetric_and_np2_implies_np1() {
    for x in small_images(4) {
        let maps: Vec<_> = enumerate_continuous_maps(&x, &x).unwrap().collect();
        for f in maps.iter().step_by(3) {
            for cat in Category::BOTH {
                assert!(single_step_homotopic(f, f, cat).unwrap());
            }
            for g in maps.iter().step_by(5) {
                for cat in Category::BOTH {
                    assert_eq!(
                        single_step_homotopic(f, g, cat).unwrap(),
                        single_step_homotopic(g, f, cat).unwrap()
                    );
                }
                if single_step_homotopic(f, g, Category::Np2).unwrap() {
                    assert!(single_step_homotopic(f, g, Category::Np1).unwrap());
                }
            }
        }
    }
}

#[test]
fn homotopic_agrees_with_brute_force_on_small_images() {
    for x in small_images(3) {
        for y in small_images(3) {
            for cat in Category::BOTH {
                let oracle = brute_force_classes(&x, &y, cat);
                for (f, rf) in &oracle {
                    for (g, rg) in &oracle {
                        let v = homotopic(f, g, cat, B).unwrap();
                        assert_eq!(v.status, Status::from_bool(rf == rg));
                        if let Some(c) = v.certificate {
                            assert!(c.proves(f, g));
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn transitivity_by_certificate_concatenation() {
    let w = five_twist();
    let maps: Vec<_> = enumerate_continuous_maps(&w, &w).unwrap().step_by(97).collect();
    for f in &maps {
        for g in &maps {
            let v1 = homotopic(f, g, Category::Np1, B).unwrap();
            if !v1.status.is_yes() {
                continue;
            }
            for h in &maps {
                let v2 = homotopic(g, h, Category::Np1, B).unwrap();
                if v2.status.is_yes() {
                    let joined = v1.certificate.as_ref().unwrap().then(v2.certificate.as_ref().unwrap()).unwrap();
                    assert!(joined.proves(f, h));
                    assert!(homotopic(f, h, Category::Np1, B).unwrap().status.is_yes());
                }
            }
        }
    }
}

#[test]
fn composition_respects_homotopy() {
    for x in small_images(4).into_iter().step_by(3) {
        let maps: Vec<_> = enumerate_continuous_maps(&x, &x).unwrap().collect();
        for cat in Category::BOTH {
            for f in maps.iter().step_by(13) {
                for g in maps.iter().step_by(17) {
                    let v = homotopic(f, g, cat, B).unwrap();
                    let Some(cert) = v.certificate else { continue };
                    for h in maps.iter().step_by(19) {
                        let post = cert.post_compose(h).unwrap();
                        assert!(post.proves(&compose(h, f).unwrap(), &compose(h, g).unwrap()));
                        let pre = cert.pre_compose(h).unwrap();
                        assert!(pre.proves(&compose(f, h).unwrap(), &compose(g, h).unwrap()));
                    }
                }
            }
        }
    }
}

#[test]
fn pointed_yes_implies_unpointed_yes() {
    for x in small_images(4).into_iter().step_by(2) {
        let maps: Vec<_> = enumerate_continuous_maps(&x, &x).unwrap().filter(|f| f.apply(0) == 0).collect();
        for cat in Category::BOTH {
            for f in maps.iter().step_by(7) {
                for g in maps.iter().step_by(5) {
                    let p = pointed_homotopic(f, g, cat, 0, 0, B).unwrap();
                    if p.status.is_yes() {
                        let cert = p.certificate.unwrap();
                        assert!(cert.proves(f, g));
                        assert!(homotopic(f, g, cat, B).unwrap().status.is_yes());
                    }
                }
            }
        }
    }
}

#[test]
fn np2_irreducible_images_are_np2_rigid() {
    for x in small_images(5) {
        let irreducible = is_irreducible(&x, Category::Np2, B).unwrap().status;
        if irreducible == Status::Yes {
            assert_eq!(is_rigid(&x, Category::Np2, B).unwrap().status, Status::Yes, "{x:?}");
        }
    }
}
