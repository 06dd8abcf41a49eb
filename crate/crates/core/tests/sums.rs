use normgeo::builtin::{diamond, hexagon, segment, square};
use normgeo::certify;
use normgeo::geometry::PolySpace;
use normgeo::numindex::IndexSearch;
use normgeo::sums::{self, SumKind, SumSpec};
use normgeo::{Error, Functional};

fn parts() -> Vec<PolySpace> {
    vec![segment(), square(2), diamond(2), hexagon()]
}

#[test]
fn gl_parts_give_gl_sums() {
    let ps = parts();
    let cache: Vec<bool> = ps
        .iter()
        .map(|p| certify::strong_gl_certify(p).unwrap().is_certified())
        .collect();
    for i in 0..ps.len() {
        for j in i..ps.len() {
            if !(cache[i] && cache[j]) {
                continue;
            }
            let pair = [ps[i].clone(), ps[j].clone()];
            for sum in [sums::l1_sum(&pair).unwrap(), sums::linf_sum(&pair).unwrap()] {
                let c = certify::strong_gl_certify(&sum).unwrap();
                assert!(c.is_certified(), "{}", sum.label());
            }
        }
    }
}

#[test]
fn gl_sum_at_eps_gives_gl_parts() {
    let a = hexagon();
    let b = square(2);
    for sum in [
        sums::l1_sum(&[a.clone(), b.clone()]).unwrap(),
        sums::linf_sum(&[a.clone(), b.clone()]).unwrap(),
    ] {
        for e in certify::default_eps_grid() {
            if certify::gl_certify_eps(&sum, &e).unwrap().is_certified() {
                for p in [&a, &b] {
                    assert!(
                        certify::gl_certify_eps(p, &e).unwrap().is_certified(),
                        "{} at {e}",
                        p.label()
                    );
                }
            }
        }
    }
}

#[test]
fn l1_facets_are_linf_vertices_of_the_duals() {
    for (a, b) in [
        (hexagon(), square(2)),
        (diamond(2), segment()),
        (hexagon(), hexagon()),
    ] {
        let l1 = sums::l1_sum(&[a.clone(), b.clone()]).unwrap();
        let linf = sums::linf_sum(&[a.dual(), b.dual()]).unwrap();
        let as_vectors: Vec<_> = l1.facets().iter().map(Functional::as_vector).collect();
        assert_eq!(as_vectors, linf.vertices());
    }
}

#[test]
fn finite_c0_sum_is_labelled_as_linf() {
    let s = sums::linf_sum(&[hexagon(), segment()]).unwrap();
    assert!(s.label().starts_with("linf[=c0]"));
}

#[test]
fn facet_cap_fails_loudly() {
    let big = vec![hexagon(); 3];
    let r = SumSpec::new(SumKind::L1, big).with_cap(100).build();
    assert!(matches!(r, Err(Error::SizeLimit { .. })));
}

#[test]
fn linf_sum_index_is_at_most_the_part_indices() {
    let a = hexagon();
    let b = square(2);
    let sum = sums::linf_sum(&[a.clone(), b.clone()]).unwrap();
    let ea = IndexSearch::new(200, 3).run(&a).unwrap();
    let eb = IndexSearch::new(200, 3).run(&b).unwrap();
    let embedded = vec![ea.witness.embed(0, 4), eb.witness.embed(2, 4)];
    let es = IndexSearch::new(200, 3)
        .with_candidates(embedded)
        .run(&sum)
        .unwrap();
    assert!(es.lower_empirical <= ea.lower_empirical.clone().min(eb.lower_empirical.clone()));
}
