use normgeo::builtin::{diamond, hexagon, octagon, square};
use normgeo::geometry::PolySpace;
use normgeo::isomlab::{self, SphereIsometry};
use normgeo::rational::Rational;
use normgeo::{Error, OperatorMatrix, Vector};
use num_traits::Zero;

/// Counts vertex permutations that extend to a linear map, by solving for
/// the map on the first two independent vertices and checking the rest.
fn brute_force_order(s: &PolySpace) -> usize {
    let v = s.vertices();
    let (i, j) = (0..v.len())
        .flat_map(|i| (i + 1..v.len()).map(move |j| (i, j)))
        .find(|&(i, j)| &v[i][0] * &v[j][1] != &v[i][1] * &v[j][0])
        .unwrap();
    let det = &v[i][0] * &v[j][1] - &v[i][1] * &v[j][0];
    let mut count = 0;
    let mut perm: Vec<usize> = (0..v.len()).collect();
    permutations(&mut perm, 0, &mut |p| {
        let (wi, wj) = (&v[p[i]], &v[p[j]]);
        // M = [wi wj] [vi vj]^-1
        let inv = [
            [&v[j][1] / &det, -&v[j][0] / &det],
            [-&v[i][1] / &det, &v[i][0] / &det],
        ];
        let m: Vec<Vec<Rational>> = (0..2)
            .map(|r| {
                (0..2)
                    .map(|c| &wi[r] * &inv[0][c] + &wj[r] * &inv[1][c])
                    .collect()
            })
            .collect();
        let apply = |x: &Vector| -> Vector {
            Vector::new(
                (0..2)
                    .map(|r| &m[r][0] * &x[0] + &m[r][1] * &x[1])
                    .collect(),
            )
        };
        if (0..v.len()).all(|k| apply(&v[k]) == v[p[k]]) {
            count += 1;
        }
    });
    count
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

#[test]
fn group_orders_match_brute_force() {
    for s in [hexagon(), square(2), diamond(2), octagon()] {
        let g = isomlab::symmetry_group(&s).unwrap();
        assert_eq!(g.len(), brute_force_order(&s), "{}", s.label());
        assert!(isomlab::is_group(&g));
    }
    // The hexagon is an affine image of the regular one.
    assert_eq!(isomlab::symmetry_group(&hexagon()).unwrap().len(), 12);
    assert_eq!(isomlab::symmetry_group(&square(3)).unwrap().len(), 48);
}

#[test]
fn mup_equality_implies_linearity_over_the_group_population() {
    for s in [hexagon(), square(2), diamond(2), octagon()] {
        for (i, m) in isomlab::symmetry_group(&s).unwrap().iter().enumerate() {
            let t = SphereIsometry::restriction_of_symmetry(&s, m).unwrap();
            let mup = isomlab::check_mup_inequality(&t, 200, i as u64).unwrap();
            if mup.violations.is_empty() {
                let lin = isomlab::linearity_check(&t, 200, i as u64).unwrap();
                assert!(lin.violations.is_empty(), "{} element {i}", s.label());
            }
        }
    }
}

#[test]
fn restriction_agrees_with_matrix_on_sampled_sphere_points() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for s in [hexagon(), octagon()] {
        for m in isomlab::symmetry_group(&s).unwrap() {
            let t = SphereIsometry::restriction_of_symmetry(&s, &m).unwrap();
            for _ in 0..50 {
                let x = isomlab::sample_sphere_point(&s, &mut rng);
                assert_eq!(t.apply(&x).unwrap(), m.apply(&x));
            }
        }
    }
}

#[test]
fn square_vertex_swap_is_not_an_isometry() {
    let sq = square(2);
    for a in 0..4 {
        for b in a + 1..4 {
            if sq.vertices()[a] == -&sq.vertices()[b] {
                continue;
            }
            let mut perm: Vec<usize> = (0..4).collect();
            perm.swap(a, b);
            assert!(
                matches!(
                    SphereIsometry::vertex_map(&sq, &sq, perm),
                    Err(Error::NotAnIsometry(_))
                ),
                "swap {a} {b}"
            );
        }
    }
}

#[test]
fn vertex_maps_between_different_spaces() {
    // The square and the diamond are linearly isometric, so the vertex
    // correspondence induced by the rotation-scaling is admitted.
    let (sq, dm) = (square(2), diamond(2));
    let m = OperatorMatrix::from_rows(vec![
        vec![
            Rational::new(1.into(), 2.into()),
            Rational::new(1.into(), 2.into()),
        ],
        vec![
            Rational::new((-1).into(), 2.into()),
            Rational::new(1.into(), 2.into()),
        ],
    ])
    .unwrap();
    let perm: Vec<usize> = sq
        .vertices()
        .iter()
        .map(|v| dm.vertex_index(&m.apply(v)).unwrap())
        .collect();
    let t = SphereIsometry::vertex_map(&sq, &dm, perm).unwrap();
    let r = isomlab::check_mup_inequality(&t, 300, 9).unwrap();
    assert!(r.violations.is_empty() && r.all_equal());
    let lin = SphereIsometry::linear(&sq, &dm, m).unwrap();
    assert_eq!(
        isomlab::linearity_check(&lin, 100, 1)
            .unwrap()
            .violations
            .len(),
        0
    );
    assert!(isomlab::extend_homogeneous(&t, &Vector::zeros(2))
        .unwrap()
        .coords()
        .iter()
        .all(Zero::is_zero));
}
