use super::*;
use crate::factor::is_irreducible;

fn plane() -> (Ring, Polynomial, Polynomial) {
    let r = Ring::new(["u", "v"]);
    let u = Polynomial::var(&r, "u").unwrap();
    let v = Polynomial::var(&r, "v").unwrap();
    (r, u, v)
}

fn var(r: &Ring, name: &str) -> Polynomial {
    Polynomial::var(r, name).unwrap()
}

fn ideal(r: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Ideal {
    Ideal::new(r, gens).unwrap()
}

#[test]
fn graph_closure_of_a_product() {
    let (_, u, v) = plane();
    let uv = &u * &v;
    let m = graph_closure(std::slice::from_ref(&uv)).unwrap();
    let r = m.ring().clone();
    let expected = &(&var(&r, "z1") * &var(&r, "t")) - &uv.embed(&r).unwrap();
    assert!(is_irreducible(&expected).unwrap());
    assert!(m.ideal().same_ideal(&ideal(&r, [expected])).unwrap());
    assert!(m.is_flat().unwrap());
    assert!(m.general_fiber().unwrap().is_zero());
    assert!(m.is_graph_at_one().unwrap());
}

#[test]
fn graph_closure_of_the_origin() {
    let (_, u, v) = plane();
    let m = graph_closure(&[u, v]).unwrap();
    let r = m.ring().clone();
    let (u, v, t) = (var(&r, "u"), var(&r, "v"), var(&r, "t"));
    let (z1, z2) = (var(&r, "z1"), var(&r, "z2"));
    for p in [&(&z1 * &t) - &u, &(&z2 * &t) - &v, &(&z1 * &v) - &(&z2 * &u)] {
        assert!(m.ideal().contains(&p).unwrap(), "{p}");
    }
    assert!(m.is_flat().unwrap());
}

#[test]
fn graph_closure_of_the_empty_subscheme() {
    let (r, _, _) = plane();
    let m = graph_closure(&[Polynomial::one(&r)]).unwrap();
    let big = m.ring().clone();
    let expected = &(&var(&big, "z1") * &var(&big, "t")) - &Polynomial::one(&big);
    assert!(m.ideal().same_ideal(&ideal(&big, [expected])).unwrap());
    assert!(normal_cone(&m).unwrap().ideal().is_unit().unwrap());
}

#[test]
fn graph_closure_rejects_bad_input() {
    let (r, _, _) = plane();
    assert!(graph_closure(&[]).is_err());
    assert!(matches!(graph_closure(&[Polynomial::zero(&r)]), Err(Error::ZeroInput(_))));
}

#[test]
fn principal_cone_is_a_cylinder() {
    let (_, u, v) = plane();
    let m = graph_closure(&[&u * &v]).unwrap();
    let c = normal_cone(&m).unwrap();
    let r = c.ring().clone();
    assert_eq!(r, Ring::new(["u", "v", "z1"]));
    let uv = &var(&r, "u") * &var(&r, "v");
    assert!(c.ideal().same_ideal(&ideal(&r, [uv])).unwrap());
    assert!(c.is_homogeneous().unwrap());
    let expect = Cycle::from_terms([
        (Subvariety::hypersurface(&var(&r, "u")).unwrap(), 1),
        (Subvariety::hypersurface(&var(&r, "v")).unwrap(), 1),
    ]);
    assert_eq!(c.cycle().unwrap(), expect);
}

#[test]
fn cone_of_a_regular_point_is_its_normal_space() {
    let (_, u, v) = plane();
    let m = graph_closure(&[u, v]).unwrap();
    let c = normal_cone(&m).unwrap();
    let r = c.ring().clone();
    assert!(c
        .ideal()
        .same_ideal(&ideal(&r, [var(&r, "u"), var(&r, "v")]))
        .unwrap());
    assert!(c.is_homogeneous().unwrap());
}

#[test]
fn cone_routes_agree() {
    let (_, u, v) = plane();
    let fixtures = vec![
        vec![&u * &v],
        vec![u.clone(), v.clone()],
        vec![&(&v * &v) - &u.pow(3)],
        vec![&u * &u, &u * &v],
        vec![&v - &(&u * &u), v.clone()],
    ];
    for f in fixtures {
        let m = graph_closure(&f).unwrap();
        let a = normal_cone(&m).unwrap();
        let b = normal_cone_by_elimination(&m).unwrap();
        assert_eq!(a.ring(), b.ring());
        assert!(a.ideal().same_ideal(b.ideal()).unwrap());
        assert!(a.is_homogeneous().unwrap());
        assert!(m.is_flat().unwrap());
    }
}

#[test]
fn inhomogeneous_ideal_is_detected() {
    let r = Ring::new(["u", "z1"]);
    let c = ConePresentation {
        base_len: 1,
        ideal: ideal(&r, [&var(&r, "z1") - &var(&r, "u")]),
    };
    assert!(!c.is_homogeneous().unwrap());
}

#[test]
fn double_deformation_examples() {
    let (_, u, v) = plane();
    let d = double_deformation(std::slice::from_ref(&u), std::slice::from_ref(&v)).unwrap();
    let r = d.ring().clone();
    assert_eq!(r, Ring::new(["u", "v", "s", "t", "w1", "z1"]));
    let (s, t, w, z) = (var(&r, "s"), var(&r, "t"), var(&r, "w1"), var(&r, "z1"));
    let (ur, vr) = (var(&r, "u"), var(&r, "v"));
    let raw = ideal(&r, [&(&w * &s) - &ur, &(&z * &t) - &vr]);
    assert!(d.ideal().same_ideal(&raw).unwrap());
    assert!(d.is_flat().unwrap());
    assert!(!d.is_degenerate());

    let d = double_deformation(std::slice::from_ref(&u), std::slice::from_ref(&u)).unwrap();
    let rel = &(&w * &s) - &(&z * &t);
    assert!(d.ideal().contains(&rel).unwrap());
    assert!(d.reverse_saturation().unwrap().same_ideal(d.ideal()).unwrap());

    let (base, _, _) = plane();
    let d = double_deformation(&[Polynomial::one(&base)], &[v]).unwrap();
    assert!(d.is_degenerate());
}

#[test]
fn double_deformation_restricts_to_single_ones() {
    let (_, u, v) = plane();
    let cusp = &(&v * &v) - &u.pow(3);
    let d = double_deformation(std::slice::from_ref(&u), std::slice::from_ref(&cusp)).unwrap();
    assert!(d.reverse_saturation().unwrap().same_ideal(d.ideal()).unwrap());
    let at_t1 = d.restrict_to_one(d.t()).unwrap();
    let r = at_t1.ring().clone();
    assert_eq!(r, Ring::new(["u", "v", "s", "w1"]));
    let s = var(&r, "s");
    let single = ideal(&r, [&(&var(&r, "w1") * &s) - &var(&r, "u")]).saturate(&s).unwrap();
    assert!(at_t1.same_ideal(&single).unwrap());
    let at_s1 = d.restrict_to_one(d.s()).unwrap();
    let r = at_s1.ring().clone();
    let t = var(&r, "t");
    let c = cusp.embed(&r).unwrap();
    let single = ideal(&r, [&(&var(&r, "z1") * &t) - &c]).saturate(&t).unwrap();
    assert!(at_s1.same_ideal(&single).unwrap());
}

#[test]
fn linear_limits_agree() {
    let (_, u, v) = plane();
    let d = double_deformation(&[u], &[v]).unwrap();
    let check = bigrat_check(&d, Exec::Sequential).unwrap();
    let r = check.t_then_s.ideal.ring().clone();
    assert_eq!(r, Ring::new(["u", "v", "w1", "z1"]));
    let origin_times_plane = Subvariety::from_prime(&ideal(&r, [var(&r, "u"), var(&r, "v")])).unwrap();
    assert_eq!(check.t_then_s.cycle, Some(Cycle::single(origin_times_plane)));
    assert!(check.holds());
}

#[test]
fn cusp_limits_agree() {
    let (_, u, v) = plane();
    let cusp = &(&v * &v) - &u.pow(3);
    let d = double_deformation(&[u], &[cusp]).unwrap();
    let check = bigrat_check(&d, Exec::Parallel).unwrap();
    let r = check.s_then_t.ideal.ring().clone();
    let p = Subvariety::from_prime(&ideal(&r, [var(&r, "u"), var(&r, "v")])).unwrap();
    assert_eq!(check.s_then_t.cycle, Some(Cycle::from_terms([(p, 2)])));
    assert!(check.holds(), "{:?}", check);
}

#[test]
fn symmetric_limits_swap_blocks() {
    let (_, u, _) = plane();
    let d = double_deformation(std::slice::from_ref(&u), std::slice::from_ref(&u)).unwrap();
    let a = limit_ideal(&d, LimitOrder::TThenS).unwrap();
    let b = limit_ideal(&d, LimitOrder::SThenT).unwrap();
    let r = a.ring().clone();
    let swap = BTreeMap::from([(2, var(&r, "z1")), (3, var(&r, "w1"))]);
    let swapped = b
        .generators()
        .iter()
        .map(|g| g.substitute(&swap, &r).unwrap())
        .collect::<Vec<_>>();
    assert!(a.same_ideal(&ideal(&r, swapped)).unwrap());
    assert!(a.same_ideal(&ideal(&r, [var(&r, "u"), var(&r, "w1")])).unwrap());
}

#[test]
fn excess_limits_differ_by_a_boundary() {
    let (_, u, v) = plane();
    let d = double_deformation(std::slice::from_ref(&u), &[&u * &v]).unwrap();
    let check = bigrat_check(&d, Exec::Sequential).unwrap();
    let r = check.t_then_s.ideal.ring().clone();
    let plane = |a: &str, b: &str| Subvariety::from_prime(&ideal(&r, [var(&r, a), var(&r, b)])).unwrap();
    assert_eq!(
        check.t_then_s.cycle,
        Some(Cycle::from_terms([(plane("u", "w1"), 1), (plane("u", "v"), 1)]))
    );
    assert_eq!(check.s_then_t.cycle, Some(Cycle::single(plane("u", "z1"))));
    assert!(!check.holds());
    let diff = verify_limit_difference(&d, &check).unwrap();
    assert_eq!(diff.omega.len(), 1);
    assert!(diff.holds(), "{} vs {}", diff.difference, diff.boundary);
}

#[test]
fn limit_difference_vanishes_when_limits_agree() {
    let (_, u, v) = plane();
    let cusp = &(&v * &v) - &u.pow(3);
    let d = double_deformation(&[u], &[cusp]).unwrap();
    let check = bigrat_check(&d, Exec::Sequential).unwrap();
    let diff = verify_limit_difference(&d, &check).unwrap();
    assert!(diff.holds());
    assert!(diff.boundary.is_zero());
}

#[test]
fn tangent_action_on_a_product() {
    let (_, u, v) = plane();
    let m = graph_closure(&[&u * &v]).unwrap();
    let act = tangent_action(&m).unwrap();
    let r = act.ring().clone();
    assert_eq!(r, Ring::new(["u", "v", "t", "z1", "a1", "a2"]));
    let (ur, vr, t, z) = (var(&r, "u"), var(&r, "v"), var(&r, "t"), var(&r, "z1"));
    let (a1, a2) = (var(&r, "a1"), var(&r, "a2"));
    let expected = &(&(&z + &(&ur * &a2)) + &(&vr * &a1)) + &(&(&t * &a1) * &a2);
    assert_eq!(act.image(3), expected);
    // The defining equation is carried to itself on the nose.
    let gen = &(&z * &t) - &(&ur * &vr);
    assert_eq!(act.apply(&gen).unwrap(), gen);
    assert!(check_action_invariance(&m, &act).unwrap().passed());
}

#[test]
fn tangent_action_of_a_linear_function_is_t_free() {
    let (_, u, _) = plane();
    let m = graph_closure(&[u]).unwrap();
    let act = tangent_action(&m).unwrap();
    let r = act.ring().clone();
    assert_eq!(act.image(3), &var(&r, "z1") + &var(&r, "a1"));
    assert!(check_action_invariance(&m, &act).unwrap().passed());
}

#[test]
fn zero_parameters_act_trivially() {
    let (_, u, v) = plane();
    let m = graph_closure(&[&u * &v, &u - &v]).unwrap();
    let r = m.ring().clone();
    let zero = vec![Polynomial::zero(&r); 2];
    let act = tangent_action_with(&m, &zero, &r).unwrap();
    assert!(act.images().is_empty());
}

#[test]
fn truncated_action_fails() {
    let (_, u, v) = plane();
    let m = graph_closure(&[&u * &v]).unwrap();
    let report = check_action_invariance(&m, &truncated_action(&m).unwrap()).unwrap();
    assert!(!report.passed());
    assert!(report.offending.is_some());
}

#[test]
fn action_at_zero_is_the_linear_action() {
    let (_, u, v) = plane();
    let fixtures = vec![vec![&u * &v], vec![&(&v * &v) - &u.pow(3), &u * &u]];
    for f in fixtures {
        let m = graph_closure(&f).unwrap();
        let act = tangent_action(&m).unwrap();
        let lin = linear_action(&m).unwrap();
        let at0 = act.at_zero(m.parameter());
        for &zi in m.cone_vars() {
            assert_eq!(at0[&zi], lin.images()[&zi]);
        }
    }
}

#[test]
fn action_is_additive() {
    let (_, u, v) = plane();
    let m = graph_closure(&[&(&u * &u) * &v, &v - &u]).unwrap();
    let (big, idx) = fresh_block(m.ring(), "a", 2);
    let (big, jdx) = fresh_block(&big, "b", 2);
    let a: Vec<Polynomial> = idx.iter().map(|&i| Polynomial::variable(&big, i)).collect();
    let b: Vec<Polynomial> = jdx.iter().map(|&i| Polynomial::variable(&big, i)).collect();
    let ab: Vec<Polynomial> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
    let act_a = tangent_action_with(&m, &a, &big).unwrap();
    let act_b = tangent_action_with(&m, &b, &big).unwrap();
    let act_ab = tangent_action_with(&m, &ab, &big).unwrap();
    assert_eq!(act_a.compose(&act_b).unwrap(), act_ab);
}

#[test]
fn subgroup_acts_on_the_double_deformation() {
    let (_, u, v) = plane();
    for f in [&u * &v, &(&v * &v) - &u.pow(3), v.clone()] {
        let d = double_deformation(std::slice::from_ref(&u), &[f]).unwrap();
        let act = subgroup_action(&d).unwrap();
        let report = check_double_invariance(&d, &act).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(!act.images().contains_key(&0));
    }
}
