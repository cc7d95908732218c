mod support;

use homalg::exactla::{int, kernel_basis, solve_linear, Matrix, Scalar, Vector};
use homalg::fixtures::{a2_assoc, a2_leib, a2_poisson};
use homalg::homcore::{
    check_algebra, check_hom_associative, check_hom_leibniz, check_multiplicative, check_poisson_compat,
    eval_product, yau_twist, HomAlgebra, Kind, Op,
};
use homalg::homio::cli::run;
use homalg::homio::{parse, serialize};
use homalg::homrep::{
    check_representation, pullback_representation, regular_representation, semidirect_product,
    twist_representation, Representation,
};
use homalg::matched::{check_matched_pair, matched_sum, MatchedPair};
use homalg::rbops::{
    characterization_verdicts, check_induced_structures, check_relative_rbo, check_rota_baxter,
    nijenhuis_from_rbo, projection_context, OperatorContext,
};
use homalg::rbosolve::{eliminate_linear, generate_constraints, solve, Elimination, Polynomial, PolySystem, SolutionSet};
use homalg::report::Basis;
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;
use support::*;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn arb_scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=6).prop_map(|(n, d)| homalg::exactla::ratio(n, d))
}

fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(arb_scalar(), rows * cols).prop_map(move |e| Matrix::new(rows, cols, e).expect("sized"))
}

fn arb_vector(dim: usize) -> impl Strategy<Value = Vector> {
    prop::collection::vec(arb_scalar(), dim).prop_map(Vector::new)
}

/// Brute-force residual of an identity of `alg` at basis indices, independent of the checkers.
fn residual(alg: &HomAlgebra, identity: &str, t: &[usize]) -> Vector {
    let e = |i: usize| alg.basis(i);
    let a = |v: &Vector| alg.alpha().apply(v);
    let d = |x: &Vector, y: &Vector| alg.mul(Op::Dot, x, y);
    let b = |x: &Vector, y: &Vector| alg.mul(Op::Bracket, x, y);
    match identity {
        "assoc" => &d(&d(&e(t[0]), &e(t[1])), &a(&e(t[2]))) - &d(&a(&e(t[0])), &d(&e(t[1]), &e(t[2]))),
        "leibniz" => {
            let (x, y, z) = (e(t[0]), e(t[1]), e(t[2]));
            &(&b(&b(&x, &y), &a(&z)) - &b(&a(&x), &b(&y, &z))) - &b(&b(&x, &z), &a(&y))
        }
        "poisson" => {
            let (x, y, z) = (e(t[0]), e(t[1]), e(t[2]));
            &(&b(&d(&x, &y), &a(&z)) - &d(&a(&x), &b(&y, &z))) - &d(&b(&x, &z), &a(&y))
        }
        _ => unreachable!(),
    }
}

fn all_triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |i| (0..n).flat_map(move |j| (0..n).map(move |k| [i, j, k])))
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn matrix_product_is_associative(a in arb_matrix(2, 3), b in arb_matrix(3, 2), c in arb_matrix(2, 3)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn linear_solutions_and_kernels_are_exact(a in arb_matrix(3, 4), x in arb_vector(4), consistent in any::<bool>(), b0 in arb_vector(3)) {
        let b = if consistent { a.apply(&x) } else { b0 };
        if let Some(sol) = solve_linear(&a, &b).unwrap() {
            prop_assert_eq!(a.apply(&sol.particular), b.clone());
            for k in &sol.kernel {
                prop_assert!(a.apply(k).is_zero());
            }
        } else {
            prop_assert!(!consistent);
        }
        for k in kernel_basis(&a) {
            prop_assert!(a.apply(&k).is_zero());
        }
    }

    #[test]
    fn scalars_stay_canonical(p in -1000i64..1000, q in 1i64..1000, r in arb_scalar()) {
        let s = homalg::exactla::ratio(p, q);
        prop_assert!((&s + &(-s.clone())).is_zero());
        for v in [&s + &r, &s * &r, &s - &r] {
            let g = num_integer::Integer::gcd(v.numer(), v.denom());
            prop_assert!(g == 1.into());
            prop_assert!(*v.denom() > 0.into());
        }
    }

    #[test]
    fn products_are_bilinear(seed in any::<u64>(), a in arb_scalar(), b in arb_scalar()) {
        let mut r = rng(seed);
        let dim = r.gen_range(1..=3);
        let t = sparse_tensor(&mut r, dim, 0.5);
        let v = |r: &mut TestRng| Vector::new((0..dim).map(|_| small_scalar(r)).collect());
        let (x, y, z) = (v(&mut r), v(&mut r), v(&mut r));
        let comb = &x.scale(&a) + &y.scale(&b);
        let left = eval_product(&t, &comb, &z).unwrap();
        prop_assert_eq!(left, &eval_product(&t, &x, &z).unwrap().scale(&a) + &eval_product(&t, &y, &z).unwrap().scale(&b));
        let right = eval_product(&t, &z, &comb).unwrap();
        prop_assert_eq!(right, &eval_product(&t, &z, &x).unwrap().scale(&a) + &eval_product(&t, &z, &y).unwrap().scale(&b));
    }

    #[test]
    fn yau_twists_of_valid_algebras_stay_valid(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kind = random_kind(&mut r);
        let (alg, morphisms) = valid_algebra(&mut r, kind);
        prop_assert!(check_algebra(&alg).passed(), "{}", check_algebra(&alg));
        for beta in &morphisms {
            let twisted = yau_twist(&alg, beta).unwrap();
            prop_assert!(check_algebra(&twisted).passed(), "{}", check_algebra(&twisted));
        }
    }

    #[test]
    fn verdicts_match_brute_force(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kind = random_kind(&mut r);
        let alg = if r.gen_bool(0.5) {
            valid_algebra(&mut r, kind).0
        } else {
            random_small_algebra(&mut r, kind)
        };
        let n = alg.dim();
        let mut reports = Vec::new();
        if let Some(t) = alg.dot() {
            reports.push(("assoc", check_hom_associative(t, alg.alpha()).unwrap()));
        }
        if let Some(t) = alg.bracket() {
            reports.push(("leibniz", check_hom_leibniz(t, alg.alpha()).unwrap()));
        }
        if kind == Kind::Poisson {
            reports.push(("poisson", check_poisson_compat(&alg).unwrap()));
        }
        for (id, report) in reports {
            let first = all_triples(n).find(|t| !residual(&alg, id, t).is_zero());
            prop_assert_eq!(report.passed(), first.is_none());
            if let Some(t) = first {
                let w = report.checks[0].witness.clone().unwrap();
                let idx: Vec<usize> = w.tuple.iter().map(|b| match b { Basis::E(i) | Basis::F(i) => *i }).collect();
                prop_assert_eq!(idx, t.to_vec());
                prop_assert_eq!(w.residual, residual(&alg, id, &t));
            }
        }
    }

    #[test]
    fn representation_iff_semidirect_product(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (alg, morphisms) = any_valid_algebra(&mut r);
        let rep = match r.gen_range(0..3) {
            0 => valid_representation(&mut r, &alg, &morphisms),
            1 => { let v = valid_representation(&mut r, &alg, &morphisms); corrupt(&mut r, &v) }
            _ => random_representation(&mut r, &alg),
        };
        let as_rep = check_representation(&rep, &alg).unwrap().passed();
        let as_sum = check_algebra(&semidirect_product(&alg, &rep).unwrap()).passed();
        prop_assert_eq!(as_rep, as_sum);
    }

    #[test]
    fn twisting_composes(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (alg, morphisms) = any_valid_algebra(&mut r);
        let rep = valid_representation(&mut r, &alg, &morphisms);
        let b1 = &morphisms[r.gen_range(0..morphisms.len())];
        let b2 = &morphisms[r.gen_range(0..morphisms.len())];
        let once = twist_representation(&rep, &(b1 * b2), &alg).unwrap();
        let twice = twist_representation(&twist_representation(&rep, b1, &alg).unwrap(), b2, &alg).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn leibniz_antisymmetry_follows(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (alg, morphisms) = valid_algebra(&mut r, Kind::Leibniz);
        let rep = if r.gen_bool(0.5) {
            valid_representation(&mut r, &alg, &morphisms)
        } else {
            random_representation(&mut r, &alg)
        };
        let report = check_representation(&rep, &alg).unwrap();
        if report.get("rho_r-bracket").unwrap().pass {
            prop_assert!(report.get("rho_r-antisymmetry").unwrap().pass);
        }
    }

    #[test]
    fn matched_pairs_are_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kind = random_kind(&mut r);
        let (a1, m1) = valid_algebra(&mut r, kind);
        let (a2, m2) = valid_algebra(&mut r, kind);
        let on_2 = if r.gen_bool(0.5) {
            Representation::zero(kind, a1.dim(), a2.alpha().clone()).unwrap()
        } else {
            random_representation(&mut r, &a1).with_phi(a2.alpha().clone()).unwrap_or_else(|_| Representation::zero(kind, a1.dim(), a2.alpha().clone()).unwrap())
        };
        let on_1 = Representation::zero(kind, a2.dim(), a1.alpha().clone()).unwrap();
        let _ = (m1, m2);
        let Ok(mp) = MatchedPair::new(a1, a2, on_2, on_1) else { return Ok(()); };
        match check_matched_pair(&mp) {
            Ok(report) if report.passed() => prop_assert!(check_algebra(&matched_sum(&mp).unwrap()).passed()),
            _ => {}
        }
    }

    #[test]
    fn degenerate_pairs_are_semidirect_products(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (alg, morphisms) = any_valid_algebra(&mut r);
        let rep = if r.gen_bool(0.5) { valid_representation(&mut r, &alg, &morphisms) } else { random_representation(&mut r, &alg) };
        let trivial = HomAlgebra::zero(alg.kind(), rep.phi().clone()).unwrap();
        let back = Representation::zero(alg.kind(), rep.carrier_dim(), alg.alpha().clone()).unwrap();
        let mp = MatchedPair::new(alg.clone(), trivial, rep.clone(), back).unwrap();
        prop_assert_eq!(matched_sum(&mp).unwrap(), semidirect_product(&alg, &rep).unwrap());
    }

    #[test]
    fn characterizations_agree(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (alg, morphisms) = any_valid_algebra(&mut r);
        let rep = valid_representation(&mut r, &alg, &morphisms);
        let t = if r.gen_bool(0.3) {
            Matrix::zeros(alg.dim(), rep.carrier_dim())
        } else {
            sparse_matrix(&mut r, alg.dim(), rep.carrier_dim(), 0.4)
        };
        let ctx = OperatorContext::new(alg, rep, t).unwrap();
        let v = characterization_verdicts(&ctx);
        prop_assert!(v.iter().all(|&x| x == v[0]), "{:?}", v);
    }

    #[test]
    fn induced_structures_hold(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (alg, morphisms) = any_valid_algebra(&mut r);
        let rep = valid_representation(&mut r, &alg, &morphisms);
        let ctx = projection_context(&alg, &rep).unwrap();
        prop_assert!(check_relative_rbo(&ctx).passed());
        let report = check_induced_structures(&ctx).unwrap();
        prop_assert!(report.passed(), "{}", report);
    }

    #[test]
    fn lifted_nijenhuis_squares_to_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let alg = { let k = random_kind(&mut r); random_small_algebra(&mut r, k) };
        let rep = random_representation(&mut r, &alg);
        let t = sparse_matrix(&mut r, alg.dim(), rep.carrier_dim(), 0.6);
        let n = nijenhuis_from_rbo(&OperatorContext::new(alg, rep, t).unwrap());
        prop_assert!((&n * &n).is_zero());
    }

    #[test]
    fn rota_baxter_is_relative_to_regular(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kind = random_kind(&mut r);
        let alg = if r.gen_bool(0.5) { valid_algebra(&mut r, kind).0 } else { random_small_algebra(&mut r, kind) };
        let t = sparse_matrix(&mut r, alg.dim(), alg.dim(), 0.4);
        let rb = check_rota_baxter(&alg, &t, &Scalar::zero()).unwrap().passed();
        let rel = check_relative_rbo(&OperatorContext::regular(alg, t).unwrap()).passed();
        prop_assert_eq!(rb, rel);
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn solver_output_is_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let kind = random_kind(&mut r);
        let (alg, _) = valid_algebra(&mut r, kind);
        prop_assume!(alg.dim() <= 2);
        let rep = regular_representation(&alg);
        let sys = generate_constraints(&alg, &rep).unwrap();
        let sol = solve(&sys);
        let candidates: Vec<Matrix> = match &sol {
            SolutionSet::Finite(p) => p.clone(),
            SolutionSet::AffineFamily(fs) => fs
                .iter()
                .flat_map(|f| (0..3).map(move |s| {
                    let vals: Vec<Scalar> = (0..f.params.len()).map(|k| homalg::rbosolve::sample_value(s + k)).collect();
                    f.instantiate(&vals)
                }))
                .collect(),
            SolutionSet::Residual(_) => vec![],
        };
        for t in candidates {
            let ctx = OperatorContext::new(alg.clone(), rep.clone(), t.clone()).unwrap();
            prop_assert!(check_relative_rbo(&ctx).passed(), "T = {}", t);
            let values: Vec<Scalar> = t.entries().to_vec();
            prop_assert!(sys.equations.iter().all(|e| e.eval(&values).is_zero()));
        }
    }

    #[test]
    fn elimination_preserves_solutions(seed in any::<u64>()) {
        let mut r = rng(seed);
        let vars = 3;
        let mut eqs = Vec::new();
        for _ in 0..r.gen_range(1..=3) {
            let mut p = Polynomial::constant(int(r.gen_range(-2..=2)));
            for v in 0..vars {
                if r.gen_bool(0.6) {
                    p = p.add(&Polynomial::var(v).scale(&int(r.gen_range(-2..=2))));
                }
                if r.gen_bool(0.2) {
                    p = p.add(&Polynomial::var(v).mul(&Polynomial::var((v + 1) % vars)).scale(&int(r.gen_range(-1..=1))));
                }
            }
            eqs.push(p);
        }
        let sys = PolySystem {
            names: (0..vars).map(|i| format!("x{i}")).collect(),
            rows: 1,
            cols: vars,
            domain_symbol: 'f',
            equations: eqs,
        };
        let grid: Vec<Scalar> = [-2i64, -1, 0, 1, 2].iter().map(|&k| int(k)).chain([homalg::exactla::ratio(1, 2)]).collect();
        let reduced = eliminate_linear(&sys);
        for a in &grid {
            for b in &grid {
                for c in &grid {
                    let pt = vec![a.clone(), b.clone(), c.clone()];
                    let original = sys.equations.iter().all(|e| e.eval(&pt).is_zero());
                    let in_reduced = match &reduced {
                        Elimination::Inconsistent => false,
                        Elimination::Reduced { system, substitution, .. } => {
                            substitution.iter().enumerate().all(|(v, p)| p.eval(&pt) == pt[v])
                                && system.equations.iter().all(|e| e.eval(&pt).is_zero())
                        }
                    };
                    prop_assert_eq!(original, in_reduced, "at {:?}", pt);
                }
            }
        }
    }

    #[test]
    fn serialization_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        let doc = random_document(&mut r);
        let text = serialize(&doc);
        let back = parse(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize(&back), text);
    }
}

#[test]
fn pullback_along_identity_is_regular() {
    for alg in [a2_assoc(), a2_leib(), a2_poisson()] {
        let id = Matrix::identity(2);
        match pullback_representation(&id, &alg, &alg) {
            Ok(rep) => assert_eq!(rep, regular_representation(&alg)),
            Err(_) => assert!(!check_multiplicative(&alg).passed()),
        }
        assert_eq!(homalg::homrep::pullback_representation_unchecked(&id, &alg), regular_representation(&alg));
    }
}

#[test]
fn cli_is_deterministic_and_formats_agree() {
    let dir = std::env::temp_dir().join(format!("homalg-props-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("fixtures.hla");
    std::fs::write(&file, homalg::fixtures::SOURCE).unwrap();
    let f = file.to_str().unwrap();
    for name in ["A2assoc", "A2leib", "A2poisson"] {
        let (c1, t1) = run(["homalg", "check", f, name]);
        let (c2, t2) = run(["homalg", "check", f, name]);
        assert_eq!((c1, &t1), (c2, &t2));
        let (cj, json) = run(["homalg", "--format", "json", "check", f, name]);
        assert_eq!(c1, cj);
        let text_verdicts: Vec<(String, bool)> = t1
            .lines()
            .map(|l| {
                let pass = l.starts_with("PASS ");
                let rest = &l[5..];
                let id = rest.split(" at (").next().unwrap().to_string();
                (id, pass)
            })
            .collect();
        let json_verdicts: Vec<(String, bool)> = json
            .lines()
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                (v["identity"].as_str().unwrap().to_string(), v["pass"].as_bool().unwrap())
            })
            .collect();
        assert_eq!(text_verdicts, json_verdicts);
        assert_eq!(c1 == 0, text_verdicts.iter().all(|(_, p)| *p));
    }
}
