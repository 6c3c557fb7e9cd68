//! Deterministic invariant checks shared by the per-module suites and the
//! acceptance run. Each check returns `Err` with a description of the first
//! violation.

#![allow(dead_code)]

use std::path::Path;
use std::process::Command;

use grasscode::analysis::{
    angle_classes, check_scheme, coarse_relations, design_strength, is_one_design, is_two_design, zonal_sums,
};
use grasscode::bounds::{bound_table, one_distance_bound, relative_code_bound, simplex_size_for, two_distance_bound};
use grasscode::constructions::{extraspecial_code, extraspecial_size, mub_code, pauli_code};
use grasscode::linalg::{
    canonical_pair, chordal_distance, haar_subspace_with, haar_unitary, principal_angles, seeded_rng,
    trace_inner_product, CMatrix, Code, Subspace,
};
use grasscode::sympoly::{
    binomial, dim_h, dim_hk, frac, partitions_up_to, q_binomial, rat, weyl_dim, MonomialPoly, Partition, Rational,
    SymmetricPolynomial,
};
use grasscode::zonal::{
    annihilator_sympoly, expand_in_zonal, mc_pair_integral, zonal_explicit, ZonalBasis,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const FLOAT_TOL: f64 = 1e-8;
pub const GRAM_TOL: f64 = 1e-9;
pub const MC_SIGMAS: f64 = 5.0;

pub type Check = Result<(), String>;

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

/// A rational with numerator in `-num..=num` and denominator in `1..=den`.
pub fn random_rational(rng: &mut ChaCha8Rng, num: i64, den: i64) -> Rational {
    frac(rng.random_range(-num..=num), rng.random_range(1..=den))
}

pub fn haar_code(rng: &mut ChaCha8Rng, n: usize, m: usize, size: usize) -> Code {
    let members = (0..size).map(|_| haar_subspace_with(rng, n, m).unwrap()).collect();
    Code::new(n, m, members).unwrap()
}

fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

// ---------------------------------------------------------------- linalg

pub fn check_angle_identities(a: &Subspace, b: &Subspace, u: &CMatrix) -> Check {
    let y = principal_angles(a, b).map_err(|e| e.to_string())?;
    let t = trace_inner_product(a, b).unwrap();
    ensure((t - y.sum()).abs() < FLOAT_TOL, || format!("tr(PaPb) = {t}, sum of angles {}", y.sum()))?;

    let moved = principal_angles(&a.transformed(u).unwrap(), &b.transformed(u).unwrap()).unwrap();
    ensure(y.max_distance(&moved) < FLOAT_TOL, || format!("unitary invariance: {y:?} vs {moved:?}"))?;

    let swapped = principal_angles(b, a).unwrap();
    ensure(y.max_distance(&swapped) < FLOAT_TOL, || format!("symmetry: {y:?} vs {swapped:?}"))?;

    let d = chordal_distance(a, b).unwrap();
    let diff = a.projection() - b.projection();
    let half = 0.5 * diff.iter().map(|z| z.norm_sqr()).sum::<f64>();
    ensure((d * d - half).abs() < FLOAT_TOL, || format!("chordal distance {d}^2 vs {half}"))
}

pub fn check_canonical_pair(a: &Subspace, b: &Subspace) -> Check {
    let (n, m) = (a.n(), a.m());
    let y = principal_angles(a, b).unwrap();
    let (ca, cb) = canonical_pair(a, b).map_err(|e| e.to_string())?;
    let mut expect_a = CMatrix::zeros(n, m);
    let mut expect_b = CMatrix::zeros(n, m);
    for j in 0..m {
        let yj = y.values()[j];
        expect_a[(j, j)] = 1.0.into();
        expect_b[(j, j)] = yj.sqrt().into();
        expect_b[(m + j, j)] = (1.0 - yj).max(0.0).sqrt().into();
    }
    let da = max_abs_diff(&ca, &expect_a);
    let db = max_abs_diff(&cb, &expect_b);
    ensure(da < FLOAT_TOL && db < FLOAT_TOL, || format!("canonical form off by {da:.2e}, {db:.2e}"))?;
    let again = principal_angles(&Subspace::from_basis(&ca).unwrap(), &Subspace::from_basis(&cb).unwrap()).unwrap();
    ensure(again.max_distance(&y) < FLOAT_TOL, || "angles not reproduced".into())
}

pub fn check_linalg(seed: u64) -> Check {
    let mut rng = seeded_rng(seed);
    for &(n, m) in &[(4, 2), (5, 1), (6, 3), (7, 2), (3, 3)] {
        for _ in 0..10 {
            let a = haar_subspace_with(&mut rng, n, m).unwrap();
            let b = haar_subspace_with(&mut rng, n, m).unwrap();
            let u = haar_unitary(&mut rng, n);
            check_angle_identities(&a, &b, &u)?;
        }
    }
    Ok(())
}

pub fn check_canonical_pairs(seed: u64, count: usize) -> Check {
    let mut rng = seeded_rng(seed);
    for _ in 0..count {
        let a = haar_subspace_with(&mut rng, 6, 2).unwrap();
        let b = haar_subspace_with(&mut rng, 6, 2).unwrap();
        check_canonical_pair(&a, &b)?;
    }
    Ok(())
}

// ---------------------------------------------------------------- sympoly

/// A random symmetric polynomial in `m` variables built from power sums,
/// independently of the Schur basis.
pub fn random_symmetric_monomial(rng: &mut ChaCha8Rng, m: usize, max_degree: u32) -> MonomialPoly {
    let power_sum = |k: u32| {
        (0..m).fold(MonomialPoly::zero(m), |acc, i| acc.add(&MonomialPoly::variable(m, i).pow(k)))
    };
    let mut poly = MonomialPoly::constant(m, random_rational(rng, 9, 5));
    for _ in 0..rng.random_range(1..=4) {
        let mut term = MonomialPoly::constant(m, random_rational(rng, 9, 7));
        let mut degree = 0;
        while degree < max_degree && rng.random_bool(0.7) {
            let k = rng.random_range(1..=max_degree - degree);
            term = term.mul(&power_sum(k));
            degree += k;
        }
        poly = poly.add(&term);
    }
    poly
}

pub fn check_basis_round_trip(poly: &MonomialPoly) -> Check {
    let s = SymmetricPolynomial::from_monomial(poly).map_err(|e| e.to_string())?;
    let back = s.to_monomial().map_err(|e| e.to_string())?;
    ensure(&back == poly, || format!("round trip changed the polynomial: {s}"))
}

/// The closed forms for `dim H_mu`.
pub fn dim_h_closed_form(mu: &Partition, n: i64) -> Option<BigInt> {
    let n = big(n);
    let n2 = &n * &n;
    let one = BigInt::one();
    match mu.parts() {
        [] => Some(one),
        [1] => Some(&n2 - 1),
        [2] => Some(&n2 * (&n - 1) * (&n + 3) / 4),
        [1, 1] => Some(&n2 * (&n + 1) * (&n - 3) / 4),
        [2, 1] => Some((&n2 - 1) * (&n2 - 1) * (&n2 - 9) / 9),
        parts if parts.len() == 1 => {
            let k = parts[0] as u64;
            let nu = n.to_string().parse::<u64>().unwrap();
            let b = binomial(nu + k - 2, k);
            Some(&b * &b * (&n + 2 * k - 1) / (&n - 1))
        }
        parts if parts.iter().all(|&p| p == 1) => {
            let k = parts.len() as u64;
            let nu = n.to_string().parse::<u64>().unwrap();
            let b = binomial(nu + 1, k);
            Some(&b * &b * (&n - 2 * k + 1) / (&n + 1))
        }
        _ => None,
    }
}

pub fn check_dimensions() -> Check {
    for n in 4..=12i64 {
        let nu = n as usize;
        let mut shapes = vec![Partition::row(1), Partition::row(2), Partition::new(vec![1, 1]).unwrap(), Partition::new(vec![2, 1]).unwrap()];
        shapes.extend((3..=5).map(Partition::row));
        shapes.extend((2..=nu / 2).map(Partition::column));
        for mu in shapes {
            if 2 * mu.len() > nu {
                continue;
            }
            let expected = dim_h_closed_form(&mu, n).unwrap();
            let got = dim_h(&mu, nu).map_err(|e| e.to_string())?;
            ensure(got == expected, || format!("dim H{mu} at n = {n}: {got} vs {expected}"))?;
            let mut lambda = vec![0i64; nu];
            for (i, &p) in mu.parts().iter().enumerate() {
                lambda[i] = p as i64;
                lambda[nu - 1 - i] = -(p as i64);
            }
            ensure(weyl_dim(&lambda).unwrap() == expected, || format!("weyl_dim for {mu} at n = {n}"))?;
        }
        let n2 = (n * n) as u64;
        ensure(dim_hk(1, 1, nu).unwrap() == BigInt::from(n2), || format!("dim H_1(1, {n})"))?;
        for m in 2..=nu / 2 {
            ensure(dim_hk(2, m, nu).unwrap() == binomial(n2, 2), || format!("dim H_2({m}, {n})"))?;
        }
    }
    for n in 3..=10i64 {
        let expected = big(1) + big(n * n - 1) + big(n * n * (n - 1) * (n + 3) / 4);
        ensure(dim_hk(2, 1, n as usize).unwrap() == expected, || format!("dim H_2(1, {n})"))?;
    }
    Ok(())
}

pub fn check_q_binomial_symmetry() -> Check {
    for q in [2u64, 3, 4, 5, 7] {
        for n in 0..=8u32 {
            for m in 0..=n {
                let a = q_binomial(n, m, q).unwrap();
                let b = q_binomial(n, n - m, q).unwrap();
                ensure(a == b, || format!("q_binomial({n}, {m}, {q})"))?;
            }
        }
    }
    Ok(())
}

pub fn check_sympoly(seed: u64) -> Check {
    let mut rng = seeded_rng(seed);
    for _ in 0..50 {
        let m = rng.random_range(1..=3);
        check_basis_round_trip(&random_symmetric_monomial(&mut rng, m, 4))?;
    }
    check_dimensions()?;
    check_q_binomial_symmetry()
}

// ---------------------------------------------------------------- zonal

pub fn check_unit_expansions(seed: u64) -> Check {
    let mut rng = seeded_rng(seed);
    for _ in 0..10 {
        let n = rng.random_range(2..=10usize);
        let m = rng.random_range(1..=n / 2);
        for mu in partitions_up_to(2, m) {
            let z = zonal_explicit(&mu, m, n).unwrap();
            let e = expand_in_zonal(z.poly(), m, n).map_err(|e| e.to_string())?;
            for nu in partitions_up_to(2, m) {
                let want = if nu == mu { Rational::one() } else { Rational::zero() };
                ensure(e.coeff(&nu) == want, || format!("Z{mu} in G({m}, {n}) has c{nu} = {}", e.coeff(&nu)))?;
            }
        }
    }
    Ok(())
}

pub fn check_z1_pairs(seed: u64) -> Check {
    let mut rng = seeded_rng(seed);
    for &(m, n) in &[(1, 3), (2, 4), (2, 7), (3, 6), (3, 9)] {
        let z1 = zonal_explicit(&Partition::row(1), m, n).unwrap();
        for _ in 0..10 {
            let a = haar_subspace_with(&mut rng, n, m).unwrap();
            let b = haar_subspace_with(&mut rng, n, m).unwrap();
            let got = z1.evaluate_pair(&a, &b).unwrap();
            let want = n as f64 / m as f64 * trace_inner_product(&a, &b).unwrap() - m as f64;
            ensure((got - want).abs() < FLOAT_TOL, || format!("Z_1 in G({m}, {n}): {got} vs {want}"))?;
        }
    }
    Ok(())
}

/// `<Z_{t,a}, f_b> = f(y(a, b))` by Monte Carlo for `f` among the zonals of
/// degree at most `t`.
pub fn check_reproducing(m: usize, n: usize, t: u32, samples: usize, seed: u64) -> Check {
    let basis = ZonalBasis::new(m, n).unwrap();
    let aggregate = basis.aggregate(t).unwrap();
    let mut rng = seeded_rng(seed);
    let a = haar_subspace_with(&mut rng, n, m).unwrap();
    let b = haar_subspace_with(&mut rng, n, m).unwrap();
    let y = principal_angles(&a, &b).unwrap();
    for mu in partitions_up_to(t, m).into_iter().filter(|mu| !mu.is_empty()) {
        let f = basis.get(&mu).unwrap().poly().clone();
        let est = mc_pair_integral(&aggregate, &a, &f, &b, samples, seed + 1).unwrap();
        let want = f.evaluate(y.values()).unwrap();
        ensure((est.estimate - want).abs() < MC_SIGMAS * est.stderr, || {
            format!("reproducing Z{mu}: {} +- {} vs {want}", est.estimate, est.stderr)
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------- bounds

pub fn dgs_one(alpha: &Rational, n: i64) -> Rational {
    let n = rat(n);
    &n * (rat(1) - alpha) / (rat(1) - &n * alpha)
}

pub fn dgs_two(alpha: &Rational, beta: &Rational, n: i64) -> Rational {
    let n = rat(n);
    let np1 = &n + rat(1);
    &n * &np1 * (rat(1) - alpha) * (rat(1) - beta) / (rat(2) - &np1 * (alpha + beta) + &n * &np1 * alpha * beta)
}

pub fn check_m1_reductions(seed: u64, count: usize) -> Check {
    let mut rng = seeded_rng(seed);
    let mut done = 0;
    while done < count {
        let n = rng.random_range(2..=12i64);
        let alpha = random_rational(&mut rng, 9, 11);
        let beta = random_rational(&mut rng, 9, 11);
        if rat(1) == &alpha * rat(n) {
            continue;
        }
        let one = one_distance_bound(&alpha, 1, n as usize).value;
        ensure(one == Some(dgs_one(&alpha, n)), || format!("one-distance m = 1, n = {n}, alpha = {alpha}"))?;
        let den = rat(2) - rat(n + 1) * (&alpha + &beta) + rat(n * (n + 1)) * &alpha * &beta;
        if den.is_zero() {
            continue;
        }
        let two = two_distance_bound(&alpha, &beta, 1, n as usize).map_err(|e| e.to_string())?.value;
        ensure(two == Some(dgs_two(&alpha, &beta, n)), || format!("two-distance m = 1, n = {n}, {alpha}, {beta}"))?;
        done += 1;
    }
    for n in 2..=10usize {
        let v = one_distance_bound(&frac(1, n as i64 + 1), 1, n).value;
        ensure(v == Some(rat((n * n) as i64)), || format!("one_distance_bound(1/(n+1), 1, {n}) = {v:?}"))?;
    }
    Ok(())
}

pub fn check_simplex_consistency(seed: u64, count: usize) -> Check {
    let mut rng = seeded_rng(seed);
    for _ in 0..count {
        let n = rng.random_range(2..=10usize);
        let m = rng.random_range(1..=n / 2);
        let alpha = random_rational(&mut rng, 20, 13);
        let solved = simplex_size_for(&alpha, m, n);
        let bound = one_distance_bound(&alpha, m, n).value;
        ensure(solved == bound, || format!("G({m}, {n}), alpha = {alpha}: {solved:?} vs {bound:?}"))?;
    }
    Ok(())
}

pub fn check_annihilator_bounds(seed: u64, count: usize) -> Check {
    let mut rng = seeded_rng(seed);
    let mut done = 0;
    while done < count {
        let n = rng.random_range(3..=9usize);
        let m = rng.random_range(1..=n / 2);
        let alpha = random_rational(&mut rng, 12, 7);
        let beta = random_rational(&mut rng, 12, 7);
        let f1 = annihilator_sympoly(std::slice::from_ref(&alpha), m).unwrap();
        let rel = relative_code_bound(&f1, m, n).map_err(|e| e.to_string())?.value;
        let closed = one_distance_bound(&alpha, m, n).value;
        ensure(rel == closed, || format!("one distance G({m}, {n}), {alpha}: {rel:?} vs {closed:?}"))?;
        let Ok(closed2) = two_distance_bound(&alpha, &beta, m, n) else {
            continue;
        };
        let f2 = annihilator_sympoly(&[alpha.clone(), beta.clone()], m).unwrap();
        let rel2 = relative_code_bound(&f2, m, n).map_err(|e| e.to_string())?.value;
        ensure(rel2 == closed2.value, || format!("two distances G({m}, {n}), {alpha}, {beta}"))?;
        done += 1;
    }
    Ok(())
}

pub fn check_bound_determinism() -> Check {
    let alpha = frac(3, 17);
    let beta = frac(-2, 9);
    let a = two_distance_bound(&alpha, &beta, 3, 8).unwrap();
    let b = two_distance_bound(&alpha, &beta, 3, 8).unwrap();
    ensure(a == b && a.to_json() == b.to_json(), || "two-distance bound differs across runs".into())?;
    let t1 = bound_table(2, 6).unwrap().to_csv();
    let t2 = bound_table(2, 6).unwrap().to_csv();
    ensure(t1 == t2, || "table differs across runs".into())
}

// ---------------------------------------------------------------- constructions

pub fn check_gram_values(code: &Code, allowed: &[f64]) -> Check {
    let g = code.gram_matrix();
    for i in 0..code.len() {
        for j in (i + 1)..code.len() {
            let v = g[(i, j)];
            ensure(allowed.iter().any(|a| (v - a).abs() < GRAM_TOL), || format!("gram entry ({i}, {j}) = {v}"))?;
        }
    }
    Ok(())
}

pub fn check_pauli(k: u32) -> Check {
    let code = pauli_code(k).map_err(|e| e.to_string())?;
    let n = 1usize << k;
    ensure(code.len() == 2 * (4usize.pow(k) - 1), || format!("pauli({k}) size {}", code.len()))?;
    check_gram_values(&code, &[0.0, n as f64 / 4.0])?;
    let projections: Vec<CMatrix> = code.iter().map(|s| s.projection()).collect();
    let identity = CMatrix::identity(n, n);
    for (i, p) in projections.iter().enumerate() {
        let found = projections.iter().any(|q| max_abs_diff(&(p + q), &identity) < GRAM_TOL);
        ensure(found, || format!("pauli({k}) member {i} has no complement"))?;
    }
    Ok(())
}

/// Number of totally isotropic `d`-dimensional subspaces of `F_q^{2n}`.
pub fn isotropic_closed_form(q: u64, n: u32, d: u32) -> BigInt {
    let q = BigInt::from(q);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..d {
        num *= q.pow(2 * (n - i)) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

pub fn check_extraspecial_sizes() -> Check {
    for &(p, n, k) in &[(3u64, 2usize, 1usize), (3, 2, 0), (5, 2, 1)] {
        let d = (n - k) as u32;
        let expected = isotropic_closed_form(p, n as u32, d) * BigInt::from(p).pow(d);
        let size = extraspecial_size(p, n, k).unwrap();
        ensure(size == expected, || format!("extraspecial_size({p}, {n}, {k}) = {size}"))?;
        let code = extraspecial_code(p, n, k).map_err(|e| e.to_string())?;
        ensure(BigInt::from(code.len()) == expected, || format!("extraspecial_code({p}, {n}, {k}) has {}", code.len()))?;
    }
    Ok(())
}

pub fn check_extraspecial_equality(p: u64, n: usize) -> Check {
    let code = extraspecial_code(p, n, n - 1).map_err(|e| e.to_string())?;
    let beta = BigInt::from(p).pow((n - 2) as u32);
    let bound = two_distance_bound(&rat(0), &Rational::from_integer(beta), p.pow(n as u32 - 1) as usize, p.pow(n as u32) as usize)
        .map_err(|e| e.to_string())?;
    ensure(bound.value == Some(rat(code.len() as i64)), || format!("({p}, {n}): bound {bound} vs {}", code.len()))
}

pub fn check_same_group_orthogonal(code: &Code) -> Check {
    let labels = code.labels().ok_or("code has no labels")?;
    let group = |l: &str| l.split(':').next().unwrap_or("").to_string();
    for i in 0..code.len() {
        for j in (i + 1)..code.len() {
            if group(&labels[i]) != group(&labels[j]) {
                continue;
            }
            let t = trace_inner_product(code.member(i), code.member(j)).unwrap();
            ensure(t < GRAM_TOL, || format!("{} and {} overlap: {t}", labels[i], labels[j]))?;
        }
    }
    Ok(())
}

pub fn check_constructions() -> Check {
    for k in 1..=3 {
        check_pauli(k)?;
    }
    check_extraspecial_sizes()?;
    check_extraspecial_equality(3, 2)?;
    check_extraspecial_equality(5, 2)?;
    check_same_group_orthogonal(&extraspecial_code(3, 2, 1).unwrap())?;
    check_same_group_orthogonal(&extraspecial_code(3, 2, 0).unwrap())
}

// ---------------------------------------------------------------- analysis

pub fn check_relation_partition(code: &Code, coarse: bool) -> Check {
    let r = if coarse { coarse_relations(code, FLOAT_TOL) } else { angle_classes(code, FLOAT_TOL) }.map_err(|e| e.to_string())?;
    let size = code.len();
    let total = (0..r.class_count()).fold(nalgebra::DMatrix::zeros(size, size), |acc, k| acc + r.relation_matrix(k));
    ensure(total == nalgebra::DMatrix::from_element(size, size, 1.0), || "relation matrices do not sum to J".into())?;
    ensure(r.relation_matrix(0) == nalgebra::DMatrix::identity(size, size), || "A_(1,...,1) is not I".into())
}

pub fn check_code_analysis(code: &Code) -> Check {
    check_relation_partition(code, false)?;
    check_relation_partition(code, true)?;
    if 2 * code.m() <= code.n() {
        let basis = ZonalBasis::new(code.m(), code.n()).unwrap();
        for (mu, v) in zonal_sums(code, &basis).unwrap() {
            ensure(v >= -FLOAT_TOL, || format!("zonal sum for {mu} is {v}"))?;
        }
        let s = design_strength(code, 2, FLOAT_TOL).unwrap();
        for (mu, v) in &s.sums {
            if mu.size() <= s.strength {
                ensure(*v < FLOAT_TOL, || format!("strength {} but sum for {mu} is {v}", s.strength))?;
            }
        }
    }
    if code.n() >= 2 {
        let two = is_two_design(code, FLOAT_TOL).unwrap();
        let one = is_one_design(code, FLOAT_TOL).unwrap();
        ensure(!two.holds || one.holds, || "2-design that is not a 1-design".into())?;
    }
    Ok(())
}

pub fn check_coarse_scheme(code: &Code) -> Check {
    let r = coarse_relations(code, FLOAT_TOL).map_err(|e| e.to_string())?;
    ensure(r.class_count() == 3, || format!("{} coarse classes", r.class_count()))?;
    let report = check_scheme(&r, FLOAT_TOL).map_err(|e| e.to_string())?;
    ensure(report.is_scheme, || format!("coarse relations are not a scheme: {report}"))
}

pub fn check_analysis(seed: u64) -> Check {
    let mut rng = seeded_rng(seed);
    for i in 0..20 {
        let (n, m) = [(4, 2), (3, 1), (5, 2), (6, 3)][i % 4];
        let size = rng.random_range(2..=12);
        check_code_analysis(&haar_code(&mut rng, n, m, size))?;
    }
    for code in [pauli_code(2).unwrap(), mub_code(3).unwrap(), mub_code(5).unwrap(), extraspecial_code(3, 2, 1).unwrap()] {
        check_code_analysis(&code)?;
    }
    check_coarse_scheme(&mub_code(5).unwrap())?;
    check_coarse_scheme(&extraspecial_code(3, 2, 1).unwrap())
}

// ---------------------------------------------------------------- cli

pub fn grasscode(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_grasscode")).args(args).output().expect("run grasscode");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

pub fn check_cli_round_trip(dir: &Path) -> Check {
    let file = dir.join("mub.json");
    let file = file.to_str().unwrap();
    let (code, _, err) = grasscode(&["construct", "mub", "--p", "5", "-o", file]);
    ensure(code == 0, || format!("construct failed: {err}"))?;
    let (code, first, _) = grasscode(&["verify-design", "--t", "2", "--json", file]);
    ensure(code == 0, || "verify-design failed".into())?;
    let (_, second, _) = grasscode(&["verify-design", "--t", "2", "--json", file]);
    ensure(first == second, || "verify-design output is not stable".into())?;
    let report: serde_json::Value = serde_json::from_str(&first).map_err(|e| e.to_string())?;
    let in_memory = is_two_design(&mub_code(5).unwrap(), FLOAT_TOL).unwrap();
    ensure(report["two_design"]["residual"].as_f64() == Some(in_memory.residual), || {
        format!("file residual {} vs in-memory {}", report["two_design"]["residual"], in_memory.residual)
    })?;
    let (_, text, _) = grasscode(&["verify-design", "--t", "2", file]);
    ensure(text.contains("2-design: true"), || format!("unexpected report: {text}"))
}

pub fn check_cli_tables() -> Check {
    for n in 2..=8usize {
        for m in 1..=n / 2 {
            let (code, text, err) = grasscode(&["table", "--m", &m.to_string(), "--n", &n.to_string()]);
            ensure(code == 0, || format!("table G({m}, {n}) failed: {err}"))?;
            for cell in ["absolute |A|=1", "absolute |A|=2", "relative A={a}", "relative A={a,b}"] {
                ensure(text.contains(cell), || format!("table G({m}, {n}) lacks {cell}"))?;
            }
            let conditions = text.lines().filter(|l| l.trim_start().starts_with("if ")).count();
            ensure(conditions >= 3, || format!("table G({m}, {n}) has {conditions} condition rows"))?;
        }
    }
    Ok(())
}
