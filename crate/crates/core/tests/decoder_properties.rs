use cycbound::code::{CodeFamily, CyclicCode};
use cycbound::decoder::{DecodeStatus, DecoderContext, DecodingResult, KeyEquationMethod};
use cycbound::field::{FieldElement, Poly};
use cycbound::harness::{exhaustive_decode_test, Codewords, DEFAULT_BUDGET};
use cycbound::series::Registry;
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn context(n: u64, q: u64, reps: &[i64]) -> DecoderContext {
    let code = CyclicCode::new(n, q, reps).unwrap();
    let reg = Registry::builtin().prepare(code.family()).unwrap();
    DecoderContext::best(&code, &reg).unwrap()
}

/// `sum_i e_i alpha'^{i b'} h(alpha'^i x) prod_{j != i} f(alpha'^j x)`,
/// built from the candidate and the context's primitive root only.
fn explicit_omega(ctx: &DecoderContext, errors: &[(u64, FieldElement)]) -> Poly {
    let amb = ctx.ambient();
    let emb = ctx.to_ambient();
    let h = emb.apply_poly(&ctx.candidate().h);
    let f = emb.apply_poly(&ctx.candidate().f);
    let mut omega = Poly::zero();
    for &(i, e) in errors {
        let ai = amb.pow(ctx.alpha(), i);
        let mut term = h.scale_argument(ai, amb).scale(amb.mul(emb.apply(e), amb.pow(ai, ctx.shift())), amb);
        for &(j, _) in errors {
            if j != i {
                term = term.mul(&f.scale_argument(amb.pow(ctx.alpha(), j), amb), amb);
            }
        }
        omega = omega.add(&term, amb);
    }
    omega
}

fn random_error(ctx: &DecoderContext, weight: usize, rng: &mut ChaCha8Rng) -> Vec<(u64, FieldElement)> {
    let base = ctx.code().base();
    let mut pos: Vec<u64> = sample(rng, ctx.code().n() as usize, weight).into_iter().map(|p| p as u64).collect();
    pos.sort_unstable();
    pos.into_iter().map(|p| (p, base.random_nonzero(rng))).collect()
}

fn corrupt(ctx: &DecoderContext, c: &[FieldElement], errors: &[(u64, FieldElement)]) -> Vec<u64> {
    let base = ctx.code().base();
    let mut r = c.to_vec();
    for &(i, e) in errors {
        r[i as usize] = base.add(r[i as usize], e);
    }
    r.iter().map(|x| x.index()).collect()
}

#[test]
fn example_code_corrects_every_pattern_up_to_radius() {
    let ctx = context(17, 2, &[1]);
    assert_eq!(ctx.t_max(), 2);
    let rep = exhaustive_decode_test(&ctx, Codewords::All { budget: DEFAULT_BUDGET }, None).unwrap();
    assert_eq!((rep.codewords, rep.patterns, rep.failures), (512, 153, 0));
}

#[test]
fn weight_three_never_yields_a_non_codeword() {
    let ctx = context(17, 2, &[1]);
    let code = ctx.code();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut fail, mut mis) = (0, 0);
    for _ in 0..1000 {
        let msg: Vec<FieldElement> = (0..code.k()).map(|_| code.base().random(&mut rng)).collect();
        let c = code.encode(&msg);
        let e = random_error(&ctx, 3, &mut rng);
        let res = ctx.decode(&corrupt(&ctx, &c, &e)).unwrap();
        match res.status {
            DecodeStatus::DecodingFailure => {
                fail += 1;
                assert!(res.corrected.is_none());
            }
            DecodeStatus::Ok => {
                let out: Vec<FieldElement> =
                    res.corrected.unwrap().iter().map(|&x| code.base().element(x).unwrap()).collect();
                assert!(code.is_codeword(&out));
                assert_ne!(out, c);
                mis += 1;
            }
        }
    }
    assert_eq!(fail + mis, 1000);
}

#[test]
fn ternary_code_with_shifted_fraction() {
    let ctx = context(22, 3, &[1, 2]);
    assert_eq!((ctx.code().k(), ctx.d_f(), ctx.t_max()), (12, 6, 2));
    assert!(!ctx.candidate().is_bch());
    let rep = exhaustive_decode_test(&ctx, Codewords::Sample { count: 40, seed: 9 }, None).unwrap();
    assert_eq!(rep.failures, 0, "{:?}", rep.examples.first());
}

#[test]
fn results_round_trip_through_json() {
    let ctx = context(13, 3, &[1, 2]);
    let mut r = vec![0u64; 13];
    r[4] = 2;
    let res = ctx.decode(&r).unwrap();
    let back: DecodingResult = serde_json::from_str(&serde_json::to_string(&res).unwrap()).unwrap();
    assert_eq!(back, res);
    r[5] = 1;
    r[9] = 1;
    let res = ctx.decode(&r).unwrap();
    let back: DecodingResult = serde_json::from_str(&serde_json::to_string(&res).unwrap()).unwrap();
    assert_eq!(back, res);
}

fn arb_context() -> impl Strategy<Value = (u64, u64, u128, u64)> {
    prop_oneof![
        (Just(2u64), prop::sample::select(vec![15u64, 17, 21, 23, 31])),
        (Just(3u64), prop::sample::select(vec![8u64, 11, 13, 16, 20, 22, 26])),
        (Just(4u64), prop::sample::select(vec![9u64, 15, 17])),
    ]
    .prop_flat_map(|(q, n)| (Just(q), Just(n), any::<u128>(), any::<u64>()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    /// Within the radius: Euclid and the linear system agree, the locator
    /// is the product of its position factors, the evaluator matches its
    /// explicit form and the decoder returns the transmitted codeword.
    #[test]
    fn key_equation_identities((q, n, bits, seed) in arb_context()) {
        let family = CodeFamily::new(n, q).unwrap();
        let code = family.code_at(bits & ((1u128 << family.cosets().len()) - 1));
        prop_assume!(code.k() > 0 && code.k() < n);
        let reg = Registry::builtin().prepare(&family).unwrap();
        let ctx = DecoderContext::best(&code, &reg).unwrap();
        prop_assume!(ctx.t_max() > 0);
        prop_assert!(ctx.t_max() * ctx.candidate().u <= (ctx.run() / 2) as usize);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = rng.random_range(1..=ctx.t_max());
        let errors = random_error(&ctx, t, &mut rng);
        let msg: Vec<FieldElement> = (0..code.k()).map(|_| code.base().random(&mut rng)).collect();
        let c = code.encode(&msg);
        let r = corrupt(&ctx, &c, &errors);

        let s = ctx.syndrome(&r).unwrap();
        let key = ctx.solve_key_equation(&s).unwrap();
        let positions: Vec<u64> = errors.iter().map(|e| e.0).collect();
        prop_assert_eq!(&key.lambda, &ctx.locator(&positions));
        prop_assert_eq!(&key.omega, &explicit_omega(&ctx, &errors));
        prop_assert_eq!(key.method, KeyEquationMethod::Euclid);
        let lin = ctx.linear_system(&s, t).unwrap();
        prop_assert_eq!(lin.scale(key.lambda.coeff(0), ctx.ambient()), key.lambda.clone());

        let res = ctx.decode(&r).unwrap();
        prop_assert!(res.is_ok(), "{:?}", res.reason);
        prop_assert_eq!(res.positions, positions);
        let vals: Vec<u64> = errors.iter().map(|e| e.1.index()).collect();
        prop_assert_eq!(res.values, vals);
        let sent: Vec<u64> = c.iter().map(|x| x.index()).collect();
        prop_assert_eq!(res.corrected.unwrap(), sent);
    }
}
