//! Acceptance suite: one test per criterion, each printing a pass line
//! (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rowlift::conditions::{
    sap_check_small, usc_refute_poly_example, usc_witness_z, usc_zero_ideal_refutation,
};
use rowlift::exactring::{BaseRing, Ideal, QuotRing, RingElem};
use rowlift::lifting::{omega_lift, sigma_lift, verify_certificate, GroupKind};
use rowlift::matgroup::{
    diag_word, enumerate_sl, enumerate_sp, ge_closure, transposition_word, word_to_matrix, RMatrix,
};
use rowlift::projspace::{enumerate_pf, proj_equiv, WeightVector};

fn z(n: i64) -> RingElem {
    RingElem::int(n)
}

fn zring() -> QuotRing {
    QuotRing::base_ring(BaseRing::Int)
}

#[test]
fn criterion_1_omega_k1_exhaustive() {
    let start = Instant::now();
    let w = WeightVector::ones(2);
    let i2 = Ideal::from_int(2);
    let i3 = Ideal::from_int(3);
    let level = Ideal::from_int(5);
    let pf2 = enumerate_pf(1, &w, &i2).unwrap();
    let pf3 = enumerate_pf(1, &w, &i3).unwrap();
    assert_eq!(pf2.len(), 3);
    assert_eq!(pf3.len(), 4);
    let mut verified = 0;
    for p0 in &pf2 {
        for p1 in &pf3 {
            let rows = vec![p0.rep().unwrap().to_vec(), p1.rep().unwrap().to_vec()];
            let cert = omega_lift(&rows, &[i2.clone(), i3.clone()], &level).unwrap();
            assert!(cert.verdicts.all());
            assert!(verify_certificate(&cert));
            // B = Id mod 5 with exact row congruences was just recomputed
            verified += 1;
        }
    }
    assert_eq!(verified, 12);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "criterion 1 exceeded 5 s: {elapsed:?}"
    );
    println!(
        "criterion 1 (omega k=1, 12/12 targets in {:.2?}): PASS",
        elapsed
    );
}

#[test]
fn criterion_2_omega_k2_weighted_random() {
    let start = Instant::now();
    let w = WeightVector::new(vec![1, 2, 3]).unwrap();
    let ideals = vec![Ideal::from_int(2), Ideal::from_int(3), Ideal::from_int(5)];
    let level = Ideal::from_int(7);
    let spaces: Vec<_> = ideals
        .iter()
        .map(|i| enumerate_pf(2, &w, i).unwrap())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(20240511);
    let mut verified = 0;
    for _ in 0..100 {
        let targets: Vec<_> = spaces
            .iter()
            .map(|s| &s[rng.gen_range(0..s.len())])
            .collect();
        let rows: Vec<Vec<RingElem>> = targets
            .iter()
            .map(|t| t.rep().unwrap().to_vec())
            .collect();
        let cert = omega_lift(&rows, &ideals, &level).unwrap();
        assert!(cert.verdicts.all());
        assert!(verify_certificate(&cert));
        // the weighted class of each lifted row matches the target class
        for (i, target) in targets.iter().enumerate() {
            assert!(proj_equiv(
                cert.matrix.row(i),
                target.rep().unwrap(),
                &ideals[i],
                &w
            )
            .unwrap());
        }
        verified += 1;
    }
    assert_eq!(verified, 100);
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 60.0,
        "criterion 2 exceeded 60 s: {elapsed:?}"
    );
    println!(
        "criterion 2 (omega k=2 weighted, 100/100 targets in {:.2?}): PASS",
        elapsed
    );
}

#[test]
fn criterion_3_sigma_k1_exhaustive_and_k2_random() {
    // k = 1: exhaustive over the product of PF^1_<5> and PF^1_<7>
    let w = WeightVector::ones(2);
    let i5 = Ideal::from_int(5);
    let i7 = Ideal::from_int(7);
    let level2 = Ideal::from_int(2);
    let pf5 = enumerate_pf(1, &w, &i5).unwrap();
    let pf7 = enumerate_pf(1, &w, &i7).unwrap();
    assert_eq!(pf5.len(), 6);
    assert_eq!(pf7.len(), 8);
    let omega_form = RMatrix::omega(zring(), 1);
    let mut count = 0;
    for p0 in &pf5 {
        for p1 in &pf7 {
            let rows = vec![p0.rep().unwrap().to_vec(), p1.rep().unwrap().to_vec()];
            let cert = sigma_lift(&rows, &[i5.clone(), i7.clone()], &level2).unwrap();
            assert!(cert.verdicts.all());
            assert!(verify_certificate(&cert));
            // exact form equality over Z
            let m = &cert.matrix;
            let lhs = m.transpose().mul(&omega_form).unwrap().mul(m).unwrap();
            assert_eq!(lhs, omega_form);
            count += 1;
        }
    }
    assert_eq!(count, 48);

    // k = 2: seeded random unimodular quadruples
    let ideals = vec![
        Ideal::from_int(2),
        Ideal::from_int(3),
        Ideal::from_int(5),
        Ideal::from_int(7),
    ];
    let level11 = Ideal::from_int(11);
    let omega4 = RMatrix::omega(zring(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(20240512);
    for _ in 0..25 {
        let rows: Vec<Vec<RingElem>> = (0..4)
            .map(|_| rowlift::sampling::random_unimodular_row(&mut rng, 4, 12))
            .collect();
        let cert = sigma_lift(&rows, &ideals, &level11).unwrap();
        assert!(cert.verdicts.all());
        assert!(verify_certificate(&cert));
        let m = &cert.matrix;
        let lhs = m.transpose().mul(&omega4).unwrap().mul(m).unwrap();
        assert_eq!(lhs, omega4);
    }
    println!("criterion 3 (sigma k=1 48/48 exhaustive, k=2 25/25 random): PASS");
}

#[test]
fn criterion_4_sap_exhaustive_round_trips() {
    let cases = [
        (GroupKind::Sl, 1usize, 2i64, 6usize),
        (GroupKind::Sl, 1, 3, 24),
        (GroupKind::Sl, 1, 4, 48),
        (GroupKind::Sl, 2, 2, 168),
        (GroupKind::Sp, 1, 3, 24),
    ];
    for (kind, k, n, expected) in cases {
        // cross-check the expected order against direct enumeration
        let q = QuotRing::integers_mod(n);
        let direct = match kind {
            GroupKind::Sl => enumerate_sl(&q, kind.dimension(k), 1 << 24).unwrap().len(),
            GroupKind::Sp => enumerate_sp(&q, k, 1 << 24).unwrap().len(),
        };
        assert_eq!(direct, expected);
        let report = sap_check_small(kind, k, &BigInt::from(n), 1 << 24).unwrap();
        assert!(report.ok, "{kind:?} k={k} mod {n}");
        assert_eq!(report.total, expected);
        assert_eq!(report.lifted, expected);
    }
    println!("criterion 4 (SAP round trips 6/6, 24/24, 48/48, 168/168, 24/24): PASS");
}

#[test]
fn criterion_5_word_identities_bit_exact() {
    // transposition word product
    let t = word_to_matrix(&transposition_word(zring(), 2, 0).unwrap());
    let expected = RMatrix::from_int_rows(zring(), &[&[0, -1], &[1, 0]]).unwrap();
    assert_eq!(t, expected);

    // diag word product for every unit of Z/5 and Z/7
    for n in [5i64, 7] {
        let q = QuotRing::integers_mod(n);
        for s in q.unit_list().unwrap() {
            let m = word_to_matrix(&diag_word(q.clone(), 2, 0, &s).unwrap());
            let s_inv = q.inv(&s).unwrap();
            let expected = RMatrix::from_rows(
                q.clone(),
                vec![vec![s.clone(), q.zero()], vec![q.zero(), s_inv]],
            )
            .unwrap();
            assert_eq!(m, expected);
        }
    }

    // s = -1 over Z
    let m = word_to_matrix(&diag_word(zring(), 2, 0, &z(-1)).unwrap());
    let expected = RMatrix::from_int_rows(zring(), &[&[-1, 0], &[0, -1]]).unwrap();
    assert_eq!(m, expected);
    println!("criterion 5 (transposition and diagonal word identities bit-exact): PASS");
}

#[test]
fn criterion_6_lemma41_orders_and_factorization() {
    let q6 = QuotRing::integers_mod(6);
    let q10 = QuotRing::integers_mod(10);
    assert_eq!(enumerate_sl(&q6, 2, 1 << 24).unwrap().len(), 144);
    assert_eq!(enumerate_sl(&q10, 2, 1 << 24).unwrap().len(), 720);
    assert_eq!(144, 6 * 24);
    assert_eq!(720, 6 * 120);

    // 50 seeded factorizations B = Y*G with Y in Gamma(<2>), G in Gamma(<3>)
    let i2 = Ideal::from_int(2);
    let i3 = Ideal::from_int(3);
    let id = RMatrix::identity(zring(), 2);
    let mut rng = ChaCha8Rng::seed_from_u64(20240513);
    let mut ok = 0;
    for _ in 0..50 {
        let b = word_to_matrix(&rowlift::sampling::random_sl_word(
            &mut rng,
            zring(),
            2,
            8,
        ));
        let targets = vec![b.reduce_mod(&i2).unwrap(), id.reduce_mod(&i3).unwrap()];
        let c = rowlift::lifting::crt_matrix(&targets).unwrap();
        let g = rowlift::lifting::sap_lift_sl(&c).unwrap();
        let y = b.mul(&g.inverse().unwrap()).unwrap();
        if rowlift::matgroup::congruent_mod(&y, &id, &i2).unwrap()
            && rowlift::matgroup::congruent_mod(&g, &id, &i3).unwrap()
            && y.mul(&g).unwrap() == b
            && y.det().unwrap().is_one()
            && g.det().unwrap().is_one()
        {
            ok += 1;
        }
    }
    assert_eq!(ok, 50);
    println!("criterion 6 (order identities 144=6*24, 720=6*120; 50/50 factorizations): PASS");
}

#[test]
fn criterion_7_usc_suite() {
    // 1000 seeded unital sets with moduli up to 10^6
    let mut rng = ChaCha8Rng::seed_from_u64(20240514);
    let mut validated = 0;
    while validated < 1000 {
        let k = rng.gen_range(2..=5);
        let set: Vec<BigInt> = (0..k)
            .map(|_| BigInt::from(rng.gen_range(-1000i64..=1000)))
            .collect();
        let mut g = set[0].clone();
        for a in &set[1..] {
            g = g.gcd(a);
        }
        if !g.is_one() {
            continue;
        }
        let n = BigInt::from(rng.gen_range(2i64..=1_000_000));
        let w = usc_witness_z(&set, &n).unwrap();
        let recomputed: BigInt = w.coeffs.iter().zip(&set[1..]).map(|(c, a)| c * a).sum();
        assert_eq!(recomputed, w.b, "b must come from the tail ideal");
        assert!((&set[0] + &w.b).gcd(&n).is_one(), "a_1 + b must be a unit");
        validated += 1;
    }

    // zero-ideal refutation with the mod-7 obstruction
    let r = usc_zero_ideal_refutation();
    assert!(r.refuted);
    assert_eq!(r.obstruction_modulus, 7);
    assert!(r.units_unreachable);

    // exhaustive polynomial refutation at degree bound 3 (5^4 candidates)
    let pr = usc_refute_poly_example(3).unwrap();
    assert_eq!(pr.candidates_checked, 625);
    assert!(pr.all_non_units);
    assert!(pr.symbolic.scaled_leading_coeffs_nonzero);
    assert_eq!(pr.symbolic.zero_multiplier_degree, 1);
    assert_eq!(pr.symbolic.min_degree_nonzero_multiplier, 2);
    println!("criterion 7 (USC: 1000 witnesses, zero-ideal refutation, 625-candidate poly refutation): PASS");
}

#[test]
fn criterion_8_ge_closure_local_rings() {
    for n in [2i64, 3, 4] {
        let q = QuotRing::integers_mod(n);
        let closure = ge_closure(&q, 2, 1 << 16).unwrap();
        let all = enumerate_sl(&q, 2, 1 << 24).unwrap();
        assert_eq!(closure.len(), all.len(), "closure must fill SL_2(Z/{n})");
        assert_eq!(closure, all);
    }
    println!("criterion 8 (GE closure fills SL_2 over Z/2, Z/3, Z/4): PASS");
}
