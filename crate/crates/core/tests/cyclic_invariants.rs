//! Ideal-level invariants of the cyclic and quasi-cyclic constructions,
//! checked against independent span computations.

use z4codes::algebra::PolyZ4;
use z4codes::codes::Z4Code;
use z4codes::search::{
    asr_seeds, build_qc, cyclic_code_from_generator, cyclic_code_from_spec, CyclicFamily, QcSeed, QcSpec, SeedKind,
};

fn rotate(w: &[u8]) -> Vec<u8> {
    let n = w.len();
    (0..n).map(|i| w[(i + n - 1) % n]).collect()
}

/// Same code: equal size and each generator lies in the other code.
fn same_code(a: &Z4Code, b: &Z4Code) -> bool {
    a.size_log2() == b.size_log2()
        && a.generator_original().iter_rows().all(|r| b.contains(r))
        && b.generator_original().iter_rows().all(|r| a.contains(r))
}

fn nonzero_specs(n: usize) -> Vec<z4codes::search::CyclicCodeSpec> {
    CyclicFamily::new(n)
        .unwrap()
        .specs()
        .filter(|s| !s.roles.iter().all(|&r| r == z4codes::search::Role::F))
        .collect()
}

#[test]
fn codes_are_closed_under_cyclic_shift() {
    for n in (1..=13).step_by(2) {
        for s in nonzero_specs(n) {
            let c = cyclic_code_from_spec(&s).unwrap();
            for row in c.generator_original().iter_rows() {
                assert!(c.contains(&rotate(row)), "n={n} {:?}", s.roles);
            }
            if c.size_log2() <= 12 {
                for w in c.enumerate_codewords(1 << 12).unwrap() {
                    assert!(c.contains(&rotate(&w)));
                }
            }
        }
    }
}

#[test]
fn two_generator_and_single_generator_presentations_agree() {
    for n in (1..=13).step_by(2) {
        for s in nonzero_specs(n) {
            let two = cyclic_code_from_spec(&s).unwrap();
            let one = cyclic_code_from_generator(n, &s.p).unwrap();
            assert!(same_code(&two, &one), "n={n} {:?}", s.roles);
            assert_eq!(two.size_log2() as usize, 2 * s.k1() + s.k2());
        }
    }
}

#[test]
fn distinct_specs_give_distinct_ideals() {
    for n in [7, 9, 15] {
        let codes: Vec<Z4Code> = nonzero_specs(n).iter().map(|s| cyclic_code_from_spec(s).unwrap()).collect();
        for i in 0..codes.len() {
            for j in (i + 1)..codes.len() {
                assert!(!same_code(&codes[i], &codes[j]), "n={n}: specs {i} and {j} coincide");
            }
        }
    }
}

#[test]
fn free_seed_qc_dimension_follows_the_seed_degree() {
    for m in [3, 5, 7, 9, 15] {
        for seed in asr_seeds(m, SeedKind::Free).unwrap() {
            let g = seed.poly().clone();
            let k = m - g.degree().unwrap();
            let spec = QcSpec { m, seed: QcSeed::Free(g), fs: vec![PolyZ4::one(), PolyZ4::monomial(1)] };
            let c = build_qc(&spec).unwrap();
            assert_eq!((c.n(), c.k1(), c.k2()), (2 * m, k, 0));
        }
    }
}

#[test]
fn qc_codes_are_closed_under_block_shift() {
    let spec = QcSpec {
        m: 5,
        seed: QcSeed::NonFree(PolyZ4::parse("3").unwrap()),
        fs: vec![PolyZ4::parse("0303").unwrap(), PolyZ4::parse("3221").unwrap(), PolyZ4::parse("33").unwrap()],
    };
    let c = build_qc(&spec).unwrap();
    let shift = |w: &[u8]| -> Vec<u8> { w.chunks(5).flat_map(rotate).collect() };
    for w in c.enumerate_codewords(1 << 12).unwrap() {
        assert!(c.contains(&shift(&w)));
    }
}
