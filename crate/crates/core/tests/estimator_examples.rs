use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use infodist::estimator::{
    distance_matrix, mutual_information_est, ncd_multiset, ncd_pair, Compressor, Deflate,
    Distances, Mode,
};

fn random(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut v = vec![0u8; len];
    rng.fill_bytes(&mut v);
    v
}

#[test]
fn two_member_multiset_matches_pair() {
    let c = Deflate::default();
    let mut rng = ChaCha8Rng::seed_from_u64(421);
    let mut worst = 0f64;
    for _ in 0..20 {
        let len = rng.gen_range(64..4096);
        let x = random(&mut rng, len);
        let y = if rng.gen() {
            x.clone()
        } else {
            random(&mut rng, len)
        };
        let a = ncd_pair(&x, &y, &c).unwrap().value;
        let b = ncd_multiset(&[&x, &y], &c).unwrap().value;
        worst = worst.max((a - b).abs());
    }
    println!("max |ncd_pair - ncd_multiset| over 20 pairs: {worst}");
    assert_eq!(worst, 0.0);
}

#[test]
fn dropping_the_outsider_lowers_the_value() {
    let c = Deflate::default();
    let mut rng = ChaCha8Rng::seed_from_u64(422);
    let a = random(&mut rng, 10 * 1024);
    let mut a2 = a.clone();
    for _ in 0..a.len() / 100 {
        let i = rng.gen_range(0..a2.len());
        a2[i] = rng.gen();
    }
    let b = random(&mut rng, 10 * 1024);
    let with_b = ncd_multiset(&[&a, &a2, &b], &c).unwrap().value;
    let without = ncd_multiset(&[&a, &a2], &c).unwrap().value;
    assert!(without < with_b, "{without} vs {with_b}");
}

#[test]
fn mutual_information_sanity() {
    let c = Deflate::default();
    let mut rng = ChaCha8Rng::seed_from_u64(429);
    let x = random(&mut rng, 10 * 1024);
    let y = random(&mut rng, 10 * 1024);
    let (cx, cy) = (c.compressed_size(&x) as i64, c.compressed_size(&y) as i64);
    let xx_self = mutual_information_est(&x, &x, &c).unwrap();
    assert!(xx_self as f64 >= 0.7 * cx as f64);
    assert!((mutual_information_est(&x, &y, &c).unwrap().abs() as f64) <= 0.05 * (cx + cy) as f64);
    let doubled = [x.clone(), x.clone()].concat();
    // overhead bound: a few block headers and back-references
    assert!(mutual_information_est(&x, &doubled, &c).unwrap() >= xx_self - 64);
}

#[test]
fn identical_items_are_close_in_the_matrix() {
    let c = Deflate::default();
    let mut rng = ChaCha8Rng::seed_from_u64(447);
    let x = random(&mut rng, 4096);
    let corpus: Vec<(String, Vec<u8>)> = (0..3).map(|i| (format!("copy{i}"), x.clone())).collect();
    let Distances::Matrix(m) = distance_matrix(&corpus, &c, Mode::Pair).unwrap() else {
        panic!()
    };
    assert!(m.is_symmetric());
    for i in 0..3 {
        for j in 0..3 {
            assert!(m.values[i][j] <= 0.15, "{}", m.values[i][j]);
        }
    }
}
