// quick fuzz harness for MatZm::smith
use graded_sep_core::zmod::MatZm;
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    for iter in 0..200000u64 {
        let m = rng.gen_range(2..13u64);
        let rows = rng.gen_range(1..4usize);
        let cols = rng.gen_range(1..4usize);
        let data: Vec<Vec<u64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(0..m)).collect())
            .collect();
        if iter % 10000 == 0 { eprintln!("iter {iter}"); }
        eprint!("");
        let a = MatZm::from_rows(m, &data);
        println!("CASE m={m} data={data:?}");
        let s = a.smith();
        let d = s.u.mat_mul(&a).mat_mul(&s.v);
        for i in 0..rows { for j in 0..cols {
            let e = if i==j && i < s.diag.len() { s.diag[i] } else {0};
            assert_eq!(d[(i,j)], e, "DIAG MISMATCH m={m} data={data:?}");
        }}
    }
    eprintln!("all ok");
}
