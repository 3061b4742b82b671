use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use corank2::classify::{classify_germ, Verdict};
use corank2::jets::{Jet2, MapJet2};
use corank2::normalform::{rotate_target, so2_normal_form, TransformStep};
use corank2::num::{Coeff, Scalar, F64};

fn s(n: i64) -> Scalar { Scalar::from_int(n) }
fn sr(n: i64, m: i64) -> Scalar { Scalar::from_ratio(n, m) }

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut done = 0;
    while done < 200 {
        let a20: i64 = rng.gen_range(1..=4);
        let a11: i64 = rng.gen_range(-2..=2);
        let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        let mut y = Jet2::zero(4);
        y.set(2, 0, sr(sign * a20, 2));
        y.set(1, 1, sr(a11, 2));
        y.set(0, 2, sr(sign * rng.gen_range(1..=4), 2));
        for &(i, j) in &[(3usize, 0usize), (2, 1), (1, 2), (0, 3)] {
            y.set(i, j, sr(rng.gen_range(-6..=6), 6));
        }
        for t in [(4usize, 0usize), (3, 1), (2, 2), (1, 3), (0, 4)] {
            y.set(t.0, t.1, sr(rng.gen_range(-2..=2), 4));
        }
        let x = Jet2::from_terms(4, &[(1, 1, s(1))]);
        let f = MapJet2::new(x, y);
        if classify_germ(&f).unwrap().verdict != Verdict::Sharksfin { continue; }
        let angle: f64 = rng.gen_range(-3.0..3.0);
        if done == 39 {
            let g = rotate_target(&f.map(|c| F64(c.to_f64().unwrap())), angle);
            let nf = so2_normal_form(&g).unwrap();
            for comp in 0..2 {
                for (i, j, c) in nf.jet.component(comp).terms() {
                    if c.0 != 0.0 {
                        println!("coef {} {} {} {:.17e}", comp, i, j, c.0);
                    }
                }
            }
            println!("a30 {:.17e} a03 {:.17e} a20 {:.17e}", nf.a30, nf.a03, nf.a20);
            eprintln!("steps:");
            for st in &nf.log.steps {
                match st {
                    TransformStep::TargetRotation(a) => eprintln!("  rotate {:.17e}", a),
                    TransformStep::SourceChange(m) => eprintln!("  source {}", m),
                }
            }
            return;
        }
        done += 1;
    }
}
