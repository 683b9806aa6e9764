use spantree::instances::gen_random;
use spantree::maximizer::add_above;
use std::time::Instant;

fn main() {
    let inst = gen_random(1000, 125, 1000, (1.0, 1.0), 1).unwrap();
    let seq = inst.candidates.edges();
    for th in [1e9_f64, 3.0, 0.5] {
        let t = Instant::now();
        let sel = add_above(&inst.base, seq, th, 0.025, 1000, 7).unwrap();
        println!("th={th}: {} added, {:.1} ms", sel.budget_used, t.elapsed().as_secs_f64()*1e3);
    }
}
