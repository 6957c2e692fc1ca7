use std::time::Instant;
fn main() {
    let t0 = Instant::now();
    let cms = trunkan::testkit::enumerate_crossed_modules(4, true);
    println!("enumerate: {:?}, {} cms", t0.elapsed(), cms.len());
    for cm in &cms {
        let t1 = Instant::now();
        let nerve = trunkan::testkit::nerve_crossed_module(cm).unwrap();
        let t2 = Instant::now();
        let ok = trunkan::kan::check_n_groupoid(&nerve).ok();
        println!(
            "{} |H|={} |Q|={}: build {:?}, check {:?}, ok={}",
            cm.label(), cm.h.order(), cm.q.order(),
            t1.elapsed() - (t2 - t2), t2.elapsed(), ok
        );
    }
}
