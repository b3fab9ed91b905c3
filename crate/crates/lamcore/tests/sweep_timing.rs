use lamcore::critlam::{build_critical_lamination, clean, CaseTag};
use lamcore::Angle;
use std::time::Instant;

#[test]
#[ignore]
fn timing_sweep() {
    let t0 = Instant::now();
    let mut built = 0usize;
    let mut max_leaves = 0usize;
    for q in 1..=63i64 {
        for p in 0..q {
            let a = Angle::new(p, q).unwrap();
            if a.to_fraction_string() != format!("{p}/{q}") {
                continue; // unreduced duplicate
            }
            let cl = build_critical_lamination(&a, 8);
            assert!(cl.lamination.validate(), "invalid for {p}/{q}");
            built += 1;
            max_leaves = max_leaves.max(cl.lamination.leaf_count());
        }
    }
    println!("build+validate sweep: {built} angles, max leaves {max_leaves}, {:?}", t0.elapsed());

    let t1 = Instant::now();
    let mut cleaned = 0usize;
    for q in 1..=63i64 {
        for p in 0..q {
            let a = Angle::new(p, q).unwrap();
            if a.to_fraction_string() != format!("{p}/{q}") {
                continue;
            }
            let cl = build_critical_lamination(&a, 8);
            let c = clean(&cl);
            assert!(c.is_clean(), "unclean output for {p}/{q} tag {:?}", cl.case_tag as u8);
            if cl.case_tag != CaseTag::Plain {
                cleaned += 1;
            }
        }
    }
    println!("clean sweep: {cleaned} nontrivial, {:?}", t1.elapsed());
}
