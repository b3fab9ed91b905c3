use lamcore::critlam::*;
use lamcore::{Angle, Chord};

#[test]
fn debug_two_fifths_crossings() {
    let theta = Angle::new(2, 5).unwrap();
    let cl = build_critical_lamination(&theta, 4);
    let cleaned = clean(&cl);
    let leaves: Vec<Chord> = cleaned.leaves().cloned().collect();
    let mut count = 0;
    for i in 0..leaves.len() {
        for j in (i + 1)..leaves.len() {
            if leaves[i].crosses(&leaves[j]) {
                println!("CROSS {} x {}", leaves[i], leaves[j]);
                count += 1;
                if count > 6 { return; }
            }
        }
    }
}
