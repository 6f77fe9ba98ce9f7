//! Generate a seeded family of 60 perturbed quartics and screen each one.

use std::collections::BTreeMap;

use approx_param::familygen::{generate_family, FamilySpec, MemberStatus};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let family = generate_family(&FamilySpec::new(seed));

    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for m in &family {
        *tally.entry(m.status.to_string()).or_default() += 1;
    }
    for m in family.iter().take(8) {
        println!("{}", m.manifest_line());
    }
    println!("...");
    for (status, n) in &tally {
        println!("{status:>40}: {n}");
    }
    let rational = family.iter().filter(|m| m.status == MemberStatus::Rational).count();
    println!("seed {seed}: {rational}/{} eps-rational", family.len());
}
