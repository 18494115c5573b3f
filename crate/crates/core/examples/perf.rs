//! Time decodes at one point: `perf <x|z> <variant> <L> <p> <trials>`.

use std::time::Instant;

use xcube::code::Sector;
use xcube::harness::{run_indexed_trial, Variant};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    if args.len() != 6 {
        eprintln!("usage: perf <x|z> <variant> <L> <p> <trials>");
        std::process::exit(1);
    }
    let sector = if args[1] == "z" { Sector::Z } else { Sector::X };
    let variant: Variant = args[2].parse().expect("variant");
    let l: usize = args[3].parse().expect("L");
    let p: f64 = args[4].parse().expect("p");
    let n: u64 = args[5].parse().expect("trials");
    let start = Instant::now();
    let (mut failures, mut defects) = (0, 0);
    for t in 0..n {
        let r = run_indexed_trial(l, p, sector, variant, 5, t).expect("trial");
        failures += u64::from(!r.success);
        defects += r.vertex_defects + r.cell_defects;
    }
    println!(
        "L={l} p={p} {variant}: {:?}/trial, {failures}/{n} failures, {} defects/trial",
        start.elapsed() / n as u32,
        defects as u64 / n
    );
}
