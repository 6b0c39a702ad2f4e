//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chromatic_nim::colorings::{chi, is_evil, tau};
use chromatic_nim::strategies::{
    beatty_nth, evil_nth_closed, green_dominated_nth, integer_nth, red_dominated_p_positions,
    EvilRecursion,
};
use chromatic_nim::verify::fuzz_class;
use chromatic_nim::{ColoringScheme, Dominance, GameStatus, Move, Oracle, Position, QuadraticIrrational};
use num_bigint::BigUint;
use num_traits::Pow;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Oracle P-positions with both heights at most `height`, as pairs.
fn oracle_p_set(scheme: &ColoringScheme, height: u64) -> Result<BTreeSet<(u64, u64)>, String> {
    let mut oracle = Oracle::new(scheme.clone());
    let positions = oracle.p_positions_upto(height, 2).map_err(|e| e.to_string())?;
    Ok(positions.iter().map(|p| (p.heaps[0], p.heaps[1])).collect())
}

fn add_symmetric(set: &mut BTreeSet<(u64, u64)>, a: u64, b: u64, height: u64) {
    if a <= height && b <= height {
        set.insert((a, b));
        set.insert((b, a));
    }
}

fn phi_squared_example() -> Check {
    let scheme = ColoringScheme::beatty(QuadraticIrrational::golden_ratio_squared()).unwrap();
    let mut oracle = Oracle::new(scheme);
    let pos = Position::new([4, 2]);
    let status = oracle.status(&pos).map_err(|e| e.to_string())?;
    ensure(status == GameStatus::N, || format!("(4,2) is {status}"))?;
    let moves = oracle.winning_moves(&pos).map_err(|e| e.to_string())?;
    ensure(moves == vec![Move::nim(0, 1)], || format!("winning moves {moves:?}"))
}

fn beatty_pairs() -> Check {
    const H: u64 = 60;
    for beta in [
        QuadraticIrrational::golden_ratio_squared(),
        QuadraticIrrational::new(2, 1, 2, 1).unwrap(),
        QuadraticIrrational::new(5, 1, 3, 2).unwrap(),
    ] {
        let mut claimed = BTreeSet::new();
        for n in 0..=H {
            let pair = beatty_nth(&beta, &BigUint::from(n)).map_err(|e| e.to_string())?;
            let (a, b) = pair.to_u64s().unwrap();
            add_symmetric(&mut claimed, a, b, H);
        }
        let scheme = ColoringScheme::beatty(beta.clone()).unwrap();
        let expected = oracle_p_set(&scheme, H)?;
        ensure(claimed == expected, || {
            format!("beta={beta}: symmetric difference {:?}", claimed.symmetric_difference(&expected).collect::<Vec<_>>())
        })?;
    }
    Ok(())
}

fn integer_pairs() -> Check {
    const H: u64 = 60;
    for beta in 2..=5u64 {
        let mut claimed = BTreeSet::new();
        let mut bs = BTreeSet::new();
        for n in 0..=H {
            for t in 1..beta {
                let (a, b) = integer_nth(beta, &BigUint::from(n), t).unwrap().to_u64s().unwrap();
                add_symmetric(&mut claimed, a, b, H);
                if b <= H {
                    bs.insert(b);
                }
            }
        }
        claimed.insert((0, 0));
        let scheme = ColoringScheme::integer(beta).unwrap();
        let expected = oracle_p_set(&scheme, H)?;
        ensure(claimed == expected, || format!("beta={beta}: P-sets differ"))?;
        let multiples: BTreeSet<u64> = (1..=H).filter(|m| m % beta == 0).collect();
        ensure(bs == multiples, || format!("beta={beta}: b-coordinates {bs:?}"))?;
    }
    Ok(())
}

fn three_halves_example() -> Check {
    let scheme = ColoringScheme::rational(3, 2).unwrap();
    let expected: BTreeSet<(u64, u64)> = [(0, 0), (1, 1), (2, 3), (3, 2), (4, 4)].into();
    let oracle = oracle_p_set(&scheme, 4)?;
    ensure(oracle == expected, || format!("oracle gives {oracle:?}"))?;
    let mut scan = BTreeSet::new();
    for pair in red_dominated_p_positions(&scheme, 4).map_err(|e| e.to_string())? {
        let (a, b) = pair.to_u64s().unwrap();
        add_symmetric(&mut scan, a, b, 4);
    }
    ensure(scan == expected, || format!("scan gives {scan:?}"))
}

fn evil_closed_form() -> Check {
    let mut rec = EvilRecursion::new();
    for n in 0..=10_000u64 {
        let mex = rec.nth(n);
        let closed = evil_nth_closed(&BigUint::from(n));
        ensure(mex == closed, || format!("n={n}: mex {mex} closed {closed}"))?;
    }
    const H: u64 = 60;
    let expected = oracle_p_set(&ColoringScheme::Evil, H)?;
    let (mut from_mex, mut from_closed, mut from_green) =
        (BTreeSet::new(), BTreeSet::new(), BTreeSet::new());
    for n in 0..=H {
        let (a, b) = rec.nth(n).to_u64s().unwrap();
        add_symmetric(&mut from_mex, a, b, H);
        let (a, b) = evil_nth_closed(&BigUint::from(n)).to_u64s().unwrap();
        add_symmetric(&mut from_closed, a, b, H);
        let pair = green_dominated_nth(&ColoringScheme::Evil, &BigUint::from(n)).map_err(|e| e.to_string())?;
        let (a, b) = pair.to_u64s().unwrap();
        add_symmetric(&mut from_green, a, b, H);
    }
    ensure(from_mex == expected, || "mex pairs differ from the oracle".into())?;
    ensure(from_closed == expected, || "closed-form pairs differ from the oracle".into())?;
    ensure(from_green == expected, || "green-dominated pairs differ from the oracle".into())?;

    let q = BigUint::from(17509u32).pow(17509u32);
    let pair = evil_nth_closed(&q);
    let two_q: BigUint = &q << 1u32;
    ensure(pair.b == two_q && pair.a == &two_q - 2u32, || "17509^17509 pair is not (2q-2, 2q)".into())
}

fn number_theory() -> Check {
    let table = [-1, 0, 1, 0, 1, 0, -1, 0];
    for (k, want) in table.iter().enumerate() {
        let got = tau(&(k as u64));
        ensure(got == *want, || format!("tau({k}) = {got}, table says {want}"))?;
    }
    const N: u64 = 1_000_000;
    // running odious-minus-evil count, independent of the closed form
    let mut running = 0i64;
    let mut streak = (false, 0u32);
    for n in 0..=N {
        let evil = n.count_ones() % 2 == 0;
        running += if evil { -1 } else { 1 };
        ensure(tau(&n) == running, || format!("tau({n}) = {}, direct count {running}", tau(&n)))?;
        ensure((-1..=1).contains(&running), || format!("tau({n}) = {running} out of range"))?;
        ensure(is_evil(&n) == evil, || format!("evil({n})"))?;
        if n >= 1 {
            let chi_n = chi(&n).map_err(|e| e.to_string())?;
            let want = match (n % 2, evil) {
                (1, _) => 1,
                (_, false) => 2,
                (_, true) => 0,
            };
            ensure(chi_n == want && chi_n == running + 1, || format!("chi({n}) = {chi_n}, expected {want}"))?;
        }
        streak = if streak.0 == evil && n > 0 { (evil, streak.1 + 1) } else { (evil, 1) };
        ensure(streak.1 < 3, || format!("three consecutive of one kind ending at {n}"))?;
    }
    Ok(())
}

fn generality() -> Check {
    const H: u64 = 40;
    for (class, seed) in [(Dominance::GreenDominated, 1), (Dominance::RedDominated, 2)] {
        let reports = fuzz_class(class, 100, H, seed);
        ensure(reports.len() == 100, || "wrong report count".into())?;
        if let Some(bad) = reports.iter().find(|r| !r.passed()) {
            return Err(bad.summary(3));
        }
    }
    Ok(())
}

fn grundy_sanity() -> Check {
    for (scheme, name) in [(ColoringScheme::all_green(), "all-green"), (ColoringScheme::all_red(), "all-red")] {
        let mut oracle = Oracle::new(scheme);
        for k in 1..=3usize {
            let height = 15u64;
            let mut heaps = vec![0u64; k];
            loop {
                let pos = Position::new(heaps.clone());
                let g = oracle.grundy(&pos).map_err(|e| e.to_string())?;
                let want = if name == "all-green" {
                    heaps.iter().sum()
                } else {
                    heaps.iter().fold(0, |acc, h| acc ^ h)
                };
                ensure(g == want, || format!("{name} {pos}: grundy {g}, expected {want}"))?;
                // odometer over [0, height]^k
                let Some(i) = heaps.iter().position(|&h| h < height) else { break };
                heaps[i] += 1;
                heaps[..i].iter_mut().for_each(|h| *h = 0);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 phi^2 (4,2) is N, unique winning move heap 1 -> 1", phi_squared_example, Duration::from_secs(1)),
        ("2 beatty pairs equal oracle P-positions, H=60", beatty_pairs, Duration::from_secs(30)),
        ("3 integer pairs equal oracle P-positions, H=60", integer_pairs, Duration::from_secs(30)),
        ("4 3/2 P-positions up to height 4", three_halves_example, Duration::from_secs(1)),
        ("5 evil closed form, mex recursion, oracle and 17509^17509", evil_closed_form, Duration::from_secs(60)),
        ("6 tau table, tau/chi bounds, no three consecutive, n <= 10^6", number_theory, Duration::from_secs(10)),
        ("7 100 green- and 100 red-dominated random schemes, H=40", generality, Duration::from_secs(300)),
        ("8 grundy: all-green is the sum, all-red is the xor", grundy_sanity, Duration::from_secs(30)),
    ];
    let mut failed = 0;
    for &(name, check, limit) in &criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (took {elapsed:.2?}, limit {limit:?})"),
            (Err(msg), _) => format!("FAIL ({msg})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("criterion {name}: {verdict} [{:.2?}]", elapsed);
    }
    let total = criteria.len();
    println!("acceptance: {}/{total} passed", total - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
