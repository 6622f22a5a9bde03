//! The reproduction table: every worked example becomes a set of
//! expected/actual checks. `repro all` prints one pass/fail line per check
//! and exits nonzero when any expectation is missed.

use unit_codes_core::block::{self, min_weight_of_rowspace, DEFAULT_DISTANCE_CAP};
use unit_codes_core::conv::{self, Twist};
use unit_codes_core::field::FieldSpec;
use unit_codes_core::fourier::FourierScheme;
use unit_codes_core::grouprings::{self, GirthRequirement, GroupRingElem};
use unit_codes_core::named;
use unit_codes_core::sampling::{random_invertible, random_orthogonal, Rng};
use unit_codes_core::scheme::UnitScheme;

use crate::{from_block_err, from_conv_err, usage, Cli, CliError, ReproArgs};

pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: &str, expected: impl ToString, actual: impl ToString) -> Self {
        Check {
            name: name.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

type Entry = (&'static str, &'static str, fn() -> Result<Vec<Check>, CliError>);

const ENTRIES: &[Entry] = &[
    ("fourier-f7-dc", "F7 over gf(2^3), rows 0..3: [7,4,4] DC mds, css [[7,1,4]]", run_fourier_f7),
    ("fourier-f8-lcd", "F8 over gf(17), rows e6,e7,e0,e1,e2: [8,5,4] LCD mds", run_fourier_f8),
    ("hamming-conv", "Hamming unit to (7,4,3;1) convolutional code", run_hamming_conv),
    ("f7-conv-mds", "F7 (7,4,3;1) with free distance 7 = gsb, LCD", run_f7_conv),
    ("f7-rate57-dc", "F7 (7,5,2;1) with free distance 5 = gsb, DC", run_f7_rate57),
    ("golay-block", "(I_12, X) Golay [24,12,8] self-dual", run_golay_block),
    ("golay-conv", "Golay X blocks to (12,3,9;3) with d_f 20; dual DC", run_golay_conv),
    ("x4-suite", "4x4 binary orthogonal: memory-1/memory-3/rate-3/4 builds", run_x4_suite),
    ("hadamard12", "Hadamard-12 over gf(5): LCD windows, i-twist, (I,2H)", run_hadamard12),
    ("ldpc-96", "Z2(C24xC4) check element: unit, girth, [96,48], conv LDPC", run_ldpc96),
    ("properties", "random-scheme identities, distance formulas, field axioms", run_properties),
];

pub fn run(cli: &Cli, args: &ReproArgs) -> Result<(), CliError> {
    if args.list {
        for (id, blurb, _) in ENTRIES {
            println!("{id:<16} {blurb}");
        }
        return Ok(());
    }
    let id = args
        .id
        .as_deref()
        .ok_or_else(|| CliError::Usage("an example id or --list is required".into()))?;
    let _ = cli;
    let selected: Vec<&Entry> = if id == "all" {
        ENTRIES.iter().collect()
    } else {
        let entry = ENTRIES
            .iter()
            .find(|(eid, _, _)| *eid == id)
            .ok_or_else(|| CliError::Usage(format!("unknown example id {id:?}; try --list")))?;
        vec![entry]
    };
    let mut failures = 0usize;
    for (eid, blurb, runner) in selected {
        println!("== {eid}: {blurb}");
        let checks = runner()?;
        for c in &checks {
            if c.pass() {
                println!("  [PASS] {}: {}", c.name, c.actual);
            } else {
                failures += 1;
                println!("  [FAIL] {}: expected {}, got {}", c.name, c.expected, c.actual);
            }
        }
    }
    if failures > 0 {
        Err(CliError::Mismatch(format!("{failures} check(s) failed")))
    } else {
        println!("all checks passed");
        Ok(())
    }
}

fn gf(p: u64, m: u32) -> FieldSpec {
    FieldSpec::extension(p, m).expect("valid field")
}

fn run_fourier_f7() -> Result<Vec<Check>, CliError> {
    let fs = FourierScheme::new(7, gf(2, 3)).map_err(usage)?;
    let code = fs.scheme().derive(&[0, 1, 2, 3]).map_err(usage)?;
    let report = code.classify(DEFAULT_DISTANCE_CAP);
    Ok(vec![
        Check::new("[n,k,d]", "[7,4,4]", format!("[{},{},{}]", report.n, report.k, report.d.map_or(-1, |d| d as i64))),
        Check::new("dc", "true", report.flags.dc),
        Check::new("mds", "Some(true)", format!("{:?}", report.flags.mds)),
        Check::new("css", "Some([7, 1, 4])", format!("{:?}", report.css)),
    ])
}

fn run_fourier_f8() -> Result<Vec<Check>, CliError> {
    let fs = FourierScheme::new(8, FieldSpec::prime(17).map_err(usage)?).map_err(usage)?;
    let (code, _) = fs.lcd_arrangement(6).map_err(usage)?;
    let report = code.classify(DEFAULT_DISTANCE_CAP);
    Ok(vec![
        Check::new("[n,k,d]", "[8,5,4]", format!("[{},{},{}]", report.n, report.k, report.d.map_or(-1, |d| d as i64))),
        Check::new("lcd", "true", report.flags.lcd),
        Check::new("mds", "Some(true)", format!("{:?}", report.flags.mds)),
    ])
}

fn run_hamming_conv() -> Result<Vec<Check>, CliError> {
    let unit = named::hamming_unit();
    let split = unit.scheme.split_consecutive(&[4, 3]).map_err(usage)?;
    let code = conv::build_memory1_unequal(&split, Twist::Plain).map_err(from_conv_err)?;
    let fd = conv::free_distance(&code, Some(4), DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
    let formula = conv::memory1_unequal_distance_formula(&split, DEFAULT_DISTANCE_CAP)
        .map_err(from_conv_err)?;
    Ok(vec![
        Check::new("(n,k,delta;mu)", "(7,4,3;1)", format!("({},{},{};{})", code.n(), code.k(), code.delta(), code.memory())),
        Check::new("noncatastrophic", "true", code.is_noncatastrophic()),
        Check::new("free distance", "6", fd.value),
        Check::new("settled at depth <= 4", "true", fd.settled && fd.depth_reached <= 4),
        Check::new("closed-form cross-check equals oracle", "true", formula == fd.value),
    ])
}

fn run_f7_conv() -> Result<Vec<Check>, CliError> {
    let fs = FourierScheme::new(7, gf(2, 3)).map_err(usage)?;
    let split = fs.scheme().split_consecutive(&[4, 3]).map_err(usage)?;
    let code = conv::build_memory1_unequal(&split, Twist::Plain).map_err(from_conv_err)?;
    let fd = conv::free_distance(&code, None, DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
    let class = conv::conv_classify(&code).map_err(from_conv_err)?;
    Ok(vec![
        Check::new("(n,k,delta;mu)", "(7,4,3;1)", format!("({},{},{};{})", code.n(), code.k(), code.delta(), code.memory())),
        Check::new("free distance", "7", fd.value),
        Check::new("equals gsb", "7", code.gsb()),
        Check::new("class", "lcd", class),
    ])
}

fn run_f7_rate57() -> Result<Vec<Check>, CliError> {
    let fs = FourierScheme::new(7, gf(2, 3)).map_err(usage)?;
    let split = fs
        .scheme()
        .split(vec![vec![0, 1, 6, 2, 5], vec![4, 3]])
        .map_err(usage)?;
    let code = conv::build_memory1_unequal(&split, Twist::Plain).map_err(from_conv_err)?;
    let fd = conv::free_distance(&code, None, 1 << 31).map_err(from_conv_err)?;
    let class = conv::conv_classify(&code).map_err(from_conv_err)?;
    Ok(vec![
        Check::new("(n,k,delta;mu)", "(7,5,2;1)", format!("({},{},{};{})", code.n(), code.k(), code.delta(), code.memory())),
        Check::new("free distance", "5", fd.value),
        Check::new("equals gsb", "5", code.gsb()),
        Check::new("class", "dc", class),
    ])
}

fn run_golay_block() -> Result<Vec<Check>, CliError> {
    let x = named::golay_unit().scheme.u().clone();
    let code = block::self_dual_from_orthogonal(&x).map_err(from_block_err)?;
    let report = code.classify(DEFAULT_DISTANCE_CAP);
    Ok(vec![
        Check::new("[n,k,d]", "[24,12,8]", format!("[{},{},{}]", report.n, report.k, report.d.map_or(-1, |d| d as i64))),
        Check::new("self_dual", "true", report.flags.self_dual),
    ])
}

fn run_golay_conv() -> Result<Vec<Check>, CliError> {
    let unit = named::golay_unit();
    let split = unit.scheme.split_consecutive(&[3, 3, 3, 3]).map_err(usage)?;
    let code = conv::build_memory3(&split, Twist::Plain).map_err(from_conv_err)?;
    let fd = conv::free_distance(&code, Some(9), 1 << 31).map_err(from_conv_err)?;
    let dual = code.dual_code().map_err(from_conv_err)?;
    let dual_class = conv::conv_classify(&dual).map_err(from_conv_err)?;
    Ok(vec![
        Check::new("(n,k,delta;mu)", "(12,3,9;3)", format!("({},{},{};{})", code.n(), code.k(), code.delta(), code.memory())),
        Check::new("free distance", "20", fd.value),
        Check::new("settled", "true", fd.settled),
        Check::new("dual (n,k;mu)", "(12,9;3)", format!("({},{};{})", dual.n(), dual.k(), dual.memory())),
        Check::new("dual class", "dc", dual_class),
    ])
}

fn run_x4_suite() -> Result<Vec<Check>, CliError> {
    let unit = named::binary_x4();
    let mut checks = Vec::new();

    let split2 = unit.scheme.split_consecutive(&[2, 2]).map_err(usage)?;
    let m1 = conv::build_memory1_equal(&split2, Twist::Plain).map_err(from_conv_err)?;
    let fd1 = conv::free_distance(&m1, None, DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
    let class1 = conv::conv_classify(&m1).map_err(from_conv_err)?;
    checks.push(Check::new("memory-1 (n,k,delta;mu,d)", "(4,2,2;1,4)", format!("({},{},{};{},{})", m1.n(), m1.k(), m1.delta(), m1.memory(), fd1.value)));
    checks.push(Check::new("memory-1 class", "self_dual", class1));

    let split4 = unit.scheme.split_consecutive(&[1, 1, 1, 1]).map_err(usage)?;
    let m3 = conv::build_memory3(&split4, Twist::Plain).map_err(from_conv_err)?;
    let fd3 = conv::free_distance(&m3, None, DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
    checks.push(Check::new("memory-3 (n,k;mu)", "(4,1;3)", format!("({},{};{})", m3.n(), m3.k(), m3.memory())));
    checks.push(Check::new("memory-3 free distance", "12", fd3.value));

    let r343 = conv::mixed_rate_builder(&split4, conv::MixedPattern::Rate34Mem3).map_err(from_conv_err)?;
    let class343 = conv::conv_classify(&r343).map_err(from_conv_err)?;
    // The rate-3/4 memory-3 generator has no polynomial right inverse, so
    // the bounded-degree minimum stands in for the free distance.
    let w343 = conv::weight_at_depth(&r343, 6, DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
    checks.push(Check::new("rate-3/4 memory-3 (n,k,delta;mu)", "(4,3,9;3)", format!("({},{},{};{})", r343.n(), r343.k(), r343.delta(), r343.memory())));
    checks.push(Check::new("rate-3/4 memory-3 class", "dc", class343));
    checks.push(Check::new("rate-3/4 memory-3 min weight (deg <= 6)", "4", w343));
    checks.push(Check::new("rate-3/4 memory-3 css", "[4,2,4]", format!("[{},{},{}]", r343.n(), 2 * r343.k() - r343.n(), w343)));

    let r341 = conv::mixed_rate_builder(&split4, conv::MixedPattern::Rate34Mem1).map_err(from_conv_err)?;
    let fd341 = conv::free_distance(&r341, None, DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
    let class341 = conv::conv_classify(&r341).map_err(from_conv_err)?;
    checks.push(Check::new("rate-3/4 memory-1 (n,k,delta;mu,d)", "(4,3,1;1,2)", format!("({},{},{};{},{})", r341.n(), r341.k(), r341.delta(), r341.memory(), fd341.value)));
    checks.push(Check::new("rate-3/4 memory-1 class", "dc", class341));
    Ok(checks)
}

fn run_hadamard12() -> Result<Vec<Check>, CliError> {
    let gf5 = FieldSpec::prime(5).map_err(usage)?;
    let unit = named::hadamard12_unit(&gf5).map_err(usage)?;
    let mut checks = Vec::new();
    for (k, d) in [(3usize, 6i64), (6, 6), (9, 2)] {
        let rows: Vec<usize> = (0..k).collect();
        let code = unit.scheme.derive(&rows).map_err(usage)?;
        let report = code.classify(1 << 27);
        checks.push(Check::new(
            &format!("rows {k}: [n,k,d] lcd"),
            format!("[12,{k},{d}] true"),
            format!("[{},{},{}] {}", report.n, report.k, report.d.map_or(-1, |x| x as i64), report.flags.lcd),
        ));
    }
    let split = unit.scheme.split_consecutive(&[6, 6]).map_err(usage)?;
    let twisted = conv::build_memory1_equal(&split, Twist::SqrtMinusOne).map_err(from_conv_err)?;
    let class = conv::conv_classify(&twisted).map_err(from_conv_err)?;
    let formula = conv::memory1_equal_distance_formula(&split, 1 << 27).map_err(from_conv_err)?;
    checks.push(Check::new("6+6 i-twist class", "self_dual", class));
    checks.push(Check::new("6+6 i-twist distance (closed form)", "12", formula));
    checks.push(Check::new("6+6 css", "[12,0,12]", format!("[{},{},{formula}]", twisted.n(), 2 * twisted.k() - twisted.n())));

    // (I_12, 2H) over gf(5); the distance scan covers 5^12 messages (slow).
    let h = named::paley_hadamard12(&gf5).map_err(usage)?;
    let two_h = h.scalar_mul(2);
    let gen = unit_codes_core::Mat::identity(gf5.clone(), 12)
        .hstack(&two_h)
        .map_err(usage)?;
    let code = unit_codes_core::BlockCode::from_generator(gen).map_err(from_block_err)?;
    let inter = code.intersection_dim();
    checks.push(Check::new("(I,2H) [n,k]", "[24,12]", format!("[{},{}]", code.n(), code.dim())));
    checks.push(Check::new("(I,2H) self_dual", "true", inter == 12));
    let d = code.min_distance(1 << 29).map_err(from_block_err)?;
    checks.push(Check::new("(I,2H) d (slow: 5^12 messages)", "8", d));
    Ok(checks)
}

fn run_ldpc96() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    // The eight-term element: support 8 per row/column, but even support is
    // never a unit in this group ring.
    let printed = GroupRingElem::parse(
        "g^15 + g^9 + g^5 + h*g^21 + h*g^4 + h^2*g^2 + h^3*g^2 + h^3*g^12",
        Some(24),
    )
    .map_err(usage)?;
    let pm = printed.to_matrix();
    let row_max = grouprings::row_supports(&pm).into_iter().max().unwrap_or(0);
    checks.push(Check::new("8-term element: per-row/col support", "8", row_max));
    checks.push(Check::new("8-term element: is a unit", "true", printed.inverse().is_some()));

    // The 7-term check element: the working unit.
    let v = grouprings::ldpc96_check_element();
    let vm = v.to_matrix();
    checks.push(Check::new("check element: is a unit", "true", v.inverse().is_some()));
    let census = grouprings::short_cycle_census(&vm, false).map_err(usage)?;
    checks.push(Check::new("check element: four-cycles in V", "0", census.four_cycles));
    let supports_le8 = grouprings::row_supports(&vm)
        .iter()
        .chain(grouprings::col_supports(&vm).iter())
        .all(|&s| s <= 8);
    checks.push(Check::new("check element: row/col support <= 8", "true", supports_le8));

    let rows: Vec<usize> = (0..48).collect();
    let derivation = grouprings::ldpc_derive(&v, &rows, GirthRequirement::NoFourCycles).map_err(usage)?;
    checks.push(Check::new("[96,48] derived", "[96,48]", format!("[{},{}]", derivation.code.n(), derivation.code.dim())));
    let gd_zero = derivation
        .code
        .generator()
        .mul(derivation.code.control())
        .map_err(usage)?
        .is_zero();
    checks.push(Check::new("G * D = 0", "true", gd_zero));
    let col_max = grouprings::col_supports(derivation.code.control()).into_iter().max().unwrap_or(0);
    checks.push(Check::new("control column support <= 8", "true", col_max <= 8));
    checks.push(Check::new("control four-cycles", "0", derivation.cycle_report.four_cycles));

    let conv1 = grouprings::ldpc_conv_memory1(&v).map_err(usage)?;
    checks.push(Check::new("conv LDPC (n,k,delta;mu)", "(96,48,48;1)", format!("({},{},{};{})", conv1.n(), conv1.k(), conv1.delta(), conv1.memory())));
    let ctrl = conv1.control().expect("builder attaches control");
    let mut per_block_four = 0u64;
    for t in 0..=ctrl.degree() {
        per_block_four += grouprings::short_cycle_census(&ctrl.coefficient_matrix(t), false)
            .map_err(usage)?
            .four_cycles;
    }
    checks.push(Check::new("conv control blocks four-cycles", "0", per_block_four));
    Ok(checks)
}

fn run_properties() -> Result<Vec<Check>, CliError> {
    let mut checks = Vec::new();
    let mut rng = Rng::new(20240501);

    // Unit-derivation identities over random schemes.
    let fields = [gf(2, 1), gf(3, 1), gf(2, 2), gf(5, 1)];
    let mut derivations_ok = true;
    for spec in &fields {
        for _ in 0..200 {
            let n = 2 + (rng.below(5) as usize);
            let u = random_invertible(spec, n, &mut rng);
            let scheme = UnitScheme::from_unit(u).map_err(usage)?;
            let r = 1 + (rng.below((n - 1) as u64) as usize);
            let mut rows: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.below((i + 1) as u64) as usize;
                rows.swap(i, j);
            }
            rows.truncate(r);
            let code = scheme.derive(&rows).map_err(usage)?;
            let ok = code.generator().mul(code.control()).map_err(usage)?.is_zero()
                && code.generator().rank() == r
                && code.control().rank() == n - r;
            derivations_ok &= ok;
        }
    }
    checks.push(Check::new("800 random unit derivations: G*D = 0 and ranks", "true", derivations_ok));

    // Memory-1 equal-split distance formula on random orthogonal schemes.
    let ofields = [gf(2, 1), gf(3, 1), gf(5, 1)];
    let mut formula_matches = 0usize;
    let mut lower_bound_ok = true;
    let mut support_bound_ok = true;
    let mut gsb_ok = true;
    let total = 20usize;
    for round in 0..total {
        let spec = &ofields[round % ofields.len()];
        let n2 = if round % 2 == 0 { 4 } else { 6 };
        let u = random_orthogonal(spec, n2, &mut rng);
        let scheme = UnitScheme::from_unit(u).map_err(usage)?;
        let split = scheme.split_consecutive(&[n2 / 2, n2 / 2]).map_err(usage)?;
        let code = conv::build_memory1_equal(&split, Twist::Plain).map_err(from_conv_err)?;
        let fd = conv::free_distance(&code, Some(4), DEFAULT_DISTANCE_CAP).map_err(from_conv_err)?;
        let formula = conv::memory1_equal_distance_formula(&split, DEFAULT_DISTANCE_CAP)
            .map_err(from_conv_err)?;
        if fd.value == formula {
            formula_matches += 1;
        }
        lower_bound_ok &= fd.value >= formula;
        gsb_ok &= (fd.value as u64) <= code.gsb();
        for s in 1..=3usize {
            let w = conv::support_distance_profile(&code, s, 2, DEFAULT_DISTANCE_CAP)
                .map_err(from_conv_err)?;
            support_bound_ok &= w as u64 >= fd.value as u64 + s as u64 - 1;
            gsb_ok &= (fd.value as u64) <= code.gsb();
        }
    }
    checks.push(Check::new(
        "20 random orthogonal schemes: free distance equals d(A)+d(B)",
        format!("{total}/{total}"),
        format!("{formula_matches}/{total}"),
    ));
    checks.push(Check::new("free distance >= d(A)+d(B) always", "true", lower_bound_ok));
    checks.push(Check::new("support-s weight >= d_f + s - 1 (s <= 3)", "true", support_bound_ok));
    checks.push(Check::new("no oracle value above the gsb", "true", gsb_ok));

    // Field axioms, exhaustive for q <= 64.
    let mut axioms_ok = true;
    for (p, m) in [
        (2u64, 1u32), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (11, 1), (13, 1),
        (2, 4), (17, 1), (19, 1), (23, 1), (5, 2), (3, 3), (29, 1), (31, 1), (2, 5),
        (37, 1), (41, 1), (43, 1), (47, 1), (7, 2), (53, 1), (59, 1), (61, 1), (2, 6),
    ] {
        let spec = gf(p, m);
        let q = spec.q();
        for a in 0..q {
            if spec.add(a, spec.neg(a)) != 0 {
                axioms_ok = false;
            }
            if a != 0 && spec.mul(a, spec.inv(a).map_err(usage)?) != 1 {
                axioms_ok = false;
            }
            for b in 0..q {
                for c in 0..q {
                    if spec.mul(a, spec.add(b, c)) != spec.add(spec.mul(a, b), spec.mul(a, c))
                        || spec.mul(spec.mul(a, b), c) != spec.mul(a, spec.mul(b, c))
                        || spec.add(spec.add(a, b), c) != spec.add(a, spec.add(b, c))
                    {
                        axioms_ok = false;
                    }
                }
            }
        }
    }
    checks.push(Check::new("field axioms exhaustive for q <= 64", "true", axioms_ok));

    // Systematic-form identity on a couple of random binary P.
    let gf2 = gf(2, 1);
    let mut systematic_ok = true;
    for _ in 0..5 {
        let p = unit_codes_core::sampling::random_mat(&gf2, 3, 3, &mut rng);
        let ident = unit_codes_core::Mat::identity(gf2.clone(), 3);
        let gen = ident.hstack(&p).map_err(usage)?;
        let d = min_weight_of_rowspace(&gen, DEFAULT_DISTANCE_CAP).map_err(from_block_err)?;
        let mut best = u32::MAX;
        for msg in 1u64..8 {
            let x: Vec<u64> = (0..3).map(|i| (msg >> i) & 1).collect();
            let wx = x.iter().filter(|&&v| v != 0).count() as u32;
            let mut xp = vec![0u64; 3];
            for (i, &xi) in x.iter().enumerate() {
                if xi != 0 {
                    for j in 0..3 {
                        xp[j] ^= p.get(i, j);
                    }
                }
            }
            let wxp = xp.iter().filter(|&&v| v != 0).count() as u32;
            best = best.min(wx + wxp);
        }
        systematic_ok &= d == best;
    }
    checks.push(Check::new("systematic-form distance via two enumerations", "true", systematic_ok));
    Ok(checks)
}
