use std::fmt::Write as _;

use fatgin::oracle::{default_points, oracle_generator_counts, oracle_gin, oracle_hilbert};
use fatgin::{
    build_staircase, generator_table, hilbert_function, limiting_shape, newton_polytope,
    polytope_area, scaled_polytope, Configuration, GeneratorTable, GinStaircase,
};
use num_bigint::BigInt;

use crate::report::{
    point_label, points, AnalysisReport, Areas, Check, Point, Rational, StaircaseBlock, TableRow,
    Verification, SCHEMA_VERSION,
};

pub struct AnalyzeOptions {
    pub verify: bool,
    pub seed: u64,
    pub no_oracle: bool,
}

/// Degree bound passed to the gin oracle; the pure power of `y` never
/// exceeds it.
pub fn gin_dmax(l: u32, m: u64) -> u64 {
    u64::from(l) * m + 1
}

pub fn run(l: u32, m: u64, opts: &AnalyzeOptions) -> fatgin::Result<AnalysisReport> {
    let c = Configuration::new(l)?;
    let table = generator_table(&c, m)?;
    from_table(&c, table, opts)
}

/// Builds the report around an already computed generator table. An
/// uncertified table gets no `staircase`; the oracle fills `oracle_staircase`
/// instead unless disabled.
pub fn from_table(
    c: &Configuration,
    table: GeneratorTable,
    opts: &AnalyzeOptions,
) -> fatgin::Result<AnalysisReport> {
    let (l, m) = (c.l(), table.m);
    let staircase = if table.cwl_certified {
        Some(build_staircase(&table)?)
    } else {
        None
    };
    let oracle_staircase = match (&staircase, opts.no_oracle) {
        (None, false) => Some(oracle_gin(
            &default_points(l)?,
            m,
            gin_dmax(l, m),
            opts.seed,
        )?),
        _ => None,
    };

    let shape = limiting_shape(l)?;
    let mut areas = Areas {
        newton_polytope: None,
        scaled_polytope: None,
        limiting_shape: Rational(polytope_area(&shape)),
    };
    let (mut newton, mut scaled) = (None, None);
    if let Some(s) = staircase.as_ref().or(oracle_staircase.as_ref()) {
        let p = newton_polytope(s);
        let q = scaled_polytope(&p, m)?;
        areas.newton_polytope = Some(Rational(polytope_area(&p)));
        areas.scaled_polytope = Some(Rational(polytope_area(&q)));
        newton = Some(points(&p));
        scaled = Some(points(&q));
    }

    let verification = if opts.verify {
        Some(verify(c, m, &table, staircase.as_ref(), opts.seed)?)
    } else {
        None
    };

    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION,
        l,
        m,
        alpha: table.alpha,
        total: table.total,
        cwl_certified: table.cwl_certified,
        generator_table: table
            .counts
            .iter()
            .map(|(&d, &v_d)| TableRow { d, v_d })
            .collect(),
        staircase: staircase.as_ref().map(|s| StaircaseBlock::new(s, None)),
        oracle_staircase: oracle_staircase
            .as_ref()
            .map(|s| StaircaseBlock::new(s, Some(opts.seed))),
        newton_polytope: newton,
        scaled_polytope: scaled,
        limiting_shape: points(&shape),
        areas,
        verification,
    })
}

pub fn hilbert_check(c: &Configuration, m: u64) -> fatgin::Result<Check> {
    let ps = default_points(c.l())?;
    let top = u64::from(c.l()) * m + 2;
    let mut first_failure = None;
    for d in 0..=top {
        let divisor = hilbert_function(c, m, d)?;
        let oracle = oracle_hilbert(&ps, m, d)?;
        if divisor != BigInt::from(oracle) {
            first_failure = Some(format!("d={d}: divisor {divisor}, oracle {oracle}"));
            break;
        }
    }
    Ok(Check {
        name: "hilbert".into(),
        passed: first_failure.is_none(),
        checked: top + 1,
        first_failure,
    })
}

pub fn generator_check(c: &Configuration, m: u64, table: &GeneratorTable) -> fatgin::Result<Check> {
    let dmax = u64::from(c.l()) * m + 1;
    let oracle = oracle_generator_counts(&default_points(c.l())?, m, dmax)?;
    let first_failure = (1..=dmax)
        .find(|&d| table.count(d) != oracle.get(&d).copied().unwrap_or(0))
        .map(|d| {
            let o = oracle.get(&d).copied().unwrap_or(0);
            format!("d={d}: divisor {}, oracle {o}", table.count(d))
        });
    Ok(Check {
        name: "generators".into(),
        passed: first_failure.is_none(),
        checked: dmax,
        first_failure,
    })
}

pub fn gin_check(
    c: &Configuration,
    m: u64,
    staircase: &GinStaircase,
    seed: u64,
) -> fatgin::Result<Check> {
    let oracle = oracle_gin(&default_points(c.l())?, m, gin_dmax(c.l(), m), seed)?;
    let first_failure = if oracle == *staircase {
        None
    } else {
        let ours = staircase.generators();
        let theirs = oracle.generators();
        let at = ours
            .iter()
            .zip(&theirs)
            .find(|(a, b)| a != b)
            .map(|((x, y), _)| x + y)
            .unwrap_or(staircase.alpha);
        Some(format!("d={at}: divisor {staircase}, oracle {oracle}"))
    };
    Ok(Check {
        name: "gin".into(),
        passed: first_failure.is_none(),
        checked: staircase.num_generators(),
        first_failure,
    })
}

fn verify(
    c: &Configuration,
    m: u64,
    table: &GeneratorTable,
    staircase: Option<&GinStaircase>,
    seed: u64,
) -> fatgin::Result<Verification> {
    let mut checks = vec![hilbert_check(c, m)?, generator_check(c, m, table)?];
    if let Some(s) = staircase {
        checks.push(gin_check(c, m, s, seed)?);
    }
    Ok(Verification::new(checks))
}

fn polyline(ps: &[Point]) -> String {
    ps.iter().map(point_label).collect::<Vec<_>>().join(" -- ")
}

pub fn to_table(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let _ = writeln!(out, "l = {}, m = {}", r.l, r.m);
    let _ = writeln!(
        out,
        "alpha = {}, generators = {}, componentwise linear: {}",
        r.alpha,
        r.total,
        yes_no(r.cwl_certified)
    );
    let _ = writeln!(out);
    let _ = writeln!(out, "{:>6}  {:>6}", "d", "v_d");
    for row in &r.generator_table {
        let _ = writeln!(out, "{:>6}  {:>6}", row.d, row.v_d);
    }
    let _ = writeln!(out);
    let describe = |b: &StaircaseBlock| {
        GinStaircase::new(r.m, b.alpha, b.lambda.clone())
            .map(|s| s.to_string())
            .unwrap_or_else(|e| e.to_string())
    };
    if let Some(s) = &r.staircase {
        let _ = writeln!(out, "gin staircase: {}", describe(s));
    }
    if let Some(s) = &r.oracle_staircase {
        let seed = s
            .seed
            .map(|v| format!(" (oracle, seed {v})"))
            .unwrap_or_default();
        let _ = writeln!(out, "gin staircase{seed}: {}", describe(s));
    }
    if r.staircase.is_none() && r.oracle_staircase.is_none() {
        let _ = writeln!(out, "gin staircase: not certified");
    }
    let area = |a: &Option<Rational>| {
        a.as_ref()
            .map(|a| format!("  area {}", a.0))
            .unwrap_or_default()
    };
    if let Some(p) = &r.newton_polytope {
        let _ = writeln!(
            out,
            "Newton polytope: {}{}",
            polyline(p),
            area(&r.areas.newton_polytope)
        );
    }
    if let Some(p) = &r.scaled_polytope {
        let _ = writeln!(
            out,
            "scaled by 1/m:   {}{}",
            polyline(p),
            area(&r.areas.scaled_polytope)
        );
    }
    let _ = writeln!(
        out,
        "limiting shape:  {}  area {}",
        polyline(&r.limiting_shape),
        r.areas.limiting_shape.0
    );
    if let Some(v) = &r.verification {
        let _ = writeln!(out);
        for c in &v.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{}: {status} ({} checked)", c.name, c.checked);
            if let Some(f) = &c.first_failure {
                let _ = write!(out, " first failure {f}");
            }
            let _ = writeln!(out);
        }
    }
    out
}

pub fn to_csv(r: &AnalysisReport) -> String {
    let mut out = String::from("d,v_d\n");
    for row in &r.generator_table {
        let _ = writeln!(out, "{},{}", row.d, row.v_d);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn opts(no_oracle: bool) -> AnalyzeOptions {
        AnalyzeOptions {
            verify: false,
            seed: 1,
            no_oracle,
        }
    }

    #[test]
    fn certified_report() {
        let r = run(3, 6, &opts(false)).unwrap();
        assert!(r.cwl_certified);
        assert_eq!((r.alpha, r.total), (10, 11));
        assert!(r.staircase.is_some() && r.oracle_staircase.is_none());
        assert_eq!(
            r.areas.scaled_polytope,
            Some(r.areas.limiting_shape.clone())
        );
    }

    #[test]
    fn uncertified_table_routes_to_oracle() {
        // Real inputs always certify in the tested range, so fake a table
        // whose generator count exceeds alpha + 1.
        let c = Configuration::new(3).unwrap();
        let real = generator_table(&c, 2).unwrap();
        let mut counts: BTreeMap<u64, u64> = real.counts.clone();
        *counts.entry(real.alpha + 2).or_insert(0) += 1;
        let fake = GeneratorTable::from_counts(3, 2, real.alpha, counts);
        assert!(!fake.cwl_certified);

        let r = from_table(&c, fake.clone(), &opts(false)).unwrap();
        assert!(r.staircase.is_none());
        let oracle = r.oracle_staircase.expect("oracle staircase");
        assert_eq!(oracle.seed, Some(1));
        let built = build_staircase(&real).unwrap();
        assert_eq!(oracle.lambda, built.lambda());
        assert!(r.newton_polytope.is_some());

        let r = from_table(&c, fake, &opts(true)).unwrap();
        assert!(r.staircase.is_none() && r.oracle_staircase.is_none());
        assert!(r.newton_polytope.is_none() && r.areas.newton_polytope.is_none());
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("staircase").is_none());
    }

    #[test]
    fn verification_passes_for_small_case() {
        let mut o = opts(false);
        o.verify = true;
        let v = run(3, 2, &o).unwrap().verification.unwrap();
        assert!(v.passed);
        let names: Vec<&str> = v.checks.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["hilbert", "generators", "gin"]);
    }

    #[test]
    fn report_json_round_trip() {
        let mut o = opts(false);
        o.verify = true;
        for (l, m, verify) in [(3, 2, true), (5, 1, true), (4, 12, false)] {
            o.verify = verify;
            let r = run(l, m, &o).unwrap();
            let json = serde_json::to_string(&r).unwrap();
            assert_eq!(serde_json::from_str::<AnalysisReport>(&json).unwrap(), r);
        }
    }

    #[test]
    fn csv_output() {
        let r = run(3, 6, &opts(true)).unwrap();
        assert_eq!(to_csv(&r), "d,v_d\n10,1\n11,3\n12,4\n14,1\n16,1\n18,1\n");
    }
}
