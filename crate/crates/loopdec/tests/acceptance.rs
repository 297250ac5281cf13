//! Acceptance suite: one test per criterion, each printing a PASS line.
//!
//! The expected values for the table-reproduction criteria are entered
//! here independently of the engine: the exceptional rows as literal
//! factor lists, the classical rows as direct evaluations of the printed
//! index ranges (with the looped even sphere rendered in split form and
//! the lower sphere limit of the `SU(2n+k)/SO(2n+k)` rows read as a
//! clamp from below, which is what the adjacent rows print).

use std::time::Instant;

use loopdec::catalog::{case_record, BdiVariant, CaseId};
use loopdec::exponent::{case_exponent, exponent, exponent_atom, ExponentInterval};
use loopdec::fibre::{decompose_case, rational_homotopy_degrees, verify_rational_balance, FibreError};
use loopdec::space::{Atom, Factor, Prime, SpaceExpr};
use loopdec::tables::{maps_vanish, pi_b, pi_sphere, GroupDesc, RangeQuery, TableError};
use loopdec::weyl::{
    invariant_generator_oracle, reflection_rho, verify_appendix_table, verify_fi_no_splitting,
    verify_generator_formulas, Polynomial, SymbolTable,
};

const PRIMES_LE_13: [Prime; 4] = [5, 7, 11, 13];
const PRIMES_LE_31: [Prime; 9] = [5, 7, 11, 13, 17, 19, 23, 29, 31];

fn s(d: u32) -> Factor {
    Factor::plain(Atom::Sphere(d))
}

fn os(d: u32) -> Factor {
    Factor::looped(Atom::Sphere(d))
}

fn ob(lo: u32, hi: u32) -> Factor {
    Factor::looped(Atom::BCell(vec![lo, hi]))
}

fn expr(p: Prime, factors: Vec<Factor>) -> SpaceExpr {
    SpaceExpr::new(p, factors).expect("expected expression is well-formed")
}

fn engine(case: &CaseId, p: Prime) -> SpaceExpr {
    decompose_case(case, p)
        .unwrap_or_else(|e| panic!("{case} at p={p} failed: {e}"))
        .expr
}

fn assert_case(case: &CaseId, p: Prime, expected: SpaceExpr) {
    let got = engine(case, p);
    assert_eq!(got, expected, "{case} at p={p}: engine {got} vs table {expected}");
    // determinism: byte-identical JSON across two independent runs
    let again = engine(case, p);
    assert_eq!(
        serde_json::to_string(&got).unwrap(),
        serde_json::to_string(&again).unwrap(),
        "{case} at p={p}: nondeterministic serialization"
    );
}

// ---------------------------------------------------------------------------
// Criterion 1: exceptional table reproduction
// ---------------------------------------------------------------------------

fn exceptional_expected(case: &CaseId, p: Prime) -> Option<Vec<Factor>> {
    let row = match case {
        CaseId::G => vec![s(3), os(11)],
        CaseId::FI if p == 5 => vec![s(3), s(7), ob(15, 23)],
        CaseId::FI => vec![s(3), s(7), os(15), os(23)],
        CaseId::FII => vec![s(7), os(23)],
        CaseId::EI if p == 5 => vec![s(7), ob(9, 17), os(23)],
        CaseId::EI => vec![s(7), os(9), os(17), os(23)],
        CaseId::EII if p == 5 => vec![s(3), s(5), s(7), os(17), ob(15, 23)],
        CaseId::EII => vec![s(3), s(5), s(7), os(15), os(17), os(23)],
        CaseId::EIII => vec![Factor::plain(Atom::Circle), s(7), os(17), os(23)],
        CaseId::EIV if p == 5 => vec![ob(9, 17)],
        CaseId::EIV => vec![os(9), os(17)],
        CaseId::EV if p >= 11 => {
            vec![s(5), s(7), s(9), s(13), os(19), os(23), os(27), os(35)]
        }
        CaseId::EVI if p >= 11 => vec![s(3), s(7), s(11), os(23), os(27), os(35)],
        CaseId::EVII if p >= 11 => {
            vec![Factor::plain(Atom::Circle), s(9), s(17), os(19), os(27), os(35)]
        }
        CaseId::EVIII if p == 11 => {
            vec![s(7), s(11), s(15), s(19), os(35), ob(39, 59), os(47)]
        }
        CaseId::EVIII if p == 13 => {
            vec![s(7), s(11), s(15), s(19), ob(35, 59), os(39), os(47)]
        }
        CaseId::EVIII if p >= 17 => {
            vec![s(7), s(11), s(15), s(19), os(35), os(39), os(47), os(59)]
        }
        CaseId::EIX if p == 11 => vec![s(3), s(11), s(19), ob(39, 59), os(47)],
        CaseId::EIX if p >= 13 => vec![s(3), s(11), s(19), os(39), os(47), os(59)],
        _ => return None,
    };
    Some(row)
}

fn exceptional_cases() -> Vec<CaseId> {
    vec![
        CaseId::G,
        CaseId::FI,
        CaseId::FII,
        CaseId::EI,
        CaseId::EII,
        CaseId::EIII,
        CaseId::EIV,
        CaseId::EV,
        CaseId::EVI,
        CaseId::EVII,
        CaseId::EVIII,
        CaseId::EIX,
    ]
}

#[test]
fn criterion_1_exceptional_table_reproduction() {
    let start = Instant::now();
    let mut checked = 0;
    for case in exceptional_cases() {
        for &p in &PRIMES_LE_31 {
            let Some(row) = exceptional_expected(&case, p) else { continue };
            assert_case(&case, p, expr(p, row));
            checked += 1;
        }
    }
    assert!(checked >= 90, "sweep too small: {checked}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "criterion 1 took {elapsed:?}");
    println!("[acceptance] criterion 1 (exceptional table, {checked} cases, {elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 2: classical table reproduction
// ---------------------------------------------------------------------------

// ΩB(4i+1, 4i+2p-1) for i in lo..=hi
fn loop_bundles_4i1(lo: i64, hi: i64, p: Prime) -> Vec<Factor> {
    (lo..=hi).map(|i| ob(4 * i as u32 + 1, 4 * i as u32 + 2 * p - 1)).collect()
}

fn classical_cases(p: Prime) -> Vec<(CaseId, Vec<Factor>)> {
    let pi = p as i64;
    let mut rows = Vec::new();

    // AI, SU(2n+1)/SO(2n+1), p > n
    for n in 1i64..=6 {
        if pi <= n {
            continue;
        }
        let mut f = loop_bundles_4i1(1, n - (pi - 1) / 2, p);
        for j in 1.max(n - (pi - 3) / 2)..=n.min((pi - 1) / 2) {
            f.push(os(4 * j as u32 + 1));
        }
        rows.push((CaseId::AI { su: 2 * n as u32 + 1 }, f));
    }

    // AI, SU(4n+2)/SO(4n+2) at p = 2n+1
    for n in 1u32..=6 {
        if 2 * n + 1 != p {
            continue;
        }
        let mut f = loop_bundles_4i1(1, n as i64 - 1, p);
        f.push(os(8 * n + 1));
        f.push(os(8 * n + 3));
        rows.push((CaseId::AI { su: 4 * n + 2 }, f));
    }

    // AI, SU(2n)/SO(2n), p > n
    for n in 2i64..=6 {
        if pi <= n {
            continue;
        }
        let mut f = vec![os(2 * n as u32)]; // rendered in split form by normalize
        f.extend(loop_bundles_4i1(1, n - (pi + 1) / 2, p));
        for j in 1.max(n - (pi - 1) / 2)..=(n - 1).min((pi - 1) / 2) {
            f.push(os(4 * j as u32 + 1));
        }
        rows.push((CaseId::AI { su: 2 * n as u32 }, f));
    }

    // AII, SU(2n)/Sp(n), p > n
    for n in 1i64..=6 {
        if pi <= n {
            continue;
        }
        let mut f = loop_bundles_4i1(1, n - (pi + 1) / 2, p);
        for j in 1.max(n - (pi - 1) / 2)..=(n - 1).min((pi - 1) / 2) {
            f.push(os(4 * j as u32 + 1));
        }
        rows.push((CaseId::AII { n: n as u32 }, f));
    }

    // AIII, U(n)/(U(m) x U(n-m)), p > n/2
    for n in 2u32..=6 {
        for m in 1..=n / 2 {
            if 2 * p <= n {
                continue;
            }
            let mut f: Vec<Factor> = (1..=m).map(|j| s(2 * j - 1)).collect();
            f.extend((n - m + 1..=n).map(|j| os(2 * j - 1)));
            rows.push((CaseId::AIII { n, m }, f));
        }
    }

    // BDI rows, p > n
    for n in 2u32..=6 {
        if p <= n {
            continue;
        }
        for m in 1..=n / 2 {
            // SO(2n+1)/(SO(2m) x SO(2(n-m)+1))
            let mut f: Vec<Factor> = (1..m).map(|j| s(4 * j - 1)).collect();
            f.push(s(2 * m - 1));
            f.extend((n - m + 1..=n).map(|j| os(4 * j - 1)));
            rows.push((CaseId::BDI { n, m, variant: BdiVariant::OddEven }, f));

            // SO(2n+2)/(SO(2m+1) x SO(2(n-m)+1))
            let mut f: Vec<Factor> = (1..=m).map(|j| s(4 * j - 1)).collect();
            f.push(os(2 * n + 1));
            f.extend((n - m + 1..=n).map(|j| os(4 * j - 1)));
            rows.push((CaseId::BDI { n, m, variant: BdiVariant::EvenOdd }, f));
        }
        for m in 1..=(n + 1) / 2 {
            // SO(2n+1)/(SO(2m-1) x SO(2(n-m)+2))
            let mut f: Vec<Factor> = (1..m).map(|j| s(4 * j - 1)).collect();
            f.push(s(2 * (n - m) + 1));
            f.extend((n - m + 1..=n).map(|j| os(4 * j - 1)));
            rows.push((CaseId::BDI { n, m, variant: BdiVariant::OddOdd }, f));

            // SO(2n+2)/(SO(2m) x SO(2(n-m)+2))
            let mut f: Vec<Factor> = (1..m).map(|j| s(4 * j - 1)).collect();
            f.push(s(2 * m - 1));
            f.push(s(2 * (n - m) + 1));
            f.push(os(2 * n + 1));
            f.extend((n - m + 1..=n).map(|j| os(4 * j - 1)));
            rows.push((CaseId::BDI { n, m, variant: BdiVariant::EvenEven }, f));
        }
    }

    // CI, Sp(n)/U(n), p > n
    for n in 1u32..=6 {
        if p <= n {
            continue;
        }
        let mut f: Vec<Factor> = (0..=(n - 1) / 2).map(|j| s(4 * j + 1)).collect();
        f.extend(((n + 2) / 2..=n).map(|j| os(4 * j - 1)));
        rows.push((CaseId::CI { n }, f));
    }

    // CII, Sp(n)/(Sp(m) x Sp(n-m)), p > n
    for n in 2u32..=6 {
        if p <= n {
            continue;
        }
        for m in 1..=n / 2 {
            let mut f: Vec<Factor> = (1..=m).map(|j| s(4 * j - 1)).collect();
            f.extend((n - m + 1..=n).map(|j| os(4 * j - 1)));
            rows.push((CaseId::CII { n, m }, f));
        }
    }

    // DIII, SO(2n)/U(n), p > n-1
    for n in 2u32..=6 {
        if p <= n - 1 {
            continue;
        }
        let mut f: Vec<Factor> = (0..=(n - 2) / 2).map(|j| s(4 * j + 1)).collect();
        f.extend(((n + 1) / 2..=n - 1).map(|j| os(4 * j - 1)));
        rows.push((CaseId::DIII { n }, f));
    }

    rows
}

#[test]
fn criterion_2_classical_table_reproduction() {
    let start = Instant::now();
    let mut checked = 0;
    for &p in &PRIMES_LE_13 {
        for (case, factors) in classical_cases(p) {
            assert_case(&case, p, expr(p, factors));
            checked += 1;
        }
    }
    assert!(checked >= 250, "sweep too small: {checked}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "criterion 2 took {elapsed:?}");
    println!("[acceptance] criterion 2 (classical table, {checked} cases, {elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 3: exceptional exponent column
// ---------------------------------------------------------------------------

#[test]
fn criterion_3_exceptional_exponent_column() {
    let exact = ExponentInterval::exact;
    let iv = |lo, hi| ExponentInterval { lo, hi };
    // the full exponent column, by band
    let column: Vec<(CaseId, Prime, ExponentInterval)> = vec![
        (CaseId::G, 5, exact(5)),
        (CaseId::G, 11, exact(5)),
        (CaseId::FI, 5, iv(11, 12)),
        (CaseId::FI, 7, exact(11)),
        (CaseId::FI, 13, exact(11)),
        (CaseId::FII, 5, exact(11)),
        (CaseId::FII, 11, exact(11)),
        (CaseId::EI, 5, exact(11)),
        (CaseId::EI, 7, exact(11)),
        (CaseId::EII, 5, iv(11, 12)),
        (CaseId::EII, 7, exact(11)),
        (CaseId::EIII, 5, exact(11)),
        (CaseId::EIII, 13, exact(11)),
        (CaseId::EIV, 5, iv(8, 9)),
        (CaseId::EIV, 7, exact(8)),
        (CaseId::EV, 11, exact(17)),
        (CaseId::EV, 13, exact(17)),
        (CaseId::EVI, 11, exact(17)),
        (CaseId::EVII, 11, exact(17)),
        (CaseId::EVIII, 11, iv(29, 30)),
        (CaseId::EVIII, 13, iv(29, 30)),
        (CaseId::EVIII, 17, exact(29)),
        (CaseId::EVIII, 19, exact(29)),
        (CaseId::EIX, 11, iv(29, 30)),
        (CaseId::EIX, 13, exact(29)),
    ];
    for (case, p, expected) in column {
        let got = case_exponent(&case, p).unwrap_or_else(|e| panic!("{case} p={p}: {e}"));
        assert_eq!(got, expected, "{case} at p={p}");
        assert_eq!(got.is_exact(), expected.is_exact(), "{case} at p={p} exactness");
    }
    // the named first-principles checks
    assert_eq!(case_exponent(&CaseId::FII, 5).unwrap(), exact(11));
    assert_eq!(case_exponent(&CaseId::EI, 5).unwrap(), exact(11));
    assert_eq!(case_exponent(&CaseId::FI, 5).unwrap(), iv(11, 12));
    assert_eq!(case_exponent(&CaseId::EVIII, 11).unwrap(), iv(29, 30));
    assert_eq!(case_exponent(&CaseId::EVIII, 17).unwrap(), exact(29));
    println!("[acceptance] criterion 3 (exceptional exponent column): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 4: the p = 7 extension and obstruction cases
// ---------------------------------------------------------------------------

#[test]
fn criterion_4_extension_cases_at_seven() {
    assert_case(
        &CaseId::EV,
        7,
        expr(7, vec![s(5), s(7), s(9), s(13), os(27), ob(23, 35), os(19)]),
    );
    assert_case(&CaseId::EVI, 7, expr(7, vec![s(3), os(27), s(11), ob(23, 35), s(7)]));
    assert_case(
        &CaseId::EVII,
        7,
        expr(7, vec![Factor::plain(Atom::Circle), os(27), os(35), s(9), s(17), os(19)]),
    );
    for case in [CaseId::EVIII, CaseId::EIX] {
        match decompose_case(&case, 7) {
            Err(FibreError::UndeterminedCase { obstruction, prime: 7, .. }) => {
                assert!(
                    obstruction.contains("π_27(S^18) ≅ Z/7"),
                    "obstruction must cite π_27(S^18) ≅ Z/7, got {obstruction}"
                );
            }
            other => panic!("{case} at 7 should be undetermined, got {other:?}"),
        }
    }
    println!("[acceptance] criterion 4 (p=7 extension and obstruction cases): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 5: homotopy-table property suite
// ---------------------------------------------------------------------------

#[test]
fn criterion_5_homotopy_table_properties() {
    let start = Instant::now();
    for &p in &PRIMES_LE_13 {
        // even-offset vanishing: spheres are zero except (m=2, t=4p-6);
        // the bundles carry no torsion, only the Z_(p) at t = 2p-2
        for m in 2..=p {
            let mut t = 2;
            while t <= 4 * p - 6 {
                let sphere = pi_sphere(RangeQuery { m, t, p }).unwrap();
                if m == 2 && t == 4 * p - 6 {
                    assert_eq!(sphere, GroupDesc::ZmodP, "π sphere m={m} t={t} p={p}");
                } else {
                    assert_eq!(sphere, GroupDesc::Zero, "π sphere m={m} t={t} p={p}");
                }
                let bundle = pi_b(RangeQuery { m, t, p }).unwrap();
                if t == 2 * p - 2 {
                    assert_eq!(bundle, GroupDesc::Zlocal, "π bundle m={m} t={t} p={p}");
                } else {
                    assert_eq!(bundle, GroupDesc::Zero, "π bundle m={m} t={t} p={p}");
                }
                t += 2;
            }
        }

        // the mapping-set vanishing, re-derived exhaustively
        for m in 2..=p {
            for n in 2..=p {
                if m == n {
                    continue;
                }
                let sources = [
                    Atom::Sphere(2 * m - 1),
                    Atom::ACell(vec![2 * m - 1, 2 * m + 2 * p - 3]),
                ];
                let targets = [
                    Atom::Point,
                    Atom::Sphere(2 * n - 1),
                    Atom::Sphere(2 * n + 2 * p - 3),
                    Atom::BCell(vec![2 * n - 1, 2 * n + 2 * p - 3]),
                    Atom::BCell(vec![2 * n + 2 * p - 3, 2 * n + 4 * p - 5]),
                ];
                for source in &sources {
                    for target in &targets {
                        let excluded = matches!(source, Atom::ACell(cs) if cs[0] == 2 * p - 1)
                            && *target == Atom::Sphere(3);
                        match maps_vanish(source, target, p) {
                            Ok(true) => assert!(!excluded, "excluded pair must error"),
                            Err(TableError::ExcludedCase) => {
                                assert!(excluded, "unexpected exclusion ({source}, {target})")
                            }
                            other => panic!("({source}, {target}) at p={p}: {other:?}"),
                        }
                    }
                }
            }
        }
        // m = n is refused
        assert!(matches!(
            maps_vanish(&Atom::Sphere(3), &Atom::Sphere(3), p),
            Err(TableError::NotApplicable(2))
        ));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 5 took {elapsed:?}");
    println!("[acceptance] criterion 5 (homotopy-table properties, {elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 6: rational balance and rational homotopy degrees
// ---------------------------------------------------------------------------

#[test]
fn criterion_6_rational_balance() {
    let mut checked = 0;
    // every slot-matched exceptional case over the criterion-1 sweep
    for case in exceptional_cases() {
        for &p in &PRIMES_LE_31 {
            if exceptional_expected(&case, p).is_none() {
                continue;
            }
            let Ok(record) = case_record(&case, p) else { continue };
            if !matches!(
                record.recipe_kind,
                loopdec::catalog::RecipeKind::SlotMatch
                    | loopdec::catalog::RecipeKind::SlotMatchWithS1
            ) {
                continue;
            }
            let balance = verify_rational_balance(&record).unwrap();
            assert!(
                balance.ok,
                "{case} at p={p}: balance failed\n  H: {:?} vs {:?}\n  G: {:?} vs {:?}",
                balance.h_accounted, balance.h_type, balance.g_accounted, balance.g_type
            );
            checked += 1;
        }
    }
    // the slot-matched classical family over the criterion-2 sweep
    for &p in &PRIMES_LE_13 {
        for n in 1u32..=6 {
            if p <= n {
                continue;
            }
            let record = case_record(&CaseId::CI { n }, p).unwrap();
            assert!(verify_rational_balance(&record).unwrap().ok, "CI(n={n}) at p={p}");
            checked += 1;
        }
    }
    assert!(checked >= 80, "balance sweep too small: {checked}");

    let g = decompose_case(&CaseId::G, 7).unwrap();
    assert_eq!(rational_homotopy_degrees(&g), vec![4, 11]);
    let fii = decompose_case(&CaseId::FII, 5).unwrap();
    assert_eq!(rational_homotopy_degrees(&fii), vec![8, 23]);
    println!("[acceptance] criterion 6 (rational balance, {checked} cases): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 7: the reflection computation
// ---------------------------------------------------------------------------

#[test]
fn criterion_7_appendix_verification() {
    for &p in &[7u64, 11, 13] {
        let table = verify_appendix_table(p).unwrap();
        assert!(table.ok, "appendix table at p={p}: {table:?}");
        let generators = verify_generator_formulas(p).unwrap();
        assert!(generators.ok, "generator formulas at p={p}: {generators:?}");
    }
    // the displayed expansions and the independent kernel oracle agree at
    // every prime in range; the degree-16 run at p=7 carries the budget
    let start = Instant::now();
    let oracle16 = invariant_generator_oracle(7, 16).unwrap();
    let elapsed = start.elapsed();
    assert!(oracle16.ok, "oracle degree 16: {oracle16:?}");
    assert!(elapsed.as_secs_f64() < 120.0, "degree-16 oracle took {elapsed:?}");
    for &p in &[7u64, 11, 13] {
        for degree in [4u32, 12, 16] {
            if (p, degree) == (7, 16) {
                continue;
            }
            let oracle = invariant_generator_oracle(p, degree).unwrap();
            assert!(oracle.ok, "oracle degree {degree} at p={p}: {oracle:?}");
        }
    }
    println!("[acceptance] criterion 7 (reflection computation, degree-16 oracle {elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 8: the F_5 non-splitting check
// ---------------------------------------------------------------------------

#[test]
fn criterion_8_fi_non_splitting() {
    let start = Instant::now();
    let report = verify_fi_no_splitting().unwrap();
    assert!(report.ok);
    assert_eq!(report.substitutions.len(), 20);
    for sub in &report.substitutions {
        assert!(sub.non_splitting, "substitution a={} b={} split", sub.a, sub.b);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "criterion 8 took {elapsed:?}");
    println!("[acceptance] criterion 8 (F_5 non-splitting, 20/20, {elapsed:?}): PASS");
}

// ---------------------------------------------------------------------------
// Criterion 9: standalone property suites
// ---------------------------------------------------------------------------

// deterministic xorshift so the 1000-case suites are reproducible
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }
}

fn random_homogeneous(rng: &mut Rng, p: u64, degree: u32) -> Polynomial {
    let nvars = loopdec::weyl::e7::NVARS;
    let mut out = Polynomial::zero(p, nvars);
    for _ in 0..(2 + rng.below(4)) {
        let mut term = Polynomial::constant(p, nvars, 1 + rng.below(p - 1) as i64);
        for _ in 0..degree {
            let v = Polynomial::var(p, nvars, rng.below(nvars as u64) as usize).unwrap();
            term = term.mul(&v).unwrap();
        }
        out = out.add(&term).unwrap();
    }
    out
}

fn random_factor(rng: &mut Rng, p: u32) -> Factor {
    let looped = rng.below(2) == 0;
    match rng.below(4) {
        0 => Factor { atom: Atom::Circle, looped },
        1 => Factor { atom: Atom::Sphere(2 * (1 + rng.below(20) as u32) + 1), looped },
        2 => {
            let m = 2 + rng.below(10) as u32;
            Factor { atom: Atom::BCell(vec![2 * m - 1, 2 * m + 2 * p - 3]), looped }
        }
        _ => {
            // looped even-sphere recipe token
            Factor { atom: Atom::Sphere(2 * (2 + rng.below(10) as u32)), looped: true }
        }
    }
}

#[test]
fn criterion_9_property_suites() {
    // normalize idempotence and order insensitivity, 1000 random expressions
    let mut rng = Rng(0x5eed_cafe_f00d_0001);
    for _ in 0..1000 {
        let p = [5u32, 7, 11, 13][rng.below(4) as usize];
        let count = rng.below(7) as usize;
        let mut factors: Vec<Factor> = (0..count).map(|_| random_factor(&mut rng, p)).collect();
        let e1 = SpaceExpr::raw(p, factors.clone()).normalize().unwrap();
        assert_eq!(e1.normalize().unwrap(), e1, "idempotence");
        factors.reverse();
        let e2 = SpaceExpr::raw(p, factors).normalize().unwrap();
        assert_eq!(e1, e2, "order insensitivity");
    }

    // ρ is an F_p-algebra involution, 1000 random homogeneous cases
    let mut rng = Rng(0x5eed_cafe_f00d_0002);
    for &p in &[7u64, 11, 13] {
        let table = SymbolTable::new(p).unwrap();
        for _ in 0..334 {
            let df = 1 + rng.below(3) as u32;
            let dg = 1 + rng.below(3) as u32;
            let f = random_homogeneous(&mut rng, p, df);
            let g = random_homogeneous(&mut rng, p, dg);
            let rho_f = reflection_rho(&table, &f).unwrap();
            let rho_g = reflection_rho(&table, &g).unwrap();
            // multiplicative
            let lhs = reflection_rho(&table, &f.mul(&g).unwrap()).unwrap();
            assert_eq!(lhs, rho_f.mul(&rho_g).unwrap(), "ρ(fg) = ρ(f)ρ(g) at p={p}");
            // additive
            let lhs = reflection_rho(&table, &f.add(&g).unwrap()).unwrap();
            assert_eq!(lhs, rho_f.add(&rho_g).unwrap(), "ρ(f+g) = ρ(f)+ρ(g) at p={p}");
            // involution
            assert_eq!(reflection_rho(&table, &rho_f).unwrap(), f, "ρ² = id at p={p}");
        }
    }

    // the convolution identity c_i = Σ a_j b_k, exactly
    for &p in &[7u64, 11, 13] {
        let table = SymbolTable::new(p).unwrap();
        assert!(table.check_convolution_identity().unwrap(), "c = a * b convolution at p={p}");
    }

    // exponent interval laws on random expressions
    let mut rng = Rng(0x5eed_cafe_f00d_0003);
    for _ in 0..1000 {
        let p = [5u32, 7, 11, 13][rng.below(4) as usize];
        let count = 1 + rng.below(5) as usize;
        let factors: Vec<Factor> = (0..count).map(|_| random_factor(&mut rng, p)).collect();
        let e = SpaceExpr::raw(p, factors).normalize().unwrap();
        let whole = exponent(&e, p).unwrap();
        assert!(whole.lo <= whole.hi);
        // factor-wise maximum in both coordinates
        let mut lo = 0;
        let mut hi = 0;
        for f in e.factors() {
            let iv = exponent_atom(&f.atom, f.looped, p).unwrap();
            lo = lo.max(iv.lo);
            hi = hi.max(iv.hi);
        }
        assert_eq!((whole.lo, whole.hi), (lo, hi));
        // a point factor never changes the result
        let mut padded = e.factors().to_vec();
        padded.push(Factor::plain(Atom::Point));
        let padded = SpaceExpr::raw(p, padded).normalize().unwrap();
        assert_eq!(exponent(&padded, p).unwrap(), whole);
    }

    println!("[acceptance] criterion 9 (standalone property suites): PASS");
}
