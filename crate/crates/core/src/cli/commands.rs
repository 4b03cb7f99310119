use std::fmt::Write;

use serde::Serialize;
use serde_json::json;

use super::{CeArgs, CharArgs, CharCheck, CocycleArgs, CrosscheckArgs, HcArgs, Outcome, RamanujanArgs, RamanujanCase};
use crate::algebra::{parse_algebra_spec, GradedAlgebraPresentation};
use crate::derham::{cyclic_homology, de_rham, resolution_for, weights_up_to};
use crate::error::{Error, Result};
use crate::exact::QTSeries;
use crate::lie::{
    build_complex, cup_product, integral_cocycle, is_closed, is_coboundary, lie_presentation, nonexact_certificate,
    CeComplex, CeComplexSpec, Cochain, LiePresentation, Mode,
};
use crate::qchar::{
    bilateral_series, bilateral_substitution, binomial_substitution, e1_character, euler_crosscheck, first_stable,
    product_formula, ramanujan_check, stable_kac_series, GeneratorFamily, RamanujanReport,
};

const CUTOFF_LIMIT: i64 = 60;

fn check_weight(alg: &GradedAlgebraPresentation, weight: &[i64]) -> Result<()> {
    if weight.len() != alg.weight_arity() {
        return Err(Error::InvalidArgument(format!(
            "the algebra has {} weight coordinates but --weight gives {}",
            alg.weight_arity(),
            weight.len()
        )));
    }
    Ok(())
}

/// `sl2`, `gl3`, ...
pub(crate) fn parse_lie(text: &str) -> Result<LiePresentation> {
    let split = text.find(|c: char| c.is_ascii_digit()).unwrap_or(text.len());
    let (name, rank) = text.split_at(split);
    let n = rank
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("expected a Lie algebra like sl2, got `{text}`")))?;
    lie_presentation(name, n)
}

/// One monomial `num/den · q^q t^t u^u` of a series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTerm {
    pub q: i64,
    pub t: i64,
    pub u: i64,
    pub num: String,
    pub den: String,
}

pub(crate) fn series_terms(s: &QTSeries) -> Result<Vec<SeriesTerm>> {
    let mut out = Vec::new();
    for ((q, t), c) in s.terms() {
        let l = c.as_laurent().ok_or_else(|| {
            Error::InvalidArgument(format!("coefficient of q^{q} t^{t} is not a Laurent polynomial: {c}"))
        })?;
        for (u, x) in l.terms() {
            out.push(SeriesTerm {
                q,
                t,
                u,
                num: x.numer().to_string(),
                den: x.denom().to_string(),
            });
        }
    }
    Ok(out)
}

pub fn hc(a: &HcArgs, strict: bool) -> Result<Outcome> {
    let alg = parse_algebra_spec(&a.algebra)?;
    let free = resolution_for(&alg, a.window)?;
    let c = de_rham(&free, a.i_max)?;
    let n_max = a.n_max.unwrap_or(2 * a.i_max + 1);
    let hi = a.weight_max.clone().unwrap_or_else(|| c.source_window().to_vec());
    let table = cyclic_homology(&c, &a.algebra, a.i_max, n_max, &weights_up_to(&hi), strict)?;

    let mut text = format!("HC_n^(i) of {}   (columns n = 0..{n_max})\n", a.algebra);
    for i in 0..=a.i_max {
        for w in weights_up_to(&hi) {
            let row: Vec<String> = (0..=n_max).map(|n| table.dim(n, i, &w).to_string()).collect();
            let _ = writeln!(text, "i={i} w={w:?}  {}", row.join(" "));
        }
    }
    Ok(Outcome {
        command: "hc",
        report: json!(table),
        table: text,
        passed: true,
    })
}

pub fn ce(a: &CeArgs, strict: bool) -> Result<Outcome> {
    let alg = parse_algebra_spec(&a.algebra)?;
    check_weight(&alg, &a.weight)?;
    let spec = CeComplexSpec::new(parse_lie(&a.lie)?, alg, a.mode.into());
    let cx = CeComplex::new(spec)?;
    let slices = build_complex(&cx, a.k_min..=a.k_max, &a.weight, strict)?;
    let mut text = format!(
        "{} ⊗ {}  weight {:?}\n  k  chains  homology\n",
        a.lie, a.algebra, a.weight
    );
    for s in &slices {
        let mark = if s.trusted { "" } else { "  (untrusted)" };
        let _ = writeln!(text, "{:>3} {:>7} {:>9}{mark}", s.k, s.chain_dim, s.homology_dim);
    }
    let report = json!({
        "lie": a.lie,
        "algebra": a.algebra,
        "mode": format!("{:?}", cx.spec.mode).to_lowercase(),
        "weight": a.weight,
        "slices": slices,
    });
    Ok(Outcome {
        command: "ce",
        report,
        table: text,
        passed: true,
    })
}

#[derive(Serialize)]
struct CertificateReport {
    found: bool,
    chain_degree: Option<i64>,
    chain_terms: Option<usize>,
}

pub fn cocycle(a: &CocycleArgs, square: bool) -> Result<Outcome> {
    let lie = parse_lie(&a.lie)?;
    let alg = parse_algebra_spec(&a.algebra)?;
    check_weight(&alg, &a.weight)?;
    let f = integral_cocycle(&lie, a.i, a.n, a.functional.into())?;
    let sq = cup_product(&f, &f);
    let g: &dyn Cochain = if square { &sq } else { &f };

    let abs = CeComplex::new(CeComplexSpec::new(lie.clone(), alg.clone(), Mode::Absolute))?;
    let closed = is_closed(g, &abs, &a.weight);
    let coboundary = match CeComplex::new(CeComplexSpec::new(lie.clone(), alg, Mode::Relative)) {
        Ok(rel) => Some(is_coboundary(g, &rel, &a.weight)?.is_in_image()),
        Err(Error::RelativeUnavailable(_)) => None,
        Err(e) => return Err(e),
    };
    let certificate = match a.certificate.as_deref() {
        Some([s, t]) => {
            let within =
                |d: i64| -> Vec<bool> { abs.gens.iter().map(|g| g.weight.iter().all(|x| x.abs() <= d)).collect() };
            let torus = vec![0; lie.torus.first().map_or(0, Vec::len)];
            let found = nonexact_certificate(g, &abs, &a.weight, Some(&torus), &within(*s), &within(*t))?;
            Some(CertificateReport {
                found: found.is_some(),
                chain_degree: found.as_ref().map(|(slice, _)| slice.k),
                chain_terms: found.as_ref().map(|(_, z)| z.len()),
            })
        }
        Some(_) => return Err(Error::InvalidArgument("--certificate takes SOURCE,TARGET".into())),
        None => None,
    };

    let name = if square { "cup" } else { "cocycle" };
    let show = |b: Option<bool>| b.map_or("n/a".to_string(), |x| x.to_string());
    let mut text = format!(
        "{}Tr(M^{}) cocycle, n = {}, {:?} on {} ⊗ {}, weight {:?}\n",
        if square { "square of the " } else { "" },
        a.i + 1,
        a.n,
        a.functional,
        a.lie,
        a.algebra,
        a.weight
    );
    let _ = writeln!(text, "degree      {}", g.degree());
    let _ = writeln!(text, "closed      {closed}");
    let _ = writeln!(text, "coboundary  {}", show(coboundary));
    if let Some(c) = &certificate {
        let _ = writeln!(text, "detected by an exact cycle  {}", c.found);
    }
    let report = json!({
        "lie": a.lie,
        "algebra": a.algebra,
        "i": a.i,
        "n": a.n,
        "functional": crate::lie::FormFunctional::from(a.functional),
        "square": square,
        "degree": g.degree(),
        "weight": a.weight,
        "closed": closed,
        "coboundary": coboundary,
        "certificate": certificate,
    });
    Ok(Outcome {
        command: name,
        report,
        table: text,
        passed: closed,
    })
}

pub fn character(a: &CharArgs) -> Result<Outcome> {
    let (n_q, n_t) = (a.n_q, a.n_t);
    let product = product_formula(n_q, n_t)?;
    let mut checks = serde_json::Map::new();
    let mut text = format!("1/(1-t) (qt²)_∞/(qt)_∞ to q^{n_q} t^{n_t}\n");
    let mut passed = true;
    if a.check == CharCheck::All {
        let (kac, n_kac) = stable_kac_series(n_q, n_t, CUTOFF_LIMIT)?;
        let (bil, n_bil) = first_stable(CUTOFF_LIMIT, |n| bilateral_series(n_q, n_t, n))?;
        let families = [
            GeneratorFamily::power_series((1, 1), 0, n_q),
            GeneratorFamily::power_series((2, 1), 1, n_q),
        ];
        let e1 = e1_character(&families, n_q, n_t)?;
        for (name, s, cutoff) in [
            ("weyl_sum", &kac, Some(n_kac)),
            ("bilateral_sum", &bil, Some(n_bil)),
            ("free_generators", &e1, None),
        ] {
            let eq = s.agrees_with(&product, n_q, n_t);
            passed &= eq;
            checks.insert(name.into(), json!({ "equal": eq, "cutoff": cutoff }));
            let _ = writeln!(text, "{name:<16} {}", if eq { "equal" } else { "DIFFERENT" });
        }
    }
    for t in 0..=n_t {
        let row: Vec<String> = (0..=n_q).map(|q| product.coeff(q, t).to_string()).collect();
        let _ = writeln!(text, "t^{t}: {}", row.join(" "));
    }
    let report = json!({ "n_q": n_q, "n_t": n_t, "series": series_terms(&product)?, "checks": checks });
    Ok(Outcome {
        command: "char",
        report,
        table: text,
        passed,
    })
}

pub fn ramanujan(a: &RamanujanArgs) -> Result<Outcome> {
    let n_t = a.n_t.unwrap_or(a.n_q);
    let cases: Vec<(&str, _)> = match a.case {
        RamanujanCase::Binomial => vec![("binomial", binomial_substitution())],
        RamanujanCase::Bilateral => vec![("bilateral", bilateral_substitution())],
        RamanujanCase::All => vec![
            ("binomial", binomial_substitution()),
            ("bilateral", bilateral_substitution()),
        ],
    };
    let mut reports: Vec<(String, RamanujanReport)> = Vec::new();
    for (name, (x, y, z)) in cases {
        let r = match a.n_max {
            Some(n) => ramanujan_check(&x, &y, &z, a.n_q, n_t, n)?,
            None => first_stable(CUTOFF_LIMIT, |n| ramanujan_check(&x, &y, &z, a.n_q, n_t, n))?.0,
        };
        reports.push((name.to_string(), r));
    }
    let passed = reports.iter().all(|(_, r)| r.passed);
    let mut text = String::new();
    for (name, r) in &reports {
        let _ = writeln!(
            text,
            "{name:<10} a = {}, b = {}, z = {}, cutoff {}: {}",
            r.a,
            r.b,
            r.z,
            r.n_max,
            if r.passed { "both sides agree" } else { "MISMATCH" }
        );
        if let Some((q, t, c)) = r.difference.first() {
            let _ = writeln!(text, "  first difference at q^{q} t^{t}: {c}");
        }
    }
    let report = json!(reports
        .iter()
        .map(|(n, r)| json!({ "case": n, "result": r }))
        .collect::<Vec<_>>());
    Ok(Outcome {
        command: "ramanujan",
        report,
        table: text,
        passed,
    })
}

pub fn crosscheck(a: &CrosscheckArgs) -> Result<Outcome> {
    let r = euler_crosscheck(a.w_max, a.p_max)?;
    let mut text = String::from("  p  w  euler  series  homology (q, dim)\n");
    for c in &r.cells {
        let mark = if c.matches { "" } else { "  MISMATCH" };
        let _ = writeln!(
            text,
            "{:>3}{:>3}{:>7}{:>8}  {:?}{mark}",
            c.p, c.w, c.euler, c.series, c.homology
        );
    }
    Ok(Outcome {
        command: "crosscheck",
        report: json!(r),
        table: text,
        passed: r.passed,
    })
}
