use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use straighten_core::asl::{
    check_condition_ii, search_compatible_asls, straightening_relations, validate_certificate, CertificateDocument,
    RelationDifference,
};
use straighten_core::enumerate::{corpus_verify, CorpusOptions};
use straighten_core::{
    chain_polytope_vertices, check_unique, order_polytope_vertices, Error, IdealLattice, Poset, PosetFile,
    PosetIdeal, RealizationKind, Verdict,
};

use crate::{Cli, Command, OutputFlags, PolytopeArg, Status};

fn load_poset(path: &Path) -> Result<Poset> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = PosetFile::from_json(&text).with_context(|| format!("parsing {}", path.display()))?;
    file.build().with_context(|| format!("invalid poset in {}", path.display()))
}

fn load_lattice(path: &Path) -> Result<IdealLattice> {
    let poset = load_poset(path)?;
    IdealLattice::new(&poset).with_context(|| format!("ideal lattice of {}", path.display()))
}

fn emit(flags: OutputFlags, value: Value, text: impl FnOnce() -> String) -> Result<()> {
    if flags.json {
        let mut value = value;
        if !flags.no_timestamp {
            let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
            value["generated_at"] = json!(secs);
        }
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        print!("{}", text());
    }
    Ok(())
}

fn names(lattice: &IdealLattice, a: PosetIdeal) -> Vec<String> {
    lattice.poset().subset_labels(a.members())
}

fn difference_json(lattice: &IdealLattice, d: &RelationDifference) -> Value {
    let pair = |(a, b): (PosetIdeal, PosetIdeal)| json!([names(lattice, a), names(lattice, b)]);
    json!({ "pair": pair(d.pair), "left": pair(d.left), "right": pair(d.right) })
}

fn difference_text(lattice: &IdealLattice, d: &RelationDifference) -> String {
    let n = |a| lattice.ideal_name(a);
    format!(
        "{} * {}: {} * {} vs {} * {}",
        n(d.pair.0),
        n(d.pair.1),
        n(d.left.0),
        n(d.left.1),
        n(d.right.0),
        n(d.right.1)
    )
}

pub fn run(cli: &Cli) -> Result<Status> {
    let flags = cli.output;
    match &cli.command {
        Command::Analyze { poset } => analyze(flags, poset),
        Command::Lattice { poset, dot } => lattice(flags, poset, *dot),
        Command::Vertices { poset, polytope } => vertices(flags, poset, *polytope),
        Command::Relations { poset, kind } => relations(flags, poset, (*kind).into()),
        Command::Compare { poset } => compare(flags, poset),
        Command::Unique { poset, certificate } => unique(flags, poset, certificate.as_deref()),
        Command::ValidateCert { certificate, poset } => validate(flags, certificate, poset),
        Command::Search { poset, max_degree, budget } => search(flags, poset, *max_degree, *budget),
        Command::Corpus { max_n, parallel } => corpus(flags, *max_n, *parallel),
        Command::Hasse { poset } => {
            print!("{}", load_poset(poset)?.to_dot());
            Ok(Status::Ok)
        }
    }
}

fn analyze(flags: OutputFlags, path: &Path) -> Result<Status> {
    let l = load_lattice(path)?;
    let p = l.poset();
    let components: Vec<Vec<String>> = p.connected_components().into_iter().map(|c| p.subset_labels(c)).collect();
    let sum_of_chains = p.is_direct_sum_of_chains();
    let condition_ii = check_condition_ii(&l).holds;
    let value = json!({
        "n": p.len(),
        "ideals": l.len(),
        "covers": p.covers().len(),
        "components": components,
        "maximal_chains": p.maximal_chains().len(),
        "incomparable_pairs": l.incomparable_pairs().len(),
        "sum_of_chains": sum_of_chains,
        "condition_ii": condition_ii,
    });
    emit(flags, value, || {
        format!(
            "n={}\n|I(P)|={}\ncovers={}\ncomponents={}\nmaximal-chains={}\nincomparable-pairs={}\nsum-of-chains={}\ncondition-ii={}\n",
            p.len(),
            l.len(),
            p.covers().len(),
            components.len(),
            p.maximal_chains().len(),
            l.incomparable_pairs().len(),
            sum_of_chains,
            condition_ii
        )
    })?;
    Ok(Status::Ok)
}

fn lattice(flags: OutputFlags, path: &Path, dot: bool) -> Result<Status> {
    let l = load_lattice(path)?;
    if dot {
        print!("{}", l.to_dot());
        return Ok(Status::Ok);
    }
    let ideals = l.labelled_ideals();
    let value = json!({ "count": l.len(), "ideals": ideals });
    emit(flags, value, || {
        let mut s = String::new();
        for &a in l.ideals() {
            s.push_str(&format!("{}\t{}\n", a.rank(), l.ideal_name(a)));
        }
        s
    })?;
    Ok(Status::Ok)
}

fn vertices(flags: OutputFlags, path: &Path, polytope: PolytopeArg) -> Result<Status> {
    let l = load_lattice(path)?;
    let (name, vs) = match polytope {
        PolytopeArg::Order => ("order", order_polytope_vertices(&l)),
        PolytopeArg::Chain => ("chain", chain_polytope_vertices(&l)),
    };
    let value = json!({
        "polytope": name,
        "coordinates": l.poset().labels(),
        "vertices": vs.iter().map(|v| v.to_strings()).collect::<Vec<_>>(),
    });
    emit(flags, value, || vs.iter().map(|v| format!("{v}\n")).collect())?;
    Ok(Status::Ok)
}

fn relations(flags: OutputFlags, path: &Path, kind: RealizationKind) -> Result<Status> {
    let l = load_lattice(path)?;
    let pm = straightening_relations(&l, kind);
    let value = json!({ "kind": kind.name(), "relations": pm.to_table(&l).entries });
    emit(flags, value, || {
        pm.relations()
            .map(|r| {
                format!(
                    "{} * {} = {} * {}\n",
                    l.ideal_name(r.pair.0),
                    l.ideal_name(r.pair.1),
                    l.ideal_name(r.rhs.0),
                    l.ideal_name(r.rhs.1)
                )
            })
            .collect()
    })?;
    Ok(Status::Ok)
}

fn compare(flags: OutputFlags, path: &Path) -> Result<Status> {
    let l = load_lattice(path)?;
    let c = check_condition_ii(&l);
    let value = json!({
        "holds": c.holds,
        "differences": c.witnesses.iter().map(|(x, y, d)| {
            json!({ "kinds": [x.name(), y.name()], "difference": difference_json(&l, d) })
        }).collect::<Vec<_>>(),
    });
    emit(flags, value, || {
        let mut s = format!("condition-ii={}\n", c.holds);
        for (x, y, d) in &c.witnesses {
            s.push_str(&format!("{x} vs {y}: {}\n", difference_text(&l, d)));
        }
        s
    })?;
    Ok(Status::Ok)
}

fn unique(flags: OutputFlags, path: &Path, certificate: Option<&Path>) -> Result<Status> {
    let l = load_lattice(path)?;
    match check_unique(&l)? {
        Verdict::Unique(cert) => {
            let doc = cert.to_document(&l);
            if let Some(out) = certificate {
                fs::write(out, serde_json::to_string_pretty(&doc)? + "\n")
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            let value = json!({ "verdict": "UNIQUE", "steps": doc.steps.len() });
            emit(flags, value, || format!("UNIQUE\nsteps={}\n", doc.steps.len()))?;
        }
        Verdict::NotUnique(w) => {
            if let Some(out) = certificate {
                eprintln!("no certificate written to {}: the ASL is not unique", out.display());
            }
            let (x, y) = w.kinds;
            let value = json!({
                "verdict": "NOT_UNIQUE",
                "kinds": [x.name(), y.name()],
                "difference": difference_json(&l, &w.difference),
            });
            emit(flags, value, || format!("NOT_UNIQUE\n{x} vs {y}: {}\n", difference_text(&l, &w.difference)))?;
        }
    }
    Ok(Status::Ok)
}

fn validate(flags: OutputFlags, cert_path: &Path, poset_path: &Path) -> Result<Status> {
    let text = fs::read_to_string(cert_path).with_context(|| format!("reading {}", cert_path.display()))?;
    let doc = CertificateDocument::from_json(&text).with_context(|| format!("parsing {}", cert_path.display()))?;
    let poset = load_poset(poset_path)?;
    match validate_certificate(&doc, &poset) {
        Ok(summary) => {
            let value = json!({ "valid": true, "steps": summary.steps, "refutations": summary.refutations });
            emit(flags, value, || format!("VALID\nsteps={}\nrefutations={}\n", summary.steps, summary.refutations))?;
            Ok(Status::Ok)
        }
        Err(Error::InvalidCertificate(reason)) => {
            let value = json!({ "valid": false, "reason": reason });
            emit(flags, value, || format!("INVALID\n{reason}\n"))?;
            Ok(Status::VerificationFailed)
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct SearchOutput {
    #[serde(flatten)]
    summary: straighten_core::asl::SearchSummary,
    pair_maps: Vec<straighten_core::asl::RelationTable>,
    canonical: Vec<Vec<&'static str>>,
}

fn search(flags: OutputFlags, path: &Path, max_degree: usize, budget: u128) -> Result<Status> {
    let l = load_lattice(path)?;
    let report = search_compatible_asls(&l, max_degree, budget)?;
    let canonical_maps: Vec<_> = RealizationKind::ALL.map(|k| (k, straightening_relations(&l, k))).into();
    // which canonical systems each found system coincides with
    let canonical: Vec<Vec<&'static str>> = report
        .pair_maps
        .iter()
        .map(|pm| canonical_maps.iter().filter(|(_, c)| c == pm).map(|(k, _)| k.name()).collect())
        .collect();
    let out = SearchOutput {
        summary: report.summary(),
        pair_maps: report.pair_maps.iter().map(|pm| pm.to_table(&l)).collect(),
        canonical,
    };
    let value = serde_json::to_value(&out)?;
    emit(flags, value, || {
        let mut s = format!(
            "found={}\ncandidates={}\nexplored={}\nexhausted={}\nmax-degree={}\n",
            out.summary.found, out.summary.candidates, out.summary.explored, out.summary.exhausted, max_degree
        );
        for (i, kinds) in out.canonical.iter().enumerate() {
            let tag = if kinds.is_empty() { "other".to_string() } else { kinds.join(",") };
            s.push_str(&format!("system {i}: {tag}\n"));
        }
        s
    })?;
    Ok(Status::Ok)
}

fn corpus(flags: OutputFlags, max_n: usize, parallel: bool) -> Result<Status> {
    let mut report = corpus_verify(&CorpusOptions { max_n, parallel, ..CorpusOptions::default() })?;
    if flags.no_timestamp {
        report.wall_clock_ms = None;
    }
    let value = serde_json::to_value(&report)?;
    emit(flags, value, || {
        let mut s = String::from("n\tposets\tsums-of-chains\tcondition-ii\tcertificates\n");
        for t in &report.tallies {
            s.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                t.n, t.posets, t.sums_of_chains, t.condition_ii_holds, t.certificates_validated
            ));
        }
        s.push_str(&format!(
            "total: {} posets, {} sums of chains, {} counterexamples\n",
            report.total_posets,
            report.total_sums_of_chains,
            report.counterexamples.len()
        ));
        for c in &report.counterexamples {
            s.push_str(&format!("counterexample n={} covers={:?}: {}\n", c.n, c.poset.covers, c.detail));
        }
        if let Some(ms) = report.wall_clock_ms {
            s.push_str(&format!("wall-clock: {ms} ms\n"));
        }
        s
    })?;
    Ok(if report.passed() { Status::Ok } else { Status::VerificationFailed })
}
