use std::fmt::Write as _;

use anick_core::chains::enumerate_chains;
use anick_core::commutative::{comm_buchberger, comm_normal_form, comm_reduce_basis, CommGB};
use anick_core::hilbert::{chains_for_hilbert, hilbert_from_chains, hilbert_from_normal_words};
use anick_core::noncommutative::{nc_buchberger, nc_reduce_basis, NcGB};
use anick_core::resolution::{
    is_minimal, render_word, tor_dimensions, verify_resolution, GradedMatrix, Resolution, VerificationReport,
    VerifyOptions,
};
use anick_core::series::{render_polynomial, SeriesTrunc};
use anick_core::{AlgebraError, Presentation, Relations};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::{Common, Failure, Format};

fn emit<T: Serialize>(common: &Common, value: &T, text: impl FnOnce() -> String) -> Result<String, Failure> {
    match common.format {
        Format::Json => serde_json::to_string_pretty(value)
            .map(|s| s + "\n")
            .map_err(|e| Failure::internal(e.to_string())),
        Format::Text => Ok(text()),
    }
}

enum Basis {
    Nc(NcGB),
    Comm(CommGB),
}

fn groebner(p: &Presentation, max_degree: u32) -> Result<Basis, Failure> {
    Ok(match &p.relations {
        Relations::Noncommutative(rels) => Basis::Nc(nc_reduce_basis(&nc_buchberger(rels, &p.order, max_degree)?)),
        Relations::Commutative(rels) => Basis::Comm(comm_reduce_basis(&comm_buchberger(rels, &p.order)?)),
    })
}

fn nc_basis(p: &Presentation, max_degree: u32) -> Result<NcGB, Failure> {
    match groebner(p, max_degree)? {
        Basis::Nc(g) => Ok(g),
        Basis::Comm(_) => {
            Err(AlgebraError::Unsupported("this command needs a noncommutative presentation".into()).into())
        }
    }
}

#[derive(Serialize)]
struct GbReport {
    basis: Vec<String>,
    /// `None` for commutative input, where completion is not truncated.
    complete_to_degree: Option<u32>,
}

pub fn gb(p: &Presentation, common: &Common) -> Result<String, Failure> {
    let names = p.names();
    let report = match groebner(p, common.max_degree)? {
        Basis::Nc(g) => GbReport {
            basis: g.basis().iter().map(|f| f.display(&names).to_string()).collect(),
            complete_to_degree: Some(g.complete_to_degree()),
        },
        Basis::Comm(g) => GbReport {
            basis: g.basis.iter().map(|f| f.display(&names).to_string()).collect(),
            complete_to_degree: None,
        },
    };
    emit(common, &report, || {
        let mut s = String::new();
        for f in &report.basis {
            let _ = writeln!(s, "{f}");
        }
        match report.complete_to_degree {
            Some(d) => {
                let _ = writeln!(s, "# complete to degree {d}");
            }
            None => s.push_str("# complete\n"),
        }
        s
    })
}

#[derive(Serialize)]
struct NfReport {
    normal_form: String,
    member: bool,
}

pub fn nf(p: &Presentation, common: &Common, poly: &str) -> Result<String, Failure> {
    let names = p.names();
    let normal_form = match groebner(p, common.max_degree)? {
        Basis::Nc(g) => {
            let f = p.parse_nc_poly(poly)?;
            g.certify(f.degree(&p.order).unwrap_or(0))?;
            g.normal_form(&f).display(&names).to_string()
        }
        Basis::Comm(g) => {
            let f = p.parse_comm_poly(poly)?;
            comm_normal_form(&f, &g.basis, &p.order).display(&names).to_string()
        }
    };
    let report = NfReport {
        member: normal_form == "0",
        normal_form,
    };
    emit(common, &report, || {
        format!(
            "{}\n{}\n",
            report.normal_form,
            if report.member { "member" } else { "non-member" }
        )
    })
}

#[derive(Serialize)]
struct ChainLevel {
    level: usize,
    total: usize,
    by_degree: Vec<u64>,
    chains: Vec<String>,
}

#[derive(Serialize)]
struct ChainsReport {
    max_level: usize,
    max_degree: u32,
    levels: Vec<ChainLevel>,
}

pub fn chains(p: &Presentation, common: &Common) -> Result<String, Failure> {
    let g = nc_basis(p, common.max_degree)?;
    let max_level = common.max_level as usize;
    let cs = enumerate_chains(&g.leading_words(), &p.order, max_level, common.max_degree)?;
    let names = p.names();
    let counts = cs.counts();
    let levels: Vec<ChainLevel> = (0..=max_level)
        .map(|n| ChainLevel {
            level: n,
            total: cs.level(n as i32).len(),
            by_degree: counts[n + 1].clone(),
            chains: cs
                .level(n as i32)
                .iter()
                .map(|c| render_word(&c.word, &names))
                .collect(),
        })
        .collect();
    let report = ChainsReport {
        max_level,
        max_degree: common.max_degree,
        levels,
    };
    emit(common, &report, || {
        let mut s = String::new();
        for l in &report.levels {
            let _ = writeln!(s, "level {} ({} chains): {}", l.level, l.total, l.chains.join(", "));
        }
        s
    })
}

#[derive(Serialize)]
struct Candidate {
    numerator: String,
    denominator: String,
    note: String,
}

#[derive(Serialize)]
struct HilbertReport {
    max_degree: u32,
    normal_words: Vec<Value>,
    /// Absent for commutative input.
    chains: Option<Vec<Value>>,
    agreement: Option<bool>,
    candidate: Option<Candidate>,
}

fn integers(s: &SeriesTrunc) -> Result<Vec<Value>, Failure> {
    let ints = s
        .to_integers()
        .ok_or_else(|| Failure::internal("Hilbert series has a non-integral coefficient"))?;
    Ok(ints.iter().map(int_value).collect())
}

fn int_value(n: &BigInt) -> Value {
    i64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

pub fn hilbert(p: &Presentation, common: &Common) -> Result<String, Failure> {
    let d = common.max_degree;
    let (direct, via_chains) = match groebner(p, d)? {
        Basis::Nc(g) => {
            g.certify(d)?;
            let direct = hilbert_from_normal_words(&g, d)?;
            let cs = chains_for_hilbert(&g.leading_words(), &p.order, d)?;
            let via = hilbert_from_chains(&cs, d)?;
            (direct, Some(via))
        }
        Basis::Comm(g) => (hilbert_from_normal_words(&g, d)?, None),
    };
    let candidate = direct.candidate_rational_form().map(|(num, den)| Candidate {
        numerator: render_polynomial(&num),
        denominator: render_polynomial(&den),
        note: format!("(unverified beyond degree {d})"),
    });
    let report = HilbertReport {
        max_degree: d,
        normal_words: integers(&direct)?,
        agreement: via_chains.as_ref().map(|v| *v == direct),
        chains: via_chains.as_ref().map(integers).transpose()?,
        candidate,
    };
    emit(common, &report, || {
        let list = |v: &[Value]| {
            v.iter()
                .map(|x| x.to_string().trim_matches('"').to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let mut s = format!("normal words: [{}]\n", list(&report.normal_words));
        if let Some(c) = &report.chains {
            let _ = writeln!(s, "chains:       [{}]", list(c));
        }
        if let Some(a) = report.agreement {
            let _ = writeln!(s, "agreement: {a}");
        }
        if let Some(c) = &report.candidate {
            let _ = writeln!(s, "candidate: ({}) / ({}) {}", c.numerator, c.denominator, c.note);
        }
        s
    })
}

fn resolve(p: &Presentation, g: NcGB, max_level: usize, max_degree: u32) -> Result<Resolution, Failure> {
    if !p.is_homogeneous() {
        return Err(AlgebraError::Inhomogeneous.into());
    }
    Ok(Resolution::from_gb(g, p.names(), max_level, max_degree)?)
}

#[derive(Serialize)]
struct AnickReport {
    matrices: Vec<GradedMatrix>,
    verification: VerificationReport,
    passed: bool,
}

pub fn anick(p: &Presentation, common: &Common) -> Result<String, Failure> {
    let g = nc_basis(p, common.max_degree)?;
    let res = resolve(p, g, common.max_level as usize, common.max_degree)?;
    let verification = verify_resolution(&res, &VerifyOptions::default());
    let report = AnickReport {
        matrices: res.matrices(),
        passed: verification.passed(),
        verification,
    };
    if !report.passed {
        return Err(Failure::internal(format!(
            "resolution failed verification: {:?}",
            report.verification
        )));
    }
    let names = p.names();
    emit(common, &report, || {
        let mut s = String::new();
        for n in 0..=res.max_level() {
            let _ = writeln!(s, "d_{n}:");
            for (c, d) in res.chains().level(n as i32).iter().zip(res.differentials(n)) {
                let _ = writeln!(s, "  {} ⊗ 1 -> {}", render_word(&c.word, &names), d.display(&names));
            }
        }
        let v = &report.verification;
        let _ = writeln!(
            s,
            "verified: d∘d = 0, {} exactness blocks, {} splitting records, Euler check in {} degrees",
            v.exactness.len(),
            v.kernel_checked,
            v.euler_degrees.len()
        );
        s
    })
}

#[derive(Serialize)]
struct TorLevel {
    tor_index: usize,
    chain_level: i32,
    by_degree: Vec<u64>,
    total: u64,
}

#[derive(Serialize)]
struct WitnessReport {
    level: usize,
    chain: String,
    target: String,
    coeff: String,
}

#[derive(Serialize)]
struct TorReport {
    max_degree: u32,
    tor: Vec<TorLevel>,
    minimal: bool,
    witness: Option<WitnessReport>,
}

pub fn tor(p: &Presentation, common: &Common) -> Result<String, Failure> {
    let g = nc_basis(p, common.max_degree)?;
    let res = resolve(p, g, common.max_level as usize + 1, common.max_degree)?;
    let table = tor_dimensions(&res);
    let names = p.names();
    let m = is_minimal(&res);
    let report = TorReport {
        max_degree: common.max_degree,
        tor: (-1..=table.top_level)
            .map(|n| {
                let by_degree = table.at_chain_level(n).unwrap_or_default().to_vec();
                TorLevel {
                    tor_index: (n + 1) as usize,
                    chain_level: n,
                    total: by_degree.iter().sum(),
                    by_degree,
                }
            })
            .collect(),
        minimal: m.minimal,
        witness: m.witness.map(|w| WitnessReport {
            level: w.level,
            chain: render_word(&w.chain, &names),
            target: render_word(&w.target, &names),
            coeff: w.coeff.to_string(),
        }),
    };
    emit(common, &report, || {
        let mut s = String::new();
        for t in &report.tor {
            let _ = writeln!(
                s,
                "Tor_{} (chain level {}): total {}",
                t.tor_index, t.chain_level, t.total
            );
        }
        match &report.witness {
            None => s.push_str("minimal: true\n"),
            Some(w) => {
                let _ = writeln!(
                    s,
                    "minimal: false (d_{} ⊗ K sends {} to {}·{})",
                    w.level, w.chain, w.coeff, w.target
                );
            }
        }
        s
    })
}
