//! Command-line front end: argument definitions, dispatch and report
//! emission. The binary only parses arguments and prints the [`Report`].

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::acceptance;
use crate::arith::linalg::Mat;
use crate::arith::QuadElem;
use crate::brauer::{
    genus_enumerate_global, hilbert_symbol, ramification_set, reduce_to_unit_rep, residue_cyclic, BrPlace,
    GlobalBrauerClass, PlaceSet,
};
use crate::class_sets::adele::{class_set_gln, decompose_adele, AdelePoint};
use crate::class_sets::cech::{cech_to_double_coset, cech_verify, check_well_defined, diagram_check, CechCocycle, CechCover};
use crate::descent::{check_galois_ring_conditions, descent_condition_t, fmt_mat, trivialize_cocycle, QuadGaloisRing};
use crate::divisor::{pic_group, places_above_set, torus_h1, torus_h1_brute, unit_group};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::milnor::{reduce_to_units, SymbolFamily};
use crate::parse::{
    parse_element, parse_element_list, parse_field, parse_in, parse_matrix, parse_place, parse_place_list,
    parse_prime_list, parse_quad_d, parse_ring, parse_square_matrix, parse_z_localization,
};
use crate::places::{Place, QuadExt};

pub const SCHEMA: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "genuslab", version, about = "Brauer classes, Milnor symbols, class sets and quadratic descent")]
pub struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Quaternion and cyclic algebras over Q and k(t).
    #[command(subcommand)]
    Brauer(BrauerCmd),
    /// Picard group of a ring of S-integers.
    Pic(PicArgs),
    /// S-unit group generators.
    Units(PicArgs),
    /// Reduction of symbol families to units.
    #[command(subcommand)]
    Milnor(MilnorCmd),
    /// Class sets of GL_n and adele decomposition.
    #[command(subcommand)]
    Classset(ClassSetCmd),
    /// Cech cocycles on principal covers.
    #[command(subcommand)]
    Cech(CechCmd),
    /// Quadratic Galois descent.
    #[command(subcommand)]
    Descent(DescentCmd),
    /// H^1 of the norm-one torus of Q(sqrt d) over Z[1/S].
    Torus(TorusArgs),
    /// Run the acceptance suite.
    Selftest(SelftestArgs),
}

#[derive(Subcommand, Debug)]
pub enum BrauerCmd {
    /// Ramification set of the quaternion algebra (a, b).
    Ramify {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Residue of the cyclic algebra (L, sigma, c) at a place.
    Residue {
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        place: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Replace c by a unit on V' = all finite places except --exclude.
    Reduce {
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value = "")]
        exclude: String,
    },
    /// Genus of a global class over Q given by local invariants.
    Genus {
        #[arg(long)]
        n: u64,
        /// `place=invariant`, e.g. `real=1/2`, `3=1/2`; repeatable.
        #[arg(long = "inv", required = true)]
        inv: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct PicArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub field: String,
    /// Places to invert, comma separated.
    #[arg(long = "S", default_value = "")]
    pub s: String,
}

#[derive(Subcommand, Debug)]
pub enum MilnorCmd {
    /// Rewrite sum (a, b_i, c_i) with every c_i a unit on V'.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// One per c, or a single b shared by all.
        #[arg(long, allow_hyphen_values = true, required = true)]
        b: Vec<String>,
        #[arg(long, allow_hyphen_values = true, required = true)]
        c: Vec<String>,
        #[arg(long, default_value = "Q(t)")]
        field: String,
        #[arg(long, default_value = "")]
        exclude: String,
        /// Put the infinite place of k(t) in V'.
        #[arg(long)]
        include_infinite: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum ClassSetCmd {
    /// Size, invariants and representatives of Cl(GL_n).
    Gln {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
    },
    /// Split an adele g = k h.
    Decompose {
        #[arg(long)]
        ring: String,
        #[arg(long)]
        n: usize,
        /// `place=matrix`, repeatable.
        #[arg(long = "at", required = true)]
        at: Vec<String>,
    },
}

#[derive(Args, Debug)]
pub struct CocycleArgs {
    #[arg(long, default_value = "Z")]
    pub ring: String,
    /// Cover elements a_1, ..., a_k.
    #[arg(long)]
    pub cover: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub g12: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g13: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub g23: Option<String>,
    /// `i,j=matrix`, repeatable.
    #[arg(long = "g")]
    pub g: Vec<String>,
    /// JSON fixture `{"ring": .., "cover": [..], "g": {"(1,2)": [[..]]}}`.
    #[arg(long)]
    pub fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum CechCmd {
    /// Image in the double coset space, with the diagram check.
    Push(CocycleArgs),
    /// Check the cocycle relation.
    Verify(CocycleArgs),
}

#[derive(Subcommand, Debug)]
pub enum DescentCmd {
    /// Conditions (a), (b) for R = Z[1/S] in R' = O(d)[1/S].
    Check {
        #[arg(long = "R")]
        r: String,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    /// Find c with c^-1 xi sigma(c) = 1.
    Trivialize {
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        #[arg(long = "S", default_value = "")]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        xi: String,
    },
    /// Condition (T) for SL_1 of the quaternion algebra (a, b).
    ConditionT {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long = "L", allow_hyphen_values = true)]
        l: String,
        #[arg(long = "S", default_value = "")]
        s: String,
    },
}

#[derive(Args, Debug)]
pub struct TorusArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub d: String,
    #[arg(long = "S", default_value = "")]
    pub s: String,
    /// Also count by brute force over exponents in [-R, R].
    #[arg(long)]
    pub brute: Option<i64>,
}

#[derive(Args, Debug)]
pub struct SelftestArgs {
    /// Run only these criteria (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Obstruction,
    Error,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Obstruction => "obstruction",
            Status::Error => "error",
        }
    }
}

/// Result of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub verb: String,
    pub inputs: Value,
    pub status: Status,
    pub result: Value,
    pub certificates: Vec<Value>,
    pub assumptions: Value,
    pub human: String,
    pub seconds: Option<f64>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Obstruction => 2,
            Status::Error => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "schema": SCHEMA,
            "verb": self.verb,
            "inputs": self.inputs,
            "status": self.status.as_str(),
            "result": self.result,
            "certificates": self.certificates,
            "assumptions": self.assumptions,
        });
        if let Some(s) = self.seconds {
            v["timing_s"] = json!(s);
        }
        v
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            return serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        }
        let mut out = self.human.clone();
        if let Some(s) = self.seconds {
            out.push_str(&format!("\n({s:.3} s)"));
        }
        out
    }
}

/// Successful payload of a verb.
struct Outcome {
    result: Value,
    certificates: Vec<Value>,
    assumptions: Value,
    human: String,
    /// Mathematical "no" that is still a clean answer.
    status: Status,
}

impl Outcome {
    fn new(result: Value, human: String) -> Outcome {
        Outcome { result, certificates: vec![], assumptions: json!({}), human, status: Status::Ok }
    }
}

fn s<T: Display>(x: &T) -> String {
    x.to_string()
}

fn strs<T: Display>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn mat_json(m: &Mat<Elem>) -> Value {
    json!(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn qmat_json(m: &Mat<QuadElem>) -> Value {
    json!(m.iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn mat_text(m: &Mat<Elem>) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", strs(r).join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

fn verb_name(c: &Command) -> String {
    match c {
        Command::Brauer(b) => format!(
            "brauer {}",
            match b {
                BrauerCmd::Ramify { .. } => "ramify",
                BrauerCmd::Residue { .. } => "residue",
                BrauerCmd::Reduce { .. } => "reduce",
                BrauerCmd::Genus { .. } => "genus",
            }
        ),
        Command::Pic(_) => "pic".into(),
        Command::Units(_) => "units".into(),
        Command::Milnor(_) => "milnor reduce".into(),
        Command::Classset(ClassSetCmd::Gln { .. }) => "classset gln".into(),
        Command::Classset(ClassSetCmd::Decompose { .. }) => "classset decompose".into(),
        Command::Cech(CechCmd::Push(_)) => "cech push".into(),
        Command::Cech(CechCmd::Verify(_)) => "cech verify".into(),
        Command::Descent(DescentCmd::Check { .. }) => "descent check".into(),
        Command::Descent(DescentCmd::Trivialize { .. }) => "descent trivialize".into(),
        Command::Descent(DescentCmd::ConditionT { .. }) => "descent condition-t".into(),
        Command::Torus(_) => "torus".into(),
        Command::Selftest(_) => "selftest".into(),
    }
}

fn inputs(c: &Command) -> Value {
    match c {
        Command::Brauer(BrauerCmd::Ramify { a, b, field }) => json!({"a": a, "b": b, "field": field}),
        Command::Brauer(BrauerCmd::Residue { l, c, place, field }) => json!({"L": l, "c": c, "place": place, "field": field}),
        Command::Brauer(BrauerCmd::Reduce { l, c, exclude }) => json!({"L": l, "c": c, "exclude": exclude}),
        Command::Brauer(BrauerCmd::Genus { n, inv }) => json!({"n": n, "inv": inv}),
        Command::Pic(p) | Command::Units(p) => json!({"field": p.field, "S": p.s}),
        Command::Milnor(MilnorCmd::Reduce { a, b, c, field, exclude, include_infinite }) => {
            json!({"a": a, "b": b, "c": c, "field": field, "exclude": exclude, "include_infinite": include_infinite})
        }
        Command::Classset(ClassSetCmd::Gln { ring, n }) => json!({"ring": ring, "n": n}),
        Command::Classset(ClassSetCmd::Decompose { ring, n, at }) => json!({"ring": ring, "n": n, "at": at}),
        Command::Cech(CechCmd::Push(a)) | Command::Cech(CechCmd::Verify(a)) if a.fixture.is_some() => {
            let path = a.fixture.as_deref().unwrap_or_default();
            let contents = std::fs::read_to_string(path).ok().and_then(|t| serde_json::from_str::<Value>(&t).ok());
            json!({"fixture": path, "contents": contents})
        }
        Command::Cech(CechCmd::Push(a)) | Command::Cech(CechCmd::Verify(a)) => json!({
            "ring": a.ring, "cover": a.cover, "n": a.n, "g12": a.g12, "g13": a.g13, "g23": a.g23, "g": a.g,
        }),
        Command::Descent(DescentCmd::Check { r, d }) => json!({"R": r, "d": d}),
        Command::Descent(DescentCmd::Trivialize { d, s, xi }) => json!({"d": d, "S": s, "xi": xi}),
        Command::Descent(DescentCmd::ConditionT { a, b, l, s }) => json!({"a": a, "b": b, "L": l, "S": s}),
        Command::Torus(t) => json!({"d": t.d, "S": t.s, "brute": t.brute}),
        Command::Selftest(t) => json!({"only": t.only}),
    }
}

/// Dispatch a parsed command. Obstructions become exit code 2, every other
/// library error exit code 1.
pub fn run_report(cli: &Cli) -> Report {
    let start = Instant::now();
    let out = dispatch(&cli.command);
    let seconds = cli.timing.then(|| start.elapsed().as_secs_f64());
    let verb = verb_name(&cli.command);
    let inputs = inputs(&cli.command);
    match out {
        Ok(o) => Report {
            verb,
            inputs,
            status: o.status,
            result: o.result,
            certificates: o.certificates,
            assumptions: o.assumptions,
            human: o.human,
            seconds,
        },
        Err(e) => {
            let status = if e.is_obstruction() { Status::Obstruction } else { Status::Error };
            let label = if status == Status::Obstruction { "obstruction" } else { "error" };
            Report {
                verb,
                inputs,
                status,
                result: json!({"kind": e.kind(), "message": e.to_string()}),
                certificates: vec![],
                assumptions: json!({}),
                human: format!("{label} ({}): {e}", e.kind()),
                seconds,
            }
        }
    }
}

fn dispatch(c: &Command) -> Result<Outcome> {
    match c {
        Command::Brauer(b) => brauer(b),
        Command::Pic(p) => pic(p),
        Command::Units(p) => units(p),
        Command::Milnor(MilnorCmd::Reduce { a, b, c, field, exclude, include_infinite }) => {
            milnor_reduce(a, b, c, field, exclude, *include_infinite)
        }
        Command::Classset(cs) => classset(cs),
        Command::Cech(CechCmd::Push(a)) => cech_push(a),
        Command::Cech(CechCmd::Verify(a)) => cech_verify_cmd(a),
        Command::Descent(d) => descent(d),
        Command::Torus(t) => torus(t),
        Command::Selftest(t) => selftest(t),
    }
}

fn parse_ext(text: &str) -> Result<QuadExt> {
    if let Ok(d) = parse_quad_d(text) {
        return Ok(QuadExt::Number(d));
    }
    // k(t)(√g) given by the polynomial g
    match parse_element(text, &Field::RatFn(crate::arith::Base::Q))? {
        Elem::F(r) if r.den().is_one() && !r.num().is_constant() => Ok(QuadExt::Function(r.num().clone())),
        x => Err(Error::ParseError { pos: 0, msg: format!("{x} does not define a quadratic extension") }),
    }
}

fn ext_text(l: &QuadExt) -> String {
    match l {
        QuadExt::Number(d) => format!("Q(sqrt({d}))"),
        QuadExt::Function(g) => format!("k(t)(sqrt({g}))"),
    }
}

fn brauer(b: &BrauerCmd) -> Result<Outcome> {
    match b {
        BrauerCmd::Ramify { a, b, field } => {
            let f = parse_field(field)?;
            let (a, b) = (parse_element(a, &f)?, parse_element(b, &f)?);
            let ram = ramification_set(&a, &b)?;
            // local symbols at the ramified places double as certificates
            let mut certs = Vec::new();
            for v in &ram {
                if matches!(f, Field::Q) {
                    certs.push(json!({"place": s(v), "hilbert_symbol": hilbert_symbol(&a, &b, v)?}));
                }
            }
            let names = strs(&ram);
            let mut o = Outcome::new(
                json!({"ramified": names, "split": ram.is_empty()}),
                if ram.is_empty() {
                    format!("({a}, {b}) is split")
                } else {
                    format!("({a}, {b}) ramifies at {{{}}}", names.join(", "))
                },
            );
            o.certificates = certs;
            Ok(o)
        }
        BrauerCmd::Residue { l, c, place, field } => {
            let f = parse_field(field)?;
            let l = parse_ext(l)?;
            let c = parse_element(c, &f)?;
            let v = parse_place(place)?;
            let r = residue_cyclic(&l, &c, &v)?;
            Ok(Outcome::new(
                json!({"residue": s(&r), "extension": ext_text(&l), "place": s(&v)}),
                format!("residue of ({}, {c}) at {v} = {r} mod Z", ext_text(&l)),
            ))
        }
        BrauerCmd::Reduce { l, c, exclude } => {
            let l = parse_ext(l)?;
            let c = parse_element(c, &Field::Q)?;
            let vp = PlaceSet::all_but(parse_place_list(exclude)?);
            let rep = reduce_to_unit_rep(&l, &c, &vp)?;
            let pi_w: Vec<Value> = rep
                .pi_w
                .iter()
                .map(|p| json!({"place": s(&p.place), "above": s(&p.above), "pi_w": s(&p.pi_w), "exponent": p.exponent}))
                .collect();
            // d = Π N(π_w)^e and c = u·d, checked again before emitting
            let mut d = Elem::from_int(&Field::Q, 1);
            for p in &rep.pi_w {
                d = d.mul(&Elem::Q(p.pi_w.norm()).pow(p.exponent));
            }
            let verified = d == rep.d && rep.u.mul(&rep.d) == c;
            let mut o = Outcome::new(
                json!({"u": s(&rep.u), "norm_certificate": {"d": s(&rep.d), "pi_w": pi_w.clone()}}),
                format!("c = {c} ~ u = {} (c = u·d, d = {} a norm from {})", rep.u, rep.d, ext_text(&l)),
            );
            o.certificates.push(json!({"kind": "norm", "d": s(&rep.d), "pi_w": pi_w, "verified": verified}));
            if !verified {
                o.status = Status::Error;
            }
            Ok(o)
        }
        BrauerCmd::Genus { n, inv } => {
            let mut entries = Vec::new();
            for item in inv {
                let (p, x) = item.split_once('=').ok_or(Error::ParseError { pos: 0, msg: format!("expected place=value, got {item:?}") })?;
                let place = if p.trim() == "real" { BrPlace::Real } else { BrPlace::Finite(parse_place(p)?) };
                let x = match parse_in(x, &Field::Q)? {
                    Elem::Q(q) => q,
                    _ => unreachable!(),
                };
                entries.push((place, x));
            }
            let dc = GlobalBrauerClass::new(*n, entries);
            let genus = genus_enumerate_global(&dc)?;
            let show = |g: &GlobalBrauerClass| -> BTreeMap<String, String> { g.invariants.iter().map(|(p, x)| (s(p), s(x))).collect() };
            let list: Vec<_> = genus.iter().map(show).collect();
            let text: Vec<String> = list.iter().map(|m| format!("{m:?}")).collect();
            Ok(Outcome::new(
                json!({"size": genus.len(), "genus": list}),
                format!("genus of size {}:\n{}", genus.len(), text.join("\n")),
            ))
        }
    }
}

/// Places of `field` named by the list; over ℚ(√d) a rational prime stands
/// for every prime above it.
fn places_of(field: &Field, list: &str) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    for p in parse_place_list(list)? {
        match (field, p) {
            (Field::Quad(d), Place::RationalPrime(q)) => out.extend(places_above_set(*d, &[q])),
            (_, p) => out.push(p),
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

fn pic(p: &PicArgs) -> Result<Outcome> {
    let f = parse_field(&p.field)?;
    let places = places_of(&f, &p.s)?;
    let g = pic_group(&f, &places)?;
    let inv = strs(&g.invariants);
    Ok(Outcome::new(
        json!({"order": s(&g.order()), "invariants": inv, "witnesses": strs(&g.witnesses)}),
        format!("Pic has order {} (invariants [{}])", g.order(), inv.join(", ")),
    ))
}

fn units(p: &PicArgs) -> Result<Outcome> {
    let f = parse_field(&p.field)?;
    let places = places_of(&f, &p.s)?;
    let u = unit_group(&f, &places)?;
    let free = strs(&u.free);
    Ok(Outcome::new(
        json!({"torsion": s(&u.torsion), "torsion_order": u.torsion_order, "free": free, "constants_are_units": u.constants_are_units}),
        format!("torsion generated by {} (order {}); free part [{}]", u.torsion, u.torsion_order, free.join(", ")),
    ))
}

fn milnor_reduce(a: &str, b: &[String], c: &[String], field: &str, exclude: &str, inf: bool) -> Result<Outcome> {
    let f = parse_field(field)?;
    let a = parse_element(a, &f)?;
    let c: Vec<Elem> = c.iter().map(|x| parse_element(x, &f)).collect::<Result<_>>()?;
    let mut b: Vec<Elem> = b.iter().map(|x| parse_element(x, &f)).collect::<Result<_>>()?;
    if b.len() == 1 && c.len() > 1 {
        b = vec![b[0].clone(); c.len()];
    }
    let vp = PlaceSet { exclude: parse_place_list(exclude)?, include_infinite: inf };
    let fam = SymbolFamily::new(a, b, c, vp)?;
    let red = reduce_to_units(&fam)?;
    let steps: Vec<Value> = red
        .steps
        .iter()
        .map(|st| {
            json!({
                "place": s(&st.place),
                "phase": s(&st.phase),
                "indices": st.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                "pi_v": s(&st.pi_v),
                "certificate": {"x": strs(&st.certificate.x), "value": s(&st.certificate.value), "verified": st.certificate.verify()},
                "searched": st.searched,
            })
        })
        .collect();
    let out = strs(&red.family.c);
    let used = strs(&red.condition_t_used_at);
    let mut o = Outcome::new(
        json!({"c": out, "steps": steps.clone()}),
        format!(
            "{} steps; output c = [{}]{}",
            red.steps.len(),
            out.join(", "),
            if used.is_empty() { String::new() } else { format!("; searched certificates at {{{}}}", used.join(", ")) }
        ),
    );
    o.certificates = steps;
    o.assumptions = json!({"condition_T_used_at": used});
    if red.steps.iter().any(|st| !st.certificate.verify()) {
        o.status = Status::Error;
    }
    Ok(o)
}

fn classset(c: &ClassSetCmd) -> Result<Outcome> {
    match c {
        ClassSetCmd::Gln { ring, n } => {
            let r = parse_ring(ring)?;
            let cs = class_set_gln(&r, *n)?;
            let reps: Vec<Value> = cs
                .representatives
                .iter()
                .map(|a| json!(a.entries.iter().map(|(p, m)| (s(p), mat_json(m))).collect::<BTreeMap<_, _>>()))
                .collect();
            Ok(Outcome::new(
                json!({"ring": s(&r), "n": n, "size": s(&cs.size), "invariants": strs(&cs.invariants), "representatives": reps, "witness_S": strs(&cs.witness_s)}),
                format!(
                    "Cl(GL_{n}) over {r} has {} element(s); inverting {{{}}} makes it trivial",
                    cs.size,
                    strs(&cs.witness_s).join(", ")
                ),
            ))
        }
        ClassSetCmd::Decompose { ring, n, at } => {
            let r = parse_ring(ring)?;
            let mut comps = Vec::new();
            for item in at {
                let at = item.find("=[").ok_or(Error::ParseError { pos: 0, msg: format!("expected place=matrix, got {item:?}") })?;
                let (p, m) = (&item[..at], &item[at + 1..]);
                comps.push((parse_place(p)?, parse_square_matrix(m, &r.field, *n)?));
            }
            let a = AdelePoint::new(r.clone(), *n, comps)?;
            let dec = decompose_adele(&a)?;
            let ks: BTreeMap<String, Value> = dec.k.iter().map(|(p, m)| (s(p), mat_json(m))).collect();
            let verified = dec.verify(&a)?;
            let mut o = Outcome::new(
                json!({"h": mat_json(&dec.h), "k": ks, "k_default": mat_json(&dec.k_default)}),
                format!("g = k·h with h = {}", mat_text(&dec.h)),
            );
            o.certificates.push(json!({"kind": "decomposition", "verified": verified}));
            Ok(o)
        }
    }
}

fn matrix_arg(text: &str, field: &Field, n: Option<usize>) -> Result<Mat<Elem>> {
    if text.trim_start().starts_with('[') {
        match n {
            Some(n) => parse_square_matrix(text, field, n),
            None => parse_matrix(text, field),
        }
    } else {
        if n.is_some_and(|n| n != 1) {
            return Err(Error::ParseError { pos: 0, msg: "a scalar entry needs --n 1".into() });
        }
        Ok(vec![vec![parse_element(text, field)?]])
    }
}

fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    let (i, j) = t.split_once(',').ok_or(Error::ParseError { pos: 0, msg: format!("expected i,j, got {text:?}") })?;
    let p = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::ParseError { pos: 0, msg: format!("bad index {x:?}") });
    Ok((p(i)?, p(j)?))
}

fn json_entry(v: &Value) -> Result<String> {
    match v {
        Value::String(x) => Ok(x.clone()),
        Value::Number(x) => Ok(x.to_string()),
        _ => Err(Error::ParseError { pos: 0, msg: format!("expected a string or number, got {v}") }),
    }
}

/// Build the cocycle from flags or from a JSON fixture.
pub fn cocycle_from_args(a: &CocycleArgs) -> Result<CechCocycle> {
    let (ring_text, cover_items, mut given_text, n_flag): (String, Vec<String>, Vec<((usize, usize), String)>, Option<usize>) =
        if let Some(path) = &a.fixture {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Error::ParseError { pos: e.column(), msg: format!("{path}: {e}") })?;
            let ring = v.get("ring").and_then(|r| r.as_str()).unwrap_or("Z").to_string();
            let cover = v
                .get("cover")
                .and_then(|c| c.as_array())
                .ok_or(Error::ParseError { pos: 0, msg: "fixture needs a \"cover\" array".into() })?
                .iter()
                .map(json_entry)
                .collect::<Result<Vec<_>>>()?;
            let mut g = Vec::new();
            if let Some(obj) = v.get("g").and_then(|g| g.as_object()) {
                for (k, m) in obj {
                    let rows = m.as_array().ok_or(Error::ParseError { pos: 0, msg: format!("g{k} must be a matrix") })?;
                    let mut cells = Vec::new();
                    for r in rows {
                        let r = r.as_array().ok_or(Error::ParseError { pos: 0, msg: format!("g{k} must be a matrix") })?;
                        cells.push(format!("[{}]", r.iter().map(json_entry).collect::<Result<Vec<_>>>()?.join(", ")));
                    }
                    g.push((parse_pair(k)?, format!("[{}]", cells.join(", "))));
                }
            }
            let n = v.get("n").and_then(|n| n.as_u64()).map(|n| n as usize);
            (ring, cover, g, n.or(a.n))
        } else {
            let cover = a.cover.as_ref().ok_or(Error::ParseError { pos: 0, msg: "--cover or --fixture is required".into() })?;
            let mut g = Vec::new();
            for (ij, m) in [((1, 2), &a.g12), ((1, 3), &a.g13), ((2, 3), &a.g23)] {
                if let Some(m) = m {
                    g.push((ij, m.clone()));
                }
            }
            for item in &a.g {
                let (ij, m) = item.split_once('=').ok_or(Error::ParseError { pos: 0, msg: format!("expected i,j=matrix, got {item:?}") })?;
                g.push((parse_pair(ij)?, m.to_string()));
            }
            (a.ring.clone(), vec![cover.clone()], g, a.n)
        };
    let ring = parse_ring(&ring_text)?;
    let mut elems = Vec::new();
    for item in &cover_items {
        elems.extend(parse_element_list(item, &ring.field)?);
    }
    let cover = CechCover::new(ring.clone(), elems)?;
    given_text.sort();
    let mut given = BTreeMap::new();
    for (ij, m) in &given_text {
        given.insert(*ij, matrix_arg(m, &ring.field, n_flag)?);
    }
    let n = n_flag.or_else(|| given.values().next().map(|m| m.len())).unwrap_or(1);
    if given.is_empty() {
        return Ok(CechCocycle::trivial(cover, n));
    }
    CechCocycle::new(cover, n, given)
}

fn verdict_json(c: &CechCocycle) -> Result<(bool, Value)> {
    let v = cech_verify(c)?;
    Ok((v.ok, json!({"ok": v.ok, "failing_triple": v.failing_triple, "failing_pair": v.failing_pair})))
}

fn cech_verify_cmd(a: &CocycleArgs) -> Result<Outcome> {
    let c = cocycle_from_args(a)?;
    let (ok, v) = verdict_json(&c)?;
    let v2 = cech_verify(&c)?;
    let mut o = Outcome::new(
        v,
        if ok {
            "cocycle relation holds".into()
        } else if let Some((i, j)) = v2.failing_pair {
            format!("g{i}{j} is not invertible on the overlap")
        } else {
            let (i, j, k) = v2.failing_triple.expect("failure has a witness");
            format!("g{i}{k} ≠ g{i}{j}·g{j}{k}")
        },
    );
    if !ok {
        o.status = Status::Error;
    }
    Ok(o)
}

fn cech_push(a: &CocycleArgs) -> Result<Outcome> {
    let c = cocycle_from_args(a)?;
    let (ok, v) = verdict_json(&c)?;
    if !ok {
        return Err(Error::CocycleInvalid(format!("cocycle relation fails: {v}")));
    }
    let adele = cech_to_double_coset(&c)?;
    let comps: BTreeMap<String, Value> = adele.entries.iter().map(|(p, m)| (s(p), mat_json(m))).collect();
    let rep = diagram_check(&c)?;
    let well_defined = check_well_defined(&c)?;
    let mut obstructed = false;
    let decomposition = match decompose_adele(&adele) {
        Ok(d) => json!({"h": mat_json(&d.h)}),
        Err(e) if e.is_obstruction() => {
            obstructed = true;
            json!({"kind": e.kind(), "message": e.to_string()})
        }
        Err(e) => return Err(e),
    };
    let mut o = Outcome::new(
        json!({
            "adele": comps,
            "adelic_class": strs(&rep.adelic_class),
            "patched_class": strs(&rep.patched_class),
            "steinitz_ideal": rep.steinitz_ideal,
            "commutes": rep.commutes,
            "well_defined": well_defined,
            "decomposition": decomposition,
        }),
        format!(
            "image adele with {} component(s); Steinitz ideal {} (class [{}]); diagram {}",
            adele.entries.len(),
            rep.steinitz_ideal,
            strs(&rep.adelic_class).join(", "),
            if rep.commutes { "commutes" } else { "does NOT commute" }
        ),
    );
    o.certificates.push(json!({"kind": "diagram", "commutes": rep.commutes, "well_defined": well_defined}));
    if !rep.commutes || !well_defined {
        o.status = Status::Error;
    } else if obstructed {
        o.status = Status::Obstruction;
    }
    Ok(o)
}

fn descent(d: &DescentCmd) -> Result<Outcome> {
    match d {
        DescentCmd::Check { r, d } => {
            let ring = QuadGaloisRing::new(parse_quad_d(d)?, &parse_z_localization(r)?)?;
            let c = check_galois_ring_conditions(&ring)?;
            let mut o = Outcome::new(
                json!({
                    "ring": s(&ring),
                    "free": c.free,
                    "disc": s(&c.disc),
                    "disc_unit": c.disc_unit,
                    "A": qmat_json(&c.a),
                    "det_A": s(&c.det_a),
                    "A_invertible": c.a_invertible,
                    "gram_matches": c.gram_matches,
                    "all_hold": c.all_hold(),
                    "suggested_S": strs(&c.suggested_s),
                }),
                if c.all_hold() {
                    format!("{ring}: conditions (a), (b) hold; disc = {}, det A = {}", c.disc, c.det_a)
                } else {
                    format!("{ring}: disc = {} is not a unit; add {{{}}} to S", c.disc, strs(&c.suggested_s).join(", "))
                },
            );
            o.certificates.push(json!({"kind": "galois_basis", "A": qmat_json(&c.a), "det_A": s(&c.det_a), "gram_matches": c.gram_matches}));
            Ok(o)
        }
        DescentCmd::Trivialize { d, s: sl, xi } => {
            let d = parse_quad_d(d)?;
            let ring = QuadGaloisRing::new(d, &parse_prime_list(sl)?)?;
            let m = parse_matrix(xi, &Field::Quad(d))?;
            let xi: Mat<QuadElem> = m.iter().map(|r| r.iter().map(|x| x.as_quad().expect("parsed in Q(sqrt d)").clone()).collect()).collect();
            let t = trivialize_cocycle(&ring, &xi)?;
            let verified = t.verify(&ring);
            let mut o = Outcome::new(
                json!({"ring": s(&ring), "c": qmat_json(&t.c), "fixed_basis": t.fixed.basis.iter().map(|r| strs(r)).collect::<Vec<_>>()}),
                format!("c = {} satisfies c^-1·xi·sigma(c) = 1", fmt_mat(&t.c)),
            );
            o.certificates.push(json!({"kind": "trivialization", "c": qmat_json(&t.c), "coefficients": strs(&t.fixed.coeffs), "verified": verified}));
            if !verified {
                o.status = Status::Error;
            }
            Ok(o)
        }
        DescentCmd::ConditionT { a, b, l, s: sl } => {
            let ld = parse_quad_d(l)?;
            let rep = descent_condition_t(*a, *b, ld, &parse_prime_list(sl)?)?;
            let stages: Vec<Value> = rep.stages.iter().map(|st| json!({"name": st.name, "ok": st.ok, "detail": st.detail})).collect();
            let lines: Vec<String> = rep.stages.iter().map(|st| format!("  {}: {}", st.name, st.detail)).collect();
            let mut o = Outcome::new(
                json!({"split": rep.split, "verdict": rep.verdict, "stages": stages.clone()}),
                format!("condition (T) for ({a}, {b}) over Z[1/S]: {}\n{}", if rep.verdict { "holds" } else { "fails" }, lines.join("\n")),
            );
            o.certificates = stages;
            if !rep.verdict {
                o.status = Status::Obstruction;
            }
            Ok(o)
        }
    }
}

fn torus(t: &TorusArgs) -> Result<Outcome> {
    let d = parse_quad_d(&t.d)?;
    let sp = parse_prime_list(&t.s)?;
    let h = torus_h1(d, &sp)?;
    let brute = match t.brute {
        Some(r) => Some(torus_h1_brute(d, &sp, r)?),
        None => None,
    };
    let mut o = Outcome::new(
        json!({
            "order": s(&h.order),
            "unit_generators": strs(&h.unit_generators),
            "torsion_order": h.torsion_order,
            "sigma": h.sigma.iter().map(|r| strs(r)).collect::<Vec<_>>(),
            "S_places": strs(&h.s_places),
            "brute_force": brute,
        }),
        format!(
            "|H^1| = {} for Q(sqrt({d})) over Z[1/S], S = {{{}}}{}",
            h.order,
            strs(&sp).join(", "),
            brute.map(|b| format!("; brute force gives {b}")).unwrap_or_default()
        ),
    );
    if let Some(b) = brute {
        if BigInt::from(b) != h.order {
            o.status = Status::Error;
        }
    }
    Ok(o)
}

fn selftest(t: &SelftestArgs) -> Result<Outcome> {
    let ids: Vec<u8> = if t.only.is_empty() { (1..=10).collect() } else { t.only.clone() };
    let results: Vec<_> = ids.iter().map(|&i| acceptance::run_criterion(i)).collect();
    let all = results.iter().all(|r| r.pass);
    let mut o = Outcome::new(
        json!({
            "pass": all,
            "criteria": results.iter().map(|r| json!({"id": r.id, "name": r.name, "pass": r.pass, "detail": r.detail})).collect::<Vec<_>>(),
        }),
        results.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n"),
    );
    if !all {
        o.status = Status::Error;
    }
    Ok(o)
}
