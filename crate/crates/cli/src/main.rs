use std::fmt::Display;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ordalg_core::decomp::{
    check_ordered, check_type_i, classify_perfect, decomposition_from_state, nonempty_slices, ClassifyOptions,
    HDecomposition, PerfectReport, Sampling,
};
use ordalg_core::parse::{parse_algebra, parse_descriptor, parse_element, parse_hom, parse_pea_table, parse_subgroup};
use ordalg_core::pea::{
    cyclic_elements_finite, ideals_enumerate, infinitesimals_finite, members, states_finite, AnyPea, AxiomVerdict,
    ElementSet, FinitePea, PeaState, PeaTable,
};
use ordalg_core::represent::{
    build_lex_pea, faithfulness_witness, functor_laws, lattice_parts_check, verify_isomorphism, GroupHom,
    Representation, Shuffle,
};
use ordalg_core::riesz::{
    rdp_decompose, rdp_oracle_search, rdp_table_verify, rip_interpolate, DecompositionTable, OracleResult, RdpInstance,
    RdpLevel, SideCondition, TableVerdict,
};
use ordalg_core::{AlgebraError, GroupDescriptor, GroupElement, ScalarSubgroup};

const GRAMMAR: &str = "\
Input grammar:
  subgroup    Z | Z/n | Q | Q[sqrt d]          Z/n is (1/n)Z, Q[sqrt d] is Z + Z*sqrt(d)
  group       subgroup | Z^k | Aff | lex(A, B) | prod(A, B)
  element     scalar | (x, y) | (c1, ..., ck)   scalars: 3, -1/2, 1 + 2*sqrt(2)
              Aff elements are (scale, shift) with scale > 0
  algebra     a file path, or gamma(group, unit) | chain(n) | boolean(k) | mo2
  hom         rule : A -> B with rule id | scale(k) | permute(i, ...) | project(i, ...) | embed
  shuffle     identity | scale:K | reverse | shear:K | shear:K,reverse

Algebra files:
  pea n=<size> zero=<id> one=<id>
  name <id> <label>
  add <i> <j> <k>          i + j = k; pairs not listed are undefined
  # comment

Every report ends with a `#!` line of key=value pairs. The exit code is 0
when every verdict passes, 1 when one fails, 2 on malformed input.";

#[derive(Parser)]
#[command(name = "ordalg", version, about = "Exact checks for po-groups and pseudo effect algebras")]
#[command(after_long_help = GRAMMAR)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args)]
struct Sample {
    /// Seed for sampled checks.
    #[arg(long, env = "ORDALG_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

impl Sample {
    fn sampling(&self) -> Sampling {
        Sampling { samples: self.samples, seed: self.seed }
    }
}

#[derive(Args)]
struct Quad {
    /// Group descriptor.
    #[arg(long)]
    group: String,
    #[arg(long, allow_hyphen_values = true)]
    a1: String,
    #[arg(long, allow_hyphen_values = true)]
    a2: String,
    #[arg(long, allow_hyphen_values = true)]
    b1: String,
    #[arg(long, allow_hyphen_values = true)]
    b2: String,
}

#[derive(Subcommand)]
enum Verb {
    /// Check PE1-PE4 on a finite addition table.
    CheckAxioms { input: String },
    /// Solve a Riesz decomposition instance and verify the table.
    CheckRdp {
        #[command(flatten)]
        quad: Quad,
        #[arg(long, default_value = "rdp")]
        level: String,
        /// Verify this table instead of solving: c11, c12, c21, c22 in order.
        #[arg(long, num_args = 4, allow_hyphen_values = true, value_names = ["C11", "C12", "C21", "C22"])]
        table: Option<Vec<String>>,
        /// Cross-check against the exhaustive search.
        #[arg(long)]
        oracle: bool,
        #[arg(long = "box", default_value_t = 20)]
        radius: i64,
    },
    /// Find c with a1, a2 <= c <= b1, b2.
    Interpolate {
        #[command(flatten)]
        quad: Quad,
    },
    /// Exhaustive search for a decomposition table in a box.
    OracleRdp {
        #[command(flatten)]
        quad: Quad,
        #[arg(long, default_value = "rdp")]
        level: String,
        #[arg(long = "box", default_value_t = 20)]
        radius: i64,
    },
    /// H-decompositions of an algebra and their ordering laws.
    Decompose {
        #[arg(long)]
        pea: String,
        #[arg(long = "H", default_value = "Q")]
        h: String,
        #[command(flatten)]
        sample: Sample,
    },
    /// Extremal states of a finite algebra.
    States { input: String },
    /// Ideals, radicals and infinitesimals of a finite algebra.
    Ideals { input: String },
    /// Perfectness flags with witnesses.
    ClassifyPerfect {
        #[arg(long)]
        pea: String,
        #[arg(long = "H", default_value = "Q")]
        h: String,
        /// Largest n probed for divisibility.
        #[arg(long, default_value_t = 6)]
        n_max: u64,
        #[command(flatten)]
        sample: Sample,
    },
    /// Build E_H(G), encode it, and check the representation map.
    Represent {
        #[arg(long = "H")]
        h: String,
        #[arg(long = "G")]
        g: String,
        /// Tail of the unit (1, g0); excludes --shuffle.
        #[arg(long, allow_hyphen_values = true)]
        g0: Option<String>,
        #[arg(long)]
        shuffle: Option<String>,
        /// Drop the cyclic-system correction, as a negative control.
        #[arg(long)]
        corrupt: bool,
        #[command(flatten)]
        sample: Sample,
    },
    /// Functor laws of h -> E_H(h).
    Functor {
        #[arg(long)]
        hom: String,
        /// A second homomorphism composed after --hom.
        #[arg(long)]
        then: Option<String>,
        /// A homomorphism that E_H must separate from --hom.
        #[arg(long)]
        against: Option<String>,
        #[arg(long = "H", default_value = "Q")]
        h: String,
        #[command(flatten)]
        sample: Sample,
    },
}

/// Human lines, then one machine line.
struct Report {
    lines: Vec<String>,
    keys: Vec<(String, String)>,
    pass: bool,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new(), keys: Vec::new(), pass: true }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn flag(&mut self, name: &str, v: impl Display) {
        self.line(format!("{name}: {v}"));
    }

    fn key(&mut self, k: &str, v: impl Display) {
        self.keys.push((k.to_string(), v.to_string().replace(' ', "")));
    }

    fn require(&mut self, ok: bool) {
        self.pass &= ok;
    }

    fn print(&self) {
        for l in &self.lines {
            println!("{l}");
        }
        let mut m = format!("#! verdict={}", if self.pass { "pass" } else { "fail" });
        for (k, v) in &self.keys {
            m.push_str(&format!(" {k}={v}"));
        }
        println!("{m}");
    }
}

type Run = Result<Report, String>;

fn ctx<T>(what: &str, r: Result<T, AlgebraError>) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn maybe(b: Option<bool>) -> &'static str {
    match b {
        Some(b) => yes(b),
        None => "not determinable",
    }
}

fn read(path: &str) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn load_algebra(input: &str) -> Result<AnyPea, String> {
    if Path::new(input).is_file() {
        let table = ctx(input, parse_pea_table(&read(input)?))?;
        return match ctx(input, FinitePea::check_axioms(&table))? {
            AxiomVerdict::Valid(e) => Ok(AnyPea::Finite(e)),
            AxiomVerdict::Invalid { axiom, detail, .. } => Err(format!("{input}: {axiom} fails: {detail}")),
        };
    }
    ctx("--pea", parse_algebra(input))
}

fn load_table(input: &str) -> Result<PeaTable, String> {
    if Path::new(input).is_file() {
        return ctx(input, parse_pea_table(&read(input)?));
    }
    match ctx(input, parse_algebra(input))? {
        AnyPea::Finite(e) => Ok(e.to_table()),
        AnyPea::Interval(_) => Err(format!("{input}: expected a finite algebra")),
    }
}

fn load_finite(input: &str) -> Result<FinitePea, String> {
    match load_algebra(input)? {
        AnyPea::Finite(e) => Ok(e),
        AnyPea::Interval(_) => Err(format!("{input}: expected a finite algebra")),
    }
}

fn instance(q: &Quad) -> Result<(GroupDescriptor, RdpInstance), String> {
    let g = ctx("--group", parse_descriptor(&q.group))?;
    let el = |flag: &str, s: &str| ctx(flag, parse_element(&g, s));
    let inst = RdpInstance::new(el("--a1", &q.a1)?, el("--a2", &q.a2)?, el("--b1", &q.b1)?, el("--b2", &q.b2)?);
    Ok((g, inst))
}

fn level(s: &str) -> Result<RdpLevel, String> {
    ctx("--level", s.parse())
}

fn verdict_text(v: &TableVerdict) -> String {
    match v {
        TableVerdict::Valid => "valid".into(),
        TableVerdict::Invalid(r) => format!("invalid ({r})"),
        TableVerdict::Inconclusive(r) => format!("inconclusive ({r})"),
    }
}

fn table_keys(r: &mut Report, t: &DecompositionTable) {
    for (k, v) in ["c11", "c12", "c21", "c22"].into_iter().zip(t.entries()) {
        r.key(k, v);
    }
}

fn check_rdp(q: &Quad, lv: &str, table: &Option<Vec<String>>, oracle: bool, radius: i64) -> Run {
    let (g, inst) = instance(q)?;
    let lv = level(lv)?;
    let mut r = Report::new();
    let t = match table {
        Some(cs) => {
            let el = |i: usize| ctx("--table", parse_element(&g, &cs[i]));
            DecompositionTable {
                c11: el(0)?,
                c12: el(1)?,
                c21: el(2)?,
                c22: el(3)?,
                level: lv,
                side: SideCondition::NotRequired,
            }
        }
        None => ctx("decompose", rdp_decompose(&g, &inst, lv))?,
    };
    r.line(format!("{lv} table in {g}:"));
    for l in t.render(&inst).lines() {
        r.line(format!("  {l}"));
    }
    let v = ctx("verify", rdp_table_verify(&g, &inst, &t, lv))?;
    r.flag("verification", verdict_text(&v));
    r.require(v.is_valid());
    r.key("level", lv);
    table_keys(&mut r, &t);
    if oracle {
        let found = ctx("oracle", rdp_oracle_search(&g, &inst, lv, radius))?;
        let agree = matches!(found, OracleResult::Found(_));
        r.flag("oracle", if agree { format!("found a table within box {radius}") } else { format!("no table within box {radius}") });
        r.require(agree);
        r.key("oracle", if agree { "found" } else { "none" });
    }
    Ok(r)
}

fn oracle_rdp(q: &Quad, lv: &str, radius: i64) -> Run {
    let (g, inst) = instance(q)?;
    let lv = level(lv)?;
    let mut r = Report::new();
    match ctx("oracle", rdp_oracle_search(&g, &inst, lv, radius))? {
        OracleResult::Found(t) => {
            r.line(format!("{lv} table in {g} found within box {radius}:"));
            for l in t.render(&inst).lines() {
                r.line(format!("  {l}"));
            }
            table_keys(&mut r, &t);
        }
        OracleResult::NotFoundWithinBox => {
            r.line(format!("no {lv} table in {g} within box {radius}"));
            r.require(false);
        }
    }
    r.key("level", lv);
    Ok(r)
}

fn interpolate(q: &Quad) -> Run {
    let (g, inst) = instance(q)?;
    let c = ctx("interpolate", rip_interpolate(&g, &inst.a1, &inst.a2, &inst.b1, &inst.b2))?;
    let mut r = Report::new();
    r.line(format!("{}, {} <= {c} <= {}, {}", inst.a1, inst.a2, inst.b1, inst.b2));
    r.key("c", &c);
    Ok(r)
}

fn check_axioms(input: &str) -> Run {
    let table = load_table(input)?;
    let mut r = Report::new();
    match ctx(input, FinitePea::check_axioms(&table))? {
        AxiomVerdict::Valid(e) => {
            r.line(format!("pseudo effect algebra with {} elements", e.size()));
            r.flag("axioms", "PE1 PE2 PE3 PE4 hold");
            r.flag("commutative", yes(e.is_commutative()));
            r.key("size", e.size());
            r.key("commutative", e.is_commutative());
        }
        AxiomVerdict::Invalid { axiom, witness, detail } => {
            let names: Vec<String> = witness.iter().map(|&i| table.name(i)).collect();
            r.line(format!("{axiom} fails: {detail}"));
            if !names.is_empty() {
                r.flag("witness", names.join(" "));
            }
            r.require(false);
            r.key("axiom", axiom);
            r.key("witness", names.join(","));
        }
    }
    Ok(r)
}

fn set_text(e: &FinitePea, set: ElementSet) -> String {
    let names: Vec<&str> = members(set).map(|x| e.name(x)).collect();
    format!("{{{}}}", names.join(", "))
}

fn state_text(e: &FinitePea, s: &PeaState) -> Result<String, String> {
    let vals = e
        .elements()
        .map(|x| Ok(format!("{}={}", e.name(x), ctx("state", s.value_finite(x))?)))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(vals.join(" "))
}

fn states(input: &str) -> Run {
    let e = load_finite(input)?;
    let all = ctx("states", states_finite(&e))?;
    let mut r = Report::new();
    r.line(format!("{} extremal states", all.len()));
    for (i, s) in all.iter().enumerate() {
        r.line(format!("  s{i}: {}", state_text(&e, s)?));
        let k = ctx("kernel", s.kernel(&e))?;
        r.line(format!("      kernel {}", set_text(&e, k)));
    }
    r.require(!all.is_empty());
    r.key("states", all.len());
    Ok(r)
}

fn ideals(input: &str) -> Run {
    let e = load_finite(input)?;
    let rep = ctx("ideals", ideals_enumerate(&e))?;
    let mut r = Report::new();
    r.line(format!("{} ideals", rep.ideals.len()));
    for i in &rep.ideals {
        let mut tags = Vec::new();
        if i.maximal {
            tags.push("maximal");
        }
        if i.normal {
            tags.push("normal");
        }
        r.line(format!("  {} {}", set_text(&e, i.set), tags.join(" ")).trim_end().to_string());
    }
    r.flag("radical", set_text(&e, rep.radical));
    r.flag("normal radical", set_text(&e, rep.normal_radical));
    r.flag("infinitesimals", set_text(&e, infinitesimals_finite(&e)));
    r.key("ideals", rep.ideals.len());
    r.key("maximal", rep.ideals.iter().filter(|i| i.maximal).count());
    Ok(r)
}

fn report_decomposition(r: &mut Report, e: &AnyPea, d: &HDecomposition, sampling: Sampling) -> Result<(), String> {
    for l in d.render(e).lines() {
        r.line(format!("  {l}"));
    }
    let slices = ctx("slices", nonempty_slices(e, d))?;
    let ts: Vec<String> = slices.iter().map(|(t, _)| t.to_string()).collect();
    r.flag("  nonempty slices", ts.join(" "));
    let ord = ctx("ordered", check_ordered(e, d, sampling))?;
    r.flag("  ordered", yes(ord.ordered));
    r.flag("  slice additivity", yes(ord.slice_additivity));
    r.flag("  no sums above one", yes(ord.no_sums_above_one));
    r.flag("  zero slice infinitesimal", yes(ord.zero_slice_infinitesimal));
    r.flag("  radicals match zero slice", maybe(ord.radicals_match));
    if let Some(w) = &ord.witness {
        r.flag("  witness", w);
    }
    if ord.ordered {
        let t1 = ctx("type I", check_type_i(e, d, sampling))?;
        r.flag("  type I", yes(t1.holds()));
        r.require(t1.holds());
    }
    r.require(ord.equivalence_consistent() && (!ord.ordered || ord.consequences_hold()));
    Ok(())
}

fn decompose(pea: &str, h: &str, sample: &Sample) -> Run {
    let e = load_algebra(pea)?;
    let h = ctx("--H", parse_subgroup(h))?;
    let sampling = sample.sampling();
    let candidates = match &e {
        AnyPea::Finite(f) => ctx("states", states_finite(f))?,
        AnyPea::Interval(_) => vec![PeaState::FirstCoordinate],
    };
    let mut r = Report::new();
    let mut found = 0;
    for s in candidates {
        let d = match decomposition_from_state(&e, &s, h, sampling) {
            Ok(d) => d,
            Err(AlgebraError::NotHValued(_)) => continue,
            Err(err) => return Err(format!("decompose: {err}")),
        };
        found += 1;
        match (&e, &s) {
            (AnyPea::Finite(f), PeaState::FiniteTable(_)) => {
                r.line(format!("decomposition {found} from state {}", state_text(f, &s)?))
            }
            _ => r.line(format!("decomposition {found} from the first coordinate")),
        }
        report_decomposition(&mut r, &e, &d, sampling)?;
    }
    if found == 0 {
        r.line(format!("no {h}-decomposition"));
    }
    r.require(found > 0);
    r.key("H", h);
    r.key("decompositions", found);
    Ok(r)
}

fn perfect_lines(r: &mut Report, p: &PerfectReport) {
    r.flag("H-perfect", yes(p.perfect));
    r.flag("strong H-perfect", maybe(p.strong_perfect()));
    r.flag("directness", maybe(p.directness));
    r.flag("cyclic system", yes(p.cyclic_system));
    r.flag("strong cyclic system", maybe(p.strong_cyclic_system));
    let fail = |n: Option<u64>| n.map(|n| format!(" (fails at n = {n})")).unwrap_or_default();
    r.flag("1-divisible", format!("{}{}", yes(p.one_divisible), fail(p.first_divisibility_failure)));
    r.flag(
        "strong 1-divisible",
        format!("{}{}", maybe(p.strong_one_divisible), fail(p.first_strong_divisibility_failure)),
    );
    r.flag("unique roots", yes(p.unique_roots));
    r.flag("torsion free", maybe(p.torsion_free));
    r.flag("symmetric", yes(p.symmetric));
    for n in &p.notes {
        r.line(format!("note: {n}"));
    }
    let opt = |b: Option<bool>| b.map_or("unknown".to_string(), |b| b.to_string());
    r.key("H", p.h);
    r.key("perfect", p.perfect);
    r.key("strong_perfect", opt(p.strong_perfect()));
    r.key("directness", opt(p.directness));
    r.key("strong_cyclic", opt(p.strong_cyclic_system));
    r.key("strong_divisible", opt(p.strong_one_divisible));
    if let Some(n) = p.first_strong_divisibility_failure {
        r.key("strong_divisibility_fails_at", n);
    }
    r.key("torsion_free", opt(p.torsion_free));
    r.key("symmetric", p.symmetric);
}

fn classify(pea: &str, h: &str, n_max: u64, sample: &Sample) -> Run {
    let e = load_algebra(pea)?;
    let h = ctx("--H", parse_subgroup(h))?;
    let opts = ClassifyOptions { sampling: sample.sampling(), n_max, ..ClassifyOptions::default() };
    let p = ctx("classify", classify_perfect(&e, h, opts))?;
    let mut r = Report::new();
    r.line(format!("classification over {h}"));
    perfect_lines(&mut r, &p);
    if let AnyPea::Finite(f) = &e {
        for n in 2..=n_max {
            let cs = cyclic_elements_finite(f, n);
            if !cs.is_empty() {
                let names: Vec<&str> = cs.iter().map(|c| f.name(c.element)).collect();
                r.flag(&format!("cyclic of order {n}"), names.join(" "));
            }
        }
    }
    r.require(p.perfect);
    Ok(r)
}

fn represent(h: &str, g: &str, g0: &Option<String>, shuffle: &Option<String>, corrupt: bool, sample: &Sample) -> Run {
    let h = ctx("--H", parse_subgroup(h))?;
    let g = ctx("--G", parse_descriptor(g))?;
    let (e, label) = match (g0, shuffle) {
        (Some(_), Some(_)) => return Err("--g0 and --shuffle cannot be combined".into()),
        (Some(g0), None) => {
            let g0 = ctx("--g0", parse_element(&g, g0))?;
            (ctx("build", build_lex_pea(h, g.clone(), g0))?, "identity".to_string())
        }
        (None, s) => {
            let s = match s {
                Some(s) => ctx("--shuffle", Shuffle::parse(s))?,
                None => Shuffle::default_for(h, &g),
            };
            (ctx("encode", s.encode_pea(h, &g))?, s.to_string())
        }
    };
    let opts = ClassifyOptions { sampling: sample.sampling(), ..ClassifyOptions::default() };
    let mut rep = ctx("represent", Representation::new(e, opts))?;
    if corrupt {
        rep = rep.corrupted();
    }
    let mut r = Report::new();
    r.line(format!("source: [0, {}] in {} (encoding {label})", rep.source.unit(), rep.source.group()));
    r.line(format!("target: [0, {}] in {}", rep.target.unit(), rep.target.group()));
    let iso = ctx("verify", verify_isomorphism(&rep, sample.samples, sample.seed))?;
    r.flag("samples", iso.sample_count);
    r.flag("homomorphism failures", iso.homomorphism_failures);
    r.flag("injectivity failures", iso.injectivity_failures);
    r.flag("order reflection failures", iso.order_reflection_failures);
    r.flag("surjectivity probes", format!("{}/{}", iso.surjectivity_probes_hit, iso.surjectivity_probes));
    if let Some(f) = &iso.first_failure {
        r.flag("first failure", f);
    }
    r.require(iso.clean());
    if rep.source.group().is_lattice() {
        let lp = ctx("lattice parts", lattice_parts_check(&rep, sample.samples, sample.seed))?;
        r.flag("lattice part failures", lp.failures);
        r.require(lp.failures == 0);
        r.key("lattice_failures", lp.failures);
    }
    r.key("samples", iso.sample_count);
    r.key("failures", iso.homomorphism_failures + iso.injectivity_failures + iso.order_reflection_failures);
    r.key("probes", format!("{}/{}", iso.surjectivity_probes_hit, iso.surjectivity_probes));
    Ok(r)
}

fn functor(hom: &str, then: &Option<String>, against: &Option<String>, h: &str, sample: &Sample) -> Run {
    let h: ScalarSubgroup = ctx("--H", parse_subgroup(h))?;
    let first: GroupHom = ctx("--hom", parse_hom(hom))?;
    let second = match then {
        Some(s) => ctx("--then", parse_hom(s))?,
        None => GroupHom::identity(first.target.clone()),
    };
    let rep = ctx("functor", functor_laws(&first, &second, h, sample.samples, sample.seed))?;
    let mut r = Report::new();
    r.line(format!("functor over {h} for {first}, then {second}"));
    r.flag("samples", rep.samples);
    r.flag("identity failures", rep.identity_failures);
    r.flag("composition failures", rep.composition_failures);
    r.flag("homomorphism failures", rep.homomorphism_failures);
    r.flag("fullness failures", rep.fullness_failures);
    if let Some(f) = &rep.first_failure {
        r.flag("first failure", f);
    }
    r.require(rep.clean());
    r.key("samples", rep.samples);
    r.key("failures", rep.identity_failures + rep.composition_failures + rep.homomorphism_failures + rep.fullness_failures);
    if let Some(other) = against {
        let other = ctx("--against", parse_hom(other))?;
        let w: Option<GroupElement> = ctx("faithfulness", faithfulness_witness(&first, &other, h, sample.samples, sample.seed))?;
        match &w {
            Some(x) => r.flag("separated at", x),
            None => r.flag("separated at", "nowhere"),
        }
        let same = first.rule == other.rule;
        r.require(w.is_some() != same);
        r.key("witness", w.map_or("none".to_string(), |x| x.to_string()));
    }
    Ok(r)
}

fn run(cli: &Cli) -> Run {
    match &cli.verb {
        Verb::CheckAxioms { input } => check_axioms(input),
        Verb::CheckRdp { quad, level, table, oracle, radius } => check_rdp(quad, level, table, *oracle, *radius),
        Verb::Interpolate { quad } => interpolate(quad),
        Verb::OracleRdp { quad, level, radius } => oracle_rdp(quad, level, *radius),
        Verb::Decompose { pea, h, sample } => decompose(pea, h, sample),
        Verb::States { input } => states(input),
        Verb::Ideals { input } => ideals(input),
        Verb::ClassifyPerfect { pea, h, n_max, sample } => classify(pea, h, *n_max, sample),
        Verb::Represent { h, g, g0, shuffle, corrupt, sample } => represent(h, g, g0, shuffle, *corrupt, sample),
        Verb::Functor { hom, then, against, h, sample } => functor(hom, then, against, h, sample),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            r.print();
            if r.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
