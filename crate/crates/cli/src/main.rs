use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use digitop::format::{self, ParseError};
use digitop::group::{
    cayley_graph, classify_np2_group_image, enumerate_groups, is_digital_topological_group, make_group,
    DtgWitness,
};
use digitop::homotopy::{
    homotopic, homotopy_equivalent, is_contractible, is_irreducible, is_rigid, pointed_homotopic,
    DEFAULT_BUDGET,
};
use digitop::hspace::{
    decompose_np2, fixture, h_equivalent, has_left_homotopy_inverse, has_right_homotopy_inverse,
    is_associative, is_homotopy_associative, left_unital_reduction, magma_point_extension,
    search_hspace_multiplications, transport_structure, verify_hspace, Fixture, FIXTURE_NAMES,
};
use digitop::image::enumerate_images;
use digitop::{Category, DigitalImage, DigitalMap, Error, HSpaceStructure, HomotopyCertificate, MagmaStructure, Status};

const EXIT_USAGE: u8 = 64;
const EXIT_PARSE: u8 = 65;

#[derive(Parser, Debug)]
#[command(name = "digitop", version, about = "Decision procedures for digital images, homotopy and H-spaces")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Debug)]
struct Opts {
    /// Adjacency category of products: 1 or 2.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    cat: u8,
    /// Maximum number of maps visited by a search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET, value_parser = parse_budget)]
    budget: usize,
    /// Basepoint of the (first) image.
    #[arg(long, global = true)]
    base: Option<usize>,
    /// Basepoint of the second image or of the codomain.
    #[arg(long, global = true)]
    base2: Option<usize>,
    /// Print certificates for YES verdicts.
    #[arg(long, global = true)]
    certificate: bool,
    /// Write the main image as a Graphviz file.
    #[arg(long, global = true, value_name = "PATH")]
    dot: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Records,
}

fn parse_budget(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("budget must be at least 1".into()),
        Ok(b) => Ok(b),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Is the map continuous?
    Continuity { map: PathBuf },
    /// Are two maps homotopic?
    Homotopic { f: PathBuf, g: PathBuf },
    /// Are two maps homotopic relative to `--base` (and `--base2`)?
    PointedHomotopic { f: PathBuf, g: PathBuf },
    /// Is the image contractible?
    Contractible { image: PathBuf },
    /// Is every map homotopic to the identity surjective?
    Irreducible { image: PathBuf },
    /// Is the identity homotopic only to itself?
    Rigid { image: PathBuf },
    /// Are two images homotopy equivalent (pointed when `--base` is given)?
    Equiv { x: PathBuf, y: PathBuf },
    /// Check the H-space axioms of a structure file.
    HspaceVerify { hspace: PathBuf },
    /// Is the multiplication associative, exactly or up to homotopy?
    HspaceAssoc { hspace: PathBuf },
    /// Do left and right homotopy inverses exist?
    HspaceInverses { hspace: PathBuf },
    /// Are two H-spaces H-equivalent?
    HspaceHequiv {
        x: PathBuf,
        y: PathBuf,
        /// Require the homotopies to fix the basepoints.
        #[arg(long)]
        pointed: bool,
    },
    /// Move a structure along a pointed homotopy equivalence `f`, `g`.
    HspaceTransport { hspace: PathBuf, f: PathBuf, g: PathBuf },
    /// Produce an equivalent left-unital structure.
    HspaceReduce { hspace: PathBuf },
    /// Enumerate H-space multiplications on an image at `--base`.
    HspaceSearch {
        image: PathBuf,
        /// Stop after this many structures.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Decompose an irreducible category-2 H-space.
    Np2Decompose { hspace: PathBuf },
    /// Adjoin an isolated unit to a magma.
    MagmaExtend { magma: PathBuf },
    /// Print the Cayley graph of a group.
    Cayley {
        group: PathBuf,
        /// Generating subset (overrides a `subset` line in the file).
        #[arg(long, num_args = 0..)]
        subset: Option<Vec<usize>>,
    },
    /// Is the labelled image a digital topological group?
    DtgVerify { image: PathBuf, group: PathBuf },
    /// Could the image carry a category-2 digital topological group?
    Np2Classify { image: PathBuf },
    /// Print a named example, or list the names.
    Fixture { name: Option<String> },
    /// List images up to isomorphism, or groups up to isomorphism.
    Enumerate {
        n: usize,
        #[arg(long, value_enum, default_value_t = EnumKind::Images)]
        kind: EnumKind,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum EnumKind {
    Images,
    Groups,
}

/// What a verb produced.
#[derive(Default)]
struct Report {
    verdict: Option<Status>,
    fields: Vec<(String, String)>,
    bodies: Vec<(String, String)>,
    dot: Option<Arc<DigitalImage>>,
}

impl Report {
    fn verdict(status: Status) -> Self {
        Report {
            verdict: Some(status),
            ..Report::default()
        }
    }

    fn field(mut self, k: &str, v: impl ToString) -> Self {
        self.fields.push((k.to_string(), v.to_string()));
        self
    }

    fn body(mut self, k: &str, v: String) -> Self {
        self.bodies.push((k.to_string(), v));
        self
    }

    fn dot(mut self, x: &Arc<DigitalImage>) -> Self {
        self.dot = Some(x.clone());
        self
    }

    fn render(&self, fmt: OutputFormat) -> String {
        let mut s = String::new();
        match fmt {
            OutputFormat::Text => {
                if let Some(v) = self.verdict {
                    let _ = writeln!(s, "{v}");
                }
                for (k, v) in &self.fields {
                    let _ = writeln!(s, "{k}: {v}");
                }
                for (k, v) in &self.bodies {
                    let _ = writeln!(s, "# {k}");
                    s.push_str(v);
                }
            }
            OutputFormat::Records => {
                if let Some(v) = self.verdict {
                    let _ = writeln!(s, "status={v}");
                }
                for (k, v) in &self.fields {
                    let _ = writeln!(s, "{k}={v}");
                }
                for (k, v) in &self.bodies {
                    for line in v.lines() {
                        let _ = writeln!(s, "{k}={line}");
                    }
                }
            }
        }
        s
    }

    fn exit_code(&self) -> u8 {
        match self.verdict {
            None | Some(Status::Yes) => 0,
            Some(Status::No) => 1,
            Some(Status::Inconclusive) => 2,
        }
    }
}

/// A failure that ends the run with a fixed exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn parse(path: &Path, e: ParseError) -> Self {
        Failure {
            code: EXIT_PARSE,
            message: format!("{}:{}: {}", path.display(), e.line, e.message),
        }
    }
}

/// Library errors become NO (the input lacks the property), INCONCLUSIVE
/// (the budget ran out) or a usage error (the inputs do not fit the verb).
enum Outcome {
    Report(Report),
    Fail(Failure),
}

fn classify(e: Error) -> Outcome {
    match e {
        Error::BudgetExhausted { .. } => {
            Outcome::Report(Report::verdict(Status::Inconclusive).field("reason", e))
        }
        Error::VertexOutOfRange { .. }
        | Error::CapExceeded { .. }
        | Error::DomainMismatch(_)
        | Error::SizeMismatch { .. }
        | Error::BadSubset { .. }
        | Error::BadLevel { .. }
        | Error::BadCategory(_)
        | Error::BadTable { .. }
        | Error::EdgeOutOfRange { .. }
        | Error::ZeroVertices
        | Error::UnknownFixture(_) => Outcome::Fail(Failure::usage(e.to_string())),
        _ => Outcome::Report(Report::verdict(Status::No).field("reason", e)),
    }
}

type Run<T> = Result<T, Outcome>;

fn lib<T>(r: digitop::Result<T>) -> Run<T> {
    r.map_err(classify)
}

fn read(path: &Path) -> Run<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Outcome::Fail(Failure::usage(format!("{}: {e}", path.display()))))
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Run<T> {
    let text = read(path)?;
    parse(&text).map_err(|e| Outcome::Fail(Failure::parse(path, e)))
}

fn load_image(path: &Path) -> Run<Arc<DigitalImage>> {
    load(path, format::read_image).map(Arc::new)
}

fn load_map(path: &Path) -> Run<DigitalMap> {
    load(path, format::read_map)
}

/// Rebuilds `g` over `f`'s images when they are equal, so both maps share
/// their carriers.
fn align(f: &DigitalMap, g: DigitalMap) -> DigitalMap {
    if f.domain() == g.domain() && f.codomain() == g.codomain() {
        DigitalMap::new(f.domain().clone(), f.codomain().clone(), g.values().to_vec()).unwrap_or(g)
    } else {
        g
    }
}

fn load_hspace(path: &Path) -> Run<HSpaceStructure> {
    let h = load(path, format::read_hspace)?;
    lib(HSpaceStructure::new(Arc::new(h.image), h.base, h.mul, h.cat))
}

fn load_group(path: &Path) -> Run<(digitop::GroupStructure, Option<Vec<usize>>)> {
    let (t, s) = load(path, format::read_group)?;
    let g = make_group(t).map_err(|e| {
        Outcome::Fail(Failure {
            code: EXIT_PARSE,
            message: format!("{}: not a group: {e}", path.display()),
        })
    })?;
    Ok((g, s))
}

fn values(f: &DigitalMap) -> String {
    f.values().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn need_base(opts: &Opts) -> Run<usize> {
    opts.base
        .ok_or_else(|| Outcome::Fail(Failure::usage("this verb needs --base")))
}

fn with_cert(r: Report, opts: &Opts, name: &str, c: Option<&HomotopyCertificate>) -> Report {
    match c {
        Some(c) if opts.certificate && r.verdict == Some(Status::Yes) => {
            r.field(&format!("{name}_steps"), c.steps())
                .body(name, format::write_certificate(c))
        }
        _ => r,
    }
}

fn run(verb: &Verb, opts: &Opts) -> Run<Report> {
    let cat = Category::from_level(opts.cat as usize).expect("clap restricts the range");
    let budget = opts.budget;
    Ok(match verb {
        Verb::Continuity { map } => {
            let f = load_map(map)?;
            let r = match f.discontinuity() {
                None => Report::verdict(Status::Yes),
                Some((a, b)) => Report::verdict(Status::No).field("witness", format!("{a} {b}")),
            };
            r.dot(f.domain())
        }
        Verb::Homotopic { f, g } => {
            let f = load_map(f)?;
            let g = align(&f, load_map(g)?);
            let v = lib(homotopic(&f, &g, cat, budget))?;
            let r = Report::verdict(v.status).field("explored", v.explored);
            with_cert(r, opts, "certificate", v.certificate.as_ref()).dot(f.domain())
        }
        Verb::PointedHomotopic { f, g } => {
            let f = load_map(f)?;
            let g = align(&f, load_map(g)?);
            let b = need_base(opts)?;
            lib(f.domain().check_vertex(b))?;
            let b2 = opts.base2.unwrap_or_else(|| f.apply(b));
            let v = lib(pointed_homotopic(&f, &g, cat, b, b2, budget))?;
            let r = Report::verdict(v.status).field("explored", v.explored);
            with_cert(r, opts, "certificate", v.certificate.as_ref()).dot(f.domain())
        }
        Verb::Contractible { image } => {
            let x = load_image(image)?;
            let v = lib(is_contractible(&x, cat, budget))?;
            let r = Report::verdict(v.status).field("explored", v.explored);
            with_cert(r, opts, "certificate", v.certificate.as_ref()).dot(&x)
        }
        Verb::Irreducible { image } | Verb::Rigid { image } => {
            let x = load_image(image)?;
            let v = if matches!(verb, Verb::Rigid { .. }) {
                lib(is_rigid(&x, cat, budget))?
            } else {
                lib(is_irreducible(&x, cat, budget))?
            };
            let mut r = Report::verdict(v.status).field("explored", v.explored);
            if let Some(w) = v.witness() {
                r = r.field("witness", values(w));
            }
            r.dot(&x)
        }
        Verb::Equiv { x, y } => {
            let (x, y) = (load_image(x)?, load_image(y)?);
            let pointed = match (opts.base, opts.base2) {
                (None, None) => None,
                (Some(a), Some(b)) => Some((a, b)),
                _ => return Err(Outcome::Fail(Failure::usage("pointed equivalence needs --base and --base2"))),
            };
            let v = lib(homotopy_equivalent(&x, &y, cat, budget, pointed))?;
            let mut r = Report::verdict(v.status).field("explored", v.explored);
            if let Some((f, g)) = &v.witness {
                r = r.field("f", values(f)).field("g", values(g));
            }
            if let Some((c1, c2)) = &v.certificates {
                r = with_cert(r, opts, "certificate_gf", Some(c1));
                r = with_cert(r, opts, "certificate_fg", Some(c2));
            }
            r.dot(&x)
        }
        Verb::HspaceVerify { hspace } => {
            let h = load(hspace, format::read_hspace)?;
            let x = Arc::new(h.image);
            let rep = lib(verify_hspace(&x, h.base, &h.mul, h.cat, budget))?;
            let mut r = Report::verdict(rep.is_hspace)
                .field("unital", rep.unital)
                .field("pointed", rep.pointed)
                .field("left_unit_exact", rep.left_unit_exact)
                .field("right_unit_exact", rep.right_unit_exact);
            if let Some((l, rr)) = &rep.certificates {
                r = with_cert(r, opts, "certificate_left", Some(l));
                r = with_cert(r, opts, "certificate_right", Some(rr));
            }
            r.dot(&x)
        }
        Verb::HspaceAssoc { hspace } => {
            let h = load_hspace(hspace)?;
            let exact = is_associative(&h);
            let v = lib(is_homotopy_associative(&h, budget))?;
            let r = Report::verdict(v.status)
                .field("exact", exact)
                .field("explored", v.explored);
            with_cert(r, opts, "certificate", v.certificate.as_ref()).dot(h.image())
        }
        Verb::HspaceInverses { hspace } => {
            let h = load_hspace(hspace)?;
            let l = lib(has_left_homotopy_inverse(&h, budget))?;
            let rt = lib(has_right_homotopy_inverse(&h, budget))?;
            let mut r = Report::verdict(l.status.and(rt.status))
                .field("left", l.status)
                .field("right", rt.status);
            if let Some(w) = &l.witness {
                r = r.field("left_inverse", values(w));
            }
            if let Some(w) = &rt.witness {
                r = r.field("right_inverse", values(w));
            }
            if l.status.is_yes() {
                r = with_cert(r, opts, "certificate_left", l.certificate.as_ref());
            }
            if rt.status.is_yes() {
                r = with_cert(r, opts, "certificate_right", rt.certificate.as_ref());
            }
            r.dot(h.image())
        }
        Verb::HspaceHequiv { x, y, pointed } => {
            let (hx, hy) = (load_hspace(x)?, load_hspace(y)?);
            let v = lib(h_equivalent(&hx, &hy, budget, *pointed))?;
            let mut r = Report::verdict(v.status).field("explored", v.explored);
            if let Some((f, g)) = &v.witness {
                r = r.field("f", values(f)).field("g", values(g));
            }
            for (i, c) in v.certificates.iter().flatten().enumerate() {
                r = with_cert(r, opts, &format!("certificate_{i}"), Some(c));
            }
            r.dot(hx.image())
        }
        Verb::HspaceTransport { hspace, f, g } => {
            let h = load_hspace(hspace)?;
            let (f, g) = (load_map(f)?, load_map(g)?);
            let t = lib(transport_structure(&h, &f, &g, budget))?;
            Report::verdict(Status::Yes)
                .body("hspace", format::write_hspace(&t))
                .dot(t.image())
        }
        Verb::HspaceReduce { hspace } => {
            let h = load_hspace(hspace)?;
            let t = lib(left_unital_reduction(&h, budget))?;
            Report::verdict(Status::Yes)
                .field("vertices", t.image().len())
                .body("hspace", format::write_hspace(&t))
                .dot(t.image())
        }
        Verb::HspaceSearch { image, limit } => {
            let x = load_image(image)?;
            let e = need_base(opts)?;
            let search = lib(search_hspace_multiplications(&x, e, cat, budget))?;
            let mut found = Vec::new();
            let mut count = 0usize;
            for h in search.take(limit.unwrap_or(usize::MAX)) {
                count += 1;
                if limit.is_some() {
                    found.push(h);
                }
            }
            let mut r = Report::verdict(Status::from_bool(count > 0)).field("count", count);
            for (i, h) in found.iter().enumerate() {
                r = r.body(&format!("structure_{i}"), format::write_hspace(h));
            }
            r.dot(&x)
        }
        Verb::Np2Decompose { hspace } => {
            let h = load_hspace(hspace)?;
            let d = lib(decompose_np2(&h, budget))?;
            let list = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
            let pairs = d.a.iter().map(|(a, b)| format!("{a}:{b}")).collect::<Vec<_>>().join(" ");
            let mut r = Report::verdict(Status::Yes)
                .field("e", d.e)
                .field("z", list(&d.z))
                .field("a", pairs)
                .field("z_default", d.z_default.map_or("none".to_string(), |v| v.to_string()));
            if let Some(m) = &d.magma {
                r = r.body("magma", format::write_magma(m));
            }
            r.dot(h.image())
        }
        Verb::MagmaExtend { magma } => {
            let (x, c, t) = load(magma, format::read_magma)?;
            let m = lib(MagmaStructure::new(Arc::new(x), t, c))?;
            let h = magma_point_extension(&m);
            let rep = lib(h.verify(budget))?;
            Report::verdict(rep.is_hspace)
                .field("unital", rep.unital)
                .body("hspace", format::write_hspace(&h))
                .dot(h.image())
        }
        Verb::Cayley { group, subset } => {
            let (g, file_subset) = load_group(group)?;
            let s = subset.clone().or(file_subset).unwrap_or_default();
            let x = Arc::new(lib(cayley_graph(&g, &s))?);
            Report::default()
                .field("connected", x.is_connected())
                .body("image", format::write_image(&x))
                .dot(&x)
        }
        Verb::DtgVerify { image, group } => {
            let x = load_image(image)?;
            let (g, _) = load_group(group)?;
            let r = match lib(is_digital_topological_group(&x, &g, cat))? {
                None => Report::verdict(Status::Yes),
                Some(DtgWitness::Multiplication((a, b), (c, d))) => Report::verdict(Status::No)
                    .field("witness", format!("multiplication ({a}, {b}) ~ ({c}, {d})")),
                Some(DtgWitness::Inversion(a, b)) => {
                    Report::verdict(Status::No).field("witness", format!("inversion {a} ~ {b}"))
                }
            };
            r.dot(&x)
        }
        Verb::Np2Classify { image } => {
            let x = load_image(image)?;
            let c = classify_np2_group_image(&x);
            Report::verdict(Status::from_bool(c.accepted))
                .field("connected", c.connected)
                .dot(&x)
        }
        Verb::Fixture { name: None } => Report::default().body("names", FIXTURE_NAMES.join("\n") + "\n"),
        Verb::Fixture { name: Some(name) } => {
            let (body, img) = match lib(fixture(name))? {
                Fixture::Image(x) => (format::write_image(&x), x),
                Fixture::Map(f) => (format::write_map(&f), f.domain().clone()),
                Fixture::HSpace(h) => (format::write_hspace(&h), h.image().clone()),
                Fixture::Magma(m) => (format::write_magma(&m), m.image().clone()),
            };
            Report::default().body(name, body).dot(&img)
        }
        Verb::Enumerate { n, kind } => match kind {
            EnumKind::Images => {
                let mut r = Report::default();
                let mut count = 0;
                for (i, x) in lib(enumerate_images(*n))?.enumerate() {
                    count += 1;
                    r = r.body(&format!("image_{i}"), format::write_image(&x));
                }
                r.field("count", count)
            }
            EnumKind::Groups => {
                let groups = lib(enumerate_groups(*n))?;
                let mut r = Report::default().field("count", groups.len());
                for (i, g) in groups.iter().enumerate() {
                    r = r.body(&format!("group_{i}"), format::write_group(g, None));
                }
                r
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let report = match run(&cli.verb, &cli.opts) {
        Ok(r) | Err(Outcome::Report(r)) => r,
        Err(Outcome::Fail(f)) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    if let (Some(path), Some(x)) = (&cli.opts.dot, &report.dot) {
        if let Err(e) = std::fs::write(path, x.to_dot("image")) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(EXIT_USAGE);
        }
    }
    print!("{}", report.render(cli.opts.format));
    ExitCode::from(report.exit_code())
}
