mod verify;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use spinal_core::{
    annulus_components, compatible, ends, level_copy, level_graph_direct, level_graph_recursive,
    limit_graph_ball, orbit_ball, to_dot, to_json, transport, unlabeled_rooted_iso,
    unrooted_witness, BoundaryPoint, Ends, Epimorphism, Error, LabeledMultigraph, PresetArgs,
    SpinalGroup, WitnessOutcome,
};

#[derive(Parser)]
#[command(
    name = "spinal",
    about = "Schreier graphs of spinal groups on d-ary rooted trees",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct GroupArgs {
    /// Named preset: dihedral, grigorchuk, fabrykowski-gupta, grigorchuk-p, sunic
    #[arg(long, conflicts_with = "group_spec")]
    preset: Option<String>,

    /// One-line description `d=<int>;m=<int>;pre=[...];per=[...]`
    #[arg(long)]
    group_spec: Option<String>,

    /// Degree parameter for the parametric presets
    #[arg(long)]
    p: Option<u32>,

    /// Rank parameter for the sunic preset
    #[arg(long)]
    m: Option<usize>,

    /// sunic: starting form coefficients, comma separated (default `1,0,…`)
    #[arg(long)]
    alpha: Option<String>,

    /// sunic: automorphism matrix rows, e.g. `(0,1),(1,0)` (default identity)
    #[arg(long)]
    rho: Option<String>,

    /// grigorchuk-p: preperiod symbols, e.g. `pi0,pi1`
    #[arg(long)]
    pre: Option<String>,

    /// grigorchuk-p: period symbols, e.g. `pi0,pi1,pi`
    #[arg(long)]
    per: Option<String>,
}

impl GroupArgs {
    fn build(&self) -> Result<SpinalGroup, Error> {
        if let Some(spec) = &self.group_spec {
            return SpinalGroup::parse_spec(spec);
        }
        let name = self
            .preset
            .as_deref()
            .ok_or_else(|| Error::InvalidParameter("need --preset or --group-spec".into()))?;
        let alpha = self.alpha.as_deref().map(parse_coeffs).transpose()?;
        let rho = self.rho.as_deref().map(parse_rows).transpose()?;
        spinal_core::preset(
            name,
            &PresetArgs {
                p: self.p,
                m: self.m,
                alpha,
                rho,
                pre: self.pre.clone(),
                per: self.per.clone(),
            },
        )
    }
}

fn parse_coeffs(s: &str) -> Result<Vec<u32>, Error> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("invalid coefficient `{t}`")))
        })
        .collect()
}

fn parse_rows(s: &str) -> Result<Vec<Vec<u32>>, Error> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let s = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).unwrap_or(&s);
    let mut rows = Vec::new();
    let mut rest = s;
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced `(` in `{s}`")))?;
        let tuple = rest[..=close]
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `(…)` in `{s}`")))?;
        rows.push(parse_coeffs(tuple)?);
        rest = &rest[close + 1..];
        rest = rest.strip_prefix(',').unwrap_or(rest);
    }
    Ok(rows)
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

#[derive(Args, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "dot")]
    format: Format,

    /// Write to a file instead of standard output
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

impl OutputArgs {
    fn emit<V: std::fmt::Display>(
        &self,
        graph: &LabeledMultigraph<V>,
        root: Option<usize>,
    ) -> Result<(), Error> {
        let payload = match self.format {
            Format::Dot => to_dot(graph, root),
            Format::Json => {
                let mut s = to_json(graph, root)?;
                s.push('\n');
                s
            }
        };
        match &self.out {
            Some(path) => std::fs::write(path, payload)?,
            None => std::io::stdout().write_all(payload.as_bytes())?,
        }
        Ok(())
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build the level-n graph
    Gamma {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        level: usize,
        /// Build by the recursive block gluing instead of the direct action
        #[arg(long, conflicts_with = "both")]
        recursive: bool,
        /// Build directly from the action (the default)
        #[arg(long, conflicts_with_all = ["recursive", "both"])]
        direct: bool,
        /// Build both ways, compare them, and print `equal` or `unequal`
        #[arg(long)]
        both: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Ball of the orbital graph around a boundary point
    Ball {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Level copy around a boundary point inside its orbital graph
    Delta {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Number of ends of the orbital graph of a point
    Ends {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        verbose: bool,
    },
    /// Count annulus components reaching the outer radius
    Annulus {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        r: usize,
        #[arg(long = "R")]
        big_r: usize,
    },
    /// Ball of the limit graph of a recurring epimorphism
    Limit {
        #[command(flatten)]
        group: GroupArgs,
        /// Index into the period
        #[arg(long)]
        pi: usize,
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Compatibility of two boundary points
    Compat {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        verbose: bool,
    },
    /// Isomorphism of orbital balls
    Iso {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(long, default_value_t = 7)]
        radius: usize,
        /// Compare rooted balls (the default)
        #[arg(long, conflicts_with = "unrooted")]
        rooted: bool,
        /// Search the cofinality class for an unrooted witness
        #[arg(long)]
        unrooted: bool,
        /// Respect edge labels (rooted mode only)
        #[arg(long, conflicts_with = "unlabeled")]
        labeled: bool,
        /// Ignore edge labels (the default)
        #[arg(long)]
        unlabeled: bool,
        /// Rewrite horizon for the unrooted witness search
        #[arg(long, default_value_t = 8)]
        kmax: usize,
    },
    /// Transport a vertex through the canonical rooted isomorphism
    Phi {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        xi: String,
        #[arg(long)]
        eta: String,
        #[arg(long)]
        point: String,
    },
    /// Detect self-similarity
    Selfsim {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        verbose: bool,
    },
    /// Validate a group description
    Validate {
        #[arg(long)]
        group_spec: String,
        #[arg(long)]
        verbose: bool,
    },
    /// Run the verification suites
    Verify {
        /// all, recursion, diameter, iso, ends, or limits
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gamma { group, level, recursive, direct, both, output } => {
            let group = group.build()?;
            let _ = direct;
            if both {
                let g1 = level_graph_direct(&group, level)?;
                let g2 = level_graph_recursive(&group, level)?;
                let equal = spinal_core::equal_labeled(&g1, &g2);
                if output.out.is_some() {
                    output.emit(&g1, None)?;
                }
                println!("{}", if equal { "equal" } else { "unequal" });
            } else if recursive {
                output.emit(&level_graph_recursive(&group, level)?, None)?;
            } else {
                output.emit(&level_graph_direct(&group, level)?, None)?;
            }
        }
        Command::Ball { group, xi, radius, output } => {
            let group = group.build()?;
            let xi = BoundaryPoint::parse(group.d(), &xi)?;
            let ball = orbit_ball(&group, &xi, radius)?;
            output.emit(&ball.graph, Some(ball.root))?;
        }
        Command::Delta { group, xi, n, output } => {
            let group = group.build()?;
            let xi = BoundaryPoint::parse(group.d(), &xi)?;
            let copy = level_copy(&group, &xi, n)?;
            output.emit(&copy.graph, Some(copy.root))?;
        }
        Command::Ends { group, xi, verbose } => {
            let group = group.build()?;
            let xi = BoundaryPoint::parse(group.d(), &xi)?;
            let e = ends(&group, &xi);
            if verbose {
                println!("{} ({} end{})", e.count(), e.count(), if e == Ends::One { "" } else { "s" });
            } else {
                println!("{}", e.count());
            }
        }
        Command::Annulus { group, xi, r, big_r } => {
            let group = group.build()?;
            let xi = BoundaryPoint::parse(group.d(), &xi)?;
            println!("{}", annulus_components(&group, &xi, r, big_r)?);
        }
        Command::Limit { group, pi, radius, output } => {
            let group = group.build()?;
            let period = group.omega().period();
            let pi: &Epimorphism = period
                .get(pi)
                .ok_or_else(|| Error::InvalidParameter(format!("period has no index {pi}")))?;
            let ball = limit_graph_ball(&group, pi, radius)?;
            output.emit(&ball.graph, Some(ball.root))?;
        }
        Command::Compat { d, xi, eta, verbose } => {
            let xi = BoundaryPoint::parse(d, &xi)?;
            let eta = BoundaryPoint::parse(d, &eta)?;
            let verdict = compatible(&xi, &eta);
            if verdict.compatible {
                println!("compatible");
            } else {
                let k = verdict.witness_index.expect("incompatible verdicts carry a witness");
                println!("incompatible k={k}");
                if verbose {
                    println!("first structural difference at block {k}");
                }
            }
        }
        Command::Iso { group, xi, eta, radius, rooted, unrooted, labeled, unlabeled, kmax } => {
            let group = group.build()?;
            let xi = BoundaryPoint::parse(group.d(), &xi)?;
            let eta = BoundaryPoint::parse(group.d(), &eta)?;
            let _ = (rooted, unlabeled);
            if unrooted {
                if labeled {
                    return Err(Error::InvalidParameter(
                        "--unrooted only supports --unlabeled".into(),
                    ));
                }
                match unrooted_witness(&xi, &eta, kmax)? {
                    WitnessOutcome::Found(w) => println!("{w}"),
                    WitnessOutcome::NoneCertified => println!("none-certified"),
                    WitnessOutcome::NoneWithinHorizon => println!("none"),
                }
            } else {
                let b1 = orbit_ball(&group, &xi, radius)?;
                let b2 = orbit_ball(&group, &eta, radius)?;
                let found = if labeled {
                    spinal_core::labeled_rooted_iso(&b1, &b2)?.is_some()
                } else {
                    unlabeled_rooted_iso(&b1, &b2)?.is_some()
                };
                println!("{}", if found { "iso" } else { "noniso" });
            }
        }
        Command::Phi { d, xi, eta, point } => {
            let xi = BoundaryPoint::parse(d, &xi)?;
            let eta = BoundaryPoint::parse(d, &eta)?;
            let point = BoundaryPoint::parse(d, &point)?;
            println!("{}", transport(&xi, &eta, &point)?);
        }
        Command::Selfsim { group, verbose } => {
            let group = group.build()?;
            match group.detect_self_similar()? {
                Some(rho) => {
                    println!("{rho}");
                    if verbose {
                        println!("the sequence is generated by this automorphism");
                    }
                }
                None => println!("none"),
            }
        }
        Command::Validate { group_spec, verbose } => match SpinalGroup::parse_spec(&group_spec) {
            Ok(group) => {
                println!("valid");
                if verbose {
                    println!("{group}");
                }
            }
            Err(Error::NotFaithful { index }) => println!("invalid i={index}"),
            Err(other) => return Err(other),
        },
        Command::Verify { suite, seed } => {
            let results = verify::run_suite(&suite, seed)?;
            let mut failures = 0;
            for (name, pass) in &results {
                println!("{}: {}", name, if *pass { "PASS" } else { "FAIL" });
                if !pass {
                    failures += 1;
                }
            }
            println!("{} checks, {failures} failed", results.len());
            if failures > 0 {
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
