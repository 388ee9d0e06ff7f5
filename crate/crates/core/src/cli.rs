use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::disk::{CatalogBounds, CatalogDocument, DiskCatalog, DEFAULT_MAX_DISKS};
use crate::error::{Error, Result};
use crate::retraction::{certify_catalog, CertifyConfig};
use crate::simplicial::{reduced_homology, FlagComplex, DEFAULT_MAX_SIMPLICES};
use crate::surface::{ArcClass, TubedSurface, DEFAULT_MAX_ARCS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "minsurf", version, about = "Disk complexes of tubed surfaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write the surface, arc and disk catalogs for a tubed surface.
    Build(BuildArgs),
    /// Build the retraction onto the sphere and write a certificate.
    Certify(CertifyArgs),
    /// Reduced homology of a flag complex given as JSON.
    Homology(HomologyArgs),
}

#[derive(Args, Debug)]
pub struct Bounds {
    /// Genus of each copy of the base surface.
    #[arg(long)]
    pub genus: u32,
    /// Longest arc code used for vertical disks.
    #[arg(long, default_value_t = 2)]
    pub arc_bound: usize,
    /// Deepest nesting of band sums.
    #[arg(long, default_value_t = 1)]
    pub bandsum_depth: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_ARCS)]
    pub max_arcs: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_DISKS)]
    pub max_disks: usize,
}

impl Bounds {
    fn catalog_bounds(&self) -> CatalogBounds {
        CatalogBounds {
            arc_bound: self.arc_bound,
            bandsum_depth: self.bandsum_depth,
            max_arcs: self.max_arcs,
            max_disks: self.max_disks,
        }
    }
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub bounds: Bounds,
    /// Number of tubes.
    #[arg(long)]
    pub tubes: usize,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[command(flatten)]
    pub bounds: Bounds,
    /// Sphere dimension n; the surface has n + 1 tubes.
    #[arg(long)]
    pub tubes: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_SIMPLICES)]
    pub max_simplices: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use this catalog for the top surface instead of enumerating one.
    #[arg(long)]
    pub disks: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct HomologyArgs {
    pub complex: PathBuf,
    #[arg(long, default_value_t = 3)]
    pub d_max: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_SIMPLICES)]
    pub max_simplices: usize,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Serialize)]
struct ArcsDocument<'a> {
    genus: u32,
    arc_bound: usize,
    arcs: &'a [ArcClass],
}

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ResourceLimit { .. } => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn parse<T: serde::de::DeserializeOwned>(
    path: &Path,
    text: &str,
) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn write(dir: &Path, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

fn build(args: &BuildArgs) -> std::result::Result<i32, Failure> {
    let s = TubedSurface::new(args.bounds.genus, args.tubes)?;
    let catalog = DiskCatalog::build(&s, args.bounds.catalog_bounds())?;
    let arcs = serde_json::to_string_pretty(&ArcsDocument {
        genus: s.base_genus,
        arc_bound: args.bounds.arc_bound,
        arcs: &catalog.arcs,
    })
    .map_err(Error::from)?;
    write(&args.out, "surface.json", &s.to_json())?;
    write(&args.out, "arcs.json", &arcs)?;
    write(&args.out, "disks.json", &catalog.to_json())?;
    println!(
        "F{}: genus {}, {} arcs, {} disks, {} disjoint pairs",
        s.tubes,
        s.genus(),
        catalog.arcs.len(),
        catalog.len(),
        catalog.edges().len()
    );
    Ok(EXIT_OK)
}

fn certify(args: &CertifyArgs) -> std::result::Result<i32, Failure> {
    let cfg = CertifyConfig {
        genus: args.bounds.genus,
        n: args.tubes,
        arc_bound: args.bounds.arc_bound,
        bandsum_depth: args.bounds.bandsum_depth,
        max_simplices: args.max_simplices,
        max_arcs: args.bounds.max_arcs,
        max_disks: args.bounds.max_disks,
        seed: args.seed,
    };
    let top = match &args.disks {
        Some(path) => {
            let doc: CatalogDocument = parse(path, &read(path)?)?;
            if doc.arc_bound != cfg.arc_bound || doc.bandsum_depth != cfg.bandsum_depth {
                return Err(Failure {
                    code: EXIT_INPUT,
                    message: format!(
                        "{}: catalog bounds ({}, {}) differ from the requested ({}, {})",
                        path.display(),
                        doc.arc_bound,
                        doc.bandsum_depth,
                        cfg.arc_bound,
                        cfg.bandsum_depth
                    ),
                });
            }
            DiskCatalog::from_document(&doc, cfg.max_arcs, cfg.max_disks)?
        }
        None => {
            let s = TubedSurface::new(cfg.genus, cfg.n + 1)?;
            DiskCatalog::build(&s, cfg.bounds())?
        }
    };
    let cert = certify_catalog(&top, &cfg)?;
    let text = cert.render_text();
    if let Some(out) = &args.out {
        write(out, "certificate.json", &cert.to_json())?;
        write(out, "report.txt", &text)?;
    }
    print!("{text}");
    Ok(if cert.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn homology(args: &HomologyArgs) -> std::result::Result<i32, Failure> {
    let doc = parse(&args.complex, &read(&args.complex)?)?;
    let c = FlagComplex::from_document(&doc)?;
    let profile = reduced_homology(&c, args.d_max, args.max_simplices)?;
    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&profile).map_err(Error::from)?
        );
    } else {
        print!("{profile}");
    }
    Ok(EXIT_OK)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = match &cli.command {
        Command::Build(a) => build(a),
        Command::Certify(a) => certify(a),
        Command::Homology(a) => homology(a),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
