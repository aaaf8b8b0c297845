//! Construction of modules and rings from command-line arguments.

use std::fs;

use askzeta::ask::random_units;
use askzeta::boardgame::FamilyKind;
use askzeta::colouring::{parse_grid_file, GridFile, PartialColouring, UnitAssignment};
use askzeta::gallery;
use askzeta::modrep::{
    alpha_rep, alphahat_rep, altboard_rep, board_rep, board_rep_last_pivot, classic_rep, family_rep, ltr_rep, symboard_rep,
    Classic, ModuleRepresentation,
};
use askzeta::nilpotent::{adjoint_rep, commutator_rep, free_nilpotent_lie};
use askzeta::{Error, Result, RingSpec};
use clap::Args;
use rand_chacha::ChaCha8Rng;

#[derive(Args, Debug, Clone, Default)]
pub struct ModuleArgs {
    /// Construction: board, board-last-pivot, altboard, symboard, rho, gamma,
    /// sigma, alpha, alphahat, ltr, adjoint, commutator, staircase.
    #[arg(long)]
    pub module: Option<String>,
    /// Classical module: mat, alt, sym, sl, tr.
    #[arg(long)]
    pub classic: Option<String>,
    /// Representation JSON file.
    #[arg(long)]
    pub rep: Option<String>,
    /// Grid file for the board constructions.
    #[arg(long)]
    pub grid: Option<String>,
    /// Built-in grid instead of a file: a, b, c, d, quartic, quintic, sl<d>.
    #[arg(long)]
    pub named: Option<String>,
    /// Replace the grid's units by seeded random units (needs a prime).
    #[arg(long)]
    pub random_units: bool,
    #[arg(long)]
    pub d: Option<usize>,
    #[arg(long)]
    pub e: Option<usize>,
    /// Row index set for rho/gamma/sigma, e.g. 1,2,3.
    #[arg(long)]
    pub rows: Option<String>,
    /// Column index set for rho/gamma/sigma.
    #[arg(long)]
    pub cols: Option<String>,
    /// Free nilpotent algebra "class,generators" for adjoint/commutator.
    #[arg(long)]
    pub free_nilpotent: Option<String>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RingArgs {
    /// Residue characteristic.
    #[arg(long)]
    pub prime: Option<u64>,
    /// Exponent n of Z/p^n.
    #[arg(long)]
    pub n: Option<u32>,
    /// Degree f of the field extension F_{p^f}.
    #[arg(long)]
    pub f: Option<u32>,
    /// Field of order q (a prime power).
    #[arg(long)]
    pub q: Option<u64>,
}

impl RingArgs {
    pub fn ring(&self) -> Result<RingSpec> {
        match (self.q, self.prime) {
            (Some(q), None) if self.n.is_none() && self.f.is_none() => RingSpec::field_of_order(q),
            (None, Some(p)) => match (self.n, self.f) {
                (Some(_), Some(_)) => Err(Error::InvalidParameter("give at most one of --n and --f".into())),
                (None, Some(f)) => RingSpec::ext_field(p, f),
                (n, None) => RingSpec::padic(p, n.unwrap_or(1)),
            },
            _ => Err(Error::InvalidParameter("give --prime [--n k | --f f] or --q".into())),
        }
    }
}

pub fn parse_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse::<usize>().map_err(|_| Error::InvalidParameter(format!("{s:?} is not an index"))))
        .collect()
}

pub fn read_text(path: &str) -> Result<String> {
    fs::read_to_string(path).map_err(|err| Error::InvalidParameter(format!("cannot read {path}: {err}")))
}

pub fn read_rep(path: &str) -> Result<ModuleRepresentation> {
    let text = read_text(path)?;
    let v: serde_json::Value = serde_json::from_str(&text)
        .map_err(|err| Error::ParseError { line: err.line(), col: err.column(), msg: err.to_string() })?;
    ModuleRepresentation::from_json(&v)
}

pub fn parse_free(text: &str) -> Result<(u32, usize)> {
    let parts = parse_list(text)?;
    match parts[..] {
        [c, d] => Ok((c as u32, d)),
        _ => Err(Error::InvalidParameter("expected class,generators".into())),
    }
}

/// Grid from --grid or --named.
pub fn load_grid(args: &ModuleArgs) -> Result<GridFile> {
    if let Some(path) = &args.grid {
        return parse_grid_file(&read_text(path)?);
    }
    let name = args.named.as_deref().ok_or_else(|| Error::InvalidParameter("give --grid or --named".into()))?;
    let colouring = named_grid(name)?;
    let units = UnitAssignment::ones(colouring.rows(), colouring.cols());
    Ok(GridFile { family: None, colouring, units })
}

fn named_grid(name: &str) -> Result<PartialColouring> {
    if let Some(d) = name.strip_prefix("sl") {
        let d = d.parse().map_err(|_| Error::InvalidParameter(format!("bad grid name {name:?}")))?;
        return Ok(gallery::sl_colouring(d));
    }
    gallery::named(name).ok_or_else(|| Error::InvalidParameter(format!("unknown grid {name:?}")))
}

fn need(v: Option<usize>, what: &str) -> Result<usize> {
    v.ok_or_else(|| Error::InvalidParameter(format!("this module needs --{what}")))
}

/// Builds the module. `rng` and `prime` are needed for --random-units.
pub fn build_module(args: &ModuleArgs, prime: Option<u64>, rng: &mut ChaCha8Rng) -> Result<ModuleRepresentation> {
    let chosen = [args.module.is_some(), args.classic.is_some(), args.rep.is_some()].iter().filter(|&&b| b).count();
    if chosen != 1 {
        return Err(Error::InvalidParameter("give exactly one of --module, --classic, --rep".into()));
    }
    if let Some(path) = &args.rep {
        return read_rep(path);
    }
    if let Some(kind) = &args.classic {
        let kind = Classic::parse(kind)?;
        let d = need(args.d, "d")?;
        let e = match kind {
            Classic::Mat => need(args.e, "e")?,
            _ => d,
        };
        return Ok(classic_rep(kind, d, e));
    }
    let kind = args.module.as_deref().unwrap();
    match kind {
        "board" | "board-last-pivot" | "altboard" | "symboard" => {
            let grid = load_grid(args)?;
            let beta = &grid.colouring;
            let units = if args.random_units {
                let p = prime.ok_or_else(|| Error::InvalidParameter("--random-units needs --prime".into()))?;
                random_units(beta.rows(), beta.cols(), p, rng)
            } else {
                grid.units.clone()
            };
            match kind {
                "board" => board_rep(beta, &units),
                "board-last-pivot" => board_rep_last_pivot(beta, &units),
                "altboard" => altboard_rep(beta, &units),
                _ => symboard_rep(beta, &units),
            }
        }
        "rho" | "gamma" | "sigma" => {
            let fam = FamilyKind::parse(kind)?;
            let rows = parse_list(args.rows.as_deref().ok_or_else(|| Error::InvalidParameter("needs --rows".into()))?)?;
            let cols = match &args.cols {
                Some(c) => parse_list(c)?,
                None => rows.clone(),
            };
            Ok(family_rep(fam, &rows, &cols))
        }
        "alpha" => Ok(alpha_rep(need(args.d, "d")?)),
        "alphahat" => Ok(alphahat_rep(need(args.d, "d")?)),
        "ltr" => Ok(ltr_rep(need(args.d, "d")?)),
        "staircase" => Ok(gallery::staircase_rep()),
        "adjoint" | "commutator" => {
            let spec = args.free_nilpotent.as_deref().ok_or_else(|| Error::InvalidParameter("needs --free-nilpotent".into()))?;
            let (c, d) = parse_free(spec)?;
            let g = free_nilpotent_lie(d, c)?;
            Ok(if kind == "adjoint" { adjoint_rep(&g) } else { commutator_rep(&g) })
        }
        other => Err(Error::InvalidParameter(format!("unknown module {other:?}"))),
    }
}
