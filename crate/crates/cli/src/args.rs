use std::path::PathBuf;

use bienergy_core::harness::SignQuantity;
use bienergy_core::{Error, FamilySpec, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "bienergy", version, about = "Energy of bipartite bicyclic graphs: polynomials, closed forms, comparisons")]
pub struct Cli {
    /// Emit one JSON object with a "records" array instead of CSV.
    #[arg(long, global = true)]
    pub json: bool,
    /// Decimal digits for high-precision closed-form evaluation (default 150).
    #[arg(long, global = true)]
    pub precision_digits: Option<usize>,
    /// Sign grid points per decade (default 60).
    #[arg(long, global = true)]
    pub grid_density: Option<usize>,
    /// Upper bound on orders: scan cap on a + b (default 100), largest n in
    /// sign grids (default 60), largest family order in verify (default 40).
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    /// Worker threads (default: one per core).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Permit extremal enumeration at n = 14.
    #[arg(long, global = true)]
    pub allow_large: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the characteristic polynomial as "deg c_deg ... c_0".
    Charpoly(GraphArgs),
    /// Energy by certified eigenvalues and/or the Coulson integral.
    Energy {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Compare E(P66(n)) with E(R(n-t,t)).
    Compare {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
    },
    /// Compare every valid pair with a + b <= max-sum.
    Scan {
        #[arg(long)]
        max_sum: usize,
    },
    /// Sign checks of K and f on the sign grid.
    Signgrid {
        #[arg(long, value_parser = parse_quantity)]
        quantity: SignQuantity,
        /// Comma separated values of t (default 10,14,18,22).
        #[arg(long, value_delimiter = ',')]
        t_list: Option<Vec<usize>>,
    },
    /// Rank all connected bipartite bicyclic graphs of order n by energy.
    Extremal {
        #[arg(long)]
        n: usize,
    },
    /// Run every identity and invariant check.
    Verify,
    /// Regenerate the golden fixture files.
    UpdateFixtures {
        #[arg(long, default_value = "crates/core/tests/fixtures")]
        dir: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Method {
    Eigen,
    Coulson,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    Path,
    Cycle,
    Tadpole,
    P66,
    R,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long, value_enum, conflicts_with = "file")]
    pub family: Option<Family>,
    /// Order of the graph (for R, the total a + b).
    #[arg(long)]
    pub n: Option<usize>,
    /// Cycle length: the tadpole cycle, or b in R(n - t, t).
    #[arg(long)]
    pub t: Option<usize>,
    /// Edge-list file: header "n m", then one "u v" per line.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl GraphArgs {
    pub fn spec(&self) -> Result<FamilySpec> {
        let family = self
            .family
            .ok_or_else(|| Error::Usage("give --family with --n, or --file".into()))?;
        let n = self.n.ok_or_else(|| Error::Usage("--family needs --n".into()))?;
        let t = || self.t.ok_or_else(|| Error::Usage("this family needs --t".into()));
        let spec = match family {
            Family::Path => FamilySpec::Path(n),
            Family::Cycle => FamilySpec::Cycle(n),
            Family::Tadpole => FamilySpec::Tadpole { n, cycle: t()? },
            Family::P66 => FamilySpec::P66(n),
            Family::R => {
                let t = t()?;
                if t >= n {
                    return Err(Error::Domain(format!("R needs t < n (got n = {n}, t = {t})")));
                }
                FamilySpec::R { a: n - t, b: t }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_quantity(s: &str) -> std::result::Result<SignQuantity, String> {
    s.parse().map_err(|e: Error| e.to_string())
}
