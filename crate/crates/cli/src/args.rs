use clap::{Args, Parser, Subcommand, ValueEnum};

pub const DEFAULT_SEED: u64 = k3_frobenius::acceptance::DEFAULT_SEED;

#[derive(Parser, Debug)]
#[command(name = "k3frob", version, about = "Quadratic forms, K3 lattice families, Frobenius algebra models and orbifold products")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every random choice; echoed in the report.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rational quadratic forms.
    #[command(subcommand)]
    Qf(Qf),
    /// K3 lattices and twist families.
    #[command(subcommand)]
    K3(K3),
    /// Frobenius algebra models.
    #[command(subcommand)]
    Frob(Frob),
    /// Symmetric-group combinatorics and the orbifold product.
    #[command(subcommand)]
    Orb(Orb),
    /// Named suites.
    #[command(subcommand)]
    Suite(Suite),
}

/// A form or lattice: a catalog name, inline JSON, or a path to a JSON file.
/// JSON is `{"gram": [[...]]}` or a bare matrix; entries may be strings like "3/2".
#[derive(Args, Debug)]
pub struct FormInput {
    #[arg(long, short)]
    pub input: String,
}

#[derive(Subcommand, Debug)]
pub enum Qf {
    /// Rank, signature, discriminant and Hasse invariants.
    Invariants(FormInput),
    /// Whether two forms are equivalent over Q.
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Compares Q with its twist Q(m).
    Twist {
        #[command(flatten)]
        form: FormInput,
        #[arg(long)]
        m: String,
    },
    /// The twist-lemma class of a form.
    LemmaClass(FormInput),
}

#[derive(Subcommand, Debug)]
pub enum K3 {
    /// Twists of <8,8> by primes 3 mod 4.
    FamilyA {
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Twists of an even lattice by primes 1 mod 4.
    FamilyB {
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Transcendental lattice; defaults to U+U.
        #[arg(long, short)]
        input: Option<String>,
    },
    /// The recurrence m_1 = 1, m_(j+1) = prod (2 m_l^4 + 1) with norm-group checks.
    LemEl {
        #[arg(long, default_value_t = 4)]
        count: usize,
    },
    /// The explicit Fermat solutions and their obstruction values.
    Fermat {
        /// A single m; otherwise 1..=count.
        #[arg(long)]
        m: Option<u64>,
        #[arg(long, default_value_t = 20)]
        count: u64,
    },
    /// Whether L(c) can be isometric to L.
    ScaleCheck {
        /// Lattice; defaults to K3_Lambda.
        #[arg(long, short)]
        input: Option<String>,
        /// A single scale; otherwise every c in [-10, 10] \ {0}.
        #[arg(long, allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Built-in lattices.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
}

#[derive(Args, Debug)]
pub struct ModelChoice {
    /// `default`, `rank-one`, `exterior`, `odd`, a model descriptor JSON, or a path to one.
    #[arg(long, default_value = "default")]
    pub model: String,
    /// Genus for the exterior model.
    #[arg(long, default_value_t = 1)]
    pub g: usize,
}

#[derive(Subcommand, Debug)]
pub enum Frob {
    /// Checks unit, grading, associativity, super-commutativity and the Frobenius condition.
    Axioms {
        #[command(flatten)]
        model: ModelChoice,
        /// Also check the five one-constant mutations of the model.
        #[arg(long)]
        mutations: bool,
    },
    /// Classifies a map given as JSON, or `--count` generated maps on the default model.
    Classify {
        /// `{"matrix": [[...]], "source": model, "target": model}`; models default to the K3 model.
        #[arg(long, short)]
        input: Option<String>,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
    /// The small-diagonal identity and the Euler class.
    Bv {
        #[command(flatten)]
        model: ModelChoice,
    },
    /// Assembles Γ from an NS isometry and a transcendental isometry of the default model.
    Assemble {
        /// `{"ns": [[...]], "tr": [[...]]}`; missing blocks are identities.
        #[arg(long, short)]
        input: Option<String>,
    },
    /// γ = wedge powers of f1/λ on the cohomology of an abelian variety.
    Abelian {
        #[arg(long, default_value_t = 1)]
        g: usize,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        lambda: String,
        /// 2g x 2g integer matrix as JSON; defaults to the identity.
        #[arg(long)]
        f1: Option<String>,
    },
    /// Solvability of b^2 = a^d s for Calabi-Yau scalings.
    Cy {
        #[arg(long, default_value_t = 3)]
        d: u32,
        #[arg(long)]
        s: String,
        #[arg(long, default_value = "rationals")]
        field: String,
        #[arg(long)]
        frobenius: bool,
    },
}

#[derive(Args, Debug)]
pub struct PairArgs {
    #[arg(long)]
    pub n: usize,
    /// Cycle notation, 1-based, e.g. "(1 2)(3 4)".
    #[arg(long)]
    pub g: String,
    #[arg(long)]
    pub h: String,
}

#[derive(Subcommand, Debug)]
pub enum Orb {
    /// Graph defects of the joint orbits of g and h.
    Defect(PairArgs),
    /// The discrete-torsion sign ε(g, h).
    Epsilon(PairArgs),
    /// x ⋆ y for sector elements given as JSON `{"x": ..., "y": ...}`.
    Star {
        #[arg(long)]
        n: usize,
        #[arg(long, short)]
        input: String,
    },
    /// Dimensions of the S_n-invariants by degree, compared with the Betti oracle.
    InvariantDim {
        #[arg(long)]
        n: usize,
    },
    /// Random associativity trials.
    Associativity {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Betti numbers of Hilb^n(K3) from the generating function.
    Oracle {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Runs the ten acceptance criteria.
    Acceptance,
}
