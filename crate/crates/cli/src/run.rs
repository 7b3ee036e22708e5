use std::fs;
use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use nlpoly::cycles::{cycle_structure, predict_linear_case, DEFAULT_CYCLE_BUDGET};
use nlpoly::family::{parse_base_scalar, FamilySpec};
use nlpoly::involution::{build_involution, find_shift, sparse_involution_in, InvolutionSpec};
use nlpoly::linpoly::format::{PolyBody, PolyFile};
use nlpoly::nlp::{nilpotency_index, nilpotency_index_by_matrix, NlpCertificate, NlpFamily};
use nlpoly::perm::{
    absolute_trace, build_general, build_perm_with_budget, comp_inverse, is_complete, linear_order,
    predicted_order, AffinePerm, PermSpec, DEFAULT_ORDER_BUDGET,
};
use nlpoly::sbox::{export_sbox, SboxFormat, DEFAULT_TABLE_BUDGET};
use nlpoly::{Field, FieldElement, LinearizedPoly};

use crate::{Command, Opts};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] nlpoly::Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Lib(e) => e.code(),
            CliError::Usage(_) => "USAGE",
            CliError::Io(_) => "IO",
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage<T>(msg: &str) -> Result<T> {
    Err(CliError::Usage(msg.to_string()))
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Construct(o) => construct(&o),
        Command::Verify(o) => verify(&o),
        Command::Perm(o) => perm(&o),
        Command::Cycles(o) => cycles(&o),
        Command::Involution(o) => involution(&o),
        Command::Export(o) => export(&o),
    }
}

/// The field, family and polynomial file named by the options.
struct Inputs {
    field: Field,
    family: Option<FamilySpec>,
    file: Option<PolyFile>,
}

impl Inputs {
    fn load(o: &Opts) -> Result<Self> {
        let file = match &o.poly {
            Some(path) => Some(PolyFile::parse(&fs::read_to_string(path)?)?),
            None => None,
        };
        let field = match (&o.field, &file) {
            (Some(spec), Some(file)) => {
                let field = Field::parse(spec)?;
                field.check_same(file.body.field())?;
                field
            }
            (Some(spec), None) => Field::parse(spec)?,
            (None, Some(file)) => file.body.field().clone(),
            (None, None) => return usage("--field or --poly is required"),
        };
        let family = o.family.as_deref().map(str::parse).transpose()?;
        Ok(Self { field, family, file })
    }

    fn family_name(&self) -> String {
        self.family
            .as_ref()
            .map_or_else(|| NlpFamily::Custom.to_string(), FamilySpec::to_string)
    }

    fn poly(&self) -> Result<LinearizedPoly> {
        match self.file.as_ref().map(|f| &f.body) {
            Some(PolyBody::Linearized(l)) => Ok(l.clone()),
            Some(PolyBody::Conventional(c)) => Ok(c.to_linearized()),
            None => usage("--family or --poly is required"),
        }
    }

    fn nlp(&self) -> Result<NlpCertificate> {
        match &self.family {
            Some(family) => Ok(family.build(&self.field)?),
            None => Ok(NlpCertificate::new(self.poly()?, NlpFamily::Custom)?),
        }
    }
}

fn budget(o: &Opts, default: u64) -> u64 {
    o.budget.unwrap_or(default)
}

/// Writes to `--out` when given, else to standard output.
fn emit(o: &Opts, bytes: &[u8]) -> Result<()> {
    match &o.out {
        Some(path) => fs::write(path, bytes)?,
        None => io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn join_indices(l: &LinearizedPoly) -> String {
    let parts: Vec<String> = l.coeff_indices().iter().map(u64::to_string).collect();
    parts.join(" ")
}

fn construct(o: &Opts) -> Result<()> {
    let inputs = Inputs::load(o)?;
    let cert = inputs.nlp()?;
    let file = PolyFile::linearized(cert.poly().clone())
        .with_meta("display", cert.poly())
        .with_meta("family", inputs.family_name())
        .with_meta("index", cert.index())
        .with_meta("witness", cert.witness().index());
    emit(o, file.to_string().as_bytes())
}

fn verify(o: &Opts) -> Result<()> {
    let inputs = Inputs::load(o)?;
    let poly = match &inputs.family {
        Some(family) => family.build(&inputs.field)?.poly().clone(),
        None => inputs.poly()?,
    };
    let index = nilpotency_index(&poly);
    if index != nilpotency_index_by_matrix(&poly) {
        return Err(nlpoly::Error::InternalInconsistency("symbolic and matrix indices differ".into()).into());
    }
    let mut out = format!("display {poly}\n");
    match index {
        Some(1) => return Err(nlpoly::Error::ZeroPolynomial.into()),
        Some(t) => out += &format!("index {t}\n"),
        None => out += "index none\n",
    }
    if let Some(target) = o.t {
        let ok = index.is_some_and(|i| i <= target);
        out += &format!("nilpotent_{target} {ok}\n");
        emit(o, out.as_bytes())?;
        if !ok {
            return Err(nlpoly::Error::NotNilpotent.into());
        }
        return Ok(());
    }
    emit(o, out.as_bytes())
}

fn base_scalar(field: &Field, text: &Option<String>) -> Result<Option<FieldElement>> {
    Ok(text.as_deref().map(|t| parse_base_scalar(field, t)).transpose()?)
}

/// `L + k` from the options, with γ when `k = γx`.
fn perm_spec(o: &Opts, inputs: &Inputs) -> Result<(PermSpec, Option<FieldElement>)> {
    let field = &inputs.field;
    let alpha = base_scalar(field, &o.alpha)?;
    let beta = base_scalar(field, &o.beta)?;
    let gamma = base_scalar(field, &o.gamma)?;
    let order_budget = budget(o, DEFAULT_ORDER_BUDGET);
    match (alpha, beta, gamma) {
        (Some(alpha), Some(beta), None) => {
            if let Some(FamilySpec::BaseField { r, t }) = &inputs.family {
                let r = FamilySpec::base_r(field, r)?;
                return Ok((build_general(&r, *t, &alpha, &beta)?, None));
            }
            for c in [&alpha, &beta] {
                if c.is_zero() {
                    return Err(nlpoly::Error::AlphaBetaNotInBaseField.into());
                }
            }
            let k = &absolute_trace(field).scale(&alpha)? + &LinearizedPoly::scalar(&beta);
            Ok((build_perm_with_budget(inputs.nlp()?, k, order_budget)?, None))
        }
        (None, None, Some(gamma)) => {
            if gamma.is_zero() {
                return Err(nlpoly::Error::GammaNotInBaseFieldStar.into());
            }
            let k = LinearizedPoly::scalar(&gamma);
            Ok((build_perm_with_budget(inputs.nlp()?, k, order_budget)?, Some(gamma)))
        }
        (None, None, None) => {
            let k = LinearizedPoly::identity(field);
            Ok((build_perm_with_budget(inputs.nlp()?, k, order_budget)?, Some(field.one())))
        }
        _ => usage("give --alpha with --beta, or --gamma, or neither"),
    }
}

fn perm(o: &Opts) -> Result<()> {
    let inputs = Inputs::load(o)?;
    let (spec, _) = perm_spec(o, &inputs)?;
    let inverse = comp_inverse(&spec);
    let pred = predicted_order(&spec);
    let actual = linear_order(spec.sum(), budget(o, DEFAULT_ORDER_BUDGET))?;
    let file = PolyFile::linearized(spec.sum().clone())
        .with_meta("display", spec.sum())
        .with_meta("family", inputs.family_name())
        .with_meta("nlp", spec.nlp().poly())
        .with_meta("t", spec.t())
        .with_meta("k", spec.k())
        .with_meta("s", spec.s())
        .with_meta("inverse", &inverse)
        .with_meta("inverse_lin", join_indices(&inverse))
        .with_meta("order_bound", pred.divisor_bound)
        .with_meta("order_exact", pred.exact.map_or("none".into(), |e| e.to_string()))
        .with_meta("order", actual)
        .with_meta("complete", is_complete(&spec));
    emit(o, file.to_string().as_bytes())
}

fn cycles(o: &Opts) -> Result<()> {
    let inputs = Inputs::load(o)?;
    let (spec, gamma) = perm_spec(o, &inputs)?;
    let structure = cycle_structure(&spec.affine(), budget(o, DEFAULT_CYCLE_BUDGET))?;
    let order = structure
        .order()
        .ok_or_else(|| nlpoly::Error::InternalInconsistency("order overflows".into()))?;
    let mut out = format!("display {}\ncycles {structure}\norder {order}\n", spec.sum());
    if let (2, Some(gamma)) = (spec.t(), gamma) {
        let predicted = predict_linear_case(spec.nlp(), &gamma)?;
        out += &format!("predicted {predicted}\nprediction_matches {}\n", predicted == structure);
    }
    emit(o, out.as_bytes())
}

fn involution_spec(o: &Opts, inputs: &Inputs) -> Result<InvolutionSpec> {
    if let (Some(FamilySpec::Sparse { m }), None) = (&inputs.family, o.shift) {
        return Ok(sparse_involution_in(&inputs.field, *m)?);
    }
    let cert = inputs.nlp()?;
    let shift = match o.shift {
        Some(idx) => inputs.field.element(idx)?,
        None => find_shift(&cert)?.ok_or(nlpoly::Error::ShiftInKernelImage)?,
    };
    Ok(build_involution(cert, shift)?)
}

/// Checks `f(f(z)) = z` and `f(z) ≠ z` on every element within the budget,
/// otherwise on `samples` seeded random points. Returns the check label.
fn sanity_check(o: &Opts, f: &AffinePerm) -> Result<String> {
    let order = f.field().order();
    let compiled = f.compile();
    let fail = |z: u64| nlpoly::Error::InternalInconsistency(format!("involution check fails at {z}"));
    let check = |z: u64| {
        let w = compiled.apply(z);
        w != z && compiled.apply(w) == z
    };
    if order <= budget(o, DEFAULT_TABLE_BUDGET) {
        if let Some(z) = (0..order).find(|&z| !check(z)) {
            return Err(fail(z).into());
        }
        Ok(format!("enumerated {order}"))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
        for _ in 0..o.samples {
            let z = rng.gen_range(0..order);
            if !check(z) {
                return Err(fail(z).into());
            }
        }
        Ok(format!("sampled {} seed {}", o.samples, o.seed))
    }
}

fn export_bytes(o: &Opts, map: &AffinePerm, family: &str, format: &str) -> Result<Vec<u8>> {
    let format: SboxFormat = format.parse()?;
    Ok(export_sbox(map, family, format, budget(o, DEFAULT_TABLE_BUDGET))?)
}

fn involution(o: &Opts) -> Result<()> {
    let inputs = Inputs::load(o)?;
    let spec = involution_spec(o, &inputs)?;
    let family = inputs.family_name();
    if let Some(format) = &o.export {
        sanity_check(o, spec.map())?;
        return emit(o, &export_bytes(o, spec.map(), &family, format)?);
    }
    let checked = sanity_check(o, spec.map())?;
    let file = PolyFile::linearized(spec.map().linear().clone())
        .with_meta("display", format!("{} + [{}]", spec.map().linear(), spec.shift().index()))
        .with_meta("family", family)
        .with_meta("nlp", spec.nlp().poly())
        .with_meta("shift", spec.shift().index())
        .with_meta("involution", spec.map().is_involution())
        .with_meta("fixed_point_free", spec.certify_fixed_point_free())
        .with_meta("checked", checked);
    emit(o, file.to_string().as_bytes())
}

fn export(o: &Opts) -> Result<()> {
    let Some(format) = &o.export else {
        return usage("export needs --export raw|carray|json");
    };
    let inputs = Inputs::load(o)?;
    let family = inputs.family_name();
    let map = if o.involution || matches!(inputs.family, Some(FamilySpec::Sparse { .. })) {
        involution_spec(o, &inputs)?.map().clone()
    } else {
        perm_spec(o, &inputs)?.0.affine()
    };
    emit(o, &export_bytes(o, &map, &family, format)?)
}
