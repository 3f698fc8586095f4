//! The lifting strategy: sections of the cleft object, the cleft relations, the
//! lifted power relations, and comparison against reference relation lists.

mod compare;
mod relations;
mod sections;

use std::sync::Arc;

pub use compare::{compare, parse_reference, reference_element, ComparisonReport, ReferenceRelation, ReferenceTerm, RelationDiff, TermDiff};
pub use relations::{
    assemble_lifting, cleft_relations, generic_relations, lifting_presentation, lifting_relation, reduce_right, LiftingPresentation, Relation,
};
pub use sections::{section_gamma, Section, SectionTable, SECTION_ORDER};

use crate::engine::{EngineError, GeneratorMap, Kind, Presentation};
use crate::presentations::{build, build_certified, BuildError, OverlapReport, PowerTails};
use crate::rootdata::{BraidingConfig, Root, ROOTS};
use crate::scalars::Param;
use crate::structure::{power_coproduct, PowerCoproduct, StructureError};

#[derive(Debug, thiserror::Error)]
pub enum LiftError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("section for x_{0}^N is not known yet")]
    MissingSection(Root),
    #[error("left leg {0} is not a product of root-vector powers")]
    NotRootPower(String),
    #[error("section solve failed for {0}: {1}")]
    SectionSolveFailure(Root, String),
    #[error("lift solve failed for {0}: {1}")]
    LiftSolveFailure(Root, String),
    #[error("bad reference: {0}")]
    BadReference(String),
    #[error("presentation {0} is not confluent ({1} unresolved overlaps)")]
    NotConfluent(&'static str, usize),
}

/// The algebras and maps used by the lifting computation at one braiding and one
/// choice of active `lambda` parameters.
pub struct LiftContext {
    pub config: BraidingConfig,
    pub lambda: Vec<Param>,
    pub pre: Arc<Presentation>,
    pub cleft: Arc<Presentation>,
    pub lift: Arc<Presentation>,
    pub coproduct: GeneratorMap,
    pub rho: GeneratorMap,
    pub delta: GeneratorMap,
}

impl std::fmt::Debug for LiftContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LiftContext").field("config", &self.config).field("lambda", &self.lambda).finish()
    }
}

impl LiftContext {
    pub fn new(config: BraidingConfig, lambda: &[Param]) -> Result<Self, LiftError> {
        let lambda: Vec<Param> = lambda.iter().copied().filter(|p| matches!(p, Param::L1 | Param::L2)).collect();
        let pre = Arc::new(build(Kind::PreNichols, config, &[], None)?);
        let (cleft, rep) = build_certified(Kind::CleftLambda, config, &lambda, None)?;
        if !rep.all_resolved {
            return Err(LiftError::NotConfluent(Kind::CleftLambda.name(), rep.unresolved()));
        }
        let (lift, rep) = build_certified(Kind::LiftLambda, config, &lambda, None)?;
        if !rep.all_resolved {
            return Err(LiftError::NotConfluent(Kind::LiftLambda.name(), rep.unresolved()));
        }
        Ok(LiftContext {
            config,
            coproduct: GeneratorMap::coproduct(pre.clone()),
            rho: GeneratorMap::new(cleft.clone(), cleft.clone(), pre.clone()),
            delta: GeneratorMap::new(cleft.clone(), lift.clone(), cleft.clone()),
            lambda,
            pre,
            cleft,
            lift,
        })
    }

    /// The active `lambda` parameters and every admissible `mu_alpha`.
    pub fn params(&self) -> Vec<Param> {
        let mut out = self.lambda.clone();
        out.extend(ALL_MU.iter().copied().filter(|p| self.config.admissible(*p)));
        out
    }

    pub fn power_coproduct(&self, root: Root) -> Result<PowerCoproduct, LiftError> {
        Ok(power_coproduct(&self.coproduct, root)?)
    }

    /// Solves all six sections in dependency order.
    pub fn sections(&self) -> Result<(SectionTable, Vec<Section>), LiftError> {
        let mut table = SectionTable::default();
        let mut out = Vec::new();
        for r in SECTION_ORDER {
            let pc = self.power_coproduct(r)?;
            let s = section_gamma(r, &self.rho, &pc.tensor, &table)?;
            table.sections[r.rank()] = Some(s.element.clone());
            out.push(s);
        }
        Ok((table, out))
    }

    /// `E(lambda, mu)`: the cleft algebra with the power relations of `rels` as rules.
    pub fn cleft_mu(&self, rels: &LiftingPresentation, mu: &[Param]) -> Result<Arc<Presentation>, LiftError> {
        self.bounded(Kind::CleftLambdaMu, rels, mu)
    }

    /// `u(lambda, mu)`: the lifted algebra with the power relations of `rels` as rules.
    pub fn lift_mu(&self, rels: &LiftingPresentation, mu: &[Param]) -> Result<Arc<Presentation>, LiftError> {
        self.bounded(Kind::LiftLambdaMu, rels, mu)
    }

    fn bounded(&self, kind: Kind, rels: &LiftingPresentation, mu: &[Param]) -> Result<Arc<Presentation>, LiftError> {
        let tails: PowerTails = std::array::from_fn(|i| rels.relation(ROOTS[i]).map(|r| r.rhs.clone()));
        let mut params = self.lambda.clone();
        params.extend_from_slice(mu);
        let (p, rep) = bounded_presentation(kind, self.config, &params, tails)?;
        if !rep.all_resolved {
            return Err(LiftError::NotConfluent(kind.name(), rep.unresolved()));
        }
        Ok(p)
    }
}

/// Builds a presentation with power rules whose tails are first normalized against
/// each other, and checks its overlaps.
pub fn bounded_presentation(
    kind: Kind,
    config: BraidingConfig,
    params: &[Param],
    mut tails: PowerTails,
) -> Result<(Arc<Presentation>, OverlapReport), LiftError> {
    for _ in 0..ROOTS.len() {
        let p = build(kind, config, params, Some(&tails))?;
        let mut next = tails.clone();
        for t in next.iter_mut().flatten() {
            *t = p.reduce(t)?;
        }
        if next == tails {
            break;
        }
        tails = next;
    }
    Ok(build_certified(kind, config, params, Some(&tails))?)
}

/// All six deformation parameters `mu_alpha`.
pub const ALL_MU: [Param; 6] = [Param::M1, Param::M2, Param::M12, Param::M112, Param::M1112, Param::MBeta];
