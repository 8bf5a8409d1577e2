"""
Identity catalogue: which checks run on which frame and how each one is
dispatched
"""
import logging
from dataclasses import dataclass
from typing import Callable

from ..core.errors import SpecParseError
from ..core.sampling import RationalSampler, SampleTally
from ..geometry import cones, gm_families, twisted
from ..geometry.context import ConeContext
from ..models.enums import IdentityId
from . import certificates, structure

logger = logging.getLogger(__name__)

Runner = Callable[[ConeContext, IdentityId, int, RationalSampler], SampleTally]

PLAIN = "plain"
TWISTED = "twisted"


@dataclass(frozen=True)
class CatalogueEntry:
    identity: IdentityId
    group: str
    frames: frozenset
    runner: Runner
    description: str


def _certificates(ctx, identity_id, n_samples, sampler):
    return certificates.verify_certificates(ctx, n_samples, sampler)


DESCRIPTIONS = {
    IdentityId.ROOT_SYSTEM: "closure, reflections and Cartan data of the realization",
    IdentityId.POSITIVITY: "positivity of projected roots and coweights on a_P^Q",
    IdentityId.ANGLES: "Delta_P^Q obtuse, hat-Delta_P^Q acute",
    IdentityId.BINOMIAL: "alternating sum over [P, R] vanishes unless P = R",
    IdentityId.INVERSIONS: "inversion sets and lengths",
    IdentityId.COSETS: "minimal coset representatives and double cosets",
    IdentityId.WEYL_SETS: "W(a_P, a_Q) and W(a_P, R)",
    IdentityId.FACETS: "F(M) as a disjoint union of intervals",
    IdentityId.REGROUPING: "regrouping of sums over (R, s)",
    IdentityId.WEYL_LEVI: "W(M) homomorphism and n(M)/w(M)",
    IdentityId.FAMILIES: "orthogonal families and path decomposition",
    IdentityId.TAU_LE_TAU_HAT: "tau_P^Q <= hat-tau_P^Q",
    IdentityId.LANGLANDS: "Langlands combinatorial lemma",
    IdentityId.PHI_PARTITION: "phi_P^{Q,R} partition",
    IdentityId.BOUND_C: "C(P, Q, R, X) emptiness and boundedness",
    IdentityId.GAMMA_PARTITION: "Gamma_P^R partition",
    IdentityId.GAMMA_DUAL: "Gamma_P^R duality",
    IdentityId.GAMMA_CONVOLUTION: "Gamma_P^R convolution",
    IdentityId.BOUND_GAMMA: "Gamma_P^R closed form for regular X",
    IdentityId.FACET_PARTITION: "partition over F(M)",
    IdentityId.GAMMA_M_DELTA: "Gamma_M through delta functions",
    IdentityId.GAMMA_M_PARTITION: "Gamma_M partition",
    IdentityId.GAMMA_M_CONVOLUTION: "Gamma_M convolution",
    IdentityId.KAPPA_INDEPENDENCE: "Gamma_M independent of kappa",
    IdentityId.GAMMA_M_PHI: "Gamma_M through phi_{M,s}",
    IdentityId.GAMMA_M_KAPPA: "Gamma_M is the hull indicator",
    IdentityId.LEVI_MONOTONE: "Gamma_L - Gamma_M outside the M-hull",
    IdentityId.EPSILON_SIGN: "sign rule of epsilon and hat-epsilon",
    IdentityId.GAMMA_POLY: "gamma_P^R polynomial, homogeneous, region volume",
    IdentityId.CONE_LAPLACE: "Laplace transforms of the phi^kappa cones",
    IdentityId.GAMMA_M_POLY: "gamma_M polynomial and hull volume",
    IdentityId.GM_DECOMPOSITION: "c_M^Q = sum of c_P^Q, smooth across walls",
    IdentityId.PRODUCT_FORMULA: "product formula for (G,M)-families",
    IdentityId.RADICIAL: "radicial expansion over coroot bases",
    IdentityId.RADICIAL_DIFFERENTIAL: "limit value as a differential operator",
    IdentityId.OMEGA: "scalar omega: finite removable-singularity value",
    IdentityId.TWISTED_BASES: "bases of the theta-fixed subspaces",
    IdentityId.PLUS_MINUS: "Q+ and R-",
    IdentityId.TWISTED_WEYL: "twisted Weyl sets",
    IdentityId.TWISTED_HULL: "twisted hull indicator",
    IdentityId.TWISTED_GAMMA_PARTITION: "twisted Gamma partition",
    IdentityId.TWISTED_GAMMA_DUAL: "twisted Gamma duality",
    IdentityId.TWISTED_GAMMA_CONVOLUTION: "twisted Gamma convolution",
    IdentityId.TWISTED_GAMMA_M_CONVOLUTION: "twisted Gamma_M convolution",
    IdentityId.TWISTED_PRODUCT_FORMULA: "twisted product formula",
    IdentityId.SIGMA_TILDE: "tilde-sigma independent of tilde-P",
    IdentityId.SIGMA_PARTITION: "tilde-sigma partition",
    IdentityId.SIGMA_DISJOINT: "sigma_Q^R cones are disjoint",
    IdentityId.ETA_TILDE: "tilde-eta and its admissible interval",
    IdentityId.CERTIFICATES: "cone-kernel certificates",
}


def _entries() -> dict[IdentityId, CatalogueEntry]:
    both = frozenset({PLAIN, TWISTED})
    out: dict[IdentityId, CatalogueEntry] = {}

    def put(identity, group, frames, runner):
        out[identity] = CatalogueEntry(identity, group, frozenset(frames), runner, DESCRIPTIONS[identity])

    for identity in structure.STRUCTURE_CHECKS:
        put(identity, "structure", {PLAIN}, structure.verify_structure)
    for identity in cones.CONE_CHECKS:
        put(identity, "cones", {PLAIN}, cones.verify_cone_identities)
    for identity in gm_families.GM_CHECKS:
        if identity == IdentityId.TWISTED_PRODUCT_FORMULA:
            frames = {TWISTED}
        elif identity in (IdentityId.RADICIAL, IdentityId.RADICIAL_DIFFERENTIAL):
            frames = both
        else:
            frames = {PLAIN}
        put(identity, "gm", frames, gm_families.verify_gm_identities)
    for identity in (*twisted.TWISTED_CHECKS, IdentityId.SIGMA_DISJOINT):
        put(identity, "twisted", {TWISTED}, twisted.verify_twisted_identities)
    put(IdentityId.CERTIFICATES, "certificates", {TWISTED}, _certificates)
    return {identity: out[identity] for identity in IdentityId if identity in out}


CATALOGUE = _entries()


def frame_kind(ctx: ConeContext) -> str:
    return TWISTED if ctx.twisted else PLAIN


def identities_for(ctx: ConeContext, requested=None) -> list[IdentityId]:
    """
    Catalogue order restricted to the frame; with ``requested`` only those
    identities, skipping the ones that do not live on this frame.
    """
    kind = frame_kind(ctx)
    wanted = None if not requested else {IdentityId(i) for i in requested}
    return [i for i, entry in CATALOGUE.items()
            if kind in entry.frames and (wanted is None or i in wanted)]


def run_identity(ctx: ConeContext, identity_id: IdentityId | str, n_samples: int,
                 sampler: RationalSampler) -> SampleTally:
    """
    :raises SpecParseError: identity unknown or not defined on this frame
    """
    try:
        identity_id = IdentityId(identity_id)
    except ValueError:
        raise SpecParseError(f"unknown identity {identity_id!r}")
    entry = CATALOGUE[identity_id]
    if frame_kind(ctx) not in entry.frames:
        raise SpecParseError(f"{identity_id.value} is not defined on {ctx.label}")
    logger.debug("running %s on %s", identity_id.value, ctx.label)
    return entry.runner(ctx, identity_id, n_samples, sampler)


def catalogue_listing() -> list[dict]:
    return [
        {
            "identity": entry.identity.value,
            "group": entry.group,
            "frames": sorted(entry.frames),
            "description": entry.description,
        }
        for entry in CATALOGUE.values()
    ]
