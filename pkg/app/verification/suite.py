"""
Suite runner: expands a SuiteConfig into (frame, identity) jobs, runs them,
optionally across worker processes, and assembles the deterministic report
"""
import hashlib
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from ..core.config import APP_CONFIG, DEFAULT_SYSTEMS, DEFAULT_TWISTED_SYSTEMS, MEASURE_CONVENTION
from ..core.errors import SpecParseError
from ..core.rational import format_rat
from ..core.sampling import RationalSampler, jsonable
from ..geometry.context import ConeContext
from ..geometry.twisted import make_context, system_with_twist
from ..models.enums import IdentityId
from ..schemas.suite import IdentityReport, Report, ReportHeader, SuiteConfig, SystemReport
from .catalogue import CATALOGUE, identities_for, run_identity

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def load_context(system: str, twist: str | None = None) -> ConeContext:
    """
    Frame for "A3", "A3:flip" or ("A3", "flip"); cached per process.

    :raises SpecParseError, InvalidRootSystemError, InvalidTwistError:
    :raises GroupBoundExceededError: when W exceeds WEYL_GROUP_BOUND
    """
    rs, theta = system_with_twist(system, twist)
    return make_context(rs, theta)


def job_seed(seed: int, label: str, identity: IdentityId) -> int:
    """Seed of one (frame, identity) job; independent of job order and worker count"""
    digest = hashlib.sha256(f"{seed}:{label}:{identity.value}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


@dataclass(frozen=True)
class Job:
    system: str
    twist: str | None
    identity: IdentityId
    n_samples: int
    seed: int
    sample_bound: int


def run_job(job: Job) -> IdentityReport:
    ctx = load_context(job.system, job.twist)
    sampler = RationalSampler(job_seed(job.seed, ctx.label, job.identity), job.sample_bound)
    start = time.perf_counter()
    tally = run_identity(ctx, job.identity, job.n_samples, sampler)
    elapsed = time.perf_counter() - start
    logger.info("%s on %s: %d checked, %d skipped, %d failed (%.2fs)", job.identity.value, ctx.label,
                tally.checked, tally.skipped_boundary, tally.failed, elapsed)
    return IdentityReport(
        identity=job.identity.value,
        description=CATALOGUE[job.identity].description,
        n_samples=job.n_samples,
        checked=tally.checked,
        skipped_boundary=tally.skipped_boundary,
        failed=tally.failed,
        passed=tally.passed,
        witnesses=tally.witnesses,
        notes=jsonable(tally.notes),
        elapsed=round(elapsed, 3),
    )


def suite_frames(config: SuiteConfig) -> list[tuple[str, str | None]]:
    """The requested frame, or the default untwisted and twisted catalogue"""
    if config.system_spec:
        return [(config.system_spec, config.twist_spec)]
    return [(s, None) for s in DEFAULT_SYSTEMS] + [(s, None) for s in DEFAULT_TWISTED_SYSTEMS]


def _realization(ctx: ConeContext) -> list[list[str]]:
    return [[format_rat(x) for x in root] for root in ctx.rs.simple_roots]


def run_suite(config: SuiteConfig) -> Report:
    """
    Run every requested identity on every frame.

    Deterministic given (config, seed) up to the ``elapsed`` fields.

    :raises SpecParseError: an explicitly requested identity runs on none of the frames
    """
    frames = [(system, twist, load_context(system, twist)) for system, twist in suite_frames(config)]
    jobs: list[tuple[int, Job]] = []
    covered: set[IdentityId] = set()
    for index, (system, twist, ctx) in enumerate(frames):
        for identity in identities_for(ctx, config.identities):
            covered.add(identity)
            jobs.append((index, Job(system, twist, identity, config.samples_for(identity), config.seed,
                                    config.sample_bound)))
    missing = [i for i in config.identities if IdentityId(i) not in covered]
    if missing:
        raise SpecParseError(f"identities not defined on the requested frames: {', '.join(missing)}")

    logger.info("suite start: %d frames, %d jobs, seed %d", len(frames), len(jobs), config.seed)
    if config.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(run_job, [job for _, job in jobs]))
    else:
        results = [run_job(job) for _, job in jobs]

    systems = []
    for index, (system, twist, ctx) in enumerate(frames):
        reports = [r for (i, _), r in zip(jobs, results) if i == index]
        systems.append(SystemReport(system=system, twist=twist, label=ctx.label, weyl_order=len(ctx.W),
                                    identities=reports))
    failures = [f"{s.label} {r.identity}" for s in systems for r in s.identities if not r.passed]
    header = ReportHeader(
        version=APP_CONFIG["version"],
        measure_convention=MEASURE_CONVENTION,
        realization={ctx.rs.label: _realization(ctx) for _, _, ctx in frames},
        seed=config.seed,
        sample_bound=config.sample_bound,
        n_samples=config.n_samples,
    )
    report = Report(header=header, systems=systems, passed=not failures, failures=failures)
    logger.info("suite finished: %d jobs, %d failing", len(jobs), len(failures))
    return report


def report_json(report: Report) -> str:
    """JSON contract: sorted keys, rationals as "p/q" """
    return json.dumps(report.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False)


def strip_timing(data: dict) -> dict:
    """Report dict without the clock-dependent ``elapsed`` fields"""
    out = json.loads(json.dumps(data))
    for system in out.get("systems", []):
        for identity in system.get("identities", []):
            identity.pop("elapsed", None)
    return out


def render_text(report: Report) -> str:
    """Human summary, one line per identity"""
    lines = [
        f"rootcone {report.header.version}  seed={report.header.seed}  N={report.header.sample_bound}"
        f"  samples={report.header.n_samples}",
        f"measure: {report.header.measure_convention}",
    ]
    for system in report.systems:
        lines.append("")
        lines.append(f"{system.label}  |W| = {system.weyl_order}")
        for r in system.identities:
            mark = "ok  " if r.passed else "FAIL"
            skipped = f"  skipped {r.skipped_boundary}" if r.skipped_boundary else ""
            lines.append(f"  {mark} {r.identity:<20} {r.checked:>6} checked{skipped}  {r.elapsed:.2f}s  {r.description}")
            for witness in r.witnesses[:1]:
                lines.append(f"       witness: {json.dumps(witness, sort_keys=True, ensure_ascii=False)}")
    lines.append("")
    lines.append("PASSED" if report.passed else f"FAILED: {', '.join(report.failures)}")
    return "\n".join(lines)
