"""
Command-line entry point

    python cli.py verify --system A3 --twist flip --samples 500 --seed 1 --out report.json
    python cli.py compute volume --system A2 --family fam.json
    python cli.py certify --system A3:flip --case q-map

Exit codes: 0 pass, 1 identity failure, 2 usage error.
"""
import argparse
import json
import logging
import sys

from pydantic import ValidationError

from app.core.config import (
    CERTIFICATE_RATIO_SAMPLES,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    IDENTITY_SAMPLES,
    SAMPLE_BOUND,
    VERIFY_WORKERS,
    configure_logging,
)
from app.core.errors import GroupBoundExceededError, USAGE_ERRORS
from app.models.enums import CertificateCase, ComputeCommand
from app.schemas.certificates import CertificateRequest
from app.schemas.compute import HullRequest, OmegaRequest, RadicialRequest, VolumeRequest
from app.schemas.suite import SuiteConfig
from app.verification.compute import compute_hull, compute_omega, compute_radicial, compute_volume, list_certificates
from app.verification.suite import render_text, report_json, run_suite

logger = logging.getLogger("cli")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Bad files or arguments detected after argparse"""


def _read_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _split(text: str | None) -> list[str]:
    return [x.strip() for x in (text or "").split(",") if x.strip()]


def cmd_verify(args) -> int:
    config = SuiteConfig(
        system_spec=args.system,
        twist_spec=args.twist,
        identities=args.identities or [],
        **({"n_samples": args.samples} if args.samples is not None else {}),
        seed=args.seed,
        sample_bound=args.bound,
        output_path=args.out,
        workers=args.workers,
    )
    report = run_suite(config)
    _emit(report_json(report), config.output_path)
    if args.text:
        print(render_text(report), file=sys.stderr)
    return EXIT_OK if report.passed else EXIT_FAILURE


def cmd_compute(args) -> int:
    command = ComputeCommand(args.command)
    frame = {"system": args.system, "twist": args.twist, "seed": args.seed}
    if command == ComputeCommand.VOLUME:
        result = compute_volume(VolumeRequest(**frame, levi=args.levi, family=_read_json(args.family)))
        ok = result.independent and (result.hull_volume is None or result.hull_volume == result.value)
    elif command == ComputeCommand.RADICIAL:
        z = _read_json(args.z) if args.z else None
        result = compute_radicial(RadicialRequest(**frame, levi=args.levi, projected=args.projected, z=z, g=args.g))
        ok = result.agree and result.multilinear and (result.differential is None or result.differential.agree)
    elif command == ComputeCommand.OMEGA:
        params = _read_json(args.params)
        if not isinstance(params, dict):
            raise UsageError("omega parameters must be a JSON object with P, Q, T, lam, mu")
        result = compute_omega(OmegaRequest(**frame, **params))
        ok = result.regrouped_agree and result.numeric_ok
    else:
        H = _read_json(args.params)["H"] if args.params else _split(args.H)
        result = compute_hull(HullRequest(**frame, levi=args.levi, family=_read_json(args.family), H=H))
        ok = True
    _emit(json.dumps(result.model_dump(mode="json"), sort_keys=True, indent=2, ensure_ascii=False), args.out)
    return EXIT_OK if ok else EXIT_FAILURE


def cmd_certify(args) -> int:
    results = list_certificates(CertificateRequest(system=args.system, twist=args.twist, case=args.case,
                                                   n_samples=args.samples, seed=args.seed))
    payload = [r.model_dump(mode="json") for r in results]
    _emit(json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False), args.out)
    return EXIT_OK if all(r.holds for r in results) else EXIT_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootcone", description="Exact verification of root-system cone combinatorics")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING ...")
    sub = parser.add_subparsers(dest="action", required=True)

    def frame(p, required=True):
        p.add_argument("--system", required=required, help="e.g. A3 or A3:flip")
        p.add_argument("--twist", default=None, help="id, flip, swap or perm=...")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--out", default=None, help="JSON output file (stdout by default)")

    verify = sub.add_parser("verify", help="run identity suites")
    frame(verify, required=False)
    verify.add_argument("--identities", type=_split, default=None, help="comma-separated catalogue ids")
    verify.add_argument("--samples", type=int, default=None,
                        help=f"samples per identity (default {DEFAULT_SAMPLES}, "
                             f"langlands {IDENTITY_SAMPLES['langlands']})")
    verify.add_argument("--bound", type=int, default=SAMPLE_BOUND, help="N of the p/q sampler")
    verify.add_argument("--workers", type=int, default=VERIFY_WORKERS)
    verify.add_argument("--text", action="store_true", help="human summary on stderr")
    verify.set_defaults(handler=cmd_verify)

    compute = sub.add_parser("compute", help="volume, radicial, omega or hull")
    compute.add_argument("command", choices=[c.value for c in ComputeCommand])
    frame(compute)
    compute.add_argument("--levi", default="", help="1-based simple roots of M, e.g. 1,3")
    compute.add_argument("--family", default=None, help="orthogonal family JSON file")
    compute.add_argument("--z", default=None, help="JSON list of z values (radicial)")
    compute.add_argument("--g", default=None, help="test function p(y)*exp(q(y)) (radicial)")
    compute.add_argument("--projected", action="store_true", help="M0 family projected on L (radicial)")
    compute.add_argument("--params", default=None, help="JSON parameters (omega; hull point H)")
    compute.add_argument("--H", default=None, help="comma-separated point (hull)")
    compute.set_defaults(handler=cmd_compute)

    certify = sub.add_parser("certify", help="cone-kernel certificates on a twisted frame")
    frame(certify)
    certify.add_argument("--case", required=True, choices=[c.value for c in CertificateCase])
    certify.add_argument("--samples", type=int, default=CERTIFICATE_RATIO_SAMPLES,
                         help="points per instance for the empirical ratio")
    certify.set_defaults(handler=cmd_certify)
    return parser


def _check_compute_args(args) -> None:
    if args.action != "compute":
        return
    needs = {
        ComputeCommand.VOLUME.value: ["family"],
        ComputeCommand.OMEGA.value: ["params"],
        ComputeCommand.HULL.value: ["family"],
    }.get(args.command, [])
    missing = [f"--{name}" for name in needs if getattr(args, name) is None]
    if args.command == ComputeCommand.HULL.value and args.params is None and args.H is None:
        missing.append("--H or --params")
    if missing:
        raise UsageError(f"compute {args.command} needs {', '.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level)
    try:
        _check_compute_args(args)
        return args.handler(args)
    except GroupBoundExceededError as exc:
        logger.error("%s", exc)
        return EXIT_USAGE
    except (*USAGE_ERRORS, UsageError, ValidationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
