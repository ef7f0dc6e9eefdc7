"""Command line: ``hyperhitchin {family,actions,angles,verify} ...``.

Every command emits one JSON document (``--json`` on stdout, ``--out FILE``
on disk) that starts with a run manifest. Missing curve / configuration
files are replaced by seeded random data, so a manifest determines the output
bytes. Exit codes: 0 pass, 1 verification failure, 2 input error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import warnings

import numpy as np

from . import __version__
from .actions import PhaseConfiguration, random_hamiltonians, sample_config, solve_actions
from .curve import HyperellipticCurve
from .dynamics import DEFAULT_STEP, TOL_COMMUTE, TOL_DARBOUX, verify_commutativity, verify_darboux
from .errors import HitchinError, InputError, NumericalFailure
from .family import HamiltonianVector, block_sizes, enumerate_basis
from .geometry import PathPolicy, angle_coordinates
from .lie_data import LieAlgebraSpec, check_degree_identity

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def _cplx(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _parse_complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {s!r}")


def _read_json(path, hashes):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    hashes[str(path)] = hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _manifest(args, argv, hashes) -> dict:
    return {
        "tool": "hyperhitchin",
        "version": __version__,
        "argv": list(argv),
        "seed": args.seed,
        "tolerances": {
            "quad_tol": args.quad_tol,
            "fd_step": args.fd_step,
            "tol_commute": args.tol_commute,
            "tol_darboux": args.tol_darboux,
        },
        "inputs": dict(sorted(hashes.items())),
    }


def _spec(args) -> LieAlgebraSpec:
    return LieAlgebraSpec(args.series, args.rank)


def _random_problem(spec, genus, rng):
    curve = HyperellipticCurve.random(genus, rng)
    H = random_hamiltonians(enumerate_basis(spec, genus), rng)
    return curve, H


def _load_problem(args, hashes):
    """Curve, configuration and H from files, or seeded random stand-ins."""
    spec = _spec(args)
    rng = np.random.default_rng(args.seed)
    if args.curve:
        curve = HyperellipticCurve.from_json(_read_json(args.curve, hashes))
    else:
        curve = HyperellipticCurve.random(args.genus, rng)
    layout = enumerate_basis(spec, curve.genus)
    H = None
    if getattr(args, "hamiltonians", None):
        H = HamiltonianVector.from_json(_read_json(args.hamiltonians, hashes), layout).values
    if args.config:
        obj = _read_json(args.config, hashes)
        if "spec" in obj and LieAlgebraSpec.from_json(obj["spec"]) != spec:
            raise InputError(f"configuration was written for {obj['spec']}, not {spec}")
        try:
            config = PhaseConfiguration.from_json(obj, curve, spec)
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed configuration file: {exc!r}") from exc
    else:
        h = H if H is not None else random_hamiltonians(layout, rng)
        config = sample_config(curve, spec, h, rng)
    return spec, curve, config, H


def cmd_family(args, hashes) -> tuple[dict, int]:
    spec = _spec(args)
    layout = enumerate_basis(spec, args.genus)
    table = []
    for i, d in enumerate(spec.degrees, start=1):
        ne, no = block_sizes(d, args.genus)
        table.append({"i": i, "degree": d, "even": ne, "odd": no, "size": ne + no})
    out = {
        "spec": spec.to_json(),
        "genus": args.genus,
        "n": spec.n,
        "dim": spec.dim,
        "N": layout.N,
        "degrees": table,
        "layout": layout.to_json(),
        "monomials": [str(m) for m in layout.monomials],
    }
    return out, EXIT_OK


def cmd_actions(args, hashes) -> tuple[dict, int]:
    spec, curve, config, _ = _load_problem(args, hashes)
    H = solve_actions(config)
    out = {
        "spec": spec.to_json(),
        "curve": curve.to_json(),
        "config": config.to_json(),
        "hamiltonians": H.to_json(),
    }
    return out, EXIT_OK


def _policy(args, quad_tol=None) -> PathPolicy:
    return PathPolicy(
        base_x=args.base_x,
        safety_margin=args.safety_margin,
        quad_tol=quad_tol if quad_tol is not None else args.quad_tol,
    )


def cmd_angles(args, hashes) -> tuple[dict, int]:
    spec, curve, config, H = _load_problem(args, hashes)
    av = angle_coordinates(config, path_policy=_policy(args), H=H)
    out = {
        "spec": spec.to_json(),
        "curve": curve.to_json(),
        "config": config.to_json(),
        "angles": av.to_json(config.layout),
    }
    return out, EXIT_OK


def _verify_counts(spec, genus) -> list:
    layout = enumerate_basis(spec, genus)
    checks = [
        {"check": "degree identity sum(2d-1) = dim", "pass": check_degree_identity(spec)},
        {"check": "all degrees >= 2", "pass": min(spec.degrees) >= 2},
    ]
    for i, d in enumerate(spec.degrees, start=1):
        size = sum(1 for m in layout.monomials if m.invariant_index == i)
        checks.append({"check": f"block {i}: size = (2*{d}-1)(g-1)", "value": size, "pass": size == (2 * d - 1) * (genus - 1)})
    checks.append({"check": "N = dim (g-1)", "value": layout.N, "pass": layout.N == spec.dim * (genus - 1)})
    return checks


def _verify_roundtrip(spec, genus, seed, trials) -> list:
    layout = enumerate_basis(spec, genus)
    out = []
    for k in range(trials):
        rng = np.random.default_rng([seed, k])
        curve = HyperellipticCurve.random(genus, rng)
        H = random_hamiltonians(layout, rng)
        config = sample_config(curve, spec, H, rng)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RuntimeWarning)
            got = solve_actions(config).values
        err = float(np.linalg.norm(got - H) / np.linalg.norm(H))
        out.append({"trial": k, "relative_error": err, "tol": 1e-10, "pass": err < 1e-10})
    return out


def cmd_verify(args, hashes) -> tuple[dict, int]:
    spec = _spec(args)
    enumerate_basis(spec, args.genus)  # validate before computing
    rng = np.random.default_rng(args.seed)
    extra = {}
    if args.kind == "counts":
        reports = _verify_counts(spec, args.genus)
    elif args.kind == "roundtrip":
        reports = _verify_roundtrip(spec, args.genus, args.seed, args.trials)
    elif args.kind == "commute":
        curve, H = _random_problem(spec, args.genus, rng)
        reps = verify_commutativity(curve, spec, H, rng, step=args.fd_step, tol=args.tol_commute)
        reports = [r.to_json() for r in reps]
        extra["curve"] = curve.to_json()
        extra["hamiltonians"] = [_cplx(v) for v in H]
    else:
        curve, H = _random_problem(spec, args.genus, rng)
        grid = verify_darboux(
            curve, spec, H, rng, step=args.fd_step, tol=args.tol_darboux, policy=_policy(args)
        )
        reports = [r.to_json() for row in grid for r in row]
        extra["matrix"] = [[_cplx(r.value) for r in row] for row in grid]
        extra["curve"] = curve.to_json()
        extra["hamiltonians"] = [_cplx(v) for v in H]
    ok = all(r["pass"] for r in reports)
    out = {"kind": args.kind, "spec": spec.to_json(), "genus": args.genus, "pass": ok, "reports": reports, **extra}
    return out, EXIT_OK if ok else EXIT_FAIL


def _summary(cmd, out) -> str:
    if "error" in out:
        e = out["error"]
        return f"error ({e['type']}): {e['message']}"
    if cmd == "family":
        return f"{out['spec']['series']}{out['spec']['rank']} g={out['genus']}: N={out['N']} [{', '.join(out['monomials'])}]"
    if cmd == "actions":
        vals = out["hamiltonians"]["values"]
        return "H = " + ", ".join(f"{re:.10g}{im:+.10g}j" for re, im in vals)
    if cmd == "angles":
        vals = out["angles"]["values"]
        return "phi = " + ", ".join(f"{re:.10g}{im:+.10g}j" for re, im in vals)
    n_fail = sum(not r["pass"] for r in out["reports"])
    status = "PASS" if out["pass"] else f"FAIL ({n_fail} of {len(out['reports'])} checks)"
    return f"verify {out['kind']} {out['spec']['series']}{out['spec']['rank']} g={out['genus']}: {status}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--quad-tol", type=float, default=None, help="default 1e-9 (1e-11 for verify darboux)")
    common.add_argument("--fd-step", type=float, default=DEFAULT_STEP)
    common.add_argument("--tol-commute", type=float, default=TOL_COMMUTE)
    common.add_argument("--tol-darboux", type=float, default=TOL_DARBOUX)
    common.add_argument("--safety-margin", type=float, default=None)
    common.add_argument("--base-x", type=_parse_complex, default=None)
    common.add_argument("--out", metavar="FILE", help="write the JSON document to FILE")
    common.add_argument("--json", action="store_true", help="print the JSON document on stdout")

    spec_args = argparse.ArgumentParser(add_help=False)
    spec_args.add_argument("series", help="A, B or C")
    spec_args.add_argument("rank", type=int)
    spec_args.add_argument("-g", "--genus", type=int, default=2)

    files = argparse.ArgumentParser(add_help=False)
    files.add_argument("--curve", metavar="FILE", help="curve JSON (random from --seed if omitted)")
    files.add_argument("--config", metavar="FILE", help="configuration JSON (sampled if omitted)")

    p = argparse.ArgumentParser(prog="hyperhitchin", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="cmd", required=True)
    sub.add_parser("family", parents=[spec_args, common], help="basis layout and degree table")
    sub.add_parser("actions", parents=[spec_args, files, common], help="Hamiltonians of a configuration")
    pa = sub.add_parser("angles", parents=[spec_args, files, common], help="angle coordinates of a configuration")
    pa.add_argument("--hamiltonians", metavar="FILE", help="H JSON (solved from the configuration if omitted)")
    pv = sub.add_parser("verify", parents=[common], help="verification suites")
    pv.add_argument("kind", choices=["counts", "roundtrip", "commute", "darboux"])
    pv.add_argument("series", help="A, B or C")
    pv.add_argument("rank", type=int)
    pv.add_argument("-g", "--genus", type=int, default=2)
    pv.add_argument("--trials", type=int, default=100, help="round-trip trials")
    return p


COMMANDS = {"family": cmd_family, "actions": cmd_actions, "angles": cmd_angles, "verify": cmd_verify}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if args.quad_tol is None:
        args.quad_tol = 1e-11 if getattr(args, "kind", None) == "darboux" else 1e-9
    hashes: dict = {}
    try:
        body, code = COMMANDS[args.cmd](args, hashes)
    except InputError as exc:
        body, code = {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_INPUT
    except NumericalFailure as exc:
        body, code = {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_NUMERIC
    except HitchinError as exc:
        body, code = {"error": {"type": type(exc).__name__, "message": str(exc)}}, EXIT_NUMERIC
    doc = {"manifest": _manifest(args, argv, hashes), **body, "exit_code": code}
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    if args.json:
        sys.stdout.write(text)
    else:
        stream = sys.stderr if "error" in body else sys.stdout
        print(_summary(args.cmd, body), file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
