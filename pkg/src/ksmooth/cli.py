"""Batch command-line front end.

Subcommands: construct a system and write it to JSON, verify every rational
member of a stored system, check a single form, lift a prime-field system to
the rationals and spot-check random members, run the characteristic-2 quadric
refutation, and reproduce the built-in GF(3) cubic example.

Exit codes: 0 = success / K-smooth, 1 = singular member found (witness
emitted), 2 = usage or hypothesis error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction

from .constructions import (
    builtin_example_f3,
    char2_find_singular_member,
    construct_system_with_details,
    construction_to_json,
    lift_to_char_zero,
)
from .fields import enumerate_projective_points, get_descriptor
from .multipoly import (
    form_from_json,
    random_system,
    system_from_json,
    system_to_json,
)
from .smoothness import (
    Singular,
    Smooth,
    is_smooth,
    oracle_verdict,
    verify_system_K_smooth,
    witness_to_json,
)

DEFAULT_ORACLE_EXT = 4


@dataclass
class RunConfig:
    """Validated parameters of one CLI invocation."""

    command: str
    p: int = 0
    e: int = 1
    n: int = 0
    d: int = 0
    r: int = 0
    k: int = 1
    input_path: str | None = None
    output_path: str | None = None
    oracle: bool = False
    max_ext: int = DEFAULT_ORACLE_EXT
    seed: int = 0
    samples: int = 0
    count: int = 0
    as_json: bool = False
    verify: bool = False
    name: str | None = None

    def validate(self):
        if self.command == "construct":
            if self.e < 1:
                raise ValueError("extension degree e must be >= 1")
            if self.n < 1 or self.d < 2 or self.r < 1:
                raise ValueError("need n >= 1, d >= 2, r >= 1")
        if self.command == "quadrics":
            if self.k < 1:
                raise ValueError("k must be >= 1")
            if self.input_path is None:
                if self.count < 1:
                    raise ValueError("--random must request at least one system")
                if self.n < 1 or self.n % 2 == 0:
                    raise ValueError("quadric refutation needs odd n >= 1")
        if self.command == "lift" and self.samples < 1:
            raise ValueError("--samples must be >= 1")
        if self.command == "verify" and self.max_ext < 1:
            raise ValueError("--max-ext must be >= 1")


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit_json(obj):
    print(json.dumps(obj, indent=2))


def _point_str(point):
    return "[" + ":".join(str(c) for c in point) + "]"


def _witness_line(witness):
    line = f"singular at {_point_str(witness.point)} over {witness.field!r}"
    if witness.member is not None:
        line = f"member {_point_str(witness.member)} {line}"
    return line


def _cmd_construct(cfg):
    system, result = construct_system_with_details(cfg.p, cfg.e, cfg.n, cfg.d, cfg.r)
    obj = construction_to_json(result, cfg.r)
    if cfg.output_path:
        with open(cfg.output_path, "w", encoding="utf-8") as fh:
            json.dump(obj, fh, indent=2)
            fh.write("\n")
    if cfg.as_json:
        _emit_json(obj)
    else:
        q = cfg.p ** cfg.e
        print(f"constructed case {result.case} system over GF({q}): "
              f"n={cfg.n} d={cfg.d} r={cfg.r}")
        for i, g in enumerate(system.generators):
            print(f"  G{i} = {g}")
        if cfg.output_path:
            print(f"wrote {cfg.output_path}")
    return 0


def _cmd_verify(cfg):
    system = system_from_json(_load(cfg.input_path))
    report = verify_system_K_smooth(system)
    if cfg.oracle:
        for coeffs, verdict in zip(
                enumerate_projective_points(system.field, system.dim),
                report.verdicts):
            check = oracle_verdict(system.member(coeffs), cfg.max_ext)
            agree = (verdict == "singular") == isinstance(check, Singular)
            if not agree:
                raise RuntimeError(
                    f"certificate and search oracle disagree on member {_point_str(coeffs)}")
    if cfg.as_json:
        obj = report.to_json()
        if cfg.oracle:
            obj["oracle_checked"] = True
        _emit_json(obj)
    else:
        smooth = sum(1 for v in report.verdicts if v == "smooth")
        print(f"{smooth}/{report.member_count} members smooth")
        if report.witness is not None:
            print(_witness_line(report.witness))
        print(f"K-smooth: {'yes' if report.k_smooth else 'no'}")
    return 0 if report.k_smooth else 1


def _cmd_check(cfg):
    form = form_from_json(_load(cfg.input_path))
    verdict = is_smooth(form)
    if isinstance(verdict, Smooth):
        if cfg.as_json:
            _emit_json({"smooth": True,
                        "certificate_size": len(verdict.certificate.elements)})
        else:
            print(f"smooth (certificate with {len(verdict.certificate.elements)} "
                  "basis elements)")
        return 0
    if cfg.as_json:
        _emit_json({"smooth": False,
                    "witness": witness_to_json(verdict.witness)
                    if verdict.witness else None})
    elif verdict.witness is not None:
        print(_witness_line(verdict.witness))
    else:
        print("singular (no explicit witness over the rationals)")
    return 1


def _cmd_lift(cfg):
    system = system_from_json(_load(cfg.input_path))
    lifted = lift_to_char_zero(system)
    rng = random.Random(cfg.seed)
    count = len(lifted.generators)
    outcomes = []
    for _ in range(cfg.samples):
        while True:
            coeffs = tuple(Fraction(rng.randint(-5, 5)) for _ in range(count))
            if any(coeffs):
                break
        verdict = is_smooth(lifted.member(coeffs))
        outcomes.append((coeffs, isinstance(verdict, Smooth)))
    good = sum(1 for _, ok in outcomes if ok)
    if cfg.as_json:
        _emit_json({"samples": cfg.samples, "smooth": good,
                    "members": [{"coeffs": [str(c) for c in cs], "smooth": ok}
                                for cs, ok in outcomes]})
    else:
        print(f"lifted {count} generators to the rationals")
        print(f"{good}/{cfg.samples} sampled members smooth")
    return 0 if good == cfg.samples else 1


def _cmd_quadrics(cfg):
    systems = []
    if cfg.input_path:
        systems.append(system_from_json(_load(cfg.input_path)))
    else:
        field = get_descriptor(2, cfg.k)
        rng = random.Random(cfg.seed)
        for _ in range(cfg.count):
            systems.append(random_system(field, cfg.n + 1, 2, cfg.n + 1, rng))
    results = []
    for system in systems:
        results.append(char2_find_singular_member(system))
    if cfg.as_json:
        _emit_json({"systems": len(results),
                    "results": [{"branch": res.branch,
                                 "member": [str(c) for c in res.coefficients],
                                 "witness": witness_to_json(res.witness)}
                                for res in results]})
    else:
        for i, res in enumerate(results):
            print(f"system {i}: branch={res.branch} "
                  f"member {_point_str(res.coefficients)} singular at "
                  f"{_point_str(res.witness.point)} over {res.witness.field!r}")
    return 1 if results else 0


def _cmd_example(cfg):
    if cfg.name != "f3":
        raise ValueError(f"unknown example {cfg.name!r}; available: f3")
    system = builtin_example_f3()
    report = verify_system_K_smooth(system) if cfg.verify else None
    if cfg.as_json:
        obj = {"system": system_to_json(system)}
        if report is not None:
            obj["report"] = report.to_json()
        _emit_json(obj)
    else:
        print("built-in cubic system over GF(3):")
        for i, g in enumerate(system.generators):
            print(f"  F{i} = {g}")
        if report is not None:
            smooth = sum(1 for v in report.verdicts if v == "smooth")
            print(f"{smooth}/{report.member_count} members smooth")
    if report is not None and not report.k_smooth:
        return 1
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ksmooth",
        description="construct and certify linear systems of smooth hypersurfaces")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="construct a K-smooth system")
    c.add_argument("--p", type=int, required=True, help="field characteristic")
    c.add_argument("--e", type=int, default=1, help="base field extension degree")
    c.add_argument("--n", type=int, required=True, help="ambient projective dimension")
    c.add_argument("--d", type=int, required=True, help="degree of the forms")
    c.add_argument("--r", type=int, required=True, help="projective dimension of the system")
    c.add_argument("-o", "--output", help="write system JSON to this file")
    c.add_argument("--json", action="store_true", help="print the system JSON")

    v = sub.add_parser("verify", help="verify every rational member of a stored system")
    v.add_argument("file", help="system JSON file")
    v.add_argument("--oracle", action="store_true",
                   help="cross-check each verdict with the extension point search")
    v.add_argument("--max-ext", type=int, default=DEFAULT_ORACLE_EXT,
                   help="extension-degree bound for the oracle search")
    v.add_argument("--json", action="store_true", help="print the machine report")

    k = sub.add_parser("check", help="decide smoothness of a single stored form")
    k.add_argument("file", help="form JSON file")
    k.add_argument("--json", action="store_true")

    l = sub.add_parser("lift", help="lift a prime-field system to the rationals")
    l.add_argument("file", help="system JSON file")
    l.add_argument("--samples", type=int, default=20,
                   help="number of random integer members to check")
    l.add_argument("--seed", type=int, default=0)
    l.add_argument("--json", action="store_true")

    q = sub.add_parser("quadrics",
                       help="produce singular members of odd-dimensional quadric systems in characteristic 2")
    grp = q.add_mutually_exclusive_group(required=True)
    grp.add_argument("--system", help="system JSON file")
    grp.add_argument("--random", type=int, metavar="N",
                     help="refute N random systems")
    q.add_argument("--k", type=int, default=1, help="field is GF(2^k)")
    q.add_argument("--n", type=int, default=3, help="odd ambient dimension")
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--json", action="store_true")

    x = sub.add_parser("example", help="built-in systems")
    x.add_argument("name", choices=["f3"])
    x.add_argument("--verify", action="store_true",
                   help="verify every rational member")
    x.add_argument("--json", action="store_true")
    return parser


def _config_from_args(args):
    cfg = RunConfig(command=args.command)
    cfg.as_json = getattr(args, "json", False)
    if args.command == "construct":
        cfg.p, cfg.e, cfg.n, cfg.d, cfg.r = args.p, args.e, args.n, args.d, args.r
        cfg.output_path = args.output
    elif args.command == "verify":
        cfg.input_path = args.file
        cfg.oracle = args.oracle
        cfg.max_ext = args.max_ext
    elif args.command == "check":
        cfg.input_path = args.file
    elif args.command == "lift":
        cfg.input_path = args.file
        cfg.samples = args.samples
        cfg.seed = args.seed
    elif args.command == "quadrics":
        cfg.input_path = args.system
        cfg.count = args.random or 0
        cfg.k = args.k
        cfg.n = args.n
        cfg.seed = args.seed
    elif args.command == "example":
        cfg.name = args.name
        cfg.verify = args.verify
    return cfg


_HANDLERS = {
    "construct": _cmd_construct,
    "verify": _cmd_verify,
    "check": _cmd_check,
    "lift": _cmd_lift,
    "quadrics": _cmd_quadrics,
    "example": _cmd_example,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        cfg.validate()
        return _HANDLERS[cfg.command](cfg)
    except (ValueError, OSError, KeyError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
