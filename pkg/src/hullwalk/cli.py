"""Command-line interface.

    hullwalk exact --n 3 --d 2
    hullwalk faceprob --bridge --n 4 --d 2 --indices 0,2
    hullwalk absorb --d 1 --walks 2
    hullwalk simulate --target faceprob --walk --n 5 --d 1 --indices 2
    hullwalk chambers --b 2 --a 3 --trials 100
    hullwalk identity-check

Output is JSON (with a ``schema_version``) or RFC-4180 CSV, on stdout or
``--out``.  Exit codes: 0 pass, 2 invalid input, 3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, field
from decimal import Context, Decimal
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Sequence

import numpy as np

from . import chambers as ch
from .closed_forms import (
    absorption_prob,
    expected_faces_bridge,
    expected_faces_walk,
    expected_faces_walk_bigsum,
    face_prob_bridge,
    face_prob_walk,
    face_prob_walk_maxdim,
    non_absorption_prob,
    shift_avg_face_prob,
    total_expected_faces,
    vertex_prob_walk,
)
from .combinatorics import corrupted_stirling_first
from .geometry import DEFAULT_EPS, DegenerateError
from .montecarlo import (
    ShiftAverageKernel,
    compare_with_rerun,
    estimate_absorption,
    estimate_expected_faces,
    estimate_face_prob,
    estimate_shift_average,
)
from .sampling import SHIFTED, SYMMETRIC, BridgeSpec, JointSpec, WalkSpec

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_FAIL = 0, 2, 3
MIN_SIMULATE_SAMPLES = 1000

_DEC = Context(prec=15)


class ValidationError(ValueError):
    pass


def exact_fields(x) -> dict:
    """{"exact": "num/den", "decimal": 15 significant digits}."""
    x = Fraction(x)
    dec = _DEC.divide(Decimal(x.numerator), Decimal(x.denominator))
    return {"exact": f"{x.numerator}/{x.denominator}", "decimal": format(dec, ".15g")}


def _available_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def _int_list(text: str | None) -> tuple[int, ...]:
    """'0,2' -> (0, 2); '2-5' -> (2, 3, 4, 5); '' or None -> ()."""
    if text is None or text.strip() == "":
        return ()
    out = []
    try:
        for part in text.split(","):
            part = part.strip()
            if "-" in part[1:]:
                lo, hi = part.split("-", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise ValidationError(f"cannot parse integer list {text!r}") from None
    return tuple(out)


@dataclass
class RunConfig:
    command: str
    n: tuple[int, ...] = ()
    d: tuple[int, ...] = ()
    k: tuple[int, ...] | None = None
    total: bool = False
    model: str = "walk"
    indices: tuple[int, ...] = ()
    lags: tuple[int, ...] = ()
    walks: tuple[int, ...] = ()
    bridges: tuple[int, ...] = ()
    b_blocks: tuple[int, ...] = ()
    a_blocks: tuple[int, ...] = ()
    target: str = "faceprob"
    mode: str = "cyclic"
    law: str = SYMMETRIC
    noise: float = 1.0
    samples: int = 100_000
    trials: int = 100
    seed: int = 0
    eps: float = DEFAULT_EPS
    workers: int = 1
    fmt: str = "json"
    out: str | None = None
    n_max: int = 10
    d_max: int = 4
    corrupt: tuple[int, ...] = field(default=())

    @classmethod
    def from_args(cls, ns: argparse.Namespace) -> RunConfig:
        seed = ns.seed
        if seed is None:
            env = os.environ.get("HULLWALK_SEED")
            try:
                seed = int(env) if env else 0
            except ValueError:
                raise ValidationError(f"HULLWALK_SEED={env!r} is not an integer") from None
        cfg = cls(
            command=ns.command,
            seed=seed,
            eps=ns.eps,
            workers=ns.workers if ns.workers is not None else _available_workers(),
            fmt=ns.format,
            out=ns.out,
        )
        get = lambda name, default=None: getattr(ns, name, default)
        cfg.n = _int_list(get("n"))
        cfg.d = _int_list(get("d"))
        k = get("k")
        cfg.k = _int_list(k) if k is not None else None
        cfg.total = bool(get("total", False))
        cfg.model = "bridge" if get("bridge", False) else "walk"
        cfg.indices = _int_list(get("indices"))
        cfg.lags = _int_list(get("lags"))
        cfg.walks = _int_list(get("walks"))
        cfg.bridges = _int_list(get("bridges"))
        cfg.b_blocks = _int_list(get("b"))
        cfg.a_blocks = _int_list(get("a"))
        cfg.target = get("target", "faceprob")
        cfg.mode = get("mode", "cyclic")
        cfg.law = SHIFTED if get("law") == "shifted" else SYMMETRIC
        cfg.noise = get("noise", 1.0)
        cfg.samples = get("samples", cfg.samples)
        cfg.trials = get("trials", cfg.trials)
        cfg.n_max = get("n_max", cfg.n_max)
        cfg.d_max = get("d_max", cfg.d_max)
        cfg.corrupt = _int_list(get("corrupt_stirling"))
        cfg.validate()
        return cfg

    def validate(self) -> None:
        if self.eps <= 0:
            raise ValidationError("--eps must be positive")
        if self.workers < 1:
            raise ValidationError("--workers must be >= 1")
        if self.command == "simulate" and self.samples < MIN_SIMULATE_SAMPLES:
            raise ValidationError(f"--samples must be >= {MIN_SIMULATE_SAMPLES}")
        if self.command == "chambers" and self.trials < 1:
            raise ValidationError("--trials must be >= 1")
        if self.corrupt and len(self.corrupt) != 3:
            raise ValidationError("--corrupt-stirling takes n,m,value")

    def single(self, name: str) -> int:
        vals = getattr(self, name)
        if len(vals) != 1:
            raise ValidationError(f"--{name} takes exactly one integer here")
        return vals[0]


# -- commands: each returns (payload, csv rows, exit code) -------------------


def cmd_exact(cfg: RunConfig):
    if not cfg.n or not cfg.d:
        raise ValidationError("--n and --d are required")
    rows = []
    for n in cfg.n:
        for d in cfg.d:
            if d < 1 or n < d:
                raise ValidationError(f"need n >= d >= 1, got n={n}, d={d}")
            if cfg.total:
                rows.append({"n": n, "d": d, "k": "all", **exact_fields(total_expected_faces(n, d))})
                continue
            ks = range(d) if cfg.k is None else cfg.k
            for k in ks:
                if not 0 <= k < d:
                    raise ValidationError(f"need 0 <= k < d, got k={k}, d={d}")
                rows.append({"n": n, "d": d, "k": k, **exact_fields(expected_faces_walk(n, d, k))})
    return {"command": "exact", "rows": rows}, rows, EXIT_OK


def _faceprob_value(model: str, n: int, d: int, idx: tuple[int, ...]) -> Fraction:
    if not idx:
        raise ValidationError("--indices is required")
    if d < 1 or len(idx) > d:
        raise ValidationError(f"need 1 <= #indices <= d, got {len(idx)} in d={d}")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise ValidationError("indices must be strictly increasing")
    hi = n if model == "walk" else n - 1
    if idx[0] < 0 or idx[-1] > hi:
        raise ValidationError(f"indices must lie in [0, {hi}] for a {model} of length {n}")
    if model == "bridge" and n < 2:
        raise ValidationError("bridge length must be >= 2")
    return face_prob_walk(n, d, idx) if model == "walk" else face_prob_bridge(n, d, idx)


def cmd_faceprob(cfg: RunConfig):
    n, d = cfg.single("n"), cfg.single("d")
    value = _faceprob_value(cfg.model, n, d, cfg.indices)
    row = {"model": cfg.model, "n": n, "d": d, "indices": " ".join(map(str, cfg.indices)),
           **exact_fields(value)}
    return {"command": "faceprob", **row}, [row], EXIT_OK


def _model(kind: str, n: int, d: int):
    try:
        return WalkSpec(n, d) if kind == "walk" else BridgeSpec(n, d)
    except ValueError as e:
        raise ValidationError(str(e)) from None


def _joint(cfg: RunConfig, d: int) -> JointSpec:
    try:
        return JointSpec(d, cfg.walks, cfg.bridges)
    except ValueError as e:
        raise ValidationError(str(e)) from None


def cmd_absorb(cfg: RunConfig):
    d = cfg.single("d")
    spec = _joint(cfg, d)
    a = absorption_prob(d, spec.walks, spec.bridges)
    na = non_absorption_prob(d, spec.walks, spec.bridges)
    row = {"d": d, "walks": " ".join(map(str, spec.walks)),
           "bridges": " ".join(map(str, spec.bridges)), **exact_fields(a)}
    payload = {"command": "absorb", **row, "non_absorption": exact_fields(na)}
    return payload, [row], EXIT_OK


def cmd_simulate(cfg: RunConfig):
    d = cfg.single("d")
    kw = dict(eps=cfg.eps, workers=cfg.workers)
    binary = True
    if cfg.target == "faceprob":
        n = cfg.single("n")
        exact = _faceprob_value(cfg.model, n, d, cfg.indices)
        model = _model(cfg.model, n, d)
        if cfg.law == SHIFTED:
            # symmetric-law target against a non-symmetric walk
            if cfg.model != "walk":
                raise ValidationError("--law shifted applies to walks only")
            model = WalkSpec(n, d, SHIFTED, noise=cfg.noise)
        run = lambda s: estimate_face_prob(model, cfg.indices, cfg.samples, s, **kw)
        what = {"model": cfg.model, "n": n, "indices": list(cfg.indices), "law": cfg.law}
    elif cfg.target == "faces":
        n = cfg.single("n")
        k = cfg.single("k") if cfg.k else 0
        if not 0 <= k < d:
            raise ValidationError("need 0 <= k < d")
        if cfg.model == "walk":
            if n < d:
                raise ValidationError("need n >= d")
            exact, model = expected_faces_walk(n, d, k), _model("walk", n, d)
        else:
            if not 2 <= n <= 20:
                raise ValidationError("bridge length must lie in [2, 20]")
            exact, model = expected_faces_bridge(n, d, k), _model("bridge", n, d)
        run = lambda s: estimate_expected_faces(model, k, cfg.samples, s, **kw)
        binary = False
        what = {"model": cfg.model, "n": n, "k": k}
    elif cfg.target == "absorb":
        spec = _joint(cfg, d)
        exact = absorption_prob(d, spec.walks, spec.bridges)
        run = lambda s: estimate_absorption(spec, cfg.samples, s, **kw)
        what = {"walks": list(spec.walks), "bridges": list(spec.bridges)}
    elif cfg.target == "shift":
        n = cfg.single("n")
        try:
            walk = WalkSpec(n, d, cfg.law, noise=cfg.noise)
            ShiftAverageKernel(walk, cfg.lags, cfg.mode)
            exact = shift_avg_face_prob(n, d, cfg.lags)
        except ValueError as e:
            raise ValidationError(str(e)) from None
        run = lambda s: estimate_shift_average(
            n, d, cfg.lags, cfg.samples, s, cfg.mode, cfg.law, cfg.noise, **kw)
        binary = False
        what = {"n": n, "lags": list(cfg.lags), "mode": cfg.mode, "law": cfg.law,
                "noise": cfg.noise}
    else:
        raise ValidationError(f"unknown target {cfg.target!r}")
    rep = compare_with_rerun(exact, run, cfg.seed, binary=binary)
    body = rep.to_dict()
    body["exact_decimal"] = exact_fields(exact)["decimal"]
    payload = {"command": "simulate", "target": cfg.target, "d": d, **what, **body}
    row = {"target": cfg.target, "d": d, **{k: v for k, v in body.items()}}
    return payload, [row], EXIT_OK if rep.passed else EXIT_FAIL


def _trial_subspace(spec: ch.ArrangementSpec, d: int, seed: int, trial: int):
    ss = np.random.SeedSequence(seed, spawn_key=(trial,))
    rng = np.random.Generator(np.random.PCG64(ss))
    for _ in range(100):
        try:
            return ch.random_kernel_subspace(spec, d, rng)
        except DegenerateError:
            continue
    raise DegenerateError("could not draw a nondegenerate subspace")


def cmd_chambers(cfg: RunConfig):
    d = cfg.single("d") if cfg.d else 1
    try:
        spec = ch.ArrangementSpec(cfg.b_blocks, cfg.a_blocks)
    except ValueError as e:
        raise ValidationError(str(e)) from None
    if d < 1 or d + spec.r >= spec.n:
        raise ValidationError(f"need 1 <= d and d + r < n (d={d}, r={spec.r}, n={spec.n})")
    if spec.order > ch.GROUP_CAP:
        raise ValidationError(f"|G| = {spec.order} exceeds the cap {ch.GROUP_CAP}")
    chi = ch.char_poly_product(spec)
    hyper = ch.reflection_hyperplanes(spec)
    whitney = None
    if len(hyper) <= ch.WHITNEY_MAX_HYPERPLANES:
        whitney = ch.char_poly_whitney(hyper, spec.n)
    codim = d + spec.r
    predicted = ch.predicted_intersect_count(chi, spec.n, codim)
    counts = [
        ch.chamber_intersect_count(spec, _trial_subspace(spec, d, cfg.seed, t), cfg.eps,
                                   workers=cfg.workers)
        for t in range(cfg.trials)
    ]
    matches = sum(c == predicted for c in counts)
    closure = Fraction(predicted, spec.order)
    absorb = absorption_prob(d, spec.b_blocks, spec.a_blocks)
    ok = (
        matches == cfg.trials
        and (whitney is None or whitney == chi)
        and closure == absorb
        and ch.zaslavsky_regions(chi, spec.n) == spec.order
    )
    payload = {
        "command": "chambers",
        "arrangement": str(spec),
        "n": spec.n,
        "d": d,
        "codim": codim,
        "group_order": spec.order,
        "hyperplanes": len(hyper),
        "char_poly_product": list(chi.coeffs),
        "char_poly_whitney": None if whitney is None else list(whitney.coeffs),
        "regions": ch.zaslavsky_regions(chi, spec.n),
        "predicted": predicted,
        "enumerated": sorted(set(counts)),
        "trials": cfg.trials,
        "matches": matches,
        "predicted_over_order": exact_fields(closure),
        "absorption": exact_fields(absorb),
        "pass": ok,
    }
    row = {k: (" ".join(map(str, v)) if isinstance(v, list) else v)
           for k, v in payload.items() if not isinstance(v, dict)}
    row["predicted_over_order"] = payload["predicted_over_order"]["exact"]
    row["absorption"] = payload["absorption"]["exact"]
    return payload, [row], EXIT_OK if ok else EXIT_FAIL


# -- exact identity battery ---------------------------------------------------


def _small_joint_specs(max_steps: int):
    """All (walks, bridges) multisets with total length <= max_steps."""
    for total in range(1, max_steps + 1):
        for n_parts in range(1, total + 1):
            for parts in combinations_with_replacement(range(1, total + 1), n_parts):
                if sum(parts) != total:
                    continue
                for n_bridges in range(n_parts + 1):
                    for br in combinations(range(n_parts), n_bridges):
                        bridges = tuple(parts[i] for i in br)
                        walks = tuple(p for i, p in enumerate(parts) if i not in br)
                        if all(m >= 2 for m in bridges):
                            yield walks, bridges


def identity_battery(n_max: int = 10, d_max: int = 4, joint_steps: int = 6):
    """Run the exact identities; yields (name, params, lhs, rhs) per check."""
    for n in range(1, n_max + 1):
        for d in range(1, min(d_max, n) + 1):
            for k in range(d):
                ef = expected_faces_walk(n, d, k)
                yield "bigsum", (n, d, k), ef, expected_faces_walk_bigsum(n, d, k)
                yield "walk_bridge", (n, d, k), ef, expected_faces_bridge(n + 1, d, k)
                if k == 0:
                    s = sum((vertex_prob_walk(n, d, i) for i in range(n + 1)), Fraction(0))
                    yield "vertex_sum", (n, d, k), ef, s
                if k == d - 1:
                    s = sum(
                        (face_prob_walk_maxdim(n, idx) for idx in combinations(range(n + 1), d)),
                        Fraction(0),
                    )
                    yield "facet_sum", (n, d, k), ef, s
    if n_max >= 1:
        for d in range(1, d_max + 1):
            for walks, bridges in _small_joint_specs(joint_steps):
                s = absorption_prob(d, walks, bridges) + non_absorption_prob(d, walks, bridges)
                yield "absorb_complement", (d, walks, bridges), s, Fraction(1)


def cmd_identity_check(cfg: RunConfig):
    if cfg.n_max > 19:
        raise ValidationError("--n-max is capped at 19 (bridge enumeration needs n+1 <= 20)")

    def run():
        checked = 0
        for name, params, lhs, rhs in identity_battery(cfg.n_max, cfg.d_max):
            if lhs != rhs:
                return checked, {"identity": name, "params": repr(params),
                                 "lhs": exact_fields(lhs)["exact"],
                                 "rhs": exact_fields(rhs)["exact"]}
            checked += 1
        return checked, None

    if cfg.corrupt:
        with corrupted_stirling_first(*cfg.corrupt):
            checked, failure = run()
    else:
        checked, failure = run()
    payload = {"command": "identity-check", "n_max": cfg.n_max, "d_max": cfg.d_max,
               "checks": checked, "pass": failure is None, "first_failure": failure}
    row = {"n_max": cfg.n_max, "d_max": cfg.d_max, "checks": checked,
           "pass": failure is None,
           "first_failure": "" if failure is None else f"{failure['identity']} {failure['params']}"}
    if failure is not None:
        print(f"identity {failure['identity']} failed at {failure['params']}: "
              f"{failure['lhs']} != {failure['rhs']}", file=sys.stderr)
    return payload, [row], EXIT_OK if failure is None else EXIT_FAIL


COMMANDS = {
    "exact": cmd_exact,
    "faceprob": cmd_faceprob,
    "absorb": cmd_absorb,
    "simulate": cmd_simulate,
    "chambers": cmd_chambers,
    "identity-check": cmd_identity_check,
}


# -- parsing and output --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--seed", type=int, help="master seed (default: $HULLWALK_SEED or 0)")
    common.add_argument("--eps", type=float, default=DEFAULT_EPS)
    common.add_argument("--workers", type=int, help="worker processes (default: all CPUs)")

    p = argparse.ArgumentParser(prog="hullwalk", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def model_flags(sp):
        g = sp.add_mutually_exclusive_group()
        g.add_argument("--walk", action="store_true", help="symmetric walk (default)")
        g.add_argument("--bridge", action="store_true", help="bridge of length n")

    sp = sub.add_parser("exact", parents=[common], help="expected face counts")
    sp.add_argument("--n", required=True, help="int, list '3,5' or range '2-8'")
    sp.add_argument("--d", required=True)
    sp.add_argument("--k")
    sp.add_argument("--total", action="store_true", help="sum over all face dimensions")

    sp = sub.add_parser("faceprob", parents=[common], help="single face probability")
    model_flags(sp)
    sp.add_argument("--n", required=True)
    sp.add_argument("--d", required=True)
    sp.add_argument("--indices", required=True, help="e.g. 0,2")

    sp = sub.add_parser("absorb", parents=[common], help="absorption probability")
    sp.add_argument("--d", required=True)
    sp.add_argument("--walks", default="")
    sp.add_argument("--bridges", default="")

    sp = sub.add_parser("simulate", parents=[common], help="Monte Carlo check")
    sp.add_argument("--target", choices=("faceprob", "faces", "absorb", "shift"),
                    default="faceprob")
    model_flags(sp)
    sp.add_argument("--n")
    sp.add_argument("--d", required=True)
    sp.add_argument("--k")
    sp.add_argument("--indices")
    sp.add_argument("--lags", default="")
    sp.add_argument("--walks", default="")
    sp.add_argument("--bridges", default="")
    sp.add_argument("--mode", choices=("cyclic", "windowed"), default="cyclic")
    sp.add_argument("--law", choices=("symmetric", "shifted"), default="symmetric")
    sp.add_argument("--noise", type=float, default=1.0)
    sp.add_argument("--samples", type=int, default=100_000)

    sp = sub.add_parser("chambers", parents=[common], help="Weyl chamber count check")
    sp.add_argument("--b", default="", help="B-block sizes, e.g. 2 or 1,2")
    sp.add_argument("--a", default="", help="A-block sizes m (acting on R^m)")
    sp.add_argument("--d", default="1")
    sp.add_argument("--trials", type=int, default=100)

    sp = sub.add_parser("identity-check", parents=[common], help="exact identity battery")
    sp.add_argument("--n-max", type=int, default=10)
    sp.add_argument("--d-max", type=int, default=4)
    sp.add_argument("--corrupt-stirling", help=argparse.SUPPRESS)
    return p


def render(payload: dict, rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"schema_version": SCHEMA_VERSION, **payload}, indent=2) + "\n"
    buf = io.StringIO()
    fields: list[str] = []
    for r in rows:
        fields.extend(k for k in r if k not in fields)
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\r\n")
    w.writeheader()
    for r in rows:
        w.writerow({k: _csv_cell(v) for k, v in r.items()})
    return buf.getvalue()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return " ".join(map(str, v))
    return v


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = RunConfig.from_args(ns)
        payload, rows, code = COMMANDS[cfg.command](cfg)
    except ValidationError as e:
        print(f"hullwalk: error: {e}", file=sys.stderr)
        return EXIT_INVALID
    text = render(payload, rows, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
