"""Command-line interface.

Exit codes: 0 on success, 1 when a verification identity fails, 2 on
configuration or module errors (a JSON error object is printed on stdout).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import BadConfig, DTPTError, NonGenericZeta
from .quiver import (build_quiver, curve_profile, enumerate_partitions,
                     euler_ringel_form, parse_partition)
from .roots import chamber_split, parse_zeta, roots_up_to_degree, standard_zetas
from .series import (ChamberSeriesRequest, check_strategy_agreement,
                     check_universal_factorization, chamber_factor_series,
                     framed_partition_function, points_series, universal_series,
                     verify_theorem)
from .torus import STSeries, TruncationPolicy

SERIES = ("pt", "dt", "points", "custom", "universal", "a-plus", "a-minus")


@dataclass
class JobConfig:
    command: str
    n0: int = 1
    n1: int = 1
    partition: str | None = None
    all_partitions: bool = False
    r: int = 1
    series: str = "pt"
    custom_zeta: str | None = None
    max_s_degree: int = 3
    l_floor: int | None = None
    format: str = "json"
    euler: bool = False
    strategy: str = "closed"

    def partitions(self):
        if self.all_partitions or self.partition == "all":
            return enumerate_partitions(self.n0, self.n1)
        if self.partition is None:
            return enumerate_partitions(self.n0, self.n1)[:1]
        return [parse_partition(self.n0, self.n1, self.partition)]

    def policy(self, n):
        if self.max_s_degree < 0:
            raise BadConfig("--max-s-degree must be non-negative")
        return TruncationPolicy(n * self.max_s_degree, self.l_floor)

    def validate(self):
        if self.r < 1:
            raise BadConfig("-r must be at least 1")
        if self.series == "custom" and not self.custom_zeta:
            raise BadConfig("--series custom needs --custom-zeta")
        if self.euler and (self.l_floor is not None or self.strategy != "closed"
                           or self.series in ("universal", "a-plus", "a-minus")):
            raise BadConfig("--euler needs exact output (closed strategy, no L-floor)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise BadConfig(message)


def build_parser():
    parser = _Parser(prog="motivic-dtpt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("--n0", type=int, default=1)
        p.add_argument("--n1", type=int, default=1)
        p.add_argument("--partition", help="label word over B/T, or 'all'")
        p.add_argument("--format", choices=["json", "text"], default="json")

    p = sub.add_parser("compute", help="print one generating function")
    common(p)
    p.add_argument("--series", choices=SERIES, default="pt")
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--custom-zeta", help="comma separated entries like '1+eps,-1/2'")
    p.add_argument("--max-s-degree", type=int, default=3)
    p.add_argument("--l-floor", type=int)
    p.add_argument("--strategy", choices=["closed", "ratio", "both"], default="closed")
    p.add_argument("--euler", action="store_true", help="specialize L^(1/2) -> 1")

    p = sub.add_parser("verify", help="check the factorization identities")
    common(p)
    p.add_argument("--all-partitions", action="store_true")
    p.add_argument("-r", type=int, default=1)
    p.add_argument("--custom-zeta")
    p.add_argument("--max-s-degree", type=int, default=3)
    p.add_argument("--l-floor", type=int)

    p = sub.add_parser("quiver", help="describe the quiver of a partition")
    common(p)
    p.add_argument("-r", type=int, default=0)
    p.add_argument("--dot", action="store_true", help="emit Graphviz DOT")

    p = sub.add_parser("partitions", help="list the partitions of a strip polygon")
    common(p)
    return parser


def _config(args) -> JobConfig:
    cfg = JobConfig(command=args.command)
    for name in ("n0", "n1", "partition", "all_partitions", "r", "series", "custom_zeta",
                 "max_s_degree", "l_floor", "format", "euler", "strategy"):
        if hasattr(args, name):
            setattr(cfg, name, getattr(args, name))
    return cfg


def _series_payload(cfg, p, series, euler):
    st = STSeries(series)
    payload = {"partition": str(p), "series": cfg.series, "r": cfg.r}
    payload.update(st.to_json(euler=euler))
    return payload, st


def run_compute(cfg: JobConfig):
    cfg.validate()
    parts = cfg.partitions()
    if len(parts) != 1:
        raise BadConfig("compute takes a single partition")
    p = parts[0]
    policy = cfg.policy(p.n)
    quiver = build_quiver(p, 0)
    if cfg.series in ("pt", "dt", "custom"):
        zeta = parse_zeta(cfg.custom_zeta, p.n) if cfg.series == "custom" else cfg.series.upper()
        req = ChamberSeriesRequest(p, cfg.r, zeta, policy, cfg.strategy)
        series = framed_partition_function(req)
    elif cfg.series == "points":
        series = points_series(p.n, cfg.r, policy)
    elif cfg.series == "universal":
        series = universal_series(quiver, policy)
    else:
        zeta = parse_zeta(cfg.custom_zeta, p.n) if cfg.custom_zeta else standard_zetas(p.n)[0]
        series = chamber_factor_series(quiver, zeta, 1 if cfg.series == "a-plus" else -1, policy)
    payload, st = _series_payload(cfg, p, series, cfg.euler)
    if cfg.format == "text":
        return st.to_text(euler=cfg.euler), 0
    return payload, 0


def _verify_one(args):
    p, r, policy, zeta_text, l_floor = args
    if zeta_text is None:
        return [x.to_json() for x in verify_theorem(p, r, policy)]
    zeta = parse_zeta(zeta_text, p.n)
    floored = TruncationPolicy(min(policy.max_total_degree, 2 * p.n),
                               l_floor if l_floor is not None else -4)
    return [check_universal_factorization(p, zeta, floored).to_json(),
            check_strategy_agreement(p, r, zeta, floored).to_json()]


def _workers():
    try:
        return max(1, int(os.environ.get("MOTIVIC_DTPT_THREADS", "1")))
    except ValueError:
        raise BadConfig("MOTIVIC_DTPT_THREADS must be an integer") from None


def run_verify(cfg: JobConfig):
    cfg.validate()
    parts = cfg.partitions()
    if cfg.custom_zeta:
        # fail fast on non-generic or malformed parameters
        for p in parts:
            split = chamber_split(roots_up_to_degree(p.n, cfg.policy(p.n).max_total_degree),
                                  parse_zeta(cfg.custom_zeta, p.n))
            if not split.generic:
                raise NonGenericZeta(f"stability {cfg.custom_zeta} pairs to zero with "
                                     f"{split.zeros[0].label()}", zeta=cfg.custom_zeta)
    jobs = [(p, cfg.r, cfg.policy(p.n), cfg.custom_zeta, cfg.l_floor) for p in parts]
    workers = min(_workers(), len(jobs))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_verify_one, jobs))
    else:
        results = [_verify_one(j) for j in jobs]
    reports = [rep for batch in results for rep in batch]
    ok = all(rep["pass"] for rep in reports)
    if cfg.format == "text":
        lines = [f"{'PASS' if rep['pass'] else 'FAIL'} {rep['identity']} "
                 + " ".join(f"{k}={v}" for k, v in rep["params"].items()) for rep in reports]
        lines.append(f"{sum(r['pass'] for r in reports)}/{len(reports)} passed")
        return "\n".join(lines), 0 if ok else 1
    return {"pass": ok, "reports": reports}, 0 if ok else 1


def run_quiver(cfg: JobConfig, dot=False):
    out = []
    for p in cfg.partitions():
        q = build_quiver(p, max(cfg.r, 0))
        if dot:
            out.append(q.to_dot())
            continue
        chi, pairing = euler_ringel_form(q)
        entry = {"partition": p.to_json()}
        entry.update(q.to_json())
        entry["chi"] = chi
        entry["pairing"] = [list(row) for row in pairing.matrix]
        entry["curves"] = curve_profile(p).to_json()
        out.append(entry)
    if dot:
        return "\n".join(out), 0
    if cfg.format == "text":
        return "\n".join(f"{e['partition']['labels']}: loops={e['loops']} "
                         f"curves={e['curves']['types']}" for e in out), 0
    return out if len(out) > 1 else out[0], 0


def run_partitions(cfg: JobConfig):
    parts = enumerate_partitions(cfg.n0, cfg.n1)
    if cfg.format == "text":
        return "\n".join(str(p) for p in parts), 0
    return [p.to_json() for p in parts], 0


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = _config(args)
        if cfg.command == "compute":
            result, code = run_compute(cfg)
        elif cfg.command == "verify":
            result, code = run_verify(cfg)
        elif cfg.command == "quiver":
            result, code = run_quiver(cfg, dot=args.dot)
        else:
            result, code = run_partitions(cfg)
    except DTPTError as exc:
        print(json.dumps({"error": exc.to_json()}, indent=2))
        return 2
    except ValueError as exc:
        print(json.dumps({"error": {"code": "BadConfig", "module": "cli", "message": str(exc)}},
                         indent=2))
        return 2
    if isinstance(result, str):
        print(result)
    else:
        print(json.dumps(result, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
