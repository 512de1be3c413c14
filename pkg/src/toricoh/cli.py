"""Command-line front end: ``toricoh delta|surface|coh|cover|batch``.

Every subcommand builds one or more :class:`Job` objects, runs them and
prints the results as JSON (stable key order, rationals as ``"num/den"``)
or TSV.  Exit status is 0 on success, 2 for invalid input and 3 when a
closed formula disagrees with its oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Union

from . import __version__
from .arith import format_rational, to_rational
from .cohomology import checks_enabled, h02_diagnostic, h_vector, main2_closed
from .coverings import CoveringSpec, cover_report, new_covering
from .errors import InternalInconsistency, InvalidInput
from .singularities import CyclicQuotientType, delta, delta_general, normalize_type
from .surface import (DivisorClass, RuledToricSurface, canonical_cycle, canonical_form,
                      new_surface)

EXIT_OK, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3
TASKS = ("delta", "surface-info", "cohomology", "covering")
FORMATS = ("json", "tsv")
METHODS = ("auto", "enum", "closed")
MAX_SAFE_INT = 2**53 - 1


@dataclass(frozen=True)
class Job:
    task: str
    surface: Optional[RuledToricSurface] = None
    payload: Dict[str, Any] = field(default_factory=dict)
    format: str = "json"


# ---------------------------------------------------------------- parsing

def _int(value, path: str) -> int:
    if not isinstance(value, int) or isinstance(value, bool):
        raise InvalidInput(f"expected an integer, got {value!r}", path)
    return value


def _get(obj: dict, key: str, path: str):
    if not isinstance(obj, dict):
        raise InvalidInput(f"expected an object, got {type(obj).__name__}", path)
    if key not in obj:
        raise InvalidInput("missing field", f"{path}.{key}" if path else key)
    return obj[key]


def _divisor(value, path: str) -> DivisorClass:
    if not isinstance(value, list) or len(value) != 4:
        raise InvalidInput(f"a divisor is [a, b, alpha, beta], got {value!r}", path)
    return DivisorClass(*(_int(x, f"{path}[{i}]") for i, x in enumerate(value)))


def parse_surface(obj, path: str = "surface") -> RuledToricSurface:
    fields = [_int(_get(obj, k, path), f"{path}.{k}") for k in ("d1", "d2", "n1", "n2")]
    r = _get(obj, "r", path)
    if isinstance(r, bool) or not isinstance(r, (int, str)):
        raise InvalidInput(f"r must be a \"num/den\" string or an integer, got {r!r}", f"{path}.r")
    try:
        r = to_rational(r)
    except InvalidInput as e:
        raise e.under(f"{path}.r") from None
    try:
        return new_surface(*fields, r)
    except InvalidInput as e:
        raise e.under(path) from None


def _parse_covering(S: RuledToricSurface, obj: dict, path: str) -> CoveringSpec:
    n = _int(_get(obj, "n", path), f"{path}.n")
    H = _divisor(_get(obj, "H", path), f"{path}.H")
    comps_raw = _get(obj, "components", path)
    if not isinstance(comps_raw, list):
        raise InvalidInput("components must be a list", f"{path}.components")
    comps = []
    for i, c in enumerate(comps_raw):
        cp = f"{path}.components[{i}]"
        comps.append((_int(_get(c, "mult", cp), f"{cp}.mult"), _divisor(_get(c, "class", cp), f"{cp}.class")))
    try:
        return new_covering(S, comps, H, n)
    except InvalidInput as e:
        raise e.under(path) from None


def _job_from_obj(obj, path: str, fmt: str) -> Job:
    task = _get(obj, "task", path)
    where = lambda k: f"{path}.{k}" if path else k
    if task not in TASKS:
        raise InvalidInput(f"unknown task {task!r}; expected one of {', '.join(TASKS)}", where("task"))
    if task == "delta":
        d = _int(_get(obj, "d", path), where("d"))
        k = _int(_get(obj, "k", path), where("k"))
        if "p" in obj:
            payload = {"d": d, "p": _int(obj["p"], where("p")), "k": k}
        else:
            payload = {"d": d, "a": _int(_get(obj, "a", path), where("a")),
                       "b": _int(_get(obj, "b", path), where("b")), "k": k}
        try:
            _delta_value(payload)
        except InvalidInput as e:
            raise e.under(path) if path else e from None
        return Job(task, None, payload, fmt)
    S = parse_surface(_get(obj, "surface", path), where("surface"))
    if task == "surface-info":
        return Job(task, S, {}, fmt)
    if task == "cohomology":
        D = _divisor(_get(obj, "divisor", path), where("divisor"))
        method = obj.get("method", "auto")
        if method not in METHODS:
            raise InvalidInput(f"unknown method {method!r}", where("method"))
        return Job(task, S, {"divisor": D, "method": method}, fmt)
    cov_obj = obj.get("covering", obj)
    cov = _parse_covering(S, cov_obj, where("covering") if "covering" in obj else path)
    return Job(task, S, {"covering": cov}, fmt)


def parse_job(data: Union[bytes, str, dict], fmt: str = "json") -> Union[Job, List[Job]]:
    """Parse one job object or a batch ``{"jobs": [...]}``."""
    if isinstance(data, (bytes, str)):
        try:
            obj = json.loads(data)
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            raise InvalidInput(f"not valid UTF-8 JSON: {e}") from None
    else:
        obj = data
    if isinstance(obj, dict) and "jobs" in obj:
        if not isinstance(obj["jobs"], list):
            raise InvalidInput("must be a list", "jobs")
        return [_job_from_obj(j, f"jobs[{i}]", fmt) for i, j in enumerate(obj["jobs"])]
    if not isinstance(obj, dict):
        raise InvalidInput("a job is a JSON object")
    return _job_from_obj(obj, "", fmt)


# ---------------------------------------------------------------- running

def _delta_value(p: dict) -> Fraction:
    if "p" in p:
        return delta(p["d"], p["p"], p["k"])
    return delta_general(CyclicQuotientType(p["d"], p["a"], p["b"]), p["k"])


def _surface_info(S: RuledToricSurface) -> dict:
    return {
        "surface": S.to_json(),
        "k": S.k,
        "p1": S.p1, "q1": S.q1, "p2": S.p2, "q2": S.q2,
        "biruled": S.is_biruled,
        "singular_points": [{"d": d, "p": p} for d, p in S.singular_points],
        "generators": ["Z", "F", "E_X", "E_Y"],
        "relations": [f"F = {S.d1} E_X", f"F = {S.d2} E_Y"],
        "torsion_order": S.d,
        "T": S.T.as_list(),
        "K": S.K.as_list(),
        "Z_K": list(canonical_cycle(S).coeffs),
        "intersection_matrix": S.intersection_matrix(),
    }


def _cohomology(S: RuledToricSurface, D: DivisorClass, method: str) -> dict:
    hv = h_vector(S, D, method=method)
    out = {
        "divisor": canonical_form(S, D).as_list(),
        "h": list(hv.h),
        "chi": hv.chi,
        "method": hv.method,
        "flags": list(hv.flags),
        "checked": hv.checked,
    }
    m2 = main2_closed(S, D)
    if m2 is not None:
        out["region"] = m2.region
        if m2.wp2_count is not None:
            out["wp2_count"] = m2.wp2_count
    rep = h02_diagnostic(S, D)
    if rep is not None:
        out["h02_diagnostic"] = {"status": rep.status, "predicted": rep.predicted,
                                 "enumerated": rep.enumerated}
    return out


def _execute(job: Job) -> dict:
    if job.task == "delta":
        p = job.payload
        out = dict(p)
        if "a" in p:
            t = normalize_type(CyclicQuotientType(p["d"], p["a"], p["b"]))
            out["normalized"] = [t.d, t.a, t.b]
        out["delta"] = _delta_value(p)
        return out
    if job.task == "surface-info":
        return _surface_info(job.surface)
    if job.task == "cohomology":
        return _cohomology(job.surface, job.payload["divisor"], job.payload["method"])
    cov = job.payload["covering"]
    out = {"surface": job.surface.to_json(), "n": cov.n, "H": cov.H.as_list()}
    out.update(cover_report(cov))
    return out


def run_job(job: Job) -> dict:
    """Run a job; the result has ``task``, ``status`` and either ``result`` or ``error``."""
    try:
        return {"task": job.task, "status": "ok", "result": _execute(job),
                "checks": "strict" if checks_enabled() else "off"}
    except InvalidInput as e:
        return {"task": job.task, "status": "invalid-input", "error": str(e)}
    except InternalInconsistency as e:
        return {"task": job.task, "status": "internal-inconsistency", "error": str(e)}


def exit_code(results: Sequence[dict]) -> int:
    code = EXIT_OK
    for r in results:
        if r["status"] == "internal-inconsistency":
            code = EXIT_INTERNAL
        elif r["status"] == "invalid-input" and code == EXIT_OK:
            code = EXIT_INVALID
    return code


def run_jobs(jobs: Sequence[Job], workers: int = 1) -> List[dict]:
    """Run jobs, returning results in input order for any ``workers``."""
    if workers <= 1 or len(jobs) <= 1:
        return [run_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_job, jobs))


# ---------------------------------------------------------------- output

def to_plain(x):
    """JSON-ready copy: rationals as strings, oversized integers as strings."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > MAX_SAFE_INT else x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, DivisorClass):
        return to_plain(x.as_list())
    if isinstance(x, dict):
        return {str(k): to_plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [to_plain(v) for v in x]
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _tsv_rows(result: dict) -> List[List[Any]]:
    task, res = result["task"], result.get("result")
    if res is None:
        return [["status", "error"], [result["status"], result["error"]]]
    if task == "delta":
        keys = [k for k in ("d", "p", "a", "b", "k", "delta") if k in res]
        return [keys, [res[k] for k in keys]]
    if task == "cohomology":
        a, b, al, be = res["divisor"]
        h0, h1, h2 = res["h"]
        return [["a", "b", "alpha", "beta", "h0", "h1", "h2", "chi", "method"],
                [a, b, al, be, h0, h1, h2, res["chi"], res["method"]]]
    if task == "covering":
        rows = [["k", "u", "v", "w", "h1"]]
        rows += [[r["k"], *r["uvw"], r["h1"]] for r in res["table"]]
        return rows
    rows = [["key", "value"]]
    for k, v in res.items():
        rows.append([k, json.dumps(to_plain(v), sort_keys=True, separators=(",", ":"))
                     if isinstance(v, (dict, list)) else v])
    return rows


def format_output(results: Union[dict, Sequence[dict]], fmt: str = "json") -> bytes:
    """Serialize one result or a batch deterministically; always ends in a newline."""
    if fmt not in FORMATS:
        raise InvalidInput(f"unknown format {fmt!r}")
    batch = not isinstance(results, dict)
    if fmt == "json":
        doc = {"results": list(results)} if batch else results
        return (json.dumps(to_plain(doc), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode()
    blocks = []
    for i, r in enumerate(results if batch else [results]):
        lines = [f"# job {i} {r['task']}"] if batch else []
        for row in _tsv_rows(to_plain(r)):
            lines.append("\t".join(str(c).lower() if isinstance(c, bool) else str(c) for c in row))
        blocks.append("\n".join(lines))
    return ("\n".join(blocks) + "\n").encode()


# ---------------------------------------------------------------- argparse

def _surface_arg(text: str) -> dict:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 5:
        raise argparse.ArgumentTypeError("surface is d1,d2,n1,n2,r (r may be num/den)")
    try:
        d1, d2, n1, n2 = (int(p) for p in parts[:4])
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad surface {text!r}") from None
    return {"d1": d1, "d2": d2, "n1": n1, "n2": n2, "r": parts[4]}


def _divisor_arg(text: str) -> List[int]:
    try:
        vals = [int(p) for p in text.split(",")]
    except ValueError:
        vals = []
    if len(vals) != 4:
        raise argparse.ArgumentTypeError(f"divisor is a,b,alpha,beta, got {text!r}")
    return vals


def _component_arg(text: str) -> dict:
    mult, sep, cls = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError(f"component is M:a,b,alpha,beta, got {text!r}")
    try:
        m = int(mult)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad multiplicity in {text!r}") from None
    return {"mult": m, "class": _divisor_arg(cls)}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="json", help="output format (default json)")

    ap = argparse.ArgumentParser(
        prog="toricoh",
        description="Exact cohomology of divisors on rational ruled toric surfaces "
                    "and Betti numbers of their cyclic covers.",
        epilog="Set TORICOH_CHECKS=off to skip oracle cross-checks of closed formulas. "
               "Exit codes: 0 ok, 2 invalid input, 3 internal cross-check failure.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("delta", parents=[common], help="correction term of a cyclic quotient point")
    p.add_argument("d", type=int, help="order of the group")
    p.add_argument("p", type=int, help="weight p of 1/d(1,p), or a with --b")
    p.add_argument("k", type=int, help="argument")
    p.add_argument("--b", type=int, help="treat the type as 1/d(p, b)")

    p = sub.add_parser("surface", parents=[common], help="invariants of a surface")
    p.add_argument("surface", type=_surface_arg, help="d1,d2,n1,n2,r")

    p = sub.add_parser("coh", parents=[common], help="h^0, h^1, h^2 of O_S(D)")
    p.add_argument("surface", type=_surface_arg, help="d1,d2,n1,n2,r")
    p.add_argument("divisor", type=_divisor_arg, help="a,b,alpha,beta (any representative)")
    p.add_argument("--method", choices=METHODS, default="auto",
                   help="auto: closed form with oracle check; closed: closed form only; enum: oracle only")

    p = sub.add_parser("cover", parents=[common], help="eigensheaf table and Betti number of a cyclic cover")
    p.add_argument("surface", type=_surface_arg, help="d1,d2,n1,n2,r")
    p.add_argument("--n", type=int, required=True, help="number of sheets")
    p.add_argument("--H", type=_divisor_arg, required=True, help="a,b,alpha,beta with sum m_i D_i ~ nH")
    p.add_argument("--component", type=_component_arg, action="append", required=True,
                   help="branch component M:a,b,alpha,beta (repeatable)")

    p = sub.add_parser("batch", parents=[common], help="run a JSON file of jobs")
    p.add_argument("file", help='file holding {"jobs": [...]}, or - for stdin')
    p.add_argument("--jobs", type=int, default=1, help="worker processes (output order is fixed)")
    return ap


def _job_object(args) -> dict:
    if args.command == "delta":
        if args.b is None:
            return {"task": "delta", "d": args.d, "p": args.p, "k": args.k}
        return {"task": "delta", "d": args.d, "a": args.p, "b": args.b, "k": args.k}
    if args.command == "surface":
        return {"task": "surface-info", "surface": args.surface}
    if args.command == "coh":
        return {"task": "cohomology", "surface": args.surface, "divisor": args.divisor,
                "method": args.method}
    return {"task": "covering", "surface": args.surface,
            "covering": {"n": args.n, "H": args.H, "components": args.component}}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout.buffer
    try:
        if args.command == "batch":
            if args.file == "-":
                data = sys.stdin.buffer.read()
            else:
                with open(args.file, "rb") as fh:
                    data = fh.read()
            jobs = parse_job(data, args.format)
            if isinstance(jobs, Job):
                jobs = [jobs]
            results = run_jobs(jobs, args.jobs)
            out.write(format_output(results, args.format))
        else:
            job = parse_job(_job_object(args), args.format)
            results = [run_job(job)]
            out.write(format_output(results[0], args.format))
    except InvalidInput as e:
        print(f"toricoh: invalid input: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"toricoh: {e}", file=sys.stderr)
        return EXIT_INVALID
    out.flush()
    code = exit_code(results)
    for r in results:
        if r["status"] != "ok":
            print(f"toricoh: {r['status']}: {r['error']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
