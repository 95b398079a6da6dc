"""Command-line front end.

Subcommands cover the three algorithm families: ``index`` decides
whether a polynomial is cyclotomic and names the index, ``factors``
locates the indexes of all cyclotomic factors, ``lrs`` finds the
degeneracy orders of the associated linear recurrence.  ``bench`` runs
small timing scenarios over generated inputs.

Polynomials arrive as an inline expression ("x^4+2*x^2+4*x+2"), an
ascending coefficient list ("2,4,2,0,1" or "2 4 2 0 1"), or a file
reference ("@poly.txt").  Reports print as text or as JSON with a
stable key order, so identical invocations give byte-identical output.
"""

import argparse
import json
import random
import re
import sys
import time
from dataclasses import dataclass

from . import poly as P
from .cyclotomic import cyclotomic_product, load_bfile, phi_poly
from .factors import find_cyclo_factor_indexes
from .lrs import lrs_degeneracy_orders
from .recognize import cyclo_index

_LRS_MODES = {"all": "all_orders", "first": "first_order", "decide": "decision_only"}


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    verify: bool = False
    mode: str = "all"
    output_format: str = "text"
    bfile_path: str = None
    conjecture_bound: bool = False
    threads: int = None
    timings: bool = False


class PolySyntaxError(ValueError):
    def __init__(self, message, pos):
        super().__init__(f"{message} (column {pos + 1})")
        self.pos = pos


# ------------------------------------------------------------------ parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|(x)|([+\-*^()])|(\S))")


def _tokenize(text):
    out = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            break
        num, var, op, bad = m.groups()
        if bad is not None:
            raise PolySyntaxError(f"unexpected character {bad!r}", m.start(4))
        if num is not None:
            out.append(("int", int(num), m.start(1)))
        elif var is not None:
            out.append(("x", None, m.start(2)))
        else:
            out.append((op, None, m.start(3)))
        i = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    """Recursive descent over: expr = term ((+|-) term)*;
    term = signed (* signed)*; signed = - signed | power;
    power = atom (^ uint)*; atom = int | x | ( expr ).
    """

    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self):
        f = self.term()
        while self.peek()[0] in "+-":
            op, _, _ = self.take()
            g = self.term()
            f = P.add(f, g) if op == "+" else P.sub(f, g)
        return f

    def term(self):
        f = self.signed()
        while self.peek()[0] == "*":
            self.take()
            f = P.mul(f, self.signed())
        return f

    def signed(self):
        if self.peek()[0] == "-":
            self.take()
            return P.neg(self.signed())
        return self.power()

    def power(self):
        f = self.atom()
        while self.peek()[0] == "^":
            self.take()
            kind, val, at = self.take()
            if kind != "int":
                raise PolySyntaxError("exponent must be a nonnegative integer", at)
            f = _pow(f, val)
        return f

    def atom(self):
        kind, val, at = self.take()
        if kind == "int":
            return [val]
        if kind == "x":
            return [0, 1]
        if kind == "(":
            f = self.expr()
            kind, _, at = self.take()
            if kind != ")":
                raise PolySyntaxError("expected ')'", at)
            return f
        raise PolySyntaxError("expected a number, x or '('", at)


def _pow(f, e):
    out = [1]
    sq = f
    while e:
        if e & 1:
            out = P.mul(out, sq)
        e >>= 1
        if e:
            sq = P.mul(sq, sq)
    return out


def parse_poly(text):
    """Parse an expression in x into an ascending coefficient list."""
    parser = _Parser(text)
    f = parser.expr()
    kind, _, at = parser.peek()
    if kind != "end":
        raise PolySyntaxError("trailing input", at)
    return P.canonical(f)


def format_poly(f):
    """Print descending-power form that parse_poly reads back verbatim."""
    f = P.canonical(f)
    if P.is_zero(f):
        return "0"
    parts = []
    for j in range(len(f) - 1, -1, -1):
        a = f[j]
        if a == 0:
            continue
        sign = "-" if a < 0 else ("+" if parts else "")
        mag = abs(a)
        if j == 0:
            body = str(mag)
        else:
            xp = "x" if j == 1 else f"x^{j}"
            body = xp if mag == 1 else f"{mag}*{xp}"
        parts.append(sign + body)
    return "".join(parts)


_INT_LIST = re.compile(r"[+-]?\d+(?:[,\s]+[+-]?\d+)*\Z")


def _poly_from_text(text):
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial input")
    if _INT_LIST.match(text):
        return P.canonical([int(t) for t in re.split(r"[,\s]+", text)])
    return parse_poly(text)


def read_poly_file(path):
    """One polynomial per file: an expression or an ascending
    coefficient list, '#' to end of line is a comment."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if len(lines) != 1:
        raise ValueError(f"{path}: expected exactly one polynomial, found {len(lines)}")
    return _poly_from_text(lines[0])


def poly_from_arg(arg):
    if arg.startswith("@"):
        return read_poly_file(arg[1:])
    return _poly_from_text(arg)


# ---------------------------------------------------------------- reporting


def _emit(cfg, command, degree, result, elapsed, preprocessing, text_lines):
    if cfg.output_format == "json":
        payload = {
            "input_degree": degree,
            "command": command,
            "seed": cfg.seed,
            "result": result,
            "timings_ms": {"total": round(elapsed * 1000, 3)} if cfg.timings else None,
            "preprocessing_log": preprocessing,
        }
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)
        if cfg.timings:
            print(f"time: {elapsed * 1000:.1f} ms")


def cmd_cyclo_index(f, cfg, method="prefix", verify=True, table=None):
    t0 = time.perf_counter()
    v = cyclo_index(f, method=method, verify=verify, table=table)
    elapsed = time.perf_counter() - t0
    result = {
        "cyclotomic": v.outcome == "cyclotomic",
        "index": v.index,
        "outcome": v.outcome,
        "method": v.method,
        "checks_failed": v.checks_failed,
    }
    if v.outcome == "cyclotomic":
        text = [f"cyclotomic: index {v.index} (method {v.method})"]
    elif v.outcome == "candidate_unverified":
        text = [f"candidate index {v.index} (method {v.method}, unverified)"]
    else:
        text = [f"not cyclotomic (failed: {v.checks_failed})"]
    return result, elapsed, None, text


def cmd_cyclo_factors(f, cfg, preprocess=False):
    t0 = time.perf_counter()
    rep = find_cyclo_factor_indexes(
        f, rng=random.Random(cfg.seed), verify=cfg.verify, preprocess=preprocess
    )
    elapsed = time.perf_counter() - t0
    verified = None
    if rep.verified is not None:
        verified = {str(k): rep.verified[k] for k in sorted(rep.verified)}
    result = {
        "verified_low": list(rep.verified_low),
        "candidates": list(rep.candidates),
        "verified": verified,
        "evaluation_points_used": [str(b) for b in rep.evaluation_points_used],
    }
    text = [
        "verified low indexes: " + (" ".join(map(str, rep.verified_low)) or "none"),
        "candidate indexes: " + (" ".join(map(str, rep.candidates)) or "none"),
    ]
    if verified is not None:
        kept = [k for k in rep.candidates if rep.verified[k]]
        text.append("verified indexes: " + (" ".join(map(str, kept)) or "none"))
    return result, elapsed, None, text


def cmd_lrs_orders(f, cfg):
    t0 = time.perf_counter()
    rep = lrs_degeneracy_orders(
        f,
        rng=cfg.seed,
        verify=cfg.verify,
        mode=_LRS_MODES[cfg.mode],
        conjecture_bound=cfg.conjecture_bound,
        threads=cfg.threads,
    )
    elapsed = time.perf_counter() - t0
    result = {
        "orders": [{"k": k, "status": s} for k, s in rep.orders],
        "implied_by_deflation": list(rep.implied_by_deflation),
        "mode": rep.mode,
        "conjecture_bound_used": rep.conjecture_bound_used,
    }
    text = [f"# {step}" for step in rep.preprocessing_log]
    if rep.orders:
        text += [f"order {k}: {s}" for k, s in rep.orders]
    else:
        text.append("no degeneracy orders")
    return result, elapsed, list(rep.preprocessing_log), text


# ------------------------------------------------------------------- bench


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t0) * 1000


def bench_index(seed):
    rng = random.Random(seed)
    ks = [105, 255, 1155, 2310, 3003, rng.randrange(1000, 3000)]
    rows = []
    for k in ks:
        f = phi_poly(k)
        for method in ("prefix", "eval"):
            v, ms = _timed(lambda: cyclo_index(f, method=method))
            ok = v.outcome == "cyclotomic" and v.index == k
            rows.append(
                {
                    "case": f"phi_{k}_{method}",
                    "degree": P.degree(f),
                    "ms": round(ms, 2),
                    "summary": f"index {v.index} {'ok' if ok else 'WRONG'}",
                }
            )
    return rows


def bench_factors(seed):
    rng = random.Random(seed)
    rows = []
    for trial in range(3):
        want = sorted(rng.sample(range(1, 501), 30))
        f = cyclotomic_product(want)
        rep, ms = _timed(
            lambda: find_cyclo_factor_indexes(f, rng=random.Random(rng.randrange(2**32)))
        )
        got = set(rep.verified_low) | {k for k in rep.candidates if rep.verified[k]}
        missed = sorted(set(want) - got)
        extras = sorted(got - set(want))
        rows.append(
            {
                "case": f"product_{trial}",
                "degree": P.degree(f),
                "ms": round(ms, 2),
                "summary": f"recovered {len(set(want) & got)}/{len(want)}, "
                f"missed {len(missed)}, extras {len(extras)}",
                "missed": len(missed),
            }
        )
    return rows


def bench_lrs(seed):
    rng = random.Random(seed)
    cases = [("degenerate_quartic", [2, 4, 2, 0, 1]), ("phi3_phi5", cyclotomic_product([3, 5]))]
    for d in (25, 50):
        f = [rng.randint(-1024, 1024) for _ in range(d)] + [rng.randint(1, 1024)]
        if f[0] == 0:
            f[0] = 1
        cases.append((f"random_deg_{d}", f))
    rows = []
    for name, f in cases:
        rep, ms = _timed(
            lambda: lrs_degeneracy_orders(f, rng=rng.randrange(2**32), verify=True)
        )
        rows.append(
            {
                "case": name,
                "degree": P.degree(f),
                "ms": round(ms, 2),
                "summary": "orders " + str(rep.verified_orders()),
            }
        )
    return rows


_SCENARIOS = {"index": bench_index, "factors": bench_factors, "lrs": bench_lrs}


def cmd_bench(scenario, cfg):
    names = list(_SCENARIOS) if scenario == "all" else [scenario]
    rows = []
    for name in names:
        rows.extend(_SCENARIOS[name](cfg.seed))
    text = [f"{'case':24} {'deg':>6} {'ms':>10}  summary"]
    for r in rows:
        text.append(f"{r['case']:24} {r['degree']:>6} {r['ms']:>10.2f}  {r['summary']}")
    return {"scenario": scenario, "cases": rows}, 0.0, None, text


# -------------------------------------------------------------------- main


def build_parser():
    ap = argparse.ArgumentParser(
        prog="cyclo",
        description="cyclotomic recognition, factor indexes and recurrence "
        "degeneracy orders for integer polynomials",
    )
    ap.add_argument("--format", choices=("text", "json"), default="text")
    ap.add_argument("--bfile", metavar="PATH", help="height table b-file")
    ap.add_argument("--timings", action="store_true", help="include wall time")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", help="is the polynomial cyclotomic, and which one")
    p.add_argument("poly")
    p.add_argument("--method", choices=("prefix", "eval"), default="prefix")
    p.add_argument("--no-verify", action="store_true")

    p = sub.add_parser("factors", help="indexes of all cyclotomic factors")
    p.add_argument("poly")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--preprocess", action="store_true")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("lrs", help="degeneracy orders of the recurrence")
    p.add_argument("poly")
    p.add_argument("--mode", choices=("all", "first", "decide"), default="all")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--conjecture-bound", action="store_true")
    p.add_argument("--threads", type=int, default=None)

    p = sub.add_parser("bench", help="timing scenarios over generated inputs")
    p.add_argument("scenario", choices=("index", "factors", "lrs", "all"))
    p.add_argument("--seed", type=int, default=0)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    cfg = RunConfig(
        seed=getattr(args, "seed", 0),
        verify=getattr(args, "verify", False),
        mode=getattr(args, "mode", "all"),
        output_format=args.format,
        bfile_path=args.bfile,
        conjecture_bound=getattr(args, "conjecture_bound", False),
        threads=getattr(args, "threads", None),
        timings=args.timings,
    )
    try:
        table = load_bfile(cfg.bfile_path) if cfg.bfile_path else None
        if args.command == "bench":
            result, elapsed, prep, text = cmd_bench(args.scenario, cfg)
            degree = None
        else:
            f = poly_from_arg(args.poly)
            if args.command == "index":
                result, elapsed, prep, text = cmd_cyclo_index(
                    f, cfg, method=args.method, verify=not args.no_verify, table=table
                )
            elif args.command == "factors":
                result, elapsed, prep, text = cmd_cyclo_factors(
                    f, cfg, preprocess=args.preprocess
                )
            else:
                result, elapsed, prep, text = cmd_lrs_orders(f, cfg)
            degree = P.degree(f)
    except (ValueError, OSError) as exc:
        print(f"cyclo: error: {exc}", file=sys.stderr)
        return 2
    _emit(cfg, args.command, degree, result, elapsed, prep, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
