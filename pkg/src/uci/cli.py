"""Command-line interface.

    uci encode  --code iota --input nums.txt --output nums.uci
    uci decode  --input nums.uci --output nums.txt
    uci table   --code kappa_t --t 2 --from 1 --to 16 [--format csv]
    uci analyze kraft|ratio|sweep|bounds|witness|envelope|proofscan ...

``analyze`` exits 0 when every checked property holds, 1 on a violation and
2 on a usage error.  With ``--output PATH`` it writes CSV rows to PATH and
the text summary to PATH with a ``.txt`` suffix.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import analysis, codes, container
from .dist import FAMILIES, expansion_ratio, parse_dist, truncated_geometric, two_point, uniform
from .errors import UCIError

log = logging.getLogger(__name__)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

ENCODABLE = ("alpha_tilde", "iota", "gamma_tilde_t", "kappa_t", "omega", "eta", "theta")


class UsageError(Exception):
    pass


def _base_name(name: str) -> str:
    return name.removesuffix("_canonical")


def _t_for(name: str, t: int | None) -> int | None:
    if name in ("gamma_tilde_t", "kappa_t"):
        if t is None:
            raise UsageError(f"--t is required for {name}")
        if t < 1:
            raise UsageError("--t must be >= 1")
        return t
    return None


def parse_integers(text: str) -> list[int]:
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        try:
            m = int(line, 10)
        except ValueError:
            raise UsageError(f"line {lineno}: not an integer: {line!r}") from None
        if m < 1:
            raise UsageError(f"line {lineno}: {m} is not a positive integer")
        if m > codes.MAX_CODEPOINT:
            raise UsageError(f"line {lineno}: {m} exceeds the 64-bit range")
        values.append(m)
    return values


# ------------------------------------------------------------------ commands


def cmd_encode(code: str, t: int | None, text: str, output: str | Path) -> dict:
    name = _base_name(code)
    if name not in ENCODABLE:
        raise UsageError(f"cannot encode with {code!r}; choose from {', '.join(ENCODABLE)}")
    values = parse_integers(text)
    data, count, nbits = container.encode_stream(name, _t_for(name, t), values)
    Path(output).write_bytes(data)
    return {"count": count, "payload_bits": nbits, "bits_per_integer": nbits / count if count else 0.0}


def cmd_decode(data: bytes, output: str | Path | None = None) -> tuple[str, dict]:
    code, values = container.decode_stream(data)
    text = "".join(f"{m}\n" for m in values)
    if output is not None:
        Path(output).write_text(text, encoding="utf-8")
    return text, {"code": code.label, "count": len(values)}


def cmd_table(code: str, t: int | None, start: int, stop: int, fmt: str = "text",
              rows: Sequence[int] | None = None) -> str:
    name = _base_name(code)
    if name not in ENCODABLE:
        raise UsageError(f"no encoder for {code!r}")
    if rows is None:
        if not 1 <= start <= stop:
            raise UsageError(f"invalid range {start}..{stop}")
        rows = range(start, stop + 1)
    c = codes.get_code(name, _t_for(name, t))
    table = [(n, str(c.encode(n)), c.length(n)) for n in rows]
    if fmt == "csv":
        return "n,codeword,length\n" + "".join(f"{n},{w},{L}\n" for n, w, L in table)
    width = max([len("codeword")] + [len(w) for _, w, _ in table])
    lines = [f"{'n':>8}  {'codeword':<{width}}  length"]
    lines += [f"{n:>8}  {w:<{width}}  {L}" for n, w, L in table]
    return "\n".join(lines) + "\n"


def _lengthfn(args):
    name = _base_name(args.code)
    try:
        return codes.length_function(name, _t_for(name, args.t))
    except KeyError as e:
        raise UsageError(str(e.args[0])) from None


def _known_bound(args) -> Fraction | None:
    name = _base_name(args.code)
    try:
        return analysis.expansion_bound(name, args.t)
    except KeyError:
        return None


def _family_grid(args):
    if args.family not in FAMILIES:
        raise UsageError(f"--family must be one of {', '.join(FAMILIES)}")
    if args.family == "uniform" and args.max:
        return range(1, args.max + 1)
    return analysis.default_grid(args.family, args.steps)


def analyze(args) -> tuple[bool, str, list[dict]]:
    sub = args.analysis
    if sub == "kraft":
        if not args.max:
            raise UsageError("kraft needs --max")
        fn = _lengthfn(args)
        s = analysis.kraft_partial_sum(fn, args.max)
        ok = s <= 1
        summary = f"kraft {fn.name} M={args.max}: {float(s):.17g} (exact {s}) {'<= 1' if ok else '> 1 VIOLATED'}"
        return ok, summary, [{"code": fn.name, "M": args.max, "sum": float(s), "exact": str(s)}]

    if sub == "ratio":
        if not args.dist:
            raise UsageError("ratio needs --dist")
        fn = _lengthfn(args)
        r = expansion_ratio(fn, parse_dist(args.dist))
        K = _known_bound(args)
        ok = K is None or r.ratio <= float(K) + 1e-12
        summary = (f"ratio {r.code} {args.dist}: H={r.entropy:.12g} E={r.expected_length:.12g} "
                   f"ratio={r.ratio:.12g}" + (f" (bound {float(K):.6g} {'ok' if ok else 'EXCEEDED'})" if K else ""))
        return ok, summary, [r.__dict__]

    if sub == "sweep":
        fn = _lengthfn(args)
        rep = analysis.ratio_sweep(fn, args.family, _family_grid(args), n=args.n)
        K = _known_bound(args)
        ok = K is None or rep.max_ratio <= float(K) + rep.truncation_bound + 1e-12
        return ok, rep.summary(), rep.rows()

    if sub == "bounds":
        fn = _lengthfn(args)
        M = args.max or 10**6
        name = _base_name(args.code)
        if args.b is not None:
            rep = analysis.check_slope_bound(fn, Fraction(args.b), M, subject=fn.name)
        elif name in analysis.CLASSIC_BOUNDS:
            rep = analysis.check_classic_bound(name, M)
        else:
            rep = analysis.check_slope_bound(fn, analysis.known_slope(name, args.t), M, subject=fn.name)
        return rep.holds, rep.summary(), [rep.row()]

    if sub == "witness":
        bs = [args.b] if args.b is not None else [f"1.{i}" for i in range(5)] + ["1.49"]
        reps = [analysis.infeasibility_witness(Fraction(b)) for b in bs]
        rows = [{"b": float(w.b), "kraft_lower_bound": float(w.kraft_lower_bound),
                 "exact": str(w.kraft_lower_bound), "infeasible": w.infeasible} for w in reps]
        summary = "\n".join(w.summary() for w in reps) + f"\nnote: {reps[0].note}"
        return all(w.infeasible for w in reps), summary, rows

    if sub == "envelope":
        if args.t is None:
            raise UsageError("envelope needs --t")
        if args.dist:
            dists = [parse_dist(args.dist)]
        else:
            family = args.family or "truncated_geometric"
            grid = _family_grid(argparse.Namespace(**{**vars(args), "family": family}))
            make = {"two_point": two_point, "uniform": lambda x: uniform(int(x)),
                    "truncated_geometric": lambda r: truncated_geometric(r, args.n)}[family]
            dists = [make(x) for x in grid]
        checks = [analysis.check_envelope(args.t, P) for P in dists]
        rows = [{"dist": P.label, **c.__dict__} for P, c in zip(dists, checks)]
        bad = [r for r in rows if not r["holds"]]
        tag = " (advisory for t=1)" if args.t == 1 else ""
        summary = (f"envelope kappa_t[{args.t}]{tag}: {len(checks) - len(bad)}/{len(checks)} distributions "
                   f"satisfy E <= 3t-1+H+2log2(1+H)")
        return not bad, summary, rows

    if sub == "proofscan":
        bs = [args.b] if args.b is not None else ["1", "1.5", "2.25"]
        reps = [analysis.proof_inequality_scan(Fraction(b), args.steps) for b in bs]
        rows = [{"b": r.b, "gridsize": r.gridsize, "g1_max": r.g1_max, "g1_argmax": r.g1_argmax,
                 "g2_max": r.g2_max, "g2_argmax": r.g2_argmax, "holds": r.holds} for r in reps]
        return all(r.holds for r in reps), "\n".join(r.summary() for r in reps), rows

    raise UsageError(f"unknown analysis {sub!r}")


# ---------------------------------------------------------------- argparse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="uci", description="Universal coding of integers.")
    p.add_argument("-v", "--verbose", action="store_true")
    sp = p.add_subparsers(dest="command", required=True)

    def code_opts(q, required=True):
        q.add_argument("--code", required=required)
        q.add_argument("--t", type=int)

    e = sp.add_parser("encode", help="encode integers (one per line) into a container")
    code_opts(e)
    e.add_argument("--input", default="-")
    e.add_argument("--output", required=True)

    d = sp.add_parser("decode", help="decode a container to integers, one per line")
    d.add_argument("--input", required=True)
    d.add_argument("--output", default="-")

    t = sp.add_parser("table", help="print codewords for a range of integers")
    code_opts(t)
    t.add_argument("--from", dest="start", type=int, default=1)
    t.add_argument("--to", dest="stop", type=int, default=16)
    t.add_argument("--rows", help="comma-separated integers instead of a range")
    t.add_argument("--format", choices=("text", "csv"), default="text")

    a = sp.add_parser("analyze", help="run an analysis and write a report")
    a.add_argument("analysis", choices=("kraft", "ratio", "sweep", "bounds", "witness", "envelope", "proofscan"))
    code_opts(a, required=False)
    a.add_argument("--max", type=int)
    a.add_argument("--b", help="bound slope; fractions such as 5/3 are exact")
    a.add_argument("--dist", help="two_point:q, uniform:N, truncated_geometric:r,N or a file path")
    a.add_argument("--family", choices=FAMILIES)
    a.add_argument("--steps", type=int, default=1000)
    a.add_argument("--n", type=int, default=10_000, help="support size for truncated_geometric sweeps")
    a.add_argument("--output")
    return p


def _read_input(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "encode":
            s = cmd_encode(args.code, args.t, _read_input(args.input), args.output)
            print(f"count={s['count']} payload_bits={s['payload_bits']} "
                  f"bits_per_integer={s['bits_per_integer']:.4f}", file=sys.stderr)
            return EXIT_OK
        if args.command == "decode":
            text, s = cmd_decode(Path(args.input).read_bytes(),
                                 None if args.output == "-" else args.output)
            if args.output == "-":
                sys.stdout.write(text)
            print(f"code={s['code']} count={s['count']}", file=sys.stderr)
            return EXIT_OK
        if args.command == "table":
            rows = [int(x) for x in args.rows.split(",")] if args.rows else None
            sys.stdout.write(cmd_table(args.code, args.t, args.start, args.stop, args.format, rows))
            return EXIT_OK
        if args.analysis not in ("witness", "proofscan", "envelope") and not args.code:
            raise UsageError(f"{args.analysis} needs --code")
        if args.analysis == "sweep" and not args.family:
            raise UsageError("sweep needs --family")
        ok, summary, rows = analyze(args)
    except UCIError as e:
        # corrupt or undecodable data
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (UsageError, ValueError, KeyError) as e:
        print(f"usage error: {e.args[0] if e.args else e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    print(summary)
    if args.output:
        analysis.rows_to_csv(rows, args.output)
        Path(args.output).with_suffix(".txt").write_text(summary + "\n", encoding="utf-8")
    return EXIT_OK if ok else EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
