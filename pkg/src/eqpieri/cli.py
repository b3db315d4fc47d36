"""
Command line front end.

    eqpieri coeff --m 3 --p 4 --w 631594287 --u 839154267
    eqpieri expand --m 3 --p 4 --w 631594287 --format json
    eqpieri classical --m 2 --p 1 --w 1324
    eqpieri verify --n 4

Exit status: 0 on success, 1 on bad parameters, 2 when ``verify`` finds a
mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .oracle import verify
from .perm import Permutation, length
from .pieri import (
    classical_limit, compute_datum, nonvanishing, pieri_coefficient,
    pieri_expand, summand_text,
)
from .poly import positivity_certificate

EXIT_OK, EXIT_DOMAIN, EXIT_MISMATCH = 0, 1, 2


class DomainError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _perm(text: str, n: Optional[int], name: str) -> Permutation:
    if text is None:
        raise DomainError(f"--{name} is required")
    try:
        w = Permutation.parse(text)
    except ValueError as exc:
        raise DomainError(f"--{name}: {exc}") from None
    if n is not None and w.n != n:
        raise DomainError(f"--{name} {text} is not in S_{n}")
    return w


def _need(args, *names):
    missing = [f"--{k}" for k in names if getattr(args, k) is None]
    if missing:
        raise DomainError(f"{args.verb} needs {', '.join(missing)}")


def _check_mp(n: int, m: int, p: int) -> None:
    if not (1 <= m < n and 1 <= p <= n - m):
        raise DomainError(f"need 1 <= m < n and 1 <= p <= n-m (n={n}, m={m}, p={p})")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _coeff(args) -> tuple[int, str]:
    _need(args, "m", "p", "w", "u")
    w = _perm(args.w, args.n, "w")
    u = _perm(args.u, w.n, "u")
    _check_mp(w.n, args.m, args.p)
    c = pieri_coefficient(w, u, args.m, args.p)
    q = args.p + length(w) - length(u)
    factored = summand_text(compute_datum(w, u, args.m, args.p)) if c else "0"
    cert = positivity_certificate(c) if c else None
    if args.format == "json":
        return EXIT_OK, _dump({
            "n": w.n, "m": args.m, "p": args.p, "w": str(w), "u": str(u), "q": q,
            "nonzero": nonvanishing(w, u, args.m, args.p),
            "coefficient": str(c), "summands": factored,
            "certificate": str(cert) if cert is not None else None,
            "polynomial": c.to_json(),
        })
    if not c:
        return EXIT_OK, "0"
    lines = [factored]
    if factored != str(c):
        lines.append(f"= {c}")
    if cert is not None and c.degree() > 0:
        lines.append(f"d-basis: {cert}")
    return EXIT_OK, "\n".join(lines)


def _expand(args) -> tuple[int, str]:
    _need(args, "m", "p", "w")
    w = _perm(args.w, args.n, "w")
    _check_mp(w.n, args.m, args.p)
    result = pieri_expand(w, args.m, args.p)
    if args.format == "json":
        return EXIT_OK, _dump(result.to_json())
    return EXIT_OK, "\n".join(f"{u}  q={result.q_of(u)}  {c}" for u, c in result.terms.items())


def _classical(args) -> tuple[int, str]:
    _need(args, "m", "p", "w")
    w = _perm(args.w, args.n, "w")
    _check_mp(w.n, args.m, args.p)
    limit = classical_limit(pieri_expand(w, args.m, args.p))
    if args.format == "json":
        return EXIT_OK, _dump({"n": w.n, "m": args.m, "p": args.p, "w": str(w),
                               "terms": [{"u": str(u), "coefficient": c} for u, c in limit.items()]})
    return EXIT_OK, "\n".join(f"{u}  {c}" for u, c in limit.items())


def _verify(args) -> tuple[int, str]:
    _need(args, "n")
    try:
        report = verify(args.n, sample=args.sample, seed=args.seed, jobs=args.jobs)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    status = EXIT_MISMATCH if report["mismatches"] else EXIT_OK
    if args.format == "text":
        verdict = "ok" if status == EXIT_OK else f"{len(report['mismatches'])} mismatches"
        return status, (f"n={report['n']} triples={report['triples_checked']} "
                        f"pairs={report['pairs_checked']} {verdict}")
    return status, _dump(report)


VERBS = {"coeff": _coeff, "expand": _expand, "classical": _classical, "verify": _verify}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="eqpieri", description="Equivariant Pieri coefficients for Fl(n).")
    parser.add_argument("verb", choices=sorted(VERBS))
    parser.add_argument("--n", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--p", type=int)
    parser.add_argument("--w")
    parser.add_argument("--u")
    parser.add_argument("--format", choices=("text", "json"))
    parser.add_argument("--sample", type=int, help="verify a random subset of (w, m, p)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=1)
    return parser


def run(argv: Optional[list[str]] = None) -> tuple[int, str]:
    """Parse and dispatch; returns (exit status, output text)."""
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "json" if args.verb == "verify" else "text"
    try:
        return VERBS[args.verb](args)
    except DomainError as exc:
        return EXIT_DOMAIN, f"error: {exc}"


def main(argv: Optional[list[str]] = None) -> int:
    status, output = run(argv)
    stream = sys.stderr if status == EXIT_DOMAIN else sys.stdout
    print(output, file=stream)
    return status


if __name__ == "__main__":
    sys.exit(main())
