"""Command line entry point.

Exit codes: 0 when every hard assertion passed, 2 when one failed,
1 for usage or runtime errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .. import bitword
from ..bounds import params_for, theorem_lower_bound, verify_main_theorem
from ..delta import c, delta_dist, pair_sum, sufficient_condition
from ..fourier import RationalAngle, omega_direct, omega_matrix, psi_direct, psi_fourier
from ..oracle import histogram
from ..spectrum import argmax_set, phi
from .sweep import CheckpointError, SweepError, export_csv, parse_checks, sweep

EXIT_OK, EXIT_ERROR, EXIT_VIOLATION = 0, 1, 2


class UsageError(Exception):
    pass


def _int(text: str) -> int:
    try:
        return bitword.parse_int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive(text: str) -> int:
    v = _int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def _epsilon(text: str) -> Fraction:
    try:
        eps = Fraction(text.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed epsilon: {text!r}") from None
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1), got {text}")
    return eps


def _angle(text: str) -> RationalAngle:
    try:
        return RationalAngle.parse(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"malformed angle: {text!r} (expected J/M)") from None


def _fmt_complex(z: complex) -> str:
    return f"({z.real:.15g}, {z.imag:.15g})"


def cmd_phi(args) -> int:
    s = phi(args.t)
    for k, text, dec in s.to_records():
        print(f"{k}\t{text}\t{dec}")
    print(f"argmax\t{sorted(argmax_set(s))}")
    return EXIT_OK if s.total() == 1 else EXIT_VIOLATION


def cmd_delta(args) -> int:
    d = delta_dist(args.t)
    top = d.top()
    for k in range(top, top - args.k_window, -1):
        v = d[k]
        print(f"{k}\t{v}\t{v.to_decimal(12)}")
    print(f"tail\tdelta(k) = {d.tail_value} * 2^(k - {d.tail_start}) for k <= {d.tail_start}")
    return EXIT_OK if d.mass() == 1 else EXIT_VIOLATION


def cmd_ct(args) -> int:
    v = c(args.t)
    print(v)
    print(v.to_decimal(12))
    return EXIT_OK


def cmd_pair(args) -> int:
    ct, ctp, total = pair_sum(args.t)
    suff, witness = sufficient_condition(args.t)
    print(f"t\t{args.t}")
    print(f"t_prime\t{bitword.reflect(args.t)}")
    for name, v in (("c_t", ct), ("c_t_prime", ctp), ("pair_sum", total)):
        print(f"{name}\t{v}\t{v.to_decimal(12)}")
    print(f"sufficient_condition\t{suff}" + ("" if suff else f"\twitness k={witness}"))
    return EXIT_OK if total >= Fraction(15, 16) else EXIT_VIOLATION


def cmd_omega(args) -> int:
    w = omega_matrix(args.t, args.theta)
    print(f"omega_matrix\t{_fmt_complex(w)}")
    if args.t.bit_length() <= 4096:
        print(f"omega_direct\t{_fmt_complex(omega_direct(args.t, args.theta))}")
    print(f"abs\t{abs(w):.15g}")
    return EXIT_OK


def cmd_psi(args) -> int:
    exact = psi_direct(args.t, args.m)
    approx = psi_fourier(args.t, args.m)
    for b in range(args.m):
        print(f"{b}\t{exact[b]}\t{exact[b].to_decimal(12)}\t{approx[b]:.15g}")
    return EXIT_OK if sum(exact.masses) == 1 else EXIT_VIOLATION


def cmd_blocks(args) -> int:
    print(bitword.count_blocks(args.t))
    return EXIT_OK


def cmd_patterns(args) -> int:
    print(" ".join(map(str, bitword.pattern_positions(args.t))))
    return EXIT_OK


def cmd_bound(args) -> int:
    p = params_for(args.epsilon)
    print(f"epsilon={p.epsilon}")
    print(f"N={p.N}")
    print(f"m={p.m}")
    print(f"M={p.M}")
    print(f"C={p.C}")
    names = ("2^(-N-2)", "2N/m", "m*exp(-M/(2m^2))")
    for name, term, margin in zip(names, p.error_terms(), p.margins()):
        print(f"{name}={float(term):.6e}\tmargin to eps/3={margin:.6e}")
    print(f"lower_bound={theorem_lower_bound(p):.12f}")
    return EXIT_OK


def cmd_verify_theorem(args) -> int:
    if args.construct == (args.t is not None):
        raise UsageError("give exactly one of --t or --construct")
    p = params_for(args.epsilon)
    t = bitword.alternating_word(p.C) if args.construct else args.t
    r = verify_main_theorem(t, args.epsilon)
    print(f"epsilon={p.epsilon} N={p.N} m={p.m} M={p.M} C={p.C}")
    print(f"bits={t.bit_length()} blocks={r.blocks}")
    print(f"c_t={r.c_t.to_decimal(12)} c_t_prime={r.c_t_prime.to_decimal(12)}")
    print(f"pair_sum={r.pair_sum.to_decimal(12)} floor_15_16={'ok' if r.floor_ok else 'VIOLATED'}")
    print(f"residue_bound(m={p.m})={r.residue_bound.to_decimal(12)}")
    print(f"max|psi-1/m|={r.psi_deviation:.6e} estimate={r.psi_bound:.6e}")
    if not r.hypothesis_met:
        print(f"hypothesis not met: {r.blocks} blocks < C={p.C}")
    else:
        print(f"theorem: pair_sum > 1 - epsilon: {'holds' if r.holds else 'VIOLATED'}")
    return EXIT_VIOLATION if r.violated else EXIT_OK


def cmd_oracle(args) -> int:
    h = histogram(args.t, args.limit, jobs=args.jobs)
    for k, n in h.counts.items():
        print(f"{k}\t{n}\t{n / h.limit:.12f}")
    print(f"c_t~\t{float(h.ge_zero()):.12f}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    checks = parse_checks(args.checks)
    summary = sweep(args.start, args.stop, checks, jobs=args.jobs, out=args.out,
                    checkpoint=args.checkpoint, max_blocks=args.max_blocks)
    if args.csv and summary["complete"]:
        export_csv(args.out, args.csv)
    print(json.dumps(summary, indent=2))
    hard = sum(summary["hard_failures"].values())
    return EXIT_VIOLATION if hard else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cusick", description="Digit-sum correlation densities and Cusick-type checks.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("phi", cmd_phi, "exact spectrum phi(., T)").add_argument("t", type=_positive)
    sp = add("delta", cmd_delta, "exact delta(., T), top of the window downward")
    sp.add_argument("t", type=_positive)
    sp.add_argument("--k-window", type=_positive, default=12)
    add("ct", cmd_ct, "exact c_T").add_argument("t", type=_int)
    add("pair", cmd_pair, "c_T, c_T' and their sum").add_argument("t", type=_positive)
    sp = add("omega", cmd_omega, "omega_T(J/M)")
    sp.add_argument("t", type=_positive)
    sp.add_argument("--theta", type=_angle, required=True)
    sp = add("psi", cmd_psi, "residue masses psi(b, M, T)")
    sp.add_argument("t", type=_positive)
    sp.add_argument("-m", type=_positive, required=True)
    add("blocks", cmd_blocks, "number of blocks of 1s").add_argument("t", type=_int)
    add("patterns", cmd_patterns, "separated 100/101 pattern positions").add_argument("t", type=_positive)
    add("bound", cmd_bound, "parameter chain for epsilon").add_argument("--epsilon", type=_epsilon, required=True)
    sp = add("verify-theorem", cmd_verify_theorem, "check c_t + c_t' > 1 - epsilon")
    sp.add_argument("--epsilon", type=_epsilon, required=True)
    sp.add_argument("--t", type=_positive)
    sp.add_argument("--construct", action="store_true", help="use t = sum_{i<C} 4^i")
    sp = add("oracle", cmd_oracle, "brute-force histogram over n < N")
    sp.add_argument("t", type=_int)
    sp.add_argument("--limit", type=_positive, required=True)
    sp.add_argument("--jobs", type=_positive, default=1)
    sp = add("sweep", cmd_sweep, "range sweep with JSON-lines output")
    sp.add_argument("--from", dest="start", type=_positive, required=True)
    sp.add_argument("--to", dest="stop", type=_positive, required=True)
    sp.add_argument("--checks", default="all")
    sp.add_argument("--jobs", type=_positive, default=1)
    sp.add_argument("--out", required=True)
    sp.add_argument("--checkpoint")
    sp.add_argument("--csv")
    sp.add_argument("--max-blocks", type=_positive, help="stop after this many blocks (resumable)")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ValueError, SweepError, CheckpointError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
