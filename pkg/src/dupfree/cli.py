"""Command-line front end.

Exit codes: 0 success or pass, 1 decode or verify failure, 2 invalid
configuration, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
from pathlib import Path

from . import codes, oracle
from .channel import DISJOINT_MODELS, MODELS, sample_corruption
from .decoder import decode_bruteforce, decode_equal_length, decode_uniform
from .errors import DupFreeError, InfeasiblePlanError, ResourceLimitError
from .transform import phi, phi_inverse, zero_run_decompose
from .words import format_word, parse_word

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3

ALL_MODES = MODELS + ("uniform",)


class ConfigError(Exception):
    pass


def int_list(text: str) -> frozenset:
    try:
        return frozenset(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma list of integers, got {text!r}")


def word_seed(seed: int, index: int) -> int:
    """Independent per-word seed derived from the run seed."""
    digest = hashlib.sha256(f"{seed}/{index}".encode()).digest()
    return int.from_bytes(digest[:8], "big")


def _require(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ConfigError(f"--{name.replace('_', '-')} is required for {args.command}")


def _read_words(args) -> list:
    lines = []
    if args.words:
        lines.extend(args.words)
    if args.infile:
        lines.extend(Path(args.infile).read_text().splitlines())
    if not args.words and not args.infile:
        lines.extend(sys.stdin.read().splitlines())
    return [parse_word(ln, args.q) for ln in lines if ln.strip() and not ln.lstrip().startswith("#")]


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    _require(args, "n", "q")
    if args.F is not None:
        F = args.F
    else:
        _require(args, "L")
        F = codes.make_length_spec(args.L, args.mode or "disjoint").F
    if args.count_only:
        count = codes.count_code(args.n, args.q, F, workers=args.workers)
    else:
        code = codes.enumerate_code(args.n, args.q, F, cap=args.cap, workers=args.workers)
        count = len(code)
        if args.out:
            Path(args.out).write_text(code.dumps())
    print(codes.rate_record(args.n, args.q, F, count))
    return EXIT_OK


def cmd_corrupt(args) -> int:
    _require(args, "q", "L", "t", "seed")
    model = args.mode or "unrestricted"
    if model not in MODELS:
        raise ConfigError(f"corrupt needs a channel model, one of {MODELS}")
    words = _read_words(args)
    trace_dir = Path(args.trace_dir) if args.trace_dir else (Path(args.out + ".traces") if args.out else None)
    if trace_dir:
        trace_dir.mkdir(parents=True, exist_ok=True)
    out, status = [], EXIT_OK
    for k, x in enumerate(words):
        s = word_seed(args.seed, k)
        try:
            z, record = sample_corruption(x, model, args.L, args.t, s)
        except InfeasiblePlanError as exc:
            print(f"word {k + 1}: infeasible: {exc}", file=sys.stderr)
            out.append("")
            status = EXIT_FAIL
            continue
        out.append(format_word(z, args.q))
        if trace_dir:
            text = record.dumps(args.q)
            (trace_dir / f"{k + 1:06d}.trace").write_text(text)
    _emit(args, "".join(line + "\n" for line in out))
    return status


def cmd_decode(args) -> int:
    _require(args, "n", "q")
    mode = args.mode or "uniform"
    words = _read_words(args)
    if mode == "uniform":
        _require(args, "l")
        decode = lambda z: decode_uniform(z, args.l, args.n, args.q)
    elif mode == "equal_length":
        _require(args, "L")
        spec = codes.make_length_spec(args.L, "equal_length")
        decode = lambda z: decode_equal_length(z, spec, args.n, args.q, verify=args.verify)
    elif mode in DISJOINT_MODELS:
        _require(args, "L")
        spec = codes.make_length_spec(args.L, "disjoint" if mode == "disjoint" else "combined")
        decode = lambda z: decode_bruteforce(z, spec, args.n, mode, budget=args.cap)
    else:
        raise ConfigError(f"no decoder for mode {mode!r}")
    lines, status = [], EXIT_OK
    for z in words:
        res = decode(z)
        word = format_word(res.codeword, args.q) if res.codeword is not None else "-"
        lines.append(f"{word}\t{res.status}")
        if not res.ok:
            status = EXIT_FAIL
    _emit(args, "".join(line + "\n" for line in lines))
    return status


def cmd_verify(args) -> int:
    _require(args, "L")
    if not args.negative_control:
        if args.theorem is None:
            raise ConfigError("verify needs --theorem or --negative-control")
        # validate L before anything else so a bad set is a config error
        codes.make_length_spec(args.L, oracle.THEOREM_SPEC_MODE[args.theorem])
    _require(args, "n", "q")
    if args.negative_control:
        rep = oracle.negative_control(args.n, args.q, args.L, args.max_len, args.t)
    else:
        rep = oracle.verify_theorem(args.theorem, args.n, args.q, args.L, args.max_len, args.t)
    _emit(args, rep.dumps(include_elapsed=not args.no_timing))
    if args.negative_control:
        return EXIT_OK if rep.collisions else EXIT_FAIL
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_transform(args) -> int:
    _require(args, "q", "l")
    lines = []
    for w in _read_words(args):
        if args.inverse:
            lines.append(format_word(phi_inverse(w, args.l, args.q), args.q))
        elif args.parse:
            d = zero_run_decompose(w, args.l)
            blocks = " ".join(format_word(b, args.q) for b in d.blocks)
            runs = ",".join(map(str, d.runs))
            lines.append(f"prefix={format_word(d.prefix, args.q)} runs={runs} blocks={blocks}")
        else:
            lines.append(format_word(phi(w, args.l, args.q), args.q))
    _emit(args, "".join(line + "\n" for line in lines))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--n", type=int, help="codeword length")
    shared.add_argument("--q", type=int, help="alphabet size; letters are 0..q-1")
    shared.add_argument("--L", type=int_list, help="allowed duplication lengths, e.g. 2,5")
    shared.add_argument("--F", type=int_list, help="explicit forbidden set (overrides --L/--mode)")
    shared.add_argument("--mode", choices=ALL_MODES)
    shared.add_argument("--l", type=int, help="single duplication length for uniform decoding and transforms")
    shared.add_argument("--t", type=int, help="number of duplications (verify: max blocks per disjoint round)")
    shared.add_argument("--seed", type=int)
    shared.add_argument("--max-len", type=int, dest="max_len")
    shared.add_argument("--cap", type=int, default=codes.DEFAULT_CAP)
    shared.add_argument("--in", dest="infile")
    shared.add_argument("--out")

    p = argparse.ArgumentParser(prog="dupfree", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", parents=[shared], help="list the codewords of C_F and its rate")
    e.add_argument("--count-only", action="store_true")
    e.add_argument("--workers", type=int, default=1)
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("corrupt", parents=[shared], help="pass words through a duplication channel")
    c.add_argument("--trace-dir")
    c.add_argument("words", nargs="*")
    c.set_defaults(func=cmd_corrupt)

    d = sub.add_parser("decode", parents=[shared], help="decode received words")
    d.add_argument("--verify", action="store_true", help="try every length and report ambiguity")
    d.add_argument("words", nargs="*")
    d.set_defaults(func=cmd_decode)

    v = sub.add_parser("verify", parents=[shared], help="exhaustively check a code construction")
    v.add_argument("--theorem", type=int, choices=(1, 2, 3))
    v.add_argument("--negative-control", action="store_true")
    v.add_argument("--no-timing", action="store_true", help="omit elapsed time for byte-stable reports")
    v.set_defaults(func=cmd_verify)

    t = sub.add_parser("transform", parents=[shared], help="apply the difference transform")
    g = t.add_mutually_exclusive_group()
    g.add_argument("--phi", action="store_true", help="forward transform (default)")
    g.add_argument("--inverse", action="store_true")
    g.add_argument("--parse", action="store_true", help="zero-run decomposition")
    t.add_argument("words", nargs="*")
    t.set_defaults(func=cmd_transform)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, DupFreeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
