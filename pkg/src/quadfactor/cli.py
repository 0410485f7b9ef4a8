"""Command-line entry point: ``quadfactor <command> ...``.

Exit codes: 0 success, 1 a verification or cross-check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import arithmetic as ar
from .diagonals import all_diagonals, is_excellent, select_diagonal, trace_diagonal
from .disk import (
    BLACK,
    WHITE,
    QuadDisk,
    bicolor,
    black_to_white_matrix,
    develop,
    format_disk,
    is_board,
    load_disk,
)
from .errors import QuadError
from .factorization import ldu, verify_factorization
from .selftest import FAULTS, run_selftest
from .surgery import cut_and_paste, plan_surgery
from .universe import MAX_CELLS, enumerate_boards, universe

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _read(path: str) -> QuadDisk:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return load_disk(text)
    except QuadError as exc:
        raise InputError(f"{path}: {exc}") from None


def _vid(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(c) for c in v)
    return str(v)


def _coloring(disk: QuadDisk, args):
    return bicolor(disk, WHITE if getattr(args, "white_first", False) else BLACK)


def _matrix(M) -> str:
    M = np.asarray(M)
    if M.size == 0:
        return f"  ({M.shape[0]}x{M.shape[1]})"
    width = max(len(str(int(x))) for x in M.flat)
    return "\n".join("  " + " ".join(str(int(x)).rjust(width) for x in row) for row in M)


def _ints(M) -> list:
    return [[int(x) for x in row] for row in np.asarray(M)]


# -- commands -------------------------------------------------------------------


def cmd_validate(args) -> int:
    disk = _read(args.file)
    c = disk.counts()
    print(f"valid disk: F={c.F} V={c.V} E={c.E}")
    print(f"board: {'yes' if is_board(disk) else 'no'}")
    return OK


def cmd_info(args) -> int:
    disk = _read(args.file)
    c = disk.counts()
    col = _coloring(disk, args)
    print(f"squares: {c.F}")
    print(f"vertices: {c.V} (interior {c.V_I}, boundary {c.V - c.V_I})")
    print(f"edges: {c.E} (interior {c.E_I}, boundary {c.E_B})")
    print(f"euler: {c.euler()}")
    print("boundary degrees: " + " ".join(f"V{r}={n}" for r, n in c.boundary_degrees.items()))
    print(f"board: {'yes' if is_board(disk) else 'no'}")
    print(f"black: {col.b} white: {col.w}")
    print("B =")
    print(_matrix(black_to_white_matrix(disk, col)))
    return OK


def cmd_diagonals(args) -> int:
    disk = _read(args.file)
    dev = develop(disk)
    board = is_board(disk, dev)
    for d in all_diagonals(disk):
        if board:
            ex = "yes" if is_excellent(disk, d, dev) or is_excellent(disk, d.mirrored(), dev) else "no"
        else:
            ex = "-"
        print(f"{_vid(d.corner)}\tk={d.k}\t{d.kind.value}\texcellent={ex}")
    return OK


def _find_corner(disk: QuadDisk, token: str):
    for v in disk.vertex_squares:
        if _vid(v) == token:
            return v
    raise InputError(f"no vertex named {token!r}")


def cmd_cutpaste(args) -> int:
    disk = _read(args.file)
    if args.corner is None:
        d = select_diagonal(disk)
    else:
        try:
            d = trace_diagonal(disk, _find_corner(disk, args.corner))
        except ValueError as exc:
            raise InputError(str(exc)) from None
        if not d.good:
            raise InputError(f"the diagonal from {args.corner} is bad")
    plan = plan_surgery(disk, d)
    res = cut_and_paste(disk, plan)
    print(f"corner: {_vid(plan.diagonal.corner)}")
    print(f"kind: {plan.diagonal.kind.value}")
    print(f"k: {plan.k} k': {plan.k_prime}")
    print("diagonal squares: " + " ".join(map(str, plan.diagonal.squares)))
    print("left squares: " + " ".join(map(str, plan.left_squares)))
    print("right squares: " + " ".join(map(str, plan.right_squares)))
    print("zeta_l: " + " ".join(_vid(v) for v in plan.zeta_l))
    print("zeta_r: " + " ".join(_vid(v) for v in plan.zeta_r))
    print(f"components: {res.ell}")
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    for i, (comp, m) in enumerate(zip(res.components, res.square_maps), start=1):
        path = out / f"{args.prefix}{i}.txt"
        path.write_text(format_disk(comp))
        print(f"  {path}: {len(comp)} squares from " + " ".join(map(str, m)))
    return OK


def cmd_factor(args) -> int:
    disk = _read(args.file)
    col = _coloring(disk, args)
    B = black_to_white_matrix(disk, col)
    f = ldu(disk, col)
    verdict = verify_factorization(B, f)
    rank = ar.rank_via_ldu(f)
    det = ar.det_via_ldu(f) if f.b == f.w else None
    if args.format == "json":
        doc = {
            "b": f.b,
            "w": f.w,
            "rank": rank,
            "det": det,
            "black_perm": list(f.black_perm),
            "white_perm": list(f.white_perm),
            "B": _ints(B),
            "L": _ints(f.L),
            "D": _ints(f.D),
            "U": _ints(f.U),
            "verified": verdict.ok,
        }
        print(json.dumps(doc, separators=(",", ":")))
    else:
        print(f"b: {f.b} w: {f.w}")
        print(f"rank: {rank}")
        if det is not None:
            print(f"det: {det}")
        print("black_perm: " + " ".join(map(str, f.black_perm)))
        print("white_perm: " + " ".join(map(str, f.white_perm)))
        for name, M in (("L", f.L), ("D", f.D), ("U", f.U)):
            print(f"{name} =")
            print(_matrix(M))
        print(f"verified: {verdict.reason}")
    return OK if verdict.ok else FAILED


def cmd_det(args) -> int:
    disk = _read(args.file)
    col = _coloring(disk, args)
    if col.b != col.w:
        raise InputError(f"B is {col.b}x{col.w}; the determinant needs b = w")
    print(ar.det_via_ldu(ldu(disk, col)))
    return OK


def cmd_rank(args) -> int:
    disk = _read(args.file)
    print(ar.rank_via_ldu(ldu(disk, _coloring(disk, args))))
    return OK


def _rhs(text: str, n: int) -> list[int]:
    try:
        v = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"--rhs must be comma-separated integers, got {text!r}") from None
    if len(v) != n:
        raise InputError(f"--rhs has {len(v)} entries, expected {n} (one per black square)")
    return v


def cmd_solve(args) -> int:
    disk = _read(args.file)
    col = _coloring(disk, args)
    v = _rhs(args.rhs, col.b)
    out = ar.solve_integer(ldu(disk, col), v)
    if out.solvable:
        B = black_to_white_matrix(disk, col)
        if [int(a) for a in B @ np.array(out.x, dtype=np.int64)] != v:
            print("solution check failed", file=sys.stderr)
            return FAILED
        print("x: " + ",".join(map(str, out.x)))
    else:
        print(f"no solution: row {out.row} of D is zero while the reduced right-hand side is not")
        print("certificate: " + ",".join(map(str, out.witness)))
    return OK


def cmd_oracle(args) -> int:
    disk = _read(args.file)
    col = _coloring(disk, args)
    B = black_to_white_matrix(disk, col)
    f = ldu(disk, col)
    checks = []
    verdict = verify_factorization(B, f)
    checks.append(("factorization", verdict.ok, verdict.reason))
    if f.b == f.w:
        d = ar.det_via_ldu(f)
        dq = ar.det_oracle(B)
        checks.append(("det vs elimination", d == dq, f"{d} vs {dq}"))
        if f.b <= ar.MATCHING_LIMIT:
            dm = ar.signed_matchings(B)
            checks.append(("det vs signed matchings", d == dm, f"{d} vs {dm}"))
        else:
            checks.append(("det vs signed matchings", True, "skipped, too large"))
    r = ar.rank_via_ldu(f)
    for p, label in ((0, "Q"), (2, "GF(2)"), (3, "GF(3)")):
        rp = ar.rank_oracle(B, p)
        checks.append((f"rank vs {label}", r == rp, f"{r} vs {rp}"))
    snf = ar.smith_normal_form(B)
    checks.append(("smith factors all 1", snf.free_cokernel, " ".join(map(str, snf.factors)) or "none"))
    for name, ok, detail in checks:
        print(f"{'ok  ' if ok else 'FAIL'} {name}: {detail}")
    return OK if all(ok for _, ok, _ in checks) else FAILED


def cmd_enumerate(args) -> int:
    if not 1 <= args.n <= MAX_CELLS:
        raise InputError(f"N must be in 1..{MAX_CELLS}, got {args.n}")
    stream = universe(args.n) if args.upto else enumerate_boards(args.n)
    if args.count:
        print(sum(1 for _ in stream))
        return OK
    first = True
    for disk in stream:
        if not first:
            print()
        sys.stdout.write(format_disk(disk))
        first = False
    return OK


def cmd_selftest(args) -> int:
    if not 1 <= args.n <= MAX_CELLS:
        raise InputError(f"N must be in 1..{MAX_CELLS}, got {args.n}")
    try:
        report = run_selftest(args.n, workers=args.workers, fault=args.inject_fault)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    sys.stdout.write(report.render())
    return OK if report.ok else FAILED


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="quadfactor",
        description="Quadriculated disks: validation, diagonals, cut and paste, and L D U factorization.",
        epilog="Input files use the board format (rows of '#' and '.') or the 'quadcomplex' format; '-' reads stdin.",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="command")

    def with_file(name, help_, func, coloring=False):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.add_argument("file", help="board or complex file, '-' for stdin")
        if coloring:
            sp.add_argument(
                "--white-first", action="store_true", help="color square 0 white instead of black"
            )
        sp.set_defaults(func=func)
        return sp

    with_file("validate", "check that the input is a quadriculated disk", cmd_validate)
    with_file("info", "counts, coloring and the black-to-white matrix", cmd_info, coloring=True)
    with_file("diagonals", "one line per corner: id, length, kind, excellent flag", cmd_diagonals)
    sp = with_file("cutpaste", "cut and paste along a good diagonal and write the components", cmd_cutpaste)
    sp.add_argument("--corner", help="start corner id (as printed by 'diagonals'); default: the pipeline's choice")
    sp.add_argument("--output-dir", default=".", help="directory for component files (default: .)")
    sp.add_argument("--prefix", default="component-", help="component file name prefix (default: component-)")
    sp = with_file("factor", "factor B as P_b B P_w = L D U", cmd_factor, coloring=True)
    sp.add_argument("--format", choices=("text", "json"), default="text", help="output format (default: text)")
    with_file("det", "determinant of a square B", cmd_det, coloring=True)
    with_file("rank", "rank of B", cmd_rank, coloring=True)
    sp = with_file("solve", "integer solution of B x = v, or a certificate", cmd_solve, coloring=True)
    sp.add_argument("--rhs", required=True, help="comma-separated integers, one per black square; write --rhs=-1,2 when the first is negative")
    with_file("oracle", "cross-check the factorization against independent oracles", cmd_oracle, coloring=True)

    sp = sub.add_parser("enumerate", help="list hole-free polyominoes", description="list hole-free polyominoes")
    sp.add_argument("n", type=int, help=f"number of cells (1..{MAX_CELLS})")
    sp.add_argument("--upto", action="store_true", help="all sizes 1..N instead of exactly N")
    sp.add_argument("--count", action="store_true", help="print only the number of boards")
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser(
        "selftest",
        help="run the invariant suite over all boards with at most N cells",
        description="Run the invariant suite over all boards with at most N cells. "
        "QUADFACTOR_THREADS caps the number of worker processes.",
    )
    sp.add_argument("n", type=int, help=f"maximum number of cells (1..{MAX_CELLS})")
    sp.add_argument("--workers", type=int, default=None, help="worker processes (default: CPU count)")
    sp.add_argument("--inject-fault", choices=FAULTS, default="none", help="corrupt every factorization (testing aid)")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except QuadError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
