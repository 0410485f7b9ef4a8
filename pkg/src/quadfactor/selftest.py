"""Invariant suite over the exhaustive board universe.

Each instance is checked independently; with several workers the stream
is split into chunks whose results are joined in input order, so the
report never depends on scheduling.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import arithmetic as ar
from .diagonals import all_diagonals, bad_end_bound, excellent_diagonals, good_diagonals, select_diagonal
from .disk import QuadDisk, bicolor, black_to_white_matrix, board_from_cells, develop, format_disk, is_board
from .factorization import ldu, verify_factorization
from .surgery import cut_and_paste, plan_surgery
from .universe import board_cells

CHECKS = (
    "counts",
    "good-diagonals",
    "bad-bound",
    "diagonal-monotone",
    "excellent",
    "surgery",
    "factorization",
    "determinant",
    "rank",
    "smith",
)

FAULTS = ("none", "factor-entry")


class CheckFailed(Exception):
    pass


def _need(cond: bool, what: str) -> None:
    if not cond:
        raise CheckFailed(what)


def _check_counts(disk: QuadDisk) -> None:
    c = disk.counts()
    _need(c.euler() == 1, f"Euler characteristic {c.euler()}")
    _need(4 * c.F == 2 * c.E_I + c.E_B, "4F != 2E_I + E_B")
    _need(all(disk.degree(v) == 4 for v in disk.interior_vertices), "interior vertex of degree != 4")
    v1 = c.boundary_degrees.get(1, 0)
    _need(v1 - 4 == bad_end_bound(disk), "V1 - 4 != sum (r-2) V_r")


def _check_diagonals(disk: QuadDisk, dev, counts: dict) -> None:
    diags = all_diagonals(disk)
    good = good_diagonals(disk)
    _need(len(good) >= 4, f"only {len(good)} good diagonals")
    counts["good-diagonals"] += 1
    bad = len(diags) - len(good)
    _need(bad <= bad_end_bound(disk), f"{bad} bad diagonals exceed the bound")
    counts["bad-bound"] += 1
    for d in diags:
        pts = [dev.positions[v] for v in d.vertices]
        for axis in (0, 1):
            steps = {b[axis] - a[axis] for a, b in zip(pts, pts[1:])}
            _need(steps in ({1}, {-1}), f"diagonal from {d.corner!r} is not strictly monotone")
    counts["diagonal-monotone"] += 1
    ex = excellent_diagonals(disk, dev)
    _need(bool(ex) and all(e.good for e in ex), "no excellent diagonal, or one that is bad")
    counts["excellent"] += 1


def _check_surgery(disk: QuadDisk, dev) -> None:
    d = select_diagonal(disk, True, dev)
    plan = plan_surgery(disk, d)
    res = cut_and_paste(disk, plan)
    total = sum(len(c) for c in res.components)
    _need(len(disk) - total == plan.k + plan.k_prime, "square count did not drop by k + k'")
    colors = bicolor(disk).colors
    dc = colors[d.squares[0]]
    _need(all(colors[s] == dc for s in d.squares), "diagonal is not monochromatic")
    _need(all(colors[s] != dc for s in plan.left_squares), "left squares share the diagonal color")
    cells = set(disk.lattice_cells())
    for comp in res.components:
        _need(is_board(comp), "a component is not a board")
        sub = comp.lattice_cells()
        _need(sub is not None and set(sub) <= cells, "a component is not a subset of the board")


def _check_algebra(disk: QuadDisk, fault: str, counts: dict) -> None:
    col = bicolor(disk)
    B = black_to_white_matrix(disk, col)
    f = ldu(disk, col)
    if fault == "factor-entry":
        L = f.L.copy()
        L[0, 0] += 2
        f = type(f)(f.black_perm, f.white_perm, L, f.D, f.U)
    v = verify_factorization(B, f)
    _need(v.ok, f"factorization rejected: {v.reason}")
    counts["factorization"] += 1
    if col.b == col.w:
        det = ar.det_via_ldu(f)
        _need(det in (-1, 0, 1), f"determinant {det} outside {{-1, 0, 1}}")
        _need(det == ar.det_oracle(B), "determinant differs from elimination")
        _need(det == ar.signed_matchings(B), "determinant differs from signed matchings")
        counts["determinant"] += 1
    r = ar.rank_via_ldu(f)
    _need(r == ar.rank_oracle(B) == ar.rank_oracle(B, 2) == ar.rank_oracle(B, 3), "ranks disagree")
    counts["rank"] += 1
    _need(ar.smith_normal_form(B).free_cokernel, "an invariant factor differs from 1")
    counts["smith"] += 1


def check_instance(disk: QuadDisk, fault: str = "none") -> tuple[dict, str | None]:
    """Run every check on one board; returns per-check pass counts and the first failure."""
    counts = dict.fromkeys(CHECKS, 0)
    try:
        _check_counts(disk)
        counts["counts"] += 1
        dev = develop(disk)
        _check_diagonals(disk, dev, counts)
        _check_surgery(disk, dev)
        counts["surgery"] += 1
        _check_algebra(disk, fault, counts)
    except (CheckFailed, AssertionError, ArithmeticError, ValueError) as exc:
        return counts, f"{type(exc).__name__}: {exc}"
    return counts, None


def _run_chunk(args) -> list:
    cells_list, fault = args
    out = []
    for cells in cells_list:
        disk = board_from_cells(cells)
        counts, err = check_instance(disk, fault)
        out.append((counts, None if err is None else (err, format_disk(disk))))
    return out


def worker_count(requested: int | None = None) -> int:
    n = requested or os.cpu_count() or 1
    cap = os.environ.get("QUADFACTOR_THREADS")
    if cap:
        try:
            n = min(n, max(1, int(cap)))
        except ValueError:
            raise ValueError(f"QUADFACTOR_THREADS must be an integer, got {cap!r}") from None
    return max(1, n)


@dataclass
class Report:
    max_cells: int
    fault: str
    instances: int = 0
    failed: int = 0
    passed: dict = field(default_factory=lambda: dict.fromkeys(CHECKS, 0))
    failures: list = field(default_factory=list)  # (index, message, instance text), first few only

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def render(self) -> str:
        lines = [f"selftest universe: boards with 1..{self.max_cells} cells"]
        if self.fault != "none":
            lines.append(f"injected fault: {self.fault}")
        lines.append(f"instances: {self.instances}")
        for name in CHECKS:
            lines.append(f"  {name:<18} {self.passed[name]}")
        shown = f" (first {len(self.failures)} shown)" if self.failed > len(self.failures) else ""
        lines.append(f"failures: {self.failed}{shown}")
        for idx, msg, text in self.failures:
            lines.append(f"--- instance {idx}: {msg}")
            lines.append(text.rstrip("\n"))
        lines.append("result: " + ("PASS" if self.ok else "FAIL"))
        return "\n".join(lines) + "\n"


def run_selftest(max_cells: int, workers: int | None = None, fault: str = "none", max_failures: int = 5) -> Report:
    """Check every board with at most ``max_cells`` cells."""
    if fault not in FAULTS:
        raise ValueError(f"unknown fault {fault!r}; choose from {', '.join(FAULTS)}")
    if not 1 <= max_cells <= 10:
        raise ValueError(f"cell count must be in 1..10, got {max_cells}")
    stream = [c for n in range(1, max_cells + 1) for c in board_cells(n)]
    nw = worker_count(workers)
    size = 256
    chunks = [(stream[i : i + size], fault) for i in range(0, len(stream), size)]
    if nw == 1 or len(chunks) == 1:
        results = map(_run_chunk, chunks)
    else:
        pool = ProcessPoolExecutor(max_workers=nw)
        results = pool.map(_run_chunk, chunks)
    report = Report(max_cells, fault)
    try:
        for chunk in results:
            for counts, failure in chunk:
                for k, v in counts.items():
                    report.passed[k] += v
                if failure is not None:
                    report.failed += 1
                    if len(report.failures) < max_failures:
                        report.failures.append((report.instances, failure[0], failure[1]))
                report.instances += 1
    finally:
        if nw > 1 and len(chunks) > 1:
            pool.shutdown()
    return report

