"""Diagonals of quadriculated disks and their classification."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .disk import DevelopingMap, QuadDisk, develop, is_board, vertex_key
from .errors import NotABoardError


class Kind(str, Enum):
    BAD = "bad"
    BALANCED = "good-balanced"
    UNBALANCED = "good-unbalanced"


@dataclass(frozen=True)
class Diagonal:
    """Vertices v_0..v_k and squares s_1..s_k of a diagonal.

    ``right[i]`` and ``left[i]`` are the two remaining vertices of
    ``squares[i]``; reading the square counterclockwise from ``vertices[i]``
    gives vertices[i], right[i], vertices[i+1], left[i]. A ``flipped``
    diagonal has the two sides exchanged (the mirror reading).
    """

    vertices: tuple
    squares: tuple
    right: tuple
    left: tuple
    kind: Kind
    flipped: bool = False
    excellent: bool = False

    @property
    def k(self) -> int:
        return len(self.squares)

    @property
    def corner(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def good(self) -> bool:
        return self.kind is not Kind.BAD

    @property
    def balanced(self) -> bool:
        return self.kind is Kind.BALANCED

    def mirrored(self) -> "Diagonal":
        return Diagonal(self.vertices, self.squares, self.left, self.right, self.kind, not self.flipped, self.excellent)

    def marked_excellent(self) -> "Diagonal":
        return Diagonal(self.vertices, self.squares, self.right, self.left, self.kind, self.flipped, True)


def corners(disk: QuadDisk) -> list:
    """Boundary vertices belonging to a single square."""
    return sorted((v for v, o in disk.vertex_squares.items() if len(o) == 1), key=vertex_key)


def classify(disk: QuadDisk, diagonal: Diagonal) -> Kind:
    vk = diagonal.end
    n = disk.is_boundary_edge(vk, diagonal.right[-1]) + disk.is_boundary_edge(vk, diagonal.left[-1])
    return (Kind.BAD, Kind.BALANCED, Kind.UNBALANCED)[n]


def trace_diagonal(disk: QuadDisk, corner) -> Diagonal:
    """The unique diagonal starting at ``corner``."""
    owners = disk.vertex_squares.get(corner)
    if owners is None or len(owners) != 1 or not disk.is_boundary_vertex(corner):
        raise ValueError(f"{corner!r} is not a corner")
    verts = [corner]
    squares, rights, lefts = [], [], []
    cur = owners[0]
    prev = corner
    while True:
        q = disk.squares[cur]
        j = q.index(prev)
        vr, vn, vl = q[(j + 1) % 4], q[(j + 2) % 4], q[(j + 3) % 4]
        squares.append(cur)
        rights.append(vr)
        lefts.append(vl)
        verts.append(vn)
        if disk.is_boundary_vertex(vn):
            break
        # the square around vn sharing only the vertex vn with cur
        touching = {cur, disk.across(cur, vn, vr), disk.across(cur, vn, vl)}
        nxt = [t for t in disk.vertex_squares[vn] if t not in touching]
        if len(nxt) != 1:
            raise AssertionError(f"interior vertex {vn!r} has no opposite square")
        cur = nxt[0]
        prev = vn
    if len(set(verts)) != len(verts) or len(set(squares)) != len(squares):
        raise AssertionError(f"diagonal from {corner!r} revisits a vertex or square")
    n = disk.is_boundary_edge(vn, rights[-1]) + disk.is_boundary_edge(vn, lefts[-1])
    kind = (Kind.BAD, Kind.BALANCED, Kind.UNBALANCED)[n]
    return Diagonal(tuple(verts), tuple(squares), tuple(rights), tuple(lefts), kind)


def all_diagonals(disk: QuadDisk) -> list[Diagonal]:
    return [trace_diagonal(disk, c) for c in corners(disk)]


def good_diagonals(disk: QuadDisk) -> list[Diagonal]:
    good = [d for d in all_diagonals(disk) if d.good]
    if len(good) < 4:
        raise AssertionError(f"only {len(good)} good diagonals found; a disk has at least four")
    return good


def bad_end_bound(disk: QuadDisk) -> int:
    """Sum of (r - 2) V_r over boundary degrees r >= 3; equals V_1 - 4."""
    return sum((r - 2) * n for r, n in disk.counts().boundary_degrees.items() if r >= 3)


# -- boundary arcs -------------------------------------------------------------


def _walk(disk: QuadDisk, start, stop) -> list:
    out = [start]
    v = start
    while v != stop:
        v = disk.boundary_next[v]
        out.append(v)
    return out


def boundary_arcs(disk: QuadDisk, diagonal: Diagonal) -> tuple[list, list]:
    """(right arc, left arc), each a vertex path from v_0 to v_k along the boundary."""
    ccw = _walk(disk, diagonal.corner, diagonal.end)
    cw = _walk(disk, diagonal.end, diagonal.corner)[::-1]
    if diagonal.flipped:
        return cw, ccw
    return ccw, cw


def _monotone(points: list) -> bool:
    dx = [b[0] - a[0] for a, b in zip(points, points[1:])]
    dy = [b[1] - a[1] for a, b in zip(points, points[1:])]
    return (all(d >= 0 for d in dx) or all(d <= 0 for d in dx)) and (
        all(d >= 0 for d in dy) or all(d <= 0 for d in dy)
    )


def is_excellent(disk: QuadDisk, diagonal: Diagonal, dev: DevelopingMap | None = None) -> bool:
    """Direct test: the right boundary arc is weakly monotone in x and in y."""
    if dev is None:
        dev = develop(disk)
    right, _ = boundary_arcs(disk, diagonal)
    return _monotone([dev.positions[v] for v in right])


def excellent_diagonals(disk: QuadDisk, dev: DevelopingMap | None = None) -> list[Diagonal]:
    """Excellent diagonals of a board, oriented with the monotone arc on the right."""
    if dev is None:
        dev = develop(disk)
    if not is_board(disk, dev):
        raise NotABoardError("excellent diagonals are defined for boards only")
    cycle = disk.boundary_cycle
    at = {v: i for i, v in enumerate(cycle)}
    pts = [dev.positions[v] for v in cycle]
    pts = pts + pts
    out = []
    for d in all_diagonals(disk):
        i, j = at[d.corner], at[d.end]
        if j < i:
            j += len(cycle)
        if _monotone(pts[i : j + 1]):
            e = d.marked_excellent()
        elif _monotone(pts[j : i + len(cycle) + 1]):
            e = d.mirrored().marked_excellent()
        else:
            continue
        if not (e.good and disk.is_boundary_edge(e.end, e.right[-1])):
            raise AssertionError(f"excellent diagonal from {e.corner!r} is not good on its right")
        out.append(e)
    if not out:
        raise AssertionError("board without excellent diagonals")
    return out


def minimal_arc_diagonals(disk: QuadDisk) -> list[Diagonal]:
    """Diagonals one of whose boundary arcs is minimal under inclusion.

    Each result is oriented so that the minimal arc lies on its right.
    """
    arcs = []
    for d in all_diagonals(disk):
        for oriented in (d, d.mirrored()):
            path, _ = boundary_arcs(disk, oriented)
            edges = frozenset(frozenset(p) for p in zip(path, path[1:]))
            arcs.append((edges, oriented))
    out = []
    for edges, d in arcs:
        if not any(other < edges for other, _ in arcs):
            out.append(d)
    return out


def select_diagonal(disk: QuadDisk, board: bool | None = None, dev: DevelopingMap | None = None) -> Diagonal:
    """Deterministic choice: excellent on boards, good otherwise; smallest (k, corner)."""
    if board is None:
        if dev is None:
            dev = develop(disk)
        board = is_board(disk, dev)
    pool = excellent_diagonals(disk, dev) if board else good_diagonals(disk)
    return min(pool, key=lambda d: (d.k, vertex_key(d.corner)))
