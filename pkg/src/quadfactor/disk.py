"""Quadriculated disks: validation, bicoloring, developing map, adjacency.

A disk is given by its squares, each a cyclic 4-tuple of hashable vertex ids.
Everything else (edges, boundary cycle, vertex fans) is derived and checked
on construction, so a :class:`QuadDisk` instance is always a valid disk.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

import numpy as np

from .errors import BoardParseError, InvalidDiskError

Vertex = Hashable
Square = tuple
Point = tuple[int, int]

BLACK = True
WHITE = False


def vertex_key(v):
    """Sort key giving a deterministic order on mixed vertex ids."""
    if isinstance(v, int):
        return (0, (v,))
    if isinstance(v, tuple) and all(isinstance(c, int) for c in v):
        return (0, v)
    return (1, str(v))


def edge_of(u, v) -> frozenset:
    return frozenset((u, v))


def _rot(p: Point) -> Point:
    return (-p[1], p[0])


@dataclass(frozen=True)
class DiskCounts:
    V: int
    E: int
    F: int
    E_I: int
    E_B: int
    V_I: int
    # boundary vertices by number of incident squares: {r: V_r}
    boundary_degrees: dict

    def euler(self) -> int:
        return self.V - self.E + self.F


class QuadDisk:
    """A validated quadriculated disk.

    Build instances with :func:`build_complex`, :func:`parse_board` or
    :func:`board_from_cells`; the constructor expects squares already
    oriented consistently and raises :class:`InvalidDiskError` otherwise.
    """

    __slots__ = (
        "squares",
        "directed",
        "edge_squares",
        "vertex_squares",
        "boundary_edges",
        "boundary_cycle",
        "boundary_next",
        "interior_vertices",
        "_cells",
    )

    def __init__(self, squares: Iterable[Sequence[Vertex]]):
        sq = tuple(tuple(s) for s in squares)
        if not sq:
            raise InvalidDiskError("a disk needs at least one square")
        self.squares = sq
        self._cells = None

        directed: dict[tuple, int] = {}
        vertex_squares: dict[Vertex, list[int]] = {}
        for i, s in enumerate(sq):
            if len(s) != 4 or len(set(s)) != 4:
                raise InvalidDiskError(f"square {i} must have 4 distinct vertices: {s!r}")
            for j in range(4):
                a, b = s[j], s[j - 3]
                if (a, b) in directed:
                    raise InvalidDiskError(
                        f"squares {directed[(a, b)]} and {i} induce the same orientation on a shared edge"
                    )
                directed[(a, b)] = i
                vertex_squares.setdefault(a, []).append(i)
        self.directed = directed
        self.vertex_squares = {v: tuple(o) for v, o in vertex_squares.items()}

        edge_squares: dict[frozenset, tuple] = {}
        nxt = {}
        bedges = []
        for (a, b), i in directed.items():
            t = directed.get((b, a))
            if t is None:
                e = frozenset((a, b))
                edge_squares[e] = (i,)
                bedges.append(e)
                nxt[a] = b
            elif i < t:
                edge_squares[frozenset((a, b))] = (i, t)
        self.edge_squares = edge_squares
        self.boundary_edges = frozenset(bedges)
        if len(nxt) != len(bedges):
            raise InvalidDiskError("boundary is not a simple cycle")
        self.boundary_next = nxt
        self.interior_vertices = frozenset(v for v in vertex_squares if v not in nxt)

        self._check_connected()
        self._build_boundary()
        self._check_fans()
        c = self.counts()
        if c.euler() != 1:
            raise InvalidDiskError(f"Euler characteristic is {c.euler()}, expected 1")

    # -- validation -------------------------------------------------------

    def _check_connected(self) -> None:
        seen = {0}
        todo = [0]
        while todo:
            s = todo.pop()
            for t in self.neighbors(s):
                if t not in seen:
                    seen.add(t)
                    todo.append(t)
        if len(seen) != len(self.squares):
            raise InvalidDiskError("squares are not connected through shared edges")

    def _build_boundary(self) -> None:
        nxt = self.boundary_next
        if len(set(nxt.values())) != len(nxt):
            raise InvalidDiskError("boundary is not a simple cycle")
        start = min(nxt, key=vertex_key)
        cycle = [start]
        v = nxt[start]
        while v != start:
            cycle.append(v)
            v = nxt[v]
        if len(cycle) != len(nxt):
            raise InvalidDiskError("boundary edges form more than one cycle")
        self.boundary_cycle = tuple(cycle)

    def _check_fans(self) -> None:
        # rotate around v across the edges leaving (forward) and entering it
        directed, squares = self.directed, self.squares
        for v, owners in self.vertex_squares.items():
            if v not in self.boundary_next and len(owners) != 4:
                raise InvalidDiskError(f"interior vertex {v!r} belongs to {len(owners)} squares, expected 4")
            start = owners[0]
            count = 1
            s = start
            closed = False
            while True:
                q = squares[s]
                t = directed.get((q[q.index(v) - 3], v))
                if t is None:
                    break
                if t == start:
                    closed = True
                    break
                s = t
                count += 1
                if count > len(owners):
                    break
            if not closed:
                s = start
                while True:
                    q = squares[s]
                    t = directed.get((v, q[q.index(v) - 1]))
                    if t is None or t == start:
                        break
                    s = t
                    count += 1
                    if count > len(owners):
                        break
            if count != len(owners):
                raise InvalidDiskError(f"squares around vertex {v!r} do not form a single fan")

    # -- structure --------------------------------------------------------

    def __len__(self) -> int:
        return len(self.squares)

    def __repr__(self) -> str:
        return f"QuadDisk(F={len(self.squares)}, V={len(self.vertex_squares)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, QuadDisk) and self.squares == other.squares

    def __hash__(self) -> int:
        return hash(self.squares)

    @property
    def vertices(self) -> list:
        return sorted(self.vertex_squares, key=vertex_key)

    def square_edges(self, s: int) -> list[frozenset]:
        q = self.squares[s]
        return [edge_of(q[j], q[(j + 1) % 4]) for j in range(4)]

    def across(self, s: int, u, v) -> int | None:
        """Square sharing edge uv with square ``s``, or None on the boundary."""
        t = self.directed.get((u, v))
        if t is None or t == s:
            t = self.directed.get((v, u))
        if t == s:
            return None
        return t

    def neighbors(self, s: int) -> list[int]:
        q = self.squares[s]
        d = self.directed
        return [d[(q[j - 3], q[j])] for j in range(4) if (q[j - 3], q[j]) in d]

    def is_boundary_edge(self, u, v) -> bool:
        d = self.directed
        return ((u, v) in d) != ((v, u) in d)

    def is_boundary_vertex(self, v) -> bool:
        return v in self.boundary_next

    def degree(self, v) -> int:
        return len(self.vertex_squares[v])

    def counts(self) -> DiskCounts:
        E = len(self.edge_squares)
        E_B = len(self.boundary_edges)
        degs: dict[int, int] = {}
        for v in self.boundary_next:
            r = len(self.vertex_squares[v])
            degs[r] = degs.get(r, 0) + 1
        return DiskCounts(
            V=len(self.vertex_squares),
            E=E,
            F=len(self.squares),
            E_I=E - E_B,
            E_B=E_B,
            V_I=len(self.interior_vertices),
            boundary_degrees=dict(sorted(degs.items())),
        )

    def relabeled(self, mapping: dict) -> "QuadDisk":
        """The same disk with vertex ids renamed by an injective ``mapping``."""
        if len(set(mapping.values())) != len(mapping) or len(mapping) != len(self.vertex_squares):
            raise ValueError("relabeling must be a bijection on the vertices")
        new = object.__new__(QuadDisk)
        m = mapping.__getitem__
        new.squares = tuple(tuple(map(m, q)) for q in self.squares)
        new.directed = {(m(a), m(b)): i for (a, b), i in self.directed.items()}
        new.edge_squares = {frozenset(map(m, e)): o for e, o in self.edge_squares.items()}
        new.vertex_squares = {m(v): o for v, o in self.vertex_squares.items()}
        new.boundary_edges = frozenset(frozenset(map(m, e)) for e in self.boundary_edges)
        new.boundary_next = {m(a): m(b) for a, b in self.boundary_next.items()}
        new.interior_vertices = frozenset(map(m, self.interior_vertices))
        start = min(new.boundary_next, key=vertex_key)
        cyc = self.boundary_cycle
        i = cyc.index(next(v for v in cyc if m(v) == start))
        new.boundary_cycle = tuple(m(v) for v in cyc[i:] + cyc[:i])
        new._cells = None
        return new

    def lattice_cells(self) -> list[Point] | None:
        """Cells of a disk whose vertex ids are its own lattice coordinates.

        Returns the lower-left corner of each square, or None when the ids are
        not counterclockwise unit lattice squares.
        """
        if self._cells is None:
            cells = []
            for q in self.squares:
                if not all(isinstance(p, tuple) and len(p) == 2 and all(type(c) is int for c in p) for p in q):
                    self._cells = False
                    break
                x, y = min(q)
                if q not in _rotations(_ccw_cell(x, y)):
                    self._cells = False
                    break
                cells.append((x, y))
            else:
                self._cells = cells
        return self._cells or None


def _ccw_cell(x: int, y: int) -> tuple:
    return ((x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1))


def _rotations(q: tuple) -> list[tuple]:
    return [q[j:] + q[:j] for j in range(4)]


def build_complex(squares: Iterable[Sequence[Vertex]]) -> QuadDisk:
    """Validate squares as a quadriculated disk, orienting them as needed.

    Square 0 keeps its stored order, which defines counterclockwise; every
    other square is reversed if required to agree with its neighbours.
    """
    sq = [tuple(s) for s in squares]
    if not sq:
        raise InvalidDiskError("a disk needs at least one square")
    for i, s in enumerate(sq):
        if len(s) != 4 or len(set(s)) != 4:
            raise InvalidDiskError(f"square {i} must have 4 distinct vertices: {s!r}")
    by_edge: dict[frozenset, list[int]] = {}
    for i, s in enumerate(sq):
        for j in range(4):
            by_edge.setdefault(edge_of(s[j], s[(j + 1) % 4]), []).append(i)

    oriented = [False] * len(sq)
    oriented[0] = True
    todo = deque([0])
    while todo:
        i = todo.popleft()
        s = sq[i]
        for j in range(4):
            a, b = s[j], s[(j + 1) % 4]
            for t in by_edge[edge_of(a, b)]:
                if t == i:
                    continue
                q = sq[t]
                k = q.index(b)
                agrees = q[(k + 1) % 4] == a
                if oriented[t]:
                    if not agrees:
                        raise InvalidDiskError(f"non-orientable gluing between squares {i} and {t}")
                    continue
                if not agrees:
                    sq[t] = q[::-1]
                oriented[t] = True
                todo.append(t)
    return QuadDisk(sq)


# -- text formats ------------------------------------------------------------


def _grid_cells(text: str) -> list[Point]:
    lines = text.replace("\r\n", "\n").replace("\r", "\n").split("\n")
    while lines and not lines[-1].strip():
        lines.pop()
    cells = []
    h = len(lines)
    for row, line in enumerate(lines):
        for col, ch in enumerate(line):
            if ch == "#":
                cells.append((col, h - 1 - row))
            elif ch != ".":
                raise BoardParseError(f"unexpected character {ch!r} at line {row + 1}")
    return cells


def _check_cells(cells: set[Point]) -> None:
    if not cells:
        raise BoardParseError("board has no cells")
    start = min(cells)
    seen = {start}
    todo = [start]
    while todo:
        x, y = todo.pop()
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if n in cells and n not in seen:
                seen.add(n)
                todo.append(n)
    if len(seen) != len(cells):
        raise BoardParseError("cells are not edge-connected")
    xs = [c[0] for c in cells]
    ys = [c[1] for c in cells]
    x0, x1, y0, y1 = min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1
    outside = {(x0, y0)}
    todo = [(x0, y0)]
    while todo:
        x, y = todo.pop()
        for n in ((x + 1, y), (x - 1, y), (x, y + 1), (x, y - 1)):
            if x0 <= n[0] <= x1 and y0 <= n[1] <= y1 and n not in cells and n not in outside:
                outside.add(n)
                todo.append(n)
    if len(outside) + len(cells) != (x1 - x0 + 1) * (y1 - y0 + 1):
        raise BoardParseError("cells enclose a hole (not simply connected)")


def board_from_cells(cells: Iterable[Point], *, normalize: bool = True) -> QuadDisk:
    """Board made of unit lattice cells given by their lower-left corners.

    Squares are ordered bottom row first, left to right; vertex ids are
    lattice points. With ``normalize`` the cells are translated so the
    minimum x and y are 0.
    """
    cs = {tuple(c) for c in cells}
    _check_cells(cs)
    if normalize:
        mx = min(c[0] for c in cs)
        my = min(c[1] for c in cs)
        cs = {(x - mx, y - my) for x, y in cs}
    order = sorted(cs, key=lambda c: (c[1], c[0]))
    return QuadDisk(_ccw_cell(x, y) for x, y in order)


def parse_board(text: str) -> QuadDisk:
    """Parse a ``#``/``.`` grid; the bottom-left of the bounding box is the origin."""
    return board_from_cells(_grid_cells(text))


def parse_complex(text: str) -> QuadDisk:
    lines = [ln.strip() for ln in text.replace("\r\n", "\n").split("\n")]
    lines = [ln for ln in lines if ln and not ln.startswith("%")]
    if not lines or lines[0] != "quadcomplex":
        raise BoardParseError("complex text must start with a 'quadcomplex' header")
    indexed = {}
    for ln in lines[1:]:
        head, sep, body = ln.partition(":")
        parts = head.split()
        if not sep or len(parts) != 2 or parts[0] != "s":
            raise BoardParseError(f"malformed square line: {ln!r}")
        try:
            idx = int(parts[1])
        except ValueError:
            raise BoardParseError(f"bad square index in {ln!r}") from None
        verts = body.split()
        if len(verts) != 4:
            raise BoardParseError(f"square {idx} must list 4 vertices")
        if idx in indexed:
            raise BoardParseError(f"square {idx} listed twice")
        indexed[idx] = tuple(verts)
    if sorted(indexed) != list(range(len(indexed))):
        raise BoardParseError("square indices must be 0..F-1")
    return build_complex(indexed[i] for i in range(len(indexed)))


def load_disk(text: str) -> QuadDisk:
    """Parse either text format, chosen by the ``quadcomplex`` header."""
    stripped = text.lstrip()
    if stripped.startswith("quadcomplex"):
        return parse_complex(text)
    return parse_board(text)


def _token(v) -> str:
    if isinstance(v, tuple):
        return ",".join(str(c) for c in v)
    s = str(v)
    if not s or any(ch.isspace() for ch in s) or ":" in s:
        raise ValueError(f"vertex id {v!r} cannot be written as a token")
    return s


def format_complex(disk: QuadDisk) -> str:
    out = ["quadcomplex"]
    for i, q in enumerate(disk.squares):
        out.append(f"s {i}: " + " ".join(_token(v) for v in q))
    return "\n".join(out) + "\n"


def format_board(disk: QuadDisk) -> str:
    cells = disk.lattice_cells()
    if cells is None:
        raise ValueError("disk is not labeled by lattice coordinates")
    cs = set(cells)
    x0 = min(c[0] for c in cs)
    x1 = max(c[0] for c in cs)
    y0 = min(c[1] for c in cs)
    y1 = max(c[1] for c in cs)
    rows = []
    for y in range(y1, y0 - 1, -1):
        rows.append("".join("#" if (x, y) in cs else "." for x in range(x0, x1 + 1)).rstrip("."))
    return "\n".join(rows) + "\n"


def format_disk(disk: QuadDisk) -> str:
    """Board text when the disk carries lattice coordinates, complex text otherwise."""
    if disk.lattice_cells() is not None and is_board(disk):
        return format_board(disk)
    return format_complex(disk)


# -- coloring ----------------------------------------------------------------


@dataclass(frozen=True)
class Bicoloring:
    colors: tuple  # True for black, per square
    black: tuple  # square indices of black squares, label order
    white: tuple

    @property
    def b(self) -> int:
        return len(self.black)

    @property
    def w(self) -> int:
        return len(self.white)

    def black_label(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.black)}

    def white_label(self) -> dict[int, int]:
        return {s: i for i, s in enumerate(self.white)}

    def swapped(self) -> "Bicoloring":
        return Bicoloring(tuple(not c for c in self.colors), self.white, self.black)


def bicolor(disk: QuadDisk, first: bool = BLACK) -> Bicoloring:
    """Proper 2-coloring; square 0 gets color ``first`` (black by default)."""
    n = len(disk.squares)
    colors: list = [None] * n
    colors[0] = first
    todo = deque([0])
    while todo:
        s = todo.popleft()
        for t in disk.neighbors(s):
            if colors[t] is None:
                colors[t] = not colors[s]
                todo.append(t)
            elif colors[t] == colors[s]:
                raise AssertionError(f"odd cycle through squares {s} and {t}")
    return coloring_from(colors)


def coloring_from(colors: Sequence[bool]) -> Bicoloring:
    cs = tuple(bool(c) for c in colors)
    return Bicoloring(
        cs,
        tuple(i for i, c in enumerate(cs) if c),
        tuple(i for i, c in enumerate(cs) if not c),
    )


def black_to_white_matrix(disk: QuadDisk, coloring: Bicoloring | None = None) -> np.ndarray:
    """The b x w 0/1 adjacency matrix between black and white squares."""
    if coloring is None:
        coloring = bicolor(disk)
    bl = coloring.black_label()
    wl = coloring.white_label()
    B = np.zeros((coloring.b, coloring.w), dtype=np.int64)
    for owners in disk.edge_squares.values():
        if len(owners) == 2:
            s, t = owners
            if s in bl:
                if t not in wl:
                    raise AssertionError(f"coloring is not proper at squares {s}, {t}")
                B[bl[s], wl[t]] = 1
            else:
                if t not in bl:
                    raise AssertionError(f"coloring is not proper at squares {s}, {t}")
                B[bl[t], wl[s]] = 1
    return B


# -- developing map ----------------------------------------------------------


@dataclass(frozen=True)
class DevelopingMap:
    positions: dict  # vertex -> lattice point
    placements: tuple  # per square, images of its 4 vertices in stored order

    def cell(self, s: int) -> Point:
        return min(self.placements[s])

    def cells(self) -> list[Point]:
        return [min(p) for p in self.placements]


def _place(q: tuple, j: int, a: Point, b: Point) -> tuple:
    """Images of square q given images a, b of q[j], q[j+1] (counterclockwise)."""
    d = _rot((b[0] - a[0], b[1] - a[1]))
    out = [None] * 4
    out[j] = a
    out[(j + 1) % 4] = b
    out[(j + 2) % 4] = (b[0] + d[0], b[1] + d[1])
    out[(j + 3) % 4] = (a[0] + d[0], a[1] + d[1])
    return tuple(out)


def develop(disk: QuadDisk, seed: tuple | None = None, rng: random.Random | None = None) -> DevelopingMap:
    """Unroll the disk onto the integer lattice, orientation preserved.

    ``seed`` is a pair of adjacent vertices sent to (0, 0) and (1, 0); the
    default is the first edge of square 0. ``rng`` randomizes the order in
    which squares are visited; the result does not depend on it.
    """
    if seed is None:
        q0 = disk.squares[0]
        seed = (q0[0], q0[1])
    u, v = seed
    owners = disk.edge_squares.get(edge_of(u, v))
    if not owners:
        raise ValueError(f"{seed!r} is not an edge of the disk")
    s0 = owners[0]
    q = disk.squares[s0]
    j = q.index(u)
    if q[(j + 1) % 4] == v:
        placed = _place(q, j, (0, 0), (1, 0))
    else:
        placed = _place(q, (j - 1) % 4, (1, 0), (0, 0))
    placements: list = [None] * len(disk.squares)
    placements[s0] = placed
    pos = dict(zip(q, placed))
    frontier = [s0]
    while frontier:
        if rng is not None:
            k = rng.randrange(len(frontier))
            frontier[k], frontier[-1] = frontier[-1], frontier[k]
        s = frontier.pop()
        qs = disk.squares[s]
        for jj in range(4):
            a, b = qs[jj], qs[(jj + 1) % 4]
            t = disk.across(s, a, b)
            if t is None or placements[t] is not None:
                continue
            qt = disk.squares[t]
            kt = qt.index(b)
            pt = _place(qt, kt, pos[b], pos[a])
            for vert, p in zip(qt, pt):
                old = pos.setdefault(vert, p)
                if old != p:
                    raise AssertionError(f"developing map is multivalued at {vert!r}")
            placements[t] = pt
            frontier.append(t)
    return DevelopingMap(pos, tuple(placements))


def is_board(disk: QuadDisk, dev: DevelopingMap | None = None) -> bool:
    """True when the developing map is injective.

    Injectivity on vertices is checked; it implies injectivity on edges and
    squares, while distinct square images alone do not (a slit ring).
    """
    if dev is None:
        dev = develop(disk)
    return len(set(dev.positions.values())) == len(dev.positions)
