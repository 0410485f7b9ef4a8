"""Cut and paste along a good diagonal."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .diagonals import Diagonal
from .disk import Bicoloring, QuadDisk, build_complex, develop, edge_of, is_board
from .errors import InvalidDiskError, SurgeryError

LEFT = "left"
RIGHT = "right"


@dataclass(frozen=True)
class SurgeryPlan:
    """Bookkeeping for one cut and paste; the chosen side is always the left.

    ``left_squares`` are s^l_1..s^l_k' (removed with the diagonal),
    ``right_squares`` are s^r_1..s^r_{k-1}. ``sides`` labels every square
    off the diagonal.
    """

    diagonal: Diagonal
    k: int
    k_prime: int
    left_squares: tuple
    right_squares: tuple
    zeta_l: tuple
    zeta_r: tuple
    zeta_l_plus: tuple
    sides: dict

    @property
    def removed(self) -> tuple:
        return self.diagonal.squares + self.left_squares

    def region(self, side: str) -> list[int]:
        removed = set(self.left_squares)
        return sorted(s for s, lab in self.sides.items() if lab == side and s not in removed)


@dataclass(frozen=True)
class SurgeryResult:
    plan: SurgeryPlan
    components: tuple  # QuadDisk per component, discovery order
    square_maps: tuple  # per component: original square index of each of its squares
    identification: tuple  # (zeta_l vertex, zeta_r vertex) pairs glued together

    @property
    def ell(self) -> int:
        return len(self.components)

    def relabel(self) -> dict[int, tuple[int, int]]:
        """Original square -> (component, square index inside the component)."""
        return {orig: (c, i) for c, m in enumerate(self.square_maps) for i, orig in enumerate(m)}

    def removed_by_color(self, coloring: Bicoloring) -> tuple[list[int], list[int]]:
        """Removed (black, white) squares, each in diagonal order."""
        removed = self.plan.removed
        return (
            [s for s in removed if coloring.colors[s]],
            [s for s in removed if not coloring.colors[s]],
        )


def _opposite(q: tuple, v):
    return q[(q.index(v) + 2) % 4]


def plan_surgery(disk: QuadDisk, diagonal: Diagonal) -> SurgeryPlan:
    """Resolve the chosen side and name every square and zig-zag vertex.

    Balanced diagonals take the side holding k squares. Unbalanced ones
    keep the orientation of an excellent diagonal (its monotone arc must
    stay on the right) and otherwise take the side whose first square has
    the smaller index.
    """
    if not diagonal.good:
        raise SurgeryError(f"diagonal from {diagonal.corner!r} is bad")
    d = diagonal
    k = d.k
    s, v = d.squares, d.vertices
    if d.balanced:
        if disk.is_boundary_edge(d.end, d.left[-1]):
            d = d.mirrored()
    elif k >= 2 and not d.excellent:
        l1 = disk.across(s[0], v[1], d.left[0])
        r1 = disk.across(s[0], v[1], d.right[0])
        if r1 < l1:
            d = d.mirrored()
    kp = k if d.balanced else k - 1

    left_sq = tuple(disk.across(s[i], v[i + 1], d.left[i]) for i in range(kp))
    right_sq = tuple(disk.across(s[i], v[i + 1], d.right[i]) for i in range(k - 1))
    if None in left_sq or None in right_sq:
        raise AssertionError("missing flank square along a good diagonal")

    zl: list = []
    zr: list = []
    zlp: list = []
    if k >= 2:
        vll = [_opposite(disk.squares[t], v[i + 1]) for i, t in enumerate(left_sq)]
        for i in range(k - 1):
            zl += [d.left[i], vll[i]]
            zr += [d.right[i], v[i + 1]]
        zl.append(d.left[k - 1])
        zr.append(d.right[k - 1])
        zlp = list(zl)
        if d.balanced:
            q = disk.squares[left_sq[k - 1]]
            last = next(u for u in q if u not in (d.left[k - 1], v[k], vll[k - 1]))
            zlp += [vll[k - 1], last]

    diag = set(s)
    sides: dict[int, str] = {}
    todo = deque()
    for t in left_sq:
        sides[t] = LEFT
        todo.append(t)
    for t in right_sq:
        if sides.get(t, RIGHT) != RIGHT:
            raise AssertionError(f"square {t} is on both sides of the diagonal")
        sides[t] = RIGHT
        todo.append(t)
    while todo:
        t = todo.popleft()
        for u in disk.neighbors(t):
            if u in diag:
                continue
            if u in sides:
                if sides[u] != sides[t]:
                    raise AssertionError(f"squares {t} and {u} straddle the diagonal")
                continue
            sides[u] = sides[t]
            todo.append(u)
    if len(sides) != len(disk.squares) - k:
        raise AssertionError("side classification missed squares")

    return SurgeryPlan(d, k, kp, left_sq, right_sq, tuple(zl), tuple(zr), tuple(zlp), sides)


def _dup_name(v, i: int, used: set):
    while True:
        if isinstance(v, tuple):
            cand = v + (i,)
        else:
            cand = f"{v}~{i}"
        if cand not in used:
            return cand
        i += 1


def _split(squares: Sequence[tuple]) -> list[tuple[list[tuple], list[int]]]:
    n = len(squares)
    by_edge: dict[frozenset, list[int]] = {}
    for i, q in enumerate(squares):
        for j in range(4):
            by_edge.setdefault(edge_of(q[j], q[(j + 1) % 4]), []).append(i)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        comp = []
        seen[start] = True
        todo = deque([start])
        while todo:
            i = todo.popleft()
            comp.append(i)
            q = squares[i]
            for j in range(4):
                for t in by_edge[edge_of(q[j], q[(j + 1) % 4])]:
                    if not seen[t]:
                        seen[t] = True
                        todo.append(t)
        comp.sort()
        out.append(_unpinch([squares[i] for i in comp], comp))
    return out


def _unpinch(squares: list[tuple], index: list[int]) -> tuple[list[tuple], list[int]]:
    """Give each fan around a pinched vertex its own copy of the vertex."""
    at: dict = {}
    by_edge: dict[frozenset, list[int]] = {}
    for i, q in enumerate(squares):
        for j in range(4):
            at.setdefault(q[j], []).append(i)
            by_edge.setdefault(edge_of(q[j], q[(j + 1) % 4]), []).append(i)
    used = set(at)
    sq = [list(q) for q in squares]
    for v, owners in at.items():
        fans = []
        left = set(owners)
        while left:
            first = min(left)
            fan = {first}
            todo = [first]
            while todo:
                i = todo.pop()
                q = squares[i]
                j = q.index(v)
                for u in (q[(j + 1) % 4], q[(j - 1) % 4]):
                    for t in by_edge[edge_of(v, u)]:
                        if t in left and t not in fan:
                            fan.add(t)
                            todo.append(t)
            left -= fan
            fans.append(fan)
        for n, fan in enumerate(fans[1:], start=1):
            new = _dup_name(v, n, used)
            used.add(new)
            for i in fan:
                sq[i][squares[i].index(v)] = new
    return [tuple(q) for q in sq], index


def split_components(squares: Sequence[Sequence]) -> list[QuadDisk]:
    """Split a glued square complex into disks meeting at most at vertices."""
    return [build_complex(sq) for sq, _ in _split([tuple(q) for q in squares])]


def _recoordinate(comp: QuadDisk, origin_square: Sequence[tuple]) -> QuadDisk | None:
    """Relabel a component by lattice points, square 0 landing on ``origin_square``.

    Returns None when the component does not embed.
    """
    dev = develop(comp)
    if not is_board(comp, dev):
        return None
    p0, p1 = origin_square[0], origin_square[1]
    e = (p1[0] - p0[0], p1[1] - p0[1])
    f = (-e[1], e[0])
    to = {
        v: (p0[0] + x * e[0] + y * f[0], p0[1] + x * e[1] + y * f[1])
        for v, (x, y) in dev.positions.items()
    }
    return comp.relabeled(to)


def cut_and_paste(disk: QuadDisk, plan: SurgeryPlan) -> SurgeryResult:
    """Remove the k + k' squares, glue zeta_l onto zeta_r, split into disks.

    Vertex ids of the left region are renamed onto the right region. When
    the input is labeled by lattice coordinates, each embedded component is
    relabeled by coordinates with the left region held fixed and the right
    region translated onto it.
    """
    removed = set(plan.removed)
    kept = [s for s in range(len(disk.squares)) if s not in removed]
    rename = dict(zip(plan.zeta_l, plan.zeta_r))
    for s in plan.region(RIGHT):
        if any(v in rename for v in disk.squares[s]):
            raise AssertionError(f"zig-zag vertex shared with right square {s}")
    glued = [tuple(rename.get(v, v) for v in disk.squares[s]) for s in kept]
    if len({frozenset(q) for q in glued}) != len(glued):
        raise AssertionError("identification merged two squares")

    lattice = disk.lattice_cells() is not None
    if lattice and plan.zeta_l:
        a, b = plan.zeta_l[0], plan.zeta_r[0]
        shift = (a[0] - b[0], a[1] - b[1])
    else:
        shift = (0, 0)

    components = []
    maps = []
    for sq, idx in _split(glued):
        try:
            comp = QuadDisk(sq)
        except InvalidDiskError as exc:
            raise AssertionError(f"cut and paste produced a non-disk: {exc}") from exc
        orig = [kept[i] for i in idx]
        if lattice:
            o = orig[0]
            d = shift if plan.sides.get(o) == RIGHT else (0, 0)
            target = [(p[0] + d[0], p[1] + d[1]) for p in disk.squares[o]]
            comp = _recoordinate(comp, target) or comp
        components.append(comp)
        maps.append(tuple(orig))
    return SurgeryResult(plan, tuple(components), tuple(maps), tuple(zip(plan.zeta_l, plan.zeta_r)))
