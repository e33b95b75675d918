"""Finite-window trajectory oracle.

Solutions of a difference system on a finite window are computed by exact
rational linear algebra on the instantiated equations: one equation per
(generator, shift) whose shifted support fits inside the window.  This path
never consults a Groebner basis, so it serves as an independent check for
the symbolic operations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .linalg import Row, SpanBuilder, nullspace_basis, solve_exact
from .laurent import Exp, LaurentVec
from .groebner import Submodule
from .sublattice import ContractedModule, extend


@dataclass(frozen=True)
class Window:
    """Finite set of lattice points, optionally a product box."""

    points: tuple[Exp, ...]
    box: tuple[tuple[int, int], ...] | None = None

    @property
    def dim(self) -> int:
        return len(self.points[0]) if self.points else 0

    def __len__(self):
        return len(self.points)


def box_window(bounds) -> Window:
    bounds = tuple((int(a), int(b)) for a, b in bounds)
    for a, b in bounds:
        if a > b:
            raise ValueError("empty box side")
    pts = tuple(sorted(product(*(range(a, b + 1) for a, b in bounds))))
    return Window(pts, bounds)


def explicit_window(points) -> Window:
    pts = tuple(sorted(tuple(int(v) for v in p) for p in points))
    if not pts:
        raise ValueError("empty window")
    return Window(pts, None)


def _generators_of(mod_or_gens) -> list[LaurentVec]:
    if isinstance(mod_or_gens, Submodule):
        return list(mod_or_gens.generators)
    return list(mod_or_gens)


def _valid_shifts(support: set[Exp], window: Window) -> list[Exp]:
    """All y such that support + y lies inside the window."""
    if not support:
        return []
    n = window.dim
    if window.box is not None:
        lo = [min(p[i] for p in support) for i in range(n)]
        hi = [max(p[i] for p in support) for i in range(n)]
        ranges = [range(window.box[i][0] - lo[i], window.box[i][1] - hi[i] + 1)
                  for i in range(n)]
        return [tuple(y) for y in product(*ranges)]
    pts = set(window.points)
    anchor = next(iter(support))
    out = []
    for w in window.points:
        y = tuple(a - b for a, b in zip(w, anchor))
        if all(tuple(a + b for a, b in zip(p, y)) in pts for p in support):
            out.append(y)
    return sorted(set(out))


@dataclass
class WindowSolutionSpace:
    """Exact basis of the trajectories of a system on a finite window."""

    window: Window
    k: int
    basis: list[Row]
    index: dict[tuple[Exp, int], int]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def value(self, vec: Row, point: Exp, comp: int) -> Fraction:
        return vec.get(self.index[(point, comp)], Fraction(0))


def _equation_rows(gens: list[LaurentVec], k: int, window: Window,
                   index: dict[tuple[Exp, int], int]) -> list[Row]:
    rows: list[Row] = []
    for g in gens:
        supp = g.support()
        for y in _valid_shifts(supp, window):
            row: Row = {}
            for j, poly in enumerate(g.entries):
                for e, c in poly.terms.items():
                    pt = tuple(a + b for a, b in zip(e, y))
                    row[index[(pt, j)]] = c
            if row:
                rows.append(row)
    return rows


def window_solutions(mod_or_gens, window: Window, k: int | None = None) -> WindowSolutionSpace:
    """Nullspace of the instantiated equations on the window."""
    gens = _generators_of(mod_or_gens)
    if k is None:
        if isinstance(mod_or_gens, Submodule):
            k = mod_or_gens.k
        elif gens:
            k = gens[0].k
        else:
            raise ValueError("ambient rank unknown for empty generator list")
    index = {}
    for p in window.points:
        for j in range(k):
            index[(p, j)] = len(index)
    rows = _equation_rows(gens, k, window, index)
    basis = nullspace_basis(rows, len(index))
    return WindowSolutionSpace(window, k, basis, index)


class WindowSpan:
    """Q-span of all window-supported shifts of the generators.

    Membership here certifies membership in the module; a refusal only says
    the certificate does not fit in this window.
    """

    def __init__(self, gens, window: Window, k: int | None = None):
        gens = _generators_of(gens)
        if k is None:
            k = gens[0].k if gens else 1
        self.window = window
        self.k = k
        self.index: dict[tuple[Exp, int], int] = {}
        for p in window.points:
            for j in range(k):
                self.index[(p, j)] = len(self.index)
        self.builder = SpanBuilder()
        for g in gens:
            supp = g.support()
            for y in _valid_shifts(supp, window):
                self.builder.add(self._flatten(g.shift(y)))

    def _flatten(self, v: LaurentVec) -> Row:
        row: Row = {}
        for j, poly in enumerate(v.entries):
            for e, c in poly.terms.items():
                key = (e, j)
                if key not in self.index:
                    raise ValueError("vector sticks out of the window")
                row[self.index[key]] = c
        return row

    def contains(self, v: LaurentVec) -> bool:
        try:
            return self.builder.contains(self._flatten(v))
        except ValueError:
            return False


def default_membership_window(gens, margin: int = 2) -> Window:
    """Symmetric box comfortably larger than the generator supports."""
    gens = _generators_of(gens)
    pts = set()
    for g in gens:
        pts |= g.support()
    if not pts:
        raise ValueError("no support")
    n = len(next(iter(pts)))
    diam = 0
    for i in range(n):
        vals = [p[i] for p in pts]
        diam = max(diam, max(vals) - min(vals))
    reach = max(1, 2 * diam + margin)
    bound = max(max(abs(v) for v in p) for p in pts) + reach
    return box_window([(-bound, bound)] * n)


def _as_box_window(w) -> Window:
    if isinstance(w, Window):
        if w.box is None:
            raise ValueError("a box window is required here")
        return w
    return box_window(w)


def restriction_check(p: Submodule, s, w) -> bool:
    """Window-scale check that restriction onto the sublattice matches the
    contraction: restricted trajectories satisfy the contracted equations and
    span a space of the same dimension.

    Both comparisons run on an interior core of the box, one support
    diameter in from the boundary, to keep boundary artifacts out.
    """
    from .sublattice import contract

    q = contract(p, s)
    full = _as_box_window(w)
    n = p.nvars
    pts = set()
    for g in p.generators:
        pts |= g.support()
    margins = []
    for i in range(n):
        vals = [pt[i] for pt in pts] or [0]
        margins.append(max(vals) - min(vals))
    core_bounds = [(lo + m, hi - m) for (lo, hi), m in zip(full.box, margins)]
    if any(lo > hi for lo, hi in core_bounds):
        raise ValueError("window too small for the interior core")

    sub_pts = [x for x in box_window(core_bounds).points if s.contains(x)]
    if not sub_pts:
        raise ValueError("no sublattice points in the core window")
    t_of = {x: q.context.point_to_sub(x) for x in sub_pts}
    t_window = explicit_window(t_of.values())

    sols = window_solutions(p, full)
    t_index = {}
    for t in t_window.points:
        for j in range(p.k):
            t_index[(t, j)] = len(t_index)
    restricted: list[Row] = []
    for vec in sols.basis:
        row: Row = {}
        for x in sub_pts:
            for j in range(p.k):
                val = sols.value(vec, x, j)
                if val:
                    row[t_index[(t_of[x], j)]] = val
        restricted.append(row)

    q_rows = _equation_rows(list(q.module.generators), p.k, t_window, t_index)
    for row in restricted:
        for eq in q_rows:
            acc = Fraction(0)
            for col, c in eq.items():
                v = row.get(col)
                if v:
                    acc += c * v
            if acc:
                return False

    span = SpanBuilder()
    for row in restricted:
        span.add(row)
    q_dim = window_solutions(q.module, t_window).dimension
    return span.rank == q_dim


def extension_product_check(q: ContractedModule, w) -> bool:
    """Window dimension of the extension equals (group index) x (window
    dimension on one sublattice translate); the box must split into
    congruent translates, otherwise it is rejected.
    """
    ctx = q.context
    if ctx.rank != ctx.ambient:
        raise ValueError("product structure needs a full-rank sublattice")
    full = _as_box_window(w)
    cosets: dict[Exp, list[Exp]] = {}
    for x in full.points:
        cosets.setdefault(ctx.lattice.coset_rep(x), []).append(x)
    if len(cosets) != ctx.index:
        raise ValueError("window misses some cosets")
    shapes = set()
    translates = []
    for rep, pts in sorted(cosets.items()):
        base = min(pts)
        shape = tuple(sorted(ctx.point_to_sub(tuple(a - b for a, b in zip(x, base)))
                             for x in pts))
        shapes.add(shape)
        translates.append(shape)
    if len(shapes) != 1:
        raise ValueError("window is not aligned to sublattice translates")
    sub_window = explicit_window(shapes.pop())
    sub_dim = window_solutions(q.module, sub_window).dimension
    ext_dim = window_solutions(extend(q), full).dimension
    return ext_dim == ctx.index * sub_dim


def vandermonde_reconstruct(d: int, targets) -> list[Fraction]:
    """Recover the coset amplitudes from the piecewise-constant sample values
    of an index-d decomposition.  Only d = 2 has a rational character table
    (roots +-1, matrix [[1,1],[1,-1]]); larger d needs roots of unity outside
    Q and is rejected.
    """
    if d != 2:
        raise ValueError("reconstruction needs d-th roots of unity; only d=2 stays rational")
    vals = [Fraction(v) for v in targets]
    if len(vals) != 2:
        raise ValueError("expected exactly 2 target values")
    m = [[Fraction(1), Fraction(1)], [Fraction(1), Fraction(-1)]]
    sol = solve_exact(m, vals)
    assert sol is not None
    return list(sol)


# ---------------------------------------------------------------------------
# degree-window comparisons used to cross-check relation modules


def relation_window_dim(vectors: list[LaurentVec], box_bounds, k: int) -> int:
    """Dimension of {r : supp(r_i) in box, sum r_i v_i = 0} over Q."""
    window = box_window(box_bounds)
    c = len(vectors)
    unknowns = {}
    for i in range(c):
        for p in window.points:
            unknowns[(i, p)] = len(unknowns)
    equations: dict[tuple[int, Exp], Row] = {}
    for (i, y), col in unknowns.items():
        v = vectors[i]
        for j, poly in enumerate(v.entries):
            for e, coef in poly.terms.items():
                tgt = (j, tuple(a + b for a, b in zip(e, y)))
                equations.setdefault(tgt, {})[col] = \
                    equations.get(tgt, {}).get(col, Fraction(0)) + coef
    rows = [r for r in equations.values() if r]
    return len(nullspace_basis(rows, len(unknowns)))


def span_window_dim(gens: list[LaurentVec], box_bounds) -> int:
    """Dimension of the span of all box-supported shifts of the generators."""
    window = box_window(box_bounds)
    if not gens:
        return 0
    span = WindowSpan(gens, window, k=gens[0].k)
    return span.builder.rank
