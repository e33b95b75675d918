"""System-theoretic classification of kernel behaviors.

Controllability and autonomy of the behavior Ker(P) are properties of the
quotient A^k/P: torsion-free means controllable, torsion means autonomous.
The torsion closure P0 (all vectors with a nonzero multiple inside P) is
computed by a double relation pass, which also yields image representations
for controllable systems and a presentation of the obstruction P0/P.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .laurent import LaurentPoly, LaurentVec
from .groebner import (Submodule, eliminate, member, submodule_contains,
                       submodule_equal, syzygies)
from .intlat import IntLattice
from .sublattice import ContractedModule, contract, extend, extend_vector


def rank_over_fractions(p: Submodule) -> int:
    """Rank of the generator matrix over the field of rational functions."""
    rows = [list(g.entries) for g in p.generators]
    k = p.k
    rank = 0
    col = 0
    while rows and col < k:
        pivot = next((i for i, r in enumerate(rows) if not r[col].is_zero()), None)
        if pivot is None:
            col += 1
            continue
        prow = rows.pop(pivot)
        rank += 1
        # cross-multiplied elimination keeps everything polynomial
        rows = [[prow[col] * r[j] - r[col] * prow[j] for j in range(k)]
                for r in rows if not r[col].is_zero()] + \
               [r for r in rows if r[col].is_zero()]
        rows = [r for r in rows if any(not e.is_zero() for e in r)]
        col += 1
    return rank


def _columns(gens: list[LaurentVec], nvars: int, k: int) -> list[LaurentVec]:
    """Columns of the generator matrix, as vectors in A^(number of rows)."""
    return [LaurentVec([g.entries[j] for g in gens]) for j in range(k)]


def _full_module(nvars: int, k: int) -> Submodule:
    return Submodule(nvars, k, [LaurentVec.unit(nvars, k, j) for j in range(k)])


def _kernel_of_rows(rows: list[LaurentVec], nvars: int, k: int) -> Submodule:
    """{x in A^k : r . x = 0 for every row r}."""
    rows = [r for r in rows if not r.is_zero()]
    if not rows:
        return _full_module(nvars, k)
    return syzygies(_columns(rows, nvars, k), nvars, len(rows))


def torsion_closure(p: Submodule) -> Submodule:
    """P0 = {x in A^k : a x in P for some nonzero scalar polynomial a}.

    Relations among the generator-matrix columns cut out exactly the
    rational-span constraints, so the kernel of those relation rows is P0.
    """
    if p.is_zero_module():
        return Submodule(p.nvars, p.k, [])
    rel = syzygies(_columns(list(p.generators), p.nvars, p.k), p.nvars,
                   len(p.generators))
    return _kernel_of_rows(list(rel.generators), p.nvars, p.k)


def is_controllable(p: Submodule) -> bool:
    return submodule_equal(p, torsion_closure(p))


def is_autonomous(p: Submodule) -> bool:
    return rank_over_fractions(p) == p.k


def image_representation(p: Submodule) -> list[LaurentVec]:
    """Columns R with behavior = image of R; exists only without torsion.

    Verifies P . R = 0 and that the rows of R cut out exactly P before
    returning.
    """
    if not is_controllable(p):
        raise ValueError("no image representation: the system is not controllable")
    n, k = p.nvars, p.k
    if p.is_zero_module():
        cols = [LaurentVec.unit(n, k, j) for j in range(k)]
    else:
        rel = syzygies(_columns(list(p.generators), n, k), n, len(p.generators))
        cols = list(rel.generators)
        if not cols:
            cols = [LaurentVec([LaurentPoly(n) for _ in range(k)])]
    for g in p.generators:
        for c in cols:
            assert g.dot(c).is_zero(), "image representation fails P . R = 0"
    cut = _kernel_of_rows(cols, n, k)
    assert submodule_equal(cut, p), "image columns do not cut out P"
    return cols


def decomposition(p: Submodule) -> tuple[Submodule, Submodule]:
    """Torsion closure P0 plus a presentation of the obstruction P0/P.

    The second component T lives in A^m (m = number of P0 generators) and
    collects the coefficient rows h with sum h_i q_i inside P, so
    P0/P = A^m / T.
    """
    p0 = torsion_closure(p)
    q_gens = list(p0.generators)
    m = len(q_gens)
    if m == 0:
        return p0, Submodule(p.nvars, 1, [])
    assert submodule_contains(p0, p), "torsion closure must contain the module"
    combined = q_gens + list(p.generators)
    rel = syzygies(combined, p.nvars, p.k)
    t_gens = [LaurentVec(v.entries[:m]) for v in rel.generators]
    t = Submodule(p.nvars, m, t_gens)
    # exactness spot check: every relation row really lands inside P
    for h in t.generators:
        acc = LaurentVec([LaurentPoly(p.nvars) for _ in range(p.k)])
        for hi, qi in zip(h.entries, q_gens):
            acc = acc + qi.scale_poly(hi)
        assert member(acc, p), "presentation row escapes P"
    return p0, t


def degree_of_autonomy(p: Submodule) -> int:
    """n minus the size of the largest coordinate subring on which the
    contracted system is still not autonomous; n when no subring qualifies.
    """
    n, k = p.nvars, p.k
    for size in range(n, -1, -1):
        for keep in combinations(range(n), size):
            drop = [i for i in range(n) if i not in keep]
            q = eliminate(p, drop, allow_all=True)
            if rank_over_fractions(q) < k:
                return n - size
    return n


@dataclass(frozen=True)
class TransferReport:
    contraction_preserves_controllability: bool
    contraction_preserves_autonomy: bool
    extension_controllability_equiv: bool
    extension_autonomy_equiv: bool
    image_rep_transfers: bool | None

    @property
    def all_ok(self) -> bool:
        return (self.contraction_preserves_controllability
                and self.contraction_preserves_autonomy
                and self.extension_controllability_equiv
                and self.extension_autonomy_equiv
                and self.image_rep_transfers is not False)


def transfer_checks(p: Submodule, s: IntLattice) -> TransferReport:
    """Checks that contraction and extension move the classification the way
    they should: contraction preserves both properties, and a contracted
    system matches its extension exactly.
    """
    q = contract(p, s)
    full_rank = q.context.rank == q.context.ambient

    ctr = (not is_controllable(p)) or is_controllable(q.module)
    aut = True
    if full_rank:
        aut = (not is_autonomous(p)) or is_autonomous(q.module)

    qe = extend(q)
    ctr_equiv = is_controllable(q.module) == is_controllable(qe)
    aut_equiv = True
    if full_rank:
        aut_equiv = is_autonomous(q.module) == is_autonomous(qe)

    img: bool | None = None
    if full_rank and is_controllable(q.module):
        cols = image_representation(q.module)
        ext_cols = [extend_vector(q.context, c) for c in cols]
        img = all(g.dot(c).is_zero() for g in qe.generators for c in ext_cols)
        if img:
            live = [c for c in ext_cols if not c.is_zero()]
            cut = _kernel_of_rows(live, p.nvars, p.k)
            img = submodule_equal(cut, qe)
    return TransferReport(ctr, aut, ctr_equiv, aut_equiv, img)


@dataclass(frozen=True)
class AnalysisReport:
    rank_over_fractions: int
    is_controllable: bool
    is_autonomous: bool
    torsion_closure: Submodule
    image_rep: list[LaurentVec] | None
    degree_of_autonomy: int
    decomposition: tuple[Submodule, Submodule]


def analyze(p: Submodule) -> AnalysisReport:
    p0, t = decomposition(p)
    ctl = submodule_equal(p, p0)
    img = image_representation(p) if ctl else None
    return AnalysisReport(
        rank_over_fractions=rank_over_fractions(p),
        is_controllable=ctl,
        is_autonomous=is_autonomous(p),
        torsion_closure=p0,
        image_rep=img,
        degree_of_autonomy=degree_of_autonomy(p),
        decomposition=(p0, t),
    )
