"""Moving systems between Z^n and a sublattice: contraction and extension.

A sublattice S of rank r is straightened by a Smith decomposition of its
basis columns: the unimodular transport turns S into the diagonal lattice
with moduli d1..dr (remaining coordinates pinned).  Contraction of a
submodule P of A^k is the intersection with the subring generated by the
straightened directions; extension substitutes the sublattice monomials back
and returns the A-span.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

from .groebner import (
    DEFAULT_ORDER,
    Submodule,
    TermOrder,
    buchberger,
    eliminate,
    groebner_basis,
    make_key,
    member,
    reduced_basis,
    submodule_contains,
    submodule_equal,
    vec_to_vpoly,
    vpoly_to_vec,
)
from .intlat import (
    GaloisSubgroup,
    IntLattice,
    IntMatrix,
    SmithDecomposition,
    smith,
    unimodular_inverse,
)
from .laurent import (
    LaurentPoly,
    LaurentVec,
    MonomialMap,
    apply_monomial_map,
    coset_split,
    normalize_to_poly,
)


@dataclass(frozen=True)
class SublatticeContext:
    """Smith frame of a sublattice: basis columns = U @ D @ V."""

    lattice: IntLattice
    decomposition: SmithDecomposition
    transport: MonomialMap  # exponent action x -> U^{-1} x

    @property
    def ambient(self) -> int:
        return self.lattice.ambient

    @property
    def rank(self) -> int:
        return self.lattice.rank

    @property
    def moduli(self) -> tuple[int, ...]:
        """Positive diagonal entries d1 | d2 | ... | dr."""
        return self.decomposition.diagonal[: self.rank]

    @property
    def index(self) -> int:
        """Product of the moduli: the group index when S has full rank."""
        return prod(self.moduli)

    def sub_exponent_matrix(self) -> IntMatrix:
        """n x r matrix whose column i is the exponent of the i-th sub-ring
        variable inside Z^n (equals U @ D restricted to the first r columns)."""
        ud = self.decomposition.U @ self.decomposition.D
        return IntMatrix.from_rows([row[: self.rank] for row in ud.rows], self.rank)

    def point_to_sub(self, x: tuple[int, ...]) -> tuple[int, ...]:
        """Coordinates of a sublattice point in the straightened basis."""
        y = self.transport.W.apply(x)
        r = self.rank
        if any(v != 0 for v in y[r:]):
            raise ValueError("point is not in the sublattice")
        d = self.moduli
        if any(y[i] % d[i] != 0 for i in range(r)):
            raise ValueError("point is not in the sublattice")
        return tuple(y[i] // d[i] for i in range(r))

    def point_from_sub(self, t: tuple[int, ...]) -> tuple[int, ...]:
        return self.sub_exponent_matrix().apply(t)


def sublattice_context(s: IntLattice) -> SublatticeContext:
    cols = s.basis.transpose() if s.rank else IntMatrix(tuple(() for _ in range(s.ambient)), 0)
    dec = smith(cols)
    winv = unimodular_inverse(dec.U)
    return SublatticeContext(s, dec, MonomialMap.from_matrix(winv))


@dataclass
class ContractedModule:
    """A submodule over the sublattice ring, with the frame that produced it."""

    context: SublatticeContext
    module: Submodule

    def __post_init__(self):
        if self.module.nvars != self.context.rank:
            raise ValueError("module variable count differs from sublattice rank")


def contracted_module(s: IntLattice, module: Submodule) -> ContractedModule:
    """Attach a user-supplied module on the sublattice to its Smith frame."""
    return ContractedModule(sublattice_context(s), module)


def contract(p: Submodule, s: IntLattice) -> ContractedModule:
    """Intersection of p with the subring of monomials supported on s.

    After the unimodular transport, A^k is a free module over the diagonal
    subring with one block per residue offset; rewriting the generators in
    that basis makes the contraction a component-elimination Groebner run,
    with no substitution variables and no degree blowup.  Degenerate
    directions are removed afterwards by variable elimination.
    """
    if s.ambient != p.nvars:
        raise ValueError("lattice ambient dimension mismatch")
    ctx = sublattice_context(s)
    n, k, r = p.nvars, p.k, ctx.rank
    moved = [apply_monomial_map(ctx.transport, g) for g in p.generators]
    dplus = list(ctx.moduli) + [1] * (n - r)

    # residue offsets of the straightened diagonal lattice, zero offset first
    offsets = [()]
    for d in dplus:
        offsets = [o + (v,) for o in offsets for v in range(d)]
    offsets.sort()
    offset_index = {o: i for i, o in enumerate(offsets)}
    rho = len(offsets)

    def rewrite(vec: LaurentVec):
        out = {}
        for j, poly in enumerate(vec.entries):
            for e, c in poly.terms.items():
                q = tuple(e[i] // dplus[i] for i in range(n))
                rem = tuple(e[i] % dplus[i] for i in range(n))
                comp = offset_index[rem] * k + j
                out[(comp, q)] = c
        return out

    big_k = rho * k
    raw = []
    for g in moved:
        for o in offsets:
            raw.append(rewrite(g.shift(o)))

    gens = []
    for vp in raw:
        vec = vpoly_to_vec(vp, n, big_k)
        if not vec.is_zero():
            gens.append(vec)
    inner = Submodule(n, big_k, gens)
    comp_rank = [0 if c < k else 1 for c in range(big_k)]
    key = make_key(DEFAULT_ORDER, n, comp_rank=comp_rank)
    # No saturation pass here: monomial scaling respects the component
    # blocks, so the Laurent span of the low cut is unchanged by it, and
    # the resulting submodule saturates itself on demand.
    gb = reduced_basis(buchberger(inner._lifted_vpolys(), key), key)
    low = []
    for g in gb:
        if all(comp < k for comp, _ in g):
            low.append(vpoly_to_vec(g, n, k))
    q = Submodule(n, k, low)
    if r < n:
        q = eliminate(q, range(r, n), allow_all=True)
    return ContractedModule(ctx, q)


def extend_vector(ctx: SublatticeContext, v: LaurentVec) -> LaurentVec:
    """Rewrite a vector over the sublattice coordinates as one over Z^n."""
    emat = ctx.sub_exponent_matrix()
    return LaurentVec([p.substitute_exponents(emat.apply, nvars_out=ctx.ambient)
                       for p in v.entries])


def extend(q: ContractedModule) -> Submodule:
    """A-span of the contracted generators, substituted back into Z^n."""
    ctx = q.context
    gens = [extend_vector(ctx, g) for g in groebner_basis(q.module)]
    return Submodule(ctx.ambient, q.module.k, gens)


def is_extension_from(p: Submodule, s: IntLattice) -> tuple[bool, tuple[LaurentVec, LaurentVec] | None]:
    """Is p recoverable from its restriction to the sublattice s?

    Splits every canonical generator into its coset components relative to s
    and tests each component for membership; the first failing (generator,
    component) pair is returned as a witness.
    """
    if s.ambient != p.nvars:
        raise ValueError("lattice ambient dimension mismatch")
    for g in groebner_basis(p):
        parts = coset_split(g, s)
        if len(parts) <= 1:
            continue
        for part in parts.values():
            if not member(part, p):
                return False, (g, part)
    return True, None


@dataclass(frozen=True)
class RoundtripReport:
    extension_contained_in_original: bool
    extension_equals_original: bool
    double_contraction_stable: bool


def contract_extend_roundtrips(p: Submodule, s: IntLattice) -> RoundtripReport:
    """Check the contraction/extension laws for p against s."""
    q = contract(p, s)
    pce = extend(q)
    contained = submodule_contains(p, pce)
    equal = contained and submodule_equal(pce, p)
    q2 = contract(pce, s)
    stable = submodule_equal(q2.module, q.module)
    return RoundtripReport(contained, equal, stable)


def roundtrip_from_sublattice(q: ContractedModule) -> bool:
    """Extension followed by contraction recovers a module on the sublattice."""
    back = contract(extend(q), q.context.lattice)
    return submodule_equal(back.module, q.module)


@dataclass(frozen=True)
class DiagonalGroupInfo:
    """Structural description of the finite diagonal symmetry group."""

    moduli: tuple[int, ...]
    order: int
    group: GaloisSubgroup


def galois_group_of(s: IntLattice) -> DiagonalGroupInfo:
    """Finite group distinguishing Z^n-monomial cosets of a full-rank s.

    The group is the product of cyclic groups given by the Smith moduli,
    reported structurally; characters are never evaluated numerically.
    """
    if s.rank != s.ambient:
        raise ValueError("the symmetry group is finite only for full-rank sublattices")
    ctx = sublattice_context(s)
    d = ctx.moduli
    gens = []
    for i, di in enumerate(d):
        if di > 1:
            gens.append(tuple(1 if j == i else 0 for j in range(len(d))))
    return DiagonalGroupInfo(d, ctx.index, GaloisSubgroup.make(d, gens))
