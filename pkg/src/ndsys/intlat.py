"""Integer matrices, sublattices of Z^n, and the diagonal-group correspondence.

Lattices are stored by a canonical basis: the row-style Hermite normal form
with strictly increasing pivot columns, positive pivots, and entries above
each pivot reduced into [0, pivot).  Two equal lattices therefore compare
equal as data.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from .linalg import solve_exact


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix; rows is a tuple of equal-length tuples."""

    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged rows")

    @staticmethod
    def from_rows(rows, ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols required for empty matrix")
            ncols = len(rows[0])
        return IntMatrix(rows, ncols)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "IntMatrix":
        if not self.rows:
            return IntMatrix(tuple(() for _ in range(self.ncols)), 0)
        return IntMatrix(tuple(zip(*self.rows)), self.nrows)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.rows)) if other.rows else [() for _ in range(other.ncols)]
        rows = tuple(
            tuple(sum(a * b for a, b in zip(r, col)) for col in ot) for r in self.rows
        )
        return IntMatrix(rows, other.ncols)

    def apply(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise ValueError("length mismatch")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self.rows)

    def det(self) -> int:
        if self.nrows != self.ncols:
            raise ValueError("det of non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        # Bareiss fraction-free elimination
        m = [list(r) for r in self.rows]
        sign = 1
        prev = 1
        for t in range(n - 1):
            if m[t][t] == 0:
                piv = next((r for r in range(t + 1, n) if m[r][t] != 0), None)
                if piv is None:
                    return 0
                m[t], m[piv] = m[piv], m[t]
                sign = -sign
            for i in range(t + 1, n):
                for j in range(t + 1, n):
                    m[i][j] = (m[i][j] * m[t][t] - m[i][t] * m[t][j]) // prev
                m[i][t] = 0
            prev = m[t][t]
        return sign * m[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.nrows == self.ncols and abs(self.det()) == 1


def unimodular_inverse(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a unimodular matrix (integer entries)."""
    if not m.is_unimodular():
        raise ValueError("matrix is not unimodular")
    n = m.nrows
    cols = []
    for j in range(n):
        rhs = [Fraction(1 if i == j else 0) for i in range(n)]
        sol = solve_exact([[Fraction(v) for v in r] for r in m.rows], rhs)
        assert sol is not None
        cols.append([int(v) for v in sol])
    return IntMatrix.from_rows(list(zip(*cols)), n)


# ---------------------------------------------------------------------------
# Hermite normal form


def _hnf_inplace(rows: list[list[int]], transform: list[list[int]] | None):
    """Row-reduce rows to HNF; the same row operations are applied to transform."""
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    cur = 0
    for col in range(ncols):
        if cur >= nrows:
            break
        # euclidean elimination within this column, rows cur..end
        while True:
            nz = [r for r in range(cur, nrows) if rows[r][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(rows[r][col]))
            if piv != cur:
                rows[cur], rows[piv] = rows[piv], rows[cur]
                if transform is not None:
                    transform[cur], transform[piv] = transform[piv], transform[cur]
            done = True
            for r in range(cur + 1, nrows):
                if rows[r][col] != 0:
                    q = rows[r][col] // rows[cur][col]
                    rows[r] = [a - q * b for a, b in zip(rows[r], rows[cur])]
                    if transform is not None:
                        transform[r] = [a - q * b for a, b in zip(transform[r], transform[cur])]
                    if rows[r][col] != 0:
                        done = False
            if done:
                break
        if rows[cur][col] == 0:
            continue
        if rows[cur][col] < 0:
            rows[cur] = [-a for a in rows[cur]]
            if transform is not None:
                transform[cur] = [-a for a in transform[cur]]
        # reduce the entries above the pivot into [0, pivot)
        for r in range(cur):
            q = rows[r][col] // rows[cur][col]
            if q:
                rows[r] = [a - q * b for a, b in zip(rows[r], rows[cur])]
                if transform is not None:
                    transform[r] = [a - q * b for a, b in zip(transform[r], transform[cur])]
        cur += 1
    return cur


def hnf(m: IntMatrix) -> IntMatrix:
    """Canonical row HNF of the lattice spanned by the rows (zero rows dropped)."""
    rows = [list(r) for r in m.rows]
    rank = _hnf_inplace(rows, None)
    return IntMatrix.from_rows(rows[:rank], m.ncols)


def hnf_with_transform(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, int]:
    """Return (H, U, rank) with U unimodular, U @ m = H-padded-with-zero-rows."""
    rows = [list(r) for r in m.rows]
    transform = [[1 if i == j else 0 for j in range(m.nrows)] for i in range(m.nrows)]
    rank = _hnf_inplace(rows, transform)
    h = IntMatrix.from_rows(rows, m.ncols)
    u = IntMatrix.from_rows(transform, m.nrows)
    return h, u, rank


def integer_kernel_rows(m: IntMatrix) -> list[tuple[int, ...]]:
    """Basis rows of {u in Z^nrows : u @ m = 0}."""
    _, u, rank = hnf_with_transform(m)
    return [u.rows[i] for i in range(rank, m.nrows)]


# ---------------------------------------------------------------------------
# Lattices


@dataclass(frozen=True)
class IntLattice:
    """Sublattice of Z^ambient given by its canonical HNF basis rows."""

    ambient: int
    basis: IntMatrix

    def __post_init__(self):
        if self.basis.ncols != self.ambient:
            raise ValueError("basis width differs from ambient dimension")

    @property
    def rank(self) -> int:
        return self.basis.nrows

    def index(self) -> int | None:
        """Group index [Z^n : L]; None when the lattice has lower rank."""
        if self.rank != self.ambient:
            return None
        prod = 1
        for row in self.basis.rows:
            prod *= _pivot(row)
        return prod

    def pivots(self) -> list[tuple[int, int]]:
        """(column, value) of each pivot in basis order."""
        out = []
        for r in self.basis.rows:
            c = next(i for i, v in enumerate(r) if v != 0)
            out.append((c, r[c]))
        return out

    def coset_rep(self, x: tuple[int, ...]) -> tuple[int, ...]:
        """Canonical representative of x + L."""
        if len(x) != self.ambient:
            raise ValueError("point dimension mismatch")
        v = list(x)
        for row in self.basis.rows:
            c = next(i for i, val in enumerate(row) if val != 0)
            q = v[c] // row[c]
            if q:
                v = [a - q * b for a, b in zip(v, row)]
        return tuple(v)

    def contains(self, x: tuple[int, ...]) -> bool:
        return all(v == 0 for v in self.coset_rep(x))

    def contains_lattice(self, other: "IntLattice") -> bool:
        return all(self.contains(r) for r in other.basis.rows)


def _pivot(row: tuple[int, ...]) -> int:
    return next(v for v in row if v != 0)


def lattice_from_rows(ambient: int, rows) -> IntLattice:
    return IntLattice(ambient, hnf(IntMatrix.from_rows(rows, ambient)))


def zero_lattice(ambient: int) -> IntLattice:
    return IntLattice(ambient, IntMatrix((), ambient))


def full_lattice(ambient: int) -> IntLattice:
    return IntLattice(ambient, IntMatrix.identity(ambient))


def diagonal_lattice(moduli) -> IntLattice:
    """Lattice of points with coordinate i a multiple of moduli[i].

    A modulus of 0 pins that coordinate to zero: the basis row is absent.
    """
    n = len(moduli)
    rows = []
    for i, d in enumerate(moduli):
        if d < 0:
            raise ValueError("moduli must be nonnegative")
        if d > 0:
            rows.append(tuple(d if j == i else 0 for j in range(n)))
    return lattice_from_rows(n, rows) if rows else zero_lattice(n)


def meet(a: IntLattice, b: IntLattice) -> IntLattice:
    """Intersection, via the integer kernel of the stacked bases."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    ra, rb = a.rank, b.rank
    if ra == 0 or rb == 0:
        return zero_lattice(a.ambient)
    stacked = IntMatrix.from_rows(
        list(a.basis.rows) + [tuple(-v for v in r) for r in b.basis.rows], a.ambient
    )
    rows = []
    for u in integer_kernel_rows(stacked):
        coeffs = u[:ra]
        vec = [0] * a.ambient
        for c, brow in zip(coeffs, a.basis.rows):
            for j, v in enumerate(brow):
                vec[j] += c * v
        rows.append(tuple(vec))
    return lattice_from_rows(a.ambient, rows)


def join(a: IntLattice, b: IntLattice) -> IntLattice:
    """Smallest lattice containing both, via HNF of the concatenated bases."""
    if a.ambient != b.ambient:
        raise ValueError("ambient mismatch")
    return lattice_from_rows(a.ambient, list(a.basis.rows) + list(b.basis.rows))


def same_coset(lat: IntLattice, x: tuple[int, ...], y: tuple[int, ...]) -> bool:
    """True iff x - y lies in the lattice."""
    return lat.contains(tuple(a - b for a, b in zip(x, y)))


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass(frozen=True)
class SmithDecomposition:
    """S = U @ D @ V with U, V unimodular and D diagonal, d1 | d2 | ..."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        k = min(self.D.nrows, self.D.ncols)
        return tuple(self.D.rows[i][i] for i in range(k))


def smith(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transform witnesses.

    Args:
        m: any integer matrix, shape n x c.

    Returns:
        SmithDecomposition(U, D, V) with U (n x n) and V (c x c) unimodular,
        U @ D @ V == m, D diagonal with nonnegative entries forming a
        divisibility chain d1 | d2 | ...
    """
    n, c = m.nrows, m.ncols
    d = [list(r) for r in m.rows]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    # maintaining the invariant  U @ D @ V == m:
    #   a row operation E on D pairs with the inverse column operation on U,
    #   a column operation F on D pairs with the inverse row operation on V.
    def row_add(i, j, q):  # D.row[i] += q * D.row[j]
        d[i] = [a + q * b for a, b in zip(d[i], d[j])]
        for r in range(n):
            u[r][j] -= q * u[r][i]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        for r in range(n):
            u[r][i], u[r][j] = u[r][j], u[r][i]

    def row_neg(i):
        d[i] = [-a for a in d[i]]
        for r in range(n):
            u[r][i] = -u[r][i]

    def col_add(i, j, q):  # D.col[i] += q * D.col[j]
        for r in range(n):
            d[r][i] += q * d[r][j]
        v[j] = [a - q * b for a, b in zip(v[j], v[i])]

    def col_swap(i, j):
        for r in range(n):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        v[i], v[j] = v[j], v[i]

    t = 0
    while t < min(n, c):
        entries = [(abs(d[i][j]), i, j) for i in range(t, n) for j in range(t, c) if d[i][j] != 0]
        if not entries:
            break
        while True:
            _, pi, pj = min(entries)
            if pi != t:
                row_swap(t, pi)
            if pj != t:
                col_swap(t, pj)
            dirty = False
            for i in range(t + 1, n):
                if d[i][t] != 0:
                    row_add(i, t, -(d[i][t] // d[t][t]))
                    dirty = dirty or d[i][t] != 0
            for j in range(t + 1, c):
                if d[t][j] != 0:
                    col_add(j, t, -(d[t][j] // d[t][t]))
                    dirty = dirty or d[t][j] != 0
            if not dirty and all(d[i][t] == 0 for i in range(t + 1, n)) \
                    and all(d[t][j] == 0 for j in range(t + 1, c)):
                # pivot isolated; enforce divisibility of the residual block
                bad = None
                for i in range(t + 1, n):
                    for j in range(t + 1, c):
                        if d[i][j] % d[t][t] != 0:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_add(t, bad, 1)
            entries = [(abs(d[i][j]), i, j) for i in range(t, n) for j in range(t, c) if d[i][j] != 0]
        if d[t][t] < 0:
            row_neg(t)
        t += 1

    dm = IntMatrix.from_rows(d, c)
    um = IntMatrix.from_rows(u, n)
    vm = IntMatrix.from_rows(v, c)
    return SmithDecomposition(um, dm, vm)


# ---------------------------------------------------------------------------
# Subgroups of a product of cyclic groups vs. lattices between L_d and Z^n


@dataclass(frozen=True)
class GaloisSubgroup:
    """Subgroup of Z/d1 x ... x Z/dn given by generator tuples.

    Element (a1..an) stands for the diagonal character sending the i-th shift
    to a primitive di-th root raised to ai; no root-of-unity arithmetic is
    ever performed.
    """

    moduli: tuple[int, ...]
    generators: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if any(d < 1 for d in self.moduli):
            raise ValueError("moduli must be positive")
        for g in self.generators:
            if len(g) != len(self.moduli):
                raise ValueError("generator length mismatch")

    @staticmethod
    def make(moduli, generators) -> "GaloisSubgroup":
        moduli = tuple(int(d) for d in moduli)
        gens = []
        for g in generators:
            r = tuple(int(a) % d for a, d in zip(g, moduli))
            if any(r):
                gens.append(r)
        return GaloisSubgroup(moduli, tuple(sorted(set(gens))))

    def elements(self) -> frozenset[tuple[int, ...]]:
        """All elements, by closure; group orders here are tiny."""
        zero = tuple(0 for _ in self.moduli)
        seen = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for g in self.generators:
                y = tuple((a + b) % d for a, b, d in zip(x, g, self.moduli))
                if y not in seen:
                    seen.add(y)
                    frontier.append(y)
        return frozenset(seen)

    def order(self) -> int:
        return len(self.elements())

    def same_subgroup(self, other: "GaloisSubgroup") -> bool:
        return self.moduli == other.moduli and self.elements() == other.elements()


def _congruence_solution_lattice(constraint_rows: list[tuple[int, ...]], n: int, modulus: int) -> IntLattice:
    """Lattice {x in Z^n : R x = 0 (mod modulus)} for the given constraint rows."""
    g = len(constraint_rows)
    if g == 0:
        return full_lattice(n)
    # solve x . R^T + y . (modulus I) = 0 over Z and project to x
    stacked_rows = [tuple(constraint_rows[j][i] for j in range(g)) for i in range(n)]
    stacked_rows += [tuple(modulus if j == i else 0 for j in range(g)) for i in range(g)]
    stacked = IntMatrix.from_rows(stacked_rows, g)
    rows = [u[:n] for u in integer_kernel_rows(stacked)]
    return lattice_from_rows(n, rows)


def subgroup_to_lattice(h: GaloisSubgroup) -> IntLattice:
    """Lattice of exponents fixed by every character in the subgroup.

    A generator a fixes the monomial with exponent x iff
    sum_i a_i x_i / d_i is an integer.
    """
    d = h.moduli
    n = len(d)
    big = lcm(*d) if d else 1
    rows = [tuple(a * (big // di) for a, di in zip(g, d)) for g in h.generators]
    lat = _congruence_solution_lattice(rows, n, big)
    return lat


def lattice_to_subgroup(lat: IntLattice, moduli) -> GaloisSubgroup:
    """Stabilizer subgroup of all characters fixing every lattice monomial.

    Requires the lattice to contain the diagonal lattice of the moduli, so the
    quotient group is defined.
    """
    d = tuple(int(x) for x in moduli)
    n = lat.ambient
    if len(d) != n:
        raise ValueError("moduli length mismatch")
    if not lat.contains_lattice(diagonal_lattice(d)):
        raise ValueError("lattice does not contain the diagonal lattice of the moduli")
    big = lcm(*d) if d else 1
    rows = [tuple(x * (big // di) for x, di in zip(brow, d)) for brow in lat.basis.rows]
    sol = _congruence_solution_lattice(rows, n, big)
    gens = [tuple(a % di for a, di in zip(brow, d)) for brow in sol.basis.rows]
    return GaloisSubgroup.make(d, [g for g in gens if any(g)])
