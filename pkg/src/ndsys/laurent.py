"""Exact Laurent polynomials and vectors over Q.

Terms are stored sparsely as {exponent tuple: Fraction}; exponents may be
negative.  The text syntax uses variables s1..sn, '^' with possibly negative
integer exponents, '*', '+', '-' and rational coefficients like 3/2.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

Exp = tuple[int, ...]


def exp_add(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def exp_sub(a: Exp, b: Exp) -> Exp:
    return tuple(x - y for x, y in zip(a, b))


class LaurentPoly:
    """Sparse Laurent polynomial in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[Exp, Fraction] | None = None):
        self.nvars = nvars
        self.terms: dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent length mismatch")
                c = Fraction(c)
                if c:
                    self.terms[tuple(e)] = c

    @staticmethod
    def constant(nvars: int, c) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple(0 for _ in range(nvars)): Fraction(c)})

    @staticmethod
    def monomial(nvars: int, exp: Exp, c=1) -> "LaurentPoly":
        return LaurentPoly(nvars, {tuple(exp): Fraction(c)})

    @staticmethod
    def variable(nvars: int, i: int, power: int = 1) -> "LaurentPoly":
        e = [0] * nvars
        e[i] = power
        return LaurentPoly(nvars, {tuple(e): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.nvars == other.nvars \
            and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out = dict(self.terms)
        for e, c in other.terms.items():
            nc = out.get(e, Fraction(0)) + c
            if nc:
                out[e] = nc
            else:
                out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if self.nvars != other.nvars:
            raise ValueError("variable count mismatch")
        out: dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = exp_add(e1, e2)
                nc = out.get(e, Fraction(0)) + c1 * c2
                if nc:
                    out[e] = nc
                else:
                    out.pop(e, None)
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly(self.nvars)
        return LaurentPoly(self.nvars, {e: c * v for e, v in self.terms.items()})

    def shift(self, exp: Exp) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent."""
        return LaurentPoly(self.nvars, {exp_add(e, exp): c for e, c in self.terms.items()})

    def support(self) -> set[Exp]:
        return set(self.terms)

    def substitute_exponents(self, mapper, nvars_out: int | None = None) -> "LaurentPoly":
        """Apply an injective map on exponent vectors (used by monomial maps)."""
        out: dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            ne = tuple(mapper(e))
            if ne in out:
                raise ValueError("exponent map is not injective on the support")
            out[ne] = c
        if nvars_out is None:
            first = next(iter(out), None)
            nvars_out = len(first) if first is not None else self.nvars
        return LaurentPoly(nvars_out, out)

    def __str__(self) -> str:
        return poly_to_str(self)

    __repr__ = __str__


class LaurentVec:
    """Element of the free module A^k over the Laurent ring."""

    __slots__ = ("nvars", "entries")

    def __init__(self, entries):
        entries = tuple(entries)
        if not entries:
            raise ValueError("vector needs at least one entry")
        nv = entries[0].nvars
        for p in entries:
            if p.nvars != nv:
                raise ValueError("mixed variable counts")
        self.nvars = nv
        self.entries = entries

    @property
    def k(self) -> int:
        return len(self.entries)

    @staticmethod
    def unit(nvars: int, k: int, j: int) -> "LaurentVec":
        return LaurentVec([LaurentPoly.constant(nvars, 1) if i == j else LaurentPoly(nvars)
                           for i in range(k)])

    @staticmethod
    def wrap(p: LaurentPoly) -> "LaurentVec":
        return LaurentVec([p])

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentVec) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other: "LaurentVec") -> "LaurentVec":
        return LaurentVec([a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "LaurentVec") -> "LaurentVec":
        return LaurentVec([a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "LaurentVec":
        return LaurentVec([-a for a in self.entries])

    def scale_poly(self, p: LaurentPoly) -> "LaurentVec":
        return LaurentVec([p * a for a in self.entries])

    def scale(self, c) -> "LaurentVec":
        return LaurentVec([a.scale(c) for a in self.entries])

    def shift(self, exp: Exp) -> "LaurentVec":
        return LaurentVec([a.shift(exp) for a in self.entries])

    def support(self) -> set[Exp]:
        """Union of the entry supports, as plain lattice points."""
        pts: set[Exp] = set()
        for p in self.entries:
            pts |= p.support()
        return pts

    def dot(self, other: "LaurentVec") -> LaurentPoly:
        out = LaurentPoly(self.nvars)
        for a, b in zip(self.entries, other.entries):
            out = out + a * b
        return out

    def __str__(self) -> str:
        return vector_to_str(self)

    __repr__ = __str__


def normalize_to_poly(v: LaurentVec) -> tuple[LaurentVec, Exp]:
    """Shift a nonzero vector so every exponent is >= 0 and each variable
    touches 0; returns (shifted vector, the subtracted exponent m)."""
    pts = v.support()
    if not pts:
        raise ValueError("zero vector has no normal form")
    m = tuple(min(p[i] for p in pts) for i in range(v.nvars))
    if all(x == 0 for x in m):
        return v, m
    neg = tuple(-x for x in m)
    return v.shift(neg), m


@dataclass(frozen=True)
class MonomialMap:
    """Ring map determined by a unimodular exponent action x -> W x.

    The scalars record a per-variable homothety over Q* for composing maps in
    the semidirect group of monomial automorphisms; they are bookkeeping only
    and are not applied to coefficients.
    """

    W: "IntMatrix"
    scalars: tuple[Fraction, ...]

    def __post_init__(self):
        from .intlat import IntMatrix  # local to avoid cycle at import time
        if not isinstance(self.W, IntMatrix) or not self.W.is_unimodular():
            raise ValueError("exponent matrix must be unimodular")
        if len(self.scalars) != self.W.nrows:
            raise ValueError("scalar count mismatch")
        if any(s == 0 for s in self.scalars):
            raise ValueError("scalars must be nonzero")

    @staticmethod
    def from_matrix(w) -> "MonomialMap":
        from .intlat import IntMatrix
        if not isinstance(w, IntMatrix):
            w = IntMatrix.from_rows(w)
        return MonomialMap(w, tuple(Fraction(1) for _ in range(w.nrows)))

    @staticmethod
    def identity(n: int) -> "MonomialMap":
        from .intlat import IntMatrix
        return MonomialMap.from_matrix(IntMatrix.identity(n))

    def compose(self, other: "MonomialMap") -> "MonomialMap":
        """self after other, under the semidirect-product law.

        The pair (R, W) stands for the automorphism sending the monomial with
        exponent x to (prod_i R_i^{x_i}) times the monomial with exponent Wx,
        so composing reads self's scalars through other's exponent matrix.
        """
        w = self.W @ other.W
        scalars = []
        for i in range(w.nrows):
            s = other.scalars[i]
            for j in range(w.nrows):
                e = other.W.rows[j][i]
                if e:
                    s *= self.scalars[j] ** e
            scalars.append(s)
        return MonomialMap(w, tuple(scalars))

    def inverse(self) -> "MonomialMap":
        from .intlat import unimodular_inverse
        winv = unimodular_inverse(self.W)
        inv_scalars = []
        for i in range(winv.nrows):
            s = Fraction(1)
            for j in range(winv.nrows):
                e = winv.rows[j][i]
                if e:
                    s *= self.scalars[j] ** (-e)
            inv_scalars.append(s)
        return MonomialMap(winv, tuple(inv_scalars))


def apply_monomial_map(mm: MonomialMap, obj):
    """Relabel exponents by x -> W x on a poly or vector (entrywise)."""
    mapper = mm.W.apply
    if isinstance(obj, LaurentVec):
        return LaurentVec([p.substitute_exponents(mapper) for p in obj.entries])
    return obj.substitute_exponents(mapper)


def coset_split(v: LaurentVec, lat) -> dict[Exp, LaurentVec]:
    """Split a vector's terms by the coset of the lattice their exponent lies in.

    Keys are canonical coset representatives; the values sum back to v.
    """
    if lat.ambient != v.nvars:
        raise ValueError("lattice ambient dimension mismatch")
    parts: dict[Exp, list[dict[Exp, Fraction]]] = {}
    for j, p in enumerate(v.entries):
        for e, c in p.terms.items():
            rep = lat.coset_rep(e)
            slot = parts.setdefault(rep, [dict() for _ in range(v.k)])
            slot[j][e] = c
    return {
        rep: LaurentVec([LaurentPoly(v.nvars, t) for t in slot])
        for rep, slot in sorted(parts.items())
    }


# ---------------------------------------------------------------------------
# Text syntax


_TOKEN = re.compile(r"\s*(\d+/\d+|\d+|[a-zA-Z]\w*|\^|\*|\+|-|\(|\))")


class PolyParseError(ValueError):
    pass


def parse_poly(text: str, nvars: int, prefix: str = "s") -> LaurentPoly:
    """Parse the s1..sn syntax into an exact Laurent polynomial."""
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise PolyParseError(f"bad character at {text[pos:]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    if not tokens:
        raise PolyParseError("empty polynomial")

    idx = 0

    def peek():
        return tokens[idx] if idx < len(tokens) else None

    def take():
        nonlocal idx
        if idx >= len(tokens):
            raise PolyParseError("unexpected end of polynomial")
        t = tokens[idx]
        idx += 1
        return t

    var_re = re.compile(rf"^{re.escape(prefix)}(\d+)$")

    def parse_factor(sign: int) -> LaurentPoly:
        t = take()
        if t == "-":
            return parse_factor(-sign)
        if t == "+":
            return parse_factor(sign)
        m = var_re.match(t)
        if m:
            i = int(m.group(1))
            if not (1 <= i <= nvars):
                raise PolyParseError(f"variable {t} out of range for {nvars} variable(s)")
            power = 1
            if peek() == "^":
                take()
                e = take()
                neg = 1
                if e == "-":
                    neg = -1
                    e = take()
                if e is None or not e.isdigit():
                    raise PolyParseError("expected integer exponent after ^")
                power = neg * int(e)
            return LaurentPoly.variable(nvars, i - 1, power).scale(sign)
        if re.fullmatch(r"\d+(/\d+)?", t):
            return LaurentPoly.constant(nvars, Fraction(t) * sign)
        raise PolyParseError(f"unexpected token {t!r}")

    def parse_term(sign: int) -> LaurentPoly:
        p = parse_factor(sign)
        while peek() == "*":
            take()
            p = p * parse_factor(1)
        return p

    result = LaurentPoly(nvars)
    sign = 1
    if peek() in ("+", "-"):
        sign = -1 if take() == "-" else 1
    result = result + parse_term(sign)
    while peek() is not None:
        op = take()
        if op == "+":
            result = result + parse_term(1)
        elif op == "-":
            result = result + parse_term(-1)
        else:
            raise PolyParseError(f"unexpected token {op!r}")
    return result


def parse_vector(text: str, nvars: int, k: int, prefix: str = "s") -> LaurentVec:
    """Parse '[p1, p2, ...]' (or a bare polynomial when k == 1)."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise PolyParseError("unterminated vector")
        inner = text[1:-1]
        parts = _split_top_level(inner)
    else:
        parts = [text]
    if len(parts) != k:
        raise PolyParseError(f"expected {k} entries, got {len(parts)}")
    return LaurentVec([parse_poly(p, nvars, prefix) for p in parts])


def _split_top_level(text: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p for p in (s.strip() for s in parts) if p != ""]


def _term_sort_key(poly: LaurentPoly):
    """Graded-lex on exponents shifted to be nonnegative, descending."""
    pts = poly.support()
    mins = tuple(min(p[i] for p in pts) for i in range(poly.nvars)) if pts else ()

    def key(e: Exp):
        shifted = exp_sub(e, mins)
        return (sum(shifted), shifted)

    return key


def poly_to_str(poly: LaurentPoly, prefix: str = "s") -> str:
    """Canonical rendering; parse_poly round-trips it bit exactly."""
    if poly.is_zero():
        return "0"
    key = _term_sort_key(poly)
    pieces = []
    for e in sorted(poly.terms, key=key, reverse=True):
        c = poly.terms[e]
        mono = []
        for i, p in enumerate(e):
            if p == 1:
                mono.append(f"{prefix}{i + 1}")
            elif p != 0:
                mono.append(f"{prefix}{i + 1}^{p}")
        coeff = abs(c)
        if not mono:
            body = str(coeff)
        elif coeff == 1:
            body = "*".join(mono)
        else:
            body = str(coeff) + "*" + "*".join(mono)
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def vector_to_str(v: LaurentVec, prefix: str = "s") -> str:
    return "[" + ", ".join(poly_to_str(p, prefix) for p in v.entries) + "]"
