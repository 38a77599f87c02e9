"""Positive roots of affine type A and stability chambers.

Stability parameters take values in Q(eps), ordered lexicographically on
(rational part, eps part), so genericity questions have exact answers.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import BadZeta

# The PT/DT chambers sit on either side of the wall zeta.delta = 0.  The
# rational part of the wall point is multiplied by this constant; with -1 the
# chamber {zeta.alpha < 0} of the PT parameter is exactly the family
# alpha_[a,b] + n delta.
ORIENT = -1


@total_ordering
class EpsRational:
    """``q + e*eps`` with eps a positive infinitesimal."""

    __slots__ = ("q", "e")

    def __init__(self, q=0, e=0):
        self.q = Fraction(q)
        self.e = Fraction(e)

    def __add__(self, other):
        other = _eps(other)
        return EpsRational(self.q + other.q, self.e + other.e)

    __radd__ = __add__

    def __neg__(self):
        return EpsRational(-self.q, -self.e)

    def __sub__(self, other):
        return self + (-_eps(other))

    def __mul__(self, k):
        if isinstance(k, EpsRational):
            if k.e and self.e:
                raise ValueError("eps^2 is not represented")
            return EpsRational(self.q * k.q, self.q * k.e + self.e * k.q)
        k = Fraction(k)
        return EpsRational(self.q * k, self.e * k)

    __rmul__ = __mul__

    def __truediv__(self, k):
        k = Fraction(k)
        return EpsRational(self.q / k, self.e / k)

    def sign(self) -> int:
        if self.q:
            return 1 if self.q > 0 else -1
        if self.e:
            return 1 if self.e > 0 else -1
        return 0

    def __eq__(self, other):
        other = _eps(other)
        return self.q == other.q and self.e == other.e

    def __lt__(self, other):
        return (self - _eps(other)).sign() < 0

    def __hash__(self):
        return hash((self.q, self.e))

    def __str__(self):
        if not self.e:
            return str(self.q)
        if not self.q:
            return f"{self.e}*eps"
        op = "+" if self.e > 0 else "-"
        return f"{self.q}{op}{abs(self.e)}*eps"

    def __repr__(self):
        return f"EpsRational({self})"

    def to_json(self):
        return {"q": str(self.q), "eps": str(self.e), "sign": self.sign()}


def _eps(x):
    return x if isinstance(x, EpsRational) else EpsRational(x)


_TERM = re.compile(r"\s*([+-]?)\s*([0-9]+(?:/[0-9]+)?)?\s*(\*?\s*eps)?\s*")


def parse_eps(text: str) -> EpsRational:
    """Parse ``"q"``, ``"q+e*eps"``, ``"-eps"``, ``"1/2-3*eps"`` and similar."""
    s = text.strip()
    if not s:
        raise BadZeta("empty stability entry")
    q, e = Fraction(0), Fraction(0)
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise BadZeta(f"cannot parse stability entry {text!r}")
        if pos > 0 and not m.group(1):
            raise BadZeta(f"cannot parse stability entry {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        if m.group(3):
            e += sign * coeff
        else:
            q += sign * coeff
        pos = m.end()
    return EpsRational(q, e)


@dataclass(frozen=True)
class StabilityParam:
    entries: tuple

    @property
    def n(self):
        return len(self.entries)

    def dot(self, dims) -> EpsRational:
        if len(dims) != self.n:
            raise BadZeta(f"stability has {self.n} entries, dimension vector has {len(dims)}")
        out = EpsRational()
        for z, d in zip(self.entries, dims):
            if d:
                out = out + z * d
        return out

    def __str__(self):
        return "(" + ", ".join(str(z) for z in self.entries) + ")"

    def to_json(self):
        return [str(z) for z in self.entries]


def parse_zeta(text: str, n: int | None = None) -> StabilityParam:
    entries = tuple(parse_eps(x) for x in text.split(","))
    if n is not None and len(entries) != n:
        raise BadZeta(f"expected {n} entries, got {len(entries)}", zeta=text)
    return StabilityParam(entries)


@dataclass(frozen=True)
class Root:
    """``realPlus``: alpha_[a,b] + n delta; ``realMinus``: n delta - alpha_[a,b]; ``imaginary``: n delta."""

    kind: str
    a: int
    b: int
    n: int
    dims: tuple

    @property
    def level(self) -> int:
        """The coefficient of vertex 0, which is the s-degree."""
        return self.dims[0]

    @property
    def is_real(self) -> bool:
        return self.kind != "imaginary"

    def key(self, framing=0):
        return self.dims + (framing,)

    def label(self) -> str:
        if self.kind == "imaginary":
            return f"{self.n}d"
        if self.kind == "realPlus":
            return f"a[{self.a},{self.b}]+{self.n}d"
        return f"{self.n}d-a[{self.a},{self.b}]"

    def to_json(self):
        out = {"kind": self.kind, "n": self.n, "dims": list(self.dims)}
        if self.is_real:
            out["a"], out["b"] = self.a, self.b
        return out


def real_plus(N, a, b, n) -> Root:
    dims = tuple(n + (a <= i <= b) for i in range(N))
    return Root("realPlus", a, b, n, dims)


def real_minus(N, a, b, n) -> Root:
    dims = tuple(n - (a <= i <= b) for i in range(N))
    return Root("realMinus", a, b, n, dims)


def imaginary(N, n) -> Root:
    return Root("imaginary", 0, 0, n, (n,) * N)


def enumerate_roots(N: int, n_max: int) -> list[Root]:
    """Positive roots with delta-multiplicity at most ``n_max``.

    Sorted by level (the vertex-0 coefficient), then total size, then dims,
    so the list for ``n_max`` is a prefix of the list for ``n_max + 1``.
    """
    if N < 1 or n_max < 0:
        raise ValueError("need N >= 1 and n_max >= 0")
    out = []
    for n in range(n_max + 1):
        for a in range(1, N):
            for b in range(a, N):
                out.append(real_plus(N, a, b, n))
                if n >= 1:
                    out.append(real_minus(N, a, b, n))
        if n >= 1:
            out.append(imaginary(N, n))
    out.sort(key=lambda r: (r.level, sum(r.dims), r.dims))
    return out


def roots_up_to_degree(N: int, d: int) -> list[Root]:
    """Roots with total size at most d."""
    return [r for r in enumerate_roots(N, d // N + 1) if sum(r.dims) <= d]


@dataclass
class ChamberSplit:
    negative: list
    positive: list
    zeros: list
    pairings: dict
    slopes: dict

    @property
    def generic(self) -> bool:
        return not self.zeros

    def to_json(self):
        return {
            "generic": self.generic,
            "roots": [{"root": r.to_json(), "pairing": self.pairings[r].to_json(),
                       "slope": str(self.slopes[r])} for r in self.pairings],
        }


def chamber_split(roots, zeta: StabilityParam) -> ChamberSplit:
    neg, pos, zeros, pairings, slopes = [], [], [], {}, {}
    for r in roots:
        v = zeta.dot(r.dims)
        pairings[r] = v
        slopes[r] = v / sum(r.dims)
        sgn = v.sign()
        (neg if sgn < 0 else pos if sgn > 0 else zeros).append(r)
    return ChamberSplit(neg, pos, zeros, pairings, slopes)


def standard_zetas(N: int):
    """``(zeta_PT, zeta_DT)`` on either side of the wall near the wall point."""
    if N < 1:
        raise ValueError("N must be positive")
    head = Fraction(ORIENT * (1 - N))
    tail = (EpsRational(ORIENT),) * (N - 1)
    pt = StabilityParam((EpsRational(head, 1),) + tail)
    dt = StabilityParam((EpsRational(head, -1),) + tail)
    return pt, dt


def phase_less(zeta: StabilityParam, a: Root, b: Root) -> bool:
    """Whether the central charge of ``a`` has smaller argument than that of ``b``.

    Uses ``Z(x) = -zeta.x + i|x|`` in the upper half plane: arg Z(a) < arg Z(b)
    iff the cross product of (Re, Im) vectors is positive.
    """
    xa, ya = -zeta.dot(a.dims), sum(a.dims)
    xb, yb = -zeta.dot(b.dims), sum(b.dims)
    return (xa * yb - xb * ya).sign() > 0


def random_generic_zeta(N: int, n_max: int, rng: random.Random | None = None,
                        size: int = 5) -> StabilityParam:
    """Random parameter with small rational entries, generic for roots up to ``n_max``."""
    rng = rng or random.Random()
    roots = enumerate_roots(N, n_max)
    while True:
        entries = tuple(EpsRational(Fraction(rng.randint(-size, size), rng.randint(1, 3)),
                                    rng.randint(-2, 2)) for _ in range(N))
        zeta = StabilityParam(entries)
        if chamber_split(roots, zeta).generic:
            return zeta
