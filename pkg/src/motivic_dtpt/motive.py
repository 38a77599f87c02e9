"""Laurent polynomials in L^(1/2) with big-integer coefficients.

A value is stored densely: the lowest half-exponent ``lo`` and a numpy
array of coefficients for ``L^(lo/2), L^((lo+1)/2), ...``.  Arrays are
``int64`` while magnitudes allow it and fall back to Python ints
(``dtype=object``) otherwise, so arithmetic is always exact.

A value may carry a ``floor``: every term with half-exponent below it has
been discarded and is unknown.  This models the coefficients of series that
are infinite in descending powers of L.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .errors import FlooredValue

_SAFE = 1 << 62
_EMPTY = np.zeros(0, dtype=np.int64)
_EMPTY.flags.writeable = False


def _bound(arr) -> int:
    if len(arr) == 0:
        return 0
    if arr.dtype == object:
        return max(abs(int(x)) for x in arr)
    return int(np.abs(arr).max())


def _fit(arr):
    """Downcast an object array to int64 when every entry fits."""
    if arr.dtype == object and _bound(arr) < _SAFE:
        arr = arr.astype(np.int64)
    arr.flags.writeable = False
    return arr


def _max_floor(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


class MotiveLaurent:
    """Exact element of Z[L^(1/2), L^(-1/2)], optionally floored."""

    __slots__ = ("_lo", "_c", "floor", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] | None = None,
                 floor: int | None = None):
        items = dict(terms.items() if isinstance(terms, Mapping) else (terms or ()))
        items = {int(t): int(c) for t, c in items.items() if c}
        if floor is not None:
            items = {t: c for t, c in items.items() if t >= floor}
        if items:
            lo, hi = min(items), max(items)
            big = max(abs(c) for c in items.values()) >= _SAFE
            arr = np.zeros(hi - lo + 1, dtype=object if big else np.int64)
            for t, c in items.items():
                arr[t - lo] = c
            arr.flags.writeable = False
        else:
            lo, arr = 0, _EMPTY
        self._lo = lo
        self._c = arr
        self.floor = None if floor is None else int(floor)
        self._hash = None

    @classmethod
    def _from_dense(cls, lo, arr, floor):
        if floor is not None and len(arr) and lo < floor:
            arr = arr[floor - lo:]
            lo = floor
        nz = np.flatnonzero(arr)
        obj = cls.__new__(cls)
        if len(nz) == 0:
            obj._lo, obj._c = 0, _EMPTY
        else:
            first, last = int(nz[0]), int(nz[-1])
            sub = arr[first:last + 1]
            if sub.base is not None or sub.flags.writeable:
                sub = sub.copy()
            obj._lo, obj._c = lo + first, _fit(sub)
        obj.floor = floor
        obj._hash = None
        return obj

    # constructors

    @classmethod
    def monomial(cls, t: int, c: int = 1) -> "MotiveLaurent":
        """``c * L^(t/2)``."""
        return cls({t: c})

    @classmethod
    def from_int(cls, c: int) -> "MotiveLaurent":
        return cls({0: c})

    @classmethod
    def unknown(cls, floor: int) -> "MotiveLaurent":
        """Zero above ``floor``, unknown below it."""
        return cls({}, floor=floor)

    @classmethod
    def minus_sqrt_l_power(cls, e: int) -> "MotiveLaurent":
        """``(-L^(1/2))^e`` for any integer e."""
        return cls({e: -1 if e % 2 else 1})

    # inspection

    @property
    def terms(self) -> dict[int, int]:
        lo = self._lo
        return {lo + i: int(c) for i, c in enumerate(self._c) if c}

    def items(self):
        return sorted(self.terms.items())

    @property
    def min_exp(self):
        return self._lo if len(self._c) else None

    @property
    def max_exp(self):
        return self._lo + len(self._c) - 1 if len(self._c) else None

    @property
    def is_floored(self) -> bool:
        return self.floor is not None

    def is_zero(self) -> bool:
        """True only for an exact (unfloored) zero."""
        return len(self._c) == 0 and self.floor is None

    def is_one(self) -> bool:
        return self.floor is None and self._lo == 0 and len(self._c) == 1 and self._c[0] == 1

    def unit_sign_exp(self):
        """Return ``(sign, t)`` if this is exactly ``±L^(t/2)``, else None."""
        if self.floor is None and len(self._c) == 1 and abs(int(self._c[0])) == 1:
            return int(self._c[0]), self._lo
        return None

    def _top(self):
        """Largest exponent that may carry a nonzero (known or unknown) term."""
        top = self.max_exp
        if self.floor is not None:
            top = self.floor - 1 if top is None else max(top, self.floor - 1)
        return top

    # arithmetic

    @staticmethod
    def _coerce(other):
        if isinstance(other, MotiveLaurent):
            return other
        if isinstance(other, int):
            return MotiveLaurent.from_int(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        floor = _max_floor(self.floor, other.floor)
        a, b = self._c, other._c
        if not len(a) or not len(b):
            src = other if not len(a) else self
            return MotiveLaurent._from_dense(src._lo, src._c, floor)
        lo = min(self._lo, other._lo)
        hi = max(self.max_exp, other.max_exp)
        big = _bound(a) + _bound(b) >= _SAFE
        out = np.zeros(hi - lo + 1, dtype=object if big else np.int64)
        if big:
            a, b = a.astype(object), b.astype(object)
        out[self._lo - lo:self._lo - lo + len(a)] += a
        out[other._lo - lo:other._lo - lo + len(b)] += b
        return MotiveLaurent._from_dense(lo, out, floor)

    __radd__ = __add__

    def __neg__(self):
        return MotiveLaurent._from_dense(self._lo, -self._c, self.floor)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return MotiveLaurent()
        cands = []
        if self.floor is not None:
            cands.append(self.floor + other._top())
        if other.floor is not None:
            cands.append(other.floor + self._top())
        floor = max(cands) if cands else None
        a, b = self._c, other._c
        if not len(a) or not len(b):
            return MotiveLaurent.unknown(floor)
        if _bound(a) * _bound(b) * min(len(a), len(b)) >= _SAFE:
            a, b = a.astype(object), b.astype(object)
        return MotiveLaurent._from_dense(self._lo + other._lo, np.convolve(a, b), floor)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = MotiveLaurent.from_int(1), self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def shift(self, t: int, sign: int = 1) -> "MotiveLaurent":
        """Multiply by ``sign * L^(t/2)``."""
        c = self._c if sign == 1 else -self._c
        floor = None if self.floor is None else self.floor + t
        return MotiveLaurent._from_dense(self._lo + t, c, floor)

    def times_unit(self, e: int) -> "MotiveLaurent":
        """Multiply by ``(-L^(1/2))^e``."""
        if e == 0:
            return self
        return self.shift(e, -1 if e % 2 else 1)

    def unit_inverse(self) -> "MotiveLaurent":
        se = self.unit_sign_exp()
        if se is None:
            raise ValueError(f"{self} is not a monomial unit")
        return MotiveLaurent.monomial(-se[1], se[0])

    def clip(self, t: int | None) -> "MotiveLaurent":
        """Discard terms below half-exponent ``t``; mark the value floored if anything could be lost."""
        if t is None:
            return self
        if self.floor is not None and self.floor >= t:
            return self
        if self.floor is None and (not len(self._c) or self._lo >= t):
            return self
        return MotiveLaurent._from_dense(self._lo, self._c, t)

    def truncated_terms(self, t: int) -> dict[int, int]:
        return {k: v for k, v in self.terms.items() if k >= t}

    # comparisons

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return (self.floor == other.floor and self._lo == other._lo
                and len(self._c) == len(other._c) and bool(np.all(self._c == other._c)))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._lo, tuple(int(x) for x in self._c), self.floor))
        return self._hash

    # ring maps

    def euler_specialize(self) -> int:
        """Image under ``L^(1/2) -> 1``."""
        if self.floor is not None:
            raise FlooredValue("cannot specialize a floored value", floor=self.floor)
        return sum(int(x) for x in self._c)

    def convention_flip(self) -> "MotiveLaurent":
        """Substitute ``L^(1/2) -> -L^(1/2)``."""
        if not len(self._c):
            return self
        signs = np.where((np.arange(len(self._c)) + self._lo) % 2 == 0, 1, -1)
        c = self._c * signs if self._c.dtype != object else self._c * signs.astype(object)
        return MotiveLaurent._from_dense(self._lo, c, self.floor)

    def adams_twist(self, n: int) -> "MotiveLaurent":
        """Substitute ``L^(t/2) -> L^(n t/2)``."""
        if n < 1:
            raise ValueError("adams_twist needs a positive degree")
        if self.floor is not None:
            raise FlooredValue("cannot twist a floored value", floor=self.floor)
        return MotiveLaurent({n * t: c for t, c in self.terms.items()})

    # rendering

    def __str__(self):
        parts = [f"{c}*L^({_half(t)})" for t, c in self.items()]
        if self.floor is not None:
            parts.append(f"O(L^({_half(self.floor)}))")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"MotiveLaurent({self})"

    def to_json(self):
        out = {"terms": [[t, str(c)] for t, c in self.items()]}
        if self.floor is not None:
            out["floor"] = self.floor
        return out

    @classmethod
    def from_json(cls, obj):
        if isinstance(obj, list):
            return cls({int(t): int(c) for t, c in obj})
        return cls({int(t): int(c) for t, c in obj["terms"]}, floor=obj.get("floor"))


def _half(t: int) -> str:
    f = Fraction(t, 2)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


ZERO = MotiveLaurent()
ONE = MotiveLaurent.from_int(1)
L_HALF = MotiveLaurent.monomial(1)
L = MotiveLaurent.monomial(2)


def laurent_arith(a: MotiveLaurent, b: MotiveLaurent | int | None, op: str) -> MotiveLaurent:
    """Functional form of the ring operations: ``add``, ``mul``, ``neg``, ``int_pow``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "int_pow":
        return a ** b
    raise ValueError(f"unknown op {op!r}")


def euler_specialize(a: MotiveLaurent) -> int:
    return a.euler_specialize()


def convention_flip(a: MotiveLaurent) -> MotiveLaurent:
    return a.convention_flip()


def adams_twist(a: MotiveLaurent, n: int) -> MotiveLaurent:
    return a.adams_twist(n)


def gl_motive(k: int) -> MotiveLaurent:
    """Class of GL_k: prod_{i<k} (L^k - L^i)."""
    if k < 1:
        raise ValueError("k must be positive")
    out = ONE
    for i in range(k):
        out = out * MotiveLaurent({2 * k: 1, 2 * i: -1})
    return out


def gl_motive_vir(k: int) -> MotiveLaurent:
    """Virtual class (-L^(1/2))^(-k^2) [GL_k]."""
    return gl_motive(k).times_unit(-k * k)
