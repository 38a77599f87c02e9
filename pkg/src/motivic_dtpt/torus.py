"""Truncated series in the motivic quantum torus.

Monomials are tuples ``(a_0, ..., a_{N-1}, d)``: a dimension vector on the
vertices followed by the framing component ``d`` in {0, 1}.  Products obey
``y^a * y^b = (-L^(1/2))^<a,b> y^(a+b)`` and drop everything of total
y-degree above the policy bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Mapping

from .errors import (EmptyMonomial, FramedDivision, FramingOverflow,
                     NonUnitConstantTerm, NonUnitScalar, PolicyMismatch)
from .motive import ONE, MotiveLaurent

Monomial = tuple


def monomial(dims: Iterable[int], framing: int = 0) -> Monomial:
    return tuple(dims) + (framing,)


def degree(m: Monomial) -> int:
    """Total y-degree |a| (the framing component does not count)."""
    return sum(m[:-1])


@dataclass(frozen=True)
class TruncationPolicy:
    """Keep monomials with |a| <= ``max_total_degree``.

    ``l_floor`` is an exponent of L: coefficients are clipped below
    ``L^l_floor``, i.e. below half-exponent ``2 * l_floor``.
    """

    max_total_degree: int
    l_floor: int | None = None

    def __post_init__(self):
        if self.max_total_degree < 0:
            raise ValueError("max_total_degree must be non-negative")

    @property
    def t_floor(self):
        return None if self.l_floor is None else 2 * self.l_floor

    def with_floor(self, l_floor):
        return TruncationPolicy(self.max_total_degree, l_floor)

    def with_degree(self, d):
        return TruncationPolicy(d, self.l_floor)


class PairingMatrix:
    """Skew form <a, b> on framed dimension vectors (size (N+1) x (N+1))."""

    __slots__ = ("matrix", "is_zero", "_rows")

    def __init__(self, matrix):
        self.matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        size = len(self.matrix)
        for i in range(size):
            for j in range(size):
                if self.matrix[i][j] != -self.matrix[j][i]:
                    raise ValueError("pairing matrix must be skew-symmetric")
        self.is_zero = not any(any(row) for row in self.matrix)
        self._rows = [(i, j, v) for i, row in enumerate(self.matrix) for j, v in enumerate(row) if v]

    @classmethod
    def zero(cls, n: int) -> "PairingMatrix":
        return cls([[0] * (n + 1) for _ in range(n + 1)])

    @property
    def size(self):
        return len(self.matrix)

    def pair(self, a: Monomial, b: Monomial) -> int:
        return sum(v * a[i] * b[j] for i, j, v in self._rows)

    def __eq__(self, other):
        return isinstance(other, PairingMatrix) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"PairingMatrix({self.matrix})"


class TwistedSeries:
    """Finite truncation of an element of the (framed) motivic quantum torus."""

    __slots__ = ("n", "policy", "pairing", "terms")

    def __init__(self, n: int, policy: TruncationPolicy,
                 terms: Mapping[Monomial, MotiveLaurent] | None = None,
                 pairing: PairingMatrix | None = None):
        self.n = n
        self.policy = policy
        self.pairing = pairing if pairing is not None else PairingMatrix.zero(n)
        if self.pairing.size != n + 1:
            raise ValueError("pairing size does not match the number of vertices")
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(int(x) for x in key)
            if len(key) != n + 1 or min(key) < 0 or key[-1] > 1:
                raise ValueError(f"bad monomial {key}")
            if degree(key) > policy.max_total_degree:
                continue
            if not isinstance(c, MotiveLaurent):
                c = MotiveLaurent.from_int(c)
            c = c.clip(policy.t_floor)
            if not c.is_zero():
                clean[key] = clean[key] + c if key in clean else c
        self.terms = clean

    @classmethod
    def _raw(cls, n, policy, pairing, terms):
        obj = cls.__new__(cls)
        obj.n, obj.policy, obj.pairing, obj.terms = n, policy, pairing, terms
        return obj

    @classmethod
    def one(cls, n, policy, pairing=None):
        return cls(n, policy, {(0,) * (n + 1): ONE}, pairing)

    @classmethod
    def from_monomial(cls, n, policy, key, coeff=ONE, pairing=None):
        return cls(n, policy, {tuple(key): coeff}, pairing)

    def _like(self, terms):
        return TwistedSeries._raw(self.n, self.policy, self.pairing, terms)

    # inspection

    def coefficient(self, key) -> MotiveLaurent:
        return self.terms.get(tuple(key), MotiveLaurent())

    def constant_term(self) -> MotiveLaurent:
        return self.coefficient((0,) * (self.n + 1))

    def is_framed(self) -> bool:
        return any(k[-1] for k in self.terms)

    def sorted_items(self):
        return sorted(self.terms.items())

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        return (isinstance(other, TwistedSeries) and self.n == other.n
                and self.pairing == other.pairing and self.terms == other.terms)

    def __repr__(self):
        body = ", ".join(f"{k}: {c}" for k, c in self.sorted_items()[:6])
        more = " ..." if len(self.terms) > 6 else ""
        return f"TwistedSeries(n={self.n}, D={self.policy.max_total_degree}, {{{body}{more}}})"

    # arithmetic

    def _check(self, other):
        if not isinstance(other, TwistedSeries):
            raise TypeError("expected a TwistedSeries")
        if self.n != other.n or self.pairing != other.pairing:
            raise PolicyMismatch("series live in different quantum tori")
        if self.policy.max_total_degree != other.policy.max_total_degree:
            raise PolicyMismatch("series have different truncation degrees",
                                 left=self.policy.max_total_degree,
                                 right=other.policy.max_total_degree)
        floors = [p.l_floor for p in (self.policy, other.policy) if p.l_floor is not None]
        return TruncationPolicy(self.policy.max_total_degree, max(floors) if floors else None)

    def __add__(self, other):
        policy = self._check(other)
        t = policy.t_floor
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        out = {k: c.clip(t) for k, c in out.items() if not c.is_zero()}
        return TwistedSeries._raw(self.n, policy, self.pairing, out)

    def __neg__(self):
        return self._like({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (MotiveLaurent, int)):
            return self.scale_coefficients(other)
        return twisted_mul(self, other)

    def scale_coefficients(self, c) -> "TwistedSeries":
        if isinstance(c, int):
            c = MotiveLaurent.from_int(c)
        t = self.policy.t_floor
        out = {}
        for k, v in self.terms.items():
            w = (v * c).clip(t)
            if not w.is_zero():
                out[k] = w
        return self._like(out)

    def clipped(self, l_floor: int | None) -> "TwistedSeries":
        """Re-express with a (higher) reporting floor."""
        policy = self.policy.with_floor(l_floor)
        t = policy.t_floor
        out = {k: c.clip(t) for k, c in self.terms.items()}
        return TwistedSeries._raw(self.n, policy, self.pairing, out)

    def truncated(self, d: int) -> "TwistedSeries":
        policy = self.policy.with_degree(d)
        return TwistedSeries._raw(self.n, policy, self.pairing,
                                  {k: c for k, c in self.terms.items() if degree(k) <= d})

    def mul_linear(self, m: Monomial, c: MotiveLaurent, e: int) -> "TwistedSeries":
        """Multiply by ``(1 - c y^m)^e``.

        Commutative fast path: each unit of ``e`` costs one pass over the terms.
        """
        if not self.pairing.is_zero or m[-1] or self.is_framed():
            return twisted_mul(self, binomial_factor(m, c, e, self.policy, self.pairing))
        if degree(m) == 0:
            raise EmptyMonomial("binomial factor needs a non-constant monomial")
        D = self.policy.max_total_degree
        dm = degree(m)
        t = self.policy.t_floor
        unit = c.unit_sign_exp()

        def times_c(v):
            return v.shift(unit[1], unit[0]) if unit else v * c

        terms = self.terms
        for _ in range(abs(e)):
            if e > 0:
                out = dict(terms)
                for k, v in terms.items():
                    if degree(k) + dm <= D:
                        k2 = tuple(x + y for x, y in zip(k, m))
                        w = times_c(v)
                        out[k2] = out[k2] - w if k2 in out else -w
            else:
                keys = {}
                for k in terms:
                    dk = degree(k)
                    while dk <= D and k not in keys:
                        keys[k] = dk
                        k = tuple(x + y for x, y in zip(k, m))
                        dk += dm
                out = {}
                for k in sorted(keys, key=keys.__getitem__):
                    prev = tuple(x - y for x, y in zip(k, m))
                    v = terms.get(k)
                    if min(prev) >= 0 and prev in out:
                        w = times_c(out[prev])
                        v = w if v is None else v + w
                    if v is not None:
                        out[k] = v
            terms = {k: v.clip(t) for k, v in out.items() if not v.is_zero()}
        return self._like(terms)

    # maps

    def map_coefficients(self, fn) -> "TwistedSeries":
        return self._like({k: fn(v) for k, v in self.terms.items()})

    def euler_specialize(self) -> dict:
        """Integer series obtained by ``L^(1/2) -> 1``."""
        out = {}
        for k, v in self.terms.items():
            x = v.euler_specialize()
            if x:
                out[k] = x
        return out

    def variables(self):
        return [f"y{i}" for i in range(self.n)] + ["yinf"]

    def to_json(self):
        return {
            "variables": self.variables(),
            "maxTotalDegree": self.policy.max_total_degree,
            "lFloor": self.policy.l_floor,
            "terms": [_term_json(list(k), c) for k, c in self.sorted_items()],
        }

    @classmethod
    def from_json(cls, obj, pairing=None):
        n = len(obj["variables"]) - 1
        policy = TruncationPolicy(obj["maxTotalDegree"], obj.get("lFloor"))
        terms = {}
        for term in obj["terms"]:
            terms[tuple(term["exps"])] = MotiveLaurent(
                {int(t): int(c) for t, c in term["coeff"]}, floor=term.get("floor"))
        return cls(n, policy, terms, pairing)


def _term_json(exps, c: MotiveLaurent):
    out = {"exps": exps, "coeff": [[t, str(v)] for t, v in c.items()]}
    if c.floor is not None:
        out["floor"] = c.floor
    return out


def twisted_mul(a: TwistedSeries, b: TwistedSeries) -> TwistedSeries:
    """Product with the twist ``(-L^(1/2))^<a,b>``, truncated at the policy degree."""
    policy = a._check(b)
    D = policy.max_total_degree
    t = policy.t_floor
    pairing = a.pairing
    twist = not pairing.is_zero
    bs = sorted(((degree(k), k, v) for k, v in b.terms.items()), key=lambda x: x[0])
    out = {}
    for ka, va in a.terms.items():
        da = degree(ka)
        for db, kb, vb in bs:
            if da + db > D:
                break
            if ka[-1] + kb[-1] > 1:
                raise FramingOverflow("product of two framed monomials", left=ka, right=kb)
            k = tuple(x + y for x, y in zip(ka, kb))
            v = va * vb
            if twist:
                v = v.times_unit(pairing.pair(ka, kb))
            out[k] = out[k] + v if k in out else v
    out = {k: v.clip(t) for k, v in out.items() if not v.is_zero()}
    return TwistedSeries._raw(a.n, policy, pairing, out)


def binomial_factor(m: Monomial, c: MotiveLaurent, e: int, policy: TruncationPolicy,
                    pairing: PairingMatrix | None = None) -> TwistedSeries:
    """Truncated expansion of ``(1 - c y^m)^e`` for any integer e."""
    m = tuple(m)
    dm = degree(m)
    if dm == 0 and m[-1] == 0:
        raise EmptyMonomial("binomial factor needs a non-constant monomial")
    n = len(m) - 1
    if m[-1] and e not in (0, 1):
        raise FramingOverflow("powers of a framed monomial")
    kmax = policy.max_total_degree // dm if dm else 1
    terms = {}
    power = ONE
    neg_c = -c
    for k in range(kmax + 1):
        if e >= 0:
            if k > e:
                break
            coeff = power * comb(e, k)
            power = power * neg_c
        else:
            coeff = power * comb(k - e - 1, -e - 1)
            power = power * c
        terms[tuple(k * x for x in m)] = coeff
    return TwistedSeries(n, policy, terms, pairing)


def series_div(a: TwistedSeries, b: TwistedSeries) -> TwistedSeries:
    """``a * b^(-1)`` in the commutative (unframed, symmetric) regime."""
    policy = a._check(b)
    if not a.pairing.is_zero or a.is_framed() or b.is_framed():
        raise FramedDivision("division is only defined in the commutative torus")
    zero = (0,) * (a.n + 1)
    b0 = b.terms.get(zero)
    if b0 is None or b0.unit_sign_exp() is None:
        raise NonUnitConstantTerm("divisor must start with a monomial unit", constant=str(b0))
    inv0 = b0.unit_inverse()
    sign0, t0 = inv0.unit_sign_exp()
    D = policy.max_total_degree
    t = policy.t_floor
    rest = [(k, v) for k, v in b.terms.items() if k != zero]
    # all monomials reachable from supp(a) by adding supports of b
    keys = {k: degree(k) for k in a.terms}
    frontier = list(keys)
    while frontier:
        nxt = []
        for k in frontier:
            for kb, _ in rest:
                k2 = tuple(x + y for x, y in zip(k, kb))
                d2 = degree(k2)
                if d2 <= D and k2 not in keys:
                    keys[k2] = d2
                    nxt.append(k2)
        frontier = nxt
    out = {}
    for k in sorted(keys, key=lambda k: (keys[k], k)):
        acc = a.terms.get(k)
        for kb, vb in rest:
            prev = tuple(x - y for x, y in zip(k, kb))
            g = out.get(prev)
            if g is not None and min(prev) >= 0:
                w = -(vb * g)
                acc = w if acc is None else acc + w
        if acc is None:
            continue
        acc = acc.shift(t0, sign0).clip(t)
        if not acc.is_zero():
            out[k] = acc
    return TwistedSeries._raw(a.n, policy, a.pairing, out)


def scale_variable(a: TwistedSeries, v: int, c: MotiveLaurent) -> TwistedSeries:
    """Substitute ``y_v -> c y_v`` for a monomial unit ``c = ±L^(t/2)``."""
    se = c.unit_sign_exp()
    if se is None:
        raise NonUnitScalar("scaling constant must be ±L^(t/2)", scalar=str(c))
    sign, t = se
    if sign == 1 and t == 0:
        return a
    tf = a.policy.t_floor
    out = {}
    for k, val in a.terms.items():
        e = k[v]
        out[k] = val.shift(t * e, sign ** e).clip(tf) if e else val
    return a._like(out)


def first_difference(a: TwistedSeries, b: TwistedSeries, t_floor: int | None = None):
    """First monomial (in sorted order) where a and b differ at or above ``t_floor``.

    Returns None when they agree; otherwise ``(monomial, a_terms, b_terms)``.
    Floors are ignored: only known terms at or above ``t_floor`` are compared.
    """
    for k in sorted(set(a.terms) | set(b.terms)):
        ca = a.terms.get(k, MotiveLaurent()).terms
        cb = b.terms.get(k, MotiveLaurent()).terms
        if t_floor is not None:
            ca = {t: c for t, c in ca.items() if t >= t_floor}
            cb = {t: c for t, c in cb.items() if t >= t_floor}
        if ca != cb:
            return k, ca, cb
    return None


class STSeries:
    """A y-series viewed in the coordinates ``s = y_0...y_{N-1}``, ``T_i = y_i``.

    ``y^a`` corresponds to ``s^(a_0) * prod_i T_i^(a_i - a_0)``; T-exponents
    may be negative.  Arithmetic is delegated to the underlying y-series,
    whose total degree is ``N*m + sum(tau)`` for ``s^m T^tau``.
    """

    __slots__ = ("y",)

    def __init__(self, y: TwistedSeries):
        if y.is_framed():
            raise ValueError("(s,T) coordinates are only defined for unframed series")
        self.y = y

    @property
    def n(self):
        return self.y.n

    @staticmethod
    def key_from_y(k):
        a0 = k[0]
        return (a0,) + tuple(x - a0 for x in k[1:-1])

    def key_to_y(self, key):
        m = key[0]
        return (m,) + tuple(m + x for x in key[1:]) + (0,)

    @property
    def terms(self) -> dict:
        return {self.key_from_y(k): v for k, v in self.y.terms.items()}

    def coefficient(self, key) -> MotiveLaurent:
        return self.y.coefficient(self.key_to_y(tuple(key)))

    def sorted_items(self):
        return sorted(self.terms.items())

    def __mul__(self, other):
        return STSeries(self.y * other.y)

    def __eq__(self, other):
        return isinstance(other, STSeries) and self.y == other.y

    def __len__(self):
        return len(self.y)

    def scale_s(self, c: MotiveLaurent) -> "STSeries":
        """Substitute ``s -> c s`` (the s-exponent equals a_0)."""
        return STSeries(scale_variable(self.y, 0, c))

    def euler_specialize(self) -> dict:
        return {self.key_from_y(k): v for k, v in self.y.euler_specialize().items()}

    def variables(self):
        return ["s"] + [f"T{i}" for i in range(1, self.n)]

    def to_json(self, euler: bool = False):
        if euler:
            terms = [{"exps": list(k), "coeff": v}
                     for k, v in sorted(self.euler_specialize().items())]
        else:
            terms = [_term_json(list(k), c) for k, c in self.sorted_items()]
        return {
            "variables": self.variables(),
            "maxTotalDegree": self.y.policy.max_total_degree,
            "lFloor": self.y.policy.l_floor,
            "terms": terms,
        }

    def to_text(self, euler: bool = False) -> str:
        names = self.variables()
        lines = []
        items = sorted(self.euler_specialize().items()) if euler else self.sorted_items()
        for key, c in items:
            mono = " ".join(f"{nm}^{e}" for nm, e in zip(names, key))
            lines.append(f"{mono} : {c}")
        return "\n".join(lines)

    def __repr__(self):
        return f"STSeries({self.sorted_items()[:6]})"


def to_sT_coordinates(a: TwistedSeries, n: int | None = None) -> STSeries:
    if n is not None and n != a.n:
        raise ValueError("vertex count mismatch")
    return STSeries(a)
