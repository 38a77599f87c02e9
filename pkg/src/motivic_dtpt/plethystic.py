"""Plethystic exponential, Euler-product decomposition and the power structure.

Everything is done in product form.  A term ``c L^(t/2) y^m`` exponentiates
to ``(1 - L^(t/2) y^m)^(-c)``, which is the plethystic exponential for the
lambda-ring structure with ``sigma_n(L^(1/2)) = L^(n/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FlooredValue, NonIntegerExponent, NonUnitConstantTerm, NonzeroConstantTerm
from .motive import MotiveLaurent
from .torus import TruncationPolicy, TwistedSeries, degree


@dataclass(frozen=True)
class EulerProduct:
    """``prod (1 - L^(t/2) y^m)^(-c)`` over triples ``(m, t, c)``."""

    n: int
    policy: TruncationPolicy
    factors: tuple

    def expand(self) -> TwistedSeries:
        out = TwistedSeries.one(self.n, self.policy)
        for m, t, c in self.factors:
            out = out.mul_linear(m, MotiveLaurent.monomial(t), -c)
        return out

    def to_json(self):
        return [{"exps": list(m), "halfL": t, "exponent": c} for m, t, c in self.factors]

    def __len__(self):
        return len(self.factors)


def _check_unfloored(series):
    for k, c in series.terms.items():
        if c.is_floored:
            raise FlooredValue("plethystic operations need exact coefficients", monomial=list(k))


def plethystic_exp(f: TwistedSeries) -> TwistedSeries:
    zero = (0,) * (f.n + 1)
    if zero in f.terms:
        raise NonzeroConstantTerm("plethystic exponential needs f(0) = 0",
                                  constant=str(f.terms[zero]))
    _check_unfloored(f)
    out = TwistedSeries.one(f.n, f.policy)
    for m, c in sorted(f.terms.items(), key=lambda kv: (degree(kv[0]), kv[0])):
        for t, k in c.items():
            out = out.mul_linear(m, MotiveLaurent.monomial(t), -k)
    return out


def euler_product_decompose(a: TwistedSeries) -> EulerProduct:
    """Write ``a`` (constant term 1) as an Euler product through the truncation degree.

    The lowest-degree unexplained term ``c L^(t/2) y^m`` is peeled off as the
    factor ``(1 - L^(t/2) y^m)^(-c)`` until nothing is left.
    """
    zero = (0,) * (a.n + 1)
    if a.terms.get(zero) != MotiveLaurent.from_int(1):
        raise NonUnitConstantTerm("Euler product needs constant term 1",
                                  constant=str(a.terms.get(zero)))
    _check_unfloored(a)
    factors = []
    rest = a
    done = set()
    while True:
        pending = [k for k in rest.terms if k != zero]
        if not pending:
            break
        m = min(pending, key=lambda k: (degree(k), k))
        if m in done:
            # peeling a monomial never re-creates it; getting here means inexact input
            raise NonIntegerExponent("decomposition did not close", monomial=list(m))
        done.add(m)
        for t, c in rest.terms[m].items():
            if not isinstance(c, int):
                raise NonIntegerExponent("non-integer exponent", monomial=list(m), t=t)
            factors.append((m, t, c))
            rest = rest.mul_linear(m, MotiveLaurent.monomial(t), c)
    factors.sort()
    return EulerProduct(a.n, a.policy, tuple(factors))


def motive_power(a: TwistedSeries, x: MotiveLaurent) -> TwistedSeries:
    """``a^x`` under the power structure, for ``x`` a Laurent polynomial in L^(1/2)."""
    if x.is_floored:
        raise FlooredValue("power-structure exponent must be exact")
    decomposition = euler_product_decompose(a)
    out = TwistedSeries.one(a.n, a.policy)
    for m, t, c in decomposition.factors:
        for t2, d in x.items():
            out = out.mul_linear(m, MotiveLaurent.monomial(t + t2), -c * d)
    return out
