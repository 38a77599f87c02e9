"""Generating functions of the framed quivers Q_sigma and their identities.

Series live in the unframed quantum torus of Q_sigma, which is commutative
because Q_sigma is symmetric.  Closed products have polynomial coefficients
and are exact.  Series built from the infinite products A_alpha need an
L-floor; they are computed at a deeper working floor and clipped, deepening
until every reported coefficient is known down to the requested floor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import (BadInterval, FloorNotReached, MissingFloor,
                     NonGenericZeta, StrategyMismatch)
from .motive import MotiveLaurent
from .quiver import (Partition, Quiver, build_quiver, curve_profile,
                     iter_intervals, CurveProfile)
from .roots import (Root, StabilityParam, chamber_split, imaginary, real_plus,
                    roots_up_to_degree, standard_zetas)
from .torus import (STSeries, TruncationPolicy, TwistedSeries, degree,
                    first_difference, scale_variable, series_div, to_sT_coordinates)


def _one(n, policy):
    return TwistedSeries.one(n, policy)


def _unit(t, sign=1):
    return MotiveLaurent.monomial(t, sign)


def root_is_odd(root: Root, quiver: Quiver) -> bool:
    """Parity of the dimension vector summed over loop-free vertices."""
    return sum(d for k, d in enumerate(root.dims) if k not in quiver.loops) % 2 == 1


def settle(compute, l_floor: int, extra: int = 4, max_extra: int = 256):
    """Run ``compute(working_floor)`` deeper and deeper until the result is
    known down to ``l_floor`` (L units), then clip to ``l_floor``."""
    t = 2 * l_floor
    while extra <= max_extra:
        out = compute(l_floor - extra).clipped(l_floor)
        if all(c.floor is None or c.floor <= t for c in out.terms.values()):
            return out
        extra *= 2
    raise FloorNotReached(f"could not resolve coefficients down to L^{l_floor}",
                          l_floor=l_floor, max_extra=max_extra)


def _need_floor(policy):
    if policy.l_floor is None:
        raise MissingFloor("this series has infinitely many L-terms; set an L-floor")


# ---------------------------------------------------------------- A_alpha

def _a_alpha_families(root: Root, n: int, odd: bool):
    """Factor families of A_alpha as (offset, step, exponent).

    Factor j of a family is ``(1 - L^((offset - 2j)/2) y^alpha)^exponent``.
    """
    if root.kind == "imaginary":
        fams = [(2, -2, -1)]
        if n != 1:
            fams.insert(0, (0, -2, 1 - n))
        return fams
    if odd:
        return [(-1, -2, 1)]
    return [(0, -2, -1)]


@lru_cache(maxsize=None)
def _a_alpha_cached(root: Root, n: int, odd: bool, D: int, t_work: int) -> TwistedSeries:
    policy = TruncationPolicy(D, None)
    key = root.key()
    size = degree(key)
    if size > D:
        return _one(n, TruncationPolicy(D, t_work // 2))
    out = _one(n, policy)
    kmax = D // size
    fams = _a_alpha_families(root, n, odd)
    t_max = max(off for off, _, _ in fams)
    # keep factors j < J, where the first dropped factor cannot reach t_work
    J = 0
    while max(off - 2 * J for off, _, _ in fams) + 1 + (kmax - 1) * max(t_max, 0) > t_work:
        J += 1
    for off, step, e in fams:
        for j in range(J):
            out = out.mul_linear(key, _unit(off + step * j), e)
    t_tail = max(off - 2 * J for off, _, _ in fams)
    tail = {(0,) * (n + 1): MotiveLaurent.from_int(1)}
    for k in range(1, kmax + 1):
        tail[tuple(k * x for x in key)] = MotiveLaurent.unknown(k * t_tail + 1)
    out = out * TwistedSeries(n, policy, tail)
    return out.clipped(t_work // 2)


def a_alpha_factor(root: Root, quiver: Quiver, policy: TruncationPolicy) -> TwistedSeries:
    """Truncation of the infinite product A_alpha, exact above the policy floor."""
    _need_floor(policy)
    return _a_alpha_cached(root, quiver.n, root_is_odd(root, quiver),
                           policy.max_total_degree, policy.t_floor)


def _roots(quiver, D):
    return roots_up_to_degree(quiver.n, D)


def _product_of_a(quiver, roots, policy):
    out = _one(quiver.n, policy)
    for root in roots:
        if degree(root.key()) <= policy.max_total_degree:
            out = out * a_alpha_factor(root, quiver, policy)
    return out


def universal_series(quiver: Quiver, policy: TruncationPolicy) -> TwistedSeries:
    """Product of A_alpha over all positive roots of size at most D."""
    _need_floor(policy)
    D = policy.max_total_degree
    roots = _roots(quiver, D)
    return settle(lambda f: _product_of_a(quiver, roots, TruncationPolicy(D, f)), policy.l_floor)


def _split(quiver, zeta, D):
    split = chamber_split(_roots(quiver, D), zeta)
    if not split.generic:
        raise NonGenericZeta(f"stability {zeta} pairs to zero with {split.zeros[0].label()}",
                             zeta=str(zeta), root=list(split.zeros[0].dims))
    return split


def chamber_roots(quiver: Quiver, zeta: StabilityParam, sign: int, D: int):
    split = _split(quiver, zeta, D)
    return split.negative if sign < 0 else split.positive


def chamber_factor_series(quiver: Quiver, zeta: StabilityParam, sign: int,
                          policy: TruncationPolicy) -> TwistedSeries:
    """Product of A_alpha over roots with ``sign * zeta.alpha > 0``."""
    _need_floor(policy)
    D = policy.max_total_degree
    roots = chamber_roots(quiver, zeta, sign, D)
    return settle(lambda f: _product_of_a(quiver, roots, TruncationPolicy(D, f)), policy.l_floor)


# ---------------------------------------------------------------- Z_alpha^(r)

def z_alpha_factors(root: Root, r: int, n: int, odd: bool):
    """Linear factors of Z_alpha^(r) as ``(t, sign, exponent)``: ``(1 - sign L^(t/2) y^alpha)^exponent``."""
    M = r * root.level
    sign = -1 if M % 2 else 1
    out = []
    for k in range(M):
        if root.kind == "imaginary":
            if n != 1:
                out.append((2 * k + 2 - M, sign, 1 - n))
            out.append((2 * k + 4 - M, sign, -1))
        elif odd:
            out.append((2 * k + 1 - M, sign, 1))
        else:
            out.append((2 * k + 2 - M, sign, -1))
    return out


def _apply_z(series, root, r, quiver):
    key = root.key()
    if degree(key) > series.policy.max_total_degree:
        return series
    for t, sign, e in z_alpha_factors(root, r, quiver.n, root_is_odd(root, quiver)):
        series = series.mul_linear(key, _unit(t, sign), e)
    return series


def z_alpha_r(root: Root, r: int, quiver: Quiver, policy: TruncationPolicy) -> TwistedSeries:
    """Z_alpha^(r) in the original variables, as an exact finite product."""
    if r < 1:
        raise ValueError("framing rank must be at least 1")
    return _apply_z(_one(quiver.n, policy), root, r, quiver)


# ---------------------------------------------------------------- Z_zeta

STRATEGIES = {"closed": "closed", "closedProduct": "closed",
              "ratio": "ratio", "truncatedRatio": "ratio", "both": "both"}


@dataclass
class ChamberSeriesRequest:
    partition: Partition
    r: int
    zeta: object = "PT"  # "PT", "DT" or a StabilityParam
    policy: TruncationPolicy = field(default_factory=lambda: TruncationPolicy(4))
    strategy: str = "closed"

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("framing rank must be at least 1")
        if self.strategy not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.strategy!r}")

    def resolved_zeta(self) -> StabilityParam:
        if isinstance(self.zeta, StabilityParam):
            return self.zeta
        pt, dt = standard_zetas(self.partition.n)
        tag = str(self.zeta).upper()
        if tag == "PT":
            return pt
        if tag == "DT":
            return dt
        raise ValueError(f"unknown chamber {self.zeta!r}")


def closed_chamber_series(quiver: Quiver, zeta: StabilityParam, r: int,
                          policy: TruncationPolicy) -> TwistedSeries:
    out = _one(quiver.n, policy)
    for root in chamber_roots(quiver, zeta, -1, policy.max_total_degree):
        out = _apply_z(out, root, r, quiver)
    return out


def ratio_chamber_series(quiver: Quiver, zeta: StabilityParam, r: int,
                         policy: TruncationPolicy) -> TwistedSeries:
    """Literal ratio A^-(( -L^(1/2))^r y_0, ...) / A^-((-L^(-1/2))^r y_0, ...), floored."""
    _need_floor(policy)
    D = policy.max_total_degree
    roots = chamber_roots(quiver, zeta, -1, D)

    def compute(f):
        a = _product_of_a(quiver, roots, TruncationPolicy(D, f))
        up = scale_variable(a, 0, MotiveLaurent.minus_sqrt_l_power(r))
        down = scale_variable(a, 0, MotiveLaurent.minus_sqrt_l_power(-r))
        return series_div(up, down)

    return settle(compute, policy.l_floor)


def framed_partition_function(req: ChamberSeriesRequest) -> TwistedSeries:
    quiver = build_quiver(req.partition, 0)
    zeta = req.resolved_zeta()
    strategy = STRATEGIES[req.strategy]
    if strategy == "ratio":
        return ratio_chamber_series(quiver, zeta, req.r, req.policy)
    closed = closed_chamber_series(quiver, zeta, req.r, req.policy)
    if strategy == "both":
        ratio = ratio_chamber_series(quiver, zeta, req.r, req.policy)
        diff = first_difference(closed, ratio, req.policy.t_floor)
        if diff is not None:
            raise StrategyMismatch("closed product and truncated ratio disagree",
                                   monomial=list(diff[0]), closed=str(diff[1]), ratio=str(diff[2]))
    return closed


# ---------------------------------------------------------------- closed rank-one forms

def interval_series(a: int, b: int, profile: CurveProfile, policy: TruncationPolicy) -> TwistedSeries:
    """Z_[a,b](s, T_a...T_b) as a y-series."""
    n = len(profile.types) + 1
    if not 1 <= a <= b <= n - 1:
        raise BadInterval(f"interval [{a},{b}] outside 1..{n - 1}", a=a, b=b)
    odd = profile.c(a, b) % 2 == 1
    out = _one(n, policy)
    m = 1
    while True:
        key = real_plus(n, a, b, m).key()
        if degree(key) > policy.max_total_degree:
            return out
        sign = -1 if m % 2 else 1
        for j in range(m):
            if odd:
                out = out.mul_linear(key, _unit(2 * j + 1 - m, sign), 1)
            else:
                out = out.mul_linear(key, _unit(2 * j + 2 - m, sign), -1)
        m += 1


def imaginary_series(n: int, policy: TruncationPolicy) -> TwistedSeries:
    """Z_im(s) as a y-series in the N-vertex torus."""
    out = _one(n, policy)
    m = 1
    while True:
        key = imaginary(n, m).key()
        if degree(key) > policy.max_total_degree:
            return out
        sign = -1 if m % 2 else 1
        for j in range(m):
            if n != 1:
                out = out.mul_linear(key, _unit(2 * j + 2 - m, sign), 1 - n)
            out = out.mul_linear(key, _unit(2 * j + 4 - m, sign), -1)
        m += 1


def closed_rank1_forms(kind, profile: CurveProfile, policy: TruncationPolicy) -> TwistedSeries:
    """``kind`` is ``"imaginary"`` or an interval ``(a, b)``."""
    if kind == "imaginary":
        return imaginary_series(len(profile.types) + 1, policy)
    a, b = kind
    return interval_series(a, b, profile, policy)


def pt1_closed(p: Partition, policy: TruncationPolicy) -> TwistedSeries:
    profile = curve_profile(p)
    out = _one(p.n, policy)
    for a, b in iter_intervals(p.n):
        out = out * interval_series(a, b, profile, policy)
    return out


def dt1_closed(p: Partition, policy: TruncationPolicy) -> TwistedSeries:
    return imaginary_series(p.n, policy) * pt1_closed(p, policy)


# ---------------------------------------------------------------- points

def _geometry_n(geometry) -> int:
    if geometry == "affine3":
        return 1
    if isinstance(geometry, tuple) and geometry[0] == "resolution":
        return int(geometry[1])
    return int(geometry)


def points_series(geometry, r: int, policy: TruncationPolicy) -> TwistedSeries:
    """DT_r^points as a series in ``s = y_0...y_{N-1}``.

    ``geometry`` is ``"affine3"``, an int N, or ``("resolution", N)``.
    """
    n = _geometry_n(geometry)
    out = _one(n, policy)
    m = 1
    while True:
        key = imaginary(n, m).key()
        if degree(key) > policy.max_total_degree:
            return out
        M = r * m
        sign = -1 if M % 2 else 1
        for k in range(M):
            if n != 1:
                out = out.mul_linear(key, _unit(2 * k + 2 - M, sign), 1 - n)
            out = out.mul_linear(key, _unit(2 * k + 4 - M, sign), -1)
        m += 1


def rank_shift(r: int, i: int) -> MotiveLaurent:
    """The scalar ``(-1)^(r+1) L^((-r-1)/2 + i)`` of the rank-r factorization."""
    return _unit(2 * i - r - 1, -1 if r % 2 == 0 else 1)


def shifted_product(rank_one: TwistedSeries, r: int) -> TwistedSeries:
    """``prod_{i=1..r} F((-1)^(r+1) L^((-r-1)/2+i) y_0, y_1, ...)``."""
    out = _one(rank_one.n, rank_one.policy)
    for i in range(1, r + 1):
        out = out * scale_variable(rank_one, 0, rank_shift(r, i))
    return out


def shifted_points_series(geometry, r: int, policy: TruncationPolicy) -> TwistedSeries:
    return shifted_product(points_series(geometry, 1, policy), r)


# ---------------------------------------------------------------- PT / DT

def pt_dt(p: Partition, r: int, policy: TruncationPolicy, strategy: str = "closed"):
    """``(PT_r, DT_r)`` in (s, T) coordinates."""
    pt = framed_partition_function(ChamberSeriesRequest(p, r, "PT", policy, strategy))
    dt = framed_partition_function(ChamberSeriesRequest(p, r, "DT", policy, strategy))
    return to_sT_coordinates(pt), to_sT_coordinates(dt)


# ---------------------------------------------------------------- verification

@dataclass
class VerificationReport:
    identity: str
    params: dict
    passed: bool
    witness: dict | None = None

    def to_json(self):
        out = {"identity": self.identity, "params": self.params, "pass": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def compare_series(identity: str, params: dict, lhs: TwistedSeries, rhs: TwistedSeries,
                   t_floor: int | None = None) -> VerificationReport:
    diff = first_difference(lhs, rhs, t_floor)
    if diff is None:
        return VerificationReport(identity, params, True)
    key, a, b = diff
    witness = {
        "monomial": list(key),
        "sT": list(STSeries.key_from_y(key)),
        "lhs": [[t, str(c)] for t, c in sorted(a.items())],
        "rhs": [[t, str(c)] for t, c in sorted(b.items())],
    }
    return VerificationReport(identity, params, False, witness)


def check_strategy_agreement(p: Partition, r: int, zeta, policy: TruncationPolicy) -> VerificationReport:
    quiver = build_quiver(p, 0)
    if not isinstance(zeta, StabilityParam):
        zeta = ChamberSeriesRequest(p, r, zeta, policy).resolved_zeta()
    closed = closed_chamber_series(quiver, zeta, r, policy)
    ratio = ratio_chamber_series(quiver, zeta, r, policy)
    params = {"partition": str(p), "r": r, "zeta": str(zeta),
              "maxTotalDegree": policy.max_total_degree, "lFloor": policy.l_floor}
    return compare_series("strategy_agreement", params, ratio, closed, policy.t_floor)


def check_universal_factorization(p: Partition, zeta: StabilityParam,
                                  policy: TruncationPolicy) -> VerificationReport:
    """A_U = A_zeta^+ A_zeta^- above the floor."""
    _need_floor(policy)
    quiver = build_quiver(p, 0)
    D = policy.max_total_degree
    everything = _roots(quiver, D)
    neg = chamber_roots(quiver, zeta, -1, D)
    pos = chamber_roots(quiver, zeta, 1, D)
    lhs = settle(lambda f: _product_of_a(quiver, everything, TruncationPolicy(D, f)), policy.l_floor)

    def rhs_at(f):
        pol = TruncationPolicy(D, f)
        return _product_of_a(quiver, pos, pol) * _product_of_a(quiver, neg, pol)

    rhs = settle(rhs_at, policy.l_floor)
    params = {"partition": str(p), "zeta": str(zeta), "maxTotalDegree": D, "lFloor": policy.l_floor}
    return compare_series("universal_factorization", params, lhs, rhs, policy.t_floor)


def check_rank_r_per_root(root: Root, r: int, quiver: Quiver, max_s: int) -> VerificationReport:
    """Z_alpha^(r) against the r-fold shifted product of Z_alpha^(1)."""
    size = degree(root.key())
    k = max(1, max_s // root.level) if root.level else 1
    policy = TruncationPolicy(size * k)
    lhs = z_alpha_r(root, r, quiver, policy)
    rhs = shifted_product(z_alpha_r(root, 1, quiver, policy), r)
    params = {"root": root.label(), "dims": list(root.dims), "r": r,
              "maxTotalDegree": policy.max_total_degree}
    return compare_series("rank_r_per_root", params, lhs, rhs)


def verify_theorem(p: Partition, r: int, policy: TruncationPolicy,
                   universal_degree: int | None = None, universal_floor: int = -4,
                   max_s: int | None = None, include_universal: bool = True) -> list:
    """Run the factorization identities for one partition and framing rank.

    The closed-form series use ``policy`` without a floor.  The universal
    factorization is checked at total degree ``universal_degree`` (default
    ``min(D, 2N)``) with L-floor ``policy.l_floor`` or ``universal_floor``.
    """
    n = p.n
    D = policy.max_total_degree
    exact = TruncationPolicy(D)
    quiver = build_quiver(p, 0)
    zeta_pt, zeta_dt = standard_zetas(n)
    base = {"partition": str(p), "r": r, "maxTotalDegree": D}
    reports = []

    pt_r = closed_chamber_series(quiver, zeta_pt, r, exact)
    dt_r = closed_chamber_series(quiver, zeta_dt, r, exact)
    pt_1 = pt1_closed(p, exact)
    dt_1 = dt1_closed(p, exact)

    if r == 1:
        reports.append(compare_series("rank_one_pt", base, pt_r, pt_1))
        reports.append(compare_series("rank_one_dt", base, dt_r, dt_1))
    reports.append(compare_series("pt_factorization", base, pt_r, shifted_product(pt_1, r)))
    reports.append(compare_series("dt_factorization", base, dt_r, shifted_product(dt_1, r)))
    points = points_series(n, r, exact)
    reports.append(compare_series("points_factorization", base, points,
                                  shifted_points_series(n, r, exact)))
    reports.append(compare_series("dt_pt_correspondence", base, dt_r, points * pt_r))

    max_s = max_s if max_s is not None else max(1, D // n)
    for root in roots_up_to_degree(n, n * max_s + n):
        if 1 <= root.level <= max_s:
            rep = check_rank_r_per_root(root, r, quiver, max_s)
            rep.params.update(partition=str(p))
            reports.append(rep)

    if include_universal:
        ud = universal_degree if universal_degree is not None else min(D, 2 * n)
        uf = policy.l_floor if policy.l_floor is not None else universal_floor
        upol = TruncationPolicy(ud, uf)
        for zeta in (zeta_pt, zeta_dt):
            reports.append(check_universal_factorization(p, zeta, upol))
    return reports


# ---------------------------------------------------------------- power structure

def collapse_to_s(series: TwistedSeries) -> TwistedSeries:
    """View a series in the powers of ``s = y_0...y_{N-1}`` as a one-variable series."""
    n = series.n
    terms = {}
    for k, c in series.terms.items():
        if len(set(k[:-1])) != 1 or k[-1]:
            raise ValueError(f"monomial {k} is not a power of s")
        terms[(k[0], 0)] = c
    policy = TruncationPolicy(series.policy.max_total_degree // n, series.policy.l_floor)
    return TwistedSeries(1, policy, terms)


def points_via_power_structure(n: int, r: int, max_s: int) -> TwistedSeries:
    """DT_r^points of Y_sigma as the power ``DT_r^points(A^3)^(1 + (N-1) L^-1)``.

    The power structure is taken in the variable ``(-1)^r s``.
    """
    from .plethystic import motive_power

    policy = TruncationPolicy(max_s)
    flip = MotiveLaurent.from_int(-1 if r % 2 else 1)
    affine = scale_variable(points_series("affine3", r, policy), 0, flip)
    exponent = MotiveLaurent({0: 1, -2: n - 1})
    return scale_variable(motive_power(affine, exponent), 0, flip)
