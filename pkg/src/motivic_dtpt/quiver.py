"""Partitions of the strip polygon, their quivers and curve types.

A partition is a cyclic word in ``B`` (triangle with base on the bottom
edge) and ``T`` (base on the top edge).  Vertex ``k`` of the quiver carries a
loop when the triangles ``k-1`` and ``k`` (cyclically) have the same label,
and the curve ``C_i`` between triangles ``i-1`` and ``i`` is a (-1,-1)-curve
exactly when their labels differ.  With these conventions a vertex in
``[a, b]`` is loop-free iff the curve with the same index is (-1,-1).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .errors import BadCounts, BadLabel, BadRange, NotClosed
from .torus import PairingMatrix

MINUS_ONE_MINUS_ONE = (-1, -1)
MINUS_TWO_ZERO = (-2, 0)


@dataclass(frozen=True)
class Partition:
    n0: int
    n1: int
    labels: str

    @property
    def n(self) -> int:
        return self.n0 + self.n1

    def __str__(self):
        return f"{self.n0} {self.n1} {self.labels}"

    def to_json(self):
        return {"n0": self.n0, "n1": self.n1, "labels": self.labels}


def parse_partition(n0: int, n1: int, labels: str) -> Partition:
    if n0 < 1 or n1 < 0 or n1 > n0:
        raise BadRange(f"need 0 <= n1 <= n0 and n0 >= 1, got n0={n0}, n1={n1}", n0=n0, n1=n1)
    labels = labels.strip().upper()
    bad = set(labels) - {"B", "T"}
    if bad:
        raise BadLabel(f"labels must be B or T, got {''.join(sorted(bad))!r}")
    if labels.count("B") != n0 or labels.count("T") != n1:
        raise BadCounts(f"labels {labels!r} do not have {n0} B's and {n1} T's",
                        n0=n0, n1=n1, labels=labels)
    return Partition(n0, n1, labels)


def parse_partition_text(text: str) -> Partition:
    """Parse the ``<n0> <n1> <labels>`` format."""
    parts = text.split()
    if len(parts) != 3:
        raise BadLabel(f"expected '<n0> <n1> <labels>', got {text!r}")
    try:
        n0, n1 = int(parts[0]), int(parts[1])
    except ValueError:
        raise BadLabel(f"non-integer counts in {text!r}") from None
    return parse_partition(n0, n1, parts[2])


def enumerate_partitions(n0: int, n1: int) -> list[Partition]:
    """All label words with n0 B's and n1 T's, in lexicographic order."""
    if n0 < 1 or n1 < 0 or n1 > n0:
        raise BadRange(f"need 0 <= n1 <= n0 and n0 >= 1, got n0={n0}, n1={n1}")
    n = n0 + n1
    words = []
    for tops in combinations(range(n), n1):
        w = ["B"] * n
        for i in tops:
            w[i] = "T"
        words.append("".join(w))
    return [Partition(n0, n1, w) for w in sorted(words)]


def all_partitions(max_n: int) -> list[Partition]:
    """Every partition with N = n0 + n1 <= max_n."""
    out = []
    for n in range(1, max_n + 1):
        for n1 in range(0, n // 2 + 1):
            out.extend(enumerate_partitions(n - n1, n1))
    return out


def loop_vertices(p: Partition) -> frozenset:
    w = p.labels
    return frozenset(k for k in range(p.n) if w[k - 1] == w[k])


@dataclass(frozen=True)
class Quiver:
    """Cyclic quiver on ``Z/N`` with loops, plus ``r`` framing edges from ``inf`` to 0.

    The framing vertex ``inf`` is stored with index ``n``.
    """

    n: int
    loops: frozenset
    framing_rank: int = 0
    edges: tuple = field(default=(), compare=False)

    @property
    def infinity(self) -> int:
        return self.n

    def edge_map(self) -> dict:
        return {name: (t, h) for name, t, h in self.edges}

    def non_loop_vertices(self):
        return [k for k in range(self.n) if k not in self.loops]

    def to_json(self):
        def v(x):
            return "inf" if x == self.n else x
        return {
            "vertices": list(range(self.n)),
            "loops": sorted(self.loops),
            "edges": [{"name": nm, "tail": v(t), "head": v(h)} for nm, t, h in self.edges],
            "framingRank": self.framing_rank,
        }

    def to_dot(self) -> str:
        lines = ["digraph Q {"]
        for k in range(self.n):
            lines.append(f'  {k} [label="{k}"];')
        if self.framing_rank:
            lines.append('  inf [label="inf", shape=box];')
        for nm, t, h in self.edges:
            tt = "inf" if t == self.n else t
            lines.append(f'  {tt} -> {h} [label="{nm}"];')
        lines.append("}")
        return "\n".join(lines)


def build_quiver(p: Partition, r: int = 0) -> Quiver:
    if r < 0:
        raise ValueError("framing rank must be non-negative")
    n = p.n
    loops = loop_vertices(p)
    edges = []
    for i in range(n):
        edges.append((f"a{i}", i, (i + 1) % n))
        edges.append((f"b{i}", (i + 1) % n, i))
    for k in sorted(loops):
        edges.append((f"l{k}", k, k))
    for j in range(r):
        edges.append((f"f{j}", n, 0))
    return Quiver(n, loops, r, tuple(edges))


def euler_ringel_form(q: Quiver):
    """Return ``(chi, pairing)`` on framed dimension vectors.

    ``chi[i][j] = delta_ij - #{edges i -> j}``; the pairing is
    ``chi - chi^T`` wrapped as a :class:`PairingMatrix`.
    """
    size = q.n + 1
    chi = [[int(i == j) for j in range(size)] for i in range(size)]
    for _, t, h in q.edges:
        chi[t][h] -= 1
    skew = [[chi[i][j] - chi[j][i] for j in range(size)] for i in range(size)]
    return chi, PairingMatrix(skew)


def chi_form(chi, a, b) -> int:
    return sum(chi[i][j] * a[i] * b[j] for i in range(len(a)) for j in range(len(b)))


@dataclass(frozen=True)
class CurveProfile:
    types: tuple
    c_table: Mapping

    def c(self, a: int, b: int) -> int:
        if (a, b) not in self.c_table:
            raise BadRange(f"interval [{a},{b}] outside 1..{len(self.types)}")
        return self.c_table[(a, b)]

    def to_json(self):
        return {
            "types": [list(t) for t in self.types],
            "cTable": [{"a": a, "b": b, "c": c} for (a, b), c in sorted(self.c_table.items())],
        }


def curve_profile(p: Partition) -> CurveProfile:
    """Curve types of C_1..C_{N-1} and the counts c(a, b).  Empty for N = 1."""
    w = p.labels
    types = tuple(MINUS_ONE_MINUS_ONE if w[i - 1] != w[i] else MINUS_TWO_ZERO
                  for i in range(1, p.n))
    table = {}
    for a in range(1, p.n):
        count = 0
        for b in range(a, p.n):
            count += types[b - 1] == MINUS_ONE_MINUS_ONE
            table[(a, b)] = count
    return CurveProfile(types, table)


def _check_closed(word, edges):
    if not word:
        raise NotClosed("empty word is not a cycle")
    for x, y in zip(word, word[1:] + word[:1]):
        if x not in edges or y not in edges:
            raise NotClosed(f"unknown edge {x if x not in edges else y!r}")
        if edges[x][1] != edges[y][0]:
            raise NotClosed(f"edge {x} ends at {edges[x][1]} but {y} starts at {edges[y][0]}",
                            word=list(word))


def cyclic_derivative(word, a: str, edges: Mapping | None = None) -> Counter:
    """Cyclic derivative of a cyclic word (or a Counter of words) along edge ``a``.

    A word is a sequence of edge names.  Each occurrence ``w = c a c'``
    contributes the path ``c' c``.  When ``edges`` (name -> (tail, head)) is
    given, every word is checked to be a closed path.
    """
    if isinstance(word, Mapping):
        out = Counter()
        for w, coeff in word.items():
            for path, k in cyclic_derivative(w, a, edges).items():
                out[path] += coeff * k
        return Counter({p: k for p, k in out.items() if k})
    word = tuple(word)
    if edges is not None:
        _check_closed(word, edges)
    out = Counter()
    for i, e in enumerate(word):
        if e == a:
            out[word[i + 1:] + word[:i]] += 1
    return out


def format_paths(paths: Counter) -> str:
    if not paths:
        return "0"
    parts = []
    for path, k in sorted(paths.items()):
        mono = "*".join(path) if path else "e"
        parts.append(mono if k == 1 else f"{k}*{mono}")
    return " + ".join(parts)


def is_even_loop_free(p: Partition) -> bool:
    return (p.n - len(loop_vertices(p))) % 2 == 0


def iter_intervals(n: int) -> Iterable[tuple[int, int]]:
    for a in range(1, n):
        for b in range(a, n):
            yield a, b
