"""Finite groups: named families, raw Cayley tables, element orders.

Every group enumerates its elements canonically by integer id, with the
identity at id 0:

* ``Z(n)``   residues ``0..n-1``
* ``D(n)``   total order ``n``; rotations ``r^0..r^(m-1)`` then reflections
             ``r^0 s..r^(m-1) s`` (``m = n/2``)
* ``Dic(n)`` total order ``n``; ``a^0..a^(2m-1)`` then ``a^0 x..a^(2m-1) x``
* ``S(n)``, ``A(n)`` permutations of ``0..n-1`` in lexicographic one-line order
* products    row-major, first factor most significant

Spectra for the families are computed analytically (divisor counts,
integer partitions, lcm-convolution), so they are available far beyond the
sizes at which elements can be materialized.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy.utilities.iterables import partitions

from .numtheory import divisors, is_prime_power, phi, prime_support

#: Above this many elements, groups refuse to materialize element lists.
MATERIALIZE_CAP = 1_000_000
#: Largest n for which S(n)/A(n) elements are enumerated.
SYMMETRIC_ELEMENT_CAP = 8
#: Largest n for which S(n)/A(n) spectra are computed from partitions.
SYMMETRIC_SPECTRUM_CAP = 20
#: Tables up to this size get an exhaustive associativity check.
EXHAUSTIVE_ASSOC_LIMIT = 512
RANDOM_ASSOC_TRIPLES = 100_000


class NotAGroup(ValueError):
    """A Cayley table violates a group axiom."""

    def __init__(self, reason: str, witness: tuple[int, ...] = ()):
        self.reason = reason
        self.witness = witness
        msg = reason if not witness else f"{reason} (witness {list(witness)})"
        super().__init__(msg)


class Unsupported(Exception):
    pass


class TooLarge(ValueError):
    def __init__(self, size: int, cap: int, what: str = "group"):
        self.size = size
        self.cap = cap
        super().__init__(f"{what} of size {size} exceeds cap {cap}")


class SpecError(ValueError):
    """Malformed group spec; ``position`` is the 0-based offset of the problem."""

    def __init__(self, message: str, text: str, position: int):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}: {text!r}")


@dataclass(frozen=True)
class OrderSpectrum:
    """Number of elements of each order."""

    counts: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {int(d): int(c) for d, c in sorted(self.counts.items()) if c}
        object.__setattr__(self, "counts", clean)

    def __getitem__(self, d: int) -> int:
        return self.counts.get(d, 0)

    def __contains__(self, d: int) -> bool:
        return self.counts.get(d, 0) > 0

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def orders(self) -> list[int]:
        return list(self.counts)

    def has_order(self, m: int) -> bool:
        return self[m] > 0

    @property
    def exponent(self) -> int:
        return reduce(math.lcm, self.counts, 1)

    def lcm_convolve(self, other: OrderSpectrum) -> OrderSpectrum:
        out: Counter[int] = Counter()
        for a, ca in self.counts.items():
            for b, cb in other.counts.items():
                out[math.lcm(a, b)] += ca * cb
        return OrderSpectrum(out)

    def problems(self, group_order: int) -> list[str]:
        """Violated spectrum invariants; empty when consistent."""
        bad = []
        if self.total != group_order:
            bad.append(f"counts sum to {self.total}, expected {group_order}")
        if self[1] != 1:
            bad.append(f"{self[1]} elements of order 1")
        for d, c in self.counts.items():
            if group_order % d:
                bad.append(f"order {d} does not divide {group_order}")
            if d > 1 and c % phi(d):
                bad.append(f"count {c} of order {d} not divisible by phi({d})")
        return bad


@dataclass(frozen=True)
class ElementRef:
    id: int
    order: int


def _cycles(perm: Sequence[int]) -> list[tuple[int, ...]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = [start]
        seen[start] = True
        j = perm[start]
        while j != start:
            cyc.append(j)
            seen[j] = True
            j = perm[j]
        out.append(tuple(cyc))
    return out


def _perm_order(perm: Sequence[int]) -> int:
    return reduce(math.lcm, (len(c) for c in _cycles(perm)), 1)


def _perm_is_even(perm: Sequence[int]) -> bool:
    return (len(perm) - len(_cycles(perm))) % 2 == 0


def _cyclic_spectrum(n: int) -> OrderSpectrum:
    return OrderSpectrum({d: phi(d) for d in divisors(n)})


def _partition_spectrum(n: int, even_only: bool) -> OrderSpectrum:
    counts: Counter[int] = Counter()
    fact = math.factorial(n)
    for part in partitions(n):
        # a cycle of even length is an odd permutation
        if even_only and sum(r for a, r in part.items() if a % 2 == 0) % 2:
            continue
        denom = 1
        for a, r in part.items():
            denom *= a**r * math.factorial(r)
        counts[reduce(math.lcm, part.keys(), 1)] += fact // denom
    return OrderSpectrum(counts)


class FiniteGroup:
    """Base class; subclasses fill in the family-specific pieces."""

    order: int

    def spec(self) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.spec()}>"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and self.spec() == other.spec()

    def __hash__(self) -> int:
        return hash(self.spec())

    # -- elements -------------------------------------------------------

    def _check_materializable(self) -> None:
        if self.order > MATERIALIZE_CAP:
            raise TooLarge(self.order, MATERIALIZE_CAP)

    def element_orders(self) -> list[int]:
        """Order of every element, indexed by canonical id."""
        self._check_materializable()
        return self._element_orders

    @cached_property
    def _element_orders(self) -> list[int]:
        return [self.element_order(i) for i in range(self.order)]

    def element_order(self, i: int) -> int:
        raise NotImplementedError

    def multiply(self, a: int, b: int) -> int:
        raise NotImplementedError

    def label(self, i: int) -> str:
        return str(i)

    def element(self, i: int) -> ElementRef:
        if not 0 <= i < self.order:
            raise IndexError(f"element id {i} out of range for {self.spec()}")
        return ElementRef(i, self.element_order(i))

    def cayley_table(self) -> np.ndarray:
        self._check_materializable()
        n = self.order
        return np.array([[self.multiply(a, b) for b in range(n)] for a in range(n)], dtype=np.int64)

    # -- invariants -----------------------------------------------------

    def order_spectrum(self) -> OrderSpectrum:
        return self._spectrum

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        return OrderSpectrum(Counter(self.element_orders()))

    def primes(self) -> tuple[int, ...]:
        return prime_support(self.order)

    def has_element_of_order(self, m: int) -> bool:
        return self.order_spectrum().has_order(m)

    def is_nilpotent(self) -> bool:
        raise NotImplementedError

    def center(self) -> frozenset[int]:
        raise Unsupported(f"no center formula for {self.spec()}")

    def center_order(self) -> int:
        return len(self.center())


class Cyclic(FiniteGroup):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"Z(n) needs n >= 1, got {n}")
        self.n = self.order = n

    def spec(self) -> str:
        return f"Z({self.n})"

    def element_order(self, i: int) -> int:
        return self.n // math.gcd(self.n, i)

    @cached_property
    def _element_orders(self) -> list[int]:
        n = self.n
        return [n // math.gcd(n, i) for i in range(n)]

    def multiply(self, a: int, b: int) -> int:
        return (a + b) % self.n

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        return _cyclic_spectrum(self.n)

    def is_nilpotent(self) -> bool:
        return True

    def center(self) -> frozenset[int]:
        return frozenset(range(self.n))

    def center_order(self) -> int:
        return self.n


class Dihedral(FiniteGroup):
    """Symmetries of a regular m-gon, named by total order 2m."""

    def __init__(self, total_order: int):
        if total_order < 2 or total_order % 2:
            raise ValueError(f"D(n) needs even n >= 2, got {total_order}")
        self.order = total_order
        self.m = total_order // 2

    def spec(self) -> str:
        return f"D({self.order})"

    def _split(self, i: int) -> tuple[int, int]:
        return (i, 0) if i < self.m else (i - self.m, 1)

    def element_order(self, i: int) -> int:
        a, e = self._split(i)
        return 2 if e else self.m // math.gcd(self.m, a)

    def multiply(self, x: int, y: int) -> int:
        a, e = self._split(x)
        b, f = self._split(y)
        rot = (a + (-b if e else b)) % self.m
        return rot + self.m * ((e + f) % 2)

    def label(self, i: int) -> str:
        a, e = self._split(i)
        return f"r^{a}" + (" s" if e else "")

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        counts = Counter(_cyclic_spectrum(self.m).counts)
        counts[2] += self.m
        return OrderSpectrum(counts)

    def is_nilpotent(self) -> bool:
        return self.m & (self.m - 1) == 0

    def center(self) -> frozenset[int]:
        if self.m <= 2:
            return frozenset(range(self.order))
        if self.m % 2 == 0:
            return frozenset({0, self.m // 2})
        return frozenset({0})



class Dicyclic(FiniteGroup):
    """<a, x | a^2m = 1, x^2 = a^m, x^-1 a x = a^-1>, named by total order 4m."""

    def __init__(self, total_order: int):
        if total_order < 8 or total_order % 4:
            raise ValueError(f"Dic(n) needs n divisible by 4 and >= 8, got {total_order}")
        self.order = total_order
        self.m = total_order // 4

    def spec(self) -> str:
        return f"Dic({self.order})"

    def _split(self, i: int) -> tuple[int, int]:
        half = 2 * self.m
        return (i, 0) if i < half else (i - half, 1)

    def element_order(self, i: int) -> int:
        a, e = self._split(i)
        half = 2 * self.m
        return 4 if e else half // math.gcd(half, a)

    def multiply(self, x: int, y: int) -> int:
        half = 2 * self.m
        a, e = self._split(x)
        b, f = self._split(y)
        rot = a + (-b if e else b)
        if e and f:
            rot += self.m
            e = f = 0
        return rot % half + half * ((e + f) % 2)

    def label(self, i: int) -> str:
        a, e = self._split(i)
        return f"a^{a}" + (" x" if e else "")

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        counts = Counter(_cyclic_spectrum(2 * self.m).counts)
        counts[4] += 2 * self.m
        return OrderSpectrum(counts)

    def is_nilpotent(self) -> bool:
        return self.order & (self.order - 1) == 0

    def center(self) -> frozenset[int]:
        return frozenset({0, self.m})


class Symmetric(FiniteGroup):
    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"S(n) needs n >= 1, got {n}")
        if n > SYMMETRIC_SPECTRUM_CAP:
            raise TooLarge(n, SYMMETRIC_SPECTRUM_CAP, "symmetric degree")
        self.n = n
        self.order = math.factorial(n)

    def spec(self) -> str:
        return f"S({self.n})"

    def _check_materializable(self) -> None:
        if self.n > SYMMETRIC_ELEMENT_CAP:
            raise TooLarge(self.n, SYMMETRIC_ELEMENT_CAP, "symmetric degree")

    def _keep(self, perm: tuple[int, ...]) -> bool:
        return True

    @cached_property
    def perms(self) -> list[tuple[int, ...]]:
        self._check_materializable()
        return [p for p in itertools.permutations(range(self.n)) if self._keep(p)]

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {p: i for i, p in enumerate(self.perms)}

    def element_order(self, i: int) -> int:
        return _perm_order(self.perms[i])

    def multiply(self, a: int, b: int) -> int:
        p, q = self.perms[a], self.perms[b]
        return self._index[tuple(p[j] for j in q)]

    def index_of(self, perm: Sequence[int]) -> int:
        return self._index[tuple(perm)]

    def label(self, i: int) -> str:
        cyc = [c for c in _cycles(self.perms[i]) if len(c) > 1]
        if not cyc:
            return "()"
        return "".join("(" + " ".join(str(j + 1) for j in c) + ")" for c in cyc)

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        return _partition_spectrum(self.n, even_only=False)

    def is_nilpotent(self) -> bool:
        return self.n <= 2

    def center(self) -> frozenset[int]:
        return frozenset(range(self.order)) if self.n <= 2 else frozenset({0})

    def center_order(self) -> int:
        return self.order if self.n <= 2 else 1


class Alternating(Symmetric):
    def __init__(self, n: int):
        super().__init__(n)
        self.order = max(1, math.factorial(n) // 2)

    def spec(self) -> str:
        return f"A({self.n})"

    def _keep(self, perm: tuple[int, ...]) -> bool:
        return _perm_is_even(perm)

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        return _partition_spectrum(self.n, even_only=True)

    def is_nilpotent(self) -> bool:
        return self.n <= 3

    def center(self) -> frozenset[int]:
        return frozenset(range(self.order)) if self.n <= 3 else frozenset({0})

    def center_order(self) -> int:
        return self.order if self.n <= 3 else 1


class DirectProduct(FiniteGroup):
    def __init__(self, factors: Iterable[FiniteGroup]):
        self.factors = tuple(factors)
        if not self.factors:
            raise ValueError("direct product needs at least one factor")
        self.order = math.prod(f.order for f in self.factors)
        self._strides = []
        stride = self.order
        for f in self.factors:
            stride //= f.order
            self._strides.append(stride)

    def spec(self) -> str:
        return "x".join(f.spec() for f in self.factors)

    def components(self, i: int) -> tuple[int, ...]:
        return tuple((i // s) % f.order for f, s in zip(self.factors, self._strides))

    def compose(self, parts: Sequence[int]) -> int:
        return sum(p * s for p, s in zip(parts, self._strides))

    def element_order(self, i: int) -> int:
        return reduce(
            math.lcm, (f.element_order(c) for f, c in zip(self.factors, self.components(i))), 1
        )

    @cached_property
    def _element_orders(self) -> list[int]:
        per_factor = [f.element_orders() for f in self.factors]
        return [reduce(math.lcm, combo, 1) for combo in itertools.product(*per_factor)]

    def multiply(self, a: int, b: int) -> int:
        return self.compose(
            [f.multiply(x, y) for f, x, y in zip(self.factors, self.components(a), self.components(b))]
        )

    def label(self, i: int) -> str:
        return "(" + ", ".join(f.label(c) for f, c in zip(self.factors, self.components(i))) + ")"

    @cached_property
    def _spectrum(self) -> OrderSpectrum:
        return reduce(lambda s, f: s.lcm_convolve(f.order_spectrum()), self.factors, OrderSpectrum({1: 1}))

    def is_nilpotent(self) -> bool:
        return all(f.is_nilpotent() for f in self.factors)

    def center(self) -> frozenset[int]:
        centers = [sorted(f.center()) for f in self.factors]
        return frozenset(self.compose(c) for c in itertools.product(*centers))

    def center_order(self) -> int:
        return math.prod(f.center_order() for f in self.factors)


class CayleyTableGroup(FiniteGroup):
    """A group given extensionally. Build through :func:`validate_cayley_table`."""

    def __init__(self, table: np.ndarray, name: str | None = None):
        self.table = table
        self.order = table.shape[0]
        self.name = name

    def spec(self) -> str:
        return self.name or f"table({self.order})"

    def multiply(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def cayley_table(self) -> np.ndarray:
        return self.table

    @cached_property
    def _orders_array(self) -> np.ndarray:
        n = self.order
        ids = np.arange(n)
        orders = np.zeros(n, dtype=np.int64)
        power = ids.copy()
        for k in range(1, n + 1):
            hit = (power == 0) & (orders == 0)
            orders[hit] = k
            if orders.all():
                break
            power = self.table[power, ids]
        return orders

    def element_order(self, i: int) -> int:
        return int(self._orders_array[i])

    @cached_property
    def _element_orders(self) -> list[int]:
        return [int(o) for o in self._orders_array]

    def is_nilpotent(self) -> bool:
        # nilpotent iff the p-elements form a subgroup for every prime p
        orders = self._orders_array
        for p in self.primes():
            members = np.flatnonzero([o == 1 or (int(o) % p == 0 and is_prime_power(int(o))) for o in orders])
            inside = np.zeros(self.order, dtype=bool)
            inside[members] = True
            if not inside[self.table[np.ix_(members, members)]].all():
                return False
        return True

    def center(self) -> frozenset[int]:
        t = self.table
        return frozenset(int(c) for c in range(self.order) if np.array_equal(t[c, :], t[:, c]))


def _find_generators(t: np.ndarray) -> list[int]:
    """Greedy generating set whose right-multiplication closure is everything."""
    n = t.shape[0]
    reached = np.zeros(n, dtype=bool)
    reached[0] = True
    gens: list[int] = []
    while not reached.all():
        g = int(np.flatnonzero(~reached)[0])
        gens.append(g)
        frontier = np.flatnonzero(reached)
        while frontier.size:
            products = np.unique(t[np.ix_(frontier, gens)].ravel())
            fresh = products[~reached[products]]
            reached[fresh] = True
            frontier = fresh
    return gens


def _check_associative(t: np.ndarray, seed: int = 0) -> None:
    n = t.shape[0]
    if n <= EXHAUSTIVE_ASSOC_LIMIT:
        for a in range(n):
            left = t[t[a]]  # [b, c] -> (ab)c
            right = t[a][t]  # [b, c] -> a(bc)
            bad = np.argwhere(left != right)
            if bad.size:
                b, c = (int(v) for v in bad[0])
                raise NotAGroup("operation is not associative", (a, b, c))
        return
    # Light's test: x(gy) == (xg)y for every generator g
    for g in _find_generators(t):
        left = t[:, t[g]]
        right = t[t[:, g]]
        bad = np.argwhere(left != right)
        if bad.size:
            x, y = (int(v) for v in bad[0])
            raise NotAGroup("operation is not associative", (x, g, y))
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, RANDOM_ASSOC_TRIPLES))
    bad = np.flatnonzero(t[t[a, b], c] != t[a, t[b, c]])
    if bad.size:
        i = bad[0]
        raise NotAGroup("operation is not associative", (int(a[i]), int(b[i]), int(c[i])))


def validate_cayley_table(table, name: str | None = None) -> CayleyTableGroup:
    """Check the group axioms on a square multiplication table.

    Element 0 must be the identity. Associativity is checked exhaustively up
    to 512 elements; larger tables use Light's test on a generating set plus
    random triples.
    """
    try:
        t = np.asarray(table, dtype=np.int64)
    except (TypeError, ValueError) as exc:
        raise NotAGroup(f"table is not a rectangular integer array: {exc}") from None
    if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
        raise NotAGroup(f"table must be a non-empty square array, got shape {t.shape}")
    n = t.shape[0]
    if n > MATERIALIZE_CAP:
        raise TooLarge(n, MATERIALIZE_CAP, "Cayley table")
    out = np.argwhere((t < 0) | (t >= n))
    if out.size:
        a, b = (int(v) for v in out[0])
        raise NotAGroup(f"entry {int(t[a, b])} out of range [0, {n})", (a, b))

    ids = np.arange(n)
    identities = [
        e for e in range(n) if np.array_equal(t[e], ids) and np.array_equal(t[:, e], ids)
    ]
    if not identities:
        raise NotAGroup("no two-sided identity")
    if identities[0] != 0:
        raise NotAGroup(f"identity must be element 0, found element {identities[0]}", (identities[0],))

    for a in range(n):
        right = np.flatnonzero(t[a] == 0)
        if not any(t[b, a] == 0 for b in right):
            raise NotAGroup(f"no inverse for element {a}", (a,))

    _check_associative(t)
    return CayleyTableGroup(t, name)


def load_cayley_json(source: str | Path | Mapping, name: str | None = None) -> CayleyTableGroup:
    """Read ``{"n": int, "table": [[int]]}`` from a path, JSON text or mapping."""
    if isinstance(source, Mapping):
        data = source
    else:
        path = Path(source)
        data = json.loads(path.read_text()) if path.exists() else json.loads(str(source))
        if name is None and path.exists():
            name = f"table:{path.name}"
    table = data["table"]
    if "n" in data and int(data["n"]) != len(table):
        raise NotAGroup(f"header says n={data['n']} but table has {len(table)} rows")
    return validate_cayley_table(table, name)


_FAMILIES = {"Z": Cyclic, "D": Dihedral, "Dic": Dicyclic, "S": Symmetric, "A": Alternating}
_TERM = re.compile(r"\s*(Dic|Z|D|S|A)\s*\(\s*(\d+)\s*\)\s*")


def parse_group_spec(text: str) -> FiniteGroup:
    """Parse ``Z(n)``, ``D(n)``, ``Dic(n)``, ``S(n)``, ``A(n)`` joined by ``x``."""
    factors: list[FiniteGroup] = []
    pos = 0
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise SpecError("expected one of Z(n), D(n), Dic(n), S(n), A(n)", text, pos)
        try:
            factors.append(_FAMILIES[m.group(1)](int(m.group(2))))
        except ValueError as exc:
            raise SpecError(str(exc), text, m.start(2)) from None
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != "x":
            raise SpecError("expected 'x' between factors", text, pos)
        pos += 1
    return factors[0] if len(factors) == 1 else DirectProduct(factors)
