"""Totally ordered weight groups, Laurent polynomials over them, weight functions.

Exponents are plain integer tuples of length ``m``.  An :class:`OrderedGroupSpec`
orders them lexicographically by the values of a sequence of integer linear
forms; two exponents whose difference is killed by every form are identified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

import sympy

Gamma = tuple  # tuple[int, ...]


class _MinusInfinity:
    """Degree of the zero polynomial; strictly below every exponent."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "MinusInfinity"


MinusInfinity = _MinusInfinity()


def _primitive(vec: Sequence) -> tuple[int, ...]:
    """Scale a rational vector to a primitive integer vector (first non-zero entry positive)."""
    fr = [Fraction(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def _integer_echelon(rows: list[list[int]]) -> list[tuple[int, ...]]:
    """Row-echelon basis over the integers (positive pivots, reduced above)."""
    rows = [list(r) for r in rows if any(r)]
    if not rows:
        return []
    m = len(rows[0])
    basis: list[list[int]] = []
    col = 0
    while rows and col < m:
        live = [r for r in rows if r[col] != 0]
        if not live:
            col += 1
            continue
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[col]))
            piv = live[0]
            for r in live[1:]:
                q = r[col] // piv[col]
                for k in range(m):
                    r[k] -= q * piv[k]
            live = [r for r in live if r[col] != 0]
        piv = live[0]
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        basis.append(piv)
        rows = [r for r in rows if r is not piv and any(r)]
        col += 1
    for i, b in enumerate(basis):
        p = next(k for k, x in enumerate(b) if x)
        for a in basis[:i]:
            q = a[p] // b[p]
            for k in range(m):
                a[k] -= q * b[k]
    return [tuple(b) for b in basis]


@dataclass(frozen=True)
class OrderedGroupSpec:
    """A total order on Z^m given by a sequence of integer linear forms.

    ``classes`` names the coordinates (one per conjugacy class of generators)
    and ``plus`` lists the classes treated as the positive part when
    projecting.
    """

    rank: int
    forms: tuple[tuple[int, ...], ...]
    classes: tuple[str, ...] = ()
    plus: frozenset = frozenset()
    kernel_basis: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        forms = tuple(tuple(int(x) for x in f) for f in self.forms)
        if not forms:
            raise ValueError("at least one form is required")
        for f in forms:
            if len(f) != self.rank:
                raise ValueError(f"form {f} does not have length {self.rank}")
        object.__setattr__(self, "forms", forms)
        if self.classes and len(self.classes) != self.rank:
            raise ValueError("one class name per coordinate is required")
        object.__setattr__(self, "plus", frozenset(self.plus))
        # every form must be non-zero on the common kernel of the previous ones
        for k in range(1, len(forms)):
            kernel = sympy.Matrix(forms[:k]).nullspace()
            if not any(sum(a * b for a, b in zip(forms[k], v)) != 0 for v in kernel):
                raise ValueError(f"form {k + 1} vanishes on the kernel of the previous forms")
        null = sympy.Matrix(forms).nullspace()
        kernel = _integer_echelon([list(_primitive(list(v))) for v in null])
        object.__setattr__(self, "kernel_basis", tuple(kernel))

    # construction helpers

    @classmethod
    def integers(cls) -> "OrderedGroupSpec":
        """The usual order on Z (specialised integer weights)."""
        return cls(1, ((1,),))

    @classmethod
    def lex(cls, classes: Sequence[str], order: Sequence[str] | None = None, plus=()) -> "OrderedGroupSpec":
        """Lexicographic order on Z^m, comparing coordinates in ``order``."""
        order = list(order or classes)
        forms = []
        for name in order:
            forms.append(tuple(1 if c == name else 0 for c in classes))
        return cls(len(classes), tuple(forms), tuple(classes), frozenset(plus))

    # core queries

    def check(self, g: Gamma) -> None:
        if len(g) != self.rank:
            raise ValueError(f"exponent {g} does not have length {self.rank}")

    def key(self, g: Gamma) -> tuple[int, ...]:
        """Values of the forms on ``g``; lexicographic order on keys is the group order."""
        return tuple(sum(a * b for a, b in zip(f, g)) for f in self.forms)

    def canonical(self, g: Gamma) -> Gamma:
        """Representative of ``g`` modulo the kernel lattice."""
        self.check(g)
        if not self.kernel_basis:
            return tuple(g)
        g = list(g)
        for b in self.kernel_basis:
            p = next(k for k, x in enumerate(b) if x)
            q = g[p] // b[p]
            g = [x - q * y for x, y in zip(g, b)]
        return tuple(g)

    def compare(self, a, b) -> int:
        """-1, 0 or 1 according as a < b, a = b, a > b.  Accepts MinusInfinity."""
        if a is MinusInfinity or b is MinusInfinity:
            if a is b:
                return 0
            return -1 if a is MinusInfinity else 1
        self.check(a)
        self.check(b)
        d = tuple(x - y for x, y in zip(a, b))
        for v in self.key(d):
            if v:
                return 1 if v > 0 else -1
        return 0

    def sign(self, g: Gamma) -> int:
        return self.compare(g, self.zero)

    def is_positive(self, g: Gamma) -> bool:
        return self.sign(g) > 0

    def max(self, items: Iterable):
        best = MinusInfinity
        for g in items:
            if self.compare(g, best) > 0:
                best = g
        return best

    @property
    def zero(self) -> Gamma:
        return (0,) * self.rank

    # positive and zero parts

    def _mask(self, keep_plus: bool) -> tuple[bool, ...]:
        if not self.classes:
            raise ValueError("spec carries no class partition")
        return tuple((c in self.plus) == keep_plus for c in self.classes)

    def project_plus(self, g: Gamma) -> Gamma:
        """Zero the coordinates of the zero-weight classes."""
        return tuple(x if keep else 0 for x, keep in zip(g, self._mask(True)))

    def project_circ(self, g: Gamma) -> Gamma:
        """Zero the coordinates of the positive classes."""
        return tuple(x if keep else 0 for x, keep in zip(g, self._mask(False)))

    def is_plus_admissible(self) -> bool:
        """First form is the sum of the positive-class coordinates and every class is positive.

        The requirement that every later form be positive on every class is
        not imposed (see the notes): the standard three-form order for type C
        with ``t*+t'*, t*, s*`` already has a second form vanishing on ``s``.
        """
        if not self.classes:
            return False
        expected = tuple(1 if c in self.plus else 0 for c in self.classes)
        if self.forms[0] != expected:
            return False
        for i in range(self.rank):
            unit = tuple(1 if j == i else 0 for j in range(self.rank))
            if not self.is_positive(unit):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "forms": [list(f) for f in self.forms],
            "classes": list(self.classes),
            "plus": sorted(self.plus),
            "kernel_basis": [list(b) for b in self.kernel_basis],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "OrderedGroupSpec":
        return cls(
            data["rank"],
            tuple(tuple(f) for f in data["forms"]),
            tuple(data.get("classes", ())),
            frozenset(data.get("plus", ())),
        )


def add(a: Gamma, b: Gamma) -> Gamma:
    return tuple(x + y for x, y in zip(a, b))


def neg(a: Gamma) -> Gamma:
    return tuple(-x for x in a)


def sub(a: Gamma, b: Gamma) -> Gamma:
    return tuple(x - y for x, y in zip(a, b))


class Laurent:
    """Finitely supported Z-combination of ``v**gamma``; immutable.

    The representation does not depend on an order, so ``deg`` takes the order as an argument.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Mapping[Gamma, int] | None = None):
        self.terms = {tuple(k): int(c) for k, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def monomial(cls, exp: Gamma, coeff: int = 1) -> "Laurent":
        return cls({tuple(exp): coeff})

    @classmethod
    def one(cls, rank: int) -> "Laurent":
        return cls({(0,) * rank: 1})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Laurent):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __add__(self, other: "Laurent") -> "Laurent":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Laurent(out)

    def __neg__(self) -> "Laurent":
        return Laurent({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other) -> "Laurent":
        if isinstance(other, int):
            return Laurent({k: c * other for k, c in self.terms.items()})
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                k = tuple(x + y for x, y in zip(k1, k2))
                out[k] = out.get(k, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def shift(self, exp: Gamma) -> "Laurent":
        """Multiply by ``v**exp``."""
        return Laurent({tuple(x + y for x, y in zip(k, exp)): c for k, c in self.terms.items()})

    def bar(self) -> "Laurent":
        return Laurent({tuple(-x for x in k): c for k, c in self.terms.items()})

    def exponents(self) -> list[Gamma]:
        return list(self.terms)

    def canonical(self, spec: OrderedGroupSpec) -> "Laurent":
        out: dict = {}
        for k, c in self.terms.items():
            kk = spec.canonical(k)
            out[kk] = out.get(kk, 0) + c
        return Laurent(out)

    def sorted_terms(self, spec: OrderedGroupSpec) -> list[tuple[Gamma, int]]:
        """Terms in increasing exponent order."""
        return sorted(self.terms.items(), key=lambda kc: spec.key(kc[0]))

    def to_json(self) -> list:
        return [[list(k), c] for k, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "Laurent":
        return cls({tuple(k): c for k, c in data})

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for k, c in sorted(self.terms.items()):
            parts.append(f"{c}*v^{list(k) if len(k) > 1 else k[0]}")
        return " + ".join(parts)


def deg(a: Laurent, spec: OrderedGroupSpec):
    """Largest exponent of ``a`` under ``spec``; MinusInfinity for zero."""
    return spec.max(a.terms) if a.terms else MinusInfinity


def deg_plus(a: Laurent, spec: OrderedGroupSpec):
    d = deg(a, spec)
    return d if d is MinusInfinity else spec.project_plus(d)


def is_strictly_negative(a: Laurent, spec: OrderedGroupSpec) -> bool:
    """True iff every exponent of ``a`` is < 0 (the zero polynomial qualifies)."""
    return all(spec.sign(k) < 0 for k in a.terms)


def negative_by_first_form(a: Laurent, spec: OrderedGroupSpec) -> bool:
    """Sufficient test: the first form is negative on the positive part of the degree."""
    d = deg_plus(a, spec)
    if d is MinusInfinity:
        return True
    return sum(x * y for x, y in zip(spec.forms[0], d)) < 0


def negative_by_bound(a: Laurent, spec: OrderedGroupSpec, bound: Gamma) -> bool:
    """Sufficient test: positive part of the degree is at most a fixed negative bound."""
    d = deg_plus(a, spec)
    if d is MinusInfinity:
        return True
    if spec.sign(bound) >= 0:
        raise ValueError("bound must be negative")
    return spec.compare(d, bound) <= 0


def nonnegative_part(a: Laurent, spec: OrderedGroupSpec) -> Laurent:
    return Laurent({k: c for k, c in a.terms.items() if spec.sign(k) >= 0})


def specialize(a: Laurent, images: Sequence[Gamma]) -> Laurent:
    """Apply the homomorphism sending the i-th basis vector to ``images[i]``."""
    out: dict = {}
    for k, c in a.terms.items():
        t = [0] * len(images[0])
        for x, img in zip(k, images):
            if x:
                for j, y in enumerate(img):
                    t[j] += x * y
        t = tuple(t)
        out[t] = out.get(t, 0) + c
    return Laurent(out)


class WeightFunction:
    """Assignment of an exponent to each conjugacy class of generators.

    ``group`` is any object exposing ``generators`` and ``class_of`` (a map
    from generator name to class name); the affine Weyl groups of
    :mod:`affine_cells.group` do.
    """

    def __init__(self, group, values: Mapping[str, Sequence[int] | int], spec: OrderedGroupSpec | None = None):
        self.group = group
        vals = {}
        for c, v in values.items():
            vals[c] = (int(v),) if isinstance(v, int) else tuple(int(x) for x in v)
        classes = sorted(set(group.class_of.values()))
        missing = set(classes) - set(vals)
        if missing:
            raise ValueError(f"no value for classes {sorted(missing)}")
        extra = set(vals) - set(classes)
        if extra:
            raise ValueError(f"unknown classes {sorted(extra)}")
        if spec is None:
            spec = OrderedGroupSpec.integers()
        for v in vals.values():
            spec.check(v)
        self.values = vals
        self.spec = spec
        self.rank = spec.rank
        self._gen = {s: vals[group.class_of[s]] for s in group.generators}
        if group.type_label == "C" and "t'" in vals:
            if spec.compare(vals["t"], vals["t'"]) < 0:
                raise ValueError("type C weights must satisfy L(t) >= L(t')")
        self._cache: dict = {}

    @classmethod
    def integer(cls, group, values: Mapping[str, int]) -> "WeightFunction":
        return cls(group, {k: (int(v),) for k, v in values.items()}, OrderedGroupSpec.integers())

    @classmethod
    def generic(cls, group, spec: OrderedGroupSpec) -> "WeightFunction":
        """Each class sent to its own basis vector (classes ordered as in ``spec``)."""
        vals = {}
        for i, c in enumerate(spec.classes):
            vals[c] = tuple(1 if j == i else 0 for j in range(spec.rank))
        return cls(group, vals, spec)

    @classmethod
    def length(cls, group) -> "WeightFunction":
        return cls.integer(group, {c: 1 for c in set(group.class_of.values())})

    def gen(self, s: str) -> Gamma:
        return self._gen[s]

    @property
    def zero(self) -> Gamma:
        return self.spec.zero

    def of_word(self, word: Iterable[str]) -> Gamma:
        total = [0] * self.rank
        for s in word:
            for i, x in enumerate(self._gen[s]):
                total[i] += x
        return tuple(total)

    def __call__(self, w) -> Gamma:
        """Weight of a group element (sum over a reduced word)."""
        hit = self._cache.get(w)
        if hit is None:
            hit = self.of_word(w.word)
            self._cache[w] = hit
        return hit

    def compare(self, a, b) -> int:
        return self.spec.compare(a, b)

    def is_zero_on(self, s: str) -> bool:
        return self.spec.sign(self._gen[s]) == 0

    @property
    def zero_generators(self) -> frozenset:
        return frozenset(s for s in self.group.generators if self.is_zero_on(s))

    @property
    def positive_generators(self) -> frozenset:
        return frozenset(s for s in self.group.generators if self.spec.sign(self._gen[s]) > 0)

    @property
    def non_negative(self) -> bool:
        return all(self.spec.sign(v) >= 0 for v in self.values.values())

    @property
    def positive(self) -> bool:
        return all(self.spec.sign(v) > 0 for v in self.values.values())

    def v(self, s: str) -> Laurent:
        return Laurent.monomial(self._gen[s])

    def specialize_to(self, target: "WeightFunction") -> list[Gamma]:
        """Images of the basis vectors for the map sending this (generic) weight to ``target``.

        Requires the values of ``self`` to be the basis vectors.
        """
        images = [None] * self.rank
        for c, v in self.values.items():
            if sorted(v) != [0] * (self.rank - 1) + [1]:
                raise ValueError("source weight is not generic")
            images[v.index(1)] = target.values[c]
        return images

    def key(self) -> dict:
        return {"values": {c: list(v) for c, v in sorted(self.values.items())}, "spec": self.spec.to_json()}

    def __repr__(self):
        vals = ", ".join(f"{c}={list(v) if len(v) > 1 else v[0]}" for c, v in sorted(self.values.items()))
        return f"WeightFunction({vals})"
