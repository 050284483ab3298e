"""Finite root systems in exact rational coordinates.

Each root ``f`` is used as a linear form: the affine hyperplanes of the group
built on it are ``{x : (x, f) = n}``.  Types B, C and F use the usual
epsilon-coordinates, type A lives in Q^(n+1) and G2 in the plane
``x1 + x2 + x3 = 0`` of Q^3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Sequence

import sympy

Vector = tuple  # tuple[Fraction, ...]


def vec(*xs) -> Vector:
    return tuple(Fraction(x) for x in xs)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vadd(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> Vector:
    return tuple(c * x for x in a)


def vneg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def solve_in_span(basis: Sequence[Vector], rhs: Sequence) -> Vector:
    """The vector x in span(basis) with (x, basis[i]) = rhs[i] for all i."""
    n = len(basis)
    gram = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(dot(basis[i], basis[j]))))
    sol = gram.LUsolve(sympy.Matrix([sympy.Rational(str(Fraction(r))) for r in rhs]))
    coeffs = [Fraction(int(c.p), int(c.q)) for c in sol]
    dim = len(basis[0])
    out = [Fraction(0)] * dim
    for c, b in zip(coeffs, basis):
        for k in range(dim):
            out[k] += c * b[k]
    return tuple(out)


def coordinates(basis: Sequence[Vector], x: Vector) -> tuple[Fraction, ...]:
    """Coefficients of ``x`` in ``basis`` (x must lie in the span)."""
    n = len(basis)
    gram = sympy.Matrix(n, n, lambda i, j: sympy.Rational(str(dot(basis[i], basis[j]))))
    rhs = sympy.Matrix([sympy.Rational(str(dot(b, x))) for b in basis])
    sol = gram.LUsolve(rhs)
    coeffs = tuple(Fraction(int(c.p), int(c.q)) for c in sol)
    back = [Fraction(0)] * len(x)
    for c, b in zip(coeffs, basis):
        for k in range(len(x)):
            back[k] += c * b[k]
    if tuple(back) != tuple(x):
        raise ValueError("vector is not in the span of the basis")
    return coeffs


def reflect(x: Vector, f: Vector, n=0) -> Vector:
    """Reflection of the point x in the hyperplane (x, f) = n."""
    c = (dot(x, f) - n) * 2 / dot(f, f)
    return tuple(a - c * b for a, b in zip(x, f))


@dataclass(frozen=True)
class RootSystemData:
    type_label: str
    rank: int
    roots: tuple[Vector, ...]
    positive: tuple[Vector, ...]
    simple: tuple[Vector, ...]
    # one entry per irreducible component: (indices into simple, highest root)
    components: tuple[tuple[tuple[int, ...], Vector], ...]

    @property
    def dim(self) -> int:
        return len(self.roots[0])

    @property
    def highest(self) -> Vector:
        if len(self.components) != 1:
            raise ValueError("reducible system has one highest root per component")
        return self.components[0][1]

    def coroot(self, f: Vector) -> Vector:
        return vscale(Fraction(2) / dot(f, f), f)

    def pairing(self, x: Vector, f: Vector) -> Fraction:
        """<x, f-check> = 2 (x, f) / (f, f)."""
        return 2 * dot(x, f) / dot(f, f)

    def cartan_matrix(self) -> list[list[int]]:
        out = []
        for a in self.simple:
            row = []
            for b in self.simple:
                v = self.pairing(a, b)
                if v.denominator != 1:
                    raise ValueError("non-integral Cartan entry")
                row.append(int(v))
            out.append(row)
        return out

    def is_positive(self, f: Vector) -> bool:
        return f in self._positive_set

    @property
    def _positive_set(self) -> frozenset:
        cached = self.__dict__.get("_pos_cache")
        if cached is None:
            cached = frozenset(self.positive)
            object.__setattr__(self, "_pos_cache", cached)
        return cached

    def simple_coordinates(self, f: Vector) -> tuple[Fraction, ...]:
        return coordinates(self.simple, f)

    def long_roots(self) -> list[Vector]:
        top = max(dot(r, r) for r in self.roots)
        return [r for r in self.roots if dot(r, r) == top]

    def short_roots(self) -> list[Vector]:
        top = max(dot(r, r) for r in self.roots)
        return [r for r in self.roots if dot(r, r) != top]


def _unit(dim: int, i: int, c=1) -> Vector:
    return tuple(Fraction(c) if k == i else Fraction(0) for k in range(dim))


def _pm_pairs(n: int) -> list[Vector]:
    out = []
    for i, j in combinations(range(n), 2):
        for a, b in product((1, -1), repeat=2):
            v = [Fraction(0)] * n
            v[i], v[j] = Fraction(a), Fraction(b)
            out.append(tuple(v))
    return out


def from_roots(roots: Iterable[Vector], positive: Iterable[Vector] | None = None, type_label: str = "?") -> RootSystemData:
    """Root system data from an explicit (possibly reducible) set of roots.

    ``positive`` defaults to the roots on which a fixed generic functional is
    positive.
    """
    roots = tuple(sorted(set(tuple(Fraction(x) for x in r) for r in roots)))
    if positive is None:
        dim = len(roots[0])
        c = tuple(Fraction(1, 97 ** k) for k in range(dim))
        if any(dot(r, c) == 0 for r in roots):
            raise ValueError("generic functional vanishes on a root")
        positive = [r for r in roots if dot(r, c) > 0]
    positive = tuple(sorted(set(tuple(Fraction(x) for x in r) for r in positive)))
    pos_set = set(positive)
    if len(positive) * 2 != len(roots) or any(vneg(r) in pos_set for r in positive):
        raise ValueError("not a positive system")
    decomposable = set()
    for a, b in combinations(positive, 2):
        s = vadd(a, b)
        if s in pos_set:
            decomposable.add(s)
    simple = tuple(r for r in positive if r not in decomposable)
    return _finish(type_label, roots, positive, simple)


def _finish(type_label, roots, positive, simple) -> RootSystemData:
    # connected components of the Dynkin graph
    n = len(simple)
    comp = list(range(n))

    def find(i):
        while comp[i] != i:
            comp[i] = comp[comp[i]]
            i = comp[i]
        return i

    for i, j in combinations(range(n), 2):
        if dot(simple[i], simple[j]) != 0:
            comp[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    height = solve_in_span(simple, [1] * n)
    components = []
    for idx in sorted(groups.values()):
        inside = []
        for r in positive:
            co = coordinates(simple, r)
            if all(co[k] == 0 for k in range(n) if k not in idx):
                inside.append(r)
        top = max(inside, key=lambda r: dot(r, height))
        components.append((tuple(idx), top))
    data = RootSystemData(type_label, n, tuple(roots), tuple(positive), tuple(simple), tuple(components))
    for r in positive:
        co = coordinates(simple, r)
        if any(c < 0 or c.denominator != 1 for c in co):
            raise ValueError("positive root is not a non-negative integer combination of simple roots")
    return data


def build_root_system(type_label: str, rank: int) -> RootSystemData:
    """Crystallographic root system of the given type, with a fixed simple system.

    Simple roots are listed in the order used to name the affine generators.
    """
    t = type_label.upper()
    n = rank
    if t == "A" and n >= 1:
        dim = n + 1
        roots = [vsub(_unit(dim, i), _unit(dim, j)) for i in range(dim) for j in range(dim) if i != j]
        simple = [vsub(_unit(dim, i), _unit(dim, i + 1)) for i in range(n)]
    elif t == "B" and n >= 2:
        roots = _pm_pairs(n) + [_unit(n, i, c) for i in range(n) for c in (1, -1)]
        simple = [vsub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)] + [_unit(n, n - 1)]
    elif t == "C" and n >= 1:
        roots = _pm_pairs(n) + [_unit(n, i, c) for i in range(n) for c in (2, -2)]
        simple = [vsub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)] + [_unit(n, n - 1, 2)]
    elif t == "F" and n == 4:
        half = Fraction(1, 2)
        roots = _pm_pairs(4) + [_unit(4, i, c) for i in range(4) for c in (1, -1)]
        roots += [tuple(half * s for s in signs) for signs in product((1, -1), repeat=4)]
        simple = [vec(0, 1, -1, 0), vec(0, 0, 1, -1), vec(0, 0, 0, 1), vec(half, -half, -half, -half)]
    elif t == "G" and n == 2:
        short = [vsub(_unit(3, i), _unit(3, j)) for i in range(3) for j in range(3) if i != j]
        long_ = []
        for i in range(3):
            for sgn in (1, -1):
                v = [Fraction(-sgn)] * 3
                v[i] = Fraction(2 * sgn)
                long_.append(tuple(v))
        roots = short + long_
        simple = [vec(1, -1, 0), vec(-2, 1, 1)]
    else:
        raise ValueError(f"unsupported root system {type_label}{rank}")
    height = solve_in_span(simple, [1] * len(simple))
    positive = [r for r in roots if dot(r, height) > 0]
    roots = tuple(sorted(set(roots)))
    return _finish(t, roots, tuple(sorted(positive)), tuple(simple))


# linear reflection groups

Matrix = tuple  # tuple of row tuples of Fractions


def reflection_matrix(f: Vector) -> Matrix:
    dim = len(f)
    ff = dot(f, f)
    return tuple(
        tuple((Fraction(1) if i == j else Fraction(0)) - 2 * f[i] * f[j] / ff for j in range(dim))
        for i in range(dim)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    m = len(b[0])
    k = len(b)
    return tuple(tuple(sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(m)) for i in range(n))


def mat_vec(a: Matrix, x: Sequence) -> Vector:
    return tuple(sum((row[j] * x[j] for j in range(len(x))), Fraction(0)) for row in a)


def identity(dim: int) -> Matrix:
    return tuple(tuple(Fraction(1) if i == j else Fraction(0) for j in range(dim)) for i in range(dim))


def reflection_group(generators: Sequence[Vector], dim: int) -> list[Matrix]:
    """All elements of the (finite) group generated by reflections in the given roots."""
    gens = [reflection_matrix(f) for f in generators]
    start = identity(dim)
    seen = {start}
    frontier = [start]
    order = [start]
    while frontier:
        nxt = []
        for g in frontier:
            for r in gens:
                h = mat_mul(r, g)
                if h not in seen:
                    seen.add(h)
                    nxt.append(h)
                    order.append(h)
        frontier = nxt
    return order
