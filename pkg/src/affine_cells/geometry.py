"""Weighted hyperplane geometry: hyperplane weights, special points, strips, quarters."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import ceil, floor
from typing import Sequence

from .group import AffineWeylGroup, Element
from .ordered import Gamma, WeightFunction, add
from .roots import (
    RootSystemData,
    Vector,
    coordinates,
    dot,
    from_roots,
    mat_vec,
    reflection_group,
    solve_in_span,
    vadd,
    vneg,
    vscale,
)

Hyperplane = tuple  # (form, level)


@dataclass(frozen=True)
class SpecialPoint:
    point: Vector
    s_lambda: frozenset
    weight: Gamma  # L_lambda
    element: Element  # some z with the point in the closure of zA0


@dataclass(frozen=True)
class Quarter:
    """A Weyl chamber of the weighted root system and its shifted copy.

    ``walls[i]`` is a positive form, ``signs[i]`` is +1 when the chamber lies
    on its positive side; the shifted region is ``(x, f) > levels[i]`` for
    +1 and ``(x, f) < 0`` for -1.
    """

    index: int
    sigma: tuple
    walls: tuple
    signs: tuple
    levels: tuple
    vertex: Vector
    direction: Vector

    def contains(self, x: Sequence) -> bool:
        for f, sg, b in zip(self.walls, self.signs, self.levels):
            v = dot(x, f)
            if sg > 0 and not v > b:
                return False
            if sg < 0 and not v < 0:
                return False
        return True

    def in_chamber(self, x: Sequence) -> bool:
        return all(sg * dot(x, f) > 0 for f, sg in zip(self.walls, self.signs))


class WeightedGeometry:
    """Hyperplane data of an affine Weyl group under a non-negative weight function."""

    def __init__(self, weight: WeightFunction):
        if not weight.non_negative:
            raise ValueError("weight function must be non-negative")
        self.L = weight
        self.W: AffineWeylGroup = weight.group
        self.spec = weight.spec

    # hyperplane weights

    def hyperplane_weight(self, f: Vector, n: int) -> Gamma:
        return self.L.values[self.W.face_class(f, n)]

    def form_weight(self, f: Vector) -> Gamma:
        """Largest weight of a hyperplane orthogonal to f (types repeat with period two)."""
        f = self._positive(f)
        return self.spec.max([self.hyperplane_weight(f, 0), self.hyperplane_weight(f, 1)])

    def is_maximal(self, f: Vector, n: int) -> bool:
        f, n = self._normalize(f, n)
        return self.spec.compare(self.hyperplane_weight(f, n), self.form_weight(f)) == 0

    def _positive(self, f: Vector) -> Vector:
        return f if self.W.forms.is_positive(f) else vneg(f)

    def _normalize(self, f: Vector, n: int):
        return (f, n) if self.W.forms.is_positive(f) else (vneg(f), -n)

    @cached_property
    def phi_L(self) -> list[Vector]:
        """Forms whose hyperplanes carry positive weight (both signs)."""
        return [f for f in self.W.forms.roots if self.spec.sign(self.form_weight(f)) > 0]

    @cached_property
    def phi_L_positive(self) -> list[Vector]:
        return [f for f in self.phi_L if self.W.forms.is_positive(f)]

    def weight_by_hyperplanes(self, w: Element) -> Gamma:
        """Sum of L_H over hyperplanes separating A0 from wA0."""
        total = self.L.zero
        for f, n in self.W.separating(self.W.identity, w):
            total = add(total, self.hyperplane_weight(f, n))
        return total

    def positive_separating(self, a: Element, b: Element) -> set:
        return {h for h in self.W.separating(a, b) if self.spec.sign(self.hyperplane_weight(*h)) > 0}

    def is_additive(self, seq: Sequence[Element]) -> bool:
        """Weight of the product equals the sum of the weights (geometric pairwise test)."""
        W = self.W
        if len(seq) <= 1:
            return True
        # fold from the right: (x_1, x_2 ... x_k) is additive iff the tail is and the head adds on
        tail = seq[-1]
        for x in reversed(seq[:-1]):
            if not self.pair_additive(x, tail):
                return False
            tail = W.multiply(x, tail)
        return True

    def pair_additive(self, x: Element, y: Element) -> bool:
        W = self.W
        xy = W.multiply(x, y)
        return not (self.positive_separating(W.identity, y) & self.positive_separating(y, xy))

    # finite parabolics and nu

    @cached_property
    def nu(self) -> Gamma:
        W = self.W
        best = self.L.zero
        for sub in W.finite_subsets():
            val = self.L(W.longest(sub))
            if self.spec.compare(val, best) > 0:
                best = val
        return best

    @cached_property
    def finite_part(self) -> list[Element]:
        """Union of all finite standard parabolic subgroups."""
        W = self.W
        seen = {}
        for sub in W.finite_subsets():
            for w in W.parabolic(sub):
                seen[w] = None
        return sorted(seen)

    @cached_property
    def wmax(self) -> list[Element]:
        nu = self.nu
        return [w for w in self.finite_part if self.spec.compare(self.L(w), nu) == 0]

    @cached_property
    def special_longest(self) -> list[Element]:
        """w_I for the vertex stabilisers (|I| = rank) with weight nu."""
        W = self.W
        out = []
        for sub in W.finite_subsets():
            if len(sub) == W.rank and self.spec.compare(self.L(W.longest(sub)), self.nu) == 0:
                out.append(W.longest(sub))
        return sorted(set(out))

    # vertices and special points

    def vertex_weight(self, lam: Sequence) -> Gamma:
        total = self.L.zero
        for f in self.W.positive_forms:
            v = dot(lam, f)
            if v.denominator == 1:
                total = add(total, self.hyperplane_weight(f, int(v)))
        return total

    def vertices_in_box(self, lo, hi) -> list[Vector]:
        W = self.W
        if not W._irreducible:
            raise ValueError("vertex enumeration needs an irreducible group")
        lo, hi = Fraction(lo), Fraction(hi)
        weyl = reflection_group(W.forms.simple, W.dim)
        orbit = set()
        for v in W.vertices.values():
            for g in weyl:
                orbit.add(mat_vec(g, v))
        reach = max((abs(c) for o in orbit for c in o), default=Fraction(0))
        cof = [vscale(Fraction(2) / dot(f, f), f) for f in W.forms.simple]
        zero = tuple(Fraction(0) for _ in range(W.dim))
        seen = {zero}
        frontier = [zero]
        while frontier:
            nxt = []
            for t in frontier:
                for c in cof:
                    for u in (vadd(t, c), vadd(t, vneg(c))):
                        if u not in seen and all(lo - reach <= x <= hi + reach for x in u):
                            seen.add(u)
                            nxt.append(u)
            frontier = nxt
        pts = set()
        for t in seen:
            for o in orbit:
                p = vadd(t, o)
                if all(lo <= x <= hi for x in p):
                    pts.add(p)
        return sorted(pts)

    def vertex_data(self, lam: Sequence) -> tuple[frozenset, Element]:
        """Types of the walls through a vertex and an element whose alcove has it in its closure."""
        W = self.W
        lam = tuple(Fraction(x) for x in lam)
        for attempt in range(40):
            d = W._generic_point(attempt)
            eps = Fraction(1, 10 ** (2 + attempt // 8) * (1 + attempt % 8))
            try:
                z = W.element_containing(vadd(lam, vscale(eps, d)))
            except ValueError:
                continue
            pp = W.inverse(z).apply(lam)
            if W.in_fundamental(pp, closed=True) and pp in set(W.vertices.values()):
                on = frozenset(s for s, (f, n) in W.walls.items() if dot(pp, f) == n)
                return on, z
        raise RuntimeError("could not place the vertex")

    def special_points(self, lo=-1, hi=1) -> list[SpecialPoint]:
        out = []
        for lam in self.vertices_in_box(lo, hi):
            wt = self.vertex_weight(lam)
            if self.spec.compare(wt, self.nu) == 0:
                sub, z = self.vertex_data(lam)
                out.append(SpecialPoint(lam, sub, wt, z))
        return out

    def is_special_by_lattice(self, lam: Sequence) -> bool:
        """Lattice description of special points (integral pairings, or the coroot
        lattice of the weighted forms in type C with L(t) > L(t'))."""
        W = self.W
        if W.type_label == "C" and self.spec.compare(self.L.values["t"], self.L.values["t'"]) > 0:
            gens = [vscale(Fraction(2) / dot(f, f), f) for f in self.phi_L_positive]
            # membership in the Z-span: coordinates in a basis of the span must be integral
            basis = _lattice_basis(gens)
            try:
                co = coordinates(basis, tuple(Fraction(x) for x in lam))
            except ValueError:
                return False
            return all(c.denominator == 1 for c in co)
        return all(dot(lam, f).denominator == 1 for f in self.phi_L_positive)

    # strips

    def maximal_levels(self, f: Vector) -> tuple[bool, bool]:
        """Whether even and odd levels of the form f carry the maximal weight."""
        return self.is_maximal(f, 0), self.is_maximal(f, 1)

    def strip(self, f: Vector, x: Sequence) -> tuple[int, int]:
        """Consecutive maximal-weight levels of f around the point x (not on a maximal hyperplane)."""
        even, odd = self.maximal_levels(f)
        v = dot(x, f)
        lo = floor(v)
        if v == lo:
            lo -= 1
        while not ((lo % 2 == 0 and even) or (lo % 2 == 1 and odd)):
            lo -= 1
        hi = ceil(v)
        if hi == v:
            hi += 1
        while not ((hi % 2 == 0 and even) or (hi % 2 == 1 and odd)):
            hi += 1
        return lo, hi

    @cached_property
    def base_strips(self) -> list[tuple[Vector, int, int]]:
        p0 = self.W.p0
        return [(f, *self.strip(f, p0)) for f in self.phi_L_positive]

    def in_strips(self, w: Element) -> bool:
        """wA0 lies inside the union of the maximal strips around A0."""
        p = w.point
        return any(lo < dot(p, f) < hi for f, lo, hi in self.base_strips)

    def in_cmin(self, w: Element) -> bool:
        if not self.phi_L:
            return True
        return not self.in_strips(w)

    # quarters

    @cached_property
    def weighted_system(self) -> RootSystemData:
        if not self.phi_L:
            raise ValueError("no positively weighted forms")
        return from_roots(self.phi_L, self.phi_L_positive, "L")

    @cached_property
    def omega0(self) -> list:
        sysL = self.weighted_system
        return reflection_group(sysL.simple, self.W.dim)

    @cached_property
    def quarters(self) -> list[Quarter]:
        sysL = self.weighted_system
        delta = sysL.simple
        if len(delta) != self.W.rank:
            raise ValueError("weighted forms do not span the space")
        c1 = solve_in_span(delta, [1] * len(delta))
        out = []
        for k, sigma in enumerate(self.omega0):
            walls, signs, levels, rhs = [], [], [], []
            for d in delta:
                img = mat_vec(sigma, d)
                if self.W.forms.is_positive(img):
                    beta, sg = img, 1
                else:
                    beta, sg = vneg(img), -1
                if sg > 0:
                    b = 1 if self.spec.compare(self.hyperplane_weight(beta, 0), self.hyperplane_weight(beta, 1)) == 0 else 2
                else:
                    b = 0
                walls.append(beta)
                signs.append(sg)
                levels.append(b)
                rhs.append(b)
            vertex = solve_in_span(walls, rhs)
            direction = mat_vec(sigma, c1)
            out.append(Quarter(k, sigma, tuple(walls), tuple(signs), tuple(levels), vertex, direction))
        return out

    def quarter_of(self, w: Element) -> Quarter | None:
        p = w.point
        hits = [q for q in self.quarters if q.contains(p)]
        if len(hits) > 1:
            raise RuntimeError("shifted quarters overlap")
        return hits[0] if hits else None

    # coarse (positively weighted) arrangement

    def coarse_level(self, f: Vector) -> int:
        """Smallest n > 0 such that H_{f,n} carries positive weight."""
        f = self._positive(f)
        for n in (1, 2):
            if self.spec.sign(self.hyperplane_weight(f, n)) > 0:
                return n
        raise ValueError("form carries no positive weight")

    @cached_property
    def tilde_forms(self) -> RootSystemData:
        """Forms f / b_f whose integer levels are exactly the positive-weight hyperplanes."""
        roots = [vscale(Fraction(1, self.coarse_level(f)), f) for f in self.phi_L]
        pos = [vscale(Fraction(1, self.coarse_level(f)), f) for f in self.phi_L_positive]
        return from_roots(roots, pos, "tilde")


def _lattice_basis(gens: Sequence[Vector]) -> list[Vector]:
    """A Z-basis of the lattice spanned by rational vectors of full rank (via sympy HNF)."""
    import sympy
    from sympy.matrices.normalforms import hermite_normal_form

    den = 1
    for g in gens:
        for x in g:
            den = den * x.denominator // __import__("math").gcd(den, x.denominator)
    mat = sympy.Matrix([[int(x * den) for x in g] for g in gens]).T
    h = hermite_normal_form(mat)
    basis = []
    for j in range(h.shape[1]):
        col = tuple(Fraction(int(h[i, j]), den) for i in range(h.shape[0]))
        if any(col):
            basis.append(col)
    return basis
