"""The lowest two-sided cell: geometric and algebraic membership, left pieces, decompositions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .geometry import Quarter, WeightedGeometry
from .group import AffineWeylGroup, Element
from .ordered import WeightFunction, add
from .roots import coordinates, dot, mat_vec, solve_in_span, vadd, vscale


def geometry_of(L) -> WeightedGeometry:
    return L if isinstance(L, WeightedGeometry) else WeightedGeometry(L)


def wmax_set(L) -> list[Element]:
    return geometry_of(L).wmax


def in_cmin_geometric(w: Element, L) -> bool:
    return geometry_of(L).in_cmin(w)


# algebraic descriptions


class AlgebraicMembership:
    """Membership in the lowest cell through factorizations w = x.u.y with additive weights.

    ``description`` "A" takes u among the finite-parabolic elements of maximal
    weight, "B" takes u = w_I for the vertex stabilisers of maximal weight.
    The search for x runs over a ball of radius l(w) + max l(w_J) (J inside the
    zero-weight generators), which contains a witness whenever one exists.
    """

    def __init__(self, L, description: str = "A"):
        self.G = geometry_of(L)
        self.W = self.G.W
        self.L = self.G.L
        if description == "A":
            self.targets = list(self.G.wmax)
        elif description == "B":
            self.targets = list(self.G.special_longest)
        else:
            raise ValueError("description must be 'A' or 'B'")
        self.description = description
        zero = self.L.zero_generators
        slack = 0
        for sub in self.W.finite_subsets():
            if sub <= zero:
                slack = max(slack, self.W.longest(sub).length)
        self.slack = slack
        self._balls: dict[int, list[Element]] = {}
        self._hits: dict[Element, bool] = {}

    def _ball(self, radius: int) -> list[Element]:
        if radius not in self._balls:
            self._balls[radius] = self.W.ball(radius)
        return self._balls[radius]

    def _left_divide(self, x: Element, w: Element) -> Element:
        """x^-1 w, by applying the letters of x on the left."""
        cur = w
        for s in x.word:
            cur = self.W.left_mul(s, cur)
        return cur

    def _has_target_prefix(self, z: Element) -> bool:
        hit = self._hits.get(z)
        if hit is None:
            Lz = self.L(z)
            hit = False
            for u in self.targets:
                y = self._left_divide(u, z)
                if self.G.spec.compare(add(self.L(u), self.L(y)), Lz) == 0:
                    hit = True
                    break
            self._hits[z] = hit
        return hit

    def factor(self, w: Element):
        """Some (x, u, y) with w = x u y and additive weights, or None."""
        spec = self.G.spec
        Lw = self.L(w)
        for x in self._ball(w.length + self.slack):
            z = self._left_divide(x, w)
            if spec.compare(add(self.L(x), self.L(z)), Lw) != 0:
                continue
            if self._has_target_prefix(z):
                for u in self.targets:
                    y = self._left_divide(u, z)
                    if spec.compare(add(self.L(u), self.L(y)), self.L(z)) == 0:
                        return x, u, y
        return None

    def __call__(self, w: Element) -> bool:
        return self.factor(w) is not None


def in_cmin_algebraic(w: Element, L, description: str = "A") -> bool:
    return AlgebraicMembership(L, description)(w)


# left pieces


@dataclass
class SigmaCell:
    quarter: Quarter
    b_sigma: Element
    s_lambda: frozenset
    w_circ: Element
    members: list = field(default_factory=list)

    @property
    def vertex(self):
        return self.quarter.vertex


@dataclass(frozen=True)
class CminDecomposition:
    x: Element
    a: Element
    w_circ: Element
    b: Element
    sigma: int

    def product(self) -> Element:
        W = self.b.group
        return W.multiply(W.multiply(W.multiply(self.x, self.a), self.w_circ), self.b)


class LowestCell:
    """Lowest two-sided cell of an affine Weyl group for a non-negative weight."""

    def __init__(self, L):
        self.G = geometry_of(L)
        self.W: AffineWeylGroup = self.G.W
        self.L = self.G.L
        self._b: dict[int, tuple] = {}

    def contains(self, w: Element) -> bool:
        return self.G.in_cmin(w)

    def b_sigma(self, q: Quarter) -> tuple[Element, frozenset]:
        """Minimal element with the quarter vertex in the closure of its alcove,
        and the wall types through that vertex."""
        hit = self._b.get(q.index)
        if hit is not None:
            return hit
        W = self.W
        lam = q.vertex
        vertices = set(W.vertices.values())
        for attempt in range(30):
            eps = Fraction(1, 10 ** (1 + attempt // 6) * (1 + attempt % 6))
            # the chamber direction may lie on unweighted hyperplanes, so tilt it
            d = vadd(q.direction, vscale(Fraction(1, 97), W._generic_point(attempt)))
            if not q.in_chamber(d):
                continue
            try:
                z = W.element_containing(vadd(lam, vscale(eps, d)))
            except ValueError:
                continue
            mu = W.inverse(z).apply(lam)
            if mu in vertices and W.in_fundamental(mu, closed=True):
                types = frozenset(s for s, (f, n) in W.walls.items() if dot(mu, f) == n)
                b = W.strip_left(z, types)
                self._b[q.index] = (b, types)
                return b, types
        raise RuntimeError("could not locate the alcove at the quarter vertex")

    def sigma_cell(self, q: Quarter) -> SigmaCell:
        b, types = self.b_sigma(q)
        wc = self.W.w_circ(types, self.L.zero_generators)
        return SigmaCell(q, b, types, wc)

    def sigma_cells(self, elements: Iterable[Element]) -> list[SigmaCell]:
        cells = [self.sigma_cell(q) for q in self.G.quarters]
        for w in elements:
            hits = [c for c in cells if c.quarter.contains(w.point)]
            if len(hits) > 1:
                raise RuntimeError(f"{w} lies in two shifted quarters")
            if hits:
                hits[0].members.append(w)
        return cells

    def decompose(self, w: Element) -> CminDecomposition:
        q = self.G.quarter_of(w)
        if q is None:
            raise ValueError(f"{w} is not in the lowest cell")
        return self.decompose_at(w, q)

    def decompose_at(self, w: Element, q: Quarter) -> CminDecomposition:
        """Factor w = x a w_circ b with x minimal in x W_lambda and a in the zero-weight part."""
        W = self.W
        b, types = self.b_sigma(q)
        zero = types & self.L.zero_generators
        v = W.multiply(w, W.inverse(b))
        if v.length + b.length != w.length:
            raise ValueError("w does not end with b_sigma")
        x = W.strip_right(v, types)
        z = W.multiply(W.inverse(x), v)
        if not set(z.word) <= types:
            raise ValueError("middle factor is not in the vertex stabiliser")
        wc = W.w_circ(types, self.L.zero_generators)
        a = W.multiply(z, W.inverse(wc))
        if not set(a.word) <= zero or a.length + wc.length != z.length:
            raise ValueError("middle factor does not end with w_circ")
        return CminDecomposition(x, a, wc, b, q.index)

    def in_piece_algebraic(self, w: Element, q: Quarter) -> bool:
        try:
            self.decompose_at(w, q)
        except ValueError:
            return False
        return True


def decompose_cmin(w: Element, L) -> CminDecomposition:
    return LowestCell(L).decompose(w)


def sigma_cells(L, radius: int) -> list[SigmaCell]:
    cell = LowestCell(L)
    return cell.sigma_cells(cell.W.ball(radius))


# semidirect decomposition


class TildeSystem:
    """The coarse affine Weyl group whose hyperplanes are the positively weighted ones."""

    def __init__(self, L):
        self.G = geometry_of(L)
        self.W = self.G.W
        forms = self.G.tilde_forms
        self.group = AffineWeylGroup.from_forms(forms, "W~")
        # scaled form -> original form and scale
        self._origin = {}
        for f in self.G.phi_L:
            b = self.G.coarse_level(f)
            self._origin[vscale(Fraction(1, b), f)] = (f, b)
        vals = {}
        for g, (ft, n) in self.group.walls.items():
            f, b = self._origin[ft]
            vals[g] = self.G.hyperplane_weight(f, n * b)
        classes = {}
        for g, v in vals.items():
            c = self.group.class_of[g]
            if c in classes and classes[c] != v:
                raise RuntimeError("conjugate tilde generators received different weights")
            classes[c] = v
        self.weight = WeightFunction(self.group, classes, self.G.spec)
        self.geometry = WeightedGeometry(self.weight)

    def to_tilde(self, w: Element) -> Element:
        """The coarse element sending the coarse fundamental alcove to the one containing wA0."""
        return self.group.element_containing(w.point)

    def to_original(self, g: Element) -> Element:
        return self.W.from_affine(g.matrix, g.shift)

    def strips_agree(self) -> bool:
        """The maximal strips around the two fundamental alcoves coincide."""
        mine = {(f, lo, hi) for f, lo, hi in self.G.base_strips}
        theirs = set()
        for ft, lo, hi in self.geometry.base_strips:
            f, b = self._origin[ft]
            theirs.add((f, lo * b, hi * b))
        return mine == theirs


def cmin_semidirect_check(L, radius: int) -> dict:
    """Compare the lowest cell on a ball with the coarse group's lowest cell, both ways."""
    G = geometry_of(L)
    W = G.W
    zero = G.L.zero_generators
    W.check_split(zero)
    ball = W.ball(radius)
    report = {"radius": radius, "zero": sorted(zero), "mismatches": [], "length_mismatches": []}
    if not zero:
        cm = [w for w in ball if G.in_cmin(w)]
        report.update(size=len(cm), ok=True)
        return report
    tilde = TildeSystem(G)
    report["strips_agree"] = tilde.strips_agree()
    finite = W.parabolic(zero)
    count = 0
    for w in ball:
        w0, wt = W.semidirect_factor(w, zero)
        g = tilde.to_tilde(wt)
        back = tilde.to_original(g)
        if back != wt:
            report["mismatches"].append(str(w))
            continue
        # coarse length counts positively weighted hyperplanes
        if g.length != len(G.positive_separating(W.identity, wt)):
            report["length_mismatches"].append(str(w))
        direct = G.in_cmin(w)
        via = tilde.geometry.in_cmin(g)
        count += direct
        if direct != via:
            report["mismatches"].append(str(w))
    # the other inclusion: W0 . (coarse lowest cell) stays inside
    coarse_ball = tilde.group.ball(radius)
    for g in coarse_ball:
        if not tilde.geometry.in_cmin(g):
            continue
        wt = tilde.to_original(g)
        for a in finite:
            w = W.multiply(a, wt)
            if w.length <= radius and not G.in_cmin(w):
                report["mismatches"].append(str(w))
    report["size"] = count
    report["ok"] = not report["mismatches"] and not report["length_mismatches"] and report["strips_agree"]
    return report


# the finite case analysis behind the additivity of the decomposition


def claim3prime(L) -> dict:
    """For each sign pattern of the weighted simple forms, check that the quarter vertex
    pairs with every unweighted form whose zero hyperplane meets the dominant chamber
    either integrally or inside the unit interval on the expected side."""
    G = geometry_of(L)
    W = G.W
    sysL = G.weighted_system
    delta = sysL.simple
    phiL = set(G.phi_L)
    crossing = []
    for g in W.forms.roots:
        if g in phiL:
            continue
        co = coordinates(delta, g)
        if any(c > 0 for c in co) and any(c < 0 for c in co):
            crossing.append(g)
    failures = []
    pairings = {}
    for k, sigma in enumerate(G.omega0):
        plus = [W.forms.is_positive(mat_vec(sigma, d)) for d in delta]
        rhs = []
        for d, pos in zip(delta, plus):
            if not pos:
                rhs.append(0)
            else:
                rhs.append(1 if G.spec.compare(G.hyperplane_weight(d, 0), G.hyperplane_weight(d, 1)) == 0 else 2)
        lam = solve_in_span(delta, rhs)
        for g in crossing:
            val = dot(lam, g)
            img_pos = W.forms.is_positive(mat_vec(sigma, g))
            ok = val.denominator == 1 or (0 < val < 1 if img_pos else -1 < val < 0)
            pairings.setdefault(str([str(x) for x in g]), set()).add(val)
            if not ok:
                failures.append({"sigma": k, "form": [str(x) for x in g], "pairing": str(val)})
    return {
        "crossing": sorted(tuple(str(x) for x in g) for g in crossing),
        "patterns": len({tuple(W.forms.is_positive(mat_vec(s, d)) for d in delta) for s in G.omega0}),
        "failures": failures,
        "pairings": {k: sorted(str(v) for v in vs) for k, vs in sorted(pairings.items())},
        "ok": not failures,
    }


def vertex_pairing_direct(L) -> dict:
    """The unsimplified statement: for every quarter and every positive form whose zero
    hyperplane meets the quarter's chamber, the vertex pairing is integral or in (0, 1)."""
    G = geometry_of(L)
    W = G.W
    failures = []
    for q in G.quarters:
        for f in W.positive_forms:
            if not _hyperplane_meets_chamber(f, q):
                continue
            val = dot(q.vertex, f)
            if not (val.denominator == 1 or 0 < val < 1):
                failures.append({"sigma": q.index, "form": [str(x) for x in f], "pairing": str(val)})
    return {"failures": failures, "ok": not failures}


def _hyperplane_meets_chamber(f, q: Quarter) -> bool:
    # the open simplicial cone meets {(x, f) = 0} iff f has mixed signs on its rays
    walls = [vscale(sg, w) for w, sg in zip(q.walls, q.signs)]
    rays = []
    for i in range(len(walls)):
        rhs = [0] * len(walls)
        rhs[i] = 1
        rays.append(solve_in_span(walls, rhs))
    vals = [dot(r, f) for r in rays]
    return any(v > 0 for v in vals) and any(v < 0 for v in vals)
