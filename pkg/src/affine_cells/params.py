"""The parameter space: rational hyperplane arrangements, facets, specialisation of
generic KL data, orders built from threshold searches, and semicontinuity checks."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterable, Mapping, Sequence

from .induction import PieceData
from .kl import KLTable, cell_preorder, kl_table, validate_table
from .ordered import Gamma, Laurent, OrderedGroupSpec, WeightFunction, _primitive, neg, specialize, sub

BFG_CLASSES = ("s", "t")
C_CLASSES = ("t", "s", "t'")


@dataclass(frozen=True)
class RationalHyperplane:
    """Kernel of the linear form with the given (primitive integer) normal."""

    normal: tuple

    def __post_init__(self):
        prim = _primitive(self.normal)
        if not any(prim):
            raise ValueError("normal must be non-zero")
        object.__setattr__(self, "normal", prim)

    def value(self, point: Sequence) -> Fraction:
        return sum((Fraction(a) * Fraction(b) for a, b in zip(self.normal, point)), Fraction(0))

    def sign(self, point: Sequence) -> int:
        v = self.value(point)
        return (v > 0) - (v < 0)

    def __str__(self):
        return "H" + str(list(self.normal))


def _dedup(hyperplanes: Iterable[RationalHyperplane]) -> list[RationalHyperplane]:
    return sorted(set(hyperplanes), key=lambda h: h.normal)


def tau_closure(hyperplanes: Iterable[RationalHyperplane]) -> list[RationalHyperplane]:
    """Close under the sign changes of single coordinates."""
    out = set(hyperplanes)
    while True:
        new = set(out)
        for h in out:
            for i in range(len(h.normal)):
                n = list(h.normal)
                n[i] = -n[i]
                new.add(RationalHyperplane(tuple(n)))
        if new == out:
            return _dedup(out)
        out = new


def arrangement_BFG(m1, m2) -> list[RationalHyperplane]:
    """The six hyperplanes on (s, t): s +- m1 t, s +- m2 t, s, t."""
    m1, m2 = Fraction(m1), Fraction(m2)
    if m1 <= 0 or m2 <= 0:
        raise ValueError("constants must be positive")
    normals = [(1, m1), (1, -m1), (1, m2), (1, -m2), (1, 0), (0, 1)]
    return _dedup(RationalHyperplane(n) for n in normals)


def arrangement_C(m: Sequence, closed: bool = True) -> list[RationalHyperplane]:
    """The type C arrangement on (t, s, t') for six positive constants, closed
    under coordinate sign changes unless ``closed`` is False."""
    if len(m) != 6:
        raise ValueError("six constants are required")
    m1, m2, m3, m4, m5, m6 = (Fraction(x) for x in m)
    if min(m1, m2, m3, m4, m5, m6) <= 0:
        raise ValueError("constants must be positive")
    normals = [
        (0, 1, 0),
        (1, 0, 0),
        (0, 0, 1),
        (1, 0, -1),
        (1, -m1, 0),
        (0, -m2, 1),
        (1, -m3, -m3),
        (-m4, -m4, 1),
        (1, m5, -1),
        (1, -m5, -1),
        (1, -m6, 1),
    ]
    hs = [RationalHyperplane(n) for n in normals]
    return tau_closure(hs) if closed else _dedup(hs)


@dataclass(frozen=True)
class FacetSignVector:
    signs: tuple
    zero_classes: frozenset

    @property
    def is_chamber(self) -> bool:
        return 0 not in self.signs

    def in_closure_of(self, other: "FacetSignVector") -> bool:
        """Every non-zero sign of this facet agrees with the other one."""
        return all(a == 0 or a == b for a, b in zip(self.signs, other.signs))


def facet_of(point: Sequence, arrangement: Sequence[RationalHyperplane], classes: Sequence[str]) -> FacetSignVector:
    """Sign vector of a weight point, together with the classes whose coordinate
    hyperplane contains the facet."""
    signs = tuple(h.sign(point) for h in arrangement)
    zero = set()
    for h, sg in zip(arrangement, signs):
        if sg == 0 and sum(1 for x in h.normal if x) == 1:
            zero.add(classes[next(i for i, x in enumerate(h.normal) if x)])
    return FacetSignVector(signs, frozenset(zero))


def in_close_pair_chamber(point: Sequence, m: Sequence) -> bool:
    """L(t) > L(t'), L(t') > m2 L(s) and L(t) - L(t') < m5 L(s) on (t, s, t')."""
    t, s, tp = (Fraction(x) for x in point)
    return t > tp and tp > Fraction(m[1]) * s and t - tp < Fraction(m[4]) * s


def fold(values: Mapping[str, int]) -> dict:
    """Non-negative weight with the same cells (signs dropped)."""
    return {c: abs(v) for c, v in values.items()}


def integer_point(values: Mapping[str, object]) -> dict:
    """Scale a rational weight point to a primitive integer one."""
    keys = sorted(values)
    prim = _primitive([Fraction(values[k]) for k in keys])
    if any(Fraction(values[k]) < 0 for k in keys) and any(p > 0 for p in prim) and prim[0] * Fraction(values[keys[0]]) < 0:
        prim = tuple(-x for x in prim)
    return dict(zip(keys, prim))


# specialisation


@dataclass
class GammaPlus:
    first: set
    second: set
    third: set

    def union(self) -> set:
        return self.first | self.second | self.third

    def tagged(self) -> list:
        out = []
        for tag, items in (("P", self.first), ("M-gap", self.second), ("M-relation", self.third)):
            out.extend((tag, g) for g in sorted(items))
        return out


def gamma_plus(table: KLTable) -> GammaPlus:
    """Exponents whose positivity the specialisation must preserve."""
    alg = table.algebra
    spec = alg.spec
    W = table.W
    canon = spec.canonical if spec.kernel_basis else tuple
    first, second, third = set(), set(), set()
    for w in table.elements:
        for y, c in table.P[w].items():
            if y == w:
                continue
            for k in c.terms:
                g = canon(neg(k))
                if alg.sign(g) > 0:
                    first.add(g)
    for (s, w), col in table.M.items():
        for m in col.values():
            exps = sorted(m.terms, key=spec.key)
            for a, b in zip(exps, exps[1:]):
                g = canon(sub(b, a))
                if alg.sign(g) > 0:
                    second.add(g)
        vs = alg.v[s]
        for z1 in table.below[w]:
            if z1 == w or W.left_mul(s, z1).length > z1.length:
                continue
            e = -(table.p(z1, w) * vs)
            for z, m in col.items():
                p = table.p(z1, z)
                if p:
                    e = e + p * m
            e = alg.canon(e)
            for k in e.terms:
                g = canon(neg(k))
                if alg.sign(g) > 0:
                    third.add(g)
    return GammaPlus(first, second, third)


def theta_images(generic: WeightFunction, target: WeightFunction) -> list:
    return generic.specialize_to(target)


def _theta(g: Gamma, images: Sequence[Gamma]) -> Gamma:
    out = [0] * len(images[0])
    for x, img in zip(g, images):
        for j, y in enumerate(img):
            out[j] += x * y
    return tuple(out)


def check_specialization_gate(target: WeightFunction, gammas: Iterable[Gamma], images: Sequence[Gamma],
                              kernel: Iterable[Gamma] = ()) -> bool:
    """Every element of the set maps to a positive element of the target group
    (and the map kills the kernel of the source, so that it is well defined)."""
    spec = target.spec
    for b in kernel:
        if spec.sign(_theta(b, images)) != 0:
            return False
    return all(spec.sign(_theta(g, images)) > 0 for g in gammas)


def specialize_table(table: KLTable, target: WeightFunction, fraction: float = 0.1, seed: int = 0) -> KLTable:
    """Transport P and M through the specialisation; a random tenth of the columns
    is re-verified (bar invariance and triangularity) in the target algebra."""
    images = theta_images(table.weight, target)
    gammas = gamma_plus(table).union()
    if not check_specialization_gate(target, gammas, images, table.weight.spec.kernel_basis):
        raise ValueError("the specialisation does not preserve positivity on the table")
    tspec = target.spec

    def conv(c: Laurent) -> Laurent:
        out = specialize(c, images)
        return out.canonical(tspec) if tspec.kernel_basis else out

    P = {w: {y: conv(c) for y, c in col.items()} for w, col in table.P.items()}
    M = {}
    for key, col in table.M.items():
        if not target.is_zero_on(key[0]):
            M[key] = {y: conv(m) for y, m in col.items()}
    out = KLTable(target, table.radius, list(table.elements), P, M, dict(table.below), table.generators)
    rng = random.Random(seed)
    sample = rng.sample(out.elements, max(1, ceil(fraction * len(out.elements))))
    problems = validate_table(out, recheck=sample)
    if problems:
        raise RuntimeError(f"spot verification failed: {problems[:3]}")
    return out


# orders from threshold searches


def ratio_set(N: int) -> list[Fraction]:
    """The ratios +-k/j with 1 <= j, k <= N, sorted."""
    return sorted({Fraction(sg * k, j) for j in range(1, N + 1) for k in range(1, N + 1) for sg in (1, -1)})


def threshold(num, den, N: int) -> Fraction:
    """Largest r among 0 and the ratios with num >= r * den."""
    best = Fraction(0)
    for r in ratio_set(N):
        if r > best and Fraction(num) >= r * Fraction(den):
            best = r
    return best


def _orient(kappa: tuple, theta_value) -> tuple:
    return kappa if theta_value > 0 else tuple(-x for x in kappa)


def _with_tiebreak(forms: list, kappa: tuple, theta_value) -> list:
    # a kernel direction killed by the target weight is identified with zero
    if theta_value != 0:
        forms.append(_orient(kappa, theta_value))
    return forms


def order_from_claim(claim: str, values: Mapping[str, int], N: int) -> OrderedGroupSpec:
    """Order on the class lattice adapted to a regime of the target weight.

    Constructions: ``lex`` (two classes, one dominating the other by the factor
    N), ``t-dominant`` (L(t) > N L(s) + N L(t')), ``s-dominant`` (L(s) > N L(t)
    + N L(t')), ``t-pair-apart`` (L(t), L(t') > N^2 L(s) and L(t) - L(t') >
    N L(s)) and ``t-pair-close`` (L(t), L(t') > N^2 L(s)).
    ``values`` is the integer target weight by class.  A final form breaking
    ties inside the kernel of the constructed forms is added with the sign of
    the target weight on that kernel; when the target weight vanishes there the
    kernel is divided out instead.
    """
    v = {k: Fraction(x) for k, x in values.items()}
    if claim == "lex":
        s, t = v["s"], v["t"]
        if s > N * t:
            return OrderedGroupSpec(2, ((1, 0), (0, 1)), BFG_CLASSES, frozenset({"s"}))
        if t > N * s:
            return OrderedGroupSpec(2, ((0, 1), (1, 0)), BFG_CLASSES, frozenset({"t"}))
        raise ValueError("neither class dominates the other by the factor N")
    t, s, tp = v["t"], v["s"], v["t'"]
    if claim == "t-dominant":
        if not t > N * s + N * tp:
            raise ValueError("L(t) > N L(s) + N L(t') fails")
        r = threshold(s, tp, N)
        b, c = r.numerator, r.denominator
        forms = [(1, 0, 0), (0, b, c)]
        forms = _with_tiebreak(forms, (0, -c, b), -c * s + b * tp)
        plus = {"t"}
    elif claim == "s-dominant":
        if not s > N * t + N * tp:
            raise ValueError("L(s) > N L(t) + N L(t') fails")
        r = threshold(t, tp, N)
        a, c = r.numerator, r.denominator
        forms = [(0, 1, 0), (a, 0, c)]
        forms = _with_tiebreak(forms, (-c, 0, a), -c * t + a * tp)
        plus = {"s"}
    elif claim == "t-pair-apart":
        if not (t > N * N * s and tp > N * N * s and t - tp > N * s):
            raise ValueError("hypotheses L(t), L(t') > N^2 L(s) and L(t) - L(t') > N L(s) fail")
        forms = [(1, 0, 1), (1, 0, 0), (0, 1, 0)]
        plus = {"t", "t'"}
    elif claim == "t-pair-close":
        if not (t > N * N * s and tp > N * N * s):
            raise ValueError("hypotheses L(t), L(t') > N^2 L(s) fail")
        r = threshold(t - tp, s, N)
        d, b = r.numerator, r.denominator
        forms = [(1, 0, 1), (d, b, 0)]
        forms = _with_tiebreak(forms, (b, -d, -b), b * (t - tp) - d * s)
        plus = {"t", "t'"}
    else:
        raise ValueError(f"unknown construction {claim}")
    spec = OrderedGroupSpec(3, tuple(forms), C_CLASSES, frozenset(plus))
    if not spec.is_plus_admissible():
        raise ValueError("constructed order is not admissible")
    return spec


def threshold_form_check(construction: str, spec: OrderedGroupSpec, values: Mapping[str, int], N: int) -> list:
    """Grid points where the second form is positive but the target weight is not.

    Only meaningful for the threshold constructions.
    """
    v = values
    phi = spec.forms[1]
    bad = []
    rng = range(-N, N + 1)
    for j in rng:
        for k in rng:
            if construction == "t-dominant":
                g, target = (0, j, k), v["s"] * j + v["t'"] * k
            elif construction == "s-dominant":
                g, target = (j, 0, k), v["t"] * j + v["t'"] * k
            elif construction == "t-pair-close":
                g, target = (j, k, -j), (v["t"] - v["t'"]) * j + v["s"] * k
            else:
                raise ValueError(f"no threshold form for construction {construction}")
            if sum(a * b for a, b in zip(phi, g)) > 0 and not target > 0:
                bad.append(g)
    return bad


def certify_order(construction: str, group, values: Mapping[str, int], N: int, radius: int) -> dict:
    """Build the order, fill the generic table on the ball and run the gate."""
    spec = order_from_claim(construction, values, N)
    generic = WeightFunction.generic(group, spec)
    target = WeightFunction.integer(group, values)
    table = kl_table(generic, radius)
    gp = gamma_plus(table)
    images = theta_images(generic, target)
    ok = check_specialization_gate(target, gp.union(), images, spec.kernel_basis)
    return {"construction": construction, "spec": spec, "table": table, "gamma_plus": gp, "gate": ok}


def gamma_bound_ok(gp: GammaPlus, N: int) -> bool:
    """All coordinates lie in [-N, N]."""
    return all(-N <= x <= N for g in gp.union() for x in g)


# semicontinuity


def semicontinuity_check(facet: WeightFunction, chamber: WeightFunction, radius: int,
                         arrangement: Sequence[RationalHyperplane] | None = None,
                         table: KLTable | None = None) -> dict:
    """Each left piece of the facet's lowest cell is a union of left classes of the
    chamber weight on the ball, and the lowest cell a union of two-sided classes."""
    W = facet.group
    classes = C_CLASSES if W.type_label == "C" else BFG_CLASSES
    fpt = [facet.values[c][0] for c in classes]
    cpt = [chamber.values[c][0] for c in classes]
    if arrangement is not None:
        if not facet_of(fpt, arrangement, classes).in_closure_of(facet_of(cpt, arrangement, classes)):
            raise ValueError("the facet weight is not in the closure of the chamber weight's facet")
    if table is None:
        table = kl_table(chamber, radius)
    left = cell_preorder(table, "left")
    two = cell_preorder(table, "two-sided")
    data = PieceData(facet, table.elements)
    pieces = []
    for i in sorted(data.pieces):
        p = data.pieces[i]
        meeting = sorted({left.class_of[w] for w in p.members})
        pieces.append({
            "sigma": i,
            "b": str(p.b),
            "size": len(p.members),
            "chamber_classes": meeting,
            "ok": left.is_union_of_classes(p.members),
        })
    cmin = set(data.piece_of)
    cmin_ok = two.is_union_of_classes(cmin)
    return {
        "facet": dict(zip(classes, fpt)),
        "chamber": dict(zip(classes, cpt)),
        "ball_N": radius,
        "pieces": pieces,
        "cmin_size": len(cmin),
        "cmin_union_of_two_sided": cmin_ok,
        "truncations": len(left.truncated),
        "ok": all(p["ok"] for p in pieces) and cmin_ok,
    }
