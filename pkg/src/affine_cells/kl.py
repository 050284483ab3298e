"""Hecke algebra arithmetic, Kazhdan-Lusztig polynomials on length balls and cell preorders.

Everything is exact.  Coefficients are :class:`Laurent` polynomials whose
exponents live in the ordered group of the weight function; when that group
is a proper quotient of Z^m, coefficients are kept in canonical form.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

import networkx as nx

from .geometry import WeightedGeometry
from .group import AffineWeylGroup, Element
from .ordered import Laurent, OrderedGroupSpec, WeightFunction, add, deg, neg, sub


class HeckeElement:
    """Finite combination of basis elements ``T_w`` (or ``C_w``) with Laurent coefficients."""

    __slots__ = ("terms", "basis")

    def __init__(self, terms: Mapping[Element, Laurent] | None = None, basis: str = "T"):
        if basis not in ("T", "C"):
            raise ValueError("basis must be 'T' or 'C'")
        self.terms = {w: c for w, c in (terms or {}).items() if c}
        self.basis = basis

    def _check(self, other: "HeckeElement"):
        if other.basis != self.basis:
            raise ValueError("cannot mix T-basis and C-basis expansions")

    def __add__(self, other: "HeckeElement") -> "HeckeElement":
        self._check(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out[w] + c if w in out else c
        return HeckeElement(out, self.basis)

    def __neg__(self) -> "HeckeElement":
        return HeckeElement({w: -c for w, c in self.terms.items()}, self.basis)

    def __sub__(self, other: "HeckeElement") -> "HeckeElement":
        return self + (-other)

    def scale(self, a: Laurent) -> "HeckeElement":
        return HeckeElement({w: c * a for w, c in self.terms.items()}, self.basis)

    def coefficient(self, w: Element) -> Laurent:
        return self.terms.get(w, Laurent())

    def support(self) -> list[Element]:
        return sorted(self.terms)

    def canonical(self, spec: OrderedGroupSpec) -> "HeckeElement":
        if not spec.kernel_basis:
            return self
        return HeckeElement({w: c.canonical(spec) for w, c in self.terms.items()}, self.basis)

    def __eq__(self, other):
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"({c}) {self.basis}[{w}]" for w, c in sorted(self.terms.items()))


class HeckeAlgebra:
    """The generic Iwahori-Hecke algebra of an affine Weyl group for a weight function."""

    def __init__(self, L: WeightFunction):
        self.L = L
        self.W: AffineWeylGroup = L.group
        self.spec = L.spec
        self.one = Laurent.one(L.rank)
        self.v = {s: Laurent.monomial(L.gen(s)) for s in self.W.generators}
        self.v_inv = {s: Laurent.monomial(neg(L.gen(s))) for s in self.W.generators}
        # v_s - v_s^-1 vanishes exactly when L(s) = 0
        self.diff = {s: self.v[s] - self.v_inv[s] for s in self.W.generators}
        self._bar_T: dict[Element, HeckeElement] = {}
        self._sign: dict = {}

    # ring helpers

    def sign(self, g) -> int:
        hit = self._sign.get(g)
        if hit is None:
            hit = self.spec.sign(g)
            self._sign[g] = hit
        return hit

    def canon(self, a: Laurent) -> Laurent:
        return a.canonical(self.spec) if self.spec.kernel_basis else a

    def is_negative(self, a: Laurent) -> bool:
        """``a`` lies in A_{<0}."""
        return all(self.sign(k) < 0 for k in a.terms)

    def nonnegative_part(self, a: Laurent) -> Laurent:
        return Laurent({k: c for k, c in a.terms.items() if self.sign(k) >= 0})

    def negative_part(self, a: Laurent) -> Laurent:
        return Laurent({k: c for k, c in a.terms.items() if self.sign(k) < 0})

    def symmetrize(self, r: Laurent) -> Laurent:
        """The bar-invariant element congruent to ``r`` modulo A_{<0}."""
        pos = {k: c for k, c in r.terms.items() if self.sign(k) >= 0}
        out = dict(pos)
        for k, c in pos.items():
            if self.sign(k) > 0:
                nk = neg(k)
                out[nk] = out.get(nk, 0) + c
        return self.canon(Laurent(out))

    # T-basis arithmetic

    def T(self, w: Element, coeff: Laurent | None = None) -> HeckeElement:
        return HeckeElement({w: coeff if coeff is not None else self.one})

    def scalar(self, a: Laurent) -> HeckeElement:
        return HeckeElement({self.W.identity: a})

    def gen_times(self, s: str, h: HeckeElement) -> HeckeElement:
        """T_s * h for h in the T-basis."""
        W = self.W
        out: dict[Element, Laurent] = {}
        d = self.diff[s]
        for y, c in h.terms.items():
            sy = W.left_mul(s, y)
            out[sy] = out[sy] + c if sy in out else c
            if sy.length < y.length and d:
                e = c * d
                out[y] = out[y] + e if y in out else e
        return HeckeElement(out).canonical(self.spec)

    def times_gen(self, h: HeckeElement, s: str) -> HeckeElement:
        """h * T_s for h in the T-basis."""
        W = self.W
        out: dict[Element, Laurent] = {}
        d = self.diff[s]
        for y, c in h.terms.items():
            ys = W.right_mul(y, s)
            out[ys] = out[ys] + c if ys in out else c
            if ys.length < y.length and d:
                e = c * d
                out[y] = out[y] + e if y in out else e
        return HeckeElement(out).canonical(self.spec)

    def t_multiply(self, x: HeckeElement, y: HeckeElement) -> HeckeElement:
        """Product in the T-basis, expanding each T_w of ``x`` letter by letter."""
        if x.basis != "T" or y.basis != "T":
            raise ValueError("t_multiply works in the T-basis")
        total = HeckeElement()
        for w, a in x.terms.items():
            cur = y
            for s in reversed(w.word):
                cur = self.gen_times(s, cur)
            total = total + cur.scale(a)
        return total.canonical(self.spec)

    def structure_constants(self, x: Element, y: Element) -> dict[Element, Laurent]:
        """The coefficients f_{x,y,z} of T_x T_y = sum_z f_{x,y,z} T_z."""
        return dict(self.t_multiply(self.T(x), self.T(y)).terms)

    # bar involution

    def bar_T(self, w: Element) -> HeckeElement:
        """bar(T_w) = T_{w^-1}^{-1}, expanded in the T-basis."""
        hit = self._bar_T.get(w)
        if hit is not None:
            return hit
        if w is self.W.identity:
            hit = self.T(w)
        else:
            s = w.word[0]
            rest = self.bar_T(self.W.left_mul(s, w))
            # T_s^-1 = T_s - (v_s - v_s^-1)
            hit = self.gen_times(s, rest) - rest.scale(self.diff[s])
            hit = hit.canonical(self.spec)
        self._bar_T[w] = hit
        return hit

    def bar(self, h: HeckeElement) -> HeckeElement:
        if h.basis != "T":
            raise ValueError("bar works in the T-basis")
        total = HeckeElement()
        for w, a in h.terms.items():
            total = total + self.bar_T(w).scale(self.canon(a.bar()))
        return total.canonical(self.spec)

    def C_gen(self, s: str) -> HeckeElement:
        """C_s in the T-basis: T_s + v_s^-1 for L(s) > 0 and T_s for L(s) = 0."""
        h = self.T(self.W.gen(s))
        if self.diff[s]:
            h = h + self.scalar(self.v_inv[s])
        return h

    def reduce_mod_negative(self, h: HeckeElement) -> HeckeElement:
        """Drop every term lying in H_{<0}."""
        return HeckeElement({w: self.nonnegative_part(c) for w, c in h.terms.items()}, h.basis)


def canonical_element_oracle(alg: HeckeAlgebra, w: Element) -> HeckeElement:
    """C_w computed from the bar involution alone, without the KL recursions.

    Writing bar(T_y) = sum_x r_{x,y} T_x, the coefficients satisfy
    p_x - bar(p_x) = sum_{x<y<=w} r_{x,y} bar(p_y); since p_x has only negative
    exponents it is the negative part of the right-hand side.  Elements x are
    processed by decreasing length.
    """
    p: dict[Element, Laurent] = {w: alg.one}
    pending = {x: None for x in alg.bar_T(w).terms if x != w}
    while pending:
        x = max(pending, key=lambda u: (u.length, u.sort_key))
        del pending[x]
        q = Laurent()
        for y, py in p.items():
            if y.length > x.length:
                r = alg.bar_T(y).terms.get(x)
                if r:
                    q = q + r * alg.canon(py.bar())
        px = alg.negative_part(alg.canon(q))
        if px:
            p[x] = px
            for z in alg.bar_T(x).terms:
                if z != x and z not in p:
                    pending[z] = None
    return HeckeElement(p)


# Kazhdan-Lusztig tables


@dataclass
class KLTable:
    """P- and M-polynomials for every element of a length ball.

    ``P[w]`` maps y to P_{y,w} (only non-zero entries); ``M[(s, w)]`` maps y to
    M^s_{y,w} for the generators s with sw > w and L(s) > 0.
    """

    weight: WeightFunction
    radius: int
    elements: list
    P: dict
    M: dict
    below: dict
    generators: tuple
    algebra: HeckeAlgebra = field(repr=False, default=None)

    def __post_init__(self):
        if self.algebra is None:
            self.algebra = HeckeAlgebra(self.weight)
        self._members = set(self.elements)

    @property
    def W(self) -> AffineWeylGroup:
        return self.weight.group

    def __contains__(self, w: Element) -> bool:
        return w in self._members

    def p(self, y: Element, w: Element) -> Laurent:
        return self.P[w].get(y, Laurent())

    def m(self, s: str, y: Element, w: Element) -> Laurent:
        return self.M.get((s, w), {}).get(y, Laurent())

    def C(self, w: Element) -> HeckeElement:
        """C_w in the T-basis."""
        return HeckeElement(self.P[w])

    def bruhat_leq(self, y: Element, w: Element) -> bool:
        return y in self.below[w]


def _ball(W: AffineWeylGroup, radius: int, generators: Iterable[str]) -> list[Element]:
    gens = tuple(generators)
    layers = [[W.identity]]
    for k in range(radius):
        nxt = {}
        for w in layers[-1]:
            for s in gens:
                u = W.left_mul(s, w)
                if u.length == k + 1:
                    nxt[u] = None
        if not nxt:
            break
        layers.append(sorted(nxt))
    return [w for layer in layers for w in layer]


def kl_table(L: WeightFunction, radius: int, generators: Iterable[str] | None = None,
             cache_dir: str | os.PathLike | None = None) -> KLTable:
    """Fill P and M on the ball of the given radius.

    ``generators`` restricts to a standard parabolic subgroup (e.g. a finite
    one, to study a finite Coxeter group inside the affine one).  With a
    cache directory the table is loaded when present (and re-validated) or
    stored after computation.
    """
    if not L.non_negative:
        raise ValueError("fold negative weights to non-negative ones first")
    W = L.group
    gens = tuple(s for s in W.generators if generators is None or s in set(generators))
    if cache_dir is not None:
        path = Path(cache_dir) / f"{table_key(L, radius, gens)}.json"
        if path.exists():
            table = load_table(path, L)
            problems = validate_table(table)
            if not problems:
                return table
        table = _fill(L, radius, gens)
        save_table(table, path)
        return table
    return _fill(L, radius, gens)


def _fill(L: WeightFunction, radius: int, gens: tuple) -> KLTable:
    W = L.group
    alg = HeckeAlgebra(L)
    elements = _ball(W, radius, gens)
    P: dict[Element, dict[Element, Laurent]] = {}
    M: dict[tuple[str, Element], dict[Element, Laurent]] = {}
    below: dict[Element, frozenset] = {}
    positive = [s for s in gens if alg.diff[s]]
    for w in elements:
        if w is W.identity:
            P[w] = {w: alg.one}
            below[w] = frozenset([w])
        else:
            desc = [s for s in gens if W.left_mul(s, w).length < w.length]
            # a positive-weight descent keeps the recursion informative
            pos_desc = [s for s in desc if alg.diff[s]]
            s = (pos_desc or desc)[0]
            w1 = W.left_mul(s, w)
            below[w] = below[w1] | frozenset(W.left_mul(s, y) for y in below[w1])
            if not alg.diff[s]:
                # C_w = T_s C_{sw} when L(s) = 0
                P[w] = {W.left_mul(s, y): c for y, c in P[w1].items()}
            else:
                P[w] = _column(alg, s, w, w1, P, M[(s, w1)], below[w])
        for s in positive:
            if W.left_mul(s, w).length > w.length:
                M[(s, w)] = _m_column(alg, s, w, P, below[w])
    return KLTable(L, radius, elements, P, M, below, gens, alg)


def _column(alg: HeckeAlgebra, s: str, w: Element, w1: Element, P, mcol, below_w) -> dict:
    """P_{.,w} from C_s C_{w1} = C_w + sum_z M^s_{z,w1} C_z, where w = s w1."""
    W = alg.W
    pw1 = P[w1]
    vs, vsi = alg.v[s], alg.v_inv[s]
    col: dict[Element, Laurent] = {}
    for y in below_w:
        sy = W.left_mul(s, y)
        c = Laurent()
        a = pw1.get(sy)
        if a:
            c = c + a
        b = pw1.get(y)
        if b:
            c = c + b * (vs if sy.length < y.length else vsi)
        for z, mz in mcol.items():
            pz = P[z].get(y)
            if pz:
                c = c - pz * mz
        c = alg.canon(c)
        if c:
            col[y] = c
    return col


def _m_column(alg: HeckeAlgebra, s: str, w: Element, P, below_w) -> dict:
    """M^s_{y,w} for all y with sy < y < w.

    M is the bar-invariant element congruent modulo A_{<0} to
    v_s P_{y,w} - sum_{y<z<w, sz<z} P_{y,z} M^s_{z,w}.
    """
    W = alg.W
    vs = alg.v[s]
    pw = P[w]
    cands = [y for y in below_w if y != w and W.left_mul(s, y).length < y.length]
    cands.sort(key=lambda u: (-u.length, u.sort_key))
    mcol: dict[Element, Laurent] = {}
    for y in cands:
        r = Laurent()
        pyw = pw.get(y)
        if pyw:
            r = pyw * vs
        for z, mz in mcol.items():
            pyz = P[z].get(y)
            if pyz:
                r = r - pyz * mz
        r = alg.canon(r)
        if r:
            m = alg.symmetrize(r)
            if m:
                mcol[y] = m
    return mcol


def cs_times_cw(s: str, w: Element, table: KLTable) -> HeckeElement:
    """C_s C_w expanded in the C-basis."""
    alg = table.algebra
    W = table.W
    sw = W.left_mul(s, w)
    if not alg.diff[s]:
        out = {sw: alg.one}
    elif sw.length < w.length:
        return HeckeElement({w: alg.v[s] + alg.v_inv[s]}, "C")
    else:
        out = {sw: alg.one}
        out.update(table.M.get((s, w), {}))
    if sw not in table:
        raise TruncationError(f"{sw} lies outside the ball of radius {table.radius}")
    return HeckeElement(out, "C")


def c_to_t(h: HeckeElement, table: KLTable) -> HeckeElement:
    """Re-expand a C-basis combination in the T-basis."""
    total = HeckeElement()
    for w, a in h.terms.items():
        total = total + table.C(w).scale(a)
    return total.canonical(table.algebra.spec)


class TruncationError(ValueError):
    """A product or edge leaves the computed ball."""


# table validation


def validate_table(table: KLTable, recheck: Iterable[Element] | None = None) -> list[str]:
    """Check P_{y,y} = 1, P_{y,w} = 0 unless y <= w, P_{y,w} in A_{<0} for y < w,
    and bar-invariance of every stored M.  ``recheck`` lists elements whose
    C_w is additionally tested for bar-invariance in the algebra."""
    alg = table.algebra
    problems = []
    for w in table.elements:
        col = table.P.get(w)
        if col is None:
            problems.append(f"missing column {w}")
            continue
        if col.get(w) != alg.one:
            problems.append(f"P_{{{w},{w}}} != 1")
        for y, c in col.items():
            if y == w:
                continue
            if y not in table.below[w]:
                problems.append(f"P_{{{y},{w}}} != 0 although {y} is not below {w}")
            if not alg.is_negative(c):
                problems.append(f"P_{{{y},{w}}} = {c} is not in A<0")
    for (s, w), col in table.M.items():
        for y, m in col.items():
            if alg.canon(m.bar()) != m:
                problems.append(f"M^{s}_{{{y},{w}}} is not bar-invariant")
    for w in recheck or ():
        c = table.C(w)
        if alg.bar(c) != c:
            problems.append(f"C_{w} is not bar-invariant")
    return problems


def check_recursions(table: KLTable) -> dict:
    """Exhaustive checks of the recursion P_{y,w} = v_s^-1 P_{sy,w} (sy > y, sw < w,
    L(s) > 0) and of the degree guard deg M^s < L(s)."""
    alg = table.algebra
    W = table.W
    spec = alg.spec
    failures = []
    checked = 0
    for w in table.elements:
        for s in table.generators:
            if not alg.diff[s] or W.left_mul(s, w).length > w.length:
                continue
            for y in table.below[w]:
                sy = W.left_mul(s, y)
                if sy.length < y.length:
                    continue
                checked += 1
                lhs = table.p(y, w)
                rhs = alg.canon(table.p(sy, w) * alg.v_inv[s])
                if lhs != rhs:
                    failures.append(("recursion", str(s), str(y), str(w)))
    m_checked = 0
    for (s, w), col in table.M.items():
        for y, m in col.items():
            m_checked += 1
            if spec.compare(deg(m, spec), table.weight.gen(s)) >= 0:
                failures.append(("degree", str(s), str(y), str(w)))
    return {"recursion_checked": checked, "m_checked": m_checked, "failures": failures, "ok": not failures}


# persistence


def table_key(L: WeightFunction, radius: int, generators: Iterable[str]) -> str:
    W = L.group
    payload = {
        "type": W.type_label,
        "rank": W.rank,
        "weight": L.key(),
        "radius": radius,
        "generators": list(generators),
    }
    digest = hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()[:20]
    return f"{W.type_label}{W.rank}-N{radius}-{digest}"


def table_to_json(table: KLTable) -> dict:
    W = table.W
    names = {w: W.format_word(w.word) for w in table.elements}
    return {
        "type": W.type_label,
        "rank": W.rank,
        "weight": table.weight.key(),
        "radius": table.radius,
        "generators": list(table.generators),
        "elements": [names[w] for w in table.elements],
        "P": {names[w]: {names[y]: c.to_json() for y, c in sorted(col.items())} for w, col in table.P.items()},
        "M": {
            f"{s}|{names[w]}": {names[y]: m.to_json() for y, m in sorted(col.items())}
            for (s, w), col in sorted(table.M.items(), key=lambda kv: (kv[0][0], kv[0][1].sort_key))
        },
    }


def table_from_json(data: Mapping, L: WeightFunction) -> KLTable:
    W = L.group
    if data["type"] != W.type_label or data["rank"] != W.rank or data["weight"] != L.key():
        raise ValueError("cached table does not match the requested weight")
    elems = {name: W.parse(name) for name in data["elements"]}
    elements = [elems[n] for n in data["elements"]]
    P = {elems[w]: {elems[y]: Laurent.from_json(c) for y, c in col.items()} for w, col in data["P"].items()}
    M = {}
    for key, col in data["M"].items():
        s, w = key.split("|", 1)
        M[(s, elems[w])] = {elems[y]: Laurent.from_json(c) for y, c in col.items()}
    gens = tuple(data["generators"])
    below: dict[Element, frozenset] = {}
    for w in elements:
        if w is W.identity:
            below[w] = frozenset([w])
            continue
        s = next(g for g in gens if W.left_mul(g, w).length < w.length)
        w1 = W.left_mul(s, w)
        below[w] = below[w1] | frozenset(W.left_mul(s, y) for y in below[w1])
    return KLTable(L, data["radius"], elements, P, M, below, gens)


def save_table(table: KLTable, path: str | os.PathLike) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(table_to_json(table), sort_keys=True))
    tmp.replace(path)


def load_table(path: str | os.PathLike, L: WeightFunction) -> KLTable:
    return table_from_json(json.loads(Path(path).read_text()), L)


# cell preorders


@dataclass
class CellPartitionBall:
    """Cells of a length ball: classes of the preorder restricted to the ball.

    ``edges`` holds pairs (w, y) meaning y <= w in one step; ``kinds`` records
    whether an edge came from the C_{sw} term or from a non-zero M.
    ``truncated`` lists (w, s) whose product leaves the ball, so that the
    classes may be finer than the true cells.
    """

    radius: int
    flavor: str
    elements: list
    edges: set
    kinds: dict
    classes: list
    truncated: list

    def __post_init__(self):
        self.class_of = {}
        for i, c in enumerate(self.classes):
            for w in c:
                self.class_of[w] = i

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.elements)
        g.add_edges_from(self.edges)
        return g

    def condensation(self) -> nx.DiGraph:
        return nx.condensation(self.graph(), scc=[set(c) for c in self.classes])

    def same_class(self, x: Element, y: Element) -> bool:
        return self.class_of[x] == self.class_of[y]

    def is_union_of_classes(self, subset: Iterable[Element]) -> bool:
        sub = set(subset) & set(self.elements)
        return all(set(self.classes[self.class_of[w]]) <= sub for w in sub)

    def downward_closed(self, subset: Iterable[Element]) -> list[tuple[Element, Element]]:
        """Edges w -> y with w in the subset and y outside it."""
        sub = set(subset)
        return [(w, y) for (w, y) in self.edges if w in sub and y not in sub]


def left_edges(table: KLTable) -> tuple[set, dict, list]:
    W = table.W
    alg = table.algebra
    edges: set = set()
    kinds: dict = {}
    truncated = []
    for w in table.elements:
        for s in table.generators:
            sw = W.left_mul(s, w)
            if alg.diff[s] and sw.length < w.length:
                continue
            if sw in table:
                edges.add((w, sw))
                kinds.setdefault((w, sw), set()).add("product")
            else:
                truncated.append((w, s))
            if alg.diff[s]:
                for z in table.M.get((s, w), {}):
                    edges.add((w, z))
                    kinds.setdefault((w, z), set()).add("M")
    return edges, kinds, truncated


def cell_preorder(table: KLTable, flavor: str = "left") -> CellPartitionBall:
    """Left, right or two-sided cells of the ball (classes of the restricted preorder)."""
    W = table.W
    ledges, lkinds, ltrunc = left_edges(table)
    inv = {w: W.inverse(w) for w in table.elements}
    if flavor == "left":
        edges, kinds, trunc = ledges, lkinds, ltrunc
    elif flavor in ("right", "two-sided"):
        redges = {(inv[w], inv[y]) for (w, y) in ledges}
        rkinds = {(inv[w], inv[y]): k for (w, y), k in lkinds.items()}
        rtrunc = [(inv[w], s) for (w, s) in ltrunc]
        if flavor == "right":
            edges, kinds, trunc = redges, rkinds, rtrunc
        else:
            edges = ledges | redges
            kinds = {}
            for src in (lkinds, rkinds):
                for e, k in src.items():
                    kinds.setdefault(e, set()).update(k)
            trunc = ltrunc + rtrunc
    else:
        raise ValueError(f"unknown flavor {flavor}")
    g = nx.DiGraph()
    g.add_nodes_from(table.elements)
    g.add_edges_from(edges)
    classes = [sorted(c) for c in nx.strongly_connected_components(g)]
    classes.sort(key=lambda c: c[0].sort_key)
    return CellPartitionBall(table.radius, flavor, list(table.elements), edges, kinds, classes, trunc)


def duality_check(left: CellPartitionBall, right: CellPartitionBall) -> list:
    """Pairs violating x ~L y <=> x^-1 ~R y^-1."""
    bad = []
    for c in left.classes:
        x = c[0]
        xi = x.inverse()
        for y in c[1:]:
            if not right.same_class(xi, y.inverse()):
                bad.append((x, y))
    for c in right.classes:
        x = c[0]
        for y in c[1:]:
            if not left.same_class(x.inverse(), y.inverse()):
                bad.append((x, y))
    return bad


# degree bounds for structure constants


def c_bound(x: Element, y: Element, L: WeightFunction):
    """Sum over directions of the largest weight of a hyperplane separating both
    A0 from yA0 and yA0 from xyA0."""
    W = L.group
    G = WeightedGeometry(L)
    xy = W.multiply(x, y)
    common = W.separating(W.identity, y) & W.separating(y, xy)
    best: dict = {}
    for f, n in common:
        wt = G.hyperplane_weight(f, n)
        if f not in best or L.spec.compare(wt, best[f]) > 0:
            best[f] = wt
    total = L.zero
    for wt in best.values():
        total = add(total, wt)
    return total


def check_structure_bounds(L: WeightFunction, radius: int) -> dict:
    """deg f_{x,y,z} <= c_{x,y} for all x, y in the ball."""
    alg = HeckeAlgebra(L)
    W = L.group
    elems = W.ball(radius)
    spec = L.spec
    failures = []
    pairs = 0
    for x in elems:
        for y in elems:
            pairs += 1
            bound = c_bound(x, y, L)
            for z, f in alg.structure_constants(x, y).items():
                if spec.compare(deg(f, spec), bound) > 0:
                    failures.append((str(x), str(y), str(z)))
    return {"radius": radius, "pairs": pairs, "failures": failures, "ok": not failures}


# degree and M-vanishing bounds under a split order


def _zero_gens(L: WeightFunction) -> frozenset:
    spec = L.spec
    if not spec.classes:
        return L.zero_generators
    return frozenset(s for s in L.group.generators if L.group.class_of[s] not in spec.plus)


def verify_klasym(table: KLTable, subset: Iterable[str]) -> dict:
    """Degree bound on the positive part of P_{x,y} and vanishing of M^s_{x,y} (s in the
    zero part of the split) for y = a w_circ z in the ball and all x < y."""
    L = table.weight
    W = table.W
    spec = L.spec
    alg = table.algebra
    I = frozenset(subset)
    zero = _zero_gens(L)
    wc = W.w_circ(I, zero)
    top = spec.project_plus(L(wc))
    eligible = 0
    degree_checks = 0
    m_checks = 0
    failures = []
    for y in table.elements:
        a, u, d = W.coset_decompose(y, I, zero)
        if u != wc:
            continue
        eligible += 1
        for x in table.below[y]:
            if x == y:
                continue
            _, ux, _ = W.coset_decompose(x, I, zero)
            bound = sub(spec.project_plus(L(ux)), top)
            p = table.p(x, y)
            if p:
                degree_checks += 1
                dp = spec.project_plus(deg(p, spec))
                if spec.compare(dp, bound) > 0:
                    failures.append(("degree", str(x), str(y)))
            for s in zero:
                if not alg.diff[s]:
                    continue
                if W.left_mul(s, x).length < x.length and W.left_mul(s, y).length > y.length:
                    m_checks += 1
                    if table.m(s, x, y) and ux != wc:
                        failures.append(("M", s, str(x), str(y)))
    return {
        "subset": sorted(I),
        "eligible": eligible,
        "degree_checks": degree_checks,
        "m_checks": m_checks,
        "failures": failures,
        "ok": not failures,
    }
