"""Affine Weyl groups acting on alcoves, with exact rational arithmetic.

An element ``w`` is stored as the affine map ``rho_w`` sending the fundamental
alcove A0 onto the alcove ``wA0``.  Left multiplication by a generator crosses
the face of ``wA0`` of that type, so ``rho_{sw} = rho_w o sigma_s`` and
``rho_{xy} = rho_y o rho_x``.  Elements are interned per group and keyed by
the image of the barycenter of A0.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import floor
from typing import Iterable, Sequence

from .roots import (
    RootSystemData,
    Vector,
    build_root_system,
    coordinates,
    dot,
    mat_mul,
    mat_vec,
    identity,
    reflection_matrix,
    solve_in_span,
    vadd,
    vscale,
    vsub,
)


class Element:
    """An element of an :class:`AffineWeylGroup`.  Create through the group."""

    __slots__ = ("group", "matrix", "shift", "point", "_hash", "_word", "_length", "_left", "_inverse", "__weakref__")

    def __init__(self, group, matrix, shift, point):
        self.group = group
        self.matrix = matrix
        self.shift = shift
        self.point = point
        self._hash = hash(point)
        self._word = None
        self._length = None
        self._left = {}
        self._inverse = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            isinstance(other, Element) and other.group is self.group and other.point == self.point
        )

    def __mul__(self, other: "Element") -> "Element":
        return self.group.multiply(self, other)

    def __lt__(self, other: "Element") -> bool:
        # sorting helper only: shortlex on the cached reduced words
        return self.sort_key < other.sort_key

    @property
    def sort_key(self):
        g = self.group
        return (self.length, tuple(g.position[s] for s in self.word))

    @property
    def length(self) -> int:
        if self._length is None:
            self._length = self.group.length(self)
        return self._length

    @property
    def word(self) -> tuple[str, ...]:
        if self._word is None:
            self._word = self.group.reduced_word(self)
        return self._word

    def inverse(self) -> "Element":
        return self.group.inverse(self)

    def apply(self, x: Sequence) -> Vector:
        """Image of a point under the affine map of this element."""
        return vadd(mat_vec(self.matrix, x), self.shift)

    def __repr__(self):
        return f"<{self.group.name} {self.group.format_word(self.word)}>"

    def __str__(self):
        return self.group.format_word(self.word)


_COXETER_FROM_COS2 = {Fraction(0): 2, Fraction(1, 4): 3, Fraction(1, 2): 4, Fraction(3, 4): 6}


class AffineWeylGroup:
    """The affine Weyl group built on a root system of linear forms.

    Parameters
    ----------
    type_label, rank:
        One of A_n (n >= 1), B_n (n >= 3), C_n (n >= 1), F_4, G_2.  B_2 is
        C_2 with the roles of long and short forms exchanged and is refused.
    """

    def __init__(self, type_label: str, rank: int):
        t = type_label.upper()
        if t == "B" and rank < 3:
            raise ValueError("type B needs rank >= 3 (use type C for rank 2)")
        if t == "F" and rank != 4 or t == "G" and rank != 2:
            raise ValueError(f"unsupported rank {rank} for type {t}")
        if t not in "ABCFG" or len(t) != 1:
            raise ValueError(f"unsupported type {type_label}")
        forms = build_root_system(t, rank)
        n = rank
        theta = forms.highest
        walls: dict[str, tuple[Vector, int]] = {}
        classes: dict[str, str] = {}
        if t == "C":
            walls["t"] = (forms.simple[n - 1], 0)
            for i in range(1, n):
                walls[self._c_name(i, n)] = (forms.simple[n - 1 - i], 0)
            walls["t'"] = (theta, 1)
            classes = {s: ("s" if s.startswith("s") else s) for s in walls}
        elif t == "B":
            walls["t"] = (forms.simple[n - 1], 0)
            for i in range(1, n):
                walls[f"s{i}"] = (forms.simple[n - 1 - i], 0)
            walls[f"s{n}"] = (theta, 1)
            classes = {s: s[0] for s in walls}
        elif t == "F":
            a1, a2, a3, a4 = forms.simple
            walls = {"t1": (a2, 0), "t2": (a1, 0), "t3": (theta, 1), "s1": (a3, 0), "s2": (a4, 0)}
            classes = {s: s[0] for s in walls}
        elif t == "G":
            a1, a2 = forms.simple
            walls = {"t": (a1, 0), "s1": (a2, 0), "s2": (theta, 1)}
            classes = {s: s[0] for s in walls}
        else:
            for i in range(1, n + 1):
                walls[f"s{i}"] = (forms.simple[i - 1], 0)
            walls["s0"] = (theta, 1)
            classes = {s: "s" for s in walls}
        self._setup(t, rank, forms, walls, classes, f"{t}~{rank}")

    @staticmethod
    def _c_name(i: int, n: int) -> str:
        return "s" if n == 2 else f"s{i}"

    @classmethod
    def from_forms(cls, forms: RootSystemData, name: str = "W~") -> "AffineWeylGroup":
        """Group generated by reflections in the simple forms (level 0) and each
        component's highest form (level 1); generator classes are the
        odd-bond components of the Coxeter graph."""
        self = cls.__new__(cls)
        walls = {}
        for i, f in enumerate(forms.simple):
            walls[f"g{i + 1}"] = (f, 0)
        for k, (_, top) in enumerate(forms.components):
            walls[f"h{k + 1}"] = (top, 1)
        self._setup("?", forms.rank, forms, walls, None, name)
        return self

    def _setup(self, type_label, rank, forms, walls, classes, name):
        self.type_label = type_label
        self.rank = rank
        self.forms = forms
        self.name = name
        self.generators = tuple(walls)
        self.position = {s: i for i, s in enumerate(self.generators)}
        self.walls = dict(walls)
        self.dim = forms.dim
        self.positive_forms = forms.positive
        # Coxeter matrix
        m = {}
        for a, b in combinations(self.generators, 2):
            fa, fb = walls[a][0], walls[b][0]
            c = dot(fa, fb) ** 2 / (dot(fa, fa) * dot(fb, fb))
            m[(a, b)] = m[(b, a)] = 0 if c == 1 else _COXETER_FROM_COS2[c]
        self.coxeter = m  # 0 encodes infinity
        if classes is None:
            classes = self._odd_components()
        self.class_of = dict(classes)
        # affine reflections sigma_s(x) = R x + c
        self._refl = {}
        for s, (f, n) in walls.items():
            r = reflection_matrix(f)
            c = vscale(Fraction(2 * n) / dot(f, f), f)
            self._refl[s] = (r, c)
        # barycenter of A0
        rhs = [None] * len(forms.simple)
        for idx, top in forms.components:
            marks = coordinates([forms.simple[i] for i in idx], top)
            for i, mk in zip(idx, marks):
                rhs[i] = Fraction(1) / ((len(idx) + 1) * mk)
        self.p0 = solve_in_span(forms.simple, rhs)
        self._irreducible = len(forms.components) == 1
        if self._irreducible:
            self._vertices = self._alcove_vertices()
        self._intern: dict = {}
        self.identity = self._make(identity(self.dim), tuple(Fraction(0) for _ in range(self.dim)))
        self.identity._word = ()
        self.identity._length = 0
        self._gens = {s: self.identity.group.left_mul(s, self.identity) for s in self.generators}
        self._face_cache: dict = {}
        self._bruhat: dict = {}
        self._parabolic: dict = {}

    def _odd_components(self) -> dict[str, str]:
        parent = {s: s for s in self.generators}

        def find(s):
            while parent[s] != s:
                s = parent[s]
            return s

        for a, b in combinations(self.generators, 2):
            if self.coxeter[(a, b)] == 3:
                parent[find(a)] = find(b)
        roots = {}
        for s in self.generators:
            roots.setdefault(find(s), []).append(s)
        return {s: min(roots[find(s)], key=self.position.get) for s in self.generators}

    def _alcove_vertices(self) -> dict[str, Vector]:
        """Vertex of A0 opposite to each wall."""
        simple = self.forms.simple
        theta = self.forms.highest
        marks = coordinates(simple, theta)
        out = {}
        for s, (f, n) in self.walls.items():
            if n == 1:
                out[s] = tuple(Fraction(0) for _ in range(self.dim))
            else:
                i = simple.index(f)
                rhs = [Fraction(0)] * len(simple)
                rhs[i] = 1 / marks[i]
                out[s] = solve_in_span(simple, rhs)
        return out

    @property
    def vertices(self) -> dict[str, Vector]:
        return self._vertices

    # element construction

    def _make(self, matrix, shift) -> Element:
        point = vadd(mat_vec(matrix, self.p0), shift)
        hit = self._intern.get(point)
        if hit is None:
            hit = Element(self, matrix, shift, point)
            self._intern[point] = hit
        return hit

    def gen(self, s: str) -> Element:
        return self._gens[s]

    def left_mul(self, s: str, w: Element) -> Element:
        hit = w._left.get(s)
        if hit is None:
            r, c = self._refl[s]
            hit = self._make(mat_mul(w.matrix, r), vadd(mat_vec(w.matrix, c), w.shift))
            w._left[s] = hit
            hit._left.setdefault(s, w)
        return hit

    def right_mul(self, w: Element, s: str) -> Element:
        r, c = self._refl[s]
        return self._make(mat_mul(r, w.matrix), vadd(mat_vec(r, w.shift), c))

    def multiply(self, x: Element, y: Element) -> Element:
        if x is self.identity:
            return y
        if y is self.identity:
            return x
        return self._make(mat_mul(y.matrix, x.matrix), vadd(mat_vec(y.matrix, x.shift), y.shift))

    def inverse(self, x: Element) -> Element:
        if x._inverse is None:
            mt = tuple(zip(*x.matrix))
            inv = self._make(mt, tuple(-v for v in mat_vec(mt, x.shift)))
            x._inverse = inv
            inv._inverse = x
        return x._inverse

    def from_word(self, word: Iterable[str]) -> Element:
        w = self.identity
        for s in reversed(list(word)):
            w = self.left_mul(s, w)
        return w

    def from_affine(self, matrix, shift) -> Element:
        return self._make(tuple(tuple(Fraction(x) for x in row) for row in matrix), tuple(Fraction(x) for x in shift))

    def parse(self, text: str) -> Element:
        return self.from_word(self.parse_word(text))

    def parse_word(self, text: str) -> list[str]:
        text = text.strip()
        if text in ("", "e", "1"):
            return []
        if "." in text:
            parts = [p for p in text.split(".") if p]
        else:
            names = sorted(self.generators, key=len, reverse=True)
            pattern = "|".join(re.escape(n) for n in names)
            parts = re.findall(pattern, text.replace("′", "'"))
            if "".join(parts) != text.replace("′", "'"):
                raise ValueError(f"cannot parse word {text!r}")
        for p in parts:
            if p not in self.position:
                raise ValueError(f"unknown generator {p!r}")
        return parts

    def format_word(self, word: Sequence[str]) -> str:
        return ".".join(word) if word else "e"

    # length and descents

    def length(self, w: Element) -> int:
        p = w.point
        return sum(abs(floor(dot(p, f))) for f in self.positive_forms)

    def reduced_word(self, w: Element) -> tuple[str, ...]:
        word = []
        cur = w
        while cur is not self.identity:
            if cur._word is not None:
                word.extend(cur._word)
                break
            for s in self.generators:
                nxt = self.left_mul(s, cur)
                if nxt.length < cur.length:
                    word.append(s)
                    cur = nxt
                    break
            else:  # pragma: no cover - cannot happen for a non-identity element
                raise RuntimeError("no left descent found")
        return tuple(word)

    def left_descents(self, w: Element) -> frozenset:
        return frozenset(s for s in self.generators if self.left_mul(s, w).length < w.length)

    def right_descents(self, w: Element) -> frozenset:
        out = set()
        for s, (f, n) in self.walls.items():
            a = dot(w.point, f) - n
            b = dot(self.p0, f) - n
            if a * b < 0:
                out.add(s)
        return frozenset(out)

    def is_reflection_left_descent(self, s: str, w: Element) -> bool:
        return self.left_mul(s, w).length < w.length

    # alcove geometry

    def in_fundamental(self, x: Sequence, closed: bool = False) -> bool:
        for f, n in self.walls.values():
            v = dot(x, f)
            if n == 0:
                if v < 0 or (not closed and v == 0):
                    return False
            else:
                if v > n or (not closed and v == n):
                    return False
        return True

    def element_containing(self, q: Sequence) -> Element:
        """The element whose alcove contains the point q (which must avoid every hyperplane)."""
        x = tuple(Fraction(v) for v in q)
        w = self.identity
        for _ in range(100000):
            for s, (f, n) in self.walls.items():
                v = dot(x, f)
                if (n == 0 and v < 0) or (n == 1 and v > 1):
                    r, c = self._refl[s]
                    x = vadd(mat_vec(r, x), c)
                    w = self.left_mul(s, w)
                    break
            else:
                break
        if not self.in_fundamental(x):
            raise ValueError("point lies on a hyperplane")
        return w

    def separating(self, a: Element, b: Element) -> set[tuple[Vector, int]]:
        """Hyperplanes (f, n), f a positive form, separating the alcoves of a and b."""
        out = set()
        for f in self.positive_forms:
            ka = floor(dot(a.point, f))
            kb = floor(dot(b.point, f))
            lo, hi = min(ka, kb), max(ka, kb)
            for n in range(lo + 1, hi + 1):
                out.add((f, n))
        return out

    def _generic_point(self, salt: int = 0) -> Vector:
        primes = [7, 11, 13, 17, 19, 23, 29, 31]
        raw = tuple(Fraction(1, primes[(i + salt) % len(primes)]) + Fraction(i, 1009) for i in range(self.dim))
        return solve_in_span(self.forms.simple, [dot(raw, f) for f in self.forms.simple])

    def face_generator(self, f: Vector, n: int) -> str:
        """Type of the alcove faces supported by the hyperplane (x, f) = n."""
        key = (f, n)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        ff = dot(f, f)
        for attempt in range(40):
            g = self._generic_point(attempt)
            p = vsub(g, vscale((dot(g, f) - n) / ff, f))
            eps = Fraction(1, 10 ** (3 + attempt // 8) * (1 + attempt % 8))
            q = vadd(p, vscale(eps, f))
            try:
                w = self.element_containing(q)
            except ValueError:
                continue
            inv = self.inverse(w)
            pp = inv.apply(p)
            if not self.in_fundamental(pp, closed=True):
                continue
            on = [s for s, (fs, ns) in self.walls.items() if dot(pp, fs) == ns]
            if len(on) == 1:
                self._face_cache[key] = on[0]
                return on[0]
        raise RuntimeError(f"could not locate a face on hyperplane {f}, {n}")

    def face_class(self, f: Vector, n: int) -> str:
        return self.class_of[self.face_generator(f, n)]

    # enumeration

    def ball(self, radius: int) -> list[Element]:
        """All elements of length at most ``radius``, in shortlex order."""
        layers = [[self.identity]]
        for k in range(radius):
            nxt = {}
            for w in layers[-1]:
                for s in self.generators:
                    u = self.left_mul(s, w)
                    if u.length == k + 1:
                        nxt[u] = None
            layers.append(sorted(nxt))
        return [w for layer in layers for w in layer]

    def is_finite_parabolic(self, subset: Iterable[str]) -> bool:
        sub = set(subset)
        for idx, top in self.forms.components:
            gens = {s for s, (f, n) in self.walls.items() if (n == 1 and f == top) or (n == 0 and self.forms.simple.index(f) in idx)}
            if gens <= sub:
                return False
        return True

    def parabolic(self, subset: Iterable[str]) -> list[Element]:
        """Elements of the finite standard parabolic subgroup W_I, shortest first."""
        key = frozenset(subset)
        hit = self._parabolic.get(key)
        if hit is not None:
            return hit
        if not self.is_finite_parabolic(key):
            raise ValueError(f"parabolic subgroup on {sorted(key)} is infinite")
        seen = {self.identity: None}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for w in frontier:
                for s in key:
                    u = self.left_mul(s, w)
                    if u not in seen:
                        seen[u] = None
                        nxt.append(u)
            frontier = nxt
        out = sorted(seen)
        self._parabolic[key] = out
        return out

    def longest(self, subset: Iterable[str]) -> Element:
        return self.parabolic(subset)[-1]

    def finite_subsets(self) -> list[frozenset]:
        """All subsets I of S with W_I finite."""
        out = []
        gens = self.generators
        for k in range(len(gens) + 1):
            for sub in combinations(gens, k):
                if self.is_finite_parabolic(sub):
                    out.append(frozenset(sub))
        return out

    def strip_left(self, w: Element, subset: Iterable[str]) -> Element:
        """Minimal element of the coset W_I w."""
        sub = [s for s in self.generators if s in set(subset)]
        cur = w
        changed = True
        while changed:
            changed = False
            for s in sub:
                nxt = self.left_mul(s, cur)
                if nxt.length < cur.length:
                    cur = nxt
                    changed = True
                    break
        return cur

    def strip_right(self, w: Element, subset: Iterable[str]) -> Element:
        """Minimal element of the coset w W_I."""
        return self.inverse(self.strip_left(self.inverse(w), subset))

    def coset_decompose(self, x: Element, subset: Iterable[str], zero_subset: Iterable[str]):
        """x = a * u * d with d minimal in W_I x, u minimal in W_{I0} (x d^-1), a in W_{I0}."""
        sub = frozenset(subset)
        if not self.is_finite_parabolic(sub):
            raise ValueError("coset decomposition needs a finite parabolic subgroup")
        zero = sub & frozenset(zero_subset)
        d = self.strip_left(x, sub)
        xp = self.multiply(x, self.inverse(d))
        u = self.strip_left(xp, zero)
        a = self.multiply(xp, self.inverse(u))
        return a, u, d

    def w_circ(self, subset: Iterable[str], zero_subset: Iterable[str]) -> Element:
        """Minimal element of W_{I0} w_I where I0 = I meets the zero generators."""
        sub = frozenset(subset)
        zero = sub & frozenset(zero_subset)
        return self.strip_left(self.longest(sub), zero)

    # Bruhat order

    def bruhat_leq(self, x: Element, y: Element) -> bool:
        key = (x, y)
        hit = self._bruhat.get(key)
        if hit is not None:
            return hit
        lx, ly = x.length, y.length
        if lx >= ly:
            res = x == y
        elif lx == 0:
            res = True
        else:
            s = y.word[0]
            sy = self.left_mul(s, y)
            sx = self.left_mul(s, x)
            res = self.bruhat_leq(sx, sy) if sx.length < lx else self.bruhat_leq(x, sy)
        self._bruhat[key] = res
        return res

    # zero/positive splitting

    def check_split(self, zero: Iterable[str]) -> None:
        zero = set(zero)
        for s in self.generators:
            for t in self.generators:
                if s in zero and t not in zero and self.class_of[s] == self.class_of[t]:
                    raise ValueError(f"{s} and {t} are conjugate but split between zero and positive parts")

    def semidirect_factor(self, w: Element, zero: Iterable[str]) -> tuple[Element, Element]:
        """w = w0 * wt with w0 in the parabolic on the zero generators and wt in the
        normal subgroup generated by the others."""
        zero = frozenset(zero)
        self.check_split(zero)
        w0 = self.from_word([s for s in w.word if s in zero])
        return w0, self.multiply(self.inverse(w0), w)

    def tilde_word(self, w: Element, zero: Iterable[str]) -> list[Element]:
        """Reflections (walls of the coarse alcove) whose product is the normal-subgroup factor of w."""
        zero = frozenset(zero)
        w0, _ = self.semidirect_factor(w, zero)
        w0inv = self.inverse(w0)
        prefix = self.identity
        out = []
        for s in w.word:
            if s in zero:
                prefix = self.multiply(prefix, self.gen(s))
            else:
                c = self.multiply(w0inv, prefix)
                out.append(self.multiply(self.multiply(c, self.gen(s)), self.inverse(c)))
        return out
