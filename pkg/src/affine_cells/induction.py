"""Generalized induction checks for the left pieces of the lowest cell.

The pieces come from a weight that vanishes on part of S (the "facet"
weight); the Hecke algebra is the one of a second weight (generic or a
specialised witness) whose table has been filled on a ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .group import Element
from .kl import CellPartitionBall, HeckeElement, KLTable, cell_preorder
from .lowest import LowestCell
from .ordered import WeightFunction


@dataclass
class Piece:
    index: int
    b: Element
    types: frozenset
    w_circ: Element
    members: set = field(default_factory=set)  # N_sigma on the ball
    core: set = field(default_factory=set)  # U_sigma on the ball


class PieceData:
    """The pieces N_sigma and their cores U_sigma = W_{S_lambda zero} w_circ b_sigma on a ball."""

    def __init__(self, facet: WeightFunction, elements):
        self.cell = LowestCell(facet)
        self.W = self.cell.W
        self.elements = list(elements)
        self.pieces: dict[int, Piece] = {}
        for q in self.cell.G.quarters:
            b, types = self.cell.b_sigma(q)
            self.pieces[q.index] = Piece(q.index, b, types, self.W.w_circ(types, facet.zero_generators))
        self.piece_of: dict[Element, int] = {}
        self.decomposition = {}
        for w in self.elements:
            q = self.cell.G.quarter_of(w)
            if q is None:
                continue
            d = self.cell.decompose_at(w, q)
            self.piece_of[w] = q.index
            self.decomposition[w] = d
            self.pieces[q.index].members.add(w)
            if d.x is self.W.identity:
                self.pieces[q.index].core.add(w)

    def in_coset_reps(self, x: Element, piece: Piece) -> bool:
        """x is minimal in x W_lambda."""
        return self.W.strip_right(x, piece.types) == x

    def below(self, i: int, strict: bool = False) -> list[int]:
        """Pieces whose b lies below that of piece i in the Bruhat order."""
        b = self.pieces[i].b
        out = []
        for j, p in self.pieces.items():
            if strict and p.b == b:
                continue
            if self.W.bruhat_leq(p.b, b):
                out.append(j)
        return sorted(out)

    def union(self, indices) -> set:
        out = set()
        for j in indices:
            out |= self.pieces[j].members
        return out

    def pieces_in_ball(self) -> list[int]:
        return sorted(i for i, p in self.pieces.items() if p.core)


def _tx_cw(table: KLTable, x: Element, w: Element) -> HeckeElement:
    alg = table.algebra
    return alg.reduce_mod_negative(alg.t_multiply(alg.T(x), table.C(w)))


def verify_tx_cw(table: KLTable, data: PieceData, pieces=None) -> dict:
    """T_x C_w = T_xw + (terms in pieces with smaller b) modulo H_{<0}, for w in a core
    and x a minimal coset representative with xw in the ball."""
    W = table.W
    alg = table.algebra
    failures = []
    checked = 0
    for i in pieces if pieces is not None else data.pieces_in_ball():
        piece = data.pieces[i]
        allowed = data.union(data.below(i, strict=True))
        for w in sorted(piece.core):
            for x in table.elements:
                if x.length + w.length > table.radius or not data.in_coset_reps(x, piece):
                    continue
                checked += 1
                xw = W.multiply(x, w)
                h = _tx_cw(table, x, w)
                if h.coefficient(xw) != alg.one:
                    failures.append(("leading", str(x), str(w)))
                for z in h.terms:
                    if z != xw and z not in allowed:
                        failures.append(("support", str(x), str(w), str(z)))
    return {"checked": checked, "failures": failures, "ok": not failures}


def check_induction_conditions(table: KLTable, data: PieceData, i: int,
                               left: CellPartitionBall | None = None) -> dict:
    """Hypotheses of the generalized induction argument on the ball: the identity is a
    minimal coset representative, products x u are length additive and injective,
    T_y C_v is unitriangular against shorter products, and the union of the
    pieces whose b lies below b_sigma is closed under the left preorder."""
    W = table.W
    alg = table.algebra
    lower = data.below(i)
    cores = [(j, u) for j in lower for u in sorted(data.pieces[j].core)]
    report = {"piece": i, "lower_pieces": lower, "identity_minimal": True, "length_additive": [], "injective": [], "triangular": [], "left_ideal": []}
    for j, u in cores:
        if not data.in_coset_reps(W.identity, data.pieces[j]):
            report["identity_minimal"] = False
    products: dict[Element, tuple] = {}
    pairs = []
    for j, u in cores:
        piece = data.pieces[j]
        for x in table.elements:
            if x.length + u.length > table.radius or not data.in_coset_reps(x, piece):
                continue
            xu = W.multiply(x, u)
            pairs.append((x, u, xu))
            if xu.length != x.length + u.length:
                report["length_additive"].append((str(x), str(u)))
            if xu in products and products[xu] != (x, u):
                report["injective"].append((str(x), str(u), str(products[xu][0]), str(products[xu][1])))
            products[xu] = (x, u)
    for y, v, yv in pairs:
        h = _tx_cw(table, y, v)
        if h.coefficient(yv) != alg.one:
            report["triangular"].append(("leading", str(y), str(v)))
        for z in h.terms:
            if z != yv and (z not in products or z.length >= yv.length):
                report["triangular"].append(("support", str(y), str(v), str(z)))
    if left is None:
        left = cell_preorder(table, "left")
    ideal = data.union(lower)
    report["left_ideal"] = [(str(w), str(y)) for w, y in left.downward_closed(ideal)]
    report["pairs"] = len(pairs)
    report["ok"] = report["identity_minimal"] and not (report["length_additive"] or report["injective"] or report["triangular"] or report["left_ideal"])
    return report
