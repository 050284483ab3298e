"""Command line entry point: ``affine-cells <lowest|cells|verify|atlas> --config FILE``.

Exit codes: 0 success, 1 a verification failed, 2 configuration error,
3 an internal invariant failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from pathlib import Path

from .config import ConfigError, JobConfig, load_config
from .geometry import WeightedGeometry
from .induction import PieceData, check_induction_conditions, verify_tx_cw
from .kl import cell_preorder, check_structure_bounds, duality_check, kl_table, table_key
from .lowest import LowestCell, claim3prime
from .ordered import WeightFunction
from .params import semicontinuity_check
from .regimes import C2_REGIMES, regime_weight, zero_class_cases
from .svg import alcoves_in_window, render

log = logging.getLogger("affine_cells")

# facet with L(s) = 0 and L(t) > L(t') > 0 against a weight in the chamber next to
# the diagonal L(t) = L(t'); the lowest cell of the facet is not a union of cells there
NEGATIVE_CONTROL = ({"t": 2, "s": 0, "t'": 1}, {"t": 4, "s": 2, "t'": 3})


class InvariantError(RuntimeError):
    pass


def _word(w) -> str:
    return str(w)


def _dump(data, path: str | None) -> None:
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _cache_dir(args) -> str | None:
    return args.cache_dir or os.environ.get("AC_CACHE_DIR") or None


# lowest


def lowest_report(L: WeightFunction, radius: int) -> dict:
    if not L.positive_generators:
        raise ConfigError("L = 0: c_min = W (every element lies in the lowest two-sided cell)")
    G = WeightedGeometry(L)
    cell = LowestCell(G)
    W = G.W
    wmax = G.wmax
    if not wmax:
        raise InvariantError("no element reaches the maximal weight")
    for w in wmax:
        if W.identity == w or G.spec.compare(L(w), G.nu) != 0:
            raise InvariantError(f"{w} does not have maximal weight")
    sigma = []
    counts = {q.index: 0 for q in G.quarters}
    for w in W.ball(radius):
        q = G.quarter_of(w)
        if q is not None:
            counts[q.index] += 1
    for q in G.quarters:
        b, types = cell.b_sigma(q)
        sigma.append({
            "sigma": q.index,
            "vertex": [str(x) for x in q.vertex],
            "b": _word(b),
            "s_lambda": sorted(types),
            "w_circ": _word(W.w_circ(types, L.zero_generators)),
            "ball_members": counts[q.index],
        })
    return {
        "nu": list(G.nu),
        "wmax": sorted(_word(w) for w in wmax),
        "sigma_cells": sigma,
        "ball": radius,
    }


def membership_grid(L: WeightFunction, half_width: float = 6.0):
    G = WeightedGeometry(L)
    alcoves = alcoves_in_window(G.W, half_width)
    piece_of = {}
    for w in alcoves:
        q = G.quarter_of(w)
        if q is not None:
            piece_of[w] = q.index
    return G, alcoves, piece_of


def cmd_lowest(cfg: JobConfig, args) -> int:
    L = cfg.weight()
    report = {"config": cfg.to_json(), **lowest_report(L, cfg.ball)}
    if cfg.group.rank == 2:
        G, alcoves, piece_of = membership_grid(L)
        report["membership"] = sorted(
            ({"word": _word(w), "sigma": i} for w, i in piece_of.items()), key=lambda d: (d["sigma"], d["word"]))
        if args.svg:
            Path(args.svg).write_text(render(G.W, alcoves, piece_of, G.wmax))
    elif args.svg:
        log.warning("pictures are drawn for rank 2 groups only; no SVG written")
    _dump(report, args.json)
    return 0


# cells


def cmd_cells(cfg: JobConfig, args) -> int:
    L = cfg.weight()
    cache = _cache_dir(args)
    status = "off"
    if cache:
        Path(cache).mkdir(parents=True, exist_ok=True)
        W = L.group
        path = Path(cache) / f"{table_key(L, cfg.ball, tuple(W.generators))}.json"
        status = "hit" if path.exists() else "miss"
    table = kl_table(L, cfg.ball, cache_dir=cache)
    parts = {flavor: cell_preorder(table, flavor) for flavor in ("left", "right", "two-sided")}
    bad = duality_check(parts["left"], parts["right"])
    report = {"config": cfg.to_json(), "ball": cfg.ball, "elements": len(table.elements), "cache": status,
              "duality_ok": not bad}
    for flavor, part in parts.items():
        classes = sorted(sorted(_word(w) for w in c) for c in part.classes)
        index = {w: i for i, c in enumerate(classes) for w in c}
        dag = sorted({(index[_word(part.classes[a][0])], index[_word(part.classes[b][0])])
                      for a, b in ((part.class_of[w], part.class_of[y]) for w, y in part.edges) if a != b})
        report[flavor] = {"count": len(classes), "classes": classes, "order": [list(e) for e in dag],
                          "truncated": len(part.truncated)}
    _dump(report, args.json)
    if bad:
        raise InvariantError(f"left/right duality fails for {len(bad)} pairs")
    return 0


# verify


def suite_claim3prime(cfg: JobConfig) -> list[dict]:
    from .group import AffineWeylGroup

    items = []
    for t, r, vals in zero_class_cases():
        rep = claim3prime(WeightFunction.integer(AffineWeylGroup(t, r), vals))
        items.append({"name": f"{t}{r} {dict(sorted(vals.items()))}", "ok": rep["ok"],
                      "patterns": rep["patterns"], "failures": rep["failures"][:5]})
    return items


def suite_bounds(cfg: JobConfig) -> list[dict]:
    rep = check_structure_bounds(cfg.weight(), cfg.ball)
    return [{"name": f"structure constant degrees on ball({cfg.ball})", "ok": rep["ok"],
             "pairs": rep["pairs"], "failures": rep["failures"][:5]}]


def suite_induction(cfg: JobConfig) -> list[dict]:
    table = kl_table(cfg.integer_weight(), cfg.ball)
    data = PieceData(cfg.facet_weight(), table.elements)
    left = cell_preorder(table, "left")
    rep = verify_tx_cw(table, data)
    items = [{"name": "T_x C_w triangularity", "ok": rep["ok"], "checked": rep["checked"],
              "failures": [list(f) for f in rep["failures"][:5]]}]
    for i in data.pieces_in_ball():
        r = check_induction_conditions(table, data, i, left)
        items.append({"name": f"piece {i}", "ok": r["ok"], "pairs": r["pairs"],
                      "failures": {k: r[k][:5] for k in ("length_additive", "injective", "triangular", "left_ideal")}})
    return items


def suite_semicontinuity(cfg: JobConfig) -> list[dict]:
    rep = semicontinuity_check(cfg.facet_weight(), cfg.integer_weight(), cfg.ball)
    items = [{"name": "facet pieces against the configured weight", "ok": rep["ok"], "report": rep}]
    if (cfg.group_type, cfg.rank) == ("C", 2):
        W = cfg.group
        facet, chamber = (WeightFunction.integer(W, v) for v in NEGATIVE_CONTROL)
        neg = semicontinuity_check(facet, chamber, cfg.ball)
        items.append({"name": "negative control", "expected": "failure",
                      "observed": "success" if neg["ok"] else "failure", "ok": not neg["ok"], "report": neg})
    return items


SUITE_FUNCS = {
    "claim3prime": suite_claim3prime,
    "bounds": suite_bounds,
    "induction": suite_induction,
    "semicontinuity": suite_semicontinuity,
}


def cmd_verify(cfg: JobConfig, args) -> int:
    suite = args.suite or cfg.suite
    names = list(SUITE_FUNCS) if suite == "all" else [suite]
    if any(n in ("induction", "semicontinuity") for n in names) and cfg.facet is None:
        raise ConfigError(f"facet: required for the {suite} suite")
    results = {n: SUITE_FUNCS[n](cfg) for n in names}
    ok = all(item["ok"] for items in results.values() for item in items)
    _dump({"config": cfg.to_json(), "suites": results, "ok": ok}, args.json)
    for n, items in results.items():
        for item in items:
            print(f"{'PASS' if item['ok'] else 'FAIL'} {n}: {item['name']}", file=sys.stderr)
    return 0 if ok else 1


# atlas


def cmd_atlas(cfg: JobConfig, args) -> int:
    """Lowest-cell summaries for every named regime of C~2."""
    out = {}
    for name in C2_REGIMES:
        L = regime_weight(name)
        if not L.positive_generators:
            out[name] = {"lowest_cell": "W"}
            continue
        out[name] = lowest_report(L, cfg.ball)
        if args.svg:
            G, alcoves, piece_of = membership_grid(L)
            stem = Path(args.svg)
            slug = re.sub(r"[^a-z0-9]+", "_", name.replace(">", "gt").replace("=", "eq")).strip("_")
            stem.with_name(f"{stem.stem}_{slug}{stem.suffix or '.svg'}").write_text(render(G.W, alcoves, piece_of, G.wmax))
    _dump({"ball": cfg.ball, "regimes": out}, args.json)
    return 0


COMMANDS = {"lowest": cmd_lowest, "cells": cmd_cells, "verify": cmd_verify, "atlas": cmd_atlas}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="affine-cells", description="Lowest two-sided cells and KL cells of affine Weyl groups.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--config", required=True, help="flat key = value job file")
    p.add_argument("--ball", type=int, help="override the ball radius")
    p.add_argument("--cache-dir", help="directory for KL tables (default: $AC_CACHE_DIR)")
    p.add_argument("--svg", help="write a picture (rank 2)")
    p.add_argument("--json", help="write the report here instead of stdout")
    p.add_argument("--suite", choices=["claim3prime", "bounds", "induction", "semicontinuity", "all"])
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = load_config(args.config)
        if args.ball is not None:
            if args.ball < 0:
                raise ConfigError("--ball must be non-negative")
            cfg.ball = args.ball
        return COMMANDS[args.command](cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (InvariantError, AssertionError) as exc:
        print(f"invariant failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
