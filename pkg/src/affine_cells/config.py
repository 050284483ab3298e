"""Job configuration: a flat ``key = value`` file, validated before any computation.

Recognised keys::

    group   = C2                     # type letter and rank (also ``type`` / ``rank``)
    weights = a>c,b>0                # named C~2 regime, or
    weights = t:2 s:1 t':1           # one integer per generator class, or
    weights = 2 1 1                  # integers in class order (t, s, t' for type C)
    order   = t-pair-apart           # construction of the ordered group, or an explicit
    order   = 1 0 1; 1 0 0; 0 1 0    # matrix of forms, rows separated by ';'
    plus    = t t'                   # positive classes for an explicit matrix
    ball    = 8
    n0      = 10                     # length bound for the threshold constructions
    facet   = 1 0 1                  # facet weight for the semicontinuity suite
    suite   = all
    json    = true
    svg     = false

Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import configparser
import re
from dataclasses import dataclass, field
from pathlib import Path

from .group import AffineWeylGroup
from .ordered import OrderedGroupSpec, WeightFunction
from .params import order_from_claim
from .regimes import C2_REGIMES

CONSTRUCTIONS = ("lex", "t-dominant", "s-dominant", "t-pair-apart", "t-pair-close")
SUITES = ("claim3prime", "bounds", "induction", "semicontinuity", "all")
KEYS = {"group", "type", "rank", "weights", "order", "plus", "ball", "n0", "facet", "suite", "json", "svg"}


class ConfigError(ValueError):
    pass


def class_order(W: AffineWeylGroup) -> tuple[str, ...]:
    names = sorted(set(W.class_of.values()))
    if W.type_label == "C" and W.rank >= 2:
        return ("t", "s", "t'")
    if set(names) == {"s", "t"}:
        return ("s", "t")
    return tuple(names)


@dataclass
class JobConfig:
    group_type: str = "C"
    rank: int = 2
    weights: dict = field(default_factory=dict)
    regime: str | None = None
    order: str | None = None  # construction name
    forms: tuple | None = None  # explicit matrix
    plus: tuple = ()
    ball: int = 6
    n0: int = 10
    facet: dict | None = None
    suite: str = "all"
    json: bool = True
    svg: bool = False

    _group: AffineWeylGroup | None = field(default=None, repr=False, compare=False)

    @property
    def group(self) -> AffineWeylGroup:
        if self._group is None:
            self._group = AffineWeylGroup(self.group_type, self.rank)
        return self._group

    def integer_weight(self) -> WeightFunction:
        return WeightFunction.integer(self.group, self.weights)

    def spec(self) -> OrderedGroupSpec | None:
        if self.order is not None:
            return order_from_claim(self.order, self.weights, self.n0)
        if self.forms is not None:
            return OrderedGroupSpec(len(self.forms[0]), self.forms, class_order(self.group), frozenset(self.plus))
        return None

    def weight(self) -> WeightFunction:
        """Generic weight over the configured order, or the integer weight."""
        spec = self.spec()
        if spec is None:
            return self.integer_weight()
        return WeightFunction.generic(self.group, spec)

    def facet_weight(self) -> WeightFunction | None:
        return None if self.facet is None else WeightFunction.integer(self.group, self.facet)

    def to_json(self) -> dict:
        return {
            "group": f"{self.group_type}{self.rank}",
            "weights": dict(sorted(self.weights.items())),
            "regime": self.regime,
            "order": self.order if self.order is not None else (None if self.forms is None else [list(f) for f in self.forms]),
            "ball": self.ball,
            "n0": self.n0,
        }


def _ints(text: str, key: str) -> list[int]:
    try:
        return [int(x) for x in re.split(r"[\s,]+", text.strip()) if x]
    except ValueError:
        raise ConfigError(f"{key}: expected integers, got {text!r}") from None


def _bool(text: str, key: str) -> bool:
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {text!r}")


def _class_values(text: str, W: AffineWeylGroup, key: str) -> dict:
    order = class_order(W)
    text = text.strip()
    if ":" in text or "=" in text:
        out = {}
        for item in re.split(r"[\s,]+", text):
            if not item:
                continue
            name, _, val = item.replace("=", ":").partition(":")
            if name not in order:
                raise ConfigError(f"{key}: unknown class {name!r}; classes are {list(order)}")
            try:
                out[name] = int(val)
            except ValueError:
                raise ConfigError(f"{key}: value for {name!r} must be an integer") from None
    else:
        vals = _ints(text, key)
        if len(vals) != len(order):
            raise ConfigError(f"{key}: expected {len(order)} integers for classes {list(order)}")
        out = dict(zip(order, vals))
    missing = set(order) - set(out)
    if missing:
        raise ConfigError(f"{key}: no value for classes {sorted(missing)}")
    if any(v < 0 for v in out.values()):
        raise ConfigError(f"{key}: weights must be non-negative (fold signs first)")
    if W.type_label == "C" and out["t"] < out["t'"]:
        raise ConfigError(f"{key}: type C weights need L(t) >= L(t')")
    return out


def parse_config_text(text: str) -> JobConfig:
    parser = configparser.ConfigParser(delimiters=("=",), comment_prefixes=("#",), inline_comment_prefixes=("#",),
                                       interpolation=None)
    try:
        parser.read_string("[job]\n" + text)
    except configparser.Error as exc:
        raise ConfigError(f"unreadable config: {exc}") from None
    raw = dict(parser["job"])
    unknown = set(raw) - KEYS
    if unknown:
        raise ConfigError(f"unknown keys {sorted(unknown)}")
    cfg = JobConfig()
    if "group" in raw:
        m = re.fullmatch(r"\s*([A-Za-z])\s*~?\s*(\d+)\s*", raw["group"])
        if not m:
            raise ConfigError(f"group: expected e.g. C2 or G2, got {raw['group']!r}")
        cfg.group_type, cfg.rank = m.group(1).upper(), int(m.group(2))
    if "type" in raw:
        cfg.group_type = raw["type"].strip().upper()
    if "rank" in raw:
        cfg.rank = _ints(raw["rank"], "rank")[0]
    try:
        W = cfg.group
    except ValueError as exc:
        raise ConfigError(f"group: {exc}") from None
    w = raw.get("weights")
    if w is None:
        raise ConfigError("weights: required")
    if w.strip() in C2_REGIMES:
        if (cfg.group_type, cfg.rank) != ("C", 2):
            raise ConfigError("weights: named regimes are defined for C2 only")
        cfg.regime = w.strip()
        cfg.weights = dict(zip(("t", "s", "t'"), C2_REGIMES[cfg.regime]))
    else:
        cfg.weights = _class_values(w, W, "weights")
    for key in ("ball", "n0"):
        if key in raw:
            vals = _ints(raw[key], key)
            if len(vals) != 1 or vals[0] < 0:
                raise ConfigError(f"{key}: expected one non-negative integer")
            setattr(cfg, key, vals[0])
    if cfg.n0 < 1:
        raise ConfigError("n0: must be positive")
    if "order" in raw:
        text = raw["order"].strip()
        if text in CONSTRUCTIONS:
            cfg.order = text
        else:
            rows = [_ints(r, "order") for r in text.split(";") if r.strip()]
            width = len(class_order(W))
            if not rows or any(len(r) != width for r in rows):
                raise ConfigError(f"order: expected a construction name {list(CONSTRUCTIONS)} or rows of {width} integers")
            cfg.forms = tuple(tuple(r) for r in rows)
    if "plus" in raw:
        cfg.plus = tuple(x for x in re.split(r"[\s,]+", raw["plus"].strip()) if x)
        bad = set(cfg.plus) - set(class_order(W))
        if bad:
            raise ConfigError(f"plus: unknown classes {sorted(bad)}")
    if "facet" in raw:
        cfg.facet = _class_values(raw["facet"], W, "facet")
    if "suite" in raw:
        cfg.suite = raw["suite"].strip()
        if cfg.suite not in SUITES:
            raise ConfigError(f"suite: expected one of {list(SUITES)}")
    for key in ("json", "svg"):
        if key in raw:
            setattr(cfg, key, _bool(raw[key], key))
    try:
        cfg.spec()
    except ValueError as exc:
        raise ConfigError(f"order: {exc}") from None
    return cfg


def load_config(path: str | Path) -> JobConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    return parse_config_text(text)
