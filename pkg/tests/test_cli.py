import json
import re

import pytest

from affine_cells.cli import main
from affine_cells.group import AffineWeylGroup
from affine_cells.config import ConfigError, parse_config_text


def write(tmp_path, text, name="job.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def run(tmp_path, command, text, *extra):
    out = tmp_path / f"{command}.json"
    rc = main([command, "--config", write(tmp_path, text), "--json", str(out), *extra])
    return rc, (json.loads(out.read_text()) if out.exists() else None)


class TestConfig:
    def test_forms(self):
        cfg = parse_config_text("group = C2\nweights = t:2 s:1 t':1\n")
        assert cfg.weights == {"t": 2, "s": 1, "t'": 1}
        assert parse_config_text("group = C2\nweights = 2 1 1\n").weights == cfg.weights
        assert parse_config_text("group = C2\nweights = a>c,b>0\n").weights == cfg.weights

    def test_generic_order(self):
        cfg = parse_config_text("group = C2\nweights = 205 1 101\norder = t-pair-apart\n")
        assert cfg.weight().spec.forms == ((1, 0, 1), (1, 0, 0), (0, 1, 0))
        cfg = parse_config_text("group = C2\nweights = 2 1 1\norder = 1 0 1; 1 0 0; 0 1 0\nplus = t t'\n")
        assert cfg.spec().plus == {"t", "t'"}

    @pytest.mark.parametrize("text", [
        "group = C2\n",
        "group = C2\nweights = 1 1\n",
        "group = C2\nweights = 1 2 3\n",
        "group = C2\nweights = 2 -1 1\n",
        "group = C2\nweights = x:1\n",
        "group = Q7\nweights = 1 1\n",
        "group = G2\nweights = a>c,b>0\n",
        "group = C2\nweights = 2 1 1\ncolour = red\n",
        "group = C2\nweights = 2 1 1\nsuite = everything\n",
        "group = C2\nweights = 2 1 1\norder = t-pair-apart\n",
        "group = C2\nweights = 2 1 1\nball = -1\n",
    ])
    def test_rejected(self, text):
        with pytest.raises(ConfigError):
            parse_config_text(text)


class TestExitCodes:
    def test_config_error(self, tmp_path, capsys):
        assert main(["lowest", "--config", write(tmp_path, "group = C2\n")]) == 2
        assert "weights" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["lowest", "--config", str(tmp_path / "nope.cfg")]) == 2

    def test_zero_weight(self, tmp_path, capsys):
        assert main(["lowest", "--config", write(tmp_path, "group = C2\nweights = zero\n")]) == 2
        assert "c_min = W" in capsys.readouterr().err

    def test_facet_required(self, tmp_path):
        assert main(["verify", "--config", write(tmp_path, "group = C2\nweights = 2 1 1\nsuite = induction\n")]) == 2


class TestLowest:
    def test_report(self, tmp_path):
        rc, data = run(tmp_path, "lowest", "group = C2\nweights = a=c>0,b=0\nball = 6\n")
        assert rc == 0
        W = AffineWeylGroup("C", 2)
        assert {W.parse(w) for w in data["wmax"]} == {W.parse(w) for w in ["tsts", "tst", "t'st's", "t'st'", "tt'"]}
        assert len(data["sigma_cells"]) == 4

    def test_g2_has_twelve_pieces(self, tmp_path):
        rc, data = run(tmp_path, "lowest", "group = G2\nweights = 1 1\nball = 6\n")
        assert rc == 0 and len(data["sigma_cells"]) == 12

    def test_deterministic(self, tmp_path):
        cfg = write(tmp_path, "group = C2\nweights = 3 1 2\nball = 5\n")
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        main(["lowest", "--config", cfg, "--json", str(a)])
        main(["lowest", "--config", cfg, "--json", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_svg_matches_json(self, tmp_path):
        svg = tmp_path / "p.svg"
        rc, data = run(tmp_path, "lowest", "group = C2\nweights = 2 0 1\nball = 4\n", "--svg", str(svg))
        shaded = set(re.findall(r'data-word="([^"]+)" data-sigma="(\d+)"', svg.read_text()))
        listed = {(m["word"], str(m["sigma"])) for m in data["membership"]}
        assert shaded and shaded == listed

    def test_rank_three_without_picture(self, tmp_path):
        rc, data = run(tmp_path, "lowest", "group = B3\nweights = 1 1\nball = 3\n", "--svg", str(tmp_path / "x.svg"))
        assert rc == 0 and "membership" not in data and not (tmp_path / "x.svg").exists()


class TestCells:
    def test_cache(self, tmp_path):
        text = "group = C2\nweights = 2 1 1\nball = 5\n"
        cache = str(tmp_path / "cache")
        rc, first = run(tmp_path, "cells", text, "--cache-dir", cache)
        rc2, second = run(tmp_path, "cells", text, "--cache-dir", cache)
        assert rc == rc2 == 0
        assert (first["cache"], second["cache"]) == ("miss", "hit")
        for flavor in ("left", "right", "two-sided"):
            assert first[flavor] == second[flavor]
        assert first["duality_ok"]

    def test_env_cache(self, tmp_path, monkeypatch):
        monkeypatch.setenv("AC_CACHE_DIR", str(tmp_path / "env"))
        rc, data = run(tmp_path, "cells", "group = C2\nweights = 1 1 1\nball = 3\n")
        assert data["cache"] == "miss" and any((tmp_path / "env").iterdir())

    def test_ball_override(self, tmp_path):
        rc, data = run(tmp_path, "cells", "group = C2\nweights = 1 1 1\nball = 6\n", "--ball", "2")
        assert data["ball"] == 2 and data["elements"] == 1 + 3 + 5


class TestVerify:
    def test_bounds(self, tmp_path):
        rc, data = run(tmp_path, "verify", "group = C2\nweights = 3 1 2\nball = 3\nsuite = bounds\n")
        assert rc == 0 and data["ok"]

    def test_semicontinuity_with_negative_control(self, tmp_path):
        rc, data = run(tmp_path, "verify",
                       "group = C2\nweights = 101 1 101\nfacet = 1 0 1\nball = 6\nsuite = semicontinuity\n")
        items = data["suites"]["semicontinuity"]
        assert rc == 0
        neg = [i for i in items if i.get("expected") == "failure"]
        assert len(neg) == 1 and neg[0]["observed"] == "failure"

    def test_failing_suite_returns_one(self, tmp_path):
        # (1,0,1) is not in the closure of the equal-parameter chamber
        rc, data = run(tmp_path, "verify", "group = C2\nweights = 1 1 1\nfacet = 1 0 1\nball = 8\nsuite = semicontinuity\n")
        assert rc == 1 and not data["ok"]


class TestAtlas:
    def test_atlas(self, tmp_path):
        svg = tmp_path / "atlas.svg"
        rc, data = run(tmp_path, "atlas", "group = C2\nweights = 1 1 1\nball = 4\n", "--svg", str(svg))
        assert rc == 0
        assert set(data["regimes"]) == {"a>c,b>0", "a>c,b=0", "a=c>0,b>0", "a=c>0,b=0", "a=c=0,b>0", "zero"}
        assert data["regimes"]["zero"] == {"lowest_cell": "W"}
        assert len(list(tmp_path.glob("atlas_*.svg"))) == 5
