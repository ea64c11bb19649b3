import json
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from convexdg.cli import main, parse_seeds
from convexdg.convex_shape import preset
from convexdg.delaunay import build_delaunay, make_sites
from convexdg.experiment import ExperimentConfig, run
from convexdg.generators import DuplicatePointsUnavoidable, generate_sites
from convexdg.io import (
    body_from_json,
    body_to_json,
    dumps,
    graph_from_json,
    graph_to_json,
    loads,
    params_from_json,
    params_to_json,
    sites_from_json,
    sites_to_json,
)
from convexdg.shape_params import shape_params
from convexdg.svg import IoError, export_svg, render_svg

SQUARE = preset("square")

rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=10**6)


class TestGenerators:
    def test_grid_nine_is_three_by_three(self):
        s = generate_sites("grid", 9, 0)
        xs = sorted({p[0] for p in s.points})
        ys = sorted({p[1] for p in s.points})
        assert xs == ys == [0, 50, 100]

    def test_collinear(self):
        s = generate_sites("collinear", 5, 7)
        a, b = s.points[0], s.points[1]
        for c in s.points:
            assert (b[0] - a[0]) * (c[1] - a[1]) == (b[1] - a[1]) * (c[0] - a[0])
        assert len(set(s.points)) == 5

    @pytest.mark.parametrize("gen", ["uniform", "grid", "collinear", "cocircular", "clustered", "cohomothetic"])
    def test_deterministic(self, gen):
        a = generate_sites(gen, 11, 3, body=SQUARE)
        b = generate_sites(gen, 11, 3, body=SQUARE)
        assert a.points == b.points
        assert all(isinstance(v, F) or isinstance(v, int) for p in a.points for v in p)
        assert all(0 <= v <= 100 for p in a.points for v in p)

    def test_seed_changes_output(self):
        assert generate_sites("uniform", 6, 1).points != generate_sites("uniform", 6, 2).points

    def test_cohomothetic_on_one_homothet(self):
        s = generate_sites("cohomothetic", 10, 4, body=SQUARE)
        lam = {SQUARE.gauge((p[0] - 50, p[1] - 50)) for p in s.points}
        assert len(lam) == 1

    def test_errors(self):
        with pytest.raises(ValueError):
            generate_sites("uniform", 0, 0)
        with pytest.raises(ValueError):
            generate_sites("spiral", 3, 0)
        with pytest.raises(ValueError):
            generate_sites("file", 3, 0)
        with pytest.raises(DuplicatePointsUnavoidable):
            generate_sites("grid", 16, 0, window=(0, 0, F(1, 10**7), F(1, 10**7)))


class TestJson:
    def test_dumps_canonical(self):
        assert dumps({"b": 1, "a": [0.1, F(1, 3)]}, indent=None) == '{"a": [0.10000000000000001, "1/3"],"b": 1}\n'

    @given(st.lists(st.tuples(rationals, rationals), min_size=1, max_size=6, unique=True))
    def test_sites_roundtrip(self, pts):
        s = make_sites(pts)
        text = dumps(sites_to_json(s))
        back = sites_from_json(loads(text))
        assert back.points == s.points
        assert dumps(sites_to_json(back)) == text

    def test_body_roundtrip(self):
        for name in ("square", "random-convex", "regular-64"):
            b = preset(name)
            text = dumps(body_to_json(b))
            b2 = body_from_json(loads(text))
            assert b2.vertices == b.vertices and b2.origin == b.origin
            assert dumps(body_to_json(b2)) == text

    def test_graph_roundtrip(self):
        s = generate_sites("uniform", 12, 0)
        g = build_delaunay(SQUARE, s)
        text = dumps(graph_to_json(g))
        g2 = graph_from_json(loads(text), SQUARE, s)
        assert g2.edges == g.edges and g2.witnesses == g.witnesses
        assert dumps(graph_to_json(g2)) == text

    def test_params_roundtrip(self):
        p = shape_params(preset("pentagon"))
        text = dumps(params_to_json(p))
        assert dumps(params_to_json(params_from_json(loads(text)))) == text

    def test_run_report_bytes(self):
        cfg = ExperimentConfig(shape="equilateral-triangle", n=8, seeds=(0, 1))
        assert dumps(run(cfg).to_json()) == dumps(run(cfg).to_json())


class TestSvg:
    def test_k3(self):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (4, 1), (1, 5)]))
        text = render_svg(g)
        assert text.count("<line ") == 3
        assert text.count("<circle ") == 3
        assert text.startswith("<svg") and text.rstrip().endswith("</svg>")

    def test_witness_polygons_follow_body(self):
        pent = preset("pentagon")
        g = build_delaunay(pent, generate_sites("uniform", 6, 2))
        text = render_svg(g, witnesses=True)
        block = text.split('<g id="witnesses"')[1].split("</g>")[0]
        polys = [ln for ln in block.splitlines() if "<polygon" in ln]
        assert len(polys) == len(g.edges)
        for ln in polys:
            assert len(ln.split('points="')[1].split('"')[0].split()) == pent.m

    def test_overlays_and_determinism(self, tmp_path):
        g = build_delaunay(SQUARE, generate_sites("uniform", 7, 1))
        a = export_svg(g, tmp_path / "a.svg", witnesses=True, diamonds=0.7)
        b = export_svg(g, tmp_path / "b.svg", witnesses=True, diamonds=0.7)
        assert a == b == (tmp_path / "a.svg").read_text()
        assert a.count("<polygon") == len(g.edges) * 3

    def test_unwritable(self, tmp_path):
        g = build_delaunay(SQUARE, make_sites([(0, 0), (1, 1)]))
        with pytest.raises(IoError):
            export_svg(g, tmp_path / "missing" / "x.svg")


class TestCli:
    def test_parse_seeds(self):
        assert parse_seeds("3") == (3,)
        assert parse_seeds("0..4") == (0, 1, 2, 3, 4)
        assert parse_seeds("1,4,7") == (1, 4, 7)

    def test_params(self, capsys):
        assert main(["params", "--shape", "square"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert float(out["kappa"]) == pytest.approx(2.0)

    def test_build_writes_file(self, tmp_path):
        out = tmp_path / "g.json"
        assert main(["build", "--shape", "pentagon", "--n", "6", "--seeds", "2", "--out-json", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["seed"] == 2 and len(data["sites"]) == 6 and data["edges"]

    def test_bad_n(self, capsys):
        assert main(["build", "--n", "0"]) == 2

    def test_missing_shape_file(self, capsys):
        assert main(["params", "--shape-file", "/nonexistent/shape.json"]) == 2
        assert "error" in capsys.readouterr().err

    def test_unknown_generator(self):
        with pytest.raises(SystemExit):
            main(["build", "--gen", "spiral"])

    def test_verify(self, capsys):
        assert main(["verify", "--shape", "square", "--n", "8", "--seeds", "0..1", "--oracle-res", "256"]) == 0
        out = json.loads(capsys.readouterr().out)
        assert [e["seed"] for e in out["entries"]] == [0, 1]
        assert all(e["lemmas"]["oracle"] for e in out["entries"])

    def test_oracle_diff(self, capsys):
        assert main(["oracle-diff", "--shape", "square", "--n", "6", "--seeds", "3"]) == 0
        assert json.loads(capsys.readouterr().out)["equal"]

    def test_render(self, tmp_path):
        out = tmp_path / "r.svg"
        assert main(["render", "--n", "9", "--seeds", "4", "--out-svg", str(out), "--witnesses", "--diamonds",
                     "--path", "0,5"]) == 0
        assert 'id="direct-path"' in out.read_text()

    def test_run_square(self, tmp_path, capsys):
        out = tmp_path / "run.json"
        assert main(["run", "--shape", "square", "--n", "20", "--seeds", "0..9", "--out-json", str(out)]) == 0
        agg = json.loads(out.read_text())["aggregate"]
        assert agg["instances"] == 10 and agg["all_pass"]
        assert float(agg["max_stretch"]) <= 10 ** 0.5

    def test_run_triangle(self, tmp_path):
        out = tmp_path / "run.json"
        assert main(["run", "--shape", "equilateral-triangle", "--n", "15", "--seeds", "0..4",
                     "--out-json", str(out)]) == 0
        assert float(json.loads(out.read_text())["aggregate"]["max_stretch"]) <= 2.0

    def test_run_regular64_cocircular(self, tmp_path):
        out = tmp_path / "run.json"
        assert main(["run", "--shape", "regular-64", "--gen", "cocircular", "--n", "8",
                     "--oracle-res", "512", "--out-json", str(out)]) == 0
