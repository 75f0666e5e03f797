"""File formats and the command line front end."""

import io
import json

import pytest

from maxenum.cli import main
from maxenum.graphio import (FormatError, ParseError, format_bicolored,
                             format_graph, parse_bicolored_text,
                             parse_dimacs_text, parse_graph_text,
                             write_bicolored, write_graph)
from maxenum.systems import Graph, demo_bicolored_graph

from conftest import DEMO_SOLUTIONS


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture()
def demo_file(tmp_path):
    path = tmp_path / "demo.bg"
    write_bicolored(demo_bicolored_graph(), path)
    return str(path)


@pytest.fixture()
def triangle_file(tmp_path):
    path = tmp_path / "tri.g"
    write_graph(Graph.from_edges(3, [(1, 2), (2, 3), (1, 3)]), path)
    return str(path)


class TestGraphFormats:
    def test_bicolored_parse(self):
        g = parse_bicolored_text("1 2 b\n2 5 b\n1 3 w\n")
        assert g.n == 5
        assert sorted(g.black_edges()) == [(1, 2), (2, 5)]
        assert sorted(g.white_edges()) == [(1, 3)]

    def test_color_conflict_is_format_error(self):
        with pytest.raises(FormatError):
            parse_bicolored_text("1 2 b\n1 2 w\n")

    def test_duplicate_edge_rejected_with_line_number(self):
        with pytest.raises(ParseError, match="line 3"):
            parse_bicolored_text("# fine\n1 2 b\n2 1 b\n")

    def test_malformed_line_reports_position(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_graph_text("1 2\n1 two\n")

    def test_round_trip_is_byte_identical(self):
        text = format_bicolored(demo_bicolored_graph())
        assert format_bicolored(parse_bicolored_text(text)) == text
        gtext = format_graph(Graph.from_edges(4, [(1, 4), (2, 3)]))
        assert format_graph(parse_graph_text(gtext)) == gtext

    def test_nodes_directive_supports_isolated_nodes(self):
        g = parse_graph_text("nodes 5\n1 2\n")
        assert g.n == 5

    def test_dimacs(self):
        cnf = parse_dimacs_text("c comment\np cnf 3 2\n1 -2 0\n2 3 0\n")
        assert cnf.num_vars == 3
        assert cnf.clauses == [[1, -2], [2, 3]]


class TestEnumerateCommand:
    def test_basic_enumeration_output(self, demo_file):
        code, out, err = run_cli("enumerate", demo_file, "--system", "bcclique")
        assert code == 0
        lines = out.strip().splitlines()
        assert {tuple(map(int, ln.split())) for ln in lines} == DEMO_SOLUTIONS

    def test_three_algorithms_agree_after_sorting(self, demo_file):
        outputs = []
        for algo in ("basic", "refined", "stateless"):
            code, out, _ = run_cli("enumerate", demo_file, "--algorithm", algo)
            assert code == 0
            outputs.append(sorted(out.strip().splitlines()))
        assert outputs[0] == outputs[1] == outputs[2]

    def test_canonical_column(self, demo_file):
        code, out, _ = run_cli("enumerate", demo_file, "--canonical")
        row = dict(ln.split("\t") for ln in out.strip().splitlines())
        assert row["1 2 3 5 6"] == "1 2 5 3 6"

    def test_stats_json_on_stderr(self, demo_file):
        code, out, err = run_cli("enumerate", demo_file, "--stats")
        stats = json.loads(err)
        assert stats["solution_count"] == 3
        assert stats["algorithm"] == "basic"

    def test_determinism(self, demo_file):
        a = run_cli("enumerate", demo_file, "--algorithm", "stateless")
        b = run_cli("enumerate", demo_file, "--algorithm", "stateless")
        assert a == b

    def test_clique_system_on_plain_graph(self, triangle_file):
        code, out, _ = run_cli("enumerate", triangle_file,
                               "--system", "clique", "--algorithm", "stateless")
        assert code == 0
        assert out.strip() == "1 2 3"

    def test_usage_error_for_missing_required_ids(self, demo_file):
        code, _, err = run_cli("enumerate", demo_file,
                               "--system", "required-bcclique")
        assert code == 2
        assert "required" in err

    def test_io_error_for_missing_file(self):
        code, _, err = run_cli("enumerate", "/nonexistent/definitely.bg")
        assert code == 1

    def test_required_variant_runs(self, demo_file):
        code, out, _ = run_cli("enumerate", demo_file, "--system",
                               "required-bcclique", "--required", "4",
                               "--algorithm", "refined")
        assert code == 0
        assert out.strip() == "3 4 5"


class TestMccisCommand:
    def test_triangles_verified(self, triangle_file):
        code, out, err = run_cli("mccis", triangle_file, triangle_file, "--verify")
        assert code == 0
        assert len(out.strip().splitlines()) == 6

    def test_single_nodes(self, tmp_path):
        p = tmp_path / "k1.g"
        write_graph(Graph.from_edges(1, []), p)
        code, out, _ = run_cli("mccis", str(p), str(p))
        assert code == 0
        assert out.strip() == "1:1"


class TestGadgetCommand:
    def test_gadget_written_and_enumerable(self, tmp_path):
        cnf = tmp_path / "f.cnf"
        cnf.write_text("p cnf 1 1\n1 0\n")
        out_path = tmp_path / "g.bg"
        code, _, _ = run_cli("gadget", str(cnf), str(out_path))
        assert code == 0
        text = out_path.read_text()
        assert "node 1 = C1" in text
        code, out, _ = run_cli("enumerate", str(out_path), "--algorithm", "refined")
        assert code == 0
        # satisfiability is readable off the output: some maximal solution
        # holds the first chain node (4) together with every clause node (1)
        sols = [set(map(int, ln.split())) for ln in out.strip().splitlines()]
        assert any({1, 4} <= s for s in sols)

    def test_empty_cnf_is_usage_error(self, tmp_path):
        cnf = tmp_path / "empty.cnf"
        cnf.write_text("p cnf 0 0\n")
        code, _, err = run_cli("gadget", str(cnf), str(tmp_path / "o.bg"))
        assert code == 2


class TestVerifyCommand:
    def test_demo_verifies(self, demo_file):
        code, out, _ = run_cli("verify", demo_file, "--system", "bcclique")
        assert code == 0
        assert "FAIL" not in out

    def test_triangle_clique_verifies(self, triangle_file):
        code, out, _ = run_cli("verify", triangle_file, "--system", "clique")
        assert code == 0

    def test_required_verifies(self, demo_file):
        code, out, _ = run_cli("verify", demo_file, "--system",
                               "required-bcclique", "--required", "4")
        assert code == 0

    def test_parallel_jobs(self, demo_file, tmp_path):
        other = tmp_path / "copy.bg"
        other.write_text(open(demo_file).read())
        code, out, _ = run_cli("verify", demo_file, str(other),
                               "--system", "bcclique", "--jobs", "2")
        assert code == 0
        assert "FAIL" not in out


class TestReportCommand:
    def test_report_writes_csv_and_figures(self, tmp_path):
        outdir = tmp_path / "rep"
        code, out, _ = run_cli("report", "--outdir", str(outdir),
                               "--sizes", "5,6", "--per-size", "1", "--seed", "5")
        assert code == 0
        assert (outdir / "runs.csv").exists()
        assert (outdir / "delay_profile.png").stat().st_size > 0
        assert (outdir / "memory_scaling.png").stat().st_size > 0
        header = (outdir / "runs.csv").read_text().splitlines()[0]
        assert "peak_aux_elements" in header
