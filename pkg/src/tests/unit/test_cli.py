"""
Tests for the command line
"""

import io
import json

import pytest

from mgcolor.cli import EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, EXIT_RESOURCE, run_command

FAT_TRIANGLE = "mgraph 3\ne 0 1 2\ne 1 2 2\ne 0 2 2\n"
EXTENDED = "c 0 1\nc 1 6\nc 2 2\nc 3 3\nc 4 4\nc 5 5\n"


@pytest.fixture
def files(tmp_path):
    """Write named text files into tmp_path and return their paths"""
    def write(**contents):
        paths = {}
        for name, text in contents.items():
            path = tmp_path / f"{name}.txt"
            path.write_text(text)
            paths[name] = str(path)
        return paths
    return write


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = run_command(list(argv), out=out, err=err)
    return status, out.getvalue(), err.getvalue()


class TestAnalysisCommands:
    """Tests for gamma, chi, dense and color"""

    def test_gamma(self, files):
        """Test the exact density"""
        paths = files(graph=FAT_TRIANGLE, edge="mgraph 2\ne 0 1\n")
        assert run("gamma", paths["graph"]) == (EXIT_OK, "6\n", "")
        assert run("gamma", paths["edge"])[1] == "0\n"

    def test_chi(self, files):
        """Test the chromatic index"""
        paths = files(graph=FAT_TRIANGLE)
        assert run("chi", paths["graph"])[:2] == (EXIT_OK, "6\n")

    def test_dense(self, files):
        """Test maximal dense subgraphs and the negative answer"""
        paths = files(graph=FAT_TRIANGLE)
        assert run("dense", paths["graph"], "--k", "6")[:2] == (EXIT_OK, "dense 6 0 1 2\n")
        assert run("dense", paths["graph"], "--k", "5")[:2] == (EXIT_NEGATIVE, "")

    def test_color(self, files):
        """Test the Δ+μ coloring header"""
        paths = files(graph=FAT_TRIANGLE)
        status, out, _ = run("color", paths["graph"])
        assert status == EXIT_OK
        header, *lines = out.splitlines()
        assert header.startswith("# colors ") and header.endswith(" bound 6")
        assert len(lines) == 6


class TestExtensionCommands:
    """Tests for extend, verify and trace"""

    def test_extend(self, files):
        """Test the extension output"""
        paths = files(graph=FAT_TRIANGLE, pre="p 0 1\n")
        assert run("extend", paths["graph"], paths["pre"]) == (EXIT_OK, EXTENDED, "")

    def test_trace_replay(self, files, tmp_path):
        """Test the written trace replays to the same coloring"""
        paths = files(graph=FAT_TRIANGLE, pre="p 0 1\n")
        trace = str(tmp_path / "trace.json")
        status, out, _ = run("extend", paths["graph"], paths["pre"], "--trace", trace)
        assert status == EXIT_OK
        with open(trace) as f:
            assert [step["op"] for step in json.load(f)] == ["opening"]
        assert run("trace", paths["graph"], trace)[:2] == (EXIT_OK, out)

    def test_oracle_strategy(self, files):
        """Test --strategy oracle-only"""
        paths = files(graph=FAT_TRIANGLE, pre="p 0 1\n")
        status, out, _ = run("extend", paths["graph"], paths["pre"], "--strategy", "oracle-only")
        assert status == EXIT_OK
        assert out.startswith("c 0 1\n")

    def test_verify(self, files):
        """Test valid and invalid colorings"""
        paths = files(
            graph=FAT_TRIANGLE,
            pre="p 0 1\n",
            good=EXTENDED,
            bad="c 0 1\nc 1 1\n",
        )
        assert run("verify", paths["graph"], paths["pre"], paths["good"])[:2] == (
            EXIT_OK,
            "valid\n",
        )
        status, out, _ = run("verify", paths["graph"], paths["pre"], paths["bad"])
        assert status == EXIT_NEGATIVE
        assert "conflict: edges 0 and 1 share color 1 at 0" in out


class TestExitCodes:
    """Tests for error handling"""

    def test_parse_error(self, files):
        """Test a malformed graph"""
        paths = files(graph="mgraph 2\ne 0 0\n")
        status, out, err = run("chi", paths["graph"])
        assert status == EXIT_INPUT
        assert out == ""
        assert err.startswith("error: line 2:")

    def test_missing_file(self, tmp_path):
        """Test an unreadable file"""
        assert run("gamma", str(tmp_path / "absent.txt"))[0] == EXIT_INPUT

    def test_bad_precoloring(self, files):
        """Test a color above Δ+μ"""
        paths = files(graph=FAT_TRIANGLE, pre="p 0 9\n")
        assert run("extend", paths["graph"], paths["pre"])[0] == EXIT_INPUT

    def test_budget_exhausted(self, files):
        """Test --budget and the resource exit code"""
        paths = files(graph=FAT_TRIANGLE)
        status, _, err = run("--budget", "1", "chi", paths["graph"])
        assert status == EXIT_RESOURCE
        assert "bounds: 4..6" in err

    def test_invalid_budget(self, files):
        """Test a nonpositive budget"""
        paths = files(graph=FAT_TRIANGLE)
        assert run("--budget", "0", "chi", paths["graph"])[0] == EXIT_INPUT

    def test_unknown_log_level(self, files):
        """Test --log-level validation"""
        paths = files(graph=FAT_TRIANGLE)
        assert run("--log-level", "LOUD", "chi", paths["graph"])[0] == EXIT_INPUT

    def test_usage_error(self):
        """Test argparse errors map to the input exit code"""
        assert run("paint")[0] == EXIT_INPUT
        assert run()[0] == EXIT_INPUT

    def test_config_file(self, files):
        """Test --config with a YAML file"""
        paths = files(graph=FAT_TRIANGLE, config="solver_budget: 1\n")
        assert run("--config", paths["config"], "chi", paths["graph"])[0] == EXIT_RESOURCE


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
