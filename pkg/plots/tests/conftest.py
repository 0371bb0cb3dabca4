"""Fixture JSON produced by the tilestat command line.

The renderer consumes tilestat only through its CLI and file formats, so
the fixtures are generated the same way a user would make them.
"""

import shutil
import subprocess

import pytest

TILESTAT = shutil.which("tilestat")


def _run(args, out_path):
    assert TILESTAT, "tilestat CLI not installed"
    subprocess.run([TILESTAT, *args, "--out", str(out_path)],
                   check=True, capture_output=True, text=True)
    return out_path


@pytest.fixture(scope="session")
def fixture_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("payloads")
    lattice = _run(["tiling", "gen", "--model", "integer-lattice",
                    "--steps", "40"], root / "lattice.json")
    _run(["stats", "--input", str(lattice), "--stat", "slope-gaps",
          "--dedupe", "--gap-norm", "values", "--bins", "0:4:16"],
         root / "hist.json")
    _run(["pc", "decompose", "--n", "8"], root / "decomp.json")
    _run(["pc", "decompose", "--n", "7", "--no-values"],
         root / "decomp-novalues.json")
    _run(["ulam", "gen", "--golden", "--steps", "150"], root / "run.json")
    _run(["ulam", "timing", "--v0", "1,0", "--v1", "0,1", "--steps", "400"],
         root / "timing.json")
    return root


@pytest.fixture
def out_dir(tmp_path):
    return tmp_path
