import os
import subprocess
import sys

import pytest

from cli_cases import CASES
from fregsurf.cli import EXIT_CODES, main, run
from fregsurf.corpus import sfr_corpus
from fregsurf.graph_io import parse_graph_file, serialize

HERE = os.path.dirname(__file__)


def result_block(text):
    lines = text.splitlines()
    k = lines.index("RESULT:")
    return dict(line.split("=", 1) for line in lines[k + 1:] if line)


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_output(name):
    code, text = run(CASES[name])
    with open(os.path.join(HERE, "golden", f"{name}.txt")) as fh:
        expected = fh.read()
    assert f"exit={code}\n" + text.replace(HERE, "<tests>") == expected


@pytest.mark.parametrize("name", sorted(CASES))
def test_result_block_is_last_and_sorted(name):
    _, text = run(CASES[name])
    lines = text.rstrip("\n").splitlines()
    k = lines.index("RESULT:")
    keys = [line.split("=", 1)[0] for line in lines[k + 1:]]
    assert keys == sorted(keys) and all("=" in line for line in lines[k + 1:])


def test_spec_examples():
    code, text = run(CASES["sfr_e8_p7"])
    assert code == 0 and result_block(text)["outcome"] == "StronglyFRegular"
    code, text = run(CASES["p1_235_p5"])
    assert code == 0 and result_block(text)["outcome"] == "No"
    code, text = run(CASES["sfr_a1_p2"])
    assert code == 2 and result_block(text)["outcome"] == "Indeterminate"


def test_exit_codes_are_distinct_per_error():
    codes = {}
    for cls, code in EXIT_CODES:
        codes.setdefault(code, set()).add(cls.__name__)
    assert all(c >= 3 for c in codes)
    assert codes[3] == {"ParseError"} and codes[4] == {"InvariantViolation"} and codes[5] == {"NotKltShape"}


def test_error_paths():
    assert run(["sfr", os.path.join(HERE, "data", "e8.graph")])[0] == 64  # no prime
    assert run(["sfr", os.path.join(HERE, "data", "e8.graph"), "--bogus", "1"])[0] == 64
    assert run(["frobnicate"])[0] == 64
    assert run(["rdpcert", "--type", "2,3"])[0] == 64
    assert run(["p1split", "--p", "3", "--lambda", "2"])[0] == 12  # lambda = -1
    assert run(["cartier", "--p", "2", "--q", "9", "--vars", "1", "--degmax", "2"])[0] == 64
    code, text = run(["campana", "--n", "7", "--i", "2", "--m", "2"])
    assert code == 11 and result_block(text)["error"] == "EnumerationTooLarge"


def test_kv_format_has_only_the_block():
    _, text = run(CASES["sfr_e8_p7"] + ["--format", "kv"])
    assert text.splitlines()[0] == "RESULT:"


def test_plots_are_written(tmp_path):
    for argv in (CASES["classify_e8"], CASES["sfr_e8_p7"], CASES["cartier_2_2_8"], ["corpus", "--per-family", "1"]):
        out = tmp_path / f"{argv[0]}.png"
        code, _ = run(argv + ["--plot", str(out)])
        assert code == 0 and out.stat().st_size > 1000


def test_corpus_dump_round_trips(tmp_path):
    code, _ = run(["corpus", "--seed", "2", "--dump", str(tmp_path)])
    assert code == 0
    names = {e.name: e.graph for e in sfr_corpus(2)}
    files = sorted(os.listdir(tmp_path))
    assert len(files) == len(names)
    for e in sfr_corpus(2):
        with open(tmp_path / f"{e.name}.graph".replace(" ", "").replace(",", "_")) as fh:
            assert parse_graph_file(fh.read()) == e.graph


def test_seeded_corpus_is_deterministic():
    a = [serialize(e.graph) for e in sfr_corpus(5)]
    b = [serialize(e.graph) for e in sfr_corpus(5)]
    assert a == b
    assert run(["corpus", "--seed", "5", "--format", "kv"]) == run(["corpus", "--seed", "5", "--format", "kv"])


def test_main_writes_errors_to_stderr(capsys):
    assert main(CASES["parse_error"]) == 3
    captured = capsys.readouterr()
    assert "duplicate vertex id" in captured.err and captured.out == ""


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "fregsurf", "sfr", os.path.join(HERE, "data", "a1.graph"), "--p", "2", "--format", "kv"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "outcome=Indeterminate" in proc.stdout
