import json
import subprocess
import sys

import pytest

from hankelforms.cli import ConfigError, load_config, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("argv, expected", [
    (("compute", "bloch", "--f", "z2"), 4 / (3 * 3 ** 0.5)),
    (("compute", "tail", "--weight", "standard:1", "--rho", "0"), 4 / 3),
    (("compute", "moment", "--weight", "const", "--x", "1"), 0.5),
    (("compute", "form22", "--measure", "delta:0.5", "--trunc", "200"), 16 / 9),
    (("compute", "bergman", "--f", "1", "--p", "3"), 1.0),
])
def test_compute_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    value, prov = out.splitlines()
    assert float(value) == pytest.approx(expected, rel=1e-8)
    assert prov.startswith("# ")


def test_compute_missing_argument(capsys):
    code, _, err = run(capsys, "compute", "tail")
    assert code == 2 and "--rho" in err


def test_unknown_op_exits_nonzero():
    out = subprocess.run([sys.executable, "-m", "hankelforms.cli", "compute", "nope"],
                         capture_output=True, text=True)
    assert out.returncode == 2 and "usage" in out.stderr


def test_verify_identities(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "identities", "--out", str(tmp_path))
    assert code == 0
    assert all(line.startswith(("PASS", "artifacts")) for line in out.splitlines())
    doc = json.loads((tmp_path / "identities.json").read_text())
    assert doc["passed"] and doc["suite"] == "identities"
    assert (tmp_path / "identities.csv").read_text().startswith("# hankelforms ")


def _measure_file(path, z):
    path.write_text(f"atom {z} 0.0 1.0 0.0\n")
    return path.name


def test_config_corpus_and_reproducible_artifacts(capsys, tmp_path):
    names = [_measure_file(tmp_path / f"m{i}.txt", z) for i, z in enumerate((0.0, 0.5))]
    cfg = tmp_path / "run.ini"
    cfg.write_text("[weights]\nomega = const\n\n[run]\nweight = @omega\np = 2\nbeta = 1\n\n[corpus]\n"
                   + "".join(f"m{i} = {n}\n" for i, n in enumerate(names)))
    outs = []
    for sub in ("a", "b"):
        code, _, _ = run(capsys, "verify", "hankel-measure", "--config", str(cfg), "--out", str(tmp_path / sub))
        assert code == 0
        outs.append((tmp_path / sub / "hankel-measure.json").read_bytes())
    assert outs[0] == outs[1]
    doc = json.loads(outs[0])
    assert doc["config-hash"] == load_config(str(cfg)).digest()
    assert doc["config-hash"] in (tmp_path / "a" / "hankel-measure.csv").read_text().splitlines()[0]


def test_config_hash_tracks_content(tmp_path):
    a, b = tmp_path / "a.ini", tmp_path / "b.ini"
    a.write_text("[run]\np = 2\n")
    b.write_text("[run]\np = 3\n")
    assert load_config(str(a)).digest() != load_config(str(b)).digest()


def test_empty_corpus_is_rejected(capsys, tmp_path):
    cfg = tmp_path / "empty.ini"
    cfg.write_text("[run]\np = 4\nq = 4\n\n[corpus]\n")
    code, _, err = run(capsys, "verify", "theorem1", "--config", str(cfg), "--out", str(tmp_path))
    assert code == 2 and "no symbols" in err


@pytest.mark.parametrize("text, needle", [
    ("[run]\np = two\n", ":2:"),
    ("[weights]\nomega = nonsense:3\n", ":2:"),
    ("[run]\nweight = @missing\n", ":2:"),
    ("[corpus]\nm = does-not-exist.txt\n", ":2:"),
    ("[bogus]\nx = 1\n", "unknown section"),
    ("p = 2\n", "header"),
])
def test_config_errors_carry_location(tmp_path, text, needle):
    cfg = tmp_path / "bad.ini"
    cfg.write_text(text)
    with pytest.raises(ConfigError, match=needle):
        c = load_config(str(cfg))
        c.number("p", 2.0)
        c.weight("weight", "const")


def test_config_error_exit_code(capsys, tmp_path):
    cfg = tmp_path / "bad.ini"
    cfg.write_text("[run]\ntrunc = 8,x\n")
    code, _, err = run(capsys, "verify", "theorem2", "--config", str(cfg), "--out", str(tmp_path))
    assert code == 2 and err.startswith("error:") and "bad.ini:2:" in err
