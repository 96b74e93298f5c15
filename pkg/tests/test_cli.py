import json
from pathlib import Path

import pytest

from deltalens.cli import main
from deltalens.gen import GenConfig, gen_indexed_smf, rng_for
from deltalens.idx import fibres
from deltalens.jsonio import dumps, to_json

from test_idx import loop_generating_instance
from test_lens import vee_lens


def write(tmp_path, name, value) -> str:
    path = tmp_path / name
    path.write_text(dumps(to_json(value)), encoding="utf-8")
    return str(path)


@pytest.fixture
def vee_idx_file(tmp_path):
    return write(tmp_path, "vee.json", fibres(vee_lens()))


@pytest.fixture
def vee_lens_file(tmp_path):
    return write(tmp_path, "veelens.json", vee_lens())


def test_validate_ok(vee_lens_file, tmp_path):
    out = tmp_path / "out"
    assert main(["validate", "--input", vee_lens_file,
                 "--output", str(out)]) == 0
    report = json.loads((out / "veelens.report.json").read_text())
    assert report["ok"] is True


def test_validate_catches_violation(tmp_path):
    lens = vee_lens()
    data = to_json(lens)
    data["lifts"] = [row for row in data["lifts"]
                     if not (row["object"] == "a0" and row["over"] == "u")]
    path = tmp_path / "bad.json"
    path.write_text(dumps(data), encoding="utf-8")
    assert main(["validate", "--input", str(path)]) == 1


def test_malformed_json_is_input_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", "--input", str(path)]) == 2


def test_unknown_reference_is_input_error(tmp_path):
    data = to_json(vee_lens())
    data["functor"]["obj_map"]["a0"] = "nowhere"
    path = tmp_path / "ref.json"
    path.write_text(dumps(data), encoding="utf-8")
    assert main(["elements", "--input", str(path)]) == 2


def test_elements_and_fibres_cycle(vee_idx_file, vee_lens_file, tmp_path):
    out = tmp_path / "out"
    assert main(["elements", "--input", vee_idx_file,
                 "--output", str(out)]) == 0
    lens_file = out / "vee.lens.json"
    assert lens_file.exists()
    assert main(["fibres", "--input", str(lens_file),
                 "--output", str(out)]) == 0
    assert (out / "vee.lens.idx.json").exists()


def test_roundtrip_command(vee_idx_file, vee_lens_file):
    assert main(["roundtrip", "--input", vee_idx_file, vee_lens_file]) == 0


def test_classify_command(vee_idx_file, tmp_path):
    out = tmp_path / "out"
    assert main(["classify", "--input", vee_idx_file,
                 "--output", str(out)]) == 0
    report = json.loads((out / "vee.classes.json").read_text())
    assert report["faithful"]["agree"] is True


def test_factor_epi_mono(vee_lens_file, tmp_path):
    out = tmp_path / "out"
    assert main(["factor", "--kind", "epi_mono", "--input", vee_lens_file,
                 "--output", str(out)]) == 0
    assert (out / "veelens.epi.json").exists()
    assert (out / "veelens.mono.json").exists()


def test_factor_comprehensive(tmp_path):
    lens = vee_lens()
    path = write(tmp_path, "fun.json", lens.f)
    out = tmp_path / "out"
    assert main(["factor", "--kind", "comprehensive", "--input", path,
                 "--output", str(out)]) == 0
    assert (out / "fun.initial.json").exists()
    assert (out / "fun.dopf.json").exists()


def test_factor_ioo(vee_lens_file, tmp_path):
    out = tmp_path / "out"
    assert main(["factor", "--kind", "ioo_dopf", "--input", vee_lens_file,
                 "--output", str(out)]) == 0
    assert (out / "veelens.ioo.json").exists()
    assert (out / "veelens.ff.json").exists()


def test_compose_smf(tmp_path):
    from deltalens.gen import gen_composable_smfs

    m1, m2 = gen_composable_smfs(rng_for("clismf", 0), 2)
    p1 = write(tmp_path, "m1.json", m1)
    p2 = write(tmp_path, "m2.json", m2)
    out = tmp_path / "out"
    assert main(["compose-smf", "--input", p1, p2, "--output", str(out)]) == 0
    assert (out / "composite.smf.json").exists()


def test_pullback_and_pushforward(tmp_path, vee_idx_file):
    from deltalens.fincat import FinFunctor
    from deltalens.gen import interval_cat, terminal_cat

    x = fibres(vee_lens())
    g = FinFunctor(x.base, terminal_cat(),
                   {"x0": "*", "x1": "*"},
                   {"i:x0": "i:*", "i:x1": "i:*", "u": "i:*"})
    gpath = write(tmp_path, "collapse.json", g)
    out = tmp_path / "out"
    assert main(["pushforward", "--input", vee_idx_file, gpath,
                 "--output", str(out)]) == 0
    assert (out / "pushforward.idx.json").exists()

    k = FinFunctor(terminal_cat(), x.base, {"*": "x1"}, {"i:*": "i:x1"})
    kpath = write(tmp_path, "point.json", k)
    assert main(["pullback", "--input", vee_idx_file, kpath,
                 "--output", str(out)]) == 0
    assert (out / "pullback.idx.json").exists()


def test_pushforward_undecided_exit_code(tmp_path):
    from deltalens.fincat import FinFunctor
    from deltalens.gen import terminal_cat

    x = loop_generating_instance()
    g = FinFunctor(x.base, terminal_cat(),
                   {"x0": "*", "x1": "*"},
                   {"i:x0": "i:*", "i:x1": "i:*", "u": "i:*"})
    xpath = write(tmp_path, "loop.json", x)
    gpath = write(tmp_path, "collapse.json", g)
    out = tmp_path / "out"
    assert main(["pushforward", "--input", xpath, gpath,
                 "--output", str(out)]) == 3
    report = json.loads((out / "pushforward.undecided.json").read_text())
    assert "reason" in report


def test_gen_is_deterministic(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    argv = ["gen", "--gen-kind", "idx", "--seed", "9", "--count", "4"]
    assert main(argv + ["--output", str(out1)]) == 0
    assert main(argv + ["--output", str(out2)]) == 0
    files1 = sorted(p.name for p in out1.iterdir())
    files2 = sorted(p.name for p in out2.iterdir())
    assert files1 == files2 and len(files1) == 4
    for name in files1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_gen_different_seeds_differ(tmp_path):
    out1 = tmp_path / "a"
    out2 = tmp_path / "b"
    assert main(["gen", "--seed", "1", "--count", "3",
                 "--output", str(out1)]) == 0
    assert main(["gen", "--seed", "2", "--count", "3",
                 "--output", str(out2)]) == 0
    same = all(
        (out1 / p.name).read_bytes() == (out2 / p.name).read_bytes()
        for p in out1.iterdir()
    )
    assert not same


def test_gen_instances_validate(tmp_path):
    out = tmp_path / "gen"
    for kind in ("fincat", "functor", "lens", "idx", "smf"):
        assert main(["gen", "--gen-kind", kind, "--seed", "3",
                     "--count", "3", "--output", str(out)]) == 0


def test_dot_export(tmp_path, vee_lens_file):
    out = tmp_path / "out"
    assert main(["fibres", "--input", vee_lens_file, "--output", str(out),
                 "--format", "dot"]) == 0
    assert (out / "veelens.idx.dot").exists()


def test_check_laws_single_suite(tmp_path):
    assert main(["check-laws", "--suite", "lens-dialens-equivalence",
                 "--seed", "5", "--count", "12"]) == 0


def test_check_laws_unknown_suite():
    assert main(["check-laws", "--suite", "no-such-suite"]) == 2


def test_env_var_bounds(tmp_path, monkeypatch):
    from deltalens.fincat import FinFunctor
    from deltalens.gen import terminal_cat

    x = fibres(vee_lens())
    g = FinFunctor(x.base, terminal_cat(),
                   {"x0": "*", "x1": "*"},
                   {"i:x0": "i:*", "i:x1": "i:*", "u": "i:*"})
    xpath = write(tmp_path, "x.json", x)
    gpath = write(tmp_path, "g.json", g)
    # strangling the word budget makes even easy pushouts undecided
    monkeypatch.setenv("TOOL_PUSHOUT_SIZE_BOUND", "3")
    assert main(["pushforward", "--input", xpath, gpath]) == 3
    monkeypatch.delenv("TOOL_PUSHOUT_SIZE_BOUND")
    assert main(["pushforward", "--input", xpath, gpath]) == 0


def test_gen_writes_manifest(tmp_path):
    out = tmp_path / "gen"
    assert main(["gen", "--seed", "11", "--count", "2",
                 "--output", str(out)]) == 0
    manifest = json.loads((out / "gen-manifest.json").read_text())
    assert manifest["seed"] == "11" and manifest["count"] == 2


def test_allow_invalid_loads_with_report(tmp_path):
    lens = vee_lens()
    data = to_json(lens)
    data["lifts"] = data["lifts"][1:]
    path = tmp_path / "bad.json"
    path.write_text(dumps(data), encoding="utf-8")
    # without the flag: refused as input; with it: loadable for inspection
    assert main(["fibres", "--input", str(path)]) == 2
    assert main(["validate", "--input", str(path)]) == 1
