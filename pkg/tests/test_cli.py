"""Command-line interface: parsing, exit codes, output formats."""

import json
from fractions import Fraction

import pytest

from curvspec import cli, flat


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def write_json(tmp_path, payload, name="group.json"):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


S3 = {"space": "spherical", "elements": [{"angles": ["0", "0"]}]}
RP3 = {
    "space": "spherical",
    "elements": [{"angles": ["0", "0"]}, {"angles": ["1/2", "1/2"]}],
}


# ---------------------------------------------------------------- spectrum


def test_spectrum_fixture_table(capsys):
    code, out, _ = run(capsys, "spectrum", "fixture:flat8_a", "--p", "0", "--cutoff", "1")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["p", "eigenvalue_exact", "eigenvalue_float", "multiplicity"]
    assert lines[1].split() == ["0", "4*pi^2*0", "0.0", "1"]
    assert lines[2].split() == ["0", "4*pi^2*1", "39.47841760435743", "6"]


def test_spectrum_csv_format(capsys):
    code, out, _ = run(
        capsys, "spectrum", "fixture:flat8_a", "--p", "0", "--cutoff", "1",
        "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "p,eigenvalue_exact,eigenvalue_float,multiplicity"
    assert lines[2] == "0,4*pi^2*1,39.47841760435743,6"
    assert all(len(line.split(",")) == 4 for line in lines)


def test_spectrum_spherical_trivial_group(capsys, tmp_path):
    path = write_json(tmp_path, S3)
    code, out, _ = run(capsys, "spectrum", path, "--p", "0", "--cutoff", "10")
    assert code == 0
    rows = [line.split() for line in out.splitlines()[1:]]
    assert [(r[1], r[3]) for r in rows] == [("0", "1"), ("3", "4"), ("8", "9")]


def test_spectrum_degree_range(capsys):
    code, out, _ = run(
        capsys, "spectrum", "fixture:klein_a", "--p", "0..1", "--cutoff", "1/4",
    )
    assert code == 0
    degrees = {line.split()[0] for line in out.splitlines()[1:]}
    assert degrees == {"0", "1"}


def test_spectrum_malformed_rational_exits_2(capsys, tmp_path):
    payload = {
        "space": "flat",
        "lattice": [["1", "0"], ["0", "1/0"]],
        "cosets": [{"rotation": [["1", "0"], ["0", "1"]], "translation": ["0", "0"]}],
    }
    code, _, err = run(capsys, "spectrum", write_json(tmp_path, payload), "--p", "0", "--cutoff", "1")
    assert code == 2
    assert "1/0" in err


def test_spectrum_float_rational_rejected(capsys, tmp_path):
    payload = {
        "space": "flat",
        "lattice": [[1.5, 0], [0, 1]],
        "cosets": [{"rotation": [["1", "0"], ["0", "1"]], "translation": ["0", "0"]}],
    }
    code, _, err = run(capsys, "spectrum", write_json(tmp_path, payload), "--p", "0", "--cutoff", "1")
    assert code == 2


def test_spectrum_invariant_violation_exits_3(capsys, tmp_path):
    path = write_json(tmp_path, {"space": "spherical", "lens": {"N": 4, "q": [1, 2]}})
    code, _, err = run(capsys, "spectrum", path, "--p", "0", "--cutoff", "10")
    assert code == 3
    assert "free" in err


def test_spectrum_torsion_exits_3(capsys, tmp_path):
    payload = {
        "space": "flat",
        "lattice": [["1", "0"], ["0", "1"]],
        "cosets": [
            {"rotation": [["1", "0"], ["0", "1"]], "translation": ["0", "0"]},
            {"rotation": [["1", "0"], ["0", "-1"]], "translation": ["0", "1/2"]},
        ],
    }
    code, _, err = run(capsys, "spectrum", write_json(tmp_path, payload), "--p", "0", "--cutoff", "1")
    assert code == 3


def test_unknown_fixture_exits_2(capsys):
    code, _, err = run(capsys, "spectrum", "fixture:nope", "--p", "0", "--cutoff", "1")
    assert code == 2


# ---------------------------------------------------------------- compare


def test_compare_eight_dimensional_pair(capsys):
    code, out, _ = run(
        capsys, "compare", "fixture:flat8_a", "fixture:flat8_b",
        "--p", "all", "--cutoff", "2",
    )
    assert code == 1
    differ = {
        int(line.split(":")[0][2:])
        for line in out.splitlines()
        if "differ" in line
    }
    assert differ == {0, 4, 8}


def test_compare_four_dimensional_pair_middle_degree(capsys):
    code, out, _ = run(
        capsys, "compare", "fixture:flat4_m24", "fixture:flat4_m25",
        "--p", "1", "--cutoff", "3",
    )
    assert code == 0
    assert "agree" in out


def test_compare_group_with_itself(capsys):
    for mode in ("spec", "tau"):
        code, out, _ = run(
            capsys, "compare", "fixture:flat4_a", "fixture:flat4_a",
            "--p", "all", "--cutoff", "2", "--mode", mode,
        )
        assert code == 0


def test_compare_tau_mode_flat(capsys):
    code, out, _ = run(
        capsys, "compare", "fixture:flat8_a", "fixture:flat8_b",
        "--p", "all", "--cutoff", "2", "--mode", "tau",
    )
    assert code == 1
    assert all("not tau-equivalent" in line for line in out.splitlines())


def test_compare_spherical_modes(capsys, tmp_path):
    s3, rp3 = write_json(tmp_path, S3, "s3.json"), write_json(tmp_path, RP3, "rp3.json")
    code, out, _ = run(capsys, "compare", s3, rp3, "--p", "0", "--cutoff", "10")
    assert code == 1
    assert "lambda=3: 4 vs 0" in out
    code, out, _ = run(
        capsys, "compare", s3, rp3, "--p", "1", "--cutoff", "10",
        "--mode", "half-coclosed",
    )
    assert code == 1
    code, out, _ = run(
        capsys, "compare", rp3, rp3, "--p", "1", "--cutoff", "10",
        "--mode", "half-closed",
    )
    assert code == 0


def test_compare_dimension_mismatch_exits_4(capsys):
    code, _, err = run(
        capsys, "compare", "fixture:klein_a", "fixture:flat4_a",
        "--p", "0", "--cutoff", "1",
    )
    assert code == 4
    assert "dimension mismatch" in err


def test_compare_space_mismatch_exits_4(capsys, tmp_path):
    s3 = write_json(tmp_path, S3)
    code, _, err = run(
        capsys, "compare", "fixture:klein_a", s3, "--p", "0", "--cutoff", "1",
    )
    assert code == 4


def test_compare_half_mode_rejected_for_flat(capsys):
    code, _, err = run(
        capsys, "compare", "fixture:klein_a", "fixture:klein_b",
        "--p", "0", "--cutoff", "1", "--mode", "half-closed",
    )
    assert code == 2


# ---------------------------------------------------------------- betti/dict


def test_betti_klein(capsys):
    code, out, _ = run(capsys, "betti", "fixture:klein_a", "--p", "all")
    assert code == 0
    assert out.strip() == "1 1 0"


def test_betti_requires_flat_group(capsys, tmp_path):
    code, _, err = run(capsys, "betti", write_json(tmp_path, S3), "--p", "all")
    assert code == 2


def test_dict_middle_degree(capsys):
    code, out, _ = run(capsys, "dict", "--n", "4", "--p", "2", "--lambda", "0")
    assert code == 0
    assert "n_Gamma(D_2^+ (+) D_2^-)" in out


def test_dict_function_eigenvalue(capsys):
    code, out, _ = run(capsys, "dict", "--n", "3", "--p", "0", "--lambda", "2")
    assert code == 0
    assert "pi(sigma_0, nu=1*i)" in out


def test_dict_rational_lambda(capsys):
    code, out, _ = run(capsys, "dict", "--n", "3", "--p", "0", "--lambda", "3/4")
    assert code == 0
    assert "nu=1/2" in out


def test_fixtures_listing(capsys):
    code, out, _ = run(capsys, "fixtures")
    assert code == 0
    names = {line.split()[0] for line in out.splitlines()}
    assert names == set(flat.fixtures())


# ---------------------------------------------------------------- round trip


def _group_payload(group):
    return {
        "space": "flat",
        "lattice": [[str(x) for x in row] for row in group.lattice.basis],
        "cosets": [
            {
                "rotation": [[str(x) for x in row] for row in b],
                "translation": [str(x) for x in t],
            }
            for b, t in group.cosets
        ],
    }


def test_fixture_round_trip_through_json(capsys, tmp_path):
    for name in ("klein_b", "flat4_m24", "flat8_c"):
        group = flat.fixtures()[name]
        path = write_json(tmp_path, _group_payload(group), f"{name}.json")
        args = ("--p", "all", "--cutoff", "2", "--format", "csv")
        code1, out1, _ = run(capsys, "spectrum", f"fixture:{name}", *args)
        code2, out2, _ = run(capsys, "spectrum", path, *args)
        assert code1 == code2 == 0
        assert out1 == out2


# ---------------------------------------------------------------- tolerance


def test_tolerance_env_var(capsys, monkeypatch):
    monkeypatch.setenv("CURVSPEC_TOL", "1e-3")
    code, out, _ = run(capsys, "betti", "fixture:klein_a", "--p", "0")
    assert code == 0 and out.strip() == "1"
    monkeypatch.setenv("CURVSPEC_TOL", "not-a-number")
    code, _, err = run(capsys, "betti", "fixture:klein_a", "--p", "0")
    assert code == 2
    assert "CURVSPEC_TOL" in err
