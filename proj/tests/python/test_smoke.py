"""Smoke tests for the engelpy module and the CLI binary."""

import json
import math
import os
import subprocess

import engelpy


def test_catalog_growth():
    model = engelpy.catalog("engel-canonical")
    out = model.growth([0, 0, 0, 0], exact=True)
    assert out["growth_vector"] == [2, 3, 4]
    assert out["engel"] is True
    assert not out["stalled"]


def test_model_from_text():
    text = engelpy.catalog_model_text("C-form", f="x4^2")
    model = engelpy.Model(text)
    out = model.growth([-1, 0, 0, 1], exact=True)
    assert out["growth_vector"] == [2, 2, 4]
    assert not model.is_engel([0, 0, 0, 0])


def test_sections_and_extraction():
    model = engelpy.catalog("C-form")
    d1 = model.section("d1")
    nums = d1.numerators
    assert "x3" in nums[0]
    samples = model.extract("d1", grid=9)
    assert len(samples) > 10
    for s in samples[:20]:
        assert abs(s["point"][2]) <= 1e-8
        assert s["locus"] == "S1"


def test_engel_line_and_frame():
    model = engelpy.catalog("engel-canonical")
    a, b = model.engel_line([0, 0, 0, 0])
    assert (a, b) == (0.0, 1.0)
    frame = model.frame_at([0, 0, 0, 0])
    gram_err = max(
        abs(sum(frame[i][k] * frame[j][k] for k in range(4)) - (1.0 if i == j else 0.0))
        for i in range(4)
        for j in range(4)
    )
    assert gram_err < 1e-12


def test_link_and_pairing():
    model = engelpy.catalog("C-form")
    link = model.link_check([0, 0, 0, 0], radius=0.3)
    assert len(link["points"]) == 4
    assert link["sum"] == 0
    cycle = json.dumps(
        {
            "coords": [
                "-1/4 + 0.6*sin(u)*cos(v)",
                "0",
                "0.6*sin(u)*sin(v)",
                "0.6*cos(u)",
            ],
            "u": [0, "pi"],
            "v": [0, "2*pi"],
        }
    )
    out = model.pair_cycle("d1", cycle, grid=64)
    assert out["pairing"] == 0
    assert len(out["crossings"]) == 2
    root = math.sqrt(0.35)
    for c in out["crossings"]:
        assert abs(abs(c["point"][3]) - root) < 1e-8


def test_classes_and_existence():
    ring = json.dumps(
        {
            "degrees": [["1"], ["a"], ["a2"], ["a3"], ["a4"]],
            "mul": [[1, 1, 2, 1], [1, 2, 3, 1], [1, 3, 4, 1], [2, 2, 4, 1]],
        }
    )
    out = engelpy.theorem_classes(ring, "a", "a2", "a", "0")
    assert out == {"sigma1": "0", "sigma2": "a2", "union": "a2", "intersection": "0"}
    assert engelpy.admits_oriented_plane_field(0, 0)
    assert not engelpy.admits_oriented_plane_field(2, 0)
    assert engelpy.admits_oriented_plane_field(24, -16)


def test_errors_surface_as_value_errors():
    try:
        engelpy.catalog("nope")
    except ValueError as e:
        assert "UnknownEntry" in str(e)
    else:
        raise AssertionError("expected ValueError")


def test_cli_roundtrip():
    cli = os.environ.get("ENGEL_CLI")
    if not cli:
        return  # only run when ctest provides the binary
    out = subprocess.run(
        [cli, "growth", "--model", "catalog:engel-canonical", "--at", "0,0,0,0", "--exact"],
        capture_output=True,
        text=True,
        check=True,
    )
    data = json.loads(out.stdout)
    assert data["growth_vector"] == [2, 3, 4]
    assert data["engel"] is True
