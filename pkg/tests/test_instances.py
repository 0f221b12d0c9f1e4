import pytest

from flowering.instances import (
    FamilyError,
    build_bundle,
    load_bundle,
    read_meta,
    save_bundle,
)


def test_a4_bundle_meta():
    meta = build_bundle("a4", {}).meta()
    assert meta["vertices"] == "12" and meta["diameter"] == "3"
    assert meta["orders"] == "3 2 3" and meta["sizes"] == "12 6 3 1"
    assert meta["schedule"] == "1:0,1,-1 0:0,1 1:0,1,-1"


def test_save_and_load(tmp_path):
    b = build_bundle("z2r", {"r": "3"})
    save_bundle(b, tmp_path / "g.rim")
    assert read_meta(tmp_path / "g.rim.meta")["family"] == "z2r"
    back = load_bundle(tmp_path / "g.rim")
    assert back.rim.same_structure(b.rim)
    assert back.sequence.orders == b.sequence.orders


def test_tampered_graph_file_rejected(tmp_path):
    b = build_bundle("a4", {})
    save_bundle(b, tmp_path / "g.rim")
    other = build_bundle("a4", {"generators": "(123) (12)(34)"})
    save_bundle(other, tmp_path / "h.rim")
    (tmp_path / "g.rim").write_text((tmp_path / "h.rim").read_text())
    with pytest.raises(FamilyError):
        load_bundle(tmp_path / "g.rim")


def test_plain_file_has_no_schedule(tmp_path):
    b = build_bundle("a4", {})
    save_bundle(b, tmp_path / "g.rim")
    (tmp_path / "g.rim.meta").unlink()
    plain = load_bundle(tmp_path / "g.rim")
    assert plain.family == "file"
    with pytest.raises(FamilyError):
        plain.sequence


@pytest.mark.parametrize(
    "family, params",
    [("a4", {"generators": "(12)"}), ("z2r", {"r": "0"}), ("z2r", {"r": "2", "generators": "4"}), ("file", {})],
)
def test_bad_families(family, params):
    with pytest.raises(ValueError):
        build_bundle(family, params)
