import pytest

import motioncodes as mc
from motioncodes.errors import RegistryError, UnknownLabel


def test_bundled_registry_shape(registry):
    assert len(registry) == 66
    assert len(set(registry.labels)) == 66
    assert len(mc.consolidate(registry)) == 32


def test_bundled_codes_all_round_trip(registry):
    for label, code in registry:
        assert mc.parse_code(mc.format_code(code)) == code


def test_label_lookup(registry):
    assert mc.format_code(registry.code_for_label("pour")) == "000000000001000001"
    with pytest.raises(UnknownLabel):
        registry.code_for_label("juggle")


def test_labels_for_code(registry):
    code = registry.code_for_label("cut")
    assert registry.labels_for_code(code) == [
        "chop",
        "cut",
        "mash",
        "peel",
        "scrape",
        "shave",
        "slice",
    ]
    assert registry.labels_for_code(mc.parse_code("1" * 3 + "0" * 14 + "1")) == []


def test_save_load_round_trip(tmp_path, registry):
    path = tmp_path / "registry.tsv"
    mc.save_registry(registry, path)
    loaded = mc.load_registry(path)
    assert loaded.entries == registry.entries


def test_load_skips_comments_and_blanks(tmp_path):
    path = tmp_path / "r.tsv"
    path.write_text("# heading\n\npour\t000000000001000001\n  \n", encoding="utf-8")
    loaded = mc.load_registry(path)
    assert loaded.labels == ("pour",)


def test_load_reports_line_numbers(tmp_path):
    path = tmp_path / "r.tsv"
    path.write_text("pour\t000000000001000001\nbroken line\n", encoding="utf-8")
    with pytest.raises(RegistryError) as excinfo:
        mc.load_registry(path)
    assert "r.tsv:2" in str(excinfo.value)

    path.write_text("pour\t00000000000100000\n", encoding="utf-8")
    with pytest.raises(RegistryError) as excinfo:
        mc.load_registry(path)
    assert "r.tsv:1" in str(excinfo.value)
    assert "18" in str(excinfo.value)

    path.write_text("pour\t000000000001000001\npour\t000000000001000001\n", encoding="utf-8")
    with pytest.raises(RegistryError) as excinfo:
        mc.load_registry(path)
    assert "r.tsv:2" in str(excinfo.value)
    assert "duplicate" in str(excinfo.value)


def test_load_rejects_invalid_code_with_category(tmp_path):
    path = tmp_path / "r.tsv"
    path.write_text("ghost\t010000000000000000\n", encoding="utf-8")
    with pytest.raises(RegistryError) as excinfo:
        mc.load_registry(path)
    assert "bit 1" in str(excinfo.value)


def test_constructor_rejects_duplicates_and_bad_labels():
    code = mc.parse_code("0" * 18)
    with pytest.raises(RegistryError):
        mc.LabelRegistry.from_pairs([("a", code), ("a", code)])
    with pytest.raises(RegistryError):
        mc.LabelRegistry.from_pairs([("", code)])
    with pytest.raises(RegistryError):
        mc.LabelRegistry.from_pairs([("has\ttab", code)])
    with pytest.raises(RegistryError):
        mc.LabelRegistry.from_pairs([("a", "000000000000000000")])


def test_registry_iteration_order(registry):
    assert registry.labels[:3] == ("pour", "sprinkle", "poke")
    assert registry.codes[0] == registry.code_for_label("pour")
