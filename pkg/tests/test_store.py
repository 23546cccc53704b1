"""Flat-file store: round trips, atomicity, listing, corruption handling."""

from __future__ import annotations

import json

import pytest

from ccmf.catalog import builtin_catalog
from ccmf.errors import (
    CorruptDocument,
    FormatVersionUnsupported,
    NotFound,
    StorageError,
)
from ccmf.store import Store, default_root


@pytest.fixture
def store(tmp_path, worked_catalog):
    s = Store(tmp_path / "home")
    s.save_catalog(worked_catalog)
    return s


class TestCatalogStorage:
    def test_round_trip(self, store, worked_catalog):
        loaded = store.load_catalog("worked", "1")
        assert loaded == worked_catalog

    def test_latest_version_when_unpinned(self, store, worked_catalog):
        from dataclasses import replace

        store.save_catalog(replace(worked_catalog, version="2"))
        assert store.load_catalog("worked").version == "2"

    def test_immutable_once_written(self, store, worked_catalog):
        from dataclasses import replace

        changed = replace(worked_catalog, title="edited in place")
        with pytest.raises(StorageError):
            store.save_catalog(changed)

    def test_identical_resave_is_noop(self, store, worked_catalog):
        store.save_catalog(worked_catalog)  # no error

    def test_get_catalog_falls_back_to_builtin(self, store):
        builtin = builtin_catalog()
        assert store.get_catalog(builtin.catalog_id) is builtin
        assert store.get_catalog_by_ref(f"{builtin.catalog_id}@{builtin.version}") is builtin

    def test_list_includes_builtin_and_stored(self, store):
        entries = store.list_catalogs()
        ids = [(e["catalog_id"], e["builtin"]) for e in entries]
        assert ("ccmf-builtin", True) in ids
        assert ("worked", False) in ids


class TestAssessmentStorage:
    def test_save_load_round_trip(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        loaded = store.load_assessment(worked_assessment.assessment_id)
        assert loaded == worked_assessment

    def test_save_refreshes_updated_and_version(self, store, worked_assessment):
        first_version = worked_assessment.entity_version
        store.save_assessment(worked_assessment)
        assert worked_assessment.entity_version == first_version + 1
        store.save_assessment(worked_assessment)
        assert worked_assessment.entity_version == first_version + 2

    def test_save_twice_keeps_single_file(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        store.save_assessment(worked_assessment)
        files = list(store.assessments_dir.glob("*.json"))
        assert len(files) == 1
        loaded = store.load_assessment(worked_assessment.assessment_id)
        assert loaded.entity_version == worked_assessment.entity_version

    def test_unknown_id(self, store):
        with pytest.raises(NotFound):
            store.load_assessment("does-not-exist")

    def test_unsupported_format_version(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        path = store.assessment_path(worked_assessment.assessment_id)
        raw = json.loads(path.read_text())
        raw["format_version"] = "99"
        path.write_text(json.dumps(raw))
        with pytest.raises(FormatVersionUnsupported):
            store.load_assessment(worked_assessment.assessment_id)

    def test_corrupt_json(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        store.assessment_path(worked_assessment.assessment_id).write_text("{ not json")
        with pytest.raises(CorruptDocument):
            store.load_assessment(worked_assessment.assessment_id)

    def test_invariant_violation_is_corrupt(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        path = store.assessment_path(worked_assessment.assessment_id)
        raw = json.loads(path.read_text())
        raw["selections"][0]["ratings"]["phantom"] = {"value": 2}
        path.write_text(json.dumps(raw))
        with pytest.raises(CorruptDocument):
            store.load_assessment(worked_assessment.assessment_id)

    def test_missing_catalog_is_an_error(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        store.catalog_path("worked", "1").unlink()
        with pytest.raises(NotFound):
            store.load_assessment(worked_assessment.assessment_id)

    def test_unwritable_root(self, tmp_path, worked_assessment):
        blocker = tmp_path / "blocker"
        blocker.write_text("a plain file")
        store = Store(blocker / "nested")  # parent is a file: mkdir must fail
        with pytest.raises(StorageError) as err:
            store.save_assessment(worked_assessment)
        assert "nested" in str(err.value)

    def test_unsafe_id_rejected(self, store):
        with pytest.raises(StorageError):
            store.assessment_path("../escape")

    def test_delete(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        store.delete_assessment(worked_assessment.assessment_id)
        with pytest.raises(NotFound):
            store.load_assessment(worked_assessment.assessment_id)
        with pytest.raises(NotFound):
            store.delete_assessment(worked_assessment.assessment_id)


class TestAtomicity:
    def test_failed_rename_preserves_previous_content(
        self, store, worked_assessment, monkeypatch
    ):
        store.save_assessment(worked_assessment)
        path = store.assessment_path(worked_assessment.assessment_id)
        before = path.read_bytes()

        def exploding_replace(src, dst):
            raise OSError("simulated crash between temp write and rename")

        monkeypatch.setattr("ccmf.store.os.replace", exploding_replace)
        worked_assessment.organisation = "Mutated Ltd"
        with pytest.raises(StorageError):
            store.save_assessment(worked_assessment)
        monkeypatch.undo()
        assert path.read_bytes() == before
        # no stray temp files left behind
        assert list(store.assessments_dir.glob("*.tmp")) == []


class TestListing:
    def test_empty_store(self, tmp_path):
        listing = Store(tmp_path / "fresh").list_assessments()
        assert listing.entries == ()
        assert listing.warnings == ()

    def test_newest_first(self, store, worked_catalog):
        from ccmf.assessment import create_assessment

        first = create_assessment("First Org", worked_catalog)
        second = create_assessment("Second Org", worked_catalog)
        store.save_assessment(first)
        store.save_assessment(second)
        # force distinct updated stamps regardless of clock resolution
        raw = json.loads(store.assessment_path(first.assessment_id).read_text())
        raw["updated"] = "2020-01-01T00:00:00Z"
        store.assessment_path(first.assessment_id).write_text(json.dumps(raw))
        listing = store.list_assessments()
        assert [e["organisation"] for e in listing.entries] == ["Second Org", "First Org"]

    def test_corrupt_file_becomes_warning(self, store, worked_assessment):
        store.save_assessment(worked_assessment)
        (store.assessments_dir / "broken.json").write_text("]]]")
        listing = store.list_assessments()
        assert len(listing.entries) == 1
        assert len(listing.warnings) == 1
        assert "broken.json" in listing.warnings[0]


def test_default_root_honours_env(monkeypatch, tmp_path):
    monkeypatch.setenv("CCMF_HOME", str(tmp_path / "custom"))
    assert default_root() == tmp_path / "custom"
    monkeypatch.delenv("CCMF_HOME")
    assert str(default_root()) == ".ccmf"
