"""Tests for manifest serialization."""

import json

import pytest

from tabimage.common.exceptions import DatasetIOError, ManifestError
from tabimage.core.types import Origin, Split
from tabimage.pipeline import read_manifest, validate_checksums, write_manifest
from tabimage.pipeline.manifest import image_path


@pytest.fixture
def manifest_file(small_build):
    *_, out_dir, manifest = small_build
    return out_dir / "manifest.jsonl", manifest


class TestManifestHappyPath:
    """Writing and reading manifests."""

    def test_image_path_format(self):
        """Paths are {fold}/{split}/{row:06}_{aug:02}.png."""
        assert image_path(2, Split.TRAIN, 17, 3) == "2/train/000017_03.png"
        assert image_path(0, Split.TEST, 5, 0) == "0/test/000005_00.png"

    def test_read_back_equal(self, manifest_file):
        """A written manifest reads back unchanged."""
        path, manifest = manifest_file

        assert read_manifest(path) == manifest

    def test_header_first_and_keys_sorted(self, manifest_file):
        """The header is the first line and every line has sorted keys."""
        path, _ = manifest_file
        lines = path.read_text(encoding="utf-8").splitlines()

        assert json.loads(lines[0])["record_type"] == "header"
        for line in lines[:5]:
            keys = list(json.loads(line))
            assert keys == sorted(keys)
            assert ", " not in line

    def test_rewrite_is_byte_identical(self, manifest_file, tmp_path):
        """Serializing the same manifest twice gives the same bytes."""
        path, manifest = manifest_file
        copy = tmp_path / "copy.jsonl"
        write_manifest(manifest, copy)

        assert copy.read_bytes() == path.read_bytes()

    def test_select_and_summary(self, manifest_file):
        """Selections and per-fold counts agree with the build."""
        _, manifest = manifest_file

        assert manifest.folds == [0, 1, 2]
        assert len(manifest.select(0, Split.TEST)) == 10
        assert len(manifest.select(0, Split.TRAIN, Origin.AUGMENTED)) == 20
        assert manifest.summary()["1"] == {"train_original": 20, "train_augmented": 20, "test": 10}

    def test_checksums_valid(self, small_build):
        """Freshly built files match their recorded digests."""
        *_, out_dir, manifest = small_build

        assert validate_checksums(manifest, out_dir) == []

    def test_tampered_file_detected(self, small_build):
        """Changing an image breaks its checksum."""
        *_, out_dir, manifest = small_build
        target = manifest.records[0].image_path
        (out_dir / target).write_bytes(b"not the original")

        assert validate_checksums(manifest, out_dir) == [f"{target}: checksum mismatch"]


class TestManifestErrors:
    """Malformed manifests."""

    def _write(self, tmp_path, lines):
        path = tmp_path / "manifest.jsonl"
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        return path

    def _header_line(self, manifest_file):
        path, _ = manifest_file
        return path.read_text(encoding="utf-8").splitlines()[0]

    def test_missing_file(self, tmp_path):
        """A missing manifest is an I/O error."""
        with pytest.raises(DatasetIOError):
            read_manifest(tmp_path / "manifest.jsonl")

    def test_bad_json(self, tmp_path):
        """Non-JSON lines are rejected."""
        with pytest.raises(ManifestError):
            read_manifest(self._write(tmp_path, ["{not json"]))

    def test_no_header(self, tmp_path, manifest_file):
        """A manifest without a header is rejected."""
        path, _ = manifest_file
        image_line = path.read_text(encoding="utf-8").splitlines()[1]
        with pytest.raises(ManifestError):
            read_manifest(self._write(tmp_path, [image_line]))

    def test_duplicate_header(self, tmp_path, manifest_file):
        """Two headers are rejected."""
        header = self._header_line(manifest_file)
        with pytest.raises(ManifestError):
            read_manifest(self._write(tmp_path, [header, header]))

    def test_wrong_version(self, tmp_path, manifest_file):
        """Unknown manifest versions are rejected."""
        header = json.loads(self._header_line(manifest_file))
        header["manifest_version"] = 99
        with pytest.raises(ManifestError):
            read_manifest(self._write(tmp_path, [json.dumps(header)]))

    def test_unknown_record_type(self, tmp_path, manifest_file):
        """Only header and image records are allowed."""
        header = self._header_line(manifest_file)
        with pytest.raises(ManifestError):
            read_manifest(self._write(tmp_path, [header, '{"record_type": "other"}']))

    def test_invalid_record(self, tmp_path, manifest_file):
        """Image records are validated."""
        header = self._header_line(manifest_file)
        with pytest.raises(ManifestError):
            read_manifest(self._write(tmp_path, [header, '{"record_type": "image", "label": 0}']))
