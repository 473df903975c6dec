"""Leakage checks on a built dataset.

A dataset passes when test images are originals only, no augmented image in
a fold comes from that fold's test rows, every training row carries exactly
1 + K images, and every checksum matches its file. Given a reference build
of the same table and split (typically at another K), the test images of
both builds must also be byte-identical.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from tabimage.core.types import Origin, Split
from tabimage.pipeline.manifest import DatasetManifest, validate_checksums

logger = logging.getLogger(__name__)


@dataclass
class LeakageReport:
    checked_records: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def add_failure(self, failure: str) -> None:
        self.failures.append(failure)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "checked_records": self.checked_records,
            "failures": self.failures,
        }


def verify_no_leakage(
    manifest: DatasetManifest,
    out_dir: Union[str, Path],
    reference: Optional[DatasetManifest] = None,
) -> LeakageReport:
    """Check `manifest` (and the files under out_dir) for test-set leakage."""
    report = LeakageReport(checked_records=len(manifest.records))

    test_rows: Dict[int, set] = {}
    for record in manifest.select(split=Split.TEST):
        test_rows.setdefault(record.fold, set()).add(record.source_row)
        if record.origin != Origin.ORIGINAL or record.aug_index != 0:
            report.add_failure(f"{record.image_path}: augmented record in test split")

    for record in manifest.select(origin=Origin.AUGMENTED):
        if record.source_row in test_rows.get(record.fold, set()):
            report.add_failure(
                f"{record.image_path}: augmented from test row {record.source_row} "
                f"of fold {record.fold}"
            )

    expected = 1 + manifest.header.effective_k
    per_row = Counter((r.fold, r.source_row) for r in manifest.select(split=Split.TRAIN))
    for (fold, row), count in sorted(per_row.items()):
        if count != expected:
            report.add_failure(f"fold {fold} row {row}: {count} train images, expected {expected}")

    for mismatch in validate_checksums(manifest, out_dir):
        report.add_failure(mismatch)

    if reference is not None:
        _compare_test_images(manifest, reference, report)

    if report.passed:
        logger.info(f"leakage check passed ({report.checked_records} records)")
    else:
        logger.warning(f"leakage check failed with {len(report.failures)} problem(s)")
    return report


def _compare_test_images(
    manifest: DatasetManifest, reference: DatasetManifest, report: LeakageReport
) -> None:
    ours = {(r.fold, r.source_row): r.checksum for r in manifest.select(split=Split.TEST)}
    theirs = {(r.fold, r.source_row): r.checksum for r in reference.select(split=Split.TEST)}
    if ours.keys() != theirs.keys():
        report.add_failure("test records differ from the reference build")
        return
    for key in sorted(ours):
        if ours[key] != theirs[key]:
            report.add_failure(f"fold {key[0]} test row {key[1]}: checksum differs from reference")
