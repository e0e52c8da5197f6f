#!/usr/bin/env python3
from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any


ROOT = Path(__file__).resolve().parents[1]
SRC = ROOT / "src"

if str(SRC) not in sys.path:
    sys.path.insert(0, str(SRC))

# The only field that may differ between otherwise identical scans.
VOLATILE_SIDECAR_KEYS = {"elapsed_s"}


@dataclass
class ScanOutput:
    image: Path
    sidecar: dict[str, Any]

    @property
    def pixels(self) -> int:
        return sum(self.sidecar["counts"].values())


def select_profile(profile: str) -> None:
    """
    Pick a config profile before primstab is imported.
    Each phase script is a separate process, so module-level settings are safe.
    """
    os.environ["PRIMSTAB_PROFILE"] = profile


def run_scan(out: Path, *extra: str) -> ScanOutput:
    from primstab.cli.main import main  # imported after profile selection

    code = main(["scan", "--out", str(out), *extra])
    assert code == 0, f"scan exited with {code}"
    sidecar = json.loads(out.with_suffix(".json").read_text())
    return ScanOutput(out, sidecar)


def stable_sidecar(sidecar: dict[str, Any]) -> dict[str, Any]:
    return {k: v for k, v in sidecar.items() if k not in VOLATILE_SIDECAR_KEYS}


def assert_same_scan(a: ScanOutput, b: ScanOutput) -> None:
    assert a.image.read_bytes() == b.image.read_bytes(), "images differ"
    assert stable_sidecar(a.sidecar) == stable_sidecar(b.sidecar), "sidecars differ"


def assert_counts_match_image(scan: ScanOutput) -> None:
    from primstab.scan import recount

    decoded = recount(scan.image)
    assert decoded == scan.sidecar["counts"], f"image decodes to {decoded}, sidecar says {scan.sidecar['counts']}"


def print_summary(prefix: str, scan: ScanOutput) -> None:
    counts = " ".join(f"{k}={v}" for k, v in scan.sidecar["counts"].items())
    print(f"{prefix} {scan.image.name}: pixels={scan.pixels} {counts}")
    print(f"{prefix} elapsed_s={scan.sidecar['elapsed_s']}")
