#!/usr/bin/env python3
from __future__ import annotations

import argparse
import subprocess
from pathlib import Path


def run_phase(script: str, *extra: str) -> None:
    root = Path(__file__).resolve().parents[1]
    cmd = [str(root / ".venv" / "bin" / "python"), str(root / "scripts" / script), *extra]
    print(f"\n=== running {script} ===")
    proc = subprocess.run(cmd, cwd=root)
    if proc.returncode == 0:
        print(f"=== {script} PASS ===")
        return
    raise SystemExit(proc.returncode)


def main() -> int:
    parser = argparse.ArgumentParser(description="Run phased standalone tests for primstab.")
    parser.add_argument(
        "--boundary-study",
        action="store_true",
        help="Repeat the determinism phase under the boundary_study profile (slower).",
    )
    args = parser.parse_args()

    run_phase("phase_01_unit.py")
    run_phase("phase_02_scan_determinism.py")
    if args.boundary_study:
        run_phase("phase_02_scan_determinism.py", "--profile", "boundary_study", "--size", "16x16")

    print("\nAll requested phases completed.")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
