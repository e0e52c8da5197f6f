#!/usr/bin/env python3
from __future__ import annotations

import argparse
import tempfile
from pathlib import Path

from _phase_common import (
    assert_counts_match_image,
    assert_same_scan,
    print_summary,
    run_scan,
    select_profile,
)


def main() -> int:
    parser = argparse.ArgumentParser(description="Scan the same slice inline and pooled; compare outputs.")
    parser.add_argument("--profile", default="", help="Config profile under config/profiles.")
    parser.add_argument("--size", default="64x64")
    parser.add_argument("--threads", type=int, default=8)
    args = parser.parse_args()

    print(f"[phase-02] scan determinism (diagonal {args.size}, 1 vs {args.threads} workers)")
    select_profile(args.profile)

    with tempfile.TemporaryDirectory() as tmp:
        out = Path(tmp)
        common = ["--family", "diagonal", "--window", "-3,-3,3,3", "--size", args.size]
        inline = run_scan(out / "inline.pgm", *common, "--threads", "1")
        pooled = run_scan(out / "pooled.pgm", *common, "--threads", str(args.threads))

        assert_same_scan(inline, pooled)
        assert_counts_match_image(inline)
        print_summary("[phase-02]", inline)
        print_summary("[phase-02]", pooled)

    print("[phase-02] PASS")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
