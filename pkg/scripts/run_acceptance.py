"""Run the acceptance suite and print only its summary lines.

    python3 scripts/run_acceptance.py
"""

import pathlib
import subprocess
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]


def main() -> int:
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", str(ROOT / "tests" / "test_acceptance.py"), "-q", "-p", "no:cacheprovider"],
        capture_output=True,
        text=True,
        cwd=ROOT,
    )
    lines = [ln for ln in proc.stdout.splitlines() if ln.startswith("ACCEPTANCE")]
    print("\n".join(lines))
    return 0 if all(" PASS " in ln for ln in lines) else 1


if __name__ == "__main__":
    sys.exit(main())
