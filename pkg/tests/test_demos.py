import subprocess
import sys
from pathlib import Path

import pytest

DEMO_DIR = Path(__file__).resolve().parent.parent / "demos"
EXPECT = {
    "demo_groups.py": "mult-by-2 on Z4: kernel [2] image [2]",
    "demo_crossed_modules.py": "all axioms pass? True",
    "demo_categorical_groups.py": "category rebuilt exactly: True",
    "demo_cohomology.py": "H2(Z2, Z2): [2] order 2",
    "demo_classification.py": "bijection checks pass: True",
}


@pytest.mark.parametrize("name", sorted(EXPECT), ids=str)
def test_demo_runs_clean(name):
    proc = subprocess.run([sys.executable, str(DEMO_DIR / name)],
                          capture_output=True, text=True, timeout=120)
    assert proc.returncode == 0, proc.stderr
    assert EXPECT[name] in proc.stdout
