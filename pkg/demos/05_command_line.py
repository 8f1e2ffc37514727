"""
The ``mcgap`` command: simulate a path to a file, then estimate from it.

Equivalent shell session::

    mcgap simulate --chain birth-death --d 5 --up 0.3 --down 0.3 \
        --n 200000 --seed 7 --output path.txt --emit-truth truth.json
    mcgap estimate --input path.txt --delta 0.1 --num-states 5 --output report.json

Run with ``python demos/05_command_line.py``.
"""

# %%
import tempfile
from pathlib import Path

from mcgap import report
from mcgap.cli import main

tmp = Path(tempfile.mkdtemp())
main(["simulate", "--chain", "birth-death", "--d", "5", "--up", "0.3", "--down", "0.3",
      "--n", "200000", "--seed", "7", "--output", str(tmp / "path.txt"),
      "--emit-truth", str(tmp / "truth.json")])
main(["estimate", "--input", str(tmp / "path.txt"), "--delta", "0.1", "--num-states", "5",
      "--output", str(tmp / "report.json")])

# %%
truth = report.loads((tmp / "truth.json").read_text())
rep = report.loads((tmp / "report.json").read_text())
print("true gap      ", truth["gap"])
print("estimated gap ", rep["estimates"]["gap"])
print("gap interval  ", rep["intervals"]["gap"])
print("b, w          ", rep["bounds"]["b"], rep["bounds"]["w"])
