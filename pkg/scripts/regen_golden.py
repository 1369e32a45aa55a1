#!/usr/bin/env python3
"""Regenerate the CLI golden files under tests/golden/.

Each golden file records one command line and its exact JSON output; the
CLI test replays them and requires byte-identical output.
"""

import io
import contextlib
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from llct.cli import main  # noqa: E402

GOLDEN = pathlib.Path(__file__).resolve().parents[1] / "tests" / "golden"

COMMANDS = [
    ["L", "Sp(unr(1),2)"],
    ["L", "Sp(unr(x),2)+Sp(unr(5),1)"],
    ["Lss", "Sp(unr(1),2)"],
    ["rsL", "Sp(unr(1),2)", "Sp(unr(1),2)"],
    ["rsL", "Sp(unr(2),1)", "Sp(unr(5),1)", "--shift", "1"],
    ["gamma", "Sp(unr(2),1)"],
    ["gamma", "Sp(tau(a,dim=2,f=2,cond=1,w=0),1)+Sp(unr(2),2)"],
    ["eps", "Sp(unr(5),2)"],
    ["eps", "Sp(tau(a,dim=2,f=2,cond=1,w=0)*unr(x),1)"],
    ["classify", "Sp(unr(2),1)+Sp(unr(2),2)"],
    ["llc", "Sp(unr(1),1)+Sp(unr(1/3),1)"],
    ["check", "eps-ratio", "Sp(unr(5),3)"],
    ["check", "sign", "Sp(unr(x),2)+Sp(unr(x^-1),2)", "--bad", "0"],
    ["zeta", "--n1", "2", "--n2", "1", "--params", "2,3", "--m", "-1/2",
     "--bound", "12"],
    ["oracle", "tensor", "Sp(unr(1),2)", "Sp(unr(1),2)"],
    ["family-check", "--matrix", "[[0,x],[0,0]]", "--at", "0"],
]


def run(argv):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def main_():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for old in GOLDEN.glob("*.json"):
        old.unlink()
    for i, argv in enumerate(COMMANDS):
        code, out = run(argv)
        assert code == 0, (argv, out)
        record = {"argv": argv, "exit": code, "stdout": out}
        path = GOLDEN / f"cmd_{i:02d}.json"
        path.write_text(json.dumps(record, sort_keys=True, indent=1) + "\n")
        print(f"wrote {path.name}: llct {' '.join(argv)}")


if __name__ == "__main__":
    main_()
