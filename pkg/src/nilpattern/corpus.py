"""Bundled examples, stored as JSON under corpus/, with the CLI calls
each one is expected to answer and their exit codes."""
from __future__ import annotations

import contextlib
import io
import json
from importlib import resources
from pathlib import Path

FORMS = {"t": 4, "D": 2, "forms": [[0, 1], [2, 2], [1, 3], [1, 0]]}
HEIS = {"dim": 3, "step": 2, "brackets": [[0, 1, 2, "1/1"]]}
AB2 = {"dim": 2, "step": 1, "brackets": []}


def _sp(d, *vs):
    return {"ambient": d, "basis": [list(v) for v in vs]}


FULL3 = _sp(3, (1, 0, 0), (0, 1, 0), (0, 0, 1))
CENTER = _sp(3, (0, 0, 1))
HORIZ = _sp(3, (1, 0, 0), (0, 1, 0))
FULL2 = _sp(2, (1, 0), (0, 1))
X_AXIS, Y_AXIS = _sp(2, (1, 0)), _sp(2, (0, 1))

WORKSPACES = {
    "psi-2134": FORMS,
    "heisenberg-full": {
        "symbols": ["a", "b", "g"], "algebra": HEIS, "filtration": [FULL3, CENTER],
        "S": [FULL3, CENTER], "forms": FORMS,
        "poly": {"coeffs": {"1": [{"a": "1/1"}, {"b": "1/1"}, {"g": "1/1", "a*b": "-1/2"}]}},
    },
    "heisenberg-horizontal": {
        "symbols": ["a", "b"], "algebra": HEIS, "filtration": [FULL3, CENTER],
        "S": [HORIZ, CENTER], "forms": FORMS,
        "poly": {"coeffs": {"1": [{"a": "1/1"}, {"b": "1/1"}, "0/1"]}},
    },
    "heisenberg-diagonal": {
        "symbols": ["a"], "algebra": HEIS, "filtration": [FULL3, CENTER],
        "S": [_sp(3, (1, 1, 0)), _sp(3)], "forms": FORMS,
        "poly": {"coeffs": {"1": [{"a": "1/1"}, {"a": "1/1"}, "0/1"]}},
    },
    "abelian-split": {
        "symbols": ["a", "b"], "algebra": AB2, "filtration": [FULL2, Y_AXIS],
        "S": [X_AXIS, Y_AXIS], "forms": FORMS,
        "poly": {"coeffs": {"1": [{"a": "1/1"}, "0/1"], "2": ["0/1", {"b": "1/1"}]}},
    },
    "abelian-full": {
        "symbols": ["a", "b", "g"], "algebra": AB2, "filtration": [FULL2, Y_AXIS],
        "S": [FULL2, Y_AXIS], "forms": FORMS,
        "poly": {"coeffs": {"1": [{"a": "1/1"}, {"g": "1/1"}], "2": ["0/1", {"b": "1/1"}]}},
    },
    "heisenberg-rational-shift": {
        "symbols": ["a", "b", "g"], "algebra": HEIS, "filtration": [FULL3, CENTER],
        "S": [FULL3, CENTER],
        "poly": {"coeffs": {"1": [{"a": "1/1"}, {"b": "1/1"}, {"a": "2/1", "b": "1/1", "1": "1/3"}],
                            "2": ["0/1", "0/1", {"g": "1/1"}]}},
    },
    "two-dim-rational": {
        "symbols": [], "algebra": AB2, "filtration": [FULL2], "S": [_sp(2, (99, 100))],
        "poly": {"coeffs": {"1": ["1/100", "1/99"]}},
    },
    "weyl-sqrt2": {"D": 1, "terms": [[[1], "sqrt2"]]},
}

CHECKS = {
    "psi-2134": [(["flag"], 1), (["vspaces"], 0)],
    "heisenberg-full": [(["validate"], 0), (["counting-exact"], 0), (["compare"], 0), (["gpsi"], 0)],
    "heisenberg-horizontal": [(["counting-exact"], 0), (["gpsi"], 0)],
    "heisenberg-diagonal": [(["counting-exact"], 0), (["minfilt"], 0)],
    "abelian-split": [(["counting-exact"], 0), (["compare"], 0)],
    "abelian-full": [(["counting-exact"], 0)],
    "heisenberg-rational-shift": [(["irrational"], 1), (["irrational", "--mode", "filtration"], 0),
                                  (["factorise"], 0)],
    "two-dim-rational": [(["irrational", "--A", "10", "--N", "100000"], 0)],
    "weyl-sqrt2": [(["weyl", "--N", "100,1000"], 0)],
}


def corpus_dir() -> Path:
    return Path(str(resources.files("nilpattern") / "corpus"))


def resolve(path: str) -> str:
    """A real path, or the name of a bundled example (with or without .json,
    optionally prefixed by a directory)."""
    p = Path(path)
    if p.exists():
        return str(p)
    cand = corpus_dir() / (p.stem + ".json")
    return str(cand) if cand.exists() else str(p)


def write_files(target: Path | None = None) -> list[Path]:
    target = target or corpus_dir()
    target.mkdir(parents=True, exist_ok=True)
    out = []
    for name, data in WORKSPACES.items():
        f = target / f"{name}.json"
        f.write_text(json.dumps(data, indent=2) + "\n")
        out.append(f)
    return out


def run_all() -> list[dict]:
    from .cli import main
    results = []
    for name, checks in CHECKS.items():
        for argv, expected in checks:
            buf, err = io.StringIO(), io.StringIO()
            with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(err):
                code = main([argv[0], name] + argv[1:])
            results.append({"example": name, "command": " ".join(argv), "exit": code,
                            "expected": expected, "ok": code == expected})
    return results
