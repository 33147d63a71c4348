"""Character sweep for a bundled (or given) workspace: Weyl moduli of every
character of g^Psi up to a height, across a range of N, written as CSV."""
import argparse
import csv
import sys

from nilpattern import corpus
from nilpattern.equid import SweepConfig
from nilpattern.exactnum import parse_assignment
from nilpattern.io import load_path


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("workspace", help="workspace JSON or bundled example name")
    ap.add_argument("--N", default="50,100,200,400")
    ap.add_argument("--height", type=int, default=2)
    ap.add_argument("--assignment", default="a=sqrt2,b=sqrt3,g=sqrt5")
    ap.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    args = ap.parse_args()
    ws = load_path(corpus.resolve(args.workspace))
    cfg = SweepConfig(tuple(int(x) for x in args.N.split(",")), args.height, parse_assignment(args.assignment))
    rep = cfg.run(ws.algebra, ws.poly, ws.S, ws.forms)
    fh = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["character", "N", "modulus"])
    for dual, N, m in rep.sweep:
        w.writerow([" ".join(map(str, dual)), N, f"{m:.6e}"])
    if fh is not sys.stdout:
        fh.close()
    print(f"{rep.characters} characters, max modulus per N {[round(x, 4) for x in rep.max_modulus]}, "
          f"passed={rep.passed}", file=sys.stderr)


if __name__ == "__main__":
    main()
