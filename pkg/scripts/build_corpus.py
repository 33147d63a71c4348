"""Regenerate the bundled JSON workspaces from nilpattern.corpus."""
import argparse
from pathlib import Path

from nilpattern import corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--target", type=Path, default=None, help="output directory (default: the package corpus)")
    args = ap.parse_args()
    for f in corpus.write_files(args.target):
        print(f)


if __name__ == "__main__":
    main()
