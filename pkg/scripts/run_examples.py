"""Run every bundled example through the CLI and tabulate exit codes."""
import sys

from nilpattern import corpus


def main():
    results = corpus.run_all()
    width = max(len(r["example"]) for r in results)
    for r in results:
        tag = "ok" if r["ok"] else "MISMATCH"
        print(f"{r['example']:<{width}}  {r['command']:<40} exit {r['exit']} (want {r['expected']})  {tag}")
    bad = sum(not r["ok"] for r in results)
    print(f"{len(results) - bad}/{len(results)} as expected")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
