"""Rewrite tests/golden/expected/*.out from the current CLI (review the diff!)."""

import pathlib
import shlex

from symtens.cli import run

HERE = pathlib.Path(__file__).parent


def load_corpus():
    for line in (HERE / "corpus.txt").read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            name, *argv = shlex.split(line)
            yield name, argv


def transcript(argv):
    code, out, err = run(argv)
    return f"exit: {code}\n--- stdout\n{out}--- stderr\n{err}"


if __name__ == "__main__":
    target = HERE / "expected"
    target.mkdir(exist_ok=True)
    for name, argv in load_corpus():
        (target / f"{name}.out").write_text(transcript(argv))
