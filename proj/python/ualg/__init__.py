"""Python bindings for the ualg finite-model workbench."""

import json

from ._core import algebra, algebras, congruences, invariant_sweep, maltsev, run, Algebra

__all__ = ["Algebra", "algebra", "algebras", "congruences", "invariant_sweep", "maltsev", "run", "report"]


def report(*args):
    """Runs a ualg subcommand with --json and returns the parsed report."""
    code, out, err = run(["--json", *args])
    if not out:
        raise ValueError(err.strip())
    return json.loads(out)
