#! /usr/bin/env uv run python3
import sys

import toml

sys.path.insert(0, "src")

from diffrealize.conventions import render_ledger  # noqa: E402

LEDGER_DOC = "docs/CONVENTIONS.md"

pyproject = toml.load("pyproject.toml")

with open(LEDGER_DOC, "w") as fh:
    fh.write(render_ledger())
    fh.write(f"\nCompiled into {pyproject['project']['name']} {pyproject['project']['version']}.\n")
