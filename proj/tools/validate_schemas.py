#!/usr/bin/env python3
"""Validate ample JSON files against the schemas shipped in schemas/.

The schema is chosen by the file's "schema" tag; untagged objects are read as
presentations and top-level arrays as element lists.
"""
import argparse
import json
import pathlib
import sys

import jsonschema
from referencing import Registry, Resource


def load_registry(schema_dir):
    schemas = {}
    for path in sorted(pathlib.Path(schema_dir).glob("*.schema.json")):
        s = json.loads(path.read_text())
        schemas[s["$id"]] = s
    registry = Registry().with_resources((i, Resource.from_contents(s)) for i, s in schemas.items())
    return schemas, registry


def schema_id(doc):
    if isinstance(doc, list):
        return "urn:ample:ample.element/1"
    return "urn:ample:" + doc.get("schema", "ample.presentation/1")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--schemas", required=True)
    ap.add_argument("files", nargs="+")
    args = ap.parse_args()
    schemas, registry = load_registry(args.schemas)
    failures = 0
    for f in args.files:
        doc = json.loads(pathlib.Path(f).read_text())
        sid = schema_id(doc)
        if sid not in schemas:
            print(f"{f}: no schema {sid}")
            failures += 1
            continue
        validator = jsonschema.Draft202012Validator(schemas[sid], registry=registry)
        errors = sorted(validator.iter_errors(doc), key=lambda e: list(e.path))
        for e in errors:
            print(f"{f}: /{'/'.join(map(str, e.path))}: {e.message}")
        failures += bool(errors)
        if not errors:
            print(f"{f}: ok ({sid})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
