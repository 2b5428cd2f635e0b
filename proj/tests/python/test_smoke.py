# Copyright 2026 The frobetti Authors
# SPDX-License-Identifier: Apache-2.0
"""Smoke tests for the Python module and the JSON output of the command-line tool."""

import json
import os
import pathlib
import subprocess

import jsonschema
import pytest

import frobetti

ROOT = pathlib.Path(__file__).resolve().parents[2]
SCHEMAS = ROOT / "schemas"
KLEIN = "x*y^3+y*z^3+z*x^3"


def schema_validator(name):
    registry_store = {}
    for path in SCHEMAS.glob("*.schema.json"):
        doc = json.loads(path.read_text())
        registry_store[doc["$id"]] = doc
    schema = json.loads((SCHEMAS / name).read_text())
    try:
        from referencing import Registry, Resource

        registry = Registry().with_resources(
            [(k, Resource.from_contents(v)) for k, v in registry_store.items()]
        )
        return jsonschema.Draft202012Validator(schema, registry=registry)
    except ImportError:
        resolver = jsonschema.RefResolver.from_schema(schema, store=registry_store)
        return jsonschema.Draft202012Validator(schema, resolver=resolver)


def cli(*args):
    exe = os.environ.get("FROBETTI_CLI")
    if exe:
        proc = subprocess.run([exe, *args], capture_output=True, text=True, check=False)
        return proc.returncode, proc.stdout, proc.stderr
    return frobetti.run_cli(list(args))


def test_betti_table_over_r():
    t = frobetti.betti_over_R(7, KLEIN, 7, steps=4)
    assert [t.total(i) for i in range(5)] == [1, 3, 8, 8, 8]
    assert t.twists(4) == [16] * 8
    assert frobetti.BettiTable.from_json(t.to_json()) == t


def test_links_socles_and_hk():
    assert frobetti.generator_profile(5, "x*y^2+y*z^2+z*x^2", 25) == {25: 3, 35: 3, 36: 1}
    assert frobetti.socle_direct(7, KLEIN, 7) == frobetti.socle_via_link(7, KLEIN, 7) == {10: 8}
    assert frobetti.hk_direct(7, KLEIN, 49) == 7198
    assert frobetti.hk_formula(4, 49) == (7198, 1)
    assert frobetti.is_relatively_compressed(7, KLEIN, 7)


def test_errors_map_to_python_exceptions():
    with pytest.raises(ValueError):
        frobetti.socle_direct(5, "x^5+y^5+z^5", 5)
    with pytest.raises(ValueError):
        frobetti.format_poly(5, "x^2+y", 3)


@pytest.mark.parametrize(
    "schema,args",
    [
        ("check_compressed.schema.json", ["check-compressed", "-p", "5", "-f", "x*y^2+y*z^2+z*x^2", "-q", "25"]),
        ("betti.schema.json", ["betti", "-p", "7", "-f", KLEIN, "-q", "7,49"]),
        ("betti.schema.json", ["betti", "-p", "5", "-f", "x^4+y^4+z^4", "-q", "25", "--ring", "P"]),
        ("socle.schema.json", ["socle", "-p", "7", "-f", KLEIN, "-q", "7"]),
        ("hk.schema.json", ["hk", "-p", "7", "-f", KLEIN, "-q", "7,49"]),
        ("pfaffian_check.schema.json", ["pfaffian-check", "-p", "7", "-f", KLEIN, "-q", "7"]),
        ("ledger.schema.json", ["ledger", "-p", "7", "-f", KLEIN, "-q", "7"]),
        ("reproduce_examples.schema.json", ["reproduce-examples", "--only", "ex2-p7-e1"]),
    ],
)
def test_cli_json_matches_schema(schema, args):
    code, out, err = cli(*args, "--format", "json")
    assert code == 0, err
    schema_validator(schema).validate(json.loads(out))


def test_golden_manifest_and_sidecars_match_schemas():
    manifest = json.loads((ROOT / "golden" / "manifest.json").read_text())
    schema_validator("manifest.schema.json").validate(manifest)
    table = schema_validator("betti_table.schema.json")
    for case in manifest["cases"]:
        if case["kind"] == "betti":
            table.validate(json.loads((ROOT / "golden" / case["json"]).read_text()))


def test_cli_exit_codes():
    assert cli("betti", "-p", "5", "-f", "x^2", "-q", "4")[0] == 2
    assert cli("socle", "-p", "5", "-f", "x^5+y^5+z^5", "-q", "5")[0] == 3
