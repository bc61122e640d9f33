#!/usr/bin/env python3
"""Validate an analysis report against the published JSON schema."""
import json
import sys

import jsonschema

schema_path, report_path = sys.argv[1], sys.argv[2]
with open(schema_path) as f:
    schema = json.load(f)
with open(report_path) as f:
    report = json.load(f)
jsonschema.validate(report, schema)
print("report validates against", schema_path)
