"""Small helpers shared by the experiment scripts."""
import argparse
import dataclasses
import json
from pathlib import Path

import yaml


def load_config(cls, description):
    """Build ``cls`` from its defaults, an optional YAML file and --set overrides."""
    p = argparse.ArgumentParser(description=description)
    p.add_argument("--config", type=Path, help="YAML file with config fields")
    p.add_argument("--set", nargs="*", default=[], metavar="KEY=VALUE",
                   help="override single fields, values parsed as YAML")
    p.add_argument("--out", type=Path, help="write the JSON report here")
    args = p.parse_args()
    fields = {}
    if args.config:
        fields.update(yaml.safe_load(args.config.read_text()) or {})
    for item in args.set:
        k, _, v = item.partition("=")
        fields[k] = yaml.safe_load(v)
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(fields) - known
    if unknown:
        p.error(f"unknown config fields: {sorted(unknown)}")
    return cls(**fields), args.out


def emit(report, out):
    text = json.dumps(report, indent=2, sort_keys=True)
    if out:
        out.write_text(text + "\n")
    print(text)
