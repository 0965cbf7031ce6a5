"""Regenerate the shipped corpus data file from the defining words."""

import json
from pathlib import Path

from jonescope import corpus

out = {name: corpus.record_to_json_obj(corpus.build_record(name))
       for name in corpus.names()}
dest = Path(__file__).resolve().parent.parent / "src" / "jonescope" / "corpus" / "corpus.json"
dest.parent.mkdir(parents=True, exist_ok=True)
dest.write_text(json.dumps(out, indent=2) + "\n")
print(f"wrote {dest} ({len(out)} knots)")
