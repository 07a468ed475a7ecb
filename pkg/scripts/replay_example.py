"""Write the example derivation to disk, replay it, then replay a corrupted copy."""

import argparse
import copy
import json
from pathlib import Path

from zxzw.harness import example_derivation
from zxzw.rewrite import Derivation, replay

HERE = Path(__file__).parent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--script", default=str(HERE / "data" / "derivation.json"))
    args = ap.parse_args()
    path = Path(args.script)
    if not path.exists():
        path.write_text(json.dumps(example_derivation().to_json(), indent=2, sort_keys=True) + "\n")
    doc = json.loads(path.read_text())

    print("original :", replay(Derivation.from_json(doc)).dumps())
    bad = copy.deepcopy(doc)
    bad["steps"][-1]["site"] = [0, 2]
    print("corrupted:", replay(Derivation.from_json(bad)).dumps())


if __name__ == "__main__":
    main()
