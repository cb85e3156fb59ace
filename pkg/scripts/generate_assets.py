#!/usr/bin/env python3
"""Build the curated figure datasets, verify each with the full pipeline,
and write the asset files plus manifest. Rerunning regenerates identical
data (all builders are deterministic)."""

import json
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from linkweave.classify import classification_dict, classify_theta
from linkweave.construct import (
    save_embedding,
    verify_embedding_pair,
)
from linkweave.figures import (
    build_theta_one_apex,
    build_theta_three_apex,
    build_threaded_wheels,
    build_wheel_cage,
)
from linkweave.geom import save_curve
from linkweave.linktable import link_map_from_curve

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "linkweave", "data", "assets")


def theta_asset(name, builder, expected_case, **kwargs):
    curves, emb = builder(**kwargs)
    maps = [link_map_from_curve(c, emb) for c in curves]
    result = classify_theta(*maps)
    if result.sign == -1:
        # cosmetic: reverse all three cycles so the recorded sign is +1
        curves = tuple(c.reverse() for c in curves)
        maps = [link_map_from_curve(c, emb) for c in curves]
        result = classify_theta(*maps)
    assert result.case == expected_case, (name, result)
    files = []
    for i, c in enumerate(curves, start=1):
        fn = f"{name}-c{i}.txt"
        save_curve(c, os.path.join(OUT, fn))
        files.append(fn)
    save_embedding(emb, os.path.join(OUT, f"{name}-h.txt"))
    return {
        "kind": "theta",
        "curves": files,
        "h": f"{name}-h.txt",
        "expected": classification_dict(result),
    }


def graph_asset(name, kind, builder, expected_case, **kwargs):
    g, h = builder(**kwargs)
    result = verify_embedding_pair(g, h)
    assert result.status.is_weak, (name, result.status)
    cls = result.classification
    label = getattr(cls, "case", getattr(cls, "kind", None))
    assert label == expected_case, (name, label)
    save_embedding(g, os.path.join(OUT, f"{name}-g.txt"))
    save_embedding(h, os.path.join(OUT, f"{name}-h.txt"))
    return {
        "kind": kind,
        "g": f"{name}-g.txt",
        "h": f"{name}-h.txt",
        "expected": classification_dict(cls),
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    manifest = {
        "fig2-left": theta_asset(
            "fig2-left", build_theta_one_apex, "A1", part_sizes=(1, 1, 2)
        ),
        "fig2-right": theta_asset(
            "fig2-right", build_theta_three_apex, "A2", in_size=2
        ),
        "fig3-left": graph_asset(
            "fig3-left", "k4", build_wheel_cage, "B1", x_count=1,
            part_sizes=(1, 1, 1, 1),
        ),
        "fig3-right": graph_asset(
            "fig3-right", "k4", build_threaded_wheels, "B2", x_count=1, y_count=2
        ),
        "fig4-left": graph_asset(
            "fig4-left", "pair", build_wheel_cage, "D1", x_count=2,
            part_sizes=(2, 1, 1, 1),
        ),
        "fig4-right": graph_asset(
            "fig4-right", "pair", build_threaded_wheels, "D2", x_count=2, y_count=2
        ),
    }
    with open(os.path.join(OUT, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    for name, entry in sorted(manifest.items()):
        print(f"{name}: {entry['expected']}")


if __name__ == "__main__":
    main()
