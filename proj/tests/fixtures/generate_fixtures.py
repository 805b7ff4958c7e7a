"""Regenerates diagrams.json. Needs spherogram (pip install spherogram)."""

import json
import pathlib

import spherogram as sg
from spherogram import RationalTangle

ROLFSEN_UP_TO_8 = (
    ["3_1", "4_1", "5_1", "5_2"]
    + [f"6_{i}" for i in range(1, 4)]
    + [f"7_{i}" for i in range(1, 8)]
    + [f"8_{i}" for i in range(1, 22)]
)

PRETZELS = [
    (1, 1, 1), (3, 3, 3), (1, 3, 5), (2, 3, 5), (3, 5, 7), (2, 2, 2),
    (2, 4, 6), (1, 1, 1, 1), (2, 2, 3, 3), (5, 5, 5),
]

MUTANTS = [(1, 2, 3, 4), (2, 3, 4, 5), (1, 3, 5, 7), (2, 3, 5, 7), (1, 2, 4, 5), (3, 1, 4, 2)]


def pretzel(*twists):
    tangle = RationalTangle(1, twists[0])
    for t in twists[1:]:
        tangle = tangle + RationalTangle(1, t)
    return tangle.numerator_closure()


def entry(link):
    return {
        "pd": [list(c) for c in link.PD_code()],
        "components": len(link.link_components),
        "crossings": len(link.crossings),
    }


def main():
    out = {"knots": {}, "torus": {}, "pretzels": {}, "mutant_pairs": []}
    for name in ROLFSEN_UP_TO_8:
        link = sg.Link(name)
        if link.is_alternating():
            out["knots"][name] = entry(link)
    for n in range(2, 9):
        link = RationalTangle(n, 1).numerator_closure()
        assert link.is_alternating() and len(link.crossings) == n
        out["torus"][f"T2_{n}"] = entry(link)
    for p in PRETZELS:
        link = pretzel(*p)
        assert link.is_alternating()
        out["pretzels"]["P" + "_".join(map(str, p))] = entry(link)
    for a, b, c, d in MUTANTS:
        first, second = pretzel(a, b, c, d), pretzel(a, c, b, d)
        assert first.is_alternating() and second.is_alternating()
        out["mutant_pairs"].append({
            "name": f"P{a}_{b}_{c}_{d}",
            "first": entry(first),
            "second": entry(second),
        })
    path = pathlib.Path(__file__).with_name("diagrams.json")
    path.write_text(json.dumps(out, indent=1) + "\n")


if __name__ == "__main__":
    main()
