#!/usr/bin/env python3
"""Builds data/corpus_demo.smi, the demo molecule corpus.

The corpus is assembled from textual fragments so that every line is valid
organic-subset SMILES by construction: neutral molecules, no spiro or bridged
ring systems, at most 28 heavy atoms. Dedicated families guarantee coverage
needed by the question generators (2+ molecules per carbon count 3..27, 8+
per ring count 1..6, long chains for large bond distances, and a molecular
weight ladder so every weight decile is populated).
"""

import random
import sys

rng = random.Random(727272)

OUT = sys.argv[1] if len(sys.argv) > 1 else "data/corpus_demo.smi"
TARGET = 10000

# each fragment carries its heavy-atom count so the script can budget sizes
# without parsing SMILES
PENDANT_RINGS = [
    ("c3ccccc3", 6),
    ("C3CCCCC3", 6),
    ("C3CCCC3", 5),
    ("C3CC3", 3),
    ("C3CCC3", 4),
    ("c3ccncc3", 6),
    ("c3cncnc3", 6),
    ("c3ccoc3", 5),
    ("c3ccsc3", 5),
    ("C3CCOC3", 5),
    ("C3CCNCC3", 6),
    ("n3cccc3", 5),
    ("c3ccc4ccccc4c3", 10),
]

# pyrrole attaches through its nitrogen, so it cannot lead a chain
CHAIN_RINGS = [r for r in PENDANT_RINGS if not r[0].startswith("n")]

SMALL_RINGS = [("C3CC3", 3), ("C3CCC3", 4)]

BRANCHES = [
    ("C", 1), ("CC", 2), ("C(C)C", 3), ("F", 1), ("Cl", 1), ("Br", 1),
    ("O", 1), ("OC", 2), ("N", 1), ("NC", 2), ("C#N", 2), ("C=O", 2),
    ("C(C)=O", 3), ("C(=O)OC", 4), ("C(=O)N", 3), ("S", 1), ("SC", 2),
]

ARYLENES = [
    ("c1ccc(", ")cc1", 6),
    ("c1cc(", ")ccc1", 6),
    ("c1ccc2cc(", ")ccc2c1", 10),
]

seen = set()
lines = []


def emit(smiles):
    if smiles in seen:
        return False
    seen.add(smiles)
    lines.append(smiles)
    return True


def carbon_family():
    for c in range(3, 28):
        emit("C" * c)
        emit("C" * (c - 1) + "O")
        if c >= 4:
            emit("C" * (c - 2) + "C(C)N")


def ring_family():
    linkers = ["C", "CC", "CCC"]
    for r in range(1, 7):
        made = 0
        attempts = 0
        while made < 12 and attempts < 600:
            attempts += 1
            pool = CHAIN_RINGS if r <= 3 else SMALL_RINGS
            parts = []
            heavy = 0
            ring_total = 0
            while ring_total < r:
                ring, h = rng.choice(pool)
                n_rings = 2 if ring == "c3ccc4ccccc4c3" else 1
                if ring_total + n_rings > r:
                    continue
                parts.append(ring)
                heavy += h
                ring_total += n_rings
            body = parts[0]
            for p in parts[1:]:
                lk = rng.choice(linkers) if r <= 3 else "C"
                body += lk + p
                heavy += len(lk)
            if heavy > 27:
                continue
            body += rng.choice(["", "C", "CC", "O", "CO"])
            if emit(body):
                made += 1


def weight_ladder():
    # terminal halogens step the weight up in a controlled way
    for k in range(3, 24):
        for halo in ("F", "Cl", "Br", "I"):
            emit("C" * k + halo)
        if k >= 5:
            emit("Br" + "C" * k + "Br")
            emit("I" + "C" * k + "C(=O)OC")
    for k in range(10, 26):
        emit("I" + "C" * k + "I")
        emit("Br" + "C" * k + "I")
        emit("C(I)(I)" + "C" * k)
    for k in range(10, 18):
        emit("IC(CI)" + "C" * k + "Br")


def long_chain_family():
    for k in range(15, 25):
        emit("C" * k + "C(=O)N")
        emit("C" * k + "C(=O)OC")


def render(units):
    out = []
    for atom, branches in units:
        out.append(atom)
        for br in branches:
            out.append("(" + br + ")")
    return "".join(out)


def random_pool(n):
    backbone_atoms = ["C"] * 12 + ["N", "O", "S"]
    attempts = 0
    made = 0
    while made < n and attempts < n * 30:
        attempts += 1
        length = rng.randint(3, 18)
        units = []
        heavy = 0
        prev_hetero = False
        for _ in range(length):
            a = rng.choice(backbone_atoms)
            if prev_hetero and a != "C":
                a = "C"
            units.append([a, []])
            heavy += 1
            prev_hetero = a != "C"
        for unit in units:
            if unit[0] != "C" or unit[1] or heavy >= 26:
                continue
            if rng.random() < 0.25:
                if rng.random() < 0.75:
                    br, h = rng.choice(BRANCHES)
                else:
                    br, h = rng.choice(PENDANT_RINGS)
                if heavy + h > 28:
                    continue
                unit[1].append(br)
                heavy += h
        if rng.random() < 0.30 and heavy + 6 <= 28 and len(units) >= 2:
            # drop an arylene into the middle of the chain
            cut = rng.randint(1, len(units) - 1)
            opener, closer, h = rng.choice(ARYLENES)
            if heavy + h > 28:
                smiles = render(units)
            else:
                smiles = render(units[:cut]) + opener + render(units[cut:]) + closer
                heavy += h
        else:
            smiles = render(units)
        if heavy < 3 or heavy > 28:
            continue
        if emit(smiles):
            made += 1


def main():
    carbon_family()
    ring_family()
    weight_ladder()
    long_chain_family()
    random_pool(TARGET - len(lines))
    with open(OUT, "w") as f:
        f.write("# demo corpus, generated by scripts/make_demo_corpus.py\n")
        for i, smiles in enumerate(lines):
            f.write(f"{smiles} demo-{i:06d}\n")
    print(f"wrote {len(lines)} molecules to {OUT}")


if __name__ == "__main__":
    main()
