#!/usr/bin/env python3
"""Builds the NMR fixtures: data/nmr_small.txt and data/nmr_zinc2d/*.json.

The small-molecule set is a hand-curated list of 46 structures with assignment
text kept in the exact published layout. The 2D set is 50 prediction documents
in the subset of the nmrium export schema that src/ingest/nmr.cpp reads; one
document is a faithful transcription of a published prediction, the other 49
carry synthesized shift values that are plausible but not physically simulated.
"""

import json
import os
import random
import re

rng = random.Random(515151)

DELTA = "δ"

# ---------------------------------------------------------------- small set

SMALL = [
    ("CC(=O)NCCCCN", "C6H14N2O",
     "1.40-1.64 (4H, 1.47 (tt, J = 7.4, 7.3 Hz), 1.58 (quint, J = 7.4 Hz)), "
     "1.86 (3H, s), 2.63 (2H, t, J = 7.3 Hz), 3.17 (2H, t, J = 7.4 Hz).",
     "23.1 (1C, s), 26.9 (1C, s), 27.9 (1C, s), 40.0 (1C, s), 41.0 (1C, s), "
     "179.7 (1C, s)."),
    ("CCO", "C2H6O",
     "1.18 (3H, t, J = 7.0 Hz), 2.61 (1H, s), 3.62 (2H, q, J = 7.0 Hz).",
     "18.2 (1C, s), 58.3 (1C, s)."),
    ("CC(C)O", "C3H8O",
     "1.16 (6H, d, J = 6.2 Hz), 2.16 (1H, s), 3.98 (1H, sept, J = 6.2 Hz).",
     "25.3 (2C, s), 64.0 (1C, s)."),
    ("CCCCO", "C4H10O",
     "0.92 (3H, t, J = 7.3 Hz), 1.38 (2H, m), 1.54 (2H, m), 2.30 (1H, s), "
     "3.62 (2H, t, J = 6.6 Hz).",
     "13.9 (1C, s), 19.0 (1C, s), 34.9 (1C, s), 62.6 (1C, s)."),
    ("c1ccccc1", "C6H6",
     "7.36 (6H, s).",
     "128.5 (6C, s)."),
    ("Cc1ccccc1", "C7H8",
     "2.36 (3H, s), 7.17 (3H, m), 7.26 (2H, m).",
     "21.4 (1C, s), 125.3 (1C, s), 128.2 (2C, s), 129.0 (2C, s), 137.8 (1C, s)."),
    ("CC(C)=O", "C3H6O",
     "2.17 (6H, s).",
     "30.8 (2C, s), 206.6 (1C, s)."),
    ("CCOC(C)=O", "C4H8O2",
     "1.26 (3H, t, J = 7.1 Hz), 2.04 (3H, s), 4.12 (2H, q, J = 7.1 Hz).",
     "14.2 (1C, s), 21.0 (1C, s), 60.4 (1C, s), 171.1 (1C, s)."),
    ("O=Cc1ccccc1", "C7H6O",
     "7.51 (2H, t, J = 7.6 Hz), 7.62 (1H, t, J = 7.4 Hz), 7.88 (2H, d, "
     "J = 7.8 Hz), 10.02 (1H, s).",
     "129.0 (2C, s), 129.7 (2C, s), 134.5 (1C, s), 136.4 (1C, s), 192.4 (1C, s)."),
    ("CCN(CC)CC", "C6H15N",
     "1.03 (9H, t, J = 7.1 Hz), 2.53 (6H, q, J = 7.1 Hz).",
     "12.1 (3C, s), 46.8 (3C, s)."),
    ("CCOC(=O)CC(=O)OCC", "C7H12O4",
     "1.27 (6H, t, J = 7.1 Hz), 3.36 (2H, s), 4.20 (4H, q, J = 7.1 Hz).",
     "14.1 (2C, s), 41.6 (1C, s), 61.5 (2C, s), 166.6 (2C, s)."),
    ("NCCO", "C2H7NO",
     "1.92 (3H, s), 2.82 (2H, t, J = 5.2 Hz), 3.60 (2H, t, J = 5.2 Hz).",
     "43.8 (1C, s), 63.9 (1C, s)."),
    ("CC(C)N", "C3H9N",
     "1.04 (6H, d, J = 6.3 Hz), 1.35 (2H, s), 3.07 (1H, sept, J = 6.3 Hz).",
     "26.1 (2C, s), 42.8 (1C, s)."),
    ("Clc1ccccc1", "C6H5Cl",
     "7.24 (1H, m), 7.30 (2H, m), 7.36 (2H, m).",
     "126.5 (1C, s), 128.7 (2C, s), 129.7 (2C, s), 134.3 (1C, s)."),
    ("COc1ccccc1", "C7H8O",
     "3.80 (3H, s), 6.91 (3H, m), 7.28 (2H, m).",
     "55.2 (1C, s), 114.0 (2C, s), 120.7 (1C, s), 129.5 (2C, s), 159.6 (1C, s)."),
    ("CC(=O)O", "C2H4O2",
     "2.10 (3H, s), 11.42 (1H, s).",
     "20.8 (1C, s), 178.1 (1C, s)."),
    ("OCC(O)CO", "C3H8O3",
     "3.56 (4H, m), 3.72 (1H, m), 4.55 (3H, s).",
     "63.3 (2C, s), 72.7 (1C, s)."),
    ("C1CCOC1", "C4H8O",
     "1.85 (4H, m), 3.74 (4H, m).",
     "25.8 (2C, s), 68.0 (2C, s)."),
    ("C1CCNCC1", "C5H11N",
     "1.43 (2H, m), 1.52 (4H, m), 1.78 (1H, s), 2.73 (4H, t, J = 5.4 Hz).",
     "25.3 (1C, s), 27.2 (2C, s), 47.1 (2C, s)."),
    ("CCOCC", "C4H10O",
     "1.18 (6H, t, J = 7.0 Hz), 3.43 (4H, q, J = 7.0 Hz).",
     "15.3 (2C, s), 65.9 (2C, s)."),
    ("CC(C)(C)O", "C4H10O",
     "1.23 (9H, s), 1.95 (1H, s).",
     "31.2 (3C, s), 69.1 (1C, s)."),
    ("Cc1ccc(C)cc1", "C8H10",
     "2.30 (6H, s), 7.05 (4H, s).",
     "20.9 (2C, s), 129.0 (4C, s), 134.7 (2C, s)."),
    ("CCC(C)=O", "C4H8O",
     "1.05 (3H, t, J = 7.3 Hz), 2.13 (3H, s), 2.45 (2H, q, J = 7.3 Hz).",
     "7.9 (1C, s), 29.4 (1C, s), 36.8 (1C, s), 209.3 (1C, s)."),
    ("CC(N)=O", "C2H5NO",
     "2.00 (3H, s), 5.95 (2H, s).",
     "22.4 (1C, s), 173.4 (1C, s)."),
    ("CNC(C)=O", "C3H7NO",
     "1.97 (3H, s), 2.79 (3H, d, J = 4.8 Hz), 5.80 (1H, s).",
     "23.1 (1C, s), 26.3 (1C, s), 170.3 (1C, s)."),
    ("OCCOCCO", "C4H10O3",
     "3.61 (4H, m), 3.73 (4H, m), 4.10 (2H, s).",
     "61.7 (2C, s), 72.5 (2C, s)."),
    ("CCCCCC", "C6H14",
     "0.88 (6H, t, J = 6.9 Hz), 1.27 (8H, m).",
     "14.1 (2C, s), 22.7 (2C, s), 31.6 (2C, s)."),
    ("C1CCCCC1", "C6H12",
     "1.43 (12H, s).",
     "26.9 (6C, s)."),
    ("Oc1ccccc1", "C6H6O",
     "5.35 (1H, s), 6.84 (2H, d, J = 8.0 Hz), 6.93 (1H, t, J = 7.4 Hz), "
     "7.24 (2H, t, J = 7.9 Hz).",
     "115.3 (2C, s), 120.8 (1C, s), 129.7 (2C, s), 155.4 (1C, s)."),
    ("Nc1ccccc1", "C6H7N",
     "3.60 (2H, s), 6.69 (2H, d, J = 8.0 Hz), 6.78 (1H, t, J = 7.4 Hz), "
     "7.16 (2H, t, J = 7.8 Hz).",
     "115.1 (2C, s), 118.5 (1C, s), 129.3 (2C, s), 146.4 (1C, s)."),
    ("CC#N", "C2H3N",
     "2.01 (3H, s).",
     "1.3 (1C, s), 118.0 (1C, s)."),
    ("CCCC#N", "C4H7N",
     "1.06 (3H, t, J = 7.4 Hz), 1.70 (2H, m), 2.30 (2H, t, J = 7.1 Hz).",
     "13.3 (1C, s), 19.0 (1C, s), 19.2 (1C, s), 119.7 (1C, s)."),
    ("CCCCBr", "C4H9Br",
     "0.92 (3H, t, J = 7.3 Hz), 1.46 (2H, m), 1.84 (2H, m), 3.41 (2H, t, "
     "J = 6.8 Hz).",
     "13.2 (1C, s), 21.3 (1C, s), 33.7 (1C, s), 34.9 (1C, s)."),
    ("OCc1ccccc1", "C7H8O",
     "2.28 (1H, s), 4.66 (2H, s), 7.33 (5H, m).",
     "65.2 (1C, s), 127.0 (2C, s), 127.7 (1C, s), 128.6 (2C, s), 140.9 (1C, s)."),
    ("CC(O)c1ccccc1", "C8H10O",
     "1.49 (3H, d, J = 6.5 Hz), 2.15 (1H, s), 4.89 (1H, q, J = 6.5 Hz), "
     "7.32 (5H, m).",
     "25.2 (1C, s), 70.4 (1C, s), 125.4 (2C, s), 127.5 (1C, s), 128.5 (2C, s), "
     "145.8 (1C, s)."),
    ("CC(=O)c1ccccc1", "C8H8O",
     "2.60 (3H, s), 7.46 (2H, t, J = 7.7 Hz), 7.56 (1H, t, J = 7.4 Hz), "
     "7.95 (2H, d, J = 7.8 Hz).",
     "26.6 (1C, s), 128.3 (2C, s), 128.6 (2C, s), 133.1 (1C, s), 137.1 (1C, s), "
     "198.1 (1C, s)."),
    ("CCOC(=O)c1ccccc1", "C9H10O2",
     "1.39 (3H, t, J = 7.1 Hz), 4.37 (2H, q, J = 7.1 Hz), 7.43 (2H, t, "
     "J = 7.7 Hz), 7.55 (1H, t, J = 7.4 Hz), 8.04 (2H, d, J = 7.9 Hz).",
     "14.3 (1C, s), 61.0 (1C, s), 128.3 (2C, s), 129.5 (2C, s), 130.5 (1C, s), "
     "132.8 (1C, s), 166.6 (1C, s)."),
    ("CN(C)C=O", "C3H7NO",
     "2.88 (3H, s), 2.96 (3H, s), 8.02 (1H, s).",
     "31.1 (1C, s), 36.2 (1C, s), 162.6 (1C, s)."),
    ("CS(C)=O", "C2H6OS",
     "2.62 (6H, s).",
     "40.5 (2C, s)."),
    ("CCS", "C2H6S",
     "1.30 (3H, t, J = 7.4 Hz), 1.40 (1H, t, J = 7.8 Hz), 2.55 (2H, m).",
     "19.1 (1C, s), 19.8 (1C, s)."),
    ("CSC", "C2H6S",
     "2.09 (6H, s).",
     "18.1 (2C, s)."),
    ("OCCN1CCCCC1", "C7H15NO",
     "1.45 (2H, m), 1.58 (4H, m), 2.44 (4H, m), 2.50 (2H, t, J = 5.4 Hz), "
     "2.85 (1H, s), 3.61 (2H, t, J = 5.4 Hz).",
     "24.1 (1C, s), 26.0 (2C, s), 54.5 (2C, s), 57.9 (1C, s), 59.2 (1C, s)."),
    ("CCCCCO", "C5H12O",
     "0.91 (3H, t, J = 7.0 Hz), 1.34 (4H, m), 1.56 (2H, m), 2.12 (1H, s), "
     "3.63 (2H, t, J = 6.6 Hz).",
     "14.0 (1C, s), 22.5 (1C, s), 28.0 (1C, s), 32.5 (1C, s), 62.9 (1C, s)."),
    ("Cc1ccco1", "C5H6O",
     "2.26 (3H, s), 5.95 (1H, m), 6.24 (1H, m), 7.27 (1H, m).",
     "13.5 (1C, s), 106.0 (1C, s), 110.0 (1C, s), 141.0 (1C, s), 152.1 (1C, s)."),
    ("Cc1cccs1", "C5H6S",
     "2.48 (3H, s), 6.78 (1H, m), 6.90 (1H, m), 7.08 (1H, m).",
     "15.0 (1C, s), 122.8 (1C, s), 124.8 (1C, s), 126.8 (1C, s), 139.5 (1C, s)."),
    ("CC(C)CO", "C4H10O",
     "0.91 (6H, d, J = 6.7 Hz), 1.75 (1H, m), 2.05 (1H, s), 3.40 (2H, d, "
     "J = 6.6 Hz).",
     "18.9 (2C, s), 30.8 (1C, s), 69.4 (1C, s)."),
]

# ------------------------------------------------------------ pinned 2D doc

PINNED_SMILES = "CCCN1C(=O)c2ccccc2N(CC(=O)Nc3ccccc3)C1=O"

PINNED_H1 = [
    (7.63, "ddd", [7.88, 1.41, 0.51], 1),
    (7.6, "ddd", [8.14, 7.52, 1.41], 1),
    (7.48, "dddd", [8.16, 1.47, 1.24, 0.54], 2),
    (7.39, "ddd", [8.14, 1.39, 0.51], 1),
    (7.34, "ddd", [7.88, 7.52, 1.39], 1),
    (7.27, "dddd", [8.16, 7.76, 1.43, 0.54], 2),
    (7.07, "tt", [7.76, 1.24], 1),
    (4.66, "s", [], 2),
    (3.85, "t", [6.97], 2),
    (1.71, "tq", [6.97, 6.61], 2),
    (0.96, "t", [6.61], 3),
]

PINNED_C13 = [
    (169.1, 1), (161.4, 1), (152.5, 1), (140.5, 1), (138.07, 1), (135.15, 1),
    (129, 1), (128.9, 2), (126.75, 1), (123.58, 1), (120.2, 2), (115.6, 1),
    (115.2, 1), (47.35, 1), (42.6, 1), (21, 1), (11.15, 1),
]

PINNED_COSY = [
    (7.6, 7.39), (7.6, 7.34), (7.63, 7.34), (7.07, 7.27), (7.48, 7.27),
    (3.85, 1.71), (1.71, 0.96),
]

PINNED_HSQC = [
    (7.6, 135.15), (7.63, 129), (7.27, 128.9), (7.34, 126.75), (7.07, 123.58),
    (7.48, 120.2), (7.39, 115.2), (4.66, 47.35), (3.85, 42.6), (1.71, 21),
    (0.96, 11.15),
]

PINNED_HMBC = [
    (4.66, 169.1), (7.63, 161.4), (3.85, 161.4), (3.85, 152.5), (4.66, 152.5),
    (4.66, 140.5), (7.6, 140.5), (7.63, 140.5), (7.39, 140.5), (7.48, 138.07),
    (7.27, 138.07), (7.63, 135.15), (7.39, 135.15), (7.34, 135.15), (7.6, 129),
    (7.34, 129), (7.07, 128.9), (7.48, 128.9), (7.27, 128.9), (7.6, 126.75),
    (7.63, 126.75), (7.39, 126.75), (7.48, 123.58), (7.27, 123.58),
    (7.07, 120.2), (7.48, 120.2), (7.27, 120.2), (7.63, 115.6), (7.39, 115.6),
    (7.34, 115.6), (7.6, 115.2), (7.34, 115.2), (1.71, 42.6), (0.96, 42.6),
    (3.85, 21), (0.96, 21), (3.85, 11.15), (1.71, 11.15),
]


def doc_json(smiles, h1, c13, cosy, hsqc, hmbc):
    def h1_signal(shift, mult, js, nh):
        sig = {"delta": shift, "multiplicity": mult}
        if js:
            sig["js"] = [{"coupling": j} for j in js]
        sig["integration"] = nh
        return sig

    return {
        "molecule": {"smiles": smiles},
        "spectra": [
            {"info": {"dimension": 1, "nucleus": "1H"},
             "ranges": [{"signals": [h1_signal(*s) for s in h1]}]},
            {"info": {"dimension": 1, "nucleus": "13C"},
             "ranges": [{"signals": [{"delta": s, "multiplicity": "s",
                                      "nbAtoms": n} for s, n in c13]}]},
            {"info": {"dimension": 2, "experiment": "cosy"},
             "zones": [{"x": {"delta": a}, "y": {"delta": b}}
                       for a, b in cosy]},
            {"info": {"dimension": 2, "experiment": "hsqc"},
             "zones": [{"x": {"delta": a}, "y": {"delta": b}}
                       for a, b in hsqc]},
            {"info": {"dimension": 2, "experiment": "hmbc"},
             "zones": [{"x": {"delta": a}, "y": {"delta": b}}
                       for a, b in hmbc]},
        ],
    }


# --------------------------------------------------- synthesized 2D corpus

ATOM_RE = re.compile(r"Cl|Br|[CNOSFIcnos]")


def heavy_count(smiles):
    return len(ATOM_RE.findall(smiles))


def carbon_count(smiles):
    return len(re.findall(r"C(?!l)|c", smiles))


def synth_doc(smiles):
    nc = carbon_count(smiles)
    aromatic = len(re.findall(r"[cnos]", smiles))

    c13 = []
    used = set()
    for i in range(nc):
        while True:
            if i < aromatic:
                s = round(rng.uniform(108.0, 162.0), 2)
            else:
                s = round(rng.uniform(8.0, 75.0), 2)
            if s not in used:
                used.add(s)
                break
        c13.append((s, 1))
    c13.sort(reverse=True)

    n_h1 = max(2, min(11, nc - rng.randint(0, 2)))
    h1 = []
    used_h = set()
    protonated = [s for s, _ in c13]
    rng.shuffle(protonated)
    for i in range(n_h1):
        c_ref = protonated[i % len(protonated)]
        base = 7.2 if c_ref > 100 else 2.2
        while True:
            s = round(base + rng.uniform(-1.4, 1.2), 2)
            if s not in used_h and s > 0.3:
                used_h.add(s)
                break
        mult = rng.choice(["s", "d", "t", "m", "dd"])
        js = []
        if mult == "d":
            js = [round(rng.uniform(1.0, 9.0), 2)]
        elif mult == "t":
            js = [round(rng.uniform(6.0, 8.0), 2)]
        elif mult == "dd":
            js = [round(rng.uniform(6.0, 9.0), 2), round(rng.uniform(1.0, 3.0), 2)]
        h1.append((s, mult, js, rng.choice([1, 1, 2, 2, 3])))
    h1.sort(key=lambda t: -t[0])

    hsqc = []
    for i, (s, _, _, _) in enumerate(h1):
        hsqc.append((s, c13[i % len(c13)][0]))

    cosy = []
    for i in range(len(h1) - 1):
        if rng.random() < 0.45:
            cosy.append((h1[i][0], h1[i + 1][0]))

    hmbc = []
    for s, _, _, _ in h1:
        for _ in range(2):
            hmbc.append((s, rng.choice(c13)[0]))

    # write 2D lists pre-sorted by partner shift so documents are already in
    # the normalized order the reader produces
    cosy.sort(key=lambda p: -p[1])
    hsqc.sort(key=lambda p: -p[1])
    hmbc.sort(key=lambda p: -p[1])
    return doc_json(smiles, h1, c13, cosy, hsqc, hmbc)


def pick_2d_molecules():
    rows = []
    with open("data/corpus_demo.smi") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            smiles = line.split()[0]
            h = heavy_count(smiles)
            if 8 <= h <= 28 and carbon_count(smiles) >= 4:
                rows.append((smiles, h))
    # ten strata by heavy-atom count, five molecules each
    chosen = []
    for lo in range(8, 28, 2):
        pool = [s for s, h in rows if lo <= h < lo + 2 and s not in chosen]
        rng.shuffle(pool)
        chosen.extend(pool[:5])
    return chosen[:49]


def main():
    with open("data/nmr_small.txt", "w") as f:
        f.write("# small-molecule NMR fixture, one blank-line-separated"
                " record per molecule\n")
        for smiles, formula, h1, c13 in SMALL:
            f.write(f"SMILES: {smiles}\n")
            f.write(f"Formula: {formula}\n")
            f.write(f"1H NMR: {DELTA} {h1}\n")
            f.write(f"13C NMR: {DELTA} {c13}\n\n")
    print(f"wrote {len(SMALL)} records to data/nmr_small.txt")

    os.makedirs("data/nmr_zinc2d", exist_ok=True)
    docs = [doc_json(PINNED_SMILES, PINNED_H1, PINNED_C13, PINNED_COSY,
                     PINNED_HSQC, PINNED_HMBC)]
    docs += [synth_doc(s) for s in pick_2d_molecules()]
    for i, doc in enumerate(docs):
        with open(f"data/nmr_zinc2d/doc_{i:02d}.json", "w") as f:
            json.dump(doc, f, indent=1)
            f.write("\n")
    print(f"wrote {len(docs)} documents to data/nmr_zinc2d/")


if __name__ == "__main__":
    main()
