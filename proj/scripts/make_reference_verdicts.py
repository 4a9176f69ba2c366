#!/usr/bin/env python3
"""Build data/reference_verdicts.csv, the per-question verdict fixture.

The per-category correct counts below reproduce the published success rates
for the four reference models. Which individual questions are marked correct
is synthetic (the first k of each block); only the counts are meaningful.
"""

import csv
import pathlib

BLOCKS = [
    # (category, variant, id_stem, n)
    ("counting_carbon", "", "counting_carbon", 50),
    ("counting_ring", "", "counting_ring", 48),
    ("shortest_path", "canonical", "shortest_path-canonical", 54),
    ("shortest_path", "random", "shortest_path-random", 54),
    ("atom_mapping", "semi_canonical", "atom_mapping-semi-canonical", 92),
    ("atom_mapping", "random", "atom_mapping-random", 92),
    ("smiles_to_iupac", "zinc_canonical", "smiles_to_iupac-zinc-canonical", 100),
    ("smiles_to_iupac", "zinc_random", "smiles_to_iupac-zinc-random", 100),
    ("sar", "integer", "sar-integer", 20),
    ("sar", "noise", "sar-noise", 20),
    ("reaction", "synthetic_canonical", "reaction-synthetic-canonical", 45),
    ("reaction", "synthetic_random", "reaction-synthetic-random", 45),
    ("nmr_elucidation", "small", "nmr_elucidation-small", 46),
    ("nmr_elucidation", "zinc_2d", "nmr_elucidation-zinc-2d", 50),
]

CORRECT = {
    "gpt-4o": [2, 22, 6, 3, 0, 0, 0, 0, 0, 3, 8, 3, 9, 0],
    "o3-mini-low": [35, 42, 22, 13, 11, 5, 10, 8, 15, 13, 16, 15, 16, 1],
    "o3-mini-medium": [40, 48, 38, 20, 36, 25, 18, 14, 20, 19, 23, 22, 30, 1],
    "o3-mini-high": [46, 48, 48, 30, 57, 46, 29, 28, 20, 20, 25, 29, 34, 3],
}

MODELS = ["gpt-4o", "o3-mini-low", "o3-mini-medium", "o3-mini-high"]


def main():
    total_n = sum(n for *_, n in BLOCKS)
    assert total_n == 816, total_n
    for model in MODELS:
        counts = CORRECT[model]
        assert len(counts) == len(BLOCKS)
        for (_, _, _, n), k in zip(BLOCKS, counts):
            assert 0 <= k <= n, (model, k, n)

    out = pathlib.Path(__file__).resolve().parent.parent / "data" / "reference_verdicts.csv"
    with out.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["model", "question_id", "category", "variant", "verdict"])
        for model in MODELS:
            for (category, variant, stem, n), k in zip(BLOCKS, CORRECT[model]):
                for i in range(1, n + 1):
                    verdict = "correct" if i <= k else "incorrect"
                    w.writerow([model, f"{stem}-{i:03d}", category, variant, verdict])

    for model in MODELS:
        total_k = sum(CORRECT[model])
        print(f"{model}: {total_k}/816 = {100.0 * total_k / 816:.1f}%")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
