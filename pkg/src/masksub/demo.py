"""Bundled demo world for the toy backends.

A small sentiment vocabulary with linear class weights, a synonym table for
the toy masked LM, and word vectors in which synonyms sit close together.
The CLI's bare "toy" selectors resolve here, so an attack can run end to end
with no model server and no external data.

Run ``python -m masksub.demo OUTDIR`` to write a ready-to-attack dataset and
embedding file.
"""

from __future__ import annotations

import sys
from pathlib import Path

# class 0 = positive, class 1 = negative
DEMO_CLASS_WEIGHTS: list[dict[str, float]] = [
    {
        "love": 2.0, "great": 1.5, "wonderful": 2.0, "amazing": 1.8,
        "enjoyed": 1.2, "charming": 1.2, "fun": 1.0, "best": 1.0,
        "adore": 0.3, "like": 0.4, "fine": 0.3, "lovely": 0.5,
    },
    {
        "hate": 2.0, "awful": 2.0, "terrible": 2.0, "boring": 1.5,
        "bad": 1.5, "worst": 1.8, "dull": 1.2, "tedious": 1.3,
        "slow": 0.8, "weak": 0.6, "poor": 0.7, "flat": 0.5,
    },
]

DEMO_SYNONYMS: dict[str, list[tuple[str, float]]] = {
    "love": [("adore", 0.5), ("like", 0.3), ("cherish", 0.2)],
    "great": [("fine", 0.4), ("solid", 0.3), ("decent", 0.3)],
    "wonderful": [("lovely", 0.5), ("marvelous", 0.3), ("fine", 0.2)],
    "amazing": [("astonishing", 0.5), ("stunning", 0.3), ("striking", 0.2)],
    "enjoyed": [("liked", 0.6), ("savored", 0.4)],
    "charming": [("delightful", 0.6), ("pleasant", 0.4)],
    "fun": [("enjoyable", 0.6), ("entertaining", 0.4)],
    "best": [("finest", 0.6), ("greatest", 0.4)],
    "hate": [("despise", 0.6), ("detest", 0.4)],
    "awful": [("dreadful", 0.6), ("atrocious", 0.4)],
    "terrible": [("horrible", 0.5), ("dreadful", 0.5)],
    "boring": [("dull", 0.6), ("tedious", 0.4)],
    "bad": [("poor", 0.5), ("weak", 0.5)],
    "worst": [("poorest", 0.6), ("weakest", 0.4)],
    "movie": [("film", 0.7), ("picture", 0.3)],
    "film": [("movie", 0.7), ("picture", 0.3)],
    "acting": [("performance", 0.6), ("cast", 0.4)],
    "plot": [("story", 0.7), ("script", 0.3)],
    "story": [("plot", 0.6), ("tale", 0.4)],
    "slow": [("sluggish", 0.6), ("unhurried", 0.4)],
}

# 3-d vectors; words sharing a meaning cluster point the same way.
DEMO_VECTORS: dict[str, tuple[float, float, float]] = {
    "love": (5, 1, 0), "adore": (5, 1, 1), "like": (4, 1, 0), "cherish": (4, 2, 1),
    "enjoyed": (4, 1, 1), "liked": (4, 1, 0), "savored": (3, 1, 1),
    "great": (1, 5, 0), "fine": (1, 5, 1), "solid": (1, 4, 1), "decent": (1, 4, 0),
    "wonderful": (2, 5, 0), "lovely": (2, 5, 1), "marvelous": (2, 4, 0),
    "amazing": (1, 5, 2), "astonishing": (1, 5, 3), "stunning": (1, 4, 2),
    "striking": (1, 3, 2),
    "charming": (2, 4, 1), "delightful": (2, 4, 2), "pleasant": (2, 3, 1),
    "fun": (3, 4, 0), "enjoyable": (3, 4, 1), "entertaining": (3, 3, 1),
    "best": (0, 5, 1), "finest": (0, 5, 2), "greatest": (0, 4, 1),
    "hate": (0, 0, 5), "despise": (0, 1, 5), "detest": (1, 0, 5),
    "awful": (0, 1, 4), "dreadful": (0, 1, 5), "atrocious": (1, 1, 4),
    "terrible": (1, 0, 4), "horrible": (1, 1, 5),
    "boring": (0, 2, 4), "dull": (0, 2, 5), "tedious": (1, 2, 4),
    "bad": (1, 1, 3), "poor": (1, 2, 3), "weak": (0, 1, 3),
    "worst": (0, 0, 4), "poorest": (0, 1, 3), "weakest": (1, 0, 3),
    "slow": (0, 3, 3), "sluggish": (0, 3, 4), "unhurried": (1, 3, 3),
    "movie": (3, 3, 3), "film": (3, 3, 4), "picture": (3, 2, 3),
    "acting": (2, 2, 3), "performance": (2, 2, 4), "cast": (2, 1, 3),
    "plot": (2, 3, 2), "story": (2, 3, 3), "script": (1, 3, 2), "tale": (2, 2, 2),
    "flat": (0, 2, 3),
}

# Mildly mixed sentences are attackable; one-sided ones tend to resist, and
# a couple of lines are deliberately mislabeled so the suite reports skips.
DEMO_DATASET: list[tuple[str, int]] = [
    ("I love this slow movie", 0),
    ("The acting was great but the plot felt slow", 0),
    ("A wonderful story with a slightly weak script", 0),
    ("I enjoyed the charming cast despite the flat ending", 0),
    ("An amazing film with a poor second half", 0),
    ("The best fun I have had despite the dull start", 0),
    ("I hate this boring movie", 1),
    ("A terrible plot and awful acting", 1),
    ("The worst film with tedious pacing and a great cast", 1),
    ("A bad story saved by lovely acting", 1),
    ("Boring and slow yet somehow fine", 1),
    ("I love this movie", 1),
    ("An awful tedious mess", 0),
]


def demo_embedding_lines() -> list[str]:
    return [
        "{} {}".format(word, " ".join(str(float(x)) for x in vec))
        for word, vec in sorted(DEMO_VECTORS.items())
    ]


def write_demo_files(outdir: str | Path) -> tuple[Path, Path]:
    """Write demo embeddings and dataset; returns (embeddings, dataset) paths."""
    import json

    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    emb_path = outdir / "embeddings.txt"
    emb_path.write_text("\n".join(demo_embedding_lines()) + "\n", encoding="utf-8")
    ds_path = outdir / "dataset.jsonl"
    with ds_path.open("w", encoding="utf-8") as fh:
        for sentence, label in DEMO_DATASET:
            fh.write(json.dumps({"text": sentence, "label": label}) + "\n")
    return emb_path, ds_path


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if len(argv) != 1:
        print("usage: python -m masksub.demo OUTDIR", file=sys.stderr)
        return 1
    emb, ds = write_demo_files(argv[0])
    print(f"wrote {emb}")
    print(f"wrote {ds}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
