#!/usr/bin/env python3
"""Regenerates the synthetic fixture dataset under tests/fixtures/.

The numbers are random draws with a fixed seed; they only exercise the
pipeline and carry no meaning about real models.
"""

import csv
import json
import random
import urllib.parse
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

STEREOTYPE = ["nurse", "engineer", "secretary", "carpenter"]
WIKI = ["president", "engineer", "heir", "accountant", "model", "author", "umpire"]
PROFESSIONS = ["nurse", "engineer", "secretary", "carpenter", "president", "heir",
               "accountant", "model", "author", "umpire"]
ARTICLE = {"engineer": "an", "heir": "an", "accountant": "an", "author": "an", "umpire": "an"}

MODELS = {
    "roberta-base": {"mask": "<mask>", "he": "He", "she": "She", "seeds": {0: 6}},
    "bert-base-uncased": {"mask": "[MASK]", "he": "he", "she": "she", "seeds": {0: 5, 1: 5, 2: 5}},
}
VERBS = ["is", "works as"]


def write_lists():
    (ROOT / "professions").mkdir(parents=True, exist_ok=True)
    (ROOT / "professions" / "stereotype.txt").write_text("\n".join(STEREOTYPE) + "\n")
    (ROOT / "professions" / "wiki.txt").write_text("\n".join(WIKI) + "\n")


def write_scores(rng):
    rows = []
    for model, cfg in MODELS.items():
        mask = cfg["mask"]
        for seed, steps in cfg["seeds"].items():
            checkpoints = [str(20000 * (i + 1)) for i in range(steps)]
            for step in checkpoints:
                for verb in VERBS:
                    for prof in PROFESSIONS + [None]:
                        if prof is None:
                            template = f"{mask} {verb} a {mask}."
                            name = mask
                        else:
                            template = f"{mask} {verb} {ARTICLE.get(prof, 'a')} {prof}."
                            name = prof
                        p_he = round(rng.uniform(0.05, 0.55), 6)
                        p_she = round(rng.uniform(0.02, 0.40), 6)
                        for pronoun, p in ((cfg["he"], p_he), (cfg["she"], p_she)):
                            sentence = template.replace(mask, pronoun, 1)
                            rows.append([pronoun, repr(p), name, template, sentence, model,
                                         str(seed), step])
        # public checkpoint rows (seed -1, no step) are carried but not analyzed
        for verb in VERBS:
            template = f"{mask} {verb} a nurse."
            for pronoun in (cfg["he"], cfg["she"]):
                rows.append([pronoun, "0.25", "nurse", template,
                             template.replace(mask, pronoun, 1), model, "-1", ""])
    with open(ROOT / "scores.csv", "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["pronoun", "score", "profession", "template", "sentence", "model", "seed",
                    "checkpoint"])
        w.writerows(rows)


def series(rng, scale):
    return [round(scale * rng.uniform(0.2, 1.8) * 1e-6, 12) for _ in range(301)]


def fixture_name(content, ci, corpus="en-2019"):
    enc = urllib.parse.quote(content, safe="-_.~")
    return f"{enc}__{'ci' if ci else 'cs'}__{corpus}.json"


def write_ngrams(rng):
    d = ROOT / "ngram"
    d.mkdir(parents=True, exist_ok=True)
    for i, prof in enumerate(PROFESSIONS):
        lower = series(rng, 1.0 + i)
        upper = series(rng, 0.3 + (5.0 if prof in ("president", "author") else 0.0))
        (d / fixture_name(prof, False)).write_text(
            json.dumps([{"ngram": prof, "parent": "", "type": "NGRAM", "timeseries": lower}]))
        cap = prof.capitalize()
        total = [a + b for a, b in zip(lower, upper)]
        (d / fixture_name(prof, True)).write_text(json.dumps([
            {"ngram": f"{prof} (All)", "parent": "", "type": "CASE_INSENSITIVE",
             "timeseries": total},
            {"ngram": prof, "parent": f"{prof} (All)", "type": "EXPANSION", "timeseries": lower},
            {"ngram": cap, "parent": f"{prof} (All)", "type": "EXPANSION", "timeseries": upper},
        ]))
    (d / fixture_name("zzqx-nonword", False)).write_text("[]")
    (d / fixture_name("zzqx-nonword", True)).write_text("[]")


def write_sizes(rng):
    with open(ROOT / "corpus_sizes.csv", "w") as f:
        f.write("year,tokens\n")
        for year in range(1700, 2001):
            f.write(f"{year},{int(1e6 * (1 + (year - 1700) / 30) * rng.uniform(0.8, 1.2))}\n")


def write_golden_manifests():
    """Expected probe manifests, written from this script's own article table."""
    d = ROOT / "golden"
    d.mkdir(parents=True, exist_ok=True)
    for model, cfg in MODELS.items():
        mask = cfg["mask"]
        with open(d / f"templates_{model}.csv", "w", newline="") as f:
            w = csv.writer(f, lineterminator="\n")
            w.writerow(["verb", "profession", "template"])
            for verb in VERBS:
                for prof in PROFESSIONS:
                    w.writerow([verb, prof, f"{mask} {verb} {ARTICLE.get(prof, 'a')} {prof}."])
                w.writerow([verb, mask, f"{mask} {verb} a {mask}."])


if __name__ == "__main__":
    rng = random.Random(20221125)
    write_lists()
    write_scores(rng)
    write_ngrams(rng)
    write_sizes(rng)
    write_golden_manifests()
