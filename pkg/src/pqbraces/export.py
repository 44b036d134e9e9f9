"""JSON and CSV serialisation of brace catalogs.

JSON layout: ``{"p", "q", "g", "braces": [descriptor, ...]}`` with tables as
row-major nested lists of flat indices.  CSV writes one summary file plus
one Cayley table per file, headed by the flat indices.
"""
from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Iterable

from .group_core import Params, make_params
from .skew_brace import SkewBrace, brace_from_descriptor, descriptor

SUMMARY_FIELDS = ["index", "label", "label_params", "add_kind", "mult_iso_type", "ker_lambda", "biskew", "formula"]


def catalog_document(params: Params, braces: Iterable[SkewBrace], include_tables: bool = False) -> dict:
    return {
        "p": params.p,
        "q": params.q,
        "g": params.g,
        "braces": [descriptor(B, include_tables) for B in braces],
    }


def write_json(path, doc: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, indent=1) + "\n")
    return path


def read_json(path) -> tuple[Params, list[SkewBrace]]:
    doc = json.loads(Path(path).read_text())
    return load_document(doc)


def load_document(doc: dict) -> tuple[Params, list[SkewBrace]]:
    params = make_params(doc["p"], doc["q"], doc.get("g"))
    return params, [brace_from_descriptor(params, rec) for rec in doc["braces"]]


def _file_stem(k: int, rec: dict) -> str:
    tag = rec["label"] + "".join(f"_{a}{b}" for a, b in rec["label_params"].items())
    return f"brace{k:02d}_{tag}"


def write_csv(directory, doc: dict) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    summary = directory / f"braces_p{doc['p']}_q{doc['q']}.csv"
    with summary.open("w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=SUMMARY_FIELDS)
        w.writeheader()
        for k, rec in enumerate(doc["braces"]):
            row = {f: rec.get(f) for f in SUMMARY_FIELDS if f not in ("index", "label_params")}
            row["index"] = k
            row["label_params"] = json.dumps(rec["label_params"])
            w.writerow(row)
    written.append(summary)
    for k, rec in enumerate(doc["braces"]):
        for name in ("add_table", "circ_table"):
            if name not in rec:
                continue
            path = directory / f"{_file_stem(k, rec)}_{name.split('_')[0]}.csv"
            write_table_csv(path, rec[name])
            written.append(path)
    return written


def write_table_csv(path, table) -> None:
    with Path(path).open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([""] + list(range(len(table))))
        for i, row in enumerate(table):
            w.writerow([i] + list(row))


def read_table_csv(path) -> list[list[int]]:
    with Path(path).open(newline="") as fh:
        rows = list(csv.reader(fh))
    return [[int(v) for v in row[1:]] for row in rows[1:]]
