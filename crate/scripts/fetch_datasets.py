#!/usr/bin/env python3
"""Rebuild data/uci/ from public sources.

The UCI tables come from the dataset folder bundled with the Orange 3.3.4
source distribution on PyPI. Each Orange .tab file is converted to CSV with
the class column moved last; cell values are copied verbatim, so `?` stays
an ordinary category.

The two balloons tables are generated from their published concept
definitions (16 attribute combinations, four of them listed twice).

Usage: python3 scripts/fetch_datasets.py [--archive Orange3-3.3.4.tar.gz]
"""

import argparse
import csv
import hashlib
import io
import itertools
import sys
import tarfile
import urllib.request
from pathlib import Path

ORANGE_URL = (
    "https://pypi.org/packages/1d/2b/"
    "bcbf29202bf3211aa64678cae6a089898401bbfa72981affc1146925af60/"
    "Orange3-3.3.4.tar.gz"
)
ORANGE_SHA256 = "bf27972287bc332c5b37f4420fc73f12f2c8d96d2bf8019b3562d1806a662133"

TABLES = ["car", "breast-cancer", "zoo", "lymphography", "primary-tumor"]

OUT = Path(__file__).resolve().parent.parent / "data" / "uci"


def tab_to_rows(text):
    lines = text.rstrip("\n").split("\n")
    names = lines[0].split("\t")
    flags = lines[2].split("\t")
    flags += [""] * (len(names) - len(flags))
    cls = next(i for i, f in enumerate(flags) if "class" in f)
    order = [i for i in range(len(names)) if i != cls] + [cls]
    rows = [[names[i] for i in order]]
    for line in lines[3:]:
        cells = line.split("\t")
        rows.append([cells[i].strip() for i in order])
    return rows


def balloons(decide, repeat):
    rows = [["color", "size", "act", "age", "inflated"]]
    for combo in itertools.product(
        ["YELLOW", "PURPLE"], ["SMALL", "LARGE"], ["STRETCH", "DIP"], ["ADULT", "CHILD"]
    ):
        row = list(combo) + ["T" if decide(*combo) else "F"]
        rows.extend([row] * (2 if repeat(*combo) else 1))
    return rows


def write_csv(name, rows):
    path = OUT / f"{name}.csv"
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    path.write_text(buf.getvalue())
    digest = hashlib.sha256(path.read_bytes()).hexdigest()
    print(f"{name}: {len(rows) - 1} rows, {len(rows[0]) - 1} conditions, sha256 {digest}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--archive", help="local copy of the Orange 3.3.4 sdist")
    args = ap.parse_args()

    if args.archive:
        data = Path(args.archive).read_bytes()
    else:
        with urllib.request.urlopen(ORANGE_URL) as resp:
            data = resp.read()
    if hashlib.sha256(data).hexdigest() != ORANGE_SHA256:
        sys.exit("archive checksum mismatch")

    OUT.mkdir(parents=True, exist_ok=True)
    with tarfile.open(fileobj=io.BytesIO(data)) as tar:
        for name in TABLES:
            member = f"Orange3-3.3.4/Orange/datasets/{name}.tab"
            text = tar.extractfile(member).read().decode("utf-8")
            write_csv(name, tab_to_rows(text))

    write_csv(
        "yellow-small",
        balloons(
            lambda c, s, a, g: c == "YELLOW" and s == "SMALL",
            lambda c, s, a, g: c == "YELLOW" and s == "SMALL",
        ),
    )
    write_csv(
        "adult+stretch",
        balloons(
            lambda c, s, a, g: g == "ADULT" or a == "STRETCH",
            lambda c, s, a, g: g == "CHILD" and a == "DIP",
        ),
    )


if __name__ == "__main__":
    main()
