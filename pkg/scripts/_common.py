"""Small helpers shared by the experiment scripts."""
import argparse
import csv
import os


def out_dir(description):
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--out", default="results", help="output directory")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)
    return args.out


def write_rows(path, header, rows):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([format(v, ".17g") if isinstance(v, float) else v for v in r])
    print(f"wrote {path}")
