#!/usr/bin/env python3
"""Regenerates the bundled synthetic datasets under data/.

The classic effort-estimation corpora cannot ship with this repository
(ISBSG is licensed; the PROMISE mirrors carry their own terms), so the
bundled CSVs are deterministic synthetic stand-ins that keep the published
shapes: 81 Desharnais-style projects, 93 COCOMO-style projects, and a
200-project sample shaped like the ten selected ISBSG features. Real files
drop in through the same schema configs.

Run from the repository root:  python3 tools/gen_fixtures.py
"""

import csv
import pathlib

import numpy as np

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"

ARCHITECTURES = [
    "Stand alone",
    "Client server",
    "Multi-tier",
    "Multi-tier with web public interface",
]
APP_GROUPS = [
    "Business Application",
    "Infrastructure Software",
    "Mathematically-Intensive Application",
    "Real-Time Application",
]
APP_TYPES = [
    "Job, case, incident, project management;",
    "Financial transaction process/accounting;",
    "Management Information System",
    "Customer relationship management",
    "Online analysis and reporting",
    "Transaction/Production System",
    "Workflow support & management",
    "Electronic Data Interchange",
]
LANGUAGES = ["Java", "C#", "COBOL", "PL/I", "ABAP", "C++", "Visual Basic", "Oracle", "SQL"]
METHODOLOGIES = [
    "Waterfall",
    "Agile Development",
    "Iterative",
    "Unified Process",
    "Rapid Application Development",
]


def fmt_count(v):
    return "0" if v == 0 else f"{float(v):.1f}"


def write_rows(path, header, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    print(f"wrote {path} ({len(rows)} rows)")


def gen_desharnais(rng):
    n = 81
    points_non_adjust = np.clip(np.rint(rng.lognormal(5.55, 0.55, n)), 73, 1127).astype(int)
    adjustment = rng.integers(5, 53, n)
    points_adjust = np.clip(
        np.rint(points_non_adjust * (0.62 + 0.011 * adjustment)), 62, 1116
    ).astype(int)
    transactions = np.clip(
        np.rint(points_non_adjust * rng.uniform(0.3, 0.7, n)), 9, 886
    ).astype(int)
    entities = np.clip(points_non_adjust - transactions + rng.integers(-20, 21, n), 7, 387)
    team_exp = rng.integers(0, 5, n)
    manager_exp = rng.integers(0, 8, n)
    year_end = rng.integers(82, 89, n)
    language = rng.choice([1, 2, 3], n, p=[0.57, 0.31, 0.12])
    length = np.clip(np.rint(points_adjust / 30 + rng.normal(0, 3, n)), 1, 39).astype(int)

    rate = np.select([language == 1, language == 2, language == 3], [19.0, 12.0, 5.5])
    effort = np.clip(
        np.rint(points_adjust * rate * rng.lognormal(0.0, 0.35, n)), 546, 23940
    ).astype(int)

    # A handful of blanks, like the four incomplete projects in the original.
    blank_team = rng.choice(n, 2, replace=False)
    blank_mgr = rng.choice(n, 2, replace=False)

    rows = []
    for i in range(n):
        rows.append(
            [
                i + 1,
                "" if i in blank_team else team_exp[i],
                "" if i in blank_mgr else manager_exp[i],
                year_end[i],
                length[i],
                transactions[i],
                entities[i],
                points_non_adjust[i],
                adjustment[i],
                points_adjust[i],
                language[i],
                effort[i],
            ]
        )
    header = [
        "Project",
        "TeamExp",
        "ManagerExp",
        "YearEnd",
        "Length",
        "Transactions",
        "Entities",
        "PointsNonAdjust",
        "Adjustment",
        "PointsAjust",
        "Language",
        "Effort",
    ]
    write_rows(OUT / "desharnais.csv", header, rows)
    return rows


def gen_cocomo(rng):
    n = 93
    multipliers = {
        "rely": [0.75, 0.88, 1.00, 1.15, 1.40],
        "data": [0.94, 1.00, 1.08, 1.16],
        "cplx": [0.70, 0.85, 1.00, 1.15, 1.30, 1.65],
        "time": [1.00, 1.11, 1.30, 1.66],
        "stor": [1.00, 1.06, 1.21, 1.56],
        "virt": [0.87, 1.00, 1.15, 1.30],
        "turn": [0.87, 1.00, 1.07, 1.15],
        "acap": [1.46, 1.19, 1.00, 0.86, 0.71],
        "aexp": [1.29, 1.13, 1.00, 0.91, 0.82],
        "pcap": [1.42, 1.17, 1.00, 0.86, 0.70],
        "vexp": [1.21, 1.10, 1.00, 0.90],
        "lexp": [1.14, 1.07, 1.00, 0.95],
        "modp": [1.24, 1.10, 1.00, 0.91, 0.82],
        "tool": [1.24, 1.10, 1.00, 0.91, 0.83],
        "sced": [1.23, 1.08, 1.00, 1.04, 1.10],
    }
    loc = np.clip(rng.lognormal(3.4, 1.1, n), 1.98, 1150.0)

    columns = {name: rng.choice(values, n) for name, values in multipliers.items()}
    eaf = np.ones(n)
    for values in columns.values():
        eaf = eaf * values
    effort = np.clip(2.4 * loc**1.05 * eaf * rng.lognormal(0.0, 0.3, n), 5.9, 11400.0)

    rows = []
    for i in range(n):
        row = [f"{columns[name][i]:.2f}" for name in multipliers]
        row.append(f"{loc[i]:.2f}")
        row.append(f"{effort[i]:.1f}")
        rows.append(row)
    header = list(multipliers) + ["loc", "actual"]
    write_rows(OUT / "cocomo.csv", header, rows)


def gen_isbsg_sample(rng):
    n = 200
    # Planted per-row missing counts over the ten selected features.
    missing_plan = [0] * 20 + [1] * 40 + [2] * 40 + [3] * 30 + [4] * 25 + [5] * 20 + [6] * 15 + [7] * 10
    assert len(missing_plan) == n
    rng.shuffle(missing_plan)

    rows = []
    for i in range(n):
        team = int(rng.integers(1, 41))
        under1 = int(rng.integers(0, max(2, team // 3)))
        mid = int(rng.integers(0, max(2, team // 2)))
        over3 = max(0, team - under1 - mid - int(rng.integers(0, 4)))
        effort = float(
            np.clip(420.0 * team**1.1 * rng.lognormal(0.0, 0.6), 200.0, 60000.0)
        )
        cells = [
            str(rng.choice(ARCHITECTURES)),
            fmt_count(under1),
            fmt_count(mid),
            fmt_count(over3),
            f"{float(rng.integers(0, 21)):.1f}",
            str(rng.choice(APP_GROUPS)),
            str(rng.choice(APP_TYPES)),
            str(rng.choice(LANGUAGES)),
            fmt_count(team),
            str(rng.choice(METHODOLOGIES)),
        ]
        for col in rng.choice(10, missing_plan[i], replace=False):
            cells[col] = ""
        cells.append(f"{effort:.1f}")
        rows.append(cells)

    header = [
        "Architecture",
        "Developers Under 1yr",
        "Developers 1to3yr",
        "Developers Over 3yr",
        "Manager Experience Years",
        "Application Group",
        "Application Type",
        "Primary Programming Language",
        "Max Team Size",
        "Development Methodologies",
        "Normalized Work Effort",
    ]
    write_rows(OUT / "isbsg_synthetic_sample.csv", header, rows)


def knn_rmse_probe(rows):
    """Rough 80/20 KNN check on the Desharnais stand-in (k=5, 10 seeds)."""
    numeric = []
    target = []
    for row in rows:
        feats = [float(v) if v != "" else np.nan for v in row[1:11]]
        numeric.append(feats)
        target.append(float(row[11]))
    x = np.array(numeric)
    y = np.array(target)
    col_mean = np.nanmean(x, axis=0)
    x = np.where(np.isnan(x), col_mean, x)
    x = (x - x.mean(axis=0)) / x.std(axis=0)

    rmses = []
    for seed in range(1, 11):
        rng = np.random.default_rng(seed)
        idx = rng.permutation(len(y))
        cut = int(0.8 * len(y))
        tr, te = idx[:cut], idx[cut:]
        preds = []
        for i in te:
            d = np.sqrt(((x[tr] - x[i]) ** 2).sum(axis=1))
            nearest = np.argsort(d, kind="stable")[:5]
            preds.append(y[tr][nearest].mean())
        rmses.append(np.sqrt(((np.array(preds) - y[te]) ** 2).mean()))
    print(f"desharnais KNN(5) probe: mean RMSE over 10 seeds = {np.mean(rmses):.1f}")


def main():
    OUT.mkdir(exist_ok=True)
    rng = np.random.default_rng(20240612)
    desharnais_rows = gen_desharnais(rng)
    gen_cocomo(rng)
    gen_isbsg_sample(rng)
    knn_rmse_probe(desharnais_rows)


if __name__ == "__main__":
    main()
