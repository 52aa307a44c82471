#!/usr/bin/env python3
# Copyright 2026 The qembed Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Generates the synthetic feature CSVs under tests/data.

Rows are drawn from a small latent model (size, polarity, aromaticity,
flexibility) pushed through descriptor-shaped transforms, so columns have
the count/ratio/heavy-tail texture of real descriptor tables. Actives and
inactives differ by a shift in the latent means. These files stand in for
real extracted features; they are not molecules.
"""

import argparse
import pathlib

import numpy as np

NAMES = [
    "Num_C", "Num_N", "Num_O", "Num_P", "Num_S", "Num_F", "Num_Cl", "Num_Br", "Num_I",
    "Single_Bonds", "Double_Bonds", "NumStereoE", "Num_Aromatic_Atoms",
    "Aromatic_Proportion", "NumRotatableBonds", "Total_NH_OH", "Total_N_O",
    "NumHydrogenAcceptors", "NumHydrogenDonors", "NumofHeteroatoms", "MolLogP", "MolWt",
    "FpDensityMorgan1", "FpDensityMorgan2", "FpDensityMorgan3", "MaxAbsPartialCharge",
    "MinAbsPartialCharge", "NumValenceElectrons", "BertzCT", "BalabanJ", "Chi0", "Chi1",
    "Chi2n", "Chi3n", "HallKierAlpha", "Ipc", "Kappa1", "Kappa2", "Kappa3",
]

ACTIVE_SHIFT = np.array([0.6, -0.7, 0.5, -0.4])


def descriptors(rng, latent):
    size, polar, arom, flex = latent
    n_c = max(3, rng.poisson(np.exp(2.6 + 0.25 * size)))
    n_n = rng.poisson(np.exp(0.5 + 0.4 * polar))
    n_o = rng.poisson(np.exp(0.7 + 0.35 * polar))
    n_p = rng.binomial(1, 0.03)
    n_s = rng.poisson(0.3)
    n_f = rng.poisson(0.4 * np.exp(-0.3 * polar))
    n_cl = rng.poisson(0.3)
    n_br = rng.binomial(1, 0.05)
    n_i = rng.binomial(1, 0.01)
    heavy = n_c + n_n + n_o + n_p + n_s + n_f + n_cl + n_br + n_i
    hetero = heavy - n_c
    arom_frac = float(np.clip(0.35 + 0.15 * arom + rng.normal(0, 0.05), 0.0, 0.9))
    n_arom = int(round(arom_frac * heavy))
    double = rng.poisson(1.0 + 0.5 * max(polar, 0.0))
    single = max(heavy - 1 - double, 0) + rng.poisson(2)
    stereo = rng.binomial(2, 0.1)
    rot = rng.poisson(np.exp(1.3 + 0.4 * flex + 0.1 * size))
    nh_oh = rng.poisson(np.exp(0.2 + 0.45 * polar))
    n_o_total = n_n + n_o
    acceptors = max(0, n_o_total - rng.binomial(max(n_o_total, 0), 0.2))
    donors = min(nh_oh, rng.poisson(1.0 + 0.4 * max(polar, 0.0)))
    logp = 0.45 * n_c - 0.7 * n_o_total + 0.3 * n_arom / 6 + rng.normal(0, 0.6)
    molwt = 12.011 * n_c + 14.007 * n_n + 15.999 * n_o + 30.974 * n_p + 32.06 * n_s \
        + 18.998 * n_f + 35.45 * n_cl + 79.904 * n_br + 126.9 * n_i + 1.008 * (2 * n_c + 2)
    morgan1 = float(np.clip(1.1 + 0.1 * polar + rng.normal(0, 0.08), 0.5, 2.0))
    morgan2 = morgan1 + 0.55 + rng.normal(0, 0.06)
    morgan3 = morgan2 + 0.45 + rng.normal(0, 0.05)
    max_q = float(np.clip(0.3 + 0.05 * polar + rng.normal(0, 0.05), 0.05, 0.7))
    min_q = float(np.clip(0.25 + 0.04 * polar + rng.normal(0, 0.04), 0.01, max_q))
    valence = 4 * n_c + 5 * n_n + 6 * n_o + 7 * (n_f + n_cl + n_br + n_i) + 2 * n_c + 2
    bertz = np.exp(5.5 + 0.35 * size + 0.2 * arom + rng.normal(0, 0.15))
    balaban = float(np.clip(1.8 - 0.1 * flex + rng.normal(0, 0.15), 0.5, 3.5))
    chi0 = 0.72 * heavy + rng.normal(0, 0.4)
    chi1 = 0.48 * heavy + rng.normal(0, 0.3)
    chi2n = 0.30 * heavy + rng.normal(0, 0.3)
    chi3n = 0.18 * heavy + rng.normal(0, 0.25)
    hka = -0.13 * n_arom - 0.05 * hetero + rng.normal(0, 0.2)
    ipc = np.exp(0.22 * heavy + rng.normal(0, 0.8))
    kappa1 = 0.9 * heavy + rng.normal(0, 0.8)
    kappa2 = 0.4 * heavy + 0.3 * rot + rng.normal(0, 0.5)
    kappa3 = 0.2 * heavy + 0.25 * rot + rng.normal(0, 0.4)
    return [
        n_c, n_n, n_o, n_p, n_s, n_f, n_cl, n_br, n_i, single, double, stereo, n_arom,
        n_arom / heavy, rot, nh_oh, n_o_total, acceptors, donors, hetero, logp, molwt,
        morgan1, morgan2, morgan3, max_q, min_q, valence, bertz, balaban, chi0, chi1, chi2n,
        chi3n, hka, ipc, kappa1, kappa2, kappa3,
    ]


def fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(round(float(v), 6))


def write(path, rows, with_target, comment):
    with open(path, "w", encoding="utf-8") as f:
        f.write(f"# {comment}\n")
        head = ["id", "label"] + (["target"] if with_target else []) + NAMES
        f.write(",".join(head) + "\n")
        for r in rows:
            cells = [r["id"], str(r["label"])] + ([r["target"]] if with_target else [])
            cells += [fmt(v) for v in r["x"]]
            f.write(",".join(cells) + "\n")


def draw(rng, n_act, n_inact, prefix, target):
    rows = []
    labels = [1] * n_act + [0] * n_inact
    order = rng.permutation(len(labels))
    for k, i in enumerate(order):
        y = labels[i]
        latent = rng.normal(0.0, 1.0, 4) + (ACTIVE_SHIFT if y == 1 else 0.0)
        rows.append({"id": f"{prefix}{k:04d}", "label": y, "target": target,
                     "x": descriptors(rng, latent)})
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(pathlib.Path(__file__).resolve().parents[1] / "tests" / "data"))
    args = ap.parse_args()
    out = pathlib.Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    rng = np.random.default_rng(20260418)
    write(out / "covid19_fixture.csv", draw(rng, 34, 89, "cv", ""), False,
          "synthetic stand-in for the 123-compound COVID-19 set (34 activators, 89 inhibitors)")

    rows = draw(rng, 60, 400, "gb", "GBA_SYNTH") + draw(rng, 20, 130, "es", "ESR1_SYNTH")
    write(out / "litpcba_fixture.csv", rows, True,
          "synthetic two-target screening set (GBA_SYNTH 60/400, ESR1_SYNTH 20/130)")

    write(out / "tiny.csv", draw(rng, 1, 2, "t", ""), False, "three-row smoke file")


if __name__ == "__main__":
    main()
