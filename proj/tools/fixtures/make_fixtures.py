#!/usr/bin/env python3
"""Regenerate the benchmark fixtures under data/.

Maintainer tool, not part of the build. Requires numpy, scipy and wntr
(which bundles the EPANET engine and the example networks).

    python3 tools/fixtures/make_fixtures.py --out data

Outputs
  networks/<name>.inp          network description
  networks/<name>_bounds.csv   per-link flow interval, link_id,q_min,q_max
  networks/fixtures.csv        name,inp,bounds,gap
  sobol/joe_kuo_d1024.txt      Sobol direction numbers (Joe & Kuo 2008 table)

The three_node bounds come from inverting the pump derivative at the
reported pump constant; every other bounds file is the envelope of
week-long extended-period simulations at three demand multipliers.
Those envelopes are placeholder data, not values taken from any
publication.
"""

import argparse
import math
import os
import shutil

import numpy as np
import scipy
from scipy.optimize import brentq

GPM_PER_CFS = 448.831

# Three-Node network parameters.
PUMP_SHUTOFF = 393.7008
PUMP_COEFF = 3.746e-6
PUMP_EXP = 2.59
PIPE_R = 2.346e-6
PUMP_CONSTANT = 0.5023

FIXTURES = [
    # name, interval-method optimality gap
    ("three_node", 1e-2),
    ("eight_node", 1e-2),
    ("anytown", 1e-5),
    ("net2", 1e-5),
    ("net3", 2e-3),
    ("obcl", 8e-2),
]


def dw_resistance_per_foot_gpm(diameter_in, roughness_mft):
    """Darcy-Weisbach resistance per foot of pipe, head in ft, flow in GPM,
    fully rough friction factor."""
    d = diameter_in / 12.0
    e = roughness_mft / 1000.0
    f = 0.25 / math.log10(e / (3.7 * d)) ** 2
    area = math.pi * d * d / 4.0
    r_cfs = f / (2.0 * 32.2 * d * area * area)
    return r_cfs / GPM_PER_CFS ** 2


def write_three_node(path):
    diameter, roughness = 12.0, 0.5
    length = PIPE_R / dw_resistance_per_foot_gpm(diameter, roughness)
    q1, q2 = 500.0, 1000.0
    h1 = PUMP_SHUTOFF - PUMP_COEFF * q1 ** PUMP_EXP
    h2 = PUMP_SHUTOFF - PUMP_COEFF * q2 ** PUMP_EXP
    text = f"""[TITLE]
Three-Node network: reservoir, pump, junction, pipe, tank

[JUNCTIONS]
;ID  Elev  Demand
 2    0     100

[RESERVOIRS]
;ID  Head
 1    0

[TANKS]
;ID  Elev  InitLevel  MinLevel  MaxLevel  Diameter  MinVol
 3    50    10         0         50        50        0

[PIPES]
;ID  Node1  Node2  Length  Diameter  Roughness  MinorLoss  Status
 23   2      3      {length!r}  {diameter}  {roughness}  0  Open

[PUMPS]
;ID  Node1  Node2  Parameters
 12   1      2      HEAD 1

[CURVES]
;ID  Flow  Head
 1    0     {PUMP_SHUTOFF!r}
 1    {q1}  {h1!r}
 1    {q2}  {h2!r}

[OPTIONS]
 Units     GPM
 Headloss  D-W

[COORDINATES]
 1  0    0
 2  100  0
 3  200  0

[END]
"""
    with open(path, "w", newline="\n") as fh:
        fh.write(text)


def three_node_qmax():
    return brentq(lambda q: PUMP_EXP * PUMP_COEFF * q ** (PUMP_EXP - 1) - PUMP_CONSTANT,
                  1.0, 1e5, xtol=1e-14, rtol=1e-15)


def write_obcl(path, seed=20200917):
    """Synthetic 262-junction looped network fed by one pumped reservoir."""
    rng = np.random.default_rng(seed)
    rows, cols = 17, 16
    cells = [(r, c) for r in range(rows) for c in range(cols)][:262]
    index = {cell: i for i, cell in enumerate(cells)}
    ids = [f"J{i + 1}" for i in range(len(cells))]

    # BFS spanning tree from the corner, then extra grid edges as loops.
    adj = {cell: [] for cell in cells}
    for (r, c) in cells:
        for dr, dc in ((0, 1), (1, 0)):
            nb = (r + dr, c + dc)
            if nb in index:
                adj[(r, c)].append(nb)
                adj[nb].append((r, c))
    parent = {cells[0]: None}
    order = [cells[0]]
    for cell in order:
        for nb in adj[cell]:
            if nb not in parent:
                parent[nb] = cell
                order.append(nb)
    tree = {(parent[c], c) for c in order[1:]}
    candidates = sorted({tuple(sorted((a, b))) for a in cells for b in adj[a]} -
                        {tuple(sorted(e)) for e in tree})
    extra = [candidates[i] for i in rng.choice(len(candidates), 27, replace=False)]

    demand = rng.uniform(5.0, 35.0, len(cells))
    elev = rng.uniform(0.0, 30.0, len(cells))
    downstream = {c: demand[index[c]] for c in cells}
    for c in reversed(order[1:]):
        downstream[parent[c]] += downstream[c]
    sizes = [6, 8, 10, 12, 16, 20, 24]

    def pick_diameter(flow):
        for d in sizes:
            if flow / (2.448 * d * d) <= 2.5:  # velocity in ft/s for GPM, inches
                return d
        return sizes[-1]

    lines = ["[TITLE]", "Synthetic OBCL-sized looped network (generated)", "",
             "[JUNCTIONS]", ";ID  Elev  Demand  Pattern"]
    for i, cell in enumerate(cells):
        lines.append(f" {ids[i]}  {elev[i]:.2f}  {demand[i]:.2f}  1")
    lines += ["", "[RESERVOIRS]", ";ID  Head", " R1  40", "",
              "[PIPES]", ";ID  Node1  Node2  Length  Diameter  Roughness  MinorLoss  Status"]
    k = 0
    for (a, b) in sorted(tree, key=lambda e: index[e[1]]):
        k += 1
        lines.append(f" P{k}  {ids[index[a]]}  {ids[index[b]]}  {rng.uniform(300, 1500):.1f}"
                     f"  {pick_diameter(downstream[b])}  {rng.choice([100, 110, 120, 130])}  0  Open")
    for (a, b) in extra:
        k += 1
        lines.append(f" P{k}  {ids[index[a]]}  {ids[index[b]]}  {rng.uniform(300, 1500):.1f}"
                     f"  8  {rng.choice([100, 110, 120, 130])}  0  Open")
    assert k == 288
    total = float(demand.sum())
    lines += ["", "[PUMPS]", ";ID  Node1  Node2  Parameters", f" M1  R1  {ids[0]}  HEAD C1", "",
              "[CURVES]", ";ID  Flow  Head", f" C1  {round(total * 1.1, 1)}  140", "",
              "[PATTERNS]",
              " 1  0.6 0.5 0.5 0.5 0.6 0.8 1.1 1.4 1.3 1.2 1.1 1.0",
              " 1  1.0 1.0 1.0 1.1 1.2 1.4 1.5 1.3 1.1 0.9 0.8 0.7", "",
              "[OPTIONS]", " Units  GPM", " Headloss  H-W", "",
              "[TIMES]", " Duration  168:00", " Hydraulic Timestep  1:00", "",
              "[COORDINATES]", " R1  -100  -100"]
    for i, (r, c) in enumerate(cells):
        lines.append(f" {ids[i]}  {c * 100}  {r * 100}")
    lines += ["", "[END]", ""]
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines))


def simulated_bounds(inp, out_csv, multipliers=(0.8, 1.0, 1.2)):
    import wntr
    from wntr.epanet.util import FlowUnits, HydParam, from_si

    lo, hi, pump_pos = None, None, None
    names = None
    pumps = None
    for mult in multipliers:
        wn = wntr.network.WaterNetworkModel(inp)
        wn.options.time.duration = 168 * 3600
        wn.options.hydraulic.demand_multiplier = mult
        units = FlowUnits[wn.options.hydraulic.inpfile_units.upper()]
        res = wntr.sim.EpanetSimulator(wn).run_sim(file_prefix=os.path.join(os.path.dirname(out_csv), "_tmp"))
        flow = res.link["flowrate"]
        names = list(flow.columns)
        pumps = set(wn.pump_name_list)
        q = from_si(units, flow.values, HydParam.Flow)
        qmin, qmax = q.min(axis=0), q.max(axis=0)
        qpos = np.where(q > 1e-6, q, np.inf).min(axis=0)
        lo = qmin if lo is None else np.minimum(lo, qmin)
        hi = qmax if hi is None else np.maximum(hi, qmax)
        pump_pos = qpos if pump_pos is None else np.minimum(pump_pos, qpos)
    for f in os.listdir(os.path.dirname(out_csv)):
        if f.startswith("_tmp"):
            os.remove(os.path.join(os.path.dirname(out_csv), f))
    with open(out_csv, "w", newline="\n") as fh:
        fh.write("link_id,q_min,q_max\n")
        for j, name in enumerate(names):
            a, b = float(lo[j]), float(hi[j])
            if name in pumps:
                a = float(pump_pos[j]) if math.isfinite(pump_pos[j]) else 1.0
                b = max(a, b)
            fh.write(f"{name},{a:.6g},{b:.6g}\n")


def size_candidate_pipes(src, dst, placeholder=0.0001, diameter=12):
    """Copy an INP file, giving placeholder-diameter pipes a real diameter.

    Anytown is a design benchmark: its six candidate pipes ship with a
    0.0001 in diameter. A demand-driven simulation still forces junction
    demand through them, which yields meaningless flows and resistances
    near 1e20, so they are sized to 12 in.
    """
    out, section = [], None
    with open(src) as fh:
        for line in fh:
            stripped = line.strip()
            if stripped.startswith("["):
                section = stripped.upper()
            elif section == "[PIPES]" and stripped and not stripped.startswith(";"):
                cols = line.split("\t")
                fields = [c.strip() for c in cols]
                if len(fields) > 4 and fields[4] and float(fields[4]) == placeholder:
                    width = len(cols[4])
                    cols[4] = f"{diameter:<{width}}"
                    line = "\t".join(cols)
            out.append(line)
    with open(dst, "w", newline="\n") as fh:
        fh.writelines(out)


def write_sobol_table(path, dims=1024):
    npz = np.load(os.path.join(os.path.dirname(scipy.__file__), "stats", "_sobol_direction_numbers.npz"))
    poly, vinit = npz["poly"], npz["vinit"]
    with open(path, "w", newline="\n") as fh:
        fh.write("d s a m_i\n")
        for d in range(1, dims):
            p = int(poly[d])
            s = p.bit_length() - 1
            a = (p >> 1) & ((1 << (s - 1)) - 1)
            m = " ".join(str(int(v)) for v in vinit[d, :s])
            fh.write(f"{d + 1} {s} {a} {m} \n")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--out", default="data")
    ap.add_argument("--wntr-root", default=None, help="directory containing the wntr package")
    args = ap.parse_args()

    import wntr
    root = args.wntr_root or os.path.dirname(wntr.__file__)
    nets = os.path.join(args.out, "networks")
    os.makedirs(nets, exist_ok=True)
    os.makedirs(os.path.join(args.out, "sobol"), exist_ok=True)

    write_three_node(os.path.join(nets, "three_node.inp"))
    qmax = three_node_qmax()
    with open(os.path.join(nets, "three_node_bounds.csv"), "w", newline="\n") as fh:
        fh.write("link_id,q_min,q_max\n")
        fh.write(f"23,0,{qmax!r}\n")
        fh.write(f"12,1,{qmax!r}\n")

    shutil.copy(os.path.join(root, "library", "networks", "Net1.inp"), os.path.join(nets, "eight_node.inp"))
    shutil.copy(os.path.join(root, "library", "networks", "Net2.inp"), os.path.join(nets, "net2.inp"))
    shutil.copy(os.path.join(root, "library", "networks", "Net3.inp"), os.path.join(nets, "net3.inp"))
    anytown = os.path.join(root, "tests", "networks_for_testing", "Anytown.inp")
    size_candidate_pipes(anytown, os.path.join(nets, "anytown.inp"))
    write_obcl(os.path.join(nets, "obcl.inp"))

    for name, _ in FIXTURES[1:]:
        simulated_bounds(os.path.join(nets, f"{name}.inp"), os.path.join(nets, f"{name}_bounds.csv"))

    with open(os.path.join(nets, "fixtures.csv"), "w", newline="\n") as fh:
        fh.write("name,inp,bounds,gap\n")
        for name, gap in FIXTURES:
            fh.write(f"{name},{name}.inp,{name}_bounds.csv,{gap:g}\n")

    write_sobol_table(os.path.join(args.out, "sobol", "joe_kuo_d1024.txt"))
    print(f"three_node pump q_max = {qmax!r}")


if __name__ == "__main__":
    main()
