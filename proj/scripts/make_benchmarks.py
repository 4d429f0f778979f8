#!/usr/bin/env python3
"""Deterministic generator for the bundled regression circuits.

s27 is the classic ISCAS-89 circuit and is checked in verbatim.  The
remaining s-named circuits bundled under benchmarks/ are synthetic
sequential netlists produced by this script: they follow the bench
format and the naming scheme of the like-named ISCAS-89 circuits and are
sized to comparable element counts, but they are not the original
netlists (which are not redistributed here).  Regenerate with:

    python3 scripts/make_benchmarks.py benchmarks/
"""

import random
import sys
from pathlib import Path

# name -> (primary inputs, primary outputs, flip-flops, gates, seed)
PROFILES = {
    "s208": (10, 1, 8, 96, 208),
    "s298": (3, 6, 14, 119, 298),
    "s344": (9, 11, 15, 160, 344),
    "s349": (9, 11, 15, 161, 349),
    "s382": (3, 6, 21, 158, 382),
    "s386": (7, 7, 6, 159, 386),
    "s400": (3, 6, 21, 162, 400),
    "s420": (18, 1, 16, 196, 420),
    "s444": (3, 6, 21, 181, 444),
    "s510": (19, 7, 6, 211, 510),
    "s526": (3, 6, 21, 193, 526),
}

MAIN_KINDS = ["NAND", "NOR", "AND", "OR", "NAND", "NOR", "AND", "OR",
              "NOT", "NOT", "BUFF", "XOR", "XNOR"]
CONE_KINDS = ["NAND", "NOR", "AND", "OR"]


def generate(name, n_pi, n_po, n_ff, n_gates, seed):
    r = random.Random(seed)
    counter = 0

    def new_net():
        nonlocal counter
        net = f"G{counter}"
        counter += 1
        return net

    inputs = [new_net() for _ in range(n_pi)]
    ff_out = [new_net() for _ in range(n_ff)]

    gates = []            # (out, kind, [ins])
    avail = list(inputs)  # general-purpose nets
    nonff = list(inputs)  # nets that are not FF outputs (cone-safe)

    # reserve gates for dedicated single-consumer cones in front of some FFs
    cone_plan = {}
    reserved = 0
    for i in range(n_ff):
        if r.random() < 0.45 and reserved + 3 < n_gates:
            k = r.choice([1, 1, 2, 3])
            cone_plan[i] = k
            reserved += k

    def pick_input(pool):
        # bias toward recent nets so the circuit gains depth
        if len(pool) > 12 and r.random() < 0.6:
            return pool[r.randrange(max(0, len(pool) - 30), len(pool))]
        return r.choice(pool)

    n_main = n_gates - reserved
    for _ in range(n_main):
        kind = r.choice(MAIN_KINDS)
        if kind in ("NOT", "BUFF"):
            fanin = 1
        else:
            fanin = r.choice([2, 2, 2, 2, 3, 3, 4])
        ins = []
        for _ in range(fanin):
            if ff_out and r.random() < 0.25:
                ins.append(r.choice(ff_out))
            else:
                ins.append(pick_input(avail))
        out = new_net()
        gates.append((out, kind, ins))
        avail.append(out)
        nonff.append(out)

    # flip-flop D assignments
    ff_d = {}
    for i in range(n_ff):
        if i in cone_plan:
            # chain of fresh fan-out-one gates reading only non-FF nets
            prev = None
            for _ in range(cone_plan[i]):
                kind = r.choice(CONE_KINDS)
                ins = [prev] if prev else [pick_input(nonff)]
                ins.append(pick_input(nonff))
                out = new_net()
                gates.append((out, kind, ins))
                prev = out
            ff_d[i] = prev
        else:
            p = r.random()
            if p < 0.70:
                ff_d[i] = r.choice([g[0] for g in gates[:n_main]] or inputs)
            elif p < 0.85:
                ff_d[i] = r.choice(inputs)
            else:
                ff_d[i] = r.choice(ff_out)

    main_outs = [g[0] for g in gates[:n_main]]
    pool = main_outs if len(main_outs) >= n_po else main_outs + inputs
    outputs = r.sample(pool, n_po)

    lines = [f"# {name}"]
    lines += [f"INPUT({x})" for x in inputs]
    lines.append("")
    lines += [f"OUTPUT({x})" for x in outputs]
    lines.append("")
    lines += [f"{ff_out[i]} = DFF({ff_d[i]})" for i in range(n_ff)]
    lines.append("")
    lines += [f"{out} = {kind}({', '.join(ins)})" for out, kind, ins in gates]
    lines.append("")
    return "\n".join(lines)


def main():
    out_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("benchmarks")
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, (pi, po, ff, gates, seed) in sorted(PROFILES.items()):
        text = generate(name, pi, po, ff, gates, seed)
        (out_dir / f"{name}.bench").write_text(text)
        print(f"wrote {name}.bench: pi={pi} po={po} ff={ff} gates={gates}")


if __name__ == "__main__":
    main()
